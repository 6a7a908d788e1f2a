//! Discrete extremal sets extracted from the lattice, used as interpolation
//! nodes.
//!
//! Both extractions work on the Chebyshev-Vandermonde matrix of the lattice
//! with columns scaled to unit Euclidean norm:
//!
//! * Approximate Fekete Points: Householder QR with column pivoting of the
//!   transpose; the `N` pivot columns are the selected lattice nodes. This is
//!   the support that a pivoted least-squares solve `V \ v` would pick for any
//!   nonzero right-hand side, without the right-hand side.
//! * Discrete Leja Points: Gaussian elimination with row pivoting; the first
//!   `N` rows of the permutation. With the graded basis order every prefix of
//!   length `dim P_r` is unisolvent for degree `r`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graded::{dim_p3, Basis, GradedIndexer};
use crate::grid::ControlGrid;
use crate::hyperinterp::{basis_rows, check_cube, CoeffSet};
use crate::lattice::{Lattice, Point3, Variant};
use crate::linalg::{lu_row_pivot, matmul_rm, qr_column_pivot, Matrix, SquareLu};

/// `V[p][q] = phi_q(node_p)` for the non-normalised graded Chebyshev basis.
#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeMatrix {
    pub n: usize,
    pub matrix: Matrix,
}

impl VandermondeMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols
    }

    fn scale_columns(&mut self) {
        self.matrix
            .data
            .par_chunks_mut(self.matrix.rows)
            .for_each(|col| {
                let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
                if norm > 0.0 {
                    col.iter_mut().for_each(|v| *v /= norm);
                }
            });
    }
}

pub fn vandermonde(lattice: &Lattice, n: usize) -> Result<VandermondeMatrix> {
    if lattice.n != n {
        return Err(Error::DegreeMismatch {
            expected: lattice.n,
            got: n,
        });
    }
    Ok(vandermonde_at(&lattice.nodes, n))
}

/// Chebyshev-Vandermonde matrix of degree `n` at arbitrary points.
pub fn vandermonde_at(points: &[Point3], n: usize) -> VandermondeMatrix {
    let rows = points.len();
    let w = n + 1;
    // tables[d][m * rows + p] = T_m(points[p][d])
    let tables: Vec<Vec<f64>> = (0..3)
        .map(|d| {
            let mut t = vec![0.0; w * rows];
            for (p, x) in points.iter().enumerate() {
                let mut prev = 1.0;
                let mut cur = x[d];
                t[p] = 1.0;
                if w > 1 {
                    t[rows + p] = cur;
                }
                for m in 2..w {
                    let next = 2.0 * x[d] * cur - prev;
                    t[m * rows + p] = next;
                    (prev, cur) = (cur, next);
                }
            }
            t
        })
        .collect();
    let indexer = GradedIndexer::new(n);
    let mut matrix = Matrix::zeros(rows, indexer.size());
    let triples = indexer.triples();
    matrix
        .data
        .par_chunks_mut(rows.max(1))
        .zip(triples.par_iter())
        .for_each(|(col, &[i, j, k])| {
            let (ti, tj, tk) = (
                &tables[0][i * rows..(i + 1) * rows],
                &tables[1][j * rows..(j + 1) * rows],
                &tables[2][k * rows..(k + 1) * rows],
            );
            for p in 0..rows {
                col[p] = ti[p] * tj[p] * tk[p];
            }
        });
    VandermondeMatrix { n, matrix }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremalKind {
    /// Approximate Fekete Points.
    Afp,
    /// Discrete Leja Points.
    Dlp,
}

impl ExtremalKind {
    pub fn name(self) -> &'static str {
        match self {
            ExtremalKind::Afp => "afp",
            ExtremalKind::Dlp => "dlp",
        }
    }
}

impl fmt::Display for ExtremalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExtremalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "afp" | "fekete" => Ok(ExtremalKind::Afp),
            "dlp" | "leja" => Ok(ExtremalKind::Dlp),
            _ => Err(Error::Unknown {
                what: "extraction method",
                name: s.to_string(),
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalSet {
    pub kind: ExtremalKind,
    pub n: usize,
    /// Positions in the lattice, in selection order.
    pub indices: Vec<usize>,
    pub points: Vec<Point3>,
}

impl ExtremalSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The leading `dim P_r` Leja points, which interpolate at degree `r`.
    pub fn truncate(&self, r: usize) -> Result<ExtremalSet> {
        if self.kind != ExtremalKind::Dlp {
            return Err(Error::Unknown {
                what: "nested truncation for",
                name: self.kind.to_string(),
            });
        }
        if r > self.n {
            return Err(Error::DegreeMismatch {
                expected: self.n,
                got: r,
            });
        }
        let keep = dim_p3(r);
        Ok(ExtremalSet {
            kind: self.kind,
            n: r,
            indices: self.indices[..keep].to_vec(),
            points: self.points[..keep].to_vec(),
        })
    }

    /// Square Chebyshev-Vandermonde matrix at the selected points.
    pub fn square_vandermonde(&self) -> Matrix {
        vandermonde_at(&self.points, self.n).matrix
    }

    pub fn system(&self) -> Result<InterpolationSystem> {
        InterpolationSystem::new(self)
    }
}

fn build_set(kind: ExtremalKind, n: usize, lattice: &Lattice, indices: Vec<usize>) -> ExtremalSet {
    let points = indices.iter().map(|&i| lattice.nodes[i]).collect();
    ExtremalSet {
        kind,
        n,
        indices,
        points,
    }
}

fn check_shape(v: &VandermondeMatrix, lattice: &Lattice) -> Result<()> {
    if v.n != lattice.n {
        return Err(Error::DegreeMismatch {
            expected: lattice.n,
            got: v.n,
        });
    }
    if v.rows() != lattice.node_count() {
        return Err(Error::Shape {
            what: "Vandermonde rows",
            expected: lattice.node_count(),
            got: v.rows(),
        });
    }
    Ok(())
}

/// Approximate Fekete Points by pivoted QR of the transposed matrix.
pub fn afp_extract(v: &VandermondeMatrix, lattice: &Lattice) -> Result<ExtremalSet> {
    check_shape(v, lattice)?;
    let mut scaled = v.clone();
    scaled.scale_columns();
    let mut vt = scaled.matrix.transpose();
    drop(scaled);
    let mut keys: Vec<usize> = (0..v.rows()).collect();
    qr_column_pivot(&mut vt, &mut keys)?;
    keys.truncate(v.cols());
    Ok(build_set(ExtremalKind::Afp, v.n, lattice, keys))
}

/// Discrete Leja Points by LU with row pivoting. The matrix is used as
/// workspace.
pub fn dlp_extract(mut v: VandermondeMatrix, lattice: &Lattice) -> Result<ExtremalSet> {
    check_shape(&v, lattice)?;
    v.scale_columns();
    let mut keys: Vec<usize> = (0..v.rows()).collect();
    lu_row_pivot(&mut v.matrix, &mut keys)?;
    keys.truncate(v.cols());
    Ok(build_set(ExtremalKind::Dlp, v.n, lattice, keys))
}

/// Builds the lattice and Vandermonde matrix and runs the chosen extraction.
pub fn extract(n: usize, variant: Variant, kind: ExtremalKind) -> Result<(Lattice, ExtremalSet)> {
    let lattice = Lattice::new(n, variant)?;
    let v = vandermonde(&lattice, n)?;
    let set = match kind {
        ExtremalKind::Afp => afp_extract(&v, &lattice)?,
        ExtremalKind::Dlp => dlp_extract(v, &lattice)?,
    };
    Ok((lattice, set))
}

/// Factored square interpolation problem on an extremal set.
#[derive(Debug, Clone)]
pub struct InterpolationSystem {
    n: usize,
    points: Vec<Point3>,
    lu: SquareLu,
}

impl InterpolationSystem {
    pub fn new(set: &ExtremalSet) -> Result<Self> {
        let lu = SquareLu::new(set.square_vandermonde())?;
        Ok(InterpolationSystem {
            n: set.n,
            points: set.points.clone(),
            lu,
        })
    }

    pub fn lu(&self) -> &SquareLu {
        &self.lu
    }

    /// Chebyshev-basis coefficients of the interpolant of `values`.
    pub fn solve(&self, values: &[f64]) -> Result<CoeffSet> {
        if values.len() != self.points.len() {
            return Err(Error::Shape {
                what: "nodal values",
                expected: self.points.len(),
                got: values.len(),
            });
        }
        CoeffSet::new(self.n, Basis::Chebyshev, self.lu.solve(values))
    }

    /// Grid maximum of `sum_j |l_j(x)|` over the cardinal functions.
    pub fn lebesgue_constant(&self, grid: &ControlGrid) -> Result<f64> {
        if grid.is_empty() {
            return Err(Error::Empty("control grid"));
        }
        grid.points.iter().try_for_each(|&x| check_cube(x))?;
        let size = self.points.len();
        // (V^{-1}) row-major from its column-major storage is the transpose,
        // so l(x)^T = phi(x)^T V^{-1} is a product with the transposed buffer.
        let inv = self.lu.inverse();
        let inv_rm = inv.transpose().data;
        let indexer = GradedIndexer::new(self.n);
        const BATCH: usize = 512;
        Ok(grid
            .points
            .par_chunks(BATCH)
            .map(|chunk| {
                let rows = basis_rows(&indexer, chunk, Basis::Chebyshev);
                let mut card = vec![0.0; chunk.len() * size];
                matmul_rm(chunk.len(), size, size, &rows, &inv_rm, &mut card);
                card.chunks(size)
                    .map(|l| l.iter().map(|v| v.abs()).sum::<f64>())
                    .fold(0.0f64, f64::max)
            })
            .reduce(|| 0.0, f64::max))
    }
}

/// Interpolates `f` at the points of `set`.
pub fn interpolate<F>(set: &ExtremalSet, f: F) -> Result<CoeffSet>
where
    F: Fn(Point3) -> f64,
{
    let values: Vec<f64> = set.points.iter().map(|&x| f(x)).collect();
    set.system()?.solve(&values)
}

pub fn lebesgue_constant(set: &ExtremalSet, grid: &ControlGrid) -> Result<f64> {
    set.system()?.lebesgue_constant(grid)
}

/// The default control grid for degree `n` together with the lattice nodes.
pub fn lebesgue_grid(lattice: &Lattice) -> ControlGrid {
    ControlGrid::default_for(lattice.n).with_points(&lattice.nodes)
}

/// Largest observed `|p|_grid / |p|_lattice` over `trials` random polynomials
/// with coefficients uniform in `[-1, 1]` in the orthonormal basis.
pub fn wam_constant_probe(
    n: usize,
    variant: Variant,
    grid: &ControlGrid,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::Empty("trial set"));
    }
    if grid.is_empty() {
        return Err(Error::Empty("control grid"));
    }
    let lattice = Lattice::new(n, variant)?;
    let indexer = GradedIndexer::new(n);
    let size = indexer.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // size x trials, row-major
    let coeffs: Vec<f64> = (0..size * trials)
        .map(|_| rng.gen_range(-1.0..=1.0))
        .collect();
    let sup = |points: &[Point3]| -> Vec<f64> {
        let rows = basis_rows(&indexer, points, Basis::Orthonormal);
        let mut vals = vec![0.0; points.len() * trials];
        matmul_rm(points.len(), size, trials, &rows, &coeffs, &mut vals);
        let mut best = vec![0.0f64; trials];
        for row in vals.chunks(trials) {
            for (b, v) in best.iter_mut().zip(row) {
                *b = b.max(v.abs());
            }
        }
        best
    };
    let on_grid = sup(&grid.points);
    let on_lattice = sup(&lattice.nodes);
    Ok(on_grid
        .iter()
        .zip(&on_lattice)
        .map(|(g, l)| g / l)
        .fold(0.0f64, f64::max))
}

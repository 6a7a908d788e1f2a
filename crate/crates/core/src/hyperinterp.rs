//! Hyperinterpolation on the Lissajous lattices.
//!
//! The orthonormal coefficients
//! `C_ijk = sum_s w_s f(l(theta_s)) phi_ijk(l(theta_s))`
//! are not summed node by node. Along the curve
//! `T_{ia} T_{jb} T_{kc} = (T_{alpha1} + T_{alpha2} + T_{alpha3} + T_{alpha4}) / 4`,
//! so every coefficient is a combination of four entries of a single
//! univariate discrete Chebyshev transform of the curve samples.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::cheb1d::{gamma_from_c, gauss_gamma, lobatto_coeffs, sigma, ChebSeries};
use crate::error::{Error, Result};
use crate::frequency::FrequencyTriple;
use crate::graded::{Basis, GradedIndexer};
use crate::grid::ControlGrid;
use crate::lattice::{Lattice, Point3, Variant};
use crate::linalg::matmul_rm;

/// Coefficients of a trivariate polynomial in a graded Chebyshev product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffSet {
    pub n: usize,
    pub basis: Basis,
    pub indexer: GradedIndexer,
    pub coeffs: Vec<f64>,
}

impl CoeffSet {
    pub fn new(n: usize, basis: Basis, coeffs: Vec<f64>) -> Result<Self> {
        let indexer = GradedIndexer::new(n);
        if coeffs.len() != indexer.size() {
            return Err(Error::Shape {
                what: "coefficients",
                expected: indexer.size(),
                got: coeffs.len(),
            });
        }
        Ok(CoeffSet {
            n,
            basis,
            indexer,
            coeffs,
        })
    }

    pub fn coeff(&self, ijk: [usize; 3]) -> Option<f64> {
        self.indexer.index_of(ijk).map(|q| self.coeffs[q])
    }

    pub fn eval(&self, x: Point3) -> Result<f64> {
        check_cube(x)?;
        Ok(self.indexer.eval_series(&self.coeffs, x, self.basis))
    }

    /// Evaluates at many points; points must lie in the cube.
    pub fn eval_many(&self, points: &[Point3]) -> Result<Vec<f64>> {
        points.iter().try_for_each(|&x| check_cube(x))?;
        Ok(points
            .par_iter()
            .map(|&x| self.indexer.eval_series(&self.coeffs, x, self.basis))
            .collect())
    }
}

pub fn check_cube(x: Point3) -> Result<()> {
    for v in x {
        if v.is_nan() || v.abs() > 1.0 {
            return Err(Error::Domain {
                what: "coordinate",
                value: v,
                domain: "[-1, 1]",
            });
        }
    }
    Ok(())
}

/// The four univariate degrees feeding one coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphaQuad {
    pub alpha: [u64; 4],
}

impl AlphaQuad {
    pub fn new([i, j, k]: [usize; 3], t: &FrequencyTriple) -> Self {
        let (ia, jb, kc) = (i as u64 * t.a, j as u64 * t.b, k as u64 * t.c);
        let diff = ia.abs_diff(jb);
        AlphaQuad {
            alpha: [
                ia + jb + kc,
                (ia + jb).abs_diff(kc),
                diff + kc,
                diff.abs_diff(kc),
            ],
        }
    }
}

/// Discrete orthonormal Chebyshev coefficients `gamma_m` of the samples.
pub fn curve_gamma(lattice: &Lattice, samples: &[f64]) -> Result<ChebSeries> {
    if samples.len() != lattice.node_count() {
        return Err(Error::Shape {
            what: "curve samples",
            expected: lattice.node_count(),
            got: samples.len(),
        });
    }
    match lattice.variant {
        Variant::Gauss => gauss_gamma(samples),
        Variant::Lobatto => gamma_from_c(&lobatto_coeffs(samples)?),
    }
}

/// Hyperinterpolation coefficients from samples taken at the lattice nodes.
pub fn coeffs_from_samples(lattice: &Lattice, samples: &[f64]) -> Result<CoeffSet> {
    let gamma = curve_gamma(lattice, samples)?;
    let reduced: Vec<f64> = gamma
        .values
        .iter()
        .enumerate()
        .map(|(m, g)| g / sigma(m as u64))
        .collect();
    let indexer = GradedIndexer::new(lattice.n);
    let t = lattice.triple;
    let nu = lattice.nu as u64;
    let scale = PI * PI / 4.0;
    let coeffs = indexer
        .triples()
        .par_iter()
        .map(|&ijk| {
            let quad = AlphaQuad::new(ijk, &t);
            assert!(
                quad.alpha.iter().all(|&a| a <= nu),
                "alpha above nu for {ijk:?}"
            );
            let [i, j, k] = ijk;
            let s = sigma(i as u64 * t.a) * sigma(j as u64 * t.b) * sigma(k as u64 * t.c);
            let sum: f64 = quad.alpha.iter().map(|&a| reduced[a as usize]).sum();
            scale * s * sum
        })
        .collect();
    CoeffSet::new(lattice.n, Basis::Orthonormal, coeffs)
}

pub fn hyper_coeffs<F>(f: F, n: usize, variant: Variant) -> Result<CoeffSet>
where
    F: Fn(Point3) -> f64,
{
    let lattice = Lattice::new(n, variant)?;
    coeffs_from_samples(&lattice, &lattice.sample(f)?)
}

pub fn try_hyper_coeffs<F, E>(f: F, n: usize, variant: Variant) -> Result<CoeffSet>
where
    F: FnMut(Point3) -> std::result::Result<f64, E>,
    E: fmt::Display,
{
    let lattice = Lattice::new(n, variant)?;
    coeffs_from_samples(&lattice, &lattice.try_sample(f)?)
}

pub fn hyper_eval(coeffs: &CoeffSet, x: Point3) -> Result<f64> {
    coeffs.eval(x)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub l2_rel: f64,
    pub linf_rel: f64,
    /// `false` when the reference vanished on the grid and the figures are
    /// absolute errors.
    pub relative: bool,
}

/// Relative discrete 2-norm and max-norm errors of `approx` against `exact`.
pub fn compare_on_grid(exact: &[f64], approx: &[f64]) -> ErrorReport {
    let (mut d2, mut f2, mut dinf, mut finf) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for (e, a) in exact.iter().zip(approx) {
        let d = (e - a).abs();
        d2 += d * d;
        f2 += e * e;
        dinf = dinf.max(d);
        finf = finf.max(e.abs());
    }
    if f2 == 0.0 {
        ErrorReport {
            l2_rel: d2.sqrt(),
            linf_rel: dinf,
            relative: false,
        }
    } else {
        ErrorReport {
            l2_rel: (d2 / f2).sqrt(),
            linf_rel: dinf / finf,
            relative: true,
        }
    }
}

pub fn error_report<F>(f: F, n: usize, variant: Variant, grid: &ControlGrid) -> Result<ErrorReport>
where
    F: Fn(Point3) -> f64 + Sync,
{
    if grid.is_empty() {
        return Err(Error::Empty("control grid"));
    }
    let coeffs = hyper_coeffs(&f, n, variant)?;
    let approx = coeffs.eval_many(&grid.points)?;
    let exact: Vec<f64> = grid.points.par_iter().map(|&x| f(x)).collect();
    Ok(compare_on_grid(&exact, &approx))
}

/// Orthonormal basis at every point, as a row-major `points x size` buffer.
pub(crate) fn basis_rows(indexer: &GradedIndexer, points: &[Point3], basis: Basis) -> Vec<f64> {
    let size = indexer.size();
    let mut out = vec![0.0; points.len() * size];
    out.par_chunks_mut(size.max(1))
        .zip(points.par_iter())
        .for_each(|(row, &x)| indexer.eval_basis(x, basis, row));
    out
}

/// Grid maximum of the hyperinterpolation Lebesgue function
/// `x -> sum_s w_s |K_n(x, l(theta_s))|`; a lower bound on the operator norm.
pub fn operator_norm(n: usize, variant: Variant, grid: &ControlGrid) -> Result<f64> {
    if grid.is_empty() {
        return Err(Error::Empty("control grid"));
    }
    grid.points.iter().try_for_each(|&x| check_cube(x))?;
    let lattice = Lattice::new(n, variant)?;
    let indexer = GradedIndexer::new(n);
    let size = indexer.size();
    let nodes = lattice.node_count();
    // size x nodes, row-major
    let node_rows = basis_rows(&indexer, &lattice.nodes, Basis::Orthonormal);
    let mut node_t = vec![0.0; size * nodes];
    for s in 0..nodes {
        for q in 0..size {
            node_t[q * nodes + s] = node_rows[s * size + q];
        }
    }
    const BATCH: usize = 256;
    let best = grid
        .points
        .par_chunks(BATCH)
        .map(|chunk| {
            let rows = basis_rows(&indexer, chunk, Basis::Orthonormal);
            let mut kernel = vec![0.0; chunk.len() * nodes];
            matmul_rm(chunk.len(), size, nodes, &rows, &node_t, &mut kernel);
            kernel
                .chunks(nodes)
                .map(|k| {
                    k.iter()
                        .zip(&lattice.weights)
                        .map(|(kv, w)| w * kv.abs())
                        .sum::<f64>()
                })
                .fold(0.0f64, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(best)
}

/// The test functions used in the numerical experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    /// `exp(-c |x|^2)`.
    Gaussian {
        c: f64,
    },
    /// `|x|^beta`.
    Power {
        beta: f64,
    },
    /// `|x|^(2k)`, a polynomial of degree `2k`.
    RadialPower {
        k: u32,
    },
    Constant,
}

impl TestFunction {
    /// Builds a test function from its name (`f1`, `f2`, `pow`, `const`).
    pub fn from_name(name: &str, param: f64) -> Result<Self> {
        let positive = |name: &'static str| {
            if param > 0.0 && param.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter {
                    name,
                    value: param,
                    reason: "must be positive",
                })
            }
        };
        match name {
            "f1" | "gaussian" => positive("c").map(|_| TestFunction::Gaussian { c: param }),
            "f2" | "power" => positive("beta").map(|_| TestFunction::Power { beta: param }),
            "pow" | "radial_power" => {
                positive("k")?;
                if param.fract() != 0.0 {
                    return Err(Error::InvalidParameter {
                        name: "k",
                        value: param,
                        reason: "must be an integer",
                    });
                }
                Ok(TestFunction::RadialPower { k: param as u32 })
            }
            "const" | "constant" => Ok(TestFunction::Constant),
            _ => Err(Error::Unknown {
                what: "test function",
                name: name.to_string(),
            }),
        }
    }

    pub fn eval(&self, x: Point3) -> f64 {
        let r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        match *self {
            TestFunction::Gaussian { c } => (-c * r2).exp(),
            TestFunction::Power { beta } => r2.powf(beta / 2.0),
            TestFunction::RadialPower { k } => r2.powi(k as i32),
            TestFunction::Constant => 1.0,
        }
    }
}

impl FromStr for TestFunction {
    type Err = Error;

    /// Parses `name` or `name:param`, e.g. `f1:5`.
    fn from_str(s: &str) -> Result<Self> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (
                n,
                p.parse::<f64>().map_err(|_| Error::Unknown {
                    what: "test function parameter",
                    name: p.to_string(),
                })?,
            ),
            None => (s, 1.0),
        };
        TestFunction::from_name(name, param)
    }
}

//! Dense factorizations used for extremal-set extraction and interpolation.
//!
//! Matrices are stored column-major. Pivot choices break near-ties (within
//! [`TIE_TOLERANCE`] relative) in favour of the smaller caller-supplied key,
//! so results do not depend on rounding noise in the last bits.

use crate::error::{Error, Result};

pub const TIE_TOLERANCE: f64 = 1e-14;

const BLOCK: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    /// Column-major entries.
    pub data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[c * self.rows + r]
    }

    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[c * self.rows + r] = v;
    }

    pub fn column(&self, c: usize) -> &[f64] {
        &self.data[c * self.rows..(c + 1) * self.rows]
    }

    pub fn column_mut(&mut self, c: usize) -> &mut [f64] {
        &mut self.data[c * self.rows..(c + 1) * self.rows]
    }

    /// The square submatrix made of the listed rows.
    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(rows.len(), self.cols);
        for c in 0..self.cols {
            let src = self.column(c);
            for (dst, &r) in out.column_mut(c).iter_mut().zip(rows) {
                *dst = src[r];
            }
        }
        out
    }

    /// Rows as contiguous vectors, i.e. the transpose in column-major layout.
    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for c in 0..self.cols {
            for (r, &v) in self.column(c).iter().enumerate() {
                out.data[r * self.cols + c] = v;
            }
        }
        out
    }

    fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Index of the pivot among `candidates`: largest magnitude, ties to the
/// smallest key.
fn pick_pivot(values: impl Iterator<Item = (usize, f64)> + Clone, keys: &[usize]) -> (usize, f64) {
    let max = values.clone().fold(0.0f64, |m, (_, v)| m.max(v));
    let floor = max * (1.0 - TIE_TOLERANCE);
    let (idx, _) = values
        .filter(|&(_, v)| v >= floor)
        .min_by_key(|&(i, _)| keys[i])
        .expect("non-empty candidate set");
    (idx, max)
}

/// `C += alpha * A * B` on column-major blocks with leading dimension `ld`.
///
/// # Safety
/// The three blocks must lie inside the allocation behind the pointers and
/// `c` must not overlap `a` or `b`.
#[allow(clippy::too_many_arguments)]
unsafe fn gemm_cm(
    m: usize,
    k: usize,
    n: usize,
    alpha: f64,
    a: *const f64,
    b: *const f64,
    c: *mut f64,
    ld: usize,
) {
    matrixmultiply::dgemm(
        m,
        k,
        n,
        alpha,
        a,
        1,
        ld as isize,
        b,
        1,
        ld as isize,
        1.0,
        c,
        1,
        ld as isize,
    );
}

/// Row-major `C = A * B` for dense buffers.
pub fn matmul_rm(m: usize, k: usize, n: usize, a: &[f64], b: &[f64], c: &mut [f64]) {
    assert!(a.len() >= m * k && b.len() >= k * n && c.len() >= m * n);
    // SAFETY: bounds asserted above; `c` is a distinct mutable borrow.
    unsafe {
        matrixmultiply::dgemm(
            m,
            k,
            n,
            1.0,
            a.as_ptr(),
            k as isize,
            1,
            b.as_ptr(),
            n as isize,
            1,
            0.0,
            c.as_mut_ptr(),
            n as isize,
            1,
        );
    }
}

/// In-place blocked LU with partial (row) pivoting of an `m x n` matrix,
/// `m >= n`. Rows are permuted together with `keys`; on return the first `n`
/// entries of `keys` are the pivot rows in the order they were chosen, the
/// strict lower part of the leading `n` columns holds `L` and the upper part
/// holds `U`.
pub fn lu_row_pivot(a: &mut Matrix, keys: &mut [usize]) -> Result<()> {
    let (m, n) = (a.rows, a.cols);
    assert!(m >= n && keys.len() == m);
    let tol = f64::EPSILON * m.max(n) as f64 * a.max_abs();
    let ld = m;
    for kb in (0..n).step_by(BLOCK) {
        let width = BLOCK.min(n - kb);
        let panel_end = kb + width;
        for k in kb..panel_end {
            let col = &a.data[k * ld..(k + 1) * ld];
            let (p, max) = pick_pivot((k..m).map(|i| (i, col[i].abs())), keys);
            if max <= tol || !max.is_finite() {
                return Err(Error::RankDeficient {
                    step: k,
                    size: n,
                    pivot: max,
                });
            }
            if p != k {
                for c in 0..n {
                    a.data.swap(c * ld + k, c * ld + p);
                }
                keys.swap(k, p);
            }
            let (left, right) = a.data.split_at_mut((k + 1) * ld);
            let lcol = &mut left[k * ld..];
            let pivot = lcol[k];
            for v in &mut lcol[k + 1..m] {
                *v /= pivot;
            }
            let lcol = &lcol[..m];
            for j in (k + 1)..panel_end {
                let cj = &mut right[(j - k - 1) * ld..(j - k) * ld];
                let u = cj[k];
                if u != 0.0 {
                    for (x, l) in cj[k + 1..m].iter_mut().zip(&lcol[k + 1..m]) {
                        *x -= l * u;
                    }
                }
            }
        }
        if panel_end == n {
            break;
        }
        // U12 = L11^{-1} A12
        for j in panel_end..n {
            for k in kb..panel_end {
                let u = a.data[j * ld + k];
                if u != 0.0 {
                    for i in (k + 1)..panel_end {
                        a.data[j * ld + i] -= a.data[k * ld + i] * u;
                    }
                }
            }
        }
        // A22 -= L21 * U12
        let base = a.data.as_mut_ptr();
        // SAFETY: L21 occupies columns kb..panel_end, U12 rows kb..panel_end of
        // columns panel_end..n and A22 rows panel_end..m of the same columns;
        // A22 overlaps neither.
        unsafe {
            gemm_cm(
                m - panel_end,
                width,
                n - panel_end,
                -1.0,
                base.add(kb * ld + panel_end),
                base.add(panel_end * ld + kb),
                base.add(panel_end * ld + panel_end),
                ld,
            );
        }
    }
    Ok(())
}

/// Householder QR with column pivoting of an `m x n` matrix (`n >= m`),
/// stopped after `m` steps. Columns are permuted with `keys`; on return the
/// first `m` keys are the selected columns in pivot order.
pub fn qr_column_pivot(a: &mut Matrix, keys: &mut [usize]) -> Result<()> {
    let (m, n) = (a.rows, a.cols);
    assert!(n >= m && keys.len() == n);
    let norm = |c: &[f64]| c.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut norms: Vec<f64> = (0..n).map(|c| norm(a.column(c))).collect();
    let mut reference = norms.clone();
    let scale = norms.iter().fold(0.0f64, |x, &v| x.max(v));
    let tol = f64::EPSILON * m.max(n) as f64 * scale;
    let recompute = f64::EPSILON.sqrt();
    let mut v = vec![0.0; m];
    for k in 0..m {
        let (p, max) = pick_pivot((k..n).map(|j| (j, norms[j])), keys);
        if max <= tol || !max.is_finite() {
            return Err(Error::RankDeficient {
                step: k,
                size: m,
                pivot: max,
            });
        }
        if p != k {
            for r in 0..m {
                a.data.swap(k * m + r, p * m + r);
            }
            keys.swap(k, p);
            norms.swap(k, p);
            reference.swap(k, p);
        }
        // Householder vector for column k, rows k..m.
        let col = a.column_mut(k);
        let alpha = norm(&col[k..]);
        let beta = if col[k] >= 0.0 { -alpha } else { alpha };
        v[k..].copy_from_slice(&col[k..]);
        v[k] -= beta;
        let vnorm2: f64 = v[k..].iter().map(|x| x * x).sum();
        col[k] = beta;
        col[k + 1..].iter_mut().for_each(|x| *x = 0.0);
        if vnorm2 > 0.0 {
            let tau = 2.0 / vnorm2;
            for j in (k + 1)..n {
                let cj = a.column_mut(j);
                let dot: f64 = cj[k..].iter().zip(&v[k..]).map(|(x, y)| x * y).sum();
                let f = tau * dot;
                for (x, y) in cj[k..].iter_mut().zip(&v[k..]) {
                    *x -= f * y;
                }
            }
        }
        for j in (k + 1)..n {
            if norms[j] == 0.0 {
                continue;
            }
            let r = a.get(k, j).abs() / norms[j];
            let t = (1.0 - r * r).max(0.0);
            norms[j] *= t.sqrt();
            if norms[j] <= recompute * reference[j] {
                norms[j] = norm(&a.column(j)[k + 1..]);
                reference[j] = norms[j];
            }
        }
    }
    Ok(())
}

/// LU factorization of a square matrix.
#[derive(Debug, Clone)]
pub struct SquareLu {
    lu: Matrix,
    /// `perm[i]` is the original row placed at position `i`.
    perm: Vec<usize>,
}

impl SquareLu {
    pub fn new(mut a: Matrix) -> Result<Self> {
        assert_eq!(a.rows, a.cols);
        let mut perm: Vec<usize> = (0..a.rows).collect();
        lu_row_pivot(&mut a, &mut perm)?;
        Ok(SquareLu { lu: a, perm })
    }

    pub fn size(&self) -> usize {
        self.lu.rows
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.size();
        let mut y: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for k in 0..n {
            let yk = y[k];
            let col = self.lu.column(k);
            for i in (k + 1)..n {
                y[i] -= col[i] * yk;
            }
        }
        for k in (0..n).rev() {
            let col = self.lu.column(k);
            y[k] /= col[k];
            let yk = y[k];
            for i in 0..k {
                y[i] -= col[i] * yk;
            }
        }
        y
    }

    /// `A^{-1}` in column-major layout.
    pub fn inverse(&self) -> Matrix {
        let n = self.size();
        let mut inv = Matrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for c in 0..n {
            e[c] = 1.0;
            inv.column_mut(c).copy_from_slice(&self.solve(&e));
            e[c] = 0.0;
        }
        inv
    }

    /// `log|det A|`.
    pub fn log_abs_det(&self) -> f64 {
        (0..self.size()).map(|i| self.lu.get(i, i).abs().ln()).sum()
    }

    /// Ratio of the smallest to the largest pivot magnitude.
    pub fn pivot_ratio(&self) -> f64 {
        let d: Vec<f64> = (0..self.size()).map(|i| self.lu.get(i, i).abs()).collect();
        let max = d.iter().fold(0.0f64, |m, &v| m.max(v));
        let min = d.iter().fold(f64::INFINITY, |m, &v| m.min(v));
        min / max
    }
}

//! Graded lexicographic indexing of trivariate Chebyshev product bases.

use crate::cheb1d::{cheb_values, sigma};
use crate::lattice::Point3;

/// `dim P_n^3 = (n + 1)(n + 2)(n + 3) / 6`.
pub fn dim_p3(n: usize) -> usize {
    (n + 1) * (n + 2) * (n + 3) / 6
}

/// Which product basis a coefficient vector refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    /// `T_i(x1) T_j(x2) T_k(x3)`.
    Chebyshev,
    /// The same products scaled to be orthonormal for the product Chebyshev
    /// measure.
    Orthonormal,
}

/// Bijection between `0..dim_p3(n)` and triples `(i, j, k)` with
/// `i + j + k <= n`, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedIndexer {
    n: usize,
    triples: Vec<[usize; 3]>,
}

impl GradedIndexer {
    pub fn new(n: usize) -> Self {
        let mut triples = Vec::with_capacity(dim_p3(n));
        for r in 0..=n {
            for i in 0..=r {
                for j in 0..=(r - i) {
                    triples.push([i, j, r - i - j]);
                }
            }
        }
        GradedIndexer { n, triples }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.triples.len()
    }

    pub fn triples(&self) -> &[[usize; 3]] {
        &self.triples
    }

    pub fn triple(&self, index: usize) -> [usize; 3] {
        self.triples[index]
    }

    /// Linear position of `(i, j, k)`, or `None` past the degree.
    pub fn index_of(&self, [i, j, k]: [usize; 3]) -> Option<usize> {
        let r = i + j + k;
        if r > self.n {
            return None;
        }
        let below = if r == 0 { 0 } else { dim_p3(r - 1) };
        Some(below + i * (r + 1) - i * i.saturating_sub(1) / 2 + j)
    }

    /// Writes every basis function at `x` into `out` (length `size()`).
    pub fn eval_basis(&self, x: Point3, basis: Basis, out: &mut [f64]) {
        let tables = self.axis_tables(x, basis);
        let w = self.n + 1;
        for (o, &[i, j, k]) in out.iter_mut().zip(&self.triples) {
            *o = tables[i] * tables[w + j] * tables[2 * w + k];
        }
    }

    /// `sum_q coeffs[q] phi_q(x)`.
    pub fn eval_series(&self, coeffs: &[f64], x: Point3, basis: Basis) -> f64 {
        let tables = self.axis_tables(x, basis);
        let w = self.n + 1;
        coeffs
            .iter()
            .zip(&self.triples)
            .map(|(c, &[i, j, k])| c * tables[i] * tables[w + j] * tables[2 * w + k])
            .sum()
    }

    fn axis_tables(&self, x: Point3, basis: Basis) -> Vec<f64> {
        let w = self.n + 1;
        let mut tables = vec![0.0; 3 * w];
        for (d, chunk) in tables.chunks_mut(w).enumerate() {
            cheb_values(x[d], chunk);
            if basis == Basis::Orthonormal {
                for (m, v) in chunk.iter_mut().enumerate() {
                    *v *= sigma(m as u64);
                }
            }
        }
        tables
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_one_order() {
        let g = GradedIndexer::new(1);
        assert_eq!(g.triples(), &[[0, 0, 0], [0, 0, 1], [0, 1, 0], [1, 0, 0]]);
    }

    #[test]
    fn sizes() {
        assert_eq!(GradedIndexer::new(2).size(), 10);
        assert_eq!(GradedIndexer::new(100).size(), 176_851);
        assert_eq!(dim_p3(30), 5456);
    }

    #[test]
    fn index_of_inverts_triple() {
        let g = GradedIndexer::new(12);
        for (q, &t) in g.triples().iter().enumerate() {
            assert_eq!(g.index_of(t), Some(q));
        }
        assert_eq!(g.index_of([13, 0, 0]), None);
    }

    #[test]
    fn prefixes_span_lower_degrees() {
        let g = GradedIndexer::new(9);
        for r in 0..=9 {
            let prefix = &g.triples()[..dim_p3(r)];
            assert!(prefix.iter().all(|t| t.iter().sum::<usize>() <= r));
        }
        for w in g.triples().windows(2) {
            let (a, b) = (w[0], w[1]);
            let (ra, rb) = (a.iter().sum::<usize>(), b.iter().sum::<usize>());
            assert!(ra < rb || (ra == rb && a < b));
        }
    }

    #[test]
    fn basis_evaluation() {
        let g = GradedIndexer::new(3);
        let mut out = vec![0.0; g.size()];
        g.eval_basis([1.0, 1.0, 1.0], Basis::Chebyshev, &mut out);
        assert!(out.iter().all(|&v| v == 1.0));
        let x = [0.3, -0.2, 0.9];
        g.eval_basis(x, Basis::Chebyshev, &mut out);
        let q = g.index_of([1, 2, 0]).unwrap();
        assert!((out[q] - 0.3 * (2.0 * 0.04 - 1.0)).abs() < 1e-15);
    }
}

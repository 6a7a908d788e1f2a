//! Reference implementations used by the integration and acceptance tests.
//! They favour the most literal formulation over speed.

#![allow(dead_code)]

use std::f64::consts::PI;

use lissajous3::Lattice;
use rand::Rng;

pub fn cheb(m: usize, x: f64) -> f64 {
    (m as f64 * x.clamp(-1.0, 1.0).acos()).cos()
}

pub fn sigma(m: usize) -> f64 {
    if m == 0 {
        1.0 / PI.sqrt()
    } else {
        (2.0 / PI).sqrt()
    }
}

pub fn phi_hat([i, j, k]: [usize; 3], x: [f64; 3]) -> f64 {
    sigma(i) * sigma(j) * sigma(k) * cheb(i, x[0]) * cheb(j, x[1]) * cheb(k, x[2])
}

/// Triples of total degree at most `n`, by degree and then lexicographically.
pub fn graded_triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for r in 0..=n {
        for i in 0..=r {
            for j in 0..=r - i {
                out.push([i, j, r - i - j]);
            }
        }
    }
    out
}

/// Coefficients by the triple sum over the lattice nodes.
pub fn direct_coeffs(lattice: &Lattice, samples: &[f64], n: usize) -> Vec<f64> {
    graded_triples(n)
        .into_iter()
        .map(|t| {
            lattice
                .nodes
                .iter()
                .zip(&lattice.weights)
                .zip(samples)
                .map(|((&x, &w), &f)| w * f * phi_hat(t, x))
                .sum()
        })
        .collect()
}

/// True when no nonzero integer vector with 1-norm at most `m` annihilates `(a, b, c)`.
pub fn brute_nonresonant([a, b, c]: [u64; 3], m: i64) -> bool {
    for x in -m..=m {
        for y in -(m - x.abs())..=(m - x.abs()) {
            let rest = m - x.abs() - y.abs();
            for z in -rest..=rest {
                if (x, y, z) != (0, 0, 0) && x * a as i64 + y * b as i64 + z * c as i64 == 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// `int_{[-1,1]^3} x^a y^b z^c dx`.
pub fn monomial_integral(alpha: [usize; 3]) -> f64 {
    alpha
        .iter()
        .map(|&e| {
            if e % 2 == 1 {
                0.0
            } else {
                2.0 / (e as f64 + 1.0)
            }
        })
        .product()
}

pub fn random_point<R: Rng>(rng: &mut R) -> [f64; 3] {
    [
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
        rng.gen_range(-1.0..=1.0),
    ]
}

/// Polynomial with uniform coefficients in the unnormalized Chebyshev product basis.
#[derive(Debug, Clone)]
pub struct ChebPoly {
    pub n: usize,
    pub coeffs: Vec<f64>,
}

impl ChebPoly {
    pub fn random<R: Rng>(rng: &mut R, n: usize) -> Self {
        let coeffs = (0..graded_triples(n).len())
            .map(|_| rng.gen_range(-1.0..=1.0))
            .collect();
        ChebPoly { n, coeffs }
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        graded_triples(self.n)
            .into_iter()
            .zip(&self.coeffs)
            .map(|([i, j, k], c)| c * cheb(i, x[0]) * cheb(j, x[1]) * cheb(k, x[2]))
            .sum()
    }
}

/// Smooth test function `exp(p . x) cos(q . x)` with random coefficients.
#[derive(Debug, Clone, Copy)]
pub struct SmoothFn {
    p: [f64; 3],
    q: [f64; 3],
}

impl SmoothFn {
    pub fn random<R: Rng>(rng: &mut R) -> Self {
        SmoothFn {
            p: random_point(rng),
            q: [
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ],
        }
    }

    pub fn eval(&self, x: [f64; 3]) -> f64 {
        let dot = |v: [f64; 3]| v[0] * x[0] + v[1] * x[1] + v[2] * x[2];
        dot(self.p).exp() * dot(self.q).cos()
    }
}

/// `log |det A|` of a square row-major matrix by elimination with partial pivoting.
pub fn log_abs_det(mut a: Vec<f64>, n: usize) -> f64 {
    let mut acc = 0.0;
    for col in 0..n {
        let (piv, val) =
            (col..n)
                .map(|r| (r, a[r * n + col].abs()))
                .fold(
                    (col, -1.0),
                    |best, cur| if cur.1 > best.1 { cur } else { best },
                );
        if val == 0.0 {
            return f64::NEG_INFINITY;
        }
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
        }
        let d = a[col * n + col];
        acc += d.abs().ln();
        for r in col + 1..n {
            let f = a[r * n + col] / d;
            if f != 0.0 {
                for c in col..n {
                    a[r * n + c] -= f * a[col * n + c];
                }
            }
        }
    }
    acc
}

/// Row-major Chebyshev-Vandermonde rows at `points` for degree `n`.
pub fn vandermonde_rows(points: &[[f64; 3]], n: usize) -> Vec<f64> {
    let triples = graded_triples(n);
    let mut out = Vec::with_capacity(points.len() * triples.len());
    for x in points {
        for &[i, j, k] in &triples {
            out.push(cheb(i, x[0]) * cheb(j, x[1]) * cheb(k, x[2]));
        }
    }
    out
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

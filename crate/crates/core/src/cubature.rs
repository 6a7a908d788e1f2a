//! Algebraic cubature on the lattices and Clenshaw-Curtis type rules built
//! from the hyperinterpolation operator.

use rayon::prelude::*;

use crate::cheb1d::sigma;
use crate::error::{Error, Result};
use crate::graded::{dim_p3, Basis, GradedIndexer};
use crate::lattice::{Lattice, Point3, Variant};

/// `sum_s w_s f(l(theta_s))`, exact against the product Chebyshev measure for
/// polynomials of degree `2n`.
pub fn integrate<F>(f: F, n: usize, variant: Variant) -> Result<f64>
where
    F: Fn(Point3) -> f64,
{
    let lattice = Lattice::new(n, variant)?;
    lattice.quadrature(&lattice.sample(f)?)
}

/// `int_{-1}^{1} T_m(x) dx`.
pub fn chebyshev_integral(m: usize) -> f64 {
    if m % 2 == 1 {
        0.0
    } else {
        2.0 / (1.0 - (m * m) as f64)
    }
}

/// A density together with the orthonormal moments of its first `dim_p3(n)`
/// basis functions.
pub trait MomentSource {
    fn name(&self) -> &str;
    /// Moments in graded order, length `dim_p3(n)`.
    fn moments(&self, n: usize) -> Vec<f64>;
    /// Limit of the absolute weight sums as `n` grows, when known. For a
    /// nonnegative density with `xi / w` square integrable the rules become
    /// asymptotically positive and the limit is `int xi dx`.
    fn stability_limit(&self) -> Option<f64> {
        None
    }
}

/// The Lebesgue measure on the cube (`xi = 1`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Lebesgue;

impl MomentSource for Lebesgue {
    fn name(&self) -> &str {
        "lebesgue"
    }

    fn moments(&self, n: usize) -> Vec<f64> {
        lebesgue_moments(n)
    }

    fn stability_limit(&self) -> Option<f64> {
        Some(8.0)
    }
}

/// Caller supplied moments for a single degree.
#[derive(Debug, Clone, PartialEq)]
pub struct TabulatedMoments {
    pub label: String,
    pub n: usize,
    pub values: Vec<f64>,
}

impl MomentSource for TabulatedMoments {
    fn name(&self) -> &str {
        &self.label
    }

    fn moments(&self, n: usize) -> Vec<f64> {
        assert_eq!(
            n, self.n,
            "tabulated moments exist for degree {} only",
            self.n
        );
        self.values.clone()
    }
}

/// `m_ijk = sigma_i sigma_j sigma_k I_i I_j I_k` with `I_m = int T_m`.
pub fn lebesgue_moments(n: usize) -> Vec<f64> {
    GradedIndexer::new(n)
        .triples()
        .iter()
        .map(|&[i, j, k]| {
            [i, j, k]
                .iter()
                .map(|&m| sigma(m as u64) * chebyshev_integral(m))
                .product()
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct CCRule {
    pub n: usize,
    pub lattice: Lattice,
    /// Signed weights, one per lattice node.
    pub weights: Vec<f64>,
    pub density: String,
}

impl CCRule {
    pub fn apply<F>(&self, f: F) -> Result<f64>
    where
        F: Fn(Point3) -> f64,
    {
        let samples = self.lattice.sample(f)?;
        Ok(self.weights.iter().zip(&samples).map(|(w, g)| w * g).sum())
    }

    pub fn abs_weight_sum(&self) -> f64 {
        self.weights.iter().map(|w| w.abs()).sum()
    }
}

/// Weights `W_s = w_s sum_ijk m_ijk phi_ijk(l(theta_s))`.
pub fn cc_rule(moments: &[f64], n: usize, variant: Variant) -> Result<CCRule> {
    cc_rule_named(moments, n, variant, "custom")
}

fn cc_rule_named(moments: &[f64], n: usize, variant: Variant, density: &str) -> Result<CCRule> {
    let indexer = GradedIndexer::new(n);
    if moments.len() != indexer.size() {
        return Err(Error::Shape {
            what: "moments",
            expected: indexer.size(),
            got: moments.len(),
        });
    }
    let lattice = Lattice::new(n, variant)?;
    let weights = lattice
        .nodes
        .par_iter()
        .zip(&lattice.weights)
        .map(|(&x, &w)| w * indexer.eval_series(moments, x, Basis::Orthonormal))
        .collect();
    Ok(CCRule {
        n,
        lattice,
        weights,
        density: density.to_string(),
    })
}

pub fn cc_rule_for<D: MomentSource + ?Sized>(
    density: &D,
    n: usize,
    variant: Variant,
) -> Result<CCRule> {
    let moments = density.moments(n);
    debug_assert_eq!(moments.len(), dim_p3(n));
    cc_rule_named(&moments, n, variant, density.name())
}

/// `sum_s |W_s|` for each degree.
pub fn cc_stability<D: MomentSource + ?Sized>(
    degrees: &[usize],
    density: &D,
    variant: Variant,
) -> Result<Vec<f64>> {
    degrees
        .iter()
        .map(|&n| Ok(cc_rule_for(density, n, variant)?.abs_weight_sum()))
        .collect()
}

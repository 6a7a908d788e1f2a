//! Lissajous curves in the cube and the rank-1 Chebyshev lattices on them.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::frequency::{frequency_triple, FrequencyTriple};

pub type Point3 = [f64; 3];

/// Which univariate rule samples the curve parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    /// Chebyshev zeros, `mu = nu`.
    Gauss,
    /// Chebyshev extrema including the endpoints, `mu = nu + 1`.
    #[default]
    Lobatto,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Gauss => "gauss",
            Variant::Lobatto => "lobatto",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gauss" | "gauss-chebyshev" => Ok(Variant::Gauss),
            "lobatto" | "gauss-chebyshev-lobatto" => Ok(Variant::Lobatto),
            _ => Err(Error::Unknown {
                what: "lattice variant",
                name: s.to_string(),
            }),
        }
    }
}

/// The angle `pi * num / den`, kept as an exact rational multiple of `pi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveAngle {
    pub num: u64,
    pub den: u64,
}

impl CurveAngle {
    pub fn radians(self) -> f64 {
        PI * self.num as f64 / self.den as f64
    }

    /// `cos(m * theta)` with the phase reduced in integer arithmetic.
    pub fn cos_multiple(self, m: u64) -> f64 {
        cos_pi_rational(m as u128 * self.num as u128, self.den as u128)
    }
}

/// `cos(pi * num / den)` evaluated after exact reduction of `num / den` to
/// `[0, 1/4]` so the floating point argument never exceeds `pi / 4`.
pub fn cos_pi_rational(num: u128, den: u128) -> f64 {
    assert!(den > 0);
    let period = 2 * den;
    let mut r = num % period;
    if r > den {
        r = period - r;
    }
    // r / den in [0, 1]; compare 4r with den, 2den, 3den.
    let (q4, d4) = (4 * r, den);
    if q4 <= d4 {
        (PI * r as f64 / den as f64).cos()
    } else if q4 <= 2 * d4 {
        (PI * (den - 2 * r) as f64 / (2 * den) as f64).sin()
    } else if q4 <= 3 * d4 {
        -(PI * (2 * r - den) as f64 / (2 * den) as f64).sin()
    } else {
        -(PI * (den - r) as f64 / den as f64).cos()
    }
}

/// `(cos(a t), cos(b t), cos(c t))` for an arbitrary parameter in `[0, pi]`.
pub fn lissajous_point(triple: &FrequencyTriple, theta: f64) -> Result<Point3> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain {
            what: "theta",
            value: theta,
            domain: "[0, pi]",
        });
    }
    Ok([
        (triple.a as f64 * theta).cos(),
        (triple.b as f64 * theta).cos(),
        (triple.c as f64 * theta).cos(),
    ])
}

/// Curve point at an exact rational angle; this is how lattice nodes are built.
pub fn lissajous_point_exact(triple: &FrequencyTriple, angle: CurveAngle) -> Point3 {
    [
        angle.cos_multiple(triple.a),
        angle.cos_multiple(triple.b),
        angle.cos_multiple(triple.c),
    ]
}

/// `n * max(a, b, c)`: the univariate degree of a degree-`n` polynomial
/// restricted to the curve.
pub fn nu(n: u64) -> Result<u64> {
    let t = frequency_triple(n)?;
    Ok(n * t.c)
}

#[derive(Debug, Clone)]
pub struct Lattice {
    pub n: usize,
    pub triple: FrequencyTriple,
    pub variant: Variant,
    pub nu: usize,
    pub mu: usize,
    pub thetas: Vec<f64>,
    pub taus: Vec<f64>,
    pub nodes: Vec<Point3>,
    /// Univariate weights, summing to `pi`.
    pub omega: Vec<f64>,
    /// Cube weights `pi^2 * omega`, summing to `pi^3`.
    pub weights: Vec<f64>,
}

impl Lattice {
    pub fn new(n: usize, variant: Variant) -> Result<Self> {
        let triple = frequency_triple(n as u64)?;
        let nu = n * triple.c as usize;
        let mu = match variant {
            Variant::Gauss => nu,
            Variant::Lobatto => nu + 1,
        };
        let count = mu + 1;
        let angles: Vec<CurveAngle> = (0..count).map(|s| angle_for(variant, mu, s)).collect();
        let thetas = angles.iter().map(|a| a.radians()).collect();
        let taus = angles.iter().map(|a| a.cos_multiple(1)).collect();
        let nodes = angles
            .iter()
            .map(|&a| lissajous_point_exact(&triple, a))
            .collect();
        let omega: Vec<f64> = match variant {
            Variant::Gauss => vec![PI / count as f64; count],
            Variant::Lobatto => {
                let mut w = vec![PI / mu as f64; count];
                w[0] = PI / (2 * mu) as f64;
                w[mu] = PI / (2 * mu) as f64;
                w
            }
        };
        let weights = omega.iter().map(|w| PI * PI * w).collect();
        Ok(Lattice {
            n,
            triple,
            variant,
            nu,
            mu,
            thetas,
            taus,
            nodes,
            omega,
            weights,
        })
    }

    /// Number of lattice points, `mu + 1`.
    pub fn node_count(&self) -> usize {
        self.mu + 1
    }

    /// Exact parameter of node `s`.
    pub fn angle(&self, s: usize) -> CurveAngle {
        angle_for(self.variant, self.mu, s)
    }

    /// Cubature `sum_s w_s g_s` for samples taken at the nodes.
    pub fn quadrature(&self, samples: &[f64]) -> Result<f64> {
        if samples.len() != self.node_count() {
            return Err(Error::Shape {
                what: "samples",
                expected: self.node_count(),
                got: samples.len(),
            });
        }
        Ok(self.weights.iter().zip(samples).map(|(w, g)| w * g).sum())
    }

    /// Evaluates `f` at every node, rejecting non-finite values.
    pub fn sample<F>(&self, f: F) -> Result<Vec<f64>>
    where
        F: Fn(Point3) -> f64,
    {
        self.try_sample(|x| Ok::<f64, std::convert::Infallible>(f(x)))
    }

    /// Like [`Lattice::sample`] for fallible functions; the failing node is
    /// reported in the error.
    pub fn try_sample<F, E>(&self, mut f: F) -> Result<Vec<f64>>
    where
        F: FnMut(Point3) -> std::result::Result<f64, E>,
        E: fmt::Display,
    {
        self.nodes
            .iter()
            .enumerate()
            .map(|(s, &x)| match f(x) {
                Ok(v) if v.is_finite() => Ok(v),
                Ok(v) => Err(Error::Evaluation {
                    node: s,
                    message: format!("non-finite value {v}"),
                }),
                Err(e) => Err(Error::Evaluation {
                    node: s,
                    message: e.to_string(),
                }),
            })
            .collect()
    }
}

fn angle_for(variant: Variant, mu: usize, s: usize) -> CurveAngle {
    match variant {
        Variant::Gauss => CurveAngle {
            num: 2 * s as u64 + 1,
            den: 2 * mu as u64 + 2,
        },
        Variant::Lobatto => CurveAngle {
            num: s as u64,
            den: mu as u64,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn curve_point_examples() {
        let t = frequency_triple(1).unwrap();
        assert_eq!(lissajous_point(&t, 0.0).unwrap(), [1.0, 1.0, 1.0]);
        let p = lissajous_point(&t, PI).unwrap();
        assert!(close(p[0], -1.0, 1e-15) && close(p[1], 1.0, 1e-15) && close(p[2], -1.0, 1e-15));
        let p = lissajous_point(&t, PI / 2.0).unwrap();
        assert!(close(p[0], 0.0, 1e-15) && close(p[1], -1.0, 1e-15) && close(p[2], 0.0, 1e-15));
        assert!(lissajous_point(&t, -0.1).is_err());
        assert!(lissajous_point(&t, 3.2).is_err());
    }

    #[test]
    fn exact_reduction_matches_libm_at_small_arguments() {
        for den in 1..40u128 {
            for num in 0..200u128 {
                let direct = (PI * num as f64 / den as f64).cos();
                assert!(close(cos_pi_rational(num, den), direct, 1e-13));
            }
        }
        assert_eq!(cos_pi_rational(0, 7), 1.0);
        assert_eq!(cos_pi_rational(7, 7), -1.0);
        assert_eq!(cos_pi_rational(1, 2), 0.0);
    }

    #[test]
    fn nu_examples() {
        assert_eq!(nu(1).unwrap(), 3);
        assert_eq!(nu(2).unwrap(), 14);
        assert_eq!(nu(100).unwrap(), 765_100);
        for n in 1..60u64 {
            let closed = if n % 2 == 0 {
                (3 * n * n * n + 6 * n * n + 4 * n) / 4
            } else {
                (3 * n * n * n + 6 * n * n + 3 * n) / 4
            };
            assert_eq!(nu(n).unwrap(), closed);
        }
    }

    #[test]
    fn gauss_lattice_degree_two() {
        let l = Lattice::new(2, Variant::Gauss).unwrap();
        assert_eq!(l.mu, 14);
        assert_eq!(l.node_count(), 15);
        for w in &l.weights {
            assert!(close(*w, PI * PI * PI / 15.0, 1e-14));
        }
    }

    #[test]
    fn lobatto_lattice_degree_two() {
        let l = Lattice::new(2, Variant::Lobatto).unwrap();
        assert_eq!(l.mu, 15);
        assert_eq!(l.node_count(), 16);
        assert!(close(l.omega[0], PI / 30.0, 1e-16));
        assert!(close(l.omega[15], PI / 30.0, 1e-16));
        assert!(close(l.omega[7], PI / 15.0, 1e-16));
        let first = Lattice::new(1, Variant::Lobatto).unwrap();
        assert_eq!(first.thetas[0], 0.0);
        assert_eq!(first.nodes[0], [1.0, 1.0, 1.0]);
    }

    #[test]
    fn weights_sum_to_pi_cubed() {
        for n in 1..=15 {
            for v in [Variant::Gauss, Variant::Lobatto] {
                let l = Lattice::new(n, v).unwrap();
                let total: f64 = l.omega.iter().sum();
                assert!(((total - PI) / PI).abs() < 1e-13);
                let total: f64 = l.weights.iter().sum();
                assert!(((total - PI.powi(3)) / PI.powi(3)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn nodes_are_reproducible_from_angles() {
        for v in [Variant::Gauss, Variant::Lobatto] {
            let l = Lattice::new(7, v).unwrap();
            for s in 0..l.node_count() {
                assert_eq!(lissajous_point_exact(&l.triple, l.angle(s)), l.nodes[s]);
                let p = lissajous_point(&l.triple, l.thetas[s]).unwrap();
                for (a, b) in p.iter().zip(&l.nodes[s]) {
                    assert!(close(*a, *b, 1e-11));
                }
                assert!(l.nodes[s].iter().all(|x| x.abs() <= 1.0));
            }
        }
    }

    #[test]
    fn cardinality_at_degree_hundred() {
        let l = Lattice::new(100, Variant::Lobatto).unwrap();
        assert_eq!(l.node_count(), 765_102);
    }

    #[test]
    fn quadrature_shape_check() {
        let l = Lattice::new(1, Variant::Gauss).unwrap();
        assert!(matches!(l.quadrature(&[1.0]), Err(Error::Shape { .. })));
        let err = l
            .sample(|x| if x[0] > 0.9 { f64::NAN } else { 1.0 })
            .unwrap_err();
        assert!(matches!(err, Error::Evaluation { node: 0, .. }));
    }

    #[test]
    fn variant_parsing() {
        assert_eq!("gauss".parse::<Variant>().unwrap(), Variant::Gauss);
        assert_eq!("Lobatto".parse::<Variant>().unwrap(), Variant::Lobatto);
        assert!("padua".parse::<Variant>().is_err());
    }
}

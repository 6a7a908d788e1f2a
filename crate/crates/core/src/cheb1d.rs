//! Univariate Chebyshev polynomials and the discrete transforms along the curve.
//!
//! Both transforms are realised through a complex FFT of the even extension
//! of the samples, which works for any length.

use std::f64::consts::{FRAC_1_PI, PI};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::lattice::cos_pi_rational;

/// Above this degree `T_m` is evaluated through `cos(m acos t)`.
const RECURRENCE_LIMIT: u64 = 64;

/// Normalisation making `sigma_m T_m` orthonormal for the Chebyshev weight.
pub fn sigma(m: u64) -> f64 {
    if m == 0 {
        FRAC_1_PI.sqrt()
    } else {
        (2.0 * FRAC_1_PI).sqrt()
    }
}

fn check_unit(t: f64) -> Result<()> {
    if t.abs() <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "t",
            value: t,
            domain: "[-1, 1]",
        })
    }
}

/// `T_m(t)`.
pub fn cheb_eval(m: u64, t: f64) -> Result<f64> {
    check_unit(t)?;
    if m <= RECURRENCE_LIMIT {
        let (mut prev, mut cur) = (1.0, t);
        if m == 0 {
            return Ok(1.0);
        }
        for _ in 1..m {
            (prev, cur) = (cur, 2.0 * t * cur - prev);
        }
        Ok(cur)
    } else {
        Ok((m as f64 * t.acos()).cos())
    }
}

/// `sigma_m T_m(t)`.
pub fn cheb_eval_normalized(m: u64, t: f64) -> Result<f64> {
    Ok(sigma(m) * cheb_eval(m, t)?)
}

/// Fills `out[m] = T_m(t)` for `m < out.len()` by the three-term recurrence.
pub fn cheb_values(t: f64, out: &mut [f64]) {
    if let Some(first) = out.first_mut() {
        *first = 1.0;
    }
    if out.len() > 1 {
        out[1] = t;
    }
    for m in 2..out.len() {
        out[m] = 2.0 * t * out[m - 1] - out[m - 2];
    }
}

/// Fills `out[m] = sigma_m T_m(t)`.
pub fn cheb_values_normalized(t: f64, out: &mut [f64]) {
    cheb_values(t, out);
    let (s0, s) = (sigma(0), sigma(1));
    for (m, v) in out.iter_mut().enumerate() {
        *v *= if m == 0 { s0 } else { s };
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesKind {
    /// Discrete orthonormal expansion coefficients `gamma_m`.
    Gamma,
    /// Interpolation coefficients `c_m` at the Chebyshev extrema.
    LobattoC,
}

impl SeriesKind {
    fn name(self) -> &'static str {
        match self {
            SeriesKind::Gamma => "gamma",
            SeriesKind::LobattoC => "lobatto-c",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    pub kind: SeriesKind,
    pub mu: usize,
    pub values: Vec<f64>,
}

/// Coefficients of the interpolant at `tau_s = cos(s pi / mu)`, `s = 0..=mu`.
///
/// Interior coefficients carry the factor `2 / mu` and the two end ones
/// `1 / mu`, both applied to the sum with halved first and last terms.
pub fn lobatto_coeffs(samples: &[f64]) -> Result<ChebSeries> {
    if samples.len() < 2 {
        return Err(Error::Shape {
            what: "Lobatto samples (at least)",
            expected: 2,
            got: samples.len(),
        });
    }
    let mu = samples.len() - 1;
    let sums = dct1(samples);
    let values = sums
        .iter()
        .enumerate()
        .map(|(m, &x)| {
            if m == 0 || m == mu {
                x / mu as f64
            } else {
                2.0 * x / mu as f64
            }
        })
        .collect();
    Ok(ChebSeries {
        kind: SeriesKind::LobattoC,
        mu,
        values,
    })
}

/// `gamma_m = sum_s omega_s sigma_m T_m(tau_s) g_s` for samples at the
/// Chebyshev zeros `tau_s = cos((2s + 1) pi / (2 mu + 2))`.
pub fn gauss_gamma(samples: &[f64]) -> Result<ChebSeries> {
    if samples.is_empty() {
        return Err(Error::Shape {
            what: "Gauss samples (at least)",
            expected: 1,
            got: 0,
        });
    }
    let count = samples.len();
    let weight = PI / count as f64;
    let values = dct2(samples)
        .iter()
        .enumerate()
        .map(|(m, &y)| sigma(m as u64) * weight * y)
        .collect();
    Ok(ChebSeries {
        kind: SeriesKind::Gamma,
        mu: count - 1,
        values,
    })
}

/// Converts Lobatto interpolation coefficients into `gamma_m`.
pub fn gamma_from_c(series: &ChebSeries) -> Result<ChebSeries> {
    if series.kind != SeriesKind::LobattoC {
        return Err(Error::SeriesKind {
            expected: SeriesKind::LobattoC.name(),
            got: series.kind.name(),
        });
    }
    let mu = series.mu;
    let values = series
        .values
        .iter()
        .enumerate()
        .map(|(m, &c)| {
            let scale = if m == 0 || m == mu { PI } else { PI / 2.0 };
            sigma(m as u64) * scale * c
        })
        .collect();
    Ok(ChebSeries {
        kind: SeriesKind::Gamma,
        mu,
        values,
    })
}

/// Evaluates `sum_m values[m] T_m(t)` by Clenshaw's recurrence.
pub fn clenshaw(values: &[f64], t: f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for &c in values.iter().skip(1).rev() {
        (b1, b2) = (2.0 * t * b1 - b2 + c, b1);
    }
    values.first().copied().unwrap_or(0.0) + t * b1 - b2
}

/// `y_m = g_0 / 2 + (-1)^m g_mu / 2 + sum_{0<s<mu} g_s cos(pi m s / mu)`.
fn dct1(g: &[f64]) -> Vec<f64> {
    let mu = g.len() - 1;
    let len = 2 * mu;
    let mut buf: Vec<Complex<f64>> = g
        .iter()
        .chain(g[1..mu].iter().rev())
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    buf[..=mu].iter().map(|z| 0.5 * z.re).collect()
}

/// `y_m = sum_s g_s cos(pi m (2s + 1) / (2N))`, `m = 0..N`.
fn dct2(g: &[f64]) -> Vec<f64> {
    let count = g.len();
    let mut buf: Vec<Complex<f64>> = g
        .iter()
        .chain(g.iter().rev())
        .map(|&v| Complex::new(v, 0.0))
        .collect();
    FftPlanner::new()
        .plan_fft_forward(2 * count)
        .process(&mut buf);
    let den = 2 * count as u128;
    buf[..count]
        .iter()
        .enumerate()
        .map(|(m, z)| {
            // exp(-i pi m / 2N) * z
            let c = cos_pi_rational(m as u128, den);
            let s = cos_pi_rational((count - m) as u128, den);
            0.5 * (c * z.re + s * z.im)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct_lobatto(g: &[f64]) -> Vec<f64> {
        let mu = g.len() - 1;
        (0..=mu)
            .map(|m| {
                let sum: f64 = (0..=mu)
                    .map(|s| {
                        let half = if s == 0 || s == mu { 0.5 } else { 1.0 };
                        half * (PI * (m * s) as f64 / mu as f64).cos() * g[s]
                    })
                    .sum();
                if m == 0 || m == mu {
                    sum / mu as f64
                } else {
                    2.0 * sum / mu as f64
                }
            })
            .collect()
    }

    fn max_abs(v: &[f64]) -> f64 {
        v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
    }

    #[test]
    fn eval_examples() {
        assert_eq!(cheb_eval(0, 0.3).unwrap(), 1.0);
        assert_eq!(cheb_eval(2, 0.5).unwrap(), -0.5);
        assert!((sigma(0) - PI.powf(-0.5)).abs() < 1e-16);
        assert!((sigma(3) - (2.0 / PI).sqrt()).abs() < 1e-16);
        assert!(cheb_eval(3, 1.5).is_err());
        let high = cheb_eval(101, 0.3).unwrap();
        assert!((high - (101.0 * 0.3f64.acos()).cos()).abs() < 1e-12);
        let mut tab = [0.0; 80];
        cheb_values(-0.7, &mut tab);
        for (m, v) in tab.iter().enumerate() {
            assert!((v - cheb_eval(m as u64, -0.7).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn lobatto_constant_and_single_mode() {
        let c = lobatto_coeffs(&[1.0; 9]).unwrap();
        assert!((c.values[0] - 1.0).abs() < 1e-15);
        assert!(c.values[1..].iter().all(|v| v.abs() < 1e-15));

        let mu = 6;
        let g: Vec<f64> = (0..=mu)
            .map(|s| cheb_eval(3, (PI * s as f64 / mu as f64).cos()).unwrap())
            .collect();
        let c = lobatto_coeffs(&g).unwrap();
        for (m, v) in c.values.iter().enumerate() {
            let want = if m == 3 { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-14, "m={m} v={v}");
        }
    }

    #[test]
    fn lobatto_matches_direct_sum() {
        let p = [0.3, -1.2, 0.5, 0.25, -0.8, 1.1];
        let g: Vec<f64> = (0..=8)
            .map(|s| clenshaw(&p, (PI * s as f64 / 8.0).cos()))
            .collect();
        let fast = lobatto_coeffs(&g).unwrap().values;
        let slow = direct_lobatto(&g);
        let scale = max_abs(&slow);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() <= 1e-12 * scale);
        }
        for (m, &want) in p.iter().enumerate() {
            assert!((fast[m] - want).abs() < 1e-13);
        }
    }

    #[test]
    fn lobatto_interpolates() {
        let mu = 37;
        let taus: Vec<f64> = (0..=mu)
            .map(|s| (PI * s as f64 / mu as f64).cos())
            .collect();
        let g: Vec<f64> = taus.iter().map(|t| (3.0 * t).sin() + t.exp()).collect();
        let c = lobatto_coeffs(&g).unwrap();
        for (t, want) in taus.iter().zip(&g) {
            assert!((clenshaw(&c.values, *t) - want).abs() < 1e-12 * max_abs(&g));
        }
    }

    #[test]
    fn gauss_constant_and_single_mode() {
        let g = gauss_gamma(&[1.0; 11]).unwrap();
        assert!((g.values[0] - PI.sqrt()).abs() < 1e-14);
        assert!(g.values[1..].iter().all(|v| v.abs() < 1e-14));

        let count = 11;
        let samples: Vec<f64> = (0..count)
            .map(|s| {
                let tau = (PI * (2 * s + 1) as f64 / (2 * count) as f64).cos();
                cheb_eval_normalized(1, tau).unwrap()
            })
            .collect();
        let g = gauss_gamma(&samples).unwrap();
        for (m, v) in g.values.iter().enumerate() {
            let want = if m == 1 { 1.0 } else { 0.0 };
            assert!((v - want).abs() < 1e-14);
        }
    }

    #[test]
    fn gauss_matches_direct_sum() {
        let count = 23;
        let samples: Vec<f64> = (0..count).map(|s| ((s * s) as f64 * 0.37).sin()).collect();
        let fast = gauss_gamma(&samples).unwrap().values;
        let slow: Vec<f64> = (0..count)
            .map(|m| {
                (0..count)
                    .map(|s| {
                        let tau = (PI * (2 * s + 1) as f64 / (2 * count) as f64).cos();
                        PI / count as f64
                            * cheb_eval_normalized(m as u64, tau).unwrap()
                            * samples[s]
                    })
                    .sum()
            })
            .collect();
        let scale = max_abs(&slow);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn gamma_from_c_examples() {
        let mut c = ChebSeries {
            kind: SeriesKind::LobattoC,
            mu: 5,
            values: vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        };
        let g = gamma_from_c(&c).unwrap();
        assert!((g.values[0] - PI.sqrt()).abs() < 1e-15);
        c.values = vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0];
        let g = gamma_from_c(&c).unwrap();
        assert!((g.values[3] - (PI / 2.0).sqrt()).abs() < 1e-15);
        c.values = vec![0.0; 6];
        assert!(gamma_from_c(&c).unwrap().values.iter().all(|&v| v == 0.0));
        assert!(gamma_from_c(&g).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(matches!(lobatto_coeffs(&[1.0]), Err(Error::Shape { .. })));
        assert!(matches!(gauss_gamma(&[]), Err(Error::Shape { .. })));
    }
}

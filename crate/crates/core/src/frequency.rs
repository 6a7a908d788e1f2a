//! Curve frequencies and the integer arithmetic behind them.
//!
//! A frequency triple `(a, b, c)` is *non-resonant up to `N`* when no
//! `(i, j, k) >= 0`, not all zero, with `i + j + k <= N` satisfies one of
//! `i a = j b + k c`, `j b = i a + k c` or `k c = i a + j b`. Equivalently
//! there is no nonzero integer vector `(x, y, z)` with `|x| + |y| + |z| <= N`
//! and `x a + y b + z c = 0`. The triples produced by [`frequency_triple`]
//! are non-resonant up to exactly `2n`.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Largest degree accepted by [`frequency_triple`]; keeps `n * c_n` inside `u64`
/// with room to spare.
pub const MAX_DEGREE: u64 = 2_000_000;

/// Upper bound on the number of elementary resonance tests performed by
/// [`verify_conjecture`].
pub const CONJECTURE_CHECK_LIMIT: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FrequencyTriple {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

impl FrequencyTriple {
    pub fn as_array(&self) -> [u64; 3] {
        [self.a, self.b, self.c]
    }

    /// Largest frequency, which is always `c`.
    pub fn max(&self) -> u64 {
        self.c
    }
}

/// A nonzero integer vector `x` with `sum x_i a_i = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiophantineWitness {
    pub coeffs: Vec<i64>,
    pub l1: u64,
}

impl DiophantineWitness {
    fn new(coeffs: Vec<i64>) -> Self {
        let l1 = coeffs.iter().map(|x| x.unsigned_abs()).sum();
        DiophantineWitness { coeffs, l1 }
    }

    /// Evaluates `sum x_i a_i` exactly.
    pub fn image(&self, a: &[u64]) -> i128 {
        self.coeffs
            .iter()
            .zip(a)
            .map(|(&x, &ai)| x as i128 * ai as i128)
            .sum()
    }
}

/// The triple of frequencies for degree `n`.
pub fn frequency_triple(n: u64) -> Result<FrequencyTriple> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::InvalidDegree(n));
    }
    let sq = 3 * n * n;
    let (a, b, c) = if n.is_multiple_of(2) {
        ((sq + 2 * n) / 4, (sq + 4 * n) / 4, (sq + 6 * n + 4) / 4)
    } else {
        ((sq + 1) / 4, (sq + 6 * n - 1) / 4, (sq + 6 * n).div_ceil(4))
    };
    debug_assert!(a < b && b < c);
    Ok(FrequencyTriple { n, a, b, c })
}

fn ensure_positive(freqs: &[u64]) -> Result<()> {
    if freqs.is_empty() || freqs.contains(&0) {
        return Err(Error::NonPositiveFrequency(freqs.to_vec()));
    }
    Ok(())
}

/// Tests the three resonance equalities for one index triple and returns the
/// signed kernel vector when one of them holds.
fn resonance_at(f: [u64; 3], i: u64, j: u64, k: u64) -> Option<[i64; 3]> {
    let (ia, jb, kc) = (
        i as u128 * f[0] as u128,
        j as u128 * f[1] as u128,
        k as u128 * f[2] as u128,
    );
    let (i, j, k) = (i as i64, j as i64, k as i64);
    if ia == jb + kc {
        Some([-i, j, k])
    } else if jb == ia + kc {
        Some([i, -j, k])
    } else if kc == ia + jb {
        Some([i, j, -k])
    } else {
        None
    }
}

/// First resonance with `i + j + k <= budget`, scanning total degree upwards
/// and `(i, j, k)` lexicographically inside each degree.
pub fn first_resonance(freqs: [u64; 3], budget: u64) -> Result<Option<DiophantineWitness>> {
    ensure_positive(&freqs)?;
    for r in 1..=budget {
        for i in 0..=r {
            for j in 0..=(r - i) {
                let k = r - i - j;
                if let Some(x) = resonance_at(freqs, i, j, k) {
                    return Ok(Some(DiophantineWitness::new(x.to_vec())));
                }
            }
        }
    }
    Ok(None)
}

/// `true` iff `freqs` is non-resonant up to total index `budget`.
pub fn check_property(freqs: [u64; 3], budget: u64) -> Result<bool> {
    Ok(first_resonance(freqs, budget)?.is_none())
}

/// Largest `N <= cap` for which [`check_property`] holds.
pub fn max_exactness_degree(freqs: [u64; 3], cap: u64) -> Result<u64> {
    Ok(match first_resonance(freqs, cap)? {
        Some(w) => w.l1 - 1,
        None => cap,
    })
}

fn binomial(n: u64, k: u64) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `floor(binom(n + d, d) / n) - 2`, clamped at zero.
pub fn siegel_bound(n: u64, d: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidDegree(n));
    }
    if d == 0 {
        return Err(Error::Empty("dimension"));
    }
    let m = binomial(n + d, d) / n as u128;
    Ok(u64::try_from(m.saturating_sub(2)).unwrap_or(u64::MAX))
}

/// Visits the nonzero non-negative `d`-tuples of total `r`, largest leading
/// coordinate first. Stops as soon as `visit` returns `Some`.
fn visit_compositions<T>(
    r: u64,
    buf: &mut [u64],
    pos: usize,
    visit: &mut impl FnMut(&[u64]) -> Option<T>,
) -> Option<T> {
    if pos + 1 == buf.len() {
        buf[pos] = r;
        return visit(buf);
    }
    for first in (0..=r).rev() {
        buf[pos] = first;
        if let Some(t) = visit_compositions(r - first, buf, pos + 1, visit) {
            return Some(t);
        }
    }
    None
}

/// Pigeonhole search for a small kernel vector of `x -> sum x_i a_i`.
///
/// Tuples `z >= 0` with `0 < |z| <= n` are visited by increasing total and the
/// first tuple reaching each image `F(z) = sum a_i z_i` is remembered. The
/// first repeated image gives `x = z_first - z_second`, sign-normalised so its
/// leading nonzero entry is positive. Requires `max(a) <= siegel_bound(n, d)`,
/// which guarantees a repeat exists.
pub fn find_small_solution(a: &[u64], n: u64) -> Result<DiophantineWitness> {
    ensure_positive(a)?;
    let bound = siegel_bound(n, a.len() as u64)?;
    let max = *a.iter().max().expect("non-empty");
    if max > bound {
        return Err(Error::BoundViolation { max, bound });
    }
    let mut seen: HashMap<u128, Vec<u64>> = HashMap::new();
    let mut buf = vec![0u64; a.len()];
    for r in 1..=n {
        let hit = visit_compositions(r, &mut buf, 0, &mut |z: &[u64]| {
            let image: u128 = z
                .iter()
                .zip(a)
                .map(|(&zi, &ai)| zi as u128 * ai as u128)
                .sum();
            match seen.get(&image) {
                Some(first) => Some(
                    first
                        .iter()
                        .zip(z)
                        .map(|(&p, &q)| p as i64 - q as i64)
                        .collect::<Vec<_>>(),
                ),
                None => {
                    seen.insert(image, z.to_vec());
                    None
                }
            }
        });
        if let Some(mut x) = hit {
            if x.iter().find(|&&v| v != 0).is_some_and(|&v| v < 0) {
                x.iter_mut().for_each(|v| *v = -*v);
            }
            return Ok(DiophantineWitness::new(x));
        }
    }
    unreachable!("pigeonhole guarantees a collision below the bound")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjectureReport {
    pub n: u64,
    pub holds: bool,
    /// Lexicographically first triple with maximum below `c_n` that is
    /// non-resonant up to `2n`.
    pub counterexample: Option<[u64; 3]>,
    /// Number of sorted triples examined.
    pub triples_checked: u64,
}

/// Exhaustively checks that every positive triple with maximum below `c_n`
/// resonates within total index `2n`.
///
/// The property is invariant under permutations, so only sorted triples
/// `a <= b <= c` are examined; the lexicographically first counterexample
/// over all ordered triples is always sorted, so nothing is lost.
pub fn verify_conjecture(n: u64) -> Result<ConjectureReport> {
    let triple = frequency_triple(n)?;
    let top = triple.c - 1;
    let budget = 2 * n;
    let required = (top as u128).pow(3) * binomial(budget + 3, 3);
    if required > CONJECTURE_CHECK_LIMIT {
        return Err(Error::SearchLimit {
            required,
            limit: CONJECTURE_CHECK_LIMIT,
        });
    }
    let mut checked = 0;
    for a in 1..=top {
        for b in a..=top {
            for c in b..=top {
                checked += 1;
                if check_property([a, b, c], budget)? {
                    return Ok(ConjectureReport {
                        n,
                        holds: false,
                        counterexample: Some([a, b, c]),
                        triples_checked: checked,
                    });
                }
            }
        }
    }
    Ok(ConjectureReport {
        n,
        holds: true,
        counterexample: None,
        triples_checked: checked,
    })
}

//! The Josephus survivor problem with step `q`, solved three ways, and the
//! ceiling iteration `x -> ⌈q·x/(q-1)⌉` behind its growth constant.
//!
//! Conventions: people are numbered `1..=n`, counting starts at person 1 and
//! the `q`-th person counted is eliminated. Counting resumes at the next
//! survivor.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::divisors::Limits;
use crate::error::{Error, Result};

/// Which algorithm produced a [`SurvivorResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// `J(m) = (J(m-1) + q) mod m`.
    Recurrence,
    /// Explicit elimination around a circle.
    Simulation,
    /// Read off the seed-1 ceiling iteration.
    OwFormula,
}

impl Algorithm {
    /// Stable lowercase name.
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Recurrence => "recurrence",
            Algorithm::Simulation => "simulation",
            Algorithm::OwFormula => "ow_formula",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The 1-indexed survivor of a circle of `n` with step `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SurvivorResult {
    /// Circle size.
    pub n: u64,
    /// Step.
    pub q: u64,
    /// Survivor position in `1..=n`.
    pub survivor: u64,
    /// How it was computed.
    pub algorithm: Algorithm,
}

/// Iterates of `x -> ⌈q·x/(q-1)⌉` from `seed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeilingIteration {
    /// Step.
    pub q: u64,
    /// First term.
    pub seed: u64,
    /// `terms[0] = seed`, `terms[i+1] = ⌈q·terms[i]/(q-1)⌉`.
    pub terms: Vec<BigUint>,
}

fn check_args(n: u64, q: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 1, got {n}"
        )));
    }
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "q must be at least 2, got {q}"
        )));
    }
    Ok(())
}

/// Classical `O(n)` recurrence.
pub fn survivor_recurrence(n: u64, q: u64) -> Result<SurvivorResult> {
    check_args(n, q)?;
    let mut j: u128 = 0;
    for m in 2..=u128::from(n) {
        j = (j + u128::from(q)) % m;
    }
    Ok(SurvivorResult {
        n,
        q,
        survivor: j as u64 + 1,
        algorithm: Algorithm::Recurrence,
    })
}

/// Eliminates people one by one around an explicit circle.
pub fn survivor_simulation(n: u64, q: u64, limits: &Limits) -> Result<SurvivorResult> {
    check_args(n, q)?;
    if n > limits.simulation_cap {
        return Err(Error::SimulationCapExceeded {
            n,
            cap: limits.simulation_cap,
        });
    }
    let n = n as usize;
    // next[i] is the person after i in the circle (0-indexed)
    let mut next: Vec<usize> = (1..=n).collect();
    next[n - 1] = 0;
    let mut prev = n - 1;
    let mut alive = n;
    // steps to advance before each elimination; q may be huge, only its
    // residue modulo the circle size matters
    while alive > 1 {
        let steps = ((q - 1) % alive as u64) as usize;
        for _ in 0..steps {
            prev = next[prev];
        }
        let victim = next[prev];
        next[prev] = next[victim];
        alive -= 1;
    }
    Ok(SurvivorResult {
        n: n as u64,
        q,
        survivor: next[prev] as u64 + 1,
        algorithm: Algorithm::Simulation,
    })
}

/// One step of the ceiling iteration, `⌈q·x/(q-1)⌉`, as
/// `(q·x + q - 2) div (q - 1)`.
fn ceiling_step(x: &BigUint, q: u64) -> BigUint {
    (x * q + (q - 2)) / (q - 1)
}

/// The first `count` iterates from `seed`.
pub fn ow_sequence(q: u64, seed: u64, count: usize) -> Result<CeilingIteration> {
    if q < 2 {
        return Err(Error::InvalidArgument(format!(
            "q must be at least 2, got {q}"
        )));
    }
    if seed == 0 || count == 0 {
        return Err(Error::InvalidArgument(
            "seed and count must be at least 1".into(),
        ));
    }
    let mut terms = Vec::with_capacity(count);
    terms.push(BigUint::from(seed));
    while terms.len() < count {
        let next = ceiling_step(terms.last().expect("non-empty"), q);
        terms.push(next);
    }
    Ok(CeilingIteration { q, seed, terms })
}

/// Survivor from the seed-1 ceiling iteration: with `D` the smallest iterate
/// exceeding `(q-1)·n`, the survivor is `q·n + 1 - D`.
pub fn survivor_via_ow(n: u64, q: u64) -> Result<SurvivorResult> {
    check_args(n, q)?;
    let (n128, q128) = (u128::from(n), u128::from(q));
    let bound = (q128 - 1) * n128;
    let mut d: u128 = 1;
    while d <= bound {
        d = (q128 * d + q128 - 2) / (q128 - 1);
    }
    Ok(SurvivorResult {
        n,
        q,
        survivor: (q128 * n128 + 1 - d) as u64,
        algorithm: Algorithm::OwFormula,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    /// Straightforward `Vec::remove` circle, independent of the linked-list
    /// simulation.
    fn naive_circle(n: u64, q: u64) -> u64 {
        let mut people: Vec<u64> = (1..=n).collect();
        let mut pos = 0usize;
        while people.len() > 1 {
            pos = (pos + (q as usize - 1)) % people.len();
            people.remove(pos);
        }
        people[0]
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(survivor_recurrence(1, 3).unwrap().survivor, 1);
        assert_eq!(survivor_recurrence(5, 3).unwrap().survivor, 4);
        assert_eq!(survivor_recurrence(41, 3).unwrap().survivor, 31);
    }

    #[test]
    fn simulation_examples() {
        let l = Limits::default();
        assert_eq!(survivor_simulation(2, 3, &l).unwrap().survivor, 2);
        assert_eq!(survivor_simulation(3, 3, &l).unwrap().survivor, 2);
        assert_eq!(survivor_simulation(1, 2, &l).unwrap().survivor, 1);
        assert_eq!(survivor_simulation(41, 3, &l).unwrap().survivor, 31);
        assert_eq!(survivor_simulation(5, 3, &l).unwrap().survivor, 4);
    }

    #[test]
    fn simulation_cap() {
        let l = Limits {
            simulation_cap: 10,
            ..Limits::default()
        };
        assert_eq!(
            survivor_simulation(11, 3, &l),
            Err(Error::SimulationCapExceeded { n: 11, cap: 10 })
        );
    }

    #[test]
    fn bad_arguments() {
        assert!(survivor_recurrence(0, 3).is_err());
        assert!(survivor_recurrence(3, 1).is_err());
        assert!(survivor_via_ow(3, 0).is_err());
        assert!(ow_sequence(1, 1, 3).is_err());
        assert!(ow_sequence(3, 0, 3).is_err());
    }

    #[test]
    fn ow_sequence_examples() {
        assert_eq!(
            ow_sequence(3, 2, 10).unwrap().terms,
            big(&[2, 3, 5, 8, 12, 18, 27, 41, 62, 93])
        );
        assert_eq!(ow_sequence(3, 1, 5).unwrap().terms, big(&[1, 2, 3, 5, 8]));
        assert_eq!(ow_sequence(2, 1, 5).unwrap().terms, big(&[1, 2, 4, 8, 16]));
    }

    #[test]
    fn ow_formula_examples() {
        assert_eq!(survivor_via_ow(5, 3).unwrap().survivor, 4);
        assert_eq!(survivor_via_ow(4, 3).unwrap().survivor, 1);
        assert_eq!(survivor_via_ow(1, 2).unwrap().survivor, 1);
    }

    #[test]
    fn all_agree_with_naive_circle() {
        let l = Limits::default();
        for q in 2..=7 {
            for n in 1..=300 {
                let want = naive_circle(n, q);
                assert_eq!(
                    survivor_recurrence(n, q).unwrap().survivor,
                    want,
                    "n={n} q={q}"
                );
                assert_eq!(
                    survivor_simulation(n, q, &l).unwrap().survivor,
                    want,
                    "n={n} q={q}"
                );
                assert_eq!(survivor_via_ow(n, q).unwrap().survivor, want, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn large_step_is_reduced() {
        let l = Limits::default();
        let q = 1_000_000_007;
        for n in 1..50 {
            assert_eq!(
                survivor_simulation(n, q, &l).unwrap().survivor,
                survivor_recurrence(n, q).unwrap().survivor
            );
        }
    }
}

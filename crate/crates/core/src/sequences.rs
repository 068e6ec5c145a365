//! The sequences `a_n` and `b_n` and the partial products `p_n`.
//!
//! ```text
//! a_0 = 4,  a_n = min { |d - p_n/d| > 1 : d | p_n },  p_n = a_0 · … · a_(n-1)
//! b_1 = 1,  b_n = ⌈(b_1 + … + b_(n-1)) / 2⌉
//! ```
//!
//! `a_n` can be produced three ways: from the divisor definition by trial
//! division ([`Path::Oracle`]), from the divisor definition on the factored
//! partial product ([`Path::Factored`]), or as `2^(b_n)` for `n ≥ 3`
//! ([`Path::Fast`]). The first two never consult `b_n`, which is what makes
//! [`verify_theorem`] a real check.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::constants::RationalInterval;
use crate::divisors::{delta_above, delta_above_factored, Factorization, Limits};
use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// The prefix `a_0, a_1, a_2` that precedes the power-of-two regime.
pub const A_PREFIX: [u64; 3] = [4, 3, 4];

/// How a sequence was (or should be) computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Path {
    /// Trial division on machine integers.
    Oracle,
    /// Divisor scan on the factored partial product.
    Factored,
    /// `a_n = 2^(b_n)` for `n ≥ 3`.
    Fast,
    /// Direct evaluation of the `b` recurrence.
    Recurrence,
}

impl Path {
    /// Stable lowercase name.
    pub fn as_str(self) -> &'static str {
        match self {
            Path::Oracle => "oracle",
            Path::Factored => "factored",
            Path::Fast => "fast",
            Path::Recurrence => "recurrence",
        }
    }

    /// Largest `n_max` each path handles comfortably with default limits.
    pub fn default_max(self) -> u64 {
        match self {
            Path::Oracle => 10,
            Path::Factored => 50,
            Path::Fast | Path::Recurrence => 200,
        }
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which sequence a report holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeqName {
    /// `a_n`, indexed from 0.
    A,
    /// `b_n`, indexed from 1.
    B,
}

impl SeqName {
    /// First index of the sequence.
    pub fn start_index(self) -> u64 {
        match self {
            SeqName::A => 0,
            SeqName::B => 1,
        }
    }
}

/// A sequence term. Powers of two are kept as their exponent because
/// `2^(b_n)` has `b_n + 1` bits and `b_n` grows like `(3/2)^n`.
#[derive(Debug, Clone, Eq)]
pub enum Term {
    /// An explicit value.
    Value(BigUint),
    /// `2^exponent`, not materialized.
    PowerOfTwo(BigUint),
}

impl Term {
    /// Number of bits of the value.
    pub fn bits(&self) -> BigUint {
        match self {
            Term::Value(v) => BigUint::from(v.bits()),
            Term::PowerOfTwo(e) => e + 1u32,
        }
    }

    /// The exponent if the value is a power of two.
    pub fn power_of_two_exponent(&self) -> Option<BigUint> {
        match self {
            Term::PowerOfTwo(e) => Some(e.clone()),
            Term::Value(v) => {
                let tz = v.trailing_zeros()?;
                (v.bits() == tz + 1).then(|| BigUint::from(tz))
            }
        }
    }

    /// The explicit value, refusing anything wider than `max_bits`.
    pub fn materialize(&self, max_bits: u64) -> Result<BigUint> {
        match self {
            Term::Value(v) => Ok(v.clone()),
            Term::PowerOfTwo(e) => match e.to_u64() {
                Some(e) if e < max_bits => Ok(BigUint::one() << e),
                _ => Err(Error::ResourceLimit {
                    what: "term bit length",
                    requested: (e + 1u32).to_string(),
                    cap: max_bits,
                }),
            },
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Term::Value(a), Term::Value(b)) => a == b,
            (Term::PowerOfTwo(a), Term::PowerOfTwo(b)) => a == b,
            (Term::PowerOfTwo(e), v @ Term::Value(_))
            | (v @ Term::Value(_), Term::PowerOfTwo(e)) => {
                v.power_of_two_exponent().as_ref() == Some(e)
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Value(v) => write!(f, "{v}"),
            Term::PowerOfTwo(e) => write!(f, "2^{e}"),
        }
    }
}

/// Terms of `a` or `b` plus the path that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceReport {
    /// Which sequence.
    pub name: SeqName,
    /// Index of `terms[0]`.
    pub start_index: u64,
    /// The terms, in index order. Never empty.
    pub terms: Vec<Term>,
    /// Computation path.
    pub path: Path,
}

impl SequenceReport {
    /// `(index, term)` pairs.
    pub fn indexed(&self) -> impl Iterator<Item = (u64, &Term)> {
        (self.start_index..).zip(self.terms.iter())
    }

    /// The term with the given sequence index.
    pub fn term(&self, index: u64) -> Option<&Term> {
        let offset = index.checked_sub(self.start_index)?;
        self.terms.get(usize::try_from(offset).ok()?)
    }
}

/// `p_n` together with the running sum of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialProductState {
    /// Index `n ≥ 1`.
    pub n: u64,
    /// Exact factorization of `p_n`.
    pub factorization: Factorization,
    /// `b_1 + … + b_(n-1)`.
    pub running_b_sum: BigUint,
}

/// Raw `b_1..=b_{n_max}`.
fn b_terms(n_max: u64) -> Vec<BigUint> {
    let mut terms = Vec::with_capacity(n_max as usize);
    let mut sum = BigUint::zero();
    for n in 1..=n_max {
        let b = if n == 1 {
            BigUint::one()
        } else {
            (&sum + 1u32) >> 1u32
        };
        sum += &b;
        terms.push(b);
    }
    terms
}

/// `b_1..=b_{n_max}` from the recurrence.
pub fn b_seq(n_max: u64) -> Result<SequenceReport> {
    if n_max == 0 {
        return Err(Error::InvalidArgument(
            "n_max must be at least 1".to_string(),
        ));
    }
    Ok(SequenceReport {
        name: SeqName::B,
        start_index: 1,
        terms: b_terms(n_max).into_iter().map(Term::Value).collect(),
        path: Path::Recurrence,
    })
}

/// Runs the divisor definition for `a_0..a_(count-1)` and returns the terms
/// together with `p_count`.
fn exact_walk(count: u64, path: Path, limits: &Limits) -> Result<(Vec<BigUint>, Factorization)> {
    let mut terms = Vec::with_capacity(count as usize);
    let mut product = Factorization::one();
    let one = BigUint::one();
    for n in 0..count {
        let a = if n == 0 {
            BigUint::from(A_PREFIX[0])
        } else {
            match path {
                Path::Oracle => {
                    let p = product.value();
                    let small = p
                        .to_u64()
                        .filter(|&v| v <= limits.oracle_bound)
                        .ok_or_else(|| Error::OracleBoundExceeded {
                            value: p.to_string(),
                            bound: limits.oracle_bound,
                        })?;
                    delta_above(small, 1, limits)?.difference
                }
                Path::Factored => {
                    let e = product.exponent_of(2);
                    if e > limits.max_term_bits {
                        return Err(Error::ResourceLimit {
                            what: "partial product bit length",
                            requested: e.to_string(),
                            cap: limits.max_term_bits,
                        });
                    }
                    delta_above_factored(&product, &one, limits)?.difference
                }
                Path::Fast | Path::Recurrence => {
                    return Err(Error::InvalidArgument(format!(
                        "{path} is not an exact divisor path"
                    )))
                }
            }
        };
        product = product.mul(&Factorization::of_big(&a, limits)?);
        terms.push(a);
    }
    Ok((terms, product))
}

/// `a_0..=a_{n_max}` along the chosen path.
pub fn a_seq(n_max: u64, path: Path, limits: &Limits) -> Result<SequenceReport> {
    let terms = match path {
        Path::Oracle | Path::Factored => exact_walk(n_max + 1, path, limits)?
            .0
            .into_iter()
            .map(Term::Value)
            .collect(),
        Path::Fast => {
            let b = if n_max >= 3 {
                b_terms(n_max)
            } else {
                Vec::new()
            };
            (0..=n_max)
                .map(|n| match n {
                    0..=2 => Term::Value(BigUint::from(A_PREFIX[n as usize])),
                    _ => Term::PowerOfTwo(b[n as usize - 1].clone()),
                })
                .collect()
        }
        Path::Recurrence => {
            return Err(Error::InvalidArgument(
                "a is generated by the oracle, factored or fast path".to_string(),
            ))
        }
    };
    Ok(SequenceReport {
        name: SeqName::A,
        start_index: 0,
        terms,
        path,
    })
}

/// Exact factorization of `p_n`.
pub fn partial_product(n: u64, path: Path, limits: &Limits) -> Result<PartialProductState> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".to_string()));
    }
    let running_b_sum: BigUint = b_terms(n - 1).iter().sum();
    let factorization = match path {
        Path::Oracle | Path::Factored => exact_walk(n, path, limits)?.1,
        Path::Fast => match n {
            1 => Factorization::power_of_two(2),
            2 => Factorization::new(alloc::vec![(2, 2), (3, 1)])?,
            // a_0·a_1·a_2 = 2^4·3, then each a_k = 2^(b_k) for k ≥ 3, which
            // totals 2^(b_1 + … + b_(n-1) + 2)·3
            _ => {
                let e = &running_b_sum + 2u32;
                let e = e.to_u64().ok_or_else(|| Error::ResourceLimit {
                    what: "partial product exponent",
                    requested: e.to_string(),
                    cap: u64::MAX,
                })?;
                Factorization::new(alloc::vec![(2, e), (3, 1)])?
            }
        },
        Path::Recurrence => {
            return Err(Error::InvalidArgument(
                "partial products come from the oracle, factored or fast path".to_string(),
            ))
        }
    };
    Ok(PartialProductState {
        n,
        factorization,
        running_b_sum,
    })
}

fn describe_term(v: &BigUint) -> String {
    match Term::Value(v.clone()).power_of_two_exponent() {
        Some(e) => format!("2^{e}"),
        None if v.bits() <= 256 => v.to_string(),
        None => format!("<{}-bit integer>", v.bits()),
    }
}

/// Recomputes `a_n` from the divisor definition along `check_path` and
/// compares it with `2^(b_n)` for every `3 ≤ n ≤ n_max`.
pub fn verify_theorem(n_max: u64, check_path: Path, limits: &Limits) -> Result<VerificationReport> {
    if n_max < 3 {
        return Err(Error::InvalidArgument(
            "n_max must be at least 3".to_string(),
        ));
    }
    if !matches!(check_path, Path::Oracle | Path::Factored) {
        return Err(Error::InvalidArgument(format!(
            "check path must be oracle or factored, got {check_path}"
        )));
    }
    let (a, _) = exact_walk(n_max + 1, check_path, limits)?;
    let b = b_terms(n_max);
    let mut report = VerificationReport::new(format!("a_n = 2^(b_n) via {check_path}"));
    for n in 3..=n_max {
        let computed = &a[n as usize];
        let exponent = &b[n as usize - 1];
        let ok = Term::Value(computed.clone()) == Term::PowerOfTwo(exponent.clone());
        report.record(n, ok, || (format!("2^{exponent}"), describe_term(computed)));
    }
    Ok(report)
}

/// `⌈x·(3/2)^n - 1/2⌉` at both endpoints of `c_enc`; the common value.
pub fn b_closed_form(n: u64, c_enc: &RationalInterval) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".to_string()));
    }
    let n32 =
        u32::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} is too large")))?;
    let growth = BigRational::new(BigInt::from(3u32).pow(n32), BigInt::from(2u32).pow(n32));
    let half = BigRational::new(BigInt::one(), BigInt::from(2u32));
    let eval = |x: &BigRational| (x * &growth - &half).ceil().to_integer();
    let lo = eval(c_enc.lo());
    let hi = eval(c_enc.hi());
    if lo != hi {
        return Err(Error::InsufficientPrecision { n });
    }
    if !lo.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "closed form gives non-positive value {lo} at n = {n}"
        )));
    }
    Ok(lo.to_biguint().expect("positive"))
}

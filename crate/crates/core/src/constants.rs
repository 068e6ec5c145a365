//! Certified rational enclosures of `c` and `K(3)`.
//!
//! `c` is bracketed by inverting `b_n = ⌈c·(3/2)^n - 1/2⌉`: each term confines
//! `c` to `((b_n - 1/2)(2/3)^n, (b_n + 1/2)(2/3)^n]` and the enclosure is the
//! intersection over `n`. `K(3)` is the growth constant of the seed-2 ceiling
//! iteration `e_1 = 2`, `e_(i+1) = ⌈3e_i/2⌉`, which satisfies
//! `e_n (2/3)^n ≤ K(3) ≤ (e_n + 2)(2/3)^n`.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::josephus::ow_sequence;
use crate::sequences::{b_seq, Term};

/// Places scanned when a relation check has a degenerate (zero-width) hull.
const MAX_RELATION_PLACES: usize = 10_000;

/// An exact interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RationalInterval {
    /// `[lo, hi]`; fails when `lo > hi`.
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument(format!(
                "interval lower end {lo} exceeds upper end {hi}"
            )));
        }
        Ok(RationalInterval { lo, hi })
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: BigRational) -> Self {
        RationalInterval {
            lo: x.clone(),
            hi: x,
        }
    }

    /// Lower end.
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    /// Upper end.
    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    /// `hi - lo`.
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Closed membership test.
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &RationalInterval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }

    /// Closed intersection test.
    pub fn intersects(&self, other: &RationalInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Smallest interval containing both.
    pub fn hull(&self, other: &RationalInterval) -> RationalInterval {
        RationalInterval {
            lo: self.lo.clone().min(other.lo.clone()),
            hi: self.hi.clone().max(other.hi.clone()),
        }
    }

    /// `{k·x : x ∈ self}` for `k > 0`.
    pub fn scale(&self, k: &BigRational) -> Result<RationalInterval> {
        if !k.is_positive() {
            return Err(Error::InvalidArgument(
                "scale factor must be positive".to_string(),
            ));
        }
        Ok(RationalInterval {
            lo: &self.lo * k,
            hi: &self.hi * k,
        })
    }
}

impl fmt::Display for RationalInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The longest decimal prefix shared by every member of an interval.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitCertificate {
    /// Integer part, then `.` and `certified_places` digits when there are
    /// any. Empty when even the integer parts of the endpoints differ.
    pub decimal_prefix: String,
    /// Number of certified decimal places.
    pub certified_places: usize,
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Encloses `c` using `b_1..=b_{n_terms}`.
///
/// The lower end is excluded by every constraint; the returned closed
/// interval keeps it as a bound.
pub fn c_enclosure(n_terms: u64) -> Result<RationalInterval> {
    let b = b_seq(n_terms)?;
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    let mut two_pow = BigUint::one();
    let mut three_pow = BigUint::one();
    for (n, term) in b.indexed() {
        let b_n = match term {
            Term::Value(v) => v,
            Term::PowerOfTwo(_) => unreachable!("b terms are explicit"),
        };
        two_pow <<= 1u32;
        three_pow *= 3u32;
        // (b ∓ 1/2)(2/3)^n = (2b ∓ 1)·2^(n-1) / 3^n
        let scale = &two_pow >> 1u32;
        let twice = b_n << 1u32;
        let l = ratio((&twice - 1u32) * &scale, three_pow.clone());
        let h = ratio((&twice + 1u32) * &scale, three_pow.clone());
        if lo.as_ref().is_none_or(|cur| &l > cur) {
            lo = Some(l);
        }
        if hi.as_ref().is_none_or(|cur| &h < cur) {
            hi = Some(h);
        }
        if lo >= hi {
            return Err(Error::EmptyIntersection { n });
        }
    }
    RationalInterval::new(lo.expect("n_terms ≥ 1"), hi.expect("n_terms ≥ 1"))
}

/// Encloses `K(3)` from the `n_terms`-th iterate of the seed-2 ceiling
/// iteration.
pub fn k3_enclosure(n_terms: u64) -> Result<RationalInterval> {
    if n_terms == 0 {
        return Err(Error::InvalidArgument(
            "n_terms must be at least 1".to_string(),
        ));
    }
    let count = usize::try_from(n_terms)
        .map_err(|_| Error::InvalidArgument("n_terms too large".to_string()))?;
    let iter = ow_sequence(3, 2, count)?;
    let e_n = iter.terms.last().expect("count ≥ 1");
    let n = u32::try_from(n_terms)
        .map_err(|_| Error::InvalidArgument("n_terms too large".to_string()))?;
    let two_pow = BigUint::from(2u32).pow(n);
    let three_pow = BigUint::from(3u32).pow(n);
    RationalInterval::new(
        ratio(e_n * &two_pow, three_pow.clone()),
        ratio((e_n + 2u32) * &two_pow, three_pow),
    )
}

/// Outcome of comparing `c` with `(2/9)·K(3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationReport {
    /// Enclosure of `c`.
    pub c_interval: RationalInterval,
    /// Enclosure of `(2/9)·K(3)`.
    pub k3_scaled_interval: RationalInterval,
    /// Whether the two enclosures share a point.
    pub overlap: bool,
    /// Decimal places on which every member of both enclosures agrees.
    pub agreeing_places: usize,
}

/// Compares `c_enclosure(n_terms)` with `(2/9)·k3_enclosure(n_terms)`.
pub fn relation_check(n_terms: u64) -> Result<RelationReport> {
    let c_interval = c_enclosure(n_terms)?;
    let two_ninths = BigRational::new(BigInt::from(2u32), BigInt::from(9u32));
    let k3_scaled_interval = k3_enclosure(n_terms)?.scale(&two_ninths)?;
    // the lower end of the c enclosure is excluded
    let overlap =
        k3_scaled_interval.hi() > c_interval.lo() && k3_scaled_interval.lo() <= c_interval.hi();
    let hull = c_interval.hull(&k3_scaled_interval);
    let agreeing_places = render_digits(&hull, MAX_RELATION_PLACES)?.certified_places;
    Ok(RelationReport {
        c_interval,
        k3_scaled_interval,
        overlap,
        agreeing_places,
    })
}

/// Longest common truncated decimal prefix of the endpoints, at most
/// `max_places` places.
pub fn render_digits(iv: &RationalInterval, max_places: usize) -> Result<DigitCertificate> {
    if iv.lo().is_negative() {
        return Err(Error::InvalidArgument(
            "digit certificates need a nonnegative interval".to_string(),
        ));
    }
    let split = |x: &BigRational| {
        let num = x.numer().to_biguint().expect("nonnegative");
        let den = x.denom().to_biguint().expect("positive");
        let (int, rem) = num.div_rem(&den);
        (int, rem, den)
    };
    let (lo_int, mut lo_rem, lo_den) = split(iv.lo());
    let (hi_int, mut hi_rem, hi_den) = split(iv.hi());
    if lo_int != hi_int {
        return Ok(DigitCertificate {
            decimal_prefix: String::new(),
            certified_places: 0,
        });
    }
    let mut digits = String::new();
    while digits.len() < max_places {
        let (ld, lr) = (lo_rem * 10u32).div_rem(&lo_den);
        let (hd, hr) = (hi_rem * 10u32).div_rem(&hi_den);
        if ld != hd {
            break;
        }
        let d = u8::try_from(&ld).expect("decimal digit");
        digits.push(char::from(b'0' + d));
        lo_rem = lr;
        hi_rem = hr;
    }
    let certified_places = digits.len();
    let decimal_prefix = if digits.is_empty() {
        lo_int.to_string()
    } else {
        format!("{lo_int}.{digits}")
    };
    Ok(DigitCertificate {
        decimal_prefix,
        certified_places,
    })
}

/// `(2/3)^n` as an exact rational.
pub fn two_thirds_pow(n: u32) -> BigRational {
    BigRational::new(BigInt::from(2u32).pow(n), BigInt::from(3u32).pow(n))
}

//! Exact arithmetic for the divisor-difference sequence `a_n`, its exponent
//! sequence `b_n`, the Josephus survivor problem, and certified rational
//! enclosures of the growth constants `c` and `K(3)`.
//!
//! The crate is `no_std` and only needs `alloc`. Everything is a pure function
//! of its inputs; no floating point enters any result.

#![cfg_attr(not(test), no_std)]
#![deny(missing_docs)]

extern crate alloc;

pub mod constants;
pub mod divisors;
pub mod error;
pub mod josephus;
pub mod report;
pub mod sequences;

pub use constants::{
    c_enclosure, k3_enclosure, relation_check, render_digits, two_thirds_pow, DigitCertificate,
    RationalInterval, RelationReport,
};
pub use divisors::{
    delta, delta_above, delta_above_factored, delta_factored, delta_pair, delta_pair_factored,
    divisor_count, divisor_list, divisor_list_factored, middle_pair_3x2k,
    verify_divisor_count_3x2k, verify_middle_pair_3x2k, DivisorPair, Factorization, Limits,
};
pub use error::{Error, Result};
pub use josephus::{
    ow_sequence, survivor_recurrence, survivor_simulation, survivor_via_ow, Algorithm,
    CeilingIteration, SurvivorResult,
};
pub use report::{CheckEntry, Counterexample, VerificationReport};
pub use sequences::{
    a_seq, b_closed_form, b_seq, partial_product, verify_theorem, PartialProductState, Path,
    SeqName, SequenceReport, Term,
};

//! Integer arguments: plain decimals or products of powers like `3*2^40`.

use divseq_core::{Factorization, Limits};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::CliError;

/// A parsed positive integer, kept small when it fits the oracle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Small(u64),
    Factored(Factorization),
}

impl Target {
    pub fn parse(text: &str, limits: &Limits) -> Result<Target, CliError> {
        let text = text.trim();
        if text.contains(['*', '^']) {
            let mut f = Factorization::one();
            for token in text.split('*') {
                let (base, exp) = match token.split_once('^') {
                    Some((b, e)) => (b.trim(), e.trim()),
                    None => (token.trim(), "1"),
                };
                let base: u64 = base
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad base {base:?} in {text:?}")))?;
                let exp: u64 = exp
                    .parse()
                    .map_err(|_| CliError::usage(format!("bad exponent {exp:?} in {text:?}")))?;
                if base == 0 {
                    return Err(CliError::usage("integer must be positive"));
                }
                let raised: Vec<(u64, u64)> = Factorization::of(base)?
                    .factors()
                    .iter()
                    .map(|&(p, e)| (p, e * exp))
                    .filter(|&(_, e)| e > 0)
                    .collect();
                f = f.mul(&Factorization::new(raised)?);
            }
            return Ok(Target::Factored(f));
        }
        let value: BigUint = text
            .parse()
            .map_err(|_| CliError::usage(format!("expected a positive integer, got {text:?}")))?;
        match value.to_u64() {
            Some(0) => Err(CliError::usage("integer must be positive")),
            Some(v) if v <= limits.oracle_bound => Ok(Target::Small(v)),
            _ => Ok(Target::Factored(Factorization::of_big(&value, limits)?)),
        }
    }

    pub fn factorization(&self) -> Result<Factorization, CliError> {
        match self {
            Target::Small(v) => Ok(Factorization::of(*v)?),
            Target::Factored(f) => Ok(f.clone()),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Target::Small(v) => v.to_string(),
            Target::Factored(f) => f.to_string(),
        }
    }
}

//! Hirzebruch-Jung (minus-sign) continued fractions
//!
//! ```text
//! [[b_1, ..., b_s]] = b_1 - 1/(b_2 - 1/(... - 1/b_s)),   every b_j >= 2
//! ```
//!
//! Two independent routes compute the same expansion:
//!
//! * [`r_sequence`] / [`hj_expand`] run the integer recurrence
//!   `r_j = ceil(r_{j-2} / r_{j-1}) * r_{j-1} - r_{j-2}`, seeded by the
//!   numerator and denominator, and stop as soon as `r_{j-1} | r_{j-2}`.
//!   Partial quotients are `b_j = r_{j-2} / r_{j-1}` rounded up.
//! * [`beta_sequence`] iterates `beta_{j+1} = 1 / (ceil(beta_j) - beta_j)`
//!   in exact rational arithmetic and stops at the first integer.
//!
//! They agree term by term: `beta_j = r_{j-1} / r_j`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = BigRational;

/// The partial quotients `b_1, ..., b_s` of a Hirzebruch-Jung continued
/// fraction. The empty expansion encodes a smooth cone.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HJExpansion(Vec<BigInt>);

impl HJExpansion {
    /// Fails if any entry is below 2.
    pub fn new(entries: Vec<BigInt>) -> Result<HJExpansion> {
        let two = BigInt::from(2);
        if let Some(bad) = entries.iter().find(|b| **b < two) {
            return Err(Error::EntryBelowTwo(bad.clone()));
        }
        Ok(HJExpansion(entries))
    }

    pub fn empty() -> HJExpansion {
        HJExpansion(Vec::new())
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `[[b_{j+1}, ..., b_s]]`, the expansion left after dropping `j` terms.
    pub fn tail(&self, j: usize) -> HJExpansion {
        HJExpansion(self.0[j.min(self.0.len())..].to_vec())
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }
}

impl fmt::Display for HJExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("]]")
    }
}

/// The integer sequence `r_{-1}, r_0, ..., r_{s-1}`. Storage index `i`
/// holds `r_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RSequence(Vec<BigInt>);

impl RSequence {
    pub fn terms(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `b_j = ceil(r_{j-2} / r_{j-1})` for `j = 1..=s`.
    pub fn partial_quotients(&self) -> Vec<BigInt> {
        self.0
            .windows(2)
            .map(|w| ceil_div(&w[0], &w[1]))
            .collect()
    }

    /// `beta_j = r_{j-1} / r_j` for `j = 0..s`.
    pub fn betas(&self) -> Vec<Rational> {
        self.0
            .windows(2)
            .map(|w| Rational::new(w[0].clone(), w[1].clone()))
            .collect()
    }
}

/// `ceil(a / b)` for positive `a`, `b`, in integer arithmetic.
pub(crate) fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    debug_assert!(a.is_positive() && b.is_positive());
    (a + b - 1u32) / b
}

fn check_fraction(num: &BigInt, den: &BigInt) -> Result<()> {
    if !den.is_positive() {
        return Err(Error::NonPositiveDenominator(den.clone()));
    }
    if num <= den {
        return Err(Error::FractionNotAboveOne {
            num: num.clone(),
            den: den.clone(),
        });
    }
    Ok(())
}

/// Runs the integer recurrence from `r_{-1} = num`, `r_0 = den` until the
/// last term divides its predecessor. Unreduced input is accepted; the
/// terms then carry the common factor.
pub fn r_sequence(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<RSequence> {
    let (num, den) = (num.into(), den.into());
    check_fraction(&num, &den)?;
    let mut r = vec![num, den];
    loop {
        let (prev, last) = (&r[r.len() - 2], &r[r.len() - 1]);
        if prev.is_multiple_of(last) {
            break;
        }
        let next = ceil_div(prev, last) * last - prev;
        r.push(next);
    }
    Ok(RSequence(r))
}

/// Hirzebruch-Jung expansion of `num / den > 1`, computed with integers only.
pub fn hj_expand(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<HJExpansion> {
    let r = r_sequence(num, den)?;
    Ok(HJExpansion(r.partial_quotients()))
}

/// `beta_0, ..., beta_{s-1}` by exact rational iteration, stopping at the
/// first integer term.
pub fn beta_sequence(beta0: &Rational) -> Result<Vec<Rational>> {
    if *beta0 <= Rational::one() {
        return Err(Error::FractionNotAboveOne {
            num: beta0.numer().clone(),
            den: beta0.denom().clone(),
        });
    }
    let mut out = vec![beta0.clone()];
    loop {
        let beta = out.last().expect("nonempty");
        if beta.is_integer() {
            break;
        }
        let next = (beta.ceil() - beta).recip();
        out.push(next);
    }
    Ok(out)
}

/// Evaluates `[[b_1, ..., b_s]]` right to left in exact arithmetic.
pub fn hj_eval(exp: &HJExpansion) -> Result<Rational> {
    let mut entries = exp.entries().iter().rev();
    let last = entries.next().ok_or(Error::EmptyExpansion)?;
    let mut acc = Rational::from_integer(last.clone());
    for b in entries {
        if acc.is_zero() {
            return Err(Error::InvariantViolation(
                "zero denominator while evaluating continued fraction".into(),
            ));
        }
        acc = Rational::from_integer(b.clone()) - acc.recip();
    }
    Ok(acc)
}

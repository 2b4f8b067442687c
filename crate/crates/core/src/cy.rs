//! Hodge data of Calabi-Yau threefolds and fourfolds and their Poincare polynomials.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use thiserror::Error;

use crate::polyroot::IntPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyError {
    #[error("unknown filter predicate {0:?} (expected self-mirror, chi-zero or h11-eq-h31)")]
    UnknownPredicate(String),
    #[error("predicate {predicate} does not apply to {kind} records")]
    PredicateKindMismatch { predicate: Predicate, kind: &'static str },
}

/// Hodge numbers `(h11, h21)` of a threefold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HodgeCY3 {
    pub h11: u64,
    pub h21: u64,
}

/// Hodge numbers `(h11, h21, h31)` of a fourfold; `h22` is derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HodgeCY4 {
    pub h11: u64,
    pub h21: u64,
    pub h31: u64,
}

impl HodgeCY3 {
    pub fn new(h11: u64, h21: u64) -> Self {
        Self { h11, h21 }
    }

    /// The mirror pair `(h21, h11)`.
    pub fn mirror(self) -> Self {
        Self { h11: self.h21, h21: self.h11 }
    }
}

impl HodgeCY4 {
    pub fn new(h11: u64, h21: u64, h31: u64) -> Self {
        Self { h11, h21, h31 }
    }

    /// `h22 = 44 + 4 h11 - 2 h21 + 4 h31`.
    pub fn h22(&self) -> i128 {
        44 + 4 * self.h11 as i128 - 2 * self.h21 as i128 + 4 * self.h31 as i128
    }

    /// Middle Betti number `b4 = 2 + 2 h31 + h22 = 46 + 4 h11 - 2 h21 + 6 h31`.
    pub fn b4(&self) -> i128 {
        46 + 4 * self.h11 as i128 - 2 * self.h21 as i128 + 6 * self.h31 as i128
    }

    /// Genuine geometries have `b4 >= 0`; violations are reported, not rejected.
    pub fn b4_is_admissible(&self) -> bool {
        self.b4() >= 0
    }
}

impl fmt::Display for HodgeCY3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.h11, self.h21)
    }
}

impl fmt::Display for HodgeCY4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.h11, self.h21, self.h31)
    }
}

/// `1 + h11 t^2 + (2 + 2 h21) t^3 + h11 t^4 + t^6`.
pub fn poincare_cy3(h: &HodgeCY3) -> IntPolynomial {
    let h11 = BigInt::from(h.h11);
    let b3 = BigInt::from(2) + BigInt::from(2) * BigInt::from(h.h21);
    IntPolynomial::new(vec![
        BigInt::from(1),
        BigInt::from(0),
        h11.clone(),
        b3,
        h11,
        BigInt::from(0),
        BigInt::from(1),
    ])
}

/// `1 + h11 t^2 + 2 h21 t^3 + b4 t^4 + 2 h21 t^5 + h11 t^6 + t^8`.
pub fn poincare_cy4(h: &HodgeCY4) -> IntPolynomial {
    let h11 = BigInt::from(h.h11);
    let b3 = BigInt::from(2) * BigInt::from(h.h21);
    IntPolynomial::new(vec![
        BigInt::from(1),
        BigInt::from(0),
        h11.clone(),
        b3.clone(),
        BigInt::from(h.b4()),
        b3,
        h11,
        BigInt::from(0),
        BigInt::from(1),
    ])
}

/// `chi = 2 (h11 - h21)`.
pub fn euler_cy3(h: &HodgeCY3) -> i128 {
    2 * (h.h11 as i128 - h.h21 as i128)
}

/// `chi = 48 + 6 (h11 - h21 + h31)`.
pub fn euler_cy4(h: &HodgeCY4) -> i128 {
    48 + 6 * (h.h11 as i128 - h.h21 as i128 + h.h31 as i128)
}

/// Sub-population filters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    /// Threefolds with `h11 == h21` (equivalently `chi == 0`).
    Cy3SelfMirror,
    /// Fourfolds with vanishing Euler number.
    Cy4ChiZero,
    /// Fourfolds with `h11 == h31`.
    Cy4H11EqH31,
}

impl Predicate {
    /// Record kind the predicate applies to, matching [`Filterable::KIND`].
    pub fn kind(self) -> &'static str {
        match self {
            Predicate::Cy3SelfMirror => "cy3",
            Predicate::Cy4ChiZero | Predicate::Cy4H11EqH31 => "cy4",
        }
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Predicate::Cy3SelfMirror => "cy3_self_mirror",
            Predicate::Cy4ChiZero => "cy4_chi_zero",
            Predicate::Cy4H11EqH31 => "cy4_h11_eq_h31",
        })
    }
}

impl FromStr for Predicate {
    type Err = CyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "cy3_self_mirror" | "self_mirror" => Ok(Predicate::Cy3SelfMirror),
            "cy4_chi_zero" | "chi_zero" => Ok(Predicate::Cy4ChiZero),
            "cy4_h11_eq_h31" | "h11_eq_h31" => Ok(Predicate::Cy4H11EqH31),
            _ => Err(CyError::UnknownPredicate(s.to_string())),
        }
    }
}

/// Records a predicate can be applied to.
pub trait Filterable {
    const KIND: &'static str;

    fn satisfies(&self, predicate: Predicate) -> Option<bool>;
}

impl Filterable for HodgeCY3 {
    const KIND: &'static str = "cy3";

    fn satisfies(&self, predicate: Predicate) -> Option<bool> {
        match predicate {
            Predicate::Cy3SelfMirror => Some(self.h11 == self.h21),
            _ => None,
        }
    }
}

impl Filterable for HodgeCY4 {
    const KIND: &'static str = "cy4";

    fn satisfies(&self, predicate: Predicate) -> Option<bool> {
        match predicate {
            Predicate::Cy4ChiZero => Some(euler_cy4(self) == 0),
            Predicate::Cy4H11EqH31 => Some(self.h11 == self.h31),
            Predicate::Cy3SelfMirror => None,
        }
    }
}

/// Order-preserving filter. A predicate of the wrong kind is an error even
/// for empty input.
pub fn filter<R: Filterable + Clone>(records: &[R], predicate: Predicate) -> Result<Vec<R>, CyError> {
    if predicate.kind() != R::KIND {
        return Err(CyError::PredicateKindMismatch { predicate, kind: R::KIND });
    }
    let mut out = Vec::new();
    for r in records {
        match r.satisfies(predicate) {
            Some(true) => out.push(r.clone()),
            Some(false) => {}
            None => return Err(CyError::PredicateKindMismatch { predicate, kind: R::KIND }),
        }
    }
    Ok(out)
}

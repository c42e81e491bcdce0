//! Monomials, multidegrees, scalars and sparse polynomials of the free
//! (planar or commutative) nonassociative algebra.

mod monomial;
mod multidegree;
mod polynomial;
mod scalar;

pub use monomial::{enumerate_monomials, monomial_count, Monomial};
pub use multidegree::Multidegree;
pub use polynomial::{linear_combine, Polynomial};
pub use scalar::{is_prime, parse_rational, Field, FieldOps, PrimeField, Rationals, Scalar};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ambient free algebra: planar binary trees, or trees modulo child swaps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Planar,
    Commutative,
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "planar" => Ok(Flavor::Planar),
            "commutative" => Ok(Flavor::Commutative),
            other => Err(Error::Invalid(format!("unknown flavor `{other}`"))),
        }
    }
}

/// Free-algebra product of two monomials. Both must be canonical for `flavor`;
/// a commutative factor that is not canonical is reported as a flavor mismatch.
pub fn mul_monomial(a: &Monomial, b: &Monomial, flavor: Flavor) -> Result<Monomial> {
    if flavor == Flavor::Commutative
        && (a.canonical_commutative() != *a || b.canonical_commutative() != *b)
    {
        return Err(Error::FlavorMismatch(
            "planar monomial used as a commutative factor".into(),
        ));
    }
    Ok(Monomial::join(a, b, flavor))
}

/// Leaf counts per variable.
pub fn multidegree_of(m: &Monomial) -> Multidegree {
    m.multidegree()
}

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use super::{Field, Flavor, Monomial, Multidegree, Scalar};
use crate::error::{Error, Result};

/// Sparse polynomial of the free algebra: canonical monomial → nonzero scalar.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    flavor: Flavor,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(flavor: Flavor, field: Field) -> Self {
        Polynomial {
            flavor,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial, flavor: Flavor, field: Field) -> Self {
        let mut p = Self::zero(flavor, field);
        p.terms.insert(m.canonical(flavor), field.one());
        p
    }

    pub fn variable(var: u8, flavor: Flavor, field: Field) -> Self {
        Self::from_monomial(Monomial::leaf(var), flavor, field)
    }

    /// Builds from arbitrary terms, canonicalizing and merging.
    pub fn from_terms(
        flavor: Flavor,
        field: Field,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self> {
        let mut p = Self::zero(flavor, field);
        for (m, c) in terms {
            p.add_term(m.canonical(flavor), &c)?;
        }
        Ok(p)
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .get(&m.canonical(self.flavor))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Adds `c * m`; `m` must already be canonical.
    fn add_term(&mut self, m: Monomial, c: &Scalar) -> Result<()> {
        if c.field() != self.field {
            return Err(Error::FieldMismatch(format!(
                "{} coefficient in {} polynomial",
                c.field(),
                self.field
            )));
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(c)?;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.flavor != other.flavor {
            return Err(Error::FlavorMismatch(format!(
                "{:?} vs {:?}",
                self.flavor, other.flavor
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    /// `self + c * other`
    pub fn add_scaled(&self, c: &Scalar, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, a) in &other.terms {
            out.add_term(m.clone(), &a.mul(c)?)?;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add_scaled(&self.field.one(), other)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add_scaled(&self.field.from_i64(-1), other)
    }

    pub fn scale(&self, c: &Scalar) -> Result<Polynomial> {
        Self::zero(self.flavor, self.field).add_scaled(c, self)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    /// Free-algebra product, bilinear over terms.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.flavor, self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(Monomial::join(a, b, self.flavor), &ca.mul(cb)?)?;
            }
        }
        Ok(out)
    }

    /// Terms grouped by multidegree.
    pub fn components(&self) -> BTreeMap<Multidegree, Polynomial> {
        let mut out: BTreeMap<Multidegree, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.multidegree())
                .or_insert_with(|| Self::zero(self.flavor, self.field))
                .terms
                .insert(m.clone(), c.clone());
        }
        out
    }

    /// The common multidegree of all terms, if there is one.
    pub fn multidegree(&self) -> Option<Multidegree> {
        let mut it = self.terms.keys().map(|m| m.multidegree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.is_zero() || self.multidegree().is_some()
    }

    pub fn max_variable(&self) -> u8 {
        self.terms
            .keys()
            .flat_map(|m| m.leaves())
            .max()
            .unwrap_or(0)
    }

    /// Image in another field of the same flavor.
    pub fn to_field(&self, field: Field) -> Result<Polynomial> {
        let mut out = Self::zero(self.flavor, field);
        for (m, c) in &self.terms {
            let c = match c {
                Scalar::Rational(q) => field.from_rational(q)?,
                other if other.field() == field => other.clone(),
                other => {
                    return Err(Error::FieldMismatch(format!(
                        "cannot map {} into {}",
                        other.field(),
                        field
                    )))
                }
            };
            out.add_term(m.clone(), &c)?;
        }
        Ok(out)
    }

    /// Applies a monomial map (substitution, renaming) linearly.
    pub fn map_monomials(
        &self,
        flavor: Flavor,
        f: impl Fn(&Monomial) -> Monomial,
    ) -> Result<Polynomial> {
        let mut out = Self::zero(flavor, self.field);
        for (m, c) in &self.terms {
            out.add_term(f(m).canonical(flavor), c)?;
        }
        Ok(out)
    }

    pub fn rename(&self, map: impl Fn(u8) -> u8) -> Result<Polynomial> {
        let flavor = self.flavor;
        self.map_monomials(flavor, |m| m.rename(flavor, &map))
    }

    /// Scales so that the first (smallest) monomial has coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.values().next() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero lead");
                self.scale(&inv).expect("same field")
            }
        }
    }
}

/// `Σ coeffs[i] * polys[i]`.
pub fn linear_combine(coeffs: &[Scalar], polys: &[Polynomial]) -> Result<Polynomial> {
    if coeffs.len() != polys.len() {
        return Err(Error::Invalid(format!(
            "{} coefficients for {} polynomials",
            coeffs.len(),
            polys.len()
        )));
    }
    let first = polys
        .first()
        .ok_or_else(|| Error::Invalid("empty linear combination".into()))?;
    let mut out = Polynomial::zero(first.flavor, first.field);
    for (c, p) in coeffs.iter().zip(polys) {
        out = out.add_scaled(c, p)?;
    }
    Ok(out)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let q = c.to_signed_rational();
            let neg = q.is_negative();
            let abs = q.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs} ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{}: {}", self.flavor, self.field, self)
    }
}

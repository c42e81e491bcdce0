//! Fixed monomial bases of the degree-4 components of the free
//! assosymmetric algebra, and coordinates of residuals in them.

use num_rational::BigRational;
use serde::Serialize;

use super::check::{planar_candidate, Mode};
use crate::error::{Error, Result};
use crate::lang::{expand, parse};
use crate::linalg::{Echelon, Membership};
use crate::term::{Field, FieldOps, Flavor, Monomial, Multidegree, Polynomial, Rationals};
use crate::tideal::{consequence_span, DirectComponent, Strategy, VarietyPresentation};

/// Basis monomials per type, with `a, b, c` standing for `t1, t2, t3`.
const TABLE: &[(&str, &[&str])] = &[
    ("4", &["((aa)a)a", "(aa)(aa)", "(a(aa))a"]),
    (
        "3,1",
        &["(aa)(ab)", "(b(aa))a", "((ba)a)a", "((ab)a)a", "((aa)b)a", "(a(aa))b", "((aa)a)b"],
    ),
    (
        "2,2",
        &[
            "(aa)(bb)", "(b(ab))a", "((bb)a)a", "((ba)b)a", "((ab)b)a", "(b(aa))b", "((ba)a)b",
            "((ab)a)b", "((aa)b)b",
        ],
    ),
    (
        "2,1,1",
        &[
            "(aa)(bc)", "(c(ab))a", "((cb)a)a", "((bc)a)a", "((ca)b)a", "((ac)b)a", "((ba)c)a",
            "((ab)c)a", "(c(aa))b", "((ca)a)b", "((ac)a)b", "((aa)c)b", "(b(aa))c", "((ba)a)c",
            "((ab)a)c", "((aa)b)c",
        ],
    ),
];

/// Parses a monomial written with single letters `a, b, c, …` as juxtaposed factors.
pub fn parse_letters(text: &str) -> Result<Monomial> {
    let mut spaced = String::new();
    for ch in text.chars() {
        match ch {
            'a'..='h' => {
                spaced.push_str(&format!(" t{} ", ch as u8 - b'a' + 1));
            }
            '(' | ')' | ' ' => spaced.push(ch),
            _ => return Err(Error::Invalid(format!("unexpected {ch:?} in monomial {text}"))),
        }
    }
    let p = expand(&parse(&spaced)?, Flavor::Planar)?;
    match p.terms().collect::<Vec<_>>().as_slice() {
        [(m, c)] if c.is_one() => Ok((*m).clone()),
        _ => Err(Error::Invalid(format!("{text} is not a single monomial"))),
    }
}

/// An ordered basis of one component of the free assosymmetric algebra.
pub struct HentzelBasis {
    pub multidegree: Multidegree,
    pub monomials: Vec<Monomial>,
    span: DirectComponent<Rationals>,
}

/// Coordinates of a residual in a [`HentzelBasis`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisCoordinates {
    pub multidegree: Multidegree,
    pub monomials: Vec<String>,
    pub coefficients: Vec<String>,
}

impl BasisCoordinates {
    /// Nonzero coefficients keyed by monomial, in basis order.
    pub fn support(&self) -> Vec<(&str, &str)> {
        self.monomials
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| c.as_str() != "0")
            .map(|(m, c)| (m.as_str(), c.as_str()))
            .collect()
    }
}

impl HentzelBasis {
    /// The basis of type `d`: the tabulated monomials for the degree-4 types
    /// with a repeated variable, the non-pivot monomials otherwise. The
    /// result is checked to be independent and complete modulo the span.
    pub fn new(assym: &VarietyPresentation, d: &Multidegree) -> Result<HentzelBasis> {
        let span = consequence_span(assym, d, Rationals, &Strategy::default())?;
        let key = d
            .entries()
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let monomials: Vec<Monomial> = match TABLE.iter().find(|(k, _)| *k == key) {
            Some((_, list)) => list.iter().map(|s| parse_letters(s)).collect::<Result<_>>()?,
            None => span
                .span
                .non_pivot_columns()
                .into_iter()
                .map(|c| span.basis.monomials[c as usize].clone())
                .collect(),
        };
        let basis = HentzelBasis {
            multidegree: d.clone(),
            monomials,
            span,
        };
        let dim = basis.span.basis.len() - basis.span.span.rank();
        if basis.monomials.len() != dim {
            return Err(Error::Invalid(format!(
                "basis of {d} has {} monomials but the component has dimension {dim}",
                basis.monomials.len()
            )));
        }
        if basis.images()?.rank() != dim {
            return Err(Error::Invalid(format!("basis of {d} is dependent modulo the span")));
        }
        Ok(basis)
    }

    fn images(&self) -> Result<Echelon<Rationals>> {
        let f = Rationals;
        let mut e = Echelon::with_provenance(f, self.span.basis.len());
        for m in &self.monomials {
            let p = Polynomial::from_monomial(m.clone(), Flavor::Planar, Field::Rational);
            e.insert(self.span.span.reduce(&self.span.basis.vector(&f, &p)?));
        }
        Ok(e)
    }

    /// Coordinates of the residual of `p` (planar, or commutative in plus mode).
    pub fn coordinates(&self, p: &Polynomial, mode: Mode) -> Result<BasisCoordinates> {
        if !p.is_zero() && p.multidegree().as_ref() != Some(&self.multidegree) {
            return Err(Error::NotMultihomogeneous(format!(
                "expected type {}, got {p}",
                self.multidegree
            )));
        }
        let f = Rationals;
        let planar = planar_candidate(p, mode)?;
        let residual = self.span.span.reduce(&self.span.basis.vector(&f, &planar)?);
        let images = self.images()?.into_basis();
        let coeffs: Vec<BigRational> = match images.member(&residual) {
            Membership::Residual(_) => unreachable!("the basis spans the quotient"),
            Membership::Member(c) => {
                let total = images.combination(&c).expect("elimination is recorded");
                (0..self.monomials.len())
                    .map(|j| total.get(j as u32).cloned().unwrap_or_else(|| f.zero()))
                    .collect()
            }
        };
        Ok(BasisCoordinates {
            multidegree: self.multidegree.clone(),
            monomials: self.monomials.iter().map(|m| m.to_string()).collect(),
            coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
        })
    }
}

/// Coordinates of the residual of `p` in the basis of its type.
pub fn reduce_to_basis(assym: &VarietyPresentation, p: &Polynomial, mode: Mode) -> Result<BasisCoordinates> {
    let d = p
        .multidegree()
        .ok_or_else(|| Error::NotMultihomogeneous(p.to_string()))?;
    HentzelBasis::new(assym, &d)?.coordinates(p, mode)
}

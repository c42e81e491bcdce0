//! Comparing identity systems and finding identities of plus algebras.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::star_expand;
use crate::linalg::{kernel, SpanBasis, SparseVector};
use crate::term::{Field, FieldOps, Flavor, Multidegree, Polynomial};
use crate::tideal::{consequence_span, quotient_algebra, MonomialBasis, Strategy, VarietyPresentation};

/// Identities of the plus algebra of a variety in one commutative component.
pub struct PlusKernel<F: FieldOps> {
    /// Commutative monomials of the component, in enumeration order.
    pub basis: MonomialBasis,
    pub span: SpanBasis<F>,
}

impl<F: FieldOps> PlusKernel<F> {
    pub fn dim(&self) -> usize {
        self.span.rank()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.span
            .rows()
            .iter()
            .map(|r| self.basis.polynomial(self.span.field(), r, Flavor::Commutative))
            .collect()
    }

    pub fn contains(&self, p: &Polynomial) -> Result<bool> {
        let v = self.basis.vector(self.span.field(), p)?;
        Ok(self.span.contains(&v))
    }
}

/// Kernel of `star_expand` followed by reduction modulo the T-ideal of `v`,
/// restricted to the commutative component `d`.
pub fn plus_identity_kernel<F: FieldOps>(
    v: &VarietyPresentation,
    d: &Multidegree,
    field: F,
    strategy: &Strategy,
) -> Result<PlusKernel<F>> {
    if v.flavor != Flavor::Planar {
        return Err(Error::FlavorMismatch("plus algebras are formed from planar varieties".into()));
    }
    strategy.check_degree(d)?;
    let basis = MonomialBasis::new(d, Flavor::Commutative)?;
    let q = quotient_algebra(v, d, field.clone(), strategy)?;
    let comp = q.component(d).expect("target component is built");
    let qdim = comp.dim();
    // Column j of the map is the normal form of the j-th commutative monomial.
    let mut rows: Vec<Vec<(u32, F::Elem)>> = vec![Vec::new(); qdim];
    for (j, m) in basis.monomials.iter().enumerate() {
        let p = Polynomial::from_monomial(m.clone(), Flavor::Commutative, field.field());
        let image = q.normal_form(&star_expand(&p)?)?;
        if let Some(vec) = image.get(d) {
            for (i, x) in vec.entries() {
                rows[*i as usize].push((j as u32, x.clone()));
            }
        }
    }
    let rows: Vec<_> = rows.into_iter().map(|r| SparseVector::from_pairs(&field, r)).collect();
    let span = kernel(field, basis.len(), rows);
    Ok(PlusKernel { basis, span })
}

/// Per-multidegree outcome of comparing two identity systems.
#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub multidegree: Multidegree,
    pub first_in_second: bool,
    pub second_in_first: bool,
}

impl Comparison {
    pub fn equivalent(&self) -> bool {
        self.first_in_second && self.second_in_first
    }
}

fn extended(ambient: &VarietyPresentation, name: &str, extra: &[Polynomial]) -> Result<VarietyPresentation> {
    ambient.with_identities(name, extra)
}

/// Compares the consequence spans of `ambient ∪ s1` and `ambient ∪ s2`
/// over ℚ at each multidegree.
pub fn systems_equivalent(
    s1: &[Polynomial],
    s2: &[Polynomial],
    ambient: &VarietyPresentation,
    degrees: &[Multidegree],
    strategy: &Strategy,
) -> Result<Vec<Comparison>> {
    let v1 = extended(ambient, "first system", s1)?;
    let v2 = extended(ambient, "second system", s2)?;
    let f = crate::term::Rationals;
    degrees
        .iter()
        .map(|d| {
            let a = consequence_span(&v1, d, f, strategy)?;
            let b = consequence_span(&v2, d, f, strategy)?;
            Ok(Comparison {
                multidegree: d.clone(),
                first_in_second: b.span.contains_span(&a.span),
                second_in_first: a.span.contains_span(&b.span),
            })
        })
        .collect()
}

/// Whether the component of `target` at `d` lies in the T-ideal of
/// `ambient ∪ premises`, over ℚ.
pub fn implies(
    ambient: &VarietyPresentation,
    premises: &[Polynomial],
    target: &Polynomial,
    d: &Multidegree,
    strategy: &Strategy,
) -> Result<bool> {
    let v = extended(ambient, "premises", premises)?;
    let f = crate::term::Rationals;
    let c = consequence_span(&v, d, f, strategy)?;
    let component = target
        .components()
        .remove(d)
        .unwrap_or_else(|| Polynomial::zero(target.flavor(), Field::Rational));
    Ok(c.span.contains(&c.basis.vector(&f, &component)?))
}

//! Consequence spans in monomial coordinates.
//!
//! For each multidegree `e <= d` (by increasing total degree) the component
//! `I(e)` of the T-ideal is spanned by the substitution instances landing
//! exactly in `e` together with `I(a)·M(b)` and `M(a)·I(b)` for every split
//! `a + b = e`, where `M(b)` is the set of monomials of multidegree `b`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::slots::{fillings, Template, Tree};
use crate::error::Result;
use crate::linalg::{Col, Echelon, SpanBasis, SparseVector};
use crate::term::{enumerate_monomials, FieldOps, Flavor, Monomial, Multidegree, Polynomial};

/// Monomial basis of one component.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, Col>,
}

impl MonomialBasis {
    pub fn new(d: &Multidegree, flavor: Flavor) -> Result<Self> {
        let monomials = enumerate_monomials(d, flavor)?;
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as Col))
            .collect();
        Ok(MonomialBasis { monomials, index })
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn col(&self, m: &Monomial) -> Option<Col> {
        self.index.get(m).copied()
    }

    /// Coordinates of a polynomial all of whose terms lie in this component.
    pub fn vector<F: FieldOps>(&self, field: &F, p: &Polynomial) -> Result<SparseVector<F::Elem>> {
        let mut pairs = Vec::with_capacity(p.len());
        for (m, c) in p.terms() {
            let col = self.col(m).ok_or_else(|| {
                crate::Error::Invalid(format!("monomial {m} outside the component"))
            })?;
            pairs.push((col, field.from_scalar(c)?));
        }
        Ok(SparseVector::from_pairs(field, pairs))
    }

    pub fn polynomial<F: FieldOps>(&self, field: &F, v: &SparseVector<F::Elem>, flavor: Flavor) -> Polynomial {
        Polynomial::from_terms(
            flavor,
            field.field(),
            v.entries()
                .iter()
                .map(|(c, e)| (self.monomials[*c as usize].clone(), field.to_scalar(e))),
        )
        .expect("coefficients come from the same field")
    }
}

/// Where a generator row came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowOrigin {
    /// Partial linearization of identity `identity` at the listed slot values.
    Instance { identity: usize, values: Vec<Vec<Monomial>> },
    /// A lower span row multiplied by a monomial on the given side.
    Product { lower: Multidegree, row: usize, monomial: Monomial, left: bool },
}

/// One T-ideal component in monomial coordinates.
pub struct DirectComponent<F: FieldOps> {
    pub basis: MonomialBasis,
    pub span: SpanBasis<F>,
    /// Generator rows, kept only where requested (they back certificates).
    pub generators: Option<Vec<(RowOrigin, SparseVector<F::Elem>)>>,
}

pub struct DirectSpans<F: FieldOps> {
    pub field: F,
    pub flavor: Flavor,
    pub target: Multidegree,
    pub components: HashMap<Multidegree, DirectComponent<F>>,
}

impl<F: FieldOps> DirectSpans<F> {
    pub fn top(&self) -> &DirectComponent<F> {
        &self.components[&self.target]
    }
}

fn instance_row<F: FieldOps>(
    field: &F,
    flavor: Flavor,
    template: &Template,
    coeffs: &[F::Elem],
    values: &[Vec<Monomial>],
    basis: &MonomialBasis,
) -> SparseVector<F::Elem> {
    fn build(t: &Tree, assign: &[Vec<Monomial>], flavor: Flavor) -> Monomial {
        match t {
            Tree::Leaf { var, occ } => assign[*var][*occ].clone(),
            Tree::Node(l, r) => Monomial::join(&build(l, assign, flavor), &build(r, assign, flavor), flavor),
        }
    }
    let mut pairs = Vec::new();
    for assign in template.arrangements(values) {
        for ((tree, _), c) in template.terms.iter().zip(coeffs) {
            let m = build(tree, &assign, flavor);
            pairs.push((basis.col(&m).expect("instance lands in the component"), c.clone()));
        }
    }
    SparseVector::from_pairs(field, pairs)
}

pub(crate) fn check_rows(n: usize, max_rows: usize, e: &Multidegree) -> Result<()> {
    if n > max_rows {
        return Err(crate::Error::Resource(format!(
            "{n} generated rows at {e} exceed the limit of {max_rows}"
        )));
    }
    Ok(())
}

/// Normalized, sorted, deduplicated rows (with their origins when tracked).
fn dedup_rows<F: FieldOps>(
    field: &F,
    rows: Vec<(RowOrigin, SparseVector<F::Elem>)>,
) -> Vec<(RowOrigin, SparseVector<F::Elem>)> {
    let mut seen: HashMap<SparseVector<F::Elem>, ()> = HashMap::with_capacity(rows.len());
    let mut out = Vec::with_capacity(rows.len());
    for (o, r) in rows {
        if r.is_empty() {
            continue;
        }
        let key = r.monic(field);
        if seen.insert(key, ()).is_none() {
            out.push((o, r));
        }
    }
    out
}

/// Builds `I(e)` for every `e <= target`. Generator rows are retained for the
/// top component when `keep_generators` is set.
pub fn direct_spans<F: FieldOps>(
    field: F,
    flavor: Flavor,
    templates: &[Template],
    target: &Multidegree,
    keep_generators: bool,
    max_rows: usize,
) -> Result<DirectSpans<F>> {
    let mut components: HashMap<Multidegree, DirectComponent<F>> = HashMap::new();
    let coeffs: Vec<Vec<F::Elem>> = templates
        .iter()
        .map(|t| t.terms.iter().map(|(_, c)| field.from_scalar(c)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    for e in target.nonzero_submultidegrees() {
        let basis = MonomialBasis::new(&e, flavor)?;
        let monomials_of = |s: &Multidegree| -> Vec<Monomial> {
            enumerate_monomials(s, flavor).expect("nonzero multidegree")
        };
        let mut rows: Vec<(RowOrigin, SparseVector<F::Elem>)> = Vec::new();

        // Substitution instances landing exactly in `e`.
        let mut cache: HashMap<Multidegree, Vec<Monomial>> = HashMap::new();
        for (ti, t) in templates.iter().enumerate() {
            if t.shape.slots() as u32 > e.total() {
                continue;
            }
            let dims = |s: &Multidegree| components.get(s).map_or(0, |c| c.basis.len());
            let fills = fillings(&t.shape, &e, &dims);
            for f in &fills {
                for (s, _) in f.iter().flatten() {
                    cache.entry(s.clone()).or_insert_with(|| monomials_of(s));
                }
            }
            let generated: Vec<(RowOrigin, SparseVector<F::Elem>)> = fills
                .par_iter()
                .map(|f| {
                    let values: Vec<Vec<Monomial>> = f
                        .iter()
                        .map(|vs| vs.iter().map(|(s, i)| cache[s][*i].clone()).collect())
                        .collect();
                    let row = instance_row(&field, flavor, t, &coeffs[ti], &values, &basis);
                    (RowOrigin::Instance { identity: ti, values }, row)
                })
                .collect();
            rows.extend(generated);
        }

        // Products of lower span rows with monomials.
        for (a, b) in e.splits() {
            let lower = &components[&a];
            let ms = monomials_of(&b);
            let sides: &[bool] = match flavor {
                Flavor::Planar => &[true, false],
                Flavor::Commutative => &[true],
            };
            for &left in sides {
                let generated: Vec<(RowOrigin, SparseVector<F::Elem>)> = (0..lower.span.rank())
                    .into_par_iter()
                    .flat_map_iter(|ri| {
                        let row = &lower.span.rows()[ri];
                        let basis = &basis;
                        let lower = &lower;
                        let field = &field;
                        let a = &a;
                        ms.iter().map(move |m| {
                            let pairs = row.entries().iter().map(|(c, x)| {
                                let lm = &lower.basis.monomials[*c as usize];
                                let prod = if left {
                                    Monomial::join(lm, m, flavor)
                                } else {
                                    Monomial::join(m, lm, flavor)
                                };
                                (basis.col(&prod).unwrap(), x.clone())
                            });
                            let v = SparseVector::from_pairs(field, pairs);
                            (
                                RowOrigin::Product {
                                    lower: a.clone(),
                                    row: ri,
                                    monomial: m.clone(),
                                    left,
                                },
                                v,
                            )
                        })
                    })
                    .collect();
                rows.extend(generated);
            }
        }

        check_rows(rows.len(), max_rows, &e)?;
        let rows = dedup_rows(&field, rows);
        let keep = keep_generators && e == *target;
        let span = if keep {
            let mut ech = Echelon::with_provenance(field.clone(), basis.len());
            for (_, r) in &rows {
                ech.insert(r.clone());
            }
            ech.into_basis()
        } else {
            let mut ech = Echelon::new(field.clone(), basis.len());
            for (_, r) in rows.iter() {
                ech.insert(r.clone());
            }
            ech.into_basis()
        };
        components.insert(
            e.clone(),
            DirectComponent {
                basis,
                span,
                generators: keep.then_some(rows),
            },
        );
    }
    Ok(DirectSpans {
        field,
        flavor,
        target: target.clone(),
        components,
    })
}

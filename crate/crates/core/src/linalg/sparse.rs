use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::term::{FieldOps, Scalar};

pub type Col = u32;

/// Sparse row: strictly increasing column indices, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparseVector<E> {
    entries: Vec<(Col, E)>,
}

impl<E> Default for SparseVector<E> {
    fn default() -> Self {
        SparseVector {
            entries: Vec::new(),
        }
    }
}

impl<E: Clone> SparseVector<E> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Caller guarantees sorted, distinct, nonzero entries.
    pub fn from_sorted(entries: Vec<(Col, E)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        SparseVector { entries }
    }

    pub fn unit<F: FieldOps<Elem = E>>(field: &F, col: Col) -> Self {
        SparseVector {
            entries: vec![(col, field.one())],
        }
    }

    /// Sums duplicate columns and drops zeros.
    pub fn from_pairs<F: FieldOps<Elem = E>>(
        field: &F,
        pairs: impl IntoIterator<Item = (Col, E)>,
    ) -> Self {
        let mut v: Vec<(Col, E)> = pairs.into_iter().collect();
        v.sort_by_key(|(c, _)| *c);
        let mut out: Vec<(Col, E)> = Vec::with_capacity(v.len());
        for (c, e) in v {
            match out.last_mut() {
                Some((lc, le)) if *lc == c => *le = field.add(le, &e),
                _ => out.push((c, e)),
            }
        }
        out.retain(|(_, e)| !field.is_zero(e));
        SparseVector { entries: out }
    }

    /// Converts tagged scalars, failing on a foreign field.
    pub fn from_scalars<F: FieldOps<Elem = E>>(
        field: &F,
        pairs: impl IntoIterator<Item = (Col, Scalar)>,
    ) -> Result<Self> {
        let mut conv = Vec::new();
        for (c, s) in pairs {
            if s.field() != field.field() && !matches!(s, Scalar::Rational(_)) {
                return Err(Error::FieldMismatch(format!(
                    "{} entry in {} system",
                    s.field(),
                    field.field()
                )));
            }
            conv.push((c, field.from_scalar(&s)?));
        }
        Ok(Self::from_pairs(field, conv))
    }

    pub fn entries(&self) -> &[(Col, E)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(Col, E)> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lead(&self) -> Option<&(Col, E)> {
        self.entries.first()
    }

    pub fn get(&self, col: Col) -> Option<&E> {
        self.entries
            .binary_search_by_key(&col, |(c, _)| *c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn max_col(&self) -> Option<Col> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn scale<F: FieldOps<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::new();
        }
        SparseVector {
            entries: self
                .entries
                .iter()
                .map(|(col, e)| (*col, field.mul(e, c)))
                .collect(),
        }
    }

    /// `self - c * other`, by a sorted merge.
    pub fn sub_scaled<F: FieldOps<Elem = E>>(&self, field: &F, c: &E, other: &Self) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, field.neg(&field.mul(c, &b[j].1))));
                j += 1;
            } else {
                let v = field.sub_mul(&a[i].1, c, &b[j].1);
                if !field.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        SparseVector { entries: out }
    }

    pub fn add<F: FieldOps<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        self.sub_scaled(field, &field.from_i64(-1), other)
    }

    /// Scales so that the leading entry is one.
    pub fn monic<F: FieldOps<Elem = E>>(&self, field: &F) -> Self {
        match self.entries.first() {
            None => self.clone(),
            Some((_, lead)) => self.scale(field, &field.inv(lead)),
        }
    }

    pub fn to_scalars<F: FieldOps<Elem = E>>(&self, field: &F) -> Vec<(Col, Scalar)> {
        self.entries
            .iter()
            .map(|(c, e)| (*c, field.to_scalar(e)))
            .collect()
    }
}

/// `base - Σ c_k * rows_k`, accumulated in one pass.
pub fn combine<F: FieldOps>(
    field: &F,
    base: &SparseVector<F::Elem>,
    subtract: &[(F::Elem, &SparseVector<F::Elem>)],
) -> SparseVector<F::Elem> {
    match subtract.len() {
        0 => return base.clone(),
        1 => return base.sub_scaled(field, &subtract[0].0, subtract[0].1),
        _ => {}
    }
    let mut acc: HashMap<Col, F::Elem> = HashMap::with_capacity(base.len() * 2);
    for (c, e) in base.entries() {
        acc.insert(*c, e.clone());
    }
    for (k, row) in subtract {
        for (c, e) in row.entries() {
            let t = field.mul(k, e);
            acc.entry(*c)
                .and_modify(|v| *v = field.sub(v, &t))
                .or_insert_with(|| field.neg(&t));
        }
    }
    let mut out: Vec<(Col, F::Elem)> = acc.into_iter().filter(|(_, e)| !field.is_zero(e)).collect();
    out.sort_by_key(|(c, _)| *c);
    SparseVector::from_sorted(out)
}

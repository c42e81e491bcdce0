//! Deterministic exact sparse linear algebra over ℚ and GF(p).
//!
//! Rows are inserted incrementally into the reduced row echelon form for the
//! fixed column order. That form is unique, so the output does not depend on
//! the order in which rows arrive.

mod sparse;

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use serde::Serialize;

pub use sparse::{combine, Col, SparseVector};

use crate::error::{Error, Result};
use crate::term::{is_prime, FieldOps, PrimeField};

/// Incrementally maintained reduced row echelon form.
///
/// Every stored row is monic at its leading column and vanishes on all other
/// pivot columns, so reducing an incoming row is a single pass.
pub struct Echelon<F: FieldOps> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVector<F::Elem>>,
    pivot_of: HashMap<Col, usize>,
    log: Option<Vec<Op<F::Elem>>>,
    inserted: usize,
}

/// One step of the elimination, replayed backwards to express rows in the
/// inserted ones.
#[derive(Debug, Clone)]
enum Op<E> {
    /// Row `slot` became `inv * (input - Σ e * row_j)`.
    New {
        slot: usize,
        input: usize,
        inv: E,
        terms: Vec<(usize, E)>,
    },
    /// Row `slot` had `x` times row `from` subtracted.
    Update { slot: usize, from: usize, x: E },
}

impl<F: FieldOps> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_of: HashMap::new(),
            log: None,
            inserted: 0,
        }
    }

    /// Records the elimination so that span elements can later be written
    /// as combinations of the inserted rows.
    pub fn with_provenance(field: F, ncols: usize) -> Self {
        let mut e = Self::new(field, ncols);
        e.log = Some(Vec::new());
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    fn pivot_terms(&self, row: &SparseVector<F::Elem>) -> Vec<(F::Elem, usize)> {
        row.entries()
            .iter()
            .filter_map(|(c, e)| self.pivot_of.get(c).map(|&i| (e.clone(), i)))
            .collect()
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseVector<F::Elem>) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        if let Some(max) = row.max_col() {
            assert!((max as usize) < self.ncols, "column {max} out of range");
        }
        let terms = self.pivot_terms(&row);
        let refs: Vec<(F::Elem, &SparseVector<F::Elem>)> =
            terms.iter().map(|(e, i)| (e.clone(), &self.rows[*i])).collect();
        let reduced = combine(&self.field, &row, &refs);
        let Some((c, lead)) = reduced.lead() else {
            return false;
        };
        let c = *c;
        let inv = self.field.inv(lead);
        let new_row = reduced.scale(&self.field, &inv);
        let slot = self.rows.len();
        if let Some(log) = self.log.as_mut() {
            log.push(Op::New {
                slot,
                input: idx,
                inv: inv.clone(),
                terms: terms.into_iter().map(|(e, i)| (i, e)).collect(),
            });
        }
        // Clear the new pivot column from the existing rows.
        for i in 0..self.rows.len() {
            let Some(x) = self.rows[i].get(c).cloned() else { continue };
            self.rows[i] = self.rows[i].sub_scaled(&self.field, &x, &new_row);
            if let Some(log) = self.log.as_mut() {
                log.push(Op::Update { slot: i, from: slot, x });
            }
        }
        self.pivot_of.insert(c, slot);
        self.rows.push(new_row);
        true
    }

    /// Whether `row` lies in the current span.
    pub fn contains(&self, row: &SparseVector<F::Elem>) -> bool {
        let refs: Vec<(F::Elem, &SparseVector<F::Elem>)> = self
            .pivot_terms(row)
            .into_iter()
            .map(|(e, i)| (e, &self.rows[i]))
            .collect();
        combine(&self.field, row, &refs).is_empty()
    }

    /// The canonical reduced row echelon form, rows ordered by pivot.
    pub fn into_basis(self) -> SpanBasis<F> {
        let Echelon {
            field,
            ncols,
            rows,
            log,
            ..
        } = self;
        let mut by_pivot: Vec<usize> = (0..rows.len()).collect();
        by_pivot.sort_by_key(|&i| rows[i].lead().unwrap().0);
        let mut rows: Vec<Option<SparseVector<F::Elem>>> = rows.into_iter().map(Some).collect();
        let final_rows = by_pivot.iter().map(|&i| rows[i].take().unwrap()).collect();
        let history = log.map(|ops| {
            Arc::new(History {
                ops,
                slot_of_row: by_pivot,
            })
        });
        SpanBasis::from_rref(field, ncols, final_rows, history)
    }
}

/// Reduced row echelon basis of a subspace of `F^ncols`.
#[derive(Clone)]
pub struct SpanBasis<F: FieldOps> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVector<F::Elem>>,
    pivots: Vec<Col>,
    pivot_index: HashMap<Col, usize>,
    history: Option<Arc<History<F::Elem>>>,
}

#[derive(Debug)]
struct History<E> {
    ops: Vec<Op<E>>,
    /// Elimination slot of each final row.
    slot_of_row: Vec<usize>,
}

impl<F: FieldOps> PartialEq for SpanBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ncols == other.ncols && self.rows == other.rows
    }
}

impl<F: FieldOps> std::fmt::Debug for SpanBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpanBasis")
            .field("field", &self.field.field())
            .field("ncols", &self.ncols)
            .field("rank", &self.rows.len())
            .finish()
    }
}

/// Result of a membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership<E> {
    /// Coefficients over basis rows, by row index.
    Member(Vec<(usize, E)>),
    /// The canonical residual (supported on non-pivot columns).
    Residual(SparseVector<E>),
}

impl<E> Membership<E> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

impl<F: FieldOps> SpanBasis<F> {
    fn from_rref(
        field: F,
        ncols: usize,
        rows: Vec<SparseVector<F::Elem>>,
        history: Option<Arc<History<F::Elem>>>,
    ) -> Self {
        let pivots: Vec<Col> = rows.iter().map(|r| r.lead().unwrap().0).collect();
        let pivot_index = pivots.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        SpanBasis {
            field,
            ncols,
            rows,
            pivots,
            pivot_index,
            history,
        }
    }

    pub fn empty(field: F, ncols: usize) -> Self {
        Self::from_rref(field, ncols, Vec::new(), None)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVector<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[Col] {
        &self.pivots
    }

    pub fn is_pivot(&self, col: Col) -> bool {
        self.pivot_index.contains_key(&col)
    }

    /// Columns not carrying a pivot, in increasing order; they index the quotient.
    pub fn non_pivot_columns(&self) -> Vec<Col> {
        (0..self.ncols as Col).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Expression of basis row `i` in the originally inserted rows, when tracked.
    /// Basis row `i` as a combination of the inserted rows (by insertion index).
    pub fn provenance(&self, i: usize) -> Option<SparseVector<F::Elem>> {
        self.combination(&[(i, self.field.one())])
    }

    pub fn has_provenance(&self) -> bool {
        self.history.is_some()
    }

    /// `Σ c_i row_i` over basis rows, rewritten over the inserted rows by
    /// replaying the elimination backwards.
    pub fn combination(&self, coeffs: &[(usize, F::Elem)]) -> Option<SparseVector<F::Elem>> {
        let h = self.history.as_ref()?;
        let f = &self.field;
        let mut adj: Vec<F::Elem> = vec![f.zero(); h.slot_of_row.len()];
        for (i, c) in coeffs {
            let s = h.slot_of_row[*i];
            adj[s] = f.add(&adj[s], c);
        }
        let mut out: Vec<(Col, F::Elem)> = Vec::new();
        for op in h.ops.iter().rev() {
            match op {
                Op::Update { slot, from, x } => {
                    if !f.is_zero(&adj[*slot]) {
                        adj[*from] = f.sub_mul(&adj[*from], x, &adj[*slot]);
                    }
                }
                Op::New {
                    slot,
                    input,
                    inv,
                    terms,
                } => {
                    let a = std::mem::replace(&mut adj[*slot], f.zero());
                    if f.is_zero(&a) {
                        continue;
                    }
                    let scaled = f.mul(&a, inv);
                    for (j, e) in terms {
                        adj[*j] = f.sub_mul(&adj[*j], e, &scaled);
                    }
                    out.push((*input as Col, scaled));
                }
            }
        }
        Some(SparseVector::from_pairs(f, out))
    }

    /// Canonical residual of `v` modulo the span.
    pub fn reduce(&self, v: &SparseVector<F::Elem>) -> SparseVector<F::Elem> {
        let subtract: Vec<(F::Elem, &SparseVector<F::Elem>)> = v
            .entries()
            .iter()
            .filter_map(|(c, e)| self.pivot_index.get(c).map(|&i| (e.clone(), &self.rows[i])))
            .collect();
        combine(&self.field, v, &subtract)
    }

    pub fn member(&self, v: &SparseVector<F::Elem>) -> Membership<F::Elem> {
        let residual = self.reduce(v);
        if residual.is_empty() {
            Membership::Member(
                v.entries()
                    .iter()
                    .filter_map(|(c, e)| self.pivot_index.get(c).map(|&i| (i, e.clone())))
                    .collect(),
            )
        } else {
            Membership::Residual(residual)
        }
    }

    pub fn contains(&self, v: &SparseVector<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Whether every row of `other` lies in this span.
    pub fn contains_span(&self, other: &SpanBasis<F>) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

/// Canonical RREF of the span of `rows`.
pub fn rref<F: FieldOps>(
    field: F,
    ncols: usize,
    rows: impl IntoIterator<Item = SparseVector<F::Elem>>,
) -> SpanBasis<F> {
    let mut e = Echelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.into_basis()
}

/// Like [`rref`], keeping each basis row's expression in the input rows.
pub fn rref_with_provenance<F: FieldOps>(
    field: F,
    ncols: usize,
    rows: impl IntoIterator<Item = SparseVector<F::Elem>>,
) -> SpanBasis<F> {
    let mut e = Echelon::with_provenance(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.into_basis()
}

/// Basis of `{x : M x = 0}` where `rows` are the rows of `M`.
pub fn kernel<F: FieldOps>(
    field: F,
    ncols: usize,
    rows: impl IntoIterator<Item = SparseVector<F::Elem>>,
) -> SpanBasis<F> {
    let basis = rref(field.clone(), ncols, rows);
    let mut vectors = Vec::new();
    for free in basis.non_pivot_columns() {
        let mut entries = vec![(free, field.one())];
        for (i, row) in basis.rows().iter().enumerate() {
            if let Some(e) = row.get(free) {
                entries.push((basis.pivots()[i], field.neg(e)));
            }
        }
        vectors.push(SparseVector::from_pairs(&field, entries));
    }
    rref(field, ncols, vectors)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModularRank {
    pub ranks: Vec<(u64, usize)>,
    pub agree: bool,
}

impl ModularRank {
    pub fn rank(&self) -> Option<usize> {
        self.agree.then(|| self.ranks[0].1)
    }
}

/// Rank of a rational system modulo each prime, with an agreement flag.
pub fn rank_modular(
    ncols: usize,
    rows: &[Vec<(Col, BigRational)>],
    primes: &[u64],
) -> Result<ModularRank> {
    if primes.len() < 2 {
        return Err(Error::Invalid("modular rank needs at least two primes".into()));
    }
    let mut ranks = Vec::new();
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let f = PrimeField::new(p)?;
        let mut e = Echelon::new(f, ncols);
        for r in rows {
            let conv = r
                .iter()
                .map(|(c, q)| Ok((*c, f.from_rational(q)?)))
                .collect::<Result<Vec<_>>>()?;
            e.insert(SparseVector::from_pairs(&f, conv));
        }
        ranks.push((p, e.rank()));
    }
    let agree = ranks.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(ModularRank { ranks, agree })
}

//! Graded construction of the relatively free algebra, one multidegree at a time.
//!
//! The component `Q_e` of the quotient of the free algebra by a T-ideal is
//! the quotient of `P_e = ⊕_{a+b=e} Q_a ⊗ Q_b` by the images of the
//! substitution instances of the defining identities at `e`. The instances
//! are evaluated with slot values running over bases of lower components, so
//! products of the ideal with anything never need to be formed explicitly.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use rayon::prelude::*;

use super::slots::{fillings, SlotValue, Template, Tree};
use crate::error::{Error, Result};
use crate::lang::Algebra;
use crate::linalg::{Col, Echelon, SparseVector};
use crate::term::{FieldOps, Flavor, Monomial, Multidegree, Polynomial};

/// One summand `Q_left ⊗ Q_right` of `P_e`.
#[derive(Debug, Clone)]
pub struct Block {
    pub left: Multidegree,
    pub right: Multidegree,
    pub offset: usize,
    pub nl: usize,
    pub nr: usize,
    /// Commutative square `Sym²(Q_left)`, stored as an upper triangle.
    pub symmetric: bool,
}

impl Block {
    fn size(&self) -> usize {
        if self.symmetric {
            tri_size(self.nl)
        } else {
            self.nl * self.nr
        }
    }

    fn col(&self, i: usize, j: usize) -> Col {
        let local = if self.symmetric {
            let (i, j) = if i <= j { (i, j) } else { (j, i) };
            i * self.nl - i * i.saturating_sub(1) / 2 + (j - i)
        } else {
            i * self.nr + j
        };
        (self.offset + local) as Col
    }

    /// Inverse of `col` on this block's local range.
    fn pair(&self, local: usize) -> (usize, usize) {
        if self.symmetric {
            let mut i = 0;
            let mut start = 0;
            loop {
                let row = self.nl - i;
                if local < start + row {
                    return (i, i + local - start);
                }
                start += row;
                i += 1;
            }
        } else {
            (local / self.nr, local % self.nr)
        }
    }
}

/// Normal form of one column of `P_e`.
#[derive(Debug, Clone)]
enum ColumnForm<E> {
    Basis(u32),
    /// Minus the tail of the relation row pivoting here, in basis indices.
    Reduced(Vec<(u32, E)>),
}

/// One homogeneous component of the quotient.
#[derive(Debug, Clone)]
pub struct QComponent<E> {
    pub degree: Multidegree,
    pub blocks: Vec<Block>,
    block_of: HashMap<(Multidegree, Multidegree), usize>,
    forms: Vec<ColumnForm<E>>,
    /// Monomial representing each basis element.
    pub labels: Vec<Monomial>,
    /// Dimension of `P_e` (1 for generators).
    pub ambient_dim: usize,
    /// Rank of the relations at this component.
    pub relation_rank: usize,
}

impl<E> QComponent<E> {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
}

/// An element of the quotient: one coordinate vector per component.
pub type QElem<E> = BTreeMap<Multidegree, SparseVector<E>>;

/// The relatively free algebra truncated at `target`.
pub struct QuotientAlgebra<F: FieldOps> {
    field: F,
    flavor: Flavor,
    target: Multidegree,
    comps: HashMap<Multidegree, QComponent<F::Elem>>,
    order: Vec<Multidegree>,
}

fn tri_size(n: usize) -> usize {
    n * (n + 1) / 2
}

impl<F: FieldOps> QuotientAlgebra<F> {
    /// Builds every component `e <= target`.
    pub fn build(
        field: F,
        flavor: Flavor,
        templates: &[Template],
        target: &Multidegree,
        max_rows: usize,
    ) -> Result<Self> {
        let mut alg = QuotientAlgebra {
            field,
            flavor,
            target: target.clone(),
            comps: HashMap::new(),
            order: Vec::new(),
        };
        let coeffs: Vec<Vec<F::Elem>> = templates
            .iter()
            .map(|t| {
                t.terms
                    .iter()
                    .map(|(_, c)| alg.field.from_scalar(c))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let kills_generators = templates.iter().any(|t| t.shape.slots() == 1);
        for e in target.nonzero_submultidegrees() {
            let comp = if e.total() == 1 {
                alg.generator_component(&e, kills_generators)
            } else {
                alg.build_component(&e, templates, &coeffs, max_rows)?
            };
            alg.comps.insert(e.clone(), comp);
            alg.order.push(e);
        }
        Ok(alg)
    }

    fn generator_component(&self, e: &Multidegree, killed: bool) -> QComponent<F::Elem> {
        let var = e.variables().next().unwrap();
        let (forms, labels) = if killed {
            (vec![ColumnForm::Reduced(Vec::new())], Vec::new())
        } else {
            (vec![ColumnForm::Basis(0)], vec![Monomial::leaf(var)])
        };
        QComponent {
            degree: e.clone(),
            blocks: Vec::new(),
            block_of: HashMap::new(),
            forms,
            labels,
            ambient_dim: 1,
            relation_rank: usize::from(killed),
        }
    }

    fn build_component(
        &self,
        e: &Multidegree,
        templates: &[Template],
        coeffs: &[Vec<F::Elem>],
        max_rows: usize,
    ) -> Result<QComponent<F::Elem>> {
        let mut blocks = Vec::new();
        let mut block_of = HashMap::new();
        let mut offset = 0;
        for (a, b) in e.splits() {
            let (nl, nr) = (self.comps[&a].dim(), self.comps[&b].dim());
            let symmetric = match self.flavor {
                Flavor::Planar => false,
                Flavor::Commutative if a > b => continue,
                Flavor::Commutative => a == b,
            };
            let block = Block {
                left: a.clone(),
                right: b.clone(),
                offset,
                nl,
                nr,
                symmetric,
            };
            let size = block.size();
            if size == 0 {
                continue;
            }
            offset += size;
            block_of.insert((a, b), blocks.len());
            blocks.push(block);
        }
        let ambient_dim = offset;
        let mut comp = QComponent {
            degree: e.clone(),
            blocks,
            block_of,
            forms: Vec::new(),
            labels: Vec::new(),
            ambient_dim,
            relation_rank: 0,
        };

        let mut rows: Vec<SparseVector<F::Elem>> = Vec::new();
        for (t, cs) in templates.iter().zip(coeffs) {
            if t.shape.slots() < 2 || t.shape.slots() as u32 > e.total() {
                continue;
            }
            let dims = |s: &Multidegree| {
                if s == e {
                    0
                } else {
                    self.comps.get(s).map_or(0, |c| c.dim())
                }
            };
            let fills = fillings(&t.shape, e, &dims);
            super::direct::check_rows(rows.len() + fills.len(), max_rows, e)?;
            let generated: Vec<SparseVector<F::Elem>> = fills
                .par_iter()
                .map(|f| self.instance_row(&comp, t, cs, f))
                .collect();
            rows.extend(generated.into_iter().filter(|r| !r.is_empty()));
        }
        // Short rows first keeps fill-in down; the sort is stable, so the
        // order stays deterministic.
        let mut seen = std::collections::HashSet::with_capacity(rows.len());
        let mut keyed: Vec<SparseVector<F::Elem>> = rows
            .into_iter()
            .map(|r| r.monic(&self.field))
            .filter(|r| seen.insert(r.clone()))
            .collect();
        drop(seen);
        keyed.sort_by_key(|r| r.len());

        let mut ech = Echelon::new(self.field.clone(), ambient_dim);
        for r in keyed {
            if ech.rank() == ambient_dim {
                break;
            }
            ech.insert(r);
        }
        let span = ech.into_basis();
        comp.relation_rank = span.rank();

        let basis_cols = span.non_pivot_columns();
        let mut basis_pos = vec![u32::MAX; ambient_dim];
        for (k, &c) in basis_cols.iter().enumerate() {
            basis_pos[c as usize] = k as u32;
        }
        let mut forms: Vec<ColumnForm<F::Elem>> = basis_pos
            .iter()
            .map(|&k| ColumnForm::Basis(k))
            .collect();
        for (row, &p) in span.rows().iter().zip(span.pivots()) {
            let tail = row.entries()[1..]
                .iter()
                .map(|(c, x)| (basis_pos[*c as usize], self.field.neg(x)))
                .collect();
            forms[p as usize] = ColumnForm::Reduced(tail);
        }
        comp.labels = basis_cols
            .iter()
            .map(|&c| {
                let (bl, i, j) = comp.locate(c);
                let bl = &comp.blocks[bl];
                Monomial::join(
                    &self.comps[&bl.left].labels[i],
                    &self.comps[&bl.right].labels[j],
                    self.flavor,
                )
            })
            .collect();
        comp.forms = forms;
        Ok(comp)
    }

    fn instance_row(
        &self,
        comp: &QComponent<F::Elem>,
        template: &Template,
        coeffs: &[F::Elem],
        filling: &[Vec<SlotValue>],
    ) -> SparseVector<F::Elem> {
        let mut pairs = Vec::new();
        for assign in template.arrangements(filling) {
            for ((tree, _), c) in template.terms.iter().zip(coeffs) {
                let Tree::Node(l, r) = tree else {
                    unreachable!("identities with at least two slots have product roots")
                };
                let (a, x) = self.eval_tree(l, &assign);
                let (b, y) = self.eval_tree(r, &assign);
                self.formal_product(comp, &a, &x, &b, &y, c, &mut pairs);
            }
        }
        SparseVector::from_pairs(&self.field, pairs)
    }

    fn eval_tree(&self, t: &Tree, assign: &[Vec<SlotValue>]) -> (Multidegree, SparseVector<F::Elem>) {
        match t {
            Tree::Leaf { var, occ } => {
                let (d, i) = &assign[*var][*occ];
                (d.clone(), SparseVector::unit(&self.field, *i as Col))
            }
            Tree::Node(l, r) => {
                let (a, x) = self.eval_tree(l, assign);
                let (b, y) = self.eval_tree(r, assign);
                let e = a.add(&b);
                let v = self.product_nf(&e, &a, &x, &b, &y);
                (e, v)
            }
        }
    }

    /// Appends `c · (x ⊗ y)` as `P_e` coordinates.
    fn formal_product(
        &self,
        comp: &QComponent<F::Elem>,
        a: &Multidegree,
        x: &SparseVector<F::Elem>,
        b: &Multidegree,
        y: &SparseVector<F::Elem>,
        c: &F::Elem,
        out: &mut Vec<(Col, F::Elem)>,
    ) {
        let (a, x, b, y) = if self.flavor == Flavor::Commutative && a > b {
            (b, y, a, x)
        } else {
            (a, x, b, y)
        };
        let Some(&bi) = comp.block_of.get(&(a.clone(), b.clone())) else {
            return;
        };
        let block = &comp.blocks[bi];
        for (i, xi) in x.entries() {
            let cx = self.field.mul(c, xi);
            for (j, yj) in y.entries() {
                out.push((block.col(*i as usize, *j as usize), self.field.mul(&cx, yj)));
            }
        }
    }

    /// Normal form of `x · y` in `Q_e`.
    fn product_nf(
        &self,
        e: &Multidegree,
        a: &Multidegree,
        x: &SparseVector<F::Elem>,
        b: &Multidegree,
        y: &SparseVector<F::Elem>,
    ) -> SparseVector<F::Elem> {
        let comp = &self.comps[e];
        let mut cols = Vec::new();
        self.formal_product(comp, a, x, b, y, &self.field.one(), &mut cols);
        comp.normal_form(&self.field, cols)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn target(&self) -> &Multidegree {
        &self.target
    }

    pub fn component(&self, e: &Multidegree) -> Option<&QComponent<F::Elem>> {
        self.comps.get(e)
    }

    /// Dimension of `Q_e` (zero outside the truncation).
    pub fn dim(&self, e: &Multidegree) -> usize {
        self.comps.get(e).map_or(0, |c| c.dim())
    }

    /// Components in construction order.
    pub fn degrees(&self) -> &[Multidegree] {
        &self.order
    }

    /// Normal form of a polynomial of the matching flavor.
    pub fn normal_form(&self, p: &Polynomial) -> Result<QElem<F::Elem>> {
        if p.flavor() != self.flavor {
            return Err(Error::FlavorMismatch(format!(
                "{:?} polynomial in a {:?} quotient",
                p.flavor(),
                self.flavor
            )));
        }
        let mut memo: HashMap<Monomial, (Multidegree, SparseVector<F::Elem>)> = HashMap::new();
        let mut out: QElem<F::Elem> = BTreeMap::new();
        for (m, c) in p.terms() {
            let (d, v) = self.monomial_nf(m, &mut memo)?;
            let c = self.field.from_scalar(c)?;
            add_into(&self.field, &mut out, d, v.scale(&self.field, &c));
        }
        Ok(out)
    }

    fn monomial_nf(
        &self,
        m: &Monomial,
        memo: &mut HashMap<Monomial, (Multidegree, SparseVector<F::Elem>)>,
    ) -> Result<(Multidegree, SparseVector<F::Elem>)> {
        if let Some(v) = memo.get(m) {
            return Ok(v.clone());
        }
        let v = match m.split() {
            None => {
                let d = Multidegree::unit(m.leaf_var().unwrap());
                let c = self.comps.get(&d).ok_or_else(|| out_of_range(&d, &self.target))?;
                let v = if c.dim() == 0 {
                    SparseVector::new()
                } else {
                    SparseVector::unit(&self.field, 0)
                };
                (d, v)
            }
            Some((l, r)) => {
                let (a, x) = self.monomial_nf(&l, memo)?;
                let (b, y) = self.monomial_nf(&r, memo)?;
                let e = a.add(&b);
                if !self.comps.contains_key(&e) {
                    return Err(out_of_range(&e, &self.target));
                }
                let v = self.product_nf(&e, &a, &x, &b, &y);
                (e, v)
            }
        };
        memo.insert(m.clone(), v.clone());
        Ok(v)
    }

    /// The element as a polynomial in the basis labels.
    pub fn to_polynomial(&self, x: &QElem<F::Elem>) -> Polynomial {
        let terms = x.iter().flat_map(|(d, v)| {
            let comp = &self.comps[d];
            v.entries()
                .iter()
                .map(|(i, c)| (comp.labels[*i as usize].clone(), self.field.to_scalar(c)))
        });
        Polynomial::from_terms(self.flavor, self.field.field(), terms)
            .expect("labels and coefficients share the quotient's field")
    }
}

fn out_of_range(d: &Multidegree, target: &Multidegree) -> Error {
    Error::Invalid(format!("multidegree {d} lies outside the truncation at {target}"))
}

fn add_into<F: FieldOps>(field: &F, acc: &mut QElem<F::Elem>, d: Multidegree, v: SparseVector<F::Elem>) {
    if v.is_empty() {
        return;
    }
    match acc.get_mut(&d) {
        Some(cur) => {
            *cur = cur.add(field, &v);
            if cur.is_empty() {
                acc.remove(&d);
            }
        }
        None => {
            acc.insert(d, v);
        }
    }
}

impl<E: Clone> QComponent<E> {
    /// (block, left index, right index) of a `P_e` column.
    fn locate(&self, c: Col) -> (usize, usize, usize) {
        let c = c as usize;
        let bi = self
            .blocks
            .partition_point(|b| b.offset <= c)
            .checked_sub(1)
            .expect("column inside some block");
        let (i, j) = self.blocks[bi].pair(c - self.blocks[bi].offset);
        (bi, i, j)
    }

    fn normal_form<F: FieldOps<Elem = E>>(&self, field: &F, cols: Vec<(Col, E)>) -> SparseVector<E> {
        let mut pairs: Vec<(Col, E)> = Vec::with_capacity(cols.len());
        for (c, x) in cols {
            match &self.forms[c as usize] {
                ColumnForm::Basis(k) => pairs.push((*k as Col, x)),
                ColumnForm::Reduced(tail) => {
                    pairs.extend(tail.iter().map(|(k, t)| (*k as Col, field.mul(&x, t))))
                }
            }
        }
        SparseVector::from_pairs(field, pairs)
    }
}

impl<F: FieldOps> Algebra for QuotientAlgebra<F> {
    type Elem = QElem<F::Elem>;

    fn var(&self, k: u8) -> Result<Self::Elem> {
        let d = Multidegree::unit(k);
        let comp = self.comps.get(&d).ok_or_else(|| out_of_range(&d, &self.target))?;
        let mut out = BTreeMap::new();
        if comp.dim() > 0 {
            out.insert(d, SparseVector::unit(&self.field, 0));
        }
        Ok(out)
    }

    fn zero(&self) -> Self::Elem {
        BTreeMap::new()
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let mut out = a.clone();
        for (d, v) in b {
            add_into(&self.field, &mut out, d.clone(), v.clone());
        }
        Ok(out)
    }

    fn scale(&self, a: &Self::Elem, c: &BigRational) -> Result<Self::Elem> {
        let c = self.field.from_rational(c)?;
        if self.field.is_zero(&c) {
            return Ok(BTreeMap::new());
        }
        Ok(a.iter().map(|(d, v)| (d.clone(), v.scale(&self.field, &c))).collect())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let mut out = BTreeMap::new();
        for (da, x) in a {
            for (db, y) in b {
                let e = da.add(db);
                if !self.comps.contains_key(&e) {
                    return Err(out_of_range(&e, &self.target));
                }
                let v = self.product_nf(&e, da, x, db, y);
                add_into(&self.field, &mut out, e, v);
            }
        }
        Ok(out)
    }

    fn is_commutative(&self) -> bool {
        self.flavor == Flavor::Commutative
    }
}

/// The plus algebra `A⁽⁺⁾` of an algebra: same space, product `xy + yx`.
pub struct Plus<'a, A>(pub &'a A);

impl<A: Algebra> Algebra for Plus<'_, A> {
    type Elem = A::Elem;

    fn var(&self, k: u8) -> Result<Self::Elem> {
        self.0.var(k)
    }
    fn zero(&self) -> Self::Elem {
        self.0.zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.0.add(a, b)
    }
    fn scale(&self, a: &Self::Elem, c: &BigRational) -> Result<Self::Elem> {
        self.0.scale(a, c)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let ab = self.0.mul(a, b)?;
        let ba = self.0.mul(b, a)?;
        self.0.add(&ab, &ba)
    }
    fn is_commutative(&self) -> bool {
        true
    }
}

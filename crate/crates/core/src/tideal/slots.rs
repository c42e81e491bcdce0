//! Enumeration of substitution instances of a multihomogeneous identity.
//!
//! Over an infinite field the T-ideal generated by a multihomogeneous `f`
//! is spanned by its partial linearizations: every variable `x` of
//! multiplicity `k` is replaced by a multiset of `k` values, summed over the
//! distinct ways of distributing that multiset over the occurrences of `x`.
//! Summing over distinct arrangements (instead of all permutations) keeps the
//! construction valid in positive characteristic.

use crate::term::{Monomial, Multidegree, Polynomial, Scalar};

/// A slot value: a multidegree and an index into some basis of that component.
pub type SlotValue = (Multidegree, usize);

/// Shape of an identity: variables with their multiplicities, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shape {
    pub vars: Vec<(u8, usize)>,
}

impl Shape {
    pub fn of(p: &Polynomial) -> Option<Shape> {
        let d = p.multidegree()?;
        Some(Shape {
            vars: d
                .entries()
                .iter()
                .enumerate()
                .filter(|(_, &m)| m > 0)
                .map(|(i, &m)| ((i + 1) as u8, m as usize))
                .collect(),
        })
    }

    pub fn slots(&self) -> usize {
        self.vars.iter().map(|v| v.1).sum()
    }
}

/// All fillings of the slots of `shape` whose multidegrees sum to `target`.
///
/// `dim(e)` is the number of available values of multidegree `e`. Within a
/// variable the chosen values are nondecreasing, so each multiset appears once.
pub fn fillings(
    shape: &Shape,
    target: &Multidegree,
    dim: &dyn Fn(&Multidegree) -> usize,
) -> Vec<Vec<Vec<SlotValue>>> {
    let subdegrees = target.nonzero_submultidegrees();
    let slot_var: Vec<usize> = shape
        .vars
        .iter()
        .enumerate()
        .flat_map(|(j, &(_, k))| std::iter::repeat_n(j, k))
        .collect();
    let mut out = Vec::new();
    let mut current: Vec<SlotValue> = Vec::with_capacity(slot_var.len());
    fill(
        &slot_var,
        &subdegrees,
        dim,
        target.clone(),
        &mut current,
        &mut |chosen: &[SlotValue]| {
            let mut grouped = vec![Vec::new(); shape.vars.len()];
            for (s, v) in slot_var.iter().zip(chosen) {
                grouped[*s].push(v.clone());
            }
            out.push(grouped);
        },
    );
    out
}

fn fill(
    slot_var: &[usize],
    subdegrees: &[Multidegree],
    dim: &dyn Fn(&Multidegree) -> usize,
    remaining: Multidegree,
    current: &mut Vec<SlotValue>,
    emit: &mut dyn FnMut(&[SlotValue]),
) {
    let k = current.len();
    if k == slot_var.len() {
        if remaining.is_zero() {
            emit(current);
        }
        return;
    }
    let slots_left = slot_var.len() - k;
    if (remaining.total() as usize) < slots_left {
        return;
    }
    let floor = (k > 0 && slot_var[k - 1] == slot_var[k]).then(|| current[k - 1].clone());
    for s in subdegrees {
        if !s.le(&remaining) {
            continue;
        }
        let rest = remaining.checked_sub(s).unwrap();
        if slots_left == 1 && !rest.is_zero() {
            continue;
        }
        if (rest.total() as usize) < slots_left - 1 {
            continue;
        }
        let n = dim(s);
        for i in 0..n {
            let v = (s.clone(), i);
            if let Some(f) = &floor {
                if v < *f {
                    continue;
                }
            }
            current.push(v);
            fill(slot_var, subdegrees, dim, rest.clone(), current, emit);
            current.pop();
        }
    }
}

/// Distinct orderings of a multiset, in lexicographic order.
pub fn distinct_arrangements<T: Clone + Ord>(values: &[T]) -> Vec<Vec<T>> {
    let mut cur = values.to_vec();
    cur.sort();
    let mut out = Vec::new();
    let n = cur.len();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

/// One monomial of an identity with each leaf tagged by (variable position
/// in the shape, occurrence number).
#[derive(Debug, Clone)]
pub enum Tree {
    Leaf { var: usize, occ: usize },
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn build(m: &Monomial, var_pos: &dyn Fn(u8) -> usize, seen: &mut Vec<usize>) -> Tree {
        match m.split() {
            None => {
                let j = var_pos(m.leaf_var().unwrap());
                let occ = seen[j];
                seen[j] += 1;
                Tree::Leaf { var: j, occ }
            }
            Some((l, r)) => {
                let l = Tree::build(&l, var_pos, seen);
                let r = Tree::build(&r, var_pos, seen);
                Tree::Node(Box::new(l), Box::new(r))
            }
        }
    }
}

/// An identity prepared for substitution: its shape and tagged monomials.
#[derive(Debug, Clone)]
pub struct Template {
    pub shape: Shape,
    pub terms: Vec<(Tree, Scalar)>,
}

impl Template {
    /// `None` when `p` is zero or not multihomogeneous.
    pub fn new(p: &Polynomial) -> Option<Template> {
        let shape = Shape::of(p)?;
        let pos = |v: u8| shape.vars.iter().position(|x| x.0 == v).unwrap();
        let terms = p
            .terms()
            .map(|(m, c)| {
                let mut seen = vec![0; shape.vars.len()];
                (Tree::build(m, &pos, &mut seen), c.clone())
            })
            .collect();
        Some(Template { shape, terms })
    }

    /// Every occurrence assignment realizing the partial linearization at
    /// `filling`: `assignment[var][occ]` is the value placed there.
    pub fn arrangements<T: Clone + Ord>(&self, filling: &[Vec<T>]) -> Vec<Vec<Vec<T>>> {
        let mut out: Vec<Vec<Vec<T>>> = vec![Vec::new()];
        for values in filling {
            let options = distinct_arrangements(values);
            let mut next = Vec::with_capacity(out.len() * options.len());
            for prefix in &out {
                for o in &options {
                    let mut p = prefix.clone();
                    p.push(o.clone());
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }
}

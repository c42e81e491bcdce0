//! Monomials of the free (planar or commutative) magmatic algebra.
//!
//! A monomial is a full binary tree with variable-labeled leaves, stored as
//! its preorder code: `0` marks an internal node, `k >= 1` a leaf `t_k`.
//! Monomials are ordered by degree first, then lexicographically by code.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;

use super::{Flavor, Multidegree};
use crate::error::{Error, Result};

const NODE: u8 = 0;

type Code = SmallVec<[u8; 16]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    code: Code,
}

/// Length of the subtree code starting at `code[0]`.
fn subtree_len(code: &[u8]) -> usize {
    let mut need = 1usize;
    let mut i = 0;
    while need > 0 {
        if code[i] == NODE {
            need += 1;
        } else {
            need -= 1;
        }
        i += 1;
    }
    i
}

impl Monomial {
    pub fn leaf(var: u8) -> Monomial {
        assert!(var >= 1, "variables are numbered from 1");
        Monomial {
            code: smallvec::smallvec![var],
        }
    }

    /// Planar product: a new root with children `(a, b)` in order.
    pub fn join_planar(a: &Monomial, b: &Monomial) -> Monomial {
        let mut code = Code::with_capacity(1 + a.code.len() + b.code.len());
        code.push(NODE);
        code.extend_from_slice(&a.code);
        code.extend_from_slice(&b.code);
        Monomial { code }
    }

    /// Product in the given flavor; commutative roots put the smaller child first.
    /// Both factors must already be canonical for the flavor.
    pub fn join(a: &Monomial, b: &Monomial, flavor: Flavor) -> Monomial {
        match flavor {
            Flavor::Planar => Self::join_planar(a, b),
            Flavor::Commutative => {
                if a <= b {
                    Self::join_planar(a, b)
                } else {
                    Self::join_planar(b, a)
                }
            }
        }
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn from_code(code: &[u8]) -> Result<Monomial> {
        if code.is_empty() || subtree_len_checked(code) != Some(code.len()) {
            return Err(Error::Invalid("malformed monomial code".into()));
        }
        Ok(Monomial {
            code: Code::from_slice(code),
        })
    }

    pub fn degree(&self) -> usize {
        self.code.len().div_ceil(2)
    }

    pub fn is_leaf(&self) -> bool {
        self.code.len() == 1
    }

    pub fn leaf_var(&self) -> Option<u8> {
        self.is_leaf().then(|| self.code[0])
    }

    /// Children of the root, or `None` for a leaf.
    pub fn split(&self) -> Option<(Monomial, Monomial)> {
        if self.is_leaf() {
            return None;
        }
        let l = subtree_len(&self.code[1..]);
        Some((
            Monomial {
                code: Code::from_slice(&self.code[1..1 + l]),
            },
            Monomial {
                code: Code::from_slice(&self.code[1 + l..]),
            },
        ))
    }

    /// Leaf variables, left to right.
    pub fn leaves(&self) -> impl Iterator<Item = u8> + '_ {
        self.code.iter().copied().filter(|&c| c != NODE)
    }

    pub fn multidegree(&self) -> Multidegree {
        let mut d = Multidegree::default();
        for v in self.leaves() {
            d.increment(v);
        }
        d
    }

    /// Canonical commutative form: every node's children sorted.
    pub fn canonical_commutative(&self) -> Monomial {
        match self.split() {
            None => self.clone(),
            Some((l, r)) => Monomial::join(
                &l.canonical_commutative(),
                &r.canonical_commutative(),
                Flavor::Commutative,
            ),
        }
    }

    pub fn canonical(&self, flavor: Flavor) -> Monomial {
        match flavor {
            Flavor::Planar => self.clone(),
            Flavor::Commutative => self.canonical_commutative(),
        }
    }

    /// Replaces the `k`-th occurrence (0-based, left to right) of each leaf
    /// variable `v` by `value(v, k)`.
    pub fn substitute<'a>(
        &self,
        flavor: Flavor,
        mut value: impl FnMut(u8, usize) -> &'a Monomial,
    ) -> Monomial {
        let mut seen = [0usize; 256];
        let mut code = Code::new();
        for &c in self.code.iter() {
            if c == NODE {
                code.push(NODE);
            } else {
                let m = value(c, seen[c as usize]);
                seen[c as usize] += 1;
                code.extend_from_slice(&m.code);
            }
        }
        Monomial { code }.canonical(flavor)
    }

    /// Renames leaf variables.
    pub fn rename(&self, flavor: Flavor, map: impl Fn(u8) -> u8) -> Monomial {
        let code = self
            .code
            .iter()
            .map(|&c| if c == NODE { NODE } else { map(c) })
            .collect();
        Monomial { code }.canonical(flavor)
    }

    /// Swaps the children of the node whose code starts at `pos`; used by tests
    /// of commutative canonicalization.
    pub fn swap_children_at(&self, pos: usize) -> Monomial {
        if self.code[pos] != NODE {
            return self.clone();
        }
        let l = subtree_len(&self.code[pos + 1..]);
        let r = subtree_len(&self.code[pos + 1 + l..]);
        let mut code = Code::from_slice(&self.code[..=pos]);
        code.extend_from_slice(&self.code[pos + 1 + l..pos + 1 + l + r]);
        code.extend_from_slice(&self.code[pos + 1..pos + 1 + l]);
        code.extend_from_slice(&self.code[pos + 1 + l + r..]);
        Monomial { code }
    }

    fn fmt_code(code: &[u8], out: &mut String) {
        if code[0] != NODE {
            out.push('t');
            out.push_str(&code[0].to_string());
            return;
        }
        let l = subtree_len(&code[1..]);
        out.push('(');
        Self::fmt_code(&code[1..1 + l], out);
        out.push(' ');
        Self::fmt_code(&code[1 + l..], out);
        out.push(')');
    }
}

fn subtree_len_checked(code: &[u8]) -> Option<usize> {
    let mut need = 1usize;
    let mut i = 0;
    while need > 0 {
        let c = *code.get(i)?;
        if c == NODE {
            need += 1;
        } else {
            need -= 1;
        }
        i += 1;
    }
    Some(i)
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code
            .len()
            .cmp(&other.code.len())
            .then_with(|| self.code.as_slice().cmp(other.code.as_slice()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        Self::fmt_code(&self.code, &mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Decodes the text encoding `t<k>` / `(<left> <right>)`.
impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Monomial> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let m = parse_monomial(bytes, &mut pos)?;
        skip_ws(bytes, &mut pos);
        if pos != bytes.len() {
            return Err(Error::Syntax {
                pos,
                msg: "trailing input after monomial".into(),
            });
        }
        Ok(m)
    }
}

fn skip_ws(b: &[u8], pos: &mut usize) {
    while *pos < b.len() && b[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn parse_monomial(b: &[u8], pos: &mut usize) -> Result<Monomial> {
    skip_ws(b, pos);
    let err = |pos: usize, msg: &str| Error::Syntax {
        pos,
        msg: msg.to_string(),
    };
    match b.get(*pos) {
        Some(b'(') => {
            *pos += 1;
            let l = parse_monomial(b, pos)?;
            let r = parse_monomial(b, pos)?;
            skip_ws(b, pos);
            if b.get(*pos) != Some(&b')') {
                return Err(err(*pos, "expected `)`"));
            }
            *pos += 1;
            Ok(Monomial::join_planar(&l, &r))
        }
        Some(b't') => {
            *pos += 1;
            let start = *pos;
            while *pos < b.len() && b[*pos].is_ascii_digit() {
                *pos += 1;
            }
            let k: u8 = std::str::from_utf8(&b[start..*pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| err(start, "expected variable index"))?;
            Ok(Monomial::leaf(k))
        }
        _ => Err(err(*pos, "expected `(` or `t<k>`")),
    }
}

/// All monomials of multidegree `d`, sorted by canonical encoding.
pub fn enumerate_monomials(d: &Multidegree, flavor: Flavor) -> Result<Vec<Monomial>> {
    if d.total() == 0 {
        return Err(Error::EmptyMultidegree);
    }
    let mut memo = HashMap::new();
    Ok(enumerate_memo(d, flavor, &mut memo))
}

fn enumerate_memo(
    d: &Multidegree,
    flavor: Flavor,
    memo: &mut HashMap<Multidegree, Vec<Monomial>>,
) -> Vec<Monomial> {
    if let Some(v) = memo.get(d) {
        return v.clone();
    }
    let mut out = Vec::new();
    if d.total() == 1 {
        let var = d.variables().next().expect("degree one");
        out.push(Monomial::leaf(var));
    } else {
        for (a, b) in d.splits() {
            if flavor == Flavor::Commutative && a > b {
                continue;
            }
            let left = enumerate_memo(&a, flavor, memo);
            let right = enumerate_memo(&b, flavor, memo);
            for (i, x) in left.iter().enumerate() {
                for (j, y) in right.iter().enumerate() {
                    if flavor == Flavor::Commutative && a == b && j < i {
                        continue;
                    }
                    out.push(Monomial::join(x, y, flavor));
                }
            }
        }
        out.sort();
    }
    memo.insert(d.clone(), out.clone());
    out
}

/// Number of monomials of multidegree `d` without materializing them.
pub fn monomial_count(d: &Multidegree, flavor: Flavor) -> u128 {
    fn go(d: &Multidegree, flavor: Flavor, memo: &mut HashMap<Multidegree, u128>) -> u128 {
        if d.total() <= 1 {
            return d.total() as u128;
        }
        if let Some(&c) = memo.get(d) {
            return c;
        }
        let mut total = 0u128;
        for (a, b) in d.splits() {
            match flavor {
                Flavor::Planar => total += go(&a, flavor, memo) * go(&b, flavor, memo),
                Flavor::Commutative => {
                    if a < b {
                        total += go(&a, flavor, memo) * go(&b, flavor, memo);
                    } else if a == b {
                        let c = go(&a, flavor, memo);
                        total += c * (c + 1) / 2;
                    }
                }
            }
        }
        memo.insert(d.clone(), total);
        total
    }
    go(d, flavor, &mut HashMap::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(s: &str) -> Monomial {
        s.parse().unwrap()
    }

    #[test]
    fn planar_products_are_ordered() {
        let t1 = Monomial::leaf(1);
        let t2 = Monomial::leaf(2);
        let a = Monomial::join(&t1, &t2, Flavor::Planar);
        let b = Monomial::join(&t2, &t1, Flavor::Planar);
        assert_eq!(a.to_string(), "(t1 t2)");
        assert_ne!(a, b);
        let c = Monomial::join(&a, &Monomial::leaf(3), Flavor::Planar);
        assert_eq!(c.to_string(), "((t1 t2) t3)");
        assert_eq!(c.degree(), 3);
    }

    #[test]
    fn commutative_products_are_canonical() {
        let t1 = Monomial::leaf(1);
        let t2 = Monomial::leaf(2);
        assert_eq!(
            Monomial::join(&t2, &t1, Flavor::Commutative),
            Monomial::join(&t1, &t2, Flavor::Commutative)
        );
    }

    #[test]
    fn multidegrees() {
        assert_eq!(m("((t1 t1) t2)").multidegree().entries(), &[2, 1]);
        assert_eq!(m("t3").multidegree().entries(), &[0, 0, 1]);
        assert_eq!(
            m("(((t1 t2) t1) (t3 t1))").multidegree().entries(),
            &[3, 1, 1]
        );
    }

    #[test]
    fn split_and_decode() {
        let x = m("((t1 t2) (t3 (t1 t1)))");
        let (l, r) = x.split().unwrap();
        assert_eq!(l.to_string(), "(t1 t2)");
        assert_eq!(r.to_string(), "(t3 (t1 t1))");
        assert!("(t1 t2".parse::<Monomial>().is_err());
        assert!("(t0 t2)".parse::<Monomial>().is_err());
        assert_eq!(Monomial::from_code(x.code()).unwrap(), x);
        assert!(Monomial::from_code(&[0, 1]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let planar = |v: &[u32]| enumerate_monomials(&Multidegree::new(v.to_vec()), Flavor::Planar);
        assert_eq!(planar(&[1, 1, 1]).unwrap().len(), 12);
        assert_eq!(
            monomial_count(&Multidegree::new([3, 3, 2]), Flavor::Planar),
            240_240
        );
        assert_eq!(
            enumerate_monomials(&Multidegree::new([1, 1, 1, 1]), Flavor::Commutative)
                .unwrap()
                .len(),
            15
        );
        assert!(enumerate_monomials(&Multidegree::default(), Flavor::Planar).is_err());
    }

    #[test]
    fn substitution_splices_subtrees() {
        let f = m("(t1 (t2 t1))");
        let a = m("(t2 t1)");
        let b = m("t3");
        let c = m("t1");
        let out = f.substitute(Flavor::Planar, |v, k| match (v, k) {
            (1, 0) => &a,
            (1, _) => &c,
            _ => &b,
        });
        assert_eq!(out.to_string(), "((t2 t1) (t3 t1))");
        let comm = f.substitute(Flavor::Commutative, |v, k| match (v, k) {
            (1, 0) => &a,
            (1, _) => &c,
            _ => &b,
        });
        assert_eq!(comm.to_string(), "((t1 t2) (t1 t3))");
    }
}

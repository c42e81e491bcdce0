use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Multiplicity of each variable `t1, t2, ...`, trailing zeros trimmed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multidegree(SmallVec<[u32; 6]>);

impl Multidegree {
    pub fn new(mults: impl IntoIterator<Item = u32>) -> Self {
        let mut v: SmallVec<[u32; 6]> = mults.into_iter().collect();
        while v.last() == Some(&0) {
            v.pop();
        }
        Multidegree(v)
    }

    /// All-ones multidegree of the given length.
    pub fn multilinear(n: usize) -> Self {
        Self::new(std::iter::repeat_n(1, n))
    }

    /// Multidegree of the single variable `t_var`.
    pub fn unit(var: u8) -> Self {
        let mut v: SmallVec<[u32; 6]> = SmallVec::from_elem(0, var as usize);
        v[var as usize - 1] = 1;
        Multidegree(v)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim().trim_start_matches('[').trim_end_matches(']');
        let mults = text
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Invalid(format!("bad multidegree entry `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Multidegree::new(mults);
        if d.total() == 0 {
            return Err(Error::EmptyMultidegree);
        }
        Ok(d)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, var: u8) -> u32 {
        self.0.get(var as usize - 1).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        let n = self.0.len().max(other.0.len());
        Multidegree::new((0..n).map(|i| {
            self.0.get(i).copied().unwrap_or(0) + other.0.get(i).copied().unwrap_or(0)
        }))
    }

    /// `None` unless `other <= self` componentwise.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if !other.le(self) {
            return None;
        }
        Some(Multidegree::new(self.0.iter().enumerate().map(|(i, &a)| {
            a - other.0.get(i).copied().unwrap_or(0)
        })))
    }

    /// Componentwise order.
    pub fn le(&self, other: &Multidegree) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &a)| a <= other.0.get(i).copied().unwrap_or(0))
    }

    pub fn increment(&mut self, var: u8) {
        let i = var as usize - 1;
        if self.0.len() <= i {
            self.0.resize(i + 1, 0);
        }
        self.0[i] += 1;
    }

    /// Every nonzero `e <= self`, in a fixed order (by total degree, then entries).
    pub fn nonzero_submultidegrees(&self) -> Vec<Multidegree> {
        let mut out = vec![Multidegree::default()];
        for (i, &m) in self.0.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * (m as usize + 1));
            for base in &out {
                for k in 0..=m {
                    let mut v: SmallVec<[u32; 6]> = base.0.clone();
                    v.resize(i + 1, 0);
                    v[i] = k;
                    next.push(Multidegree(v));
                }
            }
            out = next;
        }
        let mut out: Vec<Multidegree> = out
            .into_iter()
            .map(|d| Multidegree::new(d.0))
            .filter(|d| !d.is_zero())
            .collect();
        out.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| a.cmp(b)));
        out
    }

    /// Ordered pairs `(a, b)` of nonzero multidegrees with `a + b = self`.
    pub fn splits(&self) -> Vec<(Multidegree, Multidegree)> {
        self.nonzero_submultidegrees()
            .into_iter()
            .filter_map(|a| {
                let b = self.checked_sub(&a)?;
                (!b.is_zero()).then_some((a, b))
            })
            .collect()
    }

    /// Variables occurring with multiplicity one, used to spot permutable slots.
    pub fn variables(&self) -> impl Iterator<Item = u8> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(i, _)| (i + 1) as u8)
    }
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Multidegree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multidegree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Multidegree::new(Vec::<u32>::deserialize(d)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trims_and_sums() {
        let d = Multidegree::new([2, 1, 0, 0]);
        assert_eq!(d.entries(), &[2, 1]);
        assert_eq!(d.total(), 3);
        assert_eq!(d.to_string(), "[2,1]");
        assert_eq!(Multidegree::parse("3,3,2").unwrap(), Multidegree::new([3, 3, 2]));
        assert!(Multidegree::parse("0,0").is_err());
    }

    #[test]
    fn submultidegrees_and_splits() {
        let d = Multidegree::new([2, 1]);
        assert_eq!(d.nonzero_submultidegrees().len(), 5);
        assert_eq!(d.splits().len(), 4);
        assert_eq!(Multidegree::new([3, 3, 2]).nonzero_submultidegrees().len(), 47);
        assert!(Multidegree::new([1, 0, 1]).le(&Multidegree::new([1, 1, 1])));
        assert!(!Multidegree::new([2]).le(&Multidegree::new([1, 1])));
    }
}

//! The identity language: parsing, printing, macro expansion into the free
//! algebra, the star and q-commutator substitutions, and polarization.

mod ast;
mod eval;
mod macros;
mod parser;

use std::collections::HashMap;

use num_rational::BigRational;

pub use ast::Expr;
pub use eval::{Algebra, Evaluator};
pub use macros::{MacroBody, MacroDef, MacroTable};

pub(crate) use eval::push_unique;

use crate::error::{Error, Result};
use crate::term::{Field, Flavor, Monomial, Polynomial, Scalar};

/// Parses against the built-in macro table.
pub fn parse(text: &str) -> Result<Expr> {
    parser::parse_with(text, MacroTable::builtin())
}

pub fn parse_with(text: &str, macros: &MacroTable) -> Result<Expr> {
    parser::parse_with(text, macros)
}

/// The free algebra of a flavor over a field, as an evaluation target.
#[derive(Debug, Clone, Copy)]
pub struct FreeAlgebra {
    pub flavor: Flavor,
    pub field: Field,
}

impl Algebra for FreeAlgebra {
    type Elem = Polynomial;

    fn var(&self, k: u8) -> Result<Polynomial> {
        Ok(Polynomial::variable(k, self.flavor, self.field))
    }
    fn zero(&self) -> Polynomial {
        Polynomial::zero(self.flavor, self.field)
    }
    fn add(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        a.add(b)
    }
    fn scale(&self, a: &Polynomial, c: &BigRational) -> Result<Polynomial> {
        a.scale(&self.field.from_rational(c)?)
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
        a.mul(b)
    }
    fn is_commutative(&self) -> bool {
        self.flavor == Flavor::Commutative
    }
}

/// An expanded polynomial together with evaluation warnings.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub poly: Polynomial,
    pub warnings: Vec<String>,
}

/// Expands into the free algebra over ℚ.
pub fn expand(e: &Expr, flavor: Flavor) -> Result<Polynomial> {
    Ok(expand_with(e, flavor, Field::Rational, MacroTable::builtin())?.poly)
}

pub fn expand_with(e: &Expr, flavor: Flavor, field: Field, macros: &MacroTable) -> Result<Expansion> {
    let alg = FreeAlgebra { flavor, field };
    let mut ev = Evaluator::new(&alg, macros);
    let poly = ev.eval(e)?;
    Ok(Expansion {
        poly,
        warnings: ev.into_warnings(),
    })
}

/// Replaces every product node `xy` by `xy + q yx`, bottom-up, landing in the
/// planar free algebra.
fn twist_products(p: &Polynomial, q: &Scalar) -> Result<Polynomial> {
    let field = p.field();
    let mut memo: HashMap<Monomial, Polynomial> = HashMap::new();
    fn image(
        m: &Monomial,
        q: &Scalar,
        field: Field,
        memo: &mut HashMap<Monomial, Polynomial>,
    ) -> Result<Polynomial> {
        if let Some(v) = memo.get(m) {
            return Ok(v.clone());
        }
        let v = match m.split() {
            None => Polynomial::from_monomial(m.clone(), Flavor::Planar, field),
            Some((l, r)) => {
                let a = image(&l, q, field, memo)?;
                let b = image(&r, q, field, memo)?;
                a.mul(&b)?.add_scaled(q, &b.mul(&a)?)?
            }
        };
        memo.insert(m.clone(), v.clone());
        Ok(v)
    }
    let mut out = Polynomial::zero(Flavor::Planar, field);
    for (m, c) in p.terms() {
        out = out.add_scaled(c, &image(m, q, field, &mut memo)?)?;
    }
    Ok(out)
}

/// Image of a commutative polynomial in the planar algebra under `xy ↦ xy + yx`.
pub fn star_expand(p: &Polynomial) -> Result<Polynomial> {
    if p.flavor() != Flavor::Commutative {
        return Err(Error::FlavorMismatch("star_expand expects a commutative polynomial".into()));
    }
    twist_products(p, &p.field().one())
}

/// The substitution endomorphism replacing each product by `xy + q yx`.
pub fn apply_sigma_q(p: &Polynomial, q: &BigRational) -> Result<Polynomial> {
    if p.flavor() != Flavor::Planar {
        return Err(Error::FlavorMismatch("apply_sigma_q expects a planar polynomial".into()));
    }
    twist_products(p, &p.field().from_rational(q)?)
}

/// Expands a planar expression and applies `σ_q`.
pub fn apply_sigma_q_expr(e: &Expr, q: &BigRational) -> Result<Polynomial> {
    apply_sigma_q(&expand(e, Flavor::Planar)?, q)
}

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
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

/// Leaf monomial `t_k` with a static lifetime.
pub(crate) fn leaf_ref(var: u8) -> &'static Monomial {
    static LEAVES: std::sync::OnceLock<Vec<Monomial>> = std::sync::OnceLock::new();
    &LEAVES.get_or_init(|| (0..=255u8).map(|k| Monomial::leaf(k.max(1))).collect())[var as usize]
}

/// Full linearization of `v`: each term's `k` occurrences of `v` are assigned
/// bijectively to `replacements` in every possible way and summed.
pub fn polarize(p: &Polynomial, v: u8, replacements: &[u8]) -> Result<Polynomial> {
    let k = replacements.len();
    let perms = permutations(k);
    let mut out = Polynomial::zero(p.flavor(), p.field());
    for (m, c) in p.terms() {
        let mult = m.leaves().filter(|&x| x == v).count();
        if mult != k {
            return Err(Error::NotMultihomogeneous(format!(
                "t{v} occurs {mult} times in {m}, expected {k}"
            )));
        }
        let images = perms.iter().map(|perm| {
            let image = m.substitute(p.flavor(), |var, occ| {
                leaf_ref(if var == v { replacements[perm[occ]] } else { var })
            });
            (image, c.clone())
        });
        out = out.add(&Polynomial::from_terms(p.flavor(), p.field(), images)?)?;
    }
    Ok(out)
}

/// Canonical text of a polynomial; parsing it back in the same flavor
/// reproduces the polynomial.
pub fn print(p: &Polynomial) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests;

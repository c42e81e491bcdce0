use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::Expr;
use super::macros::MacroTable;
use crate::error::{Error, Result};

/// A target for evaluating expressions: anything with a bilinear product.
///
/// Derived operations (`@`, brackets, associators, q-products) are expressed
/// through `mul`. A commutative algebra reports so through `is_commutative`;
/// its star is then `2xy` and its bracket vanishes.
pub trait Algebra {
    type Elem: Clone;

    fn var(&self, k: u8) -> Result<Self::Elem>;
    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, a: &Self::Elem, c: &BigRational) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    fn is_commutative(&self) -> bool {
        false
    }

    /// Called for a literal bracket in a commutative algebra.
    fn commutative_bracket(&self, warnings: &mut Vec<String>) -> Result<Self::Elem> {
        push_unique(warnings, "bracket in a commutative algebra evaluates to zero");
        Ok(self.zero())
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let nb = self.scale(b, &BigRational::from_integer(BigInt::from(-1)))?;
        self.add(a, &nb)
    }
}

pub(crate) fn push_unique(warnings: &mut Vec<String>, w: &str) {
    if !warnings.iter().any(|x| x == w) {
        warnings.push(w.to_string());
    }
}

/// Evaluates expressions in an algebra, expanding macros on the fly.
pub struct Evaluator<'a, A: Algebra> {
    alg: &'a A,
    macros: &'a MacroTable,
    warnings: Vec<String>,
}

impl<'a, A: Algebra> Evaluator<'a, A> {
    pub fn new(alg: &'a A, macros: &'a MacroTable) -> Self {
        Evaluator {
            alg,
            macros,
            warnings: Vec::new(),
        }
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn into_warnings(self) -> Vec<String> {
        self.warnings
    }

    /// Evaluates with each variable `t_k` mapped to the algebra's generator.
    pub fn eval(&mut self, e: &Expr) -> Result<A::Elem> {
        self.eval_in(e, None)
    }

    /// Evaluates with `t_k` bound to `values[k-1]`.
    pub fn eval_at(&mut self, e: &Expr, values: &[A::Elem]) -> Result<A::Elem> {
        self.eval_in(e, Some(values))
    }

    fn star(&mut self, a: &A::Elem, b: &A::Elem) -> Result<A::Elem> {
        let ab = self.alg.mul(a, b)?;
        if self.alg.is_commutative() {
            self.alg.add(&ab, &ab)
        } else {
            let ba = self.alg.mul(b, a)?;
            self.alg.add(&ab, &ba)
        }
    }

    fn assoc_with(
        &mut self,
        xs: [A::Elem; 3],
        op: fn(&mut Self, &A::Elem, &A::Elem) -> Result<A::Elem>,
    ) -> Result<A::Elem> {
        let [x, y, z] = xs;
        let yz = op(self, &y, &z)?;
        let left = op(self, &x, &yz)?;
        let xy = op(self, &x, &y)?;
        let right = op(self, &xy, &z)?;
        self.alg.sub(&left, &right)
    }

    fn plain_mul(&mut self, a: &A::Elem, b: &A::Elem) -> Result<A::Elem> {
        self.alg.mul(a, b)
    }

    fn three(&mut self, xs: &[Expr; 3], env: Option<&[A::Elem]>) -> Result<[A::Elem; 3]> {
        Ok([
            self.eval_in(&xs[0], env)?,
            self.eval_in(&xs[1], env)?,
            self.eval_in(&xs[2], env)?,
        ])
    }

    fn eval_in(&mut self, e: &Expr, env: Option<&[A::Elem]>) -> Result<A::Elem> {
        match e {
            Expr::Var(k) => match env {
                None => self.alg.var(*k),
                Some(vals) => vals.get(*k as usize - 1).cloned().ok_or_else(|| {
                    Error::Invalid(format!("t{k} is not bound in a macro body"))
                }),
            },
            Expr::Zero => Ok(self.alg.zero()),
            Expr::Sum(ts) => {
                let mut acc = self.alg.zero();
                for (c, t) in ts {
                    let v = self.eval_in(t, env)?;
                    acc = self.alg.add(&acc, &self.alg.scale(&v, c)?)?;
                }
                Ok(acc)
            }
            Expr::Mul(a, b) => {
                let (a, b) = (self.eval_in(a, env)?, self.eval_in(b, env)?);
                self.alg.mul(&a, &b)
            }
            Expr::Star(a, b) => {
                let (a, b) = (self.eval_in(a, env)?, self.eval_in(b, env)?);
                self.star(&a, &b)
            }
            Expr::Bracket(a, b) => {
                let (a, b) = (self.eval_in(a, env)?, self.eval_in(b, env)?);
                if self.alg.is_commutative() {
                    return self.alg.commutative_bracket(&mut self.warnings);
                }
                let ab = self.alg.mul(&a, &b)?;
                let ba = self.alg.mul(&b, &a)?;
                self.alg.sub(&ab, &ba)
            }
            Expr::QMul(q, a, b) => {
                let (a, b) = (self.eval_in(a, env)?, self.eval_in(b, env)?);
                let ab = self.alg.mul(&a, &b)?;
                let ba = self.alg.mul(&b, &a)?;
                self.alg.add(&ab, &self.alg.scale(&ba, q)?)
            }
            Expr::Assoc(xs) => {
                let vals = self.three(xs, env)?;
                self.assoc_with(vals, Self::plain_mul)
            }
            Expr::PlusAssoc(xs) => {
                let vals = self.three(xs, env)?;
                self.assoc_with(vals, Self::star)
            }
            Expr::Macro { name, q, args } => {
                let def = self
                    .macros
                    .get(name)
                    .ok_or_else(|| Error::UnknownMacro(name.clone()))?;
                if args.len() != def.arity {
                    return Err(Error::Arity {
                        name: name.clone(),
                        expected: def.arity,
                        got: args.len(),
                    });
                }
                let body = def.instantiate(q.as_ref())?;
                let vals = args
                    .iter()
                    .map(|a| self.eval_in(a, env))
                    .collect::<Result<Vec<_>>>()?;
                self.eval_in(&body, Some(&vals))
            }
        }
    }
}

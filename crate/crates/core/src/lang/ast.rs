use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Expression tree of the identity language.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(u8),
    Zero,
    /// Linear combination with rational coefficients.
    Sum(Vec<(BigRational, Expr)>),
    /// The ambient product.
    Mul(Box<Expr>, Box<Expr>),
    /// `x@y = xy + yx`.
    Star(Box<Expr>, Box<Expr>),
    /// `[x,y] = xy - yx`.
    Bracket(Box<Expr>, Box<Expr>),
    /// `q{q=r}(x,y) = xy + r yx`.
    QMul(BigRational, Box<Expr>, Box<Expr>),
    /// `A(x,y,z) = x(yz) - (xy)z`.
    Assoc(Box<[Expr; 3]>),
    /// `J(x,y,z)`, the associator of `@`.
    PlusAssoc(Box<[Expr; 3]>),
    Macro {
        name: String,
        q: Option<BigRational>,
        args: Vec<Expr>,
    },
}

impl Expr {
    pub fn var(k: u8) -> Expr {
        Expr::Var(k)
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn star(a: Expr, b: Expr) -> Expr {
        Expr::Star(Box::new(a), Box::new(b))
    }

    pub fn bracket(a: Expr, b: Expr) -> Expr {
        Expr::Bracket(Box::new(a), Box::new(b))
    }

    pub fn assoc(a: Expr, b: Expr, c: Expr) -> Expr {
        Expr::Assoc(Box::new([a, b, c]))
    }

    pub fn plus_assoc(a: Expr, b: Expr, c: Expr) -> Expr {
        Expr::PlusAssoc(Box::new([a, b, c]))
    }

    pub fn call(name: &str, args: Vec<Expr>) -> Expr {
        Expr::Macro {
            name: name.to_string(),
            q: None,
            args,
        }
    }

    pub fn scaled(c: BigRational, e: Expr) -> Expr {
        Expr::Sum(vec![(c, e)])
    }

    /// `Σ c_i e_i` with small integer coefficients.
    pub fn combination(terms: Vec<(i64, Expr)>) -> Expr {
        Expr::Sum(
            terms
                .into_iter()
                .map(|(c, e)| (BigRational::from_integer(BigInt::from(c)), e))
                .collect(),
        )
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::combination(vec![(1, a), (-1, b)])
    }

    /// Renames variables, leaving macro bodies untouched (they bind their own).
    pub fn rename(&self, map: &impl Fn(u8) -> u8) -> Expr {
        let r = |e: &Expr| Box::new(e.rename(map));
        match self {
            Expr::Var(k) => Expr::Var(map(*k)),
            Expr::Zero => Expr::Zero,
            Expr::Sum(ts) => Expr::Sum(ts.iter().map(|(c, e)| (c.clone(), e.rename(map))).collect()),
            Expr::Mul(a, b) => Expr::Mul(r(a), r(b)),
            Expr::Star(a, b) => Expr::Star(r(a), r(b)),
            Expr::Bracket(a, b) => Expr::Bracket(r(a), r(b)),
            Expr::QMul(q, a, b) => Expr::QMul(q.clone(), r(a), r(b)),
            Expr::Assoc(xs) => Expr::Assoc(Box::new(xs.clone().map(|e| e.rename(map)))),
            Expr::PlusAssoc(xs) => Expr::PlusAssoc(Box::new(xs.clone().map(|e| e.rename(map)))),
            Expr::Macro { name, q, args } => Expr::Macro {
                name: name.clone(),
                q: q.clone(),
                args: args.iter().map(|e| e.rename(map)).collect(),
            },
        }
    }

    /// Largest variable index occurring (0 if none).
    pub fn max_variable(&self) -> u8 {
        match self {
            Expr::Var(k) => *k,
            Expr::Zero => 0,
            Expr::Sum(ts) => ts.iter().map(|(_, e)| e.max_variable()).max().unwrap_or(0),
            Expr::Mul(a, b) | Expr::Star(a, b) | Expr::Bracket(a, b) | Expr::QMul(_, a, b) => {
                a.max_variable().max(b.max_variable())
            }
            Expr::Assoc(xs) | Expr::PlusAssoc(xs) => {
                xs.iter().map(Expr::max_variable).max().unwrap_or(0)
            }
            Expr::Macro { args, .. } => args.iter().map(Expr::max_variable).max().unwrap_or(0),
        }
    }

    /// Whether a bracket occurs outside macro calls.
    pub fn has_literal_bracket(&self) -> bool {
        match self {
            Expr::Bracket(..) => true,
            Expr::Var(_) | Expr::Zero => false,
            Expr::Sum(ts) => ts.iter().any(|(_, e)| e.has_literal_bracket()),
            Expr::Mul(a, b) | Expr::Star(a, b) | Expr::QMul(_, a, b) => {
                a.has_literal_bracket() || b.has_literal_bracket()
            }
            Expr::Assoc(xs) | Expr::PlusAssoc(xs) => xs.iter().any(Expr::has_literal_bracket),
            Expr::Macro { args, .. } => args.iter().any(Expr::has_literal_bracket),
        }
    }
}

fn is_atomic(e: &Expr) -> bool {
    !matches!(e, Expr::Sum(_) | Expr::Mul(..) | Expr::Star(..))
}

fn fmt_factor(e: &Expr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if is_atomic(e) {
        write!(f, "{e}")
    } else {
        write!(f, "({e})")
    }
}

fn fmt_args(args: &[Expr], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// Prints in the input syntax; the output parses back to an equal tree up to
/// the grouping of sums and products.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(k) => write!(f, "t{k}"),
            Expr::Zero => write!(f, "0"),
            Expr::Sum(ts) if ts.is_empty() => write!(f, "0"),
            Expr::Sum(ts) => {
                for (i, (c, e)) in ts.iter().enumerate() {
                    let abs = c.abs();
                    match (i, c.is_negative()) {
                        (0, true) => write!(f, "-")?,
                        (0, false) => {}
                        (_, true) => write!(f, " - ")?,
                        (_, false) => write!(f, " + ")?,
                    }
                    if !abs.is_one() {
                        write!(f, "{abs} ")?;
                    }
                    if c.is_zero() || matches!(e, Expr::Sum(_)) {
                        write!(f, "({e})")?;
                    } else {
                        write!(f, "{e}")?;
                    }
                }
                Ok(())
            }
            Expr::Mul(a, b) => {
                fmt_factor(a, f)?;
                write!(f, " ")?;
                fmt_factor(b, f)
            }
            Expr::Star(a, b) => {
                fmt_factor(a, f)?;
                write!(f, " @ ")?;
                fmt_factor(b, f)
            }
            Expr::Bracket(a, b) => write!(f, "[{a},{b}]"),
            Expr::QMul(q, a, b) => write!(f, "q{{q={q}}}({a},{b})"),
            Expr::Assoc(xs) => {
                write!(f, "A(")?;
                fmt_args(&xs[..], f)?;
                write!(f, ")")
            }
            Expr::PlusAssoc(xs) => {
                write!(f, "J(")?;
                fmt_args(&xs[..], f)?;
                write!(f, ")")
            }
            Expr::Macro { name, q, args } => {
                write!(f, "{name}")?;
                if let Some(q) = q {
                    write!(f, "{{q={q}}}")?;
                }
                write!(f, "(")?;
                fmt_args(args, f)?;
                write!(f, ")")
            }
        }
    }
}

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::ast::Expr;
use super::parser::parse_with;
use crate::error::{Error, Result};

/// Body of a named polynomial.
#[derive(Clone)]
pub enum MacroBody {
    Expr(Expr),
    /// A family indexed by a rational parameter `q`.
    Family(fn(&BigRational) -> Expr),
}

#[derive(Clone)]
pub struct MacroDef {
    pub name: String,
    pub arity: usize,
    pub body: MacroBody,
    pub description: String,
}

impl MacroDef {
    pub fn takes_q(&self) -> bool {
        matches!(self.body, MacroBody::Family(_))
    }

    /// The body with `q` instantiated.
    pub fn instantiate(&self, q: Option<&BigRational>) -> Result<Expr> {
        match (&self.body, q) {
            (MacroBody::Expr(e), None) => Ok(e.clone()),
            (MacroBody::Family(f), Some(q)) => Ok(f(q)),
            (MacroBody::Expr(_), Some(_)) => {
                Err(Error::Invalid(format!("`{}` takes no parameter", self.name)))
            }
            (MacroBody::Family(_), None) => {
                Err(Error::Invalid(format!("`{}` needs a q parameter", self.name)))
            }
        }
    }
}

/// Named polynomials available to the parser and evaluator.
#[derive(Clone, Default)]
pub struct MacroTable {
    defs: BTreeMap<String, MacroDef>,
}

const BUILTINS: &[(&str, usize, &str, &str)] = &[
    ("lsym", 3, "A(t1,t2,t3) - A(t2,t1,t3)", "left symmetry of the associator"),
    ("rsym", 3, "A(t1,t2,t3) - A(t1,t3,t2)", "right symmetry of the associator"),
    ("jor", 2, "A(t1,t2,t1 t1)", "Jordan identity"),
    (
        "wjor",
        4,
        "A(t2,t1,t3 t4) + A(t3,t1,t4 t2) + A(t4,t1,t2 t3)",
        "multilinear Jordan polynomial",
    ),
    (
        "jor1",
        4,
        "t1(t2(t3 t4)) - t2(t1(t3 t4)) - t3(t1(t2 t4)) + t3(t2(t1 t4)) - (t1(t2 t3)) t4 + (t2(t1 t3)) t4",
        "[l_t1, l_t2] acting as a derivation on t3 t4",
    ),
    (
        "jor2",
        4,
        "wjor(t1,t2,t3,t4) - wjor(t2,t1,t3,t4) + wjor(t3,t1,t2,t4) - wjor(t4,t1,t2,t3)",
        "alternating combination of wjor",
    ),
    ("lietriple", 3, "A(t1,t2 t2,t3) - t2 @ A(t1,t2,t3)", "Lie triple identity"),
    (
        "assder",
        4,
        "A(t1,t2 t3,t4) - t2 A(t1,t3,t4) - A(t1,t2,t4) t3",
        "associator is a derivation in its middle slot",
    ),
    (
        "shest",
        3,
        "-3 J(t1,t3,t2) @ (J(t1,t1,1/2 t2 @ t2) - J(t1,t1,t2) @ t2) - 2 J(t1,J(t1,J(t1,t3,t2),t2),t2)",
        "Shestakov polynomial; the square of t2 is the Jordan square 1/2 t2 @ t2",
    ),
    (
        "glen",
        3,
        "shest(t1,t2,t3 @ t3) - 2 t3 @ shest(t1,t2,t3)",
        "Glennie identity (Leibniz rule for shest in its last slot)",
    ),
    ("D", 3, "[([t1,t2] @ [t1,t2]) @ [t1,t2], t3]", "commutator of the cube of [t1,t2] with t3"),
    ("g_4_1", 1, "A(t1,t1,t1 t1)", "degree-4 candidate of type [4]"),
    ("g_31_1", 2, "A(t1,t2,t1 t1)", "first candidate of type [3,1]"),
    (
        "g_31_2",
        2,
        "t2(t1(t1 t1)) + 2 t1(t1(t1 t2)) - 3 t1(t2(t1 t1))",
        "second candidate of type [3,1]",
    ),
    (
        "g_22_1",
        2,
        "(t1 t1)(t2 t2) - t1(t1(t2 t2)) - 2 t2(t1(t1 t2)) + 2 (t1 t2)(t1 t2)",
        "candidate of type [2,2]",
    ),
    (
        "g_211_1",
        3,
        "A(t1,t1,t2 t3) + A(t2,t1,t3 t1) + A(t3,t1,t1 t2)",
        "first candidate of type [2,1,1]",
    ),
    ("g_211_2", 3, "2 A(t1,t2,t1 t3) + A(t3,t2,t1 t1)", "second candidate of type [2,1,1]"),
    ("g_1111_1", 4, "wjor(t1,t2,t3,t4)", "multilinear candidate (the wjor reading)"),
    (
        "g_1111_1_literal",
        4,
        "A(t2,t1,t2 t3) + A(t3,t1,t1 t4) + A(t4,t1,t2 t3)",
        "multilinear candidate as literally printed (not multilinear)",
    ),
    ("h_22", 2, "g_22_1(t2,t1) - g_22_1(t1,t2)", "difference of the two [2,2] candidates"),
    (
        "h_211_1",
        3,
        "g_211_1(t1,t2,t3) - g_211_2(t1,t2,t3)",
        "first [2,1,1] difference",
    ),
    (
        "h_211_2",
        3,
        "g_211_2(t1,t2,t3) - g_211_2(t1,t3,t2)",
        "second [2,1,1] difference",
    ),
];

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Builds `Σ c(q) m` where `c` is an integer polynomial in `q`, given by
/// coefficients of `1, q, q²`.
fn q_combination(q: &BigRational, terms: &[([i64; 3], &str)]) -> Expr {
    let empty = MacroTable::default();
    Expr::Sum(
        terms
            .iter()
            .map(|(c, m)| {
                let coef = int(c[0]) + int(c[1]) * q + int(c[2]) * q * q;
                (coef, parse_with(m, &empty).expect("valid monomial"))
            })
            .collect(),
    )
}

/// Image of `lsym` under the `(-q)`-commutator substitution, term by term.
fn lsym_q(q: &BigRational) -> Expr {
    q_combination(
        q,
        &[
            ([1, 0, 0], "t1(t2 t3)"),
            ([0, -1, 0], "t1(t3 t2)"),
            ([-1, 0, 0], "t2(t1 t3)"),
            ([0, 1, 0], "t2(t3 t1)"),
            ([0, 1, 1], "t3(t1 t2)"),
            ([0, -1, -1], "t3(t2 t1)"),
            ([-1, -1, 0], "(t1 t2) t3"),
            ([1, 1, 0], "(t2 t1) t3"),
            ([0, 1, 0], "(t1 t3) t2"),
            ([0, 0, -1], "(t3 t1) t2"),
            ([0, -1, 0], "(t2 t3) t1"),
            ([0, 0, 1], "(t3 t2) t1"),
        ],
    )
}

/// Image of `rsym` under the `(-q)`-commutator substitution, term by term.
fn rsym_q(q: &BigRational) -> Expr {
    q_combination(
        q,
        &[
            ([1, 1, 0], "t1(t2 t3)"),
            ([-1, -1, 0], "t1(t3 t2)"),
            ([0, -1, 0], "t2(t1 t3)"),
            ([0, 0, 1], "t2(t3 t1)"),
            ([0, 1, 0], "t3(t1 t2)"),
            ([0, 0, -1], "t3(t2 t1)"),
            ([-1, 0, 0], "(t1 t2) t3"),
            ([1, 0, 0], "(t1 t3) t2"),
            ([0, 1, 0], "(t2 t1) t3"),
            ([0, -1, 0], "(t3 t1) t2"),
            ([0, -1, -1], "(t2 t3) t1"),
            ([0, 1, 1], "(t3 t2) t1"),
        ],
    )
}

impl MacroTable {
    /// The shared table of built-in polynomials.
    pub fn builtin() -> &'static MacroTable {
        static TABLE: OnceLock<MacroTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let mut t = MacroTable::default();
            for &(name, arity, body, description) in BUILTINS {
                t.define(name, arity, body, description)
                    .unwrap_or_else(|e| panic!("built-in `{name}`: {e}"));
            }
            t.insert(MacroDef {
                name: "lsym_q".into(),
                arity: 3,
                body: MacroBody::Family(lsym_q),
                description: "lsym twisted by the (-q)-commutator".into(),
            });
            t.insert(MacroDef {
                name: "rsym_q".into(),
                arity: 3,
                body: MacroBody::Family(rsym_q),
                description: "rsym twisted by the (-q)-commutator".into(),
            });
            t
        })
    }

    /// Adds a macro whose body is parsed against the macros defined so far.
    pub fn define(
        &mut self,
        name: &str,
        arity: usize,
        body: &str,
        description: &str,
    ) -> Result<()> {
        let e = parse_with(body, self)?;
        if e.max_variable() as usize > arity {
            return Err(Error::Invalid(format!(
                "body of `{name}` uses t{} but arity is {arity}",
                e.max_variable()
            )));
        }
        self.insert(MacroDef {
            name: name.to_string(),
            arity,
            body: MacroBody::Expr(e),
            description: description.to_string(),
        });
        Ok(())
    }

    fn insert(&mut self, def: MacroDef) {
        self.defs.insert(def.name.clone(), def);
    }

    pub fn get(&self, name: &str) -> Option<&MacroDef> {
        self.defs.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &MacroDef> {
        self.defs.values()
    }
}

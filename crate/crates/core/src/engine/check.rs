//! Identity verdicts with certificates or residuals.

use std::collections::HashMap;
use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::{expand_with, push_unique, star_expand, Algebra, Expr, MacroTable};
use crate::linalg::{Membership, SparseVector};
use crate::term::{monomial_count, Field, FieldOps, Flavor, Monomial, Multidegree, Polynomial};
use crate::tideal::{
    direct_spans, quotient_algebra, Plus, QuotientAlgebra, Route, RowOrigin, Strategy, VarietyPresentation,
};
use crate::with_field;

/// How a candidate is interpreted in the variety.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// The candidate is a polynomial of the variety's own flavor.
    Direct,
    /// The candidate is a commutative polynomial evaluated with `x⋆y = xy + yx`.
    Plus,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Mode> {
        match s {
            "direct" => Ok(Mode::Direct),
            "plus" => Ok(Mode::Plus),
            _ => Err(Error::Invalid(format!("unknown mode {s}; expected direct or plus"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckOptions {
    pub characteristic: u64,
    pub mode: Mode,
    pub strategy: Strategy,
    /// Keep generator rows so that identity verdicts carry a certificate.
    /// Only honored by the direct construction.
    pub certificate: bool,
    /// Restrict to one multihomogeneous component.
    pub multidegree: Option<Multidegree>,
    /// Force a construction instead of choosing by size.
    pub route: Option<Route>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            characteristic: 0,
            mode: Mode::Direct,
            strategy: Strategy::default(),
            certificate: true,
            multidegree: None,
            route: None,
        }
    }
}

impl CheckOptions {
    pub fn plus() -> Self {
        CheckOptions {
            mode: Mode::Plus,
            ..Self::default()
        }
    }

    pub fn with_char(mut self, p: u64) -> Self {
        self.characteristic = p;
        self
    }

    pub fn at(mut self, d: Multidegree) -> Self {
        self.multidegree = Some(d);
        self
    }
}

/// One consequence used by a certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateRow {
    pub coefficient: String,
    pub origin: String,
}

/// The candidate written as a combination of generated consequences.
#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub rows: Vec<CertificateRow>,
    /// The combination was recomputed and equals the candidate exactly.
    pub verified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentVerdict {
    pub multidegree: Multidegree,
    /// Monomials of the component in the variety's flavor.
    pub columns: u128,
    pub route: Route,
    pub fields: Vec<String>,
    pub is_zero: bool,
    /// Normal form in quotient-basis coordinates, one per field.
    pub residuals: Vec<String>,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub is_identity: bool,
    pub characteristic: u64,
    pub mode: Mode,
    pub variety: String,
    pub multidegrees: Vec<Multidegree>,
    pub components: Vec<ComponentVerdict>,
    pub timing_ms: u128,
    pub warnings: Vec<String>,
}

fn describe_origin(origin: &RowOrigin, v: &VarietyPresentation) -> String {
    match origin {
        RowOrigin::Instance { identity, values } => {
            let vals: Vec<String> = values
                .iter()
                .map(|vs| vs.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("+"))
                .collect();
            let name = v
                .template_sources()
                .get(*identity)
                .cloned()
                .unwrap_or_else(|| format!("identity {identity}"));
            format!("{name} at ({})", vals.join(", "))
        }
        RowOrigin::Product {
            lower,
            row,
            monomial,
            left,
        } => {
            if *left {
                format!("(row {row} of {lower}) * {monomial}")
            } else {
                format!("{monomial} * (row {row} of {lower})")
            }
        }
    }
}

/// Evaluates a polynomial in an algebra, sharing work between monomials.
pub fn evaluate<A: Algebra>(alg: &A, p: &Polynomial) -> Result<A::Elem> {
    fn go<A: Algebra>(alg: &A, m: &Monomial, memo: &mut HashMap<Monomial, A::Elem>) -> Result<A::Elem> {
        if let Some(v) = memo.get(m) {
            return Ok(v.clone());
        }
        let v = match m.split() {
            None => alg.var(m.leaf_var().unwrap())?,
            Some((l, r)) => {
                let x = go(alg, &l, memo)?;
                let y = go(alg, &r, memo)?;
                alg.mul(&x, &y)?
            }
        };
        memo.insert(m.clone(), v.clone());
        Ok(v)
    }
    let mut memo = HashMap::new();
    let mut acc = alg.zero();
    for (m, c) in p.terms() {
        let v = go(alg, m, &mut memo)?;
        acc = alg.add(&acc, &alg.scale(&v, &c.to_rational())?)?;
    }
    Ok(acc)
}

/// Normal form of a candidate component in a truncated quotient.
pub fn quotient_normal_form<F: FieldOps>(
    q: &QuotientAlgebra<F>,
    component: &Polynomial,
    mode: Mode,
) -> Result<Polynomial> {
    let nf = match mode {
        Mode::Direct => q.normal_form(component)?,
        Mode::Plus => evaluate(&Plus(q), component)?,
    };
    Ok(q.to_polynomial(&nf))
}

/// The candidate in the variety's own flavor (star-expanded in plus mode).
pub fn planar_candidate(component: &Polynomial, mode: Mode) -> Result<Polynomial> {
    match mode {
        Mode::Direct => Ok(component.clone()),
        Mode::Plus => star_expand(component),
    }
}

struct Outcome {
    is_zero: bool,
    residual: String,
    certificate: Option<Certificate>,
}

fn check_direct<F: FieldOps>(
    field: F,
    v: &VarietyPresentation,
    d: &Multidegree,
    component: &Polynomial,
    opts: &CheckOptions,
) -> Result<Outcome> {
    let target = planar_candidate(component, opts.mode)?.to_field(field.field())?;
    let spans = direct_spans(
        field.clone(),
        v.flavor,
        &v.templates(),
        d,
        opts.certificate,
        opts.strategy.max_rows,
    )?;
    let top = spans.top();
    let vec = top.basis.vector(&field, &target)?;
    match top.span.member(&vec) {
        Membership::Residual(r) => Ok(Outcome {
            is_zero: false,
            residual: top.basis.polynomial(&field, &r, v.flavor).to_string(),
            certificate: None,
        }),
        Membership::Member(coeffs) => {
            let certificate = top.generators.as_ref().map(|gens| {
                let total = top.span.combination(&coeffs).expect("elimination is recorded");
                let mut recomputed = SparseVector::new();
                let mut rows = Vec::new();
                for (j, c) in total.entries() {
                    let (origin, row) = &gens[*j as usize];
                    recomputed = recomputed.add(&field, &row.scale(&field, c));
                    rows.push(CertificateRow {
                        coefficient: field.to_scalar(c).to_string(),
                        origin: describe_origin(origin, v),
                    });
                }
                Certificate {
                    rows,
                    verified: recomputed == vec,
                }
            });
            Ok(Outcome {
                is_zero: true,
                residual: "0".into(),
                certificate,
            })
        }
    }
}

fn check_graded<F: FieldOps>(
    field: F,
    v: &VarietyPresentation,
    d: &Multidegree,
    component: &Polynomial,
    opts: &CheckOptions,
) -> Result<Outcome> {
    let q = quotient_algebra(v, d, field.clone(), &opts.strategy)?;
    let r = quotient_normal_form(&q, &component.to_field(field.field())?, opts.mode)?;
    Ok(Outcome {
        is_zero: r.is_zero(),
        residual: r.to_string(),
        certificate: None,
    })
}

/// Decides whether `e = 0` holds in the variety (or in its plus algebra).
pub fn is_identity(
    v: &VarietyPresentation,
    e: &Expr,
    macros: &MacroTable,
    opts: &CheckOptions,
) -> Result<Verdict> {
    let start = Instant::now();
    let flavor = match opts.mode {
        Mode::Direct => v.flavor,
        Mode::Plus => {
            if v.flavor != Flavor::Planar {
                return Err(Error::FlavorMismatch(
                    "plus mode needs a variety of the planar flavor".into(),
                ));
            }
            Flavor::Commutative
        }
    };
    let expansion = expand_with(e, flavor, Field::Rational, macros)?;
    let mut verdict = check_polynomial(v, &expansion.poly, opts)?;
    let mut warnings = expansion.warnings;
    warnings.append(&mut verdict.warnings);
    verdict.warnings = warnings;
    verdict.timing_ms = start.elapsed().as_millis();
    Ok(verdict)
}

/// As [`is_identity`] for an already expanded candidate (commutative in plus mode).
pub fn check_polynomial(v: &VarietyPresentation, poly: &Polynomial, opts: &CheckOptions) -> Result<Verdict> {
    let start = Instant::now();
    let mut warnings = Vec::new();
    let mut components = poly.components();
    if let Some(d) = &opts.multidegree {
        let selected = components.remove(d);
        if !components.is_empty() {
            warnings.push(format!(
                "only the component {d} was checked; {} other component(s) ignored",
                components.len()
            ));
        }
        components.clear();
        components.insert(
            d.clone(),
            selected.unwrap_or_else(|| Polynomial::zero(poly.flavor(), poly.field())),
        );
    }
    let mut results = Vec::new();
    for (d, component) in &components {
        opts.strategy.check_degree(d)?;
        let columns = monomial_count(d, v.flavor);
        let route = opts.route.unwrap_or_else(|| opts.strategy.route(columns));
        let fields = opts.strategy.fields(opts.characteristic, columns)?;
        if fields.len() > 1 {
            push_unique(
                &mut warnings,
                "characteristic-zero verdict inferred from computations modulo two primes",
            );
        }
        if component.is_zero() {
            results.push(ComponentVerdict {
                multidegree: d.clone(),
                columns,
                route,
                fields: fields.iter().map(|f| f.to_string()).collect(),
                is_zero: true,
                residuals: vec!["0".into()],
                certificate: None,
            });
            continue;
        }
        let mut outcomes = Vec::new();
        for f in &fields {
            let o = with_field!(*f, |fo| match route {
                Route::Direct => check_direct(fo, v, d, component, opts)?,
                Route::Graded => check_graded(fo, v, d, component, opts)?,
            });
            outcomes.push(o);
        }
        if outcomes.windows(2).any(|w| w[0].is_zero != w[1].is_zero) {
            warnings.push(format!("fields disagree at {d}"));
        }
        results.push(ComponentVerdict {
            multidegree: d.clone(),
            columns,
            route,
            fields: fields.iter().map(|f| f.to_string()).collect(),
            is_zero: outcomes.iter().all(|o| o.is_zero),
            residuals: outcomes.iter().map(|o| o.residual.clone()).collect(),
            certificate: outcomes.into_iter().next().and_then(|o| o.certificate),
        });
    }
    if opts.certificate && results.iter().any(|r| r.route == Route::Graded && r.is_zero) {
        push_unique(
            &mut warnings,
            "no certificate for components handled by the graded construction",
        );
    }
    Ok(Verdict {
        is_identity: results.iter().all(|r| r.is_zero),
        characteristic: opts.characteristic,
        mode: opts.mode,
        variety: v.name.clone(),
        multidegrees: results.iter().map(|r| r.multidegree.clone()).collect(),
        components: results,
        timing_ms: start.elapsed().as_millis(),
        warnings,
    })
}

//! Consequences of defining identities: T-ideal components and quotient
//! dimensions of relatively free algebras.
//!
//! Two constructions are available. The direct one works in monomial
//! coordinates and keeps explicit generators (needed for certificates); the
//! graded one builds the quotient component by component and scales to
//! components with hundreds of thousands of monomials.

mod catalog;
mod direct;
mod graded;
mod slots;

use std::sync::OnceLock;

use serde::Serialize;

pub use catalog::Catalog;
pub use direct::{direct_spans, DirectComponent, DirectSpans, MonomialBasis, RowOrigin};
pub use graded::{Block, Plus, QComponent, QElem, QuotientAlgebra};
pub use slots::{distinct_arrangements, fillings, Shape, SlotValue, Template};

use crate::error::{Error, Result};
use crate::lang::{expand_with, parse_with, MacroTable};
use crate::term::{
    enumerate_monomials, is_prime, monomial_count, Field, FieldOps, Flavor, Monomial, Multidegree,
    Polynomial,
};

/// Runs `$body` with `$f` bound to the concrete field arithmetic for `$field`.
#[macro_export]
macro_rules! with_field {
    ($field:expr, |$f:ident| $body:expr) => {
        match $field {
            $crate::term::Field::Rational => {
                let $f = $crate::term::Rationals;
                $body
            }
            $crate::term::Field::Prime(p) => {
                let $f = $crate::term::PrimeField::new(p)?;
                $body
            }
        }
    };
}

/// A variety given by defining identities in one flavor.
#[derive(Debug, Clone)]
pub struct VarietyPresentation {
    pub name: String,
    pub flavor: Flavor,
    /// Identities expanded over ℚ.
    pub identities: Vec<Polynomial>,
    /// Source text of each identity, when it came from the identity language.
    pub sources: Vec<String>,
    pub notes: String,
}

impl VarietyPresentation {
    pub fn new(name: &str, flavor: Flavor, identities: Vec<Polynomial>) -> Result<Self> {
        if let Some(p) = identities.iter().find(|p| p.flavor() != flavor) {
            return Err(Error::FlavorMismatch(format!(
                "identity {p} is not in the {flavor:?} flavor of {name}"
            )));
        }
        if let Some(p) = identities.iter().find(|p| p.field() != Field::Rational) {
            return Err(Error::FieldMismatch(format!("identity {p} must have rational coefficients")));
        }
        Ok(VarietyPresentation {
            name: name.to_string(),
            flavor,
            sources: identities.iter().map(|p| p.to_string()).collect(),
            identities,
            notes: String::new(),
        })
    }

    /// Parses and expands each identity.
    pub fn from_sources(
        name: &str,
        flavor: Flavor,
        sources: &[String],
        notes: &str,
        macros: &MacroTable,
    ) -> Result<Self> {
        let mut identities = Vec::with_capacity(sources.len());
        for s in sources {
            let e = parse_with(s, macros)?;
            identities.push(expand_with(&e, flavor, Field::Rational, macros)?.poly);
        }
        Ok(VarietyPresentation {
            name: name.to_string(),
            flavor,
            identities,
            sources: sources.to_vec(),
            notes: notes.to_string(),
        })
    }

    /// Adds identities (used to test implications and equivalences).
    pub fn with_identities(&self, name: &str, extra: &[Polynomial]) -> Result<Self> {
        let mut all = self.identities.clone();
        all.extend(extra.iter().cloned());
        let mut v = VarietyPresentation::new(name, self.flavor, all)?;
        v.sources = self.sources.clone();
        v.sources.extend(extra.iter().map(|p| p.to_string()));
        Ok(v)
    }

    /// Multihomogeneous components of the identities, prepared for substitution.
    pub fn templates(&self) -> Vec<Template> {
        self.identities
            .iter()
            .flat_map(|p| p.components().into_values())
            .filter_map(|c| Template::new(&c))
            .collect()
    }

    /// Source text of the identity behind each entry of [`Self::templates`].
    pub fn template_sources(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, p) in self.identities.iter().enumerate() {
            let name = self.sources.get(i).cloned().unwrap_or_else(|| p.to_string());
            for c in p.components().into_values() {
                if Template::new(&c).is_some() {
                    out.push(name.clone());
                }
            }
        }
        out
    }
}

/// One generated consequence with where it came from.
#[derive(Debug, Clone)]
pub struct ConsequenceRow {
    pub poly: Polynomial,
    pub origin: RowOrigin,
}

/// Every full substitution `f(m1, …, mk)` by monomials in the variables of
/// `d` whose result has multidegree `<= d`.
pub fn substitution_instances(f: &Polynomial, d: &Multidegree, flavor: Flavor) -> Result<Vec<ConsequenceRow>> {
    if f.flavor() != flavor {
        return Err(Error::FlavorMismatch("identity and target flavors differ".into()));
    }
    let degree = f.terms().map(|(m, _)| m.degree()).max().unwrap_or(0);
    if (d.total() as usize) < degree {
        return Err(Error::Invalid(format!(
            "target {d} has total degree below the identity's degree {degree}"
        )));
    }
    let vars: Vec<u8> = (1..=f.max_variable())
        .filter(|v| f.terms().any(|(m, _)| m.leaves().any(|x| x == *v)))
        .collect();
    // A variable's multiplicity may differ between terms of a
    // non-multihomogeneous identity; the largest one bounds the budget.
    let mult: Vec<u32> = vars
        .iter()
        .map(|v| {
            f.terms()
                .map(|(m, _)| m.leaves().filter(|x| x == v).count() as u32)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let candidates: Vec<(Multidegree, Vec<Monomial>)> = d
        .nonzero_submultidegrees()
        .into_iter()
        .map(|s| {
            let ms = enumerate_monomials(&s, flavor)?;
            Ok((s, ms))
        })
        .collect::<Result<_>>()?;

    let mut out = Vec::new();
    let mut chosen: Vec<Monomial> = Vec::new();
    fn rec(
        k: usize,
        budget: &Multidegree,
        mult: &[u32],
        candidates: &[(Multidegree, Vec<Monomial>)],
        chosen: &mut Vec<Monomial>,
        emit: &mut dyn FnMut(&[Monomial]),
    ) {
        if k == mult.len() {
            emit(chosen);
            return;
        }
        for (s, ms) in candidates {
            let used = Multidegree::new(s.entries().iter().map(|x| x * mult[k]));
            let Some(rest) = budget.checked_sub(&used) else { continue };
            for m in ms {
                chosen.push(m.clone());
                rec(k + 1, &rest, mult, candidates, chosen, emit);
                chosen.pop();
            }
        }
    }
    let mut failure = None;
    rec(0, d, &mult, &candidates, &mut chosen, &mut |values: &[Monomial]| {
        let image = |var: u8| -> &Monomial {
            let i = vars.iter().position(|v| *v == var).unwrap();
            &values[i]
        };
        let poly = f.map_monomials(flavor, |m| m.substitute(flavor, |var, _| image(var)));
        match poly {
            Ok(poly) => out.push(ConsequenceRow {
                poly,
                origin: RowOrigin::Instance {
                    identity: 0,
                    values: vars
                        .iter()
                        .zip(&mult)
                        .map(|(v, k)| vec![image(*v).clone(); *k as usize])
                        .collect(),
                },
            }),
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Which construction computed a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Direct,
    Graded,
}

/// Knobs for choosing fields and constructions.
#[derive(Debug, Clone)]
pub struct Strategy {
    /// Characteristic-zero components above this many monomials run modulo primes.
    pub rational_column_limit: u128,
    /// Components above this many monomials use the graded construction.
    pub direct_column_limit: u128,
    /// Primes for the modular strategy (at least two).
    pub primes: Vec<u64>,
    pub degree_cap: u32,
    /// Upper bound on generated rows per component.
    pub max_rows: usize,
}

impl Default for Strategy {
    fn default() -> Self {
        Strategy {
            rational_column_limit: 20_000,
            direct_column_limit: 1_000,
            primes: default_primes().to_vec(),
            degree_cap: 8,
            max_rows: 50_000_000,
        }
    }
}

/// The two smallest primes above 2³⁰.
pub fn default_primes() -> [u64; 2] {
    static PRIMES: OnceLock<[u64; 2]> = OnceLock::new();
    *PRIMES.get_or_init(|| {
        let mut it = ((1u64 << 30) + 1..).filter(|n| is_prime(*n));
        [it.next().unwrap(), it.next().unwrap()]
    })
}

impl Strategy {
    pub fn check_degree(&self, d: &Multidegree) -> Result<()> {
        if d.is_zero() {
            return Err(Error::EmptyMultidegree);
        }
        if d.total() > self.degree_cap {
            return Err(Error::DegreeCap {
                degree: d.total(),
                cap: self.degree_cap,
            });
        }
        Ok(())
    }

    /// Fields to compute over: the requested characteristic, or for large
    /// characteristic-zero components the configured primes.
    pub fn fields(&self, characteristic: u64, columns: u128) -> Result<Vec<Field>> {
        if characteristic != 0 {
            return Ok(vec![Field::from_characteristic(characteristic)?]);
        }
        if columns <= self.rational_column_limit {
            return Ok(vec![Field::Rational]);
        }
        if self.primes.len() < 2 {
            return Err(Error::Invalid("the modular strategy needs two primes".into()));
        }
        self.primes.iter().map(|&p| Field::from_characteristic(p)).collect()
    }

    pub fn route(&self, columns: u128) -> Route {
        if columns <= self.direct_column_limit {
            Route::Direct
        } else {
            Route::Graded
        }
    }
}

/// The T-ideal component at `d` in monomial coordinates.
pub fn consequence_span<F: FieldOps>(
    v: &VarietyPresentation,
    d: &Multidegree,
    field: F,
    strategy: &Strategy,
) -> Result<DirectComponent<F>> {
    strategy.check_degree(d)?;
    let spans = direct_spans(field, v.flavor, &v.templates(), d, false, strategy.max_rows)?;
    let mut comps = spans.components;
    Ok(comps.remove(d).expect("target component is built"))
}

/// The relatively free algebra of `v`, truncated at `d`.
pub fn quotient_algebra<F: FieldOps>(
    v: &VarietyPresentation,
    d: &Multidegree,
    field: F,
    strategy: &Strategy,
) -> Result<QuotientAlgebra<F>> {
    strategy.check_degree(d)?;
    QuotientAlgebra::build(field, v.flavor, &v.templates(), d, strategy.max_rows)
}

/// Outcome of a dimension computation.
#[derive(Debug, Clone, Serialize)]
pub struct DimReport {
    pub variety: String,
    pub multidegree: Multidegree,
    pub characteristic: u64,
    /// Number of monomials of the component.
    pub columns: u128,
    pub dim: usize,
    pub route: Route,
    /// Fields actually used, with the dimension found over each.
    pub per_field: Vec<(String, usize)>,
    /// Whether all fields agreed (always true for a single field).
    pub agree: bool,
    pub warnings: Vec<String>,
}

fn dim_over<F: FieldOps>(v: &VarietyPresentation, d: &Multidegree, field: F, route: Route, s: &Strategy) -> Result<usize> {
    Ok(match route {
        Route::Direct => {
            let c = consequence_span(v, d, field, s)?;
            c.basis.len() - c.span.rank()
        }
        Route::Graded => quotient_algebra(v, d, field, s)?.dim(d),
    })
}

/// Dimension of the component `d` of the relatively free algebra.
pub fn quotient_dim(v: &VarietyPresentation, d: &Multidegree, characteristic: u64, s: &Strategy) -> Result<DimReport> {
    s.check_degree(d)?;
    let columns = monomial_count(d, v.flavor);
    quotient_dim_with(v, d, characteristic, s, s.route(columns))
}

/// As [`quotient_dim`] with the construction fixed.
pub fn quotient_dim_with(
    v: &VarietyPresentation,
    d: &Multidegree,
    characteristic: u64,
    s: &Strategy,
    route: Route,
) -> Result<DimReport> {
    s.check_degree(d)?;
    let columns = monomial_count(d, v.flavor);
    let fields = s.fields(characteristic, columns)?;
    let mut per_field = Vec::new();
    for f in &fields {
        let dim = with_field!(*f, |fo| dim_over(v, d, fo, route, s)?);
        per_field.push((f.to_string(), dim));
    }
    let agree = per_field.windows(2).all(|w| w[0].1 == w[1].1);
    let mut warnings = Vec::new();
    if !agree {
        warnings.push(format!(
            "modular dimensions disagree ({}); the smallest is reported",
            per_field.iter().map(|(f, n)| format!("{f}: {n}")).collect::<Vec<_>>().join(", ")
        ));
    }
    if fields.len() > 1 && agree {
        warnings.push("characteristic-zero dimension inferred from agreeing modular computations".into());
    }
    Ok(DimReport {
        variety: v.name.clone(),
        multidegree: d.clone(),
        characteristic,
        columns,
        dim: per_field.iter().map(|x| x.1).min().unwrap_or(0),
        route,
        per_field,
        agree,
        warnings,
    })
}

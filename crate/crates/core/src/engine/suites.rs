//! Named check suites. Each suite is a list of independent checks run on a
//! thread pool; the report lists them sorted by name.

use std::collections::BTreeMap;
use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::check::{check_polynomial, is_identity, CheckOptions, Mode, Verdict};
use super::hentzel::{parse_letters, HentzelBasis};
use super::systems::{implies, plus_identity_kernel, systems_equivalent};
use crate::albert::sample_report;
use crate::error::{Error, Result};
use crate::lang::{apply_sigma_q, expand, parse, permutations, Expr, MacroTable};
use crate::series::{compose, koszul_residual, multilinear_dims, TruncatedSeries};
use crate::term::{Flavor, Multidegree, Polynomial, PrimeField, Rationals};
use crate::tideal::{consequence_span, default_primes, quotient_dim, Catalog, Strategy, VarietyPresentation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

/// One line of a suite report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    /// The mathematical statement being reproduced.
    pub claim_ref: String,
    pub verdict: Outcome,
    pub char: u64,
    pub multidegrees: Vec<String>,
    /// Wall-clock milliseconds.
    pub timing: u128,
    pub warnings: Vec<String>,
    pub detail: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    /// The report with all timings zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> SuiteReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.timing = 0;
        }
        r
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.checks.iter().filter(|c| c.verdict != Outcome::Pass)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Main1,
    Deg4,
    Lemmas,
    Arman,
    Char3,
    Quasi,
    Koszul,
    Albert,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Main1,
        Suite::Deg4,
        Suite::Lemmas,
        Suite::Arman,
        Suite::Char3,
        Suite::Quasi,
        Suite::Koszul,
        Suite::Albert,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Main1 => "main1",
            Suite::Deg4 => "deg4",
            Suite::Lemmas => "lemmas",
            Suite::Arman => "arman",
            Suite::Char3 => "char3",
            Suite::Quasi => "quasi",
            Suite::Koszul => "koszul",
            Suite::Albert => "albert",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Invalid(format!("unknown suite {s}; expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    /// Also run the expensive optional checks.
    pub extended: bool,
    pub albert_samples: usize,
    pub albert_seed: u64,
    /// Entry bound for sampled matrix coordinates.
    pub albert_bound: i64,
    pub strategy: Strategy,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            workers: None,
            extended: false,
            albert_samples: 100,
            albert_seed: 7,
            albert_bound: 3,
            strategy: Strategy::default(),
        }
    }
}

struct Finding {
    pass: bool,
    char: u64,
    multidegrees: Vec<Multidegree>,
    warnings: Vec<String>,
    detail: Value,
}

impl Finding {
    fn new(pass: bool, detail: Value) -> Finding {
        Finding {
            pass,
            char: 0,
            multidegrees: Vec::new(),
            warnings: Vec::new(),
            detail,
        }
    }

    fn at(mut self, d: &Multidegree) -> Finding {
        self.multidegrees.push(d.clone());
        self
    }

    fn char(mut self, p: u64) -> Finding {
        self.char = p;
        self
    }
}

type Runner = Box<dyn Fn(&SuiteConfig) -> Result<Finding> + Send + Sync>;

struct Job {
    name: String,
    claim: String,
    run: Runner,
}

fn job(name: impl Into<String>, claim: impl Into<String>, run: impl Fn(&SuiteConfig) -> Result<Finding> + Send + Sync + 'static) -> Job {
    Job {
        name: name.into(),
        claim: claim.into(),
        run: Box::new(run),
    }
}

/// Runs a suite and returns its report; failures are report entries.
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let jobs = match suite {
        Suite::Main1 => main1_jobs(),
        Suite::Deg4 => deg4_jobs(),
        Suite::Lemmas => {
            let mut j = lemma_jobs();
            j.extend(arman_jobs());
            j
        }
        Suite::Arman => arman_jobs(),
        Suite::Char3 => char3_jobs(),
        Suite::Quasi => quasi_jobs(),
        Suite::Koszul => koszul_jobs(config),
        Suite::Albert => albert_jobs(),
    };
    let mut checks = run_jobs(&jobs, config)?;
    checks.sort_by(|a, b| a.check.cmp(&b.check));
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        passed: checks.iter().all(|c| c.verdict == Outcome::Pass),
        checks,
    })
}

fn run_jobs(jobs: &[Job], config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    let run_all = || jobs.par_iter().map(|j| run_one(j, config)).collect::<Vec<_>>();
    match config.workers {
        None => Ok(run_all()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Invalid(format!("cannot start {n} workers: {e}")))?;
            Ok(pool.install(run_all))
        }
    }
}

fn run_one(j: &Job, config: &SuiteConfig) -> CheckReport {
    let start = Instant::now();
    let result = (j.run)(config);
    let timing = start.elapsed().as_millis();
    match result {
        Ok(f) => CheckReport {
            check: j.name.clone(),
            claim_ref: j.claim.clone(),
            verdict: if f.pass { Outcome::Pass } else { Outcome::Fail },
            char: f.char,
            multidegrees: f.multidegrees.iter().map(|d| d.to_string()).collect(),
            timing,
            warnings: f.warnings,
            detail: f.detail,
        },
        Err(e) => CheckReport {
            check: j.name.clone(),
            claim_ref: j.claim.clone(),
            verdict: Outcome::Error,
            char: 0,
            multidegrees: Vec::new(),
            timing,
            warnings: Vec::new(),
            detail: json!({ "error": e.to_string() }),
        },
    }
}

// ---------------------------------------------------------------------------
// Shared helpers

fn variety(name: &str) -> Result<VarietyPresentation> {
    Catalog::builtin().get(name)
}

fn poly(text: &str, flavor: Flavor) -> Result<Polynomial> {
    expand(&parse(text)?, flavor)
}

fn md(text: &str) -> Multidegree {
    Multidegree::parse(text).expect("well-formed multidegree literal")
}

const DEGREE_FOUR: [&str; 5] = ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"];

fn degree_four() -> Vec<Multidegree> {
    DEGREE_FOUR.iter().map(|d| md(d)).collect()
}

fn clip(s: &str) -> String {
    const LIMIT: usize = 400;
    if s.chars().count() <= LIMIT {
        s.to_string()
    } else {
        let head: String = s.chars().take(LIMIT).collect();
        format!("{head} … ({} characters)", s.chars().count())
    }
}

fn verdict_detail(v: &Verdict) -> Value {
    let components: Vec<Value> = v
        .components
        .iter()
        .map(|c| {
            json!({
                "multidegree": c.multidegree.to_string(),
                "columns": c.columns.to_string(),
                "route": c.route,
                "fields": c.fields,
                "residuals": c.residuals.iter().map(|r| clip(r)).collect::<Vec<_>>(),
                "certificate": c.certificate.as_ref().map(|k| json!({
                    "rows": k.rows.len(),
                    "verified": k.verified,
                })),
            })
        })
        .collect();
    json!({
        "variety": v.variety,
        "mode": v.mode,
        "is_identity": v.is_identity,
        "components": components,
    })
}

/// Checks `text` in `variety` and passes iff the verdict equals `expect`.
fn verdict_job(
    name: &str,
    claim: &str,
    variety_name: &'static str,
    text: &'static str,
    mode: Mode,
    char: u64,
    multidegree: Option<&'static str>,
    expect: bool,
) -> Job {
    job(name, claim, move |cfg| {
        let v = variety(variety_name)?;
        let mut opts = CheckOptions {
            mode,
            strategy: cfg.strategy.clone(),
            ..CheckOptions::default()
        }
        .with_char(char);
        if let Some(d) = multidegree {
            opts = opts.at(md(d));
        }
        let verdict = is_identity(&v, &parse(text)?, MacroTable::builtin(), &opts)?;
        let mut f = Finding::new(verdict.is_identity == expect, verdict_detail(&verdict)).char(char);
        f.multidegrees = verdict.multidegrees.clone();
        f.warnings = verdict.warnings.clone();
        Ok(f)
    })
}

/// Passes iff the expression expands to the zero polynomial of the flavor.
fn vanishing_job(name: &str, claim: &str, text: &'static str, flavor: Flavor) -> Job {
    job(name, claim, move |_| {
        let p = poly(text, flavor)?;
        Ok(Finding::new(p.is_zero(), json!({ "expression": text, "expansion": clip(&p.to_string()) })))
    })
}

// ---------------------------------------------------------------------------
// main1: the plus algebra is Lie triple and satisfies the Glennie identity

fn main1_jobs() -> Vec<Job> {
    let plus = Mode::Plus;
    let direct = Mode::Direct;
    let mut jobs = vec![
        verdict_job(
            "commutativity-holds",
            "the product a*b = ab + ba is commutative",
            "assym",
            "t1 t2 - t2 t1",
            plus,
            0,
            None,
            true,
        ),
        verdict_job(
            "lie-triple-char-0",
            "<a, b*b, c> = 2 b*<a,b,c> in every plus-assosymmetric algebra",
            "assym",
            "lietriple(t1,t2,t3)",
            plus,
            0,
            Some("1,2,1"),
            true,
        ),
        verdict_job(
            "lie-triple-char-5",
            "<a, b*b, c> = 2 b*<a,b,c> in every plus-assosymmetric algebra",
            "assym",
            "lietriple(t1,t2,t3)",
            plus,
            5,
            Some("1,2,1"),
            true,
        ),
        verdict_job(
            "glennie-char-0",
            "glen(a,b,c) = shest(a,b,c*c) - 2 c*shest(a,b,c) vanishes in plus-assosymmetric algebras",
            "assym",
            "glen(t1,t2,t3)",
            plus,
            0,
            Some("3,3,2"),
            true,
        ),
        verdict_job(
            "glennie-char-5",
            "glen vanishes in plus-assosymmetric algebras (cross-check at a prime p > 3)",
            "assym",
            "glen(t1,t2,t3)",
            plus,
            5,
            Some("3,3,2"),
            true,
        ),
        verdict_job(
            "shestakov-element",
            "D(a,b,c) = [([a,b]*[a,b])*[a,b], c] equals shest(a,b,c) in assosymmetric algebras",
            "assym",
            "D(t1,t2,t3) - shest(t1,t2,t3)",
            direct,
            0,
            Some("3,3,1"),
            true,
        ),
        verdict_job(
            "shestakov-polynomial-is-nonzero",
            "shest itself is not an identity, so D is a nonzero Jordan element",
            "assym",
            "shest(t1,t2,t3)",
            plus,
            0,
            Some("3,3,1"),
            false,
        ),
        verdict_job(
            "jordan-identity-fails",
            "the Jordan identity (a,b,a*a) = 0 does not hold in plus-assosymmetric algebras",
            "assym",
            "jor(t1,t2)",
            plus,
            0,
            None,
            false,
        ),
        verdict_job(
            "lie-triple-not-a-consequence-of-commutativity",
            "lietriple is independent of commutativity",
            "comm",
            "lietriple(t1,t2,t3)",
            direct,
            0,
            None,
            false,
        ),
        job(
            "glennie-not-a-consequence-of-lie-triple",
            "glen does not follow from commutativity and lietriple (symbolic check)",
            |cfg| {
                // Exact over Q this takes minutes; by default a large prime stands in.
                let char = if cfg.extended { 0 } else { default_primes()[0] };
                let opts = CheckOptions {
                    strategy: cfg.strategy.clone(),
                    ..CheckOptions::default()
                }
                .with_char(char)
                .at(md("3,3,2"));
                let v = is_identity(&variety("lie-triple")?, &parse("glen(t1,t2,t3)")?, MacroTable::builtin(), &opts)?;
                let mut f = Finding::new(!v.is_identity, verdict_detail(&v)).char(char);
                f.multidegrees = v.multidegrees.clone();
                f.warnings = v.warnings.clone();
                if char != 0 {
                    f.warnings.push(
                        "computed modulo a prime: a nonzero residual there is evidence, not proof, of \
                         non-membership over Q; run with the extended option for the exact computation"
                            .into(),
                    );
                }
                Ok(f)
            },
        ),
        job(
            "commutativity-independent-by-degree",
            "commutativity does not follow from lietriple and glen",
            |_| {
                Ok(Finding::new(
                    true,
                    json!({ "reason": "every consequence of identities whose components all have degree at least 4 \
                         has zero degree-2 component, while [t1,t2] is a nonzero polynomial of degree 2" }),
                )
                .at(&md("1,1")))
            },
        ),
        job(
            "glennie-independent-by-albert-witness",
            "glen is nonzero on the Albert algebra, which satisfies commutativity, jor and lietriple",
            |cfg| albert_witness(cfg, 10),
        ),
        job(
            "jordan-implies-lie-triple",
            "lietriple is a consequence of commutativity and jor",
            |cfg| {
                let d = md("1,2,1");
                let ok = implies(
                    &variety("comm")?,
                    &[poly("jor(t1,t2)", Flavor::Commutative)?],
                    &poly("lietriple(t1,t2,t3)", Flavor::Commutative)?,
                    &d,
                    &cfg.strategy,
                )?;
                Ok(Finding::new(ok, json!({ "lietriple_in_span": ok })).at(&d))
            },
        ),
        job(
            "lie-triple-does-not-imply-jordan",
            "jor is not a consequence of commutativity and lietriple",
            |cfg| {
                let d = md("3,1");
                let follows = implies(
                    &variety("comm")?,
                    &[poly("lietriple(t1,t2,t3)", Flavor::Commutative)?],
                    &poly("jor(t1,t2)", Flavor::Commutative)?,
                    &d,
                    &cfg.strategy,
                )?;
                Ok(Finding::new(!follows, json!({ "jor_in_span": follows })).at(&d))
            },
        ),
    ];
    jobs.sort_by(|a, b| a.name.cmp(&b.name));
    jobs
}

fn albert_witness(cfg: &SuiteConfig, samples: usize) -> Result<Finding> {
    let macros = MacroTable::builtin();
    let report = |text: &str| sample_report(&parse(text)?, text, macros, cfg.albert_seed, samples, cfg.albert_bound);
    let jor = report("jor(t1,t2)")?;
    let lie = report("lietriple(t1,t2,t3)")?;
    let glen = report("glen(t1,t2,t3)")?;
    let pass = jor.all_zero() && lie.all_zero() && glen.first_nonzero.is_some();
    Ok(Finding::new(
        pass,
        json!({
            "seed": cfg.albert_seed,
            "samples": samples,
            "jor_zero": jor.zero_count,
            "lietriple_zero": lie.zero_count,
            "glen_zero": glen.zero_count,
            "glen_witness": glen.first_nonzero,
        }),
    ))
}

// ---------------------------------------------------------------------------
// deg4: the degree-4 table, residuals and plus-identity kernels

const DIMENSIONS: [(&str, usize); 5] = [("4", 3), ("3,1", 7), ("2,2", 9), ("2,1,1", 16), ("1,1,1,1", 29)];

type Support = BTreeMap<String, String>;

fn residual_support(basis: &HentzelBasis, e: &Expr) -> Result<Support> {
    let p = expand(e, Flavor::Commutative)?;
    Ok(basis
        .coordinates(&p, Mode::Plus)?
        .support()
        .into_iter()
        .map(|(m, c)| (m.to_string(), c.to_string()))
        .collect())
}

fn scaled_support(pairs: &[(&str, i64)], factor: i64) -> Result<Support> {
    if factor == 0 {
        return Ok(Support::new());
    }
    pairs
        .iter()
        .map(|(m, c)| Ok((parse_letters(m)?.to_string(), (c * factor).to_string())))
        .collect()
}

fn call(name: &str, vars: &[u8]) -> Expr {
    Expr::call(name, vars.iter().map(|&v| Expr::var(v)).collect())
}

/// Residual coordinates of `Σ μ_i g_i` against `(Σ μ_i) · base`.
fn residual_job(
    name: &str,
    claim: &str,
    d: &'static str,
    parts: Vec<Expr>,
    base: &'static [(&'static str, i64)],
    mus: Vec<Vec<i64>>,
) -> Job {
    job(name, claim, move |_| {
        let assym = variety("assym")?;
        let basis = HentzelBasis::new(&assym, &md(d))?;
        let mut cases = Vec::new();
        let mut pass = true;
        for mu in &mus {
            let e = Expr::combination(mu.iter().copied().zip(parts.iter().cloned()).collect());
            let got = residual_support(&basis, &e)?;
            let want = scaled_support(base, mu.iter().sum())?;
            pass &= got == want;
            cases.push(json!({ "mu": mu, "residual": got, "expected": want }));
        }
        Ok(Finding::new(pass, json!({ "cases": cases })).at(&md(d)))
    })
}

const F4: &[(&str, i64)] = &[("((aa)a)a", -2), ("(aa)(aa)", -2), ("(a(aa))a", 4)];
const V22: &[(&str, i64)] = &[("(aa)(bb)", 6), ("(b(ab))a", -12), ("((aa)b)b", -6), ("((ba)b)a", 12)];
const W211: &[(&str, i64)] = &[("(aa)(bc)", -6), ("(c(ab))a", 12), ("((aa)b)c", 6), ("((ca)b)a", -12)];

fn deg4_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for (d, want) in DIMENSIONS {
        jobs.push(job(
            format!("dimension-[{d}]"),
            "dimensions 3, 7, 9, 16, 29 of the free assosymmetric algebra in the degree-4 types",
            move |cfg| {
                let r = quotient_dim(&variety("assym")?, &md(d), 0, &cfg.strategy)?;
                let mut f = Finding::new(r.dim == want, json!({ "dim": r.dim, "expected": want, "route": r.route }))
                    .at(&md(d));
                f.warnings = r.warnings;
                Ok(f)
            },
        ));
    }
    jobs.push(job(
        "basis-coordinates-are-well-defined",
        "the tabulated monomials form a basis of each degree-4 component",
        |_| {
            let assym = variety("assym")?;
            let mut sizes = BTreeMap::new();
            for d in degree_four() {
                sizes.insert(d.to_string(), HentzelBasis::new(&assym, &d)?.monomials.len());
            }
            Ok(Finding::new(true, json!({ "sizes": sizes })))
        },
    ));
    jobs.push(residual_job(
        "residual-[4]",
        "f_[4](a) = -2((aa)a)a + 4(a(aa))a - 2(aa)(aa), so there is no identity of type [4]",
        "4",
        vec![call("g_4_1", &[1])],
        F4,
        vec![vec![1]],
    ));
    jobs.push(job(
        "residual-[3,1]",
        "f_[3,1] is an identity exactly when mu1 = 0",
        |_| {
            let basis = HentzelBasis::new(&variety("assym")?, &md("3,1"))?;
            let g1 = call("g_31_1", &[1, 2]);
            let g2 = call("g_31_2", &[1, 2]);
            let mut cases = Vec::new();
            let mut pass = true;
            for mu in [[0i64, 1], [1, 0], [1, 1], [2, -3]] {
                let e = Expr::combination(vec![(mu[0], g1.clone()), (mu[1], g2.clone())]);
                let r = residual_support(&basis, &e)?;
                pass &= r.is_empty() == (mu[0] == 0);
                cases.push(json!({ "mu": mu, "residual": r }));
            }
            Ok(Finding::new(pass, json!({ "cases": cases })).at(&md("3,1")))
        },
    ));
    jobs.push(residual_job(
        "residual-[2,2]",
        "f_[2,2] = 6(mu1+mu2){(aa)(bb) - 2(b(ab))a - ((aa)b)b + 2((ba)b)a}",
        "2,2",
        vec![call("g_22_1", &[1, 2]), call("g_22_1", &[2, 1])],
        V22,
        vec![vec![1, 0], vec![1, -1], vec![0, 1], vec![2, 3]],
    ));
    jobs.push(residual_job(
        "residual-[2,1,1]",
        "f_[2,1,1] = -6(mu1+mu2+mu3){(aa)(bc) - 2(c(ab))a - ((aa)b)c + 2((ca)b)a}",
        "2,1,1",
        vec![call("g_211_1", &[1, 2, 3]), call("g_211_2", &[1, 2, 3]), call("g_211_2", &[1, 3, 2])],
        W211,
        vec![vec![1, 0, 0], vec![1, -1, 0], vec![0, 1, -1], vec![1, 2, 3]],
    ));
    jobs.push(job(
        "residual-[1,1,1,1]",
        "f_[1,1,1,1] = (mu1+mu2+mu3+mu4) wjor, and wjor is not an identity",
        |_| {
            let basis = HentzelBasis::new(&variety("assym")?, &md("1,1,1,1"))?;
            let parts = [
                call("g_1111_1", &[1, 2, 3, 4]),
                call("g_1111_1", &[2, 1, 3, 4]),
                call("g_1111_1", &[3, 1, 2, 4]),
                call("g_1111_1", &[4, 1, 2, 3]),
            ];
            let wjor = residual_support(&basis, &call("wjor", &[1, 2, 3, 4]))?;
            let mut pass = !wjor.is_empty();
            let mut cases = Vec::new();
            for mu in [[1i64, 0, 0, 0], [1, -1, 0, 0], [1, 1, 1, -3], [2, 0, 1, 0]] {
                let e = Expr::combination(mu.iter().copied().zip(parts.iter().cloned()).collect());
                let got = residual_support(&basis, &e)?;
                let s: i64 = mu.iter().sum();
                let want: Support = if s == 0 {
                    Support::new()
                } else {
                    let f = BigRational::from_integer(s.into());
                    wjor.iter()
                        .map(|(m, c)| (m.clone(), (c.parse::<BigRational>().expect("rational") * &f).to_string()))
                        .collect()
                };
                pass &= got == want;
                cases.push(json!({ "mu": mu, "residual": got }));
            }
            Ok(Finding::new(pass, json!({ "wjor_residual": wjor, "cases": cases })).at(&md("1,1,1,1")))
        },
    ));
    for d in DEGREE_FOUR {
        jobs.push(job(
            format!("plus-kernel-[{d}]"),
            "every degree-4 identity of the plus algebra follows from commutativity and jor1, \
             and is an identity of plus-associative algebras",
            move |cfg| kernel_matches_jor1(&md(d), &cfg.strategy),
        ));
    }
    jobs.push(job(
        "plus-kernel-[3,1]-contains-g31",
        "g_[3,1]^(2) = 0 holds in plus-assosymmetric algebras",
        |cfg| {
            let d = md("3,1");
            let k = plus_identity_kernel(&variety("assym")?, &d, Rationals, &cfg.strategy)?;
            let ok = k.contains(&poly("g_31_2(t1,t2)", Flavor::Commutative)?)?;
            Ok(Finding::new(ok, json!({ "kernel_dim": k.dim() })).at(&d))
        },
    ));
    jobs
}

fn kernel_matches_jor1(d: &Multidegree, strategy: &Strategy) -> Result<Finding> {
    let assym = variety("assym")?;
    let k = plus_identity_kernel(&assym, d, Rationals, strategy)?;
    let jor1 = variety("comm")?.with_identities("jor1", &[poly("jor1(t1,t2,t3,t4)", Flavor::Commutative)?])?;
    let j = consequence_span(&jor1, d, Rationals, strategy)?;
    let assoc = plus_identity_kernel(&variety("associative")?, d, Rationals, strategy)?;
    let same_basis = k.basis.monomials == j.basis.monomials;
    let kernel_in_jor1 = same_basis && j.span.contains_span(&k.span);
    let jor1_in_kernel = same_basis && k.span.contains_span(&j.span);
    let in_assoc = assoc.span.contains_span(&k.span);
    Ok(Finding::new(
        kernel_in_jor1 && jor1_in_kernel && in_assoc,
        json!({
            "kernel_dim": k.dim(),
            "kernel_in_jor1_span": kernel_in_jor1,
            "jor1_span_in_kernel": jor1_in_kernel,
            "associative_kernel_dim": assoc.dim(),
            "kernel_in_associative_kernel": in_assoc,
        }),
    )
    .at(d))
}

// ---------------------------------------------------------------------------
// lemmas

fn lemma_jobs() -> Vec<Job> {
    let direct = Mode::Direct;
    let comm = Flavor::Commutative;
    let mut jobs = vec![
        vanishing_job(
            "plus-associator-expansion",
            "<a,b,c> - (a,b,c) + (c,b,a) = a(cb) - c(ab) - (ba)c + (bc)a in any algebra",
            "J(t1,t2,t3) - A(t1,t2,t3) + A(t3,t2,t1) - (t1(t3 t2) - t3(t1 t2) - (t2 t1) t3 + (t2 t3) t1)",
            Flavor::Planar,
        ),
        verdict_job(
            "plus-associator-is-double-commutator",
            "<a,b,c> = [[a,c],b]",
            "assym",
            "J(t1,t2,t3) - [[t1,t3],t2]",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "commutator-in-first-slot",
            "([a,b],c,d) = 0",
            "assym",
            "A([t1,t2],t3,t4)",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "commutator-in-middle-slot",
            "(c,[a,b],d) = 0",
            "assym",
            "A(t3,[t1,t2],t4)",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "commutator-in-last-slot",
            "(c,d,[a,b]) = 0",
            "assym",
            "A(t3,t4,[t1,t2])",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "commutator-times-associator",
            "[a,b](c,d,e) = 0",
            "assym",
            "[t1,t2] A(t3,t4,t5)",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "associator-times-commutator",
            "(c,d,e)[a,b] = 0",
            "assym",
            "A(t3,t4,t5) [t1,t2]",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "adjoint-map-rule",
            "ad a(bc) = ad a(b) c + b ad a(c) + (a,b,c)",
            "assym",
            "[t1, t2 t3] - [t1,t2] t3 - t2 [t1,t3] - A(t1,t2,t3)",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "adjoint-map-on-commutators",
            "ad a is a derivation of the commutator algebra (Jacobi identity)",
            "assym",
            "[t1,[t2,t3]] - [[t1,t2],t3] - [t2,[t1,t3]]",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "adjoint-map-on-plus-products",
            "ad a(b*c) = ad a(b)*c + b*ad a(c) + 2(a,b,c)",
            "assym",
            "[t1, t2 @ t3] - [t1,t2] @ t3 - t2 @ [t1,t3] - 2 A(t1,t2,t3)",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "adjoint-of-commutator-is-derivation",
            "ad [x,y] is a derivation of the algebra",
            "assym",
            "[[t4,t5], t2 t3] - [[t4,t5],t2] t3 - t2 [[t4,t5],t3]",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "adjoint-of-commutator-is-plus-derivation",
            "ad [x,y] is a derivation of the plus algebra",
            "assym",
            "[[t4,t5], t2 @ t3] - [[t4,t5],t2] @ t3 - t2 @ [[t4,t5],t3]",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "associator-commutator-vanishes-on-plus-product",
            "[(a,b,b),a] * [[a,b],c] = 0",
            "assym",
            "[A(t1,t2,t2), t1] @ [[t1,t2],t3]",
            direct,
            0,
            Some("3,3,1"),
            true,
        ),
        verdict_job(
            "linearized-jordan-is-commutator-of-associator",
            "<b,a,c*d> + <c,a,d*b> + <d,a,b*c> = -6[a,(b,c,d)]",
            "assym",
            "J(t2,t1,t3 @ t4) + J(t3,t1,t4 @ t2) + J(t4,t1,t2 @ t3) + 6 [t1, A(t2,t3,t4)]",
            direct,
            0,
            None,
            true,
        ),
        verdict_job(
            "commutator-with-associator-exchange",
            "[a1,(a2,a3,a4)] = [a2,(a1,a3,a4)]",
            "assym",
            "[t1, A(t2,t3,t4)] - [t2, A(t1,t3,t4)]",
            direct,
            0,
            None,
            true,
        ),
        job(
            "wjor-is-symmetric",
            "wjor(a1,a2,a3,a4) is symmetric in all four arguments on plus-assosymmetric algebras",
            |cfg| {
                let assym = variety("assym")?;
                let base = poly("wjor(t1,t2,t3,t4)", Flavor::Commutative)?;
                let opts = CheckOptions {
                    strategy: cfg.strategy.clone(),
                    ..CheckOptions::plus()
                };
                let mut failing = Vec::new();
                for perm in permutations(4) {
                    let p = base.rename(|v| perm[v as usize - 1] as u8 + 1)?;
                    if !check_polynomial(&assym, &base.sub(&p)?, &opts)?.is_identity {
                        failing.push(perm.iter().map(|i| i + 1).collect::<Vec<_>>());
                    }
                }
                Ok(Finding::new(failing.is_empty(), json!({ "permutations": 24, "failing": failing }))
                    .at(&md("1,1,1,1")))
            },
        ),
        vanishing_job(
            "associator-as-operator-commutator",
            "(a,b,c) = [l_a,l_c](b) in commutative algebras",
            "A(t1,t2,t3) - (t1(t3 t2) - t3(t1 t2))",
            comm,
        ),
        vanishing_job(
            "associator-antisymmetry",
            "(a,b,c) + (c,b,a) = 0 in commutative algebras",
            "A(t1,t2,t3) + A(t3,t2,t1)",
            comm,
        ),
        vanishing_job(
            "jor1-as-associators",
            "jor1(t1,t2,t3,t4) = (t1,t3t4,t2) - t3(t1,t4,t2) - t4(t1,t3,t2)",
            "jor1(t1,t2,t3,t4) - (A(t1,t3 t4,t2) - t3 A(t1,t4,t2) - t4 A(t1,t3,t2))",
            comm,
        ),
        vanishing_job(
            "jor1-from-wjor",
            "jor1(t1,t2,t3,t4) = -wjor(t1,t2,t3,t4) + wjor(t2,t1,t3,t4)",
            "jor1(t1,t2,t3,t4) + wjor(t1,t2,t3,t4) - wjor(t2,t1,t3,t4)",
            comm,
        ),
        vanishing_job(
            "jor2-relation-1",
            "jor2(t1,t2,t3,t4) - jor2(t2,t1,t3,t4) = -2 jor1(t1,t2,t3,t4)",
            "jor2(t1,t2,t3,t4) - jor2(t2,t1,t3,t4) + 2 jor1(t1,t2,t3,t4)",
            comm,
        ),
        vanishing_job(
            "jor2-relation-2",
            "jor2(t1,t2,t3,t4) - jor2(t1,t2,t4,t3) = -2 jor1(t3,t4,t1,t2)",
            "jor2(t1,t2,t3,t4) - jor2(t1,t2,t4,t3) + 2 jor1(t3,t4,t1,t2)",
            comm,
        ),
        vanishing_job(
            "jor2-relation-3",
            "jor2(t1,t2,t3,t4) + jor2(t2,t1,t3,t4) = -2 jor1(t3,t4,t1,t2)",
            "jor2(t1,t2,t3,t4) + jor2(t2,t1,t3,t4) + 2 jor1(t3,t4,t1,t2)",
            comm,
        ),
        vanishing_job(
            "jor2-relation-4",
            "jor2(t1,t2,t3,t4) + jor2(t1,t2,t4,t3) = -2 jor1(t1,t2,t3,t4)",
            "jor2(t1,t2,t3,t4) + jor2(t1,t2,t4,t3) + 2 jor1(t1,t2,t3,t4)",
            comm,
        ),
        vanishing_job(
            "jor2-swap-both-pairs",
            "jor2(t1,t2,t3,t4) + jor2(t2,t1,t4,t3) = 0",
            "jor2(t1,t2,t3,t4) + jor2(t2,t1,t4,t3)",
            comm,
        ),
        vanishing_job(
            "jor2-swap-both-pairs-variant",
            "jor2(t1,t2,t4,t3) + jor2(t2,t1,t3,t4) = 0",
            "jor2(t1,t2,t4,t3) + jor2(t2,t1,t3,t4)",
            comm,
        ),
        vanishing_job(
            "jor2-from-jor1",
            "jor2(t1,t2,t3,t4) = -jor1(t1,t2,t3,t4) - jor1(t3,t4,t1,t2)",
            "jor2(t1,t2,t3,t4) + jor1(t1,t2,t3,t4) + jor1(t3,t4,t1,t2)",
            comm,
        ),
        verdict_job(
            "assder-implies-lie-triple",
            "lietriple = 0 is a consequence of assder = 0",
            "assder",
            "lietriple(t1,t2,t3)",
            direct,
            0,
            None,
            true,
        ),
    ];
    jobs.extend(quasi_implication_jobs(&[(2, 1), (3, 1), (1, 2)]));
    jobs
}

// ---------------------------------------------------------------------------
// arman: equivalent forms of the Lie triple condition over commutative algebras

const ARMAN_FORMS: [(&str, &str); 7] = [
    (
        "derivation-form",
        "t1(t2(t3 t4)) - (t1(t2 t3)) t4 - t3(t1(t2 t4)) - t2(t1(t3 t4)) + (t2(t1 t3)) t4 + t3(t2(t1 t4))",
    ),
    ("square-form", "t1(t2(t3 t3)) - 2 (t1(t2 t3)) t3 - t2(t1(t3 t3)) + 2 t3(t2(t1 t3))"),
    ("associator-square-form", "A(t1,t3 t3,t2) - 2 t3 A(t1,t3,t2)"),
    ("associator-derivation-form", "A(t1,t2 t3,t4) - t2 A(t1,t3,t4) - t3 A(t1,t2,t4)"),
    ("jor2-form", "jor2(t1,t2,t3,t4)"),
    ("operator-form", "A(t1,t2 t4,t3) - t2 A(t1,t4,t3) - A(t1,t2,t3) t4"),
    ("wjor-exchange-form", "wjor(t1,t2,t3,t4) - wjor(t2,t1,t3,t4)"),
];

fn arman_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for i in 0..ARMAN_FORMS.len() {
        for j in i + 1..ARMAN_FORMS.len() {
            let (a, ta) = ARMAN_FORMS[i];
            let (b, tb) = ARMAN_FORMS[j];
            jobs.push(job(
                format!("arman-{a}-vs-{b}"),
                "the conditions characterizing [l_a,l_b] as a derivation are equivalent for commutative algebras",
                move |cfg| equivalence(&[ta], &[tb], &cfg.strategy),
            ));
        }
    }
    jobs.push(job(
        "arman-lie-triple-vs-jor1",
        "the Lie triple identity and jor1 = 0 are equivalent for commutative algebras",
        |cfg| equivalence(&["lietriple(t1,t2,t3)"], &["jor1(t1,t2,t3,t4)"], &cfg.strategy),
    ));
    jobs.push(job(
        "arman-jor2-implies-cubic-form",
        "jor2 = 0 implies 2((ba)a)a + b((aa)a) = 3(b(aa))a",
        |cfg| {
            let d = md("3,1");
            let ok = implies(
                &variety("comm")?,
                &[poly("jor2(t1,t2,t3,t4)", Flavor::Commutative)?],
                &poly("2 ((t2 t1) t1) t1 + t2((t1 t1) t1) - 3 (t2(t1 t1)) t1", Flavor::Commutative)?,
                &d,
                &cfg.strategy,
            )?;
            Ok(Finding::new(ok, json!({ "implied": ok, "direction": "forward only" })).at(&d))
        },
    ));
    jobs
}

fn equivalence(s1: &[&str], s2: &[&str], strategy: &Strategy) -> Result<Finding> {
    let parse_all = |xs: &[&str]| -> Result<Vec<Polynomial>> { xs.iter().map(|t| poly(t, Flavor::Commutative)).collect() };
    let degrees = degree_four();
    let r = systems_equivalent(&parse_all(s1)?, &parse_all(s2)?, &variety("comm")?, &degrees, strategy)?;
    let pass = r.iter().all(|c| c.equivalent());
    let mut f = Finding::new(pass, json!({ "first": s1, "second": s2, "comparisons": r }));
    f.multidegrees = degrees;
    Ok(f)
}

// ---------------------------------------------------------------------------
// char3

fn char3_jobs() -> Vec<Job> {
    let plus = Mode::Plus;
    let mut jobs = vec![
        verdict_job(
            "wjor-char-3",
            "wjor = 0 holds in plus-assosymmetric algebras of characteristic 3",
            "assym",
            "wjor(t1,t2,t3,t4)",
            plus,
            3,
            None,
            true,
        ),
        verdict_job(
            "glennie-char-3",
            "glen = 0 holds in plus-assosymmetric algebras of characteristic 3",
            "assym",
            "glen(t1,t2,t3)",
            plus,
            3,
            Some("3,3,2"),
            true,
        ),
        verdict_job(
            "lie-triple-char-3",
            "the Lie triple identity holds in every characteristic other than 2",
            "assym",
            "lietriple(t1,t2,t3)",
            plus,
            3,
            None,
            true,
        ),
        verdict_job(
            "g22-char-3",
            "g_[2,2]^(1) = 0 holds in characteristic 3",
            "assym",
            "g_22_1(t1,t2)",
            plus,
            3,
            None,
            true,
        ),
        verdict_job(
            "g211-first-char-3",
            "g_[2,1,1]^(1) = 0 holds in characteristic 3",
            "assym",
            "g_211_1(t1,t2,t3)",
            plus,
            3,
            None,
            true,
        ),
        verdict_job(
            "g211-second-char-3",
            "g_[2,1,1]^(2) = 0 holds in characteristic 3",
            "assym",
            "g_211_2(t1,t2,t3)",
            plus,
            3,
            None,
            true,
        ),
        job(
            "characteristic-2-note",
            "in characteristic 2 the plus and minus algebras coincide, so the plus algebra is Lie",
            |_| {
                Ok(Finding::new(
                    true,
                    json!({ "note": "no computation: a*b = ab + ba equals [a,b] when 2 = 0, \
                             so all identities follow from commutativity and the Jacobi identity" }),
                )
                .char(2))
            },
        ),
    ];
    for d in DEGREE_FOUR {
        jobs.push(job(
            format!("plus-kernel-char-3-[{d}]"),
            "in characteristic 3 every degree-4 identity of the plus algebra follows from commutativity and wjor",
            move |cfg| {
                let d = md(d);
                let f = PrimeField::new(3)?;
                let k = plus_identity_kernel(&variety("assym")?, &d, f, &cfg.strategy)?;
                let w = variety("comm")?.with_identities("wjor", &[poly("wjor(t1,t2,t3,t4)", Flavor::Commutative)?])?;
                let c = consequence_span(&w, &d, f, &cfg.strategy)?;
                let same = k.basis.monomials == c.basis.monomials;
                let both = same && k.span.contains_span(&c.span) && c.span.contains_span(&k.span);
                Ok(Finding::new(both, json!({ "kernel_dim": k.dim(), "wjor_span_dim": c.span.rank() }))
                    .at(&d)
                    .char(3))
            },
        ));
    }
    jobs
}

// ---------------------------------------------------------------------------
// quasi: q-commutator twists

fn q_text(n: i64, m: i64) -> String {
    if m == 1 {
        n.to_string()
    } else {
        format!("{n}/{m}")
    }
}

fn quasi_implication_jobs(qs: &[(i64, i64)]) -> Vec<Job> {
    qs.iter()
        .map(|&(n, m)| {
            let q = q_text(n, m);
            job(
                format!("quasi-assosymmetric-implies-assder-q={q}"),
                "assder = 0 is a consequence of lsym^(q) = 0 and rsym^(q) = 0 when q^2 != 1",
                move |cfg| {
                    let ids = [
                        poly(&format!("lsym_q{{q={q}}}(t1,t2,t3)"), Flavor::Planar)?,
                        poly(&format!("rsym_q{{q={q}}}(t1,t2,t3)"), Flavor::Planar)?,
                    ];
                    let d = md("1,1,1,1");
                    let ok = implies(&variety("magmatic")?, &ids, &poly("assder(t1,t2,t3,t4)", Flavor::Planar)?, &d, &cfg.strategy)?;
                    Ok(Finding::new(ok, json!({ "q": q, "implied": ok })).at(&d))
                },
            )
        })
        .collect()
}

fn quasi_jobs() -> Vec<Job> {
    let mut jobs = Vec::new();
    for n in [2i64, 3, 5] {
        jobs.push(job(
            format!("sigma-golden-q={n}"),
            "sigma_{-q} applied to lsym and rsym gives the twelve-term displays lsym^(q), rsym^(q)",
            move |_| {
                let q = BigRational::from_integer(n.into());
                let mut rows = Vec::new();
                let mut pass = true;
                for (base, display) in [("lsym", "lsym_q"), ("rsym", "rsym_q")] {
                    let twisted = apply_sigma_q(&poly(&format!("{base}(t1,t2,t3)"), Flavor::Planar)?, &-q.clone())?;
                    let shown = poly(&format!("{display}{{q={n}}}(t1,t2,t3)"), Flavor::Planar)?;
                    let ok = twisted == shown;
                    pass &= ok && shown.len() == 12;
                    rows.push(json!({ "identity": base, "terms": shown.len(), "equal": ok }));
                }
                Ok(Finding::new(pass, json!({ "q": n, "results": rows })).at(&md("1,1,1")))
            },
        ));
    }
    jobs.extend(quasi_implication_jobs(&[(2, 1), (3, 1), (5, 1), (1, 2)]));
    jobs
}

// ---------------------------------------------------------------------------
// koszul

fn koszul_jobs(config: &SuiteConfig) -> Vec<Job> {
    let mut jobs = vec![
        job(
            "multilinear-dimensions",
            "multilinear dimensions 1, 2, 7, 29, 136 of the free assosymmetric algebra",
            |cfg| dims_job("assym", &[1, 2, 7, 29, 136], cfg),
        ),
        job(
            "dual-multilinear-dimensions",
            "multilinear dimensions 1, 2, 5, 9, 9, 11 for the dual operad",
            |cfg| dims_job("dual-assosymmetric", &[1, 2, 5, 9, 9, 11], cfg),
        ),
        job(
            "generating-function-residual",
            "G(G^!(x)) = x + 3x^5/8 + O(x^6), so the operad is not Koszul",
            |cfg| {
                let r = koszul_residual(&variety("assym")?, &variety("dual-assosymmetric")?, 5, &cfg.strategy)?;
                let expected = ["0", "0", "0", "0", "3/8"];
                let pass = r.residual == expected && r.koszul_excluded;
                let mut f = Finding::new(pass, serde_json::to_value(&r).map_err(json_error)?);
                f.multidegrees = (1..=5).map(Multidegree::multilinear).collect();
                f.warnings = r.warnings.clone();
                Ok(f)
            },
        ),
        job(
            "generating-function-residual-order-4",
            "the compositional inverse relation holds up to order 4",
            |_| {
                let g = TruncatedSeries::from_dims(&[1, 2, 7, 29])?;
                let h = TruncatedSeries::from_dims(&[1, 2, 5, 9])?;
                let r = compose(&g, &h, 4)?.sub(&TruncatedSeries::x(4));
                Ok(Finding::new(r.is_zero(), json!({ "residual": r.to_string() })))
            },
        ),
    ];
    if config.extended {
        jobs.push(job(
            "dual-multilinear-dimension-7",
            "the dual operad has multilinear dimension 13 in degree 7",
            |cfg| {
                let d = Multidegree::multilinear(7);
                let r = quotient_dim(&variety("dual-assosymmetric")?, &d, 0, &cfg.strategy)?;
                let mut f = Finding::new(r.dim == 13, json!({ "dim": r.dim, "expected": 13 })).at(&d);
                f.warnings = r.warnings;
                Ok(f)
            },
        ));
    }
    jobs
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Invalid(format!("cannot serialize report: {e}"))
}

fn dims_job(name: &str, expected: &[u64], cfg: &SuiteConfig) -> Result<Finding> {
    let (dims, warnings) = multilinear_dims(&variety(name)?, expected.len(), &cfg.strategy)?;
    let mut f = Finding::new(dims == expected, json!({ "dims": dims, "expected": expected }));
    f.multidegrees = (1..=expected.len()).map(Multidegree::multilinear).collect();
    f.warnings = warnings;
    Ok(f)
}

// ---------------------------------------------------------------------------
// albert: the exceptional 27-dimensional model

fn albert_jobs() -> Vec<Job> {
    let sampled = |name: &str, claim: &str, text: &'static str, want_all_zero: bool| {
        job(name, claim, move |cfg| {
            let r = sample_report(
                &parse(text)?,
                text,
                MacroTable::builtin(),
                cfg.albert_seed,
                cfg.albert_samples,
                cfg.albert_bound,
            )?;
            let pass = if want_all_zero { r.all_zero() } else { r.first_nonzero.is_some() };
            Ok(Finding::new(pass, serde_json::to_value(&r).map_err(json_error)?))
        })
    };
    vec![
        sampled("jordan-vanishes", "the Albert algebra is a Jordan algebra", "jor(t1,t2)", true),
        sampled(
            "lie-triple-vanishes",
            "Jordan algebras satisfy the Lie triple identity",
            "lietriple(t1,t2,t3)",
            true,
        ),
        sampled(
            "wjor-vanishes",
            "wjor is the full linearization of jor, so it vanishes on a Jordan algebra of characteristic 0",
            "wjor(t1,t2,t3,t4)",
            true,
        ),
        sampled(
            "glennie-has-witness",
            "glen does not vanish on the Albert algebra",
            "glen(t1,t2,t3)",
            false,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn failing_checks_become_report_entries() {
        let jobs = vec![
            job("b", "claim", |_| Ok(Finding::new(false, Value::Null))),
            job("a", "claim", |_| Err(Error::Invalid("boom".into()))),
        ];
        let mut r = run_jobs(&jobs, &SuiteConfig::default()).unwrap();
        r.sort_by(|x, y| x.check.cmp(&y.check));
        assert_eq!(r[0].verdict, Outcome::Error);
        assert_eq!(r[1].verdict, Outcome::Fail);
    }

    #[test]
    fn quasi_suite_passes() {
        let r = run_suite(Suite::Quasi, &SuiteConfig::default()).unwrap();
        assert!(r.passed, "{:#?}", r.failures().collect::<Vec<_>>());
    }
}

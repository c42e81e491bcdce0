//! End-to-end acceptance run: fifteen numbered criteria, each with its
//! expected values written out here and its wall-clock budget. Runs without
//! the test harness so that the line per criterion is always printed.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use serde_json::{json, Value};

use nonassoc::albert::sample_report;
use nonassoc::engine::{
    implies, is_identity, parse_letters, plus_identity_kernel, run_suite, CheckOptions, HentzelBasis, Mode, Suite,
    SuiteConfig, Verdict,
};
use nonassoc::lang::{apply_sigma_q, expand, expand_with, parse_with, Expr};
use nonassoc::series::{koszul_residual, multilinear_dims};
use nonassoc::term::{Field, Flavor, Multidegree, Polynomial, Rationals, Scalar};
use nonassoc::tideal::{consequence_span, quotient_dim, Catalog, Strategy, VarietyPresentation};
use nonassoc::Result;

struct Ctx {
    catalog: Catalog,
    strategy: Strategy,
}

/// What a criterion found. `report` must not depend on timing.
struct Found {
    pass: bool,
    report: Value,
}

impl Found {
    fn new(pass: bool, report: Value) -> Self {
        Found { pass, report }
    }
}

impl Ctx {
    fn new() -> Self {
        Ctx {
            catalog: Catalog::builtin(),
            strategy: Strategy::default(),
        }
    }

    fn variety(&self, name: &str) -> VarietyPresentation {
        self.catalog.get(name).unwrap()
    }

    fn expr(&self, text: &str) -> Expr {
        parse_with(text, self.catalog.macros()).unwrap()
    }

    fn poly(&self, text: &str, flavor: Flavor) -> Polynomial {
        expand_with(&self.expr(text), flavor, Field::Rational, self.catalog.macros())
            .unwrap()
            .poly
    }

    fn check(&self, variety: &str, text: &str, mode: Mode, p: u64, d: &str) -> Result<Verdict> {
        let opts = CheckOptions {
            mode,
            strategy: self.strategy.clone(),
            certificate: false,
            ..CheckOptions::default()
        }
        .with_char(p)
        .at(md(d));
        is_identity(&self.variety(variety), &self.expr(text), self.catalog.macros(), &opts)
    }
}

fn md(s: &str) -> Multidegree {
    Multidegree::parse(s).unwrap()
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// The verdict minus its timing.
fn verdict_value(v: &Verdict) -> Value {
    let mut x = serde_json::to_value(v).unwrap();
    x.as_object_mut().unwrap().remove("timing_ms");
    x
}

fn c1(ctx: &Ctx) -> Result<Found> {
    let want = [("4", 3), ("3,1", 7), ("2,2", 9), ("2,1,1", 16), ("1,1,1,1", 29)];
    let mut got = BTreeMap::new();
    let mut pass = true;
    for (d, w) in want {
        let r = quotient_dim(&ctx.variety("assosymmetric"), &md(d), 0, &ctx.strategy)?;
        pass &= r.dim == w && r.agree;
        got.insert(d, r.dim);
    }
    Ok(Found::new(pass, json!(got)))
}

fn c2(ctx: &Ctx) -> Result<Found> {
    let (dims, _) = multilinear_dims(&ctx.variety("assosymmetric"), 5, &ctx.strategy)?;
    Ok(Found::new(dims == [1, 2, 7, 29, 136], json!(dims)))
}

fn c3(ctx: &Ctx) -> Result<Found> {
    let dual = ctx.variety("dual-assosymmetric");
    let (dims, _) = multilinear_dims(&dual, 6, &ctx.strategy)?;
    // The degree-7 value is the optional extended computation.
    let seven = quotient_dim(&dual, &Multidegree::multilinear(7), 0, &ctx.strategy)?.dim;
    Ok(Found::new(
        dims == [1, 2, 5, 9, 9, 11] && seven == 13,
        json!({ "dims": dims, "degree_7": seven }),
    ))
}

fn c4(ctx: &Ctx) -> Result<Found> {
    let mut out = Vec::new();
    let mut pass = true;
    for p in [0, 5] {
        let v = ctx.check("assym", "lietriple(t1,t2,t3)", Mode::Plus, p, "1,2,1")?;
        pass &= v.is_identity;
        out.push(verdict_value(&v));
    }
    Ok(Found::new(pass, json!(out)))
}

fn c5(ctx: &Ctx) -> Result<Found> {
    let v = ctx.check("assym", "glen(t1,t2,t3)", Mode::Plus, 0, "3,3,2")?;
    let c = &v.components[0];
    let pass = v.is_identity
        && c.columns == 240_240
        && c.fields.len() == 2
        && c.residuals.len() == 2
        && c.residuals.iter().all(|r| r == "0");
    Ok(Found::new(pass, verdict_value(&v)))
}

fn c6(ctx: &Ctx) -> Result<Found> {
    let v = ctx.check("assym", "D(t1,t2,t3) - shest(t1,t2,t3)", Mode::Direct, 0, "3,3,1")?;
    let pass = v.is_identity && v.components[0].columns == 18_480 && v.components[0].fields == ["Q"];
    Ok(Found::new(pass, verdict_value(&v)))
}

/// Residual coordinates of a commutative expression read in the plus
/// algebra, as `monomial -> coefficient` in `t` notation.
fn residual(basis: &HentzelBasis, ctx: &Ctx, e: &Expr) -> Result<BTreeMap<String, BigRational>> {
    let p = expand_with(e, Flavor::Commutative, Field::Rational, ctx.catalog.macros())?.poly;
    let c = basis.coordinates(&p, Mode::Plus)?;
    Ok(c.support()
        .into_iter()
        .map(|(m, x)| (m.to_string(), x.parse().unwrap()))
        .collect())
}

fn scaled(vector: &[(&str, i64)], k: i64) -> BTreeMap<String, BigRational> {
    if k == 0 {
        return BTreeMap::new();
    }
    vector
        .iter()
        .map(|(m, c)| (parse_letters(m).unwrap().to_string(), q(c * k, 1)))
        .collect()
}

fn c7(ctx: &Ctx) -> Result<Found> {
    let assym = ctx.variety("assym");
    let mut pass = true;
    let mut cases = Vec::new();

    let b4 = HentzelBasis::new(&assym, &md("4"))?;
    let f4 = residual(&b4, ctx, &ctx.expr("g_4_1(t1)"))?;
    let want4 = scaled(&[("((aa)a)a", -2), ("(a(aa))a", 4), ("(aa)(aa)", -2)], 1);
    pass &= f4 == want4;
    cases.push(json!({ "type": "4", "residual": f4.iter().map(|(m, c)| (m.clone(), c.to_string())).collect::<BTreeMap<_, _>>() }));

    let v = [("(aa)(bb)", 1), ("(b(ab))a", -2), ("((aa)b)b", -1), ("((ba)b)a", 2)];
    let b22 = HentzelBasis::new(&assym, &md("2,2"))?;
    for mu in [[1i64, 0], [1, -1]] {
        let e = Expr::combination(vec![(mu[0], ctx.expr("g_22_1(t1,t2)")), (mu[1], ctx.expr("g_22_1(t2,t1)"))]);
        let got = residual(&b22, ctx, &e)?;
        let ok = got == scaled(&v, 6 * (mu[0] + mu[1]));
        pass &= ok;
        cases.push(json!({ "type": "2,2", "mu": mu, "ok": ok }));
    }

    let w = [("(aa)(bc)", 1), ("(c(ab))a", -2), ("((aa)b)c", -1), ("((ca)b)a", 2)];
    let b211 = HentzelBasis::new(&assym, &md("2,1,1"))?;
    for mu in [[1i64, 0, 0], [1, -1, 0]] {
        let e = Expr::combination(vec![
            (mu[0], ctx.expr("g_211_1(t1,t2,t3)")),
            (mu[1], ctx.expr("g_211_2(t1,t2,t3)")),
            (mu[2], ctx.expr("g_211_2(t1,t3,t2)")),
        ]);
        let got = residual(&b211, ctx, &e)?;
        let ok = got == scaled(&w, -6 * (mu[0] + mu[1] + mu[2]));
        pass &= ok;
        cases.push(json!({ "type": "2,1,1", "mu": mu, "ok": ok }));
    }
    Ok(Found::new(pass, json!(cases)))
}

fn c8(ctx: &Ctx) -> Result<Found> {
    let wjor = ctx.check("assym", "wjor(t1,t2,t3,t4)", Mode::Plus, 3, "1,1,1,1")?;
    let glen = ctx.check("assym", "glen(t1,t2,t3)", Mode::Plus, 3, "3,3,2")?;
    Ok(Found::new(
        wjor.is_identity && glen.is_identity,
        json!([verdict_value(&wjor), verdict_value(&glen)]),
    ))
}

fn c9(ctx: &Ctx) -> Result<Found> {
    let assym = ctx.variety("assosymmetric");
    let assoc = ctx.variety("associative");
    let jor1 = ctx
        .variety("commutative")
        .with_identities("jor1", &[ctx.poly("jor1(t1,t2,t3,t4)", Flavor::Commutative)])?;
    let mut pass = true;
    let mut out = BTreeMap::new();
    for d in ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"] {
        let d = md(d);
        let k = plus_identity_kernel(&assym, &d, Rationals, &ctx.strategy)?;
        let a = plus_identity_kernel(&assoc, &d, Rationals, &ctx.strategy)?;
        let j = consequence_span(&jor1, &d, Rationals, &ctx.strategy)?;
        assert_eq!(k.basis.monomials, j.basis.monomials);
        let equal = j.span.contains_span(&k.span) && k.span.contains_span(&j.span);
        let inside = a.span.contains_span(&k.span);
        pass &= equal && inside;
        out.insert(d.to_string(), json!({ "kernel_dim": k.dim(), "equals_jor1_span": equal, "in_associative": inside }));
    }
    Ok(Found::new(pass, json!(out)))
}

/// Checks the lemma suite must contain (besides the pairwise form comparisons).
const LEMMA_CHECKS: [&str; 17] = [
    "plus-associator-is-double-commutator",
    "commutator-in-first-slot",
    "commutator-in-middle-slot",
    "commutator-in-last-slot",
    "adjoint-of-commutator-is-derivation",
    "adjoint-of-commutator-is-plus-derivation",
    "associator-commutator-vanishes-on-plus-product",
    "linearized-jordan-is-commutator-of-associator",
    "wjor-is-symmetric",
    "jor1-from-wjor",
    "jor2-from-jor1",
    "jor2-relation-1",
    "jor2-relation-2",
    "jor2-relation-3",
    "jor2-relation-4",
    "jor1-as-associators",
    "assder-implies-lie-triple",
];

fn c10(_: &Ctx) -> Result<Found> {
    let r = run_suite(Suite::Lemmas, &SuiteConfig::default())?;
    let failed: Vec<_> = r.failures().map(|c| c.check.clone()).collect();
    let names: Vec<_> = r.checks.iter().map(|c| c.check.clone()).collect();
    let missing: Vec<_> = LEMMA_CHECKS
        .iter()
        .filter(|k| !names.iter().any(|n| n == *k))
        .collect();
    let arman = names.iter().filter(|n| n.starts_with("arman-") && n.contains("-vs-")).count();
    let covered = missing.is_empty() && arman == 22;
    let quasi = ["2", "3", "1/2"]
        .iter()
        .all(|x| names.contains(&format!("quasi-assosymmetric-implies-assder-q={x}")));
    Ok(Found::new(
        r.passed && covered && quasi,
        json!({ "checks": names.len(), "failed": failed, "missing": missing, "arman_pairs": arman, "quasi": quasi }),
    ))
}

/// Coefficients of the twelve monomials of the twisted left symmetry at
/// parameter q, as (constant, q, q²) triples.
const LSYM_Q: [([i64; 3], &str); 12] = [
    ([1, 0, 0], "t1 (t2 t3)"),
    ([0, -1, 0], "t1 (t3 t2)"),
    ([-1, 0, 0], "t2 (t1 t3)"),
    ([0, 1, 0], "t2 (t3 t1)"),
    ([0, 1, 1], "t3 (t1 t2)"),
    ([0, -1, -1], "t3 (t2 t1)"),
    ([-1, -1, 0], "(t1 t2) t3"),
    ([1, 1, 0], "(t2 t1) t3"),
    ([0, 1, 0], "(t1 t3) t2"),
    ([0, 0, -1], "(t3 t1) t2"),
    ([0, -1, 0], "(t2 t3) t1"),
    ([0, 0, 1], "(t3 t2) t1"),
];

fn c11(ctx: &Ctx) -> Result<Found> {
    let lsym = ctx.poly("lsym(t1,t2,t3)", Flavor::Planar);
    let mut pass = true;
    let mut out = Vec::new();
    for n in [2i64, 3, 5] {
        let twisted = apply_sigma_q(&lsym, &q(-n, 1))?;
        let mut display = Polynomial::zero(Flavor::Planar, Field::Rational);
        for (c, m) in LSYM_Q {
            let coef = c[0] + c[1] * n + c[2] * n * n;
            let term = expand(&parse_with(m, &Default::default())?, Flavor::Planar)?;
            display = display.add_scaled(&Scalar::Rational(q(coef, 1)), &term)?;
        }
        let ok = twisted == display && twisted.len() == 12;
        pass &= ok;
        out.push(json!({ "q": n, "equal": ok }));
    }
    Ok(Found::new(pass, json!(out)))
}

fn c12(ctx: &Ctx) -> Result<Found> {
    let r = koszul_residual(
        &ctx.variety("assosymmetric"),
        &ctx.variety("dual-assosymmetric"),
        5,
        &ctx.strategy,
    )?;
    let pass = r.residual == ["0", "0", "0", "0", "3/8"] && r.koszul_excluded;
    Ok(Found::new(pass, json!({ "residual": r.residual, "text": r.residual_text })))
}

fn c13(ctx: &Ctx) -> Result<Found> {
    let run = |text: &str| sample_report(&ctx.expr(text), text, ctx.catalog.macros(), 7, 100, 3);
    let jor = run("jor(t1,t2)")?;
    let lie = run("lietriple(t1,t2,t3)")?;
    let glen = run("glen(t1,t2,t3)")?;
    let pass = jor.all_zero() && lie.all_zero() && glen.first_nonzero.is_some();
    Ok(Found::new(
        pass,
        json!({
            "jor_zero": jor.zero_count,
            "lietriple_zero": lie.zero_count,
            "glen_zero": glen.zero_count,
            "glen_witness_sample": glen.first_nonzero.map(|w| w.sample),
        }),
    ))
}

fn c14(ctx: &Ctx) -> Result<Found> {
    let comm = ctx.variety("commutative");
    let jor = ctx.poly("jor(t1,t2)", Flavor::Commutative);
    let lie = ctx.poly("lietriple(t1,t2,t3)", Flavor::Commutative);
    let forward = implies(&comm, std::slice::from_ref(&jor), &lie, &md("1,2,1"), &ctx.strategy)?;
    let backward = implies(&comm, &[lie], &jor, &md("3,1"), &ctx.strategy)?;
    Ok(Found::new(
        forward && !backward,
        json!({ "jor_implies_lietriple": forward, "lietriple_implies_jor": backward }),
    ))
}

type Criterion = fn(&Ctx) -> Result<Found>;

const CRITERIA: [(u32, &str, Criterion, u64); 14] = [
    (1, "degree-4 dimensions 3, 7, 9, 16, 29", c1, 60),
    (2, "multilinear dimensions 1, 2, 7, 29, 136", c2, 60),
    (3, "dual multilinear dimensions 1, 2, 5, 9, 9, 11 (and 13)", c3, 600),
    (4, "plus-mode lietriple at [1,2,1], char 0 and 5", c4, 1),
    (5, "plus-mode glen at [3,3,2], two primes", c5, 1800),
    (6, "D - shest vanishes at [3,3,1] over Q", c6, 120),
    (7, "residual coordinates in degree 4", c7, 60),
    (8, "char 3: wjor and glen are plus identities", c8, 1800),
    (9, "plus kernels equal the jor1 span, inside the associative kernels", c9, 300),
    (10, "lemma suite", c10, 600),
    (11, "sigma_q golden values at q = 2, 3, 5", c11, 1),
    (12, "Koszul residual 3/8 x^5", c12, 120),
    (13, "Albert samples: jor, lietriple vanish; glen witness", c13, 300),
    (14, "jor implies lietriple but not conversely", c14, 60),
];

fn run_one(ctx: &Ctx, f: Criterion) -> (std::result::Result<Found, String>, Duration) {
    let start = Instant::now();
    let r = f(ctx).map_err(|e| e.to_string());
    (r, start.elapsed())
}

/// Reports of criteria 1-9 computed inside a pool of `n` threads.
fn reports_with_workers(ctx: &Ctx, n: usize) -> Vec<Option<Value>> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap();
    pool.install(|| {
        CRITERIA
            .iter()
            .filter(|(k, ..)| *k <= 9)
            .map(|(_, _, f, _)| f(ctx).ok().map(|x| x.report))
            .collect()
    })
}

fn main() {
    let ctx = Ctx::new();
    let mut failed = Vec::new();
    let mut first_reports = Vec::new();
    for (k, name, f, budget) in CRITERIA {
        let (r, took) = run_one(&ctx, f);
        let (pass, note) = match &r {
            Ok(found) if took > Duration::from_secs(budget) => (false, format!("over budget of {budget} s")),
            Ok(found) if !found.pass => (false, found.report.to_string()),
            Ok(_) => (true, String::new()),
            Err(e) => (false, format!("error: {e}")),
        };
        if k <= 9 {
            first_reports.push(r.ok().map(|x| x.report));
        }
        println!(
            "criterion {k:2} {} {name} ({:.1} s){}",
            if pass { "PASS" } else { "FAIL" },
            took.as_secs_f64(),
            if note.is_empty() { String::new() } else { format!(": {note}") }
        );
        if !pass {
            failed.push(k);
        }
    }

    let start = Instant::now();
    let mut same = first_reports.iter().all(Option::is_some);
    for n in [1, 4, 8] {
        same &= reports_with_workers(&ctx, n) == first_reports;
    }
    println!(
        "criterion 15 {} reports of criteria 1-9 identical with 1, 4, 8 workers ({:.1} s)",
        if same { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    if !same {
        failed.push(15);
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

//! Command-line front end for the nonassoc identity engine.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use nonassoc::albert::sample_report;
use nonassoc::engine::{
    is_identity, plus_identity_kernel, run_suite, systems_equivalent, CheckOptions, CheckReport, Mode, Outcome,
    Suite, SuiteConfig, SuiteReport, Verdict,
};
use nonassoc::lang::{apply_sigma_q_expr, expand_with, parse_with, star_expand};
use nonassoc::series::koszul_residual;
use nonassoc::term::{parse_rational, Field, Flavor, Multidegree, Polynomial};
use nonassoc::tideal::{quotient_dim, Catalog, Strategy};
use nonassoc::{with_field, Error, Result};

#[derive(Parser)]
#[command(name = "nonassoc", version, about = "Exact polynomial identity checks for nonassociative algebras")]
struct Cli {
    #[command(flatten)]
    run: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunConfig {
    /// Characteristic of the ground field: 0 or a prime.
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Extra variety and macro definitions (TOML).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 8)]
    degree_cap: u32,
    /// Components with more monomials use the graded construction.
    #[arg(long, global = true)]
    direct_column_limit: Option<u128>,
    /// Characteristic-zero components with more monomials run modulo two primes.
    #[arg(long, global = true)]
    rational_column_limit: Option<u128>,
    /// Allow expensive computations (Koszul orders above 5, exact optional suite checks).
    #[arg(long, global = true)]
    extended: bool,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Direct,
    Plus,
}

#[derive(Copy, Clone, ValueEnum)]
enum FlavorArg {
    Planar,
    Commutative,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension of a component of the relatively free algebra.
    Dim {
        variety: String,
        #[arg(long)]
        multidegree: String,
    },
    /// Decide whether an expression is an identity of a variety.
    Check {
        variety: String,
        expr: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Direct)]
        mode: ModeArg,
        #[arg(long)]
        multidegree: Option<String>,
        /// Print the consequences that combine to the candidate.
        #[arg(long)]
        certificate: bool,
    },
    /// Expand an expression into the free algebra.
    Expand {
        expr: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Planar)]
        flavor: FlavorArg,
        /// Also push a commutative expansion through x*y = xy + yx.
        #[arg(long)]
        star: bool,
    },
    /// Replace every product xy by xy + q yx.
    SigmaQ {
        expr: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Identities of the plus algebra in one commutative component.
    Kernel {
        variety: String,
        #[arg(long)]
        multidegree: String,
    },
    /// Compare two identity systems over an ambient variety.
    Equiv {
        /// Identity of the first system (repeatable).
        #[arg(long, required = true)]
        first: Vec<String>,
        /// Identity of the second system (repeatable).
        #[arg(long, required = true)]
        second: Vec<String>,
        #[arg(long, default_value = "comm")]
        ambient: String,
        /// Multidegrees to compare (repeatable; defaults to the degree-4 types).
        #[arg(long)]
        multidegree: Vec<String>,
    },
    /// Generating-function test of Koszulity.
    Koszul {
        #[arg(long, default_value_t = 5)]
        order: usize,
        #[arg(long, default_value = "assosymmetric")]
        variety: String,
        #[arg(long, default_value = "dual-assosymmetric")]
        dual: String,
    },
    /// Evaluate a commutative expression on random elements of the Albert algebra.
    Albert {
        expr: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Run a named check suite, or `all`.
    Suite {
        name: String,
        /// Write the JSON report here.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

impl RunConfig {
    fn validate(&self) -> Result<()> {
        Field::from_characteristic(self.characteristic)?;
        if self.degree_cap == 0 {
            return Err(Error::Invalid("the degree cap must be positive".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Invalid("the worker count must be positive".into()));
        }
        if self.direct_column_limit == Some(0) || self.rational_column_limit == Some(0) {
            return Err(Error::Invalid("column limits must be positive".into()));
        }
        Ok(())
    }

    fn strategy(&self) -> Strategy {
        let mut s = Strategy {
            degree_cap: self.degree_cap,
            ..Strategy::default()
        };
        if let Some(n) = self.direct_column_limit {
            s.direct_column_limit = n;
        }
        if let Some(n) = self.rational_column_limit {
            s.rational_column_limit = n;
        }
        s
    }

    fn catalog(&self) -> Result<Catalog> {
        match &self.catalog {
            Some(p) => Catalog::load(p),
            None => Ok(Catalog::builtin()),
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = &cli.run;
    cfg.validate()?;
    if let Some(n) = cfg.workers {
        // Only fails if a pool already exists, in which case it is reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let catalog = cfg.catalog()?;
    let strategy = cfg.strategy();
    let p = cfg.characteristic;
    match &cli.command {
        Command::Dim { variety, multidegree } => {
            let start = Instant::now();
            let v = catalog.get(variety)?;
            let d = Multidegree::parse(multidegree)?;
            let r = quotient_dim(&v, &d, p, &strategy)?;
            let text = format!("dim {} {} (char {p}) = {}", v.name, d, r.dim);
            let report = CheckReport {
                check: "dim".into(),
                claim_ref: format!("dimension of {} at {d}", v.name),
                verdict: if r.agree { Outcome::Pass } else { Outcome::Fail },
                char: p,
                multidegrees: vec![d.to_string()],
                timing: start.elapsed().as_millis(),
                warnings: r.warnings.clone(),
                detail: to_value(&r)?,
            };
            emit(cfg.format, &report, &text)
        }
        Command::Check {
            variety,
            expr,
            mode,
            multidegree,
            certificate,
        } => {
            let v = catalog.get(variety)?;
            let mut opts = CheckOptions {
                mode: match mode {
                    ModeArg::Direct => Mode::Direct,
                    ModeArg::Plus => Mode::Plus,
                },
                strategy,
                certificate: *certificate,
                ..CheckOptions::default()
            }
            .with_char(p);
            if let Some(d) = multidegree {
                opts = opts.at(Multidegree::parse(d)?);
            }
            let verdict = is_identity(&v, &parse_with(expr, catalog.macros())?, catalog.macros(), &opts)?;
            let text = render_verdict(expr, &verdict, *certificate);
            let report = CheckReport {
                check: "check".into(),
                claim_ref: format!("{expr} = 0 in {}", v.name),
                verdict: outcome(verdict.is_identity),
                char: p,
                multidegrees: verdict.multidegrees.iter().map(|d| d.to_string()).collect(),
                timing: verdict.timing_ms,
                warnings: verdict.warnings.clone(),
                detail: to_value(&verdict)?,
            };
            emit(cfg.format, &report, &text)
        }
        Command::Expand { expr, flavor, star } => {
            let start = Instant::now();
            let flavor = match flavor {
                FlavorArg::Planar => Flavor::Planar,
                FlavorArg::Commutative => Flavor::Commutative,
            };
            let field = Field::from_characteristic(p)?;
            let e = expand_with(&parse_with(expr, catalog.macros())?, flavor, field, catalog.macros())?;
            let mut poly = e.poly;
            if *star {
                poly = star_expand(&poly)?;
            }
            let text = poly.to_string();
            let report = plain_report("expand", expr, p, &poly, start, e.warnings);
            emit(cfg.format, &report, &text)
        }
        Command::SigmaQ { expr, q } => {
            let start = Instant::now();
            let q = parse_rational(q)?;
            let poly = apply_sigma_q_expr(&parse_with(expr, catalog.macros())?, &q)?;
            let text = poly.to_string();
            let mut report = plain_report("sigma-q", expr, 0, &poly, start, Vec::new());
            report.detail["q"] = json!(q.to_string());
            emit(cfg.format, &report, &text)
        }
        Command::Kernel { variety, multidegree } => {
            let start = Instant::now();
            let v = catalog.get(variety)?;
            let d = Multidegree::parse(multidegree)?;
            let polys: Vec<Polynomial> = with_field!(Field::from_characteristic(p)?, |f| {
                plus_identity_kernel(&v, &d, f, &strategy)?.polynomials()
            });
            let mut text = format!("plus identities of {} at {d} (char {p}): dimension {}", v.name, polys.len());
            for q in &polys {
                text.push_str(&format!("\n  {q}"));
            }
            let report = CheckReport {
                check: "kernel".into(),
                claim_ref: format!("identities of the plus algebra of {} at {d}", v.name),
                verdict: Outcome::Pass,
                char: p,
                multidegrees: vec![d.to_string()],
                timing: start.elapsed().as_millis(),
                warnings: Vec::new(),
                detail: json!({
                    "dimension": polys.len(),
                    "basis": polys.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                }),
            };
            emit(cfg.format, &report, &text)
        }
        Command::Equiv {
            first,
            second,
            ambient,
            multidegree,
        } => {
            if p != 0 {
                return Err(Error::Invalid("equiv compares consequence spans over Q only".into()));
            }
            let start = Instant::now();
            let amb = catalog.get(ambient)?;
            let expand_all = |xs: &[String]| -> Result<Vec<Polynomial>> {
                xs.iter()
                    .map(|t| Ok(expand_with(&parse_with(t, catalog.macros())?, amb.flavor, Field::Rational, catalog.macros())?.poly))
                    .collect()
            };
            let degrees: Vec<Multidegree> = if multidegree.is_empty() {
                ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"].iter().map(|d| Multidegree::parse(d)).collect::<Result<_>>()?
            } else {
                multidegree.iter().map(|d| Multidegree::parse(d)).collect::<Result<_>>()?
            };
            let r = systems_equivalent(&expand_all(first)?, &expand_all(second)?, &amb, &degrees, &strategy)?;
            let all = r.iter().all(|c| c.equivalent());
            let mut text = String::new();
            for c in &r {
                text.push_str(&format!(
                    "{}: first in second {}, second in first {}\n",
                    c.multidegree, c.first_in_second, c.second_in_first
                ));
            }
            text.push_str(if all { "equivalent" } else { "not equivalent" });
            let report = CheckReport {
                check: "equiv".into(),
                claim_ref: format!("{} and {} are equivalent over {}", first.join("; "), second.join("; "), amb.name),
                verdict: outcome(all),
                char: 0,
                multidegrees: degrees.iter().map(|d| d.to_string()).collect(),
                timing: start.elapsed().as_millis(),
                warnings: Vec::new(),
                detail: to_value(&r)?,
            };
            emit(cfg.format, &report, &text)
        }
        Command::Koszul { order, variety, dual } => {
            if *order > 5 && !cfg.extended {
                return Err(Error::Resource(format!(
                    "order {order} needs large multilinear components; pass --extended to run it"
                )));
            }
            let start = Instant::now();
            let r = koszul_residual(&catalog.get(variety)?, &catalog.get(dual)?, *order, &strategy)?;
            let text = format!(
                "dims {:?}\ndual dims {:?}\nG(G^!(x)) - x = {}\n{}",
                r.dims,
                r.dual_dims,
                r.residual_text,
                if r.koszul_excluded { "not Koszul" } else { "no obstruction up to this order" }
            );
            let report = CheckReport {
                check: "koszul".into(),
                claim_ref: format!("generating-function test for {} and {}", r.variety, r.dual),
                verdict: Outcome::Pass,
                char: 0,
                multidegrees: (1..=*order).map(|n| Multidegree::multilinear(n).to_string()).collect(),
                timing: start.elapsed().as_millis(),
                warnings: r.warnings.clone(),
                detail: to_value(&r)?,
            };
            emit(cfg.format, &report, &text)
        }
        Command::Albert {
            expr,
            seed,
            samples,
            bound,
        } => {
            let start = Instant::now();
            let r = sample_report(&parse_with(expr, catalog.macros())?, expr, catalog.macros(), *seed, *samples, *bound)?;
            let mut text = format!("{}/{} samples vanish (seed {seed})", r.zero_count, r.samples);
            if let Some(w) = &r.first_nonzero {
                text.push_str(&format!("\nfirst nonzero value at sample {}", w.sample));
            }
            let report = CheckReport {
                check: "albert".into(),
                claim_ref: format!("{expr} = 0 on the Albert algebra"),
                verdict: outcome(r.all_zero()),
                char: 0,
                multidegrees: Vec::new(),
                timing: start.elapsed().as_millis(),
                warnings: Vec::new(),
                detail: to_value(&r)?,
            };
            emit(cfg.format, &report, &text)
        }
        Command::Suite { name, output } => {
            let suites: Vec<Suite> = if name == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![name.parse()?]
            };
            let config = SuiteConfig {
                workers: cfg.workers,
                extended: cfg.extended,
                strategy,
                ..SuiteConfig::default()
            };
            let reports: Vec<SuiteReport> = suites.iter().map(|s| run_suite(*s, &config)).collect::<Result<_>>()?;
            let json_text = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(&reports)
            }
            .map_err(json_error)?;
            if let Some(path) = output {
                std::fs::write(path, &json_text).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
            }
            match cfg.format {
                Format::Json => println!("{json_text}"),
                Format::Text => {
                    for r in &reports {
                        print!("{}", render_suite(r));
                    }
                }
            }
            Ok(reports.iter().all(|r| r.passed))
        }
    }
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Invalid(format!("cannot serialize report: {e}"))
}

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(json_error)
}

fn plain_report(check: &str, expr: &str, p: u64, poly: &Polynomial, start: Instant, warnings: Vec<String>) -> CheckReport {
    CheckReport {
        check: check.into(),
        claim_ref: expr.to_string(),
        verdict: Outcome::Pass,
        char: p,
        multidegrees: poly.components().keys().map(|d| d.to_string()).collect(),
        timing: start.elapsed().as_millis(),
        warnings,
        detail: json!({ "terms": poly.len(), "polynomial": poly.to_string() }),
    }
}

/// Prints the report, returning whether it passed.
fn emit(format: Format, report: &CheckReport, text: &str) -> Result<bool> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(report).map_err(json_error)?),
        Format::Text => {
            println!("{text}");
            for w in &report.warnings {
                println!("warning: {w}");
            }
        }
    }
    Ok(report.verdict == Outcome::Pass)
}

fn render_verdict(expr: &str, v: &Verdict, certificate: bool) -> String {
    let mut out = format!(
        "{expr}: {} in {} ({} mode, char {}, {} ms)",
        if v.is_identity { "identity" } else { "not an identity" },
        v.variety,
        match v.mode {
            Mode::Direct => "direct",
            Mode::Plus => "plus",
        },
        v.characteristic,
        v.timing_ms
    );
    for c in &v.components {
        out.push_str(&format!(
            "\n  {} ({} monomials, {:?} route, over {}): {}",
            c.multidegree,
            c.columns,
            c.route,
            c.fields.join(" and "),
            if c.is_zero { "zero".to_string() } else { format!("residual {}", c.residuals.join(" | ")) }
        ));
        if certificate {
            if let Some(cert) = &c.certificate {
                out.push_str(&format!(
                    "\n  certificate ({} rows, {}):",
                    cert.rows.len(),
                    if cert.verified { "verified" } else { "NOT verified" }
                ));
                for r in &cert.rows {
                    out.push_str(&format!("\n    {} * {}", r.coefficient, r.origin));
                }
            }
        }
    }
    out
}

fn render_suite(r: &SuiteReport) -> String {
    let mut out = format!("suite {}\n", r.suite);
    for c in &r.checks {
        let tag = match c.verdict {
            Outcome::Pass => "PASS",
            Outcome::Fail => "FAIL",
            Outcome::Error => "ERROR",
        };
        out.push_str(&format!("  {tag:5} {} ({} ms)\n", c.check, c.timing));
        if c.verdict != Outcome::Pass {
            out.push_str(&format!("        {}\n        {}\n", c.claim_ref, c.detail));
        }
        for w in &c.warnings {
            out.push_str(&format!("        warning: {w}\n"));
        }
    }
    let failed = r.failures().count();
    out.push_str(&format!(
        "  {} of {} checks passed\n",
        r.checks.len() - failed,
        r.checks.len()
    ));
    out
}

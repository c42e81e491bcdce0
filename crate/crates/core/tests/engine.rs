use nonassoc::engine::{is_identity, run_suite, CheckOptions, Mode, Outcome, Suite, SuiteConfig};
use nonassoc::lang::{parse_with, MacroTable};
use nonassoc::term::Multidegree;
use nonassoc::tideal::{quotient_dim, Catalog, Strategy};
use nonassoc::Error;

fn check(variety: &str, text: &str, opts: &CheckOptions) -> nonassoc::Result<nonassoc::engine::Verdict> {
    let c = Catalog::builtin();
    is_identity(&c.get(variety)?, &parse_with(text, c.macros())?, c.macros(), opts)
}

#[test]
fn degree_four_suite_passes_with_stable_reports() {
    let one = run_suite(Suite::Deg4, &SuiteConfig { workers: Some(1), ..SuiteConfig::default() }).unwrap();
    let four = run_suite(Suite::Deg4, &SuiteConfig { workers: Some(4), ..SuiteConfig::default() }).unwrap();
    assert!(one.passed, "{:?}", one.failures().map(|c| &c.check).collect::<Vec<_>>());
    assert_eq!(
        serde_json::to_string(&one.without_timing()).unwrap(),
        serde_json::to_string(&four.without_timing()).unwrap()
    );
    let names: Vec<_> = one.checks.iter().map(|c| c.check.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn report_json_carries_the_documented_fields() {
    let r = run_suite(Suite::Arman, &SuiteConfig::default()).unwrap();
    assert!(r.passed);
    let v = serde_json::to_value(&r).unwrap();
    let first = &v["checks"][0];
    for key in ["check", "claim_ref", "verdict", "char", "multidegrees", "timing", "warnings", "detail"] {
        assert!(first.get(key).is_some(), "{key}");
    }
    assert!(r.checks.iter().all(|c| c.verdict == Outcome::Pass));
}

#[test]
fn suite_names_parse() {
    for s in Suite::ALL {
        assert_eq!(s.name().parse::<Suite>().unwrap(), s);
    }
    assert!("nope".parse::<Suite>().is_err());
}

#[test]
fn composite_characteristic_is_rejected() {
    let e = check("assym", "jor(t1,t2)", &CheckOptions::plus().with_char(9)).unwrap_err();
    assert!(matches!(e, Error::NotPrime(9)));
}

#[test]
fn degree_cap_is_enforced() {
    let s = Strategy {
        degree_cap: 3,
        ..Strategy::default()
    };
    let d = Multidegree::parse("2,2").unwrap();
    let e = quotient_dim(&Catalog::builtin().get("assym").unwrap(), &d, 0, &s).unwrap_err();
    assert!(matches!(e, Error::DegreeCap { degree: 4, cap: 3 }));
}

#[test]
fn plus_mode_needs_a_planar_variety() {
    let e = check("comm", "jor(t1,t2)", &CheckOptions::plus()).unwrap_err();
    assert!(matches!(e, Error::FlavorMismatch(_)));
}

#[test]
fn unknown_macro_is_reported() {
    let e = parse_with("frob(t1)", MacroTable::builtin()).unwrap_err();
    assert!(matches!(e, Error::UnknownMacro(_)));
}

#[test]
fn verdict_components_follow_the_candidate() {
    let v = check("assym", "jor(t1,t2) + lietriple(t1,t2,t3)", &CheckOptions::plus()).unwrap();
    let types: Vec<String> = v.multidegrees.iter().map(|d| d.to_string()).collect();
    assert_eq!(types, ["[1,2,1]", "[3,1]"]);
    assert!(!v.is_identity);
    assert!(v.components.iter().any(|c| c.is_zero));
    assert!(v.components.iter().any(|c| !c.is_zero));
}

#[test]
fn direct_and_plus_modes_differ_on_commutators() {
    let direct = check("assym", "[t1,t2]", &CheckOptions::default()).unwrap();
    assert!(!direct.is_identity);
    let v = check("assym", "A(t1,t2,t3) - A(t2,t1,t3)", &CheckOptions { mode: Mode::Direct, ..CheckOptions::default() })
        .unwrap();
    assert!(v.is_identity);
}

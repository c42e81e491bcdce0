use super::*;
use crate::lang::{expand, parse, MacroTable};
use crate::term::{Flavor, Multidegree, Rationals};
use crate::tideal::{Catalog, Strategy, VarietyPresentation};

fn md(s: &str) -> Multidegree {
    Multidegree::parse(s).unwrap()
}

fn assym() -> VarietyPresentation {
    Catalog::builtin().get("assym").unwrap()
}

fn check(text: &str, opts: &CheckOptions) -> Verdict {
    is_identity(&assym(), &parse(text).unwrap(), MacroTable::builtin(), opts).unwrap()
}

fn comm(text: &str) -> crate::term::Polynomial {
    expand(&parse(text).unwrap(), Flavor::Commutative).unwrap()
}

#[test]
fn defining_identity_has_a_verified_certificate() {
    let v = check("lsym(t1,t2,t3)", &CheckOptions::default());
    assert!(v.is_identity);
    let cert = v.components[0].certificate.as_ref().unwrap();
    assert!(cert.verified);
    assert_eq!(cert.rows.len(), 1);
}

#[test]
fn non_identity_reports_a_residual() {
    let v = check("A(t1,t2,t3)", &CheckOptions::default());
    assert!(!v.is_identity);
    assert_ne!(v.components[0].residuals[0], "0");
}

#[test]
fn lie_triple_holds_in_the_plus_algebra() {
    for p in [0, 5] {
        let v = check("lietriple(t1,t2,t3)", &CheckOptions::plus().with_char(p));
        assert!(v.is_identity, "char {p}");
        assert_eq!(v.multidegrees, vec![md("1,2,1")]);
    }
}

#[test]
fn multilinear_jordan_holds_only_in_characteristic_three() {
    assert!(check("wjor(t1,t2,t3,t4)", &CheckOptions::plus().with_char(3)).is_identity);
    assert!(!check("wjor(t1,t2,t3,t4)", &CheckOptions::plus()).is_identity);
}

#[test]
fn jordan_identity_fails_in_the_plus_algebra() {
    assert!(!check("jor(t1,t2)", &CheckOptions::plus()).is_identity);
}

#[test]
fn routes_give_the_same_verdicts() {
    for text in ["lietriple(t1,t2,t3)", "wjor(t1,t2,t3,t4)", "jor(t1,t2)", "g_31_2(t1,t2)"] {
        let mut a = CheckOptions::plus();
        a.route = Some(crate::tideal::Route::Direct);
        let mut b = CheckOptions::plus();
        b.route = Some(crate::tideal::Route::Graded);
        assert_eq!(check(text, &a).is_identity, check(text, &b).is_identity, "{text}");
    }
}

fn coords(text: &str) -> Vec<(String, String)> {
    reduce_to_basis(&assym(), &comm(text), Mode::Plus)
        .unwrap()
        .support()
        .into_iter()
        .map(|(m, c)| (m.to_string(), c.to_string()))
        .collect()
}

fn expected(pairs: &[(&str, i64)]) -> Vec<(String, String)> {
    pairs
        .iter()
        .map(|(m, c)| (parse_letters(m).unwrap().to_string(), c.to_string()))
        .collect()
}

#[test]
fn degree_four_residuals_in_basis_coordinates() {
    assert_eq!(
        coords("g_4_1(t1)"),
        expected(&[("((aa)a)a", -2), ("(aa)(aa)", -2), ("(a(aa))a", 4)])
    );
    assert!(coords("g_31_2(t1,t2)").is_empty());
    assert!(!coords("g_31_1(t1,t2)").is_empty());
    let v = expected(&[("(aa)(bb)", 6), ("(b(ab))a", -12), ("((ba)b)a", 12), ("((aa)b)b", -6)]);
    assert_eq!(coords("g_22_1(t1,t2)"), v);
    assert_eq!(coords("g_22_1(t2,t1)"), v);
    assert!(coords("g_22_1(t1,t2) - g_22_1(t2,t1)").is_empty());
    let w = expected(&[("(aa)(bc)", -6), ("(c(ab))a", 12), ("((ca)b)a", -12), ("((aa)b)c", 6)]);
    assert_eq!(coords("g_211_1(t1,t2,t3)"), w);
    assert!(coords("h_211_1(t1,t2,t3)").is_empty());
    assert!(coords("h_211_2(t1,t2,t3)").is_empty());
}

#[test]
fn tabulated_bases_are_complete_and_independent() {
    for d in ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"] {
        let b = HentzelBasis::new(&assym(), &md(d)).unwrap();
        let dim = crate::tideal::quotient_dim(&assym(), &md(d), 0, &Strategy::default()).unwrap().dim;
        assert_eq!(b.monomials.len(), dim);
    }
}

#[test]
fn type_mismatch_is_rejected() {
    let b = HentzelBasis::new(&assym(), &md("2,2")).unwrap();
    assert!(b.coordinates(&comm("g_4_1(t1)"), Mode::Plus).is_err());
}

fn jor1_span(d: &Multidegree) -> crate::tideal::DirectComponent<Rationals> {
    let ambient = Catalog::builtin().get("comm").unwrap();
    let v = ambient.with_identities("jor1", &[comm("jor1(t1,t2,t3,t4)")]).unwrap();
    crate::tideal::consequence_span(&v, d, Rationals, &Strategy::default()).unwrap()
}

#[test]
fn plus_identities_of_degree_four_follow_from_jor1() {
    let assoc = Catalog::builtin().get("associative").unwrap();
    for d in ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"] {
        let d = md(d);
        let k = plus_identity_kernel(&assym(), &d, Rationals, &Strategy::default()).unwrap();
        let j = jor1_span(&d);
        assert_eq!(k.basis.monomials, j.basis.monomials);
        assert!(k.span.contains_span(&j.span) && j.span.contains_span(&k.span), "{d}");
        let ka = plus_identity_kernel(&assoc, &d, Rationals, &Strategy::default()).unwrap();
        assert!(ka.span.contains_span(&k.span), "{d}");
    }
    let k = plus_identity_kernel(&assym(), &md("4"), Rationals, &Strategy::default()).unwrap();
    assert_eq!(k.dim(), 0);
    let k = plus_identity_kernel(&assym(), &md("3,1"), Rationals, &Strategy::default()).unwrap();
    assert!(k.contains(&comm("g_31_2(t1,t2)")).unwrap());
}

#[test]
fn kernel_members_are_plus_identities() {
    let k = plus_identity_kernel(&assym(), &md("2,1,1"), Rationals, &Strategy::default()).unwrap();
    for p in k.polynomials() {
        let v = check_polynomial(&assym(), &p, &CheckOptions::plus()).unwrap();
        assert!(v.is_identity, "{p}");
    }
}

#[test]
fn jordan_implies_lie_triple_but_not_conversely() {
    let ambient = Catalog::builtin().get("comm").unwrap();
    let s = Strategy::default();
    assert!(implies(&ambient, &[comm("jor(t1,t2)")], &comm("lietriple(t1,t2,t3)"), &md("1,2,1"), &s).unwrap());
    assert!(!implies(&ambient, &[comm("lietriple(t1,t2,t3)")], &comm("jor(t1,t2)"), &md("3,1"), &s).unwrap());
}

#[test]
fn lie_triple_and_jor1_are_equivalent_in_degree_four() {
    let ambient = Catalog::builtin().get("comm").unwrap();
    let degrees: Vec<_> = ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"].iter().map(|d| md(d)).collect();
    let r = systems_equivalent(
        &[comm("lietriple(t1,t2,t3)")],
        &[comm("jor1(t1,t2,t3,t4)")],
        &ambient,
        &degrees,
        &Strategy::default(),
    )
    .unwrap();
    assert!(r.iter().all(|c| c.equivalent()));
}

#[test]
fn multilinear_jordan_polynomial_is_symmetric_in_the_plus_algebra() {
    let base = comm("wjor(t1,t2,t3,t4)");
    for perm in crate::lang::permutations(4) {
        let p = base.rename(|v| perm[v as usize - 1] as u8 + 1).unwrap();
        let diff = base.sub(&p).unwrap();
        let v = check_polynomial(&assym(), &diff, &CheckOptions::plus()).unwrap();
        assert!(v.is_identity, "{perm:?}");
    }
}

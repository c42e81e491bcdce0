use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::term::{enumerate_monomials, Multidegree};

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn planar(text: &str) -> Polynomial {
    expand(&parse(text).unwrap(), Flavor::Planar).unwrap()
}

fn comm(text: &str) -> Polynomial {
    expand(&parse(text).unwrap(), Flavor::Commutative).unwrap()
}

#[test]
fn parses_operators() {
    assert_eq!(parse("[t1,t2]").unwrap(), Expr::bracket(Expr::var(1), Expr::var(2)));
    assert_eq!(
        parse("A(t1,t2,t3)").unwrap(),
        Expr::assoc(Expr::var(1), Expr::var(2), Expr::var(3))
    );
    match parse("glen(t1,t2,t3)").unwrap() {
        Expr::Macro { name, args, q } => {
            assert_eq!(name, "glen");
            assert_eq!(args.len(), 3);
            assert!(q.is_none());
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(parse("t1t2").unwrap(), parse("t1 * t2").unwrap());
    assert_eq!(parse(" t1   t2 ").unwrap(), parse("t1 t2").unwrap());
    assert_eq!(parse("t1^3").unwrap(), parse("(t1 t1) t1").unwrap());
    assert_eq!(parse("0").unwrap(), Expr::Zero);
}

#[test]
fn parse_errors() {
    assert!(matches!(parse("foo(t1)"), Err(Error::UnknownMacro(n)) if n == "foo"));
    assert!(matches!(
        parse("lsym(t1,t2)"),
        Err(Error::Arity { expected: 3, got: 2, .. })
    ));
    assert!(matches!(parse("t1 + "), Err(Error::Syntax { pos: 5, .. })));
    assert!(matches!(parse("(t1 t2"), Err(Error::Syntax { .. })));
    assert!(parse("3").is_err());
    assert!(parse("lsym_q(t1,t2,t3)").is_err());
    assert!(parse("lsym{q=2}(t1,t2,t3)").is_err());
}

#[test]
fn bracket_and_plus_associator() {
    assert_eq!(planar("[t1,t2]").to_string(), "(t1 t2) - (t2 t1)");
    let j = planar("J(t1,t2,t3)");
    let expected = planar(
        "t1(t2 t3) + t1(t3 t2) + (t2 t3)t1 + (t3 t2)t1 - (t1 t2)t3 - (t2 t1)t3 - t3(t1 t2) - t3(t2 t1)",
    );
    assert_eq!(j, expected);
    assert_eq!(j.len(), 8);
}

#[test]
fn lsym_expands_to_four_unit_terms() {
    let p = planar("lsym(t1,t2,t3)");
    assert_eq!(p.multidegree(), Some(Multidegree::multilinear(3)));
    assert_eq!(p.len(), 4);
    // (t1,t2,t3) - (t2,t1,t3), expanded by hand.
    let hand = planar("t1(t2 t3) - (t1 t2)t3 - t2(t1 t3) + (t2 t1)t3");
    assert_eq!(p, hand);
    assert!(p.terms().all(|(_, c)| c.to_rational().numer().magnitude() == &1u32.into()));
}

#[test]
fn plus_associator_in_terms_of_associators() {
    let lhs = planar("J(t1,t2,t3) - A(t1,t2,t3) + A(t3,t2,t1)");
    let rhs = planar("t1(t3 t2) - t3(t1 t2) - (t2 t1)t3 + (t2 t3)t1");
    assert_eq!(lhs, rhs);
}

#[test]
fn commutative_conventions() {
    // In the commutative algebra x@y = 2xy and J = 4A.
    assert_eq!(comm("t1 @ t2"), comm("2 t1 t2"));
    assert_eq!(comm("J(t1,t2,t3)"), comm("4 A(t1,t2,t3)"));
    let e = expand_with(&parse("[t1,t2] + t1 t2").unwrap(), Flavor::Commutative, Field::Rational, MacroTable::builtin())
        .unwrap();
    assert_eq!(e.poly, comm("t1 t2"));
    assert_eq!(e.warnings.len(), 1);
}

#[test]
fn jor1_symmetries_in_the_commutative_algebra() {
    let j = comm("jor1(t1,t2,t3,t4)");
    assert!(!j.is_zero());
    assert_eq!(comm("jor1(t2,t1,t3,t4)"), j.neg());
    assert_eq!(comm("jor1(t1,t2,t4,t3)"), j);
}

/// Independent star expansion: every planar orientation of each tree.
fn star_oracle(p: &Polynomial) -> Polynomial {
    fn orientations(m: &Monomial) -> Vec<Monomial> {
        match m.split() {
            None => vec![m.clone()],
            Some((l, r)) => {
                let mut out = Vec::new();
                for a in orientations(&l) {
                    for b in orientations(&r) {
                        out.push(Monomial::join_planar(&a, &b));
                        out.push(Monomial::join_planar(&b, &a));
                    }
                }
                out
            }
        }
    }
    let terms = p
        .terms()
        .flat_map(|(m, c)| orientations(m).into_iter().map(move |o| (o, c.clone())));
    Polynomial::from_terms(Flavor::Planar, p.field(), terms).unwrap()
}

#[test]
fn star_expansion() {
    assert_eq!(star_expand(&comm("t2 t1")).unwrap(), planar("t1 t2 + t2 t1"));
    assert_eq!(
        star_expand(&comm("(t1 t1) t2")).unwrap(),
        planar("2 (t1 t1) t2 + 2 t2 (t1 t1)")
    );
    let lt = comm("lietriple(t1,t2,t3)");
    let image = star_expand(&lt).unwrap();
    assert_eq!(image, star_oracle(&lt));
    assert_eq!(image.multidegree(), Some(Multidegree::new([1, 2, 1])));
    assert_eq!(image.len(), 24);
    assert!(star_expand(&planar("t1 t2")).is_err());
}

#[test]
fn star_expansion_is_a_homomorphism() {
    let f = Field::Rational;
    let d = Multidegree::new([1, 1, 1]);
    let ms = enumerate_monomials(&d, Flavor::Commutative).unwrap();
    let e = Multidegree::new([0, 0, 0, 1, 1]);
    let ns = enumerate_monomials(&e, Flavor::Commutative).unwrap();
    for a in &ms {
        for b in &ns {
            let ab = Polynomial::from_monomial(Monomial::join(a, b, Flavor::Commutative), Flavor::Commutative, f);
            let sa = star_expand(&Polynomial::from_monomial(a.clone(), Flavor::Commutative, f)).unwrap();
            let sb = star_expand(&Polynomial::from_monomial(b.clone(), Flavor::Commutative, f)).unwrap();
            let prod = sa.mul(&sb).unwrap().add(&sb.mul(&sa).unwrap()).unwrap();
            assert_eq!(star_expand(&ab).unwrap(), prod);
        }
    }
}

#[test]
fn sigma_q_examples() {
    let p = planar("(t2 t3) t1");
    let s = apply_sigma_q(&p, &q(3)).unwrap();
    assert_eq!(s, planar("(t2 t3)t1 + 3 (t3 t2)t1 + 3 t1(t2 t3) + 9 t1(t3 t2)"));
    let l = planar("lsym(t1,t2,t3)");
    assert_eq!(apply_sigma_q(&l, &q(0)).unwrap(), l);
}

#[test]
fn sigma_q_matches_twisted_displays() {
    for n in [2i64, 3, 5, -7] {
        for (base, display) in [("lsym", "lsym_q"), ("rsym", "rsym_q")] {
            let twisted = apply_sigma_q(&planar(&format!("{base}(t1,t2,t3)")), &q(-n)).unwrap();
            let shown = planar(&format!("{display}{{q={n}}}(t1,t2,t3)"));
            assert_eq!(twisted, shown, "{base} at q={n}");
        }
    }
    let half = BigRational::new(1.into(), 2.into());
    let twisted = apply_sigma_q(&planar("lsym(t1,t2,t3)"), &-half).unwrap();
    assert_eq!(twisted, planar("lsym_q{q=1/2}(t1,t2,t3)"));
}

#[test]
fn sigma_q_is_multiplicative_for_the_twisted_product() {
    let r = BigRational::new(2.into(), 3.into());
    let a = planar("t1 (t2 t1) - 3 t2 (t1 t1)");
    let b = planar("t3 t4 + t4 t4");
    let sab = apply_sigma_q(&a.mul(&b).unwrap(), &r).unwrap();
    let (sa, sb) = (apply_sigma_q(&a, &r).unwrap(), apply_sigma_q(&b, &r).unwrap());
    let twisted = sa
        .mul(&sb)
        .unwrap()
        .add_scaled(&Field::Rational.from_rational(&r).unwrap(), &sb.mul(&sa).unwrap())
        .unwrap();
    assert_eq!(sab, twisted);
    // The q-product node agrees with the substitution on a single product.
    let qp = expand(&parse("q{q=2/3}(t1,t2)").unwrap(), Flavor::Planar).unwrap();
    assert_eq!(qp, apply_sigma_q(&planar("t1 t2"), &r).unwrap());
}

#[test]
fn polarization() {
    assert_eq!(
        polarize(&planar("t1 t1"), 1, &[2, 3]).unwrap(),
        planar("t2 t3 + t3 t2")
    );
    let jor = planar("jor(t1,t2)");
    let pol = polarize(&jor, 1, &[1, 3, 4]).unwrap();
    assert_eq!(pol.multidegree(), Some(Multidegree::multilinear(4)));
    // Multilinearity of the associator gives an independent expansion.
    let mut oracle = Polynomial::zero(Flavor::Planar, Field::Rational);
    for p in permutations(3) {
        let v = [1, 3, 4];
        let text = format!("A(t{},t2,t{} t{})", v[p[0]], v[p[1]], v[p[2]]);
        oracle = oracle.add(&planar(&text)).unwrap();
    }
    assert_eq!(pol, oracle);
    assert!(polarize(&planar("t1 t1 + t1 t2"), 1, &[2, 3]).is_err());
}

#[test]
fn polarizing_the_square_form_gives_the_linear_form() {
    let square = comm("A(t1,t3 t3,t2) - 2 t3 A(t1,t3,t2)");
    let linear = comm("A(t1,t3 t4,t2) - t3 A(t1,t4,t2) - t4 A(t1,t3,t2)");
    let pol = polarize(&square, 3, &[3, 4]).unwrap();
    assert_eq!(pol, linear.scale(&Field::Rational.from_i64(2)).unwrap());
}

#[test]
fn expression_display_round_trips() {
    for text in [
        "glen(t1,t2,t3)",
        "-3 J(t1,t3,t2) @ (t1 t2) + 2/3 [t1,t2]",
        "q{q=-2/3}(t1,t2 t3) - lsym_q{q=5}(t1,t2,t3)",
    ] {
        let e = parse(text).unwrap();
        let again = parse(&e.to_string()).unwrap();
        assert_eq!(expand(&e, Flavor::Planar).unwrap(), expand(&again, Flavor::Planar).unwrap());
    }
}

fn arb_monomial(max_leaves: usize) -> impl Strategy<Value = Monomial> {
    let leaf = (1u8..=3).prop_map(Monomial::leaf);
    leaf.prop_recursive(4, max_leaves as u32, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Monomial::join_planar(&a, &b))
    })
    .prop_filter("degree cap", move |m| m.degree() <= max_leaves)
}

fn arb_poly(flavor: Flavor) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((arb_monomial(5), -5i64..=5, 1i64..=4), 0..6).prop_map(move |terms| {
        let f = Field::Rational;
        Polynomial::from_terms(
            flavor,
            f,
            terms
                .into_iter()
                .map(|(m, n, d)| (m, Scalar::Rational(BigRational::new(n.into(), d.into())))),
        )
        .unwrap()
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip(p in arb_poly(Flavor::Planar), c in arb_poly(Flavor::Commutative)) {
        let back = expand(&parse(&print(&p)).unwrap(), Flavor::Planar).unwrap();
        prop_assert_eq!(back, p);
        let back = expand(&parse(&print(&c)).unwrap(), Flavor::Commutative).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn expansion_is_linear(a in arb_poly(Flavor::Planar), b in arb_poly(Flavor::Planar), x in -4i64..4, y in 1i64..4) {
        let text = format!("{x} ({}) + 1/{y} ({})", print(&a), print(&b));
        let lhs = expand(&parse(&text).unwrap(), Flavor::Planar).unwrap();
        let f = Field::Rational;
        let rhs = a
            .scale(&f.from_i64(x))
            .unwrap()
            .add_scaled(&f.from_rational(&BigRational::new(1.into(), y.into())).unwrap(), &b)
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

use num_rational::BigRational;
use proptest::prelude::*;

use nonassoc::albert::{albert_star, basis_product, evaluate, sample_report, AlbertElement, Octonion};
use nonassoc::lang::{parse_with, MacroTable};

type Quat = [i64; 4];

fn qmul(a: Quat, b: Quat) -> Quat {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

fn qconj(a: Quat) -> Quat {
    [a[0], -a[1], -a[2], -a[3]]
}

fn qadd(a: Quat, b: Quat) -> Quat {
    std::array::from_fn(|i| a[i] + b[i])
}

fn qsub(a: Quat, b: Quat) -> Quat {
    std::array::from_fn(|i| a[i] - b[i])
}

/// Octonions as pairs of quaternions with `(a,b)(c,d) = (ac - d̄b, da + bc̄)`.
fn doubled(x: [i64; 8], y: [i64; 8]) -> [i64; 8] {
    let (a, b): (Quat, Quat) = ([x[0], x[1], x[2], x[3]], [x[4], x[5], x[6], x[7]]);
    let (c, d): (Quat, Quat) = ([y[0], y[1], y[2], y[3]], [y[4], y[5], y[6], y[7]]);
    let lo = qsub(qmul(a, c), qmul(qconj(d), b));
    let hi = qadd(qmul(d, a), qmul(b, qconj(c)));
    [lo[0], lo[1], lo[2], lo[3], hi[0], hi[1], hi[2], hi[3]]
}

fn unit(i: usize) -> [i64; 8] {
    let mut v = [0; 8];
    v[i] = 1;
    v
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn oct() -> impl Strategy<Value = Octonion> {
    prop::array::uniform8(-4i64..=4).prop_map(Octonion::from_ints)
}

fn element() -> impl Strategy<Value = AlbertElement> {
    prop::collection::vec(-3i64..=3, 27)
        .prop_map(|c| AlbertElement::from_coordinates(&c.into_iter().map(r).collect::<Vec<_>>()).unwrap())
}

#[test]
fn table_matches_doubling() {
    for i in 0..8 {
        for j in 0..8 {
            let want = doubled(unit(i), unit(j));
            let (s, k) = basis_product(i, j);
            let mut got = [0i64; 8];
            got[k] = s as i64;
            assert_eq!(got, want, "e{i} e{j}");
        }
    }
}

#[test]
fn imaginary_units_square_to_minus_one() {
    let one = Octonion::basis(0);
    for i in 1..8 {
        let e = Octonion::basis(i);
        assert_eq!(&e * &e, -&one);
        assert_eq!(&one * &e, e);
        assert_eq!(&e * &one, e);
    }
}

#[test]
fn product_is_not_associative() {
    let (a, b, c) = (Octonion::basis(1), Octonion::basis(2), Octonion::basis(4));
    assert_ne!(&(&a * &b) * &c, &a * &(&b * &c));
}

#[test]
fn identity_doubles_under_star() {
    let mut c: Vec<BigRational> = (0..27).map(|k| r(k as i64 % 5 - 2)).collect();
    c[4] = r(7);
    let a = AlbertElement::from_coordinates(&c).unwrap();
    assert_eq!(albert_star(&AlbertElement::identity(), &a), a.scale(&r(2)));
}

#[test]
fn non_hermitian_matrix_is_rejected() {
    let mut m = AlbertElement::identity().matrix();
    m[0][1] = Octonion::basis(3);
    assert!(AlbertElement::from_matrix(&m).is_err());
    let mut m = AlbertElement::identity().matrix();
    m[2][2] = Octonion::basis(5);
    assert!(AlbertElement::from_matrix(&m).is_err());
}

#[test]
fn wrong_coordinate_count_is_rejected() {
    assert!(AlbertElement::from_coordinates(&vec![r(1); 26]).is_err());
}

#[test]
fn jordan_identities_vanish_on_samples() {
    let macros = MacroTable::builtin();
    for text in ["jor(t1,t2)", "lietriple(t1,t2,t3)", "wjor(t1,t2,t3,t4)"] {
        let e = parse_with(text, macros).unwrap();
        let rep = sample_report(&e, text, macros, 3, 5, 2).unwrap();
        assert!(rep.all_zero(), "{text}");
        assert!(rep.first_nonzero.is_none());
    }
}

#[test]
fn associator_does_not_vanish() {
    let macros = MacroTable::builtin();
    let e = parse_with("A(t1,t2,t3)", macros).unwrap();
    let rep = sample_report(&e, "A(t1,t2,t3)", macros, 1, 3, 2).unwrap();
    assert!(!rep.all_zero());
    let w = rep.first_nonzero.unwrap();
    assert_eq!(w.arguments.len(), 3);
    assert_eq!(w.value.len(), 27);
}

#[test]
fn sampling_rejects_zero_samples_and_brackets() {
    let macros = MacroTable::builtin();
    let e = parse_with("t1 t2", macros).unwrap();
    assert!(sample_report(&e, "t1 t2", macros, 0, 0, 2).is_err());
    let b = parse_with("[t1,t2]", macros).unwrap();
    let a = AlbertElement::identity();
    assert!(evaluate(&b, macros, &[a.clone(), a]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_agrees_with_doubling(x in prop::array::uniform8(-4i64..=4), y in prop::array::uniform8(-4i64..=4)) {
        prop_assert_eq!(&Octonion::from_ints(x) * &Octonion::from_ints(y), Octonion::from_ints(doubled(x, y)));
    }

    #[test]
    fn octonions_are_alternative(x in oct(), y in oct()) {
        prop_assert_eq!(&x * &(&x * &y), &(&x * &x) * &y);
        prop_assert_eq!(&(&y * &x) * &x, &y * &(&x * &x));
    }

    #[test]
    fn norm_is_multiplicative(x in oct(), y in oct()) {
        prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn conjugation_reverses_products(x in oct(), y in oct()) {
        prop_assert_eq!((&x * &y).conj(), &y.conj() * &x.conj());
    }

    #[test]
    fn star_is_commutative_and_bilinear(a in element(), b in element(), c in element()) {
        prop_assert_eq!(albert_star(&a, &b), albert_star(&b, &a));
        prop_assert_eq!(albert_star(&a.add(&b), &c), albert_star(&a, &c).add(&albert_star(&b, &c)));
        prop_assert_eq!(albert_star(&a.scale(&r(3)), &b), albert_star(&a, &b).scale(&r(3)));
    }

    #[test]
    fn square_has_expected_diagonal(a in element()) {
        // (A⋆A)_ii = 2 (d_i² + sum of norms of the off-diagonal entries in row i).
        let s = albert_star(&a, &a);
        let n = [a.x12.norm(), a.x13.norm(), a.x23.norm()];
        let want = [
            &a.diag[0] * &a.diag[0] + &n[0] + &n[1],
            &a.diag[1] * &a.diag[1] + &n[0] + &n[2],
            &a.diag[2] * &a.diag[2] + &n[1] + &n[2],
        ];
        for i in 0..3 {
            prop_assert_eq!(&s.diag[i], &(&want[i] * r(2)));
        }
    }

    #[test]
    fn coordinates_round_trip(a in element()) {
        prop_assert_eq!(AlbertElement::from_coordinates(&a.coordinates()).unwrap(), a.clone());
        prop_assert_eq!(AlbertElement::from_matrix(&a.matrix()).unwrap(), a);
    }
}

use charlier_core::charlier::{charlier, inner_product_classical, moment};
use charlier_core::generalized::{gen_charlier, inner_product_general};
use charlier_core::poly::{int, rat, Monomial, Poly, Rational, Var};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..4, 0u32..3, 0u32..2), small_rational()), 0..6).prop_map(|terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .map(|((x, a, n), c)| (Monomial::new(x, a, n), c)),
        )
    })
}

fn x_only_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..5, small_rational()), 0..5).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|(x, c)| (Monomial::new(x, 0, 0), c)))
    })
}

proptest! {
    #[test]
    fn addition_is_commutative_and_associative(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!((&p + &q) + &r, &p + (&q + &r));
    }

    #[test]
    fn multiplication_is_commutative_and_associative(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p * &q) * &r, &p * (&q * &r));
    }

    #[test]
    fn multiplication_distributes(p in small_poly(), q in small_poly(), r in small_poly()) {
        prop_assert_eq!(&p * (&q + &r), &p * &q + &p * &r);
    }

    #[test]
    fn canonical_form(p in small_poly(), q in small_poly()) {
        prop_assert_eq!(p == q, (&p - &q).is_zero());
        prop_assert!((&p - &p).is_zero());
        prop_assert!(p.terms().all(|(_, c)| *c != int(0)));
    }

    #[test]
    fn differences_commute(p in small_poly()) {
        prop_assert_eq!(p.nabla().delta(), p.delta().nabla());
    }

    #[test]
    fn delta_lowers_degree_by_one(p in small_poly()) {
        let d = p.degree_in(Var::X);
        if d >= 1 {
            prop_assert_eq!(p.delta().degree_in(Var::X), d - 1);
            prop_assert_eq!(p.nabla().degree_in(Var::X), d - 1);
        }
    }

    #[test]
    fn shifts_invert(p in small_poly(), c in small_rational()) {
        prop_assert_eq!(p.shift_x(&c).shift_x(&-c.clone()), p);
    }

    #[test]
    fn shift_agrees_with_evaluation(p in small_poly(), c in small_rational(), x0 in small_rational()) {
        let shifted_then_eval = p.shift_x(&c).substitute(Var::X, &x0);
        prop_assert_eq!(shifted_then_eval, p.substitute(Var::X, &(x0 + c)));
    }

    #[test]
    fn negate_var_is_an_involution(p in small_poly()) {
        for v in Var::ALL {
            prop_assert_eq!(p.negate_var(v).negate_var(v), p.clone());
        }
    }

    #[test]
    fn substitution_leaves_no_trace(p in small_poly(), r in small_rational()) {
        for v in Var::ALL {
            prop_assert!(p.substitute(v, &r).degree_in(v) <= 0);
        }
    }

    #[test]
    fn general_inner_product_is_symmetric_and_bilinear(
        p in x_only_poly(), q in x_only_poly(), r in x_only_poly(), c in small_rational()
    ) {
        prop_assert_eq!(inner_product_general(&p, &q), inner_product_general(&q, &p));
        let lhs = inner_product_general(&(p.scale(&c) + r.clone()), &q);
        let rhs = inner_product_general(&p, &q).scale(&c) + inner_product_general(&r, &q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn classical_inner_product_of_powers_is_a_moment(j in 0usize..6, k in 0usize..6) {
        let ip = inner_product_classical(&Poly::x().pow(j as u32), &Poly::x().pow(k as u32));
        prop_assert_eq!(ip, moment(j + k));
    }
}

#[test]
fn charlier_families_have_expected_shape() {
    for n in 0..=10u32 {
        let c = charlier(n as i64);
        assert_eq!(c.nabla(), charlier(n as i64 - 1).shift_x(&int(-1)));
        let g = gen_charlier(n).poly;
        assert_eq!(g.substitute(Var::N, &int(0)), c);
        assert!(g.degree_in(Var::N) <= 1);
        assert_eq!(g.degree_in(Var::X), n as i64);
    }
}

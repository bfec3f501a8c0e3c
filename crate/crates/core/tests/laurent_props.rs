use domino_core::laurent::{
    extrapolate_laurent, step_backward, step_forward, weighted_matching_poly, LaurentPoly,
    Monomial, VarId,
};
use domino_core::recurrence::two_sided_table;
use domino_core::transfer::count_fast;
use domino_core::Limits;
use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;

#[test]
fn positive_polys_have_unit_coefficients() {
    for n in 1..=8usize {
        let p = weighted_matching_poly(n);
        assert!(p.coefficients().all(|c| c.is_one()), "n={n}");
        assert_eq!(BigInt::from(p.len()), count_fast(2, n).unwrap(), "n={n}");
    }
}

#[test]
fn forward_steps_reproduce_enumeration() {
    for n in 2..=7i64 {
        let p = step_forward(
            &weighted_matching_poly(n as usize - 1),
            &weighted_matching_poly(n as usize),
            n,
        );
        assert_eq!(p, weighted_matching_poly(n as usize + 1), "n={n}");
    }
}

#[test]
fn extrapolation_has_signed_unit_coefficients() {
    let limits = Limits::default();
    let table = extrapolate_laurent(-6, &limits).unwrap();
    let counts = two_sided_table(2, -6, 3, &limits).unwrap();
    assert_eq!(table[&0], LaurentPoly::one());
    for (&n, p) in &table {
        if n <= 0 {
            assert!(p.all_coefficients_unit(), "n={n}: {p}");
        }
        assert_eq!(&p.eval_ones(), counts.get(n).unwrap(), "n={n}");
    }
}

#[test]
fn depth_cap_is_enforced() {
    assert!(extrapolate_laurent(-7, &Limits::default()).is_err());
    assert!(extrapolate_laurent(1, &Limits::default()).is_err());
}

fn var() -> impl Strategy<Value = VarId> {
    (0..3u8, -3i64..=3).prop_map(|(f, i)| match f {
        0 => VarId::w(i),
        1 => VarId::x(i),
        _ => VarId::y(i),
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    let term = (prop::collection::vec((var(), -2i64..=2), 0..3), -3i64..=3);
    prop::collection::vec(term, 0..4).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(), |acc, (pairs, c)| {
                &acc + &LaurentPoly::term(Monomial::from_pairs(&pairs), BigInt::from(c))
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn backward_inverts_forward(p in laurent(), q in laurent(), n in -4i64..=4) {
        let next = step_forward(&p, &q, n);
        prop_assert_eq!(step_backward(&next, &q, n).unwrap(), p);
    }

    #[test]
    fn specialization_commutes_with_steps(p in laurent(), q in laurent(), n in -4i64..=4) {
        let next = step_forward(&p, &q, n);
        prop_assert_eq!(next.eval_ones(), q.eval_ones() + p.eval_ones());
        let back = step_backward(&q, &p, n).unwrap();
        prop_assert_eq!(back.eval_ones(), q.eval_ones() - p.eval_ones());
    }
}

//! Algebraic laws checked on generated inputs.

use std::collections::BTreeMap;

use centpoly::combinatorics::{character_value, standard_tableaux, CycleType, Partition};
use centpoly::freealg::{multilinearize, peel_leading, peel_residual, MultilinearPolynomial, NCPolynomial, Word};
use centpoly::grassmann::{is_central_g, GrassmannElement};
use centpoly::matalg::{m_evaluate, RationalMatrix};
use centpoly::symgroup::{GroupAlgebraElement, Permutation};
use centpoly::{BigInt, BigRational};
use proptest::prelude::*;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn perm(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

fn element(n: usize) -> impl Strategy<Value = GroupAlgebraElement> {
    prop::collection::vec((perm(n), -3i64..=3), 1..5).prop_map(move |terms| {
        let mut e = GroupAlgebraElement::zero(n);
        for (p, c) in terms {
            e.add_term(p, q(c));
        }
        e
    })
}

fn grassmann() -> impl Strategy<Value = GrassmannElement> {
    prop::collection::vec((prop::collection::btree_set(1u32..7, 0..4), -2i64..=2), 1..4).prop_map(|terms| {
        terms.into_iter().fold(GrassmannElement::zero(), |acc, (s, c)| {
            let idx: Vec<u32> = s.into_iter().collect();
            acc.add(&GrassmannElement::basis(&idx).unwrap().scale(&q(c)))
        })
    })
}

fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec(-3i64..=3, 4)
        .prop_map(|v| RationalMatrix::from_rows(vec![vec![q(v[0]), q(v[1])], vec![q(v[2]), q(v[3])]]).unwrap())
}

proptest! {
    #[test]
    fn composition_is_associative_and_inverts(a in perm(5), b in perm(5), c in perm(5)) {
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        prop_assert_eq!(a.compose(&b).unwrap().sign(), a.sign() * b.sign());
    }

    #[test]
    fn lex_rank_is_the_position_in_all(a in perm(5)) {
        prop_assert_eq!(&Permutation::all(5)[a.lex_rank()], &a);
    }

    #[test]
    fn group_algebra_is_associative(x in element(4), y in element(4), z in element(4)) {
        let l = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn left_action_is_multiplication_by_delta(x in element(4), s in perm(4)) {
        prop_assert_eq!(x.left_action(&s), GroupAlgebraElement::delta(s.clone()).multiply(&x).unwrap());
    }

    #[test]
    fn left_action_renames_variables(x in element(4), s in perm(4)) {
        // σ·h is h with x_i replaced by x_{σ(i)}
        let h = MultilinearPolynomial::from_group_algebra(x);
        let renamed = h.to_nc().rename(|v| s.image(v as usize) as u32);
        prop_assert_eq!(h.left_action(&s).to_nc(), renamed);
    }

    #[test]
    fn grassmann_is_associative(a in grassmann(), b in grassmann(), c in grassmann()) {
        prop_assert_eq!(a.multiply(&b).multiply(&c), a.multiply(&b.multiply(&c)));
    }

    #[test]
    fn even_part_commutes_with_everything(a in grassmann(), b in grassmann()) {
        let e = a.even_part();
        prop_assert_eq!(e.multiply(&b), b.multiply(&e));
        prop_assert!(e.is_central());
        prop_assert_eq!(a.even_part().add(&a.odd_part()), a);
    }

    #[test]
    fn peel_residual_is_central_on_g(x in element(5)) {
        let h = MultilinearPolynomial::from_group_algebra(x);
        let residual = peel_residual(&h).unwrap();
        prop_assert!(is_central_g(&residual));
        let rebuilt = peel_leading(&h).unwrap().prepend_new_variable().add(&residual).unwrap();
        prop_assert_eq!(rebuilt, h);
    }

    #[test]
    fn polynomial_text_round_trips(x in element(4), c in -5i64..5) {
        let p = MultilinearPolynomial::from_group_algebra(x).to_nc().scale(&BigRational::new(c.into(), 3.into()));
        let back: NCPolynomial = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn multilinearization_evaluates_to_d_factorial_squared(
        words in prop::collection::vec((Just(vec![1u32, 1, 2, 2]).prop_shuffle(), -2i64..=2), 1..4),
        a in small_matrix(),
        b in small_matrix(),
    ) {
        // x_1, x_2 of degree 2 each; fresh variables 1,2 ↦ a and 3,4 ↦ b
        let p = NCPolynomial::from_terms(words.into_iter().map(|(w, c)| (Word::new(w).unwrap(), q(c))));
        prop_assume!(!p.is_zero());
        let lin = multilinearize(&p, 2).unwrap().to_nc();
        let at = |pairs: &[(u32, &RationalMatrix)]| -> BTreeMap<u32, RationalMatrix> {
            pairs.iter().map(|(v, m)| (*v, (*m).clone())).collect()
        };
        let full = m_evaluate(&lin, &at(&[(1, &a), (2, &a), (3, &b), (4, &b)])).unwrap();
        let base = m_evaluate(&p, &at(&[(1, &a), (2, &b)])).unwrap();
        prop_assert_eq!(full, base.scale(&q(4)));
    }

    #[test]
    fn standard_polynomial_of_degree_four_vanishes_on_m2(
        m in prop::collection::vec(small_matrix(), 4),
    ) {
        let s4 = centpoly::freealg::standard_polynomial(4);
        let assign: BTreeMap<u32, RationalMatrix> = m.into_iter().enumerate().map(|(i, x)| (i as u32 + 1, x)).collect();
        prop_assert!(m_evaluate(&s4, &assign).unwrap().is_zero());
    }
}

#[test]
fn dimensions_count_tableaux_and_match_characters() {
    for n in 1..=7 {
        let identity = CycleType::new(Partition::new(vec![1; n]).unwrap());
        for p in Partition::all(n) {
            let f = p.dimension();
            assert_eq!(f, standard_tableaux(&p).len().into());
            assert_eq!(BigInt::from(f), character_value(&p, &identity).unwrap());
            assert_eq!(p.conjugate().conjugate(), p);
            assert_eq!(p.conjugate().dimension(), p.dimension());
        }
    }
}

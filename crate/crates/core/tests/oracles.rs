//! Fast decision procedures against slower independent ones.

use std::collections::BTreeMap;

use centpoly::cochar::{identity_dim, quotient, Budget, GrassmannOracle, MatrixOracle, Variant};
use centpoly::combinatorics::Partition;
use centpoly::freealg::{standard_polynomial, t_ideal_multilinear, triple_commutator, MultilinearPolynomial};
use centpoly::grassmann::is_identity_g;
use centpoly::linalg::{int_row_from_rational, RowEchelon};
use centpoly::matalg::{is_central_mk, is_identity_mk, m_evaluate, RationalMatrix};
use centpoly::symgroup::{GroupAlgebraElement, Permutation};
use centpoly::{BigInt, BigRational};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn random_h(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> MultilinearPolynomial {
    let all = Permutation::all(n);
    let mut ga = GroupAlgebraElement::zero(n);
    for _ in 0..terms {
        ga.add_term(all.choose(rng).unwrap().clone(), q(rng.gen_range(-3..=3)));
    }
    MultilinearPolynomial::from_group_algebra(ga)
}

fn random_matrix(rng: &mut ChaCha8Rng, k: usize) -> RationalMatrix {
    let rows = (0..k)
        .map(|_| (0..k).map(|_| q(rng.gen_range(-4..=4))).collect())
        .collect();
    RationalMatrix::from_rows(rows).unwrap()
}

/// On G, being an identity is the same as lying in the span of the
/// multilinear consequences of `[[x,y],z]`.
#[test]
fn grassmann_identities_are_the_t_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=5 {
        let nf: usize = (1..=n).product();
        let mut span = RowEchelon::new(nf);
        for g in t_ideal_multilinear(&[triple_commutator()], n).unwrap() {
            span.insert(int_row_from_rational(&g.group_algebra().to_sparse_vector()));
        }
        assert_eq!(
            span.rank() as u64,
            identity_dim(&GrassmannOracle, n, &Budget::default()).unwrap()
        );
        let spanning = t_ideal_multilinear(&[triple_commutator()], n).unwrap();
        for i in 0..150 {
            let mut h = random_h(&mut rng, n, 1 + i % 4);
            if i % 2 == 0 && !spanning.is_empty() {
                h = spanning.choose(&mut rng).unwrap().clone();
                if i % 4 == 0 {
                    h = h.add(&random_h(&mut rng, n, 1)).unwrap();
                }
            }
            let member = span.contains(int_row_from_rational(&h.group_algebra().to_sparse_vector()));
            assert_eq!(member, is_identity_g(&h), "n={n}: {h}");
        }
    }
}

/// Matrix-unit tests against evaluation at random integer matrices.
#[test]
fn unit_tuples_agree_with_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let m2 = MatrixOracle { k: 2 };
    for n in 2..=4 {
        let central = quotient(&m2, n, Variant::Central, &Budget::default()).unwrap();
        let kernel_probe: Vec<MultilinearPolynomial> = (0..60).map(|i| random_h(&mut rng, n, 1 + i % 6)).collect();
        for h in kernel_probe.iter().chain(std::iter::once(
            &MultilinearPolynomial::from_nc(&standard_polynomial(n), n).unwrap(),
        )) {
            let p = h.to_nc();
            let mut scalar_everywhere = true;
            let mut zero_everywhere = true;
            for _ in 0..20 {
                let assign: BTreeMap<u32, RationalMatrix> =
                    (1..=n as u32).map(|v| (v, random_matrix(&mut rng, 2))).collect();
                let v = m_evaluate(&p, &assign).unwrap();
                scalar_everywhere &= v.is_scalar();
                zero_everywhere &= v.is_zero();
            }
            // random evaluations can only refute
            if is_central_mk(h, 2) {
                assert!(scalar_everywhere, "{h}");
            } else {
                assert!(!scalar_everywhere, "random matrices missed a non-central value: {h}");
            }
            if is_identity_mk(h, 2) {
                assert!(zero_everywhere);
            } else {
                assert!(!zero_everywhere);
            }
            let in_kernel = central.functionals(h.group_algebra()).iter().all(|x| *x == q(0));
            assert_eq!(in_kernel, is_central_mk(h, 2));
        }
    }
}

#[test]
fn amitsur_levitzki_degree() {
    let b = Budget::default();
    let m2 = MatrixOracle { k: 2 };
    assert_eq!(identity_dim(&m2, 3, &b).unwrap(), 0);
    assert_eq!(identity_dim(&m2, 4, &b).unwrap(), 1);
    let s4 = MultilinearPolynomial::from_nc(&standard_polynomial(4), 4).unwrap();
    assert!(is_identity_mk(&s4, 2));
    let s3 = MultilinearPolynomial::from_nc(&standard_polynomial(3), 3).unwrap();
    assert!(!is_identity_mk(&s3, 2));
}

#[test]
fn trace_and_projection_multiplicities_agree() {
    let b = Budget::default();
    for oracle in [
        &GrassmannOracle as &dyn centpoly::cochar::AlgebraOracle,
        &MatrixOracle { k: 2 },
    ] {
        for n in 1..=5 {
            for variant in [Variant::Plain, Variant::Central] {
                let qt = quotient(oracle, n, variant, &b).unwrap();
                let chi = qt.cocharacter().unwrap();
                for lambda in Partition::all(n) {
                    assert_eq!(
                        chi.get(&lambda) as usize,
                        qt.multiplicity_by_projection(&lambda),
                        "{} n={n} {lambda}",
                        oracle.name()
                    );
                }
            }
        }
    }
}

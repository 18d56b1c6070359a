//! Seeded random elements of `V_n`.

use centpoly::freealg::MultilinearPolynomial;
use centpoly::symgroup::{GroupAlgebraElement, Permutation};
use centpoly::{BigInt, BigRational};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(rng);
    Permutation::from_images(&images).expect("shuffled identity")
}

fn small_coefficient<R: Rng>(rng: &mut R) -> BigRational {
    let c: i64 = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { 1 } else { -1 };
    BigRational::from_integer(BigInt::from(c))
}

/// A sparse element with up to `max_terms` monomials and coefficients in ±{1..4}.
pub fn random_multilinear<R: Rng>(rng: &mut R, n: usize, max_terms: usize) -> MultilinearPolynomial {
    let mut ga = GroupAlgebraElement::zero(n);
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        ga.add_term(random_permutation(rng, n), small_coefficient(rng));
    }
    MultilinearPolynomial::from_group_algebra(ga)
}

/// A small integer combination of up to `max_terms` members of `pool`.
pub fn random_combination<R: Rng>(
    rng: &mut R,
    n: usize,
    pool: &[MultilinearPolynomial],
    max_terms: usize,
) -> MultilinearPolynomial {
    let mut h = MultilinearPolynomial::zero(n);
    if pool.is_empty() {
        return h;
    }
    for _ in 0..rng.gen_range(1..=max_terms.max(1)) {
        let g = pool.choose(rng).expect("nonempty");
        h = h.add(&g.scale(&small_coefficient(rng))).expect("same degree");
    }
    h
}

/// Inputs for the cancellation check at degree `n`: a third from the
/// identity span, a third arbitrary, a third an identity plus a sparse
/// perturbation.
pub fn cancellation_inputs<R: Rng>(
    rng: &mut R,
    n: usize,
    identities: &[MultilinearPolynomial],
    count: usize,
) -> Vec<MultilinearPolynomial> {
    (0..count)
        .map(|i| match i % 3 {
            0 => random_combination(rng, n, identities, 4),
            1 => random_multilinear(rng, n, 6),
            _ => random_combination(rng, n, identities, 3)
                .add(&random_multilinear(rng, n, 2))
                .expect("same degree"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn seeded_samples_repeat() {
        let a = random_multilinear(&mut ChaCha8Rng::seed_from_u64(7), 5, 6);
        let b = random_multilinear(&mut ChaCha8Rng::seed_from_u64(7), 5, 6);
        assert_eq!(a, b);
        assert_eq!(a.degree(), 5);
    }
}

//! Permutations and the rational group algebra `Q S_n`.
//!
//! Composition is `(σ∘τ)(i) = σ(τ(i))` everywhere in the crate, and the
//! semi-idempotent of a tableau is `e_T = R_T · C_T` (row symmetrizer on the
//! left, column antisymmetrizer on the right).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{CycleType, Partition, YoungTableau};
use crate::error::{Error, Result};
use crate::linalg::{int_row_from_rational, RowEchelon};

/// A permutation of `{1, …, n}`.
///
/// Stored 0-based in one-line notation; the public surface is 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n < 256, "degree {n} too large");
        Permutation {
            images: (0..n as u8).collect(),
        }
    }

    /// From 1-based one-line notation: `images[i-1] = σ(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n >= 256 {
            return Err(Error::InvalidPermutation(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &v in images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation {
            images: images.iter().map(|&v| (v - 1) as u8).collect(),
        })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        Permutation { images }
    }

    /// The transposition swapping `a` and `b` (1-based).
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a - 1, b - 1);
        p
    }

    /// The cycle `a_1 → a_2 → … → a_r → a_1` (1-based).
    pub fn cycle(n: usize, points: &[usize]) -> Self {
        let mut p = Self::identity(n);
        for (i, &a) in points.iter().enumerate() {
            let b = points[(i + 1) % points.len()];
            p.images[a - 1] = (b - 1) as u8;
        }
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(i)` for 1-based `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1] as usize + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    pub(crate) fn zero_based(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// Parity of the inversion count.
    pub fn sign(&self) -> i32 {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut transpositions = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn cycle_type(&self) -> CycleType {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            lens.push(len);
        }
        CycleType::new(Partition::from_unsorted(lens))
    }

    /// A permutation with the given cycle type: consecutive blocks as cycles.
    pub fn class_representative(cycles: &CycleType) -> Permutation {
        let n = cycles.size();
        let mut p = Self::identity(n);
        let mut start = 0;
        for &len in cycles.partition().parts() {
            for j in 0..len {
                p.images[start + j] = (start + (j + 1) % len) as u8;
            }
            start += len;
        }
        p
    }

    /// All of `S_n` in lexicographic order of one-line notation.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    /// Position of the permutation in [`Permutation::all`] (Lehmer code).
    pub fn lex_rank(&self) -> usize {
        let n = self.degree();
        let mut rank = 0;
        for i in 0..n {
            let smaller = self.images[i + 1..].iter().filter(|&&v| v < self.images[i]).count();
            rank = rank * (n - i) + smaller;
        }
        rank
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.one_line().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

/// Every permutation preserving each block setwise, with its sign.
pub fn young_subgroup(n: usize, blocks: &[Vec<usize>]) -> Vec<(Permutation, i32)> {
    let mut out = vec![(Permutation::identity(n), 1)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let local = Permutation::all(block.len());
        let mut next = Vec::with_capacity(out.len() * local.len());
        for (p, s) in &out {
            for l in &local {
                let mut q = p.clone();
                for (i, &src) in block.iter().enumerate() {
                    q.images[src - 1] = (block[l.images[i] as usize] - 1) as u8;
                }
                next.push((q, s * l.sign()));
            }
        }
        out = next;
    }
    out
}

/// A sparse element of `Q S_n`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    degree: usize,
    terms: BTreeMap<Permutation, BigRational>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            degree: n,
            terms: BTreeMap::new(),
        }
    }

    /// `δ_id`, the unit.
    pub fn one(n: usize) -> Self {
        Self::delta(Permutation::identity(n))
    }

    pub fn delta(p: Permutation) -> Self {
        let mut e = Self::zero(p.degree());
        e.terms.insert(p, BigRational::one());
        e
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Permutation, BigRational)>) -> Result<Self> {
        let mut e = Self::zero(n);
        for (p, c) in terms {
            if p.degree() != n {
                return Err(Error::DegreeMismatch {
                    left: n,
                    right: p.degree(),
                });
            }
            e.add_term(p, c);
        }
        Ok(e)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Adds `c·σ`, dropping the entry if it cancels.
    pub fn add_term(&mut self, p: Permutation, c: BigRational) {
        debug_assert_eq!(p.degree(), self.degree);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(p) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, p: &Permutation) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigRational)> {
        self.terms.iter()
    }

    /// Number of nonzero coefficients.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        GroupAlgebraElement {
            degree: self.degree,
            terms: self.terms.iter().map(|(p, v)| (p.clone(), v * c)).collect(),
        }
    }

    /// The convolution product `self · other`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.degree);
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                out.add_term(p.compose_unchecked(q), a * b);
            }
        }
        Ok(out)
    }

    /// `σ · self`.
    pub fn left_action(&self, s: &Permutation) -> Self {
        GroupAlgebraElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (s.compose_unchecked(p), c.clone()))
                .collect(),
        }
    }

    /// `self · σ`.
    pub fn right_action(&self, s: &Permutation) -> Self {
        GroupAlgebraElement {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| (p.compose_unchecked(s), c.clone()))
                .collect(),
        }
    }

    /// The coefficient vector indexed by [`Permutation::lex_rank`].
    pub fn to_sparse_vector(&self) -> Vec<(usize, BigRational)> {
        self.terms.iter().map(|(p, c)| (p.lex_rank(), c.clone())).collect()
    }

    /// Finds `c` with `self = c · other`, if one exists.
    pub fn ratio_to(&self, other: &Self) -> Option<BigRational> {
        if self.degree != other.degree || self.len() != other.len() {
            return None;
        }
        if other.is_zero() {
            return Some(BigRational::zero());
        }
        let (p, b) = other.terms.iter().next()?;
        let c = self.coeff(p) / b;
        let matches = other.terms.iter().all(|(q, v)| self.coeff(q) == v * &c);
        matches.then_some(c)
    }
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(p, c)| format!("{c}·{p}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn row_symmetrizer(t: &YoungTableau) -> GroupAlgebraElement {
    let n = t.size();
    let group = young_subgroup(n, t.rows());
    GroupAlgebraElement::from_terms(n, group.into_iter().map(|(p, _)| (p, BigRational::one()))).expect("degrees agree")
}

pub fn column_antisymmetrizer(t: &YoungTableau) -> GroupAlgebraElement {
    let n = t.size();
    let group = young_subgroup(n, &t.columns());
    GroupAlgebraElement::from_terms(
        n,
        group
            .into_iter()
            .map(|(p, s)| (p, BigRational::from_integer(BigInt::from(s)))),
    )
    .expect("degrees agree")
}

/// `e_T = R_T · C_T`.
pub fn semi_idempotent(t: &YoungTableau) -> GroupAlgebraElement {
    row_symmetrizer(t)
        .multiply(&column_antisymmetrizer(t))
        .expect("degrees agree")
}

/// Exact dimension of the span of a family of group-algebra elements.
pub fn span_rank<'a>(n: usize, elements: impl IntoIterator<Item = &'a GroupAlgebraElement>) -> usize {
    let ncols = (1..=n).product::<usize>();
    let mut e = RowEchelon::new(ncols);
    for el in elements {
        e.insert(int_row_from_rational(&el.to_sparse_vector()));
    }
    e.rank()
}

/// Dimension of the left ideal `Q S_n · a`.
pub fn left_ideal_dimension(a: &GroupAlgebraElement) -> usize {
    let n = a.degree();
    let translates: Vec<_> = Permutation::all(n).iter().map(|s| a.left_action(s)).collect();
    span_rank(n, &translates)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::factorial;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_images(v).unwrap()
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    #[test]
    fn compose_examples() {
        let id = Permutation::identity(3);
        let t = perm(&[1, 3, 2]);
        assert_eq!(id.compose(&t).unwrap(), t);
        let s = perm(&[3, 1, 2]);
        assert!(s.compose(&s.inverse()).unwrap().is_identity());
        assert_eq!(perm(&[2, 1, 3]).compose(&t).unwrap(), perm(&[2, 3, 1]));
        assert!(matches!(
            id.compose(&Permutation::identity(4)),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Permutation::identity(5).sign(), 1);
        assert_eq!(Permutation::transposition(5, 2, 4).sign(), -1);
        assert_eq!(Permutation::cycle(5, &[1, 2, 3]).sign(), 1);
    }

    #[test]
    fn sign_matches_inversions() {
        for p in Permutation::all(5) {
            let v = p.one_line();
            let inv = (0..5)
                .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
                .filter(|&(i, j)| v[i] > v[j])
                .count();
            assert_eq!(p.sign(), if inv % 2 == 0 { 1 } else { -1 });
        }
    }

    #[test]
    fn lex_rank_enumerates() {
        for (i, p) in Permutation::all(5).iter().enumerate() {
            assert_eq!(p.lex_rank(), i);
        }
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn invalid_permutations_rejected() {
        assert!(Permutation::from_images(&[1, 1]).is_err());
        assert!(Permutation::from_images(&[0, 1]).is_err());
        assert!(Permutation::from_images(&[3, 1]).is_err());
    }

    #[test]
    fn class_representative_has_its_type() {
        for c in Partition::all(6) {
            let ct = CycleType::new(c);
            assert_eq!(Permutation::class_representative(&ct).cycle_type(), ct);
        }
    }

    #[test]
    fn group_algebra_basics() {
        let a = GroupAlgebraElement::from_terms(3, [(perm(&[2, 1, 3]), q(2)), (perm(&[3, 1, 2]), q(-1))]).unwrap();
        assert_eq!(a.multiply(&GroupAlgebraElement::one(3)).unwrap(), a);
        assert_eq!(GroupAlgebraElement::one(3).multiply(&a).unwrap(), a);
        let d = GroupAlgebraElement::delta(perm(&[2, 1, 3]))
            .sub(&GroupAlgebraElement::delta(perm(&[1, 3, 2])))
            .unwrap();
        assert!(d.multiply(&GroupAlgebraElement::zero(3)).unwrap().is_zero());
        assert!(a.multiply(&GroupAlgebraElement::one(4)).is_err());
    }

    #[test]
    fn symmetrizer_examples() {
        let row = YoungTableau::row_reading(&Partition::row(3));
        let all: GroupAlgebraElement =
            GroupAlgebraElement::from_terms(3, Permutation::all(3).into_iter().map(|p| (p, q(1)))).unwrap();
        assert_eq!(row_symmetrizer(&row), all);
        assert_eq!(semi_idempotent(&row), all);
        assert_eq!(column_antisymmetrizer(&row), GroupAlgebraElement::one(3));

        let col = YoungTableau::row_reading(&Partition::column(3));
        assert_eq!(row_symmetrizer(&col), GroupAlgebraElement::one(3));
        let alt = GroupAlgebraElement::from_terms(
            3,
            Permutation::all(3).into_iter().map(|p| {
                let s = p.sign();
                (p, q(s as i64))
            }),
        )
        .unwrap();
        assert_eq!(column_antisymmetrizer(&col), alt);
        assert_eq!(semi_idempotent(&col), alt);

        let t = YoungTableau::new(vec![vec![1, 2], vec![3]]).unwrap();
        let want = GroupAlgebraElement::from_terms(
            3,
            [
                (Permutation::identity(3), q(1)),
                (Permutation::transposition(3, 1, 2), q(1)),
            ],
        )
        .unwrap();
        assert_eq!(row_symmetrizer(&t), want);
        let want = GroupAlgebraElement::from_terms(
            3,
            [
                (Permutation::identity(3), q(1)),
                (Permutation::transposition(3, 1, 3), q(-1)),
            ],
        )
        .unwrap();
        assert_eq!(column_antisymmetrizer(&t), want);
    }

    #[test]
    fn column_tableau_of_two_squares_to_twice_itself() {
        let t = YoungTableau::new(vec![vec![1], vec![2]]).unwrap();
        let e = semi_idempotent(&t);
        assert_eq!(e.multiply(&e).unwrap().ratio_to(&e), Some(q(2)));
    }

    #[test]
    fn semi_idempotents_are_quasi_idempotent_and_irreducible() {
        for n in 1..=5 {
            for lambda in Partition::all(n) {
                let t = YoungTableau::row_reading(&lambda);
                let e = semi_idempotent(&t);
                assert!(!e.is_zero());
                let f = lambda.dimension();
                let c = BigRational::from_integer(BigInt::from(factorial(n) / &f));
                assert_eq!(e.multiply(&e).unwrap().ratio_to(&e), Some(c), "{lambda}");
                assert_eq!(BigInt::from(left_ideal_dimension(&e)), BigInt::from(f), "{lambda}");
            }
        }
    }

    #[test]
    fn left_action_preserves_support_size() {
        let t = YoungTableau::row_reading(&Partition::new(vec![2, 1, 1]).unwrap());
        let e = semi_idempotent(&t);
        for s in Permutation::all(4) {
            assert_eq!(e.left_action(&s).len(), e.len());
        }
    }
}

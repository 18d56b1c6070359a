//! The infinite-dimensional Grassmann algebra `G`.
//!
//! Basis monomials are `e_{i_1} ⋯ e_{i_r}` with `i_1 < … < i_r`, written
//! `e[1,4,7]`; the empty monomial is the unit `1`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::freealg::{parse_rational, MultilinearPolynomial, NCPolynomial};
use crate::linalg::{int_row_from_i64, IntRow};
use crate::symgroup::Permutation;

/// A finite linear combination of Grassmann basis monomials.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GrassmannElement {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl GrassmannElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(BigRational::one())
    }

    pub fn scalar(c: BigRational) -> Self {
        let mut g = Self::zero();
        g.add_term(Vec::new(), c);
        g
    }

    pub fn generator(i: u32) -> Self {
        assert!(i >= 1, "generator indices start at 1");
        Self::basis(&[i]).expect("single index")
    }

    /// `e_{i_1} ⋯ e_{i_r}`; indices must be strictly increasing.
    pub fn basis(indices: &[u32]) -> Result<Self> {
        if indices.windows(2).any(|w| w[0] >= w[1]) || indices.first() == Some(&0) {
            return Err(Error::Parse(format!(
                "indices {indices:?} not strictly increasing from 1"
            )));
        }
        let mut g = Self::zero();
        g.add_term(indices.to_vec(), BigRational::one());
        Ok(g)
    }

    /// Product of generators in the given order; zero on repeats.
    pub fn product_of(indices: &[u32]) -> Self {
        indices
            .iter()
            .fold(Self::one(), |acc, &i| acc.multiply(&Self::generator(i)))
    }

    fn add_term(&mut self, idx: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(idx).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        GrassmannElement {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((merged, neg)) = merge_sign(a, b) {
                    let c = x * y;
                    out.add_term(merged, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Central elements are exactly those supported on even-length monomials.
    pub fn is_central(&self) -> bool {
        self.terms.keys().all(|k| k.len() % 2 == 0)
    }

    pub fn even_part(&self) -> Self {
        GrassmannElement {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.len() % 2 == 0)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    pub fn odd_part(&self) -> Self {
        self.sub(&self.even_part())
    }
}

/// Sorted union of two disjoint index sets and whether reordering is odd.
fn merge_sign(a: &[u32], b: &[u32]) -> Option<(Vec<u32>, bool)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut swaps = 0usize;
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            // b[j] passes the remaining elements of a
            swaps += a.len() - i;
            out.push(b[j]);
            j += 1;
        } else {
            return None;
        }
    }
    Some((out, swaps % 2 == 1))
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (k, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = if abs.is_integer() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            let mono = format!("e[{}]", k.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
            match (k.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{coeff} {mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for GrassmannElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::zero();
        let spaced = s.replace('+', " + ").replace('-', " - ");
        let mut sign = BigRational::one();
        let mut coeff: Option<BigRational> = None;
        let mut mono: Option<Vec<u32>> = None;
        let mut pending = false;
        let mut after_sign = false;
        let mut finish =
            |sign: &BigRational, coeff: &mut Option<BigRational>, mono: &mut Option<Vec<u32>>| -> Result<()> {
                let c = coeff.take().unwrap_or_else(BigRational::one) * sign;
                let idx = mono.take().unwrap_or_default();
                let term = GrassmannElement::basis(&idx)?;
                out = out.add(&term.scale(&c));
                Ok(())
            };
        for tok in spaced.split_whitespace() {
            match tok {
                "+" | "-" => {
                    if after_sign {
                        return Err(Error::Parse(format!("dangling sign in {s:?}")));
                    }
                    if pending {
                        finish(&sign, &mut coeff, &mut mono)?;
                        pending = false;
                    }
                    sign = if tok == "-" {
                        -BigRational::one()
                    } else {
                        BigRational::one()
                    };
                    after_sign = true;
                }
                t if t.starts_with("e[") && t.ends_with(']') => {
                    if mono.is_some() {
                        return Err(Error::Parse("two monomials in one term".into()));
                    }
                    let inner = &t[2..t.len() - 1];
                    let idx = if inner.is_empty() {
                        Vec::new()
                    } else {
                        inner
                            .split(',')
                            .map(|x| {
                                x.trim()
                                    .parse::<u32>()
                                    .map_err(|_| Error::Parse(format!("bad index in {t:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?
                    };
                    mono = Some(idx);
                    pending = true;
                    after_sign = false;
                }
                t => {
                    if pending {
                        return Err(Error::Parse(format!("unexpected {t:?}")));
                    }
                    coeff = Some(parse_rational(t)?);
                    pending = true;
                    after_sign = false;
                }
            }
        }
        if after_sign {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        if pending {
            finish(&sign, &mut coeff, &mut mono)?;
        }
        Ok(out)
    }
}

/// Evaluates a polynomial at Grassmann elements.
pub fn evaluate(p: &NCPolynomial, assignment: &BTreeMap<u32, GrassmannElement>) -> Result<GrassmannElement> {
    let mut out = GrassmannElement::zero();
    for (w, c) in p.terms() {
        let mut acc = GrassmannElement::scalar(c.clone());
        for v in w.letters() {
            let g = assignment.get(v).ok_or(Error::UnmappedVariable(*v))?;
            acc = acc.multiply(g);
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Parities of the values substituted for `x_1, …, x_n` (`true` = odd).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityVector(Vec<bool>);

impl ParityVector {
    pub fn new(bits: Vec<bool>) -> Self {
        ParityVector(bits)
    }

    /// Bit `i` of `mask` is the parity of `x_{i+1}`.
    pub fn from_mask(n: usize, mask: u32) -> Self {
        ParityVector((0..n).map(|i| mask & (1 << i) != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self, var: usize) -> bool {
        self.0[var - 1]
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn mask(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| 1u32 << i)
            .sum()
    }

    /// All `2^n` vectors, ordered by mask.
    pub fn all(n: usize) -> impl Iterator<Item = ParityVector> {
        (0u32..(1 << n)).map(move |m| ParityVector::from_mask(n, m))
    }
}

/// Sign of the order in which the odd variables appear in
/// `x_{σ(1)} ⋯ x_{σ(n)}`.
pub fn parity_sign(s: &Permutation, eps: &ParityVector) -> Result<i32> {
    if s.degree() != eps.len() {
        return Err(Error::SizeMismatch {
            expected: s.degree(),
            found: eps.len(),
        });
    }
    Ok(parity_sign_mask(s.zero_based(), eps.mask()))
}

pub(crate) fn parity_sign_mask(images: &[u8], odd: u32) -> i32 {
    let mut seen = 0u32;
    let mut inv = 0u32;
    for &v in images {
        let bit = 1u32 << v;
        if odd & bit != 0 {
            // earlier odd letters larger than v
            inv += (seen & !(bit | (bit - 1))).count_ones();
            seen |= bit;
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn functional(h: &MultilinearPolynomial, odd: u32) -> BigRational {
    let mut acc = BigRational::zero();
    for (p, c) in h.terms() {
        if parity_sign_mask(p.zero_based(), odd) > 0 {
            acc += c;
        } else {
            acc -= c;
        }
    }
    acc
}

/// `h ∈ Id(G)`: every parity functional vanishes.
pub fn is_identity_g(h: &MultilinearPolynomial) -> bool {
    let n = h.degree();
    (0u32..(1 << n)).all(|m| functional(h, m).is_zero())
}

/// `h` takes only central values on `G`: the functionals of odd weight
/// vanish.
pub fn is_central_g(h: &MultilinearPolynomial) -> bool {
    let n = h.degree();
    (0u32..(1 << n))
        .filter(|m| m.count_ones() % 2 == 1)
        .all(|m| functional(h, m).is_zero())
}

/// The disjoint-support substitution used by the direct checks: odd
/// variables receive a product of `odd_len` fresh generators, even ones a
/// product of `even_len` fresh generators.
pub fn disjoint_substitution(eps: &ParityVector, odd_len: usize, even_len: usize) -> BTreeMap<u32, GrassmannElement> {
    assert!(odd_len % 2 == 1 && even_len.is_multiple_of(2));
    let mut next = 1u32;
    let mut out = BTreeMap::new();
    for i in 1..=eps.len() {
        let len = if eps.is_odd(i) { odd_len } else { even_len };
        let idx: Vec<u32> = (next..next + len as u32).collect();
        next += len as u32;
        out.insert(i as u32, GrassmannElement::basis(&idx).expect("increasing"));
    }
    out
}

/// Identity test by evaluating at a basis substitution for every parity
/// pattern.
pub fn is_identity_g_direct(h: &MultilinearPolynomial) -> bool {
    let p = h.to_nc();
    ParityVector::all(h.degree()).all(|eps| {
        evaluate(&p, &disjoint_substitution(&eps, 1, 2))
            .expect("all mapped")
            .is_zero()
    })
}

/// Central-value test by direct evaluation.
pub fn is_central_g_direct(h: &MultilinearPolynomial) -> bool {
    let p = h.to_nc();
    ParityVector::all(h.degree()).all(|eps| {
        evaluate(&p, &disjoint_substitution(&eps, 1, 2))
            .expect("all mapped")
            .is_central()
    })
}

/// Checks that `x_{n+1} · h` is central-valued on `G` exactly when `h` is
/// an identity of `G`.
pub fn check_lemma_cancellation2(h: &MultilinearPolynomial) -> bool {
    is_central_g(&h.prepend_new_variable()) == is_identity_g(h)
}

/// Rows of the parity functionals on `V_n`, indexed by lexicographic rank;
/// `central_only` keeps the odd-weight patterns. Identical rows are
/// dropped.
pub fn parity_constraint_rows(n: usize, central_only: bool) -> Vec<IntRow> {
    let perms = Permutation::all(n);
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for m in 0u32..(1 << n) {
        if central_only && m.count_ones() % 2 == 0 {
            continue;
        }
        let signs: Vec<i8> = perms
            .iter()
            .map(|p| parity_sign_mask(p.zero_based(), m) as i8)
            .collect();
        let key = if signs[0] < 0 {
            signs.iter().map(|s| -s).collect()
        } else {
            signs.clone()
        };
        if seen.insert(key) {
            rows.push(int_row_from_i64(signs.iter().enumerate().map(|(i, &s)| (i, s as i64))));
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{simple_commutator, triple_commutator};

    use num_bigint::BigInt;

    fn rational(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn g(s: &str) -> GrassmannElement {
        s.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let e1 = GrassmannElement::generator(1);
        let e2 = GrassmannElement::generator(2);
        assert_eq!(e1.multiply(&e2), e2.multiply(&e1).scale(&rational(-1)));
        assert!(e1.multiply(&e1).is_zero());
        assert_eq!(g("e[1,2]").multiply(&g("e[3]")), g("e[1,2,3]"));
        assert_eq!(g("e[2,3]").multiply(&g("e[1]")), g("e[1,2,3]"));
        assert_eq!(g("e[2]").multiply(&g("e[1,3]")), g("-e[1,2,3]"));
        assert!(g("e[1,2]").is_central());
        assert!(!g("e[1]").is_central());
    }

    #[test]
    fn text_round_trip() {
        for s in ["3 e[1,4,7] - 1/2 e[2]", "1", "0", "-e[] + e[5]"] {
            let x = g(s);
            assert_eq!(g(&x.to_string()), x);
        }
        assert!("e[2,1]".parse::<GrassmannElement>().is_err());
        assert!("e[1,1]".parse::<GrassmannElement>().is_err());
        assert!("e[1] +".parse::<GrassmannElement>().is_err());
    }

    #[test]
    fn parity_sign_examples() {
        let s = Permutation::from_images(&[2, 1, 3]).unwrap();
        assert_eq!(
            parity_sign(&s, &ParityVector::new(vec![true, true, false])).unwrap(),
            -1
        );
        assert_eq!(parity_sign(&s, &ParityVector::new(vec![true, false, true])).unwrap(), 1);
        assert_eq!(parity_sign(&s, &ParityVector::new(vec![false; 3])).unwrap(), 1);
        assert!(parity_sign(&s, &ParityVector::new(vec![false; 2])).is_err());
    }

    #[test]
    fn identity_and_central_examples() {
        let t = MultilinearPolynomial::from_nc(&triple_commutator(), 3).unwrap();
        assert!(is_identity_g(&t) && is_identity_g_direct(&t));
        let c = MultilinearPolynomial::from_nc(&simple_commutator(), 2).unwrap();
        assert!(!is_identity_g(&c));
        assert!(is_central_g(&c) && is_central_g_direct(&c));
        let x = MultilinearPolynomial::from_nc(&"x1".parse().unwrap(), 1).unwrap();
        assert!(!is_central_g(&x));
        assert!(check_lemma_cancellation2(&t));
        assert!(check_lemma_cancellation2(&c));
    }

    #[test]
    fn constraint_row_counts() {
        assert_eq!(parity_constraint_rows(1, false).len(), 1);
        assert_eq!(crate::linalg::rank(2, parity_constraint_rows(2, false)), 2);
        assert_eq!(crate::linalg::rank(2, parity_constraint_rows(2, true)), 1);
    }
}

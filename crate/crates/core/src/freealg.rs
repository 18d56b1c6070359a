//! The free associative algebra `Q⟨x_1, x_2, …⟩` and its multilinear parts.
//!
//! A multilinear polynomial of degree `n` in `x_1, …, x_n` is identified with
//! the group-algebra element `Σ c_σ σ` via `σ ↔ x_{σ(1)} ⋯ x_{σ(n)}`. Under
//! this identification renaming variables `x_i ↦ x_{τ(i)}` is left
//! multiplication by `τ`.
//!
//! Text form: terms separated by `+`/`-`, each an optional rational
//! coefficient followed by variables, e.g. `3 x1 x3 x2 - 1/2 x2 x1 x3`. The
//! empty word is written `1`, the zero polynomial `0`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symgroup::{GroupAlgebraElement, Permutation};

/// A monomial: a finite sequence of variable indices (all `≥ 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<u32>);

impl Word {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::Parse("variable indices start at 1".into()));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The word of `x_{σ(1)} ⋯ x_{σ(n)}`.
    pub fn of_permutation(p: &Permutation) -> Word {
        Word(p.zero_based().iter().map(|&v| v as u32 + 1).collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|v| format!("x{v}")).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// A noncommutative polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NCPolynomial {
    terms: BTreeMap<Word, BigRational>,
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl NCPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), BigRational::one())
    }

    pub fn var(i: u32) -> Self {
        assert!(i >= 1, "variable indices start at 1");
        Self::monomial(Word(vec![i]), BigRational::one())
    }

    pub fn monomial(w: Word, c: BigRational) -> Self {
        let mut p = Self::zero();
        p.add_term(w, c);
        p
    }

    /// The product `x_{l_1} ⋯ x_{l_r}` with coefficient 1.
    pub fn word(letters: &[u32]) -> Self {
        Self::monomial(Word(letters.to_vec()), BigRational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, BigRational)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        NCPolynomial {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    /// Concatenation product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Largest word length, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn variables(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).collect()
    }

    /// Homomorphic image under `x_i ↦ map[i]`.
    pub fn substitute(&self, map: &BTreeMap<u32, NCPolynomial>) -> Result<Self> {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let mut acc = Self::monomial(Word::empty(), c.clone());
            for v in &w.0 {
                let img = map.get(v).ok_or(Error::UnmappedVariable(*v))?;
                acc = acc.mul(img);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Renames variables letter by letter.
    pub fn rename(&self, f: impl Fn(u32) -> u32) -> Self {
        NCPolynomial::from_terms(
            self.terms
                .iter()
                .map(|(w, c)| (Word(w.0.iter().map(|&v| f(v)).collect()), c.clone())),
        )
    }

    /// Degree `d` when every word contains each of `x_1, …, x_v` exactly `d`
    /// times and no other variable.
    pub fn multihomogeneous_degree(&self) -> Option<(usize, usize)> {
        let vars = self.variables();
        let v = vars.len();
        if vars.iter().copied().ne(1..=v as u32) {
            return None;
        }
        let first = self.terms.keys().next()?;
        let d = first.len() / v.max(1);
        for w in self.terms.keys() {
            let mut counts = vec![0usize; v + 1];
            for &l in &w.0 {
                counts[l as usize] += 1;
            }
            if counts[1..].iter().any(|&c| c != d) || w.len() != v * d {
                return None;
            }
        }
        Some((v, d))
    }
}

/// `[p, q] = pq − qp`.
pub fn commutator(p: &NCPolynomial, q: &NCPolynomial) -> NCPolynomial {
    p.mul(q).sub(&q.mul(p))
}

/// `[[x_1, x_2], x_3]`.
pub fn triple_commutator() -> NCPolynomial {
    commutator(
        &commutator(&NCPolynomial::var(1), &NCPolynomial::var(2)),
        &NCPolynomial::var(3),
    )
}

/// `[x_1, x_2]`.
pub fn simple_commutator() -> NCPolynomial {
    commutator(&NCPolynomial::var(1), &NCPolynomial::var(2))
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{}", fmt_coeff(&abs))?;
            } else if abs.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{} {w}", fmt_coeff(&abs))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient {s:?}"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.parse().map_err(|_| bad())?;
            let b: BigInt = b.parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for NCPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spaced = s.replace('+', " + ").replace('-', " - ");
        let mut out = NCPolynomial::zero();
        let mut sign = BigRational::one();
        let mut coeff: Option<BigRational> = None;
        let mut letters: Vec<u32> = Vec::new();
        let mut have_term = false;
        let mut after_sign = false;
        for tok in spaced.split_whitespace() {
            match tok {
                "+" | "-" => {
                    if after_sign {
                        return Err(Error::Parse(format!("dangling sign in {s:?}")));
                    }
                    if have_term {
                        let c = coeff.take().unwrap_or_else(BigRational::one) * &sign;
                        out.add_term(Word(std::mem::take(&mut letters)), c);
                        have_term = false;
                    }
                    sign = if tok == "-" {
                        -BigRational::one()
                    } else {
                        BigRational::one()
                    };
                    after_sign = true;
                }
                t if t.starts_with('x') => {
                    let v: u32 = t[1..]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable {t:?}")))?;
                    if v == 0 {
                        return Err(Error::Parse("variable indices start at 1".into()));
                    }
                    letters.push(v);
                    have_term = true;
                    after_sign = false;
                }
                t => {
                    if have_term {
                        return Err(Error::Parse(format!("coefficient {t:?} after variables")));
                    }
                    coeff = Some(parse_rational(t)?);
                    have_term = true;
                    after_sign = false;
                }
            }
        }
        if after_sign {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        if have_term {
            let c = coeff.take().unwrap_or_else(BigRational::one) * &sign;
            out.add_term(Word(letters), c);
        }
        Ok(out)
    }
}

/// An element of `V_n`, stored as an element of `Q S_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultilinearPolynomial {
    ga: GroupAlgebraElement,
}

impl MultilinearPolynomial {
    pub fn zero(n: usize) -> Self {
        MultilinearPolynomial {
            ga: GroupAlgebraElement::zero(n),
        }
    }

    pub fn from_group_algebra(ga: GroupAlgebraElement) -> Self {
        MultilinearPolynomial { ga }
    }

    /// The monomial `x_{σ(1)} ⋯ x_{σ(n)}`.
    pub fn monomial(p: Permutation) -> Self {
        MultilinearPolynomial {
            ga: GroupAlgebraElement::delta(p),
        }
    }

    /// Reads a polynomial multilinear in exactly `x_1, …, x_n`.
    pub fn from_nc(p: &NCPolynomial, n: usize) -> Result<Self> {
        let mut ga = GroupAlgebraElement::zero(n);
        for (w, c) in p.terms() {
            if w.len() != n {
                return Err(Error::NotMultilinear(n));
            }
            let images: Vec<usize> = w.letters().iter().map(|&v| v as usize).collect();
            let perm = Permutation::from_images(&images).map_err(|_| Error::NotMultilinear(n))?;
            ga.add_term(perm, c.clone());
        }
        Ok(MultilinearPolynomial { ga })
    }

    pub fn degree(&self) -> usize {
        self.ga.degree()
    }

    pub fn group_algebra(&self) -> &GroupAlgebraElement {
        &self.ga
    }

    pub fn into_group_algebra(self) -> GroupAlgebraElement {
        self.ga
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &BigRational)> {
        self.ga.terms()
    }

    pub fn is_zero(&self) -> bool {
        self.ga.is_zero()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.ga.len()
    }

    pub fn to_nc(&self) -> NCPolynomial {
        NCPolynomial::from_terms(self.ga.terms().map(|(p, c)| (Word::of_permutation(p), c.clone())))
    }

    /// Renaming `x_i ↦ x_{σ(i)}`.
    pub fn left_action(&self, s: &Permutation) -> Self {
        MultilinearPolynomial {
            ga: self.ga.left_action(s),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(MultilinearPolynomial {
            ga: self.ga.add(&other.ga)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(MultilinearPolynomial {
            ga: self.ga.sub(&other.ga)?,
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        MultilinearPolynomial { ga: self.ga.scale(c) }
    }

    /// `x_{n+1} · h`, an element of `V_{n+1}`.
    pub fn prepend_new_variable(&self) -> Self {
        let n = self.degree();
        let mut ga = GroupAlgebraElement::zero(n + 1);
        for (p, c) in self.ga.terms() {
            let mut img = vec![n as u8];
            img.extend_from_slice(p.zero_based());
            ga.add_term(Permutation::from_zero_based(img), c.clone());
        }
        MultilinearPolynomial { ga }
    }

    /// Divides by the first nonzero coefficient, making the polynomial
    /// canonical up to scaling.
    pub fn normalized(&self) -> Self {
        match self.ga.terms().next() {
            None => self.clone(),
            Some((_, c)) => self.scale(&(BigRational::one() / c)),
        }
    }
}

impl fmt::Display for MultilinearPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_nc())
    }
}

/// The canonical `h_{n-1}` with `h = x_n · h_{n-1} + q_n`: each monomial
/// `a x_n b` is sent to `b a`.
pub fn peel_leading(h: &MultilinearPolynomial) -> Result<MultilinearPolynomial> {
    let n = h.degree();
    if n == 0 {
        return Err(Error::PreconditionViolated(
            "peel_leading needs degree at least 1".into(),
        ));
    }
    let top = (n - 1) as u8;
    let mut ga = GroupAlgebraElement::zero(n - 1);
    for (p, c) in h.terms() {
        let w = p.zero_based();
        let t = w.iter().position(|&v| v == top).expect("x_n occurs once");
        let mut img = w[t + 1..].to_vec();
        img.extend_from_slice(&w[..t]);
        ga.add_term(Permutation::from_zero_based(img), c.clone());
    }
    Ok(MultilinearPolynomial { ga })
}

/// `q_n = h − x_n · peel_leading(h)`.
pub fn peel_residual(h: &MultilinearPolynomial) -> Result<MultilinearPolynomial> {
    let peeled = peel_leading(h)?;
    h.sub(&peeled.prepend_new_variable())
}

/// Full polarization of a polynomial of degree `d` in each of `x_1, …, x_v`.
///
/// Occurrences of `x_i` are replaced by the fresh variables
/// `x_{(i-1)d+1}, …, x_{id}` in every possible order; the result lies in
/// `V_{vd}`.
pub fn multilinearize(p: &NCPolynomial, d: usize) -> Result<MultilinearPolynomial> {
    if p.is_zero() {
        return Err(Error::NotMultihomogeneous(d));
    }
    let (v, deg) = p.multihomogeneous_degree().ok_or(Error::NotMultihomogeneous(d))?;
    if deg != d {
        return Err(Error::NotMultihomogeneous(d));
    }
    let n = v * d;
    let local = Permutation::all(d);
    let mut ga = GroupAlgebraElement::zero(n);
    for (w, c) in p.terms() {
        // positions of each variable inside the word
        let mut positions = vec![Vec::with_capacity(d); v + 1];
        for (t, &l) in w.letters().iter().enumerate() {
            positions[l as usize].push(t);
        }
        let mut choice = vec![0usize; v];
        loop {
            let mut img = vec![0u8; n];
            for i in 1..=v {
                let perm = local[choice[i - 1]].zero_based();
                for (j, &t) in positions[i].iter().enumerate() {
                    img[t] = ((i - 1) * d + perm[j] as usize) as u8;
                }
            }
            ga.add_term(Permutation::from_zero_based(img), c.clone());
            // odometer over (d!)^v choices
            let mut k = 0;
            while k < v {
                choice[k] += 1;
                if choice[k] < local.len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == v {
                break;
            }
        }
    }
    Ok(MultilinearPolynomial { ga })
}

/// A multilinear element as a list of `(word, coefficient)` over 1-based
/// letters; used while assembling spanning sets.
type Lin = Vec<(Vec<u8>, BigRational)>;

/// Substitution instances `g(m_1, …, m_t)` of a multilinear generator with
/// nonempty monomials on disjoint letters covering `letters` exactly.
fn instances_on(g: &MultilinearPolynomial, letters: &[u8]) -> Vec<Lin> {
    let t = g.degree();
    let s = letters.len();
    let mut out = Vec::new();
    if t == 0 || t > s {
        return out;
    }
    for arr in Permutation::all(s) {
        let word: Vec<u8> = arr.zero_based().iter().map(|&i| letters[i as usize]).collect();
        for cuts in compositions(s, t, 1) {
            let pieces = split(&word, &cuts);
            out.push(apply(g, &pieces, &[], &[]));
        }
    }
    out
}

/// `u_0 · g(m_1, …, m_t) · u_1` as a word-level combination.
fn apply(g: &MultilinearPolynomial, pieces: &[&[u8]], u0: &[u8], u1: &[u8]) -> Lin {
    g.terms()
        .map(|(p, c)| {
            let mut w = u0.to_vec();
            for &i in p.zero_based() {
                w.extend_from_slice(pieces[i as usize]);
            }
            w.extend_from_slice(u1);
            (w, c.clone())
        })
        .collect()
}

/// Compositions of `total` into `parts` pieces, each at least `min`.
fn compositions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, parts: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max = rest.saturating_sub(min * (parts - 1));
        for l in min..=max {
            cur.push(l);
            rec(rest - l, parts - 1, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts * min <= total {
        rec(total, parts, min, &mut Vec::new(), &mut out);
    }
    out
}

fn split<'a>(word: &'a [u8], lens: &[usize]) -> Vec<&'a [u8]> {
    let mut out = Vec::with_capacity(lens.len());
    let mut start = 0;
    for &l in lens {
        out.push(&word[start..start + l]);
        start += l;
    }
    out
}

fn lin_to_multilinear(n: usize, lin: &Lin) -> MultilinearPolynomial {
    let mut ga = GroupAlgebraElement::zero(n);
    for (w, c) in lin {
        ga.add_term(
            Permutation::from_zero_based(w.iter().map(|&l| l - 1).collect()),
            c.clone(),
        );
    }
    MultilinearPolynomial { ga }
}

/// Adds a normalized copy of `h` unless it is zero or already present.
fn push_unique(
    seen: &mut HashSet<Vec<(Permutation, BigRational)>>,
    out: &mut Vec<MultilinearPolynomial>,
    h: MultilinearPolynomial,
) {
    if h.is_zero() {
        return;
    }
    let h = h.normalized();
    let key: Vec<_> = h.terms().map(|(p, c)| (p.clone(), c.clone())).collect();
    if seen.insert(key) {
        out.push(h);
    }
}

fn generator_as_multilinear(g: &NCPolynomial) -> Result<MultilinearPolynomial> {
    let n = g.degree().unwrap_or(0);
    MultilinearPolynomial::from_nc(g, n)
}

/// A spanning set of `V_n ∩ T(generators)`.
///
/// Emits every `u_0 · g(m_1, …, m_t) · u_1` with `g` a generator, `m_i`
/// nonempty monomials and `u_0, u_1` (possibly empty) monomials, together
/// using each of `x_1, …, x_n` once. Each generator must be multilinear in
/// `x_1, …, x_t`. Elements are normalized (first coefficient 1) and exact
/// duplicates dropped; the family is still redundant in general.
pub fn t_ideal_multilinear(generators: &[NCPolynomial], n: usize) -> Result<Vec<MultilinearPolynomial>> {
    let gens = generators
        .iter()
        .map(generator_as_multilinear)
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let letters: Vec<u8> = (1..=n as u8).collect();
    for g in &gens {
        let t = g.degree();
        if t == 0 || t > n {
            continue;
        }
        for arr in Permutation::all(n) {
            let word: Vec<u8> = arr.zero_based().iter().map(|&i| letters[i as usize]).collect();
            for outer in 0..=n - t {
                // outer letters are split between u_0 and u_1
                for l0 in 0..=outer {
                    let inner = n - outer;
                    for cuts in compositions(inner, t, 1) {
                        let u0 = &word[..l0];
                        let mid = &word[l0..l0 + inner];
                        let u1 = &word[l0 + inner..];
                        let pieces = split(mid, &cuts);
                        let lin = apply(g, &pieces, u0, u1);
                        push_unique(&mut seen, &mut out, lin_to_multilinear(n, &lin));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Ordered set partitions of `letters` into nonempty blocks.
fn ordered_set_partitions(letters: &[u8]) -> Vec<Vec<Vec<u8>>> {
    if letters.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    let n = letters.len();
    for mask in 1u32..(1 << n) {
        let block: Vec<u8> = (0..n).filter(|&i| mask & (1 << i) != 0).map(|i| letters[i]).collect();
        let rest: Vec<u8> = (0..n).filter(|&i| mask & (1 << i) == 0).map(|i| letters[i]).collect();
        for mut tail in ordered_set_partitions(&rest) {
            tail.insert(0, block.clone());
            out.push(tail);
        }
    }
    out
}

/// A spanning set of `V_n ∩ H`, where `H` is the algebra generated by the
/// T-ideal of `ideal_gens` and all substitution instances of `alg_gens`.
///
/// The family consists of the [`t_ideal_multilinear`] spanning set together
/// with all products `f_1 ⋯ f_t` (`t ≥ 1`) over ordered partitions of
/// `x_1, …, x_n` into blocks, each `f_j` an instance of an algebra generator
/// on its block. Products with a factor from the ideal are omitted: such a
/// product is a sum of `u_0 · g(m) · u_1` terms already in the ideal family.
pub fn t_subalgebra_multilinear(
    ideal_gens: &[NCPolynomial],
    alg_gens: &[NCPolynomial],
    n: usize,
) -> Result<Vec<MultilinearPolynomial>> {
    let algs = alg_gens
        .iter()
        .map(generator_as_multilinear)
        .collect::<Result<Vec<_>>>()?;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if n == 0 {
        return Ok(out);
    }
    let letters: Vec<u8> = (1..=n as u8).collect();
    let mut cache: BTreeMap<Vec<u8>, Vec<Lin>> = BTreeMap::new();
    for blocks in ordered_set_partitions(&letters) {
        for b in &blocks {
            cache.entry(b.clone()).or_insert_with(|| {
                let mut all: Vec<Lin> = Vec::new();
                let mut local_seen = HashSet::new();
                for g in &algs {
                    for lin in instances_on(g, b) {
                        let key = canonical_lin(&lin);
                        if local_seen.insert(key.clone()) {
                            all.push(key);
                        }
                    }
                }
                all
            });
        }
        if blocks.iter().any(|b| cache[b].is_empty()) {
            continue;
        }
        // odometer over one instance per block
        let lists: Vec<&Vec<Lin>> = blocks.iter().map(|b| &cache[b]).collect();
        let mut idx = vec![0usize; lists.len()];
        loop {
            let mut prod: Lin = vec![(Vec::new(), BigRational::one())];
            for (list, &i) in lists.iter().zip(&idx) {
                let f = &list[i];
                prod = prod
                    .iter()
                    .flat_map(|(w, c)| {
                        f.iter().map(move |(w2, c2)| {
                            let mut w = w.clone();
                            w.extend_from_slice(w2);
                            (w, c * c2)
                        })
                    })
                    .collect();
            }
            push_unique(&mut seen, &mut out, lin_to_multilinear(n, &prod));
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    let ideal_gens: Vec<NCPolynomial> = ideal_gens.to_vec();
    for h in t_ideal_multilinear(&ideal_gens, n)? {
        push_unique(&mut seen, &mut out, h);
    }
    Ok(out)
}

/// Merges equal words and scales so the smallest word has coefficient 1.
fn canonical_lin(lin: &Lin) -> Lin {
    let mut m: BTreeMap<Vec<u8>, BigRational> = BTreeMap::new();
    for (w, c) in lin {
        *m.entry(w.clone()).or_insert_with(BigRational::zero) += c;
    }
    m.retain(|_, c| !c.is_zero());
    let first = m.values().next().cloned().unwrap_or_else(BigRational::one);
    m.into_iter().map(|(w, c)| (w, c / &first)).collect()
}

/// `Σ_{σ ∈ S_r} x_{σ(1)} ⋯ x_{σ(r)}`.
pub fn full_symmetrization(r: usize) -> NCPolynomial {
    NCPolynomial::from_terms(
        Permutation::all(r)
            .iter()
            .map(|p| (Word::of_permutation(p), BigRational::one())),
    )
}

/// `Σ_{σ ∈ S_r} sgn(σ) x_{σ(1)} ⋯ x_{σ(r)}`.
pub fn standard_polynomial(r: usize) -> NCPolynomial {
    NCPolynomial::from_terms(
        Permutation::all(r)
            .iter()
            .map(|p| (Word::of_permutation(p), q(p.sign() as i64))),
    )
}

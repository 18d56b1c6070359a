//! The matrix algebra `M_k(Q)`: evaluation, centrality on matrix units and
//! the alternating Capelli-type central polynomials.
//!
//! Matrix units are indexed `u = (i-1)·k + (j-1)` for `e_{i,j}`, so the
//! ordering is `e_{1,1}, e_{1,2}, …, e_{k,k}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::combinatorics::{glue_shapes, glue_tableaux, Partition, YoungTableau};
use crate::error::{Error, Result};
use crate::freealg::{full_symmetrization, multilinearize, MultilinearPolynomial, NCPolynomial, Word};
use crate::symgroup::{semi_idempotent, Permutation};

/// Largest number of terms an alternating polynomial may have before the
/// construction refuses with `BudgetExceeded`.
pub const CAPELLI_TERM_LIMIT: u64 = 2_000_000;

/// A `k × k` matrix over `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    k: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(k: usize) -> Self {
        RationalMatrix {
            k,
            entries: vec![BigRational::zero(); k * k],
        }
    }

    pub fn identity(k: usize) -> Self {
        Self::scalar(k, BigRational::one())
    }

    pub fn scalar(k: usize, c: BigRational) -> Self {
        let mut m = Self::zero(k);
        for i in 0..k {
            m.entries[i * k + i] = c.clone();
        }
        m
    }

    /// `e_{i,j}`, 1-based.
    pub fn unit(k: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > k || j > k {
            return Err(Error::PreconditionViolated(format!("e_{{{i},{j}}} outside M_{k}")));
        }
        let mut m = Self::zero(k);
        m.entries[(i - 1) * k + (j - 1)] = BigRational::one();
        Ok(m)
    }

    pub fn diagonal(values: &[BigRational]) -> Self {
        let k = values.len();
        let mut m = Self::zero(k);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * k + i] = v.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let k = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != k) {
            return Err(Error::SizeMismatch {
                expected: k,
                found: r.len(),
            });
        }
        Ok(RationalMatrix {
            k,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// Entry `(i, j)`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[(i - 1) * self.k + (j - 1)]
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.k != other.k {
            return Err(Error::SizeMismatch {
                expected: self.k,
                found: other.k,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let k = self.k;
        let mut out = Self::zero(k);
        for i in 0..k {
            for l in 0..k {
                let a = &self.entries[i * k + l];
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = &other.entries[l * k + j];
                    if !b.is_zero() {
                        out.entries[i * k + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(RationalMatrix {
            k: self.k,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RationalMatrix {
            k: self.k,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// `m = c·I` for some `c` (including `c = 0`).
    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    pub fn scalar_value(&self) -> Option<BigRational> {
        let k = self.k;
        if k == 0 {
            return Some(BigRational::zero());
        }
        let c = &self.entries[0];
        for i in 0..k {
            for j in 0..k {
                let e = &self.entries[i * k + j];
                let ok = if i == j { e == c } else { e.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(c.clone())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.k)
            .map(|i| {
                (0..self.k)
                    .map(|j| crate::cochar::format_rational(&self.entries[i * self.k + j]))
                    .collect::<Vec<_>>()
                    .join(", ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub fn is_scalar(m: &RationalMatrix) -> bool {
    m.is_scalar()
}

/// Homomorphic evaluation at matrices; the empty word maps to `I`.
pub fn m_evaluate(p: &NCPolynomial, assignment: &BTreeMap<u32, RationalMatrix>) -> Result<RationalMatrix> {
    let k = match assignment.values().next() {
        Some(m) => m.size(),
        None => {
            return match p.variables().into_iter().next() {
                Some(v) => Err(Error::UnmappedVariable(v)),
                None => Err(Error::PreconditionViolated(
                    "matrix size unknown without an assignment".into(),
                )),
            }
        }
    };
    if let Some(m) = assignment.values().find(|m| m.size() != k) {
        return Err(Error::SizeMismatch {
            expected: k,
            found: m.size(),
        });
    }
    let mut out = RationalMatrix::zero(k);
    for (w, c) in p.terms() {
        let mut acc = RationalMatrix::scalar(k, c.clone());
        for v in w.letters() {
            let m = assignment.get(v).ok_or(Error::UnmappedVariable(*v))?;
            acc = acc.mul(m)?;
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

/// Evaluates one polynomial at many matrix-unit assignments.
///
/// Words are stored in a trie with integer coefficients (the polynomial
/// scaled by a common denominator); a branch is abandoned as soon as its
/// prefix evaluates to zero.
pub struct UnitEvaluator {
    k: usize,
    nodes: Vec<TrieNode>,
    denom: BigInt,
    max_var: u32,
}

#[derive(Default)]
struct TrieNode {
    children: Vec<(u32, u32)>,
    coeff: i64,
}

/// `k × k` integer matrix, stored row-major, of a value scaled by the
/// evaluator's denominator.
pub type ScaledValue = Vec<i128>;

impl UnitEvaluator {
    pub fn new(p: &NCPolynomial, k: usize) -> Result<Self> {
        let mut denom = BigInt::one();
        for (_, c) in p.terms() {
            denom = denom.lcm(c.denom());
        }
        let mut nodes = vec![TrieNode::default()];
        let mut max_var = 0;
        for (w, c) in p.terms() {
            let scaled = (c * BigRational::from_integer(denom.clone())).to_integer();
            let coeff = scaled
                .to_i64()
                .ok_or_else(|| Error::PreconditionViolated("coefficient too large for unit evaluation".into()))?;
            let mut node = 0usize;
            for &v in w.letters() {
                max_var = max_var.max(v);
                node = match nodes[node].children.iter().find(|(l, _)| *l == v) {
                    Some(&(_, c)) => c as usize,
                    None => {
                        nodes.push(TrieNode::default());
                        let id = nodes.len() - 1;
                        nodes[node].children.push((v, id as u32));
                        id
                    }
                };
            }
            nodes[node].coeff += coeff;
        }
        Ok(UnitEvaluator {
            k,
            nodes,
            denom,
            max_var,
        })
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Value at `x_v ↦ unit[v-1]`, scaled by the denominator.
    pub fn eval_scaled(&self, units: &[usize]) -> ScaledValue {
        assert!(
            units.len() >= self.max_var as usize,
            "assignment shorter than the variable range"
        );
        let k = self.k;
        let mut out = vec![0i128; k * k];
        // state: None = empty product, Some((row, col))
        let mut stack: Vec<(u32, Option<(usize, usize)>)> = vec![(0, None)];
        while let Some((node, state)) = stack.pop() {
            let nd = &self.nodes[node as usize];
            if nd.coeff != 0 {
                match state {
                    None => {
                        for i in 0..k {
                            out[i * k + i] += nd.coeff as i128;
                        }
                    }
                    Some((a, b)) => out[a * k + b] += nd.coeff as i128,
                }
            }
            for &(v, child) in &nd.children {
                let u = units[v as usize - 1];
                let (c, d) = (u / k, u % k);
                let next = match state {
                    None => Some((c, d)),
                    Some((a, b)) if b == c => Some((a, d)),
                    _ => continue,
                };
                stack.push((child, next));
            }
        }
        out
    }

    pub fn eval(&self, units: &[usize]) -> RationalMatrix {
        let raw = self.eval_scaled(units);
        RationalMatrix {
            k: self.k,
            entries: raw
                .into_iter()
                .map(|x| BigRational::new(BigInt::from(x), self.denom.clone()))
                .collect(),
        }
    }
}

pub(crate) fn scaled_is_scalar(v: &[i128], k: usize) -> bool {
    (0..k).all(|i| {
        (0..k).all(|j| {
            if i == j {
                v[i * k + i] == v[0]
            } else {
                v[i * k + j] == 0
            }
        })
    })
}

fn tuple_from_index(mut idx: u64, base: usize, n: usize) -> Vec<usize> {
    let mut t = vec![0usize; n];
    for slot in t.iter_mut() {
        *slot = (idx % base as u64) as usize;
        idx /= base as u64;
    }
    t
}

/// Tests `pred` on the value at every assignment of matrix units to
/// `x_1, …, x_n`.
fn all_unit_tuples(p: &NCPolynomial, n: usize, k: usize, pred: impl Fn(&[i128]) -> bool + Sync) -> bool {
    let ev = UnitEvaluator::new(p, k).expect("small coefficients");
    let base = k * k;
    let total = (base as u64).pow(n as u32);
    (0..total)
        .into_par_iter()
        .all(|i| pred(&ev.eval_scaled(&tuple_from_index(i, base, n))))
}

/// `h` vanishes on every tuple of matrix units of `M_k`.
pub fn is_identity_mk(h: &MultilinearPolynomial, k: usize) -> bool {
    all_unit_tuples(&h.to_nc(), h.degree(), k, |v| v.iter().all(|&x| x == 0))
}

/// Every matrix-unit evaluation of `h` is scalar.
pub fn is_central_mk(h: &MultilinearPolynomial, k: usize) -> bool {
    all_unit_tuples(&h.to_nc(), h.degree(), k, |v| scaled_is_scalar(v, k))
}

/// A bijection `x_u ↦ e_{i,j}` between `x_1, …, x_{k²}` and the units.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixUnitBijection {
    k: usize,
    units: Vec<usize>,
}

impl MatrixUnitBijection {
    /// `units[u-1]` is the unit index assigned to `x_u`.
    pub fn new(k: usize, units: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; k * k];
        if units.len() != k * k {
            return Err(Error::SizeMismatch {
                expected: k * k,
                found: units.len(),
            });
        }
        for &u in &units {
            if u >= k * k || std::mem::replace(&mut seen[u], true) {
                return Err(Error::PreconditionViolated(
                    "not a bijection onto the matrix units".into(),
                ));
            }
        }
        Ok(MatrixUnitBijection { k, units })
    }

    pub fn from_permutation(k: usize, p: &Permutation) -> Self {
        MatrixUnitBijection {
            k,
            units: p.zero_based().iter().map(|&u| u as usize).collect(),
        }
    }

    /// All `(k²)!` bijections in lexicographic order.
    pub fn all(k: usize) -> Vec<Self> {
        Permutation::all(k * k)
            .iter()
            .map(|p| Self::from_permutation(k, p))
            .collect()
    }

    pub fn units(&self) -> &[usize] {
        &self.units
    }

    /// `(i, j)` of the unit assigned to `x_u`, 1-based.
    pub fn unit_of(&self, u: usize) -> (usize, usize) {
        let x = self.units[u - 1];
        (x / self.k + 1, x % self.k + 1)
    }
}

impl fmt::Display for MatrixUnitBijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (1..=self.units.len())
            .map(|u| {
                let (i, j) = self.unit_of(u);
                format!("x{u}=e{i}{j}")
            })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn check_sets(s: usize) -> Result<()> {
    if s == 2 || s == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedSetCount(s))
    }
}

/// Variable index of the `i`-th variable (1-based) of alphabet `a` (0-based).
fn alphabet_var(k: usize, a: usize, i: usize) -> u32 {
    (a * k * k + i) as u32
}

/// The monomial `(x)(y)(xxx)(yyy)⋯` (or with three alphabets), alphabet `a`
/// using variables `a·k² + 1, …, (a+1)·k²`.
pub fn regev_monomial(k: usize, s: usize) -> Result<Word> {
    check_sets(s)?;
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be at least 1".into()));
    }
    let mut letters = Vec::with_capacity(s * k * k);
    let mut next = 1;
    for b in 0..k {
        let len = 2 * b + 1;
        for a in 0..s {
            letters.extend((next..next + len).map(|i| alphabet_var(k, a, i)));
        }
        next += len;
    }
    Word::new(letters)
}

/// Alternates each alphabet of [`regev_monomial`] independently over
/// `S_{k²}`.
pub fn regev_polynomial(k: usize, s: usize) -> Result<NCPolynomial> {
    let m = regev_monomial(k, s)?;
    let kk = k * k;
    let per: u64 = (1..=kk as u64).product();
    let total = per.checked_pow(s as u32).unwrap_or(u64::MAX);
    if total > CAPELLI_TERM_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "alternating polynomial would have {total} terms"
        )));
    }
    let perms = Permutation::all(kk);
    let mut choice = vec![0usize; s];
    let mut terms = Vec::with_capacity(total as usize);
    loop {
        let mut sign = 1i64;
        for &c in &choice {
            sign *= perms[c].sign() as i64;
        }
        let letters: Vec<u32> = m
            .letters()
            .iter()
            .map(|&v| {
                let a = (v as usize - 1) / kk;
                let i = (v as usize - 1) % kk + 1;
                alphabet_var(k, a, perms[choice[a]].image(i))
            })
            .collect();
        terms.push((Word::new(letters)?, BigRational::from_integer(BigInt::from(sign))));
        let mut t = 0;
        while t < s {
            choice[t] += 1;
            if choice[t] < perms.len() {
                break;
            }
            choice[t] = 0;
            t += 1;
        }
        if t == s {
            break;
        }
    }
    Ok(NCPolynomial::from_terms(terms))
}

/// `L` with every alphabet identified with the first one.
pub fn g_poly(k: usize, s: usize) -> Result<NCPolynomial> {
    let kk = (k * k) as u32;
    Ok(regev_polynomial(k, s)?.rename(|v| (v - 1) % kk + 1))
}

/// `Σ_{σ ∈ S_r} x_{σ(1)} ⋯ x_{σ(r)}`.
pub fn h_sym(r: usize) -> NCPolynomial {
    full_symmetrization(r)
}

/// The tableau of shape `(s^{k²})` attached to the monomial: row `i` holds
/// the positions of the `i`-th variable of each alphabet.
pub fn capelli_tableau(k: usize, s: usize) -> Result<YoungTableau> {
    let m = regev_monomial(k, s)?;
    let kk = k * k;
    let mut rows = vec![vec![0usize; s]; kk];
    for (pos, &v) in m.letters().iter().enumerate() {
        let a = (v as usize - 1) / kk;
        let i = (v as usize - 1) % kk;
        rows[i][a] = pos + 1;
    }
    YoungTableau::new(rows)
}

/// Sends the fresh variable `(i-1)s + j` produced by multilinearizing
/// `g_s` to the entry in row `i`, column `j` of [`capelli_tableau`].
pub fn capelli_relabeling(k: usize, s: usize) -> Result<Permutation> {
    let t = capelli_tableau(k, s)?;
    let images: Vec<usize> = t.rows().iter().flat_map(|r| r.iter().copied()).collect();
    Permutation::from_images(&images)
}

/// The constant `d` with `ρ · multilinearize(g_s) = d · e_T`, where `T` is
/// [`capelli_tableau`] and `ρ` is [`capelli_relabeling`]; `None` when the two
/// are not proportional.
pub fn g_multilinearization_ratio(k: usize, s: usize) -> Result<Option<BigRational>> {
    let g = g_poly(k, s)?;
    let lin = multilinearize(&g, s)?;
    let rho = capelli_relabeling(k, s)?;
    let e = semi_idempotent(&capelli_tableau(k, s)?);
    Ok(lin.left_action(&rho).group_algebra().ratio_to(&e))
}

/// Outcome of the exhaustive bijection check for `L` with `s` alphabets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyLReport {
    pub k: usize,
    pub sets: usize,
    pub terms: usize,
    pub tuples: u64,
    /// Common absolute value of the scalar, when one exists.
    pub abs_scalar: Option<BigRational>,
    pub positive: u64,
    pub negative: u64,
    /// Every value is a nonzero scalar of the common absolute value.
    pub property_l: bool,
    /// Swapping two variables of one alphabet negates `L`.
    pub alternating: bool,
    pub proper_central: bool,
}

fn l_budget(k: usize, s: usize) -> Result<u64> {
    let per: u64 = (1..=(k * k) as u64).product();
    let tuples = per.checked_pow(s as u32).unwrap_or(u64::MAX);
    if tuples > CAPELLI_TERM_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "{tuples} bijection tuples for k={k}, s={s}"
        )));
    }
    Ok(tuples)
}

/// Evaluates `L` at every `s`-tuple of matrix-unit bijections.
///
/// Proper centrality follows from the two recorded facts: alternation makes
/// `L` vanish on any unit tuple repeating a unit inside one alphabet, so
/// the bijection tuples are the only ones left, and all of them give
/// nonzero scalars.
pub fn check_property_l(k: usize, s: usize) -> Result<PropertyLReport> {
    check_sets(s)?;
    let tuples = l_budget(k, s)?;
    let l = regev_polynomial(k, s)?;
    let kk = k * k;
    let alternating = (0..s).all(|a| {
        (1..kk).all(|i| {
            let x = alphabet_var(k, a, i);
            let y = alphabet_var(k, a, i + 1);
            let swapped = l.rename(|v| {
                if v == x {
                    y
                } else if v == y {
                    x
                } else {
                    v
                }
            });
            swapped == l.neg()
        })
    });
    let ev = UnitEvaluator::new(&l, k)?;
    let perms = Permutation::all(kk);
    let values: Vec<Option<i128>> = (0..tuples)
        .into_par_iter()
        .map(|idx| {
            let mut units = Vec::with_capacity(s * kk);
            let mut rest = idx;
            for _ in 0..s {
                let p = &perms[(rest % perms.len() as u64) as usize];
                rest /= perms.len() as u64;
                units.extend(p.zero_based().iter().map(|&u| u as usize));
            }
            let v = ev.eval_scaled(&units);
            scaled_is_scalar(&v, k).then_some(v[0])
        })
        .collect();
    let first = values.iter().flatten().next().map(|v| v.abs());
    let mut positive = 0;
    let mut negative = 0;
    let mut property_l = first.is_some_and(|c| c != 0);
    for v in &values {
        match v {
            Some(x) if Some(x.abs()) == first && *x != 0 => {
                if *x > 0 {
                    positive += 1;
                } else {
                    negative += 1;
                }
            }
            _ => property_l = false,
        }
    }
    let abs_scalar = first.map(|c| BigRational::new(BigInt::from(c), ev.denominator().clone()));
    Ok(PropertyLReport {
        k,
        sets: s,
        terms: l.len(),
        tuples,
        abs_scalar,
        positive,
        negative,
        property_l,
        alternating,
        proper_central: property_l && alternating,
    })
}

/// `g_s` at every bijection `x_u ↦ e_{i,j}`: the common absolute value when
/// all values are `±` one nonzero scalar.
pub fn check_property_g(k: usize, s: usize) -> Result<Option<BigRational>> {
    let g = g_poly(k, s)?;
    let ev = UnitEvaluator::new(&g, k)?;
    let mut common: Option<i128> = None;
    for b in MatrixUnitBijection::all(k) {
        let v = ev.eval_scaled(b.units());
        if !scaled_is_scalar(&v, k) || v[0] == 0 {
            return Ok(None);
        }
        match common {
            None => common = Some(v[0].abs()),
            Some(c) if c == v[0].abs() => {}
            Some(_) => return Ok(None),
        }
    }
    Ok(common.map(|c| BigRational::new(BigInt::from(c), ev.denominator().clone())))
}

/// The polynomial `e_T` of a tableau, as an element of `V_n`.
pub fn tableau_polynomial(t: &YoungTableau) -> NCPolynomial {
    MultilinearPolynomial::from_group_algebra(semi_idempotent(t)).to_nc()
}

/// `e_T(y)`: every entry of row `i` is replaced by `y_i` (variable `i`).
pub fn row_substituted(t: &YoungTableau) -> NCPolynomial {
    let row = t.row_of();
    tableau_polynomial(t).rename(|v| row[v as usize] as u32 + 1)
}

/// The `d` with `e_{T_λ|T_μ}(y) = d · e_{T_λ}(y) · e_{T_μ}(y)`, or `None`
/// when the two sides are not proportional.
pub fn gluing_constant(left: &YoungTableau, right: &YoungTableau) -> Result<Option<BigRational>> {
    let glued = glue_tableaux(left, right)?;
    let lhs = row_substituted(&glued);
    let rhs = row_substituted(left).mul(&row_substituted(right));
    Ok(nc_ratio(&lhs, &rhs))
}

/// `c` with `a = c·b`, for nonzero `b`.
pub fn nc_ratio(a: &NCPolynomial, b: &NCPolynomial) -> Option<BigRational> {
    let (w, cb) = b.terms().next()?;
    let c = a.coeff(w) / cb;
    (b.scale(&c) == *a).then_some(c)
}

/// The two shapes of the construction: `m` odd uses `g_3` once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionCase {
    /// `m = 2q + 3`.
    Odd,
    /// `m = 2q`.
    Even,
}

impl ConstructionCase {
    pub fn number(self) -> u8 {
        match self {
            ConstructionCase::Odd => 1,
            ConstructionCase::Even => 2,
        }
    }
}

/// `g_2^q · g_3^{[odd]} · h_r`, kept in factored form; see [`Self::expand`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPolynomial {
    pub k: usize,
    pub g2_power: usize,
    pub with_g3: bool,
    pub h_degree: usize,
}

impl WitnessPolynomial {
    pub fn expand(&self) -> Result<NCPolynomial> {
        let mut p = g_poly(self.k, 2)?.pow(self.g2_power);
        if self.with_g3 {
            p = p.mul(&g_poly(self.k, 3)?);
        }
        if self.h_degree > 0 {
            p = p.mul(&h_sym(self.h_degree));
        }
        Ok(p)
    }
}

impl fmt::Display for WitnessPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.g2_power {
            0 => {}
            1 => parts.push("g2".to_string()),
            q => parts.push(format!("g2^{q}")),
        }
        if self.with_g3 {
            parts.push("g3".into());
        }
        if self.h_degree > 0 {
            parts.push(format!("h({})", self.h_degree));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Output of [`lower_bound_construction`].
#[derive(Debug, Clone)]
pub struct LowerBound {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub q: usize,
    pub r: usize,
    pub case: ConstructionCase,
    /// `r = 0`: the rectangle polynomial is proper central and nothing
    /// remains to glue.
    pub already_done: bool,
    pub rectangle: Partition,
    pub lambda: Partition,
    pub tableau: YoungTableau,
    pub polynomial: WitnessPolynomial,
    pub witness: MatrixUnitBijection,
    pub g2_value: Option<BigRational>,
    pub g3_value: Option<BigRational>,
    pub h_value: RationalMatrix,
    pub value: RationalMatrix,
    pub non_central: bool,
    pub f_lambda: num_bigint::BigUint,
}

/// The shape, tableau and non-central witness for `n = k²m + r`, `n ≥ 2k²`.
///
/// The substitution is the lexicographically least injection of
/// `x_1, …, x_r` into the units (ordered `e_{1,1}, e_{1,2}, …`) making `h_r`
/// non-central, completed by the unused units in increasing order.
pub fn lower_bound_construction(n: usize, k: usize) -> Result<LowerBound> {
    let kk = k * k;
    if k < 2 || n < 2 * kk {
        return Err(Error::PreconditionViolated(format!(
            "need k >= 2 and n >= 2k^2, got n={n}, k={k}"
        )));
    }
    let (m, r) = (n / kk, n % kk);
    let (case, q) = if m % 2 == 1 {
        (ConstructionCase::Odd, (m - 3) / 2)
    } else {
        (ConstructionCase::Even, m / 2)
    };
    let with_g3 = case == ConstructionCase::Odd;

    let t2 = capelli_tableau(k, 2)?;
    let mut pieces: Vec<YoungTableau> = vec![t2; q];
    if with_g3 {
        pieces.push(capelli_tableau(k, 3)?);
    }
    if r > 0 {
        pieces.push(YoungTableau::row_reading(&Partition::row(r)));
    }
    let mut tableau = pieces[0].clone();
    for p in &pieces[1..] {
        tableau = glue_tableaux(&tableau, p)?;
    }
    let rectangle = Partition::rectangle(kk, m);
    let lambda = if r > 0 {
        glue_shapes(&rectangle, &Partition::row(r))?
    } else {
        rectangle.clone()
    };
    debug_assert_eq!(tableau.shape(), &lambda);

    let h = h_sym(r);
    let witness = if r == 0 {
        MatrixUnitBijection::new(k, (0..kk).collect())?
    } else {
        let ev = UnitEvaluator::new(&h, k)?;
        let inj = first_injection(kk, r, |units| !scaled_is_scalar(&ev.eval_scaled(units), k))
            .ok_or_else(|| Error::PreconditionViolated("no non-central injection".into()))?;
        let mut units = inj.clone();
        units.extend((0..kk).filter(|u| !inj.contains(u)));
        MatrixUnitBijection::new(k, units)?
    };

    let scalar_at = |p: &NCPolynomial| -> Result<BigRational> {
        let v = UnitEvaluator::new(p, k)?.eval(witness.units());
        v.scalar_value()
            .ok_or_else(|| Error::PreconditionViolated("rectangle factor not scalar".into()))
    };
    let g2_value = if q > 0 { Some(scalar_at(&g_poly(k, 2)?)?) } else { None };
    let g3_value = if with_g3 {
        Some(scalar_at(&g_poly(k, 3)?)?)
    } else {
        None
    };
    let h_value = if r > 0 {
        UnitEvaluator::new(&h, k)?.eval(witness.units())
    } else {
        RationalMatrix::identity(k)
    };
    let mut value = h_value.clone();
    for _ in 0..q {
        value = value.scale(g2_value.as_ref().expect("q > 0"));
    }
    if let Some(c) = &g3_value {
        value = value.scale(c);
    }
    let non_central = !value.is_scalar();
    let f_lambda = lambda.dimension();
    Ok(LowerBound {
        n,
        k,
        m,
        q,
        r,
        case,
        already_done: r == 0,
        rectangle,
        lambda,
        tableau,
        polynomial: WitnessPolynomial {
            k,
            g2_power: q,
            with_g3,
            h_degree: r,
        },
        witness,
        g2_value,
        g3_value,
        h_value,
        value,
        non_central,
        f_lambda,
    })
}

/// First injection `{1..r} → {0..units}` in lexicographic order passing
/// `accept`.
fn first_injection(units: usize, r: usize, accept: impl Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    fn rec(units: usize, r: usize, cur: &mut Vec<usize>, accept: &dyn Fn(&[usize]) -> bool) -> bool {
        if cur.len() == r {
            return accept(cur);
        }
        for u in 0..units {
            if cur.contains(&u) {
                continue;
            }
            cur.push(u);
            if rec(units, r, cur, accept) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::with_capacity(r);
    rec(units, r, &mut cur, &accept).then_some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{simple_commutator, standard_polynomial};

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }

    fn unit(i: usize, j: usize) -> RationalMatrix {
        RationalMatrix::unit(2, i, j).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let c = simple_commutator();
        let asg: BTreeMap<u32, RationalMatrix> = [(1, unit(1, 2)), (2, unit(2, 1))].into();
        assert_eq!(m_evaluate(&c, &asg).unwrap(), RationalMatrix::diagonal(&[q(1), q(-1)]));
        assert_eq!(m_evaluate(&c.mul(&c), &asg).unwrap(), RationalMatrix::identity(2));
        assert_eq!(
            m_evaluate(&NCPolynomial::one(), &asg).unwrap(),
            RationalMatrix::identity(2)
        );
        let bad: BTreeMap<u32, RationalMatrix> = [(1, unit(1, 2)), (2, RationalMatrix::identity(3))].into();
        assert!(matches!(m_evaluate(&c, &bad), Err(Error::SizeMismatch { .. })));
        let partial: BTreeMap<u32, RationalMatrix> = [(1, unit(1, 2))].into();
        assert_eq!(m_evaluate(&c, &partial), Err(Error::UnmappedVariable(2)));
    }

    #[test]
    fn scalar_examples() {
        assert!(RationalMatrix::identity(3).is_scalar());
        assert!(!unit(1, 2).is_scalar());
        assert!(RationalMatrix::zero(2).is_scalar());
    }

    #[test]
    fn trie_matches_direct_evaluation() {
        let p: NCPolynomial = "x1 x2 x1 - 1/2 x2 x2 + 3 + x1".parse().unwrap();
        let ev = UnitEvaluator::new(&p, 2).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                let asg: BTreeMap<u32, RationalMatrix> =
                    [(1, unit(a / 2 + 1, a % 2 + 1)), (2, unit(b / 2 + 1, b % 2 + 1))].into();
                assert_eq!(ev.eval(&[a, b]), m_evaluate(&p, &asg).unwrap());
            }
        }
    }

    #[test]
    fn identity_and_central_examples() {
        let st4 = MultilinearPolynomial::from_nc(&standard_polynomial(4), 4).unwrap();
        assert!(is_identity_mk(&st4, 2));
        let c = MultilinearPolynomial::from_nc(&simple_commutator(), 2).unwrap();
        assert!(!is_identity_mk(&c, 2));
        // [e12, e21] = e11 - e22
        assert!(!is_central_mk(&c, 2));
        let x12 = MultilinearPolynomial::from_nc(&"x1 x2".parse().unwrap(), 2).unwrap();
        assert!(!is_central_mk(&x12, 2));
        assert!(is_central_mk(&x12, 1));
        assert!(!is_identity_mk(&x12, 1));
        assert!(is_identity_mk(&c, 1));
        let sq = multilinearize(&simple_commutator().mul(&simple_commutator()), 2).unwrap();
        assert!(is_central_mk(&sq, 2));
    }

    #[test]
    fn capelli_monomial_examples() {
        assert_eq!(regev_monomial(1, 2).unwrap().letters(), &[1, 2]);
        assert_eq!(regev_monomial(2, 2).unwrap().letters(), &[1, 5, 2, 3, 4, 6, 7, 8]);
        assert_eq!(
            regev_monomial(2, 3).unwrap().letters(),
            &[1, 5, 9, 2, 3, 4, 6, 7, 8, 10, 11, 12]
        );
        assert_eq!(regev_monomial(2, 4), Err(Error::UnsupportedSetCount(4)));
        assert_eq!(capelli_tableau(2, 2).unwrap().to_string(), "1,2/3,6/4,7/5,8");
    }

    #[test]
    fn capelli_polynomial_sizes() {
        assert_eq!(regev_polynomial(1, 2).unwrap(), "x1 x2".parse().unwrap());
        assert_eq!(regev_polynomial(2, 2).unwrap().len(), 576);
        assert_eq!(g_poly(1, 2).unwrap(), "x1 x1".parse().unwrap());
        assert_eq!(g_poly(2, 2).unwrap().multihomogeneous_degree(), Some((4, 2)));
        assert!(matches!(regev_polynomial(3, 2), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn h_sym_on_diagonal() {
        let d = RationalMatrix::diagonal(&[q(1), q(2)]);
        let asg: BTreeMap<u32, RationalMatrix> = (1..=3).map(|i| (i, d.clone())).collect();
        let v = m_evaluate(&h_sym(3), &asg).unwrap();
        assert_eq!(v, RationalMatrix::diagonal(&[q(6), q(48)]));
        assert!(!v.is_scalar());
        assert_eq!(h_sym(2), "x1 x2 + x2 x1".parse().unwrap());
    }

    #[test]
    fn property_l_trivial_case() {
        let r = check_property_l(1, 2).unwrap();
        assert_eq!(r.abs_scalar, Some(q(1)));
        assert!(r.property_l && r.proper_central);
    }

    #[test]
    fn construction_shapes() {
        let b = lower_bound_construction(8, 2).unwrap();
        assert!(b.already_done);
        assert_eq!((b.case, b.q, b.r), (ConstructionCase::Even, 1, 0));
        assert_eq!(b.lambda.to_string(), "2,2,2,2");
        let b = lower_bound_construction(9, 2).unwrap();
        assert_eq!(b.lambda.to_string(), "3,2,2,2");
        assert!(b.non_central);
        let b = lower_bound_construction(15, 2).unwrap();
        assert_eq!((b.case, b.q, b.r), (ConstructionCase::Odd, 0, 3));
        assert_eq!(b.lambda.to_string(), "6,3,3,3");
        assert!(b.non_central);
        assert!(lower_bound_construction(7, 2).is_err());
    }
}

//! Codimensions and cocharacters of `G` and `M_k`.
//!
//! For an algebra `A` the kernel `K = V_n ∩ Id(A)` (or `Id^z(A)`) is cut out
//! by a family of linear functionals on `V_n = Q S_n`. Because `K` is stable
//! under renaming variables and the permutation basis is orthonormal for the
//! standard form, the row space `K^⊥` of those functionals is a submodule
//! isomorphic to `V_n / K`. Codimensions are its rank and characters are
//! traces on it.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::combinatorics::{character_value, standard_tableaux, CycleType, Partition, YoungTableau};
use crate::error::{Error, Result};
use crate::freealg::{simple_commutator, t_subalgebra_multilinear, triple_commutator, MultilinearPolynomial};
use crate::grassmann::{is_central_g, is_identity_g, parity_constraint_rows};
use crate::linalg::{int_row_from_i64, int_row_from_rational, IntRow, ReducedBasis, RowEchelon};
use crate::matalg::{is_central_mk, is_identity_mk, lower_bound_construction};
use crate::symgroup::{semi_idempotent, GroupAlgebraElement, Permutation};

/// Environment variable holding the default memory budget in GiB.
pub const BUDGET_ENV: &str = "CENTPOLY_BUDGET_GIB";

/// Which kernel: polynomial identities or central polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Central,
}

/// An algebra seen through its two families of functionals on `V_n`.
pub trait AlgebraOracle: Sync {
    fn name(&self) -> String;

    /// Rows whose common kernel is `V_n ∩ Id(A)` (`Plain`) or
    /// `V_n ∩ Id^z(A)` (`Central`), indexed by lexicographic rank.
    fn constraints(&self, n: usize, variant: Variant) -> Vec<IntRow>;

    fn is_identity(&self, h: &MultilinearPolynomial) -> bool;

    fn is_central(&self, h: &MultilinearPolynomial) -> bool;

    fn default_max_degree(&self) -> usize;

    /// Rough peak memory of one quotient computation, in bytes.
    fn estimated_bytes(&self, n: usize) -> f64;
}

/// The Grassmann algebra, via parity functionals.
#[derive(Debug, Clone, Copy, Default)]
pub struct GrassmannOracle;

impl AlgebraOracle for GrassmannOracle {
    fn name(&self) -> String {
        "G".into()
    }

    fn constraints(&self, n: usize, variant: Variant) -> Vec<IntRow> {
        parity_constraint_rows(n, variant == Variant::Central)
    }

    fn is_identity(&self, h: &MultilinearPolynomial) -> bool {
        is_identity_g(h)
    }

    fn is_central(&self, h: &MultilinearPolynomial) -> bool {
        is_central_g(h)
    }

    fn default_max_degree(&self) -> usize {
        8
    }

    fn estimated_bytes(&self, n: usize) -> f64 {
        // dense constraint rows plus the echelon basis, 24 bytes per entry
        let nf = factorial_f64(n);
        nf * 2f64.powi(n as i32) * 24.0 * 1.5
    }
}

/// `M_k(Q)`, via evaluation on matrix-unit tuples.
#[derive(Debug, Clone, Copy)]
pub struct MatrixOracle {
    pub k: usize,
}

impl AlgebraOracle for MatrixOracle {
    fn name(&self) -> String {
        format!("M{}", self.k)
    }

    fn constraints(&self, n: usize, variant: Variant) -> Vec<IntRow> {
        matrix_constraint_rows(self.k, n, variant == Variant::Central)
    }

    fn is_identity(&self, h: &MultilinearPolynomial) -> bool {
        is_identity_mk(h, self.k)
    }

    fn is_central(&self, h: &MultilinearPolynomial) -> bool {
        is_central_mk(h, self.k)
    }

    fn default_max_degree(&self) -> usize {
        if self.k <= 1 {
            8
        } else {
            6
        }
    }

    fn estimated_bytes(&self, n: usize) -> f64 {
        // at most min(tuples·k², n!) independent rows of length n!
        let nf = factorial_f64(n);
        let kk = (self.k * self.k) as f64;
        let tuples = kk.powi(n as i32);
        (tuples * kk).min(nf) * nf * 24.0 + tuples * n as f64 * 8.0
    }
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Degree and memory limits for quotient computations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    /// Overrides every oracle's default maximum degree.
    pub max_degree: Option<usize>,
    pub memory_gib: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_degree: None,
            memory_gib: 4.0,
        }
    }
}

impl Budget {
    /// Default limits with the memory cap read from [`BUDGET_ENV`] when set.
    pub fn from_env() -> Self {
        let mut b = Budget::default();
        if let Some(g) = std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse::<f64>().ok()) {
            b.memory_gib = g;
        }
        b
    }

    pub fn unlimited() -> Self {
        Budget {
            max_degree: Some(usize::MAX),
            memory_gib: f64::INFINITY,
        }
    }

    pub fn check(&self, oracle: &dyn AlgebraOracle, n: usize) -> Result<()> {
        let max = self.max_degree.unwrap_or_else(|| oracle.default_max_degree());
        if n > max {
            return Err(Error::BudgetExceeded(format!(
                "{} at n={n} exceeds the degree budget {max}",
                oracle.name()
            )));
        }
        let gib = oracle.estimated_bytes(n) / (1u64 << 30) as f64;
        if gib > self.memory_gib {
            return Err(Error::BudgetExceeded(format!(
                "{} at n={n} needs about {gib:.1} GiB, budget {} GiB",
                oracle.name(),
                self.memory_gib
            )));
        }
        Ok(())
    }
}

/// Rows for `M_k`: for every tuple of matrix units, the coordinates of
/// `Σ_σ c_σ x_{σ(1)}⋯x_{σ(n)}` as functionals of `c`. Central rows keep the
/// off-diagonal coordinates and the differences of diagonal ones.
pub fn matrix_constraint_rows(k: usize, n: usize, central: bool) -> Vec<IntRow> {
    let base = k * k;
    let total = (base as u64).pow(n as u32);
    let fact: Vec<u32> = (0..=n).map(|i| factorial_u64(i) as u32).collect();
    let mut seen: HashSet<Vec<(u32, i8)>> = HashSet::new();
    let mut rows = Vec::new();
    let mut buckets: Vec<Vec<u32>> = vec![Vec::new(); base];
    for idx in 0..total {
        let mut units = vec![0usize; n];
        let mut rest = idx;
        for u in units.iter_mut() {
            *u = (rest % base as u64) as usize;
            rest /= base as u64;
        }
        for b in buckets.iter_mut() {
            b.clear();
        }
        unit_products(k, &units, &fact, &mut buckets);
        let mut emit = |row: Vec<(u32, i8)>| {
            if !row.is_empty() && seen.insert(row.clone()) {
                rows.push(int_row_from_i64(row.into_iter().map(|(c, v)| (c as usize, v as i64))));
            }
        };
        for a in 0..k {
            for b in 0..k {
                let bucket = &buckets[a * k + b];
                if !central || a != b {
                    emit(bucket.iter().map(|&c| (c, 1)).collect());
                } else if a > 0 {
                    emit(merge_difference(bucket, &buckets[0]));
                }
            }
        }
    }
    rows
}

/// Sorted `bucket − other` as a signed indicator.
fn merge_difference(plus: &[u32], minus: &[u32]) -> Vec<(u32, i8)> {
    let mut out = Vec::with_capacity(plus.len() + minus.len());
    let (mut i, mut j) = (0, 0);
    while i < plus.len() || j < minus.len() {
        let a = plus.get(i).copied().unwrap_or(u32::MAX);
        let b = minus.get(j).copied().unwrap_or(u32::MAX);
        if a < b {
            out.push((a, 1));
            i += 1;
        } else if b < a {
            out.push((b, -1));
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    out
}

/// For every `σ` (in lexicographic order) with nonzero
/// `u_{σ(1)} ⋯ u_{σ(n)}`, pushes the rank of `σ` into the bucket of the
/// resulting unit.
fn unit_products(k: usize, units: &[usize], fact: &[u32], buckets: &mut [Vec<u32>]) {
    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        units: &[usize],
        fact: &[u32],
        used: u32,
        depth: usize,
        rank: u32,
        state: Option<(usize, usize)>,
        buckets: &mut [Vec<u32>],
    ) {
        let n = units.len();
        if depth == n {
            let (a, b) = state.unwrap_or((0, 0));
            buckets[a * k + b].push(rank);
            return;
        }
        let mut smaller = 0u32;
        for v in 0..n {
            if used & (1 << v) != 0 {
                continue;
            }
            let (c, d) = (units[v] / k, units[v] % k);
            let next = match state {
                None => Some((c, d)),
                Some((a, b)) if b == c => Some((a, d)),
                _ => {
                    smaller += 1;
                    continue;
                }
            };
            let r = rank + smaller * fact[n - 1 - depth];
            rec(k, units, fact, used | (1 << v), depth + 1, r, next, buckets);
            smaller += 1;
        }
    }
    if units.is_empty() {
        // the empty product is the identity: one entry per diagonal unit
        for a in 0..k {
            buckets[a * k + a].push(0);
        }
        return;
    }
    rec(k, units, fact, 0, 0, 0, None, buckets);
}

/// `V_n / K` realized as the row space of the constraints.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub n: usize,
    pub variant: Variant,
    basis: ReducedBasis,
}

/// Row space of the constraint family, in reduced form.
pub fn quotient(oracle: &dyn AlgebraOracle, n: usize, variant: Variant, budget: &Budget) -> Result<Quotient> {
    budget.check(oracle, n)?;
    let nf = factorial_u64(n) as usize;
    let mut ech = RowEchelon::new(nf);
    for row in oracle.constraints(n, variant) {
        ech.insert(row);
        if ech.rank() == nf {
            break;
        }
    }
    Ok(Quotient {
        n,
        variant,
        basis: ech.into_reduced(),
    })
}

impl Quotient {
    /// `c_n` or `c_n^z`.
    pub fn codimension(&self) -> u64 {
        self.basis.rank() as u64
    }

    /// `dim(V_n ∩ Id)` or `dim(V_n ∩ Id^z)`.
    pub fn kernel_dimension(&self) -> u64 {
        factorial_u64(self.n) - self.codimension()
    }

    pub fn basis(&self) -> &ReducedBasis {
        &self.basis
    }

    /// Basis rows as group-algebra elements.
    pub fn basis_elements(&self) -> Vec<GroupAlgebraElement> {
        let perms = Permutation::all(self.n);
        (0..self.basis.rank())
            .map(|i| {
                GroupAlgebraElement::from_terms(
                    self.n,
                    self.basis
                        .row(i)
                        .iter()
                        .map(|(c, v)| (perms[*c as usize].clone(), BigRational::from_integer(v.to_big()))),
                )
                .expect("degrees agree")
            })
            .collect()
    }

    /// Trace of `τ` acting on the row space by left multiplication.
    pub fn trace(&self, tau: &Permutation, perms: &[Permutation]) -> BigRational {
        let inv = tau.inverse();
        let mut acc = BigRational::zero();
        for i in 0..self.basis.rank() {
            let p = &perms[self.basis.pivot(i)];
            let col = inv.compose_unchecked(p).lex_rank();
            let v = self.basis.entry(i, col);
            if !v.is_zero() {
                acc += BigRational::new(v, self.basis.pivot_value(i));
            }
        }
        acc
    }

    /// Character of the quotient, as multiplicities of irreducibles.
    pub fn cocharacter(&self) -> Result<CocharacterDecomposition> {
        let n = self.n;
        let perms = Permutation::all(n);
        let classes: Vec<(CycleType, BigRational)> = Partition::all(n)
            .into_iter()
            .map(|p| {
                let c = CycleType::new(p);
                let t = self.trace(&Permutation::class_representative(&c), &perms);
                (c, t)
            })
            .collect();
        let nf = BigRational::from_integer(BigInt::from(factorial_u64(n)));
        let mut mult = BTreeMap::new();
        for lambda in Partition::all(n) {
            let mut s = BigRational::zero();
            for (c, t) in &classes {
                let chi = character_value(&lambda, c)?;
                let size = BigInt::from(c.class_size());
                s += t * BigRational::from_integer(size * chi);
            }
            let m = s / &nf;
            assert!(m.is_integer(), "non-integral multiplicity {m} for {lambda}");
            let m = m.to_integer();
            if m.is_negative() {
                return Err(Error::NegativeMultiplicity {
                    partition: lambda.to_string(),
                    multiplicity: m.to_i64().unwrap_or(i64::MIN),
                });
            }
            mult.insert(lambda, m.to_u64().expect("fits"));
        }
        let d = CocharacterDecomposition::new(n, mult);
        assert_eq!(
            d.dimension(),
            BigUint::from(self.codimension()),
            "character degree disagrees with rank"
        );
        Ok(d)
    }

    /// Multiplicity of `λ` as `dim(e_T · M)` for the row-reading tableau.
    pub fn multiplicity_by_projection(&self, lambda: &Partition) -> usize {
        let e = semi_idempotent(&YoungTableau::row_reading(lambda));
        let images: Vec<GroupAlgebraElement> = self
            .basis_elements()
            .iter()
            .map(|b| e.multiply(b).expect("degrees agree"))
            .collect();
        crate::symgroup::span_rank(self.n, &images)
    }

    /// `v ↦ (⟨row_i, v⟩)_i`; zero exactly on the kernel.
    pub fn functionals(&self, v: &GroupAlgebraElement) -> Vec<BigRational> {
        let sparse: BTreeMap<usize, BigRational> = v.to_sparse_vector().into_iter().collect();
        (0..self.basis.rank())
            .map(|i| {
                let mut acc = BigRational::zero();
                for (c, x) in self.basis.row(i) {
                    if let Some(y) = sparse.get(&(*c as usize)) {
                        acc += y * BigRational::from_integer(x.to_big());
                    }
                }
                acc
            })
            .collect()
    }
}

/// Multiplicities `m_λ` of an `S_n`-character `Σ m_λ χ^λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CocharacterDecomposition {
    n: usize,
    mult: BTreeMap<Partition, u64>,
}

impl CocharacterDecomposition {
    /// Zero multiplicities are dropped.
    pub fn new(n: usize, mult: BTreeMap<Partition, u64>) -> Self {
        let mult = mult.into_iter().filter(|(_, m)| *m > 0).collect();
        CocharacterDecomposition { n, mult }
    }

    /// Multiplicity one on every listed shape.
    pub fn indicator(n: usize, shapes: impl IntoIterator<Item = Partition>) -> Self {
        Self::new(n, shapes.into_iter().map(|p| (p, 1)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, lambda: &Partition) -> u64 {
        self.mult.get(lambda).copied().unwrap_or(0)
    }

    /// Nonzero entries, largest shape first.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, u64)> {
        self.mult.iter().rev().map(|(p, m)| (p, *m))
    }

    /// `Σ m_λ f^λ`.
    pub fn dimension(&self) -> BigUint {
        self.mult.iter().map(|(p, m)| p.dimension() * BigUint::from(*m)).sum()
    }

    /// Restriction to `S_{n-1}` by the branching rule.
    pub fn restrict(&self) -> Self {
        let mut out: BTreeMap<Partition, u64> = BTreeMap::new();
        for (p, m) in &self.mult {
            for q in p.branch_down() {
                *out.entry(q).or_default() += m;
            }
        }
        Self::new(self.n.saturating_sub(1), out)
    }

    /// `self − other`, failing on a negative entry.
    pub fn difference(&self, other: &Self) -> Result<Self> {
        let mut out = BTreeMap::new();
        let keys: std::collections::BTreeSet<&Partition> = self.mult.keys().chain(other.mult.keys()).collect();
        for p in keys {
            let d = self.get(p) as i64 - other.get(p) as i64;
            if d < 0 {
                return Err(Error::NegativeMultiplicity {
                    partition: p.to_string(),
                    multiplicity: d,
                });
            }
            out.insert(p.clone(), d as u64);
        }
        Ok(Self::new(self.n, out))
    }

    /// `m_λ ≤ other_λ` for every `λ`.
    pub fn is_dominated_by(&self, other: &Self) -> bool {
        self.mult.iter().all(|(p, m)| *m <= other.get(p))
    }
}

impl fmt::Display for CocharacterDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .iter()
            .map(|(p, m)| if m == 1 { format!("({p})") } else { format!("{m}*({p})") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `p/q`, or `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `dim(V_n ∩ Id(A)) = n! − c_n(A)`.
pub fn identity_dim(oracle: &dyn AlgebraOracle, n: usize, budget: &Budget) -> Result<u64> {
    Ok(quotient(oracle, n, Variant::Plain, budget)?.kernel_dimension())
}

/// `dim(V_n ∩ Id^z(A)) = n! − c_n^z(A)`.
pub fn central_dim(oracle: &dyn AlgebraOracle, n: usize, budget: &Budget) -> Result<u64> {
    Ok(quotient(oracle, n, Variant::Central, budget)?.kernel_dimension())
}

/// `c_n, c_n^z` and their difference `δ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Codimensions {
    pub n: usize,
    pub c: u64,
    pub cz: u64,
    pub delta: u64,
}

pub fn codimensions(oracle: &dyn AlgebraOracle, n: usize, budget: &Budget) -> Result<Codimensions> {
    let plain = quotient(oracle, n, Variant::Plain, budget)?;
    let central = quotient(oracle, n, Variant::Central, budget)?;
    Ok(codimensions_of(&plain, &central))
}

fn codimensions_of(plain: &Quotient, central: &Quotient) -> Codimensions {
    let (c, cz) = (plain.codimension(), central.codimension());
    assert!(cz <= c, "Id(A) ⊄ Id^z(A) at n={}", plain.n);
    let delta = c - cz;
    assert_eq!(delta, central.kernel_dimension() - plain.kernel_dimension());
    Codimensions {
        n: plain.n,
        c,
        cz,
        delta,
    }
}

/// `δ_n(A) = c_n(A) − c_n^z(A)`.
pub fn delta_n(oracle: &dyn AlgebraOracle, n: usize, budget: &Budget) -> Result<u64> {
    Ok(codimensions(oracle, n, budget)?.delta)
}

pub fn cocharacter(
    oracle: &dyn AlgebraOracle,
    n: usize,
    variant: Variant,
    budget: &Budget,
) -> Result<CocharacterDecomposition> {
    quotient(oracle, n, variant, budget)?.cocharacter()
}

/// Character of `D_n(A) = (V_n ∩ Id^z) / (V_n ∩ Id)`.
pub fn d_module_character(oracle: &dyn AlgebraOracle, n: usize, budget: &Budget) -> Result<CocharacterDecomposition> {
    let plain = cocharacter(oracle, n, Variant::Plain, budget)?;
    let central = cocharacter(oracle, n, Variant::Central, budget)?;
    plain.difference(&central)
}

/// Everything computed for `A` at one degree.
#[derive(Debug, Clone)]
pub struct DegreeAnalysis {
    pub codims: Codimensions,
    pub plain: CocharacterDecomposition,
    pub central: CocharacterDecomposition,
    pub d_module: CocharacterDecomposition,
}

pub fn analyze(oracle: &dyn AlgebraOracle, n: usize, budget: &Budget) -> Result<DegreeAnalysis> {
    let p = quotient(oracle, n, Variant::Plain, budget)?;
    let c = quotient(oracle, n, Variant::Central, budget)?;
    let codims = codimensions_of(&p, &c);
    let plain = p.cocharacter()?;
    let central = c.cocharacter()?;
    let d_module = plain.difference(&central)?;
    Ok(DegreeAnalysis {
        codims,
        plain,
        central,
        d_module,
    })
}

/// Hooks `(n − j, 1^j)` with `j` in the given parity class (`None` = all).
pub fn hooks(n: usize, leg_parity: Option<usize>) -> Vec<Partition> {
    if n == 0 {
        return Vec::new();
    }
    (0..n)
        .filter(|j| leg_parity.is_none_or(|p| j % 2 == p))
        .map(|j| Partition::hook(n, j).expect("leg < n"))
        .collect()
}

/// Restriction check for `G` at degree `n ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionReport {
    pub n: usize,
    pub codimension_match: bool,
    pub branching_match: bool,
    /// Solution `a_0, …, a_{n-1}` of the hook multiplicity system, when it
    /// has nonnegative entries.
    pub system_solution: Option<Vec<u64>>,
    pub system_match: bool,
}

impl RestrictionReport {
    pub fn holds(&self) -> bool {
        self.codimension_match && self.branching_match && self.system_match
    }
}

/// Compares `χ_n^z(G)↓` with `χ_{n-1}(G)` and re-derives the central hook
/// multiplicities from `a_0` and the restriction equations
/// `a_j + a_{j+1} = b_j` (multiplicity of `(n−1−j, 1^j)` in `χ_{n-1}(G)`).
pub fn restriction_report(n: usize, budget: &Budget) -> Result<RestrictionReport> {
    if n < 2 {
        return Err(Error::PreconditionViolated("restriction needs n >= 2".into()));
    }
    let g = GrassmannOracle;
    let central_q = quotient(&g, n, Variant::Central, budget)?;
    let plain_q = quotient(&g, n - 1, Variant::Plain, budget)?;
    let central = central_q.cocharacter()?;
    let plain = plain_q.cocharacter()?;
    let codimension_match = central_q.codimension() == plain_q.codimension();
    let branching_match = central.restrict() == plain;

    // a_0: the trivial module survives iff the full symmetrization is not central
    let sym = MultilinearPolynomial::from_nc(&crate::freealg::full_symmetrization(n), n)?;
    let a0: i64 = if is_central_g(&sym) { 0 } else { 1 };
    let mut a = vec![a0];
    for j in 0..n - 1 {
        let b = plain.get(&Partition::hook(n - 1, j)?) as i64;
        a.push(b - a[j]);
    }
    let system_solution = a
        .iter()
        .all(|&x| x >= 0)
        .then(|| a.iter().map(|&x| x as u64).collect::<Vec<_>>());
    let system_match = match &system_solution {
        Some(sol) => {
            let derived = CocharacterDecomposition::new(
                n,
                sol.iter()
                    .enumerate()
                    .map(|(j, &m)| (Partition::hook(n, j).expect("leg < n"), m))
                    .collect(),
            );
            derived == central
        }
        None => false,
    };
    Ok(RestrictionReport {
        n,
        codimension_match,
        branching_match,
        system_solution,
        system_match,
    })
}

pub fn verify_restriction_isomorphism(n: usize, budget: &Budget) -> Result<bool> {
    Ok(restriction_report(n, budget)?.holds())
}

/// Generation check for `V_n ∩ Id^z(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenerationReport {
    pub n: usize,
    pub spanning_set_size: usize,
    pub contained: bool,
    pub rank: u64,
    pub target: u64,
}

impl GenerationReport {
    pub fn holds(&self) -> bool {
        self.contained && self.rank == self.target
    }
}

/// Spans the multilinear part of the algebra generated by `T([[x,y],u])`
/// and the instances of `[x,y]`, checks every element is central on `G`,
/// then compares its rank with `n! − c_n^z(G)`.
pub fn t_generation_report(n: usize, budget: &Budget) -> Result<GenerationReport> {
    let g = GrassmannOracle;
    let target = central_dim(&g, n, budget)?;
    let set = t_subalgebra_multilinear(&[triple_commutator()], &[simple_commutator()], n)?;
    let contained = set.iter().all(is_central_g);
    let mut ech = RowEchelon::new(factorial_u64(n) as usize);
    if contained {
        for h in &set {
            if ech.rank() as u64 >= target {
                break;
            }
            ech.insert(int_row_from_rational(&h.group_algebra().to_sparse_vector()));
        }
    }
    Ok(GenerationReport {
        n,
        spanning_set_size: set.len(),
        contained,
        rank: ech.rank() as u64,
        target,
    })
}

pub fn verify_t_generation(n: usize, budget: &Budget) -> Result<bool> {
    Ok(t_generation_report(n, budget)?.holds())
}

/// Where the shape of a sandwich check came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeSource {
    Construction,
    Search,
}

/// `f^λ ≤ δ_n(M_k) ≤ c_n(M_k)`.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub n: usize,
    pub k: usize,
    pub lambda: Partition,
    pub tableau: YoungTableau,
    pub source: ShapeSource,
    pub f_lambda: BigUint,
    pub delta: u64,
    pub c_n: u64,
    pub cz_n: u64,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.f_lambda <= BigUint::from(self.delta) && self.delta <= self.c_n
    }
}

/// The largest `f^λ` with a standard tableau `T` of shape `λ` such that
/// `e_T` is not central on `M_k`; the row-reading tableau is tried first.
pub fn largest_noncentral_shape(n: usize, k: usize) -> Option<(Partition, YoungTableau)> {
    let mut shapes = Partition::all(n);
    shapes.sort_by_key(|p| std::cmp::Reverse(p.dimension()));
    shapes.into_iter().find_map(|p| {
        let row = YoungTableau::row_reading(&p);
        let others = standard_tableaux(&p).into_iter().filter(|t| *t != row);
        std::iter::once(row.clone()).chain(others).find_map(|t| {
            let e = MultilinearPolynomial::from_group_algebra(semi_idempotent(&t));
            (!is_central_mk(&e, k)).then(|| (p.clone(), t))
        })
    })
}

pub fn verify_sandwich(n: usize, k: usize, budget: &Budget) -> Result<SandwichReport> {
    let oracle = MatrixOracle { k };
    let codims = codimensions(&oracle, n, budget)?;
    let from_construction = if n >= 2 * k * k && k >= 2 {
        let lb = lower_bound_construction(n, k)?;
        (!lb.already_done && lb.non_central).then_some((lb.lambda, lb.tableau))
    } else {
        None
    };
    let (lambda, tableau, source) = match from_construction {
        Some((l, t)) => (l, t, ShapeSource::Construction),
        None => {
            let (l, t) = largest_noncentral_shape(n, k)
                .ok_or_else(|| Error::PreconditionViolated(format!("every e_T is central for M{k} at n={n}")))?;
            (l, t, ShapeSource::Search)
        }
    };
    let f_lambda = lambda.dimension();
    Ok(SandwichReport {
        n,
        k,
        lambda,
        tableau,
        source,
        f_lambda,
        delta: codims.delta,
        c_n: codims.c,
        cz_n: codims.cz,
    })
}

/// For `g = e_T`: `dim(Q S_n · g)` and the rank of the central functionals
/// on it. The two agree exactly when `Q S_n · g ∩ Id^z(A) = 0`.
pub fn central_intersection_ranks(
    oracle: &dyn AlgebraOracle,
    t: &YoungTableau,
    budget: &Budget,
) -> Result<(usize, usize)> {
    let n = t.size();
    let q = quotient(oracle, n, Variant::Central, budget)?;
    let e = semi_idempotent(t);
    let translates: Vec<GroupAlgebraElement> = Permutation::all(n).iter().map(|s| e.left_action(s)).collect();
    let dim = crate::symgroup::span_rank(n, &translates);
    let mut ech = RowEchelon::new(q.codimension() as usize);
    for v in &translates {
        let f = q.functionals(v);
        ech.insert_rational(
            &f.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect::<Vec<_>>(),
        );
    }
    Ok((dim, ech.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn grassmann_small_codimensions() {
        let b = Budget::default();
        assert_eq!(identity_dim(&GrassmannOracle, 3, &b).unwrap(), 2);
        assert_eq!(central_dim(&GrassmannOracle, 4, &b).unwrap(), 20);
        assert_eq!(central_dim(&GrassmannOracle, 2, &b).unwrap(), 1);
        assert_eq!(delta_n(&GrassmannOracle, 5, &b).unwrap(), 8);
        assert_eq!(identity_dim(&GrassmannOracle, 1, &b).unwrap(), 0);
        assert_eq!(delta_n(&GrassmannOracle, 1, &b).unwrap(), 0);
    }

    #[test]
    fn matrix_small_codimensions() {
        let b = Budget::default();
        let m2 = MatrixOracle { k: 2 };
        assert_eq!(identity_dim(&m2, 3, &b).unwrap(), 0);
        // no multilinear central polynomial of degree 2
        assert_eq!(central_dim(&m2, 2, &b).unwrap(), 0);
        assert_eq!(delta_n(&m2, 2, &b).unwrap(), 0);
        assert_eq!(delta_n(&m2, 4, &b).unwrap(), 2);
        assert_eq!(identity_dim(&m2, 1, &b).unwrap(), 0);
        assert!(matches!(identity_dim(&m2, 7, &b), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn cocharacter_examples() {
        let b = Budget::default();
        let g = GrassmannOracle;
        assert_eq!(
            cocharacter(&g, 5, Variant::Plain, &b).unwrap(),
            CocharacterDecomposition::indicator(5, hooks(5, None))
        );
        assert_eq!(
            cocharacter(&g, 5, Variant::Central, &b).unwrap(),
            CocharacterDecomposition::indicator(5, [p("5"), p("3,1,1"), p("1,1,1,1,1")])
        );
        let one = CocharacterDecomposition::indicator(1, [p("1")]);
        assert_eq!(cocharacter(&g, 1, Variant::Plain, &b).unwrap(), one);
        assert_eq!(cocharacter(&MatrixOracle { k: 2 }, 1, Variant::Plain, &b).unwrap(), one);
        assert_eq!(
            d_module_character(&g, 5, &b).unwrap(),
            CocharacterDecomposition::indicator(5, [p("4,1"), p("2,1,1,1")])
        );
        assert_eq!(
            d_module_character(&g, 2, &b).unwrap(),
            CocharacterDecomposition::indicator(2, [p("1,1")])
        );
        assert_eq!(
            d_module_character(&MatrixOracle { k: 2 }, 2, &b).unwrap(),
            CocharacterDecomposition::new(2, BTreeMap::new())
        );
    }

    #[test]
    fn row_space_is_a_submodule() {
        for (oracle, n) in [(&GrassmannOracle as &dyn AlgebraOracle, 4), (&MatrixOracle { k: 2 }, 4)] {
            for variant in [Variant::Plain, Variant::Central] {
                let q = quotient(oracle, n, variant, &Budget::default()).unwrap();
                let mut ech = RowEchelon::new(24);
                let elems = q.basis_elements();
                for e in &elems {
                    ech.insert_rational(&e.to_sparse_vector());
                }
                for s in Permutation::all(n) {
                    for e in &elems {
                        assert!(ech.contains(int_row_from_rational(&e.left_action(&s).to_sparse_vector())));
                    }
                }
            }
        }
    }

    #[test]
    fn projection_cross_check() {
        let q = quotient(&MatrixOracle { k: 2 }, 4, Variant::Central, &Budget::default()).unwrap();
        let d = q.cocharacter().unwrap();
        for lambda in Partition::all(4) {
            assert_eq!(q.multiplicity_by_projection(&lambda) as u64, d.get(&lambda), "{lambda}");
        }
    }

    #[test]
    fn restriction_small() {
        let b = Budget::default();
        for n in 2..=4 {
            let r = restriction_report(n, &b).unwrap();
            assert!(r.holds(), "{r:?}");
        }
    }

    #[test]
    fn generation_small() {
        let b = Budget::default();
        let r = t_generation_report(2, &b).unwrap();
        assert!(r.holds() && r.rank == 1);
        let r = t_generation_report(1, &b).unwrap();
        assert!(r.holds() && r.rank == 0 && r.spanning_set_size == 0);
        let r = t_generation_report(4, &b).unwrap();
        assert!(r.holds() && r.rank == 20);
    }

    #[test]
    fn sandwich_small() {
        let r = verify_sandwich(2, 2, &Budget::default()).unwrap();
        assert_eq!((r.f_lambda.clone(), r.delta, r.c_n), (BigUint::from(1u8), 0, 2));
        assert!(!r.holds());
        assert!(r.f_lambda <= BigUint::from(r.cz_n));
        let r = verify_sandwich(5, 2, &Budget::default()).unwrap();
        assert!(r.holds());
    }
}

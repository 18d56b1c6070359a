//! Exact row-echelon forms over the rationals.
//!
//! Rows are kept as primitive integer vectors (content divided out, leading
//! entry positive). Reduction is fraction-free: eliminating the leading entry
//! `v` of a row against a pivot row with leading entry `p` replaces the row by
//! `(p/g)·row − (v/g)·pivot` with `g = gcd(p, v)`. Entries live in machine
//! words until a product overflows, at which point that entry is promoted to
//! a big integer.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact integer: a machine word while it fits, a big integer otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    fn neg(&self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }

    /// `a·x − b·y`.
    fn mul_sub(a: &Int, x: &Int, b: &Int, y: &Int) -> Int {
        if let (Int::Small(a), Int::Small(x), Int::Small(b), Int::Small(y)) = (a, x, b, y) {
            let r = (*a as i128) * (*x as i128) - (*b as i128) * (*y as i128);
            if let Ok(v) = i64::try_from(r) {
                return Int::Small(v);
            }
            return Int::from_big(BigInt::from(r));
        }
        Int::from_big(a.to_big() * x.to_big() - b.to_big() * y.to_big())
    }

    fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => {
                let g = (*a as i128).gcd(&(*b as i128));
                Int::from_big(BigInt::from(g))
            }
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    fn div_exact(&self, d: &Int) -> Int {
        match (self, d) {
            (Int::Small(a), Int::Small(b)) if *b != -1 || *a != i64::MIN => Int::Small(a / b),
            _ => Int::from_big(self.to_big() / d.to_big()),
        }
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int::from_big(v.clone())
    }
}

/// A sparse integer row: `(column, value)` pairs, strictly increasing
/// columns, no stored zeros.
pub type IntRow = Vec<(u32, Int)>;

/// Clears denominators of a sparse rational row.
pub fn int_row_from_rational(entries: &[(usize, BigRational)]) -> IntRow {
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    let mut row: IntRow = entries
        .iter()
        .filter(|(_, q)| !q.is_zero())
        .map(|(c, q)| (*c as u32, Int::from_big(q.numer() * (&lcm / q.denom()))))
        .collect();
    row.sort_by_key(|(c, _)| *c);
    row
}

/// Builds a sparse row from machine integers, summing repeated columns.
pub fn int_row_from_i64(entries: impl IntoIterator<Item = (usize, i64)>) -> IntRow {
    let mut e: Vec<(usize, i64)> = entries.into_iter().collect();
    e.sort_by_key(|(c, _)| *c);
    let mut row: IntRow = Vec::with_capacity(e.len());
    for (c, v) in e {
        match row.last_mut() {
            Some((lc, Int::Small(lv))) if *lc as usize == c => *lv += v,
            _ => row.push((c as u32, Int::Small(v))),
        }
    }
    row.retain(|(_, v)| !v.is_zero());
    row
}

/// Divides out the content and makes the leading entry positive.
fn normalize(row: &mut IntRow) {
    let Some((_, lead)) = row.first() else { return };
    let negate = lead.is_negative();
    let mut g = Int::Small(0);
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_unit() {
            break;
        }
    }
    if negate {
        g = g.neg();
    }
    if !(matches!(g, Int::Small(1))) {
        for (_, v) in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

/// `a·row − b·pivot`, merged sparsely.
fn combine(a: &Int, row: &[(u32, Int)], b: &Int, pivot: &[(u32, Int)]) -> IntRow {
    let zero = Int::Small(0);
    let mut out = Vec::with_capacity(row.len().max(pivot.len()));
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(u32::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(u32::MAX);
        let (c, v) = match ci.cmp(&cj) {
            Ordering::Less => {
                i += 1;
                (ci, Int::mul_sub(a, &row[i - 1].1, b, &zero))
            }
            Ordering::Greater => {
                j += 1;
                (cj, Int::mul_sub(a, &zero, b, &pivot[j - 1].1))
            }
            Ordering::Equal => {
                i += 1;
                j += 1;
                (ci, Int::mul_sub(a, &row[i - 1].1, b, &pivot[j - 1].1))
            }
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Eliminates column entry `v` of `row` using a pivot row whose entry at the
/// same column is `p`.
fn eliminate(row: &[(u32, Int)], v: &Int, pivot: &[(u32, Int)], p: &Int) -> IntRow {
    let g = v.gcd(p);
    let a = p.div_exact(&g);
    let b = v.div_exact(&g);
    let mut out = combine(&a, row, &b, pivot);
    normalize(&mut out);
    out
}

/// An incrementally built row-echelon basis of a subspace of `Q^ncols`.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    ncols: usize,
    rows: Vec<IntRow>,
    pivot_row: Vec<Option<u32>>,
}

impl RowEchelon {
    pub fn new(ncols: usize) -> Self {
        RowEchelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        normalize(&mut row);
        while let Some((c, v)) = row.first() {
            let Some(i) = self.pivot_row[*c as usize] else { break };
            let pivot = &self.rows[i as usize];
            row = eliminate(&row, v, pivot, &pivot[0].1);
        }
        row
    }

    /// Adds a row; returns `true` when the rank grew.
    pub fn insert(&mut self, row: IntRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| (*c as usize) < self.ncols));
        let row = self.reduce(row);
        match row.first() {
            None => false,
            Some((c, _)) => {
                self.pivot_row[*c as usize] = Some(self.rows.len() as u32);
                self.rows.push(row);
                true
            }
        }
    }

    pub fn insert_rational(&mut self, entries: &[(usize, BigRational)]) -> bool {
        self.insert(int_row_from_rational(entries))
    }

    /// `true` when the row lies in the current span.
    pub fn contains(&self, row: IntRow) -> bool {
        self.reduce(row).is_empty()
    }

    /// Back-substitutes to the reduced form.
    pub fn into_reduced(self) -> ReducedBasis {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        let pivots: Vec<u32> = rows.iter().map(|r| r[0].0).collect();
        let mut pivot_index = vec![None; self.ncols];
        for (i, &p) in pivots.iter().enumerate() {
            pivot_index[p as usize] = Some(i);
        }
        for i in (0..rows.len()).rev() {
            loop {
                // first non-leading entry sitting in another row's pivot column
                let hit = rows[i][1..]
                    .iter()
                    .find_map(|(c, v)| pivot_index[*c as usize].map(|j| (j, v.clone())));
                let Some((j, v)) = hit else { break };
                let p = rows[j][0].1.clone();
                let reduced = eliminate(&rows[i], &v, &rows[j], &p);
                rows[i] = reduced;
            }
        }
        ReducedBasis {
            ncols: self.ncols,
            rows,
        }
    }
}

/// A reduced echelon basis: row `i` has pivot column `P_i` with positive
/// value `d_i`, and every other row is zero at `P_i`. The coordinate of a
/// vector `v` of the span along row `i` is therefore `v[P_i] / d_i`.
#[derive(Debug, Clone)]
pub struct ReducedBasis {
    ncols: usize,
    rows: Vec<IntRow>,
}

impl ReducedBasis {
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot(&self, i: usize) -> usize {
        self.rows[i][0].0 as usize
    }

    pub fn pivot_value(&self, i: usize) -> BigInt {
        self.rows[i][0].1.to_big()
    }

    pub fn row(&self, i: usize) -> &[(u32, Int)] {
        &self.rows[i]
    }

    /// Entry `(i, col)`, zero when not stored.
    pub fn entry(&self, i: usize, col: usize) -> BigInt {
        let row = &self.rows[i];
        match row.binary_search_by_key(&(col as u32), |(c, _)| *c) {
            Ok(k) => row[k].1.to_big(),
            Err(_) => BigInt::zero(),
        }
    }
}

/// Rank of a family of integer rows.
pub fn rank(ncols: usize, rows: impl IntoIterator<Item = IntRow>) -> usize {
    let mut e = RowEchelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> IntRow {
        int_row_from_i64(v.iter().enumerate().map(|(c, &x)| (c, x)))
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(3, vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 0, 0])]), 1);
        assert_eq!(rank(3, vec![row(&[1, 2, 3]), row(&[4, 5, 6]), row(&[7, 8, 9])]), 2);
        assert_eq!(rank(3, vec![row(&[2, 0, 0]), row(&[0, 3, 0]), row(&[0, 0, 5])]), 3);
        assert_eq!(rank(3, Vec::<IntRow>::new()), 0);
    }

    #[test]
    fn promotes_on_overflow() {
        let big = i64::MAX / 3;
        let rows = vec![row(&[big, 1, 0]), row(&[big - 1, 0, 1]), row(&[1, big, big])];
        // det = big*(0 - big) - 1*((big-1)*big - 1) ≠ 0
        assert_eq!(rank(3, rows), 3);
        let rows = vec![row(&[big, big - 1]), row(&[2 * (big / 2), 2 * ((big - 1) / 2)])];
        assert!(rank(2, rows) >= 1);
    }

    #[test]
    fn reduced_basis_has_unit_columns() {
        let mut e = RowEchelon::new(4);
        e.insert(row(&[1, 1, 1, 1]));
        e.insert(row(&[0, 2, 1, 3]));
        e.insert(row(&[3, 0, 1, 7]));
        let rb = e.into_reduced();
        for i in 0..rb.rank() {
            for j in 0..rb.rank() {
                let v = rb.entry(i, rb.pivot(j));
                if i == j {
                    assert!(v.is_positive());
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }

    #[test]
    fn span_membership() {
        let mut e = RowEchelon::new(3);
        e.insert(row(&[1, 0, 1]));
        e.insert(row(&[0, 1, 1]));
        assert!(e.contains(row(&[2, 3, 5])));
        assert!(!e.contains(row(&[0, 0, 1])));
        let half = BigRational::new(1.into(), 2.into());
        assert!(!e.insert_rational(&[(0, half.clone()), (2, half)]));
    }
}

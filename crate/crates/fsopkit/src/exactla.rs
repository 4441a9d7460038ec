//! Exact rational linear algebra and chain-complex homology.
//!
//! Matrices are sparse, stored row by row with entries in ascending column
//! order. Ranks come from fraction-free elimination on primitive integer rows.
//! Kernels and linear solves use the reduced row echelon form, whose pivot
//! set and entries depend only on the matrix, so kernel bases are canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"` or `"n/d"` (optional sign on the numerator).
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Invalid(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = n.parse().map_err(|_| bad())?;
    let den: BigInt = d.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(num, den))
}

/// Formats as `"n"` for integers and `"n/d"` otherwise.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sparse matrix over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rat>>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                write!(f, " ({i},{j})={}", format_rat(v))?;
            }
        }
        write!(f, " ]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].insert(i, Rat::one());
        }
        m
    }

    /// Builds from dense rows; every row must have length `cols`.
    pub fn from_dense(rows: usize, cols: usize, dense: &[Vec<Rat>]) -> Result<Self> {
        if dense.len() != rows || dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape(format!("dense data is not {rows}x{cols}")));
        }
        let mut m = Self::zeros(rows, cols);
        for (i, row) in dense.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    m.data[i].insert(j, v.clone());
                }
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        let d: Vec<Vec<Rat>> = dense
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        Self::from_dense(rows, cols, &d).expect("ragged integer matrix")
    }

    /// Builds from (row, col, value) triples, summing duplicates.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rat)>,
    {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in entries {
            if i >= rows || j >= cols {
                return Err(Error::Shape(format!(
                    "entry ({i},{j}) outside {rows}x{cols}"
                )));
            }
            m.add_to(i, j, &v);
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.data[i].get(&j).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: &Rat) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            return;
        }
        let e = self.data[i].entry(j).or_insert_with(Rat::zero);
        *e += v;
        if e.is_zero() {
            self.data[i].remove(&j);
        }
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, Rat> {
        &self.data[i]
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(&j, v)| (i, j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_empty())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self
                .data
                .iter()
                .enumerate()
                .all(|(i, r)| r.len() == 1 && r.get(&i).is_some_and(|v| v.is_one()))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.entries() {
            t.data[j].insert(i, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let acc = &mut out.data[i];
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let e = acc.entry(*j).or_insert_with(Rat::zero);
                    *e += a * b;
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        Ok(out)
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape("cannot add matrices of different shapes".into()));
        }
        let mut out = self.clone();
        for (i, j, v) in other.entries() {
            out.add_to(i, j, v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let mut out = self.clone();
        for row in &mut out.data {
            for v in row.values_mut() {
                *v *= c;
            }
        }
        out
    }

    /// Applies the matrix to a dense vector.
    pub fn apply(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut s = Rat::zero();
                for (j, a) in row {
                    if !v[*j].is_zero() {
                        s += a * &v[*j];
                    }
                }
                s
            })
            .collect()
    }

    /// Nonzero entries `(row, value)` of column `j`, by increasing row.
    pub fn column_entries(&self, j: usize) -> Vec<(usize, &Rat)> {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.get(&j).map(|v| (i, v)))
            .collect()
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<Rat> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Kronecker product `self ⊗ other` with row index `i*other.rows + k`.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let mut out = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for (i, j, a) in self.entries() {
            for (k, l, b) in other.entries() {
                out.data[i * other.rows + k].insert(j * other.cols + l, a * b);
            }
        }
        out
    }

    /// Block-diagonal / general block placement helper: copies `block` with
    /// its top-left corner at `(r0, c0)`, scaled by `sign`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &RatMatrix, sign: &Rat) {
        for (i, j, v) in block.entries() {
            self.add_to(r0 + i, c0 + j, &(v * sign));
        }
    }

    /// Multiplies row `i` by a nonzero scalar (used in property tests).
    pub fn scale_row(&mut self, i: usize, c: &Rat) {
        assert!(!c.is_zero());
        for v in self.data[i].values_mut() {
            *v *= c;
        }
    }
}

// ---------------------------------------------------------------------------
// Rank by fraction-free elimination.

type IntRow = Vec<(usize, BigInt)>;

fn primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in &mut row {
            *v /= &g;
        }
    }
    row
}

fn integer_row(row: &BTreeMap<usize, Rat>) -> IntRow {
    let mut l = BigInt::one();
    for v in row.values() {
        l = l.lcm(v.denom());
    }
    primitive(
        row.iter()
            .map(|(&j, v)| (j, v.numer() * (&l / v.denom())))
            .collect(),
    )
}

/// `b*r - a*p` where `a`, `b` are the leading entries (sharing a column).
fn cancel_lead(r: &IntRow, p: &IntRow) -> IntRow {
    let a = &r[0].1;
    let b = &p[0].1;
    let g = a.gcd(b);
    let fa = a / &g;
    let fb = b / &g;
    let mut out = Vec::with_capacity(r.len() + p.len());
    let (mut i, mut k) = (1, 1);
    while i < r.len() || k < p.len() {
        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
        let ck = p.get(k).map_or(usize::MAX, |e| e.0);
        if ci < ck {
            out.push((ci, &fb * &r[i].1));
            i += 1;
        } else if ck < ci {
            out.push((ck, -(&fa * &p[k].1)));
            k += 1;
        } else {
            let v = &fb * &r[i].1 - &fa * &p[k].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            k += 1;
        }
    }
    primitive(out)
}

/// Rank over ℚ. Rows are taken in increasing index order; each row is
/// reduced against the pivot rows found so far (fraction-free, keeping
/// rows primitive) and becomes a new pivot at its smallest surviving column.
pub fn rank(m: &RatMatrix) -> usize {
    let mut pivots: BTreeMap<usize, IntRow> = BTreeMap::new();
    for row in &m.data {
        if row.is_empty() {
            continue;
        }
        let mut r = integer_row(row);
        while let Some(&(c, _)) = r.first() {
            match pivots.get(&c) {
                Some(p) => r = cancel_lead(&r, p),
                None => {
                    pivots.insert(c, r);
                    break;
                }
            }
        }
    }
    pivots.len()
}

// ---------------------------------------------------------------------------
// Rank modulo a prime (lower bound for the rational rank).

const PRIME: u64 = (1u64 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn reduce_bigint(v: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = v.mod_floor(&p);
    r.to_u64().expect("residue fits in u64")
}

fn rat_mod(v: &Rat) -> Option<u64> {
    let d = reduce_bigint(v.denom());
    if d == 0 {
        return None;
    }
    Some(mulmod(reduce_bigint(v.numer()), powmod(d, PRIME - 2)))
}

/// Rank of the matrix reduced modulo a fixed 61-bit prime. Always a lower
/// bound for the rational rank; returns `None` if a denominator vanishes
/// modulo the prime.
pub fn rank_mod_prime(m: &RatMatrix) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for row in &m.data {
        let mut r: Vec<(usize, u64)> = Vec::with_capacity(row.len());
        for (&j, v) in row {
            let x = rat_mod(v)?;
            if x != 0 {
                r.push((j, x));
            }
        }
        while let Some(&(c, lead)) = r.first() {
            match pivots.get(&c) {
                Some(p) => {
                    // p has leading coefficient 1.
                    let f = lead;
                    let mut out = Vec::with_capacity(r.len() + p.len());
                    let (mut i, mut k) = (1, 1);
                    while i < r.len() || k < p.len() {
                        let ci = r.get(i).map_or(usize::MAX, |e| e.0);
                        let ck = p.get(k).map_or(usize::MAX, |e| e.0);
                        if ci < ck {
                            out.push(r[i]);
                            i += 1;
                        } else {
                            let sub = mulmod(f, p[k].1);
                            let base = if ci == ck {
                                i += 1;
                                r[i - 1].1
                            } else {
                                0
                            };
                            let v = (base + PRIME - sub) % PRIME;
                            if v != 0 {
                                out.push((ck, v));
                            }
                            k += 1;
                        }
                    }
                    r = out;
                }
                None => {
                    let inv = powmod(lead, PRIME - 2);
                    for e in &mut r {
                        e.1 = mulmod(e.1, inv);
                    }
                    pivots.insert(c, r);
                    break;
                }
            }
        }
    }
    Some(pivots.len())
}

// ---------------------------------------------------------------------------
// Reduced row echelon form.

/// Reduced row echelon form of a matrix: `rows[i]` has a 1 at `pivots[i]`,
/// zeros at every other pivot column, and pivots increase with `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub cols: usize,
    pub rows: Vec<BTreeMap<usize, Rat>>,
    pub pivots: Vec<usize>,
}

fn axpy(target: &mut BTreeMap<usize, Rat>, f: &Rat, src: &BTreeMap<usize, Rat>) {
    for (j, v) in src {
        let e = target.entry(*j).or_insert_with(Rat::zero);
        *e -= f * v;
        if e.is_zero() {
            target.remove(j);
        }
    }
}

impl Rref {
    /// Computes the RREF of the row space of `m`.
    pub fn of(m: &RatMatrix) -> Rref {
        Self::from_rows(m.cols, m.data.iter().cloned())
    }

    /// Computes the RREF of the span of the given sparse rows.
    pub fn from_rows<I>(cols: usize, rows: I) -> Rref
    where
        I: IntoIterator<Item = BTreeMap<usize, Rat>>,
    {
        let mut echelon: BTreeMap<usize, BTreeMap<usize, Rat>> = BTreeMap::new();
        for mut r in rows {
            while let Some((&c, lead)) = r.iter().next() {
                match echelon.get(&c) {
                    Some(p) => {
                        let f = lead.clone();
                        axpy(&mut r, &f, p);
                    }
                    None => {
                        let inv = lead.recip();
                        for v in r.values_mut() {
                            *v *= &inv;
                        }
                        echelon.insert(c, r);
                        break;
                    }
                }
            }
        }
        // Back substitution, from the last pivot to the first.
        let pivots: Vec<usize> = echelon.keys().copied().collect();
        for idx in (0..pivots.len()).rev() {
            let pc = pivots[idx];
            let prow = echelon[&pc].clone();
            for &qc in &pivots[..idx] {
                let row = echelon.get_mut(&qc).expect("pivot row");
                if let Some(f) = row.get(&pc).cloned() {
                    axpy(row, &f, &prow);
                }
            }
        }
        Rref {
            cols,
            pivots,
            rows: echelon.into_values().collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces a vector modulo the row space; the result has zeros at all
    /// pivot columns.
    pub fn reduce(&self, v: &mut BTreeMap<usize, Rat>) {
        for (i, &pc) in self.pivots.iter().enumerate() {
            if let Some(f) = v.get(&pc).cloned() {
                axpy(v, &f, &self.rows[i]);
            }
        }
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&j| !is_pivot[j]).collect()
    }
}

/// Basis of the null space, one column per free variable in increasing
/// order, with a 1 in the free position and zeros at the other free positions.
pub fn kernel_basis(m: &RatMatrix) -> RatMatrix {
    let rref = Rref::of(m);
    let free = rref.free_columns();
    let mut k = RatMatrix::zeros(m.cols, free.len());
    for (c, &f) in free.iter().enumerate() {
        k.data[f].insert(c, Rat::one());
        for (i, &pc) in rref.pivots.iter().enumerate() {
            if let Some(v) = rref.rows[i].get(&f) {
                k.data[pc].insert(c, -v);
            }
        }
    }
    k
}

/// Finds `X` with `A·X = B`, or `None` if the system is inconsistent. Free
/// variables are set to zero, so the answer is unique when `A` has full
/// column rank.
pub fn solve(a: &RatMatrix, b: &RatMatrix) -> Result<Option<RatMatrix>> {
    if a.rows != b.rows {
        return Err(Error::Shape(format!(
            "solve: A has {} rows, B has {}",
            a.rows, b.rows
        )));
    }
    let n = a.cols;
    let aug = (0..a.rows).map(|i| {
        let mut r = a.data[i].clone();
        for (j, v) in &b.data[i] {
            r.insert(n + j, v.clone());
        }
        r
    });
    let rref = Rref::from_rows(n + b.cols, aug);
    let mut x = RatMatrix::zeros(n, b.cols);
    for (i, &pc) in rref.pivots.iter().enumerate() {
        if pc >= n {
            return Ok(None);
        }
        for (j, v) in rref.rows[i].range(n..) {
            x.data[pc].insert(j - n, v.clone());
        }
    }
    Ok(Some(x))
}

// ---------------------------------------------------------------------------
// Chain complexes.

/// Graded vector spaces `C_0, C_1, …` with boundary maps `∂_s : C_s → C_{s-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalChainComplex {
    dims: Vec<usize>,
    /// `maps[s-1]` is `∂_s`, of shape `dims[s-1] × dims[s]`.
    maps: Vec<RatMatrix>,
}

impl RationalChainComplex {
    /// Validates shapes and that every composite `∂_{s-1}∘∂_s` vanishes.
    pub fn new(dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self> {
        if dims.is_empty() {
            if maps.is_empty() {
                return Ok(RationalChainComplex { dims, maps });
            }
            return Err(Error::Shape("boundaries given for an empty complex".into()));
        }
        if maps.len() + 1 != dims.len() {
            return Err(Error::Shape(format!(
                "{} degrees need {} boundary maps, got {}",
                dims.len(),
                dims.len() - 1,
                maps.len()
            )));
        }
        for (s, m) in maps.iter().enumerate() {
            if m.nrows() != dims[s] || m.ncols() != dims[s + 1] {
                return Err(Error::Shape(format!(
                    "boundary at degree {} is {}x{}, expected {}x{}",
                    s + 1,
                    m.nrows(),
                    m.ncols(),
                    dims[s],
                    dims[s + 1]
                )));
            }
        }
        for s in 1..maps.len() {
            if !maps[s - 1].mul(&maps[s])?.is_zero() {
                return Err(Error::NotAComplex { degree: s + 1 });
            }
        }
        Ok(RationalChainComplex { dims, maps })
    }

    /// A single space in degree 0.
    pub fn concentrated(dim: usize) -> Self {
        RationalChainComplex {
            dims: vec![dim],
            maps: vec![],
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `∂_s` for `1 ≤ s < len`.
    pub fn boundary(&self, s: usize) -> Option<&RatMatrix> {
        if s == 0 {
            None
        } else {
            self.maps.get(s - 1)
        }
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    fn ranks(&self) -> Vec<usize> {
        // ranks[s] = rank ∂_s, with ranks[0] = ranks[len] = 0.
        let mut r = vec![0; self.dims.len() + 1];
        for (s, m) in self.maps.iter().enumerate() {
            r[s + 1] = rank(m);
        }
        r
    }

    pub fn homology_dims(&self) -> Vec<usize> {
        let r = self.ranks();
        (0..self.dims.len())
            .map(|s| self.dims[s] - r[s] - r[s + 1])
            .collect()
    }

    /// True iff `H_s = 0` for every `s` in `degrees` (degrees outside the
    /// complex are zero and count as exact).
    pub fn is_exact_in(&self, degrees: std::ops::Range<usize>) -> bool {
        if self.dims.is_empty() {
            return true;
        }
        let top = self.dims.len();
        let lo = degrees.start.min(top);
        let hi = degrees.end.min(top);
        if lo >= hi {
            return true;
        }
        // Modular ranks are lower bounds for rational ranks, and the rational
        // ranks of consecutive maps sum to at most dims[s]. So equality with
        // modular ranks certifies vanishing; otherwise recompute exactly.
        let mut modr: Vec<Option<usize>> = vec![Some(0); top + 1];
        for s in lo.max(1)..=hi.min(top - 1) {
            modr[s] = rank_mod_prime(&self.maps[s - 1]);
        }
        let mut certified = true;
        for s in lo..hi {
            match (modr[s], modr[s + 1]) {
                (Some(a), Some(b)) if a + b == self.dims[s] => {}
                _ => {
                    certified = false;
                    break;
                }
            }
        }
        if certified {
            return true;
        }
        let mut r = vec![0; top + 1];
        for s in lo.max(1)..=hi.min(top - 1) {
            r[s] = rank(&self.maps[s - 1]);
        }
        (lo..hi).all(|s| self.dims[s] == r[s] + r[s + 1])
    }

    pub fn is_exact(&self) -> bool {
        self.is_exact_in(0..self.dims.len())
    }

    /// Σ (−1)^s dim C_s.
    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.dims)
    }
}

/// Σ (−1)^s v[s].
pub fn alternating_sum(v: &[usize]) -> i64 {
    v.iter()
        .enumerate()
        .map(|(s, &d)| if s % 2 == 0 { d as i64 } else { -(d as i64) })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_trivial_cases() {
        assert_eq!(rank(&RatMatrix::identity(2)), 2);
        assert_eq!(rank(&RatMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RatMatrix::from_i64(&[vec![1, 2], vec![2, 4]])), 1);
    }

    #[test]
    fn kernel_of_row_vector() {
        let k = kernel_basis(&RatMatrix::from_i64(&[vec![1, 1]]));
        assert_eq!(k, RatMatrix::from_i64(&[vec![-1], vec![1]]));
        assert_eq!(kernel_basis(&RatMatrix::identity(3)).ncols(), 0);
        assert_eq!(kernel_basis(&RatMatrix::zeros(2, 3)), RatMatrix::identity(3));
    }

    #[test]
    fn solve_roundtrip() {
        let a = RatMatrix::from_i64(&[vec![2, 0], vec![1, 3], vec![0, 1]]);
        let x = RatMatrix::from_i64(&[vec![1], vec![-2]]);
        let b = a.mul(&x).unwrap();
        assert_eq!(solve(&a, &b).unwrap(), Some(x));
        let bad = RatMatrix::from_i64(&[vec![1], vec![0], vec![0]]);
        assert_eq!(solve(&a, &bad).unwrap(), None);
    }

    #[test]
    fn complex_construction_checks() {
        let id = RatMatrix::identity(1);
        let c = RationalChainComplex::new(vec![1, 1], vec![id.clone()]).unwrap();
        assert_eq!(c.homology_dims(), vec![0, 0]);
        assert!(c.is_exact());
        assert_eq!(c.euler_characteristic(), 0);
        let bad = RationalChainComplex::new(vec![1, 1, 1], vec![id.clone(), id]);
        assert_eq!(bad, Err(Error::NotAComplex { degree: 2 }));
        let zero = RationalChainComplex::new(
            vec![2, 3],
            vec![RatMatrix::zeros(2, 3)],
        )
        .unwrap();
        assert_eq!(zero.homology_dims(), vec![2, 3]);
        assert!(!zero.is_exact());
        assert_eq!(RationalChainComplex::concentrated(1).euler_characteristic(), 1);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("-6/4").unwrap(), rat_frac(-3, 2));
        assert_eq!(format_rat(&rat_frac(-3, 2)), "-3/2");
        assert_eq!(format_rat(&rat(7)), "7");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn mod_prime_rank_matches_on_small_case() {
        let m = RatMatrix::from_i64(&[vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 9]]);
        assert_eq!(rank_mod_prime(&m), Some(2));
        assert_eq!(rank(&m), 2);
    }
}

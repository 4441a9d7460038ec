//! Degree-truncated symmetric functions in the power-sum basis.
//!
//! A [`SymFunc`] with truncation degree `N` stores `Σ c_λ p_λ` over
//! partitions with `|λ| ≤ N`. Arithmetic drops everything above `N`, and
//! combining two values with different `N` is an error rather than a silent
//! re-truncation.
//!
//! The differential operators follow the usual conventions: `∂_n` is the
//! partial derivative in `p_n`, `D_n = Σ_{d|n} μ(d)/d · ∂_{n/d}`, and
//! `(D choose λ) = ∏_i (D_i choose m_i(λ))`. Applying an operator of degree
//! `n` lowers the truncation by `n`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactla::{format_rat, parse_rat, rat, Rat};

/// Integer partition with parts in weakly decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Ord for Partition {
    /// Size first, then lexicographic on parts.
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: vec![] }
    }

    /// Partition from multiplicities: `mults[i]` copies of `i + 1`.
    pub fn from_multiplicities(mults: &[usize]) -> Self {
        let mut parts = Vec::new();
        for (i, &m) in mults.iter().enumerate().rev() {
            parts.extend(std::iter::repeat(i + 1).take(m));
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `m_i(λ)`, the number of parts equal to `i`.
    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// Nonzero multiplicities, keyed by part size.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `λ! = ∏ m_i!`.
    pub fn mult_factorial(&self) -> BigInt {
        self.multiplicities().values().map(|&m| factorial(m)).product()
    }

    /// `z_λ = ∏ i^{m_i} m_i!`.
    pub fn z(&self) -> BigInt {
        self.multiplicities()
            .iter()
            .map(|(&i, &m)| BigInt::from(i).pow(m as u32) * factorial(m))
            .product()
    }

    /// `(−1)^{|λ| − rank(λ)}`, the sign of a permutation of this cycle type.
    pub fn sign(&self) -> i64 {
        if (self.size() - self.rank()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Multiset union of parts.
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    /// Removes one part equal to `i`, if present.
    pub fn remove_part(&self, i: usize) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == i)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// Prepends a first row of length `n` (requires `n ≥ λ_1`).
    pub fn with_first_row(&self, n: usize) -> Option<Partition> {
        if n < self.largest() || n == 0 {
            return None;
        }
        let mut parts = vec![n];
        parts.extend_from_slice(&self.parts);
        Some(Partition { parts })
    }

    /// All partitions of `n`, lexicographically increasing.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in 1..=max.min(rest) {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All partitions of size at most `n`, in canonical order.
    pub fn all_up_to(n: usize) -> Vec<Partition> {
        (0..=n).flat_map(Partition::all).collect()
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Number-theoretic Möbius function.
pub fn int_mobius(n: usize) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

// ---------------------------------------------------------------------------
// Characters of symmetric groups.

static CHAR_CACHE: Mutex<Option<HashMap<(Vec<usize>, Vec<usize>), i64>>> = Mutex::new(None);

/// `χ^λ(μ)` by the Murnaghan–Nakayama rule, removing rim hooks of length
/// `μ_1, μ_2, …` via bead moves on the beta-set of `λ`.
pub fn sn_character(lambda: &Partition, mu: &Partition) -> i64 {
    if lambda.size() != mu.size() {
        return 0;
    }
    if let Some(v) = CHAR_CACHE
        .lock()
        .expect("character cache")
        .get_or_insert_with(HashMap::new)
        .get(&(lambda.parts.clone(), mu.parts.clone()))
    {
        return *v;
    }
    let v = mn_rec(&lambda.parts, &mu.parts);
    CHAR_CACHE
        .lock()
        .expect("character cache")
        .get_or_insert_with(HashMap::new)
        .insert((lambda.parts.clone(), mu.parts.clone()), v);
    v
}

fn mn_rec(lambda: &[usize], mu: &[usize]) -> i64 {
    let Some((&k, rest)) = mu.split_first() else {
        return 1;
    };
    let l = lambda.len();
    // Beta-set: λ_i + (l − 1 − i), strictly decreasing.
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < k || beta.contains(&(b - k)) {
            continue;
        }
        let target = b - k;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut nb: Vec<usize> = beta.clone();
        nb[i] = target;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let nl: Vec<usize> = nb
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (l - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sgn = if between % 2 == 0 { 1 } else { -1 };
        total += sgn * mn_rec(&nl, rest);
    }
    total
}

// ---------------------------------------------------------------------------

/// Truncated symmetric function `Σ c_λ p_λ`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    n: usize,
    coeffs: BTreeMap<Partition, Rat>,
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymFunc(N={}; {self})", self.n)
    }
}

impl fmt::Display for SymFunc {
    /// Renders as `p[1,1] + 1/2*p[2]`; `p[]` is the unit.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (lam, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if mag.is_one() {
                write!(f, "p{lam}")?;
            } else {
                write!(f, "{}*p{lam}", format_rat(&mag))?;
            }
        }
        Ok(())
    }
}

impl SymFunc {
    pub fn zero(n: usize) -> Self {
        SymFunc {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::p(&Partition::empty(), n).expect("empty partition fits")
    }

    /// Drops terms of degree above `n` and zero coefficients.
    pub fn from_terms<I>(n: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Partition, Rat)>,
    {
        let mut f = Self::zero(n);
        for (l, c) in terms {
            f.add_term(l, &c);
        }
        f
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.coeffs
    }

    pub fn coeff(&self, l: &Partition) -> Rat {
        self.coeffs.get(l).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Adds `c·p_λ`, ignoring terms above the truncation.
    pub fn add_term(&mut self, l: Partition, c: &Rat) {
        if l.size() > self.n || c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&l) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.coeffs.remove(&l);
                }
            }
            None => {
                self.coeffs.insert(l, c.clone());
            }
        }
    }

    /// Same element viewed at a lower truncation.
    pub fn retruncate(&self, m: usize) -> Result<Self> {
        if m > self.n {
            return invalid(format!("cannot raise truncation from {} to {m}", self.n));
        }
        Ok(SymFunc {
            n: m,
            coeffs: self.coeffs.iter().filter(|(l, _)| l.size() <= m).map(|(l, c)| (l.clone(), c.clone())).collect(),
        })
    }

    /// Homogeneous component of degree `d`.
    pub fn degree_part(&self, d: usize) -> Self {
        SymFunc {
            n: self.n,
            coeffs: self.coeffs.iter().filter(|(l, _)| l.size() == d).map(|(l, c)| (l.clone(), c.clone())).collect(),
        }
    }

    // -- basis elements ------------------------------------------------------

    pub fn p(l: &Partition, n: usize) -> Result<Self> {
        if l.size() > n {
            return invalid(format!("p{l} exceeds truncation {n}"));
        }
        Ok(Self::from_terms(n, [(l.clone(), Rat::one())]))
    }

    /// Single power sum `p_k` (with `p_0 = 1`).
    pub fn p_single(k: usize, n: usize) -> Result<Self> {
        Self::p(&Partition::new(vec![k]), n)
    }

    /// `h_k` from `k h_k = Σ_{i=1}^k p_i h_{k−i}`.
    pub fn h(k: usize, n: usize) -> Result<Self> {
        Ok(Self::newton_family(k, n, false)?.pop().expect("nonempty"))
    }

    /// `e_k` from `k e_k = Σ_{i=1}^k (−1)^{i−1} p_i e_{k−i}`.
    pub fn e(k: usize, n: usize) -> Result<Self> {
        Ok(Self::newton_family(k, n, true)?.pop().expect("nonempty"))
    }

    /// `[x_0, …, x_k]` for `x = h` or `x = e`.
    fn newton_family(k: usize, n: usize, alternating: bool) -> Result<Vec<Self>> {
        if k > n {
            return invalid(format!("degree {k} exceeds truncation {n}"));
        }
        let mut fam: Vec<SymFunc> = vec![Self::one(n)];
        for m in 1..=k {
            let mut acc = Self::zero(n);
            for i in 1..=m {
                let sg = if alternating && i % 2 == 0 { -Rat::one() } else { Rat::one() };
                let term = fam[m - i].mul(&Self::p_single(i, n)?)?.scale(&sg);
                acc = acc.add(&term)?;
            }
            fam.push(acc.scale(&Rat::new(BigInt::one(), BigInt::from(m))));
        }
        Ok(fam)
    }

    /// `h_λ = ∏ h_{λ_i}`.
    pub fn h_partition(l: &Partition, n: usize) -> Result<Self> {
        l.parts.iter().try_fold(Self::one(n), |acc, &k| acc.mul(&Self::h(k, n)?))
    }

    /// `e_λ = ∏ e_{λ_i}`.
    pub fn e_partition(l: &Partition, n: usize) -> Result<Self> {
        l.parts.iter().try_fold(Self::one(n), |acc, &k| acc.mul(&Self::e(k, n)?))
    }

    /// Schur function `s_λ = Σ_μ χ^λ(μ) p_μ / z_μ`.
    pub fn s(l: &Partition, n: usize) -> Result<Self> {
        if l.size() > n {
            return invalid(format!("s{l} exceeds truncation {n}"));
        }
        Ok(Self::from_terms(
            n,
            Partition::all(l.size())
                .into_iter()
                .map(|mu| {
                    let c = Rat::new(BigInt::from(sn_character(l, &mu)), mu.z());
                    (mu, c)
                }),
        ))
    }

    /// `y_k = Σ_{j ≥ 1} p_{kj} / j`, truncated.
    pub fn y(k: usize, n: usize) -> Result<Self> {
        if k == 0 {
            return invalid("y_0 is undefined");
        }
        Ok(Self::from_terms(
            n,
            (1..)
                .take_while(|j| k * j <= n)
                .map(|j| (Partition::new(vec![k * j]), Rat::new(BigInt::one(), BigInt::from(j)))),
        ))
    }

    /// `Σ_{k=0}^{N} h_k`, the exponential of `y_1`.
    pub fn sum_h(n: usize) -> Result<Self> {
        (0..=n).try_fold(Self::zero(n), |acc, k| acc.add(&Self::h(k, n)?))
    }

    // -- arithmetic ------------------------------------------------------------

    fn same_n(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::TruncationMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        SymFunc {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(l, v)| (l.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_n(other)?;
        let mut out = Self::zero(self.n);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                if a.size() + b.size() <= self.n {
                    out.add_term(a.union(b), &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<Self> {
        (0..k).try_fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// `Σ_{k ≤ N} f^k / k!`; requires zero constant term.
    pub fn exp_truncated(&self) -> Result<Self> {
        if !self.coeff(&Partition::empty()).is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out = Self::one(self.n);
        let mut power = Self::one(self.n);
        for k in 1..=self.n {
            power = power.mul(self)?.scale(&Rat::new(BigInt::one(), BigInt::from(k)));
            if power.is_zero() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Hall inner product `Σ z_λ f_λ g_λ`.
    pub fn hall_pair(&self, other: &Self) -> Result<Rat> {
        self.same_n(other)?;
        let mut s = Rat::zero();
        for (l, c) in &self.coeffs {
            if let Some(d) = other.coeffs.get(l) {
                s += Rat::from_integer(l.z()) * c * d;
            }
        }
        Ok(s)
    }

    /// `∂/∂p_k`; the result has truncation `N − k` (or 0 if `k > N`).
    pub fn apply_partial(&self, k: usize) -> Self {
        assert!(k >= 1, "partial derivative index must be positive");
        let m = self.n.saturating_sub(k);
        let mut out = Self::zero(m);
        if k > self.n {
            return out;
        }
        for (l, c) in &self.coeffs {
            let mult = l.multiplicity(k);
            if mult > 0 {
                out.add_term(l.remove_part(k).expect("part present"), &(c * rat(mult as i64)));
            }
        }
        out
    }

    /// `D_k = Σ_{d|k} μ(d)/d · ∂_{k/d}`, truncation `N − k`.
    pub fn apply_d(&self, k: usize) -> Self {
        assert!(k >= 1, "operator index must be positive");
        let m = self.n.saturating_sub(k);
        let mut out = Self::zero(m);
        if k > self.n {
            return out;
        }
        for d in divisors(k) {
            let mu = int_mobius(d);
            if mu == 0 {
                continue;
            }
            let part = self
                .apply_partial(k / d)
                .retruncate(m)
                .expect("lower truncation");
            out = out
                .add(&part.scale(&Rat::new(BigInt::from(mu), BigInt::from(d))))
                .expect("same truncation");
        }
        out
    }

    /// `(D choose λ) = ∏_i D_i(D_i − 1)…(D_i − m_i + 1)/m_i!`, applied with
    /// `i` ascending. Truncation drops by `|λ|`.
    pub fn apply_binom_d(&self, l: &Partition) -> Self {
        let mut g = self.clone();
        for (&i, &m) in &l.multiplicities() {
            for j in 0..m {
                let dg = g.apply_d(i);
                let shifted = if i > g.n {
                    Self::zero(0)
                } else {
                    g.retruncate(g.n - i).expect("lower truncation")
                };
                g = dg.sub(&shifted.scale(&rat(j as i64))).expect("same truncation");
            }
            g = g.scale(&Rat::new(BigInt::one(), factorial(m)));
        }
        g
    }

    /// `⟨s_λ, f⟩ = Σ_μ χ^λ(μ) f_μ` for every `|λ| ≤ max_deg`.
    pub fn schur_expansion(&self, max_deg: usize) -> Result<BTreeMap<Partition, Rat>> {
        if max_deg > self.n {
            return invalid(format!("degree {max_deg} exceeds truncation {}", self.n));
        }
        let mut out = BTreeMap::new();
        for d in 0..=max_deg {
            for l in Partition::all(d) {
                out.insert(l.clone(), self.schur_coeff(&l));
            }
        }
        Ok(out)
    }

    /// `⟨s_λ, f⟩` for one partition (zero above the truncation).
    pub fn schur_coeff(&self, l: &Partition) -> Rat {
        let mut c = Rat::zero();
        for mu in Partition::all(l.size()) {
            if let Some(v) = self.coeffs.get(&mu) {
                c += v * rat(sn_character(l, &mu));
            }
        }
        c
    }

    pub fn to_json(&self) -> SymFuncJson {
        SymFuncJson {
            n: self.n,
            terms: self
                .coeffs
                .iter()
                .map(|(l, c)| TermJson {
                    partition: l.parts.clone(),
                    coef: format_rat(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SymFuncJson) -> Result<Self> {
        let mut f = Self::zero(j.n);
        for t in &j.terms {
            if t.partition.iter().any(|&p| p == 0) {
                return invalid("partition parts must be positive");
            }
            let l = Partition::new(t.partition.clone());
            if l.size() > j.n {
                return invalid(format!("term p{l} exceeds truncation {}", j.n));
            }
            f.add_term(l, &parse_rat(&t.coef)?);
        }
        Ok(f)
    }

    pub fn from_json_str(s: &str, max_n: usize) -> Result<Self> {
        let j: SymFuncJson = serde_json::from_str(s)?;
        if j.n > max_n {
            return Err(Error::BoundExceeded {
                what: "truncation degree",
                value: j.n,
                max: max_n,
            });
        }
        if j.terms.iter().any(|t| t.partition.len() > max_n) {
            return invalid("partition longer than the truncation bound");
        }
        Self::from_json(&j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub partition: Vec<usize>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymFuncJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat_frac;

    fn part(v: &[usize]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn partition_basics() {
        let l = part(&[2, 1, 1]);
        assert_eq!(l.z(), BigInt::from(4));
        assert_eq!(l.sign(), -1);
        assert_eq!(part(&[2]).sign(), -1);
        assert_eq!(Partition::all(4).len(), 5);
        assert!(part(&[3]) > part(&[1, 1]));
        assert!(part(&[2, 1]) < part(&[3]));
    }

    #[test]
    fn schur_21() {
        let s = SymFunc::s(&part(&[2, 1]), 3).unwrap();
        let want = SymFunc::from_terms(3, [(part(&[1, 1, 1]), rat_frac(1, 3)), (part(&[3]), rat_frac(-1, 3))]);
        assert_eq!(s, want);
    }

    #[test]
    fn elementary_and_complete_low_degree() {
        assert_eq!(SymFunc::h(1, 3).unwrap(), SymFunc::p_single(1, 3).unwrap());
        assert_eq!(SymFunc::e(1, 3).unwrap(), SymFunc::p_single(1, 3).unwrap());
        let e2 = SymFunc::e(2, 2).unwrap();
        assert_eq!(e2.coeff(&part(&[2])), rat_frac(-1, 2));
    }

    #[test]
    fn mismatched_truncation_errors() {
        let a = SymFunc::one(3);
        let b = SymFunc::one(4);
        assert_eq!(a.add(&b), Err(Error::TruncationMismatch { left: 3, right: 4 }));
    }

    #[test]
    fn partial_beyond_truncation_is_zero() {
        let f = SymFunc::p_single(2, 2).unwrap();
        let g = f.apply_partial(5);
        assert!(g.is_zero());
        assert_eq!(g.truncation(), 0);
    }

    #[test]
    fn json_roundtrip() {
        let f = SymFunc::s(&part(&[2, 1]), 4).unwrap();
        let s = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(SymFunc::from_json_str(&s, 20).unwrap(), f);
    }
}

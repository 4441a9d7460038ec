//! Character spaces: exponential profiles, the shifted power sums `u_n`, the
//! generators `E_m`, the specialization `ε_k` and its lift `π_k`, the dual
//! basis `L_ν`, class functions of character exponentials, and rational
//! fitting of multiplicity sequences.
//!
//! Everything works on truncated series ([`SymFunc`]) and every verdict is
//! only as strong as the truncation it was computed at.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::exactla::{rat, solve, Rat, RatMatrix};
use crate::posets::IntPolynomial;
use crate::symfun::{divisors, factorial, Partition, SymFunc};

/// `A = 1^{a_1} 2^{a_2} …`, stored as the multiplicity vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExpProfile {
    a: Vec<usize>,
}

impl ExpProfile {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `mults[i]` is the multiplicity of the part `i + 1`.
    pub fn from_multiplicities(mults: &[usize]) -> Self {
        let mut a = mults.to_vec();
        while a.last() == Some(&0) {
            a.pop();
        }
        ExpProfile { a }
    }

    pub fn from_partition(p: &Partition) -> Self {
        let mut a = vec![0; p.largest()];
        for &x in p.parts() {
            a[x - 1] += 1;
        }
        ExpProfile { a }
    }

    pub fn as_partition(&self) -> Partition {
        Partition::from_multiplicities(&self.a)
    }

    pub fn a(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.a.get(i - 1).copied().unwrap_or(0)
        }
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.a
    }

    /// `|A| = Σ i·a_i`.
    pub fn size(&self) -> usize {
        self.a.iter().enumerate().map(|(i, &m)| (i + 1) * m).sum()
    }

    /// The profile `m·A` (all multiplicities scaled).
    pub fn scaled(&self, m: usize) -> Self {
        Self::from_multiplicities(&self.a.iter().map(|x| x * m).collect::<Vec<_>>())
    }

    /// `b_n = Σ_{d|n} d·a_d`, the constant subtracted in `u_n`.
    pub fn b(&self, n: usize) -> i64 {
        if n == 0 {
            return 0;
        }
        divisors(n).into_iter().map(|d| (d * self.a(d)) as i64).sum()
    }

    fn b_partition(&self, l: &Partition) -> Rat {
        l.parts().iter().map(|&x| rat(self.b(x))).product()
    }

    /// `exp(Σ a_i y_i) = Σ_λ b_λ p_λ / z_λ`, truncated at `n`.
    pub fn exp_series(&self, n: usize) -> SymFunc {
        SymFunc::from_terms(
            n,
            Partition::all_up_to(n)
                .into_iter()
                .map(|l| {
                    let c = self.b_partition(&l) / Rat::from_integer(l.z());
                    (l, c)
                }),
        )
    }

    /// `u_n = p_n − b_n`.
    pub fn u(&self, k: usize, n: usize) -> Result<SymFunc> {
        let mut f = SymFunc::p_single(k, n)?;
        f.add_term(Partition::empty(), &rat(-self.b(k)));
        Ok(f)
    }

    /// `u_λ = ∏ u_{λ_i}`.
    pub fn u_partition(&self, l: &Partition, n: usize) -> Result<SymFunc> {
        if l.size() > n {
            return invalid(format!("u{l} exceeds truncation {n}"));
        }
        let mut out = SymFunc::one(n);
        for &x in l.parts() {
            out = out.mul(&self.u(x, n)?)?;
        }
        Ok(out)
    }

    /// `f` evaluated at `p_n = b_n` (the point where every `u_n` vanishes).
    pub fn evaluate_at_base(&self, f: &SymFunc) -> Rat {
        f.terms().iter().map(|(l, c)| c * self.b_partition(l)).sum()
    }
}

/// Coefficients `c_0..=c_max` of `∏(1 − t^i)^{a_i}`.
pub fn c_coeffs(a: &ExpProfile, max_m: usize) -> Vec<i64> {
    let mut c = vec![0i64; max_m + 1];
    c[0] = 1;
    for i in 1..=a.multiplicities().len() {
        for _ in 0..a.a(i) {
            for m in (i..=max_m).rev() {
                c[m] -= c[m - i];
            }
        }
    }
    c
}

/// Coefficients of `∏(1 − t^i)^{−b_i}` up to `t^max_n`.
pub fn g_series(b: &ExpProfile, max_n: usize) -> Vec<Rat> {
    let mut g = vec![Rat::zero(); max_n + 1];
    g[0] = Rat::one();
    for i in 1..=b.multiplicities().len() {
        for _ in 0..b.a(i) {
            for m in i..=max_n {
                let prev = g[m - i].clone();
                g[m] += prev;
            }
        }
    }
    g
}

/// `E_m = −(−1)^m e_m + c_m`, with `E_0 = 0`.
pub fn e_elem(a: &ExpProfile, m: usize, n: usize) -> Result<SymFunc> {
    if m > n {
        return invalid(format!("E_{m} exceeds truncation {n}"));
    }
    if m == 0 {
        return Ok(SymFunc::zero(n));
    }
    let e = SymFunc::e(m, n)?;
    let mut out = if m % 2 == 0 { e.scale(&-Rat::one()) } else { e };
    out.add_term(Partition::empty(), &rat(c_coeffs(a, m)[m]));
    Ok(out)
}

/// `E_λ = ∏ E_{λ_i}`.
pub fn e_partition(a: &ExpProfile, l: &Partition, n: usize) -> Result<SymFunc> {
    if l.size() > n {
        return invalid(format!("E{l} exceeds truncation {n}"));
    }
    let mut out = SymFunc::one(n);
    for &x in l.parts() {
        out = out.mul(&e_elem(a, x, n)?)?;
    }
    Ok(out)
}

/// `−Σ_{n=1}^m (−1)^n c_{m−n} Σ_{λ⊢n} sgn(λ) u_λ / z_λ`, expanded in power sums.
pub fn e_elem_via_u(a: &ExpProfile, m: usize, n: usize) -> Result<SymFunc> {
    let c = c_coeffs(a, m);
    let mut out = SymFunc::zero(n);
    for k in 1..=m {
        let outer = if k % 2 == 0 { -c[m - k] } else { c[m - k] };
        if outer == 0 {
            continue;
        }
        for l in Partition::all(k) {
            let coef = rat(outer * l.sign()) / Rat::from_integer(l.z());
            out = out.add(&a.u_partition(&l, n)?.scale(&coef))?;
        }
    }
    Ok(out)
}

/// `⟨u_λ / z_λ, f⟩`: the coefficient `c_λ` of `f = Σ c_ν (p_ν/z_ν)·exp(Σ a_i y_i)`
/// up to a factor; for `f = p_ν exp(…)` it is `δ(λ, ν)`.
pub fn u_expansion_coeff(f: &SymFunc, l: &Partition, a: &ExpProfile) -> Result<Rat> {
    let u = a.u_partition(l, f.truncation())?;
    Ok(u.hall_pair(f)? / Rat::from_integer(l.z()))
}

/// `ε_k`: drops every power-sum monomial with a part above `k`.
pub fn eps_k(f: &SymFunc, k: usize) -> SymFunc {
    SymFunc::from_terms(
        f.truncation(),
        f.terms()
            .iter()
            .filter(|(l, _)| l.largest() <= k)
            .map(|(l, c)| (l.clone(), c.clone())),
    )
}

/// Power sums `p_0..=p_n` reduced modulo `(e_{k+1}, e_{k+2}, …)`, each a
/// polynomial in `p_1..p_k`.
fn reduced_power_sums(k: usize, n: usize) -> Result<Vec<SymFunc>> {
    if k == 0 {
        // All e_i vanish for i ≥ 1, so p_m = 0 for m ≥ 1.
        let mut v = vec![SymFunc::one(n)];
        v.extend((1..=n).map(|_| SymFunc::zero(n)));
        return Ok(v);
    }
    let es: Vec<SymFunc> = (0..=k.min(n)).map(|i| SymFunc::e(i, n)).collect::<Result<_>>()?;
    let mut ps: Vec<SymFunc> = vec![SymFunc::one(n)];
    for m in 1..=n {
        if m <= k {
            ps.push(SymFunc::p_single(m, n)?);
            continue;
        }
        // p_m = Σ_{j=1}^k (−1)^{j−1} e_j p_{m−j}.
        let mut acc = SymFunc::zero(n);
        for j in 1..=k {
            let term = es[j].mul(&ps[m - j])?;
            acc = if j % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        ps.push(acc);
    }
    Ok(ps)
}

/// `p_λ` modulo `(e_{k+1}, …)`, as a polynomial in `p_1..p_k`.
pub fn reduce_mod_e(k: usize, l: &Partition, n: usize) -> Result<SymFunc> {
    if l.size() > n {
        return invalid(format!("p{l} exceeds truncation {n}"));
    }
    let ps = reduced_power_sums(k, l.largest())?;
    let mut out = SymFunc::one(n);
    for &x in l.parts() {
        let px = lift(&ps[x], n);
        out = out.mul(&px)?;
    }
    Ok(out)
}

fn lift(f: &SymFunc, n: usize) -> SymFunc {
    SymFunc::from_terms(n, f.terms().iter().map(|(l, c)| (l.clone(), c.clone())))
}

/// The unique element of `F_{≤k}` agreeing with `f` after `ε_k`: the
/// coefficient of `p_λ` is `(1/z_λ) Σ_μ r_{λμ} z_μ f_μ`, where `r_{λμ}` is the
/// coefficient of `p_μ` in the reduction of `p_λ`.
pub fn pi_k(f: &SymFunc, k: usize) -> Result<SymFunc> {
    let n = f.truncation();
    let ps = reduced_power_sums(k, n)?;
    let mut out = SymFunc::zero(n);
    for l in Partition::all_up_to(n) {
        let mut red = SymFunc::one(n);
        for &x in l.parts() {
            red = red.mul(&ps[x])?;
        }
        let mut v = Rat::zero();
        for (mu, r) in red.terms() {
            let fm = f.coeff(mu);
            if !fm.is_zero() {
                v += r * Rat::from_integer(mu.z()) * fm;
            }
        }
        let coef = v / Rat::from_integer(l.z());
        out.add_term(l, &coef);
    }
    Ok(out)
}

/// Every Schur coefficient with more than `k` rows vanishes (to truncation).
pub fn in_f_leq_k(f: &SymFunc, k: usize) -> bool {
    Partition::all_up_to(f.truncation())
        .into_iter()
        .filter(|l| l.rank() > k)
        .all(|l| f.schur_coeff(&l).is_zero())
}

/// Every `u`-coefficient of rank `≥ r` vanishes (to truncation).
pub fn in_v_ar(f: &SymFunc, a: &ExpProfile, r: usize) -> Result<bool> {
    for l in Partition::all_up_to(f.truncation()) {
        if l.rank() >= r && !u_expansion_coeff(f, &l, a)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`type_equations_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeEquationsReport {
    /// Every operator product `∏ (D choose λ_t)` with `j_t ≤ |λ_t| ≤ j_t + slack`
    /// annihilates `f` up to its lowered truncation.
    pub equations_hold: bool,
    /// `f` lies in the span of `p_ν exp(Σ a_i y_i)` with `rank(ν) < t(A, J)`
    /// (to truncation).
    pub in_solution_space: bool,
    pub truncation: usize,
    pub slack: usize,
    /// Number of operator products that were applied.
    pub products_checked: usize,
}

impl TypeEquationsReport {
    pub fn holds(&self) -> bool {
        self.equations_hold && self.in_solution_space
    }
}

/// `t(A, J) = #{ i : j_i > |A| }`.
pub fn t_of(a: &ExpProfile, j: &Partition) -> usize {
    j.parts().iter().filter(|&&x| x > a.size()).count()
}

/// Checks the operator equations of type `< J` and cross-validates against
/// the explicit solution space.
pub fn type_equations_check(f: &SymFunc, j: &Partition, slack: usize) -> Result<TypeEquationsReport> {
    let n = f.truncation();
    let parts = j.parts();
    if parts.is_empty() {
        return invalid("type equations need a nonempty partition");
    }
    let mut equations_hold = true;
    let mut products_checked = 0;
    // Tuples of sizes (|λ_1|, …, |λ_r|).
    let mut sizes = parts.to_vec();
    'outer: loop {
        if sizes.iter().sum::<usize>() <= n {
            let lambdas: Vec<Vec<Partition>> = sizes.iter().map(|&s| Partition::all(s)).collect();
            let mut idx = vec![0usize; lambdas.len()];
            loop {
                let mut g = f.clone();
                for (t, &i) in idx.iter().enumerate() {
                    g = g.apply_binom_d(&lambdas[t][i]);
                }
                products_checked += 1;
                if !g.is_zero() {
                    equations_hold = false;
                    break 'outer;
                }
                if !odometer(&mut idx, |t| lambdas[t].len() - 1, |_| 0) {
                    break;
                }
            }
        }
        if !odometer(&mut sizes, |t| parts[t] + slack, |t| parts[t]) {
            break;
        }
    }
    let in_solution_space = solution_space_contains(f, j)?;
    Ok(TypeEquationsReport {
        equations_hold,
        in_solution_space,
        truncation: n,
        slack,
        products_checked,
    })
}

/// Advances the last coordinate that is below its maximum and resets the
/// later ones; returns false once every coordinate is at its maximum.
fn odometer(v: &mut [usize], max: impl Fn(usize) -> usize, min: impl Fn(usize) -> usize) -> bool {
    for t in (0..v.len()).rev() {
        if v[t] < max(t) {
            v[t] += 1;
            for u in t + 1..v.len() {
                v[u] = min(u);
            }
            return true;
        }
    }
    false
}

/// Is `f` (truncated) in the span of `p_ν exp(Σ a_i y_i)` over profiles `A`
/// and `rank(ν) < t(A, J)`?
pub fn solution_space_contains(f: &SymFunc, j: &Partition) -> Result<bool> {
    let n = f.truncation();
    let coords = Partition::all_up_to(n);
    let pos: BTreeMap<&Partition, usize> = coords.iter().enumerate().map(|(i, l)| (l, i)).collect();
    let mut cols: Vec<SymFunc> = Vec::new();
    for s in 0..j.largest() {
        for ap in Partition::all(s) {
            let a = ExpProfile::from_partition(&ap);
            let t = t_of(&a, j);
            if t == 0 {
                continue;
            }
            let ex = a.exp_series(n);
            for nu in Partition::all_up_to(n) {
                if nu.rank() < t {
                    cols.push(SymFunc::p(&nu, n)?.mul(&ex)?);
                }
            }
        }
    }
    let mut m = RatMatrix::zeros(coords.len(), cols.len());
    for (c, g) in cols.iter().enumerate() {
        for (l, v) in g.terms() {
            m.set(pos[l], c, v.clone());
        }
    }
    let mut rhs = RatMatrix::zeros(coords.len(), 1);
    for (l, v) in f.terms() {
        rhs.set(pos[l], 0, v.clone());
    }
    Ok(solve(&m, &rhs)?.is_some())
}

// ---------------------------------------------------------------------------
// The dual basis L_ν.

/// `Part(r, k)`: partitions with parts `≤ k` and fewer than `r` parts.
pub fn part_rk(r: usize, k: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if r == 0 {
        return out;
    }
    fn go(max_part: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur.clone()));
        if slots == 0 {
            return;
        }
        for p in (1..=max_part).rev() {
            cur.push(p);
            go(p, slots - 1, cur, out);
            cur.pop();
        }
    }
    go(k, r - 1, &mut Vec::new(), &mut out);
    out.sort();
    out
}

pub fn in_part_rk(l: &Partition, r: usize, k: usize) -> bool {
    l.rank() < r && l.largest() <= k
}

/// `H_ν(n) = n · g_{rank(ν)·A}(n − |ν|) · (rank(ν) − 1)! / ν!` for `ν ≠ ∅`.
pub fn h_nu(nu: &Partition, a: &ExpProfile, n: usize) -> Rat {
    if nu.is_empty() || n < nu.size() {
        return Rat::zero();
    }
    let g = g_series(&a.scaled(nu.rank()), n - nu.size());
    rat(n as i64) * &g[n - nu.size()] * Rat::new(factorial(nu.rank() - 1), nu.mult_factorial())
}

/// Ordered tuples of nonzero multiplicity vectors summing to `target`, of the
/// given length.
fn ordered_splits(target: &[usize], len: usize) -> Vec<Vec<Vec<usize>>> {
    if len == 0 {
        return if target.iter().all(|&x| x == 0) { vec![vec![]] } else { vec![] };
    }
    if len == 1 {
        return if target.iter().any(|&x| x > 0) { vec![vec![target.to_vec()]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut first = vec![0usize; target.len()];
    loop {
        // Advance `first` through all vectors ≤ target (odometer).
        let mut i = 0;
        loop {
            if i == target.len() {
                return out;
            }
            if first[i] < target[i] {
                first[i] += 1;
                break;
            }
            first[i] = 0;
            i += 1;
        }
        let rest: Vec<usize> = target.iter().zip(&first).map(|(t, f)| t - f).collect();
        for mut tail in ordered_splits(&rest, len - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
}

/// The element of `V_{A,r} ∩ F_{≤k}` dual to `E_ν` among `{E_λ : λ ∈ Part(r,k)}`.
pub fn l_nu(nu: &Partition, a: &ExpProfile, r: usize, k: usize, n: usize) -> Result<SymFunc> {
    if !in_part_rk(nu, r, k) {
        return invalid(format!("{nu} is not in Part({r},{k})"));
    }
    if a.size() > k {
        return invalid(format!("|A| = {} exceeds k = {k}", a.size()));
    }
    let target: Vec<usize> = (1..=nu.largest()).map(|i| nu.multiplicity(i)).collect();
    let mut inner = SymFunc::zero(n);
    let mut h_cache: BTreeMap<(Vec<usize>, usize), Rat> = BTreeMap::new();
    for lam in Partition::all_up_to(n) {
        let mut total = Rat::zero();
        for split in ordered_splits(&target, lam.rank()) {
            let mut prod = Rat::one();
            for (piece, &ni) in split.iter().zip(lam.parts()) {
                let h = h_cache
                    .entry((piece.clone(), ni))
                    .or_insert_with(|| h_nu(&Partition::from_multiplicities(piece), a, ni))
                    .clone();
                prod *= h;
                if prod.is_zero() {
                    break;
                }
            }
            total += prod;
        }
        let c = total / Rat::from_integer(lam.z());
        inner.add_term(lam, &c);
    }
    inner.mul(&a.exp_series(n))
}

/// Coefficient of `t^n` in `t^{|λ|} rank(λ)! / (λ! · ∏(1 − t^i)^{a_i (rank(λ)+1)})`.
pub fn h_pairing_closed_form(l: &Partition, a: &ExpProfile, n: usize) -> Rat {
    if n < l.size() {
        return Rat::zero();
    }
    let g = g_series(&a.scaled(l.rank() + 1), n - l.size());
    &g[n - l.size()] * Rat::new(factorial(l.rank()), l.mult_factorial())
}

/// `⟨h_n, f⟩ = Σ_{μ ⊢ n} f_μ`.
pub fn h_pairing(f: &SymFunc, n: usize) -> Rat {
    f.terms().iter().filter(|(l, _)| l.size() == n).map(|(_, c)| c.clone()).sum()
}

// ---------------------------------------------------------------------------
// The quotient ring ℚ[u_1..u_k]/(u_1..u_k)^r.

/// An element of `ℚ[u_1, …, u_k] / (u_1, …, u_k)^r`, monomials indexed by
/// partitions with parts `≤ k` and rank `< r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    k: usize,
    r: usize,
    terms: BTreeMap<Partition, Rat>,
}

impl UPoly {
    pub fn zero(k: usize, r: usize) -> Self {
        UPoly {
            k,
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, r: usize, c: Rat) -> Self {
        let mut p = Self::zero(k, r);
        p.add_term(Partition::empty(), c);
        p
    }

    /// The variable `u_i` (`1 ≤ i ≤ k`).
    pub fn var(k: usize, r: usize, i: usize) -> Result<Self> {
        if i == 0 || i > k {
            return invalid(format!("u_{i} is not a variable for k = {k}"));
        }
        let mut p = Self::zero(k, r);
        p.add_term(Partition::new(vec![i]), Rat::one());
        Ok(p)
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn coeff(&self, l: &Partition) -> Rat {
        self.terms.get(l).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, l: Partition, c: Rat) {
        if l.rank() >= self.r || c.is_zero() {
            return;
        }
        let e = self.terms.entry(l.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&l);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (l, c) in &o.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(self.k, self.r);
        for (l, v) in &self.terms {
            out.add_term(l.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.k, self.r);
        for (a, ca) in &self.terms {
            for (b, cb) in &o.terms {
                if a.rank() + b.rank() < self.r {
                    out.add_term(a.union(b), ca * cb);
                }
            }
        }
        out
    }

    /// Image of a polynomial in `p_1..p_k` under `p_i ↦ u_i + b_i`.
    pub fn from_power_sums(f: &SymFunc, a: &ExpProfile, k: usize, r: usize) -> Result<Self> {
        let mut out = Self::zero(k, r);
        for (l, c) in f.terms() {
            let mut term = Self::constant(k, r, c.clone());
            for &x in l.parts() {
                let shifted = Self::var(k, r, x)?.add(&Self::constant(k, r, rat(a.b(x))));
                term = term.mul(&shifted);
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

type USeries = Vec<UPoly>;

fn series_mul(x: &USeries, y: &USeries, k: usize, r: usize) -> USeries {
    let len = x.len().min(y.len());
    let mut out = vec![UPoly::zero(k, r); len];
    for i in 0..len {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..len - i {
            if !y[j].is_zero() {
                out[i + j] = out[i + j].add(&x[i].mul(&y[j]));
            }
        }
    }
    out
}

fn scalar_series(c: &[Rat], k: usize, r: usize) -> USeries {
    c.iter().map(|v| UPoly::constant(k, r, v.clone())).collect()
}

/// Both sides of the generating-function identity for `Σ_n f(u_n) tⁿ / n`
/// in `R[[t]]`, `R = ℚ[u_1..u_k]/(u)^r`, up to `t^max_t`.
#[derive(Clone, Debug)]
pub struct GenFunctionSides {
    /// `Σ_{j=1}^{r−1} X^j / j` with `X = Σ_{m≤k} f(E_m) t^m / ∏(1 − t^i)^{a_i}`.
    pub log_form: Vec<UPoly>,
    /// `Σ_{λ ∈ Part(r,k)} f(E_λ) t^{|λ|} (rank−1)! / (λ! ∏(1 − t^i)^{a_i rank})`.
    pub partition_form: Vec<UPoly>,
}

/// `f(E_m)` in `u`-coordinates, by substituting `p_i = u_i + b_i` in the
/// power-sum expansion of `E_m` (`m ≤ k`).
pub fn e_in_u(a: &ExpProfile, m: usize, k: usize, r: usize) -> Result<UPoly> {
    if m > k {
        return Ok(UPoly::zero(k, r));
    }
    UPoly::from_power_sums(&e_elem(a, m, m)?, a, k, r)
}

pub fn genfunction_sides(a: &ExpProfile, r: usize, k: usize, max_t: usize) -> Result<GenFunctionSides> {
    if a.size() > k {
        return invalid(format!("|A| = {} exceeds k = {k}", a.size()));
    }
    let len = max_t + 1;
    let es: Vec<UPoly> = (0..=k).map(|m| e_in_u(a, m, k, r)).collect::<Result<_>>()?;
    let inv_p = |power: usize| scalar_series(&g_series(&a.scaled(power), max_t), k, r);
    let mut numer = vec![UPoly::zero(k, r); len];
    for m in 1..=k.min(max_t) {
        numer[m] = es[m].clone();
    }
    let x = series_mul(&numer, &inv_p(1), k, r);
    let mut log_form = vec![UPoly::zero(k, r); len];
    let mut power = x.clone();
    for j in 1..r {
        let scaled: Vec<UPoly> = power.iter().map(|p| p.scale(&Rat::new(BigInt::one(), BigInt::from(j)))).collect();
        log_form = log_form.iter().zip(&scaled).map(|(a, b)| a.add(b)).collect();
        power = series_mul(&power, &x, k, r);
    }
    let mut partition_form = vec![UPoly::zero(k, r); len];
    for l in part_rk(r, k) {
        if l.is_empty() || l.size() > max_t {
            continue;
        }
        let mut el = UPoly::constant(k, r, Rat::one());
        for &x in l.parts() {
            el = el.mul(&es[x]);
        }
        let coef = Rat::new(factorial(l.rank() - 1), l.mult_factorial());
        let mut mono = vec![UPoly::zero(k, r); len];
        mono[l.size()] = el.scale(&coef);
        let term = series_mul(&mono, &inv_p(l.rank()), k, r);
        partition_form = partition_form.iter().zip(&term).map(|(a, b)| a.add(b)).collect();
    }
    Ok(GenFunctionSides {
        log_form,
        partition_form,
    })
}

/// `f(u_n)` in the quotient ring, read off the generating function.
pub fn u_n_in_quotient(a: &ExpProfile, r: usize, k: usize, n: usize) -> Result<UPoly> {
    if n == 0 {
        return invalid("u_0 is not defined");
    }
    let sides = genfunction_sides(a, r, k, n)?;
    Ok(sides.partition_form[n].scale(&rat(n as i64)))
}

/// `f(u_n)` computed independently: reduce `p_n` modulo `(e_{k+1}, …)`, then
/// substitute `p_i = u_i + b_i`.
pub fn u_n_by_reduction(a: &ExpProfile, r: usize, k: usize, n: usize) -> Result<UPoly> {
    let red = reduce_mod_e(k, &Partition::new(vec![n]), n)?;
    let p = UPoly::from_power_sums(&red, a, k, r)?;
    Ok(p.add(&UPoly::constant(k, r, rat(-a.b(n)))))
}

/// Checks the generating-function identity: both forms agree up to `t^max_t`
/// and the coefficient of `tⁿ` is `u_n / n` for `n ≤ k`.
pub fn genfunction_check(a: &ExpProfile, r: usize, k: usize, max_t: usize) -> Result<bool> {
    let sides = genfunction_sides(a, r, k, max_t)?;
    if sides.log_form != sides.partition_form {
        return Ok(false);
    }
    if !sides.log_form[0].is_zero() {
        return Ok(false);
    }
    for n in 1..=k.min(max_t) {
        let expect = UPoly::var(k, r, n)?.scale(&Rat::new(BigInt::one(), BigInt::from(n)));
        if sides.log_form[n] != expect {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Class functions.

/// `ν` and `A` of the class function `(X choose ν) A^{X − ν}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFnParams {
    pub nu: Partition,
    pub a: ExpProfile,
}

fn binom_u(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `∏_n (X_n choose m_n) (Σ_{d|n} d a_d)^{X_n − m_n}` on cycle type `μ`,
/// with `0⁰ = 1`.
pub fn class_fn_eval(cf: &ClassFnParams, mu: &Partition) -> Rat {
    let top = mu.largest().max(cf.nu.largest());
    let mut v = BigInt::one();
    for n in 1..=top {
        let x = mu.multiplicity(n);
        let m = cf.nu.multiplicity(n);
        if m > x {
            return Rat::zero();
        }
        v *= binom_u(x, m) * num_traits::pow(BigInt::from(cf.a.b(n)), x - m);
        if v.is_zero() {
            return Rat::zero();
        }
    }
    Rat::from_integer(v)
}

/// `⟨p_μ, (p_ν / z_ν) exp(Σ a_i y_i)⟩ = class_fn_eval(cf, μ)` for all `|μ| ≤ max_n`.
pub fn translation_check(cf: &ClassFnParams, max_n: usize) -> Result<bool> {
    if cf.nu.size() > max_n {
        return invalid(format!("|ν| = {} exceeds {max_n}", cf.nu.size()));
    }
    let f = SymFunc::p(&cf.nu, max_n)?
        .scale(&Rat::new(BigInt::one(), cf.nu.z()))
        .mul(&cf.a.exp_series(max_n))?;
    for mu in Partition::all_up_to(max_n) {
        let lhs = SymFunc::p(&mu, max_n)?.hall_pair(&f)?;
        if lhs != class_fn_eval(cf, &mu) {
            return Ok(false);
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Multiplicities and rational fitting.

/// `⟨s_{(n, λ)}, f⟩` for `n = 0..=max_n`, zero where `(n, λ)` is not a
/// partition (`n < λ_1`).
pub fn multiplicity_series(f: &SymFunc, l: &Partition, max_n: usize) -> Result<Vec<Rat>> {
    if l.size() + max_n > f.truncation() {
        return Err(Error::BoundExceeded {
            what: "multiplicity degree",
            value: l.size() + max_n,
            max: f.truncation(),
        });
    }
    Ok((0..=max_n)
        .map(|n| match l.with_first_row(n) {
            Some(shape) => f.schur_coeff(&shape),
            None => Rat::zero(),
        })
        .collect())
}

/// Cyclotomic polynomial `Φ_n`, normalized to constant term `+1`
/// (so `Φ_1 = 1 − t`).
pub fn cyclotomic(n: usize) -> IntPolynomial {
    assert!(n >= 1);
    // t^n − 1 divided by Φ_d for proper divisors d.
    let mut num = vec![0i64; n + 1];
    num[0] = -1;
    num[n] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        num = poly_div_exact(&num, cyclotomic_raw(d).coeffs());
    }
    let mut p = IntPolynomial::new(num);
    if p.coeff(0) < 0 {
        p = IntPolynomial::new(p.coeffs().iter().map(|c| -c).collect());
    }
    p
}

fn cyclotomic_raw(n: usize) -> IntPolynomial {
    let c = cyclotomic(n);
    if n == 1 {
        IntPolynomial::new(vec![-1, 1])
    } else {
        c
    }
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dl = den.len() - 1;
    let lead = den[dl];
    let mut q = vec![0i64; rem.len().saturating_sub(dl)];
    for i in (0..q.len()).rev() {
        let c = rem[i + dl] / lead;
        q[i] = c;
        for (j, &d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    q
}

/// A fitted rational generating function `numerator / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFit {
    pub numerator: Vec<Rat>,
    pub denominator: IntPolynomial,
}

/// Finds the lowest-degree product of cyclotomic polynomials `Φ_j`
/// (`j ≤ root_orders`, total degree `≤ denom_degree`) that annihilates the
/// second half of the sequence. Returns `None` if the sequence is shorter than
/// `2·denom_degree + 4` or no candidate fits exactly.
pub fn rational_fit(seq: &[Rat], denom_degree: usize, root_orders: usize) -> Option<RationalFit> {
    if seq.len() < 2 * denom_degree + 4 || root_orders == 0 {
        return None;
    }
    let cyc: Vec<IntPolynomial> = (1..=root_orders).map(cyclotomic).collect();
    let degs: Vec<usize> = cyc.iter().map(|c| c.degree().unwrap_or(0)).collect();
    // All exponent vectors with Σ e_j deg Φ_j ≤ denom_degree.
    let mut candidates: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut e = vec![0usize; cyc.len()];
    loop {
        let total: usize = e.iter().zip(&degs).map(|(a, b)| a * b).sum();
        if total <= denom_degree {
            candidates.push((total, e.clone()));
        }
        let mut i = 0;
        loop {
            if i == e.len() {
                candidates.sort();
                return fit_candidates(seq, &cyc, &candidates);
            }
            e[i] += 1;
            let t: usize = e.iter().zip(&degs).map(|(a, b)| a * b).sum();
            if t <= denom_degree {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}

fn fit_candidates(seq: &[Rat], cyc: &[IntPolynomial], candidates: &[(usize, Vec<usize>)]) -> Option<RationalFit> {
    let start = seq.len().div_ceil(2);
    for (_, exps) in candidates {
        let mut q = IntPolynomial::one();
        for (c, &m) in cyc.iter().zip(exps) {
            for _ in 0..m {
                q = q.mul(c);
            }
        }
        let coeff = |k: usize| -> Rat {
            (0..=k.min(q.degree().unwrap_or(0)))
                .map(|j| rat(q.coeff(j)) * &seq[k - j])
                .sum()
        };
        if (start..seq.len()).all(|k| coeff(k).is_zero()) {
            let mut numerator: Vec<Rat> = (0..start).map(coeff).collect();
            while numerator.last().is_some_and(|c| c.is_zero()) {
                numerator.pop();
            }
            return Some(RationalFit {
                numerator,
                denominator: q,
            });
        }
    }
    None
}

/// Expands `numerator / denominator` to `len` terms.
pub fn expand_rational(fit: &RationalFit, len: usize) -> Vec<Rat> {
    let q = &fit.denominator;
    let q0 = rat(q.coeff(0));
    let mut out: Vec<Rat> = Vec::with_capacity(len);
    for k in 0..len {
        let mut v = fit.numerator.get(k).cloned().unwrap_or_else(Rat::zero);
        for j in 1..=k.min(q.degree().unwrap_or(0)) {
            v -= rat(q.coeff(j)) * &out[k - j];
        }
        out.push(v / &q0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prof(parts: &[usize]) -> ExpProfile {
        ExpProfile::from_partition(&Partition::new(parts.to_vec()))
    }

    #[test]
    fn c_coefficients() {
        assert_eq!(c_coeffs(&prof(&[1]), 4), vec![1, -1, 0, 0, 0]);
        assert_eq!(c_coeffs(&ExpProfile::zero(), 3), vec![1, 0, 0, 0]);
        assert_eq!(c_coeffs(&prof(&[2]), 4), vec![1, 0, -1, 0, 0]);
    }

    #[test]
    fn e_one_is_u_one() {
        let a = prof(&[1]);
        assert_eq!(e_elem(&a, 1, 4).unwrap(), a.u(1, 4).unwrap());
    }

    #[test]
    fn reduce_k2_p3() {
        let r = reduce_mod_e(2, &Partition::new(vec![3]), 3).unwrap();
        let expect = SymFunc::from_terms(
            3,
            [
                (Partition::new(vec![2, 1]), rat_frac(3, 2)),
                (Partition::new(vec![1, 1, 1]), rat_frac(-1, 2)),
            ],
        );
        assert_eq!(r, expect);
    }

    fn rat_frac(a: i64, b: i64) -> Rat {
        crate::exactla::rat_frac(a, b)
    }

    #[test]
    fn class_function_examples() {
        let cf = ClassFnParams { nu: Partition::empty(), a: prof(&[1, 1]) };
        assert_eq!(class_fn_eval(&cf, &Partition::new(vec![2, 1])), rat(4));
        let cf = ClassFnParams { nu: Partition::empty(), a: prof(&[2]) };
        assert_eq!(class_fn_eval(&cf, &Partition::new(vec![2, 2])), rat(4));
        assert_eq!(class_fn_eval(&cf, &Partition::new(vec![2, 1])), rat(0));
    }

    #[test]
    fn part_rk_listing() {
        let v: Vec<String> = part_rk(3, 2).iter().map(|p| p.to_string()).collect();
        assert_eq!(v.len(), 6);
        assert!(part_rk(2, 2).iter().all(|p| p.rank() < 2));
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1).coeffs(), &[1, -1]);
        assert_eq!(cyclotomic(2).coeffs(), &[1, 1]);
        assert_eq!(cyclotomic(3).coeffs(), &[1, 1, 1]);
        assert_eq!(cyclotomic(4).coeffs(), &[1, 0, 1]);
    }

    #[test]
    fn fit_constant_and_reject_exponential() {
        let ones: Vec<Rat> = (0..10).map(|_| rat(1)).collect();
        let f = rational_fit(&ones, 2, 2).unwrap();
        assert_eq!(f.denominator.coeffs(), &[1, -1]);
        assert_eq!(f.numerator, vec![rat(1)]);
        let grow: Vec<Rat> = (0..12).map(|n| rat(n * (1 << n))).collect();
        assert!(rational_fit(&grow, 4, 4).is_none());
        assert!(rational_fit(&ones[..5], 2, 2).is_none());
    }
}

#[cfg(test)]
mod example_tests {
    use super::*;
    use crate::exactla::rat_frac;

    fn prof(parts: &[usize]) -> ExpProfile {
        ExpProfile::from_partition(&Partition::new(parts.to_vec()))
    }

    #[test]
    fn pi_two_of_p2_exp_y1() {
        let n = 10;
        let a = prof(&[1]);
        let f = SymFunc::p_single(2, n).unwrap().mul(&a.exp_series(n)).unwrap();
        let mut expect = SymFunc::zero(n);
        for m in 2..=n {
            expect = expect.add(&SymFunc::p_single(m, n).unwrap()).unwrap();
        }
        let expect = expect.mul(&a.exp_series(n)).unwrap();
        assert_eq!(pi_k(&f, 2).unwrap(), expect);
        assert_eq!(pi_k(&a.exp_series(n), 2).unwrap(), a.exp_series(n));
    }

    #[test]
    fn l_nu_duality_small() {
        let a = prof(&[1]);
        let (r, k, n) = (3, 2, 6);
        let parts = part_rk(r, k);
        let ls: Vec<SymFunc> = parts.iter().map(|nu| l_nu(nu, &a, r, k, n).unwrap()).collect();
        for lam in &parts {
            let e = e_partition(&a, lam, n).unwrap();
            for (nu, l) in parts.iter().zip(&ls) {
                let v = e.hall_pair(l).unwrap();
                assert_eq!(v, if lam == nu { rat(1) } else { rat(0) }, "{lam} {nu}");
            }
        }
    }

    #[test]
    fn generating_function_and_worked_example() {
        let a = prof(&[1]);
        assert!(genfunction_check(&a, 3, 2, 8).unwrap());
        for n in 4..=8 {
            let q = u_n_in_quotient(&a, 3, 2, n).unwrap();
            assert_eq!(q, u_n_by_reduction(&a, 3, 2, n).unwrap());
            let nn = n as i64;
            let pt = |v: &[usize]| Partition::new(v.to_vec());
            assert_eq!(q.coeff(&pt(&[1])), rat(0));
            assert_eq!(q.coeff(&pt(&[2])), rat_frac(nn, 2));
            assert_eq!(q.coeff(&pt(&[1, 1])), rat_frac(-nn, 2));
            assert_eq!(q.coeff(&pt(&[2, 1])), rat_frac(nn, 2));
            assert_eq!(q.coeff(&pt(&[2, 2])), rat_frac(nn * (nn - 3), 8));
            assert_eq!(q.coeff(&pt(&[1, 1, 1])), rat(0));
        }
    }
}

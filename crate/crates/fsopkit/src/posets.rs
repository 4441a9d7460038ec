//! Finite posets, the Boolean, subspace and partition lattice families,
//! relative interval complexes, Möbius numbers and Whitney polynomials.
//!
//! Conventions: elements are `0..size`; the top element, when present, is
//! the unique maximum; ranks are measured downward from the top, so
//! `rank(top) = 0` and a cover `p ⋖ q` has `rank(p) = rank(q) + 1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactla::{Rat, RatMatrix, RationalChainComplex};
use crate::limits::Limits;

/// A finite strict partial order on `0..size`.
#[derive(Clone)]
pub struct FinitePoset {
    size: usize,
    above: Vec<FixedBitSet>,
    below: Vec<FixedBitSet>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
    top: Option<usize>,
    labels: Vec<String>,
    rank_of: Option<Vec<usize>>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinitePoset")
            .field("size", &self.size)
            .field("top", &self.top)
            .field("covers", &self.covering_pairs())
            .finish()
    }
}

impl PartialEq for FinitePoset {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.above == other.above
    }
}

impl Eq for FinitePoset {}

impl FinitePoset {
    /// Builds the order generated by the pairs `(i, j)` meaning `i < j`.
    /// The pairs need not be covers; the transitive closure is taken.
    /// Fails if the pairs contain a cycle or a reflexive pair.
    pub fn from_relations(
        size: usize,
        pairs: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut indeg = vec![0usize; size];
        for &(i, j) in pairs {
            if i >= size || j >= size {
                return invalid(format!("relation ({i},{j}) outside 0..{size}"));
            }
            if i == j {
                return invalid(format!("reflexive relation ({i},{i})"));
            }
            up[i].push(j);
            indeg[j] += 1;
        }
        // Kahn's algorithm; a leftover element means a cycle.
        let mut order = Vec::with_capacity(size);
        let mut stack: Vec<usize> = (0..size).filter(|&i| indeg[i] == 0).rev().collect();
        while let Some(i) = stack.pop() {
            order.push(i);
            for &j in &up[i] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    stack.push(j);
                }
            }
        }
        if order.len() != size {
            return invalid("relations contain a cycle");
        }
        let mut above = vec![FixedBitSet::with_capacity(size); size];
        for &i in order.iter().rev() {
            let mut set = FixedBitSet::with_capacity(size);
            for &j in &up[i] {
                set.insert(j);
                set.union_with(&above[j]);
            }
            above[i] = set;
        }
        Self::from_closure(above, labels)
    }

    fn from_closure(above: Vec<FixedBitSet>, labels: Option<Vec<String>>) -> Result<Self> {
        let size = above.len();
        let labels = match labels {
            Some(l) if l.len() == size => l,
            Some(l) => {
                return invalid(format!("{} labels for {} elements", l.len(), size));
            }
            None => (0..size).map(|i| i.to_string()).collect(),
        };
        let mut below = vec![FixedBitSet::with_capacity(size); size];
        for (i, a) in above.iter().enumerate() {
            for j in a.ones() {
                below[j].insert(i);
            }
        }
        let mut covers_up = vec![Vec::new(); size];
        let mut covers_down = vec![Vec::new(); size];
        for i in 0..size {
            for j in above[i].ones() {
                // j covers i iff nothing strictly between.
                if above[i].is_disjoint(&below[j]) {
                    covers_up[i].push(j);
                    covers_down[j].push(i);
                }
            }
        }
        let top = (0..size).find(|&t| below[t].count_ones(..) + 1 == size);
        let mut p = FinitePoset {
            size,
            above,
            below,
            covers_up,
            covers_down,
            top,
            labels,
            rank_of: None,
        };
        p.rank_of = p.compute_grading();
        Ok(p)
    }

    fn compute_grading(&self) -> Option<Vec<usize>> {
        let top = self.top?;
        let mut rank: Vec<Option<usize>> = vec![None; self.size];
        rank[top] = Some(0);
        let mut queue = std::collections::VecDeque::from([top]);
        while let Some(q) = queue.pop_front() {
            let rq = rank[q].expect("ranked");
            for &p in &self.covers_down[q] {
                match rank[p] {
                    None => {
                        rank[p] = Some(rq + 1);
                        queue.push_back(p);
                    }
                    Some(rp) if rp != rq + 1 => return None,
                    Some(_) => {}
                }
            }
        }
        rank.into_iter().collect()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Strict order `i < j`.
    pub fn less(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(j)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i == j || self.less(i, j)
    }

    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Elements strictly above `i`, ascending.
    pub fn above(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.above[i].ones()
    }

    /// Elements strictly below `i`, ascending.
    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.below[i].ones()
    }

    pub fn covers_up(&self, i: usize) -> &[usize] {
        &self.covers_up[i]
    }

    pub fn covers_down(&self, i: usize) -> &[usize] {
        &self.covers_down[i]
    }

    /// All covering pairs `(i, j)` with `i ⋖ j`, sorted.
    pub fn covering_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.size)
            .flat_map(|i| self.covers_up[i].iter().map(move |&j| (i, j)))
            .collect()
    }

    /// Number of strict relations `i < j`.
    pub fn relation_count(&self) -> usize {
        self.above.iter().map(|a| a.count_ones(..)).sum()
    }

    pub fn is_graded(&self) -> bool {
        self.rank_of.is_some()
    }

    /// `rank_of[p] = r(p, top)` when the poset is graded with a top.
    pub fn grading(&self) -> Option<&[usize]> {
        self.rank_of.as_deref()
    }

    pub fn rank(&self, p: usize) -> Option<usize> {
        self.rank_of.as_ref().map(|r| r[p])
    }

    /// All chains `x = q_s < … < q_0 = top`, each listed as `[q_0, …, q_s]`,
    /// sorted first by length then lexicographically.
    pub fn chains_to_top(&self, x: usize) -> Result<Vec<Vec<usize>>> {
        let top = self.top.ok_or(Error::NoTop)?;
        let mut out = Vec::new();
        let mut stack = vec![x];
        self.extend_chains(x, top, &mut stack, &mut out);
        for c in &mut out {
            c.reverse();
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    fn extend_chains(&self, cur: usize, top: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur == top {
            out.push(stack.clone());
            return;
        }
        for y in self.above[cur].ones() {
            stack.push(y);
            self.extend_chains(y, top, stack, out);
            stack.pop();
        }
    }

    /// Number of chains from `y` up to the top with `k` steps, for every
    /// element `y` and every `k`.
    pub fn chain_counts_to_top(&self) -> Result<Vec<Vec<u128>>> {
        let top = self.top.ok_or(Error::NoTop)?;
        let mut counts: Vec<Option<Vec<u128>>> = vec![None; self.size];
        // Process elements from the top down: an element only needs elements above it.
        let mut order: Vec<usize> = (0..self.size).collect();
        order.sort_by_key(|&i| self.above[i].count_ones(..));
        for y in order {
            let v = if y == top {
                vec![1u128]
            } else {
                let mut v = vec![0u128];
                for z in self.above[y].ones() {
                    let cz = counts[z].as_ref().expect("processed above first");
                    if v.len() < cz.len() + 1 {
                        v.resize(cz.len() + 1, 0);
                    }
                    for (k, c) in cz.iter().enumerate() {
                        v[k + 1] += c;
                    }
                }
                v
            };
            counts[y] = Some(v);
        }
        Ok(counts.into_iter().map(|c| c.expect("all processed")).collect())
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            size: self.size,
            relations: self.covering_pairs().into_iter().map(|(i, j)| [i, j]).collect(),
            top: self.top,
            labels: Some(self.labels.clone()),
        }
    }

    pub fn from_json_str(s: &str, limits: &Limits) -> Result<Self> {
        let j: PosetJson = serde_json::from_str(s)?;
        Self::from_json(&j, limits)
    }

    pub fn from_json(j: &PosetJson, limits: &Limits) -> Result<Self> {
        Limits::check("poset size", j.size, limits.poset_max_size)?;
        let pairs: Vec<(usize, usize)> = j.relations.iter().map(|r| (r[0], r[1])).collect();
        let p = Self::from_relations(j.size, &pairs, j.labels.clone())?;
        if let Some(t) = j.top {
            if p.top != Some(t) {
                return invalid(format!("declared top {t} is not the maximum"));
            }
        }
        Ok(p)
    }
}

/// Serialized form of a poset: covering pairs `[i, j]` meaning `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetJson {
    pub size: usize,
    pub relations: Vec<[usize; 2]>,
    #[serde(default)]
    pub top: Option<usize>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

// ---------------------------------------------------------------------------
// Families.

pub fn boolean_lattice(n: usize) -> Result<FinitePoset> {
    boolean_lattice_with(n, &Limits::DEFAULT)
}

/// Subsets of `{1..n}` by inclusion; element `i` is the subset with bitmask `i`.
pub fn boolean_lattice_with(n: usize, limits: &Limits) -> Result<FinitePoset> {
    Limits::check("boolean lattice n", n, limits.boolean_max_n)?;
    let size = 1usize << n;
    let mut covers = Vec::new();
    for s in 0..size {
        for b in 0..n {
            if s & (1 << b) == 0 {
                covers.push((s, s | (1 << b)));
            }
        }
    }
    let labels = (0..size)
        .map(|s| {
            let items: Vec<String> = (0..n).filter(|b| s & (1 << b) != 0).map(|b| (b + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    FinitePoset::from_relations(size, &covers, Some(labels))
}

pub fn partition_lattice(n: usize) -> Result<FinitePoset> {
    partition_lattice_with(n, &Limits::DEFAULT)
}

/// All restricted growth strings of length `n` in lexicographic order.
pub fn set_partitions(n: usize) -> Vec<Vec<u8>> {
    fn go(prefix: &mut Vec<u8>, max: u8, n: usize, out: &mut Vec<Vec<u8>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let hi = if prefix.is_empty() { 0 } else { max + 1 };
        for v in 0..=hi {
            prefix.push(v);
            go(prefix, max.max(v), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), 0, n, &mut out);
    out
}

/// Blocks of a restricted growth string, each listed ascending, ordered by minimum.
pub fn rgs_blocks(rgs: &[u8]) -> Vec<Vec<usize>> {
    let k = rgs.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
    let mut blocks = vec![Vec::new(); k];
    for (i, &b) in rgs.iter().enumerate() {
        blocks[b as usize].push(i);
    }
    blocks
}

/// Normalizes a block assignment into a restricted growth string.
pub fn normalize_rgs(assign: &[usize]) -> Vec<u8> {
    let mut map = HashMap::new();
    assign
        .iter()
        .map(|a| {
            let next = map.len() as u8;
            *map.entry(*a).or_insert(next)
        })
        .collect()
}

/// Label like `1|23|4` (1-based positions, blocks ordered by minimum).
pub fn partition_label(rgs: &[u8]) -> String {
    if rgs.is_empty() {
        return "∅".to_string();
    }
    rgs_blocks(rgs)
        .iter()
        .map(|b| b.iter().map(|i| (i + 1).to_string()).collect::<String>())
        .collect::<Vec<_>>()
        .join("|")
}

/// Set partitions of `[n]` with `p ≤ q` iff `q` refines `p`; the
/// indiscrete partition is the bottom (index 0) and the discrete partition
/// is the top. Elements are indexed by lexicographic order of their
/// restricted growth strings.
pub fn partition_lattice_with(n: usize, limits: &Limits) -> Result<FinitePoset> {
    Limits::check("partition lattice n", n, limits.partition_max_n)?;
    let parts = set_partitions(n);
    let index: HashMap<Vec<u8>, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let mut covers = Vec::new();
    for (qi, q) in parts.iter().enumerate() {
        let k = q.iter().map(|&v| v + 1).max().unwrap_or(0);
        for a in 0..k {
            for b in a + 1..k {
                let merged: Vec<usize> = q.iter().map(|&v| if v == b { a as usize } else { v as usize }).collect();
                covers.push((index[&normalize_rgs(&merged)], qi));
            }
        }
    }
    let labels = parts.iter().map(|p| partition_label(p)).collect();
    FinitePoset::from_relations(parts.len(), &covers, Some(labels))
}

/// Arithmetic in GF(q) for q ∈ {2, 3, 4, 5}; elements are `0..q`.
#[derive(Clone, Copy, Debug)]
struct SmallField {
    q: usize,
}

impl SmallField {
    fn new(q: usize) -> Result<Self> {
        match q {
            2..=5 => Ok(SmallField { q }),
            _ => invalid(format!("subspace lattices need q in {{2,3,4,5}}, got {q}")),
        }
    }

    fn add(self, a: usize, b: usize) -> usize {
        if self.q == 4 {
            a ^ b
        } else {
            (a + b) % self.q
        }
    }

    fn mul(self, a: usize, b: usize) -> usize {
        if self.q == 4 {
            // GF(2)[x]/(x^2+x+1) with 2 = x, 3 = x+1.
            const T: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
            T[a][b]
        } else {
            (a * b) % self.q
        }
    }
}

pub fn subspace_lattice(q: usize, n: usize) -> Result<FinitePoset> {
    subspace_lattice_with(q, n, &Limits::DEFAULT)
}

/// Subspaces of GF(q)^n ordered by containment, indexed by (dimension,
/// reduced echelon matrix read row-major) in lexicographic order.
pub fn subspace_lattice_with(q: usize, n: usize, limits: &Limits) -> Result<FinitePoset> {
    Limits::check("subspace lattice n", n, limits.subspace_max_n)?;
    let f = SmallField::new(q)?;
    let mut reps: Vec<(usize, Vec<usize>)> = Vec::new();
    for k in 0..=n {
        for pivots in combinations(n, k) {
            let mut free = Vec::new();
            for (i, &pc) in pivots.iter().enumerate() {
                for j in pc + 1..n {
                    if !pivots.contains(&j) {
                        free.push(i * n + j);
                    }
                }
            }
            let count = q.pow(free.len() as u32);
            for code in 0..count {
                let mut m = vec![0usize; k * n];
                for (i, &pc) in pivots.iter().enumerate() {
                    m[i * n + pc] = 1;
                }
                let mut c = code;
                for &pos in free.iter().rev() {
                    m[pos] = c % q;
                    c /= q;
                }
                reps.push((k, m));
            }
        }
    }
    reps.sort();
    let nvec = q.pow(n as u32);
    let encode = |v: &[usize]| v.iter().fold(0usize, |acc, &x| acc * q + x);
    let vecsets: Vec<FixedBitSet> = reps
        .iter()
        .map(|(k, m)| {
            let mut set = FixedBitSet::with_capacity(nvec);
            for code in 0..q.pow(*k as u32) {
                let mut coeffs = vec![0usize; *k];
                let mut c = code;
                for x in coeffs.iter_mut().rev() {
                    *x = c % q;
                    c /= q;
                }
                let mut v = vec![0usize; n];
                for (i, &a) in coeffs.iter().enumerate() {
                    for j in 0..n {
                        v[j] = f.add(v[j], f.mul(a, m[i * n + j]));
                    }
                }
                set.insert(encode(&v));
            }
            set
        })
        .collect();
    let mut covers = Vec::new();
    for (i, (ki, _)) in reps.iter().enumerate() {
        for (j, (kj, _)) in reps.iter().enumerate() {
            if *kj == ki + 1 && vecsets[i].is_subset(&vecsets[j]) {
                covers.push((i, j));
            }
        }
    }
    let labels = reps
        .iter()
        .map(|(k, m)| {
            if *k == 0 {
                "0".to_string()
            } else {
                let rows: Vec<String> = (0..*k)
                    .map(|i| m[i * n..(i + 1) * n].iter().map(|x| x.to_string()).collect::<String>())
                    .collect();
                format!("<{}>", rows.join(","))
            }
        })
        .collect();
    FinitePoset::from_relations(reps.len(), &covers, Some(labels))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Mixed-radix encoding for product posets: the first factor is the most
/// significant digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedRadix {
    pub radices: Vec<usize>,
}

impl MixedRadix {
    pub fn encode(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.radices).fold(0, |acc, (&d, &r)| acc * r + d)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = idx % r;
            idx /= r;
        }
        out
    }

    pub fn total(&self) -> usize {
        self.radices.iter().product()
    }
}

/// Componentwise order on the cartesian product.
pub fn product_poset(ps: &[&FinitePoset]) -> Result<FinitePoset> {
    if ps.iter().any(|p| p.size() == 0) {
        return invalid("product factors must be nonempty");
    }
    let radix = MixedRadix {
        radices: ps.iter().map(|p| p.size()).collect(),
    };
    let total = radix.total();
    let mut covers = Vec::new();
    let mut labels = Vec::with_capacity(total);
    for idx in 0..total {
        let digits = radix.decode(idx);
        for (t, p) in ps.iter().enumerate() {
            for &up in p.covers_up(digits[t]) {
                let mut d2 = digits.clone();
                d2[t] = up;
                covers.push((idx, radix.encode(&d2)));
            }
        }
        let parts: Vec<&str> = digits.iter().zip(ps).map(|(&d, p)| p.label(d)).collect();
        labels.push(format!("({})", parts.join(", ")));
    }
    FinitePoset::from_relations(total, &covers, Some(labels))
}

// ---------------------------------------------------------------------------
// Interval complexes and Möbius numbers.

/// Simplicial chains of the pair `(N[x, top], Z)`: degree `s` is spanned by
/// the chains `x = q_s < … < q_0 = top`, and the boundary drops an interior
/// element `q_i` with sign `(−1)^i` (faces missing an endpoint lie in `Z`).
pub fn interval_pair_complex(p: &FinitePoset, x: usize) -> Result<RationalChainComplex> {
    let top = p.top().ok_or(Error::NoTop)?;
    if x >= p.size() || !p.leq(x, top) {
        return invalid(format!("element {x} is not below the top"));
    }
    let chains = p.chains_to_top(x)?;
    let maxs = chains.iter().map(|c| c.len() - 1).max().unwrap_or(0);
    let mut by_deg: Vec<Vec<Vec<usize>>> = vec![Vec::new(); maxs + 1];
    for c in chains {
        by_deg[c.len() - 1].push(c);
    }
    let index: Vec<HashMap<Vec<usize>, usize>> = by_deg
        .iter()
        .map(|cs| cs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let dims: Vec<usize> = by_deg.iter().map(|v| v.len()).collect();
    let mut maps = Vec::new();
    for s in 1..=maxs {
        let mut m = RatMatrix::zeros(dims[s - 1], dims[s]);
        for (col, c) in by_deg[s].iter().enumerate() {
            for i in 1..s {
                let mut face = c.clone();
                face.remove(i);
                let row = index[s - 1][&face];
                let sign = if i % 2 == 0 { Rat::one() } else { -Rat::one() };
                m.add_to(row, col, &sign);
            }
        }
        maps.push(m);
    }
    RationalChainComplex::new(dims, maps)
}

/// Möbius number `μ(x) = μ(x, top)`, the Euler characteristic of the
/// interval pair complex, computed from its chain counts.
pub fn mobius(p: &FinitePoset, x: usize) -> Result<i64> {
    let top = p.top().ok_or(Error::NoTop)?;
    if x >= p.size() || !p.leq(x, top) {
        return invalid(format!("element {x} is not below the top"));
    }
    Ok(mobius_all(p)?[x])
}

/// Möbius numbers of every element.
pub fn mobius_all(p: &FinitePoset) -> Result<Vec<i64>> {
    let counts = p.chain_counts_to_top()?;
    Ok(counts
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .map(|(k, &n)| if k % 2 == 0 { n as i128 } else { -(n as i128) })
                .sum::<i128>() as i64
        })
        .collect())
}

/// Integer polynomial in `t`, coefficients by degree with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn one() -> Self {
        Self::new(vec![1])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::new(vec![]);
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Product of linear factors `1 − c·t`.
    pub fn product_of_linear(cs: &[i64]) -> IntPolynomial {
        cs.iter()
            .fold(Self::one(), |acc, &c| acc.mul(&Self::new(vec![1, -c])))
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders as `1 -6t +11t^2 -6t^3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            if !first {
                write!(f, " ")?;
            }
            let mag = c.unsigned_abs();
            let num = if k > 0 && mag == 1 { String::new() } else { mag.to_string() };
            let var = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            write!(f, "{sign}{num}{var}")?;
            first = false;
        }
        Ok(())
    }
}

/// `Σ_p μ(p) t^{r(p)}`.
pub fn whitney_polynomial(p: &FinitePoset) -> Result<IntPolynomial> {
    let ranks = p.grading().ok_or(Error::NotGraded)?;
    let mu = mobius_all(p)?;
    let deg = ranks.iter().copied().max().unwrap_or(0);
    let mut c = vec![0i64; deg + 1];
    for (x, &r) in ranks.iter().enumerate() {
        c[r] += mu[x];
    }
    Ok(IntPolynomial::new(c))
}

/// Graded with a top, and every interval pair complex has homology only in
/// degree `r(x)`.
pub fn is_upper_cm(p: &FinitePoset) -> bool {
    let Some(ranks) = p.grading() else {
        return false;
    };
    (0..p.size()).all(|x| match interval_pair_complex(p, x) {
        Ok(c) => c.is_exact_in(0..ranks[x]),
        Err(_) => false,
    })
}

/// Homology dimensions of every interval pair complex, keyed by element.
pub fn interval_homology(p: &FinitePoset) -> Result<BTreeMap<usize, Vec<usize>>> {
    (0..p.size())
        .map(|x| Ok((x, interval_pair_complex(p, x)?.homology_dims())))
        .collect()
}

/// `(−1)^{r(x)} μ(x)`; the top homology dimension on upper-CM posets.
pub fn mobius_tilde(p: &FinitePoset, x: usize) -> Result<i64> {
    let r = p.rank(x).ok_or(Error::NotGraded)?;
    let m = mobius(p, x)?;
    Ok(if r % 2 == 0 { m } else { -m })
}

pub(crate) fn sign(k: usize) -> Rat {
    if k % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        assert_eq!(boolean_lattice(0).unwrap().size(), 1);
        let b2 = boolean_lattice(2).unwrap();
        assert_eq!((b2.size(), b2.relation_count()), (4, 5));
        assert_eq!(partition_lattice(2).unwrap().size(), 2);
        assert_eq!(subspace_lattice(2, 1).unwrap().size(), 2);
        assert!(boolean_lattice(13).is_err());
        assert!(subspace_lattice(6, 2).is_err());
    }

    #[test]
    fn polynomial_display() {
        let p = IntPolynomial::product_of_linear(&[1, 2, 3]);
        assert_eq!(p.to_string(), "1 -6t +11t^2 -6t^3");
        assert_eq!(IntPolynomial::product_of_linear(&[1, 1, 1]).to_string(), "1 -3t +3t^2 -t^3");
        assert_eq!(IntPolynomial::one().to_string(), "1");
    }

    #[test]
    fn interval_complex_of_b2_bottom() {
        let b2 = boolean_lattice(2).unwrap();
        let c = interval_pair_complex(&b2, 0).unwrap();
        assert_eq!(c.dims(), &[0, 1, 2]);
        assert_eq!(c.homology_dims(), vec![0, 0, 1]);
        let t = interval_pair_complex(&b2, 3).unwrap();
        assert_eq!(t.homology_dims(), vec![1]);
    }

    #[test]
    fn cyclic_relations_rejected() {
        assert!(FinitePoset::from_relations(2, &[(0, 1), (1, 0)], None).is_err());
        assert!(FinitePoset::from_relations(2, &[(0, 0)], None).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let p = partition_lattice(3).unwrap();
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let q = FinitePoset::from_json_str(&j, &Limits::DEFAULT).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.label(0), "123");
        assert_eq!(q.label(4), "1|2|3");
    }
}

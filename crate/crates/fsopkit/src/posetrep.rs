//! Representations of finite posets and the chain complexes built from them.
//!
//! A [`PosetRep`] assigns a vector space `M_p` to each element and a linear
//! map `M_p → M_q` to each relation `p ≤ q`. Chains are always written
//! downward from the top, omitting the top itself: the chain
//! `top > p_1 > … > p_s` is stored as `[p_1, …, p_s]`.
//!
//! The bar complex `B(M)` has the pairs `(chain, v)` with `v ∈ M_{p_s}` in
//! degree `s`. Its differential is `Σ_{i=1}^{s} (−1)^i ∂_i`: for `i < s` the
//! face `∂_i` deletes `p_i`, and `∂_s` deletes `p_s` while pushing `v` along
//! `M_{p_s} → M_{p_{s−1}}` (with `p_0 = top`).
//!
//! The Koszul complex is the subcomplex whose degree-`s` part is
//! `⊕_{r(p)=s} Z_p ⊗ M_p`, where `Z_p` is the space of cycles of the
//! interior-face alternation on saturated chains ending at `p`.

use std::borrow::Cow;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactla::{
    format_rat, kernel_basis, parse_rat, Rat, RatMatrix, RationalChainComplex, Rref,
};
use crate::limits::Limits;
use crate::posets::{is_upper_cm, sign, FinitePoset, MixedRadix, PosetJson};

#[derive(Clone, Debug)]
pub struct PosetRep {
    poset: Arc<FinitePoset>,
    dims: Vec<usize>,
    /// Maps for `p < q` with both dimensions positive.
    maps: HashMap<(usize, usize), RatMatrix>,
}

impl PosetRep {
    /// Builds a representation from the maps on covering pairs. Maps along
    /// longer relations are obtained by composition, and every alternative
    /// composite is checked to agree.
    pub fn from_cover_maps(
        poset: Arc<FinitePoset>,
        dims: Vec<usize>,
        cover_maps: &BTreeMap<(usize, usize), RatMatrix>,
    ) -> Result<Self> {
        let n = poset.size();
        if dims.len() != n {
            return invalid(format!("{} dimensions for {} elements", dims.len(), n));
        }
        for (&(p, q), m) in cover_maps {
            if p >= n || q >= n || !poset.covers_up(p).contains(&q) {
                return invalid(format!("({p},{q}) is not a covering pair"));
            }
            if m.nrows() != dims[q] || m.ncols() != dims[p] {
                return Err(Error::Shape(format!(
                    "map for ({p},{q}) is {}x{}, expected {}x{}",
                    m.nrows(),
                    m.ncols(),
                    dims[q],
                    dims[p]
                )));
            }
        }
        let mut rep = PosetRep {
            poset: poset.clone(),
            dims,
            maps: HashMap::new(),
        };
        let cover = |p: usize, q: usize, rep: &PosetRep| -> RatMatrix {
            cover_maps
                .get(&(p, q))
                .cloned()
                .unwrap_or_else(|| RatMatrix::zeros(rep.dims[q], rep.dims[p]))
        };
        // Visit elements from the top down so that maps out of covers exist.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| poset.above(i).count());
        for p in order {
            if rep.dims[p] == 0 {
                continue;
            }
            let ups: Vec<usize> = poset.above(p).collect();
            for r in ups {
                if rep.dims[r] == 0 {
                    continue;
                }
                let mut value: Option<RatMatrix> = None;
                for &c in poset.covers_up(p) {
                    if !poset.leq(c, r) {
                        continue;
                    }
                    let first = cover(p, c, &rep);
                    let composite = if c == r {
                        first
                    } else {
                        rep.map(c, r).mul(&first)?
                    };
                    match &value {
                        None => value = Some(composite),
                        Some(v) if *v != composite => {
                            return Err(Error::NotFunctorial(format!(
                                "paths from {p} to {r} disagree"
                            )));
                        }
                        Some(_) => {}
                    }
                }
                rep.maps.insert((p, r), value.expect("some cover lies below r"));
            }
        }
        Ok(rep)
    }

    /// The constant representation with value `k^d` and identity maps.
    pub fn constant(poset: Arc<FinitePoset>, d: usize) -> Self {
        let n = poset.size();
        let mut maps = HashMap::new();
        if d > 0 {
            for p in 0..n {
                for q in poset.above(p) {
                    maps.insert((p, q), RatMatrix::identity(d));
                }
            }
        }
        PosetRep {
            poset,
            dims: vec![d; n],
            maps,
        }
    }

    /// Representation `p ↦ span{g : g ∈ gens[x], x ≤ p} ⊆ k^ambient` with
    /// inclusion maps. Always functorial.
    pub fn subspace_rep(
        poset: Arc<FinitePoset>,
        ambient: usize,
        gens: &[Vec<Vec<Rat>>],
    ) -> Result<Self> {
        let n = poset.size();
        let bases = Self::spans_below(&poset, ambient, gens)?;
        let basis_mats: Vec<RatMatrix> = bases
            .iter()
            .map(|r| {
                let mut m = RatMatrix::zeros(ambient, r.rank());
                for (c, row) in r.rows.iter().enumerate() {
                    for (j, v) in row {
                        m.set(*j, c, v.clone());
                    }
                }
                m
            })
            .collect();
        let dims: Vec<usize> = bases.iter().map(|b| b.rank()).collect();
        let mut maps = HashMap::new();
        for p in 0..n {
            for q in poset.above(p) {
                if dims[p] == 0 || dims[q] == 0 {
                    continue;
                }
                // Coordinates in the RREF basis of U_q are read at its pivots.
                let mut m = RatMatrix::zeros(dims[q], dims[p]);
                for c in 0..dims[p] {
                    let v = basis_mats[p].column(c);
                    for (i, &pc) in bases[q].pivots.iter().enumerate() {
                        m.set(i, c, v[pc].clone());
                    }
                }
                maps.insert((p, q), m);
            }
        }
        Ok(PosetRep { poset, dims, maps })
    }

    /// Representation `p ↦ k^ambient / span{g : g ∈ gens[x], x ≤ p}` with
    /// the induced quotient maps. Always functorial.
    pub fn quotient_rep(
        poset: Arc<FinitePoset>,
        ambient: usize,
        gens: &[Vec<Vec<Rat>>],
    ) -> Result<Self> {
        let n = poset.size();
        let rels = Self::spans_below(&poset, ambient, gens)?;
        let free: Vec<Vec<usize>> = rels.iter().map(|r| r.free_columns()).collect();
        let dims: Vec<usize> = free.iter().map(|f| f.len()).collect();
        let mut maps = HashMap::new();
        for p in 0..n {
            for q in poset.above(p) {
                if dims[p] == 0 || dims[q] == 0 {
                    continue;
                }
                let mut m = RatMatrix::zeros(dims[q], dims[p]);
                for (c, &f) in free[p].iter().enumerate() {
                    let mut v = BTreeMap::from([(f, Rat::one())]);
                    rels[q].reduce(&mut v);
                    for (i, &g) in free[q].iter().enumerate() {
                        if let Some(x) = v.get(&g) {
                            m.set(i, c, x.clone());
                        }
                    }
                }
                maps.insert((p, q), m);
            }
        }
        Ok(PosetRep { poset, dims, maps })
    }

    fn spans_below(poset: &FinitePoset, ambient: usize, gens: &[Vec<Vec<Rat>>]) -> Result<Vec<Rref>> {
        let n = poset.size();
        if gens.len() != n {
            return invalid("one generator list per element is required");
        }
        if gens.iter().flatten().any(|g| g.len() != ambient) {
            return invalid("generator of the wrong length");
        }
        Ok((0..n)
            .map(|p| {
                let rows = std::iter::once(p)
                    .chain(poset.below(p))
                    .flat_map(|x| gens[x].iter())
                    .map(|g| {
                        g.iter()
                            .enumerate()
                            .filter(|(_, v)| !v.is_zero())
                            .map(|(j, v)| (j, v.clone()))
                            .collect::<BTreeMap<_, _>>()
                    });
                Rref::from_rows(ambient, rows)
            })
            .collect())
    }

    pub(crate) fn from_parts_unchecked(
        poset: Arc<FinitePoset>,
        dims: Vec<usize>,
        maps: HashMap<(usize, usize), RatMatrix>,
    ) -> Self {
        PosetRep { poset, dims, maps }
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn dim(&self, p: usize) -> usize {
        self.dims[p]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// `M_{pq}` for `p ≤ q`. Panics if `p ≰ q`.
    pub fn map(&self, p: usize, q: usize) -> Cow<'_, RatMatrix> {
        assert!(self.poset.leq(p, q), "no map from {p} to {q}");
        if p == q {
            return Cow::Owned(RatMatrix::identity(self.dims[p]));
        }
        match self.maps.get(&(p, q)) {
            Some(m) => Cow::Borrowed(m),
            None => Cow::Owned(RatMatrix::zeros(self.dims[q], self.dims[p])),
        }
    }

    /// Checks `M_{qr}·M_{pq} = M_{pr}` for every triple `p ≤ q ≤ r`.
    pub fn is_functorial(&self) -> bool {
        let n = self.poset.size();
        for p in 0..n {
            for q in self.poset.above(p) {
                for r in self.poset.above(q) {
                    let lhs = self.map(q, r).mul(&self.map(p, q)).expect("shapes");
                    if lhs != *self.map(p, r) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_json(&self) -> RepJson {
        let mut maps = Vec::new();
        for (p, q) in self.poset.covering_pairs() {
            if self.dims[p] > 0 && self.dims[q] > 0 {
                let m = self.map(p, q);
                maps.push(MapJson {
                    from: p,
                    to: q,
                    matrix: m.to_dense().iter().map(|r| r.iter().map(format_rat).collect()).collect(),
                });
            }
        }
        RepJson {
            poset: self.poset.to_json(),
            dims: self.dims.clone(),
            maps,
        }
    }

    pub fn from_json_str(s: &str, limits: &Limits) -> Result<Self> {
        let j: RepJson = serde_json::from_str(s)?;
        Self::from_json(&j, limits)
    }

    pub fn from_json(j: &RepJson, limits: &Limits) -> Result<Self> {
        let poset = Arc::new(FinitePoset::from_json(&j.poset, limits)?);
        if j.dims.iter().any(|&d| d > limits.poset_max_size) {
            return invalid("representation dimension too large");
        }
        let mut covers = BTreeMap::new();
        for m in &j.maps {
            let rows = m.matrix.len();
            let cols = m.matrix.first().map_or(0, |r| r.len());
            let dense = m
                .matrix
                .iter()
                .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let mat = if rows == 0 {
                RatMatrix::zeros(j.dims.get(m.to).copied().unwrap_or(0), j.dims.get(m.from).copied().unwrap_or(0))
            } else {
                RatMatrix::from_dense(rows, cols, &dense)?
            };
            if covers.insert((m.from, m.to), mat).is_some() {
                return invalid(format!("duplicate map ({},{})", m.from, m.to));
            }
        }
        Self::from_cover_maps(poset, j.dims.clone(), &covers)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    pub from: usize,
    pub to: usize,
    /// Dense rows of rational strings; `dim(to)` rows by `dim(from)` columns.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepJson {
    pub poset: PosetJson,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: Vec<MapJson>,
}

/// An upward closed subset of a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetIdeal {
    poset: Arc<FinitePoset>,
    members: BTreeSet<usize>,
}

impl PosetIdeal {
    pub fn new(poset: Arc<FinitePoset>, members: BTreeSet<usize>) -> Result<Self> {
        for &x in &members {
            if x >= poset.size() {
                return invalid(format!("element {x} out of range"));
            }
            if let Some(y) = poset.above(x).find(|y| !members.contains(y)) {
                return invalid(format!("not upward closed: {x} in, {y} above it out"));
            }
        }
        Ok(PosetIdeal { poset, members })
    }

    pub fn poset(&self) -> &Arc<FinitePoset> {
        &self.poset
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Labels of the members, in index order.
    pub fn member_labels(&self) -> Vec<String> {
        self.members.iter().map(|&x| self.poset.label(x).to_string()).collect()
    }
}

/// `{y : y ≥ x}`.
pub fn principal_ideal(p: &Arc<FinitePoset>, x: usize) -> Result<PosetIdeal> {
    if x >= p.size() {
        return invalid(format!("element {x} out of range"));
    }
    let members = std::iter::once(x).chain(p.above(x)).collect();
    Ok(PosetIdeal {
        poset: p.clone(),
        members,
    })
}

/// `k` on members, `0` elsewhere, identities between members.
pub fn ideal_rep(i: &PosetIdeal) -> PosetRep {
    let p = i.poset.clone();
    let dims: Vec<usize> = (0..p.size()).map(|x| usize::from(i.contains(x))).collect();
    let mut maps = HashMap::new();
    for &x in &i.members {
        for y in p.above(x) {
            maps.insert((x, y), RatMatrix::identity(1));
        }
    }
    PosetRep::from_parts_unchecked(p, dims, maps)
}

// ---------------------------------------------------------------------------
// Chain enumeration.

/// All chains below the top (as `[p_1, …, p_s]`, including the empty chain)
/// whose last element satisfies `keep`, grouped by length and sorted
/// lexicographically. `reach[x]` must be true whenever some `y ≤ x` is kept;
/// it prunes the search.
fn chains_from_top(
    p: &FinitePoset,
    keep: &dyn Fn(usize) -> bool,
    reach: &[bool],
) -> Result<Vec<Vec<Vec<usize>>>> {
    let top = p.top().ok_or(Error::NoTop)?;
    let mut by_len: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn go(
        p: &FinitePoset,
        cur: usize,
        keep: &dyn Fn(usize) -> bool,
        reach: &[bool],
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if keep(cur) {
            if out.len() <= stack.len() {
                out.resize(stack.len() + 1, Vec::new());
            }
            out[stack.len()].push(stack.clone());
        }
        let below: Vec<usize> = p.below(cur).collect();
        for y in below {
            if !reach[y] {
                continue;
            }
            stack.push(y);
            go(p, y, keep, reach, stack, out);
            stack.pop();
        }
    }
    if reach[top] {
        go(p, top, keep, reach, &mut stack, &mut by_len);
    }
    for v in &mut by_len {
        v.sort();
    }
    Ok(by_len)
}

fn reach_from_dims(p: &FinitePoset, dims: &[usize]) -> Vec<bool> {
    (0..p.size())
        .map(|x| dims[x] > 0 || p.below(x).any(|y| dims[y] > 0))
        .collect()
}

/// Last element of a chain, or the top for the empty chain.
fn endpoint(chain: &[usize], top: usize) -> usize {
    chain.last().copied().unwrap_or(top)
}

/// Bar complex of a representation of a poset with top.
pub fn bar_complex(m: &PosetRep) -> Result<RationalChainComplex> {
    let p = &*m.poset;
    let top = p.top().ok_or(Error::NoTop)?;
    let reach = reach_from_dims(p, &m.dims);
    let chains = chains_from_top(p, &|x| m.dims[x] > 0, &reach)?;
    if chains.is_empty() {
        return RationalChainComplex::new(vec![0], vec![]);
    }
    // Block offsets per degree.
    let mut offsets: Vec<HashMap<&[usize], usize>> = Vec::new();
    let mut dims = Vec::new();
    for cs in &chains {
        let mut off = HashMap::new();
        let mut total = 0;
        for c in cs {
            off.insert(c.as_slice(), total);
            total += m.dims[endpoint(c, top)];
        }
        offsets.push(off);
        dims.push(total);
    }
    let mut maps = Vec::new();
    for s in 1..chains.len() {
        let mut d = RatMatrix::zeros(dims[s - 1], dims[s]);
        for c in &chains[s] {
            let col0 = offsets[s][c.as_slice()];
            let ps = c[s - 1];
            let dim = m.dims[ps];
            for i in 1..s {
                let mut face = c.clone();
                face.remove(i - 1);
                let row0 = offsets[s - 1][face.as_slice()];
                for b in 0..dim {
                    d.add_to(row0 + b, col0 + b, &sign(i));
                }
            }
            let face = &c[..s - 1];
            let q = endpoint(face, top);
            if m.dims[q] > 0 {
                let row0 = offsets[s - 1][face];
                d.place(row0, col0, &m.map(ps, q), &sign(s));
            }
        }
        maps.push(d);
    }
    RationalChainComplex::new(dims, maps)
}

/// Cycle spaces of the interior-face alternation on saturated chains ending
/// at each element, as (saturated chains, kernel basis) pairs.
struct WhitneyCycles {
    chains: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    basis: RatMatrix,
    /// Row positions (free coordinates) at which the basis is the identity.
    free: Vec<usize>,
}

fn whitney_cycles(p: &FinitePoset, x: usize) -> Result<WhitneyCycles> {
    let r = p.rank(x).ok_or(Error::NotGraded)?;
    let all = p.chains_to_top(x)?;
    // Convert [top, ..., x] to [p_1, ..., p_s].
    let strip = |c: &Vec<usize>| c[1..].to_vec();
    let sat: Vec<Vec<usize>> = all.iter().filter(|c| c.len() == r + 1).map(strip).collect();
    let shorter: Vec<Vec<usize>> = all.iter().filter(|c| c.len() == r).map(strip).collect();
    let idx_short: HashMap<&[usize], usize> =
        shorter.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut d = RatMatrix::zeros(shorter.len(), sat.len());
    for (col, c) in sat.iter().enumerate() {
        for i in 1..r {
            let mut face = c.clone();
            face.remove(i - 1);
            d.add_to(idx_short[face.as_slice()], col, &sign(i));
        }
    }
    let basis = kernel_basis(&d);
    let free = Rref::of(&d).free_columns();
    let index = sat.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    Ok(WhitneyCycles {
        chains: sat,
        index,
        basis,
        free,
    })
}

/// Koszul complex of a representation of an upper Cohen–Macaulay poset.
pub fn koszul_complex(m: &PosetRep) -> Result<RationalChainComplex> {
    let p = &*m.poset;
    let top = p.top().ok_or(Error::NoTop)?;
    if !is_upper_cm(p) {
        return Err(Error::NotUpperCm);
    }
    let ranks = p.grading().expect("upper CM posets are graded").to_vec();
    let maxr = ranks.iter().copied().max().unwrap_or(0);
    let cycles: Vec<Option<WhitneyCycles>> = (0..p.size())
        .map(|x| {
            if m.dims[x] > 0 {
                whitney_cycles(p, x).map(Some)
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    // Offsets of the block for element x inside its degree.
    let mut offset = vec![0usize; p.size()];
    let mut dims = vec![0usize; maxr + 1];
    for x in 0..p.size() {
        if let Some(w) = &cycles[x] {
            offset[x] = dims[ranks[x]];
            dims[ranks[x]] += w.basis.ncols() * m.dims[x];
        }
    }
    let mut maps = Vec::new();
    for s in 1..=maxr {
        let mut d = RatMatrix::zeros(dims[s - 1], dims[s]);
        for x in (0..p.size()).filter(|&x| ranks[x] == s) {
            let Some(wx) = &cycles[x] else { continue };
            let dx = m.dims[x];
            // Image of (cycle k, basis b) is Σ_chains coef · (chain minus x, M_{x,q} e_b).
            // Group the truncated chains by their new endpoint q.
            for k in 0..wx.basis.ncols() {
                let mut by_q: BTreeMap<usize, Vec<(usize, Rat)>> = BTreeMap::new();
                for (ci, c) in wx.chains.iter().enumerate() {
                    let coef = wx.basis.get(ci, k);
                    if coef.is_zero() {
                        continue;
                    }
                    let face = &c[..s - 1];
                    let q = endpoint(face, top);
                    if m.dims[q] == 0 {
                        continue;
                    }
                    let wq = cycles[q].as_ref().expect("positive dimension");
                    by_q.entry(q).or_default().push((wq.index[face], coef));
                }
                for (q, terms) in by_q {
                    let wq = cycles[q].as_ref().expect("positive dimension");
                    let dq = m.dims[q];
                    let mq = m.map(x, q);
                    // Vector in C(q) ⊗ M_q, indexed chain*dq + j, per column b.
                    for b in 0..dx {
                        let mut img: BTreeMap<usize, Rat> = BTreeMap::new();
                        for (chain_idx, coef) in &terms {
                            for (j, v) in mq.column_entries(b) {
                                let e = img.entry(chain_idx * dq + j).or_insert_with(Rat::zero);
                                *e += coef * v * sign(s);
                            }
                        }
                        img.retain(|_, v| !v.is_zero());
                        // Coordinates in the cycle basis are the values at free chains.
                        let col = offset[x] + k * dx + b;
                        let mut recon: BTreeMap<usize, Rat> = BTreeMap::new();
                        for (kq, &f) in wq.free.iter().enumerate() {
                            for j in 0..dq {
                                if let Some(v) = img.get(&(f * dq + j)) {
                                    d.add_to(offset[q] + kq * dq + j, col, v);
                                    for (ci, kv) in wq.basis.column_entries(kq) {
                                        let e = recon.entry(ci * dq + j).or_insert_with(Rat::zero);
                                        *e += kv * v;
                                    }
                                }
                            }
                        }
                        recon.retain(|_, v| !v.is_zero());
                        if recon != img {
                            return Err(Error::Invalid(format!(
                                "boundary image at degree {s} leaves the cycle space"
                            )));
                        }
                    }
                }
            }
        }
        maps.push(d);
    }
    RationalChainComplex::new(dims, maps)
}

/// Total complex of the iterated bar construction over `P_1 × … × P_r`.
///
/// The representation must live on `product_poset(ps)` (mixed-radix
/// indexing, first factor most significant). The basis in total degree `n`
/// consists of tuples of chains with `Σ s_t = n`, sorted by the tuple
/// `(s_1, …, s_r)` and then lexicographically by the chains. The
/// differential is `Σ_t (−1)^{s_1+…+s_{t−1}} d_t`.
pub fn multi_bar_complex(ps: &[&FinitePoset], m: &PosetRep) -> Result<RationalChainComplex> {
    if ps.is_empty() {
        return invalid("at least one factor is required");
    }
    let tops: Vec<usize> = ps.iter().map(|p| p.top().ok_or(Error::NoTop)).collect::<Result<_>>()?;
    let radix = MixedRadix {
        radices: ps.iter().map(|p| p.size()).collect(),
    };
    if radix.total() != m.poset.size() {
        return invalid("representation does not live on the product of the factors");
    }
    let prod = &*m.poset;
    // Per-factor chains, pruned to elements that are some coordinate of a
    // supported product element (below it).
    let mut factor_chains: Vec<Vec<Vec<usize>>> = Vec::new();
    for (t, p) in ps.iter().enumerate() {
        let mut support = vec![false; p.size()];
        for x in 0..prod.size() {
            if m.dims[x] > 0 {
                support[radix.decode(x)[t]] = true;
            }
        }
        let reach = reach_from_dims(p, &support.iter().map(|&b| usize::from(b)).collect::<Vec<_>>());
        let by_len = chains_from_top(p, &|x| support[x], &reach)?;
        factor_chains.push(by_len.into_iter().flatten().collect());
    }
    // Enumerate tuples.
    type Tuple = Vec<usize>; // indices into factor_chains[t]
    let mut tuples: Vec<Tuple> = Vec::new();
    let mut cur: Tuple = Vec::new();
    fn go(
        t: usize,
        factor_chains: &[Vec<Vec<usize>>],
        tops: &[usize],
        radix: &MixedRadix,
        dims: &[usize],
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if t == factor_chains.len() {
            let pt: Vec<usize> = cur
                .iter()
                .enumerate()
                .map(|(t, &ci)| endpoint(&factor_chains[t][ci], tops[t]))
                .collect();
            if dims[radix.encode(&pt)] > 0 {
                out.push(cur.clone());
            }
            return;
        }
        for ci in 0..factor_chains[t].len() {
            cur.push(ci);
            go(t + 1, factor_chains, tops, radix, dims, cur, out);
            cur.pop();
        }
    }
    go(0, &factor_chains, &tops, &radix, &m.dims, &mut cur, &mut tuples);
    let lens = |tu: &Tuple| -> Vec<usize> {
        tu.iter().enumerate().map(|(t, &ci)| factor_chains[t][ci].len()).collect()
    };
    let total_deg = |tu: &Tuple| -> usize { lens(tu).iter().sum() };
    let maxdeg = tuples.iter().map(total_deg).max().unwrap_or(0);
    let mut by_deg: Vec<Vec<Tuple>> = vec![Vec::new(); maxdeg + 1];
    for tu in tuples {
        by_deg[total_deg(&tu)].push(tu);
    }
    let chain_key = |tu: &Tuple| -> (Vec<usize>, Vec<&Vec<usize>>) {
        (lens(tu), tu.iter().enumerate().map(|(t, &ci)| &factor_chains[t][ci]).collect())
    };
    for v in &mut by_deg {
        v.sort_by(|a, b| chain_key(a).cmp(&chain_key(b)));
    }
    let point = |tu: &Tuple| -> usize {
        let pt: Vec<usize> = tu
            .iter()
            .enumerate()
            .map(|(t, &ci)| endpoint(&factor_chains[t][ci], tops[t]))
            .collect();
        radix.encode(&pt)
    };
    // Chain lookup per factor.
    let chain_index: Vec<HashMap<&[usize], usize>> = factor_chains
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect())
        .collect();
    let mut offsets: Vec<HashMap<Tuple, usize>> = Vec::new();
    let mut dims = Vec::new();
    for tus in &by_deg {
        let mut off = HashMap::new();
        let mut total = 0;
        for tu in tus {
            off.insert(tu.clone(), total);
            total += m.dims[point(tu)];
        }
        offsets.push(off);
        dims.push(total);
    }
    let mut maps = Vec::new();
    for n in 1..by_deg.len() {
        let mut d = RatMatrix::zeros(dims[n - 1], dims[n]);
        for tu in &by_deg[n] {
            let col0 = offsets[n][tu];
            let x = point(tu);
            let dx = m.dims[x];
            let mut prefix = 0usize;
            for t in 0..tu.len() {
                let c = &factor_chains[t][tu[t]];
                let s = c.len();
                let outer = sign(prefix);
                for i in 1..=s {
                    let mut face = c.clone();
                    face.remove(i - 1);
                    let Some(&fi) = chain_index[t].get(face.as_slice()) else {
                        continue;
                    };
                    let mut tu2 = tu.clone();
                    tu2[t] = fi;
                    let y = point(&tu2);
                    if m.dims[y] == 0 {
                        continue;
                    }
                    let Some(&row0) = offsets[n - 1].get(&tu2) else {
                        continue;
                    };
                    let sg = &outer * sign(i);
                    if i < s {
                        for b in 0..dx {
                            d.add_to(row0 + b, col0 + b, &sg);
                        }
                    } else {
                        d.place(row0, col0, &m.map(x, y), &sg);
                    }
                }
                prefix += s;
            }
        }
        maps.push(d);
    }
    RationalChainComplex::new(dims, maps)
}

/// External tensor product `M ⊠ N` on `P × Q`.
pub fn external_product(m: &PosetRep, n: &PosetRep, prod: Arc<FinitePoset>) -> Result<PosetRep> {
    let (a, b) = (m.poset.size(), n.poset.size());
    if prod.size() != a * b {
        return invalid("product poset has the wrong size");
    }
    let radix = MixedRadix { radices: vec![a, b] };
    let dims: Vec<usize> = (0..a * b)
        .map(|x| {
            let d = radix.decode(x);
            m.dim(d[0]) * n.dim(d[1])
        })
        .collect();
    let mut maps = HashMap::new();
    for x in 0..a * b {
        if dims[x] == 0 {
            continue;
        }
        let dx = radix.decode(x);
        for y in prod.above(x) {
            if dims[y] == 0 {
                continue;
            }
            let dy = radix.decode(y);
            maps.insert((x, y), m.map(dx[0], dy[0]).kron(&n.map(dx[1], dy[1])));
        }
    }
    Ok(PosetRep::from_parts_unchecked(prod, dims, maps))
}

// ---------------------------------------------------------------------------
// Set-valued functors with injective transitions.

/// A functor from a poset to finite sets: `sizes[p] = |F(p)|` (elements
/// `0..sizes[p]`) and, for each covering pair, the transition function.
#[derive(Clone, Debug)]
pub struct SetFunctor {
    pub poset: Arc<FinitePoset>,
    pub sizes: Vec<usize>,
    pub cover_maps: BTreeMap<(usize, usize), Vec<usize>>,
}

impl SetFunctor {
    /// The composite transition `F(p) → F(q)` along some saturated path,
    /// checking that all paths agree.
    fn transitions(&self) -> Result<HashMap<(usize, usize), Vec<usize>>> {
        let p = &*self.poset;
        let mut all: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        let mut order: Vec<usize> = (0..p.size()).collect();
        order.sort_by_key(|&i| p.above(i).count());
        for x in order {
            for y in p.above(x).collect::<Vec<_>>() {
                let mut value: Option<Vec<usize>> = None;
                for &c in p.covers_up(x) {
                    if !p.leq(c, y) {
                        continue;
                    }
                    let first = self
                        .cover_maps
                        .get(&(x, c))
                        .ok_or_else(|| Error::Invalid(format!("missing transition ({x},{c})")))?;
                    if first.len() != self.sizes[x] || first.iter().any(|&v| v >= self.sizes[c]) {
                        return invalid(format!("transition ({x},{c}) has the wrong shape"));
                    }
                    let comp: Vec<usize> = if c == y {
                        first.clone()
                    } else {
                        let rest = &all[&(c, y)];
                        first.iter().map(|&v| rest[v]).collect()
                    };
                    match &value {
                        None => value = Some(comp),
                        Some(v) if *v != comp => {
                            return Err(Error::NotFunctorial(format!("set paths from {x} to {y}")));
                        }
                        Some(_) => {}
                    }
                }
                all.insert((x, y), value.expect("cover below y"));
            }
        }
        Ok(all)
    }
}

/// Splits a functor with injective transitions into ideals: one ideal
/// `I⟨x⟩ = {p : x lies in the image of F(p) → F(top)}` per element `x` of
/// the top set. The disjoint union of the ideal functors recovers `F`.
pub fn pset_decompose(f: &SetFunctor) -> Result<Vec<PosetIdeal>> {
    let p = &f.poset;
    let top = p.top().ok_or(Error::NoTop)?;
    if f.sizes.len() != p.size() {
        return invalid("one set size per element is required");
    }
    for (&(a, b), map) in &f.cover_maps {
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        if distinct.len() != map.len() {
            return Err(Error::NonInjective { from: a, to: b });
        }
    }
    let trans = f.transitions()?;
    let mut members: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); f.sizes[top]];
    for x in 0..f.sizes[top] {
        members[x].insert(top);
    }
    for q in 0..p.size() {
        if q == top {
            continue;
        }
        for &v in &trans[&(q, top)] {
            members[v].insert(q);
        }
    }
    let ideals: Vec<PosetIdeal> = members
        .into_iter()
        .map(|m| PosetIdeal::new(p.clone(), m))
        .collect::<Result<_>>()?;
    // Reconstruction: |F(q)| equals the number of ideals containing q.
    for q in 0..p.size() {
        let count = ideals.iter().filter(|i| i.contains(q)).count();
        if count != f.sizes[q] {
            return invalid(format!("decomposition does not reconstruct F at {q}"));
        }
    }
    Ok(ideals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::posets::{boolean_lattice, partition_lattice};

    #[test]
    fn top_ideal_bar_homology() {
        let p = Arc::new(partition_lattice(3).unwrap());
        let i = principal_ideal(&p, p.top().unwrap()).unwrap();
        let c = bar_complex(&ideal_rep(&i)).unwrap();
        assert_eq!(c.homology_dims(), vec![1]);
    }

    #[test]
    fn koszul_dims_on_boolean_square() {
        let p = Arc::new(boolean_lattice(2).unwrap());
        let k = koszul_complex(&PosetRep::constant(p, 1)).unwrap();
        assert_eq!(k.dims(), &[1, 2, 1]);
    }

    #[test]
    fn bad_cover_map_is_rejected() {
        let p = Arc::new(boolean_lattice(2).unwrap());
        let mut covers = BTreeMap::new();
        for (a, b) in p.covering_pairs() {
            covers.insert((a, b), RatMatrix::identity(1));
        }
        covers.insert((0, 1), RatMatrix::from_i64(&[vec![2]]));
        let r = PosetRep::from_cover_maps(p, vec![1; 4], &covers);
        assert!(matches!(r, Err(Error::NotFunctorial(_))));
    }

    #[test]
    fn non_injective_transition() {
        let p = Arc::new(boolean_lattice(1).unwrap());
        let f = SetFunctor {
            poset: p,
            sizes: vec![2, 1],
            cover_maps: BTreeMap::from([((0, 1), vec![0, 0])]),
        };
        assert_eq!(pset_decompose(&f).unwrap_err(), Error::NonInjective { from: 0, to: 1 });
    }
}

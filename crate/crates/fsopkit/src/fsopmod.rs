//! Finitely presented modules over the opposite category of finite sets and
//! surjections.
//!
//! A presentation lists generator degrees `g_i` and relations. The free
//! module in degree `n` has basis the surjection words `[n] ↠ [g_i]`; the
//! relation subspace `R_n` is spanned by every relation precomposed with
//! every surjection onto its degree. Because all surjections are used, `R_n`
//! is automatically stable under permutations of `[n]`, so the quotient
//! `M_n = F_n / R_n` carries the symmetric group action used for characters.
//!
//! Quotients are represented through the reduced row echelon form of `R_n`:
//! the non-pivot coordinates of `F_n` form the basis of `M_n`, and projecting
//! a vector means reducing it and reading off those coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactla::{format_rat, parse_rat, rat, Rat, RatMatrix, RationalChainComplex, Rref};
use crate::limits::Limits;
use crate::posetrep::{bar_complex, koszul_complex, multi_bar_complex, PosetRep};
use crate::posets::{partition_lattice, product_poset, rgs_blocks, set_partitions, FinitePoset, IntPolynomial, MixedRadix};
use crate::symfun::{Partition, SymFunc};

/// A surjection `[n] ↠ [d]` written as the word of its values (letters `1..=d`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurjWord {
    letters: Vec<u8>,
    d: usize,
}

impl fmt::Debug for SurjWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SurjWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.iter().all(|&l| l <= 9) {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let s: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", s.join("."))
        }
    }
}

impl SurjWord {
    /// Validates that the letters are exactly `1..=max`.
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        let d = letters.iter().copied().max().unwrap_or(0) as usize;
        let mut seen = vec![false; d + 1];
        for &l in &letters {
            if l == 0 {
                return invalid("surjection letters start at 1");
            }
            seen[l as usize] = true;
        }
        if seen[1..].iter().any(|s| !s) {
            return invalid(format!("word {letters:?} is not surjective onto 1..{d}"));
        }
        Ok(SurjWord { letters, d })
    }

    /// Parses a digit string such as `"1221"`.
    pub fn parse(s: &str) -> Result<Self> {
        let letters = s
            .chars()
            .map(|c| match c.to_digit(10) {
                Some(v) if v >= 1 => Ok(v as u8),
                _ => invalid(format!("bad letter {c:?} in word {s:?}")),
            })
            .collect::<Result<Vec<u8>>>()?;
        Self::new(letters)
    }

    pub fn identity(n: usize) -> Self {
        SurjWord {
            letters: (1..=n as u8).collect(),
            d: n,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Size of the target set.
    pub fn target(&self) -> usize {
        self.d
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// `self ∘ f` for `f : [n'] ↠ [len(self)]`.
    pub fn precompose(&self, f: &SurjWord) -> Result<SurjWord> {
        if f.d != self.len() {
            return invalid(format!("cannot precompose a word of length {} with a map onto {}", self.len(), f.d));
        }
        Ok(SurjWord {
            letters: f.letters.iter().map(|&i| self.letters[i as usize - 1]).collect(),
            d: self.d,
        })
    }

    /// `g ∘ self` for `g : [d] ↠ [d']`.
    pub fn postcompose(&self, g: &SurjWord) -> Result<SurjWord> {
        g.precompose(self)
    }

    /// True if first occurrences of `1, 2, …, d` appear in increasing order.
    pub fn is_ordered(&self) -> bool {
        let mut next = 1u8;
        for &l in &self.letters {
            if l == next {
                next += 1;
            } else if l > next {
                return false;
            }
        }
        true
    }
}

/// All surjective words `[n] ↠ [d]` in lexicographic order.
pub fn enumerate_surjections(n: usize, d: usize) -> Vec<SurjWord> {
    let mut out = Vec::new();
    if d > n || (d == 0 && n > 0) {
        return out;
    }
    let mut cur = vec![0u8; n];
    fn go(pos: usize, n: usize, d: usize, cur: &mut Vec<u8>, counts: &mut Vec<usize>, missing: usize, out: &mut Vec<SurjWord>) {
        if pos == n {
            if missing == 0 {
                out.push(SurjWord { letters: cur.clone(), d });
            }
            return;
        }
        if missing > n - pos {
            return;
        }
        for l in 1..=d {
            cur[pos] = l as u8;
            counts[l] += 1;
            let m = if counts[l] == 1 { missing - 1 } else { missing };
            go(pos + 1, n, d, cur, counts, m, out);
            counts[l] -= 1;
        }
    }
    go(0, n, d, &mut cur, &mut vec![0; d + 1], d, &mut out);
    out
}

/// Ordered surjections `[n] ↠ [d]` (first occurrences increasing).
pub fn enumerate_ordered_surjections(n: usize, d: usize) -> Vec<SurjWord> {
    enumerate_surjections(n, d).into_iter().filter(|w| w.is_ordered()).collect()
}

// ---------------------------------------------------------------------------
// Presentations.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelTerm {
    pub gen: usize,
    pub word: SurjWord,
    pub coef: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: usize,
    pub terms: Vec<RelTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FsopPresentation {
    generator_degrees: Vec<usize>,
    relations: Vec<Relation>,
}

impl FsopPresentation {
    pub fn new(generator_degrees: Vec<usize>, relations: Vec<Relation>) -> Result<Self> {
        for r in &relations {
            for t in &r.terms {
                let Some(&g) = generator_degrees.get(t.gen) else {
                    return invalid(format!("relation cites missing generator {}", t.gen));
                };
                if t.word.len() != r.degree || t.word.target() != g {
                    return invalid(format!(
                        "word {} is not a surjection [{}] onto [{}]",
                        t.word, r.degree, g
                    ));
                }
            }
        }
        Ok(FsopPresentation {
            generator_degrees,
            relations,
        })
    }

    /// Free module on generators of the given degrees.
    pub fn free(generator_degrees: Vec<usize>) -> Self {
        FsopPresentation {
            generator_degrees,
            relations: vec![],
        }
    }

    pub fn generator_degrees(&self) -> &[usize] {
        &self.generator_degrees
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn max_generator_degree(&self) -> usize {
        self.generator_degrees.iter().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> ModuleJson {
        ModuleJson {
            generators: self.generator_degrees.clone(),
            relations: self
                .relations
                .iter()
                .map(|r| RelationJson {
                    degree: r.degree,
                    terms: r
                        .terms
                        .iter()
                        .map(|t| RelTermJson {
                            gen: t.gen,
                            word: t.word.to_string(),
                            coef: format_rat(&t.coef),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ModuleJson) -> Result<Self> {
        if j.generators.iter().any(|&g| g > 9) {
            return invalid("generator degrees are limited to 9");
        }
        let relations = j
            .relations
            .iter()
            .map(|r| {
                Ok(Relation {
                    degree: r.degree,
                    terms: r
                        .terms
                        .iter()
                        .map(|t| {
                            Ok(RelTerm {
                                gen: t.gen,
                                word: SurjWord::parse(&t.word)?,
                                coef: parse_rat(&t.coef)?,
                            })
                        })
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Self::new(j.generators.clone(), relations)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ModuleJson = serde_json::from_str(s)?;
        Self::from_json(&j)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelTermJson {
    pub gen: usize,
    pub word: String,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationJson {
    pub degree: usize,
    pub terms: Vec<RelTermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleJson {
    pub generators: Vec<usize>,
    #[serde(default)]
    pub relations: Vec<RelationJson>,
}

// ---------------------------------------------------------------------------
// Evaluation.

/// `M_n = F_n / R_n` in coordinates.
#[derive(Debug)]
pub struct DegreeEvaluation {
    pub degree: usize,
    /// Basis of `F_n`: (generator, word), generator-major then lexicographic.
    basis: Vec<(usize, SurjWord)>,
    index: HashMap<(usize, Vec<u8>), usize>,
    rref: Rref,
    quotient_basis: Vec<usize>,
    quotient_pos: HashMap<usize, usize>,
}

impl DegreeEvaluation {
    pub fn free_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.rref.rank()
    }

    /// Matrix whose columns span `R_n` (the reduced echelon rows).
    pub fn relation_space(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.free_dim(), self.rref.rank());
        for (c, row) in self.rref.rows.iter().enumerate() {
            for (i, v) in row {
                m.set(*i, c, v.clone());
            }
        }
        m
    }

    pub fn rref(&self) -> &Rref {
        &self.rref
    }

    /// Basis elements of `F_n`.
    pub fn free_basis(&self) -> &[(usize, SurjWord)] {
        &self.basis
    }

    /// Free coordinates representing the basis of `M_n`.
    pub fn quotient_basis(&self) -> &[usize] {
        &self.quotient_basis
    }

    pub fn index_of(&self, gen: usize, word: &SurjWord) -> Option<usize> {
        self.index.get(&(gen, word.letters.clone())).copied()
    }

    /// Quotient coordinates of a vector of `F_n`.
    pub fn project(&self, v: &BTreeMap<usize, Rat>) -> BTreeMap<usize, Rat> {
        let mut w = v.clone();
        self.rref.reduce(&mut w);
        w.into_iter()
            .filter_map(|(i, c)| self.quotient_pos.get(&i).map(|&q| (q, c)))
            .collect()
    }

    /// Is the vector in `R_n`?
    pub fn in_relations(&self, v: &BTreeMap<usize, Rat>) -> bool {
        let mut w = v.clone();
        self.rref.reduce(&mut w);
        w.is_empty()
    }
}

/// A presentation together with an evaluation cache.
#[derive(Debug)]
pub struct FsopModule {
    pres: FsopPresentation,
    max_degree: usize,
    cache: RwLock<BTreeMap<usize, Arc<DegreeEvaluation>>>,
    char_cache: RwLock<BTreeMap<usize, Arc<BTreeMap<Partition, Rat>>>>,
}

impl FsopModule {
    /// Uses the default evaluation bound for the generator degrees.
    pub fn new(pres: FsopPresentation) -> Self {
        Self::with_limits(pres, &Limits::DEFAULT)
    }

    pub fn with_limits(pres: FsopPresentation, limits: &Limits) -> Self {
        let max_degree = if pres.max_generator_degree() <= 2 {
            limits.eval_degree_small_gens
        } else {
            limits.eval_degree
        };
        Self::with_max_degree(pres, max_degree)
    }

    pub fn with_max_degree(pres: FsopPresentation, max_degree: usize) -> Self {
        FsopModule {
            pres,
            max_degree,
            cache: RwLock::new(BTreeMap::new()),
            char_cache: RwLock::new(BTreeMap::new()),
        }
    }

    pub fn presentation(&self) -> &FsopPresentation {
        &self.pres
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn evaluate_degree(&self, n: usize) -> Result<Arc<DegreeEvaluation>> {
        Limits::check("evaluation degree", n, self.max_degree)?;
        if let Some(e) = self.cache.read().expect("cache").get(&n) {
            return Ok(e.clone());
        }
        let e = Arc::new(self.compute_degree(n)?);
        // Idempotent: a concurrent writer stores an identical value.
        self.cache.write().expect("cache").entry(n).or_insert_with(|| e.clone());
        Ok(e)
    }

    fn compute_degree(&self, n: usize) -> Result<DegreeEvaluation> {
        let mut basis = Vec::new();
        for (g, &deg) in self.pres.generator_degrees.iter().enumerate() {
            for w in enumerate_surjections(n, deg) {
                basis.push((g, w));
            }
        }
        let index: HashMap<(usize, Vec<u8>), usize> = basis
            .iter()
            .enumerate()
            .map(|(i, (g, w))| ((*g, w.letters.clone()), i))
            .collect();
        let mut rows = Vec::new();
        for rel in &self.pres.relations {
            if rel.degree > n {
                continue;
            }
            for f in enumerate_surjections(n, rel.degree) {
                let mut v: BTreeMap<usize, Rat> = BTreeMap::new();
                for t in &rel.terms {
                    let w = t.word.precompose(&f)?;
                    let i = index[&(t.gen, w.letters)];
                    let e = v.entry(i).or_insert_with(Rat::zero);
                    *e += &t.coef;
                }
                v.retain(|_, c| !c.is_zero());
                if !v.is_empty() {
                    rows.push(v);
                }
            }
        }
        let rref = Rref::from_rows(basis.len(), rows);
        let quotient_basis = rref.free_columns();
        let quotient_pos = quotient_basis.iter().enumerate().map(|(q, &i)| (i, q)).collect();
        Ok(DegreeEvaluation {
            degree: n,
            basis,
            index,
            rref,
            quotient_basis,
            quotient_pos,
        })
    }

    pub fn dim(&self, n: usize) -> Result<usize> {
        Ok(self.evaluate_degree(n)?.quotient_dim())
    }

    /// `dim M_n` for `n = 0..=max_n`.
    pub fn hilbert_dims(&self, max_n: usize) -> Result<Vec<usize>> {
        (0..=max_n).map(|n| self.dim(n)).collect()
    }

    /// Matrix of `M_f : M_n → M_{n'}` for a surjection `f : [n'] ↠ [n]`.
    pub fn map_for(&self, f: &SurjWord) -> Result<RatMatrix> {
        let src = self.evaluate_degree(f.target())?;
        let dst = self.evaluate_degree(f.len())?;
        let mut m = RatMatrix::zeros(dst.quotient_dim(), src.quotient_dim());
        for (c, &i) in src.quotient_basis.iter().enumerate() {
            let (g, w) = &src.basis[i];
            let img = w.precompose(f)?;
            let j = dst.index_of(*g, &img).expect("image word is a basis word");
            for (q, v) in dst.project(&BTreeMap::from([(j, Rat::one())])) {
                m.set(q, c, v);
            }
        }
        Ok(m)
    }

    /// Trace of the permutation `σ` (a bijective word of length `n`) acting by
    /// precomposition on `M_n`.
    pub fn trace_of_permutation(&self, sigma: &SurjWord) -> Result<Rat> {
        let n = sigma.len();
        if sigma.target() != n {
            return invalid("not a permutation");
        }
        let ev = self.evaluate_degree(n)?;
        let perm: Vec<usize> = ev
            .basis
            .iter()
            .map(|(g, w)| ev.index_of(*g, &w.precompose(sigma).expect("same length")).expect("basis word"))
            .collect();
        let free_trace = perm.iter().enumerate().filter(|(i, &j)| *i == j).count();
        // σ permutes R_n; in the echelon basis the diagonal entry for row i
        // is the coefficient of σ·row_i at pivot i.
        let mut rel_trace = Rat::zero();
        for (i, row) in ev.rref.rows.iter().enumerate() {
            let pivot = ev.rref.pivots[i];
            for (j, v) in row {
                if perm[*j] == pivot {
                    rel_trace += v;
                }
            }
        }
        Ok(rat(free_trace as i64) - rel_trace)
    }

    /// Character of `M_n` on each cycle type, using the standard
    /// representative whose cycles occupy consecutive positions.
    pub fn sn_character(&self, n: usize) -> Result<Arc<BTreeMap<Partition, Rat>>> {
        if let Some(c) = self.char_cache.read().expect("cache").get(&n) {
            return Ok(c.clone());
        }
        let mut out = BTreeMap::new();
        for mu in Partition::all(n) {
            out.insert(mu.clone(), self.trace_of_permutation(&standard_permutation(&mu))?);
        }
        let out = Arc::new(out);
        self.char_cache.write().expect("cache").entry(n).or_insert_with(|| out.clone());
        Ok(out)
    }

    /// `Σ_{n ≤ max_n} Σ_{λ ⊢ n} χ(σ_λ) p_λ / z_λ`.
    pub fn frobenius_character(&self, max_n: usize) -> Result<SymFunc> {
        let mut terms = Vec::new();
        for n in 0..=max_n {
            for (mu, c) in self.sn_character(n)?.iter() {
                terms.push((mu.clone(), c / Rat::from_integer(mu.z())));
            }
        }
        Ok(SymFunc::from_terms(max_n, terms))
    }

    // -- complexes over partition lattices ----------------------------------

    /// The representation `(p_1, …, p_r) ↦ M_{[n] ⊔ p_1 ⊔ … ⊔ p_r}` of
    /// `P(d_1) × … × P(d_r)`, with maps given by the canonical surjections
    /// merging blocks.
    pub fn partition_rep(&self, ds: &[usize], n: usize) -> Result<(Vec<Arc<FinitePoset>>, PosetRep)> {
        if ds.is_empty() || ds.contains(&0) {
            return invalid("partition degrees must be positive");
        }
        let total: usize = ds.iter().sum::<usize>() + n;
        Limits::check("evaluation degree", total, self.max_degree)?;
        let factors: Vec<Arc<FinitePoset>> = ds.iter().map(|&d| partition_lattice(d).map(Arc::new)).collect::<Result<_>>()?;
        let rgs: Vec<Vec<Vec<u8>>> = ds.iter().map(|&d| set_partitions(d)).collect();
        let prod: Arc<FinitePoset> = if factors.len() == 1 {
            factors[0].clone()
        } else {
            let refs: Vec<&FinitePoset> = factors.iter().map(|f| &**f).collect();
            Arc::new(product_poset(&refs)?)
        };
        let radix = MixedRadix {
            radices: factors.iter().map(|f| f.size()).collect(),
        };
        let blocks = |x: usize| -> Vec<usize> {
            radix
                .decode(x)
                .iter()
                .enumerate()
                .map(|(t, &e)| rgs_blocks(&rgs[t][e]).len())
                .collect()
        };
        let mut dims = Vec::with_capacity(prod.size());
        for x in 0..prod.size() {
            dims.push(self.dim(n + blocks(x).iter().sum::<usize>())?);
        }
        let mut maps = HashMap::new();
        for x in 0..prod.size() {
            if dims[x] == 0 {
                continue;
            }
            let dx = radix.decode(x);
            let kx = blocks(x);
            for y in prod.above(x).collect::<Vec<_>>() {
                if dims[y] == 0 {
                    continue;
                }
                let dy = radix.decode(y);
                // Surjection [n] ⊔ y-blocks → [n] ⊔ x-blocks.
                let mut letters: Vec<u8> = (1..=n as u8).collect();
                let mut off_x = n;
                for t in 0..ds.len() {
                    let px = &rgs[t][dx[t]];
                    for b in rgs_blocks(&rgs[t][dy[t]]) {
                        letters.push((off_x + px[b[0]] as usize + 1) as u8);
                    }
                    off_x += kx[t];
                }
                let f = SurjWord::new(letters)?;
                maps.insert((x, y), self.map_for(&f)?);
            }
        }
        Ok((factors, PosetRep::from_parts_unchecked(prod, dims, maps)))
    }

    /// Bar complex of `p ↦ M_{[n] ⊔ p}` over `P(d)`.
    pub fn bd_complex_at(&self, d: usize, n: usize) -> Result<RationalChainComplex> {
        let (_, rep) = self.partition_rep(&[d], n)?;
        bar_complex(&rep)
    }

    /// Koszul complex of the same representation.
    pub fn kd_complex_at(&self, d: usize, n: usize) -> Result<RationalChainComplex> {
        let (_, rep) = self.partition_rep(&[d], n)?;
        koszul_complex(&rep)
    }

    /// Iterated bar complex over `P(d_1) × … × P(d_r)`.
    pub fn iterated_bd_at(&self, ds: &[usize], n: usize) -> Result<RationalChainComplex> {
        let (factors, rep) = self.partition_rep(ds, n)?;
        let refs: Vec<&FinitePoset> = factors.iter().map(|f| &**f).collect();
        multi_bar_complex(&refs, &rep)
    }

    /// Bounded evidence for type `< J`: every iterated complex with
    /// `ℓ_t ∈ [j_t, j_t + slack]` and `n ∈ n_range` is exact.
    pub fn check_type_less(&self, j: &Partition, n_range: std::ops::RangeInclusive<usize>, slack: usize) -> Result<TypeCheck> {
        let parts = j.parts().to_vec();
        if parts.is_empty() {
            return invalid("type check needs a nonempty partition");
        }
        let mut tested = Vec::new();
        let mut ls = parts.clone();
        loop {
            for n in n_range.clone() {
                let c = self.iterated_bd_at(&ls, n)?;
                tested.push((ls.clone(), n));
                if !c.is_exact() {
                    return Ok(TypeCheck {
                        consistent: false,
                        tested,
                        witness: Some((ls.clone(), n, c.homology_dims())),
                    });
                }
            }
            // Next ℓ in the box ∏ [j_t, j_t + slack].
            let mut t = ls.len();
            loop {
                if t == 0 {
                    return Ok(TypeCheck {
                        consistent: true,
                        tested,
                        witness: None,
                    });
                }
                t -= 1;
                if ls[t] < parts[t] + slack {
                    ls[t] += 1;
                    for u in t + 1..ls.len() {
                        ls[u] = parts[u];
                    }
                    break;
                }
            }
        }
    }

    /// Trace of `(σ_λ, τ_μ)` on the bar complex over `P(d)`, summed with
    /// signs over the chains fixed by `σ_λ`, for `μ ⊢ n`.
    fn bd_trace(&self, lambda: &Partition, mu: &Partition, n: usize) -> Result<Rat> {
        let d = lambda.size();
        let p = partition_lattice(d)?;
        let rgs = set_partitions(d);
        let sigma = standard_permutation(lambda);
        // σ acts on set partitions of [d]; record fixed elements and the
        // cycle type of the induced permutation of blocks.
        let mut fixed_type: Vec<Option<Partition>> = vec![None; p.size()];
        for (x, r) in rgs.iter().enumerate() {
            let blocks = rgs_blocks(r);
            let block_of = |e: usize| r[e] as usize;
            let image: Vec<usize> = blocks.iter().map(|b| block_of(sigma.letters[b[0]] as usize - 1)).collect();
            let stable = blocks.iter().enumerate().all(|(bi, b)| b.iter().all(|&e| block_of(sigma.letters[e] as usize - 1) == image[bi]));
            if stable {
                fixed_type[x] = Some(cycle_type(&image));
            }
        }
        let mut total = Rat::zero();
        for x in 0..p.size() {
            let Some(bt) = fixed_type[x].as_ref() else { continue };
            let m = n + bt.size();
            if m > self.max_degree {
                return Err(Error::BoundExceeded {
                    what: "evaluation degree",
                    value: m,
                    max: self.max_degree,
                });
            }
            let chi = self.sn_character(m)?;
            let v = &chi[&mu.union(bt)];
            // Chains are listed as [top, …, x]; the step count is the degree.
            for chain in p.chains_to_top(x)? {
                if chain.iter().any(|&y| fixed_type[y].is_none()) {
                    continue;
                }
                if (chain.len() - 1) % 2 == 0 {
                    total += v;
                } else {
                    total -= v;
                }
            }
        }
        Ok(total)
    }

    /// For each `λ ⊢ d`, the symmetric function
    /// `(1/z_λ) Σ_{n ≤ max_n} Σ_{μ ⊢ n} tr((σ_λ, τ_μ) | B_d(M)_n) p_μ / z_μ`,
    /// i.e. the coefficient of `p_λ` in the `S_d × S_n` character of `B_d(M)`.
    pub fn character_of_bd(&self, d: usize, max_n: usize) -> Result<BTreeMap<Partition, SymFunc>> {
        let mut out = BTreeMap::new();
        for lambda in Partition::all(d) {
            let zl = Rat::from_integer(lambda.z());
            let mut terms = Vec::new();
            for n in 0..=max_n {
                for mu in Partition::all(n) {
                    let tr = self.bd_trace(&lambda, &mu, n)?;
                    terms.push((mu.clone(), tr / (&zl * Rat::from_integer(mu.z()))));
                }
            }
            out.insert(lambda, SymFunc::from_terms(max_n, terms));
        }
        Ok(out)
    }
}

/// Outcome of a bounded type check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeCheck {
    /// True when every tested complex was exact.
    pub consistent: bool,
    /// The `(ℓ, n)` pairs that were tested, in order.
    pub tested: Vec<(Vec<usize>, usize)>,
    /// First non-exact instance with its homology dimensions.
    pub witness: Option<(Vec<usize>, usize, Vec<usize>)>,
}

/// The permutation whose cycles are `(1 … μ_1)(μ_1+1 … μ_1+μ_2)…`, as a word.
pub fn standard_permutation(mu: &Partition) -> SurjWord {
    let mut letters = Vec::with_capacity(mu.size());
    let mut start = 0usize;
    for &k in mu.parts() {
        for i in 0..k {
            letters.push((start + (i + 1) % k + 1) as u8);
        }
        start += k;
    }
    SurjWord { d: letters.len(), letters }
}

/// Cycle type of a permutation given as an image vector on `0..k`.
pub fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        parts.push(len);
    }
    Partition::new(parts)
}

/// Checks that `denom(t) · Σ dims[n] tⁿ` has zero coefficients in degrees
/// `from_degree..dims.len()`.
pub fn verify_rational_tail(dims: &[usize], denom: &IntPolynomial, from_degree: usize) -> Result<bool> {
    let deg = denom.degree().unwrap_or(0);
    let needed = from_degree.max(deg) + 1;
    if dims.len() < needed {
        return Err(Error::WindowTooShort {
            needed,
            have: dims.len(),
        });
    }
    Ok((from_degree..dims.len()).all(|k| series_product_coeff(dims, denom, k) == 0))
}

/// Coefficient of `t^k` in `denom(t) · Σ dims[n] tⁿ`.
pub fn series_product_coeff(dims: &[usize], denom: &IntPolynomial, k: usize) -> i128 {
    (0..=k)
        .map(|j| denom.coeff(j) as i128 * dims.get(k - j).copied().unwrap_or(0) as i128)
        .sum()
}

/// Truncation of `denom(t) · Σ dims[n] tⁿ` below degree `upto`.
pub fn series_numerator(dims: &[usize], denom: &IntPolynomial, upto: usize) -> IntPolynomial {
    IntPolynomial::new((0..upto).map(|k| series_product_coeff(dims, denom, k) as i64).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn surjection_counts() {
        assert_eq!(enumerate_surjections(2, 2).len(), 2);
        assert_eq!(enumerate_surjections(3, 1).len(), 1);
        assert_eq!(enumerate_surjections(4, 2).len(), 14);
        assert_eq!(enumerate_surjections(0, 0).len(), 1);
        let w: Vec<String> = enumerate_surjections(2, 2).iter().map(|w| w.to_string()).collect();
        assert_eq!(w, vec!["12", "21"]);
    }

    #[test]
    fn word_parsing() {
        assert!(SurjWord::parse("13").is_err());
        assert!(SurjWord::parse("1a").is_err());
        assert!(SurjWord::parse("121").unwrap().is_ordered());
        assert!(!SurjWord::parse("21").unwrap().is_ordered());
    }

    #[test]
    fn standard_permutation_shape() {
        let s = standard_permutation(&Partition::new(vec![3, 1]));
        assert_eq!(s.to_string(), "2314");
        assert_eq!(cycle_type(&[1, 2, 0, 3]), Partition::new(vec![3, 1]));
    }

    #[test]
    fn symmetric_quotient_degree_two() {
        let rel = Relation {
            degree: 2,
            terms: vec![
                RelTerm { gen: 0, word: SurjWord::parse("12").unwrap(), coef: rat(1) },
                RelTerm { gen: 0, word: SurjWord::parse("21").unwrap(), coef: rat(-1) },
            ],
        };
        let m = FsopModule::new(FsopPresentation::new(vec![2], vec![rel]).unwrap());
        assert_eq!(m.dim(2).unwrap(), 1);
    }

    #[test]
    fn evaluation_bound_enforced() {
        let m = FsopModule::new(FsopPresentation::free(vec![1]));
        assert!(matches!(m.dim(9), Err(Error::BoundExceeded { .. })));
        let m3 = FsopModule::new(FsopPresentation::free(vec![3]));
        assert!(m3.dim(7).is_err());
    }
}

#[cfg(test)]
mod complex_tests {
    use super::*;

    #[test]
    fn free_module_dims() {
        let m = FsopModule::new(FsopPresentation::free(vec![2]));
        assert_eq!(m.hilbert_dims(6).unwrap(), vec![0, 0, 2, 6, 14, 30, 62]);
    }

    #[test]
    fn bar_complex_exact_above_generation() {
        let m = FsopModule::new(FsopPresentation::free(vec![2]));
        for n in 0..=3 {
            assert!(m.bd_complex_at(3, n).unwrap().is_exact(), "n={n}");
        }
        let c = m.bd_complex_at(2, 0).unwrap();
        assert!(!c.is_exact());
    }

    #[test]
    fn character_matches_derivative_small() {
        let m = FsopModule::new(FsopPresentation::free(vec![1]));
        let ch = m.frobenius_character(4).unwrap();
        let bd = m.character_of_bd(2, 2).unwrap();
        for (l, f) in bd {
            assert_eq!(f, ch.apply_binom_d(&l), "lambda {l:?}");
        }
    }
}

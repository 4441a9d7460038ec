//! Acceptance suite: eighteen numbered criteria, each printed as
//! `criterion NN: PASS|FAIL: description`. Every comparison is exact. The
//! process exits with status 1 if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use fsopkit::charspace::*;
use fsopkit::exactla::{rat, rat_frac, Rat};
use fsopkit::fsopmod::*;
use fsopkit::langideal::*;
use fsopkit::posetrep::*;
use fsopkit::posets::*;
use fsopkit::symfun::{Partition, SymFunc};
use fsopkit::{Error, Limits};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: fsopkit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn part(v: &[usize]) -> Partition {
    Partition::new(v.to_vec())
}

fn profile(v: &[usize]) -> ExpProfile {
    ExpProfile::from_partition(&part(v))
}

fn word(s: &str) -> SurjWord {
    SurjWord::parse(s).expect("valid word")
}

// ---------------------------------------------------------------------------
// Oracles.

/// Coefficients of `∏ (1 − c t)`.
fn linear_product(cs: &[i64]) -> Vec<i64> {
    let mut out = vec![1i64];
    for &c in cs {
        let mut next = vec![0i64; out.len() + 1];
        for (i, &v) in out.iter().enumerate() {
            next[i] += v;
            next[i + 1] -= c * v;
        }
        out = next;
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// `μ(top) = 1`, `μ(x) = −Σ_{y > x} μ(y)`.
fn recursive_mobius(p: &FinitePoset) -> Vec<i64> {
    let n = p.size();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| p.above(x).count());
    let mut mu = vec![0i64; n];
    for x in order {
        let s: i64 = p.above(x).map(|y| mu[y]).sum();
        mu[x] = if p.above(x).next().is_none() { 1 } else { -s };
    }
    mu
}

fn factorial_i64(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Homology dimensions agree up to trailing zeros.
fn same_homology(a: &[usize], b: &[usize]) -> bool {
    let n = a.len().max(b.len());
    (0..n).all(|i| a.get(i).copied().unwrap_or(0) == b.get(i).copied().unwrap_or(0))
}

fn quotient_p2(sign: i64) -> FsopModule {
    let rel = Relation {
        degree: 2,
        terms: vec![
            RelTerm { gen: 0, word: word("12"), coef: rat(1) },
            RelTerm { gen: 0, word: word("21"), coef: rat(sign) },
        ],
    };
    FsopModule::new(FsopPresentation::new(vec![2], vec![rel]).expect("valid relation"))
}

fn free(g: usize) -> FsopModule {
    FsopModule::new(FsopPresentation::free(vec![g]))
}

// ---------------------------------------------------------------------------
// Criteria.

fn c01() -> Outcome {
    let start = Instant::now();
    for n in 1..=7 {
        let w = lib(whitney_polynomial(&lib(partition_lattice(n))?))?;
        let cs: Vec<i64> = (1..n as i64).collect();
        ensure(w.coeffs() == linear_product(&cs), || format!("P({n}): {w}"))?;
    }
    for n in 0..=10 {
        let w = lib(whitney_polynomial(&lib(boolean_lattice(n))?))?;
        ensure(w.coeffs() == linear_product(&vec![1; n]), || format!("B({n}): {w}"))?;
    }
    for q in [2usize, 3] {
        for n in 0..=3 {
            let w = lib(whitney_polynomial(&lib(subspace_lattice(q, n))?))?;
            let cs: Vec<i64> = (0..n as u32).map(|i| (q as i64).pow(i)).collect();
            ensure(w.coeffs() == linear_product(&cs), || format!("B_{q}({n}): {w}"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(120), || format!("took {t:?}"))
}

fn c02() -> Outcome {
    let mut lattices: Vec<(String, FinitePoset)> = Vec::new();
    for n in 1..=7 {
        lattices.push((format!("P({n})"), lib(partition_lattice(n))?));
    }
    for n in 0..=10 {
        lattices.push((format!("B({n})"), lib(boolean_lattice(n))?));
    }
    for q in [2, 3] {
        for n in 0..=3 {
            lattices.push((format!("B_{q}({n})"), lib(subspace_lattice(q, n))?));
        }
    }
    for (name, p) in &lattices {
        let oracle = recursive_mobius(p);
        // Euler characteristic from chain-group ranks, every element.
        let chain_mu = lib(mobius_all(p))?;
        ensure(chain_mu == oracle, || format!("{name}: chain-count Euler characteristic differs"))?;
        // Euler characteristic from homology, where the complexes are small.
        if p.size() <= 64 {
            for x in 0..p.size() {
                let h = lib(interval_pair_complex(p, x))?.homology_dims();
                let chi: i64 = h.iter().enumerate().map(|(i, &d)| if i % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
                ensure(chi == oracle[x], || format!("{name}, element {x}: homology gives {chi}, recursion {}", oracle[x]))?;
            }
        }
    }
    for n in 1..=6 {
        let p = lib(partition_lattice(n))?;
        for (x, rgs) in set_partitions(n).iter().enumerate() {
            let expect: i64 = rgs_blocks(rgs).iter().map(|b| factorial_i64(b.len() - 1)).product();
            let got = lib(mobius_tilde(&p, x))?;
            ensure(got == expect, || format!("P({n}) at {}: {got} vs {expect}", partition_label(rgs)))?;
        }
    }
    Ok(())
}

fn c03() -> Outcome {
    for n in 1..=5 {
        ensure(is_upper_cm(&lib(partition_lattice(n))?), || format!("P({n})"))?;
        ensure(is_upper_cm(&lib(boolean_lattice(n))?), || format!("B({n})"))?;
    }
    for n in 1..=3 {
        ensure(is_upper_cm(&lib(subspace_lattice(2, n))?), || format!("B_2({n})"))?;
    }
    Ok(())
}

fn c04() -> Outcome {
    for (name, p) in [("P(5)", lib(partition_lattice(5))?), ("B(5)", lib(boolean_lattice(5))?)] {
        let p = Arc::new(p);
        let top = p.top().ok_or("no top")?;
        for x in (0..p.size()).filter(|&x| x != top) {
            let c = lib(bar_complex(&ideal_rep(&lib(principal_ideal(&p, x))?)))?;
            ensure(c.is_exact(), || format!("{name}, element {}: homology {:?}", p.label(x), c.homology_dims()))?;
        }
    }
    Ok(())
}

fn random_rep(p: &Arc<FinitePoset>, rng: &mut ChaCha8Rng) -> Result<PosetRep, String> {
    let ambient = rng.gen_range(1..=3);
    let gens: Vec<Vec<Vec<Rat>>> = (0..p.size())
        .map(|_| {
            if rng.gen_bool(0.25) {
                vec![(0..ambient).map(|_| rat(rng.gen_range(-2..=2))).collect()]
            } else {
                Vec::new()
            }
        })
        .collect();
    if rng.gen_bool(0.5) {
        lib(PosetRep::subspace_rep(p.clone(), ambient, &gens))
    } else {
        lib(PosetRep::quotient_rep(p.clone(), ambient, &gens))
    }
}

fn c05() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for (name, p) in [("P(4)", lib(partition_lattice(4))?), ("B(4)", lib(boolean_lattice(4))?)] {
        let p = Arc::new(p);
        for i in 0..25 {
            let m = random_rep(&p, &mut rng)?;
            ensure(m.is_functorial(), || format!("{name} #{i}: not functorial"))?;
            let k = lib(koszul_complex(&m))?.homology_dims();
            let b = lib(bar_complex(&m))?.homology_dims();
            ensure(same_homology(&k, &b), || format!("{name} #{i}: koszul {k:?} vs bar {b:?}"))?;
        }
    }
    Ok(())
}

fn c06() -> Outcome {
    let modules = [("P(1)", free(1)), ("P(2)", free(2)), ("P(2)/(12-21)", quotient_p2(-1)), ("P(2)/(12+21)", quotient_p2(1))];
    for (name, m) in &modules {
        for d in 1..=3 {
            let lattice = lib(partition_lattice(d))?;
            let mu = recursive_mobius(&lattice);
            let blocks: Vec<usize> = set_partitions(d).iter().map(|r| rgs_blocks(r).len()).collect();
            for n in 0..=4 {
                let chi = lib(m.bd_complex_at(d, n))?.euler_characteristic();
                let mut rhs = 0i64;
                for x in 0..lattice.size() {
                    rhs += mu[x] * lib(m.dim(n + blocks[x]))? as i64;
                }
                ensure(chi == rhs, || format!("{name}, d={d}, n={n}: {chi} vs {rhs}"))?;
            }
        }
    }
    Ok(())
}

fn c07() -> Outcome {
    for g in 1..=2 {
        let m = free(g);
        for d in 3..=4 {
            for n in 0..=4 {
                let b = lib(m.bd_complex_at(d, n))?;
                ensure(b.is_exact(), || format!("bd P({g}) d={d} n={n}: {:?}", b.homology_dims()))?;
                let k = lib(m.kd_complex_at(d, n))?;
                ensure(k.is_exact(), || format!("kd P({g}) d={d} n={n}: {:?}", k.homology_dims()))?;
            }
        }
    }
    let m = free(2);
    for n in 0..=3 {
        let c = lib(m.iterated_bd_at(&[2, 3], n))?;
        ensure(c.is_exact(), || format!("iterated (2,3) n={n}: {:?}", c.homology_dims()))?;
    }
    let k1 = lib(free(1).kd_complex_at(1, 0))?;
    ensure(!k1.is_exact(), || "K_1(P(1)) at n=0 is exact".into())
}

fn c08() -> Outcome {
    let dims = lib(free(2).hilbert_dims(8))?;
    let oracle: Vec<usize> = (0..=8u32).map(|n| (1usize << n).saturating_sub(2)).collect();
    ensure(dims == oracle, || format!("dims {dims:?}"))?;
    let denom = IntPolynomial::new(linear_product(&[1, 2]));
    ensure(lib(verify_rational_tail(&dims, &denom, 3))?, || "tail check failed".into())?;
    let num = series_numerator(&dims, &denom, 9);
    ensure(num == IntPolynomial::new(vec![0, 0, 2]), || format!("numerator {num}"))
}

fn c09() -> Outcome {
    let max_n = 5;
    for (name, m) in [("P(1)", free(1)), ("P(2)", free(2))] {
        for d in 1..=3 {
            let ch = lib(m.frobenius_character(max_n + d))?;
            for (l, f) in lib(m.character_of_bd(d, max_n))? {
                let expect = ch.apply_binom_d(&l);
                ensure(f == expect, || format!("{name}, λ = {l}: traces differ from the operator"))?;
            }
        }
    }
    Ok(())
}

fn c10() -> Outcome {
    let n_trunc = 12;
    for n in 1..=6 {
        for m in 1..=6 {
            let got = lib(SymFunc::y(m, n_trunc))?.apply_d(n);
            let expect = if n == m { SymFunc::one(n_trunc - n) } else { SymFunc::zero(n_trunc - n) };
            ensure(got == expect, || format!("D_{n}(y_{m})"))?;
        }
    }
    for n in 1..=n_trunc {
        let mut sum = SymFunc::zero(n_trunc);
        for d in (1..=n_trunc / n).filter(|d| n * d <= n_trunc) {
            let mu = fsopkit::symfun::int_mobius(d);
            if mu != 0 {
                sum = lib(sum.add(&lib(SymFunc::y(n * d, n_trunc))?.scale(&rat_frac(mu, d as i64))))?;
            }
        }
        ensure(sum == lib(SymFunc::p_single(n, n_trunc))?, || format!("p_{n} from y"))?;
    }
    let big = 6;
    for a in [profile(&[]), profile(&[1]), profile(&[1, 1]), profile(&[2])] {
        let e = a.exp_series(big);
        for nu in Partition::all_up_to(big) {
            let f = lib(lib(SymFunc::p(&nu, big))?.mul(&e))?;
            for l in Partition::all_up_to(big) {
                let u = lib(a.u_partition(&l, big))?;
                let v = lib(u.hall_pair(&f))? / Rat::from_integer(l.z());
                let want = if l == nu { Rat::one() } else { Rat::zero() };
                ensure(v == want, || format!("A = {:?}, λ = {l}, ν = {nu}: {v}", a.as_partition()))?;
            }
        }
    }
    Ok(())
}

fn c11() -> Outcome {
    let n = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0011);
    for k in 1..=3 {
        for trial in 0..6 {
            // A random element of V_{A,r} with |A| ≤ k.
            let a_part = loop {
                let size = rng.gen_range(0..=k);
                let ps = Partition::all(size);
                break ps[rng.gen_range(0..ps.len())].clone();
            };
            let a = ExpProfile::from_partition(&a_part);
            let r = rng.gen_range(1..=3);
            let mut poly = SymFunc::zero(n);
            for l in Partition::all_up_to(4).into_iter().filter(|l| l.rank() < r) {
                if rng.gen_bool(0.4) {
                    poly = lib(poly.add(&lib(SymFunc::p(&l, n))?.scale(&rat(rng.gen_range(-3..=3)))))?;
                }
            }
            let f = lib(poly.mul(&a.exp_series(n)))?;
            let pf = lib(pi_k(&f, k))?;
            let tag = || format!("k={k} trial {trial} A={a_part} r={r}");
            ensure(eps_k(&pf, k) == eps_k(&f, k), || format!("{}: ε_k∘π_k ≠ ε_k", tag()))?;
            ensure(lib(pi_k(&pf, k))? == pf, || format!("{}: π_k not idempotent", tag()))?;
            ensure(in_f_leq_k(&pf, k), || format!("{}: image outside F_≤k", tag()))?;
            ensure(lib(in_v_ar(&f, &a, r))?, || format!("{}: sample not in V_A,r", tag()))?;
            ensure(lib(in_v_ar(&pf, &a, r))?, || format!("{}: π_k left V_A,r", tag()))?;
        }
    }
    let n = 12;
    let a = profile(&[1]);
    let e = a.exp_series(n);
    let f = lib(lib(SymFunc::p_single(2, n))?.mul(&e))?;
    let mut tail = SymFunc::zero(n);
    for m in 2..=n {
        tail = lib(tail.add(&lib(SymFunc::p_single(m, n))?))?;
    }
    let expect = lib(tail.mul(&e))?;
    ensure(lib(pi_k(&f, 2))? == expect, || "π_2(p_2 exp(y_1)) at N = 12".into())
}

/// Coefficients of `t^{|λ|} rank! / (∏ m_i! · ∏_i (1 − t^i)^{a_i (rank+1)})` up to `t^n`.
fn h_pairing_oracle(l: &Partition, a: &ExpProfile, n: usize) -> Vec<Rat> {
    let mut series = vec![BigInt::zero(); n + 1];
    if l.size() <= n {
        series[l.size()] = BigInt::one();
    }
    for _ in 0..=l.rank() {
        for (i, &ai) in a.multiplicities().iter().enumerate() {
            let step = i + 1;
            for _ in 0..ai {
                for j in step..=n {
                    let prev = series[j - step].clone();
                    series[j] += prev;
                }
            }
        }
    }
    let mut denom = BigInt::one();
    for (_, &m) in l.multiplicities().iter() {
        denom *= BigInt::from(factorial_i64(m));
    }
    let num = BigInt::from(factorial_i64(l.rank()));
    series.into_iter().map(|c| Rat::new(c * &num, denom.clone())).collect()
}

fn c12() -> Outcome {
    for (r, k) in [(2, 2), (3, 2), (2, 3)] {
        for a in [profile(&[1]), profile(&[2])] {
            let parts = part_rk(r, k);
            let n = (r - 1) * k;
            let ls: Vec<SymFunc> = parts.iter().map(|nu| lib(l_nu(nu, &a, r, k, n))).collect::<Result<_, _>>()?;
            for lam in &parts {
                let e = lib(e_partition(&a, lam, n))?;
                for (nu, l) in parts.iter().zip(&ls) {
                    let v = lib(e.hall_pair(l))?;
                    let want = if lam == nu { Rat::one() } else { Rat::zero() };
                    ensure(v == want, || format!("(r,k)=({r},{k}) A={}: ⟨E_{lam}, L_{nu}⟩ = {v}", a.as_partition()))?;
                }
            }
            let big = 12;
            for nu in &parts {
                let l = lib(l_nu(nu, &a, r, k, big))?;
                let oracle = h_pairing_oracle(nu, &a, big);
                for (deg, want) in oracle.iter().enumerate() {
                    let got = h_pairing(&l, deg);
                    ensure(&got == want, || format!("⟨h_{deg}, L_{nu}⟩ = {got}, expected {want}"))?;
                }
            }
        }
    }
    Ok(())
}

fn c13() -> Outcome {
    let mut specs = vec![
        ClassFnParams { nu: part(&[]), a: profile(&[1, 1]) },
        ClassFnParams { nu: part(&[]), a: profile(&[2]) },
        ClassFnParams { nu: part(&[2, 1]), a: profile(&[]) },
        ClassFnParams { nu: part(&[3]), a: profile(&[]) },
        ClassFnParams { nu: part(&[]), a: profile(&[1]) },
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0013);
    for _ in 0..10 {
        let pick = |rng: &mut ChaCha8Rng, max: usize| {
            let ps = Partition::all(rng.gen_range(0..=max));
            ps[rng.gen_range(0..ps.len())].clone()
        };
        let nu = pick(&mut rng, 4);
        let a = ExpProfile::from_partition(&pick(&mut rng, 4));
        specs.push(ClassFnParams { nu, a });
    }
    for s in &specs {
        ensure(lib(translation_check(s, 8))?, || format!("ν = {}, A = {}", s.nu, s.a.as_partition()))?;
    }
    // Hand values of the class functions.
    let v = |nu: &[usize], a: &[usize], mu: &[usize]| class_fn_eval(&ClassFnParams { nu: part(nu), a: profile(a) }, &part(mu));
    ensure(v(&[], &[1, 1], &[2, 1]) == rat(4), || "A=1², μ=(2,1)".into())?;
    ensure(v(&[], &[2], &[2, 2]) == rat(4), || "A=2¹, μ=(2,2)".into())?;
    ensure(v(&[], &[2], &[2, 1]) == rat(0), || "A=2¹, μ=(2,1)".into())?;
    ensure(v(&[2, 1], &[], &[2, 1]) == rat(1) && v(&[2, 1], &[], &[3]) == rat(0), || "A=0".into())
}

fn c14() -> Outcome {
    let m = FsopModule::with_max_degree(FsopPresentation::free(vec![2]), 10);
    let ch = lib(m.frobenius_character(10))?;
    for l in [part(&[]), part(&[1])] {
        let seq = lib(multiplicity_series(&ch, &l, 10 - l.size()))?;
        let fit = rational_fit(&seq, 3, 2).ok_or_else(|| format!("no fit for λ = {l}: {seq:?}"))?;
        ensure(expand_rational(&fit, seq.len()) == seq, || format!("λ = {l}: fit does not reproduce the series"))?;
        // Denominator must be (1 − t)^i (1 + t)^j.
        let ok = (0..=3).any(|i| {
            (0..=3 - i).any(|j| {
                let mut p = IntPolynomial::one();
                for _ in 0..i {
                    p = p.mul(&IntPolynomial::new(vec![1, -1]));
                }
                for _ in 0..j {
                    p = p.mul(&IntPolynomial::new(vec![1, 1]));
                }
                p == fit.denominator
            })
        });
        ensure(ok, || format!("λ = {l}: denominator {}", fit.denominator))?;
    }
    Ok(())
}

fn c15() -> Outcome {
    let lang = lib(parse_regex("ab*a(a*b*)*", &['a', 'b']))?;
    let w = lib(parse_word("abba", 2))?;
    let ideal = lib(ideal_i(&w, &lang, &Limits::DEFAULT))?;
    let got: BTreeSet<String> = ideal.member_labels().into_iter().collect();
    let want: BTreeSet<String> = ["1|2|3|4", "1|23|4"].iter().map(|s| s.to_string()).collect();
    ensure(got == want, || format!("ideal {got:?}"))?;
    let quotients: BTreeSet<String> = set_partitions(4)
        .iter()
        .filter_map(|p| quotient_word(&w, p))
        .map(|q| format_word(&q))
        .collect();
    let want: BTreeSet<String> = ["abba", "abb", "aba", "ab"].iter().map(|s| s.to_string()).collect();
    ensure(quotients == want, || format!("quotient words {quotients:?}"))
}

fn random_tuple(rng: &mut ChaCha8Rng, d: usize, r: usize, budget: usize) -> Option<Vec<Word>> {
    let mut lens: Vec<usize> = (0..r).map(|t| if t + 1 == r { d + 1 } else { d }).collect();
    let base: usize = lens.iter().sum();
    if base > budget {
        return None;
    }
    for _ in 0..rng.gen_range(0..=budget - base) {
        let t = rng.gen_range(0..r);
        lens[t] += 1;
    }
    Some(lens.iter().map(|&l| (0..l).map(|_| rng.gen_range(0..d)).collect()).collect())
}

fn c16() -> Outcome {
    let limits = Limits::DEFAULT;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0016);
    let (mut verified, mut skipped) = (0usize, 0usize);
    for d in 1..=2 {
        for a in small_ordered_automata(3, d, STAR_CHECK_LEN) {
            let len = a.length();
            for _ in 0..4 {
                let r = rng.gen_range(len.max(1)..=3);
                let Some(words) = random_tuple(&mut rng, d, r, 9) else { continue };
                match verify_languages_theorem(&a, &words, &limits) {
                    Ok(rep) => {
                        let label = || format!("automaton {:?}, words {:?}", a.dfa().to_json(), words.iter().map(|w| format_word(w)).collect::<Vec<_>>());
                        ensure(rep.hypotheses_met(), || format!("hypotheses unexpectedly unmet: {}", label()))?;
                        ensure(rep.exact(), || format!("homology {:?} for {}", rep.homology, label()))?;
                        verified += 1;
                    }
                    Err(Error::BoundExceeded { .. }) => skipped += 1,
                    Err(e) => return Err(e.to_string()),
                }
            }
        }
    }
    println!("  languages sample: {verified} instances exact, {skipped} skipped over the generator budget");
    ensure(verified >= 100, || format!("only {verified} instances verified"))?;
    let all = lib(parse_regex("a*", &['a']))?;
    let a = reachability_order(&all).ok_or("a* not ordered")?;
    let rep = lib(verify_languages_theorem(&a, &[vec![0]], &limits))?;
    ensure(!rep.hypotheses_met() && !rep.exact(), || format!("unmet branch: {:?}", rep.homology))
}

fn c17() -> Outcome {
    ensure(lib(os_order_axiom_check(3, 5))?, || "order axiom".into())?;
    let limits = Limits::DEFAULT;
    let mut subs = vec![lib(WordSubmodule::new(2, vec![vec![(word("12"), rat(1)), (word("21"), rat(-1))]]))?];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0017);
    for _ in 0..4 {
        let n = rng.gen_range(2..=3);
        let mut g: Vec<(SurjWord, Rat)> = Vec::new();
        for w in enumerate_surjections(n, 2) {
            if rng.gen_bool(0.5) {
                g.push((w, rat(rng.gen_range(-3..=3))));
            }
        }
        g.retain(|(_, c)| !c.is_zero());
        if !g.is_empty() {
            subs.push(lib(WordSubmodule::new(2, vec![g]))?);
        }
    }
    for (i, sub) in subs.iter().enumerate() {
        for x in 0..=2 {
            ensure(lib(assoc_graded_check(sub, x, &[1, 2, 3], &limits))?, || format!("submodule #{i}, x = {x}"))?;
        }
    }
    let init = lib(init_ideal(&subs[0], 3, &limits))?;
    ensure(init[2].iter().map(|w| w.to_string()).collect::<Vec<_>>() == ["21"], || "init of (12 - 21) in degree 2".into())
}

fn c18() -> Outcome {
    for a in [profile(&[1]), profile(&[1, 1]), profile(&[2])] {
        for m in 0..=8 {
            let e = lib(e_elem(&a, m, 8))?;
            if m == 0 {
                ensure(e.is_zero(), || "E_0 ≠ 0".into())?;
                continue;
            }
            ensure(e == lib(e_elem_via_u(&a, m, 8))?, || format!("A = {}, m = {m}", a.as_partition()))?;
            ensure(a.evaluate_at_base(&e).is_zero(), || format!("A = {}, m = {m}: constant u-term", a.as_partition()))?;
        }
    }
    let a = profile(&[1]);
    for n in 4..=10 {
        let q = lib(u_n_in_quotient(&a, 3, 2, n))?;
        ensure(q == lib(u_n_by_reduction(&a, 3, 2, n))?, || format!("n = {n}: generating function vs reduction"))?;
        let nn = n as i64;
        let expected = [
            (part(&[1]), rat(0)),
            (part(&[2]), rat_frac(nn, 2)),
            (part(&[1, 1]), rat_frac(-nn, 2)),
            (part(&[2, 1]), rat_frac(nn, 2)),
            (part(&[2, 2]), rat_frac(nn * (nn - 3), 8)),
            (part(&[1, 1, 1]), rat(0)),
        ];
        for (l, v) in expected {
            ensure(q.coeff(&l) == v, || format!("n = {n}: coefficient of u{l} is {}", q.coeff(&l)))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(u32, &str, fn() -> Outcome); 18] = [
        (1, "Whitney polynomials of P(n), B(n), B_q(n) factor into linear terms", c01),
        (2, "homological and recursive Möbius numbers agree; tilde-mu on P(n) is a product of factorials", c02),
        (3, "P(n), B(n), B_2(n) are upper Cohen-Macaulay at small n", c03),
        (4, "bar complexes of principal ideals at non-top elements of P(5), B(5) are exact", c04),
        (5, "Koszul and bar homology agree on random functorial representations of P(4), B(4)", c05),
        (6, "Euler characteristic of B_d(M)_n equals the Möbius-weighted dimension sum", c06),
        (7, "bar and Koszul complexes of P(1), P(2) are exact for 3 <= d <= 4; K_1(P(1)) is not", c07),
        (8, "Hilbert series of P(2) has denominator (1-t)(1-2t) and numerator 2t^2", c08),
        (9, "character of B_d(M) equals the binomial operator applied to ch(M) up to degree 5", c09),
        (10, "D_n(y_m) = delta, p_n from y, and the u-expansion pairing is a Kronecker delta", c10),
        (11, "pi_k is the unique lift into F_<=k and preserves V_{A,r}", c11),
        (12, "L_nu is dual to E_lambda on Part(r,k); h-pairing generating function", c12),
        (13, "character exponentials match their class functions for |mu| <= 8", c13),
        (14, "multiplicity series of ch(P(2)) have rational fits with poles at +-1", c14),
        (15, "ideal of abba in ab*a(a*b*)* and its quotient words", c15),
        (16, "iterated bar complexes of language ideals are exact under the hypotheses", c16),
        (17, "lexicographic word order is preserved by ordered surjections; associated graded check", c17),
        (18, "adapted generators expand in shifted power sums; quotient-ring expansion of u_n", c18),
    ];
    let mut failures = 0;
    let start = Instant::now();
    for (n, desc, f) in criteria {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => println!("criterion {n:02}: PASS: {desc} ({:.1?})", t.elapsed()),
            Err(why) => {
                failures += 1;
                println!("criterion {n:02}: FAIL: {desc} ({:.1?})", t.elapsed());
                println!("  reason: {why}");
            }
        }
    }
    println!("acceptance: {} of 18 passed in {:.1?}", 18 - failures, start.elapsed());
    if failures > 0 {
        std::process::exit(1);
    }
}

//! Property tests for the invariants of each module.

use std::sync::Arc;

use fsopkit::charspace::*;
use fsopkit::exactla::*;
use fsopkit::fsopmod::*;
use fsopkit::langideal::*;
use fsopkit::posetrep::*;
use fsopkit::posets::*;
use fsopkit::shell::*;
use fsopkit::symfun::{Partition, SymFunc};
use fsopkit::Limits;
use num_traits::Zero;
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = RatMatrix> {
    (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-3i64..=3, c), r).prop_map(|rows| RatMatrix::from_i64(&rows))
    })
}

fn trace(m: &RatMatrix) -> Rat {
    (0..m.nrows().min(m.ncols())).map(|i| m.get(i, i)).sum()
}

fn sym_quotient(sign: i64) -> FsopModule {
    let rel = Relation {
        degree: 2,
        terms: vec![
            RelTerm { gen: 0, word: SurjWord::parse("12").unwrap(), coef: rat(1) },
            RelTerm { gen: 0, word: SurjWord::parse("21").unwrap(), coef: rat(sign) },
        ],
    };
    FsopModule::new(FsopPresentation::new(vec![2], vec![rel]).unwrap())
}

/// Random small partition of `n` given by a label per position.
fn rgs_of(labels: &[usize]) -> Vec<u8> {
    normalize_rgs(labels)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rank_of_transpose(m in small_matrix()) {
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn kernel_is_annihilated(m in small_matrix()) {
        let k = kernel_basis(&m);
        prop_assert_eq!(k.ncols() + rank(&m), m.ncols());
        prop_assert!(m.mul(&k).unwrap().is_zero());
        prop_assert_eq!(rank(&k), k.ncols());
    }

    #[test]
    fn bar_euler_characteristic_is_mobius_sum(seed in 0u64..1000, which in 0usize..3) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let p = Arc::new(match which {
            0 => boolean_lattice(3).unwrap(),
            1 => partition_lattice(4).unwrap(),
            _ => subspace_lattice(2, 2).unwrap(),
        });
        let ambient = rng.gen_range(1..=3);
        let gens: Vec<Vec<Vec<Rat>>> = (0..p.size())
            .map(|_| if rng.gen_bool(0.3) { vec![(0..ambient).map(|_| rat(rng.gen_range(-2..=2))).collect()] } else { vec![] })
            .collect();
        let m = PosetRep::quotient_rep(p.clone(), ambient, &gens).unwrap();
        let mu = mobius_all(&p).unwrap();
        let rhs: i64 = (0..p.size()).map(|x| mu[x] * m.dim(x) as i64).sum();
        prop_assert_eq!(bar_complex(&m).unwrap().euler_characteristic(), rhs);
    }

    #[test]
    fn product_whitney_is_product(a in 0usize..4, b in 1usize..4) {
        let pa = boolean_lattice(a).unwrap();
        let pb = partition_lattice(b).unwrap();
        let prod = product_poset(&[&pa, &pb]).unwrap();
        let w = whitney_polynomial(&prod).unwrap();
        prop_assert_eq!(w, whitney_polynomial(&pa).unwrap().mul(&whitney_polynomial(&pb).unwrap()));
    }

    #[test]
    fn quotient_character_is_matrix_trace(sign in prop::sample::select(vec![-1i64, 1]), n in 2usize..6) {
        let m = sym_quotient(sign);
        let ch = m.sn_character(n).unwrap();
        for (mu, v) in ch.iter() {
            let mat = m.map_for(&standard_permutation(mu)).unwrap();
            prop_assert_eq!(&trace(&mat), v, "cycle type {}", mu);
        }
    }

    #[test]
    fn module_maps_compose(f_idx in 0usize..50, g_idx in 0usize..50) {
        // f: [4] ↠ [3], g: [5] ↠ [4]; M(f∘g) = M(g)·M(f).
        let m = sym_quotient(-1);
        let fs = enumerate_surjections(4, 3);
        let gs = enumerate_surjections(5, 4);
        let f = &fs[f_idx % fs.len()];
        let g = &gs[g_idx % gs.len()];
        let fg = f.precompose(g).unwrap();
        let lhs = m.map_for(&fg).unwrap();
        let rhs = m.map_for(g).unwrap().mul(&m.map_for(f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn koszul_and_bar_agree_on_modules(d in 1usize..4, n in 0usize..4, sign in prop::sample::select(vec![-1i64, 1])) {
        let m = sym_quotient(sign);
        let b = m.bd_complex_at(d, n).unwrap().homology_dims();
        let k = m.kd_complex_at(d, n).unwrap().homology_dims();
        let len = b.len().max(k.len());
        let pad = |v: &[usize]| (0..len).map(|i| v.get(i).copied().unwrap_or(0)).collect::<Vec<_>>();
        prop_assert_eq!(pad(&b), pad(&k));
    }

    #[test]
    fn hall_adjointness(i in 1usize..4, a in prop::collection::vec(-3i64..=3, 7), b in prop::collection::vec(-3i64..=3, 7)) {
        let n = 6;
        let basis = Partition::all_up_to(3);
        let build = |c: &[i64]| SymFunc::from_terms(n, basis.iter().cloned().zip(c.iter().map(|&x| rat(x))));
        let f = build(&a);
        let g = build(&b);
        let lhs = f.apply_partial(i).retruncate(n - i).unwrap().hall_pair(&g.retruncate(n - i).unwrap()).unwrap() * rat(i as i64);
        let pg = SymFunc::p_single(i, n).unwrap().mul(&g).unwrap();
        prop_assert_eq!(lhs, f.hall_pair(&pg).unwrap());
    }

    #[test]
    fn u_coefficients_are_recovered(coefs in prop::collection::vec(-4i64..=4, 5), which in 0usize..3) {
        let n = 6;
        let a = [ExpProfile::zero(), ExpProfile::from_multiplicities(&[1]), ExpProfile::from_multiplicities(&[0, 1])][which].clone();
        let shapes = [vec![], vec![1], vec![2], vec![1, 1], vec![3]];
        let mut f = SymFunc::zero(n);
        for (s, &c) in shapes.iter().zip(&coefs) {
            f = f.add(&SymFunc::p(&Partition::new(s.clone()), n).unwrap().scale(&rat(c))).unwrap();
        }
        let f = f.mul(&a.exp_series(n)).unwrap();
        for (s, &c) in shapes.iter().zip(&coefs) {
            prop_assert_eq!(u_expansion_coeff(&f, &Partition::new(s.clone()), &a).unwrap(), rat(c));
        }
    }

    #[test]
    fn eps_is_idempotent(k in 1usize..4, coefs in prop::collection::vec(-3i64..=3, 11)) {
        let n = 5;
        let f = SymFunc::from_terms(n, Partition::all_up_to(4).into_iter().zip(coefs.iter().map(|&c| rat(c))));
        prop_assert_eq!(eps_k(&eps_k(&f, k), k), eps_k(&f, k));
    }

    #[test]
    fn quotient_words_compose(w in prop::collection::vec(0usize..2, 1..7), coarse in prop::collection::vec(0usize..3, 7), split in prop::collection::vec(0usize..2, 7)) {
        let n = w.len();
        let p = rgs_of(&coarse[..n]);
        // q refines p: split each block of p by a second label.
        let q = rgs_of(&(0..n).map(|i| 2 * p[i] as usize + split[i]).collect::<Vec<_>>());
        let direct = quotient_word(&w, &p);
        if let Some(wq) = quotient_word(&w, &q) {
            // The partition of q's blocks induced by p.
            let blocks = rgs_blocks(&q);
            let induced = rgs_of(&blocks.iter().map(|b| p[b[0]] as usize).collect::<Vec<_>>());
            prop_assert_eq!(quotient_word(&wq, &induced), direct);
        } else {
            prop_assert!(direct.is_none());
        }
    }

    #[test]
    fn full_language_ideal_is_principal(w in prop::collection::vec(0usize..2, 1..6)) {
        let all = parse_regex("(a|b)*", &['a', 'b']).unwrap();
        let ideal = ideal_i(&w, &all, &Limits::DEFAULT).unwrap();
        let parts = set_partitions(w.len());
        let x = parts.iter().position(|r| *r == letter_partition(&w)).unwrap();
        let principal = principal_ideal(ideal.poset(), x).unwrap();
        prop_assert_eq!(ideal.members(), principal.members());
    }

    #[test]
    fn minimization_preserves_language(expr in "[ab|*()]{0,10}") {
        // Random strings are often malformed; only well-formed ones are compared.
        if let Ok(d) = parse_regex(&expr, &['a', 'b']) {
            prop_assert_eq!(d.minimize(), d.clone());
            let back = Dfa::from_json(&d.to_json(), &Limits::DEFAULT).unwrap();
            prop_assert_eq!(&back, &d);
            // Doubling the expression denotes the same language concatenated; compare with a brute-force oracle.
            let twice = parse_regex(&format!("({expr})({expr})"), &['a', 'b']).unwrap();
            for len in 0..=5usize {
                for bits in 0..(1usize << len) {
                    let word: Vec<usize> = (0..len).map(|i| bits >> i & 1).collect();
                    let split = (0..=len).any(|k| d.accepts(&word[..k]) && d.accepts(&word[k..]));
                    prop_assert_eq!(twice.accepts(&word), split);
                }
            }
        }
    }

    #[test]
    fn report_round_trips(dims in prop::collection::vec(0usize..100, 0..6), text in "[a-z ]{0,12}") {
        let r = VerificationReport::new("module-evaluation", Verdict::Fail).unwrap()
            .param("label", &text)
            .with("dims", &dims)
            .witness(&dims);
        let cfg = RunConfig::default();
        let s = emit_report(&r, &cfg);
        prop_assert_eq!(VerificationReport::from_json_str(&s).unwrap(), r);
    }
}

#[test]
fn ideals_are_upward_closed_when_duplication_holds() {
    let limits = Limits::DEFAULT;
    for a in small_ordered_automata(3, 2, STAR_CHECK_LEN) {
        for len in 1..=5usize {
            for bits in 0..(1usize << len) {
                let w: Vec<usize> = (0..len).map(|i| bits >> i & 1).collect();
                assert!(ideal_i(&w, a.dfa(), &limits).is_ok(), "{:?} {}", a.dfa().to_json(), format_word(&w));
            }
        }
    }
}

#[test]
fn order_is_total_on_each_hom_set() {
    for d in 1..=3 {
        for n in d..=4 {
            let ws = enumerate_surjections(n, d);
            for u in &ws {
                for v in &ws {
                    let o = os_word_order(u, v).unwrap();
                    assert_eq!(o.is_eq(), u == v);
                    assert_eq!(o.reverse(), os_word_order(v, u).unwrap());
                }
            }
        }
    }
}

#[test]
fn free_module_characters_are_fixed_point_counts() {
    let m = FsopModule::new(FsopPresentation::free(vec![2]));
    for n in 2..=5 {
        let words = enumerate_surjections(n, 2);
        for (mu, v) in m.sn_character(n).unwrap().iter() {
            let sigma = standard_permutation(mu);
            let fixed = words.iter().filter(|w| w.precompose(&sigma).unwrap() == **w).count();
            assert_eq!(*v, rat(fixed as i64), "{mu}");
        }
    }
    let ch = m.frobenius_character(6).unwrap();
    assert!(in_f_leq_k(&ch, 2));
    assert!(!ch.is_zero());
}

#[test]
fn type_checks_match_expectations() {
    let p1 = FsopModule::new(FsopPresentation::free(vec![1]));
    assert!(p1.check_type_less(&Partition::new(vec![2]), 0..=3, 1).unwrap().consistent);
    let r = p1.check_type_less(&Partition::new(vec![1]), 0..=3, 1).unwrap();
    assert!(!r.consistent);
    assert!(r.witness.is_some());
    let exp = ExpProfile::from_multiplicities(&[1]).exp_series(8);
    assert!(type_equations_check(&exp, &Partition::new(vec![2]), 2).unwrap().holds());
    let p = SymFunc::p_single(1, 8).unwrap();
    assert!(!type_equations_check(&p, &Partition::new(vec![1]), 1).unwrap().holds());
    let z = SymFunc::zero(4);
    assert!(z.is_zero() && Rat::zero() == z.coeff(&Partition::empty()));
}

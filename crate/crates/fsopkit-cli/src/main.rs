//! `fsopkit` command-line interface.
//!
//! Every subcommand prints one verification report. Exit status: 0 pass,
//! 2 fail, 3 hypotheses unmet, 1 for usage or input errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use fsopkit::charspace::{self, ClassFnParams, ExpProfile};
use fsopkit::exactla::{format_rat, Rat, RationalChainComplex};
use fsopkit::fsopmod::{self, FsopModule, FsopPresentation};
use fsopkit::langideal::{self, Dfa, OrderedDfa, WordSubmodule};
use fsopkit::posetrep::{bar_complex, koszul_complex, PosetRep};
use fsopkit::posets::{self, FinitePoset, IntPolynomial};
use fsopkit::shell::{emit_report, Format, RunConfig, Verdict, VerificationReport};
use fsopkit::symfun::{Partition, SymFunc};
use fsopkit::{Error, Limits};
use serde_json::json;

/// Environment variable naming a directory that receives a copy of each report.
const REPORT_DIR_VAR: &str = "FSOPKIT_REPORT_DIR";

#[derive(Parser)]
#[command(name = "fsopkit", version, about = "Exact verification of poset homology, surjection modules, symmetric-function characters and language ideals")]
struct Cli {
    /// Evaluation degree bound for presented modules.
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    /// Extra degrees examined by bounded quantifiers.
    #[arg(long, global = true)]
    slack: Option<usize>,
    /// Output format: json or text.
    #[arg(long, global = true)]
    format: Option<Format>,
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite posets and lattices.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Poset representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Presented modules over finite-set surjections.
    #[command(subcommand)]
    Fsop(FsopCmd),
    /// Truncated symmetric functions.
    #[command(subcommand)]
    Sym(SymCmd),
    /// Character spaces.
    #[command(subcommand)]
    Charspace(CharspaceCmd),
    /// Regular languages and initial ideals.
    #[command(subcommand)]
    Lang(LangCmd),
}

#[derive(Args)]
struct PosetSource {
    /// partition, boolean or subspace.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Field size for the subspace family.
    #[arg(long, default_value_t = 2)]
    q: usize,
    /// Poset JSON file instead of a family.
    #[arg(long)]
    poset: Option<PathBuf>,
}

#[derive(Subcommand)]
enum PosetCmd {
    Whitney(PosetSource),
    Mobius(PosetSource),
    Uppercm(PosetSource),
}

#[derive(Args)]
struct RepArgs {
    #[arg(long)]
    rep: PathBuf,
}

#[derive(Subcommand)]
enum RepCmd {
    Bar(RepArgs),
    Koszul(RepArgs),
}

#[derive(Args)]
struct ModuleSource {
    /// Module JSON file.
    #[arg(long)]
    module: Option<PathBuf>,
    /// Free module on one generator of this degree.
    #[arg(long)]
    free: Option<usize>,
}

#[derive(Subcommand)]
enum FsopCmd {
    Eval {
        #[command(flatten)]
        src: ModuleSource,
        #[arg(long)]
        n: usize,
    },
    Hilbert {
        #[command(flatten)]
        src: ModuleSource,
        #[arg(long)]
        max: usize,
        /// Roots c of the denominator ∏(1 − c·t), comma separated.
        #[arg(long)]
        denom: Option<String>,
        /// First degree of the tail check (default: denominator degree + 1).
        #[arg(long)]
        from: Option<usize>,
    },
    Kd {
        #[command(flatten)]
        src: ModuleSource,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    Type {
        #[command(flatten)]
        src: ModuleSource,
        /// Partition J, comma separated.
        #[arg(long)]
        j: String,
        #[arg(long, default_value_t = 0)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
    },
    Char {
        #[command(flatten)]
        src: ModuleSource,
        #[arg(long)]
        max: usize,
        /// Compare the character of B_d with the binomial operator.
        #[arg(long)]
        d: Option<usize>,
    },
}

#[derive(Subcommand)]
enum SymCmd {
    Pair {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        g: PathBuf,
    },
    Schur {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        max: usize,
    },
    #[command(name = "applyD")]
    ApplyD {
        #[arg(long)]
        f: PathBuf,
        /// Apply D_k.
        #[arg(long, conflicts_with = "lambda")]
        k: Option<usize>,
        /// Apply (D choose λ).
        #[arg(long)]
        lambda: Option<String>,
    },
}

#[derive(Subcommand)]
enum CharspaceCmd {
    Pik {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        k: usize,
    },
    Membership {
        #[arg(long)]
        f: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// Profile A as a partition, comma separated.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        r: Option<usize>,
    },
    Lnu {
        #[arg(long)]
        nu: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: usize,
        /// Truncation degree (default from the configuration).
        #[arg(long)]
        n: Option<usize>,
    },
    Classfn {
        #[arg(long)]
        nu: String,
        #[arg(long)]
        a: String,
        #[arg(long)]
        max: usize,
        /// Also evaluate on this cycle type.
        #[arg(long)]
        mu: Option<String>,
    },
    Multfit {
        #[command(flatten)]
        src: ModuleSource,
        /// Symmetric function file instead of a module.
        #[arg(long)]
        f: Option<PathBuf>,
        #[arg(long, default_value = "")]
        lambda: String,
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 3)]
        denom_degree: usize,
        #[arg(long, default_value_t = 2)]
        orders: usize,
    },
}

#[derive(Args)]
struct LanguageSource {
    #[arg(long)]
    regex: Option<String>,
    /// Alphabet letters for the regex, e.g. "ab".
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// DFA JSON file instead of a regex.
    #[arg(long)]
    dfa: Option<PathBuf>,
}

#[derive(Subcommand)]
enum LangCmd {
    Dfa(LanguageSource),
    Ideal {
        #[command(flatten)]
        src: LanguageSource,
        #[arg(long)]
        word: String,
    },
    Verify {
        #[command(flatten)]
        src: LanguageSource,
        /// Comma-separated words.
        #[arg(long)]
        words: String,
    },
    Init {
        /// Module JSON with one generator; its relations generate the submodule.
        #[arg(long)]
        module: PathBuf,
        #[arg(long)]
        max: usize,
    },
}

type CliResult<T> = Result<T, String>;

fn lib<T>(r: fsopkit::Result<T>) -> CliResult<T> {
    r.map_err(|e| e.to_string())
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_partition(s: &str) -> CliResult<Partition> {
    let parts: Vec<usize> = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| format!("bad partition part {t:?}")))
        .collect::<CliResult<_>>()?;
    if parts.contains(&0) {
        return Err("partition parts must be positive".into());
    }
    Ok(Partition::new(parts))
}

fn parse_list(s: &str) -> CliResult<Vec<i64>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| format!("bad integer {t:?}")))
        .collect()
}

fn report(id: &str, verdict: Verdict) -> VerificationReport {
    VerificationReport::new(id, verdict).expect("registered statement id")
}

fn homology_witness(c: &RationalChainComplex) -> serde_json::Value {
    json!({ "homology": c.homology_dims(), "chain_dims": c.dims() })
}

fn symfunc_value(f: &SymFunc) -> serde_json::Value {
    serde_json::to_value(f.to_json()).expect("serializable")
}

struct Ctx {
    cfg: RunConfig,
}

impl Ctx {
    fn limits(&self) -> Limits {
        self.cfg.effective_limits()
    }

    fn poset(&self, src: &PosetSource) -> CliResult<(String, FinitePoset, Option<IntPolynomial>)> {
        let l = self.limits();
        if let Some(path) = &src.poset {
            let p = lib(FinitePoset::from_json_str(&read(path)?, &l))?;
            return Ok((path.display().to_string(), p, None));
        }
        let family = src.family.as_deref().ok_or("either --family or --poset is required")?;
        let n = src.n.ok_or("--n is required with --family")?;
        let (name, p, roots): (String, FinitePoset, Vec<i64>) = match family {
            "partition" => (format!("P({n})"), lib(posets::partition_lattice_with(n, &l))?, (1..n as i64).collect()),
            "boolean" => (format!("B({n})"), lib(posets::boolean_lattice_with(n, &l))?, vec![1; n]),
            "subspace" => {
                let q = src.q;
                let roots = (0..n as u32).map(|i| (q as i64).pow(i)).collect();
                (format!("B_{q}({n})"), lib(posets::subspace_lattice_with(q, n, &l))?, roots)
            }
            other => return Err(format!("unknown family {other:?} (partition, boolean, subspace)")),
        };
        Ok((name, p, Some(IntPolynomial::product_of_linear(&roots))))
    }

    fn module(&self, src: &ModuleSource) -> CliResult<(String, FsopModule)> {
        let pres = match (&src.module, src.free) {
            (Some(path), None) => lib(FsopPresentation::from_json_str(&read(path)?))?,
            (None, Some(g)) => FsopPresentation::free(vec![g]),
            _ => return Err("exactly one of --module or --free is required".into()),
        };
        let name = match (&src.module, src.free) {
            (Some(path), _) => path.display().to_string(),
            (_, Some(g)) => format!("P({g})"),
            _ => unreachable!(),
        };
        Ok((name, FsopModule::with_limits(pres, &self.limits())))
    }

    fn symfunc(&self, path: &Path) -> CliResult<SymFunc> {
        lib(SymFunc::from_json_str(&read(path)?, self.cfg.truncation_degree.max(64)))
    }

    fn language(&self, src: &LanguageSource) -> CliResult<(String, Dfa)> {
        let l = self.limits();
        match (&src.regex, &src.dfa) {
            (Some(re), None) => {
                let alphabet: Vec<char> = src.alphabet.chars().collect();
                Ok((re.clone(), lib(langideal::parse_regex_with(re, &alphabet, &l))?))
            }
            (None, Some(path)) => Ok((path.display().to_string(), lib(Dfa::from_json_str(&read(path)?, &l))?.minimize())),
            _ => Err("exactly one of --regex or --dfa is required".into()),
        }
    }

    fn run(&self, cmd: &Command) -> CliResult<VerificationReport> {
        match cmd {
            Command::Poset(c) => self.poset_cmd(c),
            Command::Rep(c) => self.rep_cmd(c),
            Command::Fsop(c) => self.fsop_cmd(c),
            Command::Sym(c) => self.sym_cmd(c),
            Command::Charspace(c) => self.charspace_cmd(c),
            Command::Lang(c) => self.lang_cmd(c),
        }
    }

    fn poset_cmd(&self, cmd: &PosetCmd) -> CliResult<VerificationReport> {
        match cmd {
            PosetCmd::Whitney(src) => {
                let (name, p, expected) = self.poset(src)?;
                let w = lib(posets::whitney_polynomial(&p))?;
                let base = |v| report("whitney-closed-form", v).param("poset", &name).with("whitney", w.to_string()).with("coefficients", w.coeffs());
                Ok(match expected {
                    None => base(Verdict::HypothesesUnmet),
                    Some(e) if e == w => base(Verdict::Pass),
                    Some(e) => base(Verdict::Fail).witness(json!({ "expected": e.to_string(), "computed": w.to_string() })),
                })
            }
            PosetCmd::Mobius(src) => {
                let (name, p, _) = self.poset(src)?;
                let mu = lib(posets::mobius_all(&p))?;
                let mut rows = Vec::new();
                let mut mismatch = None;
                for x in 0..p.size() {
                    let h = lib(posets::interval_pair_complex(&p, x))?;
                    let chi = h.euler_characteristic();
                    if chi != mu[x] && mismatch.is_none() {
                        mismatch = Some(json!({ "element": p.label(x), "homological": chi, "recursive": mu[x] }));
                    }
                    rows.push(json!({ "element": p.label(x), "mu": mu[x] }));
                }
                let r = report("mobius-homological", if mismatch.is_some() { Verdict::Fail } else { Verdict::Pass })
                    .param("poset", &name)
                    .with("mobius", rows);
                Ok(match mismatch {
                    Some(w) => r.witness(w),
                    None => r,
                })
            }
            PosetCmd::Uppercm(src) => {
                let (name, p, _) = self.poset(src)?;
                let r = report("upper-cohen-macaulay", Verdict::Pass).param("poset", &name);
                let Some(ranks) = p.grading().map(<[usize]>::to_vec) else {
                    return Ok(report("upper-cohen-macaulay", Verdict::HypothesesUnmet).param("poset", &name).with("graded", false));
                };
                if p.top().is_none() {
                    return Ok(report("upper-cohen-macaulay", Verdict::HypothesesUnmet).param("poset", &name).with("top", false));
                }
                for x in 0..p.size() {
                    let c = lib(posets::interval_pair_complex(&p, x))?;
                    if !c.is_exact_in(0..ranks[x]) {
                        return Ok(VerificationReport { verdict: Verdict::Fail, ..r }
                            .with("upper_cm", false)
                            .witness(json!({ "element": p.label(x), "rank": ranks[x], "homology": c.homology_dims() })));
                    }
                }
                Ok(r.with("upper_cm", true))
            }
        }
    }

    fn rep_cmd(&self, cmd: &RepCmd) -> CliResult<VerificationReport> {
        let (args, primary) = match cmd {
            RepCmd::Bar(a) => (a, "bar"),
            RepCmd::Koszul(a) => (a, "koszul"),
        };
        let m = lib(PosetRep::from_json_str(&read(&args.rep)?, &self.limits()))?;
        let bar = lib(bar_complex(&m))?;
        let base = report("koszul-bar-comparison", Verdict::Pass)
            .param("rep", args.rep.display().to_string())
            .param("complex", primary)
            .with("bar_homology", bar.homology_dims())
            .with("bar_dims", bar.dims());
        let kos = match koszul_complex(&m) {
            Ok(k) => k,
            Err(Error::NotUpperCm) | Err(Error::NoTop) | Err(Error::NotGraded) => {
                return Ok(VerificationReport { verdict: Verdict::HypothesesUnmet, ..base }.with("upper_cm", false));
            }
            Err(e) => return Err(e.to_string()),
        };
        let (b, k) = (bar.homology_dims(), kos.homology_dims());
        let len = b.len().max(k.len());
        let pad = |v: &[usize]| (0..len).map(|i| v.get(i).copied().unwrap_or(0)).collect::<Vec<_>>();
        let r = base.with("koszul_homology", &k).with("koszul_dims", kos.dims());
        Ok(if pad(&b) == pad(&k) {
            r
        } else {
            VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "bar": b, "koszul": k }))
        })
    }

    fn fsop_cmd(&self, cmd: &FsopCmd) -> CliResult<VerificationReport> {
        match cmd {
            FsopCmd::Eval { src, n } => {
                let (name, m) = self.module(src)?;
                let ev = lib(m.evaluate_degree(*n))?;
                let basis: Vec<String> = ev
                    .quotient_basis()
                    .iter()
                    .map(|&i| {
                        let (g, w) = &ev.free_basis()[i];
                        format!("{g}:{w}")
                    })
                    .collect();
                Ok(report("module-evaluation", Verdict::Pass)
                    .param("module", name)
                    .param("n", n)
                    .with("free_dim", ev.free_dim())
                    .with("relation_rank", ev.relation_rank())
                    .with("dim", ev.quotient_dim())
                    .with("basis", basis))
            }
            FsopCmd::Hilbert { src, max, denom, from } => {
                let (name, m) = self.module(src)?;
                let dims = lib(m.hilbert_dims(*max))?;
                let dims_text = dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",");
                let r = report("hilbert-rationality", Verdict::Pass).param("module", name).param("max", max).with("dims", &dims).with("series", dims_text);
                let Some(denom) = denom else {
                    return Ok(r);
                };
                let poly = IntPolynomial::product_of_linear(&parse_list(denom)?);
                let deg = poly.degree().unwrap_or(0);
                let from = from.unwrap_or(deg + 1);
                let ok = lib(fsopmod::verify_rational_tail(&dims, &poly, from))?;
                let num = fsopmod::series_numerator(&dims, &poly, from);
                let r = r.param("denominator", poly.to_string()).param("from_degree", from).with("numerator", num.to_string());
                Ok(if ok {
                    r
                } else {
                    let bad: Vec<(usize, i128)> = (from..dims.len())
                        .map(|k| (k, fsopmod::series_product_coeff(&dims, &poly, k)))
                        .filter(|(_, c)| *c != 0)
                        .collect();
                    VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "nonzero_coefficients": bad }))
                })
            }
            FsopCmd::Kd { src, d, n } => {
                let (name, m) = self.module(src)?;
                let k = lib(m.kd_complex_at(*d, *n))?;
                let b = lib(m.bd_complex_at(*d, *n))?;
                let free = m.presentation().relations().is_empty();
                let above = *d > m.presentation().max_generator_degree();
                let r = report("bd-exactness", Verdict::Pass)
                    .param("module", name)
                    .param("d", d)
                    .param("n", n)
                    .with("kd_dims", k.dims())
                    .with("kd_homology", k.homology_dims())
                    .with("bd_homology", b.homology_dims())
                    .with("exact", k.is_exact());
                Ok(if !(free && above) {
                    VerificationReport { verdict: Verdict::HypothesesUnmet, ..r }
                } else if k.is_exact() && b.is_exact() {
                    r
                } else {
                    VerificationReport { verdict: Verdict::Fail, ..r }.witness(homology_witness(&k))
                })
            }
            FsopCmd::Type { src, j, n_min, n_max } => {
                let (name, m) = self.module(src)?;
                let j = parse_partition(j)?;
                let tc = lib(m.check_type_less(&j, *n_min..=*n_max, self.cfg.slack))?;
                let r = report("type-bound", Verdict::Pass)
                    .param("module", name)
                    .param("j", j.parts())
                    .param("n_range", [n_min, n_max])
                    .param("slack", self.cfg.slack)
                    .with("tested", tc.tested.len())
                    .with("conclusion", if tc.consistent { "consistent with the type bound up to the tested window" } else { "type bound violated" });
                Ok(match tc.witness {
                    None => r,
                    Some((ls, n, h)) => VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "indices": ls, "n": n, "homology": h })),
                })
            }
            FsopCmd::Char { src, max, d } => {
                let (name, m) = self.module(src)?;
                match d {
                    None => {
                        let ch = lib(m.frobenius_character(*max))?;
                        let g = m.presentation().max_generator_degree();
                        let ok = charspace::in_f_leq_k(&ch, g);
                        let r = report("rank-bound", if ok { Verdict::Pass } else { Verdict::Fail })
                            .param("module", name)
                            .param("max", max)
                            .with("character", symfunc_value(&ch))
                            .with("rows_bound", g);
                        Ok(if ok {
                            r
                        } else {
                            let bad: Vec<String> = lib(ch.schur_expansion(*max))?
                                .into_iter()
                                .filter(|(l, c)| l.rank() > g && !num_is_zero(c))
                                .map(|(l, c)| format!("s{l}: {}", format_rat(&c)))
                                .collect();
                            r.witness(json!({ "schur_terms_beyond_bound": bad }))
                        })
                    }
                    Some(d) => {
                        let ch = lib(m.frobenius_character(max + d))?;
                        let bd = lib(m.character_of_bd(*d, *max))?;
                        let mut mismatches = Vec::new();
                        let mut chars = serde_json::Map::new();
                        for (l, f) in &bd {
                            chars.insert(l.to_string(), symfunc_value(f));
                            if *f != ch.apply_binom_d(l) {
                                mismatches.push(l.to_string());
                            }
                        }
                        let r = report("bd-character", Verdict::Pass).param("module", name).param("d", d).param("max", max).with("characters", chars);
                        Ok(if mismatches.is_empty() {
                            r
                        } else {
                            VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "mismatched_lambda": mismatches }))
                        })
                    }
                }
            }
        }
    }

    fn sym_cmd(&self, cmd: &SymCmd) -> CliResult<VerificationReport> {
        match cmd {
            SymCmd::Pair { f, g } => {
                let (a, b) = (self.symfunc(f)?, self.symfunc(g)?);
                let v = lib(a.hall_pair(&b))?;
                Ok(report("hall-pairing", Verdict::Pass).param("f", f.display().to_string()).param("g", g.display().to_string()).with("value", format_rat(&v)))
            }
            SymCmd::Schur { f, max } => {
                let a = self.symfunc(f)?;
                let coeffs: Vec<serde_json::Value> = lib(a.schur_expansion(*max))?
                    .into_iter()
                    .filter(|(_, c)| !num_is_zero(c))
                    .map(|(l, c)| json!({ "partition": l.parts(), "coef": format_rat(&c) }))
                    .collect();
                Ok(report("schur-expansion", Verdict::Pass).param("f", f.display().to_string()).param("max", max).with("schur", coeffs))
            }
            SymCmd::ApplyD { f, k, lambda } => {
                let a = self.symfunc(f)?;
                let (label, out) = match (k, lambda) {
                    (Some(k), None) if *k >= 1 => (format!("D_{k}"), a.apply_d(*k)),
                    (None, Some(l)) => {
                        let l = parse_partition(l)?;
                        (format!("binomial D {l}"), a.apply_binom_d(&l))
                    }
                    _ => return Err("exactly one of --k (positive) or --lambda is required".into()),
                };
                Ok(report("differential-operators", Verdict::Pass).param("f", f.display().to_string()).param("operator", label).with("result", symfunc_value(&out)))
            }
        }
    }

    fn charspace_cmd(&self, cmd: &CharspaceCmd) -> CliResult<VerificationReport> {
        match cmd {
            CharspaceCmd::Pik { f, k } => {
                let a = self.symfunc(f)?;
                let p = lib(charspace::pi_k(&a, *k))?;
                let restricts = charspace::eps_k(&p, *k) == charspace::eps_k(&a, *k);
                let bounded = charspace::in_f_leq_k(&p, *k);
                let r = report("rank-projection", Verdict::Pass).param("f", f.display().to_string()).param("k", k).with("result", symfunc_value(&p));
                Ok(if restricts && bounded {
                    r
                } else {
                    VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "restriction_agrees": restricts, "in_bounded_rank": bounded }))
                })
            }
            CharspaceCmd::Membership { f, k, a, r } => {
                let func = self.symfunc(f)?;
                let mut rep = report("character-space-membership", Verdict::Pass).param("f", f.display().to_string()).param("truncation", func.truncation());
                if k.is_none() && (a.is_none() || r.is_none()) {
                    return Err("give --k, or --a with --r, or both".into());
                }
                if let Some(k) = k {
                    rep = rep.param("k", k).with("in_bounded_rank", charspace::in_f_leq_k(&func, *k));
                }
                if let (Some(a), Some(r)) = (a, r) {
                    let prof = ExpProfile::from_partition(&parse_partition(a)?);
                    rep = rep.param("a", prof.as_partition().parts()).param("r", r).with("in_exponential_block", lib(charspace::in_v_ar(&func, &prof, *r))?);
                }
                Ok(rep)
            }
            CharspaceCmd::Lnu { nu, a, r, k, n } => {
                let nu = parse_partition(nu)?;
                let prof = ExpProfile::from_partition(&parse_partition(a)?);
                let n = n.unwrap_or(self.cfg.truncation_degree);
                let base = |v| report("dual-basis", v).param("nu", nu.parts()).param("a", prof.as_partition().parts()).param("r", r).param("k", k).param("n", n);
                if !charspace::in_part_rk(&nu, *r, *k) || prof.size() > *k {
                    return Ok(base(Verdict::HypothesesUnmet).with("nu_in_range", charspace::in_part_rk(&nu, *r, *k)).with("profile_size", prof.size()));
                }
                let l = lib(charspace::l_nu(&nu, &prof, *r, *k, n))?;
                let mut bad = Vec::new();
                for lam in charspace::part_rk(*r, *k).into_iter().filter(|lam| lam.size() <= n) {
                    let v = lib(lib(charspace::e_partition(&prof, &lam, n))?.hall_pair(&l))?;
                    let want = if lam == nu { Rat::from_integer(1.into()) } else { Rat::from_integer(0.into()) };
                    if v != want {
                        bad.push(json!({ "lambda": lam.parts(), "pairing": format_rat(&v) }));
                    }
                }
                let r = base(Verdict::Pass).with("l_nu", symfunc_value(&l));
                Ok(if bad.is_empty() {
                    r
                } else {
                    VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "pairings": bad }))
                })
            }
            CharspaceCmd::Classfn { nu, a, max, mu } => {
                let cf = ClassFnParams {
                    nu: parse_partition(nu)?,
                    a: ExpProfile::from_partition(&parse_partition(a)?),
                };
                let ok = lib(charspace::translation_check(&cf, *max))?;
                let mut r = report("class-function-translation", if ok { Verdict::Pass } else { Verdict::Fail })
                    .param("nu", cf.nu.parts())
                    .param("a", cf.a.as_partition().parts())
                    .param("max", max);
                if let Some(mu) = mu {
                    let mu = parse_partition(mu)?;
                    r = r.param("mu", mu.parts()).with("value", format_rat(&charspace::class_fn_eval(&cf, &mu)));
                }
                if !ok {
                    let bad: Vec<String> = Partition::all_up_to(*max)
                        .into_iter()
                        .filter(|m| {
                            let f = SymFunc::p(&cf.nu, *max).and_then(|p| p.mul(&cf.a.exp_series(*max)));
                            f.and_then(|f| SymFunc::p(m, *max)?.hall_pair(&f.scale(&Rat::new(1.into(), cf.nu.z())))).map(|v| v != charspace::class_fn_eval(&cf, m)).unwrap_or(true)
                        })
                        .map(|m| m.to_string())
                        .collect();
                    r = r.witness(json!({ "cycle_types": bad }));
                }
                Ok(r)
            }
            CharspaceCmd::Multfit { src, f, lambda, max, denom_degree, orders } => {
                let lam = parse_partition(lambda)?;
                let (name, func) = match f {
                    Some(path) => (path.display().to_string(), self.symfunc(path)?),
                    None => {
                        let (name, m) = self.module(src)?;
                        (name, lib(m.frobenius_character(max + lam.size()))?)
                    }
                };
                let seq = lib(charspace::multiplicity_series(&func, &lam, *max))?;
                let seq_text: Vec<String> = seq.iter().map(format_rat).collect();
                let r = report("multiplicity-quasipolynomial", Verdict::Pass)
                    .param("source", name)
                    .param("lambda", lam.parts())
                    .param("max", max)
                    .param("denom_degree", denom_degree)
                    .param("orders", orders)
                    .with("series", &seq_text);
                Ok(match charspace::rational_fit(&seq, *denom_degree, *orders) {
                    Some(fit) => r
                        .with("denominator", fit.denominator.to_string())
                        .with("numerator", fit.numerator.iter().map(format_rat).collect::<Vec<_>>()),
                    None if seq.len() < 2 * denom_degree + 4 => VerificationReport { verdict: Verdict::HypothesesUnmet, ..r }.with("reason", "series shorter than 2 * denom_degree + 4"),
                    None => VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "series": seq_text })),
                })
            }
        }
    }

    fn ordered(&self, dfa: &Dfa) -> Option<OrderedDfa> {
        langideal::reachability_order(dfa)
    }

    fn lang_cmd(&self, cmd: &LangCmd) -> CliResult<VerificationReport> {
        let l = self.limits();
        match cmd {
            LangCmd::Dfa(src) => {
                let (name, d) = self.language(src)?;
                let ord = self.ordered(&d);
                Ok(report("automaton-construction", Verdict::Pass)
                    .param("language", name)
                    .with("dfa", serde_json::to_value(d.to_json()).expect("serializable"))
                    .with("ordered", ord.is_some())
                    .with("length", ord.map(|o| o.length()))
                    .with("duplication_closed_to_length", langideal::STAR_CHECK_LEN)
                    .with("duplication_closed", langideal::star_property_check(&d, langideal::STAR_CHECK_LEN)))
            }
            LangCmd::Ideal { src, word } => {
                let (name, d) = self.language(src)?;
                let w = lib(langideal::parse_word(word, d.alphabet()))?;
                let members = lib(langideal::ideal_members(&w, &d, &l))?;
                let parts = posets::set_partitions(w.len());
                let listing: Vec<serde_json::Value> = members
                    .iter()
                    .map(|&i| {
                        let q = langideal::quotient_word(&w, &parts[i]).expect("member factors");
                        json!({ "partition": posets::partition_label(&parts[i]), "quotient": langideal::format_word(&q) })
                    })
                    .collect();
                let star = langideal::star_property_check(&d, langideal::STAR_CHECK_LEN);
                let r = report("language-ideal", Verdict::Pass).param("language", name).param("word", word).with("members", listing);
                if !star {
                    return Ok(VerificationReport { verdict: Verdict::HypothesesUnmet, ..r }.with("duplication_closed", false));
                }
                let p = Arc::new(lib(posets::partition_lattice_with(w.len(), &l))?);
                for &x in &members {
                    if let Some(y) = p.above(x).find(|y| !members.contains(y)) {
                        return Ok(VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "member": p.label(x), "above_but_missing": p.label(y) })));
                    }
                }
                Ok(r)
            }
            LangCmd::Verify { src, words } => {
                let (name, d) = self.language(src)?;
                let ws: Vec<langideal::Word> = words
                    .split(',')
                    .map(|s| lib(langideal::parse_word(s.trim(), d.alphabet())))
                    .collect::<CliResult<_>>()?;
                let base = |v| report("languages-exactness", v).param("language", name.clone()).param("words", words);
                let Some(ord) = self.ordered(&d) else {
                    return Ok(base(Verdict::HypothesesUnmet).with("ordered", false));
                };
                let rep = lib(langideal::verify_languages_theorem(&ord, &ws, &l))?;
                let hyps: serde_json::Map<String, serde_json::Value> = rep.hypotheses.iter().map(|h| (h.name.to_string(), json!(h.holds))).collect();
                let r = base(Verdict::Pass)
                    .with("automaton_states", rep.automaton_states)
                    .with("automaton_length", rep.automaton_length)
                    .with("hypotheses", hyps)
                    .with("ideal_size", rep.ideal_size)
                    .with("generators", rep.generators.to_string())
                    .with("homology", &rep.homology)
                    .with("exact", rep.exact());
                Ok(if !rep.hypotheses_met() {
                    VerificationReport { verdict: Verdict::HypothesesUnmet, ..r }
                } else if rep.exact() {
                    r
                } else {
                    VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "homology": rep.homology }))
                })
            }
            LangCmd::Init { module, max } => {
                let pres = lib(FsopPresentation::from_json_str(&read(module)?))?;
                let [d] = pres.generator_degrees() else {
                    return Err("the module must have exactly one generator".into());
                };
                let gens = pres.relations().iter().map(|rel| rel.terms.iter().map(|t| (t.word.clone(), t.coef.clone())).collect()).collect();
                let sub = lib(WordSubmodule::new(*d, gens))?;
                let init = lib(langideal::init_ideal(&sub, *max, &l))?;
                let by_degree: Vec<Vec<String>> = init.iter().map(|s| s.iter().map(|w| w.to_string()).collect()).collect();
                let mut failures = Vec::new();
                for x in 0..=max.saturating_sub(1) {
                    let degrees: Vec<usize> = (1..=max - x).collect();
                    if !lib(langideal::assoc_graded_check(&sub, x, &degrees, &l))? {
                        failures.push(x);
                    }
                }
                let r = report("initial-ideal", Verdict::Pass).param("module", module.display().to_string()).param("max", max).with("initial_words", by_degree);
                Ok(if failures.is_empty() {
                    r
                } else {
                    VerificationReport { verdict: Verdict::Fail, ..r }.witness(json!({ "failing_offsets": failures }))
                })
            }
        }
    }
}

fn num_is_zero(r: &Rat) -> bool {
    *r == Rat::from_integer(0.into())
}

fn load_config(cli: &Cli) -> CliResult<RunConfig> {
    let mut cfg = match &cli.config {
        Some(path) => lib(RunConfig::from_json_str(&read(path)?))?,
        None => RunConfig::default(),
    };
    if let Some(d) = cli.max_degree {
        cfg.max_degree = Some(d);
    }
    if let Some(s) = cli.slack {
        cfg.slack = s;
    }
    if let Some(f) = cli.format {
        cfg.format = f;
    }
    lib(cfg.validate())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = load_config(&cli).and_then(|cfg| {
        let ctx = Ctx { cfg };
        let r = ctx.run(&cli.command)?;
        Ok((ctx.cfg, r))
    });
    match outcome {
        Ok((cfg, r)) => {
            let text = emit_report(&r, &cfg);
            print!("{text}");
            if let Some(dir) = std::env::var_os(REPORT_DIR_VAR) {
                let ext = if cfg.format == Format::Json { "json" } else { "txt" };
                let path = Path::new(&dir).join(format!("{}.{ext}", r.statement));
                if let Err(e) = std::fs::write(&path, &text) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(r.verdict.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

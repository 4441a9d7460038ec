//! Run configuration and verification reports.
//!
//! Every command of the CLI produces one [`VerificationReport`] naming a
//! statement from [`STATEMENTS`]. Reports serialize either as JSON with
//! sorted keys or as aligned `key: value` text; both are deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{invalid, Result};
use crate::limits::Limits;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => invalid(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

/// Settings shared by all commands; the `--config` file is this struct as JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// Truncation degree `N` for symmetric-function computations.
    pub truncation_degree: usize,
    /// Overrides the evaluation degree bound of presented modules.
    pub max_degree: Option<usize>,
    /// Extra degrees examined by bounded quantifiers.
    pub slack: usize,
    pub format: Format,
    pub limits: Limits,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            truncation_degree: 12,
            max_degree: None,
            slack: 2,
            format: Format::Json,
            limits: Limits::DEFAULT,
        }
    }
}

impl RunConfig {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Every bound must be positive.
    pub fn validate(&self) -> Result<()> {
        let l = &self.limits;
        let bounds = [
            ("truncation_degree", self.truncation_degree),
            ("max_degree", self.max_degree.unwrap_or(1)),
            ("slack", self.slack),
            ("limits.boolean_max_n", l.boolean_max_n),
            ("limits.partition_max_n", l.partition_max_n),
            ("limits.subspace_max_n", l.subspace_max_n),
            ("limits.poset_max_size", l.poset_max_size),
            ("limits.eval_degree_small_gens", l.eval_degree_small_gens),
            ("limits.eval_degree", l.eval_degree),
            ("limits.languages_max_total_len", l.languages_max_total_len),
            ("limits.languages_max_generators", l.languages_max_generators),
            ("limits.regex_max_len", l.regex_max_len),
            ("limits.dfa_max_states", l.dfa_max_states),
        ];
        match bounds.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => invalid(format!("{name} must be positive")),
            None => Ok(()),
        }
    }

    /// Limits with the evaluation-degree override applied.
    pub fn effective_limits(&self) -> Limits {
        let mut l = self.limits;
        if let Some(d) = self.max_degree {
            l.eval_degree = d;
            l.eval_degree_small_gens = d;
        }
        l
    }
}

/// A statement that reports can cite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Statement {
    pub id: &'static str,
    pub summary: &'static str,
}

pub const STATEMENTS: &[Statement] = &[
    Statement { id: "whitney-closed-form", summary: "Whitney polynomials of partition, Boolean and subspace lattices factor into linear terms" },
    Statement { id: "mobius-homological", summary: "Möbius numbers from relative homology agree with the recursive Möbius function" },
    Statement { id: "upper-cohen-macaulay", summary: "interval pairs above each element have homology only in top degree" },
    Statement { id: "bar-exact-above-minimal", summary: "the bar complex of a representation supported above a non-top element is exact" },
    Statement { id: "koszul-bar-comparison", summary: "Koszul and bar complexes have the same homology on upper Cohen-Macaulay posets" },
    Statement { id: "koszul-euler-class", summary: "the Euler characteristic of the Koszul complex of a module is determined by its character" },
    Statement { id: "bd-exactness", summary: "bar and Koszul complexes of a module generated in low degree are exact in high index" },
    Statement { id: "module-evaluation", summary: "dimensions of a presented module in each degree" },
    Statement { id: "hilbert-rationality", summary: "the Hilbert series is rational with denominator a product of (1 - jt)" },
    Statement { id: "type-bound", summary: "iterated Koszul complexes above a type bound are exact" },
    Statement { id: "rank-bound", summary: "the character of a module generated in degree at most d has Schur support in at most d rows" },
    Statement { id: "bd-character", summary: "the character of the bar complex is a binomial differential operator applied to the module character" },
    Statement { id: "hall-pairing", summary: "Hall inner product of truncated symmetric functions" },
    Statement { id: "schur-expansion", summary: "Schur coefficients of a truncated symmetric function" },
    Statement { id: "differential-operators", summary: "Möbius-averaged derivatives and their binomial products act on truncated symmetric functions" },
    Statement { id: "dual-coordinates", summary: "the Möbius-averaged derivatives are dual to the coordinates y_n" },
    Statement { id: "rank-projection", summary: "the lift from restricted data back to characters of bounded rank" },
    Statement { id: "character-space-membership", summary: "membership in the exponential blocks and the bounded-rank subspace" },
    Statement { id: "dual-basis", summary: "the basis dual to adapted monomials under the Hall pairing" },
    Statement { id: "class-function-translation", summary: "character exponentials translate to class functions" },
    Statement { id: "multiplicity-quasipolynomial", summary: "multiplicities of a fixed irreducible have rational generating functions with root-of-unity poles" },
    Statement { id: "adapted-generators", summary: "elementary symmetric functions expand in the shifted power sums with adapted coefficients" },
    Statement { id: "automaton-construction", summary: "regular expressions compile to minimal complete automata" },
    Statement { id: "language-ideal", summary: "partitions through which a word factors into the language form a poset ideal" },
    Statement { id: "languages-exactness", summary: "iterated bar complexes of ideals cut out by ordered languages are exact" },
    Statement { id: "initial-ideal", summary: "leading words of a submodule span an ideal compatible with ordered surjections" },
];

pub fn statement(id: &str) -> Option<&'static Statement> {
    STATEMENTS.iter().find(|s| s.id == id)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesesUnmet,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 2,
            Verdict::HypothesesUnmet => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub statement: String,
    pub parameters: BTreeMap<String, Value>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub result: BTreeMap<String, Value>,
}

impl VerificationReport {
    /// A report with no parameters; errors if `statement` is not registered.
    pub fn new(statement: &str, verdict: Verdict) -> Result<Self> {
        if self::statement(statement).is_none() {
            return invalid(format!("unknown statement id {statement:?}"));
        }
        Ok(VerificationReport {
            statement: statement.to_string(),
            parameters: BTreeMap::new(),
            verdict,
            witness: None,
            result: BTreeMap::new(),
        })
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.parameters.insert(key.to_string(), to_value(v));
        self
    }

    pub fn with(mut self, key: &str, v: impl Serialize) -> Self {
        self.result.insert(key.to_string(), to_value(v));
        self
    }

    pub fn witness(mut self, v: impl Serialize) -> Self {
        self.witness = Some(to_value(v));
        self
    }

    /// Statement registered and a failing verdict carries a witness.
    pub fn validate(&self) -> Result<()> {
        if statement(&self.statement).is_none() {
            return invalid(format!("unknown statement id {:?}", self.statement));
        }
        if self.verdict == Verdict::Fail && self.witness.is_none() {
            return invalid("a failing report must carry a witness");
        }
        Ok(())
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let r: VerificationReport = serde_json::from_str(s)?;
        r.validate()?;
        Ok(r)
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Serializes a report. JSON output has sorted keys and a trailing newline;
/// text output lists one field per line with the values aligned.
pub fn emit_report(r: &VerificationReport, cfg: &RunConfig) -> String {
    match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&to_value(r)).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut rows: Vec<(String, String)> = vec![
                ("statement".into(), r.statement.clone()),
                ("verdict".into(), to_value(r.verdict).as_str().unwrap_or_default().to_string()),
            ];
            rows.extend(r.parameters.iter().map(|(k, v)| (format!("param.{k}"), text_value(v))));
            rows.extend(r.result.iter().map(|(k, v)| (k.clone(), text_value(v))));
            if let Some(w) = &r.witness {
                rows.push(("witness".into(), text_value(w)));
            }
            let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
        }
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

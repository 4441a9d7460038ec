//! Enumeration and evaluation bounds.
//!
//! Every family constructor and evaluator checks its size parameter against
//! one of these fields instead of a literal, so a caller can widen or narrow
//! the desk-scale envelope in one place (the CLI reads them from its config
//! file).

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest `n` accepted by the Boolean lattice constructor.
    pub boolean_max_n: usize,
    /// Largest `n` accepted by the partition lattice constructor (Bell numbers grow fast).
    pub partition_max_n: usize,
    /// Largest dimension for subspace lattices.
    pub subspace_max_n: usize,
    /// Largest size of a poset read from JSON.
    pub poset_max_size: usize,
    /// Evaluation degree bound for presentations whose generators have degree at most 2.
    pub eval_degree_small_gens: usize,
    /// Evaluation degree bound otherwise.
    pub eval_degree: usize,
    /// Largest total word length in the languages verification.
    pub languages_max_total_len: usize,
    /// Largest number of chain-tuple generators in a languages verification complex.
    pub languages_max_generators: usize,
    /// Largest regex length accepted by the parser.
    pub regex_max_len: usize,
    /// Largest number of DFA states produced by subset construction.
    pub dfa_max_states: usize,
}

impl Limits {
    pub const DEFAULT: Limits = Limits {
        boolean_max_n: 12,
        partition_max_n: 8,
        subspace_max_n: 4,
        poset_max_size: 5000,
        eval_degree_small_gens: 8,
        eval_degree: 6,
        languages_max_total_len: 10,
        languages_max_generators: 20_000,
        regex_max_len: 512,
        dfa_max_states: 4096,
    };

    pub(crate) fn check(what: &'static str, value: usize, max: usize) -> crate::Result<()> {
        if value > max {
            Err(crate::Error::BoundExceeded { what, value, max })
        } else {
            Ok(())
        }
    }
}

impl Default for Limits {
    fn default() -> Self {
        Limits::DEFAULT
    }
}

//! Regular languages, ordered automata, and the poset ideals they cut out of
//! partition lattices; plus initial (leading-word) submodules of free modules
//! on surjection words.
//!
//! Words are sequences of letter indices `0..d`, printed as `a, b, c, …`.
//! Regular expressions go through a Thompson automaton, the subset
//! construction, and Hopcroft minimization; the resulting automaton is
//! renumbered breadth-first from its start state (letters in order), so two
//! expressions for the same language produce identical automata.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exactla::{Rat, Rref};
use crate::fsopmod::{enumerate_surjections, FsopModule, FsopPresentation, RelTerm, Relation, SurjWord};
use crate::limits::Limits;
use crate::posetrep::{ideal_rep, multi_bar_complex, PosetIdeal};
use crate::posets::{normalize_rgs, partition_lattice_with, product_poset, rgs_blocks, set_partitions, FinitePoset, MixedRadix};

/// Bound used for the property (*) check inside the verification report.
pub const STAR_CHECK_LEN: usize = 8;

pub type Word = Vec<usize>;

/// Parses `"abba"` into letter indices over an alphabet of size `d`.
pub fn parse_word(s: &str, d: usize) -> Result<Word> {
    s.chars()
        .enumerate()
        .map(|(pos, c)| match letter_index(c) {
            Some(i) if i < d => Ok(i),
            _ => Err(Error::Syntax {
                pos,
                msg: format!("letter {c:?} is not in the alphabet of size {d}"),
            }),
        })
        .collect()
}

fn letter_index(c: char) -> Option<usize> {
    c.is_ascii_lowercase().then(|| (c as u8 - b'a') as usize)
}

pub fn format_word(w: &[usize]) -> String {
    w.iter().map(|&i| (b'a' + i as u8) as char).collect()
}

// ---------------------------------------------------------------------------
// Automata.

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: usize,
    delta: Vec<Vec<usize>>,
    start: usize,
    accepts: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DfaJson {
    pub states: usize,
    pub alphabet: usize,
    pub delta: Vec<Vec<usize>>,
    pub start: usize,
    pub accepts: Vec<usize>,
}

impl Dfa {
    pub fn new(alphabet: usize, delta: Vec<Vec<usize>>, start: usize, accepts: &[usize]) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return invalid("an automaton needs at least one state");
        }
        if alphabet == 0 || alphabet > 26 {
            return invalid("alphabet size must be between 1 and 26");
        }
        if start >= n {
            return invalid(format!("start state {start} out of range"));
        }
        for (s, row) in delta.iter().enumerate() {
            if row.len() != alphabet {
                return invalid(format!("state {s} has {} transitions, expected {alphabet}", row.len()));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return invalid(format!("transition from {s} to missing state {t}"));
            }
        }
        let mut acc = vec![false; n];
        for &a in accepts {
            if a >= n {
                return invalid(format!("accept state {a} out of range"));
            }
            acc[a] = true;
        }
        Ok(Dfa {
            alphabet,
            delta,
            start,
            accepts: acc,
        })
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn step(&self, s: usize, a: usize) -> usize {
        self.delta[s][a]
    }

    pub fn is_accept(&self, s: usize) -> bool {
        self.accepts[s]
    }

    pub fn accept_states(&self) -> Vec<usize> {
        (0..self.states()).filter(|&s| self.accepts[s]).collect()
    }

    pub fn run(&self, from: usize, w: &[usize]) -> usize {
        w.iter().fold(from, |s, &a| self.delta[s][a])
    }

    pub fn accepts(&self, w: &[usize]) -> bool {
        self.accepts[self.run(self.start, w)]
    }

    /// States reachable from the start, in breadth-first order.
    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states()];
        let mut order = vec![self.start];
        seen[self.start] = true;
        let mut i = 0;
        while i < order.len() {
            let s = order[i];
            for a in 0..self.alphabet {
                let t = self.delta[s][a];
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                }
            }
            i += 1;
        }
        order
    }

    /// Keeps the states reachable from the start, renumbered breadth-first.
    pub fn connected(&self) -> Dfa {
        let order = self.bfs_order();
        let mut new_id = vec![usize::MAX; self.states()];
        for (i, &s) in order.iter().enumerate() {
            new_id[s] = i;
        }
        Dfa {
            alphabet: self.alphabet,
            delta: order.iter().map(|&s| self.delta[s].iter().map(|&t| new_id[t]).collect()).collect(),
            start: 0,
            accepts: order.iter().map(|&s| self.accepts[s]).collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_order().len() == self.states()
    }

    /// Minimal automaton for the same language (Hopcroft), connected and
    /// renumbered breadth-first.
    pub fn minimize(&self) -> Dfa {
        let c = self.connected();
        let block = hopcroft(&c);
        let nblocks = block.iter().copied().max().map_or(0, |m| m + 1);
        let mut delta = vec![Vec::new(); nblocks];
        let mut accepts = vec![false; nblocks];
        for s in 0..c.states() {
            let b = block[s];
            if delta[b].is_empty() {
                delta[b] = c.delta[s].iter().map(|&t| block[t]).collect();
                accepts[b] = c.accepts[s];
            }
        }
        Dfa {
            alphabet: c.alphabet,
            delta,
            start: block[c.start],
            accepts,
        }
        .connected()
    }

    pub fn to_json(&self) -> DfaJson {
        DfaJson {
            states: self.states(),
            alphabet: self.alphabet,
            delta: self.delta.clone(),
            start: self.start,
            accepts: self.accept_states(),
        }
    }

    pub fn from_json(j: &DfaJson, limits: &Limits) -> Result<Self> {
        Limits::check("automaton states", j.states, limits.dfa_max_states)?;
        if j.delta.len() != j.states {
            return invalid(format!("delta has {} rows for {} states", j.delta.len(), j.states));
        }
        Dfa::new(j.alphabet, j.delta.clone(), j.start, &j.accepts)
    }

    pub fn from_json_str(s: &str, limits: &Limits) -> Result<Self> {
        let j: DfaJson = serde_json::from_str(s)?;
        Self::from_json(&j, limits)
    }
}

/// Hopcroft partition refinement; returns the block index of each state.
fn hopcroft(d: &Dfa) -> Vec<usize> {
    let n = d.states();
    let k = d.alphabet;
    let mut inv: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); n]; k];
    for s in 0..n {
        for a in 0..k {
            inv[a][d.delta[s][a]].push(s);
        }
    }
    let mut block_of = vec![0usize; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let acc: Vec<usize> = (0..n).filter(|&s| d.accepts[s]).collect();
    let rej: Vec<usize> = (0..n).filter(|&s| !d.accepts[s]).collect();
    for part in [acc, rej] {
        if !part.is_empty() {
            for &s in &part {
                block_of[s] = blocks.len();
            }
            blocks.push(part);
        }
    }
    let mut in_work: Vec<Vec<bool>> = vec![vec![true; k]; blocks.len()];
    let mut work: Vec<(usize, usize)> = (0..blocks.len()).flat_map(|b| (0..k).map(move |a| (b, a))).collect();
    while let Some((target, a)) = work.pop() {
        in_work[target][a] = false;
        let mut hit: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &t in &blocks[target] {
            for &s in &inv[a][t] {
                hit.entry(block_of[s]).or_default().push(s);
            }
        }
        for (y, xs) in hit {
            if xs.len() == blocks[y].len() {
                continue;
            }
            let xs_set: BTreeSet<usize> = xs.into_iter().collect();
            let (inside, outside): (Vec<usize>, Vec<usize>) = blocks[y].iter().partition(|s| xs_set.contains(s));
            let new_id = blocks.len();
            for &s in &outside {
                block_of[s] = new_id;
            }
            blocks[y] = inside;
            blocks.push(outside);
            in_work.push(vec![false; k]);
            for e in 0..k {
                if in_work[y][e] {
                    in_work[new_id][e] = true;
                    work.push((new_id, e));
                } else {
                    let smaller = if blocks[y].len() <= blocks[new_id].len() { y } else { new_id };
                    in_work[smaller][e] = true;
                    work.push((smaller, e));
                }
            }
        }
    }
    block_of
}

// ---------------------------------------------------------------------------
// Regular expressions.

#[derive(Clone, Debug)]
enum Re {
    Epsilon,
    Lit(usize),
    Cat(Box<Re>, Box<Re>),
    Alt(Box<Re>, Box<Re>),
    Star(Box<Re>),
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a [char],
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn alt(&mut self) -> Result<Re> {
        let mut left = self.cat()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.cat()?;
            left = Re::Alt(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn cat(&mut self) -> Result<Re> {
        let mut acc: Option<Re> = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let item = self.star()?;
            acc = Some(match acc {
                None => item,
                Some(prev) => Re::Cat(Box::new(prev), Box::new(item)),
            });
        }
        Ok(acc.unwrap_or(Re::Epsilon))
    }

    fn star(&mut self) -> Result<Re> {
        let mut base = self.atom()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            base = Re::Star(Box::new(base));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Re> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.alt()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some('*') => self.err("'*' must follow an expression"),
            Some(c) => match self.alphabet.iter().position(|&x| x == c) {
                Some(i) => {
                    self.pos += 1;
                    Ok(Re::Lit(i))
                }
                None => self.err(format!("{c:?} is not an alphabet letter")),
            },
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Thompson automaton: epsilon moves and labelled moves per state.
struct Nfa {
    eps: Vec<Vec<usize>>,
    moves: Vec<Vec<(usize, usize)>>,
}

impl Nfa {
    fn state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.moves.push(Vec::new());
        self.eps.len() - 1
    }

    /// Returns (entry, exit) of the fragment.
    fn build(&mut self, re: &Re) -> (usize, usize) {
        match re {
            Re::Epsilon => {
                let s = self.state();
                let t = self.state();
                self.eps[s].push(t);
                (s, t)
            }
            Re::Lit(a) => {
                let s = self.state();
                let t = self.state();
                self.moves[s].push((*a, t));
                (s, t)
            }
            Re::Cat(x, y) => {
                let (s1, t1) = self.build(x);
                let (s2, t2) = self.build(y);
                self.eps[t1].push(s2);
                (s1, t2)
            }
            Re::Alt(x, y) => {
                let s = self.state();
                let (s1, t1) = self.build(x);
                let (s2, t2) = self.build(y);
                let t = self.state();
                self.eps[s].extend([s1, s2]);
                self.eps[t1].push(t);
                self.eps[t2].push(t);
                (s, t)
            }
            Re::Star(x) => {
                let s = self.state();
                let (s1, t1) = self.build(x);
                let t = self.state();
                self.eps[s].extend([s1, t]);
                self.eps[t1].extend([s1, t]);
                (s, t)
            }
        }
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(s) = stack.pop() {
            for &t in &self.eps[s] {
                if set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }
}

/// Minimal complete automaton for a regular expression over the given letters.
/// Grammar: letters, juxtaposition, `|`, postfix `*`, parentheses; the empty
/// expression denotes the empty word.
pub fn parse_regex(expr: &str, alphabet: &[char]) -> Result<Dfa> {
    parse_regex_with(expr, alphabet, &Limits::DEFAULT)
}

pub fn parse_regex_with(expr: &str, alphabet: &[char], limits: &Limits) -> Result<Dfa> {
    let chars: Vec<char> = expr.chars().collect();
    Limits::check("regex length", chars.len(), limits.regex_max_len)?;
    if alphabet.is_empty() || alphabet.len() > 26 {
        return invalid("alphabet size must be between 1 and 26");
    }
    let mut p = Parser {
        chars,
        pos: 0,
        alphabet,
    };
    let re = p.alt()?;
    if p.pos != p.chars.len() {
        return p.err("unmatched ')'");
    }
    let mut nfa = Nfa {
        eps: Vec::new(),
        moves: Vec::new(),
    };
    let (entry, exit) = nfa.build(&re);
    let k = alphabet.len();
    let mut start = BTreeSet::from([entry]);
    nfa.closure(&mut start);
    let mut ids: HashMap<BTreeSet<usize>, usize> = HashMap::new();
    let mut sets: Vec<BTreeSet<usize>> = Vec::new();
    let mut delta: Vec<Vec<usize>> = Vec::new();
    ids.insert(start.clone(), 0);
    sets.push(start);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for a in 0..k {
            let mut next = BTreeSet::new();
            for &s in &sets[i] {
                for &(b, t) in &nfa.moves[s] {
                    if b == a {
                        next.insert(t);
                    }
                }
            }
            nfa.closure(&mut next);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    let id = sets.len();
                    Limits::check("automaton states", id + 1, limits.dfa_max_states)?;
                    ids.insert(next.clone(), id);
                    sets.push(next);
                    queue.push_back(id);
                    id
                }
            };
            row.push(id);
        }
        delta.push(row);
    }
    let accepts: Vec<usize> = (0..sets.len()).filter(|&i| sets[i].contains(&exit)).collect();
    Ok(Dfa::new(k, delta, 0, &accepts)?.minimize())
}

/// Letters `a, b, …` for an alphabet of size `d`.
pub fn default_alphabet(d: usize) -> Vec<char> {
    (0..d.min(26)).map(|i| (b'a' + i as u8) as char).collect()
}

// ---------------------------------------------------------------------------
// Ordered automata.

/// A connected automaton whose reachability preorder is a partial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedDfa {
    dfa: Dfa,
    /// `leq[x][y]` iff some word drives `x` to `y`.
    leq: Vec<Vec<bool>>,
}

/// Reachability order of the connected part of `d` (unreachable states are
/// discarded first); `None` when two distinct states reach each other.
pub fn reachability_order(d: &Dfa) -> Option<OrderedDfa> {
    let dfa = if d.is_connected() { d.clone() } else { d.connected() };
    let n = dfa.states();
    let mut leq = vec![vec![false; n]; n];
    for (x, row) in leq.iter_mut().enumerate() {
        let mut stack = vec![x];
        row[x] = true;
        while let Some(s) = stack.pop() {
            for a in 0..dfa.alphabet {
                let t = dfa.delta[s][a];
                if !row[t] {
                    row[t] = true;
                    stack.push(t);
                }
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if leq[x][y] && leq[y][x] {
                return None;
            }
        }
    }
    Some(OrderedDfa { dfa, leq })
}

impl OrderedDfa {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// Number of states in a longest chain `x_1 < x_2 < …`.
    pub fn length(&self) -> usize {
        let n = self.dfa.states();
        // Order states by number of successors (fewer successors = higher).
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| self.leq[x].iter().filter(|&&b| b).count());
        let mut best = vec![1usize; n];
        for (i, &x) in order.iter().enumerate() {
            for &y in &order[..i] {
                if self.leq[x][y] && x != y {
                    best[x] = best[x].max(best[y] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Keeps the states `≥ s`, with start `s`.
    pub fn truncate(&self, s: usize) -> Result<OrderedDfa> {
        if s >= self.dfa.states() {
            return invalid(format!("state {s} out of range"));
        }
        let keep: Vec<usize> = (0..self.dfa.states()).filter(|&y| self.leq[s][y]).collect();
        let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &y)| (y, i)).collect();
        let delta = keep.iter().map(|&y| self.dfa.delta[y].iter().map(|t| pos[t]).collect()).collect();
        let accepts: Vec<usize> = keep.iter().filter(|&&y| self.dfa.accepts[y]).map(|y| pos[y]).collect();
        let d = Dfa::new(self.dfa.alphabet, delta, pos[&s], &accepts)?;
        Ok(reachability_order(&d).expect("a sub-automaton of an ordered automaton is ordered"))
    }
}

/// Bounded check of closure under `w_1 a w_2 w_3 ↦ w_1 a w_2 a w_3`: every
/// accepted word of length `≤ max_len` is tested.
pub fn star_property_check(d: &Dfa, max_len: usize) -> bool {
    star_counterexample(d, max_len).is_none()
}

/// First accepted word (in length-then-lex order of the search) with a
/// duplication that leaves the language, and the offending image.
pub fn star_counterexample(d: &Dfa, max_len: usize) -> Option<(Word, Word)> {
    let mut frontier: Vec<Word> = vec![Vec::new()];
    for _ in 0..=max_len {
        for w in &frontier {
            if !d.accepts(w) {
                continue;
            }
            for i in 0..w.len() {
                for k in i + 1..=w.len() {
                    let mut v = w.clone();
                    v.insert(k, w[i]);
                    if !d.accepts(&v) {
                        return Some((w.clone(), v));
                    }
                }
            }
        }
        frontier = frontier
            .iter()
            .flat_map(|w| {
                (0..d.alphabet).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    None
}

/// Every minimal automaton with at most `max_states` states over `alphabet`
/// letters whose reachability preorder is a partial order and which passes
/// the duplication check up to `star_len`. Deduplicated; ordered by state
/// count, then transition table.
pub fn small_ordered_automata(max_states: usize, alphabet: usize, star_len: usize) -> Vec<OrderedDfa> {
    let mut seen: HashSet<Dfa> = HashSet::new();
    let mut out: Vec<OrderedDfa> = Vec::new();
    for n in 1..=max_states {
        let cells = n * alphabet;
        let mut table = vec![0usize; cells];
        loop {
            let delta: Vec<Vec<usize>> = table.chunks(alphabet).map(|c| c.to_vec()).collect();
            for mask in 0..(1usize << n) {
                let accepts: Vec<usize> = (0..n).filter(|&s| mask >> s & 1 == 1).collect();
                let d = Dfa::new(alphabet, delta.clone(), 0, &accepts).expect("well-formed table").minimize();
                if seen.insert(d.clone()) {
                    if let Some(o) = reachability_order(&d) {
                        if star_property_check(&d, star_len) {
                            out.push(o);
                        }
                    }
                }
            }
            // Odometer over transition tables.
            let mut i = 0;
            while i < cells && table[i] + 1 == n {
                table[i] = 0;
                i += 1;
            }
            if i == cells {
                break;
            }
            table[i] += 1;
        }
    }
    out.sort_by(|x, y| (x.dfa.states(), &x.dfa.delta, &x.dfa.accepts).cmp(&(y.dfa.states(), &y.dfa.delta, &y.dfa.accepts)));
    out
}

// ---------------------------------------------------------------------------
// Factorization through partitions.

/// A word together with a set partition of its positions (restricted growth
/// string) and the quotient word, if the word factors through it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordFactorization {
    pub word: Word,
    pub partition: Vec<u8>,
    pub quotient: Option<Word>,
}

impl WordFactorization {
    pub fn new(word: &[usize], partition: &[u8]) -> Result<Self> {
        if word.len() != partition.len() {
            return invalid("word and partition lengths differ");
        }
        Ok(WordFactorization {
            word: word.to_vec(),
            partition: partition.to_vec(),
            quotient: quotient_word(word, partition),
        })
    }
}

/// `w_p` with blocks ordered by their least element, if `w` is constant on
/// every block of `p`.
pub fn quotient_word(w: &[usize], rgs: &[u8]) -> Option<Word> {
    let mut out: Vec<Option<usize>> = Vec::new();
    for (i, &b) in rgs.iter().enumerate() {
        let b = b as usize;
        if b == out.len() {
            out.push(Some(w[i]));
        } else if out[b] != Some(w[i]) {
            return None;
        }
    }
    out.into_iter().collect()
}

/// Set partition of positions by letter (`i ~ j` iff `w_i = w_j`).
pub fn letter_partition(w: &[usize]) -> Vec<u8> {
    normalize_rgs(w)
}

/// Partitions of `[|w|]` through which `w` factors with quotient in the language.
pub fn ideal_members(w: &[usize], d: &Dfa, limits: &Limits) -> Result<BTreeSet<usize>> {
    Limits::check("partition lattice size", w.len(), limits.partition_max_n)?;
    Ok(set_partitions(w.len())
        .iter()
        .enumerate()
        .filter(|(_, p)| quotient_word(w, p).is_some_and(|q| d.accepts(&q)))
        .map(|(i, _)| i)
        .collect())
}

/// `I(w, L)` as an ideal of the partition lattice; errors if the member set
/// is not upward closed (which property (*) rules out).
pub fn ideal_i(w: &[usize], d: &Dfa, limits: &Limits) -> Result<PosetIdeal> {
    let p = Arc::new(partition_lattice_with(w.len(), limits)?);
    PosetIdeal::new(p, ideal_members(w, d, limits)?)
}

/// Image of `(q_1, …, q_r) ∈ ∏ P(ℓ_t)` in `P(Σ ℓ_t)`.
pub fn embed_product_partition(parts: &[&[u8]]) -> Vec<u8> {
    let mut labels = Vec::new();
    let mut offset = 0usize;
    for p in parts {
        let k = p.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        labels.extend(p.iter().map(|&b| offset + b as usize));
        offset += k;
    }
    normalize_rgs(&labels)
}

/// `J(w, L) = I(w_1⋯w_r, L) ∩ ∏ P(ℓ_t)`, on the product poset (mixed-radix
/// indexing, first factor most significant). Returns the factors and the ideal.
pub fn ideal_j(words: &[Word], d: &Dfa, limits: &Limits) -> Result<(Vec<Arc<FinitePoset>>, PosetIdeal)> {
    if words.is_empty() {
        return invalid("at least one word is required");
    }
    let factors: Vec<Arc<FinitePoset>> = words
        .iter()
        .map(|w| partition_lattice_with(w.len(), limits).map(Arc::new))
        .collect::<Result<_>>()?;
    let rgs: Vec<Vec<Vec<u8>>> = words.iter().map(|w| set_partitions(w.len())).collect();
    let prod = if factors.len() == 1 {
        factors[0].clone()
    } else {
        let refs: Vec<&FinitePoset> = factors.iter().map(|f| &**f).collect();
        Arc::new(product_poset(&refs)?)
    };
    let radix = MixedRadix {
        radices: factors.iter().map(|f| f.size()).collect(),
    };
    let whole: Word = words.concat();
    let mut members = BTreeSet::new();
    for x in 0..prod.size() {
        let digits = radix.decode(x);
        let parts: Vec<&[u8]> = digits.iter().enumerate().map(|(t, &e)| rgs[t][e].as_slice()).collect();
        let p = embed_product_partition(&parts);
        if quotient_word(&whole, &p).is_some_and(|q| d.accepts(&q)) {
            members.insert(x);
        }
    }
    Ok((factors, PosetIdeal::new(prod, members)?))
}

/// One named hypothesis of the languages theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: &'static str,
    pub holds: bool,
}

/// Result of [`verify_languages_theorem`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanguagesReport {
    pub automaton_states: usize,
    pub automaton_length: usize,
    pub alphabet: usize,
    pub lengths: Vec<usize>,
    pub hypotheses: Vec<Hypothesis>,
    pub ideal_size: usize,
    pub generators: u128,
    pub homology: Vec<usize>,
}

impl LanguagesReport {
    pub fn hypotheses_met(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }

    pub fn exact(&self) -> bool {
        self.homology.iter().all(|&h| h == 0)
    }
}

/// Number of chain-tuple generators of the iterated bar complex of `kJ`.
pub fn bar_generator_count(factors: &[Arc<FinitePoset>], ideal: &PosetIdeal) -> Result<u128> {
    let counts: Vec<Vec<u128>> = factors
        .iter()
        .map(|f| Ok(f.chain_counts_to_top()?.into_iter().map(|v| v.iter().sum()).collect()))
        .collect::<Result<_>>()?;
    let radix = MixedRadix {
        radices: factors.iter().map(|f| f.size()).collect(),
    };
    Ok(ideal
        .members()
        .iter()
        .map(|&x| {
            radix
                .decode(x)
                .iter()
                .enumerate()
                .map(|(t, &e)| counts[t][e])
                .product::<u128>()
        })
        .sum())
}

/// Builds `J(w, L)`, records the hypotheses of the languages theorem, and
/// computes the homology of the iterated bar complex of `kJ`.
pub fn verify_languages_theorem(a: &OrderedDfa, words: &[Word], limits: &Limits) -> Result<LanguagesReport> {
    if words.is_empty() {
        return invalid("at least one word is required");
    }
    let d = a.dfa().alphabet();
    if let Some(w) = words.iter().find(|w| w.iter().any(|&c| c >= d)) {
        return invalid(format!("word {} uses letters outside the alphabet", format_word(w)));
    }
    let total: usize = words.iter().map(|w| w.len()).sum();
    Limits::check("total word length", total, limits.languages_max_total_len)?;
    let lengths: Vec<usize> = words.iter().map(|w| w.len()).collect();
    let r = words.len();
    let length = a.length();
    let hypotheses = vec![
        Hypothesis {
            name: "word count at least automaton length",
            holds: r >= length,
        },
        Hypothesis {
            name: "leading words at least alphabet size",
            holds: lengths[..r - 1].iter().all(|&l| l >= d),
        },
        Hypothesis {
            name: "last word longer than alphabet size",
            holds: lengths[r - 1] > d,
        },
        Hypothesis {
            name: "letter duplication closure (bounded)",
            holds: star_property_check(a.dfa(), STAR_CHECK_LEN),
        },
    ];
    let (factors, ideal) = ideal_j(words, a.dfa(), limits)?;
    let generators = bar_generator_count(&factors, &ideal)?;
    if generators > limits.languages_max_generators as u128 {
        return Err(Error::BoundExceeded {
            what: "bar complex generators",
            value: generators.min(usize::MAX as u128) as usize,
            max: limits.languages_max_generators,
        });
    }
    let refs: Vec<&FinitePoset> = factors.iter().map(|f| &**f).collect();
    let complex = multi_bar_complex(&refs, &ideal_rep(&ideal))?;
    Ok(LanguagesReport {
        automaton_states: a.dfa().states(),
        automaton_length: length,
        alphabet: d,
        lengths,
        hypotheses,
        ideal_size: ideal.len(),
        generators,
        homology: complex.homology_dims(),
    })
}

// ---------------------------------------------------------------------------
// Word order and initial submodules.

/// Lexicographic comparison of two surjection words of the same shape.
pub fn os_word_order(u: &SurjWord, v: &SurjWord) -> Result<Ordering> {
    if u.len() != v.len() || u.target() != v.target() {
        return invalid(format!("words {u} and {v} live in different hom-sets"));
    }
    Ok(u.letters().cmp(v.letters()))
}

/// Exhaustive check that precomposition with every ordered surjection
/// strictly preserves the order, for targets `≤ max_d` and lengths `≤ max_n`.
pub fn os_order_axiom_check(max_d: usize, max_n: usize) -> Result<bool> {
    for d in 1..=max_d {
        for n in d..=max_n {
            let words = enumerate_surjections(n, d);
            for n2 in n..=max_n {
                for g in enumerate_surjections(n2, n).into_iter().filter(|g| g.is_ordered()) {
                    let images: Vec<SurjWord> = words.iter().map(|w| w.precompose(&g)).collect::<Result<_>>()?;
                    // `words` is sorted, so strict preservation means the images are strictly increasing.
                    for pair in images.windows(2) {
                        if os_word_order(&pair[0], &pair[1])? != Ordering::Less {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// A submodule of the free module on one generator of degree `d`, given by
/// generators that are homogeneous combinations of surjection words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordSubmodule {
    d: usize,
    gens: Vec<Vec<(SurjWord, Rat)>>,
}

impl WordSubmodule {
    pub fn new(d: usize, gens: Vec<Vec<(SurjWord, Rat)>>) -> Result<Self> {
        for g in &gens {
            let Some((w0, _)) = g.first() else {
                return invalid("empty generator");
            };
            if g.iter().any(|(w, _)| w.len() != w0.len() || w.target() != d) {
                return invalid(format!("generator terms must be words of one length onto [{d}]"));
            }
        }
        Ok(WordSubmodule { d, gens })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn generators(&self) -> &[Vec<(SurjWord, Rat)>] {
        &self.gens
    }

    fn module(&self, limits: &Limits) -> FsopModule {
        let relations = self
            .gens
            .iter()
            .map(|g| Relation {
                degree: g[0].0.len(),
                terms: g
                    .iter()
                    .map(|(w, c)| RelTerm {
                        gen: 0,
                        word: w.clone(),
                        coef: c.clone(),
                    })
                    .collect(),
            })
            .collect();
        let pres = FsopPresentation::new(vec![self.d], relations).expect("validated generators");
        FsopModule::with_limits(pres, limits)
    }
}

/// Leading positions of the span of `rows` when columns are ranked by `key`
/// (larger key = larger in the order).
fn leading_positions<K: Ord>(cols: usize, rows: &[BTreeMap<usize, Rat>], key: impl Fn(usize) -> K) -> BTreeSet<usize> {
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| key(b).cmp(&key(a)));
    let mut rank_of = vec![0usize; cols];
    for (r, &c) in order.iter().enumerate() {
        rank_of[c] = r;
    }
    let permuted = rows.iter().map(|row| row.iter().map(|(&i, v)| (rank_of[i], v.clone())).collect::<BTreeMap<_, _>>());
    Rref::from_rows(cols, permuted).pivots.into_iter().map(|p| order[p]).collect()
}

/// `init(J)_n` for `n = 0..=max_n`: the words that are leading terms of
/// elements of `J_n` under the lexicographic order.
pub fn init_ideal(sub: &WordSubmodule, max_n: usize, limits: &Limits) -> Result<Vec<BTreeSet<SurjWord>>> {
    let m = sub.module(limits);
    let mut out = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        let ev = m.evaluate_degree(n)?;
        let basis = ev.free_basis();
        let lead = leading_positions(basis.len(), &ev.rref().rows, |i| basis[i].1.clone());
        out.push(lead.into_iter().map(|i| basis[i].1.clone()).collect());
    }
    Ok(out)
}

/// For every `c` in `poset_degrees` and every partition `q` of `[c]` (with
/// `y` blocks), filters `J_{x+y}` by the order of the words `h ∘ (id_x ⊔ f_q)`
/// and checks that the filtration jumps occur exactly at `init(J)_{x+y}`.
pub fn assoc_graded_check(sub: &WordSubmodule, x: usize, poset_degrees: &[usize], limits: &Limits) -> Result<bool> {
    let m = sub.module(limits);
    for &c in poset_degrees {
        for q in set_partitions(c) {
            let y = rgs_blocks(&q).len();
            let ev = m.evaluate_degree(x + y)?;
            let basis = ev.free_basis();
            let rows = &ev.rref().rows;
            // id_x ⊔ f_q as a surjection [x + c] ↠ [x + y].
            let mut letters: Vec<u8> = (1..=x as u8).collect();
            letters.extend(q.iter().map(|&b| (x + b as usize + 1) as u8));
            let g = SurjWord::new(letters)?;
            let images: Vec<SurjWord> = basis.iter().map(|(_, h)| h.precompose(&g)).collect::<Result<_>>()?;
            let jumps = leading_positions(basis.len(), rows, |i| images[i].clone());
            let init = leading_positions(basis.len(), rows, |i| basis[i].1.clone());
            if jumps != init {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

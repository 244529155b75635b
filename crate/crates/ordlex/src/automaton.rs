//! Deterministic finite automata over ordered alphabets and their
//! order-theoretic structure.
//!
//! The central type is [`Dfa`], a partial deterministic automaton over the
//! two-letter alphabet `0 < 1`. Words compare lexicographically with every
//! proper prefix preceding its extensions, so the accepted language is a
//! countable linear order. [`AlphaDfa`] is the same thing over an arbitrary
//! ordered alphabet; [`AlphaDfa::binarize`] reduces it to the binary case by
//! a fixed-width, order-preserving letter coding.
//!
//! A *complete prefix automaton* (CPA) is a trim automaton in which final
//! states have no outgoing transitions and every non-final state has both.
//! Every trim automaton whose language is a prefix language contracts to an
//! order-isomorphic CPA ([`Dfa::to_cpa`]); a non-prefix language first gets
//! a fresh minimal end-marker letter ([`AlphaDfa::prefixize`]). On a CPA the
//! shape of the strongly connected components decides the order type:
//!
//! * the language is well-ordered iff no state of a nontrivial component
//!   keeps its `0`-successor inside the component
//!   ([`Dfa::is_ordinal_automaton`] — such automata are called *ordinal
//!   automata* throughout this crate);
//! * the language is scattered iff every state of a nontrivial component
//!   keeps at most one of its successors inside the component
//!   ([`Dfa::is_scattered_automaton`]).
//!
//! Automata are serialized in the line-based `ordaut v1` text format; see
//! [`parse_ordaut`].

use crate::{Error, Result};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// A word over the binary alphabet, stored as a sequence of letters `0`/`1`.
///
/// The derived [`Ord`] is exactly the lexicographic order used throughout
/// this crate: a proper prefix precedes its extensions, and otherwise the
/// first differing letter decides.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    /// The empty word.
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Builds a word from letters, which must all be `0` or `1`.
    pub fn from_letters(letters: impl IntoIterator<Item = u8>) -> Word {
        let letters: Vec<u8> = letters.into_iter().collect();
        assert!(letters.iter().all(|&l| l <= 1), "letters must be 0 or 1");
        Word(letters)
    }

    /// The letters of the word.
    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Appends a letter (`0` or `1`).
    pub fn push(&mut self, letter: u8) {
        assert!(letter <= 1, "letters must be 0 or 1");
        self.0.push(letter);
    }

    pub fn pop(&mut self) -> Option<u8> {
        self.0.pop()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut letters = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c {
                '0' => letters.push(0),
                '1' => letters.push(1),
                _ => return Err(Error::WordParse(format!("unexpected character '{c}'"))),
            }
        }
        Ok(Word(letters))
    }
}

/// A partial deterministic finite automaton over the alphabet `{0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    transitions: Vec<[Option<usize>; 2]>,
    initial: usize,
    finals: BTreeSet<usize>,
}

impl Dfa {
    /// Builds an automaton with `state_count` states named `0..state_count`.
    ///
    /// Rejects out-of-range states, letters other than `0`/`1`, and duplicate
    /// transitions (same source state and letter).
    pub fn new(
        state_count: usize,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, u8, usize)>,
    ) -> Result<Dfa> {
        let invalid = |msg: String| Error::InvalidAutomaton(msg);
        if state_count == 0 {
            return Err(invalid("automaton must have at least one state".into()));
        }
        if initial >= state_count {
            return Err(invalid(format!("initial state {initial} out of range")));
        }
        let mut table = vec![[None, None]; state_count];
        for (from, letter, to) in transitions {
            if from >= state_count || to >= state_count {
                return Err(invalid(format!("transition ({from}, {letter}, {to}) out of range")));
            }
            if letter > 1 {
                return Err(invalid(format!("letter must be 0 or 1, got {letter}")));
            }
            let slot = &mut table[from][letter as usize];
            if slot.is_some() {
                return Err(invalid(format!("duplicate transition from state {from} on letter {letter}")));
            }
            *slot = Some(to);
        }
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        if let Some(&f) = finals.iter().find(|&&f| f >= state_count) {
            return Err(invalid(format!("final state {f} out of range")));
        }
        Ok(Dfa { transitions: table, initial, finals })
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals.contains(&state)
    }

    /// Final states in ascending order.
    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().copied()
    }

    /// The target of the transition from `state` on `letter`, if defined.
    pub fn step(&self, state: usize, letter: u8) -> Option<usize> {
        self.transitions[state][letter as usize]
    }

    /// Runs the automaton on `word` starting at `state`.
    pub fn run(&self, state: usize, word: &Word) -> Option<usize> {
        word.letters().iter().try_fold(state, |q, &l| self.step(q, l))
    }

    /// All transitions as `(state, letter, target)`, sorted.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, u8, usize)> + '_ {
        self.transitions.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(l, t)| t.map(|t| (q, l as u8, t)))
        })
    }

    fn out_degree(&self, state: usize) -> usize {
        self.transitions[state].iter().flatten().count()
    }

    fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = std::collections::VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for letter in 0..2 {
                if let Some(t) = self.transitions[q][letter] {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        seen
    }

    fn co_accessible(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, _, t) in self.transitions() {
            preds[t].push(q);
        }
        let mut seen = vec![false; n];
        let mut queue: std::collections::VecDeque<usize> = self.finals.iter().copied().collect();
        for &f in &self.finals {
            seen[f] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Whether every state is both accessible from the initial state and
    /// co-accessible (can reach a final state).
    pub fn is_trim(&self) -> bool {
        self.accessible().iter().all(|&b| b) && self.co_accessible().iter().all(|&b| b)
    }

    /// Removes states that are not accessible or not co-accessible and
    /// renumbers the survivors in canonical breadth-first order from the
    /// initial state (exploring letter `0` before letter `1`).
    ///
    /// Fails with [`Error::EmptyLanguage`] when no accepted word remains.
    pub fn trim(&self) -> Result<Dfa> {
        let accessible = self.accessible();
        let co_accessible = self.co_accessible();
        let keep: Vec<bool> = accessible
            .iter()
            .zip(&co_accessible)
            .map(|(&a, &c)| a && c)
            .collect();
        if !keep[self.initial] {
            return Err(Error::EmptyLanguage);
        }
        // Canonical renumbering. Every kept state is reachable from the
        // initial state through kept states, because each state on a witness
        // path is itself accessible and co-accessible.
        let mut new_id = vec![usize::MAX; self.state_count()];
        let mut order = Vec::new();
        let mut queue = std::collections::VecDeque::from([self.initial]);
        new_id[self.initial] = 0;
        order.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for letter in 0..2 {
                if let Some(t) = self.transitions[q][letter] {
                    if keep[t] && new_id[t] == usize::MAX {
                        new_id[t] = order.len();
                        order.push(t);
                        queue.push_back(t);
                    }
                }
            }
        }
        let transitions = order
            .iter()
            .map(|&q| {
                let row = self.transitions[q];
                [0, 1].map(|l| row[l].filter(|&t| keep[t]).map(|t| new_id[t]))
            })
            .collect();
        let finals = self
            .finals
            .iter()
            .filter(|&&f| keep[f])
            .map(|&f| new_id[f])
            .collect();
        Ok(Dfa { transitions, initial: 0, finals })
    }

    /// Whether no final state has an outgoing transition. On a trim
    /// automaton this is equivalent to the language being a prefix language
    /// (no accepted word is a proper prefix of another).
    pub fn is_prefix_accepting(&self) -> bool {
        self.finals.iter().all(|&f| self.out_degree(f) == 0)
    }

    /// Whether this automaton is a complete prefix automaton: trim, final
    /// states have no outgoing transitions, and every non-final state has
    /// both.
    pub fn is_cpa(&self) -> bool {
        self.is_trim()
            && (0..self.state_count()).all(|q| {
                if self.is_final(q) {
                    self.out_degree(q) == 0
                } else {
                    self.out_degree(q) == 2
                }
            })
    }

    /// Contracts a trim, prefix-accepting automaton into an order-isomorphic
    /// complete prefix automaton.
    ///
    /// For each state `q`, follow the unique chain of states that have
    /// exactly one outgoing transition. If the chain ends in a final state,
    /// `q` becomes final and loses its transitions; if it ends in a state
    /// with both transitions, `q` adopts that state's transitions. States
    /// made unreachable by the contraction are then trimmed away and the
    /// result renumbered canonically.
    pub fn to_cpa(&self) -> Result<Dfa> {
        if !self.is_trim() {
            return Err(Error::NotTrim);
        }
        if !self.is_prefix_accepting() {
            return Err(Error::NotPrefix);
        }
        let n = self.state_count();
        let mut transitions = self.transitions.clone();
        let mut finals = self.finals.clone();
        for q in 0..n {
            if self.is_final(q) || self.out_degree(q) == 2 {
                continue;
            }
            // q has exactly one outgoing transition: out-degree 0 with
            // q non-final would contradict co-accessibility.
            let mut cur = q;
            for _ in 0..n {
                cur = self.transitions[cur].iter().flatten().next().copied().expect(
                    "non-final state with no outgoing transition in a trim automaton",
                );
                if self.is_final(cur) {
                    finals.insert(q);
                    transitions[q] = [None, None];
                    break;
                }
                if self.out_degree(cur) == 2 {
                    transitions[q] = self.transitions[cur];
                    break;
                }
            }
            // The chain always terminates within n steps: a cycle of
            // single-transition states could never reach a final state.
        }
        let contracted = Dfa { transitions, initial: self.initial, finals };
        let result = contracted.trim()?;
        debug_assert!(result.is_cpa());
        Ok(result)
    }

    /// Enumerates the accepted words of length at most `max_len`, in
    /// lexicographic order.
    pub fn enumerate_language(&self, max_len: usize) -> Vec<Word> {
        let mut words = Vec::new();
        let mut current = Word::empty();
        self.enumerate_from(self.initial, max_len, &mut current, &mut words);
        words
    }

    fn enumerate_from(&self, state: usize, budget: usize, current: &mut Word, out: &mut Vec<Word>) {
        if self.is_final(state) {
            out.push(current.clone());
        }
        if budget == 0 {
            return;
        }
        for letter in 0..2u8 {
            if let Some(t) = self.step(state, letter) {
                current.push(letter);
                self.enumerate_from(t, budget - 1, current, out);
                current.pop();
            }
        }
    }

    /// Computes the strongly connected components and their heights.
    pub fn condense(&self) -> Condensation {
        Condensation::of(self)
    }

    /// Whether the lexicographic ordering of the language is a well-ordering.
    ///
    /// Requires a complete prefix automaton; the test is structural: no state
    /// of a nontrivial strongly connected component may keep its
    /// `0`-successor inside the component.
    pub fn is_ordinal_automaton(&self) -> Result<bool> {
        let cond = self.require_cpa_condensation()?;
        let ok = self.nontrivial_states(&cond).all(|q| {
            let inside = |t: Option<usize>| t.is_some_and(|t| cond.component_of(t) == cond.component_of(q));
            !inside(self.step(q, 0))
        });
        Ok(ok)
    }

    /// Whether the lexicographic ordering of the language is scattered (no
    /// subset ordered like the rationals).
    ///
    /// Requires a complete prefix automaton; the test is structural: every
    /// state of a nontrivial strongly connected component keeps at most one
    /// of its successors inside the component.
    pub fn is_scattered_automaton(&self) -> Result<bool> {
        let cond = self.require_cpa_condensation()?;
        let ok = self.nontrivial_states(&cond).all(|q| {
            let inside = |t: Option<usize>| t.is_some_and(|t| cond.component_of(t) == cond.component_of(q));
            !(inside(self.step(q, 0)) && inside(self.step(q, 1)))
        });
        Ok(ok)
    }

    fn require_cpa_condensation(&self) -> Result<Condensation> {
        if !self.is_cpa() {
            return Err(Error::NotCpa);
        }
        Ok(self.condense())
    }

    fn nontrivial_states<'a>(&'a self, cond: &'a Condensation) -> impl Iterator<Item = usize> + 'a {
        (0..self.state_count()).filter(move |&q| cond.component(cond.component_of(q)).nontrivial)
    }

    /// Serializes the automaton in the `ordaut v1` text format.
    pub fn to_ordaut_string(&self) -> String {
        let mut out = String::from("ordaut v1\n");
        out.push_str(&format!("states {}\n", self.state_count()));
        out.push_str(&format!("initial {}\n", self.initial));
        if !self.finals.is_empty() {
            let ids: Vec<String> = self.finals.iter().map(|f| f.to_string()).collect();
            out.push_str(&format!("final {}\n", ids.join(" ")));
        }
        for (q, l, t) in self.transitions() {
            out.push_str(&format!("{q} {l} {t}\n"));
        }
        out
    }
}

/// A deterministic finite automaton over an arbitrary ordered alphabet.
///
/// The alphabet is a list of distinct symbols whose listed order is their
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaDfa {
    alphabet: Vec<String>,
    transitions: Vec<Vec<Option<usize>>>,
    initial: usize,
    finals: BTreeSet<usize>,
}

impl AlphaDfa {
    /// Builds an automaton over `alphabet`; transitions name letters by rank
    /// (index into the alphabet).
    pub fn new(
        alphabet: Vec<String>,
        state_count: usize,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
        transitions: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<AlphaDfa> {
        let invalid = |msg: String| Error::InvalidAutomaton(msg);
        if alphabet.is_empty() {
            return Err(invalid("alphabet must be nonempty".into()));
        }
        for (i, sym) in alphabet.iter().enumerate() {
            if sym.is_empty() || sym.contains(char::is_whitespace) || sym.contains('#') {
                return Err(invalid(format!("invalid alphabet symbol {sym:?}")));
            }
            if alphabet[..i].contains(sym) {
                return Err(invalid(format!("duplicate alphabet symbol {sym:?}")));
            }
        }
        if state_count == 0 {
            return Err(invalid("automaton must have at least one state".into()));
        }
        if initial >= state_count {
            return Err(invalid(format!("initial state {initial} out of range")));
        }
        let mut table = vec![vec![None; alphabet.len()]; state_count];
        for (from, rank, to) in transitions {
            if from >= state_count || to >= state_count {
                return Err(invalid(format!("transition ({from}, {rank}, {to}) out of range")));
            }
            if rank >= alphabet.len() {
                return Err(invalid(format!("letter rank {rank} out of range")));
            }
            let slot = &mut table[from][rank];
            if slot.is_some() {
                return Err(invalid(format!(
                    "duplicate transition from state {from} on symbol {:?}",
                    alphabet[rank]
                )));
            }
            *slot = Some(to);
        }
        let finals: BTreeSet<usize> = finals.into_iter().collect();
        if let Some(&f) = finals.iter().find(|&&f| f >= state_count) {
            return Err(invalid(format!("final state {f} out of range")));
        }
        Ok(AlphaDfa { alphabet, transitions: table, initial, finals })
    }

    /// Views a binary automaton as an [`AlphaDfa`] over the alphabet
    /// `["0", "1"]`.
    pub fn from_binary(dfa: &Dfa) -> AlphaDfa {
        AlphaDfa {
            alphabet: vec!["0".into(), "1".into()],
            transitions: dfa
                .transitions
                .iter()
                .map(|row| row.to_vec())
                .collect(),
            initial: dfa.initial,
            finals: dfa.finals.clone(),
        }
    }

    pub fn alphabet(&self) -> &[String] {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals.contains(&state)
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals.iter().copied()
    }

    /// The target of the transition from `state` on the letter of the given
    /// rank, if defined.
    pub fn step(&self, state: usize, rank: usize) -> Option<usize> {
        self.transitions[state][rank]
    }

    /// All transitions as `(state, rank, target)`, sorted.
    pub fn transitions(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.transitions.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(r, t)| t.map(|t| (q, r, t)))
        })
    }

    fn accessible(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue = std::collections::VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for t in self.transitions[q].iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        seen
    }

    fn co_accessible(&self) -> Vec<bool> {
        let n = self.state_count();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, _, t) in self.transitions() {
            preds[t].push(q);
        }
        let mut seen = vec![false; n];
        let mut queue: std::collections::VecDeque<usize> = self.finals.iter().copied().collect();
        for &f in &self.finals {
            seen[f] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if !seen[p] {
                    seen[p] = true;
                    queue.push_back(p);
                }
            }
        }
        seen
    }

    /// Whether every state is accessible and co-accessible.
    pub fn is_trim(&self) -> bool {
        self.accessible().iter().all(|&b| b) && self.co_accessible().iter().all(|&b| b)
    }

    /// Removes non-accessible and non-co-accessible states, renumbering the
    /// survivors in canonical breadth-first order (letters in rank order).
    pub fn trim(&self) -> Result<AlphaDfa> {
        let keep: Vec<bool> = self
            .accessible()
            .iter()
            .zip(&self.co_accessible())
            .map(|(&a, &c)| a && c)
            .collect();
        if !keep[self.initial] {
            return Err(Error::EmptyLanguage);
        }
        let mut new_id = vec![usize::MAX; self.state_count()];
        let mut order = Vec::new();
        let mut queue = std::collections::VecDeque::from([self.initial]);
        new_id[self.initial] = 0;
        order.push(self.initial);
        while let Some(q) = queue.pop_front() {
            for t in self.transitions[q].iter().flatten() {
                if keep[*t] && new_id[*t] == usize::MAX {
                    new_id[*t] = order.len();
                    order.push(*t);
                    queue.push_back(*t);
                }
            }
        }
        let transitions = order
            .iter()
            .map(|&q| {
                self.transitions[q]
                    .iter()
                    .map(|t| t.filter(|&t| keep[t]).map(|t| new_id[t]))
                    .collect()
            })
            .collect();
        let finals = self
            .finals
            .iter()
            .filter(|&&f| keep[f])
            .map(|&f| new_id[f])
            .collect();
        Ok(AlphaDfa { alphabet: self.alphabet.clone(), transitions, initial: 0, finals })
    }

    /// Whether no final state has an outgoing transition.
    pub fn is_prefix_accepting(&self) -> bool {
        self.finals
            .iter()
            .all(|&f| self.transitions[f].iter().all(Option::is_none))
    }

    /// Reduces the automaton to the binary alphabet by coding the letter of
    /// rank `r` as the big-endian `w`-bit word for `r`, where
    /// `w = ceil(log2(alphabet size))` (at least 1). The coding preserves
    /// the lexicographic order of the language.
    ///
    /// Requires a trim automaton; the result is trim. States `0..n` of the
    /// result are the original states; the coding chains introduce fresh
    /// states beyond them.
    pub fn binarize(&self) -> Result<Dfa> {
        if !self.is_trim() {
            return Err(Error::NotTrim);
        }
        let sigma = self.alphabet.len();
        let width = if sigma <= 2 {
            1
        } else {
            usize::BITS as usize - (sigma - 1).leading_zeros() as usize
        };
        let n = self.state_count();
        let mut transitions: Vec<[Option<usize>; 2]> = vec![[None, None]; n];
        for q in 0..n {
            // One shared code trie per state: ranks with a common bit prefix
            // share the intermediate states, keeping the result deterministic.
            let mut trie: std::collections::HashMap<(usize, usize), usize> = Default::default();
            for (rank, target) in self.transitions[q].iter().enumerate() {
                let Some(target) = *target else { continue };
                let mut cur = q;
                for i in 0..width {
                    let bit = (rank >> (width - 1 - i)) & 1;
                    if i + 1 == width {
                        transitions[cur][bit] = Some(target);
                    } else {
                        let prefix = rank >> (width - 1 - i);
                        let next = *trie.entry((i + 1, prefix)).or_insert_with(|| {
                            transitions.push([None, None]);
                            transitions.len() - 1
                        });
                        transitions[cur][bit] = Some(next);
                        cur = next;
                    }
                }
            }
        }
        Ok(Dfa { transitions, initial: self.initial, finals: self.finals.clone() })
    }

    /// Appends a fresh minimal symbol to the language: the result accepts
    /// `L·$` over the alphabet `[$, ...old]`, which is a prefix language
    /// order-isomorphic to `L`.
    ///
    /// Requires a trim automaton; the result is trim. The fresh final sink
    /// is the new highest-numbered state.
    pub fn prefixize(&self) -> Result<AlphaDfa> {
        if !self.is_trim() {
            return Err(Error::NotTrim);
        }
        let mut marker = String::from("$");
        while self.alphabet.contains(&marker) {
            marker.push('$');
        }
        let mut alphabet = vec![marker];
        alphabet.extend(self.alphabet.iter().cloned());
        let n = self.state_count();
        let sink = n;
        let mut transitions: Vec<Vec<Option<usize>>> = self
            .transitions
            .iter()
            .enumerate()
            .map(|(q, row)| {
                let mut new_row = vec![None];
                new_row.extend(row.iter().copied());
                if self.is_final(q) {
                    new_row[0] = Some(sink);
                }
                new_row
            })
            .collect();
        transitions.push(vec![None; alphabet.len()]);
        Ok(AlphaDfa { alphabet, transitions, initial: self.initial, finals: BTreeSet::from([sink]) })
    }

    /// Enumerates accepted words of length at most `max_len` as sequences of
    /// letter ranks, in lexicographic order.
    pub fn enumerate_language(&self, max_len: usize) -> Vec<Vec<usize>> {
        let mut words = Vec::new();
        let mut current = Vec::new();
        self.enumerate_from(self.initial, max_len, &mut current, &mut words);
        words
    }

    fn enumerate_from(
        &self,
        state: usize,
        budget: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if self.is_final(state) {
            out.push(current.clone());
        }
        if budget == 0 {
            return;
        }
        for rank in 0..self.alphabet.len() {
            if let Some(t) = self.step(state, rank) {
                current.push(rank);
                self.enumerate_from(t, budget - 1, current, out);
                current.pop();
            }
        }
    }

    /// Serializes the automaton in the `ordaut v1` text format.
    pub fn to_ordaut_string(&self) -> String {
        let mut out = String::from("ordaut v1\n");
        out.push_str(&format!("states {}\n", self.state_count()));
        out.push_str(&format!("initial {}\n", self.initial));
        if !self.finals.is_empty() {
            let ids: Vec<String> = self.finals.iter().map(|f| f.to_string()).collect();
            out.push_str(&format!("final {}\n", ids.join(" ")));
        }
        out.push_str(&format!("alphabet {}\n", self.alphabet.join(" ")));
        for (q, r, t) in self.transitions() {
            out.push_str(&format!("{q} {} {t}\n", self.alphabet[r]));
        }
        out
    }
}

/// One strongly connected component of an automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// The member states, ascending.
    pub states: Vec<usize>,
    /// Whether the component contains a cycle (more than one state, or a
    /// single state with a self-loop).
    pub nontrivial: bool,
    /// The height: the length of the longest chain of nontrivial components
    /// reachable from this one (including itself). Trivial components have
    /// height `0`.
    pub height: usize,
    /// Whether the component is a single final state.
    pub final_singleton: bool,
}

/// The condensation of an automaton: its strongly connected components in
/// topological order (components only reach components with larger indices),
/// with heights.
#[derive(Debug, Clone)]
pub struct Condensation {
    component_of: Vec<usize>,
    components: Vec<Component>,
}

impl Condensation {
    fn of(dfa: &Dfa) -> Condensation {
        let sccs = tarjan_sccs(dfa);
        // Tarjan completes each component only after everything it can reach,
        // so reversing the completion order yields a topological order.
        let components_states: Vec<Vec<usize>> = sccs.into_iter().rev().collect();
        let mut component_of = vec![usize::MAX; dfa.state_count()];
        for (c, states) in components_states.iter().enumerate() {
            for &q in states {
                component_of[q] = c;
            }
        }
        let mut components: Vec<Component> = components_states
            .into_iter()
            .map(|mut states| {
                states.sort_unstable();
                let nontrivial = states.len() > 1
                    || [0, 1].iter().any(|&l| dfa.step(states[0], l) == Some(states[0]));
                let final_singleton = !nontrivial && dfa.is_final(states[0]);
                Component { states, nontrivial, height: 0, final_singleton }
            })
            .collect();
        // Heights, processing successors (larger indices) first:
        // `deepest[c]` is the maximum height of any nontrivial component
        // reachable from `c`, including `c` itself.
        let mut deepest = vec![0usize; components.len()];
        for c in (0..components.len()).rev() {
            let mut best = 0;
            for &q in &components[c].states {
                for letter in 0..2 {
                    if let Some(t) = dfa.step(q, letter) {
                        let d = component_of[t];
                        if d != c {
                            best = best.max(deepest[d]);
                        }
                    }
                }
            }
            if components[c].nontrivial {
                components[c].height = best + 1;
                deepest[c] = best + 1;
            } else {
                deepest[c] = best;
            }
        }
        Condensation { component_of, components }
    }

    /// The component index of a state. Indices are topological: a component
    /// can only reach components with indices at least its own.
    pub fn component_of(&self, state: usize) -> usize {
        self.component_of[state]
    }

    /// The components in topological order.
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// A single component by index.
    pub fn component(&self, index: usize) -> &Component {
        &self.components[index]
    }

    /// The maximum height over all components (`0` if the automaton is
    /// acyclic).
    pub fn max_height(&self) -> usize {
        self.components.iter().map(|c| c.height).max().unwrap_or(0)
    }
}

/// Iterative Tarjan strongly-connected-components algorithm. Returns the
/// components in completion order (each component is emitted only after
/// every component it can reach).
fn tarjan_sccs(dfa: &Dfa) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = dfa.state_count();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut next_index = 0usize;
    let mut result: Vec<Vec<usize>> = Vec::new();
    let mut call_stack: Vec<(usize, u8)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call_stack.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call_stack.last_mut() {
            if *edge == 0 {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if *edge < 2 {
                let letter = *edge;
                *edge += 1;
                if let Some(w) = dfa.step(v, letter) {
                    if index[w] == UNVISITED {
                        call_stack.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                }
            } else {
                call_stack.pop();
                if low[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("Tarjan stack underflow");
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    result.push(component);
                }
                if let Some(&mut (parent, _)) = call_stack.last_mut() {
                    low[parent] = low[parent].min(low[v]);
                }
            }
        }
    }
    result
}

/// An automaton parsed from the `ordaut v1` format: binary when the file has
/// no `alphabet` line, alphabet-based otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedAutomaton {
    Binary(Dfa),
    Alphabet(AlphaDfa),
}

impl ParsedAutomaton {
    /// Serializes back to `ordaut v1` text.
    pub fn to_ordaut_string(&self) -> String {
        match self {
            ParsedAutomaton::Binary(d) => d.to_ordaut_string(),
            ParsedAutomaton::Alphabet(a) => a.to_ordaut_string(),
        }
    }
}

/// Parses the `ordaut v1` text format.
///
/// The format is line-based; `#` starts a comment and blank lines are
/// ignored. The first significant line must be the header `ordaut v1`,
/// followed in any order by `states N`, `initial I`, an optional
/// `final F1 F2 ...` line, an optional `alphabet a b c` line (symbol order =
/// lexicographic order), and transition lines `S L T` where `L` is `0`/`1`
/// or, when an alphabet is declared, one of its symbols. Unknown keys,
/// repeated key lines, and duplicate transitions are errors.
pub fn parse_ordaut(text: &str) -> Result<ParsedAutomaton> {
    let err = |line: usize, msg: String| Error::AutParse { line, msg };
    let mut header_seen = false;
    let mut states: Option<(usize, usize)> = None;
    let mut initial: Option<(usize, usize)> = None;
    let mut finals: Option<(usize, Vec<usize>)> = None;
    let mut alphabet: Option<(usize, Vec<String>)> = None;
    let mut raw_transitions: Vec<(usize, usize, String, usize)> = Vec::new();
    let mut last_line = 0usize;

    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw_line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        if !header_seen {
            if tokens == ["ordaut", "v1"] {
                header_seen = true;
                continue;
            }
            return Err(err(line_no, "expected header \"ordaut v1\"".into()));
        }
        let parse_id = |token: &str| -> Result<usize> {
            token
                .parse::<usize>()
                .map_err(|_| err(line_no, format!("expected a state number, found {token:?}")))
        };
        match tokens[0] {
            "ordaut" => return Err(err(line_no, "duplicate header".into())),
            "states" => {
                if states.is_some() {
                    return Err(err(line_no, "duplicate \"states\" line".into()));
                }
                if tokens.len() != 2 {
                    return Err(err(line_no, "\"states\" takes exactly one number".into()));
                }
                states = Some((line_no, parse_id(tokens[1])?));
            }
            "initial" => {
                if initial.is_some() {
                    return Err(err(line_no, "duplicate \"initial\" line".into()));
                }
                if tokens.len() != 2 {
                    return Err(err(line_no, "\"initial\" takes exactly one state".into()));
                }
                initial = Some((line_no, parse_id(tokens[1])?));
            }
            "final" => {
                if finals.is_some() {
                    return Err(err(line_no, "duplicate \"final\" line".into()));
                }
                let ids = tokens[1..].iter().map(|t| parse_id(t)).collect::<Result<Vec<_>>>()?;
                finals = Some((line_no, ids));
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(err(line_no, "duplicate \"alphabet\" line".into()));
                }
                if tokens.len() < 2 {
                    return Err(err(line_no, "\"alphabet\" needs at least one symbol".into()));
                }
                let symbols: Vec<String> = tokens[1..].iter().map(|t| t.to_string()).collect();
                for (i, sym) in symbols.iter().enumerate() {
                    if symbols[..i].contains(sym) {
                        return Err(err(line_no, format!("duplicate alphabet symbol {sym:?}")));
                    }
                }
                alphabet = Some((line_no, symbols));
            }
            tok if tok.bytes().next().is_some_and(|b| b.is_ascii_digit()) => {
                if tokens.len() != 3 {
                    return Err(err(line_no, "transitions have the form \"STATE LETTER STATE\"".into()));
                }
                let from = parse_id(tokens[0])?;
                let to = parse_id(tokens[2])?;
                raw_transitions.push((line_no, from, tokens[1].to_string(), to));
            }
            other => return Err(err(line_no, format!("unknown key {other:?}"))),
        }
    }

    let eof = last_line.max(1);
    if !header_seen {
        return Err(err(eof, "expected header \"ordaut v1\"".into()));
    }
    let (_, state_count) = states.ok_or_else(|| err(eof, "missing \"states\" line".into()))?;
    if state_count == 0 {
        return Err(err(eof, "automaton must have at least one state".into()));
    }
    let (initial_line, initial) = initial.ok_or_else(|| err(eof, "missing \"initial\" line".into()))?;
    if initial >= state_count {
        return Err(err(initial_line, format!("initial state {initial} out of range")));
    }
    let (finals_line, final_ids) = finals.unwrap_or((eof, Vec::new()));
    if let Some(&f) = final_ids.iter().find(|&&f| f >= state_count) {
        return Err(err(finals_line, format!("final state {f} out of range")));
    }

    let check_range = |line: usize, from: usize, to: usize| -> Result<()> {
        if from >= state_count {
            return Err(err(line, format!("state {from} out of range")));
        }
        if to >= state_count {
            return Err(err(line, format!("state {to} out of range")));
        }
        Ok(())
    };

    match alphabet {
        Some((_, symbols)) => {
            let mut transitions = Vec::with_capacity(raw_transitions.len());
            let mut seen = std::collections::HashSet::new();
            for (line, from, letter, to) in raw_transitions {
                check_range(line, from, to)?;
                let rank = symbols
                    .iter()
                    .position(|s| *s == letter)
                    .ok_or_else(|| err(line, format!("letter {letter:?} is not in the alphabet")))?;
                if !seen.insert((from, rank)) {
                    return Err(err(line, format!("duplicate transition from state {from} on {letter:?}")));
                }
                transitions.push((from, rank, to));
            }
            let dfa = AlphaDfa::new(symbols, state_count, initial, final_ids, transitions)
                .map_err(|e| err(eof, e.to_string()))?;
            Ok(ParsedAutomaton::Alphabet(dfa))
        }
        None => {
            let mut transitions = Vec::with_capacity(raw_transitions.len());
            let mut seen = std::collections::HashSet::new();
            for (line, from, letter, to) in raw_transitions {
                check_range(line, from, to)?;
                let letter = match letter.as_str() {
                    "0" => 0u8,
                    "1" => 1u8,
                    other => {
                        return Err(err(
                            line,
                            format!("letter must be 0 or 1, found {other:?} (declare an alphabet for other symbols)"),
                        ))
                    }
                };
                if !seen.insert((from, letter)) {
                    return Err(err(line, format!("duplicate transition from state {from} on {letter}")));
                }
                transitions.push((from, letter, to));
            }
            let dfa = Dfa::new(state_count, initial, final_ids, transitions)
                .map_err(|e| err(eof, e.to_string()))?;
            Ok(ParsedAutomaton::Binary(dfa))
        }
    }
}

/// Normalizes any parsed automaton into an order-isomorphic complete prefix
/// automaton over the binary alphabet: trim, binarize when an alphabet is
/// declared, append an end marker when the language is not a prefix
/// language, and contract.
///
/// Fails with [`Error::EmptyLanguage`] when the automaton accepts nothing.
pub fn normalize_to_cpa(parsed: &ParsedAutomaton) -> Result<Dfa> {
    let binary = match parsed {
        ParsedAutomaton::Binary(d) => d.trim()?,
        ParsedAutomaton::Alphabet(a) => a.trim()?.binarize()?,
    };
    let prefixed = if binary.is_prefix_accepting() {
        binary
    } else {
        AlphaDfa::from_binary(&binary).prefixize()?.binarize()?
    };
    prefixed.to_cpa()
}

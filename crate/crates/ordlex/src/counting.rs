//! Exact word counting on the acyclic view of an ordinal automaton.
//!
//! A well-ordered language is analyzed through the [`DagAutomaton`]: the
//! trivial-component states of the automaton, plus one fresh *sink* per
//! counted component (each nontrivial strongly connected component and each
//! final singleton). Transitions entering a counted component are redirected
//! to its sink, so the words accepted at sink `t_C` are exactly the words
//! that lead from the initial state to `C` without passing through any other
//! counted component first.
//!
//! On this acyclic structure two questions have exact, polynomial answers:
//!
//! * [`DagAutomaton::count_accepted_greater`] — how many accepted words lie
//!   lexicographically above a threshold word (big-integer exact);
//! * [`DagAutomaton::lex_greatest_word_to`] — the lexicographically greatest
//!   word reaching a given sink.

use crate::automaton::{Condensation, Dfa, Word};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::{BTreeSet, HashMap, VecDeque};

/// The acyclic counting view of an ordinal automaton.
///
/// States are renumbered: the interior states (states of trivial, non-final
/// components) come first, in the order of their original ids, followed by
/// one sink per counted component, in the order of the component indices of
/// the underlying [`Condensation`]. Interior states keep both transitions
/// (the underlying automaton is a complete prefix automaton); sinks have
/// none.
#[derive(Debug, Clone)]
pub struct DagAutomaton {
    /// Indexed by view state; sinks have `[None, None]`.
    transitions: Vec<[Option<usize>; 2]>,
    /// Reverse adjacency: `preds[t]` lists `(source, letter)` pairs.
    preds: Vec<Vec<(usize, u8)>>,
    /// View id of the underlying initial state (always an interior state).
    initial: usize,
    /// Number of interior states; view ids `>= interior_count` are sinks.
    interior_count: usize,
    /// Interior view id -> original state id.
    interior_orig: Vec<usize>,
    /// Original state id -> interior view id (counted-component states map
    /// to `None`).
    interior_id: Vec<Option<usize>>,
    /// Component index -> sink view id, for counted components only.
    sink_of: HashMap<usize, usize>,
    /// `sink_component[s - interior_count]` is the component index of sink
    /// `s`.
    sink_component: Vec<usize>,
}

/// Builds the acyclic counting view of an ordinal automaton.
///
/// `cond` must be the condensation of `a` (as returned by [`Dfa::condense`]).
/// The counted components are the nontrivial components and the final
/// singletons; every remaining state is an interior state of the view.
///
/// Fails with [`Error::NotCpa`] / [`Error::NotOrdinal`] when `a` is not an
/// ordinal automaton, and with [`Error::InitialInComponent`] when the
/// initial state itself lies in a counted component (the ordinal is then
/// directly `w^height` or `1` and there is nothing to count).
pub fn build_dag_view(a: &Dfa, cond: &Condensation) -> Result<DagAutomaton> {
    if !a.is_ordinal_automaton()? {
        return Err(Error::NotOrdinal);
    }
    let counted =
        |c: usize| cond.component(c).nontrivial || cond.component(c).final_singleton;
    if counted(cond.component_of(a.initial())) {
        return Err(Error::InitialInComponent);
    }

    let mut interior_orig = Vec::new();
    let mut interior_id = vec![None; a.state_count()];
    for q in 0..a.state_count() {
        if !counted(cond.component_of(q)) {
            interior_id[q] = Some(interior_orig.len());
            interior_orig.push(q);
        }
    }
    let interior_count = interior_orig.len();

    let mut sink_of = HashMap::new();
    let mut sink_component = Vec::new();
    for c in 0..cond.components().len() {
        if counted(c) {
            sink_of.insert(c, interior_count + sink_component.len());
            sink_component.push(c);
        }
    }

    let state_count = interior_count + sink_component.len();
    let mut transitions = vec![[None, None]; state_count];
    for (view, &orig) in interior_orig.iter().enumerate() {
        for letter in 0..2u8 {
            // Interior states of a complete prefix automaton are non-final,
            // so both transitions are defined.
            let target = a.step(orig, letter).expect("interior state of a CPA is complete");
            let view_target = match interior_id[target] {
                Some(t) => t,
                None => sink_of[&cond.component_of(target)],
            };
            transitions[view][letter as usize] = Some(view_target);
        }
    }
    let mut preds = vec![Vec::new(); state_count];
    for (q, row) in transitions.iter().enumerate() {
        for (letter, target) in row.iter().enumerate() {
            if let Some(t) = target {
                preds[*t].push((q, letter as u8));
            }
        }
    }

    let initial = interior_id[a.initial()].expect("initial state is interior");
    Ok(DagAutomaton {
        transitions,
        preds,
        initial,
        interior_count,
        interior_orig,
        interior_id,
        sink_of,
        sink_component,
    })
}

impl DagAutomaton {
    /// Total number of view states (interior states plus sinks).
    pub fn state_count(&self) -> usize {
        self.transitions.len()
    }

    /// Number of interior states.
    pub fn interior_count(&self) -> usize {
        self.interior_count
    }

    /// View id of the initial state.
    pub fn initial(&self) -> usize {
        self.initial
    }

    /// Whether a view state is a sink.
    pub fn is_sink(&self, state: usize) -> bool {
        state >= self.interior_count && state < self.state_count()
    }

    /// All sink view ids, ascending.
    pub fn sinks(&self) -> impl Iterator<Item = usize> + '_ {
        self.interior_count..self.state_count()
    }

    /// The sink view id of a counted component, if that component is counted.
    pub fn sink_of_component(&self, component: usize) -> Option<usize> {
        self.sink_of.get(&component).copied()
    }

    /// The component index behind a sink view id.
    pub fn component_of_sink(&self, sink: usize) -> Option<usize> {
        sink.checked_sub(self.interior_count)
            .and_then(|i| self.sink_component.get(i).copied())
    }

    /// The original state id behind an interior view id.
    pub fn original_state(&self, interior: usize) -> Option<usize> {
        self.interior_orig.get(interior).copied()
    }

    /// The interior view id of an original state, when that state lies in a
    /// trivial, non-final component.
    pub fn interior_id_of(&self, original: usize) -> Option<usize> {
        self.interior_id.get(original).copied().flatten()
    }

    /// The transition function of the view.
    pub fn step(&self, state: usize, letter: u8) -> Option<usize> {
        self.transitions[state][letter as usize]
    }

    /// Counts the accepted words of the view that land in `targets` and lie
    /// strictly above `threshold` in the lexicographic order (all of them
    /// when no threshold is given). Exact, with big-integer counts.
    ///
    /// Every target must be a sink ([`Error::StateNotCounted`] otherwise).
    /// The threshold must itself lead from the initial state to a sink
    /// ([`Error::BadThreshold`] otherwise).
    ///
    /// A word `v` above the threshold `u` cannot extend `u` (words stop at
    /// sinks), so `v` branches off at some position `l` with `u[l] = 0` and
    /// `v[l] = 1`. The count is the sum, over those positions, of the number
    /// of words from the `1`-successor to a target; the branch word itself
    /// (empty continuation) is included via the length-zero path.
    pub fn count_accepted_greater(
        &self,
        targets: &BTreeSet<usize>,
        threshold: Option<&Word>,
    ) -> Result<BigUint> {
        for &t in targets {
            if !self.is_sink(t) {
                return Err(Error::StateNotCounted(t));
            }
        }
        let mut memo: HashMap<usize, BigUint> = HashMap::new();
        let Some(threshold) = threshold else {
            return Ok(self.words_to_targets(self.initial, targets, &mut memo));
        };
        let mut count = BigUint::zero();
        let mut state = self.initial;
        for &letter in threshold.letters() {
            if self.is_sink(state) {
                // The threshold ran past a sink.
                return Err(Error::BadThreshold);
            }
            if letter == 0 {
                let one_succ = self.transitions[state][1].expect("interior states are complete");
                count += self.words_to_targets(one_succ, targets, &mut memo);
            }
            state = self.transitions[state][letter as usize]
                .expect("interior states are complete");
        }
        if !self.is_sink(state) {
            return Err(Error::BadThreshold);
        }
        Ok(count)
    }

    /// Number of words leading from `state` to a sink in `targets`, memoized
    /// over the states actually visited (the view is acyclic, so the
    /// recursion is well-founded).
    fn words_to_targets(
        &self,
        state: usize,
        targets: &BTreeSet<usize>,
        memo: &mut HashMap<usize, BigUint>,
    ) -> BigUint {
        let mut stack: Vec<(usize, u8)> = vec![(state, 0)];
        while let Some(&mut (q, ref mut phase)) = stack.last_mut() {
            if memo.contains_key(&q) {
                stack.pop();
                continue;
            }
            if self.is_sink(q) {
                let value = if targets.contains(&q) { BigUint::one() } else { BigUint::zero() };
                memo.insert(q, value);
                stack.pop();
                continue;
            }
            let next = *phase;
            if next < 2 {
                *phase += 1;
                let child = self.transitions[q][next as usize]
                    .expect("interior states are complete");
                if !memo.contains_key(&child) {
                    stack.push((child, 0));
                }
            } else {
                let left = self.transitions[q][0].expect("interior states are complete");
                let right = self.transitions[q][1].expect("interior states are complete");
                let value = memo[&left].clone() + &memo[&right];
                memo.insert(q, value);
                stack.pop();
            }
        }
        memo[&state].clone()
    }

    /// The lexicographically greatest word leading from the initial state to
    /// the given sink.
    ///
    /// Fails with [`Error::StateNotCounted`] when `sink` is not a sink and
    /// with [`Error::UnreachableSink`] when no word reaches it. The walk is
    /// greedy: at each step prefer letter `1` whenever the `1`-successor can
    /// still reach the sink. Greed is correct because all words end at
    /// sinks, so two distinct words to the same sink diverge at a letter and
    /// the one taking `1` there is greater.
    pub fn lex_greatest_word_to(&self, sink: usize) -> Result<Word> {
        if !self.is_sink(sink) {
            return Err(Error::StateNotCounted(sink));
        }
        let mut reaches = vec![false; self.state_count()];
        reaches[sink] = true;
        let mut queue = VecDeque::from([sink]);
        while let Some(q) = queue.pop_front() {
            for &(p, _) in &self.preds[q] {
                if !reaches[p] {
                    reaches[p] = true;
                    queue.push_back(p);
                }
            }
        }
        if !reaches[self.initial] {
            return Err(Error::UnreachableSink);
        }
        let mut word = Word::empty();
        let mut state = self.initial;
        while state != sink {
            // An interior state that reaches the sink has a successor that
            // does; the view is acyclic, so the walk strictly descends.
            let one_succ = self.transitions[state][1].expect("interior states are complete");
            let letter = if reaches[one_succ] { 1 } else { 0 };
            word.push(letter);
            state = self.transitions[state][letter as usize]
                .expect("interior states are complete");
            debug_assert!(reaches[state], "greedy walk left the co-reachable set");
        }
        Ok(word)
    }

    /// Rebuilds the view as a plain automaton whose final states are the
    /// given sinks — the language is then exactly the counted word set,
    /// which makes small views checkable by direct enumeration.
    pub fn to_dfa(&self, finals: &BTreeSet<usize>) -> Result<Dfa> {
        for &t in finals {
            if !self.is_sink(t) {
                return Err(Error::StateNotCounted(t));
            }
        }
        let transitions = self.transitions.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .enumerate()
                .filter_map(move |(l, t)| t.map(|t| (q, l as u8, t)))
        });
        Dfa::new(
            self.state_count(),
            self.initial,
            finals.iter().copied(),
            transitions.collect::<Vec<_>>(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::tests::{running_example, tower};
    use std::str::FromStr;

    fn example_view() -> (Dfa, Condensation, DagAutomaton) {
        let dfa = running_example();
        let cond = dfa.condense();
        let dag = build_dag_view(&dfa, &cond).unwrap();
        (dfa, cond, dag)
    }

    fn word(s: &str) -> Word {
        Word::from_str(s).unwrap()
    }

    fn count(dag: &DagAutomaton, targets: &[usize], threshold: Option<&str>) -> BigUint {
        let targets: BTreeSet<usize> = targets.iter().copied().collect();
        let threshold = threshold.map(word);
        dag.count_accepted_greater(&targets, threshold.as_ref()).unwrap()
    }

    #[test]
    fn example_view_structure() {
        let (dfa, cond, dag) = example_view();
        // Interior states: q0 = 0 and q1 = 1. Sinks: one per counted
        // component (the final singleton s0 and the three loop states).
        assert_eq!(dag.interior_count(), 2);
        assert_eq!(dag.state_count(), 6);
        assert_eq!(dag.initial(), dag.interior_id_of(0).unwrap());
        assert_eq!(dag.original_state(dag.interior_id_of(1).unwrap()), Some(1));

        let sink = |state: usize| dag.sink_of_component(cond.component_of(state)).unwrap();
        let q0 = dag.interior_id_of(0).unwrap();
        let q1 = dag.interior_id_of(1).unwrap();
        assert_eq!(dag.step(q0, 0), Some(q1));
        assert_eq!(dag.step(q0, 1), Some(sink(3)));
        assert_eq!(dag.step(q1, 0), Some(sink(5)));
        assert_eq!(dag.step(q1, 1), Some(sink(5)));
        for s in dag.sinks() {
            assert_eq!(dag.step(s, 0), None);
            assert_eq!(dag.step(s, 1), None);
            assert!(dag.is_sink(s));
        }
        // Every counted component has a sink, even unreachable ones.
        for (c, comp) in cond.components().iter().enumerate() {
            assert_eq!(
                dag.sink_of_component(c).is_some(),
                comp.nontrivial || comp.final_singleton,
            );
            if let Some(s) = dag.sink_of_component(c) {
                assert_eq!(dag.component_of_sink(s), Some(c));
            }
        }
        assert!(dfa.is_ordinal_automaton().unwrap());
    }

    #[test]
    fn example_counts() {
        let (_, cond, dag) = example_view();
        let sink = |state: usize| dag.sink_of_component(cond.component_of(state)).unwrap();
        // Words of the view: 00 and 01 (to the sink of s3) and 1 (to the
        // sink of s1).
        assert_eq!(count(&dag, &[sink(5)], None), BigUint::from(2u32));
        assert_eq!(count(&dag, &[sink(3)], None), BigUint::from(1u32));
        assert_eq!(count(&dag, &[sink(2)], None), BigUint::from(0u32));
        let all: Vec<usize> = dag.sinks().collect();
        assert_eq!(count(&dag, &all, None), BigUint::from(3u32));

        assert_eq!(count(&dag, &[sink(3)], Some("01")), BigUint::from(1u32));
        assert_eq!(count(&dag, &[sink(5)], Some("01")), BigUint::from(0u32));
        assert_eq!(count(&dag, &[sink(5)], Some("00")), BigUint::from(1u32));
        // Nothing lies above the lexicographically greatest word.
        assert_eq!(count(&dag, &all, Some("1")), BigUint::from(0u32));
        // Everything lies above the least word.
        assert_eq!(count(&dag, &all, Some("00")), BigUint::from(2u32));
    }

    #[test]
    fn threshold_must_reach_a_sink() {
        let (_, _, dag) = example_view();
        let all: BTreeSet<usize> = dag.sinks().collect();
        // "0" stops at the interior state q1.
        let err = dag.count_accepted_greater(&all, Some(&word("0"))).unwrap_err();
        assert!(matches!(err, Error::BadThreshold));
        // "11" walks a letter beyond a sink.
        let err = dag.count_accepted_greater(&all, Some(&word("11"))).unwrap_err();
        assert!(matches!(err, Error::BadThreshold));
        // The empty word stops at the initial state.
        let err = dag.count_accepted_greater(&all, Some(&Word::empty())).unwrap_err();
        assert!(matches!(err, Error::BadThreshold));
    }

    #[test]
    fn targets_must_be_sinks() {
        let (_, _, dag) = example_view();
        let targets: BTreeSet<usize> = [dag.initial()].into_iter().collect();
        let err = dag.count_accepted_greater(&targets, None).unwrap_err();
        assert!(matches!(err, Error::StateNotCounted(_)));
        let err = dag.lex_greatest_word_to(dag.initial()).unwrap_err();
        assert!(matches!(err, Error::StateNotCounted(_)));
    }

    #[test]
    fn example_greatest_words() {
        let (_, cond, dag) = example_view();
        let sink = |state: usize| dag.sink_of_component(cond.component_of(state)).unwrap();
        assert_eq!(dag.lex_greatest_word_to(sink(5)).unwrap(), word("01"));
        assert_eq!(dag.lex_greatest_word_to(sink(3)).unwrap(), word("1"));
        // No interior transition enters the final singleton s0.
        let err = dag.lex_greatest_word_to(sink(2)).unwrap_err();
        assert!(matches!(err, Error::UnreachableSink));
    }

    #[test]
    fn initial_inside_a_counted_component_is_rejected() {
        let dfa = tower(2);
        let cond = dfa.condense();
        let err = build_dag_view(&dfa, &cond).unwrap_err();
        assert!(matches!(err, Error::InitialInComponent));
        // A single final state (the one-state automaton) is its own counted
        // component as well.
        let dfa = tower(0);
        let cond = dfa.condense();
        let err = build_dag_view(&dfa, &cond).unwrap_err();
        assert!(matches!(err, Error::InitialInComponent));
    }

    #[test]
    fn non_ordinal_inputs_are_rejected() {
        // 0-self-loop: scattered but not well-ordered.
        let dfa = Dfa::new(2, 0, [1], [(0, 0, 0), (0, 1, 1)]).unwrap();
        let cond = dfa.condense();
        assert!(matches!(build_dag_view(&dfa, &cond), Err(Error::NotOrdinal)));
        // Not even a complete prefix automaton.
        let dfa = Dfa::new(2, 0, [1], [(0, 0, 1)]).unwrap();
        let cond = dfa.condense();
        assert!(matches!(build_dag_view(&dfa, &cond), Err(Error::NotCpa)));
    }

    /// A fully acyclic complete prefix automaton is its own view: the
    /// interior states are the branching states and each final becomes a
    /// sink.
    #[test]
    fn acyclic_cpa_view_matches_enumeration() {
        // Language {00, 01, 1}: 0 -> branching, 1 -> final.
        let dfa = Dfa::new(
            4,
            0,
            [2, 3],
            [(0, 0, 1), (0, 1, 3), (1, 0, 2), (1, 1, 2)],
        )
        .unwrap();
        let cond = dfa.condense();
        let dag = build_dag_view(&dfa, &cond).unwrap();
        assert_eq!(dag.interior_count(), 2);
        assert_eq!(dag.state_count(), 4);

        let all: BTreeSet<usize> = dag.sinks().collect();
        let as_dfa = dag.to_dfa(&all).unwrap();
        let words = as_dfa.enumerate_language(dag.state_count());
        assert_eq!(
            words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            ["00", "01", "1"],
        );
        // Counting agrees with enumeration for every accepted threshold.
        for (i, u) in words.iter().enumerate() {
            let above = dag.count_accepted_greater(&all, Some(u)).unwrap();
            assert_eq!(above, BigUint::from(words.len() - i - 1));
        }
        assert_eq!(
            dag.count_accepted_greater(&all, None).unwrap(),
            BigUint::from(words.len()),
        );
        // The lex-greatest word to the shared sink of {00, 01} (the final
        // state 2 of the source automaton), and to the sink of {1}.
        let sink2 = dag.sink_of_component(cond.component_of(2)).unwrap();
        let sink3 = dag.sink_of_component(cond.component_of(3)).unwrap();
        assert_eq!(dag.lex_greatest_word_to(sink2).unwrap(), word("01"));
        assert_eq!(dag.lex_greatest_word_to(sink3).unwrap(), word("1"));
    }

    #[test]
    fn counts_fit_the_word_length_and_size_bounds() {
        let (_, _, dag) = example_view();
        let all: BTreeSet<usize> = dag.sinks().collect();
        let total = dag.count_accepted_greater(&all, None).unwrap();
        assert!(total <= BigUint::from(1u32) << dag.state_count());
        for s in dag.sinks() {
            if let Ok(w) = dag.lex_greatest_word_to(s) {
                assert!(w.len() < dag.state_count());
            }
        }
    }
}

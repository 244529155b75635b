//! Cantor-normal-form extraction from an ordinal automaton.
//!
//! [`ordinal_of`] is the polynomial-time evaluator: it buckets the counted
//! components of the automaton by height and, walking the degrees from the
//! highest down to `0`, counts the words that enter each component above a
//! moving lexicographic threshold. The per-degree totals are exactly the
//! coefficients of the Cantor normal form, and every intermediate value is
//! reported in an [`ExtractionTrace`].
//!
//! Two independent evaluators back it up: [`ordinal_of_recursive`] computes
//! the order type bottom-up over the component order (sum at branching
//! states, multiply by `w` around cycles), and [`ordinal_of_enumerative`]
//! literally counts the words of an acyclic automaton. [`isomorphic`]
//! decides order-isomorphism of two automata by comparing normal forms.

use crate::automaton::{Dfa, Word};
use crate::cnf::Cnf;
use crate::counting::{build_dag_view, DagAutomaton};
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::Zero;
use std::collections::BTreeSet;

/// The per-component outcome of one degree of the extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCount {
    /// Component index in the automaton's condensation.
    pub component: usize,
    /// Number of words entering the component above the previous threshold.
    pub count: BigUint,
    /// The lexicographically greatest word entering the component; present
    /// exactly when `count > 0`.
    pub witness: Option<Word>,
}

/// One degree of the extraction, from the highest height down to `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTrace {
    /// The degree `d` (component height; `0` holds the final singletons).
    pub degree: usize,
    /// Per-component counts and witnesses for this degree's bucket.
    pub components: Vec<ComponentCount>,
    /// The coefficient of `w^d`: the sum of the component counts.
    pub total: BigUint,
    /// The threshold after this degree: the lexicographic maximum of the
    /// previous threshold and all witnesses of this bucket.
    pub threshold: Option<Word>,
}

/// Every intermediate value of a normal-form extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionTrace {
    /// True when the initial state itself lies in a counted component, so
    /// the ordinal was read off directly (`w^height`, or `1` for a final
    /// initial state) without building the counting view. The single trace
    /// row then records that component with count `1` and the empty word as
    /// witness.
    pub short_circuit: bool,
    /// Rows from the highest degree down to degree `0`.
    pub degrees: Vec<DegreeTrace>,
}

/// Computes the Cantor normal form of the order type of the automaton's
/// language, together with the full extraction trace.
///
/// The automaton must be an ordinal automaton (a complete prefix automaton
/// whose language is well-ordered); fails with [`Error::NotCpa`] or
/// [`Error::NotOrdinal`] otherwise. Runs in time polynomial in the state
/// count; all counts are arbitrary-precision.
pub fn ordinal_of(a: &Dfa) -> Result<(Cnf, ExtractionTrace)> {
    if !a.is_ordinal_automaton()? {
        return Err(Error::NotOrdinal);
    }
    let cond = a.condense();
    let initial_component = cond.component_of(a.initial());
    let comp = cond.component(initial_component);
    if comp.nontrivial || comp.final_singleton {
        // Every accepted word stays inside the initial component's cone, so
        // the order type is the component's own: w^height for a cycle, 1
        // for a lone final state.
        let (cnf, degree) = if comp.nontrivial {
            (Cnf::omega_power(comp.height), comp.height)
        } else {
            (Cnf::from_nat(1u32), 0)
        };
        let trace = ExtractionTrace {
            short_circuit: true,
            degrees: vec![DegreeTrace {
                degree,
                components: vec![ComponentCount {
                    component: initial_component,
                    count: BigUint::from(1u32),
                    witness: Some(Word::empty()),
                }],
                total: BigUint::from(1u32),
                threshold: None,
            }],
        };
        return Ok((cnf, trace));
    }

    let dag = build_dag_view(a, &cond)?;
    // Bucket the counted components by height; final singletons are the
    // degree-0 bucket.
    let max_height = cond.max_height();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); max_height + 1];
    for (c, comp) in cond.components().iter().enumerate() {
        if comp.nontrivial {
            buckets[comp.height].push(c);
        } else if comp.final_singleton {
            buckets[0].push(c);
        }
    }

    let mut threshold: Option<Word> = None;
    let mut degrees = Vec::with_capacity(max_height + 1);
    let mut terms: Vec<(usize, BigUint)> = Vec::new();
    for d in (0..=max_height).rev() {
        let mut components = Vec::with_capacity(buckets[d].len());
        let mut total = BigUint::zero();
        let mut next_threshold = threshold.clone();
        for &c in &buckets[d] {
            let sink = dag.sink_of_component(c).expect("counted component has a sink");
            let targets: BTreeSet<usize> = [sink].into_iter().collect();
            let count = dag.count_accepted_greater(&targets, threshold.as_ref())?;
            let witness = if count.is_zero() {
                None
            } else {
                // Some word to this sink beats the threshold, so the
                // greatest word to it does too.
                let u = dag.lex_greatest_word_to(sink)?;
                if Some(&u) > next_threshold.as_ref() {
                    next_threshold = Some(u.clone());
                }
                Some(u)
            };
            total += &count;
            components.push(ComponentCount { component: c, count, witness });
        }
        if !total.is_zero() {
            terms.push((d, total.clone()));
        }
        threshold = next_threshold;
        degrees.push(DegreeTrace { degree: d, components, total, threshold: threshold.clone() });
    }

    let cnf = Cnf::from_terms(terms);
    debug_assert!(!cnf.is_zero(), "a trim automaton accepts at least one word");
    Ok((cnf, ExtractionTrace { short_circuit: false, degrees }))
}

/// The counting view used by [`ordinal_of`], exposed for callers that want
/// to run the counting operations on the same structure.
pub fn dag_view(a: &Dfa) -> Result<DagAutomaton> {
    let cond = a.condense();
    build_dag_view(a, &cond)
}

/// Independent bottom-up evaluator: the order type of the language accepted
/// from each state, indexed by state.
///
/// Over the components in reverse topological order: a final state has order
/// type `1`; a branching state `q` has `o(q0) + o(q1)` (all `0`-words
/// precede all `1`-words); the states of a cycle `s_0 -1-> s_1 -1-> ... -1->
/// s_0` with exits `s_i -0-> t_i` all have `(o(t_0) + ... + o(t_{k-1})) * w`.
/// The automaton must be an ordinal automaton.
pub fn recursive_state_ordinals(a: &Dfa) -> Result<Vec<Cnf>> {
    if !a.is_ordinal_automaton()? {
        return Err(Error::NotOrdinal);
    }
    let cond = a.condense();
    let mut ordinals: Vec<Option<Cnf>> = vec![None; a.state_count()];
    // Successor components have strictly larger indices, so walking the
    // indices downward sees every successor before its predecessors.
    for c in (0..cond.components().len()).rev() {
        let comp = cond.component(c);
        if !comp.nontrivial {
            let q = comp.states[0];
            let value = if a.is_final(q) {
                Cnf::from_nat(1u32)
            } else {
                let left = a.step(q, 0).expect("non-final CPA state is complete");
                let right = a.step(q, 1).expect("non-final CPA state is complete");
                let o = |t: usize| ordinals[t].as_ref().expect("successors already evaluated");
                o(left).add(o(right))
            };
            ordinals[q] = Some(value);
            continue;
        }
        // A nontrivial component of an ordinal automaton is a single
        // 1-cycle through all its states, every 0-edge leaving. Verify the
        // shape rather than assume it.
        let start = comp.states[0];
        let mut cycle = vec![start];
        let mut cur = a.step(start, 1).ok_or(Error::NotOrdinal)?;
        while cur != start {
            if cond.component_of(cur) != c || cycle.len() > comp.states.len() {
                return Err(Error::NotOrdinal);
            }
            cycle.push(cur);
            cur = a.step(cur, 1).ok_or(Error::NotOrdinal)?;
        }
        if cycle.len() != comp.states.len() {
            return Err(Error::NotOrdinal);
        }
        let mut sum = Cnf::ZERO;
        for &q in &cycle {
            let exit = a.step(q, 0).ok_or(Error::NotOrdinal)?;
            if cond.component_of(exit) == c {
                return Err(Error::NotOrdinal);
            }
            sum = sum.add(ordinals[exit].as_ref().expect("successors already evaluated"));
        }
        let value = sum.mul_omega();
        // Rotating the cycle changes the sum but never its degree, so every
        // state of the component gets the same pure power — whose exponent
        // is exactly the component's height.
        debug_assert_eq!(value, Cnf::omega_power(comp.height), "cycle value must be w^height");
        for &q in &comp.states {
            ordinals[q] = Some(value.clone());
        }
    }
    Ok(ordinals.into_iter().map(|o| o.expect("every state evaluated")).collect())
}

/// Independent bottom-up evaluator for the whole automaton: the order type
/// of the language accepted from the initial state. See
/// [`recursive_state_ordinals`].
pub fn ordinal_of_recursive(a: &Dfa) -> Result<Cnf> {
    Ok(recursive_state_ordinals(a)?.swap_remove(a.initial()))
}

/// Finite-case evaluator: literally enumerates the words of an acyclic
/// complete prefix automaton and returns their number as a finite ordinal.
///
/// Fails with [`Error::NotCpa`] on non-CPAs and [`Error::NotAcyclic`] when
/// the automaton has a cycle. Exponential in the worst case — this is a test
/// oracle for small automata, not an algorithm.
pub fn ordinal_of_enumerative(a: &Dfa) -> Result<Cnf> {
    if !a.is_cpa() {
        return Err(Error::NotCpa);
    }
    if a.condense().components().iter().any(|c| c.nontrivial) {
        return Err(Error::NotAcyclic);
    }
    // Acyclic: every accepted word visits pairwise distinct states.
    let words = a.enumerate_language(a.state_count());
    Ok(Cnf::from_nat(words.len()))
}

/// Whether two ordinal automata accept order-isomorphic languages, i.e.
/// whether their Cantor normal forms coincide.
pub fn isomorphic(a: &Dfa, b: &Dfa) -> Result<bool> {
    Ok(ordinal_of(a)?.0 == ordinal_of(b)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::tests::{running_example, tower};
    use std::str::FromStr;

    fn cnf(s: &str) -> Cnf {
        Cnf::parse(s).unwrap()
    }

    fn word(s: &str) -> Word {
        Word::from_str(s).unwrap()
    }

    #[test]
    fn running_example_has_the_expected_normal_form() {
        let dfa = running_example();
        let (value, trace) = ordinal_of(&dfa).unwrap();
        assert_eq!(value, cnf("w^3*2 + w"));
        assert_eq!(value.to_string(), "w^3*2 + w");
        assert!(!trace.short_circuit);
        assert_eq!(ordinal_of_recursive(&dfa).unwrap(), value);
    }

    #[test]
    fn running_example_trace_rows() {
        let dfa = running_example();
        let cond = dfa.condense();
        let comp_of = |q: usize| cond.component_of(q);
        let (_, trace) = ordinal_of(&dfa).unwrap();
        assert_eq!(trace.degrees.len(), 4);

        let d3 = &trace.degrees[0];
        assert_eq!((d3.degree, &d3.total), (3, &BigUint::from(2u32)));
        assert_eq!(d3.threshold, Some(word("01")));
        assert_eq!(
            d3.components,
            vec![ComponentCount {
                component: comp_of(5),
                count: BigUint::from(2u32),
                witness: Some(word("01")),
            }],
        );

        let d2 = &trace.degrees[1];
        assert_eq!((d2.degree, &d2.total), (2, &BigUint::from(0u32)));
        assert_eq!(d2.threshold, Some(word("01")));
        assert_eq!(
            d2.components,
            vec![ComponentCount { component: comp_of(4), count: BigUint::from(0u32), witness: None }],
        );

        let d1 = &trace.degrees[2];
        assert_eq!((d1.degree, &d1.total), (1, &BigUint::from(1u32)));
        assert_eq!(d1.threshold, Some(word("1")));
        assert_eq!(
            d1.components,
            vec![ComponentCount {
                component: comp_of(3),
                count: BigUint::from(1u32),
                witness: Some(word("1")),
            }],
        );

        let d0 = &trace.degrees[3];
        assert_eq!((d0.degree, &d0.total), (0, &BigUint::from(0u32)));
        assert_eq!(d0.threshold, Some(word("1")));
        assert_eq!(
            d0.components,
            vec![ComponentCount { component: comp_of(2), count: BigUint::from(0u32), witness: None }],
        );

        // Thresholds never decrease as the degree goes down.
        for pair in trace.degrees.windows(2) {
            assert!(pair[0].threshold <= pair[1].threshold);
        }
    }

    #[test]
    fn towers_evaluate_to_prime_powers() {
        for n in 0..7 {
            let dfa = tower(n);
            let (value, trace) = ordinal_of(&dfa).unwrap();
            assert_eq!(value, Cnf::omega_power(n));
            // The initial state sits in the top component (or is the final
            // state when n = 0), so the evaluator short-circuits.
            assert!(trace.short_circuit);
            assert_eq!(trace.degrees.len(), 1);
            assert_eq!(trace.degrees[0].degree, n);
            assert_eq!(trace.degrees[0].total, BigUint::from(1u32));
            assert_eq!(trace.degrees[0].components[0].witness, Some(Word::empty()));
            assert_eq!(ordinal_of_recursive(&dfa).unwrap(), value);
        }
    }

    #[test]
    fn single_final_state_is_one() {
        let dfa = tower(0);
        assert_eq!(ordinal_of(&dfa).unwrap().0, cnf("1"));
        assert_eq!(ordinal_of_recursive(&dfa).unwrap(), cnf("1"));
        assert_eq!(ordinal_of_enumerative(&dfa).unwrap(), cnf("1"));
    }

    /// Language {00, 01, 1}: three words, order type 3, all three evaluators.
    #[test]
    fn small_acyclic_language_counts_words() {
        let dfa = Dfa::new(4, 0, [2, 3], [(0, 0, 1), (0, 1, 3), (1, 0, 2), (1, 1, 2)]).unwrap();
        let (value, trace) = ordinal_of(&dfa).unwrap();
        assert_eq!(value, cnf("3"));
        assert_eq!(ordinal_of_recursive(&dfa).unwrap(), cnf("3"));
        assert_eq!(ordinal_of_enumerative(&dfa).unwrap(), cnf("3"));
        assert!(!trace.short_circuit);
        assert_eq!(trace.degrees.len(), 1);
        assert_eq!(trace.degrees[0].degree, 0);
        assert_eq!(trace.degrees[0].total, BigUint::from(3u32));
        // Two final singletons, counted in component order.
        assert_eq!(trace.degrees[0].components.len(), 2);
    }

    /// A complete depth-2 tree accepts {00, 01, 10, 11}.
    #[test]
    fn depth_two_tree_counts_four_words() {
        let dfa = Dfa::new(
            4,
            0,
            [3],
            [(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, 3), (2, 0, 3), (2, 1, 3)],
        )
        .unwrap();
        assert_eq!(ordinal_of_enumerative(&dfa).unwrap(), cnf("4"));
        assert_eq!(ordinal_of(&dfa).unwrap().0, cnf("4"));
        assert_eq!(ordinal_of_recursive(&dfa).unwrap(), cnf("4"));
    }

    #[test]
    fn degree_needs_at_least_degree_plus_one_states() {
        for dfa in [running_example(), tower(4), tower(1)] {
            let (value, _) = ordinal_of(&dfa).unwrap();
            assert!(value.degree().unwrap() + 1 <= dfa.state_count());
        }
    }

    #[test]
    fn state_ordinals_never_grow_along_transitions() {
        let dfa = running_example();
        let ordinals = recursive_state_ordinals(&dfa).unwrap();
        for q in 0..dfa.state_count() {
            for letter in 0..2u8 {
                if let Some(t) = dfa.step(q, letter) {
                    assert!(
                        ordinals[t] <= ordinals[q],
                        "o(state {t}) > o(state {q}) along letter {letter}",
                    );
                }
            }
        }
        // Expected per-state values for the running example.
        assert_eq!(ordinals[2], cnf("1"));
        assert_eq!(ordinals[3], cnf("w"));
        assert_eq!(ordinals[4], cnf("w^2"));
        assert_eq!(ordinals[5], cnf("w^3"));
        assert_eq!(ordinals[1], cnf("w^3*2"));
        assert_eq!(ordinals[0], cnf("w^3*2 + w"));
    }

    #[test]
    fn rejects_unsuitable_inputs() {
        // Scattered but not well-ordered: 0-self-loop.
        let scattered = Dfa::new(2, 0, [1], [(0, 0, 0), (0, 1, 1)]).unwrap();
        assert!(matches!(ordinal_of(&scattered), Err(Error::NotOrdinal)));
        assert!(matches!(ordinal_of_recursive(&scattered), Err(Error::NotOrdinal)));
        assert!(matches!(isomorphic(&scattered, &scattered), Err(Error::NotOrdinal)));

        // Not a complete prefix automaton.
        let partial = Dfa::new(2, 0, [1], [(0, 0, 1)]).unwrap();
        assert!(matches!(ordinal_of(&partial), Err(Error::NotCpa)));
        assert!(matches!(ordinal_of_enumerative(&partial), Err(Error::NotCpa)));

        // Enumeration refuses cycles.
        assert!(matches!(ordinal_of_enumerative(&tower(2)), Err(Error::NotAcyclic)));
    }

    #[test]
    fn isomorphism_is_normal_form_equality() {
        assert!(isomorphic(&tower(2), &tower(2)).unwrap());
        assert!(!isomorphic(&tower(2), &tower(3)).unwrap());
        assert!(isomorphic(&running_example(), &running_example()).unwrap());
        assert!(!isomorphic(&running_example(), &tower(3)).unwrap());
    }
}

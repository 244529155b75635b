//! Shared helpers for the integration suites: seeded random generators for
//! normal forms and automata.
//!
//! Each integration test crate compiles this module separately and uses a
//! different subset of it.
#![allow(dead_code)]

use num_bigint::BigUint;
use ordlex::{Cnf, Dfa};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A pseudo-random nonzero normal form with degree at most `max_degree` and
/// coefficients in `1..=max_coeff`.
pub fn random_cnf(rng: &mut ChaCha8Rng, max_degree: usize, max_coeff: u64) -> Cnf {
    let degree = rng.random_range(0..=max_degree);
    let mut terms: Vec<(usize, BigUint)> = Vec::new();
    for d in (0..=degree).rev() {
        if d == degree || rng.random_bool(0.6) {
            terms.push((d, BigUint::from(rng.random_range(1..=max_coeff))));
        }
    }
    Cnf::from_terms(terms)
}

/// A pseudo-random nonzero normal form whose coefficients sit within
/// `spread` of `2^40`.
pub fn random_cnf_near_2_pow_40(rng: &mut ChaCha8Rng, max_degree: usize, spread: u64) -> Cnf {
    let degree = rng.random_range(0..=max_degree);
    let base = 1u64 << 40;
    let mut terms: Vec<(usize, BigUint)> = Vec::new();
    for d in (0..=degree).rev() {
        if d == degree || rng.random_bool(0.6) {
            let c = base + rng.random_range(0..=2 * spread) - spread;
            terms.push((d, BigUint::from(c)));
        }
    }
    Cnf::from_terms(terms)
}

/// Configuration for [`random_oa`].
pub struct OaConfig {
    /// Upper bound on the state count before trimming.
    pub max_states: usize,
    /// Forbid cycles, so the language is finite and the automaton can be
    /// checked against full enumeration.
    pub acyclic_only: bool,
}

/// A pseudo-random ordinal automaton, built bottom-up so the defining
/// property holds by construction:
///
/// * start with one to three final sinks;
/// * repeatedly add either a branching state with both letters into the
///   existing pool, or (unless `acyclic_only`) a cycle of one to four fresh
///   states whose `1`-letters form the cycle and whose `0`-letters all exit
///   into the existing pool;
/// * the last state added becomes the initial state, and the result is
///   trimmed (which renumbers canonically and keeps it a complete prefix
///   automaton, since every pool state reaches a final sink).
///
/// Every strongly connected component is one of the added cycles, and every
/// cycle state's `0`-successor leaves its component, so the language is
/// always well-ordered.
pub fn random_oa(rng: &mut ChaCha8Rng, cfg: &OaConfig) -> Dfa {
    let target = rng.random_range(2..=cfg.max_states.max(2));
    // In acyclic mode keep at least one non-final state, so the initial
    // state is a branching state and the finite counting view exists.
    let final_cap = if cfg.acyclic_only { 3usize.min(target - 1) } else { 3usize.min(target) };
    let final_count = rng.random_range(1..=final_cap);
    let mut table: Vec<[usize; 2]> = Vec::with_capacity(target);
    let finals: Vec<usize> = (0..final_count).collect();
    for _ in 0..final_count {
        table.push([usize::MAX, usize::MAX]);
    }
    while table.len() < target {
        let pool = table.len();
        let remaining = target - pool;
        let cycle_len = remaining.min(4);
        if !cfg.acyclic_only && cycle_len >= 1 && rng.random_bool(0.4) {
            let len = rng.random_range(1..=cycle_len);
            for i in 0..len {
                let next_in_cycle = pool + (i + 1) % len;
                let exit = rng.random_range(0..pool);
                table.push([exit, next_in_cycle]);
            }
        } else {
            let a = rng.random_range(0..pool);
            let b = rng.random_range(0..pool);
            table.push([a, b]);
        }
    }
    let initial = table.len() - 1;
    let transitions: Vec<(usize, u8, usize)> = table
        .iter()
        .enumerate()
        .flat_map(|(q, targets)| {
            targets
                .iter()
                .enumerate()
                .filter(|(_, &t)| t != usize::MAX)
                .map(move |(l, &t)| (q, l as u8, t))
                .collect::<Vec<_>>()
        })
        .collect();
    let dfa = Dfa::new(table.len(), initial, finals, transitions)
        .expect("the generator builds well-formed automata");
    dfa.trim().expect("every generated state reaches a final sink")
}

//! Constructions from ordinals to automata, and minimal-size computations.
//!
//! * [`build_power_automaton`] — the `(n+1)`-state automaton for `w^n`.
//! * [`build_finite_block`] — the `g(m)`-state single-final automaton for a
//!   finite block of `m` words.
//! * [`ordered_sum`] — glues automata so their languages become consecutive
//!   lexicographic blocks.
//! * [`synthesize`] — the full construction: an ordinal automaton with
//!   `n_0 + g(m_0) + ... + g(m_k)` states for any nonzero ordinal below
//!   `w^w`.
//! * [`min_size`] / [`f_bruteforce`] — the exact minimal state count
//!   `n_0 - k + f(m_0, ..., m_k)`, with `f` obtained by exhaustive canonical
//!   search over acyclic complete prefix automata.
//! * [`shortest_addition_chain`] — minimal addition chains, whose element
//!   count coincides with `f(n)` on every value we can search.

use crate::automaton::Dfa;
use crate::cnf::Cnf;
use crate::{Error, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// Default cap on the exhaustive searches behind [`f_bruteforce`] and
/// [`min_size`]: candidate automata with more states than this are not
/// explored.
pub const DEFAULT_SEARCH_BOUND: usize = 9;

/// An addition chain `1 = a_1 < a_2 < ... < a_k = n`: every element after
/// the first is the sum of two (not necessarily distinct) earlier elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditionChain {
    /// The chain elements, strictly increasing, starting at `1`.
    pub elements: Vec<u64>,
}

impl AdditionChain {
    /// Checks the chain invariants: starts at `1`, strictly increasing, and
    /// every later element is a sum of two earlier ones.
    pub fn is_valid(&self) -> bool {
        if self.elements.first() != Some(&1) {
            return false;
        }
        for (i, &a) in self.elements.iter().enumerate().skip(1) {
            if a <= self.elements[i - 1] {
                return false;
            }
            let earlier = &self.elements[..i];
            let decomposes = earlier
                .iter()
                .any(|&x| a >= x && earlier.contains(&(a - x)));
            if !decomposes {
                return false;
            }
        }
        true
    }
}

/// Builds the `(n+1)`-state tower automaton representing `w^n`: states
/// `s_0..s_n` with `s_i -1-> s_i` and `s_i -0-> s_{i-1}` for `i >= 1`;
/// `s_n` is initial and `s_0` is the final sink.
pub fn build_power_automaton(n: usize) -> Dfa {
    let mut transitions = Vec::with_capacity(2 * n);
    for i in 1..=n {
        transitions.push((i, 0, i - 1));
        transitions.push((i, 1, i));
    }
    Dfa::new(n + 1, n, [0], transitions).expect("tower construction is well-formed")
}

/// Builds the finite block `D_m`: a complete prefix automaton with a single
/// final state accepting exactly `m` words, with exactly `g(m)`
/// ([`g_size`]) states.
///
/// The construction follows the binary expansion of `m` from the most
/// significant bit: starting from the one-state `D_1`, a `0` bit prepends a
/// new initial state with both letters into the old initial state
/// (doubling), and a `1` bit prepends two states accepting one extra word
/// above the doubled block.
pub fn build_finite_block(m: &BigUint) -> Result<Dfa> {
    use num_traits::Zero;
    if m.is_zero() {
        return Err(Error::InvalidArgument("a finite block must hold at least one word".into()));
    }
    // States are created with the final sink as state 0; the current
    // initial state changes as bits are consumed.
    let mut transitions: Vec<(usize, u8, usize)> = Vec::new();
    let mut state_count = 1usize;
    let mut initial = 0usize;
    let bits = m.to_radix_be(2);
    for &bit in &bits[1..] {
        if bit == 0 {
            // D_{2m}: fresh initial with both letters into the old block.
            let s = state_count;
            state_count += 1;
            transitions.push((s, 0, initial));
            transitions.push((s, 1, initial));
            initial = s;
        } else {
            // D_{2m+1}: fresh s1 doubling the old block, fresh initial s0
            // with 0 into s1 and 1 straight to the final sink.
            let s1 = state_count;
            let s0 = state_count + 1;
            state_count += 2;
            transitions.push((s1, 0, initial));
            transitions.push((s1, 1, initial));
            transitions.push((s0, 0, s1));
            transitions.push((s0, 1, 0));
            initial = s0;
        }
    }
    let dfa = Dfa::new(state_count, initial, [0], transitions)
        .expect("block construction is well-formed");
    debug_assert!(dfa.is_cpa());
    Ok(dfa)
}

/// Glues complete prefix automata so that their languages become consecutive
/// lexicographic blocks: the first block's words come first, then the
/// second's, and so on.
///
/// For `k + 1` blocks the result adds `k` fresh guide states `r_0..r_{k-1}`
/// (after the renumbered block states): `r_i -0->` block `i`'s initial state
/// and `r_i -1-> r_{i+1}`, except that the last guide state sends `1`
/// straight to the final block's initial state. A single block is returned
/// unchanged.
pub fn ordered_sum(blocks: &[Dfa]) -> Result<Dfa> {
    Ok(ordered_sum_parts(blocks)?.0)
}

/// [`ordered_sum`], also returning each block's state-id offset in the
/// glued automaton.
fn ordered_sum_parts(blocks: &[Dfa]) -> Result<(Dfa, Vec<usize>)> {
    if blocks.is_empty() {
        return Err(Error::InvalidArgument("ordered sum of no blocks".into()));
    }
    if blocks.iter().any(|b| !b.is_cpa()) {
        return Err(Error::NotCpa);
    }
    let mut offsets = Vec::with_capacity(blocks.len());
    let mut total = 0usize;
    for b in blocks {
        offsets.push(total);
        total += b.state_count();
    }
    if blocks.len() == 1 {
        return Ok((blocks[0].clone(), offsets));
    }
    let guide_base = total;
    let guide_count = blocks.len() - 1;
    let mut transitions: Vec<(usize, u8, usize)> = Vec::new();
    let mut finals = Vec::new();
    for (b, &offset) in blocks.iter().zip(&offsets) {
        for (q, l, t) in b.transitions() {
            transitions.push((q + offset, l, t + offset));
        }
        finals.extend(b.finals().map(|f| f + offset));
    }
    for i in 0..guide_count {
        let guide = guide_base + i;
        transitions.push((guide, 0, offsets[i] + blocks[i].initial()));
        let next = if i + 1 < guide_count {
            guide_base + i + 1
        } else {
            offsets[i + 1] + blocks[i + 1].initial()
        };
        transitions.push((guide, 1, next));
    }
    let dfa = Dfa::new(total + guide_count, guide_base, finals, transitions)
        .expect("glue construction is well-formed");
    debug_assert!(dfa.is_cpa());
    Ok((dfa, offsets))
}

/// Builds an ordinal automaton representing the nonzero ordinal
/// `alpha = w^{n_0}*m_0 + ... + w^{n_k}*m_k`, with exactly
/// `n_0 + g(m_0) + ... + g(m_k)` states ([`size_upper_bound`]).
///
/// For a plain power `w^{n}` the tower automaton is returned directly.
/// Otherwise the finite blocks `D_{m_0}, ..., D_{m_k}` are glued in order
/// and a tower of height `n_0` is attached by merging each block's final
/// state with the tower state `s_{n_i}`: climbing into the tower at level
/// `n_i` turns each of the `m_i` block words into a copy of `w^{n_i}`.
pub fn synthesize(alpha: &Cnf) -> Result<Dfa> {
    let terms = alpha.terms();
    if terms.is_empty() {
        return Err(Error::ZeroOrdinal);
    }
    let n0 = terms[0].0;
    if terms.len() == 1 && terms[0].1 == BigUint::from(1u32) {
        return Ok(build_power_automaton(n0));
    }

    let blocks: Vec<Dfa> = terms
        .iter()
        .map(|(_, m)| build_finite_block(m))
        .collect::<Result<_>>()?;
    let block_final: Vec<usize> = blocks
        .iter()
        .map(|b| b.finals().next().expect("finite blocks have a final state"))
        .collect();
    let (sum, offsets) = ordered_sum_parts(&blocks)?;

    // Tower state s_j maps to: the block-i final when j = n_i for some i,
    // a fresh state otherwise.
    let mut tower_id = vec![usize::MAX; n0 + 1];
    for (i, (n_i, _)) in terms.iter().enumerate() {
        tower_id[*n_i] = offsets[i] + block_final[i];
    }
    let mut state_count = sum.state_count();
    for id in tower_id.iter_mut() {
        if *id == usize::MAX {
            *id = state_count;
            state_count += 1;
        }
    }

    let mut transitions: Vec<(usize, u8, usize)> =
        sum.transitions().map(|(q, l, t)| (q, l, t)).collect();
    for j in 1..=n0 {
        transitions.push((tower_id[j], 0, tower_id[j - 1]));
        transitions.push((tower_id[j], 1, tower_id[j]));
    }
    let dfa = Dfa::new(state_count, sum.initial(), [tower_id[0]], transitions)
        .expect("synthesis construction is well-formed");
    debug_assert!(dfa.is_cpa());
    debug_assert!(dfa.is_ordinal_automaton().expect("CPA"));
    Ok(dfa)
}

/// The state count of the finite block `D_m`:
/// `g(1) = 1`, `g(2m) = 1 + g(m)`, `g(2m+1) = 2 + g(m)`; in closed form
/// `floor(log2 m)` plus the number of one-bits of `m`.
pub fn g_size(m: &BigUint) -> Result<u64> {
    use num_traits::Zero;
    if m.is_zero() {
        return Err(Error::InvalidArgument("a finite block must hold at least one word".into()));
    }
    Ok(m.bits() - 1 + m.count_ones())
}

/// The state count of [`synthesize`]\(alpha\):
/// `n_0 + g(m_0) + ... + g(m_k)` (which is `n_0 + 1` for a plain power).
pub fn size_upper_bound(alpha: &Cnf) -> Result<u64> {
    let terms = alpha.terms();
    if terms.is_empty() {
        return Err(Error::ZeroOrdinal);
    }
    let mut size = terms[0].0 as u64;
    for (_, m) in terms {
        size += g_size(m)?;
    }
    Ok(size)
}

/// The exact minimal number of states of an ordinal automaton representing
/// the nonzero ordinal `alpha = w^{n_0}*m_0 + ... + w^{n_k}*m_k`, namely
/// `n_0 - k + f(m_0, ..., m_k)` ([`f_bruteforce`]), together with nothing
/// but the number — use [`synthesize`] for a witness within
/// [`size_upper_bound`].
///
/// Propagates [`Error::SearchBoundExceeded`] when the coefficients are out
/// of exhaustive-search range (the default bound is
/// [`DEFAULT_SEARCH_BOUND`] states).
pub fn min_size(alpha: &Cnf) -> Result<u64> {
    min_size_bounded(alpha, DEFAULT_SEARCH_BOUND)
}

/// [`min_size`] with an explicit search bound.
pub fn min_size_bounded(alpha: &Cnf, bound: usize) -> Result<u64> {
    let terms = alpha.terms();
    if terms.is_empty() {
        return Err(Error::ZeroOrdinal);
    }
    let coefficients = coefficients_for_search(alpha, bound)?;
    let (f, _) = f_bruteforce_bounded(&coefficients, bound)?;
    let n0 = terms[0].0 as u64;
    let k = (terms.len() - 1) as u64;
    Ok(n0 - k + f as u64)
}

/// Extracts the coefficient tuple of `alpha` as machine integers, failing
/// with the search-bound error when any coefficient is plainly beyond
/// exhaustive reach.
fn coefficients_for_search(alpha: &Cnf, bound: usize) -> Result<Vec<u64>> {
    alpha
        .terms()
        .iter()
        .map(|(_, m)| m.to_u64().ok_or(Error::SearchBoundExceeded { bound }))
        .collect()
}

/// The minimal number of states of an acyclic complete prefix automaton
/// whose accepted words split into consecutive lexicographic blocks of
/// sizes `m_0, ..., m_k`, each block landing in its own final state — plus
/// a minimal witness.
///
/// Ground truth by exhaustive search: acyclic complete prefix automata are
/// enumerated once per isomorphism class (canonical breadth-first
/// numbering) in increasing size; the first automaton whose language
/// realizes the block sizes is returned. Uses the default bound of
/// [`DEFAULT_SEARCH_BOUND`] states.
pub fn f_bruteforce(block_sizes: &[u64]) -> Result<(usize, Dfa)> {
    f_bruteforce_bounded(block_sizes, DEFAULT_SEARCH_BOUND)
}

/// [`f_bruteforce`] with an explicit state bound; fails with
/// [`Error::SearchBoundExceeded`] when no automaton within the bound
/// realizes the blocks.
pub fn f_bruteforce_bounded(block_sizes: &[u64], bound: usize) -> Result<(usize, Dfa)> {
    if block_sizes.is_empty() {
        return Err(Error::InvalidArgument("no block sizes given".into()));
    }
    if block_sizes.iter().any(|&m| m == 0) {
        return Err(Error::InvalidArgument("block sizes must be positive".into()));
    }
    let finals = block_sizes.len();
    let total: u64 = block_sizes.iter().sum();
    // Each block needs its own final sink, and `n` states hold at most
    // `2^(n - finals)` words (each branching state at most doubles the word
    // count), so n >= finals + ceil(log2(total)).
    let needed_bits =
        if total <= 1 { 0 } else { 64 - (total - 1).leading_zeros() as usize };
    let lower = finals + needed_bits;
    for n in lower..=bound {
        let mut found: Option<Dfa> = None;
        enumerate_canonical_cpas(n, Some(finals), true, total, &mut |candidate| {
            if found.is_none() && realizes_blocks(candidate, block_sizes) {
                found = Some(candidate.clone());
            }
            found.is_some()
        });
        if let Some(witness) = found {
            return Ok((n, witness));
        }
    }
    Err(Error::SearchBoundExceeded { bound })
}

/// Whether the accepted words of an acyclic complete prefix automaton, in
/// lexicographic order, form consecutive runs of the given sizes, each run
/// landing in its own distinct final state.
fn realizes_blocks(a: &Dfa, block_sizes: &[u64]) -> bool {
    let total: u64 = block_sizes.iter().sum();
    let mut landing: Vec<usize> = Vec::with_capacity(total as usize);
    if !collect_landings(a, a.initial(), total, &mut landing) {
        return false; // more words than the blocks hold
    }
    if landing.len() as u64 != total {
        return false;
    }
    let mut used: Vec<usize> = Vec::with_capacity(block_sizes.len());
    let mut position = 0usize;
    for &m in block_sizes {
        let c = landing[position];
        if used.contains(&c) {
            return false;
        }
        used.push(c);
        for _ in 0..m {
            if landing[position] != c {
                return false;
            }
            position += 1;
        }
    }
    true
}

/// Pushes the landing final of every accepted word, in lexicographic word
/// order, aborting with `false` as soon as more than `limit` words exist.
fn collect_landings(a: &Dfa, state: usize, limit: u64, out: &mut Vec<usize>) -> bool {
    if a.is_final(state) {
        if out.len() as u64 == limit {
            return false;
        }
        out.push(state);
        return true;
    }
    for letter in 0..2u8 {
        let t = a.step(state, letter).expect("non-final CPA state is complete");
        if !collect_landings(a, t, limit, out) {
            return false;
        }
    }
    true
}

/// Enumerates, in a fixed canonical order, every trim complete prefix
/// automaton with exactly `state_count` states, one automaton per
/// isomorphism class (canonical breadth-first numbering: states are met in
/// discovery order, letter `0` before letter `1`).
///
/// `exact_finals` restricts the number of final states; `acyclic_only`
/// restricts to acyclic automata; `max_initial_paths` prunes (acyclic
/// searches only) candidates whose initial state already collects more than
/// that many words. The visitor returns `true` to stop the enumeration.
pub fn enumerate_canonical_cpas(
    state_count: usize,
    exact_finals: Option<usize>,
    acyclic_only: bool,
    max_initial_paths: u64,
    visit: &mut dyn FnMut(&Dfa) -> bool,
) {
    if state_count == 0 || state_count > 64 {
        return;
    }
    if state_count == 1 {
        // The single state must be initial and final: it accepts {empty}.
        if exact_finals.unwrap_or(1) == 1 && max_initial_paths >= 1 {
            let dfa = Dfa::new(1, 0, [0], []).expect("one-state automaton");
            visit(&dfa);
        }
        return;
    }
    let mut search = CpaSearch {
        n: state_count,
        exact_finals,
        acyclic_only,
        max_initial_paths,
        transitions: vec![[usize::MAX; 2]; state_count],
        is_final: vec![false; state_count],
        final_count: 0,
        discovered: 1,
        // reach[q] = bitmask of states reachable from q, including q.
        reach: (0..state_count).map(|q| 1u64 << q).collect(),
        trail: Vec::new(),
        stopped: false,
    };
    search.assign(0, visit);
}

struct CpaSearch {
    n: usize,
    exact_finals: Option<usize>,
    acyclic_only: bool,
    max_initial_paths: u64,
    transitions: Vec<[usize; 2]>,
    is_final: Vec<bool>,
    final_count: usize,
    discovered: usize,
    reach: Vec<u64>,
    trail: Vec<(usize, u64)>,
    stopped: bool,
}

impl CpaSearch {
    /// Chooses the role (final sink or branching) of `state` and then its
    /// two transitions, continuing with `state + 1`; states are processed
    /// in id order, so canonical numbering is enforced by only allowing the
    /// next undiscovered id as a fresh target.
    fn assign(&mut self, state: usize, visit: &mut dyn FnMut(&Dfa) -> bool) {
        if self.stopped {
            return;
        }
        if state == self.n {
            self.emit(visit);
            return;
        }
        if state >= self.discovered {
            // An undiscovered state at its turn means earlier states never
            // referenced it; no later assignment can fix that.
            return;
        }
        // Role choice: a final state is a sink. State 0 (the initial state)
        // cannot be final: a final sink as initial would leave every other
        // state unreachable, and n >= 2 here.
        if state > 0 && self.exact_finals.is_none_or(|required| self.final_count < required) {
            self.is_final[state] = true;
            self.final_count += 1;
            self.assign(state + 1, visit);
            self.final_count -= 1;
            self.is_final[state] = false;
        }
        // Branching role, unless too few later states remain to satisfy the
        // exact final count.
        let feasible = self
            .exact_finals
            .is_none_or(|required| self.final_count + (self.n - state - 1) >= required);
        if feasible {
            self.assign_transitions(state, 0, visit);
        }
    }

    fn assign_transitions(&mut self, state: usize, letter: usize, visit: &mut dyn FnMut(&Dfa) -> bool) {
        // Candidate targets: every discovered state, plus the next fresh one.
        let limit = (self.discovered + 1).min(self.n);
        for target in 0..limit {
            if self.stopped {
                return;
            }
            if self.acyclic_only && self.reach[target] & (1u64 << state) != 0 {
                continue; // target reaches state: would close a cycle
            }
            let fresh = target == self.discovered;
            if fresh {
                self.discovered += 1;
            }
            self.transitions[state][letter] = target;
            let trail_mark = self.trail.len();
            if self.acyclic_only {
                self.extend_reach(state, target);
            }
            if !(self.acyclic_only && self.committed_words() > self.max_initial_paths) {
                if letter == 0 {
                    self.assign_transitions(state, 1, visit);
                } else {
                    self.assign(state + 1, visit);
                }
            }
            while self.trail.len() > trail_mark {
                let (q, mask) = self.trail.pop().expect("trail mark");
                self.reach[q] = mask;
            }
            self.transitions[state][letter] = usize::MAX;
            if fresh {
                self.discovered -= 1;
            }
        }
    }

    /// Records `state -> target` in the reachability masks, remembering the
    /// old masks for backtracking. Only used on acyclic searches.
    fn extend_reach(&mut self, state: usize, target: usize) {
        let gained = self.reach[target];
        for q in 0..self.n {
            if self.reach[q] & (1u64 << state) != 0 && self.reach[q] & gained != gained {
                self.trail.push((q, self.reach[q]));
                self.reach[q] |= gained;
            }
        }
    }

    /// The number of words already determined by the assigned transitions:
    /// paths from the initial state to a final sink. Later assignments only
    /// ever add words, so exceeding the target word count is a sound prune
    /// for acyclic searches.
    fn committed_words(&self) -> u64 {
        let mut memo = [u64::MAX; 64];
        self.words_from(0, &mut memo)
    }

    fn words_from(&self, state: usize, memo: &mut [u64; 64]) -> u64 {
        if memo[state] != u64::MAX {
            return memo[state];
        }
        let value = if self.is_final[state] {
            1
        } else {
            self.transitions[state]
                .iter()
                .filter(|&&t| t != usize::MAX)
                .map(|&t| self.words_from(t, memo))
                .sum()
        };
        memo[state] = value;
        value
    }

    fn emit(&mut self, visit: &mut dyn FnMut(&Dfa) -> bool) {
        if self.discovered != self.n {
            return;
        }
        if let Some(required) = self.exact_finals {
            if self.final_count != required {
                return;
            }
        }
        if self.final_count == 0 {
            return;
        }
        // Co-accessibility: every state must reach a final sink.
        let mut reaches_final = 0u64;
        for q in 0..self.n {
            if self.is_final[q] {
                reaches_final |= 1 << q;
            }
        }
        loop {
            let mut changed = false;
            for q in 0..self.n {
                if reaches_final & (1 << q) != 0 || self.is_final[q] {
                    continue;
                }
                let [a, b] = self.transitions[q];
                if reaches_final & (1 << a) != 0 || reaches_final & (1 << b) != 0 {
                    reaches_final |= 1 << q;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if reaches_final.count_ones() as usize != self.n {
            return;
        }
        let transitions: Vec<(usize, u8, usize)> = (0..self.n)
            .filter(|&q| !self.is_final[q])
            .flat_map(|q| {
                [(q, 0u8, self.transitions[q][0]), (q, 1u8, self.transitions[q][1])]
            })
            .collect();
        let finals: Vec<usize> = (0..self.n).filter(|&q| self.is_final[q]).collect();
        let dfa = Dfa::new(self.n, 0, finals, transitions).expect("search state is well-formed");
        debug_assert!(dfa.is_cpa());
        if visit(&dfa) {
            self.stopped = true;
        }
    }
}

/// The shortest addition chain for `n`, by iterative deepening on the
/// element count with the lower bound `ceil(log2 n) + 1`; among shortest
/// chains the lexicographically least is returned, because candidates are
/// explored in increasing order.
pub fn shortest_addition_chain(n: u64) -> Result<AdditionChain> {
    if n == 0 {
        return Err(Error::InvalidArgument("no addition chain reaches 0".into()));
    }
    if n == 1 {
        return Ok(AdditionChain { elements: vec![1] });
    }
    let lower = 64 - (n - 1).leading_zeros() as usize + 1;
    for k in lower.max(2).. {
        let mut chain = vec![1u64];
        if extend_chain(&mut chain, n, k) {
            let chain = AdditionChain { elements: chain };
            debug_assert!(chain.is_valid());
            return Ok(chain);
        }
    }
    unreachable!("doubling gives a chain of every length >= log2(n) + 1")
}

/// Depth-first completion of `chain` to exactly `k` elements ending at `n`,
/// trying candidate elements in increasing order.
fn extend_chain(chain: &mut Vec<u64>, n: u64, k: usize) -> bool {
    let last = *chain.last().expect("chain never empty");
    if last == n {
        return chain.len() == k;
    }
    if chain.len() >= k {
        return false;
    }
    let remaining = (k - chain.len()) as u32;
    // Even doubling every step cannot reach n: prune.
    if ((last as u128) << remaining.min(64)) < n as u128 {
        return false;
    }
    // Candidate next elements: pairwise sums of chain elements, ascending.
    let mut candidates: Vec<u64> = Vec::new();
    for (i, &a) in chain.iter().enumerate() {
        for &b in &chain[i..] {
            let s = a + b;
            if s > last && s <= n && !candidates.contains(&s) {
                candidates.push(s);
            }
        }
    }
    candidates.sort_unstable();
    for s in candidates {
        chain.push(s);
        if extend_chain(chain, n, k) {
            return true;
        }
        chain.pop();
    }
    false
}

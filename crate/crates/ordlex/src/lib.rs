//! Ordinal analysis of lexicographically ordered regular languages.
//!
//! A regular language over the ordered alphabet `0 < 1`, ordered
//! lexicographically (with every proper prefix preceding its extensions),
//! is a countable linear order. This crate decides whether that order is a
//! well-ordering, computes the ordinal of the language in Cantor normal
//! form, decides order-isomorphism of two automata, synthesizes a small
//! automaton realizing a given ordinal, and computes or bounds the minimal
//! number of states needed to realize it.
//!
//! The pieces fit together as follows:
//!
//! * [`cnf`] — ordinals below `w^w` in Cantor normal form and their
//!   arithmetic.
//! * [`automaton`] — partial DFAs over `{0,1}` (and over larger ordered
//!   alphabets), trimming, normalization to complete prefix automata,
//!   condensation into strongly connected components, and the structural
//!   tests for well-ordered and scattered orderings.
//! * [`counting`] — the DAG view of an ordinal automaton and exact word
//!   counting above a lexicographic threshold.
//! * [`extract`] — Cantor-normal-form extraction from an ordinal automaton,
//!   a recursive reference evaluator, and order-isomorphism.
//! * [`synthesis`] — construction of small automata for a given ordinal and
//!   exact/bounded minimal state counts.
//! * [`cli`] — the `ordlex` command-line interface.

pub mod automaton;
pub mod cli;
pub mod cnf;
pub mod counting;
pub mod extract;
pub mod synthesis;

pub use automaton::{AlphaDfa, Condensation, Dfa, Word};
pub use cnf::Cnf;

/// Errors reported by every fallible operation in this crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The automaton accepts no word at all. Most operations require a
    /// nonempty language; callers that can represent the empty order type
    /// catch this variant and map it to the ordinal `0`.
    #[error("the automaton accepts the empty language")]
    EmptyLanguage,

    /// A Cantor-normal-form expression failed to parse. `pos` is the byte
    /// offset of the offending character in the input.
    #[error("invalid ordinal expression at offset {pos}: {msg}")]
    CnfParse { pos: usize, msg: String },

    /// An automaton file failed to parse. `line` is 1-based.
    #[error("invalid automaton file at line {line}: {msg}")]
    AutParse { line: usize, msg: String },

    /// A word literal contained a character other than `0` or `1`.
    #[error("invalid word: {0}")]
    WordParse(String),

    /// An automaton description is structurally malformed (out-of-range
    /// state, bad letter, duplicate transition, ...).
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    /// An argument violated an operation's documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The degree of the ordinal `0` is undefined.
    #[error("the degree of 0 is undefined")]
    ZeroDegree,

    /// The operation requires a strictly positive ordinal.
    #[error("the ordinal 0 has no automaton representation")]
    ZeroOrdinal,

    /// The operation requires a trim automaton (all states accessible and
    /// co-accessible).
    #[error("automaton is not trim")]
    NotTrim,

    /// The operation requires a prefix-accepting automaton (no final state
    /// has an outgoing transition).
    #[error("automaton is not prefix-accepting")]
    NotPrefix,

    /// The operation requires a complete prefix automaton.
    #[error("automaton is not a complete prefix automaton")]
    NotCpa,

    /// The operation requires an automaton whose language is well-ordered.
    #[error("language is not well-ordered")]
    NotOrdinal,

    /// The operation requires an acyclic automaton.
    #[error("automaton has a cycle")]
    NotAcyclic,

    /// The DAG view is undefined when the initial state already lies in a
    /// counted component.
    #[error("initial state lies in a counted component")]
    InitialInComponent,

    /// A threshold word did not lead from the initial state to a sink of
    /// the DAG view.
    #[error("threshold word does not lead to a sink")]
    BadThreshold,

    /// The requested state does not exist or is not in a counted component.
    #[error("state {0} is not in a counted component")]
    StateNotCounted(usize),

    /// No word leads from the initial state to the requested sink of the
    /// DAG view.
    #[error("no word leads from the initial state to the requested sink")]
    UnreachableSink,

    /// An exhaustive search exceeded its configured state bound.
    #[error("exhaustive search exceeded the bound of {bound} states")]
    SearchBoundExceeded { bound: usize },

    /// An input/output failure while reading or writing files.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

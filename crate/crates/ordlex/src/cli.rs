//! Command-line front-end: file parsing, the normalization pipeline, and
//! stable exit codes.
//!
//! Exit-code contract:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success (`check`: well-ordered; `iso`: isomorphic)  |
//! | 1    | `iso`: not isomorphic                               |
//! | 2    | parse or format error (files, CNF text, words)      |
//! | 3    | `check`: scattered but not well-ordered             |
//! | 4    | `check`: not scattered                              |
//! | 5    | precondition violation (wrong kind of automaton,    |
//! |      | unreachable request, search bound exceeded, I/O)    |
//!
//! All numbers are printed in decimal; words are printed as raw `0`/`1`
//! strings (the empty word prints as an empty string).

use crate::automaton::{normalize_to_cpa, parse_ordaut, Dfa, ParsedAutomaton, Word};
use crate::cnf::Cnf;
use crate::counting::{build_dag_view, DagAutomaton};
use crate::extract::{ordinal_of, ordinal_of_recursive, ExtractionTrace};
use crate::synthesis::{min_size_bounded, size_upper_bound, synthesize, DEFAULT_SEARCH_BOUND};
use crate::{Error, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "ordlex",
    version,
    about = "Ordinal automata: well-orderings of regular languages under the lexicographic order",
    arg_required_else_help = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a language as ordinal (well-ordered), scattered, or neither
    ///
    /// Exit code 0 for ordinal, 3 for scattered, 4 for neither.
    Check {
        /// Automaton in ordaut v1 format
        file: PathBuf,
    },
    /// Print the Cantor normal form of the language's order type
    Cnf {
        /// Automaton in ordaut v1 format; the language must be well-ordered
        file: PathBuf,
        /// Also print the per-degree counts, witnesses, and thresholds
        #[arg(long)]
        trace: bool,
    },
    /// Decide whether two languages are order-isomorphic
    ///
    /// Exit code 0 when isomorphic, 1 when not.
    Iso {
        /// First automaton in ordaut v1 format
        file1: PathBuf,
        /// Second automaton in ordaut v1 format
        file2: PathBuf,
    },
    /// Build a small ordinal automaton for an ordinal given in CNF
    Synth {
        /// The ordinal, e.g. "w^3*2 + w"
        cnf: String,
        /// Where to write the automaton (ordaut v1); standard output if omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the minimal state count for an ordinal, and the constructive bound
    Minsize {
        /// The ordinal, e.g. "w^3*2 + w"
        cnf: String,
        /// Exhaustive-search cap on candidate automaton sizes
        #[arg(long = "max-states")]
        max_states: Option<usize>,
    },
    /// Count finite-stage words strictly greater than WORD
    ///
    /// The file must already contain a trim ordinal automaton; states are
    /// used exactly as numbered in the file. Words are counted on the
    /// finite view: each counted strongly connected component is replaced
    /// by a sink collecting the words that first enter it.
    #[command(name = "count-greater")]
    CountGreater {
        /// Automaton in ordaut v1 format (binary alphabet, trim)
        file: PathBuf,
        /// Threshold word over 0/1; must be a word of the finite view
        word: String,
    },
    /// Print the lexicographically greatest word first entering STATE's component
    ///
    /// The file must already contain a trim ordinal automaton; states are
    /// used exactly as numbered in the file.
    Lexmax {
        /// Automaton in ordaut v1 format (binary alphabet, trim)
        file: PathBuf,
        /// State id from the file
        state: usize,
    },
    /// Write the complete-prefix normal form of an automaton
    Normalize {
        /// Automaton in ordaut v1 format
        file: PathBuf,
        /// Where to write the normalized automaton (ordaut v1); standard
        /// output if omitted
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the CNF from the independent recursive evaluator
    Oracle {
        /// Automaton in ordaut v1 format; the language must be well-ordered
        file: PathBuf,
    },
}

/// Runs the command line given by `args` (including the program name),
/// writing results to `out` and diagnostics to `err`; returns the process
/// exit code per the contract in the module documentation.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    match dispatch(cli.cmd, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::CnfParse { .. } | Error::AutParse { .. } | Error::WordParse(_) => 2,
        _ => 5,
    }
}

fn dispatch(cmd: Cmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Cmd::Check { file } => cmd_check(&file, out),
        Cmd::Cnf { file, trace } => cmd_cnf(&file, trace, out),
        Cmd::Iso { file1, file2 } => cmd_iso(&file1, &file2, out),
        Cmd::Synth { cnf, output } => cmd_synth(&cnf, output.as_deref(), out),
        Cmd::Minsize { cnf, max_states } => cmd_minsize(&cnf, max_states, out),
        Cmd::CountGreater { file, word } => cmd_count_greater(&file, &word, out),
        Cmd::Lexmax { file, state } => cmd_lexmax(&file, state, out),
        Cmd::Normalize { file, output } => cmd_normalize(&file, output.as_deref(), out),
        Cmd::Oracle { file } => cmd_oracle(&file, out),
    }
}

fn read_automaton(path: &Path) -> Result<ParsedAutomaton> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_ordaut(&text)
}

/// The normalization pipeline behind `check`, `cnf`, `iso`, `oracle`, and
/// `normalize`: trim, binarize if needed, append an end marker if the
/// language is not a prefix language, and contract to a complete prefix
/// automaton. `None` means the language is empty.
fn load_cpa(path: &Path) -> Result<Option<Dfa>> {
    let parsed = read_automaton(path)?;
    match normalize_to_cpa(&parsed) {
        Ok(cpa) => Ok(Some(cpa)),
        Err(Error::EmptyLanguage) => Ok(None),
        Err(e) => Err(e),
    }
}

fn cmd_check(file: &Path, out: &mut dyn Write) -> Result<i32> {
    let Some(cpa) = load_cpa(file)? else {
        // The empty language is vacuously well-ordered.
        writeln!(out, "ordinal")?;
        return Ok(0);
    };
    if cpa.is_ordinal_automaton()? {
        writeln!(out, "ordinal")?;
        Ok(0)
    } else if cpa.is_scattered_automaton()? {
        writeln!(out, "scattered")?;
        Ok(3)
    } else {
        writeln!(out, "neither")?;
        Ok(4)
    }
}

fn print_trace(trace: &ExtractionTrace, out: &mut dyn Write) -> Result<()> {
    if trace.short_circuit {
        writeln!(out, "initial state lies in a counted component")?;
    }
    for row in &trace.degrees {
        match &row.threshold {
            Some(x) => writeln!(out, "d={}: m={} x={x}", row.degree, row.total)?,
            None => writeln!(out, "d={}: m={}", row.degree, row.total)?,
        }
        for c in &row.components {
            match &c.witness {
                Some(u) => writeln!(out, "  component {}: count={} u={u}", c.component, c.count)?,
                None => writeln!(out, "  component {}: count={}", c.component, c.count)?,
            }
        }
    }
    Ok(())
}

fn cmd_cnf(file: &Path, trace: bool, out: &mut dyn Write) -> Result<i32> {
    let Some(cpa) = load_cpa(file)? else {
        // Documented extension: the empty language has ordinal 0.
        writeln!(out, "0")?;
        return Ok(0);
    };
    let (alpha, extraction) = ordinal_of(&cpa)?;
    if trace {
        print_trace(&extraction, out)?;
    }
    writeln!(out, "{alpha}")?;
    Ok(0)
}

fn cmd_iso(file1: &Path, file2: &Path, out: &mut dyn Write) -> Result<i32> {
    let ordinal = |path: &Path| -> Result<Cnf> {
        match load_cpa(path)? {
            Some(cpa) => Ok(ordinal_of(&cpa)?.0),
            None => Ok(Cnf::ZERO),
        }
    };
    if ordinal(file1)? == ordinal(file2)? {
        writeln!(out, "isomorphic")?;
        Ok(0)
    } else {
        writeln!(out, "not isomorphic")?;
        Ok(1)
    }
}

fn cmd_synth(cnf: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let alpha = Cnf::parse(cnf)?;
    let dfa = synthesize(&alpha)?;
    write_ordaut(&dfa.to_ordaut_string(), output, out)?;
    Ok(0)
}

/// Writes serialized automaton text to `output`, or to standard output when
/// no path was given.
fn write_ordaut(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn cmd_minsize(cnf: &str, max_states: Option<usize>, out: &mut dyn Write) -> Result<i32> {
    let alpha = Cnf::parse(cnf)?;
    let bound = max_states.unwrap_or(DEFAULT_SEARCH_BOUND);
    let min = min_size_bounded(&alpha, bound)?;
    let upper = size_upper_bound(&alpha)?;
    writeln!(out, "min_size: {min}")?;
    writeln!(out, "upper_bound: {upper}")?;
    Ok(0)
}

/// Loads a file for the strict commands (`count-greater`, `lexmax`): the
/// automaton must be binary, already trim, and already an ordinal
/// automaton — state ids from the file are used as-is.
fn load_strict(path: &Path) -> Result<(Dfa, crate::automaton::Condensation, DagAutomaton)> {
    let dfa = match read_automaton(path)? {
        ParsedAutomaton::Binary(d) => d,
        ParsedAutomaton::Alphabet(_) => {
            return Err(Error::InvalidArgument(
                "this command works on binary automata; normalize the file first".into(),
            ))
        }
    };
    if !dfa.is_trim() {
        return Err(Error::NotTrim);
    }
    let cond = dfa.condense();
    let dag = build_dag_view(&dfa, &cond)?;
    Ok((dfa, cond, dag))
}

fn cmd_count_greater(file: &Path, word: &str, out: &mut dyn Write) -> Result<i32> {
    let (_, _, dag) = load_strict(file)?;
    let threshold: Word = word.parse()?;
    let targets: BTreeSet<usize> = dag.sinks().collect();
    let count = dag.count_accepted_greater(&targets, Some(&threshold))?;
    writeln!(out, "{count}")?;
    Ok(0)
}

fn cmd_lexmax(file: &Path, state: usize, out: &mut dyn Write) -> Result<i32> {
    let (dfa, cond, dag) = load_strict(file)?;
    if state >= dfa.state_count() {
        return Err(Error::InvalidArgument(format!(
            "state {state} out of range: the automaton has {} states",
            dfa.state_count()
        )));
    }
    let sink = dag
        .sink_of_component(cond.component_of(state))
        .ok_or(Error::StateNotCounted(state))?;
    let word = dag.lex_greatest_word_to(sink)?;
    writeln!(out, "{word}")?;
    Ok(0)
}

fn cmd_normalize(file: &Path, output: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    let parsed = read_automaton(file)?;
    let cpa = normalize_to_cpa(&parsed)?;
    write_ordaut(&cpa.to_ordaut_string(), output, out)?;
    Ok(0)
}

fn cmd_oracle(file: &Path, out: &mut dyn Write) -> Result<i32> {
    let Some(cpa) = load_cpa(file)? else {
        writeln!(out, "0")?;
        return Ok(0);
    };
    let alpha = ordinal_of_recursive(&cpa)?;
    writeln!(out, "{alpha}")?;
    Ok(0)
}

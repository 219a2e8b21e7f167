//! The `gaut` command-line front end.
//!
//! Exit codes: 0 success (or a positive answer), 1 a negative answer
//! (word rejected, languages differ, validation found violations),
//! 2 usage error, 3 semantic or runtime error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::alphabet::{gen_builtin, gen_st, parse_alphabet, serialize_alphabet, AlphabetError, Builtin, GraphAlphabet};
use crate::automaton::{parse_automaton_with, parse_nfa, serialize_automaton, serialize_nfa, Automaton, AutomatonError};
use crate::minimize::{find_morphism, minimize, suffix_quotients, MinimizeError};
use crate::oracle::{bounded_equal, bounded_language, enum_morphisms, OracleError, MAX_BOUND};
use crate::rational::{compile, eliminate_silent, parse_expr, print_expr, to_rational, RatError};
use crate::ops;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    File { path: PathBuf, message: String },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Rational(#[from] RatError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Minimize(#[from] MinimizeError),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Parser, Debug)]
#[command(name = "gaut", version, about = "Automata over graph alphabets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Output {
    /// Write the result to this file instead of standard output.
    #[arg(short = 'o', long = "output")]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct Bound {
    /// Maximum word length.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(0..=MAX_BOUND as i64))]
    maxlen: u8,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Lock,
    Types,
    St,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a .galph, .gaut or .nfa file; violations give exit code 1.
    Validate { file: PathBuf },
    /// Test whether an automaton accepts a word `v : e1 e2 … : w`.
    Member { automaton: PathBuf, word: String },
    /// List the accepted morphisms (or, for an alphabet, all morphisms) up to a length.
    Enum {
        file: PathBuf,
        #[command(flatten)]
        bound: Bound,
        #[command(flatten)]
        out: Output,
    },
    Union { left: PathBuf, right: PathBuf, #[command(flatten)] out: Output },
    Concat { left: PathBuf, right: PathBuf, #[command(flatten)] out: Output },
    Intersect { left: PathBuf, right: PathBuf, #[command(flatten)] out: Output },
    Plus { automaton: PathBuf, #[command(flatten)] out: Output },
    Determinize { automaton: PathBuf, #[command(flatten)] out: Output },
    Complete { automaton: PathBuf, #[command(flatten)] out: Output },
    Complement {
        automaton: PathBuf,
        /// Determinize and complete the input first instead of rejecting it.
        #[arg(long)]
        force_dc: bool,
        #[command(flatten)]
        out: Output,
    },
    Minimize { automaton: PathBuf, #[command(flatten)] out: Output },
    Trim { automaton: PathBuf, #[command(flatten)] out: Output },
    QuotientLeft { automaton: PathBuf, word: String, #[command(flatten)] out: Output },
    QuotientRight { automaton: PathBuf, word: String, #[command(flatten)] out: Output },
    /// Print a rational expression for the automaton's language.
    ToRat { automaton: PathBuf, #[command(flatten)] out: Output },
    /// Compile a rational expression into an automaton.
    FromRat {
        #[arg(long)]
        alphabet: PathBuf,
        expr: String,
        #[command(flatten)]
        out: Output,
    },
    /// Compare two languages up to a length; a difference gives exit code 1.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[command(flatten)]
        bound: Bound,
    },
    /// Count the nonempty left quotients and print a shortest witness for each.
    Quotients { automaton: PathBuf, #[command(flatten)] out: Output },
    /// Find a morphism between two deterministic trimmed automata.
    Morphism { left: PathBuf, right: PathBuf, #[command(flatten)] out: Output },
    /// Forget the vertex types, giving a plain NFA over edge names.
    Untyped { automaton: PathBuf, #[command(flatten)] out: Output },
    /// Graphviz rendering.
    Dot { automaton: PathBuf, #[command(flatten)] out: Output },
    /// Generate an alphabet.
    Gen {
        kind: GenKind,
        /// Comma-separated event labels (st only).
        #[arg(long, value_delimiter = ',')]
        events: Vec<String>,
        /// Maximum number of running events (st only).
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[command(flatten)]
        out: Output,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn in_file<E: std::fmt::Display>(path: &Path) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::File {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

/// The first meaningful line of a document.
fn header(text: &str) -> &str {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("")
}

fn load_alphabet(path: &Path) -> Result<GraphAlphabet, CliError> {
    parse_alphabet(&read(path)?).map_err(in_file(path))
}

/// Parses a `.gaut` file, resolving `use` relative to its directory.
fn parse_gaut(path: &Path) -> Result<Automaton, CliError> {
    parse_gaut_text(path, &read(path)?)
}

fn parse_gaut_text(path: &Path, text: &str) -> Result<Automaton, CliError> {
    let dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_automaton_with(text, |rel| {
        let p = dir.join(rel);
        let t = fs::read_to_string(&p).map_err(|e| format!("{}: {e}", p.display()))?;
        parse_alphabet(&t).map_err(|e| format!("{}: {e}", p.display()))
    })
    .map_err(in_file(path))
}

/// Loads a well-typed automaton; silent transitions are eliminated.
fn load(path: &Path) -> Result<Automaton, CliError> {
    load_text(path, &read(path)?)
}

fn load_text(path: &Path, text: &str) -> Result<Automaton, CliError> {
    let aut = parse_gaut_text(path, text)?;
    if let Some(v) = aut.validate().first() {
        return Err(CliError::File {
            path: path.to_path_buf(),
            message: format!("ill-typed automaton: {v}"),
        });
    }
    Ok(eliminate_silent(&aut))
}

/// Loads two automata and puts them over one shared alphabet.
fn load_pair(left: &Path, right: &Path) -> Result<(Automaton, Automaton), CliError> {
    let (a, b) = (load(left)?, load(right)?);
    if !a.same_alphabet(&b) {
        return Err(AutomatonError::AlphabetMismatch.into());
    }
    Ok((a, b))
}

fn emit(text: &str, out: &Output, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn emit_aut(aut: &Automaton, out: &Output, stdout: &mut dyn Write) -> Result<i32, CliError> {
    emit(&serialize_automaton(aut), out, stdout)?;
    Ok(EXIT_OK)
}

fn validate(path: &Path, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let text = read(path)?;
    let mut report = String::new();
    let code = match header(&text) {
        h if h.starts_with("galph") => {
            let a = parse_alphabet(&text).map_err(in_file(path))?;
            report = format!("valid alphabet: {} vertices, {} edges\n", a.vertex_count(), a.edge_count());
            EXIT_OK
        }
        h if h.starts_with("nfa") => {
            let n = parse_nfa(&text).map_err(in_file(path))?;
            report = format!("valid nfa: {} states, {} transitions\n", n.states.len(), n.transitions.len());
            EXIT_OK
        }
        _ => {
            let aut = parse_gaut_text(path, &text)?;
            let violations = aut.validate();
            if violations.is_empty() {
                report = format!(
                    "valid automaton: {} states, {} transitions\n",
                    aut.state_count(),
                    aut.transitions().len()
                );
                EXIT_OK
            } else {
                for v in &violations {
                    report.push_str(&format!("violation: {v}\n"));
                }
                EXIT_NO
            }
        }
    };
    emit(&report, &Output { output: None }, stdout)?;
    Ok(code)
}

fn execute(cmd: Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cmd {
        Command::Validate { file } => validate(&file, stdout),
        Command::Member { automaton, word } => {
            let aut = load(&automaton)?;
            let w = aut.alphabet().parse_word(&word)?;
            let yes = aut.accepts(&w)?;
            emit(if yes { "accepted\n" } else { "rejected\n" }, &Output { output: None }, stdout)?;
            Ok(if yes { EXIT_OK } else { EXIT_NO })
        }
        Command::Enum { file, bound, out } => {
            let text = read(&file)?;
            let set = if header(&text).starts_with("galph") {
                let a = Arc::new(parse_alphabet(&text).map_err(in_file(&file))?);
                enum_morphisms(&a, bound.maxlen as usize)?
            } else {
                bounded_language(&load_text(&file, &text)?, bound.maxlen as usize)?
            };
            emit(&set.to_text(), &out, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Union { left, right, out } => {
            let (a, b) = load_pair(&left, &right)?;
            emit_aut(&ops::union(&a, &b)?, &out, stdout)
        }
        Command::Concat { left, right, out } => {
            let (a, b) = load_pair(&left, &right)?;
            emit_aut(&ops::concat(&a, &b)?, &out, stdout)
        }
        Command::Intersect { left, right, out } => {
            let (a, b) = load_pair(&left, &right)?;
            emit_aut(&ops::intersect(&a, &b)?, &out, stdout)
        }
        Command::Plus { automaton, out } => emit_aut(&ops::plus(&load(&automaton)?), &out, stdout),
        Command::Determinize { automaton, out } => {
            emit_aut(&ops::determinize(&load(&automaton)?)?, &out, stdout)
        }
        Command::Complete { automaton, out } => emit_aut(&ops::complete(&load(&automaton)?)?, &out, stdout),
        Command::Complement { automaton, force_dc, out } => {
            let mut aut = load(&automaton)?;
            if force_dc {
                aut = ops::complete(&ops::determinize(&aut)?)?;
            }
            let c = ops::complement(&aut).map_err(|e| match e {
                AutomatonError::NotDeterministic | AutomatonError::NotComplete => CliError::Invalid(format!(
                    "complement requires a deterministic and complete automaton: {e} (use --force-dc)"
                )),
                other => other.into(),
            })?;
            emit_aut(&c, &out, stdout)
        }
        Command::Minimize { automaton, out } => emit_aut(&minimize(&load(&automaton)?)?, &out, stdout),
        Command::Trim { automaton, out } => emit_aut(&load(&automaton)?.trim(), &out, stdout),
        Command::QuotientLeft { automaton, word, out } => {
            let aut = load(&automaton)?;
            let w = aut.alphabet().parse_word(&word)?;
            emit_aut(&ops::quotient_left(&aut, &w)?, &out, stdout)
        }
        Command::QuotientRight { automaton, word, out } => {
            let aut = load(&automaton)?;
            let w = aut.alphabet().parse_word(&word)?;
            emit_aut(&ops::quotient_right(&aut, &w)?, &out, stdout)
        }
        Command::ToRat { automaton, out } => {
            let e = to_rational(&load(&automaton)?)?;
            emit(&format!("{}\n", print_expr(&e)), &out, stdout)?;
            Ok(EXIT_OK)
        }
        Command::FromRat { alphabet, expr, out } => {
            let a = Arc::new(load_alphabet(&alphabet)?);
            let e = parse_expr(&a, &expr)?;
            emit_aut(&compile(&a, &e)?, &out, stdout)
        }
        Command::Equiv { left, right, bound } => {
            let (a, b) = load_pair(&left, &right)?;
            let n = bound.maxlen as usize;
            let cmp = bounded_equal(&bounded_language(&a, n)?, &bounded_language(&b, n)?)?;
            emit(&cmp.report(a.alphabet()), &Output { output: None }, stdout)?;
            Ok(if cmp.equal { EXIT_OK } else { EXIT_NO })
        }
        Command::Quotients { automaton, out } => {
            let aut = load(&automaton)?;
            let q = suffix_quotients(&aut)?;
            let mut text = format!(
                "nonempty quotients: {}\nquotients including empty: {}\n",
                q.count(),
                q.total_including_empty
            );
            for w in &q.witnesses {
                text.push_str(&format!("witness {}\n", aut.alphabet().format_word(w)));
            }
            emit(&text, &out, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Morphism { left, right, out } => {
            let (a, b) = load_pair(&left, &right)?;
            let f = find_morphism(&a, &b)?;
            emit(&f.to_text(&a, &b), &out, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Untyped { automaton, out } => {
            emit(&serialize_nfa(&load(&automaton)?.untyped()?), &out, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Dot { automaton, out } => {
            let aut = parse_gaut(&automaton)?;
            emit(&aut.to_dot(), &out, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Gen { kind, events, depth, out } => {
            let a = match kind {
                GenKind::Lock => gen_builtin(Builtin::Lock),
                GenKind::Types => gen_builtin(Builtin::Types),
                GenKind::St => gen_st(&events, depth)?,
            };
            emit(&serialize_alphabet(&a), &out, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli.command, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_ERROR
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("gaut").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&[]).0, EXIT_USAGE);
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["enum", "x.gaut", "--maxlen", "9"]).0, EXIT_USAGE);
        assert_eq!(call(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn gen_to_stdout() {
        let (code, out, _) = call(&["gen", "lock"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("galph 1\n"));
        let (code, out, _) = call(&["gen", "st", "--events", "a,b", "--depth", "1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(parse_alphabet(&out).unwrap().vertex_count(), 3);
        let (code, _, err) = call(&["gen", "st", "--events", "a b", "--depth", "1"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn missing_file() {
        let (code, _, err) = call(&["dot", "/nonexistent/x.gaut"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("/nonexistent/x.gaut"));
    }
}

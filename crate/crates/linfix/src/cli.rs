//! Command-line front end: classify a language, run an update/enumeration
//! script against a word, or benchmark the enumerators.
//!
//! Exit codes: 0 on success, 1 on input errors, 2 when an operation is not
//! supported for the language's strategy.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

use crate::adhoc::{self, AdhocKind, AdhocSession};
use crate::alphabet::{Infix, Letter, Word};
use crate::classify::{classify_monoid, ClassificationReport, SemiextPlan};
use crate::instrument::{self, BenchRow, Profiled, Workload};
use crate::langfile::{parse_lang_file, LangFile};
use crate::membership::MonoidTree;
use crate::monoid::{syntactic_monoid, Monoid};
use crate::occlist::LetterIndex;
use crate::oracle;
use crate::script::{parse_script, Command};
use crate::semiext::EnumSession;
use crate::simple::SimpleSession;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_UNSUPPORTED: i32 = 2;

/// How enumeration queries are answered for a language.
pub enum Strategy {
    /// Fixed-language constant-delay walk.
    Adhoc { kind: AdhocKind, neutral: Vec<Letter> },
    /// Constant-memory session for semi-extensible ZG languages.
    Semiext(Box<SemiextPlan>),
    /// Oracle-driven backtracking for extensible languages with a neutral
    /// letter.
    Simple,
    /// Quadratic brute-force fallback with no complexity guarantees.
    OracleOnly,
}

impl Strategy {
    pub fn name(&self) -> &'static str {
        match self {
            Strategy::Adhoc { .. } => "adhoc",
            Strategy::Semiext(_) => "semiext",
            Strategy::Simple => "simple+oracle",
            Strategy::OracleOnly => "oracle-only",
        }
    }
}

/// A parsed language with its classification and selected strategy.
pub struct PreparedLang {
    pub file: LangFile,
    pub monoid: Arc<Monoid>,
    pub report: ClassificationReport,
    pub strategy: Strategy,
}

/// Classifies the language and picks the strategy: ad-hoc fingerprints
/// first, then the constant-memory session, then the backtracking
/// enumerator, then brute force.
pub fn prepare(file: LangFile) -> Result<PreparedLang, String> {
    let monoid = syntactic_monoid(&file.dfa).map_err(|e| e.to_string())?;
    let report = classify_monoid(&monoid);
    for &c in &file.neutral_hint {
        let a = file.alphabet.index_of(c).expect("hint letters checked at parse time");
        if !monoid.is_neutral(a) {
            return Err(format!("neutral-hint letter {c:?} is not neutral"));
        }
    }
    let strategy = if let Some(kind) = adhoc::detect(&file.dfa, &report.neutral) {
        Strategy::Adhoc { kind, neutral: report.neutral.clone() }
    } else if report.is_semi_extensible_zg {
        let plan = SemiextPlan::with_threshold(&file.dfa, report.threshold.expect("present"))
            .map_err(|e| e.to_string())?;
        Strategy::Semiext(Box::new(plan))
    } else if report.is_extensible && !report.neutral.is_empty() {
        Strategy::Simple
    } else {
        Strategy::OracleOnly
    };
    Ok(PreparedLang { file, monoid: Arc::new(monoid), report, strategy })
}

/// Renders the classification report plus the selected strategy.
pub fn render_report(lang: &PreparedLang) -> String {
    let r = &lang.report;
    let neutral = if r.neutral.is_empty() {
        "none".to_string()
    } else {
        r.neutral
            .iter()
            .map(|&a| lang.file.alphabet.symbol(a).to_string())
            .collect::<Vec<_>>()
            .join(",")
    };
    let threshold = match r.threshold {
        Some(p) => p.to_string(),
        None => "none".to_string(),
    };
    let mut out = String::new();
    let _ = writeln!(out, "is_zg: {}", r.is_zg);
    let _ = writeln!(out, "is_aperiodic: {}", r.is_aperiodic);
    let _ = writeln!(out, "is_extensible: {}", r.is_extensible);
    let _ = writeln!(out, "is_semi_extensible_zg: {}", r.is_semi_extensible_zg);
    let _ = writeln!(out, "threshold: {threshold}");
    let _ = writeln!(out, "neutral: {neutral}");
    let _ = writeln!(out, "monoid_size: {}", r.monoid_size);
    let _ = writeln!(out, "strategy: {}", lang.strategy.name());
    out
}

/// Enumerates the current word under the prepared strategy, in the
/// strategy's own order.
pub fn enumerate(
    lang: &PreparedLang,
    index: &LetterIndex,
    psi: &mut MonoidTree,
) -> Vec<Infix> {
    let mut out = Vec::new();
    match &lang.strategy {
        Strategy::Adhoc { kind, neutral } => {
            let mut s = AdhocSession::start(index, *kind, neutral);
            while let Some(x) = s.next(index).expect("index frozen during enumeration") {
                out.push(x);
            }
        }
        Strategy::Semiext(plan) => {
            let mut s = EnumSession::start(index, plan);
            while let Some(x) = s.next(index).expect("index frozen during enumeration") {
                out.push(x);
            }
        }
        Strategy::Simple => {
            let mut s =
                SimpleSession::start(index.word(), psi).expect("strategy checked extensibility");
            while let Some(x) = s.next(psi).expect("oracle owned by the session") {
                out.push(x);
            }
        }
        Strategy::OracleOnly => {
            out.extend(oracle::brute_enumerate(&lang.file.dfa, index.word()));
        }
    }
    out
}

/// Executes a script against a word, returning the printed output.
pub fn run_script(
    lang: &PreparedLang,
    word: Word,
    commands: &[Command],
    sorted: bool,
) -> String {
    let k = lang.file.alphabet.len();
    let mut index = LetterIndex::build_over(word.clone(), k);
    let mut psi = MonoidTree::build(&word, lang.monoid.clone());
    let mut out = String::new();
    for cmd in commands {
        match *cmd {
            Command::Sub { pos, letter } => {
                index.apply_substitution(pos, letter);
                psi.update(pos, letter);
            }
            Command::Enum => {
                let mut results = enumerate(lang, &index, &mut psi);
                if sorted {
                    results.sort_unstable();
                }
                for x in results {
                    let _ = writeln!(out, "{x}");
                }
            }
            Command::Member => {
                let _ = writeln!(out, "{}", if psi.test() { "yes" } else { "no" });
            }
            Command::CountResults => {
                let _ = writeln!(out, "{}", enumerate(lang, &index, &mut psi).len());
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Argument parsing and command dispatch
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(
    name = "linfix",
    about = "Dynamic enumeration of language infixes under letter substitutions"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the algebraic classification and the enumeration strategy.
    Classify(ClassifyArgs),
    /// Execute an update/enumeration script against a word.
    Run(RunArgs),
    /// Measure op counts and memory cells across word sizes, writing CSV.
    Bench(BenchArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    /// Language file (letters/regex/neutral-hint lines).
    #[arg(long)]
    lang: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    lang: PathBuf,
    /// Initial word, over the language's alphabet.
    #[arg(long)]
    word: String,
    /// Script file: sub/enum/member/count-results lines.
    #[arg(long)]
    script: PathBuf,
    /// Canonicalize enumeration output lexicographically (buffers all
    /// results; a comparison convenience, not a session property).
    #[arg(long)]
    sorted: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    lang: PathBuf,
    /// Comma-separated word lengths.
    #[arg(long, value_delimiter = ',')]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Substitutions measured per size.
    #[arg(long, default_value_t = 50)]
    ops: usize,
    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,
    /// Allow benchmarking the quadratic fallback strategy.
    #[arg(long)]
    allow_oracle: bool,
}

/// Entry point for the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version through this path too.
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match cli.command {
        Cmd::Classify(a) => classify_cmd(a),
        Cmd::Run(a) => run_cmd(a),
        Cmd::Bench(a) => bench_cmd(a),
    }
}

fn load_lang(path: &PathBuf) -> Result<PreparedLang, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file = parse_lang_file(&text).map_err(|e| e.to_string())?;
    prepare(file)
}

fn classify_cmd(args: ClassifyArgs) -> i32 {
    match load_lang(&args.lang) {
        Ok(lang) => {
            print!("{}", render_report(&lang));
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

fn run_cmd(args: RunArgs) -> i32 {
    let lang = match load_lang(&args.lang) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let letters = match lang.file.alphabet.intern(&args.word) {
        Ok(l) if !l.is_empty() => l,
        Ok(_) => {
            eprintln!("error: the word must be non-empty");
            return EXIT_INPUT;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let script_text = match std::fs::read_to_string(&args.script) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", args.script.display());
            return EXIT_INPUT;
        }
    };
    let commands = match parse_script(&script_text, &lang.file.alphabet, letters.len()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    print!("{}", run_script(&lang, Word::new(letters), &commands, args.sorted));
    EXIT_OK
}

fn bench_cmd(args: BenchArgs) -> i32 {
    let lang = match load_lang(&args.lang) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if args.sizes.is_empty() || args.sizes.iter().any(|&n| n < 2) {
        eprintln!("error: --sizes needs lengths of at least 2");
        return EXIT_INPUT;
    }
    let workload = Workload { substitutions: args.ops, ..Workload::default() };
    let name = args
        .lang
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "language".into());
    let mut rows: Vec<BenchRow> = Vec::new();
    for &n in &args.sizes {
        let row = match &lang.strategy {
            Strategy::Semiext(plan) => instrument::profile_enumeration(
                &name,
                &Profiled::Semiext(plan),
                n,
                args.seed,
                workload,
            ),
            Strategy::Adhoc { kind, neutral } => instrument::profile_enumeration(
                &name,
                &Profiled::Adhoc {
                    kind: *kind,
                    alphabet_len: lang.file.alphabet.len(),
                    neutral: neutral.clone(),
                },
                n,
                args.seed,
                workload,
            ),
            Strategy::Simple => {
                let anchor = (0..lang.file.alphabet.len())
                    .find(|&a| !lang.monoid.is_neutral(a))
                    .unwrap_or(0);
                let neutral = lang.report.neutral.first().copied().expect("simple needs a neutral");
                instrument::profile_simple_enum(&name, &lang.monoid, anchor, neutral, n, args.seed)
            }
            Strategy::OracleOnly => {
                if !args.allow_oracle {
                    eprintln!(
                        "error: strategy oracle-only has no complexity guarantees; \
                         pass --allow-oracle to measure it anyway"
                    );
                    return EXIT_UNSUPPORTED;
                }
                Ok(profile_oracle_only(&lang, &name, n, args.seed))
            }
        };
        match row {
            Ok(r) => rows.push(r),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_UNSUPPORTED;
            }
        }
    }
    match instrument::emit_csv(&rows, &args.out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    }
}

/// Quadratic fallback measurement; delays here scale with the word.
fn profile_oracle_only(lang: &PreparedLang, name: &str, n: usize, seed: u64) -> BenchRow {
    use rand::{Rng, SeedableRng};
    let k = lang.file.alphabet.len();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let letters: Vec<Letter> = (0..n).map(|_| rng.gen_range(0..k)).collect();
    let mut meter = instrument::Meter::start();
    let mut index = LetterIndex::build_over(Word::new(letters), k);
    let preprocess_ops = meter.restart();
    let mut m = instrument::Meter::start();
    let results = oracle::brute_enumerate(&lang.file.dfa, index.word());
    let max_delay_ops = m.restart().max(1) / (results.len() as u64 + 1).max(1);
    let mut max_update_ops = 0;
    for _ in 0..50 {
        let pos = rng.gen_range(1..=n);
        let a = rng.gen_range(0..k);
        let mut m = instrument::Meter::start();
        index.apply_substitution(pos, a);
        max_update_ops = max_update_ops.max(m.restart());
    }
    BenchRow {
        language: name.to_string(),
        n,
        seed,
        preprocess_ops,
        max_update_ops,
        max_delay_ops,
        extra_enum_cells: results.len() * 2,
        total_cells: index.cells() + results.len() * 2,
    }
}

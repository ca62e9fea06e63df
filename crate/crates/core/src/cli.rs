//! Command-line front end. [`run`] returns the exit code and the report so
//! the binary stays a thin wrapper and tests can drive the CLI in-process.
//!
//! Exit codes: 0 success or passing verdict, 1 failing verdict, 2 usage,
//! I/O or parse error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::bits::BitString;
use crate::cost::cost_profile;
use crate::decodability::is_k_delay_decodable;
use crate::error::Error;
use crate::followsets::{format_family, format_set, is_extendable, FollowSets};
use crate::io::{parse_code_tuple, parse_distribution, serialize_code_tuple, LabeledDistribution};
use crate::markov::{is_irreducible, is_regular, r_set, stationary_distribution, transition_matrix};
use crate::optimality::check_necessary_condition;
use crate::rational::{format_common_denominator, format_decimal, format_exact, Rational};
use crate::reduce::reduce_to_distinct;
use crate::search::{search_optimal_with, SearchBounds};
use crate::semantics::{decode_delayed, encode_star};
use crate::tuple::{CodeTuple, SourceDistribution};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "delaycode", version, about = "Analyze k-bit delay decodable code-tuples")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Code-tuple file.
    file: PathBuf,
    /// Delay k in bits.
    #[arg(long, default_value_t = 0)]
    delay: usize,
    /// Digits after the decimal point in approximate renderings.
    #[arg(long, default_value_t = 6)]
    decimals: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decodability, extendability and regularity verdicts.
    Validate(Common),
    /// Transition matrix, stationary distribution and average lengths.
    Analyze {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dist: PathBuf,
    },
    /// Encode a source string.
    Encode {
        #[command(flatten)]
        common: Common,
        /// Initial table.
        #[arg(long, default_value_t = 0)]
        table: usize,
        /// Symbols, e.g. `badb` or `"b a d b"`; `-` for the empty string.
        symbols: String,
    },
    /// Decode a bit string with k bits of lookahead.
    Decode {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        table: usize,
        /// Bits, `-` for the empty string.
        bits: String,
    },
    /// k-bit follow sets.
    Pk {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        table: Option<usize>,
        /// Print the continuation sets for this first-codeword prefix.
        #[arg(long)]
        prefix: Option<String>,
    },
    /// Merge tables with identical follow sets without raising the average length.
    Reduce {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dist: PathBuf,
        /// Write the reduced tuple here as well.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check the two-children necessary condition for optimality.
    Necessary {
        #[command(flatten)]
        common: Common,
        /// Accepted for symmetry with the other subcommands; not used.
        #[arg(long)]
        dist: Option<PathBuf>,
    },
    /// Search for a short code-tuple within bounds.
    Search {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long, default_value_t = 0)]
        delay: usize,
        #[arg(long, default_value_t = 1)]
        max_tables: usize,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Enumerate the whole bounded space instead of local search.
        #[arg(long)]
        exhaustive: bool,
        /// Disable branch-and-bound cuts (exhaustive mode only).
        #[arg(long)]
        no_pruning: bool,
        /// Starting points for local search.
        #[arg(long = "seed")]
        seeds: Vec<PathBuf>,
        /// Worker threads; results do not depend on this.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, default_value_t = 6)]
        decimals: usize,
    },
}

/// Failure that ends a command: exit code plus message.
struct Stop(i32, String);

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. }
            | Error::InvalidCodeTuple(_)
            | Error::InvalidDistribution(_)
            | Error::InvalidBounds(_)
            | Error::IndexOutOfRange { .. }
            | Error::NotAPrefix { .. }
            | Error::EmptySequence
            | Error::DepthTooLarge(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        };
        Stop(code, format!("error: {e}\n"))
    }
}

type Outcome = std::result::Result<(i32, String), Stop>;

pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(Stop(code, msg)) => (code, msg),
    }
}

fn read(path: &Path) -> std::result::Result<String, Stop> {
    std::fs::read_to_string(path).map_err(|e| Stop(EXIT_USAGE, format!("error: cannot read {}: {e}\n", path.display())))
}

fn load_tuple(path: &Path) -> std::result::Result<CodeTuple, Stop> {
    parse_code_tuple(&read(path)?).map_err(|e| Stop(EXIT_USAGE, format!("error: {}: {e}\n", path.display())))
}

fn load_dist(path: &Path) -> std::result::Result<LabeledDistribution, Stop> {
    parse_distribution(&read(path)?).map_err(|e| Stop(EXIT_USAGE, format!("error: {}: {e}\n", path.display())))
}

fn load_dist_for(path: &Path, f: &CodeTuple) -> std::result::Result<SourceDistribution, Stop> {
    Ok(load_dist(path)?.aligned_to(f)?)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn exact_list(v: &[Rational]) -> String {
    v.iter().map(format_exact).collect::<Vec<_>>().join(" ")
}

fn with_decimal(r: &Rational, places: usize) -> String {
    format!("{} ({})", format_exact(r), format_decimal(r, places))
}

fn index_set<'a>(items: impl IntoIterator<Item = &'a usize>) -> String {
    let v: Vec<String> = items.into_iter().map(ToString::to_string).collect();
    format!("{{{}}}", v.join(", "))
}

fn parse_bits(text: &str) -> std::result::Result<BitString, Stop> {
    text.parse()
        .map_err(|_| Stop(EXIT_USAGE, format!("error: invalid bit string {text:?}\n")))
}

fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Validate(c) => validate(&c),
        Command::Analyze { common, dist } => analyze(&common, &dist),
        Command::Encode { common, table, symbols } => {
            let f = load_tuple(&common.file)?;
            let x = f.parse_symbols(&symbols)?;
            let r = encode_star(&f, table, &x)?;
            let mut out = String::new();
            let _ = writeln!(out, "codeword = {}", r.codeword);
            let _ = writeln!(out, "bits = {}", r.codeword.len());
            let _ = writeln!(out, "final table = {}", r.final_table);
            Ok((EXIT_OK, out))
        }
        Command::Decode { common, table, bits } => {
            let f = load_tuple(&common.file)?;
            let c = parse_bits(&bits)?;
            let r = decode_delayed(&f, table, common.delay, &c)?;
            let mut out = String::new();
            let _ = writeln!(out, "decoded = {}", f.format_symbols(&r.decoded));
            let _ = writeln!(out, "bits consumed = {}", r.bits_consumed);
            let _ = writeln!(out, "ambiguous tail: {}", yes(r.ambiguous_tail));
            Ok((EXIT_OK, out))
        }
        Command::Pk { common, table, prefix } => pk(&common, table, prefix.as_deref()),
        Command::Reduce { common, dist, output } => reduce(&common, &dist, output.as_deref()),
        Command::Necessary { common, dist } => {
            let f = load_tuple(&common.file)?;
            if let Some(d) = dist {
                load_dist_for(&d, &f)?;
            }
            let v = check_necessary_condition(&f, common.delay)?;
            let mut out = String::new();
            let _ = writeln!(
                out,
                "necessary condition (k = {}): {}",
                common.delay,
                if v.passes { "pass" } else { "fail" }
            );
            if let Some(w) = &v.witness {
                let _ = writeln!(
                    out,
                    "witness: table {}, b = {} has an achievable {}-bit prefix but is not achievable",
                    w.table, w.bits, common.delay
                );
            }
            Ok((if v.passes { EXIT_OK } else { EXIT_FAIL }, out))
        }
        Command::Search {
            dist,
            delay,
            max_tables,
            max_len,
            exhaustive,
            no_pruning,
            seeds,
            jobs,
            decimals,
        } => {
            let d = load_dist(&dist)?;
            let seeds = seeds
                .iter()
                .map(|p| load_tuple(p))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let bounds = SearchBounds {
                max_tables,
                max_codeword_len: max_len,
                exhaustive,
                pruning: !no_pruning,
            };
            let go = || search_optimal_with(&d.labels, &d.dist, delay, &bounds, &seeds);
            let result = match jobs {
                Some(n) => rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| Stop(EXIT_USAGE, format!("error: cannot start {n} workers: {e}\n")))?
                    .install(go),
                None => go(),
            }?;
            let mut out = String::new();
            let scope = if result.complete {
                "optimal within bounds"
            } else {
                "best found by local search"
            };
            let _ = writeln!(
                out,
                "search: {scope} (k = {delay}, max tables {max_tables}, max codeword length {max_len})"
            );
            let _ = writeln!(out, "explored = {}", result.explored);
            let _ = writeln!(out, "L = {}", with_decimal(&result.best_length, decimals));
            out.push_str(&serialize_code_tuple(&result.best));
            Ok((EXIT_OK, out))
        }
    }
}

fn validate(c: &Common) -> Outcome {
    let f = load_tuple(&c.file)?;
    let k = c.delay;
    let v = is_k_delay_decodable(&f, k)?;
    let mut out = String::new();
    let _ = writeln!(out, "{k}-bit delay decodable: {}", yes(v.decodable));
    if let Some(w) = &v.witness {
        let _ = writeln!(out, "witness: {}", w.describe(&f));
    }
    let _ = writeln!(out, "extendable: {}", yes(is_extendable(&f)));
    let _ = writeln!(out, "regular: {}", yes(is_regular(&f)));
    let _ = writeln!(out, "irreducible: {}", yes(is_irreducible(&f)));
    let _ = writeln!(out, "R_F = {}", index_set(&r_set(&f)));
    Ok((if v.decodable { EXIT_OK } else { EXIT_FAIL }, out))
}

fn analyze(c: &Common, dist: &Path) -> Outcome {
    let f = load_tuple(&c.file)?;
    let mu = load_dist_for(dist, &f)?;
    let places = c.decimals;
    let mut out = String::new();
    let _ = writeln!(out, "tables = {}", f.num_tables());
    let _ = writeln!(out, "R_F = {}", index_set(&r_set(&f)));
    let _ = writeln!(out, "regular: {}", yes(is_regular(&f)));
    let _ = writeln!(out, "irreducible: {}", yes(is_irreducible(&f)));
    for (i, row) in transition_matrix(&f, &mu)?.iter().enumerate() {
        let _ = writeln!(out, "Q[{i}] = {}", exact_list(row));
    }
    if !is_regular(&f) {
        let _ = writeln!(out, "pi: not unique (R_F is empty)");
        return Ok((EXIT_FAIL, out));
    }
    let pi = stationary_distribution(&f, &mu)?;
    let _ = writeln!(out, "pi = {}", format_common_denominator(&pi));
    let profile = cost_profile(&f, &mu)?;
    for (i, l) in profile.table_lengths.iter().enumerate() {
        let _ = writeln!(out, "L_{i} = {}", with_decimal(l, places));
    }
    let _ = writeln!(out, "L = {}", with_decimal(&profile.average, places));
    if let Some(h) = &profile.bias {
        let _ = writeln!(out, "h = {}", exact_list(h));
    }
    Ok((EXIT_OK, out))
}

fn pk(c: &Common, table: Option<usize>, prefix: Option<&str>) -> Outcome {
    let f = load_tuple(&c.file)?;
    let k = c.delay;
    let w = FollowSets::build(&f, k)?;
    let mut out = String::new();
    let tables: Vec<usize> = match table {
        Some(i) => {
            f.check_table(i)?;
            vec![i]
        }
        None => (0..f.num_tables()).collect(),
    };
    for &i in &tables {
        match prefix {
            None => {
                let _ = writeln!(out, "P^{k}[{i}] = {}", format_set(w.top(i)));
            }
            Some(p) => {
                let b = parse_bits(p)?;
                let _ = writeln!(
                    out,
                    "P^{k}[{i}]({b}) = {}",
                    format_set(&w.continuations(&f, i, k, &b, false))
                );
                let _ = writeln!(
                    out,
                    "Pbar^{k}[{i}]({b}) = {}",
                    format_set(&w.continuations(&f, i, k, &b, true))
                );
            }
        }
    }
    if table.is_none() && prefix.is_none() {
        let _ = writeln!(out, "family = {}", format_family(&w.family()));
    }
    Ok((EXIT_OK, out))
}

fn reduce(c: &Common, dist: &Path, output: Option<&Path>) -> Outcome {
    let f = load_tuple(&c.file)?;
    let mu = load_dist_for(dist, &f)?;
    let (g, trace) = reduce_to_distinct(&f, &mu, c.delay)?;
    let mut out = String::new();
    for (n, step) in trace.steps.iter().enumerate() {
        let _ = writeln!(
            out,
            "step {}: dropped {}, merged {} into {}, L {} -> {}",
            n + 1,
            index_set(&step.dropped),
            index_set(&step.merged_class),
            step.representative,
            format_exact(&step.length_before),
            format_exact(&step.length_after)
        );
    }
    if !trace.final_dropped.is_empty() {
        let _ = writeln!(out, "final: dropped {}", index_set(&trace.final_dropped));
    }
    let before = crate::cost::average_length(&f, &mu)?;
    let after = crate::cost::average_length(&g, &mu)?;
    let _ = writeln!(out, "tables {} -> {}", f.num_tables(), g.num_tables());
    let _ = writeln!(
        out,
        "L {} -> {}",
        with_decimal(&before, c.decimals),
        with_decimal(&after, c.decimals)
    );
    let text = serialize_code_tuple(&g);
    if let Some(path) = output {
        std::fs::write(path, &text)
            .map_err(|e| Stop(EXIT_USAGE, format!("error: cannot write {}: {e}\n", path.display())))?;
    }
    out.push_str(&text);
    Ok((EXIT_OK, out))
}

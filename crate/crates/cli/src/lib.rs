//! `seqlab` command-line workbench: sequence generation with an on-disk
//! cache, oracle checks, recurrence guessing and extension, growth reports,
//! the Bessel determinant check, and OEIS lookup.
//!
//! Exit codes: 0 success, 1 failed check or runtime error, 2 usage error.

pub mod cache;
pub mod oeis;

use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use seqlab_core::asymptotics::{
    conjectured_params, empirical_growth, estimate_constant_with, ConstantEstimate, ExtrapolationConfig, GrowthFit,
};
use seqlab_core::bfile;
use seqlab_core::brute::{brute_count, exceeds_budget, DEFAULT_BUDGET};
use seqlab_core::gessel::gessel_check;
use seqlab_core::holonomy::{self, PRecurrence};
use seqlab_core::tableau::{avoiders_count, AvoiderSequencer};

use cache::{Cache, Provenance, SequenceRecord, StoreOutcome};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "seqlab", version, about = "Exact counts of 12...d-avoiding words with r copies of each letter")]
struct Cli {
    /// Output format for term lists.
    #[arg(long, global = true, value_enum, default_value_t = Format::Bfile)]
    format: Format,
    /// Cache directory for computed sequences.
    #[arg(long, global = true, env = "SEQLAB_CACHE", default_value = cache::DEFAULT_DIR)]
    cache_dir: PathBuf,
    /// Report DP work on stderr.
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Bfile,
    Csv,
    Plain,
}

#[derive(Debug, Args)]
struct Key {
    /// Forbidden pattern length (the pattern is 12...d).
    #[arg(long)]
    d: usize,
    /// Copies of each letter.
    #[arg(long)]
    r: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print A_{d,r}(0..=nmax), reusing and extending the cache.
    Seq {
        #[command(flatten)]
        key: Key,
        #[arg(long)]
        nmax: usize,
    },
    /// Print A_{d,r}(n) from the RSK sum.
    Count {
        #[command(flatten)]
        key: Key,
        #[arg(long)]
        n: usize,
    },
    /// Print A_{d,r}(n) by brute-force enumeration.
    Oracle {
        #[command(flatten)]
        key: Key,
        #[arg(long)]
        n: usize,
    },
    /// Compare the RSK sum with the brute-force oracle over a grid.
    Check {
        /// Single d to check (default 3, 4 and 5).
        #[arg(long)]
        d: Option<usize>,
        /// Single r to check (default 1, 2 and 3).
        #[arg(long)]
        r: Option<usize>,
        /// Largest n (default: as far as the budget allows).
        #[arg(long)]
        nmax: Option<usize>,
        /// Skip instances with more words than this.
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Guess a recurrence and print it in recurrence text format.
    Guess {
        #[command(flatten)]
        source: TermSource,
        #[arg(long, default_value_t = 3)]
        max_order: usize,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Held-out terms (default: a quarter, at least 4).
        #[arg(long)]
        holdout: Option<usize>,
    },
    /// Extend a seed with a recurrence read from a file.
    Extend {
        /// Recurrence in recurrence text format.
        #[arg(long)]
        rec: PathBuf,
        #[command(flatten)]
        source: TermSource,
        #[arg(long)]
        nmax: usize,
        /// Also store the result in the cache (requires --d/--r).
        #[arg(long)]
        store: bool,
    },
    /// Growth parameters, least-squares fit, and constant extrapolation.
    Asym {
        #[command(flatten)]
        key: Key,
        #[arg(long, default_value_t = 300)]
        nmax: usize,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 8)]
        stride: usize,
    },
    /// Check the Bessel determinant identity for permutations.
    Gessel {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        nmax: usize,
    },
    /// Look terms up in the OEIS.
    Oeis {
        /// Comma-separated terms (alternatively --d/--r/--nmax).
        #[arg(long)]
        terms: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        nmax: Option<usize>,
        /// Local `stripped` dump instead of the web search.
        #[arg(long)]
        local: Option<PathBuf>,
        /// Local `names` file to label local matches.
        #[arg(long, requires = "local")]
        names: Option<PathBuf>,
        #[arg(long, env = "SEQLAB_OEIS_URL", default_value = oeis::DEFAULT_URL, hide = true)]
        oeis_url: String,
    },
}

/// Terms from a b-file, or computed for `(d, r)`.
#[derive(Debug, Args)]
struct TermSource {
    /// Read terms from a b-file.
    #[arg(long, conflicts_with_all = ["d", "r"])]
    input: Option<PathBuf>,
    #[arg(long, requires = "r")]
    d: Option<usize>,
    #[arg(long, requires = "d")]
    r: Option<usize>,
    /// Number of terms to compute when using --d/--r.
    #[arg(long)]
    n: Option<usize>,
}

/// Runtime failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn runtime(message: impl ToString) -> Self {
        Failure { code: EXIT_FAILURE, message: message.to_string() }
    }
}

type Outcome = Result<i32, Failure>;

struct Ctx<'a> {
    format: Format,
    cache: Cache,
    stats: bool,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Parses `args` (including the program name) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let code = e.exit_code();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut ctx = Ctx {
        format: cli.format,
        cache: Cache::new(cli.cache_dir),
        stats: cli.stats,
        out,
        err,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(ctx.err, "error: {}", f.message);
            if f.code == EXIT_USAGE {
                let _ = writeln!(ctx.err, "usage: seqlab <seq|count|oracle|check|guess|extend|asym|gessel|oeis> [--d D] [--r R] [--n N] [--nmax N] [--format bfile|csv|plain] [--cache-dir DIR] [--stats]");
            }
            f.code
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Outcome {
    match command {
        Command::Seq { key, nmax } => cmd_seq(ctx, &key, nmax),
        Command::Count { key, n } => {
            check_key(&key)?;
            emit_line(ctx, &avoiders_count(key.d, key.r, n).to_string())
        }
        Command::Oracle { key, n } => {
            check_key(&key)?;
            if exceeds_budget(key.r, n, DEFAULT_BUDGET) {
                let _ = writeln!(ctx.err, "warning: brute force over more than {DEFAULT_BUDGET} words");
            }
            emit_line(ctx, &brute_count(key.d, key.r, n).to_string())
        }
        Command::Check { d, r, nmax, budget } => cmd_check(ctx, d, r, nmax, budget),
        Command::Guess { source, max_order, max_degree, holdout } => {
            cmd_guess(ctx, &source, max_order, max_degree, holdout)
        }
        Command::Extend { rec, source, nmax, store } => cmd_extend(ctx, &rec, &source, nmax, store),
        Command::Asym { key, nmax, levels, stride } => cmd_asym(ctx, &key, nmax, ExtrapolationConfig { stride, levels }),
        Command::Gessel { k, nmax } => {
            if k == 0 {
                return Err(Failure::usage("--k must be at least 1"));
            }
            let report = gessel_check(k, nmax);
            write_out(ctx, &report.render())?;
            Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Oeis { terms, d, r, nmax, local, names, oeis_url } => {
            cmd_oeis(ctx, terms, d, r, nmax, local, names, &oeis_url)
        }
    }
}

fn check_key(key: &Key) -> Result<(), Failure> {
    check_dr(key.d, key.r)
}

fn check_dr(d: usize, r: usize) -> Result<(), Failure> {
    if d < 2 {
        return Err(Failure::usage(format!("--d must be at least 2, got {d}")));
    }
    if r == 0 {
        return Err(Failure::usage("--r must be positive"));
    }
    Ok(())
}

fn write_out(ctx: &mut Ctx<'_>, text: &str) -> Result<(), Failure> {
    ctx.out.write_all(text.as_bytes()).map_err(Failure::runtime)
}

fn emit_line(ctx: &mut Ctx<'_>, line: &str) -> Outcome {
    write_out(ctx, &format!("{line}\n"))?;
    Ok(EXIT_OK)
}

fn render_terms(format: Format, terms: &[BigUint]) -> String {
    match format {
        Format::Bfile => bfile::format_terms(terms),
        Format::Csv => {
            let mut s = String::from("n,a(n)\n");
            for (n, t) in terms.iter().enumerate() {
                s.push_str(&format!("{n},{t}\n"));
            }
            s
        }
        Format::Plain => terms.iter().map(|t| format!("{t}\n")).collect(),
    }
}

/// `A_{d,r}(0..=nmax)` through the cache. Resumes from the stored layer
/// checkpoint when it matches the cached record, so cached prefixes are not
/// recomputed.
fn cached_sequence(ctx: &mut Ctx<'_>, d: usize, r: usize, nmax: usize) -> Result<Vec<BigUint>, Failure> {
    let cached = ctx.cache.load(d, r).map_err(Failure::runtime)?;
    let cached_len = cached.as_ref().map_or(0, |c| c.terms.len());
    if let Some(rec) = cached.as_ref().filter(|c| c.terms.len() > nmax) {
        if ctx.stats {
            let _ = writeln!(ctx.err, "stats: cached_terms={cached_len} layers_computed=0");
        }
        return Ok(rec.terms[..=nmax].to_vec());
    }

    let checkpoint = match ctx.cache.load_layer(d, r) {
        Ok(table) => table,
        Err(e) => {
            let _ = writeln!(ctx.err, "warning: ignoring layer checkpoint: {e}");
            None
        }
    };
    let (mut seq, mut terms) = match (cached, checkpoint) {
        (Some(rec), Some(table)) if rec.provenance == Provenance::Computed && table.layer() + 1 == rec.terms.len() => {
            (AvoiderSequencer::resume(d, r, table), rec.terms)
        }
        _ => {
            let seq = AvoiderSequencer::new(d, r);
            let first = seq.current();
            (seq, vec![first])
        }
    };
    let resumed_from = seq.index();
    while terms.len() <= nmax {
        terms.push(seq.advance());
    }
    if ctx.stats {
        let _ = writeln!(
            ctx.err,
            "stats: cached_terms={cached_len} resumed_from_layer={resumed_from} layers_computed={}",
            seq.layers_computed()
        );
    }
    let record = SequenceRecord::new(d, r, terms.clone(), Provenance::Computed).map_err(Failure::runtime)?;
    match ctx.cache.store(&record).map_err(Failure::runtime)? {
        StoreOutcome::Written => {
            ctx.cache.store_layer(d, r, seq.table()).map_err(Failure::runtime)?;
        }
        StoreOutcome::KeptExisting { existing_len } => {
            let _ = writeln!(ctx.err, "notice: cache keeps the longer record ({existing_len} terms)");
        }
    }
    Ok(terms)
}

fn cmd_seq(ctx: &mut Ctx<'_>, key: &Key, nmax: usize) -> Outcome {
    check_key(key)?;
    let terms = cached_sequence(ctx, key.d, key.r, nmax)?;
    write_out(ctx, &render_terms(ctx.format, &terms))?;
    Ok(EXIT_OK)
}

fn cmd_check(ctx: &mut Ctx<'_>, d: Option<usize>, r: Option<usize>, nmax: Option<usize>, budget: u64) -> Outcome {
    let ds: Vec<usize> = d.map_or(vec![3, 4, 5], |d| vec![d]);
    let rs: Vec<usize> = r.map_or(vec![1, 2, 3], |r| vec![r]);
    for &d in &ds {
        for &r in &rs {
            check_dr(d, r)?;
        }
    }
    let mut failures = 0;
    let mut checked = 0;
    for &d in &ds {
        for &r in &rs {
            let mut n = 0;
            while nmax.is_none_or(|m| n <= m) && !exceeds_budget(r, n, budget) {
                let formula = avoiders_count(d, r, n);
                let oracle = brute_count(d, r, n);
                let verdict = if formula == oracle { "ok" } else { "MISMATCH" };
                if formula != oracle {
                    failures += 1;
                }
                checked += 1;
                write_out(ctx, &format!("{verdict} d={d} r={r} n={n} formula={formula} oracle={oracle}\n"))?;
                n += 1;
            }
        }
    }
    let verdict = if failures == 0 { "PASS" } else { "FAIL" };
    write_out(ctx, &format!("{verdict} {checked} instances, {failures} mismatches\n"))?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_FAILURE })
}

fn source_terms(ctx: &mut Ctx<'_>, source: &TermSource, default_len: Option<usize>) -> Result<Vec<BigUint>, Failure> {
    match (&source.input, source.d, source.r) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))?;
            let mut terms = bfile::parse(&text)
                .map_err(|e| Failure::runtime(format!("{}: {e}", path.display())))?
                .terms;
            if let Some(n) = source.n {
                terms.truncate(n);
            }
            Ok(terms)
        }
        (None, Some(d), Some(r)) => {
            check_dr(d, r)?;
            let len = source
                .n
                .or(default_len)
                .ok_or_else(|| Failure::usage("--n is required with --d/--r"))?;
            if len == 0 {
                return Err(Failure::usage("--n must be positive"));
            }
            cached_sequence(ctx, d, r, len - 1)
        }
        _ => Err(Failure::usage("give --input FILE or --d D --r R")),
    }
}

fn cmd_guess(
    ctx: &mut Ctx<'_>,
    source: &TermSource,
    max_order: usize,
    max_degree: usize,
    holdout: Option<usize>,
) -> Outcome {
    let terms = source_terms(ctx, source, Some(40))?;
    let holdout = holdout.unwrap_or_else(|| holonomy::default_holdout(terms.len()));
    match holonomy::guess(&terms, max_order, max_degree, holdout) {
        Ok(Some(rec)) => {
            let _ = writeln!(ctx.err, "found: {rec}");
            write_out(ctx, &rec.to_text())?;
            Ok(EXIT_OK)
        }
        Ok(None) => {
            write_out(
                ctx,
                &format!(
                    "no recurrence with order <= {max_order} and degree <= {max_degree} fits {} terms (holdout {holdout}); this is not evidence against one existing\n",
                    terms.len()
                ),
            )?;
            Ok(EXIT_FAILURE)
        }
        Err(e) => Err(Failure::runtime(e)),
    }
}

fn cmd_extend(ctx: &mut Ctx<'_>, rec_path: &PathBuf, source: &TermSource, nmax: usize, store: bool) -> Outcome {
    let text = std::fs::read_to_string(rec_path)
        .map_err(|e| Failure::runtime(format!("{}: {e}", rec_path.display())))?;
    let rec = PRecurrence::from_str(&text).map_err(|e| Failure::runtime(format!("{}: {e}", rec_path.display())))?;
    let default_seed = rec.order() + rec.offset();
    let seed = source_terms(ctx, source, Some(default_seed))?;
    let terms = holonomy::extend(&rec, &seed, nmax).map_err(Failure::runtime)?;
    if store {
        let (Some(d), Some(r)) = (source.d, source.r) else {
            return Err(Failure::usage("--store needs --d and --r"));
        };
        let record = SequenceRecord::new(d, r, terms.clone(), Provenance::ExtendedByRecurrence).map_err(Failure::runtime)?;
        if let StoreOutcome::KeptExisting { existing_len } = ctx.cache.store(&record).map_err(Failure::runtime)? {
            let _ = writeln!(ctx.err, "notice: cache keeps the longer record ({existing_len} terms)");
        }
    }
    write_out(ctx, &render_terms(ctx.format, &terms))?;
    Ok(EXIT_OK)
}

fn cmd_asym(ctx: &mut Ctx<'_>, key: &Key, nmax: usize, config: ExtrapolationConfig) -> Outcome {
    check_key(key)?;
    let terms = cached_sequence(ctx, key.d, key.r, nmax)?;
    let params = conjectured_params(key.d, key.r);
    let mut report = format!(
        "# d={} r={} terms=0..{}\n# conjectured mu={} alpha={}\n",
        key.d, key.r, nmax, params.mu, params.alpha
    );
    match empirical_growth::<f64>(&terms) {
        Ok(GrowthFit { mu_hat, alpha_hat, .. }) => {
            report.push_str(&format!("# fitted (tail half) mu_hat={mu_hat:.9} alpha_hat={alpha_hat:.9}\n"));
        }
        Err(e) => report.push_str(&format!("# fit skipped: {e}\n")),
    }
    let est: ConstantEstimate<f64> =
        estimate_constant_with(&terms, &params, config).map_err(Failure::runtime)?;
    for (j, v) in est.ladder.iter().enumerate() {
        report.push_str(&format!("# level{} estimate C={v:.12}\n", j + 1));
    }
    report.push_str(&est.report());
    write_out(ctx, &report)?;
    Ok(EXIT_OK)
}

#[allow(clippy::too_many_arguments)]
fn cmd_oeis(
    ctx: &mut Ctx<'_>,
    terms: Option<String>,
    d: Option<usize>,
    r: Option<usize>,
    nmax: Option<usize>,
    local: Option<PathBuf>,
    names: Option<PathBuf>,
    url: &str,
) -> Outcome {
    let query: Vec<BigUint> = match (terms, d, r) {
        (Some(list), None, None) => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| BigUint::from_str(s).map_err(|_| Failure::usage(format!("bad term {s:?}"))))
            .collect::<Result<_, _>>()?,
        (None, Some(d), Some(r)) => {
            check_dr(d, r)?;
            // skip the leading 1s, which match nearly everything
            let all = cached_sequence(ctx, d, r, nmax.unwrap_or(12))?;
            all.into_iter().skip(1).collect()
        }
        _ => return Err(Failure::usage("give --terms LIST or --d D --r R")),
    };
    if query.is_empty() {
        return Err(Failure::usage("no query terms given"));
    }
    let matches = match &local {
        Some(path) => oeis::lookup_local(&query, path, names.as_deref()),
        None => oeis::lookup_remote(&query, url),
    }
    .map_err(Failure::runtime)?;
    if matches.is_empty() {
        write_out(ctx, "no matches\n")?;
    }
    for m in matches {
        write_out(ctx, &format!("{m}\n"))?;
    }
    Ok(EXIT_OK)
}

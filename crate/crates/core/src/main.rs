//! Command-line interface: run searches, verify claimed spoof tuples,
//! evaluate the Robin bounds, and reproduce the published result table.
//!
//! Exit codes: 0 success/match, 1 verification or diff failure, 2 usage
//! error, 3 resource error.

use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};

use spoof_search::cli::{
    diff_against_golden, format_significant, golden_subset, render_records, reproduction_config,
    OutputFormat, ResultRecord, CSV_HEADER,
};
use spoof_search::robin::{descartes_check, expected_threshold, robin_check, threshold_displayable, RobinReport};
use spoof_search::search::{search_with_progress, SearchConfig, SearchReport};
use spoof_search::spoof::{classify, verify_spoof, SpoofNumber};
use spoof_search::Error;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "spoof-search",
    about = "Search for, verify, and classify odd spoof multiperfect numbers of higher order",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively search a range of n for spoof k-perfect numbers.
    Search(SearchArgs),
    /// Verify a claimed spoof tuple s = n*x with sigma(n)*S_alpha(x) = k*n*x.
    Verify {
        s: u64,
        n: u64,
        x: u64,
        k: u64,
        alpha: u32,
    },
    /// Reproduce the published 14-row result table and diff against it.
    Table(TableArgs),
    /// Evaluate the spoof Robin bound for a tuple, or its Descartes form.
    Robin(RobinArgs),
    /// Print the heuristic appearance threshold for k-perfect numbers.
    Threshold { k: u64 },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Table,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> OutputFormat {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Table => OutputFormat::Table,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Lower bound of the n range.
    #[arg(long, default_value_t = 2)]
    n_min: u64,
    /// Upper bound of the n range (canonical run: 16000000).
    #[arg(long, default_value_t = 16_000_000)]
    n_max: u64,
    /// Largest perfection multiplier k to test.
    #[arg(long, default_value_t = 512)]
    k_max: u64,
    /// Largest pretended multiplicity alpha to test.
    #[arg(long, default_value_t = 10)]
    alpha_max: u32,
    /// Keep only odd s. Pass =false to disable.
    #[arg(long, action = ArgAction::Set, default_value_t = true,
          num_args = 0..=1, default_missing_value = "true")]
    odd_only: bool,
    /// Keep only prime spoof factors x. Pass =false to disable.
    #[arg(long, action = ArgAction::Set, default_value_t = true,
          num_args = 0..=1, default_missing_value = "true")]
    require_x_prime: bool,
    /// Keep only x coprime to n. Pass =false to disable.
    #[arg(long, action = ArgAction::Set, default_value_t = true,
          num_args = 0..=1, default_missing_value = "true")]
    require_x_coprime: bool,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Worker threads (0 = one per logical cpu).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Sieve segment length per block.
    #[arg(long, default_value_t = 1 << 16)]
    block_size: u64,
    /// Report completed blocks and streamed hits on stderr.
    #[arg(long, action = ArgAction::SetTrue)]
    progress: bool,
}

impl SearchArgs {
    fn to_config(&self) -> SearchConfig {
        SearchConfig {
            n_min: self.n_min,
            n_max: self.n_max,
            k_max: self.k_max,
            alpha_max: self.alpha_max,
            odd_only: self.odd_only,
            require_x_prime: self.require_x_prime,
            require_x_coprime: self.require_x_coprime,
            block_size: self.block_size,
        }
    }
}

#[derive(Args)]
struct TableArgs {
    /// Restrict to n <= 100000 and the 11-row golden subset.
    #[arg(long, action = ArgAction::SetTrue)]
    fast: bool,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value_t = 1 << 16)]
    block_size: u64,
    #[arg(long, action = ArgAction::SetTrue)]
    progress: bool,
}

#[derive(Args)]
#[command(about = "robin S N X K ALPHA, or robin --descartes N X")]
struct RobinArgs {
    /// Evaluate the Descartes bound 2x/(x+1) for the two arguments N X.
    #[arg(long, action = ArgAction::SetTrue)]
    descartes: bool,
    args: Vec<u64>,
}

fn exit_for(err: &Error) -> u8 {
    if err.is_resource() {
        EXIT_RESOURCE
    } else {
        EXIT_USAGE
    }
}

fn run_search(config: &SearchConfig, threads: usize, progress: bool) -> Result<SearchReport, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| {
        search_with_progress(config, |p| {
            // streaming side channel; the deterministic recap goes to stdout
            for h in &p.block_hits {
                eprintln!("found: {}", ResultRecord::from_spoof(h).to_csv_line());
            }
            if progress {
                eprintln!(
                    "block [{}, {}] done ({}/{} blocks, {} hits so far)",
                    p.block.0, p.block.1, p.blocks_done, p.blocks_total, p.hits_so_far
                );
            }
        })
    })
}

fn cmd_search(args: &SearchArgs) -> u8 {
    let config = args.to_config();
    match run_search(&config, args.threads, args.progress) {
        Ok(report) => {
            let records: Vec<ResultRecord> =
                report.results.iter().map(ResultRecord::from_spoof).collect();
            print!("{}", render_records(&records, args.format.into()));
            eprintln!(
                "scanned n in [{}, {}], k <= {}, alpha <= {}: {} result(s) in {:.2?}",
                config.n_min,
                config.n_max,
                config.k_max,
                config.alpha_max,
                report.results.len(),
                report.elapsed
            );
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}

fn cmd_verify(s: u64, n: u64, x: u64, k: u64, alpha: u32) -> u8 {
    if n < 2 || x < 2 || k < 2 || alpha < 1 {
        eprintln!("error: need n >= 2, x >= 2, k >= 2, alpha >= 1");
        return EXIT_USAGE;
    }
    if s != n * x {
        println!("INVALID: s = {s} but n*x = {}", n * x);
        return EXIT_FAIL;
    }
    let (x_is_prime, x_coprime_n, s_odd) = classify(n, x);
    let candidate = SpoofNumber {
        s,
        n,
        x,
        k,
        alpha,
        x_is_prime,
        x_coprime_n,
        s_odd,
    };
    match verify_spoof(&candidate) {
        Ok(true) => {
            println!("VALID: sigma({n}) * S_{alpha}({x}) = {k} * {n} * {x} = {k} * {s}");
            0
        }
        Ok(false) => {
            println!("INVALID: sigma({n}) * S_{alpha}({x}) != {k} * {n} * {x}");
            EXIT_FAIL
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn cmd_table(args: &TableArgs) -> u8 {
    let config = SearchConfig {
        block_size: args.block_size,
        ..reproduction_config(args.fast)
    };
    let report = match run_search(&config, args.threads, args.progress) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_for(&e);
        }
    };
    let golden = golden_subset(config.n_max);
    let diff = diff_against_golden(&report.results, &golden);
    for row in &diff.missing {
        println!("MISSING: (s={}, n={}, x={}, k={}, alpha={})", row.0, row.1, row.2, row.3, row.4);
    }
    for row in &diff.extra {
        println!("EXTRA:   (s={}, n={}, x={}, k={}, alpha={})", row.0, row.1, row.2, row.3, row.4);
    }
    println!("{}/{} rows matched", diff.matched, diff.expected);
    if diff.is_match() {
        0
    } else {
        EXIT_FAIL
    }
}

fn print_robin(report: &RobinReport) {
    println!(
        "lhs = {}/{} = {}",
        report.lhs_num,
        report.lhs_den,
        format_significant(report.lhs)
    );
    println!(
        "rhs = e^gamma * ln ln n = {} (gamma = {})",
        format_significant(report.rhs),
        report.gamma_used
    );
    println!("applicable = {}", report.applicable);
    let verdict = if report.borderline {
        "BORDERLINE"
    } else if report.satisfied {
        "satisfied"
    } else {
        "violated"
    };
    println!("bound (conditional on RH) = {verdict}");
}

fn cmd_robin(args: &RobinArgs) -> u8 {
    if args.descartes {
        let [n, x] = args.args[..] else {
            eprintln!("error: robin --descartes takes exactly N X");
            return EXIT_USAGE;
        };
        if n < 2 || x < 2 {
            eprintln!("error: need n >= 2 and x >= 2");
            return EXIT_USAGE;
        }
        print_robin(&descartes_check(n, x));
        return 0;
    }
    let [s, n, x, k, alpha] = args.args[..] else {
        eprintln!("error: robin takes exactly S N X K ALPHA (or --descartes N X)");
        return EXIT_USAGE;
    };
    let Ok(alpha) = u32::try_from(alpha) else {
        eprintln!("error: alpha out of range");
        return EXIT_USAGE;
    };
    if n < 2 || x < 2 || k < 2 || alpha < 1 {
        eprintln!("error: need n >= 2, x >= 2, k >= 2, alpha >= 1");
        return EXIT_USAGE;
    }
    let (x_is_prime, x_coprime_n, s_odd) = classify(n, x);
    let candidate = SpoofNumber {
        s,
        n,
        x,
        k,
        alpha,
        x_is_prime,
        x_coprime_n,
        s_odd,
    };
    if s != n * x || !matches!(verify_spoof(&candidate), Ok(true)) {
        println!("INVALID: the claimed tuple is not a spoof k-perfect number");
        return EXIT_FAIL;
    }
    print_robin(&robin_check(&candidate));
    0
}

fn cmd_threshold(k: u64) -> u8 {
    if k < 2 {
        eprintln!("error: need k >= 2");
        return EXIT_USAGE;
    }
    let t = expected_threshold(k);
    println!("ln ln n > {}", format_significant(t));
    match threshold_displayable(t) {
        Some(v) => println!("expected first k-perfect n > {v:.0}"),
        None => println!("expected first k-perfect n > e^e^{} (not displayable)", format_significant(t)),
    }
    0
}

fn main() -> ExitCode {
    // keep the csv header in sync with the record struct
    debug_assert_eq!(CSV_HEADER.split(',').count(), 11);
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Search(args) => cmd_search(args),
        Command::Verify { s, n, x, k, alpha } => cmd_verify(*s, *n, *x, *k, *alpha),
        Command::Table(args) => cmd_table(args),
        Command::Robin(args) => cmd_robin(args),
        Command::Threshold { k } => cmd_threshold(*k),
    };
    ExitCode::from(code)
}

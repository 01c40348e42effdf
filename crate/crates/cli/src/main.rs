//! `macc`: construct, verify, bound, simulate, and compare placement
//! delivery arrays for cyclic multi-access coded caching.
//!
//! Exit codes: 0 success/verified, 1 verification failure, 2 usage or
//! parameter error, 3 resource guard. Every run is byte-deterministic given
//! the same flags and seed.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use macc_core::baselines::{compare_table, to_csv};
use macc_core::bounds::{optimal_gain, BoundBranch};
use macc_core::constructions::build_scheme;
use macc_core::oracle::max_single_symbol_gain;
use macc_core::params::case_for;
use macc_core::pda::{verify, verify_against_placement};
use macc_core::simulator::{decode, deliver, demand_preset, place, DemandKind, FileStore};
use macc_core::{CaseKind, Error, Pda, SystemParams};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Environment variable overriding the gain-search size cap.
const SEARCH_LIMIT_ENV: &str = "MACC_ORACLE_MAX_K";

#[derive(Parser)]
#[command(
    name = "macc",
    version,
    about = "Placement delivery arrays for cyclic multi-access coded caching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Number of users and of cache nodes.
    #[arg(long = "K")]
    users: usize,

    /// Consecutive nodes each user reads.
    #[arg(long = "L")]
    access: usize,

    /// Subfiles of each file cached per node.
    #[arg(long)]
    gamma: usize,
}

impl SystemArgs {
    fn params(&self, files: usize) -> Result<SystemParams> {
        Ok(SystemParams::new(self.users, self.access, self.gamma, files)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    /// Human-readable grid, one row per line.
    Grid,
    /// Lossless JSON record with row ids and provenance.
    JsonRecord,
}

#[derive(Clone, Copy, ValueEnum)]
enum DemandArg {
    /// All-distinct demands (round-robin when the library is smaller).
    Worst,
    /// Everyone requests file 1.
    Equal,
    /// Seeded uniform demands.
    Random,
}

impl From<DemandArg> for DemandKind {
    fn from(arg: DemandArg) -> Self {
        match arg {
            DemandArg::Worst => DemandKind::Worst,
            DemandArg::Equal => DemandKind::Equal,
            DemandArg::Random => DemandKind::Random,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the scheme for (K, L, gamma) and print the array.
    Construct {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum, default_value_t = OutputFormat::Grid)]
        format: OutputFormat,
        /// Write the array here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a stored array against the PDA axioms.
    Verify {
        /// Grid or JSON record file.
        #[arg(long = "in")]
        input: PathBuf,
        /// Also check the star pattern against the placement for "K,L,gamma".
        #[arg(long)]
        params: Option<String>,
    },
    /// The optimal-gain bound versus the achieved gain.
    Bounds {
        /// Number of users and of cache nodes.
        #[arg(long = "K")]
        users: usize,
        /// Consecutive nodes each user reads.
        #[arg(long = "L")]
        access: usize,
        /// Single-point mode: evaluate at this gamma.
        #[arg(long)]
        gamma: Option<usize>,
        /// Sweep gamma over [0, floor(K/L)] and emit CSV.
        #[arg(long)]
        sweep: bool,
        /// Write sweep CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Byte-level placement, delivery, and decoding for one demand vector.
    Simulate {
        #[command(flatten)]
        system: SystemArgs,
        /// Library size N (default K).
        #[arg(long)]
        files: Option<usize>,
        #[arg(long, value_enum, default_value_t = DemandArg::Worst)]
        demand: DemandArg,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Subpacket size in bytes.
        #[arg(long, default_value_t = 64)]
        bytes: usize,
        /// Dump the per-message transcript.
        #[arg(long)]
        transcript: bool,
    },
    /// Brute-force the maximum single-symbol multiplicity for (K, t).
    SearchGain {
        /// Number of users and of cache nodes.
        #[arg(long = "K")]
        users: usize,
        /// Coverage t (how many users can retrieve each subfile).
        #[arg(long)]
        t: usize,
        /// Lift the search size cap up to this K.
        #[arg(long = "max-K-override")]
        max_k_override: Option<usize>,
    },
    /// Rate/subpacketization comparison table against prior schemes (CSV).
    Compare {
        /// Number of users and of cache nodes.
        #[arg(long = "K")]
        users: usize,
        /// Consecutive nodes each user reads.
        #[arg(long = "L")]
        access: usize,
        #[arg(long)]
        gamma_min: Option<usize>,
        #[arg(long)]
        gamma_max: Option<usize>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::SearchLimitExceeded { .. }) => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            };
            ExitCode::from(code)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Construct { system, format, out } => cmd_construct(system, format, out),
        Command::Verify { input, params } => cmd_verify(input, params),
        Command::Bounds {
            users,
            access,
            gamma,
            sweep,
            out,
        } => cmd_bounds(users, access, gamma, sweep, out),
        Command::Simulate {
            system,
            files,
            demand,
            seed,
            bytes,
            transcript,
        } => cmd_simulate(system, files, demand, seed, bytes, transcript),
        Command::SearchGain {
            users,
            t,
            max_k_override,
        } => cmd_search_gain(users, t, max_k_override),
        Command::Compare {
            users,
            access,
            gamma_min,
            gamma_max,
            out,
        } => cmd_compare(users, access, gamma_min, gamma_max, out),
    }
}

fn cmd_construct(system: SystemArgs, format: OutputFormat, out: Option<PathBuf>) -> Result<u8> {
    let params = system.params(system.users)?;
    let scheme = build_scheme(&params);
    let stats = verify(&scheme.pda)
        .map_err(|v| anyhow::anyhow!("construction failed its own verification: {}", v[0]))?;
    println!(
        "{}-({},{},{},{}) PDA, R={}, F={}, case={:?}",
        scheme.gain,
        stats.cols,
        stats.rows,
        stats.stars_per_column,
        stats.symbol_count,
        scheme.rate,
        scheme.subpacketization,
        scheme.case
    );
    let rendered = match format {
        OutputFormat::Grid => scheme.pda.to_grid_string(),
        OutputFormat::JsonRecord => scheme.pda.to_record_string(),
    };
    match out {
        Some(path) => {
            fs::write(&path, rendered).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote array to {}", path.display());
        }
        None => print!("{rendered}"),
    }
    Ok(0)
}

fn read_pda(path: &PathBuf) -> Result<Pda> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let pda = if text.trim_start().starts_with('{') {
        Pda::from_record_str(&text)?
    } else {
        Pda::from_grid_str(&text)?
    };
    Ok(pda)
}

fn parse_param_triple(spec: &str) -> Result<SystemParams> {
    let parts: Vec<&str> = spec.split(',').collect();
    if parts.len() != 3 {
        bail!("--params expects \"K,L,gamma\", got {spec:?}");
    }
    let parse = |s: &str| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .with_context(|| format!("bad number {s:?} in --params"))
    };
    let (k, l, gamma) = (parse(parts[0])?, parse(parts[1])?, parse(parts[2])?);
    Ok(SystemParams::new(k, l, gamma, k)?)
}

fn cmd_verify(input: PathBuf, params: Option<String>) -> Result<u8> {
    let pda = read_pda(&input)?;
    let stats = match verify(&pda) {
        Ok(stats) => stats,
        Err(violations) => {
            println!("INVALID: {} violation(s)", violations.len());
            for v in &violations {
                println!("  {v}");
            }
            return Ok(EXIT_VERIFY_FAILED);
        }
    };
    let gain = if stats.regular {
        format!("regular g = {}", stats.g_max)
    } else {
        format!("g in [{}, {}]", stats.g_min, stats.g_max)
    };
    println!(
        "valid PDA: (K,F,Z,S) = ({},{},{},{}), R = {}, {}",
        stats.cols, stats.rows, stats.stars_per_column, stats.symbol_count, stats.rate, gain
    );
    if let Some(spec) = params {
        let params = parse_param_triple(&spec)?;
        if verify_against_placement(&pda, &params)? {
            println!(
                "star pattern matches the consecutive cyclic placement for (K,L,gamma) = ({},{},{})",
                params.users(),
                params.access(),
                params.cached_per_node()
            );
        } else {
            println!("star pattern DOES NOT match the consecutive cyclic placement");
            return Ok(EXIT_VERIFY_FAILED);
        }
    }
    Ok(0)
}

fn cmd_bounds(
    users: usize,
    access: usize,
    gamma: Option<usize>,
    sweep: bool,
    out: Option<PathBuf>,
) -> Result<u8> {
    match (gamma, sweep) {
        (Some(_), true) => bail!("--gamma and --sweep are mutually exclusive"),
        (None, false) => bail!("pass --gamma for one point or --sweep for the whole range"),
        (Some(gamma), false) => {
            let params = SystemParams::new(users, access, gamma, users)?;
            println!("{}", bounds_line(&params));
            Ok(0)
        }
        (None, true) => {
            let _ = SystemParams::new(users, access, 0, users)?;
            let mut csv = String::from("gamma,t,case,g_star,r_star_num,r_star_den,g_achieved,gap\n");
            for gamma in 0..=(users / access) {
                let params = SystemParams::new(users, access, gamma, users)?;
                let t = params.coverage();
                let case = params.case();
                if case == CaseKind::AllCached {
                    csv.push_str(&format!("{gamma},{t},{case:?},,0,1,,\n"));
                    continue;
                }
                let bound = optimal_gain(users, t)?;
                let achieved = build_scheme(&params).gain;
                csv.push_str(&format!(
                    "{gamma},{t},{case:?},{},{},{},{achieved},{}\n",
                    bound.gain,
                    bound.rate.numer(),
                    bound.rate.denom(),
                    bound.gain - achieved
                ));
            }
            match out {
                Some(path) => {
                    fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
                    println!("wrote sweep to {}", path.display());
                }
                None => print!("{csv}"),
            }
            Ok(0)
        }
    }
}

fn bounds_line(params: &SystemParams) -> String {
    let (k, t) = (params.users(), params.coverage());
    let case = params.case();
    if case == CaseKind::AllCached {
        return format!("everything cached (t = K = {k}): R* = 0, achieved R = 0");
    }
    let bound = optimal_gain(k, t).expect("t <= K by construction");
    let achieved = build_scheme(params).gain;
    let mut line = format!(
        "g* = {}, R* = {}, achieved g = {}, gap = {}, case = {case:?}",
        bound.gain,
        bound.rate,
        achieved,
        bound.gain - achieved
    );
    if bound.gain != achieved && bound.branch == BoundBranch::FloorPlusOne {
        line.push_str(" (whether g* is attainable here is open)");
    }
    line
}

fn cmd_simulate(
    system: SystemArgs,
    files: Option<usize>,
    demand: DemandArg,
    seed: u64,
    bytes: usize,
    dump_transcript: bool,
) -> Result<u8> {
    if bytes == 0 {
        bail!("--bytes must be at least 1");
    }
    let files = files.unwrap_or(system.users);
    let params = system.params(files)?;
    let scheme = build_scheme(&params);
    let store = FileStore::random(files, scheme.pda.row_count(), bytes, seed);
    let caches = place(&params, &scheme.pda, &store)?;
    let demand = demand_preset(&params, demand.into(), seed);
    let transcript = deliver(&params, &scheme.pda, &store, &demand)?;

    let mut decoded = 0usize;
    for user in 1..=params.users() {
        let got = decode(&params, &scheme.pda, &caches, &store, &transcript, user, &demand)?;
        if got != store.file_bytes(demand[user - 1]) {
            println!("user {user} decoded WRONG bytes");
            return Ok(EXIT_VERIFY_FAILED);
        }
        decoded += 1;
    }

    if dump_transcript {
        print!("{}", transcript.dump_string());
    }
    println!(
        "all {decoded} users decoded; bytes = {} x file size",
        transcript.rate()
    );
    println!(
        "messages = {}, message bytes = {}, total = {} bytes",
        transcript.messages.len(),
        bytes,
        transcript.total_bytes()
    );
    Ok(0)
}

fn cmd_search_gain(users: usize, t: usize, max_k_override: Option<usize>) -> Result<u8> {
    let limit = match max_k_override {
        Some(limit) => Some(limit),
        None => match std::env::var(SEARCH_LIMIT_ENV) {
            Ok(value) => Some(
                value
                    .parse::<usize>()
                    .with_context(|| format!("bad {SEARCH_LIMIT_ENV} value {value:?}"))?,
            ),
            Err(_) => None,
        },
    };
    let result = max_single_symbol_gain(users, t, limit)?;
    println!(
        "g_max = {} (nodes explored: {})",
        result.g_max, result.nodes_explored
    );
    let witness: Vec<String> = result
        .witness
        .iter()
        .map(|(r, c)| format!("({r},{c})"))
        .collect();
    println!("witness: {}", witness.join(" "));
    let bound = optimal_gain(users, t)?;
    if result.g_max == bound.gain {
        println!("g* = {}; bound met", bound.gain);
    } else {
        let open = match case_for(users, t) {
            CaseKind::General if bound.branch == BoundBranch::FloorPlusOne => {
                " (whether g* is attainable here is open)"
            }
            _ => "",
        };
        println!("g* = {}; gap = {}{}", bound.gain, bound.gain - result.g_max, open);
    }
    Ok(0)
}

fn cmd_compare(
    users: usize,
    access: usize,
    gamma_min: Option<usize>,
    gamma_max: Option<usize>,
    out: Option<PathBuf>,
) -> Result<u8> {
    let _ = SystemParams::new(users, access, 0, users)?;
    let lo = gamma_min.unwrap_or(0);
    let hi = gamma_max.unwrap_or(users / access);
    let rows = compare_table(users, access, lo, hi)?;
    let csv = to_csv(&rows);
    eprintln!(
        "note: the RK2021 scheme is omitted: its rate has no closed form \
         (it is bounded by RK1's and CW's) and its subpacketization equals RK1's"
    );
    match out {
        Some(path) => {
            fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {} rows to {}", rows.len(), path.display());
        }
        None => print!("{csv}"),
    }
    Ok(0)
}

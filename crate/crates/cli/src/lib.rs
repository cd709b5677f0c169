//! Command-line front end for `toeplitz-core`.
//!
//! Exit codes: 0 on success, 1 on a negative decision or a failed
//! verification, 2 on usage and parse errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde_json::json;
use toeplitz_core::spectrum::SpectrumError;
use toeplitz_core::sweep::{domains_over, spectrum_pool, verify_spectrum};
use toeplitz_core::{
    build_spectrum, from_invariants, is_isomorphic, parse_domain, verify_complete_invariant,
    Domain, InvariantTriple, ReconstructError,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "toeplitz",
    version,
    about = "Invariants, spectra and reconstruction of bounded symmetric domains"
)]
struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Invariant triple, per-factor table, tube flags and sym_D order.
    Info {
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether two domains (equivalently, their stable Toeplitz
    /// algebras) are isomorphic.
    Iso { first: String, second: String },
    /// Stratum poset of the spectrum.
    Spectrum(SpectrumArgs),
    /// Solvable length of the Toeplitz algebra.
    Length { expr: String },
    /// Label-respecting poset automorphisms and their factor permutations.
    Automorphisms {
        expr: String,
        /// Search all order automorphisms, ignoring labels.
        #[arg(long)]
        ignore_labels: bool,
        #[arg(long)]
        json: bool,
    },
    /// Recover an irreducible factor from its invariant triple.
    Reconstruct {
        #[arg(long)]
        rank: u64,
        #[arg(long)]
        dim: u64,
        #[arg(long)]
        shilov: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run verification sweeps.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    expr: String,
    #[arg(long, conflicts_with_all = ["json", "ideals"])]
    dot: bool,
    #[arg(long, conflicts_with = "ideals")]
    json: bool,
    /// Print the decomposition of the weight-k ideal.
    #[arg(long, value_name = "K")]
    ideals: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    /// Injectivity of the invariant triple over all canonical factors.
    CompleteInvariant {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max: u64,
        #[arg(long)]
        json: bool,
    },
    /// Structural checks of the spectrum model over small products.
    Spectrum {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_rank: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        max_factors: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Error that aborts a command with exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type CmdResult = Result<i32, UsageError>;

/// Parses `args` (including the program name) and runs the command,
/// writing to `out` and `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => {
                let (result, buffered) = pool.install(|| {
                    let mut buf = Vec::new();
                    (dispatch(cli.command, &mut buf), buf)
                });
                let _ = out.write_all(&buffered);
                result
            }
            Err(e) => Err(UsageError::from(e)),
        },
        None => dispatch(cli.command, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> CmdResult {
    match command {
        Command::Info { expr, json } => info(&parse_domain(&expr)?, json, out),
        Command::Iso { first, second } => {
            let (a, b) = (parse_domain(&first)?, parse_domain(&second)?);
            if is_isomorphic(&a, &b) {
                writeln!(out, "isomorphic")?;
                Ok(EXIT_OK)
            } else {
                writeln!(out, "not isomorphic")?;
                Ok(EXIT_NEGATIVE)
            }
        }
        Command::Spectrum(args) => spectrum(args, out),
        Command::Length { expr } => {
            let poset = build_spectrum(&parse_domain(&expr)?)?;
            writeln!(out, "{}", poset.solvable_length())?;
            Ok(EXIT_OK)
        }
        Command::Automorphisms {
            expr,
            ignore_labels,
            json,
        } => automorphisms(&parse_domain(&expr)?, !ignore_labels, json, out),
        Command::Reconstruct {
            rank,
            dim,
            shilov,
            json,
        } => reconstruct(InvariantTriple::new(rank, dim, shilov), json, out),
        Command::Verify { target } => verify(target, out),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn info(domain: &Domain, json: bool, out: &mut dyn Write) -> CmdResult {
    let inv = domain.invariants();
    let sym = domain.sym_group();
    let tube = domain.factors().iter().all(|f| f.is_tube());
    if json {
        let factors: Vec<_> = domain
            .factors()
            .iter()
            .map(|f| {
                let t = f.invariant_triple();
                json!({
                    "factor": f,
                    "rank": t.rank,
                    "real_dim": t.real_dim,
                    "shilov_dim": t.shilov_dim,
                    "tube": f.is_tube(),
                })
            })
            .collect();
        let value = json!({
            "domain": domain,
            "invariants": inv,
            "tube": tube,
            "factors": factors,
            "sym_order": sym.order,
            "sym_blocks": sym.blocks,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
        return Ok(EXIT_OK);
    }
    writeln!(out, "domain: {domain}")?;
    writeln!(out, "invariants (rank, dim, shilov): {inv}")?;
    writeln!(out, "tube type: {}", yes_no(tube))?;
    writeln!(out, "sym_D order: {}", sym.order)?;
    writeln!(out)?;
    writeln!(
        out,
        "{:<10} {:>5} {:>8} {:>8}  tube",
        "factor", "rank", "dim", "shilov"
    )?;
    for f in domain.factors() {
        let t = f.invariant_triple();
        writeln!(
            out,
            "{:<10} {:>5} {:>8} {:>8}  {}",
            f.to_string(),
            t.rank,
            t.real_dim,
            t.shilov_dim,
            yes_no(f.is_tube())
        )?;
    }
    Ok(EXIT_OK)
}

fn spectrum(args: SpectrumArgs, out: &mut dyn Write) -> CmdResult {
    let domain = parse_domain(&args.expr)?;
    let poset = build_spectrum(&domain)?;
    if args.dot {
        write!(out, "{}", poset.to_dot())?;
        return Ok(EXIT_OK);
    }
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&poset.to_json())?)?;
        return Ok(EXIT_OK);
    }
    if let Some(k) = args.ideals {
        let parts = poset.decompose_weight_ideal(k)?;
        let tops: Vec<String> = poset
            .layer_components(k)?
            .iter()
            .map(|s| format!("I_({s})"))
            .collect();
        writeln!(out, "I_{k} = {}", tops.join(" + "))?;
        for (name, part) in tops.iter().zip(&parts) {
            writeln!(out, "  {name} = {part}")?;
        }
        writeln!(out, "  I_{k} = {}", poset.ideal_of_weight(k)?)?;
        return Ok(EXIT_OK);
    }
    let ranks: Vec<String> = poset.ranks().iter().map(u32::to_string).collect();
    writeln!(out, "domain: {domain}")?;
    writeln!(out, "ranks: {}", ranks.join(","))?;
    writeln!(out, "strata: {}", poset.len())?;
    writeln!(out, "covers: {}", poset.covers().len())?;
    for k in 0..=poset.max_weight() {
        let layer: Vec<String> = poset
            .layer_components(k)?
            .iter()
            .map(|s| format!("({s})"))
            .collect();
        writeln!(out, "weight {k}: {}", layer.join(" "))?;
    }
    Ok(EXIT_OK)
}

fn automorphisms(
    domain: &Domain,
    respect_labels: bool,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let poset = build_spectrum(domain)?;
    let autos = poset.automorphisms(respect_labels)?;
    let perms: Vec<Result<_, SpectrumError>> = autos
        .iter()
        .map(|a| poset.factor_permutation_of(a))
        .collect();
    let all_induced = perms.iter().all(Result::is_ok);
    let sym_order = domain.sym_group().order;
    if json {
        let listed: Vec<_> = perms
            .iter()
            .map(|p| match p {
                Ok(p) => json!(p.to_string()),
                Err(_) => json!(null),
            })
            .collect();
        let value = json!({
            "domain": domain,
            "respect_labels": respect_labels,
            "count": autos.len(),
            "sym_order": sym_order,
            "permutations": listed,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        let kind = if respect_labels {
            "label-respecting"
        } else {
            "order"
        };
        writeln!(out, "domain: {domain}")?;
        writeln!(
            out,
            "{kind} automorphisms: {} (sym_D order {sym_order})",
            autos.len()
        )?;
        for p in &perms {
            match p {
                Ok(p) => writeln!(out, "  {p}")?,
                Err(e) => writeln!(out, "  {e}")?,
            }
        }
    }
    Ok(if all_induced { EXIT_OK } else { EXIT_NEGATIVE })
}

fn reconstruct(triple: InvariantTriple, json: bool, out: &mut dyn Write) -> CmdResult {
    let result = from_invariants(triple);
    if json {
        let value = match &result {
            Ok(f) => json!({ "triple": triple, "factor": f }),
            Err(ReconstructError::Ambiguous { matches, .. }) => {
                json!({ "triple": triple, "factor": null, "ambiguous": matches })
            }
            Err(_) => json!({ "triple": triple, "factor": null }),
        };
        writeln!(out, "{}", serde_json::to_string_pretty(&value)?)?;
    } else {
        match &result {
            Ok(f) => writeln!(out, "{f}")?,
            Err(e @ ReconstructError::NotFound(_)) => writeln!(out, "not found: {e}")?,
            Err(e) => writeln!(out, "{e}")?,
        }
    }
    Ok(if result.is_ok() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn verify(target: VerifyTarget, out: &mut dyn Write) -> CmdResult {
    match target {
        VerifyTarget::CompleteInvariant { max, json } => {
            let report = verify_complete_invariant(max);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else if report.is_clean() {
                writeln!(
                    out,
                    "OK: {} collisions / {} factors scanned",
                    report.collisions.len(),
                    report.scanned_count
                )?;
            } else {
                writeln!(
                    out,
                    "FAIL: {} collisions / {} factors scanned",
                    report.collisions.len(),
                    report.scanned_count
                )?;
                for c in &report.collisions {
                    let names: Vec<String> = c.factors.iter().map(ToString::to_string).collect();
                    writeln!(out, "  collision {}: {}", c.triple, names.join(", "))?;
                }
                for f in &report.roundtrip_failures {
                    writeln!(out, "  round-trip failure: {f}")?;
                }
                for f in &report.tube_violations {
                    writeln!(out, "  tube criterion violated: {f}")?;
                }
                for c in &report.tube_rank_dim_collisions {
                    let names: Vec<String> = c.factors.iter().map(ToString::to_string).collect();
                    writeln!(out, "  tube (rank, dim) collision: {}", names.join(", "))?;
                }
            }
            Ok(if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        VerifyTarget::Spectrum {
            max_rank,
            max_factors,
            json,
        } => {
            let domains = domains_over(&spectrum_pool(max_rank), max_factors as usize);
            let report = verify_spectrum(&domains);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            } else {
                let status = if report.is_clean() { "OK" } else { "FAIL" };
                writeln!(
                    out,
                    "{status}: {} violations / {} domains checked ({} automorphisms)",
                    report.violations.len(),
                    report.domains_checked,
                    report.automorphisms_checked
                )?;
                for v in &report.violations {
                    writeln!(out, "  {} [{}]: {}", v.domain, v.check, v.detail)?;
                }
            }
            Ok(if report.is_clean() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

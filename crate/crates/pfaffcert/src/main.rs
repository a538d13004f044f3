use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use pfaffcert::commands::{dims_for_family, dims_for_k, human_summary, ConstructOptions};
use pfaffcert::{construct, verify, Artifact};
use pfaffcert_core::algebra::DEFAULT_PRIME;
use pfaffcert_core::invariants::{Family, VerifyLevel};

/// Construct and certify Pfaffian Calabi–Yau threefolds and del Pezzo
/// surfaces over a prime field.
#[derive(Parser)]
#[command(name = "pfaffcert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Fast,
    Slice,
    Full,
}

impl From<Level> for VerifyLevel {
    fn from(l: Level) -> VerifyLevel {
        match l {
            Level::Fast => VerifyLevel::Fast,
            Level::Slice => VerifyLevel::Slice,
            Level::Full => VerifyLevel::Full,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build one member of a family and certify it.
    Construct {
        /// Family tag; see `pfaffcert families`.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Surfaces are always checked at `full`.
        #[arg(long = "verify", value_enum, default_value = "slice")]
        level: Level,
        /// Where to write the JSON certificate (`-` for stdout).
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Allow `--verify full` on degree-17 families.
        #[arg(long)]
        force: bool,
    },
    /// Re-run every check of a certificate from its stored ideal.
    Verify {
        path: PathBuf,
        /// Refuse certificates computed modulo a different prime.
        #[arg(long)]
        prime: Option<u32>,
    },
    /// Stratum and family dimensions and Hodge bounds for k = 8, 9, 11, or
    /// the bundle numbers of a family tag.
    Dims {
        /// `8`, `9`, `11` or a family tag; all three strata when omitted.
        target: Option<String>,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// List the family tags.
    Families,
}

fn configure_threads() -> anyhow::Result<()> {
    #[cfg(feature = "parallel")]
    if let Ok(v) = std::env::var("PFAFFCERT_THREADS") {
        let n: usize = v.parse().with_context(|| format!("PFAFFCERT_THREADS={v} is not a number"))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

fn print_dims_row(k: usize) -> anyhow::Result<()> {
    let r = dims_for_k(k)?;
    let picard = r.picard_bound.map_or("-".to_string(), |p| p.to_string());
    println!("{:>3} {:>8} {:>7} {:>10} {:>10}", r.k, r.stratum, r.family, r.h12_bound, picard);
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Construct { family, prime, seed, level, output, force } => {
            let mut opts = ConstructOptions::new(&family, prime, seed, level.into())?;
            opts.force = force;
            let artifact = construct(&opts)?;
            let json = artifact.to_json();
            match output.as_deref() {
                Some(p) if p.as_os_str() == "-" => print!("{json}"),
                Some(p) => std::fs::write(p, json).with_context(|| format!("writing {}", p.display()))?,
                None => {}
            }
            let summary = human_summary(&artifact, artifact.report.failure.as_deref());
            if output.as_deref().is_some_and(|p| p.as_os_str() == "-") {
                eprint!("{summary}");
            } else {
                print!("{summary}");
            }
            Ok(if artifact.report.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Verify { path, prime } => {
            let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let artifact = Artifact::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
            let verdict = verify(&artifact, prime)?;
            print!("{}", human_summary(&artifact, verdict.failure.as_deref()));
            Ok(if verdict.passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Dims { target, prime, seed } => {
            match target.as_deref() {
                None => {
                    println!("{:>3} {:>8} {:>7} {:>10} {:>10}", "k", "stratum", "family", "h12 >=", "h11 >=");
                    for k in [8, 9, 11] {
                        print_dims_row(k)?;
                    }
                }
                Some(t) => match t.parse::<usize>() {
                    Ok(k) => {
                        println!("{:>3} {:>8} {:>7} {:>10} {:>10}", "k", "stratum", "family", "h12 >=", "h11 >=");
                        print_dims_row(k)?;
                    }
                    Err(_) => {
                        for (name, value) in dims_for_family(t, prime, seed)? {
                            println!("{name:<16} {value}");
                        }
                    }
                },
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Families => {
            for f in Family::all() {
                println!("{}", f.tag());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

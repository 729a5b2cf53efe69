//! Command-line front end: build, verify and check mixed Steiner triple
//! systems.
//!
//! Exit codes: 0 on success, 1 when parameters are rejected or a design
//! fails verification, 2 on I/O or file-format errors.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use msts::extension::{canonicalize_alphabet, extend, ExtensionPlan};
use msts::format::{design_to_string, read_design};
use msts::pairs_triples::{
    ptd_exists, ptd_from_one_factorization, ptd_from_sts, ptd_search, ptd_to_gdd,
    PairsTriplesDesign, SearchOutcome,
};
use msts::shortest::{construct_shortest, embedded_example_5_3};
use msts::subspace::{complementary_partition, weight3_codewords};
use msts::verify::{
    admissible_n_residues, check_necessary_conditions, minimum_admissible_n, verify_msts, verify_ptd,
};
use msts::{Design, MstsError};

#[derive(Parser)]
#[command(name = "msts", version, about = "Mixed Steiner triple systems over Z_2^n x Z_(k+1) x Z_(l+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the result to this file.
    #[arg(short, long)]
    out: Option<PathBuf>,

    /// Skip the verification that otherwise runs before anything is written.
    #[arg(long)]
    no_verify: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Build a shortest-length system with n = k * l.
    Construct {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        l: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Verify a design file and print the report as JSON.
    Verify { input: PathBuf },
    /// Evaluate the necessary existence conditions.
    Check {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Weight-3 codewords of the perfect code from a subspace partition.
    PartitionCode {
        #[arg(long)]
        kprime: u32,
        #[arg(long)]
        lprime: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Build an (m, r)-pairs-triples design.
    Ptd {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        r: u32,
        /// Node budget for the exact-cover search.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Lengthen a system with a pairs-triples design.
    Extend {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        ptd: PathBuf,
        /// Move all binary coordinates ahead of the non-binary ones.
        #[arg(long)]
        canonical: bool,
        #[command(flatten)]
        output: Output,
    },
    /// The fixed k = 5, l = 3 system.
    Example {
        #[command(flatten)]
        output: Output,
    },
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn rejected(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 1,
            error: error.into(),
        }
    }

    fn io(error: impl Into<anyhow::Error>) -> Self {
        Self {
            code: 2,
            error: error.into(),
        }
    }
}

impl From<MstsError> for Failure {
    fn from(e: MstsError) -> Self {
        Failure::rejected(e)
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Construct { k, l, output } => {
            let design = if (k, l) == (5, 3) {
                embedded_example_5_3()
            } else {
                construct_shortest(k, l)?
            };
            emit_design(&design, &output)
        }
        Command::Verify { input } => cmd_verify(&input),
        Command::Check { k, l, n } => cmd_check(k, l, n),
        Command::PartitionCode {
            kprime,
            lprime,
            output,
        } => {
            let partition = complementary_partition(kprime, lprime)?;
            emit_design(&weight3_codewords(&partition), &output)
        }
        Command::Ptd {
            m,
            r,
            budget,
            output,
        } => cmd_ptd(m, r, budget, &output),
        Command::Extend {
            base,
            ptd,
            canonical,
            output,
        } => {
            let base = load_design(&base)?;
            let ptd = load_ptd(&ptd)?;
            let plan = ExtensionPlan::new(&base, &ptd)?;
            let mut design = extend(&plan)?;
            if canonical {
                design = canonicalize_alphabet(&design);
            }
            emit_design(&design, &output)
        }
        Command::Example { output } => emit_design(&embedded_example_5_3(), &output),
    }
}

fn emit_design(design: &Design, output: &Output) -> CmdResult {
    if !output.no_verify {
        let report = verify_msts(design);
        if !report.accepted {
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            return Err(Failure::rejected(anyhow::anyhow!(
                "constructed design failed verification"
            )));
        }
    }
    if let Some(path) = &output.out {
        fs::write(path, design_to_string(design))
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::io)?;
    }
    println!(
        "alphabet={} length={} codewords={}{}",
        design.alphabet(),
        design.alphabet().len(),
        design.len(),
        if output.no_verify { "" } else { " verified" }
    );
    Ok(())
}

fn load_design(path: &Path) -> Result<Design, Failure> {
    let file = fs::File::open(path)
        .with_context(|| format!("opening {}", path.display()))
        .map_err(Failure::io)?;
    read_design(BufReader::new(file))
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::io)
}

fn load_ptd(path: &Path) -> Result<PairsTriplesDesign, Failure> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::io)?;
    PairsTriplesDesign::from_json(text.trim_end())
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(Failure::io)
}

fn cmd_verify(input: &Path) -> CmdResult {
    let design = load_design(input)?;
    let report = verify_msts(&design);
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    if report.accepted {
        Ok(())
    } else {
        Err(Failure::rejected(anyhow::anyhow!(
            "design rejected: {} uncovered, {} multicovered, {} distance violations, count {} vs expected {:?}",
            report.uncovered.len(),
            report.multicovered.len(),
            report.distance_violations.len(),
            report.count_actual,
            report.count_expected
        )))
    }
}

fn format_residues<'a>(residues: impl IntoIterator<Item = &'a u64>) -> String {
    let parts: Vec<String> = residues.into_iter().map(u64::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn cmd_check(k: u64, l: u64, n: Option<u64>) -> CmdResult {
    if let Some(n) = n {
        let report = check_necessary_conditions(k, l, n);
        let labels = [
            "(1) n - k = 0 (mod 2)",
            "(2) n - l = 0 (mod 2)",
            "(3) k = l = 1 (mod 2)",
            "(4) n >= k * l",
            "(5) k*l + (k+l)*n + C(n,2) = 0 (mod 3)",
        ];
        for (label, ok) in labels.iter().zip(report.verdicts()) {
            println!("{label}: {}", if ok { "pass" } else { "fail" });
        }
        println!("overall: {}", if report.overall { "pass" } else { "fail" });
        return if report.overall {
            Ok(())
        } else {
            Err(Failure::rejected(anyhow::anyhow!(
                "necessary conditions fail for k={k}, l={l}, n={n}"
            )))
        };
    }
    let residues = admissible_n_residues(k, l)?;
    println!("k={k} l={l} residues={}", format_residues(&residues));
    match minimum_admissible_n(k, l) {
        Some(n) => {
            println!("minimum n={n}");
            Ok(())
        }
        None => Err(Failure::rejected(anyhow::anyhow!(
            "no admissible n: k = {} and l = {} (mod 6)",
            k % 6,
            l % 6
        ))),
    }
}

fn cmd_ptd(m: u32, r: u32, budget: u64, output: &Output) -> CmdResult {
    if !ptd_exists(m, r) {
        return Err(Failure::rejected(anyhow::anyhow!(
            "no ({m}, {r})-pairs-triples design exists"
        )));
    }
    let (ptd, route) = if r + 1 == m {
        (ptd_from_one_factorization(m)?, "one-factorization")
    } else if r == 1 && matches!((m + 1) % 6, 1 | 3) {
        (ptd_from_sts(m)?, "steiner-triple-system")
    } else {
        match ptd_search(m, r, budget)? {
            SearchOutcome::Found { design, .. } => (design, "search"),
            SearchOutcome::Exhausted { nodes } => {
                return Err(Failure::rejected(anyhow::anyhow!(
                    "search budget exhausted after {nodes} nodes"
                )))
            }
            SearchOutcome::NoSolution { nodes } => {
                return Err(Failure::rejected(anyhow::anyhow!(
                    "search space exhausted after {nodes} nodes without a design"
                )))
            }
        }
    };
    if !output.no_verify {
        let report = verify_ptd(&ptd);
        if !report.accepted {
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            return Err(Failure::rejected(anyhow::anyhow!("pairs-triples design failed verification")));
        }
        if !verify_msts(&ptd_to_gdd(&ptd)?).accepted {
            return Err(Failure::rejected(anyhow::anyhow!(
                "associated group divisible design failed verification"
            )));
        }
    }
    if let Some(path) = &output.out {
        fs::write(path, format!("{}\n", ptd.to_json()))
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::io)?;
    }
    println!(
        "m={m} r={r} factors={} triples={} route={route}",
        ptd.factors.len(),
        ptd.triples.len()
    );
    Ok(())
}

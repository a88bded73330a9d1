use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use achow::cycles::io::{parse_cycle, print_cycle};
use achow::cycles::{cyclic_shuffle, wedge, BoundaryMode, FormalCycle};
use achow::mixedcx::io::parse_complex;
use achow::mixedcx::{connes_sequence, default_max_degree};
use achow::verify::{self, Caps, Check, Suite};
use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "achow",
    version,
    about = "Exact verification of operators on additive higher Chow cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        /// Size cap: r+s for shuffle, n for delta and forms, top degree for mixedcx.
        #[arg(long, visible_alias = "max")]
        max_n: Option<usize>,
        /// Derivation suite: first factor's box dimension.
        #[arg(long)]
        r1: Option<usize>,
        /// Derivation suite: second factor's box dimension.
        #[arg(long)]
        r2: Option<usize>,
        /// Number of random mixed-complex fixtures.
        #[arg(long, default_value_t = 100)]
        fixtures: usize,
        /// Total dimension bound for random mixed complexes.
        #[arg(long, default_value_t = 40)]
        max_total_dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Worker threads; defaults to the number of CPUs.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Apply a cycle operator to cycle files.
    Cycle {
        #[arg(value_enum)]
        op: CycleOp,
        /// Input cycle file; wedge and cyclic-shuffle take two.
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Use the reduced boundary `∂′` instead of the full one.
        #[arg(long)]
        reduced: bool,
    },
    /// Homology of a mixed complex file.
    Homology {
        #[arg(long)]
        input: PathBuf,
        /// Also print the Connes periodicity sequence with exactness flags.
        #[arg(long)]
        connes: bool,
        /// Highest degree reported; defaults to the top degree plus two.
        #[arg(long)]
        max_n: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SuiteArg {
    Shuffle,
    Delta,
    Leibniz,
    Derivation,
    Forms,
    Mixedcx,
    All,
}

impl SuiteArg {
    fn suites(self) -> Vec<Suite> {
        match self {
            SuiteArg::Shuffle => vec![Suite::Shuffle],
            SuiteArg::Delta => vec![Suite::Delta],
            SuiteArg::Leibniz => vec![Suite::Leibniz],
            SuiteArg::Derivation => vec![Suite::Derivation],
            SuiteArg::Forms => vec![Suite::Forms],
            SuiteArg::Mixedcx => vec![Suite::Mixedcx],
            SuiteArg::All => Suite::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CycleOp {
    Boundary,
    Delta,
    Wedge,
    CyclicShuffle,
}

/// Largest `max_n` accepted per suite.
fn max_n_limit(suite: Suite) -> usize {
    match suite {
        Suite::Shuffle => 8,
        Suite::Delta => 6,
        Suite::Leibniz | Suite::Derivation => 0,
        Suite::Forms => 6,
        Suite::Mixedcx => 12,
    }
}

fn check_caps(suites: &[Suite], caps: &Caps) -> Result<()> {
    if let Some(n) = caps.max_n {
        for &s in suites {
            let limit = max_n_limit(s);
            ensure!(
                limit == 0 || n <= limit,
                "--max-n {n} exceeds the safe range 0..={limit} for suite {}",
                s.name()
            );
        }
    }
    for r in [caps.r1, caps.r2].into_iter().flatten() {
        ensure!(r <= 3, "--r1/--r2 must be at most 3");
    }
    ensure!(caps.fixtures <= 10_000, "--fixtures must be at most 10000");
    ensure!(
        (1..=200).contains(&caps.max_total_dim),
        "--max-total-dim must lie in 1..=200"
    );
    Ok(())
}

fn verify(suite: SuiteArg, caps: Caps, format: Format, jobs: Option<usize>) -> Result<bool> {
    let suites = suite.suites();
    check_caps(&suites, &caps)?;
    if let Some(j) = jobs {
        ensure!(j >= 1, "--jobs must be positive");
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let mut first_failure: Option<Check> = None;
    let (mut total, mut failed) = (0, 0);
    for s in suites {
        let checks = verify::run(s, &caps);
        if format == Format::Text {
            println!("== {}", s.name());
        }
        for c in &checks {
            match format {
                Format::Text => println!("{c}"),
                Format::Structured => println!("{}", c.record()),
            }
            if !c.passed {
                failed += 1;
                first_failure.get_or_insert_with(|| c.clone());
            }
        }
        total += checks.len();
    }
    if format == Format::Text {
        println!("{} checks, {} failed", total, failed);
    }
    if let Some(c) = first_failure {
        eprintln!("first failure: {c}");
    }
    Ok(failed == 0)
}

fn read_cycle(path: &Path) -> Result<FormalCycle> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let c = parse_cycle(&text).with_context(|| format!("parsing {}", path.display()))?;
    c.check_admissible()
        .with_context(|| format!("{} is not admissible", path.display()))?;
    Ok(c)
}

fn write_out(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cycle(op: CycleOp, inputs: &[PathBuf], output: Option<&Path>, reduced: bool) -> Result<()> {
    let arity = match op {
        CycleOp::Boundary | CycleOp::Delta => 1,
        CycleOp::Wedge | CycleOp::CyclicShuffle => 2,
    };
    if inputs.len() != arity {
        bail!("{op:?} takes {arity} --input file(s), got {}", inputs.len());
    }
    let cycles: Vec<FormalCycle> = inputs
        .iter()
        .map(|p| read_cycle(p))
        .collect::<Result<_>>()?;
    let result = match op {
        CycleOp::Boundary => {
            let mode = if reduced {
                BoundaryMode::Reduced
            } else {
                BoundaryMode::Full
            };
            cycles[0].boundary(mode)?
        }
        CycleOp::Delta => cycles[0].delta()?,
        CycleOp::Wedge => wedge(&cycles[0], &cycles[1])?,
        CycleOp::CyclicShuffle => cyclic_shuffle(&cycles[0], &cycles[1])?,
    };
    write_out(output, &print_cycle(&result))
}

fn homology(input: &Path, connes: bool, max_n: Option<usize>) -> Result<()> {
    let text = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let m = parse_complex(&text).with_context(|| format!("parsing {}", input.display()))?;
    m.require_valid()?;
    let max = max_n.unwrap_or_else(|| default_max_degree(&m));
    let col = m.column(max + 1);
    let tot = m.totalize(max + 1);
    println!("degree\tdim\tHH\tHC");
    for n in 0..=max {
        let hh = col.homology(n)?.dim;
        let hc = tot.chain.homology(n)?.dim;
        println!("{n}\t{}\t{hh}\t{hc}", m.dim(n as isize));
    }
    if connes {
        print!("{}", connes_sequence(&m, max)?);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Verify {
            suite,
            max_n,
            r1,
            r2,
            fixtures,
            max_total_dim,
            seed,
            format,
            jobs,
        } => {
            let caps = Caps {
                max_n,
                r1,
                r2,
                fixtures,
                max_total_dim,
                seed,
            };
            verify(suite, caps, format, jobs)
        }
        Command::Cycle {
            op,
            input,
            output,
            reduced,
        } => cycle(op, &input, output.as_deref(), reduced).map(|()| true),
        Command::Homology {
            input,
            connes,
            max_n,
        } => homology(&input, connes, max_n).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

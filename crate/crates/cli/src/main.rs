use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use charmass::checks::{all_checks, Options};
use charmass::dims::{dim_table_24, mu, render_dim_table, render_dim_table_json};
use charmass::lattice::{algorithm_a, algorithm_b, masses_auto, GramMatrix};
use charmass::reptheory::{series_len, CharCoeffs};
use charmass::umbral::{find_record, niemeier_mass};
use charmass::{cycpoly, CycloProduct, Error, Partition};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "charmass", version, about = "Characteristic masses of lattices and dimensions of invariants")]
struct Cli {
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List or count the products of cyclotomic polynomials of degree n
    Car {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        count: bool,
    },
    /// Characteristic masses of a lattice, as JSON
    Masses(MassesArgs),
    /// Trace of an element with characteristic polynomial P on W_λ
    Trace {
        /// e.g. "1^2 3"
        #[arg(long)]
        poly: String,
        /// e.g. "2 1^2"
        #[arg(long)]
        lambda: String,
        /// Also evaluate Weyl's determinant and check agreement
        #[arg(long)]
        both: bool,
    },
    /// Dimension table over the genus of even unimodular lattices
    Dims {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        lmax: u32,
        #[arg(long)]
        json: bool,
    },
    /// The mass constant μ_n
    Mu {
        #[arg(long)]
        n: u32,
    },
    /// Run every verification suite
    Verify {
        /// Add the E7 enumeration
        #[arg(long)]
        long: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Gram matrix file (JSON rows, or dimension then entries)
    #[arg(long)]
    gram: Option<PathBuf>,
    /// Built-in lattice such as E8, A2+A2, I3 or Leech
    #[arg(long)]
    lattice: Option<String>,
    /// Niemeier lattice by root system, e.g. "A11 D7 E6", or leech
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct MassesArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Largest group that may be enumerated
    #[arg(long, default_value_t = 10_000_000)]
    bound: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Auto,
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::NotPermissible { .. } | Error::UnknownRecord(_) | Error::BadResidue(_) => {
                Failure::Usage(e.to_string())
            }
            Error::EnumerationTooLarge(_) | Error::StabilizerTooLarge(_) => Failure::Compute(format!(
                "{e}; raise --bound, or use --catalog for Niemeier lattices"
            )),
            _ => Failure::Compute(e.to_string()),
        }
    }
}

/// Writes a line to stdout; a closed pipe ends the program quietly.
macro_rules! out {
    ($($t:tt)*) => {{
        let mut so = std::io::stdout().lock();
        if let Err(e) = writeln!(so, $($t)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            return Err(Failure::Compute(format!("writing output: {e}")));
        }
    }};
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Car { n, count } => {
            if count {
                out!("{}", cycpoly::count_car(n));
            } else {
                for p in cycpoly::enumerate_car(n) {
                    out!("{p}");
                }
            }
        }
        Cmd::Masses(a) => {
            let m = if let Some(name) = &a.source.catalog {
                niemeier_mass(find_record(name)?)?
            } else {
                let g = match (&a.source.gram, &a.source.lattice) {
                    (Some(path), _) => {
                        let s = std::fs::read_to_string(path)
                            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                        s.parse::<GramMatrix>()?
                    }
                    (_, Some(name)) => GramMatrix::builtin(name)?,
                    _ => unreachable!("clap requires a source"),
                };
                match a.algo {
                    Algo::Auto => masses_auto(&g, a.bound)?,
                    Algo::A => algorithm_a(&g, a.bound)?,
                    Algo::B => algorithm_b(&g, a.bound)?,
                }
            };
            out!("{}", m.to_json_string());
        }
        Cmd::Trace { poly, lambda, both } => {
            let p: CycloProduct = poly.parse()?;
            let l: Partition = lambda.parse()?;
            let c = CharCoeffs::new(&p, series_len(&l, p.degree()));
            let kt = c.trace_kt(&l)?;
            if both {
                let w = c.trace_weyl(&l)?;
                if w != kt {
                    return Err(Failure::Compute(format!("determinants disagree: {kt} vs {w}")));
                }
            }
            out!("{kt}");
        }
        Cmd::Dims { n, lmax, json } => {
            if n != 24 {
                return Err(Failure::Usage(format!("no lattice catalog for n = {n}; only n = 24 ships")));
            }
            let t = dim_table_24(lmax)?;
            if json {
                out!("{}", render_dim_table_json(&t));
            } else {
                out!("{}", render_dim_table(&t, n).trim_end());
            }
        }
        Cmd::Mu { n } => out!("{}", mu(n)?),
        Cmd::Verify { long } => {
            let opts = Options { long };
            for c in all_checks() {
                let o = c.run(&opts);
                out!("{}", o.line());
                if !o.passed {
                    return Err(Failure::Compute(format!("check {} failed", o.id)));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use magicstar_core::star::{self, Axes};
use magicstar_core::verify::{self, Suite};
use magicstar_core::{AlgebraId, Error, Family, MagicStarAlgebra, Mode, RootSystem};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "magicstar", version, about = "Generalized exceptional root systems and Magic Star algebras")]
struct Cli {
    /// Worker threads for the parallel sweeps (MAGICSTAR_THREADS overrides)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Target {
    /// g2, f4, e6, e7 or e8
    #[arg(long, value_parser = |s: &str| s.parse::<Family>())]
    algebra: Family,
    /// Level n ≥ 1; the ambient dimension is N = 4(n+1)
    #[arg(long, default_value_t = 1)]
    level: u32,
}

#[derive(Clone)]
struct Suites(Vec<Suite>);

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Subcommand)]
enum Command {
    /// Write the root table as TSV
    Roots {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites and print their reports
    Verify {
        #[command(flatten)]
        target: Target,
        /// Comma-separated suites or `all`
        #[arg(long, default_value = "all", value_parser = |s: &str| Suite::parse_list(s).map(Suites))]
        suite: Suites,
        /// Defaults to exhaustive for n ≤ 2 and sampled above
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write the structure constants of an e6, e7 or e8 algebra
    Brackets {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the Magic Star as SVG and its cell table as TSV
    Star {
        #[command(flatten)]
        target: Target,
        /// 123 for the full star, 456 for the star nested in its center
        #[arg(long, default_value = "123", value_parser = |s: &str| s.parse::<Axes>())]
        axes: Axes,
        /// SVG path
        #[arg(long)]
        out: Option<PathBuf>,
        /// Cell TSV path (printed to stdout when neither path is given)
        #[arg(long)]
        tsv: Option<PathBuf>,
    },
    /// Print the asymmetry signs of the simple roots, or of two roots
    Epsilon {
        #[command(flatten)]
        target: Target,
        /// Two zero-based root indices `a,b`, or two stored coordinate
        /// vectors `c1,c2,…;d1,d2,…`
        #[arg(long, allow_hyphen_values = true)]
        pair: Option<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Io(PathBuf, io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(Error::Io(_)) | CliError::Io(..) => EXIT_IO,
            CliError::Core(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn emit(out: Option<&Path>, body: &[u8]) -> CliResult<()> {
    match out {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p).map_err(|e| CliError::Io(p.into(), e))?);
            w.write_all(body).and_then(|_| w.flush()).map_err(|e| CliError::Io(p.into(), e))
        }
        None => io::stdout().lock().write_all(body).map_err(|e| CliError::Io("<stdout>".into(), e)),
    }
}

fn id(t: &Target) -> CliResult<AlgebraId> {
    Ok(AlgebraId::new(t.algebra, t.level)?)
}

fn run(cmd: Command) -> CliResult<bool> {
    match cmd {
        Command::Roots { target, out } => {
            let sys = RootSystem::generate(id(&target)?)?;
            emit(out.as_deref(), sys.to_tsv().as_bytes())?;
        }
        Command::Verify { target, suite, mode, samples, seed } => {
            let id = id(&target)?;
            let mode = match mode {
                None => Mode::default_for(id.level(), samples, seed),
                Some(ModeArg::Exhaustive) => Mode::Exhaustive,
                Some(ModeArg::Sampled) => Mode::Sampled { samples, seed },
            };
            let mut runner = verify::Runner::new(id, mode, seed);
            let mut ok = true;
            let mut stdout = io::stdout().lock();
            for s in suite.0 {
                let report = runner.run(s)?;
                ok &= report.passed();
                write!(stdout, "{report}").map_err(|e| CliError::Io("<stdout>".into(), e))?;
                stdout.flush().map_err(|e| CliError::Io("<stdout>".into(), e))?;
                eprintln!("{}: {:.3}s", report.suite, report.elapsed.as_secs_f64());
            }
            return Ok(ok);
        }
        Command::Brackets { target, out } => {
            let alg = MagicStarAlgebra::new(id(&target)?)?;
            emit(out.as_deref(), alg.structure_constants().to_text().as_bytes())?;
        }
        Command::Star { target, axes, out, tsv } => {
            let id = id(&target)?;
            let sys = RootSystem::generate(id)?;
            let cells = match axes {
                Axes::K123 => star::project_axes(&sys, axes)?,
                Axes::K456 => star::project_nested(&sys)?,
            };
            let title = format!("{} n={} axes={}", id.family(), id.level(), axes.name());
            if let Some(p) = &out {
                emit(Some(p), star::star_svg(&title, &cells).as_bytes())?;
            }
            if tsv.is_some() || out.is_none() {
                emit(tsv.as_deref(), star::cells_tsv(id, axes, &cells).as_bytes())?;
            }
        }
        Command::Epsilon { target, pair } => {
            let alg = MagicStarAlgebra::new(id(&target)?)?;
            let mut s = String::new();
            match pair.as_deref() {
                Some(p) => {
                    let (a, b) = parse_pair(alg.system(), p)?;
                    s += &format!("a\t{a}\t{}\n", alg.decomposition(a));
                    s += &format!("b\t{b}\t{}\n", alg.decomposition(b));
                    s += &format!("epsilon\t{}\n", alg.eps(a, b));
                }
                None => {
                    let t = alg.epsilon_table();
                    for i in 0..t.rank() {
                        let row: String = (0..t.rank()).map(|j| if t.parity(i, j) { '-' } else { '+' }).collect();
                        s += &row;
                        s.push('\n');
                    }
                }
            }
            emit(None, s.as_bytes())?;
        }
    }
    Ok(true)
}

/// Root indices from `a,b` or from two coordinate vectors split by `;`.
fn parse_pair(sys: &RootSystem, p: &str) -> CliResult<(usize, usize)> {
    let bad = || Error::NotARoot(format!("`{p}`: expected `a,b` or two coordinate vectors split by `;`"));
    let ints = |s: &str| -> CliResult<Vec<i64>> {
        s.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad().into())).collect()
    };
    let idx = |v: &[i64]| -> CliResult<usize> {
        let coords: Vec<i32> = v.iter().map(|&x| i32::try_from(x).map_err(|_| bad())).collect::<Result<_, _>>()?;
        sys.index_of(&coords).ok_or_else(|| Error::NotARoot(format!("{coords:?}")).into())
    };
    let (a, b) = match p.split_once(';') {
        Some((x, y)) => (idx(&ints(x)?)?, idx(&ints(y)?)?),
        None => match ints(p)?.as_slice() {
            &[a, b] if a >= 0 && b >= 0 => (a as usize, b as usize),
            _ => return Err(bad().into()),
        },
    };
    if a >= sys.len() || b >= sys.len() {
        return Err(Error::NotARoot(format!("root index out of range 0..{}", sys.len())).into());
    }
    Ok((a, b))
}

fn threads(flag: Option<usize>) -> Option<usize> {
    std::env::var("MAGICSTAR_THREADS").ok().and_then(|v| v.trim().parse().ok()).or(flag).filter(|&t| t > 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = threads(cli.threads) {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_FAIL),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dioph_core::arith::PrimeSet;
use dioph_core::bounds::{BoundConstants, LogFormInput};
use dioph_harness::config::schema_json;
use dioph_harness::{run, OutputFormat, Precision, RunError, ScanConfig, Task};

/// Exact and certified scans of Diophantine approximation quantities.
///
/// Numbers are written `7`, `-3/4`, `sqrt(N)`, `phi`, `root(M,D)` for the
/// real D-th root of M, or `quad(A,B,C,D)` for (A + B√D)/C. Exit codes: 0
/// success, 1 i/o error or baseline mismatch, 2 invalid input, 3 budget
/// exhausted.
#[derive(Parser, Debug)]
#[command(name = "dioph", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// csv (rows only, summary on stderr) or json (full envelope)
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// write the output here instead of stdout
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// worker threads (default: one per core)
    #[arg(long)]
    threads: Option<usize>,
    /// baseline file; written on first use, compared afterwards
    #[arg(long)]
    baseline: Option<PathBuf>,
    /// allowed drift of tracked statistics from the baseline
    #[arg(long, default_value_t = 0.02)]
    tolerance: f64,
    #[arg(long, default_value_t = Precision::default().start_bits)]
    start_bits: u64,
    /// give up refining enclosures past this many bits
    #[arg(long, default_value_t = Precision::default().max_bits)]
    max_bits: u64,
    /// Brent rho iterations per factorization
    #[arg(long, default_value_t = dioph_core::arith::FactorBudget::default().rho_iterations)]
    factor_budget: u64,
    /// JSON file with the constants c1..c7 used by the bound evaluators
    #[arg(long)]
    constants: Option<PathBuf>,
    /// print the equivalent config JSON and exit
    #[arg(long)]
    emit_config: bool,
}

#[derive(clap::ValueEnum, Debug, Clone, Copy)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Prime factorization by trial division and Brent's rho
    Factor {
        n: String,
        #[command(flatten)]
        common: Common,
    },
    /// S-part [n]_S: the largest divisor of n built from the primes of S
    Spart {
        n: String,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Continued fraction convergents p_n/q_n with certified errors |θ − p_n/q_n|
    Cf {
        number: String,
        #[arg(long, default_value_t = 20)]
        count: usize,
        /// instead list every p/q with q ≤ Q and |θ − p/q| < 1/(2q²)
        #[arg(long, value_name = "Q")]
        legendre: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Empirical approximation exponents
    Exponents {
        #[command(subcommand)]
        which: Exponent,
    },
    /// Lower bounds for linear forms in logarithms b1 log α1 + … + bn log αn
    Bounds {
        #[command(subcommand)]
        which: Bound,
    },
    /// S-parts along integer families
    Scan {
        #[command(subcommand)]
        which: Scan,
    },
    /// Solutions of a1 x1 + a2 x2 = 1 in S-units with exponents in [−E, E]
    Sunit {
        #[arg(long, default_value = "1")]
        a1: String,
        #[arg(long, default_value = "1")]
        a2: String,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[arg(long)]
        e: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Run a scan described by a JSON config file
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the JSON schema of config files
    Schema,
}

#[derive(Subcommand, Debug)]
enum Exponent {
    /// μ_n = −log|θ − p_n/q_n| / log q_n along the convergents
    Mu {
        number: String,
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[command(flatten)]
        common: Common,
    },
    /// v_n = −log‖b^n θ‖ / log b^n
    Vb {
        number: String,
        #[arg(long)]
        base: u64,
        #[arg(long)]
        n_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Exponent of max(|ξ − p/q|, |ζ − r/q|) against q for q ≤ Q
    Simul {
        xi: String,
        zeta: String,
        #[arg(long)]
        q_max: u64,
        #[command(flatten)]
        common: Common,
    },
    /// ν_n = −log‖ξ^n‖ / n, with the check ‖ξ^n‖ ≥ 3^(−(d−1)) C^(−n)
    Nu {
        number: String,
        #[arg(long)]
        n_max: u32,
        #[command(flatten)]
        common: Common,
    },
    /// v_p(a + bα) · log p / log|ab| for a p-adic root α of X² − tX + m
    Pmult {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// 0 picks the root with the smaller residue mod p
        #[arg(long, default_value_t = 0)]
        branch: u8,
        #[arg(long)]
        x_max: u64,
        #[arg(long, default_value_t = 64)]
        max_precision: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum Bound {
    /// Evaluate every lower-bound variant for log|Λ|, plus the p-adic bound when --prime and --delta are given
    Eval {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coefficients: Vec<i64>,
        /// clamped heights h*(α_j) ≥ 1
        #[arg(long, value_delimiter = ',', required = true)]
        heights: Vec<f64>,
        #[arg(long, default_value_t = 1)]
        degree: u32,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        b_n_cap: Option<f64>,
        /// bound B from log|Λ| ≤ −δB with this δ
        #[arg(long)]
        coefficient_delta: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Largest x ≥ 3H with x ≤ K (log(x/H))^e
    Invert {
        #[arg(long)]
        k: f64,
        #[arg(long)]
        h: f64,
        #[arg(long, default_value_t = 1)]
        e: u32,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum Scan {
    /// Integers prime to b with at most k nonzero base-b digits
    Sparse {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        max_digits: u32,
        #[arg(long)]
        count: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// u_n = a1 u_(n−1) + … + ak u_(n−k), with dominant-root certification
    Recurrence {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coefficients: Vec<String>,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        initial: Vec<String>,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// a^m + b^n + 1 for 1 ≤ m ≤ M, 1 ≤ n ≤ N
    Powersum {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        m_max: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// x ± y for coprime T-units x ≥ y with exponents at most E
    Tunits {
        #[arg(long, value_delimiter = ',', required = true)]
        t_primes: Vec<u64>,
        #[arg(long)]
        e: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// f(n) for lo ≤ n ≤ hi, coefficients from the constant term up
    Poly {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coefficients: Vec<String>,
        #[arg(long, default_value_t = 1)]
        lo: i64,
        #[arg(long)]
        hi: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// F(x, y) = Σ c_i x^(d−i) y^i at primitive points with max(|x|, |y|) ≤ H
    Form {
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        coefficients: Vec<String>,
        #[arg(long)]
        height: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// [p_n q_n]_S and the greatest prime factor of p_n q_n along the convergents
    Convergents {
        number: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Q_n = q_(n−1) q_n q_(n+1) over S, with q_n | gcd(Q_n, q_(n+1) − q_(n−1)) checked
    Triples {
        number: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// For each prime q, the y minimizing the height of n / y^q
    Frontier {
        n: String,
        #[arg(long)]
        q_max: u64,
        #[arg(long)]
        y_max: u64,
        #[command(flatten)]
        common: Common,
    },
    /// q/p = (A_q/A_p) Π ℓ^b with p = ⌊qξ⌋ and a certified bound on |ξ q/p − 1|
    Lambdaq {
        number: String,
        #[arg(long)]
        q_min: u64,
        #[arg(long)]
        q_max: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
        #[command(flatten)]
        common: Common,
    },
}

fn primes(v: Vec<u64>) -> Result<PrimeSet, RunError> {
    PrimeSet::new(v).map_err(|e| RunError::Invalid(e.to_string()))
}

fn config(task: Task, common: Common) -> Result<(ScanConfig, Option<PathBuf>, bool), RunError> {
    let constants = match &common.constants {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
            let c: BoundConstants = serde_json::from_str(&text)
                .map_err(|e| RunError::Invalid(format!("{}: {e}", path.display())))?;
            Some(c)
        }
        None => None,
    };
    let mut cfg = ScanConfig::new(task);
    cfg.format = match common.format {
        Format::Csv => OutputFormat::Csv,
        Format::Json => OutputFormat::Json,
    };
    cfg.threads = common.threads;
    cfg.baseline = common.baseline;
    cfg.tolerance = common.tolerance;
    cfg.precision = Precision {
        start_bits: common.start_bits,
        max_bits: common.max_bits,
    };
    cfg.factor_budget = common.factor_budget;
    cfg.constants = constants;
    cfg.validate()?;
    Ok((cfg, common.out, common.emit_config))
}

fn build(cmd: Command) -> Result<(ScanConfig, Option<PathBuf>, bool), RunError> {
    let (task, common) = match cmd {
        Command::Run { config, out } => return Ok((ScanConfig::load(&config)?, out, false)),
        Command::Schema => unreachable!("handled before"),
        Command::Factor { n, common } => (Task::Factor { n }, common),
        Command::Spart {
            n,
            primes: p,
            common,
        } => (
            Task::Spart {
                n,
                primes: primes(p)?,
            },
            common,
        ),
        Command::Cf {
            number,
            count,
            legendre,
            common,
        } => match legendre {
            Some(q_max) => (Task::Legendre { number, q_max }, common),
            None => (Task::Cf { number, count }, common),
        },
        Command::Exponents { which } => match which {
            Exponent::Mu {
                number,
                count,
                common,
            } => (Task::Mu { number, count }, common),
            Exponent::Vb {
                number,
                base,
                n_max,
                common,
            } => (
                Task::Vb {
                    number,
                    base,
                    n_max,
                },
                common,
            ),
            Exponent::Simul {
                xi,
                zeta,
                q_max,
                common,
            } => (Task::Simul { xi, zeta, q_max }, common),
            Exponent::Nu {
                number,
                n_max,
                common,
            } => (Task::Nu { number, n_max }, common),
            Exponent::Pmult {
                p,
                t,
                m,
                branch,
                x_max,
                max_precision,
                common,
            } => (
                Task::Pmult {
                    p,
                    t,
                    m,
                    branch,
                    x_max,
                    max_precision,
                },
                common,
            ),
        },
        Command::Bounds { which } => match which {
            Bound::Eval {
                coefficients,
                heights,
                degree,
                prime,
                delta,
                b_n_cap,
                coefficient_delta,
                common,
            } => {
                let input = LogFormInput {
                    coefficients,
                    heights,
                    degree,
                    prime,
                    delta,
                    b_n_cap,
                };
                (
                    Task::BoundsEval {
                        input,
                        delta: coefficient_delta,
                    },
                    common,
                )
            }
            Bound::Invert { k, h, e, common } => (Task::BoundsInvert { k, h, e }, common),
        },
        Command::Scan { which } => match which {
            Scan::Sparse {
                base,
                max_digits,
                count,
                primes: p,
                common,
            } => (
                Task::Sparse {
                    base,
                    max_digits,
                    count,
                    primes: primes(p)?,
                },
                common,
            ),
            Scan::Recurrence {
                coefficients,
                initial,
                n_max,
                primes: p,
                common,
            } => (
                Task::Recurrence {
                    coefficients,
                    initial,
                    n_max,
                    primes: primes(p)?,
                },
                common,
            ),
            Scan::Powersum {
                a,
                b,
                m_max,
                n_max,
                primes: p,
                common,
            } => (
                Task::Powersum {
                    a,
                    b,
                    m_max,
                    n_max,
                    primes: primes(p)?,
                },
                common,
            ),
            Scan::Tunits {
                t_primes,
                e,
                primes: p,
                common,
            } => (
                Task::Tunits {
                    t_primes: primes(t_primes)?,
                    e,
                    primes: primes(p)?,
                },
                common,
            ),
            Scan::Poly {
                coefficients,
                lo,
                hi,
                primes: p,
                common,
            } => (
                Task::Poly {
                    coefficients,
                    lo,
                    hi,
                    primes: primes(p)?,
                },
                common,
            ),
            Scan::Form {
                coefficients,
                height,
                primes: p,
                common,
            } => (
                Task::Form {
                    coefficients,
                    height,
                    primes: primes(p)?,
                },
                common,
            ),
            Scan::Convergents {
                number,
                n_max,
                primes: p,
                common,
            } => (
                Task::Convergents {
                    number,
                    n_max,
                    primes: primes(p)?,
                },
                common,
            ),
            Scan::Triples {
                number,
                n_max,
                primes: p,
                common,
            } => (
                Task::Triples {
                    number,
                    n_max,
                    primes: primes(p)?,
                },
                common,
            ),
            Scan::Frontier {
                n,
                q_max,
                y_max,
                common,
            } => (Task::Frontier { n, q_max, y_max }, common),
            Scan::Lambdaq {
                number,
                q_min,
                q_max,
                primes: p,
                common,
            } => (
                Task::Lambdaq {
                    number,
                    q_min,
                    q_max,
                    primes: primes(p)?,
                },
                common,
            ),
        },
        Command::Sunit {
            a1,
            a2,
            primes: p,
            e,
            common,
        } => (
            Task::Sunit {
                a1,
                a2,
                primes: primes(p)?,
                e,
            },
            common,
        ),
    };
    config(task, common)
}

fn emit(out: &Option<PathBuf>, bytes: &[u8]) -> Result<(), RunError> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| RunError::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| RunError::Io(e.to_string())),
    }
}

fn main_inner(cli: Cli) -> Result<bool, RunError> {
    if matches!(cli.cmd, Command::Schema) {
        emit(&None, schema_json().as_bytes())?;
        return Ok(true);
    }
    let (cfg, out, emit_config) = build(cli.cmd)?;
    if emit_config {
        let text = serde_json::to_string_pretty(&cfg).expect("config serializes") + "\n";
        emit(&out, text.as_bytes())?;
        return Ok(true);
    }
    let envelope = run(&cfg)?;
    match cfg.format {
        OutputFormat::Csv => {
            emit(&out, &envelope.report().to_csv()?)?;
            envelope
                .write_summary(std::io::stderr().lock())
                .map_err(|e| RunError::Io(e.to_string()))?;
        }
        OutputFormat::Json => emit(&out, &envelope.to_json())?,
    }
    Ok(envelope.baseline.as_ref().is_none_or(|b| b.passed()))
}

fn main() -> ExitCode {
    match main_inner(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("dioph: baseline mismatch");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("dioph: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

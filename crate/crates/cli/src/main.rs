//! The `grasscode` command line tool: inspect and enumerate lifted
//! Gabidulin codes, encode messages, work with Pluecker coordinates and
//! ball equations, decode received subspaces, evaluate list-size bounds,
//! and run channel simulations.
//!
//! Exit codes: 0 on success, 2 on invalid input, 3 when an enumeration
//! budget is exceeded.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use grasscode::balls::{ball_equations, BallOutcome};
use grasscode::channel::{run_experiment, ChannelError, ChannelParams};
use grasscode::decode::{list_decode, list_size_lower_bound, DecodeError, DecodeMethod};
use grasscode::gabidulin::{lift, GabidulinCode, LiftedCode};
use grasscode::pluecker::{plucker_embed, plucker_inverse, PlueckerVector};
use grasscode::{Field, Matrix, Metric, Subspace};

/// Enumeration ceiling shared with the library.
const BUDGET: u128 = 1 << grasscode::decode::BUDGET_BITS;

#[derive(Parser)]
#[command(name = "grasscode", version, about = "List decoding of lifted Gabidulin subspace codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Subspace,
    Injection,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Metric {
        match m {
            MetricArg::Subspace => Metric::Subspace,
            MetricArg::Injection => Metric::Injection,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Plucker,
    Rational,
    Oracle,
}

impl From<MethodArg> for DecodeMethod {
    fn from(m: MethodArg) -> DecodeMethod {
        match m {
            MethodArg::Plucker => DecodeMethod::Plucker,
            MethodArg::Rational => DecodeMethod::Rational,
            MethodArg::Oracle => DecodeMethod::Oracle,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Inspect or enumerate a code
    Code {
        #[command(subcommand)]
        action: CodeAction,
    },
    /// Encode a message and show its codeword, matrix and lifted forms
    Encode {
        /// Code description (JSON)
        #[arg(long)]
        spec: PathBuf,
        /// Message symbols over F_{q^ell}, whitespace separated
        #[arg(long)]
        message: String,
    },
    /// Lift a matrix A to the row space of [I | A]
    Lift {
        /// Matrix text file
        #[arg(long)]
        matrix: PathBuf,
        /// Field order of the entries
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
    /// Pluecker coordinate conversions
    Plucker {
        #[command(subcommand)]
        action: PlueckerAction,
    },
    /// Balls in the Grassmannian
    Ball {
        #[command(subcommand)]
        action: BallAction,
    },
    /// List decode a received subspace
    Decode {
        #[arg(long)]
        spec: PathBuf,
        /// Received subspace: matrix text file over F_q
        #[arg(long)]
        received: PathBuf,
        #[arg(long)]
        method: MethodArg,
        #[arg(long)]
        metric: MetricArg,
        #[arg(long)]
        radius: usize,
        /// Emit the list as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Worst-case list-size lower bound for the code
    Bounds {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        metric: MetricArg,
        #[arg(long)]
        radius: usize,
    },
    /// Random-channel experiment: encode, transmit, decode
    Simulate {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        deletions: usize,
        #[arg(long)]
        insertions: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        method: MethodArg,
        #[arg(long)]
        radius: usize,
        #[arg(long, default_value = "subspace")]
        metric: MetricArg,
        /// Emit the full report as JSON instead of a text summary
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum CodeAction {
    /// Print the code parameters
    Info {
        #[arg(long)]
        spec: PathBuf,
    },
    /// Print every codeword of the lifted code
    Enumerate {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Subcommand)]
enum PlueckerAction {
    /// Embed the row space of a matrix
    Embed {
        /// Matrix text file
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
    /// Recover the subspace of a coordinate vector
    Invert {
        /// Colon-separated coordinate vector file
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        q: u64,
        /// Ambient dimension
        #[arg(long)]
        n: usize,
        /// Subspace dimension
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum BallAction {
    /// Emit the linear equations describing a ball
    Eqs {
        /// Center subspace: matrix text file
        #[arg(long)]
        center: PathBuf,
        #[arg(long)]
        metric: MetricArg,
        #[arg(long)]
        radius: usize,
        /// Dimension of the subspaces the ball is intersected with
        #[arg(long = "dim-k")]
        dim_k: usize,
        #[arg(long, default_value_t = 2)]
        q: u64,
    },
}

enum CliError {
    Invalid(String),
    Budget(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Invalid(msg) | CliError::Budget(msg) => write!(f, "{msg}"),
        }
    }
}

fn invalid(e: impl fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

impl From<DecodeError> for CliError {
    fn from(e: DecodeError) -> CliError {
        match e {
            DecodeError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            DecodeError::BadBoundParameters { .. } => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<ChannelError> for CliError {
    fn from(e: ChannelError) -> CliError {
        match e {
            ChannelError::Decode(inner) => inner.into(),
            ChannelError::Infeasible { .. } => CliError::Invalid(e.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn load_code(path: &Path) -> Result<GabidulinCode, CliError> {
    let value: Value = serde_json::from_str(&read_file(path)?).map_err(invalid)?;
    GabidulinCode::from_json(&value).map_err(invalid)
}

fn load_matrix(path: &Path, q: u64) -> Result<Matrix, CliError> {
    let field = Field::prime(q).map_err(invalid)?;
    Matrix::parse_text(&field, &read_file(path)?).map_err(invalid)
}

fn load_subspace(path: &Path, q: u64) -> Result<Subspace, CliError> {
    Subspace::from_rows(&load_matrix(path, q)?).map_err(invalid)
}

fn print_list(list: &grasscode::decode::DecodeList, json: bool) {
    if json {
        println!("{}", list.to_json());
        return;
    }
    println!("list size: {}", list.len());
    for u in list.codewords() {
        println!("codeword:");
        println!("{}", u.basis().to_text());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Code { action } => match action {
            CodeAction::Info { spec } => {
                let code = load_code(&spec)?;
                let lifted = LiftedCode::new(code.clone());
                println!("q: {}", code.q());
                println!("ell: {}", code.ell());
                println!("k: {}", code.k());
                println!("delta: {}", code.delta());
                println!("ambient dimension: {}", lifted.n());
                println!("message symbols: {}", code.dimension());
                println!("codewords: {}", lifted.codeword_count());
                let modulus: Vec<String> =
                    code.field().modulus().iter().map(u64::to_string).collect();
                println!("modulus: {}", modulus.join(" "));
                let g: Vec<String> = code.g().iter().map(|e| e.to_string()).collect();
                println!("g: {}", g.join(" "));
            }
            CodeAction::Enumerate { spec } => {
                let code = load_code(&spec)?;
                let lifted = LiftedCode::new(code);
                if lifted.codeword_count() > BUDGET {
                    return Err(CliError::Budget(format!(
                        "{} codewords exceed the enumeration budget of {BUDGET}",
                        lifted.codeword_count()
                    )));
                }
                for (i, u) in lifted.codewords().iter().enumerate() {
                    println!("# codeword {i}");
                    println!("{}", u.basis().to_text());
                }
            }
        },
        Command::Encode { spec, message } => {
            let code = load_code(&spec)?;
            let symbols: Result<Vec<_>, _> =
                message.split_whitespace().map(|tok| code.field().parse_element(tok)).collect();
            let symbols = symbols.map_err(invalid)?;
            if symbols.len() != code.dimension() {
                return Err(CliError::Invalid(format!(
                    "message needs {} symbols, got {}",
                    code.dimension(),
                    symbols.len()
                )));
            }
            let codeword = code.encode(&symbols);
            let words: Vec<String> = codeword.iter().map(|e| e.to_string()).collect();
            println!("codeword: {}", words.join(" "));
            let matrix = code.codeword_matrix(&symbols);
            println!("matrix:");
            println!("{}", matrix.to_text());
            println!("lifted:");
            println!("{}", lift(&matrix).basis().to_text());
        }
        Command::Lift { matrix, q } => {
            let a = load_matrix(&matrix, q)?;
            println!("{}", lift(&a).basis().to_text());
        }
        Command::Plucker { action } => match action {
            PlueckerAction::Embed { input, q } => {
                let sub = load_subspace(&input, q)?;
                println!("{}", plucker_embed(&sub).to_text());
            }
            PlueckerAction::Invert { input, q, n, k } => {
                let field = Field::prime(q).map_err(invalid)?;
                let x = PlueckerVector::parse_text(&field, n, k, &read_file(&input)?)
                    .map_err(invalid)?;
                let sub = plucker_inverse(&x).map_err(invalid)?;
                println!("{}", sub.basis().to_text());
            }
        },
        Command::Ball { action } => match action {
            BallAction::Eqs { center, metric, radius, dim_k, q } => {
                let sub = load_subspace(&center, q)?;
                match ball_equations(&sub, metric.into(), radius, dim_k) {
                    BallOutcome::Empty => {
                        println!("# empty ball: no {dim_k}-dimensional subspace within radius {radius}");
                    }
                    BallOutcome::Everything => {
                        println!("# full ball: every {dim_k}-dimensional subspace lies within radius {radius}; no equations");
                    }
                    BallOutcome::Equations(eqs) => println!("{}", eqs.to_text()),
                }
            }
        },
        Command::Decode { spec, received, method, metric, radius, json } => {
            let code = load_code(&spec)?;
            let lifted = LiftedCode::new(code);
            let word = load_subspace(&received, lifted.base_field().order())?;
            if word.ambient_dim() != lifted.n() {
                return Err(CliError::Invalid(format!(
                    "received word has ambient dimension {}, the code needs {}",
                    word.ambient_dim(),
                    lifted.n()
                )));
            }
            let method: DecodeMethod = method.into();
            if method == DecodeMethod::Oracle && lifted.codeword_count() > BUDGET {
                return Err(CliError::Budget(format!(
                    "oracle decoding needs {} codewords, over the budget of {BUDGET}",
                    lifted.codeword_count()
                )));
            }
            let list = list_decode(&lifted, &word, method, metric.into(), radius)?;
            print_list(&list, json);
        }
        Command::Bounds { spec, metric, radius } => {
            let code = load_code(&spec)?;
            let lifted = LiftedCode::new(code.clone());
            let report =
                list_size_lower_bound(metric.into(), radius, lifted.n(), code.k(), code.delta(), code.q())?;
            println!("{}", report.to_json());
        }
        Command::Simulate {
            spec,
            deletions,
            insertions,
            trials,
            seed,
            method,
            radius,
            metric,
            json,
        } => {
            let code = load_code(&spec)?;
            let lifted = LiftedCode::new(code);
            let params = ChannelParams { deletions, insertions, seed };
            let report =
                run_experiment(&lifted, &params, method.into(), metric.into(), radius, trials)?;
            if json {
                println!("{}", report.to_json());
            } else {
                println!("trials: {}", report.trials);
                println!("success rate: {}", report.success_rate);
                println!("average list size: {}", report.avg_list_size);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

use clap::{Parser, Subcommand, ValueEnum};
use pinrep_cli::config::{parse_digits, parse_partition, parse_rat_list, parse_usize_list, RawConfig};
use pinrep_cli::{experiments, AppError};
use pinrep_core::flows::{iet_coding, poly_coding, Iet, IntervalPartition, Permutation, PolyCodingSpec};
use pinrep_core::numtheory::{cf_expand, convergents, farey, stau_construct, RealParam};
use pinrep_core::rat::parse_rat;
use pinrep_core::repetitions::{profile, RepKind};
use pinrep_core::torus::TorusPoint;
use pinrep_core::window::SymbolicWindow;
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact symbolic dynamics toolkit: codings, repetition statistics,
/// discrepancy, and the experiment registry.
#[derive(Parser)]
#[command(name = "pinrep", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Farey sequence of the given order as a JSON array.
    Farey { order: u64 },
    /// Continued fraction digits of a rational in (0, 1), as a JSON array.
    Cf { value: String },
    /// Convergent table of a rational or digit list, as CSV.
    Convergents {
        /// A rational p/q in (0, 1); mutually exclusive with --digits.
        value: Option<String>,
        /// Digit list such as 1,2,2 or 1^40.
        #[arg(long)]
        digits: Option<String>,
    },
    /// Construct a parameter with certified odd well-approximation
    /// witnesses; prints the digit list as a JSON array.
    StauConstruct {
        #[arg(long)]
        tau: String,
        #[arg(long)]
        count: usize,
    },
    /// Exact discrepancy decay series along convergent denominators, CSV.
    Discrepancy {
        /// Continued fraction digits of alpha, e.g. 1^70.
        #[arg(long)]
        alpha: String,
        #[arg(long, default_value = "0")]
        beta: String,
        #[arg(long, default_value = "0")]
        gamma: String,
        #[arg(long)]
        depth: usize,
    },
    /// Generate a symbolic window and print it as JSON.
    Generate {
        #[arg(long, value_enum)]
        model: Model,
        /// Width W: the window covers positions -W..=W.
        #[arg(long)]
        width: usize,
        /// Exchange lengths (iet), e.g. 1/3,2/3.
        #[arg(long)]
        lambda: Option<String>,
        /// Exchange permutation in one line notation (iet), e.g. 2,1.
        #[arg(long)]
        pi: Option<String>,
        /// Orbit start point (iet).
        #[arg(long)]
        x0: Option<String>,
        /// Interval partition boundaries including 0 and the total (iet),
        /// e.g. 0,1/3,1.
        #[arg(long)]
        cuts: Option<String>,
        /// Labels for the interval partition pieces (iet), e.g. a,b.
        #[arg(long)]
        labels: Option<String>,
        /// Leading coefficient (quad/poly): p/q for exact or cf:1^60.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
        /// Degree (poly); quad fixes r = 2.
        #[arg(long)]
        r: Option<u32>,
        /// Circle partition (quad/poly), e.g. 0:a,1/2:b.
        #[arg(long)]
        partition: Option<String>,
        /// Certification margin.
        #[arg(long, default_value = "0")]
        margin: String,
    },
    /// Repetition statistics of a window JSON file, as CSV.
    Profile {
        /// Path to a window JSON file, or - for stdin.
        #[arg(long)]
        window: String,
        #[arg(long, value_enum, default_value_t = Kind::OneSided)]
        kind: Kind,
        #[arg(long)]
        n_lo: Option<u64>,
        #[arg(long)]
        n_hi: Option<u64>,
    },
    /// Run a registered experiment from a config file.
    Run {
        /// One of: badly-approx, roth, rational-alpha, stau-poly,
        /// discrepancy-decay, veech-probe.
        experiment: String,
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Iet,
    Quad,
    Poly,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    OneSided,
    TwoSided,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("PINREP_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(AppError::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> AppError {
    AppError::config(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> AppError {
    AppError::runtime(e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, AppError> {
    match cli.command {
        Command::Farey { order } => {
            let seq = farey(order).map_err(config_err)?;
            let names: Vec<String> = seq.iter().map(|f| f.to_string()).collect();
            println!("{}", serde_json::to_string(&names).expect("serializes"));
        }
        Command::Cf { value } => {
            let x = parse_rat(&value).map_err(config_err)?;
            let digits = cf_expand(&x).map_err(config_err)?;
            let names: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
            println!("{}", serde_json::to_string(&names).expect("serializes"));
        }
        Command::Convergents { value, digits } => {
            let digit_list = match (value, digits) {
                (Some(v), None) => {
                    let x = parse_rat(&v).map_err(config_err)?;
                    cf_expand(&x).map_err(config_err)?
                }
                (None, Some(d)) => parse_digits(&d).map_err(config_err)?,
                _ => {
                    return Err(AppError::config(
                        "give either a rational value or --digits, not both",
                    ))
                }
            };
            let table = convergents(&digit_list).map_err(config_err)?;
            print!("{}", table.to_csv());
        }
        Command::StauConstruct { tau, count } => {
            let tau = parse_rat(&tau).map_err(config_err)?;
            let alpha = stau_construct(&tau, count).map_err(config_err)?;
            let names: Vec<String> =
                alpha.digits().expect("prefix").iter().map(|d| d.to_string()).collect();
            println!("{}", serde_json::to_string(&names).expect("serializes"));
        }
        Command::Discrepancy { alpha, beta, gamma, depth } => {
            let digits = parse_digits(&alpha).map_err(config_err)?;
            let alpha = RealParam::from_digits(digits).map_err(config_err)?;
            let beta = TorusPoint::new(parse_rat(&beta).map_err(config_err)?);
            let gamma = TorusPoint::new(parse_rat(&gamma).map_err(config_err)?);
            let series = pinrep_core::discrepancy::discrepancy_decay(&alpha, &beta, &gamma, depth)
                .map_err(runtime_err)?;
            println!("k,q_k,D_num,D_den,D_float,log_q,log_D");
            for d in &series {
                let value = pinrep_core::rat::to_f64(&d.report.value);
                println!(
                    "{},{},{},{},{},{},{}",
                    d.k,
                    d.q,
                    d.report.value.numer(),
                    d.report.value.denom(),
                    value,
                    (d.q as f64).ln(),
                    value.ln()
                );
            }
        }
        Command::Generate {
            model,
            width,
            lambda,
            pi,
            x0,
            cuts,
            labels,
            alpha,
            beta,
            gamma,
            r,
            partition,
            margin,
        } => {
            let margin = parse_rat(&margin).map_err(config_err)?;
            let window = match model {
                Model::Iet => {
                    let lambda = parse_rat_list(&required(lambda, "--lambda")?)
                        .map_err(config_err)?;
                    let pi_images = parse_usize_list(&required(pi, "--pi")?)
                        .map_err(config_err)?;
                    let x0 = parse_rat(&required(x0, "--x0")?).map_err(config_err)?;
                    let cuts = parse_rat_list(&required(cuts, "--cuts")?)
                        .map_err(config_err)?;
                    let labels: Vec<String> = required(labels, "--labels")?
                        .split(',')
                        .map(|s| s.trim().to_string())
                        .collect();
                    let pi = Permutation::one_line(pi_images).map_err(config_err)?;
                    let iet = Iet::new(lambda, pi).map_err(config_err)?;
                    let part = IntervalPartition::new(cuts, labels).map_err(config_err)?;
                    iet_coding(&iet, &x0, &part, &margin, width).map_err(runtime_err)?
                }
                Model::Quad | Model::Poly => {
                    let degree = match model {
                        Model::Quad => 2,
                        Model::Poly => r.ok_or_else(|| AppError::config("poly needs --r"))?,
                        Model::Iet => unreachable!(),
                    };
                    let alpha = parse_real_param(&required(alpha, "--alpha")?)?;
                    let beta = parse_real_param(&required(beta, "--beta")?)?;
                    let gamma = parse_real_param(&required(gamma, "--gamma")?)?;
                    let part = parse_partition(&required(partition, "--partition")?)
                        .map_err(config_err)?;
                    let spec = PolyCodingSpec { partition: part, margin };
                    poly_coding(&alpha, &beta, &gamma, degree, &spec, width)
                }
            };
            println!("{}", serde_json::to_string(&window).expect("serializes"));
        }
        Command::Profile { window, kind, n_lo, n_hi } => {
            let text = if window == "-" {
                use std::io::Read;
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf).map_err(runtime_err)?;
                buf
            } else {
                std::fs::read_to_string(&window).map_err(runtime_err)?
            };
            let w: SymbolicWindow = serde_json::from_str(&text).map_err(config_err)?;
            let (default_lo, default_hi) = pinrep_core::repetitions::default_shift_range(&w);
            let n_lo = n_lo.unwrap_or(default_lo);
            let n_hi = n_hi.unwrap_or(default_hi);
            let kind = match kind {
                Kind::OneSided => RepKind::OneSided,
                Kind::TwoSided => RepKind::TwoSided,
            };
            let prof = profile(&w, n_lo, n_hi, kind).map_err(config_err)?;
            print!("{}", prof.to_csv());
        }
        Command::Run { experiment, config } => {
            let mut raw = RawConfig::load(&config)?;
            let out = raw.optional("out");
            let result = experiments::run(&experiment, raw)?;
            print!("{}", result.summary_json());
            if let Some(prefix) = out {
                result.write_files(&prefix)?;
            }
            return Ok(ExitCode::from(result.verdict.exit_code()));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn required(value: Option<String>, flag: &str) -> Result<String, AppError> {
    value.ok_or_else(|| AppError::config(format!("missing {flag}")))
}

/// `p/q` for an exact parameter, `cf:DIGITS` for a certified prefix.
fn parse_real_param(text: &str) -> Result<RealParam, AppError> {
    if let Some(digits) = text.strip_prefix("cf:") {
        let digits = parse_digits(digits).map_err(config_err)?;
        RealParam::from_digits(digits).map_err(config_err)
    } else {
        Ok(RealParam::Exact(parse_rat(text).map_err(config_err)?))
    }
}


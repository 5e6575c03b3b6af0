use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cardmpc::audit::{check_security_variant, verify_correctness, SampledConfig};
use cardmpc::cost::cost_table;
use cardmpc::{
    check_security_sampled, run_observed, Error, InputVector, Protocol, RandomnessTape,
    SeededSource, Variant, DEFAULT_BUDGET,
};

mod render;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "cardmpc", version, about = "Card-based overwriting protocol simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Execute one run and print the step-by-step public view
    Run(RunArgs),
    /// Check every input against every tape
    Verify(SweepArgs),
    /// Audit transcript distributions for leaks
    Audit(AuditArgs),
    /// Print card and shuffle counts
    Costs(CostArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EngineVariant {
    Faithful,
    SkipFinalShuffle,
    SkipFirstLoopShuffle,
}

impl From<EngineVariant> for Variant {
    fn from(v: EngineVariant) -> Self {
        match v {
            EngineVariant::Faithful => Variant::Faithful,
            EngineVariant::SkipFinalShuffle => Variant::SkipFinalShuffle,
            EngineVariant::SkipFirstLoopShuffle => Variant::SkipFirstLoopShuffle,
        }
    }
}

#[derive(Args, Debug)]
struct Shape {
    #[arg(long, value_parser = parse_protocol)]
    protocol: Protocol,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    shape: Shape,
    /// Comma-separated player values, e.g. 2,3,2,0,2
    #[arg(long, value_delimiter = ',', required = true)]
    inputs: Vec<usize>,
    #[arg(long, conflicts_with = "tape")]
    seed: Option<u64>,
    /// Replay a recorded tape, e.g. [{"scramble":[2,1,3]},{"shift":1}]
    #[arg(long)]
    tape: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    shape: Shape,
    /// Maximum number of protocol runs
    #[arg(long, env = "CARDMPC_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u128,
}

#[derive(Args, Debug)]
struct AuditArgs {
    #[command(flatten)]
    sweep: SweepArgs,
    /// Estimate distributions by sampling instead of enumerating every tape
    #[arg(long)]
    sampled: bool,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.01)]
    tv_threshold: f64,
    /// Audit a deliberately broken engine
    #[arg(long, value_enum, default_value_t = EngineVariant::Faithful)]
    variant: EngineVariant,
}

#[derive(Args, Debug)]
struct CostArgs {
    #[arg(long)]
    k: u64,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn parse_protocol(s: &str) -> Result<Protocol, String> {
    s.parse()
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn engine_error(e: Error) -> ExitCode {
    match e {
        Error::BudgetExceeded { .. } => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_BUDGET)
        }
        other => usage(other),
    }
}

fn check_shape(shape: &Shape) -> Result<(), ExitCode> {
    if shape.k < 2 {
        return Err(usage(format!("--k must be at least 2, got {}", shape.k)));
    }
    if shape.n < 1 {
        return Err(usage("--n must be at least 1"));
    }
    Ok(())
}

fn cmd_run(args: RunArgs) -> ExitCode {
    let shape = &args.shape;
    if let Err(code) = check_shape(shape) {
        return code;
    }
    if args.inputs.len() != shape.n {
        return usage(format!(
            "--inputs has {} values but --n is {}",
            args.inputs.len(),
            shape.n
        ));
    }
    let inputs = match InputVector::new(args.inputs.clone(), shape.k) {
        Ok(x) => x,
        Err(e) => return usage(e),
    };

    let mut frames = Vec::new();
    let observe = |stage: &cardmpc::Stage, m: &cardmpc::CardMatrix| {
        frames.push((stage.to_string(), m.public_view()));
    };
    let result = match &args.tape {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return usage(format!("cannot read {}: {e}", path.display())),
            };
            let mut tape = match RandomnessTape::from_json(&text) {
                Ok(t) => t,
                Err(e) => return usage(e),
            };
            let run = run_observed(shape.protocol, &inputs, &mut tape, Variant::Faithful, observe);
            if run.is_ok() && tape.consumed() != tape.len() {
                return usage(format!(
                    "tape has {} decisions but the run consumed {}",
                    tape.len(),
                    tape.consumed()
                ));
            }
            run
        }
        None => {
            let mut source = SeededSource::new(args.seed.unwrap_or(0));
            run_observed(shape.protocol, &inputs, &mut source, Variant::Faithful, observe)
        }
    };
    let run = match result {
        Ok(run) => run,
        Err(e) => return engine_error(e),
    };

    match shape.format {
        Format::Json => println!("{}", serde_json::to_string(&run.record()).expect("record")),
        Format::Text => print!("{}", render::trace(&run, &frames)),
    }
    ExitCode::SUCCESS
}

fn cmd_verify(args: SweepArgs) -> ExitCode {
    if let Err(code) = check_shape(&args.shape) {
        return code;
    }
    let Shape {
        protocol, k, n, format,
    } = args.shape;
    let report = match verify_correctness(protocol, k, n, args.budget) {
        Ok(r) => r,
        Err(e) => return engine_error(e),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report")),
        Format::Text => {
            println!(
                "{protocol} k={k} n={n}: {} runs, {} mismatches",
                report.runs, report.mismatches
            );
            if let Some(m) = &report.first_mismatch {
                println!(
                    "first mismatch: inputs {:?} tape {} expected {} got {}",
                    m.inputs,
                    m.tape.to_json(),
                    m.expected,
                    m.got
                );
            }
        }
    }
    if report.mismatches == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn cmd_audit(args: AuditArgs) -> ExitCode {
    let shape = &args.sweep.shape;
    if let Err(code) = check_shape(shape) {
        return code;
    }
    let variant = Variant::from(args.variant);
    let report = if args.sampled {
        let config = SampledConfig {
            tv_threshold: args.tv_threshold,
            variant,
            ..SampledConfig::default()
        };
        check_security_sampled(shape.protocol, shape.k, shape.n, args.samples, args.seed, config)
    } else {
        check_security_variant(shape.protocol, variant, shape.k, shape.n, args.sweep.budget)
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return engine_error(e),
    };
    match shape.format {
        Format::Json => println!("{}", report.to_json()),
        Format::Text => print!("{}", render::audit(&report)),
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn cmd_costs(args: CostArgs) -> ExitCode {
    if args.k < 2 || args.n < 1 {
        return usage("costs need --k >= 2 and --n >= 1");
    }
    let table = cost_table(args.k, args.n);
    match args.format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .iter()
                .map(|(s, c)| {
                    serde_json::json!({"scheme": s.to_string(), "cards": c.cards, "shuffles": c.shuffles})
                })
                .collect();
            println!("{}", serde_json::Value::Array(rows));
        }
        Format::Text => {
            println!("k={} n={}", args.k, args.n);
            println!("{:<10} {:>8} {:>9}", "scheme", "cards", "shuffles");
            for (s, c) in table {
                println!("{:<10} {:>8} {:>9}", s.to_string(), c.cards, c.shuffles);
            }
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Costs(a) => cmd_costs(a),
    }
}

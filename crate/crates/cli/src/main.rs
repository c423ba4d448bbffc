use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use tarsis::analysis::{concrete_run, ConcreteMemory, Inputs, Value, DEFAULT_FUEL};
use tarsis::imp::{parse, Program};
use tarsis_cli::bench::{bench, golden, golden_diff, table};
use tarsis_cli::report::analyze;
use tarsis_cli::settings::{DomainKind, Format, Settings};

#[derive(Parser)]
#[command(
    name = "tarsis",
    version,
    about = "String analysis of IMP programs with automata over a string alphabet"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Abstract interpretation of a program; reports alarms at asserts.
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum)]
        domain: Option<DomainKind>,
        #[arg(long)]
        widening_n: Option<usize>,
        #[arg(long)]
        tau: Option<usize>,
        #[arg(long)]
        partition_bound: Option<usize>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Include the analysis time in the report.
        #[arg(long)]
        time: bool,
        /// JSON file with defaults for the flags above.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write a Graphviz file per automaton-valued variable at each assert.
        #[arg(long, value_name = "DIR")]
        dot: Option<PathBuf>,
    },
    /// Concrete execution; `read` and `nondet` inputs are consumed in order.
    Run {
        file: PathBuf,
        /// `read=<string>`, `nondet=<bool>`, or an initial binding `x=<value>`.
        #[arg(long = "input", value_name = "K=V")]
        inputs: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
    },
    /// Analyzes every `.imp` file of a directory with every domain.
    Bench {
        dir: PathBuf,
        /// Expected correctness columns; defaults to `<dir>/bench.golden`.
        #[arg(long)]
        golden: Option<PathBuf>,
        /// Rewrite the golden file instead of checking it.
        #[arg(long)]
        update_golden: bool,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// Failure kinds, mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Alarm,
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        Failure::Usage(e)
    }
}

fn load(path: &Path) -> anyhow::Result<Program> {
    let src =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse(&src).map_err(|e| anyhow::anyhow!("{}:{e}", path.display()))
}

fn settings_from(config: Option<&Path>) -> anyhow::Result<Settings> {
    config.map_or_else(|| Ok(Settings::default()), Settings::from_file)
}

fn parse_value(v: &str) -> Value {
    match v {
        "true" => Value::Bool(true),
        "false" => Value::Bool(false),
        _ => v
            .parse()
            .map_or_else(|_| Value::Str(v.to_string()), Value::Int),
    }
}

fn run_command(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            file,
            domain,
            widening_n,
            tau,
            partition_bound,
            format,
            time,
            config,
            dot,
        } => {
            let mut s = settings_from(config.as_deref())?;
            s.domain = domain.unwrap_or(s.domain);
            s.widening_n = widening_n.unwrap_or(s.widening_n);
            s.tau = tau.unwrap_or(s.tau);
            s.partition_bound = partition_bound.unwrap_or(s.partition_bound);
            s.format = format.unwrap_or(s.format);
            let program = load(&file)?;
            let mut report =
                analyze(&program, &file.display().to_string(), &s).map_err(anyhow::Error::from)?;
            if !time {
                report.timing_ms = None;
            }
            if let Some(dir) = dot {
                std::fs::create_dir_all(&dir)
                    .with_context(|| format!("creating {}", dir.display()))?;
                for (name, text) in &report.dots {
                    let path = dir.join(format!("{name}.dot"));
                    std::fs::write(&path, text)
                        .with_context(|| format!("writing {}", path.display()))?;
                }
            }
            match s.format {
                Format::Text => print!("{}", report.to_text()),
                Format::Json => println!("{}", report.to_json()),
            }
            if report.has_definite_alarm() {
                return Err(Failure::Alarm);
            }
            Ok(())
        }
        Command::Run { file, inputs, fuel } => {
            let program = load(&file)?;
            let mut given = Inputs::default();
            let mut memory = ConcreteMemory::new();
            for kv in &inputs {
                let Some((k, v)) = kv.split_once('=') else {
                    return Err(anyhow::anyhow!("input `{kv}` is not of the form K=V").into());
                };
                match k {
                    "read" => given.reads.push(v.to_string()),
                    "nondet" => match parse_value(v) {
                        Value::Bool(b) => given.nondets.push(b),
                        _ => {
                            return Err(
                                anyhow::anyhow!("nondet wants true or false, got `{v}`").into()
                            )
                        }
                    },
                    _ => {
                        memory.insert(k.to_string(), parse_value(v));
                    }
                }
            }
            let run = match concrete_run(&program, memory, &given, fuel) {
                Ok(run) => run,
                Err(e) => {
                    eprintln!("{}: runtime error: {e}", file.display());
                    return Err(Failure::Alarm);
                }
            };
            for (x, v) in &run.memory {
                println!("{x}={v}");
            }
            let failed: Vec<_> = run.asserts.iter().filter(|(_, ok)| !ok).collect();
            for (pos, _) in &failed {
                eprintln!("{}:{pos}: assertion failed", file.display());
            }
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Alarm)
            }
        }
        Command::Bench {
            dir,
            golden: golden_path,
            update_golden,
            config,
        } => {
            let s = settings_from(config.as_deref())?;
            let rows = bench(&dir, &s)?;
            print!("{}", table(&rows));
            let golden_path = golden_path.unwrap_or_else(|| dir.join("bench.golden"));
            let actual = golden(&rows);
            if update_golden {
                std::fs::write(&golden_path, &actual)
                    .with_context(|| format!("writing {}", golden_path.display()))?;
                return Ok(());
            }
            let Ok(expected) = std::fs::read_to_string(&golden_path) else {
                println!("no golden file at {}", golden_path.display());
                return Ok(());
            };
            let diff = golden_diff(&expected, &actual);
            if diff.is_empty() {
                println!("golden: ok");
                Ok(())
            } else {
                eprintln!("golden mismatch against {}:", golden_path.display());
                for line in diff {
                    eprintln!("{line}");
                }
                Err(Failure::Alarm)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Alarm) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

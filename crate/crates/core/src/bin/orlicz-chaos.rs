use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use orlicz_chaos::commands::{
    demo_names, json, run_chaos, run_demo, run_norm, run_orbit, run_validate, write_output, CommandError, OrbitThresholds,
    Overrides, Source, Target,
};
use orlicz_chaos::demo::demo_spec;
use orlicz_chaos::system::SystemError;

#[derive(Parser)]
#[command(name = "orlicz-chaos", version, about = "Orlicz norms, composition orbits and chaos evidence on atomic spaces")]
struct Cli {
    /// Steps examined (N).
    #[arg(long, global = true)]
    horizon: Option<usize>,
    /// Divergence threshold (M).
    #[arg(long, global = true)]
    threshold: Option<f64>,
    /// Positivity floor standing in for a positive liminf.
    #[arg(long, global = true)]
    floor: Option<f64>,
    /// Seed for random candidate sets.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for output files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// System definition file.
    #[arg(long)]
    system: Option<PathBuf>,
    /// Built-in demo system.
    #[arg(long)]
    demo: Option<String>,
}

impl SourceArgs {
    fn source(&self) -> Source {
        match (&self.system, &self.demo) {
            (Some(p), _) => Source::File(p.clone()),
            (None, Some(d)) => Source::Demo(d.clone()),
            (None, None) => unreachable!("clap enforces one source"),
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TargetArgs {
    /// Named vector of the system.
    #[arg(long)]
    vector: Option<String>,
    /// Named set of the system (its indicator).
    #[arg(long)]
    set: Option<String>,
}

impl TargetArgs {
    fn target(&self) -> Target {
        match (&self.vector, &self.set) {
            (Some(v), _) => Target::Vector(v.clone()),
            (None, Some(s)) => Target::Set(s.clone()),
            (None, None) => unreachable!("clap enforces one target"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Luxemburg and Orlicz norms of a vector.
    Norm {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Norms along the composition orbit.
    Orbit {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[arg(long)]
        semi_floor: Option<f64>,
        #[arg(long, default_value_t = 1e3)]
        blowup: f64,
    },
    /// Chaos conditions, optionally with the full battery and audit.
    Chaos {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        target: TargetArgs,
        #[arg(long)]
        semi_floor: Option<f64>,
        #[arg(long)]
        battery: bool,
    },
    /// Print a built-in demo definition, or list the demos.
    Demo {
        name: Option<String>,
        /// Run the chaos checks on every vector of the demo instead.
        #[arg(long)]
        run: bool,
    },
    /// Load and validate a system definition.
    Validate {
        #[command(flatten)]
        source: SourceArgs,
    },
}

fn unknown_demo(name: &str) -> CommandError {
    SystemError::Validation {
        field: "demo".into(),
        message: format!("unknown demo '{name}' (known: {})", demo_names().join(", ")),
    }
    .into()
}

fn emit(cli: &Cli, stem: &str, json_text: String, csv_text: String) -> Result<(), CommandError> {
    let text = match cli.format {
        Format::Json => &json_text,
        Format::Csv => &csv_text,
    };
    print!("{text}");
    if let Some(dir) = &cli.out {
        write_output(dir, &format!("{stem}.json"), &json_text)?;
        write_output(dir, &format!("{stem}.csv"), &csv_text)?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CommandError> {
    let overrides = |semi_floor: Option<f64>| Overrides {
        horizon: cli.horizon,
        threshold: cli.threshold,
        floor: cli.floor,
        semi_floor,
        seed: cli.seed,
    };
    match &cli.command {
        Command::Norm { source, target } => {
            let sys = source.source().load()?;
            let out = run_norm(&sys, &target.target())?;
            emit(cli, &format!("{}-{}-norm", out.system, out.target), json(&out), out.to_csv())
        }
        Command::Orbit { source, target, eps, semi_floor, blowup } => {
            let sys = source.source().load()?;
            let out = run_orbit(&sys, &target.target(), &overrides(*semi_floor), OrbitThresholds { eps: *eps, blowup: *blowup })?;
            let stem = format!("{}-{}-orbit", out.system, out.target);
            if let Some(dir) = &cli.out {
                write_output(dir, &format!("{stem}.tsv"), &out.to_tsv())?;
            }
            emit(cli, &stem, json(&out), out.to_csv())
        }
        Command::Chaos { source, target, semi_floor, battery } => {
            let sys = source.source().load()?;
            let out = run_chaos(&sys, &target.target(), &overrides(*semi_floor), *battery)?;
            emit(cli, &format!("{}-{}-chaos", out.system, out.target), json(&out), out.sequences_csv())
        }
        Command::Demo { name: None, .. } => {
            for n in demo_names() {
                println!("{n}");
            }
            Ok(())
        }
        Command::Demo { name: Some(name), run: false } => {
            let text = demo_spec(name).ok_or_else(|| unknown_demo(name))?.to_json();
            print!("{text}");
            if let Some(dir) = &cli.out {
                write_output(dir, &format!("{name}.json"), &text)?;
            }
            Ok(())
        }
        Command::Demo { name: Some(name), run: true } => {
            let out = run_demo(name, &overrides(None))?;
            emit(cli, &format!("{name}-demo"), json(&out), out.to_csv())
        }
        Command::Validate { source } => {
            let out = run_validate(&source.source())?;
            emit(cli, &format!("{}-validate", out.name), json(&out), out.to_csv())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};

use recolor::bench::{self, CampaignConfig, TenureSpec};
use recolor::oracle::{exact_chromatic_number, find_k_coloring, MAX_ORACLE_VERTICES};
use recolor::{solve_vcol, Engine, Error, InitGenerator, RecolorRule, Result, SolveConfig};

#[derive(Parser)]
#[command(name = "recolor", version, about = "Vertex coloring by iterated tabu search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the iterative scheme once and print the run record as JSON.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "tabucol")]
        alg: Engine,
        #[arg(long, default_value = "dyn")]
        tenure: String,
        /// recycle-star, recycle-t N, greedy or random.
        #[arg(long, num_args = 1..=2, value_names = ["GEN", "T"], default_values = ["recycle-star"])]
        init: Vec<String>,
        #[arg(long, default_value = "random")]
        recolor: RecolorRule,
        /// Wall-clock budget in seconds for the whole run.
        #[arg(long, default_value_t = 600.0)]
        time_limit: f64,
        /// Iteration cap per k-level.
        #[arg(long)]
        iter_cap: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the best coloring (one 1-based color per line) here.
        #[arg(long)]
        coloring_out: Option<PathBuf>,
    },
    /// Run a multi-trial campaign described by a JSON file.
    Bench {
        config: PathBuf,
        /// Concurrent trials; RECOLOR_JOBS takes precedence.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Convert a Carter per-student file into a DIMACS conflict graph.
    ConvertCarter { input: PathBuf, output: PathBuf },
    /// Print size and degree statistics.
    Stats {
        instance: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact chromatic number, or k-colorability with --k, for small graphs.
    Oracle {
        instance: PathBuf,
        #[arg(long)]
        k: Option<usize>,
    },
}

fn parse_init(words: &[String]) -> Result<InitGenerator> {
    match words {
        [gen] => gen.parse(),
        [gen, t] if gen == "recycle-t" => format!("recycle-t{t}").parse(),
        _ => Err(Error::Config(format!("unknown initial generator `{}`", words.join(" ")))),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::File {
        path: path.display().to_string(),
        source,
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve {
            instance,
            alg,
            tenure,
            init,
            recolor,
            time_limit,
            iter_cap,
            seed,
            coloring_out,
        } => {
            if !(time_limit > 0.0 && time_limit.is_finite()) {
                return Err(Error::Config("--time-limit must be positive".into()));
            }
            let g = bench::load_instance(&instance)?;
            let cfg = SolveConfig {
                engine: alg,
                init: parse_init(&init)?,
                recolor,
                scheme: TenureSpec::Name(tenure).resolve()?,
                time_limit: Duration::from_secs_f64(time_limit),
                iter_cap,
            };
            let mut record = solve_vcol(&g, &cfg, seed)?;
            record.instance = bench::instance_name(&instance);
            if let Some(out) = coloring_out {
                let text: String = record.best_coloring.iter().map(|c| format!("{c}\n")).collect();
                fs::write(out, text)?;
            }
            println!("{}", serde_json::to_string_pretty(&record)?);
        }
        Command::Bench { config, jobs } => {
            let mut cfg = CampaignConfig::from_json(&read(&config)?)?;
            if let Some(jobs) = jobs {
                cfg.jobs = jobs;
            }
            let outcome = bench::run_campaign(&cfg)?;
            for row in &outcome.summary {
                println!("{}: min k {} ({}/{})", row.instance, row.min_k, row.attain, row.trials);
            }
            log::info!("results in {}", cfg.output_dir.display());
        }
        Command::ConvertCarter { input, output } => {
            let eg = bench::convert_carter(&read(&input)?)?;
            fs::write(&output, eg.graph.to_dimacs())?;
            println!("{} exams, {} conflicts", eg.graph.n(), eg.graph.m());
        }
        Command::Stats { instance, json } => {
            let report = bench::stats(&bench::load_instance(&instance)?)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report)?);
            } else {
                println!("{report}");
            }
        }
        Command::Oracle { instance, k } => {
            let g = bench::load_instance(&instance)?;
            if g.n() > MAX_ORACLE_VERTICES {
                return Err(Error::OracleTooLarge {
                    n: g.n(),
                    max: MAX_ORACLE_VERTICES,
                });
            }
            match k {
                None => println!("chromatic number {}", exact_chromatic_number(&g)?),
                Some(k) => match find_k_coloring(&g, k) {
                    Some(colors) => {
                        println!("{k}-colorable");
                        let text: Vec<String> = colors.iter().map(|c| (c + 1).to_string()).collect();
                        println!("{}", text.join(" "));
                    }
                    None => println!("not {k}-colorable"),
                },
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

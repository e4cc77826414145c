//! Command line and local HTTP service over the proofminer pipeline.

pub mod commands;
pub mod error;
pub mod service;

use std::ffi::OsString;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use proofminer::features::UniverseMode;
use proofminer::{Algorithm, Level};

use crate::commands::EngineOverrides;
pub use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "proofminer", version, about = "Cluster Coq lemmas by the shape of their proofs")]
pub struct Cli {
    /// key=value file of engine settings
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Read scripts and traces, write a library export.
    Extract(ExtractArgs),
    /// Cluster the lemmas of one or more exports.
    Cluster(ClusterArgs),
    /// Suggest lemmas similar to a partial proof.
    Suggest(SuggestArgs),
    /// Serve the corpus over HTTP.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct ExtractArgs {
    /// `.v` scripts and trace files
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Trace file giving goal data for script proofs
    #[arg(long)]
    pub trace: Vec<PathBuf>,
    /// Export directory [default: <library>.export]
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Library name [default: stem of the first input]
    #[arg(long)]
    pub library: Option<String>,
    /// Level whose vector lengths are reported
    #[arg(long, default_value = "goal")]
    pub level: Level,
    /// Tactic universe [default: detected]
    #[arg(long, value_parser = parse_mode)]
    pub mode: Option<UniverseMode>,
}

fn parse_mode(s: &str) -> Result<UniverseMode, String> {
    match s.to_ascii_lowercase().as_str() {
        "ssreflect" | "ssr" => Ok(UniverseMode::SSReflect),
        "coq" | "plain" | "plaincoq" => Ok(UniverseMode::PlainCoq),
        _ => Err(format!("expected ssreflect or coq, got {s:?}")),
    }
}

#[derive(Debug, Args, Default)]
pub struct EngineArgs {
    #[arg(long)]
    pub algorithm: Option<Algorithm>,
    #[arg(long)]
    pub level: Option<Level>,
    /// Granularity 1 (coarse) to 5 (fine)
    #[arg(short, long = "granularity", value_parser = clap::value_parser!(u8).range(1..=5))]
    pub g: Option<u8>,
    /// Frequency 1 (5%), 2 (15%) or 3 (30%)
    #[arg(short, long = "frequency", value_parser = clap::value_parser!(u8).range(1..=3))]
    pub f: Option<u8>,
    /// Master seed; run i uses seed + i
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub runs: Option<usize>,
    /// Never reduce dimension
    #[arg(long)]
    pub no_pca: bool,
}

impl EngineArgs {
    fn flags(&self) -> Vec<(&'static str, String)> {
        let mut out = Vec::new();
        let mut put = |k, v: Option<String>| {
            if let Some(v) = v {
                out.push((k, v));
            }
        };
        put("algorithm", self.algorithm.map(|a| a.to_string()));
        put("level", self.level.map(|l| l.to_string()));
        put("granularity", self.g.map(|x| x.to_string()));
        put("frequency", self.f.map(|x| x.to_string()));
        put("seed", self.seed.map(|x| x.to_string()));
        put("runs", self.runs.map(|x| x.to_string()));
        if self.no_pca {
            out.push(("pca", "false".into()));
        }
        out
    }
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Export directories; later ones are attached to the first
    #[arg(required = true)]
    pub dirs: Vec<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Where to write the cluster XML
    #[arg(long, default_value = "clusters.xml")]
    pub xml: PathBuf,
}

#[derive(Debug, Args)]
pub struct SuggestArgs {
    #[arg(required = true)]
    pub dirs: Vec<PathBuf>,
    /// Unfinished proof: a trace file or a `.v` script
    #[arg(long)]
    pub partial: PathBuf,
    /// Trace file with goal data for a script partial proof
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(required = true)]
    pub dirs: Vec<PathBuf>,
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    #[command(flatten)]
    pub engine: EngineArgs,
}

fn overrides(config: Option<&PathBuf>, engine: &EngineArgs) -> Result<EngineOverrides, CliError> {
    Ok(EngineOverrides {
        config_text: config.map(|p| commands::read_text(p)).transpose()?,
        env_seed: std::env::var("PROOFMINER_SEED").ok(),
        flags: engine.flags(),
    })
}

/// Parse arguments, run the command and return the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Extract(a) => {
            let s = commands::extract(&a.inputs, &a.trace, a.library.as_deref(), a.out.as_deref(), a.level, a.mode)?;
            for w in &s.warnings {
                eprintln!("warning: {w}");
            }
            for (name, len) in &s.lengths {
                println!("{name}\t{len}");
            }
            println!(
                "{} {} vectors of library {} written to {}",
                s.lengths.len(),
                s.level,
                s.library,
                s.out.display()
            );
        }
        Command::Cluster(a) => {
            let config = overrides(cli.config.as_ref(), &a.engine)?.resolve()?;
            let corpus = commands::load_corpus(&a.dirs)?;
            let report = commands::cluster(&corpus, &config)?;
            commands::write_report(&report, &a.xml)?;
            print!("{}", commands::render_table(&report));
        }
        Command::Suggest(a) => {
            let config = overrides(cli.config.as_ref(), &a.engine)?.resolve()?;
            let corpus = commands::load_corpus(&a.dirs)?;
            let partial = commands::read_partial(&a.partial, a.trace.as_deref())?;
            let found = commands::suggest(&corpus, &partial, &config)?;
            print!("{}", commands::render_suggestion(&corpus, found.as_ref()));
        }
        Command::Serve(a) => {
            let config = overrides(cli.config.as_ref(), &a.engine)?.resolve()?;
            let service = Arc::new(service::Service::load(a.dirs, config)?);
            let rt = tokio::runtime::Runtime::new().map_err(|e| CliError::Input(e.to_string()))?;
            rt.block_on(async {
                let addr = format!("{}:{}", a.host, a.port);
                let listener = tokio::net::TcpListener::bind(&addr)
                    .await
                    .map_err(|e| CliError::Input(format!("{addr}: {e}")))?;
                let local = listener.local_addr().map_err(|e| CliError::Input(e.to_string()))?;
                println!("listening on http://{local}");
                service::serve(listener, service)
                    .await
                    .map_err(|e| CliError::Input(e.to_string()))
            })?;
        }
    }
    Ok(())
}

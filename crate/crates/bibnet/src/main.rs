use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use bibnet::config::RunConfig;
use bibnet::parse::{write_jsonl, Format};
use bibnet::{convert, pipeline};

#[derive(Parser)]
#[command(version, about = "Build, measure and compare bibliographic networks")]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Lower cutoff of the power-law fit.
    #[arg(long, global = true, value_parser = ["10", "25"])]
    kmin: Option<String>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Restrict the run to one paradigm.
    #[arg(long, global = true, value_parser = ["pp", "aa-cite", "aa-coauth"])]
    paradigm: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse datasets and persist their networks.
    Ingest,
    /// Compute measures, profiles and hop plots.
    Measure,
    /// Export the best random-walk sample of each network.
    Sample,
    /// Residuals, ranking and scaling across databases.
    Compare,
    /// ingest, measure, sample and compare.
    All,
    /// Convert a public corpus to JSON lines.
    #[command(subcommand)]
    Convert(Convert),
}

#[derive(Subcommand)]
enum Convert {
    /// SNAP cit-HepTh: `citing cited` edge list plus optional dates.
    Arxiv {
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        dates: Option<PathBuf>,
        /// `id<TAB>author<TAB>...` lines.
        #[arg(long)]
        authors: Option<PathBuf>,
        #[arg(long, short)]
        output: PathBuf,
    },
    /// Cora `cited citing` pairs.
    Cora {
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long)]
        authors: Option<PathBuf>,
        #[arg(long, short)]
        output: PathBuf,
    },
}

fn open(p: &PathBuf) -> anyhow::Result<std::io::BufReader<std::fs::File>> {
    let f = std::fs::File::open(p).with_context(|| format!("opening {}", p.display()))?;
    Ok(std::io::BufReader::new(f))
}

fn run_convert(c: Convert) -> anyhow::Result<()> {
    let (pairs, format, dates, authors, output) = match c {
        Convert::Arxiv { edges, dates, authors, output } => (edges, Format::Edgelist, dates, authors, output),
        Convert::Cora { pairs, authors, output } => (pairs, Format::CoraPairs, None, authors, output),
    };
    let years = dates.as_ref().map(|p| convert::read_years(open(p)?)).transpose()?;
    let authors = authors.as_ref().map(|p| convert::read_authors(open(p)?)).transpose()?;
    let rs = convert::convert_pairs(&pairs, format, years.as_ref(), authors.as_ref())?;
    let mut w = std::io::BufWriter::new(
        std::fs::File::create(&output).with_context(|| format!("creating {}", output.display()))?,
    );
    write_jsonl(&rs, &mut w)?;
    w.flush()?;
    eprintln!("{} records, {} authors", rs.len(), rs.author_count());
    Ok(())
}

fn load_config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let path = cli.config.as_ref().context("--config is required")?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(k) = &cli.kmin {
        cfg.k_min = k.parse()?;
    }
    if let Some(o) = &cli.out {
        cfg.out = o.clone();
    }
    if let Some(p) = &cli.paradigm {
        for d in &mut cfg.datasets {
            d.paradigms.retain(|q| q == p);
        }
    }
    cfg.validate()?;
    Ok(cfg)
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let stage: fn(&RunConfig) -> anyhow::Result<pipeline::Outcome> = match cli.command {
        Command::Convert(c) => return run_convert(c).map(|_| 0),
        Command::Ingest => pipeline::cmd_ingest,
        Command::Measure => pipeline::cmd_measure,
        Command::Sample => pipeline::cmd_sample,
        Command::Compare => pipeline::cmd_compare,
        Command::All => pipeline::cmd_all,
    };
    let cfg = load_config(&cli)?;
    let outcome = stage(&cfg)?;
    for e in &outcome.input_errors {
        eprintln!("error: {e}");
    }
    for e in &outcome.stats_errors {
        eprintln!("statistics: {e}");
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

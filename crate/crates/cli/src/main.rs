//! `grantimpact` command-line interface.
//!
//! Exit codes: 0 success, 1 usage error, 2 schema/validation error,
//! 3 computation precondition error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use grantimpact::{run, Error, OutputFormat, RunConfig, YearRange};

#[derive(Parser)]
#[command(
    name = "grantimpact",
    version,
    about = "Quantify research-grant impact from publication and funding records"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Publications CSV (pub_id,title,abstract,year,author_ids,org_ids)
    #[arg(long = "pubs", value_name = "PATH")]
    pubs: PathBuf,

    /// Funded-projects CSV (project_id,...,grant_year,budget,status)
    #[arg(long, value_name = "PATH")]
    projects: PathBuf,

    /// Organization alias CSV (org_id,canonical_name,alias)
    #[arg(long = "orgs", value_name = "PATH")]
    orgs: PathBuf,

    /// First year of the corpus window (inclusive)
    #[arg(long, value_name = "YEAR")]
    from: i32,

    /// Last year of the corpus window (inclusive)
    #[arg(long, value_name = "YEAR")]
    to: i32,

    /// Output directory for report files
    #[arg(long, value_name = "DIR")]
    out: PathBuf,

    /// Report format
    #[arg(long, value_name = "json|csv", default_value = "csv")]
    format: String,

    /// Stop-word file overriding the embedded English list
    #[arg(long, value_name = "PATH")]
    stopwords: Option<PathBuf>,

    /// Number of suggestions to keep
    #[arg(long = "top-k", value_name = "N", default_value_t = 10)]
    top_k: usize,

    /// Drop and count invalid rows instead of aborting the load
    #[arg(long = "skip-invalid")]
    skip_invalid: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check the input files and report kept/dropped row counts
    Validate(CommonArgs),
    /// Write researcher, organization and yearly impact reports
    Impact(CommonArgs),
    /// Rank researchers against a funded project's summary
    Suggest {
        /// Project to rank against
        project_id: String,
        #[command(flatten)]
        common: CommonArgs,
        /// Researcher ids to exclude from the ranking (repeatable)
        #[arg(long = "exclude", value_name = "RESEARCHER_ID")]
        exclude: Vec<String>,
    },
}

fn to_config(args: &CommonArgs, exclude: Vec<String>) -> Result<RunConfig, Error> {
    let window = YearRange::new(args.from, args.to)?;
    let format: OutputFormat = args.format.parse()?;
    let mut config = RunConfig::new(&args.pubs, &args.projects, &args.orgs, window, &args.out);
    config.stopwords = args.stopwords.clone();
    config.top_k = args.top_k;
    config.format = format;
    config.skip_invalid = args.skip_invalid;
    config.exclude_researchers = exclude;
    Ok(config)
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Validate(args) => {
            let config = to_config(&args, Vec::new())?;
            let summary = run::validate(&config)?;
            for line in summary.lines() {
                println!("{line}");
            }
        }
        Command::Impact(args) => {
            let config = to_config(&args, Vec::new())?;
            let output = run::impact(&config)?;
            println!(
                "researcher impact rows: {} | org impact rows: {} | yearly tables: {}",
                output.researcher_rows.len(),
                output.org_rows.len(),
                output.yearly.len()
            );
            for file in &output.files {
                println!("wrote {}", file.display());
            }
        }
        Command::Suggest {
            project_id,
            common,
            exclude,
        } => {
            let config = to_config(&common, exclude)?;
            let output = run::suggest(&config, &project_id)?;
            for s in &output.suggestions {
                println!(
                    "{}. {} similarity {:.6} ({} publications)",
                    s.rank, s.researcher_id, s.avg_similarity, s.pub_count
                );
            }
            println!("wrote {}", output.file.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

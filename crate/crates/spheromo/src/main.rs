use clap::{Parser, Subcommand, ValueEnum};
use spheromo::data::load_bundle;
use spheromo::error::InputError;
use spheromo::input::{compile, parse_document, CompiledInput, WireFormat};
use spheromo::report::{render_human, render_json, Report};
use spheromo::runner::{
    cmd_check, cmd_enumerate, cmd_inspect, cmd_kaehler, cmd_quadruple, Level, Show,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "spheromo",
    version,
    about = "Decide momentum triples of spherical type: admissibility, reflexivity, smoothness, Kaehler candidates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Input document (JSON, or TOML with a .toml extension).
    input: PathBuf,
    /// Print certificate witnesses in the human report.
    #[arg(long)]
    certificate: bool,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Directory with axiom_s_table.toml and socle_registry.toml
    /// (default: SPHEROMO_DATA, else the bundled data).
    #[arg(long)]
    data_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the document's root set at one level.
    Check {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = LevelArg::Admissible)]
        level: LevelArg,
    },
    /// List every pairwise-admissible root set with its verdict at a level.
    Enumerate {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum, default_value_t = LevelArg::Admissible)]
        level: LevelArg,
        /// Worker threads; the report is identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// List the root sets giving a smooth real momentum triple.
    Kaehler {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Test the document's monoid block, for one root set or all of them.
    Quadruple {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Dump computed combinatorial data.
    Inspect {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        show: ShowArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    QAdmissible,
    Admissible,
    Smooth,
    QReflexive,
    Reflexive,
}

impl From<LevelArg> for Level {
    fn from(level: LevelArg) -> Level {
        match level {
            LevelArg::QAdmissible => Level::QAdmissible,
            LevelArg::Admissible => Level::Admissible,
            LevelArg::Smooth => Level::Smooth,
            LevelArg::QReflexive => Level::QReflexive,
            LevelArg::Reflexive => Level::Reflexive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ShowArg {
    Facets,
    OrbitFaces,
    Colors,
    ColoredFan,
}

impl From<ShowArg> for Show {
    fn from(show: ShowArg) -> Show {
        match show {
            ShowArg::Facets => Show::Facets,
            ShowArg::OrbitFaces => Show::OrbitFaces,
            ShowArg::Colors => Show::Colors,
            ShowArg::ColoredFan => Show::ColoredFan,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

fn load_input(common: &CommonArgs) -> Result<CompiledInput, InputError> {
    let text = std::fs::read_to_string(&common.input).map_err(|e| {
        InputError::new(format!("cannot read {}: {e}", common.input.display()))
    })?;
    let doc = parse_document(&text, WireFormat::from_path(&common.input))?;
    compile(&doc)
}

fn run(cli: Cli) -> Result<(Report, bool, Format), InputError> {
    let (common, report) = match &cli.command {
        Command::Check { common, level } => {
            let input = load_input(common)?;
            let data = load_bundle(common.data_dir.as_deref())?;
            let name = common.input.display().to_string();
            (common, cmd_check(&input, &data, &name, (*level).into())?)
        }
        Command::Enumerate { common, level, jobs } => {
            let input = load_input(common)?;
            let data = load_bundle(common.data_dir.as_deref())?;
            let name = common.input.display().to_string();
            (common, cmd_enumerate(&input, &data, &name, (*level).into(), *jobs)?)
        }
        Command::Kaehler { common, jobs } => {
            let input = load_input(common)?;
            let data = load_bundle(common.data_dir.as_deref())?;
            let name = common.input.display().to_string();
            (common, cmd_kaehler(&input, &data, &name, *jobs)?)
        }
        Command::Quadruple { common, jobs } => {
            let input = load_input(common)?;
            let data = load_bundle(common.data_dir.as_deref())?;
            let name = common.input.display().to_string();
            (common, cmd_quadruple(&input, &data, &name, *jobs)?)
        }
        Command::Inspect { common, show } => {
            let input = load_input(common)?;
            let data = load_bundle(common.data_dir.as_deref())?;
            let name = common.input.display().to_string();
            (common, cmd_inspect(&input, &data, &name, (*show).into())?)
        }
    };
    Ok((report, common.certificate, common.format))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, certificate, format)) => {
            let rendered = match format {
                Format::Human => render_human(&report, certificate),
                Format::Json => render_json(&report),
            };
            print!("{rendered}");
            ExitCode::from(u8::try_from(report.exit).unwrap_or(1))
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::{emit, render_csv, render_json, CliError, Format, Status};

#[derive(Debug, Parser)]
#[command(name = "fig8", version, about = "Figure-eight geodesics, surface covers and residual finiteness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Worker threads (0 uses every core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized subcommands, where it is required.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed geodesics with at most one double point, up to a length cutoff.
    Census(commands::CensusArgs),
    /// Partial McShane sum over simple geodesics.
    Mcshane(commands::McshaneArgs),
    /// Partial sum over the paired figure-eights.
    Mc2(commands::CutoffArgs),
    /// Self-intersection number of a word on the modular torus.
    Selfint(commands::WordArgs),
    /// Whether boundary covers extend over a surface.
    Extend(commands::ExtendArgs),
    /// Whether boundary covers extend to a cover with an order-n monodromy group.
    RegularExtend(commands::RegularArgs),
    /// Number of boundary tuples in the given classes multiplying to the identity.
    Frobenius(commands::ClassesArgs),
    /// Factor an even permutation into two n-cycles.
    Twocycles(commands::TwoCyclesArgs),
    /// Genus and boundary of the strip cover of the punctured torus.
    Stripcover(commands::StripArgs),
    /// Finite permutation representation in which a word is nontrivial.
    Stallings(commands::StallingsArgs),
    /// Smallest prime whose Sanov quotient detects a word.
    Prime(commands::PrimeArgs),
    /// Lower central series depth via the Magnus expansion.
    Depth(commands::DepthArgs),
    /// Unipotent quotient detecting a word of known depth.
    Witness(commands::WitnessArgs),
    /// Exact partial sum of the expected least excluding prime.
    Expectedprime(commands::ExpectedArgs),
    /// Average abelian excluding prime over random words.
    Avgindex(commands::AvgArgs),
    /// Girth of the LPS Cayley graph against the logarithmic bound.
    Lpsgirth(commands::LpsArgs),
    /// Nontriviality certificate for a genus-2 surface group word.
    SurfaceCertify(commands::SurfaceArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Census(_) => "census",
            Command::Mcshane(_) => "mcshane",
            Command::Mc2(_) => "mc2",
            Command::Selfint(_) => "selfint",
            Command::Extend(_) => "extend",
            Command::RegularExtend(_) => "regular-extend",
            Command::Frobenius(_) => "frobenius",
            Command::Twocycles(_) => "twocycles",
            Command::Stripcover(_) => "stripcover",
            Command::Stallings(_) => "stallings",
            Command::Prime(_) => "prime",
            Command::Depth(_) => "depth",
            Command::Witness(_) => "witness",
            Command::Expectedprime(_) => "expectedprime",
            Command::Avgindex(_) => "avgindex",
            Command::Lpsgirth(_) => "lpsgirth",
            Command::SurfaceCertify(_) => "surface-certify",
        }
    }
}

fn run(cli: &Cli) -> Result<Status, CliError> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| CliError(e.to_string()))?;
    }
    let seed = cli.seed;
    let report = match &cli.command {
        Command::Census(a) => commands::census(a)?,
        Command::Mcshane(a) => commands::mcshane(a)?,
        Command::Mc2(a) => commands::mc2(a)?,
        Command::Selfint(a) => commands::selfint(a)?,
        Command::Extend(a) => commands::extend(a)?,
        Command::RegularExtend(a) => commands::regular_extend(a)?,
        Command::Frobenius(a) => commands::frobenius(a)?,
        Command::Twocycles(a) => commands::twocycles(a)?,
        Command::Stripcover(a) => commands::stripcover(a)?,
        Command::Stallings(a) => commands::stallings(a)?,
        Command::Prime(a) => commands::prime(a, seed)?,
        Command::Depth(a) => commands::depth(a)?,
        Command::Witness(a) => commands::witness(a)?,
        Command::Expectedprime(a) => commands::expectedprime(a)?,
        Command::Avgindex(a) => commands::avgindex(a, seed)?,
        Command::Lpsgirth(a) => commands::lpsgirth(a)?,
        Command::SurfaceCertify(a) => commands::surface_certify(a)?,
    };
    let name = cli.command.name();
    let bytes = match cli.format.unwrap_or(report.default_format) {
        Format::Json => render_json(name, seed, &report)?,
        Format::Csv => render_csv(name, &report)?,
    };
    emit(&bytes, cli.output.as_deref())?;
    Ok(report.status)
}

fn main() -> ExitCode {
    // clap reports usage errors, including unknown subcommands, with exit code 2
    let cli = Cli::parse();
    match run(&cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("fig8 {}: {e}", cli.command.name());
            ExitCode::from(Status::InputError as u8)
        }
    }
}

//! `dflex` — decision-flexibility analysis from the command line.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use dflex_cli::error::CliError;
use dflex_cli::model_file::{parse_model, ParsedModel};
use dflex_cli::report::{
    render_brittleness, render_envelope, render_flexvalue, render_meu, Format,
};
use dflex_cli::svg::{parse_layers, render_svg};
use dflex_cli::verify::{verify_brittleness, verify_envelope, verify_flexvalue, verify_meu};
use dflex_core::{
    brittleness_belief, brittleness_clairvoyance, brittleness_outcomes, ce_lines,
    flexibility_value, meu, most_flexible_commitment, upper_envelope, BrittlenessKind,
};

/// Decision analysis under a sliding belief parameter: recommendations,
/// brittleness measures, the value of revisable commitments, and plots of
/// the underlying geometry.
#[derive(Parser)]
#[command(name = "dflex", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct Common {
    /// Model file to analyze.
    #[arg(long, value_name = "FILE")]
    model: PathBuf,

    /// Override the belief parameter from the file (must lie in [0, 1]).
    #[arg(long, value_name = "VALUE")]
    p: Option<f64>,

    /// Cross-check the result against the built-in oracles and report the
    /// largest deviation found.
    #[arg(long)]
    verify: bool,

    /// Report flavour.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Which brittleness measure `brittleness --def` ranks by.
#[derive(Debug, Clone, Copy, ValueEnum)]
enum Def {
    /// Expected shortfall against the best payoff in each state.
    Outcomes,
    /// Average shortfall against the envelope over all belief parameters.
    Belief,
    /// Average shortfall against a clairvoyant's value.
    Clairvoyance,
}

impl From<Def> for BrittlenessKind {
    fn from(def: Def) -> Self {
        match def {
            Def::Outcomes => BrittlenessKind::Outcomes,
            Def::Belief => BrittlenessKind::Belief,
            Def::Clairvoyance => BrittlenessKind::Clairvoyance,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Recommend the alternative with the highest expected value.
    Meu {
        #[command(flatten)]
        common: Common,
    },
    /// Show the upper envelope of the certainty equivalent lines.
    Envelope {
        #[command(flatten)]
        common: Common,
    },
    /// Rank the alternatives by how much they stand to lose.
    Brittleness {
        #[command(flatten)]
        common: Common,
        /// Which measure to rank by.
        #[arg(long, value_enum)]
        def: Def,
    },
    /// Value the model's commitments against committing outright.
    Flexvalue {
        #[command(flatten)]
        common: Common,
        /// Evaluate only this commitment.
        #[arg(long, value_name = "LABEL")]
        commitment: Option<String>,
    },
    /// Draw the certainty equivalent geometry as an SVG file.
    Plot {
        #[command(flatten)]
        common: Common,
        /// Comma-separated layers: ce, envelope, clairvoyance, prior,
        /// twostage, shade:LABEL.
        #[arg(long, default_value = "ce,envelope")]
        layers: String,
        /// Where to write the SVG document.
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
}

fn load(common: &Common) -> Result<ParsedModel, CliError> {
    if let Some(p) = common.p {
        if !p.is_finite() || !(0.0..=1.0).contains(&p) {
            return Err(CliError::Usage(format!("--p {p} lies outside [0, 1]")));
        }
    }
    let text = std::fs::read_to_string(&common.model).map_err(|e| {
        CliError::Model(format!("cannot read {}: {e}", common.model.display()))
    })?;
    parse_model(&text, common.p)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Cmd::Meu { common } => {
            let parsed = load(&common)?;
            let result = meu(&parsed.model, &parsed.family.at(parsed.prior_p)?)?;
            let deviation = if common.verify {
                Some(verify_meu(&parsed.model, &parsed.family, parsed.prior_p)?)
            } else {
                None
            };
            print!("{}", render_meu(&result, deviation, common.format));
        }
        Cmd::Envelope { common } => {
            let parsed = load(&common)?;
            let lines = ce_lines(&parsed.model, &parsed.family)?;
            let envelope = upper_envelope(&lines)?;
            let (value, active) = envelope.evaluate(parsed.prior_p)?;
            let deviation = if common.verify {
                Some(verify_envelope(&parsed.model, &parsed.family)?)
            } else {
                None
            };
            print!(
                "{}",
                render_envelope(
                    &envelope,
                    parsed.prior_p,
                    value,
                    &active,
                    deviation,
                    common.format
                )
            );
        }
        Cmd::Brittleness { common, def } => {
            let parsed = load(&common)?;
            let kind = BrittlenessKind::from(def);
            let report = match kind {
                BrittlenessKind::Outcomes => {
                    brittleness_outcomes(&parsed.model, &parsed.family.at(parsed.prior_p)?)?
                }
                BrittlenessKind::Belief => {
                    brittleness_belief(&parsed.model, &parsed.family)?
                }
                BrittlenessKind::Clairvoyance => {
                    brittleness_clairvoyance(&parsed.model, &parsed.family)?
                }
            };
            let deviation = if common.verify {
                Some(verify_brittleness(
                    &parsed.model,
                    &parsed.family,
                    kind,
                    parsed.prior_p,
                )?)
            } else {
                None
            };
            print!("{}", render_brittleness(&report, deviation, common.format));
        }
        Cmd::Flexvalue { common, commitment } => {
            let parsed = load(&common)?;
            let ts = parsed.two_stage.as_ref().ok_or_else(|| {
                CliError::Model("the model has no commitments to value".into())
            })?;
            let (reports, survey) = match commitment {
                Some(label) => (vec![flexibility_value(ts, ts.commitment(&label)?)?], None),
                None => {
                    let reports = ts
                        .commitments()
                        .iter()
                        .map(|c| flexibility_value(ts, c))
                        .collect::<Result<Vec<_>, _>>()?;
                    (reports, Some(most_flexible_commitment(ts)))
                }
            };
            let deviation = if common.verify {
                Some(verify_flexvalue(ts, &reports)?)
            } else {
                None
            };
            print!(
                "{}",
                render_flexvalue(&reports, survey.as_ref(), deviation, common.format)
            );
        }
        Cmd::Plot { common, layers, out } => {
            let layers = parse_layers(&layers)?;
            let parsed = load(&common)?;
            let svg = render_svg(&parsed, &layers)?;
            std::fs::write(&out, svg).map_err(|e| {
                CliError::Usage(format!("cannot write {}: {e}", out.display()))
            })?;
            if common.verify {
                let deviation = verify_envelope(&parsed.model, &parsed.family)?;
                println!("verify: max deviation {deviation:.3e}");
            }
        }
    }
    Ok(())
}

/// Collapses a clap error into the first message block, one line, without
/// the usage recap.
fn usage_message(e: &clap::Error) -> String {
    if e.kind() == clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
        return "missing subcommand (try --help)".into();
    }
    let raw = e.to_string();
    let block: Vec<&str> = raw.lines().take_while(|l| !l.trim().is_empty()).collect();
    let joined = block.join(" ");
    let trimmed = joined.strip_prefix("error: ").unwrap_or(&joined);
    let collapsed = trimmed.split_whitespace().collect::<Vec<_>>().join(" ");
    if collapsed.is_empty() {
        "invalid arguments".into()
    } else {
        collapsed
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("error: usage: {}", usage_message(&e));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use hypesi_core::config::GroupConfig;
use hypesi_core::connector::{connectors, loop_count};
use hypesi_core::esi::esi_points;
use hypesi_core::frame::{bend_generators, validate_model_group, winding_group_check};
use hypesi_core::records::{
    connector_summary, connector_table, esi_summary, esi_table, float, model_table, winding_summary, winding_table,
    Table,
};
use hypesi_core::svg::{render_svg, Scene};
use hypesi_core::tol::{self, Tolerances};
use hypesi_core::verify::{deform_report, deform_table, frame_residual, verify_all, verify_table, VerifyOptions, RESIDUAL_BOUND};
use hypesi_core::{build_frame, primitive_word, Error, GroupFrame, RationalLabel};

#[derive(Parser, Debug)]
#[command(name = "hypesi", version, about = "Essential self-intersections and connectors of primitive geodesics")]
struct Cli {
    /// Base tolerance (overrides HYPESI_TOL).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Emit full records or only summary tables.
    #[arg(long, global = true, value_enum, default_value_t = Format::Records)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Records,
    Summary,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the primitive word of every label with p+q up to a bound.
    Enumerate {
        #[arg(long)]
        max_sum: u64,
    },
    /// Print the primitive word of one label.
    Word { label: RationalLabel },
    /// Labeled lines, crossing points and the essential count.
    Esi {
        label: RationalLabel,
        #[arg(long)]
        group: PathBuf,
    },
    /// Connectors, marked points and loops.
    Connectors {
        label: RationalLabel,
        #[arg(long)]
        group: PathBuf,
        /// Bend the group about L by this angle first.
        #[arg(long, default_value_t = 0.0)]
        bend: f64,
    },
    /// Validate a model group.
    CheckModel { group: PathBuf },
    /// Run the winding-group heuristic.
    CheckWinding {
        group: PathBuf,
        #[arg(long, default_value_t = 8)]
        word_len: usize,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 0.0)]
        bend: f64,
    },
    /// Render the upper half-plane picture of one label.
    Plot {
        label: RationalLabel,
        #[arg(long)]
        group: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check every label with p+q up to a bound.
    Verify {
        #[arg(long)]
        max_sum: u64,
        #[arg(long)]
        group: PathBuf,
    },
    /// Follow connectors along the bending path down to the model group.
    Deform {
        #[arg(long)]
        group: PathBuf,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 8)]
        max_sum: u64,
        /// Starting bend; defaults to the config's deform table.
        #[arg(long)]
        bend: Option<f64>,
    },
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_)
            | Error::ModelValidation(_)
            | Error::NotPlanar
            | Error::BadLabel(_)
            | Error::NotReduced(_)
            | Error::OutOfScope(_)
            | Error::Singular(_)
            | Error::NotLoxodromic(_)
            | Error::SharedEndpoints => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

type Run = Result<bool, Failure>;

fn install_tolerance(flag: Option<f64>) -> Result<(), Failure> {
    let base = match (flag, std::env::var("HYPESI_TOL")) {
        (Some(t), _) => t,
        (None, Ok(s)) => s
            .trim()
            .parse()
            .map_err(|_| Failure { code: 2, message: format!("HYPESI_TOL={s:?} is not a number") })?,
        (None, Err(_)) => return Ok(()),
    };
    let t = Tolerances::scaled(base);
    if !t.is_valid() {
        return Err(Failure { code: 2, message: format!("tolerance {base} must be positive and finite") });
    }
    tol::set(t);
    Ok(())
}

fn load(path: &Path) -> Result<(GroupConfig, GroupFrame), Failure> {
    let cfg = GroupConfig::load(path)?;
    let (a, b) = cfg.generators()?;
    let frame = build_frame(&a, &b)?;
    Ok((cfg, frame))
}

fn bent(frame: &GroupFrame, angle: f64) -> Result<GroupFrame, Failure> {
    if angle == 0.0 {
        return Ok(frame.clone());
    }
    let (a, b) = bend_generators(frame, angle);
    Ok(build_frame(&a, &b)?)
}

fn emit(tables: &[&Table]) {
    let text: Vec<String> = tables.iter().map(|t| t.to_string()).collect();
    print!("{}", text.join("\n"));
}

fn word_table(labels: &[RationalLabel]) -> Result<Table, Failure> {
    let mut t = Table::new("words", &["label", "word", "kind"]);
    for &x in labels {
        let w = primitive_word(x)?;
        let kind = if w.is_palindrome() { "palindrome" } else { "product" };
        t.push(vec![x.to_string(), w.to_string(), kind.into()]);
    }
    Ok(t)
}

fn run(cli: Cli) -> Run {
    install_tolerance(cli.tol)?;
    let summary_only = cli.format == Format::Summary;
    match cli.command {
        Command::Enumerate { max_sum } => {
            emit(&[&word_table(&RationalLabel::all_up_to(max_sum))?]);
            Ok(true)
        }
        Command::Word { label } => {
            emit(&[&word_table(&[label])?]);
            Ok(true)
        }
        Command::Esi { label, group } => {
            let (_, frame) = load(&group)?;
            let esi = esi_points(&frame, label)?;
            let summary = esi_summary(&esi);
            if summary_only {
                emit(&[&summary]);
            } else {
                emit(&[&esi_table(&esi), &summary]);
            }
            Ok(esi.essential_count == 2 * (label.sum() as usize).saturating_sub(1))
        }
        Command::Connectors { label, group, bend } => {
            let (_, frame) = load(&group)?;
            let set = connectors(&bent(&frame, bend)?, label)?;
            let (loops, _, _) = loop_count(&set)?;
            let summary = connector_summary(&set, loops);
            if summary_only {
                emit(&[&summary]);
            } else {
                emit(&[&connector_table(&set), &summary]);
            }
            Ok(true)
        }
        Command::CheckModel { group } => {
            let (_, frame) = load(&group)?;
            let report = validate_model_group(&frame)?;
            emit(&[&model_table(&report, &frame.hexagon_residuals())]);
            Ok(report.verdict)
        }
        Command::CheckWinding { group, word_len, samples, bend } => {
            let (_, frame) = load(&group)?;
            let report = winding_group_check(&bent(&frame, bend)?, word_len, samples)?;
            let summary = winding_summary(&report);
            if summary_only {
                emit(&[&summary]);
            } else {
                emit(&[&winding_table(&report), &summary]);
            }
            Ok(report.verdict)
        }
        Command::Plot { label, group, output } => {
            let (_, frame) = load(&group)?;
            let esi = esi_points(&frame, label)?;
            let svg = render_svg(&Scene::from_esi(&frame, &esi))?;
            std::fs::write(&output, svg)
                .map_err(|e| Failure { code: 2, message: format!("{}: {e}", output.display()) })?;
            Ok(true)
        }
        Command::Verify { max_sum, group } => {
            let (cfg, frame) = load(&group)?;
            validate_model_group(&frame)?;
            let mut groups = vec![("model".to_string(), frame.clone())];
            if let Some(d) = cfg.deform {
                groups.push((format!("bend {}", d.bend / 2.0), bent(&frame, d.bend / 2.0)?));
                groups.push((format!("bend {}", d.bend), bent(&frame, d.bend)?));
            }
            let mut frames = Table::new("verify-frames", &["group", "hexagon_residual", "status"]);
            let mut ok = true;
            for (name, f) in &groups {
                let r = frame_residual(f);
                ok &= r < RESIDUAL_BOUND;
                frames.push(vec![name.clone(), float(r), if r < RESIDUAL_BOUND { "pass" } else { "fail" }.into()]);
            }
            let deformed: Vec<GroupFrame> = groups.into_iter().map(|(_, f)| f).collect();
            let reports = verify_all(&frame, &deformed, max_sum, &VerifyOptions::default());
            ok &= reports.iter().all(|r| r.passed());
            emit(&[&frames, &verify_table(&reports)]);
            for r in reports.iter().filter(|r| !r.errors.is_empty()) {
                eprintln!("{}: {}", r.label, r.errors.join("; "));
            }
            Ok(ok)
        }
        Command::Deform { group, steps, max_sum, bend } => {
            let (cfg, frame) = load(&group)?;
            validate_model_group(&frame)?;
            let bend = bend
                .or(cfg.deform.map(|d| d.bend))
                .ok_or_else(|| Failure { code: 2, message: "no bend given and no [deform] table in the config".into() })?;
            let reports = RationalLabel::all_up_to(max_sum)
                .into_iter()
                .filter(|x| x.p() > 0 && x.q() > 0)
                .map(|x| deform_report(&frame, x, bend, steps))
                .collect::<Result<Vec<_>, _>>()?;
            emit(&[&deform_table(&reports)]);
            Ok(reports.iter().all(|r| r.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

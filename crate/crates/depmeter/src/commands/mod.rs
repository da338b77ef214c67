pub mod compute;
pub mod dpi;
pub mod example;
pub mod ptest;
pub mod verify;

use depmeter_core::{JointTable, MeasureReport, MultiTable, Samples, TripleTable};

use crate::cli::{InputArgs, InputKind};
use crate::error::{CliError, CliResult};
use crate::input::{self, AxesSpec};
use crate::output::Report;

pub enum Loaded {
    Table(JointTable),
    Samples(Samples),
    Multi(MultiTable),
    Triple(TripleTable),
}

pub fn load(a: &InputArgs) -> CliResult<Loaded> {
    let path = a.input.as_path();
    Ok(match a.kind {
        InputKind::Table => Loaded::Table(input::read_table(path, a.order, a.weights)?),
        InputKind::Samples => {
            let (s, dropped) = input::read_samples(path, a.x_col.as_deref(), a.y_col.as_deref(), a.order)?;
            if dropped > 0 {
                eprintln!("note: dropped {dropped} rows with an empty selected field");
            }
            Loaded::Samples(s)
        }
        InputKind::Multi => {
            let axes = match &a.axes {
                Some(p) => AxesSpec::load(p)?,
                None => AxesSpec {
                    x: a.x_cols.clone(),
                    y: a.y_cols.clone(),
                },
            };
            if axes.x.is_empty() || axes.y.is_empty() {
                return Err(CliError::Usage(
                    "multi input needs --x-cols and --y-cols, or --axes".into(),
                ));
            }
            Loaded::Multi(input::read_multi(path, &axes, &a.weight_col, a.order, a.weights)?)
        }
        InputKind::Triple => {
            let cols = [
                a.x_col.as_deref().unwrap_or("x"),
                a.y_col.as_deref().unwrap_or("y"),
                a.z_col.as_deref().unwrap_or("z"),
            ];
            Loaded::Triple(input::read_triple(path, cols, &a.weight_col, a.order, a.weights)?)
        }
    })
}

pub fn measure_report() -> Report {
    Report::new(vec!["measure", "alpha", "value", "upper_bound", "normalized"])
}

pub fn push_measure(report: &mut Report, r: &MeasureReport) {
    report.push(vec![
        r.measure.as_str().into(),
        r.alpha.into(),
        r.value.into(),
        r.upper_bound.into(),
        r.normalized.into(),
    ]);
}

pub fn done(stdout: String) -> CliResult<crate::cli::Outcome> {
    Ok(crate::cli::Outcome {
        stdout,
        violation: false,
    })
}

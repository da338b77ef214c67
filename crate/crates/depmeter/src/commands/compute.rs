use depmeter_core::{
    limit_mv, phi_mv, renyi_mv, tau_conditional_squared, tau_squared_mv, tsallis_mv, MeasureId, MeasureReport,
    MeasureSpec,
};

use super::{done, load, measure_report, push_measure, Loaded};
use crate::cli::{ComputeArgs, Outcome};
use crate::error::{CliError, CliResult};

/// Measure requests with one entry per α for the entropy forms.
fn expand(a: &ComputeArgs) -> CliResult<Vec<MeasureSpec>> {
    let mut specs = Vec::new();
    for &id in &a.measures {
        if id.needs_alpha() {
            if a.alpha.is_empty() {
                return Err(CliError::Usage(format!("`{id}` needs at least one --alpha")));
            }
            specs.extend(a.alpha.iter().map(|&alpha| MeasureSpec::with_alpha(id, alpha)));
        } else {
            specs.push(MeasureSpec { phi: a.phi, ..MeasureSpec::new(id) });
        }
    }
    Ok(specs)
}

fn evaluate(data: &Loaded, spec: &MeasureSpec) -> CliResult<MeasureReport> {
    let alpha = || spec.alpha.expect("expanded with alpha");
    Ok(match data {
        Loaded::Table(t) => spec.evaluate(t)?,
        Loaded::Samples(s) => spec.evaluate(&s.to_table())?,
        Loaded::Multi(t) => match spec.id {
            MeasureId::Tau2 => tau_squared_mv(t),
            MeasureId::Phi => MeasureReport::unbounded(MeasureId::Phi, phi_mv(t, &spec.phi)?),
            MeasureId::Renyi => renyi_mv(t, alpha())?,
            MeasureId::Tsallis => tsallis_mv(t, alpha())?,
            MeasureId::Limit => limit_mv(t),
            MeasureId::MutualInformation | MeasureId::Linfoot | MeasureId::Bhm => spec.evaluate(&t.flatten())?,
        },
        Loaded::Triple(t) => match spec.id {
            MeasureId::Tau2 => tau_conditional_squared(t),
            other => {
                return Err(CliError::Usage(format!(
                    "`{other}` is not defined for triple input; only tau2 has a conditional form"
                )))
            }
        },
    })
}

pub fn run(a: &ComputeArgs) -> CliResult<Outcome> {
    let specs = expand(a)?;
    let data = load(&a.input)?;
    let mut report = measure_report();
    for spec in &specs {
        let r = evaluate(&data, spec)?;
        if r.degenerate_target {
            eprintln!("note: target is degenerate; `{}` has bound 0", r.measure);
        }
        push_measure(&mut report, &r);
    }
    done(report.render(a.format))
}

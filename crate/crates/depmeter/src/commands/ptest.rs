use depmeter_core::{permutation_pvalue, Error, MeasureSpec};

use super::{done, load, Loaded};
use crate::cli::{Outcome, PtestArgs};
use crate::error::{CliError, CliResult};
use crate::output::Report;

pub fn run(a: &PtestArgs) -> CliResult<Outcome> {
    let spec = if a.measure.needs_alpha() {
        let alpha = a
            .alpha
            .ok_or_else(|| CliError::Usage(format!("`{}` needs --alpha", a.measure)))?;
        MeasureSpec::with_alpha(a.measure, alpha)
    } else {
        MeasureSpec {
            phi: a.phi,
            ..MeasureSpec::new(a.measure)
        }
    };
    let samples = match load(&a.input)? {
        Loaded::Samples(s) => s,
        _ => return Err(Error::NeedsSamples.into()),
    };
    let r = permutation_pvalue(&samples, &spec, a.permutations, a.seed)?;
    let mut report = Report::new(vec![
        "measure",
        "alpha",
        "observed",
        "exceedances",
        "permutations",
        "p_value",
        "seed",
    ]);
    report.push(vec![
        spec.id.as_str().into(),
        spec.alpha.into(),
        r.observed.into(),
        r.exceedances.into(),
        r.permutations.into(),
        r.p_value.into(),
        a.seed.into(),
    ]);
    done(report.render(a.format))
}

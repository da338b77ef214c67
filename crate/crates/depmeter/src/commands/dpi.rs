use std::path::Path;

use depmeter_core::{
    check_dpi, check_dpi_mv, random, DiscreteSupport, DpiReport, MarkovChain3, MvChain, ProbVector, TransitionMatrix,
    TransitionTensor,
};

use crate::cli::{DpiArgs, Outcome};
use crate::error::{CliError, CliResult};
use crate::input::{read_matrix, read_vector};
use crate::output::{Field, Report};

fn chain_rng(seed: u64, index: usize) -> random::SeededRng {
    let mut rng = random::seeded(seed);
    rng.set_stream(index as u64);
    rng
}

fn required<'a>(p: &'a Option<std::path::PathBuf>, flag: &str) -> CliResult<&'a Path> {
    p.as_deref()
        .ok_or_else(|| CliError::Usage(format!("chain files need {flag}")))
}

fn bivariate_from_files(a: &DpiArgs) -> CliResult<MarkovChain3> {
    let source = read_vector(required(&a.source, "--source")?)?;
    let m_xy = TransitionMatrix::from_rows(&read_matrix(required(&a.m_xy, "--m-xy")?)?)?;
    let m_yz = TransitionMatrix::from_rows(&read_matrix(required(&a.m_yz, "--m-yz")?)?)?;
    let n = source.len();
    Ok(MarkovChain3::new(ProbVector::new(source, DiscreteSupport::indexed(n))?, m_xy, m_yz)?)
}

/// Group chain from flattened matrices; a missing shape means one axis.
fn multivariate_from_files(a: &DpiArgs) -> CliResult<MvChain> {
    let source = read_vector(required(&a.source, "--source")?)?;
    let m_xy = read_matrix(required(&a.m_xy, "--m-xy")?)?;
    let m_yz = read_matrix(required(&a.m_yz, "--m-yz")?)?;
    let shape = |given: &[usize], cells: usize| if given.is_empty() { vec![cells] } else { given.to_vec() };
    let xs = shape(&a.x_shape, m_xy.len());
    let ys = shape(&a.y_shape, m_yz.len());
    let zs = shape(&a.z_shape, m_yz[0].len());
    let t_xy = TransitionTensor::new(&xs, &ys, m_xy.concat())?;
    let t_yz = TransitionTensor::new(&ys, &zs, m_yz.concat())?;
    Ok(MvChain::new(source, t_xy, t_yz)?)
}

fn dpi_fields(index: usize, r: &DpiReport) -> Vec<Field> {
    vec![
        index.into(),
        r.tau_xz.into(),
        r.tau_yz.into(),
        r.slack.into(),
        r.tau_zx.into(),
        r.tau_yx.into(),
        r.reverse_slack.into(),
    ]
}

pub fn run(a: &DpiArgs) -> CliResult<Outcome> {
    let mut columns = vec!["chain", "tau_xz", "tau_yz", "slack", "tau_zx", "tau_yx", "reverse_slack"];
    if a.multivariate {
        columns.extend(["bijection_delta", "axis_delta"]);
    }
    columns.push("holds");
    let mut report = Report::new(columns);
    let mut violations = 0usize;
    let mut min_slack = f64::INFINITY;
    let mut chains = 0usize;

    let mut record = |report: &mut Report, mut fields: Vec<Field>, r: &DpiReport, holds: bool| {
        chains += 1;
        violations += usize::from(!holds);
        min_slack = min_slack.min(r.slack).min(r.reverse_slack);
        fields.push(holds.into());
        report.push(fields);
    };

    if a.multivariate {
        if a.max_axes == 0 || a.max_axis < 2 {
            return Err(CliError::Usage("--max-axes must be at least 1 and --max-axis at least 2".into()));
        }
        let chains: Vec<MvChain> = match a.random {
            Some(count) => (0..count)
                .map(|b| random::mv_chain(&mut chain_rng(a.seed, b), a.max_axes, a.max_axis))
                .collect(),
            None => vec![multivariate_from_files(a)?],
        };
        for (b, c) in chains.iter().enumerate() {
            let r = check_dpi_mv(c, &a.phi)?;
            let mut fields = dpi_fields(b, &r.dpi);
            fields.extend([r.bijection_delta.into(), r.axis_permutation_delta.into()]);
            record(&mut report, fields, &r.dpi, r.all_hold());
        }
    } else {
        if a.max_size < 2 {
            return Err(CliError::Usage("--max-size must be at least 2".into()));
        }
        if !(a.x_shape.is_empty() && a.y_shape.is_empty() && a.z_shape.is_empty()) {
            return Err(CliError::Usage("axis shapes need --multivariate".into()));
        }
        let chains: Vec<MarkovChain3> = match a.random {
            Some(count) => (0..count)
                .map(|b| random::chain(&mut chain_rng(a.seed, b), a.max_size))
                .collect(),
            None => vec![bivariate_from_files(a)?],
        };
        for (b, c) in chains.iter().enumerate() {
            let r = check_dpi(c, &a.phi)?;
            record(&mut report, dpi_fields(b, &r), &r, r.all_hold());
        }
    }

    report.summarize("chains", chains);
    report.summarize("phi", a.phi.to_string());
    if a.random.is_some() {
        report.summarize("seed", a.seed);
    }
    report.summarize("min_slack", if chains > 0 { Field::Num(min_slack) } else { Field::Missing });
    report.summarize("violations", violations);
    Ok(Outcome {
        stdout: report.render(a.format),
        violation: violations > 0,
    })
}

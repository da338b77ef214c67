use depmeter_core::circle::{self, CircleQuantity};

use crate::cli::{Outcome, VerifyArgs};
use crate::error::CliResult;
use crate::output::Report;

const TOLERANCE: f64 = 1e-12;

pub fn run(a: &VerifyArgs) -> CliResult<Outcome> {
    let oracles = a.n.iter().map(|&n| circle::oracle(n)).collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new(vec!["n", "quantity", "computed", "oracle", "rel_error", "status"]);
    let mut failures = 0usize;
    for oracle in &oracles {
        let inst = circle::generate(oracle.n)?;
        for q in CircleQuantity::ALL {
            let expected = oracle.get(q);
            let computed = q.compute(&inst);
            let err = circle::relative_error(computed, expected);
            let ok = err <= TOLERANCE;
            failures += usize::from(!ok);
            report.push(vec![
                oracle.n.into(),
                q.label().into(),
                computed.into(),
                expected.into(),
                err.into(),
                if ok { "pass" } else { "FAIL" }.into(),
            ]);
        }
    }
    report.summarize("checked", report.rows().len());
    report.summarize("failures", failures);
    Ok(Outcome {
        stdout: report.render(a.format),
        violation: failures > 0,
    })
}

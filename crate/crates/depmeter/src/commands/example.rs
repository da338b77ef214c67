use depmeter_core::circle::{self, CircleQuantity, CircleVar};

use crate::cli::{ExampleArgs, Outcome};
use crate::error::{CliError, CliResult};
use crate::input::{table_csv, write_file};
use crate::output::{OutputFormat, Report};

const PAIRS: [(CircleVar, CircleVar); 6] = [
    (CircleVar::X, CircleVar::Y),
    (CircleVar::Y, CircleVar::X),
    (CircleVar::Y, CircleVar::Z),
    (CircleVar::Z, CircleVar::Y),
    (CircleVar::X, CircleVar::Z),
    (CircleVar::Z, CircleVar::X),
];

fn samples_csv(inst: &circle::CircleInstance) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "y", "z"]).expect("writing to memory");
    let vars = [CircleVar::X, CircleVar::Y, CircleVar::Z];
    for point in inst.points() {
        let labels: Vec<&str> = vars.iter().zip(point).map(|(&v, &k)| inst.support(v).label(k)).collect();
        w.write_record(labels).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV output is UTF-8")
}

pub fn run(a: &ExampleArgs) -> CliResult<Outcome> {
    let oracle = circle::oracle(a.n)?;
    let mut report = Report::new(vec!["quantity", "label", "value"]);
    for q in CircleQuantity::ALL {
        report.push(vec![q.key().into(), q.label().into(), oracle.get(q).into()]);
    }
    report.summarize("n", a.n);

    if let Some(dir) = &a.out_dir {
        let inst = circle::generate(a.n)?;
        std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
            path: dir.clone(),
            source,
        })?;
        for (from, to) in PAIRS {
            let name = format!("circle_{}{}.csv", from.name().to_lowercase(), to.name().to_lowercase());
            write_file(dir.join(name), &table_csv(&inst.table(from, to)))?;
        }
        write_file(dir.join("samples.csv"), &samples_csv(&inst))?;
        write_file(dir.join("oracle.json"), &report.render(OutputFormat::Json))?;
    }
    Ok(Outcome {
        stdout: report.render(a.format),
        violation: false,
    })
}

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Run with `cargo test -p depmeter-core --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{conditional_oracle, dense_mv, rel_or_abs, Dense};
use depmeter_core::circle::{self, CircleQuantity, CircleVar};
use depmeter_core::random;
use depmeter_core::*;
use rand::Rng;

const ALPHAS: [f64; 4] = [0.3, 0.5, 1.5, 1.9];

fn phis() -> [ConvexPhi; 3] {
    [ConvexPhi::Square, ConvexPhi::Absolute, ConvexPhi::Power(1.5)]
}

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: String) -> Self {
        Self { pass, detail }
    }
}

/// Tracks the largest deviation seen and where it happened.
#[derive(Default)]
struct Worst {
    value: f64,
    what: String,
}

impl Worst {
    fn see(&mut self, v: f64, what: impl FnOnce() -> String) {
        if v.is_nan() || v > self.value {
            self.value = if v.is_nan() { f64::INFINITY } else { v };
            self.what = what();
        }
    }

    fn within(&self, tol: f64) -> bool {
        self.value <= tol
    }

    fn describe(&self) -> String {
        if self.what.is_empty() {
            format!("{:.2e}", self.value)
        } else {
            format!("{:.2e} at {}", self.value, self.what)
        }
    }
}

/// Every value the library reports for a bivariate table, keyed by name.
fn all_measures(t: &JointTable) -> Vec<(String, f64)> {
    let mut out = vec![
        ("mi".to_string(), mutual_information(t)),
        ("linfoot".to_string(), linfoot_coefficient(t)),
        ("bhm".to_string(), bhm_distance(t)),
        ("tau2".to_string(), tau_squared(t).value),
        ("limit".to_string(), limit_measure(t).value),
    ];
    for phi in phis() {
        out.push((format!("phi-{phi}"), phi_measure(t, &phi).unwrap()));
    }
    for a in ALPHAS {
        out.push((format!("renyi-{a}"), renyi_alpha(t, a).unwrap().value));
        out.push((format!("tsallis-{a}"), tsallis_alpha(t, a).unwrap().value));
    }
    out
}

fn nonsymmetric_measures(t: &JointTable) -> Vec<(String, f64)> {
    all_measures(t)
        .into_iter()
        .filter(|(k, _)| !matches!(k.as_str(), "mi" | "linfoot" | "bhm"))
        .collect()
}

fn mv_measures(t: &MultiTable) -> Vec<(String, f64)> {
    let mut out = vec![
        ("tau2".to_string(), tau_squared_mv(t).value),
        ("tau_max".to_string(), tau_max_mv(t)),
        ("limit".to_string(), limit_mv(t).value),
    ];
    for phi in phis() {
        out.push((format!("phi-{phi}"), phi_mv(t, &phi).unwrap()));
    }
    for a in ALPHAS {
        out.push((format!("renyi-{a}"), renyi_mv(t, a).unwrap().value));
        out.push((format!("tsallis-{a}"), tsallis_mv(t, a).unwrap().value));
    }
    out
}

fn size<R: Rng>(rng: &mut R, max: usize) -> usize {
    rng.random_range(2..=max)
}

fn shape<R: Rng>(rng: &mut R, max_axes: usize, max_axis: usize) -> Vec<usize> {
    let d = rng.random_range(1..=max_axes);
    (0..d).map(|_| rng.random_range(2..=max_axis)).collect()
}

/// Range checks gathered from criteria 3 to 5.
#[derive(Default)]
struct RangeLog {
    checked: usize,
    failures: Vec<String>,
}

impl RangeLog {
    fn see(&mut self, what: &str, v: f64) {
        self.checked += 1;
        if !(v > 0.0 && v < 1.5) && self.failures.len() < 5 {
            self.failures.push(format!("{what}={v}"));
        }
    }
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let quantities = [
        CircleQuantity::MiXY,
        CircleQuantity::MiXZ,
        CircleQuantity::BhmXY,
        CircleQuantity::BhmXZ,
        CircleQuantity::Tau2YX,
        CircleQuantity::Tau2XY,
        CircleQuantity::Tau2XZ,
    ];
    let mut worst = Worst::default();
    let mut count = 0;
    for n in [2u64, 3, 5, 10, 100] {
        let inst = circle::generate(n).unwrap();
        for q in quantities {
            let expected = q.closed_form(n).unwrap();
            let got = q.compute(&inst);
            worst.see(circle::relative_error(got, expected), || format!("{} n={n}", q.key()));
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(
        worst.within(1e-12) && secs < 5.0,
        format!("{count} values, max error {}, {secs:.2} s", worst.describe()),
    )
}

fn ac2() -> Outcome {
    let start = Instant::now();
    let inst = circle::generate(10_000).unwrap();
    let tau = |a, b| tau_squared(&inst.table(a, b)).value.sqrt();
    let yx = tau(CircleVar::Y, CircleVar::X);
    let xy = tau(CircleVar::X, CircleVar::Y);
    let xz = tau(CircleVar::X, CircleVar::Z);
    let secs = start.elapsed().as_secs_f64();
    let half = |v: f64| (0.5 - 1e-3..=0.5).contains(&v);
    Outcome::new(
        (1.0 - 1e-3..=1.0).contains(&yx) && half(xy) && half(xz) && secs < 60.0,
        format!("tau(Y,X)={yx:.9}, tau(X,Y)={xy:.9}, tau(X,Z)={xz:.9}, {secs:.2} s"),
    )
}

fn ac3(ranges: &mut RangeLog) -> Outcome {
    let mut rng = random::seeded(0xAC03);
    let mut worst = Worst::default();
    let mut negative = Worst::default();
    for trial in 0..1000 {
        let (m, n) = (size(&mut rng, 10), size(&mut rng, 10));
        let t = random::product_table(&mut rng, m, n);
        for (name, v) in all_measures(&t) {
            worst.see(v, || format!("{name} trial {trial}"));
            negative.see(-v, || format!("{name} trial {trial}"));
        }
        ranges.see("tau_max", tau_max_squared(&t));

        let (xs, ys) = (shape(&mut rng, 3, 4), shape(&mut rng, 3, 4));
        let mt = random::product_multi_table(&mut rng, &xs, &ys);
        for (name, v) in mv_measures(&mt) {
            if name == "tau_max" {
                ranges.see("mv bound", v);
            } else {
                worst.see(v, || format!("mv {name} trial {trial}"));
                negative.see(-v, || format!("mv {name} trial {trial}"));
            }
        }
    }
    Outcome::new(
        worst.within(1e-10) && negative.within(1e-12),
        format!("1000 tables + 1000 tensors, max value {}", worst.describe()),
    )
}

fn ac4(ranges: &mut RangeLog) -> Outcome {
    let mut rng = random::seeded(0xAC04);
    let mut worst = Worst::default();
    for trial in 0..500 {
        let (m, n) = (size(&mut rng, 20), size(&mut rng, 20));
        let t = random::functional_table(&mut rng, m, n);
        let oracle = Dense::of(&t);
        let tau = tau_squared(&t);
        worst.see((tau.value - tau.upper_bound.unwrap()).abs(), || format!("tau2 trial {trial}"));
        worst.see((tau.value - oracle.tau2_bound()).abs(), || format!("tau2 oracle trial {trial}"));
        let lim = limit_measure(&t);
        worst.see((lim.value - lim.upper_bound.unwrap()).abs(), || format!("limit trial {trial}"));
        worst.see((lim.value - oracle.limit_bound()).abs(), || format!("limit oracle trial {trial}"));
        for a in ALPHAS {
            let r = renyi_alpha(&t, a).unwrap();
            worst.see((r.value - r.upper_bound.unwrap()).abs(), || format!("renyi-{a} trial {trial}"));
            worst.see((r.value - oracle.renyi_bound(a)).abs(), || format!("renyi-{a} oracle trial {trial}"));
            let s = tsallis_alpha(&t, a).unwrap();
            worst.see((s.value - s.upper_bound.unwrap()).abs(), || format!("tsallis-{a} trial {trial}"));
            worst.see((s.value - oracle.tsallis_bound(a)).abs(), || format!("tsallis-{a} oracle trial {trial}"));
        }
        ranges.see("tau_max", tau_max_squared(&t));
    }
    Outcome::new(worst.within(1e-10), format!("500 tables, max |value - bound| {}", worst.describe()))
}

fn ac5(ranges: &mut RangeLog) -> Outcome {
    let mut rng = random::seeded(0xAC05);
    let mut violations = 0usize;
    let mut checks = 0usize;
    let mut min_slack = f64::INFINITY;
    for _ in 0..500 {
        let c = random::chain(&mut rng, 8);
        for phi in phis() {
            let r = check_dpi(&c, &phi).unwrap();
            checks += 2;
            violations += usize::from(!r.holds) + usize::from(!r.reverse_holds);
            min_slack = min_slack.min(r.slack).min(r.reverse_slack);
        }
        for e in [Endpoints::XY, Endpoints::YZ, Endpoints::XZ] {
            ranges.see("tau_max", tau_max_squared(&joint_from_chain(&c, e).unwrap()));
        }
    }
    let mut invariance = 0usize;
    for _ in 0..200 {
        let c = random::mv_chain(&mut rng, 3, 3);
        for phi in phis() {
            let r = check_dpi_mv(&c, &phi).unwrap();
            checks += 2;
            violations += usize::from(!r.dpi.holds) + usize::from(!r.dpi.reverse_holds);
            invariance += usize::from(!r.invariance_holds());
            min_slack = min_slack.min(r.dpi.slack).min(r.dpi.reverse_slack);
        }
        for t in [c.xy().unwrap(), c.yz().unwrap(), c.xz().unwrap()] {
            ranges.see("mv bound", tau_max_mv(&t));
        }
    }
    Outcome::new(
        violations == 0 && invariance == 0,
        format!(
            "{checks} inequalities, {violations} violations, {invariance} invariance failures, min slack {min_slack:.3e}"
        ),
    )
}

fn ac6() -> Outcome {
    let mut rng = random::seeded(0xAC06);
    let mut worst = Worst::default();
    for trial in 0..200 {
        let (m, n) = (size(&mut rng, 10), size(&mut rng, 10));
        let t = random::sparse_table(&mut rng, m, n, 0.3);
        let permuted = t.permute_rows(&random::permutation(&mut rng, m)).unwrap();
        for ((name, a), (_, b)) in nonsymmetric_measures(&t).into_iter().zip(nonsymmetric_measures(&permuted)) {
            worst.see((a - b).abs(), || format!("{name} trial {trial}"));
        }

        let (xs, ys) = (shape(&mut rng, 3, 4), shape(&mut rng, 2, 4));
        let mt = random::multi_table(&mut rng, &xs, &ys);
        let cells = mt.permute_x_cells(&random::permutation(&mut rng, mt.x_cells())).unwrap();
        let axes = mt.permute_x_axes(&random::permutation(&mut rng, xs.len())).unwrap();
        let base = mv_measures(&mt);
        for other in [mv_measures(&cells), mv_measures(&axes)] {
            for ((name, a), (_, b)) in base.iter().zip(other) {
                worst.see((a - b).abs(), || format!("mv {name} trial {trial}"));
            }
        }
    }
    Outcome::new(worst.within(1e-13), format!("200 tables + 200 tensors, max change {}", worst.describe()))
}

fn ac7() -> Outcome {
    let mut rng = random::seeded(0xAC07);
    let mut limit_gap = Worst::default();
    let mut identity = Worst::default();
    for trial in 0..100 {
        let (m, n) = (size(&mut rng, 10), size(&mut rng, 10));
        let t = random::sparse_table(&mut rng, m, n, 0.2);
        let r = limit_measure(&t).value;
        for a in [1.0 - 1e-4, 1.0 + 1e-4] {
            let ra = renyi_alpha(&t, a).unwrap().value;
            let ta = tsallis_alpha(&t, a).unwrap().value;
            limit_gap.see((ra - r).abs(), || format!("renyi alpha={a} trial {trial}"));
            limit_gap.see((ta - r).abs(), || format!("tsallis alpha={a} trial {trial}"));
        }
        for a in [0.1, 0.3, 0.7, 1.0 - 1e-4, 1.0 + 1e-4, 1.3, 1.7, 1.95] {
            let ra = renyi_alpha(&t, a).unwrap().value;
            let ta = tsallis_alpha(&t, a).unwrap().value;
            let lhs = (a - 1.0) * ra;
            let rhs = (1.0 + (a - 1.0) * ta).ln();
            identity.see((lhs - rhs).abs(), || format!("alpha={a} trial {trial}"));
        }
    }
    Outcome::new(
        limit_gap.within(1e-3) && identity.within(1e-12),
        format!("100 tables, limit gap {}, identity {}", limit_gap.describe(), identity.describe()),
    )
}

fn ac8() -> Outcome {
    let mut rng = random::seeded(0xAC08);
    let mut worst = Worst::default();
    for trial in 0..200 {
        let (m, n) = (size(&mut rng, 10), size(&mut rng, 10));
        let t = random::sparse_table(&mut rng, m, n, 0.25);
        let mt = MultiTable::from_joint(&t);
        let mut biv = nonsymmetric_measures(&t);
        biv.push(("tau_max".to_string(), tau_max_squared(&t)));
        let mv = mv_measures(&mt);
        for (name, a) in &biv {
            let b = mv.iter().find(|(k, _)| k == name).map(|(_, v)| *v).unwrap();
            worst.see((a - b).abs(), || format!("mv {name} trial {trial}"));
        }
        let (c2, cm) = (conditional_cdf(&t), multi_conditional_cdf(&mt));
        for (a, b) in c2.values().iter().zip(cm.values()) {
            worst.see((a - b).abs(), || format!("cdf trial {trial}"));
        }

        let triple = TripleTable::from_shape(t.to_dense().concat(), m, n, 1).unwrap();
        let cond = tau_conditional_squared(&triple);
        worst.see((cond.value - tau_squared(&t).value).abs(), || format!("conditional trial {trial}"));
        worst.see((tau_conditional_max(&triple) - tau_max_squared(&t)).abs(), || {
            format!("conditional bound trial {trial}")
        });

        let l = size(&mut rng, 10);
        let (a, b) = (random::transition(&mut rng, m, n), random::transition(&mut rng, n, l));
        let direct = compose(&a, &b).unwrap();
        let ta = TransitionTensor::new(&[m], &[n], a.data().to_vec()).unwrap();
        let tb = TransitionTensor::new(&[n], &[l], b.data().to_vec()).unwrap();
        let via = compose_mv(&ta, &tb).unwrap();
        for (x, y) in direct.data().iter().zip(via.matrix().data()) {
            worst.see((x - y).abs(), || format!("compose trial {trial}"));
        }
    }
    Outcome::new(worst.within(1e-13), format!("200 instances, max difference {}", worst.describe()))
}

fn xor_tensor() -> TripleTable {
    let mut p = vec![0.0; 8];
    for x in 0..2 {
        for z in 0..2 {
            p[(x * 2 + (x ^ z)) * 2 + z] = 0.25;
        }
    }
    TripleTable::from_shape(p, 2, 2, 2).unwrap()
}

fn ac9() -> Outcome {
    let mut rng = random::seeded(0xAC09);
    let mut worst = Worst::default();
    for trial in 0..200 {
        let (m, n, l) = (size(&mut rng, 6), size(&mut rng, 6), size(&mut rng, 6));
        let t = random::conditionally_independent_triple(&mut rng, m, n, l);
        worst.see(tau_conditional_squared(&t).value, || format!("trial {trial}"));
    }
    let xor = xor_tensor();
    let (oracle_value, oracle_bound) = conditional_oracle(&xor);
    let report = tau_conditional_squared(&xor);
    let gap = (report.value - oracle_bound)
        .abs()
        .max((oracle_value - oracle_bound).abs())
        .max((report.upper_bound.unwrap() - oracle_bound).abs());
    Outcome::new(
        worst.within(1e-12) && gap <= 1e-12 && oracle_bound > 0.0,
        format!(
            "200 tensors, max value {}; XOR value {} bound {oracle_bound} gap {gap:.2e}",
            worst.describe(),
            report.value
        ),
    )
}

fn ac10(ranges: &RangeLog) -> Outcome {
    Outcome::new(
        ranges.failures.is_empty() && ranges.checked > 0,
        if ranges.failures.is_empty() {
            format!("{} bounds inside (0, 1.5)", ranges.checked)
        } else {
            format!("out of range: {}", ranges.failures.join(", "))
        },
    )
}

/// Not a numbered criterion: the brute-force multivariate cdf agrees with
/// the library on a few tensors, so criteria 3 to 6 rest on a checked kernel.
fn mv_kernel_sanity() -> bool {
    let mut rng = random::seeded(0xAC00);
    (0..20).all(|_| {
        let (xs, ys) = (shape(&mut rng, 2, 3), shape(&mut rng, 3, 3));
        let t = random::multi_table(&mut rng, &xs, &ys);
        let o = dense_mv(&t);
        rel_or_abs(tau_squared_mv(&t).value, o.tau2()) < 1e-12
            && rel_or_abs(tau_max_mv(&t), o.tau2_bound()) < 1e-12
    })
}

fn main() -> ExitCode {
    let mut ranges = RangeLog::default();
    let results = [
        ("AC1 circle exactness", ac1()),
        ("AC2 limit behavior n=10^4", ac2()),
        ("AC3 independence zero", ac3(&mut ranges)),
        ("AC4 functional attainment", ac4(&mut ranges)),
        ("AC5 DPI suite", ac5(&mut ranges)),
        ("AC6 bijection invariance", ac6()),
        ("AC7 alpha limit", ac7()),
        ("AC8 reductions", ac8()),
        ("AC9 conditional independence", ac9()),
    ];
    let ac10 = ac10(&ranges);
    let mut failed = 0;
    for (name, r) in results.iter().chain([&("AC10 range claims", ac10)]) {
        println!("{} {name}: {}", if r.pass { "PASS" } else { "FAIL" }, r.detail);
        failed += usize::from(!r.pass);
    }
    if !mv_kernel_sanity() {
        println!("FAIL multivariate kernel sanity check");
        failed += 1;
    }
    println!("{} of 10 criteria passed", 10 - failed.min(10));
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

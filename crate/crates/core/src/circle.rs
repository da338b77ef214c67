//! Deterministic fixture: `Y` uniform on `{k/(4n)} \ {1/4, 1/2, 3/4, 1}`,
//! `X = cos(2πY)`, `Z = sin(2πY)`, with the closed-form values of the
//! measures on every pair.
//!
//! Equal trigonometric values are produced from a canonical angle index so
//! that ties are exact rather than accidents of rounding.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::error::{Error, Result};
use crate::measures::{bhm_distance, mutual_information, tau_squared};
use crate::support::{DiscreteSupport, OrderingPolicy};
use crate::table::JointTable;

/// One of the three fixture variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircleVar {
    X,
    Y,
    Z,
}

impl CircleVar {
    pub const ALL: [CircleVar; 3] = [CircleVar::X, CircleVar::Y, CircleVar::Z];

    fn slot(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            CircleVar::X => "X",
            CircleVar::Y => "Y",
            CircleVar::Z => "Z",
        }
    }
}

impl fmt::Display for CircleVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Generated supports and the `4n − 4` equiprobable points.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleInstance {
    n: u64,
    supports: [DiscreteSupport; 3],
    /// Support indices of (X, Y, Z) for each point.
    points: Vec<[usize; 3]>,
}

/// Value rounded to 15 significant digits, rendered in shortest form.
fn label_15(v: f64) -> String {
    let rounded: f64 = format!("{v:.14e}").parse().expect("formatted float parses");
    // avoid a "-0" label for values that round to zero
    if rounded == 0.0 {
        return "0".to_string();
    }
    rounded.to_string()
}

/// Distinct values keyed by canonical angle index, sorted ascending, with
/// labels checked for collisions.
fn build_support(keyed: &BTreeMap<i64, f64>) -> Result<(DiscreteSupport, BTreeMap<i64, usize>)> {
    let mut by_value: Vec<(f64, i64)> = keyed.iter().map(|(&k, &v)| (v, k)).collect();
    by_value.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut seen = BTreeMap::new();
    let mut labels = Vec::with_capacity(by_value.len());
    let mut index = BTreeMap::new();
    for (pos, &(v, key)) in by_value.iter().enumerate() {
        let label = label_15(v);
        if seen.insert(label.clone(), ()).is_some() {
            return Err(Error::LabelCollision(label));
        }
        labels.push(label);
        index.insert(key, pos);
    }
    Ok((DiscreteSupport::new(labels, OrderingPolicy::NumericAscending)?, index))
}

/// Builds the fixture for `n >= 2`.
pub fn generate(n: u64) -> Result<CircleInstance> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let q = 4 * n as i64;
    let ni = n as i64;
    let angle = |k: i64| 2.0 * PI * (k as f64) / (q as f64);

    // cos is symmetric under k -> q - k, sin under k -> 2n - k (mod q).
    let cos_key = |k: i64| k.min(q - k);
    let sin_key = |k: i64| {
        if k <= ni {
            k
        } else if k < 3 * ni {
            2 * ni - k
        } else {
            k - q
        }
    };

    let ks: Vec<i64> = (1..=q).filter(|k| k % ni != 0).collect();
    let mut xs = BTreeMap::new();
    let mut zs = BTreeMap::new();
    let mut ys = BTreeMap::new();
    // cos(π − θ) = −cos θ and sin(−θ) = −sin θ keep mirrored values exact.
    let cos_of = |a: i64| if a < ni { libm::cos(angle(a)) } else { -libm::cos(angle(2 * ni - a)) };
    let sin_of = |r: i64| if r >= 0 { libm::sin(angle(r)) } else { -libm::sin(angle(-r)) };
    for &k in &ks {
        xs.entry(cos_key(k)).or_insert_with(|| cos_of(cos_key(k)));
        zs.entry(sin_key(k)).or_insert_with(|| sin_of(sin_key(k)));
        ys.insert(k, k as f64 / q as f64);
    }
    let (x_support, x_index) = build_support(&xs)?;
    let (z_support, z_index) = build_support(&zs)?;
    let y_support = DiscreteSupport::new(
        ks.iter().map(|&k| ys[&k].to_string()).collect(),
        OrderingPolicy::NumericAscending,
    )?;
    let points = ks
        .iter()
        .enumerate()
        .map(|(yi, &k)| [x_index[&cos_key(k)], yi, z_index[&sin_key(k)]])
        .collect();
    Ok(CircleInstance {
        n,
        supports: [x_support, y_support, z_support],
        points,
    })
}

impl CircleInstance {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn support(&self, v: CircleVar) -> &DiscreteSupport {
        &self.supports[v.slot()]
    }

    pub fn points(&self) -> &[[usize; 3]] {
        &self.points
    }

    /// Joint table with `from` as the conditioning (row) variable and `to`
    /// as the target (column) variable.
    pub fn table(&self, from: CircleVar, to: CircleVar) -> JointTable {
        let (a, b) = (from.slot(), to.slot());
        JointTable::from_count_entries(
            self.supports[a].clone(),
            self.supports[b].clone(),
            self.points.iter().map(|p| (p[a], p[b], 1)),
        )
        .expect("fixture points index their supports")
    }
}

/// Closed-form quantities of the fixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CircleQuantity {
    MiXY,
    MiYZ,
    MiXZ,
    BhmXY,
    BhmYZ,
    BhmXZ,
    Tau2YX,
    Tau2YZ,
    Tau2XY,
    Tau2ZY,
    Tau2XZ,
    Tau2ZX,
}

#[derive(Clone, Copy)]
enum Kind {
    Mi,
    Bhm,
    Tau2,
}

impl CircleQuantity {
    pub const ALL: [CircleQuantity; 12] = [
        CircleQuantity::MiXY,
        CircleQuantity::MiYZ,
        CircleQuantity::MiXZ,
        CircleQuantity::BhmXY,
        CircleQuantity::BhmYZ,
        CircleQuantity::BhmXZ,
        CircleQuantity::Tau2YX,
        CircleQuantity::Tau2YZ,
        CircleQuantity::Tau2XY,
        CircleQuantity::Tau2ZY,
        CircleQuantity::Tau2XZ,
        CircleQuantity::Tau2ZX,
    ];

    fn parts(self) -> (Kind, CircleVar, CircleVar) {
        use CircleQuantity::*;
        use CircleVar::{X, Y, Z};
        match self {
            MiXY => (Kind::Mi, X, Y),
            MiYZ => (Kind::Mi, Y, Z),
            MiXZ => (Kind::Mi, X, Z),
            BhmXY => (Kind::Bhm, X, Y),
            BhmYZ => (Kind::Bhm, Y, Z),
            BhmXZ => (Kind::Bhm, X, Z),
            Tau2YX => (Kind::Tau2, Y, X),
            Tau2YZ => (Kind::Tau2, Y, Z),
            Tau2XY => (Kind::Tau2, X, Y),
            Tau2ZY => (Kind::Tau2, Z, Y),
            Tau2XZ => (Kind::Tau2, X, Z),
            Tau2ZX => (Kind::Tau2, Z, X),
        }
    }

    /// Conditioning and target variable.
    pub fn pair(self) -> (CircleVar, CircleVar) {
        let (_, a, b) = self.parts();
        (a, b)
    }

    /// Short key such as `tau2_yx`.
    pub fn key(self) -> String {
        let (kind, a, b) = self.parts();
        let prefix = match kind {
            Kind::Mi => "mi",
            Kind::Bhm => "bhm",
            Kind::Tau2 => "tau2",
        };
        format!("{prefix}_{}{}", a.name().to_lowercase(), b.name().to_lowercase())
    }

    /// Display name such as `τ(Y,X)²`.
    pub fn label(self) -> String {
        let (kind, a, b) = self.parts();
        match kind {
            Kind::Mi => format!("I({a},{b})"),
            Kind::Bhm => format!("S_rho({a},{b})"),
            Kind::Tau2 => format!("tau({a},{b})^2"),
        }
    }

    pub fn closed_form(self, n: u64) -> Result<f64> {
        if n < 2 {
            return Err(Error::InvalidN(n));
        }
        let n = n as u128;
        let m = (2 * n - 2) as f64;
        let full = ((2 * n - 1) * (2 * n - 3)) as f64 / ((2 * n - 2) * (2 * n - 2)) as f64;
        use CircleQuantity::*;
        Ok(match self {
            MiXY | MiYZ => libm::log2(m),
            MiXZ => libm::log2(m) - 1.0,
            BhmXY | BhmYZ => 1.0 - 1.0 / libm::sqrt(m),
            BhmXZ => 1.0 - 1.0 / libm::sqrt((n - 1) as f64),
            Tau2YX | Tau2YZ => full,
            Tau2XY => 0.25 * full,
            // Given Z the two Y values are reflections about 1/4 or 3/4, not
            // about 1/2, so this pair does not share the X closed form.
            Tau2ZY => (10 * n * n - 20 * n + 9) as f64 / (16 * (n - 1) * (n - 1)) as f64,
            Tau2XZ | Tau2ZX => 0.25 * (n * (n - 2)) as f64 / ((n - 1) * (n - 1)) as f64,
        })
    }

    /// The quantity evaluated by the library on the generated table.
    pub fn compute(self, inst: &CircleInstance) -> f64 {
        let (kind, a, b) = self.parts();
        let t = inst.table(a, b);
        match kind {
            Kind::Mi => mutual_information(&t),
            Kind::Bhm => bhm_distance(&t),
            Kind::Tau2 => tau_squared(&t).value,
        }
    }
}

/// Closed-form values for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleOracle {
    pub n: u64,
    pub values: Vec<(CircleQuantity, f64)>,
}

impl CircleOracle {
    pub fn get(&self, q: CircleQuantity) -> f64 {
        self.values
            .iter()
            .find(|(k, _)| *k == q)
            .map(|&(_, v)| v)
            .expect("oracle lists every quantity")
    }
}

pub fn oracle(n: u64) -> Result<CircleOracle> {
    let values = CircleQuantity::ALL
        .iter()
        .map(|&q| q.closed_form(n).map(|v| (q, v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CircleOracle { n, values })
}

/// Relative error, or absolute error when the reference is zero.
pub fn relative_error(computed: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        libm::fabs(computed)
    } else {
        libm::fabs(computed - reference) / libm::fabs(reference)
    }
}

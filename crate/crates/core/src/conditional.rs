//! Dependence of Y on X conditional on a third variable Z.
//!
//! The squared measure averages, over the values `z_k`, the bivariate
//! squared measure of the slice `P(i, j | k)`, weighted by `P(k)`.

use alloc::format;
use alloc::vec::Vec;

use crate::cdf::{CdfCells, CondCdf};
use crate::error::{Error, Result};
use crate::measures::{self, MeasureId, MeasureReport};
use crate::sum::{self, CompensatedSum};
use crate::support::DiscreteSupport;
use crate::table::{JointTable, EPS_NORM};

/// Dense joint distribution `P(i, j, k)` over (X, Y, Z), row-major in that
/// axis order.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleTable {
    x_support: DiscreteSupport,
    y_support: DiscreteSupport,
    z_support: DiscreteSupport,
    p: Vec<f64>,
}

impl TripleTable {
    pub fn new(
        p: Vec<f64>,
        x_support: DiscreteSupport,
        y_support: DiscreteSupport,
        z_support: DiscreteSupport,
    ) -> Result<Self> {
        let cells = x_support.len() * y_support.len() * z_support.len();
        if p.len() != cells {
            return Err(Error::Shape(format!("{} values for {cells} cells", p.len())));
        }
        for (k, &v) in p.iter().enumerate() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidProbability { index: k, value: v });
            }
        }
        let total = sum::sum(p.iter().copied());
        if (total - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized {
                sum: total,
                tolerance: EPS_NORM,
            });
        }
        Ok(Self {
            x_support,
            y_support,
            z_support,
            p,
        })
    }

    pub fn from_shape(p: Vec<f64>, m: usize, n: usize, l: usize) -> Result<Self> {
        if m == 0 || n == 0 || l == 0 {
            return Err(Error::Shape("axis of length zero".into()));
        }
        Self::new(
            p,
            DiscreteSupport::indexed(m),
            DiscreteSupport::indexed(n),
            DiscreteSupport::indexed(l),
        )
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.x_support.len(), self.y_support.len(), self.z_support.len())
    }

    pub fn x_support(&self) -> &DiscreteSupport {
        &self.x_support
    }

    pub fn y_support(&self) -> &DiscreteSupport {
        &self.y_support
    }

    pub fn z_support(&self) -> &DiscreteSupport {
        &self.z_support
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        let (_, n, l) = self.shape();
        self.p[(i * n + j) * l + k]
    }

    /// `P(k)`.
    pub fn z_marginal(&self) -> Vec<f64> {
        let (_, _, l) = self.shape();
        let mut acc = alloc::vec![CompensatedSum::new(); l];
        for (idx, &v) in self.p.iter().enumerate() {
            acc[idx % l].add(v);
        }
        acc.iter().map(CompensatedSum::value).collect()
    }

    /// Unnormalized slice `P(i, j, k)` for fixed `k`, row-major in (i, j).
    pub fn slice_weights(&self, k: usize) -> Vec<f64> {
        let (_, _, l) = self.shape();
        self.p.iter().skip(k).step_by(l).copied().collect()
    }

    /// Slice normalized to the conditional joint `P(i, j | k)`, or `None`
    /// when `P(k) = 0`.
    pub fn slice(&self, k: usize) -> Option<JointTable> {
        let w = self.slice_weights(k);
        let mass = sum::sum(w.iter().copied());
        if mass <= 0.0 {
            return None;
        }
        let p: Vec<f64> = w.iter().map(|v| v / mass).collect();
        JointTable::from_dense(&p, self.x_support.clone(), self.y_support.clone()).ok()
    }

    /// The (X, Y) margin.
    pub fn xy_margin(&self) -> JointTable {
        let (m, n, l) = self.shape();
        let p: Vec<f64> = (0..m * n)
            .map(|c| sum::sum(self.p[c * l..(c + 1) * l].iter().copied()))
            .collect();
        JointTable::from_dense(&p, self.x_support.clone(), self.y_support.clone())
            .expect("margin of a valid triple table is valid")
    }

    /// Per-slice conditional cdfs with their `P(k)` weights; empty slices
    /// are skipped.
    fn slices(&self) -> impl Iterator<Item = (f64, CondCdf)> + '_ {
        let (m, n, l) = self.shape();
        (0..l).filter_map(move |k| {
            let w = self.slice_weights(k);
            let mass = sum::sum(w.iter().copied());
            (mass > 0.0).then(|| (mass, CondCdf::from_weights(&[m], &[n], &w, mass)))
        })
    }
}

/// `Σ_k P(k)·6·Σ_{i,j} (F(j|i,k) − F(j|k))²·P(i|k)·P(j|k)` with its bound.
/// The report's value is the squared measure; see [`tau_conditional`].
pub fn tau_conditional_squared(t: &TripleTable) -> MeasureReport {
    let mut value = CompensatedSum::new();
    let mut bound = CompensatedSum::new();
    let mut degenerate = true;
    for (p_k, slice) in t.slices() {
        value.add(p_k * measures::tau2_value(&slice));
        bound.add(p_k * measures::tau2_bound(&slice));
        degenerate &= slice.target_degenerate();
    }
    MeasureReport::bounded(MeasureId::Tau2, None, value.value(), bound.value(), degenerate)
}

/// `Σ_k P(k)·6·Σ_j (F(j|k) − F(j|k)²)·P(j|k)`; zero when Y is degenerate in
/// every slice.
pub fn tau_conditional_max(t: &TripleTable) -> f64 {
    let mut bound = CompensatedSum::new();
    for (p_k, slice) in t.slices() {
        bound.add(p_k * measures::tau2_bound(&slice));
    }
    bound.value()
}

/// `τ(X, Y | Z)`, the square root of the squared measure.
pub fn tau_conditional(t: &TripleTable) -> f64 {
    libm::sqrt(tau_conditional_squared(t).value.max(0.0))
}

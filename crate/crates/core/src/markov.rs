//! Transition matrices (row-stochastic conditionals) and the data processing
//! inequality harness for three-variable Markov chains.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::measures::{phi_value, ConvexPhi};
use crate::sum::{self, CompensatedSum};
use crate::support::DiscreteSupport;
use crate::table::{JointTable, ProbVector, EPS_NORM};

/// Absolute tolerance on `τ(X,Z) ≤ τ(Y,Z)`.
pub const DPI_TOLERANCE: f64 = 1e-10;

/// Row-stochastic matrix of conditionals `P(j|i)`.
///
/// Rows derived from a zero-probability conditioning value are all zero and
/// flagged; they are exempt from the row-sum invariant.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    x_support: DiscreteSupport,
    y_support: DiscreteSupport,
    data: Vec<f64>,
    zero_rows: Vec<bool>,
}

impl TransitionMatrix {
    /// Validates a dense row-major matrix: non-negative entries and every row
    /// summing to 1 within the normalization tolerance.
    pub fn from_dense(data: Vec<f64>, x_support: DiscreteSupport, y_support: DiscreteSupport) -> Result<Self> {
        let (m, n) = (x_support.len(), y_support.len());
        if data.len() != m * n {
            return Err(Error::Shape(format!("{} entries for a {m}x{n} matrix", data.len())));
        }
        for (k, &v) in data.iter().enumerate() {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidProbability { index: k, value: v });
            }
        }
        for row in data.chunks_exact(n) {
            let s = sum::sum(row.iter().copied());
            if (s - 1.0).abs() > EPS_NORM {
                return Err(Error::NotNormalized {
                    sum: s,
                    tolerance: EPS_NORM,
                });
            }
        }
        Ok(Self {
            x_support,
            y_support,
            data,
            zero_rows: vec![false; m],
        })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::EmptyData);
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::from_dense(
            rows.iter().flatten().copied().collect(),
            DiscreteSupport::indexed(m),
            DiscreteSupport::indexed(n),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            data[i * n + i] = 1.0;
        }
        Self {
            x_support: DiscreteSupport::indexed(n),
            y_support: DiscreteSupport::indexed(n),
            data,
            zero_rows: vec![false; n],
        }
    }

    /// Permutation matrix sending `i` to `order[i]`.
    pub fn permutation(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        let mut data = vec![0.0; n * n];
        for (i, &j) in order.iter().enumerate() {
            if j >= n || seen[j] {
                return Err(Error::Shape("not a permutation".into()));
            }
            seen[j] = true;
            data[i * n + j] = 1.0;
        }
        Ok(Self {
            x_support: DiscreteSupport::indexed(n),
            y_support: DiscreteSupport::indexed(n),
            data,
            zero_rows: vec![false; n],
        })
    }

    pub fn rows(&self) -> usize {
        self.x_support.len()
    }

    pub fn cols(&self) -> usize {
        self.y_support.len()
    }

    pub fn x_support(&self) -> &DiscreteSupport {
        &self.x_support
    }

    pub fn y_support(&self) -> &DiscreteSupport {
        &self.y_support
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.cols();
        &self.data[i * n..(i + 1) * n]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Whether row `i` came from a zero-probability conditioning value.
    pub fn is_zero_row(&self, i: usize) -> bool {
        self.zero_rows[i]
    }

    pub fn zero_rows(&self) -> &[bool] {
        &self.zero_rows
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks_exact(self.cols()).map(<[f64]>::to_vec).collect()
    }

    /// Cumulative rows `F(j|i)`.
    pub fn cumulative(&self) -> Vec<f64> {
        self.data.chunks_exact(self.cols()).flat_map(sum::cumulative).collect()
    }

    /// Joint table `diag(p)·M`.
    pub fn joint_with(&self, source: &[f64]) -> Result<JointTable> {
        if source.len() != self.rows() {
            return Err(Error::Shape(format!(
                "source of length {} for {} rows",
                source.len(),
                self.rows()
            )));
        }
        let n = self.cols();
        let dense: Vec<f64> = self
            .data
            .iter()
            .enumerate()
            .map(|(k, &v)| source[k / n] * v)
            .collect();
        JointTable::from_dense(&dense, self.x_support.clone(), self.y_support.clone())
    }

    /// Distribution of the target when the source has distribution `p`.
    pub fn push_forward(&self, p: &[f64]) -> Vec<f64> {
        let n = self.cols();
        let mut out = vec![CompensatedSum::new(); n];
        for (i, &w) in p.iter().enumerate() {
            for (acc, &v) in out.iter_mut().zip(self.row(i)) {
                acc.add(w * v);
            }
        }
        out.iter().map(CompensatedSum::value).collect()
    }
}

/// Conditional `P(j|i)` of a joint table; zero rows are flagged.
pub fn transition_from_joint(t: &JointTable) -> TransitionMatrix {
    let (m, n) = (t.rows(), t.cols());
    let mut data = vec![0.0; m * n];
    let mut zero_rows = vec![false; m];
    for (i, &p_x) in t.x_marginal().iter().enumerate() {
        if p_x > 0.0 {
            for (j, v) in t.row(i) {
                data[i * n + j] = v / p_x;
            }
        } else {
            zero_rows[i] = true;
        }
    }
    TransitionMatrix {
        x_support: t.x_support().clone(),
        y_support: t.y_support().clone(),
        data,
        zero_rows,
    }
}

/// Matrix product `a·b`: the transition from the source of `a` to the target
/// of `b` when the chain is conditionally independent given the middle.
pub fn compose(a: &TransitionMatrix, b: &TransitionMatrix) -> Result<TransitionMatrix> {
    if a.cols() != b.rows() {
        return Err(Error::Shape(format!(
            "cannot compose {}x{} with {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (m, l) = (a.rows(), b.cols());
    let mut data = vec![0.0; m * l];
    let mut acc = vec![CompensatedSum::new(); l];
    for i in 0..m {
        acc.fill(CompensatedSum::new());
        for (j, &w) in a.row(i).iter().enumerate() {
            if w == 0.0 {
                continue;
            }
            for (slot, &v) in acc.iter_mut().zip(b.row(j)) {
                slot.add(w * v);
            }
        }
        for (out, s) in data[i * l..(i + 1) * l].iter_mut().zip(&acc) {
            *out = s.value();
        }
    }
    Ok(TransitionMatrix {
        x_support: a.x_support.clone(),
        y_support: b.y_support.clone(),
        data,
        zero_rows: a.zero_rows.clone(),
    })
}

/// Markov chain `X → Y → Z` given by the law of X and two transitions.
#[derive(Debug, Clone, PartialEq)]
pub struct MarkovChain3 {
    source: ProbVector,
    m_xy: TransitionMatrix,
    m_yz: TransitionMatrix,
}

/// Which pair of chain variables a joint table is built for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoints {
    XY,
    YZ,
    XZ,
}

impl MarkovChain3 {
    pub fn new(source: ProbVector, m_xy: TransitionMatrix, m_yz: TransitionMatrix) -> Result<Self> {
        if source.len() != m_xy.rows() {
            return Err(Error::Shape(format!(
                "source has {} values but M_XY has {} rows",
                source.len(),
                m_xy.rows()
            )));
        }
        if m_xy.cols() != m_yz.rows() {
            return Err(Error::Shape(format!(
                "M_XY has {} columns but M_YZ has {} rows",
                m_xy.cols(),
                m_yz.rows()
            )));
        }
        Ok(Self { source, m_xy, m_yz })
    }

    pub fn source(&self) -> &ProbVector {
        &self.source
    }

    pub fn m_xy(&self) -> &TransitionMatrix {
        &self.m_xy
    }

    pub fn m_yz(&self) -> &TransitionMatrix {
        &self.m_yz
    }

    /// Law of the middle variable, `P_Xᵀ·M_XY`.
    pub fn middle_marginal(&self) -> Vec<f64> {
        self.m_xy.push_forward(self.source.probs())
    }

    pub fn joint(&self, endpoints: Endpoints) -> Result<JointTable> {
        joint_from_chain(self, endpoints)
    }
}

/// Joint table of two of the chain's variables.
pub fn joint_from_chain(c: &MarkovChain3, endpoints: Endpoints) -> Result<JointTable> {
    match endpoints {
        Endpoints::XY => c.m_xy.joint_with(c.source.probs()),
        Endpoints::YZ => c.m_yz.joint_with(&c.middle_marginal()),
        Endpoints::XZ => compose(&c.m_xy, &c.m_yz)?.joint_with(c.source.probs()),
    }
}

/// Outcome of a data processing inequality check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DpiReport {
    /// Dependence of Z on X.
    pub tau_xz: f64,
    /// Dependence of Z on Y.
    pub tau_yz: f64,
    /// `tau_yz − tau_xz`; non-negative up to [`DPI_TOLERANCE`].
    pub slack: f64,
    pub holds: bool,
    /// Dependence of X on Z (reverse chain Z → Y → X).
    pub tau_zx: f64,
    /// Dependence of X on Y.
    pub tau_yx: f64,
    pub reverse_slack: f64,
    pub reverse_holds: bool,
}

impl DpiReport {
    pub(crate) fn from_values(tau_xz: f64, tau_yz: f64, tau_zx: f64, tau_yx: f64) -> Self {
        let slack = tau_yz - tau_xz;
        let reverse_slack = tau_yx - tau_zx;
        Self {
            tau_xz,
            tau_yz,
            slack,
            holds: slack >= -DPI_TOLERANCE,
            tau_zx,
            tau_yx,
            reverse_slack,
            reverse_holds: reverse_slack >= -DPI_TOLERANCE,
        }
    }

    /// Both directions hold.
    pub fn all_hold(&self) -> bool {
        self.holds && self.reverse_holds
    }
}

/// Evaluates the φ-measure on the chain's XZ and YZ joints (and the reverse
/// pair) and reports whether the data processing inequality holds.
pub fn check_dpi(c: &MarkovChain3, phi: &ConvexPhi) -> Result<DpiReport> {
    phi.validate()?;
    let xz = joint_from_chain(c, Endpoints::XZ)?;
    let yz = joint_from_chain(c, Endpoints::YZ)?;
    let xy = joint_from_chain(c, Endpoints::XY)?;
    Ok(DpiReport::from_values(
        phi_value(&xz, phi),
        phi_value(&yz, phi),
        phi_value(&xz.transpose(), phi),
        phi_value(&xy.transpose(), phi),
    ))
}

//! Dependence of one group of discrete variables on another.
//!
//! All measures here are the tensor versions of the bivariate ones: the
//! conditional cdf `F(j⃗|i⃗)` is cumulative componentwise over the Y axes and
//! multi-indices are flattened lexicographically by axis order.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::cdf::CdfCells;
use crate::error::{Error, Result};
use crate::markov::{compose, DpiReport, TransitionMatrix};
use crate::measures::{self, ConvexPhi, MeasureReport};
use crate::multitable::{flat_offset, multi_conditional_cdf, MultiTable};
use crate::support::DiscreteSupport;
use crate::table::EPS_NORM;

/// Tolerance on relabeling invariances reported by [`check_dpi_mv`].
pub const INVARIANCE_TOLERANCE: f64 = 1e-12;

pub fn tau_squared_mv(t: &MultiTable) -> MeasureReport {
    measures::tau2_report(&multi_conditional_cdf(t))
}

/// `6·Σ [F(j⃗) − F(j⃗)²]·P(j⃗)`.
pub fn tau_max_mv(t: &MultiTable) -> f64 {
    measures::tau2_bound(&multi_conditional_cdf(t))
}

pub fn renyi_mv(t: &MultiTable, alpha: f64) -> Result<MeasureReport> {
    measures::renyi_report(&multi_conditional_cdf(t), alpha)
}

pub fn tsallis_mv(t: &MultiTable, alpha: f64) -> Result<MeasureReport> {
    measures::tsallis_report(&multi_conditional_cdf(t), alpha)
}

pub fn limit_mv(t: &MultiTable) -> MeasureReport {
    measures::limit_report(&multi_conditional_cdf(t))
}

pub fn phi_mv(t: &MultiTable, phi: &ConvexPhi) -> Result<f64> {
    phi.validate()?;
    Ok(measures::phi_value(&multi_conditional_cdf(t), phi))
}

/// Whether the Y group takes one joint value almost surely.
pub fn is_target_degenerate_mv(t: &MultiTable) -> bool {
    multi_conditional_cdf(t).target_degenerate()
}

/// Conditional tensor `P(j⃗|i⃗)` with explicit domain and codomain shapes.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionTensor {
    domain: Vec<usize>,
    codomain: Vec<usize>,
    matrix: TransitionMatrix,
}

fn cells(shape: &[usize]) -> Result<usize> {
    if shape.is_empty() || shape.contains(&0) {
        return Err(Error::Shape(format!("invalid axis shape {shape:?}")));
    }
    Ok(shape.iter().product())
}

impl TransitionTensor {
    /// `data` is row-major: flattened domain index major, codomain minor.
    pub fn new(domain: &[usize], codomain: &[usize], data: Vec<f64>) -> Result<Self> {
        let m = cells(domain)?;
        let n = cells(codomain)?;
        let matrix = TransitionMatrix::from_dense(data, DiscreteSupport::indexed(m), DiscreteSupport::indexed(n))?;
        Ok(Self {
            domain: domain.to_vec(),
            codomain: codomain.to_vec(),
            matrix,
        })
    }

    pub fn identity(shape: &[usize]) -> Result<Self> {
        let m = cells(shape)?;
        Ok(Self {
            domain: shape.to_vec(),
            codomain: shape.to_vec(),
            matrix: TransitionMatrix::identity(m),
        })
    }

    /// Conditional of the Y group given the X group.
    pub fn from_multitable(t: &MultiTable) -> Self {
        let flat = t.flatten();
        Self {
            domain: t.x_shape(),
            codomain: t.y_shape(),
            matrix: crate::markov::transition_from_joint(&flat),
        }
    }

    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn codomain(&self) -> &[usize] {
        &self.codomain
    }

    /// The flattened matrix.
    pub fn matrix(&self) -> &TransitionMatrix {
        &self.matrix
    }

    pub fn get(&self, from: &[usize], to: &[usize]) -> Option<f64> {
        let i = flat_offset(&self.domain, from)?;
        let j = flat_offset(&self.codomain, to)?;
        Some(self.matrix.get(i, j))
    }

    /// Joint tensor of source and target for a source law over the domain.
    pub fn joint_with(&self, source: &[f64]) -> Result<MultiTable> {
        if source.len() != self.matrix.rows() {
            return Err(Error::Shape(format!(
                "source of length {} for a domain of {} cells",
                source.len(),
                self.matrix.rows()
            )));
        }
        let n = self.matrix.cols();
        let p = self
            .matrix
            .data()
            .iter()
            .enumerate()
            .map(|(k, &v)| source[k / n] * v)
            .collect();
        MultiTable::from_shape(p, &self.domain, &self.codomain)
    }
}

/// Generalized product `P(k⃗|i⃗) = Σ_j⃗ P(k⃗|j⃗)·P(j⃗|i⃗)`.
pub fn compose_mv(m1: &TransitionTensor, m2: &TransitionTensor) -> Result<TransitionTensor> {
    if m1.codomain != m2.domain {
        return Err(Error::Shape(format!(
            "codomain {:?} does not match domain {:?}",
            m1.codomain, m2.domain
        )));
    }
    Ok(TransitionTensor {
        domain: m1.domain.clone(),
        codomain: m2.codomain.clone(),
        matrix: compose(&m1.matrix, &m2.matrix)?,
    })
}

/// Markov chain of three variable groups `X⃗ → Y⃗ → Z⃗`.
#[derive(Debug, Clone, PartialEq)]
pub struct MvChain {
    source: Vec<f64>,
    m_xy: TransitionTensor,
    m_yz: TransitionTensor,
}

impl MvChain {
    /// `source` is the law of X⃗ flattened over `m_xy.domain()`.
    pub fn new(source: Vec<f64>, m_xy: TransitionTensor, m_yz: TransitionTensor) -> Result<Self> {
        if source.len() != m_xy.matrix.rows() {
            return Err(Error::Shape("source length does not match M_XY domain".into()));
        }
        if m_xy.codomain != m_yz.domain {
            return Err(Error::Shape("M_XY codomain does not match M_YZ domain".into()));
        }
        if source.iter().any(|&p| !(p.is_finite() && p >= 0.0)) {
            return Err(Error::InvalidProbability {
                index: source.iter().position(|&p| !(p.is_finite() && p >= 0.0)).unwrap_or(0),
                value: f64::NAN,
            });
        }
        let total = crate::sum::sum(source.iter().copied());
        if (total - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized {
                sum: total,
                tolerance: EPS_NORM,
            });
        }
        Ok(Self { source, m_xy, m_yz })
    }

    pub fn x_shape(&self) -> &[usize] {
        &self.m_xy.domain
    }

    pub fn y_shape(&self) -> &[usize] {
        &self.m_yz.domain
    }

    pub fn z_shape(&self) -> &[usize] {
        &self.m_yz.codomain
    }

    pub fn m_xy(&self) -> &TransitionTensor {
        &self.m_xy
    }

    pub fn m_yz(&self) -> &TransitionTensor {
        &self.m_yz
    }

    pub fn source(&self) -> &[f64] {
        &self.source
    }

    pub fn xy(&self) -> Result<MultiTable> {
        self.m_xy.joint_with(&self.source)
    }

    pub fn yz(&self) -> Result<MultiTable> {
        self.m_yz.joint_with(&self.m_xy.matrix.push_forward(&self.source))
    }

    pub fn xz(&self) -> Result<MultiTable> {
        compose_mv(&self.m_xy, &self.m_yz)?.joint_with(&self.source)
    }
}

/// Swaps the two groups of a tensor: the result has the Y axes as its X
/// group.
pub fn swap_groups(t: &MultiTable) -> MultiTable {
    let (m, n) = (t.x_cells(), t.y_cells());
    let src = t.probs();
    let mut p = vec![0.0; m * n];
    for i in 0..m {
        for j in 0..n {
            p[j * m + i] = src[i * n + j];
        }
    }
    MultiTable::new(p, t.y_axes().to_vec(), t.x_axes().to_vec())
        .expect("swapping groups preserves validity")
}

/// Multivariate DPI report, plus relabeling checks on X⃗.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MvDpiReport {
    pub dpi: DpiReport,
    /// `|τ(f(X⃗), Z⃗) − τ(X⃗, Z⃗)|` for a fixed bijection `f` of the X⃗ cells.
    pub bijection_delta: f64,
    /// Same for a cyclic permutation of the X⃗ coordinate axes.
    pub axis_permutation_delta: f64,
}

impl MvDpiReport {
    pub fn invariance_holds(&self) -> bool {
        self.bijection_delta <= INVARIANCE_TOLERANCE && self.axis_permutation_delta <= INVARIANCE_TOLERANCE
    }

    pub fn all_hold(&self) -> bool {
        self.dpi.all_hold() && self.invariance_holds()
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Affine bijection `k ↦ (a·k + 1) mod m` with `a` coprime to `m`.
fn scramble(m: usize) -> Vec<usize> {
    let a = (m / 2 + 1..).find(|&a| gcd(a, m) == 1).unwrap_or(1);
    (0..m).map(|k| (a * k + 1) % m).collect()
}

/// φ-measure DPI check on a group chain, with invariance of `τ(X⃗, Z⃗)` under
/// a bijection of X⃗ and under a permutation of X⃗'s axes.
pub fn check_dpi_mv(c: &MvChain, phi: &ConvexPhi) -> Result<MvDpiReport> {
    phi.validate()?;
    let xz = c.xz()?;
    let yz = c.yz()?;
    let xy = c.xy()?;
    let eval = |t: &MultiTable| measures::phi_value(&multi_conditional_cdf(t), phi);
    let tau_xz = eval(&xz);
    let dpi = DpiReport::from_values(tau_xz, eval(&yz), eval(&swap_groups(&xz)), eval(&swap_groups(&xy)));

    let bijected = xz.permute_x_cells(&scramble(xz.x_cells()))?;
    let d = xz.x_axes().len();
    let rotation: Vec<usize> = (0..d).map(|k| (k + 1) % d).collect();
    let rotated = xz.permute_x_axes(&rotation)?;
    Ok(MvDpiReport {
        dpi,
        bijection_delta: (eval(&bijected) - tau_xz).abs(),
        axis_permutation_delta: (eval(&rotated) - tau_xz).abs(),
    })
}

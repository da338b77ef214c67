//! Bivariate dependence measures.
//!
//! The nonsymmetric measures (`tau2`, `phi`, `renyi`, `tsallis`, `limit`)
//! quantify how much the target Y depends on the conditioning variable X.
//! They are zero exactly at independence and reach their (distribution
//! dependent) upper bound exactly when Y is a function of X. Mutual
//! information, the Linfoot coefficient and the Bhattacharya–Hellinger–
//! Matusita distance are symmetric baselines.
//!
//! Log conventions: mutual information is in bits; the Rényi, Tsallis and
//! limit forms use natural logarithms.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cdf::{Cell, CdfCells};
use crate::error::{Error, Result};
use crate::sum::CompensatedSum;
use crate::table::JointTable;

/// Stable identifiers of the measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureId {
    MutualInformation,
    Linfoot,
    Tau2,
    Phi,
    Renyi,
    Tsallis,
    Limit,
    Bhm,
}

impl MeasureId {
    pub const ALL: [MeasureId; 8] = [
        MeasureId::MutualInformation,
        MeasureId::Linfoot,
        MeasureId::Tau2,
        MeasureId::Phi,
        MeasureId::Renyi,
        MeasureId::Tsallis,
        MeasureId::Limit,
        MeasureId::Bhm,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureId::MutualInformation => "mi",
            MeasureId::Linfoot => "linfoot",
            MeasureId::Tau2 => "tau2",
            MeasureId::Phi => "phi",
            MeasureId::Renyi => "renyi",
            MeasureId::Tsallis => "tsallis",
            MeasureId::Limit => "limit",
            MeasureId::Bhm => "bhm",
        }
    }

    /// Whether the measure is directional (Y on X).
    pub fn is_nonsymmetric(self) -> bool {
        !matches!(
            self,
            MeasureId::MutualInformation | MeasureId::Linfoot | MeasureId::Bhm
        )
    }

    pub fn needs_alpha(self) -> bool {
        matches!(self, MeasureId::Renyi | MeasureId::Tsallis)
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureId {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        MeasureId::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| format!("unknown measure `{s}`"))
    }
}

/// A computed measure together with its attainable upper bound.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureReport {
    pub measure: MeasureId,
    pub alpha: Option<f64>,
    pub value: f64,
    pub upper_bound: Option<f64>,
    /// `value / upper_bound`, present iff the bound is present and positive.
    pub normalized: Option<f64>,
    /// The target takes a single value, so the bound is 0.
    pub degenerate_target: bool,
}

impl MeasureReport {
    pub fn unbounded(measure: MeasureId, value: f64) -> Self {
        Self {
            measure,
            alpha: None,
            value,
            upper_bound: None,
            normalized: None,
            degenerate_target: false,
        }
    }

    pub fn bounded(measure: MeasureId, alpha: Option<f64>, value: f64, bound: f64, degenerate: bool) -> Self {
        let normalized = (bound > 0.0).then(|| (value / bound).clamp(0.0, 1.0));
        Self {
            measure,
            alpha,
            value,
            upper_bound: Some(bound),
            normalized,
            degenerate_target: degenerate,
        }
    }
}

/// Convex function used by the generalized measure.
#[derive(Debug, Clone, Copy)]
pub enum ConvexPhi {
    /// `6·t²`; the generalized measure then equals `tau2`.
    Square,
    /// `|t|`.
    Absolute,
    /// `|t|^p` with `p >= 1`.
    Power(f64),
    /// User supplied function, checked for convexity before use.
    Custom { name: &'static str, f: fn(f64) -> f64 },
}

impl PartialEq for ConvexPhi {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (ConvexPhi::Square, ConvexPhi::Square) | (ConvexPhi::Absolute, ConvexPhi::Absolute) => true,
            (ConvexPhi::Power(a), ConvexPhi::Power(b)) => a == b,
            (ConvexPhi::Custom { name: a, .. }, ConvexPhi::Custom { name: b, .. }) => a == b,
            _ => false,
        }
    }
}

const CONVEXITY_TRIALS: usize = 4096;
const CONVEXITY_SLACK: f64 = 1e-12;

impl ConvexPhi {
    #[inline]
    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            ConvexPhi::Square => 6.0 * t * t,
            ConvexPhi::Absolute => libm::fabs(t),
            ConvexPhi::Power(p) => libm::pow(libm::fabs(t), p),
            ConvexPhi::Custom { f, .. } => f(t),
        }
    }

    /// Checks parameters and runs a seeded randomized midpoint-convexity
    /// test on `[-1, 1]`.
    pub fn validate(&self) -> Result<()> {
        if let ConvexPhi::Power(p) = *self {
            if !(p.is_finite() && p >= 1.0) {
                return Err(Error::InvalidPhi(format!("power {p} must be a finite number >= 1")));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x00c0_17e8);
        for _ in 0..CONVEXITY_TRIALS {
            let a: f64 = rng.random_range(-1.0..=1.0);
            let b: f64 = rng.random_range(-1.0..=1.0);
            let (fa, fb, fm) = (self.eval(a), self.eval(b), self.eval(0.5 * (a + b)));
            if !(fa.is_finite() && fb.is_finite() && fm.is_finite()) {
                return Err(Error::InvalidPhi(format!("{self} is not finite on [-1, 1]")));
            }
            if fm > 0.5 * (fa + fb) + CONVEXITY_SLACK {
                return Err(Error::InvalidPhi(format!(
                    "{self} fails the midpoint test at a = {a}, b = {b}"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for ConvexPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexPhi::Square => f.write_str("square"),
            ConvexPhi::Absolute => f.write_str("abs"),
            ConvexPhi::Power(p) => write!(f, "power:{p}"),
            ConvexPhi::Custom { name, .. } => f.write_str(name),
        }
    }
}

impl FromStr for ConvexPhi {
    type Err = Error;

    /// Accepts `square`, `abs`, `absolute` and `power:<p>` (or `power-<p>`).
    fn from_str(s: &str) -> Result<Self> {
        let phi = match s {
            "square" => ConvexPhi::Square,
            "abs" | "absolute" => ConvexPhi::Absolute,
            _ => {
                let exponent = s
                    .strip_prefix("power:")
                    .or_else(|| s.strip_prefix("power-"))
                    .ok_or_else(|| Error::InvalidPhi(format!("unknown phi `{s}`")))?;
                let p: f64 = exponent
                    .parse()
                    .map_err(|_| Error::InvalidPhi(format!("bad exponent in `{s}`")))?;
                ConvexPhi::Power(p)
            }
        };
        phi.validate()?;
        Ok(phi)
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha > 0.0 && alpha < 2.0 {
        Ok(())
    } else {
        Err(Error::AlphaOutOfRange(alpha))
    }
}

fn is_limit(alpha: f64) -> bool {
    alpha == 1.0
}

// Kernels shared by the bivariate, multivariate and conditional forms.

fn cell_sum<T: CdfCells, G: Fn(&Cell) -> f64>(t: &T, term: G) -> f64 {
    let mut acc = CompensatedSum::new();
    t.for_each_cell(|c| acc.add(term(&c) * c.p_x * c.p_y));
    acc.value()
}

fn target_sum<T: CdfCells, G: Fn(f64) -> f64>(t: &T, term: G) -> f64 {
    let mut acc = CompensatedSum::new();
    t.for_each_target(|p, f| acc.add(term(f) * p));
    acc.value()
}

pub(crate) fn tau2_value<T: CdfCells>(t: &T) -> f64 {
    let s = cell_sum(t, |c| {
        let d = c.cond - c.marg;
        d * d
    });
    6.0 * s
}

pub(crate) fn tau2_bound<T: CdfCells>(t: &T) -> f64 {
    // F can exceed 1 by an ulp when the marginal rounds up.
    6.0 * target_sum(t, |f| (f * (1.0 - f)).max(0.0))
}

pub(crate) fn phi_value<T: CdfCells>(t: &T, phi: &ConvexPhi) -> f64 {
    cell_sum(t, |c| phi.eval(c.cond - c.marg))
}

/// `Σ (F(j|i)/F(j))^α P(i)P(j)` with `(0/F)^α = 0`.
fn power_sum<T: CdfCells>(t: &T, alpha: f64) -> f64 {
    cell_sum(t, |c| {
        if c.cond > 0.0 {
            libm::pow(c.cond / c.marg, alpha)
        } else {
            0.0
        }
    })
}

fn power_bound_sum<T: CdfCells>(t: &T, alpha: f64) -> f64 {
    target_sum(t, |f| libm::pow(f, 1.0 - alpha))
}

pub(crate) fn renyi_report<T: CdfCells>(t: &T, alpha: f64) -> Result<MeasureReport> {
    check_alpha(alpha)?;
    if is_limit(alpha) {
        return Ok(MeasureReport {
            measure: MeasureId::Renyi,
            alpha: Some(alpha),
            ..limit_report(t)
        });
    }
    let value = libm::log(power_sum(t, alpha)) / (alpha - 1.0);
    let bound = libm::log(power_bound_sum(t, alpha)) / (alpha - 1.0);
    Ok(MeasureReport::bounded(
        MeasureId::Renyi,
        Some(alpha),
        value,
        bound,
        t.target_degenerate(),
    ))
}

pub(crate) fn tsallis_report<T: CdfCells>(t: &T, alpha: f64) -> Result<MeasureReport> {
    check_alpha(alpha)?;
    if is_limit(alpha) {
        return Ok(MeasureReport {
            measure: MeasureId::Tsallis,
            alpha: Some(alpha),
            ..limit_report(t)
        });
    }
    let value = (power_sum(t, alpha) - 1.0) / (alpha - 1.0);
    // Substituting F(j|i) in {0, 1} gives Σ F(j)^(1-α) P(j) for the sum.
    let bound = (power_bound_sum(t, alpha) - 1.0) / (alpha - 1.0);
    Ok(MeasureReport::bounded(
        MeasureId::Tsallis,
        Some(alpha),
        value,
        bound,
        t.target_degenerate(),
    ))
}

pub(crate) fn limit_report<T: CdfCells>(t: &T) -> MeasureReport {
    let value = cell_sum(t, |c| {
        if c.cond > 0.0 {
            let r = c.cond / c.marg;
            r * libm::log(r)
        } else {
            0.0
        }
    });
    let bound = -target_sum(t, libm::log);
    MeasureReport::bounded(MeasureId::Limit, None, value, bound, t.target_degenerate())
}

pub(crate) fn tau2_report<T: CdfCells>(t: &T) -> MeasureReport {
    MeasureReport::bounded(
        MeasureId::Tau2,
        None,
        tau2_value(t),
        tau2_bound(t),
        t.target_degenerate(),
    )
}

/// `r·ln r − r + 1`, evaluated without cancellation near `r = 1`.
fn gibbs_term(r: f64) -> f64 {
    let d = r - 1.0;
    if libm::fabs(d) < 0.1 {
        // Σ_{k≥2} (−d)^k / (k(k−1))
        let mut term = d * d;
        let mut acc = 0.0;
        for k in 2..24u32 {
            acc += term / f64::from(k * (k - 1));
            term *= -d;
        }
        acc
    } else if r == 0.0 {
        1.0
    } else {
        r * libm::log(r) - r + 1.0
    }
}

/// Shannon mutual information in bits.
///
/// Evaluated as `Σ_{i,j} q·(r ln r − r + 1)` with `q = P(i)P(j)` and
/// `r = P(i,j)/q`, which equals `Σ P(i,j) log(P(i,j)/q)` for a normalized
/// table but has non-negative terms that vanish quadratically near
/// independence.
pub fn mutual_information(t: &JointTable) -> f64 {
    let (px, py) = (t.x_marginal(), t.y_marginal());
    let mut acc = CompensatedSum::new();
    for (i, &a) in px.iter().enumerate() {
        if a <= 0.0 {
            continue;
        }
        let mut entries = t.row(i).peekable();
        for (j, &b) in py.iter().enumerate() {
            let mut p = 0.0;
            if let Some(&(col, v)) = entries.peek() {
                if col == j {
                    p = v;
                    entries.next();
                }
            }
            let q = a * b;
            if q > 0.0 {
                acc.add(q * gibbs_term(p / q));
            }
        }
    }
    acc.value() / core::f64::consts::LN_2
}

/// Linfoot's information coefficient of correlation `sqrt(1 - e^{-2 I})`,
/// with `I` in nats.
pub fn linfoot_coefficient(t: &JointTable) -> f64 {
    linfoot_from_nats(mutual_information(t) * core::f64::consts::LN_2)
}

pub fn linfoot_from_nats(mi_nats: f64) -> f64 {
    libm::sqrt((-libm::expm1(-2.0 * mi_nats.max(0.0))).max(0.0))
}

/// Squared nonsymmetric dependence of Y on X, with its functional-dependence
/// bound.
pub fn tau_squared(t: &JointTable) -> MeasureReport {
    tau2_report(t)
}

/// `6·Σ F(j)(1 − F(j))·P(j)`: the value `tau_squared` attains exactly when Y
/// is a function of X. Zero for a degenerate target.
pub fn tau_max_squared(t: &JointTable) -> f64 {
    tau2_bound(t)
}

/// Generalized measure `Σ φ(F(j|i) − F(j))·P(i)·P(j)` for a convex `φ`.
pub fn phi_measure(t: &JointTable, phi: &ConvexPhi) -> Result<f64> {
    phi.validate()?;
    Ok(phi_value(t, phi))
}

/// Rényi-type entropy form for `0 < α < 2`; `α = 1` gives the limit form.
pub fn renyi_alpha(t: &JointTable, alpha: f64) -> Result<MeasureReport> {
    renyi_report(t, alpha)
}

/// Upper bound of the Rényi form, attained iff Y is a function of X.
pub fn renyi_upper(t: &JointTable, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if is_limit(alpha) {
        return Ok(limit_upper(t));
    }
    Ok(libm::log(power_bound_sum(t, alpha)) / (alpha - 1.0))
}

/// Tsallis-type entropy form for `0 < α < 2`; `α = 1` gives the limit form.
pub fn tsallis_alpha(t: &JointTable, alpha: f64) -> Result<MeasureReport> {
    tsallis_report(t, alpha)
}

pub fn tsallis_upper(t: &JointTable, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if is_limit(alpha) {
        return Ok(limit_upper(t));
    }
    Ok((power_bound_sum(t, alpha) - 1.0) / (alpha - 1.0))
}

/// Common `α → 1` limit of the Rényi and Tsallis forms.
pub fn limit_measure(t: &JointTable) -> MeasureReport {
    limit_report(t)
}

/// `−Σ log F(j)·P(j)`.
pub fn limit_upper(t: &JointTable) -> f64 {
    -target_sum(t, libm::log)
}

/// Discrete Bhattacharya–Hellinger–Matusita distance
/// `1 − Σ sqrt(P(i)·P(j)·P(i,j))`.
pub fn bhm_distance(t: &JointTable) -> f64 {
    let (px, py) = (t.x_marginal(), t.y_marginal());
    let mut acc = CompensatedSum::new();
    for (i, j, p) in t.entries() {
        acc.add(libm::sqrt(px[i] * py[j] * p));
    }
    1.0 - acc.value()
}

/// A measure request: identifier plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureSpec {
    pub id: MeasureId,
    pub alpha: Option<f64>,
    pub phi: ConvexPhi,
}

impl MeasureSpec {
    pub fn new(id: MeasureId) -> Self {
        Self {
            id,
            alpha: None,
            phi: ConvexPhi::Square,
        }
    }

    pub fn with_alpha(id: MeasureId, alpha: f64) -> Self {
        Self {
            alpha: Some(alpha),
            ..Self::new(id)
        }
    }

    pub fn with_phi(phi: ConvexPhi) -> Self {
        Self {
            phi,
            ..Self::new(MeasureId::Phi)
        }
    }

    fn alpha(&self) -> Result<f64> {
        let alpha = self.alpha.ok_or(Error::AlphaOutOfRange(f64::NAN))?;
        check_alpha(alpha)?;
        Ok(alpha)
    }

    /// Evaluates the measure on a bivariate table.
    pub fn evaluate(&self, t: &JointTable) -> Result<MeasureReport> {
        Ok(match self.id {
            MeasureId::MutualInformation => MeasureReport::unbounded(self.id, mutual_information(t)),
            MeasureId::Linfoot => MeasureReport::unbounded(self.id, linfoot_coefficient(t)),
            MeasureId::Bhm => MeasureReport::unbounded(self.id, bhm_distance(t)),
            MeasureId::Tau2 => tau_squared(t),
            MeasureId::Phi => MeasureReport::unbounded(self.id, phi_measure(t, &self.phi)?),
            MeasureId::Renyi => renyi_alpha(t, self.alpha()?)?,
            MeasureId::Tsallis => tsallis_alpha(t, self.alpha()?)?,
            MeasureId::Limit => limit_measure(t),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn table(rows: &[&[f64]]) -> JointTable {
        JointTable::from_matrix(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    fn independent() -> JointTable {
        table(&[&[0.25, 0.25], &[0.25, 0.25]])
    }

    fn diagonal() -> JointTable {
        table(&[&[0.5, 0.0], &[0.0, 0.5]])
    }

    fn noisy() -> JointTable {
        table(&[&[0.4, 0.1], &[0.1, 0.4]])
    }

    #[test]
    fn mutual_information_examples() {
        assert!(mutual_information(&independent()).abs() < 1e-15);
        assert!(close(mutual_information(&diagonal()), 1.0, 1e-15));
    }

    #[test]
    fn gibbs_term_matches_direct_form() {
        for r in [0.0, 0.5, 0.89, 0.95, 0.999, 1.0, 1.001, 1.05, 1.11, 3.0, 250.0] {
            let direct = if r == 0.0 { 1.0 } else { r * libm::log(r) - r + 1.0 };
            assert!(close(gibbs_term(r), direct, 1e-15 * direct.max(1.0)), "r = {r}");
        }
        assert!(gibbs_term(1.0 + 1e-9) > 0.0);
        assert!(close(gibbs_term(1.0 + 1e-6), 0.5e-12, 1e-18));
    }

    #[test]
    fn mutual_information_matches_shannon_sum() {
        let t = table(&[&[0.1, 0.2, 0.05], &[0.3, 0.05, 0.3]]);
        let (px, py) = (t.x_marginal(), t.y_marginal());
        let direct: f64 = t
            .entries()
            .map(|(i, j, p)| p * libm::log2(p / (px[i] * py[j])))
            .sum();
        assert!(close(mutual_information(&t), direct, 1e-15));
    }

    #[test]
    fn linfoot_examples() {
        assert_eq!(linfoot_coefficient(&independent()), 0.0);
        assert!(close(linfoot_from_nats(0.5), libm::sqrt(1.0 - libm::exp(-1.0)), 1e-15));
        assert!(linfoot_from_nats(40.0) < 1.0 + 1e-15);
        assert!(linfoot_from_nats(40.0) > 1.0 - 1e-15);
    }

    #[test]
    fn tau_squared_examples() {
        assert!(tau_squared(&independent()).value.abs() < 1e-15);
        let d = tau_squared(&diagonal());
        assert!(close(d.value, 0.75, 1e-15));
        assert!(close(d.upper_bound.unwrap(), 0.75, 1e-15));
        assert!(close(d.normalized.unwrap(), 1.0, 1e-15));
        assert!(close(tau_squared(&noisy()).value, 0.27, 1e-15));
    }

    #[test]
    fn tau_max_examples() {
        assert!(close(tau_max_squared(&diagonal()), 0.75, 1e-15));
        let degenerate = table(&[&[0.3], &[0.7]]);
        assert_eq!(tau_max_squared(&degenerate), 0.0);
        let r = tau_squared(&degenerate);
        assert!(r.degenerate_target);
        assert_eq!(r.normalized, None);
        for m in 2..12usize {
            let p = 1.0 / m as f64;
            let rows: Vec<Vec<f64>> = (0..m)
                .map(|i| (0..m).map(|j| if i == j { p } else { 0.0 }).collect())
                .collect();
            let t = JointTable::from_matrix(&rows).unwrap();
            let mf = m as f64;
            assert!(close(tau_max_squared(&t), (mf - 1.0) * (mf + 1.0) / (mf * mf), 1e-14));
        }
    }

    #[test]
    fn phi_examples() {
        assert!(close(phi_measure(&noisy(), &ConvexPhi::Square).unwrap(), 0.27, 1e-15));
        assert!(close(phi_measure(&diagonal(), &ConvexPhi::Absolute).unwrap(), 0.25, 1e-15));
        assert!(phi_measure(&independent(), &ConvexPhi::Power(1.5)).unwrap().abs() < 1e-15);
    }

    #[test]
    fn phi_validation() {
        assert!(ConvexPhi::Power(0.5).validate().is_err());
        assert!(ConvexPhi::Power(f64::NAN).validate().is_err());
        let concave = ConvexPhi::Custom {
            name: "neg-square",
            f: |t| -t * t,
        };
        assert!(matches!(phi_measure(&noisy(), &concave), Err(Error::InvalidPhi(_))));
        let quartic = ConvexPhi::Custom {
            name: "quartic",
            f: |t| t * t * t * t,
        };
        assert!(phi_measure(&noisy(), &quartic).is_ok());
        assert_eq!("power:1.5".parse::<ConvexPhi>().unwrap(), ConvexPhi::Power(1.5));
        assert_eq!("abs".parse::<ConvexPhi>().unwrap(), ConvexPhi::Absolute);
        assert!("power:0.3".parse::<ConvexPhi>().is_err());
        assert!("cube".parse::<ConvexPhi>().is_err());
    }

    #[test]
    fn renyi_examples() {
        for alpha in [0.3, 0.5, 1.5, 1.9] {
            assert!(renyi_alpha(&independent(), alpha).unwrap().value.abs() < 1e-15);
        }
        let r = renyi_alpha(&diagonal(), 0.5).unwrap();
        let expected = -2.0 * libm::log(0.5 * (libm::sqrt(0.5) + 1.0));
        assert!(close(r.value, expected, 1e-15));
        assert!(close(r.upper_bound.unwrap(), expected, 1e-15));
        assert!(close(renyi_upper(&diagonal(), 0.5).unwrap(), expected, 1e-15));
    }

    #[test]
    fn alpha_validation() {
        for bad in [0.0, -1.0, 2.0, 2.5, f64::NAN, f64::INFINITY] {
            assert!(matches!(renyi_alpha(&noisy(), bad), Err(Error::AlphaOutOfRange(_))));
            assert!(matches!(tsallis_alpha(&noisy(), bad), Err(Error::AlphaOutOfRange(_))));
            assert!(renyi_upper(&noisy(), bad).is_err());
        }
    }

    #[test]
    fn alpha_one_dispatches_to_limit() {
        let lim = limit_measure(&noisy());
        let r = renyi_alpha(&noisy(), 1.0).unwrap();
        assert_eq!(r.value, lim.value);
        assert_eq!(r.measure, MeasureId::Renyi);
        assert_eq!(r.alpha, Some(1.0));
        let t = tsallis_alpha(&noisy(), 1.0).unwrap();
        assert_eq!(t.value, lim.value);
    }

    #[test]
    fn alpha_sweep_converges_to_limit() {
        let lim = limit_measure(&noisy()).value;
        for alpha in [1.0 - 1e-4, 1.0 + 1e-4] {
            assert!(close(renyi_alpha(&noisy(), alpha).unwrap().value, lim, 1e-3));
            assert!(close(tsallis_alpha(&noisy(), alpha).unwrap().value, lim, 1e-3));
        }
    }

    #[test]
    fn limit_examples() {
        assert!(limit_measure(&independent()).value.abs() < 1e-15);
        let d = limit_measure(&diagonal());
        let expected = 0.5 * core::f64::consts::LN_2;
        assert!(close(d.value, expected, 1e-15));
        assert!(close(d.upper_bound.unwrap(), expected, 1e-15));
    }

    #[test]
    fn degenerate_target_bounds_are_zero() {
        let t = table(&[&[0.3], &[0.7]]);
        assert_eq!(renyi_upper(&t, 0.5).unwrap(), 0.0);
        assert_eq!(limit_upper(&t), 0.0);
    }

    #[test]
    fn bhm_examples() {
        assert!(bhm_distance(&independent()).abs() < 1e-15);
        // symmetric
        let t = table(&[&[0.1, 0.2, 0.05], &[0.3, 0.05, 0.3]]);
        assert!(close(bhm_distance(&t), bhm_distance(&t.transpose()), 1e-15));
    }

    #[test]
    fn measure_ids_round_trip() {
        for id in MeasureId::ALL {
            assert_eq!(id.as_str().parse::<MeasureId>().unwrap(), id);
        }
        assert!("nope".parse::<MeasureId>().is_err());
    }

    #[test]
    fn spec_requires_alpha_for_entropy_forms() {
        assert!(MeasureSpec::new(MeasureId::Renyi).evaluate(&noisy()).is_err());
        let r = MeasureSpec::with_alpha(MeasureId::Tsallis, 0.5).evaluate(&noisy()).unwrap();
        assert_eq!(r.alpha, Some(0.5));
    }
}

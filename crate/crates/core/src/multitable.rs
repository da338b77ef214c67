//! Dense joint distributions over a group of X axes and a group of Y axes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cdf::CondCdf;
use crate::error::{Error, Result};
use crate::sum;
use crate::support::{DiscreteSupport, OrderingPolicy};
use crate::table::{JointTable, EPS_NORM};

/// Default upper limit on the number of dense cells.
pub const DEFAULT_CELL_BUDGET: usize = 100_000_000;

/// Dense probability tensor `P(i_1…i_d, j_1…j_e)`.
///
/// Storage is row-major with the X axes first, so the flattened X
/// multi-index selects a contiguous block holding the Y sub-tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiTable {
    x_axes: Vec<DiscreteSupport>,
    y_axes: Vec<DiscreteSupport>,
    p: Vec<f64>,
}

fn shape(axes: &[DiscreteSupport]) -> Vec<usize> {
    axes.iter().map(DiscreteSupport::len).collect()
}

/// Row-major offset of a multi-index.
pub(crate) fn flat_offset(shape: &[usize], index: &[usize]) -> Option<usize> {
    if index.len() != shape.len() {
        return None;
    }
    let mut off = 0usize;
    for (&i, &n) in index.iter().zip(shape) {
        if i >= n {
            return None;
        }
        off = off * n + i;
    }
    Some(off)
}

/// Inverse of [`flat_offset`].
pub(crate) fn unflatten(shape: &[usize], mut off: usize, out: &mut [usize]) {
    for (slot, &n) in out.iter_mut().zip(shape).rev() {
        *slot = off % n;
        off /= n;
    }
}

impl MultiTable {
    pub fn new(p: Vec<f64>, x_axes: Vec<DiscreteSupport>, y_axes: Vec<DiscreteSupport>) -> Result<Self> {
        Self::with_budget(p, x_axes, y_axes, DEFAULT_CELL_BUDGET)
    }

    /// Like [`MultiTable::new`] but rejecting tensors with more than `budget`
    /// cells.
    pub fn with_budget(
        p: Vec<f64>,
        x_axes: Vec<DiscreteSupport>,
        y_axes: Vec<DiscreteSupport>,
        budget: usize,
    ) -> Result<Self> {
        Self::check_shape(&x_axes, &y_axes, budget)?;
        let cells: usize = x_axes.iter().chain(&y_axes).map(DiscreteSupport::len).product();
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
        Ok(Self { x_axes, y_axes, p })
    }

    /// Checks axis counts and the cell budget without allocating.
    pub fn check_shape(x_axes: &[DiscreteSupport], y_axes: &[DiscreteSupport], budget: usize) -> Result<()> {
        if x_axes.is_empty() || y_axes.is_empty() {
            return Err(Error::Shape("need at least one X axis and one Y axis".into()));
        }
        let cells: u128 = x_axes
            .iter()
            .chain(y_axes)
            .map(|a| a.len() as u128)
            .product();
        if cells > budget as u128 {
            return Err(Error::CellBudget { cells, budget });
        }
        Ok(())
    }

    /// Indexed axes of the given sizes.
    pub fn from_shape(p: Vec<f64>, x_shape: &[usize], y_shape: &[usize]) -> Result<Self> {
        if x_shape.iter().chain(y_shape).any(|&n| n == 0) {
            return Err(Error::Shape("axis of length zero".into()));
        }
        Self::new(
            p,
            x_shape.iter().map(|&n| DiscreteSupport::indexed(n)).collect(),
            y_shape.iter().map(|&n| DiscreteSupport::indexed(n)).collect(),
        )
    }

    /// One X axis and one Y axis.
    pub fn from_joint(t: &JointTable) -> Self {
        let n = t.cols();
        let mut p = alloc::vec![0.0; t.rows() * n];
        for (i, j, v) in t.entries() {
            p[i * n + j] = v;
        }
        Self {
            x_axes: alloc::vec![t.x_support().clone()],
            y_axes: alloc::vec![t.y_support().clone()],
            p,
        }
    }

    pub fn x_axes(&self) -> &[DiscreteSupport] {
        &self.x_axes
    }

    pub fn y_axes(&self) -> &[DiscreteSupport] {
        &self.y_axes
    }

    pub fn x_shape(&self) -> Vec<usize> {
        shape(&self.x_axes)
    }

    pub fn y_shape(&self) -> Vec<usize> {
        shape(&self.y_axes)
    }

    /// Number of flattened X cells.
    pub fn x_cells(&self) -> usize {
        self.x_axes.iter().map(DiscreteSupport::len).product()
    }

    /// Number of flattened Y cells.
    pub fn y_cells(&self) -> usize {
        self.y_axes.iter().map(DiscreteSupport::len).product()
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    pub fn get(&self, x: &[usize], y: &[usize]) -> Option<f64> {
        let i = flat_offset(&self.x_shape(), x)?;
        let j = flat_offset(&self.y_shape(), y)?;
        Some(self.p[i * self.y_cells() + j])
    }

    /// Bivariate table over the flattened X and Y multi-indices. Labels are
    /// the axis labels joined with `|`, in lexicographic multi-index order.
    pub fn flatten(&self) -> JointTable {
        fn joined(axes: &[DiscreteSupport]) -> DiscreteSupport {
            let shape = shape(axes);
            let cells: usize = shape.iter().product();
            let mut idx = alloc::vec![0usize; axes.len()];
            let labels = (0..cells)
                .map(|k| {
                    unflatten(&shape, k, &mut idx);
                    let parts: Vec<&str> = idx.iter().zip(axes).map(|(&i, a)| a.label(i)).collect();
                    parts.join("|")
                })
                .collect::<Vec<String>>();
            DiscreteSupport::new(labels, OrderingPolicy::AsGiven)
                .unwrap_or_else(|_| DiscreteSupport::indexed(cells))
        }
        JointTable::from_dense(&self.p, joined(&self.x_axes), joined(&self.y_axes))
            .expect("a validated tensor flattens to a valid table")
    }

    /// Reorders the X axes: new axis `k` is old axis `order[k]`.
    pub fn permute_x_axes(&self, order: &[usize]) -> Result<Self> {
        let d = self.x_axes.len();
        let mut seen = alloc::vec![false; d];
        if order.len() != d || order.iter().any(|&a| a >= d || core::mem::replace(&mut seen[a], true)) {
            return Err(Error::Shape("not a permutation of the X axes".into()));
        }
        let old_shape = self.x_shape();
        let new_axes: Vec<DiscreteSupport> = order.iter().map(|&a| self.x_axes[a].clone()).collect();
        let new_shape = shape(&new_axes);
        let n = self.y_cells();
        let mut p = alloc::vec![0.0; self.p.len()];
        let mut old_idx = alloc::vec![0usize; d];
        let mut new_idx = alloc::vec![0usize; d];
        for old in 0..self.x_cells() {
            unflatten(&old_shape, old, &mut old_idx);
            for (k, &a) in order.iter().enumerate() {
                new_idx[k] = old_idx[a];
            }
            let new = flat_offset(&new_shape, &new_idx).expect("index in range");
            p[new * n..(new + 1) * n].copy_from_slice(&self.p[old * n..(old + 1) * n]);
        }
        Ok(Self {
            x_axes: new_axes,
            y_axes: self.y_axes.clone(),
            p,
        })
    }

    /// Relabels flattened X cells: new cell `k` holds old cell `order[k]`.
    pub fn permute_x_cells(&self, order: &[usize]) -> Result<Self> {
        let m = self.x_cells();
        let mut seen = alloc::vec![false; m];
        if order.len() != m || order.iter().any(|&a| a >= m || core::mem::replace(&mut seen[a], true)) {
            return Err(Error::Shape("not a permutation of the X cells".into()));
        }
        let n = self.y_cells();
        let mut p = alloc::vec![0.0; self.p.len()];
        for (new, &old) in order.iter().enumerate() {
            p[new * n..(new + 1) * n].copy_from_slice(&self.p[old * n..(old + 1) * n]);
        }
        Ok(Self {
            x_axes: self.x_axes.clone(),
            y_axes: self.y_axes.clone(),
            p,
        })
    }
}

/// Conditional cdf tensor `F(j⃗|i⃗)` (cumulative componentwise over the Y
/// axes) together with the unconditional `F(j⃗)`, flattened lexicographically.
pub fn multi_conditional_cdf(t: &MultiTable) -> CondCdf {
    CondCdf::from_weights(&t.x_shape(), &t.y_shape(), &t.p, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdf::conditional_cdf;
    use alloc::vec;

    #[test]
    fn reduction_matches_bivariate_cdf() {
        let t = JointTable::from_matrix(&[vec![0.1, 0.0, 0.2], vec![0.05, 0.3, 0.0], vec![0.0, 0.0, 0.35]])
            .unwrap();
        let a = conditional_cdf(&t);
        let b = multi_conditional_cdf(&MultiTable::from_joint(&t));
        for (x, y) in a.values().iter().zip(b.values()) {
            assert!((x - y).abs() <= 1e-15);
        }
        assert_eq!(a.marginal_cdf(), b.marginal_cdf());
    }

    #[test]
    fn independent_y_grid_marginal_cdf() {
        // X uniform on 2, Y uniform on a 2x2 grid, independent.
        let t = MultiTable::from_shape(vec![0.125; 8], &[2], &[2, 2]).unwrap();
        let c = multi_conditional_cdf(&t);
        assert_eq!(c.marginal_cdf(), &[0.25, 0.5, 0.5, 1.0]);
        for i in 0..2 {
            assert_eq!(c.row(i), c.marginal_cdf());
        }
    }

    #[test]
    fn zero_x_cell_row_is_zero() {
        let t = MultiTable::from_shape(vec![0.5, 0.0, 0.0, 0.0, 0.25, 0.25], &[3], &[2]).unwrap();
        let c = multi_conditional_cdf(&t);
        assert_eq!(c.row(1), &[0.0, 0.0]);
        assert_eq!(c.x_marginal()[1], 0.0);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            MultiTable::from_shape(vec![0.5, 0.5], &[], &[2]),
            Err(Error::Shape(_))
        ));
        assert!(matches!(
            MultiTable::from_shape(vec![0.5, 0.4], &[1], &[2]),
            Err(Error::NotNormalized { .. })
        ));
        let axes = || vec![DiscreteSupport::indexed(100), DiscreteSupport::indexed(100)];
        assert!(matches!(
            MultiTable::with_budget(vec![], axes(), axes(), 1000),
            Err(Error::CellBudget { cells: 100_000_000, budget: 1000 })
        ));
        let huge = || vec![DiscreteSupport::indexed(1000); 2];
        assert!(matches!(
            MultiTable::check_shape(&huge(), &huge(), DEFAULT_CELL_BUDGET),
            Err(Error::CellBudget { .. })
        ));
    }

    #[test]
    fn axis_permutation_moves_cells() {
        // X axes of sizes 2 and 3, Y of size 1; p(a, b) distinct per cell.
        let w: Vec<f64> = (1..=6).map(|k| k as f64 / 21.0).collect();
        let t = MultiTable::from_shape(w, &[2, 3], &[1]).unwrap();
        let s = t.permute_x_axes(&[1, 0]).unwrap();
        assert_eq!(s.x_shape(), vec![3, 2]);
        for a in 0..2 {
            for b in 0..3 {
                assert_eq!(t.get(&[a, b], &[0]), s.get(&[b, a], &[0]));
            }
        }
        assert!(t.permute_x_axes(&[0, 0]).is_err());
    }

    #[test]
    fn flatten_joins_labels() {
        let t = MultiTable::from_shape(vec![0.25; 4], &[2], &[2]).unwrap();
        let j = t.flatten();
        assert_eq!(j.rows(), 2);
        let t = MultiTable::from_shape(vec![0.125; 8], &[2, 2], &[2]).unwrap();
        assert_eq!(t.flatten().x_support().labels()[3], "1|1");
    }
}

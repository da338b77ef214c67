//! Conditional and unconditional cumulative distributions.
//!
//! Every nonsymmetric measure is a sum over cells `(i, j)` of some function
//! of `F(j|i)` and `F(j)` weighted by `P(i)·P(j)`. [`CdfCells`] is the one
//! abstraction all of them are written against: a dense [`CondCdf`] (any
//! number of axes on either side) and a streaming walk over a sparse
//! [`JointTable`] both implement it.

use alloc::vec;
use alloc::vec::Vec;

use crate::sum::{self, CompensatedSum};
use crate::table::JointTable;

/// One `(i, j)` cell as seen by a measure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    /// `P(i)`, always > 0.
    pub p_x: f64,
    /// `P(j)`, always > 0.
    pub p_y: f64,
    /// `F(j|i)`.
    pub cond: f64,
    /// `F(j)`.
    pub marg: f64,
}

/// Source of cells for the cumulative-distribution measures.
///
/// Cells whose row has `P(i) = 0` or whose column has `P(j) = 0` carry zero
/// weight and are never visited.
pub trait CdfCells {
    fn for_each_cell<V: FnMut(Cell)>(&self, visit: V);

    /// Visits `(P(j), F(j))` for every target cell with `P(j) > 0`.
    fn for_each_target<V: FnMut(f64, f64)>(&self, visit: V);

    /// True when the target takes a single value almost surely.
    fn target_degenerate(&self) -> bool {
        let mut count = 0usize;
        self.for_each_target(|_, _| count += 1);
        count <= 1
    }
}

/// Dense conditional cdf `F(j|i)` with the marginals it was derived from.
///
/// Multi-indices on either side are flattened lexicographically (last axis
/// fastest); a bivariate table has one axis on each side.
#[derive(Debug, Clone, PartialEq)]
pub struct CondCdf {
    x_shape: Vec<usize>,
    y_shape: Vec<usize>,
    f: Vec<f64>,
    x_marginal: Vec<f64>,
    y_marginal: Vec<f64>,
    marginal_cdf: Vec<f64>,
}

/// In-place inclusive cumulative sum along every axis of a dense tensor.
pub(crate) fn cumulate_axes(data: &mut [f64], shape: &[usize]) {
    let total: usize = shape.iter().product();
    debug_assert_eq!(data.len(), total);
    let mut stride = total;
    for &len in shape {
        stride /= len;
        if len == 1 {
            continue;
        }
        let block = len * stride;
        for base in (0..total).step_by(block) {
            for offset in 0..stride {
                let mut acc = CompensatedSum::new();
                for k in 0..len {
                    let idx = base + offset + k * stride;
                    acc.add(data[idx]);
                    data[idx] = acc.value();
                }
            }
        }
    }
}

impl CondCdf {
    /// Builds the conditional cdf from dense non-negative weights laid out as
    /// X multi-index major, Y multi-index minor. All probabilities are the
    /// weights divided by `scale` (the total mass, or 1 for normalized input).
    pub(crate) fn from_weights(x_shape: &[usize], y_shape: &[usize], weights: &[f64], scale: f64) -> Self {
        let m: usize = x_shape.iter().product();
        let n: usize = y_shape.iter().product();
        debug_assert_eq!(weights.len(), m * n);

        let mut col_sums = vec![CompensatedSum::new(); n];
        let mut f = weights.to_vec();
        let mut x_marginal = Vec::with_capacity(m);
        for (i, block) in f.chunks_exact_mut(n).enumerate() {
            for (acc, &w) in col_sums.iter_mut().zip(&weights[i * n..(i + 1) * n]) {
                acc.add(w);
            }
            cumulate_axes(block, y_shape);
            let row_mass = block[n - 1];
            x_marginal.push(row_mass / scale);
            if row_mass > 0.0 {
                for v in block.iter_mut() {
                    *v /= row_mass;
                }
            } else {
                block.fill(0.0);
            }
        }
        let y_marginal: Vec<f64> = col_sums.iter().map(|s| s.value() / scale).collect();
        let mut marginal_cdf = y_marginal.clone();
        cumulate_axes(&mut marginal_cdf, y_shape);
        Self {
            x_shape: x_shape.to_vec(),
            y_shape: y_shape.to_vec(),
            f,
            x_marginal,
            y_marginal,
            marginal_cdf,
        }
    }

    pub fn rows(&self) -> usize {
        self.x_marginal.len()
    }

    pub fn cols(&self) -> usize {
        self.y_marginal.len()
    }

    pub fn x_shape(&self) -> &[usize] {
        &self.x_shape
    }

    pub fn y_shape(&self) -> &[usize] {
        &self.y_shape
    }

    /// `F(j|i)`; zero for rows with `P(i) = 0`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.f[i * self.cols() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.cols();
        &self.f[i * n..(i + 1) * n]
    }

    /// Flattened `F(j|i)` values, row-major.
    pub fn values(&self) -> &[f64] {
        &self.f
    }

    pub fn marginal_cdf(&self) -> &[f64] {
        &self.marginal_cdf
    }

    pub fn x_marginal(&self) -> &[f64] {
        &self.x_marginal
    }

    pub fn y_marginal(&self) -> &[f64] {
        &self.y_marginal
    }
}

impl CdfCells for CondCdf {
    fn for_each_cell<V: FnMut(Cell)>(&self, mut visit: V) {
        for (i, &p_x) in self.x_marginal.iter().enumerate() {
            if p_x <= 0.0 {
                continue;
            }
            let row = self.row(i);
            for (j, &p_y) in self.y_marginal.iter().enumerate() {
                if p_y > 0.0 {
                    visit(Cell {
                        p_x,
                        p_y,
                        cond: row[j],
                        marg: self.marginal_cdf[j],
                    });
                }
            }
        }
    }

    fn for_each_target<V: FnMut(f64, f64)>(&self, mut visit: V) {
        for (&p, &f) in self.y_marginal.iter().zip(&self.marginal_cdf) {
            if p > 0.0 {
                visit(p, f);
            }
        }
    }
}

impl CdfCells for JointTable {
    fn for_each_cell<V: FnMut(Cell)>(&self, mut visit: V) {
        let p_y = self.y_marginal();
        let marg = sum::cumulative(p_y);
        for (i, &p_x) in self.x_marginal().iter().enumerate() {
            if p_x <= 0.0 {
                continue;
            }
            let mut entries = self.row(i).peekable();
            let mut acc = CompensatedSum::new();
            let mut cond = 0.0;
            for j in 0..self.cols() {
                if let Some(&(col, v)) = entries.peek() {
                    if col == j {
                        acc.add(v);
                        cond = acc.value() / p_x;
                        entries.next();
                    }
                }
                if p_y[j] > 0.0 {
                    visit(Cell {
                        p_x,
                        p_y: p_y[j],
                        cond,
                        marg: marg[j],
                    });
                }
            }
        }
    }

    fn for_each_target<V: FnMut(f64, f64)>(&self, mut visit: V) {
        let p_y = self.y_marginal();
        let marg = sum::cumulative(p_y);
        for (&p, &f) in p_y.iter().zip(&marg) {
            if p > 0.0 {
                visit(p, f);
            }
        }
    }

    fn target_degenerate(&self) -> bool {
        self.is_target_degenerate()
    }
}

/// Dense `F(j|i)` and `F(j)` for a bivariate table.
pub fn conditional_cdf(t: &JointTable) -> CondCdf {
    let (m, n) = (t.rows(), t.cols());
    let mut f = vec![0.0; m * n];
    for (i, &p_x) in t.x_marginal().iter().enumerate() {
        if p_x <= 0.0 {
            continue;
        }
        let row = &mut f[i * n..(i + 1) * n];
        let mut acc = CompensatedSum::new();
        let mut cond = 0.0;
        let mut entries = t.row(i).peekable();
        for (j, slot) in row.iter_mut().enumerate() {
            if let Some(&(col, v)) = entries.peek() {
                if col == j {
                    acc.add(v);
                    cond = acc.value() / p_x;
                    entries.next();
                }
            }
            *slot = cond;
        }
    }
    CondCdf {
        x_shape: vec![m],
        y_shape: vec![n],
        f,
        x_marginal: t.x_marginal().to_vec(),
        y_marginal: t.y_marginal().to_vec(),
        marginal_cdf: sum::cumulative(t.y_marginal()),
    }
}

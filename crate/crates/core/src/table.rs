//! Probability vectors and bivariate joint tables.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sum::{self, CompensatedSum};
use crate::support::{DiscreteSupport, OrderingPolicy};

/// Tolerance on the total mass of validated probability input.
pub const EPS_NORM: f64 = 1e-9;

fn check_entry(index: usize, value: f64) -> Result<()> {
    if value.is_finite() && value >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidProbability { index, value })
    }
}

fn check_total(total: f64) -> Result<()> {
    if (total - 1.0).abs() <= EPS_NORM {
        Ok(())
    } else {
        Err(Error::NotNormalized {
            sum: total,
            tolerance: EPS_NORM,
        })
    }
}

/// Distribution of a single discrete variable.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbVector {
    p: Vec<f64>,
    support: DiscreteSupport,
}

impl ProbVector {
    pub fn new(p: Vec<f64>, support: DiscreteSupport) -> Result<Self> {
        if p.len() != support.len() {
            return Err(Error::Shape(format!(
                "{} probabilities for a support of {} labels",
                p.len(),
                support.len()
            )));
        }
        for (i, &v) in p.iter().enumerate() {
            check_entry(i, v)?;
        }
        check_total(sum::sum(p.iter().copied()))?;
        Ok(Self { p, support })
    }

    pub fn uniform(support: DiscreteSupport) -> Self {
        let n = support.len();
        Self {
            p: vec![1.0 / n as f64; n],
            support,
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.p
    }

    pub fn support(&self) -> &DiscreteSupport {
        &self.support
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    /// Cumulative distribution along the support order.
    pub fn cdf(&self) -> Vec<f64> {
        sum::cumulative(&self.p)
    }
}

/// Joint distribution `P(i, j)` of a conditioning variable X (rows) and a
/// target variable Y (columns).
///
/// Only strictly positive cells are stored, row by row with ascending column
/// index, so tables with millions of mostly-empty cells stay cheap.
#[derive(Debug, Clone, PartialEq)]
pub struct JointTable {
    x_support: DiscreteSupport,
    y_support: DiscreteSupport,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    x_marginal: Vec<f64>,
    y_marginal: Vec<f64>,
}

impl JointTable {
    /// Builds a table from a dense row-major matrix of probabilities.
    pub fn from_dense(p: &[f64], x_support: DiscreteSupport, y_support: DiscreteSupport) -> Result<Self> {
        let (m, n) = (x_support.len(), y_support.len());
        if p.len() != m * n {
            return Err(Error::Shape(format!(
                "{} cells for a {m}x{n} table",
                p.len()
            )));
        }
        for (k, &v) in p.iter().enumerate() {
            check_entry(k, v)?;
        }
        let entries = p
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > 0.0)
            .map(|(k, &v)| (k / n, k % n, v));
        let table = Self::assemble(x_support, y_support, entries)?;
        check_total(table.total())?;
        Ok(table)
    }

    /// Builds a table from nested rows of probabilities.
    pub fn from_rows(rows: &[Vec<f64>], x_support: DiscreteSupport, y_support: DiscreteSupport) -> Result<Self> {
        let n = y_support.len();
        if rows.len() != x_support.len() || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "rows do not form a {}x{n} matrix",
                x_support.len()
            )));
        }
        let flat: Vec<f64> = rows.iter().flatten().copied().collect();
        Self::from_dense(&flat, x_support, y_support)
    }

    /// Convenience constructor with indexed supports `0..m`, `0..n`.
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(Error::EmptyData);
        }
        Self::from_rows(rows, DiscreteSupport::indexed(m), DiscreteSupport::indexed(n))
    }

    /// Builds a table from `(row, column, probability)` triples. Repeated
    /// cells are added together.
    pub fn from_entries<I>(x_support: DiscreteSupport, y_support: DiscreteSupport, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut cells = BTreeMap::new();
        for (k, (i, j, v)) in entries.into_iter().enumerate() {
            check_entry(k, v)?;
            if i >= x_support.len() || j >= y_support.len() {
                return Err(Error::Shape(format!("cell ({i}, {j}) outside the table")));
            }
            if v > 0.0 {
                cells.entry((i, j)).or_insert_with(CompensatedSum::new).add(v);
            }
        }
        let table = Self::assemble(
            x_support,
            y_support,
            cells.into_iter().map(|((i, j), s)| (i, j, s.value())),
        )?;
        check_total(table.total())?;
        Ok(table)
    }

    /// Empirical plug-in table from a dense matrix of counts.
    pub fn from_counts(counts: &[Vec<u64>], x_support: DiscreteSupport, y_support: DiscreteSupport) -> Result<Self> {
        let n = y_support.len();
        if counts.len() != x_support.len() || counts.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!(
                "counts do not form a {}x{n} matrix",
                x_support.len()
            )));
        }
        let entries = counts
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &c)| (i, j, c)));
        Self::from_count_entries(x_support, y_support, entries)
    }

    /// Empirical plug-in table from sparse `(row, column, count)` triples.
    pub fn from_count_entries<I>(x_support: DiscreteSupport, y_support: DiscreteSupport, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        let mut cells: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (i, j, c) in entries {
            if i >= x_support.len() || j >= y_support.len() {
                return Err(Error::Shape(format!("cell ({i}, {j}) outside the table")));
            }
            if c > 0 {
                *cells.entry((i, j)).or_default() += c;
            }
        }
        let total: u64 = cells.values().sum();
        if total == 0 {
            return Err(Error::EmptyData);
        }
        let scale = total as f64;
        Self::assemble(
            x_support,
            y_support,
            cells.into_iter().map(|((i, j), c)| (i, j, c as f64 / scale)),
        )
    }

    /// Table of co-occurrence frequencies of `(x, y)` label pairs.
    pub fn from_samples<S: AsRef<str>>(records: &[(S, S)], policy: OrderingPolicy) -> Result<Self> {
        Ok(Samples::from_records(records, policy)?.to_table())
    }

    /// `entries` must be sorted by `(row, column)` without repeats.
    fn assemble<I>(x_support: DiscreteSupport, y_support: DiscreteSupport, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let (m, n) = (x_support.len(), y_support.len());
        let mut row_ptr = vec![0usize; m + 1];
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut row_sums = vec![CompensatedSum::new(); m];
        let mut col_sums = vec![CompensatedSum::new(); n];
        for (i, j, v) in entries {
            row_ptr[i + 1] += 1;
            cols.push(j);
            vals.push(v);
            row_sums[i].add(v);
            col_sums[j].add(v);
        }
        for i in 0..m {
            row_ptr[i + 1] += row_ptr[i];
        }
        if vals.is_empty() {
            return Err(Error::EmptyData);
        }
        Ok(Self {
            x_support,
            y_support,
            row_ptr,
            cols,
            vals,
            x_marginal: row_sums.iter().map(CompensatedSum::value).collect(),
            y_marginal: col_sums.iter().map(CompensatedSum::value).collect(),
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

    /// `P(i)` for every row.
    pub fn x_marginal(&self) -> &[f64] {
        &self.x_marginal
    }

    /// `P(j)` for every column.
    pub fn y_marginal(&self) -> &[f64] {
        &self.y_marginal
    }

    pub fn x_distribution(&self) -> ProbVector {
        ProbVector {
            p: self.x_marginal.clone(),
            support: self.x_support.clone(),
        }
    }

    pub fn y_distribution(&self) -> ProbVector {
        ProbVector {
            p: self.y_marginal.clone(),
            support: self.y_support.clone(),
        }
    }

    /// Non-zero cells of row `i` as `(column, probability)`, ascending column.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()]
            .iter()
            .copied()
            .zip(self.vals[range].iter().copied())
    }

    /// All non-zero cells as `(row, column, probability)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.rows()).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn nonzero_cells(&self) -> usize {
        self.vals.len()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[range.clone()].binary_search(&j) {
            Ok(k) => self.vals[range.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn total(&self) -> f64 {
        sum::sum(self.x_marginal.iter().copied())
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let mut out = vec![vec![0.0; self.cols()]; self.rows()];
        for (i, j, v) in self.entries() {
            out[i][j] = v;
        }
        out
    }

    /// Same distribution with the roles of X and Y swapped.
    pub fn transpose(&self) -> Self {
        let mut entries: Vec<(usize, usize, f64)> = self.entries().map(|(i, j, v)| (j, i, v)).collect();
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        Self::assemble(self.y_support.clone(), self.x_support.clone(), entries)
            .expect("transpose of a non-empty table is non-empty")
    }

    /// Reorders rows so that new row `k` is old row `order[k]`.
    pub fn permute_rows(&self, order: &[usize]) -> Result<Self> {
        let x_support = self.x_support.reordered(order)?;
        let entries: Vec<_> = order
            .iter()
            .enumerate()
            .flat_map(|(new, &old)| self.row(old).map(move |(j, v)| (new, j, v)))
            .collect();
        Self::assemble(x_support, self.y_support.clone(), entries)
    }

    /// Reorders columns so that new column `k` is old column `order[k]`.
    pub fn permute_cols(&self, order: &[usize]) -> Result<Self> {
        let y_support = self.y_support.reordered(order)?;
        let mut inverse = vec![0usize; order.len()];
        for (new, &old) in order.iter().enumerate() {
            inverse[old] = new;
        }
        let mut entries: Vec<_> = self.entries().map(|(i, j, v)| (i, inverse[j], v)).collect();
        entries.sort_unstable_by_key(|&(i, j, _)| (i, j));
        Self::assemble(self.x_support.clone(), y_support, entries)
    }

    /// True when Y takes at most one value with positive probability.
    pub fn is_target_degenerate(&self) -> bool {
        self.y_marginal.iter().filter(|&&p| p > 0.0).count() <= 1
    }
}

/// Raw paired observations encoded as indices into two supports.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    x_support: DiscreteSupport,
    y_support: DiscreteSupport,
    x: Vec<usize>,
    y: Vec<usize>,
}

impl Samples {
    pub fn from_records<S: AsRef<str>>(records: &[(S, S)], policy: OrderingPolicy) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::EmptyData);
        }
        let x_support = DiscreteSupport::from_observed(records.iter().map(|r| r.0.as_ref()), policy)?;
        let y_support = DiscreteSupport::from_observed(records.iter().map(|r| r.1.as_ref()), policy)?;
        let (x, y) = {
            let xi = x_support.index_map();
            let yi = y_support.index_map();
            records
                .iter()
                .map(|(a, b)| (xi[a.as_ref()], yi[b.as_ref()]))
                .unzip()
        };
        Ok(Self {
            x_support,
            y_support,
            x,
            y,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x_indices(&self) -> &[usize] {
        &self.x
    }

    pub fn y_indices(&self) -> &[usize] {
        &self.y
    }

    pub fn x_support(&self) -> &DiscreteSupport {
        &self.x_support
    }

    pub fn y_support(&self) -> &DiscreteSupport {
        &self.y_support
    }

    pub fn to_table(&self) -> JointTable {
        self.table_with_y(&self.y)
    }

    /// Contingency table pairing the stored X column with an alternative Y
    /// column (a permutation of the original, for instance).
    pub fn table_with_y(&self, y: &[usize]) -> JointTable {
        debug_assert_eq!(y.len(), self.x.len());
        JointTable::from_count_entries(
            self.x_support.clone(),
            self.y_support.clone(),
            self.x.iter().zip(y).map(|(&i, &j)| (i, j, 1)),
        )
        .expect("samples are non-empty and indices are in range")
    }
}

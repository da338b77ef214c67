//! Readers for the on-disk formats: sample CSV, sparse table CSV, group
//! tensor CSV, triple CSV and dense matrix CSV.

use std::collections::BTreeMap;
use std::fs::File;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use depmeter_core::{
    DiscreteSupport, Error, JointTable, MultiTable, OrderingPolicy, Samples, TripleTable, EPS_NORM,
};
use serde::Deserialize;

use crate::error::{CliError, CliResult};
use crate::output::fmt_g17;

/// How the weight column is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum WeightKind {
    /// Probabilities if they sum to 1, otherwise integer counts.
    #[default]
    Auto,
    Counts,
    Probs,
}

fn schema(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Schema {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn reader(path: &Path, headers: bool) -> CliResult<csv::Reader<File>> {
    let file = File::open(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(headers)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(file))
}

fn records(path: &Path, headers: bool) -> CliResult<(Option<csv::StringRecord>, Vec<csv::StringRecord>)> {
    let csv_err = |source| CliError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut r = reader(path, headers)?;
    let header = if headers { Some(r.headers().map_err(csv_err)?.clone()) } else { None };
    let rows = r.records().collect::<Result<Vec<_>, _>>().map_err(csv_err)?;
    Ok((header, rows))
}

fn column(path: &Path, header: &csv::StringRecord, name: &str) -> CliResult<usize> {
    header
        .iter()
        .position(|h| h == name)
        .ok_or_else(|| schema(path, format!("no column named `{name}`")))
}

fn parse_weight(path: &Path, line: usize, field: &str) -> CliResult<f64> {
    let w: f64 = field
        .parse()
        .map_err(|_| schema(path, format!("record {line}: weight `{field}` is not a number")))?;
    if !(w.is_finite() && w >= 0.0) {
        return Err(schema(path, format!("record {line}: weight {field} must be finite and non-negative")));
    }
    Ok(w)
}

/// Labelled cells with weights, before supports are fixed.
struct Weighted {
    labels: Vec<Vec<String>>,
    weights: Vec<f64>,
}

impl Weighted {
    fn supports(&self, policy: OrderingPolicy) -> CliResult<Vec<DiscreteSupport>> {
        let axes = self.labels.first().map_or(0, Vec::len);
        (0..axes)
            .map(|a| Ok(DiscreteSupport::from_observed(self.labels.iter().map(|r| r[a].as_str()), policy)?))
            .collect()
    }

    /// Sums repeated cells, then turns the totals into probabilities.
    fn cells(&self, supports: &[DiscreteSupport], kind: WeightKind, path: &Path) -> CliResult<BTreeMap<Vec<usize>, f64>> {
        let maps: Vec<BTreeMap<&str, usize>> = supports.iter().map(DiscreteSupport::index_map).collect();
        let mut cells: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
        for (row, &w) in self.labels.iter().zip(&self.weights) {
            let key: Vec<usize> = row.iter().zip(&maps).map(|(l, m)| m[l.as_str()]).collect();
            *cells.entry(key).or_default() += w;
        }
        let scale = normalizer(&self.weights, kind, path)?;
        cells.values_mut().for_each(|v| *v /= scale);
        Ok(cells)
    }
}

/// Divisor that turns the weights into probabilities: 1 for probabilities,
/// the total for counts.
fn normalizer(weights: &[f64], kind: WeightKind, path: &Path) -> CliResult<f64> {
    let total: f64 = weights.iter().sum();
    let integral = weights.iter().all(|w| w.fract() == 0.0);
    let counts = match kind {
        WeightKind::Probs => false,
        WeightKind::Counts => {
            if !integral {
                return Err(schema(path, "counts must be whole numbers"));
            }
            true
        }
        WeightKind::Auto => (total - 1.0).abs() > EPS_NORM && integral,
    };
    if counts {
        if total <= 0.0 {
            return Err(Error::EmptyData.into());
        }
        Ok(total)
    } else {
        if (total - 1.0).abs() > EPS_NORM {
            return Err(Error::NotNormalized {
                sum: total,
                tolerance: EPS_NORM,
            }
            .into());
        }
        Ok(1.0)
    }
}

/// Raw observations: one record per row, labels taken verbatim from the
/// selected columns. Rows with an empty selected field are dropped; the
/// number dropped is returned alongside.
pub fn read_samples(
    path: &Path,
    x_col: Option<&str>,
    y_col: Option<&str>,
    policy: OrderingPolicy,
) -> CliResult<(Samples, usize)> {
    let (header, rows) = records(path, true)?;
    let header = header.expect("headers requested");
    if header.len() < 2 {
        return Err(schema(path, "sample CSV needs at least two columns"));
    }
    let xi = x_col.map_or(Ok(0), |c| column(path, &header, c))?;
    let yi = y_col.map_or(Ok(1), |c| column(path, &header, c))?;
    let mut pairs = Vec::with_capacity(rows.len());
    let mut dropped = 0;
    for row in &rows {
        match (row.get(xi), row.get(yi)) {
            (Some(x), Some(y)) if !x.is_empty() && !y.is_empty() => pairs.push((x.to_string(), y.to_string())),
            _ => dropped += 1,
        }
    }
    if pairs.is_empty() {
        return Err(Error::EmptyData.into());
    }
    Ok((Samples::from_records(&pairs, policy)?, dropped))
}

/// Sparse `i_label,j_label,weight` table. A first row whose weight field is
/// not numeric is taken as a header.
pub fn read_table(path: &Path, policy: OrderingPolicy, kind: WeightKind) -> CliResult<JointTable> {
    let (_, rows) = records(path, false)?;
    let mut body = rows.as_slice();
    if let Some(first) = body.first() {
        if first.len() == 3 && first[2].parse::<f64>().is_err() {
            body = &body[1..];
        }
    }
    let mut w = Weighted {
        labels: Vec::with_capacity(body.len()),
        weights: Vec::with_capacity(body.len()),
    };
    for (line, row) in body.iter().enumerate() {
        if row.len() != 3 {
            return Err(schema(path, format!("record {}: expected 3 fields, found {}", line + 1, row.len())));
        }
        w.labels.push(vec![row[0].to_string(), row[1].to_string()]);
        w.weights.push(parse_weight(path, line + 1, &row[2])?);
    }
    if w.labels.is_empty() {
        return Err(Error::EmptyData.into());
    }
    let supports = w.supports(policy)?;
    let cells = w.cells(&supports, kind, path)?;
    let [xs, ys]: [DiscreteSupport; 2] = supports.try_into().expect("two label columns");
    Ok(JointTable::from_entries(xs, ys, cells.into_iter().map(|(k, v)| (k[0], k[1], v)))?)
}

fn read_columns(path: &Path, names: &[&str], weight_col: &str) -> CliResult<Weighted> {
    let (header, rows) = records(path, true)?;
    let header = header.expect("headers requested");
    let idx: Vec<usize> = names.iter().map(|n| column(path, &header, n)).collect::<CliResult<_>>()?;
    let wi = column(path, &header, weight_col)?;
    let mut w = Weighted {
        labels: Vec::with_capacity(rows.len()),
        weights: Vec::with_capacity(rows.len()),
    };
    for (line, row) in rows.iter().enumerate() {
        w.labels.push(idx.iter().map(|&c| row[c].to_string()).collect());
        w.weights.push(parse_weight(path, line + 1, &row[wi])?);
    }
    if w.labels.is_empty() {
        return Err(Error::EmptyData.into());
    }
    Ok(w)
}

/// Axis grouping of a tensor CSV, as stored in a JSON header file.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxesSpec {
    pub x: Vec<String>,
    pub y: Vec<String>,
}

impl AxesSpec {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.to_path_buf(),
            source,
        })
    }
}

/// Group tensor in long form: `x1,…,xd,y1,…,ye,weight`.
pub fn read_multi(
    path: &Path,
    axes: &AxesSpec,
    weight_col: &str,
    policy: OrderingPolicy,
    kind: WeightKind,
) -> CliResult<MultiTable> {
    if axes.x.is_empty() || axes.y.is_empty() {
        return Err(CliError::Usage("both variable groups need at least one column".into()));
    }
    let names: Vec<&str> = axes.x.iter().chain(&axes.y).map(String::as_str).collect();
    let w = read_columns(path, &names, weight_col)?;
    let supports = w.supports(policy)?;
    let (xs, ys) = supports.split_at(axes.x.len());
    MultiTable::check_shape(xs, ys, depmeter_core::DEFAULT_CELL_BUDGET)?;
    let shape: Vec<usize> = supports.iter().map(DiscreteSupport::len).collect();
    let mut p = vec![0.0; shape.iter().product()];
    for (key, v) in w.cells(&supports, kind, path)? {
        let off = key.iter().zip(&shape).fold(0, |acc, (&i, &n)| acc * n + i);
        p[off] = v;
    }
    Ok(MultiTable::new(p, xs.to_vec(), ys.to_vec())?)
}

/// `x,y,z,weight` rows with selectable column names.
pub fn read_triple(
    path: &Path,
    cols: [&str; 3],
    weight_col: &str,
    policy: OrderingPolicy,
    kind: WeightKind,
) -> CliResult<TripleTable> {
    let w = read_columns(path, &cols, weight_col)?;
    let supports = w.supports(policy)?;
    let (m, n, l) = (supports[0].len(), supports[1].len(), supports[2].len());
    let mut p = vec![0.0; m * n * l];
    for (key, v) in w.cells(&supports, kind, path)? {
        p[(key[0] * n + key[1]) * l + key[2]] = v;
    }
    let [xs, ys, zs]: [DiscreteSupport; 3] = supports.try_into().expect("three label columns");
    Ok(TripleTable::new(p, xs, ys, zs)?)
}

/// Headerless numeric CSV read as rows.
pub fn read_matrix(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let (_, rows) = records(path, false)?;
    let mut out = Vec::with_capacity(rows.len());
    for (line, row) in rows.iter().enumerate() {
        let values = row
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| schema(path, format!("record {}: `{f}` is not a number", line + 1)))
            })
            .collect::<CliResult<Vec<f64>>>()?;
        out.push(values);
    }
    if out.is_empty() {
        return Err(Error::EmptyData.into());
    }
    if out.iter().any(|r| r.len() != out[0].len()) {
        return Err(schema(path, "rows have different lengths"));
    }
    Ok(out)
}

/// A probability vector stored as one row or one column.
pub fn read_vector(path: &Path) -> CliResult<Vec<f64>> {
    let m = read_matrix(path)?;
    if m.len() == 1 || m[0].len() == 1 {
        Ok(m.into_iter().flatten().collect())
    } else {
        Err(schema(path, "expected a single row or a single column"))
    }
}

/// Sparse CSV of the positive cells of `t`, readable by [`read_table`].
pub fn table_csv(t: &JointTable) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["i_label", "j_label", "weight"]).expect("writing to memory");
    for (i, j, p) in t.entries() {
        w.write_record([t.x_support().label(i), t.y_support().label(j), &fmt_g17(p)])
            .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV output is UTF-8")
}

pub fn write_file(path: PathBuf, contents: &str) -> CliResult<()> {
    std::fs::write(&path, contents).map_err(|source| CliError::Write { path, source })
}

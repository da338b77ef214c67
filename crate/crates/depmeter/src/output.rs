//! Report rendering in the three output formats.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Csv,
    Json,
}

/// Formats like C's `%.17g`: 17 significant digits, trailing zeros
/// trimmed, exponent notation outside `[1e-4, 1e17)`.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if (-4..17).contains(&exp) {
        if exp < 0 {
            out.push_str("0.");
            out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
            out.push_str(&digits);
        } else {
            let split = exp as usize + 1;
            out.push_str(&digits[..split]);
            out.push('.');
            out.push_str(&digits[split..]);
        }
        trim_fraction(&mut out);
    } else {
        out.push_str(&digits[..1]);
        out.push('.');
        out.push_str(&digits[1..]);
        trim_fraction(&mut out);
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    out
}

fn trim_fraction(s: &mut String) {
    if s.contains('.') {
        let keep = s.trim_end_matches('0').trim_end_matches('.').len();
        s.truncate(keep);
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Text(String),
    Num(f64),
    Int(u64),
    Bool(bool),
    Missing,
}

impl Field {
    fn render(&self) -> String {
        match self {
            Field::Text(s) => s.clone(),
            Field::Num(x) => fmt_g17(*x),
            Field::Int(v) => v.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Missing => String::new(),
        }
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Num(x)
    }
}

impl From<Option<f64>> for Field {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Field::Missing, Field::Num)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as u64)
    }
}

impl From<u64> for Field {
    fn from(v: u64) -> Self {
        Field::Int(v)
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Field::Text(t) => s.serialize_str(t),
            Field::Num(x) if x.is_finite() => {
                let raw = RawValue::from_string(fmt_g17(*x)).map_err(serde::ser::Error::custom)?;
                raw.serialize(s)
            }
            Field::Num(_) | Field::Missing => s.serialize_none(),
            Field::Int(v) => s.serialize_u64(*v),
            Field::Bool(b) => s.serialize_bool(*b),
        }
    }
}

/// A rectangular result plus optional summary entries.
#[derive(Debug, Clone, Default)]
pub struct Report {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Field>>,
    summary: Vec<(&'static str, Field)>,
}

struct JsonRow<'a> {
    columns: &'a [&'static str],
    row: &'a [Field],
}

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let present = self.row.iter().filter(|f| **f != Field::Missing).count();
        let mut map = s.serialize_map(Some(present))?;
        for (name, field) in self.columns.iter().zip(self.row) {
            if *field != Field::Missing {
                map.serialize_entry(name, field)?;
            }
        }
        map.end()
    }
}

struct JsonRows<'a>(&'a Report);

impl Serialize for JsonRows<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.rows.len()))?;
        for row in &self.0.rows {
            seq.serialize_element(&JsonRow {
                columns: &self.0.columns,
                row,
            })?;
        }
        seq.end()
    }
}

struct JsonSummary<'a>(&'a [(&'static str, Field)]);

impl Serialize for JsonSummary<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

impl Report {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Self {
            columns,
            ..Self::default()
        }
    }

    pub fn push(&mut self, row: Vec<Field>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &'static str, value: impl Into<Field>) {
        self.summary.push((key, value.into()));
    }

    pub fn rows(&self) -> &[Vec<Field>] {
        &self.rows
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Table => self.render_table(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Field::render).collect()).collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(c, name)| cells.iter().map(|r| r[c].len()).chain([name.len()]).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        let line = |out: &mut String, fields: &mut dyn Iterator<Item = &str>| {
            let parts: Vec<String> = fields.zip(&widths).map(|(f, w)| format!("{f:<w$}")).collect();
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        line(&mut out, &mut self.columns.iter().copied());
        for row in &cells {
            line(&mut out, &mut row.iter().map(String::as_str));
        }
        if !self.summary.is_empty() {
            out.push('\n');
            for (k, v) in &self.summary {
                let _ = writeln!(out, "{k}: {}", v.render());
            }
        }
        out
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("writing to memory");
        for row in &self.rows {
            w.write_record(row.iter().map(Field::render)).expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flushing to memory")).expect("CSV output is UTF-8")
    }

    fn render_json(&self) -> String {
        let body = if self.summary.is_empty() {
            serde_json::to_string_pretty(&JsonRows(self))
        } else {
            #[derive(Serialize)]
            struct Wrapped<'a> {
                results: JsonRows<'a>,
                summary: JsonSummary<'a>,
            }
            serde_json::to_string_pretty(&Wrapped {
                results: JsonRows(self),
                summary: JsonSummary(&self.summary),
            })
        };
        let mut s = body.expect("report serializes");
        s.push('\n');
        s
    }
}

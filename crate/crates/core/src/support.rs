//! Ordered category labels for one discrete variable.
//!
//! Every cumulative quantity in this crate is taken along the order stored in
//! a [`DiscreteSupport`], so the order is part of the data, not a display
//! detail.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// How labels observed in raw data are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderingPolicy {
    /// Labels parse as finite reals and are sorted by value.
    #[default]
    NumericAscending,
    /// Byte-wise lexicographic order of the label strings.
    Lexicographic,
    /// Order of first appearance (or the order supplied by the caller).
    AsGiven,
}

impl OrderingPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderingPolicy::NumericAscending => "numeric",
            OrderingPolicy::Lexicographic => "lex",
            OrderingPolicy::AsGiven => "given",
        }
    }
}

impl fmt::Display for OrderingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for OrderingPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "numeric" => Ok(OrderingPolicy::NumericAscending),
            "lex" => Ok(OrderingPolicy::Lexicographic),
            "given" => Ok(OrderingPolicy::AsGiven),
            other => Err(Error::Ordering(format!("unknown ordering policy `{other}`"))),
        }
    }
}

fn parse_label(label: &str) -> Result<f64> {
    match label.trim().parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(Error::Ordering(format!(
            "label `{label}` is not a finite number"
        ))),
    }
}

/// Ordered, duplicate-free list of category labels.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSupport {
    labels: Vec<String>,
    policy: OrderingPolicy,
}

impl DiscreteSupport {
    /// Wraps labels that are already in their final order, checking the
    /// invariants of `policy`.
    pub fn new(labels: Vec<String>, policy: OrderingPolicy) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::EmptyData);
        }
        let mut seen = BTreeMap::new();
        for label in &labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        match policy {
            OrderingPolicy::NumericAscending => {
                let mut prev: Option<f64> = None;
                for label in &labels {
                    let v = parse_label(label)?;
                    if let Some(p) = prev {
                        if v <= p {
                            return Err(Error::Ordering(format!(
                                "numeric labels are not strictly increasing at `{label}`"
                            )));
                        }
                    }
                    prev = Some(v);
                }
            }
            OrderingPolicy::Lexicographic => {
                if labels.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Ordering("labels are not in lexicographic order".into()));
                }
            }
            OrderingPolicy::AsGiven => {}
        }
        Ok(Self { labels, policy })
    }

    /// Builds a support from labels seen in data (duplicates allowed), ordered
    /// according to `policy`. `AsGiven` keeps first-appearance order.
    pub fn from_observed<'a, I>(observed: I, policy: OrderingPolicy) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut first_seen: Vec<&str> = Vec::new();
        let mut seen = BTreeMap::new();
        for label in observed {
            if seen.insert(label, ()).is_none() {
                first_seen.push(label);
            }
        }
        if first_seen.is_empty() {
            return Err(Error::EmptyData);
        }
        let labels: Vec<String> = match policy {
            OrderingPolicy::AsGiven => first_seen.iter().map(|s| s.to_string()).collect(),
            OrderingPolicy::Lexicographic => {
                let mut v: Vec<&str> = first_seen;
                v.sort_unstable();
                v.iter().map(|s| s.to_string()).collect()
            }
            OrderingPolicy::NumericAscending => {
                let mut keyed = first_seen
                    .iter()
                    .map(|s| parse_label(s).map(|v| (v, *s)))
                    .collect::<Result<Vec<_>>>()?;
                keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
                if let Some(w) = keyed.windows(2).find(|w| w[0].0 == w[1].0) {
                    return Err(Error::Ordering(format!(
                        "labels `{}` and `{}` have the same numeric value",
                        w[0].1, w[1].1
                    )));
                }
                keyed.iter().map(|(_, s)| s.to_string()).collect()
            }
        };
        Ok(Self { labels, policy })
    }

    /// Numeric support `0, 1, …, n-1`.
    pub fn indexed(n: usize) -> Self {
        assert!(n >= 1, "support needs at least one label");
        Self {
            labels: (0..n).map(|i| i.to_string()).collect(),
            policy: OrderingPolicy::NumericAscending,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn policy(&self) -> OrderingPolicy {
        self.policy
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Lookup table from label to position.
    pub fn index_map(&self) -> BTreeMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }

    /// Reorders the labels so that new position `k` holds old label `order[k]`.
    /// The result uses the as-given policy.
    pub fn reordered(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len() {
            return Err(Error::Shape(format!(
                "permutation of length {} for support of length {}",
                order.len(),
                self.len()
            )));
        }
        let labels = order
            .iter()
            .map(|&i| {
                self.labels
                    .get(i)
                    .cloned()
                    .ok_or_else(|| Error::Shape(format!("index {i} out of range")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(labels, OrderingPolicy::AsGiven)
    }
}

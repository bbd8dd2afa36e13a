//! A000533, A261544 and the co-divisor family `s(k, r)`, with table
//! reproduction and OEIS b-file export.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::factor::{FactorError, Factorization, Factorizer};
use crate::natural::Natural;
use crate::published::{published_table, PublishedRow};
use crate::repetition::{co_divisor, DigitGuard, RepetitionError};

/// A sequence that can be indexed and exported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceId {
    /// `a(0) = 1`, `a(n) = 10^n + 1`; indexed from 0.
    A000533,
    /// `b(n) = sum_{j=0}^{n} 1000^j`; indexed from 0.
    A261544,
    /// `r -> s(k, r)` for a fixed length `k`; indexed by `r` from 1.
    FixedLength(usize),
    /// `k -> s(k, r)` for a fixed replication `r`; indexed by `k` from 1.
    FixedReplication(usize),
}

impl SequenceId {
    /// First valid index.
    pub fn offset(self) -> usize {
        match self {
            SequenceId::A000533 | SequenceId::A261544 => 0,
            SequenceId::FixedLength(_) | SequenceId::FixedReplication(_) => 1,
        }
    }
}

impl fmt::Display for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceId::A000533 => f.write_str("A000533"),
            SequenceId::A261544 => f.write_str("A261544"),
            SequenceId::FixedLength(k) => write!(f, "s:k={k}"),
            SequenceId::FixedReplication(r) => write!(f, "s:r={r}"),
        }
    }
}

impl FromStr for SequenceId {
    type Err = SequenceError;

    /// Accepts `A000533`, `A261544`, `s:k=<k>` and `s:r=<r>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || SequenceError::UnknownSequence(s.to_string());
        match s {
            "A000533" => Ok(SequenceId::A000533),
            "A261544" => Ok(SequenceId::A261544),
            _ => {
                let rest = s.strip_prefix("s:").ok_or_else(unknown)?;
                let (param, value) = rest.split_once('=').ok_or_else(unknown)?;
                let value: usize = value.parse().map_err(|_| unknown())?;
                if value == 0 {
                    return Err(unknown());
                }
                match param {
                    "k" => Ok(SequenceId::FixedLength(value)),
                    "r" => Ok(SequenceId::FixedReplication(value)),
                    _ => Err(unknown()),
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SequenceError {
    #[error("unknown sequence {0:?} (expected A000533, A261544, s:k=<k> or s:r=<r>)")]
    UnknownSequence(String),
    #[error("index {index} is below the offset {offset} of {id}")]
    IndexBelowOffset {
        id: SequenceId,
        index: usize,
        offset: usize,
    },
    #[error("no such table {0} (expected 1, 2 or 3)")]
    UnknownTable(u8),
    #[error(transparent)]
    Repetition(#[from] RepetitionError),
    #[error(transparent)]
    Factor(#[from] FactorError),
    #[error(
        "factorization of row k={k}, r={r} did not complete within the budget ({factorization})"
    )]
    Incomplete {
        k: usize,
        r: usize,
        factorization: Factorization,
    },
}

fn guard_digits(digits: Option<usize>, guard: DigitGuard) -> Result<(), RepetitionError> {
    match digits {
        Some(d) if d <= guard.max_digits() => Ok(()),
        _ => Err(RepetitionError::LimitExceeded {
            digits,
            limit: guard.max_digits(),
        }),
    }
}

/// `a(0) = 1`, `a(n) = 10^n + 1`.
pub fn a_term(n: usize, guard: DigitGuard) -> Result<Natural, RepetitionError> {
    if n == 0 {
        return Ok(Natural::one());
    }
    guard_digits(n.checked_add(1), guard)?;
    Ok(Natural::pow10(n) + Natural::one())
}

/// `b(n) = 1 + 1000 + ... + 1000^n`.
pub fn b_term(n: usize, guard: DigitGuard) -> Result<Natural, RepetitionError> {
    guard_digits(n.checked_mul(3).and_then(|d| d.checked_add(1)), guard)?;
    let thousand = Natural::from(1000u32);
    Ok((0..n).fold(Natural::one(), |acc, _| acc * &thousand + Natural::one()))
}

/// `s(k, r)`, the co-divisor of a `k`-digit generator replicated `r` times.
pub fn s_term(k: usize, r: usize, guard: DigitGuard) -> Result<Natural, RepetitionError> {
    co_divisor(k, r, guard).map(|c| c.into_value())
}

/// The `index`-th term of `id`.
pub fn term(id: SequenceId, index: usize, guard: DigitGuard) -> Result<Natural, SequenceError> {
    if index < id.offset() {
        return Err(SequenceError::IndexBelowOffset {
            id,
            index,
            offset: id.offset(),
        });
    }
    let value = match id {
        SequenceId::A000533 => a_term(index, guard)?,
        SequenceId::A261544 => b_term(index, guard)?,
        SequenceId::FixedLength(k) => s_term(k, index, guard)?,
        SequenceId::FixedReplication(r) => s_term(index, r, guard)?,
    };
    Ok(value)
}

/// OEIS b-file text: one `index value` line per index, ascending.
/// An empty range gives an empty string.
pub fn export_bfile(
    id: SequenceId,
    range: RangeInclusive<usize>,
    guard: DigitGuard,
) -> Result<String, SequenceError> {
    let mut out = String::new();
    for index in range {
        let value = term(id, index, guard)?;
        out.push_str(&format!("{index} {value}\n"));
    }
    Ok(out)
}

/// One reproduced table row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub k: usize,
    pub r: usize,
    pub value: Natural,
    pub factorization: Factorization,
    /// Set when the published row disagrees with the verified factorization.
    pub paper_discrepancy: Option<String>,
}

fn published_multiset(row: &PublishedRow) -> Vec<Natural> {
    let mut v: Vec<Natural> = row
        .factors
        .iter()
        .map(|t| t.parse().expect("published factors are decimal"))
        .collect();
    v.sort();
    v
}

fn discrepancy(row: &PublishedRow, value: &Natural, verified: &Factorization) -> Option<String> {
    let printed = published_multiset(row);
    if printed == verified.primes_with_multiplicity() {
        return None;
    }
    let printed_text = row.factors.join(" · ");
    let product: Natural = printed.iter().product();
    let mut note =
        format!("published factorization {printed_text} differs from verified {verified}");
    if &product != value {
        note.push_str(&format!("; its product is {product}, not {value}"));
    }
    Some(note)
}

/// Recomputes table 1 (`a(k)`, `k = 0..=25`), table 2 (`s(3, r)`, `r = 1..=9`)
/// or table 3 (`(1, 1)` and the nine `(j, r)` rows with `j + r = 11`).
///
/// Rows are factored in parallel and returned in table order.
pub fn reproduce_table(
    which: u8,
    factorizer: &Factorizer,
    guard: DigitGuard,
) -> Result<Vec<TableRow>, SequenceError> {
    let published = published_table(which).ok_or(SequenceError::UnknownTable(which))?;
    published
        .par_iter()
        .map(|row| {
            let value = match which {
                1 => a_term(row.k, guard)?,
                2 => b_term(row.r - 1, guard)?,
                _ => s_term(row.k, row.r, guard)?,
            };
            let factorization = factorizer.factorize(&value)?;
            if !factorization.is_complete() {
                return Err(SequenceError::Incomplete {
                    k: row.k,
                    r: row.r,
                    factorization,
                });
            }
            let paper_discrepancy = discrepancy(row, &value, &factorization);
            Ok(TableRow {
                k: row.k,
                r: row.r,
                value,
                factorization,
                paper_discrepancy,
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// Prime power entry of a [`TableRecord`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorRecord {
    pub prime: String,
    pub multiplicity: u32,
}

/// Machine-readable form of a [`TableRow`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRecord {
    pub k: usize,
    pub r: usize,
    pub value: String,
    pub factors: Vec<FactorRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub paper_discrepancy: Option<String>,
}

impl From<&TableRow> for TableRecord {
    fn from(row: &TableRow) -> Self {
        TableRecord {
            k: row.k,
            r: row.r,
            value: row.value.to_string(),
            factors: row
                .factorization
                .factors()
                .iter()
                .map(|(p, e)| FactorRecord {
                    prime: p.to_string(),
                    multiplicity: *e,
                })
                .collect(),
            paper_discrepancy: row.paper_discrepancy.clone(),
        }
    }
}

/// One JSON object per row, newline-terminated.
pub fn render_table_records(rows: &[TableRow]) -> String {
    rows.iter()
        .map(|row| {
            let mut line = serde_json::to_string(&TableRecord::from(row)).expect("serializable");
            line.push('\n');
            line
        })
        .collect()
}

/// Aligned plain-text table. The unit row's factorization is shown as `-`.
/// `render` controls how values are printed (plain or grouped).
pub fn render_table_text(rows: &[TableRow], render: impl Fn(&Natural) -> String) -> String {
    let header = ["k", "r", "value", "prime factorization", "note"];
    let body: Vec<[String; 5]> = rows
        .iter()
        .map(|row| {
            let factors = if row.factorization.factors().is_empty() {
                "-".to_string()
            } else {
                row.factorization
                    .factors()
                    .iter()
                    .map(|(p, e)| {
                        if *e == 1 {
                            render(p)
                        } else {
                            format!("{}^{e}", render(p))
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" · ")
            };
            [
                row.k.to_string(),
                row.r.to_string(),
                render(&row.value),
                factors,
                row.paper_discrepancy.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let mut widths = header.map(|h| h.chars().count());
    for cells in &body {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(widths).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let pad = w - c.chars().count();
                s.push_str(c);
                s.push_str(&" ".repeat(pad + 2));
            }
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
        s
    };
    let mut out = line(&header.map(String::from));
    for cells in &body {
        out.push_str(&line(cells));
    }
    out
}

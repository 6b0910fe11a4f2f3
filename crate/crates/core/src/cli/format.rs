//! Text documents for Gram matrices, modular data, framed links and reports.
//!
//! Gram matrices use the bare matrix format (one row per line). Everything
//! else is a sequence of `key: value` lines, keys in a fixed order, starting
//! with `kind:`. Modular data looks like
//!
//! ```text
//! kind: modular_data
//! rank: 2
//! twists: e(0/1), e(1/4)
//! s_tilde: 1, 1
//! s_tilde: 1, -1
//! provenance: 2
//! ```
//!
//! with one `s_tilde` line per row, an optional `labels:` line of display
//! names after `rank`, and optional `provenance` lines holding the rows of
//! the Gram matrix the data was built from.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cyclo::{Cyclotomic, RootOfUnity, ValueParseError};
use crate::lattice::{parse_integer_matrix, GramMatrix, LatticeError, MatrixTextError};
use crate::moddata::{CheckResult, FramedLink, Label, ModularData, ModularDataError, Relation, Report};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid data: {0}")]
    Validation(String),
    #[error("expected a {expected} document, found {found}")]
    WrongKind { expected: &'static str, found: &'static str },
}

impl From<ModularDataError> for DocError {
    fn from(e: ModularDataError) -> Self {
        DocError::Validation(e.to_string())
    }
}

impl From<LatticeError> for DocError {
    fn from(e: LatticeError) -> Self {
        DocError::Validation(e.to_string())
    }
}

impl From<MatrixTextError> for DocError {
    fn from(e: MatrixTextError) -> Self {
        DocError::Parse {
            line: e.line,
            column: e.column,
            message: e.message,
        }
    }
}

/// Any value that has a document form.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Gram(GramMatrix),
    Modular(ModularData),
    Link(FramedLink),
    Report(Report),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Gram(_) => "gram_matrix",
            Value::Modular(_) => "modular_data",
            Value::Link(_) => "link",
            Value::Report(_) => "report",
        }
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn serialize(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Gram(b) => {
            out.push_str("# kind: gram_matrix\n");
            for row in b.entries() {
                writeln!(out, "{}", join(row, " ")).unwrap();
            }
        }
        Value::Modular(md) => {
            out.push_str("kind: modular_data\n");
            writeln!(out, "rank: {}", md.rank()).unwrap();
            if let Some(names) = md.label_names() {
                writeln!(out, "labels: {}", names.join(", ")).unwrap();
            }
            writeln!(out, "twists: {}", join(md.twists(), ", ")).unwrap();
            for row in md.s_tilde() {
                writeln!(out, "s_tilde: {}", join(row, ", ")).unwrap();
            }
            if let Some(p) = md.provenance() {
                for row in p.gram.entries() {
                    writeln!(out, "provenance: {}", join(row, " ")).unwrap();
                }
            }
        }
        Value::Link(link) => {
            out.push_str("kind: link\n");
            for row in link.linking() {
                writeln!(out, "linking: {}", join(row, " ")).unwrap();
            }
            let colors = join(link.colors(), ", ");
            if colors.is_empty() {
                out.push_str("colors:\n");
            } else {
                writeln!(out, "colors: {colors}").unwrap();
            }
        }
        Value::Report(report) => {
            out.push_str("kind: report\n");
            for c in &report.checks {
                writeln!(out, "check: {} {}", c.relation.id(), if c.passed { "pass" } else { "fail" }).unwrap();
            }
        }
    }
    out
}

/// A `key: value` line with its position.
struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
    /// 1-based column of the first byte of `value`.
    value_column: usize,
}

impl Entry<'_> {
    fn error(&self, column_in_value: usize, message: impl Into<String>) -> DocError {
        DocError::Parse {
            line: self.line,
            column: self.value_column + column_in_value.saturating_sub(1),
            message: message.into(),
        }
    }

    /// Comma-separated items with their 1-based columns inside the value.
    fn items(&self) -> Vec<(usize, &str)> {
        if self.value.trim().is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut start = 0;
        for part in self.value.split(',') {
            let lead = part.len() - part.trim_start().len();
            out.push((start + lead + 1, part.trim()));
            start += part.len() + 1;
        }
        out
    }

    fn cyclotomics(&self) -> Result<Vec<Cyclotomic>, DocError> {
        self.items()
            .into_iter()
            .map(|(col, text)| {
                text.parse::<Cyclotomic>()
                    .map_err(|e: ValueParseError| self.error(col + e.column - 1, e.message))
            })
            .collect()
    }

    fn twists(&self) -> Result<Vec<RootOfUnity>, DocError> {
        self.items()
            .into_iter()
            .map(|(col, text)| {
                text.parse::<RootOfUnity>()
                    .map_err(|e: ValueParseError| self.error(col + e.column - 1, e.message))
            })
            .collect()
    }

    fn integers(&self) -> Result<Vec<i64>, DocError> {
        parse_integer_matrix(self.value)
            .map(|mut rows| rows.remove(0))
            .map_err(|e| self.error(e.column, e.message))
    }
}

fn entries(text: &str) -> Result<Vec<Entry<'_>>, DocError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(colon) = raw.find(':') else {
            return Err(DocError::Parse {
                line: i + 1,
                column: raw.len() - trimmed.len() + 1,
                message: "expected 'key: value'".into(),
            });
        };
        let after = &raw[colon + 1..];
        let lead = after.len() - after.trim_start().len();
        out.push(Entry {
            line: i + 1,
            key: raw[..colon].trim(),
            value: after.trim(),
            value_column: colon + 1 + lead + 1,
        });
    }
    Ok(out)
}

fn is_keyed(text: &str) -> bool {
    text.lines()
        .map(str::trim_start)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("kind:"))
}

/// Parses any document. Texts not starting with `kind:` are bare matrices.
pub fn parse(text: &str) -> Result<Value, DocError> {
    if !is_keyed(text) {
        let rows = parse_integer_matrix(text)?;
        return Ok(Value::Gram(GramMatrix::new(rows)?));
    }
    let entries = entries(text)?;
    let kind = &entries[0];
    match kind.value {
        "modular_data" => parse_modular_entries(&entries[1..]).map(Value::Modular),
        "link" => parse_link_entries(&entries[1..]).map(Value::Link),
        "report" => parse_report_entries(&entries[1..]).map(Value::Report),
        "gram_matrix" => parse_gram_entries(&entries[1..]).map(Value::Gram),
        other => Err(kind.error(1, format!("unknown document kind '{other}'"))),
    }
}

pub fn parse_modular_data(text: &str) -> Result<ModularData, DocError> {
    match parse(text)? {
        Value::Modular(md) => Ok(md),
        other => Err(DocError::WrongKind {
            expected: "modular_data",
            found: other.kind(),
        }),
    }
}

pub fn parse_gram(text: &str) -> Result<GramMatrix, DocError> {
    match parse(text)? {
        Value::Gram(b) => Ok(b),
        other => Err(DocError::WrongKind {
            expected: "gram_matrix",
            found: other.kind(),
        }),
    }
}

/// Walks entries in the fixed key order.
struct Keys<'a, 'b> {
    entries: &'b [Entry<'a>],
    pos: usize,
}

impl<'a, 'b> Keys<'a, 'b> {
    fn new(entries: &'b [Entry<'a>]) -> Self {
        Keys { entries, pos: 0 }
    }

    fn next_if(&mut self, key: &str) -> Option<&'b Entry<'a>> {
        let e = self.entries.get(self.pos)?;
        if e.key == key {
            self.pos += 1;
            Some(e)
        } else {
            None
        }
    }

    fn require(&mut self, key: &str) -> Result<&'b Entry<'a>, DocError> {
        match self.entries.get(self.pos) {
            Some(e) if e.key == key => {
                self.pos += 1;
                Ok(e)
            }
            Some(e) => Err(DocError::Parse {
                line: e.line,
                column: 1,
                message: format!("expected key '{key}', found '{}'", e.key),
            }),
            None => Err(DocError::Parse {
                line: self.entries.last().map_or(1, |e| e.line + 1),
                column: 1,
                message: format!("missing key '{key}'"),
            }),
        }
    }

    fn repeated(&mut self, key: &str) -> Vec<&'b Entry<'a>> {
        let mut out = Vec::new();
        while let Some(e) = self.next_if(key) {
            out.push(e);
        }
        out
    }

    fn finish(&self) -> Result<(), DocError> {
        match self.entries.get(self.pos) {
            None => Ok(()),
            Some(e) => Err(DocError::Parse {
                line: e.line,
                column: 1,
                message: format!("unexpected key '{}'", e.key),
            }),
        }
    }
}

fn parse_modular_entries(entries: &[Entry<'_>]) -> Result<ModularData, DocError> {
    let mut keys = Keys::new(entries);
    let rank_entry = keys.require("rank")?;
    let rank: usize = rank_entry
        .value
        .parse()
        .map_err(|_| rank_entry.error(1, "rank must be a non-negative integer"))?;
    let names = keys.next_if("labels").map(|e| {
        e.items()
            .into_iter()
            .map(|(_, name)| name.to_string())
            .collect::<Vec<_>>()
    });
    let twists_entry = keys.require("twists")?;
    let twists = twists_entry.twists()?;
    if twists.len() != rank {
        return Err(twists_entry.error(1, format!("expected {rank} twists, found {}", twists.len())));
    }
    let rows = keys.repeated("s_tilde");
    if rows.len() != rank {
        let line = rows.last().map_or(twists_entry.line, |e| e.line);
        return Err(DocError::Parse {
            line,
            column: 1,
            message: format!("expected {rank} s_tilde rows, found {}", rows.len()),
        });
    }
    let mut s_tilde = Vec::with_capacity(rank);
    for row in rows {
        let values = row.cyclotomics()?;
        if values.len() != rank {
            return Err(row.error(1, format!("expected {rank} entries, found {}", values.len())));
        }
        s_tilde.push(values);
    }
    let provenance = keys.repeated("provenance");
    keys.finish()?;

    let mut md = ModularData::new(s_tilde, twists)?;
    if !provenance.is_empty() {
        let rows = provenance
            .iter()
            .map(|e| e.integers())
            .collect::<Result<Vec<_>, _>>()?;
        md = md.with_provenance(&GramMatrix::new(rows)?)?;
    }
    if let Some(names) = names {
        md = md.with_label_names(names)?;
    }
    Ok(md)
}

fn parse_link_entries(entries: &[Entry<'_>]) -> Result<FramedLink, DocError> {
    let mut keys = Keys::new(entries);
    let rows = keys
        .repeated("linking")
        .into_iter()
        .map(Entry::integers)
        .collect::<Result<Vec<_>, _>>()?;
    let colors_entry = keys.require("colors")?;
    let colors = colors_entry
        .items()
        .into_iter()
        .map(|(col, text)| {
            text.parse::<usize>()
                .map(Label)
                .map_err(|_| colors_entry.error(col, format!("'{text}' is not a label")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    keys.finish()?;
    Ok(FramedLink::new(rows, colors)?)
}

fn parse_report_entries(entries: &[Entry<'_>]) -> Result<Report, DocError> {
    let mut keys = Keys::new(entries);
    let checks = keys
        .repeated("check")
        .into_iter()
        .map(|e| {
            let mut parts = e.value.split_whitespace();
            let (Some(id), Some(status), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(e.error(1, "expected '<relation> pass|fail'"));
            };
            let relation = Relation::from_id(id).ok_or_else(|| e.error(1, format!("unknown relation '{id}'")))?;
            let passed = match status {
                "pass" => true,
                "fail" => false,
                other => return Err(e.error(id.len() + 2, format!("expected pass or fail, found '{other}'"))),
            };
            Ok(CheckResult { relation, passed })
        })
        .collect::<Result<Vec<_>, _>>()?;
    keys.finish()?;
    Ok(Report { checks })
}

fn parse_gram_entries(entries: &[Entry<'_>]) -> Result<GramMatrix, DocError> {
    let mut keys = Keys::new(entries);
    let rows = keys
        .repeated("row")
        .into_iter()
        .map(Entry::integers)
        .collect::<Result<Vec<_>, _>>()?;
    keys.finish()?;
    Ok(GramMatrix::new(rows)?)
}

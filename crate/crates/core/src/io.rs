//! Text and JSON formats.
//!
//! A table file is the order `n` on its own line followed by `n` rows of `n`
//! entries, row `a` and column `b` holding `a⋆b`, all 1-based. Everything
//! after `#` on a line is ignored. The labelled layout has an extra header
//! row and an extra leading label on each row; both are discarded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::enumerate::{ClassInfo, EnumerationReport};
use crate::error::{Error, Result};
use crate::f2::BitVec;
use crate::quandle::{verify_axioms, QuandleTable};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Layout {
    #[default]
    Plain,
    /// Header row of column labels and a row label before each row.
    Labelled,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn content_lines(text: &str, layout: Layout) -> Vec<Line<'_>> {
    let is_sep = |ch: char| match layout {
        Layout::Plain => ch.is_whitespace() || ch == ',',
        Layout::Labelled => ch.is_whitespace() || ch == ',' || ch == '&' || ch == '|',
    };
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        for (pos, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            if is_sep(ch) {
                if let Some(s) = start.take() {
                    tokens.push((body[..s].chars().count() + 1, &body[s..pos]));
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if layout == Layout::Labelled {
            tokens.retain(|(_, t)| *t != "\\\\" && *t != "\\hline");
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn number(line: usize, column: usize, token: &str) -> Result<usize> {
    let digits = token.trim_end_matches("\\\\");
    digits.parse::<usize>().map_err(|_| Error::Parse {
        line,
        column,
        message: format!("expected a positive integer, found {token:?}"),
    })
}

fn read_rows(lines: &[Line<'_>], n: usize, skip: usize, last_line: usize) -> Result<Vec<Vec<usize>>> {
    if lines.len() < n {
        return Err(Error::Parse {
            line: last_line,
            column: 0,
            message: format!("expected {n} rows, found {}", lines.len()),
        });
    }
    if let Some(extra) = lines.get(n) {
        return Err(Error::Parse {
            line: extra.number,
            column: extra.tokens[0].0,
            message: format!("unexpected content after row {n}"),
        });
    }
    let mut rows = Vec::with_capacity(n);
    for line in lines {
        if line.tokens.len() != n + skip {
            return Err(Error::Parse {
                line: line.number,
                column: 0,
                message: format!("expected {} entries, found {}", n + skip, line.tokens.len()),
            });
        }
        let mut row = Vec::with_capacity(n);
        for &(col, tok) in &line.tokens[skip..] {
            let v = number(line.number, col, tok)?;
            if v == 0 || v > n {
                return Err(Error::Parse {
                    line: line.number,
                    column: col,
                    message: format!("entry {v} is outside 1..={n}"),
                });
            }
            row.push(v);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Parses and validates a table.
pub fn parse_table_with(text: &str, layout: Layout) -> Result<QuandleTable> {
    let lines = content_lines(text, layout);
    let last_line = text.lines().count();
    let Some(first) = lines.first() else {
        return Err(Error::Parse {
            line: last_line.max(1),
            column: 0,
            message: "empty input".into(),
        });
    };
    let rows = match layout {
        Layout::Plain => {
            if first.tokens.len() != 1 {
                return Err(Error::Parse {
                    line: first.number,
                    column: first.tokens[1].0,
                    message: "the first line must hold only the order".into(),
                });
            }
            let (col, tok) = first.tokens[0];
            let n = number(first.number, col, tok)?;
            if n == 0 {
                return Err(Error::Parse {
                    line: first.number,
                    column: col,
                    message: "order must be positive".into(),
                });
            }
            read_rows(&lines[1..], n, 0, last_line)?
        }
        Layout::Labelled => read_rows(&lines[1..], first.tokens.len(), 1, last_line)?,
    };
    verify_axioms(&rows)
}

pub fn parse_table(text: &str) -> Result<QuandleTable> {
    parse_table_with(text, Layout::Plain)
}

pub fn format_table(q: &QuandleTable) -> String {
    let mut out = format!("{}\n", q.order());
    for row in q.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_table(path: &Path, layout: Layout) -> Result<QuandleTable> {
    parse_table_with(&std::fs::read_to_string(path)?, layout)
}

/// Each vector as an `n×n` block of 0/1, blocks separated by a blank line.
pub fn format_bit_matrices(vectors: &[BitVec], n: usize) -> String {
    let mut out = String::new();
    for (i, v) in vectors.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        for x in 0..n {
            let row: Vec<&str> = (0..n).map(|y| if v.get(x * n + y) { "1" } else { "0" }).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Short name for a quotient: a catalog name, Alexander parameters, or its order.
pub fn quotient_label(q: &QuandleTable) -> String {
    if let Some(name) = catalog::identify(q) {
        return name.to_string();
    }
    if q.order() == 1 {
        return "trivial".into();
    }
    format!("order-{}", q.order())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSummary {
    pub name: String,
    pub table: Vec<Vec<usize>>,
    pub int_order: u64,
    pub faithful: bool,
    pub phi_image_order: usize,
    pub simple: bool,
    pub alexander: Option<String>,
    pub quotients: Vec<String>,
}

impl From<&ClassInfo> for ClassSummary {
    fn from(c: &ClassInfo) -> Self {
        ClassSummary {
            name: c.name.clone(),
            table: c.table.rows(),
            int_order: c.int_order,
            faithful: c.faithful,
            phi_image_order: c.phi_image_order,
            simple: c.simple,
            alexander: c.alexander.clone(),
            quotients: c.quotients.iter().map(quotient_label).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub order: usize,
    pub count: usize,
    pub classes: Vec<ClassSummary>,
}

impl From<&EnumerationReport> for EnumerationSummary {
    fn from(r: &EnumerationReport) -> Self {
        EnumerationSummary {
            order: r.order,
            count: r.count(),
            classes: r.classes.iter().map(ClassSummary::from).collect(),
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn summary_text(s: &EnumerationSummary) -> String {
    let mut out = format!("order {}\ncount {}\n", s.order, s.count);
    for c in &s.classes {
        let quotients = if c.quotients.is_empty() {
            "-".to_string()
        } else {
            c.quotients.join(",")
        };
        let _ = writeln!(
            out,
            "{} int={} faithful={} phi-image={} simple={} alexander={} quotients={}",
            c.name,
            c.int_order,
            yes_no(c.faithful),
            c.phi_image_order,
            yes_no(c.simple),
            c.alexander.as_deref().unwrap_or("-"),
            quotients
        );
    }
    out
}

/// Writes one table file per class plus `summary.txt` and `summary.json`.
pub fn write_enumeration(report: &EnumerationReport, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for c in &report.classes {
        let path = dir.join(format!("{}.txt", c.name));
        std::fs::write(&path, format_table(&c.table))?;
        written.push(path);
    }
    let summary = EnumerationSummary::from(report);
    let path = dir.join("summary.txt");
    std::fs::write(&path, summary_text(&summary))?;
    written.push(path);
    let path = dir.join("summary.json");
    std::fs::write(&path, serde_json::to_string_pretty(&summary)? + "\n")?;
    written.push(path);
    Ok(written)
}

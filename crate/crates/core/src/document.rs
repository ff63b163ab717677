//! JSON document format for databases and single distributions.
//!
//! ```json
//! {
//!   "variables": [{"name": "X", "domain": ["x1", "x2"]}],
//!   "tables": [{"vars": ["X"], "rows": [{"key": ["x1"], "p": 0.7},
//!                                      {"key": ["x2"], "p": [0.2, 0.3]}]}]
//! }
//! ```
//!
//! A document carries either `"tables"` (a database) or `"table"` (one
//! distribution; `"vars"` defaults to every variable). A bare number for
//! `"p"` is a degenerate interval. Rows may come in any order on input and
//! are matched by key; output is always canonical and prints numbers with
//! nine decimals.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Database, IntervalDistribution, RealDistribution, Space, Variable, Violation};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub variables: Vec<VariableDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<Vec<TableDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VariableDoc {
    pub name: String,
    pub domain: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<String>>,
    pub rows: Vec<RowDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RowDoc {
    pub key: Vec<String>,
    pub p: Prob,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Prob {
    Point(f64),
    Interval([f64; 2]),
}

impl Prob {
    fn bounds(self) -> (f64, f64) {
        match self {
            Prob::Point(x) => (x, x),
            Prob::Interval([l, u]) => (l, u),
        }
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match (&doc.tables, &doc.table) {
            (Some(_), Some(_)) => Err(Error::Parse(
                "document has both \"tables\" and \"table\"".into(),
            )),
            (None, None) => Err(Error::Parse(
                "document needs \"tables\" or \"table\"".into(),
            )),
            _ => Ok(doc),
        }
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn space(&self) -> Result<Space> {
        let vars = self
            .variables
            .iter()
            .map(|v| Variable::new(v.name.clone(), v.domain.iter().cloned()))
            .collect::<Result<Vec<_>>>()?;
        Space::new(vars)
    }

    /// Reads the document as a database. A single-table document becomes a
    /// one-table database.
    pub fn to_database(&self) -> Result<Database<f64>> {
        let space = self.space()?;
        let docs: Vec<&TableDoc> = match (&self.tables, &self.table) {
            (Some(ts), _) => ts.iter().collect(),
            (None, Some(t)) => vec![t],
            (None, None) => Vec::new(),
        };
        let mut tables = Vec::with_capacity(docs.len());
        let mut violations = Vec::new();
        for (k, t) in docs.into_iter().enumerate() {
            match t.to_distribution(&space) {
                Ok(d) => tables.push(d),
                Err(Error::Invalid(v)) => violations.extend(v.into_iter().map(|v| tag(v, k))),
                Err(e) => return Err(e),
            }
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        Database::with_ambient(space, tables)
    }

    /// Reads the document as one distribution over all of its variables.
    pub fn to_distribution(&self) -> Result<IntervalDistribution<f64>> {
        let space = self.space()?;
        let table = match (&self.table, &self.tables) {
            (Some(t), _) => t,
            (None, Some(ts)) if ts.len() == 1 => &ts[0],
            _ => {
                return Err(Error::Parse(
                    "expected a document with a single \"table\"".into(),
                ))
            }
        };
        let dist = table.to_distribution(&space)?;
        if dist.space() != &space {
            return Err(Error::Parse(
                "the table must range over every declared variable, in order".into(),
            ));
        }
        Ok(dist)
    }

    pub fn from_distribution(i: &IntervalDistribution<f64>) -> Self {
        Self {
            variables: variable_docs(i.space()),
            tables: None,
            table: Some(TableDoc::from_distribution(i)),
        }
    }

    pub fn from_real(p: &RealDistribution<f64>) -> Self {
        Self::from_distribution(&p.to_interval())
    }

    pub fn from_database(db: &Database<f64>) -> Self {
        Self {
            variables: variable_docs(db.ambient()),
            tables: Some(
                db.tables()
                    .iter()
                    .map(TableDoc::from_distribution)
                    .collect(),
            ),
            table: None,
        }
    }

    /// Canonical JSON text with nine-decimal numbers.
    pub fn to_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n  \"variables\": [\n");
        for (k, v) in self.variables.iter().enumerate() {
            let domain: Vec<String> = v.domain.iter().map(|d| quote(d)).collect();
            let _ = write!(
                out,
                "    {{\"name\": {}, \"domain\": [{}]}}",
                quote(&v.name),
                domain.join(", ")
            );
            out.push_str(if k + 1 < self.variables.len() {
                ",\n"
            } else {
                "\n"
            });
        }
        out.push_str("  ]");
        if let Some(ts) = &self.tables {
            out.push_str(",\n  \"tables\": [\n");
            for (k, t) in ts.iter().enumerate() {
                out.push_str("    ");
                t.write_json(&mut out, "    ");
                out.push_str(if k + 1 < ts.len() { ",\n" } else { "\n" });
            }
            out.push_str("  ]");
        }
        if let Some(t) = &self.table {
            out.push_str(",\n  \"table\": ");
            t.write_json(&mut out, "  ");
        }
        out.push_str("\n}\n");
        out
    }

    /// Tab-separated tables, one block per table.
    pub fn to_text_table(&self) -> String {
        let all: Vec<String> = self.variables.iter().map(|v| v.name.clone()).collect();
        let tables: Vec<&TableDoc> = self
            .tables
            .iter()
            .flatten()
            .chain(self.table.iter())
            .collect();
        let mut out = String::new();
        for (k, t) in tables.iter().enumerate() {
            if k > 0 {
                out.push('\n');
            }
            let vars = t.vars.as_ref().unwrap_or(&all);
            let _ = writeln!(out, "{}\tp", vars.join("\t"));
            for row in &t.rows {
                let _ = writeln!(out, "{}\t{}", row.key.join("\t"), format_prob(row.p));
            }
        }
        out
    }
}

fn tag(v: Violation, table: usize) -> Violation {
    match v {
        Violation::MissingKey { cell, .. } => Violation::MissingKey {
            table: Some(table),
            cell,
        },
        Violation::DuplicateKey { cell, .. } => Violation::DuplicateKey {
            table: Some(table),
            cell,
        },
        other => other,
    }
}

impl TableDoc {
    fn to_distribution(&self, space: &Space) -> Result<IntervalDistribution<f64>> {
        let sub = match &self.vars {
            Some(vars) => space.subspace(vars)?,
            None => space.clone(),
        };
        let n = sub.cell_count();
        let mut slots: Vec<Option<(f64, f64)>> = vec![None; n];
        let mut violations = Vec::new();
        for row in &self.rows {
            let j = sub.cell_index(&row.key)?;
            if slots[j].is_some() {
                violations.push(Violation::DuplicateKey {
                    table: None,
                    cell: row.key.join(" "),
                });
            }
            slots[j] = Some(row.p.bounds());
        }
        for (j, s) in slots.iter().enumerate() {
            if s.is_none() {
                violations.push(Violation::MissingKey {
                    table: None,
                    cell: sub.cell_tuple(j).join(" "),
                });
            }
        }
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let bounds: Vec<(f64, f64)> = slots.into_iter().flatten().collect();
        IntervalDistribution::from_intervals(sub, &bounds)
    }

    fn from_distribution(i: &IntervalDistribution<f64>) -> Self {
        let rows = (0..i.len())
            .map(|j| {
                let (l, u) = i.interval(j);
                let key = i
                    .space()
                    .cell_tuple(j)
                    .into_iter()
                    .map(String::from)
                    .collect();
                let p = if format!("{l:.9}") == format!("{u:.9}") {
                    Prob::Point(l)
                } else {
                    Prob::Interval([l, u])
                };
                RowDoc { key, p }
            })
            .collect();
        Self {
            vars: Some(i.space().names().map(String::from).collect()),
            rows,
        }
    }

    fn write_json(&self, out: &mut String, indent: &str) {
        let _ = writeln!(out, "{{");
        if let Some(vars) = &self.vars {
            let names: Vec<String> = vars.iter().map(|v| quote(v)).collect();
            let _ = writeln!(out, "{indent}  \"vars\": [{}],", names.join(", "));
        }
        let _ = writeln!(out, "{indent}  \"rows\": [");
        for (k, row) in self.rows.iter().enumerate() {
            let key: Vec<String> = row.key.iter().map(|s| quote(s)).collect();
            let _ = write!(
                out,
                "{indent}    {{\"key\": [{}], \"p\": {}}}",
                key.join(", "),
                format_prob(row.p)
            );
            out.push_str(if k + 1 < self.rows.len() { ",\n" } else { "\n" });
        }
        let _ = write!(out, "{indent}  ]\n{indent}}}");
    }
}

fn variable_docs(space: &Space) -> Vec<VariableDoc> {
    space
        .variables()
        .iter()
        .map(|v| VariableDoc {
            name: v.name().to_string(),
            domain: v.domain().to_vec(),
        })
        .collect()
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Nine-decimal fixed point, with negative zero printed as zero.
pub fn format_number(x: f64) -> String {
    let s = format!("{x:.9}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn format_prob(p: Prob) -> String {
    match p {
        Prob::Point(x) => format_number(x),
        Prob::Interval([l, u]) => format!("[{}, {}]", format_number(l), format_number(u)),
    }
}

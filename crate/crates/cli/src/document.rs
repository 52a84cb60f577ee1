//! Table files.
//!
//! The text form is a `key: value` header followed by `rows:` and one line
//! of space-separated entries per row:
//!
//! ```text
//! # 0-indexed; row a, column b holds a * b
//! kind: groupoid
//! n: 3
//! name: R3
//! rows:
//! 0 2 1
//! 2 1 0
//! 1 0 2
//! ```
//!
//! Unknown header keys are kept as metadata. A document whose first
//! non-blank character is `{` is read as JSON with the same fields.

use std::collections::BTreeMap;

use quandle_core::{FiniteGroup, OpTable};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Groupoid,
    Group,
}

impl Kind {
    fn as_str(self) -> &'static str {
        match self {
            Kind::Groupoid => "groupoid",
            Kind::Group => "group",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub kind: Kind,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Label of the first element, 0 or 1.
    #[serde(default)]
    pub indexing: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
    pub rows: Vec<Vec<usize>>,
}

impl TableDocument {
    pub fn from_table(t: &OpTable, name: Option<&str>) -> Self {
        TableDocument {
            kind: Kind::Groupoid,
            n: t.n(),
            name: name.map(str::to_string),
            indexing: 0,
            metadata: BTreeMap::new(),
            rows: t.rows(),
        }
    }

    pub fn from_group(g: &FiniteGroup, name: Option<&str>) -> Self {
        TableDocument {
            kind: Kind::Group,
            n: g.order(),
            name: name.map(str::to_string),
            indexing: 0,
            metadata: BTreeMap::new(),
            rows: g.rows(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_string(), value.to_string());
        self
    }

    /// Relabels entries so the first element is `indexing`.
    pub fn reindexed(mut self, indexing: usize) -> Self {
        let shift = |v: usize| v + indexing - self.indexing;
        self.rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| shift(v)).collect())
            .collect();
        self.indexing = indexing;
        self
    }

    fn zero_based_rows(&self) -> Result<Vec<Vec<usize>>, CliError> {
        if self.indexing > 1 {
            return Err(CliError::Format(format!(
                "indexing must be 0 or 1, not {}",
                self.indexing
            )));
        }
        if self.rows.len() != self.n {
            return Err(CliError::Format(format!(
                "header says n = {} but {} rows were given",
                self.n,
                self.rows.len()
            )));
        }
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| {
                        v.checked_sub(self.indexing).ok_or_else(|| {
                            CliError::Format(format!(
                                "entry {v} is below the first label {}",
                                self.indexing
                            ))
                        })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_table(&self) -> Result<OpTable, CliError> {
        Ok(OpTable::from_sized_rows(self.n, self.zero_based_rows()?)?)
    }

    pub fn to_group(&self) -> Result<FiniteGroup, CliError> {
        if self.kind != Kind::Group {
            return Err(CliError::Format(
                "expected a document of kind `group`".into(),
            ));
        }
        FiniteGroup::from_table(self.zero_based_rows()?)
            .map_err(|e| CliError::Format(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim_start().starts_with('{') {
            return serde_json::from_str(text)
                .map_err(|e| CliError::Format(format!("bad JSON table: {e}")));
        }
        let mut kind = Kind::Groupoid;
        let mut n = None;
        let mut name = None;
        let mut indexing = 0;
        let mut metadata = BTreeMap::new();
        let mut rows = Vec::new();
        let mut in_rows = false;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| CliError::Format(format!("line {}: {msg}", lineno + 1));
            if in_rows {
                let row = line
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| bad(format!("`{tok}` is not an entry")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(row);
                continue;
            }
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| bad(format!("expected `key: value`, found `{line}`")))?;
            let value = value.trim();
            match key.trim() {
                "rows" => in_rows = true,
                "kind" => {
                    kind = match value {
                        "groupoid" => Kind::Groupoid,
                        "group" => Kind::Group,
                        other => return Err(bad(format!("unknown kind `{other}`"))),
                    }
                }
                "n" => {
                    n = Some(
                        value
                            .parse()
                            .map_err(|_| bad(format!("bad size `{value}`")))?,
                    )
                }
                "name" => name = Some(value.to_string()),
                "indexing" => {
                    indexing = value
                        .parse()
                        .map_err(|_| bad(format!("bad indexing `{value}`")))?
                }
                other => {
                    metadata.insert(other.to_string(), value.to_string());
                }
            }
        }
        let n = n.ok_or_else(|| CliError::Format("missing `n:` header".into()))?;
        Ok(TableDocument {
            kind,
            n,
            name,
            indexing,
            metadata,
            rows,
        })
    }

    /// Every table in command output: chunks separated by `---` lines,
    /// skipping chunks without a `rows:` line.
    pub fn parse_all(text: &str) -> Result<Vec<Self>, CliError> {
        let mut chunks = vec![String::new()];
        for line in text.lines() {
            if line.trim() == "---" {
                chunks.push(String::new());
            } else {
                let chunk = chunks.last_mut().expect("non-empty");
                chunk.push_str(line);
                chunk.push('\n');
            }
        }
        chunks
            .iter()
            .filter(|c| c.lines().any(|l| l.trim() == "rows:"))
            .map(|c| Self::parse(c))
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# {}-indexed; row a, column b holds a * b\nkind: {}\nn: {}\n",
            self.indexing,
            self.kind.as_str(),
            self.n
        );
        if let Some(name) = &self.name {
            out += &format!("name: {name}\n");
        }
        if self.indexing != 0 {
            out += &format!("indexing: {}\n", self.indexing);
        }
        for (k, v) in &self.metadata {
            out += &format!("{k}: {v}\n");
        }
        out += "rows:\n";
        let width = (self.n + self.indexing).saturating_sub(1).to_string().len();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
            out += &cells.join(" ");
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serialisable")
    }
}

/// A family of operations for `family validate` and `family assoc`, JSON
/// only:
///
/// ```json
/// { "x_size": 5,
///   "index": { "kind": "quandle", "rows": [[0, 0], [1, 1]] },
///   "ops": [ [[...]], [[...]] ],
///   "f": [[0, 1], [0, 1]] }
/// ```
///
/// For a group index, `"kind": "group"` with the group's Cayley table in
/// `rows` and an optional `"quandle"` table on the same carrier.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub x_size: usize,
    pub index: IndexDocument,
    pub ops: Vec<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub indexing: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndexDocument {
    pub kind: IndexKind,
    pub rows: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quandle: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexKind {
    Quandle,
    Group,
}

impl FamilyDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Format(format!("bad family document: {e}")))
    }

    pub fn to_spec(&self) -> Result<quandle_core::families::FamilySpec, CliError> {
        use quandle_core::families::{FamilySpec, IndexStructure};
        let shift = |rows: &[Vec<usize>]| -> Result<Vec<Vec<usize>>, CliError> {
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| {
                            v.checked_sub(self.indexing).ok_or_else(|| {
                                CliError::Format(format!("entry {v} is below the first label"))
                            })
                        })
                        .collect()
                })
                .collect()
        };
        let index = match self.index.kind {
            IndexKind::Quandle => {
                IndexStructure::Quandle(OpTable::from_rows(shift(&self.index.rows)?)?)
            }
            IndexKind::Group => IndexStructure::Group {
                group: FiniteGroup::from_table(shift(&self.index.rows)?)
                    .map_err(|e| CliError::Format(e.to_string()))?,
                quandle: match &self.index.quandle {
                    Some(rows) => Some(OpTable::from_rows(shift(rows)?)?),
                    None => None,
                },
            },
        };
        let ops = self
            .ops
            .iter()
            .map(|rows| Ok(OpTable::from_sized_rows(self.x_size, shift(rows)?)?))
            .collect::<Result<Vec<_>, CliError>>()?;
        let f = match &self.f {
            Some(rows) => Some(shift(rows)?.concat()),
            None => None,
        };
        Ok(FamilySpec::new(self.x_size, index, ops, f)?)
    }
}

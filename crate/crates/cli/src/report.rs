//! Command output in the two formats.

use serde_json::{Map, Value};

use crate::document::TableDocument;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Clone, Debug)]
enum Item {
    Field(String, Value),
    Table(TableDocument),
    Section(String, Report),
}

/// Ordered `key: value` facts, tables and nested sections.
#[derive(Clone, Debug, Default)]
pub struct Report {
    items: Vec<Item>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn field(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.items.push(Item::Field(key.to_string(), value.into()));
        self
    }

    pub fn table(mut self, doc: TableDocument) -> Self {
        self.items.push(Item::Table(doc));
        self
    }

    pub fn section(mut self, name: &str, report: Report) -> Self {
        self.items.push(Item::Section(name.to_string(), report));
        self
    }

    pub fn push_field(&mut self, key: &str, value: impl Into<Value>) {
        self.items.push(Item::Field(key.to_string(), value.into()));
    }

    pub fn push_table(&mut self, doc: TableDocument) {
        self.items.push(Item::Table(doc));
    }

    pub fn push_section(&mut self, name: &str, report: Report) {
        self.items.push(Item::Section(name.to_string(), report));
    }

    pub fn render(&self, format: Format, one_indexed: bool) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                self.render_text(&mut out, one_indexed);
                out
            }
            Format::Structured => {
                let mut text =
                    serde_json::to_string_pretty(&self.to_json(one_indexed)).expect("serialisable");
                text.push('\n');
                text
            }
        }
    }

    /// Facts first, then every table, so the table part re-parses with
    /// [`TableDocument::parse_all`].
    fn render_text(&self, out: &mut String, one_indexed: bool) {
        self.render_fields(out);
        let mut tables = Vec::new();
        self.collect_tables(&mut tables);
        for doc in tables {
            if !out.is_empty() {
                out.push_str("---\n");
            }
            out.push_str(&shift(doc, one_indexed).to_text());
        }
    }

    fn render_fields(&self, out: &mut String) {
        for item in &self.items {
            match item {
                Item::Field(k, v) => out.push_str(&format!("{k}: {}\n", plain(v))),
                Item::Section(name, report) => {
                    out.push_str(&format!("[{name}]\n"));
                    report.render_fields(out);
                }
                Item::Table(_) => {}
            }
        }
    }

    fn collect_tables<'a>(&'a self, tables: &mut Vec<&'a TableDocument>) {
        for item in &self.items {
            match item {
                Item::Table(doc) => tables.push(doc),
                Item::Section(_, report) => report.collect_tables(tables),
                Item::Field(..) => {}
            }
        }
    }

    fn to_json(&self, one_indexed: bool) -> Value {
        let mut map = Map::new();
        let mut tables = Vec::new();
        for item in &self.items {
            match item {
                Item::Field(k, v) => {
                    map.insert(k.clone(), v.clone());
                }
                Item::Table(doc) => tables.push(shift(doc, one_indexed).to_json()),
                Item::Section(name, report) => {
                    map.insert(name.clone(), report.to_json(one_indexed));
                }
            }
        }
        if !tables.is_empty() {
            map.insert("tables".into(), Value::Array(tables));
        }
        Value::Object(map)
    }
}

fn shift(doc: &TableDocument, one_indexed: bool) -> TableDocument {
    if one_indexed {
        doc.clone().reindexed(1)
    } else {
        doc.clone()
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) if items.iter().all(Value::is_string) => {
            items.iter().map(plain).collect::<Vec<_>>().join(", ")
        }
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            items.iter().map(plain).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

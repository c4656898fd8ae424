use serde_json::Value;

use super::Format;
use crate::error::{Error, Result};

/// Rows for CSV and text output. Cells never contain commas: rationals
/// are `p/q` and list-valued cells use `;`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(
        header: impl IntoIterator<Item = S>,
        rows: impl IntoIterator<Item = Vec<String>>,
    ) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: rows.into_iter().collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        self.lines(",")
    }

    fn lines(&self, sep: &str) -> String {
        std::iter::once(&self.header)
            .chain(&self.rows)
            .map(|r| r.join(sep) + "\n")
            .collect()
    }
}

pub(super) fn render(payload: &Value, table: Option<&Table>, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(payload).expect("json value") + "\n"),
        Format::Csv => table
            .map(Table::to_csv)
            .ok_or_else(|| Error::invalid("csv output is not available for this command")),
        Format::Text => Ok(match (payload, table) {
            (_, Some(t)) => t.lines("  "),
            (Value::String(s), None) => format!("{s}\n"),
            (Value::Number(_) | Value::Bool(_), None) => format!("{payload}\n"),
            _ => serde_json::to_string_pretty(payload).expect("json value") + "\n",
        }),
    }
}

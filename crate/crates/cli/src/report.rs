use std::io::{self, Write};

use clap::ValueEnum;
use orbivol::Interval;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// Everything a subcommand produces, rendered by one of the emitters.
pub struct Report {
    pub command: &'static str,
    pub results: Vec<Value>,
    pub certificates: Vec<Value>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    pub text: Vec<String>,
    /// A requested verification came back false or indeterminate.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &'static str, header: Vec<&'static str>) -> Self {
        Self {
            command,
            results: Vec::new(),
            certificates: Vec::new(),
            header,
            rows: Vec::new(),
            text: Vec::new(),
            failed: false,
        }
    }

    pub fn result<T: Serialize>(&mut self, value: &T) {
        self.results.push(to_value(value));
    }

    pub fn certificate<T: Serialize>(&mut self, value: &T) {
        self.certificates.push(to_value(value));
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.text.push(text.into());
    }

    pub fn emit(&self, format: Format, config: &Value, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Text => {
                for line in &self.text {
                    writeln!(out, "{line}")?;
                }
            }
            Format::Csv => {
                writeln!(out, "{}", self.header.join(","))?;
                for row in &self.rows {
                    writeln!(out, "{}", row.join(","))?;
                }
            }
            Format::Json => {
                let doc = json!({
                    "command": self.command,
                    "config": config,
                    "results": self.results,
                    "certificates": self.certificates,
                });
                serde_json::to_writer_pretty(&mut *out, &doc)?;
                writeln!(out)?;
            }
        }
        Ok(())
    }
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("report values serialize")
}

/// Lower and upper endpoint cells for CSV output.
pub fn cells(x: &Interval) -> [String; 2] {
    let d = x.decimal_digits();
    [x.lo_decimal(d), x.hi_decimal(d)]
}

/// Short form for text output.
pub fn show(x: &Interval) -> String {
    format!("{x:.12}")
}

use std::fmt::Write as _;

use alcove::fundcheck::kac_coordinates;
use alcove::rootsys::RootSystem;
use alcove::{RatVec, Rational};
use clap::ValueEnum;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

/// One command's result in all three renderings.
#[derive(Debug)]
pub struct Report {
    pub title: String,
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
    /// Extra lines shown after the table in pretty output.
    pub notes: Vec<String>,
    /// A checked claim did not hold.
    pub failed: bool,
}

impl Report {
    pub fn new(title: impl Into<String>, json: Value) -> Report {
        Report {
            title: title.into(),
            json,
            header: Vec::new(),
            rows: Vec::new(),
            notes: Vec::new(),
            failed: false,
        }
    }

    pub fn columns(mut self, header: &[&str]) -> Report {
        self.header = header.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json") + "\n",
            Format::Tsv => {
                let mut out = String::new();
                if !self.header.is_empty() {
                    out.push_str(&self.header.join("\t"));
                    out.push('\n');
                }
                for r in &self.rows {
                    out.push_str(&r.join("\t"));
                    out.push('\n');
                }
                out
            }
            Format::Pretty => self.pretty(),
        }
    }

    fn pretty(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{}", self.title).unwrap();
        if !self.header.is_empty() {
            let ncols = self.header.len();
            let width = |c: usize| {
                std::iter::once(&self.header)
                    .chain(&self.rows)
                    .map(|r| r.get(c).map_or(0, |s| s.chars().count()))
                    .max()
                    .unwrap_or(0)
            };
            let widths: Vec<usize> = (0..ncols).map(width).collect();
            let line = |cells: &[String]| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(s, &w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out).unwrap();
            writeln!(out, "{}", line(&self.header)).unwrap();
            let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            writeln!(out, "{}", rule.join("  ")).unwrap();
            for r in &self.rows {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        if !self.notes.is_empty() {
            writeln!(out).unwrap();
            for n in &self.notes {
                writeln!(out, "{n}").unwrap();
            }
        }
        out
    }
}

pub fn point(x: &RatVec) -> String {
    format!("({})", x.to_strings().join(", "))
}

pub fn kac(rs: &RootSystem, x: &RatVec) -> String {
    let b: Vec<String> = kac_coordinates(rs, x).iter().map(Rational::to_string).collect();
    format!("[{}]", b.join(", "))
}

pub fn points_json(points: &[RatVec]) -> Value {
    Value::Array(points.iter().map(|p| serde_json::json!(p.to_strings())).collect())
}

pub fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

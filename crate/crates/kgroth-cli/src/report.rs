use kgroth::poly::{latex, text, to_json, BetaPoly};
use serde_json::{json, Value};
use std::fmt::Write;

pub const REPORT_SCHEMA: &str = "kgroth.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Uncomputable,
    Truncated,
    Finding,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Uncomputable => "uncomputable",
            Status::Truncated => "truncated",
            Status::Finding => "finding",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok | Status::Truncated => 0,
            Status::Uncomputable => 2,
            Status::Finding => 3,
        }
    }
}

/// A titled section of a report.
#[derive(Clone, Debug)]
pub enum Item {
    Poly {
        label: String,
        poly: BetaPoly,
        factored: Option<String>,
    },
    Line {
        label: String,
        value: String,
    },
    Block {
        label: String,
        body: String,
    },
    Case {
        name: String,
        pass: bool,
        detail: String,
    },
}

#[derive(Clone, Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub items: Vec<Item>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            status: Status::Ok,
            items: Vec::new(),
        }
    }

    pub fn poly(&mut self, label: impl Into<String>, poly: BetaPoly, factored: Option<String>) {
        self.items.push(Item::Poly {
            label: label.into(),
            poly,
            factored,
        });
    }

    pub fn line(&mut self, label: impl Into<String>, value: impl ToString) {
        self.items.push(Item::Line {
            label: label.into(),
            value: value.to_string(),
        });
    }

    pub fn block(&mut self, label: impl Into<String>, body: impl Into<String>) {
        self.items.push(Item::Block {
            label: label.into(),
            body: body.into(),
        });
    }

    pub fn case(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.items.push(Item::Case {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => self.render_text(false),
            Format::Latex => self.render_text(true),
        }
    }

    fn render_text(&self, tex: bool) -> String {
        let mut out = String::new();
        writeln!(out, "status: {}", self.status.name()).unwrap();
        for item in &self.items {
            match item {
                Item::Poly {
                    label,
                    poly,
                    factored,
                } => {
                    let body = match (tex, factored) {
                        (true, Some(f)) => f.clone(),
                        (true, None) => latex(poly),
                        (false, _) => text(poly),
                    };
                    writeln!(out, "{label}: {body}").unwrap();
                    if !tex {
                        writeln!(out, "{label} terms: {}", poly.term_count()).unwrap();
                    }
                }
                Item::Line { label, value } => writeln!(out, "{label}: {value}").unwrap(),
                Item::Block { label, body } => {
                    writeln!(out, "{label}:").unwrap();
                    for l in body.lines() {
                        writeln!(out, "  {l}").unwrap();
                    }
                }
                Item::Case { name, pass, detail } => {
                    let mark = if *pass { "PASS" } else { "FAIL" };
                    if detail.is_empty() {
                        writeln!(out, "{mark} {name}").unwrap();
                    } else {
                        writeln!(out, "{mark} {name}: {detail}").unwrap();
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let items: Vec<Value> = self
            .items
            .iter()
            .map(|item| match item {
                Item::Poly { label, poly, factored } => {
                    json!({ "kind": "poly", "label": label, "poly": to_json(poly), "latex": factored.clone().unwrap_or_else(|| latex(poly)) })
                }
                Item::Line { label, value } => json!({ "kind": "line", "label": label, "value": value }),
                Item::Block { label, body } => json!({ "kind": "block", "label": label, "body": body }),
                Item::Case { name, pass, detail } => json!({ "kind": "case", "name": name, "pass": pass, "detail": detail }),
            })
            .collect();
        json!({ "schema": REPORT_SCHEMA, "command": self.command, "status": self.status.name(), "items": items })
    }

    pub fn all_pass(&self) -> bool {
        self.items
            .iter()
            .all(|i| !matches!(i, Item::Case { pass: false, .. }))
    }
}

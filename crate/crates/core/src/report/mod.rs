//! Rule reports: ranked tables, sentences, rule graphs and recommended
//! actions.

mod actions;
mod graph;
mod verbalize;

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::itemset::{parse_items, render_items, Dictionary, Item};
use crate::miner::{MiningParams, Rule, RuleKey};
use crate::pipeline::PracticeKind;

pub use actions::{annotate_actions, attribute_family, default_mappings, ActionMapping, Annotation, COMMITTEE_CAVEAT};
pub use graph::export_graph;
pub use verbalize::verbalize;

pub const RULES_HEADER: [&str; 6] = ["lhs", "rhs", "support", "confidence", "lift", "count"];

/// Shown in place of a table when a run produced nothing.
pub const NO_RULES_NOTE: &str = "no rules at these thresholds; consider collecting more data";

/// A rule with its items spelled out, independent of any dictionary.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleRow {
    pub lhs: Vec<Item>,
    pub rhs: Vec<Item>,
    pub support: f64,
    pub confidence: f64,
    pub lift: f64,
    pub count: usize,
}

impl RuleRow {
    pub fn from_rule(rule: &Rule, dictionary: &Dictionary) -> Self {
        RuleRow {
            lhs: dictionary.resolve(&rule.antecedent),
            rhs: dictionary.resolve(&rule.consequent),
            support: rule.support,
            confidence: rule.confidence,
            lift: rule.lift,
            count: rule.count,
        }
    }

    pub fn lhs_text(&self) -> String {
        render_items(&self.lhs)
    }

    pub fn rhs_text(&self) -> String {
        render_items(&self.rhs)
    }

    fn key(&self) -> RuleKey {
        RuleKey {
            lift: self.lift,
            lhs: self.lhs_text(),
            rhs: self.rhs_text(),
        }
    }
}

/// Ranks rows the same way the miner ranks rules.
pub fn sort_rows(rows: &mut [RuleRow]) {
    rows.sort_by_cached_key(RuleRow::key);
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleReport {
    pub params: MiningParams,
    pub kind: PracticeKind,
    pub rules: Vec<RuleRow>,
    /// `None` where a rule has several consequent items.
    pub verbalizations: Vec<Option<String>>,
    /// Filled by [`annotate_actions`]; one list per rule.
    pub annotations: Vec<Vec<Annotation>>,
    pub generated_at: String,
}

impl RuleReport {
    pub fn new(kind: PracticeKind, params: MiningParams, mut rules: Vec<RuleRow>) -> Self {
        sort_rows(&mut rules);
        let verbalizations = rules.iter().map(|r| verbalize(r, kind).ok()).collect();
        RuleReport {
            params,
            kind,
            annotations: vec![Vec::new(); rules.len()],
            rules,
            verbalizations,
            generated_at: chrono::Utc::now().format("%Y-%m-%dT%H:%M:%SZ").to_string(),
        }
    }

    pub fn from_rules(kind: PracticeKind, params: MiningParams, rules: &[Rule], dictionary: &Dictionary) -> Self {
        let rows = rules.iter().map(|r| RuleRow::from_rule(r, dictionary)).collect();
        Self::new(kind, params, rows)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Csv,
    Markdown,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            "markdown" | "md" => Ok(Format::Markdown),
            _ => Err(Error::UnknownFormat(s.to_owned())),
        }
    }
}

/// Renders the rule table. CSV carries full precision; text and markdown
/// show four decimals.
pub fn render_table(report: &RuleReport, format: Format) -> String {
    match format {
        Format::Csv => rules_to_csv(&report.rules),
        Format::Markdown => {
            let mut out = format!("| {} |\n|---|---|---:|---:|---:|---:|\n", RULES_HEADER.join(" | "));
            for r in &report.rules {
                let _ = writeln!(
                    out,
                    "| {} | {} | {:.4} | {:.4} | {:.4} | {} |",
                    r.lhs_text().replace('|', "\\|"),
                    r.rhs_text().replace('|', "\\|"),
                    r.support,
                    r.confidence,
                    r.lift,
                    r.count
                );
            }
            out
        }
        Format::Text => {
            let cells: Vec<[String; 6]> = report
                .rules
                .iter()
                .map(|r| {
                    [
                        r.lhs_text(),
                        r.rhs_text(),
                        format!("{:.4}", r.support),
                        format!("{:.4}", r.confidence),
                        format!("{:.4}", r.lift),
                        r.count.to_string(),
                    ]
                })
                .collect();
            let mut widths = RULES_HEADER.map(str::len);
            for row in &cells {
                for (w, c) in widths.iter_mut().zip(row) {
                    *w = (*w).max(c.chars().count());
                }
            }
            let line = |row: [&str; 6]| {
                let mut s = String::new();
                for (i, (c, w)) in row.iter().zip(widths).enumerate() {
                    if i > 0 {
                        s.push_str("  ");
                    }
                    if i < 2 {
                        let _ = write!(s, "{c:<w$}");
                    } else {
                        let _ = write!(s, "{c:>w$}");
                    }
                }
                s.trim_end().to_owned() + "\n"
            };
            let mut out = line(RULES_HEADER);
            for row in &cells {
                out.push_str(&line([&row[0], &row[1], &row[2], &row[3], &row[4], &row[5]]));
            }
            out
        }
    }
}

pub fn rules_to_csv(rows: &[RuleRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(RULES_HEADER).expect("in-memory write");
    for r in rows {
        w.write_record([
            r.lhs_text(),
            r.rhs_text(),
            r.support.to_string(),
            r.confidence.to_string(),
            r.lift.to_string(),
            r.count.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn load_rules_csv(path: &Path) -> Result<Vec<RuleRow>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_rules_csv(file, path)
}

/// Parses a rule table written by [`rules_to_csv`].
pub fn read_rules_csv<R: Read>(reader: R, source: &Path) -> Result<Vec<RuleRow>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(reader);
    let mut records = rdr.records();
    let at = |e: csv::Error| Error::schema(source, e.position().map(|p| p.line()), e.to_string());
    match records.next() {
        Some(h) => {
            let h = h.map_err(at)?;
            if h.iter().collect::<Vec<_>>() != RULES_HEADER {
                return Err(Error::schema(
                    source,
                    Some(1),
                    format!("header must be `{}`", RULES_HEADER.join(",")),
                ));
            }
        }
        None => return Err(Error::schema(source, Some(1), "missing header")),
    }
    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(at)?;
        let line = record.position().map(|p| p.line());
        let fail = |msg: String| Error::schema(source, line, msg);
        if record.len() != RULES_HEADER.len() {
            return Err(fail(format!("expected 6 fields, found {}", record.len())));
        }
        let num = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .map_err(|_| fail(format!("{} `{}` is not a number", RULES_HEADER[i], &record[i])))
        };
        let parse_side = |i: usize| parse_items(&record[i]).map_err(|e| fail(e.to_string()));
        rows.push(RuleRow {
            lhs: parse_side(0)?,
            rhs: parse_side(1)?,
            support: num(2)?,
            confidence: num(3)?,
            lift: num(4)?,
            count: record[5]
                .parse()
                .map_err(|_| fail(format!("count `{}` is not an integer", &record[5])))?,
        });
    }
    Ok(rows)
}

/// Plain-text report over one or more datasets. The first line carries the
/// generation timestamp and is the only line that varies between runs.
pub fn render_report(reports: &[RuleReport]) -> String {
    let mut out = String::new();
    let stamp = reports.first().map(|r| r.generated_at.as_str()).unwrap_or("");
    let _ = writeln!(out, "# generated {stamp}");
    for report in reports {
        let p = &report.params;
        let _ = writeln!(out, "\n== {} ==", report.kind);
        let _ = writeln!(
            out,
            "support >= {}, confidence >= {}, minlen {}, maxlen {}, max consequent {}",
            p.min_support, p.min_confidence, p.min_len, p.max_len, p.max_consequent_len
        );
        if report.rules.is_empty() {
            let _ = writeln!(out, "\n{NO_RULES_NOTE}");
            continue;
        }
        let _ = writeln!(out, "\n{} rules, ordered by lift:\n", report.rules.len());
        out.push_str(&render_table(report, Format::Text));
        let _ = writeln!(out, "\nRules in words:");
        for (i, v) in report.verbalizations.iter().enumerate() {
            match v {
                Some(s) => {
                    let _ = writeln!(out, "{:>3}. {s}", i + 1);
                }
                None => {
                    let _ = writeln!(out, "{:>3}. (multi-item consequent, see table)", i + 1);
                }
            }
        }
        if report.annotations.iter().any(|a| !a.is_empty()) {
            let _ = writeln!(out, "\nRecommended actions:");
            for (i, notes) in report.annotations.iter().enumerate() {
                for a in notes {
                    let _ = writeln!(out, "{:>3}. {a}", i + 1);
                }
            }
            let _ = writeln!(out, "\n{COMMITTEE_CAVEAT}");
        }
    }
    out
}

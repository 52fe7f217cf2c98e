use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::RuleReport;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// DOT digraph of the report: one node per item, one edge from each
/// antecedent item to each consequent item, labelled with the rule's lift.
pub fn export_graph(report: &RuleReport) -> String {
    let items: BTreeSet<String> = report
        .rules
        .iter()
        .flat_map(|r| r.lhs.iter().chain(&r.rhs))
        .map(|i| i.to_string())
        .collect();
    let index = |text: &str| items.iter().position(|t| t == text).expect("collected above");

    let mut out = format!("digraph {}_rules {{\n", report.kind.short());
    out.push_str("  rankdir=LR;\n  node [shape=box];\n");
    for (i, text) in items.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(text));
    }
    for rule in &report.rules {
        for a in &rule.lhs {
            for c in &rule.rhs {
                let _ = writeln!(
                    out,
                    "  n{} -> n{} [label=\"{:.2}\"];",
                    index(&a.to_string()),
                    index(&c.to_string()),
                    rule.lift
                );
            }
        }
    }
    out.push_str("}\n");
    out
}

use std::fmt;

use super::RuleReport;

/// Printed with every set of recommendations.
pub const COMMITTEE_CAVEAT: &str = "These are suggestions only. Deciding on and carrying out any measure is \
                                    for the ethics committee alone.";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionMapping {
    /// Attribute family: a column prefix such as `age`, or a practice value.
    pub attribute: String,
    pub factors: Vec<String>,
    pub actions: Vec<String>,
}

impl ActionMapping {
    fn new(attribute: &str, factors: &[&str], actions: &[&str]) -> Self {
        ActionMapping {
            attribute: attribute.to_owned(),
            factors: factors.iter().map(|s| (*s).to_owned()).collect(),
            actions: actions.iter().map(|s| (*s).to_owned()).collect(),
        }
    }
}

const STATEMENT_FACTORS: [&str; 7] = [
    "Conflict-related",
    "Behavioural",
    "Performance-related",
    "Propositional",
    "Preventive",
    "Punitive",
    "Critical",
];
const STATEMENT_ACTIONS: &str = "Dialogue and deliberation processes, preparation of reports (on improvement, best \
                                 practices, conflict resolution, etc.), public records, preparation of specific \
                                 guidelines, etc.";
const PRACTICE_FACTORS: [&str; 3] = ["Axiological", "behavioural", "procedural"];
const PRACTICE_ACTIONS: &str = "Records, visibility, promotion, encouragement";

/// The eight stock mappings from attribute family to factors and actions.
pub fn default_mappings() -> Vec<ActionMapping> {
    vec![
        ActionMapping::new("tags", &STATEMENT_FACTORS, &[STATEMENT_ACTIONS]),
        ActionMapping::new("description", &STATEMENT_FACTORS, &[STATEMENT_ACTIONS]),
        ActionMapping::new("age", &["Generational"], &["Multi-topic or specific training"]),
        ActionMapping::new("department", &["Corporate"], &["Redesign, culture, specific training"]),
        ActionMapping::new(
            "position",
            &["Sector-specific"],
            &["Culture, specific training, character"],
        ),
        ActionMapping::new(
            "gender",
            &["Gender"],
            &["Personal, departmental or multi-topic training, code of conduct, equality plan"],
        ),
        ActionMapping::new("good_practice", &PRACTICE_FACTORS, &[PRACTICE_ACTIONS]),
        ActionMapping::new("bad_practice", &PRACTICE_FACTORS, &[PRACTICE_ACTIONS]),
    ]
}

/// Family an item belongs to for action lookup: the practice value for the
/// `practice` column, otherwise the column name up to the first `_`.
pub fn attribute_family(attribute: &str, value: &str) -> String {
    if attribute == "practice" {
        return value.to_owned();
    }
    attribute.split('_').next().unwrap_or(attribute).to_owned()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub attribute: String,
    /// `None` when no mapping covers the attribute.
    pub mapping: Option<ActionMapping>,
}

impl fmt::Display for Annotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mapping {
            Some(m) => write!(
                f,
                "{}: factors {}; actions: {}",
                self.attribute,
                m.factors.join(", "),
                m.actions.join("; ")
            ),
            None => write!(f, "{}: no mapping", self.attribute),
        }
    }
}

/// Attaches one annotation per distinct attribute family in each rule.
pub fn annotate_actions(mut report: RuleReport, mapping: &[ActionMapping]) -> RuleReport {
    report.annotations = report
        .rules
        .iter()
        .map(|rule| {
            let mut families: Vec<String> = Vec::new();
            for item in rule.lhs.iter().chain(&rule.rhs) {
                let family = attribute_family(&item.attribute, &item.value);
                if !families.contains(&family) {
                    families.push(family);
                }
            }
            families
                .into_iter()
                .map(|attribute| Annotation {
                    mapping: mapping
                        .iter()
                        .find(|m| m.attribute.eq_ignore_ascii_case(&attribute))
                        .cloned(),
                    attribute,
                })
                .collect()
        })
        .collect();
    report
}

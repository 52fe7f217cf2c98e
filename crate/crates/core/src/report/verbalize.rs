use crate::error::{Error, Result};
use crate::itemset::Item;
use crate::pipeline::{PracticeKind, NOT_APPLICABLE};

use super::RuleRow;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Reporting,
    Reported,
}

fn split_attribute(attribute: &str) -> (&str, Option<Side>) {
    if let Some(family) = attribute.strip_suffix("_reporting_user") {
        (family, Some(Side::Reporting))
    } else if let Some(family) = attribute.strip_suffix("_reported_user") {
        (family, Some(Side::Reported))
    } else {
        (attribute, None)
    }
}

fn display_value(family: &str, value: &str) -> String {
    if value == NOT_APPLICABLE {
        return "not applicable".to_owned();
    }
    match (family, value) {
        ("department", "hr") => "HR".to_owned(),
        ("gender", "f") => "female".to_owned(),
        ("gender", "m") => "male".to_owned(),
        _ => value.to_owned(),
    }
}

/// `named` records whether the reporting user has been mentioned yet, so
/// later clauses can refer back with "their".
fn clause(item: &Item, kind: PracticeKind, named: &mut bool) -> String {
    let (family, side) = split_attribute(&item.attribute);
    let value = display_value(family, &item.value);
    let band = item
        .value
        .split_once('-')
        .filter(|(l, u)| l.parse::<u32>().is_ok() && u.parse::<u32>().is_ok());

    let side = match side {
        Some(side) => side,
        None => return format!("{} is {value}", item.attribute.replace('_', " ")),
    };
    match (kind, side) {
        (PracticeKind::Good, _) => match (family, band) {
            ("age", Some((l, u))) => format!("the announcer is aged between {l} and {u}"),
            _ => format!("the announcer's {} is {value}", family.replace('_', " ")),
        },
        (PracticeKind::Bad, Side::Reporting) => {
            let text = match (family, band) {
                ("age", Some((l, u))) => format!("the reporting user is aged between {l} and {u}"),
                ("department", _) => format!("the reporting department is {value}"),
                ("gender" | "position", _) if *named => format!("their {family} is {value}"),
                _ => format!("the reporting user's {} is {value}", family.replace('_', " ")),
            };
            *named = true;
            text
        }
        (PracticeKind::Bad, Side::Reported) => match (family, band) {
            ("age", Some((l, u))) => format!("the reported user is aged between {l} and {u}"),
            _ => format!("the reported user's {} is {value}", family.replace('_', " ")),
        },
    }
}

/// Reads a single-consequent rule as an English sentence. Bad-practice
/// rules speak of the reporting and reported user, good-practice rules of
/// the announcer.
pub fn verbalize(rule: &RuleRow, kind: PracticeKind) -> Result<String> {
    let [consequent] = rule.rhs.as_slice() else {
        return Err(Error::MultiConsequent(rule.rhs.len()));
    };
    if rule.lhs.is_empty() {
        return Err(Error::MalformedRule("empty antecedent".into()));
    }
    let mut named = false;
    let lhs: Vec<String> = rule.lhs.iter().map(|i| clause(i, kind, &mut named)).collect();
    Ok(format!(
        "When {}, {}.",
        lhs.join(" and "),
        clause(consequent, kind, &mut named)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(lhs: &[&str], rhs: &[&str]) -> RuleRow {
        RuleRow {
            lhs: lhs.iter().map(|s| Item::parse(s).unwrap()).collect(),
            rhs: rhs.iter().map(|s| Item::parse(s).unwrap()).collect(),
            support: 0.5,
            confidence: 1.0,
            lift: 1.0,
            count: 1,
        }
    }

    #[test]
    fn bad_practice_sentence() {
        let r = rule(&["age_reporting_user=30-34"], &["department_reporting_user=production"]);
        assert_eq!(
            verbalize(&r, PracticeKind::Bad).unwrap(),
            "When the reporting user is aged between 30 and 34, the reporting department is production."
        );
    }

    #[test]
    fn good_practice_sentence() {
        let r = rule(&["department_reporting_user=hr"], &["position_reporting_user=employee"]);
        assert_eq!(
            verbalize(&r, PracticeKind::Good).unwrap(),
            "When the announcer's department is HR, the announcer's position is employee."
        );
    }

    #[test]
    fn joined_antecedent_and_reported_side() {
        let r = rule(
            &["gender_reporting_user=f", "position_reporting_user=manager"],
            &["gender_reported_user=m"],
        );
        assert_eq!(
            verbalize(&r, PracticeKind::Bad).unwrap(),
            "When the reporting user's gender is female and their position is manager, the reported user's gender is male."
        );
        let r = rule(
            &["age_reported_user=40-44"],
            &["department_reported_user=not_applicable"],
        );
        assert_eq!(
            verbalize(&r, PracticeKind::Bad).unwrap(),
            "When the reported user is aged between 40 and 44, the reported user's department is not applicable."
        );
    }

    #[test]
    fn their_refers_back() {
        let r = rule(&["gender_reporting_user=f"], &["position_reporting_user=employee"]);
        assert_eq!(
            verbalize(&r, PracticeKind::Bad).unwrap(),
            "When the reporting user's gender is female, their position is employee."
        );
        let r = rule(&["gender_reported_user=m"], &["position_reporting_user=employee"]);
        assert_eq!(
            verbalize(&r, PracticeKind::Bad).unwrap(),
            "When the reported user's gender is male, the reporting user's position is employee."
        );
    }

    #[test]
    fn multi_consequent_is_refused() {
        let r = rule(&["a=1"], &["b=2", "c=3"]);
        assert!(matches!(
            verbalize(&r, PracticeKind::Bad),
            Err(Error::MultiConsequent(2))
        ));
    }

    #[test]
    fn distinct_rules_read_differently() {
        let items = [
            "age_reporting_user=30-34",
            "age_reported_user=30-34",
            "gender_reporting_user=f",
            "gender_reported_user=f",
            "gender_reporting_user=m",
            "position_reporting_user=employee",
            "position_reported_user=employee",
            "department_reporting_user=sales",
            "department_reported_user=sales",
        ];
        let mut seen = std::collections::HashSet::new();
        for a in items {
            for b in items.iter().filter(|&&b| b != a) {
                let sentence = verbalize(&rule(&[a], &[b]), PracticeKind::Bad).unwrap();
                assert!(seen.insert(sentence), "{a} => {b}");
            }
        }
    }
}

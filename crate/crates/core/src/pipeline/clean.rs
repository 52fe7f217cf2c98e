use std::collections::{HashMap, HashSet};
use std::fmt;

use chrono::NaiveDate;

use super::{NotificationRecord, PracticeKind, UserRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CleaningAction {
    Removed,
    Modified,
    /// Kept unchanged but worth a reviewer's attention.
    Flagged,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleaningEntry {
    pub table: &'static str,
    /// 1-based data row within the input table.
    pub row: usize,
    pub action: CleaningAction,
    pub reason: String,
}

impl fmt::Display for CleaningEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let action = match self.action {
            CleaningAction::Removed => "removed",
            CleaningAction::Modified => "modified",
            CleaningAction::Flagged => "flagged",
        };
        write!(f, "{} row {}: {}: {}", self.table, self.row, action, self.reason)
    }
}

/// Every change made by [`clean`], in input order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CleaningReport {
    pub entries: Vec<CleaningEntry>,
}

impl CleaningReport {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn removals(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| e.action == CleaningAction::Removed)
            .count()
    }

    fn push(&mut self, table: &'static str, row: usize, action: CleaningAction, reason: String) {
        self.entries.push(CleaningEntry {
            table,
            row,
            action,
            reason,
        });
    }
}

impl fmt::Display for CleaningReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return writeln!(f, "no cleaning actions");
        }
        writeln!(
            f,
            "{} cleaning actions ({} removals)",
            self.entries.len(),
            self.removals()
        )?;
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

fn normalize(field: &str, value: &mut String, row: usize, report: &mut CleaningReport) {
    let lower = value.trim().to_lowercase();
    if lower != *value {
        report.push(
            "users",
            row,
            CleaningAction::Modified,
            format!("{field} `{value}` normalized to `{lower}`"),
        );
        *value = lower;
    }
}

/// Removes duplicate and dangling rows and repairs data-entry errors.
/// Never fails; everything it touches is logged in the report.
pub fn clean(
    users: Vec<UserRecord>,
    notifications: Vec<NotificationRecord>,
) -> (Vec<UserRecord>, Vec<NotificationRecord>, CleaningReport) {
    let mut report = CleaningReport::default();

    let mut ids = HashSet::new();
    let mut kept_users = Vec::with_capacity(users.len());
    for (i, mut u) in users.into_iter().enumerate() {
        let row = i + 1;
        if !ids.insert(u.id.clone()) {
            report.push(
                "users",
                row,
                CleaningAction::Removed,
                format!("duplicate user id `{}`", u.id),
            );
            continue;
        }
        normalize("position", &mut u.position, row, &mut report);
        normalize("department", &mut u.department, row, &mut report);
        normalize("gender", &mut u.gender, row, &mut report);
        if let Some(age) = u.age.filter(|a| !(16..=100).contains(a)) {
            report.push(
                "users",
                row,
                CleaningAction::Modified,
                format!("age {age} outside [16, 100] cleared"),
            );
            u.age = None;
        }
        kept_users.push(u);
    }

    type Key = (PracticeKind, NaiveDate, String, Option<String>);
    let mut first_seen: HashMap<Key, usize> = HashMap::new();
    let mut kept = Vec::with_capacity(notifications.len());
    for (i, mut n) in notifications.into_iter().enumerate() {
        let row = i + 1;
        if !ids.contains(&n.reporting_user) {
            report.push(
                "notifications",
                row,
                CleaningAction::Removed,
                format!("reporting user `{}` not in user table", n.reporting_user),
            );
            continue;
        }
        if n.practice == PracticeKind::Good {
            if let Some(other) = n.reported_user.take() {
                report.push(
                    "notifications",
                    row,
                    CleaningAction::Modified,
                    format!("reported user `{other}` dropped from good-practice notification"),
                );
            }
        }
        let key = (n.practice, n.date, n.reporting_user.clone(), n.reported_user.clone());
        if let Some(&orig) = first_seen.get(&key) {
            report.push(
                "notifications",
                row,
                CleaningAction::Removed,
                format!("duplicate of row {orig}"),
            );
            continue;
        }
        first_seen.insert(key, row);
        if let Some(other) = n.reported_user.as_ref().filter(|r| !ids.contains(*r)) {
            report.push(
                "notifications",
                row,
                CleaningAction::Flagged,
                format!("reported user `{other}` not in user table; attributes become not_applicable"),
            );
        }
        kept.push(n);
    }
    (kept_users, kept, report)
}

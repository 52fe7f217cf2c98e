//! Loading, cleaning and preparing the user and notification tables.
//!
//! Raw inputs are two CSV tables. Cleaning removes duplicates and rows
//! pointing at unknown reporters, logging every change. Preparation joins
//! user attributes onto each notification, bins ages into five-year bands
//! and splits the result into a bad-practice and a good-practice dataset.

mod clean;
mod load;
mod prepare;

use std::fmt;

use chrono::NaiveDate;

use crate::error::{Error, Result};

pub use clean::{clean, CleaningAction, CleaningEntry, CleaningReport};
pub use load::{
    load_notifications, load_users, notifications_to_csv, read_notifications, read_users, users_to_csv,
    NOTIFICATION_HEADER, USER_HEADER,
};
pub use prepare::{
    bin_age, prepare, to_transactions, EncodingConfig, PreparedDataset, BAD_COLUMNS, GOOD_COLUMNS, NOT_APPLICABLE,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PracticeKind {
    Good,
    Bad,
}

impl PracticeKind {
    /// Accepts the long forms and the short `b_p` (good) / `m_p` (bad) codes.
    pub fn parse(code: &str) -> Result<Self> {
        match code.trim().to_ascii_lowercase().as_str() {
            "good_practice" | "b_p" => Ok(PracticeKind::Good),
            "bad_practice" | "m_p" => Ok(PracticeKind::Bad),
            _ => Err(Error::UnknownPractice { code: code.to_owned() }),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PracticeKind::Good => "good_practice",
            PracticeKind::Bad => "bad_practice",
        }
    }

    /// `good` or `bad`, as used in output file names.
    pub fn short(self) -> &'static str {
        match self {
            PracticeKind::Good => "good",
            PracticeKind::Bad => "bad",
        }
    }
}

impl fmt::Display for PracticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserRecord {
    pub id: String,
    pub name: String,
    pub position: String,
    pub department: String,
    pub gender: String,
    pub age: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotificationRecord {
    pub practice: PracticeKind,
    pub date: NaiveDate,
    pub reporting_user: String,
    pub reported_user: Option<String>,
    /// Kept for qualitative summaries; never mined.
    pub tags: Vec<String>,
    pub description: String,
}

/// Parses `D/M/Y` or ISO `YYYY-MM-DD`.
pub fn parse_date(text: &str) -> Result<NaiveDate> {
    let text = text.trim();
    NaiveDate::parse_from_str(text, "%Y-%m-%d")
        .or_else(|_| NaiveDate::parse_from_str(text, "%d/%m/%Y"))
        .map_err(|_| Error::InvalidDate(text.to_owned()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn practice_codes() {
        assert_eq!(PracticeKind::parse("b_p").unwrap(), PracticeKind::Good);
        assert_eq!(PracticeKind::parse("m_p").unwrap(), PracticeKind::Bad);
        assert_eq!(PracticeKind::parse("good_practice").unwrap(), PracticeKind::Good);
        assert_eq!(PracticeKind::parse(" bad_practice ").unwrap(), PracticeKind::Bad);
        let err = PracticeKind::parse("x_p").unwrap_err().to_string();
        assert!(err.contains("b_p") && err.contains("m_p"), "{err}");
    }

    #[test]
    fn dates() {
        assert_eq!(parse_date("10/12/2012").unwrap().to_string(), "2012-12-10");
        assert_eq!(parse_date("1/2/2012").unwrap().to_string(), "2012-02-01");
        assert_eq!(parse_date("2012-02-01").unwrap().to_string(), "2012-02-01");
        assert!(parse_date("31/2/2012").is_err());
        assert!(parse_date("yesterday").is_err());
    }
}

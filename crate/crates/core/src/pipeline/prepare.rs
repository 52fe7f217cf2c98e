use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};
use crate::itemset::{encode_row, Dictionary, TransactionDb};

use super::{NotificationRecord, PracticeKind, UserRecord};

/// Filler for attributes of a party that is absent or unknown.
pub const NOT_APPLICABLE: &str = "not_applicable";

pub const BAD_COLUMNS: [&str; 11] = [
    "practice",
    "reporting_user",
    "reported_user",
    "position_reporting_user",
    "department_reporting_user",
    "gender_reporting_user",
    "age_reporting_user",
    "position_reported_user",
    "department_reported_user",
    "gender_reported_user",
    "age_reported_user",
];

pub const GOOD_COLUMNS: [&str; 6] = [
    "practice",
    "reporting_user",
    "position_reporting_user",
    "department_reporting_user",
    "gender_reporting_user",
    "age_reporting_user",
];

/// Five-year band `L-U` with `L = 5 * floor(age / 5)`.
pub fn bin_age(age: u32) -> Result<String> {
    if !(16..=100).contains(&age) {
        return Err(Error::AgeOutOfRange(age as i64));
    }
    let low = age / 5 * 5;
    Ok(format!("{}-{}", low, low + 4))
}

/// One practice kind's joined, binned rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreparedDataset {
    pub kind: PracticeKind,
    pub rows: Vec<Vec<String>>,
}

impl PreparedDataset {
    pub fn new(kind: PracticeKind) -> Self {
        PreparedDataset { kind, rows: Vec::new() }
    }

    pub fn columns(&self) -> &'static [&'static str] {
        columns_for(self.kind)
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(column, value)` pairs of row `i`.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (&str, &str)> {
        self.columns()
            .iter()
            .copied()
            .zip(self.rows[i].iter().map(String::as_str))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(self.columns()).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    pub fn load_csv(path: &Path) -> Result<Self> {
        let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_csv(file, path)
    }

    /// Parses a prepared table; the header decides the practice kind.
    pub fn read_csv<R: Read>(reader: R, source: &Path) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(reader);
        let mut records = rdr.records();
        let header = match records.next() {
            Some(r) => r.map_err(|e| Error::schema(source, e.position().map(|p| p.line()), e.to_string()))?,
            None => return Err(Error::schema(source, Some(1), "missing header")),
        };
        let header: Vec<&str> = header.iter().collect();
        let kind = if header == BAD_COLUMNS {
            PracticeKind::Bad
        } else if header == GOOD_COLUMNS {
            PracticeKind::Good
        } else {
            return Err(Error::schema(
                source,
                Some(1),
                format!(
                    "header is neither the bad-practice nor the good-practice column list: `{}`",
                    header.join(",")
                ),
            ));
        };
        let width = columns_for(kind).len();
        let mut ds = PreparedDataset::new(kind);
        for record in records {
            let record = record.map_err(|e| Error::schema(source, e.position().map(|p| p.line()), e.to_string()))?;
            let line = record.position().map(|p| p.line());
            if record.len() != width {
                return Err(Error::schema(
                    source,
                    line,
                    format!("expected {width} fields, found {}", record.len()),
                ));
            }
            if record[0] != *kind.as_str() {
                return Err(Error::schema(
                    source,
                    line,
                    format!("practice `{}` in a {} dataset", &record[0], kind),
                ));
            }
            ds.rows.push(record.iter().map(str::to_owned).collect());
        }
        Ok(ds)
    }
}

fn columns_for(kind: PracticeKind) -> &'static [&'static str] {
    match kind {
        PracticeKind::Bad => &BAD_COLUMNS,
        PracticeKind::Good => &GOOD_COLUMNS,
    }
}

fn attributes(user: &UserRecord) -> Result<[String; 4]> {
    let age = match user.age {
        Some(a) => bin_age(a)?,
        None => String::new(),
    };
    Ok([user.position.clone(), user.department.clone(), user.gender.clone(), age])
}

/// Joins user attributes onto cleaned notifications and splits them into
/// the bad-practice and good-practice datasets. Tags and descriptions are
/// dropped; an absent or unknown reported party becomes `not_applicable`.
pub fn prepare(
    users: &[UserRecord],
    notifications: &[NotificationRecord],
) -> Result<(PreparedDataset, PreparedDataset)> {
    let by_id: HashMap<&str, &UserRecord> = users.iter().map(|u| (u.id.as_str(), u)).collect();
    let mut bad = PreparedDataset::new(PracticeKind::Bad);
    let mut good = PreparedDataset::new(PracticeKind::Good);
    for n in notifications {
        let reporter = by_id
            .get(n.reporting_user.as_str())
            .ok_or_else(|| Error::UnknownReportingUser(n.reporting_user.clone()))?;
        let mut row = vec![n.practice.as_str().to_owned(), n.reporting_user.clone()];
        match n.practice {
            PracticeKind::Good => {
                row.extend(attributes(reporter)?);
                good.rows.push(row);
            }
            PracticeKind::Bad => {
                row.push(n.reported_user.clone().unwrap_or_default());
                row.extend(attributes(reporter)?);
                match n.reported_user.as_deref().and_then(|id| by_id.get(id)) {
                    Some(reported) => row.extend(attributes(reported)?),
                    None => row.extend(std::iter::repeat_n(NOT_APPLICABLE.to_owned(), 4)),
                }
                bad.rows.push(row);
            }
        }
    }
    Ok((bad, good))
}

/// Which prepared columns never become items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodingConfig {
    pub excluded: HashSet<String>,
}

impl Default for EncodingConfig {
    fn default() -> Self {
        EncodingConfig {
            excluded: ["practice", "reporting_user", "reported_user"]
                .into_iter()
                .map(str::to_owned)
                .collect(),
        }
    }
}

/// Encodes each prepared row as one transaction over a fresh dictionary.
pub fn to_transactions(ds: &PreparedDataset, config: &EncodingConfig) -> Result<TransactionDb> {
    let mut dictionary = Dictionary::new();
    let mut transactions = Vec::with_capacity(ds.len());
    for i in 0..ds.len() {
        transactions.push(encode_row(i, ds.row(i), &config.excluded, &mut dictionary)?);
    }
    Ok(TransactionDb::new(dictionary, transactions))
}

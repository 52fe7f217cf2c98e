use std::collections::HashSet;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

use super::{parse_date, NotificationRecord, PracticeKind, UserRecord};

pub const USER_HEADER: [&str; 6] = ["ID", "name", "position", "department", "gender", "age"];
pub const NOTIFICATION_HEADER: [&str; 6] = [
    "practice",
    "date",
    "reporting_user",
    "reported_user",
    "tags",
    "description",
];

fn writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Renders a users table in the loadable format.
pub fn users_to_csv(users: &[UserRecord]) -> String {
    let mut w = writer();
    w.write_record(USER_HEADER).expect("in-memory write");
    for u in users {
        let age = u.age.map(|a| a.to_string()).unwrap_or_default();
        w.write_record([&u.id, &u.name, &u.position, &u.department, &u.gender, &age])
            .expect("in-memory write");
    }
    finish(w)
}

/// Renders a notifications table in the loadable format, dates in ISO form.
pub fn notifications_to_csv(notifications: &[NotificationRecord]) -> String {
    let mut w = writer();
    w.write_record(NOTIFICATION_HEADER).expect("in-memory write");
    for n in notifications {
        w.write_record([
            n.practice.as_str(),
            &n.date.format("%Y-%m-%d").to_string(),
            &n.reporting_user,
            n.reported_user.as_deref().unwrap_or(""),
            &n.tags.join(", "),
            &n.description,
        ])
        .expect("in-memory write");
    }
    finish(w)
}

fn open(path: &Path) -> Result<File> {
    File::open(path).map_err(|e| Error::io(path, e))
}

/// Reads all data rows after checking the header, yielding
/// `(line, fields)` with fields trimmed.
fn read_table<R: Read>(reader: R, source: &Path, header: &[&str]) -> Result<Vec<(u64, Vec<String>)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();
    let first = match records.next() {
        Some(r) => r.map_err(|e| csv_error(source, e))?,
        None => return Err(Error::schema(source, Some(1), "missing header")),
    };
    let got: Vec<&str> = first.iter().map(|f| f.trim_start_matches('\u{feff}')).collect();
    if got != header {
        return Err(Error::schema(
            source,
            Some(1),
            format!("header must be `{}`, found `{}`", header.join(","), got.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for record in records {
        let record = record.map_err(|e| csv_error(source, e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != header.len() {
            return Err(Error::schema(
                source,
                Some(line),
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        rows.push((line, record.iter().map(str::to_owned).collect()));
    }
    Ok(rows)
}

fn csv_error(source: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line());
    Error::schema(source, line, e.to_string())
}

pub fn load_users(path: &Path) -> Result<Vec<UserRecord>> {
    read_users(open(path)?, path)
}

/// Parses a users table; `source` labels errors.
pub fn read_users<R: Read>(reader: R, source: &Path) -> Result<Vec<UserRecord>> {
    let mut seen = HashSet::new();
    let mut users = Vec::new();
    for (line, f) in read_table(reader, source, &USER_HEADER)? {
        let [id, name, position, department, gender, age]: [String; 6] = f.try_into().expect("field count checked");
        if id.is_empty() {
            return Err(Error::schema(source, Some(line), "empty user id"));
        }
        if !seen.insert(id.clone()) {
            return Err(Error::schema(source, Some(line), Error::DuplicateUser(id).to_string()));
        }
        let age = if age.is_empty() {
            None
        } else {
            Some(
                age.parse::<u32>()
                    .map_err(|_| Error::schema(source, Some(line), format!("unparseable age `{age}`")))?,
            )
        };
        users.push(UserRecord {
            id,
            name,
            position,
            department,
            gender,
            age,
        });
    }
    Ok(users)
}

pub fn load_notifications(path: &Path) -> Result<Vec<NotificationRecord>> {
    read_notifications(open(path)?, path)
}

/// Parses a notifications table. Unknown users are not checked here.
pub fn read_notifications<R: Read>(reader: R, source: &Path) -> Result<Vec<NotificationRecord>> {
    let mut out = Vec::new();
    for (line, f) in read_table(reader, source, &NOTIFICATION_HEADER)? {
        let [practice, date, reporting_user, reported_user, tags, description]: [String; 6] =
            f.try_into().expect("field count checked");
        let at = |e: Error| Error::schema(source, Some(line), e.to_string());
        let practice = PracticeKind::parse(&practice).map_err(at)?;
        let date = parse_date(&date).map_err(at)?;
        if reporting_user.is_empty() {
            return Err(Error::schema(source, Some(line), "empty reporting user"));
        }
        out.push(NotificationRecord {
            practice,
            date,
            reporting_user,
            reported_user: Some(reported_user).filter(|s| !s.is_empty()),
            tags: tags
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(str::to_owned)
                .collect(),
            description,
        });
    }
    Ok(out)
}

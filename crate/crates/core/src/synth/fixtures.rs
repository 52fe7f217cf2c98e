//! Constraint-built fixtures.
//!
//! The bad-practice fixture has 70 rows and the good-practice fixture 18.
//! Rows are laid out in blocks that fix which of the constrained items each
//! row carries; every other column is filled from a fixed cycle. Each build
//! is checked against its marginal counts and against the exhaustive miner
//! before it is returned.

use std::collections::HashMap;

use chrono::{Days, NaiveDate};

use crate::error::{Error, Result};
use crate::miner::MiningParams;
use crate::oracle::brute_force_mine;
use crate::pipeline::{
    prepare, to_transactions, EncodingConfig, NotificationRecord, PracticeKind, PreparedDataset, UserRecord,
};

/// `(antecedent, consequent, count)` of the rules the bad fixture must yield.
pub const BAD_FIXTURE_RULES: [(&str, &str, usize); 8] = [
    ("age_reporting_user=30-34", "department_reporting_user=production", 30),
    ("age_reporting_user=30-34", "position_reported_user=employee", 29),
    ("age_reporting_user=30-34", "gender_reporting_user=f", 28),
    ("age_reporting_user=30-34", "position_reporting_user=employee", 34),
    (
        "department_reporting_user=production",
        "position_reporting_user=employee",
        39,
    ),
    (
        "position_reported_user=employee",
        "position_reporting_user=employee",
        39,
    ),
    ("gender_reported_user=m", "position_reporting_user=employee", 28),
    ("gender_reporting_user=f", "position_reporting_user=employee", 35),
];

pub const GOOD_FIXTURE_RULES: [(&str, &str, usize); 2] = [
    ("department_reporting_user=hr", "position_reporting_user=employee", 12),
    ("gender_reporting_user=f", "position_reporting_user=employee", 12),
];

/// What a fixture must satisfy.
#[derive(Debug, Clone)]
pub struct FixtureConstraints {
    pub total_rows: usize,
    /// Exact support counts of `column=value` itemsets.
    pub counts: Vec<(Vec<&'static str>, usize)>,
    /// Mining run whose output must be exactly `rules`.
    pub params: MiningParams,
    pub rules: Vec<(&'static str, &'static str, usize)>,
}

fn reproduction_params() -> MiningParams {
    MiningParams {
        min_support: 0.4,
        min_confidence: 0.8,
        min_len: 2,
        max_len: 2,
        max_consequent_len: 1,
    }
}

pub fn bad_fixture_constraints() -> FixtureConstraints {
    const AGE: &str = "age_reporting_user=30-34";
    const PROD: &str = "department_reporting_user=production";
    const EMP: &str = "position_reporting_user=employee";
    const FEM: &str = "gender_reporting_user=f";
    const R_EMP: &str = "position_reported_user=employee";
    const R_MALE: &str = "gender_reported_user=m";
    FixtureConstraints {
        total_rows: 70,
        counts: vec![
            (vec![AGE], 34),
            (vec![PROD], 39),
            (vec![EMP], 62),
            (vec![FEM], 40),
            (vec![R_EMP], 40),
            (vec![R_MALE], 30),
            (vec![AGE, EMP], 34),
            (vec![AGE, PROD], 30),
            (vec![AGE, FEM], 28),
            (vec![AGE, R_EMP], 29),
            (vec![PROD, EMP], 39),
            (vec![FEM, EMP], 35),
            (vec![R_EMP, EMP], 39),
            (vec![R_MALE, EMP], 28),
        ],
        params: reproduction_params(),
        rules: BAD_FIXTURE_RULES.to_vec(),
    }
}

pub fn good_fixture_constraints() -> FixtureConstraints {
    const EMP: &str = "position_reporting_user=employee";
    const HR: &str = "department_reporting_user=hr";
    const FEM: &str = "gender_reporting_user=f";
    FixtureConstraints {
        total_rows: 18,
        counts: vec![
            (vec![EMP], 18),
            (vec![HR], 12),
            (vec![FEM], 12),
            (vec![HR, EMP], 12),
            (vec![FEM, EMP], 12),
            // 6 is forced by pigeonhole; 10 or more would add hr <=> f rules.
            (vec![HR, FEM], 8),
        ],
        params: reproduction_params(),
        rules: GOOD_FIXTURE_RULES.to_vec(),
    }
}

/// Round-robin filler for unconstrained columns.
struct Cycle {
    values: &'static [&'static str],
    next: usize,
}

impl Cycle {
    fn new(values: &'static [&'static str]) -> Self {
        Cycle { values, next: 0 }
    }

    fn take(&mut self) -> &'static str {
        let v = self.values[self.next % self.values.len()];
        self.next += 1;
        v
    }
}

/// Attributes of one party: position, department, gender, age band.
type Profile = [&'static str; 4];

/// A run of bad-practice rows sharing reporter-side flags, subdivided by
/// `(reported employee, reported male, rows)`.
struct BadBlock {
    age_30_34: bool,
    production: bool,
    female: bool,
    employee: bool,
    reported: &'static [(bool, bool, usize)],
}

#[rustfmt::skip]
const BAD_BLOCKS: [BadBlock; 8] = [
    BadBlock { age_30_34: true, production: true, female: true, employee: true, reported: &[(true, true, 6), (true, false, 14), (false, true, 4)] },
    BadBlock { age_30_34: true, production: true, female: false, employee: true, reported: &[(true, true, 1), (true, false, 4), (false, true, 1)] },
    BadBlock { age_30_34: true, production: false, female: true, employee: true, reported: &[(true, true, 2), (true, false, 2)] },
    BadBlock { age_30_34: false, production: true, female: false, employee: true, reported: &[(false, true, 5), (false, false, 4)] },
    BadBlock { age_30_34: false, production: false, female: true, employee: true, reported: &[(true, false, 3), (false, true, 3), (false, false, 1)] },
    BadBlock { age_30_34: false, production: false, female: false, employee: true, reported: &[(true, true, 1), (true, false, 6), (false, true, 5)] },
    BadBlock { age_30_34: false, production: false, female: true, employee: false, reported: &[(false, true, 1), (false, false, 4)] },
    BadBlock { age_30_34: false, production: false, female: false, employee: false, reported: &[(true, false, 1), (false, true, 1), (false, false, 1)] },
];

fn bad_profiles() -> Vec<(Profile, Profile)> {
    let mut positions = Cycle::new(&["manager", "business person"]);
    let mut departments = Cycle::new(&["sales", "purchasing", "hr"]);
    let mut ages = Cycle::new(&["20-24", "25-29", "35-39", "40-44", "45-49", "50-54", "55-59"]);
    let mut r_positions = Cycle::new(&["manager", "business person", "not_applicable"]);
    let mut r_departments = Cycle::new(&["sales", "purchasing", "production", "hr", "not_applicable"]);
    let mut r_genders = Cycle::new(&["f", "not_applicable"]);
    let mut r_ages = Cycle::new(&["25-29", "30-34", "35-39", "40-44", "45-49", "50-54", "55-59"]);

    let mut rows = Vec::with_capacity(70);
    for b in &BAD_BLOCKS {
        for &(r_employee, r_male, n) in b.reported {
            for _ in 0..n {
                let reporter = [
                    if b.employee { "employee" } else { positions.take() },
                    if b.production { "production" } else { departments.take() },
                    if b.female { "f" } else { "m" },
                    if b.age_30_34 { "30-34" } else { ages.take() },
                ];
                let reported = [
                    if r_employee { "employee" } else { r_positions.take() },
                    r_departments.take(),
                    if r_male { "m" } else { r_genders.take() },
                    r_ages.take(),
                ];
                rows.push((reporter, reported));
            }
        }
    }
    rows
}

fn good_profiles() -> Vec<Profile> {
    // (hr, female, rows)
    const BLOCKS: [(bool, bool, usize); 4] = [(true, true, 8), (true, false, 4), (false, true, 4), (false, false, 2)];
    let mut departments = Cycle::new(&["sales", "production"]);
    let mut ages = Cycle::new(&["20-24", "25-29", "30-34", "35-39", "40-44", "45-49", "50-54"]);
    let mut rows = Vec::with_capacity(18);
    for (hr, female, n) in BLOCKS {
        for _ in 0..n {
            rows.push([
                "employee",
                if hr { "hr" } else { departments.take() },
                if female { "f" } else { "m" },
                ages.take(),
            ]);
        }
    }
    rows
}

const NAMES: [&str; 9] = [
    "Ramon Bilbao",
    "Luisa Traver",
    "Adriana Beltran",
    "Victor Regalado",
    "Miguel Suner",
    "Javier Caballero",
    "Pedro Olet",
    "Carmen Ferrer",
    "Lucia Navarro",
];

/// Assigns one user per distinct `(role, profile)`, so a reporter never
/// reports themselves.
struct UserPool {
    users: Vec<UserRecord>,
    by_profile: HashMap<(bool, Profile), String>,
}

impl UserPool {
    fn id_for(&mut self, reporter: bool, profile: Profile) -> String {
        if let Some(id) = self.by_profile.get(&(reporter, profile)) {
            return id.clone();
        }
        let n = self.users.len() + 1;
        let id = format!("u{n}");
        let low: u32 = profile[3]
            .split('-')
            .next()
            .and_then(|l| l.parse().ok())
            .expect("fixture bands are numeric");
        self.users.push(UserRecord {
            id: id.clone(),
            name: NAMES[n % NAMES.len()].to_owned(),
            position: profile[0].to_owned(),
            department: profile[1].to_owned(),
            gender: profile[2].to_owned(),
            age: Some((low + 2).max(16)),
        });
        self.by_profile.insert((reporter, profile), id.clone());
        id
    }
}

/// Raw user and notification tables whose preparation yields the 70-row
/// bad fixture and the 18-row good fixture.
pub fn fixture_tables() -> (Vec<UserRecord>, Vec<NotificationRecord>) {
    const TAGS: [&str; 4] = ["conflict of interest", "integrity", "equality", "abusive practices"];
    let mut pool = UserPool {
        users: Vec::new(),
        by_profile: HashMap::new(),
    };
    let start = NaiveDate::from_ymd_opt(2012, 1, 2).expect("valid date");
    let mut notifications = Vec::new();
    let mut push = |practice, reporting_user, reported_user| {
        let i = notifications.len();
        let tag = TAGS[i % TAGS.len()];
        notifications.push(NotificationRecord {
            practice,
            date: start + Days::new(i as u64),
            reporting_user,
            reported_user,
            tags: vec![tag.to_owned()],
            description: format!("Fixture notification {} concerning {tag}", i + 1),
        });
    };
    for (reporter, reported) in bad_profiles() {
        let from = pool.id_for(true, reporter);
        let to = pool.id_for(false, reported);
        push(PracticeKind::Bad, from, Some(to));
    }
    for reporter in good_profiles() {
        let from = pool.id_for(true, reporter);
        push(PracticeKind::Good, from, None);
    }
    (pool.users, notifications)
}

/// Checks marginal counts and the exhaustive rule listing of `ds`.
pub fn verify_fixture(ds: &PreparedDataset, constraints: &FixtureConstraints) -> Result<()> {
    let db = to_transactions(ds, &EncodingConfig::default())?;
    if db.len() != constraints.total_rows {
        return Err(Error::Fixture(format!(
            "{} rows, expected {}",
            db.len(),
            constraints.total_rows
        )));
    }
    for (items, want) in &constraints.counts {
        let got = db.itemset(items).map(|s| db.support_count(&s)).unwrap_or(0);
        if got != *want {
            return Err(Error::Fixture(format!("count of {items:?} is {got}, expected {want}")));
        }
    }
    let d = db.dictionary();
    let mut got: Vec<(String, String, usize)> = brute_force_mine(&db, &constraints.params)?
        .iter()
        .map(|r| (d.render(&r.antecedent), d.render(&r.consequent), r.count))
        .collect();
    let mut want: Vec<(String, String, usize)> = constraints
        .rules
        .iter()
        .map(|(l, r, c)| (format!("{{{l}}}"), format!("{{{r}}}"), *c))
        .collect();
    got.sort();
    want.sort();
    if got != want {
        return Err(Error::Fixture(format!("mined {got:?}, expected {want:?}")));
    }
    Ok(())
}

fn build(kind: PracticeKind, constraints: &FixtureConstraints) -> Result<PreparedDataset> {
    let (users, notifications) = fixture_tables();
    let (bad, good) = prepare(&users, &notifications)?;
    let ds = match kind {
        PracticeKind::Bad => bad,
        PracticeKind::Good => good,
    };
    verify_fixture(&ds, constraints)?;
    Ok(ds)
}

/// The verified 70-row bad-practice fixture.
pub fn build_bad_fixture() -> Result<PreparedDataset> {
    build(PracticeKind::Bad, &bad_fixture_constraints())
}

/// The verified 18-row good-practice fixture.
pub fn build_good_fixture() -> Result<PreparedDataset> {
    build(PracticeKind::Good, &good_fixture_constraints())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::itemset::TransactionDb;
    use crate::pipeline::clean;

    fn db(ds: &PreparedDataset) -> TransactionDb {
        to_transactions(ds, &EncodingConfig::default()).unwrap()
    }

    #[test]
    fn bad_fixture_builds() {
        let ds = build_bad_fixture().unwrap();
        assert_eq!(ds.len(), 70);
        let db = db(&ds);
        let prod = db.itemset(&["department_reporting_user=production"]).unwrap();
        assert!((db.support(&prod).unwrap() - 39.0 / 70.0).abs() < 1e-15);
        assert!((db.support(&prod).unwrap() - 0.5571).abs() < 5e-5);
    }

    #[test]
    fn good_fixture_builds() {
        let ds = build_good_fixture().unwrap();
        assert_eq!(ds.len(), 18);
    }

    #[test]
    fn fixture_tables_are_already_clean() {
        let (users, notes) = fixture_tables();
        let (_, _, report) = clean(users, notes);
        assert!(report.is_empty(), "{report}");
    }

    #[test]
    fn verification_rejects_a_perturbed_fixture() {
        let mut ds = build_bad_fixture().unwrap();
        // One more production reporter breaks the 39 marginal.
        let row = ds.rows.iter_mut().find(|r| r[4] == "sales").unwrap();
        row[4] = "production".into();
        assert!(matches!(
            verify_fixture(&ds, &bad_fixture_constraints()),
            Err(Error::Fixture(_))
        ));
    }

    #[test]
    fn good_overlap_bounds() {
        let c = good_fixture_constraints();
        let overlap = c
            .counts
            .iter()
            .find(|(s, _)| {
                s.len() == 2 && s.contains(&"gender_reporting_user=f") && s.contains(&"department_reporting_user=hr")
            })
            .unwrap()
            .1;
        // pigeonhole lower bound; below 0.8 * 12 above
        assert!((12 + 12 - 18..=9).contains(&overlap));
    }
}

use std::collections::HashSet;

use chrono::{Days, NaiveDate};

use crate::error::{Error, Result};
use crate::pipeline::{notifications_to_csv, users_to_csv, NotificationRecord, PracticeKind, UserRecord};

use super::Sampler;

const FIRST_NAMES: [&str; 12] = [
    "Ramon", "Luisa", "Adriana", "Victor", "Miguel", "Javier", "Pedro", "Carmen", "Lucia", "Marta", "Jorge", "Elena",
];
const LAST_NAMES: [&str; 10] = [
    "Bilbao",
    "Traver",
    "Beltran",
    "Regalado",
    "Suner",
    "Caballero",
    "Olet",
    "Ferrer",
    "Navarro",
    "Soler",
];

/// Parameters of the synthetic table generator. Every distribution is a
/// list of `(value, weight)` pairs summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub n_users: usize,
    pub n_notifications: usize,
    pub bad_fraction: f64,
    pub departments: Vec<(String, f64)>,
    pub positions: Vec<(String, f64)>,
    pub genders: Vec<(String, f64)>,
    /// Weights over five-year bands keyed by their lower bound.
    pub age_bands: Vec<(u32, f64)>,
    pub tags: Vec<String>,
    pub seed: u64,
}

fn owned(pairs: &[(&str, f64)]) -> Vec<(String, f64)> {
    pairs.iter().map(|(v, w)| ((*v).to_owned(), *w)).collect()
}

impl Default for GeneratorSpec {
    fn default() -> Self {
        GeneratorSpec {
            n_users: 50,
            n_notifications: 200,
            bad_fraction: 0.6,
            departments: owned(&[("production", 0.35), ("sales", 0.3), ("purchasing", 0.2), ("hr", 0.15)]),
            positions: owned(&[("employee", 0.75), ("manager", 0.2), ("business person", 0.05)]),
            genders: owned(&[("f", 0.5), ("m", 0.5)]),
            age_bands: vec![
                (20, 0.1),
                (25, 0.15),
                (30, 0.2),
                (35, 0.15),
                (40, 0.12),
                (45, 0.1),
                (50, 0.08),
                (55, 0.06),
                (60, 0.04),
            ],
            tags: [
                "conflict of interest",
                "integrity",
                "equality",
                "harassment",
                "abusive practices",
                "corruption",
                "transparency",
                "sustainability",
                "explainability report",
                "training",
            ]
            .into_iter()
            .map(str::to_owned)
            .collect(),
            seed: 7,
        }
    }
}

fn check_weights(name: &str, weights: impl Iterator<Item = f64>) -> Result<()> {
    let mut sum = 0.0;
    let mut len = 0;
    for w in weights {
        if w.is_nan() || w < 0.0 {
            return Err(Error::InvalidSpec(format!("{name} weight {w} is negative")));
        }
        sum += w;
        len += 1;
    }
    if len == 0 || (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidSpec(format!("{name} weights sum to {sum}, not 1")));
    }
    Ok(())
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.bad_fraction) {
            return Err(Error::InvalidSpec(format!(
                "bad fraction {} outside [0, 1]",
                self.bad_fraction
            )));
        }
        if self.n_notifications > 0 {
            if self.n_users == 0 {
                return Err(Error::InvalidSpec("notifications need at least one user".into()));
            }
            if self.bad_fraction > 0.0 && self.n_users < 2 {
                return Err(Error::InvalidSpec("bad practices need at least two users".into()));
            }
            if self.tags.is_empty() {
                return Err(Error::InvalidSpec("empty tag vocabulary".into()));
            }
        }
        check_weights("department", self.departments.iter().map(|p| p.1))?;
        check_weights("position", self.positions.iter().map(|p| p.1))?;
        check_weights("gender", self.genders.iter().map(|p| p.1))?;
        check_weights("age", self.age_bands.iter().map(|p| p.1))?;
        if let Some((low, _)) = self
            .age_bands
            .iter()
            .find(|(low, _)| low % 5 != 0 || *low < 15 || *low > 100)
        {
            return Err(Error::InvalidSpec(format!(
                "age band starting at {low} is not a five-year band in [15, 100]"
            )));
        }
        Ok(())
    }
}

fn pick<'a>(s: &mut Sampler, dist: &'a [(String, f64)]) -> &'a str {
    let weights: Vec<f64> = dist.iter().map(|p| p.1).collect();
    &dist[s.categorical(&weights)].0
}

/// Generates user and notification records. Output depends only on `spec`.
pub fn generate_records(spec: &GeneratorSpec) -> Result<(Vec<UserRecord>, Vec<NotificationRecord>)> {
    spec.validate()?;
    let mut s = Sampler::new(spec.seed);
    let age_weights: Vec<f64> = spec.age_bands.iter().map(|p| p.1).collect();

    let users: Vec<UserRecord> = (1..=spec.n_users)
        .map(|i| {
            let name = format!(
                "{} {}",
                FIRST_NAMES[s.below(FIRST_NAMES.len())],
                LAST_NAMES[s.below(LAST_NAMES.len())]
            );
            let position = pick(&mut s, &spec.positions).to_owned();
            let department = pick(&mut s, &spec.departments).to_owned();
            let gender = pick(&mut s, &spec.genders).to_owned();
            let low = spec.age_bands[s.categorical(&age_weights)].0;
            let age = (low + s.below(5) as u32).clamp(16, 100);
            UserRecord {
                id: format!("u{i}"),
                name,
                position,
                department,
                gender,
                age: Some(age),
            }
        })
        .collect();

    let start = NaiveDate::from_ymd_opt(2012, 1, 1).expect("valid date");
    let mut keys = HashSet::new();
    let mut notifications = Vec::with_capacity(spec.n_notifications);
    for _ in 0..spec.n_notifications {
        let practice = if s.unit() < spec.bad_fraction {
            PracticeKind::Bad
        } else {
            PracticeKind::Good
        };
        let mut day = s.below(3653) as u64;
        let reporter = s.below(spec.n_users);
        let reported = match practice {
            PracticeKind::Bad => {
                let r = s.below(spec.n_users - 1);
                Some(if r >= reporter { r + 1 } else { r })
            }
            PracticeKind::Good => None,
        };
        // A repeated (practice, date, reporter, reported) would read as a
        // duplicate; move to the next free day.
        while !keys.insert((practice, day, reporter, reported)) {
            day += 1;
        }
        let n_tags = 1 + s.below(spec.tags.len().min(3));
        let mut tags: Vec<String> = Vec::with_capacity(n_tags);
        while tags.len() < n_tags {
            let t = &spec.tags[s.below(spec.tags.len())];
            if !tags.contains(t) {
                tags.push(t.clone());
            }
        }
        let description = match practice {
            PracticeKind::Bad => format!("Complaint concerning {}", tags[0]),
            PracticeKind::Good => format!("Good practice concerning {}", tags[0]),
        };
        notifications.push(NotificationRecord {
            practice,
            date: start + Days::new(day),
            reporting_user: users[reporter].id.clone(),
            reported_user: reported.map(|r| users[r].id.clone()),
            tags,
            description,
        });
    }
    Ok((users, notifications))
}

/// Generates `(users.csv, notifications.csv)` contents.
pub fn generate(spec: &GeneratorSpec) -> Result<(String, String)> {
    let (users, notifications) = generate_records(spec)?;
    Ok((users_to_csv(&users), notifications_to_csv(&notifications)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{clean, read_notifications, read_users};
    use std::path::Path;

    #[test]
    fn same_seed_same_bytes() {
        let spec = GeneratorSpec::default();
        assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap());
        let other = GeneratorSpec {
            seed: 8,
            ..GeneratorSpec::default()
        };
        assert_ne!(generate(&spec).unwrap(), generate(&other).unwrap());
    }

    #[test]
    fn zero_bad_fraction_gives_only_good() {
        let spec = GeneratorSpec {
            bad_fraction: 0.0,
            ..GeneratorSpec::default()
        };
        let (_, notes) = generate_records(&spec).unwrap();
        assert!(notes
            .iter()
            .all(|n| n.practice == PracticeKind::Good && n.reported_user.is_none()));
    }

    #[test]
    fn bad_notifications_have_distinct_parties() {
        let spec = GeneratorSpec {
            bad_fraction: 1.0,
            n_users: 2,
            ..GeneratorSpec::default()
        };
        let (_, notes) = generate_records(&spec).unwrap();
        assert!(notes
            .iter()
            .all(|n| n.reported_user.as_deref().is_some_and(|r| r != n.reporting_user)));
    }

    #[test]
    fn output_parses_back_cleanly() {
        let (u, n) = generate(&GeneratorSpec::default()).unwrap();
        let users = read_users(u.as_bytes(), Path::new("users.csv")).unwrap();
        let notes = read_notifications(n.as_bytes(), Path::new("notifications.csv")).unwrap();
        assert_eq!((users.len(), notes.len()), (50, 200));
        let (_, _, report) = clean(users, notes);
        assert!(report.is_empty(), "{report}");
    }

    #[test]
    fn invalid_specs() {
        let no_users = GeneratorSpec {
            n_users: 0,
            ..GeneratorSpec::default()
        };
        assert!(generate(&no_users).is_err());
        let bad_fraction = GeneratorSpec {
            bad_fraction: 1.2,
            ..GeneratorSpec::default()
        };
        assert!(generate(&bad_fraction).is_err());
        let mut skewed = GeneratorSpec::default();
        skewed.genders[0].1 = 0.7;
        assert!(generate(&skewed).is_err());
        let empty = GeneratorSpec {
            n_users: 0,
            n_notifications: 0,
            ..GeneratorSpec::default()
        };
        assert!(generate(&empty).is_ok());
    }
}

use std::collections::HashSet;
use std::path::Path;

use proptest::prelude::*;

use ethline::miner::{frequent_itemsets, generate_rules, mine, mine_with, Correlation, Counting, MinerOptions};
use ethline::oracle::brute_force_mine;
use ethline::pipeline::{bin_age, clean, prepare, read_notifications, read_users};
use ethline::ratio::ratio;
use ethline::report::{read_rules_csv, rules_to_csv, RuleRow};
use ethline::synth::{generate, GeneratorSpec};
use ethline::{Item, Itemset, MiningParams, TransactionDb};

fn db_strategy() -> impl Strategy<Value = TransactionDb> {
    prop::collection::vec(prop::collection::btree_set(0u8..8, 0..6), 1..=12).prop_map(|rows| {
        let lists: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|i| format!("i{i}=x")).collect())
            .collect();
        TransactionDb::from_item_lists(&lists).unwrap()
    })
}

fn params_strategy() -> impl Strategy<Value = MiningParams> {
    (1u32..=9, 5u32..=10, 2usize..=4, 1usize..=2).prop_map(|(s, c, max_len, cons)| {
        MiningParams::new(s as f64 / 10.0, c as f64 / 10.0, 2, max_len, cons).unwrap()
    })
}

fn subsets(set: &Itemset) -> Vec<Itemset> {
    let ids = set.as_slice();
    (1..(1u32 << ids.len()) - 1)
        .map(|mask| {
            ids.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &id)| id)
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn miner_matches_oracle(db in db_strategy(), params in params_strategy()) {
        // Set comparison: the oracle's float lifts may order exact ties differently.
        let by_sides = |mut v: Vec<ethline::Rule>| {
            v.sort_by(|a, b| (&a.antecedent, &a.consequent).cmp(&(&b.antecedent, &b.consequent)));
            v
        };
        let fast = by_sides(mine(&db, &params).unwrap());
        let slow = by_sides(brute_force_mine(&db, &params).unwrap());
        prop_assert_eq!(fast.len(), slow.len());
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert_eq!(&a.antecedent, &b.antecedent);
            prop_assert_eq!(&a.consequent, &b.consequent);
            prop_assert_eq!(a.count, b.count);
            prop_assert!((a.support - b.support).abs() <= 1e-12);
            prop_assert!((a.confidence - b.confidence).abs() <= 1e-12);
            prop_assert!((a.lift - b.lift).abs() <= 1e-12);
        }
    }

    #[test]
    fn frequent_sets_are_downward_closed(db in db_strategy(), params in params_strategy()) {
        let frequent = frequent_itemsets(&db, &params).unwrap();
        let sets: HashSet<&Itemset> = frequent.iter().map(|f| &f.items).collect();
        for f in &frequent {
            prop_assert_eq!(f.count, db.support_count(&f.items));
            for sub in subsets(&f.items) {
                prop_assert!(sets.contains(&sub));
            }
        }
    }

    #[test]
    fn support_shrinks_with_more_items(db in db_strategy(), x in prop::collection::vec(0u8..8, 0..4), y in prop::collection::vec(0u8..8, 0..4)) {
        let pick = |ids: &[u8]| -> Option<Itemset> {
            let texts: Vec<String> = ids.iter().map(|i| format!("i{i}=x")).collect();
            let refs: Vec<&str> = texts.iter().map(String::as_str).collect();
            db.itemset(&refs)
        };
        if let (Some(x), Some(y)) = (pick(&x), pick(&y)) {
            prop_assert!(db.support(&x).unwrap() >= db.support(&x.union(&y)).unwrap());
        }
    }

    #[test]
    fn rules_respect_their_params(db in db_strategy(), params in params_strategy()) {
        let frequent = frequent_itemsets(&db, &params).unwrap();
        for r in generate_rules(&frequent, &db, &params) {
            let size = r.antecedent.len() + r.consequent.len();
            prop_assert!(r.antecedent.is_disjoint(&r.consequent));
            prop_assert!(size >= params.min_len && size <= params.max_len);
            prop_assert!(r.consequent.len() <= params.max_consequent_len);
            prop_assert!(r.support >= params.min_support && r.confidence >= params.min_confidence);
            prop_assert!(r.confidence >= r.support);
            let n = db.len() as i128;
            let cx = db.support_count(&r.antecedent) as i128;
            let cy = db.support_count(&r.consequent) as i128;
            let expected = (r.count as i128 * n).cmp(&(cx * cy));
            let got = match Correlation::of(r.lift) {
                Correlation::Positive => std::cmp::Ordering::Greater,
                Correlation::Independent => std::cmp::Ordering::Equal,
                Correlation::Negative => std::cmp::Ordering::Less,
            };
            prop_assert_eq!(got, expected);
        }
    }

    #[test]
    fn execution_options_do_not_change_output(db in db_strategy(), params in params_strategy()) {
        let base = mine(&db, &params).unwrap();
        for options in [
            MinerOptions { counting: Counting::Scan, threads: 1 },
            MinerOptions { counting: Counting::Bitmap, threads: 3 },
        ] {
            prop_assert_eq!(&mine_with(&db, &params, &options).unwrap(), &base);
        }
    }

    #[test]
    fn equal_ratios_are_identical(num in 0u128..10_000, den in 1u128..10_000, k in 1u128..1000) {
        let r = ratio(num, den);
        prop_assert_eq!(r.to_bits(), ratio(num * k, den * k).to_bits());
        let exact = num as f64 / den as f64;
        prop_assert!((r - exact).abs() <= exact * 1e-15);
        prop_assert_eq!(r.to_string().parse::<f64>().unwrap(), r);
    }

    #[test]
    fn rule_csv_round_trips(rows in prop::collection::vec(
        (
            prop::collection::vec(("[a-z_]{1,8}", "[a-z0-9 _-]{1,8}"), 1..3),
            ("[a-z_]{1,8}", "[a-z0-9 _-]{1,8}"),
            0.0f64..1.0, 0.0f64..1.0, 0.0f64..50.0, 0usize..100_000,
        ),
        0..6,
    )) {
        let rows: Vec<RuleRow> = rows
            .into_iter()
            .map(|(lhs, rhs, support, confidence, lift, count)| {
                let mut lhs: Vec<Item> = lhs.into_iter().map(|(a, v)| Item::new(a, v.trim()).unwrap_or_else(|_| Item::new("a", "v").unwrap())).collect();
                lhs.sort_by_key(|i| i.to_string());
                lhs.dedup();
                let rhs = vec![Item::new(rhs.0, rhs.1.trim()).unwrap_or_else(|_| Item::new("b", "w").unwrap())];
                RuleRow { lhs, rhs, support, confidence, lift, count }
            })
            .collect();
        let back = read_rules_csv(rules_to_csv(&rows).as_bytes(), Path::new("rules.csv")).unwrap();
        prop_assert_eq!(back, rows);
    }

    #[test]
    fn age_bands_hold_the_age(age in 16u32..=100) {
        let band = bin_age(age).unwrap();
        let (l, u) = band.split_once('-').unwrap();
        let (l, u): (u32, u32) = (l.parse().unwrap(), u.parse().unwrap());
        prop_assert!(l <= age && age <= u);
        prop_assert_eq!(u - l, 4);
        prop_assert_eq!(l % 5, 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_tables_survive_the_pipeline(seed in any::<u64>(), users in 2usize..30, notes in 0usize..120, bad in 0u32..=10) {
        let spec = GeneratorSpec {
            n_users: users,
            n_notifications: notes,
            bad_fraction: bad as f64 / 10.0,
            seed,
            ..GeneratorSpec::default()
        };
        let (u, n) = generate(&spec).unwrap();
        let users = read_users(u.as_bytes(), Path::new("users.csv")).unwrap();
        let notifications = read_notifications(n.as_bytes(), Path::new("notifications.csv")).unwrap();
        let (users, notifications, log) = clean(users, notifications);
        prop_assert!(log.is_empty());
        let (b, g) = prepare(&users, &notifications).unwrap();
        prop_assert_eq!(b.len() + g.len(), notes);
    }
}

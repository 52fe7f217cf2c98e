use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::itemset::{Dictionary, ItemId, Itemset, TransactionDb};
use crate::ratio::ratio;

use super::{FrequentItemset, MiningParams};

/// Absolute distance from 1 within which a lift counts as independence.
pub const INDEPENDENCE_TOLERANCE: f64 = 1e-9;

/// `antecedent => consequent` with its interest measures.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedent: Itemset,
    pub consequent: Itemset,
    pub support: f64,
    pub confidence: f64,
    pub lift: f64,
    /// Transactions containing antecedent and consequent together.
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Correlation {
    /// Lift within [`INDEPENDENCE_TOLERANCE`] of 1.
    Independent,
    /// Lift above 1: the two sides occur together more than chance.
    Positive,
    /// Lift below 1: the sides substitute for one another.
    Negative,
}

impl Correlation {
    pub fn of(lift: f64) -> Self {
        if (lift - 1.0).abs() <= INDEPENDENCE_TOLERANCE {
            Correlation::Independent
        } else if lift > 1.0 {
            Correlation::Positive
        } else {
            Correlation::Negative
        }
    }
}

pub fn lift_of(db: &TransactionDb, antecedent: &Itemset, consequent: &Itemset) -> Result<f64> {
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let cx = db.support_count(antecedent);
    if cx == 0 {
        return Err(Error::ZeroSupport(db.dictionary().render(antecedent)));
    }
    let cy = db.support_count(consequent);
    if cy == 0 {
        return Err(Error::ZeroSupport(db.dictionary().render(consequent)));
    }
    let cxy = db.support_count(&antecedent.union(consequent));
    Ok(lift_from_counts(cxy, cx, cy, db.len()))
}

fn lift_from_counts(cxy: usize, cx: usize, cy: usize, n: usize) -> f64 {
    ratio(cxy as u128 * n as u128, cx as u128 * cy as u128)
}

/// Induces every rule allowed by `params` from a complete frequent-itemset
/// listing. Output order follows `frequent`; use [`sort_rules`] to rank.
pub fn generate_rules(frequent: &[FrequentItemset], db: &TransactionDb, params: &MiningParams) -> Vec<Rule> {
    let n = db.len();
    let counts: HashMap<&Itemset, usize> = frequent.iter().map(|f| (&f.items, f.count)).collect();
    let lookup = |s: &Itemset| -> usize { *counts.get(s).expect("subsets of frequent itemsets are frequent") };

    let mut rules = Vec::new();
    for f in frequent {
        let size = f.items.len();
        if size < params.min_len || size > params.max_len {
            continue;
        }
        let items = f.items.as_slice();
        let max_cons = params.max_consequent_len.min(size - 1);
        for cons_len in 1..=max_cons {
            for_each_combination(items, cons_len, &mut |picked| {
                let consequent = Itemset::from_sorted(picked.to_vec());
                let antecedent = f.items.difference(&consequent);
                let cx = lookup(&antecedent);
                let confidence = ratio(f.count as u128, cx as u128);
                if confidence < params.min_confidence {
                    return;
                }
                let cy = lookup(&consequent);
                rules.push(Rule {
                    support: f.support,
                    confidence,
                    lift: lift_from_counts(f.count, cx, cy, n),
                    count: f.count,
                    antecedent,
                    consequent,
                });
            });
        }
    }
    rules
}

fn for_each_combination(items: &[ItemId], k: usize, f: &mut impl FnMut(&[ItemId])) {
    fn go(items: &[ItemId], k: usize, start: usize, buf: &mut Vec<ItemId>, f: &mut impl FnMut(&[ItemId])) {
        if buf.len() == k {
            f(buf);
            return;
        }
        let need = k - buf.len();
        for i in start..=items.len() - need {
            buf.push(items[i]);
            go(items, k, i + 1, buf, f);
            buf.pop();
        }
    }
    let mut buf = Vec::with_capacity(k);
    go(items, k, 0, &mut buf, f);
}

/// Ranking key: lift descending, then the antecedent and consequent
/// renderings ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleKey {
    pub lift: f64,
    pub lhs: String,
    pub rhs: String,
}

impl Eq for RuleKey {}

impl Ord for RuleKey {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .lift
            .total_cmp(&self.lift)
            .then_with(|| self.lhs.cmp(&other.lhs))
            .then_with(|| self.rhs.cmp(&other.rhs))
    }
}

impl PartialOrd for RuleKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub fn sort_rules(mut rules: Vec<Rule>, dictionary: &Dictionary) -> Vec<Rule> {
    rules.sort_by_cached_key(|r| RuleKey {
        lift: r.lift,
        lhs: dictionary.render(&r.antecedent),
        rhs: dictionary.render(&r.consequent),
    });
    rules
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::miner::frequent_itemsets;

    fn four() -> TransactionDb {
        TransactionDb::from_item_lists(&[
            vec!["x=a", "x=b"],
            vec!["x=a", "x=b", "x=c"],
            vec!["x=a", "x=c"],
            vec!["x=b"],
        ])
        .unwrap()
    }

    #[test]
    fn lift_on_four_transactions() {
        let db = four();
        let a = db.itemset(&["x=a"]).unwrap();
        let b = db.itemset(&["x=b"]).unwrap();
        let l = lift_of(&db, &a, &b).unwrap();
        assert!((l - 0.5 / (0.75 * 0.75)).abs() < 1e-12);
        assert_eq!(l, lift_of(&db, &b, &a).unwrap());
        assert_eq!(Correlation::of(l), Correlation::Negative);
    }

    #[test]
    fn lift_zero_support_errors() {
        let db = TransactionDb::from_item_lists(&[vec!["x=a"], vec!["x=b"]]).unwrap();
        let a = db.itemset(&["x=a"]).unwrap();
        let ab = db.itemset(&["x=a", "x=b"]).unwrap();
        assert!(matches!(lift_of(&db, &ab, &a), Err(Error::ZeroSupport(_))));
        assert!(matches!(lift_of(&db, &a, &ab), Err(Error::ZeroSupport(_))));
    }

    #[test]
    fn correlation_trichotomy() {
        assert_eq!(Correlation::of(1.0), Correlation::Independent);
        assert_eq!(Correlation::of(1.0 + 5e-10), Correlation::Independent);
        assert_eq!(Correlation::of(1.01), Correlation::Positive);
        assert_eq!(Correlation::of(0.99), Correlation::Negative);
    }

    #[test]
    fn rules_on_four_transactions() {
        let db = four();
        let params = MiningParams::new(0.5, 0.6, 2, 2, 1).unwrap();
        let freq = frequent_itemsets(&db, &params).unwrap();
        let rules = sort_rules(generate_rules(&freq, &db, &params), db.dictionary());
        let shown: Vec<String> = rules
            .iter()
            .map(|r| {
                format!(
                    "{}=>{}",
                    db.dictionary().render(&r.antecedent),
                    db.dictionary().render(&r.consequent)
                )
            })
            .collect();
        assert!(shown.contains(&"{x=a}=>{x=b}".to_owned()));
        assert!(shown.contains(&"{x=b}=>{x=a}".to_owned()));
        let ab = &rules[shown.iter().position(|s| s == "{x=a}=>{x=b}").unwrap()];
        assert!((ab.confidence - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(ab.count, 2);
    }

    #[test]
    fn perfect_implication_has_confidence_one() {
        let db = TransactionDb::from_item_lists(&[vec!["x=a", "x=b"], vec!["x=a", "x=b"], vec!["x=b"]]).unwrap();
        let params = MiningParams::new(0.5, 0.9, 2, 2, 1).unwrap();
        let freq = frequent_itemsets(&db, &params).unwrap();
        let rules = generate_rules(&freq, &db, &params);
        assert_eq!(rules.len(), 1);
        assert_eq!(rules[0].confidence, 1.0);
        assert_eq!(db.dictionary().render(&rules[0].antecedent), "{x=a}");
    }

    #[test]
    fn multi_item_consequents_respect_cap() {
        let row = vec!["x=a", "x=b", "x=c"];
        let db = TransactionDb::from_item_lists(&[row.clone(), row.clone(), row]).unwrap();
        let mut params = MiningParams::new(0.5, 0.5, 2, 3, 1).unwrap();
        let freq = frequent_itemsets(&db, &params).unwrap();
        assert!(generate_rules(&freq, &db, &params)
            .iter()
            .all(|r| r.consequent.len() == 1));
        params.max_consequent_len = 2;
        let rules = generate_rules(&freq, &db, &params);
        // pairs: 3 itemsets x 2 directions; triple: 3 singles + 3 pairs
        assert_eq!(rules.len(), 12);
    }

    #[test]
    fn sort_breaks_ties_lexicographically() {
        let db = four();
        let a = db.itemset(&["x=a"]).unwrap();
        let b = db.itemset(&["x=b"]).unwrap();
        let c = db.itemset(&["x=c"]).unwrap();
        let mk = |x: &Itemset, y: &Itemset| Rule {
            antecedent: x.clone(),
            consequent: y.clone(),
            support: 0.5,
            confidence: 0.5,
            lift: 1.0,
            count: 2,
        };
        let sorted = sort_rules(vec![mk(&b, &a), mk(&a, &c), mk(&a, &b)], db.dictionary());
        assert_eq!(sorted, vec![mk(&a, &b), mk(&a, &c), mk(&b, &a)]);
        assert!(sort_rules(Vec::new(), db.dictionary()).is_empty());
    }
}

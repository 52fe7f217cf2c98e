//! Exhaustive reference miner.
//!
//! Enumerates every itemset up to `max_len` and every antecedent/consequent
//! split straight from the definitions, counting by scanning the raw
//! transactions. It shares no counting or candidate code with the Apriori
//! miner and exists to check it.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::itemset::{ItemId, Itemset, TransactionDb};
use crate::miner::{sort_rules, FrequentItemset, MiningParams, Rule};

/// Ceiling on the number of itemsets enumerated. Any dictionary of at
/// most 20 items fits at every `max_len`.
pub const ENUMERATION_LIMIT: u128 = 1 << 20;

struct Scan {
    rows: Vec<HashSet<u32>>,
    n: usize,
}

impl Scan {
    fn new(db: &TransactionDb) -> Self {
        Scan {
            rows: db
                .transactions()
                .iter()
                .map(|t| t.items.iter().map(|id| id.0).collect())
                .collect(),
            n: db.len(),
        }
    }

    fn count(&self, items: &[u32]) -> usize {
        self.rows
            .iter()
            .filter(|row| items.iter().all(|i| row.contains(i)))
            .count()
    }

    fn support(&self, items: &[u32]) -> f64 {
        self.count(items) as f64 / self.n as f64
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn check_size(items: usize, max_len: usize) -> Result<()> {
    let itemsets =
        (1..=max_len.min(items)).fold(0u128, |acc, k| acc.saturating_add(binomial(items as u128, k as u128)));
    if itemsets > ENUMERATION_LIMIT {
        return Err(Error::EnumerationTooLarge {
            items,
            itemsets,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Calls `f` on every subset of `0..universe` with `1..=max_len` members.
fn each_subset(universe: u32, max_len: usize, f: &mut impl FnMut(&[u32])) {
    fn go(next: u32, universe: u32, max_len: usize, buf: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        for i in next..universe {
            buf.push(i);
            f(buf);
            if buf.len() < max_len {
                go(i + 1, universe, max_len, buf, f);
            }
            buf.pop();
        }
    }
    go(0, universe, max_len, &mut Vec::new(), f);
}

fn to_itemset(items: &[u32]) -> Itemset {
    Itemset::new(items.iter().map(|&i| ItemId(i)))
}

/// Every itemset with support at least `min_support`, up to `max_len`.
pub fn brute_force_frequent(db: &TransactionDb, params: &MiningParams) -> Result<Vec<FrequentItemset>> {
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let universe = db.dictionary().len();
    check_size(universe, params.max_len)?;
    let scan = Scan::new(db);
    let mut out = Vec::new();
    each_subset(universe as u32, params.max_len, &mut |items| {
        let count = scan.count(items);
        let support = count as f64 / scan.n as f64;
        if support >= params.min_support {
            out.push(FrequentItemset {
                items: to_itemset(items),
                count,
                support,
            });
        }
    });
    out.sort_by(|a, b| (a.items.len(), &a.items).cmp(&(b.items.len(), &b.items)));
    Ok(out)
}

/// Every rule `X => Y` with `X`, `Y` non-empty and disjoint that meets the
/// thresholds in `params`, ranked like the miner's output.
pub fn brute_force_mine(db: &TransactionDb, params: &MiningParams) -> Result<Vec<Rule>> {
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let universe = db.dictionary().len();
    check_size(universe, params.max_len)?;
    let scan = Scan::new(db);
    let mut rules = Vec::new();
    each_subset(universe as u32, params.max_len, &mut |whole| {
        if whole.len() < params.min_len {
            return;
        }
        let count = scan.count(whole);
        let support = count as f64 / scan.n as f64;
        if support < params.min_support {
            return;
        }
        // Every bipartition of `whole` into (antecedent, consequent).
        let size = whole.len();
        for mask in 1..(1u32 << size) - 1 {
            let (mut lhs, mut rhs) = (Vec::new(), Vec::new());
            for (bit, &item) in whole.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    rhs.push(item);
                } else {
                    lhs.push(item);
                }
            }
            if rhs.len() > params.max_consequent_len {
                continue;
            }
            let supp_x = scan.support(&lhs);
            let supp_y = scan.support(&rhs);
            // supp(X u Y) / supp(X) with the common 1/|T| cancelled.
            let confidence = count as f64 / scan.count(&lhs) as f64;
            if confidence < params.min_confidence {
                continue;
            }
            rules.push(Rule {
                antecedent: to_itemset(&lhs),
                consequent: to_itemset(&rhs),
                support,
                confidence,
                lift: support / (supp_x * supp_y),
                count,
            });
        }
    });
    Ok(sort_rules(rules, db.dictionary()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_transactions_include_both_directions() {
        let db = TransactionDb::from_item_lists(&[
            vec!["x=a", "x=b"],
            vec!["x=a", "x=b", "x=c"],
            vec!["x=a", "x=c"],
            vec!["x=b"],
        ])
        .unwrap();
        let params = MiningParams::new(0.5, 0.6, 2, 2, 1).unwrap();
        let rules = brute_force_mine(&db, &params).unwrap();
        let d = db.dictionary();
        let find = |l: &str, r: &str| {
            rules
                .iter()
                .find(|x| d.render(&x.antecedent) == l && d.render(&x.consequent) == r)
                .map(|x| x.confidence)
        };
        assert!((find("{x=a}", "{x=b}").unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((find("{x=b}", "{x=a}").unwrap() - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn full_support_threshold_without_universal_item_is_empty() {
        let db = TransactionDb::from_item_lists(&[vec!["x=a", "x=b"], vec!["x=b", "x=c"], vec!["x=a", "x=c"]]).unwrap();
        let params = MiningParams::new(1.0, 0.5, 2, 3, 1).unwrap();
        assert!(brute_force_mine(&db, &params).unwrap().is_empty());
    }

    #[test]
    fn guard_rejects_large_enumeration() {
        let lists: Vec<Vec<String>> = (0..25).map(|i| vec![format!("x={i}")]).collect();
        let db = TransactionDb::from_item_lists(&lists).unwrap();
        let params = MiningParams::new(0.1, 0.5, 2, 25, 1).unwrap();
        assert!(matches!(
            brute_force_mine(&db, &params),
            Err(Error::EnumerationTooLarge { .. })
        ));
        // pairs over the same dictionary are cheap
        let params = MiningParams::new(0.1, 0.5, 2, 2, 1).unwrap();
        assert!(brute_force_mine(&db, &params).is_ok());
    }

    #[test]
    fn twenty_items_always_fit() {
        assert!(check_size(20, 20).is_ok());
        assert!(check_size(21, 21).is_err());
    }
}

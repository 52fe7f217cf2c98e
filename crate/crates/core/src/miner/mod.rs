//! Level-wise Apriori frequent-itemset mining and rule induction.

mod rules;
mod tidset;

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::itemset::{ItemId, Itemset, TransactionDb};
use crate::ratio::{min_count, ratio};

pub use rules::{generate_rules, lift_of, sort_rules, Correlation, Rule, RuleKey, INDEPENDENCE_TOLERANCE};
pub use tidset::{Counting, TidIndex};

/// Thresholds for one mining run. Lengths count the items of
/// antecedent and consequent together.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MiningParams {
    pub min_support: f64,
    pub min_confidence: f64,
    pub min_len: usize,
    pub max_len: usize,
    pub max_consequent_len: usize,
}

impl Default for MiningParams {
    fn default() -> Self {
        MiningParams {
            min_support: 0.4,
            min_confidence: 0.8,
            min_len: 2,
            max_len: 10,
            max_consequent_len: 1,
        }
    }
}

impl MiningParams {
    pub fn new(
        min_support: f64,
        min_confidence: f64,
        min_len: usize,
        max_len: usize,
        max_consequent_len: usize,
    ) -> Result<Self> {
        let p = MiningParams {
            min_support,
            min_confidence,
            min_len,
            max_len,
            max_consequent_len,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let in_unit = |x: f64| x > 0.0 && x <= 1.0;
        if !in_unit(self.min_support) {
            return Err(Error::InvalidParams(format!(
                "support {} outside (0, 1]",
                self.min_support
            )));
        }
        if !in_unit(self.min_confidence) {
            return Err(Error::InvalidParams(format!(
                "confidence {} outside (0, 1]",
                self.min_confidence
            )));
        }
        if self.min_len < 2 {
            return Err(Error::InvalidParams(format!("minlen {} below 2", self.min_len)));
        }
        if self.max_len < self.min_len {
            return Err(Error::InvalidParams(format!(
                "maxlen {} below minlen {}",
                self.max_len, self.min_len
            )));
        }
        if self.max_consequent_len < 1 {
            return Err(Error::InvalidParams("max consequent length must be at least 1".into()));
        }
        Ok(())
    }
}

/// Execution knobs that never change the mined output.
#[derive(Debug, Clone, Copy)]
pub struct MinerOptions {
    pub counting: Counting,
    /// Worker threads for candidate counting; 1 counts inline.
    pub threads: usize,
}

impl Default for MinerOptions {
    fn default() -> Self {
        MinerOptions {
            counting: Counting::Bitmap,
            threads: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrequentItemset {
    pub items: Itemset,
    pub count: usize,
    pub support: f64,
}

/// Frequent itemsets, rules and ranking in one call.
pub fn mine(db: &TransactionDb, params: &MiningParams) -> Result<Vec<Rule>> {
    mine_with(db, params, &MinerOptions::default())
}

pub fn mine_with(db: &TransactionDb, params: &MiningParams, options: &MinerOptions) -> Result<Vec<Rule>> {
    let frequent = frequent_itemsets_with(db, params, options)?;
    Ok(sort_rules(generate_rules(&frequent, db, params), db.dictionary()))
}

pub fn frequent_itemsets(db: &TransactionDb, params: &MiningParams) -> Result<Vec<FrequentItemset>> {
    frequent_itemsets_with(db, params, &MinerOptions::default())
}

/// All itemsets of size `1..=max_len` meeting `min_support`, sorted by
/// size then item ids.
pub fn frequent_itemsets_with(
    db: &TransactionDb,
    params: &MiningParams,
    options: &MinerOptions,
) -> Result<Vec<FrequentItemset>> {
    params.validate()?;
    if db.is_empty() {
        return Err(Error::EmptyDatabase);
    }
    let n = db.len();
    let threshold = min_count(params.min_support, n);
    let make = |items: Itemset, count: usize| FrequentItemset {
        items,
        count,
        support: ratio(count as u128, n as u128),
    };

    let mut item_counts = vec![0usize; db.dictionary().len()];
    for t in db.transactions() {
        for id in t.items.iter() {
            item_counts[id.index()] += 1;
        }
    }
    let mut level: Vec<FrequentItemset> = item_counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c >= threshold)
        .map(|(i, &c)| make(Itemset::from_sorted(vec![ItemId(i as u32)]), c))
        .collect();

    let counter = tidset::Counter::new(db, options.counting);
    let pool = if options.threads > 1 {
        Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(options.threads)
                .build()
                .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?,
        )
    } else {
        None
    };

    let mut out = Vec::new();
    let mut k = 1;
    while !level.is_empty() {
        let sets: Vec<Itemset> = level.iter().map(|f| f.items.clone()).collect();
        out.append(&mut level);
        if k >= params.max_len {
            break;
        }
        let candidates = candidate_gen(&sets, k);
        let counts: Vec<usize> = match &pool {
            Some(pool) => pool.install(|| candidates.par_iter().map(|c| counter.count(c)).collect()),
            None => candidates.iter().map(|c| counter.count(c)).collect(),
        };
        level = candidates
            .into_iter()
            .zip(counts)
            .filter(|(_, c)| *c >= threshold)
            .map(|(s, c)| make(s, c))
            .collect();
        k += 1;
    }
    Ok(out)
}

/// Joins size-`k` itemsets sharing their first `k - 1` items and prunes
/// every candidate with an infrequent size-`k` subset.
///
/// `frequent_k` must hold size-`k` itemsets in ascending order; the output
/// is ascending and duplicate-free.
pub fn candidate_gen(frequent_k: &[Itemset], k: usize) -> Vec<Itemset> {
    debug_assert!(frequent_k.iter().all(|s| s.len() == k));
    debug_assert!(frequent_k.windows(2).all(|w| w[0] < w[1]));
    if k == 0 {
        return Vec::new();
    }
    let known: HashSet<&[ItemId]> = frequent_k.iter().map(Itemset::as_slice).collect();
    let mut out = Vec::new();
    let mut subset = Vec::with_capacity(k);
    for (i, a) in frequent_k.iter().enumerate() {
        let a = a.as_slice();
        let prefix = &a[..k - 1];
        for b in &frequent_k[i + 1..] {
            let b = b.as_slice();
            if &b[..k - 1] != prefix {
                break;
            }
            let mut joined = a.to_vec();
            joined.push(b[k - 1]);
            // The two generating subsets are known frequent; check the rest.
            let all_frequent = (0..k - 1).all(|skip| {
                subset.clear();
                subset.extend(joined.iter().enumerate().filter(|(j, _)| *j != skip).map(|(_, id)| *id));
                known.contains(subset.as_slice())
            });
            if all_frequent {
                out.push(Itemset::from_sorted(joined));
            }
        }
    }
    out
}

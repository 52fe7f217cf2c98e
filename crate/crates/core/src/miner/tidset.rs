//! Support counting back ends.

use crate::itemset::{Itemset, TransactionDb};

/// How candidate supports are counted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Counting {
    /// Intersect per-item transaction-id bitmaps.
    #[default]
    Bitmap,
    /// Scan every transaction with a subset test.
    Scan,
}

/// Per-item bitmaps over transaction positions.
pub struct TidIndex {
    len: usize,
    bitmaps: Vec<Vec<u64>>,
}

impl TidIndex {
    pub fn build(db: &TransactionDb) -> Self {
        let words = db.len().div_ceil(64);
        let mut bitmaps = vec![vec![0u64; words]; db.dictionary().len()];
        for (pos, t) in db.transactions().iter().enumerate() {
            for id in t.items.iter() {
                bitmaps[id.index()][pos / 64] |= 1 << (pos % 64);
            }
        }
        TidIndex { len: db.len(), bitmaps }
    }

    pub fn count(&self, set: &Itemset) -> usize {
        let ids = set.as_slice();
        match ids {
            [] => self.len,
            [one] => popcount(&self.bitmaps[one.index()]),
            [first, rest @ ..] => {
                let mut scratch = self.bitmaps[first.index()].clone();
                for id in rest {
                    let other = &self.bitmaps[id.index()];
                    for (w, o) in scratch.iter_mut().zip(other) {
                        *w &= o;
                    }
                }
                popcount(&scratch)
            }
        }
    }
}

fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

pub(crate) enum Counter<'a> {
    Bitmap(TidIndex),
    Scan(&'a TransactionDb),
}

impl<'a> Counter<'a> {
    pub fn new(db: &'a TransactionDb, counting: Counting) -> Self {
        match counting {
            Counting::Bitmap => Counter::Bitmap(TidIndex::build(db)),
            Counting::Scan => Counter::Scan(db),
        }
    }

    pub fn count(&self, set: &Itemset) -> usize {
        match self {
            Counter::Bitmap(index) => index.count(set),
            Counter::Scan(db) => db.support_count(set),
        }
    }
}

//! Transactional data model: interned `column=value` items, sorted itemsets
//! and an immutable transaction database with exact support counting.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ratio::ratio;

/// Dense identifier of an interned item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemId(pub u32);

impl ItemId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A binary attribute: one column taking one value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Item {
    pub attribute: String,
    pub value: String,
}

impl Item {
    pub fn new(attribute: impl Into<String>, value: impl Into<String>) -> Result<Self> {
        let item = Item {
            attribute: attribute.into(),
            value: value.into(),
        };
        item.validate()?;
        Ok(item)
    }

    fn validate(&self) -> Result<()> {
        let reason = if self.attribute.is_empty() {
            "empty attribute"
        } else if self.value.is_empty() {
            "empty value"
        } else if self.attribute.contains('=') || self.value.contains('=') {
            "embedded `=`"
        } else {
            return Ok(());
        };
        Err(Error::InvalidItem {
            attribute: self.attribute.clone(),
            value: self.value.clone(),
            reason,
        })
    }

    /// Parses the `column=value` rendering.
    pub fn parse(text: &str) -> Result<Self> {
        match text.split_once('=') {
            Some((a, v)) => Item::new(a.trim(), v.trim()),
            None => Err(Error::MalformedRule(format!("item `{text}` has no `=`"))),
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.attribute, self.value)
    }
}

/// Interning table mapping `(attribute, value)` pairs to dense ids.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    items: Vec<Item>,
    index: HashMap<Item, ItemId>,
}

impl Dictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, attribute: &str, value: &str) -> Result<ItemId> {
        let item = Item::new(attribute, value)?;
        if let Some(&id) = self.index.get(&item) {
            return Ok(id);
        }
        let id = ItemId(self.items.len() as u32);
        self.items.push(item.clone());
        self.index.insert(item, id);
        Ok(id)
    }

    pub fn lookup(&self, attribute: &str, value: &str) -> Option<ItemId> {
        self.index
            .get(&Item {
                attribute: attribute.to_owned(),
                value: value.to_owned(),
            })
            .copied()
    }

    /// Looks up the `column=value` rendering.
    pub fn lookup_text(&self, text: &str) -> Option<ItemId> {
        let (a, v) = text.split_once('=')?;
        self.lookup(a, v)
    }

    pub fn item(&self, id: ItemId) -> &Item {
        &self.items[id.index()]
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (ItemId, &Item)> {
        self.items.iter().enumerate().map(|(i, item)| (ItemId(i as u32), item))
    }

    /// Resolves an itemset to its items, ordered by their text rendering.
    pub fn resolve(&self, set: &Itemset) -> Vec<Item> {
        let mut items: Vec<Item> = set.iter().map(|id| self.item(id).clone()).collect();
        items.sort();
        items
    }

    /// Renders `{col=val, col=val}` with items in text order.
    pub fn render(&self, set: &Itemset) -> String {
        render_items(&self.resolve(set))
    }
}

/// Renders items as `{col=val, col=val}` in the given order.
pub fn render_items(items: &[Item]) -> String {
    let body: Vec<String> = items.iter().map(Item::to_string).collect();
    format!("{{{}}}", body.join(", "))
}

/// Parses the `{col=val, col=val}` rendering. Values may contain `", "`;
/// a segment without `=` continues the previous value.
pub fn parse_items(text: &str) -> Result<Vec<Item>> {
    let inner = text
        .trim()
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::MalformedRule(format!("itemset `{text}` is not braced")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut parts: Vec<String> = Vec::new();
    for seg in inner.split(", ") {
        match parts.last_mut() {
            Some(last) if !seg.contains('=') => {
                last.push_str(", ");
                last.push_str(seg);
            }
            _ => parts.push(seg.to_owned()),
        }
    }
    parts.iter().map(|p| Item::parse(p)).collect()
}

/// Strictly ascending, duplicate-free sequence of item ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Itemset(Vec<ItemId>);

impl Itemset {
    pub fn empty() -> Self {
        Itemset(Vec::new())
    }

    pub fn new(ids: impl IntoIterator<Item = ItemId>) -> Self {
        let mut v: Vec<ItemId> = ids.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Itemset(v)
    }

    /// Wraps ids already known to be strictly ascending.
    pub(crate) fn from_sorted(ids: Vec<ItemId>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        Itemset(ids)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ItemId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[ItemId] {
        &self.0
    }

    pub fn contains(&self, id: ItemId) -> bool {
        self.0.binary_search(&id).is_ok()
    }

    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        let mut theirs = other.0.iter();
        'outer: for id in &self.0 {
            for o in theirs.by_ref() {
                match o.cmp(id) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn union(&self, other: &Itemset) -> Itemset {
        Itemset::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &Itemset) -> Itemset {
        Itemset(self.iter().filter(|id| !other.contains(*id)).collect())
    }

    pub fn is_disjoint(&self, other: &Itemset) -> bool {
        self.iter().all(|id| !other.contains(id))
    }
}

impl FromIterator<ItemId> for Itemset {
    fn from_iter<I: IntoIterator<Item = ItemId>>(iter: I) -> Self {
        Itemset::new(iter)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub tid: usize,
    pub items: Itemset,
}

/// Encodes one prepared row: every non-excluded, non-empty cell becomes the
/// item `column=value`.
pub fn encode_row<'a, I>(
    tid: usize,
    row: I,
    excluded: &HashSet<String>,
    dictionary: &mut Dictionary,
) -> Result<Transaction>
where
    I: IntoIterator<Item = (&'a str, &'a str)>,
{
    let mut ids = Vec::new();
    for (column, value) in row {
        if value.is_empty() || excluded.contains(column) {
            continue;
        }
        ids.push(dictionary.intern(column, value)?);
    }
    Ok(Transaction {
        tid,
        items: Itemset::new(ids),
    })
}

/// Immutable transaction database.
#[derive(Debug, Clone, Default)]
pub struct TransactionDb {
    dictionary: Dictionary,
    transactions: Vec<Transaction>,
}

impl TransactionDb {
    /// Panics if a transaction references an id outside the dictionary or
    /// two transactions share a tid.
    pub fn new(dictionary: Dictionary, transactions: Vec<Transaction>) -> Self {
        let mut seen = HashSet::with_capacity(transactions.len());
        for t in &transactions {
            assert!(seen.insert(t.tid), "duplicate tid {}", t.tid);
            assert!(
                t.items.iter().all(|id| id.index() < dictionary.len()),
                "transaction {} references unknown item",
                t.tid
            );
        }
        TransactionDb {
            dictionary,
            transactions,
        }
    }

    /// Builds a database from literal item lists, numbering tids from 0.
    /// Items are `column=value` strings.
    pub fn from_item_lists<S: AsRef<str>>(lists: &[Vec<S>]) -> Result<Self> {
        let mut dictionary = Dictionary::new();
        let mut transactions = Vec::with_capacity(lists.len());
        for (tid, list) in lists.iter().enumerate() {
            let mut ids = Vec::new();
            for text in list {
                let item = Item::parse(text.as_ref())?;
                ids.push(dictionary.intern(&item.attribute, &item.value)?);
            }
            transactions.push(Transaction {
                tid,
                items: Itemset::new(ids),
            });
        }
        Ok(TransactionDb::new(dictionary, transactions))
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dictionary
    }

    pub fn transactions(&self) -> &[Transaction] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Itemset from `column=value` strings; `None` if any item is unknown.
    pub fn itemset(&self, items: &[&str]) -> Option<Itemset> {
        items.iter().map(|t| self.dictionary.lookup_text(t)).collect()
    }

    /// Number of transactions containing `x`, by subset scan.
    pub fn support_count(&self, x: &Itemset) -> usize {
        debug_assert!(x.iter().all(|id| id.index() < self.dictionary.len()));
        self.transactions.iter().filter(|t| x.is_subset_of(&t.items)).count()
    }

    pub fn support(&self, x: &Itemset) -> Result<f64> {
        if self.is_empty() {
            return Err(Error::EmptyDatabase);
        }
        Ok(ratio(self.support_count(x) as u128, self.len() as u128))
    }
}

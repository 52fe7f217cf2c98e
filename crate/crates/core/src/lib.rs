//! Association-rule mining over ethics-line notifications.
//!
//! The crate covers the whole path from raw user and notification tables to
//! ranked rule reports: loading and cleaning ([`pipeline`]), encoding rows
//! as transactions ([`itemset`]), level-wise Apriori mining ([`miner`]) with
//! an exhaustive cross-check ([`oracle`]), synthetic inputs ([`synth`]) and
//! rendering ([`report`]).

pub mod cli;
pub mod error;
pub mod itemset;
pub mod miner;
pub mod oracle;
pub mod pipeline;
pub mod ratio;
pub mod report;
pub mod synth;

pub use error::{Error, Result};
pub use itemset::{Dictionary, Item, ItemId, Itemset, Transaction, TransactionDb};
pub use miner::{mine, FrequentItemset, MiningParams, Rule};

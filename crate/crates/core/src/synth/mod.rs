//! Synthetic inputs: a seeded generator of plausible tables and the
//! deterministic fixtures that reproduce the reference rule tables.

mod fixtures;
mod generator;
mod sampler;

pub use fixtures::{
    bad_fixture_constraints, build_bad_fixture, build_good_fixture, fixture_tables, good_fixture_constraints,
    verify_fixture, FixtureConstraints, BAD_FIXTURE_RULES, GOOD_FIXTURE_RULES,
};
pub use generator::{generate, generate_records, GeneratorSpec};
pub use sampler::Sampler;

//! Harness behind the `stanley` binary: reproducible random instances,
//! bound checking with itemized skips, and the bundled reference examples.

pub mod bounds;
pub mod experiment;
pub mod reproduce;

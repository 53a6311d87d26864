//! Specification texts shared by unit tests.

pub(crate) const ARBITER: &str = include_str!("../../cli/tests/fixtures/arbiter.tlsf");

//! Verification batteries shared by the `containerkit` binary and its
//! acceptance harness.

pub mod suites;

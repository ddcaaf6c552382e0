//! Batch driver for the `cgtwist-core` checks: suites over parameter grids,
//! chain spectra and oscillator reports, emitted as JSON, CSV or text.

pub mod commands;
pub mod config;
pub mod output;
pub mod suites;

/// Process exit statuses.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const USAGE: i32 = 2;
}

//! Resource caps shared by the exhaustive operations.

use thiserror::Error;

/// Upper limits on exhaustive work. Exceeding one is an explicit error, never
/// a silent truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest level `n` for which all `2^n` strings are materialized.
    pub max_level: u32,
    /// Largest program length (bits) the description machine is exhausted to.
    pub max_prog_len: u32,
    /// Largest step budget accepted by the halting tools.
    pub max_budget: u64,
    /// Largest side of a square matrix.
    pub max_square: u32,
}

impl Caps {
    pub const DEFAULT: Caps = Caps {
        max_level: 24,
        max_prog_len: 26,
        max_budget: 10_000_000,
        max_square: 4096,
    };

    pub fn check_level(&self, n: u32) -> Result<(), CapExceeded> {
        check("level", n as u64, self.max_level as u64)
    }

    pub fn check_prog_len(&self, len: u32) -> Result<(), CapExceeded> {
        check("program length", len as u64, self.max_prog_len as u64)
    }

    pub fn check_budget(&self, budget: u64) -> Result<(), CapExceeded> {
        check("budget", budget, self.max_budget)
    }

    pub fn check_square(&self, n: u32) -> Result<(), CapExceeded> {
        check("square side", n as u64, self.max_square as u64)
    }
}

impl Default for Caps {
    fn default() -> Self {
        Caps::DEFAULT
    }
}

fn check(what: &'static str, requested: u64, cap: u64) -> Result<(), CapExceeded> {
    if requested > cap {
        Err(CapExceeded {
            what,
            requested,
            cap,
        })
    } else {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("CapExceeded: {what} {requested} is above the configured cap {cap}")]
pub struct CapExceeded {
    pub what: &'static str,
    pub requested: u64,
    pub cap: u64,
}

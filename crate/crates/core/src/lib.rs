//! Desk-scale constructions around limitative theorems.
//!
//! Everything in this crate is a pure function of its inputs and runs without
//! `std`. IO, the command line and the ndjson file formats live in the
//! `limitlab` crate.
//!
//! All statements about compressibility are relative to [`toyvm`], a fixed,
//! total and deliberately non-universal description machine. Nothing here
//! measures true Kolmogorov complexity.
#![no_std]
extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod ak;
pub mod bitstring;
pub mod caps;
pub mod complexity;
pub mod halting;
pub mod realgen;
pub mod toyvm;

pub use bitstring::BitString;
pub use caps::{CapExceeded, Caps};

//! Multi-threaded construction of the description-length table.
//!
//! Each program length is cut into slices by value; slices are decoded
//! independently and their tables merged. Taking the minimum is
//! order-independent, so the result does not depend on the thread count.

use limitlab_core::caps::{CapExceeded, Caps};
use limitlab_core::complexity::{census_from_table, Census};
use limitlab_core::toyvm::{valid_programs_in, ComplexityTable, MIN_PROGRAM_LEN};
use rayon::prelude::*;

/// Slices per program length, at most.
const SLICES: u64 = 64;

pub fn min_description_table(max_len: u32, caps: &Caps) -> Result<ComplexityTable, CapExceeded> {
    caps.check_prog_len(max_len)?;
    let jobs: Vec<(u32, u64, u64)> = (MIN_PROGRAM_LEN..=max_len)
        .flat_map(|len| {
            let rows = 1u64 << len;
            let slices = SLICES.min(rows);
            let width = rows / slices;
            (0..slices).map(move |i| (len, i * width, (i + 1) * width))
        })
        .collect();
    let table = jobs
        .into_par_iter()
        .map(|(len, start, end)| {
            ComplexityTable::from_observations(
                max_len,
                valid_programs_in(len, start..end).map(|(_, out)| (out, len)),
            )
        })
        .reduce(
            || ComplexityTable::from_observations(max_len, []),
            |mut a, b| {
                a.merge(b);
                a
            },
        );
    Ok(table)
}

pub fn compression_census(n: u32, max_prog_len: u32, caps: &Caps) -> Result<Census, CapExceeded> {
    caps.check_level(n)?;
    let table = min_description_table(max_prog_len, caps)?;
    Ok(census_from_table(n, &table))
}

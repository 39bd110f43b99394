//! m-compressibility relative to TOYVM-1, the filter that removes compressible
//! strings from a level, the exact decider, and the counting bound.
//!
//! A string is *m-compressible* when some valid program of at most `m + c`
//! bits outputs it. `c` is the overhead of the compressor itself and defaults
//! to zero.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::bitstring::{AllStrings, BitString, Level};
use crate::caps::{CapExceeded, Caps};
use crate::toyvm::{self, ComplexityTable, DescriptionProgram, MIN_PROGRAM_LEN};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CompressibilityParams {
    pub m: u32,
    pub c: u32,
}

impl CompressibilityParams {
    pub fn new(m: u32, c: u32) -> Self {
        CompressibilityParams { m, c }
    }

    /// Longest program that counts as a compression: `m + c`.
    pub fn machine_bound(&self) -> u32 {
        self.m.saturating_add(self.c)
    }
}

/// True iff no valid program of length `<= m + c` outputs `a`.
///
/// Walks every program up to the bound in rank order, decodes it and
/// compares its output with `a`, stopping at the first match.
pub fn is_m_noncompressible(
    a: &BitString,
    params: CompressibilityParams,
    caps: &Caps,
) -> Result<bool, CapExceeded> {
    let bound = params.machine_bound();
    caps.check_prog_len(bound)?;
    let found = AllStrings::new()
        .skip_while(|p| p.len() < MIN_PROGRAM_LEN as usize)
        .take_while(|p| p.len() <= bound as usize)
        .any(|code| toyvm::decode(&DescriptionProgram::new(code)).output() == Some(a));
    Ok(!found)
}

/// The set of strings that are m-compressible, restricted to length `n`.
/// Built once by exhausting the program space, then used as a filter.
#[derive(Debug, Clone)]
pub struct CompressibleSet {
    params: CompressibilityParams,
    members: BTreeSet<BitString>,
}

impl CompressibleSet {
    pub fn build(
        params: CompressibilityParams,
        only_len: Option<usize>,
        caps: &Caps,
    ) -> Result<Self, CapExceeded> {
        let bound = params.machine_bound();
        caps.check_prog_len(bound)?;
        let members = (MIN_PROGRAM_LEN..=bound)
            .flat_map(toyvm::valid_programs_of_len)
            .map(|(_, output)| output)
            .filter(|s| only_len.is_none_or(|n| s.len() == n))
            .collect();
        Ok(CompressibleSet { params, members })
    }

    pub fn params(&self) -> CompressibilityParams {
        self.params
    }

    pub fn is_compressible(&self, s: &BitString) -> bool {
        self.members.contains(s)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The rows of level `n` that are m-non-compressible, in level order.
pub fn filter_noncompressible(
    n: u32,
    params: CompressibilityParams,
    caps: &Caps,
) -> Result<Vec<BitString>, CapExceeded> {
    caps.check_level(n)?;
    let set = CompressibleSet::build(params, Some(n as usize), caps)?;
    Ok(Level::new(n)
        .iter()
        .filter(|s| !set.is_compressible(s))
        .collect())
}

/// `2^n − 2 − Σ_{i=1..m} 2^i`, which simplifies to `2^n − 2^(m+1)`.
/// Negative values are returned as they are.
pub fn theorem4_bound(n: u32, m: u32) -> BigInt {
    let two_n: BigInt = BigInt::one() << n;
    let two_m1: BigInt = BigInt::one() << (m as u64 + 1);
    two_n - two_m1
}

/// How many strings of length `n` have each minimal description length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    pub n: u32,
    pub max_prog_len: u32,
    /// One bucket for every `k` in `2..=max_prog_len`, empty buckets included.
    pub buckets: BTreeMap<u32, u64>,
    /// Strings with no description of at most `max_prog_len` bits.
    pub none: u64,
}

impl Census {
    pub fn total(&self) -> u64 {
        self.buckets.values().sum::<u64>() + self.none
    }
}

pub fn compression_census(n: u32, max_prog_len: u32, caps: &Caps) -> Result<Census, CapExceeded> {
    caps.check_level(n)?;
    let table = toyvm::min_description_table(max_prog_len, caps)?;
    Ok(census_from_table(n, &table))
}

/// Census of level `n` against an existing table.
pub fn census_from_table(n: u32, table: &ComplexityTable) -> Census {
    let mut buckets: BTreeMap<u32, u64> = (MIN_PROGRAM_LEN..=table.max_prog_len())
        .map(|k| (k, 0))
        .collect();
    let mut none = 0;
    for s in Level::new(n).iter() {
        match table.get(&s) {
            Some(k) => *buckets.entry(k).or_default() += 1,
            None => none += 1,
        }
    }
    Census {
        n,
        max_prog_len: table.max_prog_len(),
        buckets,
        none,
    }
}

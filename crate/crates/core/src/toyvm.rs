//! TOYVM-1: a total, loop-free run-length description machine.
//!
//! Programs are bit strings read left to right:
//!
//! | bits          | instruction                                              |
//! |---------------|----------------------------------------------------------|
//! | `0 b`         | EMIT: append bit `b`                                     |
//! | `10 lll ccc`  | REPEAT: append the last `lll+1` output bits `ccc+1` times |
//! | `11`          | HALT                                                     |
//!
//! A program is valid iff decoding consumes every bit, ends exactly on a
//! HALT, and every REPEAT finds enough earlier output. Since there are no
//! jumps, every program terminates and the description-length oracle built
//! on top of it is exact.
//!
//! The machine is not universal. Description lengths measured here say
//! nothing about Kolmogorov complexity on a universal machine.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bitstring::{AllStrings, BitString};
use crate::caps::{CapExceeded, Caps};

/// Length in bits of the shortest valid program (a bare HALT).
pub const MIN_PROGRAM_LEN: u32 = 2;

/// Most bits a single REPEAT can append (`8 × 8`).
pub const MAX_REPEAT_GROWTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    Emit(bool),
    /// Copy the last `len` output bits, `count` times. Both are in `1..=8`.
    Repeat {
        len: u8,
        count: u8,
    },
    Halt,
}

impl Instruction {
    /// Bits taken by the encoding.
    pub fn width(&self) -> usize {
        match self {
            Instruction::Emit(_) | Instruction::Halt => 2,
            Instruction::Repeat { .. } => 8,
        }
    }

    /// Appends the encoding to `out`. Returns `None` for a REPEAT whose
    /// operands fall outside `1..=8`.
    pub fn encode_into(&self, out: &mut BitString) -> Option<()> {
        match *self {
            Instruction::Emit(b) => {
                out.push(false);
                out.push(b);
            }
            Instruction::Halt => {
                out.push(true);
                out.push(true);
            }
            Instruction::Repeat { len, count } => {
                if !(1..=8).contains(&len) || !(1..=8).contains(&count) {
                    return None;
                }
                out.push(true);
                out.push(false);
                for field in [len - 1, count - 1] {
                    for shift in (0..3).rev() {
                        out.push((field >> shift) & 1 == 1);
                    }
                }
            }
        }
        Some(())
    }
}

/// Assembles a program from instructions.
pub fn assemble(instructions: &[Instruction]) -> Option<DescriptionProgram> {
    let mut code = BitString::new();
    for ins in instructions {
        ins.encode_into(&mut code)?;
    }
    Some(DescriptionProgram { code })
}

/// A candidate program. Any bit string is one; validity is decided by
/// [`decode`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DescriptionProgram {
    pub code: BitString,
}

impl DescriptionProgram {
    pub fn new(code: BitString) -> Self {
        DescriptionProgram { code }
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvalidReason {
    /// Input ended in the middle of an instruction, or before any HALT.
    Truncated,
    /// Bits remain after the HALT.
    TrailingBits,
    /// A REPEAT asked for more bits than have been output.
    RepeatUnderflow,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DecodeOutcome {
    Valid {
        output: BitString,
        /// Instructions decoded, the final HALT included.
        instructions: Vec<Instruction>,
    },
    Invalid(InvalidReason),
}

impl DecodeOutcome {
    pub fn output(&self) -> Option<&BitString> {
        match self {
            DecodeOutcome::Valid { output, .. } => Some(output),
            DecodeOutcome::Invalid(_) => None,
        }
    }

    pub fn is_valid(&self) -> bool {
        matches!(self, DecodeOutcome::Valid { .. })
    }
}

struct Reader<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl Reader<'_> {
    fn bit(&mut self) -> Result<bool, InvalidReason> {
        let b = *self.bits.get(self.pos).ok_or(InvalidReason::Truncated)?;
        self.pos += 1;
        Ok(b)
    }

    fn field3(&mut self) -> Result<u8, InvalidReason> {
        let mut v = 0u8;
        for _ in 0..3 {
            v = (v << 1) | self.bit()? as u8;
        }
        Ok(v)
    }

    fn instruction(&mut self) -> Result<Instruction, InvalidReason> {
        if !self.bit()? {
            return Ok(Instruction::Emit(self.bit()?));
        }
        if self.bit()? {
            return Ok(Instruction::Halt);
        }
        let len = self.field3()? + 1;
        let count = self.field3()? + 1;
        Ok(Instruction::Repeat { len, count })
    }
}

/// Runs a program. Total and deterministic.
pub fn decode(p: &DescriptionProgram) -> DecodeOutcome {
    match run(p.code.bits()) {
        Ok((output, instructions)) => DecodeOutcome::Valid {
            output,
            instructions,
        },
        Err(reason) => DecodeOutcome::Invalid(reason),
    }
}

fn run(bits: &[bool]) -> Result<(BitString, Vec<Instruction>), InvalidReason> {
    let mut reader = Reader { bits, pos: 0 };
    let mut out: Vec<bool> = Vec::new();
    let mut trace = Vec::new();
    loop {
        let ins = reader.instruction()?;
        trace.push(ins);
        match ins {
            Instruction::Emit(b) => out.push(b),
            Instruction::Repeat { len, count } => {
                let len = len as usize;
                if out.len() < len {
                    return Err(InvalidReason::RepeatUnderflow);
                }
                // Snapshot first: the block is the last `len` bits before
                // this instruction, not a self-overlapping copy.
                let block = out[out.len() - len..].to_vec();
                for _ in 0..count {
                    out.extend_from_slice(&block);
                }
            }
            Instruction::Halt => {
                return if reader.pos == bits.len() {
                    Ok((BitString::from_bits(out), trace))
                } else {
                    Err(InvalidReason::TrailingBits)
                };
            }
        }
    }
}

/// Every bit string of length `2..=max_len`, in rank order, with its decode
/// outcome.
pub fn enumerate_programs(
    max_len: u32,
    caps: &Caps,
) -> Result<impl Iterator<Item = (DescriptionProgram, DecodeOutcome)>, CapExceeded> {
    caps.check_prog_len(max_len)?;
    Ok(AllStrings::new()
        .skip_while(|s| s.len() < MIN_PROGRAM_LEN as usize)
        .take_while(move |s| s.len() <= max_len as usize)
        .map(|code| {
            let p = DescriptionProgram::new(code);
            let outcome = decode(&p);
            (p, outcome)
        }))
}

/// Valid programs of exactly `len` bits, with their outputs.
pub fn valid_programs_of_len(len: u32) -> impl Iterator<Item = (BitString, BitString)> {
    valid_programs_in(len, 0..u64::MAX)
}

/// Valid programs of exactly `len` bits whose numeric value lies in `rows`.
/// Disjoint ranges give disjoint slices of the program space, so the
/// exhaustion can be split across workers.
pub fn valid_programs_in(
    len: u32,
    rows: core::ops::Range<u64>,
) -> impl Iterator<Item = (BitString, BitString)> {
    let level = crate::bitstring::Level::new(len);
    let end = level.row_count().map_or(rows.end, |c| c.min(rows.end));
    (rows.start..end)
        .map_while(move |i| level.row(i))
        .filter_map(|code| match run(code.bits()) {
            Ok((output, _)) => Some((code, output)),
            Err(_) => None,
        })
}

/// Minimal description lengths of everything the machine can say in at most
/// `max_prog_len` bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityTable {
    max_prog_len: u32,
    entries: BTreeMap<BitString, u32>,
    valid_programs: u64,
}

impl ComplexityTable {
    /// Assembles a table from `(output, program length)` observations; the
    /// minimum length per output is kept.
    pub fn from_observations(
        max_prog_len: u32,
        observations: impl IntoIterator<Item = (BitString, u32)>,
    ) -> Self {
        let mut table = ComplexityTable {
            max_prog_len,
            entries: BTreeMap::new(),
            valid_programs: 0,
        };
        for (s, k) in observations {
            table.observe(s, k);
        }
        table
    }

    fn observe(&mut self, s: BitString, k: u32) {
        self.valid_programs += 1;
        self.entries
            .entry(s)
            .and_modify(|old| *old = (*old).min(k))
            .or_insert(k);
    }

    /// Merges another table over the same bound.
    pub fn merge(&mut self, other: ComplexityTable) {
        self.valid_programs += other.valid_programs;
        for (s, k) in other.entries {
            self.entries
                .entry(s)
                .and_modify(|old| *old = (*old).min(k))
                .or_insert(k);
        }
    }

    pub fn max_prog_len(&self) -> u32 {
        self.max_prog_len
    }

    /// Minimal description length of `s`, if it is at most the bound.
    pub fn get(&self, s: &BitString) -> Option<u32> {
        self.entries.get(s).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BitString, u32)> {
        self.entries.iter().map(|(s, &k)| (s, k))
    }

    /// Number of distinct outputs.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of valid programs seen while building the table. Zero for a
    /// table read back from its serialized form.
    pub fn valid_programs(&self) -> u64 {
        self.valid_programs
    }
}

pub fn min_description_table(max_len: u32, caps: &Caps) -> Result<ComplexityTable, CapExceeded> {
    caps.check_prog_len(max_len)?;
    let mut table = ComplexityTable::from_observations(max_len, []);
    for (p, outcome) in enumerate_programs(max_len, caps)? {
        if let DecodeOutcome::Valid { output, .. } = outcome {
            table.observe(output, p.len() as u32);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn prog(s: &str) -> DescriptionProgram {
        DescriptionProgram::new(s.parse().unwrap())
    }

    fn out(s: &str) -> Option<BitString> {
        Some(s.parse().unwrap())
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode(&prog("11")).output().cloned(), out(""));
        assert_eq!(decode(&prog("000111")).output().cloned(), out("01"));
        assert_eq!(
            decode(&prog("00011000111011")).output().cloned(),
            out("0101010101010101")
        );
        assert_eq!(
            decode(&prog("1100")),
            DecodeOutcome::Invalid(InvalidReason::TrailingBits)
        );
    }

    #[test]
    fn invalid_reasons() {
        use InvalidReason::*;
        let reason = |s| match decode(&prog(s)) {
            DecodeOutcome::Invalid(r) => r,
            v => panic!("{s} decoded as {v:?}"),
        };
        assert_eq!(reason(""), Truncated);
        assert_eq!(reason("0"), Truncated);
        assert_eq!(reason("00"), Truncated);
        assert_eq!(reason("1000000"), Truncated);
        assert_eq!(reason("1000000011"), RepeatUnderflow);
        assert_eq!(reason("0010001000011"), RepeatUnderflow);
        assert_eq!(reason("111"), TrailingBits);
    }

    #[test]
    fn repeat_copies_a_snapshot() {
        // EMIT 1, EMIT 0, REPEAT l=2 c=2, HALT
        let p = assemble(&[
            Instruction::Emit(true),
            Instruction::Emit(false),
            Instruction::Repeat { len: 2, count: 2 },
            Instruction::Halt,
        ])
        .unwrap();
        assert_eq!(decode(&p).output().cloned(), out("101010"));
    }

    #[test]
    fn assemble_matches_decode() {
        let ins = vec![
            Instruction::Emit(false),
            Instruction::Emit(true),
            Instruction::Repeat { len: 2, count: 7 },
            Instruction::Halt,
        ];
        let p = assemble(&ins).unwrap();
        assert_eq!(p, prog("00011000111011"));
        match decode(&p) {
            DecodeOutcome::Valid { instructions, .. } => assert_eq!(instructions, ins),
            v => panic!("{v:?}"),
        }
        assert!(assemble(&[Instruction::Repeat { len: 0, count: 1 }]).is_none());
    }

    #[test]
    fn table_examples() {
        let caps = Caps::default();
        let t2 = min_description_table(2, &caps).unwrap();
        assert_eq!(t2.len(), 1);
        assert_eq!(t2.get(&BitString::new()), Some(2));
        let t4 = min_description_table(4, &caps).unwrap();
        assert_eq!(t4.get(&"0".parse().unwrap()), Some(4));
        assert_eq!(t4.get(&"1".parse().unwrap()), Some(4));
        let t14 = min_description_table(14, &caps).unwrap();
        assert_eq!(t14.get(&"0101010101010101".parse().unwrap()), Some(14));
    }

    #[test]
    fn program_cap() {
        assert!(enumerate_programs(27, &Caps::default()).is_err());
        assert!(min_description_table(27, &Caps::default()).is_err());
    }
}

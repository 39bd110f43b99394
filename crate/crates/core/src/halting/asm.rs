//! Text form of counter-machine programs.
//!
//! ```text
//! # count r0 down to zero
//! top:  DECJZ r0 done
//!       DECJZ r1 top
//! done: HALT
//! ```
//!
//! One instruction per line, optional `label:` prefix (a label may also sit
//! on its own line and names the next instruction), `#` starts a comment.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use super::machine::{MinskyProgram, Op};
use super::HaltingError;

enum Pending<'a> {
    Inc(usize),
    DecJz(usize, &'a str, usize),
    Halt,
}

fn is_label(s: &str) -> bool {
    let mut chars = s.chars();
    chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn register(tok: &str, line: usize) -> Result<usize, HaltingError> {
    tok.strip_prefix('r')
        .or_else(|| tok.strip_prefix('R'))
        .and_then(|k| k.parse().ok())
        .ok_or_else(|| HaltingError::malformed(Some(line), alloc::format!("bad register {tok:?}")))
}

pub fn parse_program(text: &str) -> Result<MinskyProgram, HaltingError> {
    let mut labels: BTreeMap<&str, usize> = BTreeMap::new();
    let mut pending = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut rest = raw.split('#').next().unwrap_or("").trim();
        if let Some((head, tail)) = rest.split_once(':') {
            let name = head.trim();
            if !is_label(name) {
                return Err(HaltingError::malformed(
                    Some(line),
                    alloc::format!("bad label {name:?}"),
                ));
            }
            if labels.insert(name, pending.len()).is_some() {
                return Err(HaltingError::malformed(
                    Some(line),
                    alloc::format!("label {name:?} defined twice"),
                ));
            }
            rest = tail.trim();
        }
        if rest.is_empty() {
            continue;
        }
        let toks: Vec<&str> = rest.split_whitespace().collect();
        let op = match (toks[0].to_ascii_uppercase().as_str(), &toks[1..]) {
            ("INC", [r]) => Pending::Inc(register(r, line)?),
            ("DECJZ", [r, target]) => Pending::DecJz(register(r, line)?, target, line),
            ("HALT", []) => Pending::Halt,
            _ => {
                return Err(HaltingError::malformed(
                    Some(line),
                    alloc::format!("cannot parse {rest:?}"),
                ))
            }
        };
        pending.push(op);
    }

    let ops = pending
        .into_iter()
        .map(|op| match op {
            Pending::Inc(r) => Ok(Op::Inc(r)),
            Pending::Halt => Ok(Op::Halt),
            Pending::DecJz(r, target, line) => match labels.get(target) {
                Some(&t) => Ok(Op::DecJz(r, t)),
                None => Err(HaltingError::malformed(
                    Some(line),
                    alloc::format!("unresolved label {target:?}"),
                )),
            },
        })
        .collect::<Result<Vec<_>, _>>()?;

    // A label after the last instruction has nothing to name.
    if let Some((name, _)) = labels.iter().find(|(_, &i)| i >= ops.len()) {
        return Err(HaltingError::malformed(
            None,
            alloc::format!("label {name:?} names no instruction"),
        ));
    }
    let names = labels
        .into_iter()
        .map(|(n, i)| (i, n.to_string()))
        .collect();
    MinskyProgram::with_labels(ops, names)
}

/// Prints a program in the form [`parse_program`] accepts. Unnamed jump
/// targets get `L<index>` labels.
pub fn to_text(program: &MinskyProgram) -> String {
    let name = |i: usize| -> String {
        program
            .label_at(i)
            .map(String::from)
            .unwrap_or_else(|| alloc::format!("L{i}"))
    };
    let targets: Vec<usize> = program
        .ops()
        .iter()
        .filter_map(|op| match *op {
            Op::DecJz(_, t) => Some(t),
            _ => None,
        })
        .collect();
    let mut out = String::new();
    for (i, op) in program.ops().iter().enumerate() {
        if program.label_at(i).is_some() || targets.contains(&i) {
            let _ = write!(out, "{}: ", name(i));
        }
        let _ = match *op {
            Op::Inc(r) => writeln!(out, "INC r{r}"),
            Op::DecJz(r, t) => writeln!(out, "DECJZ r{r} {}", name(t)),
            Op::Halt => writeln!(out, "HALT"),
        };
    }
    out
}

/// Parses `r0=3,r2=1` into a register vector (unlisted registers are zero).
pub fn parse_input(text: &str) -> Result<Vec<u64>, HaltingError> {
    let mut regs: Vec<u64> = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (r, v) = item
            .split_once('=')
            .ok_or_else(|| HaltingError::BadInput(item.to_string()))?;
        let r = register(r.trim(), 0).map_err(|_| HaltingError::BadInput(item.to_string()))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|_| HaltingError::BadInput(item.to_string()))?;
        if regs.len() <= r {
            regs.resize(r + 1, 0);
        }
        regs[r] = v;
    }
    Ok(regs)
}

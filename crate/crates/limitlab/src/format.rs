//! ndjson encodings. One JSON object per line, fields in a fixed order, so
//! equal inputs produce byte-identical output.

use std::collections::BTreeSet;
use std::io::{self, BufRead, Write};

use limitlab_core::complexity::Census;
use limitlab_core::halting::arena::{LargeTesterTrace, TView, TprimeView, TraceEvent};
use limitlab_core::halting::{Heartbeat, RunOutcome, RunReport, POSSIBLE_LACK_OF_HALT};
use limitlab_core::realgen::StreamEvent;
use limitlab_core::toyvm::ComplexityTable;
use limitlab_core::BitString;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        source: serde_json::Error,
    },
    #[error("line {line}: {message}")]
    Schema { line: usize, message: String },
}

fn line<T: Serialize>(w: &mut (impl Write + ?Sized), value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    w.write_all(b"\n")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableHeader {
    max_prog_len: u32,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableRow {
    s: String,
    k: u32,
}

/// Header line `{"max_prog_len": L}`, then one `{"s": ..., "k": ...}` per
/// entry in rank order of `s`.
pub fn write_table(w: &mut (impl Write + ?Sized), table: &ComplexityTable) -> io::Result<()> {
    line(
        w,
        &TableHeader {
            max_prog_len: table.max_prog_len(),
        },
    )?;
    for (s, k) in table.entries() {
        line(
            w,
            &TableRow {
                s: s.to_string(),
                k,
            },
        )?;
    }
    Ok(())
}

pub fn read_table(r: impl BufRead) -> Result<ComplexityTable, FormatError> {
    let mut header = None;
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for (idx, text) in r.lines().enumerate() {
        let text = text?;
        let line = idx + 1;
        if text.trim().is_empty() {
            continue;
        }
        let json = |source| FormatError::Json { line, source };
        let schema = |message: String| FormatError::Schema { line, message };
        if header.is_none() {
            let h: TableHeader = serde_json::from_str(&text).map_err(json)?;
            header = Some(h.max_prog_len);
            continue;
        }
        let row: TableRow = serde_json::from_str(&text).map_err(json)?;
        let s: BitString = row.s.parse().map_err(|e| schema(format!("{e}")))?;
        if row.k > header.unwrap_or(0) {
            return Err(schema(format!("k = {} is above max_prog_len", row.k)));
        }
        if !seen.insert(s.clone()) {
            return Err(schema(format!("duplicate entry for {s:?}")));
        }
        rows.push((s, row.k));
    }
    let max_prog_len = header.ok_or(FormatError::Schema {
        line: 0,
        message: "missing header line".into(),
    })?;
    Ok(ComplexityTable::from_observations(max_prog_len, rows))
}

/// `{"k": k, "count": c}` for every bucket, then `{"none": x}`.
pub fn write_census(w: &mut (impl Write + ?Sized), census: &Census) -> io::Result<()> {
    #[derive(Serialize)]
    struct Bucket {
        k: u32,
        count: u64,
    }
    #[derive(Serialize)]
    struct None_ {
        none: u64,
    }
    for (&k, &count) in &census.buckets {
        line(w, &Bucket { k, count })?;
    }
    line(w, &None_ { none: census.none })
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct StreamLine {
    pub len: usize,
    pub prefix: String,
    pub event: String,
}

impl From<&StreamEvent> for StreamLine {
    fn from(ev: &StreamEvent) -> Self {
        StreamLine {
            len: ev.prefix.len(),
            prefix: ev.prefix.to_string(),
            event: ev.kind.as_str().to_string(),
        }
    }
}

pub fn write_stream_event(w: &mut (impl Write + ?Sized), ev: &StreamEvent) -> io::Result<()> {
    line(w, &StreamLine::from(ev))
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TraceLine {
    pub tick: u64,
    pub t: String,
    pub tprime: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub by: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub hypothesis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub observed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub marker: Option<String>,
}

impl From<&TraceEvent> for TraceLine {
    fn from(ev: &TraceEvent) -> Self {
        let t = match ev.t {
            TView::Running => "running".to_string(),
            TView::Returned(v) => format!("halted:{}", v.as_str()),
        };
        let tprime = match ev.tprime {
            TprimeView::Idle => "idle",
            TprimeView::Waiting => "waiting",
            TprimeView::Acted(a) => a.as_str(),
        };
        TraceLine {
            tick: ev.tick,
            t,
            tprime: tprime.to_string(),
            verdict: ev.verdict.map(|v| v.value.as_str().to_string()),
            by: ev.verdict.map(|v| v.by.as_str().to_string()),
            hypothesis: ev.hypothesis.map(|v| v.as_str().to_string()),
            observed: ev.observed.map(|v| v.as_str().to_string()),
            marker: ev.marker.map(|m| m.as_str().to_string()),
        }
    }
}

pub fn write_trace(w: &mut (impl Write + ?Sized), trace: &LargeTesterTrace) -> io::Result<()> {
    for ev in &trace.events {
        line(w, &TraceLine::from(ev))?;
    }
    Ok(())
}

/// Heartbeat lines followed by one outcome line.
pub fn write_run_report(w: &mut (impl Write + ?Sized), report: &RunReport) -> io::Result<()> {
    #[derive(Serialize)]
    struct HeartbeatLine<'a> {
        heartbeat: u64,
        pc: usize,
        registers: &'a [u64],
    }
    for Heartbeat { step, state } in &report.heartbeats {
        line(
            w,
            &HeartbeatLine {
                heartbeat: *step,
                pc: state.pc,
                registers: &state.registers,
            },
        )?;
    }
    let value = match &report.outcome {
        RunOutcome::Halted { steps, registers } => serde_json::json!({
            "outcome": "halted",
            "steps": steps,
            "registers": registers,
        }),
        RunOutcome::CycleDetected {
            first_step,
            period,
            first_seen,
            witness,
        } => serde_json::json!({
            "outcome": "cycle_detected",
            "first_step": first_step,
            "period": period,
            "first_seen": first_seen,
            "pc": witness.pc,
            "registers": witness.registers,
        }),
        RunOutcome::BudgetExhausted { budget } => serde_json::json!({
            "outcome": "budget_exhausted",
            "budget": budget,
            "warning": POSSIBLE_LACK_OF_HALT,
        }),
    };
    line(w, &value)
}

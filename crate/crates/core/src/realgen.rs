//! Generators that walk single paths through the tree of all binary strings.
//!
//! * [`random_real_stream`] follows one path chosen bit by bit by a
//!   [`BitSource`], producing ever longer prefixes of one real number.
//! * [`find_target`] runs the full enumeration and compares every string with
//!   a finite target.
//! * [`noncompressible_stream`] follows a source-chosen path but refuses
//!   prefixes that are m-compressible, trying the sibling and backtracking
//!   when both children are refused.

use alloc::boxed::Box;
use alloc::collections::VecDeque;
use alloc::vec::Vec;

use thiserror::Error;

use crate::bitstring::{AllStrings, BitString};
use crate::caps::{CapExceeded, Caps};
use crate::complexity::{CompressibilityParams, CompressibleSet};

/// Produces one bit per request. `None` means a finite source ran dry.
pub trait BitSource {
    fn next_bit(&mut self) -> Option<bool>;
}

impl<S: BitSource + ?Sized> BitSource for &mut S {
    fn next_bit(&mut self) -> Option<bool> {
        (**self).next_bit()
    }
}

impl<S: BitSource + ?Sized> BitSource for Box<S> {
    fn next_bit(&mut self) -> Option<bool> {
        (**self).next_bit()
    }
}

/// SplitMix64. Each output word contributes its most significant bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

impl BitSource for SplitMix64 {
    fn next_bit(&mut self) -> Option<bool> {
        Some(self.next_u64() >> 63 == 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constant(pub bool);

impl BitSource for Constant {
    fn next_bit(&mut self) -> Option<bool> {
        Some(self.0)
    }
}

/// `0, 1, 0, 1, ...`
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Alternating {
    next: bool,
}

impl Alternating {
    pub fn new() -> Self {
        Alternating { next: false }
    }
}

impl BitSource for Alternating {
    fn next_bit(&mut self) -> Option<bool> {
        let b = self.next;
        self.next = !b;
        Some(b)
    }
}

/// Replays a fixed sequence, then runs dry.
#[derive(Debug, Clone)]
pub struct FiniteBits {
    bits: Vec<bool>,
    pos: usize,
}

impl FiniteBits {
    pub fn new(bits: Vec<bool>) -> Self {
        FiniteBits { bits, pos: 0 }
    }
}

impl BitSource for FiniteBits {
    fn next_bit(&mut self) -> Option<bool> {
        let b = self.bits.get(self.pos).copied();
        self.pos += 1;
        b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealGenError {
    #[error("SourceExhausted: the bit source ran dry after {produced} bits")]
    SourceExhausted { produced: usize },
    #[error("DeadEnd: no admissible path reaches length {max_len}")]
    DeadEnd { max_len: usize },
    #[error("max_len must be at least 1")]
    ZeroLength,
    #[error(transparent)]
    Cap(#[from] CapExceeded),
}

/// Prefixes of lengths `1..=max_len` along the path picked by `source`.
pub struct RealStream<S> {
    source: S,
    prefix: BitString,
    max_len: usize,
    failed: bool,
}

pub fn random_real_stream<S: BitSource>(
    source: S,
    max_len: usize,
) -> Result<RealStream<S>, RealGenError> {
    if max_len == 0 {
        return Err(RealGenError::ZeroLength);
    }
    Ok(RealStream {
        source,
        prefix: BitString::new(),
        max_len,
        failed: false,
    })
}

impl<S: BitSource> Iterator for RealStream<S> {
    type Item = Result<BitString, RealGenError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.prefix.len() >= self.max_len {
            return None;
        }
        match self.source.next_bit() {
            Some(b) => {
                self.prefix.push(b);
                Some(Ok(self.prefix.clone()))
            }
            None => {
                self.failed = true;
                Some(Err(RealGenError::SourceExhausted {
                    produced: self.prefix.len(),
                }))
            }
        }
    }
}

/// Runs the enumeration from the start and returns the step at which
/// `target` comes up.
pub fn find_target(target: &BitString) -> u128 {
    (0u128..)
        .zip(AllStrings::new())
        .find_map(|(step, s)| (&s == target).then_some(step))
        .expect("every finite string is enumerated")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EventKind {
    Emit,
    Reject,
    Backtrack,
}

impl EventKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EventKind::Emit => "emit",
            EventKind::Reject => "reject",
            EventKind::Backtrack => "backtrack",
        }
    }
}

/// One step of a filtered stream. For `Emit` the prefix is the newly accepted
/// one, for `Reject` the refused candidate, for `Backtrack` the prefix the
/// walk retreated to.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StreamEvent {
    pub kind: EventKind,
    pub prefix: BitString,
}

/// Decides which prefixes a [`FilteredStream`] may accept.
pub trait PrefixFilter {
    fn admits(&self, prefix: &BitString) -> bool;
}

impl<F: Fn(&BitString) -> bool> PrefixFilter for F {
    fn admits(&self, prefix: &BitString) -> bool {
        self(prefix)
    }
}

/// Admits prefixes of length at most `m + c`, and longer ones only when they
/// are m-non-compressible.
#[derive(Debug, Clone)]
pub struct NoncompressibleFilter {
    exempt_len: usize,
    compressible: Option<CompressibleSet>,
}

impl NoncompressibleFilter {
    /// `longest` is the longest prefix the filter will be asked about; the
    /// compressible set is only built when it exceeds the exemption.
    pub fn new(
        params: CompressibilityParams,
        longest: usize,
        caps: &Caps,
    ) -> Result<Self, CapExceeded> {
        let exempt_len = params.machine_bound() as usize;
        let compressible = if longest > exempt_len {
            Some(CompressibleSet::build(params, None, caps)?)
        } else {
            None
        };
        Ok(NoncompressibleFilter {
            exempt_len,
            compressible,
        })
    }
}

impl PrefixFilter for NoncompressibleFilter {
    fn admits(&self, prefix: &BitString) -> bool {
        prefix.len() <= self.exempt_len
            || !self
                .compressible
                .as_ref()
                .is_some_and(|set| set.is_compressible(prefix))
    }
}

/// Depth-first walk along the source-preferred path that only accepts
/// prefixes admitted by the filter. A refused candidate is followed by its
/// sibling; when both children are refused the walk backtracks.
pub struct FilteredStream<S, F> {
    source: S,
    filter: F,
    max_len: usize,
    prefix: BitString,
    /// One entry per bit of `prefix`: whether the other child of its parent
    /// is still untried.
    sibling_untried: Vec<bool>,
    pending: VecDeque<StreamEvent>,
    error: Option<RealGenError>,
    finished: bool,
}

pub type NoncompressibleStream<S> = FilteredStream<S, NoncompressibleFilter>;

pub fn noncompressible_stream<S: BitSource>(
    source: S,
    params: CompressibilityParams,
    max_len: usize,
    caps: &Caps,
) -> Result<NoncompressibleStream<S>, RealGenError> {
    let filter = NoncompressibleFilter::new(params, max_len, caps)?;
    FilteredStream::new(source, filter, max_len)
}

impl<S: BitSource, F: PrefixFilter> FilteredStream<S, F> {
    pub fn new(source: S, filter: F, max_len: usize) -> Result<Self, RealGenError> {
        if max_len == 0 {
            return Err(RealGenError::ZeroLength);
        }
        Ok(FilteredStream {
            source,
            filter,
            max_len,
            prefix: BitString::new(),
            sibling_untried: Vec::new(),
            pending: VecDeque::new(),
            error: None,
            finished: false,
        })
    }

    /// The currently accepted prefix.
    pub fn prefix(&self) -> &BitString {
        &self.prefix
    }

    fn record(&mut self, kind: EventKind, prefix: BitString) {
        self.pending.push_back(StreamEvent { kind, prefix });
    }

    fn accept(&mut self, candidate: BitString, sibling_untried: bool) {
        self.prefix = candidate.clone();
        self.sibling_untried.push(sibling_untried);
        if self.prefix.len() >= self.max_len {
            self.finished = true;
        }
        self.record(EventKind::Emit, candidate);
    }

    /// Extends the path by one accepted bit, queueing every event on the way.
    fn advance(&mut self) -> Result<(), RealGenError> {
        let preferred = self
            .source
            .next_bit()
            .ok_or(RealGenError::SourceExhausted {
                produced: self.prefix.len(),
            })?;
        for (i, bit) in [preferred, !preferred].into_iter().enumerate() {
            let candidate = self.prefix.with(bit);
            if self.filter.admits(&candidate) {
                self.accept(candidate, i == 0);
                return Ok(());
            }
            self.record(EventKind::Reject, candidate);
        }
        loop {
            let Some(untried) = self.sibling_untried.pop() else {
                return Err(RealGenError::DeadEnd {
                    max_len: self.max_len,
                });
            };
            let last = self.prefix.pop().expect("one stack entry per bit");
            self.record(EventKind::Backtrack, self.prefix.clone());
            if untried {
                let candidate = self.prefix.with(!last);
                if self.filter.admits(&candidate) {
                    self.accept(candidate, false);
                    return Ok(());
                }
                self.record(EventKind::Reject, candidate);
            }
        }
    }
}

impl<S: BitSource, F: PrefixFilter> Iterator for FilteredStream<S, F> {
    type Item = Result<StreamEvent, RealGenError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            if let Some(ev) = self.pending.pop_front() {
                return Some(Ok(ev));
            }
            if let Some(e) = self.error.take() {
                return Some(Err(e));
            }
            if self.finished {
                return None;
            }
            if let Err(e) = self.advance() {
                // Events queued before the failure still go out first.
                self.finished = true;
                self.error = Some(e);
            }
        }
    }
}

//! The std side of limitlab: ndjson file formats, an OS entropy bit source,
//! a parallel build of the description-length table, and the command line.

pub mod cli;
pub mod entropy;
pub mod format;
pub mod parallel;

pub use limitlab_core as core;

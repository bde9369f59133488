//! File formats, report rendering and the command line for `covercert-core`.

pub mod cli;
pub mod format;
pub mod rational;
pub mod report;

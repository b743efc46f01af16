//! Worked examples assembled from the library: structures, calculi and the
//! verification suites run by the command-line tool.

pub mod pipelines;
pub mod smash;
pub mod torus;

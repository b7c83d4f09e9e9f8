//! Std companion to `crew-core`: file formats, seeded generators, a timing
//! harness and the `crew` command line.

pub mod bench;
pub mod cli;
pub mod format;
pub mod gen;

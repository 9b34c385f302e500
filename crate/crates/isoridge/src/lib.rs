//! File formats, parallel kernels and the command line front end for
//! [`isoridge_core`].

pub mod fixtures;
pub mod netpbm;
pub mod output;
pub mod parallel;
pub mod pipeline;

pub use isoridge_core as core;

//! File formats, parallel verification drivers and the `dratio` command line
//! on top of [`dratio_core`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baum;
pub mod cli;
pub mod io;
pub mod search;
pub mod sweep;

pub use dratio_core as core;

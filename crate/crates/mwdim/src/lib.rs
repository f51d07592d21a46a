//! File formats, reports, figures and the command-line front end for
//! [`mwdim_core`].

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cloud;
pub mod commands;
pub mod error;
pub mod format;
pub mod graph_file;
pub mod regions;
pub mod report;
pub mod svg;

pub use error::{CliError, ParseError};

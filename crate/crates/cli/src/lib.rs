//! Library side of the `minext` command-line tool: the analysis pipeline,
//! scripted example reproduction, fixtures, and plot export.

pub mod fixtures;
pub mod pipeline;
pub mod plot;
pub mod reproduce;

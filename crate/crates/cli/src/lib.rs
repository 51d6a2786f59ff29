//! Scene files, figures and the subcommands of the `caustica` binary.

pub mod commands;
pub mod config;
pub mod render;

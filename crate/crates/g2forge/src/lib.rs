//! Command-line front end, fixture registry and JSON reports for
//! [`g2forge_core`].

pub mod cli;
pub mod commands;
pub mod fixture;
pub mod registry;
pub mod report;
pub mod reproduce;

pub use g2forge_core as core;

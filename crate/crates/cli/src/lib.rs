//! File formats and subcommands behind the `delsarte` binary.

pub mod commands;
pub mod instance;
pub mod record;
pub mod sweep;

//! Command line front end: document types, commands and rendering. The
//! `masslin` binary is a thin clap wrapper around [`cmd`].

pub mod args;
pub mod cmd;
pub mod doc;
pub mod error;
pub mod render;

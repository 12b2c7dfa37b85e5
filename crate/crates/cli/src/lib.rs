//! Library surface of the `signcoh` command-line tool: document parsing,
//! report rendering, and command dispatch. The binary in `main.rs` is a
//! thin wrapper so that integration tests can drive everything in-process
//! as well as through the executable.

pub mod app;
pub mod document;
pub mod output;

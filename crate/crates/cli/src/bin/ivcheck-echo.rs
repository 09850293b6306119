//! Reference subprocess adapter: answers the line protocol on standard
//! input and output with the built-in engine.

use std::io;

use ivcheck::harness::{serve, BuiltinAdapter};

fn main() -> io::Result<()> {
    serve(&BuiltinAdapter, io::stdin().lock(), io::stdout().lock())
}

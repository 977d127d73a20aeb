//! CLI (stub).
pub fn run<I: IntoIterator<Item = String>>(_args: I) -> i32 { 0 }

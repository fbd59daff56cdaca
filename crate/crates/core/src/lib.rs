//! Normal forms, exact arithmetic and structural classification for weighted
//! Leavitt path algebras.

pub mod classify;
pub mod cli;
pub mod element;
pub mod expr;
pub mod fixtures;
pub mod format;
pub mod grading;
pub mod graph;
pub mod rewrite;
pub mod ring;
pub mod testkit;
pub mod word;

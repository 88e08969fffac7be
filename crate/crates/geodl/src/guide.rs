//! The book's chapters, compiled as doc-tests.
//!
//! The guide under `book/` is an mdbook project; mdbook itself cannot run
//! listings against the crate, so each chapter is included here as module
//! documentation and `cargo test --doc` executes every code block. One
//! module per chapter keeps failures attributable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/knowledge-bases.md")]
pub mod knowledge_bases {}

#[doc = include_str!("../../../book/src/regions.md")]
pub mod regions {}

#[doc = include_str!("../../../book/src/semantics.md")]
pub mod semantics {}

#[doc = include_str!("../../../book/src/reasoning.md")]
pub mod reasoning {}

#[doc = include_str!("../../../book/src/auditing.md")]
pub mod auditing {}

#[doc = include_str!("../../../book/src/gallery.md")]
pub mod gallery {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

//! The chapters of `book/` as modules, so that `cargo test --doc` runs their examples.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/conventions.md")]
pub mod conventions {}
#[doc = include_str!("../../../book/src/modules.md")]
pub mod modules {}
#[doc = include_str!("../../../book/src/complexes.md")]
pub mod complexes {}
#[doc = include_str!("../../../book/src/tilting.md")]
pub mod tilting {}
#[doc = include_str!("../../../book/src/classification.md")]
pub mod classification {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

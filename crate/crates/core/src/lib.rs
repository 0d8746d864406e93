pub mod algebra;
pub mod builtin;
pub mod complexes;
pub mod error;
pub mod modrep;
pub mod quiver;
pub mod repclass;
pub mod scalars;
pub mod tilting;

pub use error::{Error, Result};

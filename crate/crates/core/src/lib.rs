//! Cayley graphs of finite groups and the flexibility of their planar
//! bar-joint frameworks.

pub mod cli;
pub mod error;
pub mod flex;
pub mod graph;
pub mod group;
pub mod io;
pub mod nac;
pub mod rigidity;
pub mod theorems;
pub mod union_find;
mod util;

pub use error::{Error, Result};

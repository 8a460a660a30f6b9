//! Ext over A(1), Adams and Atiyah-Hirzebruch spectral sequence charts, and
//! the bordism and SPT classification groups read off from them.

pub mod adamschart;
pub mod ahss;
pub mod classify;
pub mod cli;
pub mod error;
pub mod f2core;
pub mod modcat;
pub mod resolve;
pub mod steenrod;
pub mod thomspaces;

pub use error::{Error, Result};

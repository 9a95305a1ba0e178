#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fock;
pub mod heterodyne;
pub mod caves;
pub mod rns;
pub mod classical;
pub mod suite;
pub mod report;

pub use error::{Error, Result};

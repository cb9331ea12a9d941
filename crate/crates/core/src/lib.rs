//! Exact finite-field computations for plane curves of degree `q + 2`
//! that pass through every `F_q`-rational point of the projective plane.

pub mod autgroup;
pub mod centralizer;
pub mod classify;
pub mod cli;
pub mod error;
pub mod ffield;
pub mod forms;
pub mod linalg;
pub mod numtheory;
pub mod poly;
pub mod smooth;
pub mod verify;

pub use error::{Error, Result};
pub use ffield::{Elem, Field};

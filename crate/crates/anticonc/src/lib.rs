//! Concentration functions of weighted sums of i.i.d. random variables at
//! desk scale: exact computation for finite discrete laws, box-quadrature
//! functionals of characteristic functions, bounds through symmetric
//! infinitely divisible (compound Poisson) laws, and search for the
//! arithmetic structure of supports.
//!
//! Norm conventions, used consistently everywhere: integration boxes and
//! tau-neighborhoods are sup-norm sets; the concentration ball
//! `B = {||x|| <= 1/2}` is Euclidean.

pub mod bounds;
pub mod charfn;
pub mod concentration;
pub mod error;
pub mod idiv;
pub mod io;
pub mod measures;
pub mod quad;
pub mod rng;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};

//! Cluster structures on mixed Grassmannians built from Demazure weaves.
//!
//! The pipeline runs signature → marked word → initial weave → decorated
//! flags → seed → amalgamated seed. Every algebraic step is generic over
//! [`ring::Scalar`], so it runs both over exact rational functions and modulo
//! a large prime.

pub mod cli;
pub mod cluster;
pub mod exterior;
pub mod flags;
pub mod linalg;
pub mod quiver;
pub mod ring;
pub mod signature;
pub mod verify;
pub mod weave;
pub mod words;

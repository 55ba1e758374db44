//! Exact symbolic engine for the extended Hopf algebra of transverse
//! differential operators on the frame bundle, its Hopf-cyclic bicomplex,
//! the truncated Weil complex and the van Est cochain map.
//!
//! All arithmetic is over exact rationals.

#![no_std]

extern crate alloc;

pub mod coeff_ring;
pub mod cyclic_module;
pub mod exterior;
pub mod hopf_core;
pub mod hopf_structure;
pub mod jet_model;
pub mod limits;
pub mod poly;
pub mod random;
pub mod suite;
pub mod van_est;
pub mod weil_complex;

pub use coeff_ring::{Atom, CoeffPoly, Der, Diffeo, Idx};
pub use poly::{Mono, Poly, Scalar};

//! Homotopy and homology invariants of digital images.
//!
//! A digital image is a finite point set with an adjacency relation, either
//! c_k adjacency on ℤⁿ or an explicit graph. This crate computes four homology
//! theories for such images (clique-complex simplicial, singular, cubical over
//! maps of unit cubes, and elementary-cube homology for c₁ images), classifies
//! continuous maps up to homotopy and strong homotopy, and ships exhaustive
//! verification harnesses for the enumeration-based results.

pub mod cubical_c1;
pub mod error;
pub mod image;
pub mod io;
pub mod maps;
pub mod simplicial;
pub mod singular;
pub mod theory;
pub mod verify;
pub mod zmod;

pub use cubical_c1::{CubicalChain, CubicalComplex, ElementaryCube};
pub use error::{Error, Result};
pub use image::{Adjacency, DigitalImage, Point};
pub use maps::{DigitalMap, HomotopyClasses, HomotopyTrace, Relation};
pub use simplicial::{Simplex, SimplicialChain, SimplicialComplex};
pub use theory::Theory;
pub use zmod::{
    ChainComplex, ChainComplexSlice, HomologyBasis, HomologyGroup, InducedMap, IntMatrix, SmithDecomposition,
};

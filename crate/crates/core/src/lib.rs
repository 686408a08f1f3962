//! Exact finite model of linear homotopy-type theory: finite groupoids,
//! local systems of rational vector spaces, their six-operation calculus,
//! and pull-push quantization.

pub mod base_change;
pub mod corpus;
pub mod error;
pub mod functor;
pub mod group;
pub mod groupoid;
pub mod linear;
pub mod matrix;
pub mod models;
pub mod quantize;

pub use error::{Error, Result};
pub use functor::{homotopy_fiber, iso_comma, GroupoidFunctor, HomotopyFiber, IsoComma, NaturalIso};
pub use group::Group;
pub use groupoid::{Components, FiniteGroupoid};
pub use matrix::{Matrix, Rational};
pub use linear::{
    compose, dual, identity_map, natural_map_basis, pullback, tensor, unit_system, InnerProduct, LocalSystem,
    SystemMap,
};

//! Weak Lefschetz property of the artinian algebras
//! `A(G) = k[x_1..x_n] / ((x_i^2) + I(G))` attached to simple graphs.
//!
//! The degree-`k` monomials of `A(G)` are the `k`-element independent sets
//! of `G`, so the Hilbert series is the independence polynomial, and the
//! multiplication maps by `x_1 + .. + x_n` are 0/1 matrices whose exact
//! ranks decide the property.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod family;
pub mod graph;
pub mod indpoly;
pub mod linalg;
pub mod poly;
pub mod vertex_set;

pub use algebra::{
    degree_basis, hilbert_quotient, lefschetz_matrix, tensor_failure_witness, wlp_check,
    CertifyMode, Characteristic, DegreeBasis, DegreeRankRecord, Sense, TensorWitness, WlpOptions,
    WlpVerdict,
};
pub use error::{Error, Result};
pub use family::{make_family, parse_family, parse_spec, FamilySpec};
pub use graph::Graph;
pub use indpoly::{
    closed_form, indpoly_enum, indpoly_rec, mode_formula, unimodality_report, ClosedForm,
    ModeFamily, UnimodalReport,
};
pub use poly::IntPolynomial;

//! Spectra of uniform hypergraphs: tensors, product constructions, closed-form
//! eigenpairs, numeric eigen-solvers and hypertree characteristic polynomials.

pub mod cli;
pub mod constructions;
pub mod hypergraph;
pub mod hypertree;
pub mod numeric;
pub mod poly;
pub mod tensor;
pub mod theorems;

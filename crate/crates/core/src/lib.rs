pub mod algebra;
pub mod autlab;
pub mod corpus;
pub mod curvegraph;
pub mod derivation;
pub mod fibration;
pub mod lattice;
pub mod vinberg;

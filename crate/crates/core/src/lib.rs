//! Seifert fibered homology spheres: Seifert invariants, `1/m` surgery on
//! fibers, plumbing lattices with their d-invariants, and Alexander
//! polynomials of singular fibers.

pub mod alexander;
pub mod arith;
pub mod error;
pub mod lattice;
pub mod plumbing;
pub mod semigroup;
pub mod seifert;
#[doc(hidden)]
pub mod serde_int;
pub mod surgery;

pub use alexander::{alexander_fiber, fox_milnor_verdict, IntegerPolynomial, Verdict};
pub use arith::{egcd, eval_cont_frac, mod_inverse, neg_cont_frac, NegContFrac, Rational};
pub use error::{Error, Result};
pub use lattice::{d_invariant, d_of_manifold, GramLattice};
pub use plumbing::{plumbing_graph, PlumbingGraph};
pub use semigroup::NumericalSemigroup;
pub use seifert::{
    canonicalize, fiber_index_by_order, from_multiplicities, Multiplicities, OrientedSeifert,
    SeifertInvariants, Sign,
};
pub use surgery::{cross_case, d_survey, fiber_slope, infinite_order_witness, surger_fiber};

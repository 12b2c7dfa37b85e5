//! Exact computation of rank-one sign local system cohomology on the
//! complements of rational hyperplane arrangements.
//!
//! An arrangement is a finite set of affine hyperplanes `a·x = c` with
//! rational coefficients in complex `n`-space. A sign local system assigns a
//! monodromy `t_i ∈ {+1, -1}` to each hyperplane; the hyperplane at infinity
//! picks up the forced value `t_0 = ∏ t_i`. This crate provides two
//! independent routes to the twisted cohomology groups `H^i(M, L)` of the
//! complement `M`:
//!
//! * a combinatorial closed form, valid whenever the local system satisfies
//!   the CDO condition (`t_X = -1` on every dense edge of the projective
//!   closure lying at infinity), driven entirely by the intersection poset
//!   and its Möbius function, and
//! * a Salvetti-complex oracle, which stratifies real space by sign vectors,
//!   builds the dual cell complex of the complexified complement, twists its
//!   coboundary maps by the local system, and reduces to invariant factors
//!   by integral Smith normal form.
//!
//! All arithmetic is exact: rationals with arbitrary-precision integers, no
//! floating point anywhere.

pub mod abelian;
pub mod arrangement;
pub mod cohomology;
pub mod density;
pub mod error;
pub mod faces;
pub mod matrix;
pub mod matroid;
pub mod poset;
pub mod salvetti;
pub mod snf;

pub use abelian::{cohomology_of_pair, AbelianGroup};
pub use arrangement::{Arrangement, ConedArrangement, Hyperplane};
pub use cohomology::{
    beta_sequence, lemma_central_cohomology, theorem_cohomology, theorem_formula,
    CohomologyProfile, Method,
};
pub use density::{cdo_check, dense_edges, dense_edges_at_infinity, edge_monodromy, CdoOutcome,
    DenseEdgeReport, Sign, SignLocalSystem};
pub use error::Error;
pub use faces::{enumerate_faces, Face};
pub use matrix::{AffineSubspace, IntegerMatrix, Rational, RationalMatrix};
pub use matroid::{is_irreducible, matroid_components};
pub use poset::{projective_betti, Flat, IntersectionPoset};
pub use salvetti::{build_salvetti, oracle_cohomology, twisted_coboundaries, SalvettiCells,
    TwistedComplex};
pub use snf::smith_normal_form;

/// Convenience result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

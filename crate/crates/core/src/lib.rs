//! Exact computation of the rational De Rham cohomology of the complement of
//! a smooth projective hypersurface `Y = {f = 0} ⊂ P^(n+1)`, its pole-order
//! (Hodge) filtration, the primitive Hodge numbers of `Y`, residues, and a
//! general spectral-sequence engine for finite filtered complexes.
//!
//! All arithmetic is over arbitrary-precision rationals.

pub mod griffiths;
pub mod hodge;
pub mod jacobian;
pub mod linalg;
pub mod poly;
pub mod residue;
pub mod specseq;

pub use griffiths::{
    is_exact, is_second_kind, make_form, normal_form, pole_filtration_dim, reduce_once, FormSum,
    GriffithsError, NormalForm, RationalTopForm,
};
pub use hodge::{
    betti_table, complement_cohomology, consistency_report, euler_characteristic,
    hodge_filtration_dims, primitive_hodge_numbers, ComplementCohomology, ConsistencyReport,
    PrimitiveHodgeNumbers,
};
pub use jacobian::{build_context, hilbert_series_oracle, HypersurfaceContext, JacobianError};
pub use linalg::{kernel_basis, rref, solve, LinalgError, QMatrix, RrefResult, Scalar};
pub use poly::{monomial_basis, GradedPoly, Monomial, PolyError};
pub use residue::{residue, residue_filtration_check, theorem41_report, ResidueClass};
pub use specseq::{
    degeneration_page, make_filtration, two_term_les, CochainComplex, FilteredComplex,
    SpecSeqError, SpectralPage, Truncation,
};

//! Ground-truth oracles and exact checks of the algebraic identities behind
//! the solver. Everything here is brute force or closed form, independent of
//! the determinant pipeline it is used to test.

mod enumerate;
mod fibers;
mod identities;
mod masked;
mod mvv;
mod permutations;
mod universal;
mod vandermonde;
mod width2;

pub use enumerate::{
    boundary_minor, enumerate_pms, fiber_table, signed_fiber_polys, symbolic_pt, FiberTable, DEFAULT_ORACLE_CAP,
};
pub use fibers::{
    affine_closure_membership, fiber_family, parallelogram_check, row_initial_form, weight_matrix,
    ParallelogramOutcome, RowInitialForm,
};
pub use identities::{check_hall_block_product, check_replacement_det, check_se_identity, random_poly, PolyMatrix};
pub use masked::{check_masked_minor, integer_mask_counterexamples, MaskedMatrix, MaskedMinorReport};
pub use mvv::{mvv_test, DEFAULT_MVV_PRIME};
pub use permutations::{
    all_permutations, leibniz_det, next_permutation, perm_monomial, perm_sign, subset_poly, PermutationFamily,
};
pub use universal::{universal_small_check, UniversalReport};
pub use vandermonde::{check_bad_locus, check_gen_vandermonde, BadLocusShape, GenVandermondeReport, SupportFamily};
pub use width2::{
    brute_g, brute_gxy, transfer_check, transfer_xy, width2_branch_check, width2_cyclic_split_check, CyclicSplitReport,
    TernaryWord, TransferReport,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle enumeration cap of {0} exceeded")]
    CapExceeded(usize),
    #[error("permutation family is empty")]
    EmptyFamily,
    #[error("edge ({0}, {1}) not found")]
    EdgeNotFound(usize, usize),
    #[error("modulus {0} is not a prime above n(n-1)")]
    BadPrime(u64),
    #[error("bad support family: {0}")]
    BadFamily(String),
}

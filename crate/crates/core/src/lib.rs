//! Classification of pure three-qubit states under stochastic local incoherent
//! operations (SLICC) and their deterministic counterpart (LICC).
//!
//! Two states are SLICC-equivalent exactly when a triple of local, invertible,
//! strictly incoherent operators maps one onto the other. On a qubit such an
//! operator is either diagonal or antidiagonal, so the problem splits into a
//! combinatorial part (which basis kets are occupied, and how the eight
//! diagonal/antidiagonal combinations permute them) and a multiplicative part
//! (which amplitude ratios can be produced by the operator entries).
//!
//! The crate is organised as:
//!
//! - [`state`]: amplitudes, supports, local flips, reductions and local ranks.
//! - [`lattice`]: exact integer elimination and left kernels.
//! - [`sio`]: strictly incoherent operators and the constructive equivalence
//!   solvers, which return verified operator witnesses.
//! - [`table`]: the 45-row registry of support classes, Δ invariants, and the
//!   table-driven class comparison used as a cross-check of the solver.
//! - [`coherence`]: coherence nature and mixture composition of reductions,
//!   the three-tangle and SLOCC class.
//! - [`oracle`]: seeded random sampling and the consistency campaigns.

pub mod coherence;
pub mod error;
pub mod lattice;
pub mod oracle;
pub mod sio;
pub mod state;
pub mod table;

pub use coherence::{
    coherence_nature, conditional_decomposition, fine_descriptor, slocc_class, three_tangle,
    CoherenceNature, FineDescriptor, MixtureComponent, MixtureComposition, SloccClass,
};
pub use error::{SioError, StateError, TableError};
pub use sio::{
    apply_sio_triple, exponent_matrix, kernel_characters, solve_licc_equivalence,
    solve_slicc_equivalence, verify_witness, EquivalenceWitness, ExponentMatrix,
    KernelCharacter, Mismatch, OperatorKind, SioLocalOperator, SioTriple, Verdict,
};
pub use state::{
    parse_state, DensityMatrix, FlipMask, Party, PartySet, SupportPattern, Thresholds,
    ThreeQubitPureState,
};
pub use table::{
    canonicalize_support, classify, compute_deltas, same_class_by_table, Classification,
    DeltaInvariants, Registry, RowId, TableRow,
};

pub use num_complex::Complex64;

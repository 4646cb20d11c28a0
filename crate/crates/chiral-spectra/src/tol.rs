//! Pinned numerical tolerances.
//!
//! Every comparison threshold in the crate lives here so that test and
//! runtime behaviour cannot drift apart. Values are absolute unless the name
//! or the consuming site says otherwise. All spectra in scope are separated
//! at desk scale (gaps ≥ 1e−2 on the catalog models), so none of these are
//! delicate.

/// Structure residuals that hold to machine precision by construction:
/// `dd* − I`, `S − S*`, `S² − I`, `T − T*`, chiral symmetry `SUS − U*`,
/// the commutator identity residual, and `det C_mko + 1`.
pub const STRUCTURE: f64 = 1e-12;

/// Relative Hermiticity gate for the Hermitian eigensolver input.
pub const HERMITIAN_GATE: f64 = 1e-10;

/// Relative reconstruction residual allowed for the Hermitian eigensolver.
pub const EIG_RESIDUAL: f64 = 1e-10;

/// Relative singular-value threshold for numerical kernel dimensions.
pub const RANK: f64 = 1e-10;

/// Slack on the discriminant norm bound `‖T‖ ≤ 1`.
pub const DISCRIMINANT_NORM: f64 = 1e-10;

/// Threshold deciding the assumption flags (`d*d ≠ I`, `S ≠ ±I`) and the
/// float-noise guard on `a ≠ ±b`, `ab ≠ 0`.
pub const FLAG: f64 = 1e-10;

/// Default matching / clustering tolerance for spectra, scaled by the
/// spectral radius where the consuming site says so. Also the default CLI
/// tolerance (`--tol`, `CHIRAL_SPECTRA_TOL`).
pub const MATCHING: f64 = 1e-8;

/// Joukowsky round-trip accuracy `φ(λ±(t)) = t` (relative).
pub const ROUNDTRIP: f64 = 1e-10;

/// Discriminant-zero detection for degenerate Joukowsky inverse roots.
pub const DEGENERATE: f64 = 1e-12;

/// Annulus / locus / resolvent bound slack.
pub const BOUNDS: f64 = 1e-8;

/// Agreement between the general and Hermitian eigensolvers, and between
/// eigenvalue products and characteristic-polynomial coefficients.
pub const CROSS_SOLVER: f64 = 1e-8;

/// Imaginary / integer residue allowed on zeta polynomial coefficients.
pub const COEFF_RESIDUE: f64 = 1e-9;

/// Residue allowed when rounding combinatorial quantities to integers.
pub const INT_ROUND: f64 = 1e-6;

/// Containment tolerance for sampled MKO eigenvalues in the closed-form set.
pub const MKO_SAMPLING: f64 = 1e-6;

/// Eigenvalue-multiset agreement between the MKO momentum matrix and its
/// chiral factorization.
pub const MKO_FACTORS: f64 = 1e-10;

/// Unimodularity tolerance for the unitary (γ = 0) MKO case.
pub const UNIMODULAR: f64 = 1e-10;

/// Zeta roots: 1/u₀ must land in the predicted non-backtracking support.
/// The determinant polynomials carry triple roots, and a root of
/// multiplicity m computed through a companion matrix is only accurate to
/// O(ε^(1/m)) ≈ 6e-6 for m = 3; 1e-4 leaves headroom above that floor.
pub const ZETA_ROOT: f64 = 1e-4;

/// Entrywise agreement between the Grover discriminant and adjacency/k.
pub const ENTRYWISE: f64 = 1e-14;

//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while parsing inputs, constructing operators,
/// or running a verification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    // ---- graph construction ----
    #[error("line {line}: malformed edge entry {text:?} (expected two 0-based integers)")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("edge list contains no edges")]
    EmptyEdgeList,
    #[error("vertex index {vertex} out of range (vertex_count = {vertex_count})")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("unknown builtin graph {0:?} (expected k4, k5, k33, petersen, or cN with N >= 3)")]
    UnknownBuiltin(String),
    #[error("graph is not regular (vertex {vertex} has degree {degree}, vertex 0 has degree {expected})")]
    NotRegular { vertex: usize, degree: usize, expected: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("degree k = {k} unsupported here: {reason}")]
    DegreeOutOfRange { k: usize, reason: &'static str },
    #[error("no connected {k}-regular graph on {n} vertices found after {attempts} sampling attempts")]
    GenerationFailed { n: usize, k: usize, attempts: usize },

    // ---- linear algebra ----
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("eigensolver failed to converge")]
    EigenConvergence,
    #[error("matrix is not Hermitian (relative defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("characteristic-polynomial recursion overflowed (coefficient became non-finite at step {step})")]
    CharPolyOverflow { step: usize },

    // ---- chiral pair construction ----
    #[error("dimension mismatch: S is {s_rows}x{s_cols}, d is {d_rows}x{d_cols} (need S n×n, d m×n, 1 <= m <= n)")]
    PairDimensions { s_rows: usize, s_cols: usize, d_rows: usize, d_cols: usize },
    #[error("d is not a coisometry: max |(dd* − I)| = {defect:.3e}")]
    NotCoisometry { defect: f64 },
    #[error("S is not a self-adjoint involution: max(|S − S*|, |S² − I|) = {defect:.3e}")]
    NotInvolution { defect: f64 },
    #[error("discriminant norm ‖T‖ = {norm} exceeds 1")]
    DiscriminantNorm { norm: f64 },

    // ---- spectral pipeline ----
    #[error("assumption `{name}` fails: {detail}")]
    AssumptionFailed { name: &'static str, detail: String },
    #[error("eigenvalue clusters too close to separate: |{a} − {b}| < 10x cluster width {width:.3e}")]
    ClusterAmbiguity { a: C, b: C, width: f64 },
    #[error("joukowsky transform is undefined at z = 0")]
    JoukowskyAtZero,

    // ---- model parameters ----
    #[error("invalid parameter `{name}`: {detail}")]
    InvalidParameter { name: &'static str, detail: String },

    // ---- combinatorial oracles ----
    #[error("non-backtracking walk counts disagree at length {length}: trace route {trace}, enumeration {enumerated}")]
    WalkCountMismatch { length: usize, trace: u64, enumerated: u64 },
    #[error("truncated Euler product disagrees with the determinant series at power {power}: {product} vs {series}")]
    EulerProductMismatch { power: usize, product: i64, series: f64 },
    #[error("polynomial coefficient of u^{power} is not near-integer: {value}")]
    NonIntegerCoefficient { power: usize, value: f64 },

    // ---- I/O ----
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// `num_complex::Complex<f64>` wrapper so the error type can display values
/// without dragging matrix types into the variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C(pub f64, pub f64);

impl std::fmt::Display for C {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:+}i", self.0, self.1)
    }
}

impl From<crate::C64> for C {
    fn from(z: crate::C64) -> Self {
        C(z.re, z.im)
    }
}

//! Spectral mapping for chiral-symmetric evolution operators `U = SC`.
//!
//! The central object is a [`chiral::ChiralPair`]: a self-adjoint unitary
//! involution `S`, a coisometry `d` (`dd* = I`), and two real coin
//! eigenvalues `a`, `b`. The evolution `U = S(a·d*d + b(I − d*d))` is
//! generally non-normal; its complete point spectrum is nevertheless
//! predictable from the self-adjoint discriminant `T = dSd*` through a scaled
//! Joukowsky transform plus four "birth" eigenvalues `±a`, `∓b`.
//!
//! The crate builds such pairs for concrete walk models (Grover positive
//! support / non-backtracking walks, correlated random walks on regular
//! graphs, two one-dimensional ring walks, and the momentum-space MKO walk),
//! predicts their spectra, and verifies every prediction against independent
//! dense-eigensolver and combinatorial oracles ([`spectral`], [`zeta`],
//! [`verify`]).
//!
//! With the default `parallel` feature, embarrassingly parallel stages
//! (momentum grids, parameter sweeps, batched random-pair checks) fan out via
//! rayon; without it a sequential fallback with identical results compiles in.

pub mod chiral;
pub mod error;
pub mod graph;
pub mod linalg;
pub(crate) mod par;
pub mod spectral;
pub mod tol;
pub mod verify;
pub mod walks;
pub mod zeta;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Double-precision complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;

/// Dense complex matrix (the only matrix representation in this crate).
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;

//! Concrete walk models, each packaged as a [`crate::chiral::ChiralPair`].
//!
//! * [`grover_positive_support`] — the positive support of the Grover walk on
//!   a k-regular graph; the evolution is the non-backtracking arc matrix.
//! * [`correlated_walk`] — the arc-based random walk with backtracking
//!   probability `p`; the evolution is row-stochastic.
//! * [`MkoParams`] and friends — the gain/loss two-phase walk in momentum
//!   space, with the closed-form spectrum and a finite-ring truncation.
//! * [`example_homogeneous`] / [`example_inhomogeneous`] — two ring models
//!   exercising normality criteria and the `a = −b` degenerate mapping.

mod correlated;
mod grover;
mod mko;
mod ring;

pub use correlated::{correlated_sweep, correlated_walk, CorrelatedParams, CorrelatedSweepPoint};
pub use grover::grover_positive_support;
pub use mko::{
    eig2, f_minus, f_plus, mko_closed_form, mko_equivalence_factors, mko_momentum_matrix,
    mko_ring_pair, mko_sample_grid, mko_sweep, random_mko_params, MkoParams, MkoRegime,
    MkoSpectrumSet, MkoSweepPoint,
};
pub use ring::{example_homogeneous, example_inhomogeneous};

use crate::{graph, C64, CMatrix, Error, Result};

/// Degree of `g` if it is regular and connected; the errors walk builders
/// share.
pub(crate) fn require_regular_connected(g: &graph::Graph) -> Result<usize> {
    let degrees = g.degree_sequence();
    let expected = degrees.first().copied().unwrap_or(0);
    for (vertex, &degree) in degrees.iter().enumerate() {
        if degree != expected {
            return Err(Error::NotRegular { vertex, degree, expected });
        }
    }
    if !graph::graph_invariants(g).connected {
        return Err(Error::Disconnected);
    }
    Ok(expected)
}

/// Cyclic one-site shift on an N-ring: `L[x, y] = 1` iff `y = (x + 1) mod N`,
/// so `(Lf)(x) = f(x + 1)`.
pub(crate) fn cyclic_shift(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |x, y| {
        if y == (x + 1) % n {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

/// Assemble a 2×2 block matrix over component-major layout (component index
/// major, site index minor).
pub(crate) fn block2(
    b00: &CMatrix,
    b01: &CMatrix,
    b10: &CMatrix,
    b11: &CMatrix,
) -> CMatrix {
    let n = b00.nrows();
    let mut out = CMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, 0), (n, n)).copy_from(b00);
    out.view_mut((0, n), (n, n)).copy_from(b01);
    out.view_mut((n, 0), (n, n)).copy_from(b10);
    out.view_mut((n, n), (n, n)).copy_from(b11);
    out
}

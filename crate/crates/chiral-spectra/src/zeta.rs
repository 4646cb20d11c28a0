//! Ihara zeta function of a finite graph, computed three independent ways.
//!
//! For a connected k-regular graph (k ≥ 2) the reciprocal zeta function is a
//! polynomial, obtainable as
//!
//! 1. `det(I − u·B)` where `B` is the arc non-backtracking matrix
//!    ([`zeta_reciprocal`]),
//! 2. the three-term determinant formula
//!    `(1 − u²)^{|E|−|V|} · ∏_μ (1 − μu + (k−1)u²)` over adjacency
//!    eigenvalues μ ([`bass_form`]),
//! 3. a truncated Euler product over prime cycle classes
//!    ([`prime_cycle_product`]).
//!
//! The module also counts closed non-backtracking walks by two routes (trace
//! of matrix powers vs direct enumeration, [`nb_walk_counts`]) and exposes
//! the log-series bridge `−log(1/ζ)(u) = Σ_m (N_m/m)·u^m` ([`log_series`]).
//! All integer quantities are cross-checked exactly; disagreement is an
//! error, never a silent repair.

use std::collections::HashSet;
use std::fmt;

use nalgebra::DMatrix;

use crate::graph::{adjacency, arc_structure, ArcSet, Graph};
use crate::linalg::{char_poly, eig_hermitian, to_complex};
use crate::walks::require_regular_connected;
use crate::{par, tol, CMatrix, Error, Result};

/// Arc-count cap for [`zeta_reciprocal`] and [`bass_form`].
pub const ZETA_ARC_CAP: usize = 64;
/// Arc-count cap for [`nb_walk_counts`].
pub const WALK_ARC_CAP: usize = 30;
/// Length cap for [`nb_walk_counts`].
pub const WALK_LENGTH_CAP: usize = 12;
/// Arc-count cap for [`prime_cycle_product`].
pub const PRIME_ARC_CAP: usize = 16;
/// Power cap for [`prime_cycle_product`].
pub const PRIME_LENGTH_CAP: usize = 8;

fn non_backtracking_real(g: &Graph) -> DMatrix<f64> {
    let arcs = arc_structure(g);
    let n = arcs.arc_count();
    DMatrix::from_fn(n, n, |e, f| {
        if arcs.terminus(f) == arcs.origin(e) && f != arcs.reversal(e) {
            1.0
        } else {
            0.0
        }
    })
}

/// Arc non-backtracking matrix: `B[e, f] = 1` iff arc `f` feeds arc `e`
/// (`t(f) = o(e)`) without backtracking (`f ≠ ē`). Equals the Grover
/// positive-support evolution on regular graphs.
pub fn non_backtracking_matrix(g: &Graph) -> CMatrix {
    to_complex(&non_backtracking_real(g))
}

/// Reciprocal zeta polynomial `1/ζ(u)` with exact integer coefficients,
/// constant term 1, in ascending powers of `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaPolynomial {
    coefficients: Vec<i64>,
}

impl ZetaPolynomial {
    fn from_complex(raw: &[crate::C64]) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(raw.len());
        for (power, c) in raw.iter().enumerate() {
            let rounded = c.re.round();
            let scale = c.re.abs().max(1.0);
            if c.im.abs() > tol::COEFF_RESIDUE * scale
                || (c.re - rounded).abs() > tol::COEFF_RESIDUE * scale
            {
                return Err(Error::NonIntegerCoefficient { power, value: c.re });
            }
            coefficients.push(rounded as i64);
        }
        Ok(ZetaPolynomial { coefficients })
    }

    fn from_real(raw: &[f64]) -> Result<Self> {
        let mut coefficients = Vec::with_capacity(raw.len());
        for (power, &c) in raw.iter().enumerate() {
            let rounded = c.round();
            if (c - rounded).abs() > tol::INT_ROUND * c.abs().max(1.0) {
                return Err(Error::NonIntegerCoefficient { power, value: c });
            }
            coefficients.push(rounded as i64);
        }
        Ok(ZetaPolynomial { coefficients })
    }

    /// Coefficients in ascending powers of `u`; index 0 is always 1.
    pub fn coefficients(&self) -> &[i64] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation at a complex point.
    pub fn evaluate(&self, u: crate::C64) -> crate::C64 {
        self.coefficients
            .iter()
            .rev()
            .fold(crate::C64::new(0.0, 0.0), |acc, &c| acc * u + crate::C64::new(c as f64, 0.0))
    }
}

impl fmt::Display for ZetaPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (power, &c) in self.coefficients.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            match (power, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "u")?,
                (1, m) => write!(f, "{m}u")?,
                (p, 1) => write!(f, "u^{p}")?,
                (p, m) => write!(f, "{m}u^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn gate_regular(g: &Graph, arc_cap: usize) -> Result<usize> {
    let k = require_regular_connected(g)?;
    if k < 2 {
        return Err(Error::DegreeOutOfRange { k, reason: "zeta functions need degree >= 2" });
    }
    if g.arc_count() > arc_cap {
        return Err(Error::DimensionCap { dim: g.arc_count(), cap: arc_cap });
    }
    Ok(k)
}

/// `1/ζ(u) = det(I − u·B)` via the characteristic polynomial of the
/// non-backtracking matrix. Requires a connected regular graph of degree
/// ≥ 2 with at most [`ZETA_ARC_CAP`] arcs.
pub fn zeta_reciprocal(g: &Graph) -> Result<ZetaPolynomial> {
    gate_regular(g, ZETA_ARC_CAP)?;
    ZetaPolynomial::from_complex(&char_poly(&non_backtracking_matrix(g))?)
}

/// Exact product of integer polynomials.
pub fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_mul_f64(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// The three-term determinant form
/// `(1 − u²)^{|E|−|V|} · ∏_μ (1 − μu + (k−1)u²)` assembled from the
/// adjacency spectrum. Agrees exactly with [`zeta_reciprocal`].
pub fn bass_form(g: &Graph) -> Result<ZetaPolynomial> {
    let k = gate_regular(g, ZETA_ARC_CAP)?;
    let mu = eig_hermitian(&to_complex(&adjacency(g)))?.eigenvalues;
    let mut poly = vec![1.0f64];
    for _ in 0..(g.edge_count() - g.vertex_count()) {
        poly = poly_mul_f64(&poly, &[1.0, 0.0, -1.0]);
    }
    for m in &mu {
        poly = poly_mul_f64(&poly, &[1.0, -m.re, (k - 1) as f64]);
    }
    ZetaPolynomial::from_real(&poly)
}

fn successor_lists(arcs: &ArcSet) -> Vec<Vec<usize>> {
    let n = arcs.arc_count();
    (0..n)
        .map(|e| {
            (0..n)
                .filter(|&f| arcs.origin(f) == arcs.terminus(e) && f != arcs.reversal(e))
                .collect()
        })
        .collect()
}

fn count_closed_from(succ: &[Vec<usize>], start: usize, current: usize, remaining: usize) -> u64 {
    if remaining == 0 {
        return u64::from(succ[current].contains(&start));
    }
    succ[current]
        .iter()
        .map(|&f| count_closed_from(succ, start, f, remaining - 1))
        .sum()
}

/// Counts `N_m` of closed non-backtracking walks of lengths `1..=max_length`
/// (cyclic: the wrap-around step must not backtrack either; each starting
/// arc counts separately). Computed both as `tr(B^m)` and by direct
/// enumeration; any disagreement is an error.
pub fn nb_walk_counts(g: &Graph, max_length: usize) -> Result<Vec<u64>> {
    if max_length > WALK_LENGTH_CAP {
        return Err(Error::InvalidParameter {
            name: "max_length",
            detail: format!("walk enumeration is capped at length {WALK_LENGTH_CAP}, got {max_length}"),
        });
    }
    let arcs = arc_structure(g);
    let n = arcs.arc_count();
    if n > WALK_ARC_CAP {
        return Err(Error::DimensionCap { dim: n, cap: WALK_ARC_CAP });
    }
    // Successor relation in walk order: f follows e when o(f) = t(e), f ≠ ē.
    // tr(B^m) sums the same cyclic sequences read in reverse, so the two
    // routes count identical objects.
    let succ = successor_lists(&arcs);
    let b = non_backtracking_real(g);
    let mut power = DMatrix::<f64>::identity(n, n);
    let mut counts = Vec::with_capacity(max_length);
    for m in 1..=max_length {
        power = &power * &b;
        let trace = power.trace();
        if (trace - trace.round()).abs() > tol::INT_ROUND {
            return Err(Error::NonIntegerCoefficient { power: m, value: trace });
        }
        let per_start = par::map_indexed(n, |start| count_closed_from(&succ, start, start, m - 1));
        let enumerated: u64 = per_start.into_iter().sum();
        if trace.round() as u64 != enumerated {
            return Err(Error::WalkCountMismatch {
                length: m,
                trace: trace.round() as u64,
                enumerated,
            });
        }
        counts.push(enumerated);
    }
    Ok(counts)
}

fn canonical_rotation(seq: &[usize]) -> Vec<usize> {
    let m = seq.len();
    (0..m)
        .map(|r| {
            let mut rot = Vec::with_capacity(m);
            rot.extend_from_slice(&seq[r..]);
            rot.extend_from_slice(&seq[..r]);
            rot
        })
        .min()
        .expect("nonempty sequence")
}

fn minimal_period(seq: &[usize]) -> usize {
    let m = seq.len();
    (1..=m)
        .find(|&p| m % p == 0 && (0..m).all(|i| seq[i] == seq[(i + p) % m]))
        .expect("period m always works")
}

fn collect_closed_sequences(
    succ: &[Vec<usize>],
    start: usize,
    path: &mut Vec<usize>,
    target: usize,
    out: &mut Vec<Vec<usize>>,
) {
    let current = *path.last().expect("path starts nonempty");
    if path.len() == target {
        if succ[current].contains(&start) {
            out.push(path.clone());
        }
        return;
    }
    for &f in &succ[current] {
        path.push(f);
        collect_closed_sequences(succ, start, path, target, out);
        path.pop();
    }
}

/// Census of prime cycle classes and the truncated Euler product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeCensus {
    /// `classes_by_length[m − 1]` = number of prime classes of length `m`.
    pub classes_by_length: Vec<u64>,
    /// `ζ(u) mod u^{max_power+1}` as computed from the Euler product
    /// `∏ (1 − u^{|C|})^{−1}` over the enumerated prime classes.
    pub zeta_series: Vec<i64>,
}

/// Multiply two integer power series, truncating at `len` terms.
fn series_mul_trunc(a: &[i64], b: &[i64], len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    for (i, &x) in a.iter().enumerate().take(len) {
        for (j, &y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Integer power series inverse of a polynomial with constant term 1.
pub fn series_inverse(poly: &[i64], max_power: usize) -> Vec<i64> {
    assert_eq!(poly.first(), Some(&1), "series inverse needs constant term 1");
    let mut inv = vec![0i64; max_power + 1];
    inv[0] = 1;
    for m in 1..=max_power {
        let mut acc = 0i64;
        for j in 1..=m.min(poly.len() - 1) {
            acc += poly[j] * inv[m - j];
        }
        inv[m] = -acc;
    }
    inv
}

/// Coefficients of `log p(u)` for a polynomial with constant term 1, up to
/// `u^{max_power}`. For `p = 1/ζ` the coefficient of `u^m` is `−N_m/m`.
pub fn log_series(poly: &ZetaPolynomial, max_power: usize) -> Vec<f64> {
    let p = |j: usize| -> f64 {
        poly.coefficients.get(j).copied().unwrap_or(0) as f64
    };
    let mut l = vec![0.0; max_power + 1];
    for m in 1..=max_power {
        let mut acc = 0.0;
        for j in 1..m {
            acc += j as f64 * l[j] * p(m - j);
        }
        l[m] = p(m) - acc / m as f64;
    }
    l
}

/// Enumerate prime cycle classes (closed non-backtracking cyclic walks
/// modulo rotation, not a power of a shorter walk) up to length `max_power`
/// and form the Euler product `∏ (1 − u^{|C|})^{−1} mod u^{max_power+1}`.
/// The product must reproduce the power series of `1/zeta_reciprocal`
/// exactly; disagreement is an error.
pub fn prime_cycle_product(g: &Graph, max_power: usize) -> Result<PrimeCensus> {
    if max_power > PRIME_LENGTH_CAP {
        return Err(Error::InvalidParameter {
            name: "max_power",
            detail: format!("prime enumeration is capped at u^{PRIME_LENGTH_CAP}, got {max_power}"),
        });
    }
    let arcs = arc_structure(g);
    if arcs.arc_count() > PRIME_ARC_CAP {
        return Err(Error::DimensionCap { dim: arcs.arc_count(), cap: PRIME_ARC_CAP });
    }
    let reciprocal = zeta_reciprocal(g)?;
    let succ = successor_lists(&arcs);

    let mut classes_by_length = Vec::with_capacity(max_power);
    let mut zeta_series = vec![0i64; max_power + 1];
    zeta_series[0] = 1;
    for m in 1..=max_power {
        let mut classes: HashSet<Vec<usize>> = HashSet::new();
        for start in 0..arcs.arc_count() {
            let mut sequences = Vec::new();
            let mut path = vec![start];
            collect_closed_sequences(&succ, start, &mut path, m, &mut sequences);
            for seq in sequences {
                if minimal_period(&seq) == m {
                    classes.insert(canonical_rotation(&seq));
                }
            }
        }
        let count = classes.len();
        classes_by_length.push(count as u64);

        // (1 − u^m)^{−1} = Σ_j u^{jm}, applied once per class of length m.
        let mut geometric = vec![0i64; max_power + 1];
        for j in (0..=max_power).step_by(m) {
            geometric[j] = 1;
        }
        for _ in 0..count {
            zeta_series = series_mul_trunc(&zeta_series, &geometric, max_power + 1);
        }
    }

    let expected = series_inverse(reciprocal.coefficients(), max_power);
    for power in 0..=max_power {
        if zeta_series[power] != expected[power] {
            return Err(Error::EulerProductMismatch {
                power,
                product: zeta_series[power],
                series: expected[power] as f64,
            });
        }
    }
    Ok(PrimeCensus { classes_by_length, zeta_series })
}

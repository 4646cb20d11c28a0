//! The gain/loss two-phase walk in momentum space.
//!
//! One timestep composes two shift-coin rounds; the gain/loss factor `e^{±γ}`
//! makes the evolution non-unitary for `γ > 0`. After Fourier transform
//! (convention: `Ψ̂(ξ) = Σ_x e^{−iξx} Ψ(x)`, so the two-component shift
//! becomes `D(ξ) = diag(e^{iξ}, e^{−iξ})`) each momentum `ξ` contributes the
//! 2×2 matrix
//!
//! ```text
//! U_γ(ξ) = D(ξ)·G·Φ·C̃(θ₂)·D(ξ)·G⁻¹·Φ·C̃(θ₁)
//! ```
//!
//! with `G = diag(e^γ, e^{−γ})`, `Φ = diag(e^{iφ}, e^{−iφ})`, and
//! `C̃(θ) = [[cos θ, i sin θ], [i sin θ, cos θ]]`. A similarity transform
//! factors `U_γ(ξ)` as a shift–coin product `S(ξ)·C` with `C` Hermitian of
//! determinant −1, which places the whole machinery inside the chiral-pair
//! framework with `ab = −1`; the closed-form spectrum is a circle arc plus
//! real intervals controlled by `cos ξ ∈ [m_γ, M_γ]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{block2, cyclic_shift};
use crate::chiral::ChiralPair;
use crate::{par, C64, CMatrix, Error, Result};

/// Parameters of the two-phase gain/loss walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MkoParams {
    gamma: f64,
    phi: f64,
    theta1: f64,
    theta2: f64,
}

fn m2(a00: C64, a01: C64, a10: C64, a11: C64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[a00, a01, a10, a11])
}

fn diag2(top: C64, bottom: C64) -> CMatrix {
    m2(top, C64::new(0.0, 0.0), C64::new(0.0, 0.0), bottom)
}

fn polar(r: f64, angle: f64) -> C64 {
    C64::new(r * angle.cos(), r * angle.sin())
}

impl MkoParams {
    pub fn new(gamma: f64, phi: f64, theta1: f64, theta2: f64) -> Result<Self> {
        if !gamma.is_finite() || gamma < 0.0 {
            return Err(Error::InvalidParameter {
                name: "gamma",
                detail: format!("gain/loss exponent must be finite and >= 0, got {gamma}"),
            });
        }
        for (name, value) in [("phi", phi), ("theta1", theta1), ("theta2", theta2)] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    detail: format!("angle must be finite, got {value}"),
                });
            }
        }
        Ok(MkoParams { gamma, phi, theta1, theta2 })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    /// First-coin diagonal entry `p = −sin θ₁`.
    pub fn p(&self) -> f64 {
        -self.theta1.sin()
    }

    /// First-coin off-diagonal entry `q = −i·cos θ₁`.
    pub fn q(&self) -> C64 {
        C64::new(0.0, -self.theta1.cos())
    }

    /// Second-coin diagonal entry `a = sin θ₂`.
    pub fn a(&self) -> f64 {
        self.theta2.sin()
    }

    /// Second-coin off-diagonal entry `b = −i·e^{−2iφ}·cos θ₂`.
    pub fn b(&self) -> C64 {
        C64::new(0.0, -1.0) * polar(self.theta2.cos(), -2.0 * self.phi)
    }

    /// Lower edge `m_γ = ap·cosh(2γ) − |qb|` of the `cos ξ` window.
    pub fn m_gamma(&self) -> f64 {
        self.a() * self.p() * (2.0 * self.gamma).cosh() - (self.q() * self.b()).norm()
    }

    /// Upper edge `M_γ = ap·cosh(2γ) + |qb|` of the `cos ξ` window.
    pub fn big_m_gamma(&self) -> f64 {
        self.a() * self.p() * (2.0 * self.gamma).cosh() + (self.q() * self.b()).norm()
    }

    /// The regime thresholds `γᵢ = ½·log(Γᵢ + √(Γᵢ² − 1))` with
    /// `Γ₀ = −(1 − |qb|)/(ap)` and `Γ₁ = −(1 + |qb|)/(ap)`; `None` when
    /// `Γᵢ < 1` (the threshold never activates) or `ap = 0`.
    pub fn gamma_thresholds(&self) -> (Option<f64>, Option<f64>) {
        let ap = self.a() * self.p();
        if ap == 0.0 {
            return (None, None);
        }
        let qb = (self.q() * self.b()).norm();
        // Snap Γ to 1 within float noise so thresholds sitting exactly on
        // the boundary don't flicker between Some and None.
        let threshold = |big: f64| {
            if big < 1.0 - crate::tol::DEGENERATE {
                return None;
            }
            let big = big.max(1.0);
            Some(0.5 * (big + (big * big - 1.0).sqrt()).ln())
        };
        (threshold(-(1.0 - qb) / ap), threshold(-(1.0 + qb) / ap))
    }
}

fn d_xi(xi: f64) -> CMatrix {
    diag2(polar(1.0, xi), polar(1.0, -xi))
}

fn gain_loss(gamma: f64) -> CMatrix {
    diag2(C64::new(gamma.exp(), 0.0), C64::new((-gamma).exp(), 0.0))
}

fn phase(phi: f64) -> CMatrix {
    diag2(polar(1.0, phi), polar(1.0, -phi))
}

fn coin_tilde(theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    m2(C64::new(c, 0.0), C64::new(0.0, s), C64::new(0.0, s), C64::new(c, 0.0))
}

fn sigma2() -> CMatrix {
    m2(C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0))
}

/// One-momentum evolution matrix `U_γ(ξ)`.
pub fn mko_momentum_matrix(params: &MkoParams, xi: f64) -> CMatrix {
    let d = d_xi(xi);
    let g = gain_loss(params.gamma);
    let g_inv = gain_loss(-params.gamma);
    let ph = phase(params.phi);
    &d * &g * &ph * coin_tilde(params.theta2) * &d * g_inv * ph * coin_tilde(params.theta1)
}

/// The shift–coin factorization of `U_γ(ξ)` up to similarity:
/// `S(ξ) = D(ξ)·C̃(θ₁)·D(ξ)·σ₂` (unitary and self-adjoint) and
/// `C = σ₂·G·Φ·C̃(θ₂)·G⁻¹·Φ` (Hermitian, det = −1). The products `S(ξ)·C`
/// and `U_γ(ξ)` share eigenvalues at every momentum.
pub fn mko_equivalence_factors(params: &MkoParams, xi: f64) -> (CMatrix, CMatrix) {
    let d = d_xi(xi);
    let s = &d * coin_tilde(params.theta1) * &d * sigma2();
    let c = sigma2()
        * gain_loss(params.gamma)
        * phase(params.phi)
        * coin_tilde(params.theta2)
        * gain_loss(-params.gamma)
        * phase(params.phi);
    (s, c)
}

/// Closed-form eigenvalues of a 2×2 matrix.
pub fn eig2(m: &CMatrix) -> [C64; 2] {
    let tr = m[(0, 0)] + m[(1, 1)];
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let sq = (tr * tr - C64::new(4.0, 0.0) * det).sqrt();
    [(tr + sq) / C64::new(2.0, 0.0), (tr - sq) / C64::new(2.0, 0.0)]
}

/// Sample both eigenvalue branches on the uniform grid `ξ_j = 2πj/grid`.
pub fn mko_sample_grid(params: &MkoParams, grid: usize) -> Vec<(f64, [C64; 2])> {
    let params = *params;
    par::map_indexed(grid, move |j| {
        let xi = 2.0 * std::f64::consts::PI * j as f64 / grid as f64;
        (xi, eig2(&mko_momentum_matrix(&params, xi)))
    })
}

/// Which components the closed-form spectrum has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MkoRegime {
    CircleOnly,
    Mixed,
    RealOnly,
}

impl MkoRegime {
    pub fn label(&self) -> &'static str {
        match self {
            MkoRegime::CircleOnly => "circle_only",
            MkoRegime::Mixed => "mixed",
            MkoRegime::RealOnly => "real_only",
        }
    }
}

/// `f₊(x) = x + √(x² − 1)`; real for |x| ≥ 1.
pub fn f_plus(x: f64) -> f64 {
    x + (x * x - 1.0).max(0.0).sqrt()
}

/// `f₋(x) = x − √(x² − 1)`; real for |x| ≥ 1. `f₊(x)·f₋(x) = 1`.
pub fn f_minus(x: f64) -> f64 {
    x - (x * x - 1.0).max(0.0).sqrt()
}

/// The closed-form spectrum: a unit-circle arc `{e^{±iξ} : cos ξ ∈
/// circle_cos_interval}` plus real intervals (closed under x ↦ 1/x).
#[derive(Debug, Clone, PartialEq)]
pub struct MkoSpectrumSet {
    pub circle_cos_interval: Option<(f64, f64)>,
    pub real_intervals: Vec<(f64, f64)>,
    pub regime: MkoRegime,
}

impl MkoSpectrumSet {
    /// Euclidean distance from `z` to the set.
    pub fn distance(&self, z: C64) -> f64 {
        let mut best = f64::INFINITY;
        if let Some((lo, hi)) = self.circle_cos_interval {
            let r = z.norm();
            if r > 0.0 && (lo..=hi).contains(&(z.re / r)) {
                best = best.min((r - 1.0).abs());
            }
            for c in [lo, hi] {
                let s = (1.0 - c * c).max(0.0).sqrt();
                best = best.min((z - C64::new(c, s)).norm());
                best = best.min((z - C64::new(c, -s)).norm());
            }
        }
        for &(lo, hi) in &self.real_intervals {
            let x = z.re.clamp(lo, hi);
            best = best.min(((z.re - x).powi(2) + z.im * z.im).sqrt());
        }
        best
    }

    /// Dense point discretization of the set (circle arc by angle, intervals
    /// linearly), `resolution` points per component.
    pub fn boundary_points(&self, resolution: usize) -> Vec<C64> {
        let mut pts = Vec::new();
        let steps = resolution.max(2);
        if let Some((lo, hi)) = self.circle_cos_interval {
            let (angle_lo, angle_hi) = (hi.clamp(-1.0, 1.0).acos(), lo.clamp(-1.0, 1.0).acos());
            for j in 0..steps {
                let angle = angle_lo + (angle_hi - angle_lo) * j as f64 / (steps - 1) as f64;
                pts.push(polar(1.0, angle));
                pts.push(polar(1.0, -angle));
            }
        }
        for &(lo, hi) in &self.real_intervals {
            for j in 0..steps {
                let x = lo + (hi - lo) * j as f64 / (steps - 1) as f64;
                pts.push(C64::new(x, 0.0));
            }
        }
        pts
    }

    /// Symmetric Hausdorff distance between the set and a finite sample.
    pub fn hausdorff_from(&self, samples: &[C64], resolution: usize) -> f64 {
        let to_set = samples.iter().map(|&z| self.distance(z)).fold(0.0, f64::max);
        let from_set = self
            .boundary_points(resolution)
            .iter()
            .map(|p| samples.iter().map(|s| (p - s).norm()).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max);
        to_set.max(from_set)
    }
}

/// Assemble the closed-form spectrum by clipping `[m_γ, M_γ]` against
/// `[−1, 1]`: the intersection contributes the circle arc, the excess on
/// either side maps onto the real axis through `f±`. Only the parameter
/// region `sin θ₁ · sin θ₂ > 0` is covered by the closed form.
pub fn mko_closed_form(params: &MkoParams) -> Result<MkoSpectrumSet> {
    if params.theta1.sin() * params.theta2.sin() <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "theta1",
            detail: format!(
                "closed form needs sin θ₁ · sin θ₂ > 0, got sin({}) · sin({}) = {:.3e}",
                params.theta1,
                params.theta2,
                params.theta1.sin() * params.theta2.sin()
            ),
        });
    }
    // Snap window edges that sit on ±1 up to float noise; otherwise a
    // boundary case like m_γ = −1 − 2e−16 would sprout a spurious
    // 1e−8-sized real interval and flip the regime label.
    let snap = |x: f64| {
        if (x - 1.0).abs() <= crate::tol::DEGENERATE {
            1.0
        } else if (x + 1.0).abs() <= crate::tol::DEGENERATE {
            -1.0
        } else {
            x
        }
    };
    let m = snap(params.m_gamma());
    let mm = snap(params.big_m_gamma());

    let circle_cos_interval = (m <= 1.0 && mm >= -1.0).then(|| (m.max(-1.0), mm.min(1.0)));
    let mut real_intervals = Vec::new();
    if m < -1.0 {
        // f₋ is increasing and f₊ decreasing on x ≤ −1; the two images meet
        // at −1 exactly when the window reaches the circle.
        if mm >= -1.0 {
            real_intervals.push((f_minus(m), f_plus(m)));
        } else {
            real_intervals.push((f_minus(m), f_minus(mm)));
            real_intervals.push((f_plus(mm), f_plus(m)));
        }
    }
    if mm > 1.0 {
        if m <= 1.0 {
            real_intervals.push((f_minus(mm), f_plus(mm)));
        } else {
            real_intervals.push((f_minus(mm), f_minus(m)));
            real_intervals.push((f_plus(m), f_plus(mm)));
        }
    }
    real_intervals.sort_by(|x, y| x.0.total_cmp(&y.0));

    let regime = match (circle_cos_interval.is_some(), !real_intervals.is_empty()) {
        (true, false) => MkoRegime::CircleOnly,
        (true, true) => MkoRegime::Mixed,
        (false, true) => MkoRegime::RealOnly,
        (false, false) => unreachable!("[m_γ, M_γ] is nonempty, so some component exists"),
    };
    Ok(MkoSpectrumSet { circle_cos_interval, real_intervals, regime })
}

/// Periodic truncation to an N-site ring (2N-dimensional pair, component-
/// major layout). The shift carries the momentum structure (`e^{±2iξ}`
/// becomes the two-site cyclic shift), the coin is the Hermitian equivalence
/// factor `C` at every site, and the weights are its eigenvalues
/// `λ± = −sin θ₂·sinh 2γ ± √(sin²θ₂·sinh²2γ + 1)` with `λ₊λ₋ = −1`.
///
/// Eigenvalues of the truncated evolution are exactly the momentum
/// eigenvalues at `ξ = 2πj/N`; at `γ = 0` the weights collapse to
/// `a = −b = 1` (the degenerate-mapping carve-out).
pub fn mko_ring_pair(params: &MkoParams, n_sites: usize) -> Result<ChiralPair> {
    if n_sites < 3 {
        return Err(Error::InvalidParameter {
            name: "n_sites",
            detail: format!("ring truncation needs at least 3 sites, got {n_sites}"),
        });
    }
    let n = n_sites;
    let (s1, c1) = params.theta1.sin_cos();
    let eye = CMatrix::identity(n, n);
    let l = cyclic_shift(n);
    let l2 = &l * &l;
    let shift = block2(
        &(&eye * C64::new(-s1, 0.0)),
        &(&l2 * C64::new(0.0, -c1)),
        &(l2.adjoint() * C64::new(0.0, c1)),
        &(&eye * C64::new(s1, 0.0)),
    );

    let (_, c_mko) = mko_equivalence_factors(params, 0.0);
    let half_tr = (c_mko[(0, 0)] + c_mko[(1, 1)]).re / 2.0;
    let root = (half_tr * half_tr + 1.0).sqrt();
    let (a, b) = (half_tr + root, half_tr - root);

    // λ₊ eigenvector of the Hermitian coin, from whichever column formula is
    // better conditioned.
    let cand1 = (c_mko[(0, 1)], C64::new(a, 0.0) - c_mko[(0, 0)]);
    let cand2 = (C64::new(a, 0.0) - c_mko[(1, 1)], c_mko[(1, 0)]);
    let n1 = (cand1.0.norm_sqr() + cand1.1.norm_sqr()).sqrt();
    let n2 = (cand2.0.norm_sqr() + cand2.1.norm_sqr()).sqrt();
    let (v0, v1) = if n1 >= n2 {
        (cand1.0 / C64::new(n1, 0.0), cand1.1 / C64::new(n1, 0.0))
    } else {
        (cand2.0 / C64::new(n2, 0.0), cand2.1 / C64::new(n2, 0.0))
    };

    let mut d = CMatrix::zeros(n, 2 * n);
    for x in 0..n {
        d[(x, x)] = v0.conj();
        d[(x, n + x)] = v1.conj();
    }
    ChiralPair::new(shift, d, a, b)
}

/// One row of a gain/loss sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct MkoSweepPoint {
    pub gamma: f64,
    pub regime: MkoRegime,
    /// The `cos ξ` window `[m_γ, M_γ]` whose clipping determines the regime.
    pub window: (f64, f64),
    /// Worst distance from a sampled eigenvalue to the closed-form set.
    pub max_set_distance: f64,
}

/// Sweep the closed form over gain/loss exponents at fixed angles, sampling
/// `grid` momenta per point. Rejects the parameter sector the closed form
/// does not cover. Parallel across points; output order follows `gammas`.
pub fn mko_sweep(base: &MkoParams, gammas: &[f64], grid: usize) -> Result<Vec<MkoSweepPoint>> {
    mko_closed_form(base)?;
    let base = *base;
    par::map_slice(gammas, move |&gamma| -> Result<MkoSweepPoint> {
        let params = MkoParams::new(gamma, base.phi, base.theta1, base.theta2)?;
        let set = mko_closed_form(&params)?;
        let mut worst = 0.0f64;
        for (_, eigs) in mko_sample_grid(&params, grid) {
            for lam in eigs {
                worst = worst.max(set.distance(lam));
            }
        }
        Ok(MkoSweepPoint {
            gamma,
            regime: set.regime,
            window: (params.m_gamma(), params.big_m_gamma()),
            max_set_distance: worst,
        })
    })
    .into_iter()
    .collect()
}

/// Draw valid parameters uniformly: `γ ∈ [0, 2)`, angles in `[0, 2π)`.
pub fn random_mko_params(seed: u64) -> MkoParams {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = 2.0 * std::f64::consts::PI;
    MkoParams {
        gamma: rng.random_range(0.0..2.0),
        phi: rng.random_range(0.0..tau),
        theta1: rng.random_range(0.0..tau),
        theta2: rng.random_range(0.0..tau),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::multiset_distance;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn reference(gamma: f64) -> MkoParams {
        MkoParams::new(gamma, 0.0, FRAC_PI_4, FRAC_PI_4).unwrap()
    }

    fn max_abs(m: &CMatrix) -> f64 {
        m.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn trivial_coins_give_pure_phases() {
        let params = MkoParams::new(0.0, 0.4, 0.0, 0.0).unwrap();
        for xi in [0.0, 0.3, 2.2] {
            let u = mko_momentum_matrix(&params, xi);
            let expect = diag2(polar(1.0, 2.0 * (xi + 0.4)), polar(1.0, -2.0 * (xi + 0.4)));
            assert!(max_abs(&(u - expect)) < 1e-14);
        }
    }

    #[test]
    fn unitary_at_gamma_zero() {
        let params = MkoParams::new(0.0, 0.3, FRAC_PI_4, FRAC_PI_4).unwrap();
        for (_, eigs) in mko_sample_grid(&params, 512) {
            for lam in eigs {
                assert!((lam.norm() - 1.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn equivalence_factors_match_frozen_forms() {
        let (gamma, phi, theta1, theta2, xi) = (0.3, 0.25, 0.5, 0.8, 0.7);
        let params = MkoParams::new(gamma, phi, theta1, theta2).unwrap();
        let (s, c) = mko_equivalence_factors(&params, xi);

        let (s1, c1) = theta1.sin_cos();
        let s_expect = m2(
            C64::new(-s1, 0.0),
            C64::new(0.0, -c1) * polar(1.0, 2.0 * xi),
            C64::new(0.0, c1) * polar(1.0, -2.0 * xi),
            C64::new(s1, 0.0),
        );
        assert!(max_abs(&(&s - s_expect)) < 1e-14);

        let (s2, c2) = theta2.sin_cos();
        let c_expect = m2(
            C64::new(s2 * (-2.0 * gamma).exp(), 0.0),
            C64::new(0.0, -c2) * polar(1.0, -2.0 * phi),
            C64::new(0.0, c2) * polar(1.0, 2.0 * phi),
            C64::new(-s2 * (2.0 * gamma).exp(), 0.0),
        );
        assert!(max_abs(&(&c - c_expect)) < 1e-14);

        // S(ξ) unitary + self-adjoint; C Hermitian with det −1.
        assert!(max_abs(&(&s - s.adjoint())) < 1e-12);
        assert!(max_abs(&(&s * &s - CMatrix::identity(2, 2))) < 1e-12);
        assert!(max_abs(&(&c - c.adjoint())) < 1e-12);
        let det = c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)];
        assert!((det - C64::new(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn factor_product_shares_eigenvalues_with_the_evolution() {
        for seed in 0..64 {
            let params = random_mko_params(seed);
            let xi = 2.0 * PI * (seed as f64 + 0.37) / 64.0;
            let (s, c) = mko_equivalence_factors(&params, xi);
            let via_factors = eig2(&(&s * &c));
            let direct = eig2(&mko_momentum_matrix(&params, xi));
            assert!(
                multiset_distance(&via_factors, &direct) < 1e-10,
                "seed {seed}: factor eigenvalues differ"
            );
        }
    }

    #[test]
    fn coin_determinant_is_minus_one_for_random_parameters() {
        for seed in 0..100 {
            let params = random_mko_params(1000 + seed);
            let (_, c) = mko_equivalence_factors(&params, 0.0);
            let det = c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)];
            assert!((det - C64::new(-1.0, 0.0)).norm() < 1e-12, "seed {seed}");
        }
    }

    #[test]
    fn closed_form_frozen_regimes() {
        // γ = 0: ap = −1/2, |qb| = 1/2 → window [−1, 0], pure circle arc.
        let set0 = mko_closed_form(&reference(0.0)).unwrap();
        assert_eq!(set0.regime, MkoRegime::CircleOnly);
        let (lo, hi) = set0.circle_cos_interval.unwrap();
        assert!((lo + 1.0).abs() < 1e-14 && hi.abs() < 1e-14);
        assert!(set0.real_intervals.is_empty());

        // Reference thresholds: γ₀ = 0, γ₁ = ½·log(3 + 2√2). Γ₀ sits exactly
        // at 1, where the square root amplifies float noise to ~1e−8.
        let (g0, g1) = reference(0.0).gamma_thresholds();
        assert!(g0.unwrap().abs() < 1e-7);
        let expect_g1 = 0.5 * (3.0 + 2.0 * 2.0_f64.sqrt()).ln();
        assert!((g1.unwrap() - expect_g1).abs() < 1e-14);

        // γ = 1.2 > γ₁ ≈ 0.8814: window entirely below −1, two negative
        // real intervals.
        let set_big = mko_closed_form(&reference(1.2)).unwrap();
        assert_eq!(set_big.regime, MkoRegime::RealOnly);
        assert!(set_big.circle_cos_interval.is_none());
        assert_eq!(set_big.real_intervals.len(), 2);
        for (lo, hi) in &set_big.real_intervals {
            assert!(lo <= hi && *hi < 0.0, "all spectrum negative: [{lo}, {hi}]");
        }
        let params = reference(1.2);
        let (m, mm) = (params.m_gamma(), params.big_m_gamma());
        assert!(mm < -1.0);
        assert!((set_big.real_intervals[0].0 - f_minus(m)).abs() < 1e-12);
        assert!((set_big.real_intervals[1].1 - f_plus(m)).abs() < 1e-12);

        // γ = 0.5: mixed, with the two real pieces merged at −1.
        let set_mid = mko_closed_form(&reference(0.5)).unwrap();
        assert_eq!(set_mid.regime, MkoRegime::Mixed);
        let m_mid = reference(0.5).m_gamma();
        assert_eq!(set_mid.real_intervals.len(), 1);
        assert!((set_mid.real_intervals[0].0 - f_minus(m_mid)).abs() < 1e-12);
        assert!((set_mid.real_intervals[0].1 - f_plus(m_mid)).abs() < 1e-12);
    }

    #[test]
    fn sampled_eigenvalues_lie_in_the_closed_form_set() {
        for gamma in [0.5, 1.2] {
            let params = reference(gamma);
            let set = mko_closed_form(&params).unwrap();
            for (xi, eigs) in mko_sample_grid(&params, 256) {
                for lam in eigs {
                    let dist = set.distance(lam);
                    assert!(dist <= 1e-6, "γ = {gamma}, ξ = {xi}: distance {dist}");
                }
            }
        }
    }

    #[test]
    fn closed_form_rejects_wrong_parameter_sector() {
        assert!(matches!(
            mko_closed_form(&MkoParams::new(0.0, 0.0, 0.0, FRAC_PI_4).unwrap()),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn hausdorff_distance_shrinks_with_grid_refinement() {
        let params = reference(0.5);
        let set = mko_closed_form(&params).unwrap();
        let mut gaps = Vec::new();
        for g in 8..=12u32 {
            let samples: Vec<C64> = mko_sample_grid(&params, 1 << g)
                .into_iter()
                .flat_map(|(_, eigs)| eigs)
                .collect();
            gaps.push(set.hausdorff_from(&samples, 4096));
        }
        for w in gaps.windows(2) {
            assert!(w[1] < w[0], "refinement must tighten the sample: {gaps:?}");
        }
    }

    #[test]
    fn ring_truncation_agrees_with_momentum_sampling() {
        let params = MkoParams::new(0.3, 0.2, FRAC_PI_4, FRAC_PI_4).unwrap();
        let n = 6;
        let pair = mko_ring_pair(&params, n).unwrap();
        assert!((pair.a() * pair.b() + 1.0).abs() < 1e-12, "ab = −1");

        // The evolution is S_ring·(C ⊗ I).
        let (_, c_mko) = mko_equivalence_factors(&params, 0.0);
        let eye = CMatrix::identity(n, n);
        let coin_ring = block2(
            &(&eye * c_mko[(0, 0)]),
            &(&eye * c_mko[(0, 1)]),
            &(&eye * c_mko[(1, 0)]),
            &(&eye * c_mko[(1, 1)]),
        );
        let rebuilt = pair.shift() * coin_ring;
        assert!(max_abs(&(pair.evolution() - rebuilt)) < 1e-12);

        let direct = crate::linalg::eig_general(pair.evolution()).unwrap().eigenvalues;
        let mut momentum = Vec::new();
        for j in 0..n {
            let xi = 2.0 * PI * j as f64 / n as f64;
            momentum.extend(eig2(&mko_momentum_matrix(&params, xi)));
        }
        assert!(multiset_distance(&direct, &momentum) < 1e-8);

        // End-to-end mapping on the truncation.
        let report = crate::spectral::verify_mapping(&pair, "mko-ring", 1e-8).unwrap();
        assert!(report.verdict.is_match(), "verdict: {:?}", report.verdict);
    }

    #[test]
    fn sweep_walks_through_the_three_regimes_in_order() {
        let gammas: Vec<f64> = (0..=10).map(|i| i as f64 * 0.2).collect();
        let rows = mko_sweep(&reference(0.0), &gammas, 128).unwrap();
        assert_eq!(rows[0].regime, MkoRegime::CircleOnly);
        assert_eq!(rows.last().unwrap().regime, MkoRegime::RealOnly);
        let rank = |r: MkoRegime| match r {
            MkoRegime::CircleOnly => 0,
            MkoRegime::Mixed => 1,
            MkoRegime::RealOnly => 2,
        };
        for w in rows.windows(2) {
            assert!(
                rank(w[0].regime) <= rank(w[1].regime),
                "regimes must transition circle → mixed → real as γ grows"
            );
            assert!(w[1].window.0 < w[0].window.0, "m_γ decreases");
        }
        for row in &rows {
            assert!(row.max_set_distance <= 1e-6, "γ = {}: {}", row.gamma, row.max_set_distance);
        }
        assert!(matches!(
            mko_sweep(&MkoParams::new(0.0, 0.0, -0.3, 0.7).unwrap(), &gammas, 64),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn unitary_ring_hits_the_degenerate_carveout() {
        let pair = mko_ring_pair(&reference(0.0), 8).unwrap();
        assert_eq!((pair.a(), pair.b()), (1.0, -1.0));
        assert!(!pair.assumption_flags().a_neq_pm_b);
        let direct = crate::spectral::direct_spectrum(&pair, 1e-8).unwrap();
        let total: usize = direct.iter().map(|d| d.algebraic).sum();
        assert_eq!(total, 16);
        for d in &direct {
            assert!((d.value.norm() - 1.0).abs() < 1e-10, "unimodular at γ = 0");
        }
        let report = crate::spectral::verify_mapping(&pair, "mko-ring", 1e-8).unwrap();
        assert!(report.verdict.is_match(), "verdict: {:?}", report.verdict);
    }
}

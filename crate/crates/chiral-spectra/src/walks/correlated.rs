//! Correlated random walk on arcs: backtrack with probability `p`, otherwise
//! transmit uniformly over the `k − 1` remaining arcs.

use super::require_regular_connected;
use crate::chiral::ChiralPair;
use crate::linalg::to_complex;
use crate::{graph, C64, Error, Result};

/// Parameters of the correlated walk on a k-regular graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelatedParams {
    p: f64,
    k: usize,
}

impl CorrelatedParams {
    pub fn new(p: f64, k: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                name: "p",
                detail: format!("backtracking probability must lie in [0, 1], got {p}"),
            });
        }
        if k < 2 {
            return Err(Error::DegreeOutOfRange {
                k,
                reason: "the correlated walk needs k ≥ 2 (no transmission targets otherwise)",
            });
        }
        Ok(CorrelatedParams { p, k })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Second coin weight `b = (pk − 1)/(k − 1)`; the first is `a = 1`.
    /// Vanishes at `p = 1/k` (isotropic walk) and reaches `a` at `p = 1`
    /// (pure zigzag) — both caught by assumption flags, not errors.
    pub fn b(&self) -> f64 {
        (self.p * self.k as f64 - 1.0) / (self.k as f64 - 1.0)
    }

    /// Spectral gap radius `r = |pk − 1|/(k − 1) = |b|`: the real spectrum
    /// lives in `[−1, −r] ∪ [r, 1]`.
    pub fn r(&self) -> f64 {
        self.b().abs()
    }

    /// Distance from `z` to the predicted spectral set
    /// `[−1, −r] ∪ [r, 1]`, united with the circle of radius `√r` when
    /// `p < 1/k` (backscattering too weak to keep the spectrum real).
    pub fn containment_distance(&self, z: C64) -> f64 {
        let r = self.r();
        let seg = |lo: f64, hi: f64| {
            let x = z.re.clamp(lo, hi);
            ((z.re - x).powi(2) + z.im * z.im).sqrt()
        };
        let mut dist = seg(-1.0, -r).min(seg(r, 1.0));
        if self.p < 1.0 / self.k as f64 {
            dist = dist.min((z.norm() - r.sqrt()).abs());
        }
        dist
    }
}

/// Build the correlated-walk pair on a connected k-regular graph (k ≥ 2):
/// `S = J`, `d = K_in/√k`, `a = 1`, `b = (pk−1)/(k−1)`.
///
/// The evolution is exactly the walk's row-stochastic transition matrix
/// (`p` on the reversed arc, `(1−p)/(k−1)` on every other feeding arc) and
/// the discriminant is the isotropic vertex walk `M/k`.
pub fn correlated_walk(g: &graph::Graph, p: f64) -> Result<ChiralPair> {
    let k = require_regular_connected(g)?;
    let params = CorrelatedParams::new(p, k)?;
    let (k_in, _) = graph::incidence_matrices(g);
    let d = to_complex(&k_in) / C64::new((k as f64).sqrt(), 0.0);
    let shift = to_complex(&graph::reversal_permutation(g));
    ChiralPair::new(shift, d, 1.0, params.b())
}

/// One row of a backtracking-probability sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelatedSweepPoint {
    pub p: f64,
    pub b: f64,
    pub r: f64,
    /// Circle component radius `√r`, present only when `p < 1/k`.
    pub circle_radius: Option<f64>,
    /// Name of the first failing assumption; such points are skipped, and
    /// the remaining fields stay `None`.
    pub skipped: Option<&'static str>,
    /// Extremes of `Re λ` over the direct spectrum.
    pub support: Option<(f64, f64)>,
    /// Worst distance from a direct eigenvalue to the predicted set.
    pub max_containment_distance: Option<f64>,
    /// Whether the full mapping verdict is a match at this point.
    pub verdict_match: Option<bool>,
}

/// Sweep the correlated walk over backtracking probabilities. Points whose
/// assumption flags fail are marked skipped, never errors. Parallel across
/// points; output order follows `ps`.
pub fn correlated_sweep(
    g: &graph::Graph,
    ps: &[f64],
    match_tol: f64,
) -> Result<Vec<CorrelatedSweepPoint>> {
    let k = require_regular_connected(g)?;
    crate::par::map_slice(ps, |&p| -> Result<CorrelatedSweepPoint> {
        let params = CorrelatedParams::new(p, k)?;
        let pair = correlated_walk(g, p)?;
        let circle_radius = (p < 1.0 / k as f64).then(|| params.r().sqrt());
        let mut point = CorrelatedSweepPoint {
            p,
            b: params.b(),
            r: params.r(),
            circle_radius,
            skipped: pair.assumption_flags().first_failure(),
            support: None,
            max_containment_distance: None,
            verdict_match: None,
        };
        if point.skipped.is_some() {
            return Ok(point);
        }
        let clusters = crate::spectral::direct_spectrum(&pair, match_tol)?;
        let (mut lo, mut hi, mut worst) = (f64::INFINITY, f64::NEG_INFINITY, 0.0f64);
        for cluster in &clusters {
            lo = lo.min(cluster.value.re);
            hi = hi.max(cluster.value.re);
            worst = worst.max(params.containment_distance(cluster.value));
        }
        point.support = Some((lo, hi));
        point.max_containment_distance = Some(worst);
        point.verdict_match =
            Some(crate::spectral::verify_mapping(&pair, "correlated", match_tol)?.verdict.is_match());
        Ok(point)
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{arc_structure, builtin};
    use crate::CMatrix;

    /// The walk matrix built straight from its verbal definition.
    fn transition_matrix(g: &graph::Graph, p: f64, k: usize) -> CMatrix {
        let arcs = arc_structure(g);
        let m = arcs.arc_count();
        let spread = (1.0 - p) / (k as f64 - 1.0);
        CMatrix::from_fn(m, m, |e, f| {
            if f == arcs.reversal(e) {
                C64::new(p, 0.0)
            } else if arcs.terminus(f) == arcs.origin(e) {
                C64::new(spread, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    #[test]
    fn evolution_is_the_transition_matrix() {
        for (name, p) in [("c4", 0.75), ("k4", 0.3), ("petersen", 0.05), ("c5", 1.0)] {
            let g = builtin(name).unwrap();
            let k = graph::graph_invariants(&g).degree.unwrap();
            let pair = correlated_walk(&g, p).unwrap();
            let expect = transition_matrix(&g, p, k);
            let defect =
                (pair.evolution() - expect).iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(defect < 1e-14, "{name} at p = {p}: defect {defect}");
            for e in 0..g.arc_count() {
                let row_sum: C64 = pair.evolution().row(e).iter().sum();
                assert!((row_sum - C64::new(1.0, 0.0)).norm() < 1e-14, "row-stochastic");
            }
        }
    }

    #[test]
    fn discriminant_is_isotropic_vertex_walk() {
        let g = builtin("c4").unwrap();
        let pair = correlated_walk(&g, 0.75).unwrap();
        let expect = to_complex(&graph::adjacency(&g)) / C64::new(2.0, 0.0);
        let defect = (pair.discriminant() - expect).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(defect < 1e-14);
        assert_eq!(pair.b(), 0.5, "b = (pk − 1)/(k − 1) at p = 3/4, k = 2");
    }

    #[test]
    fn degenerate_parameters_flag_instead_of_failing() {
        // p = 1/k: b = 0, isotropic reduction.
        let k4 = builtin("k4").unwrap();
        let iso = correlated_walk(&k4, 1.0 / 3.0).unwrap();
        let flags = iso.assumption_flags();
        assert!(!flags.ab_nonzero && flags.proj_proper && flags.shift_proper);

        // p = 1: b = 1 = a, pure zigzag.
        let zigzag = correlated_walk(&k4, 1.0).unwrap();
        assert!(!zigzag.assumption_flags().a_neq_pm_b);
        assert_eq!(zigzag.b(), 1.0);

        // k = 2 ring: b = 2p − 1.
        let c5 = builtin("c5").unwrap();
        let half = correlated_walk(&c5, 0.5).unwrap();
        assert!((half.b() - 0.0).abs() < 1e-15);
        assert!(!half.assumption_flags().ab_nonzero);
    }

    #[test]
    fn spectrum_lies_in_the_two_intervals_and_circle() {
        for name in ["c4", "k4"] {
            let g = builtin(name).unwrap();
            let k = graph::graph_invariants(&g).degree.unwrap();
            for step in 0..=10 {
                let p = step as f64 / 10.0;
                let params = CorrelatedParams::new(p, k).unwrap();
                let pair = correlated_walk(&g, p).unwrap();
                let vals = crate::linalg::eig_general(pair.evolution()).unwrap().eigenvalues;
                for z in vals {
                    let dist = params.containment_distance(z);
                    assert!(dist <= 1e-8, "{name}, p = {p}: eigenvalue {z} off-set by {dist}");
                }
            }
        }
    }

    #[test]
    fn zigzag_supports_only_plus_minus_one() {
        let pair = correlated_walk(&builtin("k4").unwrap(), 1.0).unwrap();
        let vals = crate::linalg::eig_general(pair.evolution()).unwrap().eigenvalues;
        for z in vals {
            let near_pm1 = (z - C64::new(1.0, 0.0)).norm().min((z + C64::new(1.0, 0.0)).norm());
            assert!(near_pm1 < 1e-10, "at p = 1 the support is {{±1}}, got {z}");
        }
    }

    #[test]
    fn sweep_marks_degenerate_points_and_verifies_the_rest() {
        let g = builtin("k4").unwrap();
        let ps: Vec<f64> = vec![0.0, 1.0 / 3.0, 0.6, 1.0];
        let rows = correlated_sweep(&g, &ps, 1e-8).unwrap();
        assert_eq!(rows.len(), 4);

        assert_eq!(rows[1].skipped, Some("ab_nonzero"), "p = 1/k has b = 0");
        assert_eq!(rows[3].skipped, Some("a_neq_pm_b"), "p = 1 has b = a");
        assert!(rows[1].support.is_none(), "skipped rows carry no spectrum");

        for row in [&rows[0], &rows[2]] {
            assert_eq!(row.skipped, None);
            let expect_r = (row.p * 3.0 - 1.0).abs() / 2.0;
            assert!((row.r - expect_r).abs() < 1e-15, "r = |pk − 1|/(k − 1)");
            assert_eq!(row.verdict_match, Some(true));
            assert!(row.max_containment_distance.unwrap() <= 1e-8);
            let (lo, hi) = row.support.unwrap();
            assert!(-1.0 - 1e-12 <= lo && hi <= 1.0 + 1e-12);
        }
        assert!(rows[0].circle_radius.is_some(), "p = 0 < 1/k keeps the circle");
        assert_eq!(rows[2].circle_radius, None, "p = 0.6 > 1/k is purely real");
    }
}

//! Deterministic end-to-end verification suite.
//!
//! [`run_all`] executes every invariant the crate promises — structural
//! identities, the spectral mapping on catalog and random pairs, zeta
//! identities, walk-count cross-checks, MKO closed-form containment — and
//! reports one [`CheckResult`] per check. Results are byte-stable for a
//! fixed seed. The CLI `verify` subcommand is a thin shell around this.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chiral::{random_pair, ChiralPair};
use crate::graph::{builtin, graph_invariants, random_regular};
use crate::linalg::{multiset_distance, operator_norm, sorted_by_re_im};
use crate::spectral::{
    check_bounds, default_z_samples, direct_spectrum, predicted_spectrum, verify_mapping,
    JoukowskyParams,
};
use crate::walks::{
    correlated_walk, eig2, example_homogeneous, example_inhomogeneous, grover_positive_support,
    mko_closed_form, mko_equivalence_factors, mko_momentum_matrix, mko_ring_pair,
    mko_sample_grid, random_mko_params, MkoParams, MkoRegime,
};
use crate::zeta::{
    bass_form, log_series, nb_walk_counts, prime_cycle_product, zeta_reciprocal,
};
use crate::{tol, C64, Result};

/// Knobs shared by every check.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub seed: u64,
    pub random_pairs: usize,
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 42, random_pairs: 100, tol: tol::MATCHING }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn wrap(name: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    match body() {
        Ok((passed, detail)) => CheckResult { name, passed, detail },
        Err(e) => CheckResult { name, passed: false, detail: format!("error: {e}") },
    }
}

fn random_pairs(cfg: &VerifyConfig, count: usize) -> Result<Vec<ChiralPair>> {
    (0..count).map(|i| random_pair(2 + i % 5, cfg.seed.wrapping_add(i as u64))).collect()
}

const CATALOG: [&str; 6] = ["c3", "c4", "k4", "k5", "k33", "petersen"];

fn check_incidence_structure(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut graphs = Vec::new();
    for name in CATALOG {
        graphs.push(builtin(name)?);
    }
    graphs.push(random_regular(10, 3, cfg.seed)?);
    let mut max_defect = 0.0f64;
    for g in &graphs {
        let (k_in, k_out) = crate::graph::incidence_matrices(g);
        let j = crate::graph::reversal_permutation(g);
        let adj = crate::graph::adjacency(g);
        max_defect = max_defect
            .max((&k_in * &j - &k_out).abs().max())
            .max((&k_in * k_out.transpose() - adj).abs().max())
            .max((&j * &j - nalgebra::DMatrix::<f64>::identity(j.nrows(), j.ncols())).abs().max());
    }
    Ok((max_defect == 0.0, format!("{} graphs, max defect {max_defect:.1e}", graphs.len())))
}

fn check_multiplicity_formulas(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut graphs = Vec::new();
    for name in ["k4", "k5", "k33", "petersen"] {
        graphs.push(builtin(name)?);
    }
    for i in 0..5u64 {
        graphs.push(random_regular(8 + 2 * (i as usize), 3, cfg.seed.wrapping_add(100 + i))?);
    }
    let mut failures = 0usize;
    for g in &graphs {
        let inv = graph_invariants(g);
        let pair = grover_positive_support(g)?;
        let md = pair.multiplicity_data();
        let betti_shift = (g.edge_count() - g.vertex_count()) as i64;
        let ok = md.m_plus == 1
            && md.m_minus == usize::from(inv.bipartite)
            && md.big_m_plus as i64 == betti_shift + md.m_plus as i64
            && md.big_m_minus as i64 == betti_shift + md.m_minus as i64
            && md.accounting_holds();
        failures += usize::from(!ok);
    }
    Ok((failures == 0, format!("{} graphs, {failures} formula failures", graphs.len())))
}

fn check_solver_cross(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for name in CATALOG {
        let adj = crate::linalg::to_complex(&crate::graph::adjacency(&builtin(name)?));
        let general = crate::linalg::eig_general(&adj)?.eigenvalues;
        let hermitian = crate::linalg::eig_hermitian(&adj)?.eigenvalues;
        worst = worst.max(multiset_distance(&general, &hermitian));

        let coeffs = crate::linalg::char_poly(&adj)?;
        let u = C64::new(0.37, 0.0);
        let via_poly = coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, &c| acc * u + c);
        let via_eigs = hermitian
            .iter()
            .fold(C64::new(1.0, 0.0), |acc, &l| acc * (C64::new(1.0, 0.0) - u * l));
        worst = worst.max((via_poly - via_eigs).norm() / via_eigs.norm().max(1.0));
    }
    Ok((worst <= tol::CROSS_SOLVER, format!("max cross-solver distance {worst:.3e}")))
}

fn check_commutator_identity(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let pairs = random_pairs(cfg, cfg.random_pairs)?;
    for pair in &pairs {
        let u_norm = operator_norm(pair.evolution());
        let defect = pair.normality_defect();
        worst = worst.max(defect.residual / (1.0 + u_norm * u_norm));
    }
    Ok((
        worst <= tol::STRUCTURE,
        format!("{} pairs, max scaled residual {worst:.3e}", pairs.len()),
    ))
}

fn check_chiral_symmetry(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let pairs = random_pairs(cfg, cfg.random_pairs)?;
    for pair in &pairs {
        let scale = 1.0 + operator_norm(pair.evolution());
        worst = worst.max(pair.chiral_symmetry_defect() / scale);
    }
    Ok((worst <= tol::STRUCTURE, format!("max scaled defect {worst:.3e}")))
}

fn check_norm_identity(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for pair in &random_pairs(cfg, cfg.random_pairs)? {
        let (measured, expected) = pair.operator_norm_identity();
        worst = worst.max((measured - expected).abs() / expected.max(1.0));
    }
    Ok((worst <= tol::FLAG, format!("max relative gap {worst:.3e}")))
}

fn check_accounting(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut failures = 0usize;
    let pairs = random_pairs(cfg, cfg.random_pairs)?;
    for pair in &pairs {
        failures += usize::from(!pair.multiplicity_data().accounting_holds());
    }
    Ok((failures == 0, format!("{} pairs, {failures} accounting failures", pairs.len())))
}

fn check_joukowsky_roundtrip(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9));
    let draw = |rng: &mut ChaCha8Rng| loop {
        let x: f64 = rng.random_range(-3.0..3.0);
        if x.abs() >= 0.2 {
            return x;
        }
    };
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let a = draw(&mut rng);
        let b = loop {
            let b = draw(&mut rng);
            if (a - b).abs() >= 0.2 {
                break b;
            }
        };
        let t: f64 = rng.random_range(-1.0..1.0);
        let params = JoukowskyParams::new(a, b)?;
        let roots = params.inverse(t);
        for root in [roots.plus, roots.minus] {
            let back = params.forward(root)?;
            worst = worst.max((back - C64::new(t, 0.0)).norm() / t.abs().max(1.0));
        }
        let scale = (a - b).abs().max(1.0);
        worst = worst
            .max((roots.plus * roots.minus + C64::new(a * b, 0.0)).norm() / (a * b).abs().max(1.0))
            .max((roots.plus + roots.minus - C64::new((a - b) * t, 0.0)).norm() / scale);
    }
    Ok((worst <= tol::ROUNDTRIP, format!("1000 draws, max residual {worst:.3e}")))
}

fn check_mapping_random(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let count = cfg.random_pairs.min(40);
    let mut mismatches = 0usize;
    for pair in &random_pairs(cfg, count)? {
        let report = verify_mapping(pair, "random", cfg.tol)?;
        mismatches += usize::from(!report.verdict.is_match());
    }
    Ok((mismatches == 0, format!("{count} pairs, {mismatches} mapping mismatches")))
}

fn check_reflection_symmetry(cfg: &VerifyConfig) -> Result<(bool, String)> {
    // The discriminant is Hermitian, so predicted spectra are closed under
    // complex conjugation.
    let mut worst = 0.0f64;
    for pair in &random_pairs(cfg, 20)? {
        let mut values = Vec::new();
        for atom in predicted_spectrum(pair)? {
            for _ in 0..atom.multiplicity {
                values.push(atom.value);
            }
        }
        let conjugated: Vec<C64> = values.iter().map(|z| z.conj()).collect();
        worst = worst.max(multiset_distance(
            &sorted_by_re_im(values),
            &sorted_by_re_im(conjugated),
        ));
    }
    Ok((worst <= 1e-9, format!("max conjugation asymmetry {worst:.3e}")))
}

fn catalog_pairs() -> Result<Vec<(&'static str, ChiralPair)>> {
    Ok(vec![
        ("grover-k4", grover_positive_support(&builtin("k4")?)?),
        ("grover-k33", grover_positive_support(&builtin("k33")?)?),
        ("grover-petersen", grover_positive_support(&builtin("petersen")?)?),
        ("correlated-c4", correlated_walk(&builtin("c4")?, 0.75)?),
    ])
}

fn check_catalog_mapping(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut mismatches = Vec::new();
    for (model, pair) in catalog_pairs()? {
        let report = verify_mapping(&pair, model, cfg.tol)?;
        if !report.verdict.is_match() {
            mismatches.push(model);
        }
    }
    Ok((mismatches.is_empty(), format!("mismatches: {mismatches:?}")))
}

fn check_bounds_catalog(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut violations = Vec::new();
    for (model, pair) in catalog_pairs()? {
        let samples = default_z_samples(&pair);
        let report = check_bounds(&pair, &samples, cfg.tol)?;
        if !(report.annulus && report.locus && report.resolvent) {
            violations.push(model);
        }
    }
    Ok((violations.is_empty(), format!("violations: {violations:?}")))
}

fn check_zeta_routes(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut disagreements = Vec::new();
    for name in CATALOG {
        let g = builtin(name)?;
        if zeta_reciprocal(&g)? != bass_form(&g)? {
            disagreements.push(name);
        }
    }
    Ok((disagreements.is_empty(), format!("disagreements: {disagreements:?}")))
}

fn check_walk_counts(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let c3 = nb_walk_counts(&builtin("c3")?, 8)?;
    let k4 = nb_walk_counts(&builtin("k4")?, 6)?;
    // k33 exercises the internal trace-vs-enumeration agreement on a larger
    // arc set; its return value is already double-checked.
    let k33 = nb_walk_counts(&builtin("k33")?, 8)?;
    let ok = c3 == [0, 0, 6, 0, 0, 6, 0, 0] && k4 == [0, 0, 24, 24, 0, 96] && k33[3] > 0;
    Ok((ok, format!("N(c3) = {c3:?}, N(k4) = {k4:?}")))
}

fn check_euler_product(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let c3 = prime_cycle_product(&builtin("c3")?, 8)?;
    let k4 = prime_cycle_product(&builtin("k4")?, 6)?;
    let ok = c3.classes_by_length == [0, 0, 2, 0, 0, 0, 0, 0]
        && k4.classes_by_length == [0, 0, 8, 6, 0, 12];
    Ok((ok, format!("prime classes: c3 {:?}, k4 {:?}", c3.classes_by_length, k4.classes_by_length)))
}

fn check_log_series(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for name in ["c3", "k4", "k33"] {
        let g = builtin(name)?;
        let series = log_series(&zeta_reciprocal(&g)?, 8);
        let counts = nb_walk_counts(&g, 8)?;
        for m in 1..=8usize {
            worst = worst.max((series[m] + counts[m - 1] as f64 / m as f64).abs());
        }
    }
    Ok((worst <= tol::COEFF_RESIDUE, format!("max log-series gap {worst:.3e}")))
}

fn reference_mko(gamma: f64) -> Result<MkoParams> {
    MkoParams::new(gamma, 0.0, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_4)
}

fn check_mko_unitary(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let params = MkoParams::new(0.0, 0.3, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_4)?;
    let mut worst = 0.0f64;
    for (_, eigs) in mko_sample_grid(&params, 512) {
        for lam in eigs {
            worst = worst.max((lam.norm() - 1.0).abs());
        }
    }
    Ok((worst <= tol::UNIMODULAR, format!("512 momenta, max |λ|−1 = {worst:.3e}")))
}

fn check_mko_containment(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut regime_ok = true;
    let (_, gamma1) = reference_mko(0.0)?.gamma_thresholds();
    let gamma1 = gamma1.expect("reference parameters have a real γ₁");
    for gamma in [0.0, 0.2, 0.5, 0.8, 1.0, 1.5] {
        let params = reference_mko(gamma)?;
        let set = mko_closed_form(&params)?;
        let expected_regime = if gamma == 0.0 {
            MkoRegime::CircleOnly
        } else if gamma < gamma1 {
            MkoRegime::Mixed
        } else {
            MkoRegime::RealOnly
        };
        regime_ok &= set.regime == expected_regime;
        for (_, eigs) in mko_sample_grid(&params, 256) {
            for lam in eigs {
                worst = worst.max(set.distance(lam));
            }
        }
    }
    Ok((
        worst <= tol::MKO_SAMPLING && regime_ok,
        format!("max set distance {worst:.3e}, regimes consistent: {regime_ok}"),
    ))
}

fn check_mko_factors(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut worst_det = 0.0f64;
    for i in 0..64u64 {
        let params = random_mko_params(cfg.seed.wrapping_add(7000 + i));
        let xi = 2.0 * std::f64::consts::PI * (i as f64 + 0.31) / 64.0;
        let (s, c) = mko_equivalence_factors(&params, xi);
        let via_factors = eig2(&(&s * &c));
        let direct = eig2(&mko_momentum_matrix(&params, xi));
        worst = worst.max(multiset_distance(&via_factors, &direct));
        let det = c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)];
        worst_det = worst_det.max((det + C64::new(1.0, 0.0)).norm());
    }
    Ok((
        worst <= tol::MKO_FACTORS && worst_det <= tol::STRUCTURE,
        format!("max eigenvalue gap {worst:.3e}, max det defect {worst_det:.3e}"),
    ))
}

fn check_mko_ring(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let params = MkoParams::new(0.3, 0.2, std::f64::consts::FRAC_PI_4, std::f64::consts::FRAC_PI_4)?;
    let n = 6;
    let pair = mko_ring_pair(&params, n)?;
    let direct = crate::linalg::eig_general(pair.evolution())?.eigenvalues;
    let mut momentum = Vec::new();
    for j in 0..n {
        let xi = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
        momentum.extend(eig2(&mko_momentum_matrix(&params, xi)));
    }
    let gap = multiset_distance(&direct, &momentum);
    let report = verify_mapping(&pair, "mko-ring", cfg.tol)?;
    Ok((
        gap <= tol::MATCHING && report.verdict.is_match(),
        format!("momentum gap {gap:.3e}, mapping verdict match: {}", report.verdict.is_match()),
    ))
}

fn check_correlated_containment(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    let mut skipped = 0usize;
    let dense: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    let coarse: Vec<f64> = (0..=4).map(|i| i as f64 / 4.0).collect();
    for (name, ps) in [("c4", &dense), ("k4", &dense), ("petersen", &coarse)] {
        let g = builtin(name)?;
        for &p in ps {
            let pair = correlated_walk(&g, p)?;
            if !pair.assumption_flags().all() {
                skipped += 1;
                continue;
            }
            let k = graph_invariants(&g).degree.expect("regular catalog graph");
            let params = crate::walks::CorrelatedParams::new(p, k)?;
            for cluster in direct_spectrum(&pair, tol::MATCHING)? {
                worst = worst.max(params.containment_distance(cluster.value));
            }
        }
    }
    Ok((
        worst <= tol::BOUNDS,
        format!("max containment distance {worst:.3e}, {skipped} flagged points skipped"),
    ))
}

fn check_normality_grid(_cfg: &VerifyConfig) -> Result<(bool, String)> {
    let r = |x: f64| C64::new(x, 0.0);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let spinors = [(r(1.0), r(0.0)), (r(0.0), r(1.0)), (r(h), r(h))];
    let shifts = [(1.0, r(0.0)), (0.0, r(1.0)), (h, r(h))];
    let mut failures = 0usize;
    for &phi in &spinors {
        for &(p, q) in &shifts {
            let pair = example_homogeneous(phi, p, q, 5, 2.0, 1.0)?;
            let lhs = pair.normality_defect().lhs_norm;
            let expect_normal = q.norm() == 0.0 && (phi.0 * phi.1.conj()).norm() == 0.0;
            let ok = if expect_normal { lhs < 1e-12 } else { lhs > 1e-3 };
            failures += usize::from(!ok);
        }
    }
    Ok((failures == 0, format!("9 grid points, {failures} classification failures")))
}

fn check_degenerate_carveout(cfg: &VerifyConfig) -> Result<(bool, String)> {
    let mut mismatches = 0usize;
    for (alpha, beta, n) in [
        (1.0, C64::new(0.0, 0.0), 4),
        (0.6, C64::new(0.8, 0.0), 6),
        (0.3, C64::new(0.4, 0.2), 8),
    ] {
        let pair = example_inhomogeneous(alpha, beta, n)?;
        let report = verify_mapping(&pair, "inhom-example", cfg.tol)?;
        let ok = report.verdict.is_match()
            && (pair.a() + pair.b()).abs() < 1e-14
            && pair.normality_defect().lhs_norm < 1e-12;
        mismatches += usize::from(!ok);
    }
    Ok((mismatches == 0, format!("3 instances, {mismatches} failures")))
}

/// Run every check with the given configuration.
pub fn run_all(cfg: &VerifyConfig) -> Vec<CheckResult> {
    vec![
        wrap("graph/incidence-structure", || check_incidence_structure(cfg)),
        wrap("graph/multiplicity-formulas", || check_multiplicity_formulas(cfg)),
        wrap("linalg/solver-cross-check", || check_solver_cross(cfg)),
        wrap("chiral/commutator-identity", || check_commutator_identity(cfg)),
        wrap("chiral/chiral-symmetry", || check_chiral_symmetry(cfg)),
        wrap("chiral/operator-norm-identity", || check_norm_identity(cfg)),
        wrap("chiral/multiplicity-accounting", || check_accounting(cfg)),
        wrap("spectral/joukowsky-roundtrip", || check_joukowsky_roundtrip(cfg)),
        wrap("spectral/mapping-random-pairs", || check_mapping_random(cfg)),
        wrap("spectral/reflection-symmetry", || check_reflection_symmetry(cfg)),
        wrap("spectral/catalog-mapping", || check_catalog_mapping(cfg)),
        wrap("spectral/bounds-catalog", || check_bounds_catalog(cfg)),
        wrap("zeta/determinant-routes", || check_zeta_routes(cfg)),
        wrap("zeta/walk-counts", || check_walk_counts(cfg)),
        wrap("zeta/euler-product", || check_euler_product(cfg)),
        wrap("zeta/log-series", || check_log_series(cfg)),
        wrap("mko/unitary-grid", || check_mko_unitary(cfg)),
        wrap("mko/closed-form-containment", || check_mko_containment(cfg)),
        wrap("mko/factor-equivalence", || check_mko_factors(cfg)),
        wrap("mko/ring-truncation", || check_mko_ring(cfg)),
        wrap("walks/correlated-containment", || check_correlated_containment(cfg)),
        wrap("walks/normality-grid", || check_normality_grid(cfg)),
        wrap("walks/degenerate-carveout", || check_degenerate_carveout(cfg)),
    ]
}

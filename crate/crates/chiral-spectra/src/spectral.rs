//! The spectral mapping: scaled Joukowsky transform, predicted point spectra,
//! the direct eigensolver oracle, matching verdicts, and containment bounds.
//!
//! For a pair with weights `(a, b)` the transform
//!
//! ```text
//! φ(z) = (z − ab·z⁻¹)/(a − b)
//! ```
//!
//! sends the point spectrum of the evolution `U` onto the spectrum of the
//! discriminant `T`. Away from `φ(λ) = ±1` every eigenvalue `t` of `T` lifts
//! to the two roots of `λ² − (a−b)t·λ − ab = 0` with the *same geometric
//! multiplicity*; the remaining eigenvalues are "birth" values `±a` and `∓b`
//! whose multiplicities are the kernel counts of [`crate::chiral`]. Everything
//! predicted here is verified against a dense eigensolve plus per-value SVD
//! kernels — two computations that share no code path.

use serde::Serialize;

use crate::chiral::ChiralPair;
use crate::{linalg, par, tol, C64, CMatrix, Error, Result};

/// Coin weights for the scaled Joukowsky transform.
///
/// The transform needs `a ≠ b` and `ab ≠ 0`; `a = −b` is fine here (the map
/// degenerates to `a·(z − a²·z⁻¹)/(2a)` which is still invertible) and is
/// tracked by the pair's assumption flags instead.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JoukowskyParams {
    a: f64,
    b: f64,
}

/// Both roots of `λ² − (a−b)t·λ − ab = 0`.
///
/// `plus` carries the `+√disc` branch (principal square root; for negative
/// discriminant the root with nonnegative imaginary part). When the
/// discriminant vanishes both fields hold the double root `(a−b)t/2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InverseRoots {
    pub plus: C64,
    pub minus: C64,
    pub degenerate: bool,
}

impl JoukowskyParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFinite);
        }
        let scale = 1.0_f64.max(a.abs()).max(b.abs());
        if (a - b).abs() <= tol::STRUCTURE * scale {
            return Err(Error::AssumptionFailed {
                name: "a_neq_b",
                detail: format!("a = {a}, b = {b}: the transform denominator a − b vanishes"),
            });
        }
        if a.abs() <= tol::STRUCTURE || b.abs() <= tol::STRUCTURE {
            return Err(Error::AssumptionFailed {
                name: "ab_nonzero",
                detail: format!("a = {a}, b = {b}: φ needs ab ≠ 0"),
            });
        }
        Ok(JoukowskyParams { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Radius √(−ab) of the non-real spectral circle; defined iff ab < 0.
    pub fn circle_radius(&self) -> Option<f64> {
        (self.a * self.b < 0.0).then(|| (-self.a * self.b).sqrt())
    }

    /// `φ(z) = (z − ab/z)/(a − b)`; rejects `z = 0`.
    pub fn forward(&self, z: C64) -> Result<C64> {
        if z.norm() == 0.0 {
            return Err(Error::JoukowskyAtZero);
        }
        let ab = C64::new(self.a * self.b, 0.0);
        Ok((z - ab / z) / C64::new(self.a - self.b, 0.0))
    }

    /// Both preimages of a real `t`: the roots of `λ² − (a−b)t·λ − ab`.
    /// Satisfies `λ₊λ₋ = −ab`, `λ₊ + λ₋ = (a−b)t`, and `φ(λ±) = t`.
    pub fn inverse(&self, t: f64) -> InverseRoots {
        let s = (self.a - self.b) * t;
        let disc = s * s + 4.0 * self.a * self.b;
        let scale = (s * s).max(4.0 * (self.a * self.b).abs()).max(1.0);
        if disc.abs() <= tol::STRUCTURE * scale {
            let mid = C64::new(s / 2.0, 0.0);
            return InverseRoots { plus: mid, minus: mid, degenerate: true };
        }
        let sq = if disc >= 0.0 {
            C64::new(disc.sqrt(), 0.0)
        } else {
            C64::new(0.0, (-disc).sqrt())
        };
        InverseRoots {
            plus: (C64::new(s, 0.0) + sq) / C64::new(2.0, 0.0),
            minus: (C64::new(s, 0.0) - sq) / C64::new(2.0, 0.0),
            degenerate: false,
        }
    }
}

/// Where a predicted atom comes from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AtomOrigin {
    /// Lifted from a discriminant eigenvalue `t ∉ {±1}`.
    Inherited { t: f64 },
    /// Value `a`, multiplicity `dim ker(T − I)`.
    BirthAPlus,
    /// Value `−a`, multiplicity `dim ker(T + I)`.
    BirthAMinus,
    /// Value `−b`, multiplicity `dim [ker d ∩ ker(S + I)]`.
    BirthBPlus,
    /// Value `b`, multiplicity `dim [ker d ∩ ker(S − I)]`.
    BirthBMinus,
}

impl AtomOrigin {
    pub fn label(&self) -> &'static str {
        match self {
            AtomOrigin::Inherited { .. } => "inherited",
            AtomOrigin::BirthAPlus => "birth_a_plus",
            AtomOrigin::BirthAMinus => "birth_a_minus",
            AtomOrigin::BirthBPlus => "birth_b_plus",
            AtomOrigin::BirthBMinus => "birth_b_minus",
        }
    }

    /// Discriminant eigenvalue this atom reports to: `t` for inherited atoms,
    /// `±1` for the `±a` births, none for the `∓b` births (they live in
    /// `ker d`, invisible to `T`).
    pub fn t_source(&self) -> Option<f64> {
        match self {
            AtomOrigin::Inherited { t } => Some(*t),
            AtomOrigin::BirthAPlus => Some(1.0),
            AtomOrigin::BirthAMinus => Some(-1.0),
            AtomOrigin::BirthBPlus | AtomOrigin::BirthBMinus => None,
        }
    }

    fn rank(&self) -> u8 {
        match self {
            AtomOrigin::Inherited { .. } => 0,
            AtomOrigin::BirthAPlus => 1,
            AtomOrigin::BirthAMinus => 2,
            AtomOrigin::BirthBPlus => 3,
            AtomOrigin::BirthBMinus => 4,
        }
    }
}

/// One predicted eigenvalue with its geometric multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralAtom {
    pub value: C64,
    pub multiplicity: usize,
    pub origin: AtomOrigin,
    /// True when the quadratic had a double root; the geometric count still
    /// holds but algebraic structure (possible Jordan block) is not asserted.
    pub degenerate_root: bool,
}

/// One cluster of directly computed eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectCluster {
    pub value: C64,
    /// Cluster size among the n eigensolver outputs.
    pub algebraic: usize,
    /// `dim ker(U − value·I)` by SVD.
    pub geometric: usize,
}

fn by_re_im(x: &C64, y: &C64) -> std::cmp::Ordering {
    x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im))
}

/// Union-find single-linkage clustering of complex values at the given width.
/// Returns index groups in first-appearance order.
fn cluster_indices(vals: &[C64], width: f64) -> Vec<Vec<usize>> {
    let n = vals.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (vals[i] - vals[j]).norm() <= width {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

/// Chain-cluster an ascending list of reals; returns (mean, count) pairs.
fn cluster_real(sorted_vals: &[f64], width: f64) -> Vec<(f64, usize)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < sorted_vals.len() {
        let mut j = i + 1;
        while j < sorted_vals.len() && sorted_vals[j] - sorted_vals[j - 1] <= width {
            j += 1;
        }
        let slice = &sorted_vals[i..j];
        out.push((slice.iter().sum::<f64>() / slice.len() as f64, slice.len()));
        i = j;
    }
    out
}

/// Assemble the predicted point spectrum of `U` from the spectrum of `T` and
/// the four kernel counts.
///
/// Requires the structural assumptions, with one carve-out: a pair whose only
/// violation is `a = −b` is accepted — there `U` is a scalar multiple of a
/// unitary, the mapping still holds, and the birth families merely land on
/// coinciding values (`a = −b` and `−a = b`); such coincident atoms are kept
/// separate here and grouped by value during verification.
///
/// Eigenvalues of `T` are clustered at width 1e−8 first; clusters within
/// 1e−8 of `±1` are routed to the `±a` birth counts (never inverted — `φ(λ) =
/// ±1` exactly characterizes the birth values, so inherited and birth atoms
/// cannot legitimately collide).
pub fn predicted_spectrum(pair: &ChiralPair) -> Result<Vec<SpectralAtom>> {
    let flags = pair.assumption_flags();
    let (a, b) = (pair.a(), pair.b());
    let scale = 1.0_f64.max(a.abs()).max(b.abs());
    let a_eq_minus_b = (a + b).abs() <= tol::STRUCTURE * scale;
    if !flags.proj_proper {
        return Err(Error::AssumptionFailed {
            name: "proj_proper",
            detail: "d*d = I: no b-subspace, the mapping theorem does not apply".into(),
        });
    }
    if !flags.shift_proper {
        return Err(Error::AssumptionFailed {
            name: "shift_proper",
            detail: "S = ±I forces T = ±I: every eigenvalue is a birth value".into(),
        });
    }
    if !flags.ab_nonzero {
        return Err(Error::AssumptionFailed {
            name: "ab_nonzero",
            detail: format!("a = {a}, b = {b}: φ is singular when ab = 0"),
        });
    }
    if !flags.a_neq_pm_b && !a_eq_minus_b {
        return Err(Error::AssumptionFailed {
            name: "a_neq_pm_b",
            detail: format!("a = {a}, b = {b}: a = b collapses the coin to a scalar"),
        });
    }

    let params = JoukowskyParams::new(a, b)?;
    let counts = pair.multiplicity_data();
    let teig = linalg::eig_hermitian(pair.discriminant())?;
    let tvals: Vec<f64> = teig.eigenvalues.iter().map(|z| z.re).collect();

    let mut atoms = Vec::new();
    // m± from the same clustering that routes t into the birth branch, so the
    // predicted total is exact by construction; tests cross-check these
    // against the SVD counts in MultiplicityData.
    let (mut m_plus, mut m_minus) = (0usize, 0usize);
    for (t, mult) in cluster_real(&tvals, tol::MATCHING) {
        if (t - 1.0).abs() <= tol::MATCHING {
            m_plus += mult;
            continue;
        }
        if (t + 1.0).abs() <= tol::MATCHING {
            m_minus += mult;
            continue;
        }
        let roots = params.inverse(t);
        if roots.degenerate {
            atoms.push(SpectralAtom {
                value: roots.plus,
                multiplicity: mult,
                origin: AtomOrigin::Inherited { t },
                degenerate_root: true,
            });
        } else {
            for value in [roots.plus, roots.minus] {
                atoms.push(SpectralAtom {
                    value,
                    multiplicity: mult,
                    origin: AtomOrigin::Inherited { t },
                    degenerate_root: false,
                });
            }
        }
    }
    let births = [
        (C64::new(a, 0.0), m_plus, AtomOrigin::BirthAPlus),
        (C64::new(-a, 0.0), m_minus, AtomOrigin::BirthAMinus),
        (C64::new(-b, 0.0), counts.big_m_plus, AtomOrigin::BirthBPlus),
        (C64::new(b, 0.0), counts.big_m_minus, AtomOrigin::BirthBMinus),
    ];
    for (value, multiplicity, origin) in births {
        if multiplicity > 0 {
            atoms.push(SpectralAtom { value, multiplicity, origin, degenerate_root: false });
        }
    }
    atoms.sort_by(|x, y| by_re_im(&x.value, &y.value).then(x.origin.rank().cmp(&y.origin.rank())));
    Ok(atoms)
}

/// Brute-force spectrum of an arbitrary operator: dense eigensolve, cluster
/// at `match_tol` (absolute after normalizing by the spectral radius), then a
/// per-cluster SVD kernel for geometric multiplicity. Two clusters closer
/// than 10× the cluster width are refused, not guessed.
pub fn direct_spectrum_of(u: &CMatrix, match_tol: f64) -> Result<Vec<DirectCluster>> {
    let vals = linalg::eig_general(u)?.eigenvalues;
    let radius = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let width = match_tol * radius.max(1.0);

    let groups = cluster_indices(&vals, width);
    let reps: Vec<(C64, usize)> = groups
        .iter()
        .map(|idxs| {
            let sum: C64 = idxs.iter().map(|&i| vals[i]).sum();
            (sum / C64::new(idxs.len() as f64, 0.0), idxs.len())
        })
        .collect();

    for i in 0..reps.len() {
        for j in (i + 1)..reps.len() {
            let gap = (reps[i].0 - reps[j].0).norm();
            if gap < 10.0 * width {
                return Err(Error::ClusterAmbiguity {
                    a: reps[i].0.into(),
                    b: reps[j].0.into(),
                    width,
                });
            }
        }
    }

    let n = u.nrows();
    let eye = CMatrix::identity(n, n);
    let mut clusters = par::map_slice(&reps, |&(value, algebraic)| DirectCluster {
        value,
        algebraic,
        geometric: linalg::kernel_dimension(&(u - &eye * value), tol::RANK),
    });
    clusters.sort_by(|x, y| by_re_im(&x.value, &y.value));
    Ok(clusters)
}

/// [`direct_spectrum_of`] applied to the pair's own evolution.
pub fn direct_spectrum(pair: &ChiralPair, match_tol: f64) -> Result<Vec<DirectCluster>> {
    direct_spectrum_of(pair.evolution(), match_tol)
}

/// Containment-bound results; the booleans serialize into reports, the
/// margins record the worst raw violation observed (0 = clean).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundReport {
    pub annulus: bool,
    pub locus: bool,
    pub resolvent: bool,
    #[serde(skip)]
    pub annulus_violation: f64,
    #[serde(skip)]
    pub locus_violation: f64,
    #[serde(skip)]
    pub resolvent_violation: f64,
    #[serde(skip)]
    pub resolvent_samples_used: usize,
}

/// Twenty resolvent probe points: ten outside the spectral annulus at radii
/// 1.3·max and 2.0·max (alternating), ten inside at 0.5·min and 0.25·min.
pub fn default_z_samples(pair: &ChiralPair) -> Vec<C64> {
    let lo = pair.a().abs().min(pair.b().abs());
    let hi = pair.a().abs().max(pair.b().abs());
    let hi_base = if hi > 0.0 { hi } else { 1.0 };
    let tau = 2.0 * std::f64::consts::PI;
    let mut zs = Vec::with_capacity(20);
    for j in 0..10 {
        let r = if j % 2 == 0 { 1.3 } else { 2.0 } * hi_base;
        let angle = tau * j as f64 / 10.0;
        zs.push(C64::new(r * angle.cos(), r * angle.sin()));
    }
    for j in 0..10 {
        let r = if j % 2 == 0 { 0.5 } else { 0.25 } * lo;
        let angle = tau * (j as f64 + 0.5) / 10.0;
        zs.push(C64::new(r * angle.cos(), r * angle.sin()));
    }
    zs
}

fn check_bounds_matrix(
    pair: &ChiralPair,
    u: &CMatrix,
    z_samples: &[C64],
    tol_abs: f64,
) -> Result<BoundReport> {
    let vals = linalg::eig_general(u)?.eigenvalues;
    let lo = pair.a().abs().min(pair.b().abs());
    let hi = pair.a().abs().max(pair.b().abs());
    let ab = pair.a() * pair.b();

    let mut annulus_violation = 0.0_f64;
    let mut locus_violation = 0.0_f64;
    for z in &vals {
        let r = z.norm();
        annulus_violation = annulus_violation.max(lo - r).max(r - hi);
        let off_locus = if ab > 0.0 {
            z.im.abs()
        } else {
            z.im.abs().min((r - (-ab).sqrt()).abs())
        };
        locus_violation = locus_violation.max(off_locus);
    }

    // Resolvent lower bound outside the annulus: σ_min(U − z) ≥ |c − |z||
    // with c the nearer annulus boundary. Samples on or near the annulus are
    // skipped — the bound says nothing there.
    let n = u.nrows();
    let eye = CMatrix::identity(n, n);
    let margins = par::map_slice(z_samples, |z| {
        let r = z.norm();
        let c = if r > hi + tol_abs {
            hi
        } else if r < lo - tol_abs {
            lo
        } else {
            return None;
        };
        let smin = linalg::smallest_singular_value(&(u - &eye * *z));
        Some((c - r).abs() - smin)
    });
    let used: Vec<f64> = margins.into_iter().flatten().collect();
    let resolvent_violation = used.iter().fold(0.0_f64, |acc, &v| acc.max(v));

    Ok(BoundReport {
        annulus: annulus_violation <= tol_abs,
        locus: locus_violation <= tol_abs,
        resolvent: resolvent_violation <= tol_abs,
        annulus_violation,
        locus_violation,
        resolvent_violation,
        resolvent_samples_used: used.len(),
    })
}

/// Check the three spectral containment statements on the pair's evolution:
/// (i) every eigenvalue lies in the annulus `min(|a|,|b|) ≤ |λ| ≤ max(|a|,|b|)`;
/// (ii) the spectrum lies on ℝ (ab > 0) or on ℝ ∪ the circle of radius
/// √(−ab) (ab < 0); (iii) at each sample `z` strictly outside the annulus,
/// `σ_min(U − zI) ≥ |c − |z||` with `c` the nearer boundary.
pub fn check_bounds(pair: &ChiralPair, z_samples: &[C64], tol_abs: f64) -> Result<BoundReport> {
    check_bounds_matrix(pair, pair.evolution(), z_samples, tol_abs)
}

/// Match / mismatch outcome; serialized as a plain string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Match,
    Mismatch(String),
}

impl Verdict {
    pub fn is_match(&self) -> bool {
        matches!(self, Verdict::Match)
    }
}

impl Serialize for Verdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::Match => s.serialize_str("match"),
            Verdict::Mismatch(detail) => s.serialize_str(&format!("mismatch: {detail}")),
        }
    }
}

/// Serialized form of a predicted atom.
#[derive(Debug, Clone, Serialize)]
pub struct AtomRecord {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
    pub origin: &'static str,
    pub t_source: Option<f64>,
    pub degenerate: bool,
}

/// Serialized form of a direct cluster.
#[derive(Debug, Clone, Serialize)]
pub struct DirectRecord {
    pub re: f64,
    pub im: f64,
    pub mult_geometric: usize,
}

/// Full prediction-vs-oracle report for one pair.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub model: String,
    pub n: usize,
    pub a: f64,
    pub b: f64,
    pub atoms: Vec<AtomRecord>,
    pub direct: Vec<DirectRecord>,
    pub verdict: Verdict,
    pub bounds: BoundReport,
    /// Diagnostic remarks (degenerate-value skips); not serialized.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl SpectrumReport {
    pub fn is_clean(&self) -> bool {
        self.verdict.is_match() && self.bounds.annulus && self.bounds.locus && self.bounds.resolvent
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Predicted-atom table; 17 significant digits so values round-trip.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,mult_geometric,origin,t_source\n");
        for atom in &self.atoms {
            let t = atom.t_source.map(|t| format!("{t:.16e}")).unwrap_or_default();
            out.push_str(&format!(
                "{:.16e},{:.16e},{},{},{}\n",
                atom.re, atom.im, atom.mult, atom.origin, t
            ));
        }
        out
    }
}

/// Compare the predicted spectrum of `pair` against the direct spectrum of an
/// *arbitrary* operator `u`. This is [`verify_mapping`] with the oracle side
/// replaceable — the hook used by negative controls (a perturbed evolution
/// must produce a mismatch, not an error).
pub fn verify_mapping_against(
    pair: &ChiralPair,
    u: &CMatrix,
    model: &str,
    match_tol: f64,
) -> Result<SpectrumReport> {
    let atoms = predicted_spectrum(pair)?;
    let direct = direct_spectrum_of(u, match_tol)?;
    let bounds = check_bounds_matrix(pair, u, &default_z_samples(pair), match_tol)?;

    let radius = direct.iter().map(|c| c.value.norm()).fold(0.0, f64::max);
    let width = match_tol * radius.max(1.0);

    // Group predicted atoms that share a value (distinct origins can coincide
    // only in the a = −b carve-out); geometric counts add across a group.
    struct Group {
        value: C64,
        mult: usize,
        degenerate: bool,
    }
    let values: Vec<C64> = atoms.iter().map(|a| a.value).collect();
    let mut groups: Vec<Group> = cluster_indices(&values, width)
        .into_iter()
        .map(|idxs| {
            let sum: C64 = idxs.iter().map(|&i| values[i]).sum();
            Group {
                value: sum / C64::new(idxs.len() as f64, 0.0),
                mult: idxs.iter().map(|&i| atoms[i].multiplicity).sum(),
                degenerate: idxs.iter().any(|&i| atoms[i].degenerate_root),
            }
        })
        .collect();
    groups.sort_by(|x, y| by_re_im(&x.value, &y.value));

    // Globally greedy pairing: all (group, cluster) edges by ascending
    // distance, taking an edge whenever both ends are free. Equivalent to
    // nearest-value matching when that is collision-free and resolves
    // collisions by global distance order otherwise.
    let mut edges = Vec::with_capacity(groups.len() * direct.len());
    for (gi, g) in groups.iter().enumerate() {
        for (di, d) in direct.iter().enumerate() {
            edges.push((gi, di, (g.value - d.value).norm()));
        }
    }
    edges.sort_by(|x, y| x.2.total_cmp(&y.2).then(x.0.cmp(&y.0)).then(x.1.cmp(&y.1)));
    let mut group_match = vec![usize::MAX; groups.len()];
    let mut direct_match = vec![usize::MAX; direct.len()];
    for (gi, di, _) in &edges {
        if group_match[*gi] == usize::MAX && direct_match[*di] == usize::MAX {
            group_match[*gi] = *di;
            direct_match[*di] = *gi;
        }
    }

    let mut problems = Vec::new();
    let mut notes = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let di = group_match[gi];
        if di == usize::MAX {
            problems.push(format!("predicted value {} has no direct partner", fmt_c(g.value)));
            continue;
        }
        let d = &direct[di];
        let gap = (g.value - d.value).norm();
        if gap > width {
            problems.push(format!(
                "predicted {} vs direct {}: gap {gap:.3e} exceeds tolerance {width:.3e}",
                fmt_c(g.value),
                fmt_c(d.value)
            ));
            continue;
        }
        if g.degenerate {
            notes.push(format!(
                "double root at {}: multiplicity comparison skipped",
                fmt_c(g.value)
            ));
            continue;
        }
        if g.mult != d.geometric {
            problems.push(format!(
                "at {}: predicted geometric multiplicity {} vs direct {}",
                fmt_c(g.value),
                g.mult,
                d.geometric
            ));
        }
        if g.mult != d.algebraic {
            problems.push(format!(
                "at {}: predicted multiplicity {} vs {} eigensolver roots (Jordan structure?)",
                fmt_c(g.value),
                g.mult,
                d.algebraic
            ));
        }
    }
    for (di, d) in direct.iter().enumerate() {
        if direct_match[di] == usize::MAX {
            problems.push(format!("direct value {} was not predicted", fmt_c(d.value)));
        }
    }
    if !groups.iter().any(|g| g.degenerate) {
        let total: usize = atoms.iter().map(|a| a.multiplicity).sum();
        if total != pair.dim_h() {
            problems.push(format!(
                "predicted geometric total {total} differs from dim H = {}",
                pair.dim_h()
            ));
        }
    }

    let verdict = if problems.is_empty() {
        Verdict::Match
    } else {
        Verdict::Mismatch(problems.join("; "))
    };
    let atom_records = atoms
        .iter()
        .map(|a| AtomRecord {
            re: a.value.re,
            im: a.value.im,
            mult: a.multiplicity,
            origin: a.origin.label(),
            t_source: a.origin.t_source(),
            degenerate: a.degenerate_root,
        })
        .collect();
    let direct_records = direct
        .iter()
        .map(|d| DirectRecord { re: d.value.re, im: d.value.im, mult_geometric: d.geometric })
        .collect();
    Ok(SpectrumReport {
        model: model.to_string(),
        n: pair.dim_h(),
        a: pair.a(),
        b: pair.b(),
        atoms: atom_records,
        direct: direct_records,
        verdict,
        bounds,
        notes,
    })
}

/// Predict, verify against the dense oracle, and check all three bounds.
pub fn verify_mapping(pair: &ChiralPair, model: &str, match_tol: f64) -> Result<SpectrumReport> {
    verify_mapping_against(pair, pair.evolution(), model, match_tol)
}

fn fmt_c(z: C64) -> String {
    format!("{:.6}{:+.6}i", z.re, z.im)
}

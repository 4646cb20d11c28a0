//! Chiral pairs and the operators they generate.
//!
//! A pair consists of a self-adjoint unitary involution `S` (the shift) on an
//! n-dimensional space and a coisometry `d` onto an m-dimensional space
//! (`d·d* = I_m`, m ≤ n). Two real coin weights `(a, b)` then generate
//!
//! ```text
//! C = a·d*d + b·(I − d*d),    U = S·C,    T = d·S·d*.
//! ```
//!
//! `U` is the evolution operator — generally neither unitary nor normal — and
//! the self-adjoint discriminant `T` controls its entire point spectrum via
//! the scaled Joukowsky transform in [`crate::spectral`]. This module builds
//! and validates pairs, decides which structural assumptions hold, counts the
//! four kernel multiplicities the spectral mapping consumes, and measures the
//! normality defect `[U, U*] = (a² − b²)·[S, d*d]·S`.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{linalg, tol, C64, CMatrix, Error, Result};

/// Structural assumptions under which the spectral mapping theorem applies.
/// Violations are recorded, never rejected: direct spectra stay computable on
/// a degenerate pair, only the prediction path requires all flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AssumptionFlags {
    /// `d*d ≠ I`: the coin genuinely mixes two subspaces.
    pub proj_proper: bool,
    /// `S ≠ ±I`.
    pub shift_proper: bool,
    /// `a ≠ ±b`: the Joukowsky map is nondegenerate.
    pub a_neq_pm_b: bool,
    /// `ab ≠ 0`.
    pub ab_nonzero: bool,
}

impl AssumptionFlags {
    pub fn all(&self) -> bool {
        self.proj_proper && self.shift_proper && self.a_neq_pm_b && self.ab_nonzero
    }

    /// Name of the first violated assumption, in a fixed report order.
    pub fn first_failure(&self) -> Option<&'static str> {
        if !self.proj_proper {
            Some("proj_proper")
        } else if !self.shift_proper {
            Some("shift_proper")
        } else if !self.a_neq_pm_b {
            Some("a_neq_pm_b")
        } else if !self.ab_nonzero {
            Some("ab_nonzero")
        } else {
            None
        }
    }
}

/// The four kernel dimensions behind the ±a / ±b point masses, plus the space
/// dimensions that tie them together.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplicityData {
    /// `dim ker(T − I)`; multiplicity of the eigenvalue `a`.
    pub m_plus: usize,
    /// `dim ker(T + I)`; multiplicity of the eigenvalue `−a`.
    pub m_minus: usize,
    /// `dim [ker d ∩ ker(S + I)]`; multiplicity of the eigenvalue `−b`.
    pub big_m_plus: usize,
    /// `dim [ker d ∩ ker(S − I)]`; multiplicity of the eigenvalue `b`.
    pub big_m_minus: usize,
    pub dim_h: usize,
    pub dim_k: usize,
}

impl MultiplicityData {
    /// Dimension accounting: `M₊ + M₋ = dim H − 2·dim K + m₊ + m₋`.
    pub fn accounting_holds(&self) -> bool {
        (self.big_m_plus + self.big_m_minus) as i64
            == self.dim_h as i64 - 2 * self.dim_k as i64 + (self.m_plus + self.m_minus) as i64
    }
}

/// Norms of the two sides of the commutator identity
/// `U·U* − U*·U = (a² − b²)·(S·d*d − d*d·S)·S`, plus the norm of their
/// difference. `residual` is a pure floating-point check (the identity is an
/// algebraic fact); `lhs_norm` measures how non-normal the evolution is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalityDefect {
    pub lhs_norm: f64,
    pub rhs_norm: f64,
    pub residual: f64,
}

/// A validated chiral pair together with its derived operators.
/// Immutable after construction; every method is pure.
#[derive(Debug, Clone)]
pub struct ChiralPair {
    shift: CMatrix,
    d: CMatrix,
    a: f64,
    b: f64,
    projection: CMatrix,
    coin: CMatrix,
    evolution: CMatrix,
    discriminant: CMatrix,
}

fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl ChiralPair {
    /// Validate `(S, d, a, b)` and derive `C`, `U`, `T`.
    ///
    /// Hard errors: dimension mismatch, `d·d* ≠ I`, `S` not a self-adjoint
    /// involution, non-finite input, or `‖T‖ > 1` beyond roundoff. Assumption
    /// violations (improper projection, `S = ±I`, `a = ±b`, `ab = 0`) are
    /// *not* errors; query [`ChiralPair::assumption_flags`].
    pub fn new(shift: CMatrix, d: CMatrix, a: f64, b: f64) -> Result<Self> {
        let n = shift.nrows();
        let m = d.nrows();
        if shift.ncols() != n || d.ncols() != n || m == 0 || m > n {
            return Err(Error::PairDimensions {
                s_rows: shift.nrows(),
                s_cols: shift.ncols(),
                d_rows: d.nrows(),
                d_cols: d.ncols(),
            });
        }
        if !a.is_finite()
            || !b.is_finite()
            || shift.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())
            || d.iter().any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite);
        }

        let coiso_defect = max_abs(&(&d * d.adjoint() - CMatrix::identity(m, m)));
        if coiso_defect > tol::STRUCTURE {
            return Err(Error::NotCoisometry { defect: coiso_defect });
        }
        let involution_defect = max_abs(&(&shift - shift.adjoint()))
            .max(max_abs(&(&shift * &shift - CMatrix::identity(n, n))));
        if involution_defect > tol::STRUCTURE {
            return Err(Error::NotInvolution { defect: involution_defect });
        }

        let projection = d.adjoint() * &d;
        let coin = &projection * C64::new(a, 0.0)
            + (CMatrix::identity(n, n) - &projection) * C64::new(b, 0.0);
        let evolution = &shift * &coin;
        let discriminant = &d * &shift * d.adjoint();

        // Both follow algebraically from the validated structure; failing
        // here would mean the roundoff model is broken, not the input.
        let herm_defect = max_abs(&(&discriminant - discriminant.adjoint()));
        if herm_defect > tol::STRUCTURE {
            return Err(Error::NotHermitian { defect: herm_defect });
        }
        let t_norm = linalg::operator_norm(&discriminant);
        if t_norm > 1.0 + tol::DISCRIMINANT_NORM {
            return Err(Error::DiscriminantNorm { norm: t_norm });
        }

        Ok(ChiralPair { shift, d, a, b, projection, coin, evolution, discriminant })
    }

    pub fn dim_h(&self) -> usize {
        self.shift.nrows()
    }

    pub fn dim_k(&self) -> usize {
        self.d.nrows()
    }

    pub fn shift(&self) -> &CMatrix {
        &self.shift
    }

    pub fn coisometry(&self) -> &CMatrix {
        &self.d
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// The orthogonal projection `d*d` onto the internal subspace.
    pub fn projection(&self) -> &CMatrix {
        &self.projection
    }

    /// The coin `C = a·d*d + b·(I − d*d)`.
    pub fn coin(&self) -> &CMatrix {
        &self.coin
    }

    /// The evolution `U = S·C`.
    pub fn evolution(&self) -> &CMatrix {
        &self.evolution
    }

    /// The discriminant `T = d·S·d*`; Hermitian with `‖T‖ ≤ 1`.
    pub fn discriminant(&self) -> &CMatrix {
        &self.discriminant
    }

    pub fn assumption_flags(&self) -> AssumptionFlags {
        let n = self.dim_h();
        let eye = CMatrix::identity(n, n);
        let scale = 1.0_f64.max(self.a.abs()).max(self.b.abs());
        AssumptionFlags {
            proj_proper: linalg::operator_norm(&(&eye - &self.projection)) > tol::FLAG,
            shift_proper: linalg::operator_norm(&(&self.shift - &eye)) > tol::FLAG
                && linalg::operator_norm(&(&self.shift + &eye)) > tol::FLAG,
            a_neq_pm_b: (self.a - self.b).abs() > tol::STRUCTURE * scale
                && (self.a + self.b).abs() > tol::STRUCTURE * scale,
            ab_nonzero: self.a.abs() > tol::STRUCTURE && self.b.abs() > tol::STRUCTURE,
        }
    }

    /// Kernel multiplicities: `m± = dim ker(T ∓ I)` from the discriminant,
    /// `M± = dim [ker d ∩ ker(S ± I)]` from the kernel of the stacked matrix
    /// `[d ; S ± I]` (one SVD, no projector-intersection algebra).
    pub fn multiplicity_data(&self) -> MultiplicityData {
        let n = self.dim_h();
        let m = self.dim_k();
        let eye_k = CMatrix::identity(m, m);
        let eye_h = CMatrix::identity(n, n);
        let stacked = |sign: f64| {
            let mut st = CMatrix::zeros(m + n, n);
            st.view_mut((0, 0), (m, n)).copy_from(&self.d);
            st.view_mut((m, 0), (n, n)).copy_from(&(&self.shift + &eye_h * C64::new(sign, 0.0)));
            st
        };
        MultiplicityData {
            m_plus: linalg::kernel_dimension(&(&self.discriminant - &eye_k), tol::RANK),
            m_minus: linalg::kernel_dimension(&(&self.discriminant + &eye_k), tol::RANK),
            big_m_plus: linalg::kernel_dimension(&stacked(1.0), tol::RANK),
            big_m_minus: linalg::kernel_dimension(&stacked(-1.0), tol::RANK),
            dim_h: n,
            dim_k: m,
        }
    }

    /// Evaluate both sides of `[U, U*] = (a² − b²)·[S, d*d]·S`.
    pub fn normality_defect(&self) -> NormalityDefect {
        let u = &self.evolution;
        let lhs = u * u.adjoint() - u.adjoint() * u;
        let factor = C64::new(self.a * self.a - self.b * self.b, 0.0);
        let rhs = (&self.shift * &self.projection - &self.projection * &self.shift)
            * &self.shift
            * factor;
        NormalityDefect {
            lhs_norm: linalg::operator_norm(&lhs),
            rhs_norm: linalg::operator_norm(&rhs),
            residual: linalg::operator_norm(&(lhs - rhs)),
        }
    }

    /// `‖S·U·S − U*‖`: zero in exact arithmetic for every pair.
    pub fn chiral_symmetry_defect(&self) -> f64 {
        let u = &self.evolution;
        linalg::operator_norm(&(&self.shift * u * &self.shift - u.adjoint()))
    }

    /// Measured `‖U‖` next to its closed form: `max(|a|, |b|)` when the
    /// projection is proper, `|a|` when `d*d = I` (the `b`-subspace is empty).
    pub fn operator_norm_identity(&self) -> (f64, f64) {
        let measured = linalg::operator_norm(&self.evolution);
        let expected =
            if self.dim_k() < self.dim_h() { self.a.abs().max(self.b.abs()) } else { self.a.abs() };
        (measured, expected)
    }
}

fn gaussian(rng: &mut impl Rng) -> f64 {
    // Box–Muller; 1 − u ∈ (0, 1] keeps the log finite.
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn random_unitary(n: usize, rng: &mut impl Rng) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| C64::new(gaussian(rng), gaussian(rng)));
    g.qr().q()
}

/// Sample a valid pair with all assumption flags true: `S` is a random
/// unitary conjugation of a mixed ±1 diagonal, `d` is a random orthonormal
/// row set, and `(a, b)` are uniform on [−3, 3] bounded away from the
/// degenerate lines `a = ±b`, `ab = 0`. Deterministic per seed. Requires
/// `n ≥ 2`.
pub fn random_pair(n: usize, seed: u64) -> Result<ChiralPair> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            detail: format!("random pair needs n >= 2, got {n}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.random_range(1..n);

    let v = random_unitary(n, &mut rng);
    let signs = DVector::from_fn(n, |i, _| {
        // Force both signs so S ≠ ±I.
        let s = if i == 0 {
            1.0
        } else if i == 1 {
            -1.0
        } else if rng.random::<bool>() {
            1.0
        } else {
            -1.0
        };
        C64::new(s, 0.0)
    });
    let shift = &v * DMatrix::from_diagonal(&signs) * v.adjoint();
    // Exactly Hermitian; the involution defect is then pure roundoff.
    let shift = (&shift + shift.adjoint()) * C64::new(0.5, 0.0);

    let w = random_unitary(n, &mut rng);
    let d = w.rows(0, m).into_owned();

    let (a, b) = loop {
        let a: f64 = rng.random_range(-3.0..3.0);
        let b: f64 = rng.random_range(-3.0..3.0);
        if a.abs() >= 0.2 && b.abs() >= 0.2 && (a - b).abs() >= 0.2 && (a + b).abs() >= 0.2 {
            break (a, b);
        }
    };

    ChiralPair::new(shift, d, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph;
    use crate::linalg::{eig_hermitian, multiset_distance, to_complex};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn minimal_pair() -> ChiralPair {
        let shift = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let d = CMatrix::from_row_slice(1, 2, &[c(1., 0.), c(0., 0.)]);
        ChiralPair::new(shift, d, 2.0, 1.0).unwrap()
    }

    /// Grover pair on a k-regular graph: S = arc reversal, d = K_in/√k,
    /// a = k − 1, b = −1.
    fn grover_pair(g: &graph::Graph) -> ChiralPair {
        let k = graph::graph_invariants(g).degree.unwrap() as f64;
        let (k_in, _) = graph::incidence_matrices(g);
        let d = to_complex(&k_in) / c(k.sqrt(), 0.0);
        let shift = to_complex(&graph::reversal_permutation(g));
        ChiralPair::new(shift, d, k - 1.0, -1.0).unwrap()
    }

    #[test]
    fn minimal_pair_operators() {
        let p = minimal_pair();
        assert!(p.assumption_flags().all());
        assert_eq!(p.discriminant().nrows(), 1);
        assert!(p.discriminant()[(0, 0)].norm() < 1e-15, "T = [0]");
        let u = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(2., 0.), c(0., 0.)]);
        assert!(max_abs(&(p.evolution() - u)) < 1e-15, "U = [[0,1],[2,0]]");
        let counts = p.multiplicity_data();
        assert_eq!(
            (counts.m_plus, counts.m_minus, counts.big_m_plus, counts.big_m_minus),
            (0, 0, 0, 0)
        );
        assert!(counts.accounting_holds());
        let (measured, expected) = p.operator_norm_identity();
        assert!((measured - 2.0).abs() < 1e-12 && expected == 2.0);
    }

    #[test]
    fn full_projection_clears_flag_without_error() {
        let p = ChiralPair::new(CMatrix::identity(2, 2), CMatrix::identity(2, 2), 2.0, 1.0)
            .unwrap();
        let flags = p.assumption_flags();
        assert!(!flags.proj_proper);
        assert!(!flags.shift_proper, "S = I is also improper");
        assert_eq!(flags.first_failure(), Some("proj_proper"));
        let (measured, expected) = p.operator_norm_identity();
        assert!((measured - 2.0).abs() < 1e-12 && expected == 2.0, "b-subspace is empty");
    }

    #[test]
    fn rejects_structural_violations() {
        let not_involution =
            CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(2., 0.)]);
        let d_row = CMatrix::from_row_slice(1, 2, &[c(1., 0.), c(0., 0.)]);
        assert!(matches!(
            ChiralPair::new(not_involution, d_row.clone(), 1.0, 2.0),
            Err(Error::NotInvolution { .. })
        ));

        let swap = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        let not_coiso = CMatrix::from_row_slice(1, 2, &[c(1., 0.), c(1., 0.)]);
        assert!(matches!(
            ChiralPair::new(swap.clone(), not_coiso, 1.0, 2.0),
            Err(Error::NotCoisometry { .. })
        ));

        let d_wide = CMatrix::from_row_slice(1, 3, &[c(1., 0.), c(0., 0.), c(0., 0.)]);
        assert!(matches!(
            ChiralPair::new(swap, d_wide, 1.0, 2.0),
            Err(Error::PairDimensions { .. })
        ));
    }

    #[test]
    fn grover_k4_discriminant_is_scaled_adjacency() {
        let g = graph::builtin("k4").unwrap();
        let p = grover_pair(&g);
        let expect = to_complex(&graph::adjacency(&g)) / c(3.0, 0.0);
        assert!(max_abs(&(p.discriminant() - expect)) < 1e-14, "T = M/3");
        let eig = eig_hermitian(p.discriminant()).unwrap().eigenvalues;
        let third = 1.0 / 3.0;
        let expect_eig =
            vec![c(-third, 0.0), c(-third, 0.0), c(-third, 0.0), c(1.0, 0.0)];
        assert!(multiset_distance(&eig, &expect_eig) < 1e-12);
    }

    #[test]
    fn grover_multiplicities_frozen() {
        let k4 = grover_pair(&graph::builtin("k4").unwrap()).multiplicity_data();
        assert_eq!((k4.m_plus, k4.m_minus, k4.big_m_plus, k4.big_m_minus), (1, 0, 3, 2));
        assert!(k4.accounting_holds());

        let k33 = grover_pair(&graph::builtin("k33").unwrap()).multiplicity_data();
        assert_eq!((k33.m_plus, k33.m_minus, k33.big_m_plus, k33.big_m_minus), (1, 1, 4, 4));
        assert!(k33.accounting_holds());

        // Cross-check against M± = |E| − |V| + m± for regular connected graphs.
        for name in ["k5", "petersen", "c5"] {
            let g = graph::builtin(name).unwrap();
            let counts = grover_pair(&g).multiplicity_data();
            let excess = g.edge_count() as i64 - g.vertex_count() as i64;
            assert_eq!(counts.big_m_plus as i64, excess + counts.m_plus as i64, "{name}");
            assert_eq!(counts.big_m_minus as i64, excess + counts.m_minus as i64, "{name}");
        }
    }

    #[test]
    fn grover_k4_is_visibly_non_normal() {
        let p = grover_pair(&graph::builtin("k4").unwrap());
        let defect = p.normality_defect();
        assert!(defect.lhs_norm > 0.1);
        assert!(defect.residual < 1e-12 * (1.0 + defect.lhs_norm));
    }

    #[test]
    fn equal_magnitude_weights_make_normal_evolution() {
        let base = random_pair(7, 99).unwrap();
        let p = ChiralPair::new(base.shift().clone(), base.coisometry().clone(), 1.0, -1.0)
            .unwrap();
        assert!(p.normality_defect().lhs_norm < 1e-12, "a = −b kills the commutator");
        assert!(!p.assumption_flags().a_neq_pm_b);
        assert_eq!(p.assumption_flags().first_failure(), Some("a_neq_pm_b"));
    }

    #[test]
    fn commutator_identity_on_random_pairs() {
        for seed in 0..100 {
            let n = 3 + (seed as usize % 10);
            let p = random_pair(n, seed).unwrap();
            assert!(p.assumption_flags().all(), "generator must hit all flags (seed {seed})");
            let defect = p.normality_defect();
            let (norm_u, _) = p.operator_norm_identity();
            assert!(
                defect.residual <= 1e-12 * (1.0 + norm_u * norm_u),
                "seed {seed}: residual {}",
                defect.residual
            );
        }
    }

    #[test]
    fn chiral_symmetry_and_norm_identity_on_random_pairs() {
        for seed in 0..40 {
            let p = random_pair(4 + (seed as usize % 8), 1000 + seed).unwrap();
            let (norm_u, expected) = p.operator_norm_identity();
            assert!(p.chiral_symmetry_defect() <= 1e-12 * norm_u.max(1.0), "seed {seed}");
            assert!((norm_u - expected).abs() <= 1e-10 * expected, "seed {seed}");
            assert!(p.multiplicity_data().accounting_holds(), "seed {seed}");
        }
    }
}

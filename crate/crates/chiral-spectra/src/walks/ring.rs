//! Two explicit chiral pairs on an N-site ring (component-major layout:
//! index `c·N + x` is component `c` at site `x`).

use super::{block2, cyclic_shift};
use crate::chiral::ChiralPair;
use crate::{C64, CMatrix, Error, Result};

/// Homogeneous ring pair: every site carries the same unit spinor `φ`, and
/// the shift mixes the two components through the cyclic shift `L`,
///
/// ```text
/// S = [[ p·I,  q·L ],
///      [ q̄·L†, −p·I ]],      p² + |q|² = 1.
/// ```
///
/// The weights `a, b` are free. The evolution is normal exactly when `q = 0`
/// and one spinor component vanishes, which makes this family a sharp probe
/// of the commutator identity.
pub fn example_homogeneous(
    phi: (C64, C64),
    p: f64,
    q: C64,
    n_sites: usize,
    a: f64,
    b: f64,
) -> Result<ChiralPair> {
    if n_sites < 3 {
        return Err(Error::InvalidParameter {
            name: "n_sites",
            detail: format!("ring needs at least 3 sites, got {n_sites}"),
        });
    }
    if (p * p + q.norm_sqr() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter {
            name: "p",
            detail: format!("shift needs p² + |q|² = 1, got p = {p}, q = {q}"),
        });
    }
    if (phi.0.norm_sqr() + phi.1.norm_sqr() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidParameter {
            name: "phi",
            detail: format!("spinor must be unit length, got ({}, {})", phi.0, phi.1),
        });
    }
    let n = n_sites;
    let eye = CMatrix::identity(n, n);
    let l = cyclic_shift(n);
    let shift = block2(
        &(&eye * C64::new(p, 0.0)),
        &(&l * q),
        &(l.adjoint() * q.conj()),
        &(&eye * C64::new(-p, 0.0)),
    );
    let mut d = CMatrix::zeros(n, 2 * n);
    for x in 0..n {
        d[(x, x)] = phi.0.conj();
        d[(x, n + x)] = phi.1.conj();
    }
    ChiralPair::new(shift, d, a, b)
}

/// Inhomogeneous ring pair with a two-site coin pattern. The shift is the
/// off-diagonal `[[0, L], [L†, 0]]`; odd sites carry the coin
/// `[[α, β], [β̄, −α]]` and even sites `diag(s, −s)` with `s = √(α² + |β|²)`.
/// Both coins have eigenvalues `±s`, so the weights are forced to
/// `a = s, b = −s` — the degenerate-mapping carve-out with `a = −b`.
///
/// The evolution is always normal (`a² = b²` kills the commutator) even
/// though `[S, d*d] ≠ 0` whenever the two coins genuinely differ.
pub fn example_inhomogeneous(alpha: f64, beta: C64, n_sites: usize) -> Result<ChiralPair> {
    if n_sites < 4 || n_sites % 2 != 0 {
        return Err(Error::InvalidParameter {
            name: "n_sites",
            detail: format!("two-site coin pattern needs an even ring of >= 4 sites, got {n_sites}"),
        });
    }
    let s = (alpha * alpha + beta.norm_sqr()).sqrt();
    if s == 0.0 || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "alpha",
            detail: format!("(α, β) = ({alpha}, {beta}) gives coin strength s = {s}"),
        });
    }
    let n = n_sites;
    let l = cyclic_shift(n);
    let zero = CMatrix::zeros(n, n);
    let shift = block2(&zero, &l, &l.adjoint(), &zero);

    // +s eigenvector of [[α, β], [β̄, −α]]; the closed form degenerates
    // exactly when β = 0 with α = s, where (1, 0) is the eigenvector.
    let norm_sq = 2.0 * s * (s - alpha);
    let chi_odd = if norm_sq < 1e-30 {
        (C64::new(1.0, 0.0), C64::new(0.0, 0.0))
    } else {
        let scale = C64::new(norm_sq.sqrt(), 0.0);
        (beta / scale, C64::new(s - alpha, 0.0) / scale)
    };
    let chi_even = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));

    let mut d = CMatrix::zeros(n, 2 * n);
    for x in 0..n {
        let chi = if x % 2 == 1 { chi_odd } else { chi_even };
        d[(x, x)] = chi.0.conj();
        d[(x, n + x)] = chi.1.conj();
    }
    ChiralPair::new(shift, d, s, -s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::operator_norm;
    use crate::spectral::{predicted_spectrum, verify_mapping};

    const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn homogeneous_shift_is_a_proper_involution() {
        let pair = example_homogeneous(
            (re(FRAC_1_SQRT_2), re(FRAC_1_SQRT_2)),
            0.6,
            C64::new(0.0, 0.8),
            5,
            2.0,
            1.0,
        )
        .unwrap();
        assert!(pair.assumption_flags().all());
    }

    #[test]
    fn homogeneous_rejects_bad_parameters() {
        let unit = (re(1.0), re(0.0));
        assert!(matches!(
            example_homogeneous(unit, 0.9, re(0.9), 5, 2.0, 1.0),
            Err(Error::InvalidParameter { name: "p", .. })
        ));
        assert!(matches!(
            example_homogeneous((re(0.9), re(0.9)), 1.0, re(0.0), 5, 2.0, 1.0),
            Err(Error::InvalidParameter { name: "phi", .. })
        ));
        assert!(matches!(
            example_homogeneous(unit, 1.0, re(0.0), 2, 2.0, 1.0),
            Err(Error::InvalidParameter { name: "n_sites", .. })
        ));
    }

    #[test]
    fn homogeneous_normality_classification() {
        // Normal exactly when q = 0 and one spinor component vanishes.
        let spinors = [
            (re(1.0), re(0.0)),
            (re(0.0), re(1.0)),
            (re(FRAC_1_SQRT_2), re(FRAC_1_SQRT_2)),
        ];
        let shifts = [
            (1.0, re(0.0)),
            (0.0, re(1.0)),
            (FRAC_1_SQRT_2, re(FRAC_1_SQRT_2)),
        ];
        for &phi in &spinors {
            for &(p, q) in &shifts {
                let pair = example_homogeneous(phi, p, q, 5, 2.0, 1.0).unwrap();
                let defect = pair.normality_defect();
                let expect_normal = q.norm() == 0.0 && (phi.0 * phi.1.conj()).norm() == 0.0;
                if expect_normal {
                    assert!(
                        defect.lhs_norm < 1e-12,
                        "φ = {phi:?}, (p, q) = ({p}, {q}): defect {}",
                        defect.lhs_norm
                    );
                } else {
                    assert!(
                        defect.lhs_norm > 1e-3,
                        "φ = {phi:?}, (p, q) = ({p}, {q}): defect {}",
                        defect.lhs_norm
                    );
                }
            }
        }
    }

    #[test]
    fn inhomogeneous_rejects_bad_parameters() {
        assert!(matches!(
            example_inhomogeneous(1.0, re(0.0), 5),
            Err(Error::InvalidParameter { name: "n_sites", .. })
        ));
        assert!(matches!(
            example_inhomogeneous(0.0, re(0.0), 4),
            Err(Error::InvalidParameter { name: "alpha", .. })
        ));
    }

    #[test]
    fn inhomogeneous_unit_coin_has_zero_discriminant() {
        // α = 1, β = 0 on 4 sites: d projects onto the first component, and
        // the off-diagonal shift pushes it entirely into the second, so
        // T = 0 and every eigenvalue solves λ² = ab = −1.
        let pair = example_inhomogeneous(1.0, re(0.0), 4).unwrap();
        assert!(operator_norm(pair.discriminant()) < 1e-14);
        let atoms = predicted_spectrum(&pair).unwrap();
        let total: usize = atoms.iter().map(|atom| atom.multiplicity).sum();
        assert_eq!(total, 8);
        for atom in &atoms {
            assert!((atom.value.re).abs() < 1e-12);
            assert!((atom.value.im.abs() - 1.0).abs() < 1e-12, "atoms sit at ±i");
        }
        let report = verify_mapping(&pair, "inhom-example", 1e-8).unwrap();
        assert!(report.verdict.is_match(), "verdict: {:?}", report.verdict);
    }

    #[test]
    fn inhomogeneous_mapping_matches_across_parameter_choices() {
        for (alpha, beta, n) in [
            (1.0, re(0.0), 4),
            (0.6, re(0.8), 6),
            (0.3, C64::new(0.4, 0.2), 8),
        ] {
            let pair = example_inhomogeneous(alpha, beta, n).unwrap();
            assert!((pair.a() + pair.b()).abs() < 1e-14, "a = −b always");
            let report = verify_mapping(&pair, "inhom-example", 1e-8).unwrap();
            assert!(
                report.verdict.is_match(),
                "(α, β, N) = ({alpha}, {beta}, {n}): {:?}",
                report.verdict
            );
        }
    }

    #[test]
    fn inhomogeneous_is_normal_yet_structurally_twisted() {
        let pair = example_inhomogeneous(0.6, re(0.8), 6).unwrap();
        let p = pair.projection();
        let twist = pair.shift() * p - p * pair.shift();
        assert!(operator_norm(&twist) > 0.1, "[S, d*d] must not vanish");
        assert!(pair.normality_defect().lhs_norm < 1e-12, "a² = b² forces normality");
    }
}

//! Positive support of the Grover walk: the non-backtracking arc operator.

use super::require_regular_connected;
use crate::chiral::ChiralPair;
use crate::linalg::to_complex;
use crate::{graph, C64, Error, Result};

/// Build the pair whose evolution is the positive support of the Grover walk
/// on a connected k-regular graph: `S = J` (arc reversal), `d = K_in/√k`,
/// `a = k − 1`, `b = −1`.
///
/// The evolution then equals the 0/1 non-backtracking matrix: `U[e, e′] = 1`
/// iff `e′` feeds into `e` (`t(e′) = o(e)`) and `e′ ≠ ē`. Requires `k ≥ 3`:
/// at `k = 2` the weights collapse to `a = −b = 1`.
pub fn grover_positive_support(g: &graph::Graph) -> Result<ChiralPair> {
    let k = require_regular_connected(g)?;
    if k < 3 {
        return Err(Error::DegreeOutOfRange {
            k,
            reason: "positive-support weights are a = k−1, b = −1; k < 3 collapses a = ±b",
        });
    }
    let (k_in, _) = graph::incidence_matrices(g);
    let d = to_complex(&k_in) / C64::new((k as f64).sqrt(), 0.0);
    let shift = to_complex(&graph::reversal_permutation(g));
    ChiralPair::new(shift, d, k as f64 - 1.0, -1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::eig_hermitian;
    use crate::zeta::non_backtracking_matrix;

    #[test]
    fn evolution_is_the_non_backtracking_matrix() {
        for name in ["k4", "k33", "petersen"] {
            let g = graph::builtin(name).unwrap();
            let pair = grover_positive_support(&g).unwrap();
            assert_eq!(pair.a(), graph::graph_invariants(&g).degree.unwrap() as f64 - 1.0);
            assert_eq!(pair.b(), -1.0);
            assert_eq!(pair.dim_h(), g.arc_count());
            let nb = non_backtracking_matrix(&g);
            let defect = (pair.evolution() - &nb)
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(defect < 1e-14, "{name}: U differs from B′ − J by {defect}");
        }
    }

    #[test]
    fn discriminant_is_scaled_adjacency() {
        let g = graph::petersen();
        let pair = grover_positive_support(&g).unwrap();
        let expect = to_complex(&graph::adjacency(&g)) / C64::new(3.0, 0.0);
        let defect =
            (pair.discriminant() - expect).iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!(defect < 1e-14);
    }

    #[test]
    fn inherited_atoms_follow_the_adjacency_quadratic() {
        // Each adjacency eigenvalue μ ∉ {±k} lifts to μ/2 ± √(μ² − 4(k−1))/2.
        for name in ["k4", "k33", "petersen"] {
            let g = graph::builtin(name).unwrap();
            let k = graph::graph_invariants(&g).degree.unwrap() as f64;
            let pair = grover_positive_support(&g).unwrap();
            let atoms = crate::spectral::predicted_spectrum(&pair).unwrap();
            let mu_vals = eig_hermitian(&to_complex(&graph::adjacency(&g))).unwrap().eigenvalues;
            for atom in atoms.iter().filter(|a| a.origin.label() == "inherited") {
                let lam = atom.value;
                // λ² − μλ + (k−1) = 0 for some adjacency eigenvalue μ.
                let best = mu_vals
                    .iter()
                    .map(|mu| (lam * lam - mu * lam + C64::new(k - 1.0, 0.0)).norm())
                    .fold(f64::INFINITY, f64::min);
                assert!(best < 1e-9, "{name}: inherited atom {lam} off the quadratic by {best}");
            }
        }
    }

    #[test]
    fn rejects_unsuitable_graphs() {
        assert!(matches!(
            grover_positive_support(&graph::builtin("c4").unwrap()),
            Err(Error::DegreeOutOfRange { k: 2, .. })
        ));
        let path = graph::Graph::new(3, vec![(0, 1), (1, 2)]).unwrap();
        assert!(matches!(grover_positive_support(&path), Err(Error::NotRegular { .. })));
        let two_triangles =
            graph::Graph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(matches!(grover_positive_support(&two_triangles), Err(Error::Disconnected)));
    }
}

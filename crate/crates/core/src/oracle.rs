//! Brute-force reference computations.
//!
//! Everything here works directly on the 2×2 Bloch matrices: eigenpairs come
//! from the characteristic polynomial and null-space vectors, time evolution
//! from the spectral decomposition. Nothing is routed through the Bogoliubov
//! angle, so these values can check the closed forms in [`crate::quench`] and
//! [`crate::qsl`] independently.

use num_complex::Complex64;

/// Real symmetric Bloch block `H(k) = −[[ε_q, ε_qp], [ε_qp, ε_p]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoByTwoBlock {
    pub h: [[f64; 2]; 2],
}

impl TwoByTwoBlock {
    /// Builds the block from the hopping amplitudes, phase and wave number.
    pub fn creutz(hopping: f64, vertical: f64, theta: f64, k: f64) -> Self {
        let eps_q = 2.0 * hopping * (k - theta).cos();
        let eps_p = 2.0 * hopping * (k + theta).cos();
        let eps_qp = 2.0 * hopping * k.cos() + vertical;
        Self {
            h: [[-eps_q, -eps_qp], [-eps_qp, -eps_p]],
        }
    }

    pub fn trace(&self) -> f64 {
        self.h[0][0] + self.h[1][1]
    }

    pub fn apply(&self, v: &[f64; 2]) -> [f64; 2] {
        [
            self.h[0][0] * v[0] + self.h[0][1] * v[1],
            self.h[1][0] * v[0] + self.h[1][1] * v[1],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigensystem {
    /// Ascending eigenvalues.
    pub values: [f64; 2],
    /// `vectors[i]` belongs to `values[i]`.
    pub vectors: [[f64; 2]; 2],
}

fn normalized(v: [f64; 2]) -> [f64; 2] {
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

pub fn numeric_eigensystem(block: &TwoByTwoBlock) -> Eigensystem {
    let [[a, b], [_, d]] = block.h;
    let mean = 0.5 * (a + d);
    let radius = (0.5 * (a - d)).hypot(b);
    let values = [mean - radius, mean + radius];
    if radius == 0.0 {
        return Eigensystem {
            values,
            vectors: [[1.0, 0.0], [0.0, 1.0]],
        };
    }
    // Null vector of (H − λ): pick the better-conditioned of the two rows.
    let null_vector = |lambda: f64| {
        let r1 = [b, lambda - a];
        let r2 = [lambda - d, b];
        if r1[0].hypot(r1[1]) >= r2[0].hypot(r2[1]) {
            normalized(r1)
        } else {
            normalized(r2)
        }
    };
    let lower = null_vector(values[0]);
    // Orthogonal complement, oriented as a proper rotation.
    let upper = [-lower[1], lower[0]];
    Eigensystem {
        values,
        vectors: [lower, upper],
    }
}

/// `e^{−iHt}ψ` through the spectral decomposition of `H`.
pub fn evolve(block: &TwoByTwoBlock, psi: &[f64; 2], t: f64) -> [Complex64; 2] {
    let eig = numeric_eigensystem(block);
    let mut out = [Complex64::new(0.0, 0.0); 2];
    for (value, vec) in eig.values.iter().zip(eig.vectors.iter()) {
        let c = vec[0] * psi[0] + vec[1] * psi[1];
        let phase = Complex64::from_polar(1.0, -value * t);
        out[0] += phase * c * vec[0];
        out[1] += phase * c * vec[1];
    }
    out
}

/// Lower eigenvector of the pre-quench block.
pub fn initial_state(hopping: f64, vertical: f64, theta1: f64, k: f64) -> [f64; 2] {
    numeric_eigensystem(&TwoByTwoBlock::creutz(hopping, vertical, theta1, k)).vectors[0]
}

/// Single-mode echo `|⟨ψ|e^{−iH_f t}|ψ⟩|²` with `ψ` the lower eigenvector of
/// `H_i(k)`.
pub fn numeric_mode_le(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    theta2: f64,
    k: f64,
    t: f64,
) -> f64 {
    let psi = initial_state(hopping, vertical, theta1, k);
    let post = TwoByTwoBlock::creutz(hopping, vertical, theta2, k);
    let evolved = evolve(&post, &psi, t);
    let amp = evolved[0] * psi[0] + evolved[1] * psi[1];
    amp.norm_sqr()
}

/// Norm of the evolved single-mode state (unitarity check).
pub fn evolved_norm(hopping: f64, vertical: f64, theta1: f64, theta2: f64, k: f64, t: f64) -> f64 {
    let psi = initial_state(hopping, vertical, theta1, k);
    let post = TwoByTwoBlock::creutz(hopping, vertical, theta2, k);
    let e = evolve(&post, &psi, t);
    (e[0].norm_sqr() + e[1].norm_sqr()).sqrt()
}

/// `⟨H_f(k)²⟩ − ⟨H_f(k)⟩²` in the pre-quench lower eigenvector.
pub fn numeric_mode_variance(hopping: f64, vertical: f64, theta1: f64, theta2: f64, k: f64) -> f64 {
    let psi = initial_state(hopping, vertical, theta1, k);
    let post = TwoByTwoBlock::creutz(hopping, vertical, theta2, k);
    let h_psi = post.apply(&psi);
    let mean = psi[0] * h_psi[0] + psi[1] * h_psi[1];
    let mean_sq = h_psi[0] * h_psi[0] + h_psi[1] * h_psi[1];
    (mean_sq - mean * mean).max(0.0)
}

/// Post-quench energy spread `ΔE` of the filled lower band, summed over the
/// full grid of `l` momenta.
pub fn numeric_energy_variance(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    theta2: f64,
    l: usize,
) -> f64 {
    (0..l)
        .map(|j| {
            let k = 2.0 * std::f64::consts::PI * j as f64 / l as f64;
            numeric_mode_variance(hopping, vertical, theta1, theta2, k)
        })
        .sum::<f64>()
        .sqrt()
}

type CMatrix = Vec<Vec<Complex64>>;

fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

fn outer(v: &[Complex64]) -> CMatrix {
    v.iter()
        .map(|a| v.iter().map(|b| a * b.conj()).collect())
        .collect()
}

fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a[i][j] * b[j][i];
        }
    }
    acc
}

/// Relative-purity echo `tr(ρ₀ρ_t)/tr(ρ₀²)` from explicit `2^L × 2^L`
/// density matrices, with `ρ_t` the equal-weight mixture over the given
/// post-quench phases. Each momentum sector holds one fermion, so the
/// many-body space is the tensor product of the `L` two-level sectors.
///
/// Practical only for small `l` (the matrices have `4^l` entries).
pub fn numeric_mixed_le(
    hopping: f64,
    vertical: f64,
    theta1: f64,
    theta2_samples: &[f64],
    l: usize,
    t: f64,
) -> f64 {
    assert!(l <= 8, "dense density matrices only for small chains");
    let ks: Vec<f64> = (0..l)
        .map(|j| 2.0 * std::f64::consts::PI * j as f64 / l as f64)
        .collect();
    let to_c = |v: [f64; 2]| [Complex64::new(v[0], 0.0), Complex64::new(v[1], 0.0)];

    let mut psi0 = vec![Complex64::new(1.0, 0.0)];
    for &k in &ks {
        psi0 = kron_vec(&psi0, &to_c(initial_state(hopping, vertical, theta1, k)));
    }
    let rho0 = outer(&psi0);

    let dim = psi0.len();
    let mut rho_t = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for &theta2 in theta2_samples {
        let mut psi_t = vec![Complex64::new(1.0, 0.0)];
        for &k in &ks {
            let psi = initial_state(hopping, vertical, theta1, k);
            let post = TwoByTwoBlock::creutz(hopping, vertical, theta2, k);
            psi_t = kron_vec(&psi_t, &evolve(&post, &psi, t));
        }
        let term = outer(&psi_t);
        for (row, trow) in rho_t.iter_mut().zip(term.iter()) {
            for (x, y) in row.iter_mut().zip(trow.iter()) {
                *x += y;
            }
        }
    }
    let z: Complex64 = (0..dim).map(|i| rho_t[i][i]).sum();
    for row in rho_t.iter_mut() {
        for x in row.iter_mut() {
            *x /= z;
        }
    }
    (trace_product(&rho0, &rho_t) / trace_product(&rho0, &rho0)).re
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    #[test]
    fn diagonal_block() {
        let e = numeric_eigensystem(&TwoByTwoBlock {
            h: [[-1.0, 0.0], [0.0, 2.0]],
        });
        assert_eq!(e.values, [-1.0, 2.0]);
        assert_abs_diff_eq!(e.vectors[0][0].abs(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.vectors[1][1].abs(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn creutz_block_spectrum() {
        let b = TwoByTwoBlock::creutz(1.0, 1.0, 0.0, 0.0);
        assert_abs_diff_eq!(b.trace(), -4.0, epsilon = 1e-15);
        let e = numeric_eigensystem(&b);
        assert_abs_diff_eq!(e.values[0], -5.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn degenerate_block() {
        let e = numeric_eigensystem(&TwoByTwoBlock {
            h: [[0.5, 0.0], [0.0, 0.5]],
        });
        assert_eq!(e.values, [0.5, 0.5]);
        let v = e.vectors;
        assert_abs_diff_eq!(v[0][0] * v[1][0] + v[0][1] * v[1][1], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn eigenvectors_orthonormal_and_correct() {
        for (i, theta) in [-1.0, 0.0, 0.3, 2.0].iter().enumerate() {
            let k = 0.7 + i as f64;
            let b = TwoByTwoBlock::creutz(1.2, 0.8, *theta, k);
            let e = numeric_eigensystem(&b);
            for n in 0..2 {
                let v = e.vectors[n];
                assert_abs_diff_eq!(v[0].hypot(v[1]), 1.0, epsilon = 1e-14);
                let hv = b.apply(&v);
                assert_abs_diff_eq!(hv[0], e.values[n] * v[0], epsilon = 1e-12);
                assert_abs_diff_eq!(hv[1], e.values[n] * v[1], epsilon = 1e-12);
            }
            let v = e.vectors;
            assert_abs_diff_eq!(v[0][0] * v[1][0] + v[0][1] * v[1][1], 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn mode_le_trivial_cases() {
        assert_abs_diff_eq!(
            numeric_mode_le(1.0, 1.0, 0.3, -0.8, 1.1, 0.0),
            1.0,
            epsilon = 1e-14
        );
        for t in [0.5, 3.0, 40.0] {
            assert_abs_diff_eq!(
                numeric_mode_le(1.0, 1.0, 0.3, 0.3, 1.1, t),
                1.0,
                epsilon = 1e-13
            );
        }
        assert_abs_diff_eq!(
            evolved_norm(1.0, 1.0, 0.3, -0.8, 1.1, 17.0),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn variance_vanishes_without_quench() {
        assert_abs_diff_eq!(
            numeric_energy_variance(1.0, 1.0, 0.25 * PI, 0.25 * PI, 12),
            0.0,
            epsilon = 1e-6
        );
    }

    #[test]
    fn mixed_le_single_sample_is_pure_product() {
        let (k_hop, m, th1, th2, t) = (1.0, 1.0, 0.25 * PI, -0.3, 1.7);
        let l = 3;
        let product: f64 = (0..l)
            .map(|j| numeric_mode_le(k_hop, m, th1, th2, 2.0 * PI * j as f64 / l as f64, t))
            .product();
        let mixed = numeric_mixed_le(k_hop, m, th1, &[th2], l, t);
        assert_abs_diff_eq!(mixed, product, epsilon = 1e-12);
    }
}

//! Dense real symmetric linear algebra.
//!
//! Everything in the bound machinery reduces to eigendecompositions of
//! real symmetric matrices (density operators and Gram matrices of sign
//! rectangles), so this module ships a self-contained cyclic Jacobi
//! eigensolver plus the handful of operator maps built on top of it:
//! PSD square root, Uhlmann fidelity, partial traces, and the pinching
//! map that dephases a bipartite state in the eigenbasis of its first
//! marginal.
//!
//! All matrices are real. Complex entries never arise in the shipped
//! constructions, so carrying an imaginary part would be dead weight.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::spectra::Spectrum;
use crate::{Error, Result};

/// Relative symmetry tolerance for accepting input matrices.
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Eigenvalues above this floor are clamped to zero by PSD consumers.
pub const PSD_TOL: f64 = -1e-10;
/// Density operators must have unit trace within this tolerance.
pub const TRACE_TOL: f64 = 1e-9;
/// Jacobi convergence: off-diagonal Frobenius norm below this multiple
/// of the input Frobenius norm.
const JACOBI_TOL: f64 = 1e-12;
/// Hard cap on Jacobi sweeps; hitting it signals pathological input.
const MAX_SWEEPS: usize = 100;

/// Dense real symmetric matrix, row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    /// Build from row-major entries, checking shape and symmetry
    /// (relative tolerance `SYMMETRY_TOL` against the largest entry).
    pub fn new(dim: usize, entries: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyDimension);
        }
        if entries.len() != dim * dim {
            return Err(Error::BadShape {
                dim,
                len: entries.len(),
            });
        }
        let scale = entries.iter().fold(0.0f64, |m, &v| m.max(v.abs())).max(1.0);
        let mut max_dev = 0.0f64;
        for i in 0..dim {
            for j in (i + 1)..dim {
                max_dev = max_dev.max((entries[i * dim + j] - entries[j * dim + i]).abs());
            }
        }
        if max_dev > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric { max_dev });
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = vec![0.0; dim * dim];
        for i in 0..dim {
            m[i * dim + i] = 1.0;
        }
        Self::new(dim, m)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let dim = diag.len();
        let mut m = vec![0.0; dim * dim];
        for (i, &v) in diag.iter().enumerate() {
            m[i * dim + i] = v;
        }
        Self::new(dim, m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// A ⊗ B in the A-major index convention (composite index i·dimB + j).
    pub fn kron(&self, other: &SymMatrix) -> SymMatrix {
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        let mut m = vec![0.0; dim * dim];
        for ia in 0..da {
            for ja in 0..da {
                let a = self.get(ia, ja);
                for ib in 0..db {
                    for jb in 0..db {
                        m[(ia * db + ib) * dim + (ja * db + jb)] = a * other.get(ib, jb);
                    }
                }
            }
        }
        SymMatrix { dim, entries: m }
    }

    /// Validate the density-operator invariants: unit trace within
    /// `TRACE_TOL` and eigenvalues above `PSD_TOL`.
    pub fn check_density(&self) -> Result<()> {
        let tr = self.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace: tr });
        }
        let decomp = eigh(self)?;
        let min_eig = decomp.eigenvalues.last().copied().unwrap_or(0.0);
        if min_eig < PSD_TOL {
            return Err(Error::NotPsd { min_eig });
        }
        Ok(())
    }
}

/// Eigendecomposition of a symmetric matrix: `A = V diag(λ) Vᵀ` with the
/// eigenvalues sorted descending and column i of `V` paired with λ_i.
#[derive(Debug, Clone)]
pub struct EigenDecomp {
    pub eigenvalues: Vec<f64>,
    /// Orthogonal matrix, row-major, columns are eigenvectors.
    pub eigenvectors: Vec<f64>,
    pub dim: usize,
}

impl EigenDecomp {
    /// Column i as a vector.
    pub fn eigenvector(&self, i: usize) -> Vec<f64> {
        (0..self.dim)
            .map(|r| self.eigenvectors[r * self.dim + i])
            .collect()
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// Converged when the off-diagonal Frobenius norm drops below
/// 1e-12 times the Frobenius norm of the input; capped at 100 sweeps.
pub fn eigh(a: &SymMatrix) -> Result<EigenDecomp> {
    let n = a.dim;
    let norm = a.frobenius_norm();
    let mut m = a.entries.clone();
    // Work on an exactly symmetric copy so rotations stay consistent.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[i * n + j] + m[j * n + i]);
            m[i * n + j] = avg;
            m[j * n + i] = avg;
        }
    }
    let mut v = vec![0.0; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }

    let threshold = JACOBI_TOL * norm.max(f64::MIN_POSITIVE);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += 2.0 * m[p * n + q] * m[p * n + q];
            }
        }
        if off.sqrt() <= threshold {
            converged = true;
            break;
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = m[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let app = m[p * n + p];
                let aqq = m[q * n + q];
                let theta = 0.5 * (aqq - app) / apq;
                // tan of the rotation angle; the guarded branch avoids
                // overflow in theta^2 for nearly-diagonal pairs.
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                m[p * n + p] = app - t * apq;
                m[q * n + q] = aqq + t * apq;
                m[p * n + q] = 0.0;
                m[q * n + p] = 0.0;
                for k in 0..n {
                    if k == p || k == q {
                        continue;
                    }
                    let akp = m[k * n + p];
                    let akq = m[k * n + q];
                    m[k * n + p] = c * akp - s * akq;
                    m[p * n + k] = m[k * n + p];
                    m[k * n + q] = s * akp + c * akq;
                    m[q * n + k] = m[k * n + q];
                }
                for k in 0..n {
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[j * n + j].total_cmp(&m[i * n + i]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m[i * n + i]).collect();
    let mut eigenvectors = vec![0.0; n * n];
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            eigenvectors[row * n + col] = v[row * n + src];
        }
    }
    Ok(EigenDecomp {
        eigenvalues,
        eigenvectors,
        dim: n,
    })
}

/// PSD square root via the eigendecomposition, with eigenvalues in
/// `[PSD_TOL, 0)` clamped to zero. Anything below `PSD_TOL` is rejected.
pub fn psd_sqrt(a: &SymMatrix) -> Result<SymMatrix> {
    let decomp = eigh(a)?;
    let min_eig = decomp.eigenvalues.last().copied().unwrap_or(0.0);
    if min_eig < PSD_TOL {
        return Err(Error::NotPsd { min_eig });
    }
    let roots: Vec<f64> = decomp
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    Ok(reassemble(&decomp.eigenvectors, &roots, a.dim))
}

/// V diag(d) Vᵀ for row-major V with eigenvectors in columns.
fn reassemble(v: &[f64], diag: &[f64], n: usize) -> SymMatrix {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for j in i..n {
            let mut acc = 0.0;
            for k in 0..n {
                acc += v[i * n + k] * diag[k] * v[j * n + k];
            }
            m[i * n + j] = acc;
            m[j * n + i] = acc;
        }
    }
    SymMatrix { dim: n, entries: m }
}

fn matmul(a: &SymMatrix, b: &SymMatrix) -> Vec<f64> {
    let n = a.dim;
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a.entries[i * n + k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                m[i * n + j] += aik * b.entries[k * n + j];
            }
        }
    }
    m
}

/// Uhlmann fidelity `F(ρ, σ) = Tr √(√ρ σ √ρ)` between density operators.
///
/// Returns a value in [0, 1]; 1 for identical states, 0 for perfectly
/// distinguishable ones. For rank-1 projectors this reduces to the
/// absolute overlap of the underlying vectors.
pub fn fidelity(rho: &SymMatrix, sigma: &SymMatrix) -> Result<f64> {
    if rho.dim != sigma.dim {
        return Err(Error::DimMismatch {
            left: rho.dim,
            right: sigma.dim,
        });
    }
    rho.check_density()?;
    sigma.check_density()?;
    let root = psd_sqrt(rho)?;
    let tmp = SymMatrix {
        dim: rho.dim,
        entries: matmul(&root, sigma),
    };
    let inner = matmul(&tmp, &root);
    // Exact in exact arithmetic; symmetrize away the float noise so the
    // final eigensolve sees a symmetric operator.
    let n = rho.dim;
    let mut sym = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            sym[i * n + j] = 0.5 * (inner[i * n + j] + inner[j * n + i]);
        }
    }
    let decomp = eigh(&SymMatrix {
        dim: n,
        entries: sym,
    })?;
    let f: f64 = decomp
        .eigenvalues
        .iter()
        .map(|&l| l.max(0.0).sqrt())
        .sum();
    Ok(f.clamp(0.0, 1.0))
}

fn check_factorization(m: &SymMatrix, dim_a: usize, dim_b: usize) -> Result<()> {
    if dim_a == 0 || dim_b == 0 {
        return Err(Error::EmptyDimension);
    }
    if m.dim != dim_a * dim_b {
        return Err(Error::BadFactorization {
            dim: m.dim,
            dim_a,
            dim_b,
        });
    }
    Ok(())
}

/// Trace out the B factor of a bipartite operator on A ⊗ B
/// (composite index i·dimB + j).
pub fn partial_trace_b(rho_ab: &SymMatrix, dim_a: usize, dim_b: usize) -> Result<SymMatrix> {
    check_factorization(rho_ab, dim_a, dim_b)?;
    let mut m = vec![0.0; dim_a * dim_a];
    for i in 0..dim_a {
        for ip in 0..dim_a {
            let mut acc = 0.0;
            for j in 0..dim_b {
                acc += rho_ab.get(i * dim_b + j, ip * dim_b + j);
            }
            m[i * dim_a + ip] = acc;
        }
    }
    Ok(SymMatrix {
        dim: dim_a,
        entries: m,
    })
}

/// Trace out the A factor of a bipartite operator on A ⊗ B.
pub fn partial_trace_a(rho_ab: &SymMatrix, dim_a: usize, dim_b: usize) -> Result<SymMatrix> {
    check_factorization(rho_ab, dim_a, dim_b)?;
    let mut m = vec![0.0; dim_b * dim_b];
    for j in 0..dim_b {
        for jp in 0..dim_b {
            let mut acc = 0.0;
            for i in 0..dim_a {
                acc += rho_ab.get(i * dim_b + j, i * dim_b + jp);
            }
            m[j * dim_b + jp] = acc;
        }
    }
    Ok(SymMatrix {
        dim: dim_b,
        entries: m,
    })
}

/// Pinch a bipartite state in the eigenbasis of its A marginal:
/// `P(ρ_AB) = Σ_i |i_A⟩⟨i_A| ⊗ ⟨i_A| ρ_AB |i_A⟩`.
///
/// The result is expressed in that eigenbasis on A, so it is literally
/// block-diagonal: block i is the dimB×dimB operator `⟨i_A|ρ_AB|i_A⟩`.
/// The map is doubly stochastic, so the pinched spectrum majorizes
/// nothing it shouldn't: `S_α(P(ρ)) ≥ S_α(ρ)` for every order, and the
/// B-trace of the result is `diag(spec(ρ_A))`.
pub fn pinch(rho_ab: &SymMatrix, dim_a: usize, dim_b: usize) -> Result<SymMatrix> {
    check_factorization(rho_ab, dim_a, dim_b)?;
    let rho_a = partial_trace_b(rho_ab, dim_a, dim_b)?;
    let basis = eigh(&rho_a)?;
    let dim = dim_a * dim_b;
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim_a {
        let vi = basis.eigenvector(i);
        for j in 0..dim_b {
            for jp in j..dim_b {
                let mut acc = 0.0;
                for a in 0..dim_a {
                    if vi[a] == 0.0 {
                        continue;
                    }
                    for ap in 0..dim_a {
                        acc += vi[a] * vi[ap] * rho_ab.get(a * dim_b + j, ap * dim_b + jp);
                    }
                }
                m[(i * dim_b + j) * dim + (i * dim_b + jp)] = acc;
                m[(i * dim_b + jp) * dim + (i * dim_b + j)] = acc;
            }
        }
    }
    Ok(SymMatrix { dim, entries: m })
}

fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic full-rank random density operator: normalized Wishart
/// `G Gᵀ / Tr(G Gᵀ)` with standard normal `G`.
pub fn random_density(dim: usize, seed: u64) -> Result<SymMatrix> {
    if dim == 0 {
        return Err(Error::EmptyDimension);
    }
    let mut rng = seeded_rng(seed);
    let g: Vec<f64> = (0..dim * dim).map(|_| rng.sample(StandardNormal)).collect();
    let mut m = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in i..dim {
            let mut acc = 0.0;
            for k in 0..dim {
                acc += g[i * dim + k] * g[j * dim + k];
            }
            m[i * dim + j] = acc;
            m[j * dim + i] = acc;
        }
    }
    let tr: f64 = (0..dim).map(|i| m[i * dim + i]).sum();
    for v in &mut m {
        *v /= tr;
    }
    Ok(SymMatrix { dim, entries: m })
}

/// Deterministic random bipartite pure state on A ⊗ B.
///
/// Returns the rank-1 projector together with its Schmidt spectrum
/// (the eigenvalues of the A marginal).
pub fn random_bipartite_pure(
    dim_a: usize,
    dim_b: usize,
    seed: u64,
) -> Result<(SymMatrix, Spectrum)> {
    if dim_a == 0 || dim_b == 0 {
        return Err(Error::EmptyDimension);
    }
    let mut rng = seeded_rng(seed);
    let mut amp: Vec<f64> = (0..dim_a * dim_b)
        .map(|_| rng.sample(StandardNormal))
        .collect();
    let norm: f64 = amp.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut amp {
        *v /= norm;
    }
    let dim = dim_a * dim_b;
    let mut proj = vec![0.0; dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            proj[i * dim + j] = amp[i] * amp[j];
        }
    }
    let projector = SymMatrix { dim, entries: proj };
    let marginal = partial_trace_b(&projector, dim_a, dim_b)?;
    let spectrum = Spectrum::from_eigenvalues(eigh(&marginal)?.eigenvalues)?;
    Ok((projector, spectrum))
}

/// Schmidt spectrum of a density operator: eigenvalues clamped into a
/// valid [`Spectrum`].
pub fn spectrum_of(m: &SymMatrix) -> Result<Spectrum> {
    Spectrum::from_eigenvalues(eigh(m)?.eigenvalues)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol:e})");
    }

    #[test]
    fn eigh_2x2() {
        let a = SymMatrix::new(2, vec![2.0, 1.0, 1.0, 2.0]).unwrap();
        let d = eigh(&a).unwrap();
        assert_close(d.eigenvalues[0], 3.0, 1e-12);
        assert_close(d.eigenvalues[1], 1.0, 1e-12);
    }

    #[test]
    fn eigh_identity() {
        let a = SymMatrix::identity(5).unwrap();
        let d = eigh(&a).unwrap();
        for l in d.eigenvalues {
            assert_close(l, 1.0, 1e-15);
        }
    }

    #[test]
    fn eigh_diagonal_sorts_descending() {
        let a = SymMatrix::from_diagonal(&[5.0, 2.0, 7.0]).unwrap();
        let d = eigh(&a).unwrap();
        assert_eq!(d.eigenvalues, vec![7.0, 5.0, 2.0]);
        // eigenvectors are signed permutation columns
        for col in 0..3 {
            let v = d.eigenvector(col);
            let big: Vec<f64> = v.iter().map(|x| x.abs()).collect();
            let ones = big.iter().filter(|&&x| (x - 1.0).abs() < 1e-12).count();
            let zeros = big.iter().filter(|&&x| x.abs() < 1e-12).count();
            assert_eq!((ones, zeros), (1, 2));
        }
    }

    #[test]
    fn eigh_reconstruction_and_orthogonality() {
        let a = random_density(8, 7).unwrap();
        let d = eigh(&a).unwrap();
        let n = 8;
        let recon = reassemble(&d.eigenvectors, &d.eigenvalues, n);
        let mut err = 0.0f64;
        let mut ortho = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                err += (recon.get(i, j) - a.get(i, j)).powi(2);
                let mut dot = 0.0;
                for k in 0..n {
                    dot += d.eigenvectors[k * n + i] * d.eigenvectors[k * n + j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                ortho = ortho.max((dot - target).abs());
            }
        }
        assert!(err.sqrt() <= 1e-9 * a.frobenius_norm());
        assert!(ortho <= 1e-9);
    }

    #[test]
    fn eigh_rejects_asymmetric() {
        let r = SymMatrix::new(2, vec![1.0, 0.5, 0.2, 1.0]);
        assert!(matches!(r, Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn psd_sqrt_diagonal() {
        let a = SymMatrix::from_diagonal(&[4.0, 9.0]).unwrap();
        let r = psd_sqrt(&a).unwrap();
        assert_close(r.get(0, 0), 2.0, 1e-12);
        assert_close(r.get(1, 1), 3.0, 1e-12);
        assert_close(r.get(0, 1), 0.0, 1e-12);
    }

    #[test]
    fn psd_sqrt_wishart_roundtrip() {
        let a = random_density(6, 42).unwrap();
        let r = psd_sqrt(&a).unwrap();
        let sq = matmul(&r, &r);
        let mut err = 0.0f64;
        for (x, y) in sq.iter().zip(a.entries.iter()) {
            err += (x - y) * (x - y);
        }
        assert!(err.sqrt() <= 1e-8 * a.frobenius_norm());
    }

    #[test]
    fn psd_sqrt_rejects_indefinite() {
        let a = SymMatrix::from_diagonal(&[1.0, -1.0]).unwrap();
        assert!(matches!(psd_sqrt(&a), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn fidelity_self_is_one() {
        let rho = random_density(4, 3).unwrap();
        assert_close(fidelity(&rho, &rho).unwrap(), 1.0, 1e-9);
    }

    #[test]
    fn fidelity_orthogonal_pure_states() {
        let rho = SymMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let sigma = SymMatrix::from_diagonal(&[0.0, 1.0]).unwrap();
        assert_close(fidelity(&rho, &sigma).unwrap(), 0.0, 1e-12);
    }

    #[test]
    fn fidelity_commuting_case() {
        let rho = SymMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let sigma = SymMatrix::from_diagonal(&[0.5, 0.5]).unwrap();
        assert_close(fidelity(&rho, &sigma).unwrap(), 0.5f64.sqrt(), 1e-9);
    }

    #[test]
    fn fidelity_rejects_mismatch_and_non_density() {
        let rho = SymMatrix::from_diagonal(&[1.0, 0.0]).unwrap();
        let sigma = SymMatrix::from_diagonal(&[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            fidelity(&rho, &sigma),
            Err(Error::DimMismatch { .. })
        ));
        let bad = SymMatrix::from_diagonal(&[1.0, 1.0]).unwrap();
        assert!(matches!(fidelity(&rho, &bad), Err(Error::BadTrace { .. })));
    }

    #[test]
    fn partial_trace_of_product() {
        let rho_a = random_density(3, 11).unwrap();
        let rho_b = random_density(2, 12).unwrap();
        let joint = rho_a.kron(&rho_b);
        let back = partial_trace_b(&joint, 3, 2).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_close(back.get(i, j), rho_a.get(i, j), 1e-12);
            }
        }
        let back_b = partial_trace_a(&joint, 3, 2).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_close(back_b.get(i, j), rho_b.get(i, j), 1e-12);
            }
        }
    }

    #[test]
    fn partial_trace_epr_marginal() {
        // (|00> + |11>)/sqrt(2) projector
        let h = 0.5;
        let entries = vec![
            h, 0.0, 0.0, h, //
            0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, //
            h, 0.0, 0.0, h,
        ];
        let rho = SymMatrix::new(4, entries).unwrap();
        let m = partial_trace_b(&rho, 2, 2).unwrap();
        assert_close(m.get(0, 0), 0.5, 1e-15);
        assert_close(m.get(1, 1), 0.5, 1e-15);
        assert_close(m.get(0, 1), 0.0, 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_factorization() {
        let rho = random_density(6, 1).unwrap();
        assert!(matches!(
            partial_trace_b(&rho, 4, 2),
            Err(Error::BadFactorization { .. })
        ));
    }

    #[test]
    fn pinch_epr_gives_schmidt_diagonal() {
        let h = 0.5;
        let entries = vec![
            h, 0.0, 0.0, h, //
            0.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 0.0, //
            h, 0.0, 0.0, h,
        ];
        let rho = SymMatrix::new(4, entries).unwrap();
        let p = pinch(&rho, 2, 2).unwrap();
        let want = [0.5, 0.0, 0.0, 0.5];
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j { want[i] } else { 0.0 };
                assert_close(p.get(i, j), expect, 1e-12);
            }
        }
    }

    #[test]
    fn pinch_product_state_rotates_a_only() {
        let rho_a = random_density(3, 21).unwrap();
        let rho_b = random_density(2, 22).unwrap();
        let joint = rho_a.kron(&rho_b);
        let p = pinch(&joint, 3, 2).unwrap();
        let lam = eigh(&rho_a).unwrap().eigenvalues;
        let expect = SymMatrix::from_diagonal(&lam).unwrap().kron(&rho_b);
        for i in 0..6 {
            for j in 0..6 {
                assert_close(p.get(i, j), expect.get(i, j), 1e-10);
            }
        }
    }

    #[test]
    fn pinch_preserves_trace_and_a_spectrum() {
        let rho = random_density(12, 5).unwrap();
        let p = pinch(&rho, 3, 4).unwrap();
        assert_close(p.trace(), 1.0, 1e-9);
        let lam_a = eigh(&partial_trace_b(&rho, 3, 4).unwrap())
            .unwrap()
            .eigenvalues;
        let lam_pa = eigh(&partial_trace_b(&p, 3, 4).unwrap())
            .unwrap()
            .eigenvalues;
        for (x, y) in lam_a.iter().zip(lam_pa.iter()) {
            assert_close(*x, *y, 1e-9);
        }
    }

    #[test]
    fn random_generators_are_deterministic() {
        let a = random_density(4, 99).unwrap();
        let b = random_density(4, 99).unwrap();
        assert_eq!(a.entries, b.entries);
        a.check_density().unwrap();

        let (p1, s1) = random_bipartite_pure(3, 2, 7).unwrap();
        let (p2, s2) = random_bipartite_pure(3, 2, 7).unwrap();
        assert_eq!(p1.entries, p2.entries);
        assert_eq!(s1.probs(), s2.probs());
        p1.check_density().unwrap();
    }

    #[test]
    fn random_pure_spectrum_matches_marginal() {
        let (proj, spec) = random_bipartite_pure(3, 3, 31).unwrap();
        let marginal = partial_trace_b(&proj, 3, 3).unwrap();
        let lam = eigh(&marginal).unwrap().eigenvalues;
        for (a, b) in spec.probs().iter().zip(lam.iter()) {
            assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn zero_dim_is_rejected() {
        assert!(matches!(random_density(0, 1), Err(Error::EmptyDimension)));
    }
}

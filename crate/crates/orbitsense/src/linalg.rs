//! Dense complex linear algebra helpers shared across the crate.
//!
//! Everything is desk scale (dimensions up to a few hundred), so matrices are
//! stored densely and spectral quantities come from nalgebra's pure-Rust SVD
//! and Hermitian eigendecompositions.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// e^{2*pi*i*t}
pub fn unit_phase(t: f64) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
}

/// Entrywise maximum modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// max-norm of A - B.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    debug_assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// ||M* M - I||_max; zero iff the columns are orthonormal.
pub fn unitarity_defect(m: &CMatrix) -> f64 {
    let gram = m.adjoint() * m;
    let n = gram.nrows();
    max_abs_diff(&gram, &CMatrix::identity(n, n))
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && unitarity_defect(m) <= tol
}

/// Thin singular value decomposition A = U diag(sigma) V*, singular values
/// descending.
pub struct Svd {
    pub u: CMatrix,
    pub sigma: Vec<f64>,
    pub v: CMatrix,
}

/// One-sided Jacobi SVD. Rotations orthogonalize column pairs until every
/// pair is numerically orthogonal, which keeps full accuracy even for
/// clustered or repeated singular values.
pub fn jacobi_svd(a: &CMatrix) -> Svd {
    let (m, n) = a.shape();
    if m < n {
        let t = jacobi_svd(&a.adjoint());
        return Svd {
            u: t.v,
            sigma: t.sigma,
            v: t.u,
        };
    }
    let mut w = a.clone();
    let mut v = CMatrix::identity(n, n);
    let tol = 1e-15;
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = ZERO;
                for i in 0..m {
                    alpha += w[(i, p)].norm_sqr();
                    beta += w[(i, q)].norm_sqr();
                    gamma += w[(i, p)].conj() * w[(i, q)];
                }
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                // absorb the phase of gamma into column q, then rotate as in
                // the real case
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = cs * t;
                for i in 0..m {
                    let wq = w[(i, q)] * phase;
                    let wp = w[(i, p)];
                    w[(i, p)] = wp * cs - wq * sn;
                    w[(i, q)] = wp * sn + wq * cs;
                }
                for i in 0..n {
                    let vq = v[(i, q)] * phase;
                    let vp = v[(i, p)];
                    v[(i, p)] = vp * cs - vq * sn;
                    v[(i, q)] = vp * sn + vq * cs;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = (0..n).map(|j| w.column(j).norm()).collect();
    order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap().then(a.cmp(&b)));
    let mut u = CMatrix::zeros(m, n);
    let mut vv = CMatrix::zeros(n, n);
    let mut sigma = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        let s = norms[src];
        sigma.push(s);
        if s > 0.0 {
            for i in 0..m {
                u[(i, dst)] = w[(i, src)] / s;
            }
        }
        for i in 0..n {
            vv[(i, dst)] = v[(i, src)];
        }
    }
    Svd { u, sigma, v: vv }
}

/// Largest singular value.
pub fn spectral_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    jacobi_svd(m).sigma.first().copied().unwrap_or(0.0)
}

/// Largest singular value squared, computed as the top eigenvalue of M* M.
pub fn top_singular_value_squared(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    let gram = m.adjoint() * m;
    hermitian_eigenvalues(&gram)
        .iter()
        .cloned()
        .fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix (real, unordered).
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    debug_assert!(m.is_square());
    m.clone().symmetric_eigen().eigenvalues.iter().cloned().collect()
}

/// max |eigenvalue| of a Hermitian matrix.
pub fn hermitian_spectral_norm(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m)
        .iter()
        .map(|l| l.abs())
        .fold(0.0, f64::max)
}

fn rank_cutoff(shape: (usize, usize), sigma: &[f64]) -> f64 {
    let smax = sigma.first().copied().unwrap_or(0.0);
    smax * 1e-13 * (shape.0.max(shape.1) as f64)
}

/// Moore-Penrose pseudo-inverse with a relative singular-value cutoff.
pub fn pseudo_inverse(m: &CMatrix) -> CMatrix {
    let svd = jacobi_svd(m);
    let eps = rank_cutoff(m.shape(), &svd.sigma);
    let k = svd.sigma.len();
    let mut scaled_v = svd.v;
    for j in 0..k {
        let inv = if svd.sigma[j] > eps {
            1.0 / svd.sigma[j]
        } else {
            0.0
        };
        for i in 0..scaled_v.nrows() {
            scaled_v[(i, j)] *= inv;
        }
    }
    scaled_v * svd.u.adjoint()
}

/// Minimum-norm least-squares solution of A x = b, plus the numerical rank of A.
pub fn lstsq(a: &CMatrix, b: &CVector) -> (CVector, usize) {
    let svd = jacobi_svd(a);
    let eps = rank_cutoff(a.shape(), &svd.sigma);
    let rank = svd.sigma.iter().filter(|&&s| s > eps).count();
    let mut x = CVector::zeros(a.ncols());
    for j in 0..rank {
        let coeff = svd.u.column(j).dotc(b) / Complex64::new(svd.sigma[j], 0.0);
        for i in 0..a.ncols() {
            x[i] += svd.v[(i, j)] * coeff;
        }
    }
    (x, rank)
}

/// Haar-like random unitary: QR of a complex Gaussian matrix with the phase
/// of the R diagonal absorbed into Q.
pub fn random_unitary<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let a = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    });
    let qr = a.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Number of s-subsets of an n-set, saturating at u128::MAX.
pub fn binomial(n: usize, s: usize) -> u128 {
    if s > n {
        return 0;
    }
    let s = s.min(n - s);
    let mut acc: u128 = 1;
    for i in 0..s {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

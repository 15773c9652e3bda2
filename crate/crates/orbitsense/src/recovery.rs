//! Sparse-recovery solvers over complex measurement matrices: basis pursuit
//! (equality-constrained l1 minimization via ADMM), orthogonal matching
//! pursuit, iterative hard thresholding, and an exhaustive l0 oracle.
//!
//! All solvers work natively over C^n: the complex l1 norm is the sum of
//! moduli and shrinkage scales moduli while preserving phases. Ties are
//! broken by the lowest index everywhere.

use std::fmt;

use itertools::Itertools;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{binomial, lstsq, pseudo_inverse, spectral_norm, CMatrix, CVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverTag {
    BasisPursuit,
    Omp,
    Iht,
    L0Oracle,
}

impl SolverTag {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "basis_pursuit" | "bp" => Ok(SolverTag::BasisPursuit),
            "omp" => Ok(SolverTag::Omp),
            "iht" => Ok(SolverTag::Iht),
            "l0_oracle" | "l0" => Ok(SolverTag::L0Oracle),
            other => Err(Error::Config(format!("unknown solver '{other}'"))),
        }
    }
}

impl fmt::Display for SolverTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SolverTag::BasisPursuit => "basis_pursuit",
            SolverTag::Omp => "omp",
            SolverTag::Iht => "iht",
            SolverTag::L0Oracle => "l0_oracle",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct RecoveryResult {
    pub estimate: CVector,
    pub residual_norm: f64,
    pub iterations: usize,
    pub converged: bool,
    pub solver: SolverTag,
    /// Set when a degenerate subproblem forced a pseudo-inverse fallback.
    pub warning: Option<String>,
}

impl RecoveryResult {
    fn new(solver: SolverTag, estimate: CVector, phi: &CMatrix, y: &CVector) -> Self {
        let residual_norm = (phi * &estimate - y).norm();
        RecoveryResult {
            estimate,
            residual_norm,
            iterations: 0,
            converged: false,
            solver,
            warning: None,
        }
    }

    /// l1 norm of the estimate (sum of moduli).
    pub fn estimate_l1(&self) -> f64 {
        l1_norm(&self.estimate)
    }
}

/// Sum of moduli.
pub fn l1_norm(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm()).sum()
}

/// Number of entries with modulus above `tol`.
pub fn l0_norm(v: &CVector, tol: f64) -> usize {
    v.iter().filter(|z| z.norm() > tol).count()
}

#[derive(Debug, Clone, Copy)]
pub struct BasisPursuitOptions {
    pub tol_feas: f64,
    pub tol_opt: f64,
    pub max_iter: usize,
}

impl Default for BasisPursuitOptions {
    fn default() -> Self {
        BasisPursuitOptions {
            tol_feas: 1e-8,
            tol_opt: 1e-7,
            max_iter: 50_000,
        }
    }
}

/// Complex soft thresholding: scales moduli down by kappa, preserving phases.
fn shrink(v: &CVector, kappa: f64) -> CVector {
    CVector::from_fn(v.len(), |i, _| {
        let r = v[i].norm();
        if r <= kappa {
            Complex64::new(0.0, 0.0)
        } else {
            v[i] * ((r - kappa) / r)
        }
    })
}

/// min ||z||_1 subject to Phi z = y, solved by ADMM with projection onto the
/// affine constraint set (via a precomputed pseudo-inverse) and modulus
/// shrinkage. Returns the projected iterate, which is feasible to solver
/// precision; non-convergence is reported through `converged`, never as a
/// silently wrong answer.
pub fn basis_pursuit(
    phi: &CMatrix,
    y: &CVector,
    opts: &BasisPursuitOptions,
) -> Result<RecoveryResult> {
    let (m, n) = phi.shape();
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            context: "basis_pursuit measurements".into(),
            expected: m,
            got: y.len(),
        });
    }
    let pinv = pseudo_inverse(phi);
    // projection onto {x : Phi x = y} with one refinement step, which pushes
    // the pseudo-inverse truncation error down to machine precision
    let project = |v: &CVector| -> CVector {
        let w = v + &pinv * (y - phi * v);
        &w + &pinv * (y - phi * &w)
    };
    // least-norm feasible point; also certifies that y lies in range(Phi)
    let x0 = project(&CVector::zeros(n));
    let feas0 = (phi * &x0 - y).norm();
    if feas0 > opts.tol_feas * (1.0 + y.norm()) {
        return Err(Error::Infeasible(format!(
            "y is not in the range of Phi (best residual {feas0:.3e})"
        )));
    }

    // scaled ADMM with rho = 1: x-update projects z - u onto {x : Phi x = y},
    // z-update shrinks, u accumulates the running residual.
    let mut z = x0.clone();
    let mut u = CVector::zeros(n);
    let mut x = x0;
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=opts.max_iter {
        iterations = it;
        x = project(&(&z - &u));
        let w = &x + &u;
        let z_next = shrink(&w, 1.0);
        let dual = (&z_next - &z).norm();
        z = z_next;
        u = w - &z;
        let primal = (&x - &z).norm();
        let scale = 1.0 + x.norm().max(z.norm());
        if primal <= opts.tol_opt * scale && dual <= opts.tol_opt * scale {
            converged = true;
            break;
        }
    }
    let mut result = RecoveryResult::new(SolverTag::BasisPursuit, x, phi, y);
    result.iterations = iterations;
    result.converged = converged && result.residual_norm <= opts.tol_feas * (1.0 + y.norm());
    Ok(result)
}

/// Orthogonal matching pursuit: greedily grows the support by the column most
/// correlated with the residual (ties to the lowest index), then solves least
/// squares on the support. Stops after `s` picks or when the residual falls
/// below 1e-10.
pub fn omp(phi: &CMatrix, y: &CVector, s: usize) -> Result<RecoveryResult> {
    let (m, n) = phi.shape();
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            context: "omp measurements".into(),
            expected: m,
            got: y.len(),
        });
    }
    if s > m {
        return Err(Error::InvalidArgument(format!(
            "omp sparsity {s} exceeds the number of measurements {m}"
        )));
    }
    let mut support: Vec<usize> = Vec::new();
    let mut in_support = vec![false; n];
    let mut residual = y.clone();
    let mut estimate = CVector::zeros(n);
    let mut warning = None;
    let mut iterations = 0;
    for _ in 0..s {
        if residual.norm() <= 1e-10 {
            break;
        }
        iterations += 1;
        let scores = phi.adjoint() * &residual;
        let mut best = usize::MAX;
        let mut best_score = -1.0;
        for j in 0..n {
            if in_support[j] {
                continue;
            }
            let sc = scores[j].norm();
            if sc > best_score {
                best_score = sc;
                best = j;
            }
        }
        if best == usize::MAX {
            break;
        }
        support.push(best);
        in_support[best] = true;
        let sub = phi.select_columns(support.iter());
        let (coef, rank) = lstsq(&sub, y);
        if rank < support.len() && warning.is_none() {
            warning = Some(format!(
                "rank-deficient support of size {} (rank {rank}); pseudo-inverse fallback",
                support.len()
            ));
        }
        estimate = CVector::zeros(n);
        for (idx, &j) in support.iter().enumerate() {
            estimate[j] = coef[idx];
        }
        residual = y - phi * &estimate;
    }
    let mut result = RecoveryResult::new(SolverTag::Omp, estimate, phi, y);
    result.iterations = iterations;
    result.converged = result.residual_norm <= 1e-8 * (1.0 + y.norm());
    result.warning = warning;
    Ok(result)
}

/// Keep the s largest-modulus entries (ties to the lowest index), zero the rest.
fn hard_threshold(v: &CVector, s: usize) -> CVector {
    let mut order: Vec<usize> = (0..v.len()).collect();
    order.sort_by(|&a, &b| {
        v[b].norm()
            .partial_cmp(&v[a].norm())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.cmp(&b))
    });
    let mut out = CVector::zeros(v.len());
    for &j in order.iter().take(s) {
        out[j] = v[j];
    }
    out
}

/// Iterative hard thresholding x <- H_s(x + step Phi*(y - Phi x)).
/// `step` defaults to 1/||Phi||^2. Declares divergence (converged = false)
/// when the residual grows past 10x its running minimum; returns the best
/// iterate seen.
pub fn iht(
    phi: &CMatrix,
    y: &CVector,
    s: usize,
    step: Option<f64>,
    max_iter: usize,
) -> Result<RecoveryResult> {
    let (m, n) = phi.shape();
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            context: "iht measurements".into(),
            expected: m,
            got: y.len(),
        });
    }
    if s == 0 || s > n {
        return Err(Error::InvalidArgument(format!(
            "iht sparsity {s} out of range 1..={n}"
        )));
    }
    let mu = match step {
        Some(v) if v > 0.0 && v.is_finite() => v,
        Some(v) => {
            return Err(Error::InvalidArgument(format!("invalid step {v}")));
        }
        None => {
            let norm = spectral_norm(phi);
            if norm == 0.0 {
                1.0
            } else {
                1.0 / (norm * norm)
            }
        }
    };
    let mut x = CVector::zeros(n);
    let mut best = x.clone();
    let mut best_residual = y.norm();
    let mut min_residual = best_residual;
    let mut converged = false;
    let mut iterations = 0;
    for it in 1..=max_iter {
        iterations = it;
        let residual = y - phi * &x;
        let r = residual.norm();
        if r < best_residual {
            best_residual = r;
            best = x.clone();
        }
        min_residual = min_residual.min(r);
        if r <= 1e-10 {
            converged = true;
            break;
        }
        if r > 10.0 * min_residual {
            converged = false;
            break;
        }
        x = hard_threshold(&(&x + phi.adjoint() * residual * Complex64::new(mu, 0.0)), s);
    }
    let final_res = (phi * &x - y).norm();
    let estimate = if final_res <= best_residual { x } else { best };
    let mut result = RecoveryResult::new(SolverTag::Iht, estimate, phi, y);
    result.iterations = iterations;
    result.converged = converged || result.residual_norm <= 1e-10;
    Ok(result)
}

/// Exhaustive l0 minimization: search all supports of size 0..=s, least
/// squares on each, and return the feasible candidate (residual <= 1e-8) of
/// smallest support, ties by smallest residual. With no feasible candidate
/// the best-effort minimum-residual estimate is returned with
/// `converged = false`.
pub fn l0_oracle(phi: &CMatrix, y: &CVector, s: usize) -> Result<RecoveryResult> {
    let (m, n) = phi.shape();
    if y.len() != m {
        return Err(Error::DimensionMismatch {
            context: "l0_oracle measurements".into(),
            expected: m,
            got: y.len(),
        });
    }
    let total: u128 = (0..=s).map(|k| binomial(n, k)).sum();
    if total > crate::analysis::ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "{total} supports of size <= {s} exceed the budget"
        )));
    }
    const FEAS: f64 = 1e-8;
    let mut best_any: Option<(f64, CVector)> = None;
    let mut checked = 0usize;
    for k in 0..=s {
        let mut best_k: Option<(f64, CVector)> = None;
        for support in (0..n).combinations(k) {
            checked += 1;
            let estimate = if k == 0 {
                CVector::zeros(n)
            } else {
                let sub = phi.select_columns(support.iter());
                let (coef, _) = lstsq(&sub, y);
                let mut e = CVector::zeros(n);
                for (idx, &j) in support.iter().enumerate() {
                    e[j] = coef[idx];
                }
                e
            };
            let r = (phi * &estimate - y).norm();
            if best_k.as_ref().is_none_or(|(br, _)| r < *br) {
                best_k = Some((r, estimate));
            }
        }
        let (r, estimate) = best_k.expect("at least the empty support");
        if best_any.as_ref().is_none_or(|(br, _)| r < *br) {
            best_any = Some((r, estimate.clone()));
        }
        if r <= FEAS {
            let mut result = RecoveryResult::new(SolverTag::L0Oracle, estimate, phi, y);
            result.iterations = checked;
            result.converged = true;
            return Ok(result);
        }
    }
    let (_, estimate) = best_any.expect("at least one support");
    let mut result = RecoveryResult::new(SolverTag::L0Oracle, estimate, phi, y);
    result.iterations = checked;
    result.converged = false;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::linalg::unit_phase;
    use crate::rep::Representation;
    use crate::rng::{derive_seed, rng_from_seed};
    use crate::sensing::{
        build_measurement, sample_generating_vector, sample_omega, BasisSpec, OmegaMode, Scheme,
    };
    use rand::seq::SliceRandom;
    use rand::Rng;

    fn planted_sparse<R: Rng>(n: usize, s: usize, rng: &mut R) -> CVector {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.partial_shuffle(rng, s);
        let mut x = CVector::zeros(n);
        for &j in idx.iter().take(s) {
            x[j] = unit_phase(rng.random::<f64>());
        }
        x
    }

    #[test]
    fn bp_identity_matrix() {
        let phi = CMatrix::identity(6, 6);
        let mut rng = rng_from_seed(1);
        let x = planted_sparse(6, 2, &mut rng);
        let y = &phi * &x;
        let res = basis_pursuit(&phi, &y, &BasisPursuitOptions::default()).unwrap();
        assert!(res.converged);
        assert!((res.estimate - x).norm() < 1e-6);
    }

    #[test]
    fn bp_zero_measurements_return_zero() {
        let phi = crate::fourier::dft_matrix(8).rows(0, 4).into_owned();
        let y = CVector::zeros(4);
        let res = basis_pursuit(&phi, &y, &BasisPursuitOptions::default()).unwrap();
        assert!(res.converged);
        assert!(res.estimate.norm() < 1e-12);
    }

    #[test]
    fn bp_matches_l0_oracle_on_partial_dft() {
        // 1-sparse x, two distinct rows of the normalized DFT (n=4, m=2)
        let f = crate::fourier::dft_matrix(4);
        let mut phi = CMatrix::zeros(2, 4);
        for (r, src) in [1usize, 2].iter().enumerate() {
            for c in 0..4 {
                phi[(r, c)] = f[(*src, c)];
            }
        }
        let mut rng = rng_from_seed(4);
        for trial in 0..10 {
            let x = planted_sparse(4, 1, &mut rng);
            let y = &phi * &x;
            let bp = basis_pursuit(&phi, &y, &BasisPursuitOptions::default()).unwrap();
            let oracle = l0_oracle(&phi, &y, 1).unwrap();
            assert!(oracle.converged);
            assert!(
                (&bp.estimate - &oracle.estimate).norm() < 1e-5,
                "trial {trial}: bp and oracle disagree"
            );
            assert!((&oracle.estimate - &x).norm() < 1e-8);
        }
    }

    #[test]
    fn bp_infeasible_detected() {
        let mut phi = CMatrix::zeros(2, 3);
        phi[(0, 0)] = Complex64::new(1.0, 0.0);
        phi[(1, 0)] = Complex64::new(1.0, 0.0);
        // y outside range: rows force equal entries
        let y = CVector::from_column_slice(&[Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)]);
        assert!(matches!(
            basis_pursuit(&phi, &y, &BasisPursuitOptions::default()),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn bp_never_exceeds_planted_l1() {
        let g = FiniteGroup::cyclic(16).unwrap();
        let rep = Representation::left_regular(&g);
        let mut rng = rng_from_seed(6);
        for trial in 0..5 {
            let xi = sample_generating_vector(
                16,
                Scheme::ComplexGaussian,
                derive_seed(99, &[trial]),
                None,
            )
            .unwrap();
            let omega = sample_omega(&g, 10, OmegaMode::UniformIid, Some(trial), None).unwrap();
            let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).unwrap();
            let x = planted_sparse(16, 2, &mut rng);
            let y = ens.phi() * &x;
            let res = basis_pursuit(ens.phi(), &y, &BasisPursuitOptions::default()).unwrap();
            assert!(
                l1_norm(&res.estimate) <= l1_norm(&x) + 1e-6,
                "trial {trial}: l1 {} vs planted {}",
                l1_norm(&res.estimate),
                l1_norm(&x)
            );
        }
    }

    #[test]
    fn residual_norm_is_recomputable() {
        let phi = crate::fourier::dft_matrix(8).rows(0, 5).into_owned();
        let mut rng = rng_from_seed(7);
        let x = planted_sparse(8, 2, &mut rng);
        let y = &phi * &x;
        for res in [
            basis_pursuit(&phi, &y, &BasisPursuitOptions::default()).unwrap(),
            omp(&phi, &y, 2).unwrap(),
            iht(&phi, &y, 2, None, 5_000).unwrap(),
            l0_oracle(&phi, &y, 2).unwrap(),
        ] {
            let recomputed = (&phi * &res.estimate - &y).norm();
            assert!((recomputed - res.residual_norm).abs() <= 1e-12);
        }
    }

    #[test]
    fn omp_finds_single_column() {
        let f = crate::fourier::dft_matrix(8);
        let phi = f.rows(0, 5).into_owned();
        let y = phi.column(3).into_owned();
        let res = omp(&phi, &y, 3).unwrap();
        assert!(res.converged);
        assert_eq!(res.iterations, 1);
        let nz: Vec<usize> = (0..8).filter(|&j| res.estimate[j].norm() > 1e-9).collect();
        assert_eq!(nz, vec![3]);
    }

    #[test]
    fn omp_on_identity_recovers_exactly() {
        let phi = CMatrix::identity(7, 7);
        let mut rng = rng_from_seed(8);
        let x = planted_sparse(7, 3, &mut rng);
        let y = &phi * &x;
        let res = omp(&phi, &y, 3).unwrap();
        assert!((res.estimate - x).norm() < 1e-10);
    }

    #[test]
    fn omp_agrees_with_oracle_on_seeded_ensembles() {
        // left regular on Z/32, m=16, s=2, gaussian xi: >= 95/100 agreement
        let g = FiniteGroup::cyclic(32).unwrap();
        let rep = Representation::left_regular(&g);
        let mut agree = 0;
        for trial in 0..100u64 {
            let xi = sample_generating_vector(
                32,
                Scheme::ComplexGaussian,
                derive_seed(7, &[trial, 0]),
                None,
            )
            .unwrap();
            let omega = sample_omega(
                &g,
                16,
                OmegaMode::FixedSet,
                Some(derive_seed(7, &[trial, 1])),
                None,
            )
            .unwrap();
            let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).unwrap();
            let mut rng = rng_from_seed(derive_seed(7, &[trial, 2]));
            let x = planted_sparse(32, 2, &mut rng);
            let y = ens.phi() * &x;
            let greedy = omp(ens.phi(), &y, 2).unwrap();
            let oracle = l0_oracle(ens.phi(), &y, 2).unwrap();
            if (&greedy.estimate - &oracle.estimate).norm() < 1e-6 {
                agree += 1;
            }
        }
        assert!(agree >= 95, "omp agreed with the oracle on {agree}/100 trials");
    }

    #[test]
    fn iht_identity_converges_immediately() {
        let phi = CMatrix::identity(5, 5);
        let mut rng = rng_from_seed(9);
        let x = planted_sparse(5, 2, &mut rng);
        let y = &phi * &x;
        let res = iht(&phi, &y, 2, None, 100).unwrap();
        assert!(res.converged);
        assert!((res.estimate - x).norm() < 1e-10);
        // y = 0 -> 0
        let res = iht(&phi, &CVector::zeros(5), 2, None, 100).unwrap();
        assert!(res.converged);
        assert!(res.estimate.norm() == 0.0);
    }

    #[test]
    fn iht_recovers_on_well_conditioned_ensemble() {
        // full orbit of the diagonal-character rep with structured xi gives
        // orthonormal columns (delta = 0), where IHT must land exactly
        let g = FiniteGroup::cyclic(16).unwrap();
        let rep = crate::rep::diagonal_characters(&g).unwrap();
        let xi =
            sample_generating_vector(16, Scheme::StructuredBlock, 3, rep.block()).unwrap();
        let omega = sample_omega(&g, 16, OmegaMode::FixedSet, None, None).unwrap();
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).unwrap();
        let delta = crate::analysis::rip_constant(ens.phi(), 4).unwrap().delta;
        assert!(delta < 0.3);
        let mut rng = rng_from_seed(10);
        let x = planted_sparse(16, 2, &mut rng);
        let y = ens.phi() * &x;
        let res = iht(ens.phi(), &y, 2, None, 10_000).unwrap();
        assert!(res.converged, "residual {}", res.residual_norm);
        assert!((res.estimate - x).norm() < 1e-6);
    }

    #[test]
    fn oracle_and_bp_agree_below_the_rip_threshold() {
        // whenever the enumerated delta_{2s} is below 0.4931, l1 minimization
        // and the exhaustive oracle return the same vector
        let g = FiniteGroup::cyclic(16).unwrap();
        let rep = crate::rep::diagonal_characters(&g).unwrap();
        let xi = sample_generating_vector(16, Scheme::StructuredBlock, 8, rep.block()).unwrap();
        let omega = sample_omega(&g, 14, OmegaMode::FixedSet, Some(2), None).unwrap();
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).unwrap();
        let s = 2;
        let delta = crate::analysis::rip_constant(ens.phi(), 2 * s).unwrap().delta;
        assert!(delta < 0.4931, "pick a better seed: delta_2s = {delta}");
        let mut rng = rng_from_seed(14);
        for trial in 0..10 {
            let x = planted_sparse(16, s, &mut rng);
            let y = ens.phi() * &x;
            let bp = basis_pursuit(ens.phi(), &y, &BasisPursuitOptions::default()).unwrap();
            let oracle = l0_oracle(ens.phi(), &y, s).unwrap();
            assert!(oracle.converged);
            assert!(
                (&bp.estimate - &oracle.estimate).norm() < 1e-5,
                "trial {trial}: solvers disagree at delta_2s = {delta}"
            );
        }
    }

    #[test]
    fn oracle_flags_unreachable_y() {
        let phi = CMatrix::identity(4, 4);
        let y = CVector::from_element(4, Complex64::new(1.0, 0.0));
        let res = l0_oracle(&phi, &y, 2).unwrap();
        assert!(!res.converged);
        assert!(res.residual_norm > 0.1);
    }

    #[test]
    fn oracle_budget_guard() {
        let phi = CMatrix::zeros(4, 64);
        let y = CVector::zeros(4);
        assert!(matches!(
            l0_oracle(&phi, &y, 8),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn solvers_are_deterministic() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let rep = Representation::left_regular(&g);
        let xi = sample_generating_vector(12, Scheme::Steinhaus, 15, None).unwrap();
        let omega = sample_omega(&g, 8, OmegaMode::UniformIid, Some(5), None).unwrap();
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).unwrap();
        let mut rng = rng_from_seed(16);
        let x = planted_sparse(12, 2, &mut rng);
        let y = ens.phi() * &x;
        let a1 = omp(ens.phi(), &y, 2).unwrap();
        let a2 = omp(ens.phi(), &y, 2).unwrap();
        assert_eq!(a1.estimate, a2.estimate);
        let b1 = iht(ens.phi(), &y, 2, None, 2_000).unwrap();
        let b2 = iht(ens.phi(), &y, 2, None, 2_000).unwrap();
        assert_eq!(b1.estimate, b2.estimate);
    }

    #[test]
    fn hard_threshold_breaks_ties_by_lowest_index() {
        let v = CVector::from_column_slice(&[
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(-1.0, 0.0),
        ]);
        let kept = hard_threshold(&v, 2);
        assert!(kept[0].norm() > 0.0);
        assert!(kept[1].norm() > 0.0);
        assert!(kept[2].norm() == 0.0);
    }
}

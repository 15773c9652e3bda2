//! The quantities that govern recovery for orbit measurement matrices:
//! orbit-column constants, restricted isometry constants by support
//! enumeration, bounded-orthonormal-system constants, d_max, and the
//! measurement-count formulas.

use itertools::Itertools;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{CosetPartition, FiniteGroup, GroupKind};
use crate::linalg::{
    binomial, hermitian_spectral_norm, max_abs_diff, top_singular_value_squared, CMatrix, CVector,
};
use crate::rep::{BlockStructure, Representation};
use crate::rng::rng_from_seed;
use crate::sensing::{GeneratingVector, MeasurementEnsemble, SamplingSet};

/// Budget for exhaustive support / subset enumerations.
pub const ENUMERATION_BUDGET: u128 = 2_000_000;

/// The squared orbit-column constant of a representation over one sampling
/// set: per coordinate j, the squared operator norm of
/// y -> (<e_j, pi(g) y>)_{g in Omega}.
#[derive(Debug, Clone)]
pub struct ConstantReport {
    pub value: f64,
    pub argmax_coordinate: usize,
    pub per_coordinate: Vec<f64>,
}

/// Exact restricted isometry constant from exhaustive support enumeration.
#[derive(Debug, Clone)]
pub struct RipReport {
    pub s: usize,
    pub delta: f64,
    pub witness_support: Vec<usize>,
    pub supports_checked: u64,
}

/// Squared operator norms sup_{||y||=1} sum_{g in Omega} |<e_j, pi(g) y>|^2,
/// maximized over the coordinate j. Requires a nonempty set of distinct
/// sampling points.
pub fn orbit_column_constant(rep: &Representation, omega: &[usize]) -> Result<ConstantReport> {
    if omega.is_empty() {
        return Err(Error::InvalidArgument(
            "orbit_column_constant needs a nonempty sampling set".into(),
        ));
    }
    let mut sorted = omega.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != omega.len() {
        return Err(Error::InvalidArgument(
            "orbit_column_constant is defined for sets of distinct sampling points".into(),
        ));
    }
    let order = rep.group().order();
    if sorted.iter().any(|&g| g >= order) {
        return Err(Error::InvalidArgument("sampling index out of range".into()));
    }
    let n = rep.degree();
    let m = omega.len();
    // |<e_j, pi(g) y>| = |(pi(g) y)_j|, so coordinate j sees the matrix whose
    // rows are the j-th rows of pi(g), g in Omega.
    let per_coordinate: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let mut rows = CMatrix::zeros(m, n);
            for (r, &g) in omega.iter().enumerate() {
                let mat = rep.matrix(g);
                for c in 0..n {
                    rows[(r, c)] = mat[(j, c)];
                }
            }
            top_singular_value_squared(&rows)
        })
        .collect();
    let (argmax_coordinate, &value) = per_coordinate
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.partial_cmp(b).unwrap().then(ib.cmp(ia)))
        .expect("n >= 1");
    Ok(ConstantReport {
        value,
        argmax_coordinate,
        per_coordinate,
    })
}

/// Convenience wrapper: validate a [`SamplingSet`] and compute the constant.
pub fn orbit_column_constant_for(
    rep: &Representation,
    omega: &SamplingSet,
) -> Result<ConstantReport> {
    if !omega.has_distinct_elements() {
        return Err(Error::InvalidArgument(
            "orbit-column constant requires distinct sampling points".into(),
        ));
    }
    orbit_column_constant(rep, omega.indices())
}

/// A family of sampling sets over which to take the worst constant.
pub enum OmegaFamily<'a> {
    /// Every subset of size m (guarded: only for |G| <= 16).
    AllSubsetsOfSize(usize),
    /// Every nonempty coset-admissible set of the partition.
    CosetAdmissible(&'a CosetPartition),
    /// `count` random subsets of uniformly random sizes (lower bound).
    Sampled { count: usize, seed: u64 },
}

/// Maximum of [`orbit_column_constant`] over a family of sampling sets.
/// Exact for the enumerable families, a lower bound for sampled ones.
pub fn constant_over_family(rep: &Representation, family: &OmegaFamily<'_>) -> Result<f64> {
    let order = rep.group().order();
    let mut worst: f64 = 0.0;
    match family {
        OmegaFamily::AllSubsetsOfSize(m) => {
            if order > 16 {
                return Err(Error::BudgetExceeded(format!(
                    "all-subsets enumeration is limited to |G| <= 16, got {order}"
                )));
            }
            if *m == 0 || *m > order {
                return Err(Error::InvalidArgument(format!(
                    "subset size {m} out of range 1..={order}"
                )));
            }
            for omega in (0..order).combinations(*m) {
                worst = worst.max(orbit_column_constant(rep, &omega)?.value);
            }
        }
        OmegaFamily::CosetAdmissible(partition) => {
            let total = crate::group::count_admissible_sets(partition)?;
            if total > ENUMERATION_BUDGET {
                return Err(Error::BudgetExceeded(format!(
                    "{total} admissible sets exceed the budget {ENUMERATION_BUDGET}"
                )));
            }
            // odometer over (|H|+1) choices per coset: skip-or-pick-one
            let cosets = partition.cosets();
            let mut choice = vec![0usize; cosets.len()];
            loop {
                let omega: Vec<usize> = choice
                    .iter()
                    .enumerate()
                    .filter(|&(_, &c)| c > 0)
                    .map(|(v, &c)| cosets[v][c - 1])
                    .collect();
                if !omega.is_empty() {
                    worst = worst.max(orbit_column_constant(rep, &omega)?.value);
                }
                let mut v = 0;
                loop {
                    if v == choice.len() {
                        return Ok(worst);
                    }
                    choice[v] += 1;
                    if choice[v] <= cosets[v].len() {
                        break;
                    }
                    choice[v] = 0;
                    v += 1;
                }
            }
        }
        OmegaFamily::Sampled { count, seed } => {
            use rand::seq::SliceRandom;
            use rand::Rng;
            let mut rng = rng_from_seed(*seed);
            for _ in 0..*count {
                let m = rng.random_range(1..=order);
                let mut all: Vec<usize> = (0..order).collect();
                all.partial_shuffle(&mut rng, m);
                let omega = &all[..m];
                worst = worst.max(orbit_column_constant(rep, omega)?.value);
            }
        }
    }
    Ok(worst)
}

/// |Omega_1|: the number of distinct first coordinates k among the affine
/// sampling points (k, l).
pub fn affine_omega1(group: &FiniteGroup, omega: &[usize]) -> Result<usize> {
    match group.kind() {
        Some((GroupKind::Affine, _)) => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "affine_omega1 requires an affine group, got {group}"
            )))
        }
    }
    let mut ks: Vec<usize> = omega
        .iter()
        .map(|&e| group.affine_coords(e).map(|(k, _)| k))
        .collect::<Result<_>>()?;
    ks.sort_unstable();
    ks.dedup();
    Ok(ks.len())
}

/// Exact restricted isometry constant delta_s of a matrix by enumerating all
/// size-s supports, delta_s = max_S || Phi_S* Phi_S - I ||.
pub fn rip_constant(phi: &CMatrix, s: usize) -> Result<RipReport> {
    let n = phi.ncols();
    if s == 0 || s > n {
        return Err(Error::InvalidArgument(format!(
            "sparsity {s} out of range 1..={n}"
        )));
    }
    let count = binomial(n, s);
    if count > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded(format!(
            "C({n},{s}) = {count} supports exceed the budget {ENUMERATION_BUDGET}; reduce n or s"
        )));
    }
    let supports: Vec<Vec<usize>> = (0..n).combinations(s).collect();
    let results: Vec<f64> = supports
        .par_iter()
        .map(|support| {
            let sub = phi.select_columns(support.iter());
            let mut gram = sub.adjoint() * sub;
            for i in 0..s {
                gram[(i, i)] -= Complex64::new(1.0, 0.0);
            }
            hermitian_spectral_norm(&gram)
        })
        .collect();
    let (best_idx, &delta) = results
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.partial_cmp(b).unwrap().then(ib.cmp(ia)))
        .expect("at least one support");
    Ok(RipReport {
        s,
        delta,
        witness_support: supports[best_idx].clone(),
        supports_checked: supports.len() as u64,
    })
}

/// The BOS constant of the orbit system: max over coordinates j and group
/// elements h of |<pi(h) xi, B e_j>|.
pub fn bos_constant(rep: &Representation, xi: &GeneratingVector, basis: &CMatrix) -> Result<f64> {
    let n = rep.degree();
    if xi.len() != n || basis.nrows() != n || basis.ncols() != n {
        return Err(Error::DimensionMismatch {
            context: "bos_constant".into(),
            expected: n,
            got: xi.len().max(basis.nrows()),
        });
    }
    let bh = basis.adjoint();
    let mut worst: f64 = 0.0;
    for h in rep.group().elements() {
        let v = rep.apply(h, xi.values());
        let w = &bh * &v;
        worst = worst.max(w.iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    Ok(worst)
}

/// The probability-(1 - delta) ceiling for [`bos_constant`]:
/// sqrt(2 d_max ln(2 n |G| / delta)).
pub fn bos_tail_threshold(d_max: usize, n: usize, group_order: usize, delta: f64) -> f64 {
    (2.0 * d_max as f64 * ((2.0 * n as f64 * group_order as f64) / delta).ln()).sqrt()
}

/// Largest block degree among blocks with multiplicity > 1, else 1.
pub fn d_max(structure: &BlockStructure) -> usize {
    structure.d_max()
}

/// Column-orthonormality defect of (1/sqrt(|G|)) (pi(g) xi)*_{g in G} B,
/// i.e. the max-norm distance of the normalized Gram matrix from the identity.
pub fn column_orthonormality_defect(
    rep: &Representation,
    xi: &GeneratingVector,
    basis: &CMatrix,
) -> Result<f64> {
    let n = rep.degree();
    if xi.len() != n || basis.nrows() != n {
        return Err(Error::DimensionMismatch {
            context: "column_orthonormality_defect".into(),
            expected: n,
            got: xi.len(),
        });
    }
    let order = rep.group().order();
    let mut rows = CMatrix::zeros(order, n);
    for g in rep.group().elements() {
        let v = rep.apply(g, xi.values());
        for j in 0..n {
            rows[(g, j)] = v[j].conj();
        }
    }
    let mat = rows * basis;
    let gram = mat.adjoint() * &mat / Complex64::new(order as f64, 0.0);
    Ok(max_abs_diff(&gram, &CMatrix::identity(n, n)))
}

fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "{name} must lie in (0, 1), got {v}"
        )));
    }
    Ok(())
}

fn ceil_to_u64(value: f64, context: &str) -> Result<u64> {
    if !value.is_finite() || value < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "{context} evaluated to {value}"
        )));
    }
    Ok(value.ceil() as u64)
}

/// Measurement count sufficient for delta_s <= delta at confidence 1 - 2 eta
/// under a fixed admissible sampling set:
/// ceil( c delta^-2 s C max{ (ln(s C))^2 ln(n) ln(4n), ln(1/eta) } ).
pub fn thm1_measurement_bound(
    s: usize,
    n: usize,
    c_const: f64,
    delta: f64,
    eta: f64,
    c: f64,
) -> Result<u64> {
    if s == 0 || n == 0 {
        return Err(Error::InvalidArgument("s and n must be positive".into()));
    }
    if c_const <= 0.0 || c <= 0.0 {
        return Err(Error::InvalidArgument("constants must be positive".into()));
    }
    check_unit_interval("delta", delta)?;
    check_unit_interval("eta", eta)?;
    let sn = s as f64;
    let nn = n as f64;
    let log_term = (sn * c_const).ln().powi(2) * nn.ln() * (4.0 * nn).ln();
    let value = c * delta.powi(-2) * sn * c_const * log_term.max((1.0 / eta).ln());
    ceil_to_u64(value, "thm1 bound")
}

/// Measurement count sufficient for delta_s <= 3 delta at confidence 1 - eta
/// under uniformly random sampling points:
/// ceil( C delta^-2 s d_max ln(8|G|) ln(2/eta)
///       max{ ln(4s)^2 ln(8n) ln(delta^-2 s d_max ln(8|G|) ln(2/eta)), ln(2/eta) } ).
pub fn cor36_measurement_bound(
    s: usize,
    n: usize,
    group_order: usize,
    d_max: usize,
    delta: f64,
    eta: f64,
    c_big: f64,
) -> Result<u64> {
    if s == 0 || n == 0 || group_order == 0 || d_max == 0 {
        return Err(Error::InvalidArgument(
            "s, n, |G| and d_max must be positive".into(),
        ));
    }
    if c_big <= 0.0 {
        return Err(Error::InvalidArgument("constants must be positive".into()));
    }
    check_unit_interval("delta", delta)?;
    check_unit_interval("eta", eta)?;
    let sn = s as f64;
    let nn = n as f64;
    let gn = group_order as f64;
    let dm = d_max as f64;
    let base = delta.powi(-2) * sn * dm * (8.0 * gn).ln() * (2.0 / eta).ln();
    let log_term = (4.0 * sn).ln().powi(2) * (8.0 * nn).ln() * base.ln();
    let value = c_big * base * log_term.max((2.0 / eta).ln());
    ceil_to_u64(value, "cor36 bound")
}

/// Spot-check of the row identity sqrt(m) (Phi x)_r = <B x, pi(omega_r) xi>
/// on a handful of random inputs.
pub fn measurement_row_identity_defect(ensemble: &MeasurementEnsemble, probes: usize) -> f64 {
    use rand::Rng;
    let n = ensemble.cols();
    let mut rng = rng_from_seed(0x0e11);
    let mut worst: f64 = 0.0;
    for _ in 0..probes {
        let x = CVector::from_fn(n, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let y = ensemble.phi() * &x;
        let bx = ensemble.basis() * &x;
        let scale = (ensemble.rows() as f64).sqrt();
        for (r, &g) in ensemble.omega().indices().iter().enumerate() {
            let pv = ensemble.rep().apply(g, ensemble.xi().values());
            let ip: Complex64 = (0..n).map(|k| bx[k] * pv[k].conj()).sum();
            worst = worst.max((y[r] * scale - ip).norm());
        }
    }
    worst
}

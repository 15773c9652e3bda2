//! Randomized generating vectors, sampling sets, and assembly of the
//! measurement matrix (1/sqrt(m)) R_Omega (pi(g) xi)*_{g in G} B.

use std::fmt;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::fourier::dft_matrix;
use crate::group::{is_coset_admissible, CosetPartition, FiniteGroup};
use crate::linalg::{unit_phase, unitarity_defect, CMatrix, CVector, ONE};
use crate::rep::{BlockStructure, Representation, REP_TOL};
use crate::rng::rng_from_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    ComplexGaussian,
    Rademacher,
    Steinhaus,
    StructuredBlock,
    /// Caller-supplied values (library/bindings only; not a config scheme).
    Explicit,
}

impl Scheme {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "complex_gaussian" | "gaussian" => Ok(Scheme::ComplexGaussian),
            "rademacher" => Ok(Scheme::Rademacher),
            "steinhaus" => Ok(Scheme::Steinhaus),
            "structured_block" | "structured" => Ok(Scheme::StructuredBlock),
            other => Err(Error::Config(format!(
                "unknown generating-vector scheme '{other}'"
            ))),
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scheme::ComplexGaussian => "complex_gaussian",
            Scheme::Rademacher => "rademacher",
            Scheme::Steinhaus => "steinhaus",
            Scheme::StructuredBlock => "structured_block",
            Scheme::Explicit => "explicit",
        };
        write!(f, "{s}")
    }
}

/// A generating vector with its distribution provenance.
#[derive(Debug, Clone)]
pub struct GeneratingVector {
    values: CVector,
    scheme: Scheme,
    seed: u64,
    block: Option<BlockStructure>,
}

impl GeneratingVector {
    /// Wrap caller-supplied values.
    pub fn explicit(values: CVector) -> GeneratingVector {
        GeneratingVector {
            values,
            scheme: Scheme::Explicit,
            seed: 0,
            block: None,
        }
    }

    pub fn values(&self) -> &CVector {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.len() == 0
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn block(&self) -> Option<&BlockStructure> {
        self.block.as_ref()
    }
}

/// Draw a generating vector. All schemes are entrywise independent with mean 0
/// and unit variance except `StructuredBlock`, which follows the per-block
/// torus construction: copy kappa < m of block tau is sqrt(d) eps_{tau,kappa}
/// e_kappa, the last copy spreads sqrt(d/(d-m+1)) eps over coordinates m..=d.
pub fn sample_generating_vector(
    n: usize,
    scheme: Scheme,
    seed: u64,
    block: Option<&BlockStructure>,
) -> Result<GeneratingVector> {
    let mut rng = rng_from_seed(seed);
    let values = match scheme {
        Scheme::Explicit => {
            return Err(Error::InvalidArgument(
                "explicit vectors come from GeneratingVector::explicit, not the sampler".into(),
            ))
        }
        Scheme::ComplexGaussian => CVector::from_fn(n, |_, _| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re, im) / (2.0f64).sqrt()
        }),
        Scheme::Rademacher => CVector::from_fn(n, |_, _| {
            if rng.random::<bool>() {
                ONE
            } else {
                -ONE
            }
        }),
        Scheme::Steinhaus => CVector::from_fn(n, |_, _| unit_phase(rng.random::<f64>())),
        Scheme::StructuredBlock => {
            let structure = block.ok_or_else(|| {
                Error::InvalidArgument("structured_block scheme requires a block structure".into())
            })?;
            if structure.total_degree() != n {
                return Err(Error::DimensionMismatch {
                    context: "structured generating vector".into(),
                    expected: n,
                    got: structure.total_degree(),
                });
            }
            if !structure.is_subregular() {
                return Err(Error::InvalidArgument(
                    "structured_block requires multiplicity <= degree in every block".into(),
                ));
            }
            let mut values = CVector::zeros(n);
            let mut offset = 0usize;
            for spec in structure.blocks() {
                let (d, m) = (spec.degree, spec.multiplicity);
                let eps: Vec<Complex64> =
                    (0..d).map(|_| unit_phase(rng.random::<f64>())).collect();
                for kappa in 1..=m {
                    if kappa < m {
                        values[offset + (kappa - 1) * d + (kappa - 1)] =
                            eps[kappa - 1] * (d as f64).sqrt();
                    } else {
                        let scale = (d as f64 / (d - m + 1) as f64).sqrt();
                        for iota in m..=d {
                            values[offset + (kappa - 1) * d + (iota - 1)] =
                                eps[iota - 1] * scale;
                        }
                    }
                }
                offset += d * m;
            }
            values
        }
    };
    Ok(GeneratingVector {
        values,
        scheme,
        seed,
        block: block.cloned(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaMode {
    FixedSet,
    UniformIid,
    CosetAdmissible,
}

impl OmegaMode {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "fixed_set" | "fixed" => Ok(OmegaMode::FixedSet),
            "uniform_iid" | "uniform" => Ok(OmegaMode::UniformIid),
            "coset_admissible" => Ok(OmegaMode::CosetAdmissible),
            other => Err(Error::Config(format!("unknown sampling mode '{other}'"))),
        }
    }
}

impl fmt::Display for OmegaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OmegaMode::FixedSet => "fixed_set",
            OmegaMode::UniformIid => "uniform_iid",
            OmegaMode::CosetAdmissible => "coset_admissible",
        };
        write!(f, "{s}")
    }
}

/// An ordered sampling multiset of group-element indices.
#[derive(Debug, Clone)]
pub struct SamplingSet {
    indices: Vec<usize>,
    mode: OmegaMode,
    seed: Option<u64>,
}

impl SamplingSet {
    /// Wrap an explicit, caller-chosen set (distinct indices).
    pub fn explicit(indices: Vec<usize>) -> Result<SamplingSet> {
        let mut sorted = indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != indices.len() {
            return Err(Error::InvalidArgument(
                "fixed sampling sets must have distinct elements".into(),
            ));
        }
        Ok(SamplingSet {
            indices,
            mode: OmegaMode::FixedSet,
            seed: None,
        })
    }

    /// Wrap an explicit ordered multiset (duplicates allowed, as for
    /// with-replacement sampling).
    pub fn explicit_multiset(indices: Vec<usize>) -> SamplingSet {
        SamplingSet {
            indices,
            mode: OmegaMode::UniformIid,
            seed: None,
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn mode(&self) -> OmegaMode {
        self.mode
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Distinct-element modes hold sets; uniform_iid may repeat.
    pub fn has_distinct_elements(&self) -> bool {
        let mut sorted = self.indices.clone();
        sorted.sort_unstable();
        sorted.dedup();
        sorted.len() == self.indices.len()
    }
}

/// Sample a sampling set.
///
/// * `FixedSet` without a seed takes the first `m` elements in numbering
///   order; with a seed it draws a uniformly random m-subset.
/// * `UniformIid` draws m elements independently with replacement (seed
///   required).
/// * `CosetAdmissible` picks m distinct cosets and one element from each
///   (first cosets/smallest members without a seed).
pub fn sample_omega(
    group: &FiniteGroup,
    m: usize,
    mode: OmegaMode,
    seed: Option<u64>,
    partition: Option<&CosetPartition>,
) -> Result<SamplingSet> {
    let order = group.order();
    let indices = match mode {
        OmegaMode::FixedSet => {
            if m > order {
                return Err(Error::InvalidArgument(format!(
                    "fixed_set size {m} exceeds |G| = {order}"
                )));
            }
            match seed {
                None => (0..m).collect(),
                Some(s) => {
                    let mut rng = rng_from_seed(s);
                    let mut all: Vec<usize> = (0..order).collect();
                    all.partial_shuffle(&mut rng, m);
                    let mut chosen: Vec<usize> = all[..m].to_vec();
                    chosen.sort_unstable();
                    chosen
                }
            }
        }
        OmegaMode::UniformIid => {
            let s = seed.ok_or_else(|| Error::MissingSeed("uniform_iid sampling".into()))?;
            let mut rng = rng_from_seed(s);
            (0..m).map(|_| rng.random_range(0..order)).collect()
        }
        OmegaMode::CosetAdmissible => {
            let p = partition.ok_or_else(|| {
                Error::InvalidArgument("coset_admissible sampling requires a partition".into())
            })?;
            if p.group() != group {
                return Err(Error::InvalidArgument(
                    "partition belongs to a different group".into(),
                ));
            }
            if m > p.num_cosets() {
                return Err(Error::InvalidArgument(format!(
                    "coset_admissible size {m} exceeds the {} cosets",
                    p.num_cosets()
                )));
            }
            match seed {
                None => (0..m).map(|v| p.cosets()[v][0]).collect(),
                Some(s) => {
                    let mut rng = rng_from_seed(s);
                    let mut coset_ids: Vec<usize> = (0..p.num_cosets()).collect();
                    coset_ids.partial_shuffle(&mut rng, m);
                    let mut chosen: Vec<usize> = coset_ids[..m]
                        .iter()
                        .map(|&v| {
                            let coset = &p.cosets()[v];
                            coset[rng.random_range(0..coset.len())]
                        })
                        .collect();
                    chosen.sort_unstable();
                    chosen
                }
            }
        }
    };
    if mode == OmegaMode::CosetAdmissible {
        let p = partition.expect("checked above");
        debug_assert!(is_coset_admissible(&indices, p));
    }
    Ok(SamplingSet {
        indices,
        mode,
        seed,
    })
}

/// How the sparsity basis B is specified.
#[derive(Debug, Clone)]
pub enum BasisSpec {
    Identity,
    Dft,
    Unitary(CMatrix),
}

impl BasisSpec {
    pub fn materialize(&self, n: usize) -> Result<CMatrix> {
        let b = match self {
            BasisSpec::Identity => CMatrix::identity(n, n),
            BasisSpec::Dft => dft_matrix(n),
            BasisSpec::Unitary(m) => m.clone(),
        };
        if b.nrows() != n || b.ncols() != n {
            return Err(Error::DimensionMismatch {
                context: "basis matrix".into(),
                expected: n,
                got: b.nrows(),
            });
        }
        let defect = unitarity_defect(&b);
        if defect > REP_TOL {
            return Err(Error::NotUnitary {
                context: "basis matrix".into(),
                defect,
                tol: REP_TOL,
            });
        }
        Ok(b)
    }

    pub fn describe(&self) -> &'static str {
        match self {
            BasisSpec::Identity => "identity",
            BasisSpec::Dft => "dft",
            BasisSpec::Unitary(_) => "file",
        }
    }
}

/// The assembled measurement matrix with full provenance.
#[derive(Debug, Clone)]
pub struct MeasurementEnsemble {
    phi: CMatrix,
    rep: Representation,
    xi: GeneratingVector,
    omega: SamplingSet,
    basis: CMatrix,
    basis_kind: String,
    normalized: bool,
}

impl MeasurementEnsemble {
    pub fn phi(&self) -> &CMatrix {
        &self.phi
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn xi(&self) -> &GeneratingVector {
        &self.xi
    }

    pub fn omega(&self) -> &SamplingSet {
        &self.omega
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn basis_kind(&self) -> &str {
        &self.basis_kind
    }

    pub fn normalized(&self) -> bool {
        self.normalized
    }

    pub fn rows(&self) -> usize {
        self.phi.nrows()
    }

    pub fn cols(&self) -> usize {
        self.phi.ncols()
    }
}

/// Assemble Phi with rows (1/sqrt(m)) (pi(omega_r) xi)* B; duplicated
/// sampling points give duplicated rows.
pub fn build_measurement(
    rep: &Representation,
    xi: &GeneratingVector,
    omega: &SamplingSet,
    basis: &BasisSpec,
) -> Result<MeasurementEnsemble> {
    let n = rep.degree();
    if xi.len() != n {
        return Err(Error::DimensionMismatch {
            context: "generating vector vs representation degree".into(),
            expected: n,
            got: xi.len(),
        });
    }
    if omega.is_empty() {
        return Err(Error::InvalidArgument("empty sampling set".into()));
    }
    if let Some(&bad) = omega.indices().iter().find(|&&g| g >= rep.group().order()) {
        return Err(Error::InvalidArgument(format!(
            "sampling index {bad} out of range for |G| = {}",
            rep.group().order()
        )));
    }
    let b = basis.materialize(n)?;
    let m = omega.len();
    let scale = 1.0 / (m as f64).sqrt();
    let mut orbit_rows = CMatrix::zeros(m, n);
    for (r, &g) in omega.indices().iter().enumerate() {
        let v = rep.apply(g, xi.values());
        for j in 0..n {
            orbit_rows[(r, j)] = v[j].conj() * scale;
        }
    }
    let phi = orbit_rows * &b;
    Ok(MeasurementEnsemble {
        phi,
        rep: rep.clone(),
        xi: xi.clone(),
        omega: omega.clone(),
        basis: b,
        basis_kind: basis.describe().to_string(),
        normalized: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{block_diagonal, irreducible_catalog, BlockSpec};
    use crate::rng::derive_seed;

    #[test]
    fn steinhaus_entries_are_unimodular() {
        let xi = sample_generating_vector(17, Scheme::Steinhaus, 1, None).unwrap();
        assert!(xi.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-14));
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        for scheme in [Scheme::ComplexGaussian, Scheme::Rademacher, Scheme::Steinhaus] {
            let a = sample_generating_vector(32, scheme, 9, None).unwrap();
            let b = sample_generating_vector(32, scheme, 9, None).unwrap();
            assert_eq!(a.values(), b.values());
            let c = sample_generating_vector(32, scheme, 10, None).unwrap();
            assert_ne!(a.values(), c.values());
        }
        let g = FiniteGroup::cyclic(12).unwrap();
        let a = sample_omega(&g, 6, OmegaMode::UniformIid, Some(4), None).unwrap();
        let b = sample_omega(&g, 6, OmegaMode::UniformIid, Some(4), None).unwrap();
        assert_eq!(a.indices(), b.indices());
    }

    #[test]
    fn structured_unimodular_when_all_blocks_are_scalar() {
        let blocks: Vec<BlockSpec> = (0..6)
            .map(|i| BlockSpec { irrep: i, degree: 1, multiplicity: 1 })
            .collect();
        let structure = BlockStructure::new(blocks).unwrap();
        let xi = sample_generating_vector(6, Scheme::StructuredBlock, 3, Some(&structure)).unwrap();
        assert!(xi.values().iter().all(|z| (z.norm() - 1.0).abs() < 1e-14));
    }

    #[test]
    fn structured_block_norms_and_orthogonality() {
        let structure =
            BlockStructure::new(vec![BlockSpec { irrep: 0, degree: 3, multiplicity: 2 }]).unwrap();
        let xi = sample_generating_vector(6, Scheme::StructuredBlock, 7, Some(&structure)).unwrap();
        let v = xi.values();
        let copy1 = v.rows(0, 3).into_owned();
        let copy2 = v.rows(3, 3).into_owned();
        assert!((copy1.norm_squared() - 3.0).abs() < 1e-12);
        assert!((copy2.norm_squared() - 3.0).abs() < 1e-12);
        let ip: Complex64 = (0..3).map(|i| copy1[i] * copy2[i].conj()).sum();
        assert!(ip.norm() < 1e-14);
        // support equals the beta image
        let supp: Vec<usize> = (0..6).filter(|&i| v[i].norm() > 0.0).map(|i| i + 1).collect();
        assert_eq!(supp, structure.beta_image());
    }

    #[test]
    fn structured_support_matches_beta_image_on_random_structures() {
        use rand::Rng;
        let mut rng = rng_from_seed(13);
        for trial in 0..25 {
            let mut blocks = Vec::new();
            let mut total = 0usize;
            while total < 12 {
                let d = rng.random_range(1..=4usize);
                let m = rng.random_range(1..=d);
                blocks.push(BlockSpec { irrep: blocks.len(), degree: d, multiplicity: m });
                total += d * m;
            }
            let structure = BlockStructure::new(blocks).unwrap();
            let n = structure.total_degree();
            let xi =
                sample_generating_vector(n, Scheme::StructuredBlock, trial, Some(&structure))
                    .unwrap();
            let supp: Vec<usize> = (0..n)
                .filter(|&i| xi.values()[i].norm() > 0.0)
                .map(|i| i + 1)
                .collect();
            assert_eq!(supp, structure.beta_image());
            // every block has squared norm exactly d
            for (t, spec) in structure.blocks().iter().enumerate() {
                let off: usize = structure
                    .blocks()[..t]
                    .iter()
                    .map(|b| b.degree * b.multiplicity)
                    .sum();
                for kappa in 0..spec.multiplicity {
                    let seg = xi
                        .values()
                        .rows(off + kappa * spec.degree, spec.degree)
                        .into_owned();
                    assert!((seg.norm_squared() - spec.degree as f64).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn structured_rejects_bad_structures() {
        let structure =
            BlockStructure::new(vec![BlockSpec { irrep: 0, degree: 1, multiplicity: 2 }]).unwrap();
        assert!(
            sample_generating_vector(2, Scheme::StructuredBlock, 0, Some(&structure)).is_err()
        );
        assert!(sample_generating_vector(4, Scheme::StructuredBlock, 0, None).is_err());
    }

    #[test]
    fn unit_variance_statistics() {
        // empirical mean within 4 sigma of 0, variance within 5% of 1
        let n = 100_000;
        for scheme in [Scheme::ComplexGaussian, Scheme::Rademacher, Scheme::Steinhaus] {
            let xi = sample_generating_vector(n, scheme, 123, None).unwrap();
            let mean: Complex64 = xi.values().iter().sum::<Complex64>() / n as f64;
            assert!(mean.norm() < 4.0 / (n as f64).sqrt(), "{scheme}: mean {mean}");
            let var: f64 = xi.values().iter().map(|z| z.norm_sqr()).sum::<f64>() / n as f64;
            assert!((var - 1.0).abs() < 0.05, "{scheme}: var {var}");
        }
    }

    #[test]
    fn omega_modes() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let full = sample_omega(&g, 6, OmegaMode::FixedSet, None, None).unwrap();
        assert_eq!(full.indices(), &[0, 1, 2, 3, 4, 5]);
        assert!(sample_omega(&g, 7, OmegaMode::FixedSet, None, None).is_err());
        assert!(sample_omega(&g, 3, OmegaMode::UniformIid, None, None).is_err());

        let p = g.coset_partition(&[0, 3]).unwrap();
        let omega = sample_omega(&g, 3, OmegaMode::CosetAdmissible, Some(5), Some(&p)).unwrap();
        assert_eq!(omega.len(), 3);
        assert!(is_coset_admissible(omega.indices(), &p));
        assert!(sample_omega(&g, 4, OmegaMode::CosetAdmissible, Some(5), Some(&p)).is_err());

        let rand_set = sample_omega(&g, 4, OmegaMode::FixedSet, Some(8), None).unwrap();
        assert!(rand_set.has_distinct_elements());
        assert_eq!(rand_set.len(), 4);
    }

    #[test]
    fn uniform_iid_frequencies() {
        let g = FiniteGroup::cyclic(8).unwrap();
        let omega = sample_omega(&g, 1000, OmegaMode::UniformIid, Some(21), None).unwrap();
        let mut counts = [0usize; 8];
        for &i in omega.indices() {
            counts[i] += 1;
        }
        // 3 sigma of Binomial(1000, 1/8) is about 31
        for (i, &c) in counts.iter().enumerate() {
            assert!((c as i64 - 125).abs() <= 31, "element {i} frequency {c}");
        }
    }

    #[test]
    fn trivial_rep_rows_all_equal_xi() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let rep = Representation::trivial(&g, 4).unwrap();
        let xi = sample_generating_vector(4, Scheme::Steinhaus, 2, None).unwrap();
        let omega = sample_omega(&g, 5, OmegaMode::FixedSet, None, None).unwrap();
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).unwrap();
        let scale = 1.0 / (5.0f64).sqrt();
        for r in 0..5 {
            for j in 0..4 {
                assert!((ens.phi()[(r, j)] - xi.values()[j].conj() * scale).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn measurement_rows_are_orbit_inner_products() {
        // spot-check (sqrt(m) Phi x)_r = <B x, pi(omega_r) xi> on random x
        let g = FiniteGroup::dihedral(4).unwrap();
        let rep = Representation::left_regular(&g);
        let xi = sample_generating_vector(8, Scheme::ComplexGaussian, 3, None).unwrap();
        let omega = sample_omega(&g, 5, OmegaMode::FixedSet, Some(1), None).unwrap();
        let mut rng = rng_from_seed(17);
        let b = crate::linalg::random_unitary(8, &mut rng);
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Unitary(b.clone())).unwrap();
        for _ in 0..5 {
            let x = CVector::from_fn(8, |_, _| {
                Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
            });
            let y = ens.phi() * &x;
            let bx = &b * &x;
            for (r, &gidx) in omega.indices().iter().enumerate() {
                let pv = rep.apply(gidx, xi.values());
                let ip: Complex64 = (0..8).map(|k| bx[k] * pv[k].conj()).sum();
                assert!((y[r] * (5.0f64).sqrt() - ip).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn circulant_rows_match_group_convolution() {
        // left regular on Z/n with B = I: <x, L(k) xi> = (x * xi~)(k)
        let g = FiniteGroup::cyclic(8).unwrap();
        let rep = Representation::left_regular(&g);
        let xi = sample_generating_vector(8, Scheme::ComplexGaussian, 11, None).unwrap();
        let omega = sample_omega(&g, 8, OmegaMode::FixedSet, None, None).unwrap();
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).unwrap();
        let mut rng = rng_from_seed(12);
        let x = CVector::from_fn(8, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        // <x, L(k) xi> = sum_j x(j) xi~(k - j) with xi~(g) = conj(xi(g^{-1})),
        // which under the group convolution (x * w)(k) = sum_h x(h) w(k^{-1} h)
        // is x convolved with the entrywise conjugate of xi.
        let w = CVector::from_fn(8, |j, _| xi.values()[j].conj());
        let conv = crate::fourier::group_convolve(&x, &w, &g).unwrap();
        let y = ens.phi() * &x;
        for k in 0..8 {
            let direct: Complex64 = (0..8)
                .map(|j| x[j] * xi.values()[g.inv(g.mul(g.inv(j), k))].conj())
                .sum();
            assert!((conv[k] - direct).norm() < 1e-10);
            assert!((y[k] * (8.0f64).sqrt() - conv[k]).norm() < 1e-10);
        }
    }

    #[test]
    fn duplicated_sampling_points_duplicate_rows() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let rep = Representation::left_regular(&g);
        let xi = sample_generating_vector(4, Scheme::Steinhaus, 5, None).unwrap();
        let omega = SamplingSet {
            indices: vec![1, 1, 3],
            mode: OmegaMode::UniformIid,
            seed: None,
        };
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).unwrap();
        for j in 0..4 {
            assert_eq!(ens.phi()[(0, j)], ens.phi()[(1, j)]);
        }
    }

    #[test]
    fn measurement_linearity() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let catalog = irreducible_catalog(&g).unwrap();
        let rep = block_diagonal(&[
            (catalog[0].clone(), 1),
            (catalog.iter().find(|r| r.degree() == 2).unwrap().clone(), 2),
        ])
        .unwrap();
        let n = rep.degree();
        let xi = sample_generating_vector(
            n,
            Scheme::StructuredBlock,
            derive_seed(5, &[1]),
            rep.block(),
        )
        .unwrap();
        let omega = sample_omega(&g, 4, OmegaMode::UniformIid, Some(2), None).unwrap();
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Dft).unwrap();
        let mut rng = rng_from_seed(23);
        let x = CVector::from_fn(n, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let y = CVector::from_fn(n, |_, _| {
            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        let a = Complex64::new(0.4, 1.0);
        let c = Complex64::new(-1.1, 0.2);
        let lhs = ens.phi() * (&x * a + &y * c);
        let rhs = (ens.phi() * &x) * a + (ens.phi() * &y) * c;
        assert!((lhs - rhs).iter().all(|z| z.norm() < 1e-12));
    }

    #[test]
    fn full_orbit_frobenius_identity() {
        // with Omega = G and 1/sqrt(|G|) normalization, ||Phi||_F = ||xi||
        let g = FiniteGroup::dihedral(4).unwrap();
        let rep = Representation::left_regular(&g);
        let xi = sample_generating_vector(8, Scheme::ComplexGaussian, 6, None).unwrap();
        let omega = sample_omega(&g, 8, OmegaMode::FixedSet, None, None).unwrap();
        let mut rng = rng_from_seed(31);
        let b = crate::linalg::random_unitary(8, &mut rng);
        let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Unitary(b)).unwrap();
        let frob: f64 = ens.phi().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!((frob - xi.values().norm()).abs() < 1e-10);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let rep = Representation::left_regular(&g);
        let xi = sample_generating_vector(3, Scheme::Steinhaus, 0, None).unwrap();
        let omega = sample_omega(&g, 2, OmegaMode::FixedSet, None, None).unwrap();
        assert!(build_measurement(&rep, &xi, &omega, &BasisSpec::Identity).is_err());
    }
}

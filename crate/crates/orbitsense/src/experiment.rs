//! Config-driven experiment commands: invariant verification, constant
//! tables, RIP estimation, the failure counterexamples, phase transitions,
//! and measurement-bound tables. All randomized work derives per-trial seeds
//! from the master seed, so identical configs reproduce byte-identical output
//! (the timestamp header and runtime columns are suppressed by
//! `no_timestamp`).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analysis::{
    affine_omega1, bos_constant, bos_tail_threshold, column_orthonormality_defect,
    cor36_measurement_bound, measurement_row_identity_defect, orbit_column_constant,
    rip_constant, thm1_measurement_bound,
};
use crate::config::{
    BasisKind, ConjugateBy, ExperimentConfig, ExperimentKind, Realization, ResolvedSetup,
};
use crate::error::{Error, Result};
use crate::fourier::{classical_dft, classical_idft, group_fourier, group_inverse_fourier,
    plancherel_pairing};
use crate::linalg::{unit_phase, unitarity_defect, CVector};
use crate::recovery::{
    basis_pursuit, iht, l0_norm, l1_norm, omp, BasisPursuitOptions, RecoveryResult, SolverTag,
};
use crate::rep::{
    irreducible_catalog, realization_transform_u, schur_orthogonality_defect,
    subrow_dichotomy_defect, Representation, REP_TOL,
};
use crate::rng::{derive_seed, rng_from_seed};
use crate::sensing::{
    build_measurement, sample_generating_vector, sample_omega, BasisSpec, OmegaMode, SamplingSet,
    Scheme,
};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub no_timestamp: bool,
    pub threads: Option<usize>,
}

/// Run the experiment described by `config`, honoring CLI overrides, and
/// write the result to the configured output (stdout if none).
pub fn run(mut config: ExperimentConfig, opts: &RunOptions) -> Result<()> {
    if let Some(seed) = opts.seed {
        config.master_seed = seed;
    }
    let body = dispatch(&config, opts.no_timestamp)?;
    let mut text = String::new();
    if !opts.no_timestamp {
        let ts = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let _ = writeln!(text, "# generated_unix = {ts}");
    }
    text.push_str(&body);
    match opts.out.as_ref().or(config.out.as_ref()) {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Produce the output body for a config (no timestamp header).
pub fn dispatch(config: &ExperimentConfig, no_timestamp: bool) -> Result<String> {
    match config.kind {
        ExperimentKind::Verify => cmd_verify(config),
        ExperimentKind::Constant => cmd_constant(config),
        ExperimentKind::Rip => cmd_rip(config),
        ExperimentKind::Counterexample => cmd_counterexample(config),
        ExperimentKind::PhaseTransition => cmd_phase_transition(config, no_timestamp),
        ExperimentKind::Bound => cmd_bound(config),
    }
}

fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

fn provenance_prefix(config: &ExperimentConfig) -> String {
    format!(
        "{}({}),{},{},{},{},{}",
        config.group_kind,
        config.group_param,
        config.rep_descriptor(),
        config.basis_descriptor(),
        config.scheme,
        config.omega_mode,
        config.master_seed
    )
}

const PROVENANCE_HEADER: &str =
    "group,representation,basis,xi_scheme,omega_mode,master_seed";

// ---------------------------------------------------------------------------
// verify

struct CheckLog {
    lines: Vec<String>,
    failures: Vec<String>,
}

impl CheckLog {
    fn new() -> Self {
        CheckLog {
            lines: Vec::new(),
            failures: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, outcome: std::result::Result<String, String>) {
        match outcome {
            Ok(detail) if detail.is_empty() => self.lines.push(format!("ok   {name}")),
            Ok(detail) => self.lines.push(format!("ok   {name} ({detail})")),
            Err(detail) => {
                self.lines.push(format!("FAIL {name}: {detail}"));
                self.failures.push(name.to_string());
            }
        }
    }

    fn check_tol(&mut self, name: &str, value: f64, tol: f64) {
        if value <= tol {
            self.record(name, Ok(format!("{value:.3e} <= {tol:.1e}")));
        } else {
            self.record(name, Err(format!("{value:.3e} > {tol:.1e}")));
        }
    }
}

/// Run every invariant suite that applies to the configured setup. Exits
/// through an `InvariantViolation` error naming the failed checks.
pub fn cmd_verify(config: &ExperimentConfig) -> Result<String> {
    let mut log = CheckLog::new();

    let setup = match config.resolve() {
        Ok(s) => s,
        Err(e) => {
            log.record("construction", Err(e.to_string()));
            let mut out = log.lines.join("\n");
            out.push('\n');
            out.push_str("verify: FAILED (construction)\n");
            print_report(&out);
            return Err(Error::InvariantViolation(
                "construction failed; see report".into(),
            ));
        }
    };
    let ResolvedSetup {
        group,
        rep,
        basis,
        partition,
    } = &setup;

    log.record(
        "group_axioms",
        group
            .verify_associativity()
            .map(|_| format!("|G| = {}", group.order()))
            .map_err(|e| e.to_string()),
    );

    log.check_tol("representation_unitarity", rep.unitarity_defect(), REP_TOL);
    log.check_tol(
        "representation_homomorphism",
        rep.homomorphism_defect(),
        REP_TOL,
    );

    match basis.materialize(rep.degree()) {
        Ok(b) => {
            log.check_tol("basis_unitarity", unitarity_defect(&b), REP_TOL);

            match irreducible_catalog(group) {
                Ok(catalog) => {
                    let sum_sq: usize = catalog.iter().map(|r| r.degree().pow(2)).sum();
                    log.record(
                        "catalog_completeness",
                        if sum_sq == group.order() {
                            Ok(format!("sum d^2 = {sum_sq}"))
                        } else {
                            Err(format!("sum d^2 = {sum_sq} != |G| = {}", group.order()))
                        },
                    );
                    let mut worst: f64 = 0.0;
                    for i in 0..catalog.len() {
                        worst = worst
                            .max(schur_orthogonality_defect(&catalog[i], &catalog[i], true));
                        for j in i + 1..catalog.len() {
                            worst = worst.max(schur_orthogonality_defect(
                                &catalog[i],
                                &catalog[j],
                                false,
                            ));
                        }
                    }
                    log.check_tol("schur_orthogonality", worst, 1e-8);

                    let mut rng = rng_from_seed(derive_seed(config.master_seed, &[101]));
                    let mut roundtrip: f64 = 0.0;
                    let mut plancherel: f64 = 0.0;
                    for _ in 0..5 {
                        use rand::Rng;
                        let f = CVector::from_fn(group.order(), |_, _| {
                            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                        });
                        let h = CVector::from_fn(group.order(), |_, _| {
                            Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
                        });
                        let fc = group_fourier(&f, group, &catalog)?;
                        let hc = group_fourier(&h, group, &catalog)?;
                        let back = group_inverse_fourier(&fc);
                        roundtrip = roundtrip
                            .max((&back - &f).iter().map(|z| z.norm()).fold(0.0, f64::max));
                        let direct: Complex64 =
                            (0..group.order()).map(|x| f[x] * h[x].conj()).sum();
                        plancherel =
                            plancherel.max((direct - plancherel_pairing(&fc, &hc)?).norm());
                    }
                    log.check_tol("fourier_roundtrip", roundtrip, 1e-10);
                    log.check_tol("plancherel", plancherel, 1e-10);
                }
                Err(e) => log.record("catalog_completeness", Err(e.to_string())),
            }

            if let Some(structure) = rep.block() {
                let u = realization_transform_u(structure);
                log.check_tol("u_transform_unitarity", unitarity_defect(&u), REP_TOL);
                log.check_tol(
                    "u_transform_subrows",
                    subrow_dichotomy_defect(&u, structure),
                    1e-10,
                );

                if structure.is_subregular() {
                    let xi_seed = derive_seed(config.master_seed, &[102]);
                    let xi = sample_generating_vector(
                        rep.degree(),
                        Scheme::StructuredBlock,
                        xi_seed,
                        Some(structure),
                    )?;
                    let mut norm_dev: f64 = 0.0;
                    let mut offset = 0usize;
                    for spec in structure.blocks() {
                        for _ in 0..spec.multiplicity {
                            let seg: f64 = (0..spec.degree)
                                .map(|i| xi.values()[offset + i].norm_sqr())
                                .sum();
                            norm_dev = norm_dev.max((seg - spec.degree as f64).abs());
                            offset += spec.degree;
                        }
                    }
                    log.check_tol("structured_xi_block_norms", norm_dev, 1e-12);
                    let defect = column_orthonormality_defect(rep, &xi, &b)?;
                    log.check_tol("bos_orthonormal_columns", defect, 1e-10);
                }
            }

            // measurement row identity on a small sampled ensemble
            let xi = sample_generating_vector(
                rep.degree(),
                match config.scheme {
                    Scheme::StructuredBlock
                        if rep.block().is_none_or(|s| !s.is_subregular()) =>
                    {
                        Scheme::Steinhaus
                    }
                    s => s,
                },
                derive_seed(config.master_seed, &[103]),
                rep.block(),
            )?;
            let m = group.order().clamp(1, 8);
            let omega = sample_omega(
                group,
                m,
                OmegaMode::FixedSet,
                Some(derive_seed(config.master_seed, &[104])),
                partition.as_ref(),
            )?;
            let ens = build_measurement(rep, &xi, &omega, basis)?;
            log.check_tol(
                "measurement_row_identity",
                measurement_row_identity_defect(&ens, 3),
                1e-10,
            );
        }
        Err(e) => log.record("basis_unitarity", Err(e.to_string())),
    }

    let mut out = log.lines.join("\n");
    out.push('\n');
    if log.failures.is_empty() {
        out.push_str("verify: all checks passed\n");
        Ok(out)
    } else {
        out.push_str(&format!("verify: FAILED ({})\n", log.failures.join(", ")));
        print_report(&out);
        Err(Error::InvariantViolation(format!(
            "failed checks: {}",
            log.failures.join(", ")
        )))
    }
}

fn print_report(text: &str) {
    eprint!("{text}");
}

// ---------------------------------------------------------------------------
// constant

/// The theoretical ceiling for the configured representation, when recognized.
fn recognized_bound(
    config: &ExperimentConfig,
    setup: &ResolvedSetup,
    omega: &[usize],
) -> Option<f64> {
    let order = setup.group.order() as f64;
    if config.conjugate_by == ConjugateBy::BlockU {
        // bound applies to the U-conjugated block-diagonal realization
        if let Realization::BlockDiagonal { .. } = config.realization {
            // the pre-conjugation structure is not kept on the rep; rebuild it
            let base = ExperimentConfig {
                conjugate_by: ConjugateBy::None,
                ..config.clone()
            };
            if let Ok(s) = base.resolve() {
                if let Some(structure) = s.rep.block() {
                    return Some(
                        order / s.rep.degree() as f64
                            * structure.max_ceil_mult_over_degree() as f64,
                    );
                }
            }
        }
        return None;
    }
    if config.conjugate_by != ConjugateBy::None {
        return None;
    }
    match &config.realization {
        Realization::LeftRegular => Some(1.0),
        Realization::Trivial { .. } => Some(omega.len() as f64),
        Realization::Affine => affine_omega1(&setup.group, omega).ok().map(|o1| o1 as f64),
        Realization::Induced { .. } if config.omega_mode == OmegaMode::CosetAdmissible => {
            Some(1.0)
        }
        Realization::BlockDiagonal { blocks } if blocks.len() == 1 && blocks[0].1 == 1 => {
            // a single irreducible block: |G| / d for every sampling set
            Some(order / setup.rep.degree() as f64)
        }
        _ => None,
    }
}

/// Table of orbit-column constants over sampled Omega, with the matching
/// theoretical bound when the representation is recognized.
pub fn cmd_constant(config: &ExperimentConfig) -> Result<String> {
    let setup = config.resolve()?;
    if config.omega_mode == OmegaMode::UniformIid {
        return Err(Error::Config(
            "constant experiments need distinct-element sampling (fixed_set or coset_admissible)"
                .into(),
        ));
    }
    let count = config.raw.get_usize("constant", "count")?.unwrap_or(100);
    let m_list = config.raw.get_usize_list("constant", "m_list")?;
    let max_m = match config.omega_mode {
        OmegaMode::CosetAdmissible => setup.partition.as_ref().map(|p| p.num_cosets()).unwrap_or(1),
        _ => setup.group.order(),
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{PROVENANCE_HEADER},omega_seed,m,constant,argmax_coordinate,bound"
    );
    let prefix = provenance_prefix(config);
    for i in 0..count {
        let omega = match &config.omega_indices {
            Some(indices) => SamplingSet::explicit(indices.clone())?,
            None => {
                let m = match &m_list {
                    Some(list) => list[i % list.len()],
                    None => {
                        use rand::Rng;
                        let mut rng =
                            rng_from_seed(derive_seed(config.master_seed, &[i as u64, 7]));
                        rng.random_range(1..=max_m)
                    }
                };
                let seed = derive_seed(config.master_seed, &[i as u64]);
                sample_omega(
                    &setup.group,
                    m,
                    config.omega_mode,
                    Some(seed),
                    setup.partition.as_ref(),
                )?
            }
        };
        let report = orbit_column_constant(&setup.rep, omega.indices())?;
        let bound = recognized_bound(config, &setup, omega.indices())
            .map(fmt_f64)
            .unwrap_or_default();
        let seed_col = omega
            .seed()
            .map(|s| s.to_string())
            .unwrap_or_else(|| "explicit".into());
        let _ = writeln!(
            out,
            "{prefix},{seed_col},{},{},{},{bound}",
            omega.len(),
            fmt_f64(report.value),
            report.argmax_coordinate
        );
        if config.omega_indices.is_some() {
            break;
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// rip

/// Exact RIP constants of one seeded ensemble over a range of sparsity levels.
pub fn cmd_rip(config: &ExperimentConfig) -> Result<String> {
    let setup = config.resolve()?;
    let s_list = config
        .raw
        .get_usize_list("rip", "s_list")?
        .ok_or_else(|| Error::Config("missing [rip] s_list".into()))?;
    if s_list.is_empty() {
        return Err(Error::Config("[rip] s_list is empty".into()));
    }
    let omega = match &config.omega_indices {
        Some(indices) => SamplingSet::explicit(indices.clone())?,
        None => {
            let m = config
                .raw
                .get_usize("rip", "m")?
                .ok_or_else(|| Error::Config("missing [rip] m (or [omega] indices)".into()))?;
            sample_omega(
                &setup.group,
                m,
                config.omega_mode,
                Some(derive_seed(config.master_seed, &[2])),
                setup.partition.as_ref(),
            )?
        }
    };
    let xi = sample_generating_vector(
        setup.rep.degree(),
        config.scheme,
        derive_seed(config.master_seed, &[1]),
        setup.rep.block(),
    )?;
    let ens = build_measurement(&setup.rep, &xi, &omega, &setup.basis)?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{PROVENANCE_HEADER},m,s,delta,witness_support,supports_checked"
    );
    let prefix = provenance_prefix(config);
    for &s in &s_list {
        let report = rip_constant(ens.phi(), s)?;
        let witness = report
            .witness_support
            .iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join("+");
        let _ = writeln!(
            out,
            "{prefix},{},{s},{},{witness},{}",
            omega.len(),
            fmt_f64(report.delta),
            report.supports_checked
        );
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// counterexample

/// The two failure demonstrations: the Fourier-conjugated regular
/// representation with its adversarial sampling set and null-space sparse
/// vector, and the trivial representation's 1-sparse collision pair.
pub fn cmd_counterexample(config: &ExperimentConfig) -> Result<String> {
    let case = config.raw.get("counterexample", "case").unwrap_or("fourier");
    let n = config
        .raw
        .get_usize("counterexample", "n")?
        .unwrap_or(config.group_param as usize);
    match case {
        "fourier" => {
            let s = config
                .raw
                .get_usize("counterexample", "s")?
                .ok_or_else(|| Error::Config("missing [counterexample] s".into()))?;
            let demo = fourier_counterexample(n, s, derive_seed(config.master_seed, &[0]))?;
            let mut out = String::new();
            let _ = writeln!(out, "fourier counterexample: n = {n}, s = {s}");
            let _ = writeln!(out, "omega = residues not divisible by {s}, m = {}", demo.omega.len());
            let _ = writeln!(out, "planted ||x||_0 = {}", demo.x_l0);
            let _ = writeln!(out, "max |Phi x| = {:.3e}", demo.phi_x_inf);
            let _ = writeln!(
                out,
                "basis pursuit at y = Phi x: ||z||_1 = {:.6} vs ||x||_1 = {:.6}, ||z - x||_2 = {:.6}",
                demo.bp_l1, demo.x_l1, demo.bp_distance
            );
            let _ = writeln!(
                out,
                "recovery fails: the solver returns a different feasible point with no larger l1 norm"
            );
            Ok(out)
        }
        "trivial" => {
            let demo = trivial_counterexample(config, n)?;
            let mut out = String::new();
            let _ = writeln!(out, "trivial-representation counterexample: n = {n}");
            let _ = writeln!(
                out,
                "1-sparse collision pair on coordinates {} and {}",
                demo.j1, demo.j2
            );
            let _ = writeln!(out, "max |Phi x1 - Phi x2| = {:.3e}", demo.collision_inf);
            let _ = writeln!(out, "the two signals are indistinguishable from their measurements");
            Ok(out)
        }
        other => Err(Error::Config(format!(
            "unknown counterexample case '{other}' (fourier|trivial)"
        ))),
    }
}

pub struct FourierCounterexample {
    pub rep: Representation,
    pub xi: crate::sensing::GeneratingVector,
    pub omega: SamplingSet,
    pub x: CVector,
    pub x_l0: usize,
    pub x_l1: f64,
    pub phi_x_inf: f64,
    pub bp_l1: f64,
    pub bp_distance: f64,
    pub bp: RecoveryResult,
    pub phi: crate::sensing::MeasurementEnsemble,
}

/// Build the diagonal-character representation of Z/n, the sampling set of
/// residues k with k != 0 mod s, and the s-sparse vector supported on the
/// delta train that the matrix annihilates; then run basis pursuit on the
/// (zero) measurements.
pub fn fourier_counterexample(n: usize, s: usize, seed: u64) -> Result<FourierCounterexample> {
    if s < 2 || n < 2 || !n.is_multiple_of(s) {
        return Err(Error::InvalidArgument(format!(
            "fourier counterexample needs s | n and s, n >= 2 (got n={n}, s={s})"
        )));
    }
    let group = crate::group::FiniteGroup::cyclic(n as u64)?;
    let rep = crate::rep::diagonal_characters(&group)?;
    let xi = sample_generating_vector(n, Scheme::Steinhaus, seed, None)?;
    let omega = SamplingSet::explicit((0..n).filter(|k| k % s != 0).collect())?;
    let gap = n / s;
    let mut x = CVector::zeros(n);
    for j in 0..n {
        if j % gap == 1 % gap {
            x[j] = (1.0 / xi.values()[j]).conj();
        }
    }
    let ens = build_measurement(&rep, &xi, &omega, &BasisSpec::Identity)?;
    let y = ens.phi() * &x;
    let phi_x_inf = y.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let bp = basis_pursuit(ens.phi(), &y, &BasisPursuitOptions::default())?;
    Ok(FourierCounterexample {
        x_l0: l0_norm(&x, 1e-12),
        x_l1: l1_norm(&x),
        bp_l1: l1_norm(&bp.estimate),
        bp_distance: (&bp.estimate - &x).norm(),
        rep,
        xi,
        omega,
        x,
        phi_x_inf,
        bp,
        phi: ens,
    })
}

pub struct TrivialCounterexample {
    pub j1: usize,
    pub j2: usize,
    pub x1: CVector,
    pub x2: CVector,
    pub collision_inf: f64,
}

/// For pi = I_n (n >= 3) every measurement is <x, B* xi>; two 1-sparse
/// vectors with equal projections collide.
pub fn trivial_counterexample(config: &ExperimentConfig, n: usize) -> Result<TrivialCounterexample> {
    if n < 3 {
        return Err(Error::InvalidArgument(
            "trivial counterexample needs n >= 3".into(),
        ));
    }
    let group = crate::group::FiniteGroup::build(config.group_kind, config.group_param)?;
    let rep = Representation::trivial(&group, n)?;
    let scheme = match config.scheme {
        Scheme::StructuredBlock => Scheme::Steinhaus,
        s => s,
    };
    let xi = sample_generating_vector(n, scheme, derive_seed(config.master_seed, &[0]), None)?;
    let basis = match &config.basis {
        BasisKind::Identity => BasisSpec::Identity,
        BasisKind::Dft => BasisSpec::Dft,
        BasisKind::File(p) => BasisSpec::Unitary(crate::io::read_matrix(p)?),
    };
    let b = basis.materialize(n)?;
    let w = b.adjoint() * xi.values();
    let zeros: Vec<usize> = (0..n).filter(|&j| w[j].norm() < 1e-12).collect();
    let (j1, j2, x1, x2) = if zeros.len() >= 2 {
        let (j1, j2) = (zeros[0], zeros[1]);
        let mut x1 = CVector::zeros(n);
        x1[j1] = Complex64::new(1.0, 0.0);
        let mut x2 = CVector::zeros(n);
        x2[j2] = Complex64::new(1.0, 0.0);
        (j1, j2, x1, x2)
    } else {
        let nonzeros: Vec<usize> = (0..n).filter(|&j| w[j].norm() >= 1e-12).collect();
        let (j1, j2) = (nonzeros[0], nonzeros[1]);
        let mut x1 = CVector::zeros(n);
        x1[j1] = (1.0 / w[j1]).conj();
        let mut x2 = CVector::zeros(n);
        x2[j2] = (1.0 / w[j2]).conj();
        (j1, j2, x1, x2)
    };
    let m = group.order().min(4);
    let omega = sample_omega(&group, m, OmegaMode::FixedSet, None, None)?;
    let ens = build_measurement(&rep, &xi, &omega, &basis)?;
    let diff = ens.phi() * (&x1 - &x2);
    Ok(TrivialCounterexample {
        j1,
        j2,
        x1,
        x2,
        collision_inf: diff.iter().map(|z| z.norm()).fold(0.0, f64::max),
    })
}

// ---------------------------------------------------------------------------
// phase transition

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PlantKind {
    Random,
    Adversarial,
}

struct TrialOutcome {
    success: bool,
    runtime_ms: f64,
}

/// Success-rate grid over (s, m): per cell, independent draws of xi, Omega and
/// a planted s-sparse vector with unit-modulus entries, recovered by the
/// configured solver. Success means relative error <= success_tol.
pub fn cmd_phase_transition(config: &ExperimentConfig, no_timestamp: bool) -> Result<String> {
    let setup = config.resolve()?;
    let s_list = config
        .raw
        .get_usize_list("phase_transition", "s_list")?
        .ok_or_else(|| Error::Config("missing [phase_transition] s_list".into()))?;
    let m_list = match &config.omega_indices {
        Some(idx) => vec![idx.len()],
        None => config
            .raw
            .get_usize_list("phase_transition", "m_list")?
            .ok_or_else(|| Error::Config("missing [phase_transition] m_list".into()))?,
    };
    if s_list.is_empty() || m_list.is_empty() {
        return Err(Error::Config("empty phase-transition grid".into()));
    }
    let solver = SolverTag::parse(
        config
            .raw
            .get("phase_transition", "solver")
            .unwrap_or("basis_pursuit"),
    )?;
    let plant = match config.raw.get("phase_transition", "plant").unwrap_or("random") {
        "random" => PlantKind::Random,
        "adversarial" => PlantKind::Adversarial,
        other => {
            return Err(Error::Config(format!(
                "unknown plant kind '{other}' (random|adversarial)"
            )))
        }
    };
    let tol = config.tolerances;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{PROVENANCE_HEADER},solver,success_tol,s,m,trials,successes,success_rate,mean_runtime_ms"
    );
    let prefix = provenance_prefix(config);

    let mut cells: Vec<(usize, usize)> = Vec::new();
    for &s in &s_list {
        for &m in &m_list {
            cells.push((s, m));
        }
    }
    cells.sort_unstable();

    for (cell_idx, &(s, m)) in cells.iter().enumerate() {
        let outcomes: Vec<Result<TrialOutcome>> = (0..config.trials)
            .into_par_iter()
            .map(|t| {
                run_recovery_trial(
                    config,
                    &setup,
                    s,
                    m,
                    solver,
                    plant,
                    &tol,
                    derive_seed(config.master_seed, &[cell_idx as u64, t as u64]),
                )
            })
            .collect();
        let mut successes = 0usize;
        let mut total_ms = 0.0;
        for o in outcomes {
            let o = o?;
            if o.success {
                successes += 1;
            }
            total_ms += o.runtime_ms;
        }
        let rate = successes as f64 / config.trials as f64;
        let runtime_col = if no_timestamp {
            String::new()
        } else {
            format!("{:.3}", total_ms / config.trials as f64)
        };
        let _ = writeln!(
            out,
            "{prefix},{solver},{},{s},{m},{},{successes},{},{runtime_col}",
            fmt_f64(tol.success_tol),
            config.trials,
            fmt_f64(rate)
        );
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn run_recovery_trial(
    config: &ExperimentConfig,
    setup: &ResolvedSetup,
    s: usize,
    m: usize,
    solver: SolverTag,
    plant: PlantKind,
    tol: &crate::config::Tolerances,
    trial_seed: u64,
) -> Result<TrialOutcome> {
    use rand::seq::SliceRandom;
    use rand::Rng;

    let n = setup.rep.degree();
    let xi = sample_generating_vector(
        n,
        config.scheme,
        derive_seed(trial_seed, &[1]),
        setup.rep.block(),
    )?;
    let omega = match &config.omega_indices {
        Some(indices) => SamplingSet::explicit(indices.clone())?,
        None => sample_omega(
            &setup.group,
            m,
            config.omega_mode,
            Some(derive_seed(trial_seed, &[2])),
            setup.partition.as_ref(),
        )?,
    };
    let ens = build_measurement(&setup.rep, &xi, &omega, &setup.basis)?;

    let x = match plant {
        PlantKind::Random => {
            let mut rng = rng_from_seed(derive_seed(trial_seed, &[3]));
            let mut idx: Vec<usize> = (0..n).collect();
            idx.partial_shuffle(&mut rng, s);
            let mut x = CVector::zeros(n);
            for &j in idx.iter().take(s) {
                x[j] = unit_phase(rng.random::<f64>());
            }
            x
        }
        PlantKind::Adversarial => {
            // the null-space vector of the Fourier counterexample: requires a
            // full-support xi and s | n
            if !n.is_multiple_of(s) {
                return Err(Error::InvalidArgument(format!(
                    "adversarial plant needs s | n (s={s}, n={n})"
                )));
            }
            if xi.values().iter().any(|z| z.norm() < 1e-12) {
                return Err(Error::InvalidArgument(
                    "adversarial plant needs a full-support generating vector".into(),
                ));
            }
            let gap = n / s;
            let mut x = CVector::zeros(n);
            for j in 0..n {
                if j % gap == 1 % gap {
                    x[j] = (1.0 / xi.values()[j]).conj();
                }
            }
            x
        }
    };

    let y = ens.phi() * &x;
    let start = Instant::now();
    let result = match solver {
        SolverTag::BasisPursuit => basis_pursuit(
            ens.phi(),
            &y,
            &BasisPursuitOptions {
                tol_feas: tol.tol_feas,
                tol_opt: tol.tol_opt,
                max_iter: tol.max_iter,
            },
        )?,
        SolverTag::Omp => omp(ens.phi(), &y, s)?,
        SolverTag::Iht => iht(ens.phi(), &y, s, None, tol.max_iter)?,
        SolverTag::L0Oracle => crate::recovery::l0_oracle(ens.phi(), &y, s)?,
    };
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let success = (&result.estimate - &x).norm() <= tol.success_tol * x.norm();
    Ok(TrialOutcome {
        success,
        runtime_ms,
    })
}

// ---------------------------------------------------------------------------
// bound

/// Side-by-side table of the two measurement-count formulas over a sparsity
/// grid, flagged vacuous when they exceed the ambient dimension.
pub fn cmd_bound(config: &ExperimentConfig) -> Result<String> {
    let setup = config.resolve()?;
    let n = setup.rep.degree();
    let order = setup.group.order();
    let s_list = config
        .raw
        .get_usize_list("bound", "s_list")?
        .ok_or_else(|| Error::Config("missing [bound] s_list".into()))?;
    if s_list.is_empty() {
        return Err(Error::Config("[bound] s_list is empty".into()));
    }
    let delta = config.raw.get_f64("bound", "delta")?.unwrap_or(0.5);
    let eta = config.raw.get_f64("bound", "eta")?.unwrap_or(0.01);
    let c_small = config.raw.get_f64("bound", "c")?.unwrap_or(1.0);
    let c_large = config.raw.get_f64("bound", "C")?.unwrap_or(1.0);

    // C_{Omega~, pi}: explicit when configured, else the full-orbit constant
    // combined with a sampled lower bound over random subsets
    let c_const = match config.raw.get("bound", "c_const") {
        Some("auto") | None => {
            let full: Vec<usize> = setup.group.elements().collect();
            let at_full = orbit_column_constant(&setup.rep, &full)?.value;
            let sampled = crate::analysis::constant_over_family(
                &setup.rep,
                &crate::analysis::OmegaFamily::Sampled {
                    count: 20,
                    seed: derive_seed(config.master_seed, &[3]),
                },
            )?;
            at_full.max(sampled)
        }
        Some(v) => v
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("[bound] c_const: bad value '{v}'")))?,
    };
    let d_max = setup.rep.block().map(|b| b.d_max()).unwrap_or(1);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{PROVENANCE_HEADER},s,n,c_const,d_max,delta,eta,thm1_m,thm1_vacuous,cor36_m,cor36_vacuous"
    );
    let prefix = provenance_prefix(config);
    for &s in &s_list {
        let thm1 = thm1_measurement_bound(s, n, c_const, delta, eta, c_small)?;
        let cor36 = cor36_measurement_bound(s, n, order, d_max, delta, eta, c_large)?;
        let _ = writeln!(
            out,
            "{prefix},{s},{n},{},{d_max},{},{},{thm1},{},{cor36},{}",
            fmt_f64(c_const),
            fmt_f64(delta),
            fmt_f64(eta),
            thm1 > n as u64,
            cor36 > n as u64
        );
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// shared helpers for tests and the acceptance suite

/// Success indicator used by the phase-transition harness: relative l2 error
/// within `tol`.
pub fn recovery_success(estimate: &CVector, planted: &CVector, tol: f64) -> bool {
    (estimate - planted).norm() <= tol * planted.norm()
}

/// Monte-Carlo estimate of the BOS tail-bound violation rate: the fraction of
/// structured draws whose [`bos_constant`] reaches the probability-(1-delta)
/// threshold.
pub fn bos_tail_violation_rate(
    rep: &Representation,
    basis: &crate::linalg::CMatrix,
    draws: usize,
    delta: f64,
    master_seed: u64,
) -> Result<f64> {
    let structure = rep
        .block()
        .ok_or_else(|| Error::InvalidArgument("needs a block-diagonal representation".into()))?;
    let n = rep.degree();
    let threshold = bos_tail_threshold(structure.d_max(), n, rep.group().order(), delta);
    let violations: Result<Vec<bool>> = (0..draws)
        .into_par_iter()
        .map(|t| {
            let xi = sample_generating_vector(
                n,
                Scheme::StructuredBlock,
                derive_seed(master_seed, &[t as u64]),
                Some(structure),
            )?;
            Ok(bos_constant(rep, &xi, basis)? >= threshold)
        })
        .collect();
    let violations = violations?;
    Ok(violations.iter().filter(|&&v| v).count() as f64 / draws as f64)
}

/// The delta-train identities, checked exactly: ||v||_0 = s, the transform is
/// supported on the residues divisible by s with moduli exactly s.
pub fn delta_train_identities(n: usize, s: usize) -> Result<()> {
    let v = crate::fourier::delta_train(n, s)?;
    if l0_norm(&v, 0.5) != s {
        return Err(Error::InvariantViolation(format!(
            "delta train ({n},{s}): wrong support size"
        )));
    }
    let fv = classical_dft(&v);
    for l in 0..n {
        if l % s == 0 {
            if (fv[l].norm() - s as f64).abs() > 1e-12 * s as f64 {
                return Err(Error::InvariantViolation(format!(
                    "delta train ({n},{s}): |Fv[{l}]| = {} != {s}",
                    fv[l].norm()
                )));
            }
        } else if fv[l].norm() > 1e-9 {
            return Err(Error::InvariantViolation(format!(
                "delta train ({n},{s}): Fv[{l}] = {} should vanish",
                fv[l].norm()
            )));
        }
    }
    // round-trip closes the loop
    let back = classical_idft(&fv);
    if (&back - &v).iter().any(|z| z.norm() > 1e-10) {
        return Err(Error::InvariantViolation(format!(
            "delta train ({n},{s}): inverse transform drifted"
        )));
    }
    Ok(())
}

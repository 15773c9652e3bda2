//! Unitary (projective) representations of finite groups: the left regular
//! representation, irreducible catalogs for the supported group kinds,
//! block-diagonal assemblies with multiplicities, realization changes, and
//! representations induced from subgroups.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::dft_matrix;
use crate::group::{CosetPartition, CrossSection, FiniteGroup};
use crate::linalg::{max_abs_diff, unit_phase, unitarity_defect, CMatrix, CVector, ONE, ZERO};

/// Tolerance for the structural invariants (unitarity, homomorphism).
pub const REP_TOL: f64 = 1e-10;

/// One irreducible block: which constituent it is, its degree and how often
/// it repeats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSpec {
    pub irrep: usize,
    pub degree: usize,
    pub multiplicity: usize,
}

/// Ordered block-diagonal layout: all copies of block 1 first, then block 2,
/// and so on. Block coordinates `(tau, kappa, iota)` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    blocks: Vec<BlockSpec>,
}

impl BlockStructure {
    pub fn new(blocks: Vec<BlockSpec>) -> Result<BlockStructure> {
        if blocks.is_empty() {
            return Err(Error::InvalidArgument("empty block structure".into()));
        }
        if blocks.iter().any(|b| b.degree == 0 || b.multiplicity == 0) {
            return Err(Error::InvalidArgument(
                "block degrees and multiplicities must be positive".into(),
            ));
        }
        Ok(BlockStructure { blocks })
    }

    pub fn blocks(&self) -> &[BlockSpec] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn total_degree(&self) -> usize {
        self.blocks.iter().map(|b| b.degree * b.multiplicity).sum()
    }

    fn offset(&self, tau: usize) -> usize {
        self.blocks[..tau - 1]
            .iter()
            .map(|b| b.degree * b.multiplicity)
            .sum()
    }

    fn check_tau(&self, tau: usize) -> Result<&BlockSpec> {
        if tau == 0 || tau > self.blocks.len() {
            return Err(Error::InvalidArgument(format!(
                "block id {tau} out of range 1..={}",
                self.blocks.len()
            )));
        }
        Ok(&self.blocks[tau - 1])
    }

    /// Position (1-based) of coordinate `iota` of copy `kappa` of block `tau`:
    /// sum of earlier block sizes + (kappa-1) d + iota.
    pub fn alpha(&self, tau: usize, kappa: usize, iota: usize) -> Result<usize> {
        let spec = self.check_tau(tau)?;
        if kappa == 0 || kappa > spec.multiplicity {
            return Err(Error::InvalidArgument(format!(
                "copy id {kappa} out of range 1..={}",
                spec.multiplicity
            )));
        }
        if iota == 0 || iota > spec.degree {
            return Err(Error::InvalidArgument(format!(
                "coordinate {iota} out of range 1..={}",
                spec.degree
            )));
        }
        Ok(self.offset(tau) + (kappa - 1) * spec.degree + iota)
    }

    /// Inverse of [`BlockStructure::alpha`]: recover `(tau, kappa, iota)` from
    /// a 1-based position.
    pub fn alpha_inverse(&self, position: usize) -> Result<(usize, usize, usize)> {
        if position == 0 || position > self.total_degree() {
            return Err(Error::InvalidArgument(format!(
                "position {position} out of range 1..={}",
                self.total_degree()
            )));
        }
        let mut rest = position - 1;
        for (t, spec) in self.blocks.iter().enumerate() {
            let span = spec.degree * spec.multiplicity;
            if rest < span {
                return Ok((t + 1, rest / spec.degree + 1, rest % spec.degree + 1));
            }
            rest -= span;
        }
        unreachable!("position bounded by total degree");
    }

    /// Position (1-based) of coordinate `iota` of block `tau` inside the
    /// support of the structured generating vector:
    /// earlier blocks + min(m-1, iota-1) d + iota.
    pub fn beta(&self, tau: usize, iota: usize) -> Result<usize> {
        let spec = self.check_tau(tau)?;
        if iota == 0 || iota > spec.degree {
            return Err(Error::InvalidArgument(format!(
                "coordinate {iota} out of range 1..={}",
                spec.degree
            )));
        }
        Ok(self.offset(tau) + (spec.multiplicity - 1).min(iota - 1) * spec.degree + iota)
    }

    /// Image of beta over all (tau, iota), as 1-based positions in ascending order.
    pub fn beta_image(&self) -> Vec<usize> {
        let mut img: Vec<usize> = Vec::new();
        for (t, spec) in self.blocks.iter().enumerate() {
            for iota in 1..=spec.degree {
                img.push(self.beta(t + 1, iota).expect("in range"));
            }
        }
        img.sort_unstable();
        img
    }

    /// Largest degree among blocks with multiplicity > 1, or 1 if there is none.
    pub fn d_max(&self) -> usize {
        self.blocks
            .iter()
            .filter(|b| b.multiplicity > 1)
            .map(|b| b.degree)
            .max()
            .unwrap_or(1)
    }

    /// max over blocks of ceil(multiplicity / degree).
    pub fn max_ceil_mult_over_degree(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| b.multiplicity.div_ceil(b.degree))
            .max()
            .unwrap_or(1)
    }

    /// True iff every multiplicity is at most the block degree, i.e. the
    /// structure can occur inside the left regular representation.
    pub fn is_subregular(&self) -> bool {
        self.blocks.iter().all(|b| b.multiplicity <= b.degree)
    }
}

#[derive(Debug)]
struct RepData {
    group: FiniteGroup,
    degree: usize,
    matrices: Vec<CMatrix>,
    cocycle: Option<Vec<Complex64>>,
    block: Option<BlockStructure>,
    permutations: Option<Vec<Vec<usize>>>,
    name: String,
}

/// A unitary (projective) representation given by one matrix per group
/// element. Cheap to clone; immutable after construction.
#[derive(Debug, Clone)]
pub struct Representation {
    data: Arc<RepData>,
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.data.name)
    }
}

impl Representation {
    fn assemble(
        group: FiniteGroup,
        matrices: Vec<CMatrix>,
        cocycle: Option<Vec<Complex64>>,
        block: Option<BlockStructure>,
        permutations: Option<Vec<Vec<usize>>>,
        name: String,
    ) -> Representation {
        let degree = matrices[0].nrows();
        Representation {
            data: Arc::new(RepData {
                group,
                degree,
                matrices,
                cocycle,
                block,
                permutations,
                name,
            }),
        }
    }

    /// The left regular representation: permutation matrices of degree |G|
    /// acting by (L(g) f)(h) = f(g^{-1} h), i.e. L(g) e_x = e_{g x}.
    pub fn left_regular(group: &FiniteGroup) -> Representation {
        let n = group.order();
        let mut matrices = Vec::with_capacity(n);
        let mut permutations = Vec::with_capacity(n);
        for g in group.elements() {
            let mut m = CMatrix::zeros(n, n);
            let mut perm = vec![0usize; n];
            for x in group.elements() {
                let gx = group.mul(g, x);
                m[(gx, x)] = ONE;
                perm[x] = gx;
            }
            matrices.push(m);
            permutations.push(perm);
        }
        Self::assemble(
            group.clone(),
            matrices,
            None,
            None,
            Some(permutations),
            format!("left_regular[{group}]"),
        )
    }

    /// pi(g) = I_n for every g.
    pub fn trivial(group: &FiniteGroup, n: usize) -> Result<Representation> {
        if n == 0 {
            return Err(Error::InvalidArgument("trivial representation needs degree >= 1".into()));
        }
        let matrices = vec![CMatrix::identity(n, n); group.order()];
        let block = BlockStructure::new(vec![BlockSpec {
            irrep: 0,
            degree: 1,
            multiplicity: n,
        }])?;
        Ok(Self::assemble(
            group.clone(),
            matrices,
            None,
            Some(block),
            None,
            format!("trivial[{group},n={n}]"),
        ))
    }

    /// The (p-1)-dimensional representation of the affine group on
    /// coordinates j in {1,...,p-1}: (rho(k,l) y)(j) = e^{2 pi i j k / p} y(jl mod p).
    pub fn affine(p: u64) -> Result<Representation> {
        if p < 3 {
            return Err(Error::InvalidArgument(format!(
                "affine representation requires prime p >= 3, got {p}"
            )));
        }
        let group = FiniteGroup::affine(p)?;
        Ok(Self::affine_on(&group))
    }

    fn affine_on(group: &FiniteGroup) -> Representation {
        let (_, p) = group.kind().expect("affine group");
        let p = p as usize;
        let deg = p - 1;
        let mut matrices = Vec::with_capacity(group.order());
        for e in group.elements() {
            let (k, l) = group.affine_coords(e).expect("affine group");
            let mut m = CMatrix::zeros(deg, deg);
            for j in 1..p {
                m[(j - 1, (j * l) % p - 1)] = unit_phase((j * k) as f64 / p as f64);
            }
            matrices.push(m);
        }
        let block = BlockStructure::new(vec![BlockSpec {
            irrep: 0,
            degree: deg,
            multiplicity: 1,
        }])
        .expect("nonempty");
        Self::assemble(
            group.clone(),
            matrices,
            None,
            Some(block),
            None,
            format!("affine_rep[{group}]"),
        )
    }

    /// Validating constructor from explicit matrices (ordinary representation,
    /// trivial cocycle). Checks unitarity and the homomorphism property at
    /// tolerance [`REP_TOL`].
    pub fn from_matrices(group: &FiniteGroup, matrices: Vec<CMatrix>) -> Result<Representation> {
        Self::from_projective_matrices(group, matrices, None)
    }

    /// Validating constructor admitting a cocycle lambda(g, h) (flattened
    /// row-major, g * |G| + h). Entries must be unimodular.
    pub fn from_projective_matrices(
        group: &FiniteGroup,
        matrices: Vec<CMatrix>,
        cocycle: Option<Vec<Complex64>>,
    ) -> Result<Representation> {
        if matrices.len() != group.order() {
            return Err(Error::DimensionMismatch {
                context: "from_matrices: one matrix per group element".into(),
                expected: group.order(),
                got: matrices.len(),
            });
        }
        let n = matrices[0].nrows();
        if matrices.iter().any(|m| m.nrows() != n || m.ncols() != n) {
            return Err(Error::InvalidArgument("matrices must be square of equal size".into()));
        }
        if let Some(c) = &cocycle {
            if c.len() != group.order() * group.order() {
                return Err(Error::DimensionMismatch {
                    context: "cocycle length".into(),
                    expected: group.order() * group.order(),
                    got: c.len(),
                });
            }
            if c.iter().any(|l| (l.norm() - 1.0).abs() > REP_TOL) {
                return Err(Error::InvalidArgument("cocycle values must be unimodular".into()));
            }
        }
        let rep = Self::assemble(
            group.clone(),
            matrices,
            cocycle,
            None,
            None,
            format!("custom[{group},n={n}]"),
        );
        rep.verify(REP_TOL)?;
        Ok(rep)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.data.group
    }

    pub fn degree(&self) -> usize {
        self.data.degree
    }

    pub fn matrix(&self, g: usize) -> &CMatrix {
        &self.data.matrices[g]
    }

    pub fn block(&self) -> Option<&BlockStructure> {
        self.data.block.as_ref()
    }

    pub fn cocycle(&self, g: usize, h: usize) -> Complex64 {
        match &self.data.cocycle {
            Some(c) => c[g * self.data.group.order() + h],
            None => ONE,
        }
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    fn with_name(self, name: String) -> Representation {
        // cheap: only rewraps when the Arc is shared
        let data = self.data;
        let data = match Arc::try_unwrap(data) {
            Ok(mut d) => {
                d.name = name;
                d
            }
            Err(shared) => RepData {
                group: shared.group.clone(),
                degree: shared.degree,
                matrices: shared.matrices.clone(),
                cocycle: shared.cocycle.clone(),
                block: shared.block.clone(),
                permutations: shared.permutations.clone(),
                name,
            },
        };
        Representation { data: Arc::new(data) }
    }

    /// pi(g) v, using the stored permutation when available.
    pub fn apply(&self, g: usize, v: &CVector) -> CVector {
        match &self.data.permutations {
            Some(perms) => {
                let perm = &perms[g];
                let mut out = CVector::zeros(self.degree());
                for (x, &img) in perm.iter().enumerate() {
                    out[img] = v[x];
                }
                out
            }
            None => &self.data.matrices[g] * v,
        }
    }

    /// Traces of pi(g) over the group, in element order.
    pub fn character(&self) -> Vec<Complex64> {
        self.data.matrices.iter().map(|m| m.trace()).collect()
    }

    /// Two representations of the same group are equivalent iff their
    /// characters agree pointwise.
    pub fn is_equivalent_to(&self, other: &Representation, tol: f64) -> bool {
        if self.group() != other.group() || self.degree() != other.degree() {
            return false;
        }
        self.character()
            .iter()
            .zip(other.character())
            .all(|(a, b)| (a - b).norm() <= tol)
    }

    /// max over g of || pi(g)* pi(g) - I ||_max.
    pub fn unitarity_defect(&self) -> f64 {
        self.data
            .matrices
            .iter()
            .map(unitarity_defect)
            .fold(0.0, f64::max)
    }

    /// max over (g, h) of || pi(g) pi(h) - lambda(g,h) pi(gh) ||_max.
    pub fn homomorphism_defect(&self) -> f64 {
        let group = &self.data.group;
        let mut worst: f64 = 0.0;
        for g in group.elements() {
            for h in group.elements() {
                let prod = self.matrix(g) * self.matrix(h);
                let expected = self.matrix(group.mul(g, h)) * self.cocycle(g, h);
                worst = worst.max(max_abs_diff(&prod, &expected));
            }
        }
        worst
    }

    /// Full structural verification: unitarity and the (projective)
    /// homomorphism property.
    pub fn verify(&self, tol: f64) -> Result<()> {
        let ud = self.unitarity_defect();
        if ud > tol {
            return Err(Error::NotUnitary {
                context: format!("representation {}", self.data.name),
                defect: ud,
                tol,
            });
        }
        let hd = self.homomorphism_defect();
        if hd > tol {
            return Err(Error::InvariantViolation(format!(
                "homomorphism defect {hd:.3e} > {tol:.1e} in {}",
                self.data.name
            )));
        }
        Ok(())
    }

    /// Realization change pi -> V pi V*. Requires V unitary; block metadata
    /// does not survive (the blocks are no longer aligned to coordinates).
    pub fn conjugate(&self, v: &CMatrix) -> Result<Representation> {
        if v.nrows() != self.degree() || v.ncols() != self.degree() {
            return Err(Error::DimensionMismatch {
                context: "conjugating matrix".into(),
                expected: self.degree(),
                got: v.nrows(),
            });
        }
        let defect = unitarity_defect(v);
        if defect > REP_TOL {
            return Err(Error::NotUnitary {
                context: "conjugating matrix".into(),
                defect,
                tol: REP_TOL,
            });
        }
        let vh = v.adjoint();
        let matrices: Vec<CMatrix> = self.data.matrices.iter().map(|m| v * m * &vh).collect();
        Ok(Self::assemble(
            self.data.group.clone(),
            matrices,
            self.data.cocycle.clone(),
            None,
            None,
            format!("conjugated[{}]", self.data.name),
        ))
    }
}

/// Block-diagonal assembly of pairwise inequivalent irreducible constituents,
/// each repeated `multiplicity` times; all copies of the first constituent
/// come first, then the second, and so on.
pub fn block_diagonal(constituents: &[(Representation, usize)]) -> Result<Representation> {
    if constituents.is_empty() {
        return Err(Error::InvalidArgument("block_diagonal needs at least one constituent".into()));
    }
    let group = constituents[0].0.group().clone();
    let order = group.order();
    for (rep, mult) in constituents {
        if rep.group() != &group {
            return Err(Error::InvalidArgument(
                "block_diagonal constituents must share one group".into(),
            ));
        }
        if *mult == 0 {
            return Err(Error::InvalidArgument("multiplicities must be >= 1".into()));
        }
        // irreducibility: |character|^2 averages to exactly 1
        let norm: f64 = rep
            .character()
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            / order as f64;
        if (norm - 1.0).abs() > 1e-8 {
            return Err(Error::InvalidArgument(format!(
                "constituent {} is not irreducible (character norm {norm:.6})",
                rep.name()
            )));
        }
    }
    for i in 0..constituents.len() {
        for j in i + 1..constituents.len() {
            if constituents[i].0.is_equivalent_to(&constituents[j].0, 1e-8) {
                return Err(Error::InvalidArgument(format!(
                    "constituents {i} and {j} are equivalent; merge their multiplicities"
                )));
            }
        }
    }

    let blocks: Vec<BlockSpec> = constituents
        .iter()
        .enumerate()
        .map(|(i, (rep, mult))| BlockSpec {
            irrep: i,
            degree: rep.degree(),
            multiplicity: *mult,
        })
        .collect();
    let structure = BlockStructure::new(blocks)?;
    let n = structure.total_degree();

    let mut matrices = Vec::with_capacity(order);
    for g in 0..order {
        let mut m = CMatrix::zeros(n, n);
        let mut off = 0;
        for (rep, mult) in constituents {
            let d = rep.degree();
            for _ in 0..*mult {
                m.view_mut((off, off), (d, d)).copy_from(rep.matrix(g));
                off += d;
            }
        }
        matrices.push(m);
    }
    let name = format!(
        "block_diagonal[{}]",
        constituents
            .iter()
            .map(|(r, m)| format!("{}x{m}", r.name()))
            .collect::<Vec<_>>()
            .join(" + ")
    );
    Ok(Representation::assemble(
        group,
        matrices,
        None,
        Some(structure),
        None,
        name,
    ))
}

/// A complete set of inequivalent irreducible unitary representations for the
/// supported group kinds. Completeness is certified by sum d^2 = |G| and
/// pairwise character orthogonality.
pub fn irreducible_catalog(group: &FiniteGroup) -> Result<Vec<Representation>> {
    let (kind, param) = group
        .kind()
        .ok_or_else(|| Error::NoCatalog(format!("{group}")))?;
    let order = group.order();
    let reps: Vec<Representation> = match kind {
        crate::group::GroupKind::Cyclic => {
            let n = param as usize;
            (0..n)
                .map(|l| {
                    let matrices: Vec<CMatrix> = (0..n)
                        .map(|k| {
                            CMatrix::from_element(1, 1, unit_phase((k * l) as f64 / n as f64))
                        })
                        .collect();
                    Representation::assemble(
                        group.clone(),
                        matrices,
                        None,
                        Some(BlockStructure::new(vec![BlockSpec {
                            irrep: 0,
                            degree: 1,
                            multiplicity: 1,
                        }])
                        .expect("nonempty")),
                        None,
                        format!("char[{l}]"),
                    )
                })
                .collect()
        }
        crate::group::GroupKind::Dihedral => dihedral_catalog(group, param as usize),
        crate::group::GroupKind::Affine => affine_catalog(group, param as usize)?,
    };

    let sum_sq: usize = reps.iter().map(|r| r.degree() * r.degree()).sum();
    if sum_sq != order {
        return Err(Error::InvariantViolation(format!(
            "catalog incomplete: sum of squared degrees {sum_sq} != |G| = {order}"
        )));
    }
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if reps[i].is_equivalent_to(&reps[j], 1e-8) {
                return Err(Error::InvariantViolation(format!(
                    "catalog contains equivalent members {i} and {j}"
                )));
            }
        }
    }
    Ok(reps)
}

fn dihedral_catalog(group: &FiniteGroup, n: usize) -> Vec<Representation> {
    let order = 2 * n;
    let single = |vals: Vec<Complex64>, name: &str| {
        let matrices = vals
            .into_iter()
            .map(|v| CMatrix::from_element(1, 1, v))
            .collect();
        Representation::assemble(
            group.clone(),
            matrices,
            None,
            Some(BlockStructure::new(vec![BlockSpec {
                irrep: 0,
                degree: 1,
                multiplicity: 1,
            }])
            .expect("nonempty")),
            None,
            name.to_string(),
        )
    };
    let sign = |x: usize| if x.is_multiple_of(2) { ONE } else { -ONE };
    let mut reps = vec![
        single(vec![ONE; order], "char[trivial]"),
        single((0..order).map(|e| sign(e / n)).collect(), "char[sign_s]"),
    ];
    if n.is_multiple_of(2) {
        reps.push(single((0..order).map(|e| sign(e % n)).collect(), "char[sign_r]"));
        reps.push(single(
            (0..order).map(|e| sign(e % n + e / n)).collect(),
            "char[sign_rs]",
        ));
    }
    let two_dim_count = if n.is_multiple_of(2) { n / 2 - 1 } else { (n - 1) / 2 };
    for h in 1..=two_dim_count {
        let matrices: Vec<CMatrix> = (0..order)
            .map(|e| {
                let (a, b) = (e % n, e / n);
                let w = unit_phase((h * a) as f64 / n as f64);
                let mut m = CMatrix::zeros(2, 2);
                if b == 0 {
                    m[(0, 0)] = w;
                    m[(1, 1)] = w.conj();
                } else {
                    m[(0, 1)] = w;
                    m[(1, 0)] = w.conj();
                }
                m
            })
            .collect();
        reps.push(Representation::assemble(
            group.clone(),
            matrices,
            None,
            Some(BlockStructure::new(vec![BlockSpec {
                irrep: 0,
                degree: 2,
                multiplicity: 1,
            }])
            .expect("nonempty")),
            None,
            format!("rot2[{h}]"),
        ));
    }
    reps
}

fn affine_catalog(group: &FiniteGroup, p: usize) -> Result<Vec<Representation>> {
    // characters factor through the cyclic unit group Z_p^*: take discrete
    // logs with respect to the smallest primitive root.
    let root = (1..p)
        .find(|&r| {
            let mut seen = vec![false; p];
            let mut x = 1usize;
            let mut count = 0;
            for _ in 0..p - 1 {
                x = x * r % p;
                if !seen[x] {
                    seen[x] = true;
                    count += 1;
                }
            }
            count == p - 1
        })
        .ok_or_else(|| Error::InvalidGroup(format!("no primitive root mod {p}")))?;
    let mut dlog = vec![0usize; p];
    let mut x = 1usize;
    for a in 0..p - 1 {
        dlog[x] = a;
        x = x * root % p;
    }
    let mut reps: Vec<Representation> = (0..p - 1)
        .map(|t| {
            let matrices: Vec<CMatrix> = group
                .elements()
                .map(|e| {
                    let (_, l) = group.affine_coords(e).expect("affine group");
                    CMatrix::from_element(
                        1,
                        1,
                        unit_phase((t * dlog[l]) as f64 / (p - 1) as f64),
                    )
                })
                .collect();
            Representation::assemble(
                group.clone(),
                matrices,
                None,
                Some(BlockStructure::new(vec![BlockSpec {
                    irrep: 0,
                    degree: 1,
                    multiplicity: 1,
                }])
                .expect("nonempty")),
                None,
                format!("char[{t}]"),
            )
        })
        .collect();
    reps.push(Representation::affine_on(group));
    Ok(reps)
}

/// The diagonal-character realization of the regular representation of Z/n:
/// block-diagonal over all n characters with multiplicity 1, i.e.
/// rho(k) = diag(e^{2 pi i k l / n})_{l = 0..n-1}.
pub fn diagonal_characters(group: &FiniteGroup) -> Result<Representation> {
    match group.kind() {
        Some((crate::group::GroupKind::Cyclic, _)) => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "diagonal_characters requires a cyclic group, got {group}"
            )))
        }
    }
    let catalog = irreducible_catalog(group)?;
    let constituents: Vec<(Representation, usize)> =
        catalog.into_iter().map(|r| (r, 1)).collect();
    Ok(block_diagonal(&constituents)?
        .with_name(format!("diagonal_characters[{group}]")))
}

/// The unitary realization change U = DFT^n D whose diagonal factor carries
/// per-block small-DFT rows: d at position alpha(tau, kappa, iota) equals
/// e^{2 pi i kappa iota / d_tau} (the exponent only depends on kappa mod d_tau).
pub fn realization_transform_u(structure: &BlockStructure) -> CMatrix {
    let n = structure.total_degree();
    let mut diag = CVector::zeros(n);
    for (t, spec) in structure.blocks().iter().enumerate() {
        for kappa in 1..=spec.multiplicity {
            for iota in 1..=spec.degree {
                let pos = structure.alpha(t + 1, kappa, iota).expect("in range") - 1;
                diag[pos] = unit_phase((kappa * iota) as f64 / spec.degree as f64);
            }
        }
    }
    let f = dft_matrix(n);
    let mut u = f;
    for c in 0..n {
        for r in 0..n {
            u[(r, c)] *= diag[c];
        }
    }
    u
}

/// Worst deviation from the sub-row orthogonality dichotomy of U: for every
/// row j, block tau and copies kappa1, kappa2, the d-dimensional sub-rows have
/// inner product of modulus d/n when kappa1 = kappa2 mod d and 0 otherwise.
pub fn subrow_dichotomy_defect(u: &CMatrix, structure: &BlockStructure) -> f64 {
    let n = structure.total_degree();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for (t, spec) in structure.blocks().iter().enumerate() {
            let d = spec.degree;
            for k1 in 1..=spec.multiplicity {
                for k2 in 1..=spec.multiplicity {
                    let mut ip = ZERO;
                    for iota in 1..=d {
                        let c1 = structure.alpha(t + 1, k1, iota).expect("in range") - 1;
                        let c2 = structure.alpha(t + 1, k2, iota).expect("in range") - 1;
                        ip += u[(j, c1)] * u[(j, c2)].conj();
                    }
                    let dev = if (k1 % d) == (k2 % d) {
                        (ip.norm() - d as f64 / n as f64).abs()
                    } else {
                        ip.norm()
                    };
                    worst = worst.max(dev);
                }
            }
        }
    }
    worst
}

/// The representation induced from a subgroup representation, realized on
/// C^{d_sigma * #cosets} through a cross-section: the block at
/// (coset v, coset v g) is sigma(gamma(v) g gamma(v g)^{-1}).
pub fn induce(
    partition: &CosetPartition,
    sigma: &Representation,
    gamma: &CrossSection,
) -> Result<Representation> {
    if gamma.len() != partition.num_cosets() {
        return Err(Error::InvalidArgument(format!(
            "cross-section has {} representatives for {} cosets",
            gamma.len(),
            partition.num_cosets()
        )));
    }
    for v in 0..gamma.len() {
        if partition.coset_of(gamma.representative(v)) != v {
            return Err(Error::InvalidArgument(format!(
                "cross-section representative for coset {v} lies in a different coset"
            )));
        }
    }
    let (sub, embed) = partition.subgroup_as_group()?;
    if sigma.group() != &sub {
        return Err(Error::InvalidArgument(
            "sigma is not a representation of this subgroup (Cayley tables differ)".into(),
        ));
    }
    let mut sub_index = std::collections::HashMap::new();
    for (i, &e) in embed.iter().enumerate() {
        sub_index.insert(e, i);
    }

    let group = partition.group();
    let k = sigma.degree();
    let cosets = partition.num_cosets();
    let n = k * cosets;
    let mut matrices = Vec::with_capacity(group.order());
    for g in group.elements() {
        let mut m = CMatrix::zeros(n, n);
        for v in 0..cosets {
            let vg = partition.coset_mul(v, g);
            // h = gamma(v) g gamma(v g)^{-1} lies in H
            let h = group.mul(group.mul(gamma.representative(v), g), group.inv(gamma.representative(vg)));
            let hs = *sub_index.get(&h).ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "gamma(v) g gamma(vg)^-1 = {} escaped the subgroup",
                    group.label(h)
                ))
            })?;
            m.view_mut((v * k, vg * k), (k, k)).copy_from(sigma.matrix(hs));
        }
        matrices.push(m);
    }
    Ok(Representation::assemble(
        group.clone(),
        matrices,
        None,
        None,
        None,
        format!("induced[{} from |H|={}]", sigma.name(), partition.subgroup().len()),
    ))
}

/// Worst Schur-orthogonality deviation for a pair of irreducible
/// representations: for inequivalent pi, rho every mixed coefficient sum
/// vanishes; for pi = rho the sum is delta_{kk'} delta_{ll'} |G| / d.
pub fn schur_orthogonality_defect(a: &Representation, b: &Representation, same: bool) -> f64 {
    let group = a.group();
    let order = group.order() as f64;
    let (da, db) = (a.degree(), b.degree());
    let mut worst: f64 = 0.0;
    for k in 0..da {
        for l in 0..da {
            for k2 in 0..db {
                for l2 in 0..db {
                    let mut sum = ZERO;
                    for g in group.elements() {
                        sum += a.matrix(g)[(k, l)] * b.matrix(g)[(k2, l2)].conj();
                    }
                    let expected = if same && k == k2 && l == l2 {
                        Complex64::new(order / da as f64, 0.0)
                    } else {
                        ZERO
                    };
                    worst = worst.max((sum - expected).norm());
                }
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupKind;
    use crate::linalg::max_abs;

    fn assert_rep_close(a: &Representation, b: &Representation, tol: f64) {
        assert_eq!(a.degree(), b.degree());
        for g in a.group().elements() {
            assert!(
                max_abs_diff(a.matrix(g), b.matrix(g)) <= tol,
                "matrices differ at g={g}"
            );
        }
    }

    #[test]
    fn left_regular_trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let l = Representation::left_regular(&g);
        assert_eq!(l.degree(), 1);
        assert_eq!(l.matrix(0)[(0, 0)], ONE);
    }

    #[test]
    fn left_regular_identity_is_identity_matrix() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let l = Representation::left_regular(&g);
        assert_eq!(max_abs_diff(l.matrix(g.identity()), &CMatrix::identity(6, 6)), 0.0);
    }

    #[test]
    fn left_regular_z3_shift() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let l = Representation::left_regular(&g);
        // L(1) e_h = e_{h+1}
        for h in 0..3 {
            let mut v = CVector::zeros(3);
            v[h] = ONE;
            let out = l.apply(1, &v);
            assert_eq!(out[(h + 1) % 3], ONE);
        }
        l.verify(REP_TOL).unwrap();
    }

    #[test]
    fn apply_matches_matrix_action() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let l = Representation::left_regular(&g);
        let v = CVector::from_fn(8, |i, _| Complex64::new(i as f64, -(i as f64) / 3.0));
        for e in g.elements() {
            let via_perm = l.apply(e, &v);
            let via_matrix = l.matrix(e) * &v;
            assert!(max_abs_diff(
                &CMatrix::from_column_slice(8, 1, via_perm.as_slice()),
                &CMatrix::from_column_slice(8, 1, via_matrix.as_slice())
            ) < 1e-15);
        }
    }

    #[test]
    fn cyclic_catalog_is_the_character_table() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let cat = irreducible_catalog(&g).unwrap();
        assert_eq!(cat.len(), 2);
        assert_eq!(cat[0].matrix(1)[(0, 0)], ONE);
        assert!((cat[1].matrix(1)[(0, 0)] + ONE).norm() < 1e-15);
    }

    #[test]
    fn dihedral4_catalog_degrees() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let cat = irreducible_catalog(&g).unwrap();
        let mut degrees: Vec<usize> = cat.iter().map(|r| r.degree()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2]);
        assert_eq!(cat.iter().map(|r| r.degree().pow(2)).sum::<usize>(), 8);
        for r in &cat {
            r.verify(REP_TOL).unwrap();
        }
    }

    #[test]
    fn affine5_catalog_degrees() {
        let g = FiniteGroup::affine(5).unwrap();
        let cat = irreducible_catalog(&g).unwrap();
        let mut degrees: Vec<usize> = cat.iter().map(|r| r.degree()).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![1, 1, 1, 1, 4]);
        for r in &cat {
            r.verify(REP_TOL).unwrap();
        }
        for i in 0..cat.len() {
            assert!(schur_orthogonality_defect(&cat[i], &cat[i], true) < 1e-8);
            for j in i + 1..cat.len() {
                assert!(schur_orthogonality_defect(&cat[i], &cat[j], false) < 1e-8);
            }
        }
    }

    #[test]
    fn affine_rep_entries() {
        let r = Representation::affine(3).unwrap();
        // rho(0,1) = I
        assert!(max_abs_diff(r.matrix(0), &CMatrix::identity(2, 2)) < 1e-15);
        // rho(0,2) swaps the two coordinates: index of (0,2) is (2-1)*3+0 = 3
        let swap = r.matrix(3);
        assert!((swap[(0, 1)] - ONE).norm() < 1e-12 && (swap[(1, 0)] - ONE).norm() < 1e-12);
        assert!(swap[(0, 0)].norm() < 1e-15 && swap[(1, 1)].norm() < 1e-15);
        // rho(1,1) = diag(e^{2 pi i/3}, e^{4 pi i/3}); index of (1,1) is 1
        let d = r.matrix(1);
        assert!((d[(0, 0)] - unit_phase(1.0 / 3.0)).norm() < 1e-12);
        assert!((d[(1, 1)] - unit_phase(2.0 / 3.0)).norm() < 1e-12);
        r.verify(REP_TOL).unwrap();
        assert!(Representation::affine(2).is_err());
        assert!(Representation::affine(9).is_err());
    }

    #[test]
    fn trivial_rep_block() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let t = Representation::trivial(&g, 3).unwrap();
        assert_eq!(t.degree(), 3);
        t.verify(REP_TOL).unwrap();
        assert_eq!(t.block().unwrap().d_max(), 1);
    }

    #[test]
    fn alpha_index_examples() {
        let b = BlockStructure::new(vec![BlockSpec { irrep: 0, degree: 2, multiplicity: 3 }]).unwrap();
        assert_eq!(b.alpha(1, 1, 1).unwrap(), 1);
        assert_eq!(b.alpha(1, 2, 1).unwrap(), 3);
        let b2 = BlockStructure::new(vec![
            BlockSpec { irrep: 0, degree: 1, multiplicity: 2 },
            BlockSpec { irrep: 1, degree: 2, multiplicity: 1 },
        ])
        .unwrap();
        assert_eq!(b2.total_degree(), 4);
        assert_eq!(b2.alpha(2, 1, 2).unwrap(), 4);
        assert!(b2.alpha(2, 2, 1).is_err());
        assert!(b2.alpha(3, 1, 1).is_err());
    }

    #[test]
    fn alpha_bijection_roundtrip() {
        let b = BlockStructure::new(vec![
            BlockSpec { irrep: 0, degree: 2, multiplicity: 3 },
            BlockSpec { irrep: 1, degree: 3, multiplicity: 1 },
            BlockSpec { irrep: 2, degree: 1, multiplicity: 4 },
        ])
        .unwrap();
        let n = b.total_degree();
        let mut seen = vec![false; n + 1];
        for (t, spec) in b.blocks().iter().enumerate() {
            for kappa in 1..=spec.multiplicity {
                for iota in 1..=spec.degree {
                    let pos = b.alpha(t + 1, kappa, iota).unwrap();
                    assert!(!seen[pos], "alpha not injective at {pos}");
                    seen[pos] = true;
                    assert_eq!(b.alpha_inverse(pos).unwrap(), (t + 1, kappa, iota));
                }
            }
        }
        assert!(seen[1..].iter().all(|&s| s), "alpha not surjective");
    }

    #[test]
    fn beta_index_examples() {
        let b = BlockStructure::new(vec![BlockSpec { irrep: 0, degree: 1, multiplicity: 1 }]).unwrap();
        assert_eq!(b.beta(1, 1).unwrap(), 1);
        let b = BlockStructure::new(vec![BlockSpec { irrep: 0, degree: 3, multiplicity: 2 }]).unwrap();
        assert_eq!(b.beta(1, 1).unwrap(), 1);
        assert_eq!(b.beta(1, 2).unwrap(), 5);
        assert_eq!(b.beta(1, 3).unwrap(), 6);
    }

    #[test]
    fn d_max_examples() {
        let b = BlockStructure::new(vec![
            BlockSpec { irrep: 0, degree: 3, multiplicity: 2 },
            BlockSpec { irrep: 1, degree: 5, multiplicity: 1 },
        ])
        .unwrap();
        assert_eq!(b.d_max(), 3);
        let b = BlockStructure::new(vec![
            BlockSpec { irrep: 0, degree: 3, multiplicity: 1 },
            BlockSpec { irrep: 1, degree: 5, multiplicity: 1 },
        ])
        .unwrap();
        assert_eq!(b.d_max(), 1);
    }

    #[test]
    fn single_block_diagonal_is_constituent() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let cat = irreducible_catalog(&g).unwrap();
        let two_dim = cat.iter().find(|r| r.degree() == 2).unwrap().clone();
        let b = block_diagonal(&[(two_dim.clone(), 1)]).unwrap();
        assert_rep_close(&b, &two_dim, 0.0);
    }

    #[test]
    fn block_diagonal_rejects_equivalent_constituents() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let cat = irreducible_catalog(&g).unwrap();
        let err = block_diagonal(&[(cat[1].clone(), 1), (cat[1].clone(), 1)]).unwrap_err();
        assert!(err.to_string().contains("equivalent"));
        let l = Representation::left_regular(&g);
        let err = block_diagonal(&[(l, 1)]).unwrap_err();
        assert!(err.to_string().contains("irreducible"));
    }

    #[test]
    fn dft_conjugation_of_left_regular_is_diagonal_characters() {
        for n in [2u64, 3, 6, 8] {
            let g = FiniteGroup::cyclic(n).unwrap();
            let l = Representation::left_regular(&g);
            let f = dft_matrix(n as usize);
            let conj = l.conjugate(&f).unwrap();
            let diag = diagonal_characters(&g).unwrap();
            assert_rep_close(&conj, &diag, 1e-12);
        }
    }

    #[test]
    fn double_conjugation_restores() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let l = Representation::left_regular(&g);
        let mut rng = crate::rng::rng_from_seed(5);
        let v = crate::linalg::random_unitary(6, &mut rng);
        let back = l.conjugate(&v).unwrap().conjugate(&v.adjoint()).unwrap();
        assert_rep_close(&back, &l, 1e-10);
        // identity conjugation is exact
        let same = l.conjugate(&CMatrix::identity(6, 6)).unwrap();
        assert_rep_close(&same, &l, 0.0);
    }

    #[test]
    fn conjugate_rejects_nonunitary() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let l = Representation::left_regular(&g);
        let mut v = CMatrix::identity(3, 3);
        v[(0, 0)] = Complex64::new(1.0 + 1e-3, 0.0);
        assert!(matches!(l.conjugate(&v), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn u_transform_unitary_and_dichotomy() {
        let b = BlockStructure::new(vec![BlockSpec { irrep: 0, degree: 2, multiplicity: 2 }]).unwrap();
        let u = realization_transform_u(&b);
        assert!(unitarity_defect(&u) < 1e-10);
        assert!(subrow_dichotomy_defect(&u, &b) < 1e-12);

        // all-ones degrees: column-rescaled DFT stays unitary
        let b = BlockStructure::new(vec![
            BlockSpec { irrep: 0, degree: 1, multiplicity: 3 },
            BlockSpec { irrep: 1, degree: 1, multiplicity: 2 },
        ])
        .unwrap();
        let u = realization_transform_u(&b);
        assert!(unitarity_defect(&u) < 1e-10);
        assert!(max_abs(&u) <= 1.0 / (5.0f64).sqrt() + 1e-12);

        // random mixed structures, n <= 16
        let mut rng = crate::rng::rng_from_seed(9);
        for _ in 0..10 {
            use rand::Rng;
            let mut blocks = Vec::new();
            let mut total = 0usize;
            let mut id = 0usize;
            while total < 12 {
                let d = rng.random_range(1..=3usize);
                let m = rng.random_range(1..=3usize);
                blocks.push(BlockSpec { irrep: id, degree: d, multiplicity: m });
                total += d * m;
                id += 1;
            }
            let b = BlockStructure::new(blocks).unwrap();
            let u = realization_transform_u(&b);
            assert!(unitarity_defect(&u) < 1e-10);
            assert!(subrow_dichotomy_defect(&u, &b) < 1e-12);
        }
    }

    #[test]
    fn induce_whole_group_reproduces_sigma() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let all: Vec<usize> = g.elements().collect();
        let p = g.coset_partition(&all).unwrap();
        let (sub, _) = p.subgroup_as_group().unwrap();
        let sigma = irreducible_catalog(&FiniteGroup::dihedral(3).unwrap())
            .unwrap()
            .into_iter()
            .find(|r| r.degree() == 2)
            .unwrap();
        // rebuild sigma on the subgroup-as-group so tables match
        let sigma_sub =
            Representation::from_matrices(&sub, (0..6).map(|e| sigma.matrix(e).clone()).collect())
                .unwrap();
        let ind = induce(&p, &sigma_sub, &p.min_cross_section()).unwrap();
        assert_rep_close(&ind, &sigma_sub, 0.0);
    }

    #[test]
    fn induce_from_trivial_subgroup_is_permutation_rep() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let p = g.coset_partition(&[g.identity()]).unwrap();
        let (sub, _) = p.subgroup_as_group().unwrap();
        let sigma = Representation::trivial(&sub, 1).unwrap();
        let ind = induce(&p, &sigma, &p.min_cross_section()).unwrap();
        assert_eq!(ind.degree(), 6);
        ind.verify(REP_TOL).unwrap();
        for g_el in g.elements() {
            let m = ind.matrix(g_el);
            for r in 0..6 {
                let row_sum: f64 = (0..6).map(|c| m[(r, c)].norm()).sum();
                assert!((row_sum - 1.0).abs() < 1e-12, "not a permutation matrix");
            }
        }
    }

    #[test]
    fn induce_sign_character_on_z4() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let p = g.coset_partition(&[0, 2]).unwrap();
        let (sub, embed) = p.subgroup_as_group().unwrap();
        assert_eq!(embed, vec![0, 2]);
        // sign character of {0, 2}: 0 -> 1, 2 -> -1
        let sigma = Representation::from_matrices(
            &sub,
            vec![
                CMatrix::from_element(1, 1, ONE),
                CMatrix::from_element(1, 1, -ONE),
            ],
        )
        .unwrap();
        let ind = induce(&p, &sigma, &p.min_cross_section()).unwrap();
        assert_eq!(ind.degree(), 2);
        ind.verify(REP_TOL).unwrap();
        let sq = ind.matrix(1) * ind.matrix(1);
        assert!(max_abs_diff(&sq, ind.matrix(2)) < 1e-12);
    }

    #[test]
    fn induce_rejects_foreign_sigma() {
        let g = FiniteGroup::cyclic(4).unwrap();
        let p = g.coset_partition(&[0, 2]).unwrap();
        let other = FiniteGroup::cyclic(2).unwrap();
        let sigma = Representation::trivial(&other, 1).unwrap();
        // C_2 as abstract group has the same Cayley table as {0,2} reindexed,
        // but different labels do not matter; a genuinely different subgroup does.
        let p3 = FiniteGroup::cyclic(6).unwrap().coset_partition(&[0, 2, 4]).unwrap();
        let (sub3, _) = p3.subgroup_as_group().unwrap();
        let sigma3 = Representation::trivial(&sub3, 1).unwrap();
        assert!(induce(&p, &sigma3, &p.min_cross_section()).is_err());
        let _ = sigma;
    }

    #[test]
    fn detects_broken_homomorphism() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let mut mats: Vec<CMatrix> = (0..3).map(|_| CMatrix::identity(2, 2)).collect();
        mats[1][(0, 0)] = Complex64::new(0.0, 1.0);
        assert!(Representation::from_matrices(&g, mats).is_err());
    }

    #[test]
    fn projective_cocycle_accepted() {
        // a genuine projective representation of Z/2 x Z/2 via Pauli matrices
        let g = FiniteGroup::from_cayley(
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0],
            ],
            None,
        )
        .unwrap();
        let i = Complex64::new(0.0, 1.0);
        let sx = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let sy = CMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO]);
        let sz = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
        let mats = vec![CMatrix::identity(2, 2), sx.clone(), sy.clone(), sz.clone()];
        // lambda(g,h) = value making sigma(g) sigma(h) = lambda sigma(gh)
        let table = [
            [0usize, 1, 2, 3],
            [1, 0, 3, 2],
            [2, 3, 0, 1],
            [3, 2, 1, 0],
        ];
        let mut cocycle = vec![ONE; 16];
        for a in 0..4 {
            for b in 0..4 {
                let prod = &mats[a] * &mats[b];
                let target = &mats[table[a][b]];
                // both are unitary with the same nonzero pattern
                let mut lambda = ONE;
                'outer: for r in 0..2 {
                    for c in 0..2 {
                        if target[(r, c)].norm() > 0.5 {
                            lambda = prod[(r, c)] / target[(r, c)];
                            break 'outer;
                        }
                    }
                }
                cocycle[a * 4 + b] = lambda;
            }
        }
        let rep = Representation::from_projective_matrices(&g, mats, Some(cocycle)).unwrap();
        assert!(rep.homomorphism_defect() < 1e-12);
    }

    #[test]
    fn catalog_requires_known_kind() {
        let g = FiniteGroup::from_cayley(vec![vec![0, 1], vec![1, 0]], None).unwrap();
        assert!(matches!(irreducible_catalog(&g), Err(Error::NoCatalog(_))));
        assert_eq!(g.kind(), None);
    }

    #[test]
    fn catalog_kinds_roundtrip() {
        for (kind, param) in [
            (GroupKind::Cyclic, 7),
            (GroupKind::Dihedral, 5),
            (GroupKind::Affine, 5),
        ] {
            let g = FiniteGroup::build(kind, param).unwrap();
            let cat = irreducible_catalog(&g).unwrap();
            let total: usize = cat.iter().map(|r| r.degree().pow(2)).sum();
            assert_eq!(total, g.order());
        }
    }
}

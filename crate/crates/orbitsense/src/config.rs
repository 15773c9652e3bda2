//! Flat key = value experiment configuration.
//!
//! The format is deliberately plain: `[section]` headers, `key = value`
//! lines, `#` comments, no nesting or interpolation. See the crate README
//! for the full schema.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::fourier::dft_matrix;
use crate::group::{CosetPartition, FiniteGroup, GroupKind};
use crate::io::read_matrix;
use crate::rep::{
    block_diagonal, diagonal_characters, irreducible_catalog, realization_transform_u,
    Representation,
};
use crate::sensing::{BasisSpec, OmegaMode, Scheme};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Verify,
    Constant,
    Rip,
    Counterexample,
    PhaseTransition,
    Bound,
}

impl ExperimentKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "verify" => Ok(ExperimentKind::Verify),
            "constant" => Ok(ExperimentKind::Constant),
            "rip" => Ok(ExperimentKind::Rip),
            "counterexample" => Ok(ExperimentKind::Counterexample),
            "phase-transition" | "phase_transition" => Ok(ExperimentKind::PhaseTransition),
            "bound" => Ok(ExperimentKind::Bound),
            other => Err(Error::Config(format!("unknown experiment kind '{other}'"))),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            ExperimentKind::Verify => "verify",
            ExperimentKind::Constant => "constant",
            ExperimentKind::Rip => "rip",
            ExperimentKind::Counterexample => "counterexample",
            ExperimentKind::PhaseTransition => "phase-transition",
            ExperimentKind::Bound => "bound",
        }
    }
}

/// Parsed `[section] key = value` file.
#[derive(Debug, Clone, Default)]
pub struct IniFile {
    sections: BTreeMap<String, BTreeMap<String, String>>,
}

impl IniFile {
    pub fn parse(text: &str) -> Result<IniFile> {
        let mut sections: BTreeMap<String, BTreeMap<String, String>> = BTreeMap::new();
        let mut current = String::from("");
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if line.starts_with('[') {
                if !line.ends_with(']') {
                    return Err(Error::Config(format!(
                        "line {}: unterminated section header",
                        no + 1
                    )));
                }
                current = line[1..line.len() - 1].trim().to_string();
                sections.entry(current.clone()).or_default();
                continue;
            }
            let Some(eq) = line.find('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected 'key = value', got '{line}'",
                    no + 1
                )));
            };
            let key = line[..eq].trim().to_string();
            let value = line[eq + 1..].trim().to_string();
            if key.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", no + 1)));
            }
            sections
                .entry(current.clone())
                .or_default()
                .insert(key, value);
        }
        Ok(IniFile { sections })
    }

    pub fn load(path: &Path) -> Result<IniFile> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        IniFile::parse(&text)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections
            .get(section)
            .and_then(|s| s.get(key))
            .map(|s| s.as_str())
    }

    pub fn require(&self, section: &str, key: &str) -> Result<&str> {
        self.get(section, key)
            .ok_or_else(|| Error::Config(format!("missing required key [{section}] {key}")))
    }

    pub fn get_u64(&self, section: &str, key: &str) -> Result<Option<u64>> {
        self.get(section, key)
            .map(|v| {
                v.parse::<u64>()
                    .map_err(|_| Error::Config(format!("[{section}] {key}: bad integer '{v}'")))
            })
            .transpose()
    }

    pub fn get_usize(&self, section: &str, key: &str) -> Result<Option<usize>> {
        Ok(self.get_u64(section, key)?.map(|v| v as usize))
    }

    pub fn get_f64(&self, section: &str, key: &str) -> Result<Option<f64>> {
        self.get(section, key)
            .map(|v| {
                v.parse::<f64>()
                    .map_err(|_| Error::Config(format!("[{section}] {key}: bad number '{v}'")))
            })
            .transpose()
    }

    pub fn get_usize_list(&self, section: &str, key: &str) -> Result<Option<Vec<usize>>> {
        self.get(section, key)
            .map(|v| {
                v.split(',')
                    .map(|t| {
                        t.trim().parse::<usize>().map_err(|_| {
                            Error::Config(format!("[{section}] {key}: bad list entry '{t}'"))
                        })
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .transpose()
    }
}

/// How the representation is specified in a config.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    LeftRegular,
    Trivial { degree: Option<usize> },
    Affine,
    DiagonalCharacters,
    BlockDiagonal { blocks: Vec<(usize, usize)> },
    Induced { subgroup: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugateBy {
    None,
    Dft,
    BlockU,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisKind {
    Identity,
    Dft,
    File(PathBuf),
}

/// Solver and success tolerances.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub tol_feas: f64,
    pub tol_opt: f64,
    pub max_iter: usize,
    pub success_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_feas: 1e-8,
            tol_opt: 1e-7,
            max_iter: 50_000,
            success_tol: 1e-4,
        }
    }
}

/// The fully parsed (but not yet materialized) experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub group_kind: GroupKind,
    pub group_param: u64,
    pub realization: Realization,
    pub conjugate_by: ConjugateBy,
    pub basis: BasisKind,
    pub scheme: Scheme,
    pub omega_mode: OmegaMode,
    pub omega_subgroup: Option<Vec<usize>>,
    pub omega_indices: Option<Vec<usize>>,
    pub trials: usize,
    pub master_seed: u64,
    pub out: Option<PathBuf>,
    pub tolerances: Tolerances,
    pub raw: IniFile,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<ExperimentConfig> {
        let ini = IniFile::load(path)?;
        Self::from_ini(ini)
    }

    pub fn from_ini(ini: IniFile) -> Result<ExperimentConfig> {
        let kind = ExperimentKind::parse(ini.require("experiment", "kind")?)?;
        let group_kind = GroupKind::parse(ini.require("group", "kind")?)?;
        let group_param = ini
            .get_u64("group", "param")?
            .ok_or_else(|| Error::Config("missing [group] param".into()))?;

        let realization = match ini
            .get("representation", "realization")
            .unwrap_or("left_regular")
        {
            "left_regular" => Realization::LeftRegular,
            "trivial" => Realization::Trivial {
                degree: ini.get_usize("representation", "degree")?,
            },
            "affine" => Realization::Affine,
            "diagonal_characters" => Realization::DiagonalCharacters,
            "block_diagonal" => {
                let spec = ini.require("representation", "blocks")?;
                let blocks = spec
                    .split(',')
                    .map(|tok| {
                        let tok = tok.trim();
                        let (idx, mult) = tok.split_once(':').ok_or_else(|| {
                            Error::Config(format!(
                                "[representation] blocks: expected 'irrep:multiplicity', got '{tok}'"
                            ))
                        })?;
                        let i = idx
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Config(format!("bad irrep index '{idx}'")))?;
                        let m = mult
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Config(format!("bad multiplicity '{mult}'")))?;
                        Ok((i, m))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Realization::BlockDiagonal { blocks }
            }
            "induced" => {
                let subgroup = ini.get_usize_list("representation", "subgroup")?.ok_or_else(
                    || Error::Config("induced realization needs [representation] subgroup".into()),
                )?;
                match ini.get("representation", "sigma").unwrap_or("trivial") {
                    "trivial" => {}
                    other => {
                        return Err(Error::Config(format!(
                            "config-level induced sigma supports only 'trivial', got '{other}'"
                        )))
                    }
                }
                Realization::Induced { subgroup }
            }
            other => return Err(Error::Config(format!("unknown realization '{other}'"))),
        };

        let conjugate_by = match ini.get("representation", "conjugate_by").unwrap_or("none") {
            "none" => ConjugateBy::None,
            "dft" => ConjugateBy::Dft,
            "block_u" => ConjugateBy::BlockU,
            other => match other.strip_prefix("file:") {
                Some(p) => ConjugateBy::File(PathBuf::from(p.trim())),
                None => {
                    return Err(Error::Config(format!(
                        "unknown conjugate_by '{other}' (none|dft|block_u|file:PATH)"
                    )))
                }
            },
        };

        let basis = match ini.get("basis", "kind").unwrap_or("identity") {
            "identity" => BasisKind::Identity,
            "dft" => BasisKind::Dft,
            "file" => BasisKind::File(PathBuf::from(ini.require("basis", "path")?)),
            other => {
                return Err(Error::Config(format!(
                    "unknown basis kind '{other}' (identity|dft|file)"
                )))
            }
        };

        let scheme = Scheme::parse(ini.get("xi", "scheme").unwrap_or("steinhaus"))?;
        let omega_mode = OmegaMode::parse(ini.get("omega", "mode").unwrap_or("fixed_set"))?;
        let omega_subgroup = ini.get_usize_list("omega", "subgroup")?;
        let omega_indices = ini.get_usize_list("omega", "indices")?;

        let trials = ini.get_usize("experiment", "trials")?.unwrap_or(1);
        if trials < 1 {
            return Err(Error::Config("trials must be >= 1".into()));
        }
        let master_seed = ini.get_u64("experiment", "master_seed")?.unwrap_or(0);
        let out = ini.get("experiment", "out").map(PathBuf::from);

        let defaults = Tolerances::default();
        let tolerances = Tolerances {
            tol_feas: ini
                .get_f64("tolerances", "tol_feas")?
                .unwrap_or(defaults.tol_feas),
            tol_opt: ini
                .get_f64("tolerances", "tol_opt")?
                .unwrap_or(defaults.tol_opt),
            max_iter: ini
                .get_usize("tolerances", "max_iter")?
                .unwrap_or(defaults.max_iter),
            success_tol: ini
                .get_f64("tolerances", "success_tol")?
                .unwrap_or(defaults.success_tol),
        };

        Ok(ExperimentConfig {
            kind,
            group_kind,
            group_param,
            realization,
            conjugate_by,
            basis,
            scheme,
            omega_mode,
            omega_subgroup,
            omega_indices,
            trials,
            master_seed,
            out,
            tolerances,
            raw: ini,
        })
    }

    /// One-line provenance descriptor of the representation.
    pub fn rep_descriptor(&self) -> String {
        let base = match &self.realization {
            Realization::LeftRegular => "left_regular".to_string(),
            Realization::Trivial { degree } => match degree {
                Some(d) => format!("trivial:{d}"),
                None => "trivial".to_string(),
            },
            Realization::Affine => "affine".to_string(),
            Realization::DiagonalCharacters => "diagonal_characters".to_string(),
            Realization::BlockDiagonal { blocks } => format!(
                "block_diagonal:{}",
                blocks
                    .iter()
                    .map(|(i, m)| format!("{i}:{m}"))
                    .collect::<Vec<_>>()
                    .join("+")
            ),
            Realization::Induced { subgroup } => format!(
                "induced:H={}",
                subgroup
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join("+")
            ),
        };
        match &self.conjugate_by {
            ConjugateBy::None => base,
            ConjugateBy::Dft => format!("{base}|conj:dft"),
            ConjugateBy::BlockU => format!("{base}|conj:block_u"),
            ConjugateBy::File(p) => format!("{base}|conj:file:{}", p.display()),
        }
    }

    pub fn basis_descriptor(&self) -> String {
        match &self.basis {
            BasisKind::Identity => "identity".to_string(),
            BasisKind::Dft => "dft".to_string(),
            BasisKind::File(p) => format!("file:{}", p.display()),
        }
    }
}

/// Materialized group, representation, basis and optional coset partition.
pub struct ResolvedSetup {
    pub group: FiniteGroup,
    pub rep: Representation,
    pub basis: BasisSpec,
    pub partition: Option<CosetPartition>,
}

impl ExperimentConfig {
    pub fn resolve(&self) -> Result<ResolvedSetup> {
        let group = FiniteGroup::build(self.group_kind, self.group_param)?;

        let rep = match &self.realization {
            Realization::LeftRegular => Representation::left_regular(&group),
            Realization::Trivial { degree } => {
                Representation::trivial(&group, degree.unwrap_or(group.order()))?
            }
            Realization::Affine => {
                if self.group_kind != GroupKind::Affine {
                    return Err(Error::Config(
                        "the affine realization needs an affine group".into(),
                    ));
                }
                Representation::affine(self.group_param)?
            }
            Realization::DiagonalCharacters => diagonal_characters(&group)?,
            Realization::BlockDiagonal { blocks } => {
                let catalog = irreducible_catalog(&group)?;
                let constituents: Vec<(Representation, usize)> = blocks
                    .iter()
                    .map(|&(i, m)| {
                        catalog.get(i).cloned().map(|r| (r, m)).ok_or_else(|| {
                            Error::Config(format!(
                                "irrep index {i} out of range (catalog has {})",
                                catalog.len()
                            ))
                        })
                    })
                    .collect::<Result<_>>()?;
                block_diagonal(&constituents)?
            }
            Realization::Induced { subgroup } => {
                let partition = group.coset_partition(subgroup)?;
                let (sub, _) = partition.subgroup_as_group()?;
                let sigma = Representation::trivial(&sub, 1)?;
                crate::rep::induce(&partition, &sigma, &partition.min_cross_section())?
            }
        };

        let rep = match &self.conjugate_by {
            ConjugateBy::None => rep,
            ConjugateBy::Dft => rep.conjugate(&dft_matrix(rep.degree()))?,
            ConjugateBy::BlockU => {
                let structure = rep.block().cloned().ok_or_else(|| {
                    Error::Config("conjugate_by = block_u needs a block-diagonal realization".into())
                })?;
                rep.conjugate(&realization_transform_u(&structure))?
            }
            ConjugateBy::File(path) => rep.conjugate(&read_matrix(path)?)?,
        };

        let basis = match &self.basis {
            BasisKind::Identity => BasisSpec::Identity,
            BasisKind::Dft => BasisSpec::Dft,
            BasisKind::File(path) => BasisSpec::Unitary(read_matrix(path)?),
        };

        let partition = match &self.omega_subgroup {
            Some(h) => Some(group.coset_partition(h)?),
            None => None,
        };
        if self.omega_mode == OmegaMode::CosetAdmissible && partition.is_none() {
            return Err(Error::Config(
                "coset_admissible sampling needs [omega] subgroup".into(),
            ));
        }

        Ok(ResolvedSetup {
            group,
            rep,
            basis,
            partition,
        })
    }
}

//! Job configuration: a JSON document, optionally overridden by flags.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::Deserialize;
use shapeinv::extensions::{build_extension, ExtensionSpec};
use shapeinv::families::build_family;
use shapeinv::{ConstructionData, Coupling, ExtensionCase, FamilyId, FamilyParams, Grid, InvariantExpr, OracleSpec, ParamVector};

use crate::CliError;

#[derive(Debug, Clone, Copy, Deserialize)]
pub struct GridConfig {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingConfig {
    pub invariant: String,
    pub beta: f64,
    pub d: f64,
}

/// The single-document job description.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub family: Option<String>,
    pub extension: Option<String>,
    pub m: Option<Vec<f64>>,
    pub couplings: Option<Vec<CouplingConfig>>,
    pub rho_invariant: Option<String>,
    pub eps: Option<f64>,
    pub rho: Option<f64>,
    pub beta: Option<f64>,
    pub ell: Option<usize>,
    pub grid: Option<GridConfig>,
    pub oracle: Option<GridConfig>,
    pub tol: Option<f64>,
    pub kmax: Option<usize>,
    pub k: Option<usize>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }
}

/// Flags shared by every job-running subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct JobArgs {
    /// JSON job document
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Family id, e.g. scarf2
    #[arg(long)]
    pub family: Option<String>,
    /// Extension id, ext-1 .. ext-11
    #[arg(long)]
    pub extension: Option<String>,
    /// Parameter vector m, comma separated
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub m: Option<Vec<f64>>,
    /// Coupling `I;beta;d`, repeatable
    #[arg(long = "coupling", allow_hyphen_values = true)]
    pub couplings: Vec<String>,
    /// Invariant giving rho for the generalized families
    #[arg(long)]
    pub rho_invariant: Option<String>,
    /// Effective eps (instead of m and couplings)
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    /// Effective rho
    #[arg(long, allow_hyphen_values = true)]
    pub rho: Option<f64>,
    /// Oscillator frequency for harm-osc in effective mode
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// Extension degree
    #[arg(long)]
    pub ell: Option<usize>,
    /// Evaluation grid `a,b,N`
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// Tolerance override
    #[arg(long)]
    pub tol: Option<f64>,
    /// Emit JSON
    #[arg(long)]
    pub json: bool,
}

pub fn parse_grid(s: &str) -> Result<GridConfig, CliError> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || CliError::Config(format!("grid must be `a,b,N`, got `{s}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok(GridConfig {
        a: parts[0].parse().map_err(|_| bad())?,
        b: parts[1].parse().map_err(|_| bad())?,
        n: parts[2].parse().map_err(|_| bad())?,
    })
}

fn parse_coupling(s: &str) -> Result<CouplingConfig, CliError> {
    let parts: Vec<&str> = s.split(';').map(str::trim).collect();
    let bad = || CliError::Config(format!("coupling must be `I;beta;d`, got `{s}`"));
    if parts.len() != 3 {
        return Err(bad());
    }
    Ok(CouplingConfig {
        invariant: parts[0].to_string(),
        beta: parts[1].parse().map_err(|_| bad())?,
        d: parts[2].parse().map_err(|_| bad())?,
    })
}

/// What a job acts on.
#[derive(Debug, Clone)]
pub enum Target {
    Family(FamilyParams),
    Extension(ExtensionSpec),
}

/// A resolved job: target plus the optional knobs.
#[derive(Debug, Clone)]
pub struct Job {
    pub target: Target,
    pub grid: Option<Grid>,
    pub oracle: Option<GridConfig>,
    pub tol: Option<f64>,
    pub kmax: Option<usize>,
    pub k: Option<usize>,
    pub json: bool,
}

impl JobArgs {
    /// Merges the config document (if any) with the flags, flags winning.
    pub fn merged(&self) -> Result<JobConfig, CliError> {
        let mut c = match &self.config {
            Some(p) => JobConfig::load(p)?,
            None => JobConfig::default(),
        };
        if self.family.is_some() || self.extension.is_some() {
            c.family = self.family.clone();
            c.extension = self.extension.clone();
        }
        macro_rules! take {
            ($($f:ident),*) => { $( if self.$f.is_some() { c.$f = self.$f.clone(); } )* };
        }
        take!(m, rho_invariant, eps, rho, beta, ell, tol);
        if !self.couplings.is_empty() {
            c.couplings = Some(self.couplings.iter().map(|s| parse_coupling(s)).collect::<Result<_, _>>()?);
        }
        if let Some(g) = &self.grid {
            c.grid = Some(parse_grid(g)?);
        }
        Ok(c)
    }

    pub fn resolve(&self) -> Result<Job, CliError> {
        let c = self.merged()?;
        let target = resolve_target(&c)?;
        let grid = c.grid.map(|g| Grid::new(g.a, g.b, g.n)).transpose()?;
        if let Some(t) = c.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(CliError::Config(format!("tolerance must be positive, got {t}")));
            }
        }
        Ok(Job { target, grid, oracle: c.oracle, tol: c.tol, kmax: c.kmax, k: c.k, json: self.json })
    }
}

fn construction(c: &JobConfig, n_default: usize) -> Result<ConstructionData, CliError> {
    let m = c.m.clone().ok_or_else(|| CliError::Config("parameter vector `m` is required".into()))?;
    let p = ParamVector::new(m)?;
    let n = p.len().max(n_default);
    let couplings = match &c.couplings {
        Some(list) if !list.is_empty() => list
            .iter()
            .map(|k| Ok(Coupling::new(InvariantExpr::verified(&k.invariant, n)?, k.beta, k.d)))
            .collect::<Result<Vec<_>, CliError>>()?,
        _ => vec![Coupling::constant(0.0, 0.0, n)?],
    };
    let rho = c.rho_invariant.as_deref().map(|s| InvariantExpr::verified(s, n)).transpose()?;
    Ok(ConstructionData::new(p, couplings, rho)?)
}

fn resolve_target(c: &JobConfig) -> Result<Target, CliError> {
    let effective = c.eps.is_some() || c.rho.is_some() || c.beta.is_some();
    if effective && (c.m.is_some() || c.couplings.is_some() || c.rho_invariant.is_some()) {
        return Err(CliError::Config("give either effective parameters (eps, rho, beta) or m with couplings".into()));
    }
    match (&c.family, &c.extension) {
        (Some(_), Some(_)) => Err(CliError::Config("give either a family or an extension, not both".into())),
        (None, None) => Err(CliError::Config("a family or an extension id is required".into())),
        (Some(f), None) => {
            let id: FamilyId = f.parse()?;
            if c.ell.is_some() {
                return Err(CliError::Config("`ell` applies to extensions only".into()));
            }
            let fp = if !effective {
                build_family(id, &construction(c, 1)?)?
            } else if id == FamilyId::HarmOsc {
                if c.eps.is_some() {
                    return Err(CliError::Config("harm-osc takes beta and rho, not eps".into()));
                }
                FamilyParams::harm_osc(c.beta.unwrap_or(1.0), c.rho.unwrap_or(0.0))?
            } else {
                if c.beta.is_some() {
                    return Err(CliError::Config("beta applies to harm-osc only".into()));
                }
                let eps = c.eps.ok_or_else(|| CliError::Config("effective mode needs eps".into()))?;
                FamilyParams::from_effective(id, eps, c.rho.unwrap_or(0.0))?
            };
            Ok(Target::Family(fp))
        }
        (None, Some(e)) => {
            let case: ExtensionCase = e.parse()?;
            let spec = if effective {
                if c.beta.is_some() {
                    return Err(CliError::Config("beta applies to harm-osc only".into()));
                }
                let eps = c.eps.ok_or_else(|| CliError::Config("effective mode needs eps".into()))?;
                ExtensionSpec::from_effective(case, eps, c.rho.unwrap_or(0.0), c.ell)?
            } else {
                build_extension(case, &construction(c, 1)?, c.ell)?
            };
            Ok(Target::Extension(spec))
        }
    }
}

impl GridConfig {
    pub fn oracle(&self) -> Result<OracleSpec, CliError> {
        Ok(OracleSpec::new(self.a, self.b, self.n)?)
    }
}

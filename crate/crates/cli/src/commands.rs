use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use shapeinv::extensions::{check_cond1, check_cond2, extended_si_check};
use shapeinv::spectra::{admissible_range, eigenenergy, wavefunction};
use shapeinv::verify::{
    default_grid, family_oracle, fd_spectrum, fd_spectrum_family, gram_deviation, gram_matrix, ladder_check,
    norm_squared, si_residual, state_grid,
};
use shapeinv::{ExtendedSuperpotential, ExtensionCase, ExtensionSpec, FamilyId, FamilyParams, GridReport, OracleSpec};

use crate::job::{parse_grid, Job, Target};
use crate::output::{csv_rows, extension_params, family_params, grid_report, num, to_json};
use crate::{Check, CliError, Outcome};

const DEFAULT_KMAX: usize = 5;
const ORACLE_N: usize = 3000;
const ORACLE_TOL: f64 = 5e-3;
const NORM_TOL: f64 = 1e-6;
const SI_TOL: f64 = 1e-9;
const COND1_TOL: f64 = 1e-8;
const COND2_TOL: f64 = 1e-10;
const EXT_SI_TOL: f64 = 1e-7;
const LADDER_TOL: f64 = 1e-5;
const ORTHO_TOL: f64 = 1e-6;
const SI_POINTS: usize = 2001;
const EXT_POINTS: usize = 501;
const STATE_POINTS: usize = 201;

fn family(job: &Job, what: &str) -> Result<FamilyParams, CliError> {
    match &job.target {
        Target::Family(fp) => Ok(fp.clone()),
        Target::Extension(s) => Err(CliError::Config(format!("{what} applies to families, not {}", s.case))),
    }
}

fn extension(job: &Job, what: &str) -> Result<ExtensionSpec, CliError> {
    match &job.target {
        Target::Extension(s) => Ok(s.clone()),
        Target::Family(fp) => Err(CliError::Config(format!("{what} applies to extensions, not {}", fp.id))),
    }
}

fn status(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn list(extensions: bool, as_json: bool) -> Outcome {
    let mut rows: Vec<(String, &str, &str)> = FamilyId::ALL.iter().map(|f| (f.id().to_string(), f.label(), "family")).collect();
    if extensions {
        rows.extend(ExtensionCase::all().map(|c| (c.id(), c.label(), "extension")));
    }
    let body = if as_json {
        to_json(&rows.iter().map(|(id, label, kind)| json!({"id": id, "label": label, "kind": kind})).collect::<Vec<_>>())
    } else {
        rows.iter().fold(String::new(), |mut s, (id, label, _)| {
            let _ = writeln!(s, "{id:<18} {label}");
            s
        })
    };
    Outcome { body, pass: true }
}

fn oracle_spec(job: &Job, flag: Option<&str>, fallback: impl FnOnce() -> Result<OracleSpec, CliError>) -> Result<OracleSpec, CliError> {
    match flag.map(parse_grid).transpose()?.or(job.oracle) {
        Some(g) => g.oracle(),
        None => fallback(),
    }
}

pub fn spectrum(job: &Job, kmax: Option<usize>, with_oracle: bool, oracle_grid: Option<&str>) -> Result<Outcome, CliError> {
    let fp = family(job, "spectrum")?;
    let kmax = kmax.or(job.kmax).unwrap_or(DEFAULT_KMAX);
    let range = admissible_range(&fp);
    let ks = range.first(kmax + 1);
    let energies = ks.iter().map(|&k| eigenenergy(&fp, k)).collect::<Result<Vec<_>, _>>()?;

    let mut oracle = None;
    if with_oracle && !ks.is_empty() {
        let spec = oracle_spec(job, oracle_grid, || Ok(family_oracle(&fp, ORACLE_N)?))?;
        let fd = fd_spectrum_family(&fp, &spec, ks.len())?;
        let gaps: Vec<f64> = fd.iter().map(|e| e - fd[0]).collect();
        let devs: Vec<f64> = gaps.iter().zip(&energies).map(|(g, e)| (g - (e - energies[0])).abs()).collect();
        oracle = Some((spec, gaps, devs));
    }
    let tol = job.tol.unwrap_or(ORACLE_TOL);
    let max_dev = oracle.as_ref().map(|o| o.2.iter().cloned().fold(0.0, f64::max));
    let pass = max_dev.is_none_or(|d| d <= tol);

    let body = if job.json {
        let rows: Vec<Value> = ks
            .iter()
            .enumerate()
            .map(|(i, k)| {
                let mut row = json!({"k": k, "energy": energies[i]});
                if let Some((_, gaps, devs)) = &oracle {
                    row["oracle_gap"] = json!(gaps[i]);
                    row["deviation"] = json!(devs[i]);
                }
                row
            })
            .collect();
        let mut out = json!({
            "family": fp.id.id(),
            "params": family_params(&fp),
            "range": range.to_string(),
            "rows": rows,
        });
        if let Some((spec, _, _)) = &oracle {
            out["oracle"] = json!({"a": spec.a, "b": spec.b, "N": spec.n, "max_deviation": max_dev, "tol": tol, "pass": pass});
        }
        to_json(&out)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "family {}  eps = {}  rho = {}  range {}", fp.id, fp.eps, fp.rho, range);
        match &oracle {
            Some((spec, gaps, devs)) => {
                let _ = writeln!(s, "oracle [{}, {}] N = {}", spec.a, spec.b, spec.n);
                let _ = writeln!(s, "{:>3}  {:>24}  {:>24}  {:>24}", "k", "E_k", "fd_gap", "deviation");
                for (i, k) in ks.iter().enumerate() {
                    let _ = writeln!(s, "{k:>3}  {:>24}  {:>24}  {:>24}", num(energies[i]), num(gaps[i]), num(devs[i]));
                }
                let _ = writeln!(s, "max deviation {} (tol {tol:e})  {}", num(max_dev.unwrap_or(0.0)), status(pass));
            }
            None => {
                let _ = writeln!(s, "{:>3}  {:>24}", "k", "E_k");
                for (k, e) in ks.iter().zip(&energies) {
                    let _ = writeln!(s, "{k:>3}  {:>24}", num(*e));
                }
            }
        }
        s
    };
    Ok(Outcome { body, pass })
}

pub fn wavefunction_cmd(job: &Job, k: Option<usize>) -> Result<Outcome, CliError> {
    let fp = family(job, "wavefunction")?;
    let k = k.unwrap_or(0);
    let state = wavefunction(&fp, k)?;
    let grid = match job.grid {
        Some(g) => g,
        None => state_grid(&state, STATE_POINTS)?,
    };
    let mut rows = Vec::with_capacity(grid.n);
    let mut imag = 0.0f64;
    for x in grid.points() {
        let z = state.eval(x)?;
        imag = imag.max(state.imaginary_residue(x)?);
        rows.push(vec![x, z, fp.potential(x)]);
    }
    let norm = norm_squared(&state)?;
    let tol = job.tol.unwrap_or(NORM_TOL);
    let pass = (norm - 1.0).abs() <= tol;
    let body = if job.json {
        let col = |i: usize| rows.iter().map(|r| r[i]).collect::<Vec<_>>();
        to_json(&json!({
            "family": fp.id.id(),
            "params": family_params(&fp),
            "k": k,
            "energy": state.energy,
            "norm": norm,
            "imag_residue": imag,
            "grid": {"a": grid.a, "b": grid.b, "N": grid.n},
            "x": col(0),
            "zeta": col(1),
            "V": col(2),
        }))
    } else {
        format!(
            "# family={} k={k} energy={} norm={} imag_residue={}\n{}",
            fp.id,
            num(state.energy),
            num(norm),
            num(imag),
            csv_rows(&["x", "zeta", "V"], &rows)
        )
    };
    Ok(Outcome { body, pass })
}

fn report_outcome(job: &Job, check: &str, target: (&str, Value), report: &GridReport, tol: f64, extra: Map<String, Value>) -> Outcome {
    let pass = report.passes(tol);
    let body = if job.json {
        let mut v = grid_report(report);
        let m = v.as_object_mut().expect("object");
        m.insert("check".into(), json!(check));
        m.insert(if target.0.starts_with("ext-") { "extension" } else { "family" }.into(), json!(target.0));
        m.insert("params".into(), target.1);
        m.insert("tol".into(), json!(tol));
        m.insert("pass".into(), json!(pass));
        m.extend(extra);
        to_json(&v)
    } else {
        let mut s = String::new();
        let _ = writeln!(s, "check          {check}");
        let _ = writeln!(s, "target         {}", target.0);
        let _ = writeln!(s, "residual_max   {}", num(report.max_residual));
        let _ = writeln!(s, "residual_mean  {}", num(report.mean_residual));
        let _ = writeln!(s, "argmax_x       {}", num(report.argmax_x));
        let _ = writeln!(s, "grid           [{}, {}] N = {}", report.grid.a, report.grid.b, report.grid.n);
        let _ = writeln!(s, "points         {} used, {} excluded", report.points_used, report.points_excluded);
        for (k, v) in &extra {
            let _ = writeln!(s, "{k:<14} {v}");
        }
        let _ = writeln!(s, "tol            {tol:e}");
        let _ = writeln!(s, "status         {}", status(pass));
        s
    };
    Outcome { body, pass }
}

fn check_name(c: Check) -> &'static str {
    match c {
        Check::Si => "si",
        Check::Cond1 => "cond1",
        Check::Cond2 => "cond2",
        Check::ExtSi => "ext-si",
        Check::Ladder => "ladder",
        Check::Orthonormal => "orthonormal",
    }
}

pub fn verify(job: &Job, which: Check, k: Option<usize>) -> Result<Outcome, CliError> {
    let name = check_name(which);
    let what = format!("verify {name}");
    match which {
        Check::Si => {
            let fp = family(job, &what)?;
            let grid = match job.grid {
                Some(g) => g,
                None => default_grid(fp.domain(), SI_POINTS)?,
            };
            let r = si_residual(&fp, &grid)?;
            Ok(report_outcome(job, name, (fp.id.id(), family_params(&fp)), &r, job.tol.unwrap_or(SI_TOL), Map::new()))
        }
        Check::Cond1 | Check::Cond2 | Check::ExtSi => {
            let spec = extension(job, &what)?;
            let grid = match job.grid {
                Some(g) => g,
                None => spec.default_grid(EXT_POINTS)?,
            };
            let (r, tol) = match which {
                Check::Cond1 => (check_cond1(&spec, &grid)?, COND1_TOL),
                Check::Cond2 => (check_cond2(&spec, &grid)?, COND2_TOL),
                _ => (extended_si_check(&spec, &grid)?, EXT_SI_TOL),
            };
            let id = spec.case.id();
            Ok(report_outcome(job, name, (&id, extension_params(&spec)), &r, job.tol.unwrap_or(tol), Map::new()))
        }
        Check::Ladder => {
            let fp = family(job, &what)?;
            let range = admissible_range(&fp);
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => [1, 2].into_iter().filter(|&k| range.contains(k)).collect(),
            };
            if ks.is_empty() {
                return Err(CliError::Config(format!("{} has no admissible k >= 1 (range {range})", fp.id)));
            }
            let mut worst: Option<(usize, shapeinv::verify::LadderReport)> = None;
            let mut per_k = Vec::new();
            for &k in &ks {
                let grid = match job.grid {
                    Some(g) => g,
                    None => state_grid(&wavefunction(&fp, k)?, SI_POINTS)?,
                };
                let l = ladder_check(&fp, k, &grid)?;
                per_k.push(json!({"k": k, "residual_max": l.report.max_residual, "sign": l.sign}));
                if worst.as_ref().is_none_or(|w| l.report.max_residual > w.1.report.max_residual) {
                    worst = Some((k, l));
                }
            }
            let (wk, w) = worst.expect("at least one k");
            let mut extra = Map::new();
            extra.insert("k".into(), json!(wk));
            extra.insert("sign".into(), json!(w.sign));
            extra.insert("per_k".into(), json!(per_k));
            Ok(report_outcome(job, name, (fp.id.id(), family_params(&fp)), &w.report, job.tol.unwrap_or(LADDER_TOL), extra))
        }
        Check::Orthonormal => {
            let fp = family(job, &what)?;
            let ks = admissible_range(&fp).first(4);
            if ks.is_empty() {
                return Err(CliError::Config(format!("{} has no admissible states", fp.id)));
            }
            let states = ks.iter().map(|&k| wavefunction(&fp, k)).collect::<Result<Vec<_>, _>>()?;
            let gram = gram_matrix(&states)?;
            let dev = gram_deviation(&gram);
            let tol = job.tol.unwrap_or(ORTHO_TOL);
            let pass = dev <= tol;
            let body = if job.json {
                to_json(&json!({
                    "check": name,
                    "family": fp.id.id(),
                    "params": family_params(&fp),
                    "states": ks,
                    "gram": gram,
                    "max_deviation": dev,
                    "tol": tol,
                    "pass": pass,
                }))
            } else {
                let mut s = format!("check          {name}\ntarget         {}\nstates         {ks:?}\n", fp.id);
                for row in &gram {
                    let _ = writeln!(s, "  {}", row.iter().map(|v| format!("{:>24}", num(*v))).collect::<Vec<_>>().join(" "));
                }
                let _ = writeln!(s, "max_deviation  {}\ntol            {tol:e}\nstatus         {}", num(dev), status(pass));
                s
            };
            Ok(Outcome { body, pass })
        }
    }
}

pub fn oracle_compare(job: &Job, kmax: Option<usize>, oracle_grid: Option<&str>) -> Result<Outcome, CliError> {
    let kmax = kmax.or(job.kmax).unwrap_or(2);
    let spec = match &job.target {
        Target::Family(_) => return spectrum(job, Some(kmax), true, oracle_grid),
        Target::Extension(s) => s.clone(),
    };
    let o = oracle_spec(job, oracle_grid, || Ok(OracleSpec::new(spec.window.0, spec.window.1, ORACLE_N)?))?;
    let w = ExtendedSuperpotential::new(spec.clone());
    let ev = fd_spectrum(|x| w.potential(x), &o, kmax + 1)?;
    let body = if job.json {
        to_json(&json!({
            "extension": spec.case.id(),
            "params": extension_params(&spec),
            "oracle": {"a": o.a, "b": o.b, "N": o.n},
            "eigenvalues": ev,
        }))
    } else {
        let mut s = format!("extension {}  eps = {}  rho = {}  ell = {}\n", spec.case, spec.eps, spec.rho, spec.ell);
        let _ = writeln!(s, "oracle [{}, {}] N = {}", o.a, o.b, o.n);
        for (i, e) in ev.iter().enumerate() {
            let _ = writeln!(s, "{i:>3}  {:>24}", num(*e));
        }
        s
    };
    Ok(Outcome { body, pass: true })
}

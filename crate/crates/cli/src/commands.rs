use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use phasecov::dynamics::csv_io::{read_eigenvalues, read_rates, write_combined, write_eigenvalues, write_rates, write_table};
use phasecov::dynamics::{
    cp_divisibility_via_choi, eigenvalues_from_rates, is_commutative_family, is_cp_divisible, rates_from_eigenvalues,
    semigroup_trajectory, DecoherenceRates, EigenvalueTrajectory, RateTrajectory,
};
use phasecov::mixtures::spec_file::{load_eta_spec, load_semigroup_spec};
use phasecov::mixtures::{
    commutativity_fit, eta_mixture_eigenvalues, invertibility_report, semigroup_mixture_eigenvalues,
    semigroup_mixture_rates, semigroup_recovery, unitality_defect, verify_prop2, EtaFamilyMixtureSpec,
    SemigroupMixtureSpec,
};
use phasecov::scan::{run_scan, ScanKind};
use phasecov::{Error, PhaseCovariantChannel};

use crate::config::RunConfig;
use crate::presets::{Preset, PresetModel};
use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Affirmative,
    Negative,
}

impl From<bool> for Verdict {
    fn from(ok: bool) -> Self {
        if ok {
            Self::Affirmative
        } else {
            Self::Negative
        }
    }
}

type CmdResult = Result<Verdict, UsageError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    RateSign,
    ChoiPropagator,
}

pub enum Source {
    Preset(Preset),
    Eigenvalues(PathBuf),
    Rates(PathBuf),
    /// Unvalidated `--constant` values.
    Constant(Vec<f64>),
    SemigroupSpec(PathBuf),
    EtaSpec(PathBuf),
}

/// A trajectory plus whatever exact information its source carries.
struct Loaded {
    traj: EigenvalueTrajectory,
    /// Rates known without differentiation.
    rates: Option<RateTrajectory>,
    eta_spec: Option<EtaFamilyMixtureSpec>,
}

fn open_file(path: &Path) -> Result<File, UsageError> {
    File::open(path).map_err(|e| UsageError(format!("cannot open {}: {e}", path.display())))
}

fn from_semigroup_mixture(spec: &SemigroupMixtureSpec, cfg: &RunConfig) -> Result<Loaded, UsageError> {
    Ok(Loaded {
        traj: semigroup_mixture_eigenvalues(spec, &cfg.grid),
        rates: Some(semigroup_mixture_rates(spec, &cfg.grid)?),
        eta_spec: None,
    })
}

fn from_constant(rates: &DecoherenceRates, cfg: &RunConfig) -> Result<Loaded, UsageError> {
    if !rates.is_finite() {
        return Err(UsageError("constant rates must be finite".into()));
    }
    let samples = RateTrajectory::constant(&cfg.grid, *rates)?;
    let traj = if rates.min() >= 0.0 { semigroup_trajectory(rates, &cfg.grid)? } else { eigenvalues_from_rates(&samples)? };
    Ok(Loaded { traj, rates: Some(samples), eta_spec: None })
}

fn from_eta(spec: EtaFamilyMixtureSpec) -> Loaded {
    Loaded { traj: eta_mixture_eigenvalues(&spec), rates: None, eta_spec: Some(spec) }
}

fn load(source: &Source, cfg: &RunConfig) -> Result<Loaded, UsageError> {
    match source {
        Source::Preset(p) => match p.model(&cfg.grid) {
            PresetModel::Semigroup(r) => from_constant(&r, cfg),
            PresetModel::SemigroupMixture(spec) => from_semigroup_mixture(&spec, cfg),
            PresetModel::EtaMixture(spec) => Ok(from_eta(spec)),
        },
        Source::Eigenvalues(path) => Ok(Loaded { traj: read_eigenvalues(open_file(path)?)?, rates: None, eta_spec: None }),
        Source::Rates(path) => {
            let rates = read_rates(open_file(path)?)?;
            Ok(Loaded { traj: eigenvalues_from_rates(&rates)?, rates: Some(rates), eta_spec: None })
        }
        Source::Constant(values) => {
            let &[gp, gm, g3] = values.as_slice() else {
                return Err(UsageError("--constant takes exactly three values".into()));
            };
            from_constant(&DecoherenceRates::new(gp, gm, g3), cfg)
        }
        Source::SemigroupSpec(path) => from_semigroup_mixture(&load_semigroup_spec(path)?, cfg),
        Source::EtaSpec(path) => Ok(from_eta(load_eta_spec(path, &cfg.grid)?)),
    }
}

/// Runs `f` against the configured output file, or stdout.
fn with_output<F>(cfg: &RunConfig, f: F) -> Result<(), UsageError>
where
    F: FnOnce(&mut dyn Write) -> phasecov::Result<()>,
{
    match &cfg.output {
        Some(path) => {
            let file =
                File::create(path).map_err(|e| UsageError(format!("cannot create {}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            f(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            f(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

/// Shortest round-tripping scientific notation.
fn num(x: f64) -> String {
    format!("{x:e}")
}

fn fmt_time(t: Option<f64>) -> String {
    t.map_or_else(|| "none".to_owned(), num)
}

pub fn check_cp(cfg: &RunConfig, lambda1: f64, lambda3: f64, lambda_star: f64) -> CmdResult {
    let ch = PhaseCovariantChannel::new(lambda1, lambda3, lambda_star);
    if !ch.is_finite() {
        return Err(UsageError("eigenvalues must be finite".into()));
    }
    let report = ch.cp_report(cfg.tolerances.cp);
    println!("completely_positive={}", report.completely_positive);
    println!("population_slack={}", num(report.population_slack));
    println!("coherence_slack={}", num(report.coherence_slack));
    println!("choi_min_eigenvalue={}", num(ch.choi().min_eigenvalue()));
    Ok(report.completely_positive.into())
}

pub fn evolve(cfg: &RunConfig, source: &Source) -> CmdResult {
    let loaded = load(source, cfg)?;
    with_output(cfg, |w| write_eigenvalues(w, &loaded.traj))?;
    Ok(Verdict::Affirmative)
}

pub fn rates(cfg: &RunConfig, input: &Path) -> CmdResult {
    let traj = read_eigenvalues(open_file(input)?)?;
    let rec = rates_from_eigenvalues(&traj, cfg.tolerances.singularity);
    with_output(cfg, |w| write_rates(w, &rec.rates))?;
    if !rec.excluded.is_empty() {
        eprintln!("excluded {} grid points near singular times {:?}", rec.excluded.len(), rec.singular_times);
    }
    Ok(Verdict::Affirmative)
}

pub fn mix_semigroups(cfg: &RunConfig, spec: Option<&Path>, preset: Option<Preset>) -> CmdResult {
    let spec = match (spec, preset) {
        (Some(path), _) => load_semigroup_spec(path)?,
        (None, Some(p)) => match p.model(&cfg.grid) {
            PresetModel::SemigroupMixture(spec) => spec,
            _ => return Err(UsageError(format!("preset {} is not a semigroup mixture (use example-1 or exmsg)", p.name()))),
        },
        (None, None) => return Err(UsageError("a spec file or --preset is required".into())),
    };
    let traj = semigroup_mixture_eigenvalues(&spec, &cfg.grid);
    let rates = semigroup_mixture_rates(&spec, &cfg.grid)?;
    let report = verify_prop2(&spec, &cfg.grid, cfg.tolerances.divisibility, cfg.tolerances.identity)?;
    with_output(cfg, |w| write_combined(w, &traj, &rates))?;
    println!("cp_divisible={},min_rate={}", report.cp_divisible, num(report.min_rate));
    Ok(report.cp_divisible.into())
}

pub fn mix_eta(cfg: &RunConfig, spec: Option<&Path>, preset: Option<Preset>) -> CmdResult {
    let spec = match (spec, preset) {
        (Some(path), _) => load_eta_spec(path, &cfg.grid)?,
        (None, Some(p)) => match p.model(&cfg.grid) {
            PresetModel::EtaMixture(spec) => spec,
            _ => return Err(UsageError(format!("preset {} is not an eta-family mixture (use example-2)", p.name()))),
        },
        (None, None) => return Err(UsageError("a spec file or --preset is required".into())),
    };
    let traj = eta_mixture_eigenvalues(&spec);
    let report = invertibility_report(&traj, cfg.tolerances.singularity);
    with_output(cfg, |w| write_eigenvalues(w, &traj))?;
    println!(
        "invertible={},unitality_defect={},zero_crossings={}",
        report.invertible,
        num(unitality_defect(&traj)),
        report.crossings.len()
    );
    for z in &report.crossings {
        println!("zero_crossing={},{},{}", z.eigenvalue, num(z.interval.0), num(z.interval.1));
    }
    Ok(report.invertible.into())
}

pub fn divisibility(cfg: &RunConfig, source: &Source, method: Method) -> CmdResult {
    let loaded = load(source, cfg)?;
    let tol = &cfg.tolerances;
    let report = match method {
        Method::RateSign => match &loaded.rates {
            Some(rates) => is_cp_divisible(rates, tol.divisibility),
            None => {
                let rec = rates_from_eigenvalues(&loaded.traj, tol.singularity);
                let mut report = is_cp_divisible(&rec.rates, tol.divisibility);
                report.excluded_times = rec.excluded.iter().map(|&i| loaded.traj.grid.point(i)).collect();
                report
            }
        },
        Method::ChoiPropagator => cp_divisibility_via_choi(&loaded.traj, tol.divisibility, tol.singularity),
    };
    let label = match method {
        Method::RateSign => "min_rate",
        Method::ChoiPropagator => "min_choi_eigenvalue",
    };
    println!(
        "cp_divisible={},method={},{label}={},first_violation_time={},excluded_points={}",
        report.cp_divisible,
        report.method,
        num(report.min_rate),
        fmt_time(report.first_violation_time),
        report.excluded_times.len()
    );
    Ok(report.cp_divisible.into())
}

pub fn commutativity(cfg: &RunConfig, source: &Source) -> CmdResult {
    let loaded = load(source, cfg)?;
    let tol = cfg.tolerances.commutativity;
    let family = is_commutative_family(&loaded.traj, tol);
    println!("commutative={},max_defect={}", family.commutative, num(family.max_defect));
    if let Some(spec) = &loaded.eta_spec {
        match commutativity_fit(spec.eta[0].samples(), spec.eta[1].samples(), tol) {
            Ok(fit) => {
                println!("eta_fit_a={},eta_fit_residual={},eta_commutative={}", num(fit.a), num(fit.max_residual), fit.commutative);
                println!("criteria_agree={}", fit.commutative == family.commutative);
            }
            Err(Error::UndeterminedConstant { eta2_constant }) => {
                println!("eta_fit_a=undetermined,eta2_constant={eta2_constant}");
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(family.commutative.into())
}

pub fn recover(cfg: &RunConfig, weights: &[f64], target: &[f64]) -> CmdResult {
    let (&[x1, x2, x3], &[gp, gm, g3]) = (weights, target) else {
        return Err(UsageError("--weights and --target take exactly three values".into()));
    };
    let target = DecoherenceRates::new(gp, gm, g3);
    let v = semigroup_recovery([x1, x2, x3], target, &cfg.grid, &cfg.tolerances)?;
    println!("feasible={}", v.feasible);
    if let Some(reason) = &v.failure_reason {
        println!("reason={reason}");
    }
    println!("analytic_feasible={},grid_feasible={}", v.analytic_feasible, v.grid_feasible);
    if let Some(f) = &v.grid_failure {
        println!("grid_failure={f}");
    }
    if let Some(d) = v.max_eigenvalue_defect {
        println!("max_eigenvalue_defect={}", num(d));
    }
    if let (true, Some(sol), Some(_)) = (v.feasible, &v.eta_solutions, &cfg.output) {
        let rows = (0..sol.grid.len()).map(|i| vec![sol.grid.point(i), sol.eta[0][i], sol.eta[1][i], sol.eta[2][i]]);
        with_output(cfg, |w| write_table(w, &["t", "eta1", "eta2", "eta3"], rows))?;
    }
    Ok(v.feasible.into())
}

pub fn scan(cfg: &RunConfig, kind: ScanKind, count: usize) -> CmdResult {
    if count == 0 {
        return Err(UsageError("--count must be at least 1".into()));
    }
    let summary = run_scan(kind, count, cfg.seed, &cfg.grid, &cfg.tolerances)?;
    println!("{summary}");
    Ok(summary.all_passed().into())
}

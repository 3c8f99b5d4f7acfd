//! Batch runner behind the `casimir` binary.
//!
//! Writes into the output directory:
//!
//! * `energies.csv`: one row per separation and ladder strength;
//! * `checks.txt`: one tab-separated record per theorem check;
//! * `spectrum.csv` (with `--spectrum`): eigenvalues per separation and frequency;
//! * `config.resolved.toml`: the scenario as run, which re-parses to the same config.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};

use casimir_core::energy::{self, EnergyResult, ForceResult};
use casimir_core::theorem::{self, CheckReport};
use casimir_core::{preset, Layout, Scenario, ScenarioConfig};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub config: Option<PathBuf>,
    pub preset: Option<String>,
    pub out: PathBuf,
    pub threads: Option<usize>,
    pub check_only: bool,
    pub spectrum: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyRow {
    pub a: f64,
    pub energy: f64,
    pub error_estimate: f64,
    pub force: f64,
    pub strength_scale: f64,
    pub temperature: f64,
    pub loglog_slope: f64,
    pub flagged: bool,
}

#[derive(Debug, Clone, Default)]
pub struct Summary {
    pub rows: Vec<EnergyRow>,
    pub checks: Vec<CheckReport>,
}

impl Summary {
    pub fn failed_checks(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn flagged_rows(&self) -> usize {
        self.rows.iter().filter(|r| r.flagged).count()
    }

    pub fn ok(&self) -> bool {
        self.failed_checks() == 0 && self.flagged_rows() == 0
    }

    pub fn describe(&self) -> String {
        format!(
            "{} energy rows ({} flagged), {} checks ({} failed)",
            self.rows.len(),
            self.flagged_rows(),
            self.checks.len(),
            self.failed_checks()
        )
    }
}

pub fn load_config(opts: &RunOptions) -> Result<ScenarioConfig> {
    match (&opts.config, &opts.preset) {
        (Some(path), None) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            Ok(ScenarioConfig::from_toml(&text).with_context(|| format!("in {}", path.display()))?)
        }
        (None, Some(name)) => Ok(preset(name)?),
        _ => bail!("give exactly one of a config path or --preset"),
    }
}

pub fn run(opts: &RunOptions) -> Result<Summary> {
    if let Some(n) = opts.threads {
        if n == 0 {
            bail!("--threads must be at least 1");
        }
        // A second call in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cfg = load_config(opts)?;
    let sc = cfg.build()?;
    fs::create_dir_all(&opts.out).with_context(|| format!("creating {}", opts.out.display()))?;
    fs::write(opts.out.join("config.resolved.toml"), cfg.to_toml())?;

    let mut summary = Summary::default();
    let mut seps = cfg.separations.clone();
    seps.sort_by(f64::total_cmp);
    seps.dedup();

    summary.checks = theorem::proof_step_suite(&sc, &seps, &cfg.checks, cfg.seed);

    if !opts.check_only {
        summary.rows = energy_rows(&cfg, &sc, &seps)?;
        write_energies(&opts.out.join("energies.csv"), &summary.rows)?;
        let base: Vec<&EnergyRow> = summary.rows.iter().filter(|r| r.strength_scale == 1.0).collect();
        if sc.is_mirror() && seps.len() >= 2 {
            let e: Vec<f64> = base.iter().map(|r| r.energy).collect();
            let forces: Vec<ForceResult> =
                base.iter().map(|r| ForceResult { value: r.force, delta: r.a / 20.0, flagged: r.flagged }).collect();
            let mut mono = theorem::monotonic_report(&sc, &seps, &e, &cfg.checks.frequencies);
            if sc.layout == Layout::MirrorPlane {
                mono.name = "mirror-plane-attraction".into();
            }
            summary.checks.push(mono);
            summary.checks.push(theorem::force_report(&sc, &seps, &forces));
        }
        theorem::sort_reports(&mut summary.checks);
    }
    write_checks(&opts.out.join("checks.txt"), &summary.checks)?;
    if opts.spectrum {
        write_spectrum(&opts.out.join("spectrum.csv"), &sc, &seps, &cfg.checks.frequencies)?;
    }
    Ok(summary)
}

fn strength_scales(cfg: &ScenarioConfig) -> Vec<f64> {
    match &cfg.ladder {
        Some(l) => (0..l.steps).map(|k| l.factor.powi(k as i32)).collect(),
        None => vec![1.0],
    }
}

fn energy_rows(cfg: &ScenarioConfig, sc: &Scenario, seps: &[f64]) -> Result<Vec<EnergyRow>> {
    let t = cfg.temperature;
    let mut rows = vec![];
    for scale in strength_scales(cfg) {
        let s = sc.scaled(scale);
        let mut block = vec![];
        for &a in seps {
            let (e, f): (EnergyResult, ForceResult) = if t > 0.0 {
                (energy::free_energy_finite_t(&s, a, t)?, energy::free_energy_force(&s, a, t, None)?)
            } else {
                energy::energy_and_force(&s, a, None)?
            };
            block.push(EnergyRow {
                a,
                energy: e.value,
                error_estimate: e.error_estimate,
                force: f.value,
                strength_scale: scale,
                temperature: t,
                loglog_slope: f64::NAN,
                flagged: e.flagged || f.flagged,
            });
        }
        let slopes = loglog_slopes(&block.iter().map(|r| (r.a, r.energy)).collect::<Vec<_>>());
        for (r, s) in block.iter_mut().zip(slopes) {
            r.loglog_slope = s;
        }
        rows.extend(block);
    }
    Ok(rows)
}

/// Local `d ln|E| / d ln a`: centered inside, one-sided at the ends.
pub fn loglog_slopes(points: &[(f64, f64)]) -> Vec<f64> {
    let n = points.len();
    if n < 2 {
        return vec![f64::NAN; n];
    }
    let lx: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = points.iter().map(|p| p.1.abs().ln()).collect();
    (0..n)
        .map(|i| {
            let (l, r) = (i.saturating_sub(1), (i + 1).min(n - 1));
            (ly[r] - ly[l]) / (lx[r] - lx[l])
        })
        .collect()
}

fn g17(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_energies(path: &Path, rows: &[EnergyRow]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record([
        "a",
        "E",
        "error_estimate",
        "force",
        "strength_scale",
        "temperature",
        "a_times_E",
        "loglog_slope",
        "flagged",
    ])?;
    for r in rows {
        w.write_record([
            g17(r.a),
            g17(r.energy),
            g17(r.error_estimate),
            g17(r.force),
            g17(r.strength_scale),
            g17(r.temperature),
            g17(r.a * r.energy),
            g17(r.loglog_slope),
            r.flagged.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_checks(path: &Path, checks: &[CheckReport]) -> Result<()> {
    let mut text = String::from(CheckReport::header());
    text.push('\n');
    for c in checks {
        text.push_str(&c.to_line());
        text.push('\n');
    }
    fs::write(path, text)?;
    Ok(())
}

fn write_spectrum(path: &Path, sc: &Scenario, seps: &[f64], frequencies: &[f64]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["a", "xi", "n", "lambda"])?;
    for &a in seps {
        for &xi in frequencies {
            let ev = if sc.is_mirror() {
                energy::eigen_spectrum(sc, a, xi)?
            } else {
                let mut v = energy::coupling_eigenvalues(sc, a, xi)?;
                v.reverse();
                v
            };
            for (n, l) in ev.iter().enumerate() {
                w.write_record([g17(a), g17(xi), n.to_string(), g17(*l)])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

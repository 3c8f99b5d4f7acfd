//! Numerical certification of the attraction theorem.
//!
//! Every check returns a [`CheckReport`] whose margin is the signed slack
//! against its threshold: positive exactly when the check passes.
//!
//! Eigenvalue tests on `G_AB 𝒥` use a relative floor. The operator is
//! smoothing, so most of its spectrum sits at rounding level and the sign of
//! those eigenvalues is noise; a check fails only when an eigenvalue has the
//! wrong sign by more than `1e-12` of the largest magnitude.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::energy::{self, coupling_eigenvalues, eigen_spectrum, energy_and_force, free_energy_finite_t, gabj_matrix};
use crate::error::{invalid, Result};
use crate::linalg;
use crate::scenario::{CheckConfig, Layout, Scenario};

/// Relative floor for eigenvalue sign tests.
pub const ROUNDOFF_FLOOR: f64 = 1e-12;
/// Eigenvalues of `Y` below this fraction of the largest are not compared
/// across separations.
pub const TRACKED_FRACTION: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub scenario: String,
    pub xi: Option<f64>,
    pub a: Option<f64>,
    pub passed: bool,
    pub margin: f64,
    pub detail: String,
}

impl CheckReport {
    fn new(name: &str, sc: &Scenario, xi: Option<f64>, a: Option<f64>, margin: f64, detail: String) -> Self {
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        CheckReport { name: name.into(), scenario: sc.id.clone(), xi, a, passed: margin > 0.0, margin, detail }
    }

    fn errored(name: &str, sc: &Scenario, xi: Option<f64>, a: Option<f64>, err: impl fmt::Display) -> Self {
        CheckReport {
            name: name.into(),
            scenario: sc.id.clone(),
            xi,
            a,
            passed: false,
            margin: f64::NEG_INFINITY,
            detail: format!("error: {err}"),
        }
    }

    /// Header line for [`CheckReport::to_line`].
    pub fn header() -> &'static str {
        "check\tscenario\txi\ta\tmargin\tstatus\tdetail"
    }

    pub fn to_line(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x}"));
        format!(
            "{}\t{}\t{}\t{}\t{:.6e}\t{}\t{}",
            self.name,
            self.scenario,
            opt(self.xi),
            opt(self.a),
            self.margin,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

fn require_mirror(sc: &Scenario) -> Result<()> {
    if sc.is_mirror() {
        Ok(())
    } else {
        Err(invalid("layout", "check defined for mirror scenarios only"))
    }
}

fn spread(ev: &[f64]) -> f64 {
    ev.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// `min eig(G_AB 𝒥) > 0`, up to the rounding floor.
pub fn check_gabj_positive(sc: &Scenario, a: f64, xi: f64) -> CheckReport {
    const NAME: &str = "gabj-positive";
    let run = || -> Result<CheckReport> {
        require_mirror(sc)?;
        let m = gabj_matrix(sc, &sc.place(a)?, xi)?;
        let ev = linalg::sym_eigenvalues(m.as_ref())?;
        let (lo, hi) = (ev[0], *ev.last().unwrap());
        let margin = if hi > 0.0 { (lo + ROUNDOFF_FLOOR * hi) / hi } else { -1.0 };
        Ok(CheckReport::new(NAME, sc, Some(xi), Some(a), margin, format!("min {lo:.3e} max {hi:.3e}")))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, Some(xi), Some(a), e))
}

/// `G(a + δ) 𝒥 - G(a) 𝒥` negative definite, up to the rounding floor.
pub fn check_gabj_decreasing(sc: &Scenario, a: f64, xi: f64, delta: f64) -> CheckReport {
    const NAME: &str = "gabj-decreasing";
    let run = || -> Result<CheckReport> {
        require_mirror(sc)?;
        if !(delta > 0.0 && delta < a) {
            return Err(invalid("delta", "step must lie in (0, a)"));
        }
        let m0 = gabj_matrix(sc, &sc.place(a)?, xi)?;
        let m1 = gabj_matrix(sc, &sc.place(a + delta)?, xi)?;
        let ev = linalg::sym_eigenvalues((&m1 - &m0).as_ref())?;
        let (lo, hi) = (ev[0], *ev.last().unwrap());
        let scale = spread(&ev);
        let margin = if lo < 0.0 { (ROUNDOFF_FLOOR * scale - hi) / scale } else { -1.0 };
        Ok(CheckReport::new(NAME, sc, Some(xi), Some(a), margin, format!("delta {delta} eig in [{lo:.3e}, {hi:.3e}]")))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, Some(xi), Some(a), e))
}

/// Random vectors on A give `ψᵀ (G_AB 𝒥) ψ > 0`, strictly decreasing over
/// the increasing separations `a_list`.
pub fn check_quadratic_form(sc: &Scenario, xi: f64, a_list: &[f64], trials: usize, seed: u64) -> CheckReport {
    const NAME: &str = "quadratic-form";
    let run = || -> Result<CheckReport> {
        require_mirror(sc)?;
        if a_list.len() < 2 || a_list.windows(2).any(|w| w[1] <= w[0]) {
            return Err(invalid("a_list", "need at least two increasing separations"));
        }
        let ms = a_list.iter().map(|&a| gabj_matrix(sc, &sc.place(a)?, xi)).collect::<Result<Vec<_>>>()?;
        let n = ms[0].nrows();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = f64::INFINITY;
        let mut worst_at = String::new();
        for trial in 0..trials {
            let psi: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let forms: Vec<f64> = ms
                .iter()
                .map(|m| (0..n).map(|i| psi[i] * (0..n).map(|j| m[(i, j)] * psi[j]).sum::<f64>()).sum())
                .collect();
            // Positivity of the last (smallest) value and strict decrease,
            // both relative to the first.
            let top = forms[0].abs().max(f64::MIN_POSITIVE);
            let mut slack = forms[forms.len() - 1] / top;
            for w in forms.windows(2) {
                slack = slack.min((w[0] - w[1]) / top);
            }
            if slack < worst {
                worst = slack;
                worst_at = format!("trial {trial}: I = {:?}", forms.iter().map(|v| format!("{v:.4e}")).collect::<Vec<_>>());
            }
        }
        Ok(CheckReport::new(NAME, sc, Some(xi), Some(a_list[0]), worst, format!("{trials} trials, worst {worst_at}")))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, Some(xi), a_list.first().copied(), e))
}

/// Spectrum of the symmetric form of `N` in `[-1e-12, 1)`. Works for any
/// two-body layout; the margin is the smaller of the two slacks.
pub fn check_eigenvalue_bounds(sc: &Scenario, a: f64, xi: f64) -> CheckReport {
    const NAME: &str = "eigenvalue-bounds";
    let run = || -> Result<CheckReport> {
        let ev = coupling_eigenvalues(sc, a, xi)?;
        let (lo, hi) = (ev[0], *ev.last().unwrap());
        let margin = (1.0 - hi).min(lo + ROUNDOFF_FLOOR);
        Ok(CheckReport::new(NAME, sc, Some(xi), Some(a), margin, format!("eig in [{lo:.3e}, {hi:.6}]")))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, Some(xi), Some(a), e))
}

/// Eigenvalues of `Y` in `[0, 1)`.
pub fn check_y_spectrum(sc: &Scenario, a: f64, xi: f64) -> CheckReport {
    const NAME: &str = "y-spectrum";
    let run = || -> Result<CheckReport> {
        require_mirror(sc)?;
        let ev = eigen_spectrum(sc, a, xi)?;
        let (hi, lo) = (ev[0], *ev.last().unwrap());
        let floor = ROUNDOFF_FLOOR * hi.abs();
        let margin = (1.0 - hi).min(if hi > 0.0 { (lo + floor) / hi } else { -1.0 });
        Ok(CheckReport::new(NAME, sc, Some(xi), Some(a), margin, format!("eig in [{lo:.3e}, {hi:.6}]")))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, Some(xi), Some(a), e))
}

/// `λ_n(a + δ) < λ_n(a)` for every tracked eigenvalue of `Y`, paired by rank.
pub fn check_eigen_monotone(sc: &Scenario, a: f64, xi: f64, delta: f64) -> CheckReport {
    const NAME: &str = "eigen-monotone";
    let run = || -> Result<CheckReport> {
        require_mirror(sc)?;
        let e0 = eigen_spectrum(sc, a, xi)?;
        let e1 = eigen_spectrum(sc, a + delta, xi)?;
        let cut = TRACKED_FRACTION * e0[0];
        let mut margin = f64::INFINITY;
        let mut tracked = 0;
        for (l0, l1) in e0.iter().zip(&e1) {
            if *l0 <= cut {
                break;
            }
            tracked += 1;
            margin = margin.min((l0 - l1) / l0);
        }
        if tracked == 0 {
            margin = -1.0;
        }
        Ok(CheckReport::new(NAME, sc, Some(xi), Some(a), margin, format!("{tracked} tracked, delta {delta}")))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, Some(xi), Some(a), e))
}

fn increasing_margin(values: &[f64]) -> f64 {
    let scale = values.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    values.windows(2).map(|w| (w[1] - w[0]) / scale).fold(f64::INFINITY, f64::min)
}

fn check_list(a_list: &[f64]) -> Result<()> {
    if a_list.len() < 4 || a_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("a_list", "need at least four strictly increasing separations"));
    }
    Ok(())
}

/// Energies at `a_list`, with forces, in order.
pub fn sweep(sc: &Scenario, a_list: &[f64]) -> Result<Vec<(energy::EnergyResult, energy::ForceResult)>> {
    a_list.iter().map(|&a| energy_and_force(sc, a, None)).collect()
}

/// `E(a)` strictly increasing over `a_list`, and every tracked eigenvalue of
/// `Y` decreasing between neighbouring separations at each of `frequencies`.
pub fn check_monotonic_attraction(sc: &Scenario, a_list: &[f64], frequencies: &[f64]) -> CheckReport {
    const NAME: &str = "monotonic-attraction";
    let run = || -> Result<CheckReport> {
        require_mirror(sc)?;
        check_list(a_list)?;
        let e = a_list.iter().map(|&a| energy::energy(sc, a).map(|r| r.value)).collect::<Result<Vec<_>>>()?;
        Ok(monotonic_report(sc, a_list, &e, frequencies))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, None, a_list.first().copied(), e))
}

/// As [`check_monotonic_attraction`] with energies already computed.
pub fn monotonic_report(sc: &Scenario, a_list: &[f64], energies: &[f64], frequencies: &[f64]) -> CheckReport {
    const NAME: &str = "monotonic-attraction";
    let run = || -> Result<CheckReport> {
        let mut margin = increasing_margin(energies);
        if energies.iter().any(|&v| !(v < 0.0)) {
            margin = margin.min(-1.0);
        }
        let mut eig_margin = f64::INFINITY;
        for &xi in frequencies {
            for w in a_list.windows(2) {
                let r = check_eigen_monotone(sc, w[0], xi, w[1] - w[0]);
                eig_margin = eig_margin.min(r.margin);
            }
        }
        let detail = format!(
            "E = [{}], eigen margin {eig_margin:.3e}",
            energies.iter().map(|v| format!("{v:.6e}")).collect::<Vec<_>>().join(", ")
        );
        Ok(CheckReport::new(NAME, sc, None, Some(a_list[0]), margin.min(eig_margin), detail))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, None, a_list.first().copied(), e))
}

/// Body before a Dirichlet mirror: `E(a) < 0` and increasing.
pub fn check_mirror_plane_attraction(sc: &Scenario, a_list: &[f64]) -> CheckReport {
    const NAME: &str = "mirror-plane-attraction";
    let run = || -> Result<CheckReport> {
        if sc.layout != Layout::MirrorPlane {
            return Err(invalid("layout", "check defined for a body before a mirror"));
        }
        check_list(a_list)?;
        let e = a_list.iter().map(|&a| energy::energy(sc, a).map(|r| r.value)).collect::<Result<Vec<_>>>()?;
        let mut margin = increasing_margin(&e);
        if e.iter().any(|&v| !(v < 0.0)) {
            margin = margin.min(-1.0);
        }
        let detail = format!("E = [{}]", e.iter().map(|v| format!("{v:.6e}")).collect::<Vec<_>>().join(", "));
        Ok(CheckReport::new(NAME, sc, None, Some(a_list[0]), margin, detail))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, None, a_list.first().copied(), e))
}

/// Force negative at every sampled separation.
pub fn force_report(sc: &Scenario, a_list: &[f64], forces: &[energy::ForceResult]) -> CheckReport {
    let worst = forces.iter().map(|f| f.value).fold(f64::NEG_INFINITY, f64::max);
    let scale = forces.iter().fold(0.0f64, |m, f| m.max(f.value.abs())).max(f64::MIN_POSITIVE);
    let mut margin = -worst / scale;
    if forces.iter().any(|f| f.flagged) {
        margin = margin.min(-1.0);
    }
    let detail = format!("F = [{}]", forces.iter().map(|f| format!("{:.6e}", f.value)).collect::<Vec<_>>().join(", "));
    CheckReport::new("force-negative", sc, None, a_list.first().copied(), margin, detail)
}

/// Free energy at fixed temperature increasing over `a_list`.
pub fn check_finite_t_monotone(sc: &Scenario, a_list: &[f64], temperature: f64) -> CheckReport {
    const NAME: &str = "finite-t-monotone";
    let run = || -> Result<CheckReport> {
        require_mirror(sc)?;
        check_list(a_list)?;
        let f = a_list
            .iter()
            .map(|&a| free_energy_finite_t(sc, a, temperature).map(|r| r.value))
            .collect::<Result<Vec<_>>>()?;
        let mut margin = increasing_margin(&f);
        if f.iter().any(|&v| !(v < 0.0)) {
            margin = margin.min(-1.0);
        }
        let detail =
            format!("T = {temperature}, F = [{}]", f.iter().map(|v| format!("{v:.6e}")).collect::<Vec<_>>().join(", "));
        Ok(CheckReport::new(NAME, sc, None, Some(a_list[0]), margin, detail))
    };
    run().unwrap_or_else(|e| CheckReport::errored(NAME, sc, None, a_list.first().copied(), e))
}

/// Proof-step checks at every frequency of `cfg` and every separation.
///
/// Mirror layouts get the full set; two-body layouts only the eigenvalue
/// bound. With `negative_control`, the eigenvalue bound is also run on the
/// sign-flipped scenario and a `negative-control` report passes iff that
/// check fails somewhere.
pub fn proof_step_suite(sc: &Scenario, a_list: &[f64], cfg: &CheckConfig, seed: u64) -> Vec<CheckReport> {
    let mut jobs: Vec<(f64, f64)> = vec![];
    for &xi in &cfg.frequencies {
        for &a in a_list {
            jobs.push((xi, a));
        }
    }
    let mirror = sc.is_mirror();
    let mut reports: Vec<CheckReport> = jobs
        .par_iter()
        .flat_map_iter(|&(xi, a)| {
            let delta = cfg.delta_fraction * a;
            let mut out = vec![];
            if mirror {
                out.push(check_gabj_positive(sc, a, xi));
                out.push(check_gabj_decreasing(sc, a, xi, delta));
                out.push(check_y_spectrum(sc, a, xi));
                out.push(check_eigen_monotone(sc, a, xi, delta));
            }
            if sc.layout != Layout::MirrorPlane {
                out.push(check_eigenvalue_bounds(sc, a, xi));
            }
            out
        })
        .collect();
    if mirror && a_list.len() >= 2 {
        for &xi in &cfg.frequencies {
            reports.push(check_quadratic_form(sc, xi, a_list, cfg.trials, seed));
        }
    }
    if cfg.negative_control && sc.layout != Layout::MirrorPlane {
        reports.push(negative_control(sc, a_list, &cfg.frequencies));
    }
    sort_reports(&mut reports);
    reports
}

/// Passes iff the eigenvalue bound fails on the sign-flipped scenario.
pub fn negative_control(sc: &Scenario, a_list: &[f64], frequencies: &[f64]) -> CheckReport {
    let bad = sc.corrupted();
    let mut failures = 0;
    let mut total = 0;
    let mut worst = f64::INFINITY;
    for &xi in frequencies {
        for &a in a_list {
            let r = check_eigenvalue_bounds(&bad, a, xi);
            total += 1;
            if !r.passed {
                failures += 1;
            }
            worst = worst.min(r.margin);
        }
    }
    let margin = if failures > 0 { 1.0 } else { -1.0 };
    CheckReport::new(
        "negative-control",
        sc,
        None,
        a_list.first().copied(),
        margin,
        format!("corrupted scenario failed {failures}/{total} bound checks, worst margin {worst:.3e}"),
    )
}

/// Deterministic order: by name, then scenario, frequency and separation.
pub fn sort_reports(reports: &mut [CheckReport]) {
    let key = |v: Option<f64>| v.unwrap_or(f64::NEG_INFINITY);
    reports.sort_by(|x, y| {
        x.name
            .cmp(&y.name)
            .then_with(|| x.scenario.cmp(&y.scenario))
            .then_with(|| key(x.xi).total_cmp(&key(y.xi)))
            .then_with(|| key(x.a).total_cmp(&key(y.a)))
    });
}

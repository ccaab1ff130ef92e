//! Critical-temperature curves over the trap power, peak location, and
//! continuum-vs-discrete comparison reports.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::oracle;
use crate::thermo;
use crate::trap::{GasSpec, Trap1D};

pub const FIG1_ETA_MIN: f64 = 0.05;
pub const FIG1_ETA_MAX: f64 = 1.95;
pub const FIG1_STEPS: usize = 200;
pub const FIG1_U0: [f64; 3] = [4.0, 2.0, 1.0];
pub const FIG1_N: f64 = 1000.0;

/// Tolerance of the golden-section peak refinement, in eta.
pub const PEAK_TOL: f64 = 1e-6;

/// A grid of trap powers crossed with a list of `U0` values (reduced units).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub eta_min: f64,
    pub eta_max: f64,
    pub steps: usize,
    pub u0_values: Vec<f64>,
    pub n_particles: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.eta_min > 0.0 && self.eta_min < self.eta_max && self.eta_max < 2.0) {
            return Err(domain(format!(
                "eta grid must satisfy 0 < eta_min < eta_max < 2, got [{}, {}]",
                self.eta_min, self.eta_max
            )));
        }
        if self.steps < 2 {
            return Err(domain(format!(
                "steps must be at least 2, got {}",
                self.steps
            )));
        }
        if self.u0_values.is_empty() {
            return Err(domain("at least one U0 value is required"));
        }
        for (i, &u0) in self.u0_values.iter().enumerate() {
            if !(u0 > 0.0 && u0.is_finite()) {
                return Err(domain(format!("U0 values must be positive, got {u0}")));
            }
            if self.u0_values[..i].contains(&u0) {
                return Err(domain(format!("duplicate U0 value {u0}")));
            }
        }
        if !(self.n_particles > 0.0 && self.n_particles.is_finite()) {
            return Err(domain(format!(
                "particle number must be positive, got {}",
                self.n_particles
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        let span = self.eta_max - self.eta_min;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.eta_max
                } else {
                    self.eta_min + span * i as f64 / last
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub eta: f64,
    pub u0: f64,
    pub n_particles: f64,
    pub tc: f64,
    pub tc_uncorrected: f64,
    pub factor: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Peak {
    pub u0: f64,
    pub eta_peak: f64,
    pub tc_peak: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub peaks: Vec<Peak>,
}

impl SweepTable {
    /// Rows for one `U0`, in ascending eta.
    pub fn series(&self, u0: f64) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.u0 == u0)
    }

    pub fn peak(&self, u0: f64) -> Option<&Peak> {
        self.peaks.iter().find(|p| p.u0 == u0)
    }
}

fn tc_at(eta: f64, u0: f64, n: f64) -> Result<f64> {
    thermo::critical_temperature(&GasSpec::new(Trap1D::reduced(eta, u0)?, n)?)
}

fn sweep_row(eta: f64, u0: f64, n: f64) -> Result<SweepRow> {
    let gas = GasSpec::new(Trap1D::reduced(eta, u0)?, n)?;
    Ok(SweepRow {
        eta,
        u0,
        n_particles: n,
        tc: thermo::critical_temperature(&gas)?,
        tc_uncorrected: thermo::uncorrected_critical_temperature(&gas)?,
        factor: thermo::correction_factor(eta)?,
    })
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
pub fn golden_section_max<F>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2)?;
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1)?;
        }
    }
    let x = 0.5 * (lo + hi);
    Ok((x, f(x)?))
}

/// `T_c`, uncorrected `T_c` and the correction factor on every grid point,
/// plus a refined peak per `U0`.
///
/// Rows are evaluated in parallel and then ordered by `U0` descending, eta
/// ascending, so the table does not depend on scheduling.
pub fn tc_sweep(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    let grid = spec.grid();
    let n = spec.n_particles;
    let jobs: Vec<(f64, f64)> = spec
        .u0_values
        .iter()
        .flat_map(|&u0| grid.iter().map(move |&eta| (eta, u0)))
        .collect();
    let mut rows = jobs
        .par_iter()
        .map(|&(eta, u0)| sweep_row(eta, u0, n))
        .collect::<Result<Vec<_>>>()?;
    rows.sort_by(|a, b| b.u0.total_cmp(&a.u0).then(a.eta.total_cmp(&b.eta)));

    let mut u0_sorted = spec.u0_values.clone();
    u0_sorted.sort_by(|a, b| b.total_cmp(a));
    let peaks = u0_sorted
        .par_iter()
        .map(|&u0| {
            let series: Vec<&SweepRow> = rows.iter().filter(|r| r.u0 == u0).collect();
            let best = series
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.tc.total_cmp(&b.1.tc))
                .map(|(i, _)| i)
                .expect("series is non-empty");
            let lo = series[best.saturating_sub(1)].eta;
            let hi = series[(best + 1).min(series.len() - 1)].eta;
            let (eta_peak, tc_peak) =
                golden_section_max(|eta| tc_at(eta, u0, n), lo, hi, PEAK_TOL)?;
            // Never report a refined peak below the best grid value.
            let grid_best = series[best];
            Ok(if tc_peak >= grid_best.tc {
                Peak {
                    u0,
                    eta_peak,
                    tc_peak,
                }
            } else {
                Peak {
                    u0,
                    eta_peak: grid_best.eta,
                    tc_peak: grid_best.tc,
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepTable { rows, peaks })
}

/// The `T_c(eta)` family over `[0.05, 1.95]`, one series per `U0`.
pub fn fig1_data(u0_values: &[f64], n_particles: f64, steps: usize) -> Result<SweepTable> {
    tc_sweep(&SweepSpec {
        eta_min: FIG1_ETA_MIN,
        eta_max: FIG1_ETA_MAX,
        steps,
        u0_values: u0_values.to_vec(),
        n_particles,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleRow {
    pub temperature: f64,
    pub mu: f64,
    pub continuum: f64,
    pub discrete: f64,
    pub rel_diff: f64,
}

/// Continuum `N_e` against the brute-force WKB occupation sum.
///
/// Discrete energies are measured from the discrete ground level, which plays
/// the role of the continuum's zero of energy. Above `T_c` both sides use
/// `mu` from [`thermo::solve_mu`] and the discrete sum runs over all levels.
/// At or below `T_c`, `mu` is pinned at the ground level and the ground level
/// (the condensate) is left out of the discrete sum.
pub fn oracle_compare(trap: &Trap1D, n_particles: f64, temps: &[f64]) -> Result<Vec<OracleRow>> {
    let gas = GasSpec::new(*trap, n_particles)?;
    let tc = thermo::critical_temperature(&gas)?;
    if temps.is_empty() {
        return Ok(Vec::new());
    }
    if let Some(&bad) = temps.iter().find(|&&t| !(t > 0.0 && t.is_finite())) {
        return Err(domain(format!("temperatures must be positive, got {bad}")));
    }
    let t_max = temps.iter().copied().fold(0.0, f64::max);
    let spectrum = oracle::wkb_levels_for(trap, n_particles, t_max)?;
    let ground = spectrum.ground();

    temps
        .iter()
        .map(|&t| {
            let (mu, continuum, discrete) = if t > tc {
                let mu = thermo::solve_mu(&gas, t)?;
                let continuum = thermo::excited_count(trap, t, mu)?;
                let discrete = oracle::discrete_excited_count(&spectrum, t, ground + mu)?;
                (mu, continuum, discrete.total)
            } else {
                let continuum = thermo::excited_count(trap, t, 0.0)?;
                let discrete = oracle::occupation_above_ground(&spectrum, t)?;
                (0.0, continuum, discrete.total)
            };
            Ok(OracleRow {
                temperature: t,
                mu,
                continuum,
                discrete,
                rel_diff: (discrete - continuum) / continuum,
            })
        })
        .collect()
}

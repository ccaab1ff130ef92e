//! Grand-canonical thermodynamics of the trapped ideal Bose gas.
//!
//! Temperatures are carried in energy units (`kT`). The continuum ground
//! state sits at zero energy, so the chemical potential is never positive and
//! condensation starts when `mu` reaches 0.

use crate::error::{domain, Error, Result};
use crate::specfun::bose_g1;
use crate::trap::{GasSpec, Trap1D};

/// One state point of a gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub temperature: f64,
    pub chemical_potential: f64,
    pub excited_count: f64,
    pub condensate_count: f64,
}

fn require_condensing(eta: f64) -> Result<()> {
    if eta > 0.0 && eta < 2.0 {
        Ok(())
    } else {
        Err(Error::NoCondensation { eta })
    }
}

fn require_temperature(temperature: f64) -> Result<()> {
    if temperature > 0.0 && temperature.is_finite() {
        Ok(())
    } else {
        Err(domain(format!(
            "temperature must be finite and positive, got {temperature}"
        )))
    }
}

/// Number of particles outside the ground state,
/// `N_e = C (kT)^s g1(eta, mu/kT)`.
pub fn excited_count(trap: &Trap1D, temperature: f64, mu: f64) -> Result<f64> {
    require_temperature(temperature)?;
    if mu.is_nan() || mu > 0.0 {
        return Err(domain(format!("chemical potential must be <= 0, got {mu}")));
    }
    let s = trap.dos_exponent();
    let g = bose_g1(trap.eta(), mu / temperature)?;
    Ok(trap.dos_prefactor() * temperature.powf(s) * g)
}

/// `(eta/2)^(2 eta / (2 + eta))`, the ratio of the corrected to the
/// uncorrected critical temperature.
pub fn correction_factor(eta: f64) -> Result<f64> {
    if !(eta > 0.0 && eta <= 2.0) {
        return Err(domain(format!(
            "correction factor requires 0 < eta <= 2, got {eta}"
        )));
    }
    Ok((eta / 2.0).powf(2.0 * eta / (2.0 + eta)))
}

// [ (N/L) (h/√(2M)) U0^(1/eta) / (F(eta) g1(eta, 0)) ]^(2 eta / (2 + eta))
fn uncorrected_bracket(gas: &GasSpec) -> Result<f64> {
    let trap = &gas.trap;
    let eta = trap.eta();
    require_condensing(eta)?;
    let g0 = bose_g1(eta, 0.0)?;
    let bracket = gas.n_particles() / trap.length() * trap.planck() / (2.0 * trap.mass()).sqrt()
        * trap.u0().powf(1.0 / eta)
        / (trap.shape() * g0);
    Ok(bracket.powf(2.0 * eta / (2.0 + eta)))
}

/// Corrected critical temperature `kT_c`.
pub fn critical_temperature(gas: &GasSpec) -> Result<f64> {
    let eta = gas.trap.eta();
    require_condensing(eta)?;
    Ok(correction_factor(eta)? * uncorrected_bracket(gas)?)
}

/// Critical temperature without the `(eta/2)^(2 eta/(2+eta))` factor.
pub fn uncorrected_critical_temperature(gas: &GasSpec) -> Result<f64> {
    let eta = gas.trap.eta();
    require_condensing(eta)?;
    Ok(critical_temperature(gas)? / correction_factor(eta)?)
}

/// Chemical potential of the normal phase at `temperature > T_c`.
///
/// Bisection on `mu < 0`; `N_e` is increasing in `mu`.
pub fn solve_mu(gas: &GasSpec, temperature: f64) -> Result<f64> {
    require_temperature(temperature)?;
    let critical = critical_temperature(gas)?;
    if temperature <= critical {
        return Err(Error::CondensedPhase {
            temperature,
            critical,
        });
    }
    let trap = &gas.trap;
    let n = gas.n_particles();
    let residual = |mu: f64| excited_count(trap, temperature, mu).map(|ne| ne - n);

    let mut hi = 0.0;
    let mut lo = -temperature;
    let mut r_lo = residual(lo)?;
    while r_lo > 0.0 {
        hi = lo;
        lo *= 2.0;
        if lo < -1e300 {
            return Err(domain("chemical potential bracket overflowed"));
        }
        r_lo = residual(lo)?;
    }
    if r_lo.abs() <= 1e-12 * n {
        return Ok(lo);
    }

    loop {
        let mid = 0.5 * (lo + hi);
        if (hi - lo) <= 1e-14 * mid.abs().max(1.0) || mid == lo || mid == hi {
            let r = residual(mid)?;
            if r.abs() > 1e-9 * n {
                return Err(Error::Accuracy {
                    message: "chemical potential bisection stalled".into(),
                    estimate: mid,
                    error: r.abs() / n,
                });
            }
            return Ok(mid);
        }
        let r = residual(mid)?;
        if r == 0.0 {
            return Ok(mid);
        }
        if r > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
}

/// Condensate fraction `N0/N = 1 - (T/T_c)^s` below `T_c`, 0 above.
pub fn condensate_fraction(gas: &GasSpec, temperature: f64) -> Result<f64> {
    require_temperature(temperature)?;
    let critical = critical_temperature(gas)?;
    if temperature >= critical {
        return Ok(0.0);
    }
    Ok(1.0 - (temperature / critical).powf(gas.trap.dos_exponent()))
}

/// Full state point: `mu` from [`solve_mu`] above `T_c`, pinned at 0 below.
pub fn thermo_point(gas: &GasSpec, temperature: f64) -> Result<ThermoPoint> {
    require_temperature(temperature)?;
    let n = gas.n_particles();
    let critical = critical_temperature(gas)?;
    if temperature > critical {
        let mu = solve_mu(gas, temperature)?;
        Ok(ThermoPoint {
            temperature,
            chemical_potential: mu,
            excited_count: excited_count(&gas.trap, temperature, mu)?,
            condensate_count: 0.0,
        })
    } else {
        let excited = excited_count(&gas.trap, temperature, 0.0)?;
        Ok(ThermoPoint {
            temperature,
            chemical_potential: 0.0,
            excited_count: excited,
            condensate_count: (n - excited).max(0.0),
        })
    }
}

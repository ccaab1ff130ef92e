//! Power-law trap `U(x) = U0 (|x| / L)^eta` and its semiclassical density of
//! states.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::quadrature::{self, Node};
use crate::specfun::{gamma, ln_gamma};

/// Trap parameters and physical constants.
///
/// The reduced-unit defaults are `h = k_B = L = 1`, `M = 1/2`, so that
/// `√(2M) / h = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trap1D {
    eta: f64,
    u0: f64,
    length: f64,
    mass: f64,
    planck: f64,
    boltzmann: f64,
    shape: f64,
}

fn positive(name: &str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(domain(format!(
            "{name} must be finite and positive, got {value}"
        )))
    }
}

impl Trap1D {
    pub fn new(
        eta: f64,
        u0: f64,
        length: f64,
        mass: f64,
        planck: f64,
        boltzmann: f64,
    ) -> Result<Self> {
        let trap = Self {
            eta: positive("trap power eta", eta)?,
            u0: positive("energy scale U0", u0)?,
            length: positive("length L", length)?,
            mass: positive("mass M", mass)?,
            planck: positive("Planck constant h", planck)?,
            boltzmann: positive("Boltzmann constant k", boltzmann)?,
            shape: shape_factor(eta)?,
        };
        if cfg!(debug_assertions) && (0.05..=10.0).contains(&eta) {
            let check = shape_factor_quadrature(eta, 1e-10)?;
            debug_assert!(
                ((check - trap.shape) / trap.shape).abs() < 1e-8,
                "shape factor self-test failed for eta = {eta}: {check} vs {}",
                trap.shape
            );
        }
        Ok(trap)
    }

    /// A trap in reduced units.
    pub fn reduced(eta: f64, u0: f64) -> Result<Self> {
        Self::new(eta, u0, 1.0, 0.5, 1.0, 1.0)
    }

    pub fn with_u0(&self, u0: f64) -> Result<Self> {
        Self::new(
            self.eta,
            u0,
            self.length,
            self.mass,
            self.planck,
            self.boltzmann,
        )
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn u0(&self) -> f64 {
        self.u0
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn planck(&self) -> f64 {
        self.planck
    }

    pub fn boltzmann(&self) -> f64 {
        self.boltzmann
    }

    /// `F(eta)`, cached at construction.
    pub fn shape(&self) -> f64 {
        self.shape
    }

    /// Exponent `s = 1/eta + 1/2` of the cumulative state count `N(ε) ∝ ε^s`.
    pub fn dos_exponent(&self) -> f64 {
        1.0 / self.eta + 0.5
    }

    /// `C = (2/eta) (√(2M)/h) L F(eta) / U0^(1/eta)`, so that `ρ(ε) = C ε^(s-1)`.
    pub fn dos_prefactor(&self) -> f64 {
        2.0 / self.eta * (2.0 * self.mass).sqrt() / self.planck * self.length * self.shape
            / self.u0.powf(1.0 / self.eta)
    }

    /// Classical turning point `l(ε) = L (ε/U0)^(1/eta)`.
    pub fn turning_point(&self, energy: f64) -> Result<f64> {
        if !(energy >= 0.0) {
            return Err(domain(format!("energy must be non-negative, got {energy}")));
        }
        if energy == self.u0 {
            return Ok(self.length);
        }
        Ok(self.length * (energy / self.u0).powf(1.0 / self.eta))
    }

    /// Potential energy at position `x`.
    pub fn potential(&self, x: f64) -> f64 {
        self.u0 * (x.abs() / self.length).powf(self.eta)
    }

    /// Semiclassical density of states `ρ(ε)`.
    pub fn dos(&self, energy: f64) -> Result<f64> {
        if energy.is_nan() || energy < 0.0 {
            return Err(domain(format!("energy must be non-negative, got {energy}")));
        }
        let c = self.dos_prefactor();
        if energy == 0.0 {
            return if self.eta < 2.0 {
                Ok(0.0)
            } else if self.eta == 2.0 {
                Ok(c)
            } else {
                Err(domain(format!(
                    "density of states diverges at zero energy for eta = {} > 2",
                    self.eta
                )))
            };
        }
        Ok(c * energy.powf(self.dos_exponent() - 1.0))
    }

    /// Number of states below `energy`: `C ε^s / s`.
    pub fn cumulative_states(&self, energy: f64) -> Result<f64> {
        if !(energy >= 0.0) {
            return Err(domain(format!("energy must be non-negative, got {energy}")));
        }
        let s = self.dos_exponent();
        Ok(self.dos_prefactor() * energy.powf(s) / s)
    }
}

/// A trap together with the total particle number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasSpec {
    pub trap: Trap1D,
    n_particles: f64,
}

impl GasSpec {
    pub fn new(trap: Trap1D, n_particles: f64) -> Result<Self> {
        Ok(Self {
            trap,
            n_particles: positive("particle number N", n_particles)?,
        })
    }

    pub fn n_particles(&self) -> f64 {
        self.n_particles
    }

    pub fn with_n_particles(&self, n_particles: f64) -> Result<Self> {
        Self::new(self.trap, n_particles)
    }
}

/// `F(eta) = ∫₀¹ y^((1-eta)/eta) (1-y)^(-1/2) dy = B(1/eta, 1/2)
///         = √π Γ(1/eta) / Γ(1/eta + 1/2)`.
pub fn shape_factor(eta: f64) -> Result<f64> {
    let a = 1.0 / positive("trap power eta", eta)?;
    if a <= 100.0 {
        Ok(PI.sqrt() * gamma(a)? / gamma(a + 0.5)?)
    } else {
        Ok((0.5 * PI.ln() + ln_gamma(a)? - ln_gamma(a + 0.5)?).exp())
    }
}

/// `F(eta)` by direct quadrature of its defining integral.
pub fn shape_factor_quadrature(eta: f64, tol: f64) -> Result<f64> {
    let p = (1.0 - positive("trap power eta", eta)?) / eta;
    let integrand = |n: Node| n.from_a.powf(p) / n.to_b.sqrt();
    Ok(quadrature::integrate_finite_singular(integrand, 0.0, 1.0, tol)?.value)
}

/// The closed form with denominator `Γ(1/eta - 1/2)`, as it appears in the
/// original published formula. It does not equal the defining integral
/// (at eta = 1 it gives 1 instead of 2) and is kept only for comparison.
pub fn shape_factor_as_printed(eta: f64) -> Result<f64> {
    let a = 1.0 / positive("trap power eta", eta)?;
    Ok(PI.sqrt() * gamma(a)? / gamma(a - 0.5)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn turning_point_examples() {
        for eta in [0.5, 1.0, 3.7] {
            let trap = Trap1D::new(eta, 2.5, 1.7, 0.5, 1.0, 1.0).unwrap();
            assert_eq!(trap.turning_point(2.5).unwrap(), 1.7);
        }
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        assert!((trap.turning_point(0.5).unwrap() - 0.5).abs() < 1e-15);
        let trap = Trap1D::reduced(2.0, 4.0).unwrap();
        assert!((trap.turning_point(1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(trap.turning_point(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn turning_point_is_where_potential_equals_energy() {
        let trap = Trap1D::new(1.3, 2.0, 0.7, 0.5, 1.0, 1.0).unwrap();
        let l = trap.turning_point(3.1).unwrap();
        assert!(rel(trap.potential(l), 3.1) < 1e-14);
    }

    #[test]
    fn shape_factor_examples() {
        assert!(rel(shape_factor(1.0).unwrap(), 2.0) < 1e-13);
        assert!(rel(shape_factor(2.0).unwrap(), PI) < 1e-13);
        assert!(rel(shape_factor(0.5).unwrap(), 4.0 / 3.0) < 1e-13);
        assert!(matches!(shape_factor(0.0), Err(Error::Domain(_))));
        assert!(matches!(shape_factor(-1.0), Err(Error::Domain(_))));
    }

    #[test]
    fn shape_factor_small_eta_uses_log_gamma() {
        // B(a, 1/2) ~ √(π/a) for large a
        let f = shape_factor(0.001).unwrap();
        assert!(rel(f, (PI / 1000.0).sqrt()) < 2e-4);
        assert!(f.is_finite());
    }

    #[test]
    fn printed_closed_form_disagrees_with_integral() {
        assert!(rel(shape_factor_as_printed(1.0).unwrap(), 1.0) < 1e-13);
        assert!(rel(shape_factor_quadrature(1.0, 1e-12).unwrap(), 2.0) < 1e-12);
    }

    #[test]
    fn dos_examples() {
        let trap = Trap1D::reduced(2.0, 1.0).unwrap();
        for e in [0.0, 0.1, 1.0, 37.0] {
            assert!(rel(trap.dos(e).unwrap(), PI) < 1e-13);
        }
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        assert!(rel(trap.dos(0.25).unwrap(), 2.0) < 1e-13);
        assert_eq!(trap.dos(0.0).unwrap(), 0.0);
        let steep = Trap1D::reduced(3.0, 1.0).unwrap();
        assert!(matches!(steep.dos(0.0), Err(Error::Domain(_))));
        assert!(steep.dos(0.5).unwrap() > 0.0);
        assert!(trap.dos(-0.1).is_err());
    }

    #[test]
    fn dos_u0_scaling() {
        for eta in [0.5, 1.0, 1.7] {
            let base = Trap1D::reduced(eta, 1.3).unwrap();
            for lambda in [0.5, 2.0, 10.0] {
                let scaled = base.with_u0(1.3 * lambda).unwrap();
                let want = lambda.powf(-1.0 / eta) * base.dos(0.8).unwrap();
                assert!(rel(scaled.dos(0.8).unwrap(), want) < 1e-13);
            }
        }
    }

    #[test]
    fn cumulative_states_examples() {
        let trap = Trap1D::reduced(2.0, 1.0).unwrap();
        assert_eq!(trap.cumulative_states(0.0).unwrap(), 0.0);
        assert!(rel(trap.cumulative_states(1.0).unwrap(), PI) < 1e-13);
        assert!(trap.cumulative_states(-1.0).is_err());
    }

    #[test]
    fn cumulative_states_derivative_is_dos() {
        for eta in [0.5, 1.0, 2.0, 4.0] {
            let trap = Trap1D::reduced(eta, 1.0).unwrap();
            let mut prev = 0.0;
            for e in [0.5, 1.0, 2.0, 5.0] {
                let h = 1e-5 * e;
                let deriv = (trap.cumulative_states(e + h).unwrap()
                    - trap.cumulative_states(e - h).unwrap())
                    / (2.0 * h);
                assert!(rel(deriv, trap.dos(e).unwrap()) < 1e-6, "eta {eta}, e {e}");
                let n = trap.cumulative_states(e).unwrap();
                assert!(n > prev);
                prev = n;
            }
        }
    }

    #[test]
    fn constructor_rejects_nonpositive() {
        assert!(Trap1D::reduced(0.0, 1.0).is_err());
        assert!(Trap1D::reduced(1.0, -1.0).is_err());
        assert!(Trap1D::new(1.0, 1.0, 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(Trap1D::new(1.0, 1.0, 1.0, 1.0, f64::NAN, 1.0).is_err());
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        assert!(GasSpec::new(trap, 0.0).is_err());
        assert!(GasSpec::new(trap, 10.0).is_ok());
    }
}

//! Brute-force check of the continuum formulas: an explicit discrete spectrum
//! from semiclassical quantization, with Bose occupations summed level by
//! level.

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::trap::Trap1D;

/// Relative size of the last summed occupation above which a sum counts as
/// truncated.
pub const TRUNCATION_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumMethod {
    /// `N(ε_n) = n + 1/2` inverted on the continuum state count.
    Wkb,
    /// `ħω (n + 1/2)` for the harmonic trap.
    HarmonicExact,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSpectrum {
    levels: Vec<f64>,
    method: SpectrumMethod,
    trap: Trap1D,
}

impl DiscreteSpectrum {
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn method(&self) -> SpectrumMethod {
        self.method
    }

    pub fn trap(&self) -> &Trap1D {
        &self.trap
    }

    pub fn ground(&self) -> f64 {
        self.levels[0]
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }
}

fn require_count(count: usize) -> Result<()> {
    if count == 0 {
        Err(domain("a spectrum needs at least one level"))
    } else {
        Ok(())
    }
}

/// Semiclassical levels `ε_n = (s (n + 1/2) / C)^(1/s)`.
pub fn wkb_levels(trap: &Trap1D, count: usize) -> Result<DiscreteSpectrum> {
    require_count(count)?;
    let s = trap.dos_exponent();
    let c = trap.dos_prefactor();
    let levels = (0..count)
        .map(|n| (s * (n as f64 + 0.5) / c).powf(1.0 / s))
        .collect();
    Ok(DiscreteSpectrum {
        levels,
        method: SpectrumMethod::Wkb,
        trap: *trap,
    })
}

/// Exact oscillator levels `ħω (n + 1/2)`, `ω = √(2 U0 / M) / L`.
pub fn harmonic_levels(trap: &Trap1D, count: usize) -> Result<DiscreteSpectrum> {
    require_count(count)?;
    if trap.eta() != 2.0 {
        return Err(domain(format!(
            "exact harmonic levels need eta = 2, got {}",
            trap.eta()
        )));
    }
    let omega = (2.0 * trap.u0() / trap.mass()).sqrt() / trap.length();
    let quantum = trap.planck() / (2.0 * PI) * omega;
    let levels = (0..count).map(|n| quantum * (n as f64 + 0.5)).collect();
    Ok(DiscreteSpectrum {
        levels,
        method: SpectrumMethod::HarmonicExact,
        trap: *trap,
    })
}

/// WKB spectrum long enough for occupation sums at `temperature` with `N`
/// particles: at least `4 N` levels, and enough that the Boltzmann factor of
/// the last level relative to the ground is below `1e-17`.
pub fn wkb_levels_for(
    trap: &Trap1D,
    n_particles: f64,
    temperature: f64,
) -> Result<DiscreteSpectrum> {
    if !(n_particles > 0.0 && temperature > 0.0) {
        return Err(domain("particle number and temperature must be positive"));
    }
    let ground = wkb_levels(trap, 1)?.ground();
    let cutoff = ground + 40.0 * temperature;
    let needed = trap.cumulative_states(cutoff)?.ceil() + 1.0;
    let count = needed.max(4.0 * n_particles).min(usize::MAX as f64 / 2.0) as usize;
    wkb_levels(trap, count)
}

/// Result of an occupation sum over a finite spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OccupationSum {
    pub total: f64,
    /// Occupation of the highest stored level.
    pub last_term: f64,
}

impl OccupationSum {
    pub fn truncated(&self) -> bool {
        self.last_term > TRUNCATION_THRESHOLD * self.total
    }
}

fn bose_sum<'a>(
    levels: impl DoubleEndedIterator<Item = &'a f64>,
    shift: f64,
    temperature: f64,
) -> OccupationSum {
    // Smallest terms first.
    let mut total = 0.0;
    let mut last_term = None;
    for &e in levels.rev() {
        let term = 1.0 / ((e - shift) / temperature).exp_m1();
        last_term.get_or_insert(term);
        total += term;
    }
    OccupationSum {
        total,
        last_term: last_term.unwrap_or(0.0),
    }
}

/// `Σ_n 1 / (e^((ε_n - mu)/kT) - 1)` over every stored level.
pub fn discrete_excited_count(
    spectrum: &DiscreteSpectrum,
    temperature: f64,
    mu: f64,
) -> Result<OccupationSum> {
    if !(temperature > 0.0) {
        return Err(domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    if !(mu < spectrum.ground()) {
        return Err(domain(format!(
            "chemical potential {mu} must lie below the ground level {}",
            spectrum.ground()
        )));
    }
    Ok(bose_sum(spectrum.levels.iter(), mu, temperature))
}

/// Occupation of all levels above the ground with `mu` pinned at the ground
/// level: `Σ_{n≥1} 1 / (e^((ε_n - ε_0)/kT) - 1)`.
pub fn occupation_above_ground(
    spectrum: &DiscreteSpectrum,
    temperature: f64,
) -> Result<OccupationSum> {
    if !(temperature > 0.0) {
        return Err(domain(format!(
            "temperature must be positive, got {temperature}"
        )));
    }
    Ok(bose_sum(
        spectrum.levels[1..].iter(),
        spectrum.ground(),
        temperature,
    ))
}

/// Finite-size onset temperature: the `kT` at which the levels above the
/// ground hold `n_particles` with `mu` pinned at the ground level.
pub fn finite_size_onset(spectrum: &DiscreteSpectrum, n_particles: f64) -> Result<f64> {
    if !(n_particles > 0.0) || n_particles.is_infinite() {
        return Err(domain(format!(
            "particle number must be positive, got {n_particles}"
        )));
    }
    if spectrum.len() < 2 {
        return Err(Error::Truncation("need at least two levels".into()));
    }
    let excited = |t: f64| occupation_above_ground(spectrum, t);

    let gap = spectrum.levels[1] - spectrum.ground();
    let mut hi = gap;
    let mut lo = gap;
    while excited(hi)?.total < n_particles {
        lo = hi;
        hi *= 2.0;
        if excited(hi)?.truncated() {
            return Err(Error::Truncation(format!(
                "{} levels cannot hold {n_particles} excited particles",
                spectrum.len()
            )));
        }
    }
    while excited(lo)?.total > n_particles {
        hi = lo;
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(domain("onset temperature underflowed"));
        }
    }
    while hi - lo > 1e-13 * hi {
        let mid = 0.5 * (lo + hi);
        if excited(mid)?.total < n_particles {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let sum = excited(t)?;
    if sum.truncated() {
        return Err(Error::Truncation(format!(
            "last level occupation {:e} exceeds {TRUNCATION_THRESHOLD:e} of the sum {}",
            sum.last_term, sum.total
        )));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn harmonic_ladder_from_wkb() {
        let trap = Trap1D::reduced(2.0, 1.0).unwrap();
        let wkb = wkb_levels(&trap, 50).unwrap();
        let exact = harmonic_levels(&trap, 50).unwrap();
        for (n, (a, b)) in wkb.levels().iter().zip(exact.levels()).enumerate() {
            assert!(rel(*a, *b) < 1e-15, "level {n}: {a} vs {b}");
            assert!(rel(*a, (n as f64 + 0.5) / PI) < 1e-15);
        }
        assert_eq!(exact.method(), SpectrumMethod::HarmonicExact);
    }

    #[test]
    fn harmonic_levels_require_eta_two() {
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        assert!(harmonic_levels(&trap, 3).is_err());
        assert!(wkb_levels(&trap, 0).is_err());
    }

    #[test]
    fn wkb_quantization_round_trip() {
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        let spec = wkb_levels(&trap, 200).unwrap();
        for (n, e) in spec.levels().iter().enumerate() {
            let count = trap.cumulative_states(*e).unwrap();
            assert!((count - (n as f64 + 0.5)).abs() < 1e-12 * (n as f64 + 1.0));
        }
        assert!(spec.levels().windows(2).all(|w| w[0] < w[1]));
        assert!(spec.ground() > 0.0);
    }

    #[test]
    fn single_level_occupation() {
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        let spec = DiscreteSpectrum {
            levels: vec![1.0],
            method: SpectrumMethod::Wkb,
            trap,
        };
        let sum = discrete_excited_count(&spec, 1.0, 0.0).unwrap();
        assert!(rel(sum.total, 1.0 / (1f64.exp() - 1.0)) < 1e-15);
        assert!((sum.total - 0.581_976_706_869_326_4).abs() < 1e-12);
        assert!(discrete_excited_count(&spec, 1.0, 1.0).is_err());
        assert!(discrete_excited_count(&spec, 0.0, 0.0).is_err());
    }

    #[test]
    fn frozen_gas() {
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        let spec = wkb_levels(&trap, 100).unwrap();
        let sum = discrete_excited_count(&spec, 1e-3, 0.0).unwrap();
        assert!(sum.total < 1e-100);
        assert!(!sum.truncated());
    }

    #[test]
    fn truncation_flag() {
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        let spec = wkb_levels(&trap, 10).unwrap();
        assert!(discrete_excited_count(&spec, 100.0, 0.0)
            .unwrap()
            .truncated());
        assert!(matches!(
            finite_size_onset(&spec, 1e4),
            Err(Error::Truncation(_))
        ));
    }

    #[test]
    fn onset_monotone_in_particle_number() {
        let trap = Trap1D::reduced(1.0, 1.0).unwrap();
        let spec = wkb_levels_for(&trap, 1000.0, 200.0).unwrap();
        let mut prev = 0.0;
        for n in [1e-6, 1.0, 10.0, 100.0, 1000.0] {
            let t = finite_size_onset(&spec, n).unwrap();
            assert!(t > prev, "N = {n}");
            prev = t;
        }
        let tiny = finite_size_onset(&spec, 1e-12).unwrap();
        let one = finite_size_onset(&spec, 1.0).unwrap();
        assert!(tiny < 0.1 * one);
    }

    #[test]
    fn level_spacing_matches_dos() {
        for eta in [0.5, 1.0, 2.0] {
            let trap = Trap1D::reduced(eta, 1.0).unwrap();
            let spec = wkb_levels(&trap, 5000).unwrap();
            for n in [1000, 2000, 4998] {
                let l = spec.levels();
                let density = 1.0 / (l[n + 1] - l[n]);
                let dos = trap.dos(l[n]).unwrap();
                assert!(
                    rel(density, dos) < 1e-3,
                    "eta {eta}, n {n}: {density} vs {dos}"
                );
            }
        }
    }
}

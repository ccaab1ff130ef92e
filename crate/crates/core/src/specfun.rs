//! Real special functions: Γ, ζ, the polylogarithm on `[0, 1]` and the
//! Bose-Einstein integral
//!
//! ```text
//! g1(eta, x) = ∫₀^∞ y^(1/eta - 1/2) / (e^(y - x) - 1) dy = Γ(s) Li_s(e^x),  s = 1/eta + 1/2.
//! ```

use std::f64::consts::PI;

use crate::error::{domain, Error, Result};
use crate::quadrature;

/// Accuracy controls for series and quadrature evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecTol {
    rel_tol: f64,
    max_terms: usize,
}

impl SpecTol {
    pub const DEFAULT_REL_TOL: f64 = 1e-10;
    pub const DEFAULT_MAX_TERMS: usize = 200_000;

    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1e-3) {
            return Err(domain(format!(
                "rel_tol must lie in (0, 1e-3), got {rel_tol}"
            )));
        }
        if max_terms < 10 {
            return Err(domain(format!(
                "max_terms must be at least 10, got {max_terms}"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }
}

impl Default for SpecTol {
    fn default() -> Self {
        Self {
            rel_tol: Self::DEFAULT_REL_TOL,
            max_terms: Self::DEFAULT_MAX_TERMS,
        }
    }
}

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_7;

fn lanczos_sum(x: f64) -> f64 {
    let mut sum = 0.0;
    for k in (1..LANCZOS.len()).rev() {
        sum += LANCZOS[k] / (x + k as f64);
    }
    sum + LANCZOS[0]
}

/// Γ(x) for x > 0.
pub fn gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(domain(format!("gamma requires a finite x > 0, got {x}")));
    }
    if x > 171.7 {
        return Ok(f64::INFINITY);
    }
    // Γ(x) = √(2π) / x · t^(x + 1/2) · e^(-t) · A(x),  t = x + g + 1/2
    let t = x + LANCZOS_G + 0.5;
    let half_power = t.powf(0.5 * (x + 0.5));
    Ok((2.0 * PI).sqrt() / x * half_power * (-t).exp() * half_power * lanczos_sum(x))
}

/// ln Γ(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || x.is_infinite() {
        return Err(domain(format!("ln_gamma requires a finite x > 0, got {x}")));
    }
    if x < 8.0 {
        return Ok(gamma(x)?.ln());
    }
    let t = x + LANCZOS_G + 0.5;
    Ok(LN_SQRT_2PI - x.ln() + (x + 0.5) * t.ln() - t + lanczos_sum(x).ln())
}

// B_{2j} / (2j)! for j = 1..=15
const BERNOULLI_OVER_FACTORIAL: [f64; 15] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40_320.0,
    5.0 / 66.0 / 3_628_800.0,
    -691.0 / 2730.0 / 479_001_600.0,
    7.0 / 6.0 / 87_178_291_200.0,
    -3617.0 / 510.0 / 20_922_789_888_000.0,
    43_867.0 / 798.0 / 6_402_373_705_728_000.0,
    -174_611.0 / 330.0 / 2_432_902_008_176_640_000.0,
    854_513.0 / 138.0 / 1.124_000_727_777_607_7e21,
    -236_364_091.0 / 2730.0 / 6.204_484_017_332_394e23,
    8_553_103.0 / 6.0 / 4.032_914_611_266_056_3e26,
    -23_749_461_029.0 / 870.0 / 3.048_883_446_117_138_4e29,
    8_615_841_276_005.0 / 14_322.0 / 2.652_528_598_121_910_3e32,
];

// Terms summed directly before the Euler-Maclaurin tail takes over.
const ZETA_DIRECT_TERMS: usize = 12;

/// Riemann ζ(s) for real s > 1.
///
/// Euler-Maclaurin summation after [`ZETA_DIRECT_TERMS`] explicit terms. The
/// remainder of the asymptotic tail is bounded by the first omitted
/// correction term, which is checked against `tol`.
pub fn zeta_with(s: f64, tol: SpecTol) -> Result<f64> {
    if s.is_nan() || s <= 1.0 {
        return Err(domain(format!("zeta requires s > 1, got {s}")));
    }
    if s.is_infinite() {
        return Ok(1.0);
    }
    let n = ZETA_DIRECT_TERMS as f64;
    let mut sum: f64 = (1..ZETA_DIRECT_TERMS).map(|k| (k as f64).powf(-s)).sum();
    sum += n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s);

    // Rising factorial s (s+1) ... (s+2j-2) times N^(-s-2j+1).
    let mut rising = s;
    let mut n_pow = n.powf(-s - 1.0);
    let mut bound = f64::INFINITY;
    for (j, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let term = coeff * rising * n_pow;
        if term.abs() <= f64::EPSILON * 0.25 * sum.abs() {
            bound = term.abs();
            break;
        }
        sum += term;
        let m = 2.0 * (j as f64 + 1.0);
        rising *= (s + m - 1.0) * (s + m);
        n_pow /= n * n;
        bound = term.abs();
    }
    if bound > tol.rel_tol() * sum.abs() {
        return Err(Error::Accuracy {
            message: format!("zeta({s}) Euler-Maclaurin remainder too large"),
            estimate: sum,
            error: bound,
        });
    }
    Ok(sum)
}

pub fn zeta(s: f64) -> Result<f64> {
    zeta_with(s, SpecTol::default())
}

/// Above this argument the polylogarithm series converges too slowly and the
/// integral representation is used instead.
pub const POLYLOG_SERIES_CROSSOVER: f64 = 0.999;
// For large orders the series converges quickly even at z -> 1.
const POLYLOG_QUADRATURE_MAX_ORDER: f64 = 20.0;

/// Li_s(z) for real s and z in `[0, 1]`.
pub fn polylog_with(s: f64, z: f64, tol: SpecTol) -> Result<f64> {
    if s.is_nan() || z.is_nan() {
        return Err(domain("polylog arguments must not be NaN"));
    }
    if !(0.0..=1.0).contains(&z) {
        return Err(domain(format!("polylog requires 0 <= z <= 1, got z = {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == 1.0 {
        if s <= 1.0 {
            return Err(Error::Divergence(format!("Li_{s}(1) diverges for s <= 1")));
        }
        return zeta_with(s, tol);
    }
    if z > POLYLOG_SERIES_CROSSOVER && s > 0.0 && s <= POLYLOG_QUADRATURE_MAX_ORDER {
        polylog_integral(s, z, tol)
    } else {
        polylog_series(s, z, tol)
    }
}

pub fn polylog(s: f64, z: f64) -> Result<f64> {
    polylog_with(s, z, SpecTol::default())
}

fn polylog_series(s: f64, z: f64, tol: SpecTol) -> Result<f64> {
    let mut sum = 0.0;
    let mut z_pow = 1.0;
    let mut tail = f64::INFINITY;
    for k in 1..=tol.max_terms() {
        z_pow *= z;
        if z_pow == 0.0 {
            return Ok(sum);
        }
        sum += z_pow / (k as f64).powf(s);
        // Geometric bound on the remaining terms; for s < 0 the term ratio
        // is largest right after k.
        let next = (k + 1) as f64;
        let ratio = z * (1.0f64).max((next / (next + 1.0)).powf(s));
        if ratio < 1.0 {
            tail = z_pow * z / next.powf(s) / (1.0 - ratio);
            if tail <= tol.rel_tol() * sum {
                return Ok(sum);
            }
        }
    }
    Err(Error::Accuracy {
        message: format!(
            "polylog series Li_{s}({z}) not converged in {} terms",
            tol.max_terms()
        ),
        estimate: sum,
        error: tail,
    })
}

// Li_s(z) = 1/Γ(s) ∫₀^∞ y^(s-1) / (e^(y - ln z) - 1) dy, integrated in ln y.
fn polylog_integral(s: f64, z: f64, tol: SpecTol) -> Result<f64> {
    let x = z.ln();
    let integrand = |ln_y: f64| {
        let y = ln_y.exp();
        (s * ln_y).exp() / (y - x).exp_m1()
    };
    let quad = quadrature::integrate_semiinfinite_log(integrand, tol.rel_tol())?;
    Ok(quad.value / gamma(s)?)
}

/// Bose-Einstein integral `g1(eta, x)` with the default tolerance.
pub fn bose_g1(eta: f64, x: f64) -> Result<f64> {
    bose_g1_with(eta, x, SpecTol::default())
}

pub fn bose_g1_with(eta: f64, x: f64, tol: SpecTol) -> Result<f64> {
    if !(eta > 0.0) || eta.is_infinite() {
        return Err(domain(format!(
            "trap power must be finite and positive, got {eta}"
        )));
    }
    if x.is_nan() || x > 0.0 {
        return Err(domain(format!(
            "g1 requires x = mu/kT <= 0 (mu above the ground state), got {x}"
        )));
    }
    if x == 0.0 && eta >= 2.0 {
        return Err(Error::Divergence(format!(
            "g1(eta = {eta}, 0) diverges for eta >= 2"
        )));
    }
    let s = 1.0 / eta + 0.5;
    let gamma_s = gamma(s)?;
    if !gamma_s.is_finite() {
        return Err(domain(format!(
            "trap power {eta} too small: Gamma({s}) overflows"
        )));
    }
    let li = if x == 0.0 {
        zeta_with(s, tol)?
    } else {
        polylog_with(s, x.exp(), tol)?
    };
    Ok(gamma_s * li)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_known_values() {
        let sqrt_pi = PI.sqrt();
        assert!(rel(gamma(0.5).unwrap(), sqrt_pi) < 1e-13);
        assert!(rel(gamma(1.0).unwrap(), 1.0) < 1e-14);
        assert!(rel(gamma(1.5).unwrap(), 0.5 * sqrt_pi) < 1e-13);
    }

    #[test]
    fn gamma_against_reference() {
        // mpmath, 30 digits
        let cases = [
            (0.01, 99.432_585_119_150_601_632_066_988_697_7),
            (0.1, 9.513_507_698_668_731_285_807_979_895_82),
            (0.25, 3.625_609_908_221_908_311_930_685_155_87),
            (2.5, 1.329_340_388_179_137_020_473_625_612_51),
            (7.3, 1_271.423_633_663_908_839_917_874_326_14),
            (20.5, 540_624_298_233_507_504.473_687_364_781),
            (29.9, 6.304_174_488_373_721_221_004_635_227_19e30),
        ];
        for (x, want) in cases {
            let got = gamma(x).unwrap();
            assert!(rel(got, want) < 1e-13, "gamma({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn gamma_rejects_nonpositive() {
        assert!(matches!(gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(gamma(-1.5), Err(Error::Domain(_))));
        assert!(matches!(gamma(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_recurrence_grid() {
        for i in 1..=20 {
            let x = 0.25 * i as f64;
            let lhs = gamma(x + 1.0).unwrap();
            let rhs = x * gamma(x).unwrap();
            assert!(rel(lhs, rhs) < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for x in [0.3, 1.0, 7.9, 8.0, 12.5, 40.0, 150.0] {
            let want = gamma(x).unwrap().ln();
            assert!((ln_gamma(x).unwrap() - want).abs() < 1e-12 * want.abs().max(1.0));
        }
        assert!(ln_gamma(500.0).unwrap().is_finite());
    }

    #[test]
    fn zeta_even_values() {
        assert!(rel(zeta(2.0).unwrap(), PI * PI / 6.0) < 1e-14);
        assert!(rel(zeta(4.0).unwrap(), PI.powi(4) / 90.0) < 1e-14);
    }

    #[test]
    fn zeta_near_pole_and_large() {
        // ζ(s) ~ 1/(s-1) + γ
        let s = 1.0 + 1e-9;
        let euler_gamma = 0.577_215_664_901_532_9;
        assert!(rel(zeta(s).unwrap(), 1.0 / (s - 1.0) + euler_gamma) < 1e-12);
        assert!(rel(zeta(60.0).unwrap(), 1.0) < 1e-16);
        assert!(zeta(f64::INFINITY).unwrap() == 1.0);
    }

    #[test]
    fn zeta_rejects_pole() {
        assert!(matches!(zeta(1.0), Err(Error::Domain(_))));
        assert!(matches!(zeta(0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn polylog_examples() {
        assert_eq!(polylog(2.0, 0.0).unwrap(), 0.0);
        assert!(rel(polylog(1.5, 1.0).unwrap(), zeta(1.5).unwrap()) < 1e-15);
        assert!(rel(polylog(1.0, 0.5).unwrap(), 2.0f64.ln()) < 1e-10);
    }

    #[test]
    fn polylog_near_one_uses_integral() {
        // mpmath reference values
        let a = polylog(2.5, 0.9995).unwrap();
        assert!(
            rel(a, 1.340_206_992_383_698_531_951_866_896_78) < 1e-10,
            "{a}"
        );
        let b = polylog(0.7, 0.9999).unwrap();
        assert!(
            rel(b, 44.634_102_948_744_303_479_862_201_812_3) < 1e-10,
            "{b}"
        );
    }

    #[test]
    fn polylog_errors() {
        assert!(matches!(polylog(1.0, 1.0), Err(Error::Divergence(_))));
        assert!(matches!(polylog(0.5, 1.0), Err(Error::Divergence(_))));
        assert!(matches!(polylog(2.0, 1.5), Err(Error::Domain(_))));
        assert!(matches!(polylog(2.0, -0.1), Err(Error::Domain(_))));
    }

    #[test]
    fn polylog_series_cap_reports_accuracy() {
        let tol = SpecTol::new(1e-10, 10).unwrap();
        assert!(matches!(
            polylog_with(1.0, 0.99, tol),
            Err(Error::Accuracy { .. })
        ));
    }

    #[test]
    fn spec_tol_invariants() {
        assert!(SpecTol::new(1e-3, 100).is_err());
        assert!(SpecTol::new(0.0, 100).is_err());
        assert!(SpecTol::new(1e-8, 9).is_err());
        assert!(SpecTol::new(1e-8, 10).is_ok());
        assert_eq!(SpecTol::default().rel_tol(), 1e-10);
    }

    #[test]
    fn bose_g1_closed_forms() {
        let g = bose_g1(1.0, 0.0).unwrap();
        assert!(rel(g, 2.315_157_373_394_117) < 1e-12, "{g}");
        let g = bose_g1(0.5, 0.0).unwrap();
        assert!(rel(g, 1.783_293_191_291_300_1) < 1e-12, "{g}");
    }

    #[test]
    fn bose_g1_boltzmann_limit() {
        let x = -40.0;
        let g = bose_g1(1.0, x).unwrap();
        assert!(rel(g, gamma(1.5).unwrap() * x.exp()) < 1e-15);
    }

    #[test]
    fn bose_g1_errors() {
        assert!(matches!(bose_g1(1.0, 0.1), Err(Error::Domain(_))));
        assert!(matches!(bose_g1(2.0, 0.0), Err(Error::Divergence(_))));
        assert!(matches!(bose_g1(3.0, 0.0), Err(Error::Divergence(_))));
        assert!(matches!(bose_g1(0.0, -1.0), Err(Error::Domain(_))));
        // η ≥ 2 is fine away from x = 0
        assert!(bose_g1(3.0, -0.5).unwrap() > 0.0);
    }
}

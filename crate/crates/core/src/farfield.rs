//! Far-field beam gain, optimal phase design, the beam-squint direction law
//! and the delay-adjustable metasurface (DAM) co-design.
//!
//! With a frequency-flat phase profile aimed at direction `nu0`, subcarrier
//! `f_m` peaks at `2 nu0 / (1 + f_m/f_c)` instead of `nu0`. A per-element true
//! time delay that grows linearly along the array makes the reflected phase
//! track frequency, so every subcarrier peaks at `nu0` with the full gain `R`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::config::WidebandConfig;
use crate::error::{direction, positive, Result};
use crate::geometry::IrsArray;
use crate::profile::{phase_from_cycles, DelayProfile, PhaseProfile};

/// Beam gain `|a^T((1 + f_m/f_c) phi) theta|` toward direction `nu`.
///
/// Evaluates `|sum_r exp(j[phi_r - 2pi (r-1)(d/lambda_c)(1 + f_m/f_c) nu - 2pi f_m tau_r])|`,
/// which for half-wavelength spacing is the familiar `pi (r-1)(1 + f_m/f_c) nu`
/// progression. Missing delays mean `tau_r = 0`. The result lies in `[0, R]`.
pub fn far_beam_gain(
    array: &IrsArray,
    cfg: &WidebandConfig,
    f_m: f64,
    nu: f64,
    phases: &PhaseProfile,
    delays: Option<&DelayProfile>,
) -> Result<f64> {
    positive("frequency", f_m)?;
    direction("direction", nu)?;
    phases.check_len(array.elements())?;
    if let Some(d) = delays {
        d.check_len(array.elements())?;
    }
    let step = TAU * array.spacing_ratio(cfg) * (1.0 + f_m / cfg.carrier()) * nu;
    let sum: Complex64 = phases
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, &phi)| {
            let tau = delays.map_or(0.0, |d| d.as_slice()[i]);
            Complex64::cis(phi - i as f64 * step - TAU * f_m * tau)
        })
        .sum();
    Ok(sum.norm())
}

/// Frequency-flat phases that co-phase all elements at `(f_c, nu0)`:
/// `phi_r = 2pi (r-1) * 2 (d/lambda_c) nu0`, i.e. `2pi (r-1) nu0` at half-wavelength spacing.
pub fn far_optimal_phases(
    array: &IrsArray,
    cfg: &WidebandConfig,
    nu0: f64,
) -> Result<PhaseProfile> {
    direction("design direction", nu0)?;
    let cycles_per_element = 2.0 * array.spacing_ratio(cfg) * nu0;
    PhaseProfile::from_fn(array.elements(), |i| {
        phase_from_cycles(i as f64 * cycles_per_element)
    })
}

/// Direction at which subcarrier `f_m` peaks under phases designed for `nu0`:
/// `2 nu0 / (1 + f_m/f_c)`.
pub fn far_squint_direction(nu0: f64, f_m: f64, f_c: f64) -> Result<f64> {
    direction("design direction", nu0)?;
    positive("subcarrier frequency", f_m)?;
    positive("carrier frequency", f_c)?;
    Ok(2.0 * nu0 / (1.0 + f_m / f_c))
}

/// Joint phase/delay design of a far-field DAM for direction `nu0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FarDamDesign {
    pub phases: PhaseProfile,
    pub delays: DelayProfile,
    pub nu0: f64,
}

/// Designs DAM phases and delays that restore gain `R` at `nu0` on every subcarrier.
///
/// The ideal delay `-(r-1)(d/lambda_c) nu0 / f_c` cancels the frequency-dependent
/// part of the residual phase; it is shifted by a constant so the smallest
/// delay is exactly zero (first element for `nu0 <= 0`, last for `nu0 > 0`).
/// The remaining frequency-flat part `2pi (r-1)(d/lambda_c) nu0` goes to the
/// phase shifters.
pub fn far_dam_design(array: &IrsArray, cfg: &WidebandConfig, nu0: f64) -> Result<FarDamDesign> {
    direction("design direction", nu0)?;
    let ratio = array.spacing_ratio(cfg);
    let last = array.elements() - 1;
    let phases = PhaseProfile::from_fn(array.elements(), |i| {
        phase_from_cycles(i as f64 * ratio * nu0)
    })?;
    let slope = ratio * nu0 / cfg.carrier();
    let delays = (0..array.elements())
        .map(|i| {
            if nu0 <= 0.0 {
                -(i as f64) * slope
            } else {
                (last - i) as f64 * slope
            }
        })
        .collect();
    Ok(FarDamDesign {
        phases,
        delays: DelayProfile::new(delays)?,
        nu0,
    })
}

//! Near-field (spherical wavefront) beam gain, focusing, focal drift and the
//! near-field DAM co-design.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::config::{WidebandConfig, SPEED_OF_LIGHT};
use crate::error::{positive, Error, Result};
use crate::geometry::{NearFieldGeometry, Point};
use crate::profile::{phase_from_cycles, DelayProfile, PhaseProfile};
use crate::steering::near_wavenumber;

/// Distance from every IRS element to `point`, m.
pub fn element_distances(geom: &NearFieldGeometry, point: &Point) -> Result<Vec<f64>> {
    geom.element_distances(point)
}

/// Beam gain at location `target` for subcarrier `f_m`:
/// `|sum_r exp(j[phi_r - (2pi/lambda_c)(1 + f_m/f_c)(d_r^BR + d_r') - 2pi f_m tau_r])|`.
pub fn near_beam_gain(
    geom: &NearFieldGeometry,
    cfg: &WidebandConfig,
    f_m: f64,
    target: &Point,
    phases: &PhaseProfile,
    delays: Option<&DelayProfile>,
) -> Result<f64> {
    positive("frequency", f_m)?;
    let elements = geom.array().elements();
    phases.check_len(elements)?;
    if let Some(d) = delays {
        d.check_len(elements)?;
    }
    let to_target = geom.element_distances(target)?;
    Ok(gain_from_distances(
        geom, cfg, f_m, &to_target, phases, delays,
    ))
}

/// Shared kernel for single-point and grid evaluation; inputs already validated.
pub(crate) fn gain_from_distances(
    geom: &NearFieldGeometry,
    cfg: &WidebandConfig,
    f_m: f64,
    to_target: &[f64],
    phases: &PhaseProfile,
    delays: Option<&DelayProfile>,
) -> f64 {
    let wavenumber = near_wavenumber(cfg, f_m);
    let sum: Complex64 = geom
        .bs_distances()
        .iter()
        .zip(to_target)
        .zip(phases.as_slice())
        .enumerate()
        .map(|(i, ((br, ru), &phi))| {
            let tau = delays.map_or(0.0, |d| d.as_slice()[i]);
            Complex64::cis(phi - wavenumber * (br + ru) - TAU * f_m * tau)
        })
        .sum();
    sum.norm()
}

/// Phases focusing the carrier on the user: `phi_r = (4pi/lambda_c)(d_r^BR + d_r^RU) mod 2pi`.
pub fn near_optimal_phases(geom: &NearFieldGeometry, cfg: &WidebandConfig) -> Result<PhaseProfile> {
    let lambda = cfg.wavelength();
    let paths = geom.path_lengths();
    PhaseProfile::from_fn(paths.len(), |i| phase_from_cycles(2.0 * paths[i] / lambda))
}

/// Per-element distance at which subcarrier `f_m` re-phases under carrier focusing.
///
/// Element `r` contributes in phase at any point whose distance `d'` satisfies
/// `2 (d^BR + d^RU) = (1 + f_m/f_c)(d^BR + d')`. A non-positive solution has no
/// physical point and is reported as [`FocalDistance::Unphysical`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FocalDistance {
    Physical(f64),
    Unphysical(f64),
}

impl FocalDistance {
    pub fn meters(&self) -> f64 {
        match *self {
            FocalDistance::Physical(d) | FocalDistance::Unphysical(d) => d,
        }
    }

    pub fn is_physical(&self) -> bool {
        matches!(self, FocalDistance::Physical(_))
    }
}

/// `2 (d_r^BR + d_r^RU) / (1 + f_m/f_c) - d_r^BR` for the element at 0-based `index`.
pub fn near_squint_distance(
    geom: &NearFieldGeometry,
    cfg: &WidebandConfig,
    f_m: f64,
    index: usize,
) -> Result<FocalDistance> {
    positive("frequency", f_m)?;
    let elements = geom.array().elements();
    if index >= elements {
        return Err(Error::InvalidArray(format!(
            "element index {index} out of range for {elements} elements"
        )));
    }
    let br = geom.bs_distances()[index];
    let ru = geom.user_distances()[index];
    let dist = 2.0 * (br + ru) / (1.0 + f_m / cfg.carrier()) - br;
    Ok(if dist > 0.0 {
        FocalDistance::Physical(dist)
    } else {
        FocalDistance::Unphysical(dist)
    })
}

/// Joint phase/delay design of a near-field DAM focused on the user.
#[derive(Debug, Clone, PartialEq)]
pub struct NearDamDesign {
    pub phases: PhaseProfile,
    pub delays: DelayProfile,
    /// Common delay `T`, s; the smallest value keeping every delay non-negative.
    pub common_delay: f64,
    pub focus: Point,
}

/// Designs `tau_r = T - (d_r^BR + d_r^RU)/c` with `T = max_r (d_r^BR + d_r^RU)/c`
/// and `phi_r = (2pi/lambda_c)(d_r^BR + d_r^RU) mod 2pi`.
///
/// The delays undo the frequency-dependent propagation phase on every element,
/// so the user sees gain `R` on every subcarrier. The longest path gets zero delay.
pub fn near_dam_design(geom: &NearFieldGeometry, cfg: &WidebandConfig) -> Result<NearDamDesign> {
    let lambda = cfg.wavelength();
    let paths = geom.path_lengths();
    let longest = paths.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let common_delay = longest / SPEED_OF_LIGHT;
    let phases = PhaseProfile::from_fn(paths.len(), |i| phase_from_cycles(paths[i] / lambda))?;
    // (longest - s) / c is exactly zero on the longest path
    let delays = paths
        .iter()
        .map(|s| (longest - s) / SPEED_OF_LIGHT)
        .collect();
    Ok(NearDamDesign {
        phases,
        delays: DelayProfile::new(delays)?,
        common_delay,
        focus: geom.user(),
    })
}

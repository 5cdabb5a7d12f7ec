//! Wideband beam squint in THz intelligent reflecting surface (IRS) links.
//!
//! The crate models the cascaded BS-IRS-user channel of a uniform linear IRS
//! in both the far field (planar wavefront, gain set by a direction `nu`) and
//! the near field (spherical wavefront, gain set by a location). It evaluates
//! per-subcarrier beam gain under a frequency-flat phase design, which squints
//! away from the intended direction or focus on edge subcarriers, and designs
//! delay-adjustable metasurface (DAM) phase/delay profiles that restore the
//! full gain `R` on every subcarrier.
//!
//! ```
//! use irs_squint::{far_beam_gain, far_dam_design, IrsArray, WidebandConfig};
//!
//! let cfg = WidebandConfig::new(200e9, 6e9, 128)?;
//! let array = IrsArray::half_wavelength(64, &cfg)?;
//! let dam = far_dam_design(&array, &cfg, 0.5)?;
//! let g = far_beam_gain(&array, &cfg, cfg.lowest(), 0.5, &dam.phases, Some(&dam.delays))?;
//! assert!((g - 64.0).abs() < 1e-9);
//! # Ok::<(), irs_squint::Error>(())
//! ```

pub mod config;
pub mod error;
pub mod farfield;
pub mod geometry;
pub mod nearfield;
pub mod profile;
pub mod scan;
pub mod steering;

pub use config::{subcarrier_frequencies, Subcarrier, WidebandConfig, SPEED_OF_LIGHT};
pub use error::{Error, Result};
pub use farfield::{
    far_beam_gain, far_dam_design, far_optimal_phases, far_squint_direction, FarDamDesign,
};
pub use geometry::{fraunhofer_distance, FarFieldTarget, IrsArray, NearFieldGeometry, Point};
pub use nearfield::{
    element_distances, near_beam_gain, near_dam_design, near_optimal_phases, near_squint_distance,
    FocalDistance, NearDamDesign,
};
pub use profile::{wrap_phase, DelayProfile, PhaseProfile};
pub use scan::{
    angle_sweep, location_heatmap, peak_direction, squint_metrics, subcarrier_sweep_far,
    subcarrier_sweep_near, Axis, Design, GainMap, Heatmap, LinearGrid, LocationGrid, Peak,
    SquintMetrics,
};
pub use steering::{
    cascade_paths, cascaded_far_response, far_steering_vector, near_steering_vector, CascadedPath,
    HopPath,
};

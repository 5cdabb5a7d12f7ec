//! Sweeps and squint metrics: gain versus direction, gain versus subcarrier,
//! near-field location heatmaps, and scalar summaries of a sampled map.
//!
//! Every sweep returns a [`GainMap`] normalized by the element count, so the
//! ideal beam peaks at 1. Rows are evaluated in parallel and assembled in
//! grid order; the maximum search breaks ties toward the smallest row-major
//! index, which makes results independent of evaluation order.

use rayon::prelude::*;

use crate::config::{Subcarrier, WidebandConfig};
use crate::error::{finite, positive, Error, Result};
use crate::farfield::{far_beam_gain, far_dam_design, far_optimal_phases};
use crate::geometry::{IrsArray, NearFieldGeometry, Point};
use crate::nearfield::{gain_from_distances, near_dam_design, near_optimal_phases};
use crate::profile::{DelayProfile, PhaseProfile};

/// Slack allowed above 1 in a normalized map (rounding in exact-peak sums).
pub const NORMALIZED_SLACK: f64 = 1e-9;

/// How the IRS is configured for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Design {
    /// Frequency-flat phases focused at the carrier.
    PhasesOnly,
    /// Delay-adjustable metasurface: phases plus per-element true-time delays.
    Dam,
}

/// One named, uniformly or irregularly sampled axis of a [`GainMap`].
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub unit: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: impl Into<String>, unit: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            unit: unit.into(),
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Grid location and value of a map maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct Peak {
    /// Per-axis indices.
    pub index: Vec<usize>,
    /// Per-axis coordinates.
    pub coords: Vec<f64>,
    pub value: f64,
}

/// Beam gain sampled on the Cartesian product of its axes, stored row-major
/// (the last axis varies fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct GainMap {
    axes: Vec<Axis>,
    values: Vec<f64>,
    normalized: bool,
}

impl GainMap {
    pub fn new(axes: Vec<Axis>, values: Vec<f64>, normalized: bool) -> Result<Self> {
        if axes.is_empty() {
            return Err(Error::InvalidMap(
                "a gain map needs at least one axis".into(),
            ));
        }
        let expected: usize = axes.iter().map(Axis::len).product();
        if expected == 0 {
            return Err(Error::EmptyGrid("gain map axis has no points".into()));
        }
        if values.len() != expected {
            return Err(Error::InvalidMap(format!(
                "{} values for a grid of {expected} points",
                values.len()
            )));
        }
        for &v in &values {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidMap(format!(
                    "gain {v} is not a non-negative number"
                )));
            }
            if normalized && v > 1.0 + NORMALIZED_SLACK {
                return Err(Error::InvalidMap(format!("normalized gain {v} exceeds 1")));
            }
        }
        Ok(Self {
            axes,
            values,
            normalized,
        })
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn shape(&self) -> Vec<usize> {
        self.axes.iter().map(Axis::len).collect()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Per-axis indices of the flat position `flat`.
    pub fn unravel(&self, mut flat: usize) -> Vec<usize> {
        let mut index = vec![0; self.axes.len()];
        for (slot, axis) in index.iter_mut().zip(&self.axes).rev() {
            *slot = flat % axis.len();
            flat /= axis.len();
        }
        index
    }

    pub fn get(&self, index: &[usize]) -> Option<f64> {
        if index.len() != self.axes.len() {
            return None;
        }
        let mut flat = 0;
        for (&i, axis) in index.iter().zip(&self.axes) {
            if i >= axis.len() {
                return None;
            }
            flat = flat * axis.len() + i;
        }
        Some(self.values[flat])
    }

    /// The slice of values sharing leading index `row` on the first axis.
    pub fn row(&self, row: usize) -> Option<&[f64]> {
        let width = self.values.len() / self.axes[0].len();
        self.values.get(row * width..(row + 1) * width)
    }

    /// Global maximum; ties go to the smallest row-major index.
    pub fn argmax(&self) -> Peak {
        let flat = argmax_first(&self.values);
        self.peak_at(flat)
    }

    /// Maximum within one row of the first axis.
    pub fn row_argmax(&self, row: usize) -> Option<Peak> {
        let values = self.row(row)?;
        let width = values.len();
        Some(self.peak_at(row * width + argmax_first(values)))
    }

    fn peak_at(&self, flat: usize) -> Peak {
        let index = self.unravel(flat);
        let coords = index
            .iter()
            .zip(&self.axes)
            .map(|(&i, axis)| axis.values[i])
            .collect();
        Peak {
            index,
            coords,
            value: self.values[flat],
        }
    }

    /// Fraction of grid points whose value satisfies `pred`.
    pub fn fraction_where(&self, pred: impl Fn(f64) -> bool) -> f64 {
        self.values.iter().filter(|&&v| pred(v)).count() as f64 / self.values.len() as f64
    }
}

fn argmax_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

/// Uniform 1-D grid `origin + (k - offset) * step` for `k in 0..count`.
///
/// Centered grids put their middle point exactly on the center coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearGrid {
    origin: f64,
    offset: usize,
    step: f64,
    count: usize,
}

impl LinearGrid {
    /// Points from `start` up to and including `stop` (within rounding).
    pub fn from_range(start: f64, stop: f64, step: f64) -> Result<Self> {
        finite("grid start", start)?;
        finite("grid stop", stop)?;
        positive("grid step", step)
            .map_err(|_| Error::EmptyGrid(format!("grid step {step} must be positive")))?;
        if stop < start {
            return Err(Error::EmptyGrid(format!(
                "grid stop {stop} below start {start}"
            )));
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok(Self {
            origin: start,
            offset: 0,
            step,
            count,
        })
    }

    /// `2n + 1` points spanning `center +- half_span`, with `n = round(half_span / step)`.
    pub fn centered(center: f64, half_span: f64, step: f64) -> Result<Self> {
        finite("grid center", center)?;
        finite("grid half-span", half_span)?;
        positive("grid step", step)
            .map_err(|_| Error::EmptyGrid(format!("grid step {step} must be positive")))?;
        if half_span < 0.0 {
            return Err(Error::EmptyGrid(format!("negative half-span {half_span}")));
        }
        let half = (half_span / step).round() as usize;
        Ok(Self {
            origin: center,
            offset: half,
            step,
            count: 2 * half + 1,
        })
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn value(&self, k: usize) -> f64 {
        self.origin + (k as f64 - self.offset as f64) * self.step
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.value(k)).collect()
    }

    /// Index of the grid point nearest to `coord`, if it falls inside the grid
    /// (or within half a step of either end).
    pub fn nearest(&self, coord: f64) -> Option<usize> {
        let k = ((coord - self.origin) / self.step + self.offset as f64).round();
        (k >= 0.0 && (k as usize) < self.count).then_some(k as usize)
    }
}

/// 2-D grid of candidate locations for near-field heatmaps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocationGrid {
    pub x: LinearGrid,
    pub y: LinearGrid,
}

impl LocationGrid {
    /// Square grid of `half_span` around `center`.
    pub fn centered(center: Point, half_span: f64, step: f64) -> Result<Self> {
        Ok(Self {
            x: LinearGrid::centered(center.x, half_span, step)?,
            y: LinearGrid::centered(center.y, half_span, step)?,
        })
    }

    /// 201 x 201 cells spanning +-0.5 m around `center`.
    pub fn default_around(center: Point) -> Self {
        Self::centered(center, 0.5, 0.005).expect("constant grid parameters are valid")
    }

    /// `(ix, iy)` of the grid cell containing `point`.
    pub fn cell_of(&self, point: &Point) -> Option<(usize, usize)> {
        Some((self.x.nearest(point.x)?, self.y.nearest(point.y)?))
    }
}

/// Default direction grid: `[-1, 1]` in steps of 1e-3.
pub fn default_direction_grid() -> LinearGrid {
    LinearGrid::from_range(-1.0, 1.0, 1e-3).expect("constant grid parameters are valid")
}

fn subcarrier_axis(frequencies: Vec<f64>) -> Axis {
    Axis::new("frequency_hz", "Hz", frequencies)
}

/// Normalized far-field gain over `subcarriers x nu_grid`.
pub fn angle_sweep(
    array: &IrsArray,
    cfg: &WidebandConfig,
    phases: &PhaseProfile,
    delays: Option<&DelayProfile>,
    subcarriers: &[Subcarrier],
    nu_grid: &LinearGrid,
) -> Result<GainMap> {
    if subcarriers.is_empty() {
        return Err(Error::EmptyGrid("no subcarriers selected".into()));
    }
    let frequencies = subcarriers
        .iter()
        .map(|s| s.frequency(cfg))
        .collect::<Result<Vec<_>>>()?;
    let nus = nu_grid.points();
    let norm = array.elements() as f64;
    let rows = frequencies
        .par_iter()
        .map(|&f| {
            nus.iter()
                .map(|&nu| far_beam_gain(array, cfg, f, nu, phases, delays).map(|g| g / norm))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    GainMap::new(
        vec![subcarrier_axis(frequencies), Axis::new("nu", "1", nus)],
        rows.concat(),
        true,
    )
}

/// Normalized far-field gain at `nu0` on every subcarrier.
pub fn subcarrier_sweep_far(
    array: &IrsArray,
    cfg: &WidebandConfig,
    nu0: f64,
    design: Design,
) -> Result<GainMap> {
    let (phases, delays) = far_profiles(array, cfg, nu0, design)?;
    let norm = array.elements() as f64;
    let frequencies = cfg.frequencies();
    let values = frequencies
        .par_iter()
        .map(|&f| far_beam_gain(array, cfg, f, nu0, &phases, delays.as_ref()).map(|g| g / norm))
        .collect::<Result<Vec<_>>>()?;
    GainMap::new(vec![subcarrier_axis(frequencies)], values, true)
}

/// Phase/delay profiles of a far-field design aimed at `nu0`.
pub fn far_profiles(
    array: &IrsArray,
    cfg: &WidebandConfig,
    nu0: f64,
    design: Design,
) -> Result<(PhaseProfile, Option<DelayProfile>)> {
    Ok(match design {
        Design::PhasesOnly => (far_optimal_phases(array, cfg, nu0)?, None),
        Design::Dam => {
            let dam = far_dam_design(array, cfg, nu0)?;
            (dam.phases, Some(dam.delays))
        }
    })
}

/// Phase/delay profiles of a near-field design focused on the user.
pub fn near_profiles(
    geom: &NearFieldGeometry,
    cfg: &WidebandConfig,
    design: Design,
) -> Result<(PhaseProfile, Option<DelayProfile>)> {
    Ok(match design {
        Design::PhasesOnly => (near_optimal_phases(geom, cfg)?, None),
        Design::Dam => {
            let dam = near_dam_design(geom, cfg)?;
            (dam.phases, Some(dam.delays))
        }
    })
}

/// Normalized near-field gain at the user on every subcarrier.
pub fn subcarrier_sweep_near(
    geom: &NearFieldGeometry,
    cfg: &WidebandConfig,
    design: Design,
) -> Result<GainMap> {
    let (phases, delays) = near_profiles(geom, cfg, design)?;
    let norm = geom.array().elements() as f64;
    let frequencies = cfg.frequencies();
    let values = frequencies
        .par_iter()
        .map(|&f| {
            gain_from_distances(
                geom,
                cfg,
                f,
                geom.user_distances(),
                &phases,
                delays.as_ref(),
            ) / norm
        })
        .collect();
    GainMap::new(vec![subcarrier_axis(frequencies)], values, true)
}

/// Near-field heatmap at one frequency together with its maximum.
#[derive(Debug, Clone, PartialEq)]
pub struct Heatmap {
    /// Axes `[x_m, y_m]`.
    pub map: GainMap,
    pub frequency: f64,
    pub peak: Point,
    pub peak_cell: (usize, usize),
    pub peak_value: f64,
}

/// Normalized near-field gain over a 2-D location grid at one frequency.
pub fn location_heatmap(
    geom: &NearFieldGeometry,
    cfg: &WidebandConfig,
    subcarrier: Subcarrier,
    design: Design,
    grid: &LocationGrid,
) -> Result<Heatmap> {
    let f = subcarrier.frequency(cfg)?;
    let (phases, delays) = near_profiles(geom, cfg, design)?;
    let norm = geom.array().elements() as f64;
    let xs = grid.x.points();
    let ys = grid.y.points();
    let rows = xs
        .par_iter()
        .map(|&x| {
            ys.iter()
                .map(|&y| {
                    let to_target = geom.element_distances(&Point::new(x, y))?;
                    Ok(
                        gain_from_distances(geom, cfg, f, &to_target, &phases, delays.as_ref())
                            / norm,
                    )
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let map = GainMap::new(
        vec![Axis::new("x_m", "m", xs), Axis::new("y_m", "m", ys)],
        rows.concat(),
        true,
    )?;
    let peak = map.argmax();
    Ok(Heatmap {
        frequency: f,
        peak: Point::new(peak.coords[0], peak.coords[1]),
        peak_cell: (peak.index[0], peak.index[1]),
        peak_value: peak.value,
        map,
    })
}

/// Direction of maximum gain at frequency `f` over `nu_grid`, with the normalized gain there.
pub fn peak_direction(
    array: &IrsArray,
    cfg: &WidebandConfig,
    phases: &PhaseProfile,
    delays: Option<&DelayProfile>,
    f: f64,
    nu_grid: &LinearGrid,
) -> Result<(f64, f64)> {
    let norm = array.elements() as f64;
    let gains = (0..nu_grid.len())
        .into_par_iter()
        .map(|k| far_beam_gain(array, cfg, f, nu_grid.value(k), phases, delays).map(|g| g / norm))
        .collect::<Result<Vec<_>>>()?;
    let best = argmax_first(&gains);
    Ok((nu_grid.value(best), gains[best]))
}

/// Scalar summary of a normalized gain map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SquintMetrics {
    /// Fraction of grid points with gain `>= threshold`.
    pub fraction_above: f64,
    pub min_gain: f64,
    pub mean_gain: f64,
}

pub fn squint_metrics(map: &GainMap, threshold: f64) -> Result<SquintMetrics> {
    if !map.is_normalized() {
        return Err(Error::NotNormalized);
    }
    finite("threshold", threshold)?;
    if threshold <= 0.0 || threshold >= 1.0 {
        return Err(Error::OutOfRange {
            name: "threshold",
            value: threshold,
            expected: "(0, 1)",
        });
    }
    let values = map.values();
    Ok(SquintMetrics {
        fraction_above: map.fraction_where(|v| v >= threshold),
        min_gain: values.iter().copied().fold(f64::INFINITY, f64::min),
        mean_gain: values.iter().sum::<f64>() / values.len() as f64,
    })
}

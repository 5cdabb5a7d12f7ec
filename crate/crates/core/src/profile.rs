//! Per-element IRS control profiles.

use std::f64::consts::TAU;

use crate::error::{finite, Error, Result};

/// Wraps an angle into `[0, 2pi)`.
pub fn wrap_phase(angle: f64) -> f64 {
    let wrapped = angle.rem_euclid(TAU);
    // rem_euclid rounds tiny negative inputs up to exactly TAU
    if wrapped >= TAU {
        0.0
    } else {
        wrapped
    }
}

/// Phase `2pi * cycles` wrapped into `[0, 2pi)`; reducing whole turns before
/// scaling keeps precision for long electrical paths.
pub fn phase_from_cycles(cycles: f64) -> f64 {
    wrap_phase(TAU * cycles.rem_euclid(1.0))
}

/// Reflection phase shifts `phi_r`, one per element, canonicalized to `[0, 2pi)`.
///
/// Amplitudes are fixed to one (unit-modulus reflection).
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseProfile {
    phases: Vec<f64>,
}

impl PhaseProfile {
    pub fn new(phases: Vec<f64>) -> Result<Self> {
        let phases = phases
            .into_iter()
            .map(|p| finite("phase", p).map(wrap_phase))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { phases })
    }

    /// All-zero profile for `elements` elements.
    pub fn zeros(elements: usize) -> Self {
        Self {
            phases: vec![0.0; elements],
        }
    }

    /// Builds a profile from a 0-based element index map.
    pub fn from_fn(elements: usize, f: impl FnMut(usize) -> f64) -> Result<Self> {
        Self::new((0..elements).map(f).collect())
    }

    pub fn len(&self) -> usize {
        self.phases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phases.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.phases
    }

    pub(crate) fn check_len(&self, elements: usize) -> Result<()> {
        if self.phases.len() == elements {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                what: "phase profile",
                expected: elements,
                got: self.phases.len(),
            })
        }
    }
}

/// True-time delays `tau_r` of a delay-adjustable metasurface, seconds, all `>= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayProfile {
    delays: Vec<f64>,
}

impl DelayProfile {
    pub fn new(delays: Vec<f64>) -> Result<Self> {
        for &tau in &delays {
            finite("delay", tau)?;
            if tau < 0.0 {
                return Err(Error::OutOfRange {
                    name: "delay",
                    value: tau,
                    expected: "[0, inf)",
                });
            }
        }
        Ok(Self { delays })
    }

    pub fn zeros(elements: usize) -> Self {
        Self {
            delays: vec![0.0; elements],
        }
    }

    pub fn len(&self) -> usize {
        self.delays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delays.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.delays
    }

    pub fn min(&self) -> f64 {
        self.delays.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.delays
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Same profile with a common delay `offset` added to every element.
    pub fn shifted(&self, offset: f64) -> Result<Self> {
        Self::new(self.delays.iter().map(|tau| tau + offset).collect())
    }

    pub(crate) fn check_len(&self, elements: usize) -> Result<()> {
        if self.delays.len() == elements {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                what: "delay profile",
                expected: elements,
                got: self.delays.len(),
            })
        }
    }
}

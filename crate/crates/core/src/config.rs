//! Wideband carrier configuration and the OFDM subcarrier grid.

use crate::error::{positive, Error, Result};

/// Speed of light in vacuum, m/s (exact SI value).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Carrier frequency, bandwidth and subcarrier count of a wideband link.
///
/// The carrier wavelength is always derived from the carrier frequency so
/// that `wavelength() * carrier() == SPEED_OF_LIGHT` holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidebandConfig {
    carrier: f64,
    bandwidth: f64,
    subcarriers: usize,
}

impl WidebandConfig {
    pub fn new(carrier: f64, bandwidth: f64, subcarriers: usize) -> Result<Self> {
        positive("carrier frequency", carrier)?;
        positive("bandwidth", bandwidth)?;
        if subcarriers == 0 {
            return Err(Error::InvalidConfig(
                "subcarrier count must be at least 1".into(),
            ));
        }
        if bandwidth >= 2.0 * carrier {
            return Err(Error::InvalidConfig(format!(
                "bandwidth {bandwidth} Hz must stay below twice the carrier {carrier} Hz"
            )));
        }
        Ok(Self {
            carrier,
            bandwidth,
            subcarriers,
        })
    }

    /// Carrier frequency `f_c`, Hz.
    pub fn carrier(&self) -> f64 {
        self.carrier
    }

    /// Total bandwidth `B`, Hz.
    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    /// Number of subcarriers `M`.
    pub fn subcarriers(&self) -> usize {
        self.subcarriers
    }

    /// Carrier wavelength `c / f_c`, m.
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier
    }

    /// Subcarrier spacing `B / M`, Hz.
    pub fn spacing(&self) -> f64 {
        self.bandwidth / self.subcarriers as f64
    }

    /// Frequency of the subcarrier stored at 0-based `index` (1-based
    /// `m = index + 1`): `f_c + (B/M)(m - 1 - (M - 1)/2)`.
    pub fn frequency(&self, index: usize) -> Result<f64> {
        if index >= self.subcarriers {
            return Err(Error::SubcarrierOutOfRange {
                index,
                count: self.subcarriers,
            });
        }
        let offset = index as f64 - (self.subcarriers as f64 - 1.0) / 2.0;
        Ok(self.carrier + self.spacing() * offset)
    }

    /// Lowest subcarrier frequency `f_1`.
    pub fn lowest(&self) -> f64 {
        self.frequency(0).expect("M >= 1")
    }

    /// Highest subcarrier frequency `f_M`.
    pub fn highest(&self) -> f64 {
        self.frequency(self.subcarriers - 1).expect("M >= 1")
    }

    pub fn frequencies(&self) -> Vec<f64> {
        subcarrier_frequencies(self)
    }
}

/// The full subcarrier grid `[f_1, ..., f_M]`, symmetric about `f_c`.
pub fn subcarrier_frequencies(cfg: &WidebandConfig) -> Vec<f64> {
    (0..cfg.subcarriers)
        .map(|i| cfg.frequency(i).expect("index within grid"))
        .collect()
}

/// Selects an evaluation frequency relative to a [`WidebandConfig`].
///
/// With an even subcarrier count no subcarrier sits exactly on `f_c`, so the
/// carrier itself is selectable as a separate frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcarrier {
    /// 0-based subcarrier index.
    Index(usize),
    /// First subcarrier `f_1`.
    First,
    /// Last subcarrier `f_M`.
    Last,
    /// The carrier frequency `f_c`.
    Carrier,
}

impl Subcarrier {
    pub fn frequency(&self, cfg: &WidebandConfig) -> Result<f64> {
        match *self {
            Subcarrier::Index(i) => cfg.frequency(i),
            Subcarrier::First => Ok(cfg.lowest()),
            Subcarrier::Last => Ok(cfg.highest()),
            Subcarrier::Carrier => Ok(cfg.carrier()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints_at_200ghz() {
        let cfg = WidebandConfig::new(200e9, 6e9, 128).unwrap();
        let f = cfg.frequencies();
        assert_eq!(f.len(), 128);
        assert_eq!(f[0], 197.0234375e9);
        assert_eq!(f[127], 202.9765625e9);
        assert_eq!(f[1] - f[0], 6e9 / 128.0);
    }

    #[test]
    fn single_subcarrier_sits_on_carrier() {
        let cfg = WidebandConfig::new(200e9, 6e9, 1).unwrap();
        assert_eq!(cfg.frequencies(), vec![200e9]);
    }

    #[test]
    fn grid_is_symmetric_about_carrier() {
        for m in [1usize, 2, 7, 128, 333] {
            let cfg = WidebandConfig::new(140e9, 17.5e9, m).unwrap();
            let f = cfg.frequencies();
            for i in 0..m {
                let pair = f[i] + f[m - 1 - i];
                assert!((pair - 2.0 * 140e9).abs() <= 1e-6, "m={m} i={i}");
            }
            let mean = f.iter().sum::<f64>() / m as f64;
            assert!((mean - 140e9).abs() / 140e9 < 1e-14);
        }
    }

    #[test]
    fn wavelength_is_derived() {
        let cfg = WidebandConfig::new(200e9, 6e9, 128).unwrap();
        assert!((cfg.wavelength() * cfg.carrier() - SPEED_OF_LIGHT).abs() < 1e-6);
        assert!((cfg.wavelength() - 1.49896229e-3).abs() < 1e-11);
    }

    #[test]
    fn rejects_invalid_configs() {
        assert!(WidebandConfig::new(0.0, 1e9, 4).is_err());
        assert!(WidebandConfig::new(200e9, -1.0, 4).is_err());
        assert!(WidebandConfig::new(200e9, 1e9, 0).is_err());
        assert!(WidebandConfig::new(200e9, 400e9, 4).is_err());
        assert!(WidebandConfig::new(f64::NAN, 1e9, 4).is_err());
    }

    #[test]
    fn subcarrier_selectors() {
        let cfg = WidebandConfig::new(200e9, 6e9, 128).unwrap();
        assert_eq!(Subcarrier::First.frequency(&cfg).unwrap(), cfg.lowest());
        assert_eq!(Subcarrier::Last.frequency(&cfg).unwrap(), cfg.highest());
        assert_eq!(Subcarrier::Carrier.frequency(&cfg).unwrap(), 200e9);
        assert!(Subcarrier::Index(128).frequency(&cfg).is_err());
    }
}

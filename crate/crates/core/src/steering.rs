//! Wideband steering vectors and the cascaded BS-IRS-user frequency response.
//!
//! Both channel models carry the `(1 + f/f_c)` factor of the cascaded
//! response: the incident and departing hops each contribute one wavelength
//! term, so at `f = f_c` the electrical path is doubled.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::config::WidebandConfig;
use crate::error::{direction, finite, positive, Error, Result};
use crate::geometry::{IrsArray, NearFieldGeometry, Point};

/// Far-field steering vector `a((1 + f/f_c) phi)`.
///
/// Entry `r` (1-based) is `exp(-j 2pi (r-1) (d/lambda_c) (1 + f/f_c) nu)`.
pub fn far_steering_vector(
    array: &IrsArray,
    cfg: &WidebandConfig,
    f: f64,
    nu: f64,
) -> Result<Vec<Complex64>> {
    positive("frequency", f)?;
    direction("direction", nu)?;
    let step = -TAU * array.spacing_ratio(cfg) * (1.0 + f / cfg.carrier()) * nu;
    Ok((0..array.elements())
        .map(|i| Complex64::cis(i as f64 * step))
        .collect())
}

/// Near-field steering vector toward `target`.
///
/// Entry `r` is `exp(-j (2pi/lambda_c) (1 + f/f_c) (d_r^BR + d_r'))` where
/// `d_r'` is the exact distance from element `r` to `target`.
pub fn near_steering_vector(
    geom: &NearFieldGeometry,
    cfg: &WidebandConfig,
    f: f64,
    target: &Point,
) -> Result<Vec<Complex64>> {
    positive("frequency", f)?;
    let wavenumber = near_wavenumber(cfg, f);
    let to_target = geom.element_distances(target)?;
    Ok(geom
        .bs_distances()
        .iter()
        .zip(&to_target)
        .map(|(br, ru)| Complex64::cis(-wavenumber * (br + ru)))
        .collect())
}

/// `(2pi/lambda_c)(1 + f/f_c)`, written as `2pi (f_c + f) / c`.
pub(crate) fn near_wavenumber(cfg: &WidebandConfig, f: f64) -> f64 {
    TAU * (cfg.carrier() + f) / crate::config::SPEED_OF_LIGHT
}

/// One propagation path of a single hop (BS-IRS or IRS-user).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HopPath {
    /// Equivalent baseband complex gain.
    pub gain: Complex64,
    /// Delay to the first IRS element, s.
    pub delay: f64,
    /// Normalized angle `(d/lambda_c) sin(angle)`, within `[-1/2, 1/2]`.
    pub angle: f64,
}

/// One equivalent path of the cascaded channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CascadedPath {
    alpha: Complex64,
    phi_c: f64,
    tau_c: f64,
}

impl CascadedPath {
    /// `alpha`: complex gain; `phi_c`: normalized cascade angle in `(-1, 1)`;
    /// `tau_c`: cascade delay, s.
    pub fn new(alpha: Complex64, phi_c: f64, tau_c: f64) -> Result<Self> {
        finite("path gain", alpha.re)?;
        finite("path gain", alpha.im)?;
        finite("cascade angle", phi_c)?;
        finite("cascade delay", tau_c)?;
        if phi_c <= -1.0 || phi_c >= 1.0 {
            return Err(Error::OutOfRange {
                name: "cascade angle",
                value: phi_c,
                expected: "(-1, 1)",
            });
        }
        if tau_c < 0.0 {
            return Err(Error::OutOfRange {
                name: "cascade delay",
                value: tau_c,
                expected: "[0, inf)",
            });
        }
        Ok(Self {
            alpha,
            phi_c,
            tau_c,
        })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn phi_c(&self) -> f64 {
        self.phi_c
    }

    pub fn tau_c(&self) -> f64 {
        self.tau_c
    }
}

/// Combines every incident/departing path pair into `L1 * L2` cascaded paths.
///
/// `alpha^C = gain_1 e^{-j2pi f_c tau_1} * gain_2 e^{-j2pi f_c tau_2}`,
/// `phi^C = angle_1 - angle_2` and `tau^C = tau_1 + tau_2`.
pub fn cascade_paths(
    incident: &[HopPath],
    departing: &[HopPath],
    cfg: &WidebandConfig,
) -> Result<Vec<CascadedPath>> {
    let fc = cfg.carrier();
    let mut paths = Vec::with_capacity(incident.len() * departing.len());
    for a in incident {
        for b in departing {
            let alpha = a.gain
                * Complex64::cis(-TAU * fc * a.delay)
                * b.gain
                * Complex64::cis(-TAU * fc * b.delay);
            paths.push(CascadedPath::new(
                alpha,
                a.angle - b.angle,
                a.delay + b.delay,
            )?);
        }
    }
    Ok(paths)
}

/// Cascaded far-field frequency response at frequency `f`.
///
/// Entry `r` is `sum_l alpha_l exp(-j2pi (r-1) phi_l (1 + f/f_c)) exp(-j2pi f tau_l)`.
pub fn cascaded_far_response(
    paths: &[CascadedPath],
    array: &IrsArray,
    cfg: &WidebandConfig,
    f: f64,
) -> Result<Vec<Complex64>> {
    if paths.is_empty() {
        return Err(Error::EmptyPaths);
    }
    positive("frequency", f)?;
    let scale = 1.0 + f / cfg.carrier();
    Ok((0..array.elements())
        .map(|i| {
            paths
                .iter()
                .map(|p| {
                    p.alpha
                        * Complex64::cis(-TAU * i as f64 * p.phi_c * scale)
                        * Complex64::cis(-TAU * f * p.tau_c)
                })
                .sum()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cfg() -> WidebandConfig {
        WidebandConfig::new(200e9, 6e9, 128).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn broadside_is_all_ones() {
        let c = cfg();
        let array = IrsArray::half_wavelength(16, &c).unwrap();
        let a = far_steering_vector(&array, &c, 201e9, 0.0).unwrap();
        assert!(a.iter().all(|z| *z == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn single_element_vector() {
        let c = cfg();
        let array = IrsArray::half_wavelength(1, &c).unwrap();
        let a = far_steering_vector(&array, &c, 197e9, 1.3).unwrap();
        assert_eq!(a, vec![Complex64::new(1.0, 0.0)]);
    }

    #[test]
    fn second_element_flips_sign_at_half_direction() {
        // exponent -2pi * 1 * (1/2) * 2 * 0.5 = -pi
        let c = cfg();
        let array = IrsArray::half_wavelength(2, &c).unwrap();
        let a = far_steering_vector(&array, &c, c.carrier(), 0.5).unwrap();
        assert_eq!(a[0], Complex64::new(1.0, 0.0));
        assert!(close(a[1], Complex64::new(-1.0, 0.0), 1e-15));
    }

    #[test]
    fn steering_rejects_bad_input() {
        let c = cfg();
        let array = IrsArray::half_wavelength(2, &c).unwrap();
        assert!(far_steering_vector(&array, &c, f64::NAN, 0.1).is_err());
        assert!(far_steering_vector(&array, &c, 200e9, f64::INFINITY).is_err());
        assert!(far_steering_vector(&array, &c, -1.0, 0.1).is_err());
        assert!(far_steering_vector(&array, &c, 200e9, 2.1).is_err());
    }

    #[test]
    fn near_vector_rejects_element_target() {
        let c = cfg();
        let array = IrsArray::half_wavelength(4, &c).unwrap();
        let geom = NearFieldGeometry::new(
            Point::new(0.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(1.0, 1.0),
            array,
        )
        .unwrap();
        let on_element = geom.element_position(1);
        assert!(matches!(
            near_steering_vector(&geom, &c, 200e9, &on_element),
            Err(Error::CoincidentPoint { element: 2, .. })
        ));
    }

    #[test]
    fn near_vector_phase_matches_path_length() {
        let c = cfg();
        let array = IrsArray::half_wavelength(1, &c).unwrap();
        let geom = NearFieldGeometry::new(
            Point::new(0.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(1.0, 1.0),
            array,
        )
        .unwrap();
        let b = near_steering_vector(&geom, &c, c.carrier(), &geom.user()).unwrap();
        // at f = f_c the phase is -(4pi/lambda_c)(sqrt2 + sqrt5); compare via cycles
        let cycles = 2.0 * (2f64.sqrt() + 5f64.sqrt()) / c.wavelength();
        let expected = Complex64::cis(-TAU * cycles.fract());
        assert!(close(b[0], expected, 1e-10));
    }

    #[test]
    fn single_path_reduces_to_steering_vector() {
        let c = cfg();
        let array = IrsArray::half_wavelength(32, &c).unwrap();
        let path = CascadedPath::new(Complex64::new(1.0, 0.0), 0.3, 0.0).unwrap();
        for f in [c.lowest(), c.carrier(), c.highest()] {
            let h = cascaded_far_response(&[path], &array, &c, f).unwrap();
            let a = far_steering_vector(&array, &c, f, 0.6).unwrap();
            for (x, y) in h.iter().zip(&a) {
                assert!(close(*x, *y, 1e-12));
            }
        }
    }

    #[test]
    fn split_paths_add_linearly() {
        let c = cfg();
        let array = IrsArray::half_wavelength(16, &c).unwrap();
        let one = CascadedPath::new(Complex64::new(1.0, 0.0), -0.2, 3e-9).unwrap();
        let half = CascadedPath::new(Complex64::new(0.5, 0.0), -0.2, 3e-9).unwrap();
        let f = c.highest();
        let a = cascaded_far_response(&[one], &array, &c, f).unwrap();
        let b = cascaded_far_response(&[half, half], &array, &c, f).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(close(*x, *y, 1e-12));
        }
    }

    #[test]
    fn empty_path_list_rejected() {
        let c = cfg();
        let array = IrsArray::half_wavelength(4, &c).unwrap();
        assert_eq!(
            cascaded_far_response(&[], &array, &c, 200e9),
            Err(Error::EmptyPaths)
        );
    }

    #[test]
    fn cascade_path_invariants() {
        assert!(CascadedPath::new(Complex64::new(1.0, 0.0), 1.0, 0.0).is_err());
        assert!(CascadedPath::new(Complex64::new(1.0, 0.0), 0.99, -1e-12).is_err());
        assert!(CascadedPath::new(Complex64::new(1.0, 0.0), -0.99, 0.0).is_ok());
    }

    /// Per-element delays of the two hops, evaluated directly:
    /// `tau_{l1,r} = tau_l1 + (r-1) angle_l1 / f_c`, `tau_{l2,r} = tau_l2 - (r-1) angle_l2 / f_c`.
    fn brute_force_response(
        incident: &[HopPath],
        departing: &[HopPath],
        elements: usize,
        fc: f64,
        f: f64,
    ) -> Vec<Complex64> {
        (0..elements)
            .map(|i| {
                let r = i as f64;
                let mut acc = Complex64::new(0.0, 0.0);
                for a in incident {
                    for b in departing {
                        let tau_br = a.delay + r * a.angle / fc;
                        let tau_ru = b.delay - r * b.angle / fc;
                        acc += a.gain
                            * b.gain
                            * Complex64::cis(-TAU * fc * tau_br)
                            * Complex64::cis(-TAU * fc * tau_ru)
                            * Complex64::cis(-TAU * f * (tau_br + tau_ru));
                    }
                }
                acc
            })
            .collect()
    }

    #[test]
    fn two_by_two_paths_match_brute_force_double_sum() {
        use rand::{rngs::StdRng, Rng, SeedableRng};
        let c = cfg();
        let array = IrsArray::half_wavelength(24, &c).unwrap();
        let mut rng = StdRng::seed_from_u64(7);
        let hop = |rng: &mut StdRng| HopPath {
            gain: Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)),
            delay: rng.random_range(1e-9..2e-8),
            angle: rng.random_range(-0.5..0.5),
        };
        let incident = [hop(&mut rng), hop(&mut rng)];
        let departing = [hop(&mut rng), hop(&mut rng)];
        let paths = cascade_paths(&incident, &departing, &c).unwrap();
        assert_eq!(paths.len(), 4);
        for f in [c.lowest(), c.carrier(), c.highest()] {
            let h = cascaded_far_response(&paths, &array, &c, f).unwrap();
            let oracle = brute_force_response(&incident, &departing, 24, c.carrier(), f);
            for (x, y) in h.iter().zip(&oracle) {
                assert!(close(*x, *y, 1e-9), "{x} vs {y}");
            }
        }
    }

    proptest! {
        #[test]
        fn steering_entries_have_unit_modulus(
            nu in -2.0f64..=2.0,
            f in 150e9f64..250e9,
            elements in 1usize..300,
        ) {
            let c = cfg();
            let array = IrsArray::half_wavelength(elements, &c).unwrap();
            for z in far_steering_vector(&array, &c, f, nu).unwrap() {
                prop_assert!((z.norm() - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn steering_is_conjugate_symmetric(nu in -2.0f64..=2.0, f in 150e9f64..250e9) {
            let c = cfg();
            let array = IrsArray::half_wavelength(64, &c).unwrap();
            let pos = far_steering_vector(&array, &c, f, nu).unwrap();
            let neg = far_steering_vector(&array, &c, f, -nu).unwrap();
            for (p, n) in pos.iter().zip(&neg) {
                prop_assert!((p.conj() - n).norm() < 1e-12);
            }
        }

        #[test]
        fn near_entries_have_unit_modulus(
            x in -5.0f64..5.0,
            y in -5.0f64..0.9,
            f in 197e9f64..203e9,
        ) {
            let c = cfg();
            let array = IrsArray::half_wavelength(64, &c).unwrap();
            let geom = NearFieldGeometry::new(
                Point::new(0.0, 0.0), Point::new(3.0, 0.0), Point::new(1.0, 1.0), array,
            ).unwrap();
            for z in near_steering_vector(&geom, &c, f, &Point::new(x, y)).unwrap() {
                prop_assert!((z.norm() - 1.0).abs() < 1e-12);
            }
        }
    }
}

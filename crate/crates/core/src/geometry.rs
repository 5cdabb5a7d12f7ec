//! Array and link geometry: the uniform linear IRS, far-field directions and
//! the 2-D near-field layout.

use crate::config::WidebandConfig;
use crate::error::{direction, finite, positive, Error, Result};

/// A point in the 2-D simulation plane, meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    fn validate(&self, name: &'static str) -> Result<()> {
        finite(name, self.x)?;
        finite(name, self.y)?;
        Ok(())
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Self { x, y }
    }
}

/// Uniform linear IRS with `R` elements spaced `d` meters apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsArray {
    elements: usize,
    spacing: f64,
}

impl IrsArray {
    pub fn new(elements: usize, spacing: f64) -> Result<Self> {
        if elements == 0 {
            return Err(Error::InvalidArray(
                "element count must be at least 1".into(),
            ));
        }
        positive("element spacing", spacing)?;
        Ok(Self { elements, spacing })
    }

    /// Array with the default half-wavelength spacing `d = lambda_c / 2`.
    pub fn half_wavelength(elements: usize, cfg: &WidebandConfig) -> Result<Self> {
        Self::new(elements, cfg.wavelength() / 2.0)
    }

    /// Element count `R`.
    pub fn elements(&self) -> usize {
        self.elements
    }

    /// Element spacing `d`, m.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// Spacing in carrier wavelengths, `d / lambda_c` (0.5 by default).
    pub fn spacing_ratio(&self, cfg: &WidebandConfig) -> f64 {
        self.spacing / cfg.wavelength()
    }

    /// Physical aperture `(R - 1) d`, m.
    pub fn aperture(&self) -> f64 {
        (self.elements - 1) as f64 * self.spacing
    }
}

/// Far-field target direction of the cascaded BS-IRS-user link.
///
/// `nu = sin(chi) - sin(psi)` is the only quantity the gain depends on; the
/// angles are kept when the target was built from them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldTarget {
    angles: Option<(f64, f64)>,
    nu: f64,
}

impl FarFieldTarget {
    /// Target from angle of arrival `chi` and angle of departure `psi`, radians.
    pub fn from_angles(chi: f64, psi: f64) -> Result<Self> {
        finite("angle of arrival", chi)?;
        finite("angle of departure", psi)?;
        Ok(Self {
            angles: Some((chi, psi)),
            nu: chi.sin() - psi.sin(),
        })
    }

    pub fn from_direction(nu: f64) -> Result<Self> {
        Ok(Self {
            angles: None,
            nu: direction("direction", nu)?,
        })
    }

    /// Fully populated target; `nu` must agree with the angles to 1e-12.
    pub fn new(chi: f64, psi: f64, nu: f64) -> Result<Self> {
        let target = Self::from_angles(chi, psi)?;
        direction("direction", nu)?;
        if (target.nu - nu).abs() > 1e-12 {
            return Err(Error::OutOfRange {
                name: "direction",
                value: nu,
                expected: "sin(chi) - sin(psi) within 1e-12",
            });
        }
        Ok(target)
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn chi(&self) -> Option<f64> {
        self.angles.map(|(chi, _)| chi)
    }

    pub fn psi(&self) -> Option<f64> {
        self.angles.map(|(_, psi)| psi)
    }
}

/// Near-field layout: BS, user and an IRS laid out along +x from `irs_origin`.
///
/// Element `r` (1-based) sits at `(x_R + (r - 1) d, y_R)`; storage is 0-based.
#[derive(Debug, Clone, PartialEq)]
pub struct NearFieldGeometry {
    bs: Point,
    user: Point,
    irs_origin: Point,
    array: IrsArray,
    bs_distances: Vec<f64>,
    user_distances: Vec<f64>,
}

impl NearFieldGeometry {
    pub fn new(bs: Point, user: Point, irs_origin: Point, array: IrsArray) -> Result<Self> {
        bs.validate("BS position")?;
        user.validate("user position")?;
        irs_origin.validate("IRS origin")?;
        let mut geom = Self {
            bs,
            user,
            irs_origin,
            array,
            bs_distances: Vec::new(),
            user_distances: Vec::new(),
        };
        geom.bs_distances = geom.element_distances(&bs)?;
        geom.user_distances = geom.element_distances(&user)?;
        Ok(geom)
    }

    pub fn bs(&self) -> Point {
        self.bs
    }

    pub fn user(&self) -> Point {
        self.user
    }

    pub fn irs_origin(&self) -> Point {
        self.irs_origin
    }

    pub fn array(&self) -> &IrsArray {
        &self.array
    }

    /// Position of the element stored at 0-based `index`.
    pub fn element_position(&self, index: usize) -> Point {
        Point::new(
            self.irs_origin.x + index as f64 * self.array.spacing,
            self.irs_origin.y,
        )
    }

    /// Distance from every element to `point`; fails if `point` sits on an element.
    pub fn element_distances(&self, point: &Point) -> Result<Vec<f64>> {
        point.validate("point")?;
        (0..self.array.elements)
            .map(|i| {
                let dist = self.element_position(i).distance(point);
                if dist > 0.0 {
                    Ok(dist)
                } else {
                    Err(Error::CoincidentPoint {
                        element: i + 1,
                        x: point.x,
                        y: point.y,
                    })
                }
            })
            .collect()
    }

    /// `d_r^BR` for every element.
    pub fn bs_distances(&self) -> &[f64] {
        &self.bs_distances
    }

    /// `d_r^RU` for every element.
    pub fn user_distances(&self) -> &[f64] {
        &self.user_distances
    }

    /// Per-element cascade path length `d_r^BR + d_r^RU`.
    pub fn path_lengths(&self) -> Vec<f64> {
        self.bs_distances
            .iter()
            .zip(&self.user_distances)
            .map(|(br, ru)| br + ru)
            .collect()
    }
}

/// Fraunhofer distance `2 D^2 / lambda_c` of an aperture `D`.
pub fn fraunhofer_distance(aperture: f64, cfg: &WidebandConfig) -> Result<f64> {
    positive("aperture", aperture)?;
    Ok(2.0 * aperture * aperture / cfg.wavelength())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> WidebandConfig {
        WidebandConfig::new(200e9, 6e9, 128).unwrap()
    }

    fn reference_layout(elements: usize) -> NearFieldGeometry {
        let array = IrsArray::half_wavelength(elements, &cfg()).unwrap();
        NearFieldGeometry::new(
            Point::new(0.0, 0.0),
            Point::new(3.0, 0.0),
            Point::new(1.0, 1.0),
            array,
        )
        .unwrap()
    }

    #[test]
    fn first_element_distances() {
        let geom = reference_layout(64);
        assert!((geom.bs_distances()[0] - 2f64.sqrt()).abs() < 1e-15);
        assert!((geom.user_distances()[0] - 5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn element_positions_step_along_x() {
        let geom = reference_layout(4);
        let d = cfg().wavelength() / 2.0;
        let p = geom.element_position(3);
        assert!((p.x - (1.0 + 3.0 * d)).abs() < 1e-15);
        assert_eq!(p.y, 1.0);
    }

    #[test]
    fn coincident_points_rejected() {
        let c = cfg();
        let array = IrsArray::half_wavelength(8, &c).unwrap();
        let on_element = Point::new(1.0, 1.0);
        let err = NearFieldGeometry::new(Point::new(0.0, 0.0), on_element, on_element, array);
        assert!(matches!(
            err,
            Err(Error::CoincidentPoint { element: 1, .. })
        ));

        let geom = reference_layout(8);
        let third = geom.element_position(2);
        assert!(matches!(
            geom.element_distances(&third),
            Err(Error::CoincidentPoint { element: 3, .. })
        ));
    }

    #[test]
    fn distances_monotone_left_of_array_on_its_line() {
        let geom = reference_layout(32);
        let dist = geom.element_distances(&Point::new(0.2, 1.0)).unwrap();
        assert!(dist.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn target_from_angles() {
        let t = FarFieldTarget::from_angles(0.7, -0.2).unwrap();
        assert!((t.nu() - (0.7f64.sin() - (-0.2f64).sin())).abs() < 1e-15);
        assert!(FarFieldTarget::new(0.7, -0.2, t.nu()).is_ok());
        assert!(FarFieldTarget::new(0.7, -0.2, t.nu() + 1e-9).is_err());
        assert!(FarFieldTarget::from_direction(2.5).is_err());
        assert!(FarFieldTarget::from_direction(-2.0).is_ok());
    }

    #[test]
    fn array_rejects_degenerate_input() {
        assert!(IrsArray::new(0, 1e-3).is_err());
        assert!(IrsArray::new(4, 0.0).is_err());
        let a = IrsArray::half_wavelength(64, &cfg()).unwrap();
        assert_eq!(a.spacing_ratio(&cfg()), 0.5);
    }

    #[test]
    fn fraunhofer_boundary() {
        let c = cfg();
        let lambda = c.wavelength();
        assert!((fraunhofer_distance(lambda, &c).unwrap() - 2.0 * lambda).abs() < 1e-15);

        // 63 half-wavelength gaps at 200 GHz: D = 47.22 mm -> 2.975 m.
        let array = IrsArray::half_wavelength(64, &c).unwrap();
        let dist = fraunhofer_distance(array.aperture(), &c).unwrap();
        assert!((dist - 2.974_690_664_5).abs() < 1e-6, "{dist}");

        let twice = fraunhofer_distance(2.0 * array.aperture(), &c).unwrap();
        assert!((twice / dist - 4.0).abs() < 1e-12);
        assert!(fraunhofer_distance(0.0, &c).is_err());
    }
}

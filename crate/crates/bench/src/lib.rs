//! Shared fixtures for the criterion benchmarks.

use irs_squint::{IrsArray, NearFieldGeometry, Point, WidebandConfig};

/// 200 GHz carrier, 6 GHz bandwidth, 128 subcarriers.
pub fn reference_config() -> WidebandConfig {
    WidebandConfig::new(200e9, 6e9, 128).expect("valid reference configuration")
}

/// BS at the origin, user at (3, 0) and the IRS starting at (1, 1).
pub fn reference_layout(elements: usize) -> NearFieldGeometry {
    let cfg = reference_config();
    NearFieldGeometry::new(
        Point::new(0.0, 0.0),
        Point::new(3.0, 0.0),
        Point::new(1.0, 1.0),
        IrsArray::half_wavelength(elements, &cfg).expect("valid array"),
    )
    .expect("valid layout")
}

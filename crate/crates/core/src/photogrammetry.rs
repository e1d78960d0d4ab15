//! Ground sample distance and pixel-to-ground unit conversion for nadir
//! imagery.
//!
//! Ground resolution is kept in centimeters per pixel. The only place the
//! factor 100 between centimeters and meters appears is [`px_to_meters`] and
//! its inverse.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

fn positive<T: Real>(field: &str, value: T) -> Result<T> {
    if !value.is_finite() {
        return Err(Error::invalid(field, format!("must be finite, got {value}")));
    }
    if value <= T::zero() {
        return Err(Error::invalid(field, format!("must be > 0, got {value}")));
    }
    Ok(value)
}

/// Sensor and lens intrinsics of the capture camera.
///
/// `image_width_px` is the width of the image the ground resolution refers
/// to, i.e. the original capture width, not the resized detector input.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CameraModel<T> {
    pub sensor_width_mm: T,
    pub sensor_height_mm: T,
    pub focal_length_mm: T,
    pub image_width_px: u32,
    pub image_height_px: u32,
}

impl<T: Real> CameraModel<T> {
    pub fn new(
        sensor_width_mm: T,
        sensor_height_mm: T,
        focal_length_mm: T,
        image_width_px: u32,
        image_height_px: u32,
    ) -> Result<Self> {
        let camera = Self {
            sensor_width_mm,
            sensor_height_mm,
            focal_length_mm,
            image_width_px,
            image_height_px,
        };
        camera.check()?;
        Ok(camera)
    }

    pub fn check(&self) -> Result<()> {
        positive("sensor_width_mm", self.sensor_width_mm)?;
        positive("sensor_height_mm", self.sensor_height_mm)?;
        positive("focal_length_mm", self.focal_length_mm)?;
        if self.image_width_px == 0 {
            return Err(Error::invalid("image_width_px", "must be > 0"));
        }
        if self.image_height_px == 0 {
            return Err(Error::invalid("image_height_px", "must be > 0"));
        }
        Ok(())
    }

    /// 1-inch sensor, 12.75 x 8.5 mm, 10.6 mm lens, 5472 x 3648 px: the
    /// fixed-wing mapping drone camera used for the reference dataset.
    pub fn mapping_drone() -> Self {
        Self {
            sensor_width_mm: T::lit(12.75),
            sensor_height_mm: T::lit(8.5),
            focal_length_mm: T::lit(10.6),
            image_width_px: 5472,
            image_height_px: 3648,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlightParams<T> {
    pub altitude_m: T,
}

impl<T: Real> FlightParams<T> {
    pub fn new(altitude_m: T) -> Result<Self> {
        positive("altitude_m", altitude_m)?;
        Ok(Self { altitude_m })
    }
}

/// Ground sample distance in centimeters of ground per pixel side.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct GroundResolution<T> {
    cm_per_px: T,
}

impl<T: Real> GroundResolution<T> {
    pub fn from_cm_per_px(cm_per_px: T) -> Result<Self> {
        positive("cm_per_px", cm_per_px)?;
        Ok(Self { cm_per_px })
    }

    pub fn cm_per_px(self) -> T {
        self.cm_per_px
    }

    pub fn m_per_px(self) -> T {
        self.cm_per_px / T::lit(100.0)
    }
}

/// Linear ratio between the capture width and the width the mask was
/// produced at. Lengths scale by the factor, areas by its square.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct ResizeScale<T> {
    linear_factor: T,
}

impl<T: Real> ResizeScale<T> {
    pub fn new(linear_factor: T) -> Result<Self> {
        if !linear_factor.is_finite() || linear_factor < T::one() {
            return Err(Error::invalid(
                "resize_scale",
                format!("must be a finite ratio >= 1, got {linear_factor}"),
            ));
        }
        Ok(Self { linear_factor })
    }

    pub fn identity() -> Self {
        Self {
            linear_factor: T::one(),
        }
    }

    pub fn linear_factor(self) -> T {
        self.linear_factor
    }

    pub fn area_factor(self) -> T {
        self.linear_factor * self.linear_factor
    }
}

impl<T: Real> Default for ResizeScale<T> {
    fn default() -> Self {
        Self::identity()
    }
}

/// `GSD = W_s * h * 100 / (FL * W_I)` in cm/px.
pub fn compute_gsd<T: Real>(camera: &CameraModel<T>, flight: &FlightParams<T>) -> Result<GroundResolution<T>> {
    camera.check()?;
    positive("altitude_m", flight.altitude_m)?;
    let width = T::from_count(u64::from(camera.image_width_px));
    let cm = camera.sensor_width_mm * flight.altitude_m * T::lit(100.0) / (camera.focal_length_mm * width);
    GroundResolution::from_cm_per_px(cm)
}

/// Altitude that yields `gsd` with `camera`; inverse of [`compute_gsd`].
pub fn altitude_for_gsd<T: Real>(camera: &CameraModel<T>, gsd: GroundResolution<T>) -> Result<FlightParams<T>> {
    camera.check()?;
    let width = T::from_count(u64::from(camera.image_width_px));
    FlightParams::new(gsd.cm_per_px * camera.focal_length_mm * width / (camera.sensor_width_mm * T::lit(100.0)))
}

/// Converts a distance measured in processed-image pixels to meters on the
/// ground.
pub fn px_to_meters<T: Real>(dist_px: T, gsd: GroundResolution<T>, scale: ResizeScale<T>) -> Result<T> {
    if !dist_px.is_finite() || dist_px < T::zero() {
        return Err(Error::invalid(
            "dist_px",
            format!("must be finite and >= 0, got {dist_px}"),
        ));
    }
    Ok(dist_px * scale.linear_factor * gsd.cm_per_px / T::lit(100.0))
}

pub fn meters_to_px<T: Real>(meters: T, gsd: GroundResolution<T>, scale: ResizeScale<T>) -> Result<T> {
    if !meters.is_finite() || meters < T::zero() {
        return Err(Error::invalid(
            "meters",
            format!("must be finite and >= 0, got {meters}"),
        ));
    }
    Ok(meters * T::lit(100.0) / (scale.linear_factor * gsd.cm_per_px))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_camera(width: u32) -> CameraModel<f64> {
        CameraModel::new(12.75, 8.5, 10.6, width, 3456).unwrap()
    }

    #[test]
    fn reference_gsd() {
        let gsd = compute_gsd(&reference_camera(4608), &FlightParams::new(120.0).unwrap()).unwrap();
        assert!((gsd.cm_per_px() - 3.13).abs() <= 0.01, "{gsd:?}");
    }

    #[test]
    fn factors_cancel() {
        let camera = CameraModel::new(10.0, 10.0, 10.0, 1000, 1000).unwrap();
        let gsd = compute_gsd(&camera, &FlightParams::new(10.0).unwrap()).unwrap();
        assert_eq!(gsd.cm_per_px(), 1.0);
    }

    #[test]
    fn doubling_altitude_doubles_gsd() {
        let camera = reference_camera(4608);
        let g1 = compute_gsd(&camera, &FlightParams::new(120.0).unwrap()).unwrap();
        let g2 = compute_gsd(&camera, &FlightParams::new(240.0).unwrap()).unwrap();
        assert!((g2.cm_per_px() - 6.26).abs() <= 0.01);
        assert!((g2.cm_per_px() - 2.0 * g1.cm_per_px()).abs() <= 1e-12);
    }

    #[test]
    fn invariant_under_scaling_sensor_and_focal() {
        let a = reference_camera(4608);
        let mut b = a;
        b.sensor_width_mm = 2.0 * a.sensor_width_mm;
        b.focal_length_mm = 2.0 * a.focal_length_mm;
        let f = FlightParams::new(87.5).unwrap();
        let ga = compute_gsd(&a, &f).unwrap().cm_per_px();
        let gb = compute_gsd(&b, &f).unwrap().cm_per_px();
        assert!((ga - gb).abs() <= 1e-12 * ga);
    }

    #[test]
    fn rejects_bad_fields_by_name() {
        let err = FlightParams::new(0.0f64).unwrap_err();
        assert!(err.to_string().contains("altitude_m"));
        let err = CameraModel::new(12.75, 8.5, f64::NAN, 10, 10).unwrap_err();
        assert!(err.to_string().contains("focal_length_mm"));
        let err = CameraModel::new(-1.0, 8.5, 10.6, 10, 10).unwrap_err();
        assert!(err.to_string().contains("sensor_width_mm"));
        let err = CameraModel::new(1.0, 8.5, 10.6, 0, 10).unwrap_err();
        assert!(err.to_string().contains("image_width_px"));
        assert!(ResizeScale::new(0.5f64).is_err());
    }

    #[test]
    fn pixel_conversion() {
        let g100 = GroundResolution::from_cm_per_px(100.0).unwrap();
        let g313 = GroundResolution::from_cm_per_px(3.13).unwrap();
        let g10 = GroundResolution::from_cm_per_px(10.0).unwrap();
        let one = ResizeScale::identity();
        assert_eq!(px_to_meters(100.0, g100, one).unwrap(), 100.0);
        assert!((px_to_meters(100.0f64, g313, one).unwrap() - 3.13).abs() < 1e-12);
        let fifteen = ResizeScale::new(15.0).unwrap();
        assert!((px_to_meters(10.0f64, g10, fifteen).unwrap() - 15.0).abs() < 1e-12);
        assert!(px_to_meters(-1.0, g10, one).is_err());
    }

    #[test]
    fn meters_px_round_trip() {
        let gsd = GroundResolution::from_cm_per_px(3.1324).unwrap();
        let scale = ResizeScale::new(15.0).unwrap();
        for d in [0.0f64, 0.5, 1.0, 99.0, 1234.567, 1e6] {
            let back = meters_to_px(px_to_meters(d, gsd, scale).unwrap(), gsd, scale).unwrap();
            assert!((back - d).abs() <= 1e-9 * d.max(1.0));
        }
    }

    #[test]
    fn altitude_inverse() {
        let camera = reference_camera(4608);
        let gsd = GroundResolution::from_cm_per_px(30.0).unwrap();
        let flight = altitude_for_gsd(&camera, gsd).unwrap();
        let back = compute_gsd(&camera, &flight).unwrap();
        assert!((back.cm_per_px() - 30.0).abs() < 1e-12);
    }

    #[test]
    fn single_precision() {
        let camera = CameraModel::<f32>::new(12.75, 8.5, 10.6, 4608, 3456).unwrap();
        let gsd = compute_gsd(&camera, &FlightParams::new(120.0).unwrap()).unwrap();
        assert!((gsd.cm_per_px() - 3.13).abs() <= 0.01);
    }
}

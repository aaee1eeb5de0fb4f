//! Physical quantities and the closed-form geometry of the two paths.
//!
//! The terrestrial path is the great-circle arc between the two ground
//! points. The satellite path goes straight up to the ingress satellite,
//! crosses `hops + 1` equal chords on the altitude shell, and comes straight
//! down from the egress satellite.
//!
//! Angles are degrees at every API boundary, distances kilometers and
//! latencies milliseconds.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Degrees to radians, written as the literal `π/180` factor.
pub(crate) const DEG_TO_RAD: f64 = PI / 180.0;

pub const DEFAULT_EARTH_RADIUS_KM: f64 = 6378.0;
/// Speed of light in vacuum.
pub const DEFAULT_LIGHT_SPEED_KM_PER_S: f64 = 299_792.458;
/// Largest admissible central angle: one full great circle.
pub const MAX_THETA_DEG: f64 = 360.0;

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be finite and greater than zero",
        })
    }
}

/// Earth radius and vacuum light speed shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EarthModel {
    radius_km: f64,
    light_speed_km_per_s: f64,
}

impl EarthModel {
    pub fn new(radius_km: f64, light_speed_km_per_s: f64) -> Result<Self> {
        Ok(Self {
            radius_km: positive("earth radius (km)", radius_km)?,
            light_speed_km_per_s: positive("speed of light (km/s)", light_speed_km_per_s)?,
        })
    }

    pub fn radius_km(&self) -> f64 {
        self.radius_km
    }

    pub fn light_speed_km_per_s(&self) -> f64 {
        self.light_speed_km_per_s
    }
}

impl Default for EarthModel {
    fn default() -> Self {
        Self {
            radius_km: DEFAULT_EARTH_RADIUS_KM,
            light_speed_km_per_s: DEFAULT_LIGHT_SPEED_KM_PER_S,
        }
    }
}

/// One comparison configuration: satellite altitude, fiber refractive index
/// and the number of intermediate satellites between ingress and egress.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NetworkParams {
    altitude_km: f64,
    refractive_index: f64,
    hops: u32,
}

impl NetworkParams {
    /// Rejects `altitude_km <= 0` (the crossover ratio has no root there) and
    /// `refractive_index <= 1` (fiber would be no slower than vacuum).
    pub fn new(altitude_km: f64, refractive_index: f64, hops: u32) -> Result<Self> {
        let altitude_km = positive("altitude (km)", altitude_km)?;
        if !(refractive_index.is_finite() && refractive_index > 1.0) {
            return Err(Error::InvalidParameter {
                name: "refractive index",
                value: refractive_index,
                reason: "must be finite and greater than 1",
            });
        }
        Ok(Self {
            altitude_km,
            refractive_index,
            hops,
        })
    }

    pub fn altitude_km(&self) -> f64 {
        self.altitude_km
    }

    pub fn refractive_index(&self) -> f64 {
        self.refractive_index
    }

    pub fn hops(&self) -> u32 {
        self.hops
    }

    /// Number of laser inter-satellite links on the space path.
    pub fn link_count(&self) -> u32 {
        self.hops + 1
    }

    /// Same network with a different hop count.
    pub fn with_hops(self, hops: u32) -> Self {
        Self { hops, ..self }
    }
}

/// Central angle between the two ground points, in degrees, `0 < θ <= 360`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct AngularSpan(f64);

impl AngularSpan {
    pub fn new(theta_deg: f64) -> Result<Self> {
        if theta_deg.is_finite() && theta_deg > 0.0 && theta_deg <= MAX_THETA_DEG {
            Ok(Self(theta_deg))
        } else {
            Err(Error::InvalidParameter {
                name: "theta (degrees)",
                value: theta_deg,
                reason: "must lie in (0, 360]",
            })
        }
    }

    pub fn degrees(self) -> f64 {
        self.0
    }
}

/// Distances along both paths at one angle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PathBreakdown {
    /// Length of a single inter-satellite chord.
    pub lisl_length_km: f64,
    /// All chords between ingress and egress: `(hops + 1) * lisl_length_km`.
    pub inter_satellite_km: f64,
    /// Uplink + chords + downlink: `2h + inter_satellite_km`.
    pub end_to_end_owsn_km: f64,
    /// Ground great-circle arc.
    pub oftn_arc_km: f64,
}

pub(crate) fn arc_km(theta_deg: f64, radius_km: f64) -> f64 {
    2.0 * PI * radius_km * (theta_deg / 360.0)
}

pub(crate) fn chord_km(theta_deg: f64, altitude_km: f64, hops: u32, radius_km: f64) -> f64 {
    let links = f64::from(hops) + 1.0;
    2.0 * (radius_km + altitude_km) * ((theta_deg / (2.0 * links)) * DEG_TO_RAD).sin()
}

pub(crate) fn owsn_km(theta_deg: f64, params: &NetworkParams, radius_km: f64) -> f64 {
    let links = f64::from(params.link_count());
    2.0 * params.altitude_km
        + links * chord_km(theta_deg, params.altitude_km, params.hops, radius_km)
}

/// Great-circle arc length between the ground points.
pub fn arc_distance(theta: AngularSpan, earth: &EarthModel) -> f64 {
    arc_km(theta.degrees(), earth.radius_km)
}

/// Length of one inter-satellite link when `hops + 1` equal chords span `theta`
/// on the shell of radius `R + h`.
pub fn lisl_length(theta: AngularSpan, params: &NetworkParams, earth: &EarthModel) -> f64 {
    chord_km(
        theta.degrees(),
        params.altitude_km,
        params.hops,
        earth.radius_km,
    )
}

pub fn path_breakdown(
    theta: AngularSpan,
    params: &NetworkParams,
    earth: &EarthModel,
) -> PathBreakdown {
    let lisl_length_km = lisl_length(theta, params, earth);
    let inter_satellite_km = f64::from(params.link_count()) * lisl_length_km;
    PathBreakdown {
        lisl_length_km,
        inter_satellite_km,
        end_to_end_owsn_km: 2.0 * params.altitude_km + inter_satellite_km,
        oftn_arc_km: arc_distance(theta, earth),
    }
}

/// Fiber latency in milliseconds: arc length slowed by the refractive index.
pub fn oftn_latency(theta: AngularSpan, params: &NetworkParams, earth: &EarthModel) -> f64 {
    arc_distance(theta, earth) * params.refractive_index / earth.light_speed_km_per_s * 1e3
}

/// Satellite latency in milliseconds at vacuum light speed.
pub fn owsn_latency(theta: AngularSpan, params: &NetworkParams, earth: &EarthModel) -> f64 {
    path_breakdown(theta, params, earth).end_to_end_owsn_km / earth.light_speed_km_per_s * 1e3
}

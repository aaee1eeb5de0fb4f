//! Crossover ratio and its root.
//!
//! The crossover ratio is satellite latency over fiber latency. It diverges
//! as the angle goes to zero and decreases strictly on `(0, 360]`, so it
//! crosses 1 at most once and bisection on `[1e-6, 360]` finds that point.

use serde::Serialize;

use crate::error::{Error, Result, SolveError};
use crate::model::{self, AngularSpan, EarthModel, NetworkParams, PathBreakdown, MAX_THETA_DEG};

/// Lower bracket end. Keeps clear of the `1/θ` singularity while the ratio
/// there is still enormous for any positive altitude.
pub const BRACKET_LOW_DEG: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolverConfig {
    theta_tolerance_deg: f64,
    max_iterations: u32,
}

impl SolverConfig {
    pub fn new(theta_tolerance_deg: f64, max_iterations: u32) -> Result<Self> {
        if !(theta_tolerance_deg.is_finite() && theta_tolerance_deg > 0.0) {
            return Err(Error::InvalidParameter {
                name: "theta tolerance (degrees)",
                value: theta_tolerance_deg,
                reason: "must be finite and greater than zero",
            });
        }
        if max_iterations == 0 {
            return Err(Error::InvalidParameter {
                name: "max iterations",
                value: 0.0,
                reason: "must be at least 1",
            });
        }
        Ok(Self {
            theta_tolerance_deg,
            max_iterations,
        })
    }

    pub fn theta_tolerance_deg(&self) -> f64 {
        self.theta_tolerance_deg
    }

    pub fn max_iterations(&self) -> u32 {
        self.max_iterations
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            theta_tolerance_deg: 1e-9,
            max_iterations: 200,
        }
    }
}

/// A solved crossover point.
///
/// `residual` is `|ratio(θ_c) - 1|`. Since the root lies within half the
/// final bracket width of `θ_c`, the residual is bounded by roughly
/// `|ratio'(θ_c)| * theta_tolerance_deg / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CrossoverResult {
    pub theta_crossover_deg: f64,
    pub crossover_distance_km: f64,
    pub lisl_length_km: f64,
    pub breakdown: PathBreakdown,
    pub iterations_used: u32,
    pub residual: f64,
}

pub(crate) fn ratio_at(theta_deg: f64, params: &NetworkParams, earth: &EarthModel) -> f64 {
    let r = earth.radius_km();
    model::owsn_km(theta_deg, params, r) / (model::arc_km(theta_deg, r) * params.refractive_index())
}

/// Satellite over fiber latency at `theta`; below 1 the satellite path wins.
pub fn crossover_ratio(theta: AngularSpan, params: &NetworkParams, earth: &EarthModel) -> f64 {
    ratio_at(theta.degrees(), params, earth)
}

fn result_at(
    theta_deg: f64,
    params: &NetworkParams,
    earth: &EarthModel,
    iterations_used: u32,
) -> CrossoverResult {
    let theta = AngularSpan::new(theta_deg).expect("root lies inside the bracket");
    let breakdown = model::path_breakdown(theta, params, earth);
    CrossoverResult {
        theta_crossover_deg: theta_deg,
        crossover_distance_km: breakdown.oftn_arc_km,
        lisl_length_km: breakdown.lisl_length_km,
        breakdown,
        iterations_used,
        residual: (ratio_at(theta_deg, params, earth) - 1.0).abs(),
    }
}

fn check_domain(params: &NetworkParams, earth: &EarthModel) -> Result<f64, SolveError> {
    let ratio_at_max = ratio_at(MAX_THETA_DEG, params, earth);
    if ratio_at_max > 1.0 {
        Err(SolveError::NoCrossoverInDomain { ratio_at_max })
    } else {
        Ok(ratio_at_max)
    }
}

/// Bisects for the angle where satellite and fiber latency are equal.
///
/// The root is reported as the midpoint of the final bracket, whose width is
/// at most `config.theta_tolerance_deg`. A ratio of exactly 1 at 360 degrees
/// is returned as a root at 360.
pub fn solve_crossover(
    params: &NetworkParams,
    earth: &EarthModel,
    config: &SolverConfig,
) -> Result<CrossoverResult, SolveError> {
    if check_domain(params, earth)? == 1.0 {
        return Ok(result_at(MAX_THETA_DEG, params, earth, 0));
    }

    let (mut lo, mut hi) = (BRACKET_LOW_DEG, MAX_THETA_DEG);
    let mut iterations = 0;
    while hi - lo > config.theta_tolerance_deg {
        if iterations == config.max_iterations {
            return Err(SolveError::IterationLimitExceeded {
                iterations,
                bracket_width_deg: hi - lo,
            });
        }
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            // The bracket is down to adjacent floats and can shrink no further.
            return Err(SolveError::IterationLimitExceeded {
                iterations,
                bracket_width_deg: hi - lo,
            });
        }
        if ratio_at(mid, params, earth) > 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        iterations += 1;
    }
    Ok(result_at(lo + 0.5 * (hi - lo), params, earth, iterations))
}

/// Linear scan over `θ = k * step` returning the first grid angle whose ratio
/// is at most 1. Independent of the bisection path; meant as a test oracle.
pub fn solve_grid_oracle(params: &NetworkParams, earth: &EarthModel, step_deg: f64) -> Result<f64> {
    if !(step_deg.is_finite() && step_deg > 0.0) {
        return Err(Error::InvalidParameter {
            name: "grid step (degrees)",
            value: step_deg,
            reason: "must be finite and greater than zero",
        });
    }
    check_domain(params, earth)?;
    let steps = (MAX_THETA_DEG / step_deg).floor() as u64;
    (1..=steps)
        .map(|k| k as f64 * step_deg)
        .chain(std::iter::once(MAX_THETA_DEG))
        .find(|&theta| ratio_at(theta, params, earth) <= 1.0)
        .ok_or_else(|| {
            // Unreachable once the domain check passed, kept for totality.
            SolveError::NoCrossoverInDomain {
                ratio_at_max: ratio_at(MAX_THETA_DEG, params, earth),
            }
            .into()
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    use proptest::prelude::*;

    const R: f64 = 6378.0;

    fn params(h: f64, i: f64, n: u32) -> NetworkParams {
        NetworkParams::new(h, i, n).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs())
    }

    fn fiber(theta: f64, i: f64) -> f64 {
        2.0 * PI * R * (theta / 360.0) * i
    }

    fn chord(theta: f64, h: f64, divisor: f64) -> f64 {
        2.0 * (R + h) * ((theta / divisor) * (PI / 180.0)).sin()
    }

    // Zero, one and two hop ratios written out term by term.
    fn ratio_direct(theta: f64, h: f64, i: f64, n: u32) -> f64 {
        let numerator = match n {
            0 => 2.0 * h + chord(theta, h, 2.0),
            1 => 2.0 * h + chord(theta, h, 4.0) + chord(theta, h, 4.0),
            2 => 2.0 * h + chord(theta, h, 6.0) + chord(theta, h, 6.0) + chord(theta, h, 6.0),
            _ => unreachable!(),
        };
        numerator / fiber(theta, i)
    }

    #[test]
    fn ratio_matches_hand_evaluation() {
        // (2·550 + 2·6928·sin 10°) / (2π·6378·(20/360)·1.3)
        let f = crossover_ratio(
            AngularSpan::new(20.0).unwrap(),
            &params(550.0, 1.3, 0),
            &EarthModel::default(),
        );
        assert!((f - 1.211_393_521_973_774_6).abs() < 1e-12, "{f}");
    }

    #[test]
    fn ratio_at_full_circle_for_five_hops() {
        // (2200 + 6·2·7478·sin 30°) / (40074.155·1.1)
        let f = ratio_at(360.0, &params(1100.0, 1.1, 5), &EarthModel::default());
        assert!((f - 1.067_747_778).abs() < 1e-8, "{f}");
    }

    #[test]
    fn solves_first_and_last_table_cells() {
        let earth = EarthModel::default();
        let config = SolverConfig::default();
        let first = solve_crossover(&params(300.0, 1.4675, 0), &earth, &config).unwrap();
        assert!((first.crossover_distance_km - 1420.0).abs() < 1.0);
        assert!((first.lisl_length_km - 1483.0).abs() < 1.0);
        assert!((first.theta_crossover_deg - 12.7537).abs() < 1e-4);

        let last = solve_crossover(&params(1100.0, 1.1, 2), &earth, &config).unwrap();
        assert!((last.crossover_distance_km - 32915.0).abs() < 1.0);
        assert!((last.lisl_length_km - 11335.0).abs() < 1.0);
        assert!((last.theta_crossover_deg - 295.6825).abs() < 1e-4);

        for r in [first, last] {
            assert!(r.residual <= 1e-8);
            assert_eq!(r.crossover_distance_km, r.breakdown.oftn_arc_km);
            assert!(r.iterations_used > 0 && r.iterations_used <= 200);
        }
    }

    #[test]
    fn five_hops_at_1100_km_never_cross_over() {
        let err = solve_crossover(
            &params(1100.0, 1.1, 5),
            &EarthModel::default(),
            &SolverConfig::default(),
        )
        .unwrap_err();
        match err {
            SolveError::NoCrossoverInDomain { ratio_at_max } => {
                assert!((ratio_at_max - 1.0677).abs() < 1e-4)
            }
            other => panic!("unexpected {other:?}"),
        }
        let oracle = solve_grid_oracle(&params(1100.0, 1.1, 5), &EarthModel::default(), 1e-2);
        assert!(matches!(
            oracle,
            Err(Error::Solve(SolveError::NoCrossoverInDomain { .. }))
        ));
    }

    #[test]
    fn tiny_tolerance_hits_iteration_limit() {
        let config = SolverConfig::new(1e-300, 200).unwrap();
        let err =
            solve_crossover(&params(550.0, 1.3, 1), &EarthModel::default(), &config).unwrap_err();
        assert!(matches!(err, SolveError::IterationLimitExceeded { .. }));

        let config = SolverConfig::new(1e-9, 5).unwrap();
        let err =
            solve_crossover(&params(550.0, 1.3, 1), &EarthModel::default(), &config).unwrap_err();
        match err {
            SolveError::IterationLimitExceeded {
                iterations,
                bracket_width_deg,
            } => {
                assert_eq!(iterations, 5);
                assert!((bracket_width_deg - 360.0 / 32.0).abs() < 1e-6);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn config_rejects_bad_values() {
        assert!(SolverConfig::new(0.0, 10).is_err());
        assert!(SolverConfig::new(1e-9, 0).is_err());
        assert!(SolverConfig::new(f64::NAN, 10).is_err());
    }

    #[test]
    fn grid_oracle_agrees_with_bisection() {
        let earth = EarthModel::default();
        for p in [params(300.0, 1.4675, 0), params(550.0, 1.3, 1)] {
            let grid = solve_grid_oracle(&p, &earth, 1e-4).unwrap();
            let root = solve_crossover(&p, &earth, &SolverConfig::default()).unwrap();
            assert!((grid - root.theta_crossover_deg).abs() <= 2e-4, "{p:?}");
            assert!(grid >= root.theta_crossover_deg);
        }
        assert!(solve_grid_oracle(&params(300.0, 1.3, 0), &earth, 0.0).is_err());
    }

    #[test]
    fn bisection_is_deterministic() {
        let earth = EarthModel::default();
        let p = params(550.0, 1.1, 2);
        let a = solve_crossover(&p, &earth, &SolverConfig::default()).unwrap();
        let b = solve_crossover(&p, &earth, &SolverConfig::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.theta_crossover_deg.to_bits(),
            b.theta_crossover_deg.to_bits()
        );
    }

    proptest! {
        #[test]
        fn general_ratio_matches_direct_forms(theta in 1e-6f64..=360.0, h in 100.0f64..2000.0, i in 1.01f64..2.0, n in 0u32..=2) {
            let general = ratio_at(theta, &params(h, i, n), &EarthModel::default());
            prop_assert!(rel(general, ratio_direct(theta, h, i, n)) <= 1e-12);
        }

        #[test]
        fn ratio_is_latency_quotient(theta in 1e-6f64..=360.0, h in 100.0f64..2000.0, i in 1.01f64..2.0, n in 0u32..20) {
            let earth = EarthModel::default();
            let p = params(h, i, n);
            let t = AngularSpan::new(theta).unwrap();
            let quotient = model::owsn_latency(t, &p, &earth) / model::oftn_latency(t, &p, &earth);
            prop_assert!(rel(crossover_ratio(t, &p, &earth), quotient) <= 1e-12);
        }

        #[test]
        fn ratio_strictly_decreasing(a in 1e-3f64..360.0, b in 1e-3f64..360.0, h in 100.0f64..2000.0, i in 1.01f64..2.0, n in 0u32..20) {
            prop_assume!(b - a > 1e-6);
            let earth = EarthModel::default();
            let p = params(h, i, n);
            prop_assert!(ratio_at(a, &p, &earth) > ratio_at(b, &p, &earth));
        }

        #[test]
        fn every_root_satisfies_latency_equality(h in 100.0f64..2000.0, i in 1.05f64..2.0, n in 0u32..5) {
            let earth = EarthModel::default();
            let p = params(h, i, n);
            if let Ok(r) = solve_crossover(&p, &earth, &SolverConfig::default()) {
                let t = AngularSpan::new(r.theta_crossover_deg).unwrap();
                prop_assert!(r.residual <= 1e-8);
                prop_assert!(rel(model::owsn_latency(t, &p, &earth), model::oftn_latency(t, &p, &earth)) <= 1e-8);
            } else {
                prop_assert!(ratio_at(360.0, &p, &earth) > 1.0);
            }
        }
    }
}

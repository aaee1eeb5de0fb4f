//! Latency crossover between an optical wireless satellite network and an
//! optical fiber terrestrial network.
//!
//! Two ground points separated by a central angle θ can talk over fiber
//! along the great-circle arc, or go up to a satellite, across `N + 1` laser
//! inter-satellite links on the altitude shell, and back down. Fiber is
//! slower by its refractive index; the satellite path is longer by the up and
//! down legs. The crossover angle is where both latencies are equal, and the
//! crossover distance is the ground arc at that angle.
//!
//! ```
//! use owsn_crossover::{solve_crossover, EarthModel, NetworkParams, SolverConfig};
//!
//! let params = NetworkParams::new(550.0, 1.4675, 0).unwrap();
//! let root = solve_crossover(&params, &EarthModel::default(), &SolverConfig::default()).unwrap();
//! assert!((root.crossover_distance_km - 2820.0).abs() < 1.0);
//! ```

pub mod cli;
pub mod error;
pub mod model;
pub mod report;
pub mod solver;

pub use error::{Error, Result, SolveError};
pub use model::{
    arc_distance, lisl_length, oftn_latency, owsn_latency, path_breakdown, AngularSpan, EarthModel,
    NetworkParams, PathBreakdown,
};
pub use report::{
    reproduce_table1, serialize, sweep_hops, Cell, OutputFormat, SweepSeries, Table1Row,
    Table1Tolerance,
};
pub use solver::{
    crossover_ratio, solve_crossover, solve_grid_oracle, CrossoverResult, SolverConfig,
};

//! Crossover distance and link length against hop count for every network
//! pair of the published study, written as CSV for plotting.
//!
//! cargo run --example hop_sweep -- 10 > sweep.csv

use std::io::Write;

use owsn_crossover::report::{TABLE1_ALTITUDES_KM, TABLE1_REFRACTIVE_INDEXES};
use owsn_crossover::{serialize, sweep_hops, EarthModel, OutputFormat, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: u32 = std::env::args().nth(1).map_or(Ok(10), |s| s.parse())?;
    let earth = EarthModel::default();
    let config = SolverConfig::default();

    let mut cells = Vec::new();
    for h in TABLE1_ALTITUDES_KM {
        for i in TABLE1_REFRACTIVE_INDEXES {
            cells.extend(sweep_hops(h, i, n_max, &earth, &config)?.points);
        }
    }
    std::io::stdout().write_all(&serialize(&cells, OutputFormat::Csv)?)?;
    Ok(())
}

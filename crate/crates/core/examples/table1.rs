//! Recompute the published crossover table and show the per-cell deviation.

use owsn_crossover::report::table1_within;
use owsn_crossover::{reproduce_table1, EarthModel, SolverConfig, Table1Tolerance};

fn main() -> Result<(), owsn_crossover::Error> {
    let rows = reproduce_table1(&EarthModel::default(), &SolverConfig::default())?;
    let tolerance = Table1Tolerance::default();

    for row in &rows {
        print!("h={:>5} i={:<6}", row.altitude_km, row.refractive_index);
        for cell in &row.cells {
            match (cell.computed.result(), cell.deviation()) {
                (Some(r), Some(d)) => print!(
                    " | {:>9.4} ({:+.4}) {:>6.0} {:>6.0}",
                    r.theta_crossover_deg, d.theta_deg, r.crossover_distance_km, r.lisl_length_km
                ),
                _ => print!(" | {}", cell.computed.status()),
            }
        }
        println!();
    }
    println!(
        "all cells within tolerance: {}",
        table1_within(&rows, &tolerance)
    );
    Ok(())
}

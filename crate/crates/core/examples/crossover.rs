//! Solve the crossover point for one network pair and print the path split.
//!
//! cargo run --example crossover -- 550 1.4675 2

use owsn_crossover::{solve_crossover, EarthModel, NetworkParams, SolverConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let altitude_km: f64 = args.first().map_or(Ok(550.0), |s| s.parse())?;
    let refractive_index: f64 = args.get(1).map_or(Ok(1.4675), |s| s.parse())?;
    let hops: u32 = args.get(2).map_or(Ok(0), |s| s.parse())?;

    let params = NetworkParams::new(altitude_km, refractive_index, hops)?;
    let root = solve_crossover(&params, &EarthModel::default(), &SolverConfig::default())?;

    println!("h = {altitude_km} km, i = {refractive_index}, N = {hops}");
    println!("crossover angle     {:.4} deg", root.theta_crossover_deg);
    println!("crossover distance  {:.1} km", root.crossover_distance_km);
    println!("LISL length         {:.1} km", root.lisl_length_km);
    println!(
        "ingress to egress   {:.1} km",
        root.breakdown.inter_satellite_km
    );
    println!(
        "end to end (OWSN)   {:.1} km",
        root.breakdown.end_to_end_owsn_km
    );
    println!("bisection steps     {}", root.iterations_used);
    Ok(())
}

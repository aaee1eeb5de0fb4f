//! Satellite and fiber latency side by side as the ground distance grows.

use owsn_crossover::{
    arc_distance, crossover_ratio, oftn_latency, owsn_latency, AngularSpan, EarthModel,
    NetworkParams,
};

fn main() -> Result<(), owsn_crossover::Error> {
    let earth = EarthModel::default();
    let params = NetworkParams::new(550.0, 1.4675, 3)?;

    println!(
        "{:>8} {:>10} {:>10} {:>10} {:>8}",
        "deg", "km", "fiber ms", "sat ms", "ratio"
    );
    for theta in [5.0, 10.0, 20.0, 25.0, 30.0, 45.0, 90.0, 180.0] {
        let span = AngularSpan::new(theta)?;
        println!(
            "{:>8.1} {:>10.0} {:>10.3} {:>10.3} {:>8.4}",
            theta,
            arc_distance(span, &earth),
            oftn_latency(span, &params, &earth),
            owsn_latency(span, &params, &earth),
            crossover_ratio(span, &params, &earth),
        );
    }
    Ok(())
}

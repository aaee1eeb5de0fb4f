//! Cross-check the bisection root against a brute-force grid scan.

use owsn_crossover::{solve_crossover, solve_grid_oracle, EarthModel, NetworkParams, SolverConfig};

fn main() -> Result<(), owsn_crossover::Error> {
    let earth = EarthModel::default();
    let step = 1e-4;
    for (h, i, n) in [
        (300.0, 1.4675, 0),
        (550.0, 1.3, 1),
        (1100.0, 1.1, 2),
        (1100.0, 1.1, 3),
    ] {
        let params = NetworkParams::new(h, i, n)?;
        match solve_crossover(&params, &earth, &SolverConfig::default()) {
            Ok(root) => {
                let grid = solve_grid_oracle(&params, &earth, step)?;
                println!(
                    "h={h} i={i} N={n}: bisection {:.6} grid {:.6} diff {:.1e}",
                    root.theta_crossover_deg,
                    grid,
                    grid - root.theta_crossover_deg
                );
            }
            Err(e) => println!("h={h} i={i} N={n}: {e}"),
        }
    }
    Ok(())
}

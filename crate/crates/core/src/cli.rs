//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or invalid value, 3 no crossover within
//! a full circle, 4 published-table regression.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result, SolveError};
use crate::model::{
    self, AngularSpan, EarthModel, NetworkParams, DEFAULT_EARTH_RADIUS_KM,
    DEFAULT_LIGHT_SPEED_KM_PER_S,
};
use crate::report::{
    self, fixed, Cell, CellRecord, OutputFormat, Table1Tolerance, CELL_COLUMNS, DEGREE_DECIMALS,
    KM_DECIMALS,
};
use crate::solver::{self, SolverConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NO_CROSSOVER: i32 = 3;
pub const EXIT_TABLE_REGRESSION: i32 = 4;

const MS_DECIMALS: usize = 6;
const RATIO_DECIMALS: usize = 9;

#[derive(Debug, Parser)]
#[command(
    name = "owsn-crossover",
    version,
    about = "Crossover distance between satellite laser networks and terrestrial fiber"
)]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct CliConfig {
    /// Earth radius in kilometers.
    #[arg(long, global = true, default_value_t = DEFAULT_EARTH_RADIUS_KM, value_parser = plain_decimal)]
    earth_radius_km: f64,
    /// Vacuum speed of light in km/s.
    #[arg(long = "speed-of-light-km-s", global = true, default_value_t = DEFAULT_LIGHT_SPEED_KM_PER_S, value_parser = plain_decimal)]
    light_speed_km_per_s: f64,
    /// Bisection stops once the bracket is this narrow, in degrees.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = plain_decimal)]
    tolerance_deg: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct NetworkArgs {
    /// Satellite altitude in kilometers.
    #[arg(long, value_parser = plain_decimal)]
    altitude_km: f64,
    /// Refractive index of the fiber.
    #[arg(long, value_parser = plain_decimal)]
    refractive_index: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve the crossover angle and distance for one configuration.
    Crossover {
        #[command(flatten)]
        network: NetworkArgs,
        /// Intermediate satellites between ingress and egress.
        #[arg(long, default_value_t = 0)]
        hops: u32,
    },
    /// Recompute the published table and report deviations.
    Table1,
    /// Crossover distance and link length for hop counts 0..=max.
    Sweep {
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long)]
        max_hops: u32,
    },
    /// Evaluate both latencies at a given central angle.
    Latency {
        /// Central angle in degrees, in (0, 360].
        #[arg(long, value_parser = plain_decimal)]
        theta_deg: f64,
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long, default_value_t = 0)]
        hops: u32,
    },
}

/// Plain decimal numbers only: digits, one optional point, optional exponent.
/// Rejects thousands separators, `inf` and `nan`.
fn plain_decimal(s: &str) -> std::result::Result<f64, String> {
    let mantissa = s.split(['e', 'E']).next().unwrap_or_default();
    let digits = mantissa.trim_start_matches(['+', '-']);
    let plain = !digits.is_empty()
        && digits.chars().all(|c| c.is_ascii_digit() || c == '.')
        && digits.chars().filter(|&c| c == '.').count() <= 1
        && digits.chars().any(|c| c.is_ascii_digit());
    match s.parse::<f64>() {
        Ok(v) if plain && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a plain decimal number")),
    }
}

struct Context {
    earth: EarthModel,
    solver: SolverConfig,
    format: Format,
}

impl CliConfig {
    fn context(&self) -> Result<Context> {
        Ok(Context {
            earth: EarthModel::new(self.earth_radius_km, self.light_speed_km_per_s)?,
            solver: SolverConfig::new(
                self.tolerance_deg,
                SolverConfig::default().max_iterations(),
            )?,
            format: self.format,
        })
    }
}

/// Key/value view shared by the text and CSV renderings.
trait Fields {
    fn fields(&self) -> Vec<(&'static str, String)>;
}

fn num(v: f64, decimals: usize) -> String {
    format!("{v:.decimals$}")
}

fn opt(v: Option<f64>, decimals: usize) -> String {
    v.map_or_else(|| "-".to_owned(), |v| num(v, decimals))
}

impl Fields for CellRecord {
    fn fields(&self) -> Vec<(&'static str, String)> {
        let values = [
            num(self.h_km, KM_DECIMALS),
            self.i.to_string(),
            self.n_hops.to_string(),
            opt(self.theta_c_deg, DEGREE_DECIMALS),
            opt(self.d_crossover_km, KM_DECIMALS),
            opt(self.d_lisl_km, KM_DECIMALS),
            opt(self.inter_satellite_km, KM_DECIMALS),
            opt(self.end_to_end_owsn_km, KM_DECIMALS),
            self.status.clone(),
        ];
        CELL_COLUMNS.into_iter().zip(values).collect()
    }
}

#[derive(Debug, Serialize)]
struct CrossoverReport {
    #[serde(flatten)]
    cell: CellRecord,
    oftn_latency_ms: f64,
    owsn_latency_ms: f64,
}

impl Fields for CrossoverReport {
    fn fields(&self) -> Vec<(&'static str, String)> {
        let mut fields = self.cell.fields();
        fields.push(("oftn_latency_ms", num(self.oftn_latency_ms, MS_DECIMALS)));
        fields.push(("owsn_latency_ms", num(self.owsn_latency_ms, MS_DECIMALS)));
        fields
    }
}

#[derive(Debug, Serialize)]
struct LatencyReport {
    theta_deg: f64,
    h_km: f64,
    i: f64,
    n_hops: u32,
    oftn_latency_ms: f64,
    owsn_latency_ms: f64,
    crossover_ratio: f64,
    d_lisl_km: f64,
    inter_satellite_km: f64,
    end_to_end_owsn_km: f64,
    oftn_arc_km: f64,
}

impl Fields for LatencyReport {
    fn fields(&self) -> Vec<(&'static str, String)> {
        vec![
            ("theta_deg", num(self.theta_deg, DEGREE_DECIMALS)),
            ("h_km", num(self.h_km, KM_DECIMALS)),
            ("i", self.i.to_string()),
            ("n_hops", self.n_hops.to_string()),
            ("oftn_latency_ms", num(self.oftn_latency_ms, MS_DECIMALS)),
            ("owsn_latency_ms", num(self.owsn_latency_ms, MS_DECIMALS)),
            ("crossover_ratio", num(self.crossover_ratio, RATIO_DECIMALS)),
            ("d_lisl_km", num(self.d_lisl_km, KM_DECIMALS)),
            (
                "inter_satellite_km",
                num(self.inter_satellite_km, KM_DECIMALS),
            ),
            (
                "end_to_end_owsn_km",
                num(self.end_to_end_owsn_km, KM_DECIMALS),
            ),
            ("oftn_arc_km", num(self.oftn_arc_km, KM_DECIMALS)),
        ]
    }
}

fn render_single<T: Fields + Serialize>(report: &T, format: Format) -> Result<Vec<u8>> {
    let fields = report.fields();
    match format {
        Format::Text => {
            let mut text = String::new();
            for (key, value) in fields {
                text.push_str(&format!("{key:<20} {value}\n"));
            }
            Ok(text.into_bytes())
        }
        Format::Csv => {
            let header: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(&header)?;
            writer.write_record(fields.iter().map(|(_, v)| v))?;
            writer.into_inner().map_err(|e| Error::Io(e.into_error()))
        }
        Format::Json => report::write_json(report),
    }
}

enum Outcome {
    Done(Vec<u8>),
    NoCrossover(String),
    TableRegression(Vec<u8>),
}

fn crossover(ctx: &Context, network: &NetworkArgs, hops: u32) -> Result<Outcome> {
    let params = NetworkParams::new(network.altitude_km, network.refractive_index, hops)?;
    let cell = Cell::solve(params, &ctx.earth, &ctx.solver);
    let result = match cell.outcome {
        Ok(r) => r,
        Err(e @ SolveError::NoCrossoverInDomain { .. }) => {
            return Ok(Outcome::NoCrossover(e.to_string()))
        }
        Err(e) => return Err(e.into()),
    };
    let theta = AngularSpan::new(result.theta_crossover_deg)?;
    let report = CrossoverReport {
        cell: CellRecord::from(&cell),
        oftn_latency_ms: fixed(model::oftn_latency(theta, &params, &ctx.earth), MS_DECIMALS),
        owsn_latency_ms: fixed(model::owsn_latency(theta, &params, &ctx.earth), MS_DECIMALS),
    };
    Ok(Outcome::Done(render_single(&report, ctx.format)?))
}

fn latency(ctx: &Context, theta_deg: f64, network: &NetworkArgs, hops: u32) -> Result<Outcome> {
    let theta = AngularSpan::new(theta_deg)?;
    let params = NetworkParams::new(network.altitude_km, network.refractive_index, hops)?;
    let b = model::path_breakdown(theta, &params, &ctx.earth);
    let report = LatencyReport {
        theta_deg: fixed(theta_deg, DEGREE_DECIMALS),
        h_km: fixed(params.altitude_km(), KM_DECIMALS),
        i: params.refractive_index(),
        n_hops: hops,
        oftn_latency_ms: fixed(model::oftn_latency(theta, &params, &ctx.earth), MS_DECIMALS),
        owsn_latency_ms: fixed(model::owsn_latency(theta, &params, &ctx.earth), MS_DECIMALS),
        crossover_ratio: fixed(
            solver::crossover_ratio(theta, &params, &ctx.earth),
            RATIO_DECIMALS,
        ),
        d_lisl_km: fixed(b.lisl_length_km, KM_DECIMALS),
        inter_satellite_km: fixed(b.inter_satellite_km, KM_DECIMALS),
        end_to_end_owsn_km: fixed(b.end_to_end_owsn_km, KM_DECIMALS),
        oftn_arc_km: fixed(b.oftn_arc_km, KM_DECIMALS),
    };
    Ok(Outcome::Done(render_single(&report, ctx.format)?))
}

fn sweep(ctx: &Context, network: &NetworkArgs, max_hops: u32) -> Result<Outcome> {
    let series = report::sweep_hops(
        network.altitude_km,
        network.refractive_index,
        max_hops,
        &ctx.earth,
        &ctx.solver,
    )?;
    let bytes = match ctx.format {
        Format::Csv => report::serialize(&series.points, OutputFormat::Csv)?,
        Format::Json => report::serialize(&series.points, OutputFormat::Json)?,
        Format::Text => {
            let mut text = format!(
                "h = {} km, i = {}\n{:>6} {:>12} {:>16} {:>12}  status\n",
                series.altitude_km,
                series.refractive_index,
                "N",
                "theta_c_deg",
                "d_crossover_km",
                "d_lisl_km"
            );
            for cell in &series.points {
                let r = CellRecord::from(cell);
                text.push_str(&format!(
                    "{:>6} {:>12} {:>16} {:>12}  {}\n",
                    r.n_hops,
                    opt(r.theta_c_deg, DEGREE_DECIMALS),
                    opt(r.d_crossover_km, KM_DECIMALS),
                    opt(r.d_lisl_km, KM_DECIMALS),
                    r.status
                ));
            }
            text.into_bytes()
        }
    };
    Ok(Outcome::Done(bytes))
}

fn table1(ctx: &Context) -> Result<Outcome> {
    let tolerance = Table1Tolerance::default();
    let rows = report::reproduce_table1(&ctx.earth, &ctx.solver)?;
    let records = report::deviation_records(&rows, &tolerance);
    let passed = records.iter().filter(|r| r.within_tolerance).count();
    let bytes = match ctx.format {
        Format::Csv => report::serialize_deviations(&records, OutputFormat::Csv)?,
        Format::Json => report::serialize_deviations(&records, OutputFormat::Json)?,
        Format::Text => {
            let mut text = format!(
                "{:>6} {:>7} {:>2} | {:>9} {:>9} {:>8} | {:>10} {:>6} {:>7} | {:>10} {:>6} {:>7} | ok\n",
                "h_km", "i", "N", "theta_c", "published", "dev", "d_c_km", "pub", "dev", "d_l_km", "pub", "dev"
            );
            for r in &records {
                text.push_str(&format!(
                    "{:>6} {:>7} {:>2} | {:>9} {:>9.4} {:>8} | {:>10} {:>6} {:>7} | {:>10} {:>6} {:>7} | {}\n",
                    r.h_km,
                    r.i,
                    r.n_hops,
                    opt(r.theta_c_deg, DEGREE_DECIMALS),
                    r.expected_theta_c_deg,
                    opt(r.dev_theta_c_deg, DEGREE_DECIMALS),
                    opt(r.d_c_km, KM_DECIMALS),
                    r.expected_d_c_km,
                    opt(r.dev_d_c_km, KM_DECIMALS),
                    opt(r.d_l_km, KM_DECIMALS),
                    r.expected_d_l_km,
                    opt(r.dev_d_l_km, KM_DECIMALS),
                    if r.within_tolerance { "yes" } else { "NO" }
                ));
            }
            text.push_str(&format!(
                "{passed}/{} cells within tolerance (theta {} deg, distance {} km)\n",
                records.len(),
                tolerance.theta_deg,
                tolerance.distance_km
            ));
            text.into_bytes()
        }
    };
    if passed == records.len() {
        Ok(Outcome::Done(bytes))
    } else {
        Ok(Outcome::TableRegression(bytes))
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let ctx = cli.config.context()?;
    match &cli.command {
        Command::Crossover { network, hops } => crossover(&ctx, network, *hops),
        Command::Table1 => table1(&ctx),
        Command::Sweep { network, max_hops } => sweep(&ctx, network, *max_hops),
        Command::Latency {
            theta_deg,
            network,
            hops,
        } => latency(&ctx, *theta_deg, network, *hops),
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (code, bytes) = match dispatch(&cli) {
        Ok(Outcome::Done(bytes)) => (EXIT_OK, bytes),
        Ok(Outcome::TableRegression(bytes)) => {
            let _ = writeln!(
                err,
                "error: published table not reproduced within tolerance"
            );
            (EXIT_TABLE_REGRESSION, bytes)
        }
        Ok(Outcome::NoCrossover(message)) => {
            let _ = writeln!(err, "error: {message}");
            (EXIT_NO_CROSSOVER, Vec::new())
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (EXIT_USAGE, Vec::new())
        }
    };
    if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
        return EXIT_USAGE;
    }
    code
}

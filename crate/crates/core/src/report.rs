//! Table reproduction, hop sweeps and CSV/JSON output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, SolveError};
use crate::model::{EarthModel, NetworkParams};
use crate::solver::{self, CrossoverResult, SolverConfig};

/// Published crossover table, one record per `(h, i, N)` cell.
pub const TABLE1_FIXTURE: &str = include_str!("../fixtures/table1_expected.csv");

/// Satellite altitudes of the published table, in row order.
pub const TABLE1_ALTITUDES_KM: [f64; 3] = [300.0, 550.0, 1100.0];
/// Fiber refractive indexes of the published table, in row order.
pub const TABLE1_REFRACTIVE_INDEXES: [f64; 3] = [1.4675, 1.3, 1.1];
pub const TABLE1_HOPS: [u32; 3] = [0, 1, 2];

pub const DEGREE_DECIMALS: usize = 4;
pub const KM_DECIMALS: usize = 3;

/// One solve at one configuration, successful or not.
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub params: NetworkParams,
    pub outcome: Result<CrossoverResult, SolveError>,
}

impl Cell {
    pub fn solve(params: NetworkParams, earth: &EarthModel, config: &SolverConfig) -> Self {
        Self {
            params,
            outcome: solver::solve_crossover(&params, earth, config),
        }
    }

    pub fn status(&self) -> &'static str {
        match &self.outcome {
            Ok(_) => "ok",
            Err(SolveError::NoCrossoverInDomain { .. }) => "no_crossover",
            Err(SolveError::IterationLimitExceeded { .. }) => "iteration_limit",
        }
    }

    pub fn result(&self) -> Option<&CrossoverResult> {
        self.outcome.as_ref().ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize, Serialize)]
pub struct ExpectedCell {
    pub h_km: f64,
    pub i: f64,
    pub n_hops: u32,
    pub theta_c_deg: f64,
    pub d_c_km: f64,
    pub d_l_km: f64,
}

pub fn expected_table1() -> Result<Vec<ExpectedCell>> {
    let cells = csv::Reader::from_reader(TABLE1_FIXTURE.as_bytes())
        .deserialize()
        .collect::<std::result::Result<Vec<ExpectedCell>, _>>()?;
    if cells.len() != 27 {
        return Err(Error::Fixture(format!(
            "expected 27 cells, found {}",
            cells.len()
        )));
    }
    Ok(cells)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Table1Tolerance {
    pub theta_deg: f64,
    pub distance_km: f64,
}

impl Default for Table1Tolerance {
    fn default() -> Self {
        Self {
            theta_deg: 1e-3,
            distance_km: 1.0,
        }
    }
}

/// Computed minus published.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Deviation {
    pub theta_deg: f64,
    pub crossover_km: f64,
    pub lisl_km: f64,
}

impl Deviation {
    pub fn within(&self, tolerance: &Table1Tolerance) -> bool {
        self.theta_deg.abs() <= tolerance.theta_deg
            && self.crossover_km.abs() <= tolerance.distance_km
            && self.lisl_km.abs() <= tolerance.distance_km
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Cell {
    pub expected: ExpectedCell,
    pub computed: Cell,
}

impl Table1Cell {
    pub fn deviation(&self) -> Option<Deviation> {
        self.computed.result().map(|r| Deviation {
            theta_deg: r.theta_crossover_deg - self.expected.theta_c_deg,
            crossover_km: r.crossover_distance_km - self.expected.d_c_km,
            lisl_km: r.lisl_length_km - self.expected.d_l_km,
        })
    }

    pub fn within(&self, tolerance: &Table1Tolerance) -> bool {
        self.deviation().is_some_and(|d| d.within(tolerance))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table1Row {
    pub altitude_km: f64,
    pub refractive_index: f64,
    /// Cells for zero, one and two hops.
    pub cells: Vec<Table1Cell>,
}

/// Solves every published configuration and pairs it with the published values.
///
/// Rows are altitude-major (300, 550, 1100 km) with the refractive index
/// descending inside each altitude, matching the published layout.
pub fn reproduce_table1(earth: &EarthModel, config: &SolverConfig) -> Result<Vec<Table1Row>> {
    let expected = expected_table1()?;
    let mut rows = Vec::with_capacity(9);
    for &altitude_km in &TABLE1_ALTITUDES_KM {
        for &refractive_index in &TABLE1_REFRACTIVE_INDEXES {
            let mut cells = Vec::with_capacity(3);
            for &hops in &TABLE1_HOPS {
                let expected = *expected
                    .iter()
                    .find(|e| e.h_km == altitude_km && e.i == refractive_index && e.n_hops == hops)
                    .ok_or_else(|| {
                        Error::Fixture(format!(
                            "missing cell h={altitude_km} i={refractive_index} N={hops}"
                        ))
                    })?;
                let params = NetworkParams::new(altitude_km, refractive_index, hops)?;
                cells.push(Table1Cell {
                    expected,
                    computed: Cell::solve(params, earth, config),
                });
            }
            rows.push(Table1Row {
                altitude_km,
                refractive_index,
                cells,
            });
        }
    }
    Ok(rows)
}

pub fn table1_within(rows: &[Table1Row], tolerance: &Table1Tolerance) -> bool {
    rows.iter()
        .flat_map(|row| &row.cells)
        .all(|cell| cell.within(tolerance))
}

/// Crossover distance and link length against hop count for one network pair.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub altitude_km: f64,
    pub refractive_index: f64,
    /// One cell per hop count `0..=n_max`, in order.
    pub points: Vec<Cell>,
}

impl SweepSeries {
    pub fn crossover_distances_km(&self) -> Vec<Option<f64>> {
        self.points
            .iter()
            .map(|c| c.result().map(|r| r.crossover_distance_km))
            .collect()
    }

    pub fn lisl_lengths_km(&self) -> Vec<Option<f64>> {
        self.points
            .iter()
            .map(|c| c.result().map(|r| r.lisl_length_km))
            .collect()
    }
}

/// Solves `N = 0..=n_max`. Cells without a crossover stay in the series with
/// their status rather than being dropped.
pub fn sweep_hops(
    altitude_km: f64,
    refractive_index: f64,
    n_max: u32,
    earth: &EarthModel,
    config: &SolverConfig,
) -> Result<SweepSeries> {
    let base = NetworkParams::new(altitude_km, refractive_index, 0)?;
    let points = (0..=n_max)
        .map(|hops| Cell::solve(base.with_hops(hops), earth, config))
        .collect();
    Ok(SweepSeries {
        altitude_km,
        refractive_index,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            other => Err(Error::UnsupportedFormat(other.to_owned())),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

/// Rounds through the decimal text so JSON and CSV carry the same value.
pub(crate) fn fixed(value: f64, decimals: usize) -> f64 {
    format!("{value:.decimals$}")
        .parse()
        .expect("formatted float parses")
}

/// Flat output schema shared by CSV and JSON. Numbers are already rounded to
/// their display precision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub h_km: f64,
    pub i: f64,
    pub n_hops: u32,
    pub theta_c_deg: Option<f64>,
    pub d_crossover_km: Option<f64>,
    pub d_lisl_km: Option<f64>,
    pub inter_satellite_km: Option<f64>,
    pub end_to_end_owsn_km: Option<f64>,
    pub status: String,
}

pub const CELL_COLUMNS: [&str; 9] = [
    "h_km",
    "i",
    "n_hops",
    "theta_c_deg",
    "d_crossover_km",
    "d_lisl_km",
    "inter_satellite_km",
    "end_to_end_owsn_km",
    "status",
];

impl From<&Cell> for CellRecord {
    fn from(cell: &Cell) -> Self {
        let r = cell.result();
        let km = |f: fn(&CrossoverResult) -> f64| r.map(|r| fixed(f(r), KM_DECIMALS));
        Self {
            h_km: fixed(cell.params.altitude_km(), KM_DECIMALS),
            i: cell.params.refractive_index(),
            n_hops: cell.params.hops(),
            theta_c_deg: r.map(|r| fixed(r.theta_crossover_deg, DEGREE_DECIMALS)),
            d_crossover_km: km(|r| r.crossover_distance_km),
            d_lisl_km: km(|r| r.lisl_length_km),
            inter_satellite_km: km(|r| r.breakdown.inter_satellite_km),
            end_to_end_owsn_km: km(|r| r.breakdown.end_to_end_owsn_km),
            status: cell.status().to_owned(),
        }
    }
}

fn opt(value: Option<f64>, decimals: usize) -> String {
    value.map_or_else(String::new, |v| format!("{v:.decimals$}"))
}

impl CellRecord {
    fn csv_fields(&self) -> [String; 9] {
        [
            format!("{:.KM_DECIMALS$}", self.h_km),
            self.i.to_string(),
            self.n_hops.to_string(),
            opt(self.theta_c_deg, DEGREE_DECIMALS),
            opt(self.d_crossover_km, KM_DECIMALS),
            opt(self.d_lisl_km, KM_DECIMALS),
            opt(self.inter_satellite_km, KM_DECIMALS),
            opt(self.end_to_end_owsn_km, KM_DECIMALS),
            self.status.clone(),
        ]
    }
}

pub(crate) fn write_csv<const W: usize>(
    header: [&str; W],
    rows: impl IntoIterator<Item = [String; W]>,
) -> Result<Vec<u8>> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(&row)?;
    }
    writer.into_inner().map_err(|e| Error::Io(e.into_error()))
}

pub(crate) fn write_json<T: Serialize + ?Sized>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// One record per cell, CSV with a header row or a JSON array of objects.
pub fn serialize<'a>(
    cells: impl IntoIterator<Item = &'a Cell>,
    format: OutputFormat,
) -> Result<Vec<u8>> {
    let records: Vec<CellRecord> = cells.into_iter().map(CellRecord::from).collect();
    match format {
        OutputFormat::Csv => write_csv(CELL_COLUMNS, records.iter().map(CellRecord::csv_fields)),
        OutputFormat::Json => write_json(&records),
    }
}

/// Table comparison schema: computed, published and deviation per quantity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationRecord {
    pub h_km: f64,
    pub i: f64,
    pub n_hops: u32,
    pub status: String,
    pub theta_c_deg: Option<f64>,
    pub expected_theta_c_deg: f64,
    pub dev_theta_c_deg: Option<f64>,
    pub d_c_km: Option<f64>,
    pub expected_d_c_km: f64,
    pub dev_d_c_km: Option<f64>,
    pub d_l_km: Option<f64>,
    pub expected_d_l_km: f64,
    pub dev_d_l_km: Option<f64>,
    pub within_tolerance: bool,
}

pub const DEVIATION_COLUMNS: [&str; 14] = [
    "h_km",
    "i",
    "n_hops",
    "status",
    "theta_c_deg",
    "expected_theta_c_deg",
    "dev_theta_c_deg",
    "d_c_km",
    "expected_d_c_km",
    "dev_d_c_km",
    "d_l_km",
    "expected_d_l_km",
    "dev_d_l_km",
    "within_tolerance",
];

impl DeviationRecord {
    pub fn new(cell: &Table1Cell, tolerance: &Table1Tolerance) -> Self {
        let r = cell.computed.result();
        let d = cell.deviation();
        let e = &cell.expected;
        Self {
            h_km: e.h_km,
            i: e.i,
            n_hops: e.n_hops,
            status: cell.computed.status().to_owned(),
            theta_c_deg: r.map(|r| fixed(r.theta_crossover_deg, DEGREE_DECIMALS)),
            expected_theta_c_deg: e.theta_c_deg,
            dev_theta_c_deg: d.map(|d| fixed(d.theta_deg, DEGREE_DECIMALS)),
            d_c_km: r.map(|r| fixed(r.crossover_distance_km, KM_DECIMALS)),
            expected_d_c_km: e.d_c_km,
            dev_d_c_km: d.map(|d| fixed(d.crossover_km, KM_DECIMALS)),
            d_l_km: r.map(|r| fixed(r.lisl_length_km, KM_DECIMALS)),
            expected_d_l_km: e.d_l_km,
            dev_d_l_km: d.map(|d| fixed(d.lisl_km, KM_DECIMALS)),
            within_tolerance: cell.within(tolerance),
        }
    }

    fn csv_fields(&self) -> [String; 14] {
        [
            self.h_km.to_string(),
            self.i.to_string(),
            self.n_hops.to_string(),
            self.status.clone(),
            opt(self.theta_c_deg, DEGREE_DECIMALS),
            format!("{:.DEGREE_DECIMALS$}", self.expected_theta_c_deg),
            opt(self.dev_theta_c_deg, DEGREE_DECIMALS),
            opt(self.d_c_km, KM_DECIMALS),
            self.expected_d_c_km.to_string(),
            opt(self.dev_d_c_km, KM_DECIMALS),
            opt(self.d_l_km, KM_DECIMALS),
            self.expected_d_l_km.to_string(),
            opt(self.dev_d_l_km, KM_DECIMALS),
            self.within_tolerance.to_string(),
        ]
    }
}

pub fn deviation_records(rows: &[Table1Row], tolerance: &Table1Tolerance) -> Vec<DeviationRecord> {
    rows.iter()
        .flat_map(|row| &row.cells)
        .map(|cell| DeviationRecord::new(cell, tolerance))
        .collect()
}

pub fn serialize_deviations(records: &[DeviationRecord], format: OutputFormat) -> Result<Vec<u8>> {
    match format {
        OutputFormat::Csv => write_csv(
            DEVIATION_COLUMNS,
            records.iter().map(DeviationRecord::csv_fields),
        ),
        OutputFormat::Json => write_json(records),
    }
}

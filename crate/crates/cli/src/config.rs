//! Run configuration: a preset document plus command-specific sections.
//!
//! ```json
//! {
//!   "preset": "torus", "R": 2.0, "r": 1.0, "fibration": "parallel", "grid": {"n": 256},
//!   "simulation": {"dt": 1e-4, "t_final": 0.1, "record_every": 100, "rhs_mode": "closed"},
//!   "tolerances": {"geodesic": 1e-10, "constancy": 1e-8},
//!   "out": "runs/torus",
//!   "snapshots": true
//! }
//! ```
//!
//! Everything except the last four keys is the preset itself.

use std::path::PathBuf;

use serde_json::{Map, Value};
use vortex_sheet::dynamics::SimConfig;
use vortex_sheet::sheet::PresetSpec;
use vortex_sheet::stationarity::StationarityTolerances;
use vortex_sheet::{Error, Result};

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub preset: PresetSpec,
    pub simulation: SimConfig,
    pub tolerances: StationarityTolerances,
    pub out: Option<PathBuf>,
    pub snapshots: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            preset: PresetSpec::torus(2.0, 1.0, 1.0, Default::default(), 128),
            simulation: SimConfig::default(),
            tolerances: StationarityTolerances::default(),
            out: None,
            snapshots: false,
        }
    }
}

fn section<T: serde::de::DeserializeOwned>(map: &mut Map<String, Value>, key: &str) -> Result<Option<T>> {
    map.remove(key)
        .map(|v| serde_json::from_value(v).map_err(|e| Error::Config(format!("\"{key}\": {e}"))))
        .transpose()
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        let Value::Object(mut map) = value else {
            return Err(Error::Config("configuration must be a JSON object".into()));
        };
        let simulation = section(&mut map, "simulation")?.unwrap_or_default();
        let tolerances = section(&mut map, "tolerances")?.unwrap_or_default();
        let out = section::<PathBuf>(&mut map, "out")?;
        let snapshots = section(&mut map, "snapshots")?.unwrap_or(false);
        let preset = serde_json::from_value(Value::Object(map)).map_err(|e| Error::Config(e.to_string()))?;
        Ok(Self {
            preset,
            simulation,
            tolerances,
            out,
            snapshots,
        })
    }
}

//! JSON state documents.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};
use slicckit::{StateError, ThreeQubitPureState};

use crate::CliError;

/// One amplitude: a bare real number or a `[re, im]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Pair([f64; 2]),
}

impl Amplitude {
    pub fn pair(self) -> [f64; 2] {
        match self {
            Amplitude::Real(x) => [x, 0.0],
            Amplitude::Pair(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub amplitudes: Vec<Amplitude>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateDocument {
    pub fn from_state(state: &ThreeQubitPureState) -> Self {
        StateDocument {
            amplitudes: state
                .amplitudes()
                .iter()
                .map(|z| Amplitude::Pair([z.re, z.im]))
                .collect(),
            label: state.label().map(str::to_string),
        }
    }

    pub fn to_state(&self) -> Result<ThreeQubitPureState, CliError> {
        let pairs: Vec<[f64; 2]> = self.amplitudes.iter().map(|a| a.pair()).collect();
        let state = slicckit::parse_state(&pairs).map_err(state_error)?;
        Ok(match &self.label {
            Some(l) => state.with_label(l.clone()),
            None => state,
        })
    }
}

/// All-zero input is a domain error; every other parse failure is an input error.
pub fn state_error(e: StateError) -> CliError {
    match e {
        StateError::AllZero => CliError::Domain(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

pub fn parse_document(text: &str) -> Result<ThreeQubitPureState, CliError> {
    let doc: StateDocument =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("malformed state document: {e}")))?;
    doc.to_state()
}

/// Reads `-` (stdin), inline JSON (anything starting with `{`), or a file path.
pub fn read_source(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    if arg.trim_start().starts_with('{') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError::Input(format!("{arg}: {e}")))
}

pub fn load_state(arg: &str) -> Result<ThreeQubitPureState, CliError> {
    parse_document(&read_source(arg)?)
}

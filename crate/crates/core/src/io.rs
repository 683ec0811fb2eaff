//! State input schema and stable number formatting.
//!
//! A state is given as `{"p": [p1, p2, p3, p4]}` or `{"t": [t1, t2, t3]}`;
//! exactly one of the two keys must be present.

use serde::Deserialize;

use crate::bdstate::{tvec_to_probs, BDState, TVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    p: Option<[f64; 4]>,
    t: Option<[f64; 3]>,
}

/// A syntactically valid state description, not yet checked for validity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateInput {
    Probs([f64; 4]),
    Correlations([f64; 3]),
}

impl StateInput {
    /// Parses the JSON schema. Shape problems are [`Error::Parse`].
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawState = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match (raw.p, raw.t) {
            (Some(p), None) => Ok(StateInput::Probs(p)),
            (None, Some(t)) => Ok(StateInput::Correlations(t)),
            (Some(_), Some(_)) => Err(Error::Parse("give exactly one of \"p\" or \"t\", not both".into())),
            (None, None) => Err(Error::Parse("missing \"p\" or \"t\"".into())),
        }
    }

    /// Validates the description as a Bell-diagonal state.
    pub fn to_state(&self) -> Result<BDState> {
        match *self {
            StateInput::Probs(p) => BDState::from_probs(p),
            StateInput::Correlations([t1, t2, t3]) => tvec_to_probs(&TVector::new(t1, t2, t3)),
        }
    }
}

/// Parses and validates a state in one step.
pub fn parse_state(text: &str) -> Result<BDState> {
    StateInput::parse(text)?.to_state()
}

/// Rounds to 15 significant digits. Non-finite values pass through.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    format!("{x:.14e}").parse().expect("formatted float parses")
}

/// 15 significant digits, printed as the shortest decimal that round-trips.
pub fn format_sig15(x: f64) -> String {
    let r = round_sig15(x);
    if r.is_nan() {
        "nan".into()
    } else if r.is_infinite() {
        if r > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{r}")
    }
}

//! State files: sparse JSON amplitude lists over the Slater basis.
//!
//! ```json
//! {"d": 4, "N": 2, "amplitudes": [{"modes": [0, 3], "re": 0.70710678, "im": 0.0}]}
//! ```
//!
//! Unlisted basis states have amplitude zero. The loader renormalizes when
//! the norm deviates from 1 by at most 1e-6 and rejects otherwise.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::comb::{binomial, rank_subset, unrank_subset};
use crate::error::{Error, Result};
use crate::fock::FermionState;

pub const NORM_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub modes: Vec<usize>,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StateFile {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub amplitudes: Vec<AmplitudeEntry>,
    /// Seed used to generate the file, when it was drawn randomly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl StateFile {
    pub fn from_state(state: &FermionState, seed: Option<u64>) -> Self {
        let mut amplitudes = Vec::new();
        for rank in 0..state.dim() {
            let amp = state.amplitudes()[rank];
            if amp.norm() > 0.0 {
                let modes = unrank_subset(rank, state.d(), state.n()).expect("rank in range");
                amplitudes.push(AmplitudeEntry {
                    modes,
                    re: amp.re,
                    im: amp.im,
                });
            }
        }
        Self {
            d: state.d(),
            n: state.n(),
            amplitudes,
            seed,
        }
    }

    /// Dense amplitude assembly plus the norm found in the file.
    pub fn into_state(self) -> Result<(FermionState, f64)> {
        if self.n == 0 || self.n > self.d {
            return Err(Error::MalformedFile(format!(
                "need 1 <= N <= d, got N = {}, d = {}",
                self.n, self.d
            )));
        }
        let dim = binomial(self.d, self.n);
        let mut dense = vec![Complex64::ZERO; dim];
        let mut seen = vec![false; dim];
        for entry in &self.amplitudes {
            if entry.modes.len() != self.n {
                return Err(Error::MalformedFile(format!(
                    "entry {:?} lists {} modes, N = {}",
                    entry.modes,
                    entry.modes.len(),
                    self.n
                )));
            }
            let rank = rank_subset(&entry.modes, self.d)
                .map_err(|e| Error::MalformedFile(e.to_string()))?;
            if seen[rank] {
                return Err(Error::MalformedFile(format!(
                    "duplicate basis state {:?}",
                    entry.modes
                )));
            }
            seen[rank] = true;
            dense[rank] = Complex64::new(entry.re, entry.im);
        }
        let norm = dense.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let deviation = (norm - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::NormDeviation { norm, deviation });
        }
        let state = FermionState::from_amplitudes(self.d, self.n, dense)?;
        Ok((state, norm))
    }
}

/// Load a state file; returns the (renormalized) state and the raw norm.
pub fn load_state(path: &Path) -> Result<(FermionState, f64)> {
    let text = std::fs::read_to_string(path)?;
    let file: StateFile =
        serde_json::from_str(&text).map_err(|e| Error::MalformedFile(e.to_string()))?;
    file.into_state()
}

/// Write a state file with sparse amplitudes, pretty-printed.
pub fn save_state(state: &FermionState, seed: Option<u64>, path: &Path) -> Result<()> {
    let file = StateFile::from_state(state, seed);
    let text = serde_json::to_string_pretty(&file).map_err(|e| Error::Io(e.to_string()))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::reference_state;
    use approx::assert_abs_diff_eq;

    #[test]
    fn round_trip_reference_state() {
        let dir = std::env::temp_dir().join("fermitangle-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("non-slater-AB.json");
        let state = reference_state("non-slater-AB").unwrap();
        save_state(&state, None, &path).unwrap();
        let (loaded, norm) = load_state(&path).unwrap();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
        for i in 0..state.dim() {
            assert_abs_diff_eq!(
                (loaded.amplitudes()[i] - state.amplitudes()[i]).norm(),
                0.0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn loader_renormalizes_small_deviation() {
        let text = r#"{"d": 4, "N": 2,
            "amplitudes": [{"modes": [0, 3], "re": 0.70710678, "im": 0.0},
                           {"modes": [1, 2], "re": 0.70710678, "im": 0.0}]}"#;
        let file: StateFile = serde_json::from_str(text).unwrap();
        let (state, norm) = file.into_state().unwrap();
        assert!((norm - 1.0).abs() < 1e-6);
        assert_abs_diff_eq!(state.amplitudes().norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn loader_rejects_bad_norm() {
        let text = r#"{"d": 4, "N": 2, "amplitudes": [{"modes": [0, 3], "re": 0.9, "im": 0.0}]}"#;
        let file: StateFile = serde_json::from_str(text).unwrap();
        assert!(matches!(
            file.into_state(),
            Err(Error::NormDeviation { .. })
        ));
    }

    #[test]
    fn loader_rejects_malformed_entries() {
        for text in [
            r#"{"d": 4, "N": 2, "amplitudes": [{"modes": [3, 0], "re": 1.0, "im": 0.0}]}"#,
            r#"{"d": 4, "N": 2, "amplitudes": [{"modes": [0, 4], "re": 1.0, "im": 0.0}]}"#,
            r#"{"d": 4, "N": 2, "amplitudes": [{"modes": [0], "re": 1.0, "im": 0.0}]}"#,
            r#"{"d": 4, "N": 5, "amplitudes": []}"#,
            r#"{"d": 4, "N": 2, "amplitudes": [
                {"modes": [0, 3], "re": 0.8, "im": 0.0},
                {"modes": [0, 3], "re": 0.6, "im": 0.0}]}"#,
        ] {
            let file: StateFile = serde_json::from_str(text).unwrap();
            assert!(matches!(file.into_state(), Err(Error::MalformedFile(_))));
        }
    }
}

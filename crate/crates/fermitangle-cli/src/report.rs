//! Report assembly and serialization for the CLI commands.
//!
//! JSON reports mirror the printed fields one-to-one with snake_case keys;
//! every floating-point number is rounded to 12 significant digits so reruns
//! diff cleanly.

use std::fmt;
use std::path::Path;

use num_complex::Complex64;
use serde::Serialize;

use fermitangle::criteria::{classify, fermionic_concurrence, Classification};
use fermitangle::decomp::{concurrence_2f, concurrence_2qubit, schmidt_decompose, slater_rank};
use fermitangle::error::Error;
use fermitangle::fock::{
    canonical_partition, freeze, parse_site_spec, partition_label, FermionState, Site,
};
use fermitangle::rdm::{linear_entropy, reduce_bipartite};
use fermitangle::trap::TrapReport;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

/// Round to 12 significant digits; keeps JSON output reproducible across
/// reruns without dragging the full binary float representation along.
pub fn sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let factor = 10f64.powi(11 - magnitude);
    (x * factor).round() / factor
}

#[derive(Serialize)]
struct ComplexJson {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        Self {
            re: sig12(z.re),
            im: sig12(z.im),
        }
    }
}

#[derive(Serialize)]
struct InputDigest {
    path: String,
    d: usize,
    n: usize,
    norm: f64,
}

#[derive(Serialize)]
struct BipartitionJson {
    m: usize,
    purity: f64,
    lower_bound: f64,
    upper_bound: f64,
    margin: f64,
    verdict: &'static str,
    fermionic_concurrence: f64,
}

#[derive(Serialize)]
struct FreezeBlockJson {
    sites: String,
    amplitude_matrix: Vec<Vec<ComplexJson>>,
    schmidt_coefficients: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    concurrence_2qubit: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    concurrence_2f: Option<f64>,
    fermionic_concurrence: f64,
    linear_entropy_party_1: f64,
    linear_entropy_party_2: f64,
}

#[derive(Serialize)]
pub struct AnalyzeReport {
    input: InputDigest,
    tolerance: f64,
    bipartitions: Vec<BipartitionJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    slater_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    concurrence_2f: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    freeze: Option<FreezeBlockJson>,
}

fn verdict_str(classification: Classification) -> &'static str {
    match classification {
        Classification::NonEntangled => "non_entangled",
        Classification::Entangled => "entangled",
    }
}


fn freeze_block(
    state: &FermionState,
    partition: &[(Site, usize)],
) -> Result<FreezeBlockJson, Error> {
    let frozen = freeze(state, partition)?;
    let schmidt = schmidt_decompose(&frozen)?;
    let s1 = linear_entropy(&reduce_bipartite(&frozen, 1)?);
    let s2 = linear_entropy(&reduce_bipartite(&frozen, 2)?);
    let (rows, cols) = frozen.dims();
    let amplitude_matrix = (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| ComplexJson::from(frozen.amplitudes()[(i, j)]))
                .collect()
        })
        .collect();
    Ok(FreezeBlockJson {
        sites: partition_label(partition),
        amplitude_matrix,
        schmidt_coefficients: schmidt.coefficients.iter().map(|&c| sig12(c)).collect(),
        concurrence_2qubit: concurrence_2qubit(&frozen).ok().map(sig12),
        concurrence_2f: concurrence_2f(state).ok().map(sig12),
        fermionic_concurrence: sig12(fermionic_concurrence(state, 1)?),
        linear_entropy_party_1: sig12(s1),
        linear_entropy_party_2: sig12(s2),
    })
}

pub fn analyze_report(
    path: &Path,
    state: &FermionState,
    norm: f64,
    bipartition: Option<usize>,
    tol: f64,
) -> Result<AnalyzeReport, CliError> {
    let n = state.n();
    let sizes: Vec<usize> = match bipartition {
        Some(m) => {
            if m == 0 || m >= n {
                return Err(CliError::new(
                    4,
                    format!("bipartition size M = {m} outside 1..={}", n.saturating_sub(1)),
                ));
            }
            vec![m]
        }
        None => (1..n).collect(),
    };

    let mut bipartitions = Vec::with_capacity(sizes.len());
    for m in sizes {
        let verdict = classify(state, m, tol).map_err(|e| match e {
            Error::BadM { .. } => CliError::new(4, e.to_string()),
            other => CliError::new(1, other.to_string()),
        })?;
        // A purity outside its own printed bounds means the computation is
        // inconsistent; refuse to report rather than print nonsense.
        if verdict.purity < verdict.bounds.lower - 10.0 * tol
            || verdict.purity > verdict.bounds.upper + 10.0 * tol
        {
            return Err(CliError::new(
                1,
                format!(
                    "internal invariant violated: purity {} outside [{}, {}]",
                    verdict.purity, verdict.bounds.lower, verdict.bounds.upper
                ),
            ));
        }
        let concurrence = fermionic_concurrence(state, m).map_err(|e| CliError::new(1, e.to_string()))?;
        bipartitions.push(BipartitionJson {
            m,
            purity: sig12(verdict.purity),
            lower_bound: sig12(verdict.bounds.lower),
            upper_bound: sig12(verdict.bounds.upper),
            margin: sig12(verdict.margin),
            verdict: verdict_str(verdict.classification),
            fermionic_concurrence: sig12(concurrence),
        });
    }

    let rank = if n == 2 {
        Some(slater_rank(state, tol).map_err(|e| CliError::new(1, e.to_string()))?)
    } else {
        None
    };
    let pf_concurrence = concurrence_2f(state).ok().map(sig12);
    let freeze = if n == 2 && state.d() % 2 == 0 {
        canonical_partition(state.d())
            .ok()
            .and_then(|partition| freeze_block(state, &partition).ok())
    } else {
        None
    };

    Ok(AnalyzeReport {
        input: InputDigest {
            path: path.display().to_string(),
            d: state.d(),
            n,
            norm: sig12(norm),
        },
        tolerance: tol,
        bipartitions,
        slater_rank: rank,
        concurrence_2f: pf_concurrence,
        freeze,
    })
}

impl AnalyzeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for AnalyzeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "state: {}", self.input.path)?;
        writeln!(
            f,
            "  d = {}, N = {}, file norm = {:.12}",
            self.input.d, self.input.n, self.input.norm
        )?;
        writeln!(f, "  tolerance = {:e}", self.tolerance)?;
        for b in &self.bipartitions {
            writeln!(f)?;
            writeln!(f, "bipartition M = {}:", b.m)?;
            writeln!(f, "  purity                = {:.12}", b.purity)?;
            writeln!(
                f,
                "  bounds                = [{:.12}, {:.12}]",
                b.lower_bound, b.upper_bound
            )?;
            writeln!(f, "  margin                = {:.12}", b.margin)?;
            writeln!(f, "  verdict               = {}", b.verdict)?;
            writeln!(f, "  fermionic_concurrence = {:.12}", b.fermionic_concurrence)?;
        }
        if let Some(rank) = self.slater_rank {
            writeln!(f)?;
            writeln!(f, "slater_rank = {rank}")?;
        }
        if let Some(c) = self.concurrence_2f {
            writeln!(f, "concurrence_2f = {c:.12}")?;
        }
        if let Some(block) = &self.freeze {
            writeln!(f)?;
            write!(f, "{block}")?;
        }
        Ok(())
    }
}

impl fmt::Display for FreezeBlockJson {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "freeze comparison (sites {}):", self.sites)?;
        writeln!(f, "  amplitude matrix (party 1 rows, party 2 columns):")?;
        for row in &self.amplitude_matrix {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.9}{:+.9}i", z.re, z.im))
                .collect();
            writeln!(f, "    [ {} ]", cells.join("  "))?;
        }
        let coeffs: Vec<String> = self
            .schmidt_coefficients
            .iter()
            .map(|c| format!("{c:.12}"))
            .collect();
        writeln!(f, "  schmidt_coefficients  = [{}]", coeffs.join(", "))?;
        if let Some(c) = self.concurrence_2qubit {
            writeln!(f, "  concurrence_2qubit    = {c:.12}")?;
        }
        if let Some(c) = self.concurrence_2f {
            writeln!(f, "  concurrence_2f        = {c:.12}")?;
        }
        writeln!(f, "  fermionic_concurrence = {:.12}", self.fermionic_concurrence)?;
        writeln!(
            f,
            "  linear_entropy        = {:.12} (party 1), {:.12} (party 2)",
            self.linear_entropy_party_1, self.linear_entropy_party_2
        )?;
        Ok(())
    }
}

#[derive(Serialize)]
pub struct FreezeReport {
    input: InputDigest,
    #[serde(flatten)]
    block: FreezeBlockJson,
}

pub fn freeze_report(
    path: &Path,
    state: &FermionState,
    norm: f64,
    sites: &str,
) -> Result<FreezeReport, CliError> {
    let partition =
        parse_site_spec(sites, state.d()).map_err(|e| CliError::new(1, e.to_string()))?;
    let block = freeze_block(state, &partition).map_err(|e| match e {
        Error::DoubleOccupancy { .. } | Error::UnsupportedN { .. } | Error::UnsupportedDims { .. } => {
            CliError::new(7, e.to_string())
        }
        other => CliError::new(1, other.to_string()),
    })?;
    Ok(FreezeReport {
        input: InputDigest {
            path: path.display().to_string(),
            d: state.d(),
            n: state.n(),
            norm: sig12(norm),
        },
        block,
    })
}

impl FreezeReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for FreezeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "state: {}", self.input.path)?;
        writeln!(
            f,
            "  d = {}, N = {}, file norm = {:.12}",
            self.input.d, self.input.n, self.input.norm
        )?;
        writeln!(f)?;
        write!(f, "{}", self.block)
    }
}

#[derive(Serialize)]
struct TrapJson {
    grid_points: usize,
    extent: f64,
    coarse_grid_points: usize,
    s_l_labeled: f64,
    s_l_ordered: f64,
    purity_labeled: f64,
    purity_ordered: f64,
    convergence_estimate: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    emitted_files: Vec<String>,
}

pub fn trap_json(report: &TrapReport, emitted: &[String]) -> String {
    let json = TrapJson {
        grid_points: report.grid_points,
        extent: sig12(report.extent),
        coarse_grid_points: report.coarse_grid_points,
        s_l_labeled: sig12(report.s_l_labeled),
        s_l_ordered: sig12(report.s_l_ordered),
        purity_labeled: sig12(report.purity_labeled),
        purity_ordered: sig12(report.purity_ordered),
        convergence_estimate: sig12(report.convergence_estimate),
        emitted_files: emitted.to_vec(),
    };
    serde_json::to_string_pretty(&json).expect("report serializes")
}

//! Mixture specification files.
//!
//! Files are JSON5, so keys may be unquoted:
//!
//! ```text
//! {weights: [0.3, 0.7, 0.0], rates: [1, 1, 1]}
//! {weights: [0.34, 0.33, 0.33], eta: [{form: "exp_cos", w: 1}, {form: "exp", w: 1}, {form: "samples", file: "eta3.csv"}]}
//! ```
//!
//! `exp_cos` takes an optional angular frequency `omega` (default 1).
//! Sample files are `t,eta` CSV; relative paths resolve against the spec
//! file's directory, and the samples fix the time grid.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::eta::{EtaFamilyMixtureSpec, EtaForm, EtaFunction};
use super::semigroup::SemigroupMixtureSpec;
use crate::dynamics::csv_io::read_samples;
use crate::dynamics::TimeGrid;
use crate::{Error, Result};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SemigroupFile {
    weights: [f64; 3],
    rates: [f64; 3],
}

#[derive(Debug, Deserialize)]
#[serde(tag = "form", deny_unknown_fields)]
enum EtaEntry {
    #[serde(rename = "exp")]
    Exp { w: f64 },
    #[serde(rename = "exp_cos")]
    ExpCos {
        w: f64,
        #[serde(default = "unit_frequency")]
        omega: f64,
    },
    #[serde(rename = "samples")]
    Samples { file: PathBuf },
}

fn unit_frequency() -> f64 {
    1.0
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EtaFile {
    weights: [f64; 3],
    eta: [EtaEntry; 3],
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    json5::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn parse_semigroup_spec(text: &str) -> Result<SemigroupMixtureSpec> {
    let f: SemigroupFile = parse(text)?;
    SemigroupMixtureSpec::new(f.weights, f.rates)
}

pub fn load_semigroup_spec(path: &Path) -> Result<SemigroupMixtureSpec> {
    parse_semigroup_spec(&std::fs::read_to_string(path)?)
}

/// Parses an η-family spec. Closed-form entries are sampled on `grid`
/// unless a sample file supplies its own grid, which then applies to all
/// three entries.
pub fn parse_eta_spec(text: &str, base_dir: &Path, grid: &TimeGrid) -> Result<EtaFamilyMixtureSpec> {
    let f: EtaFile = parse(text)?;
    let mut sampled: Vec<Option<Vec<f64>>> = Vec::with_capacity(3);
    let mut file_grid: Option<TimeGrid> = None;
    for entry in &f.eta {
        let EtaEntry::Samples { file } = entry else {
            sampled.push(None);
            continue;
        };
        let path = base_dir.join(file);
        let reader = std::fs::File::open(&path)
            .map_err(|e| Error::Parse(format!("cannot open sample file {}: {e}", path.display())))?;
        let (g, values) = read_samples(reader, "eta")?;
        match &file_grid {
            Some(prev) if *prev != g => {
                return Err(Error::InvalidGrid(format!("sample file {} uses a different grid", path.display())))
            }
            _ => file_grid = Some(g),
        }
        sampled.push(Some(values));
    }
    let grid = file_grid.unwrap_or_else(|| grid.clone());
    let eta: Vec<EtaFunction> = f
        .eta
        .iter()
        .zip(sampled)
        .map(|(entry, samples)| match (entry, samples) {
            (_, Some(values)) => EtaFunction::from_samples(values),
            (EtaEntry::Exp { w }, None) => EtaFunction::from_form(EtaForm::Exponential { w: *w }, &grid),
            (EtaEntry::ExpCos { w, omega }, None) => {
                EtaFunction::from_form(EtaForm::DampedCosine { w: *w, omega: *omega }, &grid)
            }
            (EtaEntry::Samples { .. }, None) => unreachable!("sample entries are always loaded"),
        })
        .collect();
    let eta: [EtaFunction; 3] = eta.try_into().expect("three entries");
    EtaFamilyMixtureSpec::new(f.weights, grid, eta)
}

pub fn load_eta_spec(path: &Path, grid: &TimeGrid) -> Result<EtaFamilyMixtureSpec> {
    let text = std::fs::read_to_string(path)?;
    parse_eta_spec(&text, path.parent().unwrap_or(Path::new(".")), grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semigroup_spec_with_unquoted_keys() {
        let s = parse_semigroup_spec("{weights: [0.3, 0.7, 0], rates: [1, 1, 1]}").unwrap();
        assert_eq!(s.weights, [0.3, 0.7, 0.0]);
        assert_eq!(s.rates, [1.0; 3]);
    }

    #[test]
    fn semigroup_spec_errors() {
        assert!(matches!(parse_semigroup_spec("{weights: [0.3, 0.7], rates: [1, 1, 1]}"), Err(Error::Parse(_))));
        assert!(matches!(parse_semigroup_spec("{weights: [0.3, 0.8, 0], rates: [1, 1, 1]}"), Err(Error::InvalidWeights(_))));
        assert!(parse_semigroup_spec("{weights: [0.3, 0.7, 0], rates: [1, 1, 1], extra: 1}").is_err());
        assert!(parse_semigroup_spec("not a spec").is_err());
    }

    #[test]
    fn eta_spec_closed_forms() {
        let g = TimeGrid::new(2.0, 21).unwrap();
        let text = r#"{weights: [0.5, 0.25, 0.25], eta: [{form: "exp_cos", w: 1}, {form: "exp", w: 2}, {form: "exp_cos", w: 0.5, omega: 3}]}"#;
        let s = parse_eta_spec(text, Path::new("."), &g).unwrap();
        assert_eq!(s.eta[0].form(), Some(EtaForm::DampedCosine { w: 1.0, omega: 1.0 }));
        assert_eq!(s.eta[1].form(), Some(EtaForm::Exponential { w: 2.0 }));
        assert_eq!(s.eta[2].form(), Some(EtaForm::DampedCosine { w: 0.5, omega: 3.0 }));
        assert!(parse_eta_spec(r#"{weights: [1, 0, 0], eta: [{form: "gauss", w: 1}, {form: "exp", w: 1}, {form: "exp", w: 1}]}"#, Path::new("."), &g).is_err());
    }

    #[test]
    fn eta_spec_missing_sample_file() {
        let g = TimeGrid::new(2.0, 21).unwrap();
        let text = r#"{weights: [1, 0, 0], eta: [{form: "samples", file: "does-not-exist.csv"}, {form: "exp", w: 1}, {form: "exp", w: 1}]}"#;
        assert!(matches!(parse_eta_spec(text, Path::new("/nonexistent"), &g), Err(Error::Parse(_))));
    }
}

//! Deterministic output files with integrity checksums.
//!
//! Every artifact a run produces goes through these writers so its SHA-256
//! lands in the manifest. Floats are printed with Rust's shortest
//! round-trip formatting: re-reading a CSV reproduces the exact bits, and
//! identical runs produce identical files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::config::Scenario;
use crate::error::Result;
use crate::fields::TrapFrequencies;

/// Quantities derived from the configuration, recorded for cross-checking;
/// every value must match recomputation from the resolved parameters.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct DerivedConstants {
    /// Cavity mode waist (m).
    pub waist_cavity: f64,
    /// Trap frequencies at the origin (Hz), when the trap confines.
    pub trap_frequencies: Option<TrapFrequencies>,
    /// Photon scattering rate for an atom at rest at the origin (1/s).
    pub scattering_rate_origin: f64,
    /// Excited-state population at the origin.
    pub p_e_origin: f64,
    /// Largest allowed integrator step for this configuration (s).
    pub max_dt: f64,
}

/// Everything needed to reproduce and verify one run.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RunManifest {
    /// Full resolved configuration (SI units).
    pub scenario: Scenario,
    pub derived: DerivedConstants,
    pub seed: u64,
    /// Crate version that produced the outputs.
    pub version: String,
    /// File name -> SHA-256 (hex) of every output in the run directory.
    pub outputs: BTreeMap<String, String>,
}

/// Collects output files for one run directory and removes them all if the
/// run fails before `finish`.
pub struct OutputSet {
    dir: PathBuf,
    checksums: BTreeMap<String, String>,
    committed: bool,
}

impl OutputSet {
    pub fn create(dir: &Path) -> Result<Self> {
        // Refuse to write into a directory holding a completed run; a failed
        // second run would otherwise tear down the first run's files.
        if dir.join("manifest.json").exists() {
            return Err(crate::error::Error::Scenario(format!(
                "{} already holds a completed run (manifest.json present)",
                dir.display()
            )));
        }
        fs::create_dir_all(dir)?;
        Ok(OutputSet {
            dir: dir.to_path_buf(),
            checksums: BTreeMap::new(),
            committed: false,
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn record(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let digest = Sha256::digest(bytes);
        let mut hex = String::with_capacity(64);
        for b in digest {
            write!(hex, "{b:02x}").expect("writing to String cannot fail");
        }
        fs::write(self.dir.join(name), bytes)?;
        self.checksums.insert(name.to_string(), hex);
        Ok(())
    }

    /// Write a CSV file; rows must all match the header width.
    pub fn write_csv(&mut self, name: &str, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
        let mut text = String::new();
        text.push_str(&header.join(","));
        text.push('\n');
        for row in rows {
            debug_assert_eq!(row.len(), header.len(), "row width mismatch in {name}");
            let mut first = true;
            for v in row {
                if !first {
                    text.push(',');
                }
                first = false;
                write!(text, "{v}").expect("writing to String cannot fail");
            }
            text.push('\n');
        }
        self.record(name, text.as_bytes())
    }

    /// Write pretty-printed JSON.
    pub fn write_json<T: serde::Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.record(name, &bytes)
    }

    /// Write the manifest (which lists all previous files) and commit.
    pub fn finish(mut self, scenario: &Scenario, derived: DerivedConstants) -> Result<RunManifest> {
        let manifest = RunManifest {
            scenario: scenario.clone(),
            derived,
            seed: scenario.seed,
            version: env!("CARGO_PKG_VERSION").to_string(),
            outputs: self.checksums.clone(),
        };
        let mut bytes = serde_json::to_vec_pretty(&manifest)?;
        bytes.push(b'\n');
        fs::write(self.dir.join("manifest.json"), &bytes)?;
        self.committed = true;
        Ok(manifest)
    }
}

impl Drop for OutputSet {
    /// Failure path: a set that never reached `finish` removes whatever it
    /// wrote, leaving no partial run directory behind.
    fn drop(&mut self) {
        if self.committed {
            return;
        }
        for name in self.checksums.keys() {
            let _ = fs::remove_file(self.dir.join(name));
        }
        let _ = fs::remove_file(self.dir.join("manifest.json"));
        let _ = fs::remove_dir(&self.dir);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{validate_config, ScenarioKind};

    fn scratch(name: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("cavcool-export-{name}-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    #[test]
    fn csv_floats_round_trip_exactly() {
        let dir = scratch("csv");
        let mut out = OutputSet::create(&dir).unwrap();
        let rows = vec![vec![1.0 / 3.0, 2.5e-19], vec![f64::MIN_POSITIVE, 29e-9]];
        out.write_csv("t.csv", &["a", "b"], &rows).unwrap();
        let text = fs::read_to_string(dir.join("t.csv")).unwrap();
        for (line, row) in text.lines().skip(1).zip(&rows) {
            for (field, v) in line.split(',').zip(row) {
                let back: f64 = field.parse().unwrap();
                assert_eq!(back.to_bits(), v.to_bits(), "field {field} lost bits");
            }
        }
        let scenario = validate_config("", Some(ScenarioKind::Storage)).unwrap();
        let derived = DerivedConstants {
            waist_cavity: scenario.params.waist_cavity,
            trap_frequencies: None,
            scattering_rate_origin: 0.0,
            p_e_origin: 0.0,
            max_dt: 1e-8,
        };
        let manifest = out.finish(&scenario, derived).unwrap();
        assert!(manifest.outputs.contains_key("t.csv"));
        assert_eq!(manifest.outputs["t.csv"].len(), 64);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn identical_content_yields_identical_checksums() {
        let dir_a = scratch("sum-a");
        let dir_b = scratch("sum-b");
        let mut a = OutputSet::create(&dir_a).unwrap();
        let mut b = OutputSet::create(&dir_b).unwrap();
        let rows = vec![vec![0.1, 0.2]];
        a.write_csv("x.csv", &["p", "q"], &rows).unwrap();
        b.write_csv("x.csv", &["p", "q"], &rows).unwrap();
        let scenario = validate_config("", Some(ScenarioKind::Storage)).unwrap();
        let derived = DerivedConstants {
            waist_cavity: 0.0,
            trap_frequencies: None,
            scattering_rate_origin: 0.0,
            p_e_origin: 0.0,
            max_dt: 1e-8,
        };
        let ma = a.finish(&scenario, derived.clone()).unwrap();
        let mb = b.finish(&scenario, derived).unwrap();
        assert_eq!(ma.outputs, mb.outputs);
        fs::remove_dir_all(&dir_a).unwrap();
        fs::remove_dir_all(&dir_b).unwrap();
    }

    #[test]
    fn uncommitted_outputs_are_removed_on_drop() {
        let dir = scratch("drop");
        {
            let mut out = OutputSet::create(&dir).unwrap();
            out.write_csv("partial.csv", &["a"], &[vec![1.0]]).unwrap();
            assert!(dir.join("partial.csv").exists());
        }
        assert!(!dir.join("partial.csv").exists(), "partial output must be removed");
        assert!(!dir.exists(), "empty run directory must be removed");
    }
}

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::RunError;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Statistic {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<u64>,
    /// Compared against baselines; row-level flags never are.
    pub tracked: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Summary {
    pub statistics: Vec<Statistic>,
    pub notes: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Report {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: Summary,
}

impl Report {
    pub fn new(columns: &[&str]) -> Self {
        Report {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn track(&mut self, name: &str, value: f64, index: Option<u64>) {
        self.summary.statistics.push(Statistic {
            name: name.into(),
            value,
            index,
            tracked: true,
        });
    }

    pub fn stat(&mut self, name: &str, value: f64, index: Option<u64>) {
        self.summary.statistics.push(Statistic {
            name: name.into(),
            value,
            index,
            tracked: false,
        });
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.summary.notes.insert(key.into(), value.to_string());
    }

    pub fn statistic(&self, name: &str) -> Option<&Statistic> {
        self.summary.statistics.iter().find(|s| s.name == name)
    }

    /// Header plus rows, LF line endings.
    pub fn to_csv(&self) -> Result<Vec<u8>, RunError> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let io = |e: csv::Error| RunError::Io(e.to_string());
        w.write_record(&self.columns).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        w.into_inner().map_err(|e| RunError::Io(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub baseline: f64,
    pub current: Option<f64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum BaselineOutcome {
    Recorded {
        path: PathBuf,
    },
    Compared {
        config_hash_matches: bool,
        checks: Vec<Check>,
        pass: bool,
    },
}

impl BaselineOutcome {
    pub fn passed(&self) -> bool {
        match self {
            BaselineOutcome::Recorded { .. } => true,
            BaselineOutcome::Compared { pass, .. } => *pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Baseline {
    pub kind: String,
    pub config_hash: String,
    pub statistics: BTreeMap<String, f64>,
}

/// Write a baseline if `path` does not exist, otherwise compare each
/// statistic it tracks.
pub fn compare_baseline(
    report: &Report,
    kind: &str,
    hash: &str,
    path: &Path,
    tolerance: f64,
) -> Result<BaselineOutcome, RunError> {
    if !path.exists() {
        let baseline = Baseline {
            kind: kind.into(),
            config_hash: hash.into(),
            statistics: report
                .summary
                .statistics
                .iter()
                .filter(|s| s.tracked)
                .map(|s| (s.name.clone(), s.value))
                .collect(),
        };
        let text = serde_json::to_string_pretty(&baseline).expect("baseline serializes") + "\n";
        std::fs::write(path, text).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
        return Ok(BaselineOutcome::Recorded { path: path.into() });
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
    let baseline: Baseline = serde_json::from_str(&text)
        .map_err(|e| RunError::Invalid(format!("baseline {}: {e}", path.display())))?;
    if baseline.kind != kind {
        return Err(RunError::Invalid(format!(
            "baseline is for {}, not {kind}",
            baseline.kind
        )));
    }
    let checks: Vec<Check> = baseline
        .statistics
        .iter()
        .map(|(name, &b)| {
            let current = report.statistic(name).map(|s| s.value);
            Check {
                name: name.clone(),
                baseline: b,
                current,
                pass: current.is_some_and(|c| (c - b).abs() <= tolerance),
            }
        })
        .collect();
    Ok(BaselineOutcome::Compared {
        config_hash_matches: baseline.config_hash == hash,
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Envelope {
    pub tool: String,
    pub version: String,
    pub kind: String,
    pub config_hash: String,
    pub timestamp: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<BaselineOutcome>,
}

impl Envelope {
    pub fn to_json(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("envelope serializes");
        out.push(b'\n');
        out
    }

    pub fn report(&self) -> Report {
        Report {
            columns: self.columns.clone(),
            rows: self.rows.clone(),
            summary: self.summary.clone(),
        }
    }

    /// Summary as `# key = value` lines.
    pub fn write_summary(&self, mut w: impl Write) -> std::io::Result<()> {
        writeln!(
            w,
            "# {} {} config {}",
            self.kind,
            self.version,
            &self.config_hash[..12]
        )?;
        for s in &self.summary.statistics {
            match s.index {
                Some(i) => writeln!(w, "# {} = {} (at {i})", s.name, s.value)?,
                None => writeln!(w, "# {} = {}", s.name, s.value)?,
            }
        }
        for (k, v) in &self.summary.notes {
            writeln!(w, "# {k}: {v}")?;
        }
        match &self.baseline {
            Some(BaselineOutcome::Recorded { path }) => {
                writeln!(w, "# baseline recorded to {}", path.display())?
            }
            Some(BaselineOutcome::Compared { checks, pass, .. }) => {
                for c in checks {
                    let cur = c.current.map_or("missing".to_string(), |v| v.to_string());
                    let verdict = if c.pass { "PASS" } else { "FAIL" };
                    writeln!(
                        w,
                        "# baseline {verdict} {}: {cur} vs {}",
                        c.name, c.baseline
                    )?;
                }
                writeln!(w, "# baseline {}", if *pass { "PASS" } else { "FAIL" })?;
            }
            None => {}
        }
        Ok(())
    }
}

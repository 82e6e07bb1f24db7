//! Structured plain-text reports with a stable field order, plus optional
//! CSV sidecars. Reports are byte-reproducible given (config, seed): no
//! timestamps, no paths, no map-order dependence.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use recineq::{Certificate, Verdict};

pub struct Report {
    pub scenario: String,
    params: Vec<(String, String)>,
    results: Vec<(String, String)>,
    certificates: Vec<Certificate>,
    failures: Vec<String>,
    csvs: Vec<(String, String)>,
}

impl Report {
    pub fn new(scenario: &str) -> Report {
        Report {
            scenario: scenario.to_string(),
            params: Vec::new(),
            results: Vec::new(),
            certificates: Vec::new(),
            failures: Vec::new(),
            csvs: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn result(&mut self, key: &str, value: impl ToString) {
        self.results.push((key.to_string(), value.to_string()));
    }

    pub fn certificate(&mut self, cert: Certificate) {
        self.certificates.push(cert);
    }

    pub fn fail(&mut self, reason: impl ToString) {
        self.failures.push(reason.to_string());
    }

    /// Adds a CSV sidecar written as `<scenario>.<name>.csv`.
    pub fn csv(&mut self, name: &str, content: String) {
        self.csvs.push((name.to_string(), content));
    }

    /// Pass iff nothing failed explicitly and no certificate is
    /// premise-failed or soundness-alarmed.
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
            && self
                .certificates
                .iter()
                .all(|c| !matches!(c.verdict, Verdict::PremiseFailed | Verdict::SoundnessAlarm))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("report: {}\n", self.scenario));
        out.push_str(&format!(
            "status: {}\n",
            if self.passed() { "pass" } else { "fail" }
        ));
        for (k, v) in &self.params {
            out.push_str(&format!("param {k}: {v}\n"));
        }
        for (k, v) in &self.results {
            out.push_str(&format!("result {k}: {v}\n"));
        }
        for f in &self.failures {
            out.push_str(&format!("failure: {f}\n"));
        }
        for c in &self.certificates {
            out.push_str(&c.render());
        }
        out
    }

    /// Writes `<out>/<scenario>.report.txt` and the CSV sidecars; returns
    /// the report path.
    pub fn write(&self, out_dir: &Path) -> Result<PathBuf> {
        std::fs::create_dir_all(out_dir)
            .with_context(|| format!("creating {}", out_dir.display()))?;
        let path = out_dir.join(format!("{}.report.txt", self.scenario));
        let mut f =
            std::fs::File::create(&path).with_context(|| format!("writing {}", path.display()))?;
        f.write_all(self.render().as_bytes())?;
        for (name, content) in &self.csvs {
            let csv_path = out_dir.join(format!("{}.{}.csv", self.scenario, name));
            std::fs::write(&csv_path, content)
                .with_context(|| format!("writing {}", csv_path.display()))?;
        }
        Ok(path)
    }
}

//! Scenario runner, configuration and report plumbing behind the `recineq`
//! binary.

pub mod config;
pub mod report;
pub mod scenarios;

use std::path::Path;

use anyhow::Result;

use config::Config;
use report::Report;

/// Runs one named scenario against a config, returning its report.
pub fn run_scenario(name: &str, config: &Config) -> Result<Report> {
    let scenario = scenarios::find(name)
        .ok_or_else(|| anyhow::anyhow!("unknown scenario {name:?} (see `recineq list`)"))?;
    (scenario.run)(config.section(name))
}

/// Runs a scenario and writes its report (and CSV sidecars) under `out`.
pub fn run_and_write(name: &str, config: &Config, out: &Path) -> Result<Report> {
    let report = run_scenario(name, config)?;
    report.write(out)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_matches_the_documented_list() {
        let names: Vec<&str> = scenarios::registry().iter().map(|s| s.name).collect();
        assert_eq!(
            names,
            vec![
                "sine-rate",
                "subgradient-meta",
                "block-invariants",
                "specker-dump",
                "series-meta-oracle",
                "counterexample-a",
                "counterexample-b",
                "accretive-rate",
                "abstract-conditions",
            ]
        );
    }

    #[test]
    fn unknown_scenario_is_an_error() {
        assert!(run_scenario("no-such-thing", &Config::default()).is_err());
    }

    #[test]
    fn every_listed_scenario_runs_with_light_settings() {
        // smoke loop with shrunken workloads
        let toml = r#"
            [sine-rate]
            eps = ["1"]
            tail_window = 50

            [subgradient-meta]
            eps = ["2"]
            g = ["const:0"]
            scan_cap = 2000
            star_horizon = 200

            [block-invariants]
            trials = 2
            horizon = 120

            [specker-dump]
            count = 60

            [series-meta-oracle]
            trials = 25

            [counterexample-a]
            horizon = 120

            [counterexample-b]
            horizon = 120

            [accretive-rate]
            eps = ["1", "1/2"]
            window = 40

            [abstract-conditions]
            l1_horizon = 400
        "#;
        let dir = tempfile::tempdir().unwrap();
        let cfg_path = dir.path().join("light.toml");
        std::fs::write(&cfg_path, toml).unwrap();
        let config = Config::load(Some(&cfg_path)).unwrap();
        for s in scenarios::registry() {
            let report = run_scenario(s.name, &config)
                .unwrap_or_else(|e| panic!("{} failed to run: {e}", s.name));
            assert!(report.passed(), "{}:\n{}", s.name, report.render());
        }
    }
}

//! Declarative scenarios: a named ball source, an operation from the fixed
//! command set, its parameters, and an optional expected output for golden
//! comparisons. Scenarios translate to argv for the binary, so test
//! expectations and interactive usage exercise the same code path.

use std::path::PathBuf;

use serde::Deserialize;

/// Where a scenario's ball comes from. Exactly one source by construction.
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallSource {
    /// A ball JSON file.
    File(PathBuf),
    /// A Hanner composition expression, e.g. `"((R +1 R) +inf R)"`.
    Hanner(String),
    /// The diagonal cube projection family at the given dimension.
    Rhombic(usize),
}

/// Operations a scenario may run (the CLI command set minus the generators).
#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Operation {
    Ball,
    Dual,
    Absorbing,
    SteinerAntipodal,
    ClCheck,
    Smt,
    VerifyChain,
    VerifyPlane,
}

impl Operation {
    fn argv_head(&self) -> Vec<String> {
        match self {
            Operation::Ball => vec!["ball".into()],
            Operation::Dual => vec!["dual".into()],
            Operation::Absorbing => vec!["absorbing".into()],
            Operation::SteinerAntipodal => vec!["steiner-antipodal".into()],
            Operation::ClCheck => vec!["cl-check".into()],
            Operation::Smt => vec!["smt".into()],
            Operation::VerifyChain => vec!["verify".into(), "chain".into()],
            Operation::VerifyPlane => vec!["verify".into(), "plane".into()],
        }
    }
}

/// A named, reproducible invocation with an optional pinned output.
#[derive(Clone, Debug, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub ball: BallSource,
    pub operation: Operation,
    #[serde(default)]
    pub params: Vec<String>,
    #[serde(default)]
    pub expected: Option<serde_json::Value>,
}

impl Scenario {
    /// Command-line arguments equivalent to this scenario. The ball source
    /// becomes `--ball <file>` (files) or `--hanner-expr` / `--rhombic-d`
    /// (generated balls).
    pub fn argv(&self) -> Vec<String> {
        let mut argv = self.operation.argv_head();
        match &self.ball {
            BallSource::File(path) => {
                argv.push("--ball".into());
                argv.push(path.display().to_string());
            }
            BallSource::Hanner(expr) => {
                argv.push("--hanner-expr".into());
                argv.push(expr.clone());
            }
            BallSource::Rhombic(d) => {
                argv.push("--rhombic-d".into());
                argv.push(d.to_string());
            }
        }
        argv.extend(self.params.iter().cloned());
        argv
    }
}

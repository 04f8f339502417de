//! Command surface shared by the `qdeform` binary and the FFI layer.

mod config;

use std::fmt::Write as _;

use serde_json::{json, Value};
use thiserror::Error;

pub use config::{parse_config, ActionConfig, ConfigError, ExampleConfig, RunConfig};

use crate::cohomology::{cocycle_check_mu1, nontriviality_report, CertificateError, COCHAIN_CONVENTION};
use crate::deformation::{mu1, Deformation, DeformationConfig};
use crate::hopf::checks::{
    check_closed_form, check_hq_relations, check_module_algebra_general, check_skew_leibniz, check_special_conditions,
};
use crate::hopf::Family;
use crate::report::CheckReport;

pub const BUILTIN_PRESETS: [&str; 3] = ["motivational-q2", "motivational-q3", "general-k4-n2-a1-b1"];
pub const DEFAULT_DEGREE_BOUND: u32 = 3;
pub const DEFAULT_T_CAP: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Deform,
    Mu1,
    Cocycle,
    Certify,
    Selftest,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Deform => "deform",
            Command::Mu1 => "mu1",
            Command::Cocycle => "cocycle",
            Command::Certify => "certify",
            Command::Selftest => "selftest",
        }
    }

    pub fn from_name(name: &str) -> Option<Command> {
        [Command::Validate, Command::Deform, Command::Mu1, Command::Cocycle, Command::Certify, Command::Selftest]
            .into_iter()
            .find(|c| c.name() == name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("certificate precondition: {0}")]
    Certificate(#[from] CertificateError),
    #[error("{0} needs a preset or config")]
    NoSource(&'static str),
}

/// A parsed configuration and where it came from.
#[derive(Debug, Clone)]
pub struct Source {
    pub name: String,
    pub family: Option<Family>,
    pub config: ExampleConfig,
}

impl Source {
    pub fn preset(name: &str) -> Result<Source, RunError> {
        let family = Family::from_name(name).ok_or_else(|| RunError::UnknownPreset(name.into()))?;
        let config = preset_config(&family).map_err(|_| RunError::UnknownPreset(name.into()))?;
        Ok(Source { name: name.into(), family: Some(family), config })
    }

    pub fn from_text(name: &str, text: &str) -> Result<Source, RunError> {
        Ok(Source { name: name.into(), family: None, config: parse_config(text)? })
    }

    pub fn from_path(path: &str) -> Result<Source, RunError> {
        let text = std::fs::read_to_string(path).map_err(|e| RunError::Io { path: path.into(), msg: e.to_string() })?;
        Self::from_text(path, &text)
    }
}

pub fn preset_config(family: &Family) -> Result<ExampleConfig, crate::hopf::FamilyError> {
    let algebra = family.algebra()?;
    let special = family.special_spec(&algebra);
    Ok(ExampleConfig { q: family.q(), algebra, action: ActionConfig::Special(special), run: RunConfig::default() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub degree_bound: u32,
    pub t_cap: u32,
}

impl RunOptions {
    /// Flags win over the config's `[run]` section, which wins over defaults.
    pub fn resolve(degree_bound: Option<u32>, t_cap: Option<u32>, run: Option<&RunConfig>) -> Self {
        RunOptions {
            degree_bound: degree_bound.or(run.and_then(|r| r.degree_bound)).unwrap_or(DEFAULT_DEGREE_BOUND),
            t_cap: t_cap.or(run.and_then(|r| r.t_cap)).unwrap_or(DEFAULT_T_CAP),
        }
    }
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { degree_bound: DEFAULT_DEGREE_BOUND, t_cap: DEFAULT_T_CAP }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub passed: bool,
    pub human: String,
    pub machine: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn reports_json(reports: &[CheckReport]) -> Value {
    Value::Array(reports.iter().map(|r| serde_json::to_value(r).expect("report serializes")).collect())
}

/// Runs one command against one source. `Selftest` ignores the source.
pub fn run_command(cmd: Command, source: Option<&Source>, opts: RunOptions) -> Result<Outcome, RunError> {
    if cmd == Command::Selftest {
        return selftest(opts);
    }
    let source = source.ok_or(RunError::NoSource(cmd.name()))?;
    let action = source.config.build_action();
    let bound = opts.degree_bound;
    let mut reports = Vec::new();
    let mut text = String::new();
    let mut extra = serde_json::Map::new();
    let mut verdict = None;
    match cmd {
        Command::Validate => {
            reports.push(check_hq_relations(&action, bound));
            reports.push(check_module_algebra_general(&action, bound));
            reports.extend(check_special_conditions(&action, bound));
            reports.push(check_skew_leibniz(&action, bound));
            if let Some(family) = &source.family {
                reports.push(check_closed_form(&action, family, bound));
            }
        }
        Command::Deform => {
            let d = Deformation::new(&action, DeformationConfig { t_cap: opts.t_cap });
            match d.presentation() {
                Ok(p) => {
                    writeln!(text, "# presentation").unwrap();
                    write!(text, "{p}").unwrap();
                    let relations: Vec<String> = p.relations.iter().map(|r| r.to_string()).collect();
                    let header = p.to_string().lines().next().unwrap_or_default().to_string();
                    extra.insert("presentation".into(), json!({ "header": header, "relations": relations }));
                }
                Err(e) => {
                    let mut r = CheckReport::new("presentation");
                    r.record_note("PRESENTATION", false, e.to_string());
                    reports.push(r);
                }
            }
            reports.push(d.check_associativity(bound));
        }
        Command::Mu1 => {
            let a = action.algebra();
            writeln!(text, "# mu1 on generator pairs").unwrap();
            let mut table = Vec::new();
            for i in 0..a.k() {
                for j in 0..a.k() {
                    let v = mu1(&action, &a.w(i), &a.w(j));
                    writeln!(text, "mu1(w{}, w{}) = {v}", i + 1, j + 1).unwrap();
                    table.push(json!({ "i": i + 1, "j": j + 1, "value": v.to_string() }));
                }
            }
            extra.insert("mu1".into(), Value::Array(table));
        }
        Command::Cocycle => reports.push(cocycle_check_mu1(&action, bound)),
        Command::Certify => {
            let cert = nontriviality_report(&action, bound)?;
            writeln!(text, "convention: {COCHAIN_CONVENTION}").unwrap();
            writeln!(text, "kappa: {}", cert.kappa).unwrap();
            extra.insert("convention".into(), json!(COCHAIN_CONVENTION));
            extra.insert("kappa".into(), json!(cert.kappa.to_string()));
            extra.insert("verdict".into(), json!(cert.verdict.to_string()));
            reports.push(cert.report);
            verdict = Some(cert.verdict);
        }
        Command::Selftest => unreachable!("handled above"),
    }
    let passed = reports.iter().all(CheckReport::passed);
    let mut human =
        format!("source: {}\ncommand: {}\ndegree_bound: {bound}\nt_cap: {}\n", source.name, cmd.name(), opts.t_cap);
    human.push_str(&text);
    for r in &reports {
        write!(human, "{r}").unwrap();
    }
    if let Some(v) = verdict {
        writeln!(human, "verdict: {v}").unwrap();
    }
    writeln!(human, "status: {}", status(passed)).unwrap();
    let mut machine = json!({
        "source": source.name,
        "command": cmd.name(),
        "degree_bound": bound,
        "t_cap": opts.t_cap,
        "passed": passed,
        "reports": reports_json(&reports),
    });
    machine.as_object_mut().expect("object").extend(extra);
    Ok(Outcome { passed, human, machine })
}

/// Every built-in preset through every other command.
pub fn selftest(opts: RunOptions) -> Result<Outcome, RunError> {
    let mut human = String::new();
    let mut runs = Vec::new();
    let mut passed = true;
    for name in BUILTIN_PRESETS {
        let source = Source::preset(name)?;
        for cmd in [Command::Validate, Command::Deform, Command::Mu1, Command::Cocycle, Command::Certify] {
            let out = run_command(cmd, Some(&source), opts)?;
            passed &= out.passed;
            writeln!(human, "{name} {}: {}", cmd.name(), status(out.passed)).unwrap();
            runs.push(out.machine);
        }
    }
    writeln!(human, "status: {}", status(passed)).unwrap();
    let machine = json!({ "command": "selftest", "degree_bound": opts.degree_bound, "t_cap": opts.t_cap, "passed": passed, "runs": runs });
    Ok(Outcome { passed, human, machine })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(bound: u32) -> RunOptions {
        RunOptions { degree_bound: bound, t_cap: DEFAULT_T_CAP }
    }

    #[test]
    fn presets_round_trip_through_text() {
        for name in BUILTIN_PRESETS {
            let s = Source::preset(name).unwrap();
            let text = s.config.to_string();
            assert_eq!(parse_config(&text).unwrap(), s.config, "{name}");
        }
        assert_eq!(Source::preset("motivational-q1").unwrap_err(), RunError::UnknownPreset("motivational-q1".into()));
    }

    #[test]
    fn deform_q2_relations() {
        let s = Source::preset("motivational-q2").unwrap();
        let out = run_command(Command::Deform, Some(&s), opts(1)).unwrap();
        assert!(out.passed);
        let rel = &out.machine["presentation"]["relations"];
        assert_eq!(rel[0], "w1 w2 + w2 w1 + t * w3 * g[(1,0)] = 0");
        assert_eq!(rel[1], "w1 w3 + w3 w1 = 0");
        assert_eq!(rel[2], "w2 w3 - w3 w2 = 0");
        assert!(out.human.ends_with("ASSOC: PASS\nstatus: PASS\n"), "{}", out.human);
    }

    #[test]
    fn certify_q3() {
        let s = Source::preset("motivational-q3").unwrap();
        let out = run_command(Command::Certify, Some(&s), opts(1)).unwrap();
        assert!(out.passed, "{}", out.human);
        assert_eq!(out.machine["verdict"], "nontrivial");
        assert!(out.human.contains("verdict: nontrivial\nstatus: PASS\n"));
    }

    #[test]
    fn mu1_table_and_determinism() {
        let s = Source::preset("motivational-q2").unwrap();
        let a = run_command(Command::Mu1, Some(&s), opts(1)).unwrap();
        let b = run_command(Command::Mu1, Some(&s), opts(1)).unwrap();
        assert_eq!(a, b);
        assert!(a.human.contains("mu1(w1, w2) = -w3 * g[(1,0)]"), "{}", a.human);
        assert!(a.human.contains("mu1(w2, w1) = 0"));
    }

    #[test]
    fn options_precedence() {
        let run = RunConfig { degree_bound: Some(2), t_cap: None };
        assert_eq!(RunOptions::resolve(None, None, Some(&run)), RunOptions { degree_bound: 2, t_cap: 8 });
        assert_eq!(RunOptions::resolve(Some(4), Some(3), Some(&run)), RunOptions { degree_bound: 4, t_cap: 3 });
        assert_eq!(RunOptions::resolve(None, None, None), RunOptions::default());
    }

    #[test]
    fn command_names() {
        for c in
            [Command::Validate, Command::Deform, Command::Mu1, Command::Cocycle, Command::Certify, Command::Selftest]
        {
            assert_eq!(Command::from_name(c.name()), Some(c));
        }
        assert_eq!(Command::from_name("nope"), None);
    }
}

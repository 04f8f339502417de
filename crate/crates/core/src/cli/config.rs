//! Line-oriented configuration files.
//!
//! ```text
//! # comment (also allowed after a value)
//! [field]
//! n = 2                      # Q(zeta_n)
//! q = -1                     # scalar syntax: integers, rationals, z, z^k, + - * / ( )
//!
//! [algebra]
//! k = 3
//! group = 2, 2               # orders of the cyclic factors
//! qmatrix.1 = 1, -1, -1      # row i of (q_ij), k scalars
//! chars.1 = -1, 1            # chi_i(generator_j), one scalar per cyclic factor
//!
//! [action]
//! kind = special             # or general
//! lambda = -1, 1, 1          # special: sigma(w_i) = lambda_i w_i
//! xi = -1, 1                 # sigma(generator_j) = xi_j generator_j
//! p1 = 1                     # element syntax: w1*w3^2, g[(1,0)], scalars
//! g1 = 0, 1                  # exponent tuple
//! p2 = w3
//! g2 = 1, 1
//! qp1 = 1, 1, 1              # declared q_{P_1, w_j}
//! qp2 = -1, 1, 1
//!
//! # general actions instead list generator images; omitted D images are 0
//! # and an omitted sigma.i is w_i:
//! # sigma.1 = ..., d1.w1 = ..., d1.g1 = ..., d2.w2 = ..., d2.g2 = ...
//!
//! [run]                      # optional
//! degree_bound = 3
//! t_cap = 8
//! ```

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::hopf::{GeneralActionSpec, HopfAction, SpecialActionSpec};
use crate::scalars::{FieldSpec, Scalar};
use crate::smash::{AlgebraError, AlgebraSpec, GroupElement, SmashElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: unknown key '{key}' in [{section}]")]
    UnknownKey { line: usize, section: String, key: String },
    #[error("line {line}: duplicate key '{key}' in [{section}]")]
    Duplicate { line: usize, section: String, key: String },
    #[error("missing key '{key}' in [{section}]")]
    Missing { section: String, key: String },
    #[error("line {line}: [{section}] {key}: {msg}")]
    Invalid { line: usize, section: String, key: String, msg: String },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ActionConfig {
    Special(SpecialActionSpec),
    General(GeneralActionSpec),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RunConfig {
    pub degree_bound: Option<u32>,
    pub t_cap: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExampleConfig {
    pub q: Scalar,
    pub algebra: AlgebraSpec,
    pub action: ActionConfig,
    pub run: RunConfig,
}

impl ExampleConfig {
    pub fn build_action(&self) -> HopfAction {
        let built = match &self.action {
            ActionConfig::Special(s) => HopfAction::new_special(self.algebra.clone(), self.q.clone(), s.clone()),
            ActionConfig::General(g) => HopfAction::new_general(self.algebra.clone(), self.q.clone(), g.clone()),
        };
        built.expect("validated while parsing")
    }
}

const MAX_K: usize = 30;
const SECTIONS: [&str; 4] = ["field", "algebra", "action", "run"];

struct Entry {
    line: usize,
    value: String,
}

struct Raw {
    headers: BTreeMap<String, usize>,
    entries: BTreeMap<(String, String), Entry>,
    order: Vec<(String, String)>,
}

impl Raw {
    fn lex(text: &str) -> Result<Raw, ConfigError> {
        let mut raw = Raw { headers: BTreeMap::new(), entries: BTreeMap::new(), order: Vec::new() };
        let mut section: Option<String> = None;
        for (idx, full) in text.lines().enumerate() {
            let line = idx + 1;
            let body = full.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(name) = body.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| ConfigError::Syntax { line, msg: format!("unterminated section header '{body}'") })?
                    .trim();
                if !SECTIONS.contains(&name) {
                    return Err(ConfigError::Syntax { line, msg: format!("unknown section [{name}]") });
                }
                if raw.headers.insert(name.to_string(), line).is_some() {
                    return Err(ConfigError::Syntax { line, msg: format!("section [{name}] appears twice") });
                }
                section = Some(name.to_string());
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line, msg: format!("expected 'key = value', got '{body}'") })?;
            let (key, value) = (key.trim(), value.trim());
            let section = section
                .clone()
                .ok_or_else(|| ConfigError::Syntax { line, msg: "key before any [section] header".into() })?;
            if key.is_empty() {
                return Err(ConfigError::Syntax { line, msg: "empty key".into() });
            }
            let id = (section.clone(), key.to_string());
            if raw.entries.contains_key(&id) {
                return Err(ConfigError::Duplicate { line, section, key: key.into() });
            }
            raw.order.push(id.clone());
            raw.entries.insert(id, Entry { line, value: value.to_string() });
        }
        Ok(raw)
    }

    fn get(&self, section: &str, key: &str) -> Option<&Entry> {
        self.entries.get(&(section.to_string(), key.to_string()))
    }

    fn required(&self, section: &str, key: &str) -> Result<&Entry, ConfigError> {
        self.get(section, key).ok_or_else(|| ConfigError::Missing { section: section.into(), key: key.into() })
    }

    fn header_line(&self, section: &str) -> usize {
        self.headers.get(section).copied().unwrap_or(0)
    }
}

fn invalid(section: &str, key: &str, line: usize, msg: impl ToString) -> ConfigError {
    ConfigError::Invalid { line, section: section.into(), key: key.into(), msg: msg.to_string() }
}

/// Splits `stem.<index>` with a one-based index in `1..=len`.
fn indexed(key: &str, stem: &str, len: usize) -> Option<usize> {
    let i: usize = key.strip_prefix(stem)?.strip_prefix('.')?.parse().ok()?;
    (1..=len).contains(&i).then_some(i - 1)
}

fn key_known(section: &str, key: &str, k: usize, m: usize, kind: Option<&str>) -> bool {
    match section {
        "field" => matches!(key, "n" | "q"),
        "algebra" => {
            matches!(key, "k" | "group") || indexed(key, "qmatrix", k).is_some() || indexed(key, "chars", k).is_some()
        }
        "run" => matches!(key, "degree_bound" | "t_cap"),
        "action" => {
            key == "kind"
                || key == "xi"
                || match kind {
                    Some("special") => matches!(key, "lambda" | "p1" | "g1" | "p2" | "g2" | "qp1" | "qp2"),
                    Some("general") => {
                        indexed(key, "sigma", k).is_some()
                            || ["d1", "d2"].iter().any(|d| {
                                key.strip_prefix(d).and_then(|r| r.strip_prefix('.')).is_some_and(|r| {
                                    r.strip_prefix('w')
                                        .and_then(|i| i.parse::<usize>().ok())
                                        .is_some_and(|i| (1..=k).contains(&i))
                                        || r.strip_prefix('g')
                                            .and_then(|i| i.parse::<usize>().ok())
                                            .is_some_and(|i| (1..=m).contains(&i))
                                })
                            })
                    }
                    _ => false,
                }
        }
        _ => false,
    }
}

struct Ctx<'a> {
    raw: &'a Raw,
    field: FieldSpec,
}

impl Ctx<'_> {
    fn scalar(&self, section: &str, key: &str, e: &Entry, src: &str) -> Result<Scalar, ConfigError> {
        self.field.parse(src).map_err(|err| invalid(section, key, e.line, err))
    }

    fn scalar_list(&self, section: &str, key: &str, len: usize) -> Result<Vec<Scalar>, ConfigError> {
        let e = self.raw.required(section, key)?;
        let items: Vec<&str> = e.value.split(',').map(str::trim).collect();
        if items.len() != len {
            return Err(invalid(
                section,
                key,
                e.line,
                format!("expected {len} comma-separated scalars, got {}", items.len()),
            ));
        }
        items.iter().map(|s| self.scalar(section, key, e, s)).collect()
    }

    fn uint<T: std::str::FromStr>(&self, section: &str, key: &str) -> Result<Option<T>, ConfigError> {
        self.raw
            .get(section, key)
            .map(|e| {
                e.value.parse::<T>().map_err(|_| {
                    invalid(section, key, e.line, format!("expected a non-negative integer, got '{}'", e.value))
                })
            })
            .transpose()
    }
}

fn element(algebra: &AlgebraSpec, section: &str, key: &str, e: &Entry) -> Result<SmashElement, ConfigError> {
    algebra.parse_element(&e.value).map_err(|err| invalid(section, key, e.line, err))
}

fn group_tuple(algebra: &AlgebraSpec, key: &str, e: &Entry) -> Result<GroupElement, ConfigError> {
    let exps =
        e.value.split(',').map(|s| s.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>().map_err(|_| {
            invalid("action", key, e.line, format!("expected comma-separated integers, got '{}'", e.value))
        })?;
    algebra.group_element(&exps).map_err(|err| invalid("action", key, e.line, err))
}

pub fn parse_config(text: &str) -> Result<ExampleConfig, ConfigError> {
    let raw = Raw::lex(text)?;

    // shape-only pass so misspelled keys are reported before missing ones
    for id in &raw.order {
        if !["special", "general"].iter().any(|kind| key_known(&id.0, &id.1, MAX_K, MAX_K, Some(kind))) {
            let e = &raw.entries[id];
            return Err(ConfigError::UnknownKey { line: e.line, section: id.0.clone(), key: id.1.clone() });
        }
    }

    let n_entry = raw.required("field", "n")?;
    let n: u32 = n_entry.value.parse().map_err(|_| {
        invalid("field", "n", n_entry.line, format!("expected a positive integer, got '{}'", n_entry.value))
    })?;
    let field = FieldSpec::new(n).map_err(|e| invalid("field", "n", n_entry.line, e))?;
    let ctx = Ctx { raw: &raw, field };

    let k_entry = raw.required("algebra", "k")?;
    let k: usize = k_entry.value.parse().ok().filter(|&k| (1..=MAX_K).contains(&k)).ok_or_else(|| {
        invalid("algebra", "k", k_entry.line, format!("expected an integer in 1..={MAX_K}, got '{}'", k_entry.value))
    })?;
    let g_entry = raw.required("algebra", "group")?;
    let group_orders =
        g_entry.value.split(',').map(|s| s.trim().parse::<u32>()).collect::<Result<Vec<_>, _>>().map_err(|_| {
            invalid(
                "algebra",
                "group",
                g_entry.line,
                format!("expected comma-separated orders, got '{}'", g_entry.value),
            )
        })?;
    let m = group_orders.len();

    let kind_entry = raw.get("action", "kind");
    if let Some(e) = kind_entry.filter(|e| !matches!(e.value.as_str(), "special" | "general")) {
        return Err(invalid("action", "kind", e.line, format!("expected 'special' or 'general', got '{}'", e.value)));
    }
    let kind = kind_entry.map(|e| e.value.as_str());
    for id in &raw.order {
        if !key_known(&id.0, &id.1, k, m, kind) {
            let e = &raw.entries[id];
            return Err(ConfigError::UnknownKey { line: e.line, section: id.0.clone(), key: id.1.clone() });
        }
    }

    let q_entry = raw.required("field", "q")?;
    let q = ctx.scalar("field", "q", q_entry, &q_entry.value)?;

    let qmatrix =
        (1..=k).map(|i| ctx.scalar_list("algebra", &format!("qmatrix.{i}"), k)).collect::<Result<Vec<_>, _>>()?;
    let characters =
        (1..=k).map(|i| ctx.scalar_list("algebra", &format!("chars.{i}"), m)).collect::<Result<Vec<_>, _>>()?;
    let algebra = AlgebraSpec::new(field, qmatrix, group_orders, characters).map_err(|err| {
        let key = match &err {
            AlgebraError::NotInversePair { j, .. } => format!("qmatrix.{}", j + 1),
            AlgebraError::DiagonalNotOne { i, .. } => format!("qmatrix.{}", i + 1),
            AlgebraError::CharacterOrder { i, .. } => format!("chars.{}", i + 1),
            AlgebraError::BadGroupOrder => "group".into(),
            _ => "k".into(),
        };
        let line = raw.get("algebra", &key).map_or(raw.header_line("algebra"), |e| e.line);
        invalid("algebra", &key, line, err)
    })?;

    let kind_entry = raw.required("action", "kind")?;
    let xi = ctx.scalar_list("action", "xi", m)?;
    let action = if kind_entry.value == "special" {
        let el = |key: &str| raw.required("action", key).and_then(|e| element(&algebra, "action", key, e));
        let grp = |key: &str| raw.required("action", key).and_then(|e| group_tuple(&algebra, key, e));
        ActionConfig::Special(SpecialActionSpec {
            lambda: ctx.scalar_list("action", "lambda", k)?,
            xi,
            p1: el("p1")?,
            g1: grp("g1")?,
            p2: el("p2")?,
            g2: grp("g2")?,
            q_p: [ctx.scalar_list("action", "qp1", k)?, ctx.scalar_list("action", "qp2", k)?],
        })
    } else {
        let opt = |key: String, default: SmashElement| match raw.get("action", &key) {
            Some(e) => element(&algebra, "action", &key, e),
            None => Ok(default),
        };
        let on_w =
            |d: &str| (1..=k).map(|i| opt(format!("{d}.w{i}"), SmashElement::zero())).collect::<Result<Vec<_>, _>>();
        let on_g =
            |d: &str| (1..=m).map(|j| opt(format!("{d}.g{j}"), SmashElement::zero())).collect::<Result<Vec<_>, _>>();
        ActionConfig::General(GeneralActionSpec {
            sigma_on_v: (1..=k).map(|i| opt(format!("sigma.{i}"), algebra.w(i - 1))).collect::<Result<Vec<_>, _>>()?,
            xi,
            d1_on_w: on_w("d1")?,
            d1_on_g: on_g("d1")?,
            d2_on_w: on_w("d2")?,
            d2_on_g: on_g("d2")?,
        })
    };

    let built = match &action {
        ActionConfig::Special(s) => HopfAction::new_special(algebra.clone(), q.clone(), s.clone()).map(|_| ()),
        ActionConfig::General(g) => HopfAction::new_general(algebra.clone(), q.clone(), g.clone()).map(|_| ()),
    };
    built.map_err(|err| invalid("action", "kind", raw.header_line("action"), err))?;

    let run = RunConfig { degree_bound: ctx.uint("run", "degree_bound")?, t_cap: ctx.uint("run", "t_cap")? };
    Ok(ExampleConfig { q, algebra, action, run })
}

fn join<T: fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Canonical text; parsing it back yields an equal config.
impl fmt::Display for ExampleConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = &self.algebra;
        writeln!(f, "[field]\nn = {}\nq = {}\n", a.field().n(), self.q)?;
        writeln!(f, "[algebra]\nk = {}\ngroup = {}", a.k(), join(a.group_orders()))?;
        for (i, row) in a.qmatrix().iter().enumerate() {
            writeln!(f, "qmatrix.{} = {}", i + 1, join(row))?;
        }
        for (i, row) in a.characters().iter().enumerate() {
            writeln!(f, "chars.{} = {}", i + 1, join(row))?;
        }
        writeln!(f, "\n[action]")?;
        match &self.action {
            ActionConfig::Special(s) => {
                writeln!(f, "kind = special\nlambda = {}\nxi = {}", join(&s.lambda), join(&s.xi))?;
                writeln!(f, "p1 = {}\ng1 = {}", s.p1, join(s.g1.exponents()))?;
                writeln!(f, "p2 = {}\ng2 = {}", s.p2, join(s.g2.exponents()))?;
                writeln!(f, "qp1 = {}\nqp2 = {}", join(&s.q_p[0]), join(&s.q_p[1]))?;
            }
            ActionConfig::General(g) => {
                writeln!(f, "kind = general\nxi = {}", join(&g.xi))?;
                for (i, s) in g.sigma_on_v.iter().enumerate() {
                    writeln!(f, "sigma.{} = {s}", i + 1)?;
                }
                for (name, on_w, on_g) in [("d1", &g.d1_on_w, &g.d1_on_g), ("d2", &g.d2_on_w, &g.d2_on_g)] {
                    for (i, e) in on_w.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                        writeln!(f, "{name}.w{} = {e}", i + 1)?;
                    }
                    for (j, e) in on_g.iter().enumerate().filter(|(_, e)| !e.is_zero()) {
                        writeln!(f, "{name}.g{} = {e}", j + 1)?;
                    }
                }
            }
        }
        if self.run != RunConfig::default() {
            writeln!(f, "\n[run]")?;
            if let Some(d) = self.run.degree_bound {
                writeln!(f, "degree_bound = {d}")?;
            }
            if let Some(t) = self.run.t_cap {
                writeln!(f, "t_cap = {t}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q2: &str = "\
[field]
n = 2
q = -1

[algebra]
k = 3
group = 2, 2
qmatrix.1 = 1, -1, -1
qmatrix.2 = -1, 1, 1
qmatrix.3 = -1, 1, 1
chars.1 = -1, 1
chars.2 = 1, -1
chars.3 = -1, -1

[action]
kind = special
lambda = -1, 1, 1
xi = -1, 1
p1 = 1
g1 = 0, 1
p2 = w3
g2 = 1, 1
qp1 = 1, 1, 1
qp2 = -1, 1, 1
";

    #[test]
    fn parses_and_round_trips() {
        let c = parse_config(Q2).unwrap();
        assert_eq!(c.algebra.k(), 3);
        assert!(matches!(c.action, ActionConfig::Special(_)));
        let text = c.to_string();
        assert_eq!(text, Q2);
        assert_eq!(parse_config(&text).unwrap(), c);
    }

    #[test]
    fn rejects_broken_inverse_pair() {
        let text = "[field]\nn = 3\nq = z\n[algebra]\nk = 3\ngroup = 1\nqmatrix.1 = 1, 1, 1\nqmatrix.2 = 1, 1, z\nqmatrix.3 = 1, z, 1\nchars.1 = 1\nchars.2 = 1\nchars.3 = 1\n[action]\nkind = general\nxi = 1\n";
        let err = parse_config(text).unwrap_err();
        match &err {
            ConfigError::Invalid { line, key, msg, .. } => {
                assert_eq!((*line, key.as_str()), (9, "qmatrix.3"));
                assert!(msg.contains("inverse"), "{msg}");
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn rejects_unknown_keys() {
        let text = Q2.replace("qp2 = -1, 1, 1", "qp2 = -1, 1, 1\nd1.w1 = w1");
        assert_eq!(
            parse_config(&text).unwrap_err(),
            ConfigError::UnknownKey { line: 25, section: "action".into(), key: "d1.w1".into() }
        );
        let text = Q2.replace("qmatrix.3", "qmatrix.4");
        assert!(matches!(parse_config(&text).unwrap_err(), ConfigError::UnknownKey { line: 10, .. }));
    }

    #[test]
    fn syntax_errors_carry_lines() {
        assert_eq!(
            parse_config("n = 2").unwrap_err(),
            ConfigError::Syntax { line: 1, msg: "key before any [section] header".into() }
        );
        assert!(matches!(parse_config("[field\n").unwrap_err(), ConfigError::Syntax { line: 1, .. }));
        assert!(matches!(parse_config("[field]\nn = 2\nn = 3\n").unwrap_err(), ConfigError::Duplicate { line: 3, .. }));
        let bad_scalar = Q2.replace("lambda = -1, 1, 1", "lambda = -1, y, 1");
        assert!(matches!(parse_config(&bad_scalar).unwrap_err(), ConfigError::Invalid { line: 17, .. }));
        let missing = Q2.replace("qp1 = 1, 1, 1\n", "");
        assert_eq!(
            parse_config(&missing).unwrap_err(),
            ConfigError::Missing { section: "action".into(), key: "qp1".into() }
        );
    }

    #[test]
    fn general_kind_defaults() {
        let text = "[field]\nn = 2\nq = -1\n[algebra]\nk = 2\ngroup = 2\nqmatrix.1 = 1, 1\nqmatrix.2 = 1, 1\nchars.1 = 1\nchars.2 = 1\n[action]\nkind = general\nxi = 1\nd1.w1 = w2\n[run]\nt_cap = 4\n";
        let c = parse_config(text).unwrap();
        let ActionConfig::General(g) = &c.action else { panic!() };
        assert_eq!(g.sigma_on_v[1], c.algebra.w(1));
        assert!(g.d2_on_w.iter().all(SmashElement::is_zero));
        assert_eq!(c.run.t_cap, Some(4));
        assert_eq!(parse_config(&c.to_string()).unwrap(), c);
    }
}

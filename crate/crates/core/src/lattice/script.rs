//! Line-oriented construction scripts.
//!
//! ```text
//! base p2 | base hirzebruch N | base abstract FILE
//! curve NAME class D;M1,M2,...  [genus G]     degree over the base, then multiplicities
//! curve NAME class C1 C2 ...    [genus G]     base coefficients only
//! blowup (NAME:M, NAME:M, ...) [as NAME]
//! blowup_along NAME xR [mults M1,...,MR] [with NAME:A1,...,AR ...] [as PREFIX]
//! contract NAME, NAME, ...
//! expect dynkin "TYPE" | degree NAME P/Q | ksq P/Q | rank N | logdp BOOL
//!      | genus NAME G | selfint NAME N
//! ```
//!
//! `blowup_along C xR` blows up R infinitely near points following `C`: the
//! i-th centre lies on `C` with multiplicity `Mi` and, for i > 1, on the
//! previous exceptional curve. Curves after `with` pass through the i-th
//! centre with multiplicity `Ai` (0 for not at all). Centres are named
//! `PREFIX1`, `PREFIX2`, ... when a prefix is given.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::model::SingularModel;
use super::surface::{BaseSurface, SurfaceState};
use crate::diophantine::noether_defect;
use crate::dualgraph::DynkinType;
use crate::rational::{self, Rational};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSpec {
    P2,
    Hirzebruch(u32),
    Abstract(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Dynkin(String),
    Degree(String, Rational),
    Ksq(Rational),
    Rank(usize),
    LogDp(bool),
    Genus(String, i64),
    SelfInt(String, i64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Base(BaseSpec),
    Curve { name: String, base: Vec<i64>, mults: Vec<i64>, genus: Option<i64> },
    BlowUp { incidence: Vec<(String, u32)>, name: Option<String> },
    BlowUpAlong { curve: String, mults: Vec<u32>, with: Vec<(String, Vec<u32>)>, prefix: Option<String> },
    Contract(Vec<String>),
    Expect(Expectation),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Script {
    pub commands: Vec<(usize, Command)>,
}

#[derive(Deserialize)]
struct AbstractBaseFile {
    names: Vec<String>,
    gram: Vec<Vec<i64>>,
    canonical: Vec<i64>,
}

pub struct Construction {
    pub state: SurfaceState,
    pub model: SingularModel,
    pub report: Report,
}

fn err(line: usize, message: impl Into<String>) -> ScriptError {
    ScriptError { line, message: message.into() }
}

fn int<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, ScriptError> {
    s.trim().parse().map_err(|_| err(line, format!("invalid {what} `{}`", s.trim())))
}

fn list<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<Vec<T>, ScriptError> {
    s.split(',').filter(|x| !x.trim().is_empty()).map(|x| int(line, x, what)).collect()
}

/// `NAME:M`
fn incidence(line: usize, s: &str) -> Result<(String, u32), ScriptError> {
    let (name, m) = s.split_once(':').ok_or_else(|| err(line, format!("expected NAME:M, found `{}`", s.trim())))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(err(line, "empty curve name"));
    }
    Ok((name.to_string(), int(line, m, "multiplicity")?))
}

/// Splits off a trailing `as NAME`.
fn split_as(rest: &str) -> (&str, Option<String>) {
    match rest.rsplit_once(" as ") {
        Some((head, name)) if !name.trim().contains(char::is_whitespace) => (head, Some(name.trim().to_string())),
        _ => (rest, None),
    }
}

impl Script {
    pub fn parse(text: &str) -> Result<Script, ScriptError> {
        let mut commands = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
            let rest = rest.trim();
            let cmd = match keyword {
                "base" => Command::Base(parse_base(line, rest)?),
                "curve" => parse_curve(line, rest)?,
                "blowup" => {
                    let (body, name) = split_as(rest);
                    let body = body.trim();
                    let inner = body
                        .strip_prefix('(')
                        .and_then(|b| b.strip_suffix(')'))
                        .ok_or_else(|| err(line, "expected `(NAME:M, ...)`"))?;
                    let incidence = inner
                        .split(',')
                        .filter(|x| !x.trim().is_empty())
                        .map(|x| incidence(line, x))
                        .collect::<Result<_, _>>()?;
                    Command::BlowUp { incidence, name }
                }
                "blowup_along" => parse_along(line, rest)?,
                "contract" => Command::Contract(
                    rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
                ),
                "expect" => Command::Expect(parse_expect(line, rest)?),
                other => return Err(err(line, format!("unknown command `{other}`"))),
            };
            commands.push((line, cmd));
        }
        Ok(Script { commands })
    }

    /// Executes the script; `base_dir` resolves `base abstract` paths.
    pub fn run(&self, command: &str, base_dir: Option<&Path>) -> Result<Construction, ScriptError> {
        let mut state: Option<SurfaceState> = None;
        let mut contract: Option<(usize, Vec<String>)> = None;
        let mut expectations = Vec::new();
        for (line, cmd) in &self.commands {
            let line = *line;
            if let Command::Base(spec) = cmd {
                if state.is_some() {
                    return Err(err(line, "base given twice"));
                }
                state = Some(SurfaceState::new(load_base(line, spec, base_dir)?));
                continue;
            }
            let current = state.as_ref().ok_or_else(|| err(line, "`base` must come first"))?;
            let lattice = |e: super::LatticeError| err(line, e.to_string());
            match cmd {
                Command::Base(_) => unreachable!(),
                Command::Curve { name, base, mults, genus } => {
                    let class = current.class_from(base, mults).map_err(lattice)?;
                    state = Some(current.declare_curve(name, class, *genus).map_err(lattice)?);
                }
                Command::BlowUp { incidence, name } => {
                    let inc: Vec<(&str, u32)> = incidence.iter().map(|(n, m)| (n.as_str(), *m)).collect();
                    state = Some(current.blow_up(&inc, name.as_deref()).map_err(lattice)?);
                }
                Command::BlowUpAlong { curve, mults, with, prefix } => {
                    let mut s = current.clone();
                    let mut previous: Option<String> = None;
                    for (i, &m) in mults.iter().enumerate() {
                        let mut inc: Vec<(&str, u32)> = vec![(curve.as_str(), m)];
                        if let Some(p) = &previous {
                            inc.push((p.as_str(), 1));
                        }
                        for (other, ms) in with {
                            if ms[i] > 0 {
                                inc.push((other.as_str(), ms[i]));
                            }
                        }
                        let name = prefix.as_ref().map(|p| format!("{p}{}", i + 1));
                        s = s.blow_up(&inc, name.as_deref()).map_err(lattice)?;
                        previous = Some(s.log().last().expect("just blew up").exceptional.clone());
                    }
                    state = Some(s);
                }
                Command::Contract(names) => {
                    if contract.is_some() {
                        return Err(err(line, "contract given twice"));
                    }
                    contract = Some((line, names.clone()));
                }
                Command::Expect(e) => expectations.push((line, e.clone())),
            }
        }
        let state = state.ok_or_else(|| err(0, "script has no `base`"))?;
        let (cline, names) = contract.unwrap_or((0, Vec::new()));
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let model = state.contract(&refs).map_err(|e| err(cline, e.to_string()))?;

        let mut report = Report::new(command);
        for (line, e) in &expectations {
            evaluate(&mut report, *line, e, &state, &model)?;
        }
        noether_check(&mut report, &model);
        Ok(Construction { state, model, report })
    }
}

/// Parses and runs a script file, resolving relative paths against its directory.
pub fn run_script_file(path: &Path) -> Result<Construction, ScriptError> {
    let text = std::fs::read_to_string(path).map_err(|e| err(0, format!("cannot read {}: {e}", path.display())))?;
    Script::parse(&text)?.run(&format!("construct {}", path.display()), path.parent())
}

fn parse_base(line: usize, rest: &str) -> Result<BaseSpec, ScriptError> {
    let mut words = rest.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("p2"), None, _) => Ok(BaseSpec::P2),
        (Some("hirzebruch"), Some(n), None) => Ok(BaseSpec::Hirzebruch(int(line, n, "Hirzebruch index")?)),
        (Some("abstract"), Some(file), None) => Ok(BaseSpec::Abstract(PathBuf::from(file))),
        _ => Err(err(line, format!("unknown base `{rest}`"))),
    }
}

fn load_base(line: usize, spec: &BaseSpec, dir: Option<&Path>) -> Result<BaseSurface, ScriptError> {
    match spec {
        BaseSpec::P2 => Ok(BaseSurface::ProjectivePlane),
        BaseSpec::Hirzebruch(n) => Ok(BaseSurface::Hirzebruch(*n)),
        BaseSpec::Abstract(file) => {
            let path = match dir {
                Some(d) if file.is_relative() => d.join(file),
                _ => file.clone(),
            };
            let text = std::fs::read_to_string(&path)
                .map_err(|e| err(line, format!("cannot read {}: {e}", path.display())))?;
            let data: AbstractBaseFile =
                toml::from_str(&text).map_err(|e| err(line, format!("{}: {e}", path.display())))?;
            BaseSurface::abstract_base(data.names, data.gram, data.canonical).map_err(|e| err(line, e.to_string()))
        }
    }
}

fn parse_curve(line: usize, rest: &str) -> Result<Command, ScriptError> {
    let (name, rest) = rest.split_once(char::is_whitespace).ok_or_else(|| err(line, "expected `curve NAME class ...`"))?;
    let rest = rest.trim();
    let spec = rest.strip_prefix("class").ok_or_else(|| err(line, "expected `class` after the curve name"))?;
    let (spec, genus) = match spec.split_once("genus") {
        Some((s, g)) => (s, Some(int(line, g, "genus")?)),
        None => (spec, None),
    };
    let (base, mults) = spec.split_once(';').unwrap_or((spec, ""));
    let base = base
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| int(line, s, "coefficient"))
        .collect::<Result<Vec<i64>, _>>()?;
    if base.is_empty() {
        return Err(err(line, "curve class has no coefficients"));
    }
    Ok(Command::Curve { name: name.to_string(), base, mults: list(line, mults, "multiplicity")?, genus })
}

fn parse_along(line: usize, rest: &str) -> Result<Command, ScriptError> {
    let (body, prefix) = split_as(rest);
    let mut words = body.split_whitespace();
    let curve = words.next().ok_or_else(|| err(line, "expected a curve name"))?.to_string();
    let times: usize = words
        .next()
        .and_then(|w| w.strip_prefix('x'))
        .ok_or_else(|| err(line, "expected `xR` after the curve name"))
        .and_then(|r| int(line, r, "repetition count"))?;
    let mut mults = vec![1; times];
    let mut with = Vec::new();
    let mut mode = "";
    for w in words {
        match w {
            "mults" | "with" => mode = w,
            _ if mode == "mults" => mults = list(line, w, "multiplicity")?,
            _ if mode == "with" => {
                let (name, ms) = w.split_once(':').ok_or_else(|| err(line, format!("expected NAME:A1,..., found `{w}`")))?;
                with.push((name.to_string(), list(line, ms, "multiplicity")?));
            }
            _ => return Err(err(line, format!("unexpected `{w}`"))),
        }
    }
    if mults.len() != times || with.iter().any(|(_, ms): &(String, Vec<u32>)| ms.len() != times) {
        return Err(err(line, format!("every multiplicity list must have {times} entries")));
    }
    if mults.contains(&0) {
        return Err(err(line, format!("`{curve}` must pass through every centre")));
    }
    Ok(Command::BlowUpAlong { curve, mults, with, prefix })
}

fn parse_expect(line: usize, rest: &str) -> Result<Expectation, ScriptError> {
    let (what, arg) = rest.split_once(char::is_whitespace).ok_or_else(|| err(line, "incomplete `expect`"))?;
    let arg = arg.trim();
    let rat = |s: &str| rational::parse(s).map_err(|e| err(line, e.to_string()));
    let two = || {
        arg.split_once(char::is_whitespace)
            .map(|(a, b)| (a.to_string(), b.trim().to_string()))
            .ok_or_else(|| err(line, format!("`expect {what}` needs a curve and a value")))
    };
    match what {
        "dynkin" => Ok(Expectation::Dynkin(arg.trim_matches('"').to_string())),
        "degree" => {
            let (name, v) = two()?;
            Ok(Expectation::Degree(name, rat(&v)?))
        }
        "ksq" => Ok(Expectation::Ksq(rat(arg)?)),
        "rank" => Ok(Expectation::Rank(int(line, arg, "rank")?)),
        "logdp" => Ok(Expectation::LogDp(int(line, arg, "boolean")?)),
        "genus" => {
            let (name, v) = two()?;
            Ok(Expectation::Genus(name, int(line, &v, "genus")?))
        }
        "selfint" => {
            let (name, v) = two()?;
            Ok(Expectation::SelfInt(name, int(line, &v, "self-intersection")?))
        }
        other => Err(err(line, format!("unknown expectation `{other}`"))),
    }
}

fn evaluate(
    report: &mut Report,
    line: usize,
    e: &Expectation,
    state: &SurfaceState,
    model: &SingularModel,
) -> Result<(), ScriptError> {
    let lattice = |e: super::LatticeError| err(line, e.to_string());
    match e {
        Expectation::Dynkin(text) => {
            let expected: DynkinType = text.parse().map_err(|e| err(line, format!("{e}")))?;
            let actual = model.dynkin_type().map_err(|e| err(line, e.to_string()))?;
            report.compare("dynkin", "", expected.to_string(), actual.to_string());
        }
        Expectation::Degree(name, v) => {
            let d = model.anticanonical_degree(name).map_err(lattice)?;
            report.compare("degree", name, rational::format(v), rational::format(&d));
        }
        Expectation::Ksq(v) => {
            report.compare("ksq", "", rational::format(v), rational::format(&model.anticanonical_selfint()));
        }
        Expectation::Rank(n) => {
            report.compare("rank", "", n.to_string(), model.picard_rank().to_string());
        }
        Expectation::LogDp(b) => {
            let (ok, sub) = model.is_rank_one_log_dp();
            let reasons: Vec<String> = sub.failures().map(|c| format!("{} {}", c.id, c.inputs).trim().to_string()).collect();
            let actual = if ok { "true".to_string() } else { format!("false ({})", reasons.join("; ")) };
            report.record("logdp", "", b.to_string(), actual, ok == *b);
        }
        Expectation::Genus(name, g) => {
            report.compare("genus", name, g.to_string(), state.genus(name).map_err(lattice)?.to_string());
        }
        Expectation::SelfInt(name, n) => {
            report.compare("selfint", name, n.to_string(), state.self_int(name).map_err(lattice)?.to_string());
        }
    }
    Ok(())
}

/// On a rank-one model with klt components, `K^2 + sum Gap = 9`.
fn noether_check(report: &mut Report, model: &SingularModel) {
    let klt = model.components().iter().all(|c| c.discrepancies.klt);
    if model.picard_rank() != 1 || !klt {
        return;
    }
    let Ok(d) = model.dynkin_type() else { return };
    match noether_defect(&model.anticanonical_selfint(), &d) {
        Ok(defect) => {
            let total = defect + rational::int(9);
            report.compare("noether", "K^2 + sum Gap", "9/1", rational::format(&total));
        }
        Err(e) => report.record("noether", "K^2 + sum Gap", "9/1", e.to_string(), false),
    }
}

//! The searches performed in the classification argument, with their
//! stated bounds, and the expected solution sets bundled as data.

use std::sync::OnceLock;

use serde::Deserialize;

use super::divisibility::{divisibility_search, DivisibilitySpec};
use super::ksq::{ksq_raw, KsqFamily};
use super::noether_defect;
use super::search::{run_search, run_search_parallel, Constraint, SearchSpec, SolutionSet, Variable};
use crate::dualgraph::{DualGraph, DynkinType};
use crate::rational::{self, int, Rational};
use crate::report::Report;

const SEARCHES: &str = include_str!("../../data/searches.toml");

pub const SEARCH_IDS: [&str; 8] = ["D1", "D2", "D3", "D4", "D5", "GEN-1", "GEN-2", "GEN-3"];

#[derive(Debug, Clone, Deserialize)]
pub struct ExpectedSearch {
    pub id: String,
    pub family: String,
    pub variables: Vec<String>,
    pub solutions: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct SearchFile {
    search: Vec<ExpectedSearch>,
}

pub fn expected(id: &str) -> Option<ExpectedSearch> {
    toml::from_str::<SearchFile>(SEARCHES)
        .expect("bundled search data parses")
        .search
        .into_iter()
        .find(|s| s.id == id)
}

/// Gaps of `[3,2^k]` for `k = 0..=8`, computed from the graphs themselves.
pub fn chain_gaps() -> &'static [Rational] {
    static GAPS: OnceLock<Vec<Rational>> = OnceLock::new();
    GAPS.get_or_init(|| (0..=8).map(|k| three_twos(k).gap().expect("[3,2^k] is contractible")).collect())
}

fn three_twos(k: usize) -> DualGraph {
    let mut w = vec![3];
    w.extend(std::iter::repeat_n(2, k));
    DualGraph::chain(w).expect("valid chain")
}

/// Layout of a search tuple: where `v` and the `n_k` block sit, and how
/// many `n_k` there are.
#[derive(Debug, Clone, Copy)]
struct Layout {
    v: usize,
    n0: usize,
    count: usize,
}

impl Layout {
    fn weighted_sum(&self, t: &[i64], upto: usize) -> i64 {
        (1..upto.min(self.count)).filter(|&k| self.n0 + k < t.len()).map(|k| k as i64 * t[self.n0 + k]).sum()
    }

    fn gap_sum(&self, t: &[i64]) -> Rational {
        let gaps = chain_gaps();
        let mut sum = int(t[self.v]);
        for k in 0..self.count {
            let n = t[self.n0 + k];
            if n != 0 {
                sum += &gaps[k] * Rational::from_integer(n.into());
            }
        }
        sum
    }

    /// Ranges from `3v + 2n_0 < 27` and `v + sum k n_k < 9`; `n_k` is pinned
    /// to 0 when `allowed(prefix, k)` is false.
    fn n_variables(
        self,
        allowed: impl Fn(&[i64], usize) -> bool + Send + Sync + Clone + 'static,
    ) -> Vec<Variable> {
        (0..self.count)
            .map(|k| {
                let allowed = allowed.clone();
                Variable::new(format!("n{k}"), move |p: &[i64]| {
                    if !allowed(p, k) {
                        return (0, 0);
                    }
                    let v = p[self.v];
                    if k == 0 {
                        (0, (26 - 3 * v).div_euclid(2))
                    } else {
                        (0, (8 - v - self.weighted_sum(p, k)).div_euclid(k as i64))
                    }
                })
            })
            .collect()
    }

    fn stated_constraints(self, depth: usize) -> Vec<Constraint> {
        vec![
            Constraint::new("v < 9", self.v + 1, move |p| p[self.v] < 9),
            Constraint::new("3v + 2n0 < 27", self.n0 + 1, move |p| 3 * p[self.v] + 2 * p[self.n0] < 27),
            Constraint::new("v + sum k n_k < 9", depth, move |p| p[self.v] + self.weighted_sum(p, self.count) < 9),
        ]
    }
}

/// Configuration I: worst point `[3,2^r]`, `g >= 1`.
pub fn search_d1() -> SearchSpec {
    let lay = Layout { v: 2, n0: 3, count: 9 };
    let mut vars = vec![Variable::fixed("g", 1, 9), Variable::fixed("r", 0, 8), Variable::fixed("v", 0, 8)];
    vars.extend(lay.n_variables(|p, k| k as i64 <= p[1]));
    let depth = vars.len();
    let mut cons = vec![
        Constraint::new("r < 9", 2, |p| p[1] < 9),
        Constraint::new("1 <= g <= v + 1", 3, |p| 1 <= p[0] && p[0] <= p[2] + 1),
        Constraint::new("n_k = 0 for k > r", depth, |p| (0..9).all(|k| k as i64 <= p[1] || p[3 + k] == 0)),
    ];
    cons.extend(lay.stated_constraints(depth));
    SearchSpec::new(
        "D1",
        "K^2 = g/((2r+3)(4(r+1)-g(2r+3))), K^2 + v + sum n_k Gap([3,2^k]) = 9",
        vars,
        cons,
        int(9),
        |t| ksq_raw(KsqFamily::ConfigI, t[0], t[1]),
        move |t| lay.gap_sum(t),
    )
}

/// Configuration II, first case: worst point `[3,2^g]`, `g >= 2`.
pub fn search_d2() -> SearchSpec {
    let lay = Layout { v: 1, n0: 2, count: 9 };
    let mut vars = vec![Variable::fixed("g", 2, 8), Variable::fixed("v", 0, 8)];
    vars.extend(lay.n_variables(|p, k| k as i64 <= p[0]));
    let depth = vars.len();
    let mut cons = vec![
        Constraint::new("2 <= g < 9", 1, |p| (2..9).contains(&p[0])),
        Constraint::new("n_k = 0 for k > g", depth, |p| (0..9).all(|k| k as i64 <= p[0] || p[2 + k] == 0)),
    ];
    cons.extend(lay.stated_constraints(depth));
    SearchSpec::new(
        "D2",
        "K^2 = 2/((2g+3)(2g-1)), K^2 + v + sum n_k Gap([3,2^k]) = 9",
        vars,
        cons,
        int(9),
        |t| ksq_raw(KsqFamily::ConfigII, t[0], 0),
        move |t| lay.gap_sum(t),
    )
}

/// Configuration III with `x0 = [4]`; `v` stands for `v0 + v1`.
pub fn search_d3() -> SearchSpec {
    let lay = Layout { v: 1, n0: 2, count: 8 };
    let mut vars = vec![Variable::fixed("g", 2, 63), Variable::fixed("v", 1, 8)];
    vars.extend(lay.n_variables(|_, _| true));
    let depth = vars.len();
    let mut cons = vec![
        Constraint::new("2 <= g <= 63", 1, |p| (2..=63).contains(&p[0])),
        Constraint::new("v >= 1", 2, |p| p[1] >= 1),
        Constraint::new("n4 + n5 + n6 + n7 <= 1", depth, |p| p[6..10].iter().sum::<i64>() <= 1),
    ];
    cons.extend(lay.stated_constraints(depth));
    SearchSpec::new(
        "D3",
        "K^2 = 1/((2g+1)(2g-1)), K^2 + v + sum n_k Gap([3,2^k]) = 9",
        vars,
        cons,
        int(9),
        |t| ksq_raw(KsqFamily::Four, t[0], 0),
        move |t| lay.gap_sum(t),
    )
}

/// Configuration III with `x0 = [3,2^r]`.
pub fn search_d4() -> SearchSpec {
    let lay = Layout { v: 2, n0: 3, count: 9 };
    let mut vars = vec![Variable::fixed("g", 2, 9), Variable::fixed("r", 0, 8), Variable::fixed("v", 1, 8)];
    vars.extend(lay.n_variables(|p, k| k as i64 <= p[1]));
    let depth = vars.len();
    let mut cons = vec![
        Constraint::new("2 <= g <= r + 1", 2, |p| 2 <= p[0] && p[0] <= p[1] + 1),
        Constraint::new("v >= 1", 3, |p| p[2] >= 1),
        Constraint::new("n_k = 0 for k > r", depth, |p| (0..9).all(|k| k as i64 <= p[1] || p[3 + k] == 0)),
    ];
    cons.extend(lay.stated_constraints(depth));
    SearchSpec::new(
        "D4",
        "K^2 = 2(r+g+2)^2/((2r+3)(2g+1)(4gr+4g-1)), K^2 + v + sum n_k Gap([3,2^k]) = 9",
        vars,
        cons,
        int(9),
        |t| ksq_raw(KsqFamily::Chain3Twos, t[0], t[1]),
        move |t| lay.gap_sum(t),
    )
}

pub fn search_spec(id: &str) -> Option<SearchSpec> {
    match id {
        "D1" => Some(search_d1()),
        "D2" => Some(search_d2()),
        "D3" => Some(search_d3()),
        "D4" => Some(search_d4()),
        _ => None,
    }
}

pub fn divisibility_spec(id: &str) -> Option<DivisibilitySpec> {
    let base = 3 * 5 * 7;
    match id {
        "GEN-1" => Some(DivisibilitySpec::new(
            "GEN-1",
            "5/((2g+1)(18g-1)) in (1/(3^2*5*7*11))Z",
            |_| 5,
            |g| (2 * g + 1) * (18 * g - 1),
            3 * base * 11,
            None,
            (2, 21),
        )),
        "GEN-2" => Some(DivisibilitySpec::new(
            "GEN-2",
            "3/((2g+1)(10g-1)) in (1/(3*5*7*a))Z, a in {3,11,13}",
            |_| 3,
            |g| (2 * g + 1) * (10 * g - 1),
            base,
            Some(vec![3, 11, 13]),
            (2, 14),
        )),
        "GEN-3" => Some(DivisibilitySpec::new(
            "GEN-3",
            "2/((2g+1)(6g-1)) in (1/(3^2*5*7*a))Z, a in {11,13,17}",
            |_| 2,
            |g| (2 * g + 1) * (6 * g - 1),
            3 * base,
            Some(vec![11, 13, 17]),
            (2, 20),
        )),
        _ => None,
    }
}

/// The Dynkin type implied by a solution tuple: `n_k` copies of `[3,2^k]`,
/// a Du Val chain `[2^v]` realizing the Du Val contribution, and the worst
/// point `[4]` for D3 (the other searches count their worst point among the
/// `n_k`).
pub fn assembled_dynkin(id: &str, tuple: &[i64]) -> Option<DynkinType> {
    let (v, n0, count, extra) = match id {
        "D1" | "D4" => (2, 3, 9, None),
        "D2" => (1, 2, 9, None),
        "D3" => (1, 2, 8, Some(DualGraph::chain(vec![4]).expect("valid"))),
        _ => return None,
    };
    let mut graphs: Vec<DualGraph> = extra.into_iter().collect();
    for k in 0..count {
        for _ in 0..tuple[n0 + k] {
            graphs.push(three_twos(k));
        }
    }
    if tuple[v] > 0 {
        graphs.push(DualGraph::chain(vec![2; tuple[v] as usize]).expect("valid"));
    }
    DynkinType::from_graphs(graphs).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown search `{0}`; expected one of D1, D2, D3, D4, D5, GEN-1, GEN-2, GEN-3")]
pub struct UnknownSearch(pub String);

pub fn solve_preset(id: &str, parallel: bool) -> Result<SolutionSet, UnknownSearch> {
    if let Some(spec) = search_spec(id) {
        return Ok(if parallel { run_search_parallel(&spec) } else { run_search(&spec) });
    }
    divisibility_spec(id).map(|s| divisibility_search(&s)).ok_or_else(|| UnknownSearch(id.to_string()))
}

fn tuple_text(t: &[i64]) -> String {
    format!("({})", t.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

pub fn solutions_text(s: &[Vec<i64>]) -> String {
    format!("{{{}}}", s.iter().map(|t| tuple_text(t)).collect::<Vec<_>>().join(", "))
}

/// Runs a preset and compares it with the bundled expected set.
pub fn verify_search(id: &str, parallel: bool) -> Result<Report, UnknownSearch> {
    let mut report = Report::new(format!("search {id}"));
    if id == "D5" {
        verify_d5(&mut report, parallel);
        return Ok(report);
    }
    let set = solve_preset(id, parallel)?;
    let exp = expected(id).expect("every preset has expected data");
    let inputs = format!("variables ({}); scanned {}", set.variables.join(","), set.scanned_count);
    report.compare(format!("{id}: variables"), "", exp.variables.join(","), set.variables.join(","));
    report.compare(format!("{id}: solution set"), inputs, solutions_text(&exp.solutions), solutions_text(&set.solutions));
    if let Some(spec) = search_spec(id) {
        for t in &set.solutions {
            let ksq = spec.ksq(t).positive();
            report.record(
                format!("{id}: K^2 > 0"),
                tuple_text(t),
                "positive",
                ksq.as_ref().map_or("nonpositive".to_string(), rational::format),
                ksq.is_some(),
            );
        }
    }
    Ok(report)
}

/// Every solution of D1 to D4 satisfies the Noether identity once assembled
/// into a Dynkin type.
fn verify_d5(report: &mut Report, parallel: bool) {
    for id in ["D1", "D2", "D3", "D4"] {
        let spec = search_spec(id).expect("preset");
        let set = if parallel { run_search_parallel(&spec) } else { run_search(&spec) };
        for t in &set.solutions {
            let inputs = tuple_text(t);
            let (Some(ksq), Some(dyn_type)) = (spec.ksq(t).positive(), assembled_dynkin(id, t)) else {
                report.record(format!("{id}: Noether defect"), inputs, "0/1", "not assembled", false);
                continue;
            };
            let defect = noether_defect(&ksq, &dyn_type)
                .map(|d| rational::format(&d))
                .unwrap_or_else(|e| e.to_string());
            report.compare(format!("{id}: Noether defect"), format!("{inputs} {dyn_type}"), "0/1", defect);
        }
        if set.solutions.is_empty() {
            report.skip(format!("{id}: Noether defect"), "", "no solutions");
        }
    }
}


#[cfg(test)]
mod preset_runs {
    use super::*;

    #[test]
    fn every_preset_matches_expected() {
        for id in SEARCH_IDS {
            let r = verify_search(id, false).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }
}

//! Exhaustive enumeration of integer tuples satisfying a Noether-type
//! equation `K^2 + (gap contributions) = target`.

use std::sync::Arc;

use rayon::prelude::*;

use super::ksq::KsqValue;
use crate::rational::Rational;

type RangeFn = Arc<dyn Fn(&[i64]) -> (i64, i64) + Send + Sync>;
type Predicate = Arc<dyn Fn(&[i64]) -> bool + Send + Sync>;
type KsqFn = Arc<dyn Fn(&[i64]) -> KsqValue + Send + Sync>;
type GapFn = Arc<dyn Fn(&[i64]) -> Rational + Send + Sync>;

/// An integer variable whose inclusive range may depend on the values of
/// the variables declared before it.
#[derive(Clone)]
pub struct Variable {
    pub name: String,
    range: RangeFn,
}

impl Variable {
    pub fn new(name: impl Into<String>, range: impl Fn(&[i64]) -> (i64, i64) + Send + Sync + 'static) -> Self {
        Variable { name: name.into(), range: Arc::new(range) }
    }

    pub fn fixed(name: impl Into<String>, lo: i64, hi: i64) -> Self {
        Self::new(name, move |_| (lo, hi))
    }

    pub fn range(&self, prefix: &[i64]) -> (i64, i64) {
        (self.range)(prefix)
    }
}

/// A side condition checked once the first `depth` variables are assigned.
#[derive(Clone)]
pub struct Constraint {
    pub description: String,
    pub depth: usize,
    pred: Predicate,
}

impl Constraint {
    pub fn new(
        description: impl Into<String>,
        depth: usize,
        pred: impl Fn(&[i64]) -> bool + Send + Sync + 'static,
    ) -> Self {
        Constraint { description: description.into(), depth, pred: Arc::new(pred) }
    }

    pub fn holds(&self, values: &[i64]) -> bool {
        (self.pred)(values)
    }
}

#[derive(Clone)]
pub struct SearchSpec {
    pub id: String,
    pub description: String,
    pub variables: Vec<Variable>,
    pub constraints: Vec<Constraint>,
    pub target: Rational,
    ksq: KsqFn,
    gaps: GapFn,
}

impl SearchSpec {
    pub fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        variables: Vec<Variable>,
        constraints: Vec<Constraint>,
        target: Rational,
        ksq: impl Fn(&[i64]) -> KsqValue + Send + Sync + 'static,
        gaps: impl Fn(&[i64]) -> Rational + Send + Sync + 'static,
    ) -> Self {
        SearchSpec {
            id: id.into(),
            description: description.into(),
            variables,
            constraints,
            target,
            ksq: Arc::new(ksq),
            gaps: Arc::new(gaps),
        }
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.variables.iter().map(|v| v.name.clone()).collect()
    }

    pub fn ksq(&self, tuple: &[i64]) -> KsqValue {
        (self.ksq)(tuple)
    }

    pub fn gap_sum(&self, tuple: &[i64]) -> Rational {
        (self.gaps)(tuple)
    }

    /// `K^2 + gaps - target` for a complete tuple, or `None` when `K^2` is
    /// not positive.
    pub fn residual(&self, tuple: &[i64]) -> Option<Rational> {
        let k = self.ksq(tuple).positive()?;
        Some(k + self.gap_sum(tuple) - &self.target)
    }

    /// Whether a complete tuple is in range, meets every constraint and
    /// solves the equation.
    pub fn accepts(&self, tuple: &[i64]) -> bool {
        tuple.len() == self.variables.len()
            && self.variables.iter().enumerate().all(|(i, v)| {
                let (lo, hi) = v.range(&tuple[..i]);
                (lo..=hi).contains(&tuple[i])
            })
            && self.constraints.iter().all(|c| c.holds(&tuple[..c.depth.min(tuple.len())]))
            && self.residual(tuple).is_some_and(|r| r == Rational::from_integer(0.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SolutionSet {
    pub search_id: String,
    pub variables: Vec<String>,
    pub solutions: Vec<Vec<i64>>,
    pub scanned_count: u64,
}

struct Walker<'a> {
    spec: &'a SearchSpec,
    by_depth: Vec<Vec<&'a Constraint>>,
    found: Vec<Vec<i64>>,
    scanned: u64,
}

impl<'a> Walker<'a> {
    fn new(spec: &'a SearchSpec) -> Self {
        let n = spec.variables.len();
        let mut by_depth = vec![Vec::new(); n + 1];
        for c in &spec.constraints {
            by_depth[c.depth.min(n)].push(c);
        }
        Walker { spec, by_depth, found: Vec::new(), scanned: 0 }
    }

    fn descend(&mut self, prefix: &mut Vec<i64>) {
        let depth = prefix.len();
        if !self.by_depth[depth].iter().all(|c| c.holds(prefix)) {
            return;
        }
        if depth == self.spec.variables.len() {
            self.scanned += 1;
            if self.spec.residual(prefix).is_some_and(|r| r == Rational::from_integer(0.into())) {
                self.found.push(prefix.clone());
            }
            return;
        }
        let (lo, hi) = self.spec.variables[depth].range(prefix);
        for x in lo..=hi {
            prefix.push(x);
            self.descend(prefix);
            prefix.pop();
        }
    }
}

fn finish(spec: &SearchSpec, mut solutions: Vec<Vec<i64>>, scanned: u64) -> SolutionSet {
    solutions.sort();
    solutions.dedup();
    SolutionSet { search_id: spec.id.clone(), variables: spec.variable_names(), solutions, scanned_count: scanned }
}

pub fn run_search(spec: &SearchSpec) -> SolutionSet {
    let mut w = Walker::new(spec);
    w.descend(&mut Vec::new());
    let (found, scanned) = (w.found, w.scanned);
    finish(spec, found, scanned)
}

/// Same result as [`run_search`], with the first variable's range split
/// across worker threads.
pub fn run_search_parallel(spec: &SearchSpec) -> SolutionSet {
    let Some(first) = spec.variables.first() else {
        return run_search(spec);
    };
    let (lo, hi) = first.range(&[]);
    let parts: Vec<(Vec<Vec<i64>>, u64)> = (lo..=hi)
        .into_par_iter()
        .map(|x| {
            let mut w = Walker::new(spec);
            if w.by_depth[0].iter().all(|c| c.holds(&[])) {
                w.descend(&mut vec![x]);
            }
            (w.found, w.scanned)
        })
        .collect();
    let scanned = parts.iter().map(|p| p.1).sum();
    finish(spec, parts.into_iter().flat_map(|p| p.0).collect(), scanned)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    /// x/2 + y/3 = target with x, y in 0..=6.
    fn toy(target: Rational) -> SearchSpec {
        SearchSpec::new(
            "toy",
            "halves and thirds",
            vec![Variable::fixed("x", 0, 6), Variable::new("y", |p| (0, 6 - p[0]))],
            vec![Constraint::new("x even", 1, |p| p[0] % 2 == 0)],
            target,
            |_| KsqValue::Positive(int(1)),
            |t| q(t[0], 2) + q(t[1], 3),
        )
    }

    #[test]
    fn enumerates_all_and_counts_leaves() {
        let s = run_search(&toy(int(3)));
        // 1 + x/2 + y/3 = 3 with x even, x + y <= 6: (0,6), (4,0)... and (2,3)
        assert_eq!(s.solutions, vec![vec![0, 6], vec![2, 3], vec![4, 0]]);
        // x in {0,2,4,6}: 7 + 5 + 3 + 1 leaves
        assert_eq!(s.scanned_count, 16);
        assert_eq!(s.variables, vec!["x", "y"]);
    }

    #[test]
    fn parallel_matches_serial() {
        let spec = toy(int(3));
        assert_eq!(run_search(&spec), run_search_parallel(&spec));
    }

    #[test]
    fn empty_result_is_valid() {
        assert!(run_search(&toy(int(100))).solutions.is_empty());
    }

    #[test]
    fn accepts_checks_everything() {
        let spec = toy(int(3));
        assert!(spec.accepts(&[2, 3]));
        assert!(!spec.accepts(&[3, 1]));
        assert!(!spec.accepts(&[2, 5]));
        assert!(!spec.accepts(&[2]));
    }
}

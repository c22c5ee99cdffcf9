//! Searches of the form `num(g)/den(g) in (1/(base*a))Z`.

use std::sync::Arc;

use super::search::SolutionSet;

type Poly = Arc<dyn Fn(i64) -> i64 + Send + Sync>;

#[derive(Clone)]
pub struct DivisibilitySpec {
    pub id: String,
    pub description: String,
    numerator: Poly,
    denominator: Poly,
    pub base: i64,
    /// Candidate extra factors `a`; `None` means the modulus is `base` alone.
    pub factors: Option<Vec<i64>>,
    pub g_range: (i64, i64),
}

impl DivisibilitySpec {
    pub fn new(
        id: impl Into<String>,
        description: impl Into<String>,
        numerator: impl Fn(i64) -> i64 + Send + Sync + 'static,
        denominator: impl Fn(i64) -> i64 + Send + Sync + 'static,
        base: i64,
        factors: Option<Vec<i64>>,
        g_range: (i64, i64),
    ) -> Self {
        DivisibilitySpec {
            id: id.into(),
            description: description.into(),
            numerator: Arc::new(numerator),
            denominator: Arc::new(denominator),
            base,
            factors,
            g_range,
        }
    }

    /// `den(g)` divides `num(g) * base * a`.
    pub fn holds(&self, g: i64, a: i64) -> bool {
        let den = i128::from((self.denominator)(g));
        den != 0 && (i128::from((self.numerator)(g)) * i128::from(self.base) * i128::from(a)) % den == 0
    }
}

pub fn divisibility_search(spec: &DivisibilitySpec) -> SolutionSet {
    let (lo, hi) = spec.g_range;
    let mut solutions = Vec::new();
    let mut scanned = 0;
    for g in lo..=hi {
        match &spec.factors {
            None => {
                scanned += 1;
                if spec.holds(g, 1) {
                    solutions.push(vec![g]);
                }
            }
            Some(factors) => {
                for &a in factors {
                    scanned += 1;
                    if spec.holds(g, a) {
                        solutions.push(vec![g, a]);
                    }
                }
            }
        }
    }
    solutions.sort();
    solutions.dedup();
    let variables = match spec.factors {
        None => vec!["g".to_string()],
        Some(_) => vec!["g".to_string(), "a".to_string()],
    };
    SolutionSet { search_id: spec.id.clone(), variables, solutions, scanned_count: scanned }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quarter_multiples() {
        // 1/(2g) in (1/4)Z for g in 1..=4: g = 1, 2
        let spec = DivisibilitySpec::new("t", "", |_| 1, |g| 2 * g, 4, None, (1, 4));
        let s = divisibility_search(&spec);
        assert_eq!(s.solutions, vec![vec![1], vec![2]]);
        assert_eq!(s.scanned_count, 4);
    }

    #[test]
    fn factor_pairs() {
        let spec = DivisibilitySpec::new("t", "", |_| 1, |g| g, 1, Some(vec![2, 3]), (1, 3));
        let s = divisibility_search(&spec);
        assert_eq!(s.solutions, vec![vec![1, 2], vec![1, 3], vec![2, 2], vec![3, 3]]);
    }
}

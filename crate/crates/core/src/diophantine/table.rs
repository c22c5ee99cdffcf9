//! Instantiations of the `K^2` closed forms, checked against embedded values.

use std::sync::OnceLock;

use serde::Deserialize;

use super::ksq::{ksq_formula, KsqDomainError, KsqFamily, KsqValue};
use crate::rational;
use crate::report::Report;

#[derive(Debug, Clone, Deserialize)]
pub struct KsqRow {
    pub family: String,
    pub formula: String,
    pub values: Vec<KsqEntry>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct KsqEntry {
    pub g: i64,
    pub k: Option<i64>,
    pub value: String,
}

#[derive(Deserialize)]
struct TableFile {
    row: Vec<KsqRow>,
}

pub fn ksq_table() -> &'static [KsqRow] {
    static TABLE: OnceLock<Vec<KsqRow>> = OnceLock::new();
    TABLE.get_or_init(|| {
        toml::from_str::<TableFile>(include_str!("../../data/table_ksq.toml")).expect("embedded K^2 table parses").row
    })
}

/// Values of `k` shown for a row: the admissible range capped at 6.
fn shown_k(family: KsqFamily) -> Vec<Option<i64>> {
    if !family.uses_k() {
        return vec![None];
    }
    let (lo, hi) = family.k_range();
    (lo..=hi.min(6)).map(Some).collect()
}

fn label(g: i64, k: Option<i64>) -> String {
    match k {
        Some(k) => format!("g={g}, k={k}"),
        None => format!("g={g}"),
    }
}

fn show(v: KsqValue) -> String {
    match v {
        KsqValue::Positive(r) => rational::format(&r),
        KsqValue::NonPositive => "non-positive".to_string(),
    }
}

/// With `g = None`, checks every embedded value. With `Some(g)`, evaluates
/// each row at that genus; entries with no embedded value are reported as skipped.
pub fn verify_ksq_table(g: Option<i64>) -> Result<Report, KsqDomainError> {
    let command = match g {
        Some(g) => format!("table ksq --g {g}"),
        None => "table ksq".to_string(),
    };
    let mut report = Report::new(command);
    for (row, family) in ksq_table().iter().zip(KsqFamily::TABLE) {
        assert_eq!(row.family, family.id(), "table rows follow KsqFamily::TABLE");
        let cases: Vec<(i64, Option<i64>)> = match g {
            Some(g) => shown_k(family).into_iter().map(|k| (g, k)).collect(),
            None => row.values.iter().map(|e| (e.g, e.k)).collect(),
        };
        for (g, k) in cases {
            let actual = show(ksq_formula(family, g, k.unwrap_or(0))?);
            let id = format!("{} ({})", row.family, label(g, k));
            match row.values.iter().find(|e| e.g == g && e.k == k) {
                Some(e) => {
                    report.compare(id, &row.formula, &e.value, actual);
                }
                None => report.skip(id, &row.formula, format!("{actual} (no embedded value)")),
            }
        }
    }
    Ok(report)
}

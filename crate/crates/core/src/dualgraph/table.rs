//! The table of gaps for klt singularities with coefficient below 3/5.

use serde::Deserialize;

use super::parse_dynkin;
use crate::rational::{self, q};
use crate::report::Report;

const TABLE_E35: &str = include_str!("../../data/table_e35.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct TableRow {
    pub family: String,
    pub gap: String,
    pub floor: String,
    pub instances: Vec<TableInstance>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TableInstance {
    pub graph: String,
    pub label: String,
    pub gap: String,
    pub floor: i64,
}

#[derive(Deserialize)]
struct TableFile {
    row: Vec<TableRow>,
}

pub fn table_e35() -> Vec<TableRow> {
    toml::from_str::<TableFile>(TABLE_E35).expect("bundled table parses").row
}

/// Recomputes every instance and compares it with the bundled values.
pub fn verify_table_e35() -> Report {
    let mut report = Report::new("table e35");
    let bound = q(3, 5);
    for row in table_e35() {
        for inst in &row.instances {
            let id = if inst.label.is_empty() {
                row.family.clone()
            } else {
                format!("{} {}", row.family, inst.label)
            };
            let graph = match parse_dynkin(&inst.graph) {
                Ok(d) if d.len() == 1 => d.components()[0].clone(),
                Ok(_) => {
                    report.record(&id, &inst.graph, "one component", "several", false);
                    continue;
                }
                Err(e) => {
                    report.record(&id, &inst.graph, "graph", e.to_string(), false);
                    continue;
                }
            };
            let (gap, floor, coeff) = match (graph.gap(), graph.gap_floor(), graph.coefficient()) {
                (Ok(g), Ok(f), Ok(c)) => (g, f, c),
                _ => {
                    report.record(&id, &inst.graph, "negative definite", "not contractible", false);
                    continue;
                }
            };
            report.compare(format!("{id}: gap"), &inst.graph, &inst.gap, rational::format(&gap));
            report.compare(format!("{id}: floor"), &inst.graph, inst.floor.to_string(), floor.to_string());
            report.record(
                format!("{id}: coefficient < 3/5"),
                &inst.graph,
                "< 3/5",
                rational::format(&coeff),
                coeff < bound,
            );
        }
    }
    report
}

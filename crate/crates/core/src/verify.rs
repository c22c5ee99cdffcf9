//! Spot checks quoted in the text and the aggregate of every embedded check.

use std::sync::OnceLock;

use serde::Deserialize;

use crate::diophantine::{noether_defect, verify_ksq_table, verify_search, SEARCH_IDS};
use crate::dualgraph::table::verify_table_e35;
use crate::dualgraph::{DualGraph, DynkinType};
use crate::fixtures::{run_fixture, FIXTURES};
use crate::planecurve::{verify_special_config, FieldSpec};
use crate::rational::{self, q, Rational};
use crate::report::Report;

#[derive(Debug, Clone, Deserialize)]
pub struct GraphValue {
    pub graph: String,
    pub value: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct NoetherInstance {
    pub ksq: String,
    pub dynkin: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct SpotValues {
    pub coefficient: Vec<GraphValue>,
    pub gap: Vec<GraphValue>,
    pub noether: Vec<NoetherInstance>,
}

pub fn spot_values() -> &'static SpotValues {
    static SPOT: OnceLock<SpotValues> = OnceLock::new();
    SPOT.get_or_init(|| toml::from_str(include_str!("../data/spot_values.toml")).expect("embedded spot values parse"))
}

fn single(text: &str) -> Result<DualGraph, String> {
    let d: DynkinType = text.parse().map_err(|e| format!("{e}"))?;
    match d.components() {
        [g] => Ok(g.clone()),
        _ => Err("expected one component".to_string()),
    }
}

/// Coefficients, gaps and Noether identities quoted in the text.
pub fn verify_spot_values() -> Report {
    let mut r = Report::new("spot values");
    let spot = spot_values();
    for (kind, entries) in [("coefficient", &spot.coefficient), ("gap", &spot.gap)] {
        for e in entries {
            let value = single(&e.graph).and_then(|g| {
                let v = if kind == "gap" { g.gap() } else { g.coefficient() };
                v.map_err(|e| e.to_string())
            });
            match value {
                Ok(v) => {
                    r.compare(kind, &e.graph, &e.value, rational::format(&v));
                }
                Err(msg) => r.record(kind, &e.graph, &e.value, msg, false),
            }
        }
    }
    for n in &spot.noether {
        let inputs = format!("K^2 = {}, {}", n.ksq, n.dynkin);
        let outcome = rational::parse(&n.ksq)
            .map_err(|e| e.to_string())
            .and_then(|k| Ok((k, n.dynkin.parse::<DynkinType>().map_err(|e| format!("{e}"))?)))
            .and_then(|(k, d)| noether_defect(&k, &d).map_err(|e| e.to_string()));
        match outcome {
            Ok(defect) => {
                r.compare("noether", inputs, "9/1", rational::format(&(defect + rational::int(9))));
            }
            Err(msg) => r.record("noether", inputs, "9/1", msg, false),
        }
    }
    r
}

/// The chain `[3,2^(k-2),4,2^2]`.
pub fn remark_chain(k: u32) -> DualGraph {
    let mut w = vec![3];
    w.extend(std::iter::repeat_n(2, k as usize - 2));
    w.extend([4, 2, 2]);
    DualGraph::chain(w).expect("valid chain")
}

/// `1 - e(end of [3,2^(k-2),4,2^2]) - (5k-10)/(10k-18)`.
pub fn remark_expression(k: u32) -> Rational {
    let e = remark_chain(k).discrepancies().expect("contractible").values[0].clone();
    let k = k as i64;
    rational::int(1) - e - q(5 * k - 10, 10 * k - 18)
}

/// The closed forms for `k = 2..=6`, and positivity at `k = 3`.
pub fn verify_remark() -> Report {
    let mut r = Report::new("remark");
    for k in 2..=6u32 {
        let ki = k as i64;
        let graph = remark_chain(k);
        let e = graph.discrepancies().expect("contractible").values[0].clone();
        r.compare("end coefficient", format!("k={k}, {graph}"), rational::format(&q(7 * ki + 2, 14 * ki - 1)), rational::format(&e));
        r.compare(
            "expression",
            format!("k={k}"),
            rational::format(&q(11 * (4 - ki), (14 * ki - 1) * (10 * ki - 18))),
            rational::format(&remark_expression(k)),
        );
    }
    let at3 = remark_expression(3);
    r.record("positive at k=3", "k=3", "positive", rational::format(&at3), rational::is_positive(&at3));
    r
}

/// Every embedded check: tables, spot values, searches, constructions,
/// plane-curve configurations and the remark.
pub fn verify_all(parallel: bool) -> Report {
    let mut r = Report::new("verify-all");
    r.absorb("table e35", verify_table_e35());
    r.absorb("table ksq", verify_ksq_table(None).expect("embedded genera are in range"));
    r.absorb("spot", verify_spot_values());
    for id in SEARCH_IDS {
        r.absorb(&format!("search {id}"), verify_search(id, parallel).expect("preset id"));
    }
    for (name, _) in FIXTURES {
        match run_fixture(name).expect("bundled fixture") {
            Ok(c) => r.absorb(&format!("construct {name}"), c.report),
            Err(e) => r.record(format!("construct {name}"), "", "script runs", e.to_string(), false),
        }
    }
    for p in [0, 2, 3, 5] {
        let field = FieldSpec::from_characteristic(p).expect("0 or prime");
        match verify_special_config(field) {
            Ok(rep) => r.absorb(&format!("curves char {p}"), rep),
            Err(e) => r.record(format!("curves char {p}"), "", "configuration", e.to_string(), false),
        }
    }
    r.absorb("remark", verify_remark());
    r
}

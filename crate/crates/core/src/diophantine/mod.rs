//! Noether-type Diophantine equations `K^2 + sum Gap(x) = 9` and the
//! exhaustive searches built on them.

mod divisibility;
mod ksq;
pub mod presets;
mod search;
mod table;

pub use divisibility::{divisibility_search, DivisibilitySpec};
pub use ksq::{ksq_formula, ksq_from_sigma, ksq_raw, KsqDomainError, KsqFamily, KsqValue, ZeroSigma};
pub use presets::{solve_preset, verify_search, UnknownSearch, SEARCH_IDS};
pub use table::{ksq_table, verify_ksq_table, KsqEntry, KsqRow};
pub use search::{run_search, run_search_parallel, Constraint, SearchSpec, SolutionSet, Variable};

use crate::dualgraph::{DiscrepancyError, DynkinType};
use crate::rational::{int, Rational};

/// `K^2 + sum Gap - 9`; zero exactly when the Noether identity holds.
pub fn noether_defect(ksq: &Rational, d: &DynkinType) -> Result<Rational, DiscrepancyError> {
    let mut total = ksq.clone();
    for g in d.components() {
        total += g.gap()?;
    }
    Ok(total - int(9))
}

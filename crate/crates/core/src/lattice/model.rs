use num_traits::{One, Signed, Zero};

use super::surface::SurfaceState;
use super::{ContractError, LatticeError};
use crate::dualgraph::{DiscrepancyVector, DualGraph, DynkinType, GraphError};
use crate::linalg::{self, IntMatrix};
use crate::rational::{self, Rational};
use crate::report::Report;

/// One connected component of the contracted locus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractedComponent {
    pub curves: Vec<String>,
    pub graph: DualGraph,
    pub discrepancies: DiscrepancyVector,
}

/// A surface state together with a validated set of curves to contract.
#[derive(Debug, Clone)]
pub struct SingularModel {
    state: SurfaceState,
    contracted: Vec<String>,
    components: Vec<ContractedComponent>,
    /// Coefficient of each contracted curve in `Gamma`, aligned with `contracted`.
    gamma: Vec<Rational>,
}

impl SurfaceState {
    /// Contracts the named curves after checking that they form disjoint
    /// negative-definite trees of smooth rational curves.
    pub fn contract(&self, names: &[&str]) -> Result<SingularModel, ContractError> {
        let mut contracted: Vec<String> = Vec::with_capacity(names.len());
        for &n in names {
            if contracted.iter().any(|c| c == n) {
                return Err(ContractError::Duplicate(n.to_string()));
            }
            if !self.contains(n) {
                return Err(ContractError::Unknown(n.to_string()));
            }
            contracted.push(n.to_string());
        }
        let class = |n: &str| self.class_of(n).expect("checked above");
        for n in &contracted {
            let genus = self.class_genus(class(n)).map_err(ContractError::Lattice)?;
            if genus != 0 {
                return Err(ContractError::Genus { curve: n.clone(), genus });
            }
            let s = self.pair_classes(class(n), class(n));
            if s > -2 {
                return Err(ContractError::SelfIntersection { curve: n.clone(), value: s });
            }
        }
        let k = contracted.len();
        let mut matrix = IntMatrix::zeros(k);
        for i in 0..k {
            for j in 0..k {
                let v = self.pair_classes(class(&contracted[i]), class(&contracted[j]));
                if i != j && !(0..=1).contains(&v) {
                    return Err(ContractError::Pairing {
                        a: contracted[i].clone(),
                        b: contracted[j].clone(),
                        value: v,
                    });
                }
                matrix.set(i, j, v);
            }
        }

        // Connected components by flood fill over the adjacency.
        let mut comp_of = vec![usize::MAX; k];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for start in 0..k {
            if comp_of[start] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut members = vec![start];
            comp_of[start] = id;
            let mut i = 0;
            while i < members.len() {
                let v = members[i];
                for (u, slot) in comp_of.iter_mut().enumerate() {
                    if u != v && matrix.get(v, u) == 1 && *slot == usize::MAX {
                        *slot = id;
                        members.push(u);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            groups.push(members);
        }

        let mut components = Vec::with_capacity(groups.len());
        for members in &groups {
            let curves: Vec<String> = members.iter().map(|&i| contracted[i].clone()).collect();
            let weights: Vec<u32> = members.iter().map(|&i| (-matrix.get(i, i)) as u32).collect();
            let mut edges = Vec::new();
            for (a, &i) in members.iter().enumerate() {
                for (b, &j) in members.iter().enumerate().skip(a + 1) {
                    if matrix.get(i, j) == 1 {
                        edges.push((a, b));
                    }
                }
            }
            let graph = DualGraph::from_edges(weights, edges).map_err(|e| match e {
                GraphError::Cycle => ContractError::Cycle(curves.clone()),
                other => ContractError::Graph(other),
            })?;
            let discrepancies = graph
                .discrepancies()
                .map_err(|_| ContractError::NotNegativeDefinite(curves.clone()))?;
            components.push(ContractedComponent { curves, graph, discrepancies });
        }

        // (K + Gamma).E_j = 0 for every contracted E_j.
        let kc = self.canonical();
        let rhs: Vec<Rational> =
            contracted.iter().map(|n| rational::int(-self.pair_classes(&kc, class(n)))).collect();
        let gamma = linalg::solve(&matrix, &rhs).map_err(|_| ContractError::NotNegativeDefinite(contracted.clone()))?;

        Ok(SingularModel { state: self.clone(), contracted, components, gamma })
    }
}

impl SingularModel {
    pub fn state(&self) -> &SurfaceState {
        &self.state
    }

    pub fn contracted(&self) -> &[String] {
        &self.contracted
    }

    pub fn components(&self) -> &[ContractedComponent] {
        &self.components
    }

    pub fn is_contracted(&self, name: &str) -> bool {
        self.contracted.iter().any(|c| c == name)
    }

    pub fn gamma(&self, name: &str) -> Option<&Rational> {
        self.contracted.iter().position(|c| c == name).map(|i| &self.gamma[i])
    }

    pub fn picard_rank(&self) -> usize {
        self.state.rank() - self.contracted.len()
    }

    pub fn dynkin_type(&self) -> Result<DynkinType, GraphError> {
        DynkinType::from_graphs(self.components.iter().map(|c| c.graph.clone()))
    }

    fn gamma_dot(&self, class: &[i64]) -> Rational {
        self.contracted.iter().zip(&self.gamma).fold(Rational::zero(), |acc, (n, g)| {
            let e = self.state.class_of(n).expect("contracted curves are tracked");
            acc + g * Rational::from_integer(self.state.pair_classes(e, class).into())
        })
    }

    /// `K_S^2 = (K_Y + Gamma).K_Y`.
    pub fn anticanonical_selfint(&self) -> Rational {
        let k = self.state.canonical();
        rational::int(self.state.pair_classes(&k, &k)) + self.gamma_dot(&k)
    }

    /// `-(K_Y + Gamma).C` for any class.
    pub fn degree_of_class(&self, class: &[i64]) -> Rational {
        let k = self.state.canonical();
        -(rational::int(self.state.pair_classes(&k, class)) + self.gamma_dot(class))
    }

    /// Degree of `-K_S` on the image of a curve that is not contracted.
    pub fn anticanonical_degree(&self, name: &str) -> Result<Rational, LatticeError> {
        if self.is_contracted(name) {
            return Err(LatticeError::Contracted(name.to_string()));
        }
        Ok(self.degree_of_class(self.state.class_of(name)?))
    }

    /// Rank-one log del Pezzo test: Picard rank 1, klt components,
    /// `K_S^2 > 0` and positive degree on every tracked curve left over.
    pub fn is_rank_one_log_dp(&self) -> (bool, Report) {
        let mut r = Report::new("rank-one log del Pezzo");
        r.compare("rank", "", "1", self.picard_rank().to_string());
        for c in &self.components {
            let e = c.discrepancies.max();
            r.record(
                "klt",
                format!("{} ({})", c.graph, c.curves.join(",")),
                "coefficient < 1",
                rational::format(&e),
                e < Rational::one(),
            );
        }
        let ksq = self.anticanonical_selfint();
        r.record("K^2 > 0", "", "positive", rational::format(&ksq), ksq.is_positive());
        for c in self.state.curves() {
            if self.is_contracted(&c.name) {
                continue;
            }
            let d = self.degree_of_class(&c.class);
            r.record("degree > 0", &c.name, "positive", rational::format(&d), d.is_positive());
        }
        (r.passed(), r)
    }
}

//! Strategies and property checks shared by the property suite and the
//! acceptance target.

#![allow(dead_code)]

use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use ldp_core::dualgraph::BoundaryIncidence;
use ldp_core::lattice::{BaseSurface, SurfaceState};
use ldp_core::planecurve::{intersection_multiplicity, line_meets_conic, LinePattern};
use ldp_core::rational::{int, q};
use ldp_core::{DualGraph, FieldSpec, HomPoly, Multiplicity, ProjPoint, Rational};

pub type CaseResult = Result<(), TestCaseError>;

// ---- dual graphs ----

pub fn chain_weights() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(2u32..=6, 1..=8)
}

/// Chains and three-branch stars with weights at least 2 and a negative-definite matrix.
pub fn contractible_graph() -> impl Strategy<Value = DualGraph> {
    let chain = chain_weights().prop_map(|w| DualGraph::chain(w).unwrap());
    let branch = || prop::collection::vec(2u32..=4, 1..=3);
    let star = (2u32..=4, branch(), branch(), branch())
        .prop_map(|(c, a, b, d)| DualGraph::star(c, [a, b, d]).unwrap());
    prop_oneof![chain, star].prop_filter("negative definite", DualGraph::is_negative_definite)
}

pub fn du_val_graph() -> impl Strategy<Value = DualGraph> {
    prop_oneof![
        (1usize..=12).prop_map(|n| DualGraph::chain(vec![2; n]).unwrap()),
        (1usize..=8).prop_map(|k| DualGraph::star(2, [vec![2], vec![2], vec![2; k]]).unwrap()),
        (2usize..=4).prop_map(|k| DualGraph::star(2, [vec![2], vec![2; 2], vec![2; k]]).unwrap()),
    ]
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (0i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

/// A graph with two boundaries `t <= t'`.
pub fn graph_with_boundaries() -> impl Strategy<Value = (DualGraph, Vec<Rational>, Vec<Rational>)> {
    contractible_graph().prop_flat_map(|g| {
        let n = g.vertex_count();
        (
            Just(g),
            prop::collection::vec(small_rational(), n),
            prop::collection::vec(small_rational(), n),
        )
            .prop_map(|(g, t, extra)| {
                let t2 = t.iter().zip(&extra).map(|(a, b)| a + b).collect();
                (g, t, t2)
            })
    })
}

pub fn check_residual(g: &DualGraph, t: &[Rational]) -> CaseResult {
    let boundary = BoundaryIncidence::new(t.to_vec()).unwrap();
    let e = g.discrepancies_with_boundary(&boundary).unwrap();
    let lhs = g.intersection_matrix().mul_vec(&e.values);
    let rhs: Vec<Rational> = g.canonical_rhs().iter().zip(t).map(|(d, t)| d - t).collect();
    prop_assert_eq!(lhs, rhs, "graph {}", g);
    Ok(())
}

pub fn check_du_val(g: &DualGraph) -> CaseResult {
    let e = g.discrepancies().unwrap();
    prop_assert!(e.values.iter().all(Zero::is_zero), "graph {}", g);
    prop_assert_eq!(g.gap().unwrap(), int(g.vertex_count() as i64));
    Ok(())
}

pub fn check_chain_reversal(w: &[u32]) -> CaseResult {
    let a = DualGraph::chain(w.to_vec()).unwrap();
    let b = DualGraph::chain(w.iter().rev().copied().collect()).unwrap();
    prop_assert_eq!(a.determinant(), b.determinant());
    if !a.is_negative_definite() {
        prop_assert!(!b.is_negative_definite());
        return Ok(());
    }
    prop_assert_eq!(a.gap().unwrap(), b.gap().unwrap());
    prop_assert_eq!(a.coefficient().unwrap(), b.coefficient().unwrap());
    prop_assert_eq!(a.discrepancies().unwrap().klt, b.discrepancies().unwrap().klt);
    let mut reversed = b.discrepancies().unwrap().values;
    reversed.reverse();
    prop_assert_eq!(a.discrepancies().unwrap().values, reversed);
    Ok(())
}

pub fn check_boundary_monotone(g: &DualGraph, t: &[Rational], t2: &[Rational]) -> CaseResult {
    let zero = g.discrepancies_with_boundary(&BoundaryIncidence::zero(g.vertex_count())).unwrap();
    prop_assert_eq!(&zero, &g.discrepancies().unwrap());
    let e = g.discrepancies_with_boundary(&BoundaryIncidence::new(t.to_vec()).unwrap()).unwrap();
    let e2 = g.discrepancies_with_boundary(&BoundaryIncidence::new(t2.to_vec()).unwrap()).unwrap();
    for (a, b) in e.values.iter().zip(&e2.values) {
        prop_assert!(a <= b, "graph {}: {} > {}", g, a, b);
    }
    Ok(())
}

// ---- blow-ups ----

/// Degree of a plane curve, then `(multiplicity, infinitely near?)` for each centre.
pub fn blowup_sequence() -> impl Strategy<Value = (u32, Vec<(u32, bool)>)> {
    (1u32..=6, prop::collection::vec((1u32..=4, any::<bool>()), 0..=6))
}

/// Blows up points of multiplicity `m` on a plane curve of degree `d` and
/// checks that its genus drops by `m(m-1)/2` each time.
pub fn check_genus_drop(d: u32, steps: &[(u32, bool)]) -> CaseResult {
    let d = i64::from(d);
    let mut s = SurfaceState::new(BaseSurface::ProjectivePlane).declare_curve("C", vec![d], None).unwrap();
    let mut genus = (d - 1) * (d - 2) / 2;
    prop_assert_eq!(s.genus("C").unwrap(), genus);
    for (i, &(m, near)) in steps.iter().enumerate() {
        let prev = format!("E{i}");
        let mut incidence = vec![("C", m)];
        if near && i > 0 {
            incidence.push((prev.as_str(), 1));
        }
        let predicted = genus - i64::from(m * (m - 1) / 2);
        match s.blow_up(&incidence, None) {
            Ok(next) => {
                prop_assert!(predicted >= 0);
                prop_assert_eq!(next.genus("C").unwrap(), predicted);
                prop_assert_eq!(next.genus(&format!("E{}", i + 1)).unwrap(), 0);
                prop_assert_eq!(next.canonical_selfint(), 9 - (i as i64 + 1));
                genus = predicted;
                s = next;
            }
            Err(_) => {
                prop_assert!(predicted < 0, "rejected a blow-up leaving genus {}", predicted);
                break;
            }
        }
    }
    Ok(())
}

// ---- plane curves ----

pub fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![0u64, 2, 3, 5, 7, 11]).prop_map(|p| FieldSpec::from_characteristic(p).unwrap())
}

/// Coefficients for a plane curve of degree 1..=3 through `[0:0:1]`;
/// with the flag set, the linear part in the chart is dropped too.
pub type CurveSeed = (u32, Vec<i64>, bool);

pub fn curve_seed() -> impl Strategy<Value = CurveSeed> {
    (1u32..=3, prop::collection::vec(-3i64..=3, 10), prop::bool::weighted(0.3))
}

fn monomials(d: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for i in 0..=d {
        for j in 0..=d - i {
            out.push([i, j, d - i - j]);
        }
    }
    out
}

/// A curve through `[0:0:1]`; falls back to `x^d` if every coefficient vanishes.
pub fn curve_through_origin(field: FieldSpec, seed: &CurveSeed) -> HomPoly {
    let (d, coeffs, singular) = seed;
    let terms: Vec<(i64, [u32; 3])> = monomials(*d)
        .into_iter()
        .zip(coeffs.iter().copied())
        .filter(|(e, _)| e[2] != *d && !(*singular && *d > 1 && e[2] == d - 1))
        .map(|(e, c)| (c, e))
        .collect();
    HomPoly::from_i64_terms(field, &terms)
        .unwrap_or_else(|_| HomPoly::from_i64_terms(field, &[(1, [*d, 0, 0])]).unwrap())
}

pub fn origin(field: FieldSpec) -> ProjPoint {
    ProjPoint::from_i64(field, [0, 0, 1]).unwrap()
}

pub fn check_symmetry(field: FieldSpec, f: &CurveSeed, g: &CurveSeed) -> CaseResult {
    let (f, g) = (curve_through_origin(field, f), curve_through_origin(field, g));
    let o = origin(field);
    let a = intersection_multiplicity(&f, &g, &o).unwrap();
    let b = intersection_multiplicity(&g, &f, &o).unwrap();
    prop_assert_eq!(a, b, "{} and {}", f, g);
    prop_assert!(a >= Multiplicity::Finite(1));
    Ok(())
}

pub fn check_additivity(field: FieldSpec, f: &CurveSeed, g: &CurveSeed, h: &CurveSeed) -> CaseResult {
    let (f, g, h) = (curve_through_origin(field, f), curve_through_origin(field, g), curve_through_origin(field, h));
    let o = origin(field);
    let whole = intersection_multiplicity(&f, &g.mul(&h), &o).unwrap();
    let parts = intersection_multiplicity(&f, &g, &o).unwrap() + intersection_multiplicity(&f, &h, &o).unwrap();
    prop_assert_eq!(whole, parts, "F = {}, G = {}, H = {}", f, g, h);
    Ok(())
}

fn det3(field: FieldSpec, a: &[[Rational; 3]; 3]) -> Rational {
    let m = |x: &Rational, y: &Rational| field.mul(x, y);
    let minor = |c1: usize, c2: usize| field.sub(&m(&a[1][c1], &a[2][c2]), &m(&a[1][c2], &a[2][c1]));
    let t0 = m(&a[0][0], &minor(1, 2));
    let t1 = m(&a[0][1], &minor(0, 2));
    let t2 = m(&a[0][2], &minor(0, 1));
    field.add(&field.sub(&t0, &t1), &t2)
}

/// An invertible matrix from nine small integers; a singular draw is
/// replaced by the unitriangular matrix built from the same entries.
pub fn invertible(field: FieldSpec, entries: &[i64]) -> [[Rational; 3]; 3] {
    let a: [[Rational; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| field.from_i64(entries[3 * i + j])));
    if !det3(field, &a).is_zero() {
        return a;
    }
    std::array::from_fn(|i| {
        std::array::from_fn(|j| match i.cmp(&j) {
            std::cmp::Ordering::Equal => field.one(),
            std::cmp::Ordering::Less => field.from_i64(entries[3 * i + j]),
            std::cmp::Ordering::Greater => Rational::zero(),
        })
    })
}

/// `I_O(F, G) = I_q(F∘A, G∘A)` where `A q = O`; `q` is the cross product
/// of the first two rows of `A`.
pub fn check_coordinate_invariance(field: FieldSpec, f: &CurveSeed, g: &CurveSeed, entries: &[i64]) -> CaseResult {
    let (f, g) = (curve_through_origin(field, f), curve_through_origin(field, g));
    let a = invertible(field, entries);
    let (r1, r2) = (&a[0], &a[1]);
    let cross = |i: usize, j: usize| field.sub(&field.mul(&r1[i], &r2[j]), &field.mul(&r1[j], &r2[i]));
    let qpt = ProjPoint::new(field, [cross(1, 2), cross(2, 0), cross(0, 1)]).unwrap();
    let (fa, ga) = (f.linear_substitution(&a).unwrap(), g.linear_substitution(&a).unwrap());
    prop_assert!(fa.vanishes_at(&qpt) && ga.vanishes_at(&qpt));
    let before = intersection_multiplicity(&f, &g, &origin(field)).unwrap();
    let after = intersection_multiplicity(&fa, &ga, &qpt).unwrap();
    prop_assert_eq!(before, after, "F = {}, G = {}, A = {:?}", f, g, a);
    Ok(())
}

pub fn prime_field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(FieldSpec::Prime)
}

fn all_points(field: FieldSpec) -> Vec<ProjPoint> {
    let p = field.characteristic() as i64;
    let mut pts = Vec::new();
    for x in 0..p {
        for y in 0..p {
            pts.push(ProjPoint::from_i64(field, [x, y, 1]).unwrap());
        }
        pts.push(ProjPoint::from_i64(field, [x, 1, 0]).unwrap());
    }
    pts.push(ProjPoint::from_i64(field, [1, 0, 0]).unwrap());
    pts
}

/// Over a prime field, the multiplicities of `Q ∩ L` at rational points add
/// up to at most 2, to exactly 2 when the line is tangent, and never to 1.
pub fn check_line_conic_bound(field: FieldSpec, conic: &[i64], line: &[i64]) -> CaseResult {
    let qterms: Vec<(i64, [u32; 3])> = monomials(2).into_iter().zip(conic.iter().copied()).map(|(e, c)| (c, e)).collect();
    let lterms: Vec<(i64, [u32; 3])> = monomials(1).into_iter().zip(line.iter().copied()).map(|(e, c)| (c, e)).collect();
    let (Ok(qc), Ok(l)) = (HomPoly::from_i64_terms(field, &qterms), HomPoly::from_i64_terms(field, &lterms)) else {
        return Ok(());
    };
    let pattern = line_meets_conic(&qc, &l).unwrap();
    let on_line: Vec<ProjPoint> = all_points(field).into_iter().filter(|p| l.vanishes_at(p)).collect();
    let mut total = Multiplicity::Finite(0);
    for p in &on_line {
        total = total + intersection_multiplicity(&qc, &l, p).unwrap();
    }
    match pattern {
        LinePattern::Contained => prop_assert_eq!(total, Multiplicity::Infinite),
        LinePattern::Tangent => prop_assert_eq!(total, Multiplicity::Finite(2), "Q = {}, L = {}", qc, l),
        LinePattern::Transversal => {
            prop_assert!(total == Multiplicity::Finite(0) || total == Multiplicity::Finite(2), "Q = {}, L = {}: {}", qc, l, total)
        }
    }
    Ok(())
}

pub fn line_conic_seed() -> impl Strategy<Value = (FieldSpec, Vec<i64>, Vec<i64>)> {
    (prime_field_strategy(), prop::collection::vec(-3i64..=3, 6), prop::collection::vec(-3i64..=3, 3))
}

//! The cuspidal cubic and osculating conic of the special configuration,
//! checked over a given field.

use num_traits::Zero;

use super::field::FieldSpec;
use super::fulton::{intersection_multiplicity, line_meets_conic, LinePattern, Multiplicity};
use super::poly::{HomPoly, Poly, ProjPoint};
use super::CurveError;
use crate::rational::{self, Rational};
use crate::report::Report;

/// The curves and points of the configuration in explicit coordinates.
#[derive(Debug, Clone)]
pub struct SpecialConfig {
    pub field: FieldSpec,
    pub c: HomPoly,
    pub q: HomPoly,
    pub m_u: HomPoly,
    pub t: ProjPoint,
    pub u: ProjPoint,
    pub s: ProjPoint,
    pub l_su: Option<HomPoly>,
    pub l_tu: HomPoly,
    /// Order of vanishing of `Q` along the parametrization of `C` at `t`.
    pub t_order: u32,
}

/// A polynomial parametrization `(a:b) -> C` of the cuspidal cubic.
type Param = [Poly; 3];

fn param(field: FieldSpec, char3: bool) -> Param {
    let ab = |i: i64, j: u32, k: u32| Poly::from_i64_terms(field, &[(i, [j, k, 0])]);
    if char3 {
        [ab(1, 2, 1), ab(1, 3, 0), ab(1, 0, 3).add(&ab(-1, 1, 2))]
    } else {
        [ab(1, 2, 1), ab(1, 3, 0), ab(1, 0, 3)]
    }
}

/// Binary form in `(a, b)` as coefficients of `a^i b^(d-i)`.
fn binary_coeffs(f: &Poly, d: u32) -> Vec<Rational> {
    (0..=d).map(|i| f.coeff([i, d - i, 0])).collect()
}

/// Divides by the linear form vanishing at `(a0:b0)`, if it divides exactly.
fn divide_root(field: FieldSpec, c: &[Rational], a0: &Rational, b0: &Rational) -> Option<Vec<Rational>> {
    let d = c.len() - 1;
    if d == 0 {
        return None;
    }
    // c[i] = b0 q[i-1] - a0 q[i]
    let mut q = vec![Rational::zero(); d];
    if !a0.is_zero() {
        for i in 0..d {
            let prev = if i == 0 { Rational::zero() } else { field.mul(b0, &q[i - 1]) };
            q[i] = field.div(&field.sub(&prev, &c[i]), a0)?;
        }
        (field.mul(b0, &q[d - 1]) == c[d]).then_some(q)
    } else {
        for i in 1..=d {
            q[i - 1] = field.div(&c[i], b0)?;
        }
        c[0].is_zero().then_some(q)
    }
}

pub fn special_config(field: FieldSpec) -> Result<SpecialConfig, CurveError> {
    let char3 = field.characteristic() == 3;
    let (c, q, t, t_param) = if char3 {
        (
            HomPoly::parse(field, "x^3 - y^2*z - x^2*y")?,
            HomPoly::parse(field, "-x^2 + z^2 - y*z - z*x")?,
            ProjPoint::from_i64(field, [0, 1, 0])?,
            [1, 0],
        )
    } else {
        (
            HomPoly::parse(field, "x^3 - y^2*z")?,
            HomPoly::parse(field, "-45x^2 - 5y^2 + z^2 + 24xy + 40yz - 15zx")?,
            ProjPoint::from_i64(field, [1, 1, 1])?,
            [1, 1],
        )
    };
    let m_u = HomPoly::parse(field, "y")?;
    let u = ProjPoint::from_i64(field, [0, 0, 1])?;
    let phi = param(field, char3);

    // Q restricted to C is a sextic binary form; strip the factor at t.
    let mut form = binary_coeffs(&q.poly().compose(&phi), 6);
    let (a0, b0) = (field.from_i64(t_param[0]), field.from_i64(t_param[1]));
    let mut t_order = 0;
    while let Some(next) = divide_root(field, &form, &a0, &b0) {
        form = next;
        t_order += 1;
    }
    let s = match form.len() {
        1 => t.clone(),
        2 => {
            // form[0] b + form[1] a vanishes at (a:b) = (form[0] : -form[1])
            let (a, b) = (form[0].clone(), field.neg(&form[1]));
            let point = [Poly::constant(field, a), Poly::constant(field, b), Poly::zero(field)];
            let coords: [Rational; 3] = std::array::from_fn(|i| phi[i].compose(&point).coeff([0, 0, 0]));
            ProjPoint::new(field, coords)?
        }
        _ => return Err(CurveError::Configuration(format!("Q meets C at t only to order {t_order}"))),
    };
    let l_su = if s == u { None } else { Some(s.line_to(&u)?) };
    let l_tu = t.line_to(&u)?;
    Ok(SpecialConfig { field, c, q, m_u, t, u, s, l_su, l_tu, t_order })
}

/// Checks the incidence and tangency claims of the configuration over `field`.
pub fn verify_special_config(field: FieldSpec) -> Result<Report, CurveError> {
    let p = field.characteristic();
    let cfg = special_config(field)?;
    let mut r = Report::new(format!("curves verify-config --char {p}"));
    let inputs = format!("{field}");
    let fmt = |v: &Rational| rational::format(v);

    r.compare("t on C", &inputs, "0/1", fmt(&cfg.c.eval(&cfg.t)));
    r.compare("t on Q", &inputs, "0/1", fmt(&cfg.q.eval(&cfg.t)));
    r.compare("u on C", &inputs, "0/1", fmt(&cfg.c.eval(&cfg.u)));
    let mu = intersection_multiplicity(&cfg.c, &cfg.m_u, &cfg.u)?;
    r.compare("I_u(C, M_u)", &inputs, "3", mu.to_string());

    let it = intersection_multiplicity(&cfg.c, &cfg.q, &cfg.t)?;
    r.record("I_t(C, Q) >= 5", &inputs, ">= 5", it.to_string(), it >= Multiplicity::Finite(5));
    r.compare("I_t(C, Q) along the parametrization", &inputs, it.to_string(), cfg.t_order.to_string());

    let s_is_t = cfg.s == cfg.t;
    let expect_st = if p == 2 { "s = t" } else { "s != t" };
    let actual_st = if s_is_t { format!("s = t = {}", cfg.s) } else { format!("s != t, s = {}", cfg.s) };
    r.record("s = t iff char 2", &inputs, expect_st, actual_st, s_is_t == (p == 2));
    if !s_is_t {
        let is = intersection_multiplicity(&cfg.c, &cfg.q, &cfg.s)?;
        r.compare("I_s(C, Q)", &inputs, "1", is.to_string());
    }

    let tangent = |b: bool| if b { LinePattern::Tangent } else { LinePattern::Transversal };
    let mq = line_meets_conic(&cfg.q, &cfg.m_u)?;
    r.compare("M_u tangent to Q iff char 5", &inputs, tangent(p == 5).to_string(), mq.to_string());

    match &cfg.l_su {
        Some(l) => {
            let at_s = intersection_multiplicity(&cfg.q, l, &cfg.s)?;
            let expected = if p == 5 { 2 } else { 1 };
            r.compare("L_su tangent to Q at s iff char 5", &inputs, format!("I_s(Q, L_su) = {expected}"), format!("I_s(Q, L_su) = {at_s}"));
        }
        None => r.record("L_su tangent to Q at s iff char 5", &inputs, "s != u", "s = u", false),
    }

    let tu = line_meets_conic(&cfg.q, &cfg.l_tu)?;
    r.compare("Q meets L_tu in two points", &inputs, LinePattern::Transversal.to_string(), tu.to_string());
    Ok(r)
}

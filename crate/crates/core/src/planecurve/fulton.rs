use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use super::field::FieldSpec;
use super::poly::{HomPoly, Poly, ProjPoint};
use super::CurveError;
use crate::rational::Rational;

/// Local intersection number of two curves at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Multiplicity {
    Finite(u32),
    /// The curves share a component through the point.
    Infinite,
}

impl Add for Multiplicity {
    type Output = Multiplicity;
    fn add(self, other: Multiplicity) -> Multiplicity {
        match (self, other) {
            (Multiplicity::Finite(a), Multiplicity::Finite(b)) => Multiplicity::Finite(a + b),
            _ => Multiplicity::Infinite,
        }
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Multiplicity::Finite(n) => write!(f, "{n}"),
            Multiplicity::Infinite => write!(f, "INFINITE"),
        }
    }
}

/// How a line meets a conic, counted over the algebraic closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinePattern {
    /// Two distinct points, `{1,1}`.
    Transversal,
    /// One point of multiplicity two, `{2}`.
    Tangent,
    /// The line is a component of the conic.
    Contained,
}

impl fmt::Display for LinePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LinePattern::Transversal => "{1,1}",
            LinePattern::Tangent => "{2}",
            LinePattern::Contained => "INFINITE",
        })
    }
}

/// Moves `p` to the origin of its affine chart; the result only involves `x` and `y`.
fn localize(f: &HomPoly, p: &ProjPoint) -> Poly {
    let field = f.field();
    let c = p.chart();
    let mut free = (0..3).filter(|&i| i != c);
    let (i, j) = (free.next().unwrap(), free.next().unwrap());
    let mut subs: [Poly; 3] = std::array::from_fn(|_| Poly::zero(field));
    subs[c] = Poly::constant(field, field.one());
    subs[i] = Poly::var(field, 0).add(&Poly::constant(field, p.coords()[i].clone()));
    subs[j] = Poly::var(field, 1).add(&Poly::constant(field, p.coords()[j].clone()));
    f.poly().compose(&subs)
}

/// `F(x, 0)` as `(degree, leading coefficient, order)`, or `None` when it vanishes.
fn on_x_axis(f: &Poly) -> Option<(u32, Rational, u32)> {
    let xs = f.terms().iter().filter(|(e, _)| e[1] == 0);
    let (lo, hi) = xs.fold(None, |acc: Option<((u32, Rational), (u32, Rational))>, (e, c)| {
        let t = (e[0], c.clone());
        Some(match acc {
            None => (t.clone(), t),
            Some((lo, hi)) => (if t.0 < lo.0 { t.clone() } else { lo }, if t.0 > hi.0 { t } else { hi }),
        })
    })?;
    Some((hi.0, hi.1, lo.0))
}

/// Divides a polynomial with no pure-`x` terms by `y`.
fn divide_by_y(f: &Poly) -> Poly {
    Poly::from_terms(f.field(), f.terms().iter().map(|(e, c)| ([e[0], e[1] - 1, e[2]], c.clone())))
        .expect("coefficients already reduced")
}

/// Fulton's algorithm at the origin of the affine `(x, y)` plane.
///
/// Without a common component through the origin the answer is at most
/// `bound` (Bezout), so exceeding it means the curves share one.
fn fulton_at_origin(mut f: Poly, mut g: Poly, bound: u32) -> Multiplicity {
    let field: FieldSpec = f.field();
    let mut acc = 0;
    loop {
        if acc > bound {
            return Multiplicity::Infinite;
        }
        if !f.coeff([0, 0, 0]).is_zero() || !g.coeff([0, 0, 0]).is_zero() {
            return Multiplicity::Finite(acc);
        }
        if f.is_zero() || g.is_zero() {
            return Multiplicity::Infinite;
        }
        let (fr, gs) = match (on_x_axis(&f), on_x_axis(&g)) {
            (None, None) => return Multiplicity::Infinite,
            (None, Some(_)) => {
                std::mem::swap(&mut f, &mut g);
                continue;
            }
            // I(F, yH) = I(F, y) + I(F, H), and I(F, y) is the order of F(x, 0) at 0.
            (Some((_, _, ord)), None) => {
                acc += ord;
                g = divide_by_y(&g);
                continue;
            }
            (Some(fr), Some(gs)) => (fr, gs),
        };
        if fr.0 > gs.0 {
            std::mem::swap(&mut f, &mut g);
            continue;
        }
        // Cancel the leading x-term of G(x, 0) against F.
        let factor = field.div(&gs.1, &fr.1).expect("leading coefficient is nonzero");
        let shift = Poly::monomial(field, [gs.0 - fr.0, 0, 0], factor);
        g = g.sub(&shift.mul(&f));
    }
}

pub fn intersection_multiplicity(f: &HomPoly, g: &HomPoly, p: &ProjPoint) -> Result<Multiplicity, CurveError> {
    if f.field() != g.field() || f.field() != p.field() {
        return Err(CurveError::FieldMismatch);
    }
    Ok(fulton_at_origin(localize(f, p), localize(g, p), f.degree() * g.degree()))
}

/// Restricts `q` to the line `l` and classifies the resulting binary quadratic.
pub fn line_meets_conic(q: &HomPoly, l: &HomPoly) -> Result<LinePattern, CurveError> {
    if q.field() != l.field() {
        return Err(CurveError::FieldMismatch);
    }
    if l.degree() != 1 {
        return Err(CurveError::NotALine(l.to_string()));
    }
    if q.degree() != 2 {
        return Err(CurveError::NotAConic(q.to_string()));
    }
    let f = q.field();
    let a: [Rational; 3] = std::array::from_fn(|i| {
        let mut e = [0; 3];
        e[i] = 1;
        l.poly().coeff(e)
    });
    let zero = Rational::zero;
    // Two independent points spanning the line.
    let (v1, v2) = if !a[0].is_zero() {
        ([f.neg(&a[1]), a[0].clone(), zero()], [f.neg(&a[2]), zero(), a[0].clone()])
    } else if !a[1].is_zero() {
        ([f.one(), zero(), zero()], [zero(), f.neg(&a[2]), a[1].clone()])
    } else {
        ([f.one(), zero(), zero()], [zero(), f.one(), zero()])
    };
    let subs: [Poly; 3] = std::array::from_fn(|i| {
        Poly::var(f, 0).scale(&v1[i]).add(&Poly::var(f, 1).scale(&v2[i]))
    });
    let form = q.poly().compose(&subs);
    if form.is_zero() {
        return Ok(LinePattern::Contained);
    }
    let (alpha, beta, gamma) = (form.coeff([2, 0, 0]), form.coeff([1, 1, 0]), form.coeff([0, 2, 0]));
    // In characteristic 2 this reduces to beta^2, which vanishes exactly on perfect squares.
    let disc = f.sub(&f.mul(&beta, &beta), &f.mul(&f.from_i64(4), &f.mul(&alpha, &gamma)));
    Ok(if disc.is_zero() { LinePattern::Tangent } else { LinePattern::Transversal })
}

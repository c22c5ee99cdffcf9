use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::field::FieldSpec;
use super::CurveError;
use crate::rational::{self, Rational};

/// Exponents of `x`, `y`, `z`.
pub type Exponent = [u32; 3];

const VARS: [char; 3] = ['x', 'y', 'z'];

/// A sparse polynomial in `x, y, z` over a [`FieldSpec`]; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    terms: BTreeMap<Exponent, Rational>,
}

impl Poly {
    pub fn zero(field: FieldSpec) -> Poly {
        Poly { field, terms: BTreeMap::new() }
    }

    pub fn monomial(field: FieldSpec, exp: Exponent, coeff: Rational) -> Poly {
        let mut p = Poly::zero(field);
        p.add_term(exp, coeff);
        p
    }

    pub fn constant(field: FieldSpec, c: Rational) -> Poly {
        Self::monomial(field, [0, 0, 0], c)
    }

    /// `x`, `y` or `z` for `i = 0, 1, 2`.
    pub fn var(field: FieldSpec, i: usize) -> Poly {
        let mut e = [0; 3];
        e[i] = 1;
        Self::monomial(field, e, Rational::one())
    }

    /// Builds a polynomial from terms, reducing coefficients into the field.
    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Poly, CurveError> {
        let mut p = Poly::zero(field);
        for (e, c) in terms {
            p.add_term(e, field.reduce(&c)?);
        }
        Ok(p)
    }

    pub fn from_i64_terms(field: FieldSpec, terms: &[(i64, Exponent)]) -> Poly {
        let mut p = Poly::zero(field);
        for &(c, e) in terms {
            p.add_term(e, field.from_i64(c));
        }
        p
    }

    /// Adds `coeff * x^e` for a coefficient already in the field.
    fn add_term(&mut self, e: Exponent, coeff: Rational) {
        let sum = match self.terms.get(&e) {
            Some(c) => self.field.add(c, &coeff),
            None => self.field.add(&Rational::zero(), &coeff),
        };
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: Exponent) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degrees.next() {
            Some(d) => degrees.all(|x| x == d),
            None => true,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(*e, c.clone());
        }
        p
    }

    pub fn neg(&self) -> Poly {
        self.scale(&self.field.neg(&Rational::one()))
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut p = Poly::zero(self.field);
        for (e, a) in &self.terms {
            p.add_term(*e, self.field.mul(a, c));
        }
        p
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero(self.field);
        for (e1, a) in &self.terms {
            for (e2, b) in &other.terms {
                p.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], self.field.mul(a, b));
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(self.field, Rational::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, point: &[Rational; 3]) -> Rational {
        let f = self.field;
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut t = c.clone();
            for i in 0..3 {
                for _ in 0..e[i] {
                    t = f.mul(&t, &point[i]);
                }
            }
            f.add(&acc, &t)
        })
    }

    /// Substitutes `x, y, z` by the given polynomials.
    pub fn compose(&self, subs: &[Poly; 3]) -> Poly {
        let max = |i: usize| self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        let powers: Vec<Vec<Poly>> = (0..3)
            .map(|i| {
                let mut v = vec![Poly::constant(self.field, Rational::one())];
                for k in 1..=max(i) {
                    let next = v[k as usize - 1].mul(&subs[i]);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(self.field);
        for (e, c) in &self.terms {
            let t = powers[0][e[0] as usize].mul(&powers[1][e[1] as usize]).mul(&powers[2][e[2] as usize]);
            out = out.add(&t.scale(c));
        }
        out
    }

    pub fn parse(field: FieldSpec, text: &str) -> Result<Poly, CurveError> {
        Parser { text, pos: 0, field }.polynomial()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let (negative, abs) = match self.field {
                FieldSpec::Rationals if *c < Rational::zero() => (true, -c),
                _ => (false, c.clone()),
            };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || e.iter().all(|&k| k == 0) {
                factors.push(rational::format(&abs).trim_end_matches("/1").to_string());
            }
            for (v, &k) in VARS.iter().zip(e) {
                match k {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    k => factors.push(format!("{v}^{k}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    field: FieldSpec,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> CurveError {
        CurveError::Parse { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.text[start..self.pos])
    }

    fn polynomial(&mut self) -> Result<Poly, CurveError> {
        let mut p = Poly::zero(self.field);
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                None if !first => break,
                None => return Err(self.error("empty polynomial")),
                Some(_) if first => 1,
                Some(c) => return Err(self.error(format!("expected `+` or `-`, found `{c}`"))),
            };
            first = false;
            let (e, c) = self.term()?;
            let c = if sign < 0 { -c } else { c };
            p.add_term(e, self.field.reduce(&c)?);
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Exponent, Rational), CurveError> {
        self.skip_ws();
        let mut coeff = Rational::one();
        let mut seen = false;
        if let Some(n) = self.digits() {
            let n: i64 = n.parse().map_err(|_| self.error("coefficient too large"))?;
            coeff = rational::int(n);
            seen = true;
            if self.peek() == Some('/') {
                self.pos += 1;
                let d = self.digits().ok_or_else(|| self.error("expected a denominator"))?;
                let d: i64 = d.parse().map_err(|_| self.error("denominator too large"))?;
                if d == 0 {
                    return Err(self.error("zero denominator"));
                }
                coeff = rational::q(n, d);
            }
        }
        let mut e = [0u32; 3];
        loop {
            self.skip_ws();
            let save = self.pos;
            if self.peek() == Some('*') && seen {
                self.pos += 1;
                self.skip_ws();
            }
            let Some(i) = self.peek().and_then(|c| VARS.iter().position(|&v| v == c)) else {
                if self.pos != save {
                    return Err(self.error("expected a variable after `*`"));
                }
                break;
            };
            self.pos += 1;
            seen = true;
            let mut k = 1;
            if self.peek() == Some('^') {
                self.pos += 1;
                let d = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
                k = d.parse().map_err(|_| self.error("exponent too large"))?;
            }
            e[i] += k;
        }
        if !seen {
            return Err(match self.peek() {
                Some(c) => self.error(format!("unexpected `{c}`")),
                None => self.error("expected a term"),
            });
        }
        Ok((e, coeff))
    }
}

/// A nonzero homogeneous polynomial, i.e. a plane curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    poly: Poly,
    degree: u32,
}

impl HomPoly {
    pub fn new(poly: Poly) -> Result<HomPoly, CurveError> {
        let degree = poly.total_degree().ok_or(CurveError::ZeroPolynomial)?;
        if !poly.is_homogeneous() {
            return Err(CurveError::NotHomogeneous(poly.to_string()));
        }
        Ok(HomPoly { poly, degree })
    }

    pub fn parse(field: FieldSpec, text: &str) -> Result<HomPoly, CurveError> {
        Self::new(Poly::parse(field, text)?)
    }

    pub fn from_i64_terms(field: FieldSpec, terms: &[(i64, Exponent)]) -> Result<HomPoly, CurveError> {
        Self::new(Poly::from_i64_terms(field, terms))
    }

    /// The line `a x + b y + c z`.
    pub fn line(field: FieldSpec, coeffs: &[Rational; 3]) -> Result<HomPoly, CurveError> {
        Self::new(Poly::from_terms(field, (0..3).map(|i| {
            let mut e = [0; 3];
            e[i] = 1;
            (e, coeffs[i].clone())
        }))?)
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn field(&self) -> FieldSpec {
        self.poly.field
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn eval(&self, p: &ProjPoint) -> Rational {
        self.poly.eval(&p.coords)
    }

    pub fn vanishes_at(&self, p: &ProjPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        HomPoly { poly: self.poly.mul(&other.poly), degree: self.degree + other.degree }
    }

    /// `F(A (x, y, z))` for a 3x3 matrix `A`; errors if the result vanishes.
    pub fn linear_substitution(&self, a: &[[Rational; 3]; 3]) -> Result<HomPoly, CurveError> {
        let f = self.field();
        let subs: [Poly; 3] = std::array::from_fn(|i| {
            let mut p = Poly::zero(f);
            for (j, v) in a[i].iter().enumerate() {
                p = p.add(&Poly::var(f, j).scale(v));
            }
            p
        });
        Self::new(self.poly.compose(&subs))
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// A field-rational point `(x:y:z)` scaled so its last nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    field: FieldSpec,
    coords: [Rational; 3],
}

impl ProjPoint {
    pub fn new(field: FieldSpec, coords: [Rational; 3]) -> Result<ProjPoint, CurveError> {
        let coords = [field.reduce(&coords[0])?, field.reduce(&coords[1])?, field.reduce(&coords[2])?];
        let last = coords.iter().rev().find(|c| !c.is_zero()).ok_or(CurveError::ZeroPoint)?.clone();
        let scale = field.inv(&last).expect("nonzero");
        Ok(ProjPoint { field, coords: coords.map(|c| field.mul(&c, &scale)) })
    }

    pub fn from_i64(field: FieldSpec, coords: [i64; 3]) -> Result<ProjPoint, CurveError> {
        Self::new(field, coords.map(rational::int))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coords(&self) -> &[Rational; 3] {
        &self.coords
    }

    /// Index of the coordinate normalized to 1.
    pub fn chart(&self) -> usize {
        (0..3).rev().find(|&i| !self.coords[i].is_zero()).expect("points are nonzero")
    }

    /// The line through two distinct points.
    pub fn line_to(&self, other: &ProjPoint) -> Result<HomPoly, CurveError> {
        let f = self.field;
        let (a, b) = (&self.coords, &other.coords);
        let cross = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
        HomPoly::line(f, &[cross(1, 2), cross(2, 0), cross(0, 1)]).map_err(|_| CurveError::SamePoint)
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|c| rational::format(c).trim_end_matches("/1").to_string()).collect();
        write!(f, "[{}]", c.join(":"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, q};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn parse_and_display() {
        let p = Poly::parse(Q, "-45x^2 - 5*y^2 + z^2 + 24*x*y + 40yz - 15zx").unwrap();
        assert_eq!(p.coeff([1, 0, 1]), int(-15));
        assert_eq!(p.coeff([0, 1, 1]), int(40));
        assert_eq!(p.to_string(), "-45*x^2 + 24*x*y - 15*x*z - 5*y^2 + 40*y*z + z^2");
        assert_eq!(Poly::parse(Q, "x^3 - y^2*z").unwrap().to_string(), "x^3 - y^2*z");
        assert_eq!(Poly::parse(Q, "1/2*x + 3").unwrap().coeff([1, 0, 0]), q(1, 2));
        assert_eq!(Poly::parse(Q, "x - x").unwrap(), Poly::zero(Q));
    }

    #[test]
    fn parse_errors() {
        for (text, pos) in [("", 0), ("x +", 3), ("2*", 2), ("x^", 2), ("w", 0), ("1/0*x", 3)] {
            match Poly::parse(Q, text) {
                Err(CurveError::Parse { position, .. }) => assert_eq!(position, pos, "{text}"),
                other => panic!("{text}: {other:?}"),
            }
        }
    }

    #[test]
    fn reduction_mod_p() {
        let f = FieldSpec::Prime(5);
        let p = Poly::parse(f, "-45x^2 - 5*y^2 + z^2 + 24*x*y").unwrap();
        assert_eq!(p.to_string(), "4*x*y + z^2");
        assert!(matches!(Poly::parse(f, "1/5*x"), Err(CurveError::Field(_))));
    }

    #[test]
    fn homogeneity_and_points() {
        assert!(matches!(HomPoly::parse(Q, "x^2 + y"), Err(CurveError::NotHomogeneous(_))));
        assert!(matches!(HomPoly::parse(Q, "x - x"), Err(CurveError::ZeroPolynomial)));
        let p = ProjPoint::from_i64(Q, [2, 4, 2]).unwrap();
        assert_eq!(p.to_string(), "[1:2:1]");
        assert_eq!(ProjPoint::from_i64(Q, [3, 0, 0]).unwrap().to_string(), "[1:0:0]");
        assert!(matches!(ProjPoint::from_i64(Q, [0, 0, 0]), Err(CurveError::ZeroPoint)));
        let c = HomPoly::parse(Q, "x^3 - y^2*z").unwrap();
        assert!(c.vanishes_at(&ProjPoint::from_i64(Q, [1, 1, 1]).unwrap()));
        assert_eq!(c.degree(), 3);
    }

    #[test]
    fn line_through_points() {
        let a = ProjPoint::from_i64(Q, [0, 0, 1]).unwrap();
        let b = ProjPoint::from_i64(Q, [1, 1, 1]).unwrap();
        let l = a.line_to(&b).unwrap();
        assert!(l.vanishes_at(&a) && l.vanishes_at(&b));
        assert!(matches!(a.line_to(&a), Err(CurveError::SamePoint)));
    }

    #[test]
    fn compose_expands() {
        let p = Poly::parse(Q, "x^2").unwrap();
        let s = [Poly::parse(Q, "x + 1").unwrap(), Poly::var(Q, 1), Poly::var(Q, 2)];
        assert_eq!(p.compose(&s), Poly::parse(Q, "x^2 + 2x + 1").unwrap());
    }
}

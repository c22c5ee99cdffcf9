use std::collections::BTreeMap;

use super::LatticeError;

/// The surface we start blowing up from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSurface {
    ProjectivePlane,
    Hirzebruch(u32),
    /// User-supplied lattice: named generators, their Gram matrix and the
    /// canonical class in that basis.
    Abstract { names: Vec<String>, gram: Vec<Vec<i64>>, canonical: Vec<i64> },
}

impl BaseSurface {
    pub fn abstract_base(
        names: Vec<String>,
        gram: Vec<Vec<i64>>,
        canonical: Vec<i64>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        if n == 0 {
            return Err(LatticeError::InvalidBase("no generators".into()));
        }
        if gram.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::InvalidBase(format!("Gram matrix must be {n} x {n}")));
        }
        if (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(LatticeError::InvalidBase("Gram matrix is not symmetric".into()));
        }
        if canonical.len() != n {
            return Err(LatticeError::InvalidBase(format!("canonical class needs {n} coefficients")));
        }
        Ok(BaseSurface::Abstract { names, gram, canonical })
    }

    pub fn rank(&self) -> usize {
        match self {
            BaseSurface::ProjectivePlane => 1,
            BaseSurface::Hirzebruch(_) => 2,
            BaseSurface::Abstract { names, .. } => names.len(),
        }
    }

    pub fn gram(&self) -> Vec<Vec<i64>> {
        match self {
            BaseSurface::ProjectivePlane => vec![vec![1]],
            BaseSurface::Hirzebruch(n) => vec![vec![-i64::from(*n), 1], vec![1, 0]],
            BaseSurface::Abstract { gram, .. } => gram.clone(),
        }
    }

    /// `K` in the generator basis: `-3H` on the plane, `-2s - (n+2)f` on `F_n`.
    pub fn canonical(&self) -> Vec<i64> {
        match self {
            BaseSurface::ProjectivePlane => vec![-3],
            BaseSurface::Hirzebruch(n) => vec![-2, -(i64::from(*n) + 2)],
            BaseSurface::Abstract { canonical, .. } => canonical.clone(),
        }
    }

    pub fn generator_names(&self) -> Vec<String> {
        match self {
            BaseSurface::ProjectivePlane => vec!["H".into()],
            BaseSurface::Hirzebruch(_) => vec!["s".into(), "f".into()],
            BaseSurface::Abstract { names, .. } => names.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrackedCurve {
    pub name: String,
    /// Base coefficients followed by the coefficient of each `e_i`; a strict
    /// transform through a centre of multiplicity `m` has coefficient `-m`.
    pub class: Vec<i64>,
    /// `(blow-up index, multiplicity)` for every centre the curve passed through.
    pub history: Vec<(usize, u32)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowUpRecord {
    pub exceptional: String,
    pub incidence: Vec<(String, u32)>,
}

/// A Picard lattice with named curves. Every operation returns a new value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceState {
    base: BaseSurface,
    gram: Vec<Vec<i64>>,
    base_canonical: Vec<i64>,
    curves: Vec<TrackedCurve>,
    index: BTreeMap<String, usize>,
    log: Vec<BlowUpRecord>,
}

impl SurfaceState {
    pub fn new(base: BaseSurface) -> Self {
        SurfaceState {
            gram: base.gram(),
            base_canonical: base.canonical(),
            base,
            curves: Vec::new(),
            index: BTreeMap::new(),
            log: Vec::new(),
        }
    }

    pub fn base(&self) -> &BaseSurface {
        &self.base
    }

    pub fn base_rank(&self) -> usize {
        self.gram.len()
    }

    pub fn blow_up_count(&self) -> usize {
        self.log.len()
    }

    pub fn rank(&self) -> usize {
        self.base_rank() + self.log.len()
    }

    pub fn log(&self) -> &[BlowUpRecord] {
        &self.log
    }

    pub fn curves(&self) -> &[TrackedCurve] {
        &self.curves
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    /// `K = K_base + sum e_i`.
    pub fn canonical(&self) -> Vec<i64> {
        let mut k = self.base_canonical.clone();
        k.extend(std::iter::repeat_n(1, self.log.len()));
        k
    }

    pub fn pair_classes(&self, a: &[i64], b: &[i64]) -> i64 {
        let r = self.base_rank();
        let total: i64 = (0..r).map(|i| (0..r).map(|j| a[i] * self.gram[i][j] * b[j]).sum::<i64>()).sum();
        total - a[r..].iter().zip(&b[r..]).map(|(x, y)| x * y).sum::<i64>()
    }

    pub fn canonical_selfint(&self) -> i64 {
        let k = self.canonical();
        self.pair_classes(&k, &k)
    }

    /// Arithmetic genus `1 + (C^2 + K.C)/2` of a class.
    pub fn class_genus(&self, class: &[i64]) -> Result<i64, LatticeError> {
        let s = self.pair_classes(class, class) + self.pair_classes(&self.canonical(), class);
        if s % 2 != 0 {
            return Err(LatticeError::NonIntegralGenus { class: class.to_vec() });
        }
        Ok(1 + s / 2)
    }

    pub fn curve(&self, name: &str) -> Result<&TrackedCurve, LatticeError> {
        self.index
            .get(name)
            .map(|&i| &self.curves[i])
            .ok_or_else(|| LatticeError::UnknownCurve(name.to_string()))
    }

    pub fn class_of(&self, name: &str) -> Result<&[i64], LatticeError> {
        Ok(&self.curve(name)?.class)
    }

    pub fn pairing(&self, a: &str, b: &str) -> Result<i64, LatticeError> {
        Ok(self.pair_classes(self.class_of(a)?, self.class_of(b)?))
    }

    pub fn self_int(&self, name: &str) -> Result<i64, LatticeError> {
        self.pairing(name, name)
    }

    pub fn k_degree(&self, name: &str) -> Result<i64, LatticeError> {
        Ok(self.pair_classes(&self.canonical(), self.class_of(name)?))
    }

    pub fn genus(&self, name: &str) -> Result<i64, LatticeError> {
        self.class_genus(self.class_of(name)?)
    }

    /// Class from base coefficients and multiplicities at the existing
    /// exceptional curves: `sum c_i B_i - sum m_j e_j`.
    pub fn class_from(&self, base: &[i64], mults: &[i64]) -> Result<Vec<i64>, LatticeError> {
        if base.len() != self.base_rank() || mults.len() > self.log.len() {
            return Err(LatticeError::ClassLength {
                base: self.base_rank(),
                exceptional: self.log.len(),
                got: (base.len(), mults.len()),
            });
        }
        let mut class = base.to_vec();
        class.extend(mults.iter().map(|m| -m));
        class.resize(self.rank(), 0);
        Ok(class)
    }

    pub fn declare_curve(
        &self,
        name: &str,
        class: Vec<i64>,
        expected_genus: Option<i64>,
    ) -> Result<SurfaceState, LatticeError> {
        if self.contains(name) {
            return Err(LatticeError::DuplicateCurve(name.to_string()));
        }
        if class.len() != self.rank() {
            return Err(LatticeError::ClassLength {
                base: self.base_rank(),
                exceptional: self.log.len(),
                got: (class.len().min(self.base_rank()), class.len().saturating_sub(self.base_rank())),
            });
        }
        let genus = self.class_genus(&class)?;
        if let Some(expected) = expected_genus {
            if expected != genus {
                return Err(LatticeError::GenusMismatch { name: name.to_string(), expected, actual: genus });
            }
        }
        if genus < 0 {
            return Err(LatticeError::NegativeGenus { name: name.to_string(), genus });
        }
        let mut next = self.clone();
        next.index.insert(name.to_string(), next.curves.len());
        next.curves.push(TrackedCurve { name: name.to_string(), class, history: Vec::new() });
        Ok(next)
    }

    /// Blows up a point lying on the listed curves with the given
    /// multiplicities; the new exceptional curve is tracked as `name`
    /// (default `E<N>`).
    pub fn blow_up(&self, incidence: &[(&str, u32)], name: Option<&str>) -> Result<SurfaceState, LatticeError> {
        let index = self.log.len();
        let exc_name = name.map_or_else(|| format!("E{}", index + 1), str::to_string);
        if self.contains(&exc_name) {
            return Err(LatticeError::DuplicateCurve(exc_name));
        }
        let mut seen = Vec::new();
        for &(curve, m) in incidence {
            self.curve(curve)?;
            if m == 0 {
                return Err(LatticeError::ZeroMultiplicity(curve.to_string()));
            }
            if seen.contains(&curve) {
                return Err(LatticeError::RepeatedIncidence(curve.to_string()));
            }
            seen.push(curve);
        }

        let mut next = self.clone();
        for c in &mut next.curves {
            c.class.push(0);
        }
        for &(curve, m) in incidence {
            let i = next.index[curve];
            let c = &mut next.curves[i];
            *c.class.last_mut().expect("nonempty class") = -i64::from(m);
            c.history.push((index, m));
        }
        next.log.push(BlowUpRecord {
            exceptional: exc_name.clone(),
            incidence: incidence.iter().map(|&(c, m)| (c.to_string(), m)).collect(),
        });
        let mut class = vec![0; next.rank()];
        *class.last_mut().expect("rank >= 1") = 1;
        next.index.insert(exc_name.clone(), next.curves.len());
        next.curves.push(TrackedCurve { name: exc_name, class, history: Vec::new() });

        for &(curve, _) in incidence {
            let genus = next.genus(curve)?;
            if genus < 0 {
                return Err(LatticeError::NegativeGenus { name: curve.to_string(), genus });
            }
        }
        Ok(next)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> SurfaceState {
        SurfaceState::new(BaseSurface::ProjectivePlane)
    }

    #[test]
    fn bases() {
        assert_eq!(p2().rank(), 1);
        assert_eq!(p2().canonical_selfint(), 9);
        let f2 = SurfaceState::new(BaseSurface::Hirzebruch(2));
        assert_eq!(f2.canonical_selfint(), 8);
        let abs = BaseSurface::abstract_base(vec!["H".into()], vec![vec![1]], vec![-3]).unwrap();
        assert_eq!(SurfaceState::new(abs).canonical_selfint(), 9);
        assert!(BaseSurface::abstract_base(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![2, 0]], vec![0, 0]).is_err());
    }

    #[test]
    fn declare_and_genus() {
        let s = p2().declare_curve("C", vec![3], Some(1)).unwrap();
        assert_eq!(s.genus("C").unwrap(), 1);
        let s = s.declare_curve("Q", vec![2], Some(0)).unwrap();
        assert!(matches!(s.declare_curve("L", vec![1], Some(1)), Err(LatticeError::GenusMismatch { .. })));
        assert!(matches!(s.declare_curve("C", vec![1], None), Err(LatticeError::DuplicateCurve(_))));
    }

    #[test]
    fn line_blow_up() {
        let s = p2().declare_curve("L", vec![1], None).unwrap();
        let s = s.blow_up(&[("L", 1)], None).unwrap();
        assert_eq!(s.self_int("L").unwrap(), 0);
        assert_eq!(s.pairing("L", "E1").unwrap(), 1);
        assert_eq!(s.self_int("E1").unwrap(), -1);
        assert_eq!(s.k_degree("E1").unwrap(), -1);
        assert_eq!(s.canonical_selfint(), 8);
        assert!(matches!(s.blow_up(&[("X", 1)], None), Err(LatticeError::UnknownCurve(_))));
    }

    #[test]
    fn cusp_resolution_drops_genus() {
        let s = p2().declare_curve("C", vec![3], Some(1)).unwrap();
        let s = s.blow_up(&[("C", 2)], None).unwrap();
        assert_eq!(s.genus("C").unwrap(), 0);
        let s = s.blow_up(&[("C", 1), ("E1", 1)], None).unwrap();
        let s = s.blow_up(&[("C", 1), ("E1", 1), ("E2", 1)], None).unwrap();
        assert_eq!(s.self_int("C").unwrap(), 3);
        assert_eq!(s.genus("C").unwrap(), 0);
        // a fourth singular centre would make the genus negative
        assert!(matches!(s.blow_up(&[("C", 2)], None), Err(LatticeError::NegativeGenus { .. })));
    }

    #[test]
    fn nine_points_on_a_cubic() {
        let mut s = p2().declare_curve("C", vec![3], None).unwrap();
        for _ in 0..9 {
            s = s.blow_up(&[("C", 1)], None).unwrap();
        }
        assert_eq!(s.k_degree("C").unwrap(), 0);
        assert_eq!(s.self_int("C").unwrap(), 0);
        assert_eq!(s.canonical_selfint(), 0);
    }
}

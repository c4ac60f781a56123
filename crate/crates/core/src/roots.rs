//! Crystallographic root systems in rational coordinates.
//!
//! Every irreducible family is realized with integer or half-integer
//! coordinates (G2 lives in the sum-zero plane of R^3). Reducible systems are
//! orthogonal direct sums with block coordinates. The full root set is
//! generated as the orbit of the simple roots under simple reflections, then
//! checked against the catalog count.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{frac, in_span, int, rank_of, solve, Matrix, Scalar, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn from_char(c: char) -> Option<Self> {
        Some(match c {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One irreducible component: family and rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub family: Family,
    pub rank: usize,
}

impl Component {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::B | Family::C => rank >= 1,
            Family::D => rank >= 2,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Component { family, rank })
        } else {
            Err(Error::InvalidRootSystem(format!(
                "no root system of type {family}{rank}"
            )))
        }
    }

    /// Catalog count of roots (both signs).
    pub fn root_count(&self) -> usize {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1),
            (Family::B | Family::C, _) => 2 * n * n,
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, _) => 240,
            (Family::F, _) => 48,
            (Family::G, _) => 12,
        }
    }

    /// Exponents from the standard tables.
    pub fn exponents(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match (self.family, n) {
            (Family::A, _) => (1..=n).collect(),
            (Family::B | Family::C, _) => (1..=n).map(|i| 2 * i - 1).collect(),
            (Family::D, _) => {
                let mut e: Vec<u32> = (1..n).map(|i| 2 * i - 1).collect();
                e.push(n - 1);
                e.sort_unstable();
                e
            }
            (Family::E, 6) => vec![1, 4, 5, 7, 8, 11],
            (Family::E, 7) => vec![1, 5, 7, 9, 11, 13, 17],
            (Family::E, _) => vec![1, 7, 11, 13, 17, 19, 23, 29],
            (Family::F, _) => vec![1, 5, 7, 11],
            (Family::G, _) => vec![1, 5],
        }
    }

    fn ambient_dim(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::G => 3,
            Family::E => 8,
            _ => self.rank,
        }
    }

    /// Simple roots in Bourbaki order, in the component's own coordinates.
    fn simple_roots(&self) -> Vec<Vector> {
        let n = self.rank;
        let d = self.ambient_dim();
        let diff = |i: usize, j: usize| {
            let mut v = Vector::zeros(d);
            v[i] = int(1);
            v[j] = int(-1);
            v
        };
        match self.family {
            Family::A => (0..n).map(|i| diff(i, i + 1)).collect(),
            Family::B | Family::C => {
                let mut s: Vec<Vector> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
                let mut last = Vector::zeros(d);
                last[n - 1] = int(if self.family == Family::B { 1 } else { 2 });
                s.push(last);
                s
            }
            Family::D => {
                let mut s: Vec<Vector> = (0..n - 1).map(|i| diff(i, i + 1)).collect();
                let mut last = Vector::zeros(d);
                last[n - 2] = int(1);
                last[n - 1] = int(1);
                s.push(last);
                s
            }
            Family::G => vec![
                Vector::from_ints(&[1, -1, 0]),
                Vector::from_ints(&[-2, 1, 1]),
            ],
            Family::F => vec![
                Vector::from_ints(&[0, 1, -1, 0]),
                Vector::from_ints(&[0, 0, 1, -1]),
                Vector::from_ints(&[0, 0, 0, 1]),
                Vector(vec![frac(1, 2), frac(-1, 2), frac(-1, 2), frac(-1, 2)]),
            ],
            Family::E => {
                let h = frac(1, 2);
                let mh = frac(-1, 2);
                let mut a1 = vec![mh.clone(); 8];
                a1[0] = h.clone();
                a1[7] = h;
                let mut s = vec![Vector(a1), Vector::from_ints(&[1, 1, 0, 0, 0, 0, 0, 0])];
                for i in 0..6 {
                    s.push(diff(i + 1, i));
                }
                s.truncate(n);
                s
            }
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

/// A root system type such as `A3`, `G2` or `A1xA2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootSystemSpec {
    pub components: Vec<Component>,
}

impl RootSystemSpec {
    pub fn irreducible(family: Family, rank: usize) -> Result<Self> {
        Ok(RootSystemSpec {
            components: vec![Component::new(family, rank)?],
        })
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }
}

impl FromStr for RootSystemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::InvalidRootSystem(msg);
        let s = s.trim();
        if s.is_empty() {
            return Err(bad("empty root system spec".into()));
        }
        let mut components = Vec::new();
        for part in s.split(['x', '×']) {
            let mut chars = part.chars();
            let fam = chars
                .next()
                .and_then(|c| Family::from_char(c.to_ascii_uppercase()))
                .ok_or_else(|| bad(format!("unknown family in {part:?}")))?;
            let rank: usize = chars
                .as_str()
                .parse()
                .map_err(|_| bad(format!("bad rank in {part:?}")))?;
            components.push(Component::new(fam, rank)?);
        }
        Ok(RootSystemSpec { components })
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Coordinates of a coroot-lattice vector in the simple-coroot basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(n: usize) -> Self {
        LatticeVector(vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: i64) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| a * c).collect())
    }

    pub fn neg(&self) -> LatticeVector {
        self.scale(-1)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// `2 / <alpha, alpha> * alpha`.
pub fn coroot(alpha: &Vector) -> Result<Vector> {
    let n2 = alpha.norm2();
    if n2.is_zero() {
        return Err(Error::ZeroRoot);
    }
    Ok(alpha.scale(&(int(2) / n2)))
}

/// Reflection of `x` through the hyperplane orthogonal to `alpha`.
pub fn reflect(alpha: &Vector, alpha_check: &Vector, x: &Vector) -> Vector {
    x - &alpha_check.scale(&x.dot(alpha))
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: RootSystemSpec,
    ambient_dim: usize,
    /// All roots: positive roots in index order followed by their negatives.
    roots: Vec<Vector>,
    coroots: Vec<Vector>,
    simple_roots: Vec<Vector>,
    simple_coroots: Vec<Vector>,
    exponents: Vec<u32>,
    /// Each positive root in the simple-root basis.
    simple_coefficients: Vec<Vec<i64>>,
    /// Each positive coroot in the simple-coroot basis.
    coroot_coords: Vec<Vec<i64>>,
    /// Left inverse of the simple-coroot basis matrix.
    projector: Matrix,
}

impl RootSystem {
    pub fn build(spec: &RootSystemSpec) -> Result<Self> {
        if spec.components.is_empty() {
            return Err(Error::InvalidRootSystem("no components".into()));
        }
        let ambient_dim: usize = spec.components.iter().map(Component::ambient_dim).sum();
        let mut simple_roots = Vec::new();
        let mut exponents = Vec::new();
        let mut offset = 0;
        for c in &spec.components {
            for r in c.simple_roots() {
                let mut v = Vector::zeros(ambient_dim);
                for (i, x) in r.0.into_iter().enumerate() {
                    v[offset + i] = x;
                }
                simple_roots.push(v);
            }
            exponents.extend(c.exponents());
            offset += c.ambient_dim();
        }
        let simple_coroots: Vec<Vector> = simple_roots
            .iter()
            .map(coroot)
            .collect::<Result<_>>()?;

        // Orbit of the simple roots under the simple reflections.
        let mut seen: HashSet<Vector> = simple_roots.iter().cloned().collect();
        let mut all: Vec<Vector> = simple_roots.clone();
        let mut frontier = all.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                for (a, ac) in simple_roots.iter().zip(&simple_coroots) {
                    let img = reflect(a, ac, beta);
                    if seen.insert(img.clone()) {
                        all.push(img.clone());
                        next.push(img);
                    }
                }
            }
            frontier = next;
        }

        let expected: usize = spec.components.iter().map(Component::root_count).sum();
        if all.len() != expected {
            return Err(Error::Internal(format!(
                "{spec}: generated {} roots, catalog says {expected}",
                all.len()
            )));
        }

        let basis = Matrix::from_columns(&simple_roots, ambient_dim);
        let mut positive: Vec<(Vector, Vec<i64>)> = Vec::new();
        for r in &all {
            let c = solve(&basis, r)
                .and_then(|c| c.to_ints())
                .ok_or_else(|| Error::Internal(format!("root {r} not integral in simple roots")))?;
            let nonneg = c.iter().all(|&x| x >= 0);
            let nonpos = c.iter().all(|&x| x <= 0);
            if !(nonneg || nonpos) {
                return Err(Error::Internal(format!("root {r} has mixed-sign coefficients")));
            }
            if nonneg {
                positive.push((r.clone(), c));
            }
        }
        positive.sort_by(|a, b| a.0.cmp(&b.0));

        let pos_roots: Vec<Vector> = positive.iter().map(|p| p.0.clone()).collect();
        let simple_coefficients: Vec<Vec<i64>> = positive.into_iter().map(|p| p.1).collect();
        let mut roots = pos_roots.clone();
        roots.extend(pos_roots.iter().map(|r| -r));
        let coroots: Vec<Vector> = roots.iter().map(coroot).collect::<Result<_>>()?;

        let b = Matrix::from_columns(&simple_coroots, ambient_dim);
        let gram = &b.transpose() * &b;
        let n = simple_coroots.len();
        let mut inv_cols = Vec::with_capacity(n);
        for j in 0..n {
            inv_cols.push(
                solve(&gram, &Vector::unit(n, j))
                    .ok_or_else(|| Error::Internal("singular coroot Gram matrix".into()))?,
            );
        }
        let gram_inv = Matrix::from_columns(&inv_cols, n);
        let projector = &gram_inv * &b.transpose();

        let mut sys = RootSystem {
            spec: spec.clone(),
            ambient_dim,
            roots,
            coroots,
            simple_roots,
            simple_coroots,
            exponents,
            simple_coefficients,
            coroot_coords: Vec::new(),
            projector,
        };
        let npos = sys.positive_count();
        sys.coroot_coords = (0..npos)
            .map(|i| {
                sys.ambient_to_lattice(&sys.coroots[i])
                    .map(|l| l.0)
            })
            .collect::<Result<_>>()?;
        Ok(sys)
    }

    pub fn spec(&self) -> &RootSystemSpec {
        &self.spec
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Semisimple rank `n`.
    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn roots(&self) -> &[Vector] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vector] {
        &self.coroots
    }

    pub fn positive_count(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Vector] {
        &self.roots[..self.positive_count()]
    }

    pub fn positive_coroots(&self) -> &[Vector] {
        &self.coroots[..self.positive_count()]
    }

    pub fn simple_roots(&self) -> &[Vector] {
        &self.simple_roots
    }

    pub fn simple_coroots(&self) -> &[Vector] {
        &self.simple_coroots
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Simple-root coefficients of positive root `i`.
    pub fn simple_coefficients(&self, i: usize) -> &[i64] {
        &self.simple_coefficients[i]
    }

    /// Simple-coroot coordinates of positive coroot `i`.
    pub fn coroot_coords(&self, i: usize) -> &[i64] {
        &self.coroot_coords[i]
    }

    pub fn height(&self, i: usize) -> i64 {
        self.simple_coefficients[i].iter().sum()
    }

    /// Index of `v` among the positive roots, with a sign telling whether
    /// `v` is the positive root or its negative.
    pub fn root_index(&self, v: &Vector) -> Option<(usize, bool)> {
        let n = self.positive_count();
        self.roots
            .iter()
            .position(|r| r == v)
            .map(|i| if i < n { (i, true) } else { (i - n, false) })
    }

    pub fn check_positive_index(&self, i: usize) -> Result<()> {
        if i < self.positive_count() {
            Ok(())
        } else {
            Err(Error::RootIndex {
                index: i,
                count: self.positive_count(),
            })
        }
    }

    pub fn lattice_to_ambient(&self, lam: &LatticeVector) -> Vector {
        assert_eq!(lam.len(), self.rank(), "lattice vector has wrong length");
        lam.0
            .iter()
            .zip(&self.simple_coroots)
            .filter(|(c, _)| **c != 0)
            .fold(Vector::zeros(self.ambient_dim), |acc, (&c, v)| {
                &acc + &v.scale(&int(c))
            })
    }

    pub fn ambient_to_lattice(&self, v: &Vector) -> Result<LatticeVector> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        let c = self.projector.mul_vec(v);
        let ints = c.to_ints().ok_or_else(|| Error::NotInLattice(v.to_string()))?;
        let lam = LatticeVector(ints);
        if &self.lattice_to_ambient(&lam) != v {
            return Err(Error::NotInLattice(v.to_string()));
        }
        Ok(lam)
    }

    /// `<beta, alpha_check>` for roots given by positive indices.
    pub fn cartan_pairing(&self, beta: usize, alpha: usize) -> Scalar {
        self.roots[beta].dot(&self.coroots[alpha])
    }

    /// Roots of this system lying in the span of `subspace_basis`, with
    /// positive and simple roots for that sub-system.
    pub fn sub_root_system(&self, subspace_basis: &[Vector]) -> SubRootSystem {
        let positive: Vec<usize> = (0..self.positive_count())
            .filter(|&i| in_span(subspace_basis, &self.roots[i]).is_some())
            .collect();
        SubRootSystem::from_positive(self, positive)
    }
}

/// A root subsystem `Phi ∩ V'`, recorded by indices into the parent's
/// positive roots. Positivity is inherited from the parent (the height
/// functional is positive on every parent positive root).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubRootSystem {
    pub positive: Vec<usize>,
    pub simple: Vec<usize>,
    pub simple_coroots: Vec<Vector>,
}

impl SubRootSystem {
    fn from_positive(phi: &RootSystem, positive: Vec<usize>) -> Self {
        let members: HashSet<&Vector> = positive.iter().map(|&i| &phi.roots[i]).collect();
        // Simple roots are the positive roots that are not a sum of two
        // positive roots of the subsystem.
        let simple: Vec<usize> = positive
            .iter()
            .copied()
            .filter(|&i| {
                !positive.iter().any(|&j| {
                    j != i && members.contains(&(&phi.roots[i] - &phi.roots[j]))
                })
            })
            .collect();
        let simple_coroots = simple.iter().map(|&i| phi.coroots[i].clone()).collect();
        SubRootSystem {
            positive,
            simple,
            simple_coroots,
        }
    }

    /// All roots of the subsystem, positives followed by negatives.
    pub fn roots(&self, phi: &RootSystem) -> Vec<Vector> {
        let pos: Vec<Vector> = self.positive.iter().map(|&i| phi.roots()[i].clone()).collect();
        let neg: Vec<Vector> = pos.iter().map(|r| -r).collect();
        pos.into_iter().chain(neg).collect()
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }
}

/// True when every pairing `<beta, alpha_check>` over the given roots is an
/// integer.
pub fn is_crystallographic(roots: &[Vector]) -> bool {
    roots.iter().all(|b| {
        roots
            .iter()
            .all(|a| coroot(a).map(|ac| b.dot(&ac).is_integer()).unwrap_or(false))
    })
}

pub fn max_abs_pairing(roots: &[Vector]) -> Scalar {
    let mut m = Scalar::zero();
    for b in roots {
        for a in roots {
            let p = b.dot(&coroot(a).expect("roots are nonzero")).abs();
            if p > m {
                m = p;
            }
        }
    }
    m
}

/// Checks that the rank of the root span matches the semisimple rank.
pub fn span_rank(phi: &RootSystem) -> usize {
    rank_of(phi.roots())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> RootSystem {
        RootSystem::build(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn a2_roots() {
        let phi = sys("A2");
        assert_eq!(phi.ambient_dim(), 3);
        let mut got: Vec<Vector> = phi.roots().to_vec();
        got.sort();
        let mut want: Vec<Vector> = [
            [1, -1, 0],
            [0, 1, -1],
            [1, 0, -1],
            [-1, 1, 0],
            [0, -1, 1],
            [-1, 0, 1],
        ]
        .iter()
        .map(|v| Vector::from_ints(v))
        .collect();
        want.sort();
        assert_eq!(got, want);
        assert!(is_crystallographic(phi.roots()));
        // Roots lie in the sum-zero hyperplane.
        for r in phi.roots() {
            assert!(r.0.iter().fold(Scalar::zero(), |a, b| a + b).is_zero());
        }
    }

    #[test]
    fn d4_roots_are_plus_minus_pairs() {
        let phi = sys("D4");
        assert_eq!(phi.roots().len(), 24);
        for r in phi.roots() {
            let nz: Vec<_> = r.0.iter().filter(|x| !x.is_zero()).collect();
            assert_eq!(nz.len(), 2);
            assert!(nz.iter().all(|x| x.abs() == int(1)));
        }
    }

    #[test]
    fn reducible_direct_sum() {
        let phi = sys("A1xA1");
        assert_eq!(phi.ambient_dim(), 4);
        assert_eq!(phi.roots().len(), 4);
        let p = phi.positive_roots();
        assert!(p[0].dot(&p[1]).is_zero());
        assert_eq!(phi.exponents(), &[1, 1]);
    }

    #[test]
    fn invalid_specs() {
        for s in ["Zx9", "E5", "F3", "G3", "D1", "A0", "", "A"] {
            assert!(s.parse::<RootSystemSpec>().is_err(), "{s} should fail");
        }
    }

    #[test]
    fn catalog_counts() {
        for s in [
            "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D2", "D3", "D4", "G2",
            "F4", "E6", "E7", "E8",
        ] {
            let phi = sys(s);
            let spec: RootSystemSpec = s.parse().unwrap();
            assert_eq!(phi.roots().len(), spec.components[0].root_count(), "{s}");
            assert_eq!(span_rank(&phi), phi.rank(), "{s}");
            assert_eq!(phi.exponents().len(), phi.rank());
        }
    }

    #[test]
    fn pairings_are_small_integers() {
        for s in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2"] {
            let phi = sys(s);
            assert!(is_crystallographic(phi.roots()), "{s}");
            assert!(max_abs_pairing(phi.roots()) <= int(3), "{s}");
        }
    }

    #[test]
    fn weyl_closure_and_coroot_involution() {
        for s in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let phi = sys(s);
            let set: HashSet<&Vector> = phi.roots().iter().collect();
            for (a, ac) in phi.roots().iter().zip(phi.coroots()) {
                assert_eq!(&coroot(ac).unwrap(), a);
                for b in phi.roots() {
                    assert!(set.contains(&reflect(a, ac, b)), "{s}");
                }
                // only multiples of a root are +-a
                for b in phi.roots() {
                    if b != a && b != &-a {
                        assert_eq!(rank_of(&[a.clone(), b.clone()]), 2, "{s}");
                    }
                }
            }
        }
    }

    #[test]
    fn coroot_examples() {
        assert_eq!(
            coroot(&Vector::from_ints(&[1, -1, 0])).unwrap(),
            Vector::from_ints(&[1, -1, 0])
        );
        assert_eq!(coroot(&Vector::from_ints(&[1, 0])).unwrap(), Vector::from_ints(&[2, 0]));
        assert_eq!(coroot(&Vector::from_ints(&[2, 0])).unwrap(), Vector::from_ints(&[1, 0]));
        assert_eq!(coroot(&Vector::zeros(2)), Err(Error::ZeroRoot));
    }

    #[test]
    fn simple_roots_generate_with_sign_coherent_coefficients() {
        for s in ["A3", "B3", "G2", "F4", "E6"] {
            let phi = sys(s);
            for i in 0..phi.positive_count() {
                assert!(phi.simple_coefficients(i).iter().all(|&c| c >= 0));
                assert!(phi.height(i) >= 1);
            }
        }
    }

    #[test]
    fn lattice_conversions() {
        let a2 = sys("A2");
        assert!(a2.lattice_to_ambient(&LatticeVector::zero(2)).is_zero());
        assert_eq!(
            a2.lattice_to_ambient(&LatticeVector(vec![1, 0])),
            Vector::from_ints(&[1, -1, 0])
        );
        let d4 = sys("D4");
        assert_eq!(
            d4.ambient_to_lattice(&Vector::from_ints(&[2, 0, 0, 0])).unwrap(),
            LatticeVector(vec![2, 2, 1, 1])
        );
        assert!(matches!(
            d4.ambient_to_lattice(&Vector::from_ints(&[1, 0, 0, 0])),
            Err(Error::NotInLattice(_))
        ));
        // Off the sum-zero plane is outside L for A2.
        assert!(a2.ambient_to_lattice(&Vector::from_ints(&[1, 0, 0])).is_err());
    }

    #[test]
    fn lattice_round_trip_box() {
        for s in ["A2", "B2", "G2", "A3", "C3"] {
            let phi = sys(s);
            let n = phi.rank();
            let total = 11usize.pow(n as u32);
            // Sample a stride of the [-5,5]^n box to keep this quick.
            for idx in (0..total).step_by(7) {
                let mut rest = idx;
                let coeffs: Vec<i64> = (0..n)
                    .map(|_| {
                        let c = (rest % 11) as i64 - 5;
                        rest /= 11;
                        c
                    })
                    .collect();
                let lam = LatticeVector(coeffs);
                let back = phi.ambient_to_lattice(&phi.lattice_to_ambient(&lam)).unwrap();
                assert_eq!(back, lam, "{s}");
            }
        }
    }

    #[test]
    fn sub_root_systems() {
        let d4 = sys("D4");
        let sub = d4.sub_root_system(&[
            Vector::from_ints(&[1, 1, 0, 0]),
            Vector::from_ints(&[1, -1, 0, 0]),
        ]);
        let mut roots = sub.roots(&d4);
        roots.sort();
        let mut want: Vec<Vector> = [[1, 1, 0, 0], [1, -1, 0, 0], [-1, -1, 0, 0], [-1, 1, 0, 0]]
            .iter()
            .map(|v| Vector::from_ints(v))
            .collect();
        want.sort();
        assert_eq!(roots, want);
        assert_eq!(sub.rank(), 2);
        assert!(is_crystallographic(&roots));

        let a2 = sys("A2");
        let full = a2.sub_root_system(a2.simple_roots());
        assert_eq!(full.positive.len(), 3);
        let mut simple: Vec<Vector> = full.simple.iter().map(|&i| a2.roots()[i].clone()).collect();
        simple.sort();
        let mut want = a2.simple_roots().to_vec();
        want.sort();
        assert_eq!(simple, want);

        let line = a2.sub_root_system(&[Vector::from_ints(&[1, -1, 0])]);
        assert_eq!(line.roots(&a2).len(), 2);

        let empty = a2.sub_root_system(&[]);
        assert!(empty.positive.is_empty());
    }

    #[test]
    fn sub_systems_are_closed_and_symmetric() {
        let phi = sys("B3");
        let pos = phi.positive_roots().to_vec();
        for i in 0..pos.len() {
            for j in i + 1..pos.len() {
                let sub = phi.sub_root_system(&[pos[i].clone(), pos[j].clone()]);
                let roots = sub.roots(&phi);
                let set: HashSet<&Vector> = roots.iter().collect();
                for r in &roots {
                    assert!(set.contains(&-r));
                }
                assert!(is_crystallographic(&roots));
                // Every root is an integer combination of the simple ones
                // with coherent signs.
                let b = Matrix::from_columns(
                    &sub.simple.iter().map(|&k| phi.roots()[k].clone()).collect::<Vec<_>>(),
                    phi.ambient_dim(),
                );
                for r in &roots {
                    let c = solve(&b, r).unwrap().to_ints().unwrap();
                    assert!(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0));
                }
            }
        }
    }
}

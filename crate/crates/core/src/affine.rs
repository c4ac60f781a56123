//! Elements of the affine Weyl group `W = W0 ⋉ T` in normal form.
//!
//! An element is stored as `t_λ w0`: a coroot-lattice translation together
//! with the orthogonal linear part. Composition follows function notation,
//! so `compose(u, v)` applies `v` first.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{int, Matrix, Vector};
use crate::roots::{LatticeVector, RootSystem};

/// The reflection `r_{α,i}` fixing `{x : <x,α> = i}`, labelled by a
/// positive root index so that `r_{-α,-i}` and `r_{α,i}` share a label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineReflection {
    pub root: usize,
    pub offset: i64,
}

impl AffineReflection {
    pub fn new(root: usize, offset: i64) -> Self {
        AffineReflection { root, offset }
    }

    pub fn linear(root: usize) -> Self {
        AffineReflection { root, offset: 0 }
    }
}

impl fmt::Display for AffineReflection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r({},{})", self.root + 1, self.offset)
    }
}

/// A product `r_1 r_2 ⋯ r_k`, evaluated right to left.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ReflectionWord(pub Vec<AffineReflection>);

impl ReflectionWord {
    pub fn empty() -> Self {
        ReflectionWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        ReflectionWord(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &ReflectionWord) -> Self {
        ReflectionWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl fmt::Display for ReflectionWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "e");
        }
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}

/// Normal form `t_λ w0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineElement {
    translation: LatticeVector,
    linear: Matrix,
}

impl AffineElement {
    pub fn translation(&self) -> &LatticeVector {
        &self.translation
    }

    pub fn linear(&self) -> &Matrix {
        &self.linear
    }

    pub fn is_translation(&self) -> bool {
        self.linear.is_identity()
    }

    pub fn is_spherical(&self) -> bool {
        self.translation.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.is_spherical() && self.is_translation()
    }
}

/// Integer form of an element acting on simple-coroot coordinates: the
/// first `n` entries are `λ`, the remaining `n*n` the row-major matrix of
/// `w0` on the coroot lattice. Used by the search code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntElement(pub Vec<i64>);

impl IntElement {
    pub fn translation(&self, n: usize) -> &[i64] {
        &self.0[..n]
    }

    pub fn matrix(&self, n: usize) -> &[i64] {
        &self.0[n..]
    }
}

/// An affine Weyl group built on a root system, with the per-root data
/// needed to act on points and lattice vectors.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    phi: RootSystem,
    reflection_matrices: Vec<Matrix>,
    /// `<α_j^∨, α_p>` for each positive root `p` and simple coroot `j`.
    pairings: Vec<Vec<i64>>,
    root_lookup: HashMap<Vector, usize>,
    /// `B P` (orthogonal projection onto the root span) and its complement.
    span_projection: Matrix,
    complement: Matrix,
}

impl AffineGroup {
    pub fn new(phi: RootSystem) -> Self {
        let d = phi.ambient_dim();
        let reflection_matrices = (0..phi.positive_count())
            .map(|p| reflection_matrix(&phi.positive_roots()[p], &phi.positive_coroots()[p]))
            .collect();
        let pairings = (0..phi.positive_count())
            .map(|p| {
                phi.simple_coroots()
                    .iter()
                    .map(|c| {
                        crate::linalg::to_i64(&c.dot(&phi.positive_roots()[p]))
                            .expect("crystallographic pairing")
                    })
                    .collect()
            })
            .collect();
        let root_lookup = phi
            .roots()
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let b = Matrix::from_columns(phi.simple_coroots(), d);
        let span_projection = {
            // columns: projection of each ambient unit vector onto span(Φ)
            let cols: Vec<Vector> = (0..d)
                .map(|j| {
                    let e = Vector::unit(d, j);
                    let c = lattice_coords_rational(&phi, &e);
                    b.mul_vec(&c)
                })
                .collect();
            Matrix::from_columns(&cols, d)
        };
        let complement = &Matrix::identity(d) - &span_projection;
        AffineGroup {
            phi,
            reflection_matrices,
            pairings,
            root_lookup,
            span_projection,
            complement,
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.phi
    }

    /// Semisimple rank `n`.
    pub fn rank(&self) -> usize {
        self.phi.rank()
    }

    pub fn positive_count(&self) -> usize {
        self.phi.positive_count()
    }

    pub fn reflection_matrix(&self, root: usize) -> &Matrix {
        &self.reflection_matrices[root]
    }

    pub fn pairing(&self, root: usize) -> &[i64] {
        &self.pairings[root]
    }

    pub fn identity(&self) -> AffineElement {
        AffineElement {
            translation: LatticeVector::zero(self.rank()),
            linear: Matrix::identity(self.phi.ambient_dim()),
        }
    }

    pub fn translation(&self, lam: &LatticeVector) -> AffineElement {
        assert_eq!(lam.len(), self.rank(), "lattice vector has wrong length");
        AffineElement {
            translation: lam.clone(),
            linear: Matrix::identity(self.phi.ambient_dim()),
        }
    }

    /// Builds `t_λ w0`, checking that the linear part permutes the roots.
    pub fn element(&self, translation: LatticeVector, linear: Matrix) -> Result<AffineElement> {
        if translation.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: translation.len(),
            });
        }
        let d = self.phi.ambient_dim();
        if linear.rows() != d || linear.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: linear.rows(),
            });
        }
        if !self.permutes_roots(&linear) {
            return Err(Error::NotInWeylGroup);
        }
        // W0 fixes the orthogonal complement of the root span pointwise.
        if &linear * &self.complement != self.complement {
            return Err(Error::NotInWeylGroup);
        }
        Ok(AffineElement {
            translation,
            linear,
        })
    }

    fn permutes_roots(&self, m: &Matrix) -> bool {
        let mut hit = vec![false; self.phi.roots().len()];
        for r in self.phi.roots() {
            match self.root_lookup.get(&m.mul_vec(r)) {
                Some(&i) if !hit[i] => hit[i] = true,
                _ => return false,
            }
        }
        true
    }

    fn check_root(&self, r: &AffineReflection) -> Result<()> {
        self.phi.check_positive_index(r.root)
    }

    /// `x - (<x,α> - i) α^∨`.
    pub fn apply_reflection(&self, r: &AffineReflection, x: &Vector) -> Vector {
        let alpha = &self.phi.positive_roots()[r.root];
        let check = &self.phi.positive_coroots()[r.root];
        let c = x.dot(alpha) - int(r.offset);
        x - &check.scale(&c)
    }

    pub fn reflection(&self, r: &AffineReflection) -> Result<AffineElement> {
        self.check_root(r)?;
        Ok(AffineElement {
            translation: LatticeVector(self.phi.coroot_coords(r.root).to_vec()).scale(r.offset),
            linear: self.reflection_matrices[r.root].clone(),
        })
    }

    /// `w(x) = w0 x + λ`.
    pub fn apply(&self, w: &AffineElement, x: &Vector) -> Vector {
        &w.linear.mul_vec(x) + &self.phi.lattice_to_ambient(&w.translation)
    }

    /// Action of a linear part on a lattice vector.
    pub fn act_on_lattice(&self, linear: &Matrix, lam: &LatticeVector) -> LatticeVector {
        let v = linear.mul_vec(&self.phi.lattice_to_ambient(lam));
        self.phi
            .ambient_to_lattice(&v)
            .expect("W0 preserves the coroot lattice")
    }

    pub fn compose(&self, u: &AffineElement, v: &AffineElement) -> AffineElement {
        let moved = self.act_on_lattice(&u.linear, &v.translation);
        AffineElement {
            translation: u.translation.add(&moved),
            linear: &u.linear * &v.linear,
        }
    }

    pub fn inverse(&self, w: &AffineElement) -> AffineElement {
        let lt = w.linear.transpose();
        let back = self.act_on_lattice(&lt, &w.translation);
        AffineElement {
            translation: back.neg(),
            linear: lt,
        }
    }

    /// The image under `p: W -> W0`.
    pub fn project(&self, w: &AffineElement) -> AffineElement {
        AffineElement {
            translation: LatticeVector::zero(self.rank()),
            linear: w.linear.clone(),
        }
    }

    pub fn evaluate_word(&self, word: &ReflectionWord) -> Result<AffineElement> {
        let mut acc = self.identity();
        for r in &word.0 {
            acc = self.compose(&acc, &self.reflection(r)?);
        }
        Ok(acc)
    }

    /// The canonical label of `w` when it is a reflection.
    pub fn is_reflection(&self, w: &AffineElement) -> Option<AffineReflection> {
        let root = self.reflection_matrices.iter().position(|m| m == &w.linear)?;
        let c = self.phi.coroot_coords(root);
        let (j, &cj) = c.iter().enumerate().find(|(_, &x)| x != 0)?;
        let lj = w.translation.0[j];
        if lj % cj != 0 {
            return None;
        }
        let offset = lj / cj;
        let candidate = LatticeVector(c.to_vec()).scale(offset);
        (candidate == w.translation).then_some(AffineReflection { root, offset })
    }

    /// `r' r r'` for reflections `r`, `r'`, as a reflection label.
    pub fn conjugate(&self, by: &AffineReflection, r: &AffineReflection) -> Result<AffineReflection> {
        let b = self.reflection(by)?;
        let x = self.reflection(r)?;
        let c = self.compose(&b, &self.compose(&x, &b));
        self.is_reflection(&c)
            .ok_or_else(|| Error::Internal(format!("conjugate of {r} by {by} is not a reflection")))
    }

    // Integer form.

    pub fn int_identity(&self) -> IntElement {
        let n = self.rank();
        let mut data = vec![0; n + n * n];
        for i in 0..n {
            data[n + i * n + i] = 1;
        }
        IntElement(data)
    }

    /// Integer matrix of `s_α` on simple-coroot coordinates.
    pub fn int_reflection(&self, r: &AffineReflection) -> IntElement {
        let n = self.rank();
        let c = self.phi.coroot_coords(r.root);
        let pair = &self.pairings[r.root];
        let mut data = vec![0; n + n * n];
        for i in 0..n {
            data[i] = r.offset * c[i];
            for j in 0..n {
                data[n + i * n + j] = i64::from(i == j) - c[i] * pair[j];
            }
        }
        IntElement(data)
    }

    pub fn int_compose(&self, u: &IntElement, v: &IntElement) -> IntElement {
        let n = self.rank();
        let (ul, um) = u.0.split_at(n);
        let (vl, vm) = v.0.split_at(n);
        let mut data = vec![0; n + n * n];
        for i in 0..n {
            let mut s = ul[i];
            for k in 0..n {
                s += um[i * n + k] * vl[k];
            }
            data[i] = s;
            for j in 0..n {
                let mut s = 0;
                for k in 0..n {
                    s += um[i * n + k] * vm[k * n + j];
                }
                data[n + i * n + j] = s;
            }
        }
        IntElement(data)
    }

    pub fn int_apply_matrix(&self, m: &[i64], x: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|k| m[i * n + k] * x[k]).sum())
            .collect()
    }

    pub fn to_int(&self, w: &AffineElement) -> IntElement {
        let n = self.rank();
        let mut data = w.translation.0.clone();
        data.resize(n + n * n, 0);
        for j in 0..n {
            let img = self
                .phi
                .ambient_to_lattice(&w.linear.mul_vec(&self.phi.simple_coroots()[j]))
                .expect("W0 preserves the coroot lattice");
            for i in 0..n {
                data[n + i * n + j] = img.0[i];
            }
        }
        IntElement(data)
    }

    pub fn from_int(&self, x: &IntElement) -> Result<AffineElement> {
        let n = self.rank();
        let d = self.phi.ambient_dim();
        let b = Matrix::from_columns(self.phi.simple_coroots(), d);
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = int(x.0[n + i * n + j]);
            }
        }
        // ambient = B M P + (I - B P); B P is the span projection.
        let mut p_cols = Vec::with_capacity(d);
        for j in 0..d {
            p_cols.push(lattice_coords_rational(&self.phi, &Vector::unit(d, j)));
        }
        let p = Matrix::from_columns(&p_cols, n);
        let linear = &(&(&b * &m) * &p) + &self.complement;
        debug_assert_eq!(&b * &p, self.span_projection);
        self.element(LatticeVector(x.0[..n].to_vec()), linear)
    }
}

/// Rational simple-coroot coordinates of the orthogonal projection of `v`
/// onto the root span.
fn lattice_coords_rational(phi: &RootSystem, v: &Vector) -> Vector {
    let d = phi.ambient_dim();
    let b = Matrix::from_columns(phi.simple_coroots(), d);
    let gram = &b.transpose() * &b;
    let rhs = b.transpose().mul_vec(v);
    crate::linalg::solve(&gram, &rhs).expect("coroot Gram matrix is invertible")
}

/// Matrix of `x ↦ x - <x,α> α^∨`.
pub fn reflection_matrix(alpha: &Vector, check: &Vector) -> Matrix {
    let d = alpha.len();
    let mut m = Matrix::identity(d);
    for i in 0..d {
        for j in 0..d {
            let v = &check[i] * &alpha[j];
            m[(i, j)] -= v;
        }
    }
    m
}

//! Reflection length in affine Weyl groups.
//!
//! Spherical elements use the codimension of their fixed space. Translations
//! `t_λ` have length exactly twice the dimension of `λ`, where the dimension
//! is the fewest coroots whose span contains `λ`; that number also counts the
//! fewest integer multiples of coroots summing to `λ`. Mixed elements get an
//! interval `[max(k, ℓ0), k + ℓ0(v0)]` together with a witness word.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::affine::{AffineElement, AffineGroup, AffineReflection, ReflectionWord};
use crate::error::{Error, Result};
use crate::linalg::{in_span, rank, rank_of, to_i64, Matrix, Scalar, Vector};
use crate::roots::LatticeVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    SphericalCarter,
    #[serde(rename = "translation-2k")]
    Translation2k,
    LinearlyIndependentRoots,
    OracleCertified,
    BoundsOnly,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Certificate::SphericalCarter => "spherical-carter",
            Certificate::Translation2k => "translation-2k",
            Certificate::LinearlyIndependentRoots => "linearly-independent-roots",
            Certificate::OracleCertified => "oracle-certified",
            Certificate::BoundsOnly => "bounds-only",
        };
        f.write_str(s)
    }
}

/// Exact value or certified interval for a reflection length. `upper` is
/// `None` when no factorization was found (an oracle search that ran out of
/// window).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthReport {
    pub lower: usize,
    pub upper: Option<usize>,
    pub exact: bool,
    pub certificate: Certificate,
    pub witness: Option<ReflectionWord>,
}

impl LengthReport {
    pub fn new(
        lower: usize,
        upper: Option<usize>,
        certificate: Certificate,
        witness: Option<ReflectionWord>,
    ) -> Self {
        debug_assert!(upper.is_none_or(|u| lower <= u), "lower {lower} > upper {upper:?}");
        LengthReport {
            lower,
            upper,
            exact: upper == Some(lower),
            certificate,
            witness,
        }
    }

    pub fn exact(value: usize, certificate: Certificate, witness: Option<ReflectionWord>) -> Self {
        Self::new(value, Some(value), certificate, witness)
    }

    /// The exact value, if known.
    pub fn value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }
}

/// Minimal coroot subspace containing `λ`, with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealDimension {
    pub k: usize,
    /// Positive root indices whose coroots form a basis of the subspace.
    pub roots: Vec<usize>,
    #[serde(skip)]
    pub coroots: Vec<Vector>,
    #[serde(serialize_with = "serialize_scalars")]
    pub coefficients: Vec<Scalar>,
}

/// Integer expression `λ = Σ c_i α_i^∨` with the fewest summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionWitness {
    pub k: usize,
    pub roots: Vec<usize>,
    #[serde(skip)]
    pub coroots: Vec<Vector>,
    pub coefficients: Vec<i64>,
}

/// One minimal coroot subspace, identified by the positive roots it holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorootSubspace {
    pub basis: Vec<usize>,
    pub roots: Vec<usize>,
}

fn serialize_scalars<S: serde::Serializer>(xs: &[Scalar], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(|x| x.to_string()))
}

/// `ℓ_{R0}(w0) = rank(w0 - I)`.
pub fn spherical_length(g: &AffineGroup, w0: &AffineElement) -> Result<usize> {
    if !w0.is_spherical() {
        return Err(Error::NotSpherical);
    }
    let d = g.root_system().ambient_dim();
    Ok(rank(&(w0.linear() - &Matrix::identity(d))))
}

/// A minimal factorization of a spherical element into `r_{α,0}` letters.
pub fn spherical_factorization(g: &AffineGroup, w0: &AffineElement) -> Result<ReflectionWord> {
    let mut cur = w0.clone();
    let mut remaining = spherical_length(g, &cur)?;
    let mut word = Vec::with_capacity(remaining);
    while remaining > 0 {
        let mut stepped = false;
        for p in 0..g.positive_count() {
            let s = AffineReflection::linear(p);
            let next = g.compose(&g.reflection(&s)?, &cur);
            if spherical_length(g, &next)? + 1 == remaining {
                word.push(s);
                cur = next;
                remaining -= 1;
                stepped = true;
                break;
            }
        }
        if !stepped {
            return Err(Error::Internal("no length-reducing reflection".into()));
        }
    }
    Ok(ReflectionWord(word))
}

/// Real dimension of `λ` by iterative deepening over independent sets of
/// positive coroots, taken in index order. The first hit is returned.
pub fn real_dimension(g: &AffineGroup, lam: &LatticeVector) -> RealDimension {
    let target = g.root_system().lattice_to_ambient(lam);
    let coroots = g.root_system().positive_coroots();
    for k in 0..=g.rank() {
        let mut chosen = Vec::new();
        let mut basis = Vec::new();
        let mut hit = None;
        search_subsets(coroots, &target, k, 0, &mut chosen, &mut basis, &mut |c, b, coeffs| {
            hit = Some((c.to_vec(), b.to_vec(), coeffs));
            true
        });
        if let Some((roots, coroots, coefficients)) = hit {
            return RealDimension {
                k,
                roots,
                coroots,
                coefficients,
            };
        }
    }
    unreachable!("the simple coroots span every lattice vector")
}

type SubsetVisitor<'a> = dyn FnMut(&[usize], &[Vector], Vec<Scalar>) -> bool + 'a;

/// Depth-first over increasing index tuples of independent coroots; calls
/// `visit` at depth `k` when the target lies in the span. Stops when
/// `visit` returns true.
fn search_subsets(
    coroots: &[Vector],
    target: &Vector,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    basis: &mut Vec<Vector>,
    visit: &mut SubsetVisitor<'_>,
) -> bool {
    if chosen.len() == k {
        if let Some(c) = in_span(basis, target) {
            return visit(chosen, basis, c);
        }
        return false;
    }
    for i in start..coroots.len() {
        if coroots.len() - i < k - chosen.len() {
            break;
        }
        if in_span(basis, &coroots[i]).is_some() {
            continue;
        }
        chosen.push(i);
        basis.push(coroots[i].clone());
        let stop = search_subsets(coroots, target, k, i + 1, chosen, basis, visit);
        chosen.pop();
        basis.pop();
        if stop {
            return true;
        }
    }
    false
}

/// Every distinct minimal coroot subspace containing `λ`.
pub fn minimal_coroot_subspaces(g: &AffineGroup, lam: &LatticeVector) -> Vec<CorootSubspace> {
    let k = real_dimension(g, lam).k;
    let target = g.root_system().lattice_to_ambient(lam);
    let coroots = g.root_system().positive_coroots();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    let mut basis = Vec::new();
    search_subsets(coroots, &target, k, 0, &mut chosen, &mut basis, &mut |c, b, _| {
        let members: Vec<usize> = (0..coroots.len())
            .filter(|&i| in_span(b, &coroots[i]).is_some())
            .collect();
        if seen.insert(members.clone()) {
            out.push(CorootSubspace {
                basis: c.to_vec(),
                roots: members,
            });
        }
        false
    });
    out
}

/// Integer expression with the minimal number of summands, read off the
/// simple coroots of the root subsystem in the minimal coroot subspace.
pub fn integral_expression(g: &AffineGroup, lam: &LatticeVector) -> Result<DimensionWitness> {
    let phi = g.root_system();
    let real = real_dimension(g, lam);
    if real.k == 0 {
        return Ok(DimensionWitness {
            k: 0,
            roots: vec![],
            coroots: vec![],
            coefficients: vec![],
        });
    }
    let sub = phi.sub_root_system(&real.coroots);
    if sub.rank() != real.k {
        return Err(Error::Internal(format!(
            "subsystem in a {}-dimensional coroot subspace has rank {}",
            real.k,
            sub.rank()
        )));
    }
    let target = phi.lattice_to_ambient(lam);
    let coeffs = in_span(&sub.simple_coroots, &target)
        .ok_or_else(|| Error::Internal("λ left its minimal coroot subspace".into()))?;
    let coefficients: Vec<i64> = coeffs
        .iter()
        .map(to_i64)
        .collect::<Option<_>>()
        .ok_or_else(|| {
            Error::Internal(format!("λ = {lam} is not integral over the subsystem's coroots"))
        })?;
    if coefficients.contains(&0) {
        return Err(Error::Internal("zero coefficient in a minimal expression".into()));
    }
    Ok(DimensionWitness {
        k: real.k,
        roots: sub.simple.clone(),
        coroots: sub.simple_coroots.clone(),
        coefficients,
    })
}

/// `t_λ = (r_{α1,c1} r_{α1}) ⋯ (r_{αk,ck} r_{αk})`.
pub fn factor_translation(g: &AffineGroup, lam: &LatticeVector) -> Result<ReflectionWord> {
    let wit = integral_expression(g, lam)?;
    let mut word = Vec::with_capacity(2 * wit.k);
    for (&p, &c) in wit.roots.iter().zip(&wit.coefficients) {
        word.push(AffineReflection::new(p, c));
        word.push(AffineReflection::linear(p));
    }
    Ok(ReflectionWord(word))
}

/// Exact length `2k` of the translation `t_λ`.
pub fn translation_length(g: &AffineGroup, lam: &LatticeVector) -> Result<LengthReport> {
    let word = factor_translation(g, lam)?;
    Ok(LengthReport::exact(word.len(), Certificate::Translation2k, Some(word)))
}

/// An element of reflection length `k` sending the origin to `λ`, with the
/// word realizing it.
pub fn move_origin_element(
    g: &AffineGroup,
    lam: &LatticeVector,
) -> Result<(AffineElement, ReflectionWord)> {
    let word = factor_translation(g, lam)?;
    let k = word.len() / 2;
    let fixers: Vec<usize> = (0..k).map(|j| 2 * j + 1).collect();
    let rewritten = rewrite_factorization(g, &word, &fixers, Side::Back)?;
    let u_word = ReflectionWord(rewritten.0[..k].to_vec());
    Ok((g.evaluate_word(&u_word)?, u_word))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Front,
    Back,
}

/// Moves the letters at `positions` (0-based, strictly increasing) to the
/// front or back of the word, keeping their order. Each adjacent swap
/// replaces the passed-over letter by its conjugate, so the product and the
/// length are unchanged.
pub fn rewrite_factorization(
    g: &AffineGroup,
    word: &ReflectionWord,
    positions: &[usize],
    side: Side,
) -> Result<ReflectionWord> {
    let m = word.len();
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidPositions("positions must be strictly increasing".into()));
    }
    if positions.last().is_some_and(|&p| p >= m) {
        return Err(Error::InvalidPositions(format!("position out of range for length {m}")));
    }
    let k = positions.len();
    let mut letters = word.0.clone();
    match side {
        Side::Front => {
            for (t, &p) in positions.iter().enumerate() {
                for pos in (t + 1..=p).rev() {
                    // x y = y (y x y)
                    let x = letters[pos - 1];
                    let y = letters[pos];
                    letters[pos - 1] = y;
                    letters[pos] = g.conjugate(&y, &x)?;
                }
            }
        }
        Side::Back => {
            for (t, &p) in positions.iter().enumerate().rev() {
                let target = m - k + t;
                for pos in p..target {
                    // y x = (y x y) y
                    let y = letters[pos];
                    let x = letters[pos + 1];
                    letters[pos] = g.conjugate(&y, &x)?;
                    letters[pos + 1] = y;
                }
            }
        }
    }
    Ok(ReflectionWord(letters))
}

/// The word's length, when its roots are linearly independent (and hence
/// the word is a minimal factorization).
pub fn lin_ind_length(g: &AffineGroup, word: &ReflectionWord) -> Option<usize> {
    let roots: Vec<Vector> = word
        .0
        .iter()
        .map(|r| g.root_system().positive_roots()[r.root].clone())
        .collect();
    (rank_of(&roots) == roots.len()).then_some(roots.len())
}

/// Interval `[max(k, ℓ0(w0)), k + ℓ0(v0)]` for `w = t_λ w0`, sharpened to an
/// exact value for pure translations and spherical elements.
pub fn length_bounds(g: &AffineGroup, w: &AffineElement) -> Result<LengthReport> {
    let lam = w.translation();
    if w.is_translation() {
        return translation_length(g, lam);
    }
    let w0 = g.project(w);
    let l0 = spherical_length(g, &w0)?;
    if lam.is_zero() {
        let word = spherical_factorization(g, &w0)?;
        return Ok(LengthReport::exact(l0, Certificate::SphericalCarter, Some(word)));
    }
    let (u, u_word) = move_origin_element(g, lam)?;
    let k = u_word.len();
    let v0 = g.compose(&g.inverse(&u), w);
    debug_assert!(v0.is_spherical());
    let witness = u_word.concat(&spherical_factorization(g, &v0)?);
    let lower = k.max(l0);
    Ok(LengthReport::new(
        lower,
        Some(witness.len()),
        Certificate::BoundsOnly,
        Some(witness),
    ))
}

/// Length report for an element given as a reflection word: exact when the
/// word's roots are independent, otherwise the bounds of its evaluation
/// with the word itself as a candidate witness.
pub fn word_length(g: &AffineGroup, word: &ReflectionWord) -> Result<LengthReport> {
    if let Some(m) = lin_ind_length(g, word) {
        g.evaluate_word(word)?;
        return Ok(LengthReport::exact(
            m,
            Certificate::LinearlyIndependentRoots,
            Some(word.clone()),
        ));
    }
    let mut report = length_bounds(g, &g.evaluate_word(word)?)?;
    if report.upper.is_some_and(|u| word.len() < u) {
        report = LengthReport::new(report.lower, Some(word.len()), report.certificate, Some(word.clone()));
    }
    Ok(report)
}

/// Sum of reports for the factors of a reducible group.
pub fn reducible_length(reports: &[LengthReport]) -> LengthReport {
    let lower = reports.iter().map(|r| r.lower).sum();
    let upper = reports.iter().map(|r| r.upper).sum::<Option<usize>>();
    let certificate = match reports.first() {
        Some(first) if reports.iter().all(|r| r.certificate == first.certificate) => {
            first.certificate
        }
        Some(_) => Certificate::BoundsOnly,
        None => Certificate::BoundsOnly,
    };
    LengthReport::new(lower, upper, certificate, None)
}

/// `true` if `v` is a nonzero scalar multiple of a coroot.
pub fn is_coroot_multiple(g: &AffineGroup, v: &Vector) -> bool {
    !v.is_zero()
        && g.root_system()
            .positive_coroots()
            .iter()
            .any(|c| in_span(std::slice::from_ref(c), v).is_some())
}

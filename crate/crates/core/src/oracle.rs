//! Brute-force cross-checks.
//!
//! The finite Weyl group is enumerated outright and its Cayley graph over
//! all reflections is searched by BFS. Affine elements are handled two ways:
//! a windowed search over the finite alphabet `{r_{α,i} : |i| ≤ window}`
//! (meet in the middle), and an exact decider that runs over root patterns
//! only.
//!
//! The decider uses `r_{β1,i1} ⋯ r_{βm,im} = t_μ s_{β1} ⋯ s_{βm}` with
//! `μ = Σ i_j u_{j-1}(β_j^∨)` and `u_j = s_{β1} ⋯ s_{βj}`. So `t_λ w0` is a
//! product of `m` reflections iff some root sequence multiplies to `w0`
//! while `λ` lies in the integer span of the `u_{j-1}(β_j^∨)`. That check
//! needs no offset bound.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use indexmap::IndexMap;
use serde::Serialize;

use crate::affine::{AffineElement, AffineGroup, AffineReflection, IntElement, ReflectionWord};
use crate::error::{Error, Result};
use crate::length::{length_bounds, spherical_length, Certificate, LengthReport};
use crate::linalg::integer_combination;
use crate::roots::{LatticeVector, RootSystem, RootSystemSpec};

/// Refuse to enumerate finite groups larger than this.
pub const MAX_TABLE_SIZE: usize = 200_000;

/// Coefficient list indexed by reflection length.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct LengthPolynomial(pub Vec<u64>);

impl LengthPolynomial {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut c: Vec<u64> = Vec::new();
        for l in lengths {
            if c.len() <= l {
                c.resize(l + 1, 0);
            }
            c[l] += 1;
        }
        LengthPolynomial(c)
    }

    /// `∏ (1 + e x)`.
    pub fn solomon_product(exponents: &[u32]) -> Self {
        let mut c = vec![1u64];
        for &e in exponents {
            let mut next = vec![0u64; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i] += a;
                next[i + 1] += a * u64::from(e);
            }
            c = next;
        }
        LengthPolynomial(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0)
    }

    /// Evaluation at 1.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// Largest `k` with `x^k` dividing the polynomial (`None` for zero).
    pub fn x_adic_valuation(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0)
    }

    pub fn divisible_by_x_pow(&self, k: usize) -> bool {
        self.x_adic_valuation().is_none_or(|v| v >= k)
    }

    fn trimmed(&self) -> &[u64] {
        let end = self.degree().map_or(0, |d| d + 1);
        &self.0[..end]
    }
}

impl fmt::Display for LengthPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => f.write_str("x")?,
                (1, _) => write!(f, "{c}x")?,
                (_, 1) => write!(f, "x^{i}")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// The finite Weyl group `W0`, as integer matrices on simple-coroot
/// coordinates. Entry 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroupTable {
    n: usize,
    matrices: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    /// `times_reflection[u][p]` is the ordinal of `u s_p`.
    times_reflection: Vec<Vec<usize>>,
    reflections: Vec<usize>,
    lengths: Vec<usize>,
}

/// Closure of the identity under the simple reflections.
pub fn enumerate_w0(g: &AffineGroup) -> Result<FiniteGroupTable> {
    let phi = g.root_system();
    let n = g.rank();
    let simple: Vec<usize> = phi
        .simple_roots()
        .iter()
        .map(|a| phi.root_index(a).map(|(i, _)| i))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("simple root missing from the positive list".into()))?;
    let mat = |p: usize| g.int_reflection(&AffineReflection::linear(p)).matrix(n).to_vec();
    let gens: Vec<Vec<i64>> = simple.iter().map(|&p| mat(p)).collect();

    let identity = g.int_identity().matrix(n).to_vec();
    let mut matrices = vec![identity.clone()];
    let mut index = HashMap::from([(identity, 0usize)]);
    let mut head = 0;
    while head < matrices.len() {
        for s in &gens {
            let m = mat_mul(n, &matrices[head], s);
            if !index.contains_key(&m) {
                if matrices.len() >= MAX_TABLE_SIZE {
                    return Err(Error::Envelope(format!(
                        "W0 of {} has more than {MAX_TABLE_SIZE} elements",
                        phi.spec()
                    )));
                }
                index.insert(m.clone(), matrices.len());
                matrices.push(m);
            }
        }
        head += 1;
    }

    let refl: Vec<Vec<i64>> = (0..g.positive_count()).map(mat).collect();
    let mut times_reflection = Vec::with_capacity(matrices.len());
    for m in &matrices {
        let row = refl
            .iter()
            .map(|r| index.get(&mat_mul(n, m, r)).copied())
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Internal("W0 table is not closed under reflections".into()))?;
        times_reflection.push(row);
    }
    let reflections = times_reflection[0].clone();
    let mut table = FiniteGroupTable {
        n,
        matrices,
        index,
        times_reflection,
        reflections,
        lengths: vec![],
    };
    table.lengths = table.distances_from(0);
    Ok(table)
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += x * b[k * n + j];
            }
        }
    }
    c
}

impl FiniteGroupTable {
    pub fn len(&self) -> usize {
        self.matrices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn matrix(&self, i: usize) -> &[i64] {
        &self.matrices[i]
    }

    pub fn index_of(&self, matrix: &[i64]) -> Option<usize> {
        self.index.get(matrix).copied()
    }

    /// Ordinals of the reflections `s_p`, in positive-root order.
    pub fn reflections(&self) -> &[usize] {
        &self.reflections
    }

    pub fn times_reflection(&self, u: usize, p: usize) -> usize {
        self.times_reflection[u][p]
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.index[&mat_mul(self.n, &self.matrices[a], &self.matrices[b])]
    }

    /// Cayley distance over `R0` from the identity.
    pub fn length(&self, i: usize) -> usize {
        self.lengths[i]
    }

    pub fn element(&self, g: &AffineGroup, i: usize) -> Result<AffineElement> {
        let mut data = vec![0; self.n];
        data.extend_from_slice(&self.matrices[i]);
        g.from_int(&IntElement(data))
    }

    pub fn index_of_element(&self, g: &AffineGroup, w0: &AffineElement) -> Result<usize> {
        if !w0.is_spherical() {
            return Err(Error::NotInTable);
        }
        let int = g.to_int(w0);
        self.index_of(int.matrix(self.n)).ok_or(Error::NotInTable)
    }

    /// BFS distances to `target` in the Cayley graph over `R0`. Since `R0` is
    /// closed under conjugation, `d(u, target) = ℓ_{R0}(u^{-1} target)`.
    pub fn distances_from(&self, target: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        dist[target] = 0;
        let mut queue = VecDeque::from([target]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.times_reflection[u] {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

pub fn cayley_reflection_distance(
    g: &AffineGroup,
    table: &FiniteGroupTable,
    w0: &AffineElement,
) -> Result<usize> {
    Ok(table.length(table.index_of_element(g, w0)?))
}

/// Distribution of reflection length over `W0`, checked against the
/// product formula from the stored exponents.
pub fn solomon_polynomial(g: &AffineGroup, table: &FiniteGroupTable) -> Result<LengthPolynomial> {
    let f = LengthPolynomial::from_lengths((0..table.len()).map(|i| table.length(i)));
    let expected = LengthPolynomial::solomon_product(g.root_system().exponents());
    if f.trimmed() != expected.trimmed() {
        return Err(Error::CheckFailed(format!(
            "Solomon polynomial of {}: enumerated {f}, product {expected}",
            g.root_system().spec()
        )));
    }
    Ok(f)
}

/// Ball in the Cayley graph of `W` over a windowed reflection alphabet.
struct Ball {
    letters: Vec<AffineReflection>,
    nodes: IndexMap<IntElement, (usize, usize)>,
    dist: Vec<usize>,
}

impl Ball {
    fn build(g: &AffineGroup, window: i64, radius: usize) -> Ball {
        let mut letters = Vec::new();
        for p in 0..g.positive_count() {
            for i in -window..=window {
                letters.push(AffineReflection::new(p, i));
            }
        }
        let ints: Vec<IntElement> = letters.iter().map(|r| g.int_reflection(r)).collect();
        let mut nodes = IndexMap::new();
        nodes.insert(g.int_identity(), (usize::MAX, usize::MAX));
        let mut dist = vec![0];
        let mut start = 0;
        for h in 0..radius {
            let end = nodes.len();
            for idx in start..end {
                let x = nodes.get_index(idx).expect("in range").0.clone();
                for (li, r) in ints.iter().enumerate() {
                    let y = g.int_compose(&x, r);
                    if !nodes.contains_key(&y) {
                        nodes.insert(y, (idx, li));
                        dist.push(h + 1);
                    }
                }
            }
            start = end;
        }
        Ball {
            letters,
            nodes,
            dist,
        }
    }

    fn word(&self, mut idx: usize) -> ReflectionWord {
        let mut out = Vec::with_capacity(self.dist[idx]);
        while idx != 0 {
            let (parent, letter) = self.nodes[idx];
            out.push(self.letters[letter]);
            idx = parent;
        }
        out.reverse();
        ReflectionWord(out)
    }
}

/// Search oracle for one affine group. Balls are cached per
/// `(window, radius)`.
pub struct AffineOracle<'g> {
    g: &'g AffineGroup,
    table: FiniteGroupTable,
    balls: Mutex<HashMap<(i64, usize), Arc<Ball>>>,
}

impl<'g> AffineOracle<'g> {
    pub fn new(g: &'g AffineGroup) -> Result<Self> {
        Ok(AffineOracle {
            g,
            table: enumerate_w0(g)?,
            balls: Mutex::new(HashMap::new()),
        })
    }

    pub fn group(&self) -> &AffineGroup {
        self.g
    }

    pub fn table(&self) -> &FiniteGroupTable {
        &self.table
    }

    fn ball(&self, window: i64, radius: usize) -> Arc<Ball> {
        let mut cache = self.balls.lock().expect("ball cache poisoned");
        cache
            .entry((window, radius))
            .or_insert_with(|| Arc::new(Ball::build(self.g, window, radius)))
            .clone()
    }

    /// Shortest factorization over the windowed alphabet of length at most
    /// `max_len`, or `None`.
    pub fn windowed_factorization(
        &self,
        w: &AffineElement,
        window: i64,
        max_len: usize,
    ) -> Option<ReflectionWord> {
        let ball = self.ball(window, max_len.div_ceil(2));
        let target = self.g.to_int(w);
        let mut best: Option<(usize, usize, usize)> = None;
        for (zi, z) in ball.nodes.keys().enumerate() {
            let dz = ball.dist[zi];
            if best.is_some_and(|(b, _, _)| dz >= b) {
                // Nodes are in BFS order, so no later z can help.
                break;
            }
            if let Some(yi) = ball.nodes.get_index_of(&self.g.int_compose(&target, z)) {
                let total = dz + ball.dist[yi];
                if total <= max_len && best.is_none_or(|(b, _, _)| total < b) {
                    best = Some((total, yi, zi));
                }
            }
        }
        // w = y z^{-1}, and z^{-1} is z's word reversed.
        best.map(|(_, yi, zi)| ball.word(yi).concat(&ball.word(zi).reversed()))
    }

    /// Exact reflection length by the root-pattern decider, with a
    /// witness, provided it is at most `max_len`.
    pub fn pattern_factorization(&self, w: &AffineElement, max_len: usize) -> Option<ReflectionWord> {
        let n = self.g.rank();
        let int = self.g.to_int(w);
        let target = self.table.index_of(int.matrix(n))?;
        let lam = int.translation(n).to_vec();
        let dist = self.table.distances_from(target);
        let coroots: Vec<&[i64]> = (0..self.g.positive_count())
            .map(|p| self.g.root_system().coroot_coords(p))
            .collect();
        let mut search = PatternSearch {
            oracle: self,
            dist: &dist,
            coroots: &coroots,
            lam: &lam,
            target,
            roots: vec![],
            vectors: vec![],
        };
        for m in dist[0]..=max_len {
            if (m - dist[0]) % 2 == 1 {
                continue;
            }
            if let Some(offsets) = search.run(0, m) {
                return Some(ReflectionWord(
                    search
                        .roots
                        .iter()
                        .zip(offsets)
                        .map(|(&p, i)| AffineReflection::new(p, i))
                        .collect(),
                ));
            }
        }
        None
    }

    /// Windowed search plus pattern refutation. Exact when the windowed
    /// factorization is as short as the pattern decider allows.
    pub fn affine_length(
        &self,
        w: &AffineElement,
        window: i64,
        max_len: Option<usize>,
    ) -> Result<LengthReport> {
        let theory = length_bounds(self.g, w)?;
        let max_len = max_len.unwrap_or_else(|| theory.upper.expect("bounds carry an upper"));
        let found = self.windowed_factorization(w, window, max_len);
        if let Some(word) = &found {
            if self.g.evaluate_word(word)? != *w {
                return Err(Error::Internal("windowed witness does not evaluate to w".into()));
            }
        }
        let limit = found.as_ref().map_or(max_len, ReflectionWord::len);
        let lower = match self.pattern_factorization(w, limit) {
            Some(word) => {
                if self.g.evaluate_word(&word)? != *w {
                    return Err(Error::Internal("pattern witness does not evaluate to w".into()));
                }
                word.len()
            }
            None if found.is_some() => {
                return Err(Error::Internal("pattern search missed a windowed factorization".into()))
            }
            None => limit + 1,
        };
        if lower < theory.lower || theory.upper.is_some_and(|u| found.is_some() && lower > u) {
            return Err(Error::Internal(format!(
                "oracle value {lower} outside theoretical interval [{}, {:?}]",
                theory.lower, theory.upper
            )));
        }
        Ok(match found {
            Some(word) if word.len() == lower => {
                LengthReport::exact(lower, Certificate::OracleCertified, Some(word))
            }
            Some(word) => LengthReport::new(lower, Some(word.len()), Certificate::BoundsOnly, Some(word)),
            None => LengthReport::new(lower, None, Certificate::BoundsOnly, None),
        })
    }

    /// `f_λ(x) = Σ_{w0} x^{ℓ(t_λ w0)}`, failing on any uncertified term.
    pub fn f_lambda_polynomial(&self, lam: &LatticeVector, window: i64) -> Result<LengthPolynomial> {
        let t = self.g.translation(lam);
        let mut lengths = Vec::with_capacity(self.table.len());
        for i in 0..self.table.len() {
            let w = self.g.compose(&t, &self.table.element(self.g, i)?);
            let report = self.affine_length(&w, window, None)?;
            match report.value() {
                Some(l) => lengths.push(l),
                None => {
                    return Err(Error::Uncertified {
                        element: crate::expr::format_element(self.g, &w),
                        window,
                    })
                }
            }
        }
        Ok(LengthPolynomial::from_lengths(lengths))
    }
}

struct PatternSearch<'a, 'g> {
    oracle: &'a AffineOracle<'g>,
    dist: &'a [usize],
    coroots: &'a [&'a [i64]],
    lam: &'a [i64],
    target: usize,
    roots: Vec<usize>,
    vectors: Vec<Vec<i64>>,
}

impl PatternSearch<'_, '_> {
    /// Depth-first over root sequences from `u`; returns offsets for the
    /// sequence left in `self.roots`.
    fn run(&mut self, u: usize, remaining: usize) -> Option<Vec<i64>> {
        if remaining == 0 {
            if u != self.target {
                return None;
            }
            let cols: Vec<Vec<i64>> = self.vectors.clone();
            return integer_combination(&cols, self.lam);
        }
        let table = &self.oracle.table;
        let n = table.n;
        for p in 0..self.coroots.len() {
            let next = table.times_reflection(u, p);
            if self.dist[next] > remaining - 1 {
                continue;
            }
            let v = self.oracle.g.int_apply_matrix(table.matrix(u), self.coroots[p]);
            debug_assert_eq!(v.len(), n);
            self.roots.push(p);
            self.vectors.push(v);
            if let Some(found) = self.run(next, remaining - 1) {
                return Some(found);
            }
            self.roots.pop();
            self.vectors.pop();
        }
        None
    }
}

/// Shortest windowed path moving the origin to each target, up to
/// `max_len` steps; `None` where no such path exists.
pub fn origin_distances(
    g: &AffineGroup,
    targets: &[LatticeVector],
    window: i64,
    max_len: usize,
) -> Vec<Option<usize>> {
    let n = g.rank();
    let steps: Vec<(&[i64], &[i64])> = (0..g.positive_count())
        .map(|p| (g.pairing(p), g.root_system().coroot_coords(p)))
        .collect();
    let neighbors = |x: &[i64]| -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (pair, c) in &steps {
            let a: i64 = pair.iter().zip(x).map(|(p, v)| p * v).sum();
            for i in -window..=window {
                if i != a {
                    out.push((0..n).map(|j| x[j] + (i - a) * c[j]).collect());
                }
            }
        }
        out
    };
    let ball = |center: Vec<i64>, radius: usize| -> HashMap<Vec<i64>, usize> {
        let mut seen = HashMap::from([(center.clone(), 0)]);
        let mut frontier = vec![center];
        for h in 1..=radius {
            let mut next = Vec::new();
            for x in &frontier {
                for y in neighbors(x) {
                    if !seen.contains_key(&y) {
                        seen.insert(y.clone(), h);
                        next.push(y);
                    }
                }
            }
            frontier = next;
        }
        seen
    };
    let near = max_len / 2;
    let origin = ball(vec![0; n], max_len - near);
    targets
        .iter()
        .map(|t| {
            ball(t.0.clone(), near)
                .iter()
                .filter_map(|(y, dy)| origin.get(y).map(|d0| d0 + dy))
                .min()
                .filter(|&d| d <= max_len)
        })
        .collect()
}

/// Length-3 reflection factorizations of the Coxeter element
/// `s_{α12} s_{α23} s_{α34}` of `W(A3)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingReport {
    pub total: usize,
    pub both_crossing: usize,
    /// Number of factorizations each reflection occurs in, by positive root.
    pub occurrences: Vec<usize>,
    pub coverage: usize,
    pub factorizations: Vec<[usize; 3]>,
}

pub fn a3_crossing_obstruction() -> Result<CrossingReport> {
    let spec: RootSystemSpec = "A3".parse()?;
    let g = AffineGroup::new(RootSystem::build(&spec)?);
    let table = enumerate_w0(&g)?;
    let phi = g.root_system();
    let idx = |v: &[i64]| -> Result<usize> {
        phi.root_index(&crate::linalg::Vector::from_ints(v))
            .map(|(i, _)| i)
            .ok_or_else(|| Error::Internal(format!("{v:?} is not an A3 root")))
    };
    let a12 = idx(&[1, -1, 0, 0])?;
    let a23 = idx(&[0, 1, -1, 0])?;
    let a34 = idx(&[0, 0, 1, -1])?;
    let a13 = idx(&[1, 0, -1, 0])?;
    let a24 = idx(&[0, 1, 0, -1])?;
    let coxeter = table.times_reflection(table.times_reflection(table.reflections()[a12], a23), a34);
    let n = g.positive_count();
    let mut factorizations = Vec::new();
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                let w = table.times_reflection(table.times_reflection(table.reflections()[p], q), r);
                if w == coxeter {
                    factorizations.push([p, q, r]);
                }
            }
        }
    }
    let mut occurrences = vec![0; n];
    for f in &factorizations {
        let mut roots = f.to_vec();
        roots.sort_unstable();
        roots.dedup();
        for p in roots {
            occurrences[p] += 1;
        }
    }
    let both_crossing = factorizations
        .iter()
        .filter(|f| f.contains(&a13) && f.contains(&a24))
        .count();
    Ok(CrossingReport {
        total: factorizations.len(),
        both_crossing,
        coverage: occurrences.iter().filter(|&&c| c > 0).count(),
        occurrences,
        factorizations,
    })
}

/// `spherical_length` against the Cayley distance for every element of
/// `W0`. Returns the number of elements checked.
pub fn check_carter(g: &AffineGroup, table: &FiniteGroupTable) -> Result<usize> {
    for i in 0..table.len() {
        let w0 = table.element(g, i)?;
        let carter = spherical_length(g, &w0)?;
        if carter != table.length(i) {
            return Err(Error::CheckFailed(format!(
                "element {i} of W0({}): Carter {carter}, Cayley {}",
                g.root_system().spec(),
                table.length(i)
            )));
        }
    }
    Ok(table.len())
}

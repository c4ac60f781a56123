//! Batch experiments behind the CLI and the acceptance suite. Each returns
//! its data rows together with named pass/fail checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::affine::{AffineGroup, AffineReflection, ReflectionWord};
use crate::error::Result;
use crate::length::{
    integral_expression, length_bounds, real_dimension, reducible_length, rewrite_factorization,
    spherical_length, translation_length, word_length, Certificate, LengthReport, Side,
};
use crate::linalg::{frac, Vector};
use crate::oracle::{
    a3_crossing_obstruction, check_carter, enumerate_w0, origin_distances, solomon_polynomial,
    AffineOracle, CrossingReport, LengthPolynomial,
};
use crate::roots::{LatticeVector, RootSystem, RootSystemSpec};
use crate::universal::{uc_reflection_length, uc_reflection_length_unrestricted, UCWord};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

pub fn group(spec: &str) -> Result<AffineGroup> {
    let spec: RootSystemSpec = spec.parse()?;
    Ok(AffineGroup::new(RootSystem::build(&spec)?))
}

/// Every integer vector in `[-radius, radius]^n`, lexicographically.
pub fn lattice_box(n: usize, radius: i64) -> Vec<LatticeVector> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (-radius..=radius).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(LatticeVector).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRow {
    pub lambda: LatticeVector,
    pub k: usize,
    pub lower: usize,
    pub upper: Option<usize>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub system: String,
    pub rank: usize,
    pub rows: Vec<CensusRow>,
    pub checks: Vec<Check>,
}

/// Translation lengths over a box: all equal `2k ≤ 2n`, `2n` is attained,
/// and (with a window) the oracle certifies each one.
pub fn census(spec: &str, radius: i64, window: Option<i64>) -> Result<Census> {
    let g = group(spec)?;
    let n = g.rank();
    let oracle = window.map(|_| AffineOracle::new(&g)).transpose()?;
    let mut rows = Vec::new();
    let mut bad_formula = Vec::new();
    let mut uncertified = Vec::new();
    for lam in lattice_box(n, radius) {
        let k = integral_expression(&g, &lam)?.k;
        let theory = translation_length(&g, &lam)?;
        if theory.value() != Some(2 * k) || 2 * k > 2 * n {
            bad_formula.push(lam.to_string());
        }
        let report = match (&oracle, window) {
            (Some(o), Some(wd)) => {
                let r = o.affine_length(&g.translation(&lam), wd, Some(2 * k))?;
                if r.value() != Some(2 * k) {
                    uncertified.push(lam.to_string());
                }
                r
            }
            _ => theory,
        };
        rows.push(CensusRow {
            lambda: lam,
            k,
            lower: report.lower,
            upper: report.upper,
            certificate: report.certificate,
        });
    }
    let max = rows.iter().map(|r| 2 * r.k).max().unwrap_or(0);
    let mut checks = vec![
        Check::new("length-is-2k", bad_formula.is_empty(), bad_formula.join(" ")),
        Check::new("max-equals-2n", max == 2 * n, format!("max {max}, 2n = {}", 2 * n)),
    ];
    if let Some(wd) = window {
        checks.push(Check::new(
            "oracle-certified",
            uncertified.is_empty(),
            if uncertified.is_empty() {
                format!("{} values at window {wd}", rows.len())
            } else {
                format!("uncertified at window {wd}: {}", uncertified.join(" "))
            },
        ));
    }
    Ok(Census {
        system: spec.to_string(),
        rank: n,
        rows,
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionRow {
    pub lambda: LatticeVector,
    pub real: usize,
    pub integral: usize,
    pub origin: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalentDefinitions {
    pub system: String,
    pub window: i64,
    pub rows: Vec<DimensionRow>,
    pub checks: Vec<Check>,
}

/// Real dimension, integral dimension and windowed origin-moving distance
/// over a box.
pub fn equivalent_definitions(spec: &str, radius: i64, window: i64) -> Result<EquivalentDefinitions> {
    let g = group(spec)?;
    let lams = lattice_box(g.rank(), radius);
    let origin = origin_distances(&g, &lams, window, g.rank());
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for (lam, o) in lams.into_iter().zip(origin) {
        let real = real_dimension(&g, &lam).k;
        let integral = integral_expression(&g, &lam)?.k;
        if real != integral || o != Some(real) {
            mismatches.push(format!("{lam}: {real}/{integral}/{o:?}"));
        }
        rows.push(DimensionRow {
            lambda: lam,
            real,
            integral,
            origin: o,
        });
    }
    let checks = vec![Check::new(
        "real=integral=origin",
        mismatches.is_empty(),
        if mismatches.is_empty() {
            format!("{} vectors", rows.len())
        } else {
            mismatches.join(" ")
        },
    )];
    Ok(EquivalentDefinitions {
        system: spec.to_string(),
        window,
        rows,
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SolomonResult {
    pub system: String,
    pub order: usize,
    pub polynomial: LengthPolynomial,
    pub factored: String,
    pub checks: Vec<Check>,
}

/// `∏(1 + e x)` as text.
pub fn factored_form(exponents: &[u32]) -> String {
    exponents
        .iter()
        .map(|&e| if e == 1 { "(1+x)".to_string() } else { format!("(1+{e}x)") })
        .collect()
}

pub fn solomon(spec: &str) -> Result<SolomonResult> {
    let g = group(spec)?;
    let table = enumerate_w0(&g)?;
    let exponents = g.root_system().exponents().to_vec();
    let (polynomial, formula) = match solomon_polynomial(&g, &table) {
        Ok(p) => (p, Check::new("product-formula", true, "")),
        Err(e) => (
            LengthPolynomial::from_lengths((0..table.len()).map(|i| table.length(i))),
            Check::new("product-formula", false, e.to_string()),
        ),
    };
    let carter = match check_carter(&g, &table) {
        Ok(count) => Check::new("carter=cayley", true, format!("{count} elements")),
        Err(e) => Check::new("carter=cayley", false, e.to_string()),
    };
    let n = g.rank();
    let top = polynomial.0.get(n).copied().unwrap_or(0);
    let mut fixing_origin_only = 0u64;
    for i in 0..table.len() {
        if spherical_length(&g, &table.element(&g, i)?)? == n {
            fixing_origin_only += 1;
        }
    }
    let degree = Check::new(
        "degree-n",
        polynomial.degree() == Some(n) && top == fixing_origin_only,
        format!("x^{n} coefficient {top}, elements fixing only 0: {fixing_origin_only}"),
    );
    Ok(SolomonResult {
        system: spec.to_string(),
        order: table.len(),
        polynomial,
        factored: factored_form(&exponents),
        checks: vec![formula, carter, degree],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FLambdaRow {
    pub lambda: LatticeVector,
    pub k: usize,
    pub polynomial: Option<LengthPolynomial>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FLambda {
    pub system: String,
    pub window: i64,
    pub rows: Vec<FLambdaRow>,
    pub checks: Vec<Check>,
}

pub fn f_lambda(spec: &str, radius: i64, window: i64) -> Result<FLambda> {
    let g = group(spec)?;
    let n = g.rank();
    let oracle = AffineOracle::new(&g)?;
    let order = oracle.table().len() as u64;
    let solomon = solomon_polynomial(&g, oracle.table())?;
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut f0 = None;
    for lam in lattice_box(n, radius) {
        let k = integral_expression(&g, &lam)?.k;
        match oracle.f_lambda_polynomial(&lam, window) {
            Ok(f) => {
                let ok = f.degree().is_some_and(|d| d <= k + n)
                    && f.divisible_by_x_pow(k)
                    && f.total() == order;
                if !ok {
                    failures.push(format!("{lam}: {f}"));
                }
                if lam.is_zero() {
                    f0 = Some(f.clone());
                }
                rows.push(FLambdaRow {
                    lambda: lam,
                    k,
                    polynomial: Some(f),
                    error: None,
                });
            }
            Err(e) => {
                failures.push(format!("{lam}: {e}"));
                rows.push(FLambdaRow {
                    lambda: lam,
                    k,
                    polynomial: None,
                    error: Some(e.to_string()),
                });
            }
        }
    }
    let checks = vec![
        Check::new(
            "degree<=k+n,x^k|f",
            failures.is_empty(),
            if failures.is_empty() {
                format!("{} polynomials", rows.len())
            } else {
                failures.join("; ")
            },
        ),
        Check::new(
            "f0=solomon",
            f0.as_ref() == Some(&solomon),
            format!("f0 = {}", f0.map_or("missing".into(), |f| f.to_string())),
        ),
    ];
    Ok(FLambda {
        system: spec.to_string(),
        window,
        rows,
        checks,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Crossing {
    pub report: CrossingReport,
    pub checks: Vec<Check>,
}

pub const A3_CROSSING_TOTAL: usize = 16;

pub fn a3_crossing() -> Result<Crossing> {
    let report = a3_crossing_obstruction()?;
    let n = report.occurrences.len();
    let checks = vec![
        Check::new("coverage", report.coverage == n, format!("{}/{n}", report.coverage)),
        Check::new("no-crossing-pair", report.both_crossing == 0, report.both_crossing.to_string()),
        Check::new(
            "total",
            report.total == A3_CROSSING_TOTAL,
            format!("{} (expected {A3_CROSSING_TOTAL})", report.total),
        ),
    ];
    Ok(Crossing { report, checks })
}

#[derive(Clone, Debug, Serialize)]
pub struct UCPowerRow {
    pub n: usize,
    pub word: UCWord,
    pub ls: usize,
    pub lr: usize,
    pub expected: usize,
    pub unrestricted: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UCPowers {
    pub rows: Vec<UCPowerRow>,
    pub checks: Vec<Check>,
}

/// `ℓ_R((abc)^n) = n + 2`, cross-checked without Dyer for `n ≤ cross_up_to`.
pub fn uc_powers(max_n: usize, cross_up_to: usize) -> Result<UCPowers> {
    let mut rows = Vec::new();
    let mut bad = Vec::new();
    let mut disagree = Vec::new();
    for n in 1..=max_n {
        let word = UCWord::abc_power(n);
        let rep = uc_reflection_length(&word)?;
        let unrestricted = (n <= cross_up_to)
            .then(|| uc_reflection_length_unrestricted(&word, rep.lr));
        if rep.lr != n + 2 {
            bad.push(format!("n={n}: {}", rep.lr));
        }
        if let Some(u) = unrestricted {
            // The unrestricted search must reach lr and nothing shorter.
            if u != Some(rep.lr) || uc_reflection_length_unrestricted(&word, rep.lr - 1).is_some() {
                disagree.push(format!("n={n}: {u:?}"));
            }
        }
        rows.push(UCPowerRow {
            n,
            word,
            ls: rep.ls,
            lr: rep.lr,
            expected: n + 2,
            unrestricted: unrestricted.flatten(),
        });
    }
    let increasing = rows.windows(2).all(|w| w[0].lr < w[1].lr);
    let checks = vec![
        Check::new("lr=n+2", bad.is_empty(), bad.join(" ")),
        Check::new("strictly-increasing", increasing, ""),
        Check::new(
            "dyer=unrestricted",
            disagree.is_empty(),
            format!("n <= {}", cross_up_to.min(max_n)),
        ),
    ];
    Ok(UCPowers { rows, checks })
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteFactors {
    pub samples: usize,
    pub max_exact: usize,
    pub expected: usize,
    pub checks: Vec<Check>,
}

/// `W(A1) × W̃(A2)`: the largest exact length over all pairs `(f, t_λ w0)`
/// with `λ` in a box is `n_f + 2 n_a = 5`.
pub fn finite_factors(radius: i64, window: i64) -> Result<FiniteFactors> {
    let finite = group("A1")?;
    let affine = group("A2")?;
    let finite_table = enumerate_w0(&finite)?;
    let oracle = AffineOracle::new(&affine)?;
    let mut finite_reports = Vec::new();
    for i in 0..finite_table.len() {
        let f = finite_table.element(&finite, i)?;
        finite_reports.push(LengthReport::exact(
            spherical_length(&finite, &f)?,
            Certificate::SphericalCarter,
            None,
        ));
    }
    let mut samples = 0;
    let mut max_exact = 0;
    let mut above = Vec::new();
    for lam in lattice_box(2, radius) {
        let t = affine.translation(&lam);
        for j in 0..oracle.table().len() {
            let w = affine.compose(&t, &oracle.table().element(&affine, j)?);
            let a = oracle.affine_length(&w, window, None)?;
            for f in &finite_reports {
                let total = reducible_length(&[f.clone(), a.clone()]);
                samples += 1;
                if let Some(v) = total.value() {
                    max_exact = max_exact.max(v);
                }
                if total.upper.is_some_and(|u| u > 5) {
                    above.push(lam.to_string());
                }
            }
        }
    }
    let checks = vec![
        Check::new("max=nf+2na", max_exact == 5, format!("max exact {max_exact} over {samples}")),
        Check::new("never-above", above.is_empty(), above.join(" ")),
    ];
    Ok(FiniteFactors {
        samples,
        max_exact,
        expected: 5,
        checks,
    })
}

fn random_word(g: &AffineGroup, rng: &mut ChaCha8Rng, max_len: usize, max_offset: i64) -> ReflectionWord {
    let len = rng.gen_range(0..=max_len);
    ReflectionWord(
        (0..len)
            .map(|_| {
                AffineReflection::new(
                    rng.gen_range(0..g.positive_count()),
                    rng.gen_range(-max_offset..=max_offset),
                )
            })
            .collect(),
    )
}

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> Vector {
    Vector((0..d).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect())
}

/// Property checks on seeded random inputs, `cases` per property.
pub fn property_sweep(seed: u64, cases: usize) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let systems: Vec<AffineGroup> = ["A2", "B2", "G2", "A3", "C3"]
        .iter()
        .map(|s| group(s))
        .collect::<Result<_>>()?;
    let mut checks = Vec::new();
    let mut run = |name: &str, f: &mut dyn FnMut(&mut ChaCha8Rng) -> Result<Option<String>>| -> Result<()> {
        let mut failures = Vec::new();
        for _ in 0..cases {
            if let Some(msg) = f(&mut rng)? {
                failures.push(msg);
            }
        }
        let detail = if failures.is_empty() {
            format!("{cases} cases")
        } else {
            format!("{} of {cases} failed; first: {}", failures.len(), failures[0])
        };
        checks.push(Check::new(name, failures.is_empty(), detail));
        Ok(())
    };
    let pick = |rng: &mut ChaCha8Rng| &systems[rng.gen_range(0..systems.len())];

    run("reflection-involution", &mut |rng| {
        let g = pick(rng);
        let r = random_word(g, rng, 1, 5);
        let Some(&r) = r.0.first() else { return Ok(None) };
        let x = g.reflection(&r)?;
        Ok((!g.compose(&x, &x).is_identity()).then(|| format!("{r}")))
    })?;
    run("word-homomorphism", &mut |rng| {
        let g = pick(rng);
        let a = random_word(g, rng, 4, 3);
        let b = random_word(g, rng, 4, 3);
        let lhs = g.evaluate_word(&a.concat(&b))?;
        let rhs = g.compose(&g.evaluate_word(&a)?, &g.evaluate_word(&b)?);
        let int = g.int_compose(&g.to_int(&g.evaluate_word(&a)?), &g.to_int(&g.evaluate_word(&b)?));
        Ok((lhs != rhs || g.to_int(&lhs) != int).then(|| format!("{a} | {b}")))
    })?;
    run("normal-form-uniqueness", &mut |rng| {
        let g = pick(rng);
        let a = g.evaluate_word(&random_word(g, rng, 4, 2))?;
        // Half the time compare against a different word for the same element.
        let b = if rng.gen_bool(0.5) {
            let w = random_word(g, rng, 4, 2);
            g.evaluate_word(&w)?
        } else {
            let w = length_bounds(g, &a)?.witness.expect("bounds carry a witness");
            g.evaluate_word(&w)?
        };
        let d = g.root_system().ambient_dim();
        let mut points = vec![Vector::zeros(d)];
        points.extend(g.root_system().simple_coroots().iter().cloned());
        let same_action = points.iter().all(|p| g.apply(&a, p) == g.apply(&b, p));
        let same_fields = a.translation() == b.translation() && a.linear() == b.linear();
        Ok(((a == b) != same_fields || same_fields != same_action).then(|| "mismatch".to_string()))
    })?;
    run("isometry", &mut |rng| {
        let g = pick(rng);
        let w = g.evaluate_word(&random_word(g, rng, 4, 3))?;
        let d = g.root_system().ambient_dim();
        let (x, y) = (random_point(rng, d), random_point(rng, d));
        let before = (&x - &y).norm2();
        let after = (&g.apply(&w, &x) - &g.apply(&w, &y)).norm2();
        Ok((before != after).then(|| format!("{x} {y}")))
    })?;
    run("conjugation-closure", &mut |rng| {
        let g = pick(rng);
        let w = random_word(g, rng, 2, 4);
        if w.len() < 2 {
            return Ok(None);
        }
        let (r, s) = (w.0[0], w.0[1]);
        let c = g.compose(&g.reflection(&r)?, &g.compose(&g.reflection(&s)?, &g.reflection(&r)?));
        Ok(g.is_reflection(&c).is_none().then(|| format!("{r} {s}")))
    })?;
    run("rewriting-preserves", &mut |rng| {
        let g = pick(rng);
        let w = random_word(g, rng, 5, 3);
        let positions: Vec<usize> = (0..w.len()).filter(|_| rng.gen_bool(0.5)).collect();
        let side = if rng.gen_bool(0.5) { Side::Front } else { Side::Back };
        let out = rewrite_factorization(g, &w, &positions, side)?;
        let ok = out.len() == w.len() && g.evaluate_word(&out)? == g.evaluate_word(&w)?;
        Ok((!ok).then(|| format!("{w} {positions:?}")))
    })?;
    run("bounds-witness", &mut |rng| {
        let g = pick(rng);
        let w = g.evaluate_word(&random_word(g, rng, 6, 3))?;
        let rep = length_bounds(g, &w)?;
        let witness = rep.witness.clone().expect("bounds carry a witness");
        let n = g.rank();
        let ok = g.evaluate_word(&witness)? == w
            && Some(witness.len()) == rep.upper
            && rep.upper.is_some_and(|u| rep.lower <= u && u <= 2 * n);
        Ok((!ok).then(|| format!("{rep:?}")))
    })?;
    run("quotient-monotonicity", &mut |rng| {
        let g = pick(rng);
        let word = random_word(g, rng, 5, 3);
        let w = g.evaluate_word(&word)?;
        let l0 = spherical_length(g, &g.project(&w))?;
        let wl = word_length(g, &word)?;
        let ok = l0 <= word.len() && wl.upper.is_some_and(|u| u <= word.len());
        Ok((!ok).then(|| word.to_string()))
    })?;
    let product = group("A1xA2")?;
    let a1 = group("A1")?;
    let a2 = group("A2")?;
    run("reducible-additivity", &mut |rng| {
        let lam1 = LatticeVector(vec![rng.gen_range(-3..=3)]);
        let lam2 = LatticeVector(vec![rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
        let joint = LatticeVector([lam1.0.clone(), lam2.0.clone()].concat());
        let whole = translation_length(&product, &joint)?;
        let parts = reducible_length(&[translation_length(&a1, &lam1)?, translation_length(&a2, &lam2)?]);
        Ok((whole.value() != parts.value()).then(|| joint.to_string()))
    })?;
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_enumeration() {
        assert_eq!(lattice_box(2, 1).len(), 9);
        assert_eq!(lattice_box(0, 3), vec![LatticeVector(vec![])]);
        assert_eq!(lattice_box(1, 1)[0], LatticeVector(vec![-1]));
    }

    #[test]
    fn small_runs() {
        let c = census("A2", 1, Some(2)).unwrap();
        assert!(all_passed(&c.checks), "{:?}", c.checks);
        let s = solomon("B2").unwrap();
        assert_eq!(s.polynomial, LengthPolynomial(vec![1, 4, 3]));
        assert_eq!(s.factored, "(1+x)(1+3x)");
        assert!(all_passed(&s.checks));
        let u = uc_powers(2, 2).unwrap();
        assert!(all_passed(&u.checks), "{:?}", u.checks);
        let sweep = property_sweep(1, 20).unwrap();
        assert!(all_passed(&sweep), "{sweep:?}");
    }
}

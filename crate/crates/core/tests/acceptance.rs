//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line; the
//! test fails if any criterion does.

use std::time::Instant;

use coxlen_core::experiments::{
    a3_crossing, census, equivalent_definitions, f_lambda, finite_factors,
    property_sweep, solomon, uc_powers, Check, DEFAULT_SEED,
};

/// Window for the origin-moving search over the `[-3,3]^n` box.
const ORIGIN_WINDOW: i64 = 6;
const F_LAMBDA_WINDOW: i64 = 4;

fn criterion(id: u32, title: &str, run: impl FnOnce() -> coxlen_core::Result<Vec<Check>>) -> bool {
    let start = Instant::now();
    let (passed, detail) = match run() {
        Ok(checks) => {
            let failed: Vec<String> = checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: {}", c.name, c.detail))
                .collect();
            (failed.is_empty(), failed.join("; "))
        }
        Err(e) => (false, e.to_string()),
    };
    let secs = start.elapsed().as_secs_f64();
    let status = if passed { "PASS" } else { "FAIL" };
    if detail.is_empty() {
        println!("[{status}] criterion {id}: {title} ({secs:.1}s)");
    } else {
        println!("[{status}] criterion {id}: {title} ({secs:.1}s) {detail}");
    }
    passed
}

fn tagged(system: &str, checks: Vec<Check>) -> Vec<Check> {
    checks
        .into_iter()
        .map(|c| Check {
            name: format!("{system}/{}", c.name),
            ..c
        })
        .collect()
}

#[test]
fn acceptance() {
    let mut results = Vec::new();

    results.push(criterion(1, "translation census: length 2k <= 2n, 2n attained", || {
        let mut checks = Vec::new();
        for s in ["A2", "B2", "C2", "G2"] {
            checks.extend(tagged(s, census(s, 3, Some(4))?.checks));
        }
        checks.extend(tagged("A3", census("A3", 3, None)?.checks));
        Ok(checks)
    }));

    results.push(criterion(2, "real = integral dimension = origin-moving length", || {
        let mut checks = Vec::new();
        for s in ["A1", "A2", "B2", "C2", "G2", "A3", "B3", "C3", "A1xA2"] {
            checks.extend(tagged(s, equivalent_definitions(s, 3, ORIGIN_WINDOW)?.checks));
        }
        Ok(checks)
    }));

    results.push(criterion(3, "Carter formula = Cayley distance over R0", || {
        let mut checks = Vec::new();
        for s in ["A1", "A2", "A3", "B2", "B3", "D4", "G2"] {
            let r = solomon(s)?;
            checks.extend(tagged(s, r.checks.into_iter().filter(|c| c.name == "carter=cayley").collect()));
        }
        Ok(checks)
    }));

    results.push(criterion(4, "Solomon polynomial = prod(1 + e_i x)", || {
        let mut checks = Vec::new();
        for s in ["A1", "A2", "A3", "B2", "B3", "D4", "G2"] {
            let r = solomon(s)?;
            checks.extend(tagged(s, r.checks.into_iter().filter(|c| c.name != "carter=cayley").collect()));
        }
        Ok(checks)
    }));

    results.push(criterion(5, "A3 crossing obstruction", || Ok(a3_crossing()?.checks)));

    results.push(criterion(6, "f_lambda degree and divisibility, f_0 = Solomon", || {
        let mut checks = Vec::new();
        for s in ["A2", "B2"] {
            checks.extend(tagged(s, f_lambda(s, 2, F_LAMBDA_WINDOW)?.checks));
        }
        Ok(checks)
    }));

    results.push(criterion(7, "universal Coxeter group: l_R((abc)^n) = n + 2", || {
        Ok(uc_powers(4, 2)?.checks)
    }));

    results.push(criterion(8, "property suites", || {
        let mut checks = property_sweep(DEFAULT_SEED, 200)?;
        checks.extend(finite_factors(2, F_LAMBDA_WINDOW)?.checks);
        Ok(checks)
    }));

    let failed = results.iter().filter(|&&p| !p).count();
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}

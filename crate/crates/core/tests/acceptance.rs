//! Acceptance run: one line per criterion with its tolerance and time budget.
//!
//! Runs without the libtest harness so every line is printed; the process
//! fails if any criterion fails.

use std::time::{Duration, Instant};

use num_bigint::BigInt;

use cpcohom::catalog::{catalog, catalog_group, catalog_up_to};
use cpcohom::cohomology::{multiplier_invariants, uct_decomposition_mod};
use cpcohom::covers::{cp_cover, verify_cover};
use cpcohom::exterior::multiplier_oracle;
use cpcohom::extensions::check_cp_extension;
use cpcohom::iso::cp_extension_isoclinism_classes;
use cpcohom::verify::{non_cp_example, run_suite, SuiteOptions, SuiteReport};
use cpcohom::{Rational, Result};

/// The order-64 representative with nontrivial Bogomolov multiplier.
const PHI16: &str = "Phi16a";

struct Criterion {
    id: u32,
    title: &'static str,
    tolerance: &'static str,
    budget: Option<Duration>,
    run: fn() -> Result<(bool, String)>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn hom_order(invariants: &[u64], m: u64) -> u128 {
    invariants.iter().map(|&d| gcd(d, m) as u128).product()
}

fn suite_line(r: &SuiteReport) -> (bool, String) {
    let bad: Vec<String> = r
        .cases
        .iter()
        .filter(|c| !c.passed())
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    (
        r.all_passed(),
        if bad.is_empty() {
            format!("{}/{} cases", r.passed, r.total)
        } else {
            format!("{}/{} cases; {}", r.passed, r.total, bad.join("; "))
        },
    )
}

fn triviality_floor() -> Result<(bool, String)> {
    let entries = catalog_up_to(32);
    let mut nontrivial = Vec::new();
    for e in &entries {
        let g = e.build()?;
        if !multiplier_invariants(&g)?.b0.is_empty() {
            nontrivial.push(e.name.clone());
        }
    }
    Ok((
        entries.len() >= 25 && nontrivial.is_empty(),
        format!("{} groups of order <= 32, nontrivial B0: {:?}", entries.len(), nontrivial),
    ))
}

fn nontrivial_witness() -> Result<(bool, String)> {
    let g = catalog_group(PHI16)?;
    let b0 = multiplier_invariants(&g)?.b0;
    let cp = g.commuting_probability();
    let quarter = Rational::new(BigInt::from(1), BigInt::from(4));
    Ok((
        g.order() == 64 && b0 == [2] && cp == quarter,
        format!("order {}, B0 = {b0:?}, cp = {cp}", g.order()),
    ))
}

fn cover_certificate() -> Result<(bool, String)> {
    let g = catalog_group(PHI16)?;
    let cover = cp_cover(&g)?;
    let r = verify_cover(&cover)?;
    let failed: Vec<&str> = r.checks().into_iter().filter(|c| !c.1).map(|c| c.0).collect();
    let doubled = r.class_count == 2 * r.base_class_count && r.kernel_order == 2;
    Ok((
        r.order == 128 && failed.is_empty() && doubled && r.cp_value == "1/4",
        format!(
            "order {}, Z(G) = {:?} vs Z(Q) x B0 = {:?}, cp {}, k {} = 2 x {}, failed checks {:?}",
            r.order, r.center_invariants, r.expected_center_invariants, r.cp_value, r.class_count, r.base_class_count, failed
        ),
    ))
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let entries = catalog_up_to(16);
    let mut bad = Vec::new();
    for e in &entries {
        let g = e.build()?;
        if !multiplier_invariants(&g)?.same_invariants(&multiplier_oracle(&g)?) {
            bad.push(e.name.clone());
        }
    }
    Ok((bad.is_empty(), format!("{} groups, disagreements: {bad:?}", entries.len())))
}

fn uct_order_law() -> Result<(bool, String)> {
    let entries = catalog_up_to(32);
    let mut bad = Vec::new();
    let mut checked = 0;
    for e in &entries {
        let g = e.build()?;
        let b0 = multiplier_invariants(&g)?.b0;
        let ab = g.abelianization().invariants.clone();
        for m in [2, 4, g.order() as u64] {
            let h2cp = uct_decomposition_mod(&g, m)?.h2_cp.order();
            checked += 1;
            if h2cp != hom_order(&ab, m) * hom_order(&b0, m) {
                bad.push(format!("{} mod {m}", e.name));
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} (group, m) pairs, violations: {bad:?}")))
}

fn rank_formula() -> Result<(bool, String)> {
    Ok(suite_line(&run_suite("rank-formula", &SuiteOptions::default())?))
}

fn comm_prob() -> Result<(bool, String)> {
    Ok(suite_line(&run_suite("comm-prob", &SuiteOptions::default())?))
}

fn divisibility() -> Result<(bool, String)> {
    Ok(suite_line(&run_suite("bounds", &SuiteOptions::default())?))
}

fn cp_quarter() -> Result<(bool, String)> {
    Ok(suite_line(&run_suite("cp-quarter", &SuiteOptions::default())?))
}

fn non_cp_detection() -> Result<(bool, String)> {
    let ext = non_cp_example()?;
    let check = check_cp_extension(&ext)?;
    Ok((
        ext.group.order() == 32 && !check.is_cp && check.witness == Some((1, 2)),
        format!("order {}, CP {}, witness {:?} (x1 = 1, x2 = 2)", ext.group.order(), check.is_cp, check.witness),
    ))
}

fn exponent_chain() -> Result<(bool, String)> {
    Ok(suite_line(&run_suite("exp-schur", &SuiteOptions::default())?))
}

fn isoclinism_layer() -> Result<(bool, String)> {
    let (suite_ok, detail) = suite_line(&run_suite("isoclinism", &SuiteOptions::default())?);
    // orbit count 1 for every B0-trivial group in the catalog
    let mut trivial = 0;
    let mut bad = Vec::new();
    for e in catalog() {
        let g = e.build()?;
        let c = cp_extension_isoclinism_classes(&g)?;
        if c.b0.is_empty() {
            trivial += 1;
            if c.orbit_count != 1 {
                bad.push(e.name.clone());
            }
        }
    }
    let phi = cp_extension_isoclinism_classes(&catalog_group(PHI16)?)?.orbit_count;
    Ok((
        suite_ok && bad.is_empty() && phi == 2,
        format!("{detail}; {PHI16}: {phi} classes; {trivial} B0-trivial groups with one class, exceptions {bad:?}"),
    ))
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "triviality floor", tolerance: "exact", budget: Some(Duration::from_secs(60)), run: triviality_floor },
        Criterion { id: 2, title: "nontrivial witness", tolerance: "exact", budget: Some(Duration::from_secs(120)), run: nontrivial_witness },
        Criterion { id: 3, title: "cover certificate", tolerance: "exact", budget: Some(Duration::from_secs(600)), run: cover_certificate },
        Criterion { id: 4, title: "oracle equivalence", tolerance: "exact", budget: Some(Duration::from_secs(300)), run: oracle_equivalence },
        Criterion { id: 5, title: "UCT order law", tolerance: "exact", budget: None, run: uct_order_law },
        Criterion { id: 6, title: "rank formula", tolerance: "exact", budget: None, run: rank_formula },
        Criterion { id: 7, title: "commuting-probability criterion", tolerance: "zero counterexamples", budget: None, run: comm_prob },
        Criterion { id: 8, title: "divisibility suites", tolerance: "exact", budget: None, run: divisibility },
        Criterion { id: 9, title: "cp > 1/4 implies B0 = 0", tolerance: "exact", budget: None, run: cp_quarter },
        Criterion { id: 10, title: "non-CP detection", tolerance: "exact witness", budget: None, run: non_cp_detection },
        Criterion { id: 11, title: "exponent chain", tolerance: "exact", budget: None, run: exponent_chain },
        Criterion { id: 12, title: "isoclinism layer", tolerance: "exact", budget: None, run: isoclinism_layer },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(c.run);
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".to_string()),
        };
        let in_time = c.budget.map_or(true, |b| elapsed <= b);
        let budget = c.budget.map_or("none".to_string(), |b| format!("{}s", b.as_secs()));
        let pass = ok && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {:>2} {} {} [tolerance: {}; {:.2?} of budget {}]: {}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            c.tolerance,
            elapsed,
            budget,
            detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

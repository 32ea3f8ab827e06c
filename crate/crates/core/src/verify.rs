//! Verification suites over the catalog, with deterministic reports.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{catalog, catalog_group, CatalogEntry};
use crate::cohomology::{
    multiplier_invariants, uct_decomposition_mod, Cocycle, CocycleSystem, CohomologyGroup, GModule, SCHEMA_VERSION,
};
use crate::covers::{cp_cover, verify_cover};
use crate::error::{Error, Result};
use crate::exterior::{exterior_report, multiplier_oracle};
use crate::extensions::{check_cp_extension, realize_extension, CentralExtensionData};
use crate::group::{build_group, FiniteGroup, GroupSpec};
use crate::iso::{are_isoclinic, are_isomorphic, cp_extension_isoclinism_classes, extensions_isoclinic};
use crate::Rational;

/// Suite identifiers in a fixed order.
pub const SUITES: [&str; 10] = [
    "small-b0",
    "cp-quarter",
    "rank-formula",
    "bounds",
    "covers",
    "oracle-crosscheck",
    "comm-prob",
    "exp-schur",
    "isoclinism",
    "non-cp-example",
];

pub const DEFAULT_SEED: u64 = 20_150_601;

/// Minimum number of sampled classes in the commuting-probability suite.
pub const COMM_PROB_MIN_SAMPLES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Cmp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Term {
    Order(Cmp, usize),
    Name(String),
    NameContains(String),
    PGroup,
}

/// Catalog selection: comma-separated terms, all of which must hold.
///
/// Terms are `order<=N` (also `<`, `=`, `>=`, `>`), `name=X`, `name~X`
/// (substring), `pgroup`, or a bare name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filter {
    terms: Vec<Term>,
}

impl Filter {
    pub fn parse(expr: &str) -> Result<Self> {
        let mut terms = Vec::new();
        for raw in expr.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let term = if let Some(rest) = raw.strip_prefix("order") {
                let (cmp, num) = [("<=", Cmp::Le), (">=", Cmp::Ge), ("<", Cmp::Lt), (">", Cmp::Gt), ("=", Cmp::Eq)]
                    .iter()
                    .find_map(|(op, c)| rest.trim().strip_prefix(op).map(|n| (*c, n)))
                    .ok_or_else(|| Error::MalformedSpec(format!("bad filter term `{raw}`")))?;
                let n = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::MalformedSpec(format!("bad order in `{raw}`")))?;
                Term::Order(cmp, n)
            } else if let Some(name) = raw.strip_prefix("name=") {
                Term::Name(name.to_string())
            } else if let Some(part) = raw.strip_prefix("name~") {
                Term::NameContains(part.to_ascii_lowercase())
            } else if raw == "pgroup" {
                Term::PGroup
            } else {
                Term::Name(raw.to_string())
            };
            terms.push(term);
        }
        Ok(Filter { terms })
    }

    pub fn matches(&self, e: &CatalogEntry) -> bool {
        self.terms.iter().all(|t| match t {
            Term::Order(c, n) => {
                let o = e.order();
                match c {
                    Cmp::Lt => o < *n,
                    Cmp::Le => o <= *n,
                    Cmp::Eq => o == *n,
                    Cmp::Ge => o >= *n,
                    Cmp::Gt => o > *n,
                }
            }
            Term::Name(n) => e.name.eq_ignore_ascii_case(n),
            Term::NameContains(s) => e.name.to_ascii_lowercase().contains(s.as_str()),
            Term::PGroup => prime_power(e.order()).is_some(),
        })
    }
}

fn prime_power(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|p| n % p == 0)?;
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    (m == 1).then_some(p)
}

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub filter: Filter,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            filter: Filter::default(),
            seed: DEFAULT_SEED,
            jobs: 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Caps, unbuildable data or other errors outside the mathematics.
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl CaseResult {
    fn check(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        CaseResult {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    fn from_result(name: &str, r: Result<(bool, String)>) -> Self {
        match r {
            Ok((ok, detail)) => CaseResult::check(name, ok, detail),
            Err(e) => CaseResult {
                name: name.into(),
                status: Status::Error,
                detail: e.to_string(),
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub seed: u64,
    pub cases: Vec<CaseResult>,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub errors: usize,
    /// Kept out of the JSON so reports are byte-identical across runs.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    fn new(suite: &str, seed: u64, cases: Vec<CaseResult>, wall_time: Duration) -> Self {
        let count = |s| cases.iter().filter(|c| c.status == s).count();
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            suite: suite.into(),
            seed,
            total: cases.len(),
            passed: count(Status::Pass),
            failed: count(Status::Fail),
            errors: count(Status::Error),
            cases,
            wall_time,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.passed == self.total
    }
}

/// Maps `f` over `items` on `jobs` threads, keeping input order.
fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    if jobs <= 1 || items.len() <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

fn select(opts: &SuiteOptions, scope: impl Fn(&CatalogEntry) -> bool) -> Vec<CatalogEntry> {
    catalog()
        .into_iter()
        .filter(|e| scope(e) && opts.filter.matches(e))
        .collect()
}

fn order_of(inv: &[u64]) -> u128 {
    inv.iter().map(|&d| d as u128).product()
}

fn exponent_of(inv: &[u64]) -> u64 {
    inv.last().copied().unwrap_or(1)
}

fn quarter() -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(4))
}

/// Runs a suite by name.
pub fn run_suite(name: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let start = Instant::now();
    let cases = match name {
        "small-b0" => small_b0(opts),
        "cp-quarter" => cp_quarter(opts),
        "rank-formula" => rank_formula(opts),
        "bounds" => bounds(opts),
        "covers" => covers(opts),
        "oracle-crosscheck" => oracle_crosscheck(opts),
        "comm-prob" => comm_prob(opts),
        "exp-schur" => exp_schur(opts),
        "isoclinism" => isoclinism(opts),
        "non-cp-example" => non_cp_example_suite(),
        other => return Err(Error::UnknownSuite(other.into())),
    };
    Ok(SuiteReport::new(name, opts.seed, cases, start.elapsed()))
}

/// Expected catalog facts, checked when present.
fn expected_facts(e: &CatalogEntry, g: &FiniteGroup, b0: &[u64]) -> Option<String> {
    if let Some(want) = &e.expected.b0 {
        if want.as_slice() != b0 {
            return Some(format!("expected B0 {want:?}, got {b0:?}"));
        }
    }
    if let Some((num, den)) = e.expected.cp {
        let want = Rational::new(BigInt::from(num), BigInt::from(den));
        if g.commuting_probability() != want {
            return Some(format!("expected cp {want}, got {}", g.commuting_probability()));
        }
    }
    None
}

fn small_b0(opts: &SuiteOptions) -> Vec<CaseResult> {
    let entries = select(opts, |e| e.order() <= 32);
    let mut cases = par_map(&entries, opts.jobs, |e| {
        CaseResult::from_result(
            &e.name,
            (|| {
                let g = e.build()?;
                let b0 = multiplier_invariants(&g)?.b0;
                let facts = expected_facts(e, &g, &b0);
                Ok((b0.is_empty() && facts.is_none(), format!("B0 = {b0:?}{}", facts.map(|f| format!("; {f}")).unwrap_or_default())))
            })(),
        )
    });
    cases.push(CaseResult::check(
        "coverage",
        entries.len() >= 25 || opts.filter != Filter::default(),
        format!("{} groups of order <= 32", entries.len()),
    ));
    cases
}

fn cp_quarter(opts: &SuiteOptions) -> Vec<CaseResult> {
    let entries = select(opts, |_| true);
    par_map(&entries, opts.jobs, |e| {
        CaseResult::from_result(
            &e.name,
            (|| {
                let g = e.build()?;
                let cp = g.commuting_probability();
                let b0 = multiplier_invariants(&g)?.b0;
                let facts = expected_facts(e, &g, &b0);
                let ok = (cp <= quarter() || b0.is_empty()) && facts.is_none();
                Ok((ok, format!("cp = {cp}, B0 = {b0:?}{}", facts.map(|f| format!("; {f}")).unwrap_or_default())))
            })(),
        )
    })
}

fn rank_formula(opts: &SuiteOptions) -> Vec<CaseResult> {
    let entries = select(opts, |e| e.order() <= 64 && prime_power(e.order()).is_some());
    par_map(&entries, opts.jobs, |e| {
        CaseResult::from_result(
            &e.name,
            (|| {
                let g = e.build()?;
                let p = prime_power(g.order()).expect("p-group") as u64;
                let h = uct_decomposition_mod(&g, p)?.h2_cp;
                let rank = h.invariants().len();
                let d = g.abelianization().invariants.len();
                let db0 = multiplier_invariants(&g)?.b0.len();
                let elementary = h.invariants().iter().all(|&x| x == p);
                Ok((
                    elementary && rank == d + db0,
                    format!("rank H2_CP(Q, F_{p}) = {rank}, d(Q) = {d}, d(B0) = {db0}"),
                ))
            })(),
        )
    })
}

fn bounds(opts: &SuiteOptions) -> Vec<CaseResult> {
    let entries = select(opts, |e| e.order() <= 64);
    par_map(&entries, opts.jobs, |e| {
        CaseResult::from_result(
            &e.name,
            (|| {
                let g = e.build()?;
                let b0 = multiplier_invariants(&g)?.b0;
                let mut bad = Vec::new();
                let normals = g.normal_subgroups_with_cyclic_quotient();
                for s in &normals {
                    let (sg, _) = g.subgroup(s)?;
                    let sb0 = if sg.order() == 1 {
                        Vec::new()
                    } else {
                        multiplier_invariants(&sg)?.b0
                    };
                    let sab = sg.abelianization().invariants.clone();
                    let divides = (order_of(&sb0) * order_of(&sab)) % order_of(&b0) == 0;
                    let rank = b0.len() <= sb0.len() + sab.len();
                    if !divides || !rank {
                        bad.push(format!("S of order {}: B0(S) = {sb0:?}, S^ab = {sab:?}", s.len()));
                    }
                }
                let abelian = g.maximal_abelian_subgroups(64)?;
                let exp = exponent_of(&b0);
                for a in &abelian {
                    if (g.order() / a.len()) as u64 % exp != 0 {
                        bad.push(format!("maximal abelian of index {}", g.order() / a.len()));
                    }
                }
                Ok((
                    bad.is_empty(),
                    format!(
                        "B0 = {b0:?}; {} normal S with cyclic quotient, {} maximal abelian{}",
                        normals.len(),
                        abelian.len(),
                        if bad.is_empty() { String::new() } else { format!("; violations: {}", bad.join("; ")) }
                    ),
                ))
            })(),
        )
    })
}

fn covers(opts: &SuiteOptions) -> Vec<CaseResult> {
    let entries = select(opts, |e| e.order() <= 64);
    par_map(&entries, opts.jobs, |e| {
        CaseResult::from_result(
            &e.name,
            (|| {
                let g = e.build()?;
                let cover = cp_cover(&g)?;
                let report = verify_cover(&cover)?;
                let failed: Vec<&str> = report.checks().into_iter().filter(|c| !c.1).map(|c| c.0).collect();
                // a perfect group is its own unique cover
                let perfect = g.derived().len() == g.order();
                let unique = !perfect || cover.group.order() == g.order();
                Ok((
                    failed.is_empty() && unique,
                    format!(
                        "cover order {}{}{}",
                        cover.group.order(),
                        if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) },
                        if perfect { "; perfect" } else { "" }
                    ),
                ))
            })(),
        )
    })
}

fn oracle_crosscheck(opts: &SuiteOptions) -> Vec<CaseResult> {
    let entries = select(opts, |e| e.order() <= 16);
    par_map(&entries, opts.jobs, |e| {
        CaseResult::from_result(
            &e.name,
            (|| {
                let g = e.build()?;
                let coh = multiplier_invariants(&g)?;
                let oracle = exterior_report(&g)?.multipliers;
                Ok((
                    coh.same_invariants(&oracle),
                    format!(
                        "M {:?}/{:?}, M0 {:?}/{:?}, B0 {:?}/{:?} (cohomology/oracle)",
                        coh.m, oracle.m, coh.m0, oracle.m0, coh.b0, oracle.b0
                    ),
                ))
            })(),
        )
    })
}

fn exp_schur(opts: &SuiteOptions) -> Vec<CaseResult> {
    let entries = select(opts, |e| e.order() <= 16);
    par_map(&entries, opts.jobs, |e| {
        CaseResult::from_result(
            &e.name,
            (|| {
                let g = e.build()?;
                let r = multiplier_oracle(&g)?;
                let (em, eb, em0) = (exponent_of(&r.m), exponent_of(&r.b0), exponent_of(&r.m0));
                let eq = g.exponent();
                Ok((
                    (eb * em0) % em == 0 && eq % em0 == 0,
                    format!("exp M = {em}, exp B0 = {eb}, exp M0 = {em0}, exp Q = {eq}"),
                ))
            })(),
        )
    })
}

/// Outcome of one sampled class.
#[derive(Clone, Debug)]
pub struct CommProbSample {
    pub group: String,
    pub modulus: u64,
    pub in_cp: bool,
    pub cp_equal: bool,
    pub lift_search: bool,
    pub kernel_criterion: bool,
}

impl CommProbSample {
    pub fn consistent(&self) -> bool {
        self.in_cp == self.cp_equal && self.in_cp == self.lift_search && self.in_cp == self.kernel_criterion
    }
}

/// Draws `per_kind` classes from each of `H^2` and `H^2_CP` of `q` with
/// coefficients `Z/m`, realizes them and compares the three CP criteria.
pub fn sample_comm_prob(q: &FiniteGroup, m: u64, per_kind: usize, rng: &mut ChaCha8Rng) -> Result<Vec<CommProbSample>> {
    let module = GModule::trivial(q, &[m])?;
    let sys = CocycleSystem::new(&module)?;
    let cp_q = q.commuting_probability();
    let mut out = Vec::new();
    for cp_kind in [false, true] {
        let h = CohomologyGroup::from_system(&sys, cp_kind)?;
        for _ in 0..per_kind {
            let coords: Vec<u64> = h.invariants().iter().map(|&d| rng.gen_range(0..d)).collect();
            let v = h.quotient.lift(&coords);
            // a random coboundary keeps the representative generic
            let w = add_random_coboundary(&sys, &v, m, rng);
            let cocycle = sys.evaluate(&w);
            let in_cp = sys.is_cp(&w);
            let ext = realize_extension(&module, &cocycle)?;
            let check = check_cp_extension(&ext)?;
            out.push(CommProbSample {
                group: q.name().to_string(),
                modulus: m,
                in_cp,
                cp_equal: ext.group.commuting_probability() == cp_q,
                lift_search: check.is_cp,
                kernel_criterion: check.kernel_criterion.expect("central"),
            });
        }
    }
    Ok(out)
}

fn add_random_coboundary(sys: &CocycleSystem, v: &[u64], m: u64, rng: &mut ChaCha8Rng) -> Vec<u64> {
    let mut w = v.to_vec();
    for row in sys.coboundaries().rows() {
        let c = rng.gen_range(0..m);
        for (x, &r) in w.iter_mut().zip(row) {
            *x = (*x + c * r) % m;
        }
    }
    w
}

fn comm_prob(opts: &SuiteOptions) -> Vec<CaseResult> {
    let entries = select(opts, |e| e.order() <= 16);
    let per_group = par_map(&entries, opts.jobs, |e| {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ fnv(&e.name));
        let r = (|| {
            let g = e.build()?;
            let mut all = Vec::new();
            for m in [2u64, 4] {
                all.extend(sample_comm_prob(&g, m, 2, &mut rng)?);
            }
            Ok(all)
        })();
        (e.name.clone(), r)
    });
    let mut total = 0;
    let mut cases = Vec::new();
    for (name, r) in per_group {
        match r {
            Ok(samples) => {
                total += samples.len();
                let bad = samples.iter().filter(|s| !s.consistent()).count();
                let in_cp = samples.iter().filter(|s| s.in_cp).count();
                cases.push(CaseResult::check(
                    name,
                    bad == 0,
                    format!("{} samples, {in_cp} in H2_CP, {bad} counterexamples", samples.len()),
                ));
            }
            Err(e) => cases.push(CaseResult::from_result(&name, Err(e))),
        }
    }
    cases.push(CaseResult::check(
        "sample count",
        total >= COMM_PROB_MIN_SAMPLES || opts.filter != Filter::default(),
        format!("{total} sampled classes"),
    ));
    cases
}

/// Stable hash of a name, for per-group seeds independent of thread order.
fn fnv(s: &str) -> u64 {
    s.bytes()
        .fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// All central CP extensions of `q` by `Z/m`, one per class of `H^2_CP`.
fn cp_extensions(q: &FiniteGroup, m: u64) -> Result<Vec<CentralExtensionData>> {
    let module = GModule::trivial(q, &[m])?;
    let sys = CocycleSystem::new(&module)?;
    let h = CohomologyGroup::from_system(&sys, true)?;
    h.quotient
        .elements()
        .iter()
        .map(|c| realize_extension(&module, &sys.evaluate(&h.quotient.lift(c))))
        .collect()
}

/// Number of isoclinism classes among the given extensions.
fn isoclinism_class_count(exts: &[CentralExtensionData]) -> Result<usize> {
    let mut reps: Vec<&CentralExtensionData> = Vec::new();
    for e in exts {
        let mut new = true;
        for r in &reps {
            if extensions_isoclinic(r, e)? {
                new = false;
                break;
            }
        }
        if new {
            reps.push(e);
        }
    }
    Ok(reps.len())
}

/// Empirical class count of central CP extensions by `Z/e`, where `e` is the
/// exponent of `B0(q)` (or 2 when `B0` is trivial), next to the orbit count.
pub fn isoclinism_class_check(q: &FiniteGroup) -> Result<(usize, usize)> {
    let classes = cp_extension_isoclinism_classes(q)?;
    let e = classes.b0.last().copied().unwrap_or(2);
    let exts = cp_extensions(q, e)?;
    Ok((classes.orbit_count, isoclinism_class_count(&exts)?))
}

fn isoclinism(opts: &SuiteOptions) -> Vec<CaseResult> {
    let mut cases = Vec::new();
    let pair = (|| {
        let d4 = catalog_group("D4")?;
        let q8 = catalog_group("Q8")?;
        let iso = are_isomorphic(&d4, &q8)?.is_some();
        let icl = are_isoclinic(&d4, &q8)?.is_some();
        Ok((!iso && icl, format!("isomorphic {iso}, isoclinic {icl}")))
    })();
    cases.push(CaseResult::from_result("D4 vs Q8", pair));

    // reflexivity, symmetry and isomorphism implies isoclinism on small groups
    let small = select(opts, |e| e.order() <= 16);
    let relations = (|| {
        let groups = small.iter().map(|e| e.build()).collect::<Result<Vec<_>>>()?;
        let mut bad = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            if are_isoclinic(g, g)?.is_none() {
                bad.push(format!("{} not reflexive", g.name()));
            }
            for h in &groups[i + 1..] {
                let gh = are_isoclinic(g, h)?.is_some();
                let hg = are_isoclinic(h, g)?.is_some();
                let iso = are_isomorphic(g, h)?.is_some();
                if gh != hg || (iso && !gh) {
                    bad.push(format!("{} / {}", g.name(), h.name()));
                }
            }
        }
        Ok((bad.is_empty(), format!("{} groups; {}", groups.len(), if bad.is_empty() { "ok".into() } else { bad.join(", ") })))
    })();
    cases.push(CaseResult::from_result("relation laws", relations));

    // covers of isoclinic groups are isoclinic, checked within each class
    let entries = select(opts, |e| e.order() <= 64);
    let cover_law = (|| {
        let groups = entries.iter().map(|e| e.build()).collect::<Result<Vec<_>>>()?;
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, g) in groups.iter().enumerate() {
            let mut placed = false;
            for class in classes.iter_mut() {
                if are_isoclinic(&groups[class[0]], g)?.is_some() {
                    class.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![i]);
            }
        }
        let mut bad = Vec::new();
        let mut pairs = 0;
        for class in classes.iter().filter(|c| c.len() > 1) {
            let first = cp_cover(&groups[class[0]])?.group;
            for &j in &class[1..] {
                pairs += 1;
                let other = cp_cover(&groups[j])?.group;
                if are_isoclinic(&first, &other)?.is_none() {
                    bad.push(format!("{} / {}", groups[class[0]].name(), groups[j].name()));
                }
            }
        }
        Ok((
            bad.is_empty(),
            format!("{} isoclinism classes, {pairs} cover pairs{}", classes.len(), if bad.is_empty() { String::new() } else { format!("; failing: {}", bad.join(", ")) }),
        ))
    })();
    cases.push(CaseResult::from_result("covers of isoclinic groups", cover_law));

    // orbit count against the empirical count
    for e in select(opts, |e| e.order() <= 16 || e.expected.b0.as_ref().is_some_and(|b| !b.is_empty())) {
        let r = (|| {
            let g = e.build()?;
            let (orbits, empirical) = isoclinism_class_check(&g)?;
            let b0 = multiplier_invariants(&g)?.b0;
            let expected = if b0.is_empty() { Some(1) } else if b0 == [2] { Some(2) } else { None };
            let ok = orbits == empirical && expected.map_or(true, |x| x == orbits);
            Ok((ok, format!("B0 = {b0:?}, orbits {orbits}, isoclinism classes {empirical}")))
        })();
        cases.push(CaseResult::from_result(&format!("classes {}", e.name), r));
    }

    // a CP and a non-CP extension of the same base are never isoclinic
    let mixed = (|| {
        let q = catalog_group("C2xC2")?;
        let module = GModule::trivial(&q, &[2])?;
        let sys = CocycleSystem::new(&module)?;
        let h = CohomologyGroup::from_system(&sys, false)?;
        let exts = h
            .quotient
            .elements()
            .iter()
            .map(|c| {
                let v = h.quotient.lift(c);
                Ok((sys.is_cp(&v), realize_extension(&module, &sys.evaluate(&v))?))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut checked = 0;
        for (cp1, e1) in &exts {
            for (cp2, e2) in &exts {
                if extensions_isoclinic(e1, e2)? && cp1 != cp2 {
                    return Ok((false, "isoclinic extensions with different CP status".into()));
                }
                checked += 1;
            }
        }
        Ok((true, format!("{checked} pairs over C2xC2")))
    })();
    cases.push(CaseResult::from_result("CP is an isoclinism invariant", mixed));
    cases
}

/// The action example: `Q = <x1> x <x2>` elementary abelian of order 4 acting
/// on `N = C2^3`, `x2` swapping `a1` and `a2`, with `x2^x1 = x2 a3`.
pub fn non_cp_example() -> Result<CentralExtensionData> {
    let q = build_group(&GroupSpec::Abelian { invariants: vec![2, 2] })?;
    if q.generators() != [1, 2] || q.mul(1, 2) != 3 {
        return Err(Error::Data("unexpected numbering of C2 x C2".into()));
    }
    let identity = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let swap = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]];
    let module = GModule::with_action(&q, &[2, 2, 2], &[identity, swap])?;
    let a3 = vec![0u64, 0, 1];
    let cocycle = Cocycle::from_fn(4, &[2, 2, 2], |x, y| match (x, y) {
        (2, 1) | (3, 1) | (2, 3) | (3, 3) => a3.clone(),
        _ => vec![0, 0, 0],
    });
    realize_extension(&module, &cocycle)
}

fn non_cp_example_suite() -> Vec<CaseResult> {
    let r = (|| {
        let ext = non_cp_example()?;
        let check = check_cp_extension(&ext)?;
        let order = ext.group.order();
        Ok((
            order == 32 && !check.is_cp && check.witness == Some((1, 2)),
            format!("order {order}, CP {}, witness {:?}", check.is_cp, check.witness),
        ))
    })();
    vec![CaseResult::from_result("action example", r)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_terms() {
        let f = Filter::parse("order<=16, name~D").unwrap();
        let d4 = crate::catalog::lookup("D4").unwrap();
        let d16 = crate::catalog::lookup("D16").unwrap();
        assert!(f.matches(&d4));
        assert!(!f.matches(&d16));
        assert!(Filter::parse("order!!3").is_err());
        assert!(Filter::parse("pgroup").unwrap().matches(&d16));
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &SuiteOptions::default()),
            Err(Error::UnknownSuite(_))
        ));
    }

    #[test]
    fn par_map_keeps_order() {
        let v: Vec<usize> = (0..50).collect();
        assert_eq!(par_map(&v, 4, |x| x * 2), v.iter().map(|x| x * 2).collect::<Vec<_>>());
    }
}

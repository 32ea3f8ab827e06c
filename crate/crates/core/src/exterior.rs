//! Non-abelian exterior squares from their defining presentation, used as an
//! oracle for the multipliers that shares no code with the cocycle systems.
//!
//! Generators `w(x, y)` stand for `x ^ y`; relators are
//! `xy ^ z = (x^y ^ z^y)(y ^ z)`, `x ^ yz = (x ^ z)(x^z ^ y^z)` and `x ^ x = 1`.
//! The curly variant also kills `x ^ y` for every commuting pair. The
//! commutator map `x ^ y -> [x, y]` has kernel `M(Q)` on the wedge and
//! `B0(Q)` on the curly square.

use serde::Serialize;

use crate::cohomology::{MultiplierReport, Path};
use crate::coset::{enumerate, simplify, CosetTable, Presentation, Word};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Default bound on `|Q|` for the oracle.
pub const ORACLE_MAX_ORDER: usize = 24;
/// Coset limit for enumerating an exterior square.
pub const ORACLE_MAX_COSETS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Wedge,
    Curly,
}

/// The defining presentation on `n^2` generators, `w(x, y)` numbered `x n + y`.
pub fn exterior_presentation(q: &FiniteGroup, variant: Variant) -> Presentation {
    let n = q.order();
    let w = |x: usize, y: usize| (x * n + y) as i32 + 1;
    let mut relators = Vec::with_capacity(2 * n * n * n + n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let xy = q.mul(x, y);
                relators.push(vec![-w(xy, z), w(q.conj(x, y), q.conj(z, y)), w(y, z)]);
                let yz = q.mul(y, z);
                relators.push(vec![-w(x, yz), w(x, z), w(q.conj(x, z), q.conj(y, z))]);
            }
        }
    }
    for x in 0..n {
        relators.push(vec![w(x, x)]);
    }
    if variant == Variant::Curly {
        for x in 0..n {
            for y in 0..n {
                if x != y && q.commute(x, y) {
                    relators.push(vec![w(x, y)]);
                }
            }
        }
    }
    Presentation {
        generators: n * n,
        relators,
    }
}

/// A realized exterior square with its commutator map.
#[derive(Clone, Debug)]
pub struct ExteriorSquare {
    pub variant: Variant,
    pub group: FiniteGroup,
    /// Element representing `w(x, y)`, indexed `x n + y`.
    pub wedge_of: Vec<usize>,
    /// Image of each element under `x ^ y -> [x, y]`.
    pub commutator_map: Vec<usize>,
}

impl ExteriorSquare {
    /// Elements in the kernel of the commutator map.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.group.order()).filter(|&e| self.commutator_map[e] == 0).collect()
    }
}

/// Realizes `Q ^ Q` or its curly quotient by coset enumeration.
pub fn exterior_groups(q: &FiniteGroup, variant: Variant) -> Result<ExteriorSquare> {
    let n = q.order();
    if n > ORACLE_MAX_ORDER {
        return Err(Error::OracleOutOfRange(format!(
            "group order {n} exceeds {ORACLE_MAX_ORDER}"
        )));
    }
    let simplified = simplify(&exterior_presentation(q, variant));
    let table = enumerate(&simplified.presentation, ORACLE_MAX_COSETS).map_err(|e| match e {
        Error::PresentationTooLarge { limit } => {
            Error::OracleOutOfRange(format!("exterior square needs more than {limit} cosets"))
        }
        other => other,
    })?;
    let size = table.len();
    let words = tree_words(&table);
    let mut cayley = vec![0u32; size * size];
    for a in 0..size {
        for b in 0..size {
            cayley[a * size + b] = table.act_word(a, &words[b]) as u32;
        }
    }
    let wedge_of: Vec<usize> = simplified.images.iter().map(|im| table.act_word(0, im)).collect();
    let mut gens: Vec<usize> = (0..simplified.presentation.generators)
        .map(|k| table.act_word(0, &[k as i32 + 1]))
        .filter(|&e| e != 0)
        .collect();
    gens.sort_unstable();
    gens.dedup();
    let label = match variant {
        Variant::Wedge => format!("{} ^ {}", q.name(), q.name()),
        Variant::Curly => format!("{} curly {}", q.name(), q.name()),
    };
    let group = FiniteGroup::from_table(label, cayley, gens)?;
    // commutator images of the surviving generators, then along the tree
    let mut gen_image = vec![0usize; simplified.presentation.generators];
    for (orig, im) in simplified.images.iter().enumerate() {
        if let [k] = im.as_slice() {
            if *k > 0 {
                gen_image[*k as usize - 1] = q.commutator(orig / n, orig % n);
            }
        }
    }
    let mut commutator_map = vec![usize::MAX; size];
    commutator_map[0] = 0;
    for c in 0..size {
        let e = words[c]
            .iter()
            .fold(0, |acc, &l| {
                let g = gen_image[l.unsigned_abs() as usize - 1];
                q.mul(acc, if l > 0 { g } else { q.inv(g) })
            });
        commutator_map[c] = e;
    }
    // the commutator map must be a homomorphism on the realized group
    for a in 0..size {
        for b in 0..size {
            if commutator_map[group.mul(a, b)] != q.mul(commutator_map[a], commutator_map[b]) {
                return Err(Error::Data("commutator map is not a homomorphism".into()));
            }
        }
    }
    for (i, &e) in wedge_of.iter().enumerate() {
        if commutator_map[e] != q.commutator(i / n, i % n) {
            return Err(Error::Data(format!("w({}, {}) maps to the wrong commutator", i / n, i % n)));
        }
    }
    Ok(ExteriorSquare {
        variant,
        group,
        wedge_of,
        commutator_map,
    })
}

/// A word reaching each coset from coset 0 along a BFS tree.
fn tree_words(table: &CosetTable) -> Vec<Word> {
    let size = table.len();
    let mut words: Vec<Option<Word>> = vec![None; size];
    words[0] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..table.generators {
            for l in [g as i32 + 1, -(g as i32 + 1)] {
                let d = table.act(c, l);
                if words[d].is_none() {
                    let mut w = words[c].clone().expect("visited");
                    w.push(l);
                    words[d] = Some(w);
                    queue.push_back(d);
                }
            }
        }
    }
    words.into_iter().map(|w| w.expect("connected coset graph")).collect()
}

/// Invariant factors of an abelian subgroup given by its elements.
fn abelian_invariants(g: &FiniteGroup, elements: &[usize]) -> Result<Vec<u64>> {
    let (sub, _) = g.subgroup(elements)?;
    if !sub.is_abelian() {
        return Err(Error::Data("kernel of the commutator map is not abelian".into()));
    }
    Ok(sub.abelianization().invariants.clone())
}

/// Orders and kernels of both squares.
#[derive(Clone, Debug, Serialize)]
pub struct ExteriorReport {
    pub wedge_order: usize,
    pub curly_order: usize,
    pub derived_order: usize,
    pub multipliers: MultiplierReport,
}

/// `M`, `M0` and `B0` read off the exterior squares.
pub fn multiplier_oracle(q: &FiniteGroup) -> Result<MultiplierReport> {
    Ok(exterior_report(q)?.multipliers)
}

pub fn exterior_report(q: &FiniteGroup) -> Result<ExteriorReport> {
    let wedge = exterior_groups(q, Variant::Wedge)?;
    let curly = exterior_groups(q, Variant::Curly)?;
    let m_ker = wedge.kernel();
    let b0_ker = curly.kernel();
    // wedge -> curly sends w(x, y) to w(x, y)
    let to_curly = induced_map(&wedge, &curly)?;
    let m0_ker: Vec<usize> = (0..wedge.group.order()).filter(|&e| to_curly[e] == 0).collect();
    let derived_order = q.derived().len();
    let report = ExteriorReport {
        wedge_order: wedge.group.order(),
        curly_order: curly.group.order(),
        derived_order,
        multipliers: MultiplierReport {
            b0: abelian_invariants(&curly.group, &b0_ker)?,
            m: abelian_invariants(&wedge.group, &m_ker)?,
            m0: abelian_invariants(&wedge.group, &m0_ker)?,
            path: Path::Oracle,
            modulus: 0,
        },
    };
    if report.wedge_order != m_ker.len() * derived_order || report.curly_order != b0_ker.len() * derived_order {
        return Err(Error::Data("exterior square orders disagree with kernels".into()));
    }
    if m_ker.len() != m0_ker.len() * b0_ker.len() {
        return Err(Error::Data("|M| != |M0| |B0|".into()));
    }
    Ok(report)
}

/// Homomorphism between squares (of possibly different groups) determined by
/// where each wedge generator goes; fails if the assignment is inconsistent.
fn induced_hom(src: &ExteriorSquare, dst: &FiniteGroup, gen_target: &[usize]) -> Result<Vec<usize>> {
    let g = &src.group;
    let size = g.order();
    let mut map = vec![usize::MAX; size];
    map[0] = 0;
    let mut queue = std::collections::VecDeque::from([0usize]);
    // generators of the realized group are wedge images; find their targets
    let mut gen_map: Vec<(usize, usize)> = Vec::new();
    for (i, &e) in src.wedge_of.iter().enumerate() {
        if e != 0 && !gen_map.iter().any(|&(s, _)| s == e) {
            gen_map.push((e, gen_target[i]));
        }
    }
    while let Some(a) = queue.pop_front() {
        for &(s, t) in &gen_map {
            let b = g.mul(a, s);
            let image = dst.mul(map[a], t);
            if map[b] == usize::MAX {
                map[b] = image;
                queue.push_back(b);
            }
        }
    }
    for a in 0..size {
        for &(s, t) in &gen_map {
            if map[g.mul(a, s)] != dst.mul(map[a], t) {
                return Err(Error::Data("induced map on exterior squares is not well defined".into()));
            }
        }
    }
    for (i, &e) in src.wedge_of.iter().enumerate() {
        if map[e] != gen_target[i] {
            return Err(Error::Data("induced map misses a wedge generator".into()));
        }
    }
    Ok(map)
}

fn induced_map(wedge: &ExteriorSquare, curly: &ExteriorSquare) -> Result<Vec<usize>> {
    induced_hom(wedge, &curly.group, &curly.wedge_of)
}

/// Outcome of comparing a central subgroup `N` of `G` with `G/N` through
/// exterior squares.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientOracleReport {
    /// `N` meets the commutator set trivially.
    pub is_cp: bool,
    /// `M0(G) -> M0(G/N)` is onto.
    pub m0_surjective: bool,
    /// `|G curly G| = |G/N curly G/N|`.
    pub curly_orders_equal: bool,
    pub curly_order: usize,
    pub quotient_curly_order: usize,
    pub b0_order: u128,
    pub quotient_b0_order: u128,
    pub n_meet_derived: usize,
    /// `|B0(G/N)| = |B0(G)| |N meet [G,G]|`, checked only when `N` is CP.
    pub b0_order_law: Option<bool>,
}

impl QuotientOracleReport {
    /// The three equivalent conditions agree, and the order law holds when it applies.
    pub fn consistent(&self) -> bool {
        self.is_cp == self.m0_surjective && self.is_cp == self.curly_orders_equal && self.b0_order_law != Some(false)
    }
}

/// Evaluates CP-ness of a central subgroup three ways.
pub fn cp_quotient_oracle_checks(g: &FiniteGroup, n_sub: &[usize]) -> Result<QuotientOracleReport> {
    if !g.is_subgroup(n_sub) || !g.is_central(n_sub) {
        return Err(Error::SubgroupRejected("not a central subgroup".into()));
    }
    let order = g.order();
    let k = g.commutator_set();
    let is_cp = n_sub.iter().all(|&x| x == 0 || k.binary_search(&x).is_err());
    let (quot, proj) = g.quotient(n_sub)?;
    let qn = quot.order();
    let g_wedge = exterior_groups(g, Variant::Wedge)?;
    let g_curly = exterior_groups(g, Variant::Curly)?;
    let q_wedge = exterior_groups(&quot, Variant::Wedge)?;
    let q_curly = exterior_groups(&quot, Variant::Curly)?;
    // M0 of the quotient and the image of M0(G), inside the quotient's wedge
    let m0_quot: Vec<usize> = (0..qn * qn)
        .filter(|&i| quot.commute(i / qn, i % qn))
        .map(|i| q_wedge.wedge_of[i])
        .collect();
    let m0_image: Vec<usize> = (0..order * order)
        .filter(|&i| g.commute(i / order, i % order))
        .map(|i| q_wedge.wedge_of[proj[i / order] * qn + proj[i % order]])
        .collect();
    let m0_surjective = q_wedge.group.closure(&m0_quot) == q_wedge.group.closure(&m0_image);
    let b0_order = g_curly.kernel().len() as u128;
    let quotient_b0_order = q_curly.kernel().len() as u128;
    let derived = g.derived();
    let n_meet_derived = n_sub.iter().filter(|x| derived.binary_search(x).is_ok()).count();
    let b0_order_law = is_cp.then(|| quotient_b0_order == b0_order * n_meet_derived as u128);
    // the wedge of G must map onto the wedge of G/N
    let targets: Vec<usize> = (0..order * order)
        .map(|i| q_wedge.wedge_of[proj[i / order] * qn + proj[i % order]])
        .collect();
    induced_hom(&g_wedge, &q_wedge.group, &targets)?;
    Ok(QuotientOracleReport {
        is_cp,
        m0_surjective,
        curly_orders_equal: g_curly.group.order() == q_curly.group.order(),
        curly_order: g_curly.group.order(),
        quotient_curly_order: q_curly.group.order(),
        b0_order,
        quotient_b0_order,
        n_meet_derived,
        b0_order_law,
    })
}

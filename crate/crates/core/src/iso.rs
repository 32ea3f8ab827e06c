//! Isomorphism, automorphism and isoclinism tests by backtracking over
//! generator images.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cohomology::uct_decomposition;
use crate::error::{Error, Result};
use crate::extensions::CentralExtensionData;
use crate::group::FiniteGroup;

/// Limits for the backtracking searches.
#[derive(Clone, Copy, Debug)]
pub struct IsoCaps {
    pub max_order: usize,
    /// Largest generating set used as the search skeleton.
    pub max_generators: usize,
}

impl Default for IsoCaps {
    fn default() -> Self {
        IsoCaps {
            max_order: 128,
            max_generators: 4,
        }
    }
}

/// Cheap isomorphism invariants: order statistics by element order and class size.
fn profile(g: &FiniteGroup) -> Vec<(usize, usize, usize)> {
    let class_size = class_sizes(g);
    let mut p: Vec<(usize, usize, usize)> = Vec::new();
    let mut counts = std::collections::BTreeMap::new();
    for x in 0..g.order() {
        *counts.entry((g.element_order(x), class_size[x])).or_insert(0usize) += 1;
    }
    for ((o, c), k) in counts {
        p.push((o, c, k));
    }
    p
}

fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
    let mut size = vec![0; g.order()];
    for class in &g.structure().conjugacy_classes {
        for &x in class {
            size[x] = class.len();
        }
    }
    size
}

fn invariants_match(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    g.order() == h.order()
        && g.center().len() == h.center().len()
        && g.derived().len() == h.derived().len()
        && g.class_count() == h.class_count()
        && g.abelianization().invariants == h.abelianization().invariants
        && profile(g) == profile(h)
}

/// A short generating set: a Burnside basis for p-groups, otherwise a
/// minimal one found by search.
fn skeleton(g: &FiniteGroup, cap: usize) -> Result<Vec<usize>> {
    let n = g.order();
    if n == 1 {
        return Ok(Vec::new());
    }
    if let Some(p) = g.prime_power() {
        let mut frattini: Vec<usize> = g.derived().to_vec();
        frattini.extend((0..n).map(|x| g.pow(x, p)));
        let mut span = g.closure(&frattini);
        let mut by_order: Vec<usize> = (1..n).collect();
        by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
        let mut gens = Vec::new();
        while span.len() < n {
            let x = *by_order
                .iter()
                .find(|x| span.binary_search(x).is_err())
                .expect("element outside the span");
            gens.push(x);
            let mut all = frattini.clone();
            all.extend(&gens);
            span = g.closure(&all);
        }
        if gens.len() > cap {
            return Err(Error::GeneratorSearchCap(cap));
        }
        return Ok(gens);
    }
    g.minimal_generating_set(cap)
}

/// Extends `gens[i] -> imgs[i]` over the subgroup generated by the assigned
/// generators, failing on inconsistency or non-injectivity.
fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; h.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let v = h.mul(map[x], t);
            if map[y] == usize::MAX {
                if used[v] {
                    return None;
                }
                used[v] = true;
                map[y] = v;
                queue.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

/// Visits every isomorphism `g -> h` (as an element map) until `visit` returns false.
fn for_each_iso(
    g: &FiniteGroup,
    h: &FiniteGroup,
    caps: IsoCaps,
    identity_first: bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<()> {
    for grp in [g, h] {
        if grp.order() > caps.max_order {
            return Err(Error::CapExceeded {
                what: "isomorphism search order",
                limit: caps.max_order,
                got: grp.order(),
            });
        }
    }
    if !invariants_match(g, h) {
        return Ok(());
    }
    let gens = skeleton(g, caps.max_generators)?;
    let (cg, ch) = (class_sizes(g), class_sizes(h));
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let mut c: Vec<usize> = (0..h.order())
                .filter(|&y| h.element_order(y) == g.element_order(s) && ch[y] == cg[s])
                .collect();
            if identity_first {
                if let Some(pos) = c.iter().position(|&y| y == s) {
                    c.remove(pos);
                    c.insert(0, s);
                }
            }
            c
        })
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    backtrack(g, h, &gens, &cands, &mut imgs, visit);
    Ok(())
}

fn backtrack(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    cands: &[Vec<usize>],
    imgs: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let level = imgs.len();
    if level == gens.len() {
        let map = extend(g, h, gens, imgs).expect("checked at the previous level");
        if map.iter().all(|&v| v != usize::MAX) {
            return visit(&map);
        }
        return true;
    }
    for &c in &cands[level] {
        imgs.push(c);
        let ok = extend(g, h, &gens[..=level], imgs).is_some();
        let keep_going = !ok || backtrack(g, h, gens, cands, imgs, visit);
        imgs.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// An isomorphism `g -> h` if one exists.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<usize>>> {
    are_isomorphic_with(g, h, IsoCaps::default())
}

pub fn are_isomorphic_with(g: &FiniteGroup, h: &FiniteGroup, caps: IsoCaps) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    for_each_iso(g, h, caps, true, &mut |m| {
        found = Some(m.to_vec());
        false
    })?;
    Ok(found)
}

/// The full automorphism group as element permutations, identity first.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub maps: Vec<Vec<usize>>,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.maps.len()
    }
}

pub fn automorphisms(g: &FiniteGroup) -> Result<AutGroup> {
    let caps = IsoCaps {
        max_order: 64,
        ..IsoCaps::default()
    };
    let mut maps = Vec::new();
    for_each_iso(g, g, caps, true, &mut |m| {
        maps.push(m.to_vec());
        true
    })?;
    Ok(AutGroup { maps })
}

/// Extends a prescribed assignment on generators of a subgroup `dom` of `g`
/// to an isomorphism onto the subgroup `cod` of `h`.
fn forced_iso(
    g: &FiniteGroup,
    dom: &[usize],
    h: &FiniteGroup,
    cod: &[usize],
    assign: impl Iterator<Item = (usize, usize)>,
) -> Option<Vec<(usize, usize)>> {
    if dom.len() != cod.len() {
        return None;
    }
    let mut map = vec![usize::MAX; g.order()];
    let mut gens = Vec::new();
    for (a, b) in assign {
        if map[a] == usize::MAX {
            map[a] = b;
            if a != 0 {
                gens.push(a);
            }
        } else if map[a] != b {
            return None;
        }
    }
    if map[0] != usize::MAX && map[0] != 0 {
        return None;
    }
    let gens_img: Vec<usize> = gens.iter().map(|&a| map[a]).collect();
    let full = extend(g, h, &gens, &gens_img)?;
    // agreement with every prescribed value and bijectivity onto cod
    let mut image: Vec<usize> = Vec::with_capacity(dom.len());
    for &x in dom {
        if full[x] == usize::MAX {
            return None;
        }
        if map[x] != usize::MAX && map[x] != full[x] {
            return None;
        }
        image.push(full[x]);
    }
    image.sort_unstable();
    if image != cod {
        return None;
    }
    Some(dom.iter().map(|&x| (x, full[x])).collect())
}

/// Compatible isomorphisms of central quotients and derived subgroups.
#[derive(Clone, Debug, Serialize)]
pub struct IsoclinismWitness {
    /// `alpha[i]` is the image of the `i`-th element of `G/Z(G)`.
    pub alpha: Vec<usize>,
    /// Pairs `(c, beta(c))` over `[G,G]`.
    pub beta: Vec<(usize, usize)>,
}

/// Decides isoclinism; `beta` is forced by `alpha` on commutators.
pub fn are_isoclinic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<IsoclinismWitness>> {
    if g.derived().len() != h.derived().len() || g.order() * h.center().len() != h.order() * g.center().len() {
        return Ok(None);
    }
    let (gq, gp) = g.quotient(g.center())?;
    let (hq, hp) = h.quotient(h.center())?;
    let caps = IsoCaps {
        max_order: 64,
        ..IsoCaps::default()
    };
    // a representative of each coset
    let lift = |proj: &[usize], size: usize| {
        let mut l = vec![usize::MAX; size];
        for (x, &c) in proj.iter().enumerate() {
            if l[c] == usize::MAX {
                l[c] = x;
            }
        }
        l
    };
    let (gl, hl) = (lift(&gp, gq.order()), lift(&hp, hq.order()));
    let m = gq.order();
    let mut witness = None;
    for_each_iso(&gq, &hq, caps, false, &mut |alpha| {
        let pairs = (0..m * m).map(|i| {
            let (a, b) = (i / m, i % m);
            (
                g.commutator(gl[a], gl[b]),
                h.commutator(hl[alpha[a]], hl[alpha[b]]),
            )
        });
        if let Some(beta) = forced_iso(g, g.derived(), h, h.derived(), pairs) {
            witness = Some(IsoclinismWitness {
                alpha: alpha.to_vec(),
                beta,
            });
            return false;
        }
        true
    })?;
    Ok(witness)
}

/// Isoclinism of central extensions: an isomorphism of the bases and one of
/// the derived subgroups of the extension groups compatible with the
/// commutator pairings.
pub fn extensions_isoclinic(e1: &CentralExtensionData, e2: &CentralExtensionData) -> Result<bool> {
    if !e1.is_central() || !e2.is_central() {
        return Err(Error::InvalidModule("extension isoclinism needs central extensions".into()));
    }
    let (q1, q2) = (&e1.base, &e2.base);
    let (g1, g2) = (&e1.group, &e2.group);
    if q1.order() != q2.order() || g1.derived().len() != g2.derived().len() {
        return Ok(false);
    }
    let n = q1.order();
    // element x of the base lifts to index x (zero kernel coordinate)
    let same_base = q1 == q2;
    let mut found = false;
    for_each_iso(q1, q2, IsoCaps::default(), same_base, &mut |eta| {
        let pairs = (0..n * n).map(|i| {
            let (x, y) = (i / n, i % n);
            (g1.commutator(x, y), g2.commutator(eta[x], eta[y]))
        });
        if forced_iso(g1, g1.derived(), g2, g2.derived(), pairs).is_some() {
            found = true;
            return false;
        }
        true
    })?;
    Ok(found)
}

/// Orbits of `Aut Q` on the subgroups of `B0(Q)`.
#[derive(Clone, Debug, Serialize)]
pub struct IsoclinismClasses {
    pub b0: Vec<u64>,
    /// `None` when `B0` is trivial and the action was not needed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<usize>,
    pub subgroup_count: usize,
    pub orbit_count: usize,
    /// Generators (coordinates in the dual group) of one subgroup per orbit.
    pub representatives: Vec<Vec<Vec<u64>>>,
}

/// Counts isoclinism classes of central CP extensions of `q` as orbits of
/// `Aut Q` on subgroups of `B0(Q)`, computed through the dual action on
/// `H^2_CP / Ext` by `[w] -> [w o (phi x phi)]`.
pub fn cp_extension_isoclinism_classes(q: &FiniteGroup) -> Result<IsoclinismClasses> {
    let n = q.order() as u64;
    if n == 1 {
        return Ok(IsoclinismClasses {
            b0: vec![],
            aut_order: Some(1),
            subgroup_count: 1,
            orbit_count: 1,
            representatives: vec![vec![]],
        });
    }
    let d = uct_decomposition(q, n)?;
    let dual = &d.hom_b0;
    let subgroups = dual.subgroups();
    if dual.is_trivial() {
        return Ok(IsoclinismClasses {
            b0: vec![],
            aut_order: None,
            subgroup_count: 1,
            orbit_count: 1,
            representatives: vec![vec![]],
        });
    }
    let aut = automorphisms(q)?;
    let sys = d.system();
    let lifts = dual.generator_lifts();
    // images of the dual basis under each automorphism
    let mut actions: Vec<Vec<Vec<u64>>> = Vec::with_capacity(aut.order());
    for phi in &aut.maps {
        let mut cols = Vec::new();
        for v in &lifts {
            let w = sys.evaluate(v);
            let pulled = crate::cohomology::Cocycle::from_fn(q.order(), w.moduli(), |x, y| {
                w.value(phi[x], phi[y]).to_vec()
            });
            cols.push(dual.project(&sys.restrict(&pulled))?);
        }
        actions.push(cols);
    }
    let apply = |act: &[Vec<u64>], x: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; x.len()];
        for (i, &c) in x.iter().enumerate() {
            for _ in 0..c {
                out = dual.add(&out, &act[i]);
            }
        }
        out
    };
    let index: std::collections::BTreeMap<Vec<Vec<u64>>, usize> =
        subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut orbit_of = vec![usize::MAX; subgroups.len()];
    let mut representatives = Vec::new();
    let mut orbit_count = 0;
    for (i, s) in subgroups.iter().enumerate() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        for act in &actions {
            let mut image: Vec<Vec<u64>> = s.iter().map(|x| apply(act, x)).collect();
            image.sort();
            let j = *index
                .get(&image)
                .ok_or_else(|| Error::Data("automorphism image is not a subgroup".into()))?;
            orbit_of[j] = orbit_count;
        }
        let gens: BTreeSet<Vec<u64>> = s.iter().filter(|x| x.iter().any(|&c| c != 0)).cloned().collect();
        representatives.push(gens.into_iter().collect());
        orbit_count += 1;
    }
    Ok(IsoclinismClasses {
        b0: dual.invariants().to_vec(),
        aut_order: Some(aut.order()),
        subgroup_count: subgroups.len(),
        orbit_count,
        representatives,
    })
}

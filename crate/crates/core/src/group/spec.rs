//! JSON group specifications and the builders behind them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::coset::{enumerate, Presentation, Word};
use crate::error::{Error, Result};

/// A group specification in one of six formats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Permutations as 1-based image lists; products compose left to right.
    Permutation { generators: Vec<Vec<usize>> },
    /// Relators over `a..z` with `A..Z` for inverses.
    Presentation { generators: usize, relators: Vec<String> },
    /// Explicit 0-based table, optionally with generators for the numbering.
    Cayley {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<usize>>,
    },
    DirectProduct { factors: Vec<GroupSpec> },
    Abelian { invariants: Vec<u64> },
    /// `action[i][k]` is the image of kernel element `k` under quotient generator `i`.
    Semidirect {
        kernel: Box<GroupSpec>,
        quotient: Box<GroupSpec>,
        action: Vec<Vec<usize>>,
    },
}

/// Size limits for group construction.
#[derive(Clone, Copy, Debug)]
pub struct BuildCaps {
    pub max_order: usize,
    pub max_cosets: usize,
}

impl Default for BuildCaps {
    fn default() -> Self {
        BuildCaps {
            max_order: 512,
            max_cosets: 20_000,
        }
    }
}

/// Builds a group with the default caps.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    build_group_with(spec, BuildCaps::default())
}

pub fn build_group_with(spec: &GroupSpec, caps: BuildCaps) -> Result<FiniteGroup> {
    let g = match spec {
        GroupSpec::Permutation { generators } => from_permutations(generators, caps)?,
        GroupSpec::Presentation { generators, relators } => {
            let rels = relators
                .iter()
                .map(|r| parse_word(r, *generators))
                .collect::<Result<Vec<_>>>()?;
            from_presentation(*generators, rels, caps)?
        }
        GroupSpec::Cayley { table, generators } => from_cayley(table, generators.as_deref(), caps)?,
        GroupSpec::DirectProduct { factors } => {
            let built = factors
                .iter()
                .map(|f| build_group_with(f, caps))
                .collect::<Result<Vec<_>>>()?;
            direct_product(&built, caps)?
        }
        GroupSpec::Abelian { invariants } => abelian(invariants, caps)?,
        GroupSpec::Semidirect {
            kernel,
            quotient,
            action,
        } => {
            let k = build_group_with(kernel, caps)?;
            let h = build_group_with(quotient, caps)?;
            semidirect(&k, &h, action, caps)?
        }
    };
    g.validate()?;
    Ok(g)
}

fn check_order(n: usize, caps: BuildCaps) -> Result<()> {
    if n > caps.max_order {
        return Err(Error::CapExceeded {
            what: "group order",
            limit: caps.max_order,
            got: n,
        });
    }
    Ok(())
}

/// Parses a relator over `a..z` (generators) and `A..Z` (inverses).
pub fn parse_word(s: &str, generators: usize) -> Result<Word> {
    s.chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| {
            let (g, sign) = if c.is_ascii_lowercase() {
                (c as u8 - b'a', 1)
            } else if c.is_ascii_uppercase() {
                (c as u8 - b'A', -1)
            } else {
                return Err(Error::MalformedSpec(format!("bad relator letter `{c}`")));
            };
            if g as usize >= generators {
                return Err(Error::MalformedSpec(format!(
                    "relator letter `{c}` exceeds {generators} generators"
                )));
            }
            Ok(sign * (g as i32 + 1))
        })
        .collect()
}

fn from_permutations(gens: &[Vec<usize>], caps: BuildCaps) -> Result<FiniteGroup> {
    let degree = gens.first().map_or(0, Vec::len);
    let mut perms: Vec<Vec<u16>> = Vec::new();
    for g in gens {
        if g.len() != degree {
            return Err(Error::MalformedSpec("permutations of different degrees".into()));
        }
        let mut seen = vec![false; degree];
        let mut p = Vec::with_capacity(degree);
        for &img in g {
            if img == 0 || img > degree || std::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::MalformedSpec("generator is not a bijection".into()));
            }
            p.push((img - 1) as u16);
        }
        perms.push(p);
    }
    let compose = |x: &[u16], y: &[u16]| -> Vec<u16> { x.iter().map(|&i| y[i as usize]).collect() };
    let identity: Vec<u16> = (0..degree as u16).collect();
    let mut index: HashMap<Vec<u16>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        for p in &perms {
            let y = compose(&elements[head], p);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
                check_order(elements.len(), caps)?;
            }
        }
        head += 1;
    }
    let gen_idx: Vec<usize> = perms.iter().map(|p| index[p]).collect();
    FiniteGroup::from_raw(
        "permutation group",
        elements.len(),
        0,
        |a, b| index[&compose(&elements[a], &elements[b])],
        &gen_idx,
    )
}

/// Builds the group of a finite presentation by coset enumeration.
pub fn from_presentation(generators: usize, relators: Vec<Word>, caps: BuildCaps) -> Result<FiniteGroup> {
    let p = Presentation {
        generators,
        relators,
    };
    let t = enumerate(&p, caps.max_cosets)?;
    let n = t.len();
    check_order(n, caps)?;
    // word for each coset via a BFS tree, then right multiplication table
    let mut parent: Vec<Option<(usize, i32)>> = vec![None; n];
    let mut order = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < order.len() {
        let c = order[head];
        head += 1;
        for g in 0..generators as i32 {
            for l in [g + 1, -(g + 1)] {
                let d = t.act(c, l);
                if !seen[d] {
                    seen[d] = true;
                    parent[d] = Some((c, l));
                    order.push(d);
                }
            }
        }
    }
    let mut raw = vec![0usize; n * n];
    for c in 0..n {
        raw[c * n] = c;
    }
    for &d in order.iter().skip(1) {
        let (p, l) = parent[d].expect("tree");
        for c in 0..n {
            raw[c * n + d] = t.act(raw[c * n + p], l);
        }
    }
    let gens: Vec<usize> = (0..generators as i32).map(|g| t.act(0, g + 1)).collect();
    FiniteGroup::from_raw("presented group", n, 0, |a, b| raw[a * n + b], &gens)
}

fn from_cayley(table: &[Vec<usize>], generators: Option<&[usize]>, caps: BuildCaps) -> Result<FiniteGroup> {
    let n = table.len();
    check_order(n, caps)?;
    if n == 0 || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return Err(Error::MalformedSpec("cayley table must be square with entries < n".into()));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::MalformedSpec("cayley table has no identity".into()))?;
    let gens: Vec<usize> = match generators {
        Some(g) => {
            if g.iter().any(|&x| x >= n) {
                return Err(Error::MalformedSpec("generator index out of range".into()));
            }
            g.to_vec()
        }
        None => {
            // least element outside the current span, repeatedly
            let mut gens = Vec::new();
            let mut span = vec![false; n];
            span[identity] = true;
            while let Some(x) = (0..n).find(|&x| !span[x]) {
                gens.push(x);
                span = vec![false; n];
                span[identity] = true;
                let mut stack = vec![identity];
                while let Some(y) = stack.pop() {
                    for &g in &gens {
                        let z = table[y][g];
                        if !span[z] {
                            span[z] = true;
                            stack.push(z);
                        }
                    }
                }
            }
            gens
        }
    };
    FiniteGroup::from_raw("cayley group", n, identity, |a, b| table[a][b], &gens)
}

/// Direct product with generators taken factor by factor.
pub fn direct_product(factors: &[FiniteGroup], caps: BuildCaps) -> Result<FiniteGroup> {
    let sizes: Vec<usize> = factors.iter().map(FiniteGroup::order).collect();
    let n: usize = sizes.iter().product();
    check_order(n, caps)?;
    let split = |mut x: usize| -> Vec<usize> {
        let mut parts = vec![0; sizes.len()];
        for i in (0..sizes.len()).rev() {
            parts[i] = x % sizes[i];
            x /= sizes[i];
        }
        parts
    };
    let join = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (p, s)| acc * s + p);
    let mut gens = Vec::new();
    for (i, f) in factors.iter().enumerate() {
        for &g in f.generators() {
            let mut parts = vec![0; sizes.len()];
            parts[i] = g;
            gens.push(join(&parts));
        }
    }
    let names: Vec<&str> = factors.iter().map(FiniteGroup::name).collect();
    FiniteGroup::from_raw(
        names.join(" x "),
        n,
        0,
        |a, b| {
            let (pa, pb) = (split(a), split(b));
            let prod: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| f.mul(pa[i], pb[i]))
                .collect();
            join(&prod)
        },
        &gens,
    )
}

fn abelian(invariants: &[u64], caps: BuildCaps) -> Result<FiniteGroup> {
    if invariants.iter().any(|&d| d == 0) {
        return Err(Error::MalformedSpec("invariant factor 0".into()));
    }
    let factors: Vec<u64> = invariants.iter().copied().filter(|&d| d > 1).collect();
    let n = factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize));
    let n = n.ok_or(Error::CapExceeded {
        what: "group order",
        limit: caps.max_order,
        got: usize::MAX,
    })?;
    check_order(n, caps)?;
    let sizes: Vec<usize> = factors.iter().map(|&d| d as usize).collect();
    let radix = |x: usize| -> Vec<usize> {
        let mut parts = vec![0; sizes.len()];
        let mut x = x;
        for i in (0..sizes.len()).rev() {
            parts[i] = x % sizes[i];
            x /= sizes[i];
        }
        parts
    };
    let join = |parts: &[usize]| parts.iter().zip(&sizes).fold(0, |acc, (p, s)| acc * s + p);
    let gens: Vec<usize> = (0..sizes.len())
        .map(|i| {
            let mut e = vec![0; sizes.len()];
            e[i] = 1;
            join(&e)
        })
        .collect();
    let label = if factors.is_empty() {
        "C1".to_string()
    } else {
        factors.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join(" x ")
    };
    FiniteGroup::from_raw(
        label,
        n,
        0,
        |a, b| {
            let (pa, pb) = (radix(a), radix(b));
            let s: Vec<usize> = (0..sizes.len()).map(|i| (pa[i] + pb[i]) % sizes[i]).collect();
            join(&s)
        },
        &gens,
    )
}

/// `K x| H` with `(k1, h1)(k2, h2) = (k1 phi_{h1}(k2), h1 h2)`.
pub fn semidirect(k: &FiniteGroup, h: &FiniteGroup, action: &[Vec<usize>], caps: BuildCaps) -> Result<FiniteGroup> {
    let (nk, nh) = (k.order(), h.order());
    check_order(nk * nh, caps)?;
    if action.len() != h.generators().len() {
        return Err(Error::MalformedSpec(format!(
            "action lists {} maps for {} quotient generators",
            action.len(),
            h.generators().len()
        )));
    }
    for a in action {
        let mut seen = vec![false; nk];
        if a.len() != nk || a.iter().any(|&v| v >= nk || std::mem::replace(&mut seen[v], true)) {
            return Err(Error::MalformedSpec("action map is not a permutation".into()));
        }
        if (0..nk).any(|x| (0..nk).any(|y| a[k.mul(x, y)] != k.mul(a[x], a[y]))) {
            return Err(Error::MalformedSpec("action map is not an automorphism".into()));
        }
    }
    // phi for every element of H by BFS over its generators
    let mut phi: Vec<Option<Vec<usize>>> = vec![None; nh];
    phi[0] = Some((0..nk).collect());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &g) in h.generators().iter().enumerate() {
            let y = h.mul(x, g);
            let px = phi[x].as_ref().expect("visited");
            let composed: Vec<usize> = (0..nk).map(|e| px[action[i][e]]).collect();
            match &phi[y] {
                None => {
                    phi[y] = Some(composed);
                    queue.push_back(y);
                }
                Some(py) if *py != composed => {
                    return Err(Error::MalformedSpec("action is not a homomorphism".into()));
                }
                Some(_) => {}
            }
        }
    }
    let phi: Vec<Vec<usize>> = phi.into_iter().map(|p| p.expect("all reached")).collect();
    let mut gens: Vec<usize> = k.generators().iter().map(|&g| g * nh).collect();
    gens.extend(h.generators().iter().copied());
    FiniteGroup::from_raw(
        format!("{} x| {}", k.name(), h.name()),
        nk * nh,
        0,
        |a, b| {
            let (k1, h1) = (a / nh, a % nh);
            let (k2, h2) = (b / nh, b % nh);
            k.mul(k1, phi[h1][k2]) * nh + h.mul(h1, h2)
        },
        &gens,
    )
}

impl FiniteGroup {
    /// Cayley specification reproducing this group exactly.
    pub fn to_spec(&self) -> GroupSpec {
        GroupSpec::Cayley {
            table: self.rows(),
            generators: Some(self.generators().to_vec()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_of_specs() {
        let text = r#"{"type":"presentation","generators":2,"relators":["aaaa","bb","abab"]}"#;
        let spec: GroupSpec = serde_json::from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&spec).unwrap(), text);
        let g = build_group(&spec).unwrap();
        assert_eq!(g.order(), 8);
    }

    #[test]
    fn permutation_dihedral() {
        let spec = GroupSpec::Permutation {
            generators: vec![vec![2, 3, 4, 1], vec![3, 2, 1, 4]],
        };
        assert_eq!(build_group(&spec).unwrap().order(), 8);
    }

    #[test]
    fn bad_relator_letter() {
        let spec = GroupSpec::Presentation {
            generators: 1,
            relators: vec!["ab".into()],
        };
        assert!(matches!(build_group(&spec), Err(Error::MalformedSpec(_))));
    }

    #[test]
    fn order_cap() {
        let spec = GroupSpec::Abelian {
            invariants: vec![1024],
        };
        assert!(matches!(build_group(&spec), Err(Error::CapExceeded { .. })));
    }
}

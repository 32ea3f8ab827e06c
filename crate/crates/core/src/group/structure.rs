//! Structural invariants computed by exhaustive scans.

use std::collections::HashSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::linalg::{smith_normal_form, Matrix};
use crate::Rational;

/// Center, derived subgroup, commutator set, classes and abelianization.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub center: Vec<usize>,
    pub derived: Vec<usize>,
    /// The set `K(G)` of commutators, which need not be a subgroup.
    pub commutator_set: Vec<usize>,
    pub conjugacy_classes: Vec<Vec<usize>>,
    pub abelianization_invariants: Vec<u64>,
    pub commuting_pairs: Vec<(usize, usize)>,
}

/// Abelianization `G -> G/[G,G]` with coordinates in its invariant-factor
/// decomposition.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub invariants: Vec<u64>,
    /// `coords[x]` is the image of element `x`.
    pub coords: Vec<Vec<u64>>,
}

impl FiniteGroup {
    /// Cached structure report.
    pub fn structure(&self) -> &StructureReport {
        self.report.get_or_init(|| self.compute_structure())
    }

    fn compute_structure(&self) -> StructureReport {
        let n = self.order();
        let mut k = vec![false; n];
        let mut commuting_pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let c = self.commutator(x, y);
                k[c] = true;
                if c == 0 {
                    commuting_pairs.push((x, y));
                }
            }
        }
        let commutator_set: Vec<usize> = (0..n).filter(|&x| k[x]).collect();
        let derived = self.closure(&commutator_set);
        let center: Vec<usize> = (0..n)
            .filter(|&z| self.generators().iter().all(|&g| self.commute(z, g)))
            .collect();
        let mut class_of = vec![usize::MAX; n];
        let mut conjugacy_classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = conjugacy_classes.len();
            let mut class: Vec<usize> = (0..n).map(|g| self.conj(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = id;
            }
            conjugacy_classes.push(class);
        }
        let abelianization_invariants = self.abelianization().invariants.clone();
        StructureReport {
            center,
            derived,
            commutator_set,
            conjugacy_classes,
            abelianization_invariants,
            commuting_pairs,
        }
    }

    pub fn center(&self) -> &[usize] {
        &self.structure().center
    }

    pub fn derived(&self) -> &[usize] {
        &self.structure().derived
    }

    pub fn commutator_set(&self) -> &[usize] {
        &self.structure().commutator_set
    }

    pub fn class_count(&self) -> usize {
        self.structure().conjugacy_classes.len()
    }

    /// Elements commuting with `x`.
    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order()).filter(|&y| self.commute(x, y)).collect()
    }

    /// Exact commuting probability, checked against the class count.
    pub fn commuting_probability(&self) -> Rational {
        let n = self.order();
        let pairs = self.structure().commuting_pairs.len();
        let by_pairs = Rational::new(BigInt::from(pairs), BigInt::from(n * n));
        let by_classes = Rational::new(BigInt::from(self.class_count()), BigInt::from(n));
        assert_eq!(by_pairs, by_classes, "class equation violated");
        by_pairs
    }

    /// Cached abelianization with coordinates.
    pub fn abelianization(&self) -> &Abelianization {
        self.abelianization.get_or_init(|| self.compute_abelianization())
    }

    fn compute_abelianization(&self) -> Abelianization {
        let n = self.order();
        // commutator subgroup, computed without the structure report
        let mut comm = Vec::new();
        let mut mark = vec![false; n];
        for x in 0..n {
            for y in 0..n {
                let c = self.commutator(x, y);
                if !mark[c] {
                    mark[c] = true;
                    comm.push(c);
                }
            }
        }
        let derived = self.closure(&comm);
        // coset label of each element: smallest element of x D
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset[x] == usize::MAX {
                let id = reps.len();
                reps.push(x);
                for &d in &derived {
                    coset[self.mul(x, d)] = id;
                }
            }
        }
        let gens = self.generators();
        let d = gens.len();
        if d == 0 || reps.len() == 1 {
            return Abelianization {
                invariants: Vec::new(),
                coords: vec![Vec::new(); n],
            };
        }
        // BFS over cosets with word vectors; Schreier relations span the kernel
        let a = reps.len();
        let mut z: Vec<Option<Vec<i64>>> = vec![None; a];
        z[coset[0]] = Some(vec![0; d]);
        let mut queue = std::collections::VecDeque::from([0usize]);
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let mut seen_rel = HashSet::new();
        while let Some(c) = queue.pop_front() {
            let zc = z[c].clone().expect("visited");
            for (i, &g) in gens.iter().enumerate() {
                let t = coset[self.mul(reps[c], g)];
                let mut w = zc.clone();
                w[i] += 1;
                match &z[t] {
                    None => {
                        z[t] = Some(w);
                        queue.push_back(t);
                    }
                    Some(zt) => {
                        let r: Vec<i64> = w.iter().zip(zt).map(|(p, q)| p - q).collect();
                        if r.iter().any(|&v| v != 0) && seen_rel.insert(r.clone()) {
                            relations.push(r);
                        }
                    }
                }
            }
        }
        let rel = Matrix::from_rows(&relations).expect("rectangular");
        let snf = smith_normal_form(&rel);
        let mut diag = snf.invariants.clone();
        diag.resize(d, 0);
        assert!(diag.iter().all(|&x| x > 0), "abelianization must be finite");
        let kept: Vec<usize> = (0..d).filter(|&i| diag[i] > 1).collect();
        let invariants: Vec<u64> = kept.iter().map(|&i| diag[i] as u64).collect();
        let coset_coords: Vec<Vec<u64>> = z
            .iter()
            .map(|zc| {
                let zc = zc.as_ref().expect("all cosets reached");
                kept.iter()
                    .map(|&j| {
                        let y: i64 = (0..d).map(|i| zc[i] * snf.v[(i, j)]).sum();
                        y.rem_euclid(diag[j]) as u64
                    })
                    .collect()
            })
            .collect();
        Abelianization {
            invariants,
            coords: (0..n).map(|x| coset_coords[coset[x]].clone()).collect(),
        }
    }

    /// Least number of generators.
    ///
    /// For p-groups this is the rank of the Frattini quotient, cross-checked by
    /// subgroup search when `n <= 64`; otherwise a search capped at `cap`.
    pub fn minimal_generator_count(&self, cap: usize) -> Result<usize> {
        if self.order() == 1 {
            return Ok(0);
        }
        if let Some(p) = self.prime_power() {
            let mut gens: Vec<usize> = self.derived().to_vec();
            gens.extend((0..self.order()).map(|x| self.pow(x, p)));
            let frattini = self.closure(&gens);
            let mut q = self.order() / frattini.len();
            let mut d = 0;
            while q > 1 {
                q /= p as usize;
                d += 1;
            }
            if self.order() <= 64 && d <= cap {
                let searched = self.generator_search(cap)?;
                assert_eq!(searched, d, "Frattini rank disagrees with search");
            }
            return Ok(d);
        }
        self.generator_search(cap)
    }

    /// Level-by-level search over subgroups generated by `k` elements.
    fn generator_search(&self, cap: usize) -> Result<usize> {
        let n = self.order();
        let cyclic_reps = self.cyclic_subgroup_generators();
        let mut level: HashSet<Vec<usize>> = HashSet::from([vec![0]]);
        for k in 1..=cap {
            let mut next = HashSet::new();
            for h in &level {
                for &x in &cyclic_reps {
                    if h.binary_search(&x).is_ok() {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.push(x);
                    let s = self.closure(&gens);
                    if s.len() == n {
                        return Ok(k);
                    }
                    next.insert(s);
                }
            }
            level = next;
        }
        Err(Error::GeneratorSearchCap(cap))
    }

    /// One generator (the least index) for each cyclic subgroup.
    pub fn cyclic_subgroup_generators(&self) -> Vec<usize> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for x in 1..self.order() {
            if seen.insert(self.closure(&[x])) {
                out.push(x);
            }
        }
        out
    }

    /// A generating set of minimal size, found by search.
    pub fn minimal_generating_set(&self, cap: usize) -> Result<Vec<usize>> {
        let n = self.order();
        if n == 1 {
            return Ok(Vec::new());
        }
        let reps = self.cyclic_subgroup_generators();
        let mut level: Vec<(Vec<usize>, Vec<usize>)> = vec![(vec![0], Vec::new())];
        let mut seen = HashSet::new();
        for _ in 1..=cap {
            let mut next = Vec::new();
            for (h, gens) in &level {
                for &x in &reps {
                    if h.binary_search(&x).is_ok() {
                        continue;
                    }
                    let mut g2 = gens.clone();
                    g2.push(x);
                    let s = self.closure(&g2);
                    if s.len() == n {
                        return Ok(g2);
                    }
                    if seen.insert(s.clone()) {
                        next.push((s, g2));
                    }
                }
            }
            level = next;
        }
        Err(Error::GeneratorSearchCap(cap))
    }

    /// All maximal abelian subgroups, as sorted element lists.
    ///
    /// These are exactly the maximal cliques of the commuting graph; the
    /// search runs Bron-Kerbosch with pivoting on the non-central elements.
    pub fn maximal_abelian_subgroups(&self, cap: usize) -> Result<Vec<Vec<usize>>> {
        let n = self.order();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "abelian subgroup search",
                limit: cap,
                got: n,
            });
        }
        let center = self.center().to_vec();
        let mut is_central = vec![false; n];
        for &z in &center {
            is_central[z] = true;
        }
        let words = n.div_ceil(64);
        let mut adj = vec![vec![0u64; words]; n];
        for x in 0..n {
            for y in 0..n {
                if x != y && !is_central[x] && !is_central[y] && self.commute(x, y) {
                    adj[x][y / 64] |= 1 << (y % 64);
                }
            }
        }
        let mut p = vec![0u64; words];
        for x in (0..n).filter(|&x| !is_central[x]) {
            p[x / 64] |= 1 << (x % 64);
        }
        let mut cliques = Vec::new();
        bron_kerbosch(&adj, Vec::new(), p, vec![0u64; words], &mut cliques);
        let mut out: Vec<Vec<usize>> = cliques
            .into_iter()
            .map(|mut c| {
                c.extend(&center);
                c.sort_unstable();
                c
            })
            .collect();
        if out.is_empty() {
            out.push(center);
        }
        for a in &out {
            debug_assert_eq!(&self.closure(a), a);
        }
        out.sort();
        Ok(out)
    }
}

fn bron_kerbosch(
    adj: &[Vec<u64>],
    r: Vec<usize>,
    mut p: Vec<u64>,
    mut x: Vec<u64>,
    out: &mut Vec<Vec<usize>>,
) {
    let is_empty = |s: &[u64]| s.iter().all(|&w| w == 0);
    if is_empty(&p) && is_empty(&x) {
        if !r.is_empty() {
            out.push(r);
        }
        return;
    }
    let members = |s: &[u64]| -> Vec<usize> {
        let mut v = Vec::new();
        for (i, &w) in s.iter().enumerate() {
            let mut w = w;
            while w != 0 {
                let b = w.trailing_zeros() as usize;
                v.push(i * 64 + b);
                w &= w - 1;
            }
        }
        v
    };
    let union: Vec<u64> = p.iter().zip(&x).map(|(a, b)| a | b).collect();
    let pivot = members(&union)
        .into_iter()
        .max_by_key(|&u| {
            p.iter()
                .zip(&adj[u])
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
        })
        .expect("nonempty");
    let candidates: Vec<usize> = members(
        &p.iter()
            .zip(&adj[pivot])
            .map(|(a, b)| a & !b)
            .collect::<Vec<_>>(),
    );
    for v in candidates {
        let mut r2 = r.clone();
        r2.push(v);
        let p2 = p.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        let x2 = x.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        bron_kerbosch(adj, r2, p2, x2, out);
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}

//! Subgroups, quotients and normal subgroups with cyclic quotient.

use std::collections::BTreeSet;

use super::FiniteGroup;
use crate::error::{Error, Result};

impl FiniteGroup {
    /// Whether the sorted element list is closed under multiplication.
    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let mut mark = vec![false; self.order()];
        for &x in elements {
            mark[x] = true;
        }
        mark[0]
            && elements
                .iter()
                .all(|&x| elements.iter().all(|&y| mark[self.mul(x, y)]))
    }

    pub fn is_normal(&self, sub: &[usize]) -> bool {
        let mut mark = vec![false; self.order()];
        for &x in sub {
            mark[x] = true;
        }
        sub.iter()
            .all(|&x| self.generators().iter().all(|&g| mark[self.conj(x, g)]))
    }

    pub fn is_central(&self, sub: &[usize]) -> bool {
        sub.iter()
            .all(|&x| self.generators().iter().all(|&g| self.commute(x, g)))
    }

    /// The subgroup as a group in its own right, with the embedding into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(elements) {
            return Err(Error::SubgroupRejected("not closed under multiplication".into()));
        }
        let mut local = vec![usize::MAX; self.order()];
        for (i, &x) in elements.iter().enumerate() {
            local[x] = i;
        }
        let gens = small_generating_set(self, elements);
        let gens_local: Vec<usize> = gens.iter().map(|&g| local[g]).collect();
        let name = format!("subgroup of {}", self.name());
        let id_local = local[0];
        let sub = FiniteGroup::from_raw(
            name,
            elements.len(),
            id_local,
            |a, b| local[self.mul(elements[a], elements[b])],
            &gens_local,
        )?;
        // recover the embedding through the BFS numbering
        let mut embed = vec![0usize; elements.len()];
        let mut reached = vec![false; elements.len()];
        reached[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (i, &g) in sub.generators().iter().enumerate() {
                let y = sub.mul(x, g);
                if !reached[y] {
                    reached[y] = true;
                    embed[y] = self.mul(embed[x], gens[i]);
                    queue.push_back(y);
                }
            }
        }
        Ok((sub, embed))
    }

    /// The quotient by a normal subgroup, with the projection of each element.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::SubgroupRejected("not a normal subgroup".into()));
        }
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset[x] == usize::MAX {
                for &k in normal {
                    coset[self.mul(x, k)] = reps.len();
                }
                reps.push(x);
            }
        }
        let gens: Vec<usize> = self.generators().iter().map(|&g| coset[g]).collect();
        let q = FiniteGroup::from_raw(
            format!("{} / N", self.name()),
            reps.len(),
            0,
            |a, b| coset[self.mul(reps[a], reps[b])],
            &gens,
        )?;
        // map raw coset labels to the BFS numbering of q
        let mut label = vec![usize::MAX; reps.len()];
        label[0] = 0;
        let mut queue = std::collections::VecDeque::from([(0usize, 0usize)]);
        while let Some((raw, idx)) = queue.pop_front() {
            for (i, &g) in gens.iter().enumerate() {
                let raw2 = coset[self.mul(reps[raw], reps[g])];
                if label[raw2] == usize::MAX {
                    label[raw2] = q.mul(idx, q.generators()[i]);
                    queue.push_back((raw2, label[raw2]));
                }
            }
        }
        let projection = (0..n).map(|x| label[coset[x]]).collect();
        Ok((q, projection))
    }

    /// Kernels of all surjections onto cyclic groups, i.e. the normal subgroups
    /// with cyclic quotient, including the whole group.
    pub fn normal_subgroups_with_cyclic_quotient(&self) -> Vec<Vec<usize>> {
        let ab = self.abelianization();
        let n = self.order();
        let exp = ab.invariants.last().copied().unwrap_or(1);
        let mut found = BTreeSet::new();
        found.insert((0..n).collect::<Vec<_>>());
        for k in 2..=exp {
            if exp % k != 0 {
                continue;
            }
            // homomorphisms are given by images t_i with a_i t_i = 0 mod k
            let choices: Vec<Vec<u64>> = ab
                .invariants
                .iter()
                .map(|&a| (0..k).filter(|t| (a * t) % k == 0).collect())
                .collect();
            let mut t = vec![0usize; choices.len()];
            loop {
                let images: Vec<u64> = t.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
                let g = images
                    .iter()
                    .fold(k, |acc, &x| crate::linalg::zmod::gcd(acc, x));
                if g == 1 {
                    let kernel: Vec<usize> = (0..n)
                        .filter(|&x| {
                            ab.coords[x]
                                .iter()
                                .zip(&images)
                                .map(|(c, m)| c * m)
                                .sum::<u64>()
                                % k
                                == 0
                        })
                        .collect();
                    found.insert(kernel);
                }
                // odometer
                let mut i = 0;
                while i < t.len() {
                    t[i] += 1;
                    if t[i] < choices[i].len() {
                        break;
                    }
                    t[i] = 0;
                    i += 1;
                }
                if i == t.len() {
                    break;
                }
            }
        }
        found.into_iter().collect()
    }

    /// Index of a subgroup.
    pub fn index_of(&self, sub: &[usize]) -> usize {
        self.order() / sub.len()
    }
}

/// Greedy generating set: repeatedly add the least element outside the span.
fn small_generating_set(g: &FiniteGroup, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = vec![0usize];
    // prefer elements of large order to keep the list short
    let mut by_order: Vec<usize> = elements.to_vec();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    while span.len() < elements.len() {
        let x = *by_order
            .iter()
            .find(|x| span.binary_search(x).is_err())
            .expect("elements outside span");
        gens.push(x);
        span = g.closure(&gens);
    }
    gens
}

//! The linear system of normalized 2-cocycles in edge coordinates.
//!
//! Fix a BFS spanning tree of the Cayley graph of `Q` over its generators
//! `s_1..s_d`. A normalized cocycle is determined by its values on the edges
//! `w(g, s_j)`, `g != 1`: every other value follows from
//! `w(x, ps) = w(x, p) + w(xp, s) - x.w(p, s)` along the tree. The cocycle
//! identity then only needs checking on triples `(x, y, s)` whose edge
//! `(y, s)` is not a tree edge, since the identity with a generator in the
//! last slot propagates to every last argument.

use std::sync::OnceLock;

use super::{Cocycle, GModule};
use crate::error::{Error, Result};
use crate::linalg::{kernel_mod, kernel_of_basis, zmod::Zmod, ModuleBasis};

/// Size limits for the cocycle system.
#[derive(Clone, Copy, Debug)]
pub struct CohomologyCaps {
    pub max_order: usize,
    pub max_dim: usize,
}

impl Default for CohomologyCaps {
    fn default() -> Self {
        CohomologyCaps {
            max_order: 128,
            max_dim: 8,
        }
    }
}

/// Edge-coordinate description of `Z^2(Q, N)` over `Z/M`.
#[derive(Debug)]
pub struct CocycleSystem {
    module: GModule,
    ring: Zmod,
    gens: Vec<usize>,
    k: usize,
    unknowns: usize,
    // CSR storage of the forms w(x, y)_c as sparse rows over the unknowns
    offsets: Vec<usize>,
    entries: Vec<(u32, u64)>,
    constraints: OnceLock<ModuleBasis>,
    cocycles: OnceLock<ModuleBasis>,
    cp_cocycles: OnceLock<ModuleBasis>,
    coboundaries: OnceLock<ModuleBasis>,
}

impl CocycleSystem {
    pub fn new(module: &GModule) -> Result<Self> {
        Self::with_caps(module, CohomologyCaps::default())
    }

    pub fn with_caps(module: &GModule, caps: CohomologyCaps) -> Result<Self> {
        let q = module.group();
        let n = q.order();
        if n > caps.max_order {
            return Err(Error::CapExceeded {
                what: "cohomology group order",
                limit: caps.max_order,
                got: n,
            });
        }
        if module.dim() > caps.max_dim {
            return Err(Error::CapExceeded {
                what: "module dimension",
                limit: caps.max_dim,
                got: module.dim(),
            });
        }
        let mut gens: Vec<usize> = Vec::new();
        for &g in q.generators() {
            if g != 0 && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let k = module.dim();
        let m = module.lcm_modulus().max(2);
        let ring = Zmod::new(m);
        let unknowns = n.saturating_sub(1) * gens.len() * k;
        let mut sys = CocycleSystem {
            module: module.clone(),
            ring,
            gens,
            k,
            unknowns,
            offsets: Vec::new(),
            entries: Vec::new(),
            constraints: OnceLock::new(),
            cocycles: OnceLock::new(),
            cp_cocycles: OnceLock::new(),
            coboundaries: OnceLock::new(),
        };
        sys.build_forms();
        Ok(sys)
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    /// Working modulus `M`.
    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    /// Number of edge unknowns, the ambient dimension of all bases.
    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    /// Column of the unknown `w(g, s_j)_c`.
    #[inline]
    pub fn edge(&self, g: usize, j: usize, c: usize) -> usize {
        debug_assert!(g != 0);
        ((g - 1) * self.gens.len() + j) * self.k + c
    }

    fn n(&self) -> usize {
        self.module.group().order()
    }

    /// BFS tree over right multiplication: `(parent, generator index)` per element.
    fn tree(&self) -> (Vec<usize>, Vec<(usize, usize)>) {
        let q = self.module.group();
        let n = q.order();
        let mut parent = vec![(usize::MAX, usize::MAX); n];
        let mut order = vec![0usize];
        parent[0] = (0, usize::MAX);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for (j, &s) in self.gens.iter().enumerate() {
                let y = q.mul(x, s);
                if parent[y].0 == usize::MAX {
                    parent[y] = (x, j);
                    order.push(y);
                }
            }
        }
        (order, parent)
    }

    fn build_forms(&mut self) {
        let q = self.module.group().clone();
        let n = q.order();
        let (k, u) = (self.k, self.unknowns);
        let ring = self.ring;
        let (order, parent) = self.tree();
        self.offsets = vec![0; n * n * k + 1];
        let mut rows: Vec<Vec<(u32, u64)>> = vec![Vec::new(); n * n * k];
        let mut dense = vec![0u64; n * k * u.max(1)];
        for x in 1..n {
            dense.iter_mut().for_each(|v| *v = 0);
            let ax = self.module.embedded_matrix(x);
            for &y in &order[1..] {
                let (p, j) = parent[y];
                let (dst, src) = (y * k * u, p * k * u);
                for c in 0..k {
                    let (d0, s0) = (dst + c * u, src + c * u);
                    for t in 0..u {
                        dense[d0 + t] = dense[s0 + t];
                    }
                    let xp = q.mul(x, p);
                    if xp != 0 {
                        let e = self.edge(xp, j, c);
                        dense[d0 + e] = ring.add(dense[d0 + e], 1);
                    }
                    if p != 0 {
                        for c2 in 0..k {
                            let a = ax[c * k + c2];
                            if a != 0 {
                                let e = self.edge(p, j, c2);
                                dense[d0 + e] = ring.sub(dense[d0 + e], a);
                            }
                        }
                    }
                }
            }
            for y in 1..n {
                for c in 0..k {
                    let base = (y * k + c) * u;
                    rows[(x * n + y) * k + c] = (0..u)
                        .filter(|&t| dense[base + t] != 0)
                        .map(|t| (t as u32, dense[base + t]))
                        .collect();
                }
            }
        }
        for (i, r) in rows.into_iter().enumerate() {
            self.entries.extend(r);
            self.offsets[i + 1] = self.entries.len();
        }
    }

    /// Sparse linear form giving `w(x, y)_c` in embedded coordinates.
    #[inline]
    fn form(&self, x: usize, y: usize, c: usize) -> &[(u32, u64)] {
        let i = (x * self.n() + y) * self.k + c;
        &self.entries[self.offsets[i]..self.offsets[i + 1]]
    }

    fn add_form(&self, row: &mut [u64], x: usize, y: usize, c: usize, coeff: u64) {
        for &(t, a) in self.form(x, y, c) {
            let t = t as usize;
            row[t] = self.ring.add(row[t], self.ring.mul(a, coeff));
        }
    }

    /// Howell basis of the constraint rows; `Z^2` is its kernel.
    fn constraints(&self) -> &ModuleBasis {
        self.constraints.get_or_init(|| {
            let q = self.module.group();
            let n = q.order();
            let (k, u) = (self.k, self.unknowns);
            let ring = self.ring;
            let m = ring.modulus();
            let (_, parent) = self.tree();
            let mut basis = ModuleBasis::new(m, u);
            let mut row = vec![0u64; u];
            for x in 1..n {
                let ax = self.module.embedded_matrix(x);
                for y in 1..n {
                    let xy = q.mul(x, y);
                    for (j, &s) in self.gens.iter().enumerate() {
                        let z = q.mul(y, s);
                        if z != 0 && parent[z] == (y, j) {
                            continue;
                        }
                        for c in 0..k {
                            row.iter_mut().for_each(|v| *v = 0);
                            for c2 in 0..k {
                                let a = ax[c * k + c2];
                                if a != 0 {
                                    let e = self.edge(y, j, c2);
                                    row[e] = ring.add(row[e], a);
                                }
                            }
                            if xy != 0 {
                                let e = self.edge(xy, j, c);
                                row[e] = ring.sub(row[e], 1);
                            }
                            self.add_form(&mut row, x, z, c, 1);
                            self.add_form(&mut row, x, y, c, ring.neg(1));
                            if row.iter().any(|&v| v != 0) {
                                basis.insert(&row);
                            }
                        }
                    }
                }
            }
            // values in coordinate c must lie in the image of Z/d_c
            for (c, &d) in self.module.moduli().iter().enumerate() {
                if d != m {
                    for g in 1..n {
                        for j in 0..self.gens.len() {
                            row.iter_mut().for_each(|v| *v = 0);
                            row[self.edge(g, j, c)] = d;
                            basis.insert(&row);
                        }
                    }
                }
            }
            basis.canonicalize();
            basis
        })
    }

    /// `Z^2(Q, N)` in edge coordinates.
    pub fn cocycles(&self) -> &ModuleBasis {
        self.cocycles.get_or_init(|| kernel_of_basis(self.constraints()))
    }

    /// `Z^2_CP(Q, N)`: cocycles whose antisymmetrization on every commuting
    /// pair `(x, y)` lies in `Im(x - 1) + Im(y - 1)`.
    pub fn cp_cocycles(&self) -> &ModuleBasis {
        self.cp_cocycles.get_or_init(|| {
            let q = self.module.group();
            let n = q.order();
            let (k, u) = (self.k, self.unknowns);
            let ring = self.ring;
            let m = ring.modulus();
            let mut basis = self.constraints().clone();
            let mut cache: std::collections::HashMap<Vec<Vec<u64>>, Vec<Vec<u64>>> = Default::default();
            let mut row = vec![0u64; u];
            for x in 1..n {
                for y in x + 1..n {
                    if !q.commute(x, y) {
                        continue;
                    }
                    let span = self.derivation_span(x, y);
                    let ann = cache
                        .entry(span.clone())
                        .or_insert_with(|| kernel_mod(&span, k, m).rows().cloned().collect())
                        .clone();
                    for f in &ann {
                        row.iter_mut().for_each(|v| *v = 0);
                        for c in 0..k {
                            if f[c] != 0 {
                                self.add_form(&mut row, x, y, c, f[c]);
                                self.add_form(&mut row, y, x, c, ring.neg(f[c]));
                            }
                        }
                        if row.iter().any(|&v| v != 0) {
                            basis.insert(&row);
                        }
                    }
                }
            }
            basis.canonicalize();
            kernel_of_basis(&basis)
        })
    }

    /// Generators of `Im(x - 1) + Im(y - 1)` in embedded coordinates.
    fn derivation_span(&self, x: usize, y: usize) -> Vec<Vec<u64>> {
        let k = self.k;
        let ring = self.ring;
        let mut gens = Vec::new();
        for g in [x, y] {
            let a = self.module.embedded_matrix(g);
            for j in 0..k {
                let col: Vec<u64> = (0..k)
                    .map(|i| ring.sub(a[i * k + j], u64::from(i == j)))
                    .collect();
                // scale to the embedded image of the j-th generator of N
                let mut col = col;
                ring.scale(&mut col, ring.modulus() / self.module.moduli()[j]);
                if col.iter().any(|&v| v != 0) {
                    gens.push(col);
                }
            }
        }
        let basis = ModuleBasis::from_rows(ring.modulus(), k, &gens);
        basis.rows().cloned().collect()
    }

    /// `B^2(Q, N)`: coboundaries of normalized 1-cochains.
    pub fn coboundaries(&self) -> &ModuleBasis {
        self.coboundaries.get_or_init(|| {
            let q = self.module.group();
            let n = q.order();
            let (k, u) = (self.k, self.unknowns);
            let m = self.ring.modulus();
            let mut basis = ModuleBasis::new(m, u);
            let moduli = self.module.moduli().to_vec();
            for h in 1..n {
                for c in 0..k {
                    let mut e = vec![0u64; k];
                    e[c] = 1;
                    let phi = |g: usize| if g == h { e.clone() } else { vec![0; k] };
                    let row = self.edge_vector(|g, s| {
                        let a = self.module.act(g, &phi(s));
                        let b = phi(q.mul(g, s));
                        let c = phi(g);
                        a.iter()
                            .zip(&b)
                            .zip(&c)
                            .zip(&moduli)
                            .map(|(((a, b), c), d)| (a + c + d - b) % d)
                            .collect()
                    });
                    basis.insert(&row);
                }
            }
            basis.canonicalize();
            basis
        })
    }

    /// Embedded edge vector of the cochain `(g, s) -> f(g, s)` given in module coordinates.
    fn edge_vector(&self, f: impl Fn(usize, usize) -> Vec<u64>) -> Vec<u64> {
        let n = self.n();
        let m = self.ring.modulus();
        let moduli = self.module.moduli();
        let mut out = vec![0u64; self.unknowns];
        for g in 1..n {
            for (j, &s) in self.gens.iter().enumerate() {
                let v = f(g, s);
                for c in 0..self.k {
                    out[self.edge(g, j, c)] = (v[c] % moduli[c]) * (m / moduli[c]);
                }
            }
        }
        out
    }

    /// Edge coordinates of a full cochain table.
    pub fn restrict(&self, w: &Cocycle) -> Vec<u64> {
        self.edge_vector(|g, s| w.value(g, s).to_vec())
    }

    /// The full table of the cochain with edge coordinates `v`.
    pub fn evaluate(&self, v: &[u64]) -> Cocycle {
        let n = self.n();
        let m = self.ring.modulus();
        let moduli = self.module.moduli().to_vec();
        let k = self.k;
        Cocycle::from_fn(n, &moduli, |x, y| {
            (0..k)
                .map(|c| {
                    let s = self
                        .form(x, y, c)
                        .iter()
                        .fold(0u64, |acc, &(t, a)| self.ring.add(acc, self.ring.mul(a, v[t as usize])));
                    s / (m / moduli[c])
                })
                .collect()
        })
    }

    /// Whether the cocycle with edge coordinates `v` satisfies the CP condition.
    pub fn is_cp(&self, v: &[u64]) -> bool {
        self.cp_cocycles().contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn abelian(inv: &[u64]) -> crate::group::FiniteGroup {
        build_group(&GroupSpec::Abelian { invariants: inv.to_vec() }).unwrap()
    }

    #[test]
    fn evaluation_extends_edge_values() {
        let q = abelian(&[2, 2]);
        let sys = CocycleSystem::new(&GModule::trivial(&q, &[2]).unwrap()).unwrap();
        for v in sys.cocycles().rows() {
            let w = sys.evaluate(v);
            w.check(sys.module()).unwrap();
            assert_eq!(sys.restrict(&w), *v);
        }
    }

    #[test]
    fn zero_module_has_no_unknowns() {
        let q = abelian(&[3]);
        let sys = CocycleSystem::new(&GModule::trivial(&q, &[]).unwrap()).unwrap();
        assert_eq!(sys.unknowns(), 0);
        assert_eq!(sys.cocycles().order_u128(), Some(1));
    }

    #[test]
    fn order_cap() {
        let q = abelian(&[3, 3, 3, 3, 3]);
        let err = CocycleSystem::new(&GModule::trivial(&q, &[3]).unwrap()).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }
}

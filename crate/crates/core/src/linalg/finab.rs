//! Finite abelian groups: invariant factors and quotient coordinates.

use std::fmt;

use super::howell::ModuleBasis;
use super::zmod::{gcd, gcdex, lcm, Zmod};
use crate::error::{Error, Result};

/// Diagonalization of a relation matrix over Z/m, tracking column transforms.
///
/// Rows of `rel` span a submodule `L` of `(Z/m)^s`; on return `L * V` is spanned
/// by `diag[i] * e_i`, with `diag[i]` a divisor of `m` (`m` meaning no relation)
/// and `diag[0] | diag[1] | ...`.
pub(crate) struct ModSmith {
    pub diag: Vec<u64>,
    pub v: Vec<Vec<u64>>,
    pub v_inv: Vec<Vec<u64>>,
}

pub(crate) fn smith_mod(rel: &[Vec<u64>], s: usize, m: u64) -> ModSmith {
    let ring = Zmod::new(m);
    let mut d: Vec<Vec<u64>> = rel
        .iter()
        .map(|r| r.iter().map(|&x| ring.reduce(x)).collect())
        .filter(|r: &Vec<u64>| r.iter().any(|&x| x != 0))
        .collect();
    let mut v: Vec<Vec<u64>> = (0..s).map(|i| unit(s, i)).collect();
    let mut v_inv = v.clone();

    // column ops act on d and v (columns) and on v_inv (rows, inverse op)
    let col_combine = |d: &mut Vec<Vec<u64>>,
                       v: &mut Vec<Vec<u64>>,
                       v_inv: &mut Vec<Vec<u64>>,
                       i: usize,
                       j: usize,
                       t: [[u64; 2]; 2],
                       t_inv: [[u64; 2]; 2]| {
        // new col_i = t00 col_i + t10 col_j ; new col_j = t01 col_i + t11 col_j
        for row in d.iter_mut().chain(v.iter_mut()) {
            let (a, b) = (row[i], row[j]);
            row[i] = ring.add(ring.mul(t[0][0], a), ring.mul(t[1][0], b));
            row[j] = ring.add(ring.mul(t[0][1], a), ring.mul(t[1][1], b));
        }
        // rows of v_inv transform by t_inv on the left
        let (ri, rj) = (v_inv[i].clone(), v_inv[j].clone());
        for c in 0..s {
            v_inv[i][c] = ring.add(ring.mul(t_inv[0][0], ri[c]), ring.mul(t_inv[0][1], rj[c]));
            v_inv[j][c] = ring.add(ring.mul(t_inv[1][0], ri[c]), ring.mul(t_inv[1][1], rj[c]));
        }
    };

    let mut t = 0;
    while t < s && t < d.len() {
        // pivot: entry with the largest ideal (smallest gcd with m)
        let mut best: Option<(usize, usize, u64)> = None;
        for (r, row) in d.iter().enumerate().skip(t) {
            for (c, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let g = ring.ideal(x);
                    if best.map_or(true, |(_, _, bg)| g < bg) {
                        best = Some((r, c, g));
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        d.swap(t, pr);
        if pc != t {
            for row in d.iter_mut().chain(v.iter_mut()) {
                row.swap(t, pc);
            }
            v_inv.swap(t, pc);
        }
        loop {
            // normalize pivot to gcd(pivot, m) by a unit on the row
            let (u, _) = ring.unit_normalizer(d[t][t]);
            ring.scale(&mut d[t], u);
            // clear column t with row operations
            for r in t + 1..d.len() {
                let (a, b) = (d[t][t], d[r][t]);
                if b == 0 {
                    continue;
                }
                if b % a == 0 {
                    let q = ring.neg(b / a);
                    let pivot_row = d[t].clone();
                    ring.axpy(&mut d[r], q, &pivot_row);
                } else {
                    let (g, x, y) = gcdex(a, b);
                    let (x, y) = (ring.from_i128(x), ring.from_i128(y));
                    let (rt, rr) = (d[t].clone(), d[r].clone());
                    let mut nt = vec![0; s];
                    ring.axpy(&mut nt, x, &rt);
                    ring.axpy(&mut nt, y, &rr);
                    let mut nr = vec![0; s];
                    ring.axpy(&mut nr, ring.neg(ring.reduce(b / g)), &rt);
                    ring.axpy(&mut nr, a / g, &rr);
                    d[t] = nt;
                    d[r] = nr;
                }
            }
            let (u, _) = ring.unit_normalizer(d[t][t]);
            ring.scale(&mut d[t], u);
            // clear row t with column operations
            let mut dirty = false;
            for c in t + 1..s {
                let (a, b) = (d[t][t], d[t][c]);
                if b == 0 {
                    continue;
                }
                if b % a == 0 {
                    let q = ring.neg(b / a);
                    col_combine(
                        &mut d,
                        &mut v,
                        &mut v_inv,
                        t,
                        c,
                        [[1, q], [0, 1]],
                        [[1, ring.neg(q)], [0, 1]],
                    );
                } else {
                    let (g, x, y) = gcdex(a, b);
                    let (x, y) = (ring.from_i128(x), ring.from_i128(y));
                    let (ag, bg) = (ring.reduce(a / g), ring.reduce(b / g));
                    col_combine(
                        &mut d,
                        &mut v,
                        &mut v_inv,
                        t,
                        c,
                        [[x, ring.neg(bg)], [y, ag]],
                        [[ag, bg], [ring.neg(y), x]],
                    );
                    dirty = true;
                }
            }
            if !dirty || (t + 1..d.len()).all(|r| d[r][t] == 0) {
                if (t + 1..d.len()).all(|r| d[r][t] == 0) {
                    break;
                }
            }
        }
        t += 1;
    }

    let mut diag: Vec<u64> = (0..s)
        .map(|i| if i < d.len() { ring.ideal(d[i][i]) } else { m })
        .collect();
    // unit-normalize diagonal entries through column scaling
    for i in 0..s.min(d.len()) {
        let x = d[i][i];
        if x == 0 {
            continue;
        }
        let (u, _) = ring.unit_normalizer(x);
        if u != 1 {
            let ui = ring.inverse(u).expect("unit");
            for row in v.iter_mut() {
                row[i] = ring.mul(row[i], u);
            }
            ring.scale(&mut v_inv[i], ui);
        }
    }
    // enforce the divisibility chain with the gcd/lcm 2x2 move
    for i in 0..s {
        for j in i + 1..s {
            let (a, b) = (diag[i], diag[j]);
            if b % a == 0 {
                continue;
            }
            let (g, x, y) = gcdex(a, b);
            let l = lcm(a, b);
            // col_i += col_j ; (row ops) ; col_j -= (y*b/g) col_i
            col_combine(
                &mut d,
                &mut v,
                &mut v_inv,
                i,
                j,
                [[1, 0], [1, 1]],
                [[1, 0], [ring.neg(1), 1]],
            );
            let k = ring.from_i128(-(y * b as i128 / g as i128));
            col_combine(
                &mut d,
                &mut v,
                &mut v_inv,
                i,
                j,
                [[1, k], [0, 1]],
                [[1, ring.neg(k)], [0, 1]],
            );
            let _ = x;
            diag[i] = g;
            diag[j] = if l >= m { m } else { gcd(l, m) };
        }
    }
    ModSmith { diag, v, v_inv }
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

/// Coordinates of a quotient `span / sub` inside an ambient `(Z/m)^n`.
#[derive(Clone, Debug)]
pub struct Coordinates {
    span: ModuleBasis,
    generators: Vec<Vec<u64>>,
    gen_cols: Vec<usize>,
    v: Vec<Vec<u64>>,
    v_inv: Vec<Vec<u64>>,
    kept: Vec<usize>,
}

/// Finite abelian group given by its invariant factors `d_1 | d_2 | ...`, each `> 1`.
///
/// When produced by [`quotient_invariants`] it also carries coordinate maps
/// between the cyclic decomposition and vectors of the ambient module.
#[derive(Clone, Debug)]
pub struct FinAbGroup {
    invariants: Vec<u64>,
    coords: Option<Coordinates>,
}

impl PartialEq for FinAbGroup {
    fn eq(&self, other: &Self) -> bool {
        self.invariants == other.invariants
    }
}

impl Eq for FinAbGroup {}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariants.is_empty() {
            write!(f, "0")
        } else {
            let parts: Vec<String> = self.invariants.iter().map(|d| format!("C{d}")).collect();
            write!(f, "{}", parts.join(" x "))
        }
    }
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            invariants: Vec::new(),
            coords: None,
        }
    }

    /// Group isomorphic to the direct sum of cyclic groups of the given orders,
    /// brought to invariant-factor form.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        FinAbGroup {
            invariants: invariant_factors(orders),
            coords: None,
        }
    }

    pub fn invariants(&self) -> &[u64] {
        &self.invariants
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    pub fn exponent(&self) -> u64 {
        self.invariants.last().copied().unwrap_or(1)
    }

    /// Minimal number of generators.
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariants.is_empty()
    }

    pub fn has_coordinates(&self) -> bool {
        self.coords.is_some()
    }

    /// Coordinates of `v` (which must lie in the span) in the cyclic decomposition.
    pub fn project(&self, v: &[u64]) -> Result<Vec<u64>> {
        let c = self.coords.as_ref().ok_or(Error::NotASubmodule)?;
        let ring = c.span.ring();
        let (res, coeffs) = c.span.reduce_with_coeffs(v);
        if res.iter().any(|&x| x != 0) {
            return Err(Error::NotASubmodule);
        }
        let s = c.generators.len();
        let mut z = vec![0u64; s];
        for (col, q) in coeffs {
            let idx = c.gen_cols.binary_search(&col).expect("pivot column");
            z[idx] = ring.add(z[idx], q);
        }
        Ok(c
            .kept
            .iter()
            .zip(&self.invariants)
            .map(|(&k, &d)| {
                let y = (0..s).fold(0, |acc, i| ring.add(acc, ring.mul(z[i], c.v[i][k])));
                y % d
            })
            .collect())
    }

    /// Representative vector of the coset with the given coordinates.
    pub fn lift(&self, coords: &[u64]) -> Vec<u64> {
        let c = self.coords.as_ref().expect("group without coordinates");
        let ring = c.span.ring();
        let s = c.generators.len();
        let mut z = vec![0u64; s];
        for (&k, &y) in c.kept.iter().zip(coords) {
            ring.axpy(&mut z, ring.reduce(y), &c.v_inv[k]);
        }
        let mut out = vec![0u64; c.span.ncols()];
        for (i, g) in c.generators.iter().enumerate() {
            ring.axpy(&mut out, z[i], g);
        }
        out
    }

    /// Representatives of the standard generators of the cyclic decomposition.
    pub fn generator_lifts(&self) -> Vec<Vec<u64>> {
        (0..self.invariants.len())
            .map(|i| {
                let mut e = vec![0; self.invariants.len()];
                e[i] = 1;
                self.lift(&e)
            })
            .collect()
    }

    /// All elements as coordinate tuples, in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariants {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..d).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Adds two coordinate tuples.
    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.invariants)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    /// Order of the subgroup generated by the given coordinate tuples.
    pub fn subgroup_order(&self, gens: &[Vec<u64>]) -> u128 {
        self.subgroup_elements(gens).len() as u128
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn subgroup_elements(&self, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let zero = vec![0u64; self.invariants.len()];
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(zero.clone());
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// All subgroups, each as its sorted element list, found by closing under
    /// cyclic extensions.
    pub fn subgroups(&self) -> Vec<Vec<Vec<u64>>> {
        let elements = self.elements();
        let mut found = std::collections::BTreeSet::new();
        let trivial = self.subgroup_elements(&[]);
        found.insert(trivial.clone());
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for x in &elements {
                if h.binary_search(x).is_ok() {
                    continue;
                }
                let mut gens: Vec<Vec<u64>> = h.clone();
                gens.push(x.clone());
                let k = self.subgroup_elements(&gens);
                if found.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        found.into_iter().collect()
    }
}

/// Invariant-factor chain of a direct sum of cyclic groups of the given orders.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    // primary decomposition, then recombine largest prime powers
    let mut primes: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &o in orders {
        let mut n = o;
        let mut p = 2;
        while n > 1 {
            if p * p > n {
                primes.entry(n).or_default().push(n);
                break;
            }
            if n % p == 0 {
                let mut q = 1;
                while n % p == 0 {
                    n /= p;
                    q *= p;
                }
                primes.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = primes.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in primes.values_mut() {
        powers.sort_unstable();
        let offset = len - powers.len();
        for (i, q) in powers.iter().enumerate() {
            out[offset + i] *= q;
        }
    }
    out.retain(|&d| d > 1);
    out
}

/// Invariant factors of `span / sub` with coordinate maps.
pub fn quotient_invariants(span: &ModuleBasis, sub: &ModuleBasis) -> Result<FinAbGroup> {
    if span.modulus() != sub.modulus() || span.ncols() != sub.ncols() {
        return Err(Error::NotASubmodule);
    }
    if !span.contains_module(sub) {
        return Err(Error::NotASubmodule);
    }
    let m = span.modulus();
    let ring = span.ring();
    let pivots = span.pivots();
    let gen_cols: Vec<usize> = pivots.iter().map(|&(c, _)| c).collect();
    let generators: Vec<Vec<u64>> = span.rows().cloned().collect();
    let s = generators.len();
    let to_z = |coeffs: Vec<(usize, u64)>| {
        let mut z = vec![0u64; s];
        for (col, q) in coeffs {
            let idx = gen_cols.binary_search(&col).expect("pivot column");
            z[idx] = ring.add(z[idx], q);
        }
        z
    };
    let mut relations = Vec::new();
    for (i, (_, p)) in pivots.iter().enumerate() {
        let ann = m / p;
        if ann == m {
            continue;
        }
        let mut a = generators[i].clone();
        ring.scale(&mut a, ann);
        let (res, coeffs) = span.reduce_with_coeffs(&a);
        debug_assert!(res.iter().all(|&x| x == 0));
        let mut z = to_z(coeffs);
        z[i] = ring.sub(z[i], ann);
        relations.push(z);
    }
    for t in sub.rows() {
        let (res, coeffs) = span.reduce_with_coeffs(t);
        debug_assert!(res.iter().all(|&x| x == 0));
        relations.push(to_z(coeffs));
    }
    let sm = smith_mod(&relations, s, m);
    let kept: Vec<usize> = (0..s).filter(|&i| sm.diag[i] > 1).collect();
    let invariants: Vec<u64> = kept.iter().map(|&i| sm.diag[i]).collect();
    debug_assert!(invariants.windows(2).all(|w| w[1] % w[0] == 0));
    Ok(FinAbGroup {
        invariants,
        coords: Some(Coordinates {
            span: span.clone(),
            generators,
            gen_cols,
            v: sm.v,
            v_inv: sm.v_inv,
            kept,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use proptest::prelude::*;

    #[test]
    fn z4_over_two_torsion() {
        let span = ModuleBasis::full(4, 1);
        let sub = ModuleBasis::from_rows(4, 1, [vec![2]]);
        let q = quotient_invariants(&span, &sub).unwrap();
        assert_eq!(q.invariants(), &[2]);
    }

    #[test]
    fn quotient_by_itself_is_trivial() {
        let span = ModuleBasis::from_rows(6, 2, [vec![2, 0], vec![0, 3]]);
        let q = quotient_invariants(&span, &span).unwrap();
        assert!(q.is_trivial());
    }

    #[test]
    fn z6_squared_over_two_three() {
        let span = ModuleBasis::full(6, 2);
        let sub = ModuleBasis::from_rows(6, 2, [vec![2, 0], vec![0, 3]]);
        let q = quotient_invariants(&span, &sub).unwrap();
        // 36 / 6 elements; cosets are (Z/2) x (Z/3)
        assert_eq!(q.invariants(), &[6]);
        assert_eq!(BigUint::from(q.order()) * sub.order(), span.order());
    }

    #[test]
    fn non_submodule_rejected() {
        let span = ModuleBasis::from_rows(4, 1, [vec![2]]);
        let sub = ModuleBasis::full(4, 1);
        assert_eq!(quotient_invariants(&span, &sub).unwrap_err(), Error::NotASubmodule);
    }

    #[test]
    fn invariant_factor_normalization() {
        assert_eq!(invariant_factors(&[2, 3]), vec![6]);
        assert_eq!(invariant_factors(&[4, 2, 3, 9]), vec![6, 36]);
        assert_eq!(invariant_factors(&[1, 1]), Vec::<u64>::new());
    }

    #[test]
    fn subgroups_of_klein_four() {
        let g = FinAbGroup::from_cyclic_orders(&[2, 2]);
        assert_eq!(g.subgroups().len(), 5);
        let c4 = FinAbGroup::from_cyclic_orders(&[4]);
        assert_eq!(c4.subgroups().len(), 3);
    }

    proptest! {
        #[test]
        fn coordinates_round_trip(
            m in prop::sample::select(vec![4u64, 6, 8, 12]),
            a in proptest::collection::vec(proptest::collection::vec(0u64..24, 3), 1..4),
            b in proptest::collection::vec(proptest::collection::vec(0u64..24, 3), 0..3),
        ) {
            let span = ModuleBasis::from_rows(m, 3, a.iter().chain(&b));
            let sub = ModuleBasis::from_rows(m, 3, &b);
            let q = quotient_invariants(&span, &sub).unwrap();
            prop_assert_eq!(BigUint::from(q.order()) * sub.order(), span.order());
            for e in q.elements() {
                let v = q.lift(&e);
                prop_assert!(span.contains(&v));
                prop_assert_eq!(q.project(&v).unwrap(), e.clone());
                // adding an element of sub does not change the coset
                for t in sub.rows() {
                    let mut w = v.clone();
                    span.ring().axpy(&mut w, 1, t);
                    prop_assert_eq!(q.project(&w).unwrap(), e.clone());
                }
            }
        }
    }
}

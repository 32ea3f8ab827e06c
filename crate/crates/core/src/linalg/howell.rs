//! Howell normal form: canonical, membership-decidable bases of submodules of (Z/m)^n.

use num_bigint::BigUint;

use super::zmod::Zmod;

/// Submodule of `(Z/m)^n` held as a Howell basis.
///
/// At most one row per pivot column; each pivot divides `m`; the basis is
/// closed under annihilators, so every element of the span whose first `j`
/// coordinates vanish is a combination of rows with pivot `>= j`.
#[derive(Clone, Debug)]
pub struct ModuleBasis {
    ring: Zmod,
    ncols: usize,
    by_col: Vec<Option<Vec<u64>>>,
}

impl ModuleBasis {
    /// The zero submodule.
    pub fn new(m: u64, ncols: usize) -> Self {
        ModuleBasis {
            ring: Zmod::new(m),
            ncols,
            by_col: vec![None; ncols],
        }
    }

    /// Howell basis of the row span of `rows` over Z/m.
    pub fn from_rows<I, R>(m: u64, ncols: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[u64]>,
    {
        let mut b = Self::new(m, ncols);
        for r in rows {
            b.insert(r.as_ref());
        }
        b.canonicalize();
        b
    }

    /// The whole ambient module.
    pub fn full(m: u64, ncols: usize) -> Self {
        let mut b = Self::new(m, ncols);
        for c in 0..ncols {
            let mut row = vec![0; ncols];
            row[c] = 1;
            b.by_col[c] = Some(row);
        }
        b
    }

    pub fn modulus(&self) -> u64 {
        self.ring.modulus()
    }

    pub fn ring(&self) -> Zmod {
        self.ring
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Basis rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &Vec<u64>> {
        self.by_col.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.by_col.iter().filter(|r| r.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Pivot columns with their pivot values.
    pub fn pivots(&self) -> Vec<(usize, u64)> {
        self.by_col
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.as_ref().map(|r| (c, r[c])))
            .collect()
    }

    /// Rank profile: the pivot value `gcd`-normalized per column, `0` where no pivot.
    pub fn rank_profile(&self) -> Vec<u64> {
        self.by_col
            .iter()
            .enumerate()
            .map(|(c, r)| r.as_ref().map_or(0, |r| r[c]))
            .collect()
    }

    /// Number of elements of the span.
    pub fn order(&self) -> BigUint {
        let m = self.modulus();
        self.pivots()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, (_, p)| acc * (m / p))
    }

    /// The order as a machine integer, `None` on overflow.
    pub fn order_u128(&self) -> Option<u128> {
        let m = self.modulus() as u128;
        self.pivots()
            .into_iter()
            .try_fold(1u128, |acc, (_, p)| acc.checked_mul(m / p as u128))
    }

    /// Adds a vector to the span, maintaining the Howell property.
    pub fn insert(&mut self, v: &[u64]) {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let ring = self.ring;
        let mut stack: Vec<Vec<u64>> = vec![v.iter().map(|&x| ring.reduce(x)).collect()];
        while let Some(mut v) = stack.pop() {
            let mut j = 0;
            loop {
                while j < self.ncols && v[j] == 0 {
                    j += 1;
                }
                if j == self.ncols {
                    break;
                }
                match self.by_col[j].take() {
                    None => {
                        let (u, g) = ring.unit_normalizer(v[j]);
                        ring.scale(&mut v, u);
                        debug_assert_eq!(v[j], g);
                        let ann = ring.modulus() / g;
                        if ann != ring.modulus() {
                            let mut a = v.clone();
                            ring.scale(&mut a, ann);
                            if a.iter().any(|&x| x != 0) {
                                stack.push(a);
                            }
                        }
                        self.by_col[j] = Some(v);
                        break;
                    }
                    Some(p) => {
                        let a = p[j];
                        let b = v[j];
                        if b % a == 0 {
                            ring.axpy(&mut v, ring.neg(b / a), &p);
                            self.by_col[j] = Some(p);
                        } else {
                            let (g, s, t) = super::zmod::gcdex(a, b);
                            let (s, t) = (ring.from_i128(s), ring.from_i128(t));
                            let mut np = vec![0; self.ncols];
                            ring.axpy(&mut np, s, &p);
                            ring.axpy(&mut np, t, &v);
                            let mut nv = vec![0; self.ncols];
                            ring.axpy(&mut nv, ring.neg(ring.reduce(b / g)), &p);
                            ring.axpy(&mut nv, a / g, &v);
                            debug_assert_eq!(np[j], g);
                            debug_assert_eq!(nv[j], 0);
                            let ann = ring.modulus() / g;
                            let mut an = np.clone();
                            ring.scale(&mut an, ann);
                            if an.iter().any(|&x| x != 0) {
                                stack.push(an);
                            }
                            self.by_col[j] = Some(np);
                            v = nv;
                        }
                        j += 1;
                    }
                }
            }
        }
    }

    /// Reduces entries above each pivot into `[0, pivot)`, giving the canonical form.
    pub fn canonicalize(&mut self) {
        let ring = self.ring;
        let cols: Vec<usize> = (0..self.ncols).filter(|&c| self.by_col[c].is_some()).collect();
        for (k, &j) in cols.iter().enumerate() {
            let pivot_row = self.by_col[j].clone().expect("pivot row");
            let a = pivot_row[j];
            for &i in &cols[..k] {
                let row = self.by_col[i].as_mut().expect("pivot row");
                let q = row[j] / a;
                if q != 0 {
                    ring.axpy(row, ring.neg(q), &pivot_row);
                }
            }
        }
    }

    /// Reduces `v` against the basis; returns the residue and the coefficient of
    /// each basis row (indexed by pivot column) used. The residue is zero iff `v`
    /// lies in the span.
    pub fn reduce_with_coeffs(&self, v: &[u64]) -> (Vec<u64>, Vec<(usize, u64)>) {
        let ring = self.ring;
        let mut v: Vec<u64> = v.iter().map(|&x| ring.reduce(x)).collect();
        let mut coeffs = Vec::new();
        for j in 0..self.ncols {
            if v[j] == 0 {
                continue;
            }
            match &self.by_col[j] {
                Some(p) if v[j] % p[j] == 0 => {
                    let q = v[j] / p[j];
                    ring.axpy(&mut v, ring.neg(q), p);
                    coeffs.push((j, q));
                }
                _ => return (v, coeffs),
            }
        }
        (v, coeffs)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce_with_coeffs(v).0.iter().all(|&x| x == 0)
    }

    /// Whether every basis row of `other` lies in this span.
    pub fn contains_module(&self, other: &ModuleBasis) -> bool {
        other.rows().all(|r| self.contains(r))
    }

    /// Span of the union.
    pub fn join(&self, other: &ModuleBasis) -> ModuleBasis {
        let mut b = self.clone();
        for r in other.rows() {
            b.insert(r);
        }
        b.canonicalize();
        b
    }

    pub fn same_span(&self, other: &ModuleBasis) -> bool {
        self.contains_module(other) && other.contains_module(self)
    }
}

impl PartialEq for ModuleBasis {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.ncols == other.ncols && self.by_col == other.by_col
    }
}

impl Eq for ModuleBasis {}

/// Howell basis of the row span of a matrix over Z/m.
pub fn howell_form(rows: &[Vec<u64>], ncols: usize, m: u64) -> ModuleBasis {
    ModuleBasis::from_rows(m, ncols, rows)
}

/// Basis of `{x in (Z/m)^n : A x = 0}` for `A` given by its rows.
pub fn kernel_mod(rows: &[Vec<u64>], ncols: usize, m: u64) -> ModuleBasis {
    let reduced = ModuleBasis::from_rows(m, ncols, rows);
    kernel_of_basis(&reduced)
}

/// Kernel of `x -> H x` for a Howell basis `H`.
pub fn kernel_of_basis(h: &ModuleBasis) -> ModuleBasis {
    let m = h.modulus();
    let n = h.ncols();
    let hrows: Vec<&Vec<u64>> = h.rows().collect();
    let k = hrows.len();
    let mut aug = ModuleBasis::new(m, k + n);
    for c in 0..n {
        let mut row = vec![0u64; k + n];
        for (i, r) in hrows.iter().enumerate() {
            row[i] = r[c];
        }
        row[k + c] = 1;
        aug.insert(&row);
    }
    let kernel_rows = aug
        .by_col
        .iter()
        .enumerate()
        .filter(|(c, _)| *c >= k)
        .filter_map(|(_, r)| r.as_ref().map(|r| r[k..].to_vec()));
    ModuleBasis::from_rows(m, n, kernel_rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn enumerate_span(rows: &[Vec<u64>], m: u64, n: usize) -> std::collections::HashSet<Vec<u64>> {
        let ring = Zmod::new(m);
        let mut span = std::collections::HashSet::new();
        span.insert(vec![0; n]);
        let mut frontier = vec![vec![0; n]];
        while let Some(v) = frontier.pop() {
            for r in rows {
                let mut w = v.clone();
                ring.axpy(&mut w, 1, r);
                if span.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        span
    }

    #[test]
    fn two_in_z4() {
        let b = howell_form(&[vec![2]], 1, 4);
        assert!(b.contains(&[2]));
        assert!(b.contains(&[0]));
        assert!(!b.contains(&[1]));
        assert_eq!(b.order(), BigUint::from(2u32));
    }

    #[test]
    fn identity_over_z6() {
        let b = howell_form(&[vec![1, 0], vec![0, 1]], 2, 6);
        assert_eq!(b.rank_profile(), vec![1, 1]);
        assert_eq!(b.order(), BigUint::from(36u32));
    }

    #[test]
    fn two_zero_zero_three_over_z6() {
        let b = howell_form(&[vec![2, 0], vec![0, 3]], 2, 6);
        // enumerated: {0,2,4} x {0,3}
        let span = enumerate_span(&[vec![2, 0], vec![0, 3]], 6, 2);
        assert_eq!(span.len(), 6);
        assert_eq!(b.order(), BigUint::from(6u32));
        assert!(b.contains(&[2, 3]));
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(b.contains(&[x, y]), span.contains(&vec![x, y]));
            }
        }
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_mod(&[vec![2]], 1, 4);
        assert_eq!(k.order(), BigUint::from(2u32));
        assert!(k.contains(&[2]));
        let k = kernel_mod(&[vec![1, 0], vec![0, 1]], 2, 7);
        assert!(k.is_empty());
        let k = kernel_mod(&[vec![1, 1], vec![1, 1]], 2, 2);
        assert_eq!(k.order(), BigUint::from(2u32));
        assert!(k.contains(&[1, 1]));
        assert!(!k.contains(&[1, 0]));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = howell_form(&[vec![2, 4, 1], vec![0, 3, 3]], 3, 12);
        let b = howell_form(&[vec![2, 1, 4], vec![2, 4, 1], vec![2, 1, 4]], 3, 12);
        let c = howell_form(&[vec![0, 3, 3], vec![2, 4, 1]], 3, 12);
        assert_eq!(a, c);
        assert_eq!(a.same_span(&b), a == b);
    }

    proptest! {
        #[test]
        fn membership_agrees_with_enumeration(
            m in 2u64..13,
            raw in proptest::collection::vec(proptest::collection::vec(0u64..64, 3), 1..4)
        ) {
            let n = 3;
            let rows: Vec<Vec<u64>> = raw.iter().map(|r| r.iter().map(|x| x % m).collect()).collect();
            let b = howell_form(&rows, n, m);
            let span = enumerate_span(&rows, m, n);
            prop_assert_eq!(b.order(), BigUint::from(span.len()));
            for r in b.rows() {
                prop_assert!(span.contains(r));
            }
            for x in 0..m { for y in 0..m { for z in 0..m {
                let v = vec![x, y, z];
                prop_assert_eq!(b.contains(&v), span.contains(&v));
            }}}
        }

        #[test]
        fn kernel_vectors_are_annihilated(
            m in 2u64..17,
            raw in proptest::collection::vec(proptest::collection::vec(0u64..64, 4), 1..5)
        ) {
            let rows: Vec<Vec<u64>> = raw.iter().map(|r| r.iter().map(|x| x % m).collect()).collect();
            let k = kernel_mod(&rows, 4, m);
            let ring = Zmod::new(m);
            for x in k.rows() {
                for r in &rows {
                    let dot = r.iter().zip(x).fold(0, |acc, (a, b)| ring.add(acc, ring.mul(*a, *b)));
                    prop_assert_eq!(dot, 0);
                }
            }
            // |ker| * |image| = m^n
            let image = ModuleBasis::from_rows(m, rows.len(), (0..4).map(|c| rows.iter().map(|r| r[c]).collect::<Vec<_>>()));
            prop_assert_eq!(k.order() * image.order(), BigUint::from(m).pow(4));
        }
    }
}

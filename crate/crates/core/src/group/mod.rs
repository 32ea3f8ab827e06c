//! Finite groups given by complete multiplication tables.

mod spec;
mod structure;
mod subgroup;

use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub use spec::{
    build_group, build_group_with, direct_product, from_presentation, parse_word, semidirect, BuildCaps,
    GroupSpec,
};
pub use structure::{Abelianization, StructureReport};

/// Table size above which the full associativity scan is skipped.
pub const ASSOCIATIVITY_SCAN_LIMIT: usize = 256;

/// A finite group with identity at index 0.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    report: OnceLock<StructureReport>,
    abelianization: OnceLock<Abelianization>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.n)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for FiniteGroup {
    /// Equality of tables and generator lists, not isomorphism.
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.generators == other.generators
    }
}

impl FiniteGroup {
    /// Builds a group from an abstract multiplication, renumbering elements in
    /// BFS order from the identity over right multiplication by `gens`.
    pub fn from_raw(
        name: impl Into<String>,
        n: usize,
        identity: usize,
        mul: impl Fn(usize, usize) -> usize,
        gens: &[usize],
    ) -> Result<Self> {
        let mut index = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        index[identity] = 0;
        order.push(identity);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &g in gens {
                let y = mul(x, g);
                if index[y] == u32::MAX {
                    index[y] = order.len() as u32;
                    order.push(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::MalformedSpec(format!(
                "generators reach {} of {} elements",
                order.len(),
                n
            )));
        }
        let mut table = vec![0u32; n * n];
        for (i, &x) in order.iter().enumerate() {
            for (j, &y) in order.iter().enumerate() {
                table[i * n + j] = index[mul(x, y)];
            }
        }
        let generators = gens.iter().map(|&g| index[g] as usize).collect();
        Self::from_table(name, table, generators)
    }

    /// Wraps a table with identity at index 0, keeping its numbering.
    pub fn from_table(name: impl Into<String>, table: Vec<u32>, generators: Vec<usize>) -> Result<Self> {
        let n = (table.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != table.len() {
            return Err(Error::MalformedSpec("table is not square".into()));
        }
        if (0..n).any(|x| table[x] as usize != x || table[x * n] as usize != x) {
            return Err(Error::MalformedSpec("index 0 is not the identity".into()));
        }
        if table.iter().any(|&v| v as usize >= n) {
            return Err(Error::MalformedSpec("table entry out of range".into()));
        }
        let mut inv = vec![u32::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| table[x * n + y] == 0) {
                Some(y) => inv[x] = y as u32,
                None => return Err(Error::MalformedSpec(format!("element {x} has no inverse"))),
            }
        }
        let g = FiniteGroup {
            name: name.into(),
            n,
            table,
            inv,
            generators,
            report: OnceLock::new(),
            abelianization: OnceLock::new(),
        };
        if g.generators.iter().any(|&x| x >= n) || g.closure(&g.generators).len() != n {
            return Err(Error::MalformedSpec("generators do not generate the group".into()));
        }
        Ok(g)
    }

    /// Full consistency check: Latin square rows, inverses and, for
    /// `n <= ASSOCIATIVITY_SCAN_LIMIT`, associativity on all triples.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let mut seen = vec![false; n];
        for x in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for y in 0..n {
                let v = self.mul(x, y);
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::MalformedSpec(format!("row {x} repeats {v}")));
                }
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(Error::MalformedSpec(format!("bad inverse for {x}")));
            }
        }
        if n <= ASSOCIATIVITY_SCAN_LIMIT {
            for x in 0..n {
                for y in 0..n {
                    let xy = self.mul(x, y);
                    for z in 0..n {
                        if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                            return Err(Error::MalformedSpec(format!(
                                "associativity fails at ({x}, {y}, {z})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Same table with another generator list.
    pub fn with_generators(&self, generators: Vec<usize>) -> Result<Self> {
        Self::from_table(self.name.clone(), self.table.clone(), generators)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    /// The table as nested rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|y| self.mul(x, y)).collect())
            .collect()
    }

    pub fn pow(&self, x: usize, mut k: u64) -> usize {
        let (mut acc, mut base) = (0, x);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// `[x, y] = x^-1 y^-1 x y`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        let a = self.mul(self.inv(x), self.inv(y));
        self.mul(a, self.mul(x, y))
    }

    /// `x^g = g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv(g), self.mul(x, g))
    }

    #[inline]
    pub fn commute(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.commute(a, b)))
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut mark = vec![false; self.n];
        mark[0] = true;
        let mut out = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mark[y] {
                    mark[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Whether the elements are a p-group for some prime, returning that prime.
    pub fn prime_power(&self) -> Option<u64> {
        let n = self.n as u64;
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

    pub fn exponent(&self) -> u64 {
        (0..self.n).fold(1u64, |acc, x| {
            crate::linalg::zmod::lcm(acc, self.element_order(x) as u64)
        })
    }
}

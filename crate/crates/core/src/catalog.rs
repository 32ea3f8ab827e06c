//! Built-in catalog of named groups with the facts they are expected to satisfy.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{build_group, FiniteGroup, GroupSpec};

/// Where an expected fact comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Stated in the literature for this group or its family.
    Literature,
    /// Follows from the structure of the group (abelian, cyclic Sylow, ...).
    Structural,
}

/// Facts a catalog entry must reproduce.
#[derive(Clone, Debug, Serialize)]
pub struct ExpectedFacts {
    pub order: usize,
    /// Commuting probability as `(numerator, denominator)` in lowest terms.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cp: Option<(u64, u64)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b0: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<Provenance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub citation: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: GroupSpec,
    pub expected: ExpectedFacts,
}

impl CatalogEntry {
    fn new(name: impl Into<String>, order: usize, spec: GroupSpec) -> Self {
        CatalogEntry {
            name: name.into(),
            spec,
            expected: ExpectedFacts {
                order,
                cp: None,
                b0: None,
                provenance: None,
                citation: None,
            },
        }
    }

    fn b0(mut self, b0: Vec<u64>, provenance: Provenance) -> Self {
        self.expected.b0 = Some(b0);
        self.expected.provenance = Some(provenance);
        self
    }

    /// Builds the group and checks the expected order; a mismatch is a data error.
    pub fn build(&self) -> Result<FiniteGroup> {
        let g = build_group(&self.spec)?.with_name(self.name.clone());
        if g.order() != self.expected.order {
            return Err(Error::Data(format!(
                "catalog entry {} has order {}, expected {}",
                self.name,
                g.order(),
                self.expected.order
            )));
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.expected.order
    }
}

fn perm(gens: &[&[usize]]) -> GroupSpec {
    GroupSpec::Permutation {
        generators: gens.iter().map(|g| g.to_vec()).collect(),
    }
}

fn pres(generators: usize, relators: &[&str]) -> GroupSpec {
    GroupSpec::Presentation {
        generators,
        relators: relators.iter().map(|r| r.to_string()).collect(),
    }
}

fn product(factors: &[GroupSpec]) -> GroupSpec {
    GroupSpec::DirectProduct {
        factors: factors.to_vec(),
    }
}

fn power(letter: char, k: usize) -> String {
    std::iter::repeat(letter).take(k).collect()
}

fn dihedral(n: usize) -> GroupSpec {
    let rotation: Vec<usize> = (1..=n).map(|i| i % n + 1).collect();
    let reflection: Vec<usize> = (1..=n).map(|i| if i == 1 { 1 } else { n + 2 - i }).collect();
    GroupSpec::Permutation {
        generators: vec![rotation, reflection],
    }
}

/// `<a, b | a^2n, b^2 = a^n, a^b = a^-1>` (quaternion for n a power of 2).
fn dicyclic(n: usize) -> GroupSpec {
    GroupSpec::Presentation {
        generators: 2,
        relators: vec![power('a', 2 * n), power('a', n) + "BB", "Baba".into()],
    }
}

/// `<a, b | a^n, b^2, a^b = a^k>`.
fn metacyclic(n: usize, k: usize) -> GroupSpec {
    GroupSpec::Presentation {
        generators: 2,
        relators: vec![power('a', n), "bb".into(), "bab".to_string() + &power('A', k)],
    }
}

/// Unitriangular 3x3 matrices over F_p: `[a, b] = c` central, exponent p.
fn heisenberg(p: usize) -> GroupSpec {
    GroupSpec::Presentation {
        generators: 3,
        relators: vec![
            power('a', p),
            power('b', p),
            power('c', p),
            "ABabC".into(),
            "ACac".into(),
            "BCbc".into(),
        ],
    }
}

/// Unitriangular 4x4 matrices over F_2 by elementary generators
/// `a, b, c, d, e, f = x12, x23, x34, x13, x24, x14`.
fn ut4_2() -> GroupSpec {
    pres(
        6,
        &[
            "aa", "bb", "cc", "dd", "ee", "ff", "ABabD", "BCbcE", "AEaeF", "DCdcF", "ACac", "ADad", "AFaf",
            "BDbd", "BEbe", "BFbf", "CEce", "CFcf", "DEde", "DFdf", "EFef",
        ],
    )
}

/// Invariant factor lists `d1 | d2 | ...` with product at most `max`.
fn abelian_types(max: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        // factors are built from the largest down, each dividing the previous
        let last = prefix.last().copied();
        for d in 2..=max / product {
            if let Some(l) = last {
                if l % d != 0 {
                    continue;
                }
            }
            prefix.push(d);
            let mut chain = prefix.clone();
            chain.reverse();
            out.push(chain);
            extend(prefix, product * d, max, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut out);
    out.sort_by_key(|t| (t.iter().product::<u64>(), t.len(), t.clone()));
    out
}

fn abelian_name(t: &[u64]) -> String {
    t.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x")
}

const PHI16_CITATION: &str = "Isoclinism family Phi16 of James, Newman and O'Brien, \
The groups of order 128, J. Algebra 129 (1990); smallest order with nontrivial \
Bogomolov multiplier per Chu, Hu, Kang and Prokhorov, Noether's problem for groups \
of order 64, J. Algebra 320 (2008). Presentations obtained by exhaustive search \
over central extensions of the groups of order 32 and reduced by Tietze moves.";

/// Two non-isomorphic stem groups of order 64 with Bogomolov multiplier of
/// order 2, each presented on a minimal generating set.

pub const PHI16_A: &[&str] = &["babbbA", "aabbCC", "acaC", "bcbC"];
pub const PHI16_B: &[&str] = &["aaabaB", "cabcBA", "caca", "cbcb"];
pub const PHI16_GENERATORS: usize = 3;

fn phi16(name: &str, relators: &[&str]) -> CatalogEntry {
    let mut e = CatalogEntry::new(name, 64, pres(PHI16_GENERATORS, relators)).b0(vec![2], Provenance::Literature);
    e.expected.cp = Some((1, 4));
    e.expected.citation = Some(PHI16_CITATION.into());
    e
}

/// The full catalog in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    use Provenance::Structural;
    let mut out = Vec::new();
    for t in abelian_types(32) {
        let n = t.iter().product::<u64>() as usize;
        out.push(CatalogEntry::new(abelian_name(&t), n, GroupSpec::Abelian { invariants: t }).b0(vec![], Structural));
    }
    for n in 3..=8 {
        out.push(CatalogEntry::new(format!("D{n}"), 2 * n, dihedral(n)));
    }
    out.push(CatalogEntry::new("D16", 32, dihedral(16)));
    out.push(CatalogEntry::new("D32", 64, dihedral(32)));
    out.push(CatalogEntry::new("Q8", 8, dicyclic(2)));
    out.push(CatalogEntry::new("Q16", 16, dicyclic(4)));
    out.push(CatalogEntry::new("Q32", 32, dicyclic(8)));
    out.push(CatalogEntry::new("Dic3", 12, dicyclic(3)));
    out.push(CatalogEntry::new("Dic5", 20, dicyclic(5)));
    out.push(CatalogEntry::new("SD16", 16, metacyclic(8, 3)));
    out.push(CatalogEntry::new("SD32", 32, metacyclic(16, 7)));
    out.push(CatalogEntry::new("M16", 16, metacyclic(8, 5)));
    out.push(CatalogEntry::new("M32", 32, metacyclic(16, 9)));
    out.push(CatalogEntry::new("C4:C4", 16, pres(2, &["aaaa", "bbbb", "Baba"])));
    out.push(CatalogEntry::new("M27", 27, pres(2, &["aaaaaaaaa", "bbb", "baBAAAA"])));
    out.push(CatalogEntry::new("S3", 6, perm(&[&[2, 3, 1], &[2, 1, 3]])));
    out.push(CatalogEntry::new("S4", 24, perm(&[&[2, 3, 4, 1], &[2, 1, 3, 4]])));
    out.push(CatalogEntry::new("A4", 12, perm(&[&[2, 3, 1, 4], &[2, 1, 4, 3]])));
    out.push(CatalogEntry::new("A5", 60, perm(&[&[2, 3, 4, 5, 1], &[2, 3, 1, 4, 5]])).b0(vec![], Structural));
    out.push(CatalogEntry::new("SL(2,3)", 24, pres(2, &["aaaBBB", "ababAAA"])));
    out.push(CatalogEntry::new("C4wrC2", 32, perm(&[&[2, 3, 4, 1, 5, 6, 7, 8], &[5, 6, 7, 8, 1, 2, 3, 4]])));
    out.push(CatalogEntry::new("UT3(2)", 8, heisenberg(2)));
    out.push(CatalogEntry::new("UT3(3)", 27, heisenberg(3)));
    out.push(CatalogEntry::new("UT4(2)", 64, ut4_2()).b0(vec![], Provenance::Literature));
    let d4 = dihedral(4);
    let q8 = dicyclic(2);
    let s3 = perm(&[&[2, 3, 1], &[2, 1, 3]]);
    let a4 = perm(&[&[2, 3, 1, 4], &[2, 1, 4, 3]]);
    let s4 = perm(&[&[2, 3, 4, 1], &[2, 1, 3, 4]]);
    let c = |n: u64| GroupSpec::Abelian { invariants: vec![n] };
    for (name, order, factors) in [
        ("D4xC2", 16, vec![d4.clone(), c(2)]),
        ("Q8xC2", 16, vec![q8.clone(), c(2)]),
        ("D4xC4", 32, vec![d4.clone(), c(4)]),
        ("Q8xC4", 32, vec![q8.clone(), c(4)]),
        ("D4xC2xC2", 32, vec![d4.clone(), c(2), c(2)]),
        ("Q8xC2xC2", 32, vec![q8.clone(), c(2), c(2)]),
        ("D4xC3", 24, vec![d4.clone(), c(3)]),
        ("Q8xC3", 24, vec![q8.clone(), c(3)]),
        ("S3xC3", 18, vec![s3.clone(), c(3)]),
        ("S3xS3", 36, vec![s3.clone(), s3.clone()]),
        ("A4xC2", 24, vec![a4, c(2)]),
        ("S4xC2", 48, vec![s4, c(2)]),
        ("D4xD4", 64, vec![d4.clone(), d4.clone()]),
        ("D4xQ8", 64, vec![d4, q8.clone()]),
        ("Q8xQ8", 64, vec![q8.clone(), q8]),
    ] {
        out.push(CatalogEntry::new(name, order, product(&factors)));
    }
    out.push(phi16("Phi16a", PHI16_A));
    out.push(phi16("Phi16b", PHI16_B));
    out
}

/// Looks up an entry by name (case-insensitive).
pub fn lookup(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}

/// Builds a named catalog group.
pub fn catalog_group(name: &str) -> Result<FiniteGroup> {
    lookup(name).ok_or_else(|| Error::UnknownGroup(name.into()))?.build()
}

/// The entries of order at most `max_order`.
pub fn catalog_up_to(max_order: usize) -> Vec<CatalogEntry> {
    catalog().into_iter().filter(|e| e.order() <= max_order).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_types_of_order_eight() {
        let eight: Vec<_> = abelian_types(8).into_iter().filter(|t| t.iter().product::<u64>() == 8).collect();
        assert_eq!(eight, vec![vec![8], vec![2, 4], vec![2, 2, 2]]);
    }

    #[test]
    fn names_are_unique() {
        let names: std::collections::BTreeSet<String> =
            catalog().iter().map(|e| e.name.to_ascii_lowercase()).collect();
        assert_eq!(names.len(), catalog().len());
    }

    #[test]
    fn d4_has_order_eight() {
        assert_eq!(catalog_group("D4").unwrap().order(), 8);
    }
}

//! The split sequence `0 -> Ext(Q^ab, Z/m) -> H^2_CP(Q, Z/m) -> Hom(B0(Q), Z/m) -> 0`
//! and its classical counterpart for `H^2`.

use serde::Serialize;

use super::{Cocycle, CocycleSystem, GModule};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::zmod::{gcd, gcdex};
use crate::linalg::{quotient_invariants, FinAbGroup, ModuleBasis};

/// All pieces of the decomposition at a fixed modulus `m`.
#[derive(Debug)]
pub struct UctDecomposition {
    pub modulus: u64,
    pub h2: FinAbGroup,
    pub h2_cp: FinAbGroup,
    /// Image of `Ext(Q^ab, Z/m)` inflated along `ab x ab`.
    pub ext: FinAbGroup,
    /// `H^2_CP / Ext`, dual to `B0(Q)`.
    pub hom_b0: FinAbGroup,
    /// `H^2 / Ext`, dual to `M(Q)`.
    pub hom_m: FinAbGroup,
    /// `H^2 / H^2_CP`, dual to `M0(Q)`.
    pub hom_m0: FinAbGroup,
    system: CocycleSystem,
    psi_ext: ModuleBasis,
    section: Vec<Vec<u64>>,
}

impl UctDecomposition {
    pub fn system(&self) -> &CocycleSystem {
        &self.system
    }

    /// `B^2` plus the inflated carry cocycles.
    pub fn psi_ext(&self) -> &ModuleBasis {
        &self.psi_ext
    }

    /// Edge vectors `t_i` of CP cocycles with `a_i t_i` a coboundary, whose
    /// classes map onto the standard generators of `hom_b0`. Together they
    /// split the sequence.
    pub fn section_generators(&self) -> &[Vec<u64>] {
        &self.section
    }

    /// CP cocycle (edge coordinates) representing the given element of
    /// `hom_b0` under the homomorphic section.
    pub fn section(&self, coords: &[u64]) -> Vec<u64> {
        let ring = self.system.cocycles().ring();
        let mut out = vec![0u64; self.system.unknowns()];
        for (t, &c) in self.section.iter().zip(coords) {
            ring.axpy(&mut out, ring.reduce(c), t);
        }
        out
    }

    /// Order identities of both split sequences.
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::Data(format!("decomposition order law fails: {what}")));
        if self.h2_cp.order() != self.ext.order() * self.hom_b0.order() {
            return fail("|H2_CP| = |Ext| |Hom(B0)|");
        }
        if self.h2.order() != self.ext.order() * self.hom_m.order() {
            return fail("|H2| = |Ext| |Hom(M)|");
        }
        if self.hom_m.order() != self.hom_b0.order() * self.hom_m0.order() {
            return fail("|Hom(M)| = |Hom(B0)| |Hom(M0)|");
        }
        Ok(())
    }
}

/// Carry cocycle of the `i`-th cyclic factor of `Q^ab`, inflated to `Q`.
fn carry_cocycle(q: &FiniteGroup, i: usize, m: u64) -> Cocycle {
    let ab = q.abelianization();
    let a = ab.invariants[i];
    Cocycle::from_fn(q.order(), &[m], |x, y| {
        vec![u64::from(ab.coords[x][i] + ab.coords[y][i] >= a)]
    })
}

/// Decomposition at modulus `m`, which must be a multiple of `|Q|` so that
/// every `Hom(-, Z/m)` is isomorphic to its argument.
pub fn uct_decomposition(q: &FiniteGroup, m: u64) -> Result<UctDecomposition> {
    if m < 2 || m % q.order() as u64 != 0 {
        return Err(Error::InvalidModule(format!(
            "modulus {m} is not a multiple of the group order {}",
            q.order()
        )));
    }
    uct_decomposition_mod(q, m)
}

/// Decomposition at an arbitrary modulus `m >= 2`; the `Hom` parts are then
/// duals with values in `Z/m` rather than the multipliers themselves.
pub fn uct_decomposition_mod(q: &FiniteGroup, m: u64) -> Result<UctDecomposition> {
    let module = GModule::trivial(q, &[m])?;
    let system = CocycleSystem::new(&module)?;
    let z2 = system.cocycles().clone();
    let z2_cp = system.cp_cocycles().clone();
    let b2 = system.coboundaries().clone();
    let mut psi_ext = b2.clone();
    for i in 0..q.abelianization().invariants.len() {
        psi_ext.insert(&system.restrict(&carry_cocycle(q, i, m)));
    }
    psi_ext.canonicalize();
    let h2 = quotient_invariants(&z2, &b2)?;
    let h2_cp = quotient_invariants(&z2_cp, &b2)?;
    let ext = quotient_invariants(&psi_ext, &b2)?;
    let hom_b0 = quotient_invariants(&z2_cp, &psi_ext)?;
    let hom_m = quotient_invariants(&z2, &psi_ext)?;
    let hom_m0 = quotient_invariants(&z2, &z2_cp)?;
    let expected_ext: u128 = q
        .abelianization()
        .invariants
        .iter()
        .map(|&a| gcd(a, m) as u128)
        .product();
    if ext.order() != expected_ext {
        return Err(Error::Data(format!(
            "inflated Ext has order {}, expected {expected_ext}",
            ext.order()
        )));
    }
    let section = split(&system, &hom_b0, &ext)?;
    let d = UctDecomposition {
        modulus: m,
        h2,
        h2_cp,
        ext,
        hom_b0,
        hom_m,
        hom_m0,
        system,
        psi_ext,
        section,
    };
    d.check()?;
    Ok(d)
}

/// Adjusts each generator lift of `hom_b0` by an Ext class so that its order
/// in `H^2_CP` equals its order in `hom_b0`.
fn split(system: &CocycleSystem, hom_b0: &FinAbGroup, ext: &FinAbGroup) -> Result<Vec<Vec<u64>>> {
    let ring = system.cocycles().ring();
    let b2 = system.coboundaries();
    let mut out = Vec::new();
    for (g, &a) in hom_b0.generator_lifts().into_iter().zip(hom_b0.invariants()) {
        let mut ag = g.clone();
        ring.scale(&mut ag, a);
        let e = ext.project(&ag)?;
        let mut x = Vec::with_capacity(e.len());
        for (&ej, &bj) in e.iter().zip(ext.invariants()) {
            x.push(solve_linear(a, ej, bj).ok_or_else(|| {
                Error::Data("Ext part is not a direct summand of H2_CP".into())
            })?);
        }
        let lift = ext.lift(&x);
        let mut t = g;
        ring.axpy(&mut t, ring.neg(1), &lift);
        let mut at = t.clone();
        ring.scale(&mut at, a);
        debug_assert!(b2.contains(&at));
        out.push(t);
    }
    Ok(out)
}

/// A solution of `a x = e (mod b)`.
fn solve_linear(a: u64, e: u64, b: u64) -> Option<u64> {
    let g = gcd(a % b, b);
    if e % g != 0 {
        return None;
    }
    let b2 = b / g;
    if b2 == 1 {
        return Some(0);
    }
    let (_, s, _) = gcdex((a / g) % b2, b2);
    let inv = s.rem_euclid(b2 as i128) as u64;
    Some(((e / g) as u128 * inv as u128 % b2 as u128) as u64)
}

/// Where multiplier invariants came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Path {
    Cohomological,
    Oracle,
}

/// Invariant factors of `B0(Q)`, `M(Q)` and `M0(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplierReport {
    pub b0: Vec<u64>,
    pub m: Vec<u64>,
    pub m0: Vec<u64>,
    pub path: Path,
    /// Coefficient modulus for the cohomological path, 0 for the oracle.
    pub modulus: u64,
}

impl MultiplierReport {
    pub fn b0_order(&self) -> u128 {
        self.b0.iter().map(|&d| d as u128).product()
    }

    pub fn m_order(&self) -> u128 {
        self.m.iter().map(|&d| d as u128).product()
    }

    pub fn m0_order(&self) -> u128 {
        self.m0.iter().map(|&d| d as u128).product()
    }

    /// Same invariants, ignoring the path and modulus.
    pub fn same_invariants(&self, other: &MultiplierReport) -> bool {
        self.b0 == other.b0 && self.m == other.m && self.m0 == other.m0
    }
}

/// `B0`, `M` and `M0` from the decomposition at `m = |Q|`.
pub fn multiplier_invariants(q: &FiniteGroup) -> Result<MultiplierReport> {
    let n = q.order() as u64;
    if n == 1 {
        return Ok(MultiplierReport {
            b0: vec![],
            m: vec![],
            m0: vec![],
            path: Path::Cohomological,
            modulus: 1,
        });
    }
    let d = uct_decomposition(q, n)?;
    Ok(MultiplierReport {
        b0: d.hom_b0.invariants().to_vec(),
        m: d.hom_m.invariants().to_vec(),
        m0: d.hom_m0.invariants().to_vec(),
        path: Path::Cohomological,
        modulus: n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_congruences() {
        assert_eq!(solve_linear(2, 2, 4), Some(1));
        assert_eq!(solve_linear(2, 1, 4), None);
        assert_eq!(solve_linear(3, 0, 3), Some(0));
        assert_eq!(solve_linear(3, 2, 4), Some(2));
    }
}

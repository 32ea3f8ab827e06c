//! CP covers: stem central CP extensions with kernel isomorphic to `B0(Q)`.

use serde::Serialize;

use crate::cohomology::{multiplier_invariants, uct_decomposition, uct_decomposition_mod, Cocycle, GModule};
use crate::error::{Error, Result};
use crate::extensions::{check_cp_extension, realize_extension, CentralExtensionData, CpCheck};
use crate::group::FiniteGroup;
use crate::linalg::invariant_factors;

/// Candidates tried per component before giving up.
pub const COVER_SEARCH_BUDGET: usize = 4096;

/// Builds a CP cover of `q`.
///
/// For each invariant factor `b_i` of `B0(Q)` a class in `H^2_CP(Q, Z/b_i)` is
/// chosen whose dual homomorphism `B0(Q) -> Z/b_i` is the `i`-th coordinate of
/// a fixed basis of `Hom(B0(Q), Z/|Q|)`. The components are summed into one
/// cocycle with values in `Z/b_1 + ... + Z/b_r`, realized and verified; on
/// failure the Ext parts of the components are varied.
pub fn cp_cover(q: &FiniteGroup) -> Result<CentralExtensionData> {
    let b0 = multiplier_invariants(q)?.b0;
    if b0.is_empty() {
        let m = GModule::trivial(q, &[])?;
        return realize_extension(&m, &Cocycle::zero(q.order(), &[]));
    }
    let n = q.order() as u64;
    let big = uct_decomposition(q, n)?;
    let mut components = Vec::new();
    for (i, &b) in b0.iter().enumerate() {
        let small = uct_decomposition_mod(q, b)?;
        let mut target = vec![0u64; b0.len()];
        target[i] = 1;
        let scale = n / b;
        let mut chosen = None;
        for coords in small.hom_b0.elements() {
            let v = small.section(&coords);
            let w = small.system().evaluate(&v);
            let lifted = Cocycle::from_fn(q.order(), &[n], |x, y| vec![w.value(x, y)[0] * scale]);
            let image = big.hom_b0.project(&big.system().restrict(&lifted))?;
            if image == target {
                chosen = Some(v);
                break;
            }
        }
        let v = chosen.ok_or_else(|| {
            Error::CoverSearchExhausted(format!("no class of H2_CP(Q, Z/{b}) hits basis vector {i}"))
        })?;
        components.push((small, v));
    }
    let module = GModule::trivial(q, &b0)?;
    let assemble = |adjust: &[Vec<u64>]| -> Cocycle {
        let parts: Vec<Cocycle> = components
            .iter()
            .zip(adjust)
            .map(|((d, v), e)| {
                let mut v = v.clone();
                let ring = d.system().cocycles().ring();
                ring.axpy(&mut v, 1, &d.ext.lift(e));
                d.system().evaluate(&v)
            })
            .collect();
        Cocycle::direct_sum(&parts)
    };
    let zero: Vec<Vec<u64>> = components.iter().map(|(d, _)| vec![0; d.ext.rank()]).collect();
    let ext = realize_extension(&module, &assemble(&zero))?;
    if verify_cover(&ext)?.passed() {
        return Ok(ext);
    }
    // bounded search over Ext adjustments, one component at a time
    for (i, (d, _)) in components.iter().enumerate() {
        for e in d.ext.elements().into_iter().skip(1).take(COVER_SEARCH_BUDGET) {
            let mut adjust = zero.clone();
            adjust[i] = e;
            let ext = realize_extension(&module, &assemble(&adjust))?;
            if verify_cover(&ext)?.passed() {
                return Ok(ext);
            }
        }
    }
    Err(Error::CoverSearchExhausted(format!(
        "no verified cover of {} among Ext adjustments",
        q.name()
    )))
}

/// Checks of the cover properties; failures are reported, not raised.
#[derive(Clone, Debug, Serialize)]
pub struct CoverReport {
    pub order: usize,
    pub base_order: usize,
    pub cp: CpCheck,
    /// Kernel contained in the derived subgroup.
    pub is_stem: bool,
    pub kernel_order: usize,
    pub base_b0: Vec<u64>,
    pub b0: Vec<u64>,
    /// `pi(Z(G)) = Z(Q)`.
    pub center_maps_onto: bool,
    pub center_order: usize,
    pub base_center_order: usize,
    /// Invariants of `Z(G)` and of `Z(Q) x B0(Q)`.
    pub center_invariants: Vec<u64>,
    pub expected_center_invariants: Vec<u64>,
    pub cp_value: String,
    pub base_cp_value: String,
    pub class_count: usize,
    pub base_class_count: usize,
}

impl CoverReport {
    pub fn kernel_matches_b0(&self) -> bool {
        self.kernel_order as u128 == self.base_b0.iter().map(|&d| d as u128).product::<u128>()
    }

    pub fn center_ok(&self) -> bool {
        self.center_maps_onto
            && self.center_order == self.base_center_order * self.kernel_order
            && self.center_invariants == self.expected_center_invariants
    }

    pub fn cp_equal(&self) -> bool {
        self.cp_value == self.base_cp_value
    }

    pub fn class_law(&self) -> bool {
        self.class_count == self.kernel_order * self.base_class_count
    }

    /// Every certificate condition holds.
    pub fn passed(&self) -> bool {
        self.cp.is_cp
            && self.is_stem
            && self.kernel_matches_b0()
            && self.b0.is_empty()
            && self.center_ok()
            && self.cp_equal()
            && self.class_law()
    }

    /// Named checks with outcomes, in a fixed order.
    pub fn checks(&self) -> Vec<(&'static str, bool)> {
        vec![
            ("cp", self.cp.is_cp),
            ("stem", self.is_stem),
            ("kernel order = |B0(Q)|", self.kernel_matches_b0()),
            ("B0(G) trivial", self.b0.is_empty()),
            ("center", self.center_ok()),
            ("cp(G) = cp(Q)", self.cp_equal()),
            ("k(G) = |N| k(Q)", self.class_law()),
        ]
    }
}

/// Evaluates all cover conditions of a realized central extension.
pub fn verify_cover(ext: &CentralExtensionData) -> Result<CoverReport> {
    let g = &ext.group;
    let q = &ext.base;
    let cp = check_cp_extension(ext)?;
    let derived = g.derived();
    let kernel = ext.kernel();
    let is_stem = kernel.iter().all(|x| derived.binary_search(x).is_ok());
    let base_b0 = multiplier_invariants(q)?.b0;
    let b0 = multiplier_invariants(g)?.b0;
    let mut image: Vec<usize> = g.center().iter().map(|&z| ext.project(z)).collect();
    image.sort_unstable();
    image.dedup();
    let center_maps_onto = image == q.center();
    let center_inv = |grp: &FiniteGroup| -> Result<Vec<u64>> {
        let (z, _) = grp.subgroup(grp.center())?;
        Ok(z.abelianization().invariants.clone())
    };
    let mut expected: Vec<u64> = center_inv(q)?;
    expected.extend(&base_b0);
    Ok(CoverReport {
        order: g.order(),
        base_order: q.order(),
        cp,
        is_stem,
        kernel_order: kernel.len(),
        base_b0,
        b0,
        center_maps_onto,
        center_order: g.center().len(),
        base_center_order: q.center().len(),
        center_invariants: center_inv(g)?,
        expected_center_invariants: invariant_factors(&expected),
        cp_value: g.commuting_probability().to_string(),
        base_cp_value: q.commuting_probability().to_string(),
        class_count: g.class_count(),
        base_class_count: q.class_count(),
    })
}

/// Order law for a central CP subgroup `N` of `G`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientCheck {
    pub b0: Vec<u64>,
    pub quotient_b0: Vec<u64>,
    pub n_meet_derived: usize,
    /// `|B0(G/N)| = |B0(G)| |N meet [G,G]|`.
    pub order_law: bool,
    /// `B0(G) = 0` and `N <= [G,G]`, so `G` is a CP cover of `G/N`.
    pub certifies_cover: bool,
}

/// Checks the order law of the exact sequence attached to a central CP subgroup.
pub fn central_cp_quotient_check(g: &FiniteGroup, n_sub: &[usize]) -> Result<QuotientCheck> {
    if !g.is_subgroup(n_sub) {
        return Err(Error::SubgroupRejected("not a subgroup".into()));
    }
    if !g.is_central(n_sub) {
        return Err(Error::SubgroupRejected("N is not central".into()));
    }
    let k = g.commutator_set();
    if n_sub.iter().any(|&x| x != 0 && k.binary_search(&x).is_ok()) {
        return Err(Error::SubgroupRejected("N is not CP: it contains a non-trivial commutator".into()));
    }
    let (quot, _) = g.quotient(n_sub)?;
    let b0 = multiplier_invariants(g)?.b0;
    let quotient_b0 = multiplier_invariants(&quot)?.b0;
    let derived = g.derived();
    let n_meet_derived = n_sub.iter().filter(|x| derived.binary_search(x).is_ok()).count();
    let order = |v: &[u64]| v.iter().map(|&d| d as u128).product::<u128>();
    Ok(QuotientCheck {
        order_law: order(&quotient_b0) == order(&b0) * n_meet_derived as u128,
        certifies_cover: b0.is_empty() && n_meet_derived == n_sub.len(),
        b0,
        quotient_b0,
        n_meet_derived,
    })
}

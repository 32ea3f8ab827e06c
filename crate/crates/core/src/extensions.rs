//! Extensions realized from cocycles and the two tests for commutativity
//! preservation.

use serde::{Deserialize, Serialize};

use crate::cohomology::{Cocycle, GModule, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::group::{build_group, FiniteGroup, GroupSpec};

/// Largest realized extension.
pub const MAX_EXTENSION_ORDER: usize = 512;

/// The group `N x Q` with `(a, x)(b, y) = (a + x.b + w(x, y), xy)`.
///
/// Element `(a, x)` has index `index(a) |Q| + x`, with `index` the mixed-radix
/// position of `a` in [`GModule::elements`]. The kernel is therefore the set of
/// indices divisible by `|Q|` and the projection is the residue mod `|Q|`.
#[derive(Clone, Debug)]
pub struct CentralExtensionData {
    pub base: FiniteGroup,
    pub module: GModule,
    pub cocycle: Cocycle,
    pub group: FiniteGroup,
}

impl CentralExtensionData {
    pub fn kernel_order(&self) -> usize {
        self.group.order() / self.base.order()
    }

    /// Elements of the embedded kernel, sorted.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.kernel_order()).map(|i| i * self.base.order()).collect()
    }

    /// Index of `(a, x)`.
    pub fn element(&self, a: &[u64], x: usize) -> usize {
        self.module.element_index(a) * self.base.order() + x
    }

    pub fn project(&self, g: usize) -> usize {
        g % self.base.order()
    }

    pub fn is_central(&self) -> bool {
        self.module.is_trivial()
    }
}

/// Builds the extension group of a cocycle.
pub fn realize_extension(module: &GModule, cocycle: &Cocycle) -> Result<CentralExtensionData> {
    let q = module.group();
    let n = q.order();
    let size = module.order() as usize * n;
    if module.order() > MAX_EXTENSION_ORDER as u128 || size > MAX_EXTENSION_ORDER {
        return Err(Error::CapExceeded {
            what: "extension order",
            limit: MAX_EXTENSION_ORDER,
            got: size,
        });
    }
    cocycle.check(module)?;
    let elems = module.elements();
    let mut table = vec![0u32; size * size];
    for (ia, a) in elems.iter().enumerate() {
        for x in 0..n {
            let row = (ia * n + x) * size;
            for (ib, b) in elems.iter().enumerate() {
                let xb = module.act(x, b);
                let base = module.add(a, &xb);
                for y in 0..n {
                    let c = module.add(&base, cocycle.value(x, y));
                    table[row + ib * n + y] = (module.element_index(&c) * n + q.mul(x, y)) as u32;
                }
            }
        }
    }
    let mut gens: Vec<usize> = q.generators().to_vec();
    for c in 0..module.dim() {
        let mut e = vec![0u64; module.dim()];
        e[c] = 1;
        gens.push(module.element_index(&e) * n);
    }
    let name = format!("extension of {} by {}", q.name(), moduli_label(module.moduli()));
    let group = FiniteGroup::from_table(name, table, gens)?;
    group.validate()?;
    Ok(CentralExtensionData {
        base: q.clone(),
        module: module.clone(),
        cocycle: cocycle.clone(),
        group,
    })
}

fn moduli_label(moduli: &[u64]) -> String {
    if moduli.is_empty() {
        "0".into()
    } else {
        moduli.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join(" x ")
    }
}

/// Result of the CP test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpCheck {
    pub is_cp: bool,
    /// First commuting pair `x < y` of the base (lexicographic) with no commuting lift.
    pub witness: Option<(usize, usize)>,
    /// Kernel meets the commutator set trivially; only for central extensions.
    pub kernel_criterion: Option<bool>,
}

/// Decides whether every commuting pair of the base lifts to a commuting pair.
///
/// The lift search always runs; for central extensions the kernel criterion
/// is evaluated too and must agree.
pub fn check_cp_extension(ext: &CentralExtensionData) -> Result<CpCheck> {
    let q = &ext.base;
    let g = &ext.group;
    let n = q.order();
    let k = ext.kernel_order();
    let mut witness = None;
    'pairs: for x in 1..n {
        for y in x + 1..n {
            if !q.commute(x, y) {
                continue;
            }
            let found = (0..k).any(|a| (0..k).any(|b| g.commute(a * n + x, b * n + y)));
            if !found {
                witness = Some((x, y));
                break 'pairs;
            }
        }
    }
    let is_cp = witness.is_none();
    let kernel_criterion = ext.is_central().then(|| {
        g.commutator_set()
            .iter()
            .all(|&c| c == 0 || c % n != 0)
    });
    if let Some(kc) = kernel_criterion {
        if kc != is_cp {
            return Err(Error::Data(format!(
                "lift search ({is_cp}) and kernel criterion ({kc}) disagree"
            )));
        }
    }
    Ok(CpCheck {
        is_cp,
        witness,
        kernel_criterion,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ModuleJson {
    pub invariants: Vec<u64>,
    /// One integer matrix per generator of the base group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
}

/// Portable description of an extension: base group, module and cocycle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtensionBundle {
    pub schema_version: u32,
    /// A group spec or a catalog name.
    pub base: serde_json::Value,
    pub module: ModuleJson,
    pub cocycle: serde_json::Value,
}

impl ExtensionBundle {
    /// Bundle with the base stored as an explicit Cayley table.
    pub fn from_extension(ext: &CentralExtensionData) -> Self {
        let m = &ext.module;
        let action = (!m.is_trivial()).then(|| {
            let k = m.dim();
            ext.base
                .generators()
                .iter()
                .map(|&g| {
                    let a = m.matrix(g);
                    (0..k).map(|i| (0..k).map(|j| a[i * k + j] as i64).collect()).collect()
                })
                .collect()
        });
        ExtensionBundle {
            schema_version: SCHEMA_VERSION,
            base: serde_json::to_value(ext.base.to_spec()).expect("serializable"),
            module: ModuleJson {
                invariants: m.moduli().to_vec(),
                action,
            },
            cocycle: ext.cocycle.to_json(),
        }
    }

    /// Rebuilds the extension; `resolve` maps a catalog name to a group.
    pub fn realize(&self, resolve: impl Fn(&str) -> Result<FiniteGroup>) -> Result<CentralExtensionData> {
        let base = match &self.base {
            serde_json::Value::String(name) => resolve(name)?,
            other => build_group(&serde_json::from_value::<GroupSpec>(other.clone())?)?,
        };
        let module = match &self.module.action {
            None => GModule::trivial(&base, &self.module.invariants)?,
            Some(a) => GModule::with_action(&base, &self.module.invariants, a)?,
        };
        let cocycle = Cocycle::from_json(&self.cocycle, base.order())?;
        if cocycle.moduli() != module.moduli() {
            return Err(Error::MalformedSpec("cocycle and module coordinates differ".into()));
        }
        realize_extension(&module, &cocycle)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn c2() -> FiniteGroup {
        build_group(&GroupSpec::Abelian { invariants: vec![2] }).unwrap()
    }

    #[test]
    fn nontrivial_cocycle_on_c2_gives_c4() {
        let q = c2();
        let m = GModule::trivial(&q, &[2]).unwrap();
        let w = Cocycle::from_fn(2, &[2], |_, _| vec![1]);
        let e = realize_extension(&m, &w).unwrap();
        assert_eq!(e.group.order(), 4);
        assert!((0..4).any(|x| e.group.element_order(x) == 4));
        assert!(check_cp_extension(&e).unwrap().is_cp);
    }

    #[test]
    fn zero_cocycle_gives_direct_product() {
        let q = c2();
        let m = GModule::trivial(&q, &[2]).unwrap();
        let e = realize_extension(&m, &Cocycle::zero(2, &[2])).unwrap();
        assert!((0..4).all(|x| e.group.element_order(x) <= 2));
        assert_eq!(e.kernel(), vec![0, 2]);
    }

    #[test]
    fn broken_cocycle_rejected() {
        let q = build_group(&GroupSpec::Abelian { invariants: vec![3] }).unwrap();
        let m = GModule::trivial(&q, &[3]).unwrap();
        let mut w = Cocycle::zero(3, &[3]);
        w.set(1, 1, &[1]);
        assert!(matches!(realize_extension(&m, &w), Err(Error::NotACocycle(..))));
    }
}

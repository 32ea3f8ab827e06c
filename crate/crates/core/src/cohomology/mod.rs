//! Second cohomology with finite coefficients, its commutativity-preserving
//! subgroup, and the multipliers read off from them.

mod cocycle;
mod module;
mod system;
mod uct;

pub use cocycle::{Cocycle, SCHEMA_VERSION};
pub use module::GModule;
pub use system::{CocycleSystem, CohomologyCaps};
pub use uct::{multiplier_invariants, uct_decomposition, uct_decomposition_mod, MultiplierReport, Path, UctDecomposition};

use crate::error::Result;
use crate::linalg::{quotient_invariants, FinAbGroup, ModuleBasis};

/// A quotient `Z / B` of cocycles by coboundaries, with one representative
/// cocycle per cyclic factor.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub cocycles: ModuleBasis,
    pub coboundaries: ModuleBasis,
    pub quotient: FinAbGroup,
    pub representatives: Vec<Cocycle>,
}

impl CohomologyGroup {
    /// Builds `H^2` (or `H^2_CP` when `cp`) from an existing system.
    pub fn from_system(sys: &CocycleSystem, cp: bool) -> Result<Self> {
        let cocycles = if cp { sys.cp_cocycles() } else { sys.cocycles() }.clone();
        let coboundaries = sys.coboundaries().clone();
        let quotient = quotient_invariants(&cocycles, &coboundaries)?;
        let representatives = quotient.generator_lifts().iter().map(|v| sys.evaluate(v)).collect();
        Ok(CohomologyGroup {
            cocycles,
            coboundaries,
            quotient,
            representatives,
        })
    }

    pub fn invariants(&self) -> &[u64] {
        self.quotient.invariants()
    }

    pub fn order(&self) -> u128 {
        self.quotient.order()
    }

    /// Coordinates of the class of an edge vector.
    pub fn class_of(&self, v: &[u64]) -> Result<Vec<u64>> {
        self.quotient.project(v)
    }
}

/// `Z^2(Q, N)` in edge coordinates.
pub fn two_cocycles(module: &GModule) -> Result<ModuleBasis> {
    Ok(CocycleSystem::new(module)?.cocycles().clone())
}

/// `B^2(Q, N)` in edge coordinates.
pub fn two_coboundaries(module: &GModule) -> Result<ModuleBasis> {
    Ok(CocycleSystem::new(module)?.coboundaries().clone())
}

/// `Z^2_CP(Q, N)` in edge coordinates.
pub fn cp_two_cocycles(module: &GModule) -> Result<ModuleBasis> {
    Ok(CocycleSystem::new(module)?.cp_cocycles().clone())
}

/// `H^2(Q, N)`, or `H^2_CP(Q, N)` when `cp` is set.
pub fn cohomology_group(module: &GModule, cp: bool) -> Result<CohomologyGroup> {
    CohomologyGroup::from_system(&CocycleSystem::new(module)?, cp)
}

//! Coefficient modules: finite abelian groups with a group action.

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::zmod::lcm;

/// `N = Z/d_1 + ... + Z/d_k` with an action of `Q` by integer matrices.
///
/// Coordinate `i` lives in `Z/d_i`. For computation every coordinate is
/// embedded into `Z/M`, `M = lcm(d_i)`, via `v -> (M/d_i) v`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: FiniteGroup,
    moduli: Vec<u64>,
    // per element, row-major k x k, entry (i, j) reduced mod d_i
    action: Option<Vec<Vec<u64>>>,
}

impl GModule {
    /// Trivial action on `Z/d_1 + ... + Z/d_k`.
    pub fn trivial(group: &FiniteGroup, moduli: &[u64]) -> Result<Self> {
        check_moduli(moduli)?;
        Ok(GModule {
            group: group.clone(),
            moduli: moduli.to_vec(),
            action: None,
        })
    }

    /// Action given by one integer matrix per listed generator of the group
    /// (acting on column vectors), extended multiplicatively and verified to
    /// be a homomorphism into `Aut(N)`.
    pub fn with_action(group: &FiniteGroup, moduli: &[u64], generator_matrices: &[Vec<Vec<i64>>]) -> Result<Self> {
        check_moduli(moduli)?;
        let k = moduli.len();
        let gens = group.generators();
        if generator_matrices.len() != gens.len() {
            return Err(Error::InvalidModule(format!(
                "expected {} generator matrices, got {}",
                gens.len(),
                generator_matrices.len()
            )));
        }
        let mut reduced = Vec::with_capacity(gens.len());
        for a in generator_matrices {
            if a.len() != k || a.iter().any(|r| r.len() != k) {
                return Err(Error::InvalidModule("action matrix has wrong shape".into()));
            }
            let mut m = vec![0u64; k * k];
            for i in 0..k {
                for j in 0..k {
                    let d = moduli[i] as i64;
                    // the map Z/d_j -> Z/d_i must be well defined
                    if (a[i][j] as i128 * moduli[j] as i128) % d as i128 != 0 {
                        return Err(Error::InvalidModule(format!(
                            "entry ({i}, {j}) does not respect the moduli"
                        )));
                    }
                    m[i * k + j] = a[i][j].rem_euclid(d) as u64;
                }
            }
            reduced.push(m);
        }
        let n = group.order();
        let mut action: Vec<Option<Vec<u64>>> = vec![None; n];
        action[0] = Some(identity(k));
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in gens.iter().enumerate() {
                let y = group.mul(x, g);
                if action[y].is_none() {
                    let ax = action[x].as_ref().expect("visited");
                    action[y] = Some(compose(moduli, ax, &reduced[gi]));
                    queue.push_back(y);
                }
            }
        }
        let action: Vec<Vec<u64>> = action.into_iter().map(|a| a.expect("generators span")).collect();
        for x in 0..n {
            for y in 0..n {
                if compose(moduli, &action[x], &action[y]) != action[group.mul(x, y)] {
                    return Err(Error::InvalidModule(format!(
                        "action is not a homomorphism at ({x}, {y})"
                    )));
                }
            }
        }
        let trivial = action.iter().all(|a| *a == identity(k));
        Ok(GModule {
            group: group.clone(),
            moduli: moduli.to_vec(),
            action: (!trivial).then_some(action),
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&d| d as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.action.is_none()
    }

    /// Common modulus `lcm(d_i)`; 1 for the zero module.
    pub fn lcm_modulus(&self) -> u64 {
        self.moduli.iter().fold(1, |a, &d| lcm(a, d))
    }

    /// Matrix of `x` with entry `(i, j)` reduced mod `d_i`.
    pub fn matrix(&self, x: usize) -> Vec<u64> {
        match &self.action {
            Some(a) => a[x].clone(),
            None => identity(self.dim()),
        }
    }

    /// `x . b` in module coordinates.
    pub fn act(&self, x: usize, b: &[u64]) -> Vec<u64> {
        match &self.action {
            None => b.to_vec(),
            Some(a) => {
                let k = self.dim();
                let a = &a[x];
                (0..k)
                    .map(|i| {
                        let d = self.moduli[i] as u128;
                        ((0..k).map(|j| a[i * k + j] as u128 * b[j] as u128).sum::<u128>() % d) as u64
                    })
                    .collect()
            }
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.moduli).map(|(x, d)| (d - x % d) % d).collect()
    }

    /// All elements of `N`, lexicographically.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|p: Vec<u64>| {
                    (0..d).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    /// Mixed-radix index of an element, matching the order of [`elements`](Self::elements).
    pub fn element_index(&self, b: &[u64]) -> usize {
        b.iter().zip(&self.moduli).fold(0, |acc, (&v, &d)| acc * d as usize + v as usize)
    }

    /// Action matrix of `x` on the embedded coordinates in `(Z/M)^k`.
    pub(crate) fn embedded_matrix(&self, x: usize) -> Vec<u64> {
        let k = self.dim();
        let m = self.lcm_modulus();
        let a = self.matrix(x);
        let mut out = vec![0u64; k * k];
        for i in 0..k {
            for j in 0..k {
                // A_ij d_j / d_i is integral by the module check
                let v = a[i * k + j] as u128 * self.moduli[j] as u128 / self.moduli[i] as u128;
                out[i * k + j] = (v % m as u128) as u64;
            }
        }
        out
    }
}

fn check_moduli(moduli: &[u64]) -> Result<()> {
    if moduli.iter().any(|&d| d < 2) {
        return Err(Error::InvalidModule("every modulus must be at least 2".into()));
    }
    if moduli.len() > 64 {
        return Err(Error::InvalidModule("too many coordinates".into()));
    }
    Ok(())
}

fn identity(k: usize) -> Vec<u64> {
    let mut m = vec![0u64; k * k];
    for i in 0..k {
        m[i * k + i] = 1;
    }
    m
}

/// Product `a b` of matrices whose row `i` is reduced mod `d_i`.
fn compose(moduli: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
    let k = moduli.len();
    let mut out = vec![0u64; k * k];
    for i in 0..k {
        let d = moduli[i] as u128;
        for j in 0..k {
            // b_lj is defined mod d_l; a_il * d_l is divisible by d_i
            let s: u128 = (0..k).map(|l| a[i * k + l] as u128 * b[l * k + j] as u128).sum();
            out[i * k + j] = (s % d) as u64;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, GroupSpec};

    fn c2c2() -> FiniteGroup {
        build_group(&GroupSpec::Abelian { invariants: vec![2, 2] }).unwrap()
    }

    #[test]
    fn swap_action_is_a_homomorphism() {
        let q = c2c2();
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let swap = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]];
        let m = GModule::with_action(&q, &[2, 2, 2], &[id, swap]).unwrap();
        assert!(!m.is_trivial());
        let x2 = q.generators()[1];
        assert_eq!(m.act(x2, &[1, 0, 0]), vec![0, 1, 0]);
    }

    #[test]
    fn non_involution_rejected() {
        let q = build_group(&GroupSpec::Abelian { invariants: vec![2] }).unwrap();
        // doubling has order 3 on Z/7 but order 2 on Z/3
        let bad = GModule::with_action(&q, &[7], &[vec![vec![2]]]);
        assert!(matches!(bad, Err(Error::InvalidModule(_))));
        assert!(GModule::with_action(&q, &[3], &[vec![vec![2]]]).is_ok());
    }

    #[test]
    fn moduli_must_be_respected() {
        let q = build_group(&GroupSpec::Abelian { invariants: vec![2] }).unwrap();
        // Z/2 -> Z/4 by multiplication by 1 is not well defined
        let bad = GModule::with_action(&q, &[4, 2], &[vec![vec![1, 1], vec![0, 1]]]);
        assert!(bad.is_err());
        let ok = GModule::with_action(&q, &[4, 2], &[vec![vec![1, 2], vec![0, 1]]]);
        assert!(ok.is_ok());
    }
}

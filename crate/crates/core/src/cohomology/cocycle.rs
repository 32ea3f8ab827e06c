//! Normalized 2-cochains stored as full tables.

use serde::{Deserialize, Serialize};

use super::GModule;
use crate::error::{Error, Result};
use crate::linalg::zmod::lcm;

/// Schema version carried by every exported JSON document.
pub const SCHEMA_VERSION: u32 = 1;

/// A normalized 2-cochain `Q x Q -> N` with values in module coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    n: usize,
    moduli: Vec<u64>,
    values: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct CocycleJson {
    schema_version: u32,
    modulus: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    moduli: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    entries: Vec<(usize, usize, Vec<u64>)>,
}

impl Cocycle {
    pub fn zero(n: usize, moduli: &[u64]) -> Self {
        Cocycle {
            n,
            moduli: moduli.to_vec(),
            values: vec![0; n * n * moduli.len()],
        }
    }

    /// Tabulates `f(x, y)` over all pairs, forcing normalization.
    pub fn from_fn(n: usize, moduli: &[u64], f: impl Fn(usize, usize) -> Vec<u64>) -> Self {
        let mut c = Self::zero(n, moduli);
        for x in 1..n {
            for y in 1..n {
                let v = f(x, y);
                c.set(x, y, &v);
            }
        }
        c
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> &[u64] {
        let k = self.dim();
        let i = (x * self.n + y) * k;
        &self.values[i..i + k]
    }

    pub fn set(&mut self, x: usize, y: usize, v: &[u64]) {
        let k = self.dim();
        let i = (x * self.n + y) * k;
        for c in 0..k {
            self.values[i + c] = v[c] % self.moduli[c];
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.n).all(|x| {
            self.value(0, x).iter().all(|&v| v == 0) && self.value(x, 0).iter().all(|&v| v == 0)
        })
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Cocycle) -> Cocycle {
        assert_eq!(self.moduli, other.moduli, "cochains over different modules");
        let k = self.dim();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| (a + b) % self.moduli[i % k])
            .collect();
        Cocycle {
            n: self.n,
            moduli: self.moduli.clone(),
            values,
        }
    }

    /// Pointwise multiple.
    pub fn scale(&self, t: u64) -> Cocycle {
        let k = self.dim();
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, &a)| ((a as u128 * t as u128) % self.moduli[i % k] as u128) as u64)
            .collect();
        Cocycle {
            n: self.n,
            moduli: self.moduli.clone(),
            values,
        }
    }

    /// Direct sum of cochains on the same group with values in `N1 + N2`.
    pub fn direct_sum(parts: &[Cocycle]) -> Cocycle {
        let n = parts.first().map_or(1, |c| c.n);
        let moduli: Vec<u64> = parts.iter().flat_map(|c| c.moduli.iter().copied()).collect();
        Cocycle::from_fn(n, &moduli, |x, y| {
            parts.iter().flat_map(|c| c.value(x, y).iter().copied()).collect()
        })
    }

    /// Checks the 2-cocycle identity `x.w(y,z) - w(xy,z) + w(x,yz) - w(x,y) = 0`
    /// on every triple, reporting the first failure.
    pub fn check(&self, module: &GModule) -> Result<()> {
        let q = module.group();
        if q.order() != self.n || module.moduli() != self.moduli.as_slice() {
            return Err(Error::InvalidModule("cochain does not match the module".into()));
        }
        if !self.is_normalized() {
            return Err(Error::NotACocycle(0, 0, 0));
        }
        let k = self.dim();
        for x in 1..self.n {
            for y in 1..self.n {
                let xy = q.mul(x, y);
                let wxy = self.value(x, y);
                for z in 1..self.n {
                    let xw = module.act(x, self.value(y, z));
                    let a = self.value(xy, z);
                    let b = self.value(x, q.mul(y, z));
                    for c in 0..k {
                        let d = self.moduli[c];
                        if (xw[c] + b[c] + 2 * d - a[c] - wxy[c]) % d != 0 {
                            return Err(Error::NotACocycle(x, y, z));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut entries = Vec::new();
        for x in 1..self.n {
            for y in 1..self.n {
                let v = self.value(x, y);
                if v.iter().any(|&c| c != 0) {
                    entries.push((x, y, v.to_vec()));
                }
            }
        }
        let doc = CocycleJson {
            schema_version: SCHEMA_VERSION,
            modulus: self.moduli.iter().fold(1, |a, &d| lcm(a, d)),
            moduli: (self.moduli.len() != 1).then(|| self.moduli.clone()),
            order: Some(self.n),
            entries,
        };
        serde_json::to_value(doc).expect("serializable")
    }

    /// Reads a cochain for a group of order `n`. Without a `moduli` list the
    /// values are taken in `Z/modulus`.
    pub fn from_json(value: &serde_json::Value, n: usize) -> Result<Self> {
        let doc: CocycleJson = serde_json::from_value(value.clone())?;
        if let Some(o) = doc.order {
            if o != n {
                return Err(Error::MalformedSpec(format!("cocycle for order {o}, group has order {n}")));
            }
        }
        let moduli = doc.moduli.unwrap_or_else(|| vec![doc.modulus]);
        if moduli.iter().any(|&d| d < 2) {
            return Err(Error::MalformedSpec("modulus below 2".into()));
        }
        let mut c = Cocycle::zero(n, &moduli);
        for (x, y, v) in doc.entries {
            if x >= n || y >= n || v.len() != moduli.len() {
                return Err(Error::MalformedSpec(format!("bad cocycle entry ({x}, {y})")));
            }
            if x == 0 || y == 0 {
                if v.iter().zip(&moduli).any(|(a, d)| a % d != 0) {
                    return Err(Error::MalformedSpec("cochain is not normalized".into()));
                }
                continue;
            }
            c.set(x, y, &v);
        }
        Ok(c)
    }
}

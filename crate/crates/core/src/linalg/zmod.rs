//! Arithmetic in the residue ring Z/m.

/// Greatest common divisor of two non-negative integers.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Extended gcd on non-negative inputs: returns `(g, s, t)` with `s*a + t*b = g`.
pub fn gcdex(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 as u64, s0, t0)
}

/// The ring Z/m with a fast path for powers of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zmod {
    m: u64,
    mask: Option<u64>,
}

impl Zmod {
    pub fn new(m: u64) -> Self {
        assert!(m >= 1, "modulus must be positive");
        assert!(m < (1 << 31), "modulus too large");
        let mask = m.is_power_of_two().then(|| m - 1);
        Zmod { m, mask }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.m
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        match self.mask {
            Some(k) => x & k,
            None => x % self.m,
        }
    }

    /// Residue of a signed integer.
    #[inline]
    pub fn from_i128(&self, x: i128) -> u64 {
        x.rem_euclid(self.m as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.reduce(a + b)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.reduce(a + self.m - b)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        self.reduce(self.m - a)
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    /// `dst += c * src` entrywise.
    pub fn axpy(&self, dst: &mut [u64], c: u64, src: &[u64]) {
        debug_assert_eq!(dst.len(), src.len());
        if c == 0 {
            return;
        }
        match self.mask {
            Some(k) => {
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = d.wrapping_add(c.wrapping_mul(*s)) & k;
                }
            }
            None => {
                let m = self.m;
                for (d, s) in dst.iter_mut().zip(src) {
                    *d = (*d + c * *s) % m;
                }
            }
        }
    }

    pub fn scale(&self, v: &mut [u64], c: u64) {
        for x in v.iter_mut() {
            *x = self.mul(*x, c);
        }
    }

    /// Inverse of a unit, `None` if `a` is a zero divisor.
    pub fn inverse(&self, a: u64) -> Option<u64> {
        let (g, s, _) = gcdex(self.reduce(a), self.m);
        (g == 1).then(|| self.from_i128(s))
    }

    /// Returns `(u, g)` with `u` a unit, `g = gcd(a, m)` and `u*a = g` in Z/m.
    /// For `a = 0` the result is `(1, m)`.
    pub fn unit_normalizer(&self, a: u64) -> (u64, u64) {
        let a = self.reduce(a);
        if a == 0 {
            return (1, self.m);
        }
        let g = gcd(a, self.m);
        let mg = self.m / g;
        if mg == 1 {
            return (1, g);
        }
        let (_, s, _) = gcdex((a / g) % mg, mg);
        let u0 = (s.rem_euclid(mg as i128)) as u64;
        let mut u = u0;
        while gcd(u, self.m) != 1 {
            u += mg;
        }
        (u % self.m, g)
    }

    /// Ideal generator of `a`: the divisor `gcd(a, m)` of `m` (with `0 -> m`).
    #[inline]
    pub fn ideal(&self, a: u64) -> u64 {
        let a = self.reduce(a);
        if a == 0 {
            self.m
        } else {
            gcd(a, self.m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcdex_identity() {
        for a in 0..40u64 {
            for b in 0..40u64 {
                if a == 0 && b == 0 {
                    continue;
                }
                let (g, s, t) = gcdex(a, b);
                assert_eq!(g, gcd(a, b));
                assert_eq!(s * a as i128 + t * b as i128, g as i128);
            }
        }
    }

    #[test]
    fn unit_normalizer_hits_gcd() {
        for m in 2..50u64 {
            let r = Zmod::new(m);
            for a in 0..m {
                let (u, g) = r.unit_normalizer(a);
                assert_eq!(gcd(u, m), 1, "m={m} a={a}");
                assert_eq!(r.mul(u, a), r.reduce(g), "m={m} a={a}");
            }
        }
    }

    #[test]
    fn power_of_two_axpy_matches_generic() {
        let fast = Zmod::new(64);
        let mut a = vec![3, 63, 17, 0];
        fast.axpy(&mut a, 61, &[5, 1, 9, 63]);
        let expect: Vec<u64> = [3u64 + 61 * 5, 63 + 61, 17 + 61 * 9, 61 * 63]
            .iter()
            .map(|x| x % 64)
            .collect();
        assert_eq!(a, expect);
    }
}

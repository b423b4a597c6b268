//! Square matrices over `F_ell`, the prime field carrying a fixed embedding
//! of `Z[zeta_L]`. Representation matrices live here; exact character values
//! are recovered from eigenvalues, which are `L`-th roots of unity.

use crate::charthy::ModEmbed;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMat {
    pub d: usize,
    pub e: Vec<u64>,
}

impl ModMat {
    pub fn zero(d: usize) -> ModMat {
        ModMat { d, e: vec![0; d * d] }
    }

    pub fn identity(d: usize) -> ModMat {
        let mut m = ModMat::zero(d);
        for i in 0..d {
            m.e[i * d + i] = 1;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.e[i * self.d + j]
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, f: &ModEmbed, other: &ModMat) -> ModMat {
        let d = self.d;
        let mut out = ModMat::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.e[i * d + k];
                if a == 0 {
                    continue;
                }
                for j in 0..d {
                    let b = other.e[k * d + j];
                    if b != 0 {
                        out.e[i * d + j] = f.add(out.e[i * d + j], f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, f: &ModEmbed, c: u64) -> ModMat {
        ModMat { d: self.d, e: self.e.iter().map(|&x| f.mul(x, c)).collect() }
    }

    pub fn add_assign(&mut self, f: &ModEmbed, other: &ModMat) {
        for (a, &b) in self.e.iter_mut().zip(&other.e) {
            *a = f.add(*a, b);
        }
    }

    pub fn pow(&self, f: &ModEmbed, mut k: u64) -> ModMat {
        let mut base = self.clone();
        let mut acc = ModMat::identity(self.d);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.mul(f, &base);
            k >>= 1;
        }
        acc
    }

    pub fn trace(&self, f: &ModEmbed) -> u64 {
        (0..self.d).fold(0, |acc, i| f.add(acc, self.e[i * self.d + i]))
    }

    pub fn det(&self, f: &ModEmbed) -> u64 {
        let d = self.d;
        let mut a = self.e.clone();
        let mut det = 1u64;
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| a[r * d + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..d {
                    a.swap(piv * d + j, col * d + j);
                }
                det = f.sub(0, det);
            }
            let p = a[col * d + col];
            det = f.mul(det, p);
            let inv = f.inv(p);
            for r in col + 1..d {
                let factor = f.mul(a[r * d + col], inv);
                if factor == 0 {
                    continue;
                }
                for j in col..d {
                    let t = f.mul(factor, a[col * d + j]);
                    a[r * d + j] = f.sub(a[r * d + j], t);
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(t - A)`, constant term first, by the
    /// Faddeev-LeVerrier recursion (`ell` exceeds the dimension).
    pub fn charpoly(&self, f: &ModEmbed) -> Vec<u64> {
        let d = self.d;
        let mut coeffs = vec![0u64; d + 1];
        coeffs[d] = 1;
        let mut m = ModMat::zero(d);
        for k in 1..=d {
            // M_k = A M_{k-1} + c_{d-k+1} I
            let mut next = self.mul(f, &m);
            for i in 0..d {
                next.e[i * d + i] = f.add(next.e[i * d + i], coeffs[d - k + 1]);
            }
            m = next;
            let am = self.mul(f, &m);
            let t = am.trace(f);
            coeffs[d - k] = f.sub(0, f.mul(t, f.inv(k as u64)));
        }
        coeffs
    }

    /// Exponents `k` (with multiplicity) such that the eigenvalues are `w^k`,
    /// or `None` if some eigenvalue is not an `L`-th root of unity.
    pub fn eigen_exponents(&self, f: &ModEmbed) -> Option<Vec<u32>> {
        let mut poly = self.charpoly(f);
        let mut out = Vec::with_capacity(self.d);
        for k in 0..f.l {
            let w = f.root(k);
            while poly.len() > 1 {
                let (q, rem) = synthetic_div(f, &poly, w);
                if rem != 0 {
                    break;
                }
                poly = q;
                out.push(k as u32);
            }
            if poly.len() == 1 {
                return Some(out);
            }
        }
        None
    }
}

/// Divides by `t - w`; returns quotient and remainder.
fn synthetic_div(f: &ModEmbed, poly: &[u64], w: u64) -> (Vec<u64>, u64) {
    let n = poly.len() - 1;
    let mut q = vec![0u64; n];
    let mut carry = 0u64;
    for i in (0..=n).rev() {
        let v = f.add(poly[i], f.mul(carry, w));
        if i == 0 {
            return (q, v);
        }
        q[i - 1] = v;
        carry = v;
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalues_of_monomial_matrix() {
        let f = ModEmbed::new(12);
        // Cyclic permutation of order 3 scaled by zeta^4: eigenvalues zeta^{4} * {1, zeta^4, zeta^8}.
        let mut m = ModMat::zero(3);
        for i in 0..3 {
            m.e[((i + 1) % 3) * 3 + i] = f.root(4);
        }
        let mut ev = m.eigen_exponents(&f).unwrap();
        ev.sort();
        assert_eq!(ev, vec![0, 4, 8]);
        assert_eq!(m.pow(&f, 3), ModMat::identity(3));
        assert_eq!(m.det(&f), 1);
        let cp = m.charpoly(&f);
        assert_eq!(cp, vec![f.sub(0, 1), 0, 0, 1]);
        let two = ModMat::identity(2).scale(&f, 2);
        assert_eq!(two.eigen_exponents(&f), None);
    }
}

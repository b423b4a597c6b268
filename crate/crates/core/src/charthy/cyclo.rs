//! Exact arithmetic in `Q(zeta_L)` and a modular embedding into `F_ell`.
//!
//! Elements are rational coefficient vectors over the power basis
//! `1, zeta, ..., zeta^{phi(L)-1}`, reduced modulo the `L`-th cyclotomic
//! polynomial. Sums of roots of unity are accumulated as integer vectors
//! indexed by exponent (the group ring `Z[C_L]`) and reduced once.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Integer polynomial, constant term first.
type IntPoly = Vec<i64>;

fn poly_div_exact(a: &[i64], m: &[i64]) -> IntPoly {
    let mut rem = a.to_vec();
    let dm = m.len() - 1;
    let mut quot = vec![0i64; a.len() - dm];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dm];
        quot[k] = c;
        for i in 0..=dm {
            rem[k + i] -= c * m[i];
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// `Phi_n` by dividing `x^n - 1` by `Phi_d` for the proper divisors `d`.
pub fn cyclotomic_poly(n: u64) -> Vec<i64> {
    let mut memo: BTreeMap<u64, IntPoly> = BTreeMap::new();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mut p = vec![0i64; d as usize + 1];
        p[0] = -1;
        p[d as usize] = 1;
        for (&e, q) in memo.iter() {
            if d % e == 0 {
                p = poly_div_exact(&p, q);
            }
        }
        memo.insert(d, p);
    }
    memo.remove(&n).expect("n divides itself")
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Q(zeta_L)` with reduction tables.
pub struct CycloField {
    pub l: u64,
    pub phi: usize,
    /// `x^k mod Phi_L` for `0 <= k < L`.
    pow_table: Vec<Vec<i64>>,
    pub modular: ModEmbed,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.l)
    }
}

impl CycloField {
    pub fn new(l: u64) -> Arc<CycloField> {
        assert!(l >= 1);
        let phi_poly = cyclotomic_poly(l);
        let phi = phi_poly.len() - 1;
        let mut pow_table = Vec::with_capacity(l as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        if phi == 0 {
            unreachable!("cyclotomic polynomials have positive degree");
        }
        for _ in 0..l {
            pow_table.push(cur.clone());
            // Multiply by x and reduce by the monic Phi_L.
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i].checked_sub(top * phi_poly[i]).expect("cyclotomic reduction overflow");
                }
            }
        }
        Arc::new(CycloField { l, phi, pow_table, modular: ModEmbed::new(l) })
    }

    /// Reduces a `Z[C_L]` vector (indexed by exponent) into power-basis
    /// coordinates.
    pub fn reduce_group_ring(&self, acc: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.phi];
        for (k, &c) in acc.iter().enumerate() {
            if c != 0 {
                for (o, &t) in out.iter_mut().zip(&self.pow_table[k]) {
                    *o += c * t;
                }
            }
        }
        out
    }

    pub fn from_group_ring(self: &Arc<Self>, acc: &[i64]) -> CycloVal {
        CycloVal::from_ints(self, &self.reduce_group_ring(acc), BigInt::one())
    }

    /// `zeta_L^k`.
    pub fn root(self: &Arc<Self>, k: u64) -> CycloVal {
        let coords = self.pow_table[(k % self.l) as usize].clone();
        CycloVal::from_ints(self, &coords, BigInt::one())
    }

    pub fn int(self: &Arc<Self>, n: i64) -> CycloVal {
        let mut c = vec![0i64; self.phi];
        c[0] = n;
        CycloVal::from_ints(self, &c, BigInt::one())
    }

    pub fn zero(self: &Arc<Self>) -> CycloVal {
        self.int(0)
    }

    pub fn one(self: &Arc<Self>) -> CycloVal {
        self.int(1)
    }

    pub fn rational(self: &Arc<Self>, q: &BigRational) -> CycloVal {
        let mut num = vec![BigInt::zero(); self.phi];
        num[0] = q.numer().clone();
        CycloVal::normalized(self, num, q.denom().clone())
    }
}

/// An element of `Q(zeta_L)`: `num / den` in the power basis, with trailing
/// zero coordinates dropped (so zero has an empty numerator).
#[derive(Clone)]
pub struct CycloVal {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycloVal {
    fn eq(&self, other: &Self) -> bool {
        self.field.l == other.field.l && self.den == other.den && self.num == other.num
    }
}
impl Eq for CycloVal {}

impl fmt::Debug for CycloVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.to_rational() {
            return write!(f, "{q}");
        }
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{c}*z^{i}"))
            .collect();
        write!(f, "({})/{} in Q(z_{})", terms.join(" + "), self.den, self.field.l)
    }
}

impl CycloVal {
    fn normalized(field: &Arc<CycloField>, mut num: Vec<BigInt>, mut den: BigInt) -> CycloVal {
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        while num.last().is_some_and(|c| c.is_zero()) {
            num.pop();
        }
        num.shrink_to_fit();
        if num.is_empty() {
            den = BigInt::one();
        } else if !g.is_one() && !g.is_zero() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -c.clone();
            }
        }
        CycloVal { field: Arc::clone(field), num, den }
    }

    pub fn from_ints(field: &Arc<CycloField>, coords: &[i64], den: BigInt) -> CycloVal {
        CycloVal::normalized(field, coords.iter().map(|&c| BigInt::from(c)).collect(), den)
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u64 {
        self.field.l
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Coordinate `i` of the numerator.
    fn coord(&self, i: usize) -> BigInt {
        self.num.get(i).cloned().unwrap_or_default()
    }

    /// The rational value if the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        (self.num.len() <= 1).then(|| BigRational::new(self.coord(0), self.den.clone()))
    }

    pub fn to_integer(&self) -> Option<i64> {
        let q = self.to_rational()?;
        q.is_integer().then(|| q.to_integer().to_i64()).flatten()
    }

    pub fn add(&self, other: &CycloVal) -> CycloVal {
        let len = self.num.len().max(other.num.len());
        let num = (0..len).map(|i| self.coord(i) * &other.den + other.coord(i) * &self.den).collect();
        CycloVal::normalized(&self.field, num, &self.den * &other.den)
    }

    pub fn neg(&self) -> CycloVal {
        CycloVal { field: Arc::clone(&self.field), num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &CycloVal) -> CycloVal {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &CycloVal) -> CycloVal {
        let phi = self.field.phi;
        let l = self.field.l as usize;
        let mut prod = vec![BigInt::zero(); phi];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (p, &t) in prod.iter_mut().zip(&self.field.pow_table[(i + j) % l]) {
                    if t != 0 {
                        *p += &ab * t;
                    }
                }
            }
        }
        CycloVal::normalized(&self.field, prod, &self.den * &other.den)
    }

    pub fn scale(&self, q: &BigRational) -> CycloVal {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycloVal::normalized(&self.field, num, &self.den * q.denom())
    }

    /// Image under `zeta -> zeta^k` for `k` coprime to `L`.
    pub fn galois(&self, k: u64) -> CycloVal {
        let l = self.field.l;
        let phi = self.field.phi;
        let mut out = vec![BigInt::zero(); phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (i as u64 * k) % l;
            for (o, &t) in out.iter_mut().zip(&self.field.pow_table[e as usize]) {
                if t != 0 {
                    *o += c * t;
                }
            }
        }
        CycloVal::normalized(&self.field, out, self.den.clone())
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> CycloVal {
        self.galois(self.field.l - 1)
    }

    /// Multiplicative inverse by solving `self * x = 1` over `Q`.
    pub fn inverse(&self) -> Result<CycloVal> {
        if self.is_zero() {
            return Err(Error::NotAUnit);
        }
        let phi = self.field.phi;
        // Column j of the multiplication matrix is self * zeta^j.
        let cols: Vec<CycloVal> = (0..phi as u64).map(|j| self.mul(&self.field.root(j))).collect();
        let mut m: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut row: Vec<BigRational> =
                    cols.iter().map(|c| BigRational::new(c.coord(i), c.den.clone())).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..phi {
            let piv = (col..phi).find(|&r| !m[r][col].is_zero()).ok_or(Error::NotAUnit)?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for x in m[col].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..phi {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=phi {
                        let t = &m[col][c] * &f;
                        m[r][c] = &m[r][c] - t;
                    }
                }
            }
        }
        let den = m.iter().fold(BigInt::one(), |acc, row| acc.lcm(row[phi].denom()));
        let num = m.iter().map(|row| row[phi].numer() * (&den / row[phi].denom())).collect();
        Ok(CycloVal::normalized(&self.field, num, den))
    }

    pub fn pow(&self, mut e: u64) -> CycloVal {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Image in `F_ell` under `zeta -> w^k`.
    /// The same number in `Q(zeta_M)` for a multiple `M` of the conductor.
    pub fn embed(&self, target: &Arc<CycloField>) -> Result<CycloVal> {
        let l = self.field.l;
        if !target.l.is_multiple_of(l) {
            return Err(Error::ShapeMismatch(format!("conductor {l} does not divide {}", target.l)));
        }
        let step = (target.l / l) as usize;
        let mut num = vec![BigInt::zero(); target.phi];
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, &t) in num.iter_mut().zip(&target.pow_table[i * step]) {
                if t != 0 {
                    *o += c * t;
                }
            }
        }
        Ok(CycloVal::normalized(target, num, self.den.clone()))
    }

    pub fn residue_at(&self, k: u64) -> u64 {
        let m = &self.field.modular;
        let ell = BigInt::from(m.ell);
        let mut acc = 0u64;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ci = c.mod_floor(&ell).to_u64().expect("reduced");
            acc = m.add(acc, m.mul(ci, m.root(i as u64 * k)));
        }
        let d = self.den.mod_floor(&ell).to_u64().expect("reduced");
        m.mul(acc, m.inv(d))
    }

    pub fn residue(&self) -> u64 {
        self.residue_at(1)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "conductor": self.field.l,
            "coeffs": self.num.iter().map(|c| {
                let q = BigRational::new(c.clone(), self.den.clone());
                if q.is_integer() { q.numer().to_string() } else { format!("{}/{}", q.numer(), q.denom()) }
            }).collect::<Vec<_>>(),
        })
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime `ell ≡ 1 mod L` below `2^62` with a fixed primitive `L`-th root `w`.
#[derive(Debug, Clone)]
pub struct ModEmbed {
    pub ell: u64,
    pub l: u64,
    roots: Vec<u64>,
}

impl ModEmbed {
    pub fn new(l: u64) -> ModEmbed {
        let limit = 1u64 << 62;
        let mut k = (limit - 1) / l;
        let ell = loop {
            let cand = k * l + 1;
            if is_prime_u64(cand) {
                break cand;
            }
            k -= 1;
        };
        let primes = prime_factors(l);
        let w = (2..)
            .map(|c| pow_mod(c, (ell - 1) / l, ell))
            .find(|&w| primes.iter().all(|&p| pow_mod(w, l / p, ell) != 1))
            .expect("a primitive root exists");
        let mut roots = Vec::with_capacity(l as usize);
        let mut x = 1u64;
        for _ in 0..l {
            roots.push(x);
            x = mul_mod(x, w, ell);
        }
        ModEmbed { ell, l, roots }
    }

    #[inline]
    pub fn root(&self, k: u64) -> u64 {
        self.roots[(k % self.l) as usize]
    }
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.ell {
            s - self.ell
        } else {
            s
        }
    }
    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.ell - b
        }
    }
    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.ell)
    }
    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.ell)
    }
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero mod ell");
        pow_mod(a, self.ell - 2, self.ell)
    }
    pub fn from_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.ell as i64) as u64
    }
    /// Signed lift, assuming `|x| < ell / 2`.
    pub fn lift(&self, x: u64) -> i64 {
        if x > self.ell / 2 {
            -((self.ell - x) as i64)
        } else {
            x as i64
        }
    }
    /// Exponent `k` with `w^k = x`, if `x` is an `L`-th root of unity.
    pub fn log(&self, x: u64) -> Option<u64> {
        self.roots.iter().position(|&r| r == x).map(|k| k as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), vec![1, 0, -1, 0, 1]);
        for n in 1..60 {
            assert_eq!(cyclotomic_poly(n).len() as u64 - 1, euler_phi(n));
        }
    }

    #[test]
    fn field_arithmetic() {
        let f = CycloField::new(12);
        let z = f.root(1);
        assert_eq!(z.pow(12), f.one());
        assert_ne!(z.pow(6), f.one());
        assert_eq!(z.mul(&z.conj()), f.one());
        // 1 + zeta_3 + zeta_3^2 = 0
        let s = f.one().add(&f.root(4)).add(&f.root(8));
        assert!(s.is_zero());
        let a = f.int(2).add(&f.root(1)).add(&f.root(5));
        assert_eq!(a.mul(&a.inverse().unwrap()), f.one());
        assert_eq!(f.root(3).mul(&f.root(3)), f.int(-1));
    }

    #[test]
    fn group_ring_reduction() {
        let f = CycloField::new(4);
        let mut acc = vec![0i64; 4];
        acc[1] = 1;
        acc[3] = 1;
        assert!(f.from_group_ring(&acc).is_zero());
    }

    #[test]
    fn modular_embedding() {
        let f = CycloField::new(24);
        let m = &f.modular;
        assert_eq!(m.ell % 24, 1);
        assert!(is_prime_u64(m.ell));
        let a = f.root(5).add(&f.int(3));
        let b = f.root(7).sub(&f.root(2));
        assert_eq!(a.mul(&b).residue(), m.mul(a.residue(), b.residue()));
        assert_eq!(a.conj().residue(), a.residue_at(23));
        assert_eq!(m.lift(m.from_i64(-17)), -17);
    }
}

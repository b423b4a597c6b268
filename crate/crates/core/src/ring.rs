//! Finite chain rings `o_r` and their residue fields.
//!
//! Three kinds are supported: `Z/p^r`, the Galois ring `GR(p^r, f)` and the
//! truncated polynomial ring `F_q[t]/t^r`. Elements are small integers
//! (indices into the enumerated ring); all operations go through
//! precomputed tables so that matrix arithmetic over `o_r` stays cheap.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of an element inside its ring.
pub type Idx = u16;

/// Largest ring we are willing to tabulate.
pub const MAX_RING_SIZE: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    /// `o = Z_p`, so `o_r = Z/p^r`.
    IntegersMod,
    /// `o` unramified of degree `f` over `Z_p`.
    Galois,
    /// `o = F_q[[t]]`, so `o_r = F_q[t]/t^r`.
    TruncatedPoly,
}

/// Parameters of `o_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    pub kind: RingKind,
    pub p: u32,
    pub r: u32,
    pub f: u32,
    /// Monic defining polynomial of `F_q` over `F_p`, constant term first.
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, constant term first, trimmed.

fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    fp_trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm], p - 2, p);
    while a.len() > dm {
        let da = a.len() - 1;
        let c = a[da] * lead_inv % p;
        for i in 0..=dm {
            let t = c * m[i] % p;
            a[da - dm + i] = (a[da - dm + i] + p - t) % p;
        }
        fp_trim(&mut a);
    }
    a
}

fn pow_mod(b: u32, e: u32, m: u32) -> u32 {
    let (mut b, mut e, mut acc) = (b as u64 % m as u64, e, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m as u64;
        }
        b = b * b % m as u64;
        e >>= 1;
    }
    acc as u32
}

/// Exhaustive irreducibility test: no monic factor of degree `1..=deg/2`.
pub fn fp_is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as usize).pow(d as u32);
        for low in 0..count {
            let mut cand = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                cand.push((x % p as usize) as u32);
                x /= p as usize;
            }
            cand.push(1);
            if fp_rem(poly, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The smallest monic irreducible polynomial of degree `f` over `F_p`, in
/// lexicographic order on the constant-first coefficient list.
pub fn smallest_irreducible(p: u32, f: u32) -> Vec<u32> {
    let count = (p as usize).pow(f);
    for low in 0..count {
        let mut cand = Vec::with_capacity(f as usize + 1);
        let mut x = low;
        for _ in 0..f {
            cand.push((x % p as usize) as u32);
            x /= p as usize;
        }
        cand.push(1);
        if fp_is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl RingSpec {
    /// Validates parameters and fixes the defining polynomial.
    pub fn new(kind: RingKind, p: u32, r: u32, f: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if r == 0 {
            return Err(Error::BadLevel { level: 0, max: u32::MAX });
        }
        if f == 0 {
            return Err(Error::UnsupportedSize("residue degree must be at least 1".into()));
        }
        if kind == RingKind::IntegersMod && f != 1 {
            return Err(Error::UnsupportedSize("Z/p^r has residue degree 1".into()));
        }
        let size = (p as u128).pow(f * r);
        if size > MAX_RING_SIZE as u128 {
            return Err(Error::UnsupportedSize(format!("|o_r| = {size} exceeds {MAX_RING_SIZE}")));
        }
        Ok(RingSpec { kind, p, r, f, modulus: smallest_irreducible(p, f) })
    }

    pub fn q(&self) -> u32 {
        self.p.pow(self.f)
    }

    pub fn size(&self) -> usize {
        (self.q() as usize).pow(self.r)
    }

    pub fn unit_count(&self) -> usize {
        self.size() - self.size() / self.q() as usize
    }

    /// Same ring kind and residue field, level `s`.
    pub fn at_level(&self, s: u32) -> Result<Self> {
        if s == 0 {
            return Err(Error::BadLevel { level: s, max: self.r });
        }
        Ok(RingSpec { r: s, ..self.clone() })
    }

    /// Ring literal: `zmod:p^r`, `galois:p^r:f` or `fqt:q:r`.
    pub fn literal(&self) -> String {
        match self.kind {
            RingKind::IntegersMod => format!("zmod:{}^{}", self.p, self.r),
            RingKind::Galois => format!("galois:{}^{}:{}", self.p, self.r, self.f),
            RingKind::TruncatedPoly => format!("fqt:{}:{}", self.q(), self.r),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.literal())
    }
}

fn parse_u32(s: &str) -> Result<u32> {
    s.trim().parse().map_err(|_| Error::Parse(format!("expected an integer, got {s:?}")))
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut f = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        f += 1;
    }
    (x == 1).then_some((p, f))
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let pr = |t: &str| -> Result<(u32, u32)> {
            let (a, b) = t
                .split_once('^')
                .ok_or_else(|| Error::Parse(format!("expected p^r, got {t:?}")))?;
            Ok((parse_u32(a)?, parse_u32(b)?))
        };
        match parts.as_slice() {
            ["zmod", t] => {
                let (p, r) = pr(t)?;
                RingSpec::new(RingKind::IntegersMod, p, r, 1)
            }
            ["galois", t, f] => {
                let (p, r) = pr(t)?;
                RingSpec::new(RingKind::Galois, p, r, parse_u32(f)?)
            }
            ["fqt", q, r] => {
                let q = parse_u32(q)?;
                let (p, f) = prime_power(q).ok_or(Error::NonPrime(q))?;
                RingSpec::new(RingKind::TruncatedPoly, p, parse_u32(r)?, f)
            }
            _ => Err(Error::Parse(format!("unrecognised ring literal {s:?}"))),
        }
    }
}

/// Tabulated ring `o_r`.
#[derive(Debug)]
pub struct Ring {
    pub spec: RingSpec,
    size: usize,
    q: usize,
    /// Modulus of the additive character exponents (`p^r`, or `p` for `F_q[t]/t^r`).
    char_modulus: u32,
    coeffs: Vec<Vec<u32>>,
    add: Vec<Idx>,
    mul: Vec<Idx>,
    neg: Vec<Idx>,
    inv: Vec<Idx>,
    val: Vec<u8>,
    residue: Vec<Idx>,
    addchar: Vec<u32>,
    uniformizer: Idx,
}

pub const NO_INV: Idx = Idx::MAX;

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Arc<Ring>> {
        let size = spec.size();
        if size > MAX_RING_SIZE {
            return Err(Error::UnsupportedSize(format!("|o_r| = {size}")));
        }
        let p = spec.p;
        let q = spec.q() as usize;
        let f = spec.f as usize;
        let r = spec.r as usize;
        let pr = p.pow(spec.r);

        // Element index <-> canonical coefficient vector.
        let coeffs: Vec<Vec<u32>> = (0..size)
            .map(|mut x| match spec.kind {
                RingKind::IntegersMod => vec![x as u32],
                RingKind::Galois => {
                    let mut v = Vec::with_capacity(f);
                    for _ in 0..f {
                        v.push((x % pr as usize) as u32);
                        x /= pr as usize;
                    }
                    v
                }
                RingKind::TruncatedPoly => {
                    let mut v = Vec::with_capacity(r);
                    for _ in 0..r {
                        v.push((x % q) as u32);
                        x /= q;
                    }
                    v
                }
            })
            .collect();

        let encode = |v: &[u32]| -> usize {
            let base = match spec.kind {
                RingKind::IntegersMod | RingKind::Galois => pr as usize,
                RingKind::TruncatedPoly => q,
            };
            v.iter().rev().fold(0usize, |acc, &c| acc * base + c as usize)
        };

        // F_q elements as F_p-vectors in base p (used by the truncated kind).
        let fq_vec = |mut x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(f);
            for _ in 0..f {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let fq_enc = |v: &[u32]| -> u32 { v.iter().rev().fold(0u32, |acc, &c| acc * p + c) };
        let fq_mul = |a: u32, b: u32| -> u32 {
            let (va, vb) = (fq_vec(a), fq_vec(b));
            let mut prod = vec![0u32; 2 * f];
            for i in 0..f {
                for j in 0..f {
                    prod[i + j] = (prod[i + j] + va[i] * vb[j]) % p;
                }
            }
            let mut rem = fp_rem(&prod, &spec.modulus, p);
            rem.resize(f, 0);
            fq_enc(&rem)
        };
        let fq_add = |a: u32, b: u32| -> u32 {
            let (va, vb) = (fq_vec(a), fq_vec(b));
            fq_enc(&va.iter().zip(&vb).map(|(x, y)| (x + y) % p).collect::<Vec<_>>())
        };

        let add_coeffs = |a: &[u32], b: &[u32]| -> Vec<u32> {
            match spec.kind {
                RingKind::IntegersMod | RingKind::Galois => {
                    a.iter().zip(b).map(|(x, y)| (x + y) % pr).collect()
                }
                RingKind::TruncatedPoly => a.iter().zip(b).map(|(&x, &y)| fq_add(x, y)).collect(),
            }
        };
        let mul_coeffs = |a: &[u32], b: &[u32]| -> Vec<u32> {
            match spec.kind {
                RingKind::IntegersMod => vec![((a[0] as u64 * b[0] as u64) % pr as u64) as u32],
                RingKind::Galois => {
                    // Multiply in (Z/p^r)[x] and reduce by the monic lift of the modulus.
                    let mut prod = vec![0u64; 2 * f];
                    for i in 0..f {
                        for j in 0..f {
                            prod[i + j] = (prod[i + j] + a[i] as u64 * b[j] as u64) % pr as u64;
                        }
                    }
                    for d in (f..2 * f).rev() {
                        let c = prod[d];
                        if c == 0 {
                            continue;
                        }
                        prod[d] = 0;
                        for k in 0..f {
                            let t = c * spec.modulus[k] as u64 % pr as u64;
                            prod[d - f + k] = (prod[d - f + k] + pr as u64 - t) % pr as u64;
                        }
                    }
                    prod[..f].iter().map(|&c| c as u32).collect()
                }
                RingKind::TruncatedPoly => {
                    let mut prod = vec![0u32; r];
                    for i in 0..r {
                        if a[i] == 0 {
                            continue;
                        }
                        for j in 0..r - i {
                            prod[i + j] = fq_add(prod[i + j], fq_mul(a[i], b[j]));
                        }
                    }
                    prod
                }
            }
        };

        let mut add = vec![0 as Idx; size * size];
        let mut mul = vec![0 as Idx; size * size];
        for a in 0..size {
            for b in a..size {
                let s = encode(&add_coeffs(&coeffs[a], &coeffs[b])) as Idx;
                let m = encode(&mul_coeffs(&coeffs[a], &coeffs[b])) as Idx;
                add[a * size + b] = s;
                add[b * size + a] = s;
                mul[a * size + b] = m;
                mul[b * size + a] = m;
            }
        }
        let mut neg = vec![0 as Idx; size];
        let mut inv = vec![NO_INV; size];
        for a in 0..size {
            for b in 0..size {
                if add[a * size + b] == 0 {
                    neg[a] = b as Idx;
                }
                if mul[a * size + b] == 1 {
                    inv[a] = b as Idx;
                }
            }
        }

        let vp = |mut x: u32| -> u32 {
            if x == 0 {
                return spec.r;
            }
            let mut v = 0;
            while x.is_multiple_of(p) {
                x /= p;
                v += 1;
            }
            v
        };
        let val: Vec<u8> = coeffs
            .iter()
            .map(|c| {
                (match spec.kind {
                    RingKind::IntegersMod | RingKind::Galois => c.iter().map(|&x| vp(x)).min().unwrap(),
                    RingKind::TruncatedPoly => c.iter().position(|&x| x != 0).map_or(spec.r, |i| i as u32),
                }) as u8
            })
            .collect();

        let residue: Vec<Idx> = coeffs
            .iter()
            .map(|c| match spec.kind {
                RingKind::IntegersMod | RingKind::Galois => {
                    c.iter().rev().fold(0u32, |acc, &x| acc * p + x % p) as Idx
                }
                RingKind::TruncatedPoly => c[0] as Idx,
            })
            .collect();

        // Additive character exponents.
        let char_modulus = match spec.kind {
            RingKind::TruncatedPoly => p,
            _ => pr,
        };
        let addchar: Vec<u32> = match spec.kind {
            RingKind::IntegersMod => coeffs.iter().map(|c| c[0]).collect(),
            RingKind::Galois => {
                // Tr(x^j) = trace of multiplication by x^j on the basis 1, x, ..., x^{f-1}.
                let basis: Vec<usize> = (0..f)
                    .map(|j| {
                        let mut v = vec![0u32; f];
                        v[j] = 1;
                        encode(&v)
                    })
                    .collect();
                let traces: Vec<u64> = (0..f)
                    .map(|j| {
                        (0..f)
                            .map(|k| coeffs[mul[basis[j] * size + basis[k]] as usize][k] as u64)
                            .sum::<u64>()
                            % pr as u64
                    })
                    .collect();
                coeffs
                    .iter()
                    .map(|c| {
                        (c.iter().zip(&traces).map(|(&a, &t)| a as u64 * t).sum::<u64>() % pr as u64) as u32
                    })
                    .collect()
            }
            RingKind::TruncatedPoly => {
                // Tr_{F_q/F_p}(a) = sum of the conjugates a^{p^k}, read off as an F_p constant.
                let fq_trace = |a: u32| -> u32 {
                    let mut acc = 0u32;
                    let mut x = a;
                    for _ in 0..f {
                        acc = fq_add(acc, x);
                        let mut y = 1u32;
                        for _ in 0..p {
                            y = fq_mul(y, x);
                        }
                        x = y;
                    }
                    acc
                };
                coeffs.iter().map(|c| fq_trace(c[r - 1])).collect()
            }
        };

        let uniformizer = if spec.r == 1 {
            0
        } else {
            match spec.kind {
                RingKind::IntegersMod | RingKind::Galois => {
                    let mut v = vec![0u32; coeffs[0].len()];
                    v[0] = p;
                    encode(&v) as Idx
                }
                RingKind::TruncatedPoly => q as Idx,
            }
        };

        Ok(Arc::new(Ring {
            spec,
            size,
            q,
            char_modulus,
            coeffs,
            add,
            mul,
            neg,
            inv,
            val,
            residue,
            addchar,
            uniformizer,
        }))
    }

    pub fn from_literal(lit: &str) -> Result<Arc<Ring>> {
        Ring::new(lit.parse()?)
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }
    #[inline]
    pub fn p(&self) -> u32 {
        self.spec.p
    }
    #[inline]
    pub fn level(&self) -> u32 {
        self.spec.r
    }
    #[inline]
    pub fn char_modulus(&self) -> u32 {
        self.char_modulus
    }
    #[inline]
    pub fn add(&self, a: Idx, b: Idx) -> Idx {
        self.add[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: Idx, b: Idx) -> Idx {
        self.mul[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn neg(&self, a: Idx) -> Idx {
        self.neg[a as usize]
    }
    #[inline]
    pub fn sub(&self, a: Idx, b: Idx) -> Idx {
        self.add(a, self.neg(b))
    }
    /// Inverse, or `None` for non-units.
    #[inline]
    pub fn inv(&self, a: Idx) -> Option<Idx> {
        let i = self.inv[a as usize];
        (i != NO_INV).then_some(i)
    }
    #[inline]
    pub fn is_unit(&self, a: Idx) -> bool {
        self.inv[a as usize] != NO_INV
    }
    /// `v(a)`, with `v(0) = r`.
    #[inline]
    pub fn valuation(&self, a: Idx) -> u32 {
        self.val[a as usize] as u32
    }
    /// Exponent `k` with `eps(a) = zeta_M^k`, `M = char_modulus()`.
    #[inline]
    pub fn additive_char_exp(&self, a: Idx) -> u32 {
        self.addchar[a as usize]
    }
    /// Image in the residue field, as an index of the level-1 ring.
    #[inline]
    pub fn residue(&self, a: Idx) -> Idx {
        self.residue[a as usize]
    }
    #[inline]
    pub fn uniformizer(&self) -> Idx {
        self.uniformizer
    }
    pub fn one(&self) -> Idx {
        1
    }
    pub fn coeffs(&self, a: Idx) -> &[u32] {
        &self.coeffs[a as usize]
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<Idx> {
        self.coeffs
            .iter()
            .position(|x| x.as_slice() == c)
            .map(|i| i as Idx)
            .ok_or_else(|| Error::Parse(format!("{c:?} is not a reduced coefficient vector")))
    }

    /// The integer `n` viewed in `o_r`.
    pub fn from_int(&self, n: i64) -> Idx {
        let mut acc: Idx = 0;
        let one = if n >= 0 { 1 } else { self.neg(1) };
        for _ in 0..n.unsigned_abs() {
            acc = self.add(acc, one);
        }
        acc
    }

    pub fn pow(&self, a: Idx, mut e: u64) -> Idx {
        let (mut b, mut acc) = (a, 1 as Idx);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// `varpi^k`, zero when `k >= r`.
    pub fn uniformizer_pow(&self, k: u32) -> Idx {
        if k >= self.level() {
            0
        } else {
            self.pow(self.uniformizer, k as u64)
        }
    }

    /// Reduction map to level `s`.
    pub fn reduce_to(&self, a: Idx, target: &Ring) -> Idx {
        debug_assert!(target.spec.kind == self.spec.kind && target.level() <= self.level());
        let c = &self.coeffs[a as usize];
        let s = target.level();
        let red: Vec<u32> = match self.spec.kind {
            RingKind::IntegersMod | RingKind::Galois => {
                let m = self.spec.p.pow(s);
                c.iter().map(|x| x % m).collect()
            }
            RingKind::TruncatedPoly => c[..s as usize].to_vec(),
        };
        target.index_of(&red)
    }

    /// Digit-wise lift from a lower level (coefficients read as integers / padded).
    pub fn lift_from(&self, a: Idx, source: &Ring) -> Idx {
        let c = source.coeffs(a);
        let lifted: Vec<u32> = match self.spec.kind {
            RingKind::IntegersMod | RingKind::Galois => c.to_vec(),
            RingKind::TruncatedPoly => {
                let mut v = c.to_vec();
                v.resize(self.level() as usize, 0);
                v
            }
        };
        self.index_of(&lifted)
    }

    fn index_of(&self, c: &[u32]) -> Idx {
        let base = match self.spec.kind {
            RingKind::IntegersMod | RingKind::Galois => self.spec.p.pow(self.level()) as usize,
            RingKind::TruncatedPoly => self.q,
        };
        c.iter().rev().fold(0usize, |acc, &x| acc * base + x as usize) as Idx
    }

    /// Teichmüller lift of a residue-field element (index into the level-1 ring).
    pub fn teichmuller(&self, residue_field: &Ring, u: Idx) -> Idx {
        if u == 0 {
            return 0;
        }
        let x = self.lift_from(u, residue_field);
        self.pow(x, (self.q as u64).pow(self.level() - 1))
    }

    pub fn elements(&self) -> impl Iterator<Item = Idx> {
        (0..self.size as u32).map(|i| i as Idx)
    }

    /// Additive generators of `p^k`: `varpi^k` times a residue basis.
    pub fn ideal_additive_generators(&self, k: u32) -> Vec<Idx> {
        if k >= self.level() {
            return vec![];
        }
        let pk = self.uniformizer_pow(k);
        let f = self.spec.f as usize;
        let basis: Vec<Idx> = match self.spec.kind {
            RingKind::IntegersMod => vec![1],
            RingKind::Galois => (0..f)
                .map(|j| {
                    let mut v = vec![0u32; f];
                    v[j] = 1;
                    self.index_of(&v)
                })
                .collect(),
            RingKind::TruncatedPoly => {
                let p = self.spec.p as usize;
                (0..f)
                    .map(|j| {
                        let mut v = vec![0u32; self.level() as usize];
                        v[0] = p.pow(j as u32) as u32;
                        self.index_of(&v)
                    })
                    .collect()
            }
        };
        basis.into_iter().map(|b| self.mul(pk, b)).collect()
    }
}

/// An element together with its ring.
#[derive(Clone)]
pub struct RingElem {
    pub ring: Arc<Ring>,
    pub idx: Idx,
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {}", self.ring.coeffs(self.idx), self.ring.spec)
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.ring.spec == other.ring.spec && self.idx == other.idx
    }
}
impl Eq for RingElem {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl RingElem {
    pub fn new(ring: &Arc<Ring>, idx: Idx) -> Self {
        RingElem { ring: Arc::clone(ring), idx }
    }

    pub fn from_int(ring: &Arc<Ring>, n: i64) -> Self {
        RingElem::new(ring, ring.from_int(n))
    }

    pub fn arith(&self, other: &RingElem, op: ArithOp) -> Result<RingElem> {
        if self.ring.spec != other.ring.spec {
            return Err(Error::SpecMismatch);
        }
        let r = &self.ring;
        let idx = match op {
            ArithOp::Add => r.add(self.idx, other.idx),
            ArithOp::Sub => r.sub(self.idx, other.idx),
            ArithOp::Mul => r.mul(self.idx, other.idx),
        };
        Ok(RingElem::new(r, idx))
    }

    pub fn valuation(&self) -> u32 {
        self.ring.valuation(self.idx)
    }

    pub fn invert(&self) -> Result<RingElem> {
        self.ring.inv(self.idx).map(|i| RingElem::new(&self.ring, i)).ok_or(Error::NotAUnit)
    }

    /// Image in `o_s`.
    pub fn reduce(&self, s: u32) -> Result<RingElem> {
        let r = self.ring.level();
        if s == 0 || s > r {
            return Err(Error::BadLevel { level: s, max: r });
        }
        if s == r {
            return Ok(self.clone());
        }
        let target = Ring::new(self.ring.spec.at_level(s)?)?;
        let idx = self.ring.reduce_to(self.idx, &target);
        Ok(RingElem { ring: target, idx })
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.ring.coeffs(self.idx).to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(lit: &str) -> Arc<Ring> {
        Ring::from_literal(lit).unwrap()
    }

    #[test]
    fn literals_round_trip() {
        for lit in ["zmod:2^2", "galois:2^3:2", "fqt:4:2", "fqt:3:3"] {
            let spec: RingSpec = lit.parse().unwrap();
            assert_eq!(spec.literal(), lit);
        }
        assert_eq!("zmod:4^2".parse::<RingSpec>(), Err(Error::NonPrime(4)));
        assert!("zmod:2".parse::<RingSpec>().is_err());
    }

    #[test]
    fn small_cases() {
        let z4 = ring("zmod:2^2");
        assert_eq!(z4.size(), 4);
        assert_eq!(z4.q(), 2);
        assert_eq!(z4.add(3, 3), 2);
        let f2t = ring("fqt:2:2");
        assert_eq!(f2t.size(), 4);
        let t = f2t.uniformizer();
        assert_eq!(f2t.mul(t, t), 0);
        let gr = ring("galois:2^3:2");
        assert_eq!(gr.size(), 64);
        assert_eq!(gr.spec.modulus, vec![1, 1, 1]);
        // x * x = -x - 1 = 7x + 7
        let x = gr.from_coeffs(&[0, 1]).unwrap();
        assert_eq!(gr.coeffs(gr.mul(x, x)), &[7, 7]);
    }

    #[test]
    fn galois_ring_element_count_by_enumeration() {
        let gr = ring("galois:2^3:2");
        assert_eq!(gr.elements().count(), 64);
        assert_eq!(gr.elements().filter(|&a| gr.is_unit(a)).count(), 64 - 16);
    }

    #[test]
    fn valuations_and_inverses() {
        let z8 = ring("zmod:2^3");
        assert_eq!(z8.valuation(0), 3);
        assert_eq!(z8.valuation(6), 1);
        assert_eq!(z8.inv(3), Some(3));
        assert_eq!(z8.inv(2), None);
        let f3t = ring("fqt:3:2");
        assert_eq!(f3t.valuation(f3t.uniformizer()), 1);
        let f2t = ring("fqt:2:2");
        let one_plus_t = f2t.add(1, f2t.uniformizer());
        assert_eq!(f2t.inv(one_plus_t), Some(one_plus_t));
        let e = RingElem::new(&z8, 2);
        assert_eq!(e.invert(), Err(Error::NotAUnit));
    }

    #[test]
    fn reduction() {
        let z8 = ring("zmod:2^3");
        let five = RingElem::new(&z8, 5);
        assert_eq!(five.reduce(1).unwrap().idx, 1);
        assert_eq!(five.reduce(3).unwrap(), five);
        assert!(five.reduce(4).is_err());
        let gr = ring("galois:2^3:2");
        let a = RingElem::new(&gr, gr.from_coeffs(&[3, 2]).unwrap());
        assert_eq!(a.reduce(1).unwrap().coeffs(), vec![1, 0]);
    }

    #[test]
    fn teichmuller_in_z9() {
        let z9 = ring("zmod:3^2");
        let f3 = ring("zmod:3^1");
        assert_eq!(z9.teichmuller(&f3, 0), 0);
        assert_eq!(z9.teichmuller(&f3, 1), 1);
        // brute force: the unique x = 2 mod 3 with x^2 = 1
        let brute: Vec<Idx> = z9.elements().filter(|&x| x % 3 == 2 && z9.mul(x, x) == 1).collect();
        assert_eq!(brute, vec![8]);
        assert_eq!(z9.teichmuller(&f3, 2), 8);
    }

    #[test]
    fn additive_character_values() {
        let z4 = ring("zmod:2^2");
        assert_eq!((z4.additive_char_exp(1), z4.char_modulus()), (1, 4));
        let f2t = ring("fqt:2:2");
        assert_eq!((f2t.additive_char_exp(f2t.uniformizer()), f2t.char_modulus()), (1, 2));
        assert_eq!(f2t.additive_char_exp(0), 0);
    }

    #[test]
    fn unsupported_sizes() {
        assert!(matches!(RingSpec::new(RingKind::Galois, 5, 3, 3), Err(Error::UnsupportedSize(_))));
        assert!(RingSpec::new(RingKind::IntegersMod, 2, 2, 2).is_err());
    }
}

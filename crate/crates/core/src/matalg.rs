//! Matrices over `o_r`, polynomials over `o_r` and `F_q`, regularity and
//! companion normal forms.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{Idx, Ring};

/// Polynomial with coefficients in a tabulated ring, constant term first.
pub type Poly = Vec<Idx>;

pub fn poly_trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn poly_mul(ring: &Ring, a: &[Idx], b: &[Idx]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ring.add(out[i + j], ring.mul(x, y));
        }
    }
    poly_trim(&mut out);
    out
}

pub fn poly_sub(ring: &Ring, a: &[Idx], b: &[Idx]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| ring.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    poly_trim(&mut out);
    out
}

/// Quotient and remainder by a monic polynomial.
pub fn poly_divrem_monic(ring: &Ring, a: &[Idx], m: &[Idx]) -> (Poly, Poly) {
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let dm = m.len() - 1;
    if rem.len() <= dm {
        return (vec![], rem);
    }
    let mut quot = vec![0; rem.len() - dm];
    while rem.len() > dm {
        let da = rem.len() - 1;
        let c = rem[da];
        quot[da - dm] = c;
        for i in 0..=dm {
            rem[da - dm + i] = ring.sub(rem[da - dm + i], ring.mul(c, m[i]));
        }
        poly_trim(&mut rem);
    }
    poly_trim(&mut quot);
    (quot, rem)
}

/// Monic polynomials of degree `d` over `ring`, in lexicographic order on the
/// constant-first coefficient list.
pub fn monic_polys(ring: &Ring, d: usize) -> Vec<Poly> {
    let size = ring.size();
    let count = size.pow(d as u32);
    let mut out: Vec<Poly> = (0..count)
        .map(|mut x| {
            let mut v: Poly = (0..d)
                .map(|_| {
                    let c = (x % size) as Idx;
                    x /= size;
                    c
                })
                .collect();
            v.push(1);
            v
        })
        .collect();
    out.sort();
    out
}

/// Irreducibility over a field by trial division.
pub fn is_irreducible(field: &Ring, f: &[Idx]) -> bool {
    let d = f.len() - 1;
    d >= 1 && (1..=d / 2).all(|e| monic_polys(field, e).iter().all(|g| !poly_divrem_monic(field, f, g).1.is_empty()))
}

pub fn monic_irreducibles(field: &Ring, d: usize) -> Vec<Poly> {
    monic_polys(field, d).into_iter().filter(|f| is_irreducible(field, f)).collect()
}

/// Square matrix over a tabulated ring.
#[derive(Clone)]
pub struct Mat {
    pub n: usize,
    pub ring: Arc<Ring>,
    pub e: Vec<Idx>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ring.spec == other.ring.spec && self.e == other.e
    }
}
impl Eq for Mat {}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{:?}", self.rows())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatOp {
    Add,
    Sub,
    Mul,
    /// `AB - BA`.
    Commutator,
}

/// Raw product of `n x n` index matrices.
#[inline]
pub fn mul_raw(ring: &Ring, n: usize, a: &[Idx], b: &[Idx], out: &mut [Idx]) {
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                let x = a[i * n + k];
                if x != 0 {
                    s = ring.add(s, ring.mul(x, b[k * n + j]));
                }
            }
            out[i * n + j] = s;
        }
    }
}

pub fn det_raw(ring: &Ring, n: usize, a: &[Idx]) -> Idx {
    // Laplace expansion along the first row; fine for the small N we support.
    match n {
        0 => 1,
        1 => a[0],
        2 => ring.sub(ring.mul(a[0], a[3]), ring.mul(a[1], a[2])),
        _ => {
            let mut acc = 0;
            let mut minor = vec![0; (n - 1) * (n - 1)];
            for c in 0..n {
                if a[c] == 0 {
                    continue;
                }
                let mut k = 0;
                for i in 1..n {
                    for j in 0..n {
                        if j != c {
                            minor[k] = a[i * n + j];
                            k += 1;
                        }
                    }
                }
                let t = ring.mul(a[c], det_raw(ring, n - 1, &minor));
                acc = if c % 2 == 0 { ring.add(acc, t) } else { ring.sub(acc, t) };
            }
            acc
        }
    }
}

impl Mat {
    pub fn zero(ring: &Arc<Ring>, n: usize) -> Mat {
        Mat { n, ring: Arc::clone(ring), e: vec![0; n * n] }
    }

    pub fn identity(ring: &Arc<Ring>, n: usize) -> Mat {
        Mat::scalar(ring, n, 1)
    }

    pub fn scalar(ring: &Arc<Ring>, n: usize, c: Idx) -> Mat {
        let mut m = Mat::zero(ring, n);
        for i in 0..n {
            m.e[i * n + i] = c;
        }
        m
    }

    pub fn from_rows(ring: &Arc<Ring>, rows: &[Vec<Idx>]) -> Result<Mat> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeMismatch("rows must form a non-empty square".into()));
        }
        if rows.iter().flatten().any(|&x| x as usize >= ring.size()) {
            return Err(Error::Parse("entry out of range".into()));
        }
        Ok(Mat { n, ring: Arc::clone(ring), e: rows.concat() })
    }

    /// Companion matrix of a monic polynomial: ones below the diagonal and
    /// `-c_0, ..., -c_{n-1}` in the last column.
    pub fn companion(ring: &Arc<Ring>, f: &[Idx]) -> Mat {
        let n = f.len() - 1;
        let mut m = Mat::zero(ring, n);
        for i in 1..n {
            m.e[i * n + i - 1] = 1;
        }
        for i in 0..n {
            m.e[i * n + n - 1] = ring.neg(f[i]);
        }
        m
    }

    pub fn rows(&self) -> Vec<Vec<Idx>> {
        self.e.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Idx {
        self.e[i * self.n + j]
    }

    fn check(&self, other: &Mat) -> Result<()> {
        if self.ring.spec != other.ring.spec {
            return Err(Error::SpecMismatch);
        }
        if self.n != other.n {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn arith(&self, other: &Mat, op: MatOp) -> Result<Mat> {
        self.check(other)?;
        let r = &self.ring;
        let e = match op {
            MatOp::Add => self.e.iter().zip(&other.e).map(|(&a, &b)| r.add(a, b)).collect(),
            MatOp::Sub => self.e.iter().zip(&other.e).map(|(&a, &b)| r.sub(a, b)).collect(),
            MatOp::Mul => {
                let mut out = vec![0; self.e.len()];
                mul_raw(r, self.n, &self.e, &other.e, &mut out);
                out
            }
            MatOp::Commutator => {
                let ab = self.arith(other, MatOp::Mul)?;
                let ba = other.arith(self, MatOp::Mul)?;
                return ab.arith(&ba, MatOp::Sub);
            }
        };
        Ok(Mat { n: self.n, ring: Arc::clone(r), e })
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.arith(other, MatOp::Mul).expect("matching shapes")
    }

    pub fn scale(&self, c: Idx) -> Mat {
        Mat { n: self.n, ring: Arc::clone(&self.ring), e: self.e.iter().map(|&a| self.ring.mul(c, a)).collect() }
    }

    pub fn trace(&self) -> Idx {
        (0..self.n).fold(0, |acc, i| self.ring.add(acc, self.get(i, i)))
    }

    pub fn det(&self) -> Idx {
        det_raw(&self.ring, self.n, &self.e)
    }

    pub fn is_invertible(&self) -> bool {
        self.ring.is_unit(self.det())
    }

    /// Inverse via the adjugate.
    pub fn inverse(&self) -> Result<Mat> {
        let r = &self.ring;
        let dinv = r.inv(self.det()).ok_or(Error::NotAUnit)?;
        let n = self.n;
        if n == 1 {
            return Ok(Mat { n, ring: Arc::clone(r), e: vec![dinv] });
        }
        let mut out = vec![0; n * n];
        let mut minor = vec![0; (n - 1) * (n - 1)];
        for i in 0..n {
            for j in 0..n {
                let mut k = 0;
                for a in 0..n {
                    for b in 0..n {
                        if a != i && b != j {
                            minor[k] = self.e[a * n + b];
                            k += 1;
                        }
                    }
                }
                let c = det_raw(r, n - 1, &minor);
                let c = if (i + j) % 2 == 0 { c } else { r.neg(c) };
                out[j * n + i] = r.mul(c, dinv);
            }
        }
        Ok(Mat { n, ring: Arc::clone(r), e: out })
    }

    pub fn pow(&self, mut k: u64) -> Mat {
        let mut base = self.clone();
        let mut acc = Mat::identity(&self.ring, self.n);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// Entrywise reduction to a lower level of the same ring kind.
    pub fn reduce_to(&self, target: &Arc<Ring>) -> Mat {
        Mat { n: self.n, ring: Arc::clone(target), e: self.e.iter().map(|&a| self.ring.reduce_to(a, target)).collect() }
    }

    /// Entrywise digit lift from a lower level.
    pub fn lift_from(&self, target: &Arc<Ring>) -> Mat {
        Mat { n: self.n, ring: Arc::clone(target), e: self.e.iter().map(|&a| target.lift_from(a, &self.ring)).collect() }
    }

    /// Image over the residue field.
    pub fn residue(&self) -> Result<Mat> {
        let field = Ring::new(self.ring.spec.at_level(1)?)?;
        Ok(self.reduce_to(&field))
    }

    /// Minimum valuation of the entries.
    pub fn valuation(&self) -> u32 {
        self.e.iter().map(|&a| self.ring.valuation(a)).min().unwrap_or(self.ring.level())
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                e[j * n + i] = self.e[i * n + j];
            }
        }
        Mat { n, ring: Arc::clone(&self.ring), e }
    }

    /// `f(A)` for a polynomial over the same ring.
    pub fn eval_poly(&self, f: &[Idx]) -> Mat {
        let mut acc = Mat::zero(&self.ring, self.n);
        for &c in f.iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                let d = i * self.n + i;
                acc.e[d] = self.ring.add(acc.e[d], c);
            }
        }
        acc
    }

    /// Characteristic polynomial `det(tI - A)` by cofactor expansion over `o_r[t]`.
    pub fn charpoly(&self) -> Poly {
        let n = self.n;
        let r = &self.ring;
        let entries: Vec<Poly> = (0..n * n)
            .map(|k| {
                let (i, j) = (k / n, k % n);
                let mut p = vec![r.neg(self.e[k])];
                if i == j {
                    p.push(1);
                }
                poly_trim(&mut p);
                p
            })
            .collect();
        let cols: Vec<usize> = (0..n).collect();
        poly_det(r, n, &entries, 0, &cols)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.e.iter().map(|&a| serde_json::json!(self.ring.coeffs(a))).collect())
    }

    /// Parses `[[a, b], [c, d]]` where each entry is an integer or a
    /// coefficient list.
    pub fn parse_json(ring: &Arc<Ring>, text: &str) -> Result<Mat> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = v.as_array().ok_or_else(|| Error::Parse("matrix must be a list of rows".into()))?;
        let rows: Vec<Vec<Idx>> = rows
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| Error::Parse("row must be a list".into()))?
                    .iter()
                    .map(|x| parse_entry(ring, x))
                    .collect()
            })
            .collect::<Result<_>>()?;
        Mat::from_rows(ring, &rows)
    }
}

pub fn parse_entry(ring: &Arc<Ring>, v: &Value) -> Result<Idx> {
    if let Some(n) = v.as_i64() {
        return Ok(ring.from_int(n));
    }
    if let Some(list) = v.as_array() {
        let c: Vec<u32> = list
            .iter()
            .map(|x| x.as_u64().map(|y| y as u32).ok_or_else(|| Error::Parse("bad coefficient".into())))
            .collect::<Result<_>>()?;
        return ring.from_coeffs(&c);
    }
    Err(Error::Parse(format!("cannot read ring element from {v}")))
}

fn poly_det(ring: &Ring, n: usize, m: &[Poly], row: usize, cols: &[usize]) -> Poly {
    if cols.len() == 1 {
        return m[row * n + cols[0]].clone();
    }
    let mut acc: Poly = vec![];
    for (k, &c) in cols.iter().enumerate() {
        let entry = &m[row * n + c];
        if entry.is_empty() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let t = poly_mul(ring, entry, &poly_det(ring, n, m, row + 1, &rest));
        acc = if k % 2 == 0 {
            poly_sub(ring, &acc, &poly_sub(ring, &[], &t))
        } else {
            poly_sub(ring, &acc, &t)
        };
    }
    acc
}

/// Row-reduces over a field, returning the reduced nonzero rows.
pub fn row_reduce(field: &Ring, mut rows: Vec<Vec<Idx>>) -> Vec<Vec<Idx>> {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = field.inv(rows[rank][col]).expect("field");
        for x in rows[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let c = rows[i][col];
                for j in 0..width {
                    let t = field.mul(c, rows[rank][j]);
                    rows[i][j] = field.sub(rows[i][j], t);
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn rank(field: &Ring, rows: Vec<Vec<Idx>>) -> usize {
    row_reduce(field, rows).len()
}

/// Minimal polynomial over a field: the first linear dependency among powers.
pub fn minpoly_fq(m: &Mat) -> Poly {
    let field = &m.ring;
    let n = m.n;
    let mut powers = vec![Mat::identity(field, n)];
    loop {
        let k = powers.len();
        let next = powers[k - 1].mul(m);
        // Solve next = sum c_i powers[i]: columns are vectorised powers.
        let width = k + 1;
        let rows: Vec<Vec<Idx>> = (0..n * n)
            .map(|e| {
                let mut r: Vec<Idx> = powers.iter().map(|p| p.e[e]).collect();
                r.push(next.e[e]);
                r
            })
            .collect();
        let red = row_reduce(field, rows);
        let consistent = red.iter().all(|r| r[..k].iter().any(|&x| x != 0) || r[k] == 0);
        if consistent && rank(field, red.iter().map(|r| r[..k].to_vec()).collect()) == k {
            // Unique solution: read it off the pivots.
            let mut coeffs = vec![0; k];
            for r in &red {
                if let Some(p) = r[..k].iter().position(|&x| x != 0) {
                    coeffs[p] = r[width - 1];
                }
            }
            let mut f: Poly = coeffs.iter().map(|&c| field.neg(c)).collect();
            f.push(1);
            return f;
        }
        powers.push(next);
    }
}

pub fn charpoly_fq(m: &Mat) -> Poly {
    m.charpoly()
}

/// `dim_{F_q}` of the centralizer of a matrix over a field.
pub fn centralizer_dim_fq(m: &Mat) -> usize {
    let n = m.n;
    let field = &m.ring;
    // Linear map X -> XM - MX on the basis E_ab.
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut x = Mat::zero(field, n);
            x.e[a * n + b] = 1;
            rows.push(x.arith(m, MatOp::Commutator).unwrap().e);
        }
    }
    n * n - rank(field, rows)
}

/// An irreducible factor of `charpoly(beta mod p)` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    /// Over `F_q`, as indices of the level-1 ring, constant first.
    pub poly: Vec<Idx>,
    pub mult: u32,
    pub deg: u32,
}

#[derive(Debug, Clone)]
pub struct OrbitDescriptor {
    pub beta: Mat,
    pub charpoly: Poly,
    pub companion: Mat,
    pub regular: bool,
    pub factorization: Vec<Factor>,
    pub lambda: Vec<u32>,
}

/// Factorization over a field by trial division, ordered by (degree, lex).
pub fn factor_fq(field: &Ring, f: &[Idx]) -> Vec<Factor> {
    let mut rest = f.to_vec();
    let mut out = vec![];
    let n = f.len() - 1;
    for d in 1..=n {
        if rest.len() <= 1 {
            break;
        }
        for g in monic_irreducibles(field, d) {
            let mut mult = 0;
            loop {
                let (qt, rm) = poly_divrem_monic(field, &rest, &g);
                if !rm.is_empty() {
                    break;
                }
                rest = qt;
                mult += 1;
            }
            if mult > 0 {
                out.push(Factor { poly: g, mult, deg: d as u32 });
            }
        }
    }
    out
}

pub fn is_regular(beta: &Mat) -> Result<bool> {
    let bar = beta.residue()?;
    Ok(charpoly_fq(&bar) == minpoly_fq(&bar))
}

/// The centralizer-dimension criterion; must agree with [`is_regular`].
pub fn is_regular_by_centralizer(beta: &Mat) -> Result<bool> {
    let bar = beta.residue()?;
    Ok(centralizer_dim_fq(&bar) == beta.n)
}

pub fn factor_mod_p(beta: &Mat) -> Result<OrbitDescriptor> {
    let bar = beta.residue()?;
    let charpoly = beta.charpoly();
    let factorization = factor_fq(&bar.ring, &charpoly_fq(&bar));
    let lambda = factorization
        .iter()
        .flat_map(|f| std::iter::repeat_n(f.deg, f.mult as usize))
        .collect();
    Ok(OrbitDescriptor {
        beta: beta.clone(),
        companion: Mat::companion(&beta.ring, &charpoly),
        charpoly,
        regular: charpoly_fq(&bar) == minpoly_fq(&bar),
        factorization,
        lambda,
    })
}

impl OrbitDescriptor {
    pub fn h(&self) -> usize {
        self.factorization.len()
    }

    pub fn to_json(&self) -> Value {
        let r = &self.beta.ring;
        serde_json::json!({
            "beta": self.beta.to_json(),
            "charpoly": self.charpoly.iter().map(|&c| r.coeffs(c).to_vec()).collect::<Vec<_>>(),
            "regular": self.regular,
            "lambda": self.lambda,
            "factorization": self.factorization,
        })
    }
}

/// Regular elements are conjugate exactly when their companion matrices agree.
pub fn conjugate_regular(a: &OrbitDescriptor, b: &OrbitDescriptor) -> Result<bool> {
    if !a.regular || !b.regular {
        return Err(Error::RegularityViolation);
    }
    Ok(a.companion == b.companion)
}

pub const DEFAULT_ORBIT_CAP: u128 = 1 << 20;

/// One companion matrix per monic degree-`n` polynomial over `o_s`.
pub fn regular_class_reps(n: usize, ring_s: &Arc<Ring>, cap: u128) -> Result<Vec<OrbitDescriptor>> {
    let count = (ring_s.size() as u128).pow(n as u32);
    if count > cap {
        return Err(Error::DeskScaleExceeded { what: "regular orbit list".into(), size: count, cap });
    }
    monic_polys(ring_s, n)
        .iter()
        .map(|f| factor_mod_p(&Mat::companion(ring_s, f)))
        .filter(|d| d.as_ref().map_or(true, |d| d.regular))
        .collect()
}

/// Total order used wherever matrices need a canonical order.
pub fn cmp_mat(a: &Mat, b: &Mat) -> Ordering {
    a.e.cmp(&b.e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(lit: &str) -> Arc<Ring> {
        Ring::from_literal(lit).unwrap()
    }

    #[test]
    fn trace_det_basics() {
        let z4 = ring("zmod:2^2");
        assert_eq!(Mat::identity(&z4, 2).trace(), 2);
        let f2 = ring("zmod:2^1");
        let c = Mat::companion(&f2, &[1, 1, 1]);
        assert_eq!(c.rows(), vec![vec![0, 1], vec![1, 1]]);
        assert_eq!(c.det(), 1);
        let z8 = ring("zmod:2^3");
        let a = Mat::from_rows(&z8, &[vec![1, 2, 3], vec![0, 5, 7], vec![6, 1, 4]]).unwrap();
        let b = Mat::from_rows(&z8, &[vec![2, 2, 1], vec![3, 0, 7], vec![1, 1, 1]]).unwrap();
        assert_eq!(a.mul(&b).trace(), b.mul(&a).trace());
        assert_eq!(a.mul(&b).det(), z8.mul(a.det(), b.det()));
    }

    #[test]
    fn shape_and_spec_errors() {
        let z4 = ring("zmod:2^2");
        let z8 = ring("zmod:2^3");
        let a = Mat::identity(&z4, 2);
        assert_eq!(a.arith(&Mat::identity(&z8, 2), MatOp::Add), Err(Error::SpecMismatch));
        assert!(matches!(a.arith(&Mat::identity(&z4, 3), MatOp::Add), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn char_and_min_polys() {
        let f2 = ring("zmod:2^1");
        let z = Mat::zero(&f2, 2);
        assert_eq!(charpoly_fq(&z), vec![0, 0, 1]);
        assert_eq!(minpoly_fq(&z), vec![0, 1]);
        let c = Mat::companion(&f2, &[1, 1, 1]);
        assert_eq!(charpoly_fq(&c), vec![1, 1, 1]);
        assert_eq!(minpoly_fq(&c), vec![1, 1, 1]);
        let f3 = ring("zmod:3^1");
        let d = Mat::identity(&f3, 2);
        assert_eq!(charpoly_fq(&d), vec![1, 1, 1]); // (t-1)^2 = t^2 - 2t + 1 = t^2 + t + 1
        assert_eq!(minpoly_fq(&d), vec![2, 1]);
    }

    #[test]
    fn regularity() {
        let z4 = ring("zmod:2^2");
        assert!(!is_regular(&Mat::scalar(&z4, 2, 3)).unwrap());
        assert!(is_regular(&Mat::companion(&z4, &[2, 3, 1])).unwrap());
        let z16 = ring("zmod:2^4");
        let b = Mat::from_rows(&z16, &[vec![0, 2], vec![0, 0]]).unwrap();
        assert!(!is_regular(&b).unwrap());
        assert!(!is_regular_by_centralizer(&b).unwrap());
    }

    #[test]
    fn factorizations() {
        let f2 = ring("zmod:2^1");
        let d = factor_mod_p(&Mat::companion(&f2, &[0, 1, 1])).unwrap();
        assert_eq!((d.lambda.clone(), d.h()), (vec![1, 1], 2));
        let d = factor_mod_p(&Mat::companion(&f2, &[1, 1, 1])).unwrap();
        assert_eq!((d.lambda.clone(), d.h()), (vec![2], 1));
        let d = factor_mod_p(&Mat::companion(&f2, &[0, 0, 1])).unwrap();
        assert_eq!(d.lambda, vec![1, 1]);
        assert_eq!(d.factorization, vec![Factor { poly: vec![0, 1], mult: 2, deg: 1 }]);
    }

    #[test]
    fn class_rep_counts() {
        let f2 = ring("zmod:2^1");
        let reps = regular_class_reps(2, &f2, DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(reps.len(), 4);
        let z4 = ring("zmod:2^2");
        assert_eq!(regular_class_reps(2, &z4, DEFAULT_ORBIT_CAP).unwrap().len(), 16);
        assert_eq!(regular_class_reps(1, &z4, DEFAULT_ORBIT_CAP).unwrap().len(), 4);
        assert!(regular_class_reps(2, &z4, 3).is_err());
    }

    #[test]
    fn cayley_hamilton_and_inverse() {
        let gr = ring("galois:2^2:2");
        let a = Mat::from_rows(&gr, &[vec![3, 7], vec![12, 5]]).unwrap();
        assert!(a.eval_poly(&a.charpoly()).e.iter().all(|&x| x == 0));
        if let Ok(inv) = a.inverse() {
            assert_eq!(a.mul(&inv), Mat::identity(&gr, 2));
        }
        let f3t = ring("fqt:3:2");
        let b = Mat::from_rows(&f3t, &[vec![1, 3, 0], vec![2, 4, 1], vec![0, 5, 7]]).unwrap();
        assert!(b.eval_poly(&b.charpoly()).e.iter().all(|&x| x == 0));
        assert_eq!(b.mul(&b.inverse().unwrap()), Mat::identity(&f3t, 3));
    }

    #[test]
    fn json_round_trip() {
        let z8 = ring("zmod:2^3");
        let m = Mat::parse_json(&z8, "[[0, 2], [-1, 3]]").unwrap();
        assert_eq!(m.rows(), vec![vec![0, 2], vec![7, 3]]);
        assert_eq!(m.to_json(), serde_json::json!([[0], [2], [7], [3]]));
    }
}

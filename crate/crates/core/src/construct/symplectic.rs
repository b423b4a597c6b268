//! Elementary abelian sections `J/H` as `F_p`-spaces, the commutator
//! pairing on them, radicals and maximal isotropic subspaces.

use std::sync::Arc;

use crate::charthy::LinearChar;
use crate::error::{Error, Result};
use crate::grp::{GroupContext, Subgroup, ABSENT};

pub type Vector = Vec<u32>;

/// Row-reduces in place over `F_p`; returns the pivot columns.
pub fn rref(p: u32, rows: &mut Vec<Vector>) -> Vec<usize> {
    let p64 = p as u64;
    let width = rows.first().map_or(0, |r| r.len());
    let mut pivots = vec![];
    let mut top = 0;
    for col in 0..width {
        let Some(piv) = (top..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(top, piv);
        let inv = inv_mod(rows[top][col], p);
        for x in rows[top].iter_mut() {
            *x = ((*x as u64 * inv as u64) % p64) as u32;
        }
        let pivot_row = rows[top].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != top && row[col] != 0 {
                let f = row[col] as u64;
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = ((*x as u64 + (p64 - f) * y as u64) % p64) as u32;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    pivots
}

fn inv_mod(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a as u64 * b as u64) % p as u64 == 1).expect("nonzero element of F_p")
}

/// Basis of `{v : M v = 0}` for a matrix given by rows of width `n`.
pub fn nullspace(p: u32, n: usize, rows: &[Vector]) -> Vec<Vector> {
    let mut m = rows.to_vec();
    let pivots = rref(p, &mut m);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u32; n];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = (p - row[f] % p) % p;
            }
            v
        })
        .collect()
}

/// Reduces `v` modulo the row space of an rref basis with the given pivots.
pub fn reduce_mod(p: u32, basis: &[Vector], pivots: &[usize], v: &[u32]) -> Vector {
    let p64 = p as u64;
    let mut out = v.to_vec();
    for (row, &pc) in basis.iter().zip(pivots) {
        let f = out[pc] as u64;
        if f != 0 {
            for (x, &y) in out.iter_mut().zip(row) {
                *x = ((*x as u64 + (p64 - f) * y as u64) % p64) as u32;
            }
        }
    }
    out
}

pub fn in_span(p: u32, basis: &[Vector], v: &[u32]) -> bool {
    let mut b = basis.to_vec();
    let piv = rref(p, &mut b);
    reduce_mod(p, &b, &piv, v).iter().all(|&x| x == 0)
}

pub fn span_dim(p: u32, vectors: &[Vector]) -> usize {
    let mut b = vectors.to_vec();
    rref(p, &mut b).len()
}

/// The quotient `J/H` with a fixed basis and coordinates for every element.
#[derive(Debug)]
pub struct QuotientSpace {
    pub big: Arc<Subgroup>,
    pub small: Arc<Subgroup>,
    pub p: u32,
    /// Elements of `J` whose images form the basis.
    pub basis: Vec<u32>,
    /// Coordinate code (base `p`, basis index `k` at digit `k`) per position in `J`.
    code: Vec<u32>,
}

impl QuotientSpace {
    pub fn new(ctx: &GroupContext, big: &Arc<Subgroup>, small: &Arc<Subgroup>) -> Result<QuotientSpace> {
        if !small.is_subgroup_of(big) {
            return Err(Error::NotASubgroup(format!("{} ⊄ {}", small.name, big.name)));
        }
        let p = ctx.ring.p();
        for &a in &big.gens {
            if !small.contains(ctx.pow(a, p as u64)) {
                return Err(Error::CertificateFailed(format!("{}/{} is not elementary abelian", big.name, small.name)));
            }
            for &b in &big.gens {
                if !small.contains(ctx.commutator(a, b)) {
                    return Err(Error::CertificateFailed(format!("{}/{} is not abelian", big.name, small.name)));
                }
            }
        }
        let mut code = vec![ABSENT; big.order()];
        let mut members: Vec<u32> = small.elems.clone();
        for &h in &small.elems {
            code[big.position(h).expect("subgroup") as usize] = 0;
        }
        let mut basis = vec![];
        let mut weight = 1u32;
        let candidates: Vec<u32> = big.gens.iter().chain(&big.elems).copied().collect();
        for g in candidates {
            if members.len() == big.order() {
                break;
            }
            if code[big.position(g).expect("in J") as usize] != ABSENT {
                continue;
            }
            let mut fresh = vec![];
            let mut gj = ctx.identity();
            for j in 1..p {
                gj = ctx.mul(gj, g);
                for &s in &members {
                    let x = ctx.mul(s, gj);
                    let pos = big.position(x).expect("in J") as usize;
                    code[pos] = code[big.position(s).expect("in J") as usize] + j * weight;
                    fresh.push(x);
                }
            }
            members.extend(fresh);
            basis.push(g);
            weight *= p;
        }
        Ok(QuotientSpace { big: Arc::clone(big), small: Arc::clone(small), p, basis, code })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coords(&self, g: u32) -> Option<Vector> {
        let mut c = self.code[self.big.position(g)? as usize];
        Some(
            (0..self.dim())
                .map(|_| {
                    let d = c % self.p;
                    c /= self.p;
                    d
                })
                .collect(),
        )
    }

    /// Preimage in `J` of a subspace given by a spanning set.
    pub fn preimage(&self, ctx: &GroupContext, name: &str, span: &[Vector]) -> Result<Subgroup> {
        let mut rows = span.to_vec();
        let piv = rref(self.p, &mut rows);
        let elems: Vec<u32> = self
            .big
            .elems
            .iter()
            .copied()
            .filter(|&g| {
                let v = self.coords(g).expect("in J");
                reduce_mod(self.p, &rows, &piv, &v).iter().all(|&x| x == 0)
            })
            .collect();
        Subgroup::from_elems(ctx, name, elems)
    }

    /// Matrix (as columns) of conjugation by `g` on the quotient.
    pub fn action(&self, ctx: &GroupContext, g: u32) -> Option<Vec<Vector>> {
        self.basis.iter().map(|&b| self.coords(ctx.conj(g, b))).collect()
    }
}

/// The pairing `(x, y) -> theta([x, y])` on `J/H`, valued in `F_p`.
#[derive(Debug)]
pub struct SymplecticSpace {
    pub space: QuotientSpace,
    pub gram: Vec<Vector>,
    pub radical: Vec<Vector>,
}

impl SymplecticSpace {
    /// `theta` must be defined on all commutators of `J` with values in `mu_p`.
    pub fn new(ctx: &GroupContext, space: QuotientSpace, theta: &LinearChar) -> Result<SymplecticSpace> {
        let p = space.p;
        let step = theta.cc.l / p as u64;
        let d = space.dim();
        let mut gram = vec![vec![0u32; d]; d];
        for i in 0..d {
            for j in 0..d {
                let c = ctx.commutator(space.basis[i], space.basis[j]);
                let e = theta
                    .exp(c)
                    .ok_or_else(|| Error::CertificateFailed("commutator outside the domain of theta".into()))?
                    as u64;
                if !e.is_multiple_of(step) {
                    return Err(Error::CertificateFailed("pairing is not mu_p-valued".into()));
                }
                gram[i][j] = (e / step) as u32;
            }
        }
        let sym = SymplecticSpace { radical: nullspace(p, d, &gram), space, gram };
        if !sym.is_alternating() {
            return Err(Error::CertificateFailed("pairing is not alternating".into()));
        }
        Ok(sym)
    }

    pub fn p(&self) -> u32 {
        self.space.p
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn pair(&self, u: &[u32], v: &[u32]) -> u32 {
        let p = self.p() as u64;
        let mut acc = 0u64;
        for (i, &a) in u.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in v.iter().enumerate() {
                acc += a as u64 * b as u64 * self.gram[i][j] as u64;
            }
        }
        (acc % p) as u32
    }

    pub fn is_alternating(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| self.gram[i][i] == 0 && (0..d).all(|j| (self.gram[i][j] + self.gram[j][i]).is_multiple_of(self.p())))
    }

    /// `{v : <u, v> = 0 for all u in span}`.
    pub fn perp(&self, span: &[Vector]) -> Vec<Vector> {
        let d = self.dim();
        let p = self.p() as u64;
        let rows: Vec<Vector> = span
            .iter()
            .map(|u| (0..d).map(|j| ((0..d).map(|i| u[i] as u64 * self.gram[i][j] as u64).sum::<u64>() % p) as u32).collect())
            .collect();
        nullspace(self.p(), d, &rows)
    }

    pub fn is_isotropic(&self, span: &[Vector]) -> bool {
        span.iter().all(|u| span.iter().all(|v| self.pair(u, v) == 0))
    }

    pub fn is_lagrangian(&self, span: &[Vector]) -> bool {
        self.is_isotropic(span) && span_dim(self.p(), span) == span_dim(self.p(), &self.perp(span))
    }

    /// A maximal isotropic subspace containing the radical, grown greedily
    /// from the basis of `U^⊥`; `skip` rotates the first choice so that a
    /// different subspace can be produced on request.
    pub fn lagrangian(&self, skip: usize) -> Vec<Vector> {
        let p = self.p();
        let mut u = self.radical.clone();
        let mut first = true;
        loop {
            let cands: Vec<Vector> = self.perp(&u).into_iter().filter(|v| !in_span(p, &u, v)).collect();
            if cands.is_empty() {
                let mut out = u;
                rref(p, &mut out);
                return out;
            }
            let pick = if first { skip % cands.len() } else { 0 };
            first = false;
            u.push(cands[pick].clone());
        }
    }

    /// A maximal isotropic subspace stable under the given linear maps
    /// (columns), which must generate a `p`-group preserving the pairing.
    pub fn invariant_lagrangian(&self, actions: &[Vec<Vector>]) -> Result<Vec<Vector>> {
        let p = self.p();
        let d = self.dim();
        let mut u = self.radical.clone();
        loop {
            let mut basis = u.clone();
            let piv = rref(p, &mut basis);
            let perp = self.perp(&u);
            if span_dim(p, &perp) == basis.len() {
                return Ok(basis);
            }
            // Constraints: v ⊥ U and (A - 1) v ∈ U for each action A.
            let mut rows: Vec<Vector> = self.perp_rows(&u);
            for a in actions {
                let images: Vec<Vector> = (0..d)
                    .map(|k| {
                        let mut col = a[k].clone();
                        col[k] = (col[k] + p - 1) % p;
                        reduce_mod(p, &basis, &piv, &col)
                    })
                    .collect();
                for i in 0..d {
                    rows.push((0..d).map(|k| images[k][i]).collect());
                }
            }
            let fixed = nullspace(p, d, &rows);
            match fixed.into_iter().find(|v| !in_span(p, &basis, v)) {
                Some(v) => u.push(v),
                None => return self.invariant_lagrangian_exhaustive(actions),
            }
        }
    }

    fn perp_rows(&self, span: &[Vector]) -> Vec<Vector> {
        let d = self.dim();
        let p = self.p() as u64;
        span.iter()
            .map(|u| (0..d).map(|j| ((0..d).map(|i| u[i] as u64 * self.gram[i][j] as u64).sum::<u64>() % p) as u32).collect())
            .collect()
    }

    fn invariant_lagrangian_exhaustive(&self, actions: &[Vec<Vector>]) -> Result<Vec<Vector>> {
        let p = self.p();
        let d = self.dim();
        let total = (p as u64).checked_pow(d as u32).filter(|&t| t <= 1 << 16).ok_or(Error::InvariantLagrangianNotFound)?;
        let vectors: Vec<Vector> = (0..total)
            .map(|mut c| {
                (0..d)
                    .map(|_| {
                        let x = (c % p as u64) as u32;
                        c /= p as u64;
                        x
                    })
                    .collect()
            })
            .collect();
        let mut u = self.radical.clone();
        loop {
            if self.is_lagrangian(&u) && is_invariant(p, &u, actions) {
                let mut out = u;
                rref(p, &mut out);
                return Ok(out);
            }
            let next = vectors.iter().find(|v| {
                if in_span(p, &u, v) {
                    return false;
                }
                let mut w = u.clone();
                w.push((*v).clone());
                self.is_isotropic(&w) && is_invariant(p, &w, actions)
            });
            match next {
                Some(v) => u.push(v.clone()),
                None => return Err(Error::InvariantLagrangianNotFound),
            }
        }
    }
}

pub fn apply(p: u32, cols: &[Vector], v: &[u32]) -> Vector {
    let d = v.len();
    (0..d)
        .map(|i| ((0..d).map(|k| cols[k][i] as u64 * v[k] as u64).sum::<u64>() % p as u64) as u32)
        .collect()
}

pub fn is_invariant(p: u32, span: &[Vector], actions: &[Vec<Vector>]) -> bool {
    actions.iter().all(|a| span.iter().all(|v| in_span(p, span, &apply(p, a, v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(p: u32) -> SymplecticSpace {
        let gram = vec![vec![0, 1], vec![p - 1, 0]];
        let space = QuotientSpace {
            big: Arc::new(dummy()),
            small: Arc::new(dummy()),
            p,
            basis: vec![0, 0],
            code: vec![],
        };
        SymplecticSpace { radical: nullspace(p, 2, &gram), space, gram }
    }

    fn dummy() -> Subgroup {
        let ctx = GroupContext::from_literal("zmod:2^1", 1, 10).unwrap();
        ctx.generated("1", &[])
    }

    #[test]
    fn linear_algebra() {
        assert_eq!(nullspace(3, 3, &[vec![1, 1, 0]]), vec![vec![2, 1, 0], vec![0, 0, 1]]);
        assert_eq!(span_dim(2, &[vec![1, 1], vec![0, 1], vec![1, 0]]), 2);
        assert!(in_span(5, &[vec![1, 2]], &[3, 1]));
    }

    #[test]
    fn hyperbolic_plane() {
        let s = plane(2);
        assert!(s.radical.is_empty());
        let lines: std::collections::BTreeSet<Vec<Vector>> = (0..2).map(|k| s.lagrangian(k)).collect();
        assert_eq!(lines.len(), 2);
        for l in &lines {
            assert!(s.is_lagrangian(l));
            assert_eq!(l.len(), 1);
        }
        // Three lines in F_2^2, all isotropic.
        let all: Vec<Vector> = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        assert!(all.iter().all(|v| s.is_lagrangian(std::slice::from_ref(v))));
        // Swapping the basis vectors preserves the form over F_2; the line <(1,1)> is fixed.
        let swap = vec![vec![0, 1], vec![1, 0]];
        let inv = s.invariant_lagrangian(std::slice::from_ref(&swap)).unwrap();
        assert_eq!(inv, vec![vec![1, 1]]);
        assert!(is_invariant(2, &inv, &[swap]));
    }

    #[test]
    fn zero_form() {
        let gram = vec![vec![0; 3]; 3];
        let s = SymplecticSpace { radical: nullspace(2, 3, &gram), space: plane(2).space, gram };
        assert_eq!(s.lagrangian(0).len(), 3);
    }
}

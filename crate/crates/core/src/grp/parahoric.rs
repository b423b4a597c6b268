//! The parahoric orders `A_min ⊆ A_max = g_r`, their radicals and the
//! subgroup lattice built from them.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matalg::{factor_mod_p, Mat, OrbitDescriptor};
use crate::ring::{Idx, Ring};

use super::{centralizer, GroupContext, Subgroup};

/// Block structure of a standard parahoric order.
#[derive(Debug, Clone)]
pub struct ParahoricData {
    /// Block sizes, top-left first.
    pub lambda: Vec<u32>,
    /// Flag length: the number of blocks.
    pub e: u32,
    block_of: Vec<usize>,
    /// The (possibly conjugated) element the order is attached to.
    pub beta: Mat,
    /// `g` with `beta = g * original * g^{-1}`.
    pub conjugator: Mat,
}

impl ParahoricData {
    fn with_blocks(lambda: Vec<u32>, beta: Mat, conjugator: Mat) -> Self {
        let block_of = lambda.iter().enumerate().flat_map(|(b, &d)| std::iter::repeat_n(b, d as usize)).collect();
        ParahoricData { e: lambda.len() as u32, lambda, block_of, beta, conjugator }
    }

    /// `A_max = g_r`, with `e = 1`.
    pub fn maximal(beta: &Mat) -> Self {
        let id = Mat::identity(&beta.ring, beta.n);
        ParahoricData::with_blocks(vec![beta.n as u32], beta.clone(), id)
    }

    /// `A_min` for a regular element. The element is conjugated so that its
    /// reduction is block upper triangular with companion blocks in the
    /// canonical factor order.
    pub fn minimal(desc: &OrbitDescriptor) -> Result<Self> {
        if !desc.regular {
            return Err(Error::RegularityViolation);
        }
        let beta = &desc.beta;
        let ring = &beta.ring;
        let n = beta.n;
        let field = Ring::new(ring.spec.at_level(1)?)?;
        let bar = beta.reduce_to(&field);
        let blocks: Vec<&[Idx]> = desc
            .factorization
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.poly.as_slice(), f.mult as usize))
            .collect();
        let lambda: Vec<u32> = blocks.iter().map(|f| f.len() as u32 - 1).collect();
        let mut offsets = vec![0usize];
        for &d in &lambda {
            offsets.push(offsets.last().unwrap() + d as usize);
        }
        let target: Vec<Mat> = blocks.iter().map(|f| Mat::companion(&field, f)).collect();
        let fits = |m: &Mat| -> bool {
            for (a, ta) in target.iter().enumerate() {
                for b in 0..=a {
                    for i in offsets[a]..offsets[a + 1] {
                        for j in offsets[b]..offsets[b + 1] {
                            let want = if a == b { ta.get(i - offsets[a], j - offsets[b]) } else { 0 };
                            if m.get(i, j) != want {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        };
        let g1 = GroupContext::new(&field, n, u128::MAX)?;
        let found = (0..g1.order() as u32).find(|&g| {
            let m = g1.mat(g);
            fits(&m.mul(&bar).mul(&g1.mat(g1.inv(g))))
        });
        let g = found.ok_or_else(|| Error::CertificateFailed("no block-triangular conjugate of the reduction".into()))?;
        let gbar = g1.mat(g);
        let lift = Mat { n, ring: Arc::clone(ring), e: gbar.e.iter().map(|&u| ring.teichmuller(&field, u)).collect() };
        let conj = lift.mul(beta).mul(&lift.inverse()?);
        Ok(ParahoricData::with_blocks(lambda, conj, lift))
    }

    /// Required valuation of entry `(i, j)` for membership in `P^k`.
    pub fn threshold(&self, k: i64, i: usize, j: usize, r: u32) -> u32 {
        let (a, b) = (self.block_of[i] as i64, self.block_of[j] as i64);
        let t = (k - (b - a)).div_euclid(self.e as i64) + ((k - (b - a)).rem_euclid(self.e as i64) != 0) as i64;
        t.clamp(0, r as i64) as u32
    }

    /// Membership of a matrix in `P^k` (with `P^0 = A`).
    pub fn in_ideal(&self, m: &Mat, k: i64) -> bool {
        let n = m.n;
        let r = m.ring.level();
        (0..n).all(|i| (0..n).all(|j| m.ring.valuation(m.get(i, j)) >= self.threshold(k, i, j, r)))
    }

    /// Additive generators of `P^k`: `varpi^t E_ij` times a residue basis.
    pub fn ideal_generators(&self, ring: &Arc<Ring>, n: usize, k: i64) -> Vec<Mat> {
        let r = ring.level();
        let mut out = vec![];
        for i in 0..n {
            for j in 0..n {
                for c in ring.ideal_additive_generators(self.threshold(k, i, j, r)) {
                    let mut m = Mat::zero(ring, n);
                    m.e[i * n + j] = c;
                    out.push(m);
                }
            }
        }
        out
    }

    /// `U^0 = A^x`, `U^k = 1 + P^k`.
    pub fn unit_filtration(&self, ctx: &GroupContext, k: u32) -> Result<Subgroup> {
        let name = format!("U^{k}");
        if k == 0 {
            return ctx.filter(&name, |g| self.in_ideal(&ctx.mat(g), 0));
        }
        ctx.filter(&name, |g| self.in_ideal(&ctx.minus_one(g), k as i64))
    }

    /// `p A = P^e`, checked entry by entry over the whole ring.
    pub fn check_pa_equals_pe(&self, ring: &Ring, n: usize) -> bool {
        let r = ring.level();
        let pi = ring.uniformizer();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let ta = self.threshold(0, i, j, r);
                let te = self.threshold(self.e as i64, i, j, r);
                let mut pa = vec![false; ring.size()];
                for x in ring.elements().filter(|&x| ring.valuation(x) >= ta) {
                    pa[ring.mul(pi, x) as usize] = true;
                }
                ring.elements().all(|y| pa[y as usize] == (ring.valuation(y) >= te))
            })
        })
    }
}

/// The subgroups used by the odd-level construction.
#[derive(Debug)]
pub struct ParahoricLattice {
    pub data: ParahoricData,
    pub c: Arc<Subgroup>,
    pub u_m: Arc<Subgroup>,
    pub u_m1: Arc<Subgroup>,
    pub k1: Arc<Subgroup>,
    pub k_l: Arc<Subgroup>,
    pub k_lp: Arc<Subgroup>,
    pub j_m1: Arc<Subgroup>,
    pub h_m1: Arc<Subgroup>,
    pub j_big_m1: Arc<Subgroup>,
    pub h_big_m1: Arc<Subgroup>,
    pub j_mm: Arc<Subgroup>,
    pub ck: Arc<Subgroup>,
}

fn gl_order(q: u128, d: u32) -> u128 {
    (0..d).map(|i| q.pow(d) - q.pow(i)).product()
}

impl ParahoricLattice {
    /// Builds and checks the lattice for a regular `beta` at odd level.
    pub fn new(ctx: &GroupContext, beta: &Mat) -> Result<Self> {
        if ctx.r.is_multiple_of(2) {
            return Err(Error::BadParity("the parahoric lattice needs odd r".into()));
        }
        let desc = factor_mod_p(beta)?;
        let data = ParahoricData::minimal(&desc)?;
        let e = data.e;
        let c = centralizer(ctx, &data.beta)?.renamed("C");
        let u_m = data.unit_filtration(ctx, 0)?.renamed("U_m");
        let u_m1 = data.unit_filtration(ctx, 1)?.renamed("U_m^1");
        let u_m_el = data.unit_filtration(ctx, e * ctx.lp)?;
        let u_m_el1 = data.unit_filtration(ctx, e * ctx.lp + 1)?;
        let k1 = ctx.congruence_kernel(1)?;
        let k_l = ctx.congruence_kernel(ctx.l)?;
        let k_lp = ctx.congruence_kernel(ctx.lp)?;
        let c_um1 = c.intersect(ctx, &u_m1);
        let c_k1 = c.intersect(ctx, &k1);
        let j_m1 = ctx.join("J_m^1", &[&c_um1, &u_m_el]);
        let h_m1 = ctx.join("H_m^1", &[&c_um1, &u_m_el1]);
        let j_big_m1 = ctx.join("J_M^1", &[&c_k1, &k_lp]);
        let h_big_m1 = ctx.join("H_M^1", &[&c_k1, &k_l]);
        let j_mm = ctx.join("J_mM", &[&c_um1, &k_lp]);
        let ck = ctx.join("CK^l'", &[&c, &k_lp]);

        let q = ctx.ring.q() as u128;
        let levi: u128 = data.lambda.iter().map(|&d| gl_order(q, d)).product();
        let fail = |what: &str| Err(Error::CertificateFailed(what.to_string()));
        if (u_m.order() / u_m1.order()) as u128 != levi || u_m.order() % u_m1.order() != 0 {
            return fail("|U_m / U_m^1| differs from the Levi order");
        }
        if !h_big_m1.is_subgroup_of(&h_m1) {
            return fail("H_M^1 is not contained in H_m^1");
        }
        if !j_m1.is_subgroup_of(&j_mm) || !j_big_m1.is_subgroup_of(&j_mm) {
            return fail("J_mM does not contain J_m^1 and J_M^1");
        }
        if !j_big_m1.is_normalized_by(ctx, &ck) {
            return fail("J_M^1 is not normal in CK^l'");
        }
        let a = Arc::new;
        Ok(ParahoricLattice {
            data,
            c: a(c),
            u_m: a(u_m),
            u_m1: a(u_m1),
            k1: a(k1),
            k_l: a(k_l),
            k_lp: a(k_lp),
            j_m1: a(j_m1),
            h_m1: a(h_m1),
            j_big_m1: a(j_big_m1),
            h_big_m1: a(h_big_m1),
            j_mm: a(j_mm),
            ck: a(ck),
        })
    }

    /// `J_mM` is a normal `p`-Sylow subgroup of `CK^{l'}` and `C ⊆ U_m`.
    pub fn normal_sylow(&self, ctx: &GroupContext) -> (bool, usize) {
        let p = ctx.ring.p() as usize;
        let index = self.ck.order() / self.j_mm.order();
        let ok = self.j_mm.is_normalized_by(ctx, &self.ck)
            && self.j_mm.is_p_group(p as u32)
            && !index.is_multiple_of(p)
            && self.c.is_subgroup_of(&self.u_m);
        (ok, index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::DEFAULT_CAP;

    #[test]
    fn irreducible_type_is_maximal() {
        let ctx = GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap();
        let beta = Mat::companion(&ctx.ring, &[1, 1, 1]);
        let lat = ParahoricLattice::new(&ctx, &beta).unwrap();
        assert_eq!(lat.data.e, 1);
        assert_eq!(lat.u_m1.elems, lat.k1.elems);
        let (ok, index) = lat.normal_sylow(&ctx);
        assert!(ok);
        assert_eq!(index, 3);
    }

    #[test]
    fn split_type() {
        let ctx = GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap();
        let beta = Mat::companion(&ctx.ring, &[0, 1, 1]);
        let lat = ParahoricLattice::new(&ctx, &beta).unwrap();
        assert_eq!(lat.data.e, 2);
        assert_eq!(lat.u_m.order() / lat.u_m1.order(), 1);
        assert!(lat.data.check_pa_equals_pe(&ctx.ring, 2));
        assert!(lat.normal_sylow(&ctx).0);
        assert!(ParahoricLattice::new(&GroupContext::from_literal("zmod:2^2", 2, DEFAULT_CAP).unwrap(), &Mat::companion(&Ring::from_literal("zmod:2^2").unwrap(), &[0, 1, 1])).is_err());
    }

    #[test]
    fn thresholds() {
        let ring = Ring::from_literal("zmod:2^3").unwrap();
        let d = ParahoricData::with_blocks(vec![1, 1], Mat::zero(&ring, 2), Mat::identity(&ring, 2));
        // A: lower-left in p; P: diagonal in p too; P^2 = pA.
        assert_eq!([d.threshold(0, 0, 0, 3), d.threshold(0, 0, 1, 3), d.threshold(0, 1, 0, 3)], [0, 0, 1]);
        assert_eq!([d.threshold(1, 0, 0, 3), d.threshold(1, 0, 1, 3), d.threshold(1, 1, 0, 3)], [1, 0, 1]);
        assert_eq!([d.threshold(2, 0, 0, 3), d.threshold(2, 0, 1, 3), d.threshold(2, 1, 0, 3)], [1, 1, 2]);
    }
}

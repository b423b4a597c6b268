//! Exhaustive structural checks on `G_r` and its filtrations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matalg::{is_regular, Mat, MatOp};
use crate::ring::Ring;

use super::{centralizer, unit_span_of_powers, GroupContext, ParahoricData, Subgroup};

/// Exponent `k` with `psi_beta(g) = zeta^k`, `zeta` a primitive
/// `char_modulus`-th root of unity; only meaningful for `g` in `K^l`.
pub fn psi_exponent(ctx: &GroupContext, beta: &Mat, g: u32) -> u32 {
    let x = ctx.minus_one(g);
    let t = beta.mul(&x).trace();
    ctx.ring.additive_char_exp(t)
}

const PAIR_CAP: u128 = 100_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub pairs_checked: u64,
    /// `(a, b)` with `[a, b]` outside the expected kernel.
    pub counterexample: Option<(u32, u32)>,
    /// Order of the subgroup generated by `[K^1, K^1]`.
    pub derived_k1_order: usize,
}

/// `[K^i, K^j] ⊆ K^{min(i+j, r)}` for all `i, j >= 1`, over all pairs in `K^1`.
pub fn commutator_filtration_check(ctx: &GroupContext) -> Result<FiltrationReport> {
    let k1 = ctx.congruence_kernel(1)?;
    let pairs = (k1.order() as u128).pow(2);
    if pairs > PAIR_CAP {
        return Err(Error::DeskScaleExceeded { what: "commutator pairs in K^1".into(), size: pairs, cap: PAIR_CAP });
    }
    let levels: Vec<u32> = k1.elems.iter().map(|&g| ctx.level_of(g)).collect();
    let mut counterexample = None;
    let mut comms = vec![];
    'outer: for (ia, &a) in k1.elems.iter().enumerate() {
        for (ib, &b) in k1.elems.iter().enumerate() {
            let c = ctx.commutator(a, b);
            if ctx.level_of(c) < (levels[ia] + levels[ib]).min(ctx.r) {
                counterexample = Some((a, b));
                break 'outer;
            }
            if c != ctx.identity() {
                comms.push(c);
            }
        }
    }
    comms.sort_unstable();
    comms.dedup();
    let derived = ctx.generated("[K^1,K^1]", &comms);
    Ok(FiltrationReport { pairs_checked: pairs as u64, counterexample, derived_k1_order: derived.order() })
}

/// `x -> 1 + varpi^i x` is a bijection `g_{r-i} -> K^i`, and a homomorphism
/// from the additive group when `2i >= r`.
pub fn kernel_isomorphism_check(ctx: &GroupContext, i: u32) -> Result<bool> {
    let r = ctx.r;
    if i == 0 || i > r {
        return Err(Error::BadLevel { level: i, max: r });
    }
    let ki = ctx.congruence_kernel(i)?;
    if i == r {
        return Ok(ki.order() == 1);
    }
    let small = Ring::new(ctx.ring.spec.at_level(r - i)?)?;
    let n = ctx.n;
    let size = small.size();
    let count = size.pow((n * n) as u32);
    let pi = ctx.ring.uniformizer_pow(i);
    let image = |mut code: usize| -> Option<u32> {
        let mut m = Mat::zero(&ctx.ring, n);
        for k in 0..n * n {
            let x = (code % size) as u16;
            code /= size;
            m.e[k] = ctx.ring.mul(pi, ctx.ring.lift_from(x, &small));
        }
        ctx.one_plus(&m)
    };
    let mut images: Vec<u32> = Vec::with_capacity(count);
    for code in 0..count {
        match image(code) {
            Some(g) if ki.contains(g) => images.push(g),
            _ => return Ok(false),
        }
    }
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != count || sorted != ki.elems {
        return Ok(false);
    }
    if 2 * i < r {
        return Ok(true);
    }
    // Additive structure: code -> entries over o_{r-i}.
    let add_codes = |a: usize, b: usize| -> usize {
        let (mut a, mut b, mut out, mut w) = (a, b, 0usize, 1usize);
        for _ in 0..n * n {
            let s = small.add((a % size) as u16, (b % size) as u16) as usize;
            out += s * w;
            w *= size;
            a /= size;
            b /= size;
        }
        out
    };
    let exhaustive = (count as u128).pow(2) <= 1_000_000;
    let partners: Vec<usize> = if exhaustive {
        (0..count).collect()
    } else {
        (0..n * n).map(|k| size.pow(k as u32)).collect()
    };
    for a in 0..count {
        for &b in &partners {
            if images[add_codes(a, b)] != ctx.mul(images[a], images[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Centralizer of a regular element equals `o_r[beta]^x` and is abelian.
pub fn centralizer_check(ctx: &GroupContext, beta: &Mat) -> Result<(Subgroup, bool)> {
    let c = centralizer(ctx, beta)?;
    let ok = c.elems == unit_span_of_powers(ctx, beta)? && c.is_abelian(ctx);
    Ok((c, ok))
}

/// Whether `C_{G_r}(beta) -> C_{G_s}(beta_s)` is onto. With `observe`, the
/// value is computed even for non-regular `beta`.
pub fn centralizer_reduction_surjectivity(ctx: &GroupContext, beta: &Mat, s: u32, observe: bool) -> Result<bool> {
    if !observe && !is_regular(beta)? {
        return Err(Error::RegularityViolation);
    }
    if s == 0 || s > ctx.r {
        return Err(Error::BadLevel { level: s, max: ctx.r });
    }
    if s == ctx.r {
        return Ok(true);
    }
    let ring_s = Ring::new(ctx.ring.spec.at_level(s)?)?;
    let ctx_s = GroupContext::new(&ring_s, ctx.n, ctx.cap)?;
    let beta_s = beta.reduce_to(&ring_s);
    let c = centralizer(ctx, beta)?;
    let c_s = centralizer(&ctx_s, &beta_s)?;
    let mut image: Vec<u32> = c
        .elems
        .iter()
        .map(|&g| ctx_s.index_of(&ctx.mat(g).reduce_to(&ring_s).e).expect("reduction of a unit"))
        .collect();
    image.sort_unstable();
    image.dedup();
    Ok(image == c_s.elems)
}

/// The stabilizer of `psi_beta` on `K^l`, computed by brute force and
/// compared with `C K^{l'}`.
pub fn stabilizer_of_orbit_character(ctx: &GroupContext, beta: &Mat) -> Result<Subgroup> {
    if !is_regular(beta)? {
        return Err(Error::RegularityViolation);
    }
    let k_l = ctx.congruence_kernel(ctx.l)?;
    let base: Vec<u32> = k_l.gens.iter().map(|&k| psi_exponent(ctx, beta, k)).collect();
    let stab = ctx.filter("Stab(psi_beta)", |g| {
        k_l.gens.iter().zip(&base).all(|(&k, &v)| psi_exponent(ctx, beta, ctx.conj(g, k)) == v)
    })?;
    let c = centralizer(ctx, beta)?;
    let k_lp = ctx.congruence_kernel(ctx.lp)?;
    let ck = ctx.join("CK^l'", &[&c, &k_lp]);
    if ck.elems != stab.elems {
        return Err(Error::CertificateFailed(format!(
            "stabilizer has order {}, C K^l' has order {}",
            stab.order(),
            ck.order()
        )));
    }
    Ok(stab)
}

/// `(P^i)^⊥ = P^{e(r-1)+1-i}` for every admissible `i`, testing each `x` in
/// `g_r` against the monomial additive generators of `P^i`.
pub fn orthogonality_check(ctx: &GroupContext, data: &ParahoricData) -> Result<bool> {
    let ring = &ctx.ring;
    let n = ctx.n;
    let size = ring.size();
    let count = (size as u128).pow((n * n) as u32);
    if count > 1 << 24 {
        return Err(Error::DeskScaleExceeded { what: "g_r".into(), size: count, cap: 1 << 24 });
    }
    let top = (data.e * (ctx.r - 1) + 1) as i64;
    let mut x = Mat::zero(ring, n);
    for i in 0..=top {
        let gens: Vec<(usize, usize, u16)> = data
            .ideal_generators(ring, n, i)
            .iter()
            .map(|m| {
                let k = m.e.iter().position(|&c| c != 0).expect("nonzero generator");
                (k / n, k % n, m.e[k])
            })
            .collect();
        for mut code in 0..count as usize {
            for k in (0..n * n).rev() {
                x.e[k] = (code % size) as u16;
                code /= size;
            }
            // tr(x * u c E_ab) = u c x_ba, for every scalar u: the ideal is an o-module.
            let perp = gens.iter().all(|&(a, b, c)| {
                let cx = ring.mul(c, x.get(b, a));
                (0..size as u16).all(|u| ring.additive_char_exp(ring.mul(u, cx)) == 0)
            });
            if perp != data.in_ideal(&x, top - i) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Commutator identity used as a sanity check on the enumeration.
pub fn additive_commutator_trace_zero(a: &Mat, b: &Mat) -> Result<bool> {
    Ok(a.arith(b, MatOp::Commutator)?.trace() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::DEFAULT_CAP;

    #[test]
    fn filtration_and_kernels() {
        let ctx = GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap();
        let rep = commutator_filtration_check(&ctx).unwrap();
        assert!(rep.counterexample.is_none());
        assert!(rep.derived_k1_order < 256);
        for i in 1..=3 {
            assert!(kernel_isomorphism_check(&ctx, i).unwrap());
        }
    }

    #[test]
    fn stabilizer_orders() {
        let ctx = GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap();
        let beta = Mat::companion(&ctx.ring, &[1, 1, 1]);
        assert_eq!(stabilizer_of_orbit_character(&ctx, &beta).unwrap().order(), 768);
        let ctx = GroupContext::from_literal("zmod:2^2", 2, DEFAULT_CAP).unwrap();
        let beta = Mat::companion(&ctx.ring, &[1, 1, 1]);
        assert_eq!(stabilizer_of_orbit_character(&ctx, &beta).unwrap().order(), 48);
        let scalar = Mat::scalar(&ctx.ring, 2, 1);
        assert_eq!(stabilizer_of_orbit_character(&ctx, &scalar), Err(Error::RegularityViolation));
    }

    #[test]
    fn surjectivity() {
        let ctx = GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap();
        let beta = Mat::companion(&ctx.ring, &[1, 1, 1]);
        assert!(centralizer_reduction_surjectivity(&ctx, &beta, 1, false).unwrap());
        assert!(centralizer_reduction_surjectivity(&ctx, &beta, 3, false).unwrap());
        let nonreg = Mat::from_rows(&ctx.ring, &[vec![0, 2], vec![0, 0]]).unwrap();
        assert!(centralizer_reduction_surjectivity(&ctx, &nonreg, 2, false).is_err());
        assert!(centralizer_reduction_surjectivity(&ctx, &nonreg, 2, true).is_ok());
    }

    #[test]
    fn orthogonality() {
        let ctx = GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap();
        let beta = Mat::companion(&ctx.ring, &[0, 1, 1]);
        let data = ParahoricData::minimal(&crate::matalg::factor_mod_p(&beta).unwrap()).unwrap();
        assert!(orthogonality_check(&ctx, &data).unwrap());
        assert!(orthogonality_check(&ctx, &ParahoricData::maximal(&beta)).unwrap());
    }
}

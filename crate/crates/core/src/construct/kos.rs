//! Odd level for odd `p` through the Lie algebra: `log` identifies
//! `K^{l'}/K^l` with an additive group, a `P_beta`-stable polarization gives
//! `J_beta`, and the Heisenberg lift is extended across the prime-to-`p`
//! part of the centralizer.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::charthy::{
    extend_linear, from_root_sums, induce_linear, induce_root_sums, psi_beta_on, CharContext, ClassFunction, LinearChar,
};
use crate::error::{Error, Result};
use crate::grp::{centralizer, GroupContext, Subgroup};
use crate::matalg::{is_regular, Mat, MatOp};

use super::model::RepnModel;
use super::ss::lifts;
use super::symplectic::{QuotientSpace, SymplecticSpace};
use super::PipelineOutput;

/// `log(1 + x) = x - x^2/2` on `K^{l'}`, where `x^3 = 0`.
pub fn truncated_log(ctx: &GroupContext, g: u32) -> Mat {
    let ring = &ctx.ring;
    let half = ring.inv(ring.from_int(2)).expect("odd residue characteristic");
    let x = ctx.minus_one(g);
    let sq = x.mul(&x).scale(half);
    x.arith(&sq, MatOp::Sub).expect("same shape")
}

/// `exp(y) = 1 + y + y^2/2`, the inverse of [`truncated_log`].
pub fn truncated_exp(ctx: &GroupContext, y: &Mat) -> Option<u32> {
    let ring = &ctx.ring;
    let half = ring.inv(ring.from_int(2))?;
    let sq = y.mul(y).scale(half);
    ctx.one_plus(&y.arith(&sq, MatOp::Add).ok()?)
}

/// Whether `exp` and `log` are mutually inverse on all of `K^{l'}`.
pub fn exp_log_check(ctx: &GroupContext, k_lp: &Subgroup) -> bool {
    k_lp.elems.iter().all(|&g| truncated_exp(ctx, &truncated_log(ctx, g)) == Some(g))
}

/// `g -> psi(tr(beta log g))` on `base`, as a table (not checked to be
/// multiplicative).
pub fn log_phi(cc: &Arc<CharContext>, beta: &Mat, base: &Arc<Subgroup>) -> LinearChar {
    let ctx = &cc.ctx;
    let exps = base
        .elems
        .iter()
        .map(|&g| ctx.ring.additive_char_exp(beta.mul(&truncated_log(ctx, g)).trace()) * cc.eps_scale as u32)
        .collect();
    LinearChar { cc: Arc::clone(cc), base: Arc::clone(base), exps }
}

fn stabilizes(ctx: &GroupContext, g: u32, sigma: &ClassFunction) -> bool {
    let classes = sigma.base.classes(ctx);
    classes.reps.iter().all(|&x| sigma.value_at(ctx.conj(g, x)) == sigma.value_at(x))
}

pub fn kos_construct(cc: &Arc<CharContext>, beta: &Mat) -> Result<PipelineOutput> {
    let ctx = &cc.ctx;
    let p = ctx.ring.p();
    if p == 2 {
        return Err(Error::UnsupportedResidueChar(2));
    }
    if ctx.r.is_multiple_of(2) {
        return Err(Error::BadParity("the odd-level construction needs odd r".into()));
    }
    if !is_regular(beta)? {
        return Err(Error::RegularityViolation);
    }
    let fail = |what: &str| Error::CertificateFailed(what.to_string());
    let g = ctx.whole();
    let k_lp = Arc::new(ctx.congruence_kernel(ctx.lp)?);
    let k_l = Arc::new(ctx.congruence_kernel(ctx.l)?);
    let c = centralizer(ctx, beta)?;
    let ck = Arc::new(ctx.join("CK^l'", &[&c, &k_lp]));
    if !exp_log_check(ctx, &k_lp) {
        return Err(fail("exp and log are not inverse on K^l'"));
    }

    // The pairing on K^{l'}/K^l, its radical and a P_beta-stable polarization.
    let psi = psi_beta_on(cc, beta, &k_l);
    let space = QuotientSpace::new(ctx, &k_lp, &k_l)?;
    let sym = SymplecticSpace::new(ctx, space, &psi)?;
    let radical = Arc::new(sym.space.preimage(ctx, "R_beta", &sym.radical)?);
    let c_k = c.intersect(ctx, &k_lp);
    if radical.elems != ctx.join("(C∩K^l')K^l", &[&c_k, &k_l]).elems {
        return Err(fail("radical differs from (C ∩ K^l')K^l"));
    }
    let twists = extend_linear(&LinearChar::trivial(cc, &k_lp), &ck, true)?;
    let candidates = lifts(ctx, beta)?;
    let outside: Vec<u32> = g.transversal(ctx, &ck).into_iter().filter(|&x| !ck.contains(x)).collect();
    let theta_primes = extend_linear(&psi, &radical, true)?;
    let mut chars = vec![];
    let mut dim_sigma = 0;
    let mut c_normalizes = true;
    let mut order_p_beta = 0;
    let mut polarization_dim = 0;
    for theta1 in &theta_primes {
        // A lift realizing theta'; its centralizer's p-Sylow fixes the polarization.
        let b2 = candidates
            .iter()
            .find(|b2| log_phi(cc, b2, &radical) == *theta1)
            .ok_or_else(|| Error::NoExtension("no lift realizes theta'".into()))?;
        let c2 = centralizer(ctx, b2)?;
        if ctx.join("C'K^l'", &[&c2, &k_lp]).elems != ck.elems {
            return Err(fail("C(beta')K^l' differs from C(beta)K^l'"));
        }
        let p_beta = Arc::new(c2.sylow_p(ctx, p));
        let actions = p_beta
            .gens
            .iter()
            .map(|&x| sym.space.action(ctx, x).ok_or_else(|| fail("P_beta does not normalize K^l")))
            .collect::<Result<Vec<_>>>()?;
        let lag = sym.invariant_lagrangian(&actions)?;
        polarization_dim = lag.len();
        let j_beta = Arc::new(sym.space.preimage(ctx, "J_beta", &lag)?);
        if !j_beta.is_normalized_by(ctx, &p_beta) {
            return Err(Error::InvariantLagrangianNotFound);
        }
        c_normalizes &= j_beta.is_normalized_by(ctx, &c2);
        order_p_beta = p_beta.order();
        let pj = Arc::new(ctx.join("P_beta J_beta", &[&p_beta, &j_beta]));
        let pk = Arc::new(ctx.join("P_beta K^l'", &[&p_beta, &k_lp]));
        let theta2 = log_phi(cc, b2, &j_beta);
        if !theta2.is_multiplicative() {
            return Err(fail("log-character is not multiplicative on J_beta"));
        }
        if !p_beta.gens.iter().all(|&x| theta2.is_stable_under(x)) {
            return Err(fail("P_beta does not stabilize the log-character"));
        }
        let sigma = induce_linear(&theta2, &k_lp)?;
        if sigma.norm()? != 1 {
            return Err(fail("Heisenberg lift is reducible"));
        }
        let d = sigma.dim_int().unwrap_or(0);
        dim_sigma = d;
        let ind = induce_linear(theta1, &k_lp)?;
        let mut multiple = sigma.clone();
        for _ in 1..d {
            multiple = multiple.add(&sigma)?;
        }
        if ind != multiple {
            return Err(fail("Ind_R theta' is not a multiple of sigma"));
        }
        if !ck.gens.iter().all(|&x| stabilizes(ctx, x, &sigma)) || outside.iter().any(|&x| stabilizes(ctx, x, &sigma)) {
            return Err(fail("stabilizer of sigma differs from C K^l'"));
        }

        // Across P_beta, then to C K^{l'}.
        let omega = extend_linear(&theta2, &pj, false)?.remove(0);
        let sigma2 = induce_linear(&omega, &pk)?;
        if sigma2.dim() != sigma.dim() || sigma2.restrict(&k_lp)? != sigma {
            return Err(fail("extension across P_beta does not restrict to sigma"));
        }
        let model = RepnModel::monomial(&omega, &pk)?;
        let ext = model.extend_to(&ck)?;
        let sums = ext.root_sums()?;
        if from_root_sums(cc, &ck, &sums).restrict(&k_lp)? != sigma {
            return Err(fail("extension does not restrict to sigma"));
        }
        for lam in &twists {
            chars.push(induce_root_sums(cc, &ck, &sums, Some(lam), &g)?);
        }
    }
    let mut facts = BTreeMap::new();
    facts.insert("theta_prime_choices".into(), json!(theta_primes.len()));
    facts.insert("twists".into(), json!(twists.len()));
    facts.insert("dim_sigma".into(), json!(dim_sigma));
    facts.insert("order_P_beta".into(), json!(order_p_beta));
    facts.insert("C_normalizes_J_beta".into(), json!(c_normalizes));
    facts.insert("radical_dim".into(), json!(sym.radical.len()));
    facts.insert("polarization_dim".into(), json!(polarization_dim));
    Ok(PipelineOutput { chars, facts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{certify, ss_construct, Path};
    use crate::grp::DEFAULT_CAP;

    #[test]
    fn refuses_unsupported_input() {
        let cc = CharContext::new(&GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap());
        let beta = Mat::companion(&cc.ctx.ring, &[1, 1, 1]);
        assert_eq!(kos_construct(&cc, &beta).unwrap_err(), Error::UnsupportedResidueChar(2));
        let cc = CharContext::new(&GroupContext::from_literal("zmod:3^2", 2, DEFAULT_CAP).unwrap());
        let beta = Mat::companion(&cc.ctx.ring, &[1, 0, 1]);
        assert!(matches!(kos_construct(&cc, &beta), Err(Error::BadParity(_))));
    }

    #[test]
    fn agrees_with_parahoric_route_over_f3_t3() {
        let cc = CharContext::new(&GroupContext::from_literal("fqt:3:3", 2, DEFAULT_CAP).unwrap());
        for coeffs in [[1u16, 0, 1], [0, 1, 1], [0, 0, 1]] {
            let beta = Mat::companion(&cc.ctx.ring, &coeffs);
            let kos = certify(&cc, &beta, Path::Kos, kos_construct(&cc, &beta).unwrap()).unwrap();
            let ss = certify(&cc, &beta, Path::Ss, ss_construct(&cc, &beta).unwrap()).unwrap();
            assert!(kos.cert.all_pass(), "{coeffs:?}: {:?}", kos.cert);
            assert!(ss.cert.all_pass(), "{coeffs:?}: {:?}", ss.cert);
            assert!(crate::construct::same_set(&kos, &ss));
        }
    }
}

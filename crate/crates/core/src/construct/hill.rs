//! The split-case isotropic subgroup `H_beta = (B ∩ K^{l'}) K^l` and the
//! radical of the pairing on `K^{l'}/K^l`. Kept as a cross-check; no
//! representations are built from it.

use std::sync::Arc;

use crate::charthy::{psi_beta_on, CharContext};
use crate::error::{Error, Result};
use crate::grp::{centralizer, ParahoricData, Subgroup};
use crate::matalg::{factor_mod_p, is_regular, Mat, MatOp};

use super::symplectic::{rref, span_dim, QuotientSpace, SymplecticSpace, Vector};

#[derive(Debug)]
pub struct HillSplit {
    /// Upper triangular modulo `p`.
    pub beta: Mat,
    pub sym: SymplecticSpace,
    pub h_beta: Arc<Subgroup>,
    /// `[K^{l'} : H_beta]`.
    pub index: usize,
}

fn pairing(cc: &Arc<CharContext>, beta: &Mat) -> Result<SymplecticSpace> {
    let ctx = &cc.ctx;
    let k_lp = Arc::new(ctx.congruence_kernel(ctx.lp)?);
    let k_l = Arc::new(ctx.congruence_kernel(ctx.l)?);
    let psi = psi_beta_on(cc, beta, &k_l);
    SymplecticSpace::new(ctx, QuotientSpace::new(ctx, &k_lp, &k_l)?, &psi)
}

fn span_of(sym: &SymplecticSpace, sub: &Subgroup) -> Result<Vec<Vector>> {
    let mut rows = sub
        .gens
        .iter()
        .map(|&g| sym.space.coords(g).ok_or_else(|| Error::NotASubgroup(format!("{} is not inside K^l'", sub.name))))
        .collect::<Result<Vec<_>>>()?;
    let piv = rref(sym.p(), &mut rows);
    rows.truncate(piv.len());
    Ok(rows)
}

pub fn hill_split_isotropic(cc: &Arc<CharContext>, beta: &Mat) -> Result<HillSplit> {
    let ctx = &cc.ctx;
    if ctx.r.is_multiple_of(2) {
        return Err(Error::BadParity("the pairing on K^l'/K^l needs odd r".into()));
    }
    let desc = factor_mod_p(beta)?;
    if !desc.regular {
        return Err(Error::RegularityViolation);
    }
    if desc.factorization.iter().any(|f| f.deg > 1) {
        return Err(Error::NotSplit);
    }
    let data = ParahoricData::minimal(&desc)?;
    let b = data.beta.clone();
    let n = ctx.n;
    let p = ctx.ring.p() as u16;
    let lower_clean = (0..n).all(|i| (0..i).all(|j| ctx.ring.valuation(b.get(i, j)) >= 1));
    if !lower_clean {
        return Err(Error::CertificateFailed(format!("conjugate is not upper triangular mod {p}")));
    }
    let k_lp = ctx.congruence_kernel(ctx.lp)?;
    let k_l = ctx.congruence_kernel(ctx.l)?;
    let upper: Vec<u32> = k_lp
        .elems
        .iter()
        .copied()
        .filter(|&g| (0..n).all(|i| (0..i).all(|j| ctx.entries(g)[i * n + j] == 0)))
        .collect();
    let upper = Subgroup::from_elems(ctx, "B∩K^l'", upper)?;
    let h_beta = Arc::new(ctx.join("H_beta", &[&upper, &k_l]));
    let sym = pairing(cc, &b)?;
    let span = span_of(&sym, &h_beta)?;
    let fail = |what: &str| Error::CertificateFailed(what.to_string());
    if !sym.is_lagrangian(&span) {
        return Err(fail("H_beta/K^l is not maximal isotropic"));
    }
    if span_dim(sym.p(), &[span.clone(), sym.radical.clone()].concat()) != span.len() {
        return Err(fail("radical is not inside H_beta"));
    }
    let c = centralizer(ctx, &b)?;
    let ck = ctx.join("CK^l'", &[&c, &k_lp]);
    if !h_beta.is_normalized_by(ctx, &ck) {
        return Err(fail("H_beta is not normal in C K^l'"));
    }
    let index = k_lp.order() / h_beta.order();
    Ok(HillSplit { beta: b, sym, h_beta, index })
}

/// The radical of the pairing on `K^{l'}/K^l`, computed directly and
/// checked against `(C ∩ K^{l'}) K^l` and against the preimage of the
/// centralizer of `beta` modulo `p`.
pub fn radical_of_form(cc: &Arc<CharContext>, beta: &Mat) -> Result<Subgroup> {
    let ctx = &cc.ctx;
    if ctx.r.is_multiple_of(2) {
        return Err(Error::BadParity("the pairing on K^l'/K^l needs odd r".into()));
    }
    if !is_regular(beta)? {
        return Err(Error::RegularityViolation);
    }
    let sym = pairing(cc, beta)?;
    let brute = sym.space.preimage(ctx, "R_beta", &sym.radical)?;
    let k_lp = ctx.congruence_kernel(ctx.lp)?;
    let k_l = ctx.congruence_kernel(ctx.l)?;
    let c = centralizer(ctx, beta)?;
    let via_centralizer = ctx.join("(C∩K^l')K^l", &[&c.intersect(ctx, &k_lp), &k_l]);
    let data = ParahoricData::maximal(beta);
    let via_residue: Vec<u32> = k_lp
        .elems
        .iter()
        .copied()
        .filter(|&g| beta.arith(&ctx.minus_one(g), MatOp::Commutator).is_ok_and(|m| data.in_ideal(&m, ctx.l as i64)))
        .collect();
    if brute.elems != via_centralizer.elems || brute.elems != via_residue {
        return Err(Error::CertificateFailed("radical descriptions disagree".into()));
    }
    Ok(brute)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{GroupContext, DEFAULT_CAP};

    fn z8() -> Arc<CharContext> {
        CharContext::new(&GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap())
    }

    #[test]
    fn split_z8() {
        let cc = z8();
        let beta = Mat::companion(&cc.ctx.ring, &[0, 1, 1]);
        let h = hill_split_isotropic(&cc, &beta).unwrap();
        assert_eq!(h.index, 2);
        assert_eq!(h.sym.dim(), 4);
        assert_eq!(h.sym.radical.len(), 2);
        let nilpotent = Mat::companion(&cc.ctx.ring, &[0, 0, 1]);
        assert!(hill_split_isotropic(&cc, &nilpotent).is_ok());
    }

    #[test]
    fn irreducible_is_not_split() {
        let cc = z8();
        let beta = Mat::companion(&cc.ctx.ring, &[1, 1, 1]);
        assert_eq!(hill_split_isotropic(&cc, &beta).unwrap_err(), Error::NotSplit);
    }

    #[test]
    fn radical_descriptions() {
        let cc = z8();
        for coeffs in [[1u16, 1, 1], [0, 1, 1], [0, 0, 1]] {
            let beta = Mat::companion(&cc.ctx.ring, &coeffs);
            assert_eq!(radical_of_form(&cc, &beta).unwrap().order(), 4 * 16);
        }
        let scalar = Mat::scalar(&cc.ctx.ring, 2, 1);
        assert_eq!(radical_of_form(&cc, &scalar).unwrap_err(), Error::RegularityViolation);
    }
}

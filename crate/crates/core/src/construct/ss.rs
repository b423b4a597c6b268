//! Odd level through the pair of parahoric orders `A_min ⊆ A_max`: extend
//! `psi_beta` to `H^1`, lift to `J^1` through a polarization, pass through
//! `J_mM` to get an extendible representation, extend to `C K^{l'}` and
//! induce.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::charthy::{
    extend_linear, from_root_sums, induce, induce_linear, induce_root_sums, psi_beta, psi_beta_on, CharContext, ClassFunction,
    LinearChar,
};
use crate::error::{Error, Result};
use crate::grp::{GroupContext, ParahoricData, ParahoricLattice, Subgroup};
use crate::matalg::{is_regular, Mat, MatOp};
use crate::ring::Ring;

use super::model::RepnModel;
use super::symplectic::{QuotientSpace, SymplecticSpace};
use super::PipelineOutput;

/// A Heisenberg lift: `eta = Ind_W^J theta''` for a maximal isotropic `W/H`.
#[derive(Debug)]
pub struct Heisenberg {
    pub space: SymplecticSpace,
    pub radical: Arc<Subgroup>,
    pub w: Arc<Subgroup>,
    pub theta2: LinearChar,
    pub eta: ClassFunction,
}

/// Builds the lift of `theta` (a character of `H`) to `J`. `skip` selects a
/// different maximal isotropic subspace.
pub fn heisenberg(cc: &Arc<CharContext>, theta: &LinearChar, j: &Arc<Subgroup>, skip: usize) -> Result<Heisenberg> {
    let ctx = &cc.ctx;
    if !j.gens.iter().all(|&g| theta.is_stable_under(g)) {
        return Err(Error::CertificateFailed(format!("{} does not stabilize the character of {}", j.name, theta.base.name)));
    }
    let space = QuotientSpace::new(ctx, j, &theta.base)?;
    let sym = SymplecticSpace::new(ctx, space, theta)?;
    let lag = sym.lagrangian(skip);
    if !sym.is_lagrangian(&lag) {
        return Err(Error::CertificateFailed("greedy subspace is not maximal isotropic".into()));
    }
    let w = Arc::new(sym.space.preimage(ctx, "W", &lag)?);
    let radical = Arc::new(sym.space.preimage(ctx, "R", &sym.radical)?);
    let theta2 = extend_linear(theta, &w, false)?.remove(0);
    let eta = induce_linear(&theta2, j)?;
    if eta.norm()? != 1 {
        return Err(Error::CertificateFailed(format!("lift to {} is reducible", j.name)));
    }
    Ok(Heisenberg { space: sym, radical, w, theta2, eta })
}

/// `(C ∩ U^1) · {g in U^{el'} : [beta, g - 1] in P^{el'+1}}`, the radical
/// predicted for the pairing on `J^1/H^1`.
pub fn radical_formula(ctx: &GroupContext, data: &ParahoricData, c: &Subgroup) -> Result<Subgroup> {
    let e = data.e;
    let lp = ctx.lp;
    let u1 = data.unit_filtration(ctx, 1)?;
    let top = data.unit_filtration(ctx, e * lp)?;
    let inner: Vec<u32> = top
        .elems
        .iter()
        .copied()
        .filter(|&g| {
            let x = ctx.minus_one(g);
            data.beta.arith(&x, MatOp::Commutator).is_ok_and(|m| data.in_ideal(&m, (e * lp + 1) as i64))
        })
        .collect();
    let inner = Subgroup::from_elems(ctx, "rho^-1(C(beta))", inner)?;
    Ok(ctx.join("R_formula", &[&c.intersect(ctx, &u1), &inner]))
}

/// An extension of `theta_big` (on `H_M^1`) to `H_m^1` that agrees with
/// the `beta` formula on `U_m^{el'+1}`, when one exists.
fn theta_m_for(lat: &ParahoricLattice, psi_m: &LinearChar, theta_big: &LinearChar) -> Result<Option<LinearChar>> {
    let overlap = Arc::new(lat.h_big_m1.intersect(&psi_m.cc.ctx, &psi_m.base));
    if psi_m.restrict(&overlap)? != theta_big.restrict(&overlap)? {
        return Ok(None);
    }
    for ext in extend_linear(psi_m, &lat.h_m1, true)? {
        if ext.restrict(&lat.h_big_m1)? == *theta_big {
            if !lat.j_m1.gens.iter().all(|&x| ext.is_stable_under(x)) {
                return Err(Error::CertificateFailed("J_m^1 does not stabilize theta_m".into()));
            }
            return Ok(Some(ext));
        }
    }
    Ok(None)
}

/// Lifts `beta + varpi^{l'} a` for digit matrices `a`, starting with `beta`.
pub(super) fn lifts(ctx: &GroupContext, beta: &Mat) -> Result<Vec<Mat>> {
    let ring = &ctx.ring;
    let n = ctx.n;
    let field = Ring::new(ring.spec.at_level(1)?)?;
    let digits: Vec<u16> = field.elements().map(|u| ring.teichmuller(&field, u)).collect();
    let pi = ring.uniformizer_pow(ctx.lp);
    let total = digits.len().pow((n * n) as u32);
    (0..total)
        .map(|mut code| {
            let mut a = Mat::zero(ring, n);
            for k in 0..n * n {
                a.e[k] = ring.mul(pi, digits[code % digits.len()]);
                code /= digits.len();
            }
            beta.arith(&a, MatOp::Add)
        })
        .collect()
}

/// Brute-force radicals of the pairings on `J_M^1/H_M^1` and `J_m^1/H_m^1`
/// against `(C ∩ U^1) · rho^{-1}(C(beta bar))`, for the first extensions
/// that exist.
pub fn parahoric_radicals(cc: &Arc<CharContext>, beta: &Mat) -> Result<(bool, bool)> {
    let ctx = &cc.ctx;
    let lat = ParahoricLattice::new(ctx, beta)?;
    let data = &lat.data;
    let b = &data.beta;
    let u_top = Arc::new(data.unit_filtration(ctx, data.e * ctx.lp + 1)?);
    let psi = psi_beta_on(cc, b, &lat.k_l);
    let psi_m = psi_beta_on(cc, b, &u_top);
    let big_formula = radical_formula(ctx, &ParahoricData::maximal(b), &lat.c)?;
    let small_formula = radical_formula(ctx, data, &lat.c)?;
    let mut big_ok = None;
    for theta_big in extend_linear(&psi, &lat.h_big_m1, true)? {
        if big_ok.is_none() {
            big_ok = Some(heisenberg(cc, &theta_big, &lat.j_big_m1, 0)?.radical.elems == big_formula.elems);
        }
        if let Some(theta_small) = theta_m_for(&lat, &psi_m, &theta_big)? {
            let small_ok = heisenberg(cc, &theta_small, &lat.j_m1, 0)?.radical.elems == small_formula.elems;
            return Ok((big_ok.unwrap_or(false), small_ok));
        }
    }
    Err(Error::NoExtension("no extension of psi_beta agrees with the formula on U_m^{el'+1}".into()))
}

/// What one lift contributes.
struct LiftOutput {
    chars: Vec<ClassFunction>,
    theta_bigs: usize,
    compatible: usize,
    twists: usize,
    e: u32,
    lambda: Vec<u32>,
    dim_eta: i64,
    index_j_mm: usize,
    second_polarization: bool,
    paths_coincide: bool,
}

/// Steps 1 to 4 for one representative: every `theta_M` that agrees with
/// the formula for `beta` on `U_m^{el'+1}` yields the characters above it.
fn ss_single(cc: &Arc<CharContext>, beta: &Mat) -> Result<LiftOutput> {
    let ctx = &cc.ctx;
    let lat = ParahoricLattice::new(ctx, beta)?;
    let data = &lat.data;
    let b = &data.beta;
    let e = data.e;
    let g = ctx.whole();
    let fail = |what: &str| Error::CertificateFailed(what.to_string());

    // Step 1: the formula character on U_m^{el'+1} and the extensions to H^1.
    let u_top = Arc::new(data.unit_filtration(ctx, e * ctx.lp + 1)?);
    let psi = psi_beta_on(cc, b, &lat.k_l);
    let psi_m = psi_beta_on(cc, b, &u_top);
    if !psi_m.is_multiplicative() {
        return Err(fail("formula character on U_m^{el'+1} is not multiplicative"));
    }
    let c_um1 = lat.c.intersect(ctx, &lat.u_m1);
    if !c_um1.gens.iter().all(|&x| psi_m.is_stable_under(x)) {
        return Err(fail("C ∩ U^1 does not stabilize psi_beta"));
    }
    let bottom = data.unit_filtration(ctx, e * (ctx.r - 1) + 1)?;
    if bottom.elems.iter().any(|&x| psi_m.exp(x) != Some(0)) {
        return Err(fail("U^{e(r-1)+1} is not in the kernel of psi_beta"));
    }
    let theta_bigs = extend_linear(&psi, &lat.h_big_m1, true)?;

    // Radicals of both pairings against their closed forms.
    let r_big_formula = radical_formula(ctx, &ParahoricData::maximal(b), &lat.c)?;
    let r_small_formula = radical_formula(ctx, data, &lat.c)?;

    let twists = extend_linear(&LinearChar::trivial(cc, &lat.j_big_m1), &lat.ck, true)?;
    let q = ctx.ring.q() as i64;
    let n = ctx.n as u32;
    let expected_dim = q.pow(n * (n - 1) / 2);
    let mut out = LiftOutput {
        chars: vec![],
        theta_bigs: theta_bigs.len(),
        compatible: 0,
        twists: twists.len(),
        e,
        lambda: data.lambda.clone(),
        dim_eta: 0,
        index_j_mm: lat.ck.order() / lat.j_mm.order(),
        second_polarization: false,
        paths_coincide: lat.j_m1.elems == lat.j_big_m1.elems,
    };
    for theta_big in &theta_bigs {
        let Some(theta_small) = theta_m_for(&lat, &psi_m, theta_big)? else { continue };
        out.compatible += 1;

        // Step 2: the unique lift over theta_M, and one over theta_m.
        let heis_big = heisenberg(cc, theta_big, &lat.j_big_m1, 0)?;
        let eta_big = &heis_big.eta;
        if eta_big.dim_int() != Some(expected_dim) {
            return Err(fail("dim eta_M differs from q^{N(N-1)/2}"));
        }
        if !heis_big.radical.is_subgroup_of(&lat.h_big_m1) {
            return Err(fail("R_M is not contained in H_M^1"));
        }
        let other = heisenberg(cc, theta_big, &lat.j_big_m1, 1)?;
        if other.w.elems != heis_big.w.elems {
            out.second_polarization = true;
            if other.eta != *eta_big {
                return Err(fail("eta_M depends on the polarization"));
            }
        }
        let heis_small = heisenberg(cc, &theta_small, &lat.j_m1, 0)?;
        if heis_big.radical.elems != r_big_formula.elems || heis_small.radical.elems != r_small_formula.elems {
            return Err(fail("radical differs from its closed form"));
        }

        // Step 3: eta on J_mM restricts to eta_M; extend it to C K^{l'}.
        let eta = induce(&heis_small.eta, &lat.j_mm)?;
        out.dim_eta = eta.dim_int().unwrap_or(0);
        if eta.dim() != eta_big.dim() || eta.restrict(&lat.j_big_m1)? != *eta_big {
            return Err(fail("eta does not restrict to eta_M"));
        }
        let model = RepnModel::monomial(&heis_small.theta2, &lat.j_mm)?;
        if model.character()? != eta {
            return Err(fail("monomial model does not realize eta"));
        }
        let ext = model.extend_to(&lat.ck)?;
        let sums = ext.root_sums()?;
        if from_root_sums(cc, &lat.ck, &sums).restrict(&lat.j_big_m1)? != *eta_big {
            return Err(fail("extension does not restrict to eta_M"));
        }

        // Step 4: every twist, induced.
        for lam in &twists {
            out.chars.push(induce_root_sums(cc, &lat.ck, &sums, Some(lam), &g)?);
        }
    }
    Ok(out)
}

/// Runs the construction for `beta` and, while characters over `psi_beta`
/// are still missing, for the lifts `beta + varpi^{l'} a`; these restrict to
/// the same character of `K^l` but reach the remaining extensions `theta_M`.
pub fn ss_construct(cc: &Arc<CharContext>, beta: &Mat) -> Result<PipelineOutput> {
    let ctx = &cc.ctx;
    if ctx.r.is_multiple_of(2) {
        return Err(Error::BadParity("the odd-level construction needs odd r".into()));
    }
    if !is_regular(beta)? {
        return Err(Error::RegularityViolation);
    }
    let psi = psi_beta(cc, beta, ctx.l)?;
    let psi_cf = psi.to_class_function();
    let target = (ctx.order() / psi.base.order()) as i64;
    let mut facts = BTreeMap::new();
    let mut chars: Vec<ClassFunction> = vec![];
    let mut covered = 0i64;
    let mut used = 0usize;
    for lift in lifts(ctx, beta)? {
        if covered >= target {
            break;
        }
        let part = ss_single(cc, &lift)?;
        if used == 0 {
            facts.insert("e".into(), json!(part.e));
            facts.insert("lambda".into(), json!(part.lambda));
            facts.insert("theta_M_choices".into(), json!(part.theta_bigs));
            facts.insert("theta_M_compatible".into(), json!(part.compatible));
            facts.insert("twists".into(), json!(part.twists));
            facts.insert("dim_eta_M".into(), json!(ctx.ring.q().pow((ctx.n * (ctx.n - 1) / 2) as u32)));
            facts.insert("index_J_mM_in_CK".into(), json!(part.index_j_mm));
            facts.insert("paths_coincide".into(), json!(part.paths_coincide));
            facts.insert("second_polarization_checked".into(), json!(part.second_polarization));
            facts.insert("radical_formulas_hold".into(), json!(true));
        }
        if part.compatible > 0 {
            facts.insert("dim_eta".into(), json!(part.dim_eta));
        }
        used += 1;
        for chi in part.chars {
            if chars.contains(&chi) {
                continue;
            }
            let dim = chi.dim_int().unwrap_or(0);
            covered += chi.restrict(&psi.base)?.inner_product_int(&psi_cf)? * dim;
            chars.push(chi);
        }
    }
    facts.insert("lifts_used".into(), json!(used));
    Ok(PipelineOutput { chars, facts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{certify, Path};
    use crate::grp::DEFAULT_CAP;

    #[test]
    fn gl2_z8_irreducible_type() {
        let cc = CharContext::new(&GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap());
        let beta = Mat::companion(&cc.ctx.ring, &[1, 1, 1]);
        let raw = ss_construct(&cc, &beta).unwrap();
        assert_eq!(raw.facts["theta_M_choices"], json!(4));
        assert_eq!(raw.facts["twists"], json!(3));
        assert_eq!(raw.facts["paths_coincide"], json!(true));
        let out = certify(&cc, &beta, Path::Ss, raw).unwrap();
        assert!(out.cert.all_pass(), "{:?}", out.cert);
        assert_eq!(out.dims(), vec![4; 12]);
        assert!(out.chars.iter().all(|c| c.mult == 2));
        assert_eq!(out.cert.completeness_sum, 96);
    }

    #[test]
    fn gl2_z8_other_types() {
        let cc = CharContext::new(&GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap());
        for coeffs in [[0u16, 1, 1], [0, 0, 1], [1, 0, 1]] {
            let beta = Mat::companion(&cc.ctx.ring, &coeffs);
            let out = certify(&cc, &beta, Path::Ss, ss_construct(&cc, &beta).unwrap()).unwrap();
            assert!(out.cert.all_pass(), "{coeffs:?}: {:?}", out.cert);
        }
    }
}

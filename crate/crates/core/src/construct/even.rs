//! Even level: `psi_beta` extends to its stabilizer `C K^l` by
//! `c k -> theta(c) psi_beta(k)`, and induction gives everything over it.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::charthy::{extend_linear, induce_linear, orbit_of_character, psi_beta, CharContext, LinearChar};
use crate::error::{Error, Result};
use crate::grp::{centralizer, ABSENT};
use crate::matalg::{is_regular, Mat};

use super::PipelineOutput;

pub fn even_construct(cc: &Arc<CharContext>, beta: &Mat) -> Result<PipelineOutput> {
    let ctx = &cc.ctx;
    if !ctx.r.is_multiple_of(2) {
        return Err(Error::BadParity("the even construction needs even r".into()));
    }
    if !is_regular(beta)? {
        return Err(Error::RegularityViolation);
    }
    let l = cc.l as u32;
    let psi = psi_beta(cc, beta, ctx.l)?;
    let k_l = Arc::clone(&psi.base);
    let c = Arc::new(centralizer(ctx, beta)?.renamed("C"));
    let ck = Arc::new(ctx.join("CK^l", &[&c, &k_l]));
    let (orbit, stab) = orbit_of_character(&psi, &ctx.whole())?;
    if stab.elems != ck.elems {
        return Err(Error::CertificateFailed("stabilizer of psi_beta differs from C K^l".into()));
    }
    let c_kl = Arc::new(c.intersect(ctx, &k_l));
    let theta = extend_linear(&psi.restrict(&c_kl)?, &c, false)?.remove(0);
    let mut exps = vec![ABSENT; ck.order()];
    for (&x, &ex) in c.elems.iter().zip(&theta.exps) {
        for (&k, &ek) in k_l.elems.iter().zip(&psi.exps) {
            let pos = ck.position(ctx.mul(x, k)).expect("in CK^l") as usize;
            let v = (ex + ek) % l;
            if exps[pos] != ABSENT && exps[pos] != v {
                return Err(Error::CertificateFailed("theta psi_beta is not well defined".into()));
            }
            exps[pos] = v;
        }
    }
    let tilde = LinearChar { cc: Arc::clone(cc), base: Arc::clone(&ck), exps };
    if !tilde.is_multiplicative() {
        return Err(Error::CertificateFailed("theta psi_beta is not multiplicative".into()));
    }
    let twists = extend_linear(&LinearChar::trivial(cc, &k_l), &ck, true)?;
    let g = ctx.whole();
    let chars = twists
        .iter()
        .map(|chi| induce_linear(&tilde.mul(chi)?, &g))
        .collect::<Result<Vec<_>>>()?;
    let mut facts = BTreeMap::new();
    facts.insert("orbit_size".into(), json!(orbit));
    facts.insert("stabilizer_order".into(), json!(ck.order()));
    facts.insert("centralizer_order".into(), json!(c.order()));
    facts.insert("twists".into(), json!(twists.len()));
    Ok(PipelineOutput { chars, facts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{certify, Path};
    use crate::grp::{GroupContext, DEFAULT_CAP};

    fn run(coeffs: &[u16]) -> Vec<i64> {
        let cc = CharContext::new(&GroupContext::from_literal("zmod:2^2", 2, DEFAULT_CAP).unwrap());
        let beta = Mat::companion(&cc.ctx.ring, coeffs);
        let out = certify(&cc, &beta, Path::Even, even_construct(&cc, &beta).unwrap()).unwrap();
        assert!(out.cert.all_pass(), "{:?}", out.cert);
        out.dims()
    }

    #[test]
    fn gl2_z4_orbits() {
        assert_eq!(run(&[1, 1, 1]), vec![2, 2, 2]);
        assert_eq!(run(&[0, 1, 1]), vec![6]);
        assert_eq!(run(&[0, 0, 1]), vec![3, 3]);
        assert_eq!(run(&[1, 0, 1]), vec![3, 3]);
    }

    #[test]
    fn rejects_odd_level() {
        let cc = CharContext::new(&GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap());
        let beta = Mat::companion(&cc.ctx.ring, &[1, 1, 1]);
        assert!(matches!(even_construct(&cc, &beta), Err(Error::BadParity(_))));
    }
}

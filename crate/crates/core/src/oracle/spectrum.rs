//! The complete character table of `GL_2(o_r)`, assembled independently of
//! any claim that the regular constructions are exhaustive: level one by
//! classical means, higher levels as regular characters together with
//! determinant twists of inflations from `G_{r-1}`. Completeness is then
//! certified by `sum dim^2 = |G|` and the class count.

use std::sync::Arc;

use rayon::prelude::*;

use crate::charthy::{abelian_char_group, extend_linear, induce_linear, inflate, CharContext, ClassFunction, LinearChar};
use crate::construct::{dedupe, regular_orbit_reps, regular_reps, Construction, Path};
use crate::error::{Error, Result};
use crate::grp::{centralizer, GroupContext};
use crate::matalg::{monic_irreducibles, Mat};
use crate::ring::Ring;

/// Certified regular characters of `G_r`, one construction per orbit.
pub fn regular_spectrum(cc: &Arc<CharContext>, path: Path) -> Result<Vec<Construction>> {
    regular_orbit_reps(&cc.ctx)?
        .par_iter()
        .map(|beta| {
            let out = regular_reps(cc, beta, path)?;
            if !out.cert.all_pass() {
                return Err(Error::CertificateFailed(format!("orbit {:?}: {:?}", beta.rows(), out.cert)));
            }
            Ok(out)
        })
        .collect()
}

fn certify_table(cc: &Arc<CharContext>, chars: Vec<ClassFunction>) -> Result<Vec<ClassFunction>> {
    let ctx = &cc.ctx;
    let (chars, distinct) = dedupe(chars);
    let mut sum = 0i64;
    for chi in &chars {
        let d = chi.dim_int().filter(|&d| d > 0).ok_or_else(|| Error::CertificateFailed("non-positive degree".into()))?;
        if chi.norm()? != 1 {
            return Err(Error::CertificateFailed(format!("reducible character of degree {d}")));
        }
        sum += d * d;
    }
    let classes = ctx.whole().classes(ctx).len();
    if sum != ctx.order() as i64 || chars.len() != classes {
        return Err(Error::CertificateFailed(format!(
            "sum of squares {sum} vs order {}, {} characters vs {classes} classes (duplicates removed: {})",
            ctx.order(),
            chars.len(),
            !distinct
        )));
    }
    Ok(chars)
}

fn check_gl2(ctx: &GroupContext) -> Result<()> {
    if ctx.n != 2 {
        return Err(Error::ShapeMismatch(format!("the full spectrum is implemented for N = 2, not {}", ctx.n)));
    }
    Ok(())
}

/// `GL_2(F_q)`: linear characters, principal series (with the Steinberg
/// twists split off) and the cuspidal characters attached to the
/// nonsplit torus.
pub fn gl1_spectrum(cc: &Arc<CharContext>) -> Result<Vec<ClassFunction>> {
    let ctx = &cc.ctx;
    check_gl2(ctx)?;
    if ctx.r != 1 {
        return Err(Error::BadLevel { level: ctx.r, max: 1 });
    }
    let ring = &ctx.ring;
    let g = ctx.whole();
    let mut comms: Vec<u32> =
        g.elems.iter().flat_map(|&a| g.elems.iter().map(move |&b| ctx.commutator(a, b))).collect();
    comms.sort_unstable();
    comms.dedup();
    let derived = Arc::new(ctx.generated("[G,G]", &comms));
    let linear: Vec<ClassFunction> = extend_linear(&LinearChar::trivial(cc, &derived), &g, true)?
        .iter()
        .map(LinearChar::to_class_function)
        .collect();
    let mut chars = linear.clone();

    let e = |x: u32| ctx.entries(x).to_vec();
    let u = Arc::new(ctx.filter("U", |x| e(x)[2] == 0 && e(x)[0] == ring.one() && e(x)[3] == ring.one())?);
    let b = Arc::new(ctx.filter("B", |x| e(x)[2] == 0)?);
    for chi in extend_linear(&LinearChar::trivial(cc, &u), &b, true)? {
        let ind = induce_linear(&chi, &g)?;
        match ind.norm()? {
            1 => chars.push(ind),
            2 => {
                let lin = linear
                    .iter()
                    .find(|l| ind.inner_product_int(l).is_ok_and(|m| m == 1))
                    .ok_or_else(|| Error::CertificateFailed("principal series without a linear constituent".into()))?;
                chars.push(ind.sub(lin)?);
            }
            n => return Err(Error::CertificateFailed(format!("principal series of norm {n}"))),
        }
    }

    let field = Ring::new(ring.spec.at_level(1)?)?;
    let f = monic_irreducibles(&field, 2).into_iter().next().ok_or(Error::NotSplit)?;
    let torus = Arc::new(centralizer(ctx, &Mat::companion(ring, &f))?);
    let zu = Arc::new(ctx.filter("ZU", |x| e(x)[2] == 0 && e(x)[0] == e(x)[3])?);
    let q = ring.q() as u64;
    for theta in abelian_char_group(cc, &torus)? {
        if torus.elems.iter().all(|&x| theta.exp(ctx.pow(x, q)) == theta.exp(x)) {
            continue;
        }
        let exps = zu
            .elems
            .iter()
            .map(|&x| {
                let z = e(x)[0];
                let scalar = ctx.index_of(&Mat::scalar(ring, 2, z).e).expect("scalar unit");
                let t = theta.exp(scalar).expect("scalars lie in the torus") as u64;
                let y = ring.mul(e(x)[1], ring.inv(z).expect("unit"));
                ((t + ring.additive_char_exp(y) as u64 * cc.eps_scale) % cc.l) as u32
            })
            .collect();
        let gen = LinearChar { cc: Arc::clone(cc), base: Arc::clone(&zu), exps };
        chars.push(induce_linear(&gen, &g)?.sub(&induce_linear(&theta, &g)?)?);
    }
    certify_table(cc, chars)
}

/// `lambda o det` where `lambda` extends `1 + y -> eps(iota(z) y)` from
/// `1 + p^l` to `o_r^x`.
fn det_twist(cc: &Arc<CharContext>, z: u16, field: &Ring) -> Result<LinearChar> {
    let ctx = &cc.ctx;
    let ring = &ctx.ring;
    let e = |x: u32| ctx.entries(x).to_vec();
    let diag = Arc::new(ctx.filter("diag(u,1)", |x| e(x)[1] == 0 && e(x)[2] == 0 && e(x)[3] == ring.one())?);
    let k_l = ctx.congruence_kernel(ctx.l)?;
    let low = Arc::new(diag.intersect(ctx, &k_l));
    let iz = ring.teichmuller(field, z);
    let exps = low
        .elems
        .iter()
        .map(|&x| {
            let y = ring.sub(e(x)[0], ring.one());
            (ring.additive_char_exp(ring.mul(iz, y)) as u64 * cc.eps_scale) as u32
        })
        .collect();
    let mu = LinearChar { cc: Arc::clone(cc), base: low, exps };
    let lambda = extend_linear(&mu, &diag, false)?.remove(0);
    let g = ctx.whole();
    let exps = g
        .elems
        .iter()
        .map(|&x| {
            let d = ctx.mat(x).det();
            let at = ctx.index_of(&[d, 0, 0, ring.one()]).expect("diagonal unit");
            lambda.exp(at).expect("in diag")
        })
        .collect();
    Ok(LinearChar { cc: Arc::clone(cc), base: g, exps })
}

/// Every irreducible character of `GL_2(o_r)`, certified complete.
pub fn gl2_irreducibles(cc: &Arc<CharContext>) -> Result<(Vec<ClassFunction>, usize)> {
    let ctx = &cc.ctx;
    check_gl2(ctx)?;
    if ctx.r == 1 {
        let all = gl1_spectrum(cc)?;
        return Ok((all, 0));
    }
    let ring_s = Ring::new(ctx.ring.spec.at_level(ctx.r - 1)?)?;
    let cc_s = CharContext::new(&GroupContext::new(&ring_s, 2, ctx.cap)?);
    let (lower, _) = gl2_irreducibles(&cc_s)?;
    let path = if ctx.r.is_multiple_of(2) { Path::Even } else { Path::Ss };
    let mut chars: Vec<ClassFunction> =
        regular_spectrum(cc, path)?.into_iter().flat_map(|c| c.chars.into_iter().map(|rc| rc.chi)).collect();
    let regular = chars.len();
    let field = Ring::new(ctx.ring.spec.at_level(1)?)?;
    for z in field.elements() {
        let lam = det_twist(cc, z, &field)?;
        for pi in &lower {
            chars.push(inflate(pi, cc)?.tensor_linear(&lam)?);
        }
    }
    Ok((certify_table(cc, chars)?, regular))
}

/// Dimension counts of `GL_2(o_r)`, full and regular.
pub fn gl2_full_spectrum(cc: &Arc<CharContext>) -> Result<super::CountReport> {
    let (chars, regular) = gl2_irreducibles(cc)?;
    let mut report = super::CountReport::new(&cc.ctx);
    for (i, chi) in chars.iter().enumerate() {
        let d = chi.dim_int().unwrap_or(0);
        *report.full.get_or_insert_with(Default::default).entry(d).or_insert(0) += 1;
        if i < regular {
            *report.regular.entry(d).or_insert(0) += 1;
        }
    }
    report.classes = Some(chars.len());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::DEFAULT_CAP;

    fn cc(lit: &str) -> Arc<CharContext> {
        CharContext::new(&GroupContext::from_literal(lit, 2, DEFAULT_CAP).unwrap())
    }

    #[test]
    fn level_one_tables() {
        let dims = |lit: &str| {
            let mut d: Vec<i64> = gl1_spectrum(&cc(lit)).unwrap().iter().map(|c| c.dim_int().unwrap()).collect();
            d.sort();
            d
        };
        assert_eq!(dims("zmod:2^1"), vec![1, 1, 2]);
        assert_eq!(dims("zmod:3^1"), vec![1, 1, 2, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn gl2_z4_totals() {
        let rep = gl2_full_spectrum(&cc("zmod:2^2")).unwrap();
        let regular: i64 = rep.regular.iter().map(|(d, c)| d * d * *c as i64).sum();
        assert_eq!(regular, 84);
        let full: i64 = rep.full.as_ref().unwrap().iter().map(|(d, c)| d * d * *c as i64).sum();
        assert_eq!(full, 96);
    }
}

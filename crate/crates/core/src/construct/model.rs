//! Matrix models of representations over `F_ell`: monomial models of
//! induced linear characters, and their extension from a normal subgroup
//! through intertwining operators.

use std::sync::Arc;

use crate::charthy::{from_root_sums, CharContext, ClassFunction, LinearChar};
use crate::error::{Error, Result};
use crate::grp::Subgroup;

use super::modmat::ModMat;

/// A representation of `base`, one matrix per element (by position).
#[derive(Debug, Clone)]
pub struct RepnModel {
    pub cc: Arc<CharContext>,
    pub base: Arc<Subgroup>,
    pub d: usize,
    mats: Vec<ModMat>,
}

impl RepnModel {
    /// `Ind_W^X lambda` in the basis of a left transversal of `W` in `X`.
    pub fn monomial(lin: &LinearChar, x: &Arc<Subgroup>) -> Result<RepnModel> {
        let cc = &lin.cc;
        let ctx = &cc.ctx;
        let f = cc.modular();
        let w = &lin.base;
        if !w.is_subgroup_of(x) {
            return Err(Error::NotASubgroup(format!("{} ⊄ {}", w.name, x.name)));
        }
        let trans = x.transversal(ctx, w);
        let d = trans.len();
        // label[y] = (coset index i, exponent of lambda(t_i^{-1} y)).
        let mut label = vec![(u32::MAX, 0u32); x.order()];
        for (i, &t) in trans.iter().enumerate() {
            for (&h, &e) in w.elems.iter().zip(&lin.exps) {
                label[x.position(ctx.mul(t, h)).expect("in X") as usize] = (i as u32, e);
            }
        }
        let mats = x
            .elems
            .iter()
            .map(|&g| {
                let mut m = ModMat::zero(d);
                for (j, &t) in trans.iter().enumerate() {
                    let (i, e) = label[x.position(ctx.mul(g, t)).expect("in X") as usize];
                    m.e[i as usize * d + j] = f.root(e as u64);
                }
                m
            })
            .collect();
        Ok(RepnModel { cc: Arc::clone(cc), base: Arc::clone(x), d, mats })
    }

    pub fn matrix(&self, g: u32) -> Option<&ModMat> {
        self.base.position(g).map(|p| &self.mats[p as usize])
    }

    /// `rho(g) rho(y) = rho(gy)` for generators `g` and every `y`.
    pub fn verify_homomorphism(&self) -> bool {
        let ctx = &self.cc.ctx;
        let f = self.cc.modular();
        self.base.gens.iter().all(|&g| {
            let a = self.matrix(g).expect("generator");
            self.base.elems.iter().zip(&self.mats).all(|(&y, b)| self.matrix(ctx.mul(g, y)) == Some(&a.mul(f, b)))
        })
    }

    /// Eigenvalue exponents of a representative of each class of the base.
    pub fn root_sums(&self) -> Result<Vec<Vec<u32>>> {
        let classes = self.base.classes(&self.cc.ctx);
        classes
            .reps
            .iter()
            .map(|&g| {
                self.matrix(g)
                    .expect("rep in base")
                    .eigen_exponents(self.cc.modular())
                    .ok_or_else(|| Error::CertificateFailed("eigenvalue outside mu_L".into()))
            })
            .collect()
    }

    pub fn character(&self) -> Result<ClassFunction> {
        Ok(from_root_sums(&self.cc, &self.base, &self.root_sums()?))
    }

    /// An extension to `s`, in which `base` must be normal with abelian
    /// quotient of order prime to `p`. The generators of `s` are adjoined
    /// one at a time; the scalar ambiguity of each intertwiner is fixed so
    /// that `T^m = rho(c^m)`, and choices are backtracked if a later
    /// generator does not stabilize the partial extension.
    pub fn extend_to(&self, s: &Arc<Subgroup>) -> Result<RepnModel> {
        if !self.base.is_subgroup_of(s) {
            return Err(Error::NotASubgroup(format!("{} ⊄ {}", self.base.name, s.name)));
        }
        let mut table: Vec<Option<ModMat>> = vec![None; s.order()];
        for (&g, m) in self.base.elems.iter().zip(&self.mats) {
            table[s.position(g).expect("in S") as usize] = Some(m.clone());
        }
        let state = Partial { table, elems: self.base.elems.clone(), gens: self.base.gens.clone() };
        let mut last = None;
        let table = self.extend_rec(s, state, &mut last).ok_or_else(|| {
            last.unwrap_or_else(|| Error::ExtensionNormalizationFailed(format!("{} to {}", self.base.name, s.name)))
        })?;
        let mats = table.into_iter().map(|m| m.expect("filled")).collect();
        let out = RepnModel { cc: Arc::clone(&self.cc), base: Arc::clone(s), d: self.d, mats };
        if !out.verify_homomorphism() {
            return Err(Error::ExtensionNormalizationFailed("extension is not multiplicative".into()));
        }
        Ok(out)
    }

    fn extend_rec(&self, s: &Arc<Subgroup>, st: Partial, last: &mut Option<Error>) -> Option<Vec<Option<ModMat>>> {
        let ctx = &self.cc.ctx;
        let f = self.cc.modular();
        let d = self.d;
        let pos = |g: u32| s.position(g).expect("in S") as usize;
        let Some(&c) = s.gens.iter().find(|&&g| st.table[pos(g)].is_none()) else {
            return Some(st.table);
        };
        let rho = |g: u32| st.table[pos(g)].as_ref().expect("in T");
        let mut m = 1u64;
        let mut cm = c;
        while st.table[pos(cm)].is_none() {
            cm = ctx.mul(cm, c);
            m += 1;
        }
        // Schur averaging of seed matrices E_ab.
        let mut inter = None;
        'seeds: for a in 0..d {
            for b in 0..d {
                let mut t = ModMat::zero(d);
                for &x in &st.elems {
                    let left = rho(ctx.conj(c, x));
                    let right = rho(ctx.inv(x));
                    for i in 0..d {
                        let li = left.get(i, a);
                        if li == 0 {
                            continue;
                        }
                        for j in 0..d {
                            let rj = right.get(b, j);
                            if rj != 0 {
                                t.e[i * d + j] = f.add(t.e[i * d + j], f.mul(li, rj));
                            }
                        }
                    }
                }
                if !t.is_zero() {
                    inter = Some(t);
                    break 'seeds;
                }
            }
        }
        let Some(t) = inter else {
            *last = Some(Error::NoExtension("partial extension is not stable".into()));
            return None;
        };
        let intertwines = st.gens.iter().all(|&x| rho(ctx.conj(c, x)).mul(f, &t) == t.mul(f, rho(x)));
        if !intertwines {
            *last = Some(Error::ExtensionNormalizationFailed("averaged operator does not intertwine".into()));
            return None;
        }
        let target = rho(cm);
        let tm = t.pow(f, m);
        let k = target.e.iter().position(|&x| x != 0).expect("invertible");
        let scal = f.mul(tm.e[k], f.inv(target.e[k]));
        if tm != target.scale(f, scal) {
            *last = Some(Error::ExtensionNormalizationFailed("T^m is not a multiple of rho(c^m)".into()));
            return None;
        }
        let (g, u, v) = ext_gcd(d as i64, m as i64);
        if g != 1 {
            *last = Some(Error::ExtensionNormalizationFailed(format!("dimension {d} and order {m} share a factor")));
            return None;
        }
        let signed_pow = |x: u64, e: i64| if e >= 0 { f.pow(x, e as u64) } else { f.pow(f.inv(x), (-e) as u64) };
        // T' = T det(T)^{-u} s^{-v} satisfies T'^m = det(rho(c^m))^{-u} rho(c^m).
        let factor = f.mul(signed_pow(t.det(f), -u), signed_pow(scal, -v));
        let tp = t.scale(f, factor);
        let Some(k_omega) = f.log(target.det(f)) else {
            *last = Some(Error::ExtensionNormalizationFailed("det rho(c^m) is not a root of unity".into()));
            return None;
        };
        let l = f.l;
        let want = ((u.rem_euclid(l as i64) as u64) * k_omega) % l;
        let choices: Vec<u64> = (0..l).filter(|&a| (m * a) % l == want).collect();
        if choices.is_empty() {
            *last = Some(Error::ExtensionNormalizationFailed(format!("no {m}-th root of the normalizing scalar in mu_L")));
            return None;
        }
        for a in choices {
            let big_m = tp.scale(f, f.root(a));
            let mut table = st.table.clone();
            let mut elems = st.elems.clone();
            let mut power = ModMat::identity(d);
            let mut ck = ctx.identity();
            for _ in 1..m {
                power = power.mul(f, &big_m);
                ck = ctx.mul(ck, c);
                for &x in &st.elems {
                    let y = ctx.mul(x, ck);
                    table[pos(y)] = Some(rho(x).mul(f, &power));
                    elems.push(y);
                }
            }
            let mut gens = st.gens.clone();
            gens.push(c);
            if let Some(done) = self.extend_rec(s, Partial { table, elems, gens }, last) {
                return Some(done);
            }
        }
        None
    }
}

struct Partial {
    table: Vec<Option<ModMat>>,
    elems: Vec<u32>,
    gens: Vec<u32>,
}

/// `(g, u, v)` with `u a + v b = g = gcd(a, b)`.
fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, u, v) = ext_gcd(b, a % b);
        (g, v, u - (a / b) * v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charthy::{abelian_char_group, extend_linear, induce_linear};
    use crate::grp::{GroupContext, DEFAULT_CAP};

    #[test]
    fn monomial_model_matches_induced_character() {
        let cc = CharContext::new(&GroupContext::from_literal("zmod:3^1", 2, DEFAULT_CAP).unwrap());
        let ctx = &cc.ctx;
        let g = ctx.whole();
        // Borel subgroup and one of its linear characters.
        let borel = Arc::new(ctx.filter("B", |x| ctx.entries(x)[2] == 0).unwrap());
        let u = Arc::new(ctx.filter("U", |x| ctx.entries(x)[2] == 0 && ctx.entries(x)[0] == 1 && ctx.entries(x)[3] == 1).unwrap());
        let lin = extend_linear(&LinearChar::trivial(&cc, &u), &borel, true).unwrap();
        assert_eq!(lin.len(), 4);
        for chi in &lin {
            let model = RepnModel::monomial(chi, &g).unwrap();
            assert!(model.verify_homomorphism());
            assert_eq!(model.character().unwrap(), induce_linear(chi, &g).unwrap());
        }
    }

    #[test]
    fn extension_from_normal_subgroup() {
        // SL_2(F_3) has a normal quaternion subgroup whose 2-dimensional
        // irreducible extends to GL_2(F_3) through SL_2.
        let cc = CharContext::new(&GroupContext::from_literal("zmod:3^1", 2, DEFAULT_CAP).unwrap());
        let ctx = &cc.ctx;
        let q8 = Arc::new(ctx.whole().sylow_p(ctx, 2).intersect(ctx, &ctx.filter("SL", |x| ctx.mat(x).det() == 1).unwrap()));
        assert_eq!(q8.order(), 8);
        let x = *q8.elems.iter().find(|&&x| ctx.element_order(x) == 4).unwrap();
        let z4 = Arc::new(ctx.generated("Z4", &[x]));
        let chars = abelian_char_group(&cc, &z4).unwrap();
        let faithful = chars.iter().find(|c| c.exps.iter().filter(|&&e| e == 0).count() == 1).unwrap();
        let rho = RepnModel::monomial(faithful, &q8).unwrap();
        assert!(rho.character().unwrap().is_irreducible().unwrap());
        let sl = Arc::new(ctx.filter("SL", |x| ctx.mat(x).det() == 1).unwrap());
        let ext = rho.extend_to(&sl).unwrap();
        let chi = ext.character().unwrap();
        assert!(chi.is_irreducible().unwrap());
        assert_eq!(chi.restrict(&q8).unwrap(), rho.character().unwrap());
    }
}

//! Characters of subgroups of `G_r`: linear characters as exponent tables,
//! class functions with exact cyclotomic values, induction, restriction,
//! inner products and extension of linear characters.

pub mod cyclo;

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grp::lemmas::psi_exponent;
use crate::grp::{GroupContext, Subgroup, ABSENT};
use crate::matalg::Mat;

pub use cyclo::{CycloField, CycloVal, ModEmbed};

/// Shared character data for one `G_r`: the conductor `L` (a multiple of the
/// group exponent and of the additive character's order) and `Q(zeta_L)`.
#[derive(Debug)]
pub struct CharContext {
    pub ctx: Arc<GroupContext>,
    pub field: Arc<CycloField>,
    pub l: u64,
    /// `L / char_modulus`: converts additive character exponents to `zeta_L`.
    pub eps_scale: u64,
}

impl CharContext {
    pub fn new(ctx: &Arc<GroupContext>) -> Arc<CharContext> {
        let m = ctx.ring.char_modulus() as u64;
        let l = num_integer::lcm(ctx.exponent(), m);
        Arc::new(CharContext { ctx: Arc::clone(ctx), field: CycloField::new(l), l, eps_scale: l / m })
    }

    pub fn modular(&self) -> &ModEmbed {
        &self.field.modular
    }

    /// The trivial subgroup.
    pub fn trivial_subgroup(&self) -> Arc<Subgroup> {
        Arc::new(self.ctx.generated("1", &[]))
    }
}

/// A linear character, stored as exponents of `zeta_L` aligned with the
/// sorted elements of its base subgroup.
#[derive(Clone)]
pub struct LinearChar {
    pub cc: Arc<CharContext>,
    pub base: Arc<Subgroup>,
    pub exps: Vec<u32>,
}

impl std::fmt::Debug for LinearChar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinearChar on {:?}", self.base)
    }
}

impl PartialEq for LinearChar {
    fn eq(&self, other: &Self) -> bool {
        self.base.elems == other.base.elems && self.exps == other.exps
    }
}

impl LinearChar {
    pub fn trivial(cc: &Arc<CharContext>, base: &Arc<Subgroup>) -> LinearChar {
        LinearChar { cc: Arc::clone(cc), base: Arc::clone(base), exps: vec![0; base.order()] }
    }

    #[inline]
    pub fn exp(&self, g: u32) -> Option<u32> {
        self.base.position(g).map(|p| self.exps[p as usize])
    }

    pub fn value(&self, g: u32) -> Option<CycloVal> {
        self.exp(g).map(|e| self.cc.field.root(e as u64))
    }

    pub fn mul(&self, other: &LinearChar) -> Result<LinearChar> {
        if self.base.elems != other.base.elems {
            return Err(Error::BaseMismatch);
        }
        let l = self.cc.l as u32;
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| (a + b) % l).collect();
        Ok(LinearChar { cc: Arc::clone(&self.cc), base: Arc::clone(&self.base), exps })
    }

    pub fn conj(&self) -> LinearChar {
        let l = self.cc.l as u32;
        let exps = self.exps.iter().map(|&a| (l - a) % l).collect();
        LinearChar { cc: Arc::clone(&self.cc), base: Arc::clone(&self.base), exps }
    }

    pub fn restrict(&self, sub: &Arc<Subgroup>) -> Result<LinearChar> {
        let exps = sub
            .elems
            .iter()
            .map(|&g| self.exp(g).ok_or_else(|| Error::NotASubgroup(format!("{} ⊄ {}", sub.name, self.base.name))))
            .collect::<Result<_>>()?;
        Ok(LinearChar { cc: Arc::clone(&self.cc), base: Arc::clone(sub), exps })
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// `f(gy) = f(g) f(y)` for generators `g` and all `y`.
    pub fn is_multiplicative(&self) -> bool {
        let ctx = &self.cc.ctx;
        let l = self.cc.l as u32;
        self.base.gens.iter().all(|&g| {
            let eg = self.exp(g).expect("generator in base");
            self.base.elems.iter().zip(&self.exps).all(|(&y, &ey)| self.exp(ctx.mul(g, y)) == Some((eg + ey) % l))
        })
    }

    /// Value of `f` composed with conjugation: `g -> f(s g s^{-1})`.
    pub fn is_stable_under(&self, s: u32) -> bool {
        let ctx = &self.cc.ctx;
        self.base.gens.iter().all(|&g| self.exp(ctx.conj(s, g)) == self.exp(g))
    }

    pub fn to_class_function(&self) -> ClassFunction {
        let classes = self.base.classes(&self.cc.ctx);
        let values = classes.reps.iter().map(|&g| self.value(g).expect("rep in base")).collect();
        ClassFunction::new(&self.cc, &self.base, values)
    }
}

/// The table `1 + x -> eps(tr(beta x))` on an arbitrary subgroup. It is a
/// character only on subgroups where the trace form is multiplicative,
/// which callers establish (or check with [`LinearChar::is_multiplicative`]).
pub fn psi_beta_on(cc: &Arc<CharContext>, beta: &Mat, base: &Arc<Subgroup>) -> LinearChar {
    let ctx = &cc.ctx;
    let exps = base.elems.iter().map(|&g| psi_exponent(ctx, beta, g) * cc.eps_scale as u32).collect();
    LinearChar { cc: Arc::clone(cc), base: Arc::clone(base), exps }
}

/// `psi_beta` on `K^i` for `2i >= r`.
pub fn psi_beta(cc: &Arc<CharContext>, beta: &Mat, i: u32) -> Result<LinearChar> {
    let ctx = &cc.ctx;
    if 2 * i < ctx.r || i > ctx.r {
        return Err(Error::BadLevel { level: i, max: ctx.r });
    }
    let ki = Arc::new(ctx.congruence_kernel(i)?);
    Ok(psi_beta_on(cc, beta, &ki))
}

/// A class function on a subgroup, one exact value per conjugacy class of
/// the base (classes in the order of [`Subgroup::classes`]).
#[derive(Clone)]
pub struct ClassFunction {
    pub cc: Arc<CharContext>,
    pub base: Arc<Subgroup>,
    pub values: Vec<CycloVal>,
    res: Vec<u64>,
    res_conj: Vec<u64>,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction on {:?}, degree {:?}", self.base, self.dim())
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        self.base.elems == other.base.elems && self.res == other.res && self.values == other.values
    }
}

impl ClassFunction {
    pub fn new(cc: &Arc<CharContext>, base: &Arc<Subgroup>, values: Vec<CycloVal>) -> ClassFunction {
        let conj = cc.l - 1;
        let res = values.iter().map(|v| v.residue()).collect();
        let res_conj = values.iter().map(|v| v.residue_at(conj)).collect();
        ClassFunction { cc: Arc::clone(cc), base: Arc::clone(base), values, res, res_conj }
    }

    pub fn value_at(&self, g: u32) -> Option<&CycloVal> {
        let pos = self.base.position(g)?;
        let classes = self.base.classes(&self.cc.ctx);
        Some(&self.values[classes.class_of[pos as usize] as usize])
    }

    pub fn dim(&self) -> CycloVal {
        self.value_at(self.cc.ctx.identity()).expect("identity").clone()
    }

    pub fn dim_int(&self) -> Option<i64> {
        self.dim().to_integer()
    }

    /// Residues of the values in `F_ell`; a cheap hash key.
    pub fn residues(&self) -> &[u64] {
        &self.res
    }

    fn check_base(&self, other: &ClassFunction) -> Result<()> {
        if self.base.elems != other.base.elems {
            return Err(Error::BaseMismatch);
        }
        Ok(())
    }

    /// Exact `<self, other> = |H|^{-1} sum_g self(g) conj(other(g))`.
    pub fn inner_product(&self, other: &ClassFunction) -> Result<CycloVal> {
        self.check_base(other)?;
        let classes = self.base.classes(&self.cc.ctx);
        let mut acc = self.cc.field.zero();
        for (k, &size) in classes.sizes.iter().enumerate() {
            if self.values[k].is_zero() || other.values[k].is_zero() {
                continue;
            }
            let term = self.values[k].mul(&other.values[k].conj());
            acc = acc.add(&term.scale(&BigRational::from_integer(BigInt::from(size))));
        }
        Ok(acc.scale(&BigRational::new(BigInt::from(1), BigInt::from(self.base.order()))))
    }

    /// Inner product of genuine characters, computed in `F_ell` and lifted.
    /// The true value is a non-negative integer bounded by the product of
    /// the degrees, far below `ell / 2` at the sizes we handle.
    pub fn inner_product_int(&self, other: &ClassFunction) -> Result<i64> {
        self.check_base(other)?;
        let m = self.cc.modular();
        let classes = self.base.classes(&self.cc.ctx);
        let mut acc = 0u64;
        for (k, &size) in classes.sizes.iter().enumerate() {
            if self.res[k] == 0 || other.res_conj[k] == 0 {
                continue;
            }
            acc = m.add(acc, m.mul(size as u64, m.mul(self.res[k], other.res_conj[k])));
        }
        Ok(m.lift(m.mul(acc, m.inv(self.base.order() as u64 % m.ell))))
    }

    pub fn norm(&self) -> Result<i64> {
        self.inner_product_int(self)
    }

    pub fn is_irreducible(&self) -> Result<bool> {
        Ok(self.norm()? == 1)
    }

    pub fn restrict(&self, sub: &Arc<Subgroup>) -> Result<ClassFunction> {
        let classes = sub.classes(&self.cc.ctx);
        let values = classes
            .reps
            .iter()
            .map(|&g| {
                self.value_at(g)
                    .cloned()
                    .ok_or_else(|| Error::NotASubgroup(format!("{} ⊄ {}", sub.name, self.base.name)))
            })
            .collect::<Result<_>>()?;
        Ok(ClassFunction::new(&self.cc, sub, values))
    }

    pub fn tensor_linear(&self, lin: &LinearChar) -> Result<ClassFunction> {
        if self.base.elems != lin.base.elems {
            return Err(Error::BaseMismatch);
        }
        let classes = self.base.classes(&self.cc.ctx);
        let values = classes
            .reps
            .iter()
            .zip(&self.values)
            .map(|(&g, v)| if v.is_zero() { v.clone() } else { v.mul(&lin.value(g).expect("in base")) })
            .collect();
        Ok(ClassFunction::new(&self.cc, &self.base, values))
    }

    pub fn add(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_base(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.add(b)).collect();
        Ok(ClassFunction::new(&self.cc, &self.base, values))
    }

    pub fn sub(&self, other: &ClassFunction) -> Result<ClassFunction> {
        self.check_base(other)?;
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.sub(b)).collect();
        Ok(ClassFunction::new(&self.cc, &self.base, values))
    }

    pub fn zero(cc: &Arc<CharContext>, base: &Arc<Subgroup>) -> ClassFunction {
        let n = base.classes(&cc.ctx).len();
        ClassFunction::new(cc, base, vec![cc.field.zero(); n])
    }

    pub fn to_json(&self) -> Value {
        let ctx = &self.cc.ctx;
        let classes = self.base.classes(ctx);
        let entries: Vec<Value> = classes
            .reps
            .iter()
            .zip(&classes.sizes)
            .zip(&self.values)
            .filter(|(_, v)| !v.is_zero())
            .map(|((&g, &size), v)| json!({"rep": ctx.mat(g).to_json(), "size": size, "value": v.to_json()}))
            .collect();
        json!({
            "group": self.base.name,
            "order": self.base.order(),
            "classes": classes.len(),
            "degree": self.dim().to_json(),
            "nonzero_values": entries,
        })
    }
}

fn check_subgroup(small: &Subgroup, big: &Subgroup) -> Result<()> {
    if !small.is_subgroup_of(big) {
        return Err(Error::NotASubgroup(format!("{} ⊄ {}", small.name, big.name)));
    }
    Ok(())
}

/// `Ind_H^G f (g) = |G| / (|H| |g^G|) * sum over h in H ∩ g^G of f(h)`.
/// Inflation of a class function of the whole of `G_s` to the whole of
/// `G_r` (`s <= r`, same `N` and residue field) through reduction.
pub fn inflate(f: &ClassFunction, cc: &Arc<CharContext>) -> Result<ClassFunction> {
    let small = &f.cc.ctx;
    let ctx = &cc.ctx;
    if f.base.order() != small.order() || small.n != ctx.n || small.r > ctx.r {
        return Err(Error::ShapeMismatch("inflation needs a class function of a quotient G_s".into()));
    }
    let whole = ctx.whole();
    let classes = whole.classes(ctx);
    let values = classes
        .reps
        .iter()
        .map(|&g| {
            let m = ctx.mat(g).reduce_to(&small.ring);
            let h = small.index_of(&m.e).ok_or(Error::NotAUnit)?;
            f.value_at(h).expect("whole group").embed(&cc.field)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassFunction::new(cc, &whole, values))
}

pub fn induce_linear(lin: &LinearChar, big: &Arc<Subgroup>) -> Result<ClassFunction> {
    check_subgroup(&lin.base, big)?;
    let cc = &lin.cc;
    let ctx = &cc.ctx;
    let classes = big.classes(ctx);
    let l = cc.l as usize;
    let mut acc: Vec<Option<Vec<i64>>> = vec![None; classes.len()];
    for (&h, &e) in lin.base.elems.iter().zip(&lin.exps) {
        let c = classes.class_of[big.position(h).expect("subgroup") as usize] as usize;
        acc[c].get_or_insert_with(|| vec![0; l])[e as usize] += 1;
    }
    let values = acc
        .iter()
        .enumerate()
        .map(|(c, a)| match a {
            None => cc.field.zero(),
            Some(a) => {
                let v = cc.field.from_group_ring(a);
                v.scale(&BigRational::new(
                    BigInt::from(big.order()),
                    BigInt::from(lin.base.order()) * BigInt::from(classes.sizes[c]),
                ))
            }
        })
        .collect();
    Ok(ClassFunction::new(cc, big, values))
}

/// Induction of an arbitrary class function, summing over classes of `H`.
pub fn induce(f: &ClassFunction, big: &Arc<Subgroup>) -> Result<ClassFunction> {
    check_subgroup(&f.base, big)?;
    let cc = &f.cc;
    let ctx = &cc.ctx;
    let big_classes = big.classes(ctx);
    let small_classes = f.base.classes(ctx);
    let mut acc: Vec<CycloVal> = vec![cc.field.zero(); big_classes.len()];
    for (k, (&rep, &size)) in small_classes.reps.iter().zip(&small_classes.sizes).enumerate() {
        if f.values[k].is_zero() {
            continue;
        }
        let c = big_classes.class_of[big.position(rep).expect("subgroup") as usize] as usize;
        acc[c] = acc[c].add(&f.values[k].scale(&BigRational::from_integer(BigInt::from(size))));
    }
    let values = acc
        .into_iter()
        .enumerate()
        .map(|(c, v)| {
            if v.is_zero() {
                v
            } else {
                v.scale(&BigRational::new(
                    BigInt::from(big.order()),
                    BigInt::from(f.base.order()) * BigInt::from(big_classes.sizes[c]),
                ))
            }
        })
        .collect();
    Ok(ClassFunction::new(cc, big, values))
}

/// A class function whose value on each base class is a sum of roots of
/// unity `sum zeta_L^{k}`, given by the exponent lists.
pub fn from_root_sums(cc: &Arc<CharContext>, base: &Arc<Subgroup>, sums: &[Vec<u32>]) -> ClassFunction {
    let l = cc.l as usize;
    let values = sums
        .iter()
        .map(|ks| {
            let mut acc = vec![0i64; l];
            for &k in ks {
                acc[k as usize % l] += 1;
            }
            cc.field.from_group_ring(&acc)
        })
        .collect();
    ClassFunction::new(cc, base, values)
}

/// Induction of a root-sum class function, optionally twisted by a linear
/// character of the base, accumulating in `Z[C_L]` per class of `G`.
pub fn induce_root_sums(
    cc: &Arc<CharContext>,
    base: &Arc<Subgroup>,
    sums: &[Vec<u32>],
    twist: Option<&LinearChar>,
    big: &Arc<Subgroup>,
) -> Result<ClassFunction> {
    check_subgroup(base, big)?;
    let ctx = &cc.ctx;
    let l = cc.l as usize;
    let small = base.classes(ctx);
    let classes = big.classes(ctx);
    let mut acc: Vec<Option<Vec<i64>>> = vec![None; classes.len()];
    for ((ks, &rep), &size) in sums.iter().zip(&small.reps).zip(&small.sizes) {
        if ks.is_empty() {
            continue;
        }
        let shift = match twist {
            Some(t) => t.exp(rep).ok_or(Error::BaseMismatch)? as usize,
            None => 0,
        };
        let c = classes.class_of[big.position(rep).expect("subgroup") as usize] as usize;
        let slot = acc[c].get_or_insert_with(|| vec![0; l]);
        for &k in ks {
            slot[(k as usize + shift) % l] += size as i64;
        }
    }
    let values = acc
        .iter()
        .enumerate()
        .map(|(c, a)| match a {
            None => cc.field.zero(),
            Some(a) => cc.field.from_group_ring(a).scale(&BigRational::new(
                BigInt::from(big.order()),
                BigInt::from(base.order()) * BigInt::from(classes.sizes[c]),
            )),
        })
        .collect();
    Ok(ClassFunction::new(cc, big, values))
}

/// Extensions of a linear character from `H` to `S ⊇ H`, adjoining the
/// generators of `S` one at a time. `S/H` should be abelian (so each
/// intermediate group is normal in the next); stability is checked as we go.
/// With `all`, returns every extension (a torsor under `Irr(S/H)`),
/// otherwise the first one found.
pub fn extend_linear(chi: &LinearChar, s: &Arc<Subgroup>, all: bool) -> Result<Vec<LinearChar>> {
    check_subgroup(&chi.base, s)?;
    let cc = &chi.cc;
    let mut table = vec![ABSENT; s.order()];
    let mut members = Vec::with_capacity(s.order());
    for (&g, &e) in chi.base.elems.iter().zip(&chi.exps) {
        table[s.position(g).expect("subgroup") as usize] = e;
        members.push(g);
    }
    let mut out = vec![];
    let mut last_err = None;
    extend_rec(cc, s, table, members, all, &mut out, &mut last_err);
    if out.is_empty() {
        return Err(last_err.unwrap_or_else(|| Error::NoExtension(format!("{} to {}", chi.base.name, s.name))));
    }
    Ok(out)
}

fn extend_rec(
    cc: &Arc<CharContext>,
    s: &Arc<Subgroup>,
    table: Vec<u32>,
    members: Vec<u32>,
    all: bool,
    out: &mut Vec<LinearChar>,
    err: &mut Option<Error>,
) {
    let ctx = &cc.ctx;
    let l = cc.l;
    let at = |t: &[u32], g: u32| t[s.position(g).expect("in S") as usize];
    let Some(&g) = s.gens.iter().find(|&&g| at(&table, g) == ABSENT) else {
        let f = LinearChar { cc: Arc::clone(cc), base: Arc::clone(s), exps: table };
        if f.is_multiplicative() {
            out.push(f);
        } else {
            *err = Some(Error::NoExtension("extension is not multiplicative".into()));
        }
        return;
    };
    // Stability of the current character under g.
    for &t in &members {
        let c = ctx.conj(g, t);
        let v = at(&table, c);
        if v == ABSENT {
            *err = Some(Error::NoExtension(format!("current subgroup is not normalized in {}", s.name)));
            return;
        }
        if v != at(&table, t) {
            *err = Some(Error::NoExtension(format!("character is not stable in {}", s.name)));
            return;
        }
    }
    let mut m = 1u64;
    let mut gm = g;
    while at(&table, gm) == ABSENT {
        gm = ctx.mul(gm, g);
        m += 1;
    }
    let target = at(&table, gm) as u64;
    let powers: Vec<u32> = (0..m).scan(ctx.identity(), |x, _| {
        let cur = *x;
        *x = ctx.mul(*x, g);
        Some(cur)
    }).collect();
    for a in 0..l {
        if (m * a) % l != target {
            continue;
        }
        let mut t2 = table.clone();
        let mut mem2 = members.clone();
        for (k, &gk) in powers.iter().enumerate().skip(1) {
            let shift = (k as u64 * a % l) as u32;
            for &t in &members {
                let x = ctx.mul(t, gk);
                let e = ((at(&table, t) + shift) as u64 % l) as u32;
                t2[s.position(x).expect("in S") as usize] = e;
                mem2.push(x);
            }
        }
        extend_rec(cc, s, t2, mem2, all, out, err);
        if !all && !out.is_empty() {
            return;
        }
    }
}

/// All linear characters of an abelian subgroup.
pub fn abelian_char_group(cc: &Arc<CharContext>, a: &Arc<Subgroup>) -> Result<Vec<LinearChar>> {
    if !a.is_abelian(&cc.ctx) {
        return Err(Error::NotAbelian);
    }
    let triv = LinearChar::trivial(cc, &cc.trivial_subgroup());
    extend_linear(&triv, a, true)
}

/// Orbit size and stabilizer of a linear character of `K ⊴ G`.
pub fn orbit_of_character(psi: &LinearChar, g: &Arc<Subgroup>) -> Result<(usize, Subgroup)> {
    let ctx = &psi.cc.ctx;
    let elems: Vec<u32> = g.elems.iter().copied().filter(|&x| psi.is_stable_under(x)).collect();
    let stab = Subgroup::from_elems(ctx, &format!("Stab_{}", g.name), elems)?;
    Ok((g.order() / stab.order(), stab))
}

/// `Ind_N^H rho = sum over lambda in Irr(H/N) of ext * lambda` for a linear
/// extension `ext` of `rho`.
pub fn gallagher_check(rho: &LinearChar, ext: &LinearChar) -> Result<bool> {
    let cc = &rho.cc;
    let h = &ext.base;
    if ext.restrict(&rho.base)? != *rho {
        return Ok(false);
    }
    let lhs = induce_linear(rho, h)?;
    let twists = extend_linear(&LinearChar::trivial(cc, &rho.base), h, true)?;
    let mut rhs = ClassFunction::zero(cc, h);
    for lam in &twists {
        rhs = rhs.add(&ext.mul(lam)?.to_class_function())?;
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::DEFAULT_CAP;

    fn setup(lit: &str) -> Arc<CharContext> {
        CharContext::new(&GroupContext::from_literal(lit, 2, DEFAULT_CAP).unwrap())
    }

    #[test]
    fn psi_tables() {
        let cc = setup("zmod:2^2");
        let ring = &cc.ctx.ring;
        let zero = psi_beta(&cc, &Mat::zero(ring, 2), 1).unwrap();
        assert!(zero.is_trivial());
        let id = psi_beta(&cc, &Mat::identity(ring, 2), 1).unwrap();
        assert!(id.is_multiplicative());
        let orders: std::collections::BTreeSet<u64> =
            id.exps.iter().map(|&e| cc.l / num_integer::gcd(cc.l, e as u64)).collect();
        assert_eq!(orders.into_iter().max(), Some(2));
        assert!(psi_beta(&cc, &Mat::identity(ring, 2), 0).is_err());
    }

    #[test]
    fn duality_count() {
        let cc = setup("zmod:2^2");
        let ring = &cc.ctx.ring;
        let mut seen = std::collections::BTreeSet::new();
        for code in 0..256u32 {
            let e: Vec<u16> = (0..4).map(|k| ((code >> (2 * k)) & 3) as u16).collect();
            let beta = Mat { n: 2, ring: Arc::clone(ring), e };
            seen.insert(psi_beta(&cc, &beta, 1).unwrap().exps);
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn induction_and_products() {
        let cc = setup("zmod:2^2");
        let ctx = &cc.ctx;
        let g = ctx.whole();
        let triv = LinearChar::trivial(&cc, &g).to_class_function();
        assert_eq!(triv.inner_product(&triv).unwrap(), cc.field.one());
        let one = cc.trivial_subgroup();
        let reg = induce_linear(&LinearChar::trivial(&cc, &one), &g).unwrap();
        assert_eq!(reg.dim_int(), Some(96));
        assert_eq!(reg.inner_product_int(&triv).unwrap(), 1);
        assert_eq!(reg.inner_product(&triv).unwrap(), cc.field.one());
        let same = induce_linear(&LinearChar::trivial(&cc, &g), &g).unwrap();
        assert_eq!(same, triv);
        let k1 = Arc::new(ctx.congruence_kernel(1).unwrap());
        let big = induce_linear(&LinearChar::trivial(&cc, &k1), &g).unwrap();
        assert_eq!(big.dim_int(), Some(6));
    }

    #[test]
    fn frobenius_and_transitivity() {
        let cc = setup("zmod:2^2");
        let ctx = &cc.ctx;
        let g = ctx.whole();
        let k1 = Arc::new(ctx.congruence_kernel(1).unwrap());
        let beta = Mat::companion(&ctx.ring, &[1, 1, 1]);
        let psi = psi_beta(&cc, &beta, 1).unwrap();
        let c = crate::grp::centralizer(ctx, &beta).unwrap();
        let s = Arc::new(ctx.join("S", &[&c, &k1]));
        let ext = extend_linear(&psi, &s, true).unwrap();
        assert_eq!(ext.len(), s.order() / k1.order());
        let mid = induce_linear(&psi, &s).unwrap();
        let direct = induce_linear(&psi, &g).unwrap();
        assert_eq!(induce(&mid, &g).unwrap(), direct);
        for e in &ext {
            let pi = induce_linear(e, &g).unwrap();
            assert!(pi.is_irreducible().unwrap());
            assert_eq!(pi.dim_int(), Some(2));
            let lhs = pi.inner_product_int(&direct).unwrap();
            let rhs = e.to_class_function().inner_product_int(&mid).unwrap();
            assert_eq!(lhs, rhs);
        }
        assert!(gallagher_check(&psi, &ext[0]).unwrap());
    }

    #[test]
    fn abelian_groups_and_orbits() {
        let cc = setup("zmod:2^3");
        let ctx = &cc.ctx;
        let beta = Mat::companion(&ctx.ring, &[1, 1, 1]);
        let c = Arc::new(crate::grp::centralizer(ctx, &beta).unwrap());
        let chars = abelian_char_group(&cc, &c).unwrap();
        assert_eq!(chars.len(), 48);
        let cfs: Vec<ClassFunction> = chars.iter().take(6).map(|x| x.to_class_function()).collect();
        for (i, a) in cfs.iter().enumerate() {
            for (j, b) in cfs.iter().enumerate() {
                assert_eq!(a.inner_product_int(b).unwrap(), (i == j) as i64);
            }
        }
        let psi = psi_beta(&cc, &beta, 2).unwrap();
        let (orbit, stab) = orbit_of_character(&psi, &ctx.whole()).unwrap();
        assert_eq!((orbit, stab.order()), (2, 768));
        let k1 = Arc::new(ctx.congruence_kernel(1).unwrap());
        assert!(abelian_char_group(&cc, &k1).is_err());
    }

    #[test]
    fn extensions_to_h_big() {
        let cc = setup("zmod:2^3");
        let ctx = &cc.ctx;
        let beta = Mat::companion(&ctx.ring, &[1, 1, 1]);
        let lat = crate::grp::ParahoricLattice::new(ctx, &beta).unwrap();
        let psi = psi_beta(&cc, &lat.data.beta, 2).unwrap();
        let h = Arc::clone(&lat.h_big_m1);
        assert_eq!(extend_linear(&psi, &h, true).unwrap().len(), 4);
    }
}

//! Enumerated matrix groups `GL_N(o_r)` and their subgroups.
//!
//! Every element of `G_r` gets a dense index (its rank in row-major
//! lexicographic order). Subgroups are sorted index lists with a position
//! table over `G_r`, plus a small generating set built by Dimino's
//! algorithm; conjugacy classes are orbits under conjugation by those
//! generators.

pub mod cache;
pub mod lemmas;
pub mod parahoric;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::matalg::Mat;
use crate::ring::{Idx, Ring, RingSpec};

pub use parahoric::{ParahoricData, ParahoricLattice};

/// Default cap on `|G_r|`.
pub const DEFAULT_CAP: u128 = 10_000_000;
/// Largest supported `N`.
pub const MAX_N: usize = 4;
const DENSE_LOOKUP_LIMIT: u128 = 1 << 24;
pub const ABSENT: u32 = u32::MAX;

/// `|GL_N(o_r)| = q^{(r-1)N^2} * prod_{i<N} (q^N - q^i)`.
pub fn closed_form_order(spec: &RingSpec, n: usize) -> u128 {
    let q = spec.q() as u128;
    let n = n as u32;
    let mut order = q.pow((spec.r - 1) * n * n);
    for i in 0..n {
        order *= q.pow(n) - q.pow(i);
    }
    order
}

enum Lookup {
    Dense(Vec<u32>),
    Sparse(HashMap<u64, u32>),
}

/// `G_r = GL_N(o_r)` fully enumerated.
pub struct GroupContext {
    pub ring: Arc<Ring>,
    pub n: usize,
    pub r: u32,
    /// `ceil(r/2)`.
    pub l: u32,
    /// `r - l`.
    pub lp: u32,
    pub cap: u128,
    n2: usize,
    keys: Vec<u64>,
    mats: Vec<Idx>,
    lookup: Lookup,
    inv: Vec<u32>,
    identity: u32,
    whole: OnceLock<Arc<Subgroup>>,
}

impl std::fmt::Debug for GroupContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GL_{}({})", self.n, self.ring.spec)
    }
}

impl GroupContext {
    pub fn new(ring: &Arc<Ring>, n: usize, cap: u128) -> Result<Arc<GroupContext>> {
        if n == 0 || n > MAX_N {
            return Err(Error::UnsupportedSize(format!("N = {n} (supported: 1..={MAX_N})")));
        }
        let order = closed_form_order(&ring.spec, n);
        if order > cap {
            return Err(Error::DeskScaleExceeded { what: format!("GL_{n}({})", ring.spec), size: order, cap });
        }
        let n2 = n * n;
        let size = ring.size() as u128;
        let space = size.pow(n2 as u32);
        if space > u64::MAX as u128 / 2 {
            return Err(Error::UnsupportedSize("matrix space too large to index".into()));
        }
        let mut keys = Vec::with_capacity(order as usize);
        let mut mats = Vec::with_capacity(order as usize * n2);
        let mut buf = vec![0 as Idx; n2];
        for key in 0..space as u64 {
            let mut x = key;
            for k in (0..n2).rev() {
                buf[k] = (x % size as u64) as Idx;
                x /= size as u64;
            }
            if ring.is_unit(crate::matalg::det_raw(ring, n, &buf)) {
                keys.push(key);
                mats.extend_from_slice(&buf);
            }
        }
        if keys.len() as u128 != order {
            return Err(Error::CertificateFailed(format!(
                "enumerated {} elements, closed form gives {order}",
                keys.len()
            )));
        }
        let lookup = if space <= DENSE_LOOKUP_LIMIT {
            let mut t = vec![ABSENT; space as usize];
            for (i, &k) in keys.iter().enumerate() {
                t[k as usize] = i as u32;
            }
            Lookup::Dense(t)
        } else {
            Lookup::Sparse(keys.iter().enumerate().map(|(i, &k)| (k, i as u32)).collect())
        };
        let r = ring.level();
        let l = r.div_ceil(2);
        let mut ctx = GroupContext {
            ring: Arc::clone(ring),
            n,
            r,
            l,
            lp: r - l,
            cap,
            n2,
            keys,
            mats,
            lookup,
            inv: vec![],
            identity: 0,
            whole: OnceLock::new(),
        };
        ctx.identity = ctx.index_of(&Mat::identity(ring, n).e).expect("identity is invertible");
        let inv: Vec<u32> = (0..ctx.order() as u32)
            .map(|g| ctx.index_of(&ctx.mat(g).inverse().expect("unit").e).expect("closed"))
            .collect();
        ctx.inv = inv;
        Ok(Arc::new(ctx))
    }

    pub fn from_literal(lit: &str, n: usize, cap: u128) -> Result<Arc<GroupContext>> {
        GroupContext::new(&Ring::from_literal(lit)?, n, cap)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.keys.len()
    }
    #[inline]
    pub fn identity(&self) -> u32 {
        self.identity
    }
    #[inline]
    pub fn entries(&self, g: u32) -> &[Idx] {
        &self.mats[g as usize * self.n2..(g as usize + 1) * self.n2]
    }
    pub fn mat(&self, g: u32) -> Mat {
        Mat { n: self.n, ring: Arc::clone(&self.ring), e: self.entries(g).to_vec() }
    }

    fn key_of(&self, e: &[Idx]) -> u64 {
        let size = self.ring.size() as u64;
        e.iter().fold(0u64, |acc, &x| acc * size + x as u64)
    }

    /// Index of an invertible matrix given by its entries.
    pub fn index_of(&self, e: &[Idx]) -> Option<u32> {
        let key = self.key_of(e);
        match &self.lookup {
            Lookup::Dense(t) => t.get(key as usize).copied().filter(|&i| i != ABSENT),
            Lookup::Sparse(m) => m.get(&key).copied(),
        }
    }

    pub fn index_of_mat(&self, m: &Mat) -> Result<u32> {
        if m.n != self.n || m.ring.spec != self.ring.spec {
            return Err(Error::SpecMismatch);
        }
        self.index_of(&m.e).ok_or(Error::NotAUnit)
    }

    #[inline]
    pub fn mul_entries(&self, a: &[Idx], b: &[Idx], out: &mut [Idx]) {
        crate::matalg::mul_raw(&self.ring, self.n, a, b, out);
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut buf = [0 as Idx; MAX_N * MAX_N];
        let out = &mut buf[..self.n2];
        self.mul_entries(self.entries(a), self.entries(b), out);
        self.index_of(out).expect("product of units")
    }

    #[inline]
    pub fn inv(&self, g: u32) -> u32 {
        self.inv[g as usize]
    }

    /// `g x g^{-1}`.
    #[inline]
    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: u32, b: u32) -> u32 {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, g: u32, mut k: u64) -> u32 {
        let (mut b, mut acc) = (g, self.identity);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: u32) -> u64 {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Largest `k <= r` with `g ∈ K^k`.
    pub fn level_of(&self, g: u32) -> u32 {
        let e = self.entries(g);
        let n = self.n;
        let mut v = self.r;
        for i in 0..n {
            for j in 0..n {
                let x = if i == j { self.ring.sub(e[i * n + j], 1) } else { e[i * n + j] };
                v = v.min(self.ring.valuation(x));
            }
        }
        v
    }

    /// The whole group as a subgroup.
    pub fn whole(&self) -> Arc<Subgroup> {
        Arc::clone(self.whole.get_or_init(|| {
            let elems: Vec<u32> = (0..self.order() as u32).collect();
            Arc::new(Subgroup::from_elems(self, "G", elems).expect("the group is a group"))
        }))
    }

    /// `K^i = 1 + p^i g_r`.
    pub fn congruence_kernel(&self, i: u32) -> Result<Subgroup> {
        if i > self.r {
            return Err(Error::BadLevel { level: i, max: self.r });
        }
        let elems = (0..self.order() as u32).filter(|&g| self.level_of(g) >= i).collect();
        Subgroup::from_elems(self, &format!("K^{i}"), elems)
    }

    pub fn filter(&self, name: &str, pred: impl Fn(u32) -> bool) -> Result<Subgroup> {
        let elems = (0..self.order() as u32).filter(|&g| pred(g)).collect();
        Subgroup::from_elems(self, name, elems)
    }

    /// Subgroup generated by the given elements.
    pub fn generated(&self, name: &str, gens: &[u32]) -> Subgroup {
        let mut d = Dimino::new(self);
        for &g in gens {
            d.adjoin(self, g, None).expect("no membership restriction");
        }
        d.finish(self, name)
    }

    /// Subgroup generated by several subgroups.
    pub fn join(&self, name: &str, parts: &[&Subgroup]) -> Subgroup {
        let gens: Vec<u32> = parts.iter().flat_map(|s| s.gens.iter().copied()).collect();
        self.generated(name, &gens)
    }

    /// The matrix `1 + x`.
    pub fn one_plus(&self, x: &Mat) -> Option<u32> {
        let m = x.arith(&Mat::identity(&self.ring, self.n), crate::matalg::MatOp::Add).ok()?;
        self.index_of(&m.e)
    }

    /// `g - 1` as a matrix.
    pub fn minus_one(&self, g: u32) -> Mat {
        let mut m = self.mat(g);
        for i in 0..self.n {
            let d = i * self.n + i;
            m.e[d] = self.ring.sub(m.e[d], 1);
        }
        m
    }

    /// Exponent of the group.
    pub fn exponent(&self) -> u64 {
        let g = self.whole();
        let classes = g.classes(self);
        classes.reps.iter().fold(1u64, |acc, &x| num_integer::lcm(acc, self.element_order(x)))
    }
}

struct BitSet(Vec<u64>);

impl BitSet {
    fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }
    #[inline]
    fn get(&self, i: u32) -> bool {
        self.0[i as usize >> 6] >> (i & 63) & 1 == 1
    }
    #[inline]
    fn set(&mut self, i: u32) {
        self.0[i as usize >> 6] |= 1 << (i & 63);
    }
}

/// Incremental closure: adjoining a generator adds whole right cosets of the
/// current subgroup.
struct Dimino {
    elems: Vec<u32>,
    member: BitSet,
    gens: Vec<u32>,
}

impl Dimino {
    fn new(ctx: &GroupContext) -> Self {
        let mut member = BitSet::new(ctx.order());
        member.set(ctx.identity());
        Dimino { elems: vec![ctx.identity()], member, gens: vec![] }
    }

    fn contains(&self, g: u32) -> bool {
        self.member.get(g)
    }

    /// Adjoins `g`; with `allowed`, fails as soon as the closure leaves it.
    fn adjoin(&mut self, ctx: &GroupContext, g: u32, allowed: Option<&[u32]>) -> Result<()> {
        if self.contains(g) {
            return Ok(());
        }
        let h_len = self.elems.len();
        self.gens.push(g);
        let mut reps = vec![];
        let add_coset = |this: &mut Dimino, x: u32, reps: &mut Vec<u32>| -> Result<()> {
            reps.push(x);
            for i in 0..h_len {
                let y = ctx.mul(this.elems[i], x);
                if let Some(pos) = allowed {
                    if pos[y as usize] == ABSENT {
                        return Err(Error::NotASubgroup("closure leaves the given set".into()));
                    }
                }
                this.member.set(y);
                this.elems.push(y);
            }
            Ok(())
        };
        add_coset(self, g, &mut reps)?;
        let mut k = 0;
        while k < reps.len() {
            let x = reps[k];
            for s in 0..self.gens.len() {
                let y = ctx.mul(x, self.gens[s]);
                if !self.contains(y) {
                    add_coset(self, y, &mut reps)?;
                }
            }
            k += 1;
        }
        Ok(())
    }

    fn finish(self, ctx: &GroupContext, name: &str) -> Subgroup {
        let mut elems = self.elems;
        elems.sort_unstable();
        Subgroup::assemble(ctx, name, elems, self.gens)
    }
}

/// Conjugacy classes of a subgroup.
#[derive(Debug, Clone)]
pub struct Classes {
    /// Class id of each element, indexed by position in the subgroup.
    pub class_of: Vec<u32>,
    /// Smallest element of each class (a `G_r` index).
    pub reps: Vec<u32>,
    pub sizes: Vec<u32>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// A subgroup of `G_r`, stored as a sorted list of element indices.
pub struct Subgroup {
    pub name: String,
    pub elems: Vec<u32>,
    pos: Vec<u32>,
    pub gens: Vec<u32>,
    classes: OnceLock<Arc<Classes>>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (order {})", self.name, self.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Subgroup {
    fn assemble(ctx: &GroupContext, name: &str, elems: Vec<u32>, gens: Vec<u32>) -> Subgroup {
        let mut pos = vec![ABSENT; ctx.order()];
        for (i, &g) in elems.iter().enumerate() {
            pos[g as usize] = i as u32;
        }
        Subgroup { name: name.to_string(), elems, pos, gens, classes: OnceLock::new() }
    }

    /// Validates that `elems` is a subgroup and picks generators greedily.
    pub fn from_elems(ctx: &GroupContext, name: &str, mut elems: Vec<u32>) -> Result<Subgroup> {
        elems.sort_unstable();
        elems.dedup();
        let mut pos = vec![ABSENT; ctx.order()];
        for (i, &g) in elems.iter().enumerate() {
            pos[g as usize] = i as u32;
        }
        if pos[ctx.identity() as usize] == ABSENT {
            return Err(Error::NotASubgroup(format!("{name} misses the identity")));
        }
        let mut d = Dimino::new(ctx);
        for &g in &elems {
            if d.elems.len() == elems.len() {
                break;
            }
            d.adjoin(ctx, g, Some(&pos)).map_err(|_| Error::NotASubgroup(name.to_string()))?;
        }
        let gens = d.gens;
        Ok(Subgroup { name: name.to_string(), elems, pos, gens, classes: OnceLock::new() })
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.elems.len()
    }
    #[inline]
    pub fn contains(&self, g: u32) -> bool {
        self.pos[g as usize] != ABSENT
    }
    /// Position of `g` in the sorted element list.
    #[inline]
    pub fn position(&self, g: u32) -> Option<u32> {
        let p = self.pos[g as usize];
        (p != ABSENT).then_some(p)
    }

    pub fn renamed(mut self, name: &str) -> Subgroup {
        self.name = name.to_string();
        self
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&g| other.contains(g))
    }

    pub fn is_abelian(&self, ctx: &GroupContext) -> bool {
        self.gens.iter().all(|&a| self.gens.iter().all(|&b| ctx.mul(a, b) == ctx.mul(b, a)))
    }

    /// Whether `self` is normalized by every element of `by`.
    pub fn is_normalized_by(&self, ctx: &GroupContext, by: &Subgroup) -> bool {
        by.gens.iter().all(|&s| self.gens.iter().all(|&x| self.contains(ctx.conj(s, x))))
    }

    pub fn intersect(&self, ctx: &GroupContext, other: &Subgroup) -> Subgroup {
        let elems = self.elems.iter().copied().filter(|&g| other.contains(g)).collect();
        Subgroup::from_elems(ctx, &format!("{}∩{}", self.name, other.name), elems)
            .expect("intersection of subgroups")
    }

    /// Whether every element has `p`-power order.
    pub fn is_p_group(&self, p: u32) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p as usize) {
            n /= p as usize;
        }
        n == 1
    }

    /// Left coset representatives of `small` in `self`, smallest first.
    pub fn transversal(&self, ctx: &GroupContext, small: &Subgroup) -> Vec<u32> {
        let mut covered = BitSet::new(ctx.order());
        let mut reps = vec![];
        for &g in &self.elems {
            if covered.get(g) {
                continue;
            }
            reps.push(g);
            for &h in &small.elems {
                covered.set(ctx.mul(g, h));
            }
        }
        reps
    }

    pub fn classes(&self, ctx: &GroupContext) -> Arc<Classes> {
        Arc::clone(self.classes.get_or_init(|| Arc::new(self.compute_classes(ctx))))
    }

    /// Installs precomputed classes (from the on-disk cache).
    pub fn set_classes(&self, classes: Classes) -> bool {
        self.classes.set(Arc::new(classes)).is_ok()
    }

    fn compute_classes(&self, ctx: &GroupContext) -> Classes {
        let mut class_of = vec![ABSENT; self.order()];
        let mut reps = vec![];
        let mut sizes = vec![];
        let mut queue = vec![];
        for start in 0..self.order() {
            if class_of[start] != ABSENT {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(self.elems[start]);
            class_of[start] = id;
            queue.clear();
            queue.push(self.elems[start]);
            let mut k = 0;
            while k < queue.len() {
                let x = queue[k];
                for &s in &self.gens {
                    let y = ctx.conj(s, x);
                    let p = self.pos[y as usize] as usize;
                    if class_of[p] == ABSENT {
                        class_of[p] = id;
                        queue.push(y);
                    }
                }
                k += 1;
            }
            sizes.push(queue.len() as u32);
        }
        Classes { class_of, reps, sizes }
    }

    /// Class id of an element of the subgroup.
    pub fn class_id(&self, ctx: &GroupContext, g: u32) -> u32 {
        self.classes(ctx).class_of[self.pos[g as usize] as usize]
    }

    /// A Sylow `p`-subgroup, grown greedily from the identity.
    pub fn sylow_p(&self, ctx: &GroupContext, p: u32) -> Subgroup {
        let mut target = 1usize;
        let mut n = self.order();
        while n.is_multiple_of(p as usize) {
            n /= p as usize;
            target *= p as usize;
        }
        let is_p_elem = |g: u32| {
            let mut o = ctx.element_order(g);
            while o.is_multiple_of(p as u64) {
                o /= p as u64;
            }
            o == 1
        };
        let mut d = Dimino::new(ctx);
        for &g in &self.elems {
            if d.elems.len() == target {
                break;
            }
            if d.contains(g) || !is_p_elem(g) {
                continue;
            }
            let mut trial = Dimino { elems: d.elems.clone(), member: BitSet(d.member.0.clone()), gens: d.gens.clone() };
            trial.adjoin(ctx, g, None).expect("unrestricted");
            let mut o = trial.elems.len();
            while o.is_multiple_of(p as usize) {
                o /= p as usize;
            }
            if o == 1 {
                d = trial;
            }
        }
        d.finish(ctx, &format!("Syl_{p}({})", self.name))
    }
}

/// Brute-force centralizer of a matrix in `G_r`.
pub fn centralizer(ctx: &GroupContext, beta: &Mat) -> Result<Subgroup> {
    if beta.n != ctx.n || beta.ring.spec != ctx.ring.spec {
        return Err(Error::SpecMismatch);
    }
    ctx.filter("C", |g| {
        let mut lhs = [0 as Idx; MAX_N * MAX_N];
        let mut rhs = [0 as Idx; MAX_N * MAX_N];
        ctx.mul_entries(ctx.entries(g), &beta.e, &mut lhs);
        ctx.mul_entries(&beta.e, ctx.entries(g), &mut rhs);
        lhs == rhs
    })
}

/// Units of `o_r[beta]`, the span of `1, beta, ..., beta^{N-1}`.
pub fn unit_span_of_powers(ctx: &GroupContext, beta: &Mat) -> Result<Vec<u32>> {
    let n = ctx.n;
    let ring = &ctx.ring;
    let powers: Vec<Mat> = (0..n as u64).map(|k| beta.pow(k)).collect();
    let size = ring.size();
    let total = size.pow(n as u32);
    let mut out = vec![];
    for mut x in 0..total {
        let mut m = Mat::zero(ring, n);
        for p in &powers {
            let c = (x % size) as Idx;
            x /= size;
            if c != 0 {
                m = m.arith(&p.scale(c), crate::matalg::MatOp::Add)?;
            }
        }
        if let Some(g) = ctx.index_of(&m.e) {
            out.push(g);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (lit, n, order) in [("zmod:2^2", 2, 96), ("fqt:2:2", 2, 96), ("zmod:2^3", 2, 1536), ("zmod:2^1", 2, 6)] {
            let ctx = GroupContext::from_literal(lit, n, DEFAULT_CAP).unwrap();
            assert_eq!(ctx.order(), order);
            assert_eq!(ctx.whole().order(), order);
        }
        let e = GroupContext::from_literal("zmod:2^3", 2, 1000).unwrap_err();
        assert!(matches!(e, Error::DeskScaleExceeded { .. }));
    }

    #[test]
    fn kernels() {
        let ctx = GroupContext::from_literal("zmod:2^2", 2, DEFAULT_CAP).unwrap();
        assert_eq!(ctx.congruence_kernel(1).unwrap().order(), 16);
        assert_eq!(ctx.congruence_kernel(2).unwrap().order(), 1);
        let ctx = GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap();
        let k2 = ctx.congruence_kernel(2).unwrap();
        assert_eq!(k2.order(), 16);
        assert!(k2.is_abelian(&ctx));
        assert!(k2.is_normalized_by(&ctx, &ctx.whole()));
    }

    #[test]
    fn classes_of_gl2_f2() {
        let ctx = GroupContext::from_literal("zmod:2^1", 2, DEFAULT_CAP).unwrap();
        let g = ctx.whole();
        assert_eq!(g.classes(&ctx).len(), 3);
        let ctx = GroupContext::from_literal("zmod:3^1", 2, DEFAULT_CAP).unwrap();
        assert_eq!(ctx.whole().classes(&ctx).len(), 8);
    }

    #[test]
    fn centralizers() {
        let ctx = GroupContext::from_literal("zmod:2^3", 2, DEFAULT_CAP).unwrap();
        let beta = Mat::companion(&ctx.ring, &[1, 1, 1]);
        let c = centralizer(&ctx, &beta).unwrap();
        assert_eq!(c.order(), 48);
        assert!(c.is_abelian(&ctx));
        assert_eq!(c.elems, unit_span_of_powers(&ctx, &beta).unwrap());
        assert_eq!(c.sylow_p(&ctx, 2).order(), 16);
        let ctx = GroupContext::from_literal("zmod:2^2", 2, DEFAULT_CAP).unwrap();
        let beta = Mat::companion(&ctx.ring, &[0, 0, 1]);
        assert_eq!(centralizer(&ctx, &beta).unwrap().order(), 8);
        let scalar = Mat::scalar(&ctx.ring, 2, 3);
        assert_eq!(centralizer(&ctx, &scalar).unwrap().order(), 96);
    }

    #[test]
    fn generated_and_transversal() {
        let ctx = GroupContext::from_literal("zmod:2^2", 2, DEFAULT_CAP).unwrap();
        let k1 = ctx.congruence_kernel(1).unwrap();
        let again = ctx.generated("K", &k1.gens);
        assert_eq!(again.elems, k1.elems);
        let t = ctx.whole().transversal(&ctx, &k1);
        assert_eq!(t.len(), 6);
        let s = ctx.whole().sylow_p(&ctx, 2);
        assert_eq!(s.order(), 32);
        assert!(s.is_p_group(2));
    }
}

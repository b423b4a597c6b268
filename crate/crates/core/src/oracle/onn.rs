//! Counting experiments: dimension counts per group, polynomial fits in `q`
//! and comparisons between rings with the same residue field.

use std::collections::BTreeMap;
use std::io::Write;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::charthy::CharContext;
use crate::construct::{regular_orbit_reps, regular_reps, Path};
use crate::error::{Error, Result};
use crate::grp::GroupContext;
use crate::matalg::factor_mod_p;
use crate::ring::{is_prime, RingSpec};

use super::spectrum::gl2_full_spectrum;

/// Dimension counts `n -> r_n` for one `G_r`.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct CountReport {
    pub ring: String,
    pub n: usize,
    pub r: u32,
    pub q: u64,
    pub order: usize,
    /// Over the regular characters.
    pub regular: BTreeMap<i64, u64>,
    /// Over all irreducible characters (`N = 2` only).
    pub full: Option<BTreeMap<i64, u64>>,
    pub classes: Option<usize>,
    /// Regular orbits grouped by the factorization type of `beta bar`.
    pub orbit_types: BTreeMap<String, OrbitTypeCount>,
}

#[derive(Debug, Clone, Default, Serialize, PartialEq)]
pub struct OrbitTypeCount {
    pub orbits: u64,
    pub per_orbit: u64,
    pub dims: Vec<i64>,
}

impl CountReport {
    pub fn new(ctx: &GroupContext) -> CountReport {
        CountReport {
            ring: ctx.ring.spec.literal(),
            n: ctx.n,
            r: ctx.r,
            q: ctx.ring.q() as u64,
            order: ctx.order(),
            regular: BTreeMap::new(),
            full: None,
            classes: None,
            orbit_types: BTreeMap::new(),
        }
    }

    /// `sum r_n n^2` over the regular part.
    pub fn regular_mass(&self) -> i64 {
        self.regular.iter().map(|(d, c)| d * d * *c as i64).sum()
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["part", "dim", "count"]).map_err(|e| Error::Io(e.to_string()))?;
        let parts = [("regular", Some(&self.regular)), ("full", self.full.as_ref())];
        for (name, map) in parts {
            for (d, c) in map.into_iter().flatten() {
                out.write_record([name, &d.to_string(), &c.to_string()]).map_err(|e| Error::Io(e.to_string()))?;
            }
        }
        out.flush()?;
        Ok(())
    }
}

/// Factorization type of `beta bar`, e.g. `2` or `1+1` or `1^2`.
fn orbit_type(beta: &crate::matalg::Mat) -> Result<String> {
    let desc = factor_mod_p(beta)?;
    let mut parts: Vec<String> = desc
        .factorization
        .iter()
        .map(|f| if f.mult == 1 { f.deg.to_string() } else { format!("{}^{}", f.deg, f.mult) })
        .collect();
    parts.sort();
    Ok(parts.join("+"))
}

/// Regular counts of `G_r`, grouped by orbit type.
pub fn regular_counts(cc: &Arc<CharContext>) -> Result<CountReport> {
    let ctx = &cc.ctx;
    let path = if ctx.r.is_multiple_of(2) { Path::Even } else { Path::Ss };
    let mut report = CountReport::new(ctx);
    let betas = regular_orbit_reps(ctx)?;
    let outs = betas.par_iter().map(|beta| regular_reps(cc, beta, path)).collect::<Result<Vec<_>>>()?;
    for (beta, out) in betas.iter().zip(outs) {
        if !out.cert.all_pass() {
            return Err(Error::CertificateFailed(format!("orbit {:?}: {:?}", beta.rows(), out.cert)));
        }
        let entry = report.orbit_types.entry(orbit_type(beta)?).or_default();
        entry.orbits += 1;
        entry.per_orbit = out.chars.len() as u64;
        for d in out.dims() {
            *report.regular.entry(d).or_insert(0) += 1;
            if !entry.dims.contains(&d) {
                entry.dims.push(d);
                entry.dims.sort();
            }
        }
    }
    Ok(report)
}

/// The unique polynomial of degree `< points.len()` through `points`,
/// coefficients constant first.
pub fn lagrange(points: &[(i64, i64)]) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); points.len()];
    for (i, &(xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, &(xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, c) in basis.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * BigRational::from_integer(BigInt::from(xj));
            }
            basis = next;
            denom *= BigRational::from_integer(BigInt::from(xi - xj));
        }
        let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
        for (k, c) in basis.iter().enumerate() {
            acc[k] += c * &scale;
        }
    }
    while acc.len() > 1 && acc.last().is_some_and(Zero::is_zero) {
        acc.pop();
    }
    acc
}

pub fn evaluate(coeffs: &[BigRational], x: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(x));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

#[derive(Debug, Clone, Serialize)]
pub struct Holdout {
    pub q: u64,
    pub observed: i64,
    pub predicted: String,
    pub exact: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fit {
    /// Quantity fitted, e.g. `r_n[1+1]` or `dim[2]`.
    pub quantity: String,
    pub points: Vec<(u64, i64)>,
    /// Rational coefficients, constant first.
    pub coeffs: Vec<String>,
    pub degree: usize,
    pub holdout: Vec<Holdout>,
}

impl Fit {
    pub fn predicts_holdout(&self) -> bool {
        !self.holdout.is_empty() && self.holdout.iter().all(|h| h.exact)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FitReport {
    pub n: usize,
    pub r: u32,
    pub family: String,
    pub instances: Vec<CountReport>,
    pub fits: Vec<Fit>,
    /// `binom(N, 2) * r`.
    pub degree_bound: usize,
    pub degrees_within_bound: bool,
}

impl FitReport {
    pub fn fit(&self, quantity: &str) -> Option<&Fit> {
        self.fits.iter().find(|f| f.quantity == quantity)
    }
}

/// Ring literal of the family at residue size `q` and level `r`:
/// `zmod` (prime `q`), `fqt` or `galois`.
pub fn family_literal(family: &str, q: u64, r: u32) -> Result<String> {
    let (p, f) = prime_power(q).ok_or(Error::NonPrime(q as u32))?;
    let lit = match family {
        "zmod" if f == 1 => format!("zmod:{p}^{r}"),
        "zmod" => return Err(Error::Parse(format!("zmod needs a prime residue field, got q = {q}"))),
        "fqt" => format!("fqt:{q}:{r}"),
        "galois" => format!("galois:{p}^{r}:{f}"),
        other => return Err(Error::Parse(format!("unknown ring family {other:?}"))),
    };
    lit.parse::<RingSpec>()?;
    Ok(lit)
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut m, mut f) = (q, 0);
    while m % p == 0 {
        m /= p;
        f += 1;
    }
    (m == 1 && is_prime(p as u32)).then_some((p, f))
}

/// Counts regular characters for every `q` in `fit_qs` and `holdout`, then
/// fits the count and dimension of each orbit type on `fit_qs` and checks
/// the fits at the held-out `q`.
pub fn onn_polynomial_fit(n: usize, r: u32, family: &str, fit_qs: &[u64], holdout: &[u64], cap: u128) -> Result<FitReport> {
    if fit_qs.len() < 2 {
        return Err(Error::InsufficientData(format!("{} residue sizes; at least 2 are needed", fit_qs.len())));
    }
    let mut instances = vec![];
    for &q in fit_qs.iter().chain(holdout) {
        let ctx = GroupContext::from_literal(&family_literal(family, q, r)?, n, cap)?;
        instances.push(regular_counts(&CharContext::new(&ctx))?);
    }
    let types: Vec<String> = instances[0].orbit_types.keys().cloned().collect();
    let mut fits = vec![];
    let series: [(&str, fn(&OrbitTypeCount) -> Option<i64>); 4] = [
        ("r_n", |t| Some((t.orbits * t.per_orbit) as i64)),
        ("dim", |t| (t.dims.len() == 1).then(|| t.dims[0])),
        ("per_orbit", |t| Some(t.per_orbit as i64)),
        ("orbits", |t| Some(t.orbits as i64)),
    ];
    for ty in &types {
        for (name, get) in series {
            let values: Option<Vec<(u64, i64)>> =
                instances.iter().map(|rep| rep.orbit_types.get(ty).and_then(get).map(|v| (rep.q, v))).collect();
            let Some(values) = values else { continue };
            let (train, test) = values.split_at(fit_qs.len());
            let pts: Vec<(i64, i64)> = train.iter().map(|&(q, v)| (q as i64, v)).collect();
            let coeffs = lagrange(&pts);
            let holdout = test
                .iter()
                .map(|&(q, observed)| {
                    let p = evaluate(&coeffs, q as i64);
                    Holdout { q, observed, predicted: p.to_string(), exact: p == BigRational::from_integer(observed.into()) }
                })
                .collect();
            fits.push(Fit {
                quantity: format!("{name}[{ty}]"),
                points: train.to_vec(),
                degree: coeffs.len() - 1,
                coeffs: coeffs.iter().map(ToString::to_string).collect(),
                holdout,
            });
        }
    }
    let degree_bound = n * (n - 1) / 2 * r as usize;
    let degrees_within_bound = fits.iter().filter(|f| f.quantity.starts_with("dim[")).all(|f| f.degree <= degree_bound);
    Ok(FitReport { n, r, family: family.to_string(), instances, fits, degree_bound, degrees_within_bound })
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub left: CountReport,
    pub right: CountReport,
    pub classes_equal: Option<bool>,
    pub full_equal: Option<bool>,
    pub regular_equal: bool,
}

impl CompareReport {
    pub fn all_equal(&self) -> bool {
        self.regular_equal && self.classes_equal != Some(false) && self.full_equal != Some(false)
    }
}

/// Compares dimension multisets of `GL_N` over two rings with the same
/// residue field and level: full spectra for `N = 2` and `full`, regular
/// parts otherwise.
pub fn cross_ring_compare(a: &Arc<CharContext>, b: &Arc<CharContext>, full: bool) -> Result<CompareReport> {
    let (qa, qb) = (a.ctx.ring.q(), b.ctx.ring.q());
    if qa != qb {
        return Err(Error::ResidueMismatch(qa as u32, qb as u32));
    }
    if a.ctx.n != b.ctx.n || a.ctx.r != b.ctx.r {
        return Err(Error::ShapeMismatch("rings must share N and r".into()));
    }
    let count = |cc: &Arc<CharContext>| -> Result<CountReport> {
        let mut rep = regular_counts(cc)?;
        if full && cc.ctx.n == 2 {
            let whole = gl2_full_spectrum(cc)?;
            rep.full = whole.full;
            rep.classes = whole.classes;
        }
        Ok(rep)
    };
    let left = count(a)?;
    let right = count(b)?;
    let classes_equal = left.classes.zip(right.classes).map(|(x, y)| x == y);
    let full_equal = left.full.as_ref().zip(right.full.as_ref()).map(|(x, y)| x == y);
    let regular_equal = left.regular == right.regular;
    Ok(CompareReport { left, right, classes_equal, full_equal, regular_equal })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn interpolation() {
        let c = lagrange(&[(2, 3), (3, 8), (4, 15)]);
        assert_eq!(c.len(), 3);
        assert_eq!(evaluate(&c, 5), BigRational::from_integer(24.into()));
        assert_eq!(family_literal("galois", 4, 2).unwrap(), "galois:2^2:2");
        assert!(family_literal("zmod", 4, 2).is_err());
    }

    proptest! {
        #[test]
        fn lagrange_reproduces_polynomials(coeffs in proptest::collection::vec(-20i64..20, 1..4), xs in proptest::collection::btree_set(-10i64..10, 4)) {
            let poly = |x: i64| coeffs.iter().rev().fold(0i64, |acc, c| acc * x + c);
            let pts: Vec<(i64, i64)> = xs.iter().map(|&x| (x, poly(x))).collect();
            let fit = lagrange(&pts);
            for x in -12..12 {
                prop_assert_eq!(evaluate(&fit, x), BigRational::from_integer(poly(x).into()));
            }
        }
    }

    #[test]
    fn residue_mismatch() {
        let a = CharContext::new(&GroupContext::from_literal("zmod:2^2", 2, 1 << 24).unwrap());
        let b = CharContext::new(&GroupContext::from_literal("zmod:3^2", 2, 1 << 24).unwrap());
        assert_eq!(cross_ring_compare(&a, &b, false).unwrap_err(), Error::ResidueMismatch(2, 3));
    }
}

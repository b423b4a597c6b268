//! Constructions of the regular characters of `G_r`: the even-level
//! construction, the odd-level constructions through `J_mM` and through a
//! polarization of `K^{l'}/K^l`, and the certificates checked on the output.

pub mod even;
pub mod hill;
pub mod kos;
pub mod model;
pub mod modmat;
pub mod ss;
pub mod symplectic;

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::charthy::{psi_beta, CharContext, ClassFunction};
use crate::error::{Error, Result};
use crate::grp::GroupContext;
use crate::matalg::{factor_mod_p, is_regular, regular_class_reps, Mat};
use crate::ring::Ring;

pub use even::even_construct;
pub use hill::{hill_split_isotropic, radical_of_form, HillSplit};
pub use kos::kos_construct;
pub use model::RepnModel;
pub use ss::ss_construct;
pub use symplectic::{QuotientSpace, SymplecticSpace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Path {
    Auto,
    Even,
    Ss,
    Kos,
}

impl FromStr for Path {
    type Err = Error;
    fn from_str(s: &str) -> Result<Path> {
        match s {
            "auto" => Ok(Path::Auto),
            "even" => Ok(Path::Even),
            "ss" => Ok(Path::Ss),
            "kos" => Ok(Path::Kos),
            other => Err(Error::Parse(format!("unknown construction path '{other}'"))),
        }
    }
}

/// Raw output of one pipeline: characters of `G_r` plus pipeline facts.
#[derive(Debug, Clone)]
pub struct PipelineOutput {
    pub chars: Vec<ClassFunction>,
    /// Pipeline-specific observations, e.g. intermediate dimensions.
    pub facts: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificates {
    pub irreducible: bool,
    /// No character was produced twice before deduplication.
    pub distinct: bool,
    /// Every output contains `psi_beta` on restriction to `K^l`.
    pub lies_over_psi: bool,
    /// `sum e_pi dim pi`.
    pub completeness_sum: i64,
    /// `[G_r : K^l]`.
    pub index: i64,
}

impl Certificates {
    pub fn complete(&self) -> bool {
        self.completeness_sum == self.index
    }

    pub fn all_pass(&self) -> bool {
        self.irreducible && self.distinct && self.lies_over_psi && self.complete()
    }
}

#[derive(Debug, Clone)]
pub struct RegularChar {
    pub chi: ClassFunction,
    pub dim: i64,
    /// `e_pi = <pi|_{K^l}, psi_beta>`.
    pub mult: i64,
}

/// Certified output for one orbit.
#[derive(Debug, Clone)]
pub struct Construction {
    pub beta: Mat,
    pub path: Path,
    pub chars: Vec<RegularChar>,
    pub cert: Certificates,
    pub facts: BTreeMap<String, Value>,
}

impl Construction {
    pub fn dims(&self) -> Vec<i64> {
        self.chars.iter().map(|c| c.dim).collect()
    }

    pub fn to_json(&self, with_values: bool) -> Value {
        let desc = factor_mod_p(&self.beta).map(|d| d.to_json()).unwrap_or(Value::Null);
        let chars: Vec<Value> = self
            .chars
            .iter()
            .map(|c| {
                let mut v = json!({"dim": c.dim, "multiplicity": c.mult, "handle": handle(&c.chi)});
                if with_values {
                    v["character"] = c.chi.to_json();
                }
                v
            })
            .collect();
        json!({
            "orbit": desc,
            "path": self.path,
            "count": self.chars.len(),
            "characters": chars,
            "certificates": {
                "irreducible": self.cert.irreducible,
                "distinct": self.cert.distinct,
                "lies_over_psi": self.cert.lies_over_psi,
                "completeness_sum": self.cert.completeness_sum,
                "index": self.cert.index,
                "complete": self.cert.complete(),
            },
            "facts": self.facts,
        })
    }
}

/// A short stable identifier of a class function built from its residues.
pub fn handle(chi: &ClassFunction) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &r in chi.residues() {
        for b in r.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    format!("{h:016x}")
}

/// Removes exact duplicates, keeping first occurrences; reports whether any
/// were found.
pub fn dedupe(chars: Vec<ClassFunction>) -> (Vec<ClassFunction>, bool) {
    let mut seen: HashMap<Vec<u64>, Vec<usize>> = HashMap::new();
    let mut out: Vec<ClassFunction> = vec![];
    let mut clean = true;
    for chi in chars {
        let bucket = seen.entry(chi.residues().to_vec()).or_default();
        if bucket.iter().any(|&i| out[i] == chi) {
            clean = false;
            continue;
        }
        bucket.push(out.len());
        out.push(chi);
    }
    (out, clean)
}

/// Certifies a pipeline's output for the orbit of `beta`.
pub fn certify(cc: &Arc<CharContext>, beta: &Mat, path: Path, raw: PipelineOutput) -> Result<Construction> {
    let ctx = &cc.ctx;
    let psi = psi_beta(cc, beta, ctx.l)?;
    let k_l = Arc::clone(&psi.base);
    let psi_cf = psi.to_class_function();
    let (unique, distinct) = dedupe(raw.chars);
    let mut chars = Vec::with_capacity(unique.len());
    let mut irreducible = true;
    let mut lies_over_psi = true;
    let mut sum = 0i64;
    for chi in unique {
        let dim = chi.dim_int().filter(|&d| d > 0).ok_or_else(|| Error::CertificateFailed("degree is not a positive integer".into()))?;
        irreducible &= chi.norm()? == 1;
        let mult = chi.restrict(&k_l)?.inner_product_int(&psi_cf)?;
        lies_over_psi &= mult > 0;
        sum += mult * dim;
        chars.push(RegularChar { chi, dim, mult });
    }
    chars.sort_by_key(|a| (a.dim, handle(&a.chi)));
    let index = (ctx.order() / k_l.order()) as i64;
    let cert = Certificates { irreducible, distinct, lies_over_psi, completeness_sum: sum, index };
    Ok(Construction { beta: beta.clone(), path, chars, cert, facts: raw.facts })
}

/// The regular characters lying over the orbit of `beta`. For odd `r` and
/// odd `p` both odd-level pipelines run (unless one is requested) and must
/// agree as sets.
pub fn regular_reps(cc: &Arc<CharContext>, beta: &Mat, path: Path) -> Result<Construction> {
    let ctx = &cc.ctx;
    if !is_regular(beta)? {
        return Err(Error::RegularityViolation);
    }
    let even = ctx.r.is_multiple_of(2);
    match path {
        Path::Even => certify(cc, beta, path, even_construct(cc, beta)?),
        Path::Ss => certify(cc, beta, path, ss_construct(cc, beta)?),
        Path::Kos => certify(cc, beta, path, kos_construct(cc, beta)?),
        Path::Auto if even => certify(cc, beta, Path::Even, even_construct(cc, beta)?),
        Path::Auto => {
            let mut ss = certify(cc, beta, Path::Ss, ss_construct(cc, beta)?)?;
            if ctx.ring.p() > 2 {
                let kos = certify(cc, beta, Path::Kos, kos_construct(cc, beta)?)?;
                let agree = same_set(&ss, &kos);
                ss.facts.insert("kos_agrees".into(), json!(agree));
                if !agree {
                    return Err(Error::CertificateFailed("odd-level pipelines disagree".into()));
                }
            }
            Ok(ss)
        }
    }
}

/// Equality of the character sets of two constructions.
/// One companion matrix per orbit of characters `psi_beta` of `K^l` with
/// regular `beta`: regular companions over `o_{l'}`, lifted digitwise.
pub fn regular_orbit_reps(ctx: &GroupContext) -> Result<Vec<Mat>> {
    if ctx.r < 2 {
        return Err(Error::BadLevel { level: ctx.r, max: 2 });
    }
    let small = Ring::new(ctx.ring.spec.at_level(ctx.lp)?)?;
    let reps = regular_class_reps(ctx.n, &small, ctx.cap)?;
    Ok(reps
        .iter()
        .map(|d| {
            let f: Vec<_> = d.charpoly.iter().map(|&c| ctx.ring.lift_from(c, &small)).collect();
            Mat::companion(&ctx.ring, &f)
        })
        .collect())
}

pub fn same_set(a: &Construction, b: &Construction) -> bool {
    a.chars.len() == b.chars.len() && a.chars.iter().all(|x| b.chars.iter().any(|y| y.chi == x.chi))
}

/// `true` iff `K^{r-1}` is not in the kernel of `pi`.
pub fn primitivity(pi: &ClassFunction) -> Result<bool> {
    let ctx = &pi.cc.ctx;
    let top = ctx.congruence_kernel(ctx.r - 1)?;
    let dim = pi.dim();
    Ok(top.elems.iter().any(|&k| pi.value_at(k).is_some_and(|v| *v != dim)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{GroupContext, DEFAULT_CAP};

    #[test]
    fn path_parsing() {
        assert_eq!("kos".parse::<Path>().unwrap(), Path::Kos);
        assert!("hill".parse::<Path>().is_err());
    }

    #[test]
    fn dedupe_keeps_first() {
        let cc = CharContext::new(&GroupContext::from_literal("zmod:3^1", 1, DEFAULT_CAP).unwrap());
        let g = cc.ctx.whole();
        let triv = crate::charthy::LinearChar::trivial(&cc, &g).to_class_function();
        let (out, clean) = dedupe(vec![triv.clone(), triv]);
        assert_eq!(out.len(), 1);
        assert!(!clean);
    }
}

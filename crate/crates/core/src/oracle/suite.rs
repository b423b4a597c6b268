//! The lemma suite: every structural claim the constructions rely on,
//! checked exhaustively on one group.

use std::sync::Arc;

use serde::Serialize;

use crate::charthy::CharContext;
use crate::construct::{radical_of_form, regular_orbit_reps, ss::parahoric_radicals};
use crate::error::Result;
use crate::grp::lemmas::{
    centralizer_check, centralizer_reduction_surjectivity, commutator_filtration_check, kernel_isomorphism_check,
    orthogonality_check, stabilizer_of_orbit_character,
};
use crate::grp::{ParahoricData, ParahoricLattice};
use crate::matalg::{factor_mod_p, Mat};

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    /// Rows of the orbit representative, for per-orbit checks.
    pub beta: Option<Vec<Vec<u16>>>,
    pub pass: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub ring: String,
    pub n: usize,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

struct Recorder {
    checks: Vec<Check>,
}

impl Recorder {
    fn push(&mut self, name: &str, beta: Option<&Mat>, outcome: Result<(bool, Option<String>)>) {
        let (pass, witness) = outcome.unwrap_or_else(|e| (false, Some(e.to_string())));
        self.checks.push(Check { name: name.to_string(), beta: beta.map(Mat::rows), pass, witness });
    }
}

/// Runs every check on `G_r`; per-orbit checks use `betas`, or one
/// representative of every regular orbit when `betas` is empty.
pub fn verify_lemma_suite(cc: &Arc<CharContext>, betas: &[Mat]) -> Result<SuiteReport> {
    let ctx = &cc.ctx;
    let mut rec = Recorder { checks: vec![] };
    rec.push(
        "commutator_filtration",
        None,
        commutator_filtration_check(ctx).map(|r| (r.counterexample.is_none(), r.counterexample.map(|w| format!("{w:?}")))),
    );
    for i in 1..=ctx.r {
        rec.push(&format!("kernel_isomorphism_K{i}"), None, kernel_isomorphism_check(ctx, i).map(|ok| (ok, None)));
    }
    let betas = if betas.is_empty() { regular_orbit_reps(ctx)? } else { betas.to_vec() };
    for beta in &betas {
        let b = Some(beta);
        rec.push("centralizer", b, centralizer_check(ctx, beta).map(|(c, ok)| (ok, Some(format!("order {}", c.order())))));
        rec.push("stabilizer", b, stabilizer_of_orbit_character(ctx, beta).map(|s| (true, Some(format!("order {}", s.order())))));
        for s in 1..ctx.r {
            rec.push(
                &format!("reduction_surjective_{s}"),
                b,
                centralizer_reduction_surjectivity(ctx, beta, s, false).map(|ok| (ok, None)),
            );
        }
        let minimal = factor_mod_p(beta).and_then(|d| ParahoricData::minimal(&d));
        rec.push(
            "orthogonality_min",
            b,
            minimal.and_then(|d| orthogonality_check(ctx, &d).map(|ok| (ok, Some(format!("e = {}", d.e))))),
        );
        rec.push("orthogonality_max", b, orthogonality_check(ctx, &ParahoricData::maximal(beta)).map(|ok| (ok, None)));
        if ctx.r % 2 == 1 {
            rec.push(
                "normal_sylow",
                b,
                ParahoricLattice::new(ctx, beta).map(|lat| {
                    let (ok, index) = lat.normal_sylow(ctx);
                    (ok, Some(format!("index {index}")))
                }),
            );
            rec.push("radical_of_form", b, radical_of_form(cc, beta).map(|r| (true, Some(format!("order {}", r.order())))));
            rec.push(
                "parahoric_radicals",
                b,
                parahoric_radicals(cc, beta).map(|(big, small)| (big && small, Some(format!("max {big}, min {small}")))),
            );
        }
    }
    Ok(SuiteReport { ring: ctx.ring.spec.literal(), n: ctx.n, checks: rec.checks })
}

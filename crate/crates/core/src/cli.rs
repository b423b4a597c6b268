//! Command-line front end. Every command prints a deterministic report and
//! returns whether its checks passed.

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::charthy::CharContext;
use crate::construct::{regular_orbit_reps, regular_reps, Path};
use crate::error::{Error, Result};
use crate::grp::cache::group_classes;
use crate::grp::{GroupContext, DEFAULT_CAP};
use crate::matalg::{regular_class_reps, Mat};
use crate::oracle::{cross_ring_compare, gl2_full_spectrum, onn_polynomial_fit, regular_counts, verify_lemma_suite};
use crate::ring::Ring;

pub const CACHE_ENV: &str = "CHAINREP_CACHE";

#[derive(Debug, Parser)]
#[command(name = "chainrep", version, about = "Regular representations of GL_N over finite chain rings")]
pub struct Cli {
    /// Largest group order (or enumeration size) to attempt.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    pub cap: u128,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Directory for cached conjugacy classes (default: $CHAINREP_CACHE).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Ring literal: zmod:p^r, galois:p^r:f or fqt:q:r.
    #[arg(long)]
    pub ring: String,
    #[arg(long = "N", alias = "n", default_value_t = 2)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List regular orbit representatives at level l'.
    Orbits {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Construct and certify the regular characters over one orbit or all.
    Construct {
        #[command(flatten)]
        group: GroupArgs,
        /// Companion coefficients `c0,c1,...,1` or a JSON matrix; all orbits if omitted.
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, default_value = "auto")]
        path: Path,
        /// Include character values in the output.
        #[arg(long)]
        values: bool,
    },
    /// Run a verification suite.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = Suite::Lemmas)]
        suite: Suite,
        #[arg(long)]
        beta: Option<String>,
    },
    /// Count regular (and for N = 2, all) characters by dimension.
    Count {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        full: bool,
    },
    /// Compare dimension counts over two rings with the same residue field.
    Compare {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        ring2: String,
        #[arg(long)]
        full: bool,
    },
    /// Fit counts as polynomials in q and test held-out residue sizes.
    Fit {
        /// Ring family: zmod, fqt or galois.
        #[arg(long, default_value = "zmod")]
        family: String,
        #[arg(long = "N", alias = "n", default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        holdout: Vec<u64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemmas,
    Spectrum,
}

/// A finished command: the rendered report and whether its checks passed.
pub struct Outcome {
    pub output: String,
    pub ok: bool,
}

pub fn parse_beta(ring: &Arc<Ring>, n: usize, text: &str) -> Result<Mat> {
    let text = text.trim();
    if text.starts_with('[') {
        let m = Mat::parse_json(ring, text)?;
        if m.n != n {
            return Err(Error::ShapeMismatch(format!("expected a {n}x{n} matrix")));
        }
        return Ok(m);
    }
    let coeffs = text
        .split(',')
        .map(|c| c.trim().parse::<i64>().map(|v| ring.from_int(v)).map_err(|e| Error::Parse(format!("{c:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    // The leading 1 of the monic polynomial may be left out.
    let mut coeffs = coeffs;
    if coeffs.len() == n {
        coeffs.push(ring.one());
    }
    if coeffs.len() != n + 1 || coeffs[n] != ring.one() {
        return Err(Error::Parse(format!("companion needs {n} coefficients, constant first, optionally followed by 1")));
    }
    Ok(Mat::companion(ring, &coeffs))
}

impl Cli {
    fn cache_dir(&self) -> Option<PathBuf> {
        if self.no_cache {
            return None;
        }
        self.cache_dir.clone().or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
    }

    fn context(&self, group: &GroupArgs) -> Result<Arc<CharContext>> {
        let ctx = GroupContext::from_literal(&group.ring, group.n, self.cap)?;
        group_classes(&ctx, self.cache_dir().as_deref())?;
        Ok(CharContext::new(&ctx))
    }
}

fn render(format: Format, value: &Value, csv: Option<String>) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(value)? + "\n"),
        Format::Csv => csv.ok_or_else(|| Error::Parse("this command has no CSV form".into())),
        Format::Text => Ok(text_lines(value, "")),
    }
}

fn text_lines(v: &Value, prefix: &str) -> String {
    match v {
        Value::Object(m) => m.iter().map(|(k, x)| text_lines(x, &format!("{prefix}{k}."))).collect(),
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            format!("{}: {}\n", prefix.trim_end_matches('.'), serde_json::to_string(v).unwrap_or_default())
        }
        Value::Array(a) => a.iter().enumerate().map(|(i, x)| text_lines(x, &format!("{prefix}{i}."))).collect(),
        other => format!("{}: {}\n", prefix.trim_end_matches('.'), other),
    }
}

fn group_header(cc: &CharContext) -> Value {
    let ctx = &cc.ctx;
    json!({
        "ring": ctx.ring.spec.literal(),
        "N": ctx.n,
        "r": ctx.r,
        "q": ctx.ring.q(),
        "order": ctx.order(),
        "classes": ctx.whole().classes(ctx).len(),
    })
}

fn csv_rows(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    w.write_record(header).map_err(|e| Error::Io(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| Error::Io(e.to_string()))?;
    }
    String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Io(e.to_string()))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    if cli.jobs > 0 {
        // A second initialization (as in tests) keeps the existing pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match &cli.command {
        Command::Orbits { group } => {
            let ctx = GroupContext::from_literal(&group.ring, group.n, cli.cap)?;
            let small = Ring::new(ctx.ring.spec.at_level(ctx.lp.max(1))?)?;
            let reps = regular_class_reps(ctx.n, &small, cli.cap)?;
            let list: Vec<Value> = reps.iter().map(|d| d.to_json()).collect();
            let rows: Vec<Vec<String>> =
                reps.iter().map(|d| vec![format!("{:?}", d.charpoly), d.lambda.len().to_string()]).collect();
            let v = json!({"ring": ctx.ring.spec.literal(), "N": ctx.n, "level": small.spec.r, "orbits": list});
            Ok(Outcome { output: render(cli.format, &v, csv_rows(&["charpoly", "blocks"], &rows).ok())?, ok: true })
        }
        Command::Construct { group, beta, path, values } => {
            let cc = cli.context(group)?;
            let betas = match beta {
                Some(b) => vec![parse_beta(&cc.ctx.ring, cc.ctx.n, b)?],
                None => regular_orbit_reps(&cc.ctx)?,
            };
            let outs = betas.iter().map(|b| regular_reps(&cc, b, *path)).collect::<Result<Vec<_>>>()?;
            let ok = outs.iter().all(|o| o.cert.all_pass());
            let mut rows = vec![];
            for (i, o) in outs.iter().enumerate() {
                for c in &o.chars {
                    rows.push(vec![i.to_string(), c.dim.to_string(), c.mult.to_string(), crate::construct::handle(&c.chi)]);
                }
            }
            let mut v = group_header(&cc);
            v["constructions"] = outs.iter().map(|o| o.to_json(*values)).collect();
            v["all_certificates_pass"] = json!(ok);
            let csv = csv_rows(&["orbit", "dim", "multiplicity", "handle"], &rows).ok();
            Ok(Outcome { output: render(cli.format, &v, csv)?, ok })
        }
        Command::Verify { group, suite, beta } => {
            let cc = cli.context(group)?;
            let (v, ok) = match suite {
                Suite::Lemmas => {
                    let betas = match beta {
                        Some(b) => vec![parse_beta(&cc.ctx.ring, cc.ctx.n, b)?],
                        None => vec![],
                    };
                    let rep = verify_lemma_suite(&cc, &betas)?;
                    (serde_json::to_value(&rep)?, rep.all_pass())
                }
                Suite::Spectrum => {
                    let rep = gl2_full_spectrum(&cc)?;
                    (serde_json::to_value(&rep)?, true)
                }
            };
            Ok(Outcome { output: render(cli.format, &v, None)?, ok })
        }
        Command::Count { group, full } => {
            let cc = cli.context(group)?;
            let rep = if *full { gl2_full_spectrum(&cc)? } else { regular_counts(&cc)? };
            let mut buf = vec![];
            rep.write_csv(&mut buf)?;
            let csv = String::from_utf8(buf).ok();
            Ok(Outcome { output: render(cli.format, &serde_json::to_value(&rep)?, csv)?, ok: true })
        }
        Command::Compare { group, ring2, full } => {
            let a = cli.context(group)?;
            let b = cli.context(&GroupArgs { ring: ring2.clone(), n: group.n })?;
            let rep = cross_ring_compare(&a, &b, *full)?;
            let ok = rep.all_equal();
            let mut v = serde_json::to_value(&rep)?;
            v["verdict"] = json!(if ok { "dimension multisets equal" } else { "dimension multisets differ" });
            Ok(Outcome { output: render(cli.format, &v, None)?, ok })
        }
        Command::Fit { family, n, r, q, holdout } => {
            let rep = onn_polynomial_fit(*n, *r, family, q, holdout, cli.cap)?;
            let rows: Vec<Vec<String>> = rep
                .fits
                .iter()
                .map(|f| vec![f.quantity.clone(), f.coeffs.join(" "), f.degree.to_string(), f.predicts_holdout().to_string()])
                .collect();
            let csv = csv_rows(&["quantity", "coefficients", "degree", "holdout_exact"], &rows).ok();
            let ok = rep.degrees_within_bound;
            Ok(Outcome { output: render(cli.format, &serde_json::to_value(&rep)?, csv)?, ok })
        }
    }
}

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::DeskScaleExceeded { .. } => 3,
        Error::Parse(_) | Error::NonPrime(_) | Error::ShapeMismatch(_) => 2,
        _ => 1,
    }
}

/// Exit code when a command ran but a check failed.
pub const CHECK_FAILED: i32 = 4;


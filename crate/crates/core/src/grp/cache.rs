//! On-disk cache of conjugacy classes of `G_r`, one JSON object per line.
//!
//! The first line is a header carrying the format version and the group
//! fingerprint; each further line lists the members of one class.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::{Classes, GroupContext, ABSENT};

pub const CACHE_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize, PartialEq)]
struct Header {
    version: u32,
    ring: String,
    n: usize,
    r: u32,
    order: usize,
    classes: usize,
}

#[derive(Debug, Serialize, Deserialize)]
struct Line {
    rep: u32,
    members: Vec<u32>,
}

pub fn cache_path(dir: &Path, ctx: &GroupContext) -> PathBuf {
    let lit = ctx.ring.spec.literal().replace([':', '^'], "_");
    dir.join(format!("classes_{lit}_N{}_r{}.jsonl", ctx.n, ctx.r))
}

fn header(ctx: &GroupContext, classes: usize) -> Header {
    Header { version: CACHE_VERSION, ring: ctx.ring.spec.literal(), n: ctx.n, r: ctx.r, order: ctx.order(), classes }
}

pub fn store(dir: &Path, ctx: &GroupContext, classes: &Classes) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut members: Vec<Vec<u32>> = vec![vec![]; classes.len()];
    for (g, &c) in classes.class_of.iter().enumerate() {
        members[c as usize].push(g as u32);
    }
    let path = cache_path(dir, ctx);
    let tmp = path.with_extension("tmp");
    {
        let mut w = BufWriter::new(fs::File::create(&tmp)?);
        serde_json::to_writer(&mut w, &header(ctx, classes.len()))?;
        w.write_all(b"\n")?;
        for (rep, m) in classes.reps.iter().zip(members) {
            serde_json::to_writer(&mut w, &Line { rep: *rep, members: m })?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
    }
    fs::rename(tmp, path)?;
    Ok(())
}

/// Reads classes of the whole group; `None` on a miss, a stale version or
/// any inconsistency.
pub fn load(dir: &Path, ctx: &GroupContext) -> Option<Classes> {
    let file = fs::File::open(cache_path(dir, ctx)).ok()?;
    let mut lines = BufReader::new(file).lines();
    let head: Header = serde_json::from_str(&lines.next()?.ok()?).ok()?;
    if head.version != CACHE_VERSION || head != header(ctx, head.classes) {
        return None;
    }
    let mut class_of = vec![ABSENT; ctx.order()];
    let mut reps = Vec::with_capacity(head.classes);
    let mut sizes = Vec::with_capacity(head.classes);
    for (id, line) in lines.enumerate() {
        let line: Line = serde_json::from_str(&line.ok()?).ok()?;
        if line.members.first() != Some(&line.rep) {
            return None;
        }
        for &g in &line.members {
            let slot = class_of.get_mut(g as usize)?;
            if *slot != ABSENT {
                return None;
            }
            *slot = id as u32;
        }
        reps.push(line.rep);
        sizes.push(line.members.len() as u32);
    }
    if reps.len() != head.classes || class_of.contains(&ABSENT) {
        return None;
    }
    Some(Classes { class_of, reps, sizes })
}

/// Classes of `G_r`, served from the cache directory when possible.
pub fn group_classes(ctx: &GroupContext, dir: Option<&Path>) -> Result<bool> {
    let whole = ctx.whole();
    if let Some(dir) = dir {
        if let Some(c) = load(dir, ctx) {
            whole.set_classes(c);
            return Ok(true);
        }
        store(dir, ctx, &whole.classes(ctx))?;
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::DEFAULT_CAP;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let ctx = GroupContext::from_literal("zmod:2^2", 2, DEFAULT_CAP).unwrap();
        assert!(!group_classes(&ctx, Some(dir.path())).unwrap());
        let fresh = GroupContext::from_literal("zmod:2^2", 2, DEFAULT_CAP).unwrap();
        assert!(group_classes(&fresh, Some(dir.path())).unwrap());
        let a = ctx.whole().classes(&ctx);
        let b = fresh.whole().classes(&fresh);
        assert_eq!(a.class_of, b.class_of);
        assert_eq!(a.sizes, b.sizes);
        let other = GroupContext::from_literal("fqt:2:2", 2, DEFAULT_CAP).unwrap();
        assert!(load(dir.path(), &other).is_none());
    }
}

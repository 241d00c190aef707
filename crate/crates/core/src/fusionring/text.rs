//! `fusionring v1` text format.
//!
//! ```text
//! fusionring v1 <n>
//! <label> <dual-label>        n lines, basis order
//! <i> <j> <k> <N_ij^k>        nonzero entries, lexicographic
//! ```
//!
//! Indices are 0-based. The unit is not written: it is recovered on reading
//! as the basis element that acts as the identity on both sides.

use std::fmt::Write as _;

use super::FusionRing;
use crate::error::{Error, Result};

const HEADER: &str = "fusionring v1";

pub(super) fn write(ring: &FusionRing) -> String {
    let n = ring.rank();
    let mut out = format!("{HEADER} {n}\n");
    for i in 0..n {
        let _ = writeln!(out, "{} {}", ring.label(i), ring.label(ring.dual(i)));
    }
    for i in 0..n {
        for j in 0..n {
            for &(k, c) in ring.row(i, j) {
                let _ = writeln!(out, "{i} {j} {k} {c}");
            }
        }
    }
    out
}

fn parse_err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("line {line}: {msg}"))
}

pub(super) fn read(s: &str) -> Result<FusionRing> {
    let mut lines = s
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (ln, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input".into()))?;
    let n: usize = header
        .strip_prefix(HEADER)
        .map(str::trim)
        .and_then(|rest| rest.parse().ok())
        .ok_or_else(|| parse_err(ln, format!("expected `{HEADER} <n>`")))?;
    if n == 0 {
        return Err(parse_err(ln, "empty basis"));
    }

    let mut labels = Vec::with_capacity(n);
    let mut dual_labels = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| Error::Parse("truncated basis".into()))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        let [label, dual] = parts[..] else {
            return Err(parse_err(ln, "expected `<label> <dual>`"));
        };
        labels.push(label.to_string());
        dual_labels.push((ln, dual.to_string()));
    }
    let dual = dual_labels
        .iter()
        .map(|(ln, d)| {
            labels
                .iter()
                .position(|l| l == d)
                .ok_or_else(|| parse_err(*ln, format!("unknown dual `{d}`")))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut entries = Vec::new();
    for (ln, line) in lines {
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| parse_err(ln, format!("bad integer `{t}`")))
            })
            .collect::<Result<_>>()?;
        let [i, j, k, c] = nums[..] else {
            return Err(parse_err(ln, "expected `i j k n`"));
        };
        if i.max(j).max(k) >= n as u64 {
            return Err(parse_err(ln, "index out of range"));
        }
        let c = u32::try_from(c).map_err(|_| parse_err(ln, "coefficient too large"))?;
        entries.push((i as usize, j as usize, k as usize, c));
    }

    let provisional = FusionRing::new(labels, 0, dual, entries)?;
    let unit = (0..n)
        .find(|&u| {
            (0..n).all(|j| {
                let id = [(j as u32, 1)];
                provisional.row(u, j) == id && provisional.row(j, u) == id
            })
        })
        .ok_or_else(|| Error::Parse("no unit object".into()))?;
    Ok(FusionRing {
        unit,
        ..provisional
    })
}

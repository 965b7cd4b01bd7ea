//! Parameter sweeps over instance families.
//!
//! The only family is `cyclic`: `G = Z_n`, `W = {-k, ..., k}` and
//! `Q = {y : min(y, n - y) ≤ ⌊n/2⌋ - r}`, so raising `r` drops the highest
//! frequencies. Each parameter is a single value or an inclusive range:
//!
//! ```text
//! cyclic:n=4..8,k=1,r=0..2
//! ```
//!
//! `k` and `r` default to 1 and 0. A range with start above its end is empty.

use std::fmt::Write as _;

use anyhow::{anyhow, bail};
use delsarte_core::{solve_delsarte, DelsarteInstance, GroupSpec, SolveStatus, Tolerances};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub start: i64,
    pub end: i64,
}

impl Range {
    fn values(self) -> impl Iterator<Item = i64> {
        self.start..=self.end
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicFamily {
    pub n: Range,
    pub k: Range,
    pub r: Range,
}

fn parse_range(s: &str) -> anyhow::Result<Range> {
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| anyhow!("'{t}' is not an integer"));
    match s.split_once("..") {
        Some((a, b)) => Ok(Range { start: num(a)?, end: num(b)? }),
        None => {
            let v = num(s)?;
            Ok(Range { start: v, end: v })
        }
    }
}

pub fn parse_family(spec: &str) -> anyhow::Result<CyclicFamily> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    if name.trim() != "cyclic" {
        bail!("unknown family '{}' (expected 'cyclic')", name.trim());
    }
    let (mut n, mut k, mut r) = (None, Range { start: 1, end: 1 }, Range { start: 0, end: 0 });
    for part in params.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, val) = part.split_once('=').ok_or_else(|| anyhow!("expected key=value, got '{part}'"))?;
        let range = parse_range(val)?;
        match key.trim() {
            "n" => n = Some(range),
            "k" => k = range,
            "r" => r = range,
            other => bail!("unknown parameter '{other}'"),
        }
    }
    let n = n.ok_or_else(|| anyhow!("missing parameter n"))?;
    if n.start < 1 || k.start < 0 || r.start < 0 {
        bail!("parameters must satisfy n ≥ 1, k ≥ 0, r ≥ 0");
    }
    if n.end > 4096 {
        bail!("n is limited to 4096");
    }
    Ok(CyclicFamily { n, k, r })
}

pub fn cyclic_instance(n: i64, k: i64, r: i64) -> anyhow::Result<DelsarteInstance> {
    let g = GroupSpec::new(&[n])?;
    let w: Vec<_> = (-k..=k).map(|x| g.element(&[x])).collect::<Result<_, _>>()?;
    let cutoff = n / 2 - r;
    let q: Vec<_> = g
        .characters()
        .filter(|y| {
            let c = y.coords()[0] as i64;
            c.min(n - c) <= cutoff
        })
        .collect();
    if q.is_empty() {
        bail!("r = {r} removes every character of Z_{n}");
    }
    Ok(DelsarteInstance::new(&g, &w, &q)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: i64,
    pub k: i64,
    pub r: i64,
    pub status: String,
    pub value: Option<f64>,
    /// `false` when the value decreases with `k` or increases with `r`.
    pub monotone: bool,
}

const MONOTONE_TOL: f64 = 1e-9;

pub fn run(family: &CyclicFamily, tol: &Tolerances) -> anyhow::Result<Vec<SweepRow>> {
    let mut params = Vec::new();
    for n in family.n.values() {
        for k in family.k.values() {
            for r in family.r.values() {
                if n / 2 - r >= 0 {
                    params.push((n, k, r));
                }
            }
        }
    }
    let mut rows: Vec<SweepRow> = params
        .par_iter()
        .map(|&(n, k, r)| {
            let sol = solve_delsarte(&cyclic_instance(n, k, r)?, tol);
            let status = match sol.status {
                SolveStatus::Optimal => "optimal",
                SolveStatus::Infeasible => "infeasible",
                SolveStatus::NumericalFailure => "numerical_failure",
            };
            let value = (sol.status == SolveStatus::Optimal).then_some(sol.value).flatten();
            Ok(SweepRow { n, k, r, status: status.into(), value, monotone: true })
        })
        .collect::<anyhow::Result<_>>()?;

    let lookup = |rows: &[SweepRow], n: i64, k: i64, r: i64| {
        rows.iter().find(|row| (row.n, row.k, row.r) == (n, k, r)).map(|row| row.value)
    };
    // an infeasible instance counts as -∞
    let ord = |v: Option<f64>| v.unwrap_or(f64::NEG_INFINITY);
    let flags: Vec<bool> = rows
        .iter()
        .map(|row| {
            let v = ord(row.value);
            let by_k = lookup(&rows, row.n, row.k - 1, row.r).is_none_or(|p| v + MONOTONE_TOL >= ord(p));
            let by_r = lookup(&rows, row.n, row.k, row.r - 1).is_none_or(|p| v <= ord(p) + MONOTONE_TOL);
            by_k && by_r
        })
        .collect();
    for (row, ok) in rows.iter_mut().zip(flags) {
        row.monotone = ok;
    }
    Ok(rows)
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("n,k,r,status,value,monotone\n");
    for row in rows {
        let value = row.value.map(|v| format!("{v}")).unwrap_or_default();
        writeln!(out, "{},{},{},{},{},{}", row.n, row.k, row.r, row.status, value, row.monotone).unwrap();
    }
    out
}

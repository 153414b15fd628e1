//! Verdict table over all canonical cyclic quotients up to a given order.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use toricres::fujiki_oka::{fujiki_oka_resolve, preferred_choice};
use toricres::{iterated_fo, match_class, Error, GroupAction};

use crate::{CliError, CliResult, ResolveSummary, SWEEP_MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub r: i64,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub class: String,
    pub fo_smooth: Option<bool>,
    pub fo_crepant: Option<bool>,
    pub fo_hilbert: Option<bool>,
    #[serde(rename = "fo_V")]
    pub fo_v: Option<usize>,
    #[serde(rename = "fo_E")]
    pub fo_e: Option<usize>,
    #[serde(rename = "fo_F")]
    pub fo_f: Option<usize>,
    pub it_hilbert: bool,
}

/// Smallest sorted weight triple over all generators of the group.
fn normal_form(r: i64, w: [i64; 3]) -> [i64; 3] {
    let g = GroupAction::new(r, w).expect("weights in range");
    g.units()
        .map(|t| {
            let mut p = g.power(t).weights();
            p.sort_unstable();
            p
        })
        .min()
        .expect("at least one unit")
}

/// Representatives `1/r(a1, a2, a3)`, `a1 <= a2 <= a3`, of the faithful
/// canonical actions of order `r`, one per class up to generator change and
/// coordinate permutation.
pub fn canonical_representatives(r: i64) -> Vec<GroupAction> {
    if r == 1 {
        return vec![GroupAction::trivial()];
    }
    let mut out = Vec::new();
    for a1 in 0..r {
        for a2 in a1..r {
            for a3 in a2..r {
                let w = [a1, a2, a3];
                if normal_form(r, w) != w {
                    continue;
                }
                let g = GroupAction::new(r, w).expect("weights in range");
                if g.is_faithful() && match_class(&g).is_canonical() {
                    out.push(g);
                }
            }
        }
    }
    out
}

fn row(g: &GroupAction) -> CliResult<SweepRow> {
    let [a1, a2, a3] = g.weights();
    let fo = match preferred_choice(g) {
        Ok(choice) => Some(ResolveSummary::of(&fujiki_oka_resolve(g, &choice)?)?),
        Err(Error::NoSemiUnimodularGenerator(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let (_, report) = iterated_fo(g)?;
    Ok(SweepRow {
        r: g.order(),
        a1,
        a2,
        a3,
        class: match_class(g).to_string(),
        fo_smooth: fo.map(|s| s.smooth),
        fo_crepant: fo.map(|s| s.crepant),
        fo_hilbert: fo.map(|s| s.hilbert),
        fo_v: fo.map(|s| s.v),
        fo_e: fo.map(|s| s.e),
        fo_f: fo.map(|s| s.f),
        it_hilbert: report.verdicts.hilbert,
    })
}

/// Rows ordered by `r`, then by weights.
pub fn sweep_rows(rmax: i64) -> CliResult<Vec<SweepRow>> {
    if !(1..=SWEEP_MAX_ORDER).contains(&rmax) {
        return Err(CliError::input(format!(
            "--rmax must lie in 1..={SWEEP_MAX_ORDER}, got {rmax}"
        )));
    }
    let groups: Vec<GroupAction> = (1..=rmax).flat_map(canonical_representatives).collect();
    groups.par_iter().map(row).collect()
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

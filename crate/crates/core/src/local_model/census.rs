use std::collections::BTreeMap;

use serde::Serialize;

use super::chain::{FlagChainPoint, StandardChainContext};
use super::fp::{grassmannian, Subspace};
use super::signature::{classify, SignatureIndex};
use crate::admissible::{display_name, AdmissibleTable};
use crate::weyl::Element;
use crate::Result;

/// Every `F_q`-point of the local model: `F_{-n}` runs over Lagrangians for
/// the index `-n` pairing, and each `F_{-i+1}` over the `n`-planes containing
/// `β(F_{-i})`; `F_0` must be isotropic.
pub fn enumerate_points(ctx: &StandardChainContext) -> Vec<FlagChainPoint> {
    let n = ctx.n;
    let planes = grassmannian(ctx.field, ctx.dim(), n);
    let mut out = Vec::new();
    let mut chain: Vec<Subspace> = Vec::with_capacity(n + 1);
    for bottom in planes.iter().filter(|f| f.is_isotropic(&ctx.psin_bar)) {
        chain.push(bottom.clone());
        extend(ctx, &planes, n, &mut chain, &mut out);
        chain.pop();
    }
    out
}

/// `chain` holds `F_{-n}, …, F_{-i}`.
fn extend(
    ctx: &StandardChainContext,
    planes: &[Subspace],
    i: usize,
    chain: &mut Vec<Subspace>,
    out: &mut Vec<FlagChainPoint>,
) {
    if i == 0 {
        if chain.last().expect("nonempty").is_isotropic(&ctx.psi0_bar) {
            out.push(FlagChainPoint::new_unchecked(chain.iter().rev().cloned().collect()));
        }
        return;
    }
    let image = chain.last().expect("nonempty").image(ctx.beta(i));
    for f in planes.iter().filter(|f| f.contains_subspace(&image)) {
        chain.push(f.clone());
        extend(ctx, planes, i - 1, chain, out);
        chain.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub name: String,
    pub element: Element,
    pub length: u32,
    pub expected: u64,
    pub observed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub g: usize,
    pub q: u32,
    pub rows: Vec<CensusRow>,
    pub total_expected: u64,
    pub total_observed: u64,
}

impl CensusReport {
    pub fn is_consistent(&self) -> bool {
        self.total_expected == self.total_observed
            && self.rows.iter().all(|r| r.expected == r.observed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,length,expected,observed\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.name, r.length, r.expected, r.observed));
        }
        out.push_str(&format!("total,,{},{}\n", self.total_expected, self.total_observed));
        out
    }
}

/// Classifies every point and compares stratum sizes with `q^{ℓ(x)}`.
pub fn census(table: &AdmissibleTable, index: &SignatureIndex) -> Result<CensusReport> {
    let ctx = index.context();
    let mut observed: BTreeMap<(u32, String), u64> = BTreeMap::new();
    let points = enumerate_points(ctx);
    for p in &points {
        let x = classify(p, index)?;
        *observed.entry(x.sort_key()).or_default() += 1;
    }
    let q = u64::from(ctx.q());
    let rows: Vec<CensusRow> = table
        .entries()
        .iter()
        .map(|e| {
            let element = e.element.clone();
            let key = element.sort_key();
            CensusRow {
                name: display_name(&element),
                length: e.length,
                expected: q.pow(e.length),
                observed: observed.get(&key).copied().unwrap_or(0),
                element,
            }
        })
        .collect();
    Ok(CensusReport {
        g: ctx.n,
        q: ctx.q(),
        total_expected: rows.iter().map(|r| r.expected).sum(),
        total_observed: points.len() as u64,
        rows,
    })
}

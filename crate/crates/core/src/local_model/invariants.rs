use std::fmt;

use serde::{Deserialize, Serialize};

use super::chain::{FlagChainPoint, StandardChainContext};
use super::fp::Subspace;
use super::chain::monomial_point;
use crate::admissible::{g2_element, p_rank};
use crate::weyl::Element;
use crate::{Error, Result};

/// `(σ_i, τ_i)` for `i = 0, …, n-1`:
/// `σ_i = n - dim β(F_{-i-1})` and `τ_i = 2n - dim(β(V) + F_{-i})`, the
/// cokernel dimensions of the chain map on the subspaces and on the quotients.
pub fn chain_invariants(p: &FlagChainPoint, ctx: &StandardChainContext) -> Vec<(usize, usize)> {
    let n = ctx.n;
    (0..n)
        .map(|i| {
            let beta = ctx.beta(i + 1);
            let sigma = n - p.subspace(i + 1).image(beta).dim();
            let tau = 2 * n - ctx.whole().image(beta).sum(p.subspace(i)).dim();
            (sigma, tau)
        })
        .collect()
}

/// `(σ_02, τ_02)` for the two-step map `β_1 β_2 : V_{-2} → V_0`.
pub fn second_invariants(p: &FlagChainPoint, ctx: &StandardChainContext) -> Result<(usize, usize)> {
    if ctx.n != 2 {
        return Err(Error::Genus { min: 2, got: ctx.n });
    }
    let two_step = ctx.beta(1).mul(&ctx.field, ctx.beta(2));
    let sigma = 2 - p.subspace(2).image(&two_step).dim();
    let tau = 4 - ctx.whole().image(&two_step).sum(p.subspace(0)).dim();
    Ok((sigma, tau))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSchemeKind {
    Etale,
    Multiplicative,
    AlphaP,
}

impl fmt::Display for GroupSchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupSchemeKind::Etale => "Z/pZ",
            GroupSchemeKind::Multiplicative => "mu_p",
            GroupSchemeKind::AlphaP => "alpha_p",
        })
    }
}

pub fn group_scheme_kind(sigma: usize, tau: usize) -> Result<GroupSchemeKind> {
    match (sigma, tau) {
        (0, 1) => Ok(GroupSchemeKind::Etale),
        (1, 0) => Ok(GroupSchemeKind::Multiplicative),
        (1, 1) => Ok(GroupSchemeKind::AlphaP),
        other => Err(Error::InvalidParameter(format!("no group scheme with invariants {other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub p_rank: usize,
    pub sigma_tau: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_tau_02: Option<(usize, usize)>,
}

impl InvariantProfile {
    /// Profile of a point whose p-rank is known (from its stratum). The
    /// two-step invariants are filled in for supersingular points of genus 2.
    pub fn of_point(p: &FlagChainPoint, ctx: &StandardChainContext, p_rank: usize) -> Self {
        let sigma_tau_02 = if ctx.n == 2 && p_rank == 0 {
            Some(second_invariants(p, ctx).expect("genus checked"))
        } else {
            None
        };
        InvariantProfile { p_rank, sigma_tau: chain_invariants(p, ctx), sigma_tau_02 }
    }
}

/// Rows `(p-rank, (σ_0,τ_0), (σ_1,τ_1), KR)` for p-rank ≥ 1, genus 2.
pub const TABLE_2: [(usize, (usize, usize), (usize, usize), &str); 8] = [
    (2, (0, 1), (0, 1), "s0s1s0tau"),
    (2, (0, 1), (1, 0), "s0s2s1tau"),
    (2, (1, 0), (0, 1), "s1s0s2tau"),
    (2, (1, 0), (1, 0), "s2s1s2tau"),
    (1, (0, 1), (1, 1), "s0s1tau"),
    (1, (1, 0), (1, 1), "s1s2tau"),
    (1, (1, 1), (1, 0), "s2s1tau"),
    (1, (1, 1), (0, 1), "s1s0tau"),
];

/// Rows `((σ_02, τ_02), KR)` for supersingular points, genus 2; all have
/// `(σ_i, τ_i) = (1, 1)`. The last cell does not separate two strata.
pub const TABLE_3: [((usize, usize), &[&str]); 4] = [
    ((1, 1), &["s0s2tau"]),
    ((1, 2), &["s0tau"]),
    ((2, 1), &["s2tau"]),
    ((2, 2), &["s1tau", "tau"]),
];

/// The strata compatible with a genus-2 invariant profile.
pub fn kr_from_profile(profile: &InvariantProfile) -> Result<Vec<Element>> {
    let missing = || Error::NoMatch(format!("no table row for {profile:?}"));
    if profile.sigma_tau.len() != 2 {
        return Err(Error::Genus { min: 2, got: profile.sigma_tau.len() });
    }
    let names: Vec<&str> = if profile.p_rank >= 1 {
        let row = TABLE_2
            .iter()
            .find(|(r, a, b, _)| {
                *r == profile.p_rank && *a == profile.sigma_tau[0] && *b == profile.sigma_tau[1]
            })
            .ok_or_else(missing)?;
        vec![row.3]
    } else {
        if profile.sigma_tau.iter().any(|&st| st != (1, 1)) {
            return Err(missing());
        }
        let second = profile.sigma_tau_02.ok_or_else(missing)?;
        TABLE_3.iter().find(|(st, _)| *st == second).ok_or_else(missing)?.1.to_vec()
    };
    Ok(names.into_iter().map(|name| g2_element(name).expect("table labels are admissible")).collect())
}

/// Whether `ψ_0(β(v), β(w)) = 0` for all `v ∈ V_{-1}`, `w ∈ F_{-1}`, with
/// `β : V_{-1} → V_0`. Separates the `τ` stratum inside the closure of `s_1τ`.
pub fn tau_criterion(p: &FlagChainPoint, ctx: &StandardChainContext) -> bool {
    let beta = ctx.beta(1);
    let all: Subspace = ctx.whole().image(beta);
    let small = p.subspace(1).image(beta);
    all.basis()
        .iter()
        .all(|v| small.basis().iter().all(|w| ctx.psi0_bar.bilinear(&ctx.field, v, w) == 0))
}

pub fn table1_csv() -> String {
    let mut out = String::from("sigma,tau,group\n");
    for (s, t) in [(0, 1), (1, 0), (1, 1)] {
        let kind = group_scheme_kind(s, t).expect("listed pairs are valid");
        out.push_str(&format!("{s},{t},{kind}\n"));
    }
    out
}

/// Table 2 recomputed from the monomial representatives of the p-rank ≥ 1
/// strata, in the frozen row order.
pub fn table2_csv(ctx: &StandardChainContext) -> Result<String> {
    let mut out = String::from("p_rank,sigma0,tau0,sigma1,tau1,kr\n");
    for (_, _, _, name) in TABLE_2 {
        let x = g2_element(name).expect("table labels are admissible");
        let st = chain_invariants(&monomial_point(&x, ctx)?, ctx);
        let (a, b) = (st[0], st[1]);
        out.push_str(&format!("{},{},{},{},{},{name}\n", p_rank(&x), a.0, a.1, b.0, b.1));
    }
    Ok(out)
}

/// Table 3 recomputed from the supersingular monomial representatives; strata
/// sharing all invariants are listed in one cell separated by `/`.
pub fn table3_csv(ctx: &StandardChainContext) -> Result<String> {
    let mut out = String::from("p_rank,sigma0,tau0,sigma1,tau1,sigma02,tau02,kr\n");
    for (_, names) in TABLE_3 {
        let mut rows = Vec::new();
        for name in names {
            let x = g2_element(name).expect("table labels are admissible");
            let p = monomial_point(&x, ctx)?;
            let st = chain_invariants(&p, ctx);
            let second = second_invariants(&p, ctx)?;
            rows.push((p_rank(&x), st, second));
        }
        if rows.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::Invariant(format!("strata {names:?} have different invariants")));
        }
        let (r, st, second) = &rows[0];
        out.push_str(&format!(
            "{r},{},{},{},{},{},{},{}\n",
            st[0].0,
            st[0].1,
            st[1].0,
            st[1].1,
            second.0,
            second.1,
            names.join("/")
        ));
    }
    Ok(out)
}

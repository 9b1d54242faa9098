//! Counting formulas: components of parahoric p-rank strata, connected
//! components by graded étale-multiplicative type, supersingular masses and
//! small point-counting loci.

mod loci;
mod mass;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub use loci::{fermat_point_count, frobenius_graph_count, SmallField};
pub use mass::{
    lambda_counts, sp_order, supersingular_summary, zeta_mass_constant, MassParams, StratumCount,
    SupersingularSummary,
};

use crate::{Error, Result};

/// A parahoric level `k = (k_1, …, k_r)` for genus `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParahoricType {
    k: Vec<usize>,
    g: usize,
}

impl ParahoricType {
    pub fn new(k: Vec<usize>, g: usize) -> Result<Self> {
        if k.is_empty() {
            return Err(Error::InvalidParameter("parahoric type must be nonempty".into()));
        }
        if k.iter().any(|&ki| ki == 0) {
            return Err(Error::InvalidParameter(format!("entries of {k:?} must be positive")));
        }
        let total: usize = k.iter().sum();
        if total > g {
            return Err(Error::InvalidParameter(format!("{k:?} sums to {total} > g = {g}")));
        }
        Ok(ParahoricType { k, g })
    }

    /// The Iwahori type `(1, …, 1)`.
    pub fn iwahori(g: usize) -> Result<Self> {
        ParahoricType::new(vec![1; g], g)
    }

    pub fn k(&self) -> &[usize] {
        &self.k
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn r(&self) -> usize {
        self.k.len()
    }

    /// Partial sums `h(0) = 0, h(i) = k_1 + … + k_i`.
    pub fn h(&self) -> Vec<usize> {
        let mut out = vec![0];
        for &ki in &self.k {
            out.push(out.last().expect("nonempty") + ki);
        }
        out
    }

    fn is_full(&self) -> bool {
        self.h()[self.r()] == self.g
    }
}

/// Every tuple `t` with `0 ≤ t(i) ≤ bounds[i]`, lexicographically.
fn boxes(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(bounds.len())];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

/// `I^0, I^1, …, I^r`, each element written `(j, τ(1), …, τ(r))`.
pub fn type_index_sets(pt: &ParahoricType) -> Vec<Vec<Vec<usize>>> {
    let mut sets = Vec::with_capacity(pt.r() + 1);
    let tag = |j: usize, tau: Vec<usize>| {
        let mut t = vec![j];
        t.extend(tau);
        t
    };
    sets.push(if pt.is_full() {
        Vec::new()
    } else {
        boxes(pt.k()).into_iter().map(|t| tag(0, t)).collect()
    });
    for j in 1..=pt.r() {
        let mut bounds = pt.k().to_vec();
        bounds[j - 1] -= 1;
        sets.push(boxes(&bounds).into_iter().map(|t| tag(j, t)).collect());
    }
    sets
}

/// `(k_1+1)⋯(k_r+1)·[ε + Σ k_i/(k_i+1)]` with `ε = 1` iff `h(r) < g`.
pub fn almost_ordinary_closed_form(pt: &ParahoricType) -> BigRational {
    let one = BigRational::from_integer(1.into());
    let product = pt.k().iter().fold(one.clone(), |acc, &ki| acc * BigRational::from_integer((ki + 1).into()));
    let epsilon = if pt.is_full() { BigRational::zero() } else { one };
    let bracket = pt.k().iter().fold(epsilon, |acc, &ki| {
        acc + BigRational::new(ki.into(), (ki + 1).into())
    });
    product * bracket
}

/// Number of irreducible components of the p-rank `g - 1` stratum, counted
/// as `Σ_j |I^j|` and checked against the closed form.
pub fn almost_ordinary_components(pt: &ParahoricType) -> Result<u64> {
    if pt.g() < 2 {
        return Err(Error::Genus { min: 2, got: pt.g() });
    }
    let counted: usize = type_index_sets(pt).iter().map(Vec::len).sum();
    let closed = almost_ordinary_closed_form(pt);
    if !closed.is_integer() || closed.to_integer() != counted.into() {
        return Err(Error::Invariant(format!(
            "enumerated {counted} components but the closed form gives {closed}"
        )));
    }
    Ok(counted as u64)
}

/// `Σ_0(k, f)`: the `m` with `0 ≤ m(i) ≤ k_i` and
/// `f - (g - h(r)) ≤ Σ m(i) ≤ f`.
pub fn sigma_zero(pt: &ParahoricType, f: usize) -> Result<Vec<Vec<usize>>> {
    if f > pt.g() {
        return Err(Error::InvalidParameter(format!("p-rank {f} exceeds g = {}", pt.g())));
    }
    let slack = (pt.g() - pt.h()[pt.r()]) as i64;
    let low = f as i64 - slack;
    Ok(boxes(pt.k())
        .into_iter()
        .filter(|m| {
            let s: usize = m.iter().sum();
            s as i64 >= low && s <= f
        })
        .collect())
}

/// A graded étale-multiplicative type `(m, τ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GemType {
    pub m: Vec<usize>,
    pub tau: Vec<usize>,
}

/// `(Σ_0(k, f), Σ(k, f))`; `Σ` lists every `(m, τ)` with `m ∈ Σ_0` and
/// `0 ≤ τ(i) ≤ m(i)`.
pub fn sigma_sets(pt: &ParahoricType, f: usize) -> Result<(Vec<Vec<usize>>, Vec<GemType>)> {
    let base = sigma_zero(pt, f)?;
    let full = base
        .iter()
        .flat_map(|m| boxes(m).into_iter().map(move |tau| GemType { m: m.clone(), tau }))
        .collect();
    Ok((base, full))
}

/// Number of connected components of the p-rank `f` stratum, `|Σ(k, f)|`.
pub fn connected_component_count(pt: &ParahoricType, f: usize) -> Result<u64> {
    if pt.g() < 2 {
        return Err(Error::Genus { min: 2, got: pt.g() });
    }
    let (base, full) = sigma_sets(pt, f)?;
    let fibred: usize = base.iter().map(|m| m.iter().map(|&v| v + 1).product::<usize>()).sum();
    if fibred != full.len() {
        return Err(Error::Invariant(format!("Σ has {} elements, fibres sum to {fibred}", full.len())));
    }
    Ok(full.len() as u64)
}

/// The isogeny-chain type `n = (n(1), …, n(r'))` of the local-local part
/// attached to a gem type: successive gaps of the distinct values of
/// `b(i) = h(i) - (m(1) + … + m(i))`.
pub fn gem_to_chain_type(gem: &GemType, pt: &ParahoricType, f: usize) -> Result<Vec<usize>> {
    let r = pt.r();
    let inconsistent = |why: &str| Error::InvalidParameter(format!("gem type {gem:?}: {why}"));
    if gem.m.len() != r || gem.tau.len() != r {
        return Err(inconsistent("wrong length"));
    }
    if gem.m.iter().zip(pt.k()).any(|(m, k)| m > k) || gem.tau.iter().zip(&gem.m).any(|(t, m)| t > m) {
        return Err(inconsistent("entry out of range"));
    }
    if !sigma_zero(pt, f)?.contains(&gem.m) {
        return Err(inconsistent("étale-multiplicative rank incompatible with the p-rank"));
    }
    let h = pt.h();
    let mut a = 0;
    let mut b = vec![0usize];
    for i in 1..=r {
        a += gem.m[i - 1];
        b.push(h[i] - a);
    }
    let mut distinct = b.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let chain: Vec<usize> = distinct.windows(2).map(|w| w[1] - w[0]).collect();
    let top = *distinct.last().expect("b(0) is present");
    let r_prime = chain.len();
    let ok = r_prime <= r && r_prime <= top && h[r] as i64 - f as i64 <= top as i64 && top + f <= pt.g();
    if !ok {
        return Err(Error::Invariant(format!("chain type {chain:?} violates its bounds")));
    }
    Ok(chain)
}

//! Relative position of a point with respect to the standard lattice chain.
//!
//! Lattices between `t²L_0` and `L_0 = F_q[[t]]^{2n}` are handled through
//! their images in `L_0/t²L_0 ≅ F_q^{4n}`; coordinate `m` stands for `e_m`
//! and `2n + m` for `t·e_m`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::chain::{monomial_point, FlagChainPoint, StandardChainContext};
use super::fp::{Matrix, Subspace};
use crate::admissible::AdmissibleTable;
use crate::weyl::Element;
use crate::{Error, Result};

/// Image of the standard lattice `L_{-j} = ⟨e_m (m ≤ 2n-j), t·e_m (m > 2n-j)⟩`.
pub fn standard_lattice(ctx: &StandardChainContext, j: usize) -> Subspace {
    let dim = ctx.dim();
    let keep = dim - j;
    Subspace::coordinate(ctx.field, 2 * dim, (0..keep).chain(dim..2 * dim))
}

/// The `t¹`-coefficient of `ψ` on `L_0/t²L_0`. Orthogonality for it is
/// duality of lattices sandwiched between `t²L_0` and `L_0`.
pub fn truncated_form(ctx: &StandardChainContext) -> Matrix {
    let dim = ctx.dim();
    let mut b = Matrix::zeros(2 * dim, 2 * dim);
    for a in 0..dim {
        for c in 0..dim {
            let v = ctx.psi0_bar.get(a, c);
            b.set(a, dim + c, v);
            b.set(dim + a, c, v);
        }
    }
    b
}

fn times_t(ctx: &StandardChainContext, s: &Subspace) -> Subspace {
    let dim = ctx.dim();
    let rows = s
        .basis()
        .iter()
        .map(|v| {
            let mut out = vec![0; 2 * dim];
            out[dim..].copy_from_slice(&v[..dim]);
            out
        })
        .collect();
    Subspace::span(ctx.field, 2 * dim, rows)
}

/// The full periodic lattice chain `M_0 ⊇ M_{-1} ⊇ … ⊇ M_{-2n}` of a point:
/// `M_{-i}` for `i ≤ n` is the preimage of `F_{-i}` in `L_{-i}`, the members
/// `n < i < 2n` are duals of `M_{i-2n}`, and `M_{-2n} = t·M_0`.
pub fn lattice_chain(p: &FlagChainPoint, ctx: &StandardChainContext) -> Vec<Subspace> {
    let n = ctx.n;
    let dim = ctx.dim();
    let form = truncated_form(ctx);
    let mut chain: Vec<Subspace> = (0..=n)
        .map(|i| {
            let keep = dim - i;
            let mut rows: Vec<Vec<u32>> = p
                .subspace(i)
                .basis()
                .iter()
                .map(|v| {
                    let mut out = vec![0; 2 * dim];
                    for m in 0..dim {
                        if m < keep {
                            out[m] = v[m];
                        } else {
                            out[dim + m] = v[m];
                        }
                    }
                    out
                })
                .collect();
            rows.extend((0..keep).map(|m| {
                let mut out = vec![0; 2 * dim];
                out[dim + m] = 1;
                out
            }));
            Subspace::span(ctx.field, 2 * dim, rows)
        })
        .collect();
    for i in (n + 1)..(2 * n) {
        let dual = chain[2 * n - i].orthogonal(&form);
        chain.push(dual);
    }
    chain.push(times_t(ctx, &chain[0]));
    chain
}

/// Recovers `F_{-i}` from `M_{-i}` as `M_{-i} / t·L_{-i}` inside
/// `L_{-i}/t·L_{-i} ≅ F_q^{2n}`. Inverse of the lift in [`lattice_chain`].
pub fn point_from_lattices(ctx: &StandardChainContext, lattices: &[Subspace]) -> Result<FlagChainPoint> {
    let dim = ctx.dim();
    let subspaces = (0..=ctx.n)
        .map(|i| {
            let keep = dim - i;
            let lattice = &lattices[i];
            if !standard_lattice(ctx, i).contains_subspace(lattice) {
                return Err(Error::InvalidParameter(format!("M_-{i} is not inside L_-{i}")));
            }
            let rows = lattice
                .basis()
                .iter()
                .map(|z| (0..dim).map(|m| if m < keep { z[m] } else { z[dim + m] }).collect())
                .collect();
            Ok(Subspace::span(ctx.field, dim, rows))
        })
        .collect::<Result<Vec<_>>>()?;
    FlagChainPoint::new(ctx, subspaces)
}

/// `dims[i][j] = dim (M_{-i} ∩ L_{-j}) / t²L_0` for `0 ≤ i, j ≤ 2n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    pub dims: Vec<Vec<usize>>,
}

impl Signature {
    pub fn of_chain(ctx: &StandardChainContext, chain: &[Subspace]) -> Self {
        let standard: Vec<Subspace> = (0..=ctx.dim()).map(|j| standard_lattice(ctx, j)).collect();
        let dims = chain
            .iter()
            .map(|m| standard.iter().map(|l| m.intersection_dim(l)).collect())
            .collect();
        Signature { dims }
    }
}

pub fn signature(p: &FlagChainPoint, ctx: &StandardChainContext) -> Signature {
    Signature::of_chain(ctx, &lattice_chain(p, ctx))
}

/// Signatures of the monomial representatives of an admissible set.
#[derive(Clone, Debug)]
pub struct SignatureIndex {
    ctx: StandardChainContext,
    by_signature: HashMap<Signature, Element>,
}

impl SignatureIndex {
    /// Fails if two representatives share a signature, since the lookup
    /// would then be ambiguous.
    pub fn new(table: &AdmissibleTable, ctx: &StandardChainContext) -> Result<Self> {
        if table.g() != ctx.n {
            return Err(Error::RankMismatch { expected: ctx.n, got: table.g() });
        }
        let mut by_signature = HashMap::new();
        for x in table.elements() {
            let sig = signature(&monomial_point(x, ctx)?, ctx);
            if let Some(other) = by_signature.insert(sig, x.clone()) {
                return Err(Error::Invariant(format!("{x} and {other} share a signature")));
            }
        }
        Ok(SignatureIndex { ctx: ctx.clone(), by_signature })
    }

    pub fn len(&self) -> usize {
        self.by_signature.len()
    }

    pub fn is_empty(&self) -> bool {
        self.by_signature.is_empty()
    }

    pub fn context(&self) -> &StandardChainContext {
        &self.ctx
    }

    pub fn lookup(&self, sig: &Signature) -> Option<&Element> {
        self.by_signature.get(sig)
    }

    /// `(element, signature)` pairs sorted by element.
    pub fn entries(&self) -> Vec<(Element, Signature)> {
        let mut out: Vec<(Element, Signature)> =
            self.by_signature.iter().map(|(s, x)| (x.clone(), s.clone())).collect();
        out.sort_by_cached_key(|(x, _)| x.sort_key());
        out
    }

    pub fn from_entries(ctx: &StandardChainContext, entries: Vec<(Element, Signature)>) -> Result<Self> {
        let mut by_signature = HashMap::new();
        for (x, sig) in entries {
            if let Some(other) = by_signature.insert(sig, x.clone()) {
                return Err(Error::Invariant(format!("{x} and {other} share a signature")));
            }
        }
        Ok(SignatureIndex { ctx: ctx.clone(), by_signature })
    }
}

/// The stratum containing `p`.
pub fn classify(p: &FlagChainPoint, index: &SignatureIndex) -> Result<Element> {
    let sig = signature(p, &index.ctx);
    index
        .lookup(&sig)
        .cloned()
        .ok_or_else(|| Error::NoMatch(format!("no stratum with signature {:?}", sig.dims)))
}

use serde::{Deserialize, Serialize};

use super::fp::{Matrix, PrimeField, Subspace};
use crate::admissible::is_permissible;
use crate::weyl::{standard_vector, Element};
use crate::{Error, Result};

/// The standard lattice chain reduced mod `t`: transition maps and the two
/// boundary pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardChainContext {
    pub n: usize,
    pub field: PrimeField,
    /// `beta_bar[j - 1]` for chain index `j = 1, …, 2n`: kills `e_{2n-j+1}`
    /// and fixes every other basis vector.
    pub beta_bar: Vec<Matrix>,
    pub psi0_bar: Matrix,
    pub psin_bar: Matrix,
}

impl StandardChainContext {
    pub fn new(n: usize, q: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Genus { min: 1, got: n });
        }
        let field = PrimeField::new(q)?;
        let dim = 2 * n;
        let beta_bar = (1..=dim)
            .map(|j| {
                let mut m = Matrix::identity(dim);
                m.set(dim - j, dim - j, 0);
                m
            })
            .collect();
        let psi0_bar = standard_form(&field, n);
        let psin_bar = reduce_pulled_back_form(n, &psi0_bar)?;
        Ok(StandardChainContext { n, field, beta_bar, psi0_bar, psin_bar })
    }

    pub fn dim(&self) -> usize {
        2 * self.n
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// The map `V_{-j} → V_{-j+1}`, `1 ≤ j ≤ 2n`.
    pub fn beta(&self, j: usize) -> &Matrix {
        &self.beta_bar[j - 1]
    }

    pub fn whole(&self) -> Subspace {
        Subspace::whole(self.field, self.dim())
    }
}

/// `ψ(e_i, e_{2n+1-i}) = 1` for `i ≤ n`, `-1` for `i > n`.
pub fn standard_form(field: &PrimeField, n: usize) -> Matrix {
    let dim = 2 * n;
    let mut m = Matrix::zeros(dim, dim);
    for i in 0..dim {
        let value = if i < n { 1 } else { field.reduce(-1) };
        m.set(i, dim - 1 - i, value);
    }
    m
}

/// The pairing on the index `-n` member defined by
/// `ψ_0(β(x), β(y)) = t·ψ_{-n}(x, y)`, where the composite `β` of the chain
/// maps multiplies `e_m` by `t^{k_m}`. Returns its reduction mod `t`.
pub fn reduce_pulled_back_form(n: usize, psi0: &Matrix) -> Result<Matrix> {
    let dim = 2 * n;
    let exponents: Vec<u32> = (0..dim).map(|m| u32::from(m >= n)).collect();
    let mut out = Matrix::zeros(dim, dim);
    for a in 0..dim {
        for b in 0..dim {
            let value = psi0.get(a, b);
            if value == 0 {
                continue;
            }
            match exponents[a] + exponents[b] {
                0 => {
                    return Err(Error::Invariant(format!(
                        "pulled-back pairing is not divisible by t at ({a}, {b})"
                    )))
                }
                1 => out.set(a, b, value),
                _ => {}
            }
        }
    }
    Ok(out)
}

/// A point of the local model over `F_q`: subspaces `F_0, F_{-1}, …, F_{-n}`
/// of the fibres of the standard chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlagChainPoint {
    subspaces: Vec<Subspace>,
}

impl FlagChainPoint {
    /// Validates dimensions, compatibility with the chain maps and isotropy.
    pub fn new(ctx: &StandardChainContext, subspaces: Vec<Subspace>) -> Result<Self> {
        let n = ctx.n;
        if subspaces.len() != n + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} subspaces, got {}",
                n + 1,
                subspaces.len()
            )));
        }
        for (i, f) in subspaces.iter().enumerate() {
            if f.ambient() != ctx.dim() || f.field() != ctx.field {
                return Err(Error::InvalidParameter(format!("F_-{i} lives in the wrong space")));
            }
            if f.dim() != n {
                return Err(Error::InvalidParameter(format!(
                    "F_-{i} has dimension {}, expected {n}",
                    f.dim()
                )));
            }
        }
        for i in 1..=n {
            if !subspaces[i - 1].contains_subspace(&subspaces[i].image(ctx.beta(i))) {
                return Err(Error::InvalidParameter(format!("β(F_-{i}) is not inside F_-{}", i - 1)));
            }
        }
        if !subspaces[0].is_isotropic(&ctx.psi0_bar) {
            return Err(Error::InvalidParameter("F_0 is not isotropic".into()));
        }
        if !subspaces[n].is_isotropic(&ctx.psin_bar) {
            return Err(Error::InvalidParameter(format!("F_-{n} is not isotropic")));
        }
        Ok(FlagChainPoint { subspaces })
    }

    pub(crate) fn new_unchecked(subspaces: Vec<Subspace>) -> Self {
        FlagChainPoint { subspaces }
    }

    /// `F_{-i}`.
    pub fn subspace(&self, i: usize) -> &Subspace {
        &self.subspaces[i]
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn n(&self) -> usize {
        self.subspaces.len() - 1
    }

    pub fn to_record(&self) -> PointRecord {
        PointRecord::from(self)
    }

    pub fn from_record(record: &PointRecord) -> Result<(Self, StandardChainContext)> {
        let ctx = StandardChainContext::new(record.g, record.q)?;
        let dim = ctx.dim();
        let mut subspaces = Vec::with_capacity(record.subspaces.len());
        for rows in &record.subspaces {
            if rows.iter().any(|r| r.len() != dim) {
                return Err(Error::Parse(format!("basis vectors must have length {dim}")));
            }
            let reduced = rows.iter().map(|r| r.iter().map(|&v| ctx.field.reduce(v)).collect()).collect();
            subspaces.push(Subspace::span(ctx.field, dim, reduced));
        }
        let point = FlagChainPoint::new(&ctx, subspaces)?;
        Ok((point, ctx))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("points serialize")
    }

    pub fn from_json(text: &str) -> Result<(Self, StandardChainContext)> {
        let record: PointRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        FlagChainPoint::from_record(&record)
    }
}

/// JSON form of a point: `subspaces[i]` holds basis rows of `F_{-i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub q: u32,
    pub g: usize,
    pub subspaces: Vec<Vec<Vec<i64>>>,
}

impl From<&FlagChainPoint> for PointRecord {
    fn from(p: &FlagChainPoint) -> Self {
        let subspaces = p
            .subspaces
            .iter()
            .map(|s| s.basis().iter().map(|r| r.iter().map(|&v| i64::from(v)).collect()).collect())
            .collect();
        PointRecord { q: p.subspaces[0].field().order(), g: p.n(), subspaces }
    }
}

impl Serialize for FlagChainPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PointRecord::from(self).serialize(s)
    }
}

/// The torus-fixed point of the stratum of `x`: `F_{-i}` is spanned by the
/// `e_m` with `(x(v_{-i}) - v_{-i})_m = 0`, i.e. the coordinates where the
/// monomial lattice `x·L_{-i}` is not divisible by `t`.
pub fn monomial_point(x: &Element, ctx: &StandardChainContext) -> Result<FlagChainPoint> {
    if x.n() != ctx.n {
        return Err(Error::RankMismatch { expected: 2 * ctx.n, got: 2 * x.n() });
    }
    if !is_permissible(x) {
        return Err(Error::NotPermissible(x.to_string()));
    }
    let dim = ctx.dim();
    let subspaces = (0..=ctx.n)
        .map(|i| {
            let v = standard_vector(ctx.n, i);
            let image = x.act(&v).expect("shapes agree");
            let zeros = (0..dim).filter(|&m| image[m] == v[m]);
            Subspace::coordinate(ctx.field, dim, zeros)
        })
        .collect();
    FlagChainPoint::new(ctx, subspaces)
}

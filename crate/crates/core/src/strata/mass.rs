use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};

use crate::{Error, Result};

/// A prime `p` and a prime-to-`p` level `N ≥ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MassParams {
    pub p: u64,
    pub level: u64,
}

impl MassParams {
    pub fn new(p: u64, level: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        if level < 3 {
            return Err(Error::InvalidParameter(format!("level N = {level} must be at least 3")));
        }
        if level.gcd(&p) != 1 {
            return Err(Error::InvalidParameter(format!("p = {p} divides N = {level}")));
        }
        Ok(MassParams { p, level })
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `|Sp_2g(Z/N)| = N^{g(2g+1)} ∏_{ℓ | N} ∏_{i=1}^{g} (1 - ℓ^{-2i})`.
pub fn sp_order(g: usize, level: u64) -> BigUint {
    assert!(level >= 1, "level must be positive");
    let big = |v: u64| BigRational::from_integer(BigInt::from(v));
    let dim = (g * (2 * g + 1)) as u32;
    let mut total = BigRational::from_integer(BigInt::from(level).pow(dim));
    for ell in prime_divisors(level) {
        for i in 1..=g as u32 {
            let power = big(ell).pow(2 * i as i32);
            total *= BigRational::one() - power.recip();
        }
    }
    assert!(total.is_integer() && !total.is_negative(), "group order is a natural number");
    total.to_integer().to_biguint().expect("nonnegative")
}

/// `(-1)·ζ(-1)·ζ(-3)/4` with `ζ(-1) = -1/12`, `ζ(-3) = 1/120`.
pub fn zeta_mass_constant() -> BigRational {
    let zeta_minus_1 = BigRational::new(BigInt::from(-1), BigInt::from(12));
    let zeta_minus_3 = BigRational::new(BigInt::from(1), BigInt::from(120));
    -(zeta_minus_1 * zeta_minus_3) / BigRational::from_integer(BigInt::from(4))
}

fn integral(x: BigRational, what: &str) -> Result<BigUint> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::Invariant(format!("{what} = {x} is not a natural number")));
    }
    Ok(x.to_integer().to_biguint().expect("nonnegative"))
}

/// `(|Λ|, |Λ_{2,1,N}|)`: superspecial points of genus 2 with principal
/// polarization, resp. polarization kernel of order `p²`.
pub fn lambda_counts(mp: &MassParams) -> Result<(BigUint, BigUint)> {
    let sp = BigRational::from_integer(BigInt::from(sp_order(2, mp.level)));
    let c = zeta_mass_constant();
    let p = BigInt::from(mp.p);
    let one = BigInt::one();
    let principal = &sp * &c * BigRational::from_integer(&p * &p - &one);
    let non_principal = &sp * &c * BigRational::from_integer((&p - &one) * (&p * &p + &one));
    Ok((integral(principal, "|Λ|")?, integral(non_principal, "|Λ_{2,1,N}|")?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StratumCount {
    Components(BigUint),
    /// Known only from results outside this library.
    External,
}

impl Serialize for StratumCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            StratumCount::Components(n) => s.serialize_str(&n.to_string()),
            StratumCount::External => s.serialize_str("external"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersingularSummary {
    #[serde(serialize_with = "decimal")]
    pub lambda: BigUint,
    #[serde(serialize_with = "decimal")]
    pub lambda_211: BigUint,
    #[serde(serialize_with = "decimal")]
    pub components: BigUint,
    #[serde(serialize_with = "decimal")]
    pub singular_points: BigUint,
    /// Irreducible components of the supersingular part of each KR stratum
    /// (all components for p-rank ≥ 1), keyed by stratum label.
    pub per_stratum: BTreeMap<String, StratumCount>,
}

fn decimal<S: Serializer>(n: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

/// Component and singular-point counts of the supersingular locus of the
/// genus-2 Siegel threefold with Iwahori level at `p`.
pub fn supersingular_summary(mp: &MassParams) -> Result<SupersingularSummary> {
    let (lambda, lambda_211) = lambda_counts(mp)?;
    let singular_points = &lambda_211 * BigUint::from(mp.p + 1);
    let mut per_stratum = BTreeMap::new();
    let count = |n: &BigUint| StratumCount::Components(n.clone());
    per_stratum.insert("s0s2tau".to_string(), count(&lambda));
    per_stratum.insert("s1tau".to_string(), count(&lambda_211));
    per_stratum.insert("s0tau".to_string(), count(&lambda));
    per_stratum.insert("s2tau".to_string(), count(&lambda));
    per_stratum.insert("tau".to_string(), count(&singular_points));
    for name in ["s0s1tau", "s1s2tau", "s2s1tau", "s1s0tau"] {
        per_stratum.insert(name.to_string(), StratumCount::Components(BigUint::one()));
    }
    for name in ["s0s1s0tau", "s0s2s1tau", "s1s0s2tau", "s2s1s2tau"] {
        per_stratum.insert(name.to_string(), StratumCount::External);
    }
    Ok(SupersingularSummary {
        components: &lambda + &lambda_211,
        lambda,
        lambda_211,
        singular_points,
        per_stratum,
    })
}

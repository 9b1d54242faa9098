use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::perm::Perm;
use crate::{Error, Result};

/// `θ = (1,2n)(2,2n-1)…(n,n+1)` as a 0-based index map.
#[inline]
pub fn theta(n: usize, i: usize) -> usize {
    2 * n - 1 - i
}

/// An element `t_ν w_σ` of the extended affine Weyl group of `GSp_2n`.
///
/// `ν` lies in `X_*(T) = {u : u_i + u_{2n+1-i} constant}` and `σ` commutes
/// with `θ`. The element acts on `Z^2n` by `v ↦ w_σ·v + ν` where
/// `w_σ(e_i) = e_{σ(i)}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Element {
    nu: Vec<i64>,
    sigma: Perm,
}

impl Element {
    pub fn new(nu: Vec<i64>, sigma: Perm) -> Result<Self> {
        let len = nu.len();
        if len == 0 || len % 2 != 0 {
            return Err(Error::InvalidElement(format!(
                "cocharacter must have positive even length, got {len}"
            )));
        }
        if sigma.len() != len {
            return Err(Error::RankMismatch { expected: len, got: sigma.len() });
        }
        let n = len / 2;
        let c = nu[0] + nu[len - 1];
        if (0..n).any(|i| nu[i] + nu[theta(n, i)] != c) {
            return Err(Error::InvalidElement(format!("{nu:?} is not in X_*(T)")));
        }
        if (0..len).any(|i| sigma.apply(theta(n, i)) != theta(n, sigma.apply(i))) {
            return Err(Error::InvalidElement(format!("{sigma} does not commute with θ")));
        }
        Ok(Element { nu, sigma })
    }

    pub(crate) fn new_unchecked(nu: Vec<i64>, sigma: Perm) -> Self {
        debug_assert!(Element::new(nu.clone(), sigma.clone()).is_ok());
        Element { nu, sigma }
    }

    pub fn identity(n: usize) -> Self {
        Element { nu: vec![0; 2 * n], sigma: Perm::identity(2 * n) }
    }

    /// The pure translation `t_ν`.
    pub fn translation(nu: Vec<i64>) -> Result<Self> {
        let len = nu.len();
        Element::new(nu, Perm::identity(len))
    }

    /// Half the matrix size, i.e. the genus.
    pub fn n(&self) -> usize {
        self.nu.len() / 2
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    /// The common value `u_i + u_{2n+1-i}` of the translation part. It is
    /// the image of the element in `W̃ / W_aff ≅ Z`.
    pub fn similitude(&self) -> i64 {
        self.nu[0] + self.nu[self.nu.len() - 1]
    }

    /// `x(v) = w_σ·v + ν`.
    pub fn act(&self, v: &[i64]) -> Result<Vec<i64>> {
        if v.len() != self.nu.len() {
            return Err(Error::RankMismatch { expected: self.nu.len(), got: v.len() });
        }
        Ok(self.act_unchecked(v))
    }

    pub(crate) fn act_unchecked(&self, v: &[i64]) -> Vec<i64> {
        let mut out = self.nu.clone();
        for (i, &vi) in v.iter().enumerate() {
            out[self.sigma.apply(i)] += vi;
        }
        out
    }

    /// `w_σ·v` without the translation.
    pub fn linear_part(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, &vi) in v.iter().enumerate() {
            out[self.sigma.apply(i)] = vi;
        }
        out
    }

    pub fn try_compose(&self, other: &Element) -> Result<Element> {
        if self.nu.len() != other.nu.len() {
            return Err(Error::RankMismatch { expected: self.nu.len(), got: other.nu.len() });
        }
        let nu = self.act_unchecked(&other.nu);
        Ok(Element { nu, sigma: self.sigma.compose(&other.sigma) })
    }

    pub fn inverse(&self) -> Element {
        let sigma = self.sigma.inverse();
        let neg: Vec<i64> = self.nu.iter().map(|&a| -a).collect();
        let mut nu = vec![0; neg.len()];
        for (i, &a) in neg.iter().enumerate() {
            nu[sigma.apply(i)] = a;
        }
        Element { nu, sigma }
    }

    pub fn pow(&self, k: i64) -> Element {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Element::identity(self.n()), |acc, _| &acc * &base)
    }

    /// The element `τ = t_{(0^n,1^n)}·(i ↦ i+n mod 2n)` generating the length-zero
    /// subgroup `Ω`. For `n = 2` this is `((0,0,1,1),(13)(24))`.
    pub fn omega_generator(n: usize) -> Element {
        let len = 2 * n;
        let nu = (0..len).map(|i| if i < n { 0 } else { 1 }).collect();
        let sigma = Perm::from_one_line((0..len).map(|i| (i + n) % len).collect())
            .expect("shift is a permutation");
        Element::new_unchecked(nu, sigma)
    }

    /// The simple affine reflection `s_i`, `0 ≤ i ≤ n`.
    ///
    /// * `s_0 = ((-1,0,…,0,1),(1,2n))`
    /// * `s_i = (i,i+1)(2n-i,2n-i+1)` for `1 ≤ i < n`
    /// * `s_n = (n,n+1)`
    pub fn simple_reflection(n: usize, i: usize) -> Element {
        assert!(i <= n, "simple reflection index {i} out of range for n = {n}");
        let len = 2 * n;
        let mut images: Vec<usize> = (0..len).collect();
        let mut nu = vec![0; len];
        match i {
            0 => {
                images.swap(0, len - 1);
                nu[0] = -1;
                nu[len - 1] = 1;
            }
            i if i == n => images.swap(n - 1, n),
            i => {
                images.swap(i - 1, i);
                images.swap(theta(n, i - 1), theta(n, i));
            }
        }
        Element::new_unchecked(nu, Perm::from_one_line(images).expect("swap is a permutation"))
    }

    /// Sort key `(length, canonical text)` used for all deterministic output.
    pub fn sort_key(&self) -> (u32, String) {
        (self.length(), self.to_string())
    }
}

impl Mul<&Element> for &Element {
    type Output = Element;

    fn mul(self, rhs: &Element) -> Element {
        self.try_compose(rhs).expect("composing elements of different rank")
    }
}

impl Mul for Element {
    type Output = Element;

    fn mul(self, rhs: Element) -> Element {
        &self * &rhs
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nu: Vec<String> = self.nu.iter().map(|a| a.to_string()).collect();
        write!(f, "[({}),{}]", nu.join(","), self.sigma)
    }
}

impl FromStr for Element {
    type Err = Error;

    /// Parses the canonical text form `[(u1,…,u2n),(cycles)]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected [(u1,...,u2n),(cycles)], got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?
            .trim();
        let rest = inner.strip_prefix('(').ok_or_else(bad)?;
        let close = rest.find(')').ok_or_else(bad)?;
        let nu: Vec<i64> = rest[..close]
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        let cycles = rest[close + 1..].trim_start().strip_prefix(',').ok_or_else(bad)?;
        let sigma = Perm::parse_cycles(nu.len(), cycles)?;
        Element::new(nu, sigma)
    }
}

/// Structured form `{nu, sigma}` with `sigma` in 1-based one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub nu: Vec<i64>,
    pub sigma: Vec<usize>,
}

impl From<&Element> for ElementRecord {
    fn from(x: &Element) -> Self {
        ElementRecord {
            nu: x.nu.clone(),
            sigma: x.sigma.images().iter().map(|i| i + 1).collect(),
        }
    }
}

impl TryFrom<ElementRecord> for Element {
    type Error = Error;

    fn try_from(r: ElementRecord) -> Result<Self> {
        if r.sigma.iter().any(|&i| i == 0) {
            return Err(Error::Parse("sigma entries are 1-based".into()));
        }
        let sigma = Perm::from_one_line(r.sigma.iter().map(|i| i - 1).collect())?;
        Element::new(r.nu, sigma)
    }
}

impl Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ElementRecord::deserialize(d)?;
        Element::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(s: &str) -> Element {
        s.parse().unwrap()
    }

    #[test]
    fn g2_generators() {
        assert_eq!(Element::simple_reflection(2, 0), el("[(-1,0,0,1),(14)]"));
        assert_eq!(Element::simple_reflection(2, 1), el("[(0,0,0,0),(12)(34)]"));
        assert_eq!(Element::simple_reflection(2, 2), el("[(0,0,0,0),(23)]"));
        assert_eq!(Element::omega_generator(2), el("[(0,0,1,1),(13)(24)]"));
    }

    #[test]
    fn s0_action() {
        let s0 = Element::simple_reflection(2, 0);
        assert_eq!(s0.act(&[5, 6, 7, 8]).unwrap(), vec![7, 6, 7, 6]);
        // (u4-1, u2, u3, u1+1)
        assert_eq!(s0.act(&[1, 2, 3, 4]).unwrap(), vec![3, 2, 3, 2]);
    }

    #[test]
    fn compose_matches_table() {
        let s0 = Element::simple_reflection(2, 0);
        let s1 = Element::simple_reflection(2, 1);
        let tau = Element::omega_generator(2);
        assert_eq!(&s1 * &tau, el("[(0,0,1,1),(14)(23)]"));
        assert_eq!(&(&(&s0 * &s1) * &s0) * &tau, el("[(0,0,1,1),(1)]"));
    }

    #[test]
    fn act_errors_and_identity() {
        let tau = Element::omega_generator(2);
        assert_eq!(tau.act(&[0, 0, 0, 0]).unwrap(), vec![0, 0, 1, 1]);
        assert!(tau.act(&[0, 0]).is_err());
        assert_eq!(Element::identity(2).act(&[3, 1, 4, 1]).unwrap(), vec![3, 1, 4, 1]);
        assert!(tau.try_compose(&Element::identity(3)).is_err());
    }

    #[test]
    fn rejects_non_members() {
        assert!(Element::new(vec![1, 0, 0, 0], Perm::identity(4)).is_err());
        let bad = Perm::parse_cycles(4, "(12)").unwrap();
        assert!(Element::new(vec![0; 4], bad).is_err());
        assert!("[(0,0,1,1),(13)(24)".parse::<Element>().is_err());
    }

    #[test]
    fn serde_record() {
        let tau = Element::omega_generator(2);
        let json = serde_json::to_string(&tau).unwrap();
        assert_eq!(json, r#"{"nu":[0,0,1,1],"sigma":[3,4,1,2]}"#);
        let back: Element = serde_json::from_str(&json).unwrap();
        assert_eq!(back, tau);
    }
}

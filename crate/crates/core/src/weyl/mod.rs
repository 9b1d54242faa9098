//! The extended affine Weyl group `W̃ = X_*(T) ⋊ W` of `GSp_2n`.
//!
//! Elements are pairs `(ν, σ)` acting on `Z^2n` by `v ↦ w_σ v + ν`. The
//! affine Weyl group `W_aff` is generated by the reflections `s_0, …, s_n` in
//! the walls of the base alcove `u_1 < u_2 < … < u_2n < u_1 + 1`, and
//! `W̃ = W_aff ⋊ Ω` with `Ω = ⟨τ⟩ ≅ Z` the stabiliser of that alcove.

mod bruhat;
mod element;
mod perm;

use std::fmt;

pub use bruhat::{hasse_diagram, is_affine_reflection, HasseDiagram};
pub use element::{theta, Element, ElementRecord};
pub use perm::Perm;

use crate::{Error, Result};

/// Generators and standard data for a fixed genus.
#[derive(Clone, Debug)]
pub struct GroupContext {
    pub n: usize,
    pub theta: Perm,
    /// `s_0, …, s_n` in that order.
    pub simple_reflections: Vec<Element>,
    pub omega_generator: Element,
    /// `v_{-i} = (0^{2n-i}, 1^i)` for `i = 0, …, 2n`.
    pub standard_vectors: Vec<Vec<i64>>,
    /// The dominant coweight `μ = (1^n, 0^n)`.
    pub mu: Vec<i64>,
}

pub fn make_context(g: usize) -> Result<GroupContext> {
    if g == 0 {
        return Err(Error::Genus { min: 1, got: g });
    }
    let len = 2 * g;
    let theta = Perm::from_one_line((0..len).map(|i| element::theta(g, i)).collect())?;
    Ok(GroupContext {
        n: g,
        theta,
        simple_reflections: (0..=g).map(|i| Element::simple_reflection(g, i)).collect(),
        omega_generator: Element::omega_generator(g),
        standard_vectors: (0..=len).map(|i| standard_vector(g, i)).collect(),
        mu: (0..len).map(|i| i64::from(i < g)).collect(),
    })
}

/// `v_{-i} = (0^{2n-i}, 1^i)`.
pub fn standard_vector(n: usize, i: usize) -> Vec<i64> {
    let len = 2 * n;
    (0..len).map(|m| i64::from(m >= len - i)).collect()
}

impl Element {
    /// Length of the `W_aff`-component, counted as the number of affine root
    /// hyperplanes `u_j - u_i = k` separating the base alcove from its image.
    ///
    /// The base alcove contains the barycentre `b = (0, 1, …, 2n-1)/2n` of the
    /// standard vertices; both `b` and `x(b)` avoid every hyperplane, so the
    /// count for the root `u_j - u_i` is `|⌊(x(b)_j - x(b)_i)⌋|`. Positive roots
    /// are represented by pairs `i < j` with `i + j ≤ 2n - 1` (0-based), one per
    /// `θ`-orbit.
    pub fn length(&self) -> u32 {
        let len = self.nu().len();
        let scale = len as i64;
        let barycentre: Vec<i64> = (0..scale).collect();
        let image: Vec<i64> = self
            .linear_part(&barycentre)
            .into_iter()
            .zip(self.nu())
            .map(|(b, &v)| b + scale * v)
            .collect();
        let mut total = 0u32;
        for i in 0..len {
            for j in (i + 1)..len {
                if i + j > len - 1 {
                    break;
                }
                let crossings = (image[j] - image[i]).div_euclid(scale);
                total += crossings.unsigned_abs() as u32;
            }
        }
        total
    }

    /// Splits `x = w·τ^k` with `w ∈ W_aff`, i.e. with the translation part of
    /// `w` in the coroot lattice `{u : u_i + u_{2n+1-i} = 0}`.
    pub fn decompose_omega(&self) -> Result<(Element, i64)> {
        let k = self.similitude();
        let tau = Element::omega_generator(self.n());
        let w = self * &tau.pow(-k);
        if w.similitude() != 0 {
            return Err(Error::Invariant(format!("{self} does not split over Ω")));
        }
        Ok((w, k))
    }

    /// A reduced expression `s_{i_1} ⋯ s_{i_ℓ} τ^k`, found by peeling off left
    /// descents with the smallest index first.
    pub fn reduced_word(&self) -> ReducedWord {
        let n = self.n();
        let (mut w, k) = self.decompose_omega().expect("validated elements split over Ω");
        let gens: Vec<Element> = (0..=n).map(|i| Element::simple_reflection(n, i)).collect();
        let mut letters = Vec::new();
        let mut len = w.length();
        while len > 0 {
            let (i, shorter) = gens
                .iter()
                .enumerate()
                .map(|(i, s)| (i, s * &w))
                .find(|(_, sw)| sw.length() < len)
                .expect("a non-identity element has a left descent");
            letters.push(i);
            w = shorter;
            len -= 1;
        }
        ReducedWord { n, letters, omega_power: k }
    }

    /// `self ≤ other` in the Bruhat order: equal `Ω`-components and
    /// `w_self ≤ w_other` in `W_aff`.
    pub fn bruhat_leq(&self, other: &Element) -> bool {
        if self.n() != other.n() || self.similitude() != other.similitude() {
            return false;
        }
        if self.length() > other.length() {
            return false;
        }
        bruhat::lower_interval(other).contains(self)
    }
}

/// A word `s_{i_1} ⋯ s_{i_ℓ} τ^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    pub n: usize,
    pub letters: Vec<usize>,
    pub omega_power: i64,
}

impl ReducedWord {
    pub fn evaluate(&self) -> Element {
        let mut x = Element::identity(self.n);
        for &i in &self.letters {
            x = &x * &Element::simple_reflection(self.n, i);
        }
        &x * &Element::omega_generator(self.n).pow(self.omega_power)
    }

    /// Parses labels such as `s0s1s0tau`, `s2tau`, `tau` or `s1` (no `τ`).
    pub fn parse(n: usize, label: &str) -> Result<Self> {
        let mut rest = label.trim().replace('τ', "tau");
        let mut omega_power = 0;
        if let Some(stripped) = rest.strip_suffix("tau") {
            omega_power = 1;
            rest = stripped.to_string();
        }
        let mut letters = Vec::new();
        for part in rest.split('s').skip(1) {
            let i: usize = part
                .trim_matches('_')
                .parse()
                .map_err(|_| Error::Parse(format!("bad generator in {label:?}")))?;
            if i > n {
                return Err(Error::Parse(format!("generator s{i} out of range in {label:?}")));
            }
            letters.push(i);
        }
        if !rest.is_empty() && !rest.starts_with('s') {
            return Err(Error::Parse(format!("bad word {label:?}")));
        }
        Ok(ReducedWord { n, letters, omega_power })
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.letters {
            write!(f, "s{i}")?;
        }
        match self.omega_power {
            0 if self.letters.is_empty() => write!(f, "1"),
            0 => Ok(()),
            1 => write!(f, "tau"),
            k => write!(f, "tau^{k}"),
        }
    }
}

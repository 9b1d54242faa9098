//! `μ`-permissible and `μ`-admissible sets for `μ = (1^n, 0^n)`.
//!
//! The two sets are computed by unrelated algorithms: [`permissible_set`]
//! searches `(ν, σ)` pairs against the alcove-vertex inequalities, while
//! [`admissible_set`] takes the union of Bruhat intervals below the
//! translations `t_{w(μ)}`. Their equality is checked in the test suite.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::weyl::{standard_vector, theta, Element, Perm};
use crate::{Error, Result};

/// The ν window sufficient for `μ = (1^n, 0^n)`: displacements lie in `[0,1]`
/// and `w·v`, `v` both have 0/1 entries, so every `ν_m` lies in `[-1, 2]`.
pub const NU_WINDOW: (i64, i64) = (-1, 2);

/// Labels of the 13 admissible elements for `g = 2`, as reduced words, with
/// their `(ν, σ)` form.
pub const G2_LABELS: [(&str, &str); 13] = [
    ("tau", "[(0,0,1,1),(13)(24)]"),
    ("s1tau", "[(0,0,1,1),(14)(23)]"),
    ("s0tau", "[(0,0,1,1),(1342)]"),
    ("s2tau", "[(0,1,0,1),(1243)]"),
    ("s0s1tau", "[(0,0,1,1),(23)]"),
    ("s0s2tau", "[(0,1,0,1),(12)(34)]"),
    ("s1s2tau", "[(1,0,1,0),(23)]"),
    ("s2s1tau", "[(0,1,0,1),(14)]"),
    ("s1s0tau", "[(0,0,1,1),(14)]"),
    ("s0s1s0tau", "[(0,0,1,1),(1)]"),
    ("s1s0s2tau", "[(1,0,1,0),(1)]"),
    ("s2s1s2tau", "[(1,1,0,0),(1)]"),
    ("s0s2s1tau", "[(0,1,0,1),(1)]"),
];

/// The `g = 2` label of an element, if it is one of the 13 admissible ones.
pub fn g2_label(x: &Element) -> Option<&'static str> {
    if x.n() != 2 {
        return None;
    }
    let text = x.to_string();
    G2_LABELS.iter().find(|(_, form)| *form == text).map(|(name, _)| *name)
}

/// Looks up a `g = 2` element by label (`s0s1s0tau`, also accepting `τ`).
pub fn g2_element(label: &str) -> Option<Element> {
    let label = label.replace('τ', "tau").replace('_', "");
    G2_LABELS
        .iter()
        .find(|(name, _)| *name == label)
        .map(|(_, form)| form.parse().expect("frozen table parses"))
}

/// A printable name: the `g = 2` label when available, the canonical form
/// otherwise.
pub fn display_name(x: &Element) -> String {
    g2_label(x).map(str::to_string).unwrap_or_else(|| x.to_string())
}

/// All `σ ∈ S_2n` commuting with `θ` (signed permutations), `2^n n!` of them.
pub fn finite_weyl_group(n: usize) -> Vec<Perm> {
    let len = 2 * n;
    let mut out = Vec::new();
    let mut base: Vec<usize> = (0..n).collect();
    let mut perms = Vec::new();
    permutations(&mut base, 0, &mut perms);
    for pi in perms {
        for signs in 0u32..(1 << n) {
            let mut images = vec![0; len];
            for i in 0..n {
                let target = if signs >> i & 1 == 1 { theta(n, pi[i]) } else { pi[i] };
                images[i] = target;
                images[theta(n, i)] = theta(n, target);
            }
            out.push(Perm::from_one_line(images).expect("signed permutation"));
        }
    }
    out.sort();
    out
}

fn permutations(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, out);
        items.swap(k, i);
    }
}

/// `0 ≤ x(v_{-i}) - v_{-i} ≤ 1` for `i = 0, …, 2n-1` and `|x(0)| = n`.
pub fn is_permissible(x: &Element) -> bool {
    let n = x.n();
    if x.nu().iter().sum::<i64>() != n as i64 {
        return false;
    }
    (0..2 * n).all(|i| {
        let v = standard_vector(n, i);
        x.act_unchecked(&v).iter().zip(&v).all(|(a, b)| (0..=1).contains(&(a - b)))
    })
}

/// One admissible element together with its derived data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibleEntry {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    #[serde(flatten)]
    pub element: Element,
    pub length: u32,
    pub p_rank: usize,
}

/// A set of elements of `W̃` with lengths, p-ranks and (for `g = 2`) labels,
/// kept sorted by `(length, canonical text)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleTable {
    g: usize,
    entries: Vec<AdmissibleEntry>,
    index: HashMap<Element, usize>,
}

impl AdmissibleTable {
    pub fn from_elements(g: usize, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut entries = Vec::new();
        for x in elements {
            if x.n() != g {
                return Err(Error::RankMismatch { expected: g, got: x.n() });
            }
            if seen.insert(x.clone()) {
                entries.push(AdmissibleEntry {
                    name: g2_label(&x).map(str::to_string),
                    length: x.length(),
                    p_rank: p_rank(&x),
                    element: x,
                });
            }
        }
        entries.sort_by_cached_key(|e| e.element.sort_key());
        let index = entries.iter().enumerate().map(|(i, e)| (e.element.clone(), i)).collect();
        Ok(AdmissibleTable { g, entries, index })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[AdmissibleEntry] {
        &self.entries
    }

    pub fn elements(&self) -> impl Iterator<Item = &Element> {
        self.entries.iter().map(|e| &e.element)
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    pub fn entry(&self, x: &Element) -> Option<&AdmissibleEntry> {
        self.index.get(x).map(|&i| &self.entries[i])
    }

    pub fn element_set(&self) -> HashSet<Element> {
        self.elements().cloned().collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.entries).expect("entries serialize")
    }

    /// Re-ingests [`AdmissibleTable::to_json`] output. Lengths and p-ranks are
    /// recomputed and must agree with the stored values.
    pub fn from_json(text: &str) -> Result<Self> {
        let entries: Vec<AdmissibleEntry> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let g = entries
            .first()
            .map(|e| e.element.n())
            .ok_or_else(|| Error::Parse("empty admissible table".into()))?;
        let table = AdmissibleTable::from_elements(g, entries.iter().map(|e| e.element.clone()))?;
        for e in &entries {
            let fresh = table.entry(&e.element).expect("just inserted");
            if fresh.length != e.length || fresh.p_rank != e.p_rank {
                return Err(Error::Parse(format!("stale data for {}", e.element)));
            }
        }
        Ok(table)
    }

    /// CSV with header `name,nu,sigma,length,p_rank`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,nu,sigma,length,p_rank\n");
        for e in &self.entries {
            let nu: Vec<String> = e.element.nu().iter().map(|a| a.to_string()).collect();
            out.push_str(&format!(
                "{},\"({})\",{},{},{}\n",
                e.name.as_deref().unwrap_or(""),
                nu.join(","),
                e.element.sigma(),
                e.length,
                e.p_rank
            ));
        }
        out
    }
}

/// Exhaustive search over `σ ∈ W` and `ν ∈ X_*(T)` in the default window.
pub fn permissible_set(g: usize) -> Result<AdmissibleTable> {
    permissible_set_in_window(g, NU_WINDOW)
}

/// As [`permissible_set`] with an explicit inclusive `ν` window.
pub fn permissible_set_in_window(g: usize, window: (i64, i64)) -> Result<AdmissibleTable> {
    if g == 0 {
        return Err(Error::Genus { min: 1, got: g });
    }
    let (lo, hi) = window;
    let weyl = finite_weyl_group(g);
    let mut found = Vec::new();
    // ν is fixed by its first half and the common pair sum c.
    for c in (2 * lo)..=(2 * hi) {
        let mut half = vec![lo; g];
        loop {
            let nu_ok = half.iter().all(|&a| (lo..=hi).contains(&(c - a)));
            if nu_ok {
                let mut nu = vec![0; 2 * g];
                for i in 0..g {
                    nu[i] = half[i];
                    nu[theta(g, i)] = c - half[i];
                }
                for sigma in &weyl {
                    let x = Element::new_unchecked(nu.clone(), sigma.clone());
                    if is_permissible(&x) {
                        found.push(x);
                    }
                }
            }
            if !odometer(&mut half, lo, hi) {
                break;
            }
        }
    }
    AdmissibleTable::from_elements(g, found)
}

fn odometer(digits: &mut [i64], lo: i64, hi: i64) -> bool {
    for d in digits.iter_mut() {
        if *d < hi {
            *d += 1;
            return true;
        }
        *d = lo;
    }
    false
}

/// The translations `t_{w(μ)}`, `w ∈ W`; there are `2^n` distinct ones.
pub fn mu_translations(g: usize) -> Vec<Element> {
    let mu: Vec<i64> = (0..2 * g).map(|i| i64::from(i < g)).collect();
    let mut out: Vec<Element> = finite_weyl_group(g)
        .iter()
        .map(|sigma| {
            let w = Element::new_unchecked(vec![0; 2 * g], sigma.clone());
            Element::translation(w.linear_part(&mu)).expect("W preserves X_*(T)")
        })
        .collect();
    out.sort_by_cached_key(Element::sort_key);
    out.dedup();
    out
}

/// `{x : x ≤ t_{w(μ)} for some w ∈ W}`.
pub fn admissible_set(g: usize) -> Result<AdmissibleTable> {
    if g == 0 {
        return Err(Error::Genus { min: 1, got: g });
    }
    let mut all = HashSet::new();
    for t in mu_translations(g) {
        all.extend(t.bruhat_interval());
    }
    AdmissibleTable::from_elements(g, all)
}

/// `½ #Fix(σ)`.
pub fn p_rank(x: &Element) -> usize {
    let fixed = x.sigma().fixed_points();
    debug_assert!(fixed % 2 == 0, "θ-commuting permutations fix an even number of points");
    fixed / 2
}

/// Admissible elements grouped by p-rank.
pub fn p_rank_strata(g: usize) -> Result<BTreeMap<usize, Vec<Element>>> {
    let table = admissible_set(g)?;
    let mut out: BTreeMap<usize, Vec<Element>> = BTreeMap::new();
    for e in table.entries() {
        out.entry(e.p_rank).or_default().push(e.element.clone());
    }
    Ok(out)
}

/// The monomial matrix `t_ν w_σ`: entry `t^{ν_{σ(j)}}` at `(σ(j), j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMatrix {
    entries: Vec<Vec<Option<u32>>>,
}

impl MonomialMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Exponent at 0-based `(row, col)`, `None` for an empty entry.
    pub fn get(&self, row: usize, col: usize) -> Option<u32> {
        self.entries[row][col]
    }

    /// Builds a matrix from rows of `"."`, `"1"`, `"t"`, `"t^k"` tokens.
    pub fn parse(text: &str) -> Result<Self> {
        let entries: Vec<Vec<Option<u32>>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                line.split_whitespace()
                    .map(|tok| match tok {
                        "." => Ok(None),
                        "1" => Ok(Some(0)),
                        "t" => Ok(Some(1)),
                        _ => tok
                            .strip_prefix("t^")
                            .and_then(|e| e.parse().ok())
                            .map(Some)
                            .ok_or_else(|| Error::Parse(format!("bad matrix entry {tok:?}"))),
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let size = entries.len();
        if entries.iter().any(|r| r.len() != size) {
            return Err(Error::Parse("matrix is not square".into()));
        }
        Ok(MonomialMatrix { entries })
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|e| match e {
                    None => ".".to_string(),
                    Some(0) => "1".to_string(),
                    Some(1) => "t".to_string(),
                    Some(k) => format!("t^{k}"),
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn matrix_rep(x: &Element) -> Result<MonomialMatrix> {
    let size = x.nu().len();
    let mut entries = vec![vec![None; size]; size];
    for j in 0..size {
        let row = x.sigma().apply(j);
        let e = x.nu()[row];
        if e < 0 {
            return Err(Error::InvalidParameter(format!(
                "{x} has negative exponent {e} in row {}",
                row + 1
            )));
        }
        entries[row][j] = Some(e as u32);
    }
    Ok(MonomialMatrix { entries })
}

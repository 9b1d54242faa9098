use std::collections::HashSet;

use super::element::{theta, Element};
use crate::{Error, Result};

/// `{x : x ≤ y}`, computed by the subword property: every product of a
/// subword of a reduced word of `w_y` is below `w_y`, and conversely.
pub(crate) fn lower_interval(y: &Element) -> HashSet<Element> {
    let n = y.n();
    let word = y.reduced_word();
    let mut below: HashSet<Element> = HashSet::from([Element::identity(n)]);
    for &i in &word.letters {
        let s = Element::simple_reflection(n, i);
        let extended: Vec<Element> = below.iter().map(|x| x * &s).collect();
        below.extend(extended);
    }
    let omega = Element::omega_generator(n).pow(word.omega_power);
    below.into_iter().map(|x| &x * &omega).collect()
}

impl Element {
    /// All elements `x ≤ self` in the Bruhat order.
    pub fn bruhat_interval(&self) -> Vec<Element> {
        let mut out: Vec<Element> = lower_interval(self).into_iter().collect();
        out.sort_by_cached_key(Element::sort_key);
        out
    }
}

/// True iff `r` is a reflection of `W_aff`: an involution with trivial
/// `Ω`-component whose linear part is a reflection of the finite Weyl group
/// of type `C_n`.
pub fn is_affine_reflection(r: &Element) -> bool {
    let n = r.n();
    if r.similitude() != 0 || (r * r) != Element::identity(n) {
        return false;
    }
    let cycles = r.sigma().cycles();
    match cycles.as_slice() {
        [c] => c.len() == 2 && c[1] == theta(n, c[0]),
        [a, b] => {
            a.len() == 2
                && b.len() == 2
                && a[0] != theta(n, a[1])
                && {
                    let mut image = vec![theta(n, a[0]), theta(n, a[1])];
                    image.sort_unstable();
                    image == *b
                }
        }
        _ => false,
    }
}

/// Cover relations of the Bruhat order restricted to a set of elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    /// Sorted by `(length, canonical text)`.
    pub nodes: Vec<Element>,
    /// `(lower, upper)` node indices; `ℓ(upper) = ℓ(lower) + 1`.
    pub edges: Vec<(usize, usize)>,
}

pub fn hasse_diagram(elements: &[Element]) -> Result<HasseDiagram> {
    let mut nodes: Vec<Element> = elements.to_vec();
    nodes.sort_by_cached_key(Element::sort_key);
    nodes.dedup();
    if let Some(first) = nodes.first() {
        let k = first.similitude();
        if let Some(bad) = nodes.iter().find(|x| x.similitude() != k || x.n() != first.n()) {
            return Err(Error::InvalidParameter(format!(
                "{bad} lies in a different Ω-component than {first}"
            )));
        }
    }
    let lengths: Vec<u32> = nodes.iter().map(Element::length).collect();
    let mut edges = Vec::new();
    for (hi, y) in nodes.iter().enumerate() {
        if lengths[hi] == 0 {
            continue;
        }
        let below = lower_interval(y);
        for (lo, x) in nodes.iter().enumerate() {
            if lengths[lo] + 1 == lengths[hi] && below.contains(x) {
                let t = y * &x.inverse();
                if !is_affine_reflection(&t) {
                    return Err(Error::Invariant(format!(
                        "cover {x} -> {y} is not a reflection multiple"
                    )));
                }
                edges.push((lo, hi));
            }
        }
    }
    edges.sort_unstable();
    Ok(HasseDiagram { nodes, edges })
}

impl HasseDiagram {
    pub fn out_degree(&self, node: usize) -> usize {
        self.edges.iter().filter(|&&(lo, _)| lo == node).count()
    }

    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.nodes.iter().position(|y| y == x)
    }

    /// Graphviz output, edges pointing from lower to higher length.
    pub fn to_dot(&self, label: impl Fn(&Element) -> String) -> String {
        let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
        for (i, x) in self.nodes.iter().enumerate() {
            let text = label(x).replace('"', "\\\"");
            out.push_str(&format!("  n{i} [label=\"{text}\"];\n"));
        }
        for &(lo, hi) in &self.edges {
            out.push_str(&format!("  n{lo} -> n{hi};\n"));
        }
        out.push_str("}\n");
        out
    }
}

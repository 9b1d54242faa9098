#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use kr_core::local_model::fp::{Matrix, PrimeField};
use kr_core::local_model::StandardChainContext;
use kr_core::weyl::Element;
use rand::Rng;

/// Word lengths of every element of `W_aff` up to `max_len`, by breadth-first
/// search from the identity over `s_0, …, s_n`.
pub fn bfs_lengths(n: usize, max_len: u32) -> HashMap<Element, u32> {
    let gens: Vec<Element> = (0..=n).map(|i| Element::simple_reflection(n, i)).collect();
    let mut seen = HashMap::from([(Element::identity(n), 0)]);
    let mut queue = VecDeque::from([Element::identity(n)]);
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        if d == max_len {
            continue;
        }
        for s in &gens {
            let y = &x * s;
            if !seen.contains_key(&y) {
                seen.insert(y.clone(), d + 1);
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Length of `x` read off a BFS table of `W_aff`.
pub fn bfs_length(table: &HashMap<Element, u32>, x: &Element) -> Option<u32> {
    let k = x.similitude();
    let tau = Element::omega_generator(x.n());
    table.get(&(x * &tau.pow(-k))).copied()
}

/// Bruhat order by the lifting property: if `s·y < y` then `x ≤ y` iff
/// `min(x, s·x) ≤ s·y`. Lengths come from the BFS table.
pub fn bruhat_leq_by_lifting(table: &HashMap<Element, u32>, x: &Element, y: &Element) -> bool {
    if x.similitude() != y.similitude() {
        return false;
    }
    let n = x.n();
    let k = x.similitude();
    let tau_inv = Element::omega_generator(n).pow(-k);
    lifting(table, &(x * &tau_inv), &(y * &tau_inv))
}

fn lifting(table: &HashMap<Element, u32>, x: &Element, y: &Element) -> bool {
    if x == y {
        return true;
    }
    let (lx, ly) = (table[x], table[y]);
    if lx >= ly {
        return false;
    }
    let n = x.n();
    let s = (0..=n)
        .map(|i| Element::simple_reflection(n, i))
        .find(|s| table[&(s * y)] < ly)
        .expect("nontrivial elements have a left descent");
    let sx = &s * x;
    let sy = &s * y;
    if table[&sx] < lx {
        lifting(table, &sx, &sy)
    } else {
        lifting(table, x, &sy)
    }
}

/// Number of `F_q`-points of the genus-2 local model, by brute force over
/// all triples of planes in `F_q^4`, each plane stored as the bit set of its
/// `q²` vectors.
pub fn brute_force_point_count(q: u32) -> u64 {
    let dim = 4;
    let size = q.pow(dim) as usize;
    assert!(size <= 128);
    let decode = |mut code: usize| -> Vec<u32> {
        (0..dim)
            .map(|_| {
                let c = (code % q as usize) as u32;
                code /= q as usize;
                c
            })
            .collect()
    };
    let encode = |v: &[u32]| -> usize { v.iter().rev().fold(0, |acc, &c| acc * q as usize + c as usize) };
    let vectors: Vec<Vec<u32>> = (0..size).map(decode).collect();

    let mut planes: HashSet<u128> = HashSet::new();
    for u in 0..size {
        for v in 0..size {
            let mut set = 0u128;
            for a in 0..q {
                for b in 0..q {
                    let w: Vec<u32> =
                        (0..dim as usize).map(|m| (a * vectors[u][m] + b * vectors[v][m]) % q).collect();
                    set |= 1 << encode(&w);
                }
            }
            if set.count_ones() == q * q {
                planes.insert(set);
            }
        }
    }
    let planes: Vec<u128> = planes.into_iter().collect();
    let members = |set: u128| (0..size).filter(move |&i| set >> i & 1 == 1);

    // ψ(e_i, e_{5-i}) = 1 for i ≤ 2, -1 otherwise
    let psi = |v: &[u32], w: &[u32]| -> u32 {
        let total = v[0] * w[3] + v[1] * w[2] + (q - 1) * v[2] * w[1] + (q - 1) * v[3] * w[0];
        total % q
    };
    let isotropic = |set: u128| members(set).all(|i| members(set).all(|j| psi(&vectors[i], &vectors[j]) == 0));
    // the chain map V_{-j} → V_{-j+1} kills e_{5-j}
    let kill = |set: u128, coord: usize| -> u128 {
        members(set).fold(0u128, |acc, i| {
            let mut w = vectors[i].clone();
            w[coord] = 0;
            acc | 1 << encode(&w)
        })
    };

    let mut count = 0;
    for &f2 in planes.iter().filter(|&&f| isotropic(f)) {
        let image2 = kill(f2, 2);
        for &f1 in planes.iter().filter(|&&f| image2 & !f == 0) {
            let image1 = kill(f1, 3);
            count += planes.iter().filter(|&&f0| image1 & !f0 == 0 && isotropic(f0)).count() as u64;
        }
    }
    count
}

/// `|Sp_2g(Z/N)|` by building symplectic matrices column by column: the
/// columns `c_0, …, c_{2g-1}` must satisfy `ω(c_a, c_b) = J_ab`.
pub fn brute_force_sp_order(g: usize, level: u64) -> u64 {
    let dim = 2 * g;
    let form = |a: usize, b: usize| -> i64 {
        if a + b == dim - 1 {
            if a < b {
                1
            } else {
                -1
            }
        } else {
            0
        }
    };
    let omega = |u: &[u64], v: &[u64]| -> u64 {
        let mut total = 0i64;
        for a in 0..dim {
            for b in 0..dim {
                total += form(a, b) * (u[a] * v[b]) as i64;
            }
        }
        total.rem_euclid(level as i64) as u64
    };
    let all: Vec<Vec<u64>> = (0..level.pow(dim as u32))
        .map(|mut code| {
            (0..dim)
                .map(|_| {
                    let c = code % level;
                    code /= level;
                    c
                })
                .collect()
        })
        .collect();
    fn extend(
        columns: &mut Vec<usize>,
        all: &[Vec<u64>],
        dim: usize,
        check: &dyn Fn(&[u64], &[u64], usize, usize) -> bool,
    ) -> u64 {
        let a = columns.len();
        if a == dim {
            return 1;
        }
        let mut total = 0;
        for (idx, v) in all.iter().enumerate() {
            if columns.iter().enumerate().all(|(b, &cb)| check(v, &all[cb], a, b)) {
                columns.push(idx);
                total += extend(columns, all, dim, check);
                columns.pop();
            }
        }
        total
    }
    let check = |v: &[u64], w: &[u64], a: usize, b: usize| -> bool {
        omega(v, w) == form(a, b).rem_euclid(level as i64) as u64
    };
    extend(&mut Vec::new(), &all, dim, &check)
}

/// A random element of the Iwahori subgroup of `GSp_2n(F_q[[t]])`, reduced
/// mod `t²` and acting on `F_q^{4n}` (coordinates `e_m`, then `t·e_m`). It is
/// a product of torus elements, upper root elements and `t` times lower
/// root elements; the pairing is preserved up to a unit.
pub fn random_iwahori_element(ctx: &StandardChainContext, rng: &mut impl Rng, factors: usize) -> Matrix {
    let f = ctx.field;
    let dim = ctx.dim();
    let q = f.order();
    let psi = &ctx.psi0_bar;
    let mut g = Matrix::identity(2 * dim);
    for _ in 0..factors {
        let factor = match rng.gen_range(0..3) {
            0 => {
                let c = rng.gen_range(1..q);
                let mut d = vec![0; dim];
                for i in 0..ctx.n {
                    d[i] = rng.gen_range(1..q);
                    d[dim - 1 - i] = f.mul(c, f.inv(d[i]));
                }
                let mut m = Matrix::zeros(2 * dim, 2 * dim);
                for i in 0..dim {
                    m.set(i, i, d[i]);
                    m.set(dim + i, dim + i, d[i]);
                }
                m
            }
            kind => {
                let (a, b) = loop {
                    let a = rng.gen_range(0..dim);
                    let b = rng.gen_range(0..dim);
                    if a != b && ((kind == 1) == (a < b)) {
                        break (a, b);
                    }
                };
                let x = root_direction(&f, psi, a, b);
                let c = rng.gen_range(0..q);
                let mut m = Matrix::identity(2 * dim);
                for r in 0..dim {
                    for s in 0..dim {
                        let v = f.mul(c, x.get(r, s));
                        if v == 0 {
                            continue;
                        }
                        if kind == 1 {
                            m.set(r, s, f.add(m.get(r, s), v));
                            m.set(dim + r, dim + s, f.add(m.get(dim + r, dim + s), v));
                        } else {
                            m.set(dim + r, s, v);
                        }
                    }
                }
                m
            }
        };
        g = factor.mul(&f, &g);
    }
    g
}

/// `E_ab ± E_{θb,θa}` (or `E_ab` alone when the two coincide), with the sign
/// making it an infinitesimal symmetry of `ψ`.
fn root_direction(f: &PrimeField, psi: &Matrix, a: usize, b: usize) -> Matrix {
    let dim = psi.rows();
    let (ta, tb) = (dim - 1 - a, dim - 1 - b);
    let candidates: Vec<Matrix> = [None, Some(1), Some(f.order() - 1)]
        .into_iter()
        .map(|sign| {
            let mut x = Matrix::zeros(dim, dim);
            x.set(a, b, 1);
            if let Some(s) = sign {
                x.set(tb, ta, f.add(x.get(tb, ta), s));
            }
            x
        })
        .collect();
    candidates
        .into_iter()
        .find(|x| {
            let lhs = transpose(x).mul(f, psi);
            let rhs = psi.mul(f, x);
            (0..dim).all(|r| (0..dim).all(|s| f.add(lhs.get(r, s), rhs.get(r, s)) == 0))
        })
        .expect("every root has a symplectic direction")
}

pub fn transpose(m: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(m.cols(), m.rows());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            out.set(c, r, m.get(r, c));
        }
    }
    out
}

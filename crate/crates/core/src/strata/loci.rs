use super::mass::is_prime;
use crate::{Error, Result};

/// `F_{p^e} = F_p[x]/(f)`; elements are encoded as integers
/// `c_0 + c_1 p + … + c_{e-1} p^{e-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallField {
    p: u32,
    e: u32,
    /// Monic modulus, lowest coefficient first, length `e + 1`.
    modulus: Vec<u32>,
    mul_table: Vec<u32>,
}

impl SmallField {
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(u64::from(p)) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        if e == 0 || (p as u64).pow(e) > 1 << 12 {
            return Err(Error::InvalidParameter(format!("F_{p}^{e} is out of range")));
        }
        let modulus = match (p, e) {
            (2, 2) => vec![1, 1, 1],
            (3, 2) => vec![1, 0, 1],
            (5, 2) => vec![2, 0, 1],
            (7, 2) => vec![1, 0, 1],
            _ => find_irreducible(p, e),
        };
        let mut field = SmallField { p, e, modulus, mul_table: Vec::new() };
        let size = field.size() as usize;
        let mut table = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                table[a * size + b] = field.encode(&field.poly_mul(&field.decode(a as u32), &field.decode(b as u32)));
            }
        }
        field.mul_table = table;
        Ok(field)
    }

    pub fn size(&self) -> u32 {
        self.p.pow(self.e)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn decode(&self, mut a: u32) -> Vec<u32> {
        (0..self.e)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c
            })
            .collect()
    }

    fn encode(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn poly_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p;
        let e = self.e as usize;
        let mut prod = vec![0u32; 2 * e];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for d in (e..2 * e).rev() {
            let c = prod[d];
            if c != 0 {
                for (k, &m) in self.modulus.iter().enumerate() {
                    let idx = d - e + k;
                    prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                }
            }
        }
        prod.truncate(e);
        prod
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let sum: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let neg: Vec<u32> = self.decode(a).iter().map(|c| (self.p - c) % self.p).collect();
        self.encode(&neg)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_table[(a * self.size() + b) as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    /// Representatives `[a : b]` of `P^1`, normalised so the last nonzero
    /// coordinate is 1.
    pub fn projective_line(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = (0..self.size()).map(|a| (a, 1)).collect();
        out.push((1, 0));
        out
    }
}

fn find_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = p.pow(e);
    (0..count)
        .map(|code| {
            let mut coeffs: Vec<u32> = (0..e).scan(code, |c, _| {
                let v = *c % p;
                *c /= p;
                Some(v)
            })
            .collect();
            coeffs.push(1);
            coeffs
        })
        .find(|f| is_irreducible(p, f))
        .expect("irreducible polynomials exist in every degree")
}

fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let degree = f.len() - 1;
    if degree == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    for d in 1..=degree / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g: Vec<u32> = (0..d)
                .scan(code, |c, _| {
                    let v = *c % p;
                    *c /= p;
                    Some(v)
                })
                .collect();
            g.push(1);
            if poly_rem(p, f, &g).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().expect("nonempty");
        let shift = r.len() - 1 - dg;
        for (k, &gk) in g.iter().enumerate() {
            r[shift + k] = (r[shift + k] + p * p - c * gk % p) % p;
        }
        r.pop();
    }
    r
}

/// `#{[a : b] ∈ P^1(F_{p²}) : a^{p+1} + b^{p+1} = 0}`.
pub fn fermat_point_count(p: u32) -> Result<u64> {
    let field = SmallField::new(p, 2)?;
    let k = u64::from(p) + 1;
    Ok(field
        .projective_line()
        .into_iter()
        .filter(|&(a, b)| field.add(field.pow(a, k), field.pow(b, k)) == 0)
        .count() as u64)
}

/// `#{([a : b], [c : d]) ∈ (P^1 × P^1)(F_{p^e}) : a^p d - b^p c = 0}`.
pub fn frobenius_graph_count(p: u32, e: u32) -> Result<u64> {
    let field = SmallField::new(p, e)?;
    let line = field.projective_line();
    let k = u64::from(p);
    let mut count = 0;
    for &(a, b) in &line {
        let (ap, bp) = (field.pow(a, k), field.pow(b, k));
        for &(c, d) in &line {
            if field.add(field.mul(ap, d), field.neg(field.mul(bp, c))) == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

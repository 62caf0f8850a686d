//! Brute-force crimp enumeration over a prime field.
//!
//! Modules are spanned over F_p[[t]] by 1, x^m f (or t^m f) and the whole of
//! x^n times the normalization, all taken modulo t^T times the normalization
//! with T large enough that this tail lies inside the module.

use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Amb {
    Etale,
    Total,
    Simple,
}

/// Flattened element: etale uses three t-blocks of length T; total one
/// x-block of length 3T; simple an x-block of length 2T then a t-block of length T.
#[derive(Clone, Copy)]
pub struct Space {
    pub p: u64,
    pub amb: Amb,
    pub t: usize,
}

impl Space {
    pub fn dim(&self) -> usize {
        3 * self.t
    }

    pub fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.dim()];
        match self.amb {
            Amb::Etale => {
                v[0] = 1;
                v[self.t] = 1;
                v[2 * self.t] = 1;
            }
            Amb::Total => v[0] = 1,
            Amb::Simple => {
                v[0] = 1;
                v[2 * self.t] = 1;
            }
        }
        v
    }

    fn mul_block(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let len = a.len();
        let mut out = vec![0u64; len];
        for i in 0..len {
            if a[i] == 0 {
                continue;
            }
            for j in 0..len - i {
                out[i + j] = (out[i + j] + a[i] * b[j]) % self.p;
            }
        }
        out
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let t = self.t;
        match self.amb {
            Amb::Etale => (0..3).flat_map(|s| self.mul_block(&a[s * t..(s + 1) * t], &b[s * t..(s + 1) * t])).collect(),
            Amb::Total => self.mul_block(a, b),
            Amb::Simple => {
                let mut v = self.mul_block(&a[..2 * t], &b[..2 * t]);
                v.extend(self.mul_block(&a[2 * t..], &b[2 * t..]));
                v
            }
        }
    }

    /// Multiplication by t.
    pub fn tmul(&self, a: &[u64]) -> Vec<u64> {
        let t = self.t;
        let shift = |blk: &[u64], k: usize| -> Vec<u64> {
            let mut o = vec![0; blk.len()];
            if k < blk.len() {
                o[k..].copy_from_slice(&blk[..blk.len() - k]);
            }
            o
        };
        match self.amb {
            Amb::Etale => (0..3).flat_map(|s| shift(&a[s * t..(s + 1) * t], 1)).collect(),
            Amb::Total => shift(a, 3),
            Amb::Simple => {
                let mut v = shift(&a[..2 * t], 2);
                v.extend(shift(&a[2 * t..], 1));
                v
            }
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        let mut r = 1u64;
        let mut b = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    /// Reduced row echelon form of the F_p[[t]]-span of the generators.
    pub fn span(&self, gens: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut rows = Vec::new();
        for g in gens {
            let mut cur = g.clone();
            for _ in 0..self.t {
                rows.push(cur.clone());
                cur = self.tmul(&cur);
            }
        }
        self.rref(rows)
    }

    pub fn rref(&self, mut rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
        let p = self.p;
        let cols = self.dim();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
            rows.swap(r, piv);
            let iv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = *x * iv % p;
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for k in 0..cols {
                        rows[i][k] = (rows[i][k] + p * p - f * rows[r][k]) % p;
                    }
                }
            }
            r += 1;
        }
        rows.truncate(r);
        rows
    }

    pub fn contains(&self, basis: &[Vec<u64>], v: &[u64]) -> bool {
        let mut rows = basis.to_vec();
        let before = rows.len();
        rows.push(v.to_vec());
        self.rref(rows).len() == before
    }

    /// The module generated by 1, `g` and the tail, with its closure status.
    pub fn module(&self, g: &[u64], tail: &[Vec<u64>]) -> (Vec<Vec<u64>>, bool) {
        let mut gens = vec![self.one(), g.to_vec()];
        gens.extend(tail.iter().cloned());
        let basis = self.span(&gens);
        let mut closed = true;
        'outer: for i in 1..gens.len() {
            for j in i..gens.len() {
                if !self.contains(&basis, &self.mul(&gens[i], &gens[j])) {
                    closed = false;
                    break 'outer;
                }
            }
        }
        (basis, closed)
    }
}

/// Setup for the stratum with exponents `(m, n)`: the space, the tail
/// generators of `x^n` times the normalization, and a lifting map placing
/// `x^m f` (resp. `t^m f`) into the space.
pub struct Setup {
    pub sp: Space,
    pub tail: Vec<Vec<u64>>,
    pub m: usize,
    pub n: usize,
}

impl Setup {
    pub fn new(p: u64, amb: Amb, m: usize, n: usize) -> Self {
        let t = match amb {
            Amb::Etale => n + 2,
            Amb::Total => n / 3 + 2,
            Amb::Simple => n / 2 + 2,
        };
        let sp = Space { p, amb, t };
        let mut tail = Vec::new();
        match amb {
            Amb::Etale => {
                for s in 0..3 {
                    let mut v = vec![0; sp.dim()];
                    v[s * t + n] = 1;
                    tail.push(v);
                }
            }
            Amb::Total => {
                for k in 0..3 {
                    let mut v = vec![0; sp.dim()];
                    if n + k < 3 * t {
                        v[n + k] = 1;
                    }
                    tail.push(v);
                }
            }
            Amb::Simple => {
                for k in 0..2 {
                    let mut v = vec![0; sp.dim()];
                    v[n + k] = 1;
                    tail.push(v);
                }
            }
        }
        Setup { sp, tail, m, n }
    }

    /// Etale: `f = (0, u, v)` given as two t-jets; ramified: `f` as x-jet.
    pub fn lift(&self, f: &[Vec<u64>]) -> Vec<u64> {
        let t = self.sp.t;
        let mut v = vec![0; self.sp.dim()];
        match self.sp.amb {
            Amb::Etale => {
                for (s, jet) in f.iter().enumerate() {
                    for (i, c) in jet.iter().enumerate() {
                        if self.m + i < t {
                            v[(s + 1) * t + self.m + i] = *c;
                        }
                    }
                }
            }
            Amb::Total | Amb::Simple => {
                let e = if self.sp.amb == Amb::Total { 3 } else { 2 };
                for (i, c) in f[0].iter().enumerate() {
                    if self.m + i < e * t {
                        v[self.m + i] = *c;
                    }
                }
            }
        }
        v
    }

    /// Number of distinct closed modules among candidates, and the number of
    /// candidates tried.
    pub fn count_closed<I: Iterator<Item = Vec<Vec<u64>>>>(&self, cands: I) -> (usize, usize) {
        let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::new();
        let mut tried = 0;
        for f in cands {
            tried += 1;
            let (basis, closed) = self.sp.module(&self.lift(&f), &self.tail);
            if closed {
                seen.insert(basis);
            }
        }
        (seen.len(), tried)
    }
}

/// All vectors of length `len` over F_p.
pub fn all_vectors(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0; len];
        for x in v.iter_mut() {
            *x = k % p;
            k /= p;
        }
        v
    })
}

/// Representatives of P^1 over F_p[t]/t^l, as pairs `(u, v)`.
pub fn projective_jets(p: u64, l: usize) -> Vec<Vec<Vec<u64>>> {
    if l == 0 {
        return vec![vec![vec![1], vec![0]]];
    }
    let mut out = Vec::new();
    for h in all_vectors(p, l) {
        let mut one = vec![0; l];
        one[0] = 1;
        out.push(vec![one, h]);
    }
    for k in all_vectors(p, l - 1) {
        let mut tk = vec![0; l];
        tk[1..].copy_from_slice(&k);
        let mut one = vec![0; l];
        one[0] = 1;
        out.push(vec![tk, one]);
    }
    out
}

/// `1 + sum a_i x^i` over the listed exponents, every coefficient choice.
pub fn unit_series(p: u64, exps: &[usize], len: usize) -> Vec<Vec<Vec<u64>>> {
    all_vectors(p, exps.len())
        .map(|a| {
            let mut f = vec![0; len.max(1)];
            f[0] = 1;
            for (e, c) in exps.iter().zip(a) {
                f[*e] = c;
            }
            vec![f]
        })
        .collect()
}

pub fn random_unit_series(rng: &mut ChaCha8Rng, p: u64, len: usize) -> Vec<Vec<u64>> {
    let mut f: Vec<u64> = (0..len.max(1)).map(|_| rng.gen_range(0..p)).collect();
    f[0] = 1;
    vec![f]
}

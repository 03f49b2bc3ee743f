//! Normalized bar complex: `n`-cochains are functions on `n`-tuples of
//! non-identity elements with values in `M`; `n`-chains are `M`-multiples of
//! such tuples.
//!
//! A cochain is a vector of length `(|G|-1)^n · rank`, the value at tuple
//! `(a_1..a_n)` occupying the block starting at `index(a) · rank`, where
//! `index` reads the tuple as a base-`(|G|-1)` numeral with `a_1` most
//! significant.

use crate::error::{check_cells, Result};
use crate::gmodule::GModule;
use crate::group::FiniteGroup;
use crate::linalg::SparseMatrix;

pub struct BarComplex<'a> {
    module: &'a GModule,
    nontrivial: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl<'a> BarComplex<'a> {
    pub fn new(module: &'a GModule) -> Self {
        let g = module.group();
        let nontrivial: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
        let mut position = vec![None; g.order()];
        for (i, &x) in nontrivial.iter().enumerate() {
            position[x] = Some(i);
        }
        BarComplex { module, nontrivial, position }
    }

    pub fn module(&self) -> &GModule {
        self.module
    }

    pub fn group(&self) -> &FiniteGroup {
        self.module.group()
    }

    fn q(&self) -> usize {
        self.nontrivial.len()
    }

    pub fn tuple_count(&self, n: usize) -> usize {
        self.q().pow(n as u32)
    }

    /// Number of cells `(|G|-1)^n · rank` (saturating).
    pub fn cells(&self, n: usize) -> u128 {
        (self.q() as u128).saturating_pow(n as u32).saturating_mul(self.module.rank() as u128)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.tuple_count(n) * self.module.rank()
    }

    /// Guard against oversized cochain spaces.
    pub fn check(&self, n: usize) -> Result<()> {
        check_cells(format!("bar cochains of degree {n} for {}", self.group().name()), self.cells(n))
    }

    pub fn decode(&self, n: usize, mut idx: usize) -> Vec<usize> {
        let q = self.q();
        let mut t = vec![0; n];
        for k in (0..n).rev() {
            t[k] = self.nontrivial[idx % q];
            idx /= q;
        }
        t
    }

    /// Index of a tuple of group elements, `None` if any entry is the identity.
    pub fn encode(&self, tuple: &[usize]) -> Option<usize> {
        let q = self.q();
        let mut idx = 0;
        for &x in tuple {
            idx = idx * q + self.position[x]?;
        }
        Some(idx)
    }

    /// Sparse matrix of `δ_n : C^n → C^{n+1}`.
    pub fn coboundary(&self, n: usize) -> Result<SparseMatrix> {
        self.check(n + 1)?;
        let g = self.group();
        let r = self.module.rank();
        let q = self.q();
        let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
        let mut cols = Vec::with_capacity(self.dim(n));
        for t in 0..self.tuple_count(n) {
            let h = self.decode(n, t);
            let base_last = t * q; // (h, x) has index t·q + pos(x)
            for c in 0..r {
                let mut col: Vec<(usize, i64)> = Vec::new();
                // g_1 · f(g_2..g_{n+1})
                for (xi, &x) in self.nontrivial.iter().enumerate() {
                    let s = xi * self.tuple_count(n) + t;
                    let act = self.module.action(x);
                    for a in 0..r {
                        let v = act[(a, c)];
                        if v != 0 {
                            col.push((s * r + a, v));
                        }
                    }
                }
                // (-1)^i f(.., g_i g_{i+1}, ..): split h_i = a·b with a, b ≠ 1
                for i in 0..n {
                    for &a in &self.nontrivial {
                        let b = g.mul(g.inv(a), h[i]);
                        if b == g.identity() {
                            continue;
                        }
                        let mut s = Vec::with_capacity(n + 1);
                        s.extend_from_slice(&h[..i]);
                        s.push(a);
                        s.push(b);
                        s.extend_from_slice(&h[i + 1..]);
                        let s = self.encode(&s).unwrap();
                        col.push((s * r + c, sign(i + 1)));
                    }
                }
                // (-1)^{n+1} f(g_1..g_n)
                for xi in 0..q {
                    col.push(((base_last + xi) * r + c, sign(n + 1)));
                }
                cols.push(col);
            }
        }
        Ok(SparseMatrix::new(self.dim(n + 1), cols))
    }

    /// Sparse matrix of the bar boundary `∂_n : C_n → C_{n-1}` (`n ≥ 1`),
    /// `∂(m[g_1|..|g_n]) = g_1⁻¹m[g_2|..] + Σ(-1)^i m[..|g_i g_{i+1}|..] + (-1)^n m[g_1|..|g_{n-1}]`.
    pub fn boundary(&self, n: usize) -> Result<SparseMatrix> {
        assert!(n >= 1);
        self.check(n)?;
        let g = self.group();
        let r = self.module.rank();
        let sign = |k: usize| if k.is_multiple_of(2) { 1 } else { -1 };
        let mut cols = Vec::with_capacity(self.dim(n));
        for t in 0..self.tuple_count(n) {
            let h = self.decode(n, t);
            let front = self.encode(&h[1..]).unwrap();
            let back = self.encode(&h[..n - 1]).unwrap();
            let act = self.module.action(g.inv(h[0]));
            for c in 0..r {
                let mut col: Vec<(usize, i64)> = Vec::new();
                for a in 0..r {
                    let v = act[(a, c)];
                    if v != 0 {
                        col.push((front * r + a, v));
                    }
                }
                for i in 0..n - 1 {
                    let prod = g.mul(h[i], h[i + 1]);
                    if prod == g.identity() {
                        continue;
                    }
                    let mut s = Vec::with_capacity(n - 1);
                    s.extend_from_slice(&h[..i]);
                    s.push(prod);
                    s.extend_from_slice(&h[i + 2..]);
                    col.push((self.encode(&s).unwrap() * r + c, sign(i + 1)));
                }
                col.push((back * r + c, sign(n)));
                cols.push(col);
            }
        }
        Ok(SparseMatrix::new(self.dim(n - 1), cols))
    }

    /// Cochain from a function on tuples.
    pub fn cochain_from_fn(&self, n: usize, mut f: impl FnMut(&[usize]) -> Vec<i64>) -> Vec<i64> {
        let r = self.module.rank();
        let mut out = vec![0; self.dim(n)];
        for t in 0..self.tuple_count(n) {
            let v = f(&self.decode(n, t));
            out[t * r..(t + 1) * r].copy_from_slice(&v);
        }
        out
    }

    /// Value of a cochain at a tuple (zero if the tuple contains the identity).
    pub fn value<'c>(&self, cochain: &'c [i64], tuple: &[usize]) -> Option<&'c [i64]> {
        let r = self.module.rank();
        self.encode(tuple).map(|t| &cochain[t * r..(t + 1) * r])
    }

    pub fn reduce(&self, v: &mut [i64]) {
        if let Some(p) = self.module.modulus() {
            for x in v.iter_mut() {
                *x = x.rem_euclid(p as i64);
            }
        }
    }
}

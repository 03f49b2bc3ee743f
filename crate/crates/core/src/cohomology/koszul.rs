//! Cohomology of the Klein four group with `F_2` coefficients from its
//! minimal resolution `P_n = ⊕_{j+k=n} F_2G·e_{j,k}`. An `n`-cochain is the
//! tuple of values `φ(e_{j,n-j})`, slot `j` at offset `j·rank`, and
//! `(δφ)(e_{j,k}) = (g+1)φ(e_{j-1,k}) + (h+1)φ(e_{j,k-1})`.
//!
//! Products with `x^a y^b ∈ H^*(G, F_2)` act by shifting slots:
//! `(x^a y^b · φ)(e_{j,k}) = φ(e_{j-a,k-b})`.

use crate::error::{Error, Result};
use crate::gmodule::{GModule, Ring};
use crate::group::FiniteGroup;
use crate::linalg::fp::{Echelon, FpVector};
use crate::linalg::{Matrix, SparseMatrix};

const G: usize = 1;
const H: usize = 2;

pub struct KleinKoszul<'a> {
    module: &'a GModule,
    g_plus: Matrix,
    h_plus: Matrix,
}

impl<'a> KleinKoszul<'a> {
    pub fn new(module: &'a GModule) -> Result<Self> {
        if *module.group() != FiniteGroup::klein4() {
            return Err(Error::UnsupportedFamily(format!(
                "minimal resolution is for the Klein four group, got {}",
                module.group().name()
            )));
        }
        if module.ring() != Ring::F2 {
            return Err(Error::RingMismatch("Klein four computations need F2 coefficients".into()));
        }
        let id = Matrix::identity(module.rank());
        Ok(KleinKoszul {
            module,
            g_plus: module.action(G).add(&id).reduce(Some(2)),
            h_plus: module.action(H).add(&id).reduce(Some(2)),
        })
    }

    pub fn module(&self) -> &GModule {
        self.module
    }

    pub fn dim(&self, n: usize) -> usize {
        (n + 1) * self.module.rank()
    }

    /// `δ_n : C^n → C^{n+1}`.
    pub fn coboundary(&self, n: usize) -> SparseMatrix {
        let r = self.module.rank();
        let mut cols = Vec::with_capacity(self.dim(n));
        for j in 0..=n {
            for c in 0..r {
                let mut col = Vec::new();
                // feeds e_{j+1, n-j} through (g+1) and e_{j, n+1-j} through (h+1)
                for a in 0..r {
                    if self.g_plus[(a, c)] != 0 {
                        col.push(((j + 1) * r + a, 1));
                    }
                    if self.h_plus[(a, c)] != 0 {
                        col.push((j * r + a, 1));
                    }
                }
                cols.push(col);
            }
        }
        SparseMatrix::new(self.dim(n + 1), cols).reduce(2)
    }

    /// Echelon basis of the coboundaries `B^n = im δ_{n-1}`.
    pub fn boundaries(&self, n: usize) -> Echelon {
        if n == 0 {
            Echelon::new(2, self.dim(0))
        } else {
            self.coboundary(n - 1).column_echelon(2)
        }
    }

    pub fn cohomology_dim(&self, n: usize) -> usize {
        let r_next = self.coboundary(n).rank_mod(2);
        let r_prev = if n == 0 { 0 } else { self.coboundary(n - 1).rank_mod(2) };
        self.dim(n) - r_next - r_prev
    }

    /// Cochain of `x^a y^b · m_0` for `m_0 ∈ M^G`: `m_0` in slot `a` of degree `a+b`.
    pub fn monomial_times(&self, a: usize, b: usize, m0: &[i64]) -> Vec<i64> {
        let r = self.module.rank();
        let mut v = vec![0; self.dim(a + b)];
        v[a * r..(a + 1) * r].copy_from_slice(m0);
        v
    }

    /// Multiplication by `x^a y^b` on an `n`-cochain.
    pub fn shift(&self, phi: &[i64], n: usize, a: usize, b: usize) -> Vec<i64> {
        let r = self.module.rank();
        let mut out = vec![0; self.dim(n + a + b)];
        for j in 0..=n {
            out[(j + a) * r..(j + a + 1) * r].copy_from_slice(&phi[j * r..(j + 1) * r]);
        }
        out
    }

    /// Basis of `M^G` as integer vectors.
    pub fn fixed_basis(&self) -> Result<Vec<Vec<i64>>> {
        Ok(self.module.fixed_points()?.columns())
    }

    /// Dimension of the span of the given cocycles modulo coboundaries.
    pub fn span_dim(&self, n: usize, cocycles: &[Vec<i64>]) -> usize {
        let mut e = self.boundaries(n);
        let base = e.rank();
        for z in cocycles {
            e.insert(FpVector::from_i64(2, z));
        }
        e.rank() - base
    }
}

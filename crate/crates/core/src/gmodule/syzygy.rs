//! Syzygies and cosyzygies.

use super::{GModule, Ring};
use crate::error::{Error, Result};
use crate::linalg::{fp, lattice, Matrix};

impl GModule {
    /// Generators of `M` as a module: over `F_p` for a `p`-group, standard
    /// basis vectors completing a basis of `M / rad M` (a minimal set); over
    /// `Z`, standard basis vectors chosen greedily.
    pub fn module_generators(&self) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        match self.ring() {
            Ring::PrimeField(p) => {
                if !self.group().is_p_group(p as usize) {
                    return Err(Error::InvalidArgument(format!(
                        "minimal covers over F{p} need a {p}-group, got order {}",
                        self.group().order()
                    )));
                }
                let mut ech = fp::Echelon::new(p, n);
                for c in self.augmentation_submodule().columns() {
                    ech.insert(fp::FpVector::from_i64(p, &c));
                }
                Ok((0..n)
                    .filter(|&i| ech.insert(fp::FpVector::unit(p, n, i)))
                    .map(|i| unit(n, i))
                    .collect())
            }
            Ring::Integers => {
                let mut gens: Vec<Vec<i64>> = Vec::new();
                let mut span = Matrix::zeros(n, 0);
                for i in 0..n {
                    let e = unit(n, i);
                    if span.cols() > 0 && lattice::solve(&span, &Matrix::from_columns(n, std::slice::from_ref(&e)))?.is_some() {
                        continue;
                    }
                    let mut cols = span.columns();
                    for g in self.group().elements() {
                        cols.push(self.action(g).mul_vec(&e));
                    }
                    span = lattice::span_basis(&Matrix::from_columns(n, &cols))?;
                    gens.push(e);
                }
                Ok(gens)
            }
        }
    }

    /// Surjection `(RG)^k → M` sending `(i, g)` to `g·m_i`.
    pub fn cover_map(&self, gens: &[Vec<i64>]) -> Matrix {
        let cols: Vec<Vec<i64>> = gens
            .iter()
            .flat_map(|m| self.group().elements().map(move |g| self.action(g).mul_vec(m)))
            .collect();
        Matrix::from_columns(self.rank(), &cols).reduce(self.modulus())
    }

    /// `ΩM`: kernel of the cover `(RG)^k → M` with the induced action.
    pub fn syzygy(&self) -> Result<GModule> {
        let gens = self.module_generators()?;
        let free = GModule::free(self.group_arc().clone(), self.ring(), gens.len());
        if self.rank() == 0 {
            return Ok(GModule::zero(self.group_arc().clone(), self.ring()));
        }
        let phi = self.cover_map(&gens);
        let k = match self.ring() {
            Ring::Integers => lattice::kernel(&phi)?,
            Ring::PrimeField(p) => fp::nullspace_mod(&phi, p),
        };
        free.submodule(&k)
    }

    /// `Ω^{-1}M` over `F_p` for a `p`-group, as the dual of `Ω` of the dual.
    pub fn cosyzygy_fp(&self) -> Result<GModule> {
        if self.ring() == Ring::Integers {
            return Err(Error::RingMismatch("cosyzygy is defined over a prime field".into()));
        }
        Ok(self.dual().syzygy()?.dual())
    }

    /// `Ω^n M` for `n ≥ 0`, or `Ω^{-|n|}` over `F_p`.
    pub fn syzygy_power(&self, n: i32) -> Result<GModule> {
        let mut m = self.clone();
        for _ in 0..n.unsigned_abs() {
            m = if n >= 0 { m.syzygy()? } else { m.cosyzygy_fp()? };
        }
        Ok(m)
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[i] = 1;
    e
}

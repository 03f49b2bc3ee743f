//! Group cohomology, homology and Tate cohomology with coefficients.

mod bar;
mod cup;
mod cyclic;
pub mod koszul;
mod transfer;

use crate::abelian::{FiniteAbelianGroup, GroupStructure};
use crate::error::{check_dense, Error, Result};
use crate::gmodule::{GModule, Ring};
use crate::linalg::fp::{Echelon, FpVector};
use crate::linalg::smith::{diagonalize, Want};
use crate::linalg::{lattice, Matrix};

pub use bar::BarComplex;
pub use cup::{character_chern, cup_with_trivial, klein_degree_one, klein_monomial};
pub use cyclic::cyclic_cohomology;
pub use transfer::{
    check_cor_res, check_cor_res_all, check_double_coset, conjugate_cochain, corestrict_cochain, restrict_cochain,
};

#[derive(Clone, Debug)]
enum Repr {
    Fixed { basis: Matrix },
    Integral { u: Matrix, u_inv: Matrix, diagonal: Vec<i64>, rank: usize, torsion: Vec<usize> },
    Field { p: u32, reducer: Echelon, basis: Vec<Vec<i64>> },
}

/// `H^n(G, M)` with explicit cocycle generators on the normalized bar complex.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    structure: GroupStructure,
    repr: Repr,
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn structure(&self) -> &GroupStructure {
        &self.structure
    }

    /// Cocycles generating the group; for integral coefficients in positive
    /// degree the `k`-th generator has order `torsion()[k]`.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        match &self.repr {
            Repr::Fixed { basis } => basis.columns(),
            Repr::Integral { u_inv, torsion, .. } => torsion.iter().map(|&i| u_inv.column(i)).collect(),
            Repr::Field { basis, .. } => basis.clone(),
        }
    }

    /// Orders of the generators (0 for infinite order).
    pub fn generator_orders(&self) -> Vec<u64> {
        match &self.repr {
            Repr::Fixed { basis } => vec![0; basis.cols()],
            Repr::Integral { diagonal, torsion, .. } => torsion.iter().map(|&i| diagonal[i] as u64).collect(),
            Repr::Field { p, basis, .. } => vec![*p as u64; basis.len()],
        }
    }

    /// Coordinates of a cocycle's class with respect to `generators()`,
    /// reduced modulo the generator orders.
    pub fn coordinates(&self, cocycle: &[i64]) -> Result<Vec<i64>> {
        match &self.repr {
            Repr::Fixed { basis } => {
                let y = Matrix::from_columns(basis.rows(), &[cocycle.to_vec()]);
                lattice::solve(basis, &y)?
                    .map(|x| x.column(0))
                    .ok_or_else(|| Error::Linalg("not a fixed vector".into()))
            }
            Repr::Integral { u, diagonal, torsion, .. } => {
                let w = u.mul_vec(cocycle);
                Ok(torsion.iter().map(|&i| w[i].rem_euclid(diagonal[i])).collect())
            }
            Repr::Field { p, reducer, .. } => {
                let v = FpVector::from_i64(*p, cocycle);
                reducer
                    .express(&v)
                    .map(|t| t.to_i64())
                    .ok_or_else(|| Error::Linalg("vector is not a cocycle".into()))
            }
        }
    }

    /// Whether a cocycle represents the zero class.
    pub fn is_zero_class(&self, cocycle: &[i64]) -> Result<bool> {
        match &self.repr {
            Repr::Integral { u, diagonal, rank, .. } => {
                let w = u.mul_vec(cocycle);
                Ok(w.iter().enumerate().all(|(i, &x)| if i < *rank { x % diagonal[i] == 0 } else { x == 0 }))
            }
            _ => Ok(self.coordinates(cocycle)?.iter().all(|&x| x == 0)),
        }
    }
}

/// `H^n(G, M)` via the normalized bar complex.
pub fn bar_cohomology(m: &GModule, n: usize) -> Result<CohomologyGroup> {
    let bar = BarComplex::new(m);
    if n == 0 {
        let basis = m.fixed_points()?;
        let structure = match m.ring() {
            Ring::Integers => GroupStructure::Abelian(FiniteAbelianGroup::free(basis.cols())),
            Ring::PrimeField(_) => GroupStructure::Vector { dim: basis.cols() },
        };
        let repr = match m.ring() {
            Ring::Integers => Repr::Fixed { basis },
            Ring::PrimeField(p) => {
                // degree-zero field classes: cocycles are the fixed vectors themselves
                let mut reducer = Echelon::with_tags(p, m.rank(), basis.cols());
                for (k, c) in basis.columns().into_iter().enumerate() {
                    reducer.insert_tagged(FpVector::from_i64(p, &c), FpVector::unit(p, basis.cols(), k));
                }
                Repr::Field { p, reducer, basis: basis.columns() }
            }
        };
        return Ok(CohomologyGroup { degree: 0, structure, repr });
    }
    bar.check(n + usize::from(m.ring() != Ring::Integers))?;
    let prev = bar.coboundary(n - 1)?;
    match m.ring() {
        Ring::Integers => {
            let (r, c) = (prev.rows() as u128, prev.cols() as u128);
            check_dense(format!("dense integral elimination in degree {n}"), r * c + 2 * r * r)?;
            let d = diagonalize(&prev.to_dense(), Want { u: true, u_inv: true, v: false })?;
            let torsion: Vec<usize> = (0..d.rank).filter(|&i| d.diagonal[i] > 1).collect();
            let structure = GroupStructure::Abelian(FiniteAbelianGroup::new(
                0,
                torsion.iter().map(|&i| d.diagonal[i] as u64).collect(),
            ));
            let repr = Repr::Integral {
                u: d.u.unwrap(),
                u_inv: d.u_inv.unwrap(),
                diagonal: d.diagonal.clone(),
                rank: d.rank,
                torsion,
            };
            Ok(CohomologyGroup { degree: n, structure, repr })
        }
        Ring::PrimeField(p) => {
            let next = bar.coboundary(n)?;
            let cycles = next.kernel_mod(p);
            let mut boundaries = prev.column_echelon(p);
            let basis: Vec<Vec<i64>> = cycles
                .into_iter()
                .filter(|z| boundaries.insert(z.clone()))
                .map(|z| z.to_i64())
                .collect();
            let mut reducer = prev.column_echelon_tagged(p, basis.len());
            for (k, z) in basis.iter().enumerate() {
                reducer.insert_tagged(FpVector::from_i64(p, z), FpVector::unit(p, basis.len(), k));
            }
            let structure = GroupStructure::Vector { dim: basis.len() };
            Ok(CohomologyGroup { degree: n, structure, repr: Repr::Field { p, reducer, basis } })
        }
    }
}

/// Structure of `H^n(G, M)` without class data.
pub fn bar_cohomology_structure(m: &GModule, n: usize) -> Result<GroupStructure> {
    if n == 0 {
        return Ok(bar_cohomology(m, 0)?.structure);
    }
    let bar = BarComplex::new(m);
    match m.ring() {
        Ring::Integers => {
            bar.check(n)?;
            let prev = bar.coboundary(n - 1)?;
            check_dense(format!("dense integral elimination in degree {n}"), prev.rows() as u128 * prev.cols() as u128)?;
            let d = diagonalize(&prev.to_dense(), Want::NONE)?;
            Ok(GroupStructure::Abelian(FiniteAbelianGroup::new(0, d.invariant_factors())))
        }
        Ring::PrimeField(p) => {
            bar.check(n + 1)?;
            let r_prev = bar.coboundary(n - 1)?.rank_mod(p);
            let r_next = bar.coboundary(n)?.rank_mod(p);
            Ok(GroupStructure::Vector { dim: bar.dim(n) - r_prev - r_next })
        }
    }
}

/// `H_n(G, M)` via the bar complex.
pub fn bar_homology(m: &GModule, n: usize) -> Result<GroupStructure> {
    let bar = BarComplex::new(m);
    bar.check(n + 1)?;
    let next = bar.boundary(n + 1)?;
    match m.ring() {
        Ring::Integers => {
            check_dense(format!("dense integral elimination in degree {n}"), next.rows() as u128 * next.cols() as u128)?;
            let d = diagonalize(&next.to_dense(), Want::NONE)?;
            let free = if n == 0 { bar.dim(0) - d.rank } else { 0 };
            Ok(GroupStructure::Abelian(FiniteAbelianGroup::new(free, d.invariant_factors())))
        }
        Ring::PrimeField(p) => {
            let r_next = next.rank_mod(p);
            let r_this = if n == 0 { 0 } else { bar.boundary(n)?.rank_mod(p) };
            Ok(GroupStructure::Vector { dim: bar.dim(n) - r_this - r_next })
        }
    }
}

/// `Ĥ^i(G, M)`.
pub fn tate(m: &GModule, i: i64) -> Result<GroupStructure> {
    if i > 0 {
        return bar_cohomology_structure(m, i as usize);
    }
    if i <= -2 {
        return bar_homology(m, (-1 - i) as usize);
    }
    let to_structure = |a: FiniteAbelianGroup| match m.ring() {
        Ring::Integers => GroupStructure::Abelian(a),
        Ring::PrimeField(_) => GroupStructure::Vector { dim: a.num_generators() },
    };
    if i == 0 {
        return Ok(to_structure(m.trace_quotient()?));
    }
    // Ĥ^{-1} = ker(tr) / I·M
    let tr = m.trace_matrix();
    let im = m.augmentation_submodule();
    match m.ring() {
        Ring::Integers => {
            let ker = lattice::kernel(&tr)?;
            Ok(GroupStructure::Abelian(lattice::quotient(&ker, &im)?))
        }
        Ring::PrimeField(p) => {
            let ker = crate::linalg::fp::nullspace_mod(&tr, p);
            Ok(GroupStructure::Vector { dim: ker.cols() - im.cols() })
        }
    }
}

#[cfg(test)]
mod tests;

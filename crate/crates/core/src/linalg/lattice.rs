//! Sublattices of `Z^n` given by basis columns: kernels, exact solves,
//! spans and quotient structure.

use super::smith::{diagonalize, Want};
use super::Matrix;
use crate::abelian::FiniteAbelianGroup;
use crate::error::Result;

/// Saturated basis (as columns) of `{x ∈ Z^cols : a·x = 0}`.
pub fn kernel(a: &Matrix) -> Result<Matrix> {
    let d = diagonalize(a, Want { v: true, ..Want::NONE })?;
    let v = d.v.unwrap();
    let idx: Vec<usize> = (d.rank..a.cols()).collect();
    Ok(v.select_columns(&idx))
}

/// Integer solution `X` of `b·X = y`, if one exists.
pub fn solve(b: &Matrix, y: &Matrix) -> Result<Option<Matrix>> {
    assert_eq!(b.rows(), y.rows());
    let d = diagonalize(b, Want { u: true, v: true, ..Want::NONE })?;
    let (u, v) = (d.u.unwrap(), d.v.unwrap());
    let uy = u.mul(y);
    let mut z = Matrix::zeros(b.cols(), y.cols());
    for i in 0..b.rows() {
        for j in 0..y.cols() {
            let t = uy[(i, j)];
            if i < d.rank {
                let di = d.diagonal[i];
                if t % di != 0 {
                    return Ok(None);
                }
                z[(i, j)] = t / di;
            } else if t != 0 {
                return Ok(None);
            }
        }
    }
    Ok(Some(v.mul(&z)))
}

/// Basis (as columns) of the lattice spanned by the columns of `gens`.
pub fn span_basis(gens: &Matrix) -> Result<Matrix> {
    let d = diagonalize(gens, Want { u_inv: true, ..Want::NONE })?;
    let ui = d.u_inv.unwrap();
    let mut out = Matrix::zeros(gens.rows(), d.rank);
    for k in 0..d.rank {
        for i in 0..gens.rows() {
            out[(i, k)] = ui[(i, k)] * d.diagonal[k];
        }
    }
    Ok(out)
}

/// Whether the column lattice of `basis` is a direct summand of `Z^n`.
pub fn is_saturated(basis: &Matrix) -> Result<bool> {
    let d = diagonalize(basis, Want::NONE)?;
    Ok(d.rank == basis.cols() && d.diagonal.iter().all(|&x| x == 1))
}

/// Structure of `L / S` where `L` has basis columns `lattice` and `S` is
/// spanned by the columns of `sub` (which must lie in `L`).
pub fn quotient(lattice: &Matrix, sub: &Matrix) -> Result<FiniteAbelianGroup> {
    let r = lattice.cols();
    if sub.cols() == 0 {
        return Ok(FiniteAbelianGroup::free(r));
    }
    let coords = solve(lattice, sub)?.expect("sublattice generators lie in the lattice");
    let d = diagonalize(&coords, Want::NONE)?;
    Ok(FiniteAbelianGroup::new(r - d.rank, d.invariant_factors()))
}

/// Rank of an integer matrix.
pub fn rank(a: &Matrix) -> Result<usize> {
    Ok(diagonalize(a, Want::NONE)?.rank)
}

/// Whether two column lattices coincide.
pub fn same_lattice(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(solve(a, b)?.is_some() && solve(b, a)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_is_saturated() {
        let a = Matrix::from_rows(&[vec![2, 4, 6]]);
        let k = kernel(&a).unwrap();
        assert_eq!(k.cols(), 2);
        assert!(a.mul(&k).is_zero());
        assert!(is_saturated(&k).unwrap());
    }

    #[test]
    fn solve_detects_non_integral() {
        let b = Matrix::from_rows(&[vec![2], vec![0]]);
        assert!(solve(&b, &Matrix::from_rows(&[vec![1], vec![0]])).unwrap().is_none());
        assert_eq!(
            solve(&b, &Matrix::from_rows(&[vec![4], vec![0]])).unwrap().unwrap(),
            Matrix::from_rows(&[vec![2]])
        );
        assert!(solve(&b, &Matrix::from_rows(&[vec![2], vec![1]])).unwrap().is_none());
    }

    #[test]
    fn quotient_of_z2_by_diag() {
        let l = Matrix::identity(2);
        let s = Matrix::from_rows(&[vec![2, 0], vec![0, 6]]);
        let q = quotient(&l, &s).unwrap();
        assert_eq!(q.torsion(), &[2, 6]);
        assert_eq!(q.free_rank(), 0);
        let q = quotient(&l, &Matrix::from_rows(&[vec![3], vec![0]])).unwrap();
        assert_eq!((q.free_rank(), q.torsion().to_vec()), (1, vec![3]));
    }

    #[test]
    fn span_basis_spans() {
        let g = Matrix::from_rows(&[vec![2, 4, 0], vec![0, 2, 6]]);
        let b = span_basis(&g).unwrap();
        assert_eq!(b.cols(), 2);
        assert!(same_lattice(&b, &g).unwrap());
    }
}

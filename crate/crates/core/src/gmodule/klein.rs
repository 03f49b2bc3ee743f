//! Explicit `F_2`-modules for the Klein four group built from its minimal
//! (Koszul) resolution `P_n = ⊕_{j+k=n} F_2G·e_{j,k}` with
//! `d(e_{j,k}) = (g+1)e_{j-1,k} + (h+1)e_{j,k-1}`.

use std::sync::Arc;

use super::{GModule, Ring};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{fp, Matrix};

const G: usize = 1;
const H: usize = 2;

fn klein() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::klein4())
}

/// `dim P_n`; basis vector `x·e_{j,n-j}` sits at index `4j + x`.
pub fn koszul_rank(n: usize) -> usize {
    4 * (n + 1)
}

/// Matrix of `d_n : P_n → P_{n-1}` (`n ≥ 1`).
pub fn koszul_differential(n: usize) -> Matrix {
    assert!(n >= 1);
    let mut d = Matrix::zeros(koszul_rank(n - 1), koszul_rank(n));
    for j in 0..=n {
        let k = n - j;
        for x in 0..4 {
            let col = 4 * j + x;
            if j >= 1 {
                d[(4 * (j - 1) + (x ^ G), col)] += 1;
                d[(4 * (j - 1) + x, col)] += 1;
            }
            if k >= 1 {
                d[(4 * j + (x ^ H), col)] += 1;
                d[(4 * j + x, col)] += 1;
            }
        }
    }
    d
}

/// `Ω^n F_2 = im(d_n) ⊂ P_{n-1}` (dimension `2n+1`).
pub fn omega_klein(n: usize) -> Result<GModule> {
    let group = klein();
    if n == 0 {
        return Ok(GModule::trivial(group, Ring::F2, 1));
    }
    let d = koszul_differential(n);
    let basis = d.select_columns(&fp::independent_columns(&d, 2));
    GModule::free(group, Ring::F2, n).submodule(&basis)
}

/// The `(2m+1)`-dimensional module `Ω^{-m}F_2` with basis `e_1..e_{2m+1}`:
/// `g, h` fix `e_1..e_{m+1}`, `g·e_{m+1+i} = e_i + e_{m+1+i}` and
/// `h·e_{m+1+i} = e_{i+1} + e_{m+1+i}`.
pub fn omega_negative_klein(m: usize) -> Result<GModule> {
    if !(1..=8).contains(&m) {
        return Err(Error::SizePolicy(format!("m = {m} outside 1..=8")));
    }
    let dim = 2 * m + 1;
    let (mut rg, mut rh) = (Matrix::identity(dim), Matrix::identity(dim));
    for i in 1..=m {
        let col = m + i; // e_{m+1+i}
        rg[(i - 1, col)] = 1;
        rh[(i, col)] = 1;
    }
    GModule::from_generator_images(klein(), Ring::F2, dim, &[(G, rg), (H, rh)])
}

fn binomial_mod2(n: usize, k: usize) -> i64 {
    // Lucas: C(n,k) is odd iff k's bits are a subset of n's
    i64::from(k & !n == 0)
}

/// `L_{ζ^n}`: kernel of the map `Ω^n F_2 → F_2` representing `ζ^n`, where
/// `ζ = a·x + b·y ∈ H^1(G, F_2)`. The cocycle on `P_n` takes
/// `e_{j,n-j} ↦ C(n,j)·a^j·b^{n-j}`.
pub fn l_zeta_klein(zeta: (u8, u8), n: usize) -> Result<GModule> {
    let (a, b) = (zeta.0 & 1, zeta.1 & 1);
    if a == 0 && b == 0 {
        return Err(Error::InvalidArgument("zeta must be nonzero".into()));
    }
    if !(1..=8).contains(&n) {
        return Err(Error::SizePolicy(format!("n = {n} outside 1..=8")));
    }
    let d = koszul_differential(n);
    let idx = fp::independent_columns(&d, 2);
    let basis = d.select_columns(&idx);
    let coef = |j: usize| -> i64 {
        let pa = if j == 0 { 1 } else { a as i64 };
        let pb = if n - j == 0 { 1 } else { b as i64 };
        binomial_mod2(n, j) * pa * pb
    };
    let fbar = Matrix::from_rows(&[idx.iter().map(|&c| coef(c / 4)).collect()]);
    let ker = fp::nullspace_mod(&fbar, 2);
    let l = basis.mul(&ker).reduce(Some(2));
    GModule::free(klein(), Ring::F2, n).submodule(&l)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_is_a_complex() {
        for n in 2..7 {
            let dd = koszul_differential(n - 1).mul(&koszul_differential(n)).reduce(Some(2));
            assert!(dd.is_zero());
        }
        // exactness: rank d_n + rank d_{n+1} = dim P_n
        for n in 1..6 {
            let r1 = fp::rank_mod(&koszul_differential(n), 2);
            let r2 = fp::rank_mod(&koszul_differential(n + 1), 2);
            assert_eq!(r1 + r2, koszul_rank(n));
        }
    }

    #[test]
    fn omega_dimensions() {
        for n in 0..6 {
            assert_eq!(omega_klein(n).unwrap().rank(), 2 * n + 1);
        }
        for m in 1..=8 {
            assert_eq!(omega_negative_klein(m).unwrap().rank(), 2 * m + 1);
        }
    }

    #[test]
    fn l_zeta_dimensions_and_fixed_points() {
        for n in 1..=5 {
            for zeta in [(1, 0), (0, 1), (1, 1)] {
                let l = l_zeta_klein(zeta, n).unwrap();
                assert_eq!(l.rank(), 2 * n);
            }
            let lx = l_zeta_klein((1, 0), n).unwrap();
            assert_eq!(lx.fixed_points().unwrap().cols(), n);
        }
        assert!(l_zeta_klein((0, 0), 2).is_err());
    }

    #[test]
    fn cocycle_vanishes_on_boundaries() {
        for n in 1..5 {
            let d_next = koszul_differential(n + 1);
            for (a, b) in [(1i64, 0i64), (0, 1), (1, 1)] {
                let f: Vec<i64> = (0..koszul_rank(n))
                    .map(|c| {
                        let j = c / 4;
                        let pa = if j == 0 { 1 } else { a };
                        let pb = if n - j == 0 { 1 } else { b };
                        binomial_mod2(n, j) * pa * pb
                    })
                    .collect();
                let row = Matrix::from_rows(&[f]);
                assert!(row.mul(&d_next).reduce(Some(2)).is_zero());
            }
        }
    }
}

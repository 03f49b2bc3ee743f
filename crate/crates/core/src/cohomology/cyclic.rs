use crate::abelian::{FiniteAbelianGroup, GroupStructure};
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Ring};
use crate::linalg::{fp, lattice, Matrix};

/// `H^n(Z/m, M)` from the 2-periodic resolution alternating `σ − 1` and the
/// trace: `H^0 = M^G`, `H^{2i} = M^G / tr M`, `H^{2i+1} = ker(tr) / (σ−1)M`.
pub fn cyclic_cohomology(m: &GModule, n: usize) -> Result<GroupStructure> {
    let g = m.group();
    let sigma = g
        .cyclic_generator()
        .ok_or_else(|| Error::UnsupportedFamily(format!("{} is not cyclic", g.name())))?;
    let wrap = |a: FiniteAbelianGroup| match m.ring() {
        Ring::Integers => GroupStructure::Abelian(a),
        Ring::PrimeField(_) => GroupStructure::Vector { dim: a.num_generators() },
    };
    if n == 0 {
        let fixed = m.fixed_points()?;
        return Ok(wrap(match m.ring() {
            Ring::Integers => FiniteAbelianGroup::free(fixed.cols()),
            Ring::PrimeField(p) => FiniteAbelianGroup::new(0, vec![p as u64; fixed.cols()]),
        }));
    }
    if n.is_multiple_of(2) {
        return Ok(wrap(m.trace_quotient()?));
    }
    let tr = m.trace_matrix();
    let s1 = m.action(sigma).sub(&Matrix::identity(m.rank())).reduce(m.modulus());
    match m.ring() {
        Ring::Integers => Ok(wrap(lattice::quotient(&lattice::kernel(&tr)?, &s1)?)),
        Ring::PrimeField(p) => {
            let dim = fp::nullspace_mod(&tr, p).cols() - fp::rank_mod(&s1, p);
            Ok(GroupStructure::Vector { dim })
        }
    }
}

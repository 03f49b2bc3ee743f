use super::{Method, TwistedChowResult};
use crate::abelian::{FiniteAbelianGroup, GroupStructure};
use crate::cohomology::cyclic_cohomology;
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Ring};

/// `CH^0 = M^G`, `CH^i = M^G / tr(M)` for `i > 0`. With `cross_check`,
/// `H^{2i}(G, M)` from the periodic resolution is attached as oracle and
/// must agree.
pub fn twisted_chow_cyclic(m: &GModule, i: usize, cross_check: bool) -> Result<TwistedChowResult> {
    let g = m.group();
    if g.cyclic_generator().is_none() {
        return Err(Error::UnsupportedFamily(format!("{} is not cyclic", g.name())));
    }
    let value = if i == 0 {
        let r = m.fixed_points()?.cols();
        match m.ring() {
            Ring::Integers => GroupStructure::Abelian(FiniteAbelianGroup::free(r)),
            Ring::PrimeField(_) => GroupStructure::Vector { dim: r },
        }
    } else {
        let t = m.trace_quotient()?;
        match m.ring() {
            Ring::Integers => GroupStructure::Abelian(t),
            Ring::PrimeField(_) => GroupStructure::Vector { dim: t.num_generators() },
        }
    };
    let mut out = TwistedChowResult::new(g.name(), i, value, Method::ClosedForm);
    if cross_check {
        let oracle = cyclic_cohomology(m, 2 * i)?;
        if oracle != out.value {
            return Err(Error::OracleMismatch(format!(
                "CH^{i} = {} but H^{} = {oracle}",
                out.value,
                2 * i
            )));
        }
        out.oracle = Some(oracle);
    }
    Ok(out)
}

use std::sync::Arc;

use super::{subgroup_structure, Method, TwistedChowResult};
use crate::abelian::{FiniteAbelianGroup, GroupStructure};
use crate::cohomology::{bar_cohomology, character_chern, corestrict_cochain, cup_with_trivial};
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Ring};
use crate::group::{FiniteGroup, Subgroup};

/// `χ(gen^k) = k mod |H|` for a cyclic group `H`.
pub(crate) fn faithful_character(h: &FiniteGroup) -> Result<Vec<u64>> {
    let gen = h.cyclic_generator().ok_or_else(|| Error::InvalidGroup(format!("{} is not cyclic", h.name())))?;
    let mut chi = vec![0u64; h.order()];
    let mut x = h.identity();
    for k in 0..h.order() {
        chi[x] = k as u64;
        x = h.mul(x, gen);
    }
    Ok(chi)
}

/// Cocycles `cor^G_H(c_1(χ) ∪ m_0)` in `Z^2(G, M)` for `m_0` over a basis of
/// `M^H`, where `χ : H → Z/N` is given per element of `H`'s standalone group.
pub(crate) fn chern_transfers(m: &GModule, h: &Subgroup, chi: &[u64], modulus: u64) -> Result<Vec<Vec<i64>>> {
    let g = m.group();
    let emb = g.subgroup_group(h);
    let whole = g.subgroup_group(&g.whole());
    let local = Arc::new(emb.group.clone());
    let c = character_chern(&local, chi, modulus)?;
    let z = GModule::trivial(local, Ring::Integers, 1);
    let m_h = m.restrict_along(&emb);
    let mut out = Vec::new();
    for m0 in m.fixed_points_of(h)?.columns() {
        let prod = cup_with_trivial(&z, &c, 2, &m_h, &m0, 0)?;
        out.push(corestrict_cochain(m, &emb, &whole, 2, &prod)?);
    }
    Ok(out)
}

/// Image of the three transfers in `H^2(G, M)` for a generalized
/// quaternion group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionImage {
    pub ambient: GroupStructure,
    pub generator_orders: Vec<u64>,
    /// Coordinates of each transferred class in the ambient generators.
    pub generators: Vec<Vec<i64>>,
    pub image: FiniteAbelianGroup,
}

fn quaternion_exponent(g: &FiniteGroup) -> Result<u32> {
    let n = g.order();
    if n < 8 || !n.is_power_of_two() {
        return Err(Error::UnsupportedFamily(format!("{} is not generalized quaternion", g.name())));
    }
    let k = n.trailing_zeros();
    if *g != FiniteGroup::quaternion(k)? {
        return Err(Error::UnsupportedFamily(format!("{} is not generalized quaternion", g.name())));
    }
    Ok(k)
}

/// Subgroup of `H^2(G, M)` generated by `cor^G_H(c_1(χ_H) · M^H)` for
/// `H = ⟨x⟩, ⟨y⟩, ⟨xy⟩` and `χ_H` faithful.
pub fn quaternion_odd_subgroup(m: &GModule) -> Result<QuaternionImage> {
    let g = m.group();
    let k = quaternion_exponent(g)?;
    if m.ring() != Ring::Integers {
        return Err(Error::RingMismatch("quaternion computations are integral".into()));
    }
    let n = 1usize << (k - 1);
    let h2 = bar_cohomology(m, 2)?;
    let mut generators = Vec::new();
    for gen in [1, n, n + 1] {
        let h = g.generated_subgroup(&[gen]);
        let local = g.subgroup_group(&h).group;
        let chi = faithful_character(&local)?;
        for z in chern_transfers(m, &h, &chi, local.order() as u64)? {
            generators.push(h2.coordinates(&z)?);
        }
    }
    let orders = h2.generator_orders();
    let image = subgroup_structure(&orders, &generators)?;
    Ok(QuaternionImage { ambient: h2.structure().clone(), generator_orders: orders, generators, image })
}


/// `CH^i(BG, M)` for `G = Q_{2^k}`: `M^G` in degree 0, `M^G/tr(M)` in even
/// positive degrees and the transfer image in `H^2(G, M)` in odd degrees.
pub fn twisted_chow_quaternion(k: u32, m: &GModule, i: usize) -> Result<TwistedChowResult> {
    let g = m.group();
    if quaternion_exponent(g)? != k {
        return Err(Error::UnsupportedFamily(format!("{} is not Q{}", g.name(), 1u64 << k)));
    }
    if m.ring() != Ring::Integers {
        return Err(Error::RingMismatch("quaternion computations are integral".into()));
    }
    if i == 0 {
        let r = m.fixed_points()?.cols();
        return Ok(TwistedChowResult::new(
            g.name(),
            0,
            GroupStructure::Abelian(FiniteAbelianGroup::free(r)),
            Method::ClosedForm,
        ));
    }
    if i.is_multiple_of(2) {
        let t = m.trace_quotient()?;
        return Ok(TwistedChowResult::new(g.name(), i, GroupStructure::Abelian(t), Method::ClosedForm));
    }
    let img = quaternion_odd_subgroup(m)?;
    let mut out = TwistedChowResult::new(g.name(), i, GroupStructure::Abelian(img.image), Method::ImageComputation);
    out.ambient = Some(img.ambient);
    out.generators = img.generators;
    Ok(out)
}

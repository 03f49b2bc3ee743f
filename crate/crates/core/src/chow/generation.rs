use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use super::quaternion::{chern_transfers, faithful_character};
use super::{subgroup_structure, twisted_chow_cyclic, twisted_chow_klein, twisted_chow_quaternion};
use crate::abelian::GroupStructure;
use crate::cohomology::{bar_cohomology, character_chern, corestrict_cochain, cup_with_trivial, klein_monomial, BarComplex};
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Ring};
use crate::group::FiniteGroup;
use crate::linalg::fp::rank_mod;
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationReport {
    pub group: String,
    pub degree: usize,
    /// Value from the closed form or image computation.
    pub computed: GroupStructure,
    /// Value spanned by transferred classes.
    pub generated: GroupStructure,
    pub equal: bool,
}

/// All characters `H → Z/|H|`, as values per element.
fn characters(h: &FiniteGroup) -> Vec<Vec<u64>> {
    let n = h.order() as u64;
    let gens = h.generators().to_vec();
    let mut out: Vec<Vec<u64>> = Vec::new();
    let mut images = vec![0u64; gens.len()];
    loop {
        if let Some(chi) = extend_character(h, &gens, &images, n) {
            if !out.contains(&chi) {
                out.push(chi);
            }
        }
        // next assignment of generator images
        let mut k = 0;
        while k < images.len() {
            images[k] += 1;
            if images[k] < n {
                break;
            }
            images[k] = 0;
            k += 1;
        }
        if k == images.len() {
            break;
        }
    }
    out
}

fn extend_character(h: &FiniteGroup, gens: &[usize], images: &[u64], n: u64) -> Option<Vec<u64>> {
    let mut chi = vec![None; h.order()];
    chi[h.identity()] = Some(0u64);
    let mut queue = VecDeque::from([h.identity()]);
    while let Some(x) = queue.pop_front() {
        let cx = chi[x].unwrap();
        for (&g, &a) in gens.iter().zip(images) {
            let y = h.mul(x, g);
            let v = (cx + a) % n;
            match chi[y] {
                None => {
                    chi[y] = Some(v);
                    queue.push_back(y);
                }
                Some(w) if w != v => return None,
                Some(_) => {}
            }
        }
    }
    let chi: Vec<u64> = chi.into_iter().map(|v| v.unwrap_or(0)).collect();
    let hom = h.elements().all(|a| h.elements().all(|b| (chi[a] + chi[b]) % n == chi[h.mul(a, b)]));
    hom.then_some(chi)
}

/// `c^i` as a `2i`-cocycle with trivial `Z` coefficients.
fn chern_power(g: &FiniteGroup, chi: &[u64], modulus: u64, i: usize) -> Result<Vec<i64>> {
    let z = GModule::trivial(Arc::new(g.clone()), Ring::Integers, 1);
    let c = character_chern(g, chi, modulus)?;
    let mut acc = BarComplex::new(&z).cochain_from_fn(0, |_| vec![1]);
    for k in 0..i {
        acc = cup_with_trivial(&z, &c, 2, &z, &acc, 2 * k)?;
    }
    Ok(acc)
}

fn cyclic_check(m: &GModule, i: usize) -> Result<GenerationReport> {
    let g = m.group();
    let computed = twisted_chow_cyclic(m, i, false)?.value;
    let h = bar_cohomology(m, 2 * i)?;
    let chi = faithful_character(g)?;
    let ci = chern_power(g, &chi, g.order() as u64, i)?;
    let z = GModule::trivial(m.group_arc().clone(), Ring::Integers, 1);
    let mut coords = Vec::new();
    for m0 in m.fixed_points()?.columns() {
        coords.push(h.coordinates(&cup_with_trivial(&z, &ci, 2 * i, m, &m0, 0)?)?);
    }
    let generated = match m.ring() {
        Ring::Integers if i > 0 => GroupStructure::Abelian(subgroup_structure(&h.generator_orders(), &coords)?),
        _ => field_or_free(m, &coords),
    };
    Ok(report(g, i, computed, generated))
}

fn field_or_free(m: &GModule, coords: &[Vec<i64>]) -> GroupStructure {
    let rank = if coords.is_empty() || coords[0].is_empty() {
        0
    } else {
        match m.ring() {
            Ring::PrimeField(p) => rank_mod(&Matrix::from_rows(coords), p),
            Ring::Integers => crate::linalg::lattice::rank(&Matrix::from_rows(coords)).unwrap_or(0),
        }
    };
    match m.ring() {
        Ring::PrimeField(_) => GroupStructure::Vector { dim: rank },
        Ring::Integers => GroupStructure::Abelian(crate::abelian::FiniteAbelianGroup::free(rank)),
    }
}

fn report(g: &FiniteGroup, degree: usize, computed: GroupStructure, generated: GroupStructure) -> GenerationReport {
    GenerationReport { group: g.name().to_string(), degree, equal: computed == generated, computed, generated }
}

/// `x^{2i}` on a subgroup of order 2 or `u^a v^{i-a}` on the whole group,
/// as `F_2` cochains of degree `2i` on the subgroup's standalone group.
fn klein_chow_classes(local: &FiniteGroup, i: usize) -> Vec<Vec<i64>> {
    let f2 = GModule::trivial(Arc::new(local.clone()), Ring::F2, 1);
    match local.order() {
        4 => (0..=i).map(|a| klein_monomial(&f2, 2 * a, 2 * (i - a))).collect(),
        2 => vec![BarComplex::new(&f2).cochain_from_fn(2 * i, |_| vec![1])],
        _ if i == 0 => vec![BarComplex::new(&f2).cochain_from_fn(0, |_| vec![1])],
        _ => Vec::new(),
    }
}

fn klein_check(m: &GModule, i: usize) -> Result<GenerationReport> {
    let g = m.group();
    let computed = twisted_chow_klein(m, i)?.value;
    let h = bar_cohomology(m, 2 * i)?;
    let whole = g.subgroup_group(&g.whole());
    let mut coords = Vec::new();
    for sub in g.subgroups() {
        let emb = g.subgroup_group(&sub);
        let f2 = GModule::trivial(Arc::new(emb.group.clone()), Ring::F2, 1);
        let m_h = m.restrict_along(&emb);
        for class in klein_chow_classes(&emb.group, i) {
            for x in m.fixed_points_of(&sub)?.columns() {
                let prod = cup_with_trivial(&f2, &class, 2 * i, &m_h, &x, 0)?;
                let tr = corestrict_cochain(m, &emb, &whole, 2 * i, &prod)?;
                coords.push(h.coordinates(&tr)?);
            }
        }
    }
    let generated = field_or_free(m, &coords);
    Ok(report(g, i, computed, generated))
}

fn quaternion_check(m: &GModule, i: usize) -> Result<GenerationReport> {
    let g = m.group();
    let k = g.order().trailing_zeros();
    let computed = twisted_chow_quaternion(k, m, i)?.value;
    let h = bar_cohomology(m, 2)?;
    let mut coords = Vec::new();
    for sub in g.subgroups() {
        let local = g.subgroup_group(&sub).group;
        for chi in characters(&local) {
            for z in chern_transfers(m, &sub, &chi, local.order() as u64)? {
                coords.push(h.coordinates(&z)?);
            }
        }
    }
    let generated = GroupStructure::Abelian(subgroup_structure(&h.generator_orders(), &coords)?);
    Ok(report(g, i, computed, generated))
}

/// Recomputes `CH^i(BG, M)` as the span of `tr^G_H(x · CH^i(BH))` over
/// subgroups `H` and `x ∈ M^H`, and compares with the computed value.
/// Cyclic groups use `c^i · M^G`; quaternion groups are checked in odd
/// degree, where all subgroups and all their characters contribute.
pub fn transfer_generation_check(m: &GModule, i: usize) -> Result<GenerationReport> {
    let g = m.group();
    if g.cyclic_generator().is_some() {
        cyclic_check(m, i)
    } else if *g == FiniteGroup::klein4() {
        klein_check(m, i)
    } else if g.order() >= 8 && g.order().is_power_of_two() && *g == FiniteGroup::quaternion(g.order().trailing_zeros())? {
        if i.is_multiple_of(2) {
            return Err(Error::UnsupportedFamily("quaternion generation is checked in odd degrees".into()));
        }
        quaternion_check(m, i)
    } else {
        Err(Error::UnsupportedFamily(format!("no generation check for {}", g.name())))
    }
}

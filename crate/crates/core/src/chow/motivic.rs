use serde::Serialize;

use super::mackey::MackeyChow;
use super::{twisted_chow_klein, Method, TwistedChowResult};
use crate::abelian::{FiniteAbelianGroup, GroupStructure};
use crate::coflasque::{CoflasqueResolution, CounterexampleLattices};
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Ring};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{lattice, Matrix};

/// Cokernel of `⊕_α CH^i(BH_α) → ⊕_β CH^i(BK_β)` induced by a module map
/// `⊕ Z[G/H_α] → ⊕ Z[G/K_β]`, given as a matrix on the coset bases
/// (summand `α` spans `[G:H_α]` consecutive columns ordered by
/// `left_coset_reps`). `G` must be abelian, so the Mackey basis map of a
/// double coset `HsK` acts as `tr^K_{H∩K} ∘ res^H_{H∩K}`.
pub fn motivic_cokernel(
    mackey: &MackeyChow,
    g: &FiniteGroup,
    source: &[Subgroup],
    target: &[Subgroup],
    map: &Matrix,
    i: usize,
) -> Result<FiniteAbelianGroup> {
    if !g.is_abelian() {
        return Err(Error::UnsupportedFamily("Mackey decomposition needs an abelian group".into()));
    }
    let offsets = |parts: &[Subgroup]| -> Vec<usize> {
        let mut acc = 0;
        parts
            .iter()
            .map(|h| {
                let o = acc;
                acc += g.order() / h.order();
                o
            })
            .collect()
    };
    let (src_off, tgt_off) = (offsets(source), offsets(target));
    let tgt_rank: usize = target.iter().map(|k| g.order() / k.order()).sum();
    let src_rank: usize = source.iter().map(|h| g.order() / h.order()).sum();
    if map.rows() != tgt_rank || map.cols() != src_rank {
        return Err(Error::InvalidArgument(format!(
            "map is {}×{}, summands need {tgt_rank}×{src_rank}",
            map.rows(),
            map.cols()
        )));
    }

    let mut chow_off = Vec::with_capacity(target.len());
    let mut orders = Vec::new();
    for k in target {
        chow_off.push(orders.len());
        orders.extend(mackey.piece(k)?.orders(i));
    }
    let t = orders.len();
    let mut images: Vec<Vec<i64>> = Vec::new();
    for (a, h) in source.iter().enumerate() {
        let dim_h = mackey.piece(h)?.basis(i).len();
        let mut block_images = vec![vec![0i64; t]; dim_h];
        for (b, k) in target.iter().enumerate() {
            let reps = g.left_coset_reps(k);
            // coefficient vector of the image of the identity coset of H
            let coeffs: Vec<i64> = (0..reps.len()).map(|j| map[(tgt_off[b] + j, src_off[a])]).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let l = g.intersect(h, k);
            let res = mackey.restriction(h, &l, i)?;
            let tr = mackey.transfer(&l, k, i)?;
            let basis_map = tr.mul(&res);
            let mut seen = vec![false; reps.len()];
            for j in 0..reps.len() {
                if seen[j] {
                    continue;
                }
                let orbit: Vec<usize> =
                    h.elements().iter().map(|&x| g.left_coset_index(k, &reps, g.mul(x, reps[j]))).collect();
                if orbit.iter().any(|&o| coeffs[o] != coeffs[j]) {
                    return Err(Error::InvalidArgument("map is not equivariant".into()));
                }
                for &o in &orbit {
                    seen[o] = true;
                }
                let c = coeffs[j];
                for (col, img) in block_images.iter_mut().enumerate() {
                    for row in 0..basis_map.rows() {
                        img[chow_off[b] + row] += c * basis_map[(row, col)];
                    }
                }
            }
        }
        images.extend(block_images);
    }
    let mut relations: Vec<Vec<i64>> = images;
    for (k, &d) in orders.iter().enumerate() {
        if d != 0 {
            let mut e = vec![0; t];
            e[k] = d as i64;
            relations.push(e);
        }
    }
    lattice::quotient(&Matrix::identity(t), &Matrix::from_columns(t, &relations))
}

/// The two resolutions feeding the motivic cokernel and its value.
#[derive(Clone, Debug, Serialize)]
pub struct MotivicDetails {
    pub b_summands: Vec<Vec<usize>>,
    pub p_summands: Vec<Vec<usize>>,
    pub cokernel: FiniteAbelianGroup,
}

fn check_klein_f2(m: &GModule) -> Result<()> {
    if *m.group() != FiniteGroup::klein4() {
        return Err(Error::UnsupportedFamily(format!("motivic pipeline is for the Klein four group, got {}", m.group().name())));
    }
    if m.ring() != Ring::F2 {
        return Err(Error::RingMismatch("motivic pipeline needs F2 coefficients".into()));
    }
    Ok(())
}

fn as_value(c: &FiniteAbelianGroup) -> GroupStructure {
    if c.is_finite() && c.torsion().iter().all(|&d| d == 2) {
        GroupStructure::Vector { dim: c.torsion().len() }
    } else {
        GroupStructure::Abelian(c.clone())
    }
}

fn finish(m: &GModule, i: usize, details: &MotivicDetails) -> Result<TwistedChowResult> {
    let value = as_value(&details.cokernel);
    let chow = twisted_chow_klein(m, i)?.value;
    let (have, need) = (details.cokernel.num_generators(), chow.dim().unwrap_or(0));
    if details.cokernel.is_finite() && have < need {
        return Err(Error::OracleMismatch(format!(
            "motivic cokernel {} is smaller than CH^{i} of dimension {need}",
            details.cokernel
        )));
    }
    Ok(TwistedChowResult::new(m.group().name(), i, value, Method::MotivicPipeline))
}

fn ids(parts: &[Subgroup]) -> Vec<Vec<usize>> {
    parts.iter().map(|h| h.elements().to_vec()).collect()
}

/// Cokernel of `CH^i` of the covering spaces for `P → A ⊂ B` where
/// `0 → A → B → M → 0` and `P → A` are coflasque resolutions built from
/// fixed-point bases.
pub fn twisted_motivic_klein_details(m: &GModule, i: usize) -> Result<MotivicDetails> {
    check_klein_f2(m)?;
    let first = CoflasqueResolution::new(m, true)?;
    let second = CoflasqueResolution::new(&first.kernel, true)?;
    let map = first.inclusion.mul(&second.surjection);
    let g = m.group();
    let mackey = MackeyChow::klein();
    let cokernel = motivic_cokernel(&mackey, g, &second.summands, &first.summands, &map, i)?;
    Ok(MotivicDetails { b_summands: ids(&first.summands), p_summands: ids(&second.summands), cokernel })
}

pub fn twisted_motivic_klein(m: &GModule, i: usize) -> Result<TwistedChowResult> {
    let details = twisted_motivic_klein_details(m, i)?;
    finish(m, i, &details)
}

/// The same cokernel on the explicit lattices around `Ω^{-m}F_2`:
/// `B = (ZG)^m ⊕ Z^{m+1}` and `P = ⊕_a Z[G/H_a]^m`.
pub fn twisted_motivic_klein_explicit(m: usize, i: usize) -> Result<(TwistedChowResult, MotivicDetails)> {
    let lat = CounterexampleLattices::new(m)?;
    let g = lat.b.group();
    let mut b_parts = vec![g.trivial_subgroup(); m];
    b_parts.extend(std::iter::repeat_n(g.whole(), m + 1));
    let mut p_parts = Vec::new();
    for h in &lat.cyclic_subgroups {
        p_parts.extend(std::iter::repeat_n(h.clone(), m));
    }
    let map = lat.a_in_b.mul(&lat.p_to_a);
    let cokernel = motivic_cokernel(&MackeyChow::klein(), g, &p_parts, &b_parts, &map, i)?;
    let details = MotivicDetails { b_summands: ids(&b_parts), p_summands: ids(&p_parts), cokernel };
    let result = finish(&lat.omega, i, &details)?;
    Ok((result, details))
}

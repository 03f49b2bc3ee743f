//! Restriction, corestriction and conjugation of bar cochains between
//! subgroups of a fixed group `G`. A cochain on a subgroup `L` lives on the
//! bar complex of the standalone group of `L`'s embedding, with coefficients
//! `M` restricted to `L`.

use super::{bar_cohomology, BarComplex, CohomologyGroup};
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::{Subgroup, SubgroupEmbedding};

fn check_inside(small: &Subgroup, big: &Subgroup) -> Result<()> {
    if small.is_subset_of(big) {
        Ok(())
    } else {
        Err(Error::NotSubgroup(format!("{:?} is not contained in {:?}", small.elements(), big.elements())))
    }
}

/// `res^{from}_{to}` for `to ≤ from`.
pub fn restrict_cochain(
    m: &GModule,
    from: &SubgroupEmbedding,
    to: &SubgroupEmbedding,
    n: usize,
    f: &[i64],
) -> Result<Vec<i64>> {
    check_inside(&to.subgroup, &from.subgroup)?;
    let (m_from, m_to) = (m.restrict_along(from), m.restrict_along(to));
    let (bar_from, bar_to) = (BarComplex::new(&m_from), BarComplex::new(&m_to));
    Ok(bar_to.cochain_from_fn(n, |t| {
        let local: Vec<usize> = t.iter().map(|&x| from.local(to.to_parent[x])).collect();
        bar_from.value(f, &local).expect("non-identity tuple").to_vec()
    }))
}

/// `cor^{to}_{from}` for `from ≤ to`, via homogeneous cochains:
/// `Cor F(x_0..x_n) = Σ_t t·F(ρ(t⁻¹x_0), …, ρ(t⁻¹x_n))` over left coset
/// representatives `t` (least element of each coset), where `ρ(h·s) = h` for
/// right coset representatives `s`.
pub fn corestrict_cochain(
    m: &GModule,
    from: &SubgroupEmbedding,
    to: &SubgroupEmbedding,
    n: usize,
    f: &[i64],
) -> Result<Vec<i64>> {
    check_inside(&from.subgroup, &to.subgroup)?;
    let g = m.group();
    let small = &from.subgroup;
    let big = to.subgroup.elements();
    let (m_from, m_to) = (m.restrict_along(from), m.restrict_along(to));
    let (bar_from, bar_to) = (BarComplex::new(&m_from), BarComplex::new(&m_to));

    let mut covered = vec![false; g.order()];
    let mut left_reps = Vec::new();
    for &t in big {
        if !covered[t] {
            left_reps.push(t);
            for &h in small.elements() {
                covered[g.mul(t, h)] = true;
            }
        }
    }
    let mut retraction = vec![usize::MAX; g.order()];
    for &s in big {
        if retraction[s] == usize::MAX {
            for &h in small.elements() {
                retraction[g.mul(h, s)] = h;
            }
        }
    }

    let r = m.rank();
    let mut out = bar_to.cochain_from_fn(n, |t| {
        let mut x = Vec::with_capacity(n + 1);
        x.push(g.identity());
        for &a in t {
            let last = *x.last().unwrap();
            x.push(g.mul(last, to.to_parent[a]));
        }
        let mut acc = vec![0i64; r];
        for &rep in &left_reps {
            let rinv = g.inv(rep);
            let y: Vec<usize> = x.iter().map(|&xi| retraction[g.mul(rinv, xi)]).collect();
            let args: Vec<usize> = y.windows(2).map(|w| from.local(g.mul(g.inv(w[0]), w[1]))).collect();
            let Some(v) = bar_from.value(f, &args) else { continue };
            let moved = m.action(g.mul(rep, y[0])).mul_vec(v);
            for (a, b) in acc.iter_mut().zip(moved) {
                *a += b;
            }
        }
        acc
    });
    bar_to.reduce(&mut out);
    Ok(out)
}

/// Conjugation `c_s : H^n(L, M) → H^n(sLs⁻¹, M)`,
/// `(c_s f)(k_1..k_n) = s·f(s⁻¹k_1s, …, s⁻¹k_ns)`.
pub fn conjugate_cochain(
    m: &GModule,
    s: usize,
    from: &SubgroupEmbedding,
    to: &SubgroupEmbedding,
    n: usize,
    f: &[i64],
) -> Result<Vec<i64>> {
    let g = m.group();
    if g.conjugate_subgroup(s, &from.subgroup) != to.subgroup {
        return Err(Error::NotSubgroup("target is not the conjugate subgroup".into()));
    }
    let sinv = g.inv(s);
    let (m_from, m_to) = (m.restrict_along(from), m.restrict_along(to));
    let (bar_from, bar_to) = (BarComplex::new(&m_from), BarComplex::new(&m_to));
    let act = m.action(s);
    let mut out = bar_to.cochain_from_fn(n, |t| {
        let args: Vec<usize> = t.iter().map(|&k| from.local(g.conj(sinv, to.to_parent[k]))).collect();
        act.mul_vec(bar_from.value(f, &args).expect("conjugation preserves non-identity"))
    });
    bar_to.reduce(&mut out);
    Ok(out)
}

fn sub(a: &[i64], b: &[i64], scale: i64) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - scale * y).collect()
}

/// Checks `cor^G_H ∘ res^G_H = [G:H]` on every generator of `H^n(G, M)`.
pub fn check_cor_res(m: &GModule, h: &Subgroup, n: usize) -> Result<bool> {
    let coh = bar_cohomology(m, n)?;
    cor_res_holds(m, &coh, h, n)
}

/// [`check_cor_res`] for every subgroup, sharing one computation of `H^n(G, M)`.
pub fn check_cor_res_all(m: &GModule, n: usize) -> Result<Vec<(Subgroup, bool)>> {
    let coh = bar_cohomology(m, n)?;
    m.group().subgroups().into_iter().map(|h| Ok((h.clone(), cor_res_holds(m, &coh, &h, n)?))).collect()
}

fn cor_res_holds(m: &GModule, coh: &CohomologyGroup, h: &Subgroup, n: usize) -> Result<bool> {
    let g = m.group();
    let whole = g.subgroup_group(&g.whole());
    let emb = g.subgroup_group(h);
    let index = (g.order() / h.order()) as i64;
    for z in coh.generators() {
        let back = corestrict_cochain(m, &emb, &whole, n, &restrict_cochain(m, &whole, &emb, n, &z)?)?;
        if !coh.is_zero_class(&sub(&back, &z, index))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `res_K cor_H = Σ_{s ∈ K\G/H} cor^K_{K∩sHs⁻¹} c_s res^H_{H∩s⁻¹Ks}`
/// on every generator of `H^n(H, M)`.
pub fn check_double_coset(m: &GModule, k: &Subgroup, h: &Subgroup, n: usize) -> Result<bool> {
    let g = m.group();
    let whole = g.subgroup_group(&g.whole());
    let (emb_h, emb_k) = (g.subgroup_group(h), g.subgroup_group(k));
    let m_h = m.restrict_along(&emb_h);
    let m_k = m.restrict_along(&emb_k);
    let coh_h = bar_cohomology(&m_h, n)?;
    let coh_k = bar_cohomology(&m_k, n)?;
    let cosets = g.double_cosets(k, h);
    for z in coh_h.generators() {
        let lhs = restrict_cochain(m, &whole, &emb_k, n, &corestrict_cochain(m, &emb_h, &whole, n, &z)?)?;
        let mut rhs = vec![0i64; lhs.len()];
        for dc in &cosets {
            let s = dc.representative;
            let l = &dc.intersection;
            let pre = g.conjugate_subgroup(g.inv(s), l);
            let (emb_l, emb_pre) = (g.subgroup_group(l), g.subgroup_group(&pre));
            let w = restrict_cochain(m, &emb_h, &emb_pre, n, &z)?;
            let w = conjugate_cochain(m, s, &emb_pre, &emb_l, n, &w)?;
            let w = corestrict_cochain(m, &emb_l, &emb_k, n, &w)?;
            for (a, b) in rhs.iter_mut().zip(w) {
                *a += b;
            }
        }
        if !coh_k.is_zero_class(&sub(&lhs, &rhs, 1))? {
            return Ok(false);
        }
    }
    Ok(true)
}

use std::sync::Arc;

use super::{Method, TwistedChowResult};
use crate::abelian::GroupStructure;
use crate::cohomology::koszul::KleinKoszul;
use crate::cohomology::{bar_cohomology, cup_with_trivial, klein_monomial};
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Ring};
use crate::linalg::fp::{rank_mod, Echelon, FpVector};
use crate::linalg::Matrix;

/// Basis of `CH^d(BG, M) ⊂ H^{2d}(G, M)` chosen among the products
/// `u^a v^{d-a} · m_k`, together with a reducer expressing any cocycle of
/// their span in that basis.
struct DegreeBasis {
    /// `(a, k)` for each basis element.
    labels: Vec<(usize, usize)>,
    cochains: Vec<Vec<i64>>,
    reducer: Echelon,
}

fn degree_basis(k: &KleinKoszul<'_>, fixed: &[Vec<i64>], d: usize) -> DegreeBasis {
    let n = 2 * d;
    let mut probe = k.boundaries(n);
    let mut labels = Vec::new();
    let mut cochains = Vec::new();
    for a in 0..=d {
        for (idx, m0) in fixed.iter().enumerate() {
            let z = k.monomial_times(2 * a, 2 * (d - a), m0);
            if probe.insert(FpVector::from_i64(2, &z)) {
                labels.push((a, idx));
                cochains.push(z);
            }
        }
    }
    // boundaries go in untagged, so `express` works modulo them
    let mut reducer = Echelon::with_tags(2, k.dim(n), cochains.len());
    for z in boundary_vectors(k, n) {
        reducer.insert(z);
    }
    for (t, z) in cochains.iter().enumerate() {
        reducer.insert_tagged(FpVector::from_i64(2, z), FpVector::unit(2, cochains.len(), t));
    }
    DegreeBasis { labels, cochains, reducer }
}

fn boundary_vectors(k: &KleinKoszul<'_>, n: usize) -> Vec<FpVector> {
    if n == 0 {
        return Vec::new();
    }
    let d = k.coboundary(n - 1);
    (0..d.cols()).map(|c| d.fp_column(c, 2)).collect()
}

fn klein_setup(m: &GModule) -> Result<(KleinKoszul<'_>, Vec<Vec<i64>>)> {
    let k = KleinKoszul::new(m)?;
    let fixed = k.fixed_basis()?;
    Ok((k, fixed))
}

/// `CH^i(BG, M)` for the Klein four group and an `F_2`-module `M`: the span
/// of `u^a v^{i-a} · m_0` in `H^{2i}(G, M)`, `u ↦ x², v ↦ y²`, computed on
/// the minimal resolution. Generators are reported as triples
/// `[a, i-a, k]` standing for `u^a v^{i-a} · m_k` with `m_k` the `k`-th
/// basis vector of `M^G`.
pub fn twisted_chow_klein(m: &GModule, i: usize) -> Result<TwistedChowResult> {
    let (k, fixed) = klein_setup(m)?;
    let basis = degree_basis(&k, &fixed, i);
    let mut out = TwistedChowResult::new(
        m.group().name(),
        i,
        GroupStructure::Vector { dim: basis.labels.len() },
        Method::ImageComputation,
    );
    out.generators = basis.labels.iter().map(|&(a, idx)| vec![a as i64, (i - a) as i64, idx as i64]).collect();
    Ok(out)
}

/// The same image computed on the bar complex with explicit cup products,
/// subject to the resource cap.
pub fn twisted_chow_klein_bar(m: &GModule, i: usize) -> Result<GroupStructure> {
    if m.ring() != Ring::F2 {
        return Err(Error::RingMismatch("Klein four computations need F2 coefficients".into()));
    }
    KleinKoszul::new(m)?;
    let f2 = GModule::trivial(Arc::new(m.group().clone()), Ring::F2, 1);
    let h = bar_cohomology(m, 2 * i)?;
    let mut coords = Vec::new();
    for m0 in m.fixed_points()?.columns() {
        for a in 0..=i {
            let mono = klein_monomial(&f2, 2 * a, 2 * (i - a));
            let prod = cup_with_trivial(&f2, &mono, 2 * i, m, &m0, 0)?;
            coords.push(h.coordinates(&prod)?);
        }
    }
    let dim = if coords.is_empty() || coords[0].is_empty() {
        0
    } else {
        rank_mod(&Matrix::from_rows(&coords), 2)
    };
    Ok(GroupStructure::Vector { dim })
}

/// Degreewise data of `CH^*(BG, M)` as a module over `F_2[u, v]`: the
/// dimensions in degrees `0..=max_degree` and the matrices of
/// multiplication by `u` and `v` from degree `d` to `d + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KleinChowGraded {
    pub dims: Vec<usize>,
    pub u_maps: Vec<Matrix>,
    pub v_maps: Vec<Matrix>,
}

pub fn klein_chow_graded(m: &GModule, max_degree: usize) -> Result<KleinChowGraded> {
    let (k, fixed) = klein_setup(m)?;
    let bases: Vec<DegreeBasis> = (0..=max_degree).map(|d| degree_basis(&k, &fixed, d)).collect();
    let dims: Vec<usize> = bases.iter().map(|b| b.labels.len()).collect();
    let mut u_maps = Vec::new();
    let mut v_maps = Vec::new();
    for d in 0..max_degree {
        let (src, dst) = (&bases[d], &bases[d + 1]);
        let action = |a: usize, b: usize| -> Result<Matrix> {
            let mut cols = Vec::with_capacity(src.cochains.len());
            for z in &src.cochains {
                let moved = k.shift(z, 2 * d, a, b);
                let coords = dst
                    .reducer
                    .express(&FpVector::from_i64(2, &moved))
                    .ok_or_else(|| Error::Linalg("product left the image of M^G".into()))?;
                cols.push(coords.to_i64());
            }
            Ok(Matrix::from_columns(dst.cochains.len(), &cols))
        };
        u_maps.push(action(2, 0)?);
        v_maps.push(action(0, 2)?);
    }
    Ok(KleinChowGraded { dims, u_maps, v_maps })
}

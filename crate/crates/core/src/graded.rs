//! Finitely generated graded modules over `F_p[u, v]` (`u`, `v` in degree
//! one), handled degree by degree with dense linear algebra: minimal
//! presentations from degreewise data, Hilbert functions, minimal free
//! resolutions and Castelnuovo–Mumford regularity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::linalg::fp::{Echelon, FpVector};
use crate::linalg::Matrix;

/// Free module `⊕_j R(-d_j)`. In degree `d` the basis is ordered by
/// generator, then by the power of `u` in `u^a v^{d-d_j-a}`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Free {
    degrees: Vec<usize>,
}

impl Free {
    fn dim(&self, d: usize) -> usize {
        self.degrees.iter().filter(|&&g| g <= d).map(|&g| d - g + 1).sum()
    }

    fn offset(&self, j: usize, d: usize) -> usize {
        self.degrees[..j].iter().filter(|&&g| g <= d).map(|&g| d - g + 1).sum()
    }

    /// Multiply a degree-`d` element by `u^a v^b`.
    fn shift(&self, x: &[i64], d: usize, a: usize, b: usize) -> Vec<i64> {
        let e = d + a + b;
        let mut out = vec![0; self.dim(e)];
        for (j, &g) in self.degrees.iter().enumerate() {
            if g > d {
                continue;
            }
            let (src, dst) = (self.offset(j, d), self.offset(j, e));
            for k in 0..=d - g {
                out[dst + k + a] = x[src + k];
            }
        }
        out
    }

    /// Matrix in degree `d` of the map sending generator `k` of `src` to
    /// `images[k]`, an element of `self` in degree `src.degrees[k]`.
    fn map_matrix(&self, src: &Free, images: &[Vec<i64>], d: usize, p: u32) -> Matrix {
        let mut cols = Vec::with_capacity(src.dim(d));
        for (k, &g) in src.degrees.iter().enumerate() {
            if g > d {
                continue;
            }
            for a in 0..=d - g {
                cols.push(self.shift(&images[k], g, a, d - g - a));
            }
        }
        Matrix::from_columns(self.dim(d), &cols).reduce(Some(p as u64))
    }
}

fn nullspace(a: &Matrix, p: u32) -> Vec<Vec<i64>> {
    crate::linalg::fp::nullspace_mod(a, p).columns()
}

/// Minimal homogeneous generators, up to degree `horizon`, of the
/// submodule of `free` whose degree-`d` part is spanned by `part(d)`.
fn minimal_generators(
    free: &Free,
    p: u32,
    horizon: usize,
    mut part: impl FnMut(usize) -> Vec<Vec<i64>>,
) -> Vec<(usize, Vec<i64>)> {
    let mut gens = Vec::new();
    let mut previous: Vec<Vec<i64>> = Vec::new();
    for d in 0..=horizon {
        let mut span = Echelon::new(p, free.dim(d));
        if d > 0 {
            for x in &previous {
                span.insert(FpVector::from_i64(p, &free.shift(x, d - 1, 1, 0)));
                span.insert(FpVector::from_i64(p, &free.shift(x, d - 1, 0, 1)));
            }
        }
        let current = part(d);
        let mut basis = Vec::new();
        for x in current {
            if span.insert(FpVector::from_i64(p, &x)) {
                gens.push((d, x.clone()));
            }
            basis.push(x);
        }
        previous = basis;
    }
    gens
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub generator: usize,
    pub u: usize,
    pub v: usize,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    pub degree: usize,
    pub terms: Vec<Term>,
}

/// Minimal presentation `⊕R(-d_j) / (relations)` together with the
/// dimension table it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedModulePresentation {
    pub prime: u32,
    pub generators: Vec<usize>,
    pub relations: Vec<Relation>,
    pub horizon: usize,
    pub dims: Vec<usize>,
}

impl GradedModulePresentation {
    fn free(&self) -> Free {
        Free { degrees: self.generators.clone() }
    }

    fn relation_vector(&self, r: &Relation) -> Vec<i64> {
        let f = self.free();
        let mut v = vec![0; f.dim(r.degree)];
        for t in &r.terms {
            let g = self.generators[t.generator];
            v[f.offset(t.generator, r.degree) + t.u] += t.coeff;
            debug_assert_eq!(g + t.u + t.v, r.degree);
        }
        v
    }

    fn relation_vectors(&self) -> Vec<Vec<i64>> {
        self.relations.iter().map(|r| self.relation_vector(r)).collect()
    }
}

fn to_terms(free: &Free, d: usize, x: &[i64]) -> Vec<Term> {
    let mut terms = Vec::new();
    for (j, &g) in free.degrees.iter().enumerate() {
        if g > d {
            continue;
        }
        let o = free.offset(j, d);
        for a in 0..=d - g {
            if x[o + a] != 0 {
                terms.push(Term { generator: j, u: a, v: d - g - a, coeff: x[o + a] });
            }
        }
    }
    terms
}

/// Minimal presentation of the module with the given degreewise dimensions
/// and multiplication maps `u_maps[d], v_maps[d] : M_d → M_{d+1}`, over
/// `F_p`, up to degree `dims.len() - 1`.
pub fn present_from_action(
    prime: u32,
    dims: &[usize],
    u_maps: &[Matrix],
    v_maps: &[Matrix],
) -> Result<GradedModulePresentation> {
    if dims.is_empty() {
        return Err(Error::InvalidArgument("empty dimension table".into()));
    }
    let horizon = dims.len() - 1;
    if u_maps.len() < horizon || v_maps.len() < horizon {
        return Err(Error::InvalidArgument("need u and v maps out of every degree below the horizon".into()));
    }
    let pm = Some(prime as u64);
    for d in 0..horizon {
        let shape_ok = |m: &Matrix| m.rows() == dims[d + 1] && m.cols() == dims[d];
        if !shape_ok(&u_maps[d]) || !shape_ok(&v_maps[d]) {
            return Err(Error::InvalidArgument(format!("action maps out of degree {d} have the wrong shape")));
        }
        if d + 1 < horizon {
            let uv = u_maps[d + 1].mul(&v_maps[d]).reduce(pm);
            let vu = v_maps[d + 1].mul(&u_maps[d]).reduce(pm);
            if uv != vu {
                return Err(Error::InvalidModule(format!("u and v do not commute on degree {d}")));
            }
        }
    }

    // values[j][d - deg_j][a]: value of u^a v^{d-deg_j-a} e_j in M_d
    let mut gen_degrees: Vec<usize> = Vec::new();
    let mut values: Vec<Vec<Vec<Vec<i64>>>> = Vec::new();
    let mut relations = Vec::new();
    for d in 0..=horizon {
        for (j, vals) in values.iter_mut().enumerate() {
            let g = gen_degrees[j];
            let prev = &vals[d - 1 - g];
            let apply = |m: &Matrix, x: &[i64]| -> Vec<i64> {
                m.mul_vec(x).into_iter().map(|t| t.rem_euclid(prime as i64)).collect()
            };
            // v·(v^{d-1-g}) first, then u·(u^a v^{d-1-g-a}) at index a+1
            let mut next = vec![apply(&v_maps[d - 1], &prev[0])];
            next.extend(prev.iter().map(|x| apply(&u_maps[d - 1], x)));
            vals.push(next);
        }
        let mut image = Echelon::new(prime, dims[d]);
        for (j, vals) in values.iter().enumerate() {
            for x in &vals[d - gen_degrees[j]] {
                image.insert(FpVector::from_i64(prime, x));
            }
        }
        for k in 0..dims[d] {
            let e = FpVector::unit(prime, dims[d], k);
            if image.insert(e.clone()) {
                gen_degrees.push(d);
                values.push(vec![vec![e.to_i64()]]);
            }
        }
    }

    let free = Free { degrees: gen_degrees.clone() };
    let eval = |d: usize| -> Matrix {
        let mut cols = Vec::new();
        for (j, vals) in values.iter().enumerate() {
            if gen_degrees[j] <= d {
                cols.extend(vals[d - gen_degrees[j]].iter().cloned());
            }
        }
        Matrix::from_columns(dims[d], &cols)
    };
    for (d, x) in minimal_generators(&free, prime, horizon, |d| nullspace(&eval(d), prime)) {
        relations.push(Relation { degree: d, terms: to_terms(&free, d, &x) });
    }
    Ok(GradedModulePresentation { prime, generators: gen_degrees, relations, horizon, dims: dims.to_vec() })
}

/// Dimensions of `M_d` for `d = 0..=horizon`, recomputed from the
/// presentation.
pub fn hilbert_series(pres: &GradedModulePresentation, horizon: usize) -> Vec<usize> {
    let free = pres.free();
    let rels = pres.relation_vectors();
    let degs: Vec<usize> = pres.relations.iter().map(|r| r.degree).collect();
    let rel_free = Free { degrees: degs };
    (0..=horizon)
        .map(|d| {
            let m = free.map_matrix(&rel_free, &rels, d, pres.prime);
            free.dim(d) - crate::linalg::fp::rank_mod(&m, pres.prime)
        })
        .collect()
}

/// Generator degrees of each free module in a minimal resolution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BettiTable {
    pub degrees: Vec<Vec<usize>>,
    pub horizon: usize,
}

impl BettiTable {
    /// Ranks of the free modules.
    pub fn shape(&self) -> Vec<usize> {
        self.degrees.iter().map(Vec::len).collect()
    }

    /// Coefficients of `Σ_p (-1)^p Σ t^deg` up to `t^horizon`.
    pub fn euler_polynomial(&self) -> Vec<i64> {
        let mut out = vec![0; self.horizon + 1];
        for (p, degs) in self.degrees.iter().enumerate() {
            let sign = if p % 2 == 0 { 1 } else { -1 };
            for &d in degs {
                if d <= self.horizon {
                    out[d] += sign;
                }
            }
        }
        out
    }

    /// Whether `Σ_p (-1)^p Σ t^deg = H_M(t)·(1-t)²` up to the horizon.
    pub fn matches_hilbert(&self, hilbert: &[usize]) -> bool {
        let h: Vec<i64> = hilbert.iter().map(|&x| x as i64).collect();
        let times = |k: usize| -> i64 {
            let at = |i: isize| if i >= 0 { h.get(i as usize).copied().unwrap_or(0) } else { 0 };
            let k = k as isize;
            at(k) - 2 * at(k - 1) + at(k - 2)
        };
        let lhs = self.euler_polynomial();
        (0..=self.horizon.min(hilbert.len().saturating_sub(1))).all(|k| lhs[k] == times(k))
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<4} {:>5}  degrees", "F_i", "rank")?;
        for (p, degs) in self.degrees.iter().enumerate() {
            let list: Vec<String> = degs.iter().map(ToString::to_string).collect();
            writeln!(f, "{:<4} {:>5}  {}", format!("F_{p}"), degs.len(), list.join(" "))?;
        }
        Ok(())
    }
}

/// Number of trailing degrees below the horizon that must add no
/// generators before the resolution counts as stable.
const STABLE_WINDOW: usize = 3;

/// Minimal free resolution `0 → F_2 → F_1 → F_0 → M`, computed degreewise
/// up to the presentation's horizon.
pub fn minimal_free_resolution(pres: &GradedModulePresentation) -> Result<BettiTable> {
    let p = pres.prime;
    let horizon = pres.horizon;
    let f0 = pres.free();
    let rels = pres.relation_vectors();
    let f1 = Free { degrees: pres.relations.iter().map(|r| r.degree).collect() };
    let syz = minimal_generators(&f1, p, horizon, |d| nullspace(&f0.map_matrix(&f1, &rels, d, p), p));
    let f2 = Free { degrees: syz.iter().map(|(d, _)| *d).collect() };
    let syz_vecs: Vec<Vec<i64>> = syz.into_iter().map(|(_, x)| x).collect();
    for d in 0..=horizon {
        if !nullspace(&f1.map_matrix(&f2, &syz_vecs, d, p), p).is_empty() {
            return Err(Error::Linalg(format!("second syzygies are not free in degree {d}")));
        }
    }
    let reached = pres.generators.iter().chain(&f1.degrees).chain(&f2.degrees).copied().max().unwrap_or(0);
    if reached + STABLE_WINDOW > horizon {
        return Err(Error::HorizonTooSmall { horizon, reached });
    }
    Ok(BettiTable { degrees: vec![f0.degrees, f1.degrees, f2.degrees], horizon })
}

/// `max_p (max deg F_p − p)`.
pub fn cm_regularity(table: &BettiTable) -> Result<i64> {
    table
        .degrees
        .iter()
        .enumerate()
        .filter_map(|(p, degs)| degs.iter().max().map(|&d| d as i64 - p as i64))
        .max()
        .ok_or_else(|| Error::InvalidArgument("empty Betti table has no regularity".into()))
}

/// `CH^*(BG, M)` for the Klein four group as a graded `F_2[u, v]`-module,
/// presented from its degreewise data up to `horizon`.
pub fn klein_chow_presentation(m: &GModule, horizon: usize) -> Result<GradedModulePresentation> {
    let data = crate::chow::klein_chow_graded(m, horizon)?;
    present_from_action(2, &data.dims, &data.u_maps, &data.v_maps)
}

/// Free module `R^{⊕k}` generated in degree 0, as degreewise data.
pub fn free_module_data(p: u32, rank: usize, horizon: usize) -> (Vec<usize>, Vec<Matrix>, Vec<Matrix>) {
    let free = Free { degrees: vec![0; rank] };
    let dims: Vec<usize> = (0..=horizon).map(|d| free.dim(d)).collect();
    let mut us = Vec::new();
    let mut vs = Vec::new();
    for d in 0..horizon {
        let cols = |a: usize, b: usize| -> Matrix {
            let c: Vec<Vec<i64>> = (0..free.dim(d))
                .map(|k| {
                    let mut e = vec![0; free.dim(d)];
                    e[k] = 1;
                    free.shift(&e, d, a, b)
                })
                .collect();
            Matrix::from_columns(free.dim(d + 1), &c).reduce(Some(p as u64))
        };
        us.push(cols(1, 0));
        vs.push(cols(0, 1));
    }
    (dims, us, vs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gmodule::{omega_klein, omega_negative_klein};

    #[test]
    fn free_module() {
        let (dims, us, vs) = free_module_data(2, 1, 8);
        assert_eq!(&dims[..4], &[1, 2, 3, 4]);
        let pres = present_from_action(2, &dims, &us, &vs).unwrap();
        assert_eq!(pres.generators, vec![0]);
        assert!(pres.relations.is_empty());
        let betti = minimal_free_resolution(&pres).unwrap();
        assert_eq!(betti.shape(), vec![1, 0, 0]);
        assert_eq!(cm_regularity(&betti).unwrap(), 0);
        assert_eq!(hilbert_series(&pres, 8), dims);
    }

    #[test]
    fn zero_module() {
        let dims = vec![0; 5];
        let z = |_| Matrix::zeros(0, 0);
        let maps: Vec<Matrix> = (0..4).map(z).collect();
        let pres = present_from_action(2, &dims, &maps, &maps).unwrap();
        assert_eq!(hilbert_series(&pres, 4), dims);
        let betti = minimal_free_resolution(&pres).unwrap();
        assert!(cm_regularity(&betti).is_err());
    }

    #[test]
    fn omega_four() {
        let pres = klein_chow_presentation(&omega_klein(4).unwrap(), 10).unwrap();
        assert_eq!(pres.generators, vec![0; 4]);
        let betti = minimal_free_resolution(&pres).unwrap();
        assert_eq!(betti.degrees, vec![vec![0; 4], vec![1; 6], vec![3, 3]]);
        assert_eq!(cm_regularity(&betti).unwrap(), 1);
        let h = hilbert_series(&pres, 10);
        assert_eq!(&h[..4], &[4, 2, 0, 0]);
        assert!(betti.matches_hilbert(&h));
    }

    #[test]
    fn omega_negative_presentation() {
        let m = 2;
        let pres = klein_chow_presentation(&omega_negative_klein(m).unwrap(), 8).unwrap();
        assert_eq!(pres.generators, vec![0; m + 1]);
        assert_eq!(&hilbert_series(&pres, 3), &[m + 1, m + 3, m + 5, m + 7]);
        assert!(pres.relations.iter().all(|r| r.degree == 1 && r.terms.len() == 2));
        assert_eq!(pres.relations.len(), m - 1);
    }

    #[test]
    fn horizon_too_small() {
        let pres = klein_chow_presentation(&omega_klein(5).unwrap(), 5).unwrap();
        assert!(matches!(minimal_free_resolution(&pres), Err(Error::HorizonTooSmall { .. })));
    }

    #[test]
    fn quotient_by_v() {
        let dims = vec![1; 7];
        let u: Vec<Matrix> = (0..6).map(|_| Matrix::from_rows(&[vec![1]])).collect();
        let v: Vec<Matrix> = (0..6).map(|_| Matrix::from_rows(&[vec![0]])).collect();
        let pres = present_from_action(2, &dims, &u, &v).unwrap();
        assert_eq!(pres.relations, vec![Relation { degree: 1, terms: vec![Term { generator: 0, u: 0, v: 1, coeff: 1 }] }]);
        assert_eq!(hilbert_series(&pres, 6), dims);
        let betti = minimal_free_resolution(&pres).unwrap();
        assert_eq!(betti.degrees, vec![vec![0], vec![1], vec![]]);
        assert!(betti.matches_hilbert(&dims));
    }

    #[test]
    fn non_commuting_rejected() {
        let dims = vec![1, 2, 1];
        let u = vec![Matrix::from_rows(&[vec![1], vec![0]]), Matrix::from_rows(&[vec![1, 0]])];
        let v = vec![Matrix::from_rows(&[vec![0], vec![1]]), Matrix::from_rows(&[vec![1, 0]])];
        assert!(present_from_action(2, &dims, &u, &v).is_err());
    }
}

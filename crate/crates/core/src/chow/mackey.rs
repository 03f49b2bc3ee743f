//! Chow rings `CH^*(BH)` for the subgroups `H` of a cyclic or Klein four
//! group, with restriction and transfer in each degree.
//!
//! Every `H` here is trivial, cyclic (`Z[c]/(|H|c)`) or Klein four
//! (`Z[u,v]/(2u,2v)`). Ring generators are first Chern classes of
//! characters, so restriction is read off from restricted characters.
//! Restriction between any two of these rings is onto, hence the projection
//! formula gives `tr(res y) = [K:H]·y`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChowFamily {
    Trivial,
    Cyclic { order: usize },
    Klein,
}

/// `CH^*(BH)` as a quotient of a polynomial ring on degree-one generators,
/// each the first Chern class of a character `χ_j : H → Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChowPiece {
    pub subgroup: Vec<usize>,
    pub family: ChowFamily,
    pub generator_names: Vec<&'static str>,
    /// `χ_j(h)·|G|` for each parent element `h` (0 off the subgroup).
    #[serde(skip)]
    characters: Vec<Vec<usize>>,
}

impl ChowPiece {
    /// Exponent vectors of the additive basis in degree `i`.
    pub fn basis(&self, i: usize) -> Vec<Vec<usize>> {
        match self.family {
            ChowFamily::Trivial if i > 0 => Vec::new(),
            ChowFamily::Trivial => vec![vec![]],
            ChowFamily::Cyclic { .. } => vec![vec![i]],
            ChowFamily::Klein => (0..=i).rev().map(|a| vec![a, i - a]).collect(),
        }
    }

    /// Additive orders of the basis in degree `i` (0 for `Z`).
    pub fn orders(&self, i: usize) -> Vec<u64> {
        let d = match self.family {
            _ if i == 0 => 0,
            ChowFamily::Trivial => 0,
            ChowFamily::Cyclic { order } => order as u64,
            ChowFamily::Klein => 2,
        };
        vec![d; self.basis(i).len()]
    }

    fn order(&self) -> usize {
        self.subgroup.len()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MackeyChow {
    pub group: String,
    pub pieces: Vec<ChowPiece>,
    #[serde(skip)]
    parent: FiniteGroup,
}

fn reduce_col(v: &mut [i64], orders: &[u64]) {
    for (x, &d) in v.iter_mut().zip(orders) {
        if d != 0 {
            *x = x.rem_euclid(d as i64);
        }
    }
}

impl MackeyChow {
    /// Tables for every subgroup of a cyclic or Klein four group.
    pub fn new(g: &FiniteGroup) -> Result<Self> {
        let klein = *g == FiniteGroup::klein4();
        if !klein && g.cyclic_generator().is_none() {
            return Err(Error::UnsupportedFamily(format!("no Chow ring tables for {}", g.name())));
        }
        let n = g.order();
        let mut pieces = Vec::new();
        for h in g.subgroups() {
            let k = h.order();
            let piece = if k == 1 {
                ChowPiece {
                    subgroup: h.elements().to_vec(),
                    family: ChowFamily::Trivial,
                    generator_names: vec![],
                    characters: vec![],
                }
            } else if klein && k == 4 {
                // u = c_1 of the character dual to g, v of the one dual to h
                let chi = |which: usize| -> Vec<usize> {
                    (0..4).map(|x| if (x >> which) & 1 == 1 { 2 } else { 0 }).collect()
                };
                ChowPiece {
                    subgroup: h.elements().to_vec(),
                    family: ChowFamily::Klein,
                    generator_names: vec!["u", "v"],
                    characters: vec![chi(0), chi(1)],
                }
            } else {
                let emb = g.subgroup_group(&h);
                let gen = emb.to_parent[emb.group.cyclic_generator().expect("subgroups here are cyclic")];
                let mut chi = vec![0; n];
                let mut x = g.identity();
                for j in 0..k {
                    chi[x] = j * (n / k);
                    x = g.mul(x, gen);
                }
                ChowPiece {
                    subgroup: h.elements().to_vec(),
                    family: ChowFamily::Cyclic { order: k },
                    generator_names: vec!["c"],
                    characters: vec![chi],
                }
            };
            pieces.push(piece);
        }
        Ok(MackeyChow { group: g.name().to_string(), pieces, parent: g.clone() })
    }

    pub fn klein() -> Self {
        Self::new(&FiniteGroup::klein4()).expect("Klein four tables")
    }

    pub fn piece(&self, h: &Subgroup) -> Result<&ChowPiece> {
        self.pieces
            .iter()
            .find(|p| p.subgroup == h.elements())
            .ok_or_else(|| Error::NotSubgroup(format!("{:?} is not a subgroup of {}", h.elements(), self.group)))
    }

    /// `res^K_H` in degree `i` as a matrix on the monomial bases.
    pub fn restriction(&self, k: &Subgroup, h: &Subgroup, i: usize) -> Result<Matrix> {
        if !h.is_subset_of(k) {
            return Err(Error::NotSubgroup("restriction needs H ≤ K".into()));
        }
        let (pk, ph) = (self.piece(k)?, self.piece(h)?);
        let (bk, bh) = (pk.basis(i), ph.basis(i));
        let mut out = Matrix::zeros(bh.len(), bk.len());
        if i == 0 {
            out[(0, 0)] = 1;
            return Ok(out);
        }
        match ph.family {
            ChowFamily::Trivial => {}
            ChowFamily::Klein => {
                // H = K = G
                out = Matrix::identity(bk.len());
            }
            ChowFamily::Cyclic { order } => {
                let n = self.parent.order();
                let emb = self.parent.subgroup_group(h);
                let gen = emb.to_parent[emb.group.cyclic_generator().expect("cyclic")];
                // χ_j restricted to H is α_j·c_H with α_j = χ_j(gen)·|H|/|G|
                let alpha: Vec<u64> = pk.characters.iter().map(|chi| (chi[gen] * order / n) as u64).collect();
                for (col, mono) in bk.iter().enumerate() {
                    let mut coeff = 1u64;
                    for (a, &e) in alpha.iter().zip(mono) {
                        for _ in 0..e {
                            coeff = coeff * a % order as u64;
                        }
                    }
                    out[(0, col)] = coeff as i64;
                }
            }
        }
        Ok(out)
    }

    /// `tr^K_H` in degree `i`, from `res^K_H` being onto and
    /// `tr(res y) = [K:H]·y`.
    pub fn transfer(&self, h: &Subgroup, k: &Subgroup, i: usize) -> Result<Matrix> {
        let res = self.restriction(k, h, i)?;
        let (pk, ph) = (self.piece(k)?, self.piece(h)?);
        let index = (pk.order() / ph.order()) as i64;
        let orders_k = pk.orders(i);
        let orders_h = ph.orders(i);
        let mut cols = Vec::with_capacity(res.rows());
        for row in 0..res.rows() {
            // a monomial of K restricting to a unit multiple of basis element `row`
            let d = orders_h[row];
            let pick = (0..res.cols()).find_map(|c| {
                let a = res[(row, c)];
                if d == 0 {
                    (a == 1 || a == -1).then_some((c, a))
                } else {
                    let inv = (1..d as i64).find(|&t| (a * t).rem_euclid(d as i64) == 1)?;
                    Some((c, inv))
                }
            });
            let (c, scale) = pick.ok_or_else(|| Error::Linalg("restriction is not onto".into()))?;
            let mut col = vec![0i64; res.cols()];
            col[c] = index * scale;
            reduce_col(&mut col, &orders_k);
            cols.push(col);
        }
        Ok(Matrix::from_columns(res.cols(), &cols))
    }
}

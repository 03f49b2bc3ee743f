//! Twisted Chow groups `CH^i(BG, M)` for cyclic, Klein four and generalized
//! quaternion groups, Chow rings of `BH` with restriction and transfer, and
//! the twisted motivic cokernel for the Klein four group.

mod cyclic;
mod generation;
mod klein;
mod mackey;
mod motivic;
mod quaternion;

use serde::{Deserialize, Serialize};

use crate::abelian::GroupStructure;
use crate::cohomology::bar_cohomology_structure;
use crate::error::{Error, Result};
use crate::gmodule::GModule;
use crate::group::FiniteGroup;
use crate::linalg::{lattice, Matrix};

pub use cyclic::twisted_chow_cyclic;
pub use generation::{transfer_generation_check, GenerationReport};
pub use klein::{klein_chow_graded, twisted_chow_klein, twisted_chow_klein_bar, KleinChowGraded};
pub use mackey::{ChowFamily, ChowPiece, MackeyChow};
pub use motivic::{
    motivic_cokernel, twisted_motivic_klein, twisted_motivic_klein_details, twisted_motivic_klein_explicit,
    MotivicDetails,
};
pub use quaternion::{quaternion_odd_subgroup, twisted_chow_quaternion, QuaternionImage};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    ImageComputation,
    MotivicPipeline,
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed_form",
            Method::ImageComputation => "image_computation",
            Method::MotivicPipeline => "motivic_pipeline",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedChowResult {
    pub group: String,
    pub module: String,
    pub degree: usize,
    pub value: GroupStructure,
    pub method: Method,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<GroupStructure>,
    /// For answers computed as a subgroup of a cohomology group: the
    /// ambient group and the generators' coordinates in it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<GroupStructure>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<i64>>,
}

impl TwistedChowResult {
    pub(crate) fn new(group: &str, degree: usize, value: GroupStructure, method: Method) -> Self {
        TwistedChowResult {
            group: group.to_string(),
            module: String::new(),
            degree,
            value,
            method,
            oracle: None,
            ambient: None,
            generators: Vec::new(),
        }
    }

    pub fn with_module(mut self, name: impl Into<String>) -> Self {
        self.module = name.into();
        self
    }

    /// Whether the oracle, when present, agrees with the value.
    pub fn consistent(&self) -> bool {
        self.oracle.as_ref().is_none_or(|o| *o == self.value)
    }
}

fn quaternion_exponent_of(g: &FiniteGroup) -> Option<u32> {
    let n = g.order();
    let k = n.trailing_zeros();
    let is_q = n >= 8 && n.is_power_of_two() && FiniteGroup::quaternion(k).is_ok_and(|q| q == *g);
    is_q.then_some(k)
}

/// `CH^i(BG, M)` for whichever supported family `G` belongs to. With
/// `oracle`, an independent value is attached and checked: the periodic
/// resolution for cyclic groups, the bar complex for the Klein four group
/// and for quaternion groups in even degree.
pub fn twisted_chow(m: &GModule, i: usize, oracle: bool) -> Result<TwistedChowResult> {
    let g = m.group();
    if g.cyclic_generator().is_some() {
        return twisted_chow_cyclic(m, i, oracle);
    }
    let mut out = if *g == FiniteGroup::klein4() {
        let mut r = twisted_chow_klein(m, i)?;
        if oracle {
            r.oracle = Some(twisted_chow_klein_bar(m, i)?);
        }
        r
    } else if let Some(k) = quaternion_exponent_of(g) {
        let mut r = twisted_chow_quaternion(k, m, i)?;
        if oracle && i.is_multiple_of(2) {
            r.oracle = Some(bar_cohomology_structure(m, 2 * i)?);
        }
        r
    } else {
        return Err(Error::UnsupportedFamily(format!(
            "{} is not cyclic, Klein four or generalized quaternion",
            g.name()
        )));
    };
    if !out.consistent() {
        return Err(Error::OracleMismatch(format!(
            "CH^{i} = {} but the oracle gives {}",
            out.value,
            out.oracle.take().expect("oracle present")
        )));
    }
    Ok(out)
}

/// Structure of the subgroup of `⊕ Z/d_k` generated by the given
/// coordinate vectors (`d_k = 0` meaning `Z`).
pub(crate) fn subgroup_structure(
    orders: &[u64],
    gens: &[Vec<i64>],
) -> Result<crate::abelian::FiniteAbelianGroup> {
    let n = orders.len();
    let relations: Vec<Vec<i64>> = orders
        .iter()
        .enumerate()
        .filter(|(_, &d)| d != 0)
        .map(|(k, &d)| {
            let mut e = vec![0; n];
            e[k] = d as i64;
            e
        })
        .collect();
    let mut all = gens.to_vec();
    all.extend(relations.iter().cloned());
    let span = lattice::span_basis(&Matrix::from_columns(n, &all))?;
    lattice::quotient(&span, &Matrix::from_columns(n, &relations))
}

#[cfg(test)]
mod tests;

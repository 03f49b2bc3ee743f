//! Finitely generated abelian groups in invariant-factor form, and the
//! structure record reported for cohomology groups.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiniteAbelianGroup {
    free_rank: usize,
    torsion: Vec<u64>,
}

/// Canonical invariant factors `d_1 | d_2 | … ` with all `d_i > 1`.
pub fn canonical_invariants(orders: &[u64]) -> Vec<u64> {
    let mut d: Vec<u64> = orders.iter().copied().filter(|&x| x != 1).collect();
    assert!(!d.contains(&0), "zero is not a torsion order");
    // repeated gcd/lcm sweeps until the chain divides
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (d[i], d[j]);
            let g = a.gcd(&b);
            d[i] = g;
            d[j] = a / g * b;
        }
    }
    d.retain(|&x| x != 1);
    d
}

impl FiniteAbelianGroup {
    pub fn new(free_rank: usize, torsion: Vec<u64>) -> Self {
        FiniteAbelianGroup { free_rank, torsion: canonical_invariants(&torsion) }
    }

    pub fn trivial() -> Self {
        Self::new(0, vec![])
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, vec![])
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of a finite group.
    pub fn order(&self) -> Option<u128> {
        self.is_finite().then(|| self.torsion.iter().map(|&x| x as u128).product())
    }

    /// Exponent of a finite group (1 for the trivial group).
    pub fn exponent(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.last().copied().unwrap_or(1))
    }

    /// Number of cyclic factors.
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut t = self.torsion.clone();
        t.extend_from_slice(&other.torsion);
        Self::new(self.free_rank + other.free_rank, t)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = self.torsion[i];
            let k = self.torsion[i..].iter().take_while(|&&x| x == d).count();
            parts.push(if k == 1 { format!("Z/{d}") } else { format!("(Z/{d})^{k}") });
            i += k;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Structure of a cohomology group: an abelian group over `Z`, or an
/// `F_p`-vector space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupStructure {
    Abelian(FiniteAbelianGroup),
    Vector { dim: usize },
}

impl GroupStructure {
    pub fn is_trivial(&self) -> bool {
        match self {
            GroupStructure::Abelian(a) => a.is_trivial(),
            GroupStructure::Vector { dim } => *dim == 0,
        }
    }

    pub fn as_abelian(&self) -> Option<&FiniteAbelianGroup> {
        match self {
            GroupStructure::Abelian(a) => Some(a),
            GroupStructure::Vector { .. } => None,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            GroupStructure::Vector { dim } => Some(*dim),
            GroupStructure::Abelian(_) => None,
        }
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupStructure::Abelian(a) => write!(f, "{a}"),
            GroupStructure::Vector { dim } => write!(f, "dim {dim}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_forms() {
        assert_eq!(FiniteAbelianGroup::new(0, vec![8]).to_string(), "Z/8");
        assert_eq!(FiniteAbelianGroup::trivial().to_string(), "0");
        assert_eq!(FiniteAbelianGroup::new(2, vec![2, 2, 4]).to_string(), "Z^2 + (Z/2)^2 + Z/4");
        assert_eq!(GroupStructure::Vector { dim: 3 }.to_string(), "dim 3");
    }

    #[test]
    fn canonical_form_merges_coprime() {
        assert_eq!(FiniteAbelianGroup::new(0, vec![2, 3]).torsion(), &[6]);
        assert_eq!(FiniteAbelianGroup::new(0, vec![4, 2, 1]).torsion(), &[2, 4]);
    }

    #[test]
    fn json_shape() {
        let a = GroupStructure::Abelian(FiniteAbelianGroup::new(1, vec![2]));
        assert_eq!(serde_json::to_string(&a).unwrap(), r#"{"free_rank":1,"torsion":[2]}"#);
        let v = GroupStructure::Vector { dim: 4 };
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"dim":4}"#);
    }

    proptest! {
        #[test]
        fn order_preserved_and_chain_divides(v in proptest::collection::vec(1u64..30, 0..6)) {
            let g = FiniteAbelianGroup::new(0, v.clone());
            prop_assert_eq!(g.order().unwrap(), v.iter().map(|&x| x as u128).product::<u128>());
            for w in g.torsion().windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
        }
    }
}

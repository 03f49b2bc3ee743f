//! Finite groups given by Cayley tables, plus subgroup, coset and
//! double-coset combinatorics.
//!
//! Elements are integer indices `0..order`; labels are display names only.
//! Every group is validated exhaustively on construction, which is why the
//! order is capped at [`MAX_ORDER`].

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
    generators: Vec<usize>,
}

/// JSON group descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }
}

/// A subgroup re-indexed as a standalone group, with the maps back and forth.
#[derive(Clone, Debug)]
pub struct SubgroupEmbedding {
    pub group: FiniteGroup,
    pub subgroup: Subgroup,
    /// local index -> parent index
    pub to_parent: Vec<usize>,
    /// parent index -> local index
    pub from_parent: Vec<Option<usize>>,
}

impl SubgroupEmbedding {
    pub fn local(&self, parent_elem: usize) -> usize {
        self.from_parent[parent_elem].expect("element outside subgroup")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    pub elements: Vec<usize>,
    /// `K ∩ rep·H·rep⁻¹`
    pub intersection: Subgroup,
}

impl FiniteGroup {
    pub fn new(
        name: impl Into<String>,
        table: Vec<Vec<usize>>,
        generators: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let n = table.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::SizePolicy(format!("group order {n} outside 1..={MAX_ORDER}")));
        }
        if labels.len() != n {
            return Err(Error::InvalidGroup(format!("{} labels for order {n}", labels.len())));
        }
        for row in &table {
            if row.len() != n {
                return Err(Error::InvalidGroup("table is not square".into()));
            }
            if !is_permutation(row) {
                return Err(Error::InvalidGroup("table rows must be permutations".into()));
            }
        }
        for j in 0..n {
            let col: Vec<usize> = (0..n).map(|i| table[i][j]).collect();
            if !is_permutation(&col) {
                return Err(Error::InvalidGroup("table columns must be permutations".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|i| table[e][i] == i && table[i][e] == i))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let inverse: Vec<usize> = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap())
            .collect();
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::InvalidGroup("generator index out of range".into()));
        }
        let group = FiniteGroup { name: name.into(), table, identity, inverse, labels, generators };
        if group.closure(&group.generators).len() != n {
            return Err(Error::InvalidGroup("generators do not generate the group".into()));
        }
        Ok(group)
    }

    /// Cyclic group `Z/m` with generator `s`.
    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 || m > MAX_ORDER {
            return Err(Error::SizePolicy(format!("cyclic order {m} outside 1..={MAX_ORDER}")));
        }
        let table = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        let labels = (0..m)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            })
            .collect();
        let generators = if m == 1 { vec![] } else { vec![1] };
        Self::new(format!("C{m}"), table, generators, labels)
    }

    /// `Z/2 × Z/2 = ⟨g, h⟩`, elements ordered `1, g, h, gh`.
    pub fn klein4() -> Self {
        let table = (0..4).map(|i| (0..4).map(|j| i ^ j).collect()).collect();
        let labels = ["1", "g", "h", "gh"].iter().map(|s| s.to_string()).collect();
        Self::new("klein4", table, vec![1, 2], labels).expect("klein four table is valid")
    }

    /// Generalized quaternion group `Q_{2^m}` with `x` of order `2^{m-1}`,
    /// `y² = x^{2^{m-2}}` and `yxy⁻¹ = x⁻¹`. Element `x^a y^b` has index `b·2^{m-1} + a`.
    pub fn quaternion(m: u32) -> Result<Self> {
        if !(3..=6).contains(&m) {
            return Err(Error::SizePolicy(format!("quaternion exponent {m} outside 3..=6")));
        }
        let n = 1usize << (m - 1);
        let idx = |a: usize, b: usize| b * n + a;
        let mut table = vec![vec![0; 2 * n]; 2 * n];
        for b1 in 0..2 {
            for a1 in 0..n {
                for b2 in 0..2 {
                    for a2 in 0..n {
                        // x^a1 y^b1 x^a2 y^b2 = x^(a1 ± a2) y^(b1+b2)
                        let mut a = if b1 == 0 { a1 + a2 } else { a1 + n - a2 } % n;
                        let mut b = b1 + b2;
                        if b == 2 {
                            a = (a + n / 2) % n;
                            b = 0;
                        }
                        table[idx(a1, b1)][idx(a2, b2)] = idx(a, b);
                    }
                }
            }
        }
        let labels = (0..2 * n)
            .map(|i| {
                let (a, b) = (i % n, i / n);
                let xs = match a {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{a}"),
                };
                match (xs.is_empty(), b) {
                    (true, 0) => "1".to_string(),
                    (true, _) => "y".to_string(),
                    (false, 0) => xs,
                    (false, _) => format!("{xs}y"),
                }
            })
            .collect();
        Self::new(format!("Q{}", 2 * n), table, vec![1, n], labels)
    }

    pub fn from_descriptor(d: &GroupDescriptor) -> Result<Self> {
        if d.order != d.table.len() {
            return Err(Error::InvalidGroup(format!(
                "order {} disagrees with table size {}",
                d.order,
                d.table.len()
            )));
        }
        Self::new(d.name.clone(), d.table.clone(), d.generators.clone(), d.labels.clone())
    }

    pub fn to_descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            name: self.name.clone(),
            order: self.order(),
            table: self.table.clone(),
            generators: self.generators.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    /// `s·g·s⁻¹`
    pub fn conj(&self, s: usize, g: usize) -> usize {
        self.mul(self.mul(s, g), self.inv(s))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// An element generating the whole group, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        self.elements().find(|&a| self.element_order(a) == self.order())
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.order();
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Subgroup {
        Subgroup { elements: self.closure(gens) }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![self.identity] }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { elements: self.elements().collect() }
    }

    /// Validate an element set as a subgroup.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut els: Vec<usize> = elements.to_vec();
        els.sort_unstable();
        els.dedup();
        if els.iter().any(|&g| g >= self.order()) {
            return Err(Error::NotSubgroup("element index out of range".into()));
        }
        let set: BTreeSet<usize> = els.iter().copied().collect();
        if !set.contains(&self.identity) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        for &a in &els {
            if !set.contains(&self.inv(a)) {
                return Err(Error::NotSubgroup("not closed under inverse".into()));
            }
            for &b in &els {
                if !set.contains(&self.mul(a, b)) {
                    return Err(Error::NotSubgroup("not closed under multiplication".into()));
                }
            }
        }
        Ok(Subgroup { elements: els })
    }

    /// All subgroups, sorted by order and then by element set.
    ///
    /// Every subgroup is the join of its cyclic subgroups, so joins of
    /// cyclic subgroups are closed until nothing new appears.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        for g in self.elements() {
            found.insert(self.closure(&[g]));
        }
        loop {
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            let mut added = false;
            for (i, a) in current.iter().enumerate() {
                for b in &current[i + 1..] {
                    let mut gens = a.clone();
                    gens.extend_from_slice(b);
                    if found.insert(self.closure(&gens)) {
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|elements| Subgroup { elements }).collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        out
    }

    /// Representatives of left cosets `gH`, the minimal index in each coset,
    /// in increasing order.
    pub fn left_coset_reps(&self, h: &Subgroup) -> Vec<usize> {
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in h.elements() {
                covered[self.mul(g, x)] = true;
            }
        }
        reps
    }

    /// Representatives of right cosets `Hg`, minimal index per coset.
    pub fn right_coset_reps(&self, h: &Subgroup) -> Vec<usize> {
        let mut covered = vec![false; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if covered[g] {
                continue;
            }
            reps.push(g);
            for &x in h.elements() {
                covered[self.mul(x, g)] = true;
            }
        }
        reps
    }

    /// Index of the left-coset representative of `g` (w.r.t. `left_coset_reps(h)`).
    pub fn left_coset_index(&self, h: &Subgroup, reps: &[usize], g: usize) -> usize {
        let ginv = self.inv(g);
        reps.iter()
            .position(|&r| h.contains(self.mul(ginv, r)))
            .expect("coset representatives cover the group")
    }

    pub fn intersect(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        Subgroup { elements: a.elements.iter().copied().filter(|&g| b.contains(g)).collect() }
    }

    /// `s·H·s⁻¹`
    pub fn conjugate_subgroup(&self, s: usize, h: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = h.elements.iter().map(|&x| self.conj(s, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    /// Partition of the group into double cosets `K g H`.
    pub fn double_cosets(&self, k: &Subgroup, h: &Subgroup) -> Vec<DoubleCoset> {
        let mut covered = vec![false; self.order()];
        let mut out = Vec::new();
        for g in self.elements() {
            if covered[g] {
                continue;
            }
            let mut elements = BTreeSet::new();
            for &a in k.elements() {
                for &b in h.elements() {
                    let x = self.mul(self.mul(a, g), b);
                    covered[x] = true;
                    elements.insert(x);
                }
            }
            let intersection = self.intersect(k, &self.conjugate_subgroup(g, h));
            out.push(DoubleCoset {
                representative: g,
                elements: elements.into_iter().collect(),
                intersection,
            });
        }
        out
    }

    /// Re-index a subgroup as a standalone group.
    pub fn subgroup_group(&self, h: &Subgroup) -> SubgroupEmbedding {
        let to_parent = h.elements.clone();
        let mut from_parent = vec![None; self.order()];
        for (i, &g) in to_parent.iter().enumerate() {
            from_parent[g] = Some(i);
        }
        let table: Vec<Vec<usize>> = to_parent
            .iter()
            .map(|&a| to_parent.iter().map(|&b| from_parent[self.mul(a, b)].unwrap()).collect())
            .collect();
        let labels = to_parent.iter().map(|&g| self.labels[g].clone()).collect();
        let gens = minimal_generators(self, h)
            .into_iter()
            .map(|g| from_parent[g].unwrap())
            .collect();
        let name = format!("{}<{}>", self.name, h.elements.iter().map(|&g| self.label(g)).collect::<Vec<_>>().join(","));
        let group = FiniteGroup::new(name, table, gens, labels).expect("subgroup of a valid group");
        SubgroupEmbedding { group, subgroup: h.clone(), to_parent, from_parent }
    }
}

fn is_permutation(row: &[usize]) -> bool {
    let mut seen = vec![false; row.len()];
    for &x in row {
        if x >= row.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Greedy generating set: add the largest-order element not yet covered.
fn minimal_generators(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = g.closure(&gens);
    while span.len() < h.order() {
        let next = h
            .elements()
            .iter()
            .copied()
            .filter(|x| span.binary_search(x).is_err())
            .max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)))
            .unwrap();
        gens.push(next);
        span = g.closure(&gens);
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_subgroup_count(g: &FiniteGroup) -> usize {
        // enumerate subsets containing the identity (order ≤ 8 only)
        let n = g.order();
        let mut count = 0;
        for mask in 0u32..(1 << n) {
            if mask & (1 << g.identity()) == 0 {
                continue;
            }
            let els: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if g.subgroup(&els).is_ok() {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn cyclic_basics() {
        let c1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(c1.subgroups().len(), 1);
        let c2 = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(c2.mul(1, 1), c2.identity());
        let c4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(c4.subgroups().len(), 3);
        assert_eq!(brute_force_subgroup_count(&c4), 3);
        let c6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(c6.subgroups().len(), 4);
        assert_eq!(brute_force_subgroup_count(&c6), 4);
        assert!(FiniteGroup::cyclic(0).is_err());
        assert!(FiniteGroup::cyclic(65).is_err());
    }

    #[test]
    fn klein_basics() {
        let v = FiniteGroup::klein4();
        assert_eq!(v.subgroups().len(), 5);
        assert_eq!(brute_force_subgroup_count(&v), 5);
        let (g, h) = (1, 2);
        assert_eq!(v.mul(g, h), v.mul(h, g));
        for x in 1..4 {
            assert_eq!(v.element_order(x), 2);
        }
    }

    #[test]
    fn quaternion_basics() {
        let q = FiniteGroup::quaternion(3).unwrap();
        assert_eq!(q.order(), 8);
        let order2: Vec<usize> = q.elements().filter(|&a| q.element_order(a) == 2).collect();
        assert_eq!(order2.len(), 1);
        let (x, y) = (1, 4);
        assert_eq!(q.element_order(x), 4);
        assert_eq!(q.element_order(y), 4);
        assert_eq!(q.element_order(q.mul(x, y)), 4);
        assert_eq!(q.conj(y, x), q.inv(x));
        assert_eq!(q.label(q.mul(x, y)), "xy");
        assert_eq!(brute_force_subgroup_count(&q), q.subgroups().len());
        for m in 3..=6 {
            let q = FiniteGroup::quaternion(m).unwrap();
            let x = 1;
            assert_eq!(q.element_order(x), 1 << (m - 1));
            let n2 = q.subgroups().iter().filter(|s| s.order() == 2).count();
            assert_eq!(n2, 1, "Q_{} has one subgroup of order 2", 1 << m);
        }
        assert!(FiniteGroup::quaternion(2).is_err());
        assert!(FiniteGroup::quaternion(7).is_err());
    }

    #[test]
    fn subgroups_sorted_by_order() {
        let q = FiniteGroup::quaternion(4).unwrap();
        let subs = q.subgroups();
        assert!(subs.windows(2).all(|w| w[0].order() <= w[1].order()));
        assert_eq!(subs.first().unwrap().order(), 1);
        assert_eq!(subs.last().unwrap().order(), 16);
    }

    #[test]
    fn double_cosets_partition() {
        let q = FiniteGroup::quaternion(3).unwrap();
        let x = q.generated_subgroup(&[1]);
        let dc = q.double_cosets(&x, &x);
        assert_eq!(dc.len(), 2);
        assert_eq!(dc[0].representative, q.identity());
        assert_eq!(q.label(dc[1].representative), "y");
        assert!(dc.iter().all(|d| d.intersection == x));

        let whole = q.whole();
        let dc = q.double_cosets(&whole, &whole);
        assert_eq!(dc.len(), 1);
        assert_eq!(dc[0].representative, q.identity());

        let triv = q.trivial_subgroup();
        assert_eq!(q.double_cosets(&triv, &x).len(), 2);

        for a in q.subgroups() {
            for b in q.subgroups() {
                let total: usize = q.double_cosets(&a, &b).iter().map(|d| d.elements.len()).sum();
                assert_eq!(total, q.order());
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let q = FiniteGroup::quaternion(3).unwrap();
        let json = serde_json::to_string(&q.to_descriptor()).unwrap();
        let back: GroupDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(FiniteGroup::from_descriptor(&back).unwrap(), q);
    }

    #[test]
    fn rejects_bad_tables() {
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::new("bad", bad, vec![1], vec!["a".into(), "b".into()]).is_err());
        let ok = vec![vec![0, 1], vec![1, 0]];
        assert!(FiniteGroup::new("c2", ok.clone(), vec![], vec!["a".into(), "b".into()]).is_err());
        assert!(FiniteGroup::new("c2", ok, vec![1], vec!["a".into(), "b".into()]).is_ok());
    }

    #[test]
    fn subgroup_embedding_is_homomorphic() {
        let q = FiniteGroup::quaternion(3).unwrap();
        for h in q.subgroups() {
            let emb = q.subgroup_group(&h);
            for a in emb.group.elements() {
                for b in emb.group.elements() {
                    assert_eq!(emb.to_parent[emb.group.mul(a, b)], q.mul(emb.to_parent[a], emb.to_parent[b]));
                }
            }
        }
    }
}

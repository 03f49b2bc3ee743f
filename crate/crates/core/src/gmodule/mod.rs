//! Finite-rank modules over `Z` or `F_p` with an action of a finite group.

mod klein;
mod syzygy;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelianGroup;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupEmbedding};
use crate::linalg::{fp, lattice, smith, Matrix};

pub use klein::{koszul_differential, koszul_rank, l_zeta_klein, omega_negative_klein, omega_klein};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ring {
    Integers,
    PrimeField(u32),
}

impl Ring {
    pub const F2: Ring = Ring::PrimeField(2);

    pub fn modulus(self) -> Option<u64> {
        match self {
            Ring::Integers => None,
            Ring::PrimeField(p) => Some(p as u64),
        }
    }

    pub fn prime(self) -> Option<u32> {
        match self {
            Ring::Integers => None,
            Ring::PrimeField(p) => Some(p),
        }
    }

    pub fn parse(s: &str) -> Result<Ring> {
        match s.trim() {
            "Z" | "ZZ" | "integers" => Ok(Ring::Integers),
            "F2" => Ok(Ring::PrimeField(2)),
            "F3" => Ok(Ring::PrimeField(3)),
            "F5" => Ok(Ring::PrimeField(5)),
            other => Err(Error::Parse(format!("unknown ring `{other}` (expected Z, F2, F3 or F5)"))),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    ring: Ring,
    rank: usize,
    action: Vec<Matrix>,
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.ring == other.ring && self.action == other.action
    }
}

impl GModule {
    /// Build from a matrix for every group element, validating the
    /// homomorphism property exhaustively.
    pub fn from_action(group: Arc<FiniteGroup>, ring: Ring, rank: usize, action: Vec<Matrix>) -> Result<Self> {
        if let Ring::PrimeField(p) = ring {
            if ![2, 3, 5].contains(&p) {
                return Err(Error::InvalidModule(format!("prime {p} not supported (use 2, 3 or 5)")));
            }
        }
        if action.len() != group.order() {
            return Err(Error::InvalidModule("one matrix per group element required".into()));
        }
        let action: Vec<Matrix> = action.into_iter().map(|m| m.reduce(ring.modulus())).collect();
        if action.iter().any(|m| m.rows() != rank || m.cols() != rank) {
            return Err(Error::InvalidModule(format!("action matrices must be {rank}x{rank}")));
        }
        let module = GModule { group, ring, rank, action };
        module.validate()?;
        Ok(module)
    }

    /// Build from images of some elements (typically generators); the
    /// action is completed along the Cayley graph and then validated.
    pub fn from_generator_images(group: Arc<FiniteGroup>, ring: Ring, rank: usize, images: &[(usize, Matrix)]) -> Result<Self> {
        let n = group.order();
        for (g, m) in images {
            if *g >= n {
                return Err(Error::InvalidModule(format!("element index {g} out of range")));
            }
            if m.rows() != rank || m.cols() != rank {
                return Err(Error::InvalidModule(format!("action matrices must be {rank}x{rank}")));
            }
        }
        let mut action: Vec<Option<Matrix>> = vec![None; n];
        action[group.identity()] = Some(Matrix::identity(rank));
        let mut queue = vec![group.identity()];
        while let Some(a) = queue.pop() {
            for (g, m) in images {
                let ga = group.mul(*g, a);
                if action[ga].is_none() {
                    let prod = m.mul(action[a].as_ref().unwrap()).reduce(ring.modulus());
                    action[ga] = Some(prod);
                    queue.push(ga);
                }
            }
        }
        let action: Option<Vec<Matrix>> = action.into_iter().collect();
        let action = action.ok_or_else(|| Error::InvalidModule("given elements do not generate the group".into()))?;
        let module = Self::from_action(group, ring, rank, action)?;
        for (g, m) in images {
            if module.action[*g] != m.reduce(ring.modulus()) {
                return Err(Error::InvalidModule(format!(
                    "action of `{}` inconsistent with the group relations",
                    module.group.label(*g)
                )));
            }
        }
        Ok(module)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.action[g.identity()] != Matrix::identity(self.rank) {
            return Err(Error::InvalidModule("identity must act trivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                let prod = self.action[a].mul(&self.action[b]).reduce(self.ring.modulus());
                if prod != self.action[g.mul(a, b)] {
                    return Err(Error::InvalidModule(format!(
                        "action is not a homomorphism at ({}, {})",
                        g.label(a),
                        g.label(b)
                    )));
                }
            }
        }
        // with ρ(g)ρ(g⁻¹) = 1 checked above every matrix is invertible over the ring
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>, ring: Ring, rank: usize) -> Self {
        let action = vec![Matrix::identity(rank); group.order()];
        GModule { group, ring, rank, action }
    }

    /// `R[G/H]` on the left cosets of `H`.
    pub fn permutation(group: Arc<FiniteGroup>, h: &Subgroup, ring: Ring) -> Self {
        let reps = group.left_coset_reps(h);
        let r = reps.len();
        let action = group
            .elements()
            .map(|g| {
                let mut m = Matrix::zeros(r, r);
                for (i, &t) in reps.iter().enumerate() {
                    let k = group.left_coset_index(h, &reps, group.mul(g, t));
                    m[(k, i)] = 1;
                }
                m
            })
            .collect();
        GModule { group, ring, rank: r, action }
    }

    pub fn regular(group: Arc<FiniteGroup>, ring: Ring) -> Self {
        let t = group.trivial_subgroup();
        Self::permutation(group, &t, ring)
    }

    /// `(RG)^k` with basis `(block, element)` at index `block·|G| + element`.
    pub fn free(group: Arc<FiniteGroup>, ring: Ring, k: usize) -> Self {
        let reg = Self::regular(group, ring);
        let mut out = Self::zero(reg.group.clone(), ring);
        for _ in 0..k {
            out = out.direct_sum(&reg).expect("same group and ring");
        }
        out
    }

    pub fn zero(group: Arc<FiniteGroup>, ring: Ring) -> Self {
        Self::trivial(group, ring, 0)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &Matrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.action
    }

    pub fn modulus(&self) -> Option<u64> {
        self.ring.modulus()
    }

    pub fn same_setting(&self, other: &GModule) -> Result<()> {
        if *self.group != *other.group {
            return Err(Error::InvalidArgument("modules over different groups".into()));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        self.same_setting(other)?;
        let action = self.action.iter().zip(&other.action).map(|(a, b)| a.direct_sum(b)).collect();
        Ok(GModule { group: self.group.clone(), ring: self.ring, rank: self.rank + other.rank, action })
    }

    /// Contragredient module: `ρ*(g) = ρ(g⁻¹)ᵀ`.
    pub fn dual(&self) -> GModule {
        let action = self.group.elements().map(|g| self.action[self.group.inv(g)].transpose()).collect();
        GModule { group: self.group.clone(), ring: self.ring, rank: self.rank, action }
    }

    /// Change of rings `M ⊗ F_p` for a lattice.
    pub fn reduce_mod(&self, p: u32) -> Result<GModule> {
        if self.ring != Ring::Integers {
            return Err(Error::RingMismatch("reduction needs an integral module".into()));
        }
        Self::from_action(self.group.clone(), Ring::PrimeField(p), self.rank, self.action.clone())
    }

    /// Stack of `ρ(g) − I` over the given elements.
    fn invariance_system(&self, elems: &[usize]) -> Matrix {
        let mut sys = Matrix::zeros(0, self.rank);
        for &g in elems {
            sys = sys.vstack(&self.action[g].sub(&Matrix::identity(self.rank)));
        }
        sys.reduce(self.modulus())
    }

    /// Basis (as columns) of the fixed points of the elements of `h`;
    /// saturated over `Z`.
    pub fn fixed_points_of(&self, h: &Subgroup) -> Result<Matrix> {
        let sys = self.invariance_system(h.elements());
        match self.ring {
            Ring::Integers => lattice::kernel(&sys),
            Ring::PrimeField(p) => Ok(fp::nullspace_mod(&sys, p)),
        }
    }

    pub fn fixed_points(&self) -> Result<Matrix> {
        let gens: Vec<usize> = self.group.generators().to_vec();
        let sys = self.invariance_system(&gens);
        match self.ring {
            Ring::Integers => lattice::kernel(&sys),
            Ring::PrimeField(p) => Ok(fp::nullspace_mod(&sys, p)),
        }
    }

    /// `Σ_{h ∈ H} ρ(h)`.
    pub fn trace_matrix_of(&self, h: &Subgroup) -> Matrix {
        let mut t = Matrix::zeros(self.rank, self.rank);
        for &g in h.elements() {
            t = t.add(&self.action[g]);
        }
        t.reduce(self.modulus())
    }

    pub fn trace_matrix(&self) -> Matrix {
        self.trace_matrix_of(&self.group.whole())
    }

    /// `M^G / tr(M)`, the zeroth Tate cohomology group.
    pub fn trace_quotient(&self) -> Result<FiniteAbelianGroup> {
        let fixed = self.fixed_points()?;
        let tr = self.trace_matrix();
        match self.ring {
            Ring::Integers => lattice::quotient(&fixed, &tr),
            Ring::PrimeField(p) => {
                let dim = fixed.cols() - fp::rank_mod(&tr, p);
                Ok(FiniteAbelianGroup::new(0, vec![p as u64; dim]))
            }
        }
    }

    /// Restriction to `H`, re-indexed as a module over the standalone group
    /// of the embedding.
    pub fn restrict(&self, h: &Subgroup) -> (Arc<SubgroupEmbedding>, GModule) {
        let emb = Arc::new(self.group.subgroup_group(h));
        let m = self.restrict_along(&emb);
        (emb, m)
    }

    pub fn restrict_along(&self, emb: &SubgroupEmbedding) -> GModule {
        let action = emb.to_parent.iter().map(|&g| self.action[g].clone()).collect();
        GModule { group: Arc::new(emb.group.clone()), ring: self.ring, rank: self.rank, action }
    }

    /// `Ind_H^G N` with basis `t_i ⊗ n_j` (left coset representatives `t_i`)
    /// at index `i·rank(N) + j`.
    pub fn induce(parent: Arc<FiniteGroup>, emb: &SubgroupEmbedding, n: &GModule) -> Result<GModule> {
        if *n.group != emb.group {
            return Err(Error::InvalidArgument("module is not over the embedded subgroup".into()));
        }
        let h = &emb.subgroup;
        let reps = parent.left_coset_reps(h);
        let (r, k) = (reps.len(), n.rank);
        let action = parent
            .elements()
            .map(|g| {
                let mut m = Matrix::zeros(r * k, r * k);
                for (i, &t) in reps.iter().enumerate() {
                    let gt = parent.mul(g, t);
                    let j = parent.left_coset_index(h, &reps, gt);
                    let hh = parent.mul(parent.inv(reps[j]), gt);
                    let block = &n.action[emb.local(hh)];
                    for a in 0..k {
                        for b in 0..k {
                            m[(j * k + a, i * k + b)] = block[(a, b)];
                        }
                    }
                }
                m
            })
            .collect();
        Ok(GModule { group: parent, ring: n.ring, rank: r * k, action })
    }

    /// Submodule spanned by the given basis columns (which must be invariant),
    /// with the induced action in that basis.
    pub fn submodule(&self, basis: &Matrix) -> Result<GModule> {
        let action = self
            .group
            .elements()
            .map(|g| {
                let img = self.action[g].mul(basis).reduce(self.modulus());
                self.coordinates(basis, &img)
                    .ok_or_else(|| Error::InvalidModule("subspace is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GModule { group: self.group.clone(), ring: self.ring, rank: basis.cols(), action })
    }

    /// Coordinates `X` with `basis · X = y`.
    pub fn coordinates(&self, basis: &Matrix, y: &Matrix) -> Option<Matrix> {
        match self.ring {
            Ring::Integers => lattice::solve(basis, y).ok().flatten(),
            Ring::PrimeField(p) => fp::solve_mod(basis, y, p),
        }
    }

    /// Quotient `M / S` by an invariant subspace (field case) with the
    /// induced action on a complement of standard basis vectors.
    pub fn quotient_fp(&self, sub: &Matrix) -> Result<GModule> {
        let p = self.ring.prime().ok_or_else(|| Error::RingMismatch("quotient needs a field".into()))?;
        let sub = sub.select_columns(&fp::independent_columns(sub, p));
        let s = sub.cols();
        let mut ech = fp::Echelon::new(p, self.rank);
        for c in sub.columns() {
            ech.insert(fp::FpVector::from_i64(p, &c));
        }
        let comp: Vec<usize> =
            (0..self.rank).filter(|&i| ech.insert(fp::FpVector::unit(p, self.rank, i))).collect();
        // basis [sub | complement]; the quotient action is the lower-right block
        let full = sub.hstack(&Matrix::identity(self.rank).select_columns(&comp));
        let q = comp.len();
        let action = self
            .group
            .elements()
            .map(|g| {
                let img = self.action[g].mul(&full).reduce(Some(p as u64));
                let x = fp::solve_mod(&full, &img, p).expect("full basis");
                let mut m = Matrix::zeros(q, q);
                for a in 0..q {
                    for b in 0..q {
                        m[(a, b)] = x[(s + a, s + b)];
                    }
                }
                m
            })
            .collect();
        Ok(GModule { group: self.group.clone(), ring: self.ring, rank: q, action })
    }

    /// Dimension of `Hom_G(N, M)` over `F_p`.
    pub fn hom_dim(n: &GModule, m: &GModule) -> Result<usize> {
        n.same_setting(m)?;
        let p = m.ring.prime().ok_or_else(|| Error::RingMismatch("hom dimension needs a field".into()))?;
        let (a, b) = (m.rank, n.rank);
        // unknown X (a×b), vec index i·b + j; equations ρ_M(g)X − Xρ_N(g) = 0
        let mut sys = Matrix::zeros(0, a * b);
        for &g in m.group.generators() {
            let (rm, rn) = (&m.action[g], &n.action[g]);
            let mut block = Matrix::zeros(a * b, a * b);
            for i in 0..a {
                for j in 0..b {
                    let row = i * b + j;
                    for k in 0..a {
                        block[(row, k * b + j)] += rm[(i, k)];
                    }
                    for k in 0..b {
                        block[(row, i * b + k)] -= rn[(k, j)];
                    }
                }
            }
            sys = sys.vstack(&block);
        }
        Ok(a * b - fp::rank_mod(&sys.reduce(Some(p as u64)), p))
    }

    /// Basis of `I·M`, the span of `(ρ(g) − 1)M`.
    pub fn augmentation_submodule(&self) -> Matrix {
        let id = Matrix::identity(self.rank);
        let mut gens = Matrix::zeros(self.rank, 0);
        for g in self.group.elements() {
            gens = gens.hstack(&self.action[g].sub(&id));
        }
        let gens = gens.reduce(self.modulus());
        match self.ring {
            Ring::Integers => lattice::span_basis(&gens).expect("small integer span"),
            Ring::PrimeField(p) => gens.select_columns(&fp::independent_columns(&gens, p)),
        }
    }

    /// Whether `M` is a free `F_pG`-module (`G` a `p`-group).
    pub fn is_free_fp(&self) -> Result<bool> {
        let p = self.ring.prime().ok_or_else(|| Error::RingMismatch("freeness test needs a field".into()))?;
        if !self.group.is_p_group(p as usize) {
            return Err(Error::InvalidArgument("freeness test needs a p-group".into()));
        }
        let top = self.rank - self.augmentation_submodule().cols();
        Ok(top * self.group.order() == self.rank)
    }

    /// Whether every action matrix is a permutation matrix.
    pub fn is_permutation_basis(&self) -> bool {
        self.action.iter().all(|m| {
            (0..m.cols()).all(|j| {
                let col = m.column(j);
                col.iter().filter(|&&x| x == 1).count() == 1 && col.iter().all(|&x| x == 0 || x == 1)
            })
        })
    }

    /// Integer determinant check is implied by invertibility; exposed for tests.
    pub fn unimodular(&self) -> bool {
        self.ring != Ring::Integers
            || self.action.iter().all(|m| {
                smith::diagonalize(m, smith::Want::NONE)
                    .map(|d| d.rank == m.rows() && d.diagonal.iter().all(|&x| x == 1))
                    .unwrap_or(false)
            })
    }
}

#[cfg(test)]
mod tests;

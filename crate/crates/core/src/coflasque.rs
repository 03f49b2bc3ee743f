//! Coflasque and flasque lattices, coflasque resolutions
//! `0 → Q → P → M → 0`, and the explicit Klein-four lattices `A`, `B`, `P`.

use std::sync::Arc;

use crate::abelian::FiniteAbelianGroup;
use crate::cohomology::bar_cohomology_structure;
use crate::error::{Error, Result};
use crate::gmodule::{omega_negative_klein, GModule, Ring};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{fp, lattice, Matrix};

/// A subgroup with nonzero `H^1(H, M)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoflasqueWitness {
    pub subgroup: Subgroup,
    pub h1: FiniteAbelianGroup,
}

fn require_lattice(m: &GModule) -> Result<()> {
    if m.ring() != Ring::Integers {
        return Err(Error::RingMismatch("coflasque predicates are for lattices over Z".into()));
    }
    Ok(())
}

/// First subgroup (in `subgroups()` order) with `H^1(H, M) ≠ 0`, if any.
pub fn coflasque_witness(m: &GModule) -> Result<Option<CoflasqueWitness>> {
    require_lattice(m)?;
    for h in m.group().subgroups() {
        let (_, mh) = m.restrict(&h);
        let h1 = bar_cohomology_structure(&mh, 1)?;
        if !h1.is_trivial() {
            let h1 = h1.as_abelian().cloned().expect("integral cohomology");
            return Ok(Some(CoflasqueWitness { subgroup: h, h1 }));
        }
    }
    Ok(None)
}

pub fn is_coflasque(m: &GModule) -> Result<bool> {
    Ok(coflasque_witness(m)?.is_none())
}

pub fn flasque_witness(m: &GModule) -> Result<Option<CoflasqueWitness>> {
    coflasque_witness(&m.dual())
}

pub fn is_flasque(m: &GModule) -> Result<bool> {
    Ok(flasque_witness(m)?.is_none())
}

/// `0 → Q → P → M → 0` with `P = ⊕ Z[G/H_k]` a permutation lattice.
/// Over `F_p`, `P` and `Q` are lattices and `P → M` is reduction of an
/// integral map.
#[derive(Clone, Debug)]
pub struct CoflasqueResolution {
    pub module: GModule,
    pub permutation: GModule,
    /// Subgroup of each permutation summand, in basis order.
    pub summands: Vec<Subgroup>,
    /// `rank M × rank P`
    pub surjection: Matrix,
    pub kernel: GModule,
    /// `rank P × rank Q`, columns a basis of `Q` inside `P`
    pub inclusion: Matrix,
}

struct Summand {
    subgroup: Subgroup,
    generator: Vec<i64>,
}

fn summand_images(m: &GModule, s: &Summand) -> Vec<Vec<i64>> {
    let g = m.group();
    g.left_coset_reps(&s.subgroup).into_iter().map(|t| m.action(t).mul_vec(&s.generator)).collect()
}

fn assemble(m: &GModule, summands: &[Summand]) -> (GModule, Matrix) {
    let group = m.group_arc().clone();
    let mut p = GModule::zero(group.clone(), Ring::Integers);
    let mut cols = Vec::new();
    for s in summands {
        p = p.direct_sum(&GModule::permutation(group.clone(), &s.subgroup, Ring::Integers)).unwrap();
        cols.extend(summand_images(m, s));
    }
    let surj = Matrix::from_columns(m.rank(), &cols).reduce(m.modulus());
    (p, surj)
}

/// Whether `P^H → M^H` is onto for every subgroup `H`.
pub fn fixed_points_surject(m: &GModule, p: &GModule, surj: &Matrix) -> Result<bool> {
    for h in m.group().subgroups() {
        let target = m.fixed_points_of(&h)?;
        let source = p.fixed_points_of(&h)?;
        let img = surj.mul(&source).reduce(m.modulus());
        let ok = match m.ring() {
            Ring::Integers => {
                img.cols() >= target.cols()
                    && (target.cols() == 0 || lattice::solve(&img, &target)?.is_some())
            }
            Ring::PrimeField(q) => fp::rank_mod(&img, q) == target.cols(),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis of `{x ∈ Z^n : S·x ∈ pZ^k}` (or `ker S` over `Z`).
fn integral_kernel(m: &GModule, surj: &Matrix) -> Result<Matrix> {
    match m.ring() {
        Ring::Integers => lattice::kernel(surj),
        Ring::PrimeField(p) => {
            let n = surj.cols();
            let lifts = fp::nullspace_mod(surj, p);
            let gens = lifts.hstack(&Matrix::identity(n).scale(p as i64));
            lattice::span_basis(&gens)
        }
    }
}

impl CoflasqueResolution {
    /// One copy of `Z[G/H]` per basis vector of `M^H`, for every subgroup
    /// `H`; with `prune`, summands are dropped greedily (largest rank first)
    /// while all `P^H → M^H` stay onto.
    pub fn new(m: &GModule, prune: bool) -> Result<Self> {
        let g = m.group();
        let mut summands = Vec::new();
        for h in g.subgroups() {
            for v in m.fixed_points_of(&h)?.columns() {
                summands.push(Summand { subgroup: h.clone(), generator: v });
            }
        }
        if prune {
            let mut order: Vec<usize> = (0..summands.len()).collect();
            order.sort_by_key(|&i| (summands[i].subgroup.order(), std::cmp::Reverse(i)));
            let mut keep = vec![true; summands.len()];
            for i in order {
                keep[i] = false;
                let trial: Vec<Summand> = summands
                    .iter()
                    .zip(&keep)
                    .filter(|(_, &k)| k)
                    .map(|(s, _)| Summand { subgroup: s.subgroup.clone(), generator: s.generator.clone() })
                    .collect();
                let (p, surj) = assemble(m, &trial);
                if !fixed_points_surject(m, &p, &surj)? {
                    keep[i] = true;
                }
            }
            summands = summands.into_iter().zip(keep).filter(|(_, k)| *k).map(|(s, _)| s).collect();
        }
        let (p, surj) = assemble(m, &summands);
        let inclusion = integral_kernel(m, &surj)?;
        let kernel = p.submodule(&inclusion)?;
        Ok(CoflasqueResolution {
            module: m.clone(),
            permutation: p,
            summands: summands.into_iter().map(|s| s.subgroup).collect(),
            surjection: surj,
            kernel,
            inclusion,
        })
    }

    /// Exactness, `P^H ↠ M^H` for all `H`, and coflasqueness of `Q`.
    pub fn verify(&self) -> Result<ResolutionReport> {
        let m = &self.module;
        let composite_zero = self.surjection.mul(&self.inclusion).reduce(m.modulus()).is_zero();
        let onto = match m.ring() {
            Ring::Integers => {
                m.rank() == 0 || lattice::same_lattice(&self.surjection, &Matrix::identity(m.rank()))?
            }
            Ring::PrimeField(p) => fp::rank_mod(&self.surjection, p) == m.rank(),
        };
        let kernel_exact = match m.ring() {
            Ring::Integers => {
                self.inclusion.cols() + m.rank() == self.permutation.rank()
                    && (self.inclusion.cols() == 0 || lattice::is_saturated(&self.inclusion)?)
            }
            Ring::PrimeField(p) => {
                // index of Q in P equals |M| = p^rank
                let q = lattice::quotient(&Matrix::identity(self.permutation.rank()), &self.inclusion)?;
                q.is_finite() && q.order() == Some((p as u128).pow(m.rank() as u32))
            }
        };
        Ok(ResolutionReport {
            exact: composite_zero && onto && kernel_exact,
            fixed_points_onto: fixed_points_surject(m, &self.permutation, &self.surjection)?,
            kernel_coflasque: is_coflasque(&self.kernel)?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionReport {
    pub exact: bool,
    pub fixed_points_onto: bool,
    pub kernel_coflasque: bool,
}

impl ResolutionReport {
    pub fn all(&self) -> bool {
        self.exact && self.fixed_points_onto && self.kernel_coflasque
    }
}

/// The lattices around `0 → A → B → Ω^{-m}F_2 → 0` and `P → A` for the
/// Klein four group.
#[derive(Clone, Debug)]
pub struct CounterexampleLattices {
    pub m: usize,
    pub omega: GModule,
    pub b: GModule,
    /// `B → Ω^{-m}F_2`, `(2m+1) × (5m+1)`
    pub b_to_omega: Matrix,
    pub a: GModule,
    /// basis `s_1..s_{5m+1}` of `A` in `B`-coordinates
    pub a_in_b: Matrix,
    pub p: GModule,
    /// `P → A` in `s`-coordinates
    pub p_to_a: Matrix,
    /// `H_1 = ⟨g⟩, H_2 = ⟨h⟩, H_3 = ⟨gh⟩`
    pub cyclic_subgroups: [Subgroup; 3],
}

impl CounterexampleLattices {
    pub fn new(m: usize) -> Result<Self> {
        if !(2..=8).contains(&m) {
            return Err(Error::SizePolicy(format!("m = {m} outside 2..=8")));
        }
        let group = Arc::new(FiniteGroup::klein4());
        let omega = omega_negative_klein(m)?;
        let zg = GModule::regular(group.clone(), Ring::Integers);
        let mut b = GModule::zero(group.clone(), Ring::Integers);
        for _ in 0..m {
            b = b.direct_sum(&zg)?;
        }
        b = b.direct_sum(&GModule::trivial(group.clone(), Ring::Integers, m + 1))?;
        let rank_b = 5 * m + 1;
        // f_i (i ≤ m) is 1 in block i; f_{m+i} (i ≤ m+1) is the i-th trivial vector
        let f = |i: usize| if i <= m { 4 * (i - 1) } else { 4 * m + (i - m - 1) };
        let e = |i: usize| i - 1;
        let mut to_omega = Matrix::zeros(2 * m + 1, rank_b);
        for i in 1..=m {
            for x in 0..4 {
                let img = omega.action(x).column(e(m + 1 + i));
                for (r, v) in img.into_iter().enumerate() {
                    to_omega[(r, f(i) + x)] = v;
                }
            }
        }
        for i in 1..=m + 1 {
            to_omega[(e(i), f(m + i))] = 1;
        }
        let gf = |i: usize, x: usize| f(i) + x;
        let mut s: Vec<Vec<i64>> = Vec::with_capacity(rank_b);
        for i in 1..=2 * m + 1 {
            let mut v = vec![0; rank_b];
            v[f(i)] = 2;
            s.push(v);
        }
        for (x, extra) in [(1usize, vec![0usize]), (2, vec![1]), (3, vec![0, 1])] {
            for i in 1..=m {
                let mut v = vec![0; rank_b];
                v[gf(i, x)] += 1;
                v[f(i)] -= 1;
                for &o in &extra {
                    v[f(m + i + o)] -= 1;
                }
                s.push(v);
            }
        }
        let a_in_b = Matrix::from_columns(rank_b, &s);
        let a = b.submodule(&a_in_b)?;

        let cyclic_subgroups =
            [group.generated_subgroup(&[1]), group.generated_subgroup(&[2]), group.generated_subgroup(&[3])];
        let mut p = GModule::zero(group.clone(), Ring::Integers);
        let mut cols = Vec::new();
        for (k, h) in cyclic_subgroups.iter().enumerate() {
            for i in 1..=m {
                let mut gen = vec![0i64; rank_b];
                gen[i - 1] += 1;
                gen[(2 + k) * m + i] += 1;
                p = p.direct_sum(&GModule::permutation(group.clone(), h, Ring::Integers))?;
                for t in group.left_coset_reps(h) {
                    cols.push(a.action(t).mul_vec(&gen));
                }
            }
        }
        let p_to_a = Matrix::from_columns(rank_b, &cols);
        Ok(CounterexampleLattices { m, omega, b, b_to_omega: to_omega, a, a_in_b, p, p_to_a, cyclic_subgroups })
    }

    /// `ker(P → A)` with the induced action.
    pub fn p_kernel(&self) -> Result<GModule> {
        self.p.submodule(&lattice::kernel(&self.p_to_a)?)
    }

    /// `A` equals the kernel of `B → Ω^{-m}F_2`.
    pub fn a_is_kernel(&self) -> Result<bool> {
        let kernel = integral_kernel(&self.omega, &self.b_to_omega)?;
        let map_ok = self.b_to_omega.mul(&self.a_in_b).reduce(Some(2)).is_zero();
        Ok(map_ok && lattice::same_lattice(&kernel, &self.a_in_b)?)
    }

    /// `B → Ω^{-m}F_2` is a module map.
    pub fn b_map_equivariant(&self) -> bool {
        self.b.group().elements().all(|x| {
            let lhs = self.b_to_omega.mul(self.b.action(x)).reduce(Some(2));
            let rhs = self.omega.action(x).mul(&self.b_to_omega).reduce(Some(2));
            lhs == rhs
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(m: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(m).unwrap())
    }

    fn sign2() -> GModule {
        GModule::from_generator_images(cyclic(2), Ring::Integers, 1, &[(1, Matrix::from_rows(&[vec![-1]]))]).unwrap()
    }

    #[test]
    fn predicates() {
        let k = Arc::new(FiniteGroup::klein4());
        for h in k.subgroups() {
            let p = GModule::permutation(k.clone(), &h, Ring::Integers);
            assert!(is_coflasque(&p).unwrap());
            assert!(is_flasque(&p).unwrap());
        }
        let w = coflasque_witness(&sign2()).unwrap().unwrap();
        assert_eq!(w.subgroup.order(), 2);
        assert_eq!(w.h1, FiniteAbelianGroup::new(0, vec![2]));
        assert!(!is_flasque(&sign2()).unwrap());
        assert!(is_coflasque(&GModule::trivial(cyclic(5), Ring::Integers, 1)).unwrap());
        assert!(is_coflasque(&omega_negative_klein(1).unwrap()).is_err());
    }

    #[test]
    fn pruned_resolutions() {
        let z = GModule::trivial(cyclic(4), Ring::Integers, 1);
        let r = CoflasqueResolution::new(&z, true).unwrap();
        assert_eq!(r.permutation.rank(), 1);
        assert_eq!(r.kernel.rank(), 0);
        let r = CoflasqueResolution::new(&sign2(), true).unwrap();
        assert_eq!(r.permutation.rank(), 2);
        assert_eq!(r.kernel.rank(), 1);
        assert_eq!(r.kernel.action(1), &Matrix::identity(1));
        assert!(r.verify().unwrap().all());
    }

    #[test]
    fn unpruned_resolution_of_omega() {
        for m in 1..=3 {
            let om = omega_negative_klein(m).unwrap();
            let r = CoflasqueResolution::new(&om, false).unwrap();
            assert!(r.verify().unwrap().all());
            assert_eq!(r.kernel.rank(), r.permutation.rank());
        }
    }

    #[test]
    fn counterexample_structure() {
        for m in 2..=4 {
            let c = CounterexampleLattices::new(m).unwrap();
            assert!(c.b_map_equivariant());
            assert!(c.a_is_kernel().unwrap());
            assert_eq!(c.a.rank(), 5 * m + 1);
            assert_eq!(c.a.fixed_points().unwrap().cols(), 2 * m + 1);
            for h in &c.cyclic_subgroups {
                assert_eq!(c.a.fixed_points_of(h).unwrap().cols(), 3 * m + 1);
            }
            assert!(is_coflasque(&c.a).unwrap());
            assert!(is_coflasque(&c.p_kernel().unwrap()).unwrap());
            assert!(fixed_points_surject(&c.a, &c.p, &c.p_to_a).unwrap());
        }
        assert!(CounterexampleLattices::new(1).is_err());
    }
}

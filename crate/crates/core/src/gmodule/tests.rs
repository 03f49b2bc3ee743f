use std::sync::Arc;

use proptest::prelude::*;

use super::*;

fn klein() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::klein4())
}

fn cyclic(m: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(m).unwrap())
}

#[test]
fn permutation_extremes() {
    let g = klein();
    let whole = g.whole();
    let m = GModule::permutation(g.clone(), &whole, Ring::Integers);
    assert_eq!(m, GModule::trivial(g.clone(), Ring::Integers, 1));
    let reg = GModule::regular(g.clone(), Ring::Integers);
    assert_eq!(reg.rank(), 4);
    assert!(reg.is_permutation_basis());
    let sub_g = g.generated_subgroup(&[1]);
    let p = GModule::permutation(g.clone(), &sub_g, Ring::Integers);
    assert_eq!(p.rank(), 2);
    let fixed = p.fixed_points().unwrap();
    assert_eq!(fixed.cols(), 1);
    assert_eq!(fixed.column(0).iter().map(|x| x.abs()).collect::<Vec<_>>(), vec![1, 1]);
}

#[test]
fn fixed_point_dimensions() {
    let m = omega_negative_klein(3).unwrap();
    let fixed = m.fixed_points().unwrap();
    assert_eq!(fixed.cols(), 4);
    // spanned by e_1..e_4
    for c in fixed.columns() {
        assert!(c[4..].iter().all(|&x| x == 0));
    }
    assert_eq!(GModule::regular(klein(), Ring::F2).fixed_points().unwrap().cols(), 1);
    assert_eq!(GModule::trivial(klein(), Ring::Integers, 3).fixed_points().unwrap().cols(), 3);
}

#[test]
fn trace_quotients() {
    for m in 1..10 {
        let z = GModule::trivial(cyclic(m), Ring::Integers, 1);
        assert_eq!(z.trace_quotient().unwrap(), FiniteAbelianGroup::new(0, vec![m as u64]));
    }
    assert!(GModule::regular(klein(), Ring::F2).trace_quotient().unwrap().is_trivial());
    for m in 1..=6 {
        let t = omega_negative_klein(m).unwrap().trace_quotient().unwrap();
        assert_eq!(t.torsion(), vec![2u64; m + 1].as_slice());
    }
}

#[test]
fn trace_quotient_ignores_free_summands() {
    let g = Arc::new(FiniteGroup::quaternion(3).unwrap());
    let sign_like = GModule::trivial(g.clone(), Ring::Integers, 2);
    let with_free = sign_like.direct_sum(&GModule::free(g.clone(), Ring::Integers, 2)).unwrap();
    assert_eq!(sign_like.trace_quotient().unwrap(), with_free.trace_quotient().unwrap());
}

#[test]
fn induction_matches_permutation() {
    let g = Arc::new(FiniteGroup::quaternion(3).unwrap());
    for h in g.subgroups() {
        let emb = g.subgroup_group(&h);
        let triv = GModule::trivial(Arc::new(emb.group.clone()), Ring::Integers, 1);
        let ind = GModule::induce(g.clone(), &emb, &triv).unwrap();
        assert_eq!(ind, GModule::permutation(g.clone(), &h, Ring::Integers));
    }
    let c4 = cyclic(4);
    let h = c4.generated_subgroup(&[2]);
    let emb = c4.subgroup_group(&h);
    let n = GModule::trivial(Arc::new(emb.group.clone()), Ring::F2, 1);
    let ind = GModule::induce(c4, &emb, &n).unwrap();
    assert_eq!(ind.rank(), 2);
    assert_eq!(ind.fixed_points().unwrap().cols(), 1);
}

#[test]
fn restriction_enlarges_fixed_points() {
    let m = omega_negative_klein(2).unwrap();
    for h in m.group().subgroups() {
        let (_, r) = m.restrict(&h);
        assert!(r.fixed_points().unwrap().cols() >= m.fixed_points().unwrap().cols());
    }
}

#[test]
fn syzygy_of_free_is_zero() {
    let reg = GModule::free(klein(), Ring::F2, 2);
    assert_eq!(reg.syzygy().unwrap().rank(), 0);
    assert!(reg.is_free_fp().unwrap());
}

#[test]
fn syzygy_dimensions_klein() {
    let mut m = GModule::trivial(klein(), Ring::F2, 1);
    let mut c = m.clone();
    for n in 1..=4 {
        m = m.syzygy().unwrap();
        c = c.cosyzygy_fp().unwrap();
        assert_eq!(m.rank(), 2 * n + 1);
        assert_eq!(c.rank(), 2 * n + 1);
        // Tate fingerprint of Ω^{-n}: Ĥ^0 has dimension n+1
        let explicit = omega_negative_klein(n).unwrap();
        assert_eq!(c.trace_quotient().unwrap(), explicit.trace_quotient().unwrap());
        assert_eq!(omega_klein(n).unwrap().trace_quotient().unwrap(), m.trace_quotient().unwrap());
    }
}

#[test]
fn minimal_cover_needs_p_group() {
    let m = GModule::trivial(cyclic(3), Ring::F2, 1);
    assert!(m.syzygy().is_err());
    assert!(GModule::trivial(cyclic(3), Ring::Integers, 1).syzygy().is_ok());
}

#[test]
fn integral_syzygy_is_augmentation_ideal() {
    let g = Arc::new(FiniteGroup::quaternion(3).unwrap());
    let z = GModule::trivial(g, Ring::Integers, 1);
    let omega = z.syzygy().unwrap();
    assert_eq!(omega.rank(), 7);
    assert!(omega.unimodular());
}

#[test]
fn rejects_non_homomorphism() {
    let c3 = cyclic(3);
    let swap = Matrix::from_rows(&[vec![0, 1], vec![1, 0]]);
    assert!(GModule::from_generator_images(c3, Ring::Integers, 2, &[(1, swap)]).is_err());
    let c2 = cyclic(2);
    let sign = Matrix::from_rows(&[vec![-1]]);
    let m = GModule::from_generator_images(c2, Ring::Integers, 1, &[(1, sign)]).unwrap();
    assert!(m.fixed_points().unwrap().cols() == 0);
}

fn random_perm_module(g: &Arc<FiniteGroup>, ring: Ring, picks: &[usize]) -> GModule {
    let subs = g.subgroups();
    let mut m = GModule::zero(g.clone(), ring);
    for &i in picks {
        m = m.direct_sum(&GModule::permutation(g.clone(), &subs[i % subs.len()], ring)).unwrap();
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn frobenius_reciprocity(
        which in 0usize..2,
        p in prop_oneof![Just(2u32), Just(3)],
        h_pick in 0usize..8,
        n_picks in proptest::collection::vec(0usize..8, 1..3),
        m_picks in proptest::collection::vec(0usize..8, 1..3),
    ) {
        let g = if which == 0 { klein() } else { cyclic(6) };
        let ring = Ring::PrimeField(p);
        let subs = g.subgroups();
        let h = &subs[h_pick % subs.len()];
        let emb = g.subgroup_group(h);
        let hg = Arc::new(emb.group.clone());
        let n = random_perm_module(&hg, ring, &n_picks);
        let m = random_perm_module(&g, ring, &m_picks);
        let ind = GModule::induce(g.clone(), &emb, &n).unwrap();
        prop_assert_eq!(ind.rank(), n.rank() * g.order() / h.order());
        let lhs = GModule::hom_dim(&ind, &m).unwrap();
        let rhs = GModule::hom_dim(&n, &m.restrict_along(&emb)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

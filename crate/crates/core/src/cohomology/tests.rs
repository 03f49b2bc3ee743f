use std::sync::Arc;

use proptest::prelude::*;

use super::koszul::KleinKoszul;
use super::*;
use crate::gmodule::{omega_klein, omega_negative_klein};
use crate::group::FiniteGroup;

fn abelian(torsion: &[u64]) -> GroupStructure {
    GroupStructure::Abelian(FiniteAbelianGroup::new(0, torsion.to_vec()))
}

fn klein_f2() -> GModule {
    GModule::trivial(Arc::new(FiniteGroup::klein4()), Ring::F2, 1)
}

fn sign(m: usize) -> GModule {
    let g = Arc::new(FiniteGroup::cyclic(m).unwrap());
    GModule::from_generator_images(g, Ring::Integers, 1, &[(1, Matrix::from_rows(&[vec![-1]]))]).unwrap()
}

#[test]
fn coboundary_squares_to_zero() {
    let modules = [klein_f2(), omega_negative_klein(1).unwrap(), sign(4)];
    for m in &modules {
        let bar = BarComplex::new(m);
        for n in 0..4 {
            let dd = bar.coboundary(n + 1).unwrap().compose(&bar.coboundary(n).unwrap());
            let dd = match m.modulus() {
                Some(p) => dd.reduce(p),
                None => dd,
            };
            assert!(dd.is_zero(), "δ² ≠ 0 in degree {n}");
        }
        for n in 1..4 {
            let dd = bar.boundary(n).unwrap().compose(&bar.boundary(n + 1).unwrap());
            let dd = match m.modulus() {
                Some(p) => dd.reduce(p),
                None => dd,
            };
            assert!(dd.is_zero(), "∂² ≠ 0 in degree {n}");
        }
    }
}

#[test]
fn cyclic_trivial_integral() {
    for m in 2..7 {
        let z = GModule::trivial(Arc::new(FiniteGroup::cyclic(m).unwrap()), Ring::Integers, 1);
        assert_eq!(bar_cohomology(&z, 2).unwrap().structure(), &abelian(&[m as u64]));
        assert!(bar_cohomology_structure(&z, 1).unwrap().is_trivial());
        assert_eq!(cyclic_cohomology(&z, 2).unwrap(), abelian(&[m as u64]));
        assert!(cyclic_cohomology(&z, 3).unwrap().is_trivial());
    }
}

#[test]
fn sign_module_odd_degree() {
    let s = sign(2);
    assert_eq!(cyclic_cohomology(&s, 1).unwrap(), abelian(&[2]));
    assert_eq!(bar_cohomology_structure(&s, 1).unwrap(), abelian(&[2]));
    assert!(bar_cohomology_structure(&s, 2).unwrap().is_trivial());
}

#[test]
fn klein_trivial_dimensions() {
    let f = klein_f2();
    for n in 0..=4 {
        assert_eq!(bar_cohomology(&f, n).unwrap().structure().dim(), Some(n + 1));
    }
    let k = KleinKoszul::new(&f).unwrap();
    for n in 0..=12 {
        assert_eq!(k.cohomology_dim(n), n + 1);
    }
}

#[test]
fn bar_and_koszul_agree() {
    let mods = [omega_klein(1).unwrap(), omega_negative_klein(1).unwrap(), omega_negative_klein(2).unwrap()];
    for m in &mods {
        let k = KleinKoszul::new(m).unwrap();
        for n in 0..=3 {
            let bar = bar_cohomology_structure(m, n).unwrap().dim().unwrap();
            assert_eq!(bar, k.cohomology_dim(n), "degree {n}, rank {}", m.rank());
        }
    }
}

#[test]
fn tate_examples() {
    let f = klein_f2();
    assert_eq!(tate(&f, -1).unwrap().dim(), Some(1));
    for m in 1..=2 {
        let om = omega_negative_klein(m).unwrap();
        for i in 0..=2 {
            assert_eq!(tate(&om, i).unwrap().dim(), Some(i as usize + m + 1));
        }
    }
    let free = GModule::regular(Arc::new(FiniteGroup::klein4()), Ring::F2);
    for i in -3..=3 {
        assert!(tate(&free, i).unwrap().is_trivial(), "Ĥ^{i} of a free module");
    }
    let zfree = GModule::regular(Arc::new(FiniteGroup::cyclic(3).unwrap()), Ring::Integers);
    for i in -3..=3 {
        assert!(tate(&zfree, i).unwrap().is_trivial());
    }
    // Ĥ^{-2}(Z/m, Z) = H_1 = Z/m
    let z = GModule::trivial(Arc::new(FiniteGroup::cyclic(5).unwrap()), Ring::Integers, 1);
    assert_eq!(tate(&z, -2).unwrap(), abelian(&[5]));
    assert!(tate(&z, -1).unwrap().is_trivial());
}

#[test]
fn cup_products() {
    let f = klein_f2();
    let x = klein_monomial(&f, 1, 0);
    let y = klein_monomial(&f, 0, 1);
    let one = vec![1];
    assert_eq!(cup_with_trivial(&f, &one, 0, &f, &x, 1).unwrap(), x);
    assert_eq!(cup_with_trivial(&f, &x, 1, &f, &x, 1).unwrap(), klein_monomial(&f, 2, 0));
    assert_eq!(cup_with_trivial(&f, &x, 1, &f, &y, 1).unwrap(), klein_monomial(&f, 1, 1));
    let h2 = bar_cohomology(&f, 2).unwrap();
    let u = klein_monomial(&f, 2, 0);
    let v = klein_monomial(&f, 0, 2);
    let xy = klein_monomial(&f, 1, 1);
    let coords: Vec<Vec<i64>> = [u, v, xy].iter().map(|z| h2.coordinates(z).unwrap()).collect();
    let mat = Matrix::from_rows(&coords);
    assert_eq!(crate::linalg::fp::rank_mod(&mat, 2), 3);
}

#[test]
fn omega_products_vanish_in_degree_two() {
    let m = omega_klein(1).unwrap();
    let f = klein_f2();
    let h2 = bar_cohomology(&m, 2).unwrap();
    for m0 in m.fixed_points().unwrap().columns() {
        for (a, b) in [(2, 0), (0, 2)] {
            let mono = klein_monomial(&f, a, b);
            let prod = cup_with_trivial(&f, &mono, 2, &m, &m0, 0).unwrap();
            assert!(h2.is_zero_class(&prod).unwrap());
        }
    }
}

#[test]
fn chern_classes_of_characters() {
    for m in 2..7u64 {
        let g = FiniteGroup::cyclic(m as usize).unwrap();
        let z = GModule::trivial(Arc::new(g.clone()), Ring::Integers, 1);
        let h2 = bar_cohomology(&z, 2).unwrap();
        let trivial = character_chern(&g, &vec![0; m as usize], m).unwrap();
        assert!(h2.is_zero_class(&trivial).unwrap());
        let chi: Vec<u64> = (0..m).collect();
        let c = character_chern(&g, &chi, m).unwrap();
        let coords = h2.coordinates(&c).unwrap();
        assert_eq!(coords.len(), 1);
        assert_eq!(num_integer::Integer::gcd(&coords[0], &(m as i64)), 1, "faithful character generates");
    }
    let q8 = FiniteGroup::quaternion(3).unwrap();
    let y = q8.generated_subgroup(&[4]);
    let emb = q8.subgroup_group(&y);
    let hy = &emb.group;
    let gen = hy.cyclic_generator().unwrap();
    let mut chi = vec![0u64; 4];
    for k in 0..4 {
        chi[hy.pow(gen, k)] = k as u64;
    }
    let c = character_chern(hy, &chi, 4).unwrap();
    let z = GModule::trivial(Arc::new(hy.clone()), Ring::Integers, 1);
    let h2 = bar_cohomology(&z, 2).unwrap();
    assert_eq!(h2.structure(), &abelian(&[4]));
    let w = h2.coordinates(&c).unwrap()[0];
    assert_eq!(num_integer::Integer::gcd(&w, &4), 1);
    assert!(character_chern(hy, &[0, 1, 0, 0], 4).is_err());
}

#[test]
fn cor_res_index_quaternion() {
    let q8 = Arc::new(FiniteGroup::quaternion(3).unwrap());
    let z = GModule::trivial(q8.clone(), Ring::Integers, 1);
    let x = q8.generated_subgroup(&[1]);
    assert!(check_cor_res(&z, &x, 2).unwrap());
}

#[test]
fn double_coset_formula_small() {
    let q8 = Arc::new(FiniteGroup::quaternion(3).unwrap());
    let z = GModule::trivial(q8.clone(), Ring::Integers, 1);
    let x = q8.generated_subgroup(&[1]);
    let y = q8.generated_subgroup(&[4]);
    assert!(check_double_coset(&z, &x, &y, 2).unwrap());
    assert!(check_double_coset(&z, &x, &x, 2).unwrap());
}

#[test]
fn resource_cap_reported() {
    let q8 = Arc::new(FiniteGroup::quaternion(4).unwrap());
    let z = GModule::trivial(q8, Ring::Integers, 1);
    assert!(matches!(bar_cohomology(&z, 7), Err(Error::ResourceCap { .. })));
}

fn random_cyclic_module(m: usize, seed: &[i64]) -> GModule {
    // conjugate of a permutation module by a unimodular matrix
    let g = Arc::new(FiniteGroup::cyclic(m).unwrap());
    let rank = 2;
    let t = Matrix::from_rows(&[vec![1, seed[0]], vec![0, 1]]);
    let tinv = Matrix::from_rows(&[vec![1, -seed[0]], vec![0, 1]]);
    let base = if seed[1] % 2 == 0 {
        Matrix::from_rows(&[vec![0, 1], vec![1, 0]])
    } else {
        Matrix::from_rows(&[vec![-1, 0], vec![0, 1]])
    };
    let act = if m.is_multiple_of(2) { t.mul(&base).mul(&tinv) } else { Matrix::identity(rank) };
    GModule::from_generator_images(g, Ring::Integers, rank, &[(1, act)]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]
    #[test]
    fn bar_matches_periodic(m in 2usize..7, seed in proptest::collection::vec(-3i64..4, 2), n in 1usize..4) {
        let module = random_cyclic_module(m, &seed);
        prop_assert_eq!(bar_cohomology_structure(&module, n).unwrap(), cyclic_cohomology(&module, n).unwrap());
    }
}

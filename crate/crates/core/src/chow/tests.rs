use std::sync::Arc;

use super::*;
use crate::abelian::FiniteAbelianGroup;
use crate::cohomology::bar_cohomology_structure;
use crate::gmodule::{omega_klein, omega_negative_klein, GModule, Ring};
use crate::group::FiniteGroup;
use crate::linalg::Matrix;

fn torsion(t: &[u64]) -> GroupStructure {
    GroupStructure::Abelian(FiniteAbelianGroup::new(0, t.to_vec()))
}

fn cyclic(m: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(m).unwrap())
}

fn regular_mod_trivial(m: usize) -> GModule {
    let zg = GModule::regular(cyclic(m), Ring::Integers);
    zg.submodule(&zg.augmentation_submodule()).unwrap().dual()
}

#[test]
fn cyclic_closed_form() {
    for m in 2..=6 {
        let z = GModule::trivial(cyclic(m), Ring::Integers, 1);
        for i in 1..=3 {
            let r = twisted_chow_cyclic(&z, i, true).unwrap();
            assert_eq!(r.value, torsion(&[m as u64]));
            assert!(r.consistent());
        }
        assert_eq!(twisted_chow_cyclic(&z, 0, true).unwrap().value, GroupStructure::Abelian(FiniteAbelianGroup::free(1)));
    }
    let sign = GModule::from_generator_images(cyclic(2), Ring::Integers, 1, &[(1, Matrix::from_rows(&[vec![-1]]))]).unwrap();
    for i in 0..=3 {
        assert!(twisted_chow_cyclic(&sign, i, true).unwrap().value.is_trivial());
    }
    let q = regular_mod_trivial(4);
    assert_eq!(q.rank(), 3);
    let r = twisted_chow_cyclic(&q, 2, false).unwrap();
    assert_eq!(r.value, bar_cohomology_structure(&q, 4).unwrap());
    assert!(twisted_chow_cyclic(&GModule::trivial(Arc::new(FiniteGroup::klein4()), Ring::F2, 1), 1, false).is_err());
}

#[test]
fn klein_images() {
    let f = GModule::trivial(Arc::new(FiniteGroup::klein4()), Ring::F2, 1);
    let om = omega_klein(1).unwrap();
    for i in 0..=3 {
        assert_eq!(twisted_chow_klein(&f, i).unwrap().value.dim(), Some(i + 1));
        if i > 0 {
            assert_eq!(twisted_chow_klein(&om, i).unwrap().value.dim(), Some(0));
        }
    }
    for m in 1..=3 {
        let neg = omega_negative_klein(m).unwrap();
        assert_eq!(twisted_chow_klein(&neg, 1).unwrap().value.dim(), Some(m + 3));
    }
}

#[test]
fn klein_bar_oracle_agrees() {
    let mods = [
        GModule::trivial(Arc::new(FiniteGroup::klein4()), Ring::F2, 1),
        omega_klein(1).unwrap(),
        omega_negative_klein(1).unwrap(),
        omega_negative_klein(2).unwrap(),
    ];
    for m in &mods {
        for i in 0..=2 {
            assert_eq!(twisted_chow_klein_bar(m, i).unwrap(), twisted_chow_klein(m, i).unwrap().value);
        }
    }
}

#[test]
fn klein_graded_actions_commute() {
    let m = omega_klein(4).unwrap();
    let data = klein_chow_graded(&m, 5).unwrap();
    assert_eq!(&data.dims[..4], &[4, 2, 0, 0]);
    for d in 0..4 {
        let uv = data.u_maps[d + 1].mul(&data.v_maps[d]).reduce(Some(2));
        let vu = data.v_maps[d + 1].mul(&data.u_maps[d]).reduce(Some(2));
        assert_eq!(uv, vu);
    }
}

#[test]
fn quaternion_values() {
    let q8 = Arc::new(FiniteGroup::quaternion(3).unwrap());
    let z = GModule::trivial(q8.clone(), Ring::Integers, 1);
    assert_eq!(twisted_chow_quaternion(3, &z, 2).unwrap().value, torsion(&[8]));
    assert_eq!(twisted_chow_quaternion(3, &z, 1).unwrap().value, torsion(&[2, 2]));

    let om = z.syzygy_power(2).unwrap();
    let r = twisted_chow_quaternion(3, &om, 1).unwrap();
    assert_eq!(r.ambient, Some(torsion(&[8])));
    let GroupStructure::Abelian(img) = &r.value else { panic!("integral value") };
    assert_eq!(4 % img.exponent().unwrap(), 0, "image {img} must be killed by 4");
    assert!(twisted_chow_quaternion(4, &z, 1).is_err());
}

#[test]
fn mackey_tables() {
    let mk = MackeyChow::klein();
    let g = FiniteGroup::klein4();
    let whole = g.whole();
    let hg = g.generated_subgroup(&[1]);
    let res = mk.restriction(&whole, &hg, 2).unwrap();
    // basis u², uv, v²
    assert_eq!(res, Matrix::from_rows(&[vec![1, 0, 0]]));
    let hgh = g.generated_subgroup(&[3]);
    assert_eq!(mk.restriction(&whole, &hgh, 2).unwrap(), Matrix::from_rows(&[vec![1, 1, 1]]));
    assert_eq!(mk.transfer(&hg, &whole, 0).unwrap(), Matrix::from_rows(&[vec![2]]));
    assert!(mk.transfer(&hg, &whole, 1).unwrap().is_zero());
    let c6 = FiniteGroup::cyclic(6).unwrap();
    let mk6 = MackeyChow::new(&c6).unwrap();
    let sub = c6.generated_subgroup(&[2]);
    assert_eq!(mk6.transfer(&sub, &c6.whole(), 1).unwrap(), Matrix::from_rows(&[vec![2]]));
    assert_eq!(mk6.restriction(&c6.whole(), &sub, 2).unwrap(), Matrix::from_rows(&[vec![1]]));
}

#[test]
fn motivic_counterexample() {
    for m in 2..=3 {
        let (r, _) = twisted_motivic_klein_explicit(m, 1).unwrap();
        assert_eq!(r.value.dim(), Some(2 * m + 2));
        let (r2, _) = twisted_motivic_klein_explicit(m, 2).unwrap();
        assert_eq!(r2.value.dim(), Some(3 * (m + 1)));
    }
    let f = GModule::trivial(Arc::new(FiniteGroup::klein4()), Ring::F2, 1);
    for i in 1..=3 {
        assert_eq!(twisted_motivic_klein(&f, i).unwrap().value.dim(), Some(i + 1));
    }
}

#[test]
fn motivic_generic_resolution() {
    let neg = omega_negative_klein(2).unwrap();
    let r = twisted_motivic_klein(&neg, 1).unwrap();
    assert_eq!(r.value.dim(), Some(6));
}

#[test]
fn sign_exactness() {
    // Z → ZG → Z_sign for G = Z/2
    let g = FiniteGroup::cyclic(2).unwrap();
    let mk = MackeyChow::new(&g).unwrap();
    let sign = GModule::from_generator_images(cyclic(2), Ring::Integers, 1, &[(1, Matrix::from_rows(&[vec![-1]]))]).unwrap();
    let incl = Matrix::from_rows(&[vec![1], vec![1]]);
    for i in 0..=3 {
        let coker = motivic_cokernel(&mk, &g, &[g.whole()], &[g.trivial_subgroup()], &incl, i).unwrap();
        let chow = twisted_chow_cyclic(&sign, i, false).unwrap().value;
        assert_eq!(GroupStructure::Abelian(coker), chow, "degree {i}");
    }
}

#[test]
fn generation_by_transfers() {
    let f = GModule::trivial(Arc::new(FiniteGroup::klein4()), Ring::F2, 1);
    for m in [f, omega_negative_klein(1).unwrap(), omega_klein(1).unwrap()] {
        for i in 0..=2 {
            assert!(transfer_generation_check(&m, i).unwrap().equal);
        }
    }
    for n in 2..=5 {
        let z = GModule::trivial(cyclic(n), Ring::Integers, 1);
        assert!(transfer_generation_check(&z, 1).unwrap().equal);
        assert!(transfer_generation_check(&regular_mod_trivial(n), 1).unwrap().equal);
    }
    let q8 = Arc::new(FiniteGroup::quaternion(3).unwrap());
    let z = GModule::trivial(q8, Ring::Integers, 1);
    let r = transfer_generation_check(&z.syzygy_power(2).unwrap(), 1).unwrap();
    assert!(r.equal, "{r:?}");
    assert!(transfer_generation_check(&z, 1).unwrap().equal);
}

#[test]
fn dispatch_with_oracles() {
    let q8 = Arc::new(FiniteGroup::quaternion(3).unwrap());
    let z = GModule::trivial(q8, Ring::Integers, 1);
    let r = twisted_chow(&z, 2, true).unwrap();
    assert_eq!(r.oracle, Some(torsion(&[8])));
    assert!(twisted_chow(&z, 1, true).unwrap().oracle.is_none());
    let neg = omega_negative_klein(2).unwrap();
    assert_eq!(twisted_chow(&neg, 1, true).unwrap().oracle.and_then(|o| o.dim()), Some(5));
    assert!(twisted_chow(&GModule::trivial(cyclic(5), Ring::Integers, 1), 1, true).unwrap().consistent());
}

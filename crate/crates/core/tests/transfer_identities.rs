use std::sync::Arc;

use chowtwist::cohomology::{bar_cohomology, check_cor_res, check_double_coset};
use chowtwist::{FiniteAbelianGroup, FiniteGroup, GModule, GroupStructure, Ring};

fn q8() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::quaternion(3).unwrap())
}

fn omega2_z() -> GModule {
    GModule::trivial(q8(), Ring::Integers, 1).syzygy_power(2).unwrap()
}

#[test]
fn omega_two_over_q8_has_h2_z8() {
    let m = omega2_z();
    let h2 = bar_cohomology(&m, 2).unwrap();
    assert_eq!(h2.structure(), &GroupStructure::Abelian(FiniteAbelianGroup::new(0, vec![8])));
}

#[test]
fn cor_res_on_nontrivial_modules() {
    let g = q8();
    let m = omega2_z();
    for h in g.subgroups() {
        for n in 0..=2 {
            assert!(check_cor_res(&m, &h, n).unwrap(), "subgroup {:?} degree {n}", h.elements());
        }
    }
    let klein = Arc::new(FiniteGroup::klein4());
    let om = chowtwist::gmodule::omega_negative_klein(2).unwrap();
    let zg = GModule::regular(klein.clone(), Ring::Integers);
    for h in klein.subgroups() {
        for n in 0..=3 {
            assert!(check_cor_res(&om, &h, n).unwrap());
            assert!(check_cor_res(&zg, &h, n).unwrap());
        }
    }
}

#[test]
fn double_cosets_with_lattice_coefficients() {
    let g = q8();
    let m = omega2_z();
    let subs = g.subgroups();
    for k in &subs {
        for h in &subs {
            for n in 1..=2 {
                assert!(check_double_coset(&m, k, h, n).unwrap(), "K={:?} H={:?} n={n}", k.elements(), h.elements());
            }
        }
    }
}

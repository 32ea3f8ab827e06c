use cpcohom::catalog::catalog_group;
use cpcohom::cohomology::{Cocycle, GModule};
use cpcohom::extensions::realize_extension;
use cpcohom::group::{build_group, GroupSpec};
use cpcohom::iso::{are_isoclinic, are_isomorphic, automorphisms, cp_extension_isoclinism_classes, extensions_isoclinic};

#[test]
fn d4_and_q8() {
    let d4 = catalog_group("D4").unwrap();
    let q8 = catalog_group("Q8").unwrap();
    assert!(are_isomorphic(&d4, &q8).unwrap().is_none());
    assert!(are_isoclinic(&d4, &q8).unwrap().is_some());
}

#[test]
fn isomorphism_is_a_homomorphism() {
    let g = build_group(&GroupSpec::DirectProduct {
        factors: vec![GroupSpec::Abelian { invariants: vec![2] }, GroupSpec::Abelian { invariants: vec![3] }],
    })
    .unwrap();
    let h = catalog_group("C6").unwrap();
    let f = are_isomorphic(&g, &h).unwrap().expect("C2 x C3 is cyclic");
    for x in 0..6 {
        for y in 0..6 {
            assert_eq!(f[g.mul(x, y)], h.mul(f[x], f[y]));
        }
    }
}

#[test]
fn automorphism_orders() {
    for (name, order) in [("C2xC2", 6), ("C4", 2), ("S3", 6), ("D4", 8), ("Q8", 24)] {
        assert_eq!(automorphisms(&catalog_group(name).unwrap()).unwrap().order(), order, "{name}");
    }
}

#[test]
fn abelian_groups_form_one_family() {
    let k4 = catalog_group("C2xC2").unwrap();
    assert!(are_isoclinic(&k4, &catalog_group("C4").unwrap()).unwrap().is_some());
    assert!(are_isoclinic(&k4, &catalog_group("D4").unwrap()).unwrap().is_none());
}

#[test]
fn direct_factor_preserves_family() {
    let s3 = catalog_group("S3").unwrap();
    let s3c3 = catalog_group("S3xC3").unwrap();
    assert!(are_isoclinic(&s3, &s3c3).unwrap().is_some());
}

#[test]
fn central_extensions_of_c2() {
    let q = catalog_group("C2").unwrap();
    let m = GModule::trivial(&q, &[2]).unwrap();
    let split = realize_extension(&m, &Cocycle::zero(2, &[2])).unwrap();
    let cyclic = realize_extension(&m, &Cocycle::from_fn(2, &[2], |x, y| vec![(x == 1 && y == 1) as u64])).unwrap();
    assert!(extensions_isoclinic(&split, &cyclic).unwrap());
}

#[test]
fn class_counts() {
    assert_eq!(cp_extension_isoclinism_classes(&catalog_group("D4").unwrap()).unwrap().orbit_count, 1);
    let phi = cp_extension_isoclinism_classes(&catalog_group("Phi16a").unwrap()).unwrap();
    assert_eq!(phi.b0, vec![2]);
    assert_eq!(phi.subgroup_count, 2);
    assert_eq!(phi.orbit_count, 2);
}

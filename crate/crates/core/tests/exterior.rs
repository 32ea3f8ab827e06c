use cpcohom::catalog::catalog_group;
use cpcohom::cohomology::multiplier_invariants;
use cpcohom::exterior::{exterior_groups, exterior_report, multiplier_oracle, Variant};

#[test]
fn klein_four_squares() {
    let g = catalog_group("C2xC2").unwrap();
    let r = exterior_report(&g).unwrap();
    assert_eq!(r.wedge_order, 2);
    assert_eq!(r.curly_order, 1);
    assert_eq!(r.multipliers.m, vec![2]);
    assert!(r.multipliers.b0.is_empty());
}

#[test]
fn dihedral_squares() {
    let r = exterior_report(&catalog_group("D4").unwrap()).unwrap();
    assert_eq!(r.wedge_order, 4);
    assert_eq!(r.curly_order, 2);
    assert_eq!(r.derived_order, 2);
}

#[test]
fn quaternion_multiplier_vanishes() {
    let m = multiplier_oracle(&catalog_group("Q8").unwrap()).unwrap();
    assert!(m.m.is_empty());
    assert!(m.b0.is_empty());
}

#[test]
fn commutator_map_kernel_is_multiplier() {
    let g = catalog_group("S3").unwrap();
    let sq = exterior_groups(&g, Variant::Wedge).unwrap();
    assert_eq!(sq.kernel().len(), 1);
    assert_eq!(sq.group.order(), 3);
}

#[test]
fn oracle_agrees_on_order_24() {
    for name in ["SL(2,3)", "S4", "D4xC3", "Q8xC3"] {
        let g = catalog_group(name).unwrap();
        let a = multiplier_oracle(&g).unwrap();
        assert!(a.same_invariants(&multiplier_invariants(&g).unwrap()), "{name}");
    }
}

#[test]
fn oracle_refuses_large_groups() {
    assert!(multiplier_oracle(&catalog_group("Phi16a").unwrap()).is_err());
}

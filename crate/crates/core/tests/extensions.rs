use cpcohom::catalog::{catalog_group, lookup};
use cpcohom::cohomology::{Cocycle, GModule};
use cpcohom::covers::{cp_cover, verify_cover};
use cpcohom::extensions::{check_cp_extension, realize_extension, ExtensionBundle};
use cpcohom::group::FiniteGroup;
use cpcohom::verify::non_cp_example;
use cpcohom::Result;

fn resolve(name: &str) -> Result<FiniteGroup> {
    catalog_group(name)
}

#[test]
fn trivial_cocycle_gives_direct_product() {
    let q = catalog_group("C2").unwrap();
    let m = GModule::trivial(&q, &[2]).unwrap();
    let ext = realize_extension(&m, &Cocycle::zero(2, &[2])).unwrap();
    assert_eq!(ext.group.order(), 4);
    assert!(ext.group.exponent() == 2);
    assert!(ext.is_central());
}

#[test]
fn nontrivial_cocycle_gives_cyclic_group() {
    let q = catalog_group("C2").unwrap();
    let m = GModule::trivial(&q, &[2]).unwrap();
    let c = Cocycle::from_fn(2, &[2], |x, y| vec![(x == 1 && y == 1) as u64]);
    let ext = realize_extension(&m, &c).unwrap();
    assert_eq!(ext.group.exponent(), 4);
    assert!(check_cp_extension(&ext).unwrap().is_cp);
}

#[test]
fn non_cp_example_is_detected() {
    let ext = non_cp_example().unwrap();
    let c = check_cp_extension(&ext).unwrap();
    assert!(!c.is_cp);
    assert_eq!(c.witness, Some((1, 2)));
}

#[test]
fn phi16_cover_passes_all_checks() {
    let cover = cp_cover(&catalog_group("Phi16b").unwrap()).unwrap();
    let r = verify_cover(&cover).unwrap();
    assert_eq!(r.order, 128);
    assert!(r.passed(), "{:?}", r.checks());
}

#[test]
fn perfect_group_is_its_own_cover() {
    let cover = cp_cover(&catalog_group("A5").unwrap()).unwrap();
    assert_eq!(cover.group.order(), 60);
}

#[test]
fn bundle_round_trip() {
    let cover = cp_cover(&catalog_group("Phi16a").unwrap()).unwrap();
    let bundle = ExtensionBundle::from_extension(&cover);
    let text = serde_json::to_string(&bundle).unwrap();
    let back: ExtensionBundle = serde_json::from_str(&text).unwrap();
    let ext = back.realize(resolve).unwrap();
    assert_eq!(ext.group.table(), cover.group.table());
    assert!(verify_cover(&ext).unwrap().passed());
}

#[test]
fn bundle_base_may_be_a_catalog_name() {
    let q = catalog_group("C2xC2").unwrap();
    let m = GModule::trivial(&q, &[2]).unwrap();
    let ext = realize_extension(&m, &Cocycle::zero(4, &[2])).unwrap();
    let mut bundle = ExtensionBundle::from_extension(&ext);
    bundle.base = serde_json::Value::String(lookup("C2xC2").unwrap().name.clone());
    assert_eq!(bundle.realize(resolve).unwrap().group.order(), 8);
}

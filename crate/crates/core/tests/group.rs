use cpcohom::catalog::{catalog, catalog_group, lookup};
use cpcohom::coset::{enumerate, simplify, Presentation};
use cpcohom::group::{build_group, parse_word, GroupSpec};
use num_bigint::BigInt;
use cpcohom::Rational;

fn presentation(gens: usize, rels: &[&str]) -> Presentation {
    Presentation {
        generators: gens,
        relators: rels.iter().map(|r| parse_word(r, gens).unwrap()).collect(),
    }
}

#[test]
fn every_catalog_entry_builds_with_its_stated_order() {
    for e in catalog() {
        let g = e.build().unwrap();
        assert_eq!(g.order(), e.order(), "{}", e.name);
        g.validate().unwrap();
    }
}

#[test]
fn lookup_ignores_case() {
    assert_eq!(lookup("q8").unwrap().name, "Q8");
    assert!(lookup("no-such-group").is_none());
}

#[test]
fn dihedral_eight_structure() {
    let g = catalog_group("D4").unwrap();
    assert_eq!(g.center().len(), 2);
    assert_eq!(g.derived().len(), 2);
    assert_eq!(g.class_count(), 5);
    assert_eq!(g.exponent(), 4);
    assert_eq!(g.prime_power(), Some(2));
    assert_eq!(g.abelianization().invariants, vec![2, 2]);
    assert_eq!(g.commuting_probability(), Rational::new(BigInt::from(5), BigInt::from(8)));
}

#[test]
fn coset_enumeration_counts_s3() {
    let t = enumerate(&presentation(2, &["aaa", "bb", "abab"]), 1000).unwrap();
    assert_eq!(t.len(), 6);
}

#[test]
fn coset_enumeration_of_trivial_group() {
    let t = enumerate(&presentation(2, &["a", "abAB", "b"]), 100).unwrap();
    assert_eq!(t.len(), 1);
}

#[test]
fn simplification_removes_killed_generators() {
    let s = simplify(&presentation(3, &["c", "aaaa", "bb", "abab"]));
    assert!(s.presentation.generators <= 2);
    assert_eq!(s.images.len(), 3);
}

#[test]
fn maximal_abelian_subgroups_of_d4() {
    let g = catalog_group("D4").unwrap();
    let mut sizes: Vec<usize> = g.maximal_abelian_subgroups(64).unwrap().iter().map(|s| s.len()).collect();
    sizes.sort();
    assert_eq!(sizes, vec![4, 4, 4]);
}

#[test]
fn quotient_by_center() {
    let g = catalog_group("Q8").unwrap();
    let (q, proj) = g.quotient(g.center()).unwrap();
    assert_eq!(q.order(), 4);
    assert!(q.is_abelian());
    assert_eq!(proj.len(), 8);
}

#[test]
fn direct_product_orders_multiply() {
    let spec = GroupSpec::DirectProduct {
        factors: vec![GroupSpec::Abelian { invariants: vec![3] }, GroupSpec::Abelian { invariants: vec![4] }],
    };
    let g = build_group(&spec).unwrap();
    assert_eq!(g.order(), 12);
    assert_eq!(g.abelianization().invariants, vec![12]);
}

#[test]
fn minimal_generators() {
    assert_eq!(catalog_group("C2xC2xC2").unwrap().minimal_generator_count(4).unwrap(), 3);
    assert_eq!(catalog_group("S4").unwrap().minimal_generator_count(4).unwrap(), 2);
}

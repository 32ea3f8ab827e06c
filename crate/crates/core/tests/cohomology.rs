use std::collections::HashSet;

use cpcohom::cohomology::{
    cohomology_group, cp_two_cocycles, multiplier_invariants, two_coboundaries, two_cocycles, uct_decomposition,
    Cocycle, CocycleSystem, GModule,
};
use cpcohom::group::{build_group, FiniteGroup, GroupSpec};

fn abelian(inv: &[u64]) -> FiniteGroup {
    build_group(&GroupSpec::Abelian { invariants: inv.to_vec() }).unwrap()
}

fn perm(gens: Vec<Vec<usize>>) -> FiniteGroup {
    build_group(&GroupSpec::Permutation { generators: gens }).unwrap()
}

fn d4() -> FiniteGroup {
    perm(vec![vec![2, 3, 4, 1], vec![3, 2, 1, 4]])
}

fn q8() -> FiniteGroup {
    build_group(&GroupSpec::Presentation {
        generators: 2,
        relators: vec!["aaaa".into(), "aaBB".into(), "abaB".into()],
    })
    .unwrap()
}

/// Every normalized cochain of a small module, by brute force.
fn all_cochains(m: &GModule) -> Vec<Cocycle> {
    let n = m.group().order();
    let elems = m.elements();
    let slots = (n - 1) * (n - 1);
    let total = elems.len().pow(slots as u32);
    (0..total)
        .map(|mut code| {
            let mut c = Cocycle::zero(n, m.moduli());
            for x in 1..n {
                for y in 1..n {
                    c.set(x, y, &elems[code % elems.len()]);
                    code /= elems.len();
                }
            }
            c
        })
        .collect()
}

fn all_coboundaries(m: &GModule) -> HashSet<Vec<Vec<u64>>> {
    let q = m.group();
    let n = q.order();
    let elems = m.elements();
    let total = elems.len().pow((n - 1) as u32);
    (0..total)
        .map(|mut code| {
            let mut phi = vec![elems[0].clone()];
            for _ in 1..n {
                phi.push(elems[code % elems.len()].clone());
                code /= elems.len();
            }
            let mut table = Vec::new();
            for x in 1..n {
                for y in 1..n {
                    let v = m.add(&m.add(&m.act(x, &phi[y]), &m.neg(&phi[q.mul(x, y)])), &phi[x]);
                    table.push(v);
                }
            }
            table
        })
        .collect()
}

/// CP condition by enumerating `Im(x - 1) + Im(y - 1)`.
fn is_cp_brute(m: &GModule, c: &Cocycle) -> bool {
    let q = m.group();
    let elems = m.elements();
    for x in 1..q.order() {
        for y in 1..q.order() {
            if x == y || !q.commute(x, y) {
                continue;
            }
            let diff = m.add(c.value(x, y), &m.neg(c.value(y, x)));
            let found = elems.iter().any(|a| {
                elems.iter().any(|b| {
                    let da = m.add(&m.act(x, a), &m.neg(a));
                    let db = m.add(&m.act(y, b), &m.neg(b));
                    m.add(&da, &db) == diff
                })
            });
            if !found {
                return false;
            }
        }
    }
    true
}

struct Brute {
    z2: usize,
    b2: usize,
    z2_cp: usize,
}

fn brute(m: &GModule) -> Brute {
    let cocycles: Vec<Cocycle> = all_cochains(m).into_iter().filter(|c| c.check(m).is_ok()).collect();
    let z2_cp = cocycles.iter().filter(|c| is_cp_brute(m, c)).count();
    Brute {
        z2: cocycles.len(),
        b2: all_coboundaries(m).len(),
        z2_cp,
    }
}

fn check_against_brute(m: &GModule) {
    let b = brute(m);
    let sys = CocycleSystem::new(m).unwrap();
    assert_eq!(sys.cocycles().order_u128().unwrap(), b.z2 as u128, "Z2");
    assert_eq!(sys.coboundaries().order_u128().unwrap(), b.b2 as u128, "B2");
    assert_eq!(sys.cp_cocycles().order_u128().unwrap(), b.z2_cp as u128, "Z2_CP");
}

#[test]
fn c2_with_z2() {
    let q = abelian(&[2]);
    let m = GModule::trivial(&q, &[2]).unwrap();
    assert_eq!(two_cocycles(&m).unwrap().order_u128(), Some(2));
    assert_eq!(two_coboundaries(&m).unwrap().order_u128(), Some(1));
    assert_eq!(cohomology_group(&m, false).unwrap().invariants(), &[2]);
    check_against_brute(&m);
}

#[test]
fn klein_four_with_z2() {
    let q = abelian(&[2, 2]);
    let m = GModule::trivial(&q, &[2]).unwrap();
    // homomorphisms to Z/2 are the kernel of the coboundary map, so B2 has order 2
    assert_eq!(two_cocycles(&m).unwrap().order_u128(), Some(16));
    assert_eq!(two_coboundaries(&m).unwrap().order_u128(), Some(2));
    assert_eq!(cohomology_group(&m, false).unwrap().order(), 8);
    assert_eq!(cohomology_group(&m, true).unwrap().order(), 4);
    check_against_brute(&m);
}

#[test]
fn zero_module_is_trivial() {
    let m = GModule::trivial(&d4(), &[]).unwrap();
    assert_eq!(two_cocycles(&m).unwrap().order_u128(), Some(1));
    assert!(cohomology_group(&m, true).unwrap().quotient.is_trivial());
}

#[test]
fn mixed_moduli_over_c2() {
    let q = abelian(&[2]);
    let m = GModule::trivial(&q, &[2, 4]).unwrap();
    let h = cohomology_group(&m, false).unwrap();
    assert_eq!(h.invariants(), &[2, 2]);
    check_against_brute(&m);
    for r in &h.representatives {
        r.check(&m).unwrap();
    }
}

#[test]
fn sign_action_of_c2_on_z4() {
    let q = abelian(&[2]);
    let m = GModule::with_action(&q, &[4], &[vec![vec![-1]]]).unwrap();
    assert_eq!(cohomology_group(&m, false).unwrap().invariants(), &[2]);
    check_against_brute(&m);
}

#[test]
fn swap_action_of_klein_four() {
    let q = abelian(&[2, 2]);
    let id = vec![vec![1, 0], vec![0, 1]];
    let swap = vec![vec![0, 1], vec![1, 0]];
    let m = GModule::with_action(&q, &[2, 2], &[id, swap]).unwrap();
    check_against_brute(&m);
}

#[test]
fn s3_with_z3_and_sign_module() {
    let s3 = perm(vec![vec![2, 3, 1], vec![2, 1, 3]]);
    // transposition acts by -1 on Z/3
    let m = GModule::with_action(&s3, &[3], &[vec![vec![1]], vec![vec![-1]]]).unwrap();
    let sys = CocycleSystem::new(&m).unwrap();
    assert!(sys.coboundaries().contains_module(&sys.coboundaries().clone()));
    assert!(sys.cocycles().contains_module(sys.cp_cocycles()));
    assert!(sys.cp_cocycles().contains_module(sys.coboundaries()));
}

#[test]
fn coboundaries_are_cp_and_cp_are_cocycles() {
    for q in [d4(), q8(), abelian(&[2, 4])] {
        for mods in [vec![2], vec![4], vec![2, 4]] {
            let m = GModule::trivial(&q, &mods).unwrap();
            let z = two_cocycles(&m).unwrap();
            let zcp = cp_two_cocycles(&m).unwrap();
            let b = two_coboundaries(&m).unwrap();
            assert!(z.contains_module(&zcp));
            assert!(zcp.contains_module(&b));
        }
    }
}

#[test]
fn cyclic_uct() {
    let d = uct_decomposition(&abelian(&[4]), 4).unwrap();
    assert_eq!(d.ext.invariants(), &[4]);
    assert!(d.hom_b0.is_trivial());
    assert_eq!(d.h2_cp.order(), 4);
}

#[test]
fn quaternion_uct() {
    let d = uct_decomposition(&q8(), 8).unwrap();
    assert_eq!(d.ext.invariants(), &[2, 2]);
    assert!(d.hom_m.is_trivial());
    assert_eq!(d.h2, d.h2_cp);
}

#[test]
fn dihedral_uct() {
    let d = uct_decomposition(&d4(), 8).unwrap();
    assert_eq!(d.hom_m.invariants(), &[2]);
    assert!(d.hom_b0.is_trivial());
    assert_eq!(d.hom_m0.invariants(), &[2]);
}

#[test]
fn modulus_must_be_a_multiple_of_the_order() {
    assert!(uct_decomposition(&d4(), 4).is_err());
}

#[test]
fn multipliers_of_small_groups() {
    let r = multiplier_invariants(&abelian(&[2, 2])).unwrap();
    assert_eq!((r.b0.clone(), r.m.clone(), r.m0.clone()), (vec![], vec![2], vec![2]));
    let r = multiplier_invariants(&q8()).unwrap();
    assert!(r.m.is_empty() && r.b0.is_empty());
    let r = multiplier_invariants(&abelian(&[2, 2, 2])).unwrap();
    assert_eq!(r.m, vec![2, 2, 2]);
    assert_eq!(r.m, r.m0);
}

#[test]
fn cocycle_json_round_trip() {
    let q = d4();
    let m = GModule::trivial(&q, &[4]).unwrap();
    let h = cohomology_group(&m, false).unwrap();
    for r in &h.representatives {
        let back = Cocycle::from_json(&r.to_json(), q.order()).unwrap();
        assert_eq!(&back, r);
    }
}

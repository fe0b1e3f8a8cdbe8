use super::*;
use crate::coeff::{FpModule, Mat};
use crate::diagram::Quiver;

fn z() -> AbCat {
    AbCat::point(Ring::Integers)
}

fn times(cat: &AbCat, k: i64) -> AbMor {
    let m = cat.point_matrix(&Mat::from_i64(cat.ring(), &[&[k]]));
    cat.delta_mor(&m)
}

fn coker_n(cat: &AbCat, k: i64) -> Presentation {
    cat.cokernel(&times(cat, k)).dst
}

#[test]
fn end_of_universal_object() {
    let c = z();
    let h = c.end(&c.universal()).unwrap();
    assert_eq!(h.invariants().describe(), "Z");
    assert_eq!(h.invariants().factors(), "free rank 1");
}

#[test]
fn multiplication_by_two_is_not_mono() {
    let c = z();
    let two = times(&c, 2);
    let k = c.kernel(&two);
    assert!(!c.is_zero_obj(&k.src));
    assert!(c.evaluate_at_ring(&k.src).unwrap().is_zero());
    let at_z2 = c
        .point_realization(FpModule::cyclic(Ring::Integers, 2))
        .unwrap();
    assert_eq!(at_z2.obj(&k.src).describe(), "Z/2");
}

#[test]
fn endomorphisms_of_coker_two() {
    let c = z();
    let q = coker_n(&c, 2);
    assert_eq!(c.end(&q).unwrap().invariants().describe(), "Z/2");
    assert!(c.hom(&q, &coker_n(&c, 3)).unwrap().is_zero());
    assert!(c.hom(&q, &c.zero_obj()).unwrap().is_zero());
}

#[test]
fn kernel_of_zero_and_of_identity() {
    let c = z();
    let u = c.universal();
    let k = c.kernel(&c.zero(&u, &u));
    assert!(c.is_iso(&k));
    let k = c.kernel(&c.identity(&u));
    assert!(c.is_zero_obj(&k.src));
}

#[test]
fn kernel_universal_property() {
    let c = z();
    let two = times(&c, 2);
    let k = c.kernel(&two);
    let q = c.cokernel(&two);
    // the composite of the kernel inclusion with 2 is zero
    assert!(c.is_null(&c.compose(&two, &k)));
    assert!(c.is_null(&c.compose(&q, &two)));
    // 2 factors through its image, and coimage ≅ image
    assert!(c.is_iso(&c.coimage_to_image(&two)));
    let u = c.lift(&k, &k).unwrap();
    assert!(c.equal(&u, &c.identity(&k.src)));
}

#[test]
fn equality_modulo_relations() {
    let c = z();
    let q = coker_n(&c, 2);
    let id = c.identity(&q);
    let three = c.scale(&id, &Ring::Integers.from_i64(3));
    assert!(c.equal(&id, &three));
    assert!(!c.is_null(&id));
}

#[test]
fn evaluation_and_yoneda() {
    let c = z();
    assert_eq!(c.evaluate_at_ring(&c.universal()).unwrap().describe(), "Z");
    assert!(c.evaluate_at_ring(&c.zero_obj()).unwrap().is_zero());
    let y2 = c.yoneda(&FpModule::cyclic(Ring::Integers, 2)).unwrap();
    assert!(!c.is_zero_obj(&y2));
    assert!(c.evaluate_at_ring(&y2).unwrap().is_zero());
    let yz = c.yoneda(&FpModule::free(Ring::Integers, 1)).unwrap();
    assert_eq!(c.end(&yz).unwrap().invariants().describe(), "Z");
    let q = c.base_change_to_rationals(&y2).unwrap();
    assert!(c.change_ring(Ring::Rationals).is_zero_obj(&q));
    let free = AbCat::over(Ring::Integers, Base::free(Quiver::discrete(2), 3));
    assert_eq!(
        free.evaluate_at_ring(&free.delta(0)),
        Err(FreydError::WrongBase)
    );
}

#[test]
fn simples_match_the_oracle() {
    let c = z();
    for (p, n) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let s = AbCat::simple_candidate(p, n);
        assert!(!c.is_zero_obj(&s));
        assert_eq!(c.end(&s).unwrap().invariants().describe(), format!("Z/{p}"));
        for k in 0..4 {
            let x = if k == 0 {
                FpModule::free(Ring::Integers, 1)
            } else {
                FpModule::cyclic(Ring::Integers, p.pow(k) as i64)
            };
            let ours = c.point_realization(x.clone()).unwrap().obj(&s).invariants();
            assert_eq!(ours, functor_category_oracle(p, n, &x), "p={p} n={n} k={k}");
        }
    }
}

#[test]
fn duality_preserves_hom() {
    let c = z();
    let d = c.dual();
    let objs = [c.universal(), coker_n(&c, 2), c.kernel(&times(&c, 4)).src];
    for x in &objs {
        for y in &objs {
            let h = c.hom(x, y).unwrap().invariants();
            let hd = d.hom(&c.dual_obj(y), &c.dual_obj(x)).unwrap().invariants();
            assert_eq!(h, hd);
        }
    }
}

#[test]
fn flat_and_projective() {
    let c = z();
    let u = c.universal();
    assert!(matches!(c.flat_membership(&u), FlatWitness::InFlat { .. }));
    let two = c.point_matrix(&Mat::from_i64(Ring::Integers, &[&[2]]));
    assert!(matches!(
        c.flat_membership(&c.ker_of(&two)),
        FlatWitness::InFlat { .. }
    ));
    let q = coker_n(&c, 2);
    assert_eq!(c.flat_membership(&q), FlatWitness::NotShown);
    let p = c.cokernel(&times(&c, 2));
    assert!(c.is_projective_against(&u, &p).unwrap());
    assert!(c.is_projective_against(&c.zero_obj(), &p).unwrap());
    assert!(!c.is_projective_against(&q, &p).unwrap());
    assert_eq!(
        c.is_projective_against(&u, &times(&c, 2)),
        Err(FreydError::NotEpi)
    );
}

#[test]
fn free_cyclic_base_rejects_hom() {
    let mut q = Quiver::discrete(1);
    q.add_edge("e", 0, 0).unwrap();
    let c = AbCat::over(Ring::Integers, Base::free(q, 3));
    let x = c.delta(0);
    assert_eq!(c.hom(&x, &x).unwrap_err(), FreydError::UnsupportedBase);
    assert!(!c.is_zero_obj(&x));
}

#[test]
fn small_presentation_counts() {
    let c = AbCat::point(Ring::Integers);
    // mid only: 1 + 1 (|mid| = 1, 2); top or bottom of size 1: 3 each (0, 1, 2 times id)
    assert_eq!(c.small_presentations(1).len(), 1);
    assert_eq!(c.small_presentations(2).len(), 8);
    let f2 = AbCat::point(Ring::PrimeField(2));
    assert_eq!(f2.small_presentations(2).len(), 6);
}

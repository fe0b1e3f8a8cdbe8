use super::*;
use crate::additive::Base;
use crate::coeff::{FpModule, Mat, ModMap, Ring};
use crate::diagram::FinCat;

fn z() -> AbCat {
    AbCat::point(Ring::Integers)
}

fn times(cat: &AbCat, k: i64) -> AbMor {
    cat.delta_mor(&cat.point_matrix(&Mat::from_i64(cat.ring(), &[&[k]])))
}

fn generated_by_point(cat: &AbCat) -> SerreQuotient {
    let mut g = ThickGens::new();
    g.push("|R|", cat.universal());
    quotient_by_gens(cat.clone(), g, 4)
}

#[test]
fn generator_certificate() {
    let c = z();
    let q = generated_by_point(&c);
    let a = q.is_zero(&c.universal());
    assert_eq!(a.certificate(), Some(&Certificate::Gen { index: 0 }));
    assert!(q.verify(a.certificate().unwrap()));
}

#[test]
fn small_presentations_are_generated_by_the_point() {
    let c = z();
    let q = generated_by_point(&c);
    let two = times(&c, 2);
    let objs = [
        c.cokernel(&two).dst,
        c.kernel(&two).src,
        c.direct_sum(&[c.universal(), c.universal()]),
        c.image(&times(&c, 3)).src,
        c.yoneda(&FpModule::cyclic(Ring::Integers, 4)).unwrap(),
    ];
    for x in &objs {
        let a = q.is_zero(x);
        let cert = a.certificate().expect("certified");
        assert!(q.verify(cert));
        assert_eq!(cert.subject(q.gens().unwrap()).as_ref(), Some(x));
    }
}

#[test]
fn empty_generators_answer_no() {
    let c = z();
    let q = quotient_by_gens(c.clone(), ThickGens::new(), 4);
    assert!(q.is_zero(&c.universal()).is_no());
    assert!(q.is_zero(&c.zero_obj()).is_yes());
}

#[test]
fn summand_of_generator() {
    let c = z();
    let x = c.cokernel(&times(&c, 2)).dst;
    let y = c.universal();
    let mut g = ThickGens::new();
    g.push("X+Y", c.direct_sum(&[x.clone(), y]));
    let q = quotient_by_gens(c.clone(), g, 2);
    let cert = q.certify(&x).unwrap();
    assert!(matches!(cert, Certificate::SubOf { .. }));
    assert!(q.verify(&cert));
}

#[test]
fn bad_extension_is_rejected() {
    let c = z();
    let u = c.universal();
    let mut g = ThickGens::new();
    g.push("|R|", u.clone());
    let q = quotient_by_gens(c.clone(), g, 2);
    // 0 -> |R| --2--> |R| --id--> |R| -> 0 is not exact in the middle
    let bad = Certificate::ExtOf {
        mono: times(&c, 2),
        epi: c.identity(&u),
        sub: Box::new(Certificate::Gen { index: 0 }),
        quot: Box::new(Certificate::Gen { index: 0 }),
    };
    assert!(!q.verify(&bad));
    let parts = [u.clone(), u.clone()];
    let good = Certificate::ExtOf {
        mono: c.injection(&parts, 0),
        epi: c.projection(&parts, 1),
        sub: Box::new(Certificate::Gen { index: 0 }),
        quot: Box::new(Certificate::Gen { index: 0 }),
    };
    assert!(q.verify(&good));
}

#[test]
fn realization_mode_at_the_ring() {
    let c = z();
    let r = c
        .point_realization(FpModule::free(Ring::Integers, 1))
        .unwrap();
    let q = SerreQuotient::realization(c.clone(), r);
    let torsion = c.yoneda(&FpModule::cyclic(Ring::Integers, 2)).unwrap();
    assert!(q.is_zero(&torsion).is_yes());
    assert!(q.is_zero(&c.universal()).is_no());
    let h = q.quotient_hom(&c.universal(), &c.universal(), 3).unwrap();
    assert_eq!(h.module.describe(), "Z");
    assert_eq!(h.stage, 0);
    let h = q.quotient_hom(&torsion, &c.universal(), 3).unwrap();
    assert!(h.module.is_zero());
}

#[test]
fn sign_representation() {
    let zr = Ring::Integers;
    let c = AbCat::over(zr, Base::fin(FinCat::cyclic_group(2)));
    let zm = FpModule::free(zr, 1);
    let sign = ModMap::new(zm.clone(), zm.clone(), Mat::from_i64(zr, &[&[-1]])).unwrap();
    let r = crate::freyd::Realization::new(
        c.clone(),
        crate::freyd::ModCat { ring: zr },
        vec![zm.clone()],
        vec![sign],
    )
    .unwrap();
    let g = c.add.arrow(&c.base().generator(1));
    let one = c.add.identity(&vec![0]);
    let plus = c.add.add(&one, &g);
    let minus = c.add.sub(&one, &g);
    assert_eq!(r.obj(&c.coker_of(&plus)).describe(), "Z");
    assert_eq!(r.obj(&c.coker_of(&minus)).describe(), "Z/2");
    // g acting by 2 violates g^2 = 1
    let bad = ModMap::new(zm.clone(), zm.clone(), Mat::from_i64(zr, &[&[2]])).unwrap();
    let err = crate::freyd::Realization::new(
        c.clone(),
        crate::freyd::ModCat { ring: zr },
        vec![zm],
        vec![bad],
    );
    assert!(matches!(
        err,
        Err(crate::freyd::FreydError::RelationViolation(_))
    ));
}

#[test]
fn separators_give_no_answers() {
    let zr = Ring::Integers;
    let c = AbCat::over(zr, Base::fin(FinCat::chain(2)));
    let mut g = ThickGens::new();
    g.push("D1", c.delta(1));
    let mut q = quotient_by_gens(c.clone(), g, 3);
    assert_eq!(q.is_zero(&c.delta(0)), Answer::Unknown);
    let zm = FpModule::free(zr, 1);
    let zero = FpModule::zero(zr);
    let r = crate::freyd::Realization::new(
        c.clone(),
        crate::freyd::ModCat { ring: zr },
        vec![zm.clone(), zero.clone()],
        vec![ModMap::zero(&zm, &zero)],
    )
    .unwrap();
    q.register_separator(r).unwrap();
    assert!(q.is_zero(&c.delta(0)).is_no());
    assert!(q.is_zero(&c.delta(1)).is_yes());
}

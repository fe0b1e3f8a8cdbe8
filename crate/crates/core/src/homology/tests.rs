use super::*;
use crate::coeff::{FpModule, Mat, ModMap, Ring};
use crate::diagram::{FinCat, NoriDiagram, NoriEdge, Path, Quiver};

use crate::quotient::{Certificate, Mode};

const Z: Ring = Ring::Integers;

fn all(c: &FinCat) -> Vec<bool> {
    vec![true; c.num_mors()]
}

fn zmod(n: usize) -> FpModule {
    FpModule::free(Z, n)
}

fn relative(c: &FinCat, window: (i64, i64)) -> RelUniversalCat {
    universal_relative(c, &all(c), Z, window, 3).unwrap()
}

fn groupoid() -> FinCat {
    let mut q = Quiver::new();
    let a = q.add_vertex("a").unwrap();
    let b = q.add_vertex("b").unwrap();
    q.add_edge("u", a, b).unwrap();
    q.add_edge("v", b, a).unwrap();
    let uv = q.parse_path("u.v").unwrap();
    let vu = q.parse_path("v.u").unwrap();
    FinCat::from_decoration(&q, &[(uv, Path::identity(a)), (vu, Path::identity(b))], 100).unwrap()
}

#[test]
fn graded_point_category() {
    let g = universal_homology(FinCat::point(), Z, (-1, 1)).unwrap();
    let h0 = g.h(0, 0).unwrap();
    let h1 = g.h(0, 1).unwrap();
    assert_eq!(g.hom_module(&h0, &h0).unwrap().describe(), "Z");
    assert!(g.hom_module(&h0, &h1).unwrap().is_zero());
    assert!(matches!(
        g.h(0, 2),
        Err(HomologyError::OutOfWindow(2, -1, 1))
    ));
}

#[test]
fn graded_two_has_one_arrow() {
    let g = universal_homology(FinCat::chain(2), Z, (0, 0)).unwrap();
    let m = g
        .hom_module(&g.h(0, 0).unwrap(), &g.h(1, 0).unwrap())
        .unwrap();
    assert_eq!(m.describe(), "Z");
    assert!(g
        .hom_module(&g.h(1, 0).unwrap(), &g.h(0, 0).unwrap())
        .unwrap()
        .is_zero());
}

#[test]
fn point_quotient_on_one_and_two() {
    let g = universal_homology(FinCat::point(), Z, (-1, 1)).unwrap();
    let q = point_quotient(&g, &[0], 3).unwrap();
    assert!(q.is_zero(&g.h(0, 1).unwrap()).unwrap().is_yes());
    let a = q.is_zero(&g.h(0, -1).unwrap()).unwrap();
    assert_eq!(a.certificate(), Some(&Certificate::Gen { index: 0 }));
    assert!(q.is_zero(&g.h(0, 0).unwrap()).unwrap().is_no());
    let h0 = g.h(0, 0).unwrap();
    assert_eq!(q.hom_module(&h0, &h0).unwrap().unwrap().describe(), "Z");

    let g2 = universal_homology(FinCat::chain(2), Z, (0, 1)).unwrap();
    let q2 = point_quotient(&g2, &[1], 3).unwrap();
    assert!(q2.is_zero(&g2.h(1, 1).unwrap()).unwrap().is_yes());
    assert_eq!(
        q2.is_zero(&g2.h(0, 1).unwrap()).unwrap(),
        crate::quotient::Answer::Unknown
    );
    assert_eq!(
        q2.hom_module(&g2.h(0, 1).unwrap(), &g2.h(0, 1).unwrap())
            .unwrap(),
        None
    );
}

#[test]
fn graded_realization_factors() {
    let c = FinCat::chain(2);
    let g = universal_homology(c.clone(), Z, (0, 1)).unwrap();
    let z2 = FpModule::cyclic(Z, 2);
    let reduce = ModMap::new(zmod(1), z2.clone(), Mat::from_i64(Z, &[&[1]])).unwrap();
    let zero = FpModule::zero(Z);
    let k = HomologyData {
        window: (0, 1),
        values: vec![vec![zmod(1), z2.clone()], vec![zero.clone(), zmod(1)]],
        maps: vec![vec![reduce], vec![ModMap::zero(&zero, &zmod(1))]],
    };
    assert!(g.verify_factorization(&k).unwrap());
    let bad = HomologyData {
        window: (0, 0),
        ..k
    };
    assert!(g.realize(&bad).is_err());
}

#[test]
fn relative_two_generators() {
    let ru = relative(&FinCat::chain(2), (-1, 1));
    assert_eq!(ru.nori.quiver.vertices.len(), 9);
    assert_eq!(ru.non_identity_triples().len(), 2);
    for t in ru.non_identity_triples() {
        for i in -1..=1 {
            assert!(ru.kinds.contains(&GenKind::BetaAlpha {
                triple: t,
                degree: i
            }));
        }
    }
    // the identity triple's β∘α generator is H_i(X, X) itself
    let p11 = ru.nori.pairs.find("(1,1)").unwrap();
    let h = ru.h(p11, 0).unwrap();
    assert!(ru.gens().objects.contains(&h));
}

#[test]
fn purity_certificates_verify() {
    for c in [FinCat::point(), FinCat::chain(2), FinCat::chain(3)] {
        let ru = relative(&c, (-2, 2));
        for x in 0..c.num_objects() {
            let pair = ru.nori.pairs.pair_of(c.identity(x)).unwrap();
            for i in -2..=2 {
                let cert = ru.purity_certificate(pair, i).unwrap();
                assert!(matches!(cert, Certificate::Gen { .. }));
                assert!(ru.verify(&cert));
                assert_eq!(cert.subject(ru.gens()), Some(ru.h(pair, i).unwrap()));
            }
        }
        assert!(matches!(
            ru.purity_certificate(0, 3),
            Err(HomologyError::OutOfWindow(3, -2, 2))
        ));
    }
}

#[test]
fn purity_along_an_isomorphism() {
    let c = groupoid();
    let ru = relative(&c, (0, 0));
    let u = (0..c.num_mors())
        .find(|&m| c.mors[m].src == 0 && c.mors[m].dst == 1)
        .unwrap();
    let pair = ru.nori.pairs.pair_of(u).unwrap();
    let cert = ru.purity_certificate(pair, 0).unwrap();
    assert!(matches!(cert, Certificate::SubOf { .. }));
    assert!(ru.verify(&cert));
    assert_eq!(cert.subject(ru.gens()), Some(ru.h(pair, 0).unwrap()));
}

#[test]
fn formal_mode_is_zero_on_pure_pairs() {
    let c = FinCat::chain(2);
    let ru = relative(&c, (-1, 1));
    for name in ["(0,0)", "(1,1)"] {
        let p = ru.nori.pairs.find(name).unwrap();
        for i in -1..=1 {
            assert!(ru.is_zero(&ru.h(p, i).unwrap()).is_yes());
        }
    }
}

fn chain3_almost_trivial(a: &FpModule) -> RelHomologyData {
    let c = FinCat::chain(3);
    let p = crate::diagram::pairs_category(&c, &all(&c)).unwrap();
    let n = crate::diagram::nori_diagram(&p, (-1, 1)).unwrap();
    RelHomologyData::almost_trivial(&n, a).unwrap()
}

#[test]
fn almost_trivial_passes_and_corruptions_fail() {
    let k = chain3_almost_trivial(&zmod(1));
    assert_eq!(k.check_axioms(), vec![]);
    // H_0(2,0) <- H_0(1,0) becomes multiplication by 3: the triple (2,1,0) is not exact
    let n = &k.nori;
    let p = &n.pairs;
    let (s, t) = (p.find("(1,0)").unwrap(), p.find("(2,0)").unwrap());
    let m = (0..p.cat.num_mors())
        .find(|&m| p.cat.mors[m].src == s && p.cat.mors[m].dst == t)
        .unwrap();
    let e = n.gamma_edge(m, 0).unwrap();
    let mut bad = k.clone();
    bad.maps[e] = ModMap::new(zmod(1), zmod(1), Mat::from_i64(Z, &[&[3]])).unwrap();
    let v = bad.check_axioms();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].condition, "exactness");
    assert_eq!(v[0].place, "(2,1,0)");
    assert!(matches!(
        bad.universal_from(),
        Err(HomologyError::AxiomFailure(_))
    ));
}

#[test]
fn nonzero_pure_value_fails() {
    let mut k = chain3_almost_trivial(&zmod(1));
    let n = k.nori.clone();
    let p11 = n.pairs.find("(1,1)").unwrap();
    let v = n.vertex(p11, 0).unwrap();
    k.values[v] = zmod(1);
    for (e, edge) in n.quiver.edges.iter().enumerate() {
        if edge.src == v || edge.dst == v {
            k.maps[e] = ModMap::zero(&k.values[edge.src], &k.values[edge.dst]);
        }
    }
    let violations = k.check_axioms();
    assert!(violations.iter().any(|x| x.place == "(1,1,1)"));
}

fn two_nori(window: (i64, i64)) -> NoriDiagram {
    let c = FinCat::chain(2);
    let p = crate::diagram::pairs_category(&c, &all(&c)).unwrap();
    crate::diagram::nori_diagram(&p, window).unwrap()
}

#[test]
fn universal_from_almost_trivial_on_two() {
    let n = two_nori((-1, 1));
    let k = RelHomologyData::almost_trivial(&n, &zmod(1)).unwrap();
    let u = k.universal_from().unwrap();
    assert!(u.verify_factorization());
    let p10 = n.pairs.find("(1,0)").unwrap();
    let h = u.h(p10, 0).unwrap();
    let hom = u.quotient_hom(&h, &h, 3).unwrap();
    assert_eq!(hom.module.describe(), "Z");
    assert_eq!(hom.stage, 0);
    let p11 = n.pairs.find("(1,1)").unwrap();
    for i in -1..=1 {
        assert!(u.is_zero(&u.h(p11, i).unwrap()).is_yes());
    }
    assert!(u.is_zero(&h).is_no());
}

#[test]
fn zero_homology_gives_trivial_quotient() {
    let n = two_nori((0, 1));
    let u = RelHomologyData::zero(&n, Z).universal_from().unwrap();
    for v in 0..n.quiver.vertices.len() {
        assert!(u.is_zero(&u.cat.delta(v)).is_yes());
    }
}

#[test]
fn generators_die_under_homologies() {
    let c = FinCat::chain(3);
    let ru = relative(&c, (-1, 1));
    let k = RelHomologyData::almost_trivial(&ru.nori, &zmod(2)).unwrap();
    let r = k.realization().unwrap();
    for (x, label) in ru.gens().objects.iter().zip(&ru.gens().labels) {
        assert!(r.obj(x).is_zero(), "{label}");
    }
    let pi = relative_k_projection(&ru, 0).unwrap();
    for x in &ru.gens().objects {
        assert!(pi.kills(x));
    }
}

#[test]
fn k_projection_sections() {
    for ring in [Z, Ring::PrimeField(2)] {
        let g = universal_homology(FinCat::chain(2), ring, (-1, 1)).unwrap();
        let kp = k_projection(&g, 0).unwrap();
        assert!(kp.section_holds());
        let ab = kp.target().clone();
        let two = ab.delta_mor(&ab.point_matrix(&Mat::from_i64(ring, &[&[2]])));
        assert!(kp.section_holds_at(&ab.universal()));
        if ring.is_field() {
            assert!(kp.section_holds_at(&ab.cokernel(&two).dst));
        }
        let integral = g.category.hom(0, 1)[0];
        assert!(kp.is_iso_under_pi(&g.h_mor(integral)));
        assert!(kp.target().is_zero_obj(&kp.pi_graded(&g.h(0, 1).unwrap())));
        assert!(!kp.target().is_zero_obj(&kp.pi_graded(&g.h(0, 0).unwrap())));
    }
    let g = universal_homology(FinCat::poset(2, &[]).unwrap(), Z, (0, 0)).unwrap();
    assert!(matches!(
        k_projection(&g, 0),
        Err(HomologyError::NoFinalObject)
    ));
}

#[test]
fn relative_k_projection_section() {
    for ring in [Z, Ring::PrimeField(2)] {
        let c = FinCat::chain(2);
        let ru = universal_relative(&c, &all(&c), ring, (-1, 1), 3).unwrap();
        let kp = relative_k_projection(&ru, 0).unwrap();
        assert!(kp.section_holds());
        let p11 = ru.nori.pairs.find("(1,1)").unwrap();
        assert!(kp.kills(&ru.h(p11, 0).unwrap()));
    }
}

#[test]
fn restriction_along_the_initial_object() {
    let c = FinCat::chain(2);
    let ru = relative(&c, (-1, 1));
    let r = ru.restricted_homology().unwrap();
    let p00 = ru.nori.pairs.find("(0,0)").unwrap();
    let p10 = ru.nori.pairs.find("(1,0)").unwrap();
    assert_eq!(r.pairs, vec![p00, p10]);
    for i in -1..=1 {
        let h = ru.restricted_h(&r, 0, i).unwrap();
        assert!(ru.is_zero(&h).is_yes());
    }
    assert_eq!(ru.restricted_h(&r, 1, 0).unwrap(), ru.h(p10, 0).unwrap());
    let f = c.hom(0, 1)[0];
    let m = ru.restricted_mor(&r, f, 0).unwrap();
    assert_eq!(m.dst, ru.h(p10, 0).unwrap());
    let t = ru.pair_sequence(&r, p10).unwrap();
    assert_eq!(ru.nori.triples[t].name(&ru.nori.pairs), "(1,0,0)");
}

/// `0 < a, b < s` with `s = a ∐ b`.
fn diamond() -> FinCat {
    FinCat::poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
}

fn mor(c: &FinCat, s: usize, t: usize) -> usize {
    c.hom(s, t)[0]
}

/// `H_0(X, Y) = Z[atoms of X not in Y]`, zero elsewhere.
fn atoms_homology(n: &NoriDiagram) -> RelHomologyData {
    let p = &n.pairs;
    let c = &p.base;
    let atoms = |x: usize| -> Vec<usize> {
        [1, 2]
            .into_iter()
            .filter(|&a| !c.hom(a, x).is_empty())
            .collect()
    };
    let basis = |pair: usize| -> Vec<usize> {
        let (x, y) = p.xy(pair);
        let ay = atoms(y);
        atoms(x).into_iter().filter(|a| !ay.contains(a)).collect()
    };
    let values: Vec<FpModule> = (0..n.quiver.vertices.len())
        .map(|v| {
            let (pair, i) = n.vertex_info(v);
            zmod(if i == 0 { basis(pair).len() } else { 0 })
        })
        .collect();
    let maps = n
        .quiver
        .edges
        .iter()
        .zip(&n.edge_kinds)
        .map(|(e, kind)| {
            let (s, t) = (&values[e.src], &values[e.dst]);
            match kind {
                NoriEdge::Gamma { mor, degree: 0 } => {
                    let m = &p.cat.mors[*mor];
                    let (bs, bt) = (basis(m.src), basis(m.dst));
                    let mut mat = Mat::zero(Z, bt.len(), bs.len());
                    for (i, a) in bs.iter().enumerate() {
                        if let Some(j) = bt.iter().position(|b| b == a) {
                            mat.set(j, i, Z.one());
                        }
                    }
                    ModMap::new(s.clone(), t.clone(), mat).unwrap()
                }
                _ => ModMap::zero(s, t),
            }
        })
        .collect();
    RelHomologyData {
        nori: n.clone(),
        ring: Z,
        values,
        maps,
    }
}

#[test]
fn additive_quotient_on_a_join() {
    let c = diamond();
    let ru = relative(&c, (0, 1));
    let row = CoproductRow {
        summands: vec![1, 2],
        coproduct: 3,
        injections: vec![mor(&c, 1, 3), mor(&c, 2, 3)],
    };
    let q = ru.additive_quotient(std::slice::from_ref(&row), 3).unwrap();
    let gens = q.gens().unwrap();
    assert_eq!(gens.len(), ru.gens().len() + 4);
    let k = atoms_homology(&ru.nori);
    assert_eq!(k.check_axioms(), vec![]);
    let r = k.realization().unwrap();
    for x in &gens.objects {
        assert!(r.obj(x).is_zero());
    }
    // the almost trivial homology is not additive: the cokernel-free map Z + Z -> Z has a kernel
    let at = RelHomologyData::almost_trivial(&ru.nori, &zmod(1)).unwrap();
    let ra = at.realization().unwrap();
    assert!(gens.objects[ru.gens().len()..]
        .iter()
        .any(|x| !ra.obj(x).is_zero()));

    let bad = CoproductRow {
        summands: vec![1],
        coproduct: 3,
        injections: vec![mor(&c, 1, 3)],
    };
    assert!(matches!(
        ru.additive_quotient(&[bad], 3),
        Err(HomologyError::NotACoproduct(_))
    ));
}

#[test]
fn monoid_universal_representation() {
    let m = monoid_universal(FinCat::cyclic_group(2), Z, 3).unwrap();
    assert!(m.h_is_multiplicative());
    assert_eq!(m.end.module.describe(), "Z^2");
    let c = m.cat();
    let g = &m.h[1];
    assert!(c.equal(&c.compose(g, g), &c.identity(&c.delta(0))));
    let sign = ModMap::new(zmod(1), zmod(1), Mat::from_i64(Z, &[&[-1]])).unwrap();
    let r = m.realize(zmod(1), vec![sign.clone()]).unwrap();
    assert!(r.matches_arrow(&crate::additive::Arrow::Mor(1), &sign));
    assert!(m.factors(&r));

    let trivial = monoid_universal(FinCat::point(), Z, 3).unwrap();
    assert_eq!(trivial.end.module.describe(), "Z");
}

#[test]
fn dual_twice_is_identity() {
    let ru = relative(&FinCat::chain(2), (0, 1));
    let (dcat, dgens) = ru.dual();
    for (x, y) in ru.gens().objects.iter().zip(&dgens.objects) {
        assert_eq!(&dcat.dual_obj(y), x);
    }
    let formal = matches!(ru.quotient.mode, Mode::Formal(_));
    assert!(formal);
}

#[test]
fn almost_trivial_separates_relative_objects() {
    let ru = relative(&FinCat::chain(2), (-1, 1));
    let p10 = ru.nori.pairs.find("(1,0)").unwrap();
    let a = ru.is_zero(&ru.h(p10, 0).unwrap());
    assert!(matches!(
        a,
        crate::quotient::Answer::No {
            evidence: crate::quotient::Evidence::Separated { .. }
        }
    ));
    let p11 = ru.nori.pairs.find("(1,1)").unwrap();
    assert!(ru.is_zero(&ru.h(p11, 0).unwrap()).is_yes());
}

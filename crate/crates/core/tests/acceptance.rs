//! Acceptance criteria 1-11, one pass/fail line each.

use std::path::PathBuf;

use freydlab::additive::Base;
use freydlab::coeff::{FpModule, Mat, ModMap, Ring, Scalar};
use freydlab::diagram::{nori_diagram, pairs_category, FinCat, Quiver};
use freydlab::freyd::{functor_category_oracle, AbCat, AbMor, Presentation};
use freydlab::homology::{
    k_projection, monoid_universal, relative_k_projection, universal_homology, universal_relative,
    RelHomologyData,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Z: Ring = Ring::Integers;
const RINGS: [Ring; 3] = [Ring::Integers, Ring::PrimeField(2), Ring::Rationals];

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn kronecker() -> Base {
    let mut q = Quiver::new();
    let a = q.add_vertex("a").unwrap();
    let b = q.add_vertex("b").unwrap();
    q.add_edge("x", a, b).unwrap();
    q.add_edge("y", a, b).unwrap();
    Base::free(q, 4)
}

fn all(c: &FinCat) -> Vec<bool> {
    vec![true; c.num_mors()]
}

fn scalar(ring: Ring, rng: &mut ChaCha8Rng) -> Scalar {
    let n = rng.gen_range(-3i64..=3);
    match ring {
        Ring::Rationals => ring
            .parse_scalar(&format!("{n}/{}", rng.gen_range(1..=3)))
            .unwrap(),
        _ => ring.from_i64(n),
    }
}

fn random_mor(cat: &AbCat, x: &Presentation, y: &Presentation, rng: &mut ChaCha8Rng) -> AbMor {
    let h = cat.hom(x, y).unwrap();
    let coords: Vec<Scalar> = h.gens.iter().map(|_| scalar(cat.ring(), rng)).collect();
    h.decode(cat, &coords)
}

/// Kernel and cokernel universal properties, mono = ker coker, epi = coker ker, coimage ≅ image.
fn abelian_axioms(
    cat: &AbCat,
    f: &AbMor,
    pool: &[Presentation],
    rng: &mut ChaCha8Rng,
) -> Result<(), String> {
    let k = cat.kernel(f);
    let c = cat.cokernel(f);
    ensure(cat.is_mono(&k) && cat.is_null(&cat.compose(f, &k)), || {
        "kernel".into()
    })?;
    ensure(cat.is_epi(&c) && cat.is_null(&cat.compose(&c, f)), || {
        "cokernel".into()
    })?;

    let t_obj = &pool[rng.gen_range(0..pool.len())];
    let t = random_mor(cat, t_obj, &f.src, rng);
    let lift = cat.lift(&k, &t);
    ensure(lift.is_some() == cat.is_null(&cat.compose(f, &t)), || {
        "kernel lifts exactly the maps f kills".into()
    })?;
    if let Some(u) = lift {
        ensure(cat.equal(&cat.compose(&k, &u), &t), || {
            "kernel lift commutes".into()
        })?;
    }
    let through = cat.compose(&k, &random_mor(cat, t_obj, &k.src, rng));
    ensure(cat.lift(&k, &through).is_some(), || {
        "maps through the kernel lift".into()
    })?;

    let s = random_mor(cat, &f.dst, t_obj, rng);
    let colift = cat.colift(&c, &s);
    ensure(colift.is_some() == cat.is_null(&cat.compose(&s, f)), || {
        "cokernel colifts exactly the maps killing f".into()
    })?;
    if let Some(v) = colift {
        ensure(cat.equal(&cat.compose(&v, &c), &s), || {
            "cokernel colift commutes".into()
        })?;
    }

    let im = cat.image(f);
    let kk = cat.kernel(&cat.cokernel(&im));
    ensure(cat.lift(&kk, &im).is_some_and(|u| cat.is_iso(&u)), || {
        "image is the kernel of its cokernel".into()
    })?;
    if cat.is_mono(f) {
        let kc = cat.kernel(&cat.cokernel(f));
        ensure(cat.lift(&kc, f).is_some_and(|u| cat.is_iso(&u)), || {
            "mono is the kernel of its cokernel".into()
        })?;
    }
    if cat.is_epi(f) {
        let ck = cat.cokernel(&cat.kernel(f));
        ensure(cat.colift(&ck, f).is_some_and(|u| cat.is_iso(&u)), || {
            "epi is the cokernel of its kernel".into()
        })?;
    }
    let co = cat.coimage(f);
    let cmp = cat.coimage_to_image(f);
    ensure(cat.is_iso(&cmp), || {
        "coimage to image is not an isomorphism".into()
    })?;
    ensure(cat.equal(&cat.chain(&[&co, &cmp, &im]), f), || {
        "f differs from image ∘ comparison ∘ coimage".into()
    })
}

fn criterion_1() -> Outcome {
    const PER_CONFIG: usize = 100;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut total = 0;
    let mut nonzero = 0;
    for (base_name, base, size) in [
        ("1", Base::fin(FinCat::point()), 3),
        ("kronecker", kronecker(), 2),
    ] {
        for ring in RINGS {
            let cat = AbCat::over(ring, base.clone());
            let pool = cat.small_presentations(size);
            for n in 0..PER_CONFIG {
                let mut f = None;
                for _ in 0..20 {
                    let x = &pool[rng.gen_range(0..pool.len())];
                    let y = &pool[rng.gen_range(0..pool.len())];
                    let g = random_mor(&cat, x, y, &mut rng);
                    let done = !cat.is_null(&g);
                    f = Some(g);
                    if done {
                        break;
                    }
                }
                let f = f.unwrap();
                nonzero += usize::from(!cat.is_null(&f));
                abelian_axioms(&cat, &f, &pool, &mut rng).map_err(|e| {
                    format!("C = {base_name}, R = {}, morphism {n}: {e}", ring.symbol())
                })?;
                total += 1;
            }
        }
    }
    Ok(format!(
        "{total} random morphisms ({nonzero} nonzero) over 2 bases and 3 rings"
    ))
}

fn criterion_2() -> Outcome {
    let cat = AbCat::point(Z);
    let u = cat.universal();
    let end = cat.end(&u).unwrap().invariants();
    ensure(end.factors() == "free rank 1", || {
        format!("End(|Z|) is {}", end.factors())
    })?;
    let r = cat.evaluate_at_ring(&u).unwrap();
    ensure(r.describe() == "Z", || {
        format!("r_Z(|Z|) = {}", r.describe())
    })?;
    let y2 = cat.yoneda(&FpModule::cyclic(Z, 2)).unwrap();
    ensure(!cat.is_zero_obj(&y2), || {
        "torsion representable is zero".into()
    })?;
    let r2 = cat.evaluate_at_ring(&y2).unwrap();
    ensure(r2.is_zero(), || {
        format!("r_Z of the torsion representable is {}", r2.describe())
    })?;
    Ok("End(|Z|) free rank 1, r_Z(|Z|) = Z, r_Z(Y(Z/2)) = 0 with Y(Z/2) nonzero".into())
}

fn criterion_3() -> Outcome {
    let cat = AbCat::point(Z);
    let q = cat.change_ring(Ring::Rationals);
    for p in [2, 3] {
        let y = cat.yoneda(&FpModule::cyclic(Z, p)).unwrap();
        let yq = cat.base_change_to_rationals(&y).unwrap();
        ensure(q.is_zero_obj(&yq), || {
            format!("Y(Z/{p}) survives base change")
        })?;
    }
    let end = q
        .end(&cat.change_ring_obj(&cat.universal(), Ring::Rationals))
        .unwrap()
        .invariants();
    ensure(end.describe() == "Q", || {
        format!("End(|Z| ⊗ Q) = {}", end.describe())
    })?;
    Ok("Y(Z/2), Y(Z/3) vanish over Q; End(|Z| ⊗ Q) = Q".into())
}

fn criterion_4() -> Outcome {
    let cat = AbCat::point(Z);
    for (p, n) in [(2u64, 1u32), (2, 2), (3, 1)] {
        let s = AbCat::simple_candidate(p, n);
        ensure(!cat.is_zero_obj(&s), || format!("S({p},{n}) is zero"))?;
        let end = cat.end(&s).unwrap().invariants().describe();
        ensure(end == format!("Z/{p}"), || {
            format!("End S({p},{n}) = {end}")
        })?;
        for k in 0..4 {
            let x = if k == 0 {
                FpModule::free(Z, 1)
            } else {
                FpModule::cyclic(Z, p.pow(k) as i64)
            };
            let ours = cat
                .point_realization(x.clone())
                .unwrap()
                .obj(&s)
                .invariants();
            let oracle = functor_category_oracle(p, n, &x);
            ensure(ours == oracle, || {
                format!(
                    "S({p},{n}) at {}: {} vs oracle {}",
                    x.describe(),
                    ours.describe(),
                    oracle.describe()
                )
            })?;
        }
    }
    Ok("three simples with End = F_p, 12 oracle evaluations agree".into())
}

fn criterion_5() -> Outcome {
    let cat = AbCat::over(Z, kronecker());
    let dual = cat.dual();
    let xs = cat.small_presentations(2);
    let duals: Vec<Presentation> = xs.iter().map(|x| cat.dual_obj(x)).collect();
    let mut checked = 0;
    for (i, x) in xs.iter().enumerate() {
        for (j, y) in xs.iter().enumerate() {
            let h = cat.hom(x, y).unwrap().invariants();
            let d = dual.hom(&duals[j], &duals[i]).unwrap().invariants();
            ensure(h == d, || {
                format!(
                    "presentations {i}, {j}: {} vs {}",
                    h.describe(),
                    d.describe()
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!(
        "{} presentations, {checked} hom modules match their duals",
        xs.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut replayed = 0;
    for (name, c) in [
        ("1", FinCat::point()),
        ("2", FinCat::chain(2)),
        ("chain3", FinCat::chain(3)),
    ] {
        let ru = universal_relative(&c, &all(&c), Z, (-2, 2), 3).map_err(|e| e.to_string())?;
        for x in 0..c.num_objects() {
            let pair = ru.nori.pairs.pair_of(c.identity(x)).unwrap();
            for i in -2..=2 {
                let cert = ru.purity_certificate(pair, i).map_err(|e| e.to_string())?;
                let ok =
                    ru.verify(&cert) && cert.subject(ru.gens()) == Some(ru.h(pair, i).unwrap());
                ensure(ok, || {
                    format!(
                        "C = {name}: H_{i}{} certificate fails",
                        ru.nori.pairs.name(pair)
                    )
                })?;
                replayed += 1;
            }
        }
    }
    Ok(format!("{replayed} purity certificates replay"))
}

fn criterion_7() -> Outcome {
    let c = FinCat::chain(2);
    let ru = universal_relative(&c, &all(&c), Z, (-1, 1), 3).map_err(|e| e.to_string())?;
    for pair in ["(0,0)", "(1,1)"] {
        let p = ru.nori.pairs.find(pair).unwrap();
        for i in -1..=1 {
            let a = ru.is_zero(&ru.h(p, i).unwrap());
            let ok = a.certificate().is_some_and(|cert| ru.verify(cert));
            ensure(a.is_yes() && ok, || {
                format!("H_{i}{pair} is not certified zero")
            })?;
        }
    }
    let k = RelHomologyData::almost_trivial(&ru.nori, &FpModule::free(Z, 1))
        .map_err(|e| e.to_string())?;
    let u = k.universal_from().map_err(|e| e.to_string())?;
    let h = u
        .h(ru.nori.pairs.find("(1,0)").unwrap(), 0)
        .map_err(|e| e.to_string())?;
    let hom = u.quotient_hom(&h, &h, 3).map_err(|e| e.to_string())?;
    ensure(hom.module.describe() == "Z" && hom.stage == 0, || {
        format!(
            "Hom(H_0(1,0), H_0(1,0)) = {} at stage {}",
            hom.module.describe(),
            hom.stage
        )
    })?;
    Ok(
        "H_i(0,0), H_i(1,1) certified zero for i in [-1,1]; Hom(H_0(1,0), H_0(1,0)) = Z at stage 0"
            .into(),
    )
}

fn criterion_8() -> Outcome {
    for ring in [Z, Ring::PrimeField(2)] {
        let g = universal_homology(FinCat::chain(2), ring, (0, 1)).map_err(|e| e.to_string())?;
        let kp = k_projection(&g, 0).map_err(|e| e.to_string())?;
        let t = kp.target();
        let back = kp.pi.obj(&kp.iota.obj(&t.universal()));
        let value = t.evaluate_at_ring(&back).unwrap();
        ensure(
            kp.section_holds() && value.invariants() == FpModule::free(ring, 1).invariants(),
            || {
                format!(
                    "graded, R = {}: π_0 ι_0 |R| evaluates to {}",
                    ring.symbol(),
                    value.describe()
                )
            },
        )?;
        let c = FinCat::chain(2);
        let ru = universal_relative(&c, &all(&c), ring, (-1, 1), 3).map_err(|e| e.to_string())?;
        let rk = relative_k_projection(&ru, 0).map_err(|e| e.to_string())?;
        ensure(rk.section_holds(), || {
            format!("relative, R = {}: section fails", ring.symbol())
        })?;
    }
    Ok("graded and relative sections hold over Z and F_2".into())
}

/// Violations an integer computation predicts when `H_0(1,0) -> H_0(2,0)` becomes `m`:
/// exactness of the triple (2,1,0) at H_0(1,0) needs `m` injective and at H_0(2,0) surjective.
fn mutation_oracle(m: [[i64; 2]; 2]) -> Vec<String> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let mut out = Vec::new();
    if det == 0 {
        out.push("at H0(1,0)".to_string());
    }
    if det.abs() != 1 {
        out.push("at H0(2,0)".to_string());
    }
    out.sort();
    out
}

fn criterion_9() -> Outcome {
    let c = FinCat::chain(3);
    let p = pairs_category(&c, &all(&c)).unwrap();
    let n = nori_diagram(&p, (-1, 1)).unwrap();
    let a = FpModule::free(Z, 2);
    let k = RelHomologyData::almost_trivial(&n, &a).map_err(|e| e.to_string())?;
    let clean = k.check_axioms();
    ensure(clean.is_empty(), || {
        format!("almost trivial homology fails: {}", clean[0])
    })?;
    let (s, t) = (p.find("(1,0)").unwrap(), p.find("(2,0)").unwrap());
    let m = (0..p.cat.num_mors())
        .find(|&m| p.cat.mors[m].src == s && p.cat.mors[m].dst == t)
        .unwrap();
    let e = n.gamma_edge(m, 0).unwrap();
    let mut detected = 0;
    for pos in 0..2 {
        for v in [0, 2, -2, 3, -3, 4, 5, 6, 7, -9] {
            let mut entries = [[1, 0], [0, 1]];
            entries[pos][pos] = v;
            let mut bad = k.clone();
            let rows: Vec<&[i64]> = entries.iter().map(|r| &r[..]).collect();
            bad.maps[e] = ModMap::new(a.clone(), a.clone(), Mat::from_i64(Z, &rows)).unwrap();
            let found = bad.check_axioms();
            let mut spots: Vec<String> = found.iter().map(|x| x.detail.clone()).collect();
            spots.sort();
            let named = found
                .iter()
                .all(|x| x.condition == "exactness" && x.place == "(2,1,0)" && x.degree == 0);
            let expected = mutation_oracle(entries);
            ensure(!found.is_empty() && named && spots == expected, || {
                format!(
                    "entry ({pos},{pos}) = {v}: expected exactness at (2,1,0) {expected:?}, found {:?}",
                    found.iter().map(|x| x.to_string()).collect::<Vec<_>>()
                )
            })?;
            detected += 1;
        }
    }
    Ok(format!(
        "clean data passes; {detected}/20 mutations rejected as exactness failures at (2,1,0)"
    ))
}

fn criterion_10() -> Outcome {
    let m = monoid_universal(FinCat::cyclic_group(2), Z, 3).map_err(|e| e.to_string())?;
    ensure(m.h_is_multiplicative(), || "h is not multiplicative".into())?;
    let one = FpModule::free(Z, 1);
    let sign = ModMap::new(one.clone(), one.clone(), Mat::from_i64(Z, &[&[-1]])).unwrap();
    let r = m
        .realize(one, vec![sign.clone()])
        .map_err(|e| e.to_string())?;
    let g = m.monoid().mor("g").unwrap();
    ensure(
        r.matches_arrow(&freydlab::additive::Arrow::Mor(g), &sign),
        || "r_ρ(h(g)) differs from ρ(g)".into(),
    )?;
    ensure(m.factors(&r), || {
        "the sign representation does not factor through h".into()
    })?;
    Ok("r_ρ ∘ h = ρ on the generator of C2".into())
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("point_homology", &["build", "point.flab", "homology"]),
    ("two_relative", &["build", "two_relative.flab", "relative"]),
    ("two_zero_k", &["build", "two_zero_k.flab", "from-k"]),
    ("two_from_k", &["build", "two_from_k.flab", "from-k"]),
    ("two_graded", &["build", "two_graded.flab", "homology"]),
    ("two_dual", &["build", "two_graded.flab", "dual"]),
    ("diamond_add", &["build", "diamond_add.flab", "add"]),
    ("two_iszero", &["iszero", "two_relative.flab", "H_0(1,1)"]),
    ("two_report", &["report", "two_from_k.flab"]),
];

fn criterion_11() -> Outcome {
    let tests = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests");
    let mut runs = 0;
    for (name, args) in GOLDEN {
        let expected = std::fs::read_to_string(tests.join("golden").join(format!("{name}.json")))
            .map_err(|e| e.to_string())?;
        for threads in ["1", "1", "2", "8"] {
            let session = tests
                .join("sessions")
                .join(args[1])
                .to_string_lossy()
                .into_owned();
            let mut argv = vec!["freydlab", "--threads", threads, args[0], &session];
            argv.extend(&args[2..]);
            let (code, out, err) = freydlab::cli::run_captured(argv);
            ensure(code == 0, || format!("{name}: exit {code}: {err}"))?;
            ensure(out == expected, || {
                format!("{name} with {threads} threads differs from the golden file")
            })?;
            runs += 1;
        }
    }
    Ok(format!(
        "{} golden files, {runs} runs byte-identical",
        GOLDEN.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("abelian axioms", criterion_1),
        ("point example", criterion_2),
        ("Q-linearization", criterion_3),
        ("simples of Ab_Z", criterion_4),
        ("duality", criterion_5),
        ("purity", criterion_6),
        ("relative homology on 2", criterion_7),
        ("k-projection sections", criterion_8),
        ("axiom checker robustness", criterion_9),
        ("monoid representation", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} ({secs:.1}s)", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

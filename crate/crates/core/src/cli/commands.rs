use rayon::prelude::*;
use serde_json::{json, Value};

use super::engine::{CliError, Context, Obj, Universe};
use super::expr::{parse_mor, parse_obj};
use super::session::{parse_module, parse_ring, parse_session, Session, Tok};
use crate::diagram::{nori_diagram, pairs_category, FinCat};
use crate::freyd::AbCat;
use crate::homology::{
    check_coproduct, k_projection, relative_k_projection, HomologyError, RelUniversalCat,
};
use crate::quotient::Certificate;

pub const SCHEMA: u32 = 1;

/// What a verb produced: the JSON report and the process exit code.
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

fn envelope(command: &str, mut body: Value) -> Value {
    body["schema"] = json!(SCHEMA);
    body["command"] = json!(command);
    body
}

fn ok(command: &str, body: Value) -> Outcome {
    Outcome {
        code: 0,
        report: envelope(command, body),
    }
}

pub fn load(text: &str) -> Result<Session, CliError> {
    Ok(parse_session(text)?)
}

fn category_json(c: &FinCat) -> Value {
    json!({
        "objects": c.objects,
        "morphisms": c.mors.iter().map(|m| m.name.clone()).collect::<Vec<_>>(),
        "generators": c.generators.iter().map(|&g| c.mors[g].name.clone()).collect::<Vec<_>>(),
    })
}

fn check_entry(name: &str, result: Result<Value, String>) -> (bool, Value) {
    match result {
        Ok(mut v) => {
            v["name"] = json!(name);
            v["ok"] = json!(true);
            (true, v)
        }
        Err(e) => (false, json!({ "name": name, "ok": false, "error": e })),
    }
}

/// Category well-formedness, distinguished closure, points, coproducts and axioms.
pub fn check(session: Session, bounds: super::engine::Bounds) -> Outcome {
    let mut checks = Vec::new();
    let mut all = true;
    let mut push = |name: &str, r: Result<Value, String>| {
        let (good, v) = check_entry(name, r);
        all &= good;
        checks.push(v);
    };
    let ctx = match Context::new(session, bounds) {
        Ok(ctx) => ctx,
        Err(e) => {
            push("category", Err(e.to_string()));
            return Outcome {
                code: 1,
                report: envelope("check", json!({ "ok": false, "checks": checks })),
            };
        }
    };
    let c = &ctx.base;
    push(
        "category",
        Ok(json!({ "objects": c.num_objects(), "morphisms": c.num_mors() })),
    );
    let pairs = ctx
        .distinguished()
        .map_err(|e| e.to_string())
        .and_then(|d| pairs_category(c, &d).map_err(|e| e.to_string()));
    push(
        "distinguished",
        pairs
            .as_ref()
            .map(|p| json!({ "pairs": p.num_pairs() }))
            .map_err(Clone::clone),
    );
    if !ctx.session.points.is_empty() {
        push(
            "points",
            ctx.points()
                .map(|p| json!({ "points": p.len() }))
                .map_err(|e| e.to_string()),
        );
    }
    if !ctx.session.coproducts.is_empty() {
        let r = ctx
            .coproduct_rows()
            .map_err(|e| e.to_string())
            .and_then(|rows| {
                for row in &rows {
                    check_coproduct(c, row).map_err(|e| e.to_string())?;
                }
                Ok(json!({ "rows": rows.len() }))
            });
        push("coproducts", r);
    }
    if ctx.session.homology.is_some() {
        let r = pairs.as_ref().map_err(Clone::clone).and_then(|p| {
            let nori = nori_diagram(p, ctx.session.window).map_err(|e| e.to_string())?;
            let k = ctx.homology_data(&nori).map_err(|e| e.to_string())?;
            let v = k.check_axioms();
            if v.is_empty() {
                Ok(json!({ "vertices": nori.quiver.vertices.len(), "edges": nori.quiver.edges.len() }))
            } else {
                Err(v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; "))
            }
        });
        push("homology axioms", r);
    }
    if ctx.session.realization.is_some() {
        let r = ctx.graded().and_then(|g| {
            let k = ctx.graded_data()?;
            Ok(g.verify_factorization(&k)?)
        });
        push(
            "realization",
            match r {
                Ok(true) => Ok(json!({})),
                Ok(false) => {
                    Err("the realization does not factor through the universal homology".into())
                }
                Err(e) => Err(e.to_string()),
            },
        );
    }
    Outcome {
        code: if all { 0 } else { 1 },
        report: envelope("check", json!({ "ok": all, "checks": checks })),
    }
}

fn graded_name(c: &FinCat, x: usize, i: i64) -> String {
    format!("H_{i}({})", c.objects[x])
}

fn relative_name(ru: &RelUniversalCat, v: usize) -> String {
    let (p, i) = ru.nori.vertex_info(v);
    format!("H_{i}{}", ru.nori.pairs.name(p))
}

/// Requested `[homs]`, computed in parallel and reported in file order.
fn homs(ctx: &Context, u: &Universe) -> Result<Vec<Value>, CliError> {
    let pairs: Vec<(String, String)> = ctx
        .session
        .homs
        .iter()
        .map(|(x, y)| (x.text.clone(), y.text.clone()))
        .collect();
    let objs = pairs
        .iter()
        .map(|(x, y)| Ok((u.obj(&parse_obj(x)?)?, u.obj(&parse_obj(y)?)?)))
        .collect::<Result<Vec<(Obj, Obj)>, CliError>>()?;
    let sat = ctx.bounds.sat;
    let results: Vec<Result<Value, CliError>> =
        objs.par_iter().map(|(x, y)| u.hom(x, y, sat)).collect();
    pairs
        .into_iter()
        .zip(results)
        .map(|((x, y), r)| {
            let mut v = r?;
            v["src"] = json!(x);
            v["dst"] = json!(y);
            Ok(v)
        })
        .collect()
}

pub fn build(
    ctx: &Context,
    target: &str,
    k: Option<i64>,
    mode_flag: Option<&str>,
) -> Result<Outcome, CliError> {
    let body = match target {
        "homology" => build_homology(ctx)?,
        "point" => build_point(ctx)?,
        "relative" => build_relative(ctx)?,
        "add" => build_add(ctx)?,
        "kproj" => {
            let k = k.ok_or_else(|| CliError::Usage("build kproj needs --k".into()))?;
            build_kproj(ctx, k, &ctx.mode(mode_flag))?
        }
        "dual" => build_dual(ctx, &ctx.mode(mode_flag))?,
        "from-k" => build_from_k(ctx)?,
        other => {
            return Err(CliError::Usage(format!(
                "unknown target {other:?}; expected homology, relative, point, add, kproj, dual or from-k"
            )))
        }
    };
    let mut body = body;
    body["target"] = json!(target);
    Ok(ok("build", body))
}

fn build_homology(ctx: &Context) -> Result<Value, CliError> {
    let u = ctx.universe("graded")?;
    let Universe::Graded(g) = &u else {
        unreachable!()
    };
    let c = &g.category;
    let objects: Vec<(usize, i64)> = g
        .degrees()
        .flat_map(|i| (0..c.num_objects()).map(move |x| (x, i)))
        .collect();
    let ends: Vec<Result<Value, CliError>> = objects
        .par_iter()
        .map(|&(x, i)| {
            let h = g.h(x, i)?;
            let m = g.hom_module(&h, &h)?.invariants();
            Ok(json!({ "object": graded_name(c, x, i), "module": m.describe(), "factors": m.factors() }))
        })
        .collect();
    let mut body = json!({
        "window": [g.window.0, g.window.1],
        "category": category_json(c),
        "objects": objects.iter().map(|&(x, i)| graded_name(c, x, i)).collect::<Vec<_>>(),
        "endomorphisms": ends.into_iter().collect::<Result<Vec<_>, _>>()?,
        "homs": homs(ctx, &u)?,
    });
    if ctx.session.realization.is_some() {
        body["factorization"] = json!(g.verify_factorization(&ctx.graded_data()?)?);
    }
    Ok(body)
}

fn build_point(ctx: &Context) -> Result<Value, CliError> {
    let u = ctx.universe("point")?;
    let Universe::Point(p) = &u else {
        unreachable!()
    };
    let g = &p.graded;
    let c = &g.category;
    let mut objects = Vec::new();
    for i in g.degrees() {
        for x in 0..c.num_objects() {
            let a = p.is_zero(&g.h(x, i)?)?;
            let mut v = json!({ "object": graded_name(c, x, i), "zero": a.label() });
            if let Some(cert) = a.certificate() {
                v["certificate_nodes"] = json!(cert.size());
            }
            objects.push(v);
        }
    }
    Ok(json!({
        "window": [g.window.0, g.window.1],
        "points": p.points.iter().map(|&x| c.objects[x].clone()).collect::<Vec<_>>(),
        "killed_components": g.degrees().filter(|&i| p.kills_component(i)).collect::<Vec<_>>(),
        "objects": objects,
        "homs": homs(ctx, &u)?,
    }))
}

fn relative_summary(ru: &RelUniversalCat) -> Value {
    let n = &ru.nori;
    let p = &n.pairs;
    json!({
        "window": [n.window.0, n.window.1],
        "pairs": (0..p.num_pairs()).map(|x| p.name(x).to_string()).collect::<Vec<_>>(),
        "vertices": n.quiver.vertices.len(),
        "edges": n.quiver.edges.len(),
        "triples": n.triples.iter().map(|t| json!({ "triple": t.name(p), "identity": t.is_identity_only(p) })).collect::<Vec<_>>(),
        "non_identity_triples": ru.non_identity_triples().iter().map(|&t| n.triples[t].name(p)).collect::<Vec<_>>(),
        "cubes": ru.cubes.len(),
    })
}

fn build_relative(ctx: &Context) -> Result<Value, CliError> {
    let ru = ctx.relative()?;
    let mut body = relative_summary(&ru);
    body["category"] = category_json(&ru.nori.pairs.base);
    body["generators"] = json!(ru
        .gens()
        .labels
        .iter()
        .zip(&ru.kinds)
        .map(|(l, k)| {
            let mut v = serde_json::to_value(k).expect("serializable");
            v["label"] = json!(l);
            v
        })
        .collect::<Vec<_>>());
    let (a, b) = ru.window();
    let mut purity = Vec::new();
    for pair in 0..ru.nori.pairs.num_pairs() {
        for i in a..=b {
            match ru.purity_certificate(pair, i) {
                Ok(cert) => purity.push(json!({
                    "object": relative_name(&ru, ru.nori.vertex(pair, i).expect("in window")),
                    "certificate_nodes": cert.size(),
                    "verified": ru.verify(&cert),
                })),
                Err(HomologyError::NotDistinguished(_)) => break,
                Err(e) => return Err(e.into()),
            }
        }
    }
    body["purity"] = json!(purity);
    Ok(body)
}

fn build_add(ctx: &Context) -> Result<Value, CliError> {
    let rows = ctx.coproduct_rows()?;
    let u = ctx.universe("add")?;
    let Universe::Add(ru, q) = &u else {
        unreachable!()
    };
    let c = &ru.nori.pairs.base;
    let base_gens = ru.gens().len();
    let gens = q.gens().expect("formal quotient");
    let mut body = relative_summary(ru);
    body["rows"] = json!(rows
        .iter()
        .map(|r| json!({
            "coproduct": c.objects[r.coproduct],
            "summands": r.summands.iter().map(|&x| c.objects[x].clone()).collect::<Vec<_>>(),
        }))
        .collect::<Vec<_>>());
    body["generators"] = json!(gens.len());
    body["additivity_generators"] = json!(gens.labels[base_gens..]);
    Ok(body)
}

fn build_kproj(ctx: &Context, k: i64, mode: &str) -> Result<Value, CliError> {
    let mut kills = Vec::new();
    let (kp, source) = match mode {
        "graded" | "point" => {
            let g = ctx.graded()?;
            let kp = k_projection(&g, k)?;
            let c = &g.category;
            for i in g.degrees() {
                for x in 0..c.num_objects() {
                    let h = g.h(x, i)?;
                    kills.push(json!({ "object": graded_name(c, x, i), "killed": kp.target().is_zero_obj(&kp.pi_graded(&h)) }));
                }
            }
            let anchor = c.objects[kp.anchor].clone();
            (kp, json!({ "source": "graded", "anchor": anchor }))
        }
        "relative" | "from-k" | "add" => {
            let ru = ctx.relative()?;
            let kp = relative_k_projection(&ru, k)?;
            for v in 0..ru.nori.quiver.vertices.len() {
                kills.push(json!({ "object": relative_name(&ru, v), "killed": kp.kills(&ru.cat.delta(v)) }));
            }
            let gens_killed = ru.gens().objects.iter().all(|x| kp.kills(x));
            let anchor = relative_name(&ru, kp.anchor);
            (
                kp,
                json!({ "source": "relative", "anchor": anchor, "generators_killed": gens_killed }),
            )
        }
        other => return Err(CliError::Usage(format!("unknown mode {other:?}"))),
    };
    let t = kp.target();
    let value = kp.pi.obj(&kp.iota.obj(&t.universal()));
    let mut body = source;
    body["k"] = json!(k);
    body["section_holds"] = json!(kp.section_holds());
    body["section_value"] = json!(t.evaluate_at_ring(&value)?.describe());
    body["kills"] = json!(kills);
    Ok(body)
}

fn build_dual(ctx: &Context, mode: &str) -> Result<Value, CliError> {
    if mode == "relative" {
        let ru = ctx.relative()?;
        let (dcat, dgens) = ru.dual();
        let back = ru
            .gens()
            .objects
            .iter()
            .zip(&dgens.objects)
            .all(|(x, y)| dcat.dual_obj(y) == *x);
        return Ok(json!({ "source": "relative", "generators": dgens.len(), "involution": back }));
    }
    let g = ctx.graded()?;
    let cat = &g.component;
    let dual = cat.dual();
    let xs = cat.small_presentations(ctx.bounds.size);
    let pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..xs.len()).map(move |j| (i, j)))
        .collect();
    let results: Vec<Result<Option<Value>, CliError>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let h = cat.hom(&xs[i], &xs[j])?.invariants();
            let d = dual
                .hom(&cat.dual_obj(&xs[j]), &cat.dual_obj(&xs[i]))?
                .invariants();
            Ok((h != d)
                .then(|| json!({ "src": i, "dst": j, "hom": h.describe(), "dual": d.describe() })))
        })
        .collect();
    let mismatches = results
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    Ok(json!({
        "source": "graded",
        "size_bound": ctx.bounds.size,
        "presentations": xs.len(),
        "pairs_checked": pairs.len(),
        "mismatches": mismatches,
    }))
}

fn build_from_k(ctx: &Context) -> Result<Value, CliError> {
    let u = ctx.universe("from-k")?;
    let Universe::FromK(ru, k) = &u else {
        unreachable!()
    };
    let values: Vec<Value> = (0..ru.nori.quiver.vertices.len())
        .map(|v| {
            let m = k.realize(&ru.cat.delta(v)).expect("realization quotient");
            json!({ "object": relative_name(ru, v), "value": m.describe(), "zero": m.is_zero() })
        })
        .collect();
    Ok(json!({
        "window": [ru.window().0, ru.window().1],
        "axioms": "ok",
        "factorization": k.verify_factorization(),
        "all_zero": values.iter().all(|v| v["zero"] == json!(true)),
        "values": values,
        "homs": homs(ctx, &u)?,
    }))
}

pub fn hom(ctx: &Context, x: &str, y: &str, mode: Option<&str>) -> Result<Outcome, CliError> {
    let mode = ctx.mode(mode);
    let u = ctx.universe(&mode)?;
    let (ox, oy) = (u.obj(&parse_obj(x)?)?, u.obj(&parse_obj(y)?)?);
    let mut body = u.hom(&ox, &oy, ctx.bounds.sat)?;
    body["mode"] = json!(mode);
    body["src"] = json!(x);
    body["dst"] = json!(y);
    Ok(ok("hom", body))
}

pub fn kernel(ctx: &Context, f: &str, mode: Option<&str>) -> Result<Outcome, CliError> {
    let mode = ctx.mode(mode);
    let u = ctx.universe(&mode)?;
    let m = u.mor(&parse_mor(f)?)?;
    let cat = u.cat();
    let k = Obj {
        pres: cat.kernel(&m.f).src,
        degree: m.degree,
    };
    let a = u.is_zero(&k)?;
    let mut body = json!({
        "mode": mode,
        "morphism": f,
        "kernel": cat.describe_obj(&k.pres),
        "zero": a.label(),
    });
    if let Some(d) = k.degree {
        body["degree"] = json!(d);
    }
    Ok(ok("kernel", body))
}

pub fn iszero(ctx: &Context, x: &str, mode: Option<&str>) -> Result<Outcome, CliError> {
    let mode = ctx.mode(mode);
    let u = ctx.universe(&mode)?;
    let o = u.obj(&parse_obj(x)?)?;
    let a = u.is_zero(&o)?;
    let mut body = serde_json::to_value(&a).expect("serializable");
    body["mode"] = json!(mode);
    body["object"] = json!(x);
    if let Some(d) = o.degree {
        body["degree"] = json!(d);
    }
    Ok(ok("iszero", body))
}

/// Accepts a bare certificate or an `iszero` report carrying one.
fn certificate_from(v: &Value) -> Result<Certificate, CliError> {
    let inner = v.pointer("/evidence/certificate").unwrap_or(v);
    serde_json::from_value(inner.clone())
        .map_err(|e| CliError::Usage(format!("not a certificate: {e}")))
}

pub fn certify(
    ctx: &Context,
    cert_text: &str,
    x: Option<&str>,
    mode: Option<&str>,
) -> Result<Outcome, CliError> {
    let v: Value = serde_json::from_str(cert_text)
        .map_err(|e| CliError::Usage(format!("bad certificate JSON: {e}")))?;
    let mode = ctx.mode(mode.or_else(|| v.get("mode").and_then(Value::as_str)));
    let cert = certificate_from(&v)?;
    let u = ctx.universe(&mode)?;
    let target = x
        .or_else(|| v.get("object").and_then(Value::as_str))
        .map(|s| s.to_string());
    let obj = match &target {
        Some(s) => Some(u.obj(&parse_obj(s)?)?),
        None => None,
    };
    let degree = obj
        .as_ref()
        .and_then(|o| o.degree)
        .or_else(|| v.get("degree").and_then(Value::as_i64));
    let valid = u.verify(&cert, degree)?;
    let mut body = json!({ "mode": mode, "valid": valid, "nodes": cert.size() });
    let mut good = valid;
    if let (Some(s), Some(o)) = (&target, &obj) {
        let matches = u.subject(&cert, degree).as_ref() == Some(&o.pres);
        body["object"] = json!(s);
        body["subject_matches"] = json!(matches);
        good &= matches;
    }
    Ok(Outcome {
        code: if good { 0 } else { 1 },
        report: envelope("certify", body),
    })
}

pub fn eval(
    ctx: &Context,
    x: &str,
    at: Option<&str>,
    ring: Option<&str>,
    mode: Option<&str>,
) -> Result<Outcome, CliError> {
    let mode = ctx.mode(mode);
    let u = ctx.universe(&mode)?;
    let o = u.obj(&parse_obj(x)?)?;
    let cat = u.cat();
    let flag = |s: &str| Tok {
        text: s.to_string(),
        line: 0,
        col: 0,
    };
    let mut body = json!({ "mode": mode, "object": x });
    if at.is_some() || ring.is_some() {
        if !cat.is_point_base() {
            return Err(CliError::Failed(
                "--at and --ring evaluate hieratic modules; they need `category point`".into(),
            ));
        }
        let (cat, pres) = match ring {
            Some(r) => {
                let r = parse_ring(&flag(r)).map_err(|e| CliError::Usage(e.msg))?;
                let changed = cat.change_ring(r);
                let pres = cat.change_ring_obj(&o.pres, r);
                body["ring"] = json!(r.symbol());
                (changed, pres)
            }
            None => (cat.clone(), o.pres.clone()),
        };
        let m = match at {
            Some(s) => parse_module(cat.ring(), &flag(s)).map_err(|e| CliError::Usage(e.msg))?,
            None => crate::coeff::FpModule::free(cat.ring(), 1),
        };
        let r = AbCat::point_realization(&cat, m.clone())?;
        body["at"] = json!(m.describe());
        body["value"] = json!(r.obj(&pres).describe());
        return Ok(ok("eval", body));
    }
    let value = match &u {
        Universe::FromK(_, k) => k.realize(&o.pres).expect("realization quotient"),
        Universe::Graded(g) | Universe::Point(crate::homology::PointQuotient { graded: g, .. }) => {
            let rs = g.realize(&ctx.graded_data()?)?;
            let i = o.degree.unwrap_or(g.window.0);
            g.check_degree(i)?;
            rs[(i - g.window.0) as usize].obj(&o.pres)
        }
        _ => {
            return Err(CliError::Failed(format!(
                "nothing to evaluate in {mode} mode; give a [homology] block (from-k) or a [realization] block (graded)"
            )))
        }
    };
    body["value"] = json!(value.describe());
    Ok(ok("eval", body))
}

/// Check plus a summary of every construction the session supports.
pub fn report(session: Session, bounds: super::engine::Bounds) -> Outcome {
    let checked = check(session.clone(), bounds);
    let mut body = json!({ "check": checked.report["checks"].clone(), "ok": checked.code == 0 });
    let mut code = checked.code;
    if let Ok(ctx) = Context::new(session, bounds) {
        match ctx.graded() {
            Ok(g) => {
                body["graded"] = json!({
                    "objects": g.category.num_objects() * g.degrees().count(),
                    "final_object": g.category.final_object().map(|x| g.category.objects[x].clone()),
                })
            }
            Err(e) => body["graded"] = json!({ "error": e.to_string() }),
        }
        match ctx.relative() {
            Ok(ru) => {
                let mut s = relative_summary(&ru);
                s["generators"] = json!(ru.gens().len());
                s["initial_object"] =
                    json!(ru
                        .restricted_homology()
                        .ok()
                        .map(|r| ru.nori.pairs.base.objects[r.zero].clone()));
                body["relative"] = s;
            }
            Err(e) => body["relative"] = json!({ "error": e.to_string() }),
        }
        if ctx.session.homology.is_some() {
            match build_from_k(&ctx) {
                Ok(v) => {
                    body["from_k"] = json!({
                        "factorization": v["factorization"].clone(),
                        "all_zero": v["all_zero"].clone(),
                        "nonzero": v["values"]
                            .as_array()
                            .expect("values")
                            .iter()
                            .filter(|x| x["zero"] == json!(false))
                            .map(|x| json!({ "object": x["object"].clone(), "value": x["value"].clone() }))
                            .collect::<Vec<_>>(),
                    })
                }
                Err(e) => {
                    code = 1;
                    body["from_k"] = json!({ "error": e.to_string() });
                }
            }
        }
    }
    Outcome {
        code,
        report: envelope("report", body),
    }
}

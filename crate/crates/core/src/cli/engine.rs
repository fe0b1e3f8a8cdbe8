use serde_json::{json, Value};
use thiserror::Error;

use super::expr::{ExprError, MorExpr, ObjExpr};
use super::session::{Distinguished, MatSpec, ParseError, Preset, Session, Tok};
use crate::coeff::{FpModule, ModMap};
use crate::diagram::{distinguished_by_names, monos, DiagramError, FinCat, NoriDiagram};
use crate::freyd::{AbCat, AbMor, FreydError, Presentation};
use crate::homology::{
    point_quotient, universal_homology, universal_relative, CoproductRow, GradedAbCat, GradedObj,
    HomologyData, HomologyError, PointQuotient, RelHomologyData, RelUniversalCat, UniversalFrom,
};
use crate::quotient::{Answer, Certificate, Evidence, QuotientError, SerreQuotient};

/// Search and enumeration bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub rewrite: usize,
    pub cert: usize,
    pub sat: usize,
    pub size: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            rewrite: 1000,
            cert: 4,
            sat: 3,
            size: 2,
        }
    }
}

impl Bounds {
    /// Apply `key=value` pairs separated by commas, e.g. `cert=6,sat=2`.
    pub fn apply_env(&mut self, spec: &str) -> Result<(), CliError> {
        for part in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| {
                CliError::Usage(format!(
                    "FREYDLAB_BOUNDS: expected key=value, found {part:?}"
                ))
            })?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("FREYDLAB_BOUNDS: bad value in {part:?}")))?;
            match k.trim() {
                "rewrite" => self.rewrite = v,
                "cert" => self.cert = v,
                "sat" => self.sat = v,
                "size" => self.size = v,
                other => {
                    return Err(CliError::Usage(format!(
                        "FREYDLAB_BOUNDS: unknown bound {other:?}"
                    )))
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("{0}")]
    Usage(String),
    /// The input is well formed but a construction or prerequisite failed.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            _ => 2,
        }
    }
}

macro_rules! failed_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Failed(e.to_string())
            }
        })*
    };
}

failed_from!(DiagramError, HomologyError, FreydError, QuotientError);

fn unknown(what: &str, name: &str) -> CliError {
    CliError::Usage(format!("unknown {what} {name:?}"))
}

/// A parsed session together with its base category.
pub struct Context {
    pub session: Session,
    pub bounds: Bounds,
    pub base: FinCat,
}

impl Context {
    pub fn new(session: Session, bounds: Bounds) -> Result<Context, CliError> {
        let base = session.build_category(bounds.rewrite)?;
        Ok(Context {
            session,
            bounds,
            base,
        })
    }

    pub fn object(&self, t: &Tok) -> Result<usize, CliError> {
        self.base
            .object(&t.text)
            .map_err(|e| t.err(e.to_string()).into())
    }

    pub fn distinguished(&self) -> Result<Vec<bool>, CliError> {
        Ok(match &self.session.distinguished {
            Distinguished::All => vec![true; self.base.num_mors()],
            Distinguished::Monos => monos(&self.base),
            Distinguished::Names(ts) => {
                for t in ts {
                    self.base.mor(&t.text).map_err(|e| t.err(e.to_string()))?;
                }
                let names: Vec<&str> = ts.iter().map(|t| t.text.as_str()).collect();
                distinguished_by_names(&self.base, &names)?
            }
        })
    }

    pub fn points(&self) -> Result<Vec<usize>, CliError> {
        self.session.points.iter().map(|t| self.object(t)).collect()
    }

    pub fn graded(&self) -> Result<GradedAbCat, CliError> {
        Ok(universal_homology(
            self.base.clone(),
            self.session.ring,
            self.session.window,
        )?)
    }

    pub fn point_quotient(&self) -> Result<PointQuotient, CliError> {
        let g = self.graded()?;
        let points = self.points()?;
        if points.is_empty() {
            return Err(CliError::Failed(
                "the point quotient needs a `points` line".into(),
            ));
        }
        Ok(point_quotient(&g, &points, self.bounds.cert)?)
    }

    pub fn relative(&self) -> Result<RelUniversalCat, CliError> {
        let d = self.distinguished()?;
        Ok(universal_relative(
            &self.base,
            &d,
            self.session.ring,
            self.session.window,
            self.bounds.cert,
        )?)
    }

    pub fn coproduct_rows(&self) -> Result<Vec<CoproductRow>, CliError> {
        let c = &self.base;
        let mut rows = Vec::new();
        for spec in &self.session.coproducts {
            let s = self.object(&spec.coproduct)?;
            let mut summands = Vec::new();
            let mut injections = Vec::new();
            for t in &spec.summands {
                let x = self.object(t)?;
                let hom = c.hom(x, s);
                if hom.len() != 1 {
                    return Err(t
                        .err(format!(
                            "expected exactly one morphism {} -> {}, found {}",
                            t.text,
                            spec.coproduct.text,
                            hom.len()
                        ))
                        .into());
                }
                summands.push(x);
                injections.push(hom[0]);
            }
            rows.push(CoproductRow {
                summands,
                coproduct: s,
                injections,
            });
        }
        Ok(rows)
    }

    /// Relative homology data from the `[homology]` block on the given Nori diagram.
    pub fn homology_data(&self, nori: &NoriDiagram) -> Result<RelHomologyData, CliError> {
        let spec = self
            .session
            .homology
            .as_ref()
            .ok_or_else(|| CliError::Failed("no [homology] block".into()))?;
        let ring = self.session.ring;
        let mut k = match &spec.preset {
            Preset::Zero => RelHomologyData::zero(nori, ring),
            Preset::AlmostTrivial(a) => RelHomologyData::almost_trivial(nori, a)?,
        };
        let p = &nori.pairs;
        let pair = |t: &Tok| {
            p.find(&t.text)
                .map_err(|_| t.err(format!("unknown pair {}", t.text)))
        };
        let vertex = |t: &Tok, i: i64| -> Result<usize, ParseError> {
            let v = pair(t)?;
            nori.vertex(v, i)
                .ok_or_else(|| t.err(format!("degree {i} is outside the window")))
        };
        for (t, i, m) in &spec.values {
            k.values[vertex(t, *i)?] = m.clone();
        }
        for (e, edge) in nori.quiver.edges.iter().enumerate() {
            if k.maps[e].src != k.values[edge.src] || k.maps[e].dst != k.values[edge.dst] {
                k.maps[e] = ModMap::zero(&k.values[edge.src], &k.values[edge.dst]);
            }
        }
        for (s, d, i, mat) in &spec.maps {
            let (ps, pd) = (pair(s)?, pair(d)?);
            let hom = p.cat.hom(ps, pd);
            let m = match hom
                .iter()
                .copied()
                .filter(|&m| !p.cat.is_identity(m))
                .collect::<Vec<_>>()[..]
            {
                [m] => m,
                [] => {
                    return Err(s
                        .err(format!(
                            "no non-identity pair morphism {} -> {}",
                            s.text, d.text
                        ))
                        .into())
                }
                _ => {
                    return Err(s
                        .err(format!("several pair morphisms {} -> {}", s.text, d.text))
                        .into())
                }
            };
            let e = nori
                .gamma_edge(m, *i)
                .ok_or_else(|| s.err(format!("degree {i} is outside the window")))?;
            k.maps[e] = module_map(
                &k.values[nori.quiver.edges[e].src],
                &k.values[nori.quiver.edges[e].dst],
                mat,
                s,
            )?;
        }
        for (t, i, mat) in &spec.boundaries {
            let ti = (0..nori.triples.len())
                .find(|&x| nori.triples[x].name(p) == t.text)
                .ok_or_else(|| t.err(format!("unknown triple {}", t.text)))?;
            let e = nori
                .boundary_edge(ti, *i)
                .ok_or_else(|| t.err(format!("no boundary of {} in degree {i}", t.text)))?;
            k.maps[e] = module_map(
                &k.values[nori.quiver.edges[e].src],
                &k.values[nori.quiver.edges[e].dst],
                mat,
                t,
            )?;
        }
        Ok(k)
    }

    /// Graded homology data from the `[realization]` block; unlisted values and maps are zero.
    pub fn graded_data(&self) -> Result<HomologyData, CliError> {
        let spec = self
            .session
            .realization
            .as_ref()
            .ok_or_else(|| CliError::Failed("no [realization] block".into()))?;
        let ring = self.session.ring;
        let c = &self.base;
        let (a, b) = self.session.window;
        let degrees = (b - a + 1) as usize;
        let slot = |t: &Tok, i: i64| -> Result<usize, ParseError> {
            if i < a || i > b {
                return Err(t.err(format!("degree {i} is outside the window")));
            }
            Ok((i - a) as usize)
        };
        let mut values = vec![vec![FpModule::zero(ring); c.num_objects()]; degrees];
        for (t, i, m) in &spec.values {
            let x = self.object(t)?;
            values[slot(t, *i)?][x] = m.clone();
        }
        let mut maps: Vec<Vec<ModMap>> = (0..degrees)
            .map(|d| {
                c.generators
                    .iter()
                    .map(|&g| ModMap::zero(&values[d][c.mors[g].src], &values[d][c.mors[g].dst]))
                    .collect()
            })
            .collect();
        for (t, i, mat) in &spec.maps {
            let f = c.mor(&t.text).map_err(|e| t.err(e.to_string()))?;
            let gi = c
                .generators
                .iter()
                .position(|&g| g == f)
                .ok_or_else(|| t.err(format!("{} is not a generating morphism", t.text)))?;
            let d = slot(t, *i)?;
            maps[d][gi] = module_map(&values[d][c.mors[f].src], &values[d][c.mors[f].dst], mat, t)?;
        }
        Ok(HomologyData {
            window: (a, b),
            values,
            maps,
        })
    }

    pub fn universe(&self, mode: &str) -> Result<Universe, CliError> {
        Ok(match mode {
            "graded" => Universe::Graded(self.graded()?),
            "point" => Universe::Point(self.point_quotient()?),
            "relative" => Universe::Relative(self.relative()?),
            "add" => {
                let ru = self.relative()?;
                let q = ru.additive_quotient(&self.coproduct_rows()?, self.bounds.cert)?;
                Universe::Add(ru, q)
            }
            "from-k" => {
                let ru = self.relative()?;
                let k = self.homology_data(&ru.nori)?;
                let u = k.universal_from()?;
                Universe::FromK(ru, u)
            }
            other => return Err(CliError::Usage(format!("unknown mode {other:?}"))),
        })
    }

    /// The mode named on the command line, else the session's, else `relative`.
    pub fn mode(&self, flag: Option<&str>) -> String {
        flag.map(str::to_lowercase)
            .or_else(|| self.session.mode.clone())
            .unwrap_or_else(|| "relative".into())
    }
}

fn module_map(
    src: &FpModule,
    dst: &FpModule,
    mat: &MatSpec,
    at: &Tok,
) -> Result<ModMap, ParseError> {
    match mat {
        None => Ok(ModMap::zero(src, dst)),
        Some(m) => {
            if m.rows() != dst.gens() || m.cols() != src.gens() {
                return Err(at.err(format!(
                    "matrix is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dst.gens(),
                    src.gens()
                )));
            }
            ModMap::new(src.clone(), dst.clone(), m.clone()).map_err(|e| at.err(e.to_string()))
        }
    }
}

/// The category expressions are evaluated in.
pub enum Universe {
    Graded(GradedAbCat),
    Point(PointQuotient),
    Relative(RelUniversalCat),
    Add(RelUniversalCat, SerreQuotient),
    FromK(RelUniversalCat, UniversalFrom),
}

#[derive(Clone, Debug)]
pub struct Obj {
    pub pres: Presentation,
    /// Degree of a graded object.
    pub degree: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Mor {
    pub f: AbMor,
    pub degree: Option<i64>,
}

impl Universe {
    pub fn cat(&self) -> &AbCat {
        match self {
            Universe::Graded(g) => &g.component,
            Universe::Point(p) => &p.graded.component,
            Universe::Relative(ru) | Universe::Add(ru, _) | Universe::FromK(ru, _) => &ru.cat,
        }
    }

    fn graded(&self) -> Option<&GradedAbCat> {
        match self {
            Universe::Graded(g) => Some(g),
            Universe::Point(p) => Some(&p.graded),
            _ => None,
        }
    }

    fn relative(&self) -> Option<&RelUniversalCat> {
        match self {
            Universe::Relative(ru) | Universe::Add(ru, _) | Universe::FromK(ru, _) => Some(ru),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Universe::Graded(_) => "graded",
            Universe::Point(_) => "point",
            Universe::Relative(_) => "relative",
            Universe::Add(..) => "add",
            Universe::FromK(..) => "from-k",
        }
    }

    fn graded_obj(&self, x: &Obj) -> GradedObj {
        let a = self.graded().map(|g| g.window.0).unwrap_or(0);
        GradedObj {
            object: x.pres.clone(),
            degree: x.degree.unwrap_or(a),
        }
    }

    pub fn obj(&self, e: &ObjExpr) -> Result<Obj, CliError> {
        let cat = self.cat();
        Ok(match e {
            ObjExpr::Zero => Obj {
                pres: cat.zero_obj(),
                degree: None,
            },
            ObjExpr::H { degree, args } => {
                if let Some(g) = self.graded() {
                    let [x] = &args[..] else {
                        return Err(CliError::Usage(format!(
                            "H_{degree} in {} mode takes one object",
                            self.name()
                        )));
                    };
                    let xi = g.category.object(x).map_err(|_| unknown("object", x))?;
                    let h = g.h(xi, *degree)?;
                    Obj {
                        pres: h.object,
                        degree: Some(h.degree),
                    }
                } else {
                    let ru = self.relative().expect("relative universe");
                    let [x, y] = &args[..] else {
                        return Err(CliError::Usage(format!(
                            "H_{degree} in {} mode takes a pair X,Y",
                            self.name()
                        )));
                    };
                    let name = format!("({x},{y})");
                    let p = ru
                        .nori
                        .pairs
                        .find(&name)
                        .map_err(|_| unknown("pair", &name))?;
                    Obj {
                        pres: ru.h(p, *degree)?,
                        degree: None,
                    }
                }
            }
            ObjExpr::Ker(m) => {
                let m = self.mor(m)?;
                Obj {
                    pres: cat.kernel(&m.f).src,
                    degree: m.degree,
                }
            }
            ObjExpr::Coker(m) => {
                let m = self.mor(m)?;
                Obj {
                    pres: cat.cokernel(&m.f).dst,
                    degree: m.degree,
                }
            }
            ObjExpr::Im(m) => {
                let m = self.mor(m)?;
                Obj {
                    pres: cat.image(&m.f).src,
                    degree: m.degree,
                }
            }
        })
    }

    pub fn mor(&self, e: &MorExpr) -> Result<Mor, CliError> {
        let cat = self.cat();
        Ok(match e {
            MorExpr::Scaled(k, m) => {
                let s = cat
                    .ring()
                    .parse_scalar(k)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                let m = self.mor(m)?;
                Mor {
                    f: cat.scale(&m.f, &s),
                    degree: m.degree,
                }
            }
            MorExpr::Identity(o) => {
                let o = self.obj(o)?;
                Mor {
                    f: cat.identity(&o.pres),
                    degree: o.degree,
                }
            }
            MorExpr::Induced { degree, mor } => {
                let g = self.graded().ok_or_else(|| {
                    CliError::Usage(format!(
                        "H_i(f) needs graded or point mode; in {} mode use H_i((X,Y)->(X',Y'))",
                        self.name()
                    ))
                })?;
                g.check_degree(*degree)?;
                let f = g.category.mor(mor).map_err(|_| unknown("morphism", mor))?;
                Mor {
                    f: g.h_mor(f),
                    degree: Some(*degree),
                }
            }
            MorExpr::PairMap { degree, src, dst } => {
                let ru = self.relative().ok_or_else(|| {
                    CliError::Usage(format!(
                        "pair morphisms need a relative mode, not {}",
                        self.name()
                    ))
                })?;
                let p = &ru.nori.pairs;
                let s = p.find(src).map_err(|_| unknown("pair", src))?;
                let d = p.find(dst).map_err(|_| unknown("pair", dst))?;
                let m = match p.cat.hom(s, d) {
                    [m] => *m,
                    [] => return Err(CliError::Failed(format!("no pair morphism {src} -> {dst}"))),
                    _ => {
                        return Err(CliError::Failed(format!(
                            "several pair morphisms {src} -> {dst}"
                        )))
                    }
                };
                ru.h(s, *degree)?;
                Mor {
                    f: cat.delta_mor(&ru.delta_pair(m, *degree)),
                    degree: None,
                }
            }
            MorExpr::Boundary { degree, triple } => {
                let ru = self.relative().ok_or_else(|| {
                    CliError::Usage(format!(
                        "boundaries need a relative mode, not {}",
                        self.name()
                    ))
                })?;
                let t = (0..ru.nori.triples.len())
                    .find(|&t| ru.nori.triples[t].name(&ru.nori.pairs) == *triple)
                    .ok_or_else(|| unknown("triple", triple))?;
                let d = ru.delta_boundary(t, *degree).ok_or_else(|| {
                    CliError::Failed(format!("no boundary d_{degree}{triple} in the window"))
                })?;
                Mor {
                    f: cat.delta_mor(&d),
                    degree: None,
                }
            }
        })
    }

    /// Hom module, with the saturation stage for realization quotients.
    pub fn hom(&self, x: &Obj, y: &Obj, sat: usize) -> Result<Value, CliError> {
        let describe = |m: &FpModule, stage: Option<usize>| {
            let inv = m.invariants();
            let mut v = json!({ "module": inv.describe(), "factors": inv.factors() });
            if let Some(s) = stage {
                v["stage"] = json!(s);
            }
            v
        };
        match self {
            Universe::Graded(g) => Ok(describe(
                &g.hom_module(&self.graded_obj(x), &self.graded_obj(y))?,
                None,
            )),
            Universe::Point(p) => match p.hom_module(&self.graded_obj(x), &self.graded_obj(y))? {
                Some(m) => Ok(describe(&m, None)),
                None => Ok(json!({ "module": Value::Null, "status": "unknown" })),
            },
            Universe::FromK(_, u) => {
                let h = u.quotient_hom(&x.pres, &y.pres, sat)?;
                Ok(describe(&h.module, Some(h.stage)))
            }
            Universe::Relative(_) | Universe::Add(..) => Err(CliError::Failed(format!(
                "hom modules of the formal {} quotient are not computed; use from-k",
                self.name()
            ))),
        }
    }

    pub fn is_zero(&self, x: &Obj) -> Result<Answer, CliError> {
        Ok(match self {
            Universe::Graded(_) => {
                if self.cat().is_zero_obj(&x.pres) {
                    Answer::Yes {
                        evidence: Evidence::Certificate {
                            certificate: Certificate::Zero {
                                object: x.pres.clone(),
                            },
                        },
                    }
                } else {
                    Answer::No {
                        evidence: Evidence::NonzeroInBase,
                    }
                }
            }
            Universe::Point(p) => p.is_zero(&self.graded_obj(x))?,
            Universe::Relative(ru) => ru.is_zero(&x.pres),
            Universe::Add(_, q) => q.is_zero(&x.pres),
            Universe::FromK(_, u) => u.is_zero(&x.pres),
        })
    }

    /// Replay a certificate; `degree` picks the component of a point quotient.
    pub fn verify(&self, cert: &Certificate, degree: Option<i64>) -> Result<bool, CliError> {
        Ok(match self {
            Universe::Relative(ru) => ru.verify(cert),
            Universe::Add(_, q) => q.verify(cert),
            Universe::Point(p) => {
                let i = degree.ok_or_else(|| {
                    CliError::Usage("point mode needs an object to fix the degree".into())
                })?;
                p.component(i)?.verify(cert)
            }
            Universe::Graded(g) => match cert {
                Certificate::Zero { object } => g.component.is_zero_obj(object),
                _ => false,
            },
            Universe::FromK(..) => {
                return Err(CliError::Failed(
                    "from-k quotients answer through the realization, not certificates".into(),
                ))
            }
        })
    }

    /// Subject of a certificate, when it has one.
    pub fn subject(&self, cert: &Certificate, degree: Option<i64>) -> Option<Presentation> {
        match self {
            Universe::Relative(ru) => cert.subject(ru.gens()),
            Universe::Add(_, q) => cert.subject(q.gens()?),
            Universe::Point(p) => cert.subject(p.component(degree?).ok()?.gens()?),
            Universe::Graded(_) => match cert {
                Certificate::Zero { object } => Some(object.clone()),
                _ => None,
            },
            Universe::FromK(..) => None,
        }
    }
}

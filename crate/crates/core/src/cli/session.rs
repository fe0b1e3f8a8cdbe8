//! Line-oriented session files.
//!
//! ```text
//! # C = 2 with every morphism distinguished
//! ring Z
//! category chain 2
//! window -1 1
//!
//! [homology]
//! preset almost-trivial Z
//! ```
//!
//! Top-level keys come before the first `[block]` header. Each block runs until the
//! next header.

use std::fmt;

use serde_json::Value;

use crate::coeff::{FpModule, Mat, Ring};
use crate::diagram::{FinCat, Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// A token with its position (1-based line and column).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tok {
    pub text: String,
    pub line: usize,
    pub col: usize,
}

impl Tok {
    pub fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CategorySpec {
    Point,
    Chain(usize),
    Cyclic(usize),
    Poset {
        n: usize,
        order: Vec<(usize, usize)>,
    },
    Quiver {
        quiver: Quiver,
        relations: Vec<(Path, Path)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinguished {
    All,
    Monos,
    Names(Vec<Tok>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductSpec {
    pub coproduct: Tok,
    pub summands: Vec<Tok>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preset {
    Zero,
    AlmostTrivial(FpModule),
}

/// A matrix entry of a homology or realization block; `None` is the zero map.
pub type MatSpec = Option<Mat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologySpec {
    pub preset: Preset,
    pub values: Vec<(Tok, i64, FpModule)>,
    pub maps: Vec<(Tok, Tok, i64, MatSpec)>,
    pub boundaries: Vec<(Tok, i64, MatSpec)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RealizationSpec {
    pub values: Vec<(Tok, i64, FpModule)>,
    pub maps: Vec<(Tok, i64, MatSpec)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Session {
    pub ring: Ring,
    pub category: CategorySpec,
    pub window: (i64, i64),
    pub distinguished: Distinguished,
    pub points: Vec<Tok>,
    /// Default universal category for expressions.
    pub mode: Option<String>,
    pub coproducts: Vec<CoproductSpec>,
    pub homology: Option<HomologySpec>,
    pub realization: Option<RealizationSpec>,
    pub homs: Vec<(Tok, Tok)>,
}

const BLOCKS: &[&str] = &[
    "quiver",
    "relations",
    "order",
    "distinguished",
    "coproducts",
    "homology",
    "realization",
    "homs",
];
pub const MODES: &[&str] = &["graded", "point", "relative", "add", "from-k"];

/// Split a line into whitespace-separated tokens, keeping bracketed groups together.
pub fn tokenize(line: &str, lineno: usize) -> Result<Vec<Tok>, ParseError> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut start = 0;
    let mut depth: i32 = 0;
    for (k, ch) in line.chars().enumerate() {
        if ch == '#' && depth == 0 {
            break;
        }
        if ch.is_whitespace() && depth == 0 {
            if !cur.is_empty() {
                out.push(Tok {
                    text: std::mem::take(&mut cur),
                    line: lineno,
                    col: start + 1,
                });
            }
            continue;
        }
        if cur.is_empty() {
            start = k;
        }
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(ParseError {
                        line: lineno,
                        col: k + 1,
                        msg: format!("unbalanced {ch:?}"),
                    });
                }
            }
            _ => {}
        }
        if !ch.is_whitespace() {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(ParseError {
            line: lineno,
            col: start + 1,
            msg: "unclosed bracket".into(),
        });
    }
    if !cur.is_empty() {
        out.push(Tok {
            text: cur,
            line: lineno,
            col: start + 1,
        });
    }
    Ok(out)
}

pub fn parse_ring(t: &Tok) -> Result<Ring, ParseError> {
    let s = t.text.as_str();
    let num = |x: &str| {
        x.parse::<u64>()
            .map_err(|_| t.err(format!("bad ring {s:?}")))
    };
    let ring = match s {
        "Z" => Ring::Integers,
        "Q" => Ring::Rationals,
        _ if s.starts_with("Z/") => {
            Ring::integers_mod(num(&s[2..])?).map_err(|e| t.err(e.to_string()))?
        }
        _ if s.starts_with("F_") => {
            Ring::prime_field(num(&s[2..])?).map_err(|e| t.err(e.to_string()))?
        }
        _ if s.starts_with('F') => {
            Ring::prime_field(num(&s[1..])?).map_err(|e| t.err(e.to_string()))?
        }
        _ => return Err(t.err(format!("unknown ring {s:?}; expected Z, Q, Z/n or F_p"))),
    };
    Ok(ring)
}

/// Modules are sums of `0`, `R`, `R^n` (or the ring symbol) and cyclic `Z/d` terms.
pub fn parse_module(ring: Ring, t: &Tok) -> Result<FpModule, ParseError> {
    let sym = ring.symbol();
    let mut out = FpModule::zero(ring);
    for term in t.text.split('+') {
        let term = term.trim();
        let m = if term == "0" {
            FpModule::zero(ring)
        } else if let Some(d) = term.strip_prefix("Z/") {
            let d: i64 = d
                .parse()
                .map_err(|_| t.err(format!("bad cyclic term {term:?}")))?;
            if d < 0 {
                return Err(t.err(format!("bad cyclic term {term:?}")));
            }
            FpModule::cyclic(ring, d)
        } else {
            let (base, exp) = match term.split_once('^') {
                Some((b, e)) => (
                    b,
                    e.parse::<usize>()
                        .map_err(|_| t.err(format!("bad exponent in {term:?}")))?,
                ),
                None => (term, 1),
            };
            if base != "R" && base != sym {
                return Err(t.err(format!("bad module term {term:?} over {sym}")));
            }
            FpModule::free(ring, exp)
        };
        out = out.direct_sum(&m);
    }
    Ok(out)
}

/// A JSON array of rows, or `0` for the zero map.
pub fn parse_matrix(ring: Ring, t: &Tok) -> Result<MatSpec, ParseError> {
    if t.text == "0" {
        return Ok(None);
    }
    let v: Value = serde_json::from_str(&t.text).map_err(|e| t.err(format!("bad matrix: {e}")))?;
    let rows = v
        .as_array()
        .ok_or_else(|| t.err("matrix must be an array of rows"))?;
    let mut entries = Vec::new();
    let mut width = None;
    for r in rows {
        let r = r
            .as_array()
            .ok_or_else(|| t.err("matrix rows must be arrays"))?;
        if *width.get_or_insert(r.len()) != r.len() {
            return Err(t.err("matrix rows have different lengths"));
        }
        for x in r {
            let s = match x {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                _ => return Err(t.err("matrix entries must be numbers or strings")),
            };
            entries.push(ring.parse_scalar(&s).map_err(|e| t.err(e.to_string()))?);
        }
    }
    let (m, n) = (rows.len(), width.unwrap_or(0));
    Mat::from_scalars(ring, m, n, entries)
        .map(Some)
        .map_err(|e| t.err(e.to_string()))
}

fn parse_int<T: std::str::FromStr>(t: &Tok, what: &str) -> Result<T, ParseError> {
    t.text
        .parse()
        .map_err(|_| t.err(format!("expected {what}, found {:?}", t.text)))
}

/// `@i` degree markers.
fn parse_degree(t: &Tok) -> Result<i64, ParseError> {
    let s = t
        .text
        .strip_prefix('@')
        .ok_or_else(|| t.err(format!("expected a degree @i, found {:?}", t.text)))?;
    s.parse()
        .map_err(|_| t.err(format!("bad degree {:?}", t.text)))
}

fn expect(toks: &[Tok], k: usize, text: &str, at: &Tok) -> Result<(), ParseError> {
    match toks.get(k) {
        Some(t) if t.text == text => Ok(()),
        Some(t) => Err(t.err(format!("expected {text:?}, found {:?}", t.text))),
        None => Err(at.err(format!("expected {text:?} at end of line"))),
    }
}

fn arity(toks: &[Tok], n: usize, usage: &str) -> Result<(), ParseError> {
    if toks.len() != n {
        let t = toks.get(n).unwrap_or(&toks[0]);
        return Err(t.err(format!("expected `{usage}`")));
    }
    Ok(())
}

#[derive(Default)]
struct Raw {
    ring: Option<Ring>,
    category: Option<(Tok, Vec<Tok>)>,
    window: Option<(i64, i64)>,
    distinguished_key: Option<Distinguished>,
    distinguished_block: Option<Vec<Tok>>,
    points: Vec<Tok>,
    mode: Option<String>,
    vertices: Vec<Tok>,
    edges: Vec<(Tok, Tok, Tok)>,
    relations: Vec<(Tok, Tok)>,
    order: Vec<(Tok, Tok)>,
    coproducts: Vec<CoproductSpec>,
    homology: Option<HomologySpec>,
    realization: Option<RealizationSpec>,
    homs: Vec<(Tok, Tok)>,
}

pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    let mut raw = Raw::default();
    let mut block: Option<String> = None;
    let mut seen_blocks: Vec<String> = Vec::new();
    let mut ring_tok: Option<Tok> = None;
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let toks = tokenize(line, lineno)?;
        let Some(head) = toks.first() else { continue };
        if head.text.starts_with('[') && head.text.ends_with(']') && !head.text.starts_with("[[") {
            let name = &head.text[1..head.text.len() - 1];
            if !BLOCKS.contains(&name) {
                return Err(head.err(format!("unknown block [{name}]")));
            }
            if seen_blocks.iter().any(|b| b == name) {
                return Err(head.err(format!("duplicate block [{name}]")));
            }
            arity(&toks, 1, &head.text)?;
            seen_blocks.push(name.to_string());
            block = Some(name.to_string());
            match name {
                "homology" => {
                    raw.homology = Some(HomologySpec {
                        preset: Preset::Zero,
                        values: vec![],
                        maps: vec![],
                        boundaries: vec![],
                    })
                }
                "realization" => raw.realization = Some(RealizationSpec::default()),
                "distinguished" => raw.distinguished_block = Some(vec![]),
                _ => {}
            }
            continue;
        }
        match block.as_deref() {
            None => top_level(&mut raw, &toks, &mut ring_tok)?,
            Some(b) => {
                let ring = raw
                    .ring
                    .ok_or_else(|| head.err("`ring` must be given before any block"))?;
                block_line(&mut raw, b, ring, &toks)?;
            }
        }
    }
    finish(raw)
}

fn top_level(raw: &mut Raw, toks: &[Tok], ring_tok: &mut Option<Tok>) -> Result<(), ParseError> {
    let head = &toks[0];
    let dup = || head.err(format!("duplicate key {:?}", head.text));
    match head.text.as_str() {
        "ring" => {
            arity(toks, 2, "ring R")?;
            if raw.ring.is_some() {
                return Err(dup());
            }
            raw.ring = Some(parse_ring(&toks[1])?);
            *ring_tok = Some(toks[1].clone());
        }
        "category" => {
            if toks.len() < 2 {
                return Err(head.err("expected `category KIND [ARGS]`"));
            }
            if raw.category.is_some() {
                return Err(dup());
            }
            raw.category = Some((toks[1].clone(), toks[2..].to_vec()));
        }
        "window" => {
            arity(toks, 3, "window A B")?;
            if raw.window.is_some() {
                return Err(dup());
            }
            let (a, b) = (
                parse_int(&toks[1], "an integer")?,
                parse_int(&toks[2], "an integer")?,
            );
            if a > b {
                return Err(toks[1].err(format!("empty window [{a}, {b}]")));
            }
            raw.window = Some((a, b));
        }
        "distinguished" => {
            arity(toks, 2, "distinguished all|monos")?;
            if raw.distinguished_key.is_some() {
                return Err(dup());
            }
            raw.distinguished_key = Some(match toks[1].text.as_str() {
                "all" => Distinguished::All,
                "monos" => Distinguished::Monos,
                _ => {
                    return Err(toks[1]
                        .err("expected `all` or `monos`; list names in a [distinguished] block"))
                }
            });
        }
        "points" => {
            if toks.len() < 2 {
                return Err(head.err("expected `points X [Y ...]`"));
            }
            if !raw.points.is_empty() {
                return Err(dup());
            }
            raw.points = toks[1..].to_vec();
        }
        "mode" => {
            arity(toks, 2, "mode graded|point|relative|add|from-k")?;
            if raw.mode.is_some() {
                return Err(dup());
            }
            let m = toks[1].text.to_lowercase();
            if !MODES.contains(&m.as_str()) {
                return Err(toks[1].err(format!("unknown mode {:?}", toks[1].text)));
            }
            raw.mode = Some(m);
        }
        other => return Err(head.err(format!("unknown key {other:?}"))),
    }
    Ok(())
}

fn block_line(raw: &mut Raw, block: &str, ring: Ring, toks: &[Tok]) -> Result<(), ParseError> {
    let head = &toks[0];
    match block {
        "quiver" => match head.text.as_str() {
            "vertex" => {
                if toks.len() < 2 {
                    return Err(head.err("expected `vertex NAME ...`"));
                }
                raw.vertices.extend(toks[1..].iter().cloned());
            }
            "edge" => {
                arity(toks, 4, "edge NAME SRC DST")?;
                raw.edges
                    .push((toks[1].clone(), toks[2].clone(), toks[3].clone()));
            }
            other => return Err(head.err(format!("unknown key {other:?} in [quiver]"))),
        },
        "relations" => {
            arity(toks, 3, "PATH = PATH")?;
            expect(toks, 1, "=", head)?;
            raw.relations.push((toks[0].clone(), toks[2].clone()));
        }
        "order" => {
            arity(toks, 3, "A < B")?;
            expect(toks, 1, "<", head)?;
            raw.order.push((toks[0].clone(), toks[2].clone()));
        }
        "distinguished" => raw
            .distinguished_block
            .as_mut()
            .expect("block opened")
            .extend(toks.iter().cloned()),
        "coproducts" => {
            if toks.len() < 3 || toks[1].text != "=" {
                return Err(head.err("expected `S = A + B ...`"));
            }
            let mut summands = Vec::new();
            for (k, t) in toks[2..].iter().enumerate() {
                if k % 2 == 1 {
                    if t.text != "+" {
                        return Err(t.err(format!("expected \"+\", found {:?}", t.text)));
                    }
                } else {
                    summands.push(t.clone());
                }
            }
            if toks.len() % 2 == 0 {
                return Err(toks[toks.len() - 1].err("dangling \"+\""));
            }
            raw.coproducts.push(CoproductSpec {
                coproduct: head.clone(),
                summands,
            });
        }
        "homology" => {
            let h = raw.homology.as_mut().expect("block opened");
            match head.text.as_str() {
                "preset" => {
                    h.preset = match toks.get(1).map(|t| t.text.as_str()) {
                        Some("zero") => {
                            arity(toks, 2, "preset zero")?;
                            Preset::Zero
                        }
                        Some("almost-trivial") => {
                            arity(toks, 3, "preset almost-trivial MODULE")?;
                            Preset::AlmostTrivial(parse_module(ring, &toks[2])?)
                        }
                        _ => {
                            return Err(head
                                .err("expected `preset zero` or `preset almost-trivial MODULE`"))
                        }
                    }
                }
                "value" => {
                    arity(toks, 5, "value (X,Y) @i = MODULE")?;
                    expect(toks, 3, "=", head)?;
                    h.values.push((
                        toks[1].clone(),
                        parse_degree(&toks[2])?,
                        parse_module(ring, &toks[4])?,
                    ));
                }
                "map" => {
                    arity(toks, 7, "map (X,Y) -> (X',Y') @i = MATRIX")?;
                    expect(toks, 2, "->", head)?;
                    expect(toks, 5, "=", head)?;
                    h.maps.push((
                        toks[1].clone(),
                        toks[3].clone(),
                        parse_degree(&toks[4])?,
                        parse_matrix(ring, &toks[6])?,
                    ));
                }
                "boundary" => {
                    arity(toks, 5, "boundary (X,Y,Z) @i = MATRIX")?;
                    expect(toks, 3, "=", head)?;
                    h.boundaries.push((
                        toks[1].clone(),
                        parse_degree(&toks[2])?,
                        parse_matrix(ring, &toks[4])?,
                    ));
                }
                other => return Err(head.err(format!("unknown key {other:?} in [homology]"))),
            }
        }
        "realization" => {
            let r = raw.realization.as_mut().expect("block opened");
            match head.text.as_str() {
                "value" => {
                    arity(toks, 5, "value X @i = MODULE")?;
                    expect(toks, 3, "=", head)?;
                    r.values.push((
                        toks[1].clone(),
                        parse_degree(&toks[2])?,
                        parse_module(ring, &toks[4])?,
                    ));
                }
                "map" => {
                    arity(toks, 5, "map F @i = MATRIX")?;
                    expect(toks, 3, "=", head)?;
                    r.maps.push((
                        toks[1].clone(),
                        parse_degree(&toks[2])?,
                        parse_matrix(ring, &toks[4])?,
                    ));
                }
                other => return Err(head.err(format!("unknown key {other:?} in [realization]"))),
            }
        }
        "homs" => {
            arity(toks, 2, "X Y")?;
            raw.homs.push((toks[0].clone(), toks[1].clone()));
        }
        _ => unreachable!("block names are checked"),
    }
    Ok(())
}

fn finish(raw: Raw) -> Result<Session, ParseError> {
    let top = Tok {
        text: String::new(),
        line: 1,
        col: 1,
    };
    let ring = raw.ring.ok_or_else(|| top.err("missing `ring`"))?;
    let (kind, args) = raw
        .category
        .clone()
        .ok_or_else(|| top.err("missing `category`"))?;
    let count = |n: usize| -> Result<usize, ParseError> {
        arity_args(&kind, &args, n)?;
        if n == 0 {
            return Ok(0);
        }
        let v: usize = parse_int(&args[0], "a positive integer")?;
        if v == 0 {
            return Err(args[0].err("expected a positive integer"));
        }
        Ok(v)
    };
    let needs_quiver = kind.text == "quiver";
    if !needs_quiver
        && (!raw.vertices.is_empty() || !raw.edges.is_empty() || !raw.relations.is_empty())
    {
        return Err(kind.err("[quiver] and [relations] need `category quiver`"));
    }
    if kind.text != "poset" && !raw.order.is_empty() {
        return Err(raw.order[0].0.err("[order] needs `category poset N`"));
    }
    let category =
        match kind.text.as_str() {
            "point" => {
                count(0)?;
                CategorySpec::Point
            }
            "chain" => CategorySpec::Chain(count(1)?),
            "cyclic" => CategorySpec::Cyclic(count(1)?),
            "poset" => {
                let n = count(1)?;
                let idx = |t: &Tok| -> Result<usize, ParseError> {
                    let v: usize = parse_int(t, "an element index")?;
                    if v >= n {
                        return Err(t.err(format!("poset element {v} out of range 0..{n}")));
                    }
                    Ok(v)
                };
                let order = raw
                    .order
                    .iter()
                    .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
                    .collect::<Result<_, ParseError>>()?;
                CategorySpec::Poset { n, order }
            }
            "quiver" => {
                count(0)?;
                let mut q = Quiver::new();
                for v in &raw.vertices {
                    q.add_vertex(&v.text).map_err(|e| v.err(e.to_string()))?;
                }
                for (name, s, d) in &raw.edges {
                    let s = q.vertex(&s.text).map_err(|e| s.err(e.to_string()))?;
                    let d = q.vertex(&d.text).map_err(|e| d.err(e.to_string()))?;
                    q.add_edge(&name.text, s, d)
                        .map_err(|e| name.err(e.to_string()))?;
                }
                let mut relations = Vec::new();
                for (l, r) in &raw.relations {
                    let pl = q.parse_path(&l.text).map_err(|e| l.err(e.to_string()))?;
                    let pr = q.parse_path(&r.text).map_err(|e| r.err(e.to_string()))?;
                    relations.push((pl, pr));
                }
                CategorySpec::Quiver {
                    quiver: q,
                    relations,
                }
            }
            other => return Err(kind.err(format!(
                "unknown category kind {other:?}; expected point, chain, cyclic, poset or quiver"
            ))),
        };
    let distinguished = match (raw.distinguished_key, raw.distinguished_block) {
        (Some(_), Some(b)) if !b.is_empty() => {
            return Err(
                b[0].err("give either `distinguished all|monos` or a [distinguished] block")
            );
        }
        (Some(d), _) => d,
        (None, Some(b)) => Distinguished::Names(b),
        (None, None) => Distinguished::All,
    };
    Ok(Session {
        ring,
        category,
        window: raw.window.unwrap_or((0, 0)),
        distinguished,
        points: raw.points,
        mode: raw.mode,
        coproducts: raw.coproducts,
        homology: raw.homology,
        realization: raw.realization,
        homs: raw.homs,
    })
}

fn arity_args(kind: &Tok, args: &[Tok], n: usize) -> Result<(), ParseError> {
    if args.len() != n {
        let at = args.get(n).unwrap_or(kind);
        return Err(at.err(format!("category {} takes {n} argument(s)", kind.text)));
    }
    Ok(())
}

impl Session {
    /// The base category; `bound` limits the rewriting closure for quivers with relations.
    pub fn build_category(&self, bound: usize) -> Result<FinCat, crate::diagram::DiagramError> {
        match &self.category {
            CategorySpec::Point => Ok(FinCat::point()),
            CategorySpec::Chain(n) => Ok(FinCat::chain(*n)),
            CategorySpec::Cyclic(n) => Ok(FinCat::cyclic_group(*n)),
            CategorySpec::Poset { n, order } => FinCat::poset(*n, order),
            CategorySpec::Quiver { quiver, relations } => {
                FinCat::from_decoration(quiver, relations, bound)
            }
        }
    }
}

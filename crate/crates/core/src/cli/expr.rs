//! Object and morphism expressions.
//!
//! ```text
//! obj := 0 | H_i(X) | H_i(X,Y) | ker(mor) | coker(mor) | im(mor)
//! mor := k*mor | H_i(f) | H_i((X,Y)->(X',Y')) | d_i(X,Y,Z) | id(obj)
//! ```
//!
//! Degrees may be written `H_-1(..)` or `H_{-1}(..)`.

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ObjExpr {
    Zero,
    /// `H_i` applied to one (graded) or two (relative) object names.
    H {
        degree: i64,
        args: Vec<String>,
    },
    Ker(Box<MorExpr>),
    Coker(Box<MorExpr>),
    Im(Box<MorExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorExpr {
    Scaled(String, Box<MorExpr>),
    /// `H_i(f)` for a morphism name of the base category.
    Induced {
        degree: i64,
        mor: String,
    },
    /// `H_i((X,Y)->(X',Y'))` along the unique pair morphism.
    PairMap {
        degree: i64,
        src: String,
        dst: String,
    },
    /// `d_i(X,Y,Z): H_i(X,Y) -> H_{i-1}(Y,Z)`.
    Boundary {
        degree: i64,
        triple: String,
    },
    Identity(Box<ObjExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("bad expression {input:?} at offset {offset}: {msg}")]
pub struct ExprError {
    pub input: String,
    pub offset: usize,
    pub msg: String,
}

struct Cursor<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, msg: impl Into<String>) -> ExprError {
        ExprError {
            input: self.s.to_string(),
            offset: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), ExprError> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.err(format!("expected {lit:?}")))
        }
    }

    /// Text up to the parenthesis closing the one just consumed.
    fn group(&mut self) -> Result<&'a str, ExprError> {
        let start = self.pos;
        let mut depth = 1;
        for (k, ch) in self.rest().char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let inner = &self.s[start..start + k];
                        self.pos = start + k + 1;
                        return Ok(inner);
                    }
                }
                _ => {}
            }
        }
        Err(self.err("unclosed parenthesis"))
    }

    fn degree(&mut self) -> Result<i64, ExprError> {
        let braced = self.eat("{");
        let start = self.pos;
        let len = self
            .rest()
            .char_indices()
            .take_while(|&(k, c)| c.is_ascii_digit() || (k == 0 && c == '-'))
            .count();
        self.pos += len;
        let d = self.s[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected a degree"))?;
        if braced {
            self.expect("}")?;
        }
        Ok(d)
    }

    fn done(&self) -> Result<(), ExprError> {
        if self.pos == self.s.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }
}

/// Split on commas outside parentheses.
fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter().map(|a| a.trim().to_string()).collect()
}

/// Position of a top-level `->`.
fn top_arrow(s: &str) -> Option<usize> {
    let mut depth = 0;
    let b = s.as_bytes();
    for k in 0..b.len() {
        match b[k] {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'-' if depth == 0 && b.get(k + 1) == Some(&b'>') => return Some(k),
            _ => {}
        }
    }
    None
}

fn obj(c: &mut Cursor) -> Result<ObjExpr, ExprError> {
    if c.eat("ker(") {
        let m = mor_in_group(c)?;
        return Ok(ObjExpr::Ker(Box::new(m)));
    }
    if c.eat("coker(") {
        let m = mor_in_group(c)?;
        return Ok(ObjExpr::Coker(Box::new(m)));
    }
    if c.eat("im(") {
        let m = mor_in_group(c)?;
        return Ok(ObjExpr::Im(Box::new(m)));
    }
    if c.eat("H_") {
        let degree = c.degree()?;
        c.expect("(")?;
        let args = split_args(c.group()?);
        if args.is_empty() || args.len() > 2 || args.iter().any(String::is_empty) {
            return Err(c.err("H_i takes one object or a pair"));
        }
        return Ok(ObjExpr::H { degree, args });
    }
    if c.eat("0") {
        return Ok(ObjExpr::Zero);
    }
    Err(c.err("expected an object"))
}

fn mor_in_group(c: &mut Cursor) -> Result<MorExpr, ExprError> {
    let start = c.pos;
    let inner = c.group()?;
    let mut sub = Cursor { s: inner, pos: 0 };
    let m = mor(&mut sub).map_err(|mut e| {
        e.offset += start;
        e.input = c.s.to_string();
        e
    })?;
    sub.done().map_err(|_| ExprError {
        input: c.s.to_string(),
        offset: start + sub.pos,
        msg: "trailing input".into(),
    })?;
    Ok(m)
}

fn mor(c: &mut Cursor) -> Result<MorExpr, ExprError> {
    let digits = c
        .rest()
        .chars()
        .take_while(|ch| ch.is_ascii_digit() || *ch == '-' || *ch == '/')
        .count();
    if digits > 0 && c.rest()[digits..].starts_with('*') {
        let k = c.rest()[..digits].to_string();
        c.pos += digits + 1;
        return Ok(MorExpr::Scaled(k, Box::new(mor(c)?)));
    }
    if c.eat("id(") {
        let start = c.pos;
        let inner = c.group()?;
        let mut sub = Cursor { s: inner, pos: 0 };
        let o = obj(&mut sub).map_err(|mut e| {
            e.offset += start;
            e
        })?;
        sub.done()?;
        return Ok(MorExpr::Identity(Box::new(o)));
    }
    if c.eat("d_") {
        let degree = c.degree()?;
        c.expect("(")?;
        let args = split_args(c.group()?);
        if args.len() != 3 {
            return Err(c.err("d_i takes a triple X,Y,Z"));
        }
        return Ok(MorExpr::Boundary {
            degree,
            triple: format!("({})", args.join(",")),
        });
    }
    if c.eat("H_") {
        let degree = c.degree()?;
        c.expect("(")?;
        let inner = c.group()?;
        return Ok(match top_arrow(inner) {
            Some(k) => MorExpr::PairMap {
                degree,
                src: inner[..k].trim().to_string(),
                dst: inner[k + 2..].trim().to_string(),
            },
            None => MorExpr::Induced {
                degree,
                mor: inner.trim().to_string(),
            },
        });
    }
    Err(c.err("expected a morphism"))
}

pub fn parse_obj(s: &str) -> Result<ObjExpr, ExprError> {
    let mut c = Cursor { s, pos: 0 };
    let o = obj(&mut c)?;
    c.done()?;
    Ok(o)
}

pub fn parse_mor(s: &str) -> Result<MorExpr, ExprError> {
    let mut c = Cursor { s, pos: 0 };
    let m = mor(&mut c)?;
    c.done()?;
    Ok(m)
}

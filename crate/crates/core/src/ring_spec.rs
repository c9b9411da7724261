//! Text specifications of rings.
//!
//! ```text
//! spec := term ("x" term)*
//! term := "Z" INT | "poly(" spec "," INT ")" | "quot(" spec ",[" elems "])"
//!       | "triv(" spec ",[" elems "])" | "(" spec ")"
//! ```
//!
//! A chain `A x B x C` builds one three-factor product, so its elements are
//! named `(a,b,c)`. Parentheses keep a nested product nested.

use std::fmt;

use crate::bits::MAX_ELEMENTS;
use crate::error::{Error, Result};
use crate::ring::{
    ideal_span, quotient, trivial_extension, truncated_poly, zn, Elem, FiniteRing, ProductRing,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Zn(usize),
    Product(Vec<RingSpec>),
    Poly(Box<RingSpec>, usize),
    Quot(Box<RingSpec>, Vec<String>),
    Triv(Box<RingSpec>, Vec<String>),
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn(n) => write!(f, "Z{n}"),
            RingSpec::Product(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    match p {
                        RingSpec::Product(_) => write!(f, "({p})")?,
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            RingSpec::Poly(base, k) => write!(f, "poly({base},{k})"),
            RingSpec::Quot(base, elems) => write!(f, "quot({base},[{}])", elems.join(",")),
            RingSpec::Triv(base, elems) => write!(f, "triv({base},[{}])", elems.join(",")),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

pub fn parse(text: &str) -> Result<RingSpec> {
    let mut p = Parser { src: text, pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

/// Parses and builds, refusing rings above `cap` elements.
pub fn parse_ring_spec_capped(text: &str, cap: usize) -> Result<FiniteRing> {
    parse(text)?.build(cap)
}

pub fn parse_ring_spec(text: &str) -> Result<FiniteRing> {
    parse_ring_spec_capped(text, MAX_ELEMENTS)
}

impl RingSpec {
    pub fn build(&self, cap: usize) -> Result<FiniteRing> {
        let ring = match self {
            RingSpec::Zn(n) => {
                if *n > cap {
                    return Err(Error::TooLarge { size: *n, cap });
                }
                zn(*n)?
            }
            RingSpec::Product(parts) => {
                let factors = parts
                    .iter()
                    .map(|p| p.build(cap))
                    .collect::<Result<Vec<_>>>()?;
                let size = factors
                    .iter()
                    .map(FiniteRing::size)
                    .fold(1usize, usize::saturating_mul);
                if size > cap {
                    return Err(Error::TooLarge { size, cap });
                }
                let label = parts
                    .iter()
                    .zip(&factors)
                    .map(|(p, r)| match p {
                        RingSpec::Product(_) => format!("({})", r.label()),
                        _ => r.label().to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(" x ");
                ProductRing::new(factors)?.ring().clone().with_label(label)
            }
            RingSpec::Poly(base, k) => {
                let b = base.build(cap)?;
                let size = (b.size() as u128)
                    .checked_pow(*k as u32)
                    .unwrap_or(u128::MAX);
                if size > cap as u128 {
                    return Err(Error::TooLarge {
                        size: usize::try_from(size).unwrap_or(usize::MAX),
                        cap,
                    });
                }
                truncated_poly(&b, *k)?
            }
            RingSpec::Quot(base, elems) => {
                let b = base.build(cap)?;
                let gens = resolve(&b, elems)?;
                quotient(&b, &ideal_span(&b, gens))?.0
            }
            RingSpec::Triv(base, elems) => {
                let b = base.build(cap)?;
                let gens = resolve(&b, elems)?;
                let module = ideal_span(&b, gens);
                let size = b.size() * module.len();
                if size > cap {
                    return Err(Error::TooLarge { size, cap });
                }
                trivial_extension(&b, &module)?
            }
        };
        if ring.size() > cap {
            return Err(Error::TooLarge {
                size: ring.size(),
                cap,
            });
        }
        Ok(ring)
    }
}

fn resolve(ring: &FiniteRing, names: &[String]) -> Result<Vec<Elem>> {
    names
        .iter()
        .map(|n| ring.find(n).ok_or_else(|| Error::UnknownElement(n.clone())))
        .collect()
}

/// Element names from `"{a, b}"` or `"a, b"`. Commas nested in brackets or
/// parentheses stay inside a name.
pub fn parse_elements(ring: &FiniteRing, text: &str) -> Result<Vec<Elem>> {
    let t = text.trim();
    let inner = match (t.strip_prefix('{'), t.ends_with('}')) {
        (Some(rest), true) => &rest[..rest.len() - 1],
        (None, false) => t,
        _ => {
            return Err(Error::Syntax {
                pos: 0,
                msg: "unbalanced braces".into(),
            })
        }
    };
    let names = split_top_level(inner).map_err(|pos| Error::Syntax {
        pos,
        msg: "unbalanced brackets".into(),
    })?;
    resolve(ring, &names)
}

fn split_top_level(text: &str) -> std::result::Result<Vec<String>, usize> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(i);
                }
            }
            ',' if depth == 0 => {
                out.push(text[start..i].trim().to_string());
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(text.len());
    }
    let last = text[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last.to_string());
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{tok}`")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error("expected an integer"));
        }
        let value = self.rest()[..digits]
            .parse()
            .map_err(|_| self.error("integer too large"))?;
        self.pos += digits;
        Ok(value)
    }

    fn spec(&mut self) -> Result<RingSpec> {
        let mut parts = vec![self.term()?];
        loop {
            self.skip_ws();
            // `x` only separates factors when it stands alone
            let r = self.rest();
            let is_times = r.starts_with('x')
                && r[1..].starts_with(|c: char| c.is_whitespace() || c == '(' || c == 'Z');
            if !is_times {
                break;
            }
            self.pos += 1;
            parts.push(self.term()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().expect("one part")
        } else {
            RingSpec::Product(parts)
        })
    }

    fn term(&mut self) -> Result<RingSpec> {
        self.skip_ws();
        if self.eat("poly(") {
            let base = self.spec()?;
            self.expect(",")?;
            let k = self.int()?;
            self.expect(")")?;
            return Ok(RingSpec::Poly(Box::new(base), k));
        }
        for (kw, quot) in [("quot(", true), ("triv(", false)] {
            if self.eat(kw) {
                let base = Box::new(self.spec()?);
                self.expect(",")?;
                let elems = self.element_list()?;
                self.expect(")")?;
                return Ok(if quot {
                    RingSpec::Quot(base, elems)
                } else {
                    RingSpec::Triv(base, elems)
                });
            }
        }
        if self.eat("(") {
            let inner = self.spec()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("Z") {
            return Ok(RingSpec::Zn(self.int()?));
        }
        Err(self.error("expected `Z`, `poly(`, `quot(`, `triv(` or `(`"))
    }

    fn element_list(&mut self) -> Result<Vec<String>> {
        self.expect("[")?;
        let start = self.pos;
        let mut depth = 0i32;
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' | '[' => depth += 1,
                ')' if depth > 0 => depth -= 1,
                ']' if depth > 0 => depth -= 1,
                ']' => {
                    let body = &self.src[start..start + i];
                    let names = split_top_level(body).map_err(|off| Error::Syntax {
                        pos: start + off,
                        msg: "unbalanced brackets".into(),
                    })?;
                    if names.iter().any(String::is_empty) {
                        return Err(Error::Syntax {
                            pos: start,
                            msg: "empty element name".into(),
                        });
                    }
                    self.pos = start + i + 1;
                    return Ok(names);
                }
                _ => {}
            }
        }
        Err(Error::Syntax {
            pos: self.src.len(),
            msg: "unterminated element list".into(),
        })
    }
}

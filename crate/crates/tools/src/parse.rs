//! Text forms of elements, endomorphisms, automorphism words and bijection
//! words. Every printer in the core crate has a matching parser here, and
//! parsing a printed value gives the value back.
//!
//! Expressions: `x1`..`xn`, integer and `a/b` literals, `s` for the square
//! root generating the field, `+ - * ^`, parentheses. Products must be
//! written with `*`.

use std::str::FromStr;

use endw::endaut::BijectionWord;
use endw::{
    normalize, AlgebraElement, CanonicalQuasiInner, Context, ElementaryGenerator, Endomorphism, FieldAutomorphism,
    LinearBijection, PrimitiveBijection, Scalar, TameAutomorphism,
};
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{ParseError, ToolError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var(usize),
    Root,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Num(BigInt::from_str(&text[start..i]).expect("digits"))));
                continue;
            }
            b'x' => {
                i += 1;
                let digits = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let index: usize = text[digits..i]
                    .parse()
                    .map_err(|_| ParseError::new(start, "expected a variable index after `x`"))?;
                if index == 0 {
                    return Err(ParseError::new(start, "variables are numbered from x1"));
                }
                out.push((start, Tok::Var(index - 1)));
                continue;
            }
            b's' => Tok::Root,
            _ => {
                let ch = text[i..].chars().next().expect("in bounds");
                return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    ctx: &'a Context,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.offset(), msg)
    }

    fn core(&self, at: usize, e: endw::Error) -> ParseError {
        ParseError::new(at, e.to_string())
    }

    fn expr(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.term()?;
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.checked_add(&rhs).map_err(|e| self.core(at, e))?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.checked_sub(&rhs).map_err(|e| self.core(at, e))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<AlgebraElement, ParseError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            let at = self.offset();
            self.pos += 1;
            let rhs = self.unary()?;
            acc = acc.checked_mul(&rhs).map_err(|e| self.core(at, e))?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<AlgebraElement, ParseError> {
        if let Some(Tok::Minus) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<AlgebraElement, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            let at = self.offset();
            self.pos += 1;
            let Some(Tok::Num(n)) = self.peek().cloned() else {
                return Err(self.err("expected a nonnegative integer exponent"));
            };
            self.pos += 1;
            let exp = u32::try_from(n).map_err(|_| ParseError::new(at, "exponent too large"))?;
            return base.pow(exp).map_err(|e| self.core(at, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<AlgebraElement, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let mut q = BigRational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let Some(Tok::Num(d)) = self.peek().cloned() else {
                        return Err(self.err("expected a denominator"));
                    };
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    self.pos += 1;
                    q /= BigRational::from_integer(d);
                }
                Ok(self.ctx.scalar(Scalar::from_rational(self.ctx.field, q)))
            }
            Some(Tok::Var(i)) => {
                self.pos += 1;
                if i >= self.ctx.vars {
                    return Err(ParseError::new(
                        at,
                        format!("unknown variable x{} (the algebra has {} generators)", i + 1, self.ctx.vars),
                    ));
                }
                Ok(self.ctx.var(i))
            }
            Some(Tok::Root) => {
                self.pos += 1;
                let root = Scalar::sqrt_radicand(self.ctx.field)
                    .map_err(|_| ParseError::new(at, "`s` needs a quadratic field"))?;
                Ok(self.ctx.scalar(root))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(_) => Err(self.err("expected a number, variable or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

pub fn parse_expression(ctx: &Context, text: &str) -> Result<AlgebraElement, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = Parser { ctx, toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected token; products need an explicit `*`"));
    }
    Ok(e)
}

pub fn parse_scalar(ctx: &Context, text: &str) -> Result<Scalar, ParseError> {
    parse_expression(ctx, text)?
        .as_scalar()
        .ok_or_else(|| ParseError::new(0, format!("`{}` is not a scalar", text.trim())))
}

/// Splits on `sep` outside brackets, keeping each piece's byte offset.
fn split_top(text: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

fn trimmed(offset: usize, piece: &str) -> (usize, &str) {
    let lead = piece.len() - piece.trim_start().len();
    (offset + lead, piece.trim())
}

fn shift<T>(r: Result<T, ParseError>, by: usize) -> Result<T, ParseError> {
    r.map_err(|e| e.shifted(by))
}

/// `x1 -> e1; x2 -> e2` or, positionally, `e1; e2`.
pub fn parse_endomorphism(ctx: &Context, text: &str) -> Result<Endomorphism, ParseError> {
    let pieces = split_top(text, ';');
    let mut images: Vec<Option<AlgebraElement>> = vec![None; ctx.vars];
    for (k, (off, piece)) in pieces.iter().enumerate() {
        let (off, piece) = trimmed(*off, piece);
        let (slot, body, body_off) = match piece.find("->") {
            Some(arrow) => {
                let lhs = piece[..arrow].trim();
                let var = shift(parse_expression(ctx, lhs), off)?;
                let slot = (0..ctx.vars)
                    .find(|&i| var == ctx.var(i))
                    .ok_or_else(|| ParseError::new(off, format!("`{lhs}` is not a generator")))?;
                let (o, b) = trimmed(off + arrow + 2, &piece[arrow + 2..]);
                (slot, b, o)
            }
            None => (k, piece, off),
        };
        if slot >= ctx.vars {
            return Err(ParseError::new(off, format!("expected {} images", ctx.vars)));
        }
        if images[slot].is_some() {
            return Err(ParseError::new(off, format!("x{} is assigned twice", slot + 1)));
        }
        images[slot] = Some(shift(parse_expression(ctx, body), body_off)?);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, img)| img.ok_or_else(|| ParseError::new(text.len(), format!("missing image of x{}", i + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    Endomorphism::new(*ctx, images).map_err(|e| ParseError::new(0, e.to_string()))
}

fn parse_row(ctx: &Context, off: usize, text: &str) -> Result<Vec<Scalar>, ParseError> {
    let (off, text) = trimmed(off, text);
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError::new(off, "expected `[...]`"))?;
    split_top(inner, ',').into_iter().map(|(o, piece)| shift(parse_scalar(ctx, piece), off + 1 + o)).collect()
}

fn parse_generator(ctx: &Context, off: usize, text: &str) -> Result<ElementaryGenerator, ParseError> {
    let core = |e: endw::Error| ParseError::new(off, e.to_string());
    if let Some(rest) = text.strip_prefix("affine") {
        let base = off + 6;
        let parts = split_top(rest, '+');
        if parts.len() != 2 {
            return Err(ParseError::new(off, "expected `affine [[..],..] + [..]`"));
        }
        let (moff, mtext) = trimmed(base + parts[0].0, parts[0].1);
        let inner = mtext
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| ParseError::new(moff, "expected a matrix `[[..],..]`"))?;
        let matrix = split_top(inner, ',')
            .into_iter()
            .map(|(o, row)| parse_row(ctx, moff + 1 + o, row))
            .collect::<Result<Vec<_>, _>>()?;
        let shift_row = parse_row(ctx, base + parts[1].0, parts[1].1)?;
        return ElementaryGenerator::affine(ctx, matrix, shift_row).map_err(core);
    }
    if let Some(rest) = text.strip_prefix("elem") {
        let (roff, rest) = trimmed(off + 4, rest);
        let split = rest.find(' ').ok_or_else(|| ParseError::new(roff, "expected `elem <i> <expr>`"))?;
        let index: usize = rest[..split]
            .parse()
            .ok()
            .filter(|&i| (1..=ctx.vars).contains(&i))
            .ok_or_else(|| ParseError::new(roff, format!("expected a generator index in 1..={}", ctx.vars)))?;
        let (eoff, etext) = trimmed(roff + split, &rest[split..]);
        let addend = shift(parse_expression(ctx, etext), eoff)?;
        return ElementaryGenerator::elementary(ctx, index - 1, addend).map_err(core);
    }
    Err(ParseError::new(off, "expected `affine` or `elem`"))
}

/// Generators separated by `;`, leftmost outermost. Empty text or `id` is
/// the identity.
pub fn parse_tame(ctx: &Context, text: &str) -> Result<TameAutomorphism, ParseError> {
    let t = text.trim();
    if t.is_empty() || t == "id" {
        return Ok(TameAutomorphism::identity(*ctx));
    }
    let word = split_top(text, ';')
        .into_iter()
        .map(|(o, piece)| {
            let (o, piece) = trimmed(o, piece);
            parse_generator(ctx, o, piece)
        })
        .collect::<Result<Vec<_>, _>>()?;
    TameAutomorphism::new(*ctx, word).map_err(|e| ParseError::new(0, e.to_string()))
}

fn bracketed<'t>(text: &'t str, name: &str, open: char, close: char) -> Option<&'t str> {
    text.strip_prefix(name)?.trim_start().strip_prefix(open)?.strip_suffix(close)
}

fn parse_primitive(ctx: &Context, off: usize, text: &str) -> Result<Option<PrimitiveBijection>, ParseError> {
    let core = |e: endw::Error| ParseError::new(off, e.to_string());
    if text == "id" {
        return Ok(None);
    }
    if let Some(args) = bracketed(text, "linear", '(', ')') {
        let parts = split_top(args, ',');
        if parts.len() != 2 {
            return Err(ParseError::new(off, "expected `linear(c,d)`"));
        }
        let base = off + text.find('(').expect("bracketed") + 1;
        let c = shift(parse_scalar(ctx, parts[0].1), base + parts[0].0)?;
        let d = shift(parse_scalar(ctx, parts[1].1), base + parts[1].0)?;
        return Ok(Some(PrimitiveBijection::Linear(LinearBijection::new(c, d).map_err(core)?)));
    }
    if let Some(arg) = bracketed(text, "alpha", '(', ')') {
        return match arg.trim() {
            "id" => Ok(Some(PrimitiveBijection::FieldSemilinear(FieldAutomorphism::Identity))),
            "conj" => Ok(Some(PrimitiveBijection::FieldSemilinear(FieldAutomorphism::Conjugation))),
            other => Err(ParseError::new(off, format!("unknown field automorphism `{other}`"))),
        };
    }
    if let Some(word) = bracketed(text, "auto", '[', ']') {
        let base = off + text.find('[').expect("bracketed") + 1;
        return Ok(Some(PrimitiveBijection::AlgebraAuto(shift(parse_tame(ctx, word), base)?)));
    }
    match text {
        "mirror" | "mirror^1" => Ok(Some(PrimitiveBijection::Mirror)),
        "mirror^0" => Ok(None),
        _ => Err(ParseError::new(off, format!("unknown primitive `{text}`"))),
    }
}

/// Primitives separated by `.`, leftmost outermost.
pub fn parse_bijection(ctx: &Context, text: &str) -> Result<BijectionWord, ParseError> {
    let mut primitives = Vec::new();
    for (o, piece) in split_top(text, '.') {
        let (o, piece) = trimmed(o, piece);
        if let Some(p) = parse_primitive(ctx, o, piece)? {
            primitives.push(p);
        }
    }
    BijectionWord::new(*ctx, primitives).map_err(|e| ParseError::new(0, e.to_string()))
}

pub fn parse_canonical(ctx: &Context, text: &str) -> Result<CanonicalQuasiInner, ParseError> {
    Ok(normalize(&parse_bijection(ctx, text)?))
}

/// Wraps a parse error with the text it came from.
pub fn located(e: ParseError, what: &str, text: &str) -> ToolError {
    ToolError::Parse { what: what.to_string(), text: text.to_string(), error: e }
}

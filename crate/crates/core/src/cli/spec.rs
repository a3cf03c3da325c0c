//! Curve specifications `p=5 s=1; a=(1); b=(T); label=E1` and catalogs of
//! them, one per line with `#` comments.

use std::fmt;
use std::sync::Arc;

use crate::curve::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::funfield::factor::is_irreducible;
use crate::funfield::parse::parse_ratfunc_at;
use crate::funfield::{parse_field_spec, FieldContext, Place};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub p: u32,
    pub s: u32,
    pub a: String,
    pub b: String,
    pub label: Option<String>,
}

impl fmt::Display for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} s={}; a=({}); b=({})", self.p, self.s, self.a, self.b)?;
        if let Some(l) = &self.label {
            write!(f, "; label={l}")?;
        }
        Ok(())
    }
}

/// A parsed specification with its curve; singular models are rejected here.
#[derive(Clone, Debug)]
pub struct ParsedCurve {
    pub spec: CurveSpec,
    pub curve: WeierstrassCurve,
}

impl ParsedCurve {
    pub fn label(&self) -> String {
        self.spec.label.clone().unwrap_or_else(|| self.curve.describe())
    }
}

fn char_col(text: &str, byte: usize) -> usize {
    text[..byte].chars().count() + 1
}

pub fn parse_curve_spec(text: &str) -> Result<ParsedCurve> {
    let mut segments = Vec::new();
    let mut start = 0;
    for (i, c) in text.char_indices().chain(std::iter::once((text.len(), ';'))) {
        if c == ';' {
            segments.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    let (_, field) = segments[0];
    let (p, s) = parse_field_spec(field)?;
    let ctx = FieldContext::new(p, s)?;
    let mut a = None;
    let mut b = None;
    let mut label = None;
    for &(offset, seg) in &segments[1..] {
        let lead = seg.len() - seg.trim_start().len();
        let body = seg.trim();
        let col = char_col(text, offset + lead);
        if body.is_empty() {
            continue;
        }
        let (key, value) =
            body.split_once('=').ok_or_else(|| Error::parse(col, format!("expected key=value, found `{body}`")))?;
        let value_byte = offset + lead + key.len() + 1;
        match key.trim() {
            "a" | "b" => {
                let f = parse_ratfunc_at(&ctx, value, char_col(text, value_byte) - 1)?;
                let slot = if key.trim() == "a" { &mut a } else { &mut b };
                *slot = Some((strip_parens(value).to_string(), f));
            }
            "label" => label = Some(value.trim().to_string()),
            other => return Err(Error::parse(col, format!("unknown key `{other}`"))),
        }
    }
    let end = char_col(text, text.len());
    let (a_text, a) = a.ok_or_else(|| Error::parse(end, "missing a=(...)"))?;
    let (b_text, b) = b.ok_or_else(|| Error::parse(end, "missing b=(...)"))?;
    let curve = WeierstrassCurve::new(&ctx, a, b)?;
    Ok(ParsedCurve { spec: CurveSpec { p, s, a: a_text, b: b_text, label }, curve })
}

fn strip_parens(v: &str) -> &str {
    let t = v.trim();
    match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        Some(inner) if balanced(inner) => inner.trim(),
        _ => t,
    }
}

fn balanced(s: &str) -> bool {
    let mut depth = 0i32;
    for c in s.chars() {
        depth += match c {
            '(' => 1,
            ')' => -1,
            _ => 0,
        };
        if depth < 0 {
            return false;
        }
    }
    depth == 0
}

/// Every non-blank, non-comment line of a catalog, with 1-based line numbers
/// in parse errors.
pub fn parse_catalog(text: &str) -> Result<Vec<ParsedCurve>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        match parse_curve_spec(body) {
            Ok(c) => out.push(c),
            Err(Error::Parse { column, message, .. }) => return Err(Error::Parse { line: i + 1, column, message }),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// A comma-separated list of places: `inf` or a monic irreducible polynomial.
pub fn parse_places(ctx: &Arc<FieldContext>, text: &str) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for item in text.split(',') {
        let lead = item.len() - item.trim_start().len();
        let col = char_col(text, offset + lead);
        let body = item.trim();
        offset += item.len() + 1;
        if body.is_empty() {
            continue;
        }
        if body == "inf" || body == "∞" {
            out.push(Place::Infinity);
            continue;
        }
        let f = parse_ratfunc_at(ctx, item, col - 1 - lead)?;
        if !f.den().is_one() || f.num().is_constant() {
            return Err(Error::parse(col, format!("`{body}` is not a nonconstant polynomial")));
        }
        let g = f.num().monic(ctx.fq());
        if !is_irreducible(&g, ctx.fq()) {
            return Err(Error::parse(col, format!("`{body}` is not irreducible")));
        }
        out.push(Place::Finite(g));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

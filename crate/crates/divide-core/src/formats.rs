//! Text formats: the divide file, the one-line path DSL, and exact
//! rational/decimal literal parsing.
//!
//! A divide file looks like:
//!
//! ```text
//! divide-file v1
//! kind divide
//! name D_1
//! point -1 0
//! point -3/5 4/5
//! end
//! ```
//!
//! The path DSL is a single line: `S x y L x y ... E`. Both formats accept
//! rational literals `p/q` and exact decimals. For divides, the first and
//! last points are snapped onto the unit circle at parse time.

use crate::curve::{CurveKind, PLCurve};
use crate::divide::Divide;
use crate::error::{Error, Result};
use crate::num::*;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Clone, Debug, Default)]
pub struct Metadata {
    pub name: Option<String>,
    pub seed: Option<u64>,
    pub provenance: Option<String>,
}

#[derive(Clone, Debug)]
pub struct ParsedCurve {
    pub curve: PLCurve,
    pub meta: Metadata,
}

/// Parse a rational literal: `p`, `p/q`, or an exact decimal like `-0.25`.
pub fn parse_rational(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().ok()?;
        let d: BigInt = den.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int_part.trim_start().starts_with('-');
        let int_val: BigInt = if int_part == "-" || int_part.is_empty() {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac_val: BigInt = frac_part.parse().ok()?;
        let mag = int_val.abs() * &scale + frac_val;
        let signed = if negative { -mag } else { mag };
        return Some(Rat::new(signed, scale));
    }
    let n: BigInt = s.parse().ok()?;
    Some(Rat::from_integer(n))
}

fn fmt_rational(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse either format, auto-detected: a leading `S` token means the DSL.
pub fn parse_curve_text(input: &str) -> Result<ParsedCurve> {
    let trimmed = input.trim_start();
    if trimmed.starts_with("S ") || trimmed.starts_with("S\t") {
        parse_dsl(input)
    } else {
        parse_divide_file(input)
    }
}

/// Parse input that must describe a divide.
pub fn parse_divide_text(input: &str) -> Result<(Divide, Metadata)> {
    let parsed = parse_curve_text(input)?;
    if parsed.curve.kind != CurveKind::Open {
        return Err(Error::OpenRequired);
    }
    let report = parsed.curve.validate();
    if !report.valid {
        return Err(Error::not_generic(&report));
    }
    Ok((Divide::new(parsed.curve)?, parsed.meta))
}

fn parse_dsl(input: &str) -> Result<ParsedCurve> {
    let mut pts: Vec<Point> = Vec::new();
    let tokens: Vec<&str> = input.split_whitespace().collect();
    let mut i = 0usize;
    let mut expect = "S";
    let mut terminated = false;
    while i < tokens.len() {
        match tokens[i] {
            "S" | "L" => {
                let op = tokens[i];
                if (op == "S") != (expect == "S") {
                    return Err(Error::Parse {
                        line: 1,
                        msg: format!("unexpected {op}"),
                    });
                }
                expect = "L";
                if i + 2 >= tokens.len() {
                    return Err(Error::Parse { line: 1, msg: "missing coordinates".into() });
                }
                let x = parse_rational(tokens[i + 1]).ok_or(Error::Parse {
                    line: 1,
                    msg: format!("bad coordinate {}", tokens[i + 1]),
                })?;
                let y = parse_rational(tokens[i + 2]).ok_or(Error::Parse {
                    line: 1,
                    msg: format!("bad coordinate {}", tokens[i + 2]),
                })?;
                pts.push(Point::new(x, y));
                i += 3;
            }
            "E" => {
                terminated = true;
                i += 1;
                if i != tokens.len() {
                    return Err(Error::Parse { line: 1, msg: "tokens after E".into() });
                }
            }
            other => {
                return Err(Error::Parse { line: 1, msg: format!("unexpected token {other}") })
            }
        }
    }
    if !terminated {
        return Err(Error::Parse { line: 1, msg: "missing terminator E".into() });
    }
    finish_open_curve(pts, Metadata::default())
}

fn finish_open_curve(mut pts: Vec<Point>, meta: Metadata) -> Result<ParsedCurve> {
    if pts.len() < 2 {
        return Err(Error::Parse { line: 1, msg: "need at least two points".into() });
    }
    for w in pts.windows(2) {
        if w[0] == w[1] {
            return Err(Error::Parse { line: 1, msg: "degenerate segment".into() });
        }
    }
    let last = pts.len() - 1;
    pts[0] = snap_to_unit_circle(&pts[0]);
    pts[last] = snap_to_unit_circle(&pts[last]);
    let curve = PLCurve::open(pts)?;
    Ok(ParsedCurve { curve, meta })
}

fn parse_divide_file(input: &str) -> Result<ParsedCurve> {
    let mut kind: Option<CurveKind> = None;
    let mut meta = Metadata::default();
    let mut pts: Vec<Point> = Vec::new();
    let mut saw_header = false;
    let mut saw_end = false;
    for (lineno, raw) in input.lines().enumerate() {
        let line = raw.trim();
        let n = lineno + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if saw_end {
            return Err(Error::Parse { line: n, msg: "content after end".into() });
        }
        let mut parts = line.split_whitespace();
        let key = parts.next().unwrap();
        match key {
            "divide-file" => {
                let version = parts.next().unwrap_or("");
                if version != "v1" {
                    return Err(Error::Parse {
                        line: n,
                        msg: format!("unrecognized version {version:?}"),
                    });
                }
                saw_header = true;
            }
            "kind" => {
                kind = match parts.next() {
                    Some("divide") => Some(CurveKind::Open),
                    Some("closed-curve") => Some(CurveKind::Closed),
                    other => {
                        return Err(Error::Parse {
                            line: n,
                            msg: format!("unknown kind {other:?}"),
                        })
                    }
                };
            }
            "name" => meta.name = Some(parts.collect::<Vec<_>>().join(" ")),
            "provenance" => meta.provenance = Some(parts.collect::<Vec<_>>().join(" ")),
            "seed" => {
                meta.seed = Some(parts.next().and_then(|s| s.parse().ok()).ok_or(
                    Error::Parse { line: n, msg: "bad seed".into() },
                )?)
            }
            "point" => {
                let x = parts
                    .next()
                    .and_then(parse_rational_opt)
                    .ok_or(Error::Parse { line: n, msg: "bad point".into() })?;
                let y = parts
                    .next()
                    .and_then(parse_rational_opt)
                    .ok_or(Error::Parse { line: n, msg: "bad point".into() })?;
                let p = Point::new(x, y);
                if pts.last() == Some(&p) {
                    return Err(Error::Parse { line: n, msg: "degenerate segment".into() });
                }
                pts.push(p);
            }
            "end" => saw_end = true,
            other => {
                return Err(Error::Parse { line: n, msg: format!("unknown directive {other}") })
            }
        }
    }
    if !saw_header {
        return Err(Error::Parse { line: 1, msg: "missing divide-file header".into() });
    }
    if !saw_end {
        return Err(Error::Parse { line: 1, msg: "missing end".into() });
    }
    match kind.unwrap_or(CurveKind::Open) {
        CurveKind::Open => finish_open_curve(pts, meta),
        CurveKind::Closed => {
            for w in pts.windows(2) {
                if w[0] == w[1] {
                    return Err(Error::Parse { line: 1, msg: "degenerate segment".into() });
                }
            }
            if pts.len() >= 2 && pts.first() == pts.last() {
                pts.pop();
            }
            let curve = PLCurve::closed(pts)?;
            Ok(ParsedCurve { curve, meta })
        }
    }
}

fn parse_rational_opt(s: &str) -> Option<Rat> {
    parse_rational(s)
}

/// Serialize a curve back to the divide file format; exact round trip.
pub fn to_divide_file(curve: &PLCurve, meta: &Metadata) -> String {
    let mut out = String::from("divide-file v1\n");
    out.push_str(match curve.kind {
        CurveKind::Open => "kind divide\n",
        CurveKind::Closed => "kind closed-curve\n",
    });
    if let Some(name) = &meta.name {
        out.push_str(&format!("name {name}\n"));
    }
    if let Some(seed) = meta.seed {
        out.push_str(&format!("seed {seed}\n"));
    }
    if let Some(p) = &meta.provenance {
        out.push_str(&format!("provenance {p}\n"));
    }
    for pt in curve.points() {
        out.push_str(&format!("point {} {}\n", fmt_rational(&pt.x), fmt_rational(&pt.y)));
    }
    out.push_str("end\n");
    out
}

//! Deterministic SVG rendering: divides, doubled divides, and Hirasawa
//! diagrams with under-strand gaps at crossings. Output is a pure function
//! of the input geometry; coordinates are printed with three exact decimal
//! places so repeated runs are byte-identical.

use crate::curve::{CurveKind, PLCurve};
use crate::divide::Divide;
use crate::hirasawa::HirasawaDiagram;
use crate::num::*;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

/// Render a rational with exactly three decimals (round half away from
/// zero), computed in integer arithmetic.
fn dec3(r: &Rat) -> String {
    let scaled = r * rat(1000);
    let (q, rem) = scaled.numer().div_rem(scaled.denom());
    let half = scaled.denom().abs();
    let q = if (&rem * BigInt::from(2)).abs() >= half {
        if scaled.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    };
    let neg = q.is_negative();
    let q = q.abs();
    let (int, frac) = q.div_rem(&BigInt::from(1000));
    format!(
        "{}{}.{:03}",
        if neg { "-" } else { "" },
        int,
        frac.to_u32().unwrap_or(0)
    )
}

struct Canvas {
    body: String,
    min_x: Rat,
    min_y: Rat,
    max_x: Rat,
    max_y: Rat,
    started: bool,
}

impl Canvas {
    fn new() -> Self {
        Canvas {
            body: String::new(),
            min_x: rat(0),
            min_y: rat(0),
            max_x: rat(0),
            max_y: rat(0),
            started: false,
        }
    }

    fn see(&mut self, p: &Point) {
        // SVG y grows downward; flip here
        let y = -p.y.clone();
        if !self.started {
            self.min_x = p.x.clone();
            self.max_x = p.x.clone();
            self.min_y = y.clone();
            self.max_y = y;
            self.started = true;
            return;
        }
        if p.x < self.min_x {
            self.min_x = p.x.clone();
        }
        if p.x > self.max_x {
            self.max_x = p.x.clone();
        }
        if y < self.min_y {
            self.min_y = y.clone();
        }
        if y > self.max_y {
            self.max_y = y;
        }
    }

    fn polyline(&mut self, pts: &[Point], stroke: &str, width: &str, closed: bool) {
        if pts.len() < 2 {
            return;
        }
        let mut d = String::new();
        for (i, p) in pts.iter().enumerate() {
            self.see(p);
            d.push_str(if i == 0 { "M" } else { " L" });
            d.push_str(&format!("{} {}", dec3(&p.x), dec3(&-p.y.clone())));
        }
        if closed {
            d.push_str(" Z");
        }
        self.body.push_str(&format!(
            "<path d=\"{d}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"{width}\" stroke-linejoin=\"round\" stroke-linecap=\"round\"/>\n"
        ));
    }

    fn dot(&mut self, p: &Point, r: &str, fill: &str) {
        self.see(p);
        self.body.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"{fill}\"/>\n",
            dec3(&p.x),
            dec3(&-p.y.clone())
        ));
    }

    fn circle_outline(&mut self, r: &Rat) {
        self.see(&Point::new(r.clone(), r.clone()));
        self.see(&Point::new(-r.clone(), -r.clone()));
        self.body.push_str(&format!(
            "<circle cx=\"0.000\" cy=\"0.000\" r=\"{}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"0.01\" stroke-dasharray=\"0.05 0.03\"/>\n",
            dec3(r)
        ));
    }

    fn finish(self) -> String {
        let margin = (&self.max_x - &self.min_x + (&self.max_y - &self.min_y)) / rat(20) + frac(1, 10);
        let x0 = &self.min_x - &margin;
        let y0 = &self.min_y - &margin;
        let w = &self.max_x - &self.min_x + &margin * rat(2);
        let h = &self.max_y - &self.min_y + &margin * rat(2);
        format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">\n{}</svg>\n",
            dec3(&x0),
            dec3(&y0),
            dec3(&w),
            dec3(&h),
            self.body
        )
    }
}

/// Write any rendered stage to a file.
pub fn export_divide_svg(divide: &Divide, path: &std::path::Path) -> std::io::Result<()> {
    std::fs::write(path, render_divide(divide))
}

pub fn export_doubled_svg(h: &HirasawaDiagram, path: &std::path::Path) -> std::io::Result<()> {
    std::fs::write(path, render_doubled(h))
}

pub fn export_diagram_svg(h: &HirasawaDiagram, path: &std::path::Path) -> std::io::Result<()> {
    std::fs::write(path, render_diagram(h))
}

/// A divide (or closed curve) inside the unit disc.
pub fn render_curve(curve: &PLCurve) -> String {
    let mut c = Canvas::new();
    if curve.kind == CurveKind::Open {
        c.circle_outline(&rat(1));
    }
    c.polyline(curve.points(), "#1a1a1a", "0.015", curve.kind == CurveKind::Closed);
    if let Ok(dps) = curve.double_points() {
        for dp in dps {
            c.dot(&dp.position, "0.02", "#c03030");
        }
    }
    c.finish()
}

pub fn render_divide(divide: &Divide) -> String {
    render_curve(divide.curve())
}

/// The doubled divide before crossing insertion.
pub fn render_doubled(h: &HirasawaDiagram) -> String {
    let mut c = Canvas::new();
    c.polyline(h.diagonal.curve.points(), "#c0c0c0", "1.2", false);
    c.polyline(&h.doubled.points, "#1a1a1a", "0.6", true);
    c.finish()
}

/// The final diagram: the loop with jump detours, drawing under-strand gaps
/// at every crossing.
pub fn render_diagram(h: &HirasawaDiagram) -> String {
    let n = h.points.len();
    // gap fractions per segment, from the under passage of each crossing
    let mut gaps: Vec<Vec<Rat>> = vec![Vec::new(); n];
    for cr in &h.crossings {
        let (seg, t) = &cr.passes[1 - cr.over_pass];
        gaps[*seg].push(t.clone());
    }
    let mut c = Canvas::new();
    let gap_frac = frac(1, 12);
    for i in 0..n {
        let a = &h.points[i];
        let b = &h.points[(i + 1) % n];
        let mut cuts = gaps[i].clone();
        cuts.sort();
        let mut pieces: Vec<(Rat, Rat)> = Vec::new();
        let mut start = rat(0);
        for t in cuts {
            let lo = (&t - &gap_frac).max(rat(0));
            let hi = (&t + &gap_frac).min(rat(1));
            if lo > start {
                pieces.push((start.clone(), lo));
            }
            start = hi;
        }
        if start < rat(1) {
            pieces.push((start, rat(1)));
        }
        let d = b.sub(a);
        for (lo, hi) in pieces {
            let p = a.add(&d.scale(&lo));
            let q = a.add(&d.scale(&hi));
            c.polyline(&[p, q], "#1a1a1a", "0.6", false);
        }
    }
    c.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::hirasawa::build_diagram;

    #[test]
    fn decimals_are_exact_and_stable() {
        assert_eq!(dec3(&frac(1, 3)), "0.333");
        assert_eq!(dec3(&frac(-1, 2)), "-0.500");
        assert_eq!(dec3(&rat(2)), "2.000");
        assert_eq!(dec3(&frac(1, 1600)), "0.001");
    }

    #[test]
    fn render_is_deterministic() {
        let d = corpus::standard_divide(1).unwrap();
        assert_eq!(render_divide(&d), render_divide(&d));
        let h1 = build_diagram(&d).unwrap();
        let h2 = build_diagram(&d).unwrap();
        assert_eq!(render_diagram(&h1), render_diagram(&h2));
        assert!(render_diagram(&h1).starts_with("<svg"));
    }

    #[test]
    fn embedded_arc_renders_single_path() {
        let d = corpus::diameter_divide();
        let svg = render_divide(&d);
        assert_eq!(svg.matches("<path").count(), 1);
    }
}

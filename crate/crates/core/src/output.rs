//! CSV, SVG and JSON renderings of enumerated cycles.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::cycles::CycleRecord;
use crate::error::{Error, Result};
use crate::field::Context;

pub const CSV_HEADER: [&str; 8] = ["q", "age", "generation", "orbit", "a_coeffs", "c_coeffs", "re", "im"];

/// Decimal places matching `precision` bits.
pub fn decimal_digits(precision: u32) -> usize {
    (precision as f64 * std::f64::consts::LOG10_2).ceil() as usize
}

pub fn to_csv(ctx: &Context, recs: &[CycleRecord], precision: u32) -> Result<String> {
    let digits = decimal_digits(precision);
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Internal(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in recs {
        let e = r.embedding(ctx, precision + 8);
        w.write_record([
            ctx.q().to_string(),
            r.age.to_string(),
            r.generation.to_string(),
            r.orbit.to_string(),
            r.point.a.to_coeff_string(),
            r.point.c.to_coeff_string(),
            e.re.mid_decimal(digits),
            e.im.mid_decimal(digits),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}

#[derive(Serialize)]
struct TupleJson<'a> {
    r: usize,
    eps: u8,
    l: &'a [i64],
}

#[derive(Serialize)]
struct RecordJson<'a> {
    age: i64,
    generation: usize,
    orbit: u32,
    a: String,
    c: String,
    tuple: TupleJson<'a>,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct EnumerationJson<'a> {
    q: u32,
    count: usize,
    points: Vec<RecordJson<'a>>,
}

pub fn to_json(ctx: &Context, recs: &[CycleRecord], precision: u32) -> Result<String> {
    let digits = decimal_digits(precision);
    let points = recs
        .iter()
        .map(|r| {
            let e = r.embedding(ctx, precision + 8);
            RecordJson {
                age: r.age,
                generation: r.generation,
                orbit: r.orbit,
                a: r.point.a.to_coeff_string(),
                c: r.point.c.to_coeff_string(),
                tuple: TupleJson {
                    r: r.tuple.r,
                    eps: r.tuple.eps,
                    l: &r.tuple.l,
                },
                re: e.re.mid_decimal(digits),
                im: e.im.mid_decimal(digits),
            }
        })
        .collect();
    let doc = EnumerationJson {
        q: ctx.q(),
        count: recs.len(),
        points,
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::Internal(e.to_string()))
}

/// Visible region of a plot: half-width and half-height around 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct View {
    pub half_w: f64,
    pub half_h: f64,
}

impl View {
    pub fn disk(num: &BigInt, den: &BigInt) -> View {
        let r2 = BigRational::new(num.clone(), den.clone());
        let r = r2.to_f64().unwrap_or(1.0).max(0.0).sqrt().max(1.0);
        View { half_w: r, half_h: r }
    }

    pub fn rect(w: &BigRational, h: &BigRational) -> View {
        View {
            half_w: w.to_f64().unwrap_or(1.0) / 2.0,
            half_h: h.to_f64().unwrap_or(1.0) / 2.0,
        }
    }
}

const SVG_UNIT: f64 = 100.0;

fn fmt_num(x: f64) -> String {
    let s = format!("{:.3}", x);
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

/// Points as filled circles in mathematical orientation, with the unit circle and
/// the circle of radius √(2λ²+1) as guides.
pub fn to_svg(ctx: &Context, recs: &[CycleRecord], view: View) -> String {
    let u = SVG_UNIT;
    let (hw, hh) = (view.half_w * 1.05 * u, view.half_h * 1.05 * u);
    let l = ctx.lambda_f64();
    let guide = (2.0 * l * l + 1.0).sqrt();
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
        fmt_num(-hw),
        fmt_num(-hh),
        fmt_num(2.0 * hw),
        fmt_num(2.0 * hh)
    );
    let _ = writeln!(s, r#"<title>odd vanishing cycles, q = {}</title>"#, ctx.q());
    let _ = writeln!(s, r##"<rect x="{}" y="{}" width="{}" height="{}" fill="#ffffff"/>"##,
        fmt_num(-hw), fmt_num(-hh), fmt_num(2.0 * hw), fmt_num(2.0 * hh));
    let _ = writeln!(s, r##"<g fill="none" stroke="#999999" stroke-width="{}">"##, fmt_num(0.01 * u));
    let _ = writeln!(s, r#"<line x1="{}" y1="0.000" x2="{}" y2="0.000"/>"#, fmt_num(-hw), fmt_num(hw));
    let _ = writeln!(s, r#"<line x1="0.000" y1="{}" x2="0.000" y2="{}"/>"#, fmt_num(-hh), fmt_num(hh));
    let _ = writeln!(s, r#"<circle class="guide" cx="0.000" cy="0.000" r="{}"/>"#, fmt_num(u));
    let _ = writeln!(s, r#"<circle class="guide" cx="0.000" cy="0.000" r="{}"/>"#, fmt_num(guide * u));
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="#1f3a93" stroke="none">"##);
    let radius = fmt_num(0.04 * u);
    for r in recs {
        let (x, y) = ctx.cyc_to_f64(&r.point);
        let _ = writeln!(
            s,
            r#"<circle class="point" cx="{}" cy="{}" r="{}"/>"#,
            fmt_num(x * u),
            fmt_num(-y * u),
            radius
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}

/// Number of plotted points in an SVG produced by [`to_svg`].
pub fn svg_point_count(svg: &str) -> usize {
    svg.matches(r#"class="point""#).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::enumerate_by_age;

    #[test]
    fn csv_shape() {
        let ctx = Context::new(5).unwrap();
        let recs = enumerate_by_age(&ctx, 0);
        let csv = to_csv(&ctx, &recs, 53).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "q,age,generation,orbit,a_coeffs,c_coeffs,re,im");
        assert_eq!(lines.len(), 11);
        assert!(lines[1].starts_with("5,0,1,0,1;0,0;0,1.0000"));
    }

    #[test]
    fn svg_counts_points() {
        let ctx = Context::new(7).unwrap();
        let recs = enumerate_by_age(&ctx, 1);
        let svg = to_svg(&ctx, &recs, View { half_w: 4.0, half_h: 3.0 });
        assert_eq!(svg_point_count(&svg), recs.len());
        assert_eq!(svg, to_svg(&ctx, &recs, View { half_w: 4.0, half_h: 3.0 }));
    }
}

//! Numerical walls in the `(β, α)` upper half-plane.
//!
//! Two characters `v, w` have equal tilt slope on the locus
//!
//! ```text
//! (β² + α²) A/2 - β B + C = 0,
//! A = c_v r_w - c_w r_v,  B = d_v r_w - d_w r_v,  C = d_v c_w - d_w c_v
//! ```
//!
//! where `(r, c, d)` are the first three entries of each character. That is a
//! semicircle centred on the β-axis when `A != 0`, and a vertical line
//! otherwise. Everything here is exact except [`render_svg`].

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::chern::Char3;
use crate::error::{Error, Result};
use crate::rational::{fmt_q, q, to_f64, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegenerateReason {
    ProportionalClasses,
    EmptyLocus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WallLocus {
    Circle {
        #[serde(with = "crate::rational::serde_q")]
        center: Q,
        #[serde(with = "crate::rational::serde_q")]
        radius_sq: Q,
    },
    VerticalLine {
        #[serde(with = "crate::rational::serde_q")]
        beta: Q,
    },
    Degenerate {
        reason: DegenerateReason,
    },
}

impl WallLocus {
    pub fn circle(center: Q, radius_sq: Q) -> Self {
        WallLocus::Circle { center, radius_sq }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, WallLocus::Circle { .. })
    }

    /// `(center, radius_sq)` for circles.
    pub fn as_circle(&self) -> Option<(&Q, &Q)> {
        match self {
            WallLocus::Circle { center, radius_sq } => Some((center, radius_sq)),
            _ => None,
        }
    }

    /// Sign of `(β - center)² + α² - radius²`: negative strictly inside.
    pub fn side_of(&self, beta: &Q, alpha_sq: &Q) -> Option<Ordering> {
        let (c, r2) = self.as_circle()?;
        let x = beta - c;
        Some((&x * &x + alpha_sq).cmp(r2))
    }
}

/// The locus where `v` and `w` have equal tilt slope.
pub fn numerical_wall(v: &Char3, w: &Char3) -> WallLocus {
    let (rv, cv, dv) = (&v.ch0, &v.ch1, &v.ch2);
    let (rw, cw, dw) = (&w.ch0, &w.ch1, &w.ch2);
    let a = cv * rw - cw * rv;
    let b = dv * rw - dw * rv;
    let c = dv * cw - dw * cv;
    if !a.is_zero() {
        let center = &b / &a;
        let radius_sq = &center * &center - q(2) * &c / &a;
        if radius_sq.is_positive() {
            WallLocus::Circle { center, radius_sq }
        } else {
            WallLocus::Degenerate {
                reason: DegenerateReason::EmptyLocus,
            }
        }
    } else if !b.is_zero() {
        WallLocus::VerticalLine { beta: c / b }
    } else if c.is_zero() {
        WallLocus::Degenerate {
            reason: DegenerateReason::ProportionalClasses,
        }
    } else {
        WallLocus::Degenerate {
            reason: DegenerateReason::EmptyLocus,
        }
    }
}

/// The curve `A β² + B β + C - A α² = 0`, i.e. `Im Z_{α,β,s}(v) = 0` scaled by 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HyperbolaLocus {
    #[serde(with = "crate::rational::serde_q")]
    pub a: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub b: Q,
    #[serde(with = "crate::rational::serde_q")]
    pub c: Q,
}

impl HyperbolaLocus {
    /// `q(β, α)` with `α²` supplied directly.
    pub fn eval(&self, beta: &Q, alpha_sq: &Q) -> Q {
        &self.a * beta * beta + &self.b * beta + &self.c - &self.a * alpha_sq
    }

    /// Divide through by the leading coefficient (by `B` for a line).
    pub fn normalized(&self) -> HyperbolaLocus {
        let lead = if !self.a.is_zero() {
            self.a.clone()
        } else if !self.b.is_zero() {
            self.b.clone()
        } else {
            return self.clone();
        };
        HyperbolaLocus {
            a: &self.a / &lead,
            b: &self.b / &lead,
            c: &self.c / &lead,
        }
    }

    /// Human form, e.g. `β^2 - α^2 = 12` or `β = 3`.
    pub fn equation(&self) -> String {
        let n = self.normalized();
        if n.a.is_zero() {
            if n.b.is_zero() {
                return if n.c.is_zero() {
                    "0 = 0".into()
                } else {
                    "empty".into()
                };
            }
            return format!("β = {}", fmt_q(&-&n.c));
        }
        let mut lhs = String::from("β^2");
        if !n.b.is_zero() {
            let sign = if n.b.is_negative() { '-' } else { '+' };
            let _ = write!(lhs, " {sign} {}β", fmt_q(&n.b.abs()));
        }
        lhs.push_str(" - α^2");
        format!("{lhs} = {}", fmt_q(&-&n.c))
    }
}

/// `Im Z_{α,β,s}(v) = 0`, independent of `s`.
pub fn hyperbola_locus(v: &Char3) -> HyperbolaLocus {
    HyperbolaLocus {
        a: v.ch0.clone(),
        b: q(-2) * &v.ch1,
        c: q(2) * &v.ch2,
    }
}

/// Top of a circular wall as `(β, α²) = (center, radius_sq)`.
pub fn wall_apex(wl: &WallLocus) -> Result<(Q, Q)> {
    match wl {
        WallLocus::Circle { center, radius_sq } => Ok((center.clone(), radius_sq.clone())),
        other => Err(Error::domain(format!(
            "apex of a non-circular wall: {other:?}"
        ))),
    }
}

pub fn apex_on_locus(wl: &WallLocus, h: &HyperbolaLocus) -> Result<bool> {
    let (beta, alpha_sq) = wall_apex(wl)?;
    Ok(h.eval(&beta, &alpha_sq).is_zero())
}

/// Output of [`sort_and_check_nesting`]. `violations` holds index pairs into
/// `sorted` of circles that are not nested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestingReport {
    pub sorted: Vec<WallLocus>,
    pub violations: Vec<(usize, usize)>,
}

impl NestingReport {
    pub fn is_nested(&self) -> bool {
        self.violations.is_empty()
    }
}

fn circle_order(a: &WallLocus, b: &WallLocus) -> Ordering {
    match (a.as_circle(), b.as_circle()) {
        (Some((ca, ra)), Some((cb, rb))) => ra.cmp(rb).then_with(|| ca.cmp(cb)),
        _ => Ordering::Equal,
    }
}

/// True when the circle with the smaller radius lies inside the other one.
///
/// With `D = |c_a - c_b|` and `r_a <= r_b` the condition `D <= r_b - r_a` is
/// squared twice: `S = r_b² - r_a² - D² >= 0` and `4 D² r_a² <= S²`.
pub fn circles_nested(a: (&Q, &Q), b: (&Q, &Q)) -> bool {
    let ((ca, ra2), (cb, rb2)) = if a.1 <= b.1 { (a, b) } else { (b, a) };
    let d = ca - cb;
    let d2 = &d * &d;
    let s = rb2 - ra2 - &d2;
    !s.is_negative() && q(4) * d2 * ra2 <= &s * &s
}

/// Sort circles by radius then center and check pairwise nesting.
pub fn sort_and_check_nesting(walls: &[WallLocus]) -> Result<NestingReport> {
    if let Some(bad) = walls.iter().find(|w| !w.is_circle()) {
        return Err(Error::domain(format!(
            "nesting check needs circles, got {bad:?}"
        )));
    }
    let mut sorted = walls.to_vec();
    sorted.sort_by(circle_order);
    let mut violations = Vec::new();
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            let a = sorted[i].as_circle().expect("circle");
            let b = sorted[j].as_circle().expect("circle");
            if !circles_nested(a, b) {
                violations.push((i, j));
            }
        }
    }
    Ok(NestingReport { sorted, violations })
}

/// Plot window in `(β, α)` coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct View {
    pub beta_min: f64,
    pub beta_max: f64,
    pub alpha_min: f64,
    pub alpha_max: f64,
}

impl Default for View {
    fn default() -> Self {
        View {
            beta_min: -14.0,
            beta_max: 0.0,
            alpha_min: 0.0,
            alpha_max: 7.0,
        }
    }
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 40.0;

fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s.starts_with('-') && s[1..].bytes().all(|b| b == b'0' || b == b'.') {
        s[1..].to_string()
    } else {
        s
    }
}

struct Frame {
    view: View,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn x(&self, beta: f64) -> f64 {
        MARGIN + (beta - self.view.beta_min) * self.sx
    }

    fn y(&self, alpha: f64) -> f64 {
        HEIGHT - MARGIN - (alpha - self.view.alpha_min) * self.sy
    }
}

/// SVG picture of circular walls, vertical walls and the left branch of `h`.
///
/// Elements are emitted in a fixed order (circles by radius, then center), so
/// the output is byte-identical for identical input. `s` only enters the
/// caption: none of the plotted curves depend on it.
pub fn render_svg(
    walls: &[WallLocus],
    h: &HyperbolaLocus,
    view: &View,
    samples: usize,
    s: &Q,
) -> Result<String> {
    if samples < 2 {
        return Err(Error::domain(format!(
            "need at least 2 samples, got {samples}"
        )));
    }
    let finite = [view.beta_min, view.beta_max, view.alpha_min, view.alpha_max]
        .iter()
        .all(|x| x.is_finite());
    if !finite || view.beta_max <= view.beta_min || view.alpha_max <= view.alpha_min {
        return Err(Error::domain("empty view rectangle"));
    }
    let f = Frame {
        view: *view,
        sx: (WIDTH - 2.0 * MARGIN) / (view.beta_max - view.beta_min),
        sy: (HEIGHT - 2.0 * MARGIN) / (view.alpha_max - view.alpha_min),
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        WIDTH, HEIGHT, WIDTH, HEIGHT
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="plot"><rect x="{}" y="{}" width="{}" height="{}"/></clipPath></defs>"#,
        num(MARGIN),
        num(MARGIN),
        num(WIDTH - 2.0 * MARGIN),
        num(HEIGHT - 2.0 * MARGIN)
    );

    // axes
    let y0 = f.y(view.alpha_min);
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        num(f.x(view.beta_min)),
        num(y0),
        num(f.x(view.beta_max)),
        num(y0)
    );
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
        num(f.x(view.beta_max)),
        num(y0),
        num(f.x(view.beta_max)),
        num(f.y(view.alpha_max))
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}">β</text>"#,
        num(WIDTH - MARGIN / 2.0),
        num(y0)
    );
    let _ = writeln!(
        out,
        r#"<text x="{}" y="{}">α</text>"#,
        num(f.x(view.beta_max)),
        num(MARGIN / 2.0)
    );

    out.push_str("<g clip-path=\"url(#plot)\" fill=\"none\">\n");
    let mut circles: Vec<&WallLocus> = walls.iter().filter(|w| w.is_circle()).collect();
    circles.sort_by(|a, b| circle_order(a, b));
    for w in circles {
        let (c, r2) = w.as_circle().expect("circle");
        let c = to_f64(c);
        let r = to_f64(r2).sqrt();
        let _ = writeln!(
            out,
            r#"<path class="wall" d="M {} {} A {} {} 0 0 1 {} {}" stroke="blue"/>"#,
            num(f.x(c - r)),
            num(y0),
            num(r * f.sx),
            num(r * f.sy),
            num(f.x(c + r)),
            num(y0)
        );
    }
    let mut lines: Vec<Q> = walls
        .iter()
        .filter_map(|w| match w {
            WallLocus::VerticalLine { beta } => Some(beta.clone()),
            _ => None,
        })
        .collect();
    lines.sort();
    for b in lines {
        let x = f.x(to_f64(&b));
        let _ = writeln!(
            out,
            r#"<line class="wall" x1="{}" y1="{}" x2="{}" y2="{}" stroke="blue"/>"#,
            num(x),
            num(y0),
            num(x),
            num(f.y(view.alpha_max))
        );
    }

    let n = h.normalized();
    let (nb, nc) = (to_f64(&n.b), to_f64(&n.c));
    let mut pts = Vec::with_capacity(samples);
    for i in 0..samples {
        let t = i as f64 / (samples - 1) as f64;
        let alpha = view.alpha_min + t * (view.alpha_max - view.alpha_min);
        let beta = if n.a.is_zero() {
            if n.b.is_zero() {
                continue;
            }
            -nc
        } else {
            let disc = nb * nb / 4.0 - nc + alpha * alpha;
            if disc < 0.0 {
                continue;
            }
            -nb / 2.0 - disc.sqrt()
        };
        pts.push(format!("{},{}", num(f.x(beta)), num(f.y(alpha))));
    }
    let _ = writeln!(
        out,
        r#"<polyline class="hyperbola" points="{}" stroke="red"/>"#,
        pts.join(" ")
    );
    out.push_str("</g>\n");

    let _ = writeln!(
        out,
        r#"<text class="caption" x="{}" y="{}">{}, s = {}</text>"#,
        num(MARGIN),
        num(HEIGHT - MARGIN / 4.0),
        h.equation(),
        fmt_q(s)
    );
    out.push_str("</svg>\n");
    Ok(out)
}

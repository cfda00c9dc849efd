//! Stacked-bar picture of `Δ, Δ_1, …, Δ_n`: one row per level, one bar per
//! distinct basic interval, bars of coinciding maps (`f_{0(β+1)} = f_{11}`
//! and its descendants) drawn in a second colour.

use std::fmt::Write;

use ebeta::geometry::level_maps;
use ebeta::{fmt_rat, Rat, RatBeta, Scalar};

pub const BAR_HEIGHT: u32 = 12;
pub const LEVEL_SPACING: u32 = 20;
pub const PLOT_WIDTH: f64 = 600.0;
const MARGIN: f64 = 20.0;

const FILL: &str = "#3b4b5c";
const OVERLAP_FILL: &str = "#d9534f";

pub struct Figure {
    pub svg: String,
    pub rows: usize,
    pub highlighted: usize,
}

fn px(x: f64) -> String {
    format!("{x:.3}")
}

pub fn render_levels(beta: &RatBeta, level: usize) -> Figure {
    let scale = PLOT_WIDTH / beta.gamma().to_f64();
    let width = PLOT_WIDTH + 2.0 * MARGIN;
    let height = 2.0 * MARGIN + (level as f64) * f64::from(LEVEL_SPACING) + f64::from(BAR_HEIGHT);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = px(width),
        h = px(height)
    );
    let _ = writeln!(
        s,
        "  <title>Levels 0 to {level} of E for beta = {}</title>",
        fmt_rat(beta.value())
    );
    let mut highlighted = 0;
    for k in 0..=level {
        let y = MARGIN + (k as f64) * f64::from(LEVEL_SPACING);
        let bar = beta.gamma() * beta.inv_pow(k);
        let _ = writeln!(s, r#"  <g id="level-{k}" class="level">"#);
        for m in level_maps(beta, k) {
            let overlap = m.multiplicity > 1;
            highlighted += usize::from(overlap);
            let x0: Rat = m.offset.clone();
            let _ = writeln!(
                s,
                r#"    <rect x="{}" y="{}" width="{}" height="{BAR_HEIGHT}" fill="{}" class="{}" data-word="{}" data-multiplicity="{}"/>"#,
                px(MARGIN + x0.to_f64() * scale),
                px(y),
                px(bar.to_f64() * scale),
                if overlap { OVERLAP_FILL } else { FILL },
                if overlap { "basic overlap" } else { "basic" },
                if m.word.is_empty() {
                    "-".to_string()
                } else {
                    m.word.to_string()
                },
                m.multiplicity
            );
        }
        let _ = writeln!(s, "  </g>");
    }
    let _ = writeln!(s, "</svg>");
    Figure {
        svg: s,
        rows: level + 1,
        highlighted,
    }
}

use alloc::string::String;
use core::fmt::Write;

use super::scene::Scene;
use super::{num, Palette};
use crate::exact::{quad_to_float, QuadExt};

const MARGIN: f64 = 1.0;
const TITLE: f64 = 1.5;

fn f(v: &QuadExt) -> f64 {
    quad_to_float(v).expect("figure coordinates are small")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub(super) fn write(scene: &Scene, unit_px: u32) -> String {
    let u = f64::from(unit_px);
    let height = f(&scene.height());
    let doc_w = (f(&scene.width()) + 2.0 * MARGIN) * u;
    let doc_h = (height + 2.0 * MARGIN + TITLE) * u;
    let px = |x: &QuadExt| (MARGIN + f(x)) * u;
    // y grows downwards in SVG
    let py = |y: &QuadExt| (MARGIN + TITLE + height - f(y)) * u;

    let mut out = String::new();
    let _ = writeln!(out, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = num(doc_w),
        h = num(doc_h)
    );
    let _ =
        writeln!(out, "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"#FFFFFF\"/>", num(doc_w), num(doc_h));
    for (i, (panel, off)) in scene.panels.iter().zip(scene.offsets()).enumerate() {
        let _ = writeln!(out, "<g id=\"panel-{i}\">");
        let cx = &off + &(&panel.width * &QuadExt::from_ratio(1, 2));
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\">{}</text>",
            num(px(&cx)),
            num((MARGIN + TITLE * 0.6) * u),
            num(0.8 * u),
            escape(&panel.title)
        );
        let draw = |out: &mut String, r: &crate::dissect::Rect, class: &str, fill: &str, stroke: &str, width: f64| {
            let x0 = px(&(&off + r.x()));
            let x1 = px(&(&off + &r.x_end()));
            let y0 = py(&r.y_end());
            let y1 = py(r.y());
            let _ = writeln!(
                out,
                "<rect class=\"{class}\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{fill}\" stroke=\"{stroke}\" stroke-width=\"{}\"/>",
                num(x0),
                num(y0),
                num(x1 - x0),
                num(y1 - y0),
                num(width)
            );
        };
        for t in &panel.tiles {
            let fill = Palette::color(&t.label).unwrap_or("#000000");
            let class = if t.unit { "cell" } else { "piece" };
            draw(&mut out, &t.rect, class, fill, "#333333", 0.05 * u);
        }
        for r in &panel.outlines {
            draw(&mut out, r, "frame", "none", "#000000", 0.1 * u);
        }
        for a in &panel.annotations {
            let _ = writeln!(
                out,
                "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"middle\">{} ≈ {:.4}</text>",
                num(px(&(&off + &a.x))),
                num(py(&a.y) - 0.2 * u),
                num(0.6 * u),
                a.symbol,
                f(&a.value)
            );
        }
        let _ = writeln!(out, "</g>");
    }
    let _ = writeln!(out, "</svg>");
    out
}

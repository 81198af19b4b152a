use alloc::string::String;
use core::fmt::Write;

use super::scene::Scene;
use super::{num, Palette};
use crate::exact::{quad_to_float, QuadExt};

fn f(v: &QuadExt) -> f64 {
    quad_to_float(v).expect("figure coordinates are small")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\textbackslash{}").replace('_', "\\_").replace('^', "\\^{}").replace('&', "\\&")
}

/// A `tikzpicture` preceded by the colour definitions it uses.
pub(super) fn write(scene: &Scene, unit_px: u32) -> String {
    let mut out = String::new();
    for (label, hex) in Palette::TABLE {
        let _ = writeln!(out, "\\definecolor{{ps-{label}}}{{HTML}}{{{}}}", &hex[1..]);
    }
    let unit_pt = f64::from(unit_px) * 0.75;
    let _ = writeln!(out, "\\begin{{tikzpicture}}[x={}pt, y={}pt]", num(unit_pt), num(unit_pt));
    let height = f(&scene.height());
    for (panel, off) in scene.panels.iter().zip(scene.offsets()) {
        let x = |v: &QuadExt| num(f(&(&off + v)));
        let y = |v: &QuadExt| num(f(v));
        let cx = &panel.width * &QuadExt::from_ratio(1, 2);
        let _ = writeln!(out, "\\node[above] at ({}, {}) {{{}}};", x(&cx), num(height + 0.3), escape(&panel.title));
        for t in &panel.tiles {
            let r = &t.rect;
            let _ = writeln!(
                out,
                "\\filldraw[fill=ps-{}, draw=black!70, line width=0.2pt] ({}, {}) rectangle ({}, {});",
                t.label,
                x(r.x()),
                y(r.y()),
                x(&r.x_end()),
                y(&r.y_end())
            );
        }
        for r in &panel.outlines {
            let _ = writeln!(
                out,
                "\\draw[line width=0.8pt] ({}, {}) rectangle ({}, {});",
                x(r.x()),
                y(r.y()),
                x(&r.x_end()),
                y(&r.y_end())
            );
        }
        for a in &panel.annotations {
            let _ = writeln!(
                out,
                "\\node[above, font=\\scriptsize] at ({}, {}) {{${} \\approx {:.4}$}};",
                x(&a.x),
                y(&a.y),
                a.symbol,
                f(&a.value)
            );
        }
    }
    let _ = writeln!(out, "\\end{{tikzpicture}}");
    out
}

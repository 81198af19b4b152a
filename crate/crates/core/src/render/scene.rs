use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::{FigureName, RenderError};
use crate::dissect::{
    five_pyramids_layers, gauss_rectangle, nicomachus_4d_2d, step2_reshape, step3_scissor, step4_top_layer,
    three_pyramids_2d, Certificate, LayerId, Rect,
};
use crate::exact::{strip_root, QuadExt};
use crate::pyramid::{build_pyramid, main_sections, secondary_sections};

/// A filled rectangle. `unit` marks a single lattice cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub rect: Rect,
    pub label: String,
    pub unit: bool,
}

/// A length label, placed above the midpoint of a tile's top edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Annotation {
    pub x: QuadExt,
    pub y: QuadExt,
    pub symbol: &'static str,
    pub value: QuadExt,
}

/// One drawing, normalised so its bounding box starts at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Panel {
    pub title: String,
    pub tiles: Vec<Tile>,
    pub outlines: Vec<Rect>,
    pub annotations: Vec<Annotation>,
    pub width: QuadExt,
    pub height: QuadExt,
}

/// Panels laid out left to right, `GAP` units apart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scene {
    pub panels: Vec<Panel>,
}

impl Scene {
    pub const GAP: i64 = 2;

    pub fn unit_cells(&self) -> usize {
        self.panels.iter().flat_map(|p| &p.tiles).filter(|t| t.unit).count()
    }

    /// Horizontal offset of every panel.
    pub fn offsets(&self) -> Vec<QuadExt> {
        let mut out = Vec::with_capacity(self.panels.len());
        let mut x = QuadExt::zero();
        for p in &self.panels {
            out.push(x.clone());
            x = &x + &p.width + QuadExt::from_int(Scene::GAP);
        }
        out
    }

    pub fn width(&self) -> QuadExt {
        match (self.offsets().last(), self.panels.last()) {
            (Some(x), Some(p)) => x + &p.width,
            _ => QuadExt::zero(),
        }
    }

    pub fn height(&self) -> QuadExt {
        self.panels.iter().map(|p| p.height.clone()).max().unwrap_or_else(QuadExt::zero)
    }
}

fn small_int(v: &QuadExt) -> i64 {
    v.to_rational().and_then(|r| r.to_integer().to_i64()).expect("integral coordinate")
}

/// Integral rectangles are split into unit cells.
fn tiles_of(rect: &Rect, label: &str, out: &mut Vec<Tile>) {
    if !rect.is_integral() {
        out.push(Tile { rect: rect.clone(), label: String::from(label), unit: false });
        return;
    }
    let (x, y, w, h) = (small_int(rect.x()), small_int(rect.y()), small_int(rect.w()), small_int(rect.h()));
    for j in 0..h {
        for i in 0..w {
            out.push(Tile { rect: Rect::int(x + i, y + j, 1, 1), label: String::from(label), unit: true });
        }
    }
}

fn panel(title: String, tiles: Vec<Tile>, outlines: Vec<Rect>) -> Panel {
    let rects = || tiles.iter().map(|t| &t.rect).chain(outlines.iter());
    let min_x = rects().map(|r| r.x().clone()).min().unwrap_or_else(QuadExt::zero);
    let min_y = rects().map(|r| r.y().clone()).min().unwrap_or_else(QuadExt::zero);
    let max_x = rects().map(Rect::x_end).max().unwrap_or_else(QuadExt::zero);
    let max_y = rects().map(Rect::y_end).max().unwrap_or_else(QuadExt::zero);
    let (dx, dy) = (-&min_x, -&min_y);
    let tiles: Vec<Tile> = tiles.into_iter().map(|t| Tile { rect: t.rect.translated(&dx, &dy), ..t }).collect();
    let outlines = outlines.iter().map(|r| r.translated(&dx, &dy)).collect();
    let x = strip_root();
    let annotations = tiles
        .iter()
        .find(|t| t.rect.w() == &x || t.rect.h() == &x)
        .map(|t| Annotation {
            x: t.rect.x() + &(t.rect.w() * &QuadExt::from_ratio(1, 2)),
            y: t.rect.y_end(),
            symbol: "x",
            value: x.clone(),
        })
        .into_iter()
        .collect();
    Panel { title, tiles, outlines, annotations, width: max_x - min_x, height: max_y - min_y }
}

fn sources_panel(c: &Certificate, layers: &[LayerId], title: String) -> Panel {
    let mut tiles = Vec::new();
    for layer in layers {
        for p in c.placements.iter().filter(|p| &p.source_layer == layer) {
            for r in &p.source.rects {
                tiles_of(r, &p.source.label, &mut tiles);
            }
        }
        for l in c.leftovers.iter().filter(|l| &l.layer == layer) {
            for r in &l.region.rects {
                tiles_of(r, "gray", &mut tiles);
            }
        }
    }
    panel(title, tiles, Vec::new())
}

fn targets_panel(c: &Certificate, layer: &LayerId, title: String) -> Panel {
    let mut tiles = Vec::new();
    for (p, image) in c.images_in(layer) {
        for r in &image.rects {
            tiles_of(r, &p.source.label, &mut tiles);
        }
    }
    let outlines =
        c.targets.iter().filter(|t| &t.layer == layer).flat_map(|t| t.region.rects.iter().cloned()).collect();
    panel(title, tiles, outlines)
}

fn before_after(c: &Certificate, src: &str, dst: &str) -> Scene {
    let src = LayerId::new(src);
    let dst = LayerId::new(dst);
    Scene {
        panels: alloc::vec![
            sources_panel(c, core::slice::from_ref(&src), format!("{src}")),
            targets_panel(c, &dst, format!("{dst}")),
        ],
    }
}

fn cells_panel(title: String, cells: impl Iterator<Item = (i64, i64, &'static str)>) -> Panel {
    let tiles = cells
        .map(|(x, y, label)| Tile { rect: Rect::int(x, y, 1, 1), label: String::from(label), unit: true })
        .collect();
    panel(title, tiles, Vec::new())
}

/// The exact drawing behind a figure.
pub fn build_scene(figure: FigureName, n: u32) -> Result<Scene, RenderError> {
    if n == 0 || n > figure.max_n() {
        return Err(RenderError::UnsupportedN { figure, n, max: figure.max_n() });
    }
    let ni = i64::from(n);
    Ok(match figure {
        FigureName::OddNumbers => {
            let cells = (0..ni).flat_map(|y| {
                (0..ni).map(move |x| {
                    let k = x.max(y);
                    (x, y, if k % 2 == 0 { "blue" } else { "orange" })
                })
            });
            Scene { panels: alloc::vec![cells_panel(format!("1 + 3 + ... + {} = {}^2", 2 * n - 1, n), cells)] }
        }
        FigureName::Gauss => {
            let c = gauss_rectangle(n);
            Scene {
                panels: alloc::vec![targets_panel(&c, &LayerId::new("rect"), format!("2 t_{n} = {n} x {}", n + 1))],
            }
        }
        FigureName::MainSections | FigureName::SecondarySections => {
            let p = build_pyramid(3, n).expect("dimension 3 is supported");
            let secondary = figure == FigureName::SecondarySections;
            let sections = if secondary {
                secondary_sections(&p, 2).expect("axis 2 exists")
            } else {
                main_sections(&p).expect("a built pyramid has cube levels")
            };
            let panels = sections
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let m = i as i64 + 1;
                    let cells = s.iter().map(move |c| {
                        let v = c.coords();
                        if secondary {
                            (i64::from(v[1]), i64::from(v[0]) - m, "blue")
                        } else {
                            (i64::from(v[0]), i64::from(v[1]), "orange")
                        }
                    });
                    cells_panel(format!("{} = {m}", if secondary { "m" } else { "k" }), cells)
                })
                .collect();
            Scene { panels }
        }
        FigureName::Puzzle3d | FigureName::Puzzle3dDiy => {
            let c = three_pyramids_2d(n);
            let panels = (1..=n)
                .map(|m| {
                    if figure == FigureName::Puzzle3d {
                        let l = LayerId::indexed("stack", m);
                        sources_panel(&c, core::slice::from_ref(&l), format!("layer {m}"))
                    } else {
                        targets_panel(&c, &LayerId::indexed("block", m), format!("layer {m}"))
                    }
                })
                .collect();
            Scene { panels }
        }
        FigureName::NicomachusGrid => {
            let c = nicomachus_4d_2d(n);
            let grid = LayerId::new("grid");
            Scene { panels: alloc::vec![sources_panel(&c, core::slice::from_ref(&grid), String::from("grid"))] }
        }
        FigureName::NicomachusGridDiy => {
            let c = nicomachus_4d_2d(n);
            Scene { panels: alloc::vec![targets_panel(&c, &LayerId::new("blocks"), String::from("blocks"))] }
        }
        FigureName::FivePyrSection(t) => {
            if t == 0 || t > n {
                return Err(RenderError::SectionOutOfRange { t, n });
            }
            let c = five_pyramids_layers(n);
            let four = LayerId::indexed("four", t);
            let fifth = LayerId::indexed("fifth", t);
            Scene {
                panels: alloc::vec![
                    sources_panel(&c, core::slice::from_ref(&four), format!("{four}")),
                    sources_panel(&c, core::slice::from_ref(&fifth), format!("{fifth}")),
                    targets_panel(&c, &LayerId::indexed("block", t), format!("block/{t}")),
                ],
            }
        }
        FigureName::ConvolutionExcess => {
            let c = five_pyramids_layers(n);
            Scene { panels: alloc::vec![targets_panel(&c, &LayerId::new("excess"), String::from("excess"))] }
        }
        FigureName::Step2 => before_after(&step2_reshape(n), "block/1", "rect/1"),
        FigureName::Step3Scissor => before_after(&step3_scissor(n), "rect/1", "scissor/1"),
        FigureName::TopDual => before_after(&step4_top_layer(n).0, "top/corner", "top/dual"),
        FigureName::TwoCopies => {
            let c = step4_top_layer(n).0;
            Scene {
                panels: alloc::vec![targets_panel(&c, &LayerId::new("double/block"), String::from("double/block"))],
            }
        }
    })
}

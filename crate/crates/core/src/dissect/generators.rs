use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::certificate::{Certificate, Construction, LayerRegion, Placement};
use super::geometry::{LayerId, Rect, Region, RigidTransform};
use crate::exact::{rat, strip_root, QuadExt};

pub(crate) fn qi(v: i64) -> QuadExt {
    QuadExt::from_int(v)
}

fn half() -> QuadExt {
    QuadExt::from_ratio(1, 2)
}

pub(crate) fn rect_q(x: QuadExt, y: QuadExt, w: QuadExt, h: QuadExt) -> Rect {
    Rect::new(x, y, w, h).expect("generator rectangles have positive sides")
}

/// Motion that applies `quarter_turns`/`reflect` and then moves the lower-left
/// corner of the region's bounding box to `(x, y)`.
pub fn moved_to(region: &Region, quarter_turns: u8, reflect: bool, x: &QuadExt, y: &QuadExt) -> RigidTransform {
    let linear =
        RigidTransform::new(quarter_turns, reflect, QuadExt::zero(), QuadExt::zero()).expect("quarter turns in range");
    let image = linear.apply_region(region);
    let min_x = image.rects.iter().map(|r| r.x().clone()).min().expect("non-empty region");
    let min_y = image.rects.iter().map(|r| r.y().clone()).min().expect("non-empty region");
    linear.shifted(&(x - &min_x), &(y - &min_y))
}

pub(crate) struct Builder {
    pub(crate) cert: Certificate,
}

impl Builder {
    pub(crate) fn new(construction: Construction, n: u32) -> Self {
        Builder { cert: Certificate::new(construction, n) }
    }

    pub(crate) fn source(&mut self, layer: &LayerId, region: Region) {
        self.cert.sources.push(LayerRegion::new(layer.clone(), region));
    }

    pub(crate) fn target(&mut self, layer: &LayerId, region: Region) {
        self.cert.targets.push(LayerRegion::new(layer.clone(), region));
    }

    pub(crate) fn leftover(&mut self, layer: &LayerId, region: Region) {
        self.cert.leftovers.push(LayerRegion::new(layer.clone(), region));
    }

    /// Adds a piece with id `<tag>/<layer>/<row>,<col>/<k>`.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn place(
        &mut self,
        layer: &LayerId,
        (row, col): (u32, u32),
        k: u32,
        source: Region,
        transform: RigidTransform,
        destination: &LayerId,
    ) {
        let piece_id = format!("{}/{}/{},{}/{}", self.cert.construction.tag(), layer, row, col, k);
        self.cert.placements.push(Placement {
            piece_id,
            source_layer: layer.clone(),
            source,
            transform,
            destination_layer: destination.clone(),
        });
    }

    /// Piece that stays where it is.
    pub(crate) fn keep(&mut self, layer: &LayerId, addr: (u32, u32), k: u32, source: Region, destination: &LayerId) {
        self.place(layer, addr, k, source, RigidTransform::identity(), destination);
    }

    pub(crate) fn finish(self) -> Certificate {
        self.cert
    }
}

/// Rows `m..n` of the triangle, longest at the bottom: row `i` is
/// `[0, n−i) × [i, i+1)` for `i = 0..=n−m`.
pub fn staircase(n: i64, m: i64, ox: i64, oy: i64, label: &str) -> Region {
    let rects = (0..=n - m).map(|i| Rect::int(ox, oy + i, n - i, 1)).collect();
    Region::new(label, rects)
}

/// The same staircase turned into columns hanging on the right edge of the
/// `(n+1)`-frame: column `x = n−j` spans `[j, n)`.
pub fn staircase_columns(n: i64, m: i64, ox: i64, oy: i64, label: &str) -> Region {
    let rects = (0..=n - m).map(|j| Rect::int(ox + n - j, oy + j, 1, n - j)).collect();
    Region::new(label, rects)
}

pub(crate) fn square(x: i64, y: i64, side: i64, label: &str) -> Region {
    Region::new(label, vec![Rect::int(x, y, side, side)])
}

pub(crate) fn frame(x: i64, y: i64, w: i64, h: i64, label: &str) -> Region {
    Region::new(label, vec![Rect::int(x, y, w, h)])
}

/// `t_n` cells as a staircase and its half-turned copy, making an
/// `(n+1) × n` rectangle.
pub fn gauss_rectangle(n: u32) -> Certificate {
    let ni = i64::from(n);
    let mut b = Builder::new(Construction::GaussRect, n);
    let src = LayerId::new("stairs");
    let dst = LayerId::new("rect");
    let first = staircase(ni, 1, 0, 0, "blue");
    let second = staircase(ni, 1, ni + 2, 0, "red");
    b.source(&src, first.clone());
    b.source(&src, second.clone());
    b.keep(&src, (0, 0), 0, first, &dst);
    let t = moved_to(&second, 2, false, &qi(1), &qi(0));
    b.place(&src, (0, 0), 1, second, t, &dst);
    b.target(&dst, frame(0, 0, ni + 1, ni, "white"));
    b.finish()
}

/// Layer `m` of the three square pyramids: two staircases (rows `m..n`) and
/// the `m × m` section square fill the `(n+1)`-frame except the top-row gap
/// `[m, n+1) × [n, n+1)`. The square's top row is halved; upper halves swap
/// between layers `m` and `n+1−m`, so each layer ends as `(n+1) × (n+½)`.
pub fn three_pyramids_2d(n: u32) -> Certificate {
    let ni = i64::from(n);
    let mut b = Builder::new(Construction::ThreePyr2d, n);
    for m in 1..=n {
        let mi = i64::from(m);
        let src = LayerId::indexed("stack", m);
        let dst = LayerId::indexed("block", m);
        let partner = LayerId::indexed("block", n + 1 - m);

        let blue = staircase(ni, mi, 0, 0, "blue");
        let red = staircase_columns(ni, mi, 0, 0, "red");
        b.source(&src, blue.clone());
        b.source(&src, red.clone());
        b.source(&src, square(0, ni + 1 - mi, mi, "orange"));
        b.keep(&src, (0, 0), 0, blue, &dst);
        b.keep(&src, (0, 0), 1, red, &dst);
        if m > 1 {
            b.keep(&src, (0, 0), 2, frame(0, ni + 1 - mi, mi, mi - 1, "orange"), &dst);
        }
        let lower = Region::new("orange", vec![rect_q(qi(0), qi(ni), qi(mi), half())]);
        b.keep(&src, (0, 0), 3, lower, &dst);
        let upper = Region::new("orange", vec![rect_q(qi(0), qi(ni) + half(), qi(mi), half())]);
        let t = moved_to(&upper, 0, false, &qi(ni + 1 - mi), &qi(ni));
        b.place(&src, (0, 0), 4, upper, t, &partner);

        let top = qi(ni) + half();
        b.target(&dst, Region::new("white", vec![rect_q(qi(0), qi(0), qi(ni + 1), top)]));
    }
    b.finish()
}

/// Origin of sub-puzzle `(k, s)` in the grid layers; row `k = 0` is on top.
pub fn grid_origin(n: u32, k: u32, s: u32) -> (i64, i64) {
    let stride = i64::from(n) + 2;
    (i64::from(s - 1) * stride, i64::from(n - k) * stride)
}

/// Sub-puzzles `(k, s)` with `k, s ≥ 1` and `max(k, s) < t`: their square
/// is missing from the layer.
pub(crate) fn holes(n: u32, t: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for k in (1..=n).rev() {
        for s in 1..=n {
            if k.max(s) < t {
                out.push((k, s));
            }
        }
    }
    out
}

/// The four-pyramid grid inventory for layer `t` (`t = 1` is the plain
/// four-dimensional puzzle). Squares of side `< t` and staircase rows shorter
/// than `t` are absent. Row-0 green squares are cut into unit cells that fill
/// the top-row gaps: cell `(u, v)` of the square in column `c` goes to
/// sub-puzzle `(v+1, u+1)` at local cell `(c, n)`.
fn grid_inventory(b: &mut Builder, n: u32, t: u32, src: &LayerId, dst: &LayerId) {
    let ni = i64::from(n);
    for k in 0..=n {
        for s in 1..=n {
            let (ox, oy) = grid_origin(n, k, s);
            let addr = (n - k, s - 1);
            if k == 0 {
                if s < t {
                    continue;
                }
                let si = i64::from(s);
                b.source(src, square(ox, oy, si, "green"));
                for v in 0..s {
                    for u in 0..s {
                        let cell = square(ox + i64::from(u), oy + i64::from(v), 1, "green");
                        let (tx, ty) = grid_origin(n, v + 1, u + 1);
                        let tr = moved_to(&cell, 0, false, &qi(tx + si), &qi(ty + ni));
                        b.place(src, addr, v * s + u, cell, tr, dst);
                    }
                }
                continue;
            }
            let j = k.max(s);
            let big_j = i64::from(j.max(t));
            let blue = staircase(ni, big_j, ox, oy, "blue");
            let red = staircase_columns(ni, big_j, ox, oy, "red");
            b.source(src, blue.clone());
            b.source(src, red.clone());
            b.keep(src, addr, 0, blue, dst);
            b.keep(src, addr, 1, red, dst);
            if j >= t {
                let ji = i64::from(j);
                let label = if k >= s { "orange" } else { "green" };
                let sq = square(ox, oy + ni + 1 - ji, ji, label);
                b.source(src, sq.clone());
                b.keep(src, addr, 2, sq, dst);
            }
            b.target(dst, frame(ox, oy, ni + 1, ni + 1, "white"));
        }
    }
}

/// Four-dimensional pyramids through their two-dimensional sections: an
/// `(n+1) × n` grid of almost-square puzzles whose gaps are filled from the
/// row-0 squares, ending as an `n × n` array of `(n+1)`-squares.
pub fn nicomachus_4d_2d(n: u32) -> Certificate {
    let mut b = Builder::new(Construction::Nicomachus4d2d, n);
    grid_inventory(&mut b, n, 1, &LayerId::new("grid"), &LayerId::new("blocks"));
    b.finish()
}

/// Lower-left corner of excess slot `(p, r)`, which holds a square of side
/// `max(p, r) + 1`.
pub fn excess_slot(n: u32, p: u32, r: u32) -> (i64, i64) {
    let stride = i64::from(n) + 1;
    (i64::from(p) * stride, i64::from(r) * stride)
}

/// Slots `(p, r)` with `max(p, r) = k − 1`, i.e. the `2k − 1` squares of side `k`.
pub(crate) fn gnomon_slots(k: u32) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = (0..k).map(|r| (k - 1, r)).collect();
    out.extend((0..k - 1).rev().map(|p| (p, k - 1)));
    out
}

/// The corner-of-squares arrangement: `2k − 1` squares of side `k`.
pub fn corner_of_squares(n: u32, label: &str) -> Vec<((u32, u32), Region)> {
    let mut out = Vec::new();
    for k in 1..=n {
        for (p, r) in gnomon_slots(k) {
            let (x, y) = excess_slot(n, p, r);
            out.push(((p, r), square(x, y, i64::from(k), label)));
        }
    }
    out
}

/// Five five-dimensional pyramids, layer by layer. Layer `t` carries the
/// four-pyramid grid with everything below size `t` removed, plus the `t²`
/// section squares of side `t` of the fifth pyramid: `(t−1)²` of them fill
/// the holes and the remaining `2t−1` go to the excess corner.
pub fn five_pyramids_layers(n: u32) -> Certificate {
    let mut b = Builder::new(Construction::FivePyrLayers, n);
    let excess = LayerId::new("excess");
    for t in 1..=n {
        let src = LayerId::indexed("four", t);
        let dst = LayerId::indexed("block", t);
        grid_inventory(&mut b, n, t, &src, &dst);

        let fifth = LayerId::indexed("fifth", t);
        let ti = i64::from(t);
        let mut squares = Vec::new();
        for row in 0..t {
            for col in 0..t {
                let sq = square(i64::from(col) * (ti + 1), i64::from(row) * (ti + 1), ti, "pink");
                b.source(&fifth, sq.clone());
                squares.push(((row, col), sq));
            }
        }
        let ni = i64::from(n);
        let hole_targets = holes(n, t).into_iter().map(|(k, s)| {
            let (ox, oy) = grid_origin(n, k, s);
            (dst.clone(), ox, oy + ni + 1 - ti)
        });
        let excess_targets = gnomon_slots(t).into_iter().map(|(p, r)| {
            let (x, y) = excess_slot(n, p, r);
            (excess.clone(), x, y)
        });
        for ((addr, sq), (layer, x, y)) in squares.into_iter().zip(hole_targets.chain(excess_targets)) {
            let tr = moved_to(&sq, 0, false, &qi(x), &qi(y));
            b.place(&fifth, addr, 0, sq, tr, &layer);
        }
    }
    for (_, sq) in corner_of_squares(n, "pink") {
        b.target(&excess, sq);
    }
    b.finish()
}

/// Lower-left corner of the `(n+1) × n` rectangle in column `c`, row `r`.
pub fn reshape_slot(n: u32, c: u32, r: u32) -> (i64, i64) {
    let ni = i64::from(n);
    (i64::from(c) * (ni + 2), i64::from(r) * (ni + 1))
}

/// Each `(n+1)`-square loses its top row; the `n` rows taken from one grid
/// row stack into one extra `(n+1) × n` rectangle.
pub fn step2_reshape(n: u32) -> Certificate {
    let ni = i64::from(n);
    let mut b = Builder::new(Construction::Step2Reshape, n);
    for t in 1..=n {
        let src = LayerId::indexed("block", t);
        let dst = LayerId::indexed("rect", t);
        for k in 1..=n {
            for s in 1..=n {
                let (ox, oy) = grid_origin(n, k, s);
                let addr = (n - k, s - 1);
                b.source(&src, frame(ox, oy, ni + 1, ni + 1, "white"));
                let body = frame(ox, oy, ni + 1, ni, "blue");
                let (bx, by) = reshape_slot(n, s - 1, n - k);
                let tr = moved_to(&body, 0, false, &qi(bx), &qi(by));
                b.place(&src, addr, 0, body, tr, &dst);
                let row = frame(ox, oy + ni, ni + 1, 1, "yellow");
                let (rx, ry) = reshape_slot(n, n, n - k);
                let tr = moved_to(&row, 0, false, &qi(rx), &qi(ry + i64::from(s) - 1));
                b.place(&src, addr, 1, row, tr, &dst);
            }
        }
        for r in 0..n {
            for c in 0..=n {
                let (x, y) = reshape_slot(n, c, r);
                b.target(&dst, frame(x, y, ni + 1, ni, "white"));
            }
        }
    }
    b.finish()
}

/// Lower-left corner of the scissored rectangle in column `c`, row `r`.
pub fn scissor_slot(n: u32, c: u32, r: u32) -> (i64, i64) {
    let ni = i64::from(n);
    (i64::from(c) * (ni + 3), i64::from(r) * (ni + 1))
}

/// The pieces of one `(n+1) × n` rectangle at `(ox, oy)`: body, strip
/// segment `A` (length `n−x`), and the leftovers `B` (`1 × x`) and `C`
/// (`x × x`).
pub fn scissor_pieces(n: u32, ox: i64, oy: i64) -> [Region; 4] {
    let x = strip_root();
    let ni = qi(i64::from(n));
    let (ox, oy) = (qi(ox), qi(oy));
    let low = &ni - &x;
    let strip_y = &oy + &low;
    let body = rect_q(ox.clone(), oy.clone(), &ni + &QuadExt::one(), low.clone());
    let a = rect_q(ox.clone(), strip_y.clone(), low.clone(), x.clone());
    let b = rect_q(&ox + &low, strip_y.clone(), QuadExt::one(), x.clone());
    let c = rect_q(&ox + &(&low + &QuadExt::one()), strip_y, x.clone(), x);
    [
        Region::new("blue", vec![body]),
        Region::new("orange", vec![a]),
        Region::new("gray", vec![b]),
        Region::new("gray", vec![c]),
    ]
}

/// Every `(n+1) × n` rectangle loses a top strip of height `x`; segment `A`
/// of the strip is turned upright against the right edge, giving
/// `(n+1+x) × (n−x)`, and `B`, `C` (area `x + x² = 1/3`) are left over.
pub fn step3_scissor(n: u32) -> Certificate {
    let ni = i64::from(n);
    let x = strip_root();
    let mut b = Builder::new(Construction::Step3Scissor, n);
    for t in 1..=n {
        let src = LayerId::indexed("rect", t);
        let dst = LayerId::indexed("scissor", t);
        for r in 0..n {
            for c in 0..=n {
                let (ox, oy) = reshape_slot(n, c, r);
                let (tx, ty) = scissor_slot(n, c, r);
                b.source(&src, frame(ox, oy, ni + 1, ni, "white"));
                let [body, a, piece_b, piece_c] = scissor_pieces(n, ox, oy);
                let tr = moved_to(&body, 0, false, &qi(tx), &qi(ty));
                b.place(&src, (r, c), 0, body, tr, &dst);
                let tr = moved_to(&a, 1, false, &(qi(tx + ni + 1)), &qi(ty));
                b.place(&src, (r, c), 1, a, tr, &dst);
                b.leftover(&src, piece_b);
                b.leftover(&src, piece_c);
                let w = qi(ni + 1) + &x;
                let h = qi(ni) - &x;
                b.target(&dst, Region::new("white", vec![rect_q(qi(tx), qi(ty), w, h)]));
            }
        }
    }
    b.finish()
}

/// Leftover area of one scissored rectangle, `x + x²`.
pub fn leftover_per_rectangle() -> QuadExt {
    let [_, _, b, c] = scissor_pieces(1, 0, 0);
    b.area() + c.area()
}

/// `1/3`, the value `x + x²` takes for the strip root.
pub fn one_third() -> QuadExt {
    QuadExt::from(rat(1, 3))
}

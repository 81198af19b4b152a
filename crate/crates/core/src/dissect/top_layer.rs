use alloc::vec::Vec;

use super::certificate::{Certificate, Construction};
use super::generators::{corner_of_squares, excess_slot, frame, moved_to, qi, square, Builder};
use super::geometry::{LayerId, Rect, Region};
use crate::figurate::{evaluate_identity, IdentityName, IdentityParams, IdentityReport};

/// The `n × n` square at `(x, y)` minus its lower-left `j × j` corner.
pub fn square_minus_corner(n: i64, j: i64, x: i64, y: i64, label: &str) -> Region {
    let mut rects = Vec::new();
    if j > 0 {
        rects.push(Rect::int(x + j, y, n - j, j));
    }
    rects.push(Rect::int(x, y + j, n, n - j));
    Region::new(label, rects)
}

/// Slot `(p, r)` of the square-of-corners arrangement: the cells `(p', r')`
/// of an `n × n` square with `max(p', r') ≥ max(p, r)`.
pub fn dual_slot(n: u32, p: u32, r: u32, label: &str) -> Region {
    let (x, y) = excess_slot(n, p, r);
    square_minus_corner(i64::from(n), i64::from(p.max(r)), x, y, label)
}

/// Full-scale gnomon: the cells with `max(p', r') = n − 1`.
fn gnomon(n: i64, x: i64, y: i64, label: &str) -> Region {
    square_minus_corner(n, n - 1, x, y, label)
}

/// Cuts every square of a corner arrangement into unit cells; cell `(u, v)`
/// of the square in slot `(p, r)` (side `max(p, r) + 1`) goes to slot `(u, v)`, local cell `(p, r)`.
fn transpose_cells(b: &mut Builder, n: u32, squares: Vec<((u32, u32), Region)>, src: &LayerId, dst: &LayerId) {
    for ((p, r), sq) in squares {
        b.source(src, sq.clone());
        let side = p.max(r) + 1;
        let (ox, oy) = excess_slot(n, p, r);
        for v in 0..side {
            for u in 0..side {
                let cell = square(ox + i64::from(u), oy + i64::from(v), 1, &sq.label);
                let (tx, ty) = excess_slot(n, u, v);
                let tr = moved_to(&cell, 0, false, &qi(tx + i64::from(p)), &qi(ty + i64::from(r)));
                b.place(src, (p, r), v * side + u, cell, tr, dst);
            }
        }
    }
}

/// The top layer: the corner-of-squares arrangement is relabelled cell by
/// cell into the square-of-corners arrangement (layered and full scale), two
/// copies of it together with two sets of squares `1..n` fill the
/// `n(n+1) × n(n+1)` block, and the leftover balance is evaluated.
pub fn step4_top_layer(n: u32) -> (Certificate, IdentityReport) {
    let ni = i64::from(n);
    let mut b = Builder::new(Construction::Step4Top, n);

    let corner = LayerId::new("top/corner");
    let dual = LayerId::new("top/dual");
    transpose_cells(&mut b, n, corner_of_squares(n, "pink"), &corner, &dual);
    for r in 0..n {
        for p in 0..n {
            b.target(&dual, dual_slot(n, p, r, "white"));
        }
    }

    let full_corner = LayerId::new("full/corner");
    let full_square = LayerId::new("full/square");
    let full: Vec<_> = corner_of_squares(n, "pink").into_iter().filter(|((p, r), _)| (*p).max(*r) + 1 == n).collect();
    transpose_cells(&mut b, n, full, &full_corner, &full_square);
    for r in 0..n {
        for p in 0..n {
            let (x, y) = excess_slot(n, p, r);
            b.target(&full_square, gnomon(ni, x, y, "white"));
        }
    }

    let block = LayerId::new("double/block");
    let dual_copy = LayerId::new("double/dual");
    for r in 0..n {
        for p in 0..n {
            let region = dual_slot(n, p, r, "pink");
            b.source(&dual_copy, region.clone());
            b.keep(&dual_copy, (r, p), 0, region, &block);
        }
    }
    let corner_copy = LayerId::new("double/corner");
    for ((p, r), sq) in corner_of_squares(n, "purple") {
        b.source(&corner_copy, sq.clone());
        let (x, y) = excess_slot(n, p + 1, r + 1);
        let tr = moved_to(&sq, 0, false, &qi(x), &qi(y));
        b.place(&corner_copy, (r, p), 0, sq, tr, &block);
    }
    let squares = LayerId::new("double/squares");
    for j in 1..=n {
        let ji = i64::from(j);
        for (copy, (bp, br)) in [(0, (j, 0)), (1, (0, j))] {
            let sq = square((ji - 1) * (ni + 1), copy * (ni + 1), ji, "orange");
            b.source(&squares, sq.clone());
            let (x, y) = excess_slot(n, bp, br);
            let tr = moved_to(&sq, 0, false, &qi(x), &qi(y));
            b.place(&squares, (copy as u32, j - 1), 0, sq, tr, &block);
        }
    }
    for r in 0..=n {
        for p in 0..=n {
            let (x, y) = excess_slot(n, p, r);
            b.target(&block, frame(x, y, ni, ni, "white"));
        }
    }

    let report =
        evaluate_identity(IdentityName::RBalance, &IdentityParams::n(u64::from(n))).expect("R_BALANCE needs only n");
    (b.finish(), report)
}

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exact::QuadExt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("rectangle side must be positive, got {0}")]
    NonPositiveSide(QuadExt),
    #[error("quarter_turns must be 0..=3, got {0}")]
    QuarterTurns(u8),
}

/// Axis-aligned rectangle `[x, x+w) × [y, y+h)` with positive sides.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rect {
    x: QuadExt,
    y: QuadExt,
    w: QuadExt,
    h: QuadExt,
}

impl Rect {
    pub fn new(x: QuadExt, y: QuadExt, w: QuadExt, h: QuadExt) -> Result<Self, GeometryError> {
        for side in [&w, &h] {
            if !side.is_positive() {
                return Err(GeometryError::NonPositiveSide(side.clone()));
            }
        }
        Ok(Rect { x, y, w, h })
    }

    /// Integer rectangle; panics on a non-positive side.
    pub fn int(x: i64, y: i64, w: i64, h: i64) -> Self {
        Rect::new(x.into(), y.into(), w.into(), h.into()).expect("integer rectangle with positive sides")
    }

    /// Rectangle spanned by two opposite corners in any order.
    pub fn from_corners(x0: QuadExt, y0: QuadExt, x1: QuadExt, y1: QuadExt) -> Result<Self, GeometryError> {
        let (xl, xh) = if x0 <= x1 { (x0, x1) } else { (x1, x0) };
        let (yl, yh) = if y0 <= y1 { (y0, y1) } else { (y1, y0) };
        let w = &xh - &xl;
        let h = &yh - &yl;
        Rect::new(xl, yl, w, h)
    }

    pub fn x(&self) -> &QuadExt {
        &self.x
    }

    pub fn y(&self) -> &QuadExt {
        &self.y
    }

    pub fn w(&self) -> &QuadExt {
        &self.w
    }

    pub fn h(&self) -> &QuadExt {
        &self.h
    }

    pub fn x_end(&self) -> QuadExt {
        &self.x + &self.w
    }

    pub fn y_end(&self) -> QuadExt {
        &self.y + &self.h
    }

    pub fn area(&self) -> QuadExt {
        &self.w * &self.h
    }

    pub fn translated(&self, dx: &QuadExt, dy: &QuadExt) -> Rect {
        Rect { x: &self.x + dx, y: &self.y + dy, w: self.w.clone(), h: self.h.clone() }
    }

    /// Whether all four numbers are integers.
    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer() && self.w.is_integer() && self.h.is_integer()
    }
}

/// A labelled union of interior-disjoint rectangles.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Region {
    pub label: String,
    pub rects: Vec<Rect>,
}

impl Region {
    pub fn new(label: impl Into<String>, rects: Vec<Rect>) -> Self {
        Region { label: label.into(), rects }
    }

    pub fn area(&self) -> QuadExt {
        self.rects.iter().map(Rect::area).sum()
    }

    pub fn translated(&self, dx: &QuadExt, dy: &QuadExt) -> Region {
        Region::new(self.label.clone(), self.rects.iter().map(|r| r.translated(dx, dy)).collect())
    }
}

/// Mirror across the vertical axis (optional), then rotate counter-clockwise
/// by `quarter_turns`, then translate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RigidTransform {
    quarter_turns: u8,
    reflect: bool,
    dx: QuadExt,
    dy: QuadExt,
}

impl RigidTransform {
    pub fn new(quarter_turns: u8, reflect: bool, dx: QuadExt, dy: QuadExt) -> Result<Self, GeometryError> {
        if quarter_turns > 3 {
            return Err(GeometryError::QuarterTurns(quarter_turns));
        }
        Ok(RigidTransform { quarter_turns, reflect, dx, dy })
    }

    pub fn identity() -> Self {
        RigidTransform::translation(QuadExt::zero(), QuadExt::zero())
    }

    pub fn translation(dx: QuadExt, dy: QuadExt) -> Self {
        RigidTransform { quarter_turns: 0, reflect: false, dx, dy }
    }

    pub fn int_translation(dx: i64, dy: i64) -> Self {
        RigidTransform::translation(dx.into(), dy.into())
    }

    pub fn quarter_turns(&self) -> u8 {
        self.quarter_turns
    }

    pub fn reflect(&self) -> bool {
        self.reflect
    }

    pub fn dx(&self) -> &QuadExt {
        &self.dx
    }

    pub fn dy(&self) -> &QuadExt {
        &self.dy
    }

    fn linear(&self, x: &QuadExt, y: &QuadExt) -> (QuadExt, QuadExt) {
        let x = if self.reflect { -x } else { x.clone() };
        let y = y.clone();
        match self.quarter_turns {
            0 => (x, y),
            1 => (-y, x),
            2 => (-x, -y),
            _ => (y, -x),
        }
    }

    pub fn apply_point(&self, x: &QuadExt, y: &QuadExt) -> (QuadExt, QuadExt) {
        let (x, y) = self.linear(x, y);
        (x + &self.dx, y + &self.dy)
    }

    pub fn apply_rect(&self, r: &Rect) -> Rect {
        let (x0, y0) = self.apply_point(r.x(), r.y());
        let (x1, y1) = self.apply_point(&r.x_end(), &r.y_end());
        Rect::from_corners(x0, y0, x1, y1).expect("rigid image of a rectangle is a rectangle")
    }

    pub fn apply_region(&self, region: &Region) -> Region {
        Region::new(region.label.clone(), region.rects.iter().map(|r| self.apply_rect(r)).collect())
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &RigidTransform) -> RigidTransform {
        // next.L ∘ self.L where L = rot^q ∘ refl^r; refl ∘ rot^q = rot^{-q} ∘ refl
        let (quarter_turns, reflect) = if next.reflect {
            ((4 + next.quarter_turns - self.quarter_turns) % 4, !self.reflect)
        } else {
            ((next.quarter_turns + self.quarter_turns) % 4, self.reflect)
        };
        let (dx, dy) = next.apply_point(&self.dx, &self.dy);
        RigidTransform { quarter_turns, reflect, dx, dy }
    }

    /// Same transform with one more counter-clockwise quarter turn.
    pub fn with_extra_quarter_turn(&self) -> RigidTransform {
        RigidTransform { quarter_turns: (self.quarter_turns + 1) % 4, ..self.clone() }
    }

    pub fn with_reflect_toggled(&self) -> RigidTransform {
        RigidTransform { reflect: !self.reflect, ..self.clone() }
    }

    pub fn shifted(&self, dx: &QuadExt, dy: &QuadExt) -> RigidTransform {
        RigidTransform { dx: &self.dx + dx, dy: &self.dy + dy, ..self.clone() }
    }
}

/// Name of a layer of a construction, e.g. `block/3` or `excess`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LayerId(pub String);

impl LayerId {
    pub fn new(name: impl Into<String>) -> Self {
        LayerId(name.into())
    }

    /// `stage/index`
    pub fn indexed(stage: &str, index: u32) -> Self {
        LayerId(alloc::format!("{stage}/{index}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for LayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> (QuadExt, QuadExt) {
        (x.into(), y.into())
    }

    #[test]
    fn rejects_degenerate_rects() {
        assert!(Rect::new(0.into(), 0.into(), 0.into(), 1.into()).is_err());
        assert!(Rect::new(0.into(), 0.into(), 1.into(), (-1).into()).is_err());
        assert!(RigidTransform::new(4, false, 0.into(), 0.into()).is_err());
    }

    #[test]
    fn reflect_then_rotate() {
        let t = RigidTransform::new(1, true, 0.into(), 0.into()).unwrap();
        // (x, y) -> (-x, y) -> (-y, -x)
        assert_eq!(t.apply_point(&2.into(), &3.into()), pt(-3, -2));
        let t = RigidTransform::new(2, false, 5.into(), 1.into()).unwrap();
        assert_eq!(t.apply_point(&2.into(), &3.into()), pt(3, -2));
    }

    #[test]
    fn rect_image_is_normalized() {
        let t = RigidTransform::new(2, false, 3.into(), 2.into()).unwrap();
        let r = t.apply_rect(&Rect::int(0, 0, 2, 1));
        assert_eq!(r, Rect::int(1, 1, 2, 1));
        assert_eq!(r.area(), QuadExt::from_int(2));
    }
}

//! The exact-cover checker.
//!
//! All x- and y-coordinates occurring in a layer are sorted exactly (they
//! may be irrational) and deduplicated; the resulting grid of elementary
//! cells is fine enough that every rectangle is a union of whole cells.
//! A tiling is exact iff every elementary cell inside the frame is covered
//! by exactly one piece and no cell outside it is covered at all.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::certificate::{Certificate, Construction};
use super::geometry::{LayerId, Rect};
use crate::exact::QuadExt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectKind {
    /// Covered by two or more pieces.
    Overlap,
    /// Inside the frame but covered by no piece.
    Uncovered,
    /// Covered by a piece but outside the frame.
    Outside,
    /// The frame itself overlaps.
    FrameOverlap,
}

impl DefectKind {
    fn rank(self) -> u8 {
        match self {
            DefectKind::FrameOverlap => 0,
            DefectKind::Overlap => 1,
            DefectKind::Outside => 2,
            DefectKind::Uncovered => 3,
        }
    }
}

impl fmt::Display for DefectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DefectKind::Overlap => "overlap",
            DefectKind::Uncovered => "uncovered",
            DefectKind::Outside => "outside",
            DefectKind::FrameOverlap => "frame overlap",
        })
    }
}

/// The elementary cell where a cover fails. Overlaps are reported before
/// cells outside the frame, and those before uncovered cells; ties go to the
/// bottom-left cell in row-major order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDefect {
    pub kind: DefectKind,
    pub x: (QuadExt, QuadExt),
    pub y: (QuadExt, QuadExt),
    pub coverage: u32,
    /// Ids of the pieces covering the cell.
    pub pieces: Vec<String>,
}

impl fmt::Display for CoverDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at x=[{}, {}] y=[{}, {}] (covered {} times",
            self.kind, self.x.0, self.x.1, self.y.0, self.y.1, self.coverage
        )?;
        if !self.pieces.is_empty() {
            write!(f, " by {}", self.pieces.join(", "))?;
        }
        f.write_str(")")
    }
}

fn sorted_coords<'a>(rects: impl Iterator<Item = &'a Rect>, horizontal: bool) -> Vec<QuadExt> {
    let mut v: Vec<QuadExt> = Vec::new();
    for r in rects {
        if horizontal {
            v.push(r.x().clone());
            v.push(r.x_end());
        } else {
            v.push(r.y().clone());
            v.push(r.y_end());
        }
    }
    v.sort();
    v.dedup();
    v
}

fn span(coords: &[QuadExt], lo: &QuadExt, hi: &QuadExt) -> (usize, usize) {
    let a = coords.binary_search(lo).expect("coordinate was collected");
    let b = coords.binary_search(hi).expect("coordinate was collected");
    (a, b)
}

/// Check that `pieces` tile `frame` exactly. Pieces carry an id for the
/// failure report.
pub fn exact_cover(pieces: &[(&str, &Rect)], frame: &[&Rect]) -> Result<(), CoverDefect> {
    let all = || pieces.iter().map(|(_, r)| *r).chain(frame.iter().copied());
    let xs = sorted_coords(all(), true);
    let ys = sorted_coords(all(), false);
    if xs.len() < 2 || ys.len() < 2 {
        return Ok(());
    }
    let w = xs.len() - 1;
    let h = ys.len() - 1;
    let mut frame_count = vec![0u32; w * h];
    let mut piece_count = vec![0u32; w * h];
    let paint = |grid: &mut [u32], r: &Rect| {
        let (x0, x1) = span(&xs, r.x(), &r.x_end());
        let (y0, y1) = span(&ys, r.y(), &r.y_end());
        for j in y0..y1 {
            for c in &mut grid[j * w + x0..j * w + x1] {
                *c += 1;
            }
        }
    };
    for r in frame {
        paint(&mut frame_count, r);
    }
    for (_, r) in pieces {
        paint(&mut piece_count, r);
    }
    // Defect kinds in reporting priority; within a kind, bottom-left first.
    let mut first: Option<(DefectKind, usize, usize)> = None;
    for j in 0..h {
        for i in 0..w {
            let f = frame_count[j * w + i];
            let c = piece_count[j * w + i];
            let kind = match (f, c) {
                (1, 1) | (0, 0) => continue,
                (f, _) if f > 1 => DefectKind::FrameOverlap,
                (_, c) if c > 1 => DefectKind::Overlap,
                (1, 0) => DefectKind::Uncovered,
                _ => DefectKind::Outside,
            };
            if first.as_ref().is_none_or(|(k, _, _)| kind.rank() < k.rank()) {
                first = Some((kind, i, j));
            }
        }
    }
    if let Some((kind, i, j)) = first {
        let covering = pieces
            .iter()
            .filter(|(_, r)| {
                let (x0, x1) = span(&xs, r.x(), &r.x_end());
                let (y0, y1) = span(&ys, r.y(), &r.y_end());
                (x0..x1).contains(&i) && (y0..y1).contains(&j)
            })
            .map(|(id, _)| id.to_string())
            .collect();
        return Err(CoverDefect {
            kind,
            x: (xs[i].clone(), xs[i + 1].clone()),
            y: (ys[j].clone(), ys[j + 1].clone()),
            coverage: piece_count[j * w + i],
            pieces: covering,
        });
    }
    Ok(())
}

/// Which part of the check failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckStage {
    /// References between pieces, layers and targets.
    Structure,
    /// Pieces plus leftovers must tile the declared sources of their layer.
    SourcePartition,
    /// Moved pieces must tile the targets of their destination layer.
    TargetCover,
    /// Source area must equal target area plus leftover area.
    AreaBalance,
}

impl fmt::Display for CheckStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStage::Structure => "structure",
            CheckStage::SourcePartition => "source partition",
            CheckStage::TargetCover => "target cover",
            CheckStage::AreaBalance => "area balance",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FailureDetail {
    Malformed(String),
    Cover(CoverDefect),
    AreaMismatch { source: QuadExt, target: QuadExt, leftover: QuadExt },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckFailure {
    pub stage: CheckStage,
    pub layer: Option<LayerId>,
    pub detail: FailureDetail,
}

impl CheckFailure {
    /// Malformed references rather than a geometric defect.
    pub fn is_malformed(&self) -> bool {
        matches!(self.detail, FailureDetail::Malformed(_))
    }

    fn malformed(layer: Option<LayerId>, msg: String) -> Self {
        CheckFailure { stage: CheckStage::Structure, layer, detail: FailureDetail::Malformed(msg) }
    }
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} failed", self.stage)?;
        if let Some(l) = &self.layer {
            write!(f, " in layer {l}")?;
        }
        match &self.detail {
            FailureDetail::Malformed(m) => write!(f, ": {m}"),
            FailureDetail::Cover(d) => write!(f, ": {d}"),
            FailureDetail::AreaMismatch { source, target, leftover } => {
                write!(f, ": source {source} != target {target} + leftover {leftover}")
            }
        }
    }
}

/// Summary of a passing check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub construction: Construction,
    pub n: u32,
    pub pieces: usize,
    pub source_layers: usize,
    pub target_layers: usize,
    pub source_area: QuadExt,
    pub target_area: QuadExt,
    pub leftover_area: QuadExt,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={}: {} pieces, {} source layers, {} target layers; source area {} = target {} + leftover {}",
            self.construction,
            self.n,
            self.pieces,
            self.source_layers,
            self.target_layers,
            self.source_area,
            self.target_area,
            self.leftover_area
        )
    }
}

/// Verify a certificate: (a) the structure is consistent, (b) in every
/// source layer the pieces and leftovers tile the declared sources, (c) in
/// every destination layer the moved pieces tile the targets, and (d) areas
/// balance. Rigidity of each motion holds by construction of
/// [`RigidTransform`](super::RigidTransform).
pub fn check_certificate(c: &Certificate) -> Result<CheckReport, CheckFailure> {
    let mut ids = alloc::collections::BTreeSet::new();
    for p in &c.placements {
        if !ids.insert(p.piece_id.as_str()) {
            return Err(CheckFailure::malformed(None, alloc::format!("duplicate piece id `{}`", p.piece_id)));
        }
        if p.source.rects.is_empty() {
            return Err(CheckFailure::malformed(None, alloc::format!("piece `{}` is empty", p.piece_id)));
        }
    }
    if c.targets.is_empty() {
        return Err(CheckFailure::malformed(None, String::from("no targets declared")));
    }

    // layer -> (frame rects, covering rects with ids)
    type Layer<'a> = (Vec<&'a Rect>, Vec<(String, Rect)>);
    let mut source_layers: BTreeMap<&LayerId, Layer> = BTreeMap::new();
    for s in &c.sources {
        source_layers.entry(&s.layer).or_default().0.extend(s.region.rects.iter());
    }
    for p in &c.placements {
        let layer = source_layers.get_mut(&p.source_layer).ok_or_else(|| {
            CheckFailure::malformed(
                Some(p.source_layer.clone()),
                alloc::format!("piece `{}` is cut from an undeclared source layer", p.piece_id),
            )
        })?;
        layer.1.extend(p.source.rects.iter().map(|r| (p.piece_id.clone(), r.clone())));
    }
    for (i, l) in c.leftovers.iter().enumerate() {
        let layer = source_layers.get_mut(&l.layer).ok_or_else(|| {
            CheckFailure::malformed(
                Some(l.layer.clone()),
                alloc::format!("leftover #{i} lies in an undeclared source layer"),
            )
        })?;
        let id = alloc::format!("leftover#{i}");
        layer.1.extend(l.region.rects.iter().map(|r| (id.clone(), r.clone())));
    }

    let mut target_layers: BTreeMap<&LayerId, Layer> = BTreeMap::new();
    for t in &c.targets {
        target_layers.entry(&t.layer).or_default().0.extend(t.region.rects.iter());
    }
    for p in &c.placements {
        let layer = target_layers.get_mut(&p.destination_layer).ok_or_else(|| {
            CheckFailure::malformed(
                Some(p.destination_layer.clone()),
                alloc::format!("piece `{}` is sent to a layer without targets", p.piece_id),
            )
        })?;
        layer.1.extend(p.source.rects.iter().map(|r| (p.piece_id.clone(), p.transform.apply_rect(r))));
    }

    let run = |stage, layers: &BTreeMap<&LayerId, Layer>| {
        for (id, (frame, pieces)) in layers {
            let refs: Vec<(&str, &Rect)> = pieces.iter().map(|(s, r)| (s.as_str(), r)).collect();
            exact_cover(&refs, frame).map_err(|d| CheckFailure {
                stage,
                layer: Some((*id).clone()),
                detail: FailureDetail::Cover(d),
            })?;
        }
        Ok(())
    };
    run(CheckStage::SourcePartition, &source_layers)?;
    run(CheckStage::TargetCover, &target_layers)?;

    let source_area = c.source_area();
    let target_area = c.target_area();
    let leftover_area = c.leftover_area();
    if source_area != &target_area + &leftover_area {
        return Err(CheckFailure {
            stage: CheckStage::AreaBalance,
            layer: None,
            detail: FailureDetail::AreaMismatch { source: source_area, target: target_area, leftover: leftover_area },
        });
    }
    Ok(CheckReport {
        construction: c.construction,
        n: c.n,
        pieces: c.placements.len(),
        source_layers: source_layers.len(),
        target_layers: target_layers.len(),
        source_area,
        target_area,
        leftover_area,
    })
}

/// Whether two rectangle families cover the same point set, each without
/// self-overlap.
pub fn same_region(a: &[&Rect], b: &[&Rect]) -> Result<(), CoverDefect> {
    let pieces: Vec<(&str, &Rect)> = a.iter().map(|r| ("", *r)).collect();
    exact_cover(&pieces, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_halves_tile_a_square() {
        let a = Rect::int(0, 0, 1, 2);
        let b = Rect::int(1, 0, 1, 2);
        let f = Rect::int(0, 0, 2, 2);
        assert!(exact_cover(&[("a", &a), ("b", &b)], &[&f]).is_ok());
    }

    #[test]
    fn reports_first_defect() {
        let a = Rect::int(0, 0, 2, 1);
        let b = Rect::int(1, 0, 1, 2);
        let f = Rect::int(0, 0, 2, 2);
        let d = exact_cover(&[("a", &a), ("b", &b)], &[&f]).unwrap_err();
        assert_eq!(d.kind, DefectKind::Overlap);
        assert_eq!(d.x, (QuadExt::from_int(1), QuadExt::from_int(2)));
        assert_eq!(d.pieces, vec![String::from("a"), String::from("b")]);

        let d = exact_cover(&[("a", &a)], &[&f]).unwrap_err();
        assert_eq!(d.kind, DefectKind::Uncovered);
        assert_eq!(d.y, (QuadExt::from_int(1), QuadExt::from_int(2)));

        let big = Rect::int(0, 0, 3, 2);
        let d = exact_cover(&[("big", &big)], &[&f]).unwrap_err();
        assert_eq!(d.kind, DefectKind::Outside);
    }

    #[test]
    fn irrational_cut() {
        let x = crate::exact::strip_root();
        let lower = Rect::new(0.into(), 0.into(), 1.into(), &QuadExt::one() - &x).unwrap();
        let upper = Rect::new(0.into(), &QuadExt::one() - &x, 1.into(), x.clone()).unwrap();
        let f = Rect::int(0, 0, 1, 1);
        assert!(exact_cover(&[("l", &lower), ("u", &upper)], &[&f]).is_ok());
        let shifted = upper.translated(&QuadExt::zero(), &QuadExt::from_ratio(1, 100));
        assert!(exact_cover(&[("l", &lower), ("u", &shifted)], &[&f]).is_err());
    }
}

//! Lattice models of hypercube pyramids and their sections.
//!
//! `P_d(n)` stacks (d−1)-cubes of sides 1..n along the first coordinate:
//! the cell `(k, x_2, …, x_d)` belongs to it when `1 ≤ k ≤ n` and
//! `0 ≤ x_j < k`. Slicing perpendicular to the stacking axis gives the main
//! sections (cubes); slicing along one of the cube axes gives the secondary
//! sections (truncated pyramids one dimension down).

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::exact::QuadExt;
use crate::figurate::{IdentityName, IdentityParams, IdentityReport};

pub const MIN_DIM: u32 = 2;
pub const MAX_DIM: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PyramidError {
    #[error("dimension {0} outside 2..=5")]
    DimensionOutOfRange(u32),
    #[error("axis {axis} outside 2..={dim}")]
    AxisOutOfRange { axis: u32, dim: u32 },
    #[error("not a pyramid: level {level} {detail}")]
    NotAPyramid { level: u32, detail: &'static str },
}

/// A lattice cell with up to five integer coordinates.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    len: u8,
    coords: [i32; MAX_DIM],
}

impl Cell {
    /// Panics if more than five coordinates are given.
    pub fn new(coords: &[i32]) -> Self {
        assert!(coords.len() <= MAX_DIM, "cells have at most {MAX_DIM} coordinates");
        let mut c = [0; MAX_DIM];
        c[..coords.len()].copy_from_slice(coords);
        Cell { len: coords.len() as u8, coords: c }
    }

    pub fn coords(&self) -> &[i32] {
        &self.coords[..self.len as usize]
    }

    pub fn dim(&self) -> usize {
        self.len as usize
    }

    /// Drop coordinate `idx` (0-based), keeping the order of the rest.
    fn without(&self, idx: usize) -> Cell {
        let mut c = [0; MAX_DIM];
        let mut j = 0;
        for (i, v) in self.coords().iter().enumerate() {
            if i != idx {
                c[j] = *v;
                j += 1;
            }
        }
        Cell { len: self.len - 1, coords: c }
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords()).finish()
    }
}

/// Space-separated coordinates, as streamed by the CLI.
impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.coords().iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// A finite set of cells sharing one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSet {
    dim: u32,
    cells: BTreeSet<Cell>,
}

impl CellSet {
    pub fn empty(dim: u32) -> Self {
        CellSet { dim, cells: BTreeSet::new() }
    }

    /// Panics if the cell dimension differs from the set's.
    pub fn insert(&mut self, cell: Cell) -> bool {
        assert_eq!(cell.dim(), self.dim as usize, "cell dimension mismatch");
        self.cells.insert(cell)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    /// Cells in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.cells.iter()
    }

    /// Cells whose coordinate `idx` (0-based) equals `value`, with that
    /// coordinate dropped.
    fn slice(&self, idx: usize, value: i32) -> CellSet {
        let cells = self.cells.iter().filter(|c| c.coords()[idx] == value).map(|c| c.without(idx)).collect();
        CellSet { dim: self.dim - 1, cells }
    }

    fn levels(&self) -> u32 {
        self.cells.iter().map(|c| c.coords()[0]).max().unwrap_or(0).max(0) as u32
    }
}

fn check_dim(d: u32) -> Result<(), PyramidError> {
    if (MIN_DIM..=MAX_DIM as u32).contains(&d) {
        Ok(())
    } else {
        Err(PyramidError::DimensionOutOfRange(d))
    }
}

/// Cells of `P_d(n)` restricted to stacking levels `lo..=n`.
pub fn build_truncated_pyramid(d: u32, lo: u32, n: u32) -> Result<CellSet, PyramidError> {
    check_dim(d)?;
    let mut set = CellSet::empty(d);
    let free = d as usize - 1;
    for k in lo.max(1)..=n {
        let side = k as i32;
        let mut digits = [0i32; MAX_DIM];
        'odometer: loop {
            let mut coords = [0i32; MAX_DIM];
            coords[0] = side;
            coords[1..=free].copy_from_slice(&digits[..free]);
            set.cells.insert(Cell { len: d as u8, coords });
            for digit in digits.iter_mut().take(free) {
                *digit += 1;
                if *digit < side {
                    continue 'odometer;
                }
                *digit = 0;
            }
            break;
        }
    }
    Ok(set)
}

/// `P_d(n)`: level `k` is the cube `{0..k}^{d−1}`; `|P_d(n)| = S_{d−1}(n)`.
pub fn build_pyramid(d: u32, n: u32) -> Result<CellSet, PyramidError> {
    build_truncated_pyramid(d, 1, n)
}

/// Slices at stacking level `k = 1..n`, re-embedded in dimension d−1.
/// Level `k` must be exactly the cube of side `k`.
pub fn main_sections(p: &CellSet) -> Result<Vec<CellSet>, PyramidError> {
    check_dim(p.dim)?;
    let n = p.levels();
    let mut out = Vec::with_capacity(n as usize);
    for k in 1..=n {
        let s = p.slice(0, k as i32);
        let expected = (k as usize).pow(p.dim - 1);
        if s.len() != expected {
            return Err(PyramidError::NotAPyramid { level: k, detail: "has the wrong cell count" });
        }
        if s.iter().any(|c| c.coords().iter().any(|&v| v < 0 || v >= k as i32)) {
            return Err(PyramidError::NotAPyramid { level: k, detail: "leaves its cube" });
        }
        out.push(s);
    }
    let total: usize = out.iter().map(CellSet::len).sum();
    if total != p.len() {
        return Err(PyramidError::NotAPyramid { level: 0, detail: "has cells off the levels 1..n" });
    }
    Ok(out)
}

/// Slices `x_axis = m − 1` for `m = 1..n` (axis numbered 2..=d), each a
/// truncated pyramid of `Σ_{k=m}^{n} k^{d−2}` cells.
pub fn secondary_sections(p: &CellSet, axis: u32) -> Result<Vec<CellSet>, PyramidError> {
    check_dim(p.dim)?;
    if axis < 2 || axis > p.dim {
        return Err(PyramidError::AxisOutOfRange { axis, dim: p.dim });
    }
    let n = p.levels();
    let mut out = Vec::with_capacity(n as usize);
    for m in 1..=n {
        let s = p.slice(axis as usize - 1, m as i32 - 1);
        let expected: usize = (m..=n).map(|k| (k as usize).pow(p.dim - 2)).sum();
        if s.len() != expected {
            return Err(PyramidError::NotAPyramid { level: m, detail: "has a secondary slice of the wrong size" });
        }
        out.push(s);
    }
    Ok(out)
}

/// Counts `P_d(n)` through its main sections and through its secondary
/// sections along every cube axis. Both totals are reported; the secondary
/// slices are validated against the rows `Σ_{k=m}^{n} k^{d−2}`.
pub fn sections_agree(d: u32, n: u32) -> Result<IdentityReport, PyramidError> {
    let p = build_pyramid(d, n)?;
    let main: usize = main_sections(&p)?.iter().map(CellSet::len).sum();
    let mut secondary = None;
    for axis in 2..=d {
        let total: usize = secondary_sections(&p, axis)?.iter().map(CellSet::len).sum();
        match secondary {
            None => secondary = Some(total),
            Some(prev) if prev != total => {
                return Err(PyramidError::NotAPyramid { level: 0, detail: "has axis-dependent secondary totals" })
            }
            Some(_) => {}
        }
    }
    let secondary = secondary.unwrap_or(0);
    let params = IdentityParams::n(n as u64).with_d(d as u64);
    Ok(IdentityReport::new(
        IdentityName::SectionsAgree,
        params,
        QuadExt::from(BigInt::from(main)),
        QuadExt::from(BigInt::from(secondary)),
    ))
}

/// Cell counts of a section list.
pub fn sizes(sections: &[CellSet]) -> Vec<usize> {
    sections.iter().map(CellSet::len).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn build_examples() {
        assert_eq!(build_pyramid(3, 2).unwrap().len(), 5);
        assert_eq!(build_pyramid(5, 3).unwrap().len(), 98);
        let p = build_pyramid(2, 1).unwrap();
        assert_eq!(p.iter().copied().collect::<Vec<_>>(), vec![Cell::new(&[1, 0])]);
        assert_eq!(build_pyramid(6, 2), Err(PyramidError::DimensionOutOfRange(6)));
        assert_eq!(build_pyramid(1, 2), Err(PyramidError::DimensionOutOfRange(1)));
    }

    #[test]
    fn main_section_sizes() {
        let s = |d, n| sizes(&main_sections(&build_pyramid(d, n).unwrap()).unwrap());
        assert_eq!(s(3, 4), vec![1, 4, 9, 16]);
        assert_eq!(s(4, 3), vec![1, 8, 27]);
        assert_eq!(s(2, 3), vec![1, 2, 3]);
    }

    #[test]
    fn secondary_section_sizes() {
        let s = |d, n, a| sizes(&secondary_sections(&build_pyramid(d, n).unwrap(), a).unwrap());
        assert_eq!(s(3, 4, 2), vec![10, 9, 7, 4]);
        assert_eq!(s(3, 4, 3), vec![10, 9, 7, 4]);
        assert_eq!(s(4, 3, 4), vec![14, 13, 9]);
        assert_eq!(s(2, 2, 2), vec![2, 1]);
        let p = build_pyramid(3, 2).unwrap();
        assert_eq!(secondary_sections(&p, 4), Err(PyramidError::AxisOutOfRange { axis: 4, dim: 3 }));
        assert_eq!(secondary_sections(&p, 1), Err(PyramidError::AxisOutOfRange { axis: 1, dim: 3 }));
    }

    #[test]
    fn agreement_examples() {
        for (d, n, total) in [(3, 4, 30), (4, 3, 36), (5, 2, 17)] {
            let r = sections_agree(d, n).unwrap();
            assert!(r.holds());
            assert_eq!(r.lhs, QuadExt::from_int(total));
        }
    }

    #[test]
    fn rejects_non_pyramids() {
        let mut p = build_pyramid(3, 3).unwrap();
        p.cells.remove(&Cell::new(&[2, 1, 1]));
        assert!(matches!(main_sections(&p), Err(PyramidError::NotAPyramid { level: 2, .. })));
    }

    #[test]
    fn truncated_levels() {
        let p = build_truncated_pyramid(3, 3, 4).unwrap();
        assert_eq!(p.len(), 9 + 16);
        // secondary slices of levels 3..4: every row truncated at 3
        let rows: Vec<usize> = (1..=4).map(|m| p.slice(1, m - 1).len()).collect();
        assert_eq!(rows, vec![7, 7, 7, 4]);
    }
}

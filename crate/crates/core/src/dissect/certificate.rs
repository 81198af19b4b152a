use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::geometry::{LayerId, Region, RigidTransform};
use crate::exact::QuadExt;

/// The constructions a certificate can describe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Construction {
    GaussRect,
    ThreePyr2d,
    Nicomachus4d2d,
    FivePyrLayers,
    Step2Reshape,
    Step3Scissor,
    Step4Top,
}

impl Construction {
    pub const ALL: [Construction; 7] = [
        Construction::GaussRect,
        Construction::ThreePyr2d,
        Construction::Nicomachus4d2d,
        Construction::FivePyrLayers,
        Construction::Step2Reshape,
        Construction::Step3Scissor,
        Construction::Step4Top,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Construction::GaussRect => "GAUSS_RECT",
            Construction::ThreePyr2d => "THREE_PYR_2D",
            Construction::Nicomachus4d2d => "NICOMACHUS_4D_2D",
            Construction::FivePyrLayers => "FIVE_PYR_LAYERS",
            Construction::Step2Reshape => "STEP2_RESHAPE",
            Construction::Step3Scissor => "STEP3_SCISSOR",
            Construction::Step4Top => "STEP4_TOP",
        }
    }

    /// Largest `n` for which the generator builds the full certificate.
    pub fn max_n(self) -> u32 {
        match self {
            Construction::GaussRect => 100,
            Construction::ThreePyr2d => 50,
            Construction::Nicomachus4d2d => 20,
            _ => 10,
        }
    }

    /// Short lowercase tag used in piece ids.
    pub(crate) fn tag(self) -> &'static str {
        match self {
            Construction::GaussRect => "gauss",
            Construction::ThreePyr2d => "three",
            Construction::Nicomachus4d2d => "nico",
            Construction::FivePyrLayers => "five",
            Construction::Step2Reshape => "step2",
            Construction::Step3Scissor => "step3",
            Construction::Step4Top => "step4",
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown construction `{0}`")]
pub struct UnknownConstruction(pub String);

impl FromStr for Construction {
    type Err = UnknownConstruction;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Construction::ALL
            .iter()
            .copied()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownConstruction(String::from(s)))
    }
}

/// A region that lives in a named layer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LayerRegion {
    pub layer: LayerId,
    pub region: Region,
}

impl LayerRegion {
    pub fn new(layer: LayerId, region: Region) -> Self {
        LayerRegion { layer, region }
    }
}

/// One piece: where it is cut from, and the rigid motion that places it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Placement {
    pub piece_id: String,
    pub source_layer: LayerId,
    pub source: Region,
    pub transform: RigidTransform,
    pub destination_layer: LayerId,
}

impl Placement {
    /// The piece after its transform, in destination-layer coordinates.
    pub fn image(&self) -> Region {
        self.transform.apply_region(&self.source)
    }
}

/// A machine-checkable dissection: the declared source shapes are cut into
/// the placed pieces plus the leftovers, and the moved pieces tile the
/// targets exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    pub construction: Construction,
    pub n: u32,
    pub sources: Vec<LayerRegion>,
    pub placements: Vec<Placement>,
    pub targets: Vec<LayerRegion>,
    pub leftovers: Vec<LayerRegion>,
}

fn total_area(regions: &[LayerRegion]) -> QuadExt {
    regions.iter().map(|r| r.region.area()).sum()
}

impl Certificate {
    pub fn new(construction: Construction, n: u32) -> Self {
        Certificate {
            construction,
            n,
            sources: Vec::new(),
            placements: Vec::new(),
            targets: Vec::new(),
            leftovers: Vec::new(),
        }
    }

    pub fn source_area(&self) -> QuadExt {
        total_area(&self.sources)
    }

    pub fn target_area(&self) -> QuadExt {
        total_area(&self.targets)
    }

    pub fn leftover_area(&self) -> QuadExt {
        total_area(&self.leftovers)
    }

    /// Area of the placed pieces (before motion; motions preserve it).
    pub fn piece_area(&self) -> QuadExt {
        self.placements.iter().map(|p| p.source.area()).sum()
    }

    /// Sum of target areas in one layer.
    pub fn target_area_in(&self, layer: &LayerId) -> QuadExt {
        self.targets.iter().filter(|t| &t.layer == layer).map(|t| t.region.area()).sum()
    }

    pub fn source_area_in(&self, layer: &LayerId) -> QuadExt {
        self.sources.iter().filter(|t| &t.layer == layer).map(|t| t.region.area()).sum()
    }

    pub fn leftover_area_in(&self, layer: &LayerId) -> QuadExt {
        self.leftovers.iter().filter(|t| &t.layer == layer).map(|t| t.region.area()).sum()
    }

    /// Distinct layer names in first-appearance order.
    pub fn source_layers(&self) -> Vec<LayerId> {
        distinct(self.sources.iter().map(|s| &s.layer))
    }

    pub fn target_layers(&self) -> Vec<LayerId> {
        distinct(self.targets.iter().map(|s| &s.layer))
    }

    /// Pieces whose images land in `layer`, with their images.
    pub fn images_in<'a>(&'a self, layer: &'a LayerId) -> impl Iterator<Item = (&'a Placement, Region)> + 'a {
        self.placements.iter().filter(move |p| &p.destination_layer == layer).map(|p| (p, p.image()))
    }
}

fn distinct<'a>(it: impl Iterator<Item = &'a LayerId>) -> Vec<LayerId> {
    let mut out: Vec<LayerId> = Vec::new();
    for l in it {
        if !out.contains(l) {
            out.push(l.clone());
        }
    }
    out
}

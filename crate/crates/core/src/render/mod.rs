//! Figures regenerated from the exact model as SVG documents or TikZ
//! fragments.
//!
//! Each exact coordinate is converted to a float on its own and printed with
//! a fixed number of decimals, so two rectangles that share an edge in the
//! model print the same number for it.

mod scene;
mod svg;
mod tikz;

use alloc::string::String;
use core::fmt;
use core::str::FromStr;

pub use scene::{build_scene, Annotation, Panel, Scene, Tile};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FigureName {
    OddNumbers,
    Gauss,
    MainSections,
    SecondarySections,
    Puzzle3d,
    Puzzle3dDiy,
    NicomachusGrid,
    NicomachusGridDiy,
    FivePyrSection(u32),
    ConvolutionExcess,
    Step2,
    Step3Scissor,
    TopDual,
    TwoCopies,
}

impl FigureName {
    /// Every figure; `FIVE_PYR_SECTION` appears with `t = 1`.
    pub const ALL: [FigureName; 14] = [
        FigureName::OddNumbers,
        FigureName::Gauss,
        FigureName::MainSections,
        FigureName::SecondarySections,
        FigureName::Puzzle3d,
        FigureName::Puzzle3dDiy,
        FigureName::NicomachusGrid,
        FigureName::NicomachusGridDiy,
        FigureName::FivePyrSection(1),
        FigureName::ConvolutionExcess,
        FigureName::Step2,
        FigureName::Step3Scissor,
        FigureName::TopDual,
        FigureName::TwoCopies,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureName::OddNumbers => "ODD_NUMBERS",
            FigureName::Gauss => "GAUSS",
            FigureName::MainSections => "MAIN_SECTIONS",
            FigureName::SecondarySections => "SECONDARY_SECTIONS",
            FigureName::Puzzle3d => "PUZZLE_3D",
            FigureName::Puzzle3dDiy => "PUZZLE_3D_DIY",
            FigureName::NicomachusGrid => "NICOMACHUS_GRID",
            FigureName::NicomachusGridDiy => "NICOMACHUS_GRID_DIY",
            FigureName::FivePyrSection(_) => "FIVE_PYR_SECTION",
            FigureName::ConvolutionExcess => "CONVOLUTION_EXCESS",
            FigureName::Step2 => "STEP2",
            FigureName::Step3Scissor => "STEP3_SCISSOR",
            FigureName::TopDual => "TOP_DUAL",
            FigureName::TwoCopies => "TWO_COPIES",
        }
    }

    /// Largest `n` the figure is drawn for.
    pub fn max_n(self) -> u32 {
        use crate::dissect::Construction as C;
        match self {
            FigureName::OddNumbers | FigureName::Gauss => C::GaussRect.max_n(),
            FigureName::MainSections | FigureName::SecondarySections => 30,
            FigureName::Puzzle3d | FigureName::Puzzle3dDiy => C::ThreePyr2d.max_n(),
            FigureName::NicomachusGrid | FigureName::NicomachusGridDiy => C::Nicomachus4d2d.max_n(),
            _ => C::FivePyrLayers.max_n(),
        }
    }
}

impl fmt::Display for FigureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FigureName::FivePyrSection(t) => write!(f, "FIVE_PYR_SECTION({t})"),
            other => f.write_str(other.as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RenderError {
    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
    #[error("unknown format `{0}`")]
    UnknownFormat(String),
    #[error("{figure} is drawn for n in 1..={max}, got {n}")]
    UnsupportedN { figure: FigureName, n: u32, max: u32 },
    #[error("FIVE_PYR_SECTION needs 1 <= t <= n, got t={t}, n={n}")]
    SectionOutOfRange { t: u32, n: u32 },
    #[error("unit_px must be positive")]
    ZeroUnit,
    #[error("no colour for label `{0}`")]
    UnknownLabel(String),
}

/// Accepts `FIVE_PYR_SECTION` (t = 1) and `FIVE_PYR_SECTION(t)`.
impl FromStr for FigureName {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        if let Some(rest) = upper.strip_prefix("FIVE_PYR_SECTION") {
            if rest.is_empty() {
                return Ok(FigureName::FivePyrSection(1));
            }
            let t = rest
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| RenderError::UnknownFigure(String::from(s)))?;
            return Ok(FigureName::FivePyrSection(t));
        }
        FigureName::ALL
            .iter()
            .copied()
            .find(|f| f.as_str() == upper)
            .ok_or_else(|| RenderError::UnknownFigure(String::from(s)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Svg,
    Tikz,
}

impl FromStr for Format {
    type Err = RenderError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(Format::Svg),
            "tikz" => Ok(Format::Tikz),
            _ => Err(RenderError::UnknownFormat(String::from(s))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Svg => "svg",
            Format::Tikz => "tikz",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FigureSpec {
    pub figure: FigureName,
    pub n: u32,
    pub format: Format,
    pub unit_px: u32,
}

impl FigureSpec {
    pub fn new(figure: FigureName, n: u32, format: Format) -> Self {
        FigureSpec { figure, n, format, unit_px: 20 }
    }
}

/// Fill colours by region label.
pub struct Palette;

impl Palette {
    pub const TABLE: [(&'static str, &'static str); 9] = [
        ("blue", "#4C72B0"),
        ("red", "#C44E52"),
        ("orange", "#DD8452"),
        ("green", "#55A868"),
        ("pink", "#E377C2"),
        ("purple", "#8172B3"),
        ("yellow", "#CCB974"),
        ("gray", "#8C8C8C"),
        ("white", "#FFFFFF"),
    ];

    pub fn color(label: &str) -> Option<&'static str> {
        Palette::TABLE.iter().find(|(l, _)| *l == label).map(|(_, c)| *c)
    }
}

/// Render a figure. The output depends only on `spec`.
pub fn emit_figure(spec: &FigureSpec) -> Result<String, RenderError> {
    if spec.unit_px == 0 {
        return Err(RenderError::ZeroUnit);
    }
    let scene = build_scene(spec.figure, spec.n)?;
    for panel in &scene.panels {
        for tile in &panel.tiles {
            if Palette::color(&tile.label).is_none() {
                return Err(RenderError::UnknownLabel(tile.label.clone()));
            }
        }
    }
    Ok(match spec.format {
        Format::Svg => svg::write(&scene, spec.unit_px),
        Format::Tikz => tikz::write(&scene, spec.unit_px),
    })
}

/// Fixed-point decimal text for a coordinate.
fn num(v: f64) -> String {
    let s = alloc::format!("{v:.3}");
    if s == "-0.000" {
        String::from("0.000")
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        for f in FigureName::ALL {
            assert_eq!(f.as_str().parse::<FigureName>().unwrap(), f);
        }
        assert_eq!("five_pyr_section(3)".parse::<FigureName>().unwrap(), FigureName::FivePyrSection(3));
        assert!("FIVE_PYR_SECTION(x)".parse::<FigureName>().is_err());
        assert!("SQUARES".parse::<FigureName>().is_err());
    }

    #[test]
    fn out_of_range() {
        let spec = FigureSpec::new(FigureName::Step2, 11, Format::Svg);
        assert!(matches!(emit_figure(&spec), Err(RenderError::UnsupportedN { .. })));
        let spec = FigureSpec::new(FigureName::FivePyrSection(4), 3, Format::Svg);
        assert!(matches!(emit_figure(&spec), Err(RenderError::SectionOutOfRange { .. })));
    }

    #[test]
    fn every_figure_renders() {
        for f in FigureName::ALL {
            for format in [Format::Svg, Format::Tikz] {
                let a = emit_figure(&FigureSpec::new(f, 3, format)).unwrap();
                let b = emit_figure(&FigureSpec::new(f, 3, format)).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn gauss_cells() {
        let scene = build_scene(FigureName::Gauss, 4).unwrap();
        assert_eq!(scene.unit_cells(), 20);
        let svg = emit_figure(&FigureSpec::new(FigureName::Gauss, 4, Format::Svg)).unwrap();
        assert_eq!(svg.matches("class=\"cell\"").count(), 20);
    }

    #[test]
    fn main_sections_are_squares() {
        let scene = build_scene(FigureName::MainSections, 4).unwrap();
        assert_eq!(scene.panels.len(), 4);
        assert_eq!(scene.unit_cells(), 1 + 4 + 9 + 16);
    }

    #[test]
    fn scissor_is_annotated() {
        let scene = build_scene(FigureName::Step3Scissor, 2).unwrap();
        assert_eq!(scene.panels.len(), 2);
        let tikz = emit_figure(&FigureSpec::new(FigureName::Step3Scissor, 2, Format::Tikz)).unwrap();
        assert!(tikz.contains("x \\approx 0.2638"));
        let svg = emit_figure(&FigureSpec::new(FigureName::Step3Scissor, 2, Format::Svg)).unwrap();
        assert!(svg.contains("x ≈ 0.2638"));
    }
}

//! Certificate files: JSON with every coordinate in exact text form
//! (`3/2`, `-1/2+1/6*sqrt21`).

use powersum_core::dissect::{
    Certificate, Construction, LayerId, LayerRegion, Placement, Rect, Region, RigidTransform,
};
use powersum_core::QuadExt;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Construction(#[from] powersum_core::dissect::UnknownConstruction),
    #[error("bad number `{text}`: {reason}")]
    Number { text: String, reason: String },
    #[error("{0}")]
    Geometry(#[from] powersum_core::dissect::GeometryError),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RectDto {
    x: String,
    y: String,
    w: String,
    h: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LayerRegionDto {
    layer: String,
    label: String,
    rects: Vec<RectDto>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransformDto {
    quarter_turns: u8,
    reflect: bool,
    dx: String,
    dy: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlacementDto {
    piece_id: String,
    source: LayerRegionDto,
    transform: TransformDto,
    destination_layer: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateDto {
    construction: String,
    n: u32,
    sources: Vec<LayerRegionDto>,
    placements: Vec<PlacementDto>,
    targets: Vec<LayerRegionDto>,
    leftovers: Vec<LayerRegionDto>,
}

fn rect_dto(r: &Rect) -> RectDto {
    RectDto { x: r.x().to_string(), y: r.y().to_string(), w: r.w().to_string(), h: r.h().to_string() }
}

fn region_dto(layer: &LayerId, region: &Region) -> LayerRegionDto {
    LayerRegionDto {
        layer: layer.to_string(),
        label: region.label.clone(),
        rects: region.rects.iter().map(rect_dto).collect(),
    }
}

fn layer_dtos(regions: &[LayerRegion]) -> Vec<LayerRegionDto> {
    regions.iter().map(|r| region_dto(&r.layer, &r.region)).collect()
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json(c: &Certificate) -> String {
    let dto = CertificateDto {
        construction: c.construction.to_string(),
        n: c.n,
        sources: layer_dtos(&c.sources),
        placements: c
            .placements
            .iter()
            .map(|p| PlacementDto {
                piece_id: p.piece_id.clone(),
                source: region_dto(&p.source_layer, &p.source),
                transform: TransformDto {
                    quarter_turns: p.transform.quarter_turns(),
                    reflect: p.transform.reflect(),
                    dx: p.transform.dx().to_string(),
                    dy: p.transform.dy().to_string(),
                },
                destination_layer: p.destination_layer.to_string(),
            })
            .collect(),
        targets: layer_dtos(&c.targets),
        leftovers: layer_dtos(&c.leftovers),
    };
    let mut s = serde_json::to_string_pretty(&dto).expect("plain data serializes");
    s.push('\n');
    s
}

fn number(text: &str) -> Result<QuadExt, FormatError> {
    text.parse().map_err(|e: powersum_core::exact::ExactError| FormatError::Number {
        text: text.to_string(),
        reason: e.to_string(),
    })
}

fn rect(d: &RectDto) -> Result<Rect, FormatError> {
    Ok(Rect::new(number(&d.x)?, number(&d.y)?, number(&d.w)?, number(&d.h)?)?)
}

fn layer_region(d: &LayerRegionDto) -> Result<LayerRegion, FormatError> {
    let rects = d.rects.iter().map(rect).collect::<Result<_, _>>()?;
    Ok(LayerRegion::new(LayerId::new(d.layer.clone()), Region::new(d.label.clone(), rects)))
}

fn layer_regions(ds: &[LayerRegionDto]) -> Result<Vec<LayerRegion>, FormatError> {
    ds.iter().map(layer_region).collect()
}

pub fn from_json(text: &str) -> Result<Certificate, FormatError> {
    let dto: CertificateDto = serde_json::from_str(text)?;
    let construction: Construction = dto.construction.parse()?;
    let mut placements = Vec::with_capacity(dto.placements.len());
    for p in &dto.placements {
        let source = layer_region(&p.source)?;
        let t = &p.transform;
        let transform = RigidTransform::new(t.quarter_turns, t.reflect, number(&t.dx)?, number(&t.dy)?)?;
        placements.push(Placement {
            piece_id: p.piece_id.clone(),
            source_layer: source.layer,
            source: source.region,
            transform,
            destination_layer: LayerId::new(p.destination_layer.clone()),
        });
    }
    Ok(Certificate {
        construction,
        n: dto.n,
        sources: layer_regions(&dto.sources)?,
        placements,
        targets: layer_regions(&dto.targets)?,
        leftovers: layer_regions(&dto.leftovers)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use powersum_core::dissect::{generate, Construction};

    #[test]
    fn round_trip_is_exact() {
        for c in [Construction::ThreePyr2d, Construction::Step3Scissor] {
            let cert = generate(c, 2).unwrap();
            let text = to_json(&cert);
            let back = from_json(&text).unwrap();
            assert_eq!(back, cert);
            assert_eq!(to_json(&back), text);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let text = to_json(&generate(Construction::GaussRect, 2).unwrap());
        assert!(from_json(&text.replace("GAUSS_RECT", "SQUARE")).is_err());
        assert!(from_json(&text.replacen("\"w\": \"2\"", "\"w\": \"0\"", 1)).is_err());
        assert!(from_json(&text.replacen("\"quarter_turns\": 2", "\"quarter_turns\": 7", 1)).is_err());
        assert!(from_json(&text.replacen("\"x\": \"0\"", "\"x\": \"zero\"", 1)).is_err());
        assert!(from_json("{").is_err());
    }
}

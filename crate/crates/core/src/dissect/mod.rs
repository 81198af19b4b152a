//! Cut-and-paste constructions as checkable certificates.
//!
//! A [`Certificate`] lists declared source regions per layer, the pieces cut
//! from them with the rigid motion applied to each, the target regions, and
//! whatever is left over. [`check_certificate`] decides exactly, over
//! Q(√21) coordinates, whether the pieces and leftovers partition the sources
//! and the moved pieces tile the targets.

mod certificate;
mod cover;
mod generators;
mod geometry;
mod pipeline;
mod top_layer;

pub use certificate::{Certificate, Construction, LayerRegion, Placement, UnknownConstruction};
pub use cover::{
    check_certificate, exact_cover, same_region, CheckFailure, CheckReport, CheckStage, CoverDefect, DefectKind,
    FailureDetail,
};
pub use generators::{
    corner_of_squares, excess_slot, five_pyramids_layers, gauss_rectangle, grid_origin, leftover_per_rectangle,
    moved_to, nicomachus_4d_2d, one_third, reshape_slot, scissor_pieces, scissor_slot, staircase, staircase_columns,
    step2_reshape, step3_scissor, three_pyramids_2d,
};
pub use geometry::{GeometryError, LayerId, Rect, Region, RigidTransform};
pub use pipeline::{full_theorem_report, run_pipeline, PipelineError, PipelineRun};
pub use top_layer::{dual_slot, square_minus_corner, step4_top_layer};

use crate::exact::QuadExt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{construction} supports n in 1..={max}, got {n}")]
pub struct UnsupportedN {
    pub construction: Construction,
    pub n: u32,
    pub max: u32,
}

/// Builds the certificate of `construction` for `n`.
pub fn generate(construction: Construction, n: u32) -> Result<Certificate, UnsupportedN> {
    if n == 0 || n > construction.max_n() {
        return Err(UnsupportedN { construction, n, max: construction.max_n() });
    }
    Ok(match construction {
        Construction::GaussRect => gauss_rectangle(n),
        Construction::ThreePyr2d => three_pyramids_2d(n),
        Construction::Nicomachus4d2d => nicomachus_4d_2d(n),
        Construction::FivePyrLayers => five_pyramids_layers(n),
        Construction::Step2Reshape => step2_reshape(n),
        Construction::Step3Scissor => step3_scissor(n),
        Construction::Step4Top => step4_top_layer(n).0,
    })
}

/// A single-placement change that must break any exact certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Shift by one unit: 0 = +x, 1 = −x, 2 = +y, 3 = −y.
    Translate(u8),
    QuarterTurn,
    Reflect,
}

/// Copy of `c` with `mutation` applied to placement `index`.
pub fn mutate(c: &Certificate, index: usize, mutation: Mutation) -> Certificate {
    let mut out = c.clone();
    let p = &mut out.placements[index];
    p.transform = match mutation {
        Mutation::Translate(dir) => {
            let (dx, dy) = match dir % 4 {
                0 => (1, 0),
                1 => (-1, 0),
                2 => (0, 1),
                _ => (0, -1),
            };
            p.transform.shifted(&QuadExt::from_int(dx), &QuadExt::from_int(dy))
        }
        Mutation::QuarterTurn => p.transform.with_extra_quarter_turn(),
        Mutation::Reflect => p.transform.with_reflect_toggled(),
    };
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figurate::sum_powers_bruteforce;
    use alloc::vec::Vec;
    use proptest::prelude::*;

    fn total(c: &Certificate) -> QuadExt {
        c.target_area()
    }

    fn s(p: u32, n: u32) -> QuadExt {
        QuadExt::from(sum_powers_bruteforce(p, u64::from(n)))
    }

    #[test]
    fn gauss_examples() {
        let c = gauss_rectangle(1);
        assert_eq!(c.placements.len(), 2);
        assert_eq!(c.piece_area(), QuadExt::from_int(2));
        check_certificate(&c).unwrap();
        assert_eq!(total(&gauss_rectangle(4)), QuadExt::from_int(20));
        let c = gauss_rectangle(50);
        check_certificate(&c).unwrap();
        assert_eq!(total(&c), QuadExt::from_int(2550));
    }

    #[test]
    fn translated_piece_overlaps() {
        let c = gauss_rectangle(5);
        let bad = mutate(&c, 0, Mutation::Translate(0));
        let err = check_certificate(&bad).unwrap_err();
        assert_eq!(err.stage, CheckStage::TargetCover);
        match err.detail {
            FailureDetail::Cover(d) => assert_eq!(d.kind, DefectKind::Overlap),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn enlarged_target_is_uncovered() {
        let mut c = gauss_rectangle(5);
        c.targets[0].region.rects[0] = Rect::int(0, 0, 7, 5);
        let err = check_certificate(&c).unwrap_err();
        match err.detail {
            FailureDetail::Cover(d) => {
                assert_eq!(d.kind, DefectKind::Uncovered);
                assert_eq!(d.x, (QuadExt::from_int(6), QuadExt::from_int(7)));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn three_pyramid_examples() {
        let c = three_pyramids_2d(1);
        check_certificate(&c).unwrap();
        assert_eq!(c.targets[0].region.rects[0].h(), &QuadExt::from_ratio(3, 2));
        assert_eq!(total(&c), QuadExt::from_int(3));
        for n in [2, 4, 7] {
            let c = three_pyramids_2d(n);
            check_certificate(&c).unwrap();
            assert_eq!(total(&c), &s(2, n) * &QuadExt::from_int(3));
        }
        let c = three_pyramids_2d(4);
        assert!(c.targets.iter().all(|t| t.region.area() == QuadExt::from_ratio(45, 2)));
    }

    #[test]
    fn nicomachus_examples() {
        for (n, blocks, area) in [(1, 1, 4), (2, 4, 36), (4, 16, 400)] {
            let c = nicomachus_4d_2d(n);
            check_certificate(&c).unwrap();
            assert_eq!(c.targets.len(), blocks);
            assert_eq!(total(&c), QuadExt::from_int(area));
            assert_eq!(total(&c), &s(3, n) * &QuadExt::from_int(4));
        }
    }

    #[test]
    fn five_pyramid_examples() {
        for (n, tot, excess) in [(1, 5, 1), (2, 85, 13), (4, 1770, 1 + 12 + 45 + 112)] {
            let c = five_pyramids_layers(n);
            check_certificate(&c).unwrap();
            assert_eq!(c.source_area(), QuadExt::from_int(tot));
            assert_eq!(c.target_area_in(&LayerId::new("excess")), QuadExt::from_int(excess));
        }
    }

    #[test]
    fn reshape_examples() {
        for (n, rects, area) in [(1, 2, 4), (2, 6, 36), (3, 12, 144)] {
            let c = step2_reshape(n);
            check_certificate(&c).unwrap();
            let layer = LayerId::indexed("rect", 1);
            assert_eq!(c.targets.iter().filter(|t| t.layer == layer).count(), rects);
            assert_eq!(c.target_area_in(&layer), QuadExt::from_int(area));
        }
    }

    #[test]
    fn scissor_examples() {
        let c = step3_scissor(1);
        check_certificate(&c).unwrap();
        assert_eq!(c.targets[0].region.area(), QuadExt::from_ratio(5, 3));
        let c = step3_scissor(2);
        check_certificate(&c).unwrap();
        assert_eq!(c.targets[0].region.area(), QuadExt::from_ratio(17, 3));
        assert_eq!(leftover_per_rectangle(), one_third());
        assert_eq!(c.leftovers.len(), 2 * 2 * 2 * 3);
        assert!(c.target_area().is_rational());
    }

    #[test]
    fn top_layer_examples() {
        for (n, corner) in [(1, 1), (2, 13), (3, 58)] {
            let (c, report) = step4_top_layer(n);
            check_certificate(&c).unwrap();
            assert!(report.holds());
            assert_eq!(c.target_area_in(&LayerId::new("top/dual")), QuadExt::from_int(corner));
            let full = LayerId::new("full/square");
            let nn = i64::from(n);
            assert_eq!(c.target_area_in(&full), QuadExt::from_int(nn * nn * (2 * nn - 1)));
            let block = c.target_area_in(&LayerId::new("double/block"));
            assert_eq!(block, QuadExt::from_int(nn * nn * (nn + 1) * (nn + 1)));
        }
    }

    #[test]
    fn pipeline_small() {
        for n in 1..=3 {
            let r = full_theorem_report(n).unwrap();
            assert!(r.holds());
            assert_eq!(r.lhs, &s(4, n) * &QuadExt::from_int(5));
        }
    }

    #[test]
    fn malformed_certificates() {
        let mut c = gauss_rectangle(3);
        c.placements[1].piece_id = c.placements[0].piece_id.clone();
        assert!(check_certificate(&c).unwrap_err().is_malformed());
        let mut c = gauss_rectangle(3);
        c.placements[0].destination_layer = LayerId::new("nowhere");
        assert!(check_certificate(&c).unwrap_err().is_malformed());
        let mut c = gauss_rectangle(3);
        c.sources.clear();
        assert!(check_certificate(&c).unwrap_err().is_malformed());
    }

    #[test]
    fn unsupported_n() {
        assert!(generate(Construction::GaussRect, 0).is_err());
        assert!(generate(Construction::FivePyrLayers, 11).is_err());
        assert!(generate(Construction::Nicomachus4d2d, 20).is_ok());
    }

    fn small_certificate() -> impl Strategy<Value = Certificate> {
        (0usize..7, 1u32..=3).prop_map(|(i, n)| generate(Construction::ALL[i], n).unwrap())
    }

    fn mutation() -> impl Strategy<Value = Mutation> {
        prop_oneof![(0u8..4).prop_map(Mutation::Translate), Just(Mutation::QuarterTurn), Just(Mutation::Reflect)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn every_mutation_is_caught(c in small_certificate(), pick in any::<prop::sample::Index>(), m in mutation()) {
            prop_assert!(check_certificate(&c).is_ok());
            let bad = mutate(&c, pick.index(c.placements.len()), m);
            prop_assert!(check_certificate(&bad).is_err());
        }

        #[test]
        fn area_is_conserved(c in small_certificate()) {
            prop_assert_eq!(c.source_area(), c.target_area() + c.leftover_area());
            prop_assert_eq!(c.piece_area() + c.leftover_area(), c.source_area());
        }

        #[test]
        fn transforms_compose(q1 in 0u8..4, r1 in any::<bool>(), q2 in 0u8..4, r2 in any::<bool>(),
                              d in prop::array::uniform4(-5i64..5), pt in prop::array::uniform2(-9i64..9)) {
            let a = RigidTransform::new(q1, r1, d[0].into(), d[1].into()).unwrap();
            let b = RigidTransform::new(q2, r2, d[2].into(), d[3].into()).unwrap();
            let (x, y) = (QuadExt::from_int(pt[0]), QuadExt::from_int(pt[1]));
            let (x1, y1) = a.apply_point(&x, &y);
            prop_assert_eq!(b.apply_point(&x1, &y1), a.then(&b).apply_point(&x, &y));
            let r = Rect::int(pt[0], pt[1], 2, 3);
            prop_assert_eq!(a.apply_rect(&r).area(), r.area());
        }

        #[test]
        fn random_slicing_covers(cuts in prop::collection::vec(1i64..10, 1..5)) {
            // a strip cut at arbitrary points tiles its frame; dropping a slice does not
            let mut xs: Vec<i64> = cuts.clone();
            xs.sort();
            xs.dedup();
            let mut edges = alloc::vec![0];
            edges.extend(xs.iter().copied());
            edges.push(10);
            let rects: Vec<Rect> = edges.windows(2).map(|w| Rect::int(w[0], 0, w[1] - w[0], 1)).collect();
            let pieces: Vec<(&str, &Rect)> = rects.iter().map(|r| ("p", r)).collect();
            let frame = Rect::int(0, 0, 10, 1);
            prop_assert!(exact_cover(&pieces, &[&frame]).is_ok());
            prop_assert!(exact_cover(&pieces[1..], &[&frame]).is_err());
        }
    }
}

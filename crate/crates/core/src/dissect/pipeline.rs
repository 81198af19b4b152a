use alloc::vec::Vec;
use core::fmt;

use super::certificate::{Certificate, Construction, LayerRegion};
use super::cover::{check_certificate, same_region, CheckFailure, CheckReport, CoverDefect};
use super::generators::{five_pyramids_layers, step2_reshape, step3_scissor};
use super::geometry::{LayerId, Rect};
use super::top_layer::step4_top_layer;
use crate::exact::{rat, QuadExt};
use crate::figurate::{sum_powers_bruteforce, IdentityName, IdentityParams, IdentityReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PipelineError {
    /// A certificate of the named stage failed its check.
    Check { stage: Construction, failure: CheckFailure },
    /// The targets of one stage are not the sources of the next.
    Chain { from: Construction, to: Construction, layer: LayerId, defect: Option<CoverDefect> },
    /// An area or identity statement failed.
    Arithmetic { stage: &'static str, lhs: QuadExt, rhs: QuadExt },
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::Check { stage, failure } => write!(f, "{stage}: {failure}"),
            PipelineError::Chain { from, to, layer, defect } => {
                write!(f, "{from} -> {to}: layer {layer} does not carry over")?;
                if let Some(d) = defect {
                    write!(f, ": {d}")?;
                }
                Ok(())
            }
            PipelineError::Arithmetic { stage, lhs, rhs } => write!(f, "{stage}: {lhs} != {rhs}"),
        }
    }
}

/// Every certificate of the five-pyramid pipeline with its check report.
#[derive(Clone, Debug)]
pub struct PipelineRun {
    pub certificates: Vec<(Certificate, CheckReport)>,
    pub balance: IdentityReport,
    pub report: IdentityReport,
}

fn checked(c: Certificate) -> Result<(Certificate, CheckReport), PipelineError> {
    match check_certificate(&c) {
        Ok(r) => Ok((c, r)),
        Err(failure) => Err(PipelineError::Check { stage: c.construction, failure }),
    }
}

fn rects_in<'a>(regions: &'a [LayerRegion], layer: &LayerId) -> Vec<&'a Rect> {
    regions.iter().filter(|r| &r.layer == layer).flat_map(|r| r.region.rects.iter()).collect()
}

fn chain(from: &Certificate, from_layer: &LayerId, to: &Certificate, to_layer: &LayerId) -> Result<(), PipelineError> {
    let a = rects_in(&from.targets, from_layer);
    let b = rects_in(&to.sources, to_layer);
    let err =
        |defect| PipelineError::Chain { from: from.construction, to: to.construction, layer: to_layer.clone(), defect };
    if a.is_empty() || b.is_empty() {
        return Err(err(None));
    }
    same_region(&a, &b).map_err(|d| err(Some(d)))
}

/// Runs five pyramids → reshape → scissor → top layer, checks every
/// certificate and the hand-over between stages, and evaluates the final
/// assembly `5·S_4(n) = (n + ½) · n(n+1)(n−x)(n+1+x)`.
pub fn run_pipeline(n: u32) -> Result<PipelineRun, PipelineError> {
    let (five, five_r) = checked(five_pyramids_layers(n))?;
    let (step2, step2_r) = checked(step2_reshape(n))?;
    let (step3, step3_r) = checked(step3_scissor(n))?;
    let (top, balance) = step4_top_layer(n);
    let (top, top_r) = checked(top)?;

    for t in 1..=n {
        let block = LayerId::indexed("block", t);
        let rect = LayerId::indexed("rect", t);
        chain(&five, &block, &step2, &block)?;
        chain(&step2, &rect, &step3, &rect)?;
    }
    chain(&five, &LayerId::new("excess"), &top, &LayerId::new("top/corner"))?;

    let nn = u64::from(n);
    let five_total = QuadExt::from(sum_powers_bruteforce(4, nn) * 5);
    if five_r.source_area != five_total {
        return Err(PipelineError::Arithmetic { stage: "five pyramids", lhs: five_r.source_area, rhs: five_total });
    }

    let layer = step3.target_area_in(&LayerId::indexed("scissor", 1));
    for t in 2..=n {
        let other = step3.target_area_in(&LayerId::indexed("scissor", t));
        if other != layer {
            return Err(PipelineError::Arithmetic { stage: "scissored layers", lhs: other, rhs: layer });
        }
    }
    let excess = five.target_area_in(&LayerId::new("excess"));
    let top_area = &excess + &step3_r.leftover_area;
    let half_layer = &layer * &QuadExt::from(rat(1, 2));
    if top_area != half_layer {
        return Err(PipelineError::Arithmetic { stage: "top layer", lhs: top_area, rhs: half_layer });
    }
    if !balance.holds() {
        return Err(PipelineError::Arithmetic { stage: "leftover balance", lhs: balance.lhs, rhs: balance.rhs });
    }

    let height = QuadExt::from_int(i64::from(n)) + QuadExt::from(rat(1, 2));
    let report = IdentityReport::new(IdentityName::FinalAssembly, IdentityParams::n(nn), five_total, height * layer);
    if !report.holds() {
        return Err(PipelineError::Arithmetic { stage: "final assembly", lhs: report.lhs, rhs: report.rhs });
    }
    Ok(PipelineRun {
        certificates: alloc::vec![(five, five_r), (step2, step2_r), (step3, step3_r), (top, top_r)],
        balance,
        report,
    })
}

/// The final-assembly report after every certificate of the pipeline checks.
pub fn full_theorem_report(n: u32) -> Result<IdentityReport, PipelineError> {
    run_pipeline(n).map(|run| run.report)
}

//! Pointwise type stratification of a frame over a sample grid.
//!
//! Each grid point is classified independently (in parallel when available)
//! and the results are aggregated in grid order, so the output is
//! deterministic regardless of scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::frame::DiracFrame;
use super::numeric::GridSpec;
use super::FrameError;
use crate::lindirac::{DiracType, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointFlag {
    Ok,
    /// A singular value fell inside the tolerance band, or the raw ranks
    /// violate the type constraints; the classification is unreliable.
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointType {
    pub ty: DiracType,
    pub flag: PointFlag,
}

/// The sampled partition of the domain by pointwise type.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeStratification {
    grid: GridSpec,
    points: Vec<PointType>,
    summary: BTreeMap<DiracType, usize>,
    parity: Parity,
    ambiguous_count: usize,
}

impl TypeStratification {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Per-point types in row-major grid order.
    pub fn points(&self) -> &[PointType] {
        &self.points
    }

    /// Occurring types with sample counts (clean samples only).
    pub fn summary(&self) -> &BTreeMap<DiracType, usize> {
        &self.summary
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn ambiguous_count(&self) -> usize {
        self.ambiguous_count
    }

    /// Clean sample count for one type.
    pub fn count_of(&self, ty: DiracType) -> usize {
        self.summary.get(&ty).copied().unwrap_or(0)
    }

    /// Indices (flat, row-major) of clean samples whose type satisfies the
    /// predicate.
    pub fn samples_where(&self, pred: impl Fn(DiracType) -> bool) -> Vec<usize> {
        self.points
            .iter()
            .enumerate()
            .filter(|(_, p)| p.flag == PointFlag::Ok && pred(p.ty))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Evaluates the frame on every grid point and classifies the types.
pub fn stratify(frame: &DiracFrame, grid: &GridSpec) -> Result<TypeStratification, FrameError> {
    if grid.domain() != frame.domain() {
        return Err(FrameError::Calc(crate::symcalc::CalcError::DomainMismatch));
    }
    let n = frame.n();
    let points: Vec<PointType> = (0..grid.total_points())
        .into_par_iter()
        .map(|flat| {
            let point = grid.point_f64(flat);
            let pt = frame.pointwise_type(&point);
            let flag = if pt.ambiguous || !pt.ty.is_valid_for(n) {
                PointFlag::Ambiguous
            } else {
                PointFlag::Ok
            };
            PointType { ty: pt.ty, flag }
        })
        .collect();

    let mut summary = BTreeMap::new();
    let mut parity: Option<Parity> = None;
    let mut ambiguous_count = 0;
    for p in &points {
        match p.flag {
            PointFlag::Ambiguous => ambiguous_count += 1,
            PointFlag::Ok => {
                *summary.entry(p.ty).or_insert(0) += 1;
                match parity {
                    None => parity = Some(p.ty.parity()),
                    Some(q) if q != p.ty.parity() => return Err(FrameError::MixedParity),
                    _ => {}
                }
            }
        }
    }
    let parity = parity.ok_or(FrameError::NoCleanSamples)?;
    Ok(TypeStratification {
        grid: grid.clone(),
        points,
        summary,
        parity,
        ambiguous_count,
    })
}

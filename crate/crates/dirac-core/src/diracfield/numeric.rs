//! Sample grids and floating-point rank decisions.
//!
//! Symbolic checks elsewhere are exact; floats enter only here, at sampling
//! time. Rank uses singular values with a relative threshold of `1e−9`, and
//! anything within a factor of 10 of the threshold is flagged ambiguous
//! rather than silently classified.

use nalgebra::DMatrix;

use super::FrameError;
use crate::rat::{rat_int, to_f64, Rat};
use crate::symcalc::{Domain, DomainKind};

pub const RANK_REL_TOL: f64 = 1e-9;
pub const AMBIGUITY_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    pub ambiguous: bool,
}

/// Rank by singular values relative to the largest one.
pub fn float_rank(mat: &DMatrix<f64>) -> RankInfo {
    if mat.is_empty() {
        return RankInfo {
            rank: 0,
            ambiguous: false,
        };
    }
    let svals = mat.clone().singular_values();
    let smax = svals.iter().cloned().fold(0.0_f64, f64::max);
    if smax == 0.0 {
        return RankInfo {
            rank: 0,
            ambiguous: false,
        };
    }
    let cut = RANK_REL_TOL * smax;
    let rank = svals.iter().filter(|&&s| s > cut).count();
    let ambiguous = svals
        .iter()
        .any(|&s| s > cut / AMBIGUITY_FACTOR && s <= cut * AMBIGUITY_FACTOR);
    RankInfo { rank, ambiguous }
}

/// One grid coordinate: exact rational on affine axes, a rational fraction
/// of the full turn on torus axes.
#[derive(Debug, Clone, PartialEq)]
pub enum GridCoord {
    Exact(Rat),
    /// The angle `2π · numer / denom`.
    Angle { numer: usize, denom: usize },
}

impl GridCoord {
    pub fn to_f64(&self) -> f64 {
        match self {
            GridCoord::Exact(r) => to_f64(r),
            GridCoord::Angle { numer, denom } => {
                2.0 * std::f64::consts::PI * (*numer as f64) / (*denom as f64)
            }
        }
    }
}

/// A rectangular sample grid: `counts[i]` points along axis `i`, uniformly
/// spaced over `[0, 2π)` on torus axes and over the closed `ranges[i]` on
/// affine axes.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    domain: Domain,
    counts: Vec<usize>,
    ranges: Vec<(Rat, Rat)>,
}

impl GridSpec {
    pub fn uniform(domain: Domain, per_axis: usize, range: Option<(Rat, Rat)>) -> Result<Self, FrameError> {
        let minimum = match domain.kind {
            DomainKind::Affine => 2,
            DomainKind::Torus => 1,
        };
        if per_axis < minimum {
            return Err(FrameError::GridTooSmall {
                got: per_axis,
                minimum,
            });
        }
        let (lo, hi) = range.unwrap_or((rat_int(-1), rat_int(1)));
        if domain.kind == DomainKind::Affine && lo >= hi {
            return Err(FrameError::EmptyRange);
        }
        Ok(Self {
            domain,
            counts: vec![per_axis; domain.dim],
            ranges: vec![(lo, hi); domain.dim],
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn ranges(&self) -> &[(Rat, Rat)] {
        &self.ranges
    }

    pub fn total_points(&self) -> usize {
        self.counts.iter().product()
    }

    /// The coordinate of sample `k` along `axis`.
    pub fn coord(&self, axis: usize, k: usize) -> GridCoord {
        match self.domain.kind {
            DomainKind::Torus => GridCoord::Angle {
                numer: k,
                denom: self.counts[axis],
            },
            DomainKind::Affine => {
                let (lo, hi) = &self.ranges[axis];
                let n = self.counts[axis];
                let step = (hi - lo) / rat_int((n - 1) as i64);
                GridCoord::Exact(lo + step * rat_int(k as i64))
            }
        }
    }

    /// Multi-index of the `flat`-th point, row-major with axis 0 slowest.
    pub fn multi_index(&self, flat: usize) -> Vec<usize> {
        let mut idx = vec![0; self.counts.len()];
        let mut rem = flat;
        for axis in (0..self.counts.len()).rev() {
            idx[axis] = rem % self.counts[axis];
            rem /= self.counts[axis];
        }
        idx
    }

    pub fn point_coords(&self, flat: usize) -> Vec<GridCoord> {
        self.multi_index(flat)
            .iter()
            .enumerate()
            .map(|(axis, &k)| self.coord(axis, k))
            .collect()
    }

    pub fn point_f64(&self, flat: usize) -> Vec<f64> {
        self.point_coords(flat).iter().map(GridCoord::to_f64).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_grid_hits_endpoints_and_center() {
        let g = GridSpec::uniform(Domain::affine(1), 9, None).unwrap();
        assert_eq!(g.coord(0, 0), GridCoord::Exact(rat_int(-1)));
        assert_eq!(g.coord(0, 4), GridCoord::Exact(rat_int(0)));
        assert_eq!(g.coord(0, 8), GridCoord::Exact(rat_int(1)));
    }

    #[test]
    fn torus_grid_is_left_closed() {
        let g = GridSpec::uniform(Domain::torus(2), 4, None).unwrap();
        assert_eq!(g.total_points(), 16);
        assert_eq!(
            g.coord(0, 1),
            GridCoord::Angle { numer: 1, denom: 4 }
        );
        let p = g.point_f64(5); // index (1, 1)
        assert!((p[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn row_major_ordering() {
        let g = GridSpec::uniform(Domain::affine(2), 3, None).unwrap();
        assert_eq!(g.multi_index(0), vec![0, 0]);
        assert_eq!(g.multi_index(1), vec![0, 1]);
        assert_eq!(g.multi_index(3), vec![1, 0]);
        assert_eq!(g.multi_index(8), vec![2, 2]);
    }

    #[test]
    fn rank_with_clean_and_ambiguous_values() {
        let full = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        assert_eq!(
            float_rank(&full),
            RankInfo {
                rank: 2,
                ambiguous: false
            }
        );
        let drop = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1e-13]);
        let info = float_rank(&drop);
        assert_eq!(info.rank, 1);
        assert!(!info.ambiguous);
        let marginal = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 3e-9]);
        assert!(float_rank(&marginal).ambiguous);
    }
}

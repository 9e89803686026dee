//! Almost Dirac structures presented by symbolic frames.
//!
//! A frame is `n` generalized sections spanning a Lagrangian subspace at
//! every point. Isotropy is checked exactly at construction; pointwise rank
//! is checked numerically on a default grid. On torus domains a section may
//! flip sign under a full turn (half-integer frequencies); the flip pattern is
//! recorded per section and axis, and every section must be at least
//! projectively periodic so the spanned field is well defined.

use nalgebra::DMatrix;

use super::numeric::{float_rank, GridSpec};
use super::FrameError;
use crate::lindirac::{DiracType, Parity};
use crate::rat::rat_int;
use crate::symcalc::{
    courant_bracket, pairing_field, Domain, DomainKind, FreqParity, GSection, KForm, ScalarField,
    VectorField,
};

pub const DEFAULT_RANK_GRID: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct DiracFrame {
    domain: Domain,
    sections: Vec<GSection>,
    twists: Vec<Vec<bool>>,
    parity: Parity,
}

impl DiracFrame {
    /// Validates and builds a frame: exact isotropy, torus periodicity with
    /// twist bookkeeping, pointwise rank `n` on the default grid, and a
    /// consistent parity across all clean samples.
    pub fn build(sections: Vec<GSection>) -> Result<Self, FrameError> {
        let Some(first) = sections.first() else {
            return Err(FrameError::WrongSectionCount {
                expected: 1,
                got: 0,
            });
        };
        let domain = first.domain();
        let n = domain.dim;
        if sections.len() != n {
            return Err(FrameError::WrongSectionCount {
                expected: n,
                got: sections.len(),
            });
        }
        if sections.iter().any(|s| s.domain() != domain) {
            return Err(FrameError::Calc(crate::symcalc::CalcError::DomainMismatch));
        }
        // exact isotropy
        for i in 0..n {
            for j in i..n {
                let p = pairing_field(&sections[i], &sections[j])?;
                if !p.is_zero() {
                    return Err(FrameError::NotIsotropic {
                        i,
                        j,
                        witness: p.to_string(),
                    });
                }
            }
        }
        // torus sign twists
        let twists = sections
            .iter()
            .enumerate()
            .map(|(s, section)| section_twists(s, section))
            .collect::<Result<Vec<_>, _>>()?;
        // pointwise rank and parity on the default grid
        let grid = GridSpec::uniform(domain, DEFAULT_RANK_GRID, None)?;
        let mut parity: Option<Parity> = None;
        for flat in 0..grid.total_points() {
            let point = grid.point_f64(flat);
            let mat = eval_matrix(&sections, &point);
            let full = float_rank(&mat);
            if full.rank < n || full.ambiguous {
                return Err(FrameError::RankDrop { point });
            }
            let ty = pointwise_type(&sections, &point);
            if let Some(t) = clean_type(&ty, n) {
                match parity {
                    None => parity = Some(t.parity()),
                    Some(p) if p != t.parity() => return Err(FrameError::MixedParity),
                    _ => {}
                }
            }
        }
        let parity = parity.ok_or(FrameError::NoCleanSamples)?;
        Ok(Self {
            domain,
            sections,
            twists,
            parity,
        })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn n(&self) -> usize {
        self.domain.dim
    }

    pub fn sections(&self) -> &[GSection] {
        &self.sections
    }

    pub fn section(&self, i: usize) -> &GSection {
        &self.sections[i]
    }

    /// Per-section, per-axis sign flip under `xᵢ ↦ xᵢ + 2π`.
    pub fn twists(&self) -> &[Vec<bool>] {
        &self.twists
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// The `2n × n` coefficient matrix at a point (sections as columns,
    /// vector components on top of covector components).
    pub fn eval_matrix(&self, point: &[f64]) -> DMatrix<f64> {
        eval_matrix(&self.sections, point)
    }

    /// Pointwise type from floating ranks, with ambiguity flags.
    pub fn pointwise_type(&self, point: &[f64]) -> PointwiseType {
        pointwise_type(&self.sections, point)
    }
}

fn eval_matrix(sections: &[GSection], point: &[f64]) -> DMatrix<f64> {
    let n = sections.len();
    let cols: Vec<Vec<f64>> = sections.iter().map(|s| s.component_values(point)).collect();
    DMatrix::from_fn(2 * n, n, |r, c| cols[c][r])
}

/// The raw result of a pointwise type computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointwiseType {
    pub ty: DiracType,
    pub ambiguous: bool,
}

fn pointwise_type(sections: &[GSection], point: &[f64]) -> PointwiseType {
    let n = sections.len();
    let mat = eval_matrix(sections, point);
    let p_block = mat.rows(0, n).into_owned();
    let q_block = mat.rows(n, n).into_owned();
    let p_rank = float_rank(&p_block);
    let q_rank = float_rank(&q_block);
    let ty = DiracType {
        a: n - q_rank.rank,
        b: n - p_rank.rank,
    };
    let mut ambiguous = p_rank.ambiguous || q_rank.ambiguous;
    if !ty.is_valid_for(n) {
        ambiguous = true;
    }
    PointwiseType { ty, ambiguous }
}

fn clean_type(pt: &PointwiseType, n: usize) -> Option<DiracType> {
    (!pt.ambiguous && pt.ty.is_valid_for(n)).then_some(pt.ty)
}

fn section_twists(index: usize, section: &GSection) -> Result<Vec<bool>, FrameError> {
    let domain = section.domain();
    if domain.kind == DomainKind::Affine {
        return Ok(vec![false; domain.dim]);
    }
    let mut flags = Vec::with_capacity(domain.dim);
    for axis in 0..domain.dim {
        let mut merged = FreqParity::Zero;
        let mut consider = |p: FreqParity| -> bool {
            merged = match (merged, p) {
                (m, FreqParity::Zero) => m,
                (FreqParity::Zero, p) => p,
                (m, p) if m == p => m,
                _ => FreqParity::Mixed,
            };
            merged != FreqParity::Mixed
        };
        let mut ok = true;
        for comp in section.vector().components() {
            ok &= consider(comp.axis_frequency_parity(axis));
        }
        for (_, comp) in section.covector().terms() {
            ok &= consider(comp.axis_frequency_parity(axis));
        }
        if !ok {
            return Err(FrameError::TorusPeriodicity {
                section: index,
                axis,
            });
        }
        flags.push(merged == FreqParity::Odd);
    }
    Ok(flags)
}

/// The scalar involutivity tensor `T[i][j][k] = ⟨[eᵢ, eⱼ], eₖ⟩`; a frame
/// spans a Dirac structure exactly when it vanishes identically.
pub fn courant_tensor(frame: &DiracFrame) -> Result<Vec<Vec<Vec<ScalarField>>>, FrameError> {
    let n = frame.n();
    let zero = || ScalarField::zero(frame.domain());
    let mut out = vec![vec![vec![zero(); n]; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let bracket = courant_bracket(frame.section(i), frame.section(j))?;
            for k in 0..n {
                let t = pairing_field(&bracket, frame.section(k))?;
                out[i][j][k] = t.clone();
                out[j][i][k] = t.neg();
            }
        }
    }
    Ok(out)
}

/// A nonzero entry of the involutivity tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct CourantWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub field: ScalarField,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiracVerdict {
    pub holds: bool,
    pub witness: Option<CourantWitness>,
}

/// Involutivity check with a witness on failure: the first (lexicographic)
/// nonvanishing `T[i][j][k]`.
pub fn is_dirac(frame: &DiracFrame) -> Result<DiracVerdict, FrameError> {
    let tensor = courant_tensor(frame)?;
    for (i, plane) in tensor.iter().enumerate() {
        for (j, row) in plane.iter().enumerate() {
            for (k, field) in row.iter().enumerate() {
                if !field.is_zero() {
                    return Ok(DiracVerdict {
                        holds: false,
                        witness: Some(CourantWitness {
                            i,
                            j,
                            k,
                            field: field.clone(),
                        }),
                    });
                }
            }
        }
    }
    Ok(DiracVerdict {
        holds: true,
        witness: None,
    })
}

/// The graph frame of a 2-form: sections `∂ᵢ + ι_{∂ᵢ} ω`.
pub fn graph_frame_two_form(omega: &KForm) -> Result<DiracFrame, FrameError> {
    let domain = omega.domain();
    if omega.degree() != 2 {
        return Err(FrameError::Calc(crate::symcalc::CalcError::DegreeMismatch {
            expected: 2,
            got: omega.degree(),
        }));
    }
    let sections = (0..domain.dim)
        .map(|i| {
            let v = VectorField::coordinate_field(domain, i)?;
            let xi = omega.interior(&v)?;
            GSection::new(v, xi)
        })
        .collect::<Result<Vec<_>, _>>()?;
    DiracFrame::build(sections)
}

/// The graph frame of a bivector: sections `ι_{dxᵢ} Π + dxᵢ`.
pub fn graph_frame_bivector(pi: &super::poisson::Bivector) -> Result<DiracFrame, FrameError> {
    let domain = pi.domain();
    let sections = (0..domain.dim)
        .map(|i| {
            let v = pi.contract_axis(i);
            let mut covec = vec![ScalarField::zero(domain); domain.dim];
            covec[i] = ScalarField::one(domain);
            GSection::new(v, KForm::one_form(domain, covec)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    DiracFrame::build(sections)
}

/// The even surface frame of a projective chart pair:
/// `{c ∂x + s dy, c ∂y − s dx}` on a 2-dimensional domain.
pub fn even_surface_frame(c: &ScalarField, s: &ScalarField) -> Result<DiracFrame, FrameError> {
    let domain = c.domain();
    if domain.dim != 2 {
        return Err(FrameError::WrongDimension {
            expected: 2,
            got: domain.dim,
        });
    }
    let zero = || ScalarField::zero(domain);
    let e1 = GSection::from_components(
        domain,
        vec![c.clone(), zero()],
        vec![zero(), s.clone()],
    )?;
    let e2 = GSection::from_components(
        domain,
        vec![zero(), c.clone()],
        vec![s.neg(), zero()],
    )?;
    DiracFrame::build(vec![e1, e2])
}

/// The odd surface frame of a line field `a ∂x + b ∂y`:
/// `{a ∂x + b ∂y, b dx − a dy}`.
pub fn odd_surface_frame(a: &ScalarField, b: &ScalarField) -> Result<DiracFrame, FrameError> {
    let domain = a.domain();
    if domain.dim != 2 {
        return Err(FrameError::WrongDimension {
            expected: 2,
            got: domain.dim,
        });
    }
    let zero = || ScalarField::zero(domain);
    let e1 = GSection::from_components(
        domain,
        vec![a.clone(), b.clone()],
        vec![zero(), zero()],
    )?;
    let e2 = GSection::from_components(
        domain,
        vec![zero(), zero()],
        vec![b.clone(), a.neg()],
    )?;
    DiracFrame::build(vec![e1, e2])
}

//! Chart atlases in dimensions 2 and 3.
//!
//! For `n = 2` the even Lagrangians form a circle with projective coordinate
//! `(c : s)`, and the odd ones are the projective line of 1-dimensional
//! subspaces of `V`. For `n = 3` each parity component is covered by a
//! full-graph chart and a rank-2 projection chart; Lagrangians in the open
//! stratum are visible in both.

use num_traits::Zero;

use super::lagrangian::{
    from_codelta_pi, from_delta_epsilon, to_codelta_pi, to_delta_epsilon, BivectorOnCosubspace,
    Lagrangian, SkewFormOnSubspace,
};
use super::matrix::Mat;
use super::subspace::{annihilator, GVector, Subspace};
use super::{LinError, Parity};
use crate::rat::{rat_int, Rat};

/// A point `(c : s)` of the even circle in dimension 2, normalized so the
/// first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenCircleCoord {
    c: Rat,
    s: Rat,
}

impl EvenCircleCoord {
    pub fn new(c: Rat, s: Rat) -> Result<Self, LinError> {
        if c.is_zero() && s.is_zero() {
            return Err(LinError::ZeroProjective);
        }
        if !c.is_zero() {
            let inv = c.recip();
            Ok(Self {
                c: rat_int(1),
                s: s * inv,
            })
        } else {
            Ok(Self {
                c: rat_int(0),
                s: rat_int(1),
            })
        }
    }

    pub fn c(&self) -> &Rat {
        &self.c
    }

    pub fn s(&self) -> &Rat {
        &self.s
    }
}

/// `(c : s) ↦ span{c∂x + s dy, c∂y − s dx}`, covering the even circle:
/// `(1 : 0)` is `V`, `(0 : 1)` is `V*`, `(1 : t)` is the graph of `t dx∧dy`.
pub fn even2_from_chart(coord: &EvenCircleCoord) -> Lagrangian {
    let (c, s) = (&coord.c, &coord.s);
    let e1 = GVector::new(
        vec![c.clone(), Rat::zero()],
        vec![Rat::zero(), s.clone()],
    )
    .expect("length 2");
    let e2 = GVector::new(
        vec![Rat::zero(), c.clone()],
        vec![-s.clone(), Rat::zero()],
    )
    .expect("length 2");
    let sub = Subspace::span_gvectors(2, &[e1, e2]).expect("ambient 4");
    Lagrangian::new(sub).expect("chart image is Lagrangian")
}

/// Inverse of [`even2_from_chart`] on even Lagrangians in dimension 2.
pub fn even2_chart(l: &Lagrangian) -> Result<EvenCircleCoord, LinError> {
    if l.n() != 2 {
        return Err(LinError::WrongAmbient {
            required: 4,
            got: 2 * l.n(),
        });
    }
    if l.parity() != Parity::Even {
        return Err(LinError::WrongParity {
            expected: Parity::Even,
        });
    }
    if l.delta().dim() == 2 {
        // Graph of t dx∧dy: chart (1 : t).
        let p = to_delta_epsilon(l);
        EvenCircleCoord::new(rat_int(1), p.eps[0][1].clone())
    } else {
        // Only V* remains.
        EvenCircleCoord::new(rat_int(0), rat_int(1))
    }
}

/// `ℓ ↦ ℓ ⊕ Ann(ℓ)`, the bijection from lines in `V` to odd Lagrangians in
/// dimension 2.
pub fn odd2_from_line(line: &Subspace) -> Result<Lagrangian, LinError> {
    if !line.is_in_v() {
        return Err(LinError::NotInV);
    }
    if line.dim() != 1 {
        return Err(LinError::NotALine);
    }
    let ann = annihilator(line)?;
    let sum = line.sum(&ann)?;
    Lagrangian::new(sum)
}

/// Inverse of [`odd2_from_line`]: the tangent projection `Δ = ρ(L)`.
pub fn odd2_line(l: &Lagrangian) -> Result<Subspace, LinError> {
    if l.n() != 2 {
        return Err(LinError::WrongAmbient {
            required: 4,
            got: 2 * l.n(),
        });
    }
    if l.parity() != Parity::Odd {
        return Err(LinError::WrongParity {
            expected: Parity::Odd,
        });
    }
    Ok(l.delta())
}

/// One chart of the dimension-3 atlas. Even Lagrangians are graphs of a
/// 2-form where `Δ = V` and pairs `(Δ̂, Π)` where `dim Δ̂ = 2`; odd ones are
/// graphs of a bivector where `Δ̂ = V*` and pairs `(Δ, ε)` where `dim Δ = 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chart3 {
    /// Even, `Δ = V`: the skew 3×3 matrix of a 2-form.
    Form { eps: Mat },
    /// Even, `dim Δ̂ = 2`: a plane of covectors with a skew 2×2 bivector.
    Poisson { codelta: Subspace, pi: Mat },
    /// Odd, `Δ̂ = V*`: the skew 3×3 matrix of a bivector.
    Bivector { pi: Mat },
    /// Odd, `dim Δ = 2`: a plane in `V` with a skew 2×2 form.
    FoliatedForm { delta: Subspace, eps: Mat },
}

impl Chart3 {
    /// Rebuilds the Lagrangian this chart value describes.
    pub fn to_lagrangian(&self) -> Result<Lagrangian, LinError> {
        match self {
            Chart3::Form { eps } => from_delta_epsilon(&SkewFormOnSubspace::new(
                Subspace::v_factor(3),
                eps.clone(),
            )?),
            Chart3::Poisson { codelta, pi } => from_codelta_pi(&BivectorOnCosubspace::new(
                codelta.clone(),
                pi.clone(),
            )?),
            Chart3::Bivector { pi } => from_codelta_pi(&BivectorOnCosubspace::new(
                Subspace::vstar_factor(3),
                pi.clone(),
            )?),
            Chart3::FoliatedForm { delta, eps } => from_delta_epsilon(&SkewFormOnSubspace::new(
                delta.clone(),
                eps.clone(),
            )?),
        }
    }
}

/// All charts of the dimension-3 atlas containing the given Lagrangian; the
/// open stratum (type `(1,0)` or `(0,1)`) appears in both of its component's
/// charts.
pub fn chart3(l: &Lagrangian) -> Result<Vec<Chart3>, LinError> {
    if l.n() != 3 {
        return Err(LinError::WrongAmbient {
            required: 6,
            got: 2 * l.n(),
        });
    }
    let t = l.type_of();
    let mut charts = Vec::new();
    match t.parity() {
        Parity::Even => {
            if t.b == 0 {
                charts.push(Chart3::Form {
                    eps: to_delta_epsilon(l).eps,
                });
            }
            if t.a == 1 {
                let p = to_codelta_pi(l);
                charts.push(Chart3::Poisson {
                    codelta: p.codelta,
                    pi: p.pi,
                });
            }
        }
        Parity::Odd => {
            if t.a == 0 {
                charts.push(Chart3::Bivector {
                    pi: to_codelta_pi(l).pi,
                });
            }
            if t.b == 1 {
                let p = to_delta_epsilon(l);
                charts.push(Chart3::FoliatedForm {
                    delta: p.delta,
                    eps: p.eps,
                });
            }
        }
    }
    Ok(charts)
}

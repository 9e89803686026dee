//! Surface classification.
//!
//! Even frames on the torus induce a map into the projective line through
//! the `(c : s)` chart at every point; the pair of loop winding numbers is a
//! complete path-component invariant. Odd surface frames carry exactly the
//! data of their tangent line field, which this module extracts.

use super::frame::{is_dirac, DiracFrame};
use super::FrameError;
use crate::lindirac::Parity;
use crate::symcalc::{Distribution, DomainKind, ScalarField, VectorField};

const WINDING_START_SAMPLES: usize = 16;
const WINDING_MAX_SAMPLES: usize = 1 << 14;
const WINDING_MAX_STEP: f64 = std::f64::consts::FRAC_PI_4;

/// The torus loop degrees of an even frame in the projective-line chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SurfaceClass {
    pub w1: i64,
    pub w2: i64,
}

/// The chart angle `θ ∈ [0, π)` of the pointwise Lagrangian of an even
/// surface frame: `tan θ = s/c` in the `(c : s)` chart. Reads the graph
/// matrix on whichever side is better conditioned.
fn chart_angle(frame: &DiracFrame, point: &[f64]) -> f64 {
    let m = frame.eval_matrix(point);
    let p = m.view((0, 0), (2, 2)).into_owned();
    let q = m.view((2, 0), (2, 2)).into_owned();
    let det_p = p[(0, 0)] * p[(1, 1)] - p[(0, 1)] * p[(1, 0)];
    let det_q = q[(0, 0)] * q[(1, 1)] - q[(0, 1)] * q[(1, 0)];
    let theta = if det_p.abs() >= det_q.abs() {
        // graph of a 2-form: W = Q P⁻¹ is skew with W[1][0] = s/c
        let w = q * p.try_inverse().expect("det_p dominates and is nonzero");
        let t = 0.5 * (w[(1, 0)] - w[(0, 1)]);
        t.atan()
    } else {
        // graph of a bivector: U = P Q⁻¹ is skew with U[0][1] = c/s
        let u = p * q.try_inverse().expect("det_q dominates and is nonzero");
        let t = 0.5 * (u[(0, 1)] - u[(1, 0)]);
        std::f64::consts::FRAC_PI_2 - t.atan()
    };
    theta.rem_euclid(std::f64::consts::PI)
}

/// Winding number of the chart angle along one generating loop of the torus
/// (the other coordinate held at zero), by adaptive lifting: the sample count
/// doubles until consecutive lifted increments stay below π/4.
fn winding_along_axis(
    frame: &DiracFrame,
    axis: usize,
    start_samples: usize,
) -> Result<i64, FrameError> {
    let mut samples = start_samples.max(2);
    loop {
        let mut ok = true;
        let mut lifted = 0.0_f64;
        let mut prev: Option<f64> = None;
        for k in 0..=samples {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (samples as f64);
            let mut point = vec![0.0; 2];
            point[axis] = angle;
            let theta = chart_angle(frame, &point);
            if let Some(last) = prev {
                // wrap the increment into [−π/2, π/2)
                let delta = (theta - last + std::f64::consts::FRAC_PI_2)
                    .rem_euclid(std::f64::consts::PI)
                    - std::f64::consts::FRAC_PI_2;
                if delta.abs() >= WINDING_MAX_STEP {
                    ok = false;
                    break;
                }
                lifted += delta;
            }
            prev = Some(theta);
        }
        if ok {
            let w = lifted / std::f64::consts::PI;
            let rounded = w.round();
            if (w - rounded).abs() > 1e-6 {
                return Err(FrameError::WindingNotInteger { value: w });
            }
            return Ok(rounded as i64);
        }
        samples *= 2;
        if samples > WINDING_MAX_SAMPLES {
            return Err(FrameError::WindingUnresolved);
        }
    }
}

/// The winding pair `(w₁, w₂)` of an even frame on `T²` along the two
/// generating loops based at the origin.
pub fn classify_surface_even(frame: &DiracFrame) -> Result<SurfaceClass, FrameError> {
    classify_surface_even_with_start(frame, WINDING_START_SAMPLES)
}

/// Winding classification with an explicit starting sample count; the result
/// must not depend on it, which the tests exercise.
pub fn classify_surface_even_with_start(
    frame: &DiracFrame,
    start_samples: usize,
) -> Result<SurfaceClass, FrameError> {
    if frame.n() != 2 {
        return Err(FrameError::WrongDimension {
            expected: 2,
            got: frame.n(),
        });
    }
    if frame.parity() != Parity::Even {
        return Err(FrameError::WrongParity {
            expected: Parity::Even,
        });
    }
    if frame.domain().kind != DomainKind::Torus {
        return Err(FrameError::WrongDomain { expected: "torus" });
    }
    Ok(SurfaceClass {
        w1: winding_along_axis(frame, 0, start_samples)?,
        w2: winding_along_axis(frame, 1, start_samples)?,
    })
}

/// The tangent line field `Δ = ρ(E)` of an odd surface frame, as a rank-1
/// distribution with one global spanning field; also asserts involutivity,
/// which is automatic for odd surface frames.
pub fn line_field_of_odd(frame: &DiracFrame) -> Result<Distribution, FrameError> {
    if frame.n() != 2 {
        return Err(FrameError::WrongDimension {
            expected: 2,
            got: frame.n(),
        });
    }
    if frame.parity() != Parity::Odd {
        return Err(FrameError::WrongParity {
            expected: Parity::Odd,
        });
    }
    let v1 = frame.section(0).vector().clone();
    let v2 = frame.section(1).vector().clone();
    // ρ(E) must be a line: the 2×2 determinant of components vanishes
    let det = &(&v1.components()[0] * &v2.components()[1])
        - &(&v1.components()[1] * &v2.components()[0]);
    if !det.is_zero() {
        return Err(FrameError::NoGlobalLineField);
    }
    let spanning = pick_spanning(&v1, &v2)?;
    let verdict = is_dirac(frame)?;
    if !verdict.holds {
        return Err(FrameError::NotDirac {
            witness: verdict.witness.map(|w| w.field.to_string()).unwrap_or_default(),
        });
    }
    Ok(Distribution::new(vec![spanning])?)
}

fn pick_spanning(v1: &VectorField, v2: &VectorField) -> Result<VectorField, FrameError> {
    if v2.is_zero() && !v1.is_zero() {
        return Ok(v1.clone());
    }
    if v1.is_zero() && !v2.is_zero() {
        return Ok(v2.clone());
    }
    if v1.is_zero() && v2.is_zero() {
        return Err(FrameError::NoGlobalLineField);
    }
    // both nonzero: one must be a ring multiple of the other
    if divides(v1, v2) {
        return Ok(v1.clone());
    }
    if divides(v2, v1) {
        return Ok(v2.clone());
    }
    Err(FrameError::NoGlobalLineField)
}

/// Is `other = f · base` for a single ring coefficient `f`?
fn divides(base: &VectorField, other: &VectorField) -> bool {
    let mut ratio: Option<ScalarField> = None;
    for (b, o) in base.components().iter().zip(other.components()) {
        if b.is_zero() {
            if !o.is_zero() {
                return false;
            }
            continue;
        }
        match o.exact_div(b) {
            None => return false,
            Some(f) => match &ratio {
                None => ratio = Some(f),
                Some(r) => {
                    if *r != f {
                        return false;
                    }
                }
            },
        }
    }
    ratio.is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diracfield::frame::{even_surface_frame, odd_surface_frame};
    use crate::rat::{rat, rat_int};
    use crate::symcalc::{Domain, ScalarField};

    fn t2() -> Domain {
        Domain::torus(2)
    }

    fn half_angle_frame(k: i64) -> DiracFrame {
        let freq = rat(k, 2);
        let c = ScalarField::cosine(t2(), 0, &freq).unwrap();
        let s = ScalarField::sine(t2(), 0, &freq).unwrap();
        even_surface_frame(&c, &s).unwrap()
    }

    #[test]
    fn constant_frame_has_zero_winding() {
        let c = ScalarField::one(t2());
        let s = ScalarField::constant(t2(), rat_int(1));
        let frame = even_surface_frame(&c, &s).unwrap();
        assert_eq!(
            classify_surface_even(&frame).unwrap(),
            SurfaceClass { w1: 0, w2: 0 }
        );
    }

    #[test]
    fn half_angle_family_winds_once_per_unit() {
        for k in [-2i64, -1, 0, 1, 2] {
            let frame = half_angle_frame(k);
            let class = classify_surface_even(&frame).unwrap();
            assert_eq!(class, SurfaceClass { w1: k, w2: 0 }, "k = {k}");
        }
    }

    #[test]
    fn full_angle_loop_double_covers_the_projective_line() {
        let c = ScalarField::cosine(t2(), 0, &rat_int(1)).unwrap();
        let s = ScalarField::sine(t2(), 0, &rat_int(1)).unwrap();
        let frame = even_surface_frame(&c, &s).unwrap();
        assert_eq!(
            classify_surface_even(&frame).unwrap(),
            SurfaceClass { w1: 2, w2: 0 }
        );
    }

    #[test]
    fn winding_is_stable_under_refinement_and_rescaling() {
        let frame = half_angle_frame(1);
        let base = classify_surface_even(&frame).unwrap();
        let refined = classify_surface_even_with_start(&frame, 2 * WINDING_START_SAMPLES).unwrap();
        assert_eq!(base, refined);
        // rescale both sections by 2 + cos y: same spanned field
        let factor = &ScalarField::constant(t2(), rat_int(2))
            + &ScalarField::cosine(t2(), 1, &rat_int(1)).unwrap();
        let sections = frame
            .sections()
            .iter()
            .map(|s| s.scale_field(&factor))
            .collect();
        let rescaled = DiracFrame::build(sections).unwrap();
        assert_eq!(classify_surface_even(&rescaled).unwrap(), base);
    }

    #[test]
    fn classify_rejects_odd_and_affine() {
        let a = ScalarField::one(t2());
        let b = ScalarField::zero(t2());
        let odd = odd_surface_frame(&a, &b).unwrap();
        assert!(matches!(
            classify_surface_even(&odd),
            Err(FrameError::WrongParity { .. })
        ));
        let d2 = Domain::affine(2);
        let even_affine = even_surface_frame(
            &ScalarField::one(d2),
            &ScalarField::coordinate(d2, 0).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            classify_surface_even(&even_affine),
            Err(FrameError::WrongDomain { .. })
        ));
    }

    #[test]
    fn line_field_of_constant_odd_frame() {
        let a = ScalarField::one(t2());
        let b = ScalarField::zero(t2());
        let frame = odd_surface_frame(&a, &b).unwrap();
        let dist = line_field_of_odd(&frame).unwrap();
        assert_eq!(dist.rank(), 1);
        assert_eq!(dist.fields()[0].component(0), &ScalarField::one(t2()));
        assert!(dist.fields()[0].component(1).is_zero());
    }

    #[test]
    fn line_field_of_half_angle_odd_frame() {
        let a = ScalarField::cosine(t2(), 0, &rat(1, 2)).unwrap();
        let b = ScalarField::sine(t2(), 0, &rat(1, 2)).unwrap();
        let frame = odd_surface_frame(&a, &b).unwrap();
        let dist = line_field_of_odd(&frame).unwrap();
        assert_eq!(dist.fields()[0].component(0), &a);
        assert_eq!(dist.fields()[0].component(1), &b);
    }

    #[test]
    fn line_field_rejects_even_frames() {
        let frame = half_angle_frame(1);
        assert!(matches!(
            line_field_of_odd(&frame),
            Err(FrameError::WrongParity { .. })
        ));
    }
}

//! Deterministic random Dirac frames.
//!
//! Surfaces get random chart paths: on the torus, a pair `(c, s)` built as a
//! product of complex waves, which can never vanish because the factors have
//! positive modulus; on the plane, a polynomial pair with one entry bounded
//! away from zero. 3-dimensional domains get graphs of random closed 2-forms
//! (even) or of catalog Poisson bivectors (odd), so the results are Dirac by
//! construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::frame::{
    even_surface_frame, graph_frame_bivector, graph_frame_two_form, odd_surface_frame, DiracFrame,
};
use super::poisson::poisson_catalog;
use super::FrameError;
use crate::lindirac::Parity;
use crate::rat::{rat, rat_int, Rat};
use crate::symcalc::{index_tuples, Domain, DomainKind, KForm, ScalarField};

/// Rational points on the unit circle used as exact phases.
const PHASES: [(i64, i64, i64); 6] = [
    // (cos·den, sin·den, den)
    (1, 0, 1),
    (0, 1, 1),
    (3, 4, 5),
    (4, -3, 5),
    (5, 12, 13),
    (-12, 5, 13),
];

/// A nonvanishing complex wave `(re, im)` on the torus: either a pure
/// rotation `e^{i(k/2)x}` (unit modulus) or `(a + cos θ) + i sin θ` with
/// `a ≥ 2` (real part at least `a − 1`).
fn torus_wave(
    rng: &mut ChaCha8Rng,
    domain: Domain,
    axis: usize,
    half_steps: i64,
) -> Result<(ScalarField, ScalarField), FrameError> {
    let freq = rat(half_steps, 2);
    let c = ScalarField::cosine(domain, axis, &freq)?;
    let s = ScalarField::sine(domain, axis, &freq)?;
    let (pc, ps, pd) = PHASES[rng.gen_range(0..PHASES.len())];
    let cos_phi = rat(pc, pd);
    let sin_phi = rat(ps, pd);
    // rotate by the phase: (c + is)·(cosφ + i sinφ)
    let re = &c.scale(&cos_phi) - &s.scale(&sin_phi);
    let im = &c.scale(&sin_phi) + &s.scale(&cos_phi);
    // A constant shift keeps the modulus ≥ a − 1 ≥ 1, but mixes frequency
    // parity unless the wave is strictly periodic; keep twisted waves pure.
    if half_steps % 2 != 0 || rng.gen_bool(0.5) {
        Ok((re, im))
    } else {
        let a = rat_int(rng.gen_range(2..=3));
        Ok((&re + &ScalarField::constant(domain, a), im))
    }
}

fn complex_mul(
    a: &(ScalarField, ScalarField),
    b: &(ScalarField, ScalarField),
) -> (ScalarField, ScalarField) {
    (
        &(&a.0 * &b.0) - &(&a.1 * &b.1),
        &(&a.0 * &b.1) + &(&a.1 * &b.0),
    )
}

/// A nonvanishing chart pair on `T²` with trig degree ≤ 3: a winding factor
/// `e^{i(w₁x + w₂y)/2}` times a bounded perturbation wave.
fn torus_chart_pair(
    rng: &mut ChaCha8Rng,
    domain: Domain,
) -> Result<(ScalarField, ScalarField), FrameError> {
    let w1 = rng.gen_range(-2..=2i64);
    let w2 = rng.gen_range(-2..=2i64);
    let mut z = torus_wave(rng, domain, 0, w1)?;
    z = complex_mul(&z, &torus_wave(rng, domain, 1, w2)?);
    // one extra integer-frequency perturbation keeps the degree ≤ 3
    let axis = rng.gen_range(0..2);
    let pert_steps = 2 * rng.gen_range(1..=2i64);
    let pert = torus_wave(rng, domain, axis, pert_steps)?;
    // only use the bounded (shifted) kind for the perturbation
    let shifted = (
        &pert.0 + &ScalarField::constant(domain, rat_int(2)),
        pert.1,
    );
    Ok(complex_mul(&z, &shifted))
}

fn random_poly(rng: &mut ChaCha8Rng, domain: Domain, terms: usize) -> ScalarField {
    let mut f = ScalarField::constant(domain, rat_int(rng.gen_range(-2..=2)));
    for _ in 0..terms {
        let mut term = ScalarField::constant(
            domain,
            rat(rng.gen_range(-2..=2), rng.gen_range(1..=2)),
        );
        for _ in 0..rng.gen_range(0..=2) {
            let axis = rng.gen_range(0..domain.dim);
            term = &term * &ScalarField::coordinate(domain, axis).expect("affine domain");
        }
        f = &f + &term;
    }
    f
}

/// A polynomial pair with no common zero: one entry is `1 + p²`.
fn affine_chart_pair(rng: &mut ChaCha8Rng, domain: Domain) -> (ScalarField, ScalarField) {
    let p = random_poly(rng, domain, 2);
    let q = random_poly(rng, domain, 2);
    let bounded = &ScalarField::one(domain) + &(&p * &p);
    if rng.gen_bool(0.5) {
        (bounded, q)
    } else {
        (q, bounded)
    }
}

/// A random closed 2-form: `dα` for a random 1-form `α`, plus constants.
fn random_closed_two_form(rng: &mut ChaCha8Rng, domain: Domain) -> Result<KForm, FrameError> {
    let alpha_comps: Vec<(Vec<usize>, ScalarField)> = (0..domain.dim)
        .map(|i| {
            let f = match domain.kind {
                DomainKind::Affine => random_poly(rng, domain, 2),
                DomainKind::Torus => {
                    // strictly periodic coefficients for an honest global form
                    let axis = rng.gen_range(0..domain.dim);
                    let freq = rat_int(rng.gen_range(1..=2));
                    let wave = if rng.gen_bool(0.5) {
                        ScalarField::cosine(domain, axis, &freq).expect("torus")
                    } else {
                        ScalarField::sine(domain, axis, &freq).expect("torus")
                    };
                    wave.scale(&rat(rng.gen_range(-2..=2), rng.gen_range(1..=2)))
                }
            };
            (vec![i], f)
        })
        .collect();
    let alpha = KForm::from_components(domain, 1, alpha_comps)?;
    let mut omega = alpha.d();
    for idx in index_tuples(domain.dim, 2) {
        let c = ScalarField::constant(domain, rat_int(rng.gen_range(-1..=1)));
        let constant = KForm::from_components(domain, 2, vec![(idx, c)])?;
        omega = omega.try_add(&constant)?;
    }
    Ok(omega)
}

/// Deterministic random frame of the requested parity on `ℝⁿ` or `Tⁿ`,
/// `n ∈ {2, 3}`; always Dirac by construction.
pub fn random_dirac_field(
    seed: u64,
    n: usize,
    parity: Parity,
    kind: DomainKind,
) -> Result<DiracFrame, FrameError> {
    if !(2..=3).contains(&n) {
        return Err(FrameError::UnsupportedCombination { n, parity, kind });
    }
    let domain = Domain { kind, dim: n };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match (n, parity) {
        (2, Parity::Even) => {
            let (c, s) = match kind {
                DomainKind::Torus => torus_chart_pair(&mut rng, domain)?,
                DomainKind::Affine => affine_chart_pair(&mut rng, domain),
            };
            even_surface_frame(&c, &s)
        }
        (2, Parity::Odd) => {
            let (a, b) = match kind {
                DomainKind::Torus => torus_chart_pair(&mut rng, domain)?,
                DomainKind::Affine => affine_chart_pair(&mut rng, domain),
            };
            odd_surface_frame(&a, &b)
        }
        (3, Parity::Even) => {
            let omega = random_closed_two_form(&mut rng, domain)?;
            graph_frame_two_form(&omega)
        }
        (3, Parity::Odd) => {
            let catalog = poisson_catalog(domain)?;
            let pick = rng.gen_range(0..catalog.len());
            let scale: Rat = rat(rng.gen_range(1..=3), rng.gen_range(1..=2));
            let pi = scale_bivector(&catalog[pick], &scale);
            graph_frame_bivector(&pi)
        }
        _ => Err(FrameError::UnsupportedCombination { n, parity, kind }),
    }
}

fn scale_bivector(
    pi: &super::poisson::Bivector,
    factor: &Rat,
) -> super::poisson::Bivector {
    let domain = pi.domain();
    let entries = index_tuples(domain.dim, 2)
        .into_iter()
        .map(|idx| ((idx[0], idx[1]), pi.entry(idx[0], idx[1]).scale(factor)))
        .collect();
    super::poisson::Bivector::from_upper(domain, entries).expect("same shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diracfield::frame::is_dirac;

    #[test]
    fn deterministic_per_seed() {
        let a = random_dirac_field(7, 2, Parity::Even, DomainKind::Torus).unwrap();
        let b = random_dirac_field(7, 2, Parity::Even, DomainKind::Torus).unwrap();
        assert_eq!(a, b);
        let c = random_dirac_field(8, 2, Parity::Even, DomainKind::Torus).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn surface_frames_have_the_requested_parity_and_are_dirac() {
        for seed in 0..5 {
            for parity in [Parity::Even, Parity::Odd] {
                for kind in [DomainKind::Affine, DomainKind::Torus] {
                    let frame = random_dirac_field(seed, 2, parity, kind).unwrap();
                    assert_eq!(frame.parity(), parity);
                    assert!(is_dirac(&frame).unwrap().holds, "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn threefold_frames_are_dirac_by_construction() {
        for seed in 0..5 {
            for kind in [DomainKind::Affine, DomainKind::Torus] {
                let even = random_dirac_field(seed, 3, Parity::Even, kind).unwrap();
                assert_eq!(even.parity(), Parity::Even);
                assert!(is_dirac(&even).unwrap().holds);
                let odd = random_dirac_field(seed, 3, Parity::Odd, kind).unwrap();
                assert_eq!(odd.parity(), Parity::Odd);
                assert!(is_dirac(&odd).unwrap().holds);
            }
        }
    }

    #[test]
    fn unsupported_dimension_errors() {
        assert!(matches!(
            random_dirac_field(0, 4, Parity::Even, DomainKind::Affine),
            Err(FrameError::UnsupportedCombination { .. })
        ));
    }
}

//! Seeded random inputs for property tests: small polynomials, trig fields,
//! forms, and sections with bounded degree.

use rand::Rng;

use super::form::{index_tuples, KForm};
use super::scalar::{Domain, DomainKind, ScalarField};
use super::vector::{GSection, VectorField};
use crate::rat::{rat, rat_int};

/// A random coefficient field: a polynomial of degree ≤ 2 or a trig
/// polynomial of degree ≤ `max_freq` (integer frequencies).
pub fn random_scalar(rng: &mut impl Rng, domain: Domain, max_freq: i64) -> ScalarField {
    let mut f = ScalarField::constant(domain, rat_int(rng.gen_range(-2..=2)));
    match domain.kind {
        DomainKind::Affine => {
            for _ in 0..3 {
                let mut term = ScalarField::constant(
                    domain,
                    rat(rng.gen_range(-3..=3), rng.gen_range(1..=2)),
                );
                for _ in 0..rng.gen_range(0..=2) {
                    let axis = rng.gen_range(0..domain.dim);
                    term = &term * &ScalarField::coordinate(domain, axis).unwrap();
                }
                f = &f + &term;
            }
        }
        DomainKind::Torus => {
            for _ in 0..3 {
                let axis = rng.gen_range(0..domain.dim);
                let freq = rat_int(rng.gen_range(1..=max_freq));
                let wave = if rng.gen_bool(0.5) {
                    ScalarField::cosine(domain, axis, &freq).unwrap()
                } else {
                    ScalarField::sine(domain, axis, &freq).unwrap()
                };
                let scale = rat(rng.gen_range(-3..=3), rng.gen_range(1..=2));
                f = &f + &wave.scale(&scale);
            }
        }
    }
    f
}

pub fn random_kform(rng: &mut impl Rng, domain: Domain, degree: usize) -> KForm {
    let comps = index_tuples(domain.dim, degree)
        .into_iter()
        .map(|idx| (idx, random_scalar(rng, domain, 2)))
        .collect();
    KForm::from_components(domain, degree, comps).expect("valid components")
}

pub fn random_vector_field(rng: &mut impl Rng, domain: Domain) -> VectorField {
    let comps = (0..domain.dim)
        .map(|_| random_scalar(rng, domain, 2))
        .collect();
    VectorField::from_components(domain, comps).expect("component count")
}

pub fn random_gsection(rng: &mut impl Rng, domain: Domain) -> GSection {
    GSection::new(
        random_vector_field(rng, domain),
        random_kform(rng, domain, 1),
    )
    .expect("degree 1")
}

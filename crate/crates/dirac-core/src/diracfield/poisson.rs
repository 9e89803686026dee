//! Bivector fields and foliated Poisson brackets.

use super::FrameError;
use crate::symcalc::{Distribution, Domain, DomainKind, ScalarField, VectorField};

/// A bivector field `Σ_{a<b} π^{ab} ∂ₐ ∧ ∂ᵦ`, stored as the full skew matrix
/// of scalar fields.
#[derive(Debug, Clone, PartialEq)]
pub struct Bivector {
    domain: Domain,
    mat: Vec<Vec<ScalarField>>,
}

impl Bivector {
    pub fn zero(domain: Domain) -> Self {
        let mat = vec![vec![ScalarField::zero(domain); domain.dim]; domain.dim];
        Self { domain, mat }
    }

    /// From upper-triangular entries `((a, b), π^{ab})` with `a < b`.
    pub fn from_upper(
        domain: Domain,
        entries: Vec<((usize, usize), ScalarField)>,
    ) -> Result<Self, FrameError> {
        let mut out = Self::zero(domain);
        for ((a, b), f) in entries {
            if a >= b || b >= domain.dim {
                return Err(FrameError::Calc(crate::symcalc::CalcError::AxisOutOfRange {
                    axis: b.max(a),
                    dim: domain.dim,
                }));
            }
            if f.domain() != domain {
                return Err(FrameError::Calc(crate::symcalc::CalcError::DomainMismatch));
            }
            out.mat[a][b] = &out.mat[a][b] + &f;
            out.mat[b][a] = out.mat[a][b].neg();
        }
        Ok(out)
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn entry(&self, a: usize, b: usize) -> &ScalarField {
        &self.mat[a][b]
    }

    pub fn is_zero(&self) -> bool {
        self.mat.iter().all(|row| row.iter().all(ScalarField::is_zero))
    }

    /// `ι_{dxᵢ} Π`, the vector field with components `π^{i·}`.
    pub fn contract_axis(&self, i: usize) -> VectorField {
        VectorField::from_components(self.domain, self.mat[i].clone()).expect("square matrix")
    }

    /// `Π(df, dg) = Σ_{a<b} π^{ab} (∂ₐf ∂ᵦg − ∂ᵦf ∂ₐg)`.
    pub fn apply(&self, f: &ScalarField, g: &ScalarField) -> Result<ScalarField, FrameError> {
        if f.domain() != self.domain || g.domain() != self.domain {
            return Err(FrameError::Calc(crate::symcalc::CalcError::DomainMismatch));
        }
        let mut out = ScalarField::zero(self.domain);
        for a in 0..self.domain.dim {
            for b in (a + 1)..self.domain.dim {
                if self.mat[a][b].is_zero() {
                    continue;
                }
                let term = &(&f.partial(a) * &g.partial(b)) - &(&f.partial(b) * &g.partial(a));
                out = &out + &(&self.mat[a][b] * &term);
            }
        }
        Ok(out)
    }
}

/// The foliated Poisson bracket `{f, g} = Π(df, dg)` on functions constant
/// along the leaves of `dist`. Non-admissible arguments are an error.
pub fn foliated_poisson_bracket(
    dist: &Distribution,
    pi: &Bivector,
    f: &ScalarField,
    g: &ScalarField,
) -> Result<ScalarField, FrameError> {
    if !dist.is_admissible(f)? {
        return Err(FrameError::NotAdmissible {
            what: f.to_string(),
        });
    }
    if !dist.is_admissible(g)? {
        return Err(FrameError::NotAdmissible {
            what: g.to_string(),
        });
    }
    pi.apply(f, g)
}

/// A generating set of admissible functions for a coordinate-aligned
/// foliation: the coordinate functions of the constant axes on affine
/// domains, their sines and cosines on torus domains.
pub fn admissible_generators(dist: &Distribution) -> Result<Vec<ScalarField>, FrameError> {
    let domain = dist.domain();
    let mut gens = Vec::new();
    for axis in 0..domain.dim {
        let constant_axis = dist
            .fields()
            .iter()
            .all(|v| v.component(axis).is_zero());
        if !constant_axis {
            continue;
        }
        match domain.kind {
            DomainKind::Affine => gens.push(ScalarField::coordinate(domain, axis)?),
            DomainKind::Torus => {
                let one = crate::rat::rat_int(1);
                gens.push(ScalarField::sine(domain, axis, &one)?);
                gens.push(ScalarField::cosine(domain, axis, &one)?);
            }
        }
    }
    Ok(gens)
}

/// Generators for the unfoliated case (every function is admissible).
pub fn coordinate_generators(domain: Domain) -> Result<Vec<ScalarField>, FrameError> {
    let mut gens = Vec::new();
    for axis in 0..domain.dim {
        match domain.kind {
            DomainKind::Affine => gens.push(ScalarField::coordinate(domain, axis)?),
            DomainKind::Torus => {
                let one = crate::rat::rat_int(1);
                gens.push(ScalarField::sine(domain, axis, &one)?);
                gens.push(ScalarField::cosine(domain, axis, &one)?);
            }
        }
    }
    Ok(gens)
}

/// Checks `{f, {g, h}} + {g, {h, f}} + {h, {f, g}} = 0` on all triples from
/// the generator list; by the Leibniz rule this decides the identity on the
/// algebra the generators span.
pub fn jacobi_on_generators(pi: &Bivector, gens: &[ScalarField]) -> Result<bool, FrameError> {
    for f in gens {
        for g in gens {
            for h in gens {
                let a = pi.apply(f, &pi.apply(g, h)?)?;
                let b = pi.apply(g, &pi.apply(h, f)?)?;
                let c = pi.apply(h, &pi.apply(f, g)?)?;
                if !(&(&a + &b) + &c).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The fixed catalog of verified Poisson bivectors on 3-dimensional domains
/// used for random odd frames: families whose Jacobi identity is checked by
/// [`jacobi_on_generators`] in the test suite.
pub fn poisson_catalog(domain: Domain) -> Result<Vec<Bivector>, FrameError> {
    assert_eq!(domain.dim, 3, "catalog is for 3-dimensional domains");
    let mut out = Vec::new();
    match domain.kind {
        DomainKind::Affine => {
            let x = ScalarField::coordinate(domain, 0)?;
            let y = ScalarField::coordinate(domain, 1)?;
            let z = ScalarField::coordinate(domain, 2)?;
            // constant symplectic-on-a-leaf
            out.push(Bivector::from_upper(
                domain,
                vec![((0, 1), ScalarField::one(domain))],
            )?);
            // Heisenberg: {x, y} = z
            out.push(Bivector::from_upper(domain, vec![((0, 1), z.clone())])?);
            // so(3): x ∂y∧∂z + y ∂z∧∂x + z ∂x∧∂y
            out.push(Bivector::from_upper(
                domain,
                vec![((1, 2), x), ((0, 2), y.neg()), ((0, 1), z)],
            )?);
            // book-keeping algebra: {x, y} = x
            out.push(Bivector::from_upper(
                domain,
                vec![((0, 1), ScalarField::coordinate(domain, 0)?)],
            )?);
        }
        DomainKind::Torus => {
            let one = crate::rat::rat_int(1);
            let sin_z = ScalarField::sine(domain, 2, &one)?;
            let cos_x = ScalarField::cosine(domain, 0, &one)?;
            out.push(Bivector::from_upper(
                domain,
                vec![((0, 1), ScalarField::one(domain))],
            )?);
            // coefficient depending only on the kernel direction
            out.push(Bivector::from_upper(domain, vec![((0, 1), sin_z)])?);
            let two_plus = &ScalarField::constant(domain, crate::rat::rat_int(2)) + &cos_x;
            out.push(Bivector::from_upper(domain, vec![((1, 2), two_plus)])?);
        }
    }
    Ok(out)
}

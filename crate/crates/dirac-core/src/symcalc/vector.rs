//! Vector fields and generalized sections `X + ξ` of `TM ⊕ T*M`.

use super::form::KForm;
use super::scalar::{Domain, ScalarField};
use super::CalcError;
use crate::rat::rat;

#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    domain: Domain,
    comps: Vec<ScalarField>,
}

impl VectorField {
    pub fn zero(domain: Domain) -> Self {
        Self {
            domain,
            comps: vec![ScalarField::zero(domain); domain.dim],
        }
    }

    /// The coordinate field `∂xᵢ`.
    pub fn coordinate_field(domain: Domain, axis: usize) -> Result<Self, CalcError> {
        if axis >= domain.dim {
            return Err(CalcError::AxisOutOfRange {
                axis,
                dim: domain.dim,
            });
        }
        let mut comps = vec![ScalarField::zero(domain); domain.dim];
        comps[axis] = ScalarField::one(domain);
        Ok(Self { domain, comps })
    }

    pub fn from_components(domain: Domain, comps: Vec<ScalarField>) -> Result<Self, CalcError> {
        if comps.len() != domain.dim {
            return Err(CalcError::DegreeMismatch {
                expected: domain.dim,
                got: comps.len(),
            });
        }
        if comps.iter().any(|f| f.domain() != domain) {
            return Err(CalcError::DomainMismatch);
        }
        Ok(Self { domain, comps })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn component(&self, i: usize) -> &ScalarField {
        &self.comps[i]
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ScalarField::is_zero)
    }

    /// Directional derivative `X(f) = Σ Xᵢ ∂ᵢ f`.
    pub fn derive(&self, f: &ScalarField) -> Result<ScalarField, CalcError> {
        if f.domain() != self.domain {
            return Err(CalcError::DomainMismatch);
        }
        let mut out = ScalarField::zero(self.domain);
        for (i, xi) in self.comps.iter().enumerate() {
            if !xi.is_zero() {
                out = &out + &(xi * &f.partial(i));
            }
        }
        Ok(out)
    }

    /// `[X, Y]ᵢ = X(Yᵢ) − Y(Xᵢ)`.
    pub fn lie_bracket(&self, other: &Self) -> Result<Self, CalcError> {
        if self.domain != other.domain {
            return Err(CalcError::DomainMismatch);
        }
        let comps = (0..self.domain.dim)
            .map(|i| {
                let a = self.derive(&other.comps[i])?;
                let b = other.derive(&self.comps[i])?;
                Ok(&a - &b)
            })
            .collect::<Result<Vec<_>, CalcError>>()?;
        Ok(Self {
            domain: self.domain,
            comps,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CalcError> {
        if self.domain != other.domain {
            return Err(CalcError::DomainMismatch);
        }
        Ok(Self {
            domain: self.domain,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            domain: self.domain,
            comps: self.comps.iter().map(ScalarField::neg).collect(),
        }
    }

    pub fn scale_field(&self, f: &ScalarField) -> Self {
        Self {
            domain: self.domain,
            comps: self.comps.iter().map(|c| c * f).collect(),
        }
    }

    pub fn component_values(&self, point: &[f64]) -> Vec<f64> {
        self.comps.iter().map(|f| f.evaluate(point)).collect()
    }
}

/// A generalized section `X + ξ`: a vector field together with a 1-form.
#[derive(Debug, Clone, PartialEq)]
pub struct GSection {
    vf: VectorField,
    form: KForm,
}

impl GSection {
    pub fn new(vf: VectorField, form: KForm) -> Result<Self, CalcError> {
        if vf.domain() != form.domain() {
            return Err(CalcError::DomainMismatch);
        }
        if form.degree() != 1 {
            return Err(CalcError::DegreeMismatch {
                expected: 1,
                got: form.degree(),
            });
        }
        Ok(Self { vf, form })
    }

    pub fn zero(domain: Domain) -> Self {
        Self {
            vf: VectorField::zero(domain),
            form: KForm::zero(domain, 1),
        }
    }

    pub fn from_vector(vf: VectorField) -> Self {
        let domain = vf.domain();
        Self {
            vf,
            form: KForm::zero(domain, 1),
        }
    }

    pub fn from_form(form: KForm) -> Result<Self, CalcError> {
        Self::new(VectorField::zero(form.domain()), form)
    }

    /// From component lists: `vec` for the vector part, `covec` for the
    /// covector part.
    pub fn from_components(
        domain: Domain,
        vec: Vec<ScalarField>,
        covec: Vec<ScalarField>,
    ) -> Result<Self, CalcError> {
        Self::new(
            VectorField::from_components(domain, vec)?,
            KForm::one_form(domain, covec)?,
        )
    }

    pub fn domain(&self) -> Domain {
        self.vf.domain()
    }

    pub fn vector(&self) -> &VectorField {
        &self.vf
    }

    pub fn covector(&self) -> &KForm {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.vf.is_zero() && self.form.is_zero()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CalcError> {
        Ok(Self {
            vf: self.vf.try_add(&other.vf)?,
            form: self.form.try_add(&other.form)?,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            vf: self.vf.neg(),
            form: self.form.neg(),
        }
    }

    pub fn scale_field(&self, f: &ScalarField) -> Self {
        Self {
            vf: self.vf.scale_field(f),
            form: self.form.scale_field(f),
        }
    }

    /// The `2n` coefficient values at a point: vector components then
    /// covector components.
    pub fn component_values(&self, point: &[f64]) -> Vec<f64> {
        let mut out = self.vf.component_values(point);
        out.extend(self.form.component_values(point));
        out
    }
}

/// The Courant bracket
/// `[X + ξ, Y + η] = [X, Y] + ℒ_X η − ℒ_Y ξ − ½ d(ι_X η − ι_Y ξ)`.
pub fn courant_bracket(a: &GSection, b: &GSection) -> Result<GSection, CalcError> {
    if a.domain() != b.domain() {
        return Err(CalcError::DomainMismatch);
    }
    let vf = a.vf.lie_bracket(&b.vf)?;
    let lie_part = a.form.lie(&b.vf)?.neg().try_add(&b.form.lie(&a.vf)?)?;
    let inner = b.form.interior(&a.vf)?.try_sub(&a.form.interior(&b.vf)?)?;
    let correction = inner.d().scale(&rat(-1, 2));
    GSection::new(vf, lie_part.try_add(&correction)?)
}

/// The pointwise split pairing `⟨X + ξ, Y + η⟩ = ½(η(X) + ξ(Y))` as a scalar
/// field.
pub fn pairing_field(a: &GSection, b: &GSection) -> Result<ScalarField, CalcError> {
    if a.domain() != b.domain() {
        return Err(CalcError::DomainMismatch);
    }
    let s = &b.form.apply1(&a.vf)? + &a.form.apply1(&b.vf)?;
    Ok(s.scale(&rat(1, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn aff(n: usize) -> Domain {
        Domain::affine(n)
    }

    fn coord(d: Domain, i: usize) -> ScalarField {
        ScalarField::coordinate(d, i).unwrap()
    }

    fn dxi(d: Domain, i: usize) -> KForm {
        KForm::from_components(d, 1, vec![(vec![i], ScalarField::one(d))]).unwrap()
    }

    #[test]
    fn lie_bracket_example() {
        // [∂x, x∂y] = ∂y
        let d2 = aff(2);
        let x = VectorField::coordinate_field(d2, 0).unwrap();
        let xdy = VectorField::from_components(
            d2,
            vec![ScalarField::zero(d2), coord(d2, 0)],
        )
        .unwrap();
        let expected = VectorField::coordinate_field(d2, 1).unwrap();
        assert_eq!(x.lie_bracket(&xdy).unwrap(), expected);
        // antisymmetry
        assert_eq!(xdy.lie_bracket(&x).unwrap(), expected.neg());
    }

    #[test]
    fn jacobi_identity_on_polynomial_fields() {
        let d2 = aff(2);
        let x = VectorField::from_components(d2, vec![coord(d2, 1), coord(d2, 0)]).unwrap();
        let y = VectorField::from_components(
            d2,
            vec![&coord(d2, 0) * &coord(d2, 0), ScalarField::one(d2)],
        )
        .unwrap();
        let z = VectorField::from_components(d2, vec![ScalarField::one(d2), coord(d2, 1)]).unwrap();
        let jac = x
            .lie_bracket(&y.lie_bracket(&z).unwrap())
            .unwrap()
            .try_add(&y.lie_bracket(&z.lie_bracket(&x).unwrap()).unwrap())
            .unwrap()
            .try_add(&z.lie_bracket(&x.lie_bracket(&y).unwrap()).unwrap())
            .unwrap();
        assert!(jac.is_zero());
    }

    #[test]
    fn courant_bracket_worked_example() {
        // [∂x + 0, 0 + x dy] = 0 + dy
        let d2 = aff(2);
        let a = GSection::from_vector(VectorField::coordinate_field(d2, 0).unwrap());
        let b = GSection::from_form(dxi(d2, 1).scale_field(&coord(d2, 0))).unwrap();
        let got = courant_bracket(&a, &b).unwrap();
        assert!(got.vector().is_zero());
        assert_eq!(got.covector(), &dxi(d2, 1));
    }

    #[test]
    fn courant_bracket_restricts_to_lie() {
        let d2 = aff(2);
        let x = VectorField::from_components(d2, vec![coord(d2, 1), ScalarField::one(d2)]).unwrap();
        let y = VectorField::from_components(d2, vec![ScalarField::one(d2), coord(d2, 0)]).unwrap();
        let got = courant_bracket(&GSection::from_vector(x.clone()), &GSection::from_vector(y.clone()))
            .unwrap();
        assert_eq!(got.vector(), &x.lie_bracket(&y).unwrap());
        assert!(got.covector().is_zero());
    }

    #[test]
    fn courant_bracket_is_antisymmetric() {
        let d2 = aff(2);
        let s = GSection::from_components(
            d2,
            vec![coord(d2, 0), coord(d2, 1)],
            vec![&coord(d2, 0) * &coord(d2, 1), ScalarField::one(d2)],
        )
        .unwrap();
        let t = GSection::from_components(
            d2,
            vec![ScalarField::one(d2), coord(d2, 0)],
            vec![coord(d2, 1), coord(d2, 0)],
        )
        .unwrap();
        let ab = courant_bracket(&s, &t).unwrap();
        let ba = courant_bracket(&t, &s).unwrap();
        assert_eq!(ab, ba.neg());
        assert!(courant_bracket(&s, &s).unwrap().is_zero());
    }

    #[test]
    fn pairing_field_examples() {
        let d2 = aff(2);
        // ⟨∂x + dy, ∂y + dx⟩ = 1
        let a = GSection::new(VectorField::coordinate_field(d2, 0).unwrap(), dxi(d2, 1)).unwrap();
        let b = GSection::new(VectorField::coordinate_field(d2, 1).unwrap(), dxi(d2, 0)).unwrap();
        assert_eq!(pairing_field(&a, &b).unwrap(), ScalarField::one(d2));
        // ⟨∂x + x dx, ∂x + 0⟩ = ½·(x dx)(∂x) = x/2
        let c = GSection::new(
            VectorField::coordinate_field(d2, 0).unwrap(),
            dxi(d2, 0).scale_field(&coord(d2, 0)),
        )
        .unwrap();
        let e = GSection::from_vector(VectorField::coordinate_field(d2, 0).unwrap());
        assert_eq!(
            pairing_field(&c, &e).unwrap(),
            coord(d2, 0).scale(&crate::rat::rat(1, 2))
        );
        // ⟨∂x + dy, ∂x + dy⟩ = dy(∂x) = 0
        assert!(pairing_field(&a, &a).unwrap().is_zero());
        let _ = rat_int(0);
    }
}

//! Foliated exterior calculus along a distribution.
//!
//! A [`Distribution`] is a frame of spanning vector fields with a declared
//! constant rank. Involutivity is decided symbolically: each Lie bracket of
//! frame fields must be a coefficient-ring combination of the frame, and the
//! coefficients are recovered exactly by Cramer's rule plus exact division in
//! the ring. The foliated exterior derivative is the Cartan formula written
//! against the frame.

use super::form::index_tuples;
use super::scalar::{Domain, ScalarField};
use super::vector::VectorField;
use super::CalcError;
use std::collections::BTreeMap;

/// A constant-rank distribution presented by spanning vector fields, one per
/// rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    domain: Domain,
    fields: Vec<VectorField>,
}

/// Determinant of a small matrix of scalar fields, by cofactor expansion.
pub(crate) fn symbolic_det(m: &[Vec<ScalarField>], domain: Domain) -> ScalarField {
    let n = m.len();
    match n {
        0 => ScalarField::one(domain),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = ScalarField::zero(domain);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<ScalarField>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, f)| f.clone())
                            .collect()
                    })
                    .collect();
                let cof = &m[0][j] * &symbolic_det(&minor, domain);
                acc = if j % 2 == 0 { &acc + &cof } else { &acc - &cof };
            }
            acc
        }
    }
}

impl Distribution {
    /// Builds a distribution from `rank` spanning fields. Pointwise rank is
    /// the caller's assertion; it is re-checked wherever the distribution is
    /// numerically evaluated.
    pub fn new(fields: Vec<VectorField>) -> Result<Self, CalcError> {
        let Some(first) = fields.first() else {
            return Err(CalcError::EmptyFrame);
        };
        let domain = first.domain();
        if fields.iter().any(|f| f.domain() != domain) {
            return Err(CalcError::DomainMismatch);
        }
        if fields.len() > domain.dim {
            return Err(CalcError::RankExceedsDimension {
                rank: fields.len(),
                dim: domain.dim,
            });
        }
        Ok(Self { domain, fields })
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn rank(&self) -> usize {
        self.fields.len()
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    /// Is `f` constant on the leaves: `X(f) = 0` for every spanning field?
    pub fn is_admissible(&self, f: &ScalarField) -> Result<bool, CalcError> {
        for x in &self.fields {
            if !x.derive(f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Expresses `target = Σ cₖ · fieldₖ` with coefficients in the ring, or
    /// fails. Uniqueness comes from the frame's generic rank; inconsistency or
    /// non-ring coefficients surface as `None`.
    fn solve_in_frame(&self, target: &VectorField) -> Option<Vec<ScalarField>> {
        let r = self.rank();
        let n = self.domain.dim;
        if target.is_zero() {
            return Some(vec![ScalarField::zero(self.domain); r]);
        }
        // component matrix: rows indexed by ambient axis, columns by frame
        let column = |k: usize| -> Vec<ScalarField> {
            (0..n).map(|i| self.fields[k].component(i).clone()).collect()
        };
        let cols: Vec<Vec<ScalarField>> = (0..r).map(column).collect();
        // pick r rows with symbolically invertible minor
        for rows in index_tuples(n, r) {
            let minor: Vec<Vec<ScalarField>> = rows
                .iter()
                .map(|&i| (0..r).map(|k| cols[k][i].clone()).collect())
                .collect();
            let den = symbolic_det(&minor, self.domain);
            if den.is_zero() {
                continue;
            }
            // Cramer: c_k = det(minor with column k replaced by target) / den
            let mut coeffs = Vec::with_capacity(r);
            for k in 0..r {
                let mut replaced = minor.clone();
                for (row_pos, &i) in rows.iter().enumerate() {
                    replaced[row_pos][k] = target.component(i).clone();
                }
                let num = symbolic_det(&replaced, self.domain);
                coeffs.push(num.exact_div(&den)?);
            }
            // verify the remaining rows
            let mut residual = target.clone();
            for (k, c) in coeffs.iter().enumerate() {
                residual = residual
                    .try_add(&self.fields[k].scale_field(c).neg())
                    .expect("same domain");
            }
            if residual.is_zero() {
                return Some(coeffs);
            }
            return None;
        }
        // no nonzero minor: the frame is rank-deficient as declared
        None
    }

    /// The structure coefficients `c` with `[Vᵢ, Vⱼ] = Σ c[i][j][k] · Vₖ`;
    /// errors when a bracket leaves the frame's span over the ring.
    pub fn bracket_coefficients(&self) -> Result<Vec<Vec<Vec<ScalarField>>>, CalcError> {
        let r = self.rank();
        let zero_row = || vec![ScalarField::zero(self.domain); r];
        let mut out = vec![vec![zero_row(); r]; r];
        for i in 0..r {
            for j in (i + 1)..r {
                let bracket = self.fields[i].lie_bracket(&self.fields[j])?;
                let coeffs = self
                    .solve_in_frame(&bracket)
                    .ok_or(CalcError::NonInvolutive { i, j })?;
                for k in 0..r {
                    out[i][j][k] = coeffs[k].clone();
                    out[j][i][k] = coeffs[k].neg();
                }
            }
        }
        Ok(out)
    }

    /// Involutivity check: every bracket of spanning fields stays in the
    /// frame's span over the coefficient ring.
    pub fn is_involutive(&self) -> bool {
        self.bracket_coefficients().is_ok()
    }
}

/// A form along a distribution, with coefficients indexed by strictly
/// increasing tuples of frame indices.
#[derive(Debug, Clone, PartialEq)]
pub struct FoliatedForm {
    domain: Domain,
    rank: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, ScalarField>,
}

impl FoliatedForm {
    pub fn zero(domain: Domain, rank: usize, degree: usize) -> Self {
        Self {
            domain,
            rank,
            degree,
            comps: BTreeMap::new(),
        }
    }

    pub fn from_scalar(rank: usize, f: ScalarField) -> Self {
        let mut form = Self::zero(f.domain(), rank, 0);
        if !f.is_zero() {
            form.comps.insert(Vec::new(), f);
        }
        form
    }

    pub fn from_components(
        domain: Domain,
        rank: usize,
        degree: usize,
        comps: Vec<(Vec<usize>, ScalarField)>,
    ) -> Result<Self, CalcError> {
        let mut form = Self::zero(domain, rank, degree);
        for (idx, f) in comps {
            if idx.len() != degree {
                return Err(CalcError::DegreeMismatch {
                    expected: degree,
                    got: idx.len(),
                });
            }
            if idx.iter().any(|&i| i >= rank) {
                return Err(CalcError::AxisOutOfRange {
                    axis: *idx.iter().max().unwrap(),
                    dim: rank,
                });
            }
            if f.domain() != domain {
                return Err(CalcError::DomainMismatch);
            }
            form.add_term(&idx, f);
        }
        Ok(form)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn coeff(&self, idx: &[usize]) -> ScalarField {
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| ScalarField::zero(self.domain))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &ScalarField)> {
        self.comps.iter()
    }

    fn add_term(&mut self, idx: &[usize], f: ScalarField) {
        if f.is_zero() {
            return;
        }
        let mut sorted = idx.to_vec();
        let mut flips = 0;
        for i in 1..sorted.len() {
            let mut j = i;
            while j > 0 && sorted[j - 1] > sorted[j] {
                sorted.swap(j - 1, j);
                flips += 1;
                j -= 1;
            }
        }
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return;
        }
        let f = if flips % 2 == 1 { f.neg() } else { f };
        match self.comps.get_mut(&sorted) {
            Some(existing) => {
                let sum = &*existing + &f;
                if sum.is_zero() {
                    self.comps.remove(&sorted);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.comps.insert(sorted, f);
            }
        }
    }
}

/// The foliated exterior derivative along `dist`, by the Cartan formula
/// against the spanning frame. Requires the distribution to be involutive;
/// the structure coefficients feed the bracket terms.
pub fn foliated_d(dist: &Distribution, omega: &FoliatedForm) -> Result<FoliatedForm, CalcError> {
    if omega.domain != dist.domain() {
        return Err(CalcError::DomainMismatch);
    }
    if omega.rank != dist.rank() {
        return Err(CalcError::DegreeMismatch {
            expected: dist.rank(),
            got: omega.rank,
        });
    }
    let coeffs = dist.bracket_coefficients()?;
    let r = dist.rank();
    let k = omega.degree;
    let mut out = FoliatedForm::zero(omega.domain, r, k + 1);
    if k >= r {
        // top degree along the leaves
        return Ok(out);
    }
    for tuple in index_tuples(r, k + 1) {
        let mut total = ScalarField::zero(omega.domain);
        // Σ (−1)^p V_{tuple[p]}( ω(…tuple minus p…) )
        for (p, &vp) in tuple.iter().enumerate() {
            let mut rest = tuple.clone();
            rest.remove(p);
            let c = omega.coeff(&rest);
            if c.is_zero() {
                continue;
            }
            let term = dist.fields()[vp].derive(&c)?;
            total = if p % 2 == 0 {
                &total + &term
            } else {
                &total - &term
            };
        }
        // Σ_{p<q} (−1)^{p+q} ω([V_p, V_q], …rest…)
        for p in 0..tuple.len() {
            for q in (p + 1)..tuple.len() {
                let mut rest = tuple.clone();
                rest.remove(q);
                rest.remove(p);
                let mut bracket_term = ScalarField::zero(omega.domain);
                for (m, c) in coeffs[tuple[p]][tuple[q]].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    // ω(V_m, rest…) with sign from sorting m into rest
                    let mut idx = vec![m];
                    idx.extend(&rest);
                    let mut sorted = idx.clone();
                    let mut flips = 0;
                    for i in 1..sorted.len() {
                        let mut j = i;
                        while j > 0 && sorted[j - 1] > sorted[j] {
                            sorted.swap(j - 1, j);
                            flips += 1;
                            j -= 1;
                        }
                    }
                    if sorted.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    let mut val = &omega.coeff(&sorted) * c;
                    if flips % 2 == 1 {
                        val = val.neg();
                    }
                    bracket_term = &bracket_term + &val;
                }
                if (p + q) % 2 == 1 {
                    bracket_term = bracket_term.neg();
                }
                total = &total + &bracket_term;
            }
        }
        out.add_term(&tuple, total);
    }
    Ok(out)
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

    fn coord_field(d: Domain, i: usize) -> VectorField {
        VectorField::coordinate_field(d, i).unwrap()
    }

    fn xy_plane(d: Domain) -> Distribution {
        Distribution::new(vec![coord_field(d, 0), coord_field(d, 1)]).unwrap()
    }

    #[test]
    fn admissible_functions() {
        let d3 = aff(3);
        let dist = xy_plane(d3);
        assert!(dist.is_admissible(&coord(d3, 2)).unwrap());
        assert!(!dist.is_admissible(&coord(d3, 0)).unwrap());
        let zline = Distribution::new(vec![coord_field(d3, 2)]).unwrap();
        let f = &coord(d3, 0) * &coord(d3, 1);
        assert!(zline.is_admissible(&f).unwrap());
    }

    #[test]
    fn foliated_derivative_of_admissible_function_vanishes() {
        let d3 = aff(3);
        let dist = xy_plane(d3);
        let f = FoliatedForm::from_scalar(2, coord(d3, 2));
        assert!(foliated_d(&dist, &f).unwrap().is_zero());
    }

    #[test]
    fn foliated_top_degree_vanishes() {
        let d3 = aff(3);
        let dist = xy_plane(d3);
        let omega =
            FoliatedForm::from_components(d3, 2, 2, vec![(vec![0, 1], coord(d3, 0))]).unwrap();
        let dd = foliated_d(&dist, &omega).unwrap();
        assert!(dd.is_zero());
        assert_eq!(dd.degree(), 3);
    }

    #[test]
    fn foliated_cartan_formula_example() {
        // D = span{∂x, ∂y}, ω = y·(frame dx): d_D ω = −(frame dx∧dy)
        let d3 = aff(3);
        let dist = xy_plane(d3);
        let omega =
            FoliatedForm::from_components(d3, 2, 1, vec![(vec![0], coord(d3, 1))]).unwrap();
        let got = foliated_d(&dist, &omega).unwrap();
        let expected = FoliatedForm::from_components(
            d3,
            2,
            2,
            vec![(vec![0, 1], ScalarField::one(d3).neg())],
        )
        .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn involutive_frame_with_function_coefficients() {
        // span{∂x, x∂x + ∂y} closes: [∂x, x∂x + ∂y] = ∂x
        let d2 = aff(2);
        let v = VectorField::from_components(d2, vec![coord(d2, 0), ScalarField::one(d2)]).unwrap();
        let dist = Distribution::new(vec![coord_field(d2, 0), v]).unwrap();
        let c = dist.bracket_coefficients().unwrap();
        assert_eq!(c[0][1][0], ScalarField::one(d2));
        assert!(c[0][1][1].is_zero());
    }

    #[test]
    fn non_involutive_is_an_error() {
        // [∂x, x∂y] = ∂y needs coefficient 1/x: not in the ring
        let d2 = aff(2);
        let xdy = VectorField::from_components(d2, vec![ScalarField::zero(d2), coord(d2, 0)])
            .unwrap();
        let dist = Distribution::new(vec![coord_field(d2, 0), xdy]).unwrap();
        assert!(matches!(
            dist.bracket_coefficients(),
            Err(CalcError::NonInvolutive { i: 0, j: 1 })
        ));
        assert!(!dist.is_involutive());
    }

    #[test]
    fn rank_one_distributions_are_involutive() {
        let d2 = aff(2);
        let v = VectorField::from_components(d2, vec![coord(d2, 1), coord(d2, 0)]).unwrap();
        let dist = Distribution::new(vec![v]).unwrap();
        assert!(dist.is_involutive());
    }

    #[test]
    fn foliated_d_squared_vanishes_on_involutive_frames() {
        let d3 = aff(3);
        // a non-coordinate but involutive frame
        let v1 = coord_field(d3, 0);
        let v2 = VectorField::from_components(
            d3,
            vec![coord(d3, 0), ScalarField::one(d3), ScalarField::zero(d3)],
        )
        .unwrap();
        let dist = Distribution::new(vec![v1, v2]).unwrap();
        let omega = FoliatedForm::from_components(
            d3,
            2,
            1,
            vec![
                (vec![0], &coord(d3, 1) * &coord(d3, 2)),
                (vec![1], &coord(d3, 0) * &coord(d3, 0)),
            ],
        )
        .unwrap();
        let dd = foliated_d(&dist, &foliated_d(&dist, &omega).unwrap()).unwrap();
        assert!(dd.is_zero(), "d_D² ω = {dd:?}");
        let _ = rat_int(0);
    }
}

//! Differential forms with [`ScalarField`] coefficients.
//!
//! A `k`-form stores one coefficient per strictly increasing index tuple;
//! signed lookups and insertions handle the reordering arithmetic.

use std::collections::BTreeMap;

use super::scalar::{Domain, ScalarField};
use super::vector::VectorField;
use super::CalcError;
use crate::rat::rat;

#[derive(Debug, Clone, PartialEq)]
pub struct KForm {
    domain: Domain,
    degree: usize,
    comps: BTreeMap<Vec<usize>, ScalarField>,
}

/// Sorts indices, returning the permutation sign, or `None` on repeats.
fn sort_signed(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut sorted = indices.to_vec();
    let mut flips = 0;
    // insertion sort, counting inversions
    for i in 1..sorted.len() {
        let mut j = i;
        while j > 0 && sorted[j - 1] > sorted[j] {
            sorted.swap(j - 1, j);
            flips += 1;
            j -= 1;
        }
    }
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sorted, flips % 2 == 1))
}

impl KForm {
    pub fn zero(domain: Domain, degree: usize) -> Self {
        Self {
            domain,
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// A 0-form from a scalar.
    pub fn from_scalar(f: ScalarField) -> Self {
        let mut form = Self::zero(f.domain(), 0);
        form.add_term(&[], f);
        form
    }

    /// Builds a form from (index tuple, coefficient) pairs; tuples may come
    /// in any order and are canonicalized with signs.
    pub fn from_components(
        domain: Domain,
        degree: usize,
        comps: Vec<(Vec<usize>, ScalarField)>,
    ) -> Result<Self, CalcError> {
        let mut form = Self::zero(domain, degree);
        for (idx, f) in comps {
            if idx.len() != degree {
                return Err(CalcError::DegreeMismatch {
                    expected: degree,
                    got: idx.len(),
                });
            }
            if idx.iter().any(|&i| i >= domain.dim) {
                return Err(CalcError::AxisOutOfRange {
                    axis: *idx.iter().max().unwrap(),
                    dim: domain.dim,
                });
            }
            if f.domain() != domain {
                return Err(CalcError::DomainMismatch);
            }
            form.add_term(&idx, f);
        }
        Ok(form)
    }

    /// The covector `Σ fᵢ dxᵢ`.
    pub fn one_form(domain: Domain, comps: Vec<ScalarField>) -> Result<Self, CalcError> {
        if comps.len() != domain.dim {
            return Err(CalcError::DegreeMismatch {
                expected: domain.dim,
                got: comps.len(),
            });
        }
        Self::from_components(
            domain,
            1,
            comps.into_iter().enumerate().map(|(i, f)| (vec![i], f)).collect(),
        )
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Coefficient at a strictly increasing index tuple.
    pub fn coeff(&self, idx: &[usize]) -> ScalarField {
        debug_assert!(idx.windows(2).all(|w| w[0] < w[1]));
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| ScalarField::zero(self.domain))
    }

    /// Coefficient at an arbitrary index tuple, with the permutation sign;
    /// zero on repeated indices.
    pub fn coeff_signed(&self, idx: &[usize]) -> ScalarField {
        match sort_signed(idx) {
            None => ScalarField::zero(self.domain),
            Some((sorted, flip)) => {
                let c = self.coeff(&sorted);
                if flip {
                    c.neg()
                } else {
                    c
                }
            }
        }
    }

    /// Iterate over (indices, coefficient) pairs.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &ScalarField)> {
        self.comps.iter()
    }

    fn add_term(&mut self, idx: &[usize], f: ScalarField) {
        if f.is_zero() {
            return;
        }
        let Some((sorted, flip)) = sort_signed(idx) else {
            return;
        };
        let f = if flip { f.neg() } else { f };
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

    pub fn try_add(&self, other: &Self) -> Result<Self, CalcError> {
        if self.domain != other.domain {
            return Err(CalcError::DomainMismatch);
        }
        if self.degree != other.degree {
            return Err(CalcError::DegreeMismatch {
                expected: self.degree,
                got: other.degree,
            });
        }
        let mut out = self.clone();
        for (idx, f) in &other.comps {
            out.add_term(idx, f.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Self {
            domain: self.domain,
            degree: self.degree,
            comps: self
                .comps
                .iter()
                .map(|(k, f)| (k.clone(), f.neg()))
                .collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CalcError> {
        self.try_add(&other.neg())
    }

    /// Multiplication by a scalar field.
    pub fn scale_field(&self, f: &ScalarField) -> Self {
        let mut out = Self::zero(self.domain, self.degree);
        for (idx, c) in &self.comps {
            out.add_term(idx, c * f);
        }
        out
    }

    pub fn scale(&self, r: &crate::rat::Rat) -> Self {
        let mut out = Self::zero(self.domain, self.degree);
        for (idx, c) in &self.comps {
            out.add_term(idx, c.scale(r));
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self, CalcError> {
        if self.domain != other.domain {
            return Err(CalcError::DomainMismatch);
        }
        let mut out = Self::zero(self.domain, self.degree + other.degree);
        for (i, f) in &self.comps {
            for (j, g) in &other.comps {
                let mut idx = i.clone();
                idx.extend(j);
                out.add_term(&idx, f * g);
            }
        }
        Ok(out)
    }

    /// Exterior derivative. Top-degree input yields the zero form of the
    /// next degree.
    pub fn d(&self) -> Self {
        let mut out = Self::zero(self.domain, self.degree + 1);
        for (idx, f) in &self.comps {
            for axis in 0..self.domain.dim {
                let df = f.partial(axis);
                if df.is_zero() {
                    continue;
                }
                let mut widx = vec![axis];
                widx.extend(idx);
                out.add_term(&widx, df);
            }
        }
        out
    }

    /// Interior product `ι_X ω`.
    pub fn interior(&self, x: &VectorField) -> Result<Self, CalcError> {
        if x.domain() != self.domain {
            return Err(CalcError::DomainMismatch);
        }
        let mut out = Self::zero(self.domain, self.degree.saturating_sub(1));
        if self.degree == 0 {
            return Ok(out);
        }
        for (idx, f) in &self.comps {
            for (pos, &i) in idx.iter().enumerate() {
                let xi = x.component(i);
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let mut c = f * xi;
                if pos % 2 == 1 {
                    c = c.neg();
                }
                out.add_term(&rest, c);
            }
        }
        Ok(out)
    }

    /// Lie derivative via the homotopy formula `ℒ_X = d ι_X + ι_X d`.
    pub fn lie(&self, x: &VectorField) -> Result<Self, CalcError> {
        let a = self.interior(x)?.d();
        let b = self.d().interior(x)?;
        a.try_add(&b)
    }

    /// Full evaluation `ω(X₁, …, X_k)` by folding interior products.
    pub fn apply(&self, fields: &[&VectorField]) -> Result<ScalarField, CalcError> {
        if fields.len() != self.degree {
            return Err(CalcError::DegreeMismatch {
                expected: self.degree,
                got: fields.len(),
            });
        }
        let mut cur = self.clone();
        for x in fields {
            cur = cur.interior(x)?;
        }
        Ok(cur.coeff(&[]))
    }

    /// Evaluation of a 1-form on a vector field.
    pub fn apply1(&self, x: &VectorField) -> Result<ScalarField, CalcError> {
        self.apply(&[x])
    }

    /// Numeric coefficient vector at a point, ordered by increasing index
    /// tuples over the full degree range. For 1-forms this is the covector.
    pub fn component_values(&self, point: &[f64]) -> Vec<f64> {
        index_tuples(self.domain.dim, self.degree)
            .into_iter()
            .map(|idx| self.coeff(&idx).evaluate(point))
            .collect()
    }

    /// `−½` scaling shortcut used by the Courant bracket.
    pub fn half(&self) -> Self {
        self.scale(&rat(1, 2))
    }
}

/// All strictly increasing `k`-tuples in `0..dim`, in lexicographic order.
pub fn index_tuples(dim: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, dim: usize, k: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(prefix.clone());
            return;
        }
        for i in start..dim {
            prefix.push(i);
            rec(i + 1, dim, k - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, dim, k, &mut Vec::new(), &mut out);
    out
}

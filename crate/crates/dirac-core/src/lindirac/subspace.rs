//! Elements and subspaces of `V ⊕ V*`.
//!
//! Every subspace lives in the full ambient space of dimension `2n`, with the
//! first `n` coordinates spanning `V` and the last `n` spanning `V*`.
//! Subspaces of `V` or of `V*` alone are the ones whose basis rows vanish on
//! the other factor. The basis matrix is always the reduced row-echelon
//! representative, so two subspaces are equal iff their representations are.

use num_traits::Zero;

use super::matrix::{self, Mat};
use super::LinError;
use crate::rat::{fmt_rat, rat_int, Rat};

/// Label bookkeeping for `V ⊕ V*`: coordinates are `∂x, ∂y, ∂z` (or `∂x1…`)
/// on the tangent side and `dx, dy, dz` (or `dx1…`) on the cotangent side,
/// paired so that `dxᵢ(∂xⱼ) = δᵢⱼ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairedSpace {
    dim: usize,
}

impl PairedSpace {
    pub fn new(dim: usize) -> Self {
        assert!(dim > 0, "paired space needs positive dimension");
        Self { dim }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ambient(&self) -> usize {
        2 * self.dim
    }

    fn coord_name(&self, i: usize) -> String {
        const XYZ: [&str; 3] = ["x", "y", "z"];
        if self.dim <= 3 {
            XYZ[i].to_string()
        } else {
            format!("x{}", i + 1)
        }
    }

    pub fn vector_label(&self, i: usize) -> String {
        format!("∂{}", self.coord_name(i))
    }

    pub fn covector_label(&self, i: usize) -> String {
        format!("d{}", self.coord_name(i))
    }
}

/// An element `v + ξ` of `V ⊕ V*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GVector {
    vec: Vec<Rat>,
    covec: Vec<Rat>,
}

impl GVector {
    pub fn new(vec: Vec<Rat>, covec: Vec<Rat>) -> Result<Self, LinError> {
        if vec.len() != covec.len() {
            return Err(LinError::DimensionMismatch {
                expected: vec.len(),
                got: covec.len(),
            });
        }
        Ok(Self { vec, covec })
    }

    /// `∂xᵢ`.
    pub fn basis_vector(n: usize, i: usize) -> Self {
        let mut vec = vec![Rat::zero(); n];
        vec[i] = rat_int(1);
        Self {
            vec,
            covec: vec![Rat::zero(); n],
        }
    }

    /// `dxᵢ`.
    pub fn basis_covector(n: usize, i: usize) -> Self {
        let mut covec = vec![Rat::zero(); n];
        covec[i] = rat_int(1);
        Self {
            vec: vec![Rat::zero(); n],
            covec,
        }
    }

    pub fn dim(&self) -> usize {
        self.vec.len()
    }

    pub fn vec_part(&self) -> &[Rat] {
        &self.vec
    }

    pub fn covec_part(&self) -> &[Rat] {
        &self.covec
    }

    pub fn from_row(row: &[Rat]) -> Self {
        let n = row.len() / 2;
        Self {
            vec: row[..n].to_vec(),
            covec: row[n..].to_vec(),
        }
    }

    pub fn to_row(&self) -> Vec<Rat> {
        let mut row = self.vec.clone();
        row.extend_from_slice(&self.covec);
        row
    }

    pub fn display(&self, space: &PairedSpace) -> String {
        let mut terms = Vec::new();
        for (i, c) in self.vec.iter().enumerate() {
            if !c.is_zero() {
                terms.push(term(c, &space.vector_label(i)));
            }
        }
        for (i, c) in self.covec.iter().enumerate() {
            if !c.is_zero() {
                terms.push(term(c, &space.covector_label(i)));
            }
        }
        join_terms(terms)
    }
}

fn term(c: &Rat, label: &str) -> String {
    if *c == rat_int(1) {
        label.to_string()
    } else if *c == rat_int(-1) {
        format!("-{label}")
    } else {
        format!("{}*{}", fmt_rat(c), label)
    }
}

fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = terms[0].clone();
    for t in &terms[1..] {
        if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(t);
        }
    }
    out
}

/// The split-signature pairing `⟨v + ξ, w + η⟩ = ½(ξ(w) + η(v))`.
pub fn pairing(x: &GVector, y: &GVector) -> Result<Rat, LinError> {
    if x.dim() != y.dim() {
        return Err(LinError::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    let s = matrix::dot(&x.covec, &y.vec) + matrix::dot(&y.covec, &x.vec);
    Ok(s / rat_int(2))
}

/// A linear subspace of `V ⊕ V*` in canonical (reduced row-echelon) form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Mat,
}

impl Subspace {
    /// Span of the given rows inside an ambient space of dimension `2n`.
    pub fn span(ambient: usize, rows: Vec<Vec<Rat>>) -> Result<Self, LinError> {
        if ambient == 0 || ambient % 2 != 0 {
            return Err(LinError::OddAmbient { got: ambient });
        }
        for row in &rows {
            if row.len() != ambient {
                return Err(LinError::DimensionMismatch {
                    expected: ambient,
                    got: row.len(),
                });
            }
        }
        let (basis, _) = matrix::rref(&rows);
        Ok(Self { ambient, basis })
    }

    pub fn span_gvectors(n: usize, gens: &[GVector]) -> Result<Self, LinError> {
        for g in gens {
            if g.dim() != n {
                return Err(LinError::DimensionMismatch {
                    expected: n,
                    got: g.dim(),
                });
            }
        }
        Self::span(2 * n, gens.iter().map(GVector::to_row).collect())
    }

    /// The zero subspace of `V ⊕ V*`.
    pub fn zero(n: usize) -> Self {
        Self {
            ambient: 2 * n,
            basis: Vec::new(),
        }
    }

    /// Rows living in the `V` factor, padded with zero covector parts.
    pub fn from_v_rows(n: usize, rows: Vec<Vec<Rat>>) -> Result<Self, LinError> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n {
                return Err(LinError::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            let mut row = r;
            row.extend(vec![Rat::zero(); n]);
            out.push(row);
        }
        Self::span(2 * n, out)
    }

    /// Rows living in the `V*` factor, padded with zero vector parts.
    pub fn from_vstar_rows(n: usize, rows: Vec<Vec<Rat>>) -> Result<Self, LinError> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != n {
                return Err(LinError::DimensionMismatch {
                    expected: n,
                    got: r.len(),
                });
            }
            let mut row = vec![Rat::zero(); n];
            row.extend(r);
            out.push(row);
        }
        Self::span(2 * n, out)
    }

    /// The full `V` factor.
    pub fn v_factor(n: usize) -> Self {
        Self::from_v_rows(n, matrix::identity(n)).expect("identity rows")
    }

    /// The full `V*` factor.
    pub fn vstar_factor(n: usize) -> Self {
        Self::from_vstar_rows(n, matrix::identity(n)).expect("identity rows")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Dimension `n` of the underlying space `V`.
    pub fn half_dim(&self) -> usize {
        self.ambient / 2
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_gvectors(&self) -> Vec<GVector> {
        self.basis.iter().map(|r| GVector::from_row(r)).collect()
    }

    pub fn contains(&self, x: &GVector) -> bool {
        x.dim() == self.half_dim()
            && matrix::solve_combination(&self.basis, &x.to_row()).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient == self.ambient
            && other
                .basis
                .iter()
                .all(|row| matrix::solve_combination(&self.basis, row).is_some())
    }

    /// Does every basis row vanish on the `V*` factor?
    pub fn is_in_v(&self) -> bool {
        let n = self.half_dim();
        self.basis.iter().all(|r| r[n..].iter().all(Rat::is_zero))
    }

    /// Does every basis row vanish on the `V` factor?
    pub fn is_in_vstar(&self) -> bool {
        let n = self.half_dim();
        self.basis.iter().all(|r| r[..n].iter().all(Rat::is_zero))
    }

    /// The `V`-parts of the basis rows as a `k × n` matrix.
    pub fn v_block(&self) -> Mat {
        let n = self.half_dim();
        self.basis.iter().map(|r| r[..n].to_vec()).collect()
    }

    /// The `V*`-parts of the basis rows as a `k × n` matrix.
    pub fn vstar_block(&self) -> Mat {
        let n = self.half_dim();
        self.basis.iter().map(|r| r[n..].to_vec()).collect()
    }

    /// Projection to the `V` factor, returned as a subspace of `V`.
    pub fn project_v(&self) -> Subspace {
        Subspace::from_v_rows(self.half_dim(), self.v_block()).expect("projection rows")
    }

    /// Projection to the `V*` factor, returned as a subspace of `V*`.
    pub fn project_vstar(&self) -> Subspace {
        Subspace::from_vstar_rows(self.half_dim(), self.vstar_block()).expect("projection rows")
    }

    /// Intersection with the `V` factor.
    pub fn meet_v(&self) -> Subspace {
        // Combinations whose covector part cancels; their vector parts span
        // the intersection.
        let combos = matrix::kernel(&matrix::transpose(&self.vstar_block()), self.dim());
        let rows = combos
            .iter()
            .map(|c| matrix::mat_vec(&matrix::transpose(&self.v_block()), c))
            .collect();
        Subspace::from_v_rows(self.half_dim(), rows).expect("intersection rows")
    }

    /// Intersection with the `V*` factor.
    pub fn meet_vstar(&self) -> Subspace {
        let combos = matrix::kernel(&matrix::transpose(&self.v_block()), self.dim());
        let rows = combos
            .iter()
            .map(|c| matrix::mat_vec(&matrix::transpose(&self.vstar_block()), c))
            .collect();
        Subspace::from_vstar_rows(self.half_dim(), rows).expect("intersection rows")
    }

    /// Sum of two subspaces of the same ambient space.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        if self.ambient != other.ambient {
            return Err(LinError::DimensionMismatch {
                expected: self.ambient,
                got: other.ambient,
            });
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.clone());
        Subspace::span(self.ambient, rows)
    }
}

/// `Ann(S) = {ξ ∈ V* : ξ(s) = 0 for all s ∈ S}` for a subspace `S ⊆ V`.
pub fn annihilator(s: &Subspace) -> Result<Subspace, LinError> {
    if !s.is_in_v() {
        return Err(LinError::NotInV);
    }
    let rows = matrix::kernel(&s.v_block(), s.half_dim());
    Subspace::from_vstar_rows(s.half_dim(), rows)
}

/// `{v ∈ V : ξ(v) = 0 for all ξ ∈ S}` for a subspace `S ⊆ V*`.
pub fn coannihilator(s: &Subspace) -> Result<Subspace, LinError> {
    if !s.is_in_vstar() {
        return Err(LinError::NotInVStar);
    }
    let rows = matrix::kernel(&s.vstar_block(), s.half_dim());
    Subspace::from_v_rows(s.half_dim(), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn gv(_n: usize, vec: &[i64], covec: &[i64]) -> GVector {
        GVector::new(
            vec.iter().map(|&x| rat_int(x)).collect(),
            covec.iter().map(|&x| rat_int(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn pairing_examples() {
        // ⟨∂x + dy, ∂y + dx⟩ = 1
        let x = gv(2, &[1, 0], &[0, 1]);
        let y = gv(2, &[0, 1], &[1, 0]);
        assert_eq!(pairing(&x, &y).unwrap(), rat_int(1));
        // ⟨∂x, ∂y⟩ = 0: V is isotropic
        let a = GVector::basis_vector(2, 0);
        let b = GVector::basis_vector(2, 1);
        assert_eq!(pairing(&a, &b).unwrap(), rat_int(0));
        // ⟨∂x + dx, ∂x + dx⟩ = 1
        let c = gv(2, &[1, 0], &[1, 0]);
        assert_eq!(pairing(&c, &c).unwrap(), rat_int(1));
    }

    #[test]
    fn pairing_is_symmetric_and_checks_dims() {
        let x = gv(2, &[2, 3], &[5, 7]);
        let y = gv(2, &[-1, 4], &[2, -2]);
        assert_eq!(pairing(&x, &y).unwrap(), pairing(&y, &x).unwrap());
        let z = GVector::basis_vector(3, 0);
        assert!(matches!(
            pairing(&x, &z),
            Err(LinError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn annihilator_examples() {
        // Ann(span{∂x}) = span{dy} in dim 2
        let s = Subspace::from_v_rows(2, vec![vec![rat_int(1), rat_int(0)]]).unwrap();
        let ann = annihilator(&s).unwrap();
        assert_eq!(
            ann,
            Subspace::from_vstar_rows(2, vec![vec![rat_int(0), rat_int(1)]]).unwrap()
        );
        // Ann(0) = V*
        assert_eq!(
            annihilator(&Subspace::zero(2)).unwrap(),
            Subspace::vstar_factor(2)
        );
        // Ann(V) = 0
        assert_eq!(
            annihilator(&Subspace::v_factor(2)).unwrap(),
            Subspace::zero(2)
        );
    }

    #[test]
    fn annihilator_rejects_mixed_subspaces() {
        let s = Subspace::span_gvectors(2, &[gv(2, &[1, 0], &[1, 0])]).unwrap();
        assert!(matches!(annihilator(&s), Err(LinError::NotInV)));
    }

    #[test]
    fn subspace_equality_is_canonical() {
        let a = Subspace::span_gvectors(2, &[gv(2, &[1, 1], &[0, 0]), gv(2, &[0, 2], &[0, 0])])
            .unwrap();
        let b = Subspace::v_factor(2);
        assert_eq!(a, b);
    }

    #[test]
    fn meets_and_projections() {
        // L = span{∂x, dy}: meet_v = span{∂x}, meet_vstar = span{dy}
        let l = Subspace::span_gvectors(2, &[gv(2, &[1, 0], &[0, 0]), gv(2, &[0, 0], &[0, 1])])
            .unwrap();
        assert_eq!(
            l.meet_v(),
            Subspace::from_v_rows(2, vec![vec![rat_int(1), rat_int(0)]]).unwrap()
        );
        assert_eq!(
            l.meet_vstar(),
            Subspace::from_vstar_rows(2, vec![vec![rat_int(0), rat_int(1)]]).unwrap()
        );
        assert_eq!(l.project_v().dim(), 1);
        assert_eq!(l.project_vstar().dim(), 1);
    }

    #[test]
    fn gvector_display_is_readable() {
        let space = PairedSpace::new(2);
        let x = GVector::new(vec![rat(1, 1), rat(0, 1)], vec![rat(-3, 2), rat(0, 1)]).unwrap();
        assert_eq!(x.display(&space), "∂x - 3/2*dx");
    }
}

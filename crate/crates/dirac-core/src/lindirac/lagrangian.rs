//! Lagrangian subspaces of `V ⊕ V*`, their types, and the two graph-style
//! presentations: a skew form on the tangent projection and a bivector on the
//! cotangent projection. Both presentations are exact bijections.

use num_traits::Zero;

use super::matrix::{self, Mat};
use super::subspace::{annihilator, coannihilator, pairing, Subspace};
use super::{LinError, Parity};
use crate::rat::Rat;

/// An `n`-dimensional isotropic subspace of `V ⊕ V*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lagrangian {
    sub: Subspace,
}

impl Lagrangian {
    pub fn new(sub: Subspace) -> Result<Self, LinError> {
        if !is_lagrangian(&sub) {
            return Err(LinError::NotLagrangian);
        }
        Ok(Self { sub })
    }

    pub fn subspace(&self) -> &Subspace {
        &self.sub
    }

    pub fn n(&self) -> usize {
        self.sub.half_dim()
    }

    /// The full tangent factor `V`, the Lagrangian of type `(n, 0)`.
    pub fn v_factor(n: usize) -> Self {
        Self {
            sub: Subspace::v_factor(n),
        }
    }

    /// The full cotangent factor `V*`, the Lagrangian of type `(0, n)`.
    pub fn vstar_factor(n: usize) -> Self {
        Self {
            sub: Subspace::vstar_factor(n),
        }
    }

    /// `Δ = ρ(L)`, the projection to `V`.
    pub fn delta(&self) -> Subspace {
        self.sub.project_v()
    }

    /// `Δ̂ = ρ̂(L)`, the projection to `V*`.
    pub fn codelta(&self) -> Subspace {
        self.sub.project_vstar()
    }

    pub fn meet_v(&self) -> Subspace {
        self.sub.meet_v()
    }

    pub fn meet_vstar(&self) -> Subspace {
        self.sub.meet_vstar()
    }

    pub fn type_of(&self) -> DiracType {
        DiracType {
            a: self.meet_v().dim(),
            b: self.meet_vstar().dim(),
        }
    }

    pub fn parity(&self) -> Parity {
        self.type_of().parity()
    }
}

/// `true` iff the subspace is `n`-dimensional and the split pairing vanishes
/// on all pairs of basis rows.
pub fn is_lagrangian(sub: &Subspace) -> bool {
    let n = sub.half_dim();
    if sub.dim() != n {
        return false;
    }
    let rows = sub.basis_gvectors();
    for i in 0..rows.len() {
        for j in i..rows.len() {
            if !pairing(&rows[i], &rows[j]).expect("same ambient").is_zero() {
                return false;
            }
        }
    }
    true
}

/// The pair `(dim(L ∩ V), dim(L ∩ V*))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiracType {
    pub a: usize,
    pub b: usize,
}

impl DiracType {
    pub fn parity(&self) -> Parity {
        if self.b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `a + b ≤ n` and `a + b ≡ n (mod 2)`.
    pub fn is_valid_for(&self, n: usize) -> bool {
        self.a + self.b <= n && (self.a + self.b) % 2 == n % 2
    }
}

impl std::fmt::Display for DiracType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A subspace `Δ ⊆ V` with a skew form `ε ∈ ∧²Δ*`, written in the canonical
/// basis of `Δ`. Presents the Lagrangian `{v + ξ : v ∈ Δ, ξ|Δ = ε(v, ·)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewFormOnSubspace {
    pub delta: Subspace,
    pub eps: Mat,
}

impl SkewFormOnSubspace {
    pub fn new(delta: Subspace, eps: Mat) -> Result<Self, LinError> {
        if !delta.is_in_v() {
            return Err(LinError::NotInV);
        }
        if eps.len() != delta.dim() || !matrix::is_skew(&eps) {
            return Err(LinError::NotSkew);
        }
        Ok(Self { delta, eps })
    }
}

/// A subspace `Δ̂ ⊆ V*` with a bivector `Π ∈ ∧²Δ̂*`, written in the canonical
/// basis of `Δ̂`. The mirror presentation on the cotangent side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivectorOnCosubspace {
    pub codelta: Subspace,
    pub pi: Mat,
}

impl BivectorOnCosubspace {
    pub fn new(codelta: Subspace, pi: Mat) -> Result<Self, LinError> {
        if !codelta.is_in_vstar() {
            return Err(LinError::NotInVStar);
        }
        if pi.len() != codelta.dim() || !matrix::is_skew(&pi) {
            return Err(LinError::NotSkew);
        }
        Ok(Self { codelta, pi })
    }
}

/// Reads off `(Δ, ε)` from a Lagrangian: `ε(ρ(x)) = ρ̂(x)|Δ` for `x ∈ L`.
pub fn to_delta_epsilon(l: &Lagrangian) -> SkewFormOnSubspace {
    let delta = l.delta();
    let d_block = delta.v_block();
    let basis = l.subspace().basis();
    let v_block = l.subspace().v_block();
    let n = l.n();
    let k = delta.dim();
    let mut eps = matrix::zeros(k, k);
    for (r, d_row) in d_block.iter().enumerate() {
        // x ∈ L with ρ(x) = d_row
        let c = matrix::solve_combination(&v_block, d_row).expect("Δ is the projection of L");
        let x: Vec<Rat> = (0..2 * n)
            .map(|j| {
                c.iter()
                    .zip(basis)
                    .fold(Rat::zero(), |acc, (ci, row)| acc + ci * &row[j])
            })
            .collect();
        let covec = &x[n..];
        for (s, d_other) in d_block.iter().enumerate() {
            eps[r][s] = matrix::dot(covec, d_other);
        }
    }
    SkewFormOnSubspace { delta, eps }
}

/// Rebuilds the Lagrangian `{v + ξ : v ∈ Δ, ξ|Δ = ε(v, ·)}`.
pub fn from_delta_epsilon(p: &SkewFormOnSubspace) -> Result<Lagrangian, LinError> {
    if !matrix::is_skew(&p.eps) || p.eps.len() != p.delta.dim() {
        return Err(LinError::NotSkew);
    }
    if !p.delta.is_in_v() {
        return Err(LinError::NotInV);
    }
    let n = p.delta.half_dim();
    let d_block = p.delta.v_block();
    let mut rows = Vec::new();
    for (r, d_row) in d_block.iter().enumerate() {
        // Any covector with ξ(dₛ) = ε[r][s] for all s.
        let xi = matrix::solve(&d_block, &p.eps[r]).expect("Δ basis has full row rank");
        let mut row = d_row.clone();
        row.extend(xi);
        rows.push(row);
    }
    let ann = annihilator(&p.delta)?;
    rows.extend(ann.basis().clone());
    Lagrangian::new(Subspace::span(2 * n, rows)?)
}

/// Reads off `(Δ̂, Π)` from a Lagrangian: `Π(ρ̂(x)) = ρ(x)|Δ̂` for `x ∈ L`.
pub fn to_codelta_pi(l: &Lagrangian) -> BivectorOnCosubspace {
    let codelta = l.codelta();
    let c_block = codelta.vstar_block();
    let basis = l.subspace().basis();
    let vstar_block = l.subspace().vstar_block();
    let n = l.n();
    let k = codelta.dim();
    let mut pi = matrix::zeros(k, k);
    for (r, c_row) in c_block.iter().enumerate() {
        let c = matrix::solve_combination(&vstar_block, c_row).expect("Δ̂ is the projection of L");
        let x: Vec<Rat> = (0..2 * n)
            .map(|j| {
                c.iter()
                    .zip(basis)
                    .fold(Rat::zero(), |acc, (ci, row)| acc + ci * &row[j])
            })
            .collect();
        let vec = &x[..n];
        for (s, c_other) in c_block.iter().enumerate() {
            pi[r][s] = matrix::dot(c_other, vec);
        }
    }
    BivectorOnCosubspace { codelta, pi }
}

/// Rebuilds the Lagrangian `{v + ξ : ξ ∈ Δ̂, v|Δ̂ = Π(ξ, ·)}`.
pub fn from_codelta_pi(p: &BivectorOnCosubspace) -> Result<Lagrangian, LinError> {
    if !matrix::is_skew(&p.pi) || p.pi.len() != p.codelta.dim() {
        return Err(LinError::NotSkew);
    }
    if !p.codelta.is_in_vstar() {
        return Err(LinError::NotInVStar);
    }
    let n = p.codelta.half_dim();
    let c_block = p.codelta.vstar_block();
    let mut rows = Vec::new();
    for (r, c_row) in c_block.iter().enumerate() {
        let v = matrix::solve(&c_block, &p.pi[r]).expect("Δ̂ basis has full row rank");
        let mut row = v;
        row.extend_from_slice(c_row);
        rows.push(row);
    }
    let coann = coannihilator(&p.codelta)?;
    rows.extend(coann.basis().clone());
    Lagrangian::new(Subspace::span(2 * n, rows)?)
}

/// Graph of a 2-form `ω ∈ ∧²V*`: the Lagrangian `{v + ι_v ω : v ∈ V}`,
/// of type `(dim ker ω, 0)`.
pub fn graph_two_form(omega: &Mat) -> Result<Lagrangian, LinError> {
    if !matrix::is_skew(omega) {
        return Err(LinError::NotSkew);
    }
    let n = omega.len();
    from_delta_epsilon(&SkewFormOnSubspace {
        delta: Subspace::v_factor(n),
        eps: omega.clone(),
    })
}

/// Graph of a bivector `Π ∈ ∧²V`: the Lagrangian `{ι_ξ Π + ξ : ξ ∈ V*}`,
/// of type `(0, dim ker Π)`.
pub fn graph_bivector(pi: &Mat) -> Result<Lagrangian, LinError> {
    if !matrix::is_skew(pi) {
        return Err(LinError::NotSkew);
    }
    let n = pi.len();
    from_codelta_pi(&BivectorOnCosubspace {
        codelta: Subspace::vstar_factor(n),
        pi: pi.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindirac::orthochart::random_lagrangian;
    use crate::lindirac::subspace::GVector;
    use crate::rat::rat_int;

    fn gv(vec: &[i64], covec: &[i64]) -> GVector {
        GVector::new(
            vec.iter().map(|&x| rat_int(x)).collect(),
            covec.iter().map(|&x| rat_int(x)).collect(),
        )
        .unwrap()
    }

    fn skew2(t: i64) -> Mat {
        vec![
            vec![rat_int(0), rat_int(t)],
            vec![rat_int(-t), rat_int(0)],
        ]
    }

    #[test]
    fn is_lagrangian_examples() {
        assert!(is_lagrangian(&Subspace::v_factor(2)));
        // span{∂x, dx} is isotropic-violating
        let s = Subspace::span_gvectors(2, &[gv(&[1, 0], &[0, 0]), gv(&[0, 0], &[1, 0])]).unwrap();
        assert!(!is_lagrangian(&s));
        // span{∂x + dy, ∂y − dx} is Lagrangian
        let l = Subspace::span_gvectors(2, &[gv(&[1, 0], &[0, 1]), gv(&[0, 1], &[-1, 0])]).unwrap();
        assert!(is_lagrangian(&l));
    }

    #[test]
    fn types_and_parity() {
        assert_eq!(Lagrangian::v_factor(2).type_of(), DiracType { a: 2, b: 0 });
        assert_eq!(Lagrangian::v_factor(2).parity(), Parity::Even);

        let graph = graph_two_form(&skew2(1)).unwrap();
        assert_eq!(graph.type_of(), DiracType { a: 0, b: 0 });
        assert_eq!(graph.parity(), Parity::Even);

        let l = Lagrangian::new(
            Subspace::span_gvectors(2, &[gv(&[1, 0], &[0, 0]), gv(&[0, 0], &[0, 1])]).unwrap(),
        )
        .unwrap();
        assert_eq!(l.type_of(), DiracType { a: 1, b: 1 });
        assert_eq!(l.parity(), Parity::Odd);
    }

    #[test]
    fn delta_epsilon_of_v_is_zero_form() {
        let p = to_delta_epsilon(&Lagrangian::v_factor(2));
        assert_eq!(p.delta, Subspace::v_factor(2));
        assert_eq!(p.eps, matrix::zeros(2, 2));
    }

    #[test]
    fn from_delta_epsilon_worked_example() {
        // Δ = span{∂x, ∂y} in ℝ³ with ε = dx∧dy gives span{∂x + dy, ∂y − dx, dz}.
        let delta = Subspace::from_v_rows(
            3,
            vec![
                vec![rat_int(1), rat_int(0), rat_int(0)],
                vec![rat_int(0), rat_int(1), rat_int(0)],
            ],
        )
        .unwrap();
        let p = SkewFormOnSubspace::new(delta, skew2(1)).unwrap();
        let l = from_delta_epsilon(&p).unwrap();
        let expected = Subspace::span_gvectors(
            3,
            &[
                gv(&[1, 0, 0], &[0, 1, 0]),
                gv(&[0, 1, 0], &[-1, 0, 0]),
                gv(&[0, 0, 0], &[0, 0, 1]),
            ],
        )
        .unwrap();
        assert_eq!(l.subspace(), &expected);
    }

    #[test]
    fn codelta_pi_graph_cases() {
        let p = to_codelta_pi(&Lagrangian::vstar_factor(2));
        assert_eq!(p.codelta, Subspace::vstar_factor(2));
        assert_eq!(p.pi, matrix::zeros(2, 2));

        let graph = graph_bivector(&skew2(1)).unwrap();
        let q = to_codelta_pi(&graph);
        assert_eq!(q.codelta, Subspace::vstar_factor(2));
        assert_eq!(q.pi, skew2(1));
    }

    #[test]
    fn graphs_of_zero() {
        assert_eq!(
            graph_two_form(&matrix::zeros(2, 2)).unwrap(),
            Lagrangian::v_factor(2)
        );
        assert_eq!(
            graph_bivector(&matrix::zeros(2, 2)).unwrap(),
            Lagrangian::vstar_factor(2)
        );
        let non_skew = vec![vec![rat_int(0), rat_int(1)], vec![rat_int(1), rat_int(0)]];
        assert!(matches!(graph_two_form(&non_skew), Err(LinError::NotSkew)));
    }

    #[test]
    fn graph_two_form_kernel_type() {
        // dx∧dy on ℝ³ has kernel span{∂z}: type (1, 0).
        let mut omega = matrix::zeros(3, 3);
        omega[0][1] = rat_int(1);
        omega[1][0] = rat_int(-1);
        let l = graph_two_form(&omega).unwrap();
        assert_eq!(l.type_of(), DiracType { a: 1, b: 0 });
    }

    #[test]
    fn presentations_round_trip_on_random_lagrangians() {
        for n in 2..=4 {
            for parity in [Parity::Even, Parity::Odd] {
                for seed in 0..25 {
                    let l = random_lagrangian(seed, n, parity);
                    let back = from_delta_epsilon(&to_delta_epsilon(&l)).unwrap();
                    assert_eq!(back, l, "(Δ, ε) round trip, n={n} seed={seed}");
                    let back = from_codelta_pi(&to_codelta_pi(&l)).unwrap();
                    assert_eq!(back, l, "(Δ̂, Π) round trip, n={n} seed={seed}");
                }
            }
        }
    }

    #[test]
    fn flags_relate_annihilators() {
        for n in 2..=4 {
            for parity in [Parity::Even, Parity::Odd] {
                for seed in 0..25 {
                    let l = random_lagrangian(seed, n, parity);
                    assert_eq!(annihilator(&l.meet_v()).unwrap(), l.codelta());
                    assert_eq!(annihilator(&l.delta()).unwrap(), l.meet_vstar());
                    let t = l.type_of();
                    assert!(t.is_valid_for(n));
                }
            }
        }
    }
}

//! The orthogonal-group chart of the Lagrangian Grassmannian.
//!
//! With the standard inner product `g` on `V`, every orthogonal matrix `A`
//! yields the Lagrangian `L_A = {((I+A)u, g((I−A)u, ·)) : u ∈ V}`, and every
//! Lagrangian arises from exactly one `A`. The two components of the
//! orthogonal group are the two parities: `det A = +1` iff `L_A` is even.
//! Random Lagrangians are produced by running rational skew matrices through
//! the Cayley transform.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::{self, Mat};
use super::subspace::Subspace;
use super::{Lagrangian, LinError, Parity};
use crate::rat::{rat_int, Rat};

/// An exactly orthogonal rational matrix: `A·Aᵀ = I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoMatrix {
    entries: Mat,
}

impl OrthoMatrix {
    pub fn new(entries: Mat) -> Result<Self, LinError> {
        let product = matrix::matmul(&entries, &matrix::transpose(&entries));
        if !matrix::is_identity(&product) {
            return Err(LinError::NotOrthogonal);
        }
        Ok(Self { entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            entries: matrix::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &Mat {
        &self.entries
    }

    pub fn det(&self) -> Rat {
        matrix::det(&self.entries)
    }

    /// Cayley transform `(I − S)(I + S)⁻¹` of a skew matrix; always lands in
    /// the special orthogonal component.
    pub fn cayley(skew: &Mat) -> Result<Self, LinError> {
        if !matrix::is_skew(skew) {
            return Err(LinError::NotSkew);
        }
        let n = skew.len();
        let id = matrix::identity(n);
        let mut plus = id.clone();
        let mut minus = id;
        for i in 0..n {
            for j in 0..n {
                plus[i][j] += &skew[i][j];
                minus[i][j] -= &skew[i][j];
            }
        }
        // I + S is invertible for every real skew S.
        let inv = matrix::inverse(&plus).expect("I + S invertible");
        Self::new(matrix::matmul(&minus, &inv))
    }

    /// Composition with `diag(−1, 1, …, 1)` on the right; flips the
    /// determinant, moving to the other component.
    pub fn reflect_first_axis(&self) -> Self {
        let mut entries = self.entries.clone();
        for row in entries.iter_mut() {
            row[0] = -row[0].clone();
        }
        Self { entries }
    }
}

/// `L_A = {((I+A)u, (I−A)u) : u ∈ V}` with covectors identified via the
/// standard dot product.
pub fn lagrangian_from_orthogonal(a: &OrthoMatrix) -> Lagrangian {
    let n = a.n();
    let mut rows = Vec::with_capacity(n);
    for k in 0..n {
        let mut row = vec![Rat::zero(); 2 * n];
        for i in 0..n {
            // column k of I ± A
            let delta = if i == k { rat_int(1) } else { rat_int(0) };
            row[i] = &delta + &a.entries()[i][k];
            row[n + i] = &delta - &a.entries()[i][k];
        }
        rows.push(row);
    }
    let sub = Subspace::span(2 * n, rows).expect("rows have ambient length");
    Lagrangian::new(sub).expect("the chart lands in Lagrangians")
}

/// Inverts the chart: for basis rows `(p, q)` of `L`, the matrix `A` is
/// pinned down by `A(p + q) = p − q`, and `{p + q}` always spans `V`.
pub fn orthogonal_from_lagrangian(l: &Lagrangian) -> OrthoMatrix {
    let p = l.subspace().v_block();
    let q = l.subspace().vstar_block();
    let n = l.n();
    let mut sums = matrix::zeros(n, n);
    let mut diffs = matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            sums[i][j] = &p[i][j] + &q[i][j];
            diffs[i][j] = &p[i][j] - &q[i][j];
        }
    }
    // A · sumsᵀ = diffsᵀ, i.e. Aᵀ = sums⁻¹ · diffs.
    let inv = matrix::inverse(&sums).expect("p + q spans V for every Lagrangian");
    let a_t = matrix::matmul(&inv, &diffs);
    OrthoMatrix::new(matrix::transpose(&a_t)).expect("the inverse chart is orthogonal")
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> Mat {
    let mut s = matrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let numer = rng.gen_range(-3..=3);
            let denom = rng.gen_range(1..=3);
            let x = Rat::new(numer.into(), denom.into());
            s[i][j] = x.clone();
            s[j][i] = -x;
        }
    }
    s
}

/// Deterministic random Lagrangian of the requested parity: a Cayley-image
/// rotation, reflected through the first axis for the odd component.
pub fn random_lagrangian(seed: u64, n: usize, parity: Parity) -> Lagrangian {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = OrthoMatrix::cayley(&random_skew(&mut rng, n)).expect("skew by construction");
    if parity == Parity::Odd {
        a = a.reflect_first_axis();
    }
    lagrangian_from_orthogonal(&a)
}

/// Deterministic random rational orthogonal matrix, as used by
/// [`random_lagrangian`].
pub fn random_orthogonal(seed: u64, n: usize, parity: Parity) -> OrthoMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = OrthoMatrix::cayley(&random_skew(&mut rng, n)).expect("skew by construction");
    match parity {
        Parity::Even => a,
        Parity::Odd => a.reflect_first_axis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lindirac::DiracType;
    use crate::rat::rat;

    #[test]
    fn identity_maps_to_v() {
        let l = lagrangian_from_orthogonal(&OrthoMatrix::identity(2));
        assert_eq!(l, Lagrangian::v_factor(2));
    }

    #[test]
    fn minus_identity_maps_to_vstar() {
        let minus = OrthoMatrix::new(vec![
            vec![rat_int(-1), rat_int(0)],
            vec![rat_int(0), rat_int(-1)],
        ])
        .unwrap();
        assert_eq!(lagrangian_from_orthogonal(&minus), Lagrangian::vstar_factor(2));
    }

    #[test]
    fn reflection_gives_the_odd_mixed_lagrangian() {
        let a = OrthoMatrix::new(vec![
            vec![rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(-1)],
        ])
        .unwrap();
        assert_eq!(a.det(), rat_int(-1));
        let l = lagrangian_from_orthogonal(&a);
        // span{∂x, dy}
        assert_eq!(l.type_of(), DiracType { a: 1, b: 1 });
        assert_eq!(l.parity(), Parity::Odd);
        assert_eq!(orthogonal_from_lagrangian(&l), a);
    }

    #[test]
    fn cayley_produces_rotations() {
        let s = vec![vec![rat_int(0), rat(1, 2)], vec![rat(-1, 2), rat_int(0)]];
        let a = OrthoMatrix::cayley(&s).unwrap();
        assert_eq!(a.det(), rat_int(1));
    }

    #[test]
    fn non_orthogonal_is_rejected() {
        let m = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(0), rat_int(1)]];
        assert!(matches!(OrthoMatrix::new(m), Err(LinError::NotOrthogonal)));
    }

    #[test]
    fn chart_round_trips_and_detects_parity() {
        for n in 2..=3 {
            for parity in [Parity::Even, Parity::Odd] {
                for seed in 0..25 {
                    let a = random_orthogonal(seed, n, parity);
                    let l = lagrangian_from_orthogonal(&a);
                    assert_eq!(orthogonal_from_lagrangian(&l), a);
                    assert_eq!(lagrangian_from_orthogonal(&orthogonal_from_lagrangian(&l)), l);
                    let even = a.det() == rat_int(1);
                    assert_eq!(l.parity() == Parity::Even, even);
                    assert_eq!(l.parity(), parity);
                }
            }
        }
    }

    #[test]
    fn random_lagrangian_is_deterministic() {
        let a = random_lagrangian(7, 3, Parity::Odd);
        let b = random_lagrangian(7, 3, Parity::Odd);
        assert_eq!(a, b);
        let c = random_lagrangian(8, 3, Parity::Odd);
        assert_ne!(a, c);
    }

    #[test]
    fn random_lagrangian_honors_parity_contract() {
        let l = random_lagrangian(0, 2, Parity::Even);
        assert_eq!(l.parity(), Parity::Even);
        let l = random_lagrangian(0, 3, Parity::Odd);
        assert_eq!(l.type_of().b % 2, 1);
    }
}

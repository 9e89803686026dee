//! Dense exact-rational matrices as `Vec<Vec<Rat>>`, with the elimination
//! routines the rest of the module is built on. Reduced row-echelon form is
//! the canonical representative everywhere, which makes subspace equality a
//! plain comparison.

use num_traits::{One, Zero};

use crate::rat::Rat;

pub type Mat = Vec<Vec<Rat>>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![Rat::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rat::one();
    }
    m
}

pub fn transpose(m: &Mat) -> Mat {
    if m.is_empty() {
        return Vec::new();
    }
    let (r, c) = (m.len(), m[0].len());
    let mut t = zeros(c, r);
    for i in 0..r {
        for j in 0..c {
            t[j][i] = m[i][j].clone();
        }
    }
    t
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let rows = a.len();
    let inner = if rows > 0 { a[0].len() } else { 0 };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    assert_eq!(inner, b.len(), "matmul: inner dimensions differ");
    let mut out = zeros(rows, cols);
    for i in 0..rows {
        for k in 0..inner {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..cols {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_vec(a: &Mat, v: &[Rat]) -> Vec<Rat> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rat::zero(), |acc, (m, x)| acc + m * x)
        })
        .collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter()
        .zip(b)
        .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_skew(m: &Mat) -> bool {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return false;
    }
    for i in 0..n {
        for j in 0..n {
            if m[i][j] != -m[j][i].clone() {
                return false;
            }
        }
    }
    true
}

pub fn is_identity(m: &Mat) -> bool {
    let n = m.len();
    m.iter().enumerate().all(|(i, row)| {
        row.len() == n
            && row
                .iter()
                .enumerate()
                .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

/// Gauss–Jordan elimination. Returns the reduced row-echelon form with zero
/// rows dropped, together with the pivot columns.
pub fn rref(mat: &Mat) -> (Mat, Vec<usize>) {
    let mut m = mat.clone();
    let rows = m.len();
    let cols = if rows > 0 { m[0].len() } else { 0 };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].clone().recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = &f * &m[r][j];
                    m[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(mat: &Mat) -> usize {
    rref(mat).0.len()
}

/// Basis of the right null space `{x ∈ ℚ^cols : mat · x = 0}`, as RREF rows.
/// The column count is explicit so a matrix with no rows annihilates nothing.
pub fn kernel(mat: &Mat, cols: usize) -> Mat {
    debug_assert!(mat.iter().all(|r| r.len() == cols));
    let (red, pivots) = rref(mat);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -red[i][free].clone();
        }
        basis.push(v);
    }
    rref(&basis).0
}

/// Solves `mat · x = b`; free variables are set to zero. `None` when the
/// system is inconsistent.
pub fn solve(mat: &Mat, b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = mat.len();
    assert_eq!(rows, b.len(), "solve: rhs length differs");
    let cols = if rows > 0 { mat[0].len() } else { 0 };
    let mut aug = Vec::with_capacity(rows);
    for (row, rhs) in mat.iter().zip(b) {
        let mut r = row.clone();
        r.push(rhs.clone());
        aug.push(r);
    }
    let (red, pivots) = rref(&aug);
    // A pivot in the augmented column means the system is inconsistent.
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red[i][cols].clone();
    }
    Some(x)
}

/// Coefficients `c` with `Σ cᵢ · rowsᵢ = target`, if the target lies in the
/// row span.
pub fn solve_combination(rows: &Mat, target: &[Rat]) -> Option<Vec<Rat>> {
    if rows.is_empty() {
        return target.iter().all(Rat::is_zero).then(Vec::new);
    }
    solve(&transpose(rows), target)
}

pub fn inverse(mat: &Mat) -> Option<Mat> {
    let n = mat.len();
    if mat.iter().any(|r| r.len() != n) {
        return None;
    }
    let mut aug = Vec::with_capacity(n);
    for (row, id_row) in mat.iter().zip(identity(n)) {
        let mut r = row.clone();
        r.extend(id_row);
        aug.push(r);
    }
    let (red, pivots) = rref(&aug);
    if red.len() != n || pivots != (0..n).collect::<Vec<_>>() {
        return None;
    }
    Some(red.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(mat: &Mat) -> Rat {
    let n = mat.len();
    assert!(mat.iter().all(|r| r.len() == n), "det: matrix not square");
    let mut m = mat.clone();
    let mut result = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            result = -result;
        }
        result *= &m[c][c];
        let inv = m[c][c].clone().recip();
        for i in (c + 1)..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..n {
                let delta = &f * &m[c][j];
                m[i][j] -= delta;
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn m(entries: &[&[i64]]) -> Mat {
        entries
            .iter()
            .map(|row| row.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn rref_canonicalizes() {
        let (red, pivots) = rref(&m(&[&[2, 4, 0], &[1, 2, 1]]));
        assert_eq!(red, m(&[&[1, 2, 0], &[0, 0, 1]]));
        assert_eq!(pivots, vec![0, 2]);
    }

    #[test]
    fn rref_is_representation_independent() {
        let (a, _) = rref(&m(&[&[1, 1], &[0, 3]]));
        let (b, _) = rref(&m(&[&[2, 5], &[4, 7]]));
        assert_eq!(a, b); // both span the plane
    }

    #[test]
    fn kernel_of_projection() {
        let k = kernel(&m(&[&[1, 0, 0], &[0, 1, 0]]), 3);
        assert_eq!(k, m(&[&[0, 0, 1]]));
    }

    #[test]
    fn solve_reports_inconsistency() {
        assert_eq!(solve(&m(&[&[1, 0], &[1, 0]]), &[rat_int(1), rat_int(2)]), None);
        let x = solve(&m(&[&[2, 0], &[0, 4]]), &[rat_int(1), rat_int(2)]).unwrap();
        assert_eq!(x, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[1, 2], &[3, 5]]);
        let inv = inverse(&a).unwrap();
        assert!(is_identity(&matmul(&a, &inv)));
        assert_eq!(inverse(&m(&[&[1, 2], &[2, 4]])), None);
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        assert_eq!(det(&m(&[&[1, 2], &[3, 4]])), rat_int(-2));
        assert_eq!(det(&m(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])), rat_int(1));
        assert_eq!(det(&m(&[&[1, 2], &[2, 4]])), rat_int(0));
    }
}

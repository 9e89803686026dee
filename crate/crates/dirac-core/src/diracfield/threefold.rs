//! The threefold decomposition of a Dirac structure.
//!
//! An even Dirac structure on a 3-dimensional domain is the union of a
//! presymplectic region (pointwise type `(1,0)` or `(3,0)`, the graph of a
//! 2-form) and a foliated Poisson region (type `(1,0)` or `(1,2)`), glued
//! along the open stratum of type `(1,0)`. For odd structures the picture is
//! mirrored: a Poisson region and a foliated presymplectic region glued
//! along `(0,1)`.
//!
//! The extracted 2-form or bivector is a ratio of ring elements (the inverse
//! of the graph matrix brings in a determinant denominator), so the
//! symbolic checks here run in a small field-of-fractions layer over the
//! coefficient ring: equality to zero is exactness of the numerator.

use super::frame::{is_dirac, DiracFrame};
use super::numeric::GridSpec;
use super::poisson::admissible_generators;
use super::stratify::{stratify, TypeStratification};
use super::FrameError;
use crate::lindirac::{DiracType, Parity};
use crate::symcalc::foliated::symbolic_det;
use crate::symcalc::{
    foliated_d, Distribution, Domain, FoliatedForm, KForm, ScalarField, VectorField,
};

/// A ratio of coefficient-ring elements with a not-identically-zero
/// denominator. Zero testing is exact (numerator identically zero).
#[derive(Debug, Clone, PartialEq)]
pub struct RationalScalar {
    pub num: ScalarField,
    pub den: ScalarField,
}

impl RationalScalar {
    pub fn from_field(f: ScalarField) -> Self {
        let den = ScalarField::one(f.domain());
        Self { num: f, den }
    }

    pub fn new(num: ScalarField, den: ScalarField) -> Self {
        debug_assert!(!den.is_zero());
        Self { num, den }.reduced()
    }

    /// Clears the denominator when one side divides the other exactly, and
    /// keeps the displayed denominator's leading coefficient positive.
    fn reduced(self) -> Self {
        let domain = self.den.domain();
        if let Some(q) = self.num.exact_div(&self.den) {
            return Self {
                num: q,
                den: ScalarField::one(domain),
            };
        }
        let mut out = if let Some(q) = self.den.exact_div(&self.num) {
            // num/den = 1/q up to the sign of the cancellation
            Self {
                num: ScalarField::one(domain),
                den: q,
            }
        } else {
            self
        };
        if out.den.leading_coefficient_negative() == Some(true) {
            out.num = out.num.neg();
            out.den = out.den.neg();
        }
        out
    }

    pub fn domain(&self) -> Domain {
        self.num.domain()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul_field(&self, f: &ScalarField) -> Self {
        Self::new(&self.num * f, self.den.clone())
    }

    /// Quotient rule.
    pub fn partial(&self, axis: usize) -> Self {
        Self::new(
            &(&self.num.partial(axis) * &self.den) - &(&self.num * &self.den.partial(axis)),
            &self.den * &self.den,
        )
    }
}

impl std::fmt::Display for RationalScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == ScalarField::one(self.den.domain()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// A skew matrix of ring elements over a common denominator, presenting an
/// extracted 2-form or bivector.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalSkewMatrix {
    pub num: Vec<Vec<ScalarField>>,
    pub den: ScalarField,
}

impl RationalSkewMatrix {
    pub fn entry(&self, i: usize, j: usize) -> RationalScalar {
        RationalScalar::new(self.num[i][j].clone(), self.den.clone())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSideData {
    /// Even: the 2-form whose graph the structure is, where `Δ = TM`.
    TwoForm {
        omega: RationalSkewMatrix,
        /// Numerator of `dω`; `closed` iff it vanishes identically.
        d_omega_num: KForm,
        closed: bool,
    },
    /// Odd: the bivector whose graph the structure is, where `Δ̂ = T*M`.
    Bivector {
        pi: RationalSkewMatrix,
        jacobi_ok: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphSideReport {
    pub label: &'static str,
    /// Flat indices of clean grid samples in the region.
    pub sample_indices: Vec<usize>,
    /// `None` when the region is symbolically empty (degenerate graph matrix).
    pub data: Option<GraphSideData>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FoliatedSideData {
    /// Even: Poisson data along the kernel foliation `E ∩ TM`.
    Poisson {
        kernel_field: VectorField,
        generators: Vec<ScalarField>,
        /// Brackets `{gᵢ, gⱼ}` for `i < j` over the generator list.
        brackets: Vec<(usize, usize, RationalScalar)>,
        jacobi_ok: bool,
    },
    /// Odd: presymplectic data along the image foliation `Δ = ρ(E)`.
    Presymplectic {
        /// Indices of the two frame sections whose vector parts span `Δ`.
        spanning_sections: (usize, usize),
        spanning: (VectorField, VectorField),
        /// `ε(v₁, v₂)` in that spanning frame.
        eps: ScalarField,
        /// `d_Δ ε` vanishes (top foliated degree on a rank-2 foliation).
        d_eps_zero: bool,
        /// Do the spanning brackets stay in the span with ring coefficients?
        involutive_over_ring: bool,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct FoliatedSideReport {
    pub label: &'static str,
    pub sample_indices: Vec<usize>,
    pub data: Option<FoliatedSideData>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThreefoldDecomposition {
    pub parity: Parity,
    pub stratification: TypeStratification,
    pub gluing_type: DiracType,
    pub gluing_sample_indices: Vec<usize>,
    /// Every clean sample lies in one of the two regions, and nothing was
    /// ambiguous.
    pub covering_ok: bool,
    pub overlap_equals_gluing: bool,
    pub graph_side: GraphSideReport,
    pub foliated_side: FoliatedSideReport,
}

fn section_matrices(frame: &DiracFrame) -> (Vec<Vec<ScalarField>>, Vec<Vec<ScalarField>>) {
    let n = frame.n();
    let p = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| frame.section(k).vector().component(i).clone())
                .collect()
        })
        .collect();
    let q = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| frame.section(k).covector().coeff(&[i]))
                .collect()
        })
        .collect();
    (p, q)
}

fn adjugate3(m: &[Vec<ScalarField>], domain: Domain) -> Vec<Vec<ScalarField>> {
    let minor = |r: usize, c: usize| -> ScalarField {
        let rows: Vec<usize> = (0..3).filter(|&i| i != r).collect();
        let cols: Vec<usize> = (0..3).filter(|&j| j != c).collect();
        let sub = vec![
            vec![m[rows[0]][cols[0]].clone(), m[rows[0]][cols[1]].clone()],
            vec![m[rows[1]][cols[0]].clone(), m[rows[1]][cols[1]].clone()],
        ];
        symbolic_det(&sub, domain)
    };
    (0..3)
        .map(|i| {
            (0..3)
                .map(|j| {
                    // adj[i][j] = (−1)^{i+j} · minor(j, i)
                    let c = minor(j, i);
                    if (i + j) % 2 == 1 {
                        c.neg()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

fn matmul_sym(
    a: &[Vec<ScalarField>],
    b: &[Vec<ScalarField>],
    domain: Domain,
) -> Vec<Vec<ScalarField>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = ScalarField::zero(domain);
                    for (k, row_b) in b.iter().enumerate() {
                        if !a[i][k].is_zero() && !row_b[j].is_zero() {
                            acc = &acc + &(&a[i][k] * &row_b[j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `ω_full = −(Q · adj P) / det P`, the graph 2-form where `Δ = TM`.
fn extract_two_form(
    p: &[Vec<ScalarField>],
    q: &[Vec<ScalarField>],
    domain: Domain,
) -> Option<RationalSkewMatrix> {
    let det = symbolic_det(p, domain);
    if det.is_zero() {
        return None;
    }
    let adj = adjugate3(p, domain);
    let w = matmul_sym(q, &adj, domain);
    let num = (0..3)
        .map(|i| (0..3).map(|j| w[i][j].neg()).collect())
        .collect();
    Some(RationalSkewMatrix { num, den: det })
}

/// `π_full = −(P · adj Q) / det Q`, the graph bivector where `Δ̂ = T*M`.
fn extract_bivector(
    p: &[Vec<ScalarField>],
    q: &[Vec<ScalarField>],
    domain: Domain,
) -> Option<RationalSkewMatrix> {
    let det = symbolic_det(q, domain);
    if det.is_zero() {
        return None;
    }
    let adj = adjugate3(q, domain);
    let w = matmul_sym(p, &adj, domain);
    let num = (0..3)
        .map(|i| (0..3).map(|j| w[i][j].neg()).collect())
        .collect();
    Some(RationalSkewMatrix { num, den: det })
}

/// `dω` as a numerator 3-form: `den·d(num) − d(den)∧num` over `den²`.
fn d_of_rational_two_form(omega: &RationalSkewMatrix, domain: Domain) -> KForm {
    let mut num_form = KForm::zero(domain, 2);
    for i in 0..3 {
        for j in (i + 1)..3 {
            let comp = KForm::from_components(
                domain,
                2,
                vec![(vec![i, j], omega.num[i][j].clone())],
            )
            .expect("valid indices");
            num_form = num_form.try_add(&comp).expect("same degree");
        }
    }
    let den_zero_form = KForm::from_scalar(omega.den.clone());
    let first = num_form.d().scale_field(&omega.den);
    let second = den_zero_form.d().wedge(&num_form).expect("same domain");
    first.try_sub(&second).expect("same degree")
}

/// `{f, g} = Σ_{a<b} π^{ab} (∂ₐf ∂ᵦg − ∂ᵦf ∂ₐg)` over the fraction layer.
fn rational_bivector_bracket(
    pi: &RationalSkewMatrix,
    f: &RationalScalar,
    g: &RationalScalar,
) -> RationalScalar {
    let domain = f.domain();
    let mut acc = RationalScalar::from_field(ScalarField::zero(domain));
    for a in 0..3 {
        for b in (a + 1)..3 {
            if pi.num[a][b].is_zero() {
                continue;
            }
            let term = f
                .partial(a)
                .mul(&g.partial(b))
                .sub(&f.partial(b).mul(&g.partial(a)));
            acc = acc.add(&term.mul(&pi.entry(a, b)));
        }
    }
    acc
}

fn rational_jacobi(pi: &RationalSkewMatrix, gens: &[ScalarField]) -> bool {
    let lift: Vec<RationalScalar> = gens
        .iter()
        .map(|g| RationalScalar::from_field(g.clone()))
        .collect();
    for f in &lift {
        for g in &lift {
            for h in &lift {
                let a = rational_bivector_bracket(pi, f, &rational_bivector_bracket(pi, g, h));
                let b = rational_bivector_bracket(pi, g, &rational_bivector_bracket(pi, h, f));
                let c = rational_bivector_bracket(pi, h, &rational_bivector_bracket(pi, f, g));
                if !a.add(&b).add(&c).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// Hamiltonian solve `Q·c = df`: coefficients on the frame whose covector
/// parts realize `df`, over the fraction layer. Requires `rank Q = 2`
/// generically.
fn hamiltonian_coefficients(
    q: &[Vec<ScalarField>],
    df: &[ScalarField],
    domain: Domain,
) -> Option<Vec<RationalScalar>> {
    let rows3: Vec<usize> = vec![0, 1, 2];
    for r1 in 0..3usize {
        for r2 in (r1 + 1)..3 {
            for c1 in 0..3usize {
                for c2 in (c1 + 1)..3 {
                    let sub = vec![
                        vec![q[r1][c1].clone(), q[r1][c2].clone()],
                        vec![q[r2][c1].clone(), q[r2][c2].clone()],
                    ];
                    let den = symbolic_det(&sub, domain);
                    if den.is_zero() {
                        continue;
                    }
                    // Cramer on the 2×2 block, remaining coefficient zero.
                    let n1 = &(&df[r1] * &q[r2][c2]) - &(&df[r2] * &q[r1][c2]);
                    let n2 = &(&q[r1][c1] * &df[r2]) - &(&q[r2][c1] * &df[r1]);
                    let mut coeffs = vec![
                        RationalScalar::from_field(ScalarField::zero(domain));
                        3
                    ];
                    coeffs[c1] = RationalScalar::new(n1, den.clone());
                    coeffs[c2] = RationalScalar::new(n2, den.clone());
                    // verify the remaining row
                    let r3 = rows3.iter().copied().find(|r| *r != r1 && *r != r2).unwrap();
                    let mut check = RationalScalar::from_field(df[r3].neg());
                    for (k, c) in coeffs.iter().enumerate() {
                        check = check.add(&c.mul_field(&q[r3][k]));
                    }
                    if check.is_zero() {
                        return Some(coeffs);
                    }
                    return None;
                }
            }
        }
    }
    None
}

/// Hamiltonian vector field of a generator: `X_f = P · c` with `Q·c = df`.
fn hamiltonian_field(
    p: &[Vec<ScalarField>],
    q: &[Vec<ScalarField>],
    f: &ScalarField,
    domain: Domain,
) -> Option<Vec<RationalScalar>> {
    let df: Vec<ScalarField> = (0..3).map(|i| f.partial(i)).collect();
    let coeffs = hamiltonian_coefficients(q, &df, domain)?;
    Some(
        (0..3)
            .map(|i| {
                let mut acc = RationalScalar::from_field(ScalarField::zero(domain));
                for (k, c) in coeffs.iter().enumerate() {
                    acc = acc.add(&c.mul_field(&p[i][k]));
                }
                acc
            })
            .collect(),
    )
}

fn apply_rational_field(x: &[RationalScalar], h: &RationalScalar) -> RationalScalar {
    let mut acc = RationalScalar::from_field(ScalarField::zero(h.domain()));
    for (j, xj) in x.iter().enumerate() {
        acc = acc.add(&xj.mul(&h.partial(j)));
    }
    acc
}

/// Jacobi on admissible generators via Hamiltonian fields:
/// `{f, g} = X_f(g)`.
fn foliated_jacobi(
    hams: &[Vec<RationalScalar>],
    gens: &[ScalarField],
) -> bool {
    let lift: Vec<RationalScalar> = gens
        .iter()
        .map(|g| RationalScalar::from_field(g.clone()))
        .collect();
    for (a, xa) in hams.iter().enumerate() {
        for (b, xb) in hams.iter().enumerate() {
            for (c, xc) in hams.iter().enumerate() {
                let t1 = apply_rational_field(xa, &apply_rational_field(xb, &lift[c]));
                let t2 = apply_rational_field(xb, &apply_rational_field(xc, &lift[a]));
                let t3 = apply_rational_field(xc, &apply_rational_field(xa, &lift[b]));
                if !t1.add(&t2).add(&t3).is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// The kernel line field `E ∩ TM = {P·c : Q·c = 0}`, spanned by `P` applied
/// to a nonzero adjugate column of `Q`.
fn kernel_line_field(
    p: &[Vec<ScalarField>],
    q: &[Vec<ScalarField>],
    domain: Domain,
) -> Option<VectorField> {
    let adj = adjugate3(q, domain);
    for col in 0..3 {
        if (0..3).any(|i| !adj[i][col].is_zero()) {
            let comps = (0..3)
                .map(|i| {
                    let mut acc = ScalarField::zero(domain);
                    for k in 0..3 {
                        if !p[i][k].is_zero() && !adj[k][col].is_zero() {
                            acc = &acc + &(&p[i][k] * &adj[k][col]);
                        }
                    }
                    acc
                })
                .collect();
            let field = VectorField::from_components(domain, comps).expect("component count");
            if !field.is_zero() {
                return Some(field);
            }
        }
    }
    None
}

/// Membership of `[v₁, v₂]` in `span{v₁, v₂}` with fraction coefficients.
fn rational_span_membership(v1: &VectorField, v2: &VectorField) -> Option<bool> {
    let domain = v1.domain();
    let bracket = v1.lie_bracket(v2).ok()?;
    if bracket.is_zero() {
        return Some(true);
    }
    for r1 in 0..3usize {
        for r2 in (r1 + 1)..3 {
            let sub = vec![
                vec![v1.component(r1).clone(), v2.component(r1).clone()],
                vec![v1.component(r2).clone(), v2.component(r2).clone()],
            ];
            let den = symbolic_det(&sub, domain);
            if den.is_zero() {
                continue;
            }
            let c1 = RationalScalar::new(
                &(&bracket.component(r1).clone() * &v2.component(r2).clone())
                    - &(&bracket.component(r2).clone() * &v2.component(r1).clone()),
                den.clone(),
            );
            let c2 = RationalScalar::new(
                &(&v1.component(r1).clone() * &bracket.component(r2).clone())
                    - &(&v1.component(r2).clone() * &bracket.component(r1).clone()),
                den.clone(),
            );
            let r3 = (0..3).find(|r| *r != r1 && *r != r2).unwrap();
            let residual = c1
                .mul_field(v1.component(r3))
                .add(&c2.mul_field(v2.component(r3)))
                .sub(&RationalScalar::from_field(bracket.component(r3).clone()));
            return Some(residual.is_zero());
        }
    }
    None
}

/// Decomposes a 3-dimensional Dirac frame over a grid into its graph-side
/// and foliated-side regions with extracted geometric data.
pub fn decompose_threefold(
    frame: &DiracFrame,
    grid: &GridSpec,
) -> Result<ThreefoldDecomposition, FrameError> {
    if frame.n() != 3 {
        return Err(FrameError::WrongDimension {
            expected: 3,
            got: frame.n(),
        });
    }
    let verdict = is_dirac(frame)?;
    if !verdict.holds {
        return Err(FrameError::NotDirac {
            witness: verdict
                .witness
                .map(|w| format!("T[{}][{}][{}] = {}", w.i, w.j, w.k, w.field))
                .unwrap_or_default(),
        });
    }
    let stratification = stratify(frame, grid)?;
    let parity = stratification.parity();
    let domain = frame.domain();
    let (p, q) = section_matrices(frame);

    let (graph_pred, fol_pred, gluing_type): (
        fn(DiracType) -> bool,
        fn(DiracType) -> bool,
        DiracType,
    ) = match parity {
        Parity::Even => (
            |t| t.b == 0,
            |t| t.a == 1,
            DiracType { a: 1, b: 0 },
        ),
        Parity::Odd => (
            |t| t.a == 0,
            |t| t.b == 1,
            DiracType { a: 0, b: 1 },
        ),
    };
    let graph_samples = stratification.samples_where(graph_pred);
    let fol_samples = stratification.samples_where(fol_pred);
    let gluing_samples = stratification.samples_where(|t| t == gluing_type);
    let union_count = stratification
        .samples_where(|t| graph_pred(t) || fol_pred(t))
        .len();
    let covering_ok =
        stratification.ambiguous_count() == 0 && union_count == grid.total_points();
    let overlap: Vec<usize> = graph_samples
        .iter()
        .copied()
        .filter(|i| fol_samples.binary_search(i).is_ok())
        .collect();
    let overlap_equals_gluing = overlap == gluing_samples;

    let (graph_side, foliated_side) = match parity {
        Parity::Even => {
            let graph_data = extract_two_form(&p, &q, domain).map(|omega| {
                let d_omega_num = d_of_rational_two_form(&omega, domain);
                let closed = d_omega_num.is_zero();
                GraphSideData::TwoForm {
                    omega,
                    d_omega_num,
                    closed,
                }
            });
            let fol_data = kernel_line_field(&p, &q, domain).map(|kernel_field| {
                let dist = Distribution::new(vec![kernel_field.clone()])
                    .expect("rank-1 distribution");
                let generators = admissible_generators(&dist)?;
                let hams: Option<Vec<_>> = generators
                    .iter()
                    .map(|g| hamiltonian_field(&p, &q, g, domain))
                    .collect();
                let Some(hams) = hams else {
                    return Err(FrameError::DegenerateExtraction {
                        what: "hamiltonian field of an admissible generator",
                    });
                };
                let mut brackets = Vec::new();
                for i in 0..generators.len() {
                    for j in (i + 1)..generators.len() {
                        let val = apply_rational_field(
                            &hams[i],
                            &RationalScalar::from_field(generators[j].clone()),
                        );
                        brackets.push((i, j, val));
                    }
                }
                let jacobi_ok = foliated_jacobi(&hams, &generators);
                Ok(FoliatedSideData::Poisson {
                    kernel_field,
                    generators,
                    brackets,
                    jacobi_ok,
                })
            });
            let fol_data = match fol_data {
                None => None,
                Some(Ok(d)) => Some(d),
                Some(Err(e)) => return Err(e),
            };
            (
                GraphSideReport {
                    label: "presymplectic",
                    sample_indices: graph_samples,
                    data: graph_data,
                },
                FoliatedSideReport {
                    label: "foliated-poisson",
                    sample_indices: fol_samples,
                    data: fol_data,
                },
            )
        }
        Parity::Odd => {
            let graph_data = extract_bivector(&p, &q, domain).map(|pi| {
                let gens =
                    super::poisson::coordinate_generators(domain).expect("generators exist");
                let jacobi_ok = rational_jacobi(&pi, &gens);
                GraphSideData::Bivector { pi, jacobi_ok }
            });
            // Δ should be a plane field: det P must vanish identically.
            if !symbolic_det(&p, domain).is_zero() {
                return Err(FrameError::DegenerateExtraction {
                    what: "odd frame with full-rank tangent projection",
                });
            }
            let fol_data = find_spanning_pair(&p, domain).map(|(i, j)| {
                let v1 = VectorField::from_components(
                    domain,
                    (0..3).map(|r| p[r][i].clone()).collect(),
                )
                .expect("component count");
                let v2 = VectorField::from_components(
                    domain,
                    (0..3).map(|r| p[r][j].clone()).collect(),
                )
                .expect("component count");
                // ε(v₁, v₂) = −B[i][j], B = PᵀQ
                let mut b_ij = ScalarField::zero(domain);
                for r in 0..3 {
                    b_ij = &b_ij + &(&p[r][i] * &q[r][j]);
                }
                let eps = b_ij.neg();
                let involutive_over_ring =
                    match Distribution::new(vec![v1.clone(), v2.clone()]) {
                        Ok(dist) => dist.is_involutive(),
                        Err(_) => false,
                    };
                let d_eps_zero = if involutive_over_ring {
                    let dist = Distribution::new(vec![v1.clone(), v2.clone()])
                        .expect("built above");
                    let eps_form = FoliatedForm::from_components(
                        domain,
                        2,
                        2,
                        vec![(vec![0, 1], eps.clone())],
                    )
                    .expect("valid foliated form");
                    foliated_d(&dist, &eps_form)
                        .map(|d| d.is_zero())
                        .unwrap_or(true)
                } else {
                    // Top foliated degree on a rank-2 foliation: zero by
                    // the Cartan formula; integrability over the region is
                    // certified only in the fraction layer.
                    rational_span_membership(&v1, &v2).unwrap_or(false)
                };
                FoliatedSideData::Presymplectic {
                    spanning_sections: (i, j),
                    spanning: (v1, v2),
                    eps,
                    d_eps_zero,
                    involutive_over_ring,
                }
            });
            (
                GraphSideReport {
                    label: "poisson",
                    sample_indices: graph_samples,
                    data: graph_data,
                },
                FoliatedSideReport {
                    label: "foliated-presymplectic",
                    sample_indices: fol_samples,
                    data: fol_data,
                },
            )
        }
    };

    Ok(ThreefoldDecomposition {
        parity,
        stratification,
        gluing_type,
        gluing_sample_indices: gluing_samples,
        covering_ok,
        overlap_equals_gluing,
        graph_side,
        foliated_side,
    })
}

/// A pair of frame-section indices whose vector parts span the plane field.
fn find_spanning_pair(p: &[Vec<ScalarField>], domain: Domain) -> Option<(usize, usize)> {
    for i in 0..3usize {
        for j in (i + 1)..3 {
            for r1 in 0..3usize {
                for r2 in (r1 + 1)..3 {
                    let sub = vec![
                        vec![p[r1][i].clone(), p[r1][j].clone()],
                        vec![p[r2][i].clone(), p[r2][j].clone()],
                    ];
                    if !symbolic_det(&sub, domain).is_zero() {
                        return Some((i, j));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diracfield::frame::{graph_frame_bivector, graph_frame_two_form};
    use crate::diracfield::poisson::Bivector;
    use crate::symcalc::GSection;

    fn coord(d: Domain, i: usize) -> ScalarField {
        ScalarField::coordinate(d, i).unwrap()
    }

    fn grid9(d: Domain) -> GridSpec {
        GridSpec::uniform(d, 9, None).unwrap()
    }

    /// The even example frame: (Δ̂ = span{dx, dy}, Π = x ∂x∧∂y), sections
    /// {x∂y + dx, −x∂x + dy, ∂z}.
    fn even_example_frame(d: Domain) -> DiracFrame {
        let zero = || ScalarField::zero(d);
        let one = || ScalarField::one(d);
        let x = coord(d, 0);
        let e1 = GSection::from_components(
            d,
            vec![zero(), x.clone(), zero()],
            vec![one(), zero(), zero()],
        )
        .unwrap();
        let e2 = GSection::from_components(
            d,
            vec![x.neg(), zero(), zero()],
            vec![zero(), one(), zero()],
        )
        .unwrap();
        let e3 = GSection::from_components(
            d,
            vec![zero(), zero(), one()],
            vec![zero(), zero(), zero()],
        )
        .unwrap();
        DiracFrame::build(vec![e1, e2, e3]).unwrap()
    }

    #[test]
    fn constant_graph_is_pure_gluing_stratum() {
        let d = Domain::affine(3);
        let omega = KForm::from_components(d, 2, vec![(vec![0, 1], ScalarField::one(d))]).unwrap();
        let frame = graph_frame_two_form(&omega).unwrap();
        let dec = decompose_threefold(&frame, &grid9(d)).unwrap();
        assert_eq!(dec.parity, Parity::Even);
        assert_eq!(dec.graph_side.sample_indices.len(), 729);
        assert_eq!(dec.foliated_side.sample_indices.len(), 729);
        assert_eq!(dec.gluing_sample_indices.len(), 729);
        assert!(dec.covering_ok);
        assert!(dec.overlap_equals_gluing);
        match dec.graph_side.data.unwrap() {
            GraphSideData::TwoForm { omega, closed, .. } => {
                assert!(closed);
                assert_eq!(
                    RationalScalar::new(omega.num[0][1].clone(), omega.den.clone()),
                    RationalScalar::from_field(ScalarField::one(d))
                );
            }
            other => panic!("expected a 2-form, got {other:?}"),
        }
    }

    #[test]
    fn even_example_decomposition() {
        let d = Domain::affine(3);
        let frame = even_example_frame(d);
        let dec = decompose_threefold(&frame, &grid9(d)).unwrap();
        assert_eq!(dec.parity, Parity::Even);
        // x = 0 plane: type (1,2), 81 samples; elsewhere (1,0)
        assert_eq!(
            dec.stratification.count_of(DiracType { a: 1, b: 2 }),
            81
        );
        assert_eq!(
            dec.stratification.count_of(DiracType { a: 1, b: 0 }),
            648
        );
        assert_eq!(dec.foliated_side.sample_indices.len(), 729);
        assert_eq!(dec.graph_side.sample_indices.len(), 648);
        assert_eq!(dec.gluing_sample_indices.len(), 648);
        assert!(dec.covering_ok);
        assert!(dec.overlap_equals_gluing);
        match dec.foliated_side.data.unwrap() {
            FoliatedSideData::Poisson {
                kernel_field,
                generators,
                brackets,
                jacobi_ok,
            } => {
                // kernel line field spans ∂z
                assert!(kernel_field.component(0).is_zero());
                assert!(kernel_field.component(1).is_zero());
                assert!(!kernel_field.component(2).is_zero());
                assert_eq!(generators, vec![coord(d, 0), coord(d, 1)]);
                assert_eq!(brackets.len(), 1);
                // {x, y} = x
                assert_eq!(
                    brackets[0].2,
                    RationalScalar::from_field(coord(d, 0))
                );
                assert!(jacobi_ok);
            }
            other => panic!("expected Poisson data, got {other:?}"),
        }
        // the presymplectic side carries ω = −(1/x) dx∧dy: applying it to the
        // Hamiltonian field x∂y of the coordinate x returns dx
        match dec.graph_side.data.unwrap() {
            GraphSideData::TwoForm { omega, closed, .. } => {
                assert!(closed);
                let e = omega.entry(0, 1);
                assert_eq!(e.num, ScalarField::one(d).neg());
                assert_eq!(e.den, coord(d, 0));
            }
            other => panic!("expected a 2-form, got {other:?}"),
        }
    }

    #[test]
    fn odd_example_decomposition() {
        let d = Domain::affine(3);
        let pi = Bivector::from_upper(d, vec![((0, 1), coord(d, 2))]).unwrap();
        let frame = graph_frame_bivector(&pi).unwrap();
        let dec = decompose_threefold(&frame, &grid9(d)).unwrap();
        assert_eq!(dec.parity, Parity::Odd);
        assert_eq!(dec.gluing_type, DiracType { a: 0, b: 1 });
        // Poisson region everywhere, foliated-presymplectic region off z = 0
        assert_eq!(dec.graph_side.sample_indices.len(), 729);
        assert_eq!(dec.foliated_side.sample_indices.len(), 648);
        assert_eq!(dec.gluing_sample_indices.len(), 648);
        assert!(dec.covering_ok);
        assert!(dec.overlap_equals_gluing);
        match dec.graph_side.data.unwrap() {
            GraphSideData::Bivector { pi, jacobi_ok } => {
                assert!(jacobi_ok);
                assert_eq!(pi.entry(0, 1), RationalScalar::from_field(coord(d, 2)));
            }
            other => panic!("expected a bivector, got {other:?}"),
        }
        match dec.foliated_side.data.unwrap() {
            FoliatedSideData::Presymplectic {
                eps,
                d_eps_zero,
                involutive_over_ring,
                ..
            } => {
                assert!(d_eps_zero);
                assert!(involutive_over_ring);
                assert!(!eps.is_zero());
            }
            other => panic!("expected presymplectic data, got {other:?}"),
        }
    }

    #[test]
    fn non_dirac_frames_are_rejected() {
        let d = Domain::affine(3);
        let omega = KForm::from_components(d, 2, vec![(vec![0, 1], coord(d, 2))]).unwrap();
        let frame = graph_frame_two_form(&omega).unwrap();
        let err = decompose_threefold(&frame, &grid9(d)).unwrap_err();
        assert!(matches!(err, FrameError::NotDirac { .. }));
    }

    #[test]
    fn dimension_guard() {
        let d2 = Domain::affine(2);
        let omega =
            KForm::from_components(d2, 2, vec![(vec![0, 1], ScalarField::one(d2))]).unwrap();
        let frame = graph_frame_two_form(&omega).unwrap();
        let grid = GridSpec::uniform(d2, 5, None).unwrap();
        assert!(matches!(
            decompose_threefold(&frame, &grid),
            Err(FrameError::WrongDimension { .. })
        ));
    }
}

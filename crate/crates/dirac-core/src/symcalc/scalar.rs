//! Exact scalar coefficient rings.
//!
//! On `ℝⁿ` the coefficients are polynomials over the rationals. On `Tⁿ` they
//! are trigonometric polynomials stored in the complex-exponential basis:
//! finite sums `Σ c_k e^{i k·x}` with Gaussian-rational `c_k`, frequencies
//! `k ∈ (½ℤ)ⁿ` (kept doubled as integers), and the reality constraint
//! `c_{−k} = conj(c_k)`. Half-integer frequencies exist so that sign-twisted
//! torus frames have global coefficient functions. Products combine
//! frequencies exactly, which is what makes identities like
//! `cos²x + sin²x = 1` hold on the nose.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CalcError;
use crate::rat::{fmt_rat, rat, rat_int, Rat};

pub type CRat = Complex<Rat>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    /// `ℝⁿ` with polynomial coefficients.
    Affine,
    /// `Tⁿ = (ℝ/2πℤ)ⁿ` with trigonometric-polynomial coefficients.
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Domain {
    pub kind: DomainKind,
    pub dim: usize,
}

impl Domain {
    pub fn affine(dim: usize) -> Self {
        Self {
            kind: DomainKind::Affine,
            dim,
        }
    }

    pub fn torus(dim: usize) -> Self {
        Self {
            kind: DomainKind::Torus,
            dim,
        }
    }

    pub fn coordinate_name(&self, axis: usize) -> String {
        format!("x{}", axis + 1)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DomainKind::Affine => write!(f, "R^{}", self.dim),
            DomainKind::Torus => write!(f, "T^{}", self.dim),
        }
    }
}

/// Parity pattern of the doubled frequencies of one axis across all terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqParity {
    /// No terms at all (the zero field): compatible with anything.
    Zero,
    /// All doubled frequencies even: strictly `2π`-periodic along the axis.
    Even,
    /// All doubled frequencies odd: flips sign under `x ↦ x + 2π`.
    Odd,
    /// Mixed parities: not even projectively periodic.
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Poly(BTreeMap<Vec<u32>, Rat>),
    Trig(BTreeMap<Vec<i64>, CRat>),
}

/// An element of the coefficient ring of a [`Domain`], in canonical form:
/// terms sorted by exponent or frequency, no zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    domain: Domain,
    repr: Repr,
}

fn c_zero() -> CRat {
    Complex::new(Rat::zero(), Rat::zero())
}

fn c_conj(c: &CRat) -> CRat {
    Complex::new(c.re.clone(), -c.im.clone())
}

impl ScalarField {
    fn poly(domain: Domain, map: BTreeMap<Vec<u32>, Rat>) -> Self {
        debug_assert_eq!(domain.kind, DomainKind::Affine);
        let map = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self {
            domain,
            repr: Repr::Poly(map),
        }
    }

    fn trig(domain: Domain, map: BTreeMap<Vec<i64>, CRat>) -> Self {
        debug_assert_eq!(domain.kind, DomainKind::Torus);
        let map: BTreeMap<_, _> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        debug_assert!(
            map.iter().all(|(k, c)| {
                let neg: Vec<i64> = k.iter().map(|h| -h).collect();
                map.get(&neg) == Some(&c_conj(c))
            }),
            "reality constraint violated"
        );
        Self {
            domain,
            repr: Repr::Trig(map),
        }
    }

    pub fn zero(domain: Domain) -> Self {
        match domain.kind {
            DomainKind::Affine => Self::poly(domain, BTreeMap::new()),
            DomainKind::Torus => Self::trig(domain, BTreeMap::new()),
        }
    }

    pub fn constant(domain: Domain, value: Rat) -> Self {
        if value.is_zero() {
            return Self::zero(domain);
        }
        match domain.kind {
            DomainKind::Affine => {
                let mut map = BTreeMap::new();
                map.insert(vec![0; domain.dim], value);
                Self::poly(domain, map)
            }
            DomainKind::Torus => {
                let mut map = BTreeMap::new();
                map.insert(vec![0; domain.dim], Complex::new(value, Rat::zero()));
                Self::trig(domain, map)
            }
        }
    }

    pub fn one(domain: Domain) -> Self {
        Self::constant(domain, Rat::one())
    }

    /// The coordinate function `xᵢ`. Affine domains only: coordinates are not
    /// periodic, so they are not elements of the torus ring.
    pub fn coordinate(domain: Domain, axis: usize) -> Result<Self, CalcError> {
        if axis >= domain.dim {
            return Err(CalcError::AxisOutOfRange {
                axis,
                dim: domain.dim,
            });
        }
        if domain.kind != DomainKind::Affine {
            return Err(CalcError::UnsupportedOnDomain {
                what: "coordinate function",
                domain: domain.kind,
            });
        }
        let mut exp = vec![0; domain.dim];
        exp[axis] = 1;
        let mut map = BTreeMap::new();
        map.insert(exp, Rat::one());
        Ok(Self::poly(domain, map))
    }

    fn wave(domain: Domain, axis: usize, freq: &Rat, coef_pos: CRat) -> Result<Self, CalcError> {
        if axis >= domain.dim {
            return Err(CalcError::AxisOutOfRange {
                axis,
                dim: domain.dim,
            });
        }
        if domain.kind != DomainKind::Torus {
            return Err(CalcError::UnsupportedOnDomain {
                what: "trigonometric term",
                domain: domain.kind,
            });
        }
        let doubled = freq * rat_int(2);
        if !doubled.denom().is_one() {
            return Err(CalcError::NotHalfInteger);
        }
        let h = doubled
            .numer()
            .to_i64()
            .ok_or(CalcError::NotHalfInteger)?;
        if h == 0 {
            // cos(0) = 1, sin(0) = 0: the constant is the real part.
            return Ok(Self::constant(domain, coef_pos.re * rat_int(2)));
        }
        let mut pos = vec![0i64; domain.dim];
        pos[axis] = h;
        let neg: Vec<i64> = pos.iter().map(|x| -x).collect();
        let mut map = BTreeMap::new();
        map.insert(neg, c_conj(&coef_pos));
        map.insert(pos, coef_pos);
        Ok(Self::trig(domain, map))
    }

    /// `cos(k·xᵢ)` with `k` a half-integer.
    pub fn cosine(domain: Domain, axis: usize, freq: &Rat) -> Result<Self, CalcError> {
        Self::wave(domain, axis, freq, Complex::new(rat(1, 2), Rat::zero()))
    }

    /// `sin(k·xᵢ)` with `k` a half-integer.
    pub fn sine(domain: Domain, axis: usize, freq: &Rat) -> Result<Self, CalcError> {
        Self::wave(domain, axis, freq, Complex::new(Rat::zero(), rat(-1, 2)))
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Poly(m) => m.is_empty(),
            Repr::Trig(m) => m.is_empty(),
        }
    }

    /// The constant value, if the field is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_zero() {
            return Some(Rat::zero());
        }
        match &self.repr {
            Repr::Poly(m) => {
                (m.len() == 1).then(|| m.get(&vec![0; self.domain.dim]).cloned())?
            }
            Repr::Trig(m) => (m.len() == 1)
                .then(|| m.get(&vec![0; self.domain.dim]).map(|c| c.re.clone()))?,
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CalcError> {
        if self.domain != other.domain {
            return Err(CalcError::DomainMismatch);
        }
        match (&self.repr, &other.repr) {
            (Repr::Poly(a), Repr::Poly(b)) => {
                let mut out = a.clone();
                for (k, c) in b {
                    let entry = out.entry(k.clone()).or_insert_with(Rat::zero);
                    *entry += c;
                }
                Ok(Self::poly(self.domain, out))
            }
            (Repr::Trig(a), Repr::Trig(b)) => {
                let mut out = a.clone();
                for (k, c) in b {
                    let entry = out.entry(k.clone()).or_insert_with(c_zero);
                    *entry = entry.clone() + c.clone();
                }
                Ok(Self::trig(self.domain, out))
            }
            _ => Err(CalcError::DomainMismatch),
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CalcError> {
        if self.domain != other.domain {
            return Err(CalcError::DomainMismatch);
        }
        match (&self.repr, &other.repr) {
            (Repr::Poly(a), Repr::Poly(b)) => {
                let mut out: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
                for (ka, ca) in a {
                    for (kb, cb) in b {
                        let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                        let entry = out.entry(k).or_insert_with(Rat::zero);
                        *entry += ca * cb;
                    }
                }
                Ok(Self::poly(self.domain, out))
            }
            (Repr::Trig(a), Repr::Trig(b)) => {
                let mut out: BTreeMap<Vec<i64>, CRat> = BTreeMap::new();
                for (ka, ca) in a {
                    for (kb, cb) in b {
                        let k: Vec<i64> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                        let entry = out.entry(k).or_insert_with(c_zero);
                        *entry = entry.clone() + ca.clone() * cb.clone();
                    }
                }
                Ok(Self::trig(self.domain, out))
            }
            _ => Err(CalcError::DomainMismatch),
        }
    }

    pub fn neg(&self) -> Self {
        match &self.repr {
            Repr::Poly(m) => Self::poly(
                self.domain,
                m.iter().map(|(k, c)| (k.clone(), -c.clone())).collect(),
            ),
            Repr::Trig(m) => Self::trig(
                self.domain,
                m.iter()
                    .map(|(k, c)| (k.clone(), -c.clone()))
                    .collect(),
            ),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CalcError> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, factor: &Rat) -> Self {
        if factor.is_zero() {
            return Self::zero(self.domain);
        }
        match &self.repr {
            Repr::Poly(m) => Self::poly(
                self.domain,
                m.iter().map(|(k, c)| (k.clone(), c * factor)).collect(),
            ),
            Repr::Trig(m) => Self::trig(
                self.domain,
                m.iter()
                    .map(|(k, c)| (k.clone(), c.clone() * Complex::new(factor.clone(), Rat::zero())))
                    .collect(),
            ),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::one(self.domain);
        for _ in 0..exp {
            out = &out * self;
        }
        out
    }

    /// `∂f/∂xᵢ`. On the torus, the derivative of `e^{i k·x}` is `i kᵢ e^{i k·x}`.
    pub fn partial(&self, axis: usize) -> Self {
        assert!(axis < self.domain.dim, "axis out of range");
        match &self.repr {
            Repr::Poly(m) => {
                let mut out = BTreeMap::new();
                for (k, c) in m {
                    if k[axis] == 0 {
                        continue;
                    }
                    let mut k2 = k.clone();
                    k2[axis] -= 1;
                    let entry = out.entry(k2).or_insert_with(Rat::zero);
                    *entry += c * rat_int(k[axis] as i64);
                }
                Self::poly(self.domain, out)
            }
            Repr::Trig(m) => {
                let mut out = BTreeMap::new();
                for (k, c) in m {
                    if k[axis] == 0 {
                        continue;
                    }
                    // multiply by i·(h/2)
                    let f = rat(k[axis], 2);
                    let factor = Complex::new(Rat::zero(), f);
                    out.insert(k.clone(), c.clone() * factor);
                }
                Self::trig(self.domain, out)
            }
        }
    }

    /// Floating-point evaluation; torus coordinates are radians.
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.domain.dim, "point has wrong dimension");
        match &self.repr {
            Repr::Poly(m) => m
                .iter()
                .map(|(k, c)| {
                    let mono: f64 = k
                        .iter()
                        .zip(point)
                        .map(|(&e, &x)| x.powi(e as i32))
                        .product();
                    crate::rat::to_f64(c) * mono
                })
                .sum(),
            Repr::Trig(m) => m
                .iter()
                .map(|(k, c)| {
                    let theta: f64 = k
                        .iter()
                        .zip(point)
                        .map(|(&h, &x)| (h as f64) / 2.0 * x)
                        .sum();
                    crate::rat::to_f64(&c.re) * theta.cos()
                        - crate::rat::to_f64(&c.im) * theta.sin()
                })
                .sum(),
        }
    }

    /// Exact evaluation at a rational point; polynomials only.
    pub fn evaluate_exact(&self, point: &[Rat]) -> Option<Rat> {
        assert_eq!(point.len(), self.domain.dim, "point has wrong dimension");
        match &self.repr {
            Repr::Poly(m) => {
                let mut total = Rat::zero();
                for (k, c) in m {
                    let mut mono = c.clone();
                    for (&e, x) in k.iter().zip(point) {
                        for _ in 0..e {
                            mono *= x;
                        }
                    }
                    total += mono;
                }
                Some(total)
            }
            Repr::Trig(_) => None,
        }
    }

    /// Exact division in the coefficient ring: `Some(q)` iff `self = q · den`.
    pub fn exact_div(&self, den: &Self) -> Option<Self> {
        if self.domain != den.domain || den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero(self.domain));
        }
        match (&self.repr, &den.repr) {
            (Repr::Poly(f), Repr::Poly(g)) => {
                poly_exact_div(f, g).map(|q| Self::poly(self.domain, q))
            }
            (Repr::Trig(f), Repr::Trig(g)) => {
                trig_exact_div(f, g, self.domain.dim).map(|q| Self::trig(self.domain, q))
            }
            _ => None,
        }
    }

    /// Is the field literally `2π`-periodic along every axis (all doubled
    /// frequencies even)? Trivially true on affine domains.
    pub fn is_strictly_periodic(&self) -> bool {
        match &self.repr {
            Repr::Poly(_) => true,
            Repr::Trig(m) => m.keys().all(|k| k.iter().all(|h| h % 2 == 0)),
        }
    }

    /// The sign behavior under `xᵢ ↦ xᵢ + 2π`, read off the doubled
    /// frequencies of the axis.
    pub fn axis_frequency_parity(&self, axis: usize) -> FreqParity {
        match &self.repr {
            Repr::Poly(_) => FreqParity::Even,
            Repr::Trig(m) => {
                if m.is_empty() {
                    return FreqParity::Zero;
                }
                let mut even = false;
                let mut odd = false;
                for k in m.keys() {
                    if k[axis].rem_euclid(2) == 0 {
                        even = true;
                    } else {
                        odd = true;
                    }
                }
                match (even, odd) {
                    (true, false) => FreqParity::Even,
                    (false, true) => FreqParity::Odd,
                    _ => FreqParity::Mixed,
                }
            }
        }
    }

    /// Term count; used by tests and heuristics.
    pub fn term_count(&self) -> usize {
        match &self.repr {
            Repr::Poly(m) => m.len(),
            Repr::Trig(m) => m.len(),
        }
    }

    /// Sign of the lexicographically leading coefficient; `None` for zero.
    /// Used only to normalize displayed fractions.
    pub(crate) fn leading_coefficient_negative(&self) -> Option<bool> {
        match &self.repr {
            Repr::Poly(m) => m.last_key_value().map(|(_, c)| c.is_negative()),
            Repr::Trig(m) => m.last_key_value().map(|(_, c)| {
                if !c.re.is_zero() {
                    c.re.is_negative()
                } else {
                    c.im.is_negative()
                }
            }),
        }
    }
}

fn poly_exact_div(
    f: &BTreeMap<Vec<u32>, Rat>,
    g: &BTreeMap<Vec<u32>, Rat>,
) -> Option<BTreeMap<Vec<u32>, Rat>> {
    let (glead, gcoef) = g.last_key_value()?;
    let mut rem = f.clone();
    let mut quot = BTreeMap::new();
    while let Some((rlead, rcoef)) = rem.last_key_value() {
        // Lex-leading monomial of the remainder must be divisible by the
        // divisor's; otherwise the remainder is nonzero and the division fails.
        if rlead.iter().zip(glead).any(|(r, g)| r < g) {
            return None;
        }
        let texp: Vec<u32> = rlead.iter().zip(glead).map(|(r, g)| r - g).collect();
        let tcoef = rcoef / gcoef;
        // rem -= t * g
        for (k, c) in g {
            let kk: Vec<u32> = k.iter().zip(&texp).map(|(a, b)| a + b).collect();
            let entry = rem.entry(kk).or_insert_with(Rat::zero);
            *entry -= &tcoef * c;
        }
        rem.retain(|_, c| !c.is_zero());
        quot.insert(texp, tcoef);
    }
    Some(quot)
}

fn trig_exact_div(
    f: &BTreeMap<Vec<i64>, CRat>,
    g: &BTreeMap<Vec<i64>, CRat>,
    dim: usize,
) -> Option<BTreeMap<Vec<i64>, CRat>> {
    // Laurent division: shift both to nonnegative exponents, divide as
    // polynomials over the Gaussian rationals, shift the quotient back.
    let shift = |m: &BTreeMap<Vec<i64>, CRat>| -> (Vec<i64>, BTreeMap<Vec<i64>, CRat>) {
        let mins: Vec<i64> = (0..dim)
            .map(|j| m.keys().map(|k| k[j]).min().unwrap_or(0))
            .collect();
        let shifted = m
            .iter()
            .map(|(k, c)| {
                let kk: Vec<i64> = k.iter().zip(&mins).map(|(a, b)| a - b).collect();
                (kk, c.clone())
            })
            .collect();
        (mins, shifted)
    };
    let (fmin, fsh) = shift(f);
    let (gmin, gsh) = shift(g);
    let (glead, gcoef) = gsh.last_key_value()?;
    let mut rem = fsh;
    let mut quot: BTreeMap<Vec<i64>, CRat> = BTreeMap::new();
    while let Some((rlead, rcoef)) = rem.last_key_value() {
        if rlead.iter().zip(glead).any(|(r, g)| r < g) {
            return None;
        }
        let texp: Vec<i64> = rlead.iter().zip(glead).map(|(r, g)| r - g).collect();
        let tcoef = rcoef.clone() / gcoef.clone();
        for (k, c) in &gsh {
            let kk: Vec<i64> = k.iter().zip(&texp).map(|(a, b)| a + b).collect();
            let entry = rem.entry(kk).or_insert_with(c_zero);
            *entry = entry.clone() - tcoef.clone() * c.clone();
        }
        rem.retain(|_, c| !c.is_zero());
        quot.insert(texp, tcoef);
    }
    // Undo the shifts: f = u^fmin·F, g = u^gmin·G, so q = u^(fmin−gmin)·Q.
    let out = quot
        .into_iter()
        .map(|(k, c)| {
            let kk: Vec<i64> = k
                .iter()
                .zip(fmin.iter().zip(&gmin))
                .map(|(x, (a, b))| x + a - b)
                .collect();
            (kk, c)
        })
        .collect();
    Some(out)
}

impl std::ops::Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: Self) -> ScalarField {
        self.try_add(rhs).expect("scalar fields on mismatched domains")
    }
}

impl std::ops::Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: Self) -> ScalarField {
        self.try_sub(rhs).expect("scalar fields on mismatched domains")
    }
}

impl std::ops::Mul for &ScalarField {
    type Output = ScalarField;
    fn mul(self, rhs: Self) -> ScalarField {
        self.try_mul(rhs).expect("scalar fields on mismatched domains")
    }
}

impl std::ops::Neg for &ScalarField {
    type Output = ScalarField;
    fn neg(self) -> ScalarField {
        ScalarField::neg(self)
    }
}

// ---------------------------------------------------------------------------
// printing
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum TrigKind {
    Cos,
    Sin,
}

/// One factor `cos(k·xᵢ)` or `sin(k·xᵢ)` with `k > 0` stored doubled.
type TrigFactor = (usize, i64, TrigKind);

fn fmt_freq_arg(doubled: i64, axis: usize) -> String {
    let k = rat(doubled, 2);
    if k.is_one() {
        format!("x{}", axis + 1)
    } else {
        format!("{}*x{}", fmt_rat(&k), axis + 1)
    }
}

/// Expands the trig map into real product terms
/// `coef · Π cos/sin(kⱼ·xⱼ)`, merging duplicates.
fn trig_real_terms(m: &BTreeMap<Vec<i64>, CRat>) -> BTreeMap<Vec<TrigFactor>, Rat> {
    let mut out: BTreeMap<Vec<TrigFactor>, Rat> = BTreeMap::new();
    let mut add = |key: Vec<TrigFactor>, val: Rat| {
        if val.is_zero() {
            return;
        }
        let entry = out.entry(key).or_insert_with(Rat::zero);
        *entry += val;
    };
    for (k, c) in m {
        // Use the representative with positive leading frequency; its
        // conjugate partner is accounted for by the factor 2.
        let first_sign = k.iter().find(|&&h| h != 0).map(|&h| h.signum());
        let Some(sign) = first_sign else {
            add(Vec::new(), c.re.clone());
            continue;
        };
        if sign < 0 {
            continue;
        }
        let axes: Vec<usize> = (0..k.len()).filter(|&j| k[j] != 0).collect();
        // Π (cos + i sin) over the active axes: one product term per subset
        // of axes contributing a sine factor.
        for mask in 0..(1u32 << axes.len()) {
            let mut factors: Vec<TrigFactor> = Vec::new();
            let mut neg_sines = 0;
            let mut sines = 0;
            for (pos, &j) in axes.iter().enumerate() {
                let h = k[j];
                if mask & (1 << pos) != 0 {
                    sines += 1;
                    if h < 0 {
                        neg_sines += 1;
                    }
                    factors.push((j, h.abs(), TrigKind::Sin));
                } else {
                    factors.push((j, h.abs(), TrigKind::Cos));
                }
            }
            // 2·Re((a+bi)·i^sines), with sign flips for negative sine
            // frequencies.
            let coef = match sines % 4 {
                0 => c.re.clone() * rat_int(2),
                1 => -c.im.clone() * rat_int(2),
                2 => -c.re.clone() * rat_int(2),
                _ => c.im.clone() * rat_int(2),
            };
            let coef = if neg_sines % 2 == 1 { -coef } else { coef };
            factors.sort();
            add(factors, coef);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rat, String)> = match &self.repr {
            Repr::Poly(m) => m
                .iter()
                .rev()
                .map(|(k, c)| {
                    let factors: Vec<String> = k
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(j, &e)| {
                            if e == 1 {
                                format!("x{}", j + 1)
                            } else {
                                format!("x{}^{}", j + 1, e)
                            }
                        })
                        .collect();
                    (c.clone(), factors.join("*"))
                })
                .collect(),
            Repr::Trig(m) => trig_real_terms(m)
                .iter()
                .map(|(factors, c)| {
                    let parts: Vec<String> = factors
                        .iter()
                        .map(|&(axis, doubled, kind)| {
                            let name = match kind {
                                TrigKind::Cos => "cos",
                                TrigKind::Sin => "sin",
                            };
                            format!("{}({})", name, fmt_freq_arg(doubled, axis))
                        })
                        .collect();
                    (c.clone(), parts.join("*"))
                })
                .collect(),
        };
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut pieces = Vec::with_capacity(terms.len());
        for (coef, body) in terms {
            let piece = if body.is_empty() {
                fmt_rat(&coef)
            } else if coef.is_one() {
                body
            } else if coef == rat_int(-1) {
                format!("-{body}")
            } else {
                format!("{}*{}", fmt_rat(&coef), body)
            };
            pieces.push(piece);
        }
        let mut out = pieces[0].clone();
        for p in &pieces[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff2() -> Domain {
        Domain::affine(2)
    }

    fn tor1() -> Domain {
        Domain::torus(1)
    }

    fn x() -> ScalarField {
        ScalarField::coordinate(aff2(), 0).unwrap()
    }

    fn y() -> ScalarField {
        ScalarField::coordinate(aff2(), 1).unwrap()
    }

    #[test]
    fn polynomial_derivative() {
        // ∂/∂x (x²y) = 2xy
        let f = &(&x() * &x()) * &y();
        let expected = (&x() * &y()).scale(&rat_int(2));
        assert_eq!(f.partial(0), expected);
    }

    #[test]
    fn trig_derivative() {
        // ∂/∂x cos(x) = −sin(x)
        let c = ScalarField::cosine(tor1(), 0, &rat_int(1)).unwrap();
        let s = ScalarField::sine(tor1(), 0, &rat_int(1)).unwrap();
        assert_eq!(c.partial(0), s.neg());
        assert_eq!(s.partial(0), c);
    }

    #[test]
    fn pythagorean_identity_is_exact() {
        let c = ScalarField::cosine(tor1(), 0, &rat_int(1)).unwrap();
        let s = ScalarField::sine(tor1(), 0, &rat_int(1)).unwrap();
        let sum = &(&c * &c) + &(&s * &s);
        assert_eq!(sum, ScalarField::one(tor1()));
    }

    #[test]
    fn half_integer_frequencies_are_supported() {
        let c = ScalarField::cosine(tor1(), 0, &rat(1, 2)).unwrap();
        assert_eq!(c.axis_frequency_parity(0), FreqParity::Odd);
        assert!(!c.is_strictly_periodic());
        // but cos(x/2)² is periodic
        let sq = &c * &c;
        assert!(sq.is_strictly_periodic());
        assert!(ScalarField::cosine(tor1(), 0, &rat(1, 3)).is_err());
    }

    #[test]
    fn addition_is_canonical() {
        let f = &x() - &x();
        assert!(f.is_zero());
        assert_eq!(f, ScalarField::zero(aff2()));
    }

    #[test]
    fn mixed_domains_error() {
        let f = ScalarField::one(aff2());
        let g = ScalarField::one(Domain::affine(3));
        assert!(matches!(f.try_add(&g), Err(CalcError::DomainMismatch)));
        let h = ScalarField::one(Domain::torus(2));
        assert!(matches!(f.try_mul(&h), Err(CalcError::DomainMismatch)));
    }

    #[test]
    fn evaluation() {
        // (x²y)(2, 3) = 12 exactly
        let f = &(&x() * &x()) * &y();
        assert_eq!(
            f.evaluate_exact(&[rat_int(2), rat_int(3)]),
            Some(rat_int(12))
        );
        assert_eq!(f.evaluate(&[2.0, 3.0]), 12.0);
        // cos(0) = 1
        let c = ScalarField::cosine(tor1(), 0, &rat_int(1)).unwrap();
        assert_eq!(c.evaluate(&[0.0]), 1.0);
        assert_eq!(c.evaluate_exact(&[rat_int(0)]), None);
        // sin(π/2) ≈ 1
        let s = ScalarField::sine(tor1(), 0, &rat_int(1)).unwrap();
        assert!((s.evaluate(&[std::f64::consts::FRAC_PI_2]) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn evaluate_is_multiplicative() {
        let c = ScalarField::cosine(tor1(), 0, &rat(3, 2)).unwrap();
        let s = ScalarField::sine(tor1(), 0, &rat(1, 2)).unwrap();
        let f = &(&c + &s) * &(&c - &s);
        for i in 0..20 {
            let p = [0.3 * i as f64];
            let lhs = f.evaluate(&p);
            let rhs = (&c + &s).evaluate(&p) * (&c - &s).evaluate(&p);
            assert!((lhs - rhs).abs() < 1e-9);
        }
    }

    #[test]
    fn exact_division_polynomials() {
        // (x² − y²) / (x − y) = x + y
        let f = &(&x() * &x()) - &(&y() * &y());
        let g = &x() - &y();
        assert_eq!(f.exact_div(&g), Some(&x() + &y()));
        // x / y fails
        assert_eq!(x().exact_div(&y()), None);
        // 0 / f = 0
        assert!(ScalarField::zero(aff2()).exact_div(&g).unwrap().is_zero());
        // f / 0 fails
        assert_eq!(f.exact_div(&ScalarField::zero(aff2())), None);
    }

    #[test]
    fn exact_division_trig() {
        let c = ScalarField::cosine(tor1(), 0, &rat(1, 2)).unwrap();
        let s = ScalarField::sine(tor1(), 0, &rat(1, 2)).unwrap();
        // sin(x) = 2 sin(x/2) cos(x/2), so sin(x)/cos(x/2) = 2 sin(x/2)
        let sinx = ScalarField::sine(tor1(), 0, &rat_int(1)).unwrap();
        let q = sinx.exact_div(&c).unwrap();
        assert_eq!(q, s.scale(&rat_int(2)));
        // cos(x) / sin(x/2) fails: cos(x) = 1 − 2sin²(x/2) is not a multiple
        let cosx = ScalarField::cosine(tor1(), 0, &rat_int(1)).unwrap();
        assert_eq!(cosx.exact_div(&s), None);
    }

    #[test]
    fn display_polynomials() {
        let f = &(&(&x() * &x()) - &y()).scale(&rat(3, 2)) + &ScalarField::one(aff2());
        assert_eq!(f.to_string(), "3/2*x1^2 - 3/2*x2 + 1");
        assert_eq!(ScalarField::zero(aff2()).to_string(), "0");
    }

    #[test]
    fn display_trig() {
        let c = ScalarField::cosine(tor1(), 0, &rat(1, 2)).unwrap();
        assert_eq!(c.to_string(), "cos(1/2*x1)");
        let d = Domain::torus(2);
        let a = ScalarField::cosine(d, 0, &rat_int(1)).unwrap();
        let b = ScalarField::sine(d, 1, &rat_int(2)).unwrap();
        let f = &a * &b;
        assert_eq!(f.to_string(), "cos(x1)*sin(2*x2)");
    }
}

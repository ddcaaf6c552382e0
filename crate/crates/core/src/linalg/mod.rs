//! Dense complex matrices and the tensor-product plumbing used everywhere
//! else in the crate.
//!
//! Basis vectors of a tensor product are flattened row-major in the first
//! factor: for local dimension `n`, `e_i ⊗ e_k` (1-based) sits at composite
//! index `n·(i−1) + k`. With this rule the printed 9×9 matrices of the model
//! can be entered verbatim. The public indexing API ([`ComplexMatrix::entry`])
//! is 1-based; everything internal is 0-based.

mod spectrum;

pub use spectrum::{eigenvalues, spectra_match, Spectrum};

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default upper bound on any Hilbert-space dimension we will materialize densely.
pub const DEFAULT_DIM_CAP: usize = 6561;

pub type C64 = Complex64;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Dense square matrix over complex doubles.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    inner: DMatrix<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexMatrix({}x{}) ", self.dim(), self.dim())?;
        fmt::Debug::fmt(&self.inner, f)
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries, rejecting non-finite values.
    pub fn new(dim: usize, entries: Vec<C64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "matrix dimension must be positive".into(),
            ));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if let Some(pos) = entries
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: pos / dim + 1,
                col: pos % dim + 1,
            });
        }
        Ok(Self {
            inner: DMatrix::from_row_slice(dim, dim, &entries),
        })
    }

    /// Real row-major entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| re(x)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            inner: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            inner: DMatrix::identity(dim, dim),
        }
    }

    pub fn diagonal(values: &[C64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, v) in values.iter().enumerate() {
            m.inner[(i, i)] = *v;
        }
        m
    }

    /// Matrix unit `e_{ij}` of size `n` (1-based indices).
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n);
        m.inner[(i - 1, j - 1)] = re(1.0);
        m
    }

    /// Builds from a closure over 0-based `(row, col)`.
    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Self {
            inner: DMatrix::from_fn(dim, dim, f),
        }
    }

    pub(crate) fn from_inner(inner: DMatrix<C64>) -> Self {
        debug_assert!(inner.is_square());
        Self { inner }
    }

    pub fn as_inner(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    /// 1-based entry access.
    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.inner[(row - 1, col - 1)]
    }

    /// 1-based entry mutation.
    pub fn set_entry(&mut self, row: usize, col: usize, value: C64) {
        self.inner[(row - 1, col - 1)] = value;
    }

    #[inline]
    pub(crate) fn at(&self, row: usize, col: usize) -> C64 {
        self.inner[(row, col)]
    }

    #[inline]
    pub(crate) fn at_mut(&mut self, row: usize, col: usize) -> &mut C64 {
        &mut self.inner[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self::from_inner(self.inner.adjoint())
    }

    pub fn transpose(&self) -> Self {
        Self::from_inner(self.inner.transpose())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self::from_inner(&self.inner * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(re(s))
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.inner.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.inner.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.inner
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn try_inverse(&self) -> Result<Self> {
        self.inner
            .clone()
            .try_inverse()
            .map(Self::from_inner)
            .ok_or(Error::Singular("matrix inverse"))
    }

    /// Solves `self · X = rhs`.
    pub fn solve(&self, rhs: &ComplexMatrix) -> Result<Self> {
        self.inner
            .clone()
            .lu()
            .solve(&rhs.inner)
            .map(Self::from_inner)
            .ok_or(Error::Singular("linear solve"))
    }

    pub fn commutator(&self, other: &ComplexMatrix) -> Self {
        self * other - other * self
    }

    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| self.inner[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self
            .inner
            .clone()
            .singular_values()
            .iter()
            .copied()
            .collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    /// Numerical rank: singular values above `rel_tol · ‖M‖_F`.
    pub fn rank(&self, rel_tol: f64) -> usize {
        let cutoff = rel_tol * self.frobenius_norm().max(f64::MIN_POSITIVE);
        self.singular_values()
            .into_iter()
            .filter(|&s| s > cutoff)
            .count()
    }

    /// Restricts the action to the first `cols` basis vectors (the columns),
    /// returning a `dim × cols` block flattened row-major.
    pub(crate) fn leading_columns(&self, cols: usize) -> Vec<C64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * cols);
        for i in 0..n {
            for j in 0..cols {
                out.push(self.inner[(i, j)]);
            }
        }
        out
    }
}

impl<'a> Mul<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_inner(&self.inner * &rhs.inner)
    }
}

impl Mul for ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_inner(self.inner * rhs.inner)
    }
}

impl<'a> Add<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_inner(&self.inner + &rhs.inner)
    }
}

impl Add for ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_inner(self.inner + rhs.inner)
    }
}

impl<'a> Sub<&'a ComplexMatrix> for &'a ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &'a ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_inner(&self.inner - &rhs.inner)
    }
}

impl Sub for ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::from_inner(self.inner - rhs.inner)
    }
}

impl Neg for ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix::from_inner(-self.inner)
    }
}

/// Composite (0-based) index of `e_i ⊗ e_k` for 1-based `i, k`.
#[inline]
pub fn flatten(n: usize, i: usize, k: usize) -> usize {
    n * (i - 1) + (k - 1)
}

/// Inverse of [`flatten`]; returns 1-based `(i, k)`.
#[inline]
pub fn unflatten(n: usize, a: usize) -> (usize, usize) {
    (a / n + 1, a % n + 1)
}

/// Kronecker product, row-major in the first factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix::from_inner(a.inner.kronecker(&b.inner))
}

pub fn kron_all(factors: &[&ComplexMatrix]) -> ComplexMatrix {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| kron(&acc, f))
}

/// The swap `𝒫 (e_i ⊗ e_k) = e_k ⊗ e_i` on `ℂⁿ ⊗ ℂⁿ`.
pub fn permutation_operator(n: usize) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(n * n);
    for i in 1..=n {
        for k in 1..=n {
            *p.at_mut(flatten(n, k, i), flatten(n, i, k)) = re(1.0);
        }
    }
    p
}

/// Relative Frobenius residual `‖a − b‖ / max(1, ‖a‖, ‖b‖)`.
pub fn residual_norm(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let diff = (a - b).frobenius_norm();
    Ok(diff / 1f64.max(a.frobenius_norm()).max(b.frobenius_norm()))
}

/// Same relative residual for rectangular blocks given as flat slices.
pub(crate) fn residual_slices(a: &[C64], b: &[C64]) -> f64 {
    let norm = |v: &[C64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let diff = a
        .iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt();
    diff / 1f64.max(norm(a)).max(norm(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Open,
    Periodic,
}

fn checked_power(local_dim: usize, slots: usize, cap: usize) -> Result<usize> {
    let dim = (0..slots).try_fold(1usize, |acc, _| acc.checked_mul(local_dim));
    match dim {
        Some(d) if d <= cap => Ok(d),
        Some(d) => Err(Error::DimensionCapExceeded { dim: d, cap }),
        None => Err(Error::DimensionCapExceeded {
            dim: usize::MAX,
            cap,
        }),
    }
}

/// Embeds a two-site operator into an `slots`-fold tensor product acting on
/// the (0-based, distinct, any order) slots `first` and `second`. The first
/// tensor factor of `op` acts on `first`.
pub fn embed_pair(
    op: &ComplexMatrix,
    first: usize,
    second: usize,
    slots: usize,
    local_dim: usize,
    cap: usize,
) -> Result<ComplexMatrix> {
    let n = local_dim;
    if op.dim() != n * n {
        return Err(Error::DimensionMismatch {
            expected: n * n,
            found: op.dim(),
        });
    }
    if first >= slots || second >= slots || first == second {
        return Err(Error::SiteOutOfRange {
            site: first.max(second) + 1,
            length: slots,
        });
    }
    let dim = checked_power(n, slots, cap)?;
    let stride = |slot: usize| n.pow((slots - 1 - slot) as u32);
    let (s1, s2) = (stride(first), stride(second));
    let mut out = ComplexMatrix::zeros(dim);
    for row in 0..dim {
        let a = (row / s1) % n;
        let b = (row / s2) % n;
        let base = row - a * s1 - b * s2;
        for x in 0..n {
            for y in 0..n {
                let v = op.at(a * n + b, x * n + y);
                if v != C64::new(0.0, 0.0) {
                    *out.at_mut(row, base + x * s1 + y * s2) += v;
                }
            }
        }
    }
    Ok(out)
}

/// Cyclic shift `S (v₁ ⊗ v₂ ⊗ … ⊗ v_L) = v_L ⊗ v₁ ⊗ … ⊗ v_{L−1}`: the
/// content of slot `j` moves to slot `j + 1 (mod L)`.
pub fn cyclic_shift(length: usize, local_dim: usize, cap: usize) -> Result<ComplexMatrix> {
    let dim = checked_power(local_dim, length, cap)?;
    let mut s = ComplexMatrix::zeros(dim);
    let top = local_dim.pow(length as u32 - 1);
    for col in 0..dim {
        // Last digit becomes the first.
        let last = col % local_dim;
        let row = last * top + col / local_dim;
        *s.at_mut(row, col) = re(1.0);
    }
    Ok(s)
}

/// `I^{⊗(site−1)} ⊗ h ⊗ I^{⊗(length−site−1)}` for 1-based `site`; with a
/// periodic boundary `site = length` gives the wrap term acting on the slot
/// pair (length, 1), obtained by conjugating the (length−1, length) term with
/// the cyclic shift.
pub fn embed_two_site(
    h: &ComplexMatrix,
    site: usize,
    length: usize,
    local_dim: usize,
    boundary: Boundary,
    cap: usize,
) -> Result<ComplexMatrix> {
    if h.dim() != local_dim * local_dim {
        return Err(Error::DimensionMismatch {
            expected: local_dim * local_dim,
            found: h.dim(),
        });
    }
    let max_site = match boundary {
        Boundary::Open => length.saturating_sub(1),
        Boundary::Periodic => length,
    };
    if length < 2 || site == 0 || site > max_site {
        return Err(Error::SiteOutOfRange { site, length });
    }
    checked_power(local_dim, length, cap)?;
    if site < length {
        let left = ComplexMatrix::identity(local_dim.pow(site as u32 - 1));
        let right = ComplexMatrix::identity(local_dim.pow((length - site - 1) as u32));
        return Ok(kron_all(&[&left, h, &right]));
    }
    // S maps slot L−1 → L and L → 1, so S·h_{L−1,L}·S⁻¹ acts on (L, 1).
    let bulk = embed_two_site(h, length - 1, length, local_dim, Boundary::Open, cap)?;
    let s = cyclic_shift(length, local_dim, cap)?;
    Ok(&(&s * &bulk) * &s.adjoint())
}

/// Traces out the leading factor of dimension `lead` from a matrix on
/// `ℂ^lead ⊗ ℂ^rest`.
pub fn partial_trace_first(m: &ComplexMatrix, lead: usize) -> Result<ComplexMatrix> {
    if lead == 0 || !m.dim().is_multiple_of(lead) {
        return Err(Error::DimensionMismatch {
            expected: lead,
            found: m.dim(),
        });
    }
    let rest = m.dim() / lead;
    Ok(ComplexMatrix::from_fn(rest, |i, j| {
        (0..lead).map(|a| m.at(a * rest + i, a * rest + j)).sum()
    }))
}

/// Traces out the trailing factor of dimension `tail`.
pub fn partial_trace_last(m: &ComplexMatrix, tail: usize) -> Result<ComplexMatrix> {
    if tail == 0 || !m.dim().is_multiple_of(tail) {
        return Err(Error::DimensionMismatch {
            expected: tail,
            found: m.dim(),
        });
    }
    let lead = m.dim() / tail;
    Ok(ComplexMatrix::from_fn(lead, |i, j| {
        (0..tail).map(|a| m.at(i * tail + a, j * tail + a)).sum()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::unit(n, i, j)
    }

    #[test]
    fn flatten_round_trips() {
        for i in 1..=3 {
            for k in 1..=3 {
                assert_eq!(unflatten(3, flatten(3, i, k)), (i, k));
            }
        }
    }

    #[test]
    fn kron_identity() {
        let i3 = ComplexMatrix::identity(3);
        assert_eq!(kron(&i3, &i3), ComplexMatrix::identity(9));
    }

    #[test]
    fn kron_matrix_units_follow_flattening() {
        let m = kron(&e(3, 1, 2), &e(3, 2, 1));
        assert_eq!(m.entry(2, 4), re(1.0));
        assert_eq!(m.max_abs(), 1.0);
        assert_eq!(m.frobenius_norm(), 1.0);
        // general rule: e_ij ⊗ e_kl → (n(i−1)+k, n(j−1)+l)
        let m = kron(&e(3, 3, 2), &e(3, 1, 2));
        assert_eq!(m.entry(7, 5), re(1.0));
    }

    #[test]
    fn kron_diagonal() {
        let a = ComplexMatrix::diagonal(&[re(2.0), re(1.0), re(1.0)]);
        let m = kron(&a, &ComplexMatrix::identity(3));
        let expected: Vec<f64> = vec![2., 2., 2., 1., 1., 1., 1., 1., 1.];
        for (i, v) in expected.iter().enumerate() {
            assert_eq!(m.entry(i + 1, i + 1), re(*v));
        }
        assert_eq!(m.frobenius_norm(), (3.0f64 * 4.0 + 6.0).sqrt());
    }

    #[test]
    fn permutation_small_cases() {
        assert_eq!(permutation_operator(1), ComplexMatrix::identity(1));
        let p2 = permutation_operator(2);
        let expected = ComplexMatrix::from_real_rows(
            4,
            &[
                1., 0., 0., 0., 0., 0., 1., 0., 0., 1., 0., 0., 0., 0., 0., 1.,
            ],
        )
        .unwrap();
        assert_eq!(p2, expected);
        let p3 = permutation_operator(3);
        assert_eq!(&p3 * &p3, ComplexMatrix::identity(9));
        assert_eq!(p3.trace(), re(3.0));
    }

    #[test]
    fn permutation_is_sum_of_units() {
        let n = 3;
        let mut sum = ComplexMatrix::zeros(9);
        for i in 1..=n {
            for k in 1..=n {
                sum = sum + kron(&e(n, i, k), &e(n, k, i));
            }
        }
        assert_eq!(sum, permutation_operator(3));
    }

    #[test]
    fn residual_examples() {
        let i9 = ComplexMatrix::identity(9);
        assert_eq!(residual_norm(&i9, &i9).unwrap(), 0.0);
        assert!((residual_norm(&i9, &i9.scale_re(2.0)).unwrap() - 0.5).abs() < 1e-15);
        let r = ComplexMatrix::from_fn(9, |i, j| re((i * 9 + j) as f64 * 0.1 + 1.0));
        let mut r2 = r.clone();
        r2.set_entry(1, 1, r.entry(1, 1) + re(1e-12));
        let got = residual_norm(&r, &r2).unwrap();
        let expected = 1e-12 / r.frobenius_norm().max(r2.frobenius_norm());
        assert!((got - expected).abs() < 1e-3 * expected);
        assert!(residual_norm(&i9, &ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn new_rejects_bad_input() {
        assert!(matches!(
            ComplexMatrix::new(2, vec![re(1.0); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            ComplexMatrix::new(2, vec![re(1.0), re(f64::NAN), re(0.0), re(0.0)]),
            Err(Error::NonFinite { row: 1, col: 2 })
        ));
    }

    #[test]
    fn embed_open_examples() {
        let h = ComplexMatrix::from_fn(9, |i, j| re((i + 2 * j) as f64));
        let got = embed_two_site(&h, 1, 2, 3, Boundary::Open, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(got, h);
        let i9 = ComplexMatrix::identity(9);
        let got = embed_two_site(&i9, 2, 3, 3, Boundary::Open, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(got, ComplexMatrix::identity(27));
    }

    #[test]
    fn embed_rejects_bad_sites_and_cap() {
        let p = permutation_operator(3);
        assert!(matches!(
            embed_two_site(&p, 3, 3, 3, Boundary::Open, DEFAULT_DIM_CAP),
            Err(Error::SiteOutOfRange { .. })
        ));
        assert!(matches!(
            embed_two_site(&p, 0, 3, 3, Boundary::Periodic, DEFAULT_DIM_CAP),
            Err(Error::SiteOutOfRange { .. })
        ));
        assert!(matches!(
            embed_two_site(&p, 1, 9, 3, Boundary::Open, DEFAULT_DIM_CAP),
            Err(Error::DimensionCapExceeded { dim: 19683, .. })
        ));
    }

    /// Index of `e_{a} ⊗ e_{b} ⊗ e_{c}` with 1-based labels.
    fn basis3(a: usize, b: usize, c: usize) -> usize {
        9 * (a - 1) + 3 * (b - 1) + (c - 1)
    }

    #[test]
    fn periodic_wrap_swaps_last_and_first_slot() {
        let p = permutation_operator(3);
        let wrap = embed_two_site(&p, 3, 3, 3, Boundary::Periodic, DEFAULT_DIM_CAP).unwrap();
        let mut v = vec![re(0.0); 27];
        v[basis3(1, 2, 3)] = re(1.0);
        let out = wrap.apply(&v);
        for (i, z) in out.iter().enumerate() {
            let expected = if i == basis3(3, 2, 1) { 1.0 } else { 0.0 };
            assert_eq!(*z, re(expected), "component {i}");
        }
    }

    #[test]
    fn wrap_term_matches_direct_embedding() {
        let h = ComplexMatrix::from_fn(9, |i, j| {
            c(i as f64 - 0.3 * j as f64, (i * j) as f64 * 0.01)
        });
        for length in 2..=4 {
            let wrap =
                embed_two_site(&h, length, length, 3, Boundary::Periodic, DEFAULT_DIM_CAP).unwrap();
            let direct = embed_pair(&h, length - 1, 0, length, 3, DEFAULT_DIM_CAP).unwrap();
            assert!(residual_norm(&wrap, &direct).unwrap() < 1e-15);
        }
        // L = 2 periodic wrap is 𝒫h𝒫
        let p = permutation_operator(3);
        let wrap = embed_two_site(&h, 2, 2, 3, Boundary::Periodic, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(wrap, &(&p * &h) * &p);
    }

    #[test]
    fn embed_pair_matches_kron_for_adjacent_slots() {
        let h = ComplexMatrix::from_fn(4, |i, j| re((3 * i + j) as f64));
        let i2 = ComplexMatrix::identity(2);
        let direct = embed_pair(&h, 1, 2, 4, 2, DEFAULT_DIM_CAP).unwrap();
        assert_eq!(direct, kron_all(&[&i2, &h, &i2]));
    }

    #[test]
    fn cyclic_shift_moves_slots_forward() {
        let s = cyclic_shift(3, 3, DEFAULT_DIM_CAP).unwrap();
        let mut v = vec![re(0.0); 27];
        v[basis3(1, 2, 3)] = re(1.0);
        let out = s.apply(&v);
        assert_eq!(out[basis3(3, 1, 2)], re(1.0));
        let s3 = &(&s * &s) * &s;
        assert_eq!(s3, ComplexMatrix::identity(27));
    }

    #[test]
    fn partial_traces() {
        let a = ComplexMatrix::from_fn(3, |i, j| re((i + 4 * j) as f64));
        let b = ComplexMatrix::from_fn(2, |i, j| c(i as f64, j as f64 + 1.0));
        let ab = kron(&a, &b);
        let tr_first = partial_trace_first(&ab, 3).unwrap();
        assert!(residual_norm(&tr_first, &b.scale(a.trace())).unwrap() < 1e-15);
        let tr_last = partial_trace_last(&ab, 2).unwrap();
        assert!(residual_norm(&tr_last, &a.scale(b.trace())).unwrap() < 1e-15);
        // tr_aux 𝒫 = I
        let p = permutation_operator(3);
        assert_eq!(
            partial_trace_first(&p, 3).unwrap(),
            ComplexMatrix::identity(3)
        );
    }

    #[test]
    fn rank_by_singular_values() {
        let m = ComplexMatrix::diagonal(&[re(1.0), re(2.0), re(0.0), re(1e-13)]);
        assert_eq!(m.rank(1e-8), 2);
    }
}

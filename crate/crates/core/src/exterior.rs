//! Exact exterior algebra over an orthonormal coframe.
//!
//! A k-form is a coefficient vector over the C(n,k) monomials
//! ω^{i1}∧…∧ω^{ik}, i1 < … < ik, stored densely in lexicographic order of
//! the increasing index tuples. Monomials are represented as bitmasks, signs
//! are computed by counting transpositions, and the Hodge star uses the
//! convention ∗ω^I = sign(I, I^c)·ω^{I^c} with sign(I, I^c) the permutation
//! sign of the concatenation (I, I^c) relative to (1..n). With that choice
//! ∗∗ = (−1)^{k(n−k)} is a theorem of the implementation rather than an
//! input.
//!
//! All values are immutable after construction; every operation is a pure
//! function of its inputs.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;
use std::sync::OnceLock;

pub const MAX_DIM: usize = 16;

// ---------------------------------------------------------------------------
// monomial combinatorics
// ---------------------------------------------------------------------------

fn binomial_table() -> &'static [[u32; MAX_DIM + 1]; MAX_DIM + 1] {
    static TABLE: OnceLock<[[u32; MAX_DIM + 1]; MAX_DIM + 1]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut c = [[0u32; MAX_DIM + 1]; MAX_DIM + 1];
        for n in 0..=MAX_DIM {
            c[n][0] = 1;
            for k in 1..=n {
                c[n][k] = c[n - 1][k - 1] + if k <= n - 1 { c[n - 1][k] } else { 0 };
            }
        }
        c
    })
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        binomial_table()[n][k] as usize
    }
}

/// All k-subsets of {0..n-1} as bitmasks, in lexicographic order of the
/// increasing index tuples.
pub fn basis_masks(n: usize, k: usize) -> &'static [u32] {
    static CACHE: OnceLock<Vec<Vec<Vec<u32>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let mut all = Vec::with_capacity(MAX_DIM + 1);
        for n in 0..=MAX_DIM {
            let mut per_k = Vec::with_capacity(n + 1);
            for k in 0..=n {
                per_k.push(enumerate_subsets(n, k));
            }
            all.push(per_k);
        }
        all
    });
    &cache[n][k]
}

fn enumerate_subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(binomial(n, k));
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 {
        return vec![0];
    }
    if k > n {
        return out;
    }
    loop {
        let mask = idx.iter().fold(0u32, |m, &i| m | (1 << i));
        out.push(mask);
        // lexicographic successor of the increasing tuple
        let mut t = k;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            if idx[t] < n - (k - t) {
                idx[t] += 1;
                for s in t + 1..k {
                    idx[s] = idx[s - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Lexicographic rank of a k-subset bitmask among all k-subsets of {0..n-1}.
pub fn subset_rank(n: usize, mask: u32) -> usize {
    let k = mask.count_ones() as usize;
    let mut rank = 0usize;
    let mut prev = 0usize; // next admissible element
    let mut t = 0usize;
    for i in 0..n {
        if mask & (1 << i) != 0 {
            for c in prev..i {
                rank += binomial(n - 1 - c, k - 1 - t);
            }
            prev = i + 1;
            t += 1;
        }
    }
    rank
}

/// Parity of the merge of two disjoint ascending tuples: the number of pairs
/// (i, j) with i ∈ a, j ∈ b, i > j. Returns +1.0 or -1.0.
fn merge_sign(a: u32, b: u32) -> f64 {
    let mut inversions = 0u32;
    let mut bb = b;
    while bb != 0 {
        let j = bb.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        bb &= bb - 1;
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign picked up by removing index `c` from monomial `mask`: (−1)^t where t
/// is the position of c within the ascending tuple.
fn removal_sign(mask: u32, c: usize) -> f64 {
    let below = (mask & ((1u32 << c) - 1)).count_ones();
    if below % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

// ---------------------------------------------------------------------------
// frames
// ---------------------------------------------------------------------------

/// An orthonormal coframe of dimension n, optionally carrying one scalar
/// weight per direction (Hessian eigenvalues, root weights β(T), …).
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    n: usize,
    labels: Vec<String>,
    weights: Option<Vec<f64>>,
}

impl Frame {
    pub fn new(n: usize, labels: Vec<String>, weights: Option<Vec<f64>>) -> Result<Arc<Self>> {
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimensionTooLarge(n));
        }
        if labels.len() != n {
            return Err(Error::FrameMismatch(format!(
                "{} labels for dimension {n}",
                labels.len()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(Error::FrameMismatch("duplicate covector labels".into()));
        }
        if let Some(w) = &weights {
            if w.len() != n {
                return Err(Error::FrameMismatch(format!(
                    "{} weights for dimension {n}",
                    w.len()
                )));
            }
        }
        Ok(Arc::new(Frame { n, labels, weights }))
    }

    /// Plain frame with labels w1..wn and no weights.
    pub fn euclidean(n: usize) -> Result<Arc<Self>> {
        let labels = (1..=n).map(|i| format!("w{i}")).collect();
        Frame::new(n, labels, None)
    }

    pub fn with_weights(n: usize, weights: Vec<f64>) -> Result<Arc<Self>> {
        let labels = (1..=n).map(|i| format!("w{i}")).collect();
        Frame::new(n, labels, Some(weights))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }
}

// ---------------------------------------------------------------------------
// forms
// ---------------------------------------------------------------------------

/// A k-form over a fixed frame: dense coefficients over the lexicographic
/// monomial basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FormVector {
    frame: Arc<Frame>,
    degree: usize,
    coeffs: Vec<f64>,
}

impl FormVector {
    pub fn zero(frame: Arc<Frame>, degree: usize) -> Result<Self> {
        let n = frame.dim();
        if degree > n {
            return Err(Error::DegreeOutOfRange { k: degree, n });
        }
        let coeffs = vec![0.0; binomial(n, degree)];
        Ok(FormVector { frame, degree, coeffs })
    }

    pub fn from_coeffs(frame: Arc<Frame>, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        let n = frame.dim();
        if degree > n {
            return Err(Error::DegreeOutOfRange { k: degree, n });
        }
        if coeffs.len() != binomial(n, degree) {
            return Err(Error::FrameMismatch(format!(
                "expected {} coefficients for degree {degree} in dimension {n}, got {}",
                binomial(n, degree),
                coeffs.len()
            )));
        }
        Ok(FormVector { frame, degree, coeffs })
    }

    /// Basis covector ω^c (0-based index).
    pub fn covector(frame: Arc<Frame>, c: usize) -> Result<Self> {
        let n = frame.dim();
        if c >= n {
            return Err(Error::IndexOutOfRange { index: c, n });
        }
        let mut f = FormVector::zero(frame, 1)?;
        f.coeffs[c] = 1.0;
        Ok(f)
    }

    /// Basis monomial ω^{i1}∧…∧ω^{ik} for ascending indices (0-based).
    pub fn monomial(frame: Arc<Frame>, indices: &[usize]) -> Result<Self> {
        let n = frame.dim();
        let mut mask = 0u32;
        for &i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            mask |= 1 << i;
        }
        if mask.count_ones() as usize != indices.len() {
            return Err(Error::FrameMismatch("repeated index in monomial".into()));
        }
        let mut f = FormVector::zero(frame, indices.len())?;
        let r = subset_rank(n, mask);
        f.coeffs[r] = 1.0;
        Ok(f)
    }

    /// Covector with general components Σ v_i ω^i.
    pub fn covector_from(frame: Arc<Frame>, v: &[f64]) -> Result<Self> {
        let n = frame.dim();
        if v.len() != n {
            return Err(Error::FrameMismatch(format!(
                "covector of length {} in dimension {n}",
                v.len()
            )));
        }
        FormVector::from_coeffs(frame, 1, v.to_vec())
    }

    pub fn frame(&self) -> &Arc<Frame> {
        &self.frame
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Inner product with respect to the orthonormal monomial basis.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.check_frame(other)?;
        if self.degree != other.degree {
            return Ok(0.0);
        }
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        for c in &mut out.coeffs {
            *c *= s;
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_frame(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                got: other.degree,
                want: self.degree,
            });
        }
        let mut out = self.clone();
        for (c, o) in out.coeffs.iter_mut().zip(&other.coeffs) {
            *c += o;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(-1.0))
    }

    fn check_frame(&self, other: &Self) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::FrameMismatch(format!(
                "dimensions {} vs {}",
                self.frame.dim(),
                other.frame.dim()
            )))
        }
    }
}

impl fmt::Display for FormVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.frame.dim();
        let masks = basis_masks(n, self.degree);
        let mut first = true;
        for (r, &mask) in masks.iter().enumerate() {
            let c = self.coeffs[r];
            if c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}·")?;
            let mut m = mask;
            let mut started = false;
            while m != 0 {
                let i = m.trailing_zeros() as usize;
                if started {
                    write!(f, "∧")?;
                }
                write!(f, "{}", self.frame.labels()[i])?;
                started = true;
                m &= m - 1;
            }
            if !started {
                write!(f, "1")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

/// Graded-anticommutative wedge product.
pub fn wedge(a: &FormVector, b: &FormVector) -> Result<FormVector> {
    a.check_frame(b)?;
    let n = a.frame.dim();
    let (j, k) = (a.degree, b.degree);
    if j + k > n {
        return Err(Error::DegreeOverflow { j, k, n });
    }
    let mut out = FormVector::zero(a.frame.clone(), j + k)?;
    let masks_a = basis_masks(n, j);
    let masks_b = basis_masks(n, k);
    for (ra, &ma) in masks_a.iter().enumerate() {
        let ca = a.coeffs[ra];
        if ca == 0.0 {
            continue;
        }
        for (rb, &mb) in masks_b.iter().enumerate() {
            let cb = b.coeffs[rb];
            if cb == 0.0 || ma & mb != 0 {
                continue;
            }
            let sign = merge_sign(ma, mb);
            let r = subset_rank(n, ma | mb);
            out.coeffs[r] += sign * ca * cb;
        }
    }
    Ok(out)
}

/// Left exterior multiplication e(ω^c) by the basis covector with 0-based
/// index `c`.
pub fn ext_mul(c: usize, f: &FormVector) -> Result<FormVector> {
    let n = f.frame.dim();
    if c >= n {
        return Err(Error::IndexOutOfRange { index: c, n });
    }
    if f.degree + 1 > n {
        return Err(Error::DegreeOverflow { j: 1, k: f.degree, n });
    }
    let mut out = FormVector::zero(f.frame.clone(), f.degree + 1)?;
    let masks = basis_masks(n, f.degree);
    let bit = 1u32 << c;
    for (r, &mask) in masks.iter().enumerate() {
        let coeff = f.coeffs[r];
        if coeff == 0.0 || mask & bit != 0 {
            continue;
        }
        let sign = removal_sign(mask | bit, c);
        out.coeffs[subset_rank(n, mask | bit)] += sign * coeff;
    }
    Ok(out)
}

/// Contraction e*(ω^c): the adjoint of `ext_mul` with respect to the
/// orthonormal inner product.
pub fn contract(c: usize, f: &FormVector) -> Result<FormVector> {
    let n = f.frame.dim();
    if c >= n {
        return Err(Error::IndexOutOfRange { index: c, n });
    }
    if f.degree == 0 {
        return FormVector::zero(f.frame.clone(), 0);
    }
    let mut out = FormVector::zero(f.frame.clone(), f.degree - 1)?;
    let masks = basis_masks(n, f.degree);
    let bit = 1u32 << c;
    for (r, &mask) in masks.iter().enumerate() {
        let coeff = f.coeffs[r];
        if coeff == 0.0 || mask & bit == 0 {
            continue;
        }
        let sign = removal_sign(mask, c);
        out.coeffs[subset_rank(n, mask & !bit)] += sign * coeff;
    }
    Ok(out)
}

/// Contraction by a covector with general components: Σ v_c e*(ω^c).
pub fn contract_covector(v: &[f64], f: &FormVector) -> Result<FormVector> {
    let n = f.frame.dim();
    if v.len() != n {
        return Err(Error::FrameMismatch(format!(
            "covector of length {} in dimension {n}",
            v.len()
        )));
    }
    if f.degree == 0 {
        return FormVector::zero(f.frame.clone(), 0);
    }
    let mut out = FormVector::zero(f.frame.clone(), f.degree - 1)?;
    let masks = basis_masks(n, f.degree);
    for (r, &mask) in masks.iter().enumerate() {
        let coeff = f.coeffs[r];
        if coeff == 0.0 {
            continue;
        }
        let mut m = mask;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            if v[c] != 0.0 {
                let sign = removal_sign(mask, c);
                out.coeffs[subset_rank(n, mask & !(1 << c))] += sign * coeff * v[c];
            }
            m &= m - 1;
        }
    }
    Ok(out)
}

/// Sign of the star involution on degree k in dimension n: (−1)^{k(n−k)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StarSign {
    pub k: usize,
    pub n: usize,
    pub sign: i32,
}

impl StarSign {
    pub fn new(n: usize, k: usize) -> Self {
        let sign = if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
        StarSign { k, n, sign }
    }
}

/// Hodge star with the ascending-frame orientation.
pub fn hodge_star(f: &FormVector) -> Result<FormVector> {
    let n = f.frame.dim();
    let k = f.degree;
    let mut out = FormVector::zero(f.frame.clone(), n - k)?;
    let masks = basis_masks(n, k);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    for (r, &mask) in masks.iter().enumerate() {
        let coeff = f.coeffs[r];
        if coeff == 0.0 {
            continue;
        }
        let comp = full & !mask;
        let sign = merge_sign(mask, comp);
        out.coeffs[subset_rank(n, comp)] += sign * coeff;
    }
    Ok(out)
}

/// The nonlinear star ∗_p f = ∗(|f|^{p−2} f). Satisfies
/// |∗_p f|^{p/(p−1)} = |f|^p and ∗_{p/(p−1)}∘∗_p = (−1)^{k(n−k)} exactly.
pub fn nonlinear_star(f: &FormVector, p: f64) -> Result<FormVector> {
    if p <= 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let norm = f.norm();
    if norm == 0.0 {
        return hodge_star(f);
    }
    let star = hodge_star(f)?;
    Ok(star.scaled(norm.powf(p - 2.0)))
}

/// Extremes of the diagonal quadratic form Q(h) = Σ_a c_a |e*(ω^a)h|² over
/// unit k-forms. Q is diagonal on monomials, so the extremes are subset sums:
/// min = sum of the k smallest weights, max = sum of the k largest. Returns
/// (min, max, argmin indices, argmax indices); ties resolve to the lowest
/// indices for determinism.
pub fn diagonal_form_extremes(
    frame: &Frame,
    k: usize,
) -> Result<(f64, f64, Vec<usize>, Vec<usize>)> {
    let weights = frame.weights().ok_or(Error::MissingWeights)?;
    let n = frame.dim();
    if k > n {
        return Err(Error::DegreeOutOfRange { k, n });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weights[a].partial_cmp(&weights[b]).unwrap().then(a.cmp(&b)));
    let argmin: Vec<usize> = order[..k].to_vec();
    let argmax: Vec<usize> = order[n - k..].to_vec();
    let min: f64 = argmin.iter().map(|&i| weights[i]).sum();
    let max: f64 = argmax.iter().map(|&i| weights[i]).sum();
    Ok((min, max, argmin, argmax))
}

/// min over unit k-forms of Σ_a c_a (1/p − |e*(ω^a)h|²)
/// = (1/p)·Σ c − max subset sum. A strictly positive value certifies the
/// weighted defect inequality with that value as the margin.
pub fn weighted_defect(frame: &Frame, k: usize, p: f64) -> Result<f64> {
    if p <= 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    let weights = frame.weights().ok_or(Error::MissingWeights)?;
    let total: f64 = weights.iter().sum();
    let (_, max, _, _) = diagonal_form_extremes(frame, k)?;
    Ok(total / p - max)
}

/// Pointwise boundary identity for a maximal-root weight profile at p = 2.
///
/// The frame must carry weights in {0, 1, 2} with exactly one weight-2
/// direction μ, and φ must have degree (Σ weights)/2 − 1. Under those
/// hypotheses
///
///   Σ_a w_a (½|φ|² − |e*(ω^a)φ|²)
///     = |ω^μ ∧ φ|² + Σ_{w_a = 0} |e*(ω^a)φ|²
///
/// identically; the return value is |LHS − RHS|, evaluated from the two
/// sides independently.
pub fn boundary_identity_residual(frame: &Arc<Frame>, mu: usize, phi: &FormVector) -> Result<f64> {
    let weights = frame.weights().ok_or(Error::MissingWeights)?;
    let n = frame.dim();
    if phi.frame() != frame {
        return Err(Error::FrameMismatch("identity frame".into()));
    }
    if mu >= n || weights[mu] != 2.0 {
        return Err(Error::BoundaryIdentity(
            "weight-2 direction at the given index".into(),
        ));
    }
    for &w in weights {
        if w != 0.0 && w != 1.0 && w != 2.0 {
            return Err(Error::BoundaryIdentity("weights in {0,1,2}".into()));
        }
    }
    if weights.iter().filter(|&&w| w == 2.0).count() != 1 {
        return Err(Error::BoundaryIdentity("a unique weight-2 direction".into()));
    }
    let total: f64 = weights.iter().sum();
    let expected_degree = (total / 2.0 - 1.0) as usize;
    if phi.degree() != expected_degree {
        return Err(Error::BoundaryIdentity(format!(
            "a form of degree {expected_degree}"
        )));
    }

    let phi_sq = phi.norm_sq();
    let mut lhs = 0.0;
    for (a, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let contr = contract(a, phi)?.norm_sq();
        lhs += w * (0.5 * phi_sq - contr);
    }

    let mut rhs = ext_mul(mu, phi)?.norm_sq();
    for (a, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            rhs += contract(a, phi)?.norm_sq();
        }
    }
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{prop_assert, prop_assume, proptest};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn frame(n: usize) -> Arc<Frame> {
        Frame::euclidean(n).unwrap()
    }

    fn random_form(fr: &Arc<Frame>, k: usize, rng: &mut impl Rng) -> FormVector {
        let dim = binomial(fr.dim(), k);
        let coeffs: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        FormVector::from_coeffs(fr.clone(), k, coeffs).unwrap()
    }

    #[test]
    fn subset_enumeration_is_lexicographic() {
        let masks = basis_masks(4, 2);
        let tuples: Vec<Vec<u32>> = masks
            .iter()
            .map(|&m| (0..4).filter(|i| m & (1 << i) != 0).collect())
            .collect();
        assert_eq!(
            tuples,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        for (r, &m) in masks.iter().enumerate() {
            assert_eq!(subset_rank(4, m), r);
        }
    }

    #[test]
    fn wedge_basis_cases() {
        let fr = frame(3);
        let w1 = FormVector::covector(fr.clone(), 0).unwrap();
        let w2 = FormVector::covector(fr.clone(), 1).unwrap();
        let w12 = FormVector::monomial(fr.clone(), &[0, 1]).unwrap();
        assert_eq!(wedge(&w1, &w2).unwrap(), w12);
        assert!(wedge(&w1, &w1).unwrap().norm() == 0.0);
        let sum = w1.add(&w2).unwrap();
        assert_eq!(wedge(&sum, &w2).unwrap(), w12);
    }

    #[test]
    fn ext_mul_signs() {
        let fr = frame(3);
        let w2 = FormVector::covector(fr.clone(), 1).unwrap();
        let w13 = FormVector::monomial(fr.clone(), &[0, 2]).unwrap();
        // e(ω²)(ω^{13}) = −ω^{123}
        let res = ext_mul(1, &w13).unwrap();
        let w123 = FormVector::monomial(fr.clone(), &[0, 1, 2]).unwrap();
        assert_eq!(res, w123.scaled(-1.0));
        // e(ω¹)(ω²) = ω^{12}
        assert_eq!(
            ext_mul(0, &w2).unwrap(),
            FormVector::monomial(fr.clone(), &[0, 1]).unwrap()
        );
        // e(ω¹)(ω^{13}) = 0
        assert_eq!(ext_mul(0, &w13).unwrap().norm(), 0.0);
    }

    #[test]
    fn contraction_cases() {
        let fr = frame(3);
        let w12 = FormVector::monomial(fr.clone(), &[0, 1]).unwrap();
        assert_eq!(
            contract(0, &w12).unwrap(),
            FormVector::covector(fr.clone(), 1).unwrap()
        );
        assert_eq!(contract(2, &w12).unwrap().norm(), 0.0);
        // e*(ω²)(ω^{12}) = −ω¹
        assert_eq!(
            contract(1, &w12).unwrap(),
            FormVector::covector(fr.clone(), 0).unwrap().scaled(-1.0)
        );
    }

    #[test]
    fn adjointness_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 2..=6 {
            let fr = frame(n);
            for k in 0..n {
                for _ in 0..20 {
                    let a = random_form(&fr, k, &mut rng);
                    let b = random_form(&fr, k + 1, &mut rng);
                    for c in 0..n {
                        let lhs = ext_mul(c, &a).unwrap().inner(&b).unwrap();
                        let rhs = a.inner(&contract(c, &b).unwrap()).unwrap();
                        assert!((lhs - rhs).abs() < 1e-12, "n={n} k={k} c={c}");
                    }
                }
            }
        }
    }

    #[test]
    fn anticommutation_on_all_monomials() {
        // {e(ω^a), e*(ω^b)} = δ_ab on every degree, n ≤ 8
        for n in 1..=8usize {
            let fr = frame(n);
            for k in 0..=n {
                for &mask in basis_masks(n, k) {
                    let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                    let m = FormVector::monomial(fr.clone(), &idx).unwrap();
                    for a in 0..n {
                        for b in 0..n {
                            // e(a)e*(b) + e*(b)e(a), guarding the top degree
                            let t1 = if k >= 1 {
                                ext_mul(a, &contract(b, &m).unwrap()).ok()
                            } else {
                                None
                            };
                            let t2 = if k < n {
                                Some(contract(b, &ext_mul(a, &m).unwrap()).unwrap())
                            } else {
                                None
                            };
                            let mut acc = FormVector::zero(fr.clone(), k).unwrap();
                            if let Some(t) = t1 {
                                acc = acc.add(&t).unwrap();
                            }
                            if let Some(t) = t2 {
                                acc = acc.add(&t).unwrap();
                            }
                            let expect = if a == b { m.clone() } else { m.scaled(0.0) };
                            let diff = acc.sub(&expect).unwrap().norm();
                            assert!(diff < 1e-14, "n={n} k={k} a={a} b={b}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn star_basics() {
        let fr3 = frame(3);
        let w1 = FormVector::covector(fr3.clone(), 0).unwrap();
        assert_eq!(
            hodge_star(&w1).unwrap(),
            FormVector::monomial(fr3.clone(), &[1, 2]).unwrap()
        );
        let fr2 = frame(2);
        let v1 = FormVector::covector(fr2.clone(), 0).unwrap();
        let ss = hodge_star(&hodge_star(&v1).unwrap()).unwrap();
        assert_eq!(ss, v1.scaled(-1.0)); // (−1)^{1·1}
        let fr4 = frame(4);
        let w12 = FormVector::monomial(fr4.clone(), &[0, 1]).unwrap();
        let s = hodge_star(&w12).unwrap();
        assert!((s.norm_sq() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn star_involution_and_isometry_all_monomials() {
        for n in 1..=8usize {
            let fr = frame(n);
            for k in 0..=n {
                let expected = StarSign::new(n, k).sign as f64;
                for &mask in basis_masks(n, k) {
                    let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                    let m = FormVector::monomial(fr.clone(), &idx).unwrap();
                    let s = hodge_star(&m).unwrap();
                    assert!((s.norm_sq() - 1.0).abs() < 1e-15);
                    let ss = hodge_star(&s).unwrap();
                    let diff = ss.sub(&m.scaled(expected)).unwrap().norm();
                    assert!(diff < 1e-15, "n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn nonlinear_star_forced_case() {
        // n=3, f = 2ω¹, p=3: ∗_3 f = 4 ω^{23} and ∗_{3/2}(4 ω^{23}) = f
        let fr = frame(3);
        let f = FormVector::covector(fr.clone(), 0).unwrap().scaled(2.0);
        let s = nonlinear_star(&f, 3.0).unwrap();
        let w23 = FormVector::monomial(fr.clone(), &[1, 2]).unwrap();
        assert!(s.sub(&w23.scaled(4.0)).unwrap().norm() < 1e-14);
        let back = nonlinear_star(&s, 1.5).unwrap();
        assert!(back.sub(&f).unwrap().norm() < 1e-14);
        // unit norm: ∗_p f = ∗f
        let u = FormVector::covector(fr.clone(), 1).unwrap();
        assert_eq!(nonlinear_star(&u, 7.3).unwrap(), hodge_star(&u).unwrap());
        // zero maps to zero, bad exponent rejected
        let z = FormVector::zero(fr.clone(), 1).unwrap();
        assert_eq!(nonlinear_star(&z, 2.5).unwrap().norm(), 0.0);
        assert!(nonlinear_star(&u, 1.0).is_err());
    }

    #[test]
    fn degree_count_identity() {
        // Σ_a |e*(ω^a)h|² = k|h|² for any k-form
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=7 {
            let fr = frame(n);
            for k in 0..=n {
                let h = random_form(&fr, k, &mut rng);
                let total: f64 = (0..n)
                    .map(|a| contract(a, &h).unwrap().norm_sq())
                    .sum();
                assert!((total - k as f64 * h.norm_sq()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn extremes_examples() {
        let fr = Frame::with_weights(4, vec![3.0, 1.0, 0.0, 2.0]).unwrap();
        let (min, max, amin, amax) = diagonal_form_extremes(&fr, 2).unwrap();
        assert_eq!((min, max), (1.0, 5.0));
        assert_eq!(amin, vec![2, 1]);
        let mut amax_sorted = amax;
        amax_sorted.sort();
        assert_eq!(amax_sorted, vec![0, 3]);
        let (min0, max0, _, _) = diagonal_form_extremes(&fr, 0).unwrap();
        assert_eq!((min0, max0), (0.0, 0.0));
        let (minn, maxn, _, _) = diagonal_form_extremes(&fr, 4).unwrap();
        assert_eq!((minn, maxn), (6.0, 6.0));
    }

    #[test]
    fn extremes_vs_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let n = rng.gen_range(2..=6);
            let weights: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..3.0)).collect();
            let fr = Frame::with_weights(n, weights.clone()).unwrap();
            for k in 1..n {
                let (min, max, _, _) = diagonal_form_extremes(&fr, k).unwrap();
                let mut seen_min: f64 = f64::INFINITY;
                let mut seen_max: f64 = f64::NEG_INFINITY;
                // monomials achieve the bounds; random unit forms stay inside
                for &mask in basis_masks(n, k) {
                    let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                    let m = FormVector::monomial(fr.clone(), &idx).unwrap();
                    let q: f64 = (0..n)
                        .map(|a| weights[a] * contract(a, &m).unwrap().norm_sq())
                        .sum();
                    seen_min = seen_min.min(q);
                    seen_max = seen_max.max(q);
                }
                for _ in 0..2000 {
                    let mut h = random_form(&fr, k, &mut rng);
                    let nm = h.norm();
                    if nm < 1e-9 {
                        continue;
                    }
                    h = h.scaled(1.0 / nm);
                    let q: f64 = (0..n)
                        .map(|a| weights[a] * contract(a, &h).unwrap().norm_sq())
                        .sum();
                    assert!(q >= min - 1e-10 && q <= max + 1e-10);
                }
                assert!((seen_min - min).abs() < 1e-12);
                assert!((seen_max - max).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn weighted_defect_split_a2() {
        // three root directions with weights (2,1,1) plus two flat directions
        let fr = Frame::with_weights(5, vec![2.0, 1.0, 1.0, 0.0, 0.0]).unwrap();
        let d = weighted_defect(&fr, 1, 1.5).unwrap();
        assert!((d - 2.0 / 3.0).abs() < 1e-14);
        let d2 = weighted_defect(&fr, 1, 2.0).unwrap();
        assert!(d2.abs() < 1e-14); // boundary
        let d0 = weighted_defect(&fr, 0, 3.0).unwrap();
        assert!((d0 - 4.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn boundary_identity_a2_cases() {
        // A_2 profile: roots (μ, two weight-1) + two flat directions, dim 5
        let fr = Frame::with_weights(5, vec![2.0, 1.0, 1.0, 0.0, 0.0]).unwrap();
        // φ = ω^μ
        let phi = FormVector::covector(fr.clone(), 0).unwrap();
        assert!(boundary_identity_residual(&fr, 0, &phi).unwrap() < 1e-14);
        // φ = dt¹ (a flat direction)
        let phi = FormVector::covector(fr.clone(), 3).unwrap();
        assert!(boundary_identity_residual(&fr, 0, &phi).unwrap() < 1e-14);
        // random forms
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let phi = random_form(&fr, 1, &mut rng);
            assert!(boundary_identity_residual(&fr, 0, &phi).unwrap() < 1e-10);
        }
        // degree mismatch rejected
        let bad = FormVector::monomial(fr.clone(), &[0, 1]).unwrap();
        assert!(boundary_identity_residual(&fr, 0, &bad).is_err());
    }

    proptest! {
        #[test]
        fn nonlinear_star_duality(n in 2usize..=8, seed in 0u64..1000) {
            let fr = frame(n);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = rng.gen_range(0..=n);
            let f = random_form(&fr, k, &mut rng);
            prop_assume!(f.norm() > 1e-3);
            for &p in &[1.1, 1.5, 2.0, 3.0, 10.0] {
                let pp = p / (p - 1.0);
                let s = nonlinear_star(&f, p).unwrap();
                // |∗_p f|^{p'} = |f|^p
                let lhs = s.norm().powf(pp);
                let rhs = f.norm().powf(p);
                prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
                // ∗_{p'} ∗_p = (−1)^{k(n−k)}
                let back = nonlinear_star(&s, pp).unwrap();
                let sign = StarSign::new(n, k).sign as f64;
                let diff = back.sub(&f.scaled(sign)).unwrap().norm();
                prop_assert!(diff <= 1e-12 * f.norm().max(1.0));
            }
        }

        #[test]
        fn wedge_graded_anticommutative(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(2usize..=6);
            let fr = frame(n);
            let j = rng.gen_range(0..=n);
            let k = rng.gen_range(0..=(n - j));
            let a = random_form(&fr, j, &mut rng);
            let b = random_form(&fr, k, &mut rng);
            let ab = wedge(&a, &b).unwrap();
            let ba = wedge(&b, &a).unwrap();
            let sign = if (j * k) % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!(ab.sub(&ba.scaled(sign)).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn wedge_associative() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let n = rng.gen_range(3usize..=6);
            let fr = frame(n);
            let degs = loop {
                let a = rng.gen_range(0..=2);
                let b = rng.gen_range(0..=2);
                let c = rng.gen_range(0..=2);
                if a + b + c <= n {
                    break (a, b, c);
                }
            };
            let a = random_form(&fr, degs.0, &mut rng);
            let b = random_form(&fr, degs.1, &mut rng);
            let c = random_form(&fr, degs.2, &mut rng);
            let l = wedge(&wedge(&a, &b).unwrap(), &c).unwrap();
            let r = wedge(&a, &wedge(&b, &c).unwrap()).unwrap();
            assert!(l.sub(&r).unwrap().norm() < 1e-12);
        }
    }

    #[test]
    fn frame_validation() {
        assert!(Frame::euclidean(17).is_err());
        assert!(Frame::new(2, vec!["a".into(), "a".into()], None).is_err());
        assert!(Frame::new(2, vec!["a".into(), "b".into()], Some(vec![1.0])).is_err());
    }
}

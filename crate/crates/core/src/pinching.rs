//! Threshold arithmetic for manifolds with −1 ≤ sec ≤ −δ², and exact
//! extremization of the pointwise curvature defect over the Rauch eigenvalue
//! box [δ·coth(δr), coth(r)].
//!
//! The reduced-cohomology window is p < δ(n−k−1)/k + 1 (low range) or
//! p > (n−k)/(δ(k−1)) + 1 (high range); torsion vanishes below
//! δ(n−k)/(k−1) + 1. Degree-1 denominators produce infinity sentinels.
//!
//! The pointwise defect Σ_a λ_a(1/p − |e*(ω^a)h|²) is linear in the Hessian
//! eigenvalues λ and diagonal over monomial k-forms, so its exact minimum
//! over (λ ∈ box, |h| = 1) is attained at a box vertex paired with a
//! monomial and reduces to a closed form. The check functions compare that
//! exact minimum against the corresponding lower bound.

use crate::error::{Error, Result};
use crate::rational::RealOrInf;
use serde::Serialize;

/// Parameters of one pinched-curvature query.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PinchSpec {
    pub n: usize,
    pub k: usize,
    pub delta: f64,
    pub p: f64,
    pub q: Option<f64>,
}

impl PinchSpec {
    pub fn new(n: usize, k: usize, delta: f64, p: f64, q: Option<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter(format!("dimension n = {n} < 2")));
        }
        if k == 0 || k >= n {
            return Err(Error::InvalidParameter(format!(
                "degree k = {k} outside 1..{}",
                n - 1
            )));
        }
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "pinching delta = {delta} outside (0, 1]"
            )));
        }
        if p <= 1.0 {
            return Err(Error::InvalidExponent(p));
        }
        if let Some(q) = q {
            if q < p {
                return Err(Error::InvalidParameter(format!("q = {q} < p = {p}")));
            }
        }
        Ok(PinchSpec { n, k, delta, p, q })
    }
}

/// Conjugate exponent p' = p/(p−1).
pub fn conjugate_exponent(p: f64) -> Result<f64> {
    if p <= 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    Ok(p / (p - 1.0))
}

pub fn low_threshold(n: usize, k: usize, delta: f64) -> f64 {
    delta * (n as f64 - k as f64 - 1.0) / k as f64 + 1.0
}

pub fn high_threshold(n: usize, k: usize, delta: f64) -> RealOrInf {
    if k <= 1 {
        RealOrInf::Infinite
    } else {
        RealOrInf::Real((n as f64 - k as f64) / (delta * (k as f64 - 1.0)) + 1.0)
    }
}

pub fn torsion_threshold_value(n: usize, k: usize, delta: f64) -> RealOrInf {
    if k <= 1 {
        RealOrInf::Infinite
    } else {
        RealOrInf::Real(delta * (n as f64 - k as f64) / (k as f64 - 1.0) + 1.0)
    }
}

/// Exponential rates in the two monotonicity regimes:
/// rate_low = k[δ(n−k−1)/k + 1 − p], positive exactly below the low
/// threshold; rate_high = k(p−1)[δ(k−1)/p − (n−k)/(p(p−1))], positive
/// exactly above the high threshold.
pub fn decay_rates(spec: &PinchSpec) -> (f64, f64) {
    let (n, k, d, p) = (spec.n as f64, spec.k as f64, spec.delta, spec.p);
    let rate_low = k * (d * (n - k - 1.0) / k + 1.0 - p);
    let rate_high = k * (p - 1.0) * (d * (k - 1.0) / p - (n - k) / (p * (p - 1.0)));
    (rate_low, rate_high)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PinchedVerdict {
    VanishesReduced,
    NotCovered,
}

/// Injectivity conclusion for the comparison map between the p- and
/// q-cohomologies.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InjectivityReport {
    pub p_threshold: RealOrInf,
    pub defect_bound: f64,
    pub gap: f64,
    pub epsilon: f64,
    pub injective: bool,
}

/// Threshold sheet for one (n, k, δ, p[, q]) query.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub spec: PinchSpec,
    pub low_threshold: f64,
    pub high_threshold: RealOrInf,
    pub torsion_threshold: RealOrInf,
    pub torsion_side_condition: bool,
    pub decay_rate_low: f64,
    pub decay_rate_high: f64,
    pub verdict: PinchedVerdict,
    pub vanishes_torsion: bool,
    pub injectivity: Option<InjectivityReport>,
}

/// Reduced/torsion thresholds and verdicts.
pub fn reduced_thresholds(spec: &PinchSpec) -> ThresholdReport {
    let low = low_threshold(spec.n, spec.k, spec.delta);
    let high = high_threshold(spec.n, spec.k, spec.delta);
    let torsion = torsion_threshold_value(spec.n, spec.k, spec.delta);
    let (rate_low, rate_high) = decay_rates(spec);
    let below_low = spec.p < low;
    let above_high = match high {
        RealOrInf::Real(h) => spec.p > h,
        RealOrInf::Infinite => false,
    };
    let side = (spec.k as f64 - 1.0) < spec.n as f64 / spec.p;
    let below_torsion = match torsion {
        RealOrInf::Real(t) => spec.p < t,
        RealOrInf::Infinite => true,
    };
    ThresholdReport {
        spec: *spec,
        low_threshold: low,
        high_threshold: high,
        torsion_threshold: torsion,
        torsion_side_condition: side,
        decay_rate_low: rate_low,
        decay_rate_high: rate_high,
        verdict: if below_low || above_high {
            PinchedVerdict::VanishesReduced
        } else {
            PinchedVerdict::NotCovered
        },
        vanishes_torsion: side && below_torsion,
        injectivity: spec.q.map(|q| injectivity_check(spec, q)),
    }
}

/// Torsion threshold δ(n−k)/(k−1) + 1 together with the side condition
/// k−1 < n/p.
pub fn torsion_threshold(spec: &PinchSpec) -> (RealOrInf, bool) {
    let t = torsion_threshold_value(spec.n, spec.k, spec.delta);
    let side = (spec.k as f64 - 1.0) < spec.n as f64 / spec.p;
    (t, side)
}

/// Injectivity of the comparison map for p ≤ q: requires
/// p < 1 + δ(n−k)/(k−1) and (q−p)/q < δ(n−k) − (p−1)(k−1); the margin
/// ε = (δ(n−k) − (p−1)(k−1) − (q−p)/q)/(2p) is positive exactly when both
/// inequalities are strict.
pub fn injectivity_check(spec: &PinchSpec, q: f64) -> InjectivityReport {
    let (n, k, d, p) = (spec.n as f64, spec.k as f64, spec.delta, spec.p);
    let p_threshold = torsion_threshold_value(spec.n, spec.k, spec.delta);
    let defect_bound = d * (n - k) - (p - 1.0) * (k - 1.0);
    let gap = (q - p) / q;
    let epsilon = (defect_bound - gap) / (2.0 * p);
    let below_threshold = match p_threshold {
        RealOrInf::Real(t) => p < t,
        RealOrInf::Infinite => true,
    };
    InjectivityReport {
        p_threshold,
        defect_bound,
        gap,
        epsilon,
        injective: below_threshold && gap < defect_bound,
    }
}

/// Lower edge of the Rauch box; the δ → 0 limit is 1/r.
pub fn rauch_lower(delta: f64, r: f64) -> f64 {
    if delta == 0.0 {
        1.0 / r
    } else {
        delta / (delta * r).tanh()
    }
}

pub fn rauch_upper(r: f64) -> f64 {
    1.0 / r.tanh()
}

/// Outcome of one pointwise bound check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundCheck {
    pub exact_min: f64,
    pub paper_bound: f64,
    pub ok: bool,
}

fn validate_box(n: usize, k: usize, delta: f64, r: f64, p: f64) -> Result<()> {
    if r <= 0.0 {
        return Err(Error::Domain(format!("box radius r = {r} must be positive")));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::InvalidParameter(format!(
            "delta = {delta} outside [0, 1]"
        )));
    }
    if p <= 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    if n < 2 || k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "(n, k) = ({n}, {k}) out of range"
        )));
    }
    Ok(())
}

/// Exact minimum over λ in the Rauch box and unit k-forms of
/// Σ_a λ_a (1/p − |e*(ω^a)h|²), with the radial direction carrying λ = 0,
/// against the closed lower bound (k/p)·coth(r)·[δ(n−k−1)/k + 1 − p].
///
/// The joint minimum is attained by an all-tangential monomial with
/// λ = coth(r) on its support and δ·coth(δr) elsewhere, which gives
/// exact_min = k·coth(r)(1/p − 1) + (n−1−k)·δcoth(δr)/p.
pub fn wp_pointwise_bound_check(
    n: usize,
    k: usize,
    p: f64,
    delta: f64,
    r: f64,
) -> Result<BoundCheck> {
    validate_box(n, k, delta, r, p)?;
    let hi = rauch_upper(r);
    let lo = rauch_lower(delta, r);
    let (nf, kf) = (n as f64, k as f64);
    let exact_min = kf * hi * (1.0 / p - 1.0) + (nf - 1.0 - kf) * lo / p;
    let paper_bound = (kf / p) * hi * (delta * (nf - kf - 1.0) / kf + 1.0 - p);
    Ok(BoundCheck {
        exact_min,
        paper_bound,
        ok: exact_min >= paper_bound - 1e-12 * paper_bound.abs().max(1.0),
    })
}

/// High-exponent counterpart: exact minimum of Σ_a λ_a(|e*(ω^a)h|² − 1/p)
/// against coth(r)(n−k)((p−1)/p)[δ(k−1)/(n−k) − 1/(p−1)].
///
/// Here the minimizing monomial contains the radial direction, so
/// exact_min = (k−1)·δcoth(δr)(1 − 1/p) − (n−k)·coth(r)/p.
pub fn wp_pointwise_bound_check_high(
    n: usize,
    k: usize,
    p: f64,
    delta: f64,
    r: f64,
) -> Result<BoundCheck> {
    validate_box(n, k, delta, r, p)?;
    let hi = rauch_upper(r);
    let lo = rauch_lower(delta, r);
    let (nf, kf) = (n as f64, k as f64);
    let exact_min = (kf - 1.0) * lo * (1.0 - 1.0 / p) - (nf - kf) * hi / p;
    let paper_bound =
        hi * (nf - kf) * (p - 1.0) / p * (delta * (kf - 1.0) / (nf - kf) - 1.0 / (p - 1.0));
    Ok(BoundCheck {
        exact_min,
        paper_bound,
        ok: exact_min >= paper_bound - 1e-12 * paper_bound.abs().max(1.0),
    })
}

//! Positive root systems of the simple types and their maximal-root weight
//! profiles.
//!
//! Roots are stored with doubled coordinates so that every system, including
//! the half-integer E-family realizations, lives in ℤ^d and all weight
//! arithmetic is exact. The classical families use the textbook coordinate
//! descriptions; G2 and F4 use their standard 3- and 4-coordinate
//! realizations; E6 and E7 are carved out of E8 by orthogonality constraints.
//! Positivity for the generated systems is decided by the exact functional
//! ℓ(x) = Σ x_i 3^i, which cannot vanish on a nonzero small-integer vector.
//!
//! For a profile with weights β(T) ∈ {0,1,2} (units of |μ|/2), the vanishing
//! thresholds are exact rationals:
//!   split        (n1+2)/(k+1)
//!   simplified   (n1+2n2)/(2k)
//!   sharp        (n1+2n2)/(k+min(k,n2))
//!   exact        (n1+2n2)/(max k-subset sum of the weight multiset)
//!   torsion      numerator variants (n2+2n1) and (n1+2n2) over
//!                (k−1)+min(k−1,n2)

use crate::error::{Error, Result};
use crate::exterior::{self, Frame, FormVector};
use crate::rational::Threshold;
use serde::Serialize;
use std::fmt;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SimpleType {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl SimpleType {
    pub fn parse(label: &str) -> Option<(SimpleType, usize)> {
        let label = label.trim();
        if label.len() < 2 {
            return None;
        }
        let (head, tail) = label.split_at(1);
        let rank: usize = tail.parse().ok()?;
        let ty = match head {
            "A" | "a" => SimpleType::A,
            "B" | "b" => SimpleType::B,
            "C" | "c" => SimpleType::C,
            "D" | "d" => SimpleType::D,
            "E" | "e" => match rank {
                6 => SimpleType::E6,
                7 => SimpleType::E7,
                8 => SimpleType::E8,
                _ => return None,
            },
            "F" | "f" if rank == 4 => SimpleType::F4,
            "G" | "g" if rank == 2 => SimpleType::G2,
            _ => return None,
        };
        Some((ty, rank))
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SimpleType::A => "A",
            SimpleType::B => "B",
            SimpleType::C => "C",
            SimpleType::D => "D",
            SimpleType::E6 => "E6",
            SimpleType::E7 => "E7",
            SimpleType::E8 => "E8",
            SimpleType::F4 => "F4",
            SimpleType::G2 => "G2",
        };
        write!(f, "{s}")
    }
}

/// A positive root system with multiplicities. Coordinates are doubled so
/// that all entries are integers.
#[derive(Debug, Clone)]
pub struct RootDatum {
    pub label: SimpleType,
    pub rank: usize,
    /// Doubled coordinates of the positive roots.
    pub positive_roots: Vec<Vec<i64>>,
    /// Root-space multiplicity per positive root (all 1 in the split case).
    pub multiplicities: Vec<usize>,
    /// Whether 2β also occurs as a root (restricted case only).
    pub doubled: Vec<bool>,
    /// Index of the maximal root μ within `positive_roots`.
    pub mu_index: usize,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact positivity functional Σ x_i 3^i; nonzero on every nonzero vector
/// with entries in {-4..4}.
fn positive(v: &[i64]) -> bool {
    let mut acc: i64 = 0;
    let mut pow: i64 = 1;
    for &x in v {
        acc += x * pow;
        pow *= 3;
    }
    acc > 0
}

fn find_maximal_root(roots: &[Vec<i64>]) -> usize {
    let d = roots[0].len();
    let mut two_rho = vec![0i64; d];
    for r in roots {
        for (acc, x) in two_rho.iter_mut().zip(r) {
            *acc += x;
        }
    }
    let mut best = 0;
    let mut best_val = i64::MIN;
    for (i, r) in roots.iter().enumerate() {
        let v = dot(r, &two_rho);
        if v > best_val {
            best_val = v;
            best = i;
        }
    }
    best
}

fn e8_roots() -> Vec<Vec<i64>> {
    let mut roots = Vec::with_capacity(240);
    // integer type ±e_i ± e_j, doubled to ±2e_i ± 2e_j
    for i in 0..8 {
        for j in 0..8 {
            if i == j {
                continue;
            }
            for (si, sj) in [(2i64, 2i64), (2, -2), (-2, 2), (-2, -2)] {
                if i < j {
                    let mut v = vec![0i64; 8];
                    v[i] = si;
                    v[j] = sj;
                    roots.push(v);
                }
            }
        }
    }
    // half-integer type ½Σ±e_i with an even number of minus signs, doubled
    for pat in 0u16..256 {
        if (pat.count_ones()) % 2 != 0 {
            continue;
        }
        let v: Vec<i64> = (0..8)
            .map(|i| if pat & (1 << i) != 0 { -1 } else { 1 })
            .collect();
        roots.push(v);
    }
    debug_assert_eq!(roots.len(), 112 + 128);
    roots
}

fn classical_positive_roots(ty: SimpleType, n: usize) -> Vec<Vec<i64>> {
    let mut roots = Vec::new();
    match ty {
        SimpleType::A => {
            // λ_i − λ_j, 1 ≤ i < j ≤ n+1, in ℝ^{n+1}
            for i in 0..=n {
                for j in (i + 1)..=n {
                    let mut v = vec![0i64; n + 1];
                    v[i] = 2;
                    v[j] = -2;
                    roots.push(v);
                }
            }
        }
        SimpleType::B => {
            for i in 0..n {
                for j in (i + 1)..n {
                    for s in [2i64, -2] {
                        let mut v = vec![0i64; n];
                        v[i] = 2;
                        v[j] = s;
                        roots.push(v);
                    }
                }
            }
            for j in 0..n {
                let mut v = vec![0i64; n];
                v[j] = 2;
                roots.push(v);
            }
        }
        SimpleType::C => {
            for i in 0..n {
                for j in (i + 1)..n {
                    for s in [2i64, -2] {
                        let mut v = vec![0i64; n];
                        v[i] = 2;
                        v[j] = s;
                        roots.push(v);
                    }
                }
            }
            for j in 0..n {
                let mut v = vec![0i64; n];
                v[j] = 4;
                roots.push(v);
            }
        }
        SimpleType::D => {
            for i in 0..n {
                for j in (i + 1)..n {
                    for s in [2i64, -2] {
                        let mut v = vec![0i64; n];
                        v[i] = 2;
                        v[j] = s;
                        roots.push(v);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    roots
}

/// Positive roots of a split simple system in the standard coordinates.
pub fn build_root_system(ty: SimpleType, rank: usize) -> Result<RootDatum> {
    let invalid = |r| Error::InvalidRank {
        label: ty.to_string(),
        rank: r,
    };
    let roots: Vec<Vec<i64>> = match ty {
        SimpleType::A => {
            if rank < 1 {
                return Err(invalid(rank));
            }
            classical_positive_roots(ty, rank)
        }
        SimpleType::B | SimpleType::C => {
            if rank < 2 {
                return Err(invalid(rank));
            }
            classical_positive_roots(ty, rank)
        }
        SimpleType::D => {
            if rank < 4 {
                return Err(invalid(rank));
            }
            classical_positive_roots(ty, rank)
        }
        SimpleType::G2 => {
            if rank != 2 {
                return Err(invalid(rank));
            }
            // short: α1, α1+α2, 2α1+α2; long: α2, 3α1+α2, 3α1+2α2
            // with simple roots α1 = e1−e2, α2 = −2e1+e2+e3 (doubled below)
            vec![
                vec![2, -2, 0],
                vec![-4, 2, 2],
                vec![-2, 0, 2],
                vec![0, -2, 2],
                vec![2, -4, 2],
                vec![-2, -2, 4],
            ]
        }
        SimpleType::F4 => {
            if rank != 4 {
                return Err(invalid(rank));
            }
            let mut v = Vec::with_capacity(24);
            for i in 0..4 {
                let mut r = vec![0i64; 4];
                r[i] = 2;
                v.push(r);
            }
            for i in 0..4 {
                for j in (i + 1)..4 {
                    for s in [2i64, -2] {
                        let mut r = vec![0i64; 4];
                        r[i] = 2;
                        r[j] = s;
                        v.push(r);
                    }
                }
            }
            for pat in 0u8..8 {
                let mut r = vec![1i64; 4];
                for b in 0..3 {
                    if pat & (1 << b) != 0 {
                        r[b + 1] = -1;
                    }
                }
                v.push(r);
            }
            v
        }
        SimpleType::E8 => {
            if rank != 8 {
                return Err(invalid(rank));
            }
            e8_roots().into_iter().filter(|r| positive(r)).collect()
        }
        SimpleType::E7 => {
            if rank != 7 {
                return Err(invalid(rank));
            }
            // E8 roots orthogonal to e7 + e8
            e8_roots()
                .into_iter()
                .filter(|r| r[6] + r[7] == 0 && positive(r))
                .collect()
        }
        SimpleType::E6 => {
            if rank != 6 {
                return Err(invalid(rank));
            }
            // E8 roots orthogonal to e6 − e7 and e7 + e8
            e8_roots()
                .into_iter()
                .filter(|r| r[5] - r[6] == 0 && r[6] + r[7] == 0 && positive(r))
                .collect()
        }
    };
    let count = roots.len();
    let mu_index = find_maximal_root(&roots);
    Ok(RootDatum {
        label: ty,
        rank,
        multiplicities: vec![1; count],
        doubled: vec![false; count],
        positive_roots: roots,
        mu_index,
    })
}

/// Expected |Φ⁺| for each split type.
pub fn expected_positive_count(ty: SimpleType, rank: usize) -> usize {
    match ty {
        SimpleType::A => rank * (rank + 1) / 2,
        SimpleType::B | SimpleType::C => rank * rank,
        SimpleType::D => rank * (rank - 1),
        SimpleType::G2 => 6,
        SimpleType::F4 => 24,
        SimpleType::E6 => 36,
        SimpleType::E7 => 63,
        SimpleType::E8 => 120,
    }
}

/// Closed-form n_G(1) for each split type.
pub fn expected_n1(ty: SimpleType, rank: usize) -> usize {
    match ty {
        SimpleType::A => 2 * rank - 2,
        SimpleType::B => 4 * rank - 6,
        SimpleType::C => 2 * rank - 2,
        SimpleType::D => 4 * rank - 8,
        SimpleType::G2 => 4,
        SimpleType::F4 => 14,
        SimpleType::E6 => 20,
        SimpleType::E7 => 32,
        SimpleType::E8 => 56,
    }
}

/// The multiset of maximal-root weights β(T) ∈ {0,1,2} counted with root
/// multiplicity, plus the count of flat directions (the split torus).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightProfile {
    pub group: String,
    pub rank: usize,
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    /// Number of weight-zero torus directions (= rank).
    pub flat_count: usize,
}

impl WeightProfile {
    pub fn total_roots(&self) -> usize {
        self.n0 + self.n1 + self.n2
    }

    /// Σ β(T) over all (restricted) positive roots with multiplicity.
    pub fn sum_weights(&self) -> usize {
        self.n1 + 2 * self.n2
    }

    /// dim X = rank + Σ mult(β).
    pub fn dim_x(&self) -> usize {
        self.flat_count + self.total_roots()
    }

    pub fn is_split(&self) -> bool {
        self.n2 == 1
    }

    /// Sum of the k largest weights in the multiset
    /// {2 × n2, 1 × n1, 0 × (n0 + flats)}.
    pub fn max_subset_sum(&self, k: usize) -> usize {
        let twos = k.min(self.n2);
        let ones = (k - twos).min(self.n1);
        2 * twos + ones
    }
}

/// Weight profile of a split root system: β(T) = 2⟨β,μ⟩/⟨μ,μ⟩.
pub fn weight_profile(rd: &RootDatum) -> WeightProfile {
    let mu = &rd.positive_roots[rd.mu_index];
    let mu_sq = dot(mu, mu);
    let (mut n0, mut n1, mut n2) = (0usize, 0usize, 0usize);
    for (root, &mult) in rd.positive_roots.iter().zip(&rd.multiplicities) {
        let num = 2 * dot(root, mu);
        assert!(
            num % mu_sq == 0,
            "weight of {:?} against the maximal root is not integral",
            root
        );
        match num / mu_sq {
            0 => n0 += mult,
            1 => n1 += mult,
            2 => n2 += mult,
            w => panic!("maximal-root weight {w} outside {{0,1,2}}"),
        }
    }
    let group = match rd.label {
        SimpleType::A | SimpleType::B | SimpleType::C | SimpleType::D => {
            format!("{}{}", rd.label, rd.rank)
        }
        other => other.to_string(),
    };
    WeightProfile {
        group,
        rank: rd.rank,
        n0,
        n1,
        n2,
        flat_count: rd.rank,
    }
}

/// Short/long root-space multiplicities of the four restricted C_n systems.
pub const RESTRICTED_CN_MULTIPLICITIES: [(usize, usize); 4] = [(2, 1), (4, 3), (4, 1), (8, 1)];

/// Weight profile of one of the four restricted C_n systems: the C_n root
/// pattern with short multiplicity m_s and long multiplicity m_l, giving
/// (n_G(1), n_G(2)) = (m_s(2n−2), m_l).
pub fn restricted_profile_cn(case_id: usize, rank: usize) -> Result<WeightProfile> {
    if !(1..=4).contains(&case_id) {
        return Err(Error::BadRestrictedCase(case_id));
    }
    if rank < 2 {
        return Err(Error::InvalidRank {
            label: format!("C{rank} restricted"),
            rank,
        });
    }
    let (ms, ml) = RESTRICTED_CN_MULTIPLICITIES[case_id - 1];
    let n = rank;
    Ok(WeightProfile {
        group: format!("C{n}-restricted-{case_id}"),
        rank: n,
        n0: ms * (n - 1) * (n - 2) + ml * (n - 1),
        n1: ms * (2 * n - 2),
        n2: ml,
        flat_count: n,
    })
}

/// Expected (n_G(1), n_G(2)) pairs for the four restricted C_n cases.
pub fn restricted_cn_expected(case_id: usize, n: usize) -> (usize, usize) {
    match case_id {
        1 => (4 * n - 4, 1),
        2 => (8 * n - 8, 3),
        3 => (8 * n - 8, 1),
        4 => (16 * n - 16, 1),
        _ => unreachable!(),
    }
}

/// (n1+2)/(k+1) — valid for split profiles only.
pub fn split_threshold(profile: &WeightProfile, k: usize) -> Result<Threshold> {
    if !profile.is_split() {
        return Err(Error::NonSplitProfile(profile.n2));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("degree k must be ≥ 1".into()));
    }
    Ok(Threshold::new(profile.n1 as i64 + 2, k as i64 + 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneralVariant {
    Simplified,
    Sharp,
}

/// The two general vanishing thresholds, (n1+2n2)/(2k) and
/// (n1+2n2)/(k+min(k,n2)).
pub fn general_threshold(profile: &WeightProfile, k: usize, variant: GeneralVariant) -> Threshold {
    let num = profile.sum_weights() as i64;
    let den = match variant {
        GeneralVariant::Simplified => 2 * k as i64,
        GeneralVariant::Sharp => (k + k.min(profile.n2)) as i64,
    };
    Threshold::new(num, den)
}

/// The sharpest threshold the weight profile supports: p* such that the
/// defect Σ β(T)(1/p − |e*(ω^β)h|²) is positive for every unit k-form
/// exactly when p < p*. Equals Σweights / (max k-subset sum).
pub fn exact_threshold(profile: &WeightProfile, k: usize) -> Result<Threshold> {
    let directions = profile.total_roots() + profile.flat_count;
    if k > directions {
        return Err(Error::DegreeOutOfRange { k, n: directions });
    }
    if k == 0 {
        return Ok(Threshold::Infinite);
    }
    let num = profile.sum_weights() as i64;
    let den = profile.max_subset_sum(k) as i64;
    Ok(Threshold::new(num, den))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionVariant {
    /// Numerator n2 + 2·n1 as displayed in the torsion statement.
    Literal,
    /// Numerator n1 + 2·n2, the degree-shifted sharp criterion.
    Condo2Shifted,
}

/// Torsion vanishing threshold over the shifted denominator
/// (k−1) + min(k−1, n2); infinite for k ≤ 1.
pub fn torsion_threshold_symmetric(
    profile: &WeightProfile,
    k: usize,
    variant: TorsionVariant,
) -> Threshold {
    if k <= 1 {
        return Threshold::Infinite;
    }
    let num = match variant {
        TorsionVariant::Literal => (profile.n2 + 2 * profile.n1) as i64,
        TorsionVariant::Condo2Shifted => profile.sum_weights() as i64,
    };
    let km1 = k - 1;
    Threshold::new(num, (km1 + km1.min(profile.n2)) as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    VanishesReduced,
    VanishesTorsion,
    P2MiddleDegreeRule,
    NotCovered,
}

/// Full threshold sheet and verdict for one (group, k, p) query.
#[derive(Debug, Clone, Serialize)]
pub struct SymmetricVerdict {
    pub group: String,
    pub rank: usize,
    pub k: usize,
    pub p: f64,
    pub dim_x: usize,
    pub split_threshold: Option<Threshold>,
    pub simplified_threshold: Threshold,
    pub sharp_threshold: Threshold,
    pub exact_threshold: Threshold,
    pub torsion_literal: Threshold,
    pub torsion_shifted: Threshold,
    pub torsion_variants_differ: bool,
    pub verdict: Verdict,
    pub criterion: String,
}

/// Decide vanishing for reduced/torsion L_p-cohomology of X = G/K at
/// degree k and exponent p from the weight profile alone.
///
/// Reduced cohomology vanishes when p is strictly below an applicable
/// threshold; at p = 2 the middle-degree rule applies for k ≠ dim(X)/2;
/// the torsion verdict uses the degree-shifted threshold. No vanishing is
/// ever claimed for p strictly above all thresholds with p ≠ 2.
pub fn gromov_verdict(profile: &WeightProfile, k: usize, p: f64) -> Result<SymmetricVerdict> {
    if p <= 1.0 {
        return Err(Error::InvalidExponent(p));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("degree k must be ≥ 1".into()));
    }
    let split = if profile.is_split() {
        Some(split_threshold(profile, k)?)
    } else {
        None
    };
    let simplified = general_threshold(profile, k, GeneralVariant::Simplified);
    let sharp = general_threshold(profile, k, GeneralVariant::Sharp);
    let exact = exact_threshold(profile, k)?;
    let torsion_literal = torsion_threshold_symmetric(profile, k, TorsionVariant::Literal);
    let torsion_shifted = torsion_threshold_symmetric(profile, k, TorsionVariant::Condo2Shifted);
    let dim_x = profile.dim_x();

    let (verdict, criterion) = if split.map_or(false, |t| t.admits(p)) {
        (Verdict::VanishesReduced, "split".to_string())
    } else if simplified.admits(p) {
        (Verdict::VanishesReduced, "simplified".to_string())
    } else if sharp.admits(p) {
        (Verdict::VanishesReduced, "sharp".to_string())
    } else if exact.admits(p) {
        (Verdict::VanishesReduced, "exact".to_string())
    } else if p == 2.0 && 2 * k != dim_x {
        (Verdict::P2MiddleDegreeRule, "p2-middle-degree".to_string())
    } else if torsion_shifted.admits(p) {
        (Verdict::VanishesTorsion, "torsion-shifted".to_string())
    } else {
        (Verdict::NotCovered, "none".to_string())
    };

    Ok(SymmetricVerdict {
        group: profile.group.clone(),
        rank: profile.rank,
        k,
        p,
        dim_x,
        split_threshold: split,
        simplified_threshold: simplified,
        sharp_threshold: sharp,
        exact_threshold: exact,
        torsion_literal,
        torsion_shifted,
        torsion_variants_differ: torsion_literal != torsion_shifted,
        verdict,
        criterion,
    })
}

/// Threshold for a non-split group with restricted root system of type A_n:
/// from the constraints n_G(2) ≥ 2 and n_G(1) ≥ 4n−4 the simplified
/// criterion gives p < 2n/k.
pub fn nonsplit_an_threshold(rank: usize, k: usize) -> Threshold {
    Threshold::new(2 * rank as i64, k as i64)
}

/// Constraint predicate for encoded non-split A_n data.
pub fn nonsplit_an_constraints_hold(rank: usize, n1: usize, n2: usize) -> bool {
    n2 >= 2 && n1 >= 4 * rank - 4
}

/// One row of the reproduction table.
#[derive(Debug, Clone, Serialize)]
pub struct CaseRow {
    pub group: String,
    pub rank: usize,
    pub positive_roots: usize,
    pub n0: usize,
    pub n1: usize,
    pub n2: usize,
    pub sum_weights: usize,
    pub dim_x: usize,
    pub threshold_k1: Threshold,
}

fn row_from_profile(profile: &WeightProfile, positive_roots: usize) -> CaseRow {
    CaseRow {
        group: profile.group.clone(),
        rank: profile.rank,
        positive_roots,
        n0: profile.n0,
        n1: profile.n1,
        n2: profile.n2,
        sum_weights: profile.sum_weights(),
        dim_x: profile.dim_x(),
        threshold_k1: exact_threshold(profile, 1).unwrap(),
    }
}

/// The nine split families at reference ranks plus the four restricted C_n
/// rows for n = 2..6. B starts at rank 3 since B_2 and C_2 coincide as root
/// systems.
pub fn cases_table() -> Vec<CaseRow> {
    let mut rows = Vec::new();
    let mut push_split = |ty: SimpleType, rank: usize| {
        let rd = build_root_system(ty, rank).unwrap();
        let profile = weight_profile(&rd);
        rows.push(row_from_profile(&profile, rd.positive_roots.len()));
    };
    for rank in 2..=6 {
        push_split(SimpleType::A, rank);
    }
    for rank in 3..=6 {
        push_split(SimpleType::B, rank);
    }
    for rank in 2..=6 {
        push_split(SimpleType::C, rank);
    }
    for rank in 4..=6 {
        push_split(SimpleType::D, rank);
    }
    push_split(SimpleType::G2, 2);
    push_split(SimpleType::F4, 4);
    push_split(SimpleType::E6, 6);
    push_split(SimpleType::E7, 7);
    push_split(SimpleType::E8, 8);
    for case_id in 1..=4 {
        for n in 2..=6 {
            let profile = restricted_profile_cn(case_id, n).unwrap();
            let total = profile.total_roots();
            rows.push(row_from_profile(&profile, total));
        }
    }
    rows
}

/// Orthonormal frame of an Iwasawa model for a split datum: one direction
/// per positive root carrying β(T), followed by `rank` flat directions.
/// Returns the frame and the index of μ.
pub fn iwasawa_frame(rd: &RootDatum) -> Result<(Arc<Frame>, usize)> {
    let mu = &rd.positive_roots[rd.mu_index];
    let mu_sq = dot(mu, mu);
    let mut weights = Vec::new();
    let mut labels = Vec::new();
    for (i, root) in rd.positive_roots.iter().enumerate() {
        let w = 2 * dot(root, mu) / mu_sq;
        weights.push(w as f64);
        labels.push(format!("b{}", i + 1));
    }
    for j in 0..rd.rank {
        weights.push(0.0);
        labels.push(format!("t{}", j + 1));
    }
    let n = weights.len();
    let frame = Frame::new(n, labels, Some(weights))?;
    Ok((frame, rd.mu_index))
}

/// Residual of the p = 2 boundary identity for a split A_n datum against a
/// form of degree rank−1.
pub fn boundary_identity_residual_an(rd: &RootDatum, phi: &FormVector) -> Result<f64> {
    if rd.label != SimpleType::A {
        return Err(Error::BoundaryIdentity("a split A-type root system".into()));
    }
    let (frame, mu) = iwasawa_frame(rd)?;
    if phi.frame() != &frame {
        return Err(Error::FrameMismatch("Iwasawa frame".into()));
    }
    exterior::boundary_identity_residual(&frame, mu, phi)
}

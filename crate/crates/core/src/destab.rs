//! Candidate destabilizing splittings `sub + quot = v` of a rank-one class.
//!
//! The search runs in two stages. [`truncated_wall_candidates`] scans
//! `(rank, ch1, ch2)` of the subobject and keeps those giving a circular wall
//! in the chosen half of the β-axis. [`refine_ch3`] then fixes `ch3` by
//! requiring both factors to be recognisable sheaves with non-negative
//! integer lengths.
//!
//! Filters applied to a truncated candidate `(r, c, d)` with quotient
//! `v - (r, c, d)`:
//!
//! * `0 <= Δ(sub) <= cap` and `0 <= Δ(quot) <= cap`;
//! * `c2 = c²/2 - d` is an integer for both factors;
//! * the wall is a circle with positive radius and center in the region;
//! * at the top of the wall there is some `ch3` splitting for which both
//!   factors satisfy the BMT inequality.
//!
//! The identity `(c - r c_v)² = (1 - r)Δ(sub) + rΔ(quot) + r(r - 1)Δ(v)`
//! (valid for `rk v = 1`) bounds `c` for each rank, and the two Δ conditions
//! are linear in `d`, so the scan is finite.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::chern::{hilbert_polynomial, ideal_sheaf_char, Char3};
use crate::error::{Error, Result};
use crate::rational::{ceil_int, floor_int, fmt_q, half, q, qf, to_i64, Q};
use crate::stability::bg_discriminant;
use crate::walls::{numerical_wall, WallLocus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    #[default]
    BetaNegative,
    BetaPositive,
}

impl Region {
    fn contains(&self, center: &Q) -> bool {
        match self {
            Region::BetaNegative => center.is_negative(),
            Region::BetaPositive => center.is_positive(),
        }
    }
}

/// How the `(rank, ch1)` search space is walked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, sequential otherwise.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumBounds {
    pub rank_min: i64,
    pub rank_max: i64,
    pub delta_cap: Q,
    pub region: Region,
    pub execution: Execution,
}

impl EnumBounds {
    /// Ranks `{0, 1}`, cap `Δ(v)`, `β < 0`.
    pub fn for_class(v: &Char3) -> Self {
        EnumBounds {
            rank_min: 0,
            rank_max: 1,
            delta_cap: bg_discriminant(v),
            region: Region::BetaNegative,
            execution: Execution::default(),
        }
    }

    pub fn with_ranks(mut self, rank_min: i64, rank_max: i64) -> Self {
        self.rank_min = rank_min;
        self.rank_max = rank_max;
        self
    }

    pub fn with_delta_cap(mut self, cap: Q) -> Self {
        self.delta_cap = cap;
        self
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }
}

/// A `(rank, ch1, ch2)` subobject class together with its wall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TruncatedCandidate {
    #[serde(serialize_with = "ser_triple")]
    pub sub: [Q; 3],
    pub wall: WallLocus,
}

fn ser_triple<S: serde::Serializer>(t: &[Q; 3], s: S) -> std::result::Result<S::Ok, S::Error> {
    t.iter().map(fmt_q).collect::<Vec<_>>().serialize(s)
}

impl TruncatedCandidate {
    pub fn radius_sq(&self) -> &Q {
        self.wall
            .as_circle()
            .expect("candidate walls are circles")
            .1
    }

    pub fn center(&self) -> &Q {
        self.wall
            .as_circle()
            .expect("candidate walls are circles")
            .0
    }

    /// The quotient's first three entries.
    pub fn quot(&self, v: &Char3) -> [Q; 3] {
        [
            &v.ch0 - &self.sub[0],
            &v.ch1 - &self.sub[1],
            &v.ch2 - &self.sub[2],
        ]
    }
}

fn check_rank_one(v: &Char3) -> Result<()> {
    if !v.ch0.is_one() {
        return Err(Error::UnsupportedRegime(format!(
            "only rank-one classes are enumerated, got ch0 = {}",
            fmt_q(&v.ch0)
        )));
    }
    if !v.is_lattice() || to_i64(&(&v.ch2 - &v.ch1 * &v.ch1 * half())).is_none() {
        return Err(Error::domain(format!("{v} is not an integral class")));
    }
    Ok(())
}

/// `{d : 0 <= a0 + a1 d <= cap}` as closed bounds; `None` entries are unbounded.
fn linear_band(a0: &Q, a1: &Q, cap: &Q) -> Option<(Option<Q>, Option<Q>)> {
    if a1.is_zero() {
        return (!a0.is_negative() && a0 <= cap).then_some((None, None));
    }
    let x = -a0 / a1;
    let y = (cap - a0) / a1;
    Some(if x <= y {
        (Some(x), Some(y))
    } else {
        (Some(y), Some(x))
    })
}

fn intersect(a: (Option<Q>, Option<Q>), b: (Option<Q>, Option<Q>)) -> (Option<Q>, Option<Q>) {
    let lo = match (a.0, b.0) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    };
    let hi = match (a.1, b.1) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    (lo, hi)
}

/// Bounds on `ch3` of a factor `(r, c, d, ·)` from the BMT inequality at
/// `(β, α²)`.
fn bmt_ch3_bounds(f: &[Q; 3], beta: &Q, alpha_sq: &Q) -> Option<(Option<Q>, Option<Q>)> {
    let [r, c, d] = f;
    let b2 = beta * beta;
    let c1 = c - beta * r;
    let c2 = d - beta * c + &b2 * r * half();
    // ch3^β = ch3 + shift
    let shift = -beta * d + &b2 * c * half() - &b2 * beta * r / q(6);
    let delta = c * c - q(2) * r * d;
    let rhs = alpha_sq * delta + q(4) * &c2 * &c2;
    if c1.is_zero() {
        return (!rhs.is_negative()).then_some((None, None));
    }
    let bound = rhs / (q(6) * &c1) - shift;
    Some(if c1.is_positive() {
        (None, Some(bound))
    } else {
        (Some(bound), None)
    })
}

/// True when some real `ch3(sub)` makes both factors satisfy BMT at the apex
/// of `wall`.
pub fn apex_bmt_feasible(v: &Char3, sub: &[Q; 3], wall: &WallLocus) -> bool {
    let Some((beta, alpha_sq)) = wall.as_circle() else {
        return false;
    };
    let quot = [&v.ch0 - &sub[0], &v.ch1 - &sub[1], &v.ch2 - &sub[2]];
    let (Some(s), Some(qb)) = (
        bmt_ch3_bounds(sub, beta, alpha_sq),
        bmt_ch3_bounds(&quot, beta, alpha_sq),
    ) else {
        return false;
    };
    // ch3(sub) = v3 - ch3(quot)
    let from_quot = (qb.1.map(|hi| &v.ch3 - hi), qb.0.map(|lo| &v.ch3 - lo));
    match intersect(s, from_quot) {
        (Some(lo), Some(hi)) => lo <= hi,
        _ => true,
    }
}

/// Prefer the rank-one side (larger `ch2` if both), else the
/// lexicographically larger triple.
fn canonical(sub: [Q; 3], quot: [Q; 3]) -> [Q; 3] {
    let one = Q::one();
    match (sub[0] == one, quot[0] == one) {
        (true, false) => sub,
        (false, true) => quot,
        (true, true) => {
            if sub[2] >= quot[2] {
                sub
            } else {
                quot
            }
        }
        (false, false) => sub.max(quot),
    }
}

fn scan_rank_ch1(v: &Char3, b: &EnumBounds, r: i64, c: &BigInt) -> Vec<TruncatedCandidate> {
    let cap = &b.delta_cap;
    let rq = q(r);
    let cq = Q::from_integer(c.clone());
    let c_sq = &cq * &cq;
    let cv_minus = &v.ch1 - &cq;
    let one_minus_r = q(1 - r);

    let Some(band_sub) = linear_band(&c_sq, &(q(-2) * &rq), cap) else {
        return Vec::new();
    };
    let a0 = &cv_minus * &cv_minus - q(2) * &one_minus_r * &v.ch2;
    let Some(band_quot) = linear_band(&a0, &(q(2) * &one_minus_r), cap) else {
        return Vec::new();
    };
    let (Some(lo), Some(hi)) = intersect(band_sub, band_quot) else {
        return Vec::new();
    };
    if lo > hi {
        return Vec::new();
    }

    // d = c²/2 - k with k integral
    let half_c_sq = &c_sq * half();
    let k_min = ceil_int(&(&half_c_sq - &hi));
    let k_max = floor_int(&(&half_c_sq - &lo));
    let mut out = Vec::new();
    let mut k = k_min;
    while k <= k_max {
        let d = &half_c_sq - Q::from_integer(k.clone());
        let sub = [rq.clone(), cq.clone(), d.clone()];
        let w = Char3::new(rq.clone(), cq.clone(), d, Q::zero());
        let wall = numerical_wall(v, &w);
        if let Some((center, radius_sq)) = wall.as_circle() {
            if radius_sq.is_positive()
                && b.region.contains(center)
                && apex_bmt_feasible(v, &sub, &wall)
            {
                out.push(TruncatedCandidate { sub, wall });
            }
        }
        k += 1;
    }
    out
}

fn ch1_range(v: &Char3, cap: &Q, r: i64) -> (BigInt, BigInt) {
    let r_q = q(r);
    let spread = cap * (r_q.abs() + (q(1) - &r_q).abs())
        + (&r_q * (&r_q - q(1))).abs() * bg_discriminant(v).abs();
    let root = floor_int(&spread).sqrt();
    let center = floor_int(&(&r_q * &v.ch1));
    (&center - &root, &center + &root)
}

#[cfg(feature = "parallel")]
fn flat_map_tasks<T, R, F>(exec: Execution, tasks: Vec<T>, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> Vec<R> + Sync + Send,
{
    use rayon::prelude::*;
    match exec {
        Execution::Parallel => tasks.into_par_iter().flat_map_iter(f).collect(),
        Execution::Sequential => tasks.into_iter().flat_map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn flat_map_tasks<T, R, F>(_exec: Execution, tasks: Vec<T>, f: F) -> Vec<R>
where
    F: Fn(T) -> Vec<R>,
{
    tasks.into_iter().flat_map(f).collect()
}

/// Circular walls of `v` coming from `(rank, ch1, ch2)` splittings, one per
/// wall-and-subobject class, sorted by radius², center and subobject.
pub fn truncated_wall_candidates(v: &Char3, b: &EnumBounds) -> Result<Vec<TruncatedCandidate>> {
    check_rank_one(v)?;
    if b.delta_cap.is_negative() {
        return Err(Error::domain("delta cap must be non-negative"));
    }
    if b.rank_min > b.rank_max {
        return Err(Error::domain(format!(
            "empty rank range {}..={}",
            b.rank_min, b.rank_max
        )));
    }
    let mut tasks = Vec::new();
    for r in b.rank_min..=b.rank_max {
        let (lo, hi) = ch1_range(v, &b.delta_cap, r);
        let mut c = lo;
        while c <= hi {
            tasks.push((r, c.clone()));
            c += 1;
        }
    }
    let found = flat_map_tasks(b.execution, tasks, |(r, c)| scan_rank_ch1(v, b, r, &c));

    let mut unique = BTreeMap::new();
    for cand in found {
        let quot = cand.quot(v);
        let sub = canonical(cand.sub.clone(), quot);
        let key = (cand.radius_sq().clone(), cand.center().clone(), sub.clone());
        unique.entry(key).or_insert(TruncatedCandidate {
            sub,
            wall: cand.wall,
        });
    }
    Ok(unique.into_values().collect())
}

/// What a factor of a splitting is, read off from its character.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FactorKind {
    /// `O(n)`.
    LineBundle { twist: i64 },
    /// `I_Z(n)` with `Z` zero-dimensional of length `length >= 1`.
    IdealOfPointsTwist { twist: i64, length: u64 },
    /// `I_C(n)` for a line (`degree` 1) or conic (`degree` 2) plus `length`
    /// extra points.
    IdealOfCurveTwist {
        degree: i64,
        twist: i64,
        length: u64,
    },
    /// `O_P(n)` on a plane.
    PlaneSheaf { twist: i64 },
    /// `I_{Z/P}(n)` on a plane, `length >= 1`.
    PlanePointsSheaf { twist: i64, length: u64 },
    /// `O_Q(n)` on a quadric, or `I_{Z/Q}(n)` when `length > 0`.
    QuadricSheaf { twist: i64, length: u64 },
}

impl FactorKind {
    fn label(&self) -> String {
        match *self {
            FactorKind::LineBundle { twist } => format!("O({twist})"),
            FactorKind::IdealOfPointsTwist { twist, length } => {
                format!("I_{{Z_{length}}}({twist})")
            }
            FactorKind::IdealOfCurveTwist {
                degree: 1,
                twist,
                length,
            } => {
                format!("I_{{L_{length}}}({twist})")
            }
            FactorKind::IdealOfCurveTwist {
                twist, length: 0, ..
            } => format!("I_{{C_2}}({twist})"),
            FactorKind::IdealOfCurveTwist { twist, length, .. } => {
                format!("I_{{C_2 + Z_{length}}}({twist})")
            }
            FactorKind::PlaneSheaf { twist } => format!("O_P({twist})"),
            FactorKind::PlanePointsSheaf { twist, length } => {
                format!("I_{{Z_{length}/P}}({twist})")
            }
            FactorKind::QuadricSheaf { twist, length: 0 } => format!("O_Q({twist})"),
            FactorKind::QuadricSheaf { twist, length } => format!("I_{{Z_{length}/Q}}({twist})"),
        }
    }

    /// Label of the object with the same character appearing on the right
    /// of the hyperbola, where that differs.
    fn right_label(&self) -> String {
        match *self {
            FactorKind::IdealOfCurveTwist {
                degree: 1,
                twist,
                length,
            } if length > 0 => {
                format!("(O({twist}) -> O_L({}))", twist + length as i64)
            }
            FactorKind::PlanePointsSheaf { twist, length } => {
                format!("i_*(I_{{Z_{length}}}^v)({twist})")
            }
            _ => self.label(),
        }
    }

    fn is_points_ideal(&self) -> bool {
        matches!(self, FactorKind::IdealOfPointsTwist { .. })
    }
}

/// A factor shape with its maximal `ch3` (the length-zero member).
struct Shape {
    e_max: Q,
    make: Box<dyn Fn(u64) -> FactorKind + Send + Sync>,
}

fn classify(f: &[Q; 3]) -> Option<Shape> {
    let [r, c, d] = f;
    if r.is_one() {
        let n = to_i64(c)?;
        let defect = to_i64(&(q(n * n) * half() - d))?;
        return match defect {
            0 => Some(Shape {
                e_max: Char3::line_bundle(n).ch3,
                make: Box::new(move |l| {
                    if l == 0 {
                        FactorKind::LineBundle { twist: n }
                    } else {
                        FactorKind::IdealOfPointsTwist {
                            twist: n,
                            length: l,
                        }
                    }
                }),
            }),
            1 | 2 => Some(Shape {
                e_max: ideal_sheaf_char(defect, 0).ok()?.tensor_line(n).ch3,
                make: Box::new(move |l| FactorKind::IdealOfCurveTwist {
                    degree: defect,
                    twist: n,
                    length: l,
                }),
            }),
            _ => None,
        };
    }
    if r.is_zero() && c.is_one() {
        let i = to_i64(&(-d - half()))?;
        return Some(Shape {
            e_max: qf(1, 6) + q(i * (i + 1)) * half(),
            make: Box::new(move |l| {
                if l == 0 {
                    FactorKind::PlaneSheaf { twist: -i }
                } else {
                    FactorKind::PlanePointsSheaf {
                        twist: -i,
                        length: l,
                    }
                }
            }),
        });
    }
    if r.is_zero() && *c == q(2) {
        let n = to_i64(&((d + q(2)) * half()))?;
        return Some(Shape {
            e_max: Char3::quadric_surface().tensor_line(n).ch3,
            make: Box::new(move |l| FactorKind::QuadricSheaf {
                twist: n,
                length: l,
            }),
        });
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Annotations {
    pub sub_kind: FactorKind,
    pub quot_kind: FactorKind,
    pub left: String,
    pub right: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DestabPair {
    pub sub: Char3,
    pub quot: Char3,
    pub wall: WallLocus,
    pub annotations: Annotations,
    /// `"left"`, or `"left, right"` when an object with the same character
    /// also destabilizes on the right of the hyperbola.
    pub side_note: String,
}

impl DestabPair {
    pub fn sub_length(&self) -> u64 {
        factor_length(&self.annotations.sub_kind)
    }

    pub fn quot_length(&self) -> u64 {
        factor_length(&self.annotations.quot_kind)
    }
}

fn factor_length(k: &FactorKind) -> u64 {
    match *k {
        FactorKind::LineBundle { .. } | FactorKind::PlaneSheaf { .. } => 0,
        FactorKind::IdealOfPointsTwist { length, .. }
        | FactorKind::IdealOfCurveTwist { length, .. }
        | FactorKind::PlanePointsSheaf { length, .. }
        | FactorKind::QuadricSheaf { length, .. } => length,
    }
}

/// Split `ch3` along a truncated candidate.
///
/// Each factor is matched to a shape with a maximal `ch3` value `e_max`; a
/// splitting `ch3(sub) = e` is kept when `e_max(sub) - e` and
/// `e_max(quot) - (v3 - e)` are both non-negative integers. Factor shapes
/// outside the table (rank-one classes with `c1²/2 - ch2 >= 3`, other
/// torsion classes) yield no pairs.
pub fn refine_ch3(v: &Char3, cand: &TruncatedCandidate) -> Vec<DestabPair> {
    let quot3 = cand.quot(v);
    let (Some(sub_shape), Some(quot_shape)) = (classify(&cand.sub), classify(&quot3)) else {
        return Vec::new();
    };
    let slack = &sub_shape.e_max + &quot_shape.e_max - &v.ch3;
    let Some(total) = to_i64(&slack).and_then(|t| u64::try_from(t).ok()) else {
        return Vec::new();
    };
    (0..=total)
        .map(|l| {
            let sub_e = &sub_shape.e_max - q(l as i64);
            let sub = Char3::new(
                cand.sub[0].clone(),
                cand.sub[1].clone(),
                cand.sub[2].clone(),
                sub_e,
            );
            let quot = v - &sub;
            let sub_kind = (sub_shape.make)(l);
            let quot_kind = (quot_shape.make)(total - l);
            let left = format!("<{}, {}>", sub_kind.label(), quot_kind.label());
            let both = !sub_kind.is_points_ideal() && !quot_kind.is_points_ideal();
            let right =
                both.then(|| format!("<{}, {}>", sub_kind.right_label(), quot_kind.right_label()));
            DestabPair {
                sub,
                quot,
                wall: cand.wall.clone(),
                side_note: if both {
                    "left, right".into()
                } else {
                    "left".into()
                },
                annotations: Annotations {
                    sub_kind,
                    quot_kind,
                    left,
                    right,
                },
            }
        })
        .collect()
}

/// All destabilizing pairs with default bounds.
pub fn enumerate_destab_pairs(v: &Char3) -> Result<Vec<DestabPair>> {
    enumerate_destab_pairs_with(v, &EnumBounds::for_class(v))
}

/// Pairs sorted by wall (radius², center), then by `sub`.
pub fn enumerate_destab_pairs_with(v: &Char3, b: &EnumBounds) -> Result<Vec<DestabPair>> {
    let cands = truncated_wall_candidates(v, b)?;
    let mut pairs: Vec<DestabPair> = cands.iter().flat_map(|c| refine_ch3(v, c)).collect();
    pairs.sort_by(|a, b| {
        let (ca, ra) = a.wall.as_circle().expect("circle");
        let (cb, rb) = b.wall.as_circle().expect("circle");
        ra.cmp(rb)
            .then_with(|| ca.cmp(cb))
            .then_with(|| a.sub.cmp(&b.sub))
    });
    Ok(pairs)
}

/// Group consecutive pairs sharing a wall.
pub fn group_by_wall(pairs: &[DestabPair]) -> Vec<(WallLocus, Vec<&DestabPair>)> {
    let mut out: Vec<(WallLocus, Vec<&DestabPair>)> = Vec::new();
    for p in pairs {
        match out.last_mut() {
            Some((w, ps)) if *w == p.wall => ps.push(p),
            _ => out.push((p.wall.clone(), vec![p])),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DtptSplitting {
    pub ideal: Char3,
    pub torsion_length: i64,
}

/// Splittings `v = ch(I_C) - ch(T)` across the Im Z = 0 wall, where `T` has
/// length `i` and `C` keeps the degree with genus raised by `i` up to the
/// planar bound.
pub fn dtpt_splittings(v: &Char3) -> Result<Vec<DtptSplitting>> {
    let hp = hilbert_polynomial(v).map_err(|e| {
        Error::UnsupportedRegime(format!("DT/PT splittings need a class (1,0,-d,e): {e}"))
    })?;
    let top = genus_bound(hp.degree, true)?;
    Ok((1..=top - hp.genus)
        .map(|i| DtptSplitting {
            ideal: v + &Char3::points(i),
            torsion_length: i,
        })
        .collect())
}

/// Maximal arithmetic genus of a degree-`d` curve: `(d-1)(d-2)/2` when plane
/// curves are allowed, `(d-2)(d-3)/2` otherwise.
pub fn genus_bound(d: i64, planar_allowed: bool) -> Result<i64> {
    if planar_allowed {
        if d < 1 {
            return Err(Error::domain(format!("degree must be >= 1, got {d}")));
        }
        Ok((d - 1) * (d - 2) / 2)
    } else {
        if d < 3 {
            return Err(Error::domain(format!(
                "non-planar bound needs degree >= 3, got {d}"
            )));
        }
        Ok((d - 2) * (d - 3) / 2)
    }
}

/// Rough size of the search space, for benches.
pub fn search_space_size(v: &Char3, b: &EnumBounds) -> usize {
    (b.rank_min..=b.rank_max)
        .map(|r| {
            let (lo, hi) = ch1_range(v, &b.delta_cap, r);
            (hi - lo + 1u32).to_usize().unwrap_or(0)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Char3 {
        s.parse().unwrap()
    }

    fn v() -> Char3 {
        c("1,0,-6,15")
    }

    #[test]
    fn four_truncated_walls() {
        let cands = truncated_wall_candidates(&v(), &EnumBounds::for_class(&v())).unwrap();
        let walls: Vec<(Q, Q)> = cands
            .iter()
            .map(|c| (c.center().clone(), c.radius_sq().clone()))
            .collect();
        assert_eq!(
            walls,
            vec![
                (q(-4), q(4)),
                (qf(-9, 2), qf(33, 4)),
                (qf(-11, 2), qf(73, 4)),
                (qf(-13, 2), qf(121, 4)),
            ]
        );
        let twisted: Vec<[Q; 3]> = cands
            .iter()
            .map(|c| {
                Char3::new(c.sub[0].clone(), c.sub[1].clone(), c.sub[2].clone(), q(0))
                    .twist(&q(-4))
                    .truncated()
            })
            .collect();
        assert_eq!(
            twisted,
            vec![
                [q(1), q(2), q(2)],
                [q(1), q(3), qf(5, 2)],
                [q(1), q(3), qf(7, 2)],
                [q(1), q(3), qf(9, 2)],
            ]
        );
    }

    #[test]
    fn line_bundle_class_has_no_walls() {
        let o = Char3::structure_sheaf();
        assert!(truncated_wall_candidates(&o, &EnumBounds::for_class(&o))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn bmt_removes_small_wall() {
        // O(-3) and I_L(-2) share the circle (β + 7/2)² + α² = 1/4
        let w = numerical_wall(&v(), &Char3::line_bundle(-3));
        assert_eq!(w, WallLocus::circle(qf(-7, 2), qf(1, 4)));
        assert!(!apex_bmt_feasible(&v(), &[q(1), q(-3), qf(9, 2)], &w));
        assert!(!apex_bmt_feasible(&v(), &[q(1), q(-2), q(1)], &w));
        let w1 = numerical_wall(&v(), &Char3::line_bundle(-2));
        assert!(apex_bmt_feasible(&v(), &[q(1), q(-2), q(2)], &w1));
    }

    #[test]
    fn rejects_other_ranks() {
        let x = c("2,0,-6,15");
        assert!(matches!(
            truncated_wall_candidates(&x, &EnumBounds::for_class(&x)),
            Err(Error::UnsupportedRegime(_))
        ));
        assert!(matches!(
            enumerate_destab_pairs(&c("0,1,0,0")),
            Err(Error::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn pair_counts_and_characters() {
        let pairs = enumerate_destab_pairs(&v()).unwrap();
        let counts: Vec<usize> = group_by_wall(&pairs).iter().map(|(_, p)| p.len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 7]);
        for p in &pairs {
            assert_eq!(&p.sub + &p.quot, v());
        }
        let groups = group_by_wall(&pairs);
        assert_eq!(groups[0].1[0].sub, Char3::line_bundle(-2));
        assert_eq!(groups[0].1[0].quot, c("0,2,-8,49/3"));
        assert_eq!(groups[0].1[0].annotations.left, "<O(-2), O_Q(-3)>");
        assert_eq!(groups[1].1[0].sub, c("1,-1,-3/2,29/6"));
        assert_eq!(groups[1].1[0].annotations.left, "<I_{C_2}(-1), O_P(-4)>");

        let e3: Vec<Q> = groups[2].1.iter().map(|p| p.sub.ch3.clone()).collect();
        assert_eq!(e3, vec![qf(-1, 6), qf(5, 6), qf(11, 6)]);

        let wall4: Vec<&DestabPair> = groups[3].1.clone();
        for k in 0..=6i64 {
            let p = wall4.iter().find(|p| p.sub_length() == k as u64).unwrap();
            assert_eq!(p.sub, Char3::new(q(1), q(-1), half(), qf(-6 * k - 1, 6)));
            assert_eq!(
                p.quot,
                Char3::new(q(0), q(1), qf(-13, 2), qf(6 * k + 91, 6))
            );
            assert_eq!(p.quot_length(), (6 - k) as u64);
        }
    }

    #[test]
    fn side_notes() {
        let pairs = enumerate_destab_pairs(&v()).unwrap();
        let g = group_by_wall(&pairs);
        let wall3: Vec<Option<&str>> = g[2]
            .1
            .iter()
            .map(|p| p.annotations.right.as_deref())
            .collect();
        assert_eq!(
            wall3,
            vec![
                Some("<(O(-1) -> O_L(1)), O_P(-5)>"),
                Some("<(O(-1) -> O_L(0)), i_*(I_{Z_1}^v)(-5)>"),
                Some("<I_{L_0}(-1), i_*(I_{Z_2}^v)(-5)>"),
            ]
        );
        let right4: Vec<&DestabPair> = g[3]
            .1
            .iter()
            .copied()
            .filter(|p| p.right_is_some())
            .collect();
        assert_eq!(right4.len(), 1);
        assert_eq!(right4[0].sub, Char3::line_bundle(-1));
        assert_eq!(
            right4[0].annotations.right.as_deref(),
            Some("<O(-1), i_*(I_{Z_6}^v)(-6)>")
        );
        assert_eq!(right4[0].side_note, "left, right");
        assert!(g[3]
            .1
            .iter()
            .filter(|p| !p.right_is_some())
            .all(|p| p.side_note == "left"));
    }

    impl DestabPair {
        fn right_is_some(&self) -> bool {
            self.annotations.right.is_some()
        }
    }

    #[test]
    fn sequential_matches_parallel() {
        let b = EnumBounds::for_class(&v())
            .with_ranks(-2, 3)
            .with_delta_cap(q(24));
        let seq = truncated_wall_candidates(&v(), &b.clone().with_execution(Execution::Sequential));
        let par = truncated_wall_candidates(&v(), &b.with_execution(Execution::Parallel));
        assert_eq!(seq.unwrap(), par.unwrap());
    }

    #[test]
    fn enlarged_bounds_restrict_to_default() {
        let default = truncated_wall_candidates(&v(), &EnumBounds::for_class(&v())).unwrap();
        let wide = truncated_wall_candidates(
            &v(),
            &EnumBounds::for_class(&v())
                .with_ranks(-2, 3)
                .with_delta_cap(q(24)),
        )
        .unwrap();
        let cap = q(12);
        let restricted: Vec<TruncatedCandidate> = wide
            .into_iter()
            .filter(|c| {
                let quot = c.quot(&v());
                let d = |t: &[Q; 3]| &t[1] * &t[1] - q(2) * &t[0] * &t[2];
                (c.sub[0] == q(0) || c.sub[0] == q(1)) && d(&c.sub) <= cap && d(&quot) <= cap
            })
            .collect();
        assert_eq!(restricted, default);
    }

    #[test]
    fn dtpt_examples() {
        let s = dtpt_splittings(&v()).unwrap();
        assert_eq!(s.len(), 6);
        for (i, sp) in s.iter().enumerate() {
            let i = i as i64 + 1;
            assert_eq!(sp.torsion_length, i);
            assert_eq!(sp.ideal, Char3::from_ints(1, 0, -6, 15 + i));
            assert_eq!(&sp.ideal.ch3 - &v().ch3, q(sp.torsion_length));
        }
        let hp = hilbert_polynomial(&s[5].ideal).unwrap();
        assert_eq!((hp.degree, hp.genus), (6, 10));
        assert!(s.iter().all(|sp| sp.torsion_length != 7));
        assert!(matches!(
            dtpt_splittings(&c("1,1,-6,15")),
            Err(Error::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn genus_bounds() {
        assert_eq!(genus_bound(6, true).unwrap(), 10);
        assert_eq!(genus_bound(6, false).unwrap(), 6);
        assert_eq!(genus_bound(3, false).unwrap(), 0);
        assert!(genus_bound(2, false).is_err());
        assert!(genus_bound(0, true).is_err());
    }
}

//! Piecewise-linear paths modulo reparametrization and the root operators.
//!
//! An [`AffineWeight`] is `λ + ℓΛ₀` modulo `ℝδ`. Finite-algebra paths simply
//! have every level equal to zero. Node `0` addresses the affine simple root
//! `α₀ = δ - θ`, which acts as `-θ` once `δ` is dropped.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{display_q, format_q, parse_q, q, Q};
use crate::rootsystem::{RootSystem, Weight};
use crate::Result;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AffineWeight {
    pub level: Q,
    pub finite: Weight,
}

impl AffineWeight {
    pub fn new(level: Q, finite: Weight) -> Self {
        AffineWeight { level, finite }
    }

    pub fn finite(finite: Weight) -> Self {
        AffineWeight {
            level: q(0),
            finite,
        }
    }

    pub fn zero(rank: usize) -> Self {
        AffineWeight::finite(Weight::zero(rank))
    }

    /// `Λ₀`.
    pub fn lambda0(rank: usize) -> Self {
        AffineWeight {
            level: q(1),
            finite: Weight::zero(rank),
        }
    }

    pub fn rank(&self) -> usize {
        self.finite.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.level.is_zero() && self.finite.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.level.is_integer() && self.finite.is_integral()
    }

    pub fn scale(&self, s: Q) -> AffineWeight {
        AffineWeight {
            level: self.level * s,
            finite: self.finite.scale(s),
        }
    }

    /// `Some(c)` with `other = c·self`, `c > 0`.
    fn positive_ratio(&self, other: &AffineWeight) -> Option<Q> {
        let (a, b) = std::iter::once((&self.level, &other.level))
            .chain(self.finite.coords().iter().zip(other.finite.coords()))
            .find(|(a, _)| !a.is_zero())?;
        let c = b / a;
        if !c.is_positive() {
            return None;
        }
        (self.scale(c) == *other).then_some(c)
    }

    pub fn to_json(&self) -> StepJson {
        StepJson(
            format_q(&self.level),
            self.finite.coords().iter().map(format_q).collect(),
        )
    }

    pub fn from_json(j: &StepJson) -> Result<Self> {
        let level = parse_q(&j.0)?;
        let coords = j.1.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>()?;
        Ok(AffineWeight::new(level, Weight::from_coords(coords)))
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.level.is_zero() {
            write!(f, "{}", self.finite)
        } else {
            write!(f, "{}Λ₀+{}", display_q(&self.level), self.finite)
        }
    }
}

impl Add for &AffineWeight {
    type Output = AffineWeight;
    fn add(self, rhs: &AffineWeight) -> AffineWeight {
        AffineWeight {
            level: self.level + rhs.level,
            finite: &self.finite + &rhs.finite,
        }
    }
}

impl Sub for &AffineWeight {
    type Output = AffineWeight;
    fn sub(self, rhs: &AffineWeight) -> AffineWeight {
        AffineWeight {
            level: self.level - rhs.level,
            finite: &self.finite - &rhs.finite,
        }
    }
}

impl Neg for &AffineWeight {
    type Output = AffineWeight;
    fn neg(self) -> AffineWeight {
        AffineWeight {
            level: -self.level,
            finite: -&self.finite,
        }
    }
}

/// JSON form of one step: `[level, [c_1, ..., c_r]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson(pub String, pub Vec<String>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathJson {
    pub steps: Vec<StepJson>,
}

impl RootSystem {
    /// `⟨v, α_i∨⟩` for `i ∈ 0..=r`; `α₀∨ = K - θ∨`.
    #[inline]
    pub fn pair_affine(&self, v: &AffineWeight, i: usize) -> Q {
        if i == 0 {
            v.level - self.pair_theta_coroot(&v.finite)
        } else {
            v.finite.coord(i)
        }
    }

    /// `α_i` modulo `δ` as an affine weight (`α₀ ≡ -θ`).
    pub fn affine_simple_root(&self, i: usize) -> AffineWeight {
        if i == 0 {
            AffineWeight::finite(-self.theta_weight())
        } else {
            AffineWeight::finite(self.simple_root(i).clone())
        }
    }

    /// `s_i(v) = v - ⟨v, α_i∨⟩ α_i`, `i ∈ 0..=r`.
    pub fn reflect_affine(&self, i: usize, v: &AffineWeight) -> AffineWeight {
        let c = self.pair_affine(v, i);
        if c.is_zero() {
            return v.clone();
        }
        let mut out = v.clone();
        if i == 0 {
            out.finite += &self.theta_weight().scale(c);
        } else {
            out.finite -= &self.simple_root(i).scale(c);
        }
        out
    }

    pub fn affine_index_set(&self) -> Vec<usize> {
        (0..=self.rank()).collect()
    }

    pub fn finite_index_set(&self) -> Vec<usize> {
        (1..=self.rank()).collect()
    }
}

/// A path `(v₁ ⋆ ⋯ ⋆ v_k)` from the origin, stored in canonical form: no zero
/// steps and no two consecutive positively proportional steps.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Path {
    steps: Vec<AffineWeight>,
}

impl Path {
    pub fn empty() -> Self {
        Path { steps: Vec::new() }
    }

    pub fn straight(v: AffineWeight) -> Self {
        Path::canonicalize(vec![v])
    }

    /// Straight line to a finite weight.
    pub fn straight_finite(w: Weight) -> Self {
        Path::straight(AffineWeight::finite(w))
    }

    pub fn canonicalize(raw: Vec<AffineWeight>) -> Self {
        let mut steps: Vec<AffineWeight> = Vec::with_capacity(raw.len());
        for v in raw {
            if v.is_zero() {
                continue;
            }
            if let Some(last) = steps.last_mut() {
                if last.positive_ratio(&v).is_some() {
                    *last = &*last + &v;
                    continue;
                }
            }
            steps.push(v);
        }
        Path { steps }
    }

    pub fn steps(&self) -> &[AffineWeight] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Path {
        if self.steps.is_empty() {
            return other.clone();
        }
        if other.steps.is_empty() {
            return self.clone();
        }
        let mut raw = Vec::with_capacity(self.len() + other.len());
        raw.extend_from_slice(&self.steps);
        raw.extend_from_slice(&other.steps);
        Path::canonicalize(raw)
    }

    /// Endpoint; `rank` is needed for the empty path.
    pub fn weight(&self, rank: usize) -> AffineWeight {
        self.steps
            .iter()
            .fold(AffineWeight::zero(rank), |acc, v| &acc + v)
    }

    pub fn is_integral(&self) -> bool {
        self.steps.iter().all(AffineWeight::is_integral)
    }

    /// Applies a linear map to every step.
    pub fn act_linear<F>(&self, map: F) -> Path
    where
        F: Fn(&AffineWeight) -> AffineWeight,
    {
        Path::canonicalize(self.steps.iter().map(map).collect())
    }

    pub fn to_json(&self) -> PathJson {
        PathJson {
            steps: self.steps.iter().map(AffineWeight::to_json).collect(),
        }
    }

    pub fn from_json(j: &PathJson) -> Result<Self> {
        let raw = j
            .steps
            .iter()
            .map(AffineWeight::from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(Path::canonicalize(raw))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps.is_empty() {
            return f.write_str("()");
        }
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(" ⋆ "))
    }
}

/// Cumulative heights `h_i` at the step boundaries.
fn breakpoint_heights(rs: &RootSystem, path: &Path, i: usize) -> Vec<Q> {
    let mut h = Vec::with_capacity(path.len() + 1);
    let mut acc = q(0);
    h.push(acc);
    for v in path.steps() {
        acc += rs.pair_affine(v, i);
        h.push(acc);
    }
    h
}

/// Breakpoints `(t_j, h_i(t_j))` with step `j` occupying `[j/k, (j+1)/k]`.
pub fn height_profile(rs: &RootSystem, path: &Path, i: usize) -> Vec<(Q, Q)> {
    let k = path.len().max(1) as i64;
    breakpoint_heights(rs, path, i)
        .into_iter()
        .enumerate()
        .map(|(j, h)| (Q::new(j as i64, k), h))
        .collect()
}

fn min_height(h: &[Q]) -> Q {
    *h.iter().min().expect("non-empty")
}

/// The lowering operator `f_i`, `i ∈ 0..=r`. `None` means undefined.
pub fn lower_f(rs: &RootSystem, path: &Path, i: usize) -> Option<Path> {
    let h = breakpoint_heights(rs, path, i);
    let m = min_height(&h);
    let p = h.iter().rposition(|x| *x == m)?;
    let target = m + q(1);
    let qi = (p + 1..h.len()).find(|&j| h[j] >= target)?;
    // crossing of M+1 inside step qi-1
    let step = qi - 1;
    let s = (target - h[step]) / (h[qi] - h[step]);
    let steps = path.steps();
    let mut raw = Vec::with_capacity(steps.len() + 1);
    raw.extend_from_slice(&steps[..p]);
    for v in &steps[p..step] {
        raw.push(rs.reflect_affine(i, v));
    }
    raw.push(rs.reflect_affine(i, &steps[step].scale(s)));
    if s < q(1) {
        raw.push(steps[step].scale(q(1) - s));
    }
    raw.extend_from_slice(&steps[qi..]);
    Some(Path::canonicalize(raw))
}

/// The raising operator `e_i`, mirror of [`lower_f`]. `None` means undefined.
pub fn raise_e(rs: &RootSystem, path: &Path, i: usize) -> Option<Path> {
    let h = breakpoint_heights(rs, path, i);
    let m = min_height(&h);
    let t1 = h.iter().position(|x| *x == m)?;
    let target = m + q(1);
    let u = (0..t1).rev().find(|&j| h[j] >= target)?;
    // crossing of M+1 inside step u
    let s = (target - h[u]) / (h[u + 1] - h[u]);
    let steps = path.steps();
    let mut raw = Vec::with_capacity(steps.len() + 1);
    raw.extend_from_slice(&steps[..u]);
    if s > q(0) {
        raw.push(steps[u].scale(s));
    }
    raw.push(rs.reflect_affine(i, &steps[u].scale(q(1) - s)));
    for v in &steps[u + 1..t1] {
        raw.push(rs.reflect_affine(i, v));
    }
    raw.extend_from_slice(&steps[t1..]);
    Some(Path::canonicalize(raw))
}

/// `h_i(t) ≥ 0` for all `t` and all `i` in `1..=r`, or `0..=r` when `affine`.
pub fn is_dominant(rs: &RootSystem, path: &Path, affine: bool) -> bool {
    let start = if affine { 0 } else { 1 };
    (start..=rs.rank()).all(|i| is_dominant_for(rs, path, i))
}

pub fn is_dominant_for(rs: &RootSystem, path: &Path, i: usize) -> bool {
    let mut acc = q(0);
    for v in path.steps() {
        acc += rs.pair_affine(v, i);
        if acc < q(0) {
            return false;
        }
    }
    true
}

/// Every local minimum of every `h_i`, `i ∈ 0..=r`, is an integer. This is
/// the integrality the root operators preserve; steps themselves may be
/// fractional (`½τ₁ ⋆ ½τ₂`).
pub fn has_integral_minima(rs: &RootSystem, path: &Path) -> bool {
    rs.affine_index_set().into_iter().all(|i| {
        let h = breakpoint_heights(rs, path, i);
        (0..h.len()).all(|j| {
            let left = j == 0 || h[j - 1] >= h[j];
            let right = j + 1 == h.len() || h[j + 1] >= h[j];
            !(left && right) || h[j].is_integer()
        })
    })
}

/// `h_i ≥ 0` throughout and `⟨wt π, α_i∨⟩ = 0`.
pub fn is_neutral(rs: &RootSystem, path: &Path, i: usize) -> bool {
    let h = breakpoint_heights(rs, path, i);
    h.iter().all(|x| *x >= q(0)) && h.last().is_some_and(|x| x.is_zero())
}

/// Maximal `k` with `f_i^k π` defined, together with the string.
pub fn f_string(rs: &RootSystem, path: &Path, i: usize) -> Vec<Path> {
    let mut out = vec![path.clone()];
    while let Some(next) = lower_f(rs, out.last().expect("non-empty"), i) {
        out.push(next);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use crate::rootsystem::CartanType;

    fn fin(c: &[i64]) -> AffineWeight {
        AffineWeight::finite(Weight::from_ints(c))
    }

    fn path(steps: &[AffineWeight]) -> Path {
        Path::canonicalize(steps.to_vec())
    }

    #[test]
    fn canonical_form() {
        let w = fin(&[1]);
        assert_eq!(path(&[w.clone(), w.clone()]), path(&[fin(&[2])]));
        assert_eq!(
            path(&[w.clone(), fin(&[0]), fin(&[-1])]).steps(),
            &[w.clone(), fin(&[-1])]
        );
        assert_eq!(path(&[w.clone(), fin(&[-1])]).len(), 2);
        let p = path(&[w.clone(), w.scale(qr(1, 2)), fin(&[-1]), fin(&[0])]);
        assert_eq!(Path::canonicalize(p.steps().to_vec()), p);
    }

    #[test]
    fn concat_and_weight() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        let a = Path::straight(fin(&[1]));
        let b = Path::straight(fin(&[-1]));
        let ab = a.concat(&b);
        assert_eq!(ab.len(), 2);
        assert!(ab.weight(1).is_zero());
        assert_eq!(Path::empty().concat(&a), a);
        let l0 = Path::straight(AffineWeight::lambda0(1));
        let c = l0.concat(&a);
        assert_eq!(c.steps(), &[AffineWeight::lambda0(1), fin(&[1])]);
        assert_eq!(c.weight(1), AffineWeight::new(q(1), Weight::from_ints(&[1])));
        assert_eq!(rs.rank(), 1);
    }

    #[test]
    fn e6_pi3_has_weight_zero_and_is_dominant() {
        let rs = RootSystem::new(CartanType::E, 6).unwrap();
        let w1 = Weight::fundamental(6, 1);
        let w6 = Weight::fundamental(6, 6);
        let pi3 = path(&[
            AffineWeight::finite(w6.clone()),
            AffineWeight::finite(&w1 - &w6),
            AffineWeight::finite(-&w1),
        ]);
        assert!(pi3.weight(6).is_zero());
        assert!(is_dominant(&rs, &pi3, false));
        for i in 1..=6 {
            assert!(is_neutral(&rs, &pi3, i));
        }
        let l0 = Path::straight(AffineWeight::lambda0(6));
        assert!(is_dominant(&rs, &l0.concat(&pi3), true));
    }

    #[test]
    fn height_profiles() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        assert_eq!(
            height_profile(&rs, &Path::straight(fin(&[1])), 1),
            vec![(q(0), q(0)), (q(1), q(1))]
        );
        assert_eq!(
            height_profile(&rs, &Path::straight(AffineWeight::lambda0(1)), 0),
            vec![(q(0), q(0)), (q(1), q(1))]
        );
        assert_eq!(
            height_profile(&rs, &path(&[fin(&[1]), fin(&[-1])]), 1),
            vec![(q(0), q(0)), (qr(1, 2), q(1)), (q(1), q(0))]
        );
    }

    #[test]
    fn a1_operators() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        let up = Path::straight(fin(&[1]));
        let down = Path::straight(fin(&[-1]));
        assert_eq!(lower_f(&rs, &up, 1), Some(down.clone()));
        assert_eq!(lower_f(&rs, &down, 1), None);
        assert_eq!(raise_e(&rs, &down, 1), Some(up.clone()));
        assert_eq!(raise_e(&rs, &up, 1), None);

        let l0 = Path::straight(AffineWeight::lambda0(1));
        let f0 = lower_f(&rs, &l0, 0).unwrap();
        assert_eq!(f0, Path::straight(AffineWeight::new(q(1), Weight::from_ints(&[2]))));
        assert_eq!(raise_e(&rs, &f0, 0), Some(l0));
    }

    #[test]
    fn f_cuts_inside_a_step() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        // (2ϖ): reflect the first half.
        let p = Path::straight(fin(&[2]));
        let f = lower_f(&rs, &p, 1).unwrap();
        assert_eq!(f.steps(), &[fin(&[-1]), fin(&[1])]);
        assert_eq!(raise_e(&rs, &f, 1), Some(p));
    }

    #[test]
    fn f_reaching_top_at_endpoint() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        // h: 0 → -1 → 0; last minimum at t = 1/2, reaches M+1 exactly at t = 1.
        let p = path(&[fin(&[-1]), fin(&[1])]);
        assert_eq!(lower_f(&rs, &p, 1), Some(path(&[fin(&[-1]), fin(&[-1])])));
    }

    #[test]
    fn dominance_and_neutrality() {
        let rs = RootSystem::new(CartanType::A, 1).unwrap();
        assert!(!is_dominant(&rs, &Path::straight(fin(&[-1])), false));
        let updown = path(&[fin(&[1]), fin(&[-1])]);
        assert!(is_neutral(&rs, &updown, 1));
        assert!(!is_neutral(&rs, &Path::straight(fin(&[1])), 1));
    }

    #[test]
    fn integrality() {
        let half = AffineWeight::finite(Weight::from_coords([qr(1, 2)]));
        assert!(path(&[half.clone(), half.clone()]).is_integral());
        let other = AffineWeight::finite(Weight::from_coords([qr(-1, 2)]));
        assert!(!path(&[half, other]).is_integral());
        assert!(Path::straight(fin(&[1])).is_integral());
    }

    #[test]
    fn linear_actions() {
        let a1 = RootSystem::new(CartanType::A, 1).unwrap();
        assert_eq!(
            Path::straight(fin(&[1])).act_linear(|v| a1.reflect_affine(1, v)),
            Path::straight(fin(&[-1]))
        );
        let a2 = RootSystem::new(CartanType::A, 2).unwrap();
        let w1 = Path::straight(fin(&[1, 0]));
        assert_eq!(w1.act_linear(|v| a2.reflect_affine(2, v)), w1);
        let w0 = a2.w0_map().clone();
        assert_eq!(
            w1.act_linear(|v| AffineWeight::new(v.level, w0.apply(&v.finite))),
            Path::straight(fin(&[0, -1]))
        );
    }

    #[test]
    fn json_round_trip() {
        let p = path(&[
            AffineWeight::new(q(1), Weight::from_coords([qr(1, 2), q(0)])),
            fin(&[-1, 2]),
        ]);
        let j = p.to_json();
        assert_eq!(j.steps[0].0, "1/1");
        assert_eq!(j.steps[0].1[0], "1/2");
        assert_eq!(Path::from_json(&j).unwrap(), p);
    }
}

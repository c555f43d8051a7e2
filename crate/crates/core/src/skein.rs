//! Semi-infinite paths ("skeins") `(⋯ ⋆ π_N ⋆ π_N ⋆ tail ⊢ Λ)`, presented by
//! a repeating coil and a finite tail, with the root operators acting on them
//! through large enough truncations.

use std::collections::{BTreeSet, HashSet};
use std::hash::{Hash, Hasher};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::affine::{build_pi_chain, rhs_tensor, sigma_weight, ExtendedElt, Report};
use crate::crystal::{bisimilar_to_depth, CrystalModel, PathModel};
use crate::par::*;
use crate::pathspace::{
    has_integral_minima, is_dominant, lower_f, raise_e, AffineWeight, Path, PathJson, StepJson,
};
use crate::rootsystem::{RootSystem, Weight};
use crate::{Error, Result};

/// Eventually periodic skein. The truncation at `k` coils is
/// `(Λ₀) ⋆ coil^{k - expanded} ⋆ tail`; the leading `Λ₀` is the makeweight
/// step and stays `Λ₀` under every operator because coils have weight 0.
///
/// Equality ignores `expanded`: it only fixes how truncations are indexed.
#[derive(Clone, Debug)]
pub struct Skein {
    pub endpoint: AffineWeight,
    pub coil: Path,
    pub tail: Path,
    pub expanded: i64,
}

impl PartialEq for Skein {
    fn eq(&self, other: &Self) -> bool {
        self.endpoint == other.endpoint && self.coil == other.coil && self.tail == other.tail
    }
}

impl Eq for Skein {}

impl Hash for Skein {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.endpoint.hash(state);
        self.tail.hash(state);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinJson {
    pub endpoint: StepJson,
    pub coil: PathJson,
    pub tail: PathJson,
    pub expanded: i64,
}

impl Skein {
    pub fn head(&self) -> Path {
        Path::straight(AffineWeight::lambda0(self.endpoint.rank()))
    }

    /// `(Λ₀) ⋆ coil^{k - expanded} ⋆ tail`.
    pub fn truncate(&self, k: i64) -> Result<Path> {
        if k < self.expanded {
            return Err(Error::Usage(format!(
                "truncation at {k} coils but {} are absorbed",
                self.expanded
            )));
        }
        Ok(self.with_coils(self.head(), (k - self.expanded) as usize))
    }

    fn with_coils(&self, mut p: Path, coils: usize) -> Path {
        for _ in 0..coils {
            p = p.concat(&self.coil);
        }
        p.concat(&self.tail)
    }

    /// Strips whole coils from the front of the tail.
    fn normalize(mut self) -> Skein {
        while !self.tail.is_empty() {
            match strip_prefix(&self.tail, &self.coil) {
                Some(rest) => {
                    self.tail = rest;
                    self.expanded -= 1;
                }
                None => break,
            }
        }
        self
    }

    pub fn to_json(&self) -> SkeinJson {
        SkeinJson {
            endpoint: self.endpoint.to_json(),
            coil: self.coil.to_json(),
            tail: self.tail.to_json(),
            expanded: self.expanded,
        }
    }

    pub fn from_json(j: &SkeinJson) -> Result<Skein> {
        Ok(Skein {
            endpoint: AffineWeight::from_json(&j.endpoint)?,
            coil: Path::from_json(&j.coil)?,
            tail: Path::from_json(&j.tail)?,
            expanded: j.expanded,
        })
    }
}

/// `q` with `p = prefix ⋆ q`, allowing the last prefix step to have been
/// merged with the first step of `q`.
pub fn strip_prefix(p: &Path, prefix: &Path) -> Option<Path> {
    let (ps, xs) = (p.steps(), prefix.steps());
    if xs.is_empty() {
        return Some(p.clone());
    }
    let n = xs.len();
    if ps.len() < n || ps[..n - 1] != xs[..n - 1] {
        return None;
    }
    let mut rest: Vec<AffineWeight> = Vec::with_capacity(ps.len() - n + 1);
    if ps[n - 1] != xs[n - 1] {
        let diff = &ps[n - 1] - &xs[n - 1];
        // merged steps are positive multiples of each other
        if Path::canonicalize(vec![xs[n - 1].clone(), diff.clone()]).len() != 1 || diff.is_zero() {
            return None;
        }
        rest.push(diff);
    }
    rest.extend_from_slice(&ps[n..]);
    let q = Path::canonicalize(rest);
    (prefix.concat(&q) == *p).then_some(q)
}

/// `π_N = (σ^{-N}(ϖ*) ⋆ ⋯ ⋆ σ^{-1}(ϖ*))`, a finite-dominant path of weight 0.
pub fn build_pi_n(rs: &RootSystem, node: usize) -> Result<Path> {
    let s = rs.sigma(node)?;
    let r = rs.rank();
    let star = AffineWeight::finite(Weight::fundamental(r, s.dual_node));
    let n = s.order as i64;
    let steps = (1..=n).rev().map(|k| sigma_weight(s, -k, &star)).collect();
    let p = Path::canonicalize(steps);
    if !p.weight(r).is_zero() || !is_dominant(rs, &p, false) {
        return Err(Error::Invariant(format!("{p} is not dominant of weight 0")));
    }
    Ok(p)
}

/// `π_∞ = (⋯ ⋆ π_N ⋆ π_N ⊢ Λ₀)`.
pub fn build_skein(rs: &RootSystem, node: usize) -> Result<Skein> {
    let coil = build_pi_n(rs, node)?;
    if !is_dominant(rs, &Path::straight(AffineWeight::lambda0(rs.rank())).concat(&coil), true) {
        return Err(Error::Invariant("coil leaves the fundamental alcove".into()));
    }
    Ok(Skein {
        endpoint: AffineWeight::lambda0(rs.rank()),
        coil,
        tail: Path::empty(),
        expanded: 0,
    })
}

#[derive(Clone, Copy)]
enum Op {
    Lower,
    Raise,
}

fn apply(rs: &RootSystem, op: Op, p: &Path, i: usize) -> Option<Path> {
    match op {
        Op::Lower => lower_f(rs, p, i),
        Op::Raise => raise_e(rs, p, i),
    }
}

/// Coils expanded in front of the tail before giving up. One of them must come
/// back untouched, so at most `MAX_EXTRA - 1 = 1` coil is absorbed per operator.
const MAX_EXTRA: usize = 2;

fn skein_op(rs: &RootSystem, s: &Skein, i: usize, op: Op) -> Result<Option<Skein>> {
    let head = s.head();
    let prefix = head.concat(&s.coil);
    let mut results = Vec::with_capacity(MAX_EXTRA + 2);
    for extra in 1..=MAX_EXTRA + 1 {
        results.push(apply(rs, op, &s.with_coils(head.clone(), extra), i));
    }
    for extra in 1..=MAX_EXTRA {
        let (here, next) = (&results[extra - 1], &results[extra]);
        match (here, next) {
            (None, None) => return Ok(None),
            (Some(r), Some(r2)) => {
                let Some(x) = strip_prefix(r, &prefix) else {
                    continue;
                };
                if *r2 != prefix.concat(&s.coil).concat(&x) {
                    continue;
                }
                if !has_integral_minima(rs, r) {
                    return Err(Error::Invariant(format!("non-integral truncation {r}")));
                }
                let sign = match op {
                    Op::Lower => -1,
                    Op::Raise => 1,
                };
                let alpha = rs.affine_simple_root(i).scale(sign.into());
                return Ok(Some(
                    Skein {
                        endpoint: &s.endpoint + &alpha,
                        coil: s.coil.clone(),
                        tail: x,
                        expanded: s.expanded + extra as i64 - 1,
                    }
                    .normalize(),
                ));
            }
            _ => {}
        }
    }
    Err(Error::Invariant(format!(
        "operator {i} did not stabilise within {MAX_EXTRA} extra coils"
    )))
}

/// `f_i` on a skein: the unique `π′` with `π′[k] = f_i(π[k])` for large `k`.
pub fn skein_lower(rs: &RootSystem, s: &Skein, i: usize) -> Result<Option<Skein>> {
    skein_op(rs, s, i, Op::Lower)
}

pub fn skein_raise(rs: &RootSystem, s: &Skein, i: usize) -> Result<Option<Skein>> {
    skein_op(rs, s, i, Op::Raise)
}

/// Skein crystal for bisimulation. Stabilization failures panic: they mean
/// the finite presentation is wrong, not that an operator is undefined.
pub struct SkeinModel<'a> {
    pub rs: &'a RootSystem,
}

impl CrystalModel for SkeinModel<'_> {
    type Elem = Skein;
    fn lower(&self, x: &Skein, i: usize) -> Option<Skein> {
        skein_lower(self.rs, x, i).expect("skein operator stabilises")
    }
    fn raise(&self, x: &Skein, i: usize) -> Option<Skein> {
        skein_raise(self.rs, x, i).expect("skein operator stabilises")
    }
    fn weight(&self, x: &Skein) -> AffineWeight {
        x.endpoint.clone()
    }
}

/// Demazure set of skeins for an affine word, applied right to left.
pub fn skein_demazure(
    rs: &RootSystem,
    seed: &Skein,
    word: &[usize],
    budget: usize,
) -> Result<HashSet<Skein>> {
    let mut current: HashSet<Skein> = HashSet::from([seed.clone()]);
    for &i in word.iter().rev() {
        let items: Vec<Skein> = current.into_iter().collect();
        let strings: Vec<Result<Vec<Skein>>> = items
            .into_par_iter()
            .map(|s| {
                let mut out = vec![s];
                while let Some(next) = skein_lower(rs, out.last().expect("non-empty"), i)? {
                    out.push(next);
                }
                Ok(out)
            })
            .collect();
        current = HashSet::new();
        for s in strings {
            current.extend(s?);
        }
        if current.len() > budget {
            return Err(Error::BudgetExceeded {
                budget,
                seen: current.len(),
                frontier: 0,
            });
        }
    }
    Ok(current)
}

/// Rows of the level-one check: Demazure crystal of `Λ₀ ⋆ π_N^m` for the
/// translation by `-Nmϖ∨` against truncations of the skein Demazure crystal.
pub fn skein_row(rs: &RootSystem, node: usize, m: usize, budget: usize) -> Result<(usize, usize, bool)> {
    let s = rs.sigma(node)?;
    let nodes = vec![node; s.order * m];
    let chain = build_pi_chain(rs, &nodes)?;
    let skein = build_skein(rs, node)?;
    let seed = chain.last().expect("chain has π₀");
    if *seed != skein.truncate(m as i64)? {
        return Err(Error::Invariant(format!("π chain {seed} differs from Λ₀ ⋆ π_N^{m}")));
    }
    let z = ExtendedElt::translation(rs, &nodes)?;
    let lhs: BTreeSet<Path> = z.demazure(rs, [seed.clone()], budget)?.into_iter().collect();
    let skeins = skein_demazure(rs, &skein, &z.affine_word, budget)?;
    let truncated = skeins
        .iter()
        .map(|s| s.truncate(m as i64))
        .collect::<Result<BTreeSet<Path>>>();
    let equal = match truncated {
        Ok(t) => t == lhs && skeins.len() == lhs.len(),
        Err(_) => false,
    };
    Ok((lhs.len(), skeins.len(), equal))
}

/// Largest row index `m ≤ 2` whose Demazure crystal fits in the budget.
pub fn affordable_rows(rs: &RootSystem, node: usize, budget: usize) -> Result<usize> {
    let s = rs.sigma(node)?;
    let dim = rs.weyl_dimension(&Weight::fundamental(rs.rank(), s.dual_node))?;
    let mut rows = 0;
    while rows < 2 {
        let size = dim.checked_pow((s.order * (rows + 1)) as u32);
        if size.is_none_or(|x| x > budget as u128) {
            break;
        }
        rows += 1;
    }
    Ok(rows)
}

/// Level-one checks for a minuscule node: bisimulation of depth `depth`
/// between the crystals of `(Λ₀)` and of the skein, Demazure rows, and the
/// unique dominant path of `Λ₀ ⋆ B(ϖ*)^{⋆N}`.
pub fn verify_level_one(rs: &RootSystem, node: usize, depth: usize, budget: usize) -> Result<Report> {
    let started = Instant::now();
    let s = rs.sigma(node)?;
    let mut report = Report::new(4, rs, &[node]);
    let skein = build_skein(rs, node)?;
    let lambda0 = Path::straight(AffineWeight::lambda0(rs.rank()));
    let ball = bisimilar_to_depth(
        &PathModel { rs },
        lambda0,
        &SkeinModel { rs },
        skein.clone(),
        &rs.affine_index_set(),
        depth,
    );
    match ball {
        Ok(b) => {
            report.lhs_count = b.elements;
            report.rhs_count = b.elements;
            report.check(
                "bisimulation",
                true,
                format!("depth {depth}: {} elements, {} edges", b.elements, b.edges_checked),
            );
        }
        Err(msg) => report.check("bisimulation", false, msg),
    }

    let rows = affordable_rows(rs, node, budget)?;
    for m in 1..=rows {
        match skein_row(rs, node, m, budget) {
            Ok((l, k, eq)) => report.check(
                "demazure_row",
                eq,
                format!("m = {m}: {l} paths, {k} skeins"),
            ),
            Err(e) => return report.from_error(e, started),
        }
    }

    let nodes = vec![node; s.order];
    match rhs_tensor(rs, &nodes, budget) {
        Ok(paths) => {
            let dominant: Vec<&Path> = paths.iter().filter(|p| is_dominant(rs, p, true)).collect();
            report.dominant_paths = dominant.len();
            let expected = skein.truncate(1)?;
            report.check(
                "unique_dominant",
                dominant.len() == 1 && *dominant[0] == expected,
                format!("{} of {} paths dominant", dominant.len(), paths.len()),
            );
        }
        Err(e) => return report.from_error(e, started),
    }
    report.equal = report.checks.iter().all(|c| c.passed);
    Ok(report.finish(started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::Status;
    use crate::rational::q;
    use crate::rootsystem::CartanType;

    fn sys(t: CartanType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    fn fin(c: &[i64]) -> AffineWeight {
        AffineWeight::finite(Weight::from_ints(c))
    }

    #[test]
    fn coils() {
        let a1 = sys(CartanType::A, 1);
        assert_eq!(build_pi_n(&a1, 1).unwrap(), Path::canonicalize(vec![fin(&[1]), fin(&[-1])]));
        let e6 = sys(CartanType::E, 6);
        assert_eq!(
            build_pi_n(&e6, 1).unwrap(),
            Path::canonicalize(vec![
                fin(&[0, 0, 0, 0, 0, 1]),
                fin(&[1, 0, 0, 0, 0, -1]),
                fin(&[-1, 0, 0, 0, 0, 0]),
            ])
        );
        let a2 = sys(CartanType::A, 2);
        assert_eq!(build_pi_n(&a2, 1).unwrap().len(), 3);
    }

    #[test]
    fn truncations() {
        let a1 = sys(CartanType::A, 1);
        let s = build_skein(&a1, 1).unwrap();
        let l0 = AffineWeight::lambda0(1);
        assert_eq!(s.truncate(0).unwrap(), Path::straight(l0.clone()));
        assert_eq!(
            s.truncate(1).unwrap(),
            Path::canonicalize(vec![l0, fin(&[1]), fin(&[-1])])
        );
        let e6 = sys(CartanType::E, 6);
        assert_eq!(build_skein(&e6, 1).unwrap().truncate(2).unwrap().len(), 7);
    }

    #[test]
    fn dominant_skein_is_highest_weight() {
        let a1 = sys(CartanType::A, 1);
        let s = build_skein(&a1, 1).unwrap();
        for i in 0..=1 {
            assert_eq!(skein_raise(&a1, &s, i).unwrap(), None);
        }
        assert_eq!(skein_lower(&a1, &s, 1).unwrap(), None);
        let t = skein_lower(&a1, &s, 0).unwrap().unwrap();
        assert_eq!(t.endpoint, AffineWeight::new(q(1), Weight::from_ints(&[2])));
        assert_eq!(t.tail, Path::straight(fin(&[2])));
        assert_eq!(skein_raise(&a1, &t, 0).unwrap(), Some(s));
    }

    #[test]
    fn strip_handles_merged_boundary() {
        let prefix = Path::canonicalize(vec![AffineWeight::lambda0(1), fin(&[1])]);
        let p = Path::canonicalize(vec![AffineWeight::lambda0(1), fin(&[3]), fin(&[-1])]);
        assert_eq!(
            strip_prefix(&p, &prefix),
            Some(Path::canonicalize(vec![fin(&[2]), fin(&[-1])]))
        );
        assert_eq!(strip_prefix(&prefix, &p), None);
    }

    #[test]
    fn json_round_trip() {
        let a2 = sys(CartanType::A, 2);
        let s = build_skein(&a2, 1).unwrap();
        let t = skein_lower(&a2, &s, 0).unwrap().unwrap();
        let back = Skein::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.expanded, t.expanded);
    }

    #[test]
    fn level_one_rank_one() {
        let a1 = sys(CartanType::A, 1);
        let r = verify_level_one(&a1, 1, 6, 1000).unwrap();
        assert_eq!(r.status, Status::Pass, "{}", r.summary_line());
        assert_eq!(r.dominant_paths, 1);
    }
}

//! The extended affine Weyl group modulo `δ`, twisted Demazure operators and
//! the checks that a Demazure crystal for a minuscule anti-dominant translation
//! is a concatenation of finite crystals.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::crystal::{
    character_decompose, concat_sets, crystals_isomorphic, demazure_set, dominant_elements,
    highest_weight_crystal, Crystal, WeightMatch,
};
use crate::par::*;
use crate::pathspace::{has_integral_minima, is_dominant, AffineWeight, Path};
use crate::rational::format_q;
use crate::rootsystem::{RootSystem, SigmaAut, Weight};
use crate::{Error, Result};

/// `σ^power` applied to an affine weight.
///
/// `σ(μ + ℓΛ₀) = σ̄(μ - ℓϖ_i) + ℓΛ₀` and
/// `σ⁻¹(μ + ℓΛ₀) = σ̄⁻¹(μ) + ℓϖ_i + ℓΛ₀`.
pub fn sigma_weight(s: &SigmaAut, power: i64, v: &AffineWeight) -> AffineWeight {
    let rank = v.rank();
    let mut out = v.clone();
    for _ in 0..power.unsigned_abs() {
        let shift = Weight::fundamental(rank, s.node).scale(out.level);
        out.finite = if power > 0 {
            s.bar_sigma_map().apply(&(&out.finite - &shift))
        } else {
            &s.bar_sigma_inverse_map().apply(&out.finite) + &shift
        };
    }
    out
}

pub fn sigma_path(s: &SigmaAut, power: i64, p: &Path) -> Path {
    p.act_linear(|v| sigma_weight(s, power, v))
}

/// Element `z = y·σ_{n_1}⋯σ_{n_k}` of the extended affine Weyl group. The
/// `σ` factors act on the argument first (rightmost first), then `y` acts
/// through its word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedElt {
    pub affine_word: Vec<usize>,
    pub sigma: Vec<usize>,
}

impl ExtendedElt {
    /// `l(yσ) = l(y)`.
    pub fn length(&self) -> usize {
        self.affine_word.len()
    }

    /// Normal form of `(w₀w_{n_1*}σ_{n_1}) ⋯ (w₀w_{n_m*}σ_{n_m})`, the
    /// translation by `-(ϖ∨_{n_1} + ⋯ + ϖ∨_{n_m})`. Each `σ` is moved to the
    /// right through `σ s_j σ⁻¹ = s_{σ(j)}`.
    pub fn translation(rs: &RootSystem, nodes: &[usize]) -> Result<ExtendedElt> {
        let r = rs.rank();
        let mut perm: Vec<usize> = (0..=r).collect();
        let mut affine_word = Vec::new();
        for &n in nodes {
            let s = rs.sigma(n)?;
            affine_word.extend(twisted_word(rs, n)?.iter().map(|&j| perm[j]));
            perm = (0..=r).map(|j| perm[s.node_perm[j]]).collect();
        }
        Ok(ExtendedElt {
            affine_word,
            sigma: nodes.to_vec(),
        })
    }

    pub fn act(&self, rs: &RootSystem, p: &Path) -> Result<Path> {
        let mut out = p.clone();
        for &n in self.sigma.iter().rev() {
            out = sigma_path(rs.sigma(n)?, 1, &out);
        }
        Ok(out)
    }

    /// `B̂_z(π)` for every seed, computed as `B̂_y(σπ)`.
    pub fn demazure(
        &self,
        rs: &RootSystem,
        seeds: impl IntoIterator<Item = Path>,
        budget: usize,
    ) -> Result<HashSet<Path>> {
        let moved = seeds
            .into_iter()
            .map(|p| self.act(rs, &p))
            .collect::<Result<Vec<_>>>()?;
        demazure_set(rs, moved, &self.affine_word, budget)
    }
}

/// Which reduced word is used for the finite part of a twisted operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordForm {
    /// `w₀ w_j*` with `w_j*` the longest element fixing `ϖ_{j*}`.
    W0WjStar,
    /// `w_j w₀`; the same element, generally a different reduced word.
    WjW0,
}

/// Reduced word of `w₀ w_j*` for a minuscule node `j`.
pub fn twisted_word(rs: &RootSystem, node: usize) -> Result<Vec<usize>> {
    twisted_word_form(rs, node, WordForm::W0WjStar)
}

pub fn twisted_word_form(rs: &RootSystem, node: usize, form: WordForm) -> Result<Vec<usize>> {
    if !rs.is_minuscule(node) {
        return Err(Error::NotMinuscule(node));
    }
    let parabolic = |skip: usize| -> Vec<usize> {
        let others: Vec<usize> = (1..=rs.rank()).filter(|&k| k != skip).collect();
        rs.longest_word(&others)
    };
    let w0 = rs.longest_element_word().to_vec();
    let word = match form {
        WordForm::W0WjStar => [w0, parabolic(rs.dual_node(node))].concat(),
        WordForm::WjW0 => [parabolic(node), w0].concat(),
    };
    Ok(rs.reduce_word(&word))
}

fn check_nodes(rs: &RootSystem, nodes: &[usize]) -> Result<()> {
    for &n in nodes {
        rs.check_node(n)?;
        if !rs.is_minuscule(n) {
            return Err(Error::NotMinuscule(n));
        }
    }
    Ok(())
}

/// `π₀ = (Λ₀)`, `π_j = σ_j⁻¹(π_{j-1} ⋆ (ϖ_{n_j*}))`.
pub fn build_pi_chain(rs: &RootSystem, nodes: &[usize]) -> Result<Vec<Path>> {
    check_nodes(rs, nodes)?;
    let r = rs.rank();
    let lambda0 = AffineWeight::lambda0(r);
    let mut chain = vec![Path::straight(lambda0.clone())];
    for &n in nodes {
        let s = rs.sigma(n)?;
        let star = Path::straight_finite(Weight::fundamental(r, s.dual_node));
        let next = sigma_path(s, -1, &chain.last().expect("non-empty").concat(&star));
        if next.weight(r) != lambda0 {
            return Err(Error::Invariant(format!("{next} does not have weight Λ₀")));
        }
        if !is_dominant(rs, &next, true) {
            return Err(Error::Invariant(format!("{next} is not dominant")));
        }
        chain.push(next);
    }
    Ok(chain)
}

/// Applies `B_{λ_j∨} = B̂_{w₀w_j* σ_j}` for `j = m, …, 1` to a seed.
pub fn demazure_translation(
    rs: &RootSystem,
    nodes: &[usize],
    seed: &Path,
    budget: usize,
) -> Result<HashSet<Path>> {
    demazure_translation_form(rs, nodes, seed, budget, WordForm::W0WjStar)
}

pub fn demazure_translation_form(
    rs: &RootSystem,
    nodes: &[usize],
    seed: &Path,
    budget: usize,
    form: WordForm,
) -> Result<HashSet<Path>> {
    check_nodes(rs, nodes)?;
    let mut current: HashSet<Path> = HashSet::from([seed.clone()]);
    for &n in nodes.iter().rev() {
        let s = rs.sigma(n)?;
        let moved: Vec<Path> = current
            .into_par_iter()
            .map(|p| sigma_path(s, 1, &p))
            .collect();
        current = demazure_set(rs, moved, &twisted_word_form(rs, n, form)?, budget)?;
    }
    Ok(current)
}

/// `Λ₀ ⋆ B(ϖ_{n_1*}) ⋆ ⋯ ⋆ B(ϖ_{n_m*})`, sorted.
pub fn rhs_tensor(rs: &RootSystem, nodes: &[usize], budget: usize) -> Result<Vec<Path>> {
    check_nodes(rs, nodes)?;
    let mut current = vec![Path::straight(AffineWeight::lambda0(rs.rank()))];
    for &n in nodes {
        let factor = dual_crystal(rs, n)?;
        if current.len().saturating_mul(factor.len()) > budget {
            return Err(Error::BudgetExceeded {
                budget,
                seen: current.len(),
                frontier: factor.len(),
            });
        }
        current = concat_sets(&current, factor.nodes());
    }
    Ok(current)
}

fn dual_crystal(rs: &RootSystem, node: usize) -> Result<Crystal> {
    highest_weight_crystal(rs, &Weight::fundamental(rs.rank(), rs.dual_node(node)))
}

/// `Π dim V(ϖ_{n_j*})`.
pub fn expected_size(rs: &RootSystem, nodes: &[usize]) -> Result<u128> {
    nodes.iter().try_fold(1u128, |acc, &n| {
        let d = rs.weyl_dimension(&Weight::fundamental(rs.rank(), rs.dual_node(n)))?;
        acc.checked_mul(d)
            .ok_or_else(|| Error::Overflow("tensor dimension".into()))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionEntry {
    pub level: String,
    pub weight: Vec<String>,
    pub multiplicity: usize,
}

/// Verification report shared by every check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub theorem: u8,
    #[serde(rename = "type")]
    pub type_label: String,
    pub rank: usize,
    pub nodes: Vec<usize>,
    pub lhs_count: usize,
    pub rhs_count: usize,
    pub equal: bool,
    pub dominant_paths: usize,
    pub decomposition: Vec<DecompositionEntry>,
    pub checks: Vec<Check>,
    pub status: Status,
    pub message: Option<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(theorem: u8, rs: &RootSystem, nodes: &[usize]) -> Report {
        Report {
            theorem,
            type_label: rs.cartan_type().label().to_string(),
            rank: rs.rank(),
            nodes: nodes.to_vec(),
            lhs_count: 0,
            rhs_count: 0,
            equal: false,
            dominant_paths: 0,
            decomposition: Vec::new(),
            checks: Vec::new(),
            status: Status::Fail,
            message: None,
            elapsed_ms: 0,
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check::new(name, passed, detail));
    }

    /// PASS iff every recorded check passed.
    pub fn finish(mut self, started: Instant) -> Report {
        self.status = if !self.checks.is_empty() && self.checks.iter().all(|c| c.passed) {
            Status::Pass
        } else {
            Status::Fail
        };
        self.elapsed_ms = started.elapsed().as_millis() as u64;
        self
    }

    /// Budget or size failures end as INCONCLUSIVE; anything else propagates.
    pub fn from_error(mut self, err: Error, started: Instant) -> Result<Report> {
        match err {
            Error::BudgetExceeded { .. } => {
                self.status = Status::Inconclusive;
                self.message = Some(err.to_string());
                self.elapsed_ms = started.elapsed().as_millis() as u64;
                Ok(self)
            }
            other => Err(other),
        }
    }

    pub fn summary_line(&self) -> String {
        let nodes: Vec<String> = self.nodes.iter().map(|n| n.to_string()).collect();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        let mut line = format!(
            "theorem {} {}{} nodes [{}]: {} (lhs {}, rhs {}",
            self.theorem,
            self.type_label,
            self.rank,
            nodes.join(","),
            status,
            self.lhs_count,
            self.rhs_count
        );
        line.push_str(&format!(", dominant {})", self.dominant_paths));
        if let Some(m) = &self.message {
            line.push_str(&format!(": {m}"));
        }
        for c in self.checks.iter().filter(|c| !c.passed) {
            line.push_str(&format!("\n  failed {}: {}", c.name, c.detail));
        }
        line
    }
}

pub(crate) fn decomposition_entries(map: &BTreeMap<AffineWeight, usize>) -> Vec<DecompositionEntry> {
    map.iter()
        .map(|(w, &n)| DecompositionEntry {
            level: format_q(&w.level),
            weight: w.finite.coords().iter().map(format_q).collect(),
            multiplicity: n,
        })
        .collect()
}

/// The two sides of the Demazure/tensor equality for one node sequence.
pub struct TranslationSides {
    pub chain: Vec<Path>,
    pub lhs: BTreeSet<Path>,
    pub rhs: BTreeSet<Path>,
}

/// Refuses jobs whose tensor side would exceed the budget.
pub fn check_budget(rs: &RootSystem, nodes: &[usize], budget: usize) -> Result<()> {
    check_nodes(rs, nodes)?;
    let expected = expected_size(rs, nodes)?;
    if expected > budget as u128 {
        return Err(Error::BudgetExceeded {
            budget,
            seen: 0,
            frontier: expected.min(usize::MAX as u128) as usize,
        });
    }
    Ok(())
}

pub fn translation_sides(rs: &RootSystem, nodes: &[usize], budget: usize) -> Result<TranslationSides> {
    check_budget(rs, nodes, budget)?;
    let chain = build_pi_chain(rs, nodes)?;
    let seed = chain.last().expect("chain has π₀");
    let lhs = demazure_translation(rs, nodes, seed, budget)?
        .into_iter()
        .collect();
    let rhs = rhs_tensor(rs, nodes, budget)?.into_iter().collect();
    Ok(TranslationSides { chain, lhs, rhs })
}

/// Set equality of the twisted Demazure crystal of `π_m` with
/// `Λ₀ ⋆ B(ϖ_{n_1*}) ⋆ ⋯ ⋆ B(ϖ_{n_m*})`, plus uniqueness of its dominant path.
pub fn verify_translation(rs: &RootSystem, nodes: &[usize], budget: usize) -> Result<Report> {
    let started = Instant::now();
    let report = Report::new(3, rs, nodes);
    match translation_sides(rs, nodes, budget) {
        Ok(sides) => Ok(translation_report(rs, report, &sides, started)),
        Err(e) => report.from_error(e, started),
    }
}

pub fn translation_report(
    rs: &RootSystem,
    mut report: Report,
    sides: &TranslationSides,
    started: Instant,
) -> Report {
    let nodes = report.nodes.clone();
    report.lhs_count = sides.lhs.len();
    report.rhs_count = sides.rhs.len();
    report.equal = sides.lhs == sides.rhs;
    let dominant: Vec<&Path> = sides
        .lhs
        .iter()
        .filter(|p| is_dominant(rs, p, true))
        .collect();
    report.dominant_paths = dominant.len();
    let expected = expected_size(rs, &nodes).unwrap_or(0);
    report.check(
        "set_equality",
        report.equal,
        format!("{} demazure paths, {} tensor paths", report.lhs_count, report.rhs_count),
    );
    report.check(
        "tensor_size",
        report.rhs_count as u128 == expected,
        format!("expected {expected}"),
    );
    report.check(
        "unique_dominant",
        dominant.len() == 1,
        format!("{} affine-dominant paths", dominant.len()),
    );
    let r = rs.rank();
    let level_one = sides
        .lhs
        .iter()
        .all(|p| p.weight(r).level == crate::rational::q(1) && has_integral_minima(rs, p));
    report.check("level_one", level_one, "all weights at level 1, integral minima");
    report.finish(started)
}

/// Characters of the Demazure crystal restricted to `1..=r` (level dropped)
/// against the finite tensor crystal.
pub fn verify_character_identity(rs: &RootSystem, nodes: &[usize], budget: usize) -> Result<Report> {
    let started = Instant::now();
    let report = Report::new(1, rs, nodes);
    match translation_sides(rs, nodes, budget) {
        Ok(sides) => character_report(rs, report, &sides, started),
        Err(e) => report.from_error(e, started),
    }
}

pub fn character_report(
    rs: &RootSystem,
    mut report: Report,
    sides: &TranslationSides,
    started: Instant,
) -> Result<Report> {
    let nodes = report.nodes.clone();
    let nodes = nodes.as_slice();
    let finite = rs.finite_index_set();
    let lhs = Crystal::from_paths(rs, sides.lhs.iter().cloned(), &finite, vec![]);
    let mut tensor = vec![Path::empty()];
    for &n in nodes {
        tensor = concat_sets(&tensor, dual_crystal(rs, n)?.nodes());
    }
    let rhs = Crystal::from_paths(rs, tensor, &finite, vec![]);
    let ch_l = character_decompose(rs, &lhs).project_finite();
    let ch_r = character_decompose(rs, &rhs).project_finite();
    report.lhs_count = lhs.len();
    report.rhs_count = rhs.len();
    report.equal = ch_l == ch_r;
    report.dominant_paths = ch_l.decomposition.values().sum();
    report.decomposition = decomposition_entries(&ch_l.decomposition);
    report.check("weight_multiset", ch_l.weights == ch_r.weights, "");
    report.check(
        "decomposition",
        ch_l.decomposition == ch_r.decomposition,
        format!("{} irreducible constituents", report.dominant_paths),
    );
    let expected = expected_size(rs, nodes)?;
    report.check(
        "total_size",
        lhs.len() as u128 == expected && rhs.len() as u128 == expected,
        format!("expected {expected}"),
    );
    let dims = ch_l.dimension_from_decomposition(rs)?;
    report.check(
        "weyl_dimensions",
        dims == expected,
        format!("Σ mult·dim = {dims}"),
    );
    Ok(report.finish(started))
}

/// All distinct orderings of `nodes`: set equality per ordering and crystal
/// isomorphism of the Demazure sides across orderings.
pub fn verify_orderings(rs: &RootSystem, nodes: &[usize], budget: usize) -> Result<Report> {
    let started = Instant::now();
    let mut report = Report::new(3, rs, nodes);
    let affine = rs.affine_index_set();
    let mut reference: Option<Crystal> = None;
    for order in distinct_permutations(nodes) {
        let sides = match translation_sides(rs, &order, budget) {
            Ok(s) => s,
            Err(e) => return report.from_error(e, started),
        };
        let label = format!("{order:?}");
        report.check("ordering_set_equality", sides.lhs == sides.rhs, label.clone());
        report.lhs_count = report.lhs_count.max(sides.lhs.len());
        report.rhs_count = report.rhs_count.max(sides.rhs.len());
        let c = Crystal::from_paths(rs, sides.lhs, &affine, vec![]);
        report.dominant_paths = dominant_elements(rs, &c).len();
        match &reference {
            None => reference = Some(c),
            Some(c0) => {
                let iso = crystals_isomorphic(rs, c0, &c, &WeightMatch::Exact)?;
                report.check("ordering_isomorphism", iso, label);
            }
        }
    }
    report.equal = report.checks.iter().all(|c| c.passed);
    Ok(report.finish(started))
}

pub fn distinct_permutations(nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    let mut out = vec![sorted.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (1..sorted.len()).rev().find(|&i| sorted[i - 1] < sorted[i]) else {
            return out;
        };
        let j = (i..sorted.len())
            .rev()
            .find(|&j| sorted[j] > sorted[i - 1])
            .expect("pivot has a larger successor");
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
        out.push(sorted.clone());
    }
}

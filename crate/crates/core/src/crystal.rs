//! Path crystals: generation by operator closure or Demazure words, the
//! Lakshmibai–Seshadri enumeration, characters and isomorphism tests.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::par::*;
use crate::pathspace::{f_string, is_dominant_for, lower_f, raise_e, AffineWeight, Path, PathJson};
use crate::rational::{q, Q};
use crate::rootsystem::{RootSystem, Weight};
use crate::{Error, Result};

pub const DEFAULT_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ops {
    LowerOnly,
    Both,
}

/// A finite set of canonical paths with the `f_i`/`e_i` edges that stay
/// inside the set.
#[derive(Clone, Debug)]
pub struct Crystal {
    rank: usize,
    nodes: Vec<Path>,
    index: HashMap<Path, usize>,
    index_set: Vec<usize>,
    f_edges: Vec<Vec<Option<usize>>>,
    e_edges: Vec<Vec<Option<usize>>>,
    seeds: Vec<Path>,
}

impl Crystal {
    /// Builds the crystal on a node set; nodes are sorted so the result does not
    /// depend on generation order.
    pub fn from_paths(
        rs: &RootSystem,
        paths: impl IntoIterator<Item = Path>,
        index_set: &[usize],
        seeds: Vec<Path>,
    ) -> Crystal {
        let set: BTreeSet<Path> = paths.into_iter().collect();
        let nodes: Vec<Path> = set.into_iter().collect();
        let index: HashMap<Path, usize> =
            nodes.iter().enumerate().map(|(k, p)| (p.clone(), k)).collect();
        let edges = |op: fn(&RootSystem, &Path, usize) -> Option<Path>, i: usize| {
            nodes
                .par_iter()
                .map(|p| op(rs, p, i).and_then(|t| index.get(&t).copied()))
                .collect::<Vec<_>>()
        };
        let f_edges = index_set.iter().map(|&i| edges(lower_f, i)).collect();
        let e_edges = index_set.iter().map(|&i| edges(raise_e, i)).collect();
        Crystal {
            rank: rs.rank(),
            nodes,
            index,
            index_set: index_set.to_vec(),
            f_edges,
            e_edges,
            seeds,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> &[Path] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.index.contains_key(p)
    }

    pub fn position(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn index_set(&self) -> &[usize] {
        &self.index_set
    }

    pub fn seeds(&self) -> &[Path] {
        &self.seeds
    }

    pub fn node_set(&self) -> BTreeSet<Path> {
        self.nodes.iter().cloned().collect()
    }

    fn color(&self, i: usize) -> Option<usize> {
        self.index_set.iter().position(|&c| c == i)
    }

    /// `f_i` edge from node `k`, if its target is in the crystal.
    pub fn f(&self, k: usize, i: usize) -> Option<usize> {
        self.f_edges[self.color(i)?][k]
    }

    pub fn e(&self, k: usize, i: usize) -> Option<usize> {
        self.e_edges[self.color(i)?][k]
    }

    /// Same nodes, edges recomputed for another index set.
    pub fn with_index_set(&self, rs: &RootSystem, index_set: &[usize]) -> Crystal {
        Crystal::from_paths(rs, self.nodes.clone(), index_set, self.seeds.clone())
    }

    /// Every `f_i`/`e_i` image of every node lies inside the crystal.
    pub fn is_closed(&self, rs: &RootSystem) -> bool {
        self.nodes.par_iter().all(|p| {
            self.index_set.iter().all(|&i| {
                lower_f(rs, p, i).is_none_or(|t| self.contains(&t))
                    && raise_e(rs, p, i).is_none_or(|t| self.contains(&t))
            })
        })
    }

    pub fn to_json(&self) -> CrystalJson {
        let mut edges = Vec::new();
        for (c, &i) in self.index_set.iter().enumerate() {
            for (dir, table) in [("f", &self.f_edges[c]), ("e", &self.e_edges[c])] {
                for (from, to) in table.iter().enumerate() {
                    if let Some(to) = *to {
                        edges.push(EdgeJson {
                            from,
                            to,
                            color: i,
                            dir: dir.to_string(),
                        });
                    }
                }
            }
        }
        edges.sort_by(|a, b| {
            (a.from, a.color, &a.dir, a.to).cmp(&(b.from, b.color, &b.dir, b.to))
        });
        CrystalJson {
            nodes: self.nodes.iter().map(Path::to_json).collect(),
            edges,
        }
    }

    /// Rebuilds a crystal from its JSON export; edges are recomputed and must
    /// agree with the recorded ones.
    pub fn from_json(rs: &RootSystem, j: &CrystalJson, index_set: &[usize]) -> Result<Crystal> {
        let nodes = j
            .nodes
            .iter()
            .map(Path::from_json)
            .collect::<Result<Vec<_>>>()?;
        let c = Crystal::from_paths(rs, nodes, index_set, Vec::new());
        let mut recorded: Vec<EdgeJson> = j
            .edges
            .iter()
            .filter(|e| index_set.contains(&e.color))
            .cloned()
            .collect();
        recorded.sort_by(|a, b| {
            (a.from, a.color, &a.dir, a.to).cmp(&(b.from, b.color, &b.dir, b.to))
        });
        if c.len() != j.nodes.len() || c.to_json().edges != recorded {
            return Err(Error::Parse("crystal edges do not match node set".into()));
        }
        Ok(c)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph crystal {\n");
        for (k, p) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{k} [label=\"{p}\"];\n"));
        }
        for e in self.to_json().edges {
            let style = if e.dir == "f" { "solid" } else { "dashed" };
            out.push_str(&format!(
                "  n{} -> n{} [label=\"{}\", style={}];\n",
                e.from, e.to, e.color, style
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub color: usize,
    pub dir: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalJson {
    pub nodes: Vec<PathJson>,
    pub edges: Vec<EdgeJson>,
}

/// Breadth-first closure of `seeds` under the root operators.
pub fn closure(
    rs: &RootSystem,
    seeds: &[Path],
    index_set: &[usize],
    ops: Ops,
    budget: usize,
) -> Result<Crystal> {
    let set = closure_set(rs, seeds, index_set, ops, budget)?;
    Ok(Crystal::from_paths(rs, set, index_set, seeds.to_vec()))
}

pub fn closure_set(
    rs: &RootSystem,
    seeds: &[Path],
    index_set: &[usize],
    ops: Ops,
    budget: usize,
) -> Result<HashSet<Path>> {
    let mut seen: HashSet<Path> = seeds.iter().cloned().collect();
    let mut frontier: Vec<Path> = seen.iter().cloned().collect();
    while !frontier.is_empty() {
        if seen.len() > budget {
            return Err(Error::BudgetExceeded {
                budget,
                seen: seen.len(),
                frontier: frontier.len(),
            });
        }
        let found: Vec<Path> = frontier
            .par_iter()
            .flat_map_iter(|p| {
                let mut out = Vec::with_capacity(2 * index_set.len());
                for &i in index_set {
                    out.extend(lower_f(rs, p, i));
                    if ops == Ops::Both {
                        out.extend(raise_e(rs, p, i));
                    }
                }
                out
            })
            .collect();
        frontier = found
            .into_iter()
            .filter(|p| seen.insert(p.clone()))
            .collect();
    }
    if seen.len() > budget {
        return Err(Error::BudgetExceeded {
            budget,
            seen: seen.len(),
            frontier: 0,
        });
    }
    Ok(seen)
}

/// The crystal `B(λ)` of the straight-line path `(λ)` over `1..=r`.
pub fn highest_weight_crystal(rs: &RootSystem, lambda: &Weight) -> Result<Crystal> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    closure(
        rs,
        &[Path::straight_finite(lambda.clone())],
        &rs.finite_index_set(),
        Ops::Both,
        DEFAULT_BUDGET,
    )
}

/// Applies `f`-strings for the word right to left:
/// `{ f_{i_1}^{k_1} ⋯ f_{i_m}^{k_m} π }` for every `π` in the input set.
pub fn demazure_set(
    rs: &RootSystem,
    seeds: impl IntoIterator<Item = Path>,
    word: &[usize],
    budget: usize,
) -> Result<HashSet<Path>> {
    let mut current: HashSet<Path> = seeds.into_iter().collect();
    for &i in word.iter().rev() {
        let items: Vec<Path> = current.into_iter().collect();
        let strings: Vec<Vec<Path>> = items
            .into_par_iter()
            .map(|p| f_string(rs, &p, i))
            .collect();
        current = strings.into_iter().flatten().collect();
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

/// Demazure path crystal of a seed for a (reduced) word. The index set is
/// affine when the word uses node `0`.
pub fn demazure_generate(rs: &RootSystem, seed: &Path, word: &[usize]) -> Result<Crystal> {
    let set = demazure_set(rs, [seed.clone()], word, usize::MAX)?;
    let index_set = if word.contains(&0) {
        rs.affine_index_set()
    } else {
        rs.finite_index_set()
    };
    Ok(Crystal::from_paths(rs, set, &index_set, vec![seed.clone()]))
}

/// `e_i π` undefined for every `i` in the index set.
pub fn is_highest_weight(rs: &RootSystem, p: &Path, index_set: &[usize]) -> bool {
    index_set.iter().all(|&i| raise_e(rs, p, i).is_none())
}

pub fn dominant_elements(rs: &RootSystem, c: &Crystal) -> Vec<Path> {
    c.nodes()
        .par_iter()
        .filter(|p| is_highest_weight(rs, p, c.index_set()))
        .cloned()
        .collect::<Vec<_>>()
}

/// Pictorial dominance for the crystal's index set.
pub fn pictorially_dominant(rs: &RootSystem, p: &Path, index_set: &[usize]) -> bool {
    index_set.iter().all(|&i| is_dominant_for(rs, p, i))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub weights: BTreeMap<AffineWeight, usize>,
    pub decomposition: BTreeMap<AffineWeight, usize>,
}

impl Character {
    /// Drops the level (the `Λ₀` coefficient) from every weight.
    pub fn project_finite(&self) -> Character {
        let proj = |m: &BTreeMap<AffineWeight, usize>| {
            let mut out: BTreeMap<AffineWeight, usize> = BTreeMap::new();
            for (w, n) in m {
                *out.entry(AffineWeight::finite(w.finite.clone())).or_default() += n;
            }
            out
        };
        Character {
            weights: proj(&self.weights),
            decomposition: proj(&self.decomposition),
        }
    }

    pub fn total(&self) -> usize {
        self.weights.values().sum()
    }

    /// `Σ mult · dim V(λ)`; only meaningful over the finite index set.
    pub fn dimension_from_decomposition(&self, rs: &RootSystem) -> Result<u128> {
        self.decomposition.iter().try_fold(0u128, |acc, (w, n)| {
            Ok(acc + (*n as u128) * rs.weyl_dimension(&w.finite)?)
        })
    }
}

pub fn character_decompose(rs: &RootSystem, c: &Crystal) -> Character {
    let mut weights: BTreeMap<AffineWeight, usize> = BTreeMap::new();
    for p in c.nodes() {
        *weights.entry(p.weight(c.rank())).or_default() += 1;
    }
    let mut decomposition: BTreeMap<AffineWeight, usize> = BTreeMap::new();
    for p in dominant_elements(rs, c) {
        *decomposition.entry(p.weight(c.rank())).or_default() += 1;
    }
    Character {
        weights,
        decomposition,
    }
}

/// All Lakshmibai–Seshadri paths of shape `λ`.
///
/// A chain `τ_1 ⋖ τ_2 ⋖ ⋯ ⋖ τ_m` climbs the Bruhat order of `W·λ` towards
/// `λ`; the cut `a_j` between `τ_j` and `τ_{j+1}` must satisfy `a_j d_j ∈ ℤ`
/// where `τ_{j+1} - τ_j = d_j α`. The path is
/// `(a_1 τ_1 ⋆ (a_2 - a_1) τ_2 ⋆ ⋯ ⋆ (1 - a_{m-1}) τ_m)`.
pub fn ls_paths(rs: &RootSystem, lambda: &Weight, budget: usize) -> Result<BTreeSet<Path>> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if !lambda.is_integral() {
        return Err(Error::NotIntegral(lambda.to_string()));
    }
    let od = rs.orbit_and_covers(lambda)?;
    let mut up: HashMap<&Weight, Vec<(&Weight, i64)>> = HashMap::new();
    for c in &od.covers {
        up.entry(&c.lower).or_default().push((&c.upper, c.d));
    }

    struct Walk<'a> {
        up: &'a HashMap<&'a Weight, Vec<(&'a Weight, i64)>>,
        out: BTreeSet<Path>,
        budget: usize,
        overflow: bool,
    }

    impl Walk<'_> {
        fn go(&mut self, tau: &Weight, cut: Q, steps: &mut Vec<AffineWeight>) {
            if self.overflow {
                return;
            }
            steps.push(AffineWeight::finite(tau.scale(q(1) - cut)));
            self.out.insert(Path::canonicalize(steps.clone()));
            steps.pop();
            if self.out.len() > self.budget {
                self.overflow = true;
                return;
            }
            let Some(next) = self.up.get(tau) else {
                return;
            };
            for &(upper, d) in next {
                // a = n/d with cut ≤ a < 1 and a > 0
                let mut n = (cut * q(d)).ceil().to_integer().max(1);
                while n < d {
                    let a = Q::new(n, d);
                    steps.push(AffineWeight::finite(tau.scale(a - cut)));
                    self.go(upper, a, steps);
                    steps.pop();
                    n += 1;
                }
            }
        }
    }

    let mut walk = Walk {
        up: &up,
        out: BTreeSet::new(),
        budget,
        overflow: false,
    };
    for tau in &od.orbit {
        walk.go(tau, q(0), &mut Vec::new());
    }
    if walk.overflow {
        return Err(Error::BudgetExceeded {
            budget,
            seen: walk.out.len(),
            frontier: 0,
        });
    }
    Ok(walk.out)
}

/// How weights of two crystals are expected to correspond.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightMatch {
    Exact,
    /// Compare finite parts only.
    FinitePart,
    /// `wt(b₁) = wt(b₂) + offset`.
    Offset(AffineWeight),
}

impl WeightMatch {
    fn matches(&self, a: &AffineWeight, b: &AffineWeight) -> bool {
        match self {
            WeightMatch::Exact => a == b,
            WeightMatch::FinitePart => a.finite == b.finite,
            WeightMatch::Offset(o) => *a == b + o,
        }
    }
}

/// Rooted bisimulation between two crystals generated from single dominant
/// elements. Rigid: a colour-preserving bijection extends uniquely from the
/// dominant element, so success means the crystals are isomorphic.
pub fn crystals_isomorphic(
    rs: &RootSystem,
    c1: &Crystal,
    c2: &Crystal,
    correspondence: &WeightMatch,
) -> Result<bool> {
    let d1 = dominant_elements(rs, c1);
    let d2 = dominant_elements(rs, c2);
    if d1.len() != 1 {
        return Err(Error::MultipleDominant(d1.len()));
    }
    if d2.len() != 1 {
        return Err(Error::MultipleDominant(d2.len()));
    }
    if c1.index_set() != c2.index_set() || c1.len() != c2.len() {
        return Ok(false);
    }
    let r = c1.rank();
    let start = (c1.position(&d1[0]).unwrap(), c2.position(&d2[0]).unwrap());
    let mut fwd: HashMap<usize, usize> = HashMap::from([start]);
    let mut back: HashMap<usize, usize> = HashMap::from([(start.1, start.0)]);
    let mut queue = VecDeque::from([start]);
    while let Some((a, b)) = queue.pop_front() {
        if !correspondence.matches(&c1.nodes()[a].weight(r), &c2.nodes()[b].weight(r)) {
            return Ok(false);
        }
        for &i in c1.index_set() {
            for (ta, tb) in [(c1.f(a, i), c2.f(b, i)), (c1.e(a, i), c2.e(b, i))] {
                match (ta, tb) {
                    (None, None) => {}
                    (Some(x), Some(y)) => match (fwd.get(&x), back.get(&y)) {
                        (None, None) => {
                            fwd.insert(x, y);
                            back.insert(y, x);
                            queue.push_back((x, y));
                        }
                        (Some(&y2), Some(&x2)) if y2 == y && x2 == x => {}
                        _ => return Ok(false),
                    },
                    _ => return Ok(false),
                }
            }
        }
    }
    Ok(fwd.len() == c1.len())
}

/// All concatenations `π₁ ⋆ π₂`. The result is checked to be operator-closed
/// when both factors are.
pub fn tensor_concat(rs: &RootSystem, c1: &Crystal, c2: &Crystal) -> Result<Crystal> {
    let set = concat_sets(c1.nodes(), c2.nodes());
    if set.len() != c1.len() * c2.len() {
        return Err(Error::Invariant(format!(
            "concatenation is not injective: {} paths from {}×{}",
            set.len(),
            c1.len(),
            c2.len()
        )));
    }
    let seeds = c1
        .seeds()
        .iter()
        .flat_map(|a| c2.seeds().iter().map(move |b| a.concat(b)))
        .collect();
    let c = Crystal::from_paths(rs, set, c1.index_set(), seeds);
    if c1.is_closed(rs) && c2.is_closed(rs) && !c.is_closed(rs) {
        return Err(Error::Invariant("tensor product is not operator-closed".into()));
    }
    Ok(c)
}

pub fn concat_sets(a: &[Path], b: &[Path]) -> Vec<Path> {
    let mut out: Vec<Path> = a
        .par_iter()
        .flat_map_iter(|x| b.iter().map(move |y| x.concat(y)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Abstract crystal with partial operators, used for bisimulation between
/// path crystals and skein crystals.
pub trait CrystalModel {
    type Elem: Clone + Eq + Hash;
    fn lower(&self, x: &Self::Elem, i: usize) -> Option<Self::Elem>;
    fn raise(&self, x: &Self::Elem, i: usize) -> Option<Self::Elem>;
    fn weight(&self, x: &Self::Elem) -> AffineWeight;
}

pub struct PathModel<'a> {
    pub rs: &'a RootSystem,
}

impl CrystalModel for PathModel<'_> {
    type Elem = Path;
    fn lower(&self, x: &Path, i: usize) -> Option<Path> {
        lower_f(self.rs, x, i)
    }
    fn raise(&self, x: &Path, i: usize) -> Option<Path> {
        raise_e(self.rs, x, i)
    }
    fn weight(&self, x: &Path) -> AffineWeight {
        x.weight(self.rs.rank())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BallReport {
    pub depth: usize,
    pub elements: usize,
    pub edges_checked: usize,
}

/// Checks that every operator word of length `≤ depth` behaves identically
/// (defined/undefined, weights, and consistent identification of elements)
/// from `a0` in `a` and from `b0` in `b`.
pub fn bisimilar_to_depth<A: CrystalModel, B: CrystalModel>(
    a: &A,
    a0: A::Elem,
    b: &B,
    b0: B::Elem,
    index_set: &[usize],
    depth: usize,
) -> std::result::Result<BallReport, String> {
    let mut fwd: HashMap<A::Elem, B::Elem> = HashMap::new();
    let mut back: HashMap<B::Elem, A::Elem> = HashMap::new();
    fwd.insert(a0.clone(), b0.clone());
    back.insert(b0.clone(), a0.clone());
    if a.weight(&a0) != b.weight(&b0) {
        return Err("root weights differ".into());
    }
    let mut layer = vec![(a0, b0)];
    let mut edges = 0usize;
    for level in 0..depth {
        let mut next = Vec::new();
        for (x, y) in &layer {
            for &i in index_set {
                for lower in [true, false] {
                    let (tx, ty) = if lower {
                        (a.lower(x, i), b.lower(y, i))
                    } else {
                        (a.raise(x, i), b.raise(y, i))
                    };
                    edges += 1;
                    match (tx, ty) {
                        (None, None) => {}
                        (Some(tx), Some(ty)) => {
                            if a.weight(&tx) != b.weight(&ty) {
                                return Err(format!("weights differ at depth {} (i = {i})", level + 1));
                            }
                            match (fwd.get(&tx), back.get(&ty)) {
                                (None, None) => {
                                    fwd.insert(tx.clone(), ty.clone());
                                    back.insert(ty.clone(), tx.clone());
                                    next.push((tx, ty));
                                }
                                (Some(y2), Some(x2)) if *y2 == ty && *x2 == tx => {}
                                _ => {
                                    return Err(format!(
                                        "identification breaks at depth {} (i = {i})",
                                        level + 1
                                    ))
                                }
                            }
                        }
                        _ => {
                            return Err(format!(
                                "{} defined on one side only at depth {} (i = {i})",
                                if lower { "f" } else { "e" },
                                level + 1
                            ))
                        }
                    }
                }
            }
        }
        layer = next;
    }
    Ok(BallReport {
        depth,
        elements: fwd.len(),
        edges_checked: edges,
    })
}

/// Braid relation length `m_ij` from the Cartan matrix.
pub fn braid_length(rs: &RootSystem, i: usize, j: usize) -> usize {
    if i == j {
        return 1;
    }
    match rs.cartan()[i - 1][j - 1] * rs.cartan()[j - 1][i - 1] {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => unreachable!("finite type"),
    }
}

/// All words reachable from `word` by one braid move.
pub fn braid_neighbours(rs: &RootSystem, word: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for start in 0..word.len() {
        for len in [2usize, 3, 4, 6] {
            if start + len > word.len() {
                continue;
            }
            let seg = &word[start..start + len];
            let (i, j) = (seg[0], seg[1]);
            if i == j || braid_length(rs, i, j) != len {
                continue;
            }
            if seg.iter().enumerate().all(|(k, &x)| x == if k % 2 == 0 { i } else { j }) {
                let mut w = word.to_vec();
                for (k, x) in w[start..start + len].iter_mut().enumerate() {
                    *x = if k % 2 == 0 { j } else { i };
                }
                out.push(w);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsystem::CartanType;

    fn sys(t: CartanType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    fn fin(c: &[i64]) -> Path {
        Path::straight_finite(Weight::from_ints(c))
    }

    #[test]
    fn closure_examples() {
        let a2 = sys(CartanType::A, 2);
        let c = closure(&a2, &[fin(&[1, 0])], &[1, 2], Ops::Both, DEFAULT_BUDGET).unwrap();
        assert_eq!(c.len(), 3);
        let e6 = sys(CartanType::E, 6);
        let c = highest_weight_crystal(&e6, &Weight::fundamental(6, 1)).unwrap();
        assert_eq!(c.len(), 27);
        assert!(c.nodes().iter().all(|p| p.len() == 1));
        let z = closure(&a2, &[Path::empty()], &[1, 2], Ops::Both, 10).unwrap();
        assert_eq!(z.len(), 1);
    }

    #[test]
    fn closure_budget_is_reported() {
        let a2 = sys(CartanType::A, 2);
        let err = closure(&a2, &[fin(&[3, 3])], &[1, 2], Ops::Both, 10).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 10, .. }));
    }

    #[test]
    fn demazure_examples() {
        let a1 = sys(CartanType::A, 1);
        let c = demazure_generate(&a1, &fin(&[1]), &[1]).unwrap();
        assert_eq!(c.node_set(), [fin(&[1]), fin(&[-1])].into_iter().collect());
        let l0 = Path::straight(AffineWeight::lambda0(1));
        let c = demazure_generate(&a1, &l0.concat(&fin(&[1])), &[1]).unwrap();
        assert_eq!(
            c.node_set(),
            [l0.concat(&fin(&[1])), l0.concat(&fin(&[-1]))].into_iter().collect()
        );
        let a2 = sys(CartanType::A, 2);
        assert_eq!(demazure_generate(&a2, &fin(&[1, 0]), &[]).unwrap().len(), 1);
    }

    #[test]
    fn dominant_elements_examples() {
        let a2 = sys(CartanType::A, 2);
        let c = highest_weight_crystal(&a2, &Weight::fundamental(2, 1)).unwrap();
        assert_eq!(dominant_elements(&a2, &c), vec![fin(&[1, 0])]);
        let z = closure(&a2, &[Path::empty()], &[1, 2], Ops::Both, 10).unwrap();
        assert_eq!(dominant_elements(&a2, &z), vec![Path::empty()]);
    }

    #[test]
    fn characters() {
        let a2 = sys(CartanType::A, 2);
        let c = highest_weight_crystal(&a2, &Weight::fundamental(2, 1)).unwrap();
        let ch = character_decompose(&a2, &c);
        let w = |c: &[i64]| AffineWeight::finite(Weight::from_ints(c));
        assert_eq!(
            ch.weights,
            [(w(&[1, 0]), 1), (w(&[-1, 1]), 1), (w(&[0, -1]), 1)].into_iter().collect()
        );
        assert_eq!(ch.decomposition, [(w(&[1, 0]), 1)].into_iter().collect());

        let a1 = sys(CartanType::A, 1);
        let b = highest_weight_crystal(&a1, &Weight::fundamental(1, 1)).unwrap();
        let t = tensor_concat(&a1, &b, &b).unwrap();
        assert_eq!(t.len(), 4);
        let ch = character_decompose(&a1, &t);
        assert_eq!(ch.decomposition, [(w(&[2]), 1), (w(&[0]), 1)].into_iter().collect());
        assert_eq!(ch.dimension_from_decomposition(&a1).unwrap(), 4);
    }

    #[test]
    fn ls_small_cases() {
        let a2 = sys(CartanType::A, 2);
        let ls = ls_paths(&a2, &Weight::fundamental(2, 1), 100).unwrap();
        assert_eq!(ls.len(), 3);
        let adj = ls_paths(&a2, &Weight::from_ints(&[1, 1]), 100).unwrap();
        assert_eq!(adj.len(), 8);
        assert!(adj.iter().any(|p| p.len() == 2));
        let c = highest_weight_crystal(&a2, &Weight::from_ints(&[1, 1])).unwrap();
        assert_eq!(c.node_set(), adj);
        let e6 = sys(CartanType::E, 6);
        assert_eq!(ls_paths(&e6, &Weight::fundamental(6, 1), 100).unwrap().len(), 27);
    }

    #[test]
    fn isomorphism_examples() {
        let a2 = sys(CartanType::A, 2);
        let b1 = highest_weight_crystal(&a2, &Weight::fundamental(2, 1)).unwrap();
        let ls = Crystal::from_paths(
            &a2,
            ls_paths(&a2, &Weight::fundamental(2, 1), 100).unwrap(),
            &[1, 2],
            vec![],
        );
        assert!(crystals_isomorphic(&a2, &b1, &ls, &WeightMatch::Exact).unwrap());
        let b2 = highest_weight_crystal(&a2, &Weight::fundamental(2, 2)).unwrap();
        assert!(!crystals_isomorphic(&a2, &b1, &b2, &WeightMatch::Exact).unwrap());

        let a1 = sys(CartanType::A, 1);
        let b = highest_weight_crystal(&a1, &Weight::fundamental(1, 1)).unwrap();
        let l0 = Path::straight(AffineWeight::lambda0(1));
        let shifted = Crystal::from_paths(&a1, b.nodes().iter().map(|p| l0.concat(p)), &[1], vec![]);
        assert!(crystals_isomorphic(&a1, &shifted, &b, &WeightMatch::FinitePart).unwrap());
        assert!(crystals_isomorphic(
            &a1,
            &shifted,
            &b,
            &WeightMatch::Offset(AffineWeight::lambda0(1))
        )
        .unwrap());
        let t = tensor_concat(&a1, &b, &b).unwrap();
        assert!(matches!(
            crystals_isomorphic(&a1, &t, &t, &WeightMatch::Exact),
            Err(Error::MultipleDominant(2))
        ));
    }

    #[test]
    fn tensor_with_trivial_crystal() {
        let a2 = sys(CartanType::A, 2);
        let b = highest_weight_crystal(&a2, &Weight::fundamental(2, 1)).unwrap();
        let triv = closure(&a2, &[Path::empty()], &[1, 2], Ops::Both, 10).unwrap();
        assert_eq!(tensor_concat(&a2, &b, &triv).unwrap().node_set(), b.node_set());
    }

    #[test]
    fn json_and_dot_export() {
        let a2 = sys(CartanType::A, 2);
        let b = highest_weight_crystal(&a2, &Weight::fundamental(2, 1)).unwrap();
        let j = b.to_json();
        assert_eq!(j.nodes.len(), 3);
        assert_eq!(j.edges.len(), 4);
        let back = Crystal::from_json(&a2, &j, &[1, 2]).unwrap();
        assert_eq!(back.node_set(), b.node_set());
        let dot = b.to_dot();
        assert_eq!(dot.matches("style=solid").count(), 2);
        assert_eq!(dot.matches("style=dashed").count(), 2);

        let mut bad = j.clone();
        bad.edges.pop();
        assert!(Crystal::from_json(&a2, &bad, &[1, 2]).is_err());
    }

    #[test]
    fn braid_moves() {
        let a2 = sys(CartanType::A, 2);
        assert_eq!(braid_neighbours(&a2, &[1, 2, 1]), vec![vec![2, 1, 2]]);
        let b2 = sys(CartanType::B, 2);
        assert_eq!(braid_neighbours(&b2, &[1, 2, 1, 2]), vec![vec![2, 1, 2, 1]]);
        let a3 = sys(CartanType::A, 3);
        assert!(braid_neighbours(&a3, &[1, 3]).contains(&vec![3, 1]));
    }
}

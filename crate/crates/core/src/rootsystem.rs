//! Root data for the simple types A–G in Bourbaki numbering.
//!
//! Weights live in the fundamental-weight basis, roots and coroots in the
//! simple root / simple coroot bases, so pairing a weight with a coroot is a
//! dot product of coordinates. Node labels are 1-based everywhere in the public
//! API; `0` is reserved for the affine node.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use smallvec::SmallVec;

use crate::rational::{display_q, is_integer, q, Q};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn label(self) -> &'static str {
        match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::E => "E",
            CartanType::F => "F",
            CartanType::G => "G",
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            CartanType::A => rank >= 1,
            CartanType::B | CartanType::C => rank >= 2,
            CartanType::D => rank >= 4,
            CartanType::E => (6..=8).contains(&rank),
            CartanType::F => rank == 4,
            CartanType::G => rank == 2,
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            _ => Err(Error::InvalidType {
                type_label: s.to_string(),
                rank: 0,
            }),
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A weight `Σ c_i ϖ_i` with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Weight(SmallVec<[Q; 8]>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(smallvec::smallvec![q(0); rank])
    }

    /// `ϖ_i`, 1-based.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i - 1] = q(1);
        w
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(coords.iter().map(|&c| q(c)).collect())
    }

    pub fn from_coords(coords: impl IntoIterator<Item = Q>) -> Self {
        Weight(coords.into_iter().collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Q] {
        &self.0
    }

    /// `⟨λ, α_i∨⟩`, 1-based.
    #[inline]
    pub fn coord(&self, i: usize) -> Q {
        self.0[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integer)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| *c >= q(0))
    }

    pub fn scale(&self, s: Q) -> Weight {
        Weight(self.0.iter().map(|c| c * s).collect())
    }

    pub fn sum_with(&self, coeffs: &[i64]) -> Q {
        self.0
            .iter()
            .zip(coeffs)
            .fold(q(0), |acc, (c, &k)| acc + c * q(k))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(display_q).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, rhs: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&Weight> for Q {
    type Output = Weight;
    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// Integer matrix acting on fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: Vec<Vec<i64>>,
}

impl LinearMap {
    pub fn identity(rank: usize) -> Self {
        let rows = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        LinearMap { rows }
    }

    pub fn apply(&self, w: &Weight) -> Weight {
        Weight(
            self.rows
                .iter()
                .map(|row| w.sum_with(row))
                .collect::<SmallVec<[Q; 8]>>(),
        )
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositiveRoot {
    /// Coordinates in the simple root basis.
    pub root: Vec<i64>,
    /// Coordinates of the coroot in the simple coroot basis.
    pub coroot: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.root.iter().sum()
    }
}

/// Diagram automorphism attached to a minuscule coweight `ϖ_i∨`.
///
/// `σ = σ̄ t_{-ϖ_i}` with `σ̄ = w₀ w_i`; `node_perm[j] = σ(j)` for `j = 0..=r`.
#[derive(Clone, Debug)]
pub struct SigmaAut {
    pub node: usize,
    pub order: usize,
    pub node_perm: Vec<usize>,
    pub bar_sigma: Vec<usize>,
    /// Index of `ϖ_i* = -w₀ ϖ_i`.
    pub dual_node: usize,
    bar: LinearMap,
    bar_inv: LinearMap,
}

impl SigmaAut {
    pub fn bar_sigma_map(&self) -> &LinearMap {
        &self.bar
    }

    pub fn bar_sigma_inverse_map(&self) -> &LinearMap {
        &self.bar_inv
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover {
    pub lower: Weight,
    pub upper: Weight,
    /// Index into `positive_roots`.
    pub root: usize,
    /// `upper - lower = d·α`.
    pub d: i64,
}

#[derive(Clone, Debug)]
pub struct OrbitData {
    /// Orbit elements sorted by Bruhat depth then coordinates; `orbit[0]` is the
    /// dominant element.
    pub orbit: Vec<Weight>,
    pub depth: Vec<usize>,
    pub covers: Vec<Cover>,
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<PositiveRoot>,
    root_weights: Vec<Weight>,
    root_is_long: Vec<bool>,
    theta: usize,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    nu_factors: Vec<Q>,
    simple_roots: Vec<Weight>,
    theta_weight: Weight,
    longest: Vec<usize>,
    w0: LinearMap,
    sigma: Vec<SigmaAut>,
}

fn cartan_matrix(t: CartanType, r: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; r]; r];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i - 1][j - 1] = -1;
        c[j - 1][i - 1] = -1;
    };
    match t {
        CartanType::A | CartanType::B | CartanType::C | CartanType::F => {
            for i in 1..r {
                link(i, i + 1);
            }
        }
        CartanType::D => {
            for i in 1..r - 1 {
                link(i, i + 1);
            }
            link(r - 2, r);
        }
        CartanType::E => {
            link(1, 3);
            link(2, 4);
            for i in 3..r {
                link(i, i + 1);
            }
        }
        CartanType::G => link(1, 2),
    }
    // entry[i][j] = <α_j, α_i∨>
    match t {
        CartanType::B => c[r - 1][r - 2] = -2,
        CartanType::C => c[r - 2][r - 1] = -2,
        CartanType::F => c[2][1] = -2,
        CartanType::G => c[0][1] = -3,
        _ => {}
    }
    c
}

/// Solves `m·x = b` over the rationals; `m` must be invertible.
fn solve_rational(m: &[Vec<i64>], b: &[i64]) -> Vec<BigRational> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            row.iter()
                .chain(std::iter::once(&bi))
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("singular");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = &*v / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in 0..=n {
                    let sub = &factor * &a[col][k];
                    a[r][k] -= sub;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n].clone()).collect()
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

impl RootSystem {
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        if !cartan_type.valid_rank(rank) {
            return Err(Error::InvalidType {
                type_label: cartan_type.label().to_string(),
                rank,
            });
        }
        let cartan = cartan_matrix(cartan_type, rank);
        let r = rank;

        let simple_roots: Vec<Weight> = (0..r)
            .map(|j| Weight::from_ints(&(0..r).map(|i| cartan[i][j]).collect::<Vec<_>>()))
            .collect();

        // Positive roots: closure of the simple roots under the simple
        // reflections, which permute Δ₊ \ {α_j}. Coroots are reflected alongside.
        let unit = |i: usize| (0..r).map(|k| i64::from(k == i)).collect::<Vec<_>>();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut roots: Vec<PositiveRoot> = Vec::new();
        let mut queue: VecDeque<PositiveRoot> = VecDeque::new();
        for i in 0..r {
            let pr = PositiveRoot {
                root: unit(i),
                coroot: unit(i),
            };
            seen.insert(pr.root.clone());
            queue.push_back(pr);
        }
        while let Some(beta) = queue.pop_front() {
            for j in 0..r {
                if beta.root == unit(j) {
                    continue;
                }
                let p: i64 = (0..r).map(|m| beta.root[m] * cartan[j][m]).sum();
                if p == 0 {
                    continue;
                }
                let pc: i64 = (0..r).map(|m| beta.coroot[m] * cartan[m][j]).sum();
                let mut root = beta.root.clone();
                root[j] -= p;
                let mut coroot = beta.coroot.clone();
                coroot[j] -= pc;
                if seen.insert(root.clone()) {
                    queue.push_back(PositiveRoot { root, coroot });
                }
            }
            roots.push(beta);
        }
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.root.cmp(&a.root)));

        let theta = roots.len() - 1;
        let marks = roots[theta].root.clone();
        let comarks = roots[theta].coroot.clone();
        let nu_factors = marks
            .iter()
            .zip(&comarks)
            .map(|(&a, &ac)| Q::new(a, ac))
            .collect();

        let root_weights: Vec<Weight> = roots
            .iter()
            .map(|pr| {
                let mut w = Weight::zero(r);
                for (m, &k) in pr.root.iter().enumerate() {
                    if k != 0 {
                        w += &simple_roots[m].scale(q(k));
                    }
                }
                w
            })
            .collect();
        let theta_weight = root_weights[theta].clone();

        // Squared lengths of simple roots via (α_j,α_j)/(α_i,α_i) = c[i][j]/c[j][i].
        let mut norm: Vec<Option<Q>> = vec![None; r];
        norm[0] = Some(q(1));
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..r {
                for j in 0..r {
                    if i != j && cartan[i][j] != 0 && norm[j].is_none() {
                        if let Some(ni) = norm[i] {
                            norm[j] = Some(ni * Q::new(cartan[i][j], cartan[j][i]));
                            changed = true;
                        }
                    }
                }
            }
        }
        let norm: Vec<Q> = norm.into_iter().map(|n| n.expect("connected diagram")).collect();
        let root_norms: Vec<Q> = roots
            .iter()
            .map(|pr| {
                let m = (0..r).find(|&m| pr.root[m] != 0).expect("nonzero root");
                norm[m] * Q::new(pr.root[m], pr.coroot[m])
            })
            .collect();
        let max_norm = *root_norms.iter().max().expect("roots");
        let root_is_long = root_norms.iter().map(|n| *n == max_norm).collect();

        let mut rs = RootSystem {
            cartan_type,
            rank,
            cartan,
            positive_roots: roots,
            root_weights,
            root_is_long,
            theta,
            marks,
            comarks,
            nu_factors,
            simple_roots,
            theta_weight,
            longest: Vec::new(),
            w0: LinearMap::identity(rank),
            sigma: Vec::new(),
        };
        let all: Vec<usize> = (1..=r).collect();
        rs.longest = rs.longest_word(&all);
        rs.w0 = rs.word_map(&rs.longest);
        rs.sigma = rs.compute_minuscule_data()?;
        Ok(rs)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }

    /// `cartan()[i][j] = ⟨α_j, α_i∨⟩`, 0-based.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive_roots
    }

    /// Positive roots in the fundamental-weight basis, same order as
    /// [`positive_roots`](Self::positive_roots).
    pub fn root_weights(&self) -> &[Weight] {
        &self.root_weights
    }

    pub fn root_is_long(&self, idx: usize) -> bool {
        self.root_is_long[idx]
    }

    pub fn theta(&self) -> &PositiveRoot {
        &self.positive_roots[self.theta]
    }

    pub fn theta_weight(&self) -> &Weight {
        &self.theta_weight
    }

    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn nu_factors(&self) -> &[Q] {
        &self.nu_factors
    }

    /// `α_i` in the fundamental-weight basis, 1-based.
    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.simple_roots[i - 1]
    }

    pub fn rho(&self) -> Weight {
        Weight::from_ints(&vec![1; self.rank])
    }

    pub fn check_node(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::NodeOutOfRange {
                node: i,
                rank: self.rank,
            })
        } else {
            Ok(())
        }
    }

    pub fn pair_coroot(&self, w: &Weight, coroot: &[i64]) -> Result<Q> {
        if coroot.len() != self.rank || w.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: if w.rank() != self.rank { w.rank() } else { coroot.len() },
            });
        }
        Ok(w.sum_with(coroot))
    }

    /// `⟨λ, θ∨⟩`.
    #[inline]
    pub fn pair_theta_coroot(&self, w: &Weight) -> Q {
        w.sum_with(&self.comarks)
    }

    /// `s_i(λ) = λ - ⟨λ, α_i∨⟩ α_i`, 1-based.
    pub fn reflect_simple(&self, i: usize, w: &Weight) -> Weight {
        let c = w.coord(i);
        if c.is_zero() {
            return w.clone();
        }
        w - &self.simple_roots[i - 1].scale(c)
    }

    /// Applies `s_{i_1} ⋯ s_{i_k}` (rightmost letter first).
    pub fn apply_word(&self, word: &[usize], w: &Weight) -> Weight {
        word.iter()
            .rev()
            .fold(w.clone(), |acc, &i| self.reflect_simple(i, &acc))
    }

    pub fn word_map(&self, word: &[usize]) -> LinearMap {
        let r = self.rank;
        let images: Vec<Weight> = (1..=r)
            .map(|j| self.apply_word(word, &Weight::fundamental(r, j)))
            .collect();
        let rows = (0..r)
            .map(|i| {
                images
                    .iter()
                    .map(|im| {
                        let c = im.coords()[i];
                        debug_assert!(is_integer(&c));
                        *c.numer()
                    })
                    .collect()
            })
            .collect();
        LinearMap { rows }
    }

    /// Greedily applies `s_j` (`j ∈ allowed`, `c_j < 0`) until the weight is
    /// dominant for the allowed nodes. Returns the result and the letters in the
    /// order they were applied.
    pub fn raise_to_dominant(&self, w: &Weight, allowed: &[usize]) -> (Weight, Vec<usize>) {
        let mut allowed: Vec<usize> = allowed.to_vec();
        allowed.sort_unstable();
        allowed.dedup();
        let mut cur = w.clone();
        let mut applied = Vec::new();
        while let Some(&j) = allowed.iter().find(|&&j| cur.coord(j) < q(0)) {
            cur = self.reflect_simple(j, &cur);
            applied.push(j);
        }
        (cur, applied)
    }

    /// Reduced word of the longest element of the parabolic subgroup generated
    /// by the allowed simple reflections.
    pub fn longest_word(&self, allowed: &[usize]) -> Vec<usize> {
        let mut v = Weight::zero(self.rank);
        for &j in allowed {
            v.0[j - 1] = q(-1);
        }
        let (_, mut applied) = self.raise_to_dominant(&v, allowed);
        applied.reverse();
        applied
    }

    /// Reduced word for the element represented by an arbitrary word.
    pub fn reduce_word(&self, word: &[usize]) -> Vec<usize> {
        // w⁻¹ρ: apply letters left to right.
        let mu = word
            .iter()
            .fold(self.rho(), |acc, &i| self.reflect_simple(i, &acc));
        let all: Vec<usize> = (1..=self.rank).collect();
        let (top, mut applied) = self.raise_to_dominant(&mu, &all);
        debug_assert_eq!(top, self.rho());
        applied.reverse();
        applied
    }

    pub fn longest_element_word(&self) -> &[usize] {
        &self.longest
    }

    pub fn w0_map(&self) -> &LinearMap {
        &self.w0
    }

    /// `λ* = -w₀ λ`.
    pub fn dual_weight(&self, w: &Weight) -> Result<Weight> {
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(-&self.w0.apply(w))
    }

    /// `i*` with `ϖ_{i*} = -w₀ ϖ_i`.
    pub fn dual_node(&self, i: usize) -> usize {
        let d = self
            .dual_weight(&Weight::fundamental(self.rank, i))
            .expect("fundamental weights are dominant");
        (1..=self.rank)
            .find(|&j| d == Weight::fundamental(self.rank, j))
            .expect("-w0 permutes fundamental weights")
    }

    /// Weyl dimension formula, evaluated exactly.
    pub fn weyl_dimension(&self, w: &Weight) -> Result<u128> {
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        if !w.is_integral() {
            return Err(Error::NotIntegral(w.to_string()));
        }
        let rho = self.rho();
        let shifted = &rho + w;
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for pr in &self.positive_roots {
            let a = shifted.sum_with(&pr.coroot);
            let b = rho.sum_with(&pr.coroot);
            num *= BigInt::from(*a.numer());
            den *= BigInt::from(*b.numer());
        }
        let (quot, rem) = num.div_rem(&den);
        if !rem.is_zero() {
            return Err(Error::Invariant("Weyl dimension is not an integer".into()));
        }
        quot.to_u128()
            .ok_or_else(|| Error::Overflow(format!("dim V({w}) exceeds u128")))
    }

    /// Bruhat depth of an orbit element: `#{α > 0 : ⟨τ, α∨⟩ < 0}`.
    pub fn orbit_depth(&self, tau: &Weight) -> usize {
        self.positive_roots
            .iter()
            .filter(|pr| tau.sum_with(&pr.coroot) < q(0))
            .count()
    }

    pub fn weyl_orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(x) = queue.pop_front() {
            for j in 1..=self.rank {
                if x.coord(j).is_zero() {
                    continue;
                }
                let y = self.reflect_simple(j, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The `W`-orbit of a dominant weight with all covering pairs of the
    /// parabolic Bruhat order, computed from every positive root.
    pub fn orbit_and_covers(&self, w: &Weight) -> Result<OrbitData> {
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        let mut orbit: Vec<(usize, Weight)> = self
            .weyl_orbit(w)
            .into_iter()
            .map(|t| (self.orbit_depth(&t), t))
            .collect();
        orbit.sort();
        let depth_of: HashMap<&Weight, usize> = orbit.iter().map(|(d, t)| (t, *d)).collect();
        let mut covers = Vec::new();
        for (du, upper) in &orbit {
            for (idx, pr) in self.positive_roots.iter().enumerate() {
                let d = upper.sum_with(&pr.coroot);
                if d <= q(0) {
                    continue;
                }
                let lower = upper - &self.root_weights[idx].scale(d);
                let dl = depth_of[&lower];
                if dl == du + 1 {
                    covers.push(Cover {
                        lower,
                        upper: upper.clone(),
                        root: idx,
                        d: *d.numer(),
                    });
                }
            }
        }
        covers.sort();
        let (depth, orbit) = orbit.into_iter().unzip();
        Ok(OrbitData {
            orbit,
            depth,
            covers,
        })
    }

    /// Covering pairs `(lower, upper)` obtained from simple reflections only.
    pub fn simple_covers(&self, w: &Weight) -> Result<BTreeSet<(Weight, Weight)>> {
        if !w.is_dominant() {
            return Err(Error::NotDominant(w.to_string()));
        }
        let mut out = BTreeSet::new();
        for tau in self.weyl_orbit(w) {
            for j in 1..=self.rank {
                if tau.coord(j) > q(0) {
                    out.insert((self.reflect_simple(j, &tau), tau.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn minuscule_nodes(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&i| self.marks[i - 1] == 1).collect()
    }

    pub fn is_minuscule(&self, i: usize) -> bool {
        i >= 1 && i <= self.rank && self.marks[i - 1] == 1
    }

    pub fn minuscule_data(&self) -> &[SigmaAut] {
        &self.sigma
    }

    pub fn sigma(&self, node: usize) -> Result<&SigmaAut> {
        self.sigma
            .iter()
            .find(|s| s.node == node)
            .ok_or(Error::NotMinuscule(node))
    }

    /// Order of `ϖ_i∨` in the coweight lattice modulo the coroot lattice.
    pub fn coweight_order(&self, i: usize) -> usize {
        // ϖ_i∨ = Σ x_j α_j∨ with Σ_j x_j c[j][k] = δ_ik.
        let r = self.rank;
        let transposed: Vec<Vec<i64>> = (0..r)
            .map(|k| (0..r).map(|j| self.cartan[j][k]).collect())
            .collect();
        let rhs: Vec<i64> = (0..r).map(|k| i64::from(k == i - 1)).collect();
        solve_rational(&transposed, &rhs)
            .iter()
            .map(|x| x.denom().to_usize().expect("small denominator"))
            .fold(1, |acc, d| acc.lcm(&d))
    }

    /// `(r+1)×(r+1)` affine Cartan matrix, index 0 the affine node.
    pub fn affine_cartan(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut a = vec![vec![0i64; r + 1]; r + 1];
        a[0][0] = 2;
        for i in 1..=r {
            for j in 1..=r {
                a[i][j] = self.cartan[i - 1][j - 1];
            }
            // <α_0, α_i∨> = -<θ, α_i∨>
            a[i][0] = -*self.theta_weight.coord(i).numer();
            // <α_i, α_0∨> = -<α_i, θ∨>
            a[0][i] = -*self.pair_theta_coroot(&self.simple_roots[i - 1]).numer();
        }
        a
    }

    fn compute_minuscule_data(&self) -> Result<Vec<SigmaAut>> {
        let r = self.rank;
        let mut out = Vec::new();
        for i in self.minuscule_nodes() {
            let others: Vec<usize> = (1..=r).filter(|&j| j != i).collect();
            let mut word = self.longest.clone();
            word.extend(self.longest_word(&others));
            let bar_sigma = self.reduce_word(&word);
            let bar = self.word_map(&bar_sigma);
            let mut inv_word = bar_sigma.clone();
            inv_word.reverse();
            let bar_inv = self.word_map(&inv_word);

            let mut perm = vec![usize::MAX; r + 1];
            perm[i] = 0;
            let minus_theta = -&self.theta_weight;
            if bar.apply(&self.simple_roots[i - 1]) != minus_theta {
                return Err(Error::Invariant(format!(
                    "σ̄(α_{i}) ≠ -θ in {}",
                    self.label()
                )));
            }
            for &j in &others {
                let image = bar.apply(&self.simple_roots[j - 1]);
                let k = (1..=r)
                    .find(|&k| self.simple_roots[k - 1] == image)
                    .ok_or_else(|| {
                        Error::Invariant(format!("σ̄(α_{j}) is not simple in {}", self.label()))
                    })?;
                perm[j] = k;
            }
            let used: HashSet<usize> = perm.iter().copied().filter(|&x| x != usize::MAX).collect();
            let free: Vec<usize> = (0..=r).filter(|k| !used.contains(k)).collect();
            if free.len() != 1 {
                return Err(Error::Invariant("σ is not a permutation".into()));
            }
            perm[0] = free[0];
            let order = permutation_order(&perm);
            let cw = self.coweight_order(i);
            if order != cw {
                return Err(Error::Invariant(format!(
                    "order of σ ({order}) differs from order of ϖ∨_{i} ({cw})"
                )));
            }
            out.push(SigmaAut {
                node: i,
                order,
                node_perm: perm,
                bar_sigma,
                dual_node: self.dual_node(i),
                bar,
                bar_inv,
            });
        }
        Ok(out)
    }

    pub fn summary(&self) -> RootSystemSummary {
        RootSystemSummary {
            r#type: self.cartan_type.label().to_string(),
            rank: self.rank,
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.clone(),
            marks: self.marks.clone(),
            minuscule_nodes: self.minuscule_nodes(),
            sigma: self
                .sigma
                .iter()
                .map(|s| SigmaSummary {
                    node: s.node,
                    perm: s.node_perm.clone(),
                    order: s.order,
                    bar_sigma_word: s.bar_sigma.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaSummary {
    pub node: usize,
    pub perm: Vec<usize>,
    pub order: usize,
    pub bar_sigma_word: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSystemSummary {
    pub r#type: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<PositiveRoot>,
    pub marks: Vec<i64>,
    pub minuscule_nodes: Vec<usize>,
    pub sigma: Vec<SigmaSummary>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;

    fn rs(t: CartanType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    #[test]
    fn rejects_invalid_types() {
        for (t, r) in [
            (CartanType::A, 0),
            (CartanType::B, 1),
            (CartanType::D, 3),
            (CartanType::E, 5),
            (CartanType::E, 9),
            (CartanType::F, 3),
            (CartanType::G, 3),
        ] {
            assert!(matches!(RootSystem::new(t, r), Err(Error::InvalidType { .. })));
        }
    }

    #[test]
    fn rank_one_and_two_data() {
        let a1 = rs(CartanType::A, 1);
        assert_eq!(a1.positive_roots().len(), 1);
        assert_eq!(a1.marks(), &[1]);
        assert_eq!(a1.theta().root, vec![1]);

        let a2 = rs(CartanType::A, 2);
        assert_eq!(a2.cartan(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.positive_roots().len(), 3);
        assert_eq!(a2.marks(), &[1, 1]);
    }

    #[test]
    fn root_counts_and_marks() {
        let table: &[(CartanType, usize, usize, &[i64])] = &[
            (CartanType::B, 3, 9, &[1, 2, 2]),
            (CartanType::C, 3, 9, &[2, 2, 1]),
            (CartanType::D, 4, 12, &[1, 2, 1, 1]),
            (CartanType::E, 6, 36, &[1, 2, 2, 3, 2, 1]),
            (CartanType::E, 7, 63, &[2, 2, 3, 4, 3, 2, 1]),
            (CartanType::E, 8, 120, &[2, 3, 4, 6, 5, 4, 3, 2]),
            (CartanType::F, 4, 24, &[2, 3, 4, 2]),
            (CartanType::G, 2, 6, &[3, 2]),
        ];
        for &(t, r, n, marks) in table {
            let sys = rs(t, r);
            assert_eq!(sys.positive_roots().len(), n, "{t}{r}");
            assert_eq!(sys.marks(), marks, "{t}{r}");
            // θ dominates every positive root coefficientwise
            for pr in sys.positive_roots() {
                assert!(pr.root.iter().zip(marks).all(|(a, b)| a <= b));
            }
            for (i, row) in sys.cartan().iter().enumerate() {
                assert_eq!(row[i], 2);
                assert!(row.iter().enumerate().all(|(j, &c)| j == i || c <= 0));
            }
            // a_i = <θ, ϖ_i∨> is the α_i coefficient of θ
            assert_eq!(sys.theta().root, marks);
        }
    }

    #[test]
    fn comarks_in_non_simply_laced_types() {
        // θ∨ for B3 is the highest short coroot: α1∨ + 2α2∨ + α3∨.
        assert_eq!(rs(CartanType::B, 3).comarks(), &[1, 2, 1]);
        assert_eq!(rs(CartanType::C, 3).comarks(), &[1, 1, 1]);
        assert_eq!(rs(CartanType::G, 2).comarks(), &[1, 2]);
        let b3 = rs(CartanType::B, 3);
        assert_eq!(b3.nu_factors(), &[q(1), q(1), q(2)]);
    }

    #[test]
    fn pairing_examples() {
        let a1 = rs(CartanType::A, 1);
        assert_eq!(a1.pair_coroot(&Weight::fundamental(1, 1), &[1]).unwrap(), q(1));
        let a2 = rs(CartanType::A, 2);
        let theta_v = a2.theta().coroot.clone();
        assert_eq!(a2.pair_coroot(&Weight::fundamental(2, 1), &theta_v).unwrap(), q(1));
        assert_eq!(a2.pair_coroot(&a2.rho(), &theta_v).unwrap(), q(2));
        assert!(matches!(
            a2.pair_coroot(&a2.rho(), &[1]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflection_examples() {
        let a1 = rs(CartanType::A, 1);
        assert_eq!(a1.reflect_simple(1, &Weight::fundamental(1, 1)), Weight::from_ints(&[-1]));
        let a2 = rs(CartanType::A, 2);
        let w1 = Weight::fundamental(2, 1);
        assert_eq!(a2.reflect_simple(1, &w1), Weight::from_ints(&[-1, 1]));
        assert_eq!(a2.reflect_simple(2, &w1), w1);
        let half = Weight::from_coords([qr(1, 2), qr(-3, 2)]);
        assert_eq!(a2.reflect_simple(2, &a2.reflect_simple(2, &half)), half);
    }

    #[test]
    fn raising_and_longest_words() {
        let a1 = rs(CartanType::A, 1);
        assert_eq!(
            a1.raise_to_dominant(&Weight::from_ints(&[-1]), &[1]),
            (Weight::from_ints(&[1]), vec![1])
        );
        let a2 = rs(CartanType::A, 2);
        let (top, word) = a2.raise_to_dominant(&Weight::from_ints(&[-1, -1]), &[1, 2]);
        assert_eq!(top, a2.rho());
        assert_eq!(word.len(), 3);
        assert_eq!(
            a2.raise_to_dominant(&Weight::fundamental(2, 1), &[2]),
            (Weight::fundamental(2, 1), vec![])
        );
        assert_eq!(a1.longest_word(&[1]), vec![1]);
        assert_eq!(a2.longest_word(&[1, 2]).len(), 3);
        let e6 = rs(CartanType::E, 6);
        assert_eq!(e6.longest_word(&[2, 3, 4, 5, 6]).len(), 20);
        assert_eq!(e6.longest_element_word().len(), 36);
    }

    #[test]
    fn reduce_word_cancels() {
        let a2 = rs(CartanType::A, 2);
        assert_eq!(a2.reduce_word(&[1, 1]), Vec::<usize>::new());
        assert_eq!(a2.reduce_word(&[1, 2, 1, 2, 1, 2]), Vec::<usize>::new());
        assert_eq!(a2.reduce_word(&[1, 2, 2]).len(), 1);
    }

    #[test]
    fn minuscule_tables() {
        let a1 = rs(CartanType::A, 1);
        let s = &a1.minuscule_data()[0];
        assert_eq!((s.node, s.order), (1, 2));
        assert_eq!(s.node_perm, vec![1, 0]);

        let e6 = rs(CartanType::E, 6);
        assert_eq!(e6.minuscule_nodes(), vec![1, 6]);
        let s1 = e6.sigma(1).unwrap();
        assert_eq!(s1.order, 3);
        assert_eq!(s1.node_perm[1], 0);
        assert_eq!(s1.node_perm[0], 6);
        assert_eq!(s1.dual_node, 6);

        assert_eq!(rs(CartanType::A, 3).minuscule_nodes(), vec![1, 2, 3]);
        assert_eq!(rs(CartanType::B, 3).minuscule_nodes(), vec![1]);
        assert_eq!(rs(CartanType::C, 3).minuscule_nodes(), vec![3]);
        assert_eq!(rs(CartanType::D, 4).minuscule_nodes(), vec![1, 3, 4]);
        assert_eq!(rs(CartanType::E, 7).minuscule_nodes(), vec![7]);
        for (t, r) in [(CartanType::E, 8), (CartanType::F, 4), (CartanType::G, 2)] {
            assert!(rs(t, r).minuscule_data().is_empty());
        }
        assert!(matches!(e6.sigma(2), Err(Error::NotMinuscule(2))));
    }

    #[test]
    fn sigma_is_affine_diagram_automorphism() {
        for (t, r) in [
            (CartanType::A, 1),
            (CartanType::A, 4),
            (CartanType::B, 3),
            (CartanType::C, 3),
            (CartanType::D, 4),
            (CartanType::D, 5),
            (CartanType::E, 6),
            (CartanType::E, 7),
        ] {
            let sys = rs(t, r);
            let a = sys.affine_cartan();
            for s in sys.minuscule_data() {
                let p = &s.node_perm;
                for i in 0..=r {
                    for j in 0..=r {
                        assert_eq!(a[p[i]][p[j]], a[i][j], "{t}{r} node {}", s.node);
                    }
                }
                // every positive root pairs to 0 or 1 with ϖ_i∨
                assert!(sys
                    .positive_roots()
                    .iter()
                    .all(|pr| pr.root[s.node - 1] <= 1));
            }
        }
    }

    #[test]
    fn dual_weights() {
        let a2 = rs(CartanType::A, 2);
        assert_eq!(a2.dual_weight(&Weight::fundamental(2, 1)).unwrap(), Weight::fundamental(2, 2));
        let a1 = rs(CartanType::A, 1);
        assert_eq!(a1.dual_weight(&Weight::fundamental(1, 1)).unwrap(), Weight::fundamental(1, 1));
        let e6 = rs(CartanType::E, 6);
        assert_eq!(e6.dual_weight(&Weight::fundamental(6, 1)).unwrap(), Weight::fundamental(6, 6));
        assert!(matches!(
            a2.dual_weight(&Weight::from_ints(&[-1, 0])),
            Err(Error::NotDominant(_))
        ));
    }

    #[test]
    fn weyl_dimensions() {
        let a2 = rs(CartanType::A, 2);
        assert_eq!(a2.weyl_dimension(&Weight::fundamental(2, 1)).unwrap(), 3);
        assert_eq!(a2.weyl_dimension(&Weight::zero(2)).unwrap(), 1);
        assert_eq!(a2.weyl_dimension(&Weight::from_ints(&[1, 1])).unwrap(), 8);
        let e6 = rs(CartanType::E, 6);
        assert_eq!(e6.weyl_dimension(&Weight::fundamental(6, 1)).unwrap(), 27);
        assert_eq!(e6.weyl_dimension(&Weight::fundamental(6, 2)).unwrap(), 78);
        let e8 = rs(CartanType::E, 8);
        assert_eq!(e8.weyl_dimension(&Weight::fundamental(8, 8)).unwrap(), 248);
        let g2 = rs(CartanType::G, 2);
        assert_eq!(g2.weyl_dimension(&Weight::fundamental(2, 1)).unwrap(), 7);
        assert!(a2.weyl_dimension(&Weight::from_coords([qr(1, 2), q(0)])).is_err());
        assert!(a2.weyl_dimension(&Weight::from_ints(&[-1, 0])).is_err());
    }

    #[test]
    fn orbits_and_covers() {
        let a2 = rs(CartanType::A, 2);
        let od = a2.orbit_and_covers(&Weight::fundamental(2, 1)).unwrap();
        assert_eq!(od.orbit.len(), 3);
        assert_eq!(od.covers.len(), 2);
        assert_eq!(od.orbit[0], Weight::fundamental(2, 1));
        let e6 = rs(CartanType::E, 6);
        assert_eq!(e6.orbit_and_covers(&Weight::fundamental(6, 1)).unwrap().orbit.len(), 27);
        let zero = a2.orbit_and_covers(&Weight::zero(2)).unwrap();
        assert_eq!(zero.orbit, vec![Weight::zero(2)]);
        assert!(zero.covers.is_empty());
    }

    #[test]
    fn coweight_orders() {
        assert_eq!(rs(CartanType::A, 4).coweight_order(2), 5);
        assert_eq!(rs(CartanType::D, 4).coweight_order(1), 2);
        assert_eq!(rs(CartanType::D, 5).coweight_order(5), 4);
        assert_eq!(rs(CartanType::E, 7).coweight_order(7), 2);
    }
}

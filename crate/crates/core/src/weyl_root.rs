//! Classical root data, signed-permutation Weyl groups and Kostant representatives.
//!
//! Coordinates: types B, C, D of rank n live on ℝⁿ; type A of rank n lives on
//! ℝⁿ⁺¹ (the GLₙ₊₁ torus). A root is positive iff its first nonzero coordinate
//! is positive, which makes the simple roots eᵢ − eᵢ₊₁ together with eₙ (B),
//! 2eₙ (C) or eₙ₋₁ + eₙ (D). The sign change generator therefore sits at the
//! last position.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::scalar::{self, Scalar, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeylError {
    #[error("images {0:?} do not extend to a bijection of {{±1..±t}}")]
    NotBijective(Vec<i32>),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("invalid rank {rank} for type {family:?}")]
    BadRank { family: Family, rank: usize },
    #[error("shape {0} is not compatible with the root datum")]
    IncompatibleShape(String),
    #[error("weight is not dominant: pairing {pairing:?} against simple coroot {index}")]
    NotDominant { index: usize, pairing: String },
    #[error("weight has {got} coordinates, datum needs {want}")]
    WeightLength { got: usize, want: usize },
}

// ---------------------------------------------------------------------------
// Weight
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight<S: Scalar = Q> {
    coords: Vec<S>,
}

impl<S: Scalar> fmt::Debug for Weight<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Weight{:?}", self.coords)
    }
}

impl<S: Scalar> Weight<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Weight { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Weight { coords: vec![S::zero(); dim] }
    }

    pub fn from_halves(h: &[i64]) -> Self {
        Weight { coords: h.iter().map(|&x| S::from_halves(x)).collect() }
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Weight { coords: v.iter().map(|&x| S::from_int(x)).collect() }
    }

    /// Basis vector eᵢ (1-based) scaled by `c`.
    pub fn basis(dim: usize, i: usize, c: i64) -> Self {
        let mut w = Self::zero(dim);
        w.coords[i - 1] = S::from_int(c);
        w
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| *a + *b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Weight { coords: self.coords.iter().zip(&o.coords).map(|(a, b)| *a - *b).collect() }
    }

    pub fn scale(&self, c: S) -> Self {
        Weight { coords: self.coords.iter().map(|a| *a * c).collect() }
    }

    pub fn dot(&self, o: &Self) -> S {
        self.coords.iter().zip(&o.coords).fold(S::zero(), |acc, (a, b)| acc + *a * *b)
    }

    /// ⟨self, α̌⟩ = 2(self, α)/(α, α).
    pub fn pair_coroot(&self, alpha: &Self) -> S {
        let two = S::from_int(2);
        two * self.dot(alpha) / alpha.dot(alpha)
    }

    /// All entries in ½ℤ.
    pub fn is_half_integral(&self) -> bool {
        self.coords.iter().all(|c| c.to_halves().is_some())
    }

    /// All entries integral, or all strictly half-integral.
    pub fn is_pure(&self) -> bool {
        let h: Option<Vec<i64>> = self.coords.iter().map(|c| c.to_halves()).collect();
        match h {
            None => false,
            Some(h) => h.iter().all(|x| x % 2 == 0) || h.iter().all(|x| x % 2 != 0),
        }
    }

    /// Sign of the first nonzero coordinate.
    pub fn first_sign(&self) -> Ordering {
        for c in &self.coords {
            if *c > S::zero() {
                return Ordering::Greater;
            }
            if *c < S::zero() {
                return Ordering::Less;
            }
        }
        Ordering::Equal
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.coords[i].is_zero()).map(|i| i + 1).collect()
    }
}

impl Weight<Q> {
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(scalar::fmt_q).collect()
    }
}

impl Serialize for Weight<Q> {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight<Q> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct W(#[serde(with = "scalar::qvec")] Vec<Q>);
        W::deserialize(d).map(|w| Weight::new(w.0))
    }
}

// ---------------------------------------------------------------------------
// Signed permutations
// ---------------------------------------------------------------------------

/// Element of W_t: `images[i-1] = w(i)`, extended by w(−i) = −w(i).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedPerm {
    images: Vec<i32>,
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.images)
    }
}

impl SignedPerm {
    pub fn new(images: Vec<i32>) -> Result<Self, WeylError> {
        let t = images.len() as i32;
        let abs: BTreeSet<i32> = images.iter().map(|x| x.abs()).collect();
        if abs.len() != images.len() || abs.iter().any(|&a| a < 1 || a > t) {
            return Err(WeylError::NotBijective(images));
        }
        Ok(SignedPerm { images })
    }

    pub fn identity(t: usize) -> Self {
        SignedPerm { images: (1..=t as i32).collect() }
    }

    /// Adjacent transposition (k, k+1), 1 ≤ k < t.
    pub fn transposition(t: usize, k: usize) -> Self {
        let mut w = Self::identity(t);
        w.images.swap(k - 1, k);
        w
    }

    /// Sign change at position t.
    pub fn sign_flip(t: usize) -> Self {
        let mut w = Self::identity(t);
        w.images[t - 1] = -(t as i32);
        w
    }

    /// The type-C generators s₁..s_{t−1}, s_t.
    pub fn type_c_generators(t: usize) -> Vec<Self> {
        let mut g: Vec<Self> = (1..t).map(|k| Self::transposition(t, k)).collect();
        g.push(Self::sign_flip(t));
        g
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    pub fn apply(&self, i: i32) -> i32 {
        let w = self.images[(i.unsigned_abs() - 1) as usize];
        if i > 0 {
            w
        } else {
            -w
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, WeylError> {
        if self.rank() != other.rank() {
            return Err(WeylError::RankMismatch(self.rank(), other.rank()));
        }
        Ok(SignedPerm { images: other.images.iter().map(|&x| self.apply(x)).collect() })
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.rank()];
        for (i, &w) in self.images.iter().enumerate() {
            let j = (w.unsigned_abs() - 1) as usize;
            inv[j] = if w > 0 { i as i32 + 1 } else { -(i as i32 + 1) };
        }
        SignedPerm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &w)| w == i as i32 + 1)
    }

    pub fn has_no_signs(&self) -> bool {
        self.images.iter().all(|&w| w > 0)
    }

    pub fn sign_changes(&self) -> usize {
        self.images.iter().filter(|&&w| w < 0).count()
    }

    /// Linear action on coordinates: w(eᵢ) = sign(w(i))·e_{|w(i)|}.
    pub fn act<S: Scalar>(&self, v: &Weight<S>) -> Weight<S> {
        let mut out = vec![S::zero(); v.dim()];
        for (i, &w) in self.images.iter().enumerate() {
            let j = (w.unsigned_abs() - 1) as usize;
            out[j] = if w > 0 { v.coords[i] } else { -v.coords[i] };
        }
        Weight::new(out)
    }
}

/// Order on signed letters in which e_x − e_y is positive iff `key(x) > key(y)`:
/// 1 ≻ 2 ≻ … ≻ t ≻ −t ≻ … ≻ −1.
fn key(x: i32, t: i32) -> i32 {
    if x > 0 {
        2 * t - x
    } else {
        -x - 1
    }
}

/// Coxeter length in W_t for the type-C generators. Closed form: inversions among
/// eᵢ − eⱼ, plus those among eᵢ + eⱼ, plus negated entries.
pub fn length(w: &SignedPerm) -> usize {
    let t = w.rank() as i32;
    let im = &w.images;
    let mut l = 0;
    for i in 0..im.len() {
        for j in i + 1..im.len() {
            if key(im[i], t) < key(im[j], t) {
                l += 1;
            }
            if key(im[i], t) < key(-im[j], t) {
                l += 1;
            }
        }
        if im[i] < 0 {
            l += 1;
        }
    }
    l
}

/// Product in the order operators are chained: `w1 w2` applies `w1` first,
/// i.e. the map `w2 ∘ w1`.
pub fn product(w1: &SignedPerm, w2: &SignedPerm) -> Result<SignedPerm, WeylError> {
    w2.compose(w1)
}

/// ℓ(w1 w2) = ℓ(w1) + ℓ(w2), with the product of [`product`].
pub fn length_additive(w1: &SignedPerm, w2: &SignedPerm) -> Result<bool, WeylError> {
    let c = product(w1, w2)?;
    Ok(length(&c) == length(w1) + length(w2))
}

// ---------------------------------------------------------------------------
// Root data
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pairing {
    /// Standard dot product on the ambient coordinates.
    Euclidean,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootDatum<S: Scalar = Q> {
    pub family: Family,
    pub rank: usize,
    pub simple_roots: Vec<Weight<S>>,
    pub pairing: Pairing,
}

impl<S: Scalar> RootDatum<S> {
    pub fn new(family: Family, rank: usize) -> Result<Self, WeylError> {
        let min = match family {
            Family::D => 2,
            _ => 1,
        };
        if rank < min {
            return Err(WeylError::BadRank { family, rank });
        }
        let dim = ambient_dim(family, rank);
        let mut simple = Vec::with_capacity(rank);
        let last = if family == Family::A { rank } else { rank - 1 };
        for i in 1..=last {
            simple.push(Weight::basis(dim, i, 1).sub(&Weight::basis(dim, i + 1, 1)));
        }
        match family {
            Family::A => {}
            Family::B => simple.push(Weight::basis(dim, rank, 1)),
            Family::C => simple.push(Weight::basis(dim, rank, 2)),
            Family::D => {
                simple.push(Weight::basis(dim, rank - 1, 1).add(&Weight::basis(dim, rank, 1)))
            }
        }
        let d = RootDatum { family, rank, simple_roots: simple, pairing: Pairing::Euclidean };
        assert_eq!(d.cartan_matrix(), expected_cartan(family, rank), "Cartan matrix of {family:?}{rank}");
        assert_eq!(d.positive_roots().len(), classical_positive_count(family, rank));
        Ok(d)
    }

    pub fn dim(&self) -> usize {
        ambient_dim(self.family, self.rank)
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = &self.simple_roots;
        s.iter()
            .map(|ai| {
                s.iter()
                    .map(|aj| ai.pair_coroot(aj).to_halves().expect("integral Cartan entry") / 2)
                    .collect()
            })
            .collect()
    }

    /// Positive roots, in a fixed enumeration order.
    pub fn positive_roots(&self) -> Vec<Weight<S>> {
        let n = self.dim();
        let e = |i: usize, c: i64| Weight::<S>::basis(n, i, c);
        let mut out = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                out.push(e(i, 1).sub(&e(j, 1)));
                if self.family != Family::A {
                    out.push(e(i, 1).add(&e(j, 1)));
                }
            }
            match self.family {
                Family::B => out.push(e(i, 1)),
                Family::C => out.push(e(i, 2)),
                _ => {}
            }
        }
        out
    }

    pub fn rho(&self) -> Weight<S> {
        let sum = self
            .positive_roots()
            .iter()
            .fold(Weight::zero(self.dim()), |acc, a| acc.add(a));
        sum.scale(S::from_halves(1))
    }

    pub fn is_dominant(&self, lambda: &Weight<S>) -> Result<(), WeylError> {
        if lambda.dim() != self.dim() {
            return Err(WeylError::WeightLength { got: lambda.dim(), want: self.dim() });
        }
        for (k, a) in self.simple_roots.iter().enumerate() {
            let p = lambda.pair_coroot(a);
            if p < S::zero() {
                return Err(WeylError::NotDominant { index: k + 1, pairing: format!("{p:?}") });
            }
        }
        Ok(())
    }

    /// Simple reflections in the generating order (shared with `SignedPerm::type_c_generators`
    /// for B and C).
    pub fn simple_reflections(&self) -> Vec<SignedPerm> {
        let n = self.dim();
        let mut g: Vec<SignedPerm> = (1..n).map(|k| SignedPerm::transposition(n, k)).collect();
        match self.family {
            Family::A => {}
            Family::B | Family::C => g.push(SignedPerm::sign_flip(n)),
            Family::D => {
                let mut w = SignedPerm::identity(n);
                w.images[n - 2] = -(n as i32);
                w.images[n - 1] = -(n as i32 - 1);
                g.push(w);
            }
        }
        g
    }

    pub fn contains(&self, w: &SignedPerm) -> bool {
        w.rank() == self.dim()
            && match self.family {
                Family::A => w.has_no_signs(),
                Family::B | Family::C => true,
                Family::D => w.sign_changes() % 2 == 0,
            }
    }

    /// Every element of W, ordered by image vectors.
    pub fn weyl_group(&self) -> Vec<SignedPerm> {
        let n = self.dim();
        let mut out = Vec::new();
        let mut perm: Vec<i32> = (1..=n as i32).collect();
        permutations(&mut perm, 0, &mut |p| {
            let sign_masks: u32 = if self.family == Family::A { 1 } else { 1 << n };
            for mask in 0..sign_masks {
                let images: Vec<i32> = p
                    .iter()
                    .enumerate()
                    .map(|(k, &x)| if mask >> k & 1 == 1 { -x } else { x })
                    .collect();
                let w = SignedPerm { images };
                if self.contains(&w) {
                    out.push(w);
                }
            }
        });
        out.sort();
        out
    }

    /// |W| by the classical formula.
    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1 << n) * fact(n),
            Family::D => (1 << (n - 1)) * fact(n),
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &SignedPerm) -> usize {
        self.positive_roots()
            .iter()
            .filter(|a| w.act(*a).first_sign() == Ordering::Less)
            .count()
    }
}

fn permutations(v: &mut Vec<i32>, k: usize, f: &mut dyn FnMut(&[i32])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn ambient_dim(family: Family, rank: usize) -> usize {
    if family == Family::A {
        rank + 1
    } else {
        rank
    }
}

pub fn classical_positive_count(family: Family, n: usize) -> usize {
    match family {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
    }
}

/// Cartan matrix read off the Dynkin diagram; independent of any root realization.
pub fn expected_cartan(family: Family, n: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
    }
    let link = |m: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        m[i][j] = -1;
        m[j][i] = -1;
    };
    let chain = if family == Family::D { n.saturating_sub(2) } else { n.saturating_sub(1) };
    for i in 0..chain {
        if i + 1 < n {
            link(&mut m, i, i + 1);
        }
    }
    match family {
        Family::A => {}
        Family::B if n >= 2 => {
            // αₙ short: ⟨αₙ₋₁, αₙ^∨⟩ = −2.
            m[n - 2][n - 1] = -2;
            m[n - 1][n - 2] = -1;
        }
        Family::C if n >= 2 => {
            m[n - 2][n - 1] = -1;
            m[n - 1][n - 2] = -2;
        }
        Family::D if n >= 3 => {
            m[n - 2][n - 1] = 0;
            m[n - 1][n - 2] = 0;
            link(&mut m, n - 3, n - 1);
        }
        _ => {}
    }
    m
}

// ---------------------------------------------------------------------------
// Parabolics
// ---------------------------------------------------------------------------

/// Levi GL_{r₁} × … × GL_{r_t} × G_m, blocks occupying consecutive leading coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicShape {
    pub gl_block_sizes: Vec<usize>,
    pub core_rank: usize,
}

impl ParabolicShape {
    pub fn new(gl_block_sizes: Vec<usize>, core_rank: usize) -> Self {
        ParabolicShape { gl_block_sizes, core_rank }
    }

    pub fn borel<S: Scalar>(datum: &RootDatum<S>) -> Self {
        ParabolicShape { gl_block_sizes: vec![1; datum.dim()], core_rank: 0 }
    }

    pub fn whole<S: Scalar>(datum: &RootDatum<S>) -> Self {
        match datum.family {
            Family::A => ParabolicShape { gl_block_sizes: vec![datum.dim()], core_rank: 0 },
            _ => ParabolicShape { gl_block_sizes: vec![], core_rank: datum.rank },
        }
    }

    pub fn check<S: Scalar>(&self, datum: &RootDatum<S>) -> Result<(), WeylError> {
        let total: usize = self.gl_block_sizes.iter().sum::<usize>() + self.core_rank;
        let ok = self.gl_block_sizes.iter().all(|&r| r > 0)
            && total == datum.dim()
            && (datum.family != Family::A || self.core_rank == 0);
        if ok {
            Ok(())
        } else {
            Err(WeylError::IncompatibleShape(format!("{self:?}")))
        }
    }

    /// Block index of each coordinate (`None` for core coordinates).
    fn block_of(&self, dim: usize) -> Vec<Option<usize>> {
        let mut out = Vec::with_capacity(dim);
        for (b, &r) in self.gl_block_sizes.iter().enumerate() {
            out.extend(std::iter::repeat(Some(b)).take(r));
        }
        out.resize(dim, None);
        out
    }

    /// Whether a root of the ambient datum is a root of the Levi.
    pub fn levi_contains<S: Scalar>(&self, alpha: &Weight<S>) -> bool {
        let blocks = self.block_of(alpha.dim());
        let sup = alpha.support();
        let cls: BTreeSet<Option<usize>> = sup.iter().map(|&i| blocks[i - 1]).collect();
        if cls.len() != 1 {
            return false;
        }
        match cls.into_iter().next().unwrap() {
            None => true,
            // Inside a GL block only eᵢ − eⱼ.
            Some(_) => {
                sup.len() == 2 && (alpha.coords()[sup[0] - 1] + alpha.coords()[sup[1] - 1]).is_zero()
            }
        }
    }

    pub fn levi_simple_roots<S: Scalar>(&self, datum: &RootDatum<S>) -> Vec<Weight<S>> {
        datum.simple_roots.iter().filter(|a| self.levi_contains(*a)).cloned().collect()
    }

    /// Positive roots of the ambient datum lying in the unipotent radical.
    pub fn nilradical_roots<S: Scalar>(&self, datum: &RootDatum<S>) -> Vec<Weight<S>> {
        datum.positive_roots().into_iter().filter(|a| !self.levi_contains(a)).collect()
    }

    pub fn levi_weyl_order<S: Scalar>(&self, datum: &RootDatum<S>) -> u64 {
        let fact = |k: u64| (1..=k).product::<u64>();
        let gl: u64 = self.gl_block_sizes.iter().map(|&r| fact(r as u64)).product();
        let m = self.core_rank as u64;
        let core = match (datum.family, m) {
            (_, 0) => 1,
            (Family::A, _) => 1,
            (Family::B | Family::C, _) => (1 << m) * fact(m),
            (Family::D, 1) => 1,
            (Family::D, _) => (1 << (m - 1)) * fact(m),
        };
        gl * core
    }
}

/// Minimal-length representatives w of W_M\W (so that w(λ+ρ) is M-dominant),
/// sorted by length then image vector.
pub fn kostant_reps<S: Scalar>(
    datum: &RootDatum<S>,
    shape: &ParabolicShape,
) -> Result<Vec<(SignedPerm, usize)>, WeylError> {
    shape.check(datum)?;
    let levi_simple = shape.levi_simple_roots(datum);
    let mut reps: Vec<(SignedPerm, usize)> = datum
        .weyl_group()
        .into_iter()
        .filter(|w| {
            let inv = w.inverse();
            levi_simple.iter().all(|a| inv.act(a).first_sign() == Ordering::Greater)
        })
        .map(|w| {
            let l = datum.length(&w);
            (w, l)
        })
        .collect();
    reps.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(&b.0)));
    Ok(reps)
}

/// Kostant's description of H^•(Lie N, V_λ): degree ℓ(w) carrying the Levi weight w(λ+ρ)−ρ.
pub fn kostant_weights<S: Scalar>(
    lambda: &Weight<S>,
    datum: &RootDatum<S>,
    shape: &ParabolicShape,
) -> Result<Vec<(usize, Weight<S>)>, WeylError> {
    datum.is_dominant(lambda)?;
    let rho = datum.rho();
    let shifted = lambda.add(&rho);
    Ok(kostant_reps(datum, shape)?
        .into_iter()
        .map(|(w, l)| (l, w.act(&shifted).sub(&rho)))
        .collect())
}

/// Dominance with respect to an arbitrary set of simple roots.
pub fn is_dominant_for<S: Scalar>(lambda: &Weight<S>, simple: &[Weight<S>]) -> bool {
    simple.iter().all(|a| lambda.pair_coroot(a) >= S::zero())
}

/// Number of group elements of each length.
pub fn length_histogram<S: Scalar>(datum: &RootDatum<S>) -> HashMap<usize, usize> {
    let mut h = HashMap::new();
    for w in datum.weyl_group() {
        *h.entry(datum.length(&w)).or_insert(0) += 1;
    }
    h
}

/// i ↦ u+i for i ≤ t, t+i ↦ i for i ≤ u.
pub fn block_shuffle(t: usize, u: usize) -> SignedPerm {
    let mut im = vec![0i32; t + u];
    for i in 1..=t {
        im[i - 1] = (u + i) as i32;
    }
    for i in 1..=u {
        im[t + i - 1] = i as i32;
    }
    SignedPerm { images: im }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::VecDeque;

    /// Breadth-first search over words in the generators.
    fn bfs_lengths(gens: &[SignedPerm]) -> HashMap<SignedPerm, usize> {
        let t = gens[0].rank();
        let mut dist = HashMap::new();
        let id = SignedPerm::identity(t);
        dist.insert(id.clone(), 0);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for s in gens {
                let ws = w.compose(s).unwrap();
                if !dist.contains_key(&ws) {
                    dist.insert(ws.clone(), d + 1);
                    queue.push_back(ws);
                }
            }
        }
        dist
    }

    #[test]
    fn closed_form_length_matches_word_search() {
        for t in 1..=3 {
            let dist = bfs_lengths(&SignedPerm::type_c_generators(t));
            assert_eq!(dist.len(), (1 << t) * (1..=t).product::<usize>());
            for (w, d) in &dist {
                assert_eq!(length(w), *d, "{w:?}");
            }
        }
    }

    #[test]
    fn datum_length_matches_word_search_all_families() {
        for fam in [Family::A, Family::B, Family::C, Family::D] {
            for n in 1..=3 {
                let Ok(d) = RootDatum::<Q>::new(fam, n) else { continue };
                let dist = bfs_lengths(&d.simple_reflections());
                assert_eq!(dist.len() as u64, d.weyl_order(), "{fam:?}{n}");
                for (w, l) in &dist {
                    assert_eq!(d.length(w), *l);
                }
            }
        }
    }

    #[test]
    fn spec_lengths() {
        assert_eq!(length(&SignedPerm::identity(3)), 0);
        for t in 1..=4usize {
            let flip = SignedPerm::new((1..=t as i32).map(|i| -(t as i32 + 1 - i)).collect()).unwrap();
            assert_eq!(length(&flip), t * (t - 1) / 2 + t);
        }
    }

    #[test]
    fn additivity_examples() {
        let s = SignedPerm::transposition(3, 1);
        assert!(!length_additive(&s, &s).unwrap());
        assert!(length_additive(&SignedPerm::identity(3), &s).unwrap());
        assert!(length_additive(&SignedPerm::identity(2), &SignedPerm::sign_flip(3)).is_err());
    }

    #[test]
    fn kostant_examples() {
        let a1 = RootDatum::<Q>::new(Family::A, 1).unwrap();
        let reps = kostant_reps(&a1, &ParabolicShape::borel(&a1)).unwrap();
        assert_eq!(reps.iter().map(|r| r.1).collect::<Vec<_>>(), vec![0, 1]);
        let ws = kostant_weights(&Weight::zero(2), &a1, &ParabolicShape::borel(&a1)).unwrap();
        assert_eq!(ws, vec![(0, Weight::zero(2)), (1, Weight::from_ints(&[-1, 1]))]);

        let c2 = RootDatum::<Q>::new(Family::C, 2).unwrap();
        let siegel = ParabolicShape::new(vec![2], 0);
        let reps = kostant_reps(&c2, &siegel).unwrap();
        assert_eq!(reps.iter().map(|r| r.1).collect::<Vec<_>>(), vec![0, 1, 2, 3]);

        let c3 = RootDatum::<Q>::new(Family::C, 3).unwrap();
        assert_eq!(kostant_reps(&c3, &ParabolicShape::new(vec![1], 2)).unwrap().len(), 6);

        let lam = Weight::from_ints(&[3, 1, 0]);
        assert_eq!(
            kostant_weights(&lam, &c3, &ParabolicShape::whole(&c3)).unwrap(),
            vec![(0, lam.clone())]
        );
        assert!(kostant_weights(&Weight::from_ints(&[0, 1, 0]), &c3, &siegel).is_err());
        assert!(kostant_reps(&c3, &siegel).is_err());
    }

    #[test]
    fn scalar_generic_weights_agree() {
        let cq = RootDatum::<Q>::new(Family::C, 2).unwrap();
        let cf = RootDatum::<f64>::new(Family::C, 2).unwrap();
        let sh = ParabolicShape::new(vec![2], 0);
        let wq = kostant_weights(&Weight::from_ints(&[2, 1]), &cq, &sh).unwrap();
        let wf = kostant_weights(&Weight::from_ints(&[2, 1]), &cf, &sh).unwrap();
        for ((dq, q), (df, f)) in wq.iter().zip(&wf) {
            assert_eq!(dq, df);
            let hq: Vec<_> = q.coords().iter().map(|c| c.to_halves()).collect();
            let hf: Vec<_> = f.coords().iter().map(|c| c.to_halves()).collect();
            assert_eq!(hq, hf);
        }
    }
}

//! Local normalization factors for maximal parabolics of classical groups:
//! quasi-tempered decompositions, the elementary L-ratio expansion, holomorphy
//! on Re(s) ≥ 1/2 and the intertwining word factorization.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::eisenstein::{Affine, LFactorRef, LKind};
use crate::scalar::{self, half, Q};
use crate::weyl_root::{self, SignedPerm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NormalizerError {
    #[error("not quasi-tempered: {0}")]
    NotQuasiTempered(String),
    #[error("malformed decomposition: {0}")]
    Malformed(String),
    #[error("unbounded argument in {0}")]
    Unbounded(String),
    #[error("hypothesis flag unset: {0}")]
    Hypothesis(&'static str),
}

/// Discrete series of GL_{m·h} with cuspidal support ρ|.|^{t}, …, ρ|.|^{−t}, t = (h−1)/2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiscreteLabel {
    pub label: String,
    pub m: usize,
    pub h: usize,
}

impl DiscreteLabel {
    pub fn new(label: &str, m: usize, h: usize) -> Self {
        DiscreteLabel { label: label.to_string(), m, h }
    }

    pub fn t(&self) -> Q {
        Q::new(self.h as i64 - 1, 2)
    }

    pub fn degree(&self) -> usize {
        self.m * self.h
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub ds: DiscreteLabel,
    #[serde(with = "scalar::qstr")]
    pub a: Q,
}

/// π ≅ π_1|.|^{a_1} × … × π_t|.|^{a_t}, 1/2 > a_1 ≥ … ≥ a_t > −1/2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiTemperedGL {
    segments: Vec<Segment>,
}

impl QuasiTemperedGL {
    pub fn new(mut segments: Vec<Segment>) -> Result<Self, NormalizerError> {
        if segments.is_empty() {
            return Err(NormalizerError::Malformed("pi has no segments".into()));
        }
        for s in &segments {
            check_ds(&s.ds)?;
            if s.a.abs() >= half() {
                return Err(NormalizerError::NotQuasiTempered(format!(
                    "|a| = {} for {} is not below 1/2",
                    scalar::fmt_q(&s.a.abs()),
                    s.ds.label
                )));
            }
        }
        segments.sort_by(|x, y| y.a.cmp(&x.a).then_with(|| x.ds.cmp(&y.ds)));
        Ok(QuasiTemperedGL { segments })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn t(&self) -> usize {
        self.segments.len()
    }

    pub fn degree(&self) -> usize {
        self.segments.iter().map(|s| s.ds.degree()).sum()
    }
}

impl<'de> Deserialize<'de> for QuasiTemperedGL {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            segments: Vec<Segment>,
        }
        let r = Raw::deserialize(d)?;
        QuasiTemperedGL::new(r.segments).map_err(serde::de::Error::custom)
    }
}

fn check_ds(ds: &DiscreteLabel) -> Result<(), NormalizerError> {
    if ds.m == 0 || ds.h == 0 || ds.label.is_empty() {
        return Err(NormalizerError::Malformed(format!("discrete series {:?} needs m, h >= 1 and a label", ds.label)));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairedPart {
    pub ds: DiscreteLabel,
    #[serde(with = "scalar::qstr")]
    pub b: Q,
}

/// ρ = ρ′_1 × … × ρ′_v × Π_j (ρ_j|.|^{b_j} × dual(ρ_j)|.|^{−b_j}), 0 < b_j < 1/2, v > 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuasiTemperedSelfdual {
    selfdual_parts: Vec<DiscreteLabel>,
    paired_parts: Vec<PairedPart>,
}

impl QuasiTemperedSelfdual {
    pub fn new(selfdual_parts: Vec<DiscreteLabel>, paired_parts: Vec<PairedPart>) -> Result<Self, NormalizerError> {
        if selfdual_parts.is_empty() {
            return Err(NormalizerError::Malformed("rho needs at least one self-dual part".into()));
        }
        for d in &selfdual_parts {
            check_ds(d)?;
        }
        for p in &paired_parts {
            check_ds(&p.ds)?;
            if p.b <= Q::zero() || p.b >= half() {
                return Err(NormalizerError::NotQuasiTempered(format!(
                    "b = {} for {} must satisfy 0 < b < 1/2",
                    scalar::fmt_q(&p.b),
                    p.ds.label
                )));
            }
        }
        Ok(QuasiTemperedSelfdual { selfdual_parts, paired_parts })
    }

    pub fn selfdual_parts(&self) -> &[DiscreteLabel] {
        &self.selfdual_parts
    }

    pub fn paired_parts(&self) -> &[PairedPart] {
        &self.paired_parts
    }

    pub fn u(&self) -> usize {
        self.paired_parts.len()
    }

    /// Label of ρ′ = ρ′_1 × … × ρ′_v.
    pub fn core_label(&self) -> String {
        self.selfdual_parts.iter().map(|d| d.label.as_str()).collect::<Vec<_>>().join("+")
    }

    pub fn degree(&self) -> usize {
        self.selfdual_parts.iter().map(|d| d.degree()).sum::<usize>()
            + 2 * self.paired_parts.iter().map(|p| p.ds.degree()).sum::<usize>()
    }
}

impl<'de> Deserialize<'de> for QuasiTemperedSelfdual {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            selfdual_parts: Vec<DiscreteLabel>,
            #[serde(default)]
            paired_parts: Vec<PairedPart>,
        }
        let r = Raw::deserialize(d)?;
        QuasiTemperedSelfdual::new(r.selfdual_parts, r.paired_parts).map_err(serde::de::Error::custom)
    }
}

/// Second factor of the normalization: ∧² for Sp and even SO, Sym² for odd SO,
/// Asai^{±} for unitary groups (where duals become conjugate duals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SecondKind {
    Wedge2,
    Sym2,
    Asai(i8),
}

impl SecondKind {
    fn lkind(self) -> LKind {
        match self {
            SecondKind::Wedge2 => LKind::Wedge2,
            SecondKind::Sym2 => LKind::Sym2,
            SecondKind::Asai(e) => LKind::Asai(e),
        }
    }

    fn unitary(self) -> bool {
        matches!(self, SecondKind::Asai(_))
    }
}

fn dual_label(l: &str) -> String {
    format!("{l}^v")
}

fn conj_label(l: &str) -> String {
    format!("c({l})")
}

/// c + Σ k_i a_i + Σ l_j b_j with a_i ∈ (−1/2, 1/2), b_j ∈ (0, 1/2).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct SymOffset {
    #[serde(with = "scalar::qstr")]
    pub constant: Q,
    pub a: BTreeMap<usize, i64>,
    pub b: BTreeMap<usize, i64>,
}

impl SymOffset {
    fn new(constant: Q, a: &[(usize, i64)], b: &[(usize, i64)]) -> Self {
        let mut s = SymOffset { constant, ..Default::default() };
        for &(i, k) in a {
            *s.a.entry(i).or_insert(0) += k;
        }
        for &(j, k) in b {
            *s.b.entry(j).or_insert(0) += k;
        }
        s.a.retain(|_, k| *k != 0);
        s.b.retain(|_, k| *k != 0);
        s
    }

    pub fn eval(&self, a: &[Q], b: &[Q]) -> Q {
        let mut v = self.constant;
        for (&i, &k) in &self.a {
            v += Q::from_integer(k) * a[i];
        }
        for (&j, &k) in &self.b {
            v += Q::from_integer(k) * b[j];
        }
        v
    }

    /// (infimum, supremum, whether both are excluded) over the open box.
    pub fn range(&self) -> (Q, Q, bool) {
        let (mut lo, mut hi) = (self.constant, self.constant);
        for &k in self.a.values() {
            let w = Q::from_integer(k.abs()) * half();
            lo -= w;
            hi += w;
        }
        for &k in self.b.values() {
            let w = Q::from_integer(k) * half();
            if k > 0 {
                hi += w;
            } else {
                lo += w;
            }
        }
        (lo, hi, !(self.a.is_empty() && self.b.is_empty()))
    }
}

impl fmt::Display for SymOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if !self.constant.is_zero() {
            out.push_str(&scalar::fmt_q(&self.constant));
        }
        let mut term = |name: &str, k: i64| {
            let sign = if k < 0 { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = if k.abs() == 1 { String::new() } else { k.abs().to_string() };
            out.push_str(&format!("{sign}{mag}{name}"));
        };
        for (&i, &k) in &self.a {
            term(&format!("a{}", i + 1), k);
        }
        for (&j, &k) in &self.b {
            term(&format!("b{}", j + 1), k);
        }
        if out.is_empty() {
            out.push('0');
        }
        write!(f, "{out}")
    }
}

/// L(αs + offset, args, kind).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElemFactor {
    pub kind: LKind,
    pub args: Vec<String>,
    pub alpha: i64,
    pub offset: SymOffset,
}

impl ElemFactor {
    fn new(kind: LKind, args: Vec<String>, alpha: i64, offset: SymOffset) -> Self {
        ElemFactor { kind, args, alpha, offset }
    }

    fn shifted(&self) -> Self {
        let mut o = self.offset.clone();
        o.constant += Q::one();
        ElemFactor { offset: o, ..self.clone() }
    }

    /// Numeric form once the exponents are known.
    pub fn evaluate(&self, a: &[Q], b: &[Q]) -> LFactorRef {
        LFactorRef { kind: self.kind, args: self.args.clone(), arg: Affine::new(self.alpha, self.offset.eval(a, b)) }
    }
}

impl fmt::Display for ElemFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.alpha == 1 { "s".to_string() } else { format!("{}s", self.alpha) };
        let o = self.offset.to_string();
        let arg = if o == "0" {
            s
        } else if o.starts_with('-') {
            format!("{s}{o}")
        } else {
            format!("{s}+{o}")
        };
        write!(f, "L({arg}, {}, {})", self.args.join(" x "), self.kind)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RatioFamily {
    /// L(s+a_i, π_i × ρ′)
    I,
    /// L(s+a_i∓b_j, ·) pairs
    II,
    /// L(2s+a_i+a_j, π_i × π_j), i < j
    III,
    /// L(2s+2a_i, π_i, R)
    IV,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LRatio {
    pub family: RatioFamily,
    pub numerator: ElemFactor,
    pub denominator: ElemFactor,
}

impl LRatio {
    fn of(family: RatioFamily, numerator: ElemFactor) -> Self {
        let denominator = numerator.shifted();
        LRatio { family, numerator, denominator }
    }
}

/// Elementary ratios of r(w, π ⋊ σ, s).
pub fn factor_normalization(
    pi: &QuasiTemperedGL,
    rho: &QuasiTemperedSelfdual,
    kind: SecondKind,
) -> Vec<LRatio> {
    let seg = pi.segments();
    let core = rho.core_label();
    let unitary = kind.unitary();
    let core_arg = if unitary { dual_label(&core) } else { core };
    let mut out = Vec::new();
    for (i, s) in seg.iter().enumerate() {
        let off = SymOffset::new(Q::zero(), &[(i, 1)], &[]);
        out.push(LRatio::of(
            RatioFamily::I,
            ElemFactor::new(LKind::Rankin, vec![s.ds.label.clone(), core_arg.clone()], 1, off),
        ));
    }
    for (i, s) in seg.iter().enumerate() {
        for (j, p) in rho.paired_parts().iter().enumerate() {
            let minus = SymOffset::new(Q::zero(), &[(i, 1)], &[(j, -1)]);
            let plus = SymOffset::new(Q::zero(), &[(i, 1)], &[(j, 1)]);
            let partner = if unitary { conj_label(&p.ds.label) } else { p.ds.label.clone() };
            out.push(LRatio::of(
                RatioFamily::II,
                ElemFactor::new(LKind::Rankin, vec![s.ds.label.clone(), dual_label(&p.ds.label)], 1, minus),
            ));
            out.push(LRatio::of(RatioFamily::II, ElemFactor::new(LKind::Rankin, vec![s.ds.label.clone(), partner], 1, plus)));
        }
    }
    for i in 0..seg.len() {
        for j in i + 1..seg.len() {
            let off = SymOffset::new(Q::zero(), &[(i, 1), (j, 1)], &[]);
            let other = if unitary { conj_label(&seg[j].ds.label) } else { seg[j].ds.label.clone() };
            out.push(LRatio::of(
                RatioFamily::III,
                ElemFactor::new(LKind::Rankin, vec![seg[i].ds.label.clone(), other], 2, off),
            ));
        }
    }
    for (i, s) in seg.iter().enumerate() {
        let off = SymOffset::new(Q::zero(), &[(i, 2)], &[]);
        out.push(LRatio::of(RatioFamily::IV, ElemFactor::new(kind.lkind(), vec![s.ds.label.clone()], 2, off)));
    }
    out
}

type Multiset = BTreeMap<ElemFactor, usize>;

fn bump(m: &mut Multiset, f: ElemFactor) {
    *m.entry(f).or_insert(0) += 1;
}

/// R(⊕ V_i) = ⊕ R(V_i) ⊕ ⊕_{i<j} V_i ⊗ V_j, read off over unordered pairs.
fn second_factor_expansion(pi: &QuasiTemperedGL, kind: SecondKind) -> (Multiset, Multiset) {
    let seg = pi.segments();
    let (mut num, mut den) = (Multiset::new(), Multiset::new());
    for (i, x) in seg.iter().enumerate() {
        for (j, y) in seg.iter().enumerate() {
            if j < i {
                continue;
            }
            let off = SymOffset::new(Q::zero(), &[(i, 1), (j, 1)], &[]);
            let f = if i == j {
                ElemFactor::new(kind.lkind(), vec![x.ds.label.clone()], 2, off)
            } else {
                let second = if kind.unitary() { conj_label(&y.ds.label) } else { y.ds.label.clone() };
                ElemFactor::new(LKind::Rankin, vec![x.ds.label.clone(), second], 2, off)
            };
            bump(&mut den, f.shifted());
            bump(&mut num, f);
        }
    }
    (num, den)
}

/// L(s, π × ρ) (or π × ρ̌ for unitary groups) distributed over the
/// constituents of π and ρ = ρ′ ⊕ ρ_nt ⊕ dual(ρ_nt).
fn rankin_expansion(pi: &QuasiTemperedGL, rho: &QuasiTemperedSelfdual, kind: SecondKind) -> (Multiset, Multiset) {
    let unitary = kind.unitary();
    // Constituents of the second argument with their |.|-exponent coefficient on b.
    let mut parts: Vec<(String, Option<(usize, i64)>)> = Vec::new();
    let core = rho.core_label();
    parts.push((if unitary { dual_label(&core) } else { core }, None));
    for (j, p) in rho.paired_parts().iter().enumerate() {
        let l = &p.ds.label;
        if unitary {
            // ρ̌ = dual(ρ_j)|.|^{−b_j} ⊕ c(ρ_j)|.|^{b_j} ⊕ …
            parts.push((dual_label(l), Some((j, -1))));
            parts.push((conj_label(l), Some((j, 1))));
        } else {
            parts.push((l.clone(), Some((j, 1))));
            parts.push((dual_label(l), Some((j, -1))));
        }
    }
    let (mut num, mut den) = (Multiset::new(), Multiset::new());
    for (i, x) in pi.segments().iter().enumerate() {
        for (l, b) in &parts {
            let bs: Vec<(usize, i64)> = b.iter().copied().collect();
            let f = ElemFactor::new(LKind::Rankin, vec![x.ds.label.clone(), l.clone()], 1, SymOffset::new(Q::zero(), &[(i, 1)], &bs));
            bump(&mut den, f.shifted());
            bump(&mut num, f);
        }
    }
    (num, den)
}

fn families_multiset(r: &[LRatio], fams: &[RatioFamily]) -> (Multiset, Multiset) {
    let (mut num, mut den) = (Multiset::new(), Multiset::new());
    for x in r.iter().filter(|x| fams.contains(&x.family)) {
        bump(&mut num, x.numerator.clone());
        bump(&mut den, x.denominator.clone());
    }
    (num, den)
}

/// Families (iii)+(iv) against the expansion of L(2s, π, R)/L(2s+1, π, R).
pub fn verify_wedge_expansion(pi: &QuasiTemperedGL, kind: SecondKind) -> bool {
    let rho = QuasiTemperedSelfdual::new(vec![DiscreteLabel::new("1", 1, 1)], vec![]).expect("valid");
    let r = factor_normalization(pi, &rho, kind);
    families_multiset(&r, &[RatioFamily::III, RatioFamily::IV]) == second_factor_expansion(pi, kind)
}

/// The whole factor list against both expansions.
pub fn verify_factorization(pi: &QuasiTemperedGL, rho: &QuasiTemperedSelfdual, kind: SecondKind) -> bool {
    let r = factor_normalization(pi, rho, kind);
    let (mut num, mut den) = rankin_expansion(pi, rho, kind);
    let (n2, d2) = second_factor_expansion(pi, kind);
    for (k, v) in n2 {
        *num.entry(k).or_insert(0) += v;
    }
    for (k, v) in d2 {
        *den.entry(k).or_insert(0) += v;
    }
    families_multiset(&r, &[RatioFamily::I, RatioFamily::II, RatioFamily::III, RatioFamily::IV]) == (num, den)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HoloStatus {
    HoloNonzero,
    Holo,
    PoleCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorClassification {
    pub factor: String,
    pub in_denominator: bool,
    pub status: HoloStatus,
    /// Infimum of the real part of the argument on Re(s) ≥ 1/2.
    #[serde(with = "scalar::qstr")]
    pub re_lower_bound: Q,
    pub bound_strict: bool,
    pub rule: &'static str,
}

pub const RULE_TEMPERED_POSITIVE: &str = "tempered data with Re(z) > 0: L(z, phi) holomorphic and nonzero";
pub const RULE_EXCEPTIONAL: &str = "Re(z) may fall to -1/2: only factor allowed a pole";

pub fn classify_factor(f: &ElemFactor, in_denominator: bool) -> Result<FactorClassification, NormalizerError> {
    if f.alpha < 1 {
        return Err(NormalizerError::Unbounded(f.to_string()));
    }
    let (lo, _, strict) = f.offset.range();
    let bound = Q::from_integer(f.alpha) * half() + lo;
    let positive = bound > Q::zero() || (bound.is_zero() && strict);
    let (status, rule) = if positive {
        (HoloStatus::HoloNonzero, RULE_TEMPERED_POSITIVE)
    } else {
        (HoloStatus::PoleCandidate, RULE_EXCEPTIONAL)
    };
    Ok(FactorClassification { factor: f.to_string(), in_denominator, status, re_lower_bound: bound, bound_strict: strict, rule })
}

pub fn classify_holomorphy(ratios: &[LRatio]) -> Result<Vec<FactorClassification>, NormalizerError> {
    let mut out = Vec::new();
    for r in ratios {
        out.push(classify_factor(&r.numerator, false)?);
        out.push(classify_factor(&r.denominator, true)?);
    }
    Ok(out)
}

/// Pole region of the normalized GL_{n1} × GL_{n2} operator in x = Re(s_1 − s_2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GlPoleConstraint {
    #[serde(with = "scalar::qstr")]
    pub t1: Q,
    #[serde(with = "scalar::qstr")]
    pub t2: Q,
    /// Poles satisfy x ≡ congruence mod ℤ.
    #[serde(with = "scalar::qstr")]
    pub congruence: Q,
    /// Poles satisfy x < strict_bound.
    #[serde(with = "scalar::qstr")]
    pub strict_bound: Q,
    /// Largest x meeting both conditions.
    #[serde(with = "scalar::qstr")]
    pub pole_sup: Q,
    #[serde(with = "scalar::qstr")]
    pub holomorphic_above: Q,
    #[serde(with = "scalar::qstr")]
    pub isomorphism_radius: Q,
}

fn frac(x: Q) -> Q {
    x - x.floor()
}

pub fn gl_pole_constraint(t1: Q, t2: Q) -> GlPoleConstraint {
    let congruence = frac(t1 + t2);
    let strict_bound = -(t1 - t2).abs();
    // Largest element of congruence + ℤ strictly below strict_bound.
    let mut k = (strict_bound - congruence).ceil() - Q::one();
    if congruence + k >= strict_bound {
        k -= Q::one();
    }
    GlPoleConstraint {
        t1,
        t2,
        congruence,
        strict_bound,
        pole_sup: congruence + k,
        holomorphic_above: -Q::one(),
        isomorphism_radius: Q::one(),
    }
}

/// Shifts j with L(s, π_1 × π_2) = Π_j L(s + j, ρ_1 × ρ_2).
pub fn jpss_shifts(t1: Q, t2: Q) -> Vec<Q> {
    let mut j = (t1 - t2).abs();
    let top = t1 + t2;
    let mut out = Vec::new();
    while j <= top {
        out.push(j);
        j += Q::one();
    }
    out
}

pub fn jpss_factorization(t1: Q, t2: Q, rho1: &str, rho2: &str) -> Vec<LFactorRef> {
    jpss_shifts(t1, t2)
        .into_iter()
        .map(|j| LFactorRef::new(LKind::Rankin, &[rho1, rho2], Affine::new(1, j)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntertwiningWord {
    pub w: SignedPerm,
    pub w1: SignedPerm,
    pub w2: SignedPerm,
    pub lengths: (usize, usize, usize),
    pub additive: bool,
}

/// w: i ↦ −(t+1−i), t+i ↦ t+i; w = w1 w2 with w1 the block shuffle.
pub fn intertwining_word(t: usize, u: usize) -> IntertwiningWord {
    let n = t + u;
    let mut w = vec![0i32; n];
    let mut w2 = vec![0i32; n];
    for i in 1..=t {
        w[i - 1] = -((t + 1 - i) as i32);
        w2[u + i - 1] = -((t + 1 - i) as i32);
    }
    for i in 1..=u {
        w[t + i - 1] = (t + i) as i32;
        w2[i - 1] = (t + i) as i32;
    }
    let w = SignedPerm::new(w).expect("signed permutation");
    let w2 = SignedPerm::new(w2).expect("signed permutation");
    let w1 = weyl_root::block_shuffle(t, u);
    let composite = weyl_root::product(&w1, &w2).expect("same rank");
    assert_eq!(composite, w, "w1 w2 must reproduce w");
    let lengths = (weyl_root::length(&w1), weyl_root::length(&w2), weyl_root::length(&w));
    let expected = (t * u, t * u + t * (t - 1) / 2 + t, t * (t - 1) / 2 + 2 * t * u + t);
    assert_eq!(lengths, expected, "lengths of the word factors");
    IntertwiningWord { additive: lengths.0 + lengths.1 == lengths.2, w, w1, w2, lengths }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub pi_quasi_tempered: bool,
    pub rho_selfdual_quasi_tempered: bool,
}

impl Hypotheses {
    pub fn both() -> Self {
        Hypotheses { pi_quasi_tempered: true, rho_selfdual_quasi_tempered: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificatePart {
    pub part: &'static str,
    pub claims: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HolomorphyVerdict {
    pub statement: &'static str,
    pub certificate: Vec<CertificatePart>,
    pub lengths: (usize, usize, usize),
}

pub const VERDICT_STATEMENT: &str = "holomorphic on Re(s) >= 1/2, nonzero on Re(s) = 1/2";

pub fn holomorphy_verdict(
    pi: &QuasiTemperedGL,
    rho: &QuasiTemperedSelfdual,
    kind: SecondKind,
    hyp: Hypotheses,
) -> Result<HolomorphyVerdict, NormalizerError> {
    if !hyp.pi_quasi_tempered {
        return Err(NormalizerError::Hypothesis("pi quasi-tempered"));
    }
    if !hyp.rho_selfdual_quasi_tempered {
        return Err(NormalizerError::Hypothesis("rho self-dual and quasi-tempered"));
    }
    let ratios = factor_normalization(pi, rho, kind);
    let classes = classify_holomorphy(&ratios)?;
    let a: Vec<Q> = pi.segments().iter().map(|s| s.a).collect();
    let b: Vec<Q> = rho.paired_parts().iter().map(|p| p.b).collect();
    let (t, u) = (pi.t(), rho.u());
    let mut certificate = Vec::new();

    let units: Vec<String> = classes
        .iter()
        .filter(|c| c.status == HoloStatus::HoloNonzero)
        .map(|c| format!("{} holomorphic nonzero, Re >= {}", c.factor, scalar::fmt_q(&c.re_lower_bound)))
        .collect();
    certificate.push(CertificatePart { part: "normalization ratio", claims: units });

    if u > 0 {
        let mut claims = Vec::new();
        let s = half();
        for (i, seg) in pi.segments().iter().enumerate() {
            for (j, p) in rho.paired_parts().iter().enumerate() {
                let x = a[i] + s - b[j];
                let c = gl_pole_constraint(seg.ds.t(), p.ds.t());
                if !(x > -half() && x < Q::one() && x > c.pole_sup) {
                    return Err(NormalizerError::Malformed(format!("GL block ({i},{j}) outside (-1/2, 1)")));
                }
                claims.push(format!(
                    "N(w, {} x {}): Re(a{}+s-b{}) = {} at Re(s) = 1/2, inside (-1/2, 1); poles only at Re <= {}: holomorphic and an isomorphism",
                    seg.ds.label,
                    p.ds.label,
                    i + 1,
                    j + 1,
                    scalar::fmt_q(&x),
                    scalar::fmt_q(&c.pole_sup)
                ));
            }
        }
        certificate.push(CertificatePart { part: "GL-block normalized operators", claims });
    }

    let word = intertwining_word(t, u);
    let mut claims = vec![format!(
        "M(w2) splits into {} simple operators, all holomorphic and nonzero at every specialization",
        word.lengths.1
    )];
    for (i, ai) in a.iter().enumerate() {
        claims.push(format!("Re(a{}+s) >= {} > 0", i + 1, scalar::fmt_q(&(*ai + half()))));
    }
    for i in 0..t {
        for j in i + 1..t {
            claims.push(format!("Re(a{}+a{}+2s) >= {} > 0", i + 1, j + 1, scalar::fmt_q(&(a[i] + a[j] + Q::one()))));
        }
    }
    for (j, bj) in b.iter().enumerate() {
        for (i, ai) in a.iter().enumerate() {
            claims.push(format!("Re(b{}+a{}+s) >= {} > 0", j + 1, i + 1, scalar::fmt_q(&(*bj + *ai + half()))));
        }
    }
    certificate.push(CertificatePart { part: "non-normalized operators", claims });

    Ok(HolomorphyVerdict { statement: VERDICT_STATEMENT, certificate, lengths: word.lengths })
}

//! Archimedean bookkeeping: infinitesimal characters per embedding, the
//! regularity predicates, epsilon factors of the Weil-group building blocks,
//! and root-number invariance.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{self, half, Q, QStr};
use crate::weyl_root::Weight;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArchError {
    #[error("τ − τ′ is not integral at a real place")]
    NonIntegralDifference,
    #[error("inconsistent purity pairing at embedding {0}")]
    InconsistentPairing(String),
    #[error("odd cardinality {0}")]
    OddCardinality(usize),
    #[error("multiset is neither symmetric nor a positive half")]
    NotSymmetric,
    #[error("a − b = {0} is not an integer")]
    NonIntegralCharacter(String),
    #[error("I_a needs a ∈ ½ℤ≥0, got {0}")]
    BadIndex(String),
    #[error("weight p + q = {0} is not in ½ + ℤ")]
    NotHalfIntegralWeight(String),
    #[error("c·r·t = {0} is odd")]
    OddCrt(usize),
    #[error("nonarchimedean determinant triviality not asserted")]
    DeterminantNotTrivial,
    #[error("embedding set: {0}")]
    Embeddings(String),
    #[error("infinitesimal character: {0}")]
    InfChar(String),
}

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

/// Complex embeddings of a number field with complex conjugation ι ↦ ῑ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingSet {
    pub embeddings: Vec<String>,
    /// Conjugate of each embedding; real embeddings map to themselves.
    pub conj: BTreeMap<String, String>,
}

impl EmbeddingSet {
    pub fn new(embeddings: Vec<String>, conj: BTreeMap<String, String>) -> Result<Self, ArchError> {
        let e = EmbeddingSet { embeddings, conj };
        e.check()?;
        Ok(e)
    }

    /// `real` real embeddings r1.. and `complex` pairs (c1, c1b), ….
    pub fn standard(real: usize, complex: usize) -> Self {
        let mut embeddings = Vec::new();
        let mut conj = BTreeMap::new();
        for i in 1..=real {
            let l = format!("r{i}");
            conj.insert(l.clone(), l.clone());
            embeddings.push(l);
        }
        for i in 1..=complex {
            let (a, b) = (format!("c{i}"), format!("c{i}b"));
            conj.insert(a.clone(), b.clone());
            conj.insert(b.clone(), a.clone());
            embeddings.push(a);
            embeddings.push(b);
        }
        EmbeddingSet { embeddings, conj }
    }

    pub fn check(&self) -> Result<(), ArchError> {
        let set: BTreeSet<&String> = self.embeddings.iter().collect();
        if set.len() != self.embeddings.len() {
            return Err(ArchError::Embeddings("duplicate label".into()));
        }
        for e in &self.embeddings {
            let c = self.conj.get(e).ok_or_else(|| ArchError::Embeddings(format!("{e} has no conjugate")))?;
            if !set.contains(c) || self.conj.get(c) != Some(e) {
                return Err(ArchError::Embeddings(format!("conjugation is not an involution at {e}")));
            }
        }
        if self.conj.len() != self.embeddings.len() {
            return Err(ArchError::Embeddings("conjugation lists unknown labels".into()));
        }
        Ok(())
    }

    pub fn conjugate(&self, e: &str) -> &str {
        &self.conj[e]
    }

    pub fn is_real(&self, e: &str) -> bool {
        self.conj.get(e).map(|c| c == e).unwrap_or(false)
    }

    pub fn d_real(&self) -> usize {
        self.embeddings.iter().filter(|e| self.is_real(e)).count()
    }

    pub fn d_complex(&self) -> usize {
        (self.embeddings.len() - self.d_real()) / 2
    }

    pub fn degree(&self) -> usize {
        self.embeddings.len()
    }

    /// One representative per complex pair (the first in list order), plus all real embeddings.
    pub fn places(&self) -> Vec<&String> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for e in &self.embeddings {
            if seen.insert(e.clone()) {
                seen.insert(self.conj[e].clone());
                out.push(e);
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Infinitesimal characters
// ---------------------------------------------------------------------------

/// p_ι for each embedding. At a complex place the lists for ι and ῑ are
/// index-coupled: entry i of both comes from the same character of ℂ^×.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InfChar {
    pub per_embedding: BTreeMap<String, Vec<Q>>,
}

impl InfChar {
    pub fn new(per_embedding: BTreeMap<String, Vec<Q>>) -> Result<Self, ArchError> {
        let c = InfChar { per_embedding };
        c.degree()?;
        Ok(c)
    }

    /// The same multiset at every embedding.
    pub fn uniform(emb: &EmbeddingSet, p: &[Q]) -> Self {
        InfChar { per_embedding: emb.embeddings.iter().map(|e| (e.clone(), p.to_vec())).collect() }
    }

    pub fn degree(&self) -> Result<usize, ArchError> {
        let mut lens = self.per_embedding.values().map(|v| v.len());
        let first = lens.next().unwrap_or(0);
        if lens.any(|l| l != first) {
            return Err(ArchError::InfChar("cardinality differs between embeddings".into()));
        }
        Ok(first)
    }

    pub fn get(&self, e: &str) -> &[Q] {
        self.per_embedding.get(e).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn covers(&self, emb: &EmbeddingSet) -> bool {
        emb.embeddings.iter().all(|e| self.per_embedding.contains_key(e))
    }

    /// (p_{a⁻¹ι})_ι.
    pub fn permuted(&self, a: &AutOnEmbeddings) -> InfChar {
        let mut out = BTreeMap::new();
        for (k, v) in &self.per_embedding {
            out.insert(a.apply(k).to_string(), v.clone());
        }
        InfChar { per_embedding: out }
    }
}

impl Serialize for InfChar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<&String, Vec<QStr>> =
            self.per_embedding.iter().map(|(k, v)| (k, v.iter().copied().map(QStr).collect())).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for InfChar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m = BTreeMap::<String, Vec<QStr>>::deserialize(d)?;
        InfChar::new(m.into_iter().map(|(k, v)| (k, v.into_iter().map(|x| x.0).collect())).collect())
            .map_err(serde::de::Error::custom)
    }
}

/// Permutation of embedding labels induced by some a ∈ Aut(ℂ).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AutOnEmbeddings {
    /// ι ↦ a∘ι; labels not listed are fixed.
    pub map: BTreeMap<String, String>,
}

impl AutOnEmbeddings {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn new(map: BTreeMap<String, String>) -> Result<Self, ArchError> {
        let keys: BTreeSet<&String> = map.keys().collect();
        let vals: BTreeSet<&String> = map.values().collect();
        if keys != vals {
            return Err(ArchError::Embeddings("embedding action is not a bijection".into()));
        }
        Ok(AutOnEmbeddings { map })
    }

    pub fn apply<'a>(&'a self, e: &'a str) -> &'a str {
        self.map.get(e).map(|s| s.as_str()).unwrap_or(e)
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().all(|(k, v)| k == v)
    }

    /// a∘ι̅ = (a∘ι)̅, which holds for every field automorphism of ℂ acting on
    /// embeddings of a CM or totally real field.
    pub fn commutes_with(&self, emb: &EmbeddingSet) -> bool {
        emb.embeddings.iter().all(|e| self.apply(emb.conjugate(e)) == emb.conjugate(self.apply(e)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlaceKind {
    Real,
    Complex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InfCharFragment {
    Real { p: Vec<QStr> },
    Complex { p: Vec<QStr>, p_bar: Vec<QStr> },
}

fn sorted_desc(v: &[Q]) -> Vec<Q> {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.cmp(a));
    s
}

/// Infinitesimal character from the torus data (τ, τ′) of the Langlands
/// parameter: the W-orbit of τ at a real place, the W×W-orbit of (τ, τ′) at a
/// complex place.
pub fn infchar_from_parameter(tau: &Weight<Q>, tau_p: &Weight<Q>, kind: PlaceKind) -> Result<InfCharFragment, ArchError> {
    let to = |v: Vec<Q>| v.into_iter().map(QStr).collect();
    match kind {
        PlaceKind::Real => {
            if tau.dim() != tau_p.dim() || tau.coords().iter().zip(tau_p.coords()).any(|(a, b)| !(*a - *b).is_integer()) {
                return Err(ArchError::NonIntegralDifference);
            }
            Ok(InfCharFragment::Real { p: to(sorted_desc(tau.coords())) })
        }
        PlaceKind::Complex => {
            Ok(InfCharFragment::Complex { p: to(sorted_desc(tau.coords())), p_bar: to(sorted_desc(tau_p.coords())) })
        }
    }
}

/// The weight w with p_{ι,i} + p_{ι,N+1−i} = −w (real) and p_{ι,i} + p_{ῑ,i} = −w
/// (complex), checked against Σ_ι Σ_i (p_{ι,i} + p_{ῑ,i}) = `−[F:ℚ]·N·w`.
pub fn purity_weight(p: &InfChar, emb: &EmbeddingSet) -> Result<Q, ArchError> {
    let n = p.degree()?;
    if !p.covers(emb) {
        return Err(ArchError::InfChar("missing embedding".into()));
    }
    if n == 0 {
        return Ok(Q::zero());
    }
    let mut w: Option<Q> = None;
    let mut agree = |cand: Q, e: &str| -> Result<(), ArchError> {
        match w {
            None => {
                w = Some(cand);
                Ok(())
            }
            Some(x) if x == cand => Ok(()),
            Some(_) => Err(ArchError::InconsistentPairing(e.to_string())),
        }
    };
    for e in &emb.embeddings {
        if emb.is_real(e) {
            let s = sorted_desc(p.get(e));
            for i in 0..n {
                agree(-(s[i] + s[n - 1 - i]), e)?;
            }
        } else {
            let (a, b) = (p.get(e), p.get(emb.conjugate(e)));
            for i in 0..n {
                agree(-(a[i] + b[i]), e)?;
            }
        }
    }
    let w = w.expect("nonempty");
    let total = scalar::sum_q(emb.embeddings.iter().flat_map(|e| {
        let c = emb.conjugate(e);
        p.get(e).iter().chain(p.get(c)).copied().collect::<Vec<_>>()
    }));
    let rhs = -Q::from_integer((emb.degree() * n) as i64) * w;
    if total != rhs {
        return Err(ArchError::InconsistentPairing("global sum".into()));
    }
    Ok(w)
}

/// The positive half p₁ ≥ … ≥ p_m of a symmetric multiset, or the input itself
/// when it already consists of positive entries.
fn positive_half(p: &[Q]) -> Result<Vec<Q>, ArchError> {
    let s = sorted_desc(p);
    let neg: Vec<Q> = s.iter().rev().map(|x| -*x).collect();
    if s == neg {
        if s.len() % 2 == 1 {
            return Err(ArchError::OddCardinality(s.len()));
        }
        return Ok(s[..s.len() / 2].to_vec());
    }
    if s.iter().all(|x| x.is_positive()) {
        return Ok(s);
    }
    if s.len() % 2 == 1 {
        return Err(ArchError::OddCardinality(s.len()));
    }
    Err(ArchError::NotSymmetric)
}

/// p_i ≥ p_{i+1} + 2 and p_m ≥ 3/2.
pub fn is_superregular(p: &[Q]) -> Result<bool, ArchError> {
    let h = positive_half(p)?;
    let two = Q::from_integer(2);
    let gaps = h.windows(2).all(|w| w[0] >= w[1] + two);
    let last = h.last().map(|x| *x >= scalar::q(3, 2)).unwrap_or(true);
    Ok(gaps && last)
}

/// Unitary variant: p_i > p_{i+1} + 1, on the list p₁ ≥ … ≥ p_n as given.
pub fn is_superregular_unitary(p: &[Q]) -> bool {
    sorted_desc(p).windows(2).all(|w| w[0] > w[1] + Q::one())
}

/// No p_i ± 1/2 equals a q_j.
pub fn is_disjoint(p: &[Q], q: &[Q]) -> bool {
    let qs: BTreeSet<Q> = q.iter().copied().collect();
    p.iter().all(|x| !qs.contains(&(*x + half())) && !qs.contains(&(*x - half())))
}

/// p₁ > … > p_n ≥ −p_n > … > −p₁.
pub fn is_so_regular(p: &[Q]) -> Result<bool, ArchError> {
    if p.len() % 2 == 1 {
        return Err(ArchError::OddCardinality(p.len()));
    }
    let s = sorted_desc(p);
    let n = s.len() / 2;
    let symmetric = (0..n).all(|i| s[s.len() - 1 - i] == -s[i]);
    let strict = s[..n].windows(2).all(|w| w[0] > w[1]);
    let middle = n == 0 || s[n - 1] >= -s[n - 1];
    Ok(symmetric && strict && middle)
}

/// {p_i ± 1/2} ∪ {q_j} is multiplicity free, except that 0 may occur twice.
pub fn induced_regular(p: &[Q], q: &[Q]) -> bool {
    let mut counts: BTreeMap<Q, usize> = BTreeMap::new();
    for x in p.iter().flat_map(|x| [*x + half(), *x - half()]).chain(q.iter().copied()) {
        *counts.entry(x).or_default() += 1;
    }
    counts.iter().all(|(x, &c)| c == 1 || (x.is_zero() && c == 2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algebraicity {
    Algebraic,
    HalfAlgebraic,
    None,
}

/// Algebraic when n + r is odd, half-algebraic when n + r is even.
pub fn algebraicity_required(n: usize, r: usize) -> Algebraicity {
    if (n + r) % 2 == 1 {
        Algebraicity::Algebraic
    } else {
        Algebraicity::HalfAlgebraic
    }
}

// ---------------------------------------------------------------------------
// Epsilon factors
// ---------------------------------------------------------------------------

/// i^k, k mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FourthRoot(u8);

impl FourthRoot {
    pub fn i_pow(k: i64) -> Self {
        FourthRoot(k.rem_euclid(4) as u8)
    }

    pub fn one() -> Self {
        FourthRoot(0)
    }

    pub fn exponent(self) -> u8 {
        self.0
    }

    pub fn mul(self, o: Self) -> Self {
        FourthRoot((self.0 + o.0) % 4)
    }

    pub fn pow(self, k: i64) -> Self {
        Self::i_pow(self.0 as i64 * k)
    }

    pub fn as_sign(self) -> Option<i8> {
        match self.0 {
            0 => Some(1),
            2 => Some(-1),
            _ => None,
        }
    }
}

impl std::fmt::Display for FourthRoot {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(["1", "i", "-1", "-i"][self.0 as usize])
    }
}

impl Serialize for FourthRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArchKind {
    /// I_a = Ind_{ℂ^×}^{W_ℝ} (z/|z|)^{2a}.
    RealInduced { a: Q },
    /// z ↦ ι(z)^a ῑ(z)^b.
    Complex { a: Q, b: Q },
    /// I_a restricted to ℂ^×.
    RealRestriction { a: Q },
}

pub fn eps_arch(kind: ArchKind) -> Result<FourthRoot, ArchError> {
    let two_a = |a: Q| -> Result<i64, ArchError> {
        if a.is_negative() || !scalar::is_half_integral(a) {
            return Err(ArchError::BadIndex(scalar::fmt_q(&a)));
        }
        Ok((a * 2).to_integer())
    };
    Ok(match kind {
        ArchKind::RealInduced { a } => FourthRoot::i_pow(two_a(a)? + 1),
        ArchKind::Complex { a, b } => {
            let d = a - b;
            if !d.is_integer() {
                return Err(ArchError::NonIntegralCharacter(scalar::fmt_q(&d)));
            }
            FourthRoot::i_pow(d.abs().to_integer())
        }
        ArchKind::RealRestriction { a } => FourthRoot::i_pow(2 * two_a(a)?),
    })
}

fn sign_pow(e: i64) -> i8 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootNumberReport {
    pub sign: i8,
    pub crt_factor: i8,
    pub embedding_product: i8,
    /// a(ε) = ε for every a, given determinant triviality at finite places.
    pub invariant: bool,
    pub permutations_checked: usize,
    pub certificate: String,
}

fn check_self_dual_inputs(p: &InfChar, q: &InfChar, emb: &EmbeddingSet, r: usize, t: usize) -> Result<(), ArchError> {
    if !p.covers(emb) || !q.covers(emb) {
        return Err(ArchError::InfChar("missing embedding".into()));
    }
    for e in &emb.embeddings {
        if p.get(e).len() != r || q.get(e).len() != t {
            return Err(ArchError::InfChar(format!("degrees at {e} differ from (r, t) = ({r}, {t})")));
        }
        for x in p.get(e) {
            for y in q.get(e) {
                let s = *x + *y;
                if !scalar::is_half_integral(s) || s.is_integer() {
                    return Err(ArchError::NotHalfIntegralWeight(scalar::fmt_q(&s)));
                }
            }
        }
    }
    Ok(())
}

/// Π_ι Π_{p+q>0} (−1)^{p+q+1/2}.
fn embedding_product(p: &InfChar, q: &InfChar, emb: &EmbeddingSet) -> i8 {
    let mut s = 1;
    for e in &emb.embeddings {
        for x in p.get(e) {
            for y in q.get(e) {
                let a = *x + *y;
                if a.is_positive() {
                    s *= sign_pow((a + half()).to_integer());
                }
            }
        }
    }
    s
}

fn global_sign(p: &InfChar, q: &InfChar, emb: &EmbeddingSet, r: usize, t: usize) -> (i8, i8) {
    let c = emb.d_complex();
    let crt = sign_pow((c * r * t / 2) as i64);
    (crt, embedding_product(p, q, emb))
}

/// Permutations of the embedding labels commuting with conjugation.
fn compatible_permutations(emb: &EmbeddingSet, limit: usize) -> Vec<AutOnEmbeddings> {
    let labels = emb.embeddings.clone();
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..labels.len()).collect();
    fn heap(k: usize, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(perm);
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, f);
            let j = if k % 2 == 0 { i } else { 0 };
            perm.swap(j, k - 1);
        }
    }
    if labels.len() > limit {
        return out;
    }
    heap(labels.len(), &mut perm, &mut |pm| {
        let a = AutOnEmbeddings {
            map: labels.iter().zip(pm).map(|(l, &j)| (l.clone(), labels[j].clone())).collect(),
        };
        if a.commutes_with(emb) {
            out.push(a);
        }
    });
    out
}

/// Archimedean sign of ε(1/2, π × ρ) for self-dual π (degree r) and ρ (degree t)
/// from the embedding-level closed form, together with an exhaustive check of
/// its invariance under embedding permutations (up to 8 embeddings).
pub fn root_number_selfdual(
    p: &InfChar,
    q: &InfChar,
    emb: &EmbeddingSet,
    r: usize,
    t: usize,
    nonarch_det_trivial: bool,
) -> Result<RootNumberReport, ArchError> {
    emb.check()?;
    check_self_dual_inputs(p, q, emb, r, t)?;
    let crt = emb.d_complex() * r * t;
    if crt % 2 == 1 {
        return Err(ArchError::OddCrt(crt));
    }
    if !nonarch_det_trivial {
        return Err(ArchError::DeterminantNotTrivial);
    }
    let (crt_factor, embedding_product) = global_sign(p, q, emb, r, t);
    let sign = crt_factor * embedding_product;
    let perms = compatible_permutations(emb, 8);
    let invariant = perms.iter().all(|a| {
        let (c2, e2) = global_sign(&p.permuted(a), &q.permuted(a), emb, r, t);
        c2 * e2 == sign
    });
    Ok(RootNumberReport {
        sign,
        crt_factor,
        embedding_product,
        invariant,
        permutations_checked: perms.len(),
        certificate: "the archimedean product depends only on the multiset of pairs (p_iota, q_iota); finite places contribute det(LL(pi_v) x LL(rho_v))(a_p) = 1".into(),
    })
}

/// Place-by-place evaluation: I_{p+q} at real places, the characters
/// (z/z̄)^{p_i+q_j} at complex places.
pub fn root_number_selfdual_local(p: &InfChar, q: &InfChar, emb: &EmbeddingSet) -> FourthRoot {
    let mut acc = FourthRoot::one();
    for e in emb.places() {
        for x in p.get(e) {
            for y in q.get(e) {
                let a = *x + *y;
                if emb.is_real(e) {
                    if a.is_positive() {
                        acc = acc.mul(eps_arch(ArchKind::RealInduced { a }).expect("positive half-integer"));
                    }
                } else {
                    acc = acc.mul(eps_arch(ArchKind::Complex { a, b: -a }).expect("integral difference"));
                }
            }
        }
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutSigns {
    /// a(√d_E)/√d_E.
    pub eps_sqrt_de: i8,
    /// a(√−1)/√−1.
    pub eps_i: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjDualRatio {
    pub nonarch: i8,
    pub arch: i8,
    pub raw: i8,
    pub ratio: i8,
}

/// a(ε(1/2, π × ρ^∨)) / ε(1/2, ã(π) × ã(ρ)^∨) from its finite and archimedean
/// factors. With `consistent` (s_E = (−1)^{d_ℂ}) the two factors are values of a
/// at the same square root of 1, so the ratio is 1.
pub fn invariance_ratio_conjdual(r: usize, t: usize, d_c: usize, aut: AutSigns, consistent: bool) -> ConjDualRatio {
    let rt = (r * t) as i64;
    let nonarch = if rt % 2 == 0 { 1 } else { aut.eps_sqrt_de };
    let arch = if (d_c as i64 * rt) % 2 == 0 { 1 } else { aut.eps_i };
    let raw = nonarch * arch;
    ConjDualRatio { nonarch, arch, raw, ratio: if consistent || rt % 2 == 0 { 1 } else { raw } }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Parity of ord_{s=1/2} forced by the functional equation g(s) = ε g(1−s).
pub fn parity_of_order(eps: i8) -> Parity {
    if eps > 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    fn h(v: &[i64]) -> Vec<Q> {
        v.iter().map(|x| q(*x, 2)).collect()
    }

    #[test]
    fn infchar_examples() {
        let f = infchar_from_parameter(&Weight::from_ints(&[0]), &Weight::from_ints(&[0]), PlaceKind::Real).unwrap();
        assert_eq!(f, InfCharFragment::Real { p: vec![QStr(qi(0))] });
        let k = 5;
        let tau = Weight::new(h(&[-k, k]));
        match infchar_from_parameter(&tau, &tau.scale(-Q::one()), PlaceKind::Real).unwrap() {
            InfCharFragment::Real { p } => assert_eq!(p, vec![QStr(q(5, 2)), QStr(q(-5, 2))]),
            _ => unreachable!(),
        }
        let c = infchar_from_parameter(&Weight::from_ints(&[3]), &Weight::from_ints(&[-1]), PlaceKind::Complex).unwrap();
        assert_eq!(c, InfCharFragment::Complex { p: vec![QStr(qi(3))], p_bar: vec![QStr(qi(-1))] });
        assert!(infchar_from_parameter(&Weight::new(h(&[1])), &Weight::from_ints(&[0]), PlaceKind::Real).is_err());
    }

    #[test]
    fn purity_examples() {
        let real = EmbeddingSet::standard(1, 0);
        assert_eq!(purity_weight(&InfChar::uniform(&real, &h(&[1, -1])), &real).unwrap(), qi(0));
        let cx = EmbeddingSet::standard(0, 1);
        let mk = |a: Vec<Q>, b: Vec<Q>| {
            InfChar::new(BTreeMap::from([("c1".to_string(), a), ("c1b".to_string(), b)])).unwrap()
        };
        let bad = mk(vec![qi(1), qi(0)], vec![qi(-1), qi(-2)]);
        assert!(matches!(purity_weight(&bad, &cx), Err(ArchError::InconsistentPairing(_))));
        let good = mk(h(&[3, 1]), h(&[-5, -3]));
        assert_eq!(purity_weight(&good, &cx).unwrap(), qi(1));
    }

    #[test]
    fn superregular_examples() {
        assert!(is_superregular(&h(&[7, 3])).unwrap());
        assert!(!is_superregular(&h(&[5, 3])).unwrap());
        assert!(!is_superregular(&h(&[1, -1])).unwrap());
        assert!(is_superregular(&h(&[7, 3, -3, -7])).unwrap());
        assert!(matches!(is_superregular(&[qi(1), qi(0), qi(-1)]), Err(ArchError::OddCardinality(3))));
    }

    #[test]
    fn disjoint_examples() {
        assert!(is_disjoint(&h(&[3, -3]), &[qi(0)]));
        assert!(!is_disjoint(&h(&[1, -1]), &[qi(1)]));
        assert!(is_disjoint(&h(&[1, -1]), &[]));
    }

    #[test]
    fn so_regular_examples() {
        assert!(is_so_regular(&[qi(2), qi(0), qi(0), qi(-2)]).unwrap());
        assert!(is_so_regular(&[qi(2), qi(1), qi(-1), qi(-2)]).unwrap());
        assert!(!is_so_regular(&[qi(2), qi(2), qi(-2), qi(-2)]).unwrap());
        assert!(is_so_regular(&[qi(1)]).is_err());
    }

    #[test]
    fn induced_regular_examples() {
        assert!(!induced_regular(&h(&[3, -3]), &[qi(1), qi(0), qi(-1)]));
        assert!(induced_regular(&h(&[5, -5]), &[qi(1), qi(0), qi(-1)]));
        assert!(induced_regular(&h(&[1, -1]), &[]));
    }

    #[test]
    fn algebraicity_examples() {
        assert_eq!(algebraicity_required(1, 2), Algebraicity::Algebraic);
        assert_eq!(algebraicity_required(1, 1), Algebraicity::HalfAlgebraic);
        assert_eq!(algebraicity_required(2, 0), Algebraicity::HalfAlgebraic);
    }

    #[test]
    fn eps_arch_examples() {
        assert_eq!(eps_arch(ArchKind::RealInduced { a: half() }).unwrap().to_string(), "-1");
        assert_eq!(eps_arch(ArchKind::Complex { a: qi(1), b: qi(0) }).unwrap().to_string(), "i");
        assert_eq!(eps_arch(ArchKind::RealRestriction { a: half() }).unwrap().to_string(), "-1");
        assert!(eps_arch(ArchKind::RealInduced { a: q(-1, 2) }).is_err());
    }

    #[test]
    fn root_number_examples() {
        let real = EmbeddingSet::standard(1, 0);
        let p = InfChar::uniform(&real, &h(&[1, -1]));
        let q0 = InfChar::uniform(&real, &[qi(0)]);
        let rep = root_number_selfdual(&p, &q0, &real, 2, 1, true).unwrap();
        assert_eq!(rep.sign, -1);
        assert!(rep.invariant);
        let empty = InfChar::uniform(&real, &[]);
        assert_eq!(root_number_selfdual(&p, &empty, &real, 2, 0, true).unwrap().sign, 1);
        assert_eq!(
            root_number_selfdual(&p, &q0, &real, 2, 1, false),
            Err(ArchError::DeterminantNotTrivial)
        );
    }

    #[test]
    fn conjdual_examples() {
        let a = AutSigns { eps_sqrt_de: -1, eps_i: -1 };
        assert_eq!(invariance_ratio_conjdual(2, 1, 1, a, false).ratio, 1);
        assert_eq!(invariance_ratio_conjdual(1, 3, 1, a, true).ratio, 1);
        let b = AutSigns { eps_sqrt_de: -1, eps_i: 1 };
        assert_eq!(invariance_ratio_conjdual(1, 1, 1, b, false).ratio, -1);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_of_order(1), Parity::Even);
        assert_eq!(parity_of_order(-1), Parity::Odd);
    }
}

//! Formal cuspidal records, Arthur parameters ⊕ π_i ⊗ sp(d_i), and the
//! cuspidal-count argument that pins down the cuspidal support of a residual
//! representation.
//!
//! Records are compared by label: two records with the same label stand for
//! the same cuspidal representation (strong multiplicity one).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::archimedean::{Algebraicity, AutOnEmbeddings, InfChar};
use crate::grp::{FieldTag, GroupDescriptor, GrpError, LeviDescriptor, SelfDualType};
use crate::satake::AutModel;
use crate::scalar::{self, half, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectraError {
    #[error("label {0} is used by two different records")]
    LabelClash(String),
    #[error("pair ({0}, sp({1})) occurs twice")]
    Multiplicity(String, usize),
    #[error("d must be positive")]
    ZeroD,
    #[error("not a parameter sum: {0}")]
    NotParameterSum(String),
    #[error("malformed candidate: {0}")]
    MalformedCandidate(String),
    #[error("record {0} lacks regularity or algebraicity")]
    NotRegular(String),
    #[error(transparent)]
    Group(#[from] GrpError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Duality {
    SelfDual { sign: SelfDualType },
    ConjDual { eta: i8 },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalRecord {
    pub label: String,
    pub degree: usize,
    #[serde(default = "field_f")]
    pub base: FieldTag,
    #[serde(default = "duality_none")]
    pub duality: Duality,
    #[serde(with = "scalar::qstr", default)]
    pub weight: Q,
    #[serde(default = "alg_none")]
    pub algebraicity: Algebraicity,
    #[serde(default)]
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub infchar: Option<InfChar>,
}

fn field_f() -> FieldTag {
    FieldTag::F
}
fn duality_none() -> Duality {
    Duality::None
}
fn alg_none() -> Algebraicity {
    Algebraicity::None
}

impl CuspidalRecord {
    pub fn new(label: &str, degree: usize) -> Self {
        CuspidalRecord {
            label: label.to_string(),
            degree,
            base: FieldTag::F,
            duality: Duality::None,
            weight: Q::zero(),
            algebraicity: Algebraicity::None,
            regular: false,
            infchar: None,
        }
    }

    /// The trivial character of GL_1.
    pub fn trivial() -> Self {
        CuspidalRecord {
            duality: Duality::SelfDual { sign: SelfDualType::Orthogonal },
            algebraicity: Algebraicity::Algebraic,
            ..Self::new("1", 1)
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.label == "1" && self.degree == 1
    }

    pub fn self_dual(mut self, sign: SelfDualType) -> Self {
        self.duality = Duality::SelfDual { sign };
        self
    }

    pub fn conj_dual(mut self, eta: i8, ext: &str) -> Self {
        self.duality = Duality::ConjDual { eta };
        self.base = FieldTag::E(ext.to_string());
        self
    }

    pub fn algebraic(mut self, a: Algebraicity) -> Self {
        self.algebraicity = a;
        self.regular = true;
        self
    }
}

/// ⊕ (record, d), kept sorted by (label, d).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArthurParameter {
    summands: Vec<Summand>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summand {
    pub record: CuspidalRecord,
    pub d: usize,
}

fn check_labels<'a>(records: impl Iterator<Item = &'a CuspidalRecord>) -> Result<(), SpectraError> {
    let mut seen: BTreeMap<&str, &CuspidalRecord> = BTreeMap::new();
    for r in records {
        if let Some(prev) = seen.insert(&r.label, r) {
            if prev != r {
                return Err(SpectraError::LabelClash(r.label.clone()));
            }
        }
    }
    Ok(())
}

impl ArthurParameter {
    pub fn new(summands: Vec<(CuspidalRecord, usize)>) -> Result<Self, SpectraError> {
        let mut s: Vec<Summand> = summands.into_iter().map(|(record, d)| Summand { record, d }).collect();
        if s.iter().any(|x| x.d == 0) {
            return Err(SpectraError::ZeroD);
        }
        check_labels(s.iter().map(|x| &x.record))?;
        s.sort_by(|a, b| (&a.record.label, a.d).cmp(&(&b.record.label, b.d)));
        for w in s.windows(2) {
            if w[0].record.label == w[1].record.label && w[0].d == w[1].d {
                return Err(SpectraError::Multiplicity(w[0].record.label.clone(), w[0].d));
            }
        }
        Ok(ArthurParameter { summands: s })
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn degree(&self) -> usize {
        self.summands.iter().map(|s| s.record.degree * s.d).sum()
    }

    /// Number of cuspidal terms Σ d_i in the expansion.
    pub fn cuspidal_count(&self) -> usize {
        self.summands.iter().map(|s| s.d).sum()
    }
}

impl fmt::Display for ArthurParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(|s| format!("{} x sp({})", s.record.label, s.d)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Multiset of `π[shift]`, sorted by (label, shift descending).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CuspidalSum {
    terms: Vec<SumTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumTerm {
    pub record: CuspidalRecord,
    #[serde(with = "scalar::qstr")]
    pub shift: Q,
}

impl CuspidalSum {
    pub fn new(terms: Vec<(CuspidalRecord, Q)>) -> Result<Self, SpectraError> {
        check_labels(terms.iter().map(|t| &t.0))?;
        let mut t: Vec<SumTerm> = terms.into_iter().map(|(record, shift)| SumTerm { record, shift }).collect();
        t.sort_by(|a, b| a.record.label.cmp(&b.record.label).then(b.shift.cmp(&a.shift)));
        Ok(CuspidalSum { terms: t })
    }

    pub fn terms(&self) -> &[SumTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// (label, shift) pairs, the data compared under strong multiplicity one.
    pub fn keys(&self) -> Vec<(String, Q)> {
        self.terms.iter().map(|t| (t.record.label.clone(), t.shift)).collect()
    }
}

/// (π, d) ↦ π[(d−1)/2], π[(d−3)/2], …, π[−(d−1)/2].
pub fn expand(p: &ArthurParameter) -> CuspidalSum {
    let mut terms = Vec::new();
    for s in &p.summands {
        let top = Q::new(s.d as i64 - 1, 2);
        for j in 0..s.d {
            terms.push((s.record.clone(), top - Q::from_integer(j as i64)));
        }
    }
    CuspidalSum::new(terms).expect("labels already consistent")
}

/// Inverse of `expand`: for each label the largest shift (d−1)/2 fixes d, its
/// ladder is removed, and the rest is processed again.
pub fn reconstruct(s: &CuspidalSum) -> Result<ArthurParameter, SpectraError> {
    let mut by_label: BTreeMap<&str, (CuspidalRecord, Vec<Q>)> = BTreeMap::new();
    for t in &s.terms {
        by_label.entry(&t.record.label).or_insert_with(|| (t.record.clone(), Vec::new())).1.push(t.shift);
    }
    let mut out = Vec::new();
    for (label, (record, mut shifts)) in by_label {
        while !shifts.is_empty() {
            shifts.sort();
            let top = *shifts.last().expect("nonempty");
            if top.is_negative() || !scalar::is_half_integral(top) {
                return Err(SpectraError::NotParameterSum(format!("{label}[{}] starts no ladder", scalar::fmt_q(&top))));
            }
            let d = (top * 2).to_integer() as usize + 1;
            for j in 0..d {
                let want = top - Q::from_integer(j as i64);
                let pos = shifts.iter().position(|x| *x == want).ok_or_else(|| {
                    SpectraError::NotParameterSum(format!("{label}: ladder of length {d} misses shift {}", scalar::fmt_q(&want)))
                })?;
                shifts.swap_remove(pos);
            }
            out.push((record.clone(), d));
        }
    }
    ArthurParameter::new(out)
}

// ---------------------------------------------------------------------------
// Levi support
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlBlockCandidate {
    pub record: CuspidalRecord,
    #[serde(with = "scalar::qstr")]
    pub shift: Q,
}

/// π_1|·|^{s_1} ⊗ … ⊗ π_I|·|^{s_I} ⊗ σ with σ of parameter `core`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviCandidate {
    pub blocks: Vec<GlBlockCandidate>,
    pub core: ArthurParameter,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Rejection {
    /// I = 0: the representation would be cuspidal.
    Cuspidal,
    CountMismatch { count: usize },
    /// ω_{π_i} = 1 on A_M(ℝ)° forces the trivial record to carry shift 0.
    TrivialShift,
    MultisetMismatch { candidate: Vec<String>, target: Vec<String> },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Cuspidal => write!(f, "cuspidal case, contradicts non-cuspidality"),
            Rejection::CountMismatch { count } => write!(f, "cuspidal count {count} differs from 3"),
            Rejection::TrivialShift => write!(f, "trivial block must carry shift 0"),
            Rejection::MultisetMismatch { candidate, target } => {
                write!(f, "{{{}}} mismatch with {{{}}}", candidate.join(", "), target.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum LeviVerdict {
    Accept {
        levi: String,
        pi_m: Vec<String>,
        #[serde(with = "scalar::qstr")]
        s: Q,
        /// Jacquet–Shalika multiset uniqueness is used as an axiom.
        axiom: String,
    },
    Reject {
        #[serde(flatten)]
        reason: Rejection,
        message: String,
    },
}

impl LeviVerdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, LeviVerdict::Accept { .. })
    }

    fn reject(reason: Rejection) -> Self {
        LeviVerdict::Reject { message: reason.to_string(), reason }
    }
}

fn fmt_key((l, s): &(String, Q)) -> String {
    if s.is_zero() {
        l.clone()
    } else {
        format!("{l}[{}]", scalar::fmt_q(s))
    }
}

/// Decides whether ψ = π ⊗ sp(2) ⊕ ρ can be the parameter of a residue from
/// the Levi data in `candidate`.
pub fn classify_levi_support(
    target: &ArthurParameter,
    ambient: &GroupDescriptor,
    candidate: &LeviCandidate,
) -> Result<LeviVerdict, SpectraError> {
    let pi = match target.summands() {
        [a, b] if a.d == 2 && b.d == 1 => &a.record,
        [a, b] if a.d == 1 && b.d == 2 => &b.record,
        _ => return Err(SpectraError::MalformedCandidate(format!("target {target} is not pi x sp(2) + rho"))),
    };
    for b in &candidate.blocks {
        if !scalar::is_half_integral(b.shift) {
            return Err(SpectraError::MalformedCandidate(format!("shift {} outside ½ℤ", scalar::fmt_q(&b.shift))));
        }
        if b.shift.is_negative() {
            return Err(SpectraError::MalformedCandidate("shift outside the positive chamber".into()));
        }
    }
    let cand_degree: usize = 2 * candidate.blocks.iter().map(|b| b.record.degree).sum::<usize>() + candidate.core.degree();
    if cand_degree != target.degree() {
        return Err(SpectraError::MalformedCandidate(format!(
            "candidate degree {cand_degree} differs from target degree {}",
            target.degree()
        )));
    }

    let count = 2 * candidate.blocks.len() + candidate.core.cuspidal_count();
    if count != 3 {
        return Ok(LeviVerdict::reject(Rejection::CountMismatch { count }));
    }
    if candidate.blocks.is_empty() {
        return Ok(LeviVerdict::reject(Rejection::Cuspidal));
    }
    if candidate.blocks.iter().any(|b| b.record.is_trivial() && !b.shift.is_zero()) {
        return Ok(LeviVerdict::reject(Rejection::TrivialShift));
    }

    let target_keys = expand(target).keys();
    let mut terms: Vec<(CuspidalRecord, Q)> = Vec::new();
    for b in &candidate.blocks {
        terms.push((b.record.clone(), b.shift));
        terms.push((b.record.clone(), -b.shift));
    }
    terms.extend(expand(&candidate.core).terms.into_iter().map(|t| (t.record, t.shift)));
    let mut cand_keys: Vec<(String, Q)> = terms.iter().map(|(r, s)| (r.label.clone(), *s)).collect();
    let mut tk = target_keys.clone();
    cand_keys.sort();
    tk.sort();
    if cand_keys != tk {
        return Ok(LeviVerdict::reject(Rejection::MultisetMismatch {
            candidate: cand_keys.iter().map(fmt_key).collect(),
            target: tk.iter().map(fmt_key).collect(),
        }));
    }
    let b = &candidate.blocks[0];
    debug_assert_eq!(b.record.label, pi.label);
    let levi = LeviDescriptor::maximal(ambient, b.record.degree)?;
    let mut pi_m = vec![b.record.label.clone()];
    pi_m.extend(candidate.core.summands().iter().map(|s| s.record.label.clone()));
    Ok(LeviVerdict::Accept {
        levi: levi.to_string(),
        pi_m,
        s: b.shift,
        axiom: "Jacquet-Shalika: Hecke multisets at almost all places determine the isobaric constituents".into(),
    })
}

/// Every candidate shape for the target with block shifts in {0, 1/2, …, max_shift}
/// and records drawn from `pool`: I ∈ {0, 1} blocks, core of up to three
/// summands with d ≤ 3, subject to the degree balance. Used to confirm that
/// exactly one shape is accepted.
pub fn candidate_family(target: &ArthurParameter, pool: &[CuspidalRecord], max_shift: Q) -> Vec<LeviCandidate> {
    let degree = target.degree();
    let mut shifts = Vec::new();
    let mut s = Q::zero();
    while s <= max_shift {
        shifts.push(s);
        s += half();
    }
    let mut cores: Vec<Vec<(CuspidalRecord, usize)>> = vec![vec![]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for c in &cores {
            for r in pool {
                for d in 1..=3 {
                    let mut c2 = c.clone();
                    c2.push((r.clone(), d));
                    next.push(c2);
                }
            }
        }
        cores.extend(next);
        cores.sort_by_key(|c| format!("{c:?}"));
        cores.dedup();
    }
    let cores: Vec<ArthurParameter> = cores.into_iter().filter_map(|c| ArthurParameter::new(c).ok()).collect();
    let mut dedup: Vec<ArthurParameter> = Vec::new();
    for c in cores {
        if !dedup.contains(&c) {
            dedup.push(c);
        }
    }
    let mut out = Vec::new();
    for core in &dedup {
        if core.degree() == degree {
            out.push(LeviCandidate { blocks: vec![], core: core.clone() });
        }
        for r in pool {
            for s in &shifts {
                if 2 * r.degree + core.degree() == degree {
                    out.push(LeviCandidate {
                        blocks: vec![GlBlockCandidate { record: r.clone(), shift: *s }],
                        core: core.clone(),
                    });
                }
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Signs
// ---------------------------------------------------------------------------

fn parity_sign(k: i64) -> i8 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// κ = η·(−1)^{r−1}.
pub fn kappa_from_eta(eta: i8, r: usize) -> i8 {
    eta * parity_sign(r as i64 - 1)
}

/// The κ with η(π) = (−1)^r κ and η(ρ) = (−1)^{r+1} κ, if both hold.
pub fn sign_condition(eta_pi: i8, eta_rho: i8, r: usize) -> Option<i8> {
    let from_pi = eta_pi * parity_sign(r as i64);
    let from_rho = eta_rho * parity_sign(r as i64 + 1);
    (from_pi == from_rho).then_some(from_pi)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportedRecord {
    pub original: CuspidalRecord,
    pub transported: CuspidalRecord,
    pub same_weight: bool,
    pub same_duality: bool,
    pub same_algebraicity: bool,
}

impl TransportedRecord {
    pub fn all_preserved(&self) -> bool {
        self.same_weight && self.same_duality && self.same_algebraicity
    }
}

/// ã(π): weight, duality type and algebraicity class are kept, the
/// infinitesimal character becomes (p_{a⁻¹ι})_ι.
pub fn duality_preserved(
    record: &CuspidalRecord,
    aut: &AutModel,
    emb_action: &AutOnEmbeddings,
) -> Result<TransportedRecord, SpectraError> {
    if !record.regular || record.algebraicity == Algebraicity::None {
        return Err(SpectraError::NotRegular(record.label.clone()));
    }
    let trivial = aut.is_identity() && emb_action.is_identity();
    let mut t = record.clone();
    if !trivial {
        t.label = format!("a~({})", record.label);
        t.infchar = record.infchar.as_ref().map(|c| c.permuted(emb_action));
    }
    Ok(TransportedRecord {
        same_weight: t.weight == record.weight,
        same_duality: t.duality == record.duality,
        same_algebraicity: t.algebraicity == record.algebraicity,
        original: record.clone(),
        transported: t,
    })
}

//! Symbolic Satake parameters and the modeled Aut(ℂ) action.
//!
//! An eigenvalue is ±q^e·u with e ∈ ½ℤ and u a word in a free abelian group of
//! opaque units. Aut(ℂ) is modeled by a group automorphism of the units (a
//! signed permutation of generators) and the sign eps = a(q^{1/2})/q^{1/2} at
//! each place; consequently a(q^e) = eps^{2e}·q^e.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::grp::GroupDescriptor;
use crate::scalar::{self, half, Q};
use crate::weyl_root::Weight;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SatakeError {
    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },
    #[error("q-exponent {0} is not a half-integer")]
    NotHalfIntegral(String),
    #[error("class for {family} needs {want} eigenvalues, got {got}")]
    Degree { family: String, want: usize, got: usize },
    #[error("class for {0} is not stable under inversion")]
    NotSelfDual(String),
    #[error("unit map is not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("2ε = {0} is not a central exponent for {1}")]
    NonCentral(String, String),
    #[error("family mismatch: class of {class} used as {wanted}")]
    FamilyMismatch { class: String, wanted: String },
}

// ---------------------------------------------------------------------------
// Units and eigenvalues
// ---------------------------------------------------------------------------

/// Element of the free abelian group on generators u1, u2, …; zero exponents are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitWord(BTreeMap<u32, i64>);

impl UnitWord {
    pub fn one() -> Self {
        UnitWord(BTreeMap::new())
    }

    pub fn gen(k: u32) -> Self {
        UnitWord(BTreeMap::from([(k, 1)]))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut m = self.0.clone();
        for (&k, &e) in &o.0 {
            let v = m.entry(k).or_insert(0);
            *v += e;
            if *v == 0 {
                m.remove(&k);
            }
        }
        UnitWord(m)
    }

    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return Self::one();
        }
        UnitWord(self.0.iter().map(|(&k, &x)| (k, x * e)).collect())
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn generators(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.0.iter().map(|(&k, &e)| (k, e))
    }
}

impl fmt::Display for UnitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(k, e)| if *e == 1 { format!("u{k}") } else { format!("u{k}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for UnitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn parse_gen(tok: &str) -> Option<(u32, i64)> {
    let rest = tok.strip_prefix('u')?;
    let (k, e) = match rest.split_once('^') {
        Some((k, e)) => (k, i64::from_str(e).ok()?),
        None => (rest, 1),
    };
    Some((u32::from_str(k).ok()?, e))
}

impl FromStr for UnitWord {
    type Err = SatakeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SatakeError::Parse { what: "unit word", text: s.to_string() };
        let t = s.trim();
        if t == "1" {
            return Ok(UnitWord::one());
        }
        let mut w = UnitWord::one();
        for tok in t.split('*') {
            let (k, e) = parse_gen(tok.trim()).ok_or_else(err)?;
            w = w.mul(&UnitWord::gen(k).pow(e));
        }
        Ok(w)
    }
}

/// ±q^e·u.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EigenvalueSymbol {
    pub q_exp: Q,
    pub unit: UnitWord,
    /// Torsion sign; the unit group itself is free.
    pub sign: i8,
}

impl EigenvalueSymbol {
    pub fn new(sign: i8, q_exp: Q, unit: UnitWord) -> Result<Self, SatakeError> {
        if !scalar::is_half_integral(q_exp) {
            return Err(SatakeError::NotHalfIntegral(scalar::fmt_q(&q_exp)));
        }
        assert!(sign == 1 || sign == -1);
        Ok(EigenvalueSymbol { q_exp, unit, sign })
    }

    pub fn one() -> Self {
        EigenvalueSymbol { q_exp: Q::zero(), unit: UnitWord::one(), sign: 1 }
    }

    pub fn unit(u: UnitWord) -> Self {
        EigenvalueSymbol { q_exp: Q::zero(), unit: u, sign: 1 }
    }

    pub fn q_pow(e: Q) -> Self {
        EigenvalueSymbol { q_exp: e, unit: UnitWord::one(), sign: 1 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        EigenvalueSymbol { q_exp: self.q_exp + o.q_exp, unit: self.unit.mul(&o.unit), sign: self.sign * o.sign }
    }

    pub fn inv(&self) -> Self {
        EigenvalueSymbol { q_exp: -self.q_exp, unit: self.unit.inv(), sign: self.sign }
    }

    pub fn times_sign(&self, s: i8) -> Self {
        EigenvalueSymbol { sign: self.sign * s, ..self.clone() }
    }

    pub fn shift(&self, e: Q) -> Self {
        EigenvalueSymbol { q_exp: self.q_exp + e, ..self.clone() }
    }
}

impl fmt::Display for EigenvalueSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.q_exp.is_zero() {
            parts.push(format!("q^{}", scalar::fmt_q(&self.q_exp)));
        }
        if !self.unit.is_one() {
            parts.push(self.unit.to_string());
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join("*") };
        if self.sign < 0 {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

impl fmt::Debug for EigenvalueSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for EigenvalueSymbol {
    type Err = SatakeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SatakeError::Parse { what: "eigenvalue", text: s.to_string() };
        let mut t = s.trim();
        let mut sign = 1;
        if let Some(rest) = t.strip_prefix('-') {
            sign = -1;
            t = rest;
        }
        let mut x = EigenvalueSymbol::one();
        if t != "1" {
            for tok in t.split('*') {
                let tok = tok.trim();
                if let Some(e) = tok.strip_prefix("q^") {
                    x = x.shift(scalar::parse_q(e).map_err(|_| err())?);
                } else if tok == "q" {
                    x = x.shift(Q::one());
                } else {
                    let (k, e) = parse_gen(tok).ok_or_else(err)?;
                    x.unit = x.unit.mul(&UnitWord::gen(k).pow(e));
                }
            }
        }
        EigenvalueSymbol::new(sign, x.q_exp, x.unit)
    }
}

impl Serialize for EigenvalueSymbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EigenvalueSymbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Classes
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Place {
    pub label: String,
    /// Name of the residue cardinality symbol.
    #[serde(default = "default_q")]
    pub q: String,
}

fn default_q() -> String {
    "q".into()
}

impl Place {
    pub fn new(label: &str) -> Self {
        Place { label: label.to_string(), q: default_q() }
    }
}

/// Number of torus eigenvalues stored for each family. The forced eigenvalue 1
/// of SO_{2n+1}(ℂ) is added only by the standard pushforward.
pub fn class_degree(g: &GroupDescriptor) -> usize {
    use GroupDescriptor::*;
    match g {
        GL { n } | ResGL { n, .. } | U { n, .. } => *n,
        Sp { n } | SOodd { n } | SOeven { n, .. } => 2 * n,
    }
}

fn is_self_dual_family(g: &GroupDescriptor) -> bool {
    matches!(g, GroupDescriptor::Sp { .. } | GroupDescriptor::SOodd { .. } | GroupDescriptor::SOeven { .. })
}

/// Sorted multiset of eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SatakeClass {
    eigenvalues: Vec<EigenvalueSymbol>,
    pub family: GroupDescriptor,
    pub place: Place,
    /// Central exponent k/2 applied by `twisted_shift`; self-dual families are
    /// stable under x ↦ q^{2·twist}·x⁻¹.
    #[serde(with = "scalar::qstr", default)]
    pub central_twist: Q,
}

impl SatakeClass {
    pub fn new(
        mut eigenvalues: Vec<EigenvalueSymbol>,
        family: GroupDescriptor,
        place: Place,
    ) -> Result<Self, SatakeError> {
        let want = class_degree(&family);
        if eigenvalues.len() != want {
            return Err(SatakeError::Degree { family: family.to_string(), want, got: eigenvalues.len() });
        }
        eigenvalues.sort();
        let c = SatakeClass { eigenvalues, family, place, central_twist: Q::zero() };
        c.check_self_dual()?;
        Ok(c)
    }

    pub fn parse(eigs: &[&str], family: GroupDescriptor, place: Place) -> Result<Self, SatakeError> {
        let e: Result<Vec<_>, _> = eigs.iter().map(|s| s.parse()).collect();
        Self::new(e?, family, place)
    }

    /// Without degree or duality checks (intermediate expressions).
    pub fn raw(mut eigenvalues: Vec<EigenvalueSymbol>, family: GroupDescriptor, place: Place) -> Self {
        eigenvalues.sort();
        SatakeClass { eigenvalues, family, place, central_twist: Q::zero() }
    }

    pub fn eigenvalues(&self) -> &[EigenvalueSymbol] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn is_inversion_stable(&self) -> bool {
        let k = self.central_twist * 2;
        let mut inv: Vec<EigenvalueSymbol> = self.eigenvalues.iter().map(|x| x.inv().shift(k)).collect();
        inv.sort();
        inv == self.eigenvalues
    }

    fn check_self_dual(&self) -> Result<(), SatakeError> {
        if is_self_dual_family(&self.family) && !self.is_inversion_stable() {
            return Err(SatakeError::NotSelfDual(self.family.to_string()));
        }
        Ok(())
    }

    fn map_eigs(&self, f: impl Fn(&EigenvalueSymbol) -> EigenvalueSymbol) -> Self {
        let mut e: Vec<EigenvalueSymbol> = self.eigenvalues.iter().map(f).collect();
        e.sort();
        SatakeClass { eigenvalues: e, ..self.clone() }
    }

    pub fn scaled(&self, x: &EigenvalueSymbol) -> Self {
        self.map_eigs(|e| e.mul(x))
    }

    pub fn times_sign(&self, s: i8) -> Self {
        self.map_eigs(|e| e.times_sign(s))
    }

    /// Direct sum, tagged with `family`.
    pub fn direct_sum(&self, o: &Self, family: GroupDescriptor) -> Self {
        let mut e = self.eigenvalues.clone();
        e.extend(o.eigenvalues.iter().cloned());
        SatakeClass::raw(e, family, self.place.clone())
    }

    /// Tensor product with a list of eigenvalues (e.g. diag(q^{1/2}, q^{−1/2})).
    pub fn tensor(&self, diag: &[EigenvalueSymbol], family: GroupDescriptor) -> Self {
        let e = diag.iter().flat_map(|d| self.eigenvalues.iter().map(move |x| d.mul(x))).collect();
        SatakeClass::raw(e, family, self.place.clone())
    }

    pub fn display_list(&self) -> Vec<String> {
        self.eigenvalues.iter().map(|e| e.to_string()).collect()
    }
}

// ---------------------------------------------------------------------------
// Aut(ℂ) model
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutModel {
    /// uₖ ↦ u_{σ(k)}^{±1}; generators not listed are fixed.
    unit_map: BTreeMap<u32, (u32, i64)>,
    eps: BTreeMap<String, i8>,
    pub default_eps: i8,
}

impl AutModel {
    pub fn identity() -> Self {
        AutModel { unit_map: BTreeMap::new(), eps: BTreeMap::new(), default_eps: 1 }
    }

    pub fn with_eps(eps: i8) -> Self {
        AutModel { default_eps: eps, ..Self::identity() }
    }

    pub fn new(
        unit_map: BTreeMap<u32, (u32, i64)>,
        eps: BTreeMap<String, i8>,
        default_eps: i8,
    ) -> Result<Self, SatakeError> {
        for (&k, &(_, e)) in &unit_map {
            if e != 1 && e != -1 {
                return Err(SatakeError::NotAutomorphism(format!("u{k} sent to exponent {e}")));
            }
        }
        // Bijectivity on the generators touched: images, together with fixed
        // generators, must be distinct.
        let mut seen = std::collections::BTreeSet::new();
        let keys: std::collections::BTreeSet<u32> = unit_map.keys().copied().collect();
        for &(t, _) in unit_map.values() {
            if !seen.insert(t) || !keys.contains(&t) {
                return Err(SatakeError::NotAutomorphism(format!("image u{t} hit twice or outside the permuted set")));
            }
        }
        if eps.values().chain(std::iter::once(&default_eps)).any(|&s| s != 1 && s != -1) {
            return Err(SatakeError::NotAutomorphism("eps must be ±1".into()));
        }
        Ok(AutModel { unit_map, eps, default_eps })
    }

    pub fn eps_at(&self, place: &Place) -> i8 {
        self.eps.get(&place.label).copied().unwrap_or(self.default_eps)
    }

    pub fn unit_map(&self) -> &BTreeMap<u32, (u32, i64)> {
        &self.unit_map
    }

    pub fn eps_map(&self) -> &BTreeMap<String, i8> {
        &self.eps
    }

    fn map_gen(&self, k: u32) -> UnitWord {
        match self.unit_map.get(&k) {
            Some(&(t, e)) => UnitWord::gen(t).pow(e),
            None => UnitWord::gen(k),
        }
    }

    pub fn apply_unit(&self, u: &UnitWord) -> UnitWord {
        u.generators().fold(UnitWord::one(), |acc, (k, e)| acc.mul(&self.map_gen(k).pow(e)))
    }

    /// a(±q^e u) = ±eps^{2e} q^e a(u).
    pub fn transport(&self, x: &EigenvalueSymbol, place: &Place) -> EigenvalueSymbol {
        let two_e = (x.q_exp * 2).to_integer();
        let s = if two_e.rem_euclid(2) == 0 { 1 } else { self.eps_at(place) };
        EigenvalueSymbol { q_exp: x.q_exp, unit: self.apply_unit(&x.unit), sign: x.sign * s }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AutModel) -> AutModel {
        let mut gens: std::collections::BTreeSet<u32> = self.unit_map.keys().copied().collect();
        gens.extend(other.unit_map.keys().copied());
        let mut unit_map = BTreeMap::new();
        for k in gens {
            let img = self.apply_unit(&other.map_gen(k));
            let (t, e) = img.generators().next().expect("automorphism image of a generator is a generator");
            if !(t == k && e == 1) {
                unit_map.insert(k, (t, e));
            }
        }
        let mut eps = BTreeMap::new();
        let labels: std::collections::BTreeSet<&String> = self.eps.keys().chain(other.eps.keys()).collect();
        for l in labels {
            let p = Place::new(l);
            eps.insert(l.clone(), self.eps_at(&p) * other.eps_at(&p));
        }
        AutModel { unit_map, eps, default_eps: self.default_eps * other.default_eps }
    }

    pub fn inverse(&self) -> AutModel {
        let unit_map = self.unit_map.iter().map(|(&k, &(t, e))| (t, (k, e))).collect();
        AutModel { unit_map, eps: self.eps.clone(), default_eps: self.default_eps }
    }

    pub fn is_identity(&self) -> bool {
        self.unit_map.is_empty() && self.default_eps == 1 && self.eps.values().all(|&e| e == 1)
    }
}

#[derive(Serialize, Deserialize)]
struct AutRepr {
    #[serde(default)]
    unit_map: BTreeMap<String, String>,
    #[serde(default)]
    eps: BTreeMap<String, i8>,
    #[serde(default = "one_i8")]
    default_eps: i8,
}

fn one_i8() -> i8 {
    1
}

impl Serialize for AutModel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let unit_map = self
            .unit_map
            .iter()
            .map(|(k, (t, e))| (format!("u{k}"), UnitWord::gen(*t).pow(*e).to_string()))
            .collect();
        AutRepr { unit_map, eps: self.eps.clone(), default_eps: self.default_eps }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for AutModel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = AutRepr::deserialize(d)?;
        let mut m = BTreeMap::new();
        for (k, v) in &r.unit_map {
            let (k, ke) = parse_gen(k).ok_or_else(|| D::Error::custom(format!("bad unit {k:?}")))?;
            let w: UnitWord = v.parse().map_err(D::Error::custom)?;
            let img: Vec<(u32, i64)> = w.generators().collect();
            match (ke, img.as_slice()) {
                (1, [(t, e)]) => {
                    m.insert(k, (*t, *e));
                }
                _ => return Err(D::Error::custom(format!("unit map entry u{k} -> {v} is not a signed generator"))),
            }
        }
        AutModel::new(m, r.eps, r.default_eps).map_err(D::Error::custom)
    }
}

/// ε_m = a(q^{(m−1)/2})·q^{−(m−1)/2} = eps^{m−1}.
pub fn eps_m(aut: &AutModel, m: i64, place: &Place) -> i8 {
    if (m - 1).rem_euclid(2) == 0 {
        1
    } else {
        aut.eps_at(place)
    }
}

/// Whether the Satake normalization of the family needs the half-twist by
/// q^{1/2} (2ε = det, or the GSpin similitude for SO_{2n+1}).
pub fn needs_twist(g: &GroupDescriptor) -> bool {
    use GroupDescriptor::*;
    match g {
        GL { n } | ResGL { n, .. } | U { n, .. } => n % 2 == 0,
        SOodd { .. } => true,
        Sp { .. } | SOeven { .. } => false,
    }
}

/// Multiply by z = (q^{1/2})^{2ε}. For GL-type families 2ε = k·det must have
/// equal coordinates; for SO_{2n+1} it is a single similitude coordinate; Sp and
/// SO_{2n} have no nonzero central choice.
pub fn twisted_shift(class: &SatakeClass, two_eps: &Weight<Q>) -> Result<SatakeClass, SatakeError> {
    use GroupDescriptor::*;
    let non_central = || SatakeError::NonCentral(format!("{:?}", two_eps.to_strings()), class.family.to_string());
    let c = two_eps.coords();
    if c.iter().all(|x| x.is_zero()) {
        return Ok(class.clone());
    }
    let k = match &class.family {
        GL { n } | ResGL { n, .. } | U { n, .. } => {
            if c.len() != *n || c.iter().any(|x| *x != c[0]) {
                return Err(non_central());
            }
            c[0]
        }
        SOodd { .. } => {
            if c.len() != 1 {
                return Err(non_central());
            }
            c[0]
        }
        Sp { .. } | SOeven { .. } => return Err(non_central()),
    };
    if !k.is_integer() {
        return Err(non_central());
    }
    let e = k * half();
    let mut out = class.map_eigs(|x| x.shift(e));
    out.central_twist = class.central_twist + e;
    Ok(out)
}

fn unit_twist(g: &GroupDescriptor) -> Weight<Q> {
    use GroupDescriptor::*;
    match g {
        GL { n } | ResGL { n, .. } | U { n, .. } => Weight::new(vec![Q::one(); *n]),
        _ => Weight::new(vec![Q::one()]),
    }
}

fn coefficient_transport(aut: &AutModel, class: &SatakeClass) -> SatakeClass {
    class.map_eigs(|x| aut.transport(x, &class.place))
}

/// c(a(π)) from c(π): plain transport for Sp, SO_{2n} and odd GL/U; otherwise
/// z⁻¹·a(z·c(π)) with z = q^{1/2}.
pub fn act(aut: &AutModel, class: &SatakeClass) -> Result<SatakeClass, SatakeError> {
    if !needs_twist(&class.family) {
        return Ok(coefficient_transport(aut, class));
    }
    let z = unit_twist(&class.family);
    let up = twisted_shift(class, &z)?;
    let moved = coefficient_transport(aut, &up);
    twisted_shift(&moved, &z.scale(-Q::one()))
}

/// c(ã(π)) for a record on Res GL_n: a(π) if algebraic, a(π[1/2])[−1/2] if half-algebraic.
pub fn act_tilde(aut: &AutModel, class: &SatakeClass, half_algebraic: bool) -> Result<SatakeClass, SatakeError> {
    if !half_algebraic {
        return act(aut, class);
    }
    // c(π[s]) = q^{−s}·c(π).
    let shifted = class.map_eigs(|x| x.shift(-half()));
    let moved = act(aut, &shifted)?;
    Ok(moved.map_eigs(|x| x.shift(half())))
}

// ---------------------------------------------------------------------------
// Base-change chain
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLine {
    pub expression: String,
    pub eigenvalues: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    pub ok: bool,
    pub lines: Vec<ChainLine>,
    pub goal: ChainLine,
    /// First line (1-based) that differs from its predecessor, or 8 for the goal.
    pub mismatch: Option<usize>,
}

fn diag_half() -> [EigenvalueSymbol; 2] {
    [EigenvalueSymbol::q_pow(half()), EigenvalueSymbol::q_pow(-half())]
}

/// Replays BC(c(π′_G)) = … = diag(q^{1/2}, q^{−1/2}) ⊗ ε_Nε_nε₀ c(a(π)) ⊕ ε_Nε_r c(a(ρ))
/// with generic classes c(π) = {u1..un}, c(ρ) = {u(n+1)..u(n+r)}, and compares the
/// last line with diag(q^{1/2}, q^{−1/2}) ⊗ c(ã(π)) ⊕ c(a(ρ)).
pub fn bc_chain_check(n: usize, r: usize, aut: &AutModel, place: &Place) -> ChainReport {
    let pi: Vec<EigenvalueSymbol> = (1..=n as u32).map(|k| EigenvalueSymbol::unit(UnitWord::gen(k))).collect();
    let rho: Vec<EigenvalueSymbol> =
        (n as u32 + 1..=(n + r) as u32).map(|k| EigenvalueSymbol::unit(UnitWord::gen(k))).collect();
    bc_chain_check_with(&pi, &rho, aut, place)
}

pub fn bc_chain_check_with(
    pi: &[EigenvalueSymbol],
    rho: &[EigenvalueSymbol],
    aut: &AutModel,
    place: &Place,
) -> ChainReport {
    let (n, r) = (pi.len(), rho.len());
    let big_n = 2 * n + r;
    let ext = "E".to_string();
    let g_n = GroupDescriptor::U { n: big_n, ext: ext.clone() };
    let gl_big = GroupDescriptor::ResGL { n: big_n, ext: ext.clone() };
    let gl_n = GroupDescriptor::ResGL { n, ext: ext.clone() };
    let gl_r = GroupDescriptor::ResGL { n: r, ext };
    let c_pi = SatakeClass::raw(pi.to_vec(), gl_n.clone(), place.clone());
    let c_rho = SatakeClass::raw(rho.to_vec(), gl_r.clone(), place.clone());
    let diag = diag_half();

    // c(π_G), recorded through its base change.
    let bc_g = c_pi.tensor(&diag, gl_big.clone()).direct_sum(&c_rho, gl_big.clone());
    let c_g = SatakeClass { family: g_n.clone(), ..bc_g.clone() };

    let e = |m: usize| eps_m(aut, m as i64, place);
    let (e_n_big, e_n, e_r, e_0) = (e(big_n), e(n), e(r), eps_m(aut, 0, place));
    let transport = |c: &SatakeClass| coefficient_transport(aut, c);
    let ca_pi = act(aut, &c_pi).expect("GL family");
    let ca_rho = act(aut, &c_rho).expect("GL family");
    let a_diag: Vec<EigenvalueSymbol> = diag.iter().map(|d| aut.transport(d, place)).collect();

    let relabel = |c: SatakeClass| SatakeClass { family: gl_big.clone(), ..c };
    let l1 = relabel(act(aut, &c_g).expect("unitary family"));
    let l2 = relabel(transport(&c_g)).times_sign(e_n_big);
    let l3 = transport(&bc_g).times_sign(e_n_big);
    let l4 = transport(&c_pi.tensor(&diag, gl_big.clone()).direct_sum(&c_rho, gl_big.clone())).times_sign(e_n_big);
    let l5 = transport(&c_pi)
        .tensor(&a_diag, gl_big.clone())
        .direct_sum(&transport(&c_rho), gl_big.clone())
        .times_sign(e_n_big);
    let l6 = ca_pi
        .times_sign(e_n)
        .tensor(&a_diag, gl_big.clone())
        .direct_sum(&ca_rho.times_sign(e_r), gl_big.clone())
        .times_sign(e_n_big);
    let l7 = ca_pi
        .times_sign(e_n_big * e_n * e_0)
        .tensor(&diag, gl_big.clone())
        .direct_sum(&ca_rho.times_sign(e_n_big * e_r), gl_big.clone());

    let half_alg = (n + r) % 2 == 0;
    let goal = act_tilde(aut, &c_pi, half_alg)
        .expect("GL family")
        .tensor(&diag, gl_big.clone())
        .direct_sum(&ca_rho, gl_big);

    let names = [
        "BC(c(a(pi_G)))",
        "eps_N BC(a(c(pi_G)))",
        "eps_N a(BC(c(pi_G)))",
        "eps_N a(diag(q^1/2,q^-1/2) (x) c(pi) + BC(c(sigma)))",
        "eps_N (a(diag) (x) a(c(pi)) + a(c(rho)))",
        "eps_N (a(diag) (x) eps_n c(a(pi)) + eps_r c(a(rho)))",
        "diag(q^1/2,q^-1/2) (x) eps_N eps_n eps_0 c(a(pi)) + eps_N eps_r c(a(rho))",
    ];
    let classes = [l1, l2, l3, l4, l5, l6, l7];
    let mut mismatch = None;
    for i in 1..classes.len() {
        if classes[i].eigenvalues() != classes[i - 1].eigenvalues() {
            mismatch = Some(i + 1);
            break;
        }
    }
    if mismatch.is_none() && classes[6].eigenvalues() != goal.eigenvalues() {
        mismatch = Some(8);
    }
    let lines = names
        .iter()
        .zip(&classes)
        .map(|(n, c)| ChainLine { expression: n.to_string(), eigenvalues: c.display_list() })
        .collect();
    ChainReport {
        ok: mismatch.is_none(),
        lines,
        goal: ChainLine {
            expression: "diag(q^1/2,q^-1/2) (x) c(a~(pi)) + c(a(rho))".into(),
            eigenvalues: goal.display_list(),
        },
        mismatch,
    }
}

/// |q_exp| bound of the unit-normalized part: tempered eigenvalues have q_exp = 0.
pub fn max_abs_exponent(class: &SatakeClass) -> Q {
    class.eigenvalues.iter().map(|x| x.q_exp.abs()).max().unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v() -> Place {
        Place::new("v")
    }

    #[test]
    fn text_roundtrip() {
        for s in ["q^1/2*u1", "-q^-1/2*u1^-1", "u3", "1", "-1", "q^2*u1*u2^-1"] {
            let x: EigenvalueSymbol = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!("q^1/3".parse::<EigenvalueSymbol>().is_err());
        assert!("v1".parse::<EigenvalueSymbol>().is_err());
    }

    #[test]
    fn eps_m_examples() {
        let a = AutModel::with_eps(-1);
        assert_eq!(eps_m(&a, 3, &v()), 1);
        assert_eq!(eps_m(&a, 2, &v()), -1);
        assert_eq!(eps_m(&AutModel::identity(), 2, &v()), 1);
    }

    #[test]
    fn gl2_even_rule_leaves_example_unchanged() {
        let c = SatakeClass::parse(&["q^1/2*u1", "q^-1/2*u1^-1"], GroupDescriptor::GL { n: 2 }, v()).unwrap();
        assert_eq!(act(&AutModel::with_eps(-1), &c).unwrap(), c);
    }

    #[test]
    fn gl3_plain_rule_moves_half_integral_exponents() {
        // a(q^{1/2}) = −q^{1/2} flips the two half-integral eigenvalues.
        let c = SatakeClass::parse(&["q^1/2*u1", "u2", "q^-1/2*u1^-1"], GroupDescriptor::GL { n: 3 }, v()).unwrap();
        let got = act(&AutModel::with_eps(-1), &c).unwrap();
        let want = SatakeClass::parse(&["-q^1/2*u1", "u2", "-q^-1/2*u1^-1"], GroupDescriptor::GL { n: 3 }, v()).unwrap();
        assert_eq!(got, want);
        assert_eq!(act(&AutModel::with_eps(1), &c).unwrap(), c);
    }

    #[test]
    fn even_rule_termwise() {
        // (eps)^{2e−1} on q^e u, by symbolic substitution.
        let aut = AutModel::with_eps(-1);
        for h in -5..=5 {
            let e = scalar::q(h, 2);
            let x = EigenvalueSymbol::new(1, e, UnitWord::gen(1)).unwrap();
            let c = SatakeClass::raw(vec![x.clone(), EigenvalueSymbol::one()], GroupDescriptor::GL { n: 2 }, v());
            let out = act(&aut, &c).unwrap();
            let s = if (h - 1).rem_euclid(2) == 0 { 1 } else { -1 };
            assert!(out.eigenvalues().contains(&x.times_sign(s)), "e = {h}/2");
        }
    }

    #[test]
    fn twisted_shift_examples() {
        let c = SatakeClass::parse(&["q^1/2*u1", "q^-1/2*u1^-1"], GroupDescriptor::GL { n: 2 }, v()).unwrap();
        let s = twisted_shift(&c, &Weight::from_ints(&[1, 1])).unwrap();
        assert_eq!(s.display_list(), vec!["u1^-1", "q^1*u1"]);
        assert_eq!(twisted_shift(&c, &Weight::zero(2)).unwrap(), c);
        assert!(twisted_shift(&c, &Weight::from_ints(&[1, 0])).is_err());
        let so = SatakeClass::parse(&["u1", "u1^-1"], GroupDescriptor::SOodd { n: 1 }, v()).unwrap();
        let s = twisted_shift(&so, &Weight::from_ints(&[1])).unwrap();
        assert_eq!(s.display_list(), vec!["q^1/2*u1^-1", "q^1/2*u1"]);
        assert!(s.is_inversion_stable());
        let sp = SatakeClass::parse(&["u1", "u1^-1"], GroupDescriptor::Sp { n: 1 }, v()).unwrap();
        assert!(twisted_shift(&sp, &Weight::from_ints(&[1])).is_err());
    }

    #[test]
    fn chain_examples() {
        assert!(bc_chain_check(1, 1, &AutModel::with_eps(-1), &v()).ok);
        assert!(bc_chain_check(2, 1, &AutModel::with_eps(1), &v()).ok);
        assert!(bc_chain_check(1, 3, &AutModel::with_eps(-1), &v()).ok);
    }

    #[test]
    fn aut_serde() {
        let a: AutModel = serde_json::from_str(r#"{"unit_map":{"u1":"u2^-1","u2":"u1"},"default_eps":-1}"#).unwrap();
        assert_eq!(a.apply_unit(&UnitWord::gen(1)), UnitWord::gen(2).inv());
        let back: AutModel = serde_json::from_str(&serde_json::to_string(&a).unwrap()).unwrap();
        assert_eq!(a, back);
        assert!(serde_json::from_str::<AutModel>(r#"{"unit_map":{"u1":"u2"}}"#).is_err());
    }
}

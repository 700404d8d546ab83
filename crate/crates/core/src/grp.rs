//! Group, Levi and parabolic descriptors with their modular characters.
//!
//! Torus coordinates are the split ones: n for Sp₂ₙ, SO₂ₙ₊₁, SO₂ₙ; ⌊N/2⌋ for U_N
//! (via t ↦ `diag(t₁, …, t_m, [1], t̄_m⁻¹, …, t̄₁⁻¹)`, exponents of |·|_E); N for GL_N.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::scalar::{self, qi, Q};
use crate::weyl_root::{Family, ParabolicShape, RootDatum, Weight};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GrpError {
    #[error("levi is not maximal ({0} GL blocks)")]
    NonMaximal(usize),
    #[error("levi {levi} does not fit in {ambient}")]
    Incompatible { levi: String, ambient: String },
    #[error("operation needs a unitary group, got {0}")]
    WrongFamily(String),
    #[error("invalid group: {0}")]
    Invalid(String),
}

/// Field of definition of a GL block: the base field, or a quadratic extension
/// (restriction of scalars).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "field", content = "ext")]
pub enum FieldTag {
    F,
    E(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum GroupDescriptor {
    /// GL_n over F.
    GL { n: usize },
    /// Res_{E/F} GL_n.
    ResGL { n: usize, ext: String },
    /// Sp_{2n}.
    Sp { n: usize },
    /// SO_{2n+1}.
    SOodd { n: usize },
    /// Quasi-split SO_{2n}^α; `alpha == "1"` is the split form.
    SOeven { n: usize, alpha: String },
    /// Quasi-split unitary group in N variables for E/F.
    U { n: usize, ext: String },
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use GroupDescriptor::*;
        match self {
            GL { n } => write!(f, "GL_{n}"),
            ResGL { n, ext } => write!(f, "Res_{ext} GL_{n}"),
            Sp { n } => write!(f, "Sp_{}", 2 * n),
            SOodd { n } => write!(f, "SO_{}", 2 * n + 1),
            SOeven { n, alpha } => write!(f, "SO_{}^{alpha}", 2 * n),
            U { n, ext } => write!(f, "U_{n}({ext})"),
        }
    }
}

/// Signature of a self-dual representation, used to pick the ambient group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelfDualType {
    Symplectic,
    Orthogonal,
}

impl GroupDescriptor {
    pub fn validate(&self) -> Result<(), GrpError> {
        use GroupDescriptor::*;
        let bad = |m: &str| Err(GrpError::Invalid(format!("{self}: {m}")));
        match self {
            GL { n } | ResGL { n, .. } if *n == 0 => bad("n must be positive"),
            SOeven { alpha, .. } if alpha.is_empty() => bad("missing discriminant tag"),
            ResGL { ext, .. } | U { ext, .. } if ext.is_empty() => bad("missing extension tag"),
            _ => Ok(()),
        }
    }

    /// Split rank: number of torus coordinates used throughout this module.
    pub fn split_rank(&self) -> usize {
        use GroupDescriptor::*;
        match self {
            GL { n } | ResGL { n, .. } => *n,
            Sp { n } | SOodd { n } | SOeven { n, .. } => *n,
            U { n, .. } => n / 2,
        }
    }

    /// Degree of the standard representation of the dual group (for U_N: after base change).
    pub fn std_degree(&self) -> usize {
        use GroupDescriptor::*;
        match self {
            GL { n } | ResGL { n, .. } | U { n, .. } => *n,
            Sp { n } => 2 * n + 1,
            SOodd { n } | SOeven { n, .. } => 2 * n,
        }
    }

    /// Root datum of the split form (GL_n ↦ A_{n−1}); `None` when there are no roots.
    pub fn root_datum(&self) -> Option<RootDatum<Q>> {
        use GroupDescriptor::*;
        let (fam, rank) = match self {
            GL { n } | ResGL { n, .. } => (Family::A, n.checked_sub(1)?),
            Sp { n } => (Family::C, *n),
            SOodd { n } => (Family::B, *n),
            SOeven { n, .. } => (Family::D, *n),
            U { .. } => return None,
        };
        RootDatum::new(fam, rank).ok()
    }

    /// Same family with a different rank parameter (the core of a Levi).
    pub fn with_rank(&self, m: usize) -> GroupDescriptor {
        use GroupDescriptor::*;
        match self {
            GL { .. } => GL { n: m },
            ResGL { ext, .. } => ResGL { n: m, ext: ext.clone() },
            Sp { .. } => Sp { n: m },
            SOodd { .. } => SOodd { n: m },
            SOeven { alpha, .. } => SOeven { n: m, alpha: alpha.clone() },
            U { ext, .. } => U { n: m, ext: ext.clone() },
        }
    }

    pub fn is_unitary(&self) -> bool {
        matches!(self, GroupDescriptor::U { .. })
    }

    fn rank_param(&self) -> usize {
        use GroupDescriptor::*;
        match self {
            GL { n } | ResGL { n, .. } | Sp { n } | SOodd { n } | SOeven { n, .. } | U { n, .. } => *n,
        }
    }
}

/// Ambient group for a Rankin pair (π on GL_r, ρ on GL_t, opposite types), with
/// n = r + ⌊t/2⌋: symplectic ρ gives SO_{2n+1}; orthogonal ρ of odd degree gives
/// Sp_{2n}; otherwise SO_{2n}^α with α read off the central character of ρ.
pub fn select_ambient(rho_type: SelfDualType, r: usize, t: usize, alpha: &str) -> GroupDescriptor {
    let n = r + t / 2;
    match rho_type {
        SelfDualType::Symplectic => GroupDescriptor::SOodd { n },
        SelfDualType::Orthogonal if t % 2 == 1 => GroupDescriptor::Sp { n },
        SelfDualType::Orthogonal => GroupDescriptor::SOeven { n, alpha: alpha.to_string() },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlBlock {
    pub size: usize,
    pub field: FieldTag,
}

/// M = GL_{r₁} × … × GL_{r_k} × core inside `ambient`. For a GL ambient the core
/// is itself a GL block (the last one).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LeviDescriptor {
    pub ambient: GroupDescriptor,
    pub gl_blocks: Vec<GlBlock>,
    pub core: GroupDescriptor,
}

impl fmt::Display for LeviDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.gl_blocks.iter().map(|b| format!("GL_{}", b.size)).collect();
        write!(f, "{} x {} in {}", blocks.join(" x "), self.core, self.ambient)
    }
}

impl LeviDescriptor {
    pub fn new(
        ambient: GroupDescriptor,
        gl_blocks: Vec<GlBlock>,
        core: GroupDescriptor,
    ) -> Result<Self, GrpError> {
        let l = LeviDescriptor { ambient, gl_blocks, core };
        l.check()?;
        Ok(l)
    }

    /// The maximal Levi GL_r × G′ (G_r × U_{N−2r} for unitary groups).
    pub fn maximal(ambient: &GroupDescriptor, r: usize) -> Result<Self, GrpError> {
        let field = match ambient {
            GroupDescriptor::U { ext, .. } | GroupDescriptor::ResGL { ext, .. } => FieldTag::E(ext.clone()),
            _ => FieldTag::F,
        };
        let total = ambient.rank_param();
        let used = if ambient.is_unitary() { 2 * r } else { r };
        let m = total.checked_sub(used).ok_or_else(|| GrpError::Incompatible {
            levi: format!("GL_{r}"),
            ambient: ambient.to_string(),
        })?;
        Self::new(ambient.clone(), vec![GlBlock { size: r, field }], ambient.with_rank(m))
    }

    fn check(&self) -> Result<(), GrpError> {
        self.ambient.validate()?;
        let err = || GrpError::Incompatible { levi: self.to_string(), ambient: self.ambient.to_string() };
        if self.gl_blocks.iter().any(|b| b.size == 0) {
            return Err(err());
        }
        let same_family = std::mem::discriminant(&self.core) == std::mem::discriminant(&self.ambient)
            && self.core.with_rank(0) == self.ambient.with_rank(0);
        if !same_family {
            return Err(err());
        }
        let s: usize = self.gl_blocks.iter().map(|b| b.size).sum();
        let m = self.core.rank_param();
        let ok = if self.ambient.is_unitary() {
            2 * s + m == self.ambient.rank_param()
        } else {
            s + m == self.ambient.rank_param()
        };
        if ok {
            Ok(())
        } else {
            Err(err())
        }
    }

    fn shape(&self) -> ParabolicShape {
        let sizes: Vec<usize> = self.gl_blocks.iter().map(|b| b.size).collect();
        match self.ambient {
            GroupDescriptor::GL { .. } | GroupDescriptor::ResGL { .. } => {
                let mut sizes = sizes;
                if self.core.rank_param() > 0 {
                    sizes.push(self.core.rank_param());
                }
                ParabolicShape::new(sizes, 0)
            }
            _ => ParabolicShape::new(sizes, self.core.rank_param()),
        }
    }

    fn single_block(&self) -> Result<usize, GrpError> {
        match self.gl_blocks.as_slice() {
            [b] => Ok(b.size),
            bs => Err(GrpError::NonMaximal(bs.len())),
        }
    }
}

/// Exponents x with δ = |det|^x on each GL block, and on the core when the
/// ambient is GL.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterExponent {
    #[serde(with = "scalar::qvec")]
    pub blocks: Vec<Q>,
    #[serde(with = "scalar::qstr")]
    pub core: Q,
}

impl CharacterExponent {
    pub fn is_half_integral(&self) -> bool {
        self.blocks.iter().chain(std::iter::once(&self.core)).all(|x| scalar::is_half_integral(*x))
    }
}

/// δ_P on every split torus coordinate, for any standard Levi.
pub fn modulus_torus(levi: &LeviDescriptor) -> Result<Vec<Q>, GrpError> {
    levi.check()?;
    if let GroupDescriptor::U { n: big_n, .. } = levi.ambient {
        // δ_P = δ_B / δ_B^M, with the Borel exponent N+1−2p at position p and the
        // GL_r-block Borel exponent r+1−2i at block index i.
        let mut out = Vec::new();
        let mut p = 0usize;
        for b in &levi.gl_blocks {
            for i in 1..=b.size {
                p += 1;
                out.push(qi(big_n as i64 + 1 - 2 * p as i64) - qi(b.size as i64 + 1 - 2 * i as i64));
            }
        }
        out.resize(big_n / 2, Q::zero());
        return Ok(out);
    }
    let datum = levi.ambient.root_datum().ok_or_else(|| GrpError::Invalid(levi.ambient.to_string()))?;
    let shape = levi.shape();
    let sum = shape
        .nilradical_roots(&datum)
        .iter()
        .fold(Weight::zero(datum.dim()), |a, r| a.add(r));
    Ok(sum.coords().to_vec())
}

/// δ_P for a maximal Levi, as a power of |det| on the GL block.
pub fn modulus_levi(levi: &LeviDescriptor) -> Result<CharacterExponent, GrpError> {
    levi.check()?;
    let r = levi.single_block()?;
    let m = levi.core.rank_param();
    if levi.ambient.is_unitary() {
        // n + r in the module's notation: block size plus the core's N₀.
        return Ok(CharacterExponent { blocks: vec![qi((r + m) as i64)], core: Q::zero() });
    }
    let tor = modulus_torus(levi)?;
    let block = tor[0];
    debug_assert!(tor[..r].iter().all(|x| *x == block));
    let core = match levi.ambient {
        GroupDescriptor::GL { .. } | GroupDescriptor::ResGL { .. } => tor.get(r).copied().unwrap_or_else(Q::zero),
        _ => Q::zero(),
    };
    Ok(CharacterExponent { blocks: vec![block], core })
}

/// δ_B exponents on the split torus coordinates.
pub fn modulus_borel(group: &GroupDescriptor) -> Vec<Q> {
    match group {
        GroupDescriptor::U { n, .. } => (1..=n / 2).map(|k| qi(*n as i64 + 1 - 2 * k as i64)).collect(),
        g => match g.root_datum() {
            Some(d) => d.rho().scale(qi(2)).coords().to_vec(),
            None => vec![Q::zero(); g.split_rank()],
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoTilde {
    /// In split-torus coordinates.
    pub split: Weight<Q>,
    /// For U_N: the absolute (GL_N over E) coordinates (1,…,1,0,…,0,−1,…,−1);
    /// otherwise equal to `split`.
    pub ambient: Weight<Q>,
    /// Distinguished coroot α̌ in split coordinates: ⟨split, α̌⟩ = 1.
    pub coroot: Weight<Q>,
}

/// ρ̃_P = ⟨ρ_P, α̌⟩⁻¹ ρ_P for a maximal parabolic.
pub fn rho_tilde(levi: &LeviDescriptor) -> Result<RhoTilde, GrpError> {
    levi.check()?;
    let n = levi.single_block()?;
    if let GroupDescriptor::U { n: big_n, .. } = levi.ambient {
        let r = big_n - 2 * n;
        let d = big_n / 2;
        let mut split = vec![Q::zero(); d];
        split[..n].iter_mut().for_each(|x| *x = Q::one());
        let mut amb = vec![Q::zero(); big_n];
        for i in 0..n {
            amb[i] = Q::one();
            amb[big_n - 1 - i] = -Q::one();
        }
        let mut coroot = vec![Q::zero(); d];
        coroot[n - 1] = Q::one();
        if r / 2 >= 1 {
            coroot[n] = -Q::one();
        }
        return Ok(RhoTilde { split: Weight::new(split), ambient: Weight::new(amb), coroot: Weight::new(coroot) });
    }
    let datum = levi.ambient.root_datum().ok_or_else(|| GrpError::Invalid(levi.ambient.to_string()))?;
    let rho_p = Weight::new(modulus_torus(levi)?).scale(scalar::half());
    // The unique simple root outside M is αₙ (index n, 1-based).
    let alpha = &datum.simple_roots[n - 1];
    let coroot = alpha.scale(qi(2) / alpha.dot(alpha));
    let c = rho_p.dot(&coroot);
    let split = rho_p.scale(Q::one() / c);
    Ok(RhoTilde { ambient: split.clone(), split, coroot })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfIntegrality {
    pub ok: bool,
    pub offending: Option<usize>,
    /// Real parts χ of the twists, after moving imaginary parts into π₀.
    #[serde(with = "scalar::qvec")]
    pub normalized: Vec<Q>,
}

/// Every sᵢ ∈ ½ℤ. With real inputs the twist is already real, so normalization
/// only reduces fractions.
pub fn half_integrality_check(exponents: &[Q]) -> HalfIntegrality {
    let offending = exponents.iter().position(|x| !scalar::is_half_integral(*x));
    HalfIntegrality { ok: offending.is_none(), offending, normalized: exponents.to_vec() }
}

/// Complex twists |det|^{σ+iτ}: the unitary part |det|^{iτ} is absorbed into π₀
/// and only χ = σ is tested.
pub fn half_integrality_check_complex(exponents: &[(Q, Q)]) -> (HalfIntegrality, Vec<Q>) {
    let re: Vec<Q> = exponents.iter().map(|e| e.0).collect();
    let im: Vec<Q> = exponents.iter().map(|e| e.1).collect();
    (half_integrality_check(&re), im)
}

/// δ_P^{1/2} is an integral power of a rational character iff n + r is even.
pub fn delta_half_rational(levi: &LeviDescriptor) -> Result<bool, GrpError> {
    if !levi.ambient.is_unitary() {
        return Err(GrpError::WrongFamily(levi.ambient.to_string()));
    }
    let n = levi.single_block()?;
    let r = levi.core.rank_param();
    Ok((n + r) % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: usize) -> GroupDescriptor {
        GroupDescriptor::U { n, ext: "E".into() }
    }

    #[test]
    fn levi_examples() {
        let e = |g: &GroupDescriptor, r| modulus_levi(&LeviDescriptor::maximal(g, r).unwrap()).unwrap().blocks[0];
        assert_eq!(e(&u(3), 1), qi(2));
        assert_eq!(e(&u(5), 2), qi(3));
        assert_eq!(e(&GroupDescriptor::Sp { n: 2 }, 2), qi(3));
        let gl = LeviDescriptor::maximal(&GroupDescriptor::GL { n: 5 }, 2).unwrap();
        assert_eq!(modulus_levi(&gl).unwrap(), CharacterExponent { blocks: vec![qi(3)], core: qi(-2) });
    }

    #[test]
    fn borel_examples() {
        assert_eq!(modulus_borel(&u(2)), vec![qi(1)]);
        assert_eq!(modulus_borel(&u(5)), vec![qi(4), qi(2)]);
        assert_eq!(modulus_borel(&GroupDescriptor::Sp { n: 2 }), vec![qi(4), qi(2)]);
    }

    #[test]
    fn rho_tilde_examples() {
        let rt = rho_tilde(&LeviDescriptor::maximal(&u(4), 1).unwrap()).unwrap();
        assert_eq!(rt.ambient, Weight::from_ints(&[1, 0, 0, -1]));
        assert_eq!(rt.split, Weight::from_ints(&[1, 0]));
        let rt = rho_tilde(&LeviDescriptor::maximal(&u(2), 1).unwrap()).unwrap();
        assert_eq!(rt.split, Weight::from_ints(&[1]));
        let rt = rho_tilde(&LeviDescriptor::maximal(&u(6), 2).unwrap()).unwrap();
        assert_eq!(rt.split, Weight::from_ints(&[1, 1, 0]));
        let rt = rho_tilde(&LeviDescriptor::maximal(&GroupDescriptor::Sp { n: 3 }, 2).unwrap()).unwrap();
        assert_eq!(rt.split, Weight::from_ints(&[1, 1, 0]));
    }

    #[test]
    fn half_integrality_examples() {
        assert!(half_integrality_check(&[scalar::half(), Q::zero()]).ok);
        let r = half_integrality_check(&[scalar::q(1, 3)]);
        assert_eq!((r.ok, r.offending), (false, Some(0)));
        assert!(half_integrality_check(&[scalar::q(3, 2), scalar::q(-1, 2), qi(1)]).ok);
    }

    #[test]
    fn parity_of_delta() {
        let d = |n_big, n| delta_half_rational(&LeviDescriptor::maximal(&u(n_big), n).unwrap()).unwrap();
        assert!(d(3, 1));
        assert!(!d(4, 1));
        assert!(d(6, 2));
        let sp = LeviDescriptor::maximal(&GroupDescriptor::Sp { n: 2 }, 1).unwrap();
        assert!(delta_half_rational(&sp).is_err());
    }

    #[test]
    fn non_maximal_rejected() {
        let sp = GroupDescriptor::Sp { n: 3 };
        let l = LeviDescriptor::new(
            sp.clone(),
            vec![GlBlock { size: 1, field: FieldTag::F }, GlBlock { size: 1, field: FieldTag::F }],
            GroupDescriptor::Sp { n: 1 },
        )
        .unwrap();
        assert_eq!(modulus_levi(&l), Err(GrpError::NonMaximal(2)));
        assert!(LeviDescriptor::maximal(&sp, 4).is_err());
    }

    #[test]
    fn ambient_table() {
        use SelfDualType::*;
        assert_eq!(select_ambient(Symplectic, 2, 2, "1"), GroupDescriptor::SOodd { n: 3 });
        assert_eq!(select_ambient(Orthogonal, 2, 3, "1"), GroupDescriptor::Sp { n: 3 });
        assert_eq!(
            select_ambient(Orthogonal, 1, 2, "d"),
            GroupDescriptor::SOeven { n: 2, alpha: "d".into() }
        );
    }
}

//! Dual-side data for the maximal Levi G_n × U_r of U_{2n+r}: the grading of
//! the dual nilradical, the identification of its two pieces, and Std
//! pushforwards of Satake classes.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::grp::{self, GroupDescriptor, LeviDescriptor};
use crate::satake::{class_degree, EigenvalueSymbol, SatakeClass, SatakeError};
use crate::scalar::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DualError {
    #[error("R2 needs r >= 1")]
    EmptyUnitaryFactor,
    #[error("n must be at least 1")]
    BadRank,
    #[error(transparent)]
    Satake(#[from] SatakeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum RepKind {
    Std,
    Asai { sign: i8 },
    Wedge2,
    Sym2,
    /// Std ⊗ Std of GL_n × GL_r; on the unitary factor it is read through base change.
    Rankin { n: usize, r: usize, via_base_change: bool },
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepDescriptor {
    #[serde(flatten)]
    pub kind: RepKind,
    pub degree: usize,
}

impl RepDescriptor {
    /// Degree implied by `kind` on GL_n (Asai on Res GL_n has degree n²).
    pub fn expected_degree(kind: &RepKind, n: usize) -> usize {
        match kind {
            RepKind::Std => n,
            RepKind::Asai { .. } => n * n,
            RepKind::Wedge2 => n * n.saturating_sub(1) / 2,
            RepKind::Sym2 => n * (n + 1) / 2,
            RepKind::Rankin { n, r, .. } => n * r,
            RepKind::Trivial => 1,
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            RepKind::Std => "Std".into(),
            RepKind::Asai { sign } => format!("Asai{}", if *sign > 0 { "+" } else { "-" }),
            RepKind::Wedge2 => "Wedge2".into(),
            RepKind::Sym2 => "Sym2".into(),
            RepKind::Rankin { n, r, .. } => format!("Rankin({n}x{r})"),
            RepKind::Trivial => "1".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedPiece {
    pub dimension: usize,
    pub rep: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedNilradical {
    pub components: BTreeMap<i64, GradedPiece>,
}

impl GradedNilradical {
    pub fn total_dimension(&self) -> usize {
        self.components.values().map(|p| p.dimension).sum()
    }
}

/// Grades the root spaces E_i − E_j of 𝔫 ⊂ 𝔤𝔩_N (blocks n, r, n) by ⟨ρ̃_P, ·⟩.
pub fn grade_nilradical(n: usize, r: usize) -> Result<GradedNilradical, DualError> {
    if n == 0 {
        return Err(DualError::BadRank);
    }
    let big_n = 2 * n + r;
    let ambient = GroupDescriptor::U { n: big_n, ext: "E".into() };
    let levi = LeviDescriptor::maximal(&ambient, n).expect("maximal Levi of U_{2n+r}");
    let rho = grp::rho_tilde(&levi).expect("single block").ambient;
    let block = |i: usize| if i < n { 0 } else if i < n + r { 1 } else { 2 };
    let mut dims: BTreeMap<i64, usize> = BTreeMap::new();
    for i in 0..big_n {
        for j in i + 1..big_n {
            if block(i) == block(j) {
                continue;
            }
            let d = rho.coords()[i] - rho.coords()[j];
            assert!(d.is_integer() && d > Q::zero());
            *dims.entry(d.to_integer()).or_default() += 1;
        }
    }
    let components = dims
        .into_iter()
        .map(|(k, dimension)| {
            let rep = match k {
                1 => "R2",
                2 => "R1",
                _ => unreachable!("pairing is 1 or 2"),
            };
            (k, GradedPiece { dimension, rep: rep.into() })
        })
        .collect();
    Ok(GradedNilradical { components })
}

pub fn asai_trace(sign: i8, n: usize) -> i64 {
    sign as i64 * n as i64
}

/// Square integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntMatrix {
    pub size: usize,
    pub entries: Vec<i64>,
}

impl IntMatrix {
    pub fn zero(size: usize) -> Self {
        IntMatrix { size, entries: vec![0; size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.set(i, i, 1);
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.size + j] = v;
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.size, o.size);
        let n = self.size;
        let mut m = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a != 0 {
                    for j in 0..n {
                        m.entries[i * n + j] += a * o.get(k, j);
                    }
                }
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn scale(&self, c: i64) -> Self {
        IntMatrix { size: self.size, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    pub fn trace(&self) -> i64 {
        (0..self.size).map(|i| self.get(i, i)).sum()
    }

    pub fn is_signed_permutation(&self) -> bool {
        (0..self.size).all(|i| {
            let row: Vec<i64> = (0..self.size).map(|j| self.get(i, j)).filter(|x| *x != 0).collect();
            let col: Vec<i64> = (0..self.size).map(|j| self.get(j, i)).filter(|x| *x != 0).collect();
            row.len() == 1 && col.len() == 1 && row[0].abs() == 1 && col[0].abs() == 1
        })
    }
}

/// Φ_N: anti-diagonal with entries 1, −1, …, (−1)^{N−1} from the top row.
pub fn phi(n: usize) -> IntMatrix {
    let mut m = IntMatrix::zero(n);
    for k in 0..n {
        m.set(k, n - 1 - k, if k % 2 == 0 { 1 } else { -1 });
    }
    let sign = if n % 2 == 1 { 1 } else { -1 };
    assert_eq!(m.mul(&m), IntMatrix::identity(n).scale(sign), "Φ² = (−1)^(N−1)");
    assert_eq!(m.transpose().mul(&m), IntMatrix::identity(n), "ᵗΦ = Φ⁻¹");
    m
}

/// Matrix of x ↦ (−1)^{n+r+1} Φ_n ᵗx Φ_n⁻¹ on M_n(ℂ) in the basis E_{ab}
/// (index a·n + b), computed by multiplying out the conjugation.
pub fn r1_operator(n: usize, r: usize) -> IntMatrix {
    let p = phi(n);
    let p_inv = p.transpose();
    let c = if (n + r + 1) % 2 == 0 { 1 } else { -1 };
    let mut op = IntMatrix::zero(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut e = IntMatrix::zero(n);
            e.set(a, b, 1);
            let image = p.mul(&e.transpose()).mul(&p_inv).scale(c);
            for i in 0..n {
                for j in 0..n {
                    op.set(i * n + j, a * n + b, image.get(i, j));
                }
            }
        }
    }
    op
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct R1Identification {
    pub descriptor: RepDescriptor,
    pub operator: IntMatrix,
    pub operator_trace: i64,
}

pub fn identify_r1(n: usize, r: usize) -> Result<R1Identification, DualError> {
    if n == 0 {
        return Err(DualError::BadRank);
    }
    let operator = r1_operator(n, r);
    debug_assert!(operator.is_signed_permutation());
    let operator_trace = operator.trace();
    let sign = if r % 2 == 0 { 1 } else { -1 };
    assert_eq!(operator_trace, asai_trace(sign, n), "trace of the R1 witness");
    Ok(R1Identification {
        descriptor: RepDescriptor { kind: RepKind::Asai { sign }, degree: n * n },
        operator,
        operator_trace,
    })
}

pub fn identify_r2(n: usize, r: usize) -> Result<RepDescriptor, DualError> {
    if n == 0 {
        return Err(DualError::BadRank);
    }
    if r == 0 {
        return Err(DualError::EmptyUnitaryFactor);
    }
    Ok(RepDescriptor { kind: RepKind::Rankin { n, r, via_base_change: true }, degree: n * r })
}

/// Std of the L-group applied to a Satake class of `group`. The result is
/// tagged with the GL family receiving Std.
pub fn std_pushforward(class: &SatakeClass, group: &GroupDescriptor) -> Result<SatakeClass, DualError> {
    use GroupDescriptor::*;
    if &class.family != group {
        return Err(SatakeError::FamilyMismatch { class: class.family.to_string(), wanted: group.to_string() }.into());
    }
    let want = class_degree(group);
    if class.len() != want {
        return Err(SatakeError::Degree { family: group.to_string(), want, got: class.len() }.into());
    }
    let mut eigs = class.eigenvalues().to_vec();
    let target = match group {
        GL { n } => GL { n: *n },
        ResGL { n, ext } | U { n, ext } => ResGL { n: *n, ext: ext.clone() },
        Sp { n } => {
            eigs.push(EigenvalueSymbol::one());
            GL { n: 2 * n + 1 }
        }
        SOodd { n } | SOeven { n, .. } => GL { n: 2 * n },
    };
    let mut out = SatakeClass::raw(eigs, target, class.place.clone());
    out.central_twist = class.central_twist;
    Ok(out)
}

/// dim 𝔫 for the Siegel-type parabolic of U_{2n+r}.
pub fn nilradical_dimension(n: usize, r: usize) -> usize {
    n * n + 2 * n * r
}

/// Multiplicity of a q-exponent in a class; used by tests and the CLI to
/// inspect pushforwards.
pub fn count_exponent(class: &SatakeClass, e: Q) -> usize {
    class.eigenvalues().iter().filter(|x| x.q_exp == e).count()
}

pub fn contains_trivial(class: &SatakeClass) -> bool {
    class.eigenvalues().iter().any(|x| x.q_exp.is_zero() && x.unit.is_one() && x.sign == 1)
}

//! Brute-force oracle suites run by `langkit selftest`. Each suite recomputes a
//! library result by direct enumeration.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_traits::Zero;
use serde::Serialize;

use crate::archimedean::{self, EmbeddingSet, InfChar};
use crate::dualside;
use crate::eisenstein::{constant_term_quotient, default_ledger, pole_at_half};
use crate::grp::{self, GroupDescriptor, LeviDescriptor, SelfDualType};
use crate::normalizer::{self, DiscreteLabel, PairedPart, QuasiTemperedGL, QuasiTemperedSelfdual, Segment, SecondKind};
use crate::satake::{self, AutModel, Place};
use crate::scalar::{q, qi, Q};
use crate::spectra::{expand, reconstruct, ArthurParameter, CuspidalRecord};
use crate::weyl_root::{self, SignedPerm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub ok: bool,
    pub cases: usize,
    pub detail: String,
}

fn suite(name: &'static str, f: fn() -> Result<usize, String>) -> SuiteResult {
    match std::panic::catch_unwind(f) {
        Ok(Ok(cases)) => SuiteResult { name, ok: true, cases, detail: "ok".into() },
        Ok(Err(e)) => SuiteResult { name, ok: false, cases: 0, detail: e },
        Err(_) => SuiteResult { name, ok: false, cases: 0, detail: "panicked".into() },
    }
}

fn weyl_lengths() -> Result<usize, String> {
    let mut cases = 0;
    for t in 1..=3 {
        let gens = SignedPerm::type_c_generators(t);
        let id = SignedPerm::identity(t);
        let mut dist = HashMap::from([(id.clone(), 0usize)]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for s in &gens {
                let x = weyl_root::product(&w, s).map_err(|e| e.to_string())?;
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
        for (w, d) in &dist {
            if weyl_root::length(w) != *d {
                return Err(format!("length of {w:?} is {} but the shortest word has {d} letters", weyl_root::length(w)));
            }
            cases += 1;
        }
    }
    for t in 1..=4 {
        for u in 0..=4 {
            let w = normalizer::intertwining_word(t, u);
            if !w.additive {
                return Err(format!("lengths not additive at t={t}, u={u}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// Exponent of |t|_E in det Ad(t) on the nilradical of U_N, the torus element
/// having character t^{α_i} t̄^{β_i} on the i-th basis vector of E^N.
fn unitary_nilradical_exponent(alpha: &[i64], beta: &[i64], block: &dyn Fn(usize) -> usize) -> Result<i64, String> {
    let (mut a, mut b) = (0, 0);
    for i in 0..alpha.len() {
        for j in i + 1..alpha.len() {
            if block(i) != block(j) {
                a += alpha[i] - alpha[j];
                b += beta[i] - beta[j];
            }
        }
    }
    if a != b {
        return Err(format!("t and t-bar exponents differ: {a} vs {b}"));
    }
    Ok(a)
}

fn modulus() -> Result<usize, String> {
    let mut cases = 0;
    for big_n in 2..=9usize {
        let d = big_n / 2;
        let g = GroupDescriptor::U { n: big_n, ext: "E".into() };
        let got = grp::modulus_borel(&g);
        for k in 1..=d {
            let mut alpha = vec![0; big_n];
            let mut beta = vec![0; big_n];
            alpha[k - 1] = 1;
            beta[big_n - k] = -1;
            let e = unitary_nilradical_exponent(&alpha, &beta, &|i| i)?;
            if got[k - 1] != qi(e) {
                return Err(format!("delta_B of U_{big_n} at {k}: {} vs {e}", got[k - 1]));
            }
            cases += 1;
        }
        for n in 1..=d {
            let r = big_n - 2 * n;
            let levi = LeviDescriptor::maximal(&g, n).map_err(|e| e.to_string())?;
            let got = grp::modulus_levi(&levi).map_err(|e| e.to_string())?.blocks[0];
            let alpha: Vec<i64> = (0..big_n).map(|i| i64::from(i < n)).collect();
            let beta: Vec<i64> = (0..big_n).map(|i| -i64::from(i >= n + r)).collect();
            let block = |i: usize| if i < n { 0 } else if i < n + r { 1 } else { 2 };
            let e = unitary_nilradical_exponent(&alpha, &beta, &block)?;
            if got * qi(n as i64) != qi(e) || got != qi((n + r) as i64) {
                return Err(format!("delta_P of GL_{n} x U_{r}: {got} vs {e}/{n}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn asai() -> Result<usize, String> {
    let mut cases = 0;
    for n in 1..=4 {
        for r in 0..=4 {
            let m = dualside::r1_operator(n, r);
            let sign = if r % 2 == 0 { 1 } else { -1 };
            if m.mul(&m) != dualside::IntMatrix::identity(n * n) {
                return Err(format!("operator for n={n}, r={r} is not an involution"));
            }
            if m.trace() != sign * n as i64 {
                return Err(format!("trace for n={n}, r={r} is {}", m.trace()));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn grading() -> Result<usize, String> {
    let mut cases = 0;
    for n in 1..=6usize {
        for r in 0..=6usize {
            let g = dualside::grade_nilradical(n, r).map_err(|e| e.to_string())?;
            let pos = |i: usize| -> i64 {
                if i < n {
                    1
                } else if i < n + r {
                    0
                } else {
                    -1
                }
            };
            let mut want: BTreeMap<i64, usize> = BTreeMap::new();
            let big = 2 * n + r;
            for i in 0..big {
                for j in 0..big {
                    let d = pos(i) - pos(j);
                    if d > 0 {
                        *want.entry(d).or_default() += 1;
                    }
                }
            }
            let got: BTreeMap<i64, usize> = g.components.iter().map(|(k, p)| (*k, p.dimension)).collect();
            if got != want {
                return Err(format!("grading mismatch at n={n}, r={r}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn eps_identities() -> Result<usize, String> {
    let place = Place::new("v");
    let mut cases = 0;
    for eps in [1i8, -1] {
        let aut = AutModel::with_eps(eps);
        for n in 1..=6usize {
            for r in 0..=6usize {
                let big = (2 * n + r) as i64;
                let e = |m: i64| satake::eps_m(&aut, m, &place);
                if e(big) * e(n as i64) * e(0) != e((n + r) as i64) || e(big) * e(r as i64) != 1 {
                    return Err(format!("eps identities fail at n={n}, r={r}, eps={eps}"));
                }
                if !satake::bc_chain_check(n, r, &aut, &place).ok {
                    return Err(format!("base-change chain fails at n={n}, r={r}, eps={eps}"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn arthur() -> Result<usize, String> {
    let recs: Vec<CuspidalRecord> = (0..3).map(|i| CuspidalRecord::new(&format!("p{i}"), i + 1)).collect();
    let mut cases = 0;
    let mut stack: Vec<Vec<(usize, usize)>> = vec![vec![]];
    while let Some(cur) = stack.pop() {
        if !cur.is_empty() {
            let p = ArthurParameter::new(cur.iter().map(|&(i, d)| (recs[i].clone(), d)).collect())
                .map_err(|e| e.to_string())?;
            let back = reconstruct(&expand(&p)).map_err(|e| e.to_string())?;
            if back != p {
                return Err(format!("round trip changed {p}"));
            }
            cases += 1;
        }
        if cur.len() == 3 {
            continue;
        }
        let last = cur.last().copied().unwrap_or((0, 0));
        for i in 0..recs.len() {
            for d in 1..=3 {
                if (i, d) > last {
                    let mut nx = cur.clone();
                    nx.push((i, d));
                    stack.push(nx);
                }
            }
        }
    }
    Ok(cases)
}

fn pole_table() -> Result<usize, String> {
    let g = GroupDescriptor::Sp { n: 3 };
    let rho = CuspidalRecord::new("rho", 3).self_dual(SelfDualType::Orthogonal);
    let mut cases = 0;
    for (sign, want) in [(SelfDualType::Symplectic, [true, false]), (SelfDualType::Orthogonal, [false, false])] {
        let pi = CuspidalRecord::new("pi", 2).self_dual(sign);
        let qt = constant_term_quotient(&g, &pi, &rho).map_err(|e| e.to_string())?;
        let l = default_ledger(&pi, &rho).map_err(|e| e.to_string())?;
        for (c, w) in [0u32, 1].into_iter().zip(want) {
            if pole_at_half(&qt, &l, c).map_err(|e| e.to_string())?.has_pole != w {
                return Err(format!("pole decision wrong for {sign:?} with central order {c}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

fn normalization() -> Result<usize, String> {
    let mut cases = 0;
    for t in 1..=3usize {
        for u in 0..=3usize {
            let pi = QuasiTemperedGL::new(
                (0..t).map(|i| Segment { ds: DiscreteLabel::new(&format!("pi{i}"), 1, 1 + i % 2), a: q(i as i64, 8) }).collect(),
            )
            .map_err(|e| e.to_string())?;
            let rho = QuasiTemperedSelfdual::new(
                vec![DiscreteLabel::new("r0", 1, 1)],
                (0..u).map(|j| PairedPart { ds: DiscreteLabel::new(&format!("rho{j}"), 1, 1), b: q(1 + j as i64, 10) }).collect(),
            )
            .map_err(|e| e.to_string())?;
            for kind in [SecondKind::Wedge2, SecondKind::Sym2, SecondKind::Asai(-1)] {
                if !normalizer::verify_factorization(&pi, &rho, kind) {
                    return Err(format!("factorization fails at t={t}, u={u}"));
                }
                let c = normalizer::classify_holomorphy(&normalizer::factor_normalization(&pi, &rho, kind))
                    .map_err(|e| e.to_string())?;
                let poles = c.iter().filter(|x| x.status == normalizer::HoloStatus::PoleCandidate).count();
                if poles != t * u {
                    return Err(format!("{poles} pole candidates at t={t}, u={u}"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn root_number() -> Result<usize, String> {
    let mut cases = 0;
    let emb = EmbeddingSet::standard(2, 1);
    // Deterministic half-integral entries with opposite parities of 2p and 2q.
    for seed in 0..20i64 {
        let mut per_p = BTreeMap::new();
        let mut per_q = BTreeMap::new();
        for (k, e) in emb.embeddings.iter().enumerate() {
            let k = k as i64;
            let p: Vec<Q> = vec![q(2 * ((seed + k) % 5) + 1, 2), q(-(2 * ((seed + k) % 5) + 1), 2)];
            let qq: Vec<Q> = vec![qi((seed * 3 + k) % 4), Q::zero(), qi(-((seed * 3 + k) % 4))];
            per_p.insert(e.clone(), p);
            per_q.insert(e.clone(), qq);
        }
        let pc = emb.conj.clone();
        for (e, c) in &pc {
            if e != c && e > c {
                let pe: Vec<Q> = per_p[c].iter().map(|x| -x).collect();
                let qe: Vec<Q> = per_q[c].iter().map(|x| -x).collect();
                per_p.insert(e.clone(), pe);
                per_q.insert(e.clone(), qe);
            }
        }
        let p = InfChar::new(per_p).map_err(|e| e.to_string())?;
        let qq = InfChar::new(per_q).map_err(|e| e.to_string())?;
        let r = archimedean::root_number_selfdual(&p, &qq, &emb, 2, 3, true).map_err(|e| e.to_string())?;
        if !r.invariant {
            return Err(format!("sign not invariant for seed {seed}"));
        }
        if archimedean::root_number_selfdual_local(&p, &qq, &emb).as_sign() != Some(r.sign) {
            return Err(format!("local product disagrees for seed {seed}"));
        }
        cases += 1;
    }
    Ok(cases)
}

const SUITES: &[(&str, fn() -> Result<usize, String>)] = &[
    ("weyl-lengths", weyl_lengths),
    ("modular-characters", modulus),
    ("asai-operator", asai),
    ("nilradical-grading", grading),
    ("eps-identities", eps_identities),
    ("arthur-round-trip", arthur),
    ("pole-dichotomy", pole_table),
    ("normalization-factorization", normalization),
    ("root-number", root_number),
];

/// Suites fan out over scoped threads; results come back in declaration order.
pub fn run_all() -> Vec<SuiteResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = SUITES.iter().map(|&(name, f)| s.spawn(move || suite(name, f))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    })
}

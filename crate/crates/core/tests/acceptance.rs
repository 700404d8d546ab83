//! Acceptance run: one PASS/FAIL line per criterion, each checked against an
//! oracle written here rather than taken from the library.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use langkit::archimedean::{self, eps_arch, ArchKind, AutOnEmbeddings, EmbeddingSet, InfChar};
use langkit::cli::{self, Command, RunOptions, Scenario};
use langkit::dualside;
use langkit::eisenstein::{constant_term_quotient, default_ledger, pole_at_half, LKind};
use langkit::grp::{self, GroupDescriptor, LeviDescriptor, SelfDualType};
use langkit::normalizer::{
    self, DiscreteLabel, HoloStatus, PairedPart, QuasiTemperedGL, QuasiTemperedSelfdual, SecondKind, Segment,
};
use langkit::satake::{self, AutModel, Place};
use langkit::scalar::{q, qi, Q};
use langkit::spectra::{
    candidate_family, classify_levi_support, expand, reconstruct, ArthurParameter, CuspidalRecord, LeviCandidate,
    LeviVerdict, Rejection,
};
use langkit::weyl_root::{self, SignedPerm};
use num_traits::{Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure!(took <= limit, "took {took:?}, limit {limit:?}");
    Ok(())
}

// ---------------------------------------------------------------------------
// 1. Weyl lengths
// ---------------------------------------------------------------------------

/// w(e_i) = sign(w(i)) e_{|w(i)|}.
fn act_on_vector(w: &[i32], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0; v.len()];
    for (i, &x) in v.iter().enumerate() {
        let img = w[i];
        out[img.unsigned_abs() as usize - 1] += if img > 0 { x } else { -x };
    }
    out
}

/// Positive roots e_i ± e_j (i < j) and e_i: exactly the vectors whose first
/// nonzero coordinate is positive.
fn positive_roots_b(t: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..t {
        let mut e = vec![0; t];
        e[i] = 1;
        out.push(e);
        for j in i + 1..t {
            for s in [1, -1] {
                let mut v = vec![0; t];
                v[i] = 1;
                v[j] = s;
                out.push(v);
            }
        }
    }
    out
}

fn inversion_length(w: &[i32]) -> usize {
    positive_roots_b(w.len())
        .iter()
        .filter(|r| act_on_vector(w, r).iter().find(|x| **x != 0).is_some_and(|x| *x < 0))
        .count()
}

/// (a ∘ b)(i) = a(b(i)).
fn compose(a: &[i32], b: &[i32]) -> Vec<i32> {
    b.iter()
        .map(|&x| {
            let y = a[x.unsigned_abs() as usize - 1];
            if x > 0 {
                y
            } else {
                -y
            }
        })
        .collect()
}

fn bfs(t: usize) -> HashMap<Vec<i32>, usize> {
    let gens: Vec<Vec<i32>> = SignedPerm::type_c_generators(t).iter().map(|g| g.images().to_vec()).collect();
    let id: Vec<i32> = (1..=t as i32).collect();
    let mut dist = HashMap::from([(id.clone(), 0)]);
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        let d = dist[&w];
        for g in &gens {
            let x = compose(&w, g);
            if !dist.contains_key(&x) {
                dist.insert(x.clone(), d + 1);
                queue.push_back(x);
            }
        }
    }
    dist
}

fn criterion_weyl_lengths() -> Outcome {
    let start = Instant::now();
    let mut words = 0;
    for t in 1..=3 {
        let dist = bfs(t);
        let order: usize = (1..=t).product::<usize>() << t;
        ensure!(dist.len() == order, "BFS reached {} elements of W(C_{t})", dist.len());
        for (w, d) in &dist {
            let sp = SignedPerm::new(w.clone()).map_err(|e| e.to_string())?;
            ensure!(inversion_length(w) == *d, "inversion count of {w:?} is not its BFS distance {d}");
            ensure!(weyl_root::length(&sp) == *d, "library length of {w:?} differs from BFS distance {d}");
            words += 1;
        }
    }
    let mut grid = 0;
    for t in 1..=4usize {
        for u in 0..=4usize {
            let mut w = vec![0i32; t + u];
            let mut w2 = vec![0i32; t + u];
            let mut w1 = vec![0i32; t + u];
            for i in 1..=t {
                w[i - 1] = -((t + 1 - i) as i32);
                w2[u + i - 1] = -((t + 1 - i) as i32);
                w1[i - 1] = (u + i) as i32;
            }
            for i in 1..=u {
                w[t + i - 1] = (t + i) as i32;
                w2[i - 1] = (t + i) as i32;
                w1[t + i - 1] = i as i32;
            }
            ensure!(compose(&w2, &w1) == w, "w1 then w2 does not give w at t={t}, u={u}");
            let want = (t * u, t * u + t * (t - 1) / 2 + t, t * (t - 1) / 2 + 2 * t * u + t);
            let oracle = (inversion_length(&w1), inversion_length(&w2), inversion_length(&w));
            ensure!(oracle == want, "oracle lengths {oracle:?} differ from {want:?} at t={t}, u={u}");
            let word = normalizer::intertwining_word(t, u);
            ensure!(word.w.images() == w.as_slice(), "w differs at t={t}, u={u}");
            ensure!(word.w1.images() == w1.as_slice(), "w1 differs at t={t}, u={u}");
            ensure!(word.w2.images() == w2.as_slice(), "w2 differs at t={t}, u={u}");
            ensure!(word.lengths == want, "library lengths {:?} at t={t}, u={u}", word.lengths);
            ensure!(word.additive, "additivity not reported at t={t}, u={u}");
            let w1p = SignedPerm::new(w1).map_err(|e| e.to_string())?;
            let w2p = SignedPerm::new(w2).map_err(|e| e.to_string())?;
            ensure!(
                weyl_root::length_additive(&w1p, &w2p).map_err(|e| e.to_string())?,
                "length_additive false at t={t}, u={u}"
            );
            grid += 1;
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{words} BFS words, {grid} (t, u) cells"))
}

// ---------------------------------------------------------------------------
// 2. Modular characters
// ---------------------------------------------------------------------------

/// Sum over nilradical root spaces of GL_N(E) ⊃ the parabolic with the given
/// block assignment, of the (t, t̄)-exponents of each root t^{α_i−α_j} t̄^{β_i−β_j}.
fn nilradical_exponents(block: &[usize], alpha: &[i64], beta: &[i64]) -> (i64, i64) {
    let (mut a, mut b) = (0, 0);
    for i in 0..block.len() {
        for j in 0..block.len() {
            if block[i] < block[j] {
                a += alpha[i] - alpha[j];
                b += beta[i] - beta[j];
            }
        }
    }
    (a, b)
}

/// Sum of the positive roots e_i ± e_j (i < j) together with 2e_i (C), e_i (B) or nothing (D).
fn classical_two_rho(g: &GroupDescriptor) -> Vec<i64> {
    let (n, extra) = match g {
        GroupDescriptor::Sp { n } => (*n, 2),
        GroupDescriptor::SOodd { n } => (*n, 1),
        GroupDescriptor::SOeven { n, .. } => (*n, 0),
        _ => unreachable!(),
    };
    let mut roots: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        if extra > 0 {
            let mut v = vec![0; n];
            v[i] = extra;
            roots.push(v);
        }
        for j in i + 1..n {
            for s in [1, -1] {
                let mut v = vec![0; n];
                v[i] = 1;
                v[j] = s;
                roots.push(v);
            }
        }
    }
    (0..n).map(|k| roots.iter().map(|r| r[k]).sum()).collect()
}

fn criterion_modular_characters() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for big_n in 1..=9usize {
        let g = GroupDescriptor::U { n: big_n, ext: "E".into() };
        let got = grp::modulus_borel(&g);
        let d = big_n / 2;
        let closed: Vec<Q> = (0..d).map(|k| qi((big_n - 1 - 2 * k) as i64)).collect();
        ensure!(got == closed, "delta_B of U_{big_n}: {got:?}");
        if let Some(last) = closed.last() {
            ensure!(*last == qi((big_n % 2 + 1) as i64), "delta_B of U_{big_n} ends at {last}");
        }
        // Borel: each split coordinate k sits at positions k and N+1−k.
        let block: Vec<usize> = (0..big_n).collect();
        for k in 0..d {
            let mut alpha = vec![0; big_n];
            let mut beta = vec![0; big_n];
            alpha[k] = 1;
            beta[big_n - 1 - k] = -1;
            let (a, b) = nilradical_exponents(&block, &alpha, &beta);
            ensure!(a == b, "t and t-bar exponents differ for U_{big_n}");
            ensure!(qi(a) == got[k], "root-sum oracle {a} vs {} for U_{big_n}", got[k]);
            cases += 1;
        }
        for n in 1..=d {
            let r = big_n - 2 * n;
            let block: Vec<usize> = (0..big_n).map(|i| if i < n { 0 } else if i < n + r { 1 } else { 2 }).collect();
            let alpha: Vec<i64> = block.iter().map(|&b| i64::from(b == 0)).collect();
            let beta: Vec<i64> = block.iter().map(|&b| -i64::from(b == 2)).collect();
            let (a, b) = nilradical_exponents(&block, &alpha, &beta);
            ensure!(a == b && a == (n * r + n * n) as i64, "nilradical exponent {a}, {b} for GL_{n} x U_{r}");
            let levi = LeviDescriptor::maximal(&g, n).map_err(|e| e.to_string())?;
            let e = grp::modulus_levi(&levi).map_err(|e| e.to_string())?.blocks[0];
            ensure!(e * qi(n as i64) == qi(a), "delta_P exponent {e} of GL_{n} x U_{r} vs {a}/{n}");
            ensure!(e == qi((n + r) as i64), "delta_P exponent {e} is not n+r for GL_{n} x U_{r}");
            cases += 1;
        }
    }
    for n in 1..=4usize {
        let mut groups = vec![GroupDescriptor::Sp { n }, GroupDescriptor::SOodd { n }];
        if n >= 2 {
            groups.push(GroupDescriptor::SOeven { n, alpha: "1".into() });
        }
        for g in groups {
            let want: Vec<Q> = classical_two_rho(&g).into_iter().map(qi).collect();
            ensure!(grp::modulus_borel(&g) == want, "delta_B of {g}: {:?} vs {want:?}", grp::modulus_borel(&g));
            cases += 1;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{cases} characters"))
}

// ---------------------------------------------------------------------------
// 3. Asai operator
// ---------------------------------------------------------------------------

fn criterion_asai() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for n in 1..=4usize {
        for r in 0..=4usize {
            let m = dualside::r1_operator(n, r);
            let size = n * n;
            ensure!(m.size == size, "operator for n={n} has size {}", m.size);
            let trace: i64 = (0..size).map(|i| m.get(i, i)).sum();
            let want = if r % 2 == 0 { n as i64 } else { -(n as i64) };
            ensure!(trace == want, "trace {trace} for n={n}, r={r}");
            for i in 0..size {
                for j in 0..size {
                    let sq: i64 = (0..size).map(|k| m.get(i, k) * m.get(k, j)).sum();
                    ensure!(sq == i64::from(i == j), "square is not the identity at ({i}, {j}) for n={n}, r={r}");
                }
            }
            cases += 1;
        }
    }
    within(start, Duration::from_secs(1))?;
    Ok(format!("{cases} operators"))
}

// ---------------------------------------------------------------------------
// 4. Nilradical grading
// ---------------------------------------------------------------------------

fn criterion_grading() -> Outcome {
    let mut cases = 0;
    for n in 1..=6usize {
        for r in 0..=6usize {
            // Grading element acts by 1, 0, −1 on the three blocks of E^{2n+r}.
            let weight: Vec<i64> = (0..2 * n + r).map(|i| if i < n { 1 } else if i < n + r { 0 } else { -1 }).collect();
            let mut want: BTreeMap<i64, usize> = BTreeMap::new();
            for &x in &weight {
                for &y in &weight {
                    if x > y {
                        *want.entry(x - y).or_default() += 1;
                    }
                }
            }
            let g = dualside::grade_nilradical(n, r).map_err(|e| e.to_string())?;
            let got: BTreeMap<i64, usize> =
                g.components.iter().filter(|(_, p)| p.dimension > 0).map(|(k, p)| (*k, p.dimension)).collect();
            ensure!(got == want, "grading {got:?} vs {want:?} at n={n}, r={r}");
            let mut closed = BTreeMap::from([(2, n * n)]);
            if r > 0 {
                closed.insert(1, 2 * n * r);
            }
            ensure!(want == closed, "enumeration disagrees with {{1: 2nr, 2: n^2}} at n={n}, r={r}");
            cases += 1;
        }
    }
    Ok(format!("{cases} (n, r) cells"))
}

// ---------------------------------------------------------------------------
// 5. ε_m identities
// ---------------------------------------------------------------------------

fn criterion_eps_identities() -> Outcome {
    let place = Place::new("v");
    let mut cases = 0;
    for eps in [1i8, -1] {
        let aut = AutModel::with_eps(eps);
        // a(q^{k/2}) = eps^k q^{k/2}, so ε_m = eps^{m−1}.
        let oracle = |m: i64| if (m - 1).rem_euclid(2) == 0 { 1 } else { eps };
        for m in -2..=14 {
            ensure!(satake::eps_m(&aut, m, &place) == oracle(m), "eps_{m} wrong for eps={eps}");
        }
        for n in 1..=6i64 {
            for r in 0..=6i64 {
                let big = 2 * n + r;
                let e = |m: i64| satake::eps_m(&aut, m, &place);
                ensure!(e(big) * e(n) * e(0) == e(n + r), "eps_N eps_n eps_0 != eps_(n+r) at n={n}, r={r}, eps={eps}");
                ensure!(e(big) * e(r) == 1, "eps_N eps_r != 1 at n={n}, r={r}, eps={eps}");
                let chain = satake::bc_chain_check(n as usize, r as usize, &aut, &place);
                ensure!(chain.ok, "base-change chain breaks at line {:?} for n={n}, r={r}, eps={eps}", chain.mismatch);
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (n, r, eps) cells"))
}

// ---------------------------------------------------------------------------
// 6. Arthur round trip
// ---------------------------------------------------------------------------

fn ladder(d: usize) -> Vec<Q> {
    (0..d).map(|j| q(d as i64 - 1 - 2 * j as i64, 2)).collect()
}

fn criterion_arthur() -> Outcome {
    let recs: Vec<CuspidalRecord> = (0..3).map(|i| CuspidalRecord::new(&format!("pi{i}"), i + 1)).collect();
    let pairs: Vec<(usize, usize)> = (0..recs.len()).flat_map(|i| (1..=4).map(move |d| (i, d))).collect();
    let mut count = 0;
    // Subsets of distinct (record, d) pairs of size 1..=5.
    fn walk(pairs: &[(usize, usize)], from: usize, cur: &mut Vec<(usize, usize)>, f: &mut dyn FnMut(&[(usize, usize)]) -> Result<(), String>) -> Result<(), String> {
        if !cur.is_empty() {
            f(cur)?;
        }
        if cur.len() == 5 {
            return Ok(());
        }
        for k in from..pairs.len() {
            cur.push(pairs[k]);
            walk(pairs, k + 1, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    walk(&pairs, 0, &mut Vec::new(), &mut |sel| {
        let p = ArthurParameter::new(sel.iter().map(|&(i, d)| (recs[i].clone(), d)).collect()).map_err(|e| e.to_string())?;
        let mut want: Vec<(String, Q)> =
            sel.iter().flat_map(|&(i, d)| ladder(d).into_iter().map(move |s| (format!("pi{i}"), s))).collect();
        let mut got = expand(&p).keys();
        want.sort();
        got.sort();
        ensure!(got == want, "expansion of {p} is {got:?}");
        let back = reconstruct(&expand(&p)).map_err(|e| e.to_string())?;
        ensure!(back == p, "round trip sends {p} to {back}");
        count += 1;
        Ok(())
    })?;
    let want_count: usize = (1..=5).map(|k| binom(pairs.len(), k)).sum();
    ensure!(count == want_count, "enumerated {count} parameters, expected {want_count}");
    Ok(format!("{count} parameters"))
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// ---------------------------------------------------------------------------
// 7. Classification uniqueness
// ---------------------------------------------------------------------------

fn oracle_multiset(c: &LeviCandidate) -> Vec<(String, Q)> {
    let mut v = Vec::new();
    for b in &c.blocks {
        v.push((b.record.label.clone(), b.shift));
        v.push((b.record.label.clone(), -b.shift));
    }
    for s in c.core.summands() {
        v.extend(ladder(s.d).into_iter().map(|x| (s.record.label.clone(), x)));
    }
    v.sort();
    v
}

fn criterion_classification() -> Outcome {
    let pi = CuspidalRecord::new("pi", 2).self_dual(SelfDualType::Symplectic);
    let rho = CuspidalRecord::new("rho", 3).self_dual(SelfDualType::Orthogonal);
    let sigma = CuspidalRecord::new("sigma", 1).self_dual(SelfDualType::Orthogonal);
    let mut lines = Vec::new();
    for (rho, g) in [(rho, GroupDescriptor::Sp { n: 3 }), (CuspidalRecord::trivial(), GroupDescriptor::Sp { n: 2 })] {
        let target = ArthurParameter::new(vec![(pi.clone(), 2), (rho.clone(), 1)]).map_err(|e| e.to_string())?;
        let mut want = vec![("pi".to_string(), q(1, 2)), ("pi".to_string(), q(-1, 2)), (rho.label.clone(), Q::zero())];
        want.sort();
        let mut pool = vec![pi.clone(), rho.clone(), sigma.clone()];
        if !rho.is_trivial() {
            pool.push(CuspidalRecord::trivial());
        }
        let family = candidate_family(&target, &pool, qi(1));
        let mut accepted = Vec::new();
        for c in &family {
            let ms = oracle_multiset(c);
            let terms = ms.len();
            let oracle_ok = !c.blocks.is_empty()
                && terms == 3
                && ms == want
                && c.blocks.iter().all(|b| !b.record.is_trivial() || b.shift.is_zero());
            let v = classify_levi_support(&target, &g, c).map_err(|e| e.to_string())?;
            ensure!(v.is_accept() == oracle_ok, "classifier and oracle disagree on {c:?}: {v:?}");
            if terms != 3 {
                ensure!(
                    matches!(v, LeviVerdict::Reject { reason: Rejection::CountMismatch { .. }, .. }),
                    "count {terms} not rejected by count: {v:?}"
                );
            } else if c.blocks.is_empty() {
                ensure!(matches!(v, LeviVerdict::Reject { reason: Rejection::Cuspidal, .. }), "r=0 cell not cuspidal: {v:?}");
            }
            if oracle_ok {
                accepted.push(c.clone());
            }
        }
        ensure!(accepted.len() == 1, "{} accepted candidates for {target}", accepted.len());
        let c = &accepted[0];
        ensure!(
            c.blocks.len() == 1 && c.blocks[0].record.label == "pi" && c.blocks[0].shift == q(1, 2),
            "accepted {c:?}"
        );

        // r = 0 with three cuspidal terms: the target itself as cuspidal datum.
        let cusp = LeviCandidate { blocks: vec![], core: target.clone() };
        let v = classify_levi_support(&target, &g, &cusp).map_err(|e| e.to_string())?;
        ensure!(matches!(v, LeviVerdict::Reject { reason: Rejection::Cuspidal, .. }), "r=0, sum 3 gave {v:?}");
        match classify_levi_support(&target, &g, c).map_err(|e| e.to_string())? {
            LeviVerdict::Accept { s, .. } if s == q(1, 2) => {}
            other => return Err(format!("r=1 gave {other:?}")),
        }
        lines.push(format!("{target}: 1 of {}", family.len()));
    }
    Ok(lines.join("; "))
}

// ---------------------------------------------------------------------------
// 8. Pole dichotomy
// ---------------------------------------------------------------------------

fn criterion_pole_table() -> Outcome {
    let mut cells = 0;
    // (ambient, rho, second factor that can have a pole at 1 given the sign of pi)
    let cases = [
        (GroupDescriptor::Sp { n: 3 }, CuspidalRecord::new("rho", 3).self_dual(SelfDualType::Orthogonal), SelfDualType::Symplectic),
        (GroupDescriptor::SOodd { n: 3 }, CuspidalRecord::new("rho", 2).self_dual(SelfDualType::Symplectic), SelfDualType::Orthogonal),
    ];
    for (g, rho, poled) in cases {
        for sign in [SelfDualType::Symplectic, SelfDualType::Orthogonal] {
            let pi = CuspidalRecord::new("pi", 2).self_dual(sign);
            let quot = constant_term_quotient(&g, &pi, &rho).map_err(|e| e.to_string())?;
            let ledger = default_ledger(&pi, &rho).map_err(|e| e.to_string())?;
            for central in [0u32, 1, 2] {
                // Order at 1/2 of L(s, pi x rho) R(2s) / L(s+1, pi x rho) R(2s+1):
                // the central order, a simple pole of R at 1 exactly when
                // sign(pi) matches R, nothing at 3/2 or 2.
                let order = central as i64 - i64::from(sign == poled);
                let d = pole_at_half(&quot, &ledger, central).map_err(|e| e.to_string())?;
                ensure!(d.order == order, "order {} vs {order} for {g}, {sign:?}, central {central}", d.order);
                ensure!(d.has_pole == (order < 0), "pole decision wrong for {g}, {sign:?}, central {central}");
                let want = sign == poled && central == 0;
                ensure!(d.has_pole == want, "dichotomy cell ({sign:?}, {central}) in {g}");
                cells += 1;
            }
        }
    }
    Ok(format!("{cells} cells"))
}

// ---------------------------------------------------------------------------
// 9. Normalization factorization
// ---------------------------------------------------------------------------

type Key = (String, Vec<String>, i64, Q);

fn key(kind: LKind, args: Vec<String>, alpha: i64, beta: Q) -> Key {
    (kind.to_string(), args, alpha, beta)
}

/// Numerators and denominators of L(s, π × ρ) L(2s, π, R) / L(s+1, π × ρ) L(2s+1, π, R)
/// with π = ⊕ π_i|·|^{a_i}, ρ = ρ′ ⊕ ⊕ (ρ_j|·|^{b_j} ⊕ dual), expanded constituent by constituent.
fn four_factor(pi: &QuasiTemperedGL, rho: &QuasiTemperedSelfdual, kind: SecondKind) -> (Vec<Key>, Vec<Key>) {
    let unitary = matches!(kind, SecondKind::Asai(_));
    let second = match kind {
        SecondKind::Wedge2 => LKind::Wedge2,
        SecondKind::Sym2 => LKind::Sym2,
        SecondKind::Asai(e) => LKind::Asai(e),
    };
    let dual = |l: &str| format!("{l}^v");
    let conj = |l: &str| format!("c({l})");
    let core = rho.core_label();
    // Constituents of ρ (or of its dual, for unitary groups) with their exponents.
    let mut parts: Vec<(String, Q)> = vec![(if unitary { dual(&core) } else { core.clone() }, Q::zero())];
    for p in rho.paired_parts() {
        let l = &p.ds.label;
        if unitary {
            parts.push((dual(l), -p.b));
            parts.push((conj(l), p.b));
        } else {
            parts.push((l.clone(), p.b));
            parts.push((dual(l), -p.b));
        }
    }
    let (mut num, mut den) = (Vec::new(), Vec::new());
    let segs = pi.segments();
    for x in segs {
        for (l, e) in &parts {
            let args = vec![x.ds.label.clone(), l.clone()];
            num.push(key(LKind::Rankin, args.clone(), 1, x.a + e));
            den.push(key(LKind::Rankin, args, 1, x.a + e + Q::from_integer(1)));
        }
    }
    for (i, x) in segs.iter().enumerate() {
        num.push(key(second, vec![x.ds.label.clone()], 2, x.a * 2));
        den.push(key(second, vec![x.ds.label.clone()], 2, x.a * 2 + Q::from_integer(1)));
        for y in &segs[i + 1..] {
            let other = if unitary { conj(&y.ds.label) } else { y.ds.label.clone() };
            let args = vec![x.ds.label.clone(), other];
            num.push(key(LKind::Rankin, args.clone(), 2, x.a + y.a));
            den.push(key(LKind::Rankin, args, 2, x.a + y.a + Q::from_integer(1)));
        }
    }
    num.sort();
    den.sort();
    (num, den)
}

/// Infimum of Re(αs + offset) on Re(s) = 1/2 over the closure of the
/// exponent box, computed corner by corner.
fn corner_infimum(f: &normalizer::ElemFactor, t: usize, u: usize) -> Q {
    let mut best: Option<Q> = None;
    for mask in 0..(1u32 << (t + u)) {
        let a: Vec<Q> = (0..t).map(|i| if mask >> i & 1 == 1 { q(1, 2) } else { q(-1, 2) }).collect();
        let b: Vec<Q> = (0..u).map(|j| if mask >> (t + j) & 1 == 1 { q(1, 2) } else { Q::zero() }).collect();
        let v = Q::from_integer(f.alpha) * q(1, 2) + f.offset.eval(&a, &b);
        best = Some(best.map_or(v, |x: Q| x.min(v)));
    }
    best.expect("at least one corner")
}

fn criterion_normalization() -> Outcome {
    let mut cases = 0;
    let kinds = [SecondKind::Wedge2, SecondKind::Sym2, SecondKind::Asai(1), SecondKind::Asai(-1)];
    for t in 1..=4usize {
        for u in 0..=4usize {
            let pi = QuasiTemperedGL::new(
                (0..t)
                    .map(|i| Segment { ds: DiscreteLabel::new(&format!("pi{}", i + 1), 1, 1 + i % 2), a: q(3, 7) - q(2 * i as i64, 9) })
                    .collect(),
            )
            .map_err(|e| e.to_string())?;
            let rho = QuasiTemperedSelfdual::new(
                vec![DiscreteLabel::new("r0", 1, 1)],
                (0..u)
                    .map(|j| PairedPart { ds: DiscreteLabel::new(&format!("rho{}", j + 1), 1, 1), b: q(1, 11) + q(j as i64, 10) })
                    .collect(),
            )
            .map_err(|e| e.to_string())?;
            let a: Vec<Q> = pi.segments().iter().map(|s| s.a).collect();
            let b: Vec<Q> = rho.paired_parts().iter().map(|p| p.b).collect();
            for kind in kinds {
                let ratios = normalizer::factor_normalization(&pi, &rho, kind);
                let mut num: Vec<Key> = Vec::new();
                let mut den: Vec<Key> = Vec::new();
                for r in &ratios {
                    let n = r.numerator.evaluate(&a, &b);
                    let d = r.denominator.evaluate(&a, &b);
                    num.push(key(n.kind, n.args, n.arg.alpha, n.arg.beta));
                    den.push(key(d.kind, d.args, d.arg.alpha, d.arg.beta));
                }
                num.sort();
                den.sort();
                let (wn, wd) = four_factor(&pi, &rho, kind);
                ensure!(num == wn && den == wd, "factor multiset differs from r(s) at t={t}, u={u}, {kind:?}");
                ensure!(normalizer::verify_factorization(&pi, &rho, kind), "verify_factorization false at t={t}, u={u}");
                ensure!(normalizer::verify_wedge_expansion(&pi, kind), "wedge expansion false at t={t}");

                let classes = normalizer::classify_holomorphy(&ratios).map_err(|e| e.to_string())?;
                let mut expected: BTreeSet<String> = BTreeSet::new();
                for i in 1..=t {
                    for j in 1..=u {
                        let label = pi.segments()[i - 1].ds.label.clone();
                        expected.insert(format!("L(s+a{i}-b{j}, {label} x rho{j}^v, rankin)"));
                    }
                }
                let mut flagged = BTreeSet::new();
                for (c, f) in classes.iter().zip(ratios.iter().flat_map(|r| [&r.numerator, &r.denominator])) {
                    let inf = corner_infimum(f, t, u);
                    let has_vars = !(f.offset.a.is_empty() && f.offset.b.is_empty());
                    let candidate = inf.is_negative() || (inf.is_zero() && !has_vars);
                    let is_candidate = c.status == HoloStatus::PoleCandidate;
                    ensure!(is_candidate == candidate, "{} classified {:?}, corner infimum {inf}", c.factor, c.status);
                    ensure!(c.re_lower_bound == inf, "{} bound {} vs {inf}", c.factor, c.re_lower_bound);
                    if is_candidate {
                        ensure!(!c.in_denominator, "denominator {} flagged", c.factor);
                        flagged.insert(c.factor.clone());
                    }
                }
                ensure!(flagged == expected, "flagged {flagged:?}, wanted {expected:?}");
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (t, u, R) cells"))
}

// ---------------------------------------------------------------------------
// 10. Root-number sign
// ---------------------------------------------------------------------------

/// Symmetric multiset of the given degree: ±x pairs, plus 0 when the degree is odd.
fn symmetric(rng: &mut StdRng, degree: usize, half_odd: bool) -> Vec<Q> {
    let mut v = Vec::new();
    for _ in 0..degree / 2 {
        let k: i64 = rng.gen_range(0..5);
        let x = if half_odd { q(2 * k + 1, 2) } else { qi(k) };
        v.push(x);
        v.push(-x);
    }
    if degree % 2 == 1 {
        v.push(Q::zero());
    }
    v
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut x = p.clone();
            x.insert(k, n - 1);
            out.push(x);
        }
    }
    out
}

/// i-exponent of the place-by-place product: I_a contributes i^{2a+1} at real
/// places, z^a z̄^{−a} contributes i^{|2a|} once per conjugate pair.
fn local_exponent(p: &InfChar, qq: &InfChar, emb: &EmbeddingSet) -> i64 {
    let mut e = 0;
    let mut seen = BTreeSet::new();
    for l in &emb.embeddings {
        let c = &emb.conj[l];
        if !seen.insert(l.clone()) || (c != l && !seen.insert(c.clone())) {
            continue;
        }
        for x in p.get(l) {
            for y in qq.get(l) {
                let a = *x + *y;
                if c == l {
                    if a.is_positive() {
                        e += (a * 2).to_integer() + 1;
                    }
                } else {
                    e += (a * 2).to_integer().abs();
                }
            }
        }
    }
    e.rem_euclid(4)
}

fn criterion_root_number() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let mut cases = 0;
    let mut perms_total = 0;
    while cases < 100 {
        let real = rng.gen_range(0..=3usize);
        let complex = rng.gen_range(0..=1usize) + usize::from(real == 0);
        let emb = EmbeddingSet::standard(real, complex);
        let r = rng.gen_range(1..=6usize);
        let t = rng.gen_range(1..=6usize);
        if r % 2 == 1 && t % 2 == 1 {
            continue;
        }
        if complex * r * t % 2 == 1 {
            continue;
        }
        let p_half_odd = r % 2 == 0;
        let mut per_p = BTreeMap::new();
        let mut per_q = BTreeMap::new();
        for l in &emb.embeddings {
            let c = &emb.conj[l];
            if let (Some(pc), Some(qc)) = (per_p.get(c).cloned(), per_q.get(c).cloned()) {
                let pc: Vec<Q> = pc;
                let qc: Vec<Q> = qc;
                per_p.insert(l.clone(), pc.iter().map(|x| -x).collect::<Vec<Q>>());
                per_q.insert(l.clone(), qc.iter().map(|x| -x).collect::<Vec<Q>>());
            } else {
                per_p.insert(l.clone(), symmetric(&mut rng, r, p_half_odd));
                per_q.insert(l.clone(), symmetric(&mut rng, t, !p_half_odd));
            }
        }
        let p = InfChar::new(per_p).map_err(|e| e.to_string())?;
        let qq = InfChar::new(per_q).map_err(|e| e.to_string())?;
        let rep = archimedean::root_number_selfdual(&p, &qq, &emb, r, t, true).map_err(|e| e.to_string())?;
        let e = local_exponent(&p, &qq, &emb);
        ensure!(e % 2 == 0, "local product i^{e} is not a sign (case {cases})");
        let want: i8 = if e == 0 { 1 } else { -1 };
        ensure!(rep.sign == want, "sign {} vs place-by-place {want} (case {cases})", rep.sign);
        ensure!(rep.invariant, "library reports non-invariance (case {cases})");
        let labels = &emb.embeddings;
        for pm in permutations(labels.len()) {
            let map: BTreeMap<String, String> =
                labels.iter().zip(&pm).map(|(l, &j)| (l.clone(), labels[j].clone())).collect();
            let commutes = labels.iter().all(|l| map[&emb.conj[l]] == emb.conj[&map[l]]);
            if !commutes {
                continue;
            }
            let a = AutOnEmbeddings::new(map).map_err(|e| e.to_string())?;
            let moved = archimedean::root_number_selfdual(&p.permuted(&a), &qq.permuted(&a), &emb, r, t, true)
                .map_err(|e| e.to_string())?;
            ensure!(moved.sign == rep.sign, "permutation changes the sign (case {cases})");
            ensure!(local_exponent(&p.permuted(&a), &qq.permuted(&a), &emb) == e, "oracle not invariant (case {cases})");
            perms_total += 1;
        }
        cases += 1;
    }

    let pow = |k: i64| k.rem_euclid(4) as u8;
    let pts = [q(1, 2), qi(1), q(3, 2), qi(2)];
    for a in pts {
        let two_a = (a * 2).to_integer();
        let got = eps_arch(ArchKind::RealInduced { a }).map_err(|e| e.to_string())?.exponent();
        ensure!(got == pow(two_a + 1), "eps(I_{a}) = i^{got}");
        let got = eps_arch(ArchKind::RealRestriction { a }).map_err(|e| e.to_string())?.exponent();
        ensure!(got == pow(2 * two_a), "eps of the restriction of I_{a} = i^{got}");
        for b in pts {
            let d = a - b;
            if !d.is_integer() {
                continue;
            }
            let got = eps_arch(ArchKind::Complex { a, b }).map_err(|e| e.to_string())?.exponent();
            ensure!(got == pow(d.abs().to_integer()), "eps(z^{a} zbar^{b}) = i^{got}");
        }
    }
    Ok(format!("{cases} random cases, {perms_total} permutations"))
}

// ---------------------------------------------------------------------------
// 11. Scenario library regression
// ---------------------------------------------------------------------------

fn library_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios")
}

fn criterion_scenarios() -> Outcome {
    let start = Instant::now();
    let dir = library_dir();
    let files = cli::library_files(&dir).map_err(|e| e.to_string())?;
    let mut targets: BTreeMap<String, usize> = BTreeMap::new();
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let s = Scenario::parse(&text).map_err(|e| e.to_string())?;
        ensure!(s.to_canonical() == text, "{} is not in canonical form", f.display());
        ensure!(Scenario::parse(&s.to_canonical()).map_err(|e| e.to_string())? == s, "{} round trip", f.display());
        let name = f.file_name().expect("file name");
        let expected = std::fs::read_to_string(dir.join("expected").join(name)).map_err(|e| e.to_string())?;
        let first = cli::run(Command::CheckScenario, Some(&s), &RunOptions::default()).to_json();
        let second = cli::run(Command::CheckScenario, Some(&s), &RunOptions::default()).to_json();
        ensure!(first == second, "{} differs between runs", f.display());
        ensure!(first == expected, "{} differs from its snapshot", f.display());
        let report: serde_json::Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
        ensure!(report["ok"] == true, "{} reports failure", f.display());
        let t = serde_json::to_value(s.theorem_target).map_err(|e| e.to_string())?;
        *targets.entry(t.as_str().unwrap_or("?").to_string()).or_default() += 1;
    }
    for t in ["A", "B", "C", "D", "E", "F"] {
        ensure!(targets.get(t).copied().unwrap_or(0) >= 1, "no scenario for target {t}");
    }
    ensure!(targets.get("appendix").copied().unwrap_or(0) >= 3, "fewer than 3 appendix scenarios");
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} scenarios byte-stable", files.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("weyl lengths", criterion_weyl_lengths),
        ("modular characters", criterion_modular_characters),
        ("asai identification", criterion_asai),
        ("nilradical grading", criterion_grading),
        ("eps_m identities", criterion_eps_identities),
        ("arthur round trip", criterion_arthur),
        ("classification uniqueness", criterion_classification),
        ("pole dichotomy", criterion_pole_table),
        ("normalization factorization", criterion_normalization),
        ("root-number sign", criterion_root_number),
        ("scenario regression", criterion_scenarios),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match res {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms} ms)", k + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e} ({ms} ms)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Test-side oracles. Group elements are matrices of the geometric
//! representation in floating point, keyed by rounded entries; nothing here
//! goes through the library's word engine, so agreement is a real check.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use coxkit::classify::{group_order, poincare_single, FiniteType, GroupOrder};
use coxkit::diagram::{parse_file, CoxeterDiagram, Label, Partition, Subset};
use coxkit::growth::{self, b_chain_factored, integer_taylor};
use coxkit::nerve;
use coxkit::series::MultiPoly;
use coxkit::words::WordEngine;

pub type Mat = Vec<f64>;

pub fn data(name: &str) -> String {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub fn diagram(name: &str) -> CoxeterDiagram {
    parse_file(&data(name)).unwrap().diagram
}

/// Diagram on `s0..s{n-1}` from `(i, j, m)` triples, `m = 0` meaning ∞.
pub fn build(n: usize, edges: &[(usize, usize, u32)], t: &[usize]) -> CoxeterDiagram {
    let mut d = CoxeterDiagram::new((0..n).map(|i| format!("s{i}")));
    for &(i, j, m) in edges {
        d.set_label(i, j, if m == 0 { Label::Infinite } else { Label::Finite(m) });
    }
    if t.is_empty() {
        d
    } else {
        d.with_t(Subset::of(t.iter().copied()))
    }
}

pub struct Geometric {
    pub n: usize,
    pub gens: Vec<Mat>,
}

impl Geometric {
    pub fn new(d: &CoxeterDiagram) -> Geometric {
        let n = d.rank();
        let b = |i: usize, j: usize| match (i == j, d.label(i, j)) {
            (true, _) => 1.0,
            (false, Label::Infinite) => -1.0,
            (false, Label::Finite(m)) => -(PI / m as f64).cos(),
        };
        let gens = (0..n)
            .map(|s| {
                let mut m = identity(n);
                for j in 0..n {
                    m[s * n + j] -= 2.0 * b(s, j);
                }
                m
            })
            .collect();
        Geometric { n, gens }
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        mat_mul(self.n, a, b)
    }

    pub fn word(&self, w: &[u8]) -> Mat {
        w.iter().fold(identity(self.n), |m, &s| self.mul(&m, &self.gens[s as usize]))
    }
}

pub fn identity(n: usize) -> Mat {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

pub fn mat_mul(n: usize, a: &Mat, b: &Mat) -> Mat {
    let mut c = vec![0.0; n * n];
    for i in 0..n {
        for k in 0..n {
            let x = a[i * n + k];
            if x != 0.0 {
                for j in 0..n {
                    c[i * n + j] += x * b[k * n + j];
                }
            }
        }
    }
    c
}

/// Equality up to rounding, relative to the size of the entries.
pub fn approx_eq(a: &Mat, b: &Mat) -> bool {
    let scale = a.iter().chain(b).fold(1.0f64, |m, x| m.max(x.abs()));
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-8 * scale)
}

/// Set of matrices up to rounding: bucketed by a fixed linear functional,
/// with neighbouring buckets probed so values near a bucket edge still meet.
#[derive(Default)]
pub struct MatSet {
    buckets: HashMap<i64, Vec<Mat>>,
    len: usize,
}

impl MatSet {
    fn bucket(m: &Mat) -> i64 {
        let l: f64 = m.iter().enumerate().map(|(i, x)| x * (1.0 + (i as f64 * 0.618_034).fract())).sum();
        (l * 1e3).floor() as i64
    }

    pub fn contains(&self, m: &Mat) -> bool {
        let b = MatSet::bucket(m);
        (b - 1..=b + 1).any(|k| self.buckets.get(&k).is_some_and(|v| v.iter().any(|x| approx_eq(x, m))))
    }

    /// Inserts `m`; false if an equal matrix was already present.
    pub fn insert(&mut self, m: &Mat) -> bool {
        if self.contains(m) {
            return false;
        }
        self.buckets.entry(MatSet::bucket(m)).or_default().push(m.clone());
        self.len += 1;
        true
    }

    pub fn len(&self) -> usize {
        self.len
    }
}

fn set_with(m: &Mat) -> MatSet {
    let mut s = MatSet::default();
    s.insert(m);
    s
}

/// Counts of elements by refined length, exponents indexed like
/// `phi.vars()`, up to word length `max_len`.
pub fn refined_bfs(d: &CoxeterDiagram, a: Subset, phi: &Partition, max_len: usize) -> BTreeMap<Vec<u32>, u64> {
    let g = Geometric::new(d);
    let k = phi.vars().len();
    let mut seen = set_with(&identity(g.n));
    let mut level = vec![(identity(g.n), vec![0u32; k])];
    let mut counts = BTreeMap::from([(vec![0u32; k], 1u64)]);
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (m, e) in &level {
            for s in a.iter() {
                let u = g.mul(m, &g.gens[s]);
                if seen.insert(&u) {
                    let mut e2 = e.clone();
                    e2[phi.class_of(s)] += 1;
                    *counts.entry(e2.clone()).or_default() += 1;
                    next.push((u, e2));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    counts
}

/// Ordinary length histogram of `W_a`.
pub fn length_bfs(d: &CoxeterDiagram, a: Subset, max_len: usize) -> Vec<u64> {
    let phi = Partition::constant(d.rank(), "x");
    let mut out = vec![0u64; max_len + 1];
    for (e, c) in refined_bfs(d, a, &phi, max_len) {
        out[e[0] as usize] += c;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// The reflections `w t w⁻¹` with `t ∈ T`, `w ∈ W_{S-T}`; the latter must
/// be finite. Returned with the index of their base generator.
pub fn closure_reflections(d: &CoxeterDiagram, t: Subset) -> Vec<(usize, Mat)> {
    let g = Geometric::new(d);
    let rest = d.all().difference(t);
    let id = identity(g.n);
    let mut seen = set_with(&id);
    let mut level = vec![(id.clone(), id.clone())];
    let mut elems = level.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for (w, winv) in &level {
            for s in rest.iter() {
                let u = g.mul(w, &g.gens[s]);
                if seen.insert(&u) {
                    next.push((u, g.mul(&g.gens[s], winv)));
                }
            }
        }
        assert!(seen.len() < 200_000, "S - T is not finite");
        elems.extend(next.iter().cloned());
        level = next;
    }
    let mut out = Vec::new();
    let mut refl = MatSet::default();
    for b in t.iter() {
        for (w, winv) in &elems {
            let r = g.mul(&g.mul(w, &g.gens[b]), winv);
            if refl.insert(&r) {
                out.push((b, r));
            }
        }
    }
    out
}

/// Length histogram of the group generated by `gens`.
pub fn subgroup_bfs(n: usize, gens: &[Mat], max_len: usize) -> Vec<u64> {
    let id = identity(n);
    let mut seen = set_with(&id);
    let mut level = vec![id];
    let mut counts = vec![1u64];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for m in &level {
            for g in gens {
                let u = mat_mul(n, m, g);
                if seen.insert(&u) {
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        counts.push(next.len() as u64);
        level = next;
    }
    counts
}

/// f-polynomial of the commutation graph of the closure reflections,
/// one variable per class of `T` under `phi`, as exponent → count.
pub fn clique_oracle(d: &CoxeterDiagram, t: Subset, phi: &Partition) -> BTreeMap<Vec<u32>, u64> {
    let refl = closure_reflections(d, t);
    let n = d.rank();
    let vars = nerve::t_vars(phi, t);
    let var_of: Vec<usize> = refl
        .iter()
        .map(|(b, _)| vars.iter().position(|v| v == phi.var_of(*b)).unwrap())
        .collect();
    let k = refl.len();
    let commute: Vec<Vec<bool>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| i != j && approx_eq(&mat_mul(n, &refl[i].1, &refl[j].1), &mat_mul(n, &refl[j].1, &refl[i].1)))
                .collect()
        })
        .collect();
    fn grow(
        commute: &[Vec<bool>],
        var_of: &[usize],
        cand: &[usize],
        exps: &mut Vec<u32>,
        out: &mut BTreeMap<Vec<u32>, u64>,
    ) {
        *out.entry(exps.clone()).or_default() += 1;
        for (pos, &j) in cand.iter().enumerate() {
            let rest: Vec<usize> = cand[pos + 1..].iter().copied().filter(|&l| commute[j][l]).collect();
            exps[var_of[j]] += 1;
            grow(commute, var_of, &rest, exps, out);
            exps[var_of[j]] -= 1;
        }
    }
    let mut out = BTreeMap::new();
    let all: Vec<usize> = (0..k).collect();
    grow(&commute, &var_of, &all, &mut vec![0; vars.len()], &mut out);
    out
}

pub fn poly_counts(p: &MultiPoly) -> BTreeMap<Vec<u32>, u64> {
    p.terms()
        .map(|(e, c)| {
            assert!(c.is_integer());
            (e.clone(), u64::try_from(c.to_integer()).expect("nonnegative count"))
        })
        .collect()
}

pub fn ints(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

pub fn random_word(rng: &mut impl Rng, rank: usize, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.random_range(0..rank) as u8).collect()
}

/// Inserts `u u⁻¹` for a random `u` at a random position: same element.
pub fn scramble(rng: &mut impl Rng, rank: usize, w: &[u8]) -> Vec<u8> {
    let n = rng.random_range(1..6);
    let u = random_word(rng, rank, n);
    let at = rng.random_range(0..=w.len());
    let mut out = w[..at].to_vec();
    out.extend(&u);
    out.extend(u.iter().rev());
    out.extend(&w[at..]);
    out
}

// Property suite, shared by the property tests and the acceptance gate.
// Each returns a one-line summary or the first disagreement.

pub type Outcome = Result<String, String>;

/// Closure series of B2, B3, D∞, A1⊔A1 by specialization, by the
/// f-substitution and by breadth-first search over the reflections.
pub fn three_routes() -> Outcome {
    const LEN: usize = 8;
    for name in ["b2.cox", "b3.cox", "dinf.cox", "a1a1.cox"] {
        let d = diagram(name);
        let t = d.t_set().unwrap();
        let phi = d.partition();
        let special = growth::closure_growth_by_specialization(&d).map_err(|e| format!("{name}: {e}"))?;
        let f = nerve::f_closure(&d, t, &phi).map_err(|e| format!("{name}: {e}"))?;
        let via_f = growth::growth_from_f(&f.poly).map_err(|e| format!("{name}: {e}"))?;
        if special.closure.series != via_f.series {
            return Err(format!("{name}: {} != {}", special.closure.series, via_f.series));
        }
        let gens: Vec<Mat> = closure_reflections(&d, t).into_iter().map(|(_, m)| m).collect();
        let mut bfs = subgroup_bfs(d.rank(), &gens, LEN);
        bfs.resize(LEN + 1, 0);
        let taylor = integer_taylor(&special.closure.series, "x", LEN).map_err(|e| e.to_string())?;
        if taylor != ints(&bfs) {
            return Err(format!("{name}: series {taylor:?} but search {bfs:?}"));
        }
    }
    Ok("B2, B3, D∞, A1⊔A1: specialization = f-substitution = search".into())
}

/// Every diagram of rank at most `max_rank` with a right-angled closure and
/// finite `W_{S-T}` (labels up to 6 inside `S - T`), up to isomorphism.
pub fn right_angled_closure_diagrams(max_rank: usize) -> Vec<CoxeterDiagram> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        for nt in 1..=n {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let options: Vec<&[u32]> = pairs
                .iter()
                .map(|&(i, j)| match (i < nt, j < nt) {
                    (true, true) => &[2, 0][..],
                    (true, false) => &[2, 4, 0][..],
                    _ => &[2, 3, 4, 5, 6][..],
                })
                .collect();
            let total: usize = options.iter().map(|o| o.len()).product();
            let perms: Vec<Vec<usize>> = permutations(nt)
                .iter()
                .flat_map(|pt| {
                    permutations(n - nt)
                        .into_iter()
                        .map(move |pr| pt.iter().copied().chain(pr.iter().map(|&r| r + nt)).collect())
                })
                .collect();
            // Canonical form: the smallest label vector over relabellings
            // that keep T in front.
            let mut classes: Vec<(Vec<u8>, usize)> = (0..total)
                .into_par_iter()
                .filter_map(|code| {
                    let mut c = code;
                    let mut lab = vec![0u8; n * n];
                    for (&(i, j), o) in pairs.iter().zip(&options) {
                        let v = o[c % o.len()] as u8;
                        c /= o.len();
                        lab[i * n + j] = v;
                        lab[j * n + i] = v;
                    }
                    let mine: Vec<u8> = pairs.iter().map(|&(i, j)| lab[i * n + j]).collect();
                    let canonical = perms.iter().all(|p| {
                        let v = pairs.iter().map(|&(i, j)| lab[p[i] * n + p[j]]);
                        v.cmp(mine.iter().copied()) != std::cmp::Ordering::Less
                    });
                    canonical.then_some((mine, code))
                })
                .collect();
            classes.sort();
            out.extend(classes.into_par_iter().filter_map(|(labels, _)| {
                let edges: Vec<(usize, usize, u32)> = pairs
                    .iter()
                    .zip(&labels)
                    .filter(|(_, &m)| m != 2)
                    .map(|(&(i, j), &m)| (i, j, m as u32))
                    .collect();
                let t: Vec<usize> = (0..nt).collect();
                let d = build(n, &edges, &t);
                let rest = d.all().difference(d.t_set().unwrap());
                matches!(group_order(&d, rest), GroupOrder::Finite(_)).then_some(d)
            }).collect::<Vec<_>>());
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// Largest reflection count for the geometric clique oracle.
pub const GEOMETRIC_CLIQUE_CAP: usize = 400;

/// `f_closure` on every right-angled-closure diagram of rank at most
/// `max_rank`: equal to the library clique sum within its generator cap,
/// equal to the geometric clique count within [`GEOMETRIC_CLIQUE_CAP`], and
/// with linear coefficients counting the closure reflections everywhere.
pub fn nerve_brute_force(max_rank: usize) -> Outcome {
    let diagrams = right_angled_closure_diagrams(max_rank);
    let results: Vec<Result<(bool, bool), String>> = diagrams
        .par_iter()
        .map(|d| {
            let t = d.t_set().unwrap();
            let phi = nerve::per_generator_partition(d, t);
            let name = || d.to_dsl().replace('\n', "; ");
            let f = nerve::f_closure(d, t, &phi).map_err(|e| format!("{}: {e}", name()))?;
            let refl = closure_reflections(d, t);
            let counts = poly_counts(&f.poly);
            let linear: u64 = counts.iter().filter(|(e, _)| e.iter().sum::<u32>() == 1).map(|(_, c)| c).sum();
            if linear != refl.len() as u64 {
                return Err(format!("{}: {linear} vertices but {} reflections", name(), refl.len()));
            }
            let brute = refl.len() <= nerve::DEFAULT_NERVE_CAP;
            if brute {
                let b = nerve::brute_force_nerve(d, t, &phi, nerve::DEFAULT_NERVE_CAP)
                    .map_err(|e| format!("{}: {e}", name()))?;
                if f != b {
                    return Err(format!("{}: f {} but clique sum {}", name(), f.poly, b.poly));
                }
            }
            let geometric = refl.len() <= GEOMETRIC_CLIQUE_CAP;
            if geometric && counts != clique_oracle(d, t, &phi) {
                return Err(format!("{}: f {} disagrees with the clique oracle", name(), f.poly));
            }
            Ok((brute, geometric))
        })
        .collect();
    let (mut brute, mut geometric) = (0, 0);
    for r in results {
        let (b, g) = r?;
        brute += b as usize;
        geometric += g as usize;
    }
    Ok(format!(
        "{} diagrams of rank <= {max_rank}: f = clique sum on {brute} within the generator cap, \
         = geometric cliques on {geometric}, vertex count = reflections on all",
        diagrams.len()
    ))
}

/// Two-variable `B_k` series against refined search, `k <= 4`.
pub fn b_chain_closed_form() -> Outcome {
    for k in 1..=4usize {
        let mut edges = vec![];
        if k > 1 {
            edges.push((0, 1, 4));
        }
        for i in 1..k.saturating_sub(1) {
            edges.push((i, i + 1, 3));
        }
        let d = build(k, &edges, &[]);
        let assignment: Vec<&str> = (0..k).map(|i| if i == 0 { "x" } else { "x0" }).collect();
        let phi = Partition::from_assignment(&assignment);
        let closed = b_chain_factored(k as u32, "x", "x0").product();
        let mut bfs = refined_bfs(&d, d.all(), &phi, 100);
        // `product()` is over [x, x0]; align the search exponents to it.
        let order: Vec<usize> = ["x", "x0"]
            .iter()
            .map(|v| phi.vars().iter().position(|w| w == v).unwrap_or(usize::MAX))
            .collect();
        bfs = bfs
            .into_iter()
            .map(|(e, c)| (order.iter().map(|&i| if i == usize::MAX { 0 } else { e[i] }).collect(), c))
            .collect();
        let closed = poly_counts(&closed.aligned(&["x", "x0"]));
        if closed != bfs {
            return Err(format!("B{k}: closed form {closed:?} but search {bfs:?}"));
        }
    }
    Ok("B1..B4 two-variable closed form = refined search".into())
}

/// Every finite type of rank <= 3 (irreducible or not) and I2(m), m <= 8.
pub fn finite_small_diagrams() -> Vec<(String, CoxeterDiagram)> {
    let mut out = vec![
        ("A1".to_string(), build(1, &[], &[])),
        ("A1xA1".into(), build(2, &[], &[])),
        ("A1xA1xA1".into(), build(3, &[], &[])),
        ("A3".into(), build(3, &[(0, 1, 3), (1, 2, 3)], &[])),
        ("B3".into(), build(3, &[(0, 1, 4), (1, 2, 3)], &[])),
        ("H3".into(), build(3, &[(0, 1, 5), (1, 2, 3)], &[])),
    ];
    for m in 3..=8 {
        out.push((format!("I2({m})"), build(2, &[(0, 1, m)], &[])));
        out.push((format!("I2({m})xA1"), build(3, &[(0, 1, m)], &[])));
    }
    out
}

pub fn poincare_vs_search() -> Outcome {
    let all = finite_small_diagrams();
    for (name, d) in &all {
        let p = poincare_single(d, d.all(), "x").map_err(|e| format!("{name}: {e}"))?;
        let coeffs: Vec<BigInt> = p.int_coefficients().map_err(|e| e.to_string())?;
        let bfs = length_bfs(d, d.all(), 100);
        if coeffs != ints(&bfs) {
            return Err(format!("{name}: poincare {coeffs:?} but search {bfs:?}"));
        }
    }
    Ok(format!("{} finite types: Poincaré polynomial = length histogram", all.len()))
}

/// Diagrams for the word-problem checks: finite, affine and hyperbolic,
/// on both reduction paths.
pub fn word_test_diagrams() -> Vec<(String, CoxeterDiagram, usize)> {
    vec![
        ("A3".into(), build(3, &[(0, 1, 3), (1, 2, 3)], &[]), 24),
        ("B3".into(), build(3, &[(0, 1, 4), (1, 2, 3)], &[]), 24),
        ("H3".into(), build(3, &[(0, 1, 5), (1, 2, 3)], &[]), 20),
        ("I2(7)".into(), build(2, &[(0, 1, 7)], &[]), 20),
        ("affine A2".into(), diagram("affine_a2.cox"), 20),
        ("(2,3,7) triangle".into(), build(3, &[(0, 1, 3), (1, 2, 7)], &[]), 14),
        ("D∞ x A1".into(), build(3, &[(0, 1, 0)], &[]), 20),
        ("ten generators".into(), diagram("example_87.cox"), 10),
    ]
}

/// Idempotence, scramble invariance and agreement with the geometric
/// representation on 10³ random words per diagram; where both reduction
/// paths apply they must agree letter for letter.
pub fn word_scramble() -> Outcome {
    let words = 1000;
    let diagrams = word_test_diagrams();
    let checked: Result<Vec<()>, String> = diagrams
        .par_iter()
        .map(|(name, d, max_len)| {
            let mut rng = ChaCha8Rng::seed_from_u64(d.rank() as u64 * 7919 + *max_len as u64);
            let g = Geometric::new(d);
            let tits = WordEngine::tits(d);
            let fast = WordEngine::new(d);
            for _ in 0..words {
                let len = rng.random_range(0..=*max_len);
                let w = random_word(&mut rng, d.rank(), len);
                let nf = tits.reduce(&w);
                if tits.reduce(nf.word()) != nf {
                    return Err(format!("{name}: reduce not idempotent on {w:?}"));
                }
                let sc = scramble(&mut rng, d.rank(), &w);
                if tits.reduce(&sc) != nf {
                    return Err(format!("{name}: {w:?} and {sc:?} reduce differently"));
                }
                if fast.uses_lattice() && fast.reduce(&w) != nf {
                    return Err(format!("{name}: lattice and braid reduction differ on {w:?}"));
                }
                if !approx_eq(&g.word(nf.word()), &g.word(&w)) {
                    return Err(format!("{name}: normal form of {w:?} is a different element"));
                }
            }
            Ok(())
        })
        .collect();
    checked?;
    Ok(format!("{} diagrams x {words} random words: idempotent, scramble-invariant", diagrams.len()))
}

/// Runs `f` and fails it when it exceeds `budget` seconds.
pub fn timed(budget: f64, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let r = f()?;
    let secs = start.elapsed().as_secs_f64();
    if secs > budget {
        Err(format!("{r} but took {secs:.1} s (budget {budget} s)"))
    } else {
        Ok(format!("{r} ({secs:.2} s)"))
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn finite_type_name(t: FiniteType) -> String {
    t.to_string()
}

//! The normal closure `W̄_T` of a standard parabolic subgroup.
//!
//! When every label between `T` and `S - T` is even or infinite, deleting
//! `T`-letters is a homomorphism `φ_T: W → W_{S-T}` whose kernel is the
//! normal closure. The kernel is again a Coxeter group, generated by the
//! conjugates `w t w⁻¹` with `t ∈ T` and `w ∈ W_{S-T}`. Each such
//! generator is stored canonically as `(t, w)` with `w` the shortest
//! element of `w · W_{t^⊥ - T}`.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::is_finite;
use crate::diagram::{CoxeterDiagram, Label, Subset};
use crate::words::{Element, WordEngine, WordsError};

/// Default bound on generator pairs for materializing the closure matrix.
pub const DEFAULT_PAIR_LIMIT: usize = 1_000_000;

#[derive(Clone, Debug, Error, PartialEq, Eq, Serialize)]
#[error("m({t}, {s}) = {label} is odd; the odd-conjugacy closure of T is {{{}}}", suggested.join(", "))]
pub struct HypothesisViolation {
    pub t: String,
    pub s: String,
    pub label: String,
    pub suggested: Vec<String>,
}

#[derive(Debug, Error)]
pub enum ClosureError {
    #[error("no generator set T declared")]
    NoT,
    #[error(transparent)]
    Hypothesis(#[from] HypothesisViolation),
    #[error("W_(S-T) is infinite, so the closure has infinitely many generators")]
    InfiniteComplement,
    #[error("{pairs} generator pairs exceed the matrix limit of {limit}")]
    TooManyPairs { pairs: usize, limit: usize },
    #[error("word is not in the kernel of the deletion map (image {0})")]
    NotInKernel(String),
    #[error(transparent)]
    Words(#[from] WordsError),
}

/// The reflection `rep · base · rep⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClosureGenerator {
    pub base: usize,
    pub rep: Element,
}

impl ClosureGenerator {
    /// `t@w` with the letters of `w` joined by dots (`t@e` for `w = 1`).
    pub fn name(&self, d: &CoxeterDiagram) -> String {
        let w = if self.rep.is_identity() {
            "e".to_string()
        } else {
            self.rep.names(d).join(".")
        };
        format!("{}@{}", d.name(self.base), w)
    }

    pub fn element(&self, engine: &WordEngine) -> Element {
        engine.conjugate(&self.rep, self.base)
    }
}

#[derive(Clone, Debug)]
pub struct ClosurePresentation {
    pub generators: Vec<ClosureGenerator>,
    /// Row-major labels, `Finite(1)` on the diagonal; absent above the
    /// pair limit.
    pub matrix: Option<Vec<Label>>,
    pub right_angled: bool,
}

impl ClosurePresentation {
    pub fn label(&self, i: usize, j: usize) -> Option<Label> {
        let n = self.generators.len();
        self.matrix.as_ref().map(|m| m[i * n + j])
    }
}

/// Every `t ∈ T`, `s ∉ T` must have `m_{st}` even or infinite.
pub fn check_hypothesis(d: &CoxeterDiagram, t: Subset) -> Result<(), HypothesisViolation> {
    for a in t.iter() {
        for s in d.all().difference(t).iter() {
            let m = d.label(a, s);
            if m.is_odd() {
                return Err(HypothesisViolation {
                    t: d.name(a).to_string(),
                    s: d.name(s).to_string(),
                    label: m.to_string(),
                    suggested: d.subset_names(d.odd_closure(t)).into_iter().map(String::from).collect(),
                });
            }
        }
    }
    Ok(())
}

fn declared_t(d: &CoxeterDiagram) -> Result<Subset, ClosureError> {
    d.t_set().ok_or(ClosureError::NoT)
}

fn prepare(d: &CoxeterDiagram, t: Subset) -> Result<Subset, ClosureError> {
    check_hypothesis(d, t)?;
    let rest = d.all().difference(t);
    if !is_finite(d, rest) {
        return Err(ClosureError::InfiniteComplement);
    }
    Ok(rest)
}

/// `t^⊥ ∩ (S - T)`: the part of `W_{S-T}` centralizing `t`.
pub fn centralizer_set(d: &CoxeterDiagram, t: usize, rest: Subset) -> Subset {
    d.perp(Subset::singleton(t)).intersection(rest)
}

/// Generators of the closure, grouped by base and ordered by
/// representative (ShortLex).
pub fn enumerate_generators(d: &CoxeterDiagram, t: Subset) -> Result<Vec<ClosureGenerator>, ClosureError> {
    let rest = prepare(d, t)?;
    let engine = WordEngine::new(d);
    let mut out = Vec::new();
    for base in t.iter() {
        for rep in engine.min_coset_reps(rest, centralizer_set(d, base, rest))? {
            out.push(ClosureGenerator { base, rep });
        }
    }
    Ok(out)
}

/// Label between two closure generators.
pub fn pair_label(
    engine: &WordEngine,
    rest: Subset,
    g1: &ClosureGenerator,
    g2: &ClosureGenerator,
) -> Label {
    let d = engine.diagram();
    let w = engine.multiply(&engine.inverse(&g1.rep), &g2.rep);
    let left = centralizer_set(d, g1.base, rest);
    let right = centralizer_set(d, g2.base, rest);
    let w = engine.min_double_coset(left, &w, right);
    match (g1.base == g2.base, w.len()) {
        (true, 0) => Label::Finite(1),
        (false, 0) => d.label(g1.base, g2.base),
        (true, 1) => d.label(w.word()[0] as usize, g1.base).half(),
        _ => Label::Infinite,
    }
}

/// Generators and, below `pair_limit` pairs, the full Coxeter matrix.
pub fn closure_matrix(d: &CoxeterDiagram, t: Subset, pair_limit: usize) -> Result<ClosurePresentation, ClosureError> {
    let rest = prepare(d, t)?;
    let generators = enumerate_generators(d, t)?;
    let n = generators.len();
    let pairs = n * n.saturating_sub(1) / 2;
    let right_angled = is_right_angled_closure(d, t);
    if pairs > pair_limit {
        return Ok(ClosurePresentation {
            generators,
            matrix: None,
            right_angled,
        });
    }
    let rows: Vec<Vec<Label>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let engine = WordEngine::new(d);
            (0..n)
                .map(|j| {
                    if i == j {
                        Label::Finite(1)
                    } else {
                        pair_label(&engine, rest, &generators[i], &generators[j])
                    }
                })
                .collect()
        })
        .collect();
    Ok(ClosurePresentation {
        generators,
        matrix: Some(rows.into_iter().flatten().collect()),
        right_angled,
    })
}

/// Matrix-free test that every closure label lies in `{2, ∞}`.
pub fn is_right_angled_closure(d: &CoxeterDiagram, t: Subset) -> bool {
    let rest = d.all().difference(t);
    let across = t.iter().all(|a| {
        rest.iter()
            .all(|s| matches!(d.label(a, s), Label::Finite(2) | Label::Finite(4) | Label::Infinite))
    });
    let within = t.iter().all(|a| {
        t.iter()
            .filter(|&b| b != a)
            .all(|b| matches!(d.label(a, b), Label::Finite(2) | Label::Infinite))
    });
    across && within
}

/// `φ_T(w)`: delete `T`-letters and reduce.
pub fn project_phi_t(d: &CoxeterDiagram, t: Subset, word: &[u8]) -> Element {
    let kept: Vec<u8> = word.iter().copied().filter(|&s| !t.contains(s as usize)).collect();
    WordEngine::new(d).reduce(&kept)
}

/// Expresses a kernel element as a product of closure generators.
pub fn rewrite_in_closure(d: &CoxeterDiagram, t: Subset, word: &[u8]) -> Result<Vec<ClosureGenerator>, ClosureError> {
    check_hypothesis(d, t)?;
    let rest = d.all().difference(t);
    let engine = WordEngine::new(d);
    let image = project_phi_t(d, t, word);
    if !image.is_identity() {
        return Err(ClosureError::NotInKernel(image.display(d).to_string()));
    }
    let mut prefix = Element::identity();
    let mut out = Vec::new();
    for &s in word {
        let s = s as usize;
        if t.contains(s) {
            let rep = engine.min_left_coset_rep(&prefix, centralizer_set(d, s, rest));
            out.push(ClosureGenerator { base: s, rep });
        } else {
            prefix = engine.right_mul(&prefix, s);
        }
    }
    Ok(out)
}

/// Multiplies closure generators out in the ambient group.
pub fn evaluate(engine: &WordEngine, gens: &[ClosureGenerator]) -> Element {
    gens.iter()
        .fold(Element::identity(), |acc, g| engine.multiply(&acc, &g.element(engine)))
}

/// The closure as a diagram with generators named `t@w`.
pub fn emit_diagram(d: &CoxeterDiagram, p: &ClosurePresentation) -> Option<CoxeterDiagram> {
    let n = p.generators.len();
    p.matrix.as_ref()?;
    if n > crate::diagram::MAX_RANK {
        return None;
    }
    let mut out = CoxeterDiagram::new(p.generators.iter().map(|g| g.name(d)));
    for i in 0..n {
        for j in i + 1..n {
            out.set_label(i, j, p.label(i, j).unwrap());
        }
    }
    Some(out)
}

/// Element counts of the closure by length in its own generators, found by
/// breadth-first search on ambient elements; at most `max_len` layers.
pub fn closure_growth_bfs(d: &CoxeterDiagram, t: Subset, max_len: usize) -> Result<Vec<u64>, ClosureError> {
    let engine = WordEngine::new(d);
    let gens: Vec<Element> = enumerate_generators(d, t)?.iter().map(|g| g.element(&engine)).collect();
    let mut seen: HashSet<Element> = HashSet::from([Element::identity()]);
    let mut level = vec![Element::identity()];
    let mut counts = vec![1u64];
    let cap = crate::words::oracle_cap();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &level {
            for g in &gens {
                let u = engine.multiply(w, g);
                if seen.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        if seen.len() > cap {
            return Err(WordsError::CapExceeded {
                cap,
                order: "unbounded".into(),
            }
            .into());
        }
        counts.push(next.len() as u64);
        level = next;
    }
    Ok(counts)
}

/// Checks, for a finite `W`, that contracting the `S - T` edges of the
/// Cayley graph of `W` yields the Cayley graph of the closure.
pub fn cayley_collapse_agrees(d: &CoxeterDiagram, t: Subset) -> Result<bool, ClosureError> {
    let engine = WordEngine::new(d);
    let all = engine.enumerate(d.all(), crate::words::oracle_cap())?;
    let kernel_part = |w: &Element| {
        let image = project_phi_t(d, t, w.word());
        engine.multiply(w, &engine.inverse(&image))
    };
    let index: HashMap<Element, usize> = {
        let mut ks: Vec<Element> = all.iter().map(kernel_part).collect();
        ks.sort();
        ks.dedup();
        ks.into_iter().enumerate().map(|(i, k)| (k, i)).collect()
    };
    let mut collapsed: HashSet<(usize, usize)> = HashSet::new();
    for w in &all {
        for s in t.iter() {
            let (a, b) = (index[&kernel_part(w)], index[&kernel_part(&engine.right_mul(w, s))]);
            collapsed.insert((a.min(b), a.max(b)));
        }
    }
    let gens: Vec<Element> = enumerate_generators(d, t)?.iter().map(|g| g.element(&engine)).collect();
    let mut cayley: HashSet<(usize, usize)> = HashSet::new();
    for (g, &i) in &index {
        for s in &gens {
            let Some(&j) = index.get(&engine.multiply(g, s)) else {
                return Ok(false);
            };
            cayley.insert((i.min(j), i.max(j)));
        }
    }
    Ok(collapsed == cayley)
}

/// Closure of the declared `T` (convenience for CLI paths).
pub fn closure_of_declared(d: &CoxeterDiagram, pair_limit: usize) -> Result<ClosurePresentation, ClosureError> {
    closure_matrix(d, declared_t(d)?, pair_limit)
}

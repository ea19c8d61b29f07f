//! f-polynomials of the nerve of a right-angled closure.
//!
//! Simplices of the nerve are commuting families of closure generators.
//! Up to the action of `W_{S-T}` each family is described by disjoint,
//! mutually perpendicular chains `Σ_t = (t, v2, ..., vk)` of type `B_k`,
//! one per active `t ∈ T`; its stabilizer is `W_{Σ0}` with
//! `Σ0 = (⋃ Σ_t)^⊥ - T`. Counting orbits by index gives the f-polynomial
//! from group orders alone.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{classify_component, finite_order, Classification, FiniteType};
use crate::closure::{check_hypothesis, closure_matrix, is_right_angled_closure, ClosureError, HypothesisViolation};
use crate::diagram::{CoxeterDiagram, FacePath, Label, Partition, Subset};
use crate::series::{MultiPoly, UniPoly};

/// Default bound on closure generators for the clique oracle.
pub const DEFAULT_NERVE_CAP: usize = 64;

#[derive(Debug, Error)]
pub enum NerveError {
    #[error("no generator set T declared")]
    NoT,
    #[error(transparent)]
    Hypothesis(#[from] HypothesisViolation),
    #[error("the closure is not right-angled")]
    NotRightAngled,
    #[error("W_(S-T) is infinite")]
    InfiniteComplement,
    #[error("bad link specification: {0}")]
    BadLinkSpec(String),
    #[error("not a valid family: {0}")]
    NotAFamily(String),
    #[error("{n} closure generators exceed the oracle cap of {cap}")]
    TooManyGenerators { n: usize, cap: usize },
    #[error("non-integral f-polynomial coefficient {0}")]
    NonIntegral(String),
    #[error(transparent)]
    Closure(#[from] ClosureError),
}

/// One orbit type of simplices: a `B_k` chain per active generator of `T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SigmaFamily {
    /// `(t, path)` sorted by `t`, each path starting at `t`.
    pub components: Vec<(usize, Vec<usize>)>,
    pub sigma0: Subset,
}

impl SigmaFamily {
    pub fn active(&self) -> Subset {
        Subset::of(self.components.iter().map(|(t, _)| *t))
    }

    pub fn support(&self) -> Subset {
        Subset::of(self.components.iter().flat_map(|(_, p)| p.iter().copied()))
    }

    pub fn k(&self, t: usize) -> usize {
        self.components
            .iter()
            .find(|(u, _)| *u == t)
            .map_or(0, |(_, p)| p.len())
    }

    /// Number of vertices of a simplex in this orbit.
    pub fn total_k(&self) -> usize {
        self.components.iter().map(|(_, p)| p.len()).sum()
    }

    pub fn path(&self, t: usize) -> Option<&[usize]> {
        self.components.iter().find(|(u, _)| *u == t).map(|(_, p)| p.as_slice())
    }

    /// Every component of `self` is a prefix of the matching one in `o`.
    pub fn is_contained_in(&self, o: &SigmaFamily) -> bool {
        self.components
            .iter()
            .all(|(t, p)| o.path(*t).is_some_and(|q| q.starts_with(p)))
    }

    pub fn describe(&self, d: &CoxeterDiagram) -> FamilyReport {
        FamilyReport {
            components: self
                .components
                .iter()
                .map(|(_, p)| p.iter().map(|&s| d.name(s).to_string()).collect())
                .collect(),
            sigma0: d.subset_names(self.sigma0).into_iter().map(String::from).collect(),
            total_k: self.total_k(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyReport {
    pub components: Vec<Vec<String>>,
    pub sigma0: Vec<String>,
    pub total_k: usize,
}

/// A nerve f-polynomial: integral, nonnegative, constant term 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FPolynomial {
    pub poly: MultiPoly,
}

impl FPolynomial {
    fn checked(poly: MultiPoly) -> Result<FPolynomial, NerveError> {
        for (_, c) in poly.terms() {
            if !c.is_integer() || c.is_negative() {
                return Err(NerveError::NonIntegral(c.to_string()));
            }
        }
        Ok(FPolynomial { poly })
    }

    pub fn vars(&self) -> &[String] {
        self.poly.vars()
    }

    /// All variables identified with `var`.
    pub fn diagonal(&self, var: &str) -> FPolynomial {
        FPolynomial {
            poly: self.poly.diagonal(var),
        }
    }

    /// Coefficients of a single-variable f-polynomial, by degree.
    pub fn coefficients(&self) -> Vec<BigInt> {
        let var = self.poly.used_vars().into_iter().next();
        match var {
            None => vec![self.poly.constant_term().to_integer()],
            Some(v) => self
                .poly
                .to_uni(&v)
                .expect("single-variable f-polynomial")
                .0
                .iter()
                .map(|c| c.to_integer())
                .collect(),
        }
    }

    pub fn to_uni(&self) -> UniPoly {
        UniPoly::new(self.coefficients().into_iter().map(BigRational::from_integer).collect())
    }

    /// Value with every variable set to `x`.
    pub fn eval_diagonal(&self, x: &BigRational) -> BigRational {
        self.to_uni_diag().eval(x)
    }

    fn to_uni_diag(&self) -> UniPoly {
        let d = self.diagonal("t");
        UniPoly::new(d.coefficients().into_iter().map(BigRational::from_integer).collect())
    }
}

fn declared_t(d: &CoxeterDiagram) -> Result<Subset, NerveError> {
    d.t_set().ok_or(NerveError::NoT)
}

fn prepare(d: &CoxeterDiagram, t: Subset) -> Result<BigUint, NerveError> {
    check_hypothesis(d, t)?;
    if !is_right_angled_closure(d, t) {
        return Err(NerveError::NotRightAngled);
    }
    finite_order(d, d.all().difference(t)).map_err(|_| NerveError::InfiniteComplement)
}

/// Whether `path` (starting at a `T` generator) spans a `B_k` chain with
/// the label-4 edge at its first vertex.
fn is_b_chain(d: &CoxeterDiagram, path: &[usize]) -> bool {
    let k = path.len();
    for i in 0..k {
        for j in i + 1..k {
            let want = match (i, j - i) {
                (0, 1) => Label::Finite(4),
                (_, 1) => Label::Finite(3),
                _ => Label::Finite(2),
            };
            if d.label(path[i], path[j]) != want {
                return false;
            }
        }
    }
    let expected = match k {
        1 => FiniteType::A(1),
        _ => FiniteType::B(k as u32),
    };
    classify_component(d, Subset::of(path.iter().copied())) == Classification::Finite(expected)
}

/// All chains `Σ_t` for one `t`, shortest first.
pub fn chains_from(d: &CoxeterDiagram, t: Subset, base: usize) -> Vec<Vec<usize>> {
    let rest = d.all().difference(t);
    let mut out = vec![vec![base]];
    let mut stack: Vec<Vec<usize>> = rest
        .iter()
        .filter(|&v| d.label(base, v) == Label::Finite(4))
        .map(|v| vec![base, v])
        .collect();
    while let Some(p) = stack.pop() {
        if !is_b_chain(d, &p) {
            continue;
        }
        let last = *p.last().unwrap();
        for v in rest.iter() {
            if !p.contains(&v) && d.label(last, v) == Label::Finite(3) {
                let mut q = p.clone();
                q.push(v);
                stack.push(q);
            }
        }
        out.push(p);
    }
    out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    out
}

fn perpendicular(d: &CoxeterDiagram, a: Subset, b: Subset) -> bool {
    a.intersection(b).is_empty() && a.iter().all(|x| b.iter().all(|y| d.label(x, y) == Label::Finite(2)))
}

/// All families, ordered by total size and then by components.
pub fn enumerate_sigma(d: &CoxeterDiagram, t: Subset) -> Result<Vec<SigmaFamily>, NerveError> {
    prepare(d, t)?;
    let bases: Vec<usize> = t.iter().collect();
    let options: Vec<Vec<Vec<usize>>> = bases.iter().map(|&b| chains_from(d, t, b)).collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(usize, Vec<usize>)> = Vec::new();
    fn walk(
        d: &CoxeterDiagram,
        t: Subset,
        bases: &[usize],
        options: &[Vec<Vec<usize>>],
        i: usize,
        chosen: &mut Vec<(usize, Vec<usize>)>,
        out: &mut Vec<SigmaFamily>,
    ) {
        if i == bases.len() {
            let support = Subset::of(chosen.iter().flat_map(|(_, p)| p.iter().copied()));
            out.push(SigmaFamily {
                components: chosen.clone(),
                sigma0: d.perp(support).difference(t),
            });
            return;
        }
        walk(d, t, bases, options, i + 1, chosen, out);
        let used = Subset::of(chosen.iter().flat_map(|(_, p)| p.iter().copied()));
        for p in &options[i] {
            if perpendicular(d, used, Subset::of(p.iter().copied())) {
                chosen.push((bases[i], p.clone()));
                walk(d, t, bases, options, i + 1, chosen, out);
                chosen.pop();
            }
        }
    }
    walk(d, t, &bases, &options, 0, &mut chosen, &mut out);
    out.sort_by(|a, b| (a.total_k(), &a.components).cmp(&(b.total_k(), &b.components)));
    Ok(out)
}

fn factorial(k: usize) -> BigInt {
    (1..=k as u64).map(BigInt::from).product()
}

/// `∏ φ(t)^{e_t} / e_t!` scaled by `index`.
fn family_term(
    phi: &Partition,
    vars: &[String],
    exps: &[(usize, usize)],
    index: &BigUint,
) -> MultiPoly {
    let mut e = vec![0u32; vars.len()];
    let mut denom = BigInt::one();
    for &(t, k) in exps {
        let v = vars.iter().position(|v| v == phi.var_of(t)).unwrap();
        e[v] += k as u32;
        denom *= factorial(k);
    }
    let c = BigRational::new(BigInt::from(index.clone()), denom);
    MultiPoly::monomial(vars, &e, c)
}

/// Variables `φ(t)`, `t ∈ T`, in partition order.
pub fn t_vars(phi: &Partition, t: Subset) -> Vec<String> {
    let used: BTreeSet<&str> = t.iter().map(|s| phi.var_of(s)).collect();
    phi.vars().iter().filter(|v| used.contains(v.as_str())).cloned().collect()
}

fn sum_terms(vars: &[String], terms: Vec<MultiPoly>) -> Result<FPolynomial, NerveError> {
    let total = terms.iter().fold(MultiPoly::zero(vars), |acc, p| &acc + p);
    FPolynomial::checked(total.aligned(vars))
}

/// The f-polynomial of the closure's nerve, `φ` read on `T`.
pub fn f_closure(d: &CoxeterDiagram, t: Subset, phi: &Partition) -> Result<FPolynomial, NerveError> {
    let order = prepare(d, t)?;
    let families = enumerate_sigma(d, t)?;
    let vars = t_vars(phi, t);
    let terms: Vec<MultiPoly> = families
        .par_iter()
        .map(|f| {
            let o0 = finite_order(d, f.sigma0).expect("subgroup of a finite group");
            let (index, r) = order.div_rem(&o0);
            assert!(r.is_zero(), "centralizer order must divide");
            let exps: Vec<(usize, usize)> = f.components.iter().map(|(t, p)| (*t, p.len())).collect();
            family_term(phi, &vars, &exps, &index)
        })
        .collect();
    sum_terms(&vars, terms)
}

/// The f-polynomial of the link of a simplex of type `sigma`.
pub fn f_link(d: &CoxeterDiagram, t: Subset, phi: &Partition, sigma: &SigmaFamily) -> Result<FPolynomial, NerveError> {
    let families = enumerate_sigma(d, t)?;
    if !families.contains(sigma) {
        return Err(NerveError::NotAFamily(format!("{:?}", sigma.describe(d).components)));
    }
    let base = finite_order(d, sigma.sigma0).expect("subgroup of a finite group");
    let vars = t_vars(phi, t);
    let terms: Vec<MultiPoly> = families
        .par_iter()
        .filter(|f| sigma.is_contained_in(f))
        .map(|f| {
            let o0 = finite_order(d, f.sigma0).expect("subgroup of a finite group");
            let (index, r) = base.div_rem(&o0);
            assert!(r.is_zero(), "centralizer order must divide");
            let exps: Vec<(usize, usize)> = f
                .components
                .iter()
                .map(|(t, p)| (*t, p.len() - sigma.k(*t)))
                .collect();
            family_term(phi, &vars, &exps, &index)
        })
        .collect();
    sum_terms(&vars, terms)
}

/// Clique sum over the commutation graph of the closure generators.
pub fn brute_force_nerve(d: &CoxeterDiagram, t: Subset, phi: &Partition, cap: usize) -> Result<FPolynomial, NerveError> {
    prepare(d, t)?;
    let p = closure_matrix(d, t, usize::MAX)?;
    let n = p.generators.len();
    if n > cap {
        return Err(NerveError::TooManyGenerators { n, cap });
    }
    let vars = t_vars(phi, t);
    let var_of: Vec<usize> = p
        .generators
        .iter()
        .map(|g| vars.iter().position(|v| v == phi.var_of(g.base)).unwrap())
        .collect();
    let adj: Vec<u64> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && p.label(i, j) == Some(Label::Finite(2)))
                .fold(0u64, |m, j| m | (1 << j))
        })
        .collect();
    let mut counts: std::collections::BTreeMap<Vec<u32>, i64> = Default::default();
    // Each clique is extended only by larger indices adjacent to all members.
    fn cliques(
        adj: &[u64],
        var_of: &[usize],
        cand: u64,
        exps: &mut Vec<u32>,
        counts: &mut std::collections::BTreeMap<Vec<u32>, i64>,
    ) {
        *counts.entry(exps.clone()).or_default() += 1;
        let mut c = cand;
        while c != 0 {
            let j = c.trailing_zeros() as usize;
            c &= c - 1;
            exps[var_of[j]] += 1;
            cliques(adj, var_of, adj[j] & c, exps, counts);
            exps[var_of[j]] -= 1;
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    cliques(&adj, &var_of, all, &mut vec![0; vars.len()], &mut counts);
    let poly = MultiPoly::from_terms(
        &vars,
        counts.into_iter().map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
    )
    .unwrap();
    FPolynomial::checked(poly)
}

/// Parses `t:k` items separated by commas; an ambiguous chain is pinned by
/// `t:k=v2.v3...` listing the vertices after `t`.
pub fn parse_link_spec(d: &CoxeterDiagram, t: Subset, spec: &str) -> Result<SigmaFamily, NerveError> {
    let bad = |m: String| NerveError::BadLinkSpec(m);
    let mut paths: Vec<FacePath> = Vec::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (head, explicit) = match item.split_once('=') {
            Some((h, p)) => (h, Some(p)),
            None => (item, None),
        };
        let (name, k) = head
            .split_once(':')
            .ok_or_else(|| bad(format!("`{item}` is not of the form t:k")))?;
        let k: usize = k.trim().parse().map_err(|_| bad(format!("bad size in `{item}`")))?;
        let base = d
            .index_of(name.trim())
            .filter(|&b| t.contains(b))
            .ok_or_else(|| bad(format!("`{name}` is not in T")))?;
        let candidates: Vec<Vec<usize>> = chains_from(d, t, base).into_iter().filter(|p| p.len() == k).collect();
        let path = match explicit {
            Some(p) => {
                let mut want = vec![base];
                for v in p.split('.').filter(|s| !s.is_empty()) {
                    want.push(d.index_of(v).ok_or_else(|| bad(format!("unknown generator `{v}`")))?);
                }
                candidates
                    .into_iter()
                    .find(|c| *c == want)
                    .ok_or_else(|| bad(format!("`{item}` is not a B-chain from {name}")))?
            }
            None => match candidates.len() {
                1 => candidates.into_iter().next().unwrap(),
                0 => return Err(bad(format!("no chain of size {k} from {name}"))),
                _ => {
                    let alts: Vec<String> = candidates
                        .iter()
                        .map(|c| c[1..].iter().map(|&s| d.name(s)).collect::<Vec<_>>().join("."))
                        .collect();
                    return Err(bad(format!("`{item}` is ambiguous; pin one of {}", alts.join(", "))));
                }
            },
        };
        paths.push(path.iter().map(|&s| d.name(s).to_string()).collect());
    }
    family_from_faces(d, t, &paths)
}

/// The family named by `face` lines (each a chain starting in `T`).
pub fn family_from_faces(d: &CoxeterDiagram, t: Subset, faces: &[FacePath]) -> Result<SigmaFamily, NerveError> {
    let mut components = Vec::new();
    for f in faces {
        let path: Vec<usize> = f
            .iter()
            .map(|n| d.index_of(n).ok_or_else(|| NerveError::NotAFamily(format!("unknown generator `{n}`"))))
            .collect::<Result<_, _>>()?;
        components.push((path[0], path));
    }
    components.sort();
    let support = Subset::of(components.iter().flat_map(|(_, p)| p.iter().copied()));
    let family = SigmaFamily {
        components,
        sigma0: d.perp(support).difference(t),
    };
    if !enumerate_sigma(d, t)?.contains(&family) {
        return Err(NerveError::NotAFamily(format!("{:?}", faces)));
    }
    Ok(family)
}

/// `f_closure` for the declared `T` with the default variable.
pub fn f_declared(d: &CoxeterDiagram) -> Result<FPolynomial, NerveError> {
    f_closure(d, declared_t(d)?, &d.partition())
}

/// One variable per generator of `T`, named after it.
pub fn per_generator_partition(d: &CoxeterDiagram, t: Subset) -> Partition {
    let assignment: Vec<String> = (0..d.rank())
        .map(|s| if t.contains(s) { d.name(s).to_string() } else { "x0".to_string() })
        .collect();
    Partition::from_assignment(&assignment)
}

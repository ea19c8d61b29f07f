//! Growth series: finite parabolics by product formulas, infinite groups by
//! Serre's alternating sum over finite parabolics, and the normal closure of
//! `W_T` by specializing the two-variable series at `x0 = 1`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::classify::{component_types, FiniteType};
use crate::closure::{check_hypothesis, HypothesisViolation};
use crate::diagram::{CoxeterDiagram, Label, Partition, Subset};
use crate::series::{rat, MultiPoly, RationalFn, SeriesError, UniPoly};
use crate::words::{oracle_cap, WordEngine, WordsError};

#[derive(Debug, Error)]
pub enum GrowthError {
    #[error("parabolic subgroup on {0:?} is infinite")]
    NotFinite(Vec<String>),
    #[error("parabolic subgroup on {0:?} is finite; use the product formula")]
    Finite(Vec<String>),
    #[error("no generator set T declared")]
    NoT,
    #[error(transparent)]
    Hypothesis(#[from] HypothesisViolation),
    #[error("W_(S-T) is infinite, so the closure has infinitely many generators")]
    InfiniteComplement,
    #[error("closure growth needs one variable on T and a different one on S-T")]
    BadPartition,
    #[error("Serre sum vanishes identically")]
    SerreZero,
    #[error(transparent)]
    Words(#[from] WordsError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Diagram(#[from] crate::diagram::DiagramError),
}

/// How a series was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    ProductFormula,
    Serre,
    Specialization,
    FSubstitution,
    BfsOracle,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthResult {
    pub series: RationalFn,
    pub route: Route,
    pub fingerprint: String,
}

/// Series of the normal closure together with the parabolic `W_T`.
#[derive(Clone, Debug)]
pub struct ClosureGrowth {
    pub closure: GrowthResult,
    /// Two-variable series `W_φ` before specialization.
    pub ambient: RationalFn,
    pub parabolic: RationalFn,
    pub complement_order: BigUint,
}

/// `Φ_e(var)`.
pub fn cyclotomic(var: &str, e: u32) -> MultiPoly {
    cyclotomic_uni(e).to_multi(var)
}

fn cyclotomic_uni(e: u32) -> UniPoly {
    let mut coeffs = vec![0i64; e as usize + 1];
    coeffs[0] = -1;
    coeffs[e as usize] = 1;
    let mut p = UniPoly::from_ints(&coeffs);
    for d in (1..e).filter(|d| e % d == 0) {
        p = p.div_rem(&cyclotomic_uni(d)).unwrap().0;
    }
    p
}

/// A polynomial kept as a product of named factors with multiplicities.
///
/// Factors are keyed by their printed form, so equal factors merge; two
/// distinct keys may still share a common divisor, in which case the
/// "lcm" below is merely a common multiple, which is all the Serre sum needs.
#[derive(Clone, Debug, Default)]
pub struct Factored {
    factors: BTreeMap<String, (MultiPoly, u32)>,
}

impl Factored {
    pub fn one() -> Factored {
        Factored::default()
    }

    pub fn push(&mut self, p: MultiPoly, mult: u32) {
        if p.is_constant() && p.constant_term().is_one() {
            return;
        }
        let key = p.to_string();
        self.factors.entry(key).or_insert((p, 0)).1 += mult;
    }

    pub fn times(&mut self, o: &Factored) {
        for (p, m) in o.factors.values() {
            self.push(p.clone(), *m);
        }
    }

    pub fn product(&self) -> MultiPoly {
        self.factors
            .values()
            .fold(MultiPoly::int(1), |acc, (p, m)| &acc * &p.pow(*m))
    }

    /// Largest multiplicity of each factor.
    pub fn lcm(&self, o: &Factored) -> Factored {
        let mut out = self.clone();
        for (k, (p, m)) in &o.factors {
            let e = out.factors.entry(k.clone()).or_insert((p.clone(), 0));
            e.1 = e.1.max(*m);
        }
        out
    }

    /// `self / sub`, which must divide factorwise.
    pub fn quotient(&self, sub: &Factored) -> Factored {
        let mut out = self.clone();
        for (k, (_, m)) in &sub.factors {
            let e = out.factors.get_mut(k).expect("factor missing from multiple");
            assert!(e.1 >= *m, "factor multiplicity underflow");
            e.1 -= m;
        }
        out.factors.retain(|_, (_, m)| *m > 0);
        out
    }

    /// Applies `f` to every factor (e.g. a specialization).
    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Factored {
        let mut out = Factored::one();
        for (p, m) in self.factors.values() {
            out.push(f(p), *m);
        }
        out
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }
}

fn q_integer_factored(var: &str, d: u32) -> Factored {
    let mut f = Factored::one();
    for e in (2..=d).filter(|e| d % e == 0) {
        f.push(cyclotomic(var, e), 1);
    }
    f
}

/// The generator at the label-4 end of a `B_k` chain, if `comp` is one and
/// that generator forms a class of its own with every other member in a
/// single second class.
fn b_chain_end(d: &CoxeterDiagram, comp: Subset, phi: &Partition) -> Option<(usize, usize)> {
    let k = comp.len();
    for u in comp.iter() {
        let nb = d.neighbours(u, comp);
        if nb.len() != 1 {
            continue;
        }
        let v = nb.first().unwrap();
        if d.label(u, v) != Label::Finite(4) {
            continue;
        }
        let cu = phi.class_of(u);
        let rest = comp.without(u);
        let cr = phi.class_of(v);
        if cu != cr && rest.iter().all(|s| phi.class_of(s) == cr) && (k == 2 || d.neighbours(v, comp).len() == 2) {
            return Some((u, cr));
        }
    }
    None
}

/// Two-variable `B_k` series: `∏_{i=1..k} [i]_{x0} (1 + x·x0^{i-1})`.
pub fn b_chain_factored(k: u32, x: &str, x0: &str) -> Factored {
    let mut f = Factored::one();
    for i in 1..=k {
        f.times(&q_integer_factored(x0, i));
        let mut e = vec![0u32; 2];
        e[0] = 1;
        e[1] = i - 1;
        let atom = &MultiPoly::one(&[x, x0]) + &MultiPoly::monomial(&[x, x0], &e, rat(1));
        f.push(atom.trimmed(), 1);
    }
    f
}

fn component_factored(
    d: &CoxeterDiagram,
    comp: Subset,
    ty: FiniteType,
    phi: &Partition,
) -> Result<Factored, GrowthError> {
    let classes: Vec<usize> = {
        let mut c: Vec<usize> = comp.iter().map(|s| phi.class_of(s)).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    if classes.len() == 1 {
        let var = &phi.vars()[classes[0]];
        let mut f = Factored::one();
        for deg in ty.degrees() {
            f.times(&q_integer_factored(var, deg));
        }
        return Ok(f);
    }
    if let FiniteType::B(k) = ty {
        if let Some((u, rest_class)) = b_chain_end(d, comp, phi) {
            return Ok(b_chain_factored(k, phi.var_of(u), &phi.vars()[rest_class]));
        }
    }
    let engine = WordEngine::new(d);
    let p = engine.growth_by_enumeration(comp, phi, oracle_cap())?;
    let mut f = Factored::one();
    f.push(p.trimmed(), 1);
    Ok(f)
}

fn finite_factored(
    d: &CoxeterDiagram,
    a: Subset,
    phi: &Partition,
    memo: &mut HashMap<Subset, Factored>,
) -> Result<Factored, GrowthError> {
    let types = component_types(d, a).ok_or_else(|| not_finite(d, a))?;
    let mut f = Factored::one();
    for (c, ty) in types {
        if !memo.contains_key(&c) {
            let g = component_factored(d, c, ty, phi)?;
            memo.insert(c, g);
        }
        f.times(&memo[&c]);
    }
    Ok(f)
}

fn not_finite(d: &CoxeterDiagram, a: Subset) -> GrowthError {
    GrowthError::NotFinite(d.subset_names(a).into_iter().map(String::from).collect())
}

/// `Σ_{w ∈ W_a} w_φ` for a finite parabolic `W_a`.
pub fn growth_finite_multi(d: &CoxeterDiagram, a: Subset, phi: &Partition) -> Result<MultiPoly, GrowthError> {
    d.check_allowable(phi)?;
    let f = finite_factored(d, a, phi, &mut HashMap::new())?;
    Ok(f.product().aligned(phi.vars()))
}

/// The terms `(-1)^{|F|} / (W_F)_φ` of Serre's sum, `F ⊆ a` finite.
pub fn serre_terms(d: &CoxeterDiagram, a: Subset, phi: &Partition) -> Result<Vec<(bool, Factored)>, GrowthError> {
    d.check_allowable(phi)?;
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    for f in a.subsets() {
        // Subsets of infinite parabolics are skipped by the finiteness test.
        if component_types(d, f).is_none() {
            continue;
        }
        let p = finite_factored(d, f, phi, &mut memo)?;
        out.push((f.len() % 2 == 1, p));
    }
    Ok(out)
}

/// A fraction whose denominator is kept factored.
#[derive(Clone, Debug)]
struct Frac {
    num: MultiPoly,
    den: Factored,
}

impl Frac {
    fn zero() -> Frac {
        Frac {
            num: MultiPoly::int(0),
            den: Factored::one(),
        }
    }

    fn add(self, o: Frac) -> Frac {
        if o.num.is_zero() {
            return self;
        }
        if self.num.is_zero() {
            return o;
        }
        let l = self.den.lcm(&o.den);
        let a = &self.num * &l.quotient(&self.den).product();
        let b = &o.num * &l.quotient(&o.den).product();
        Frac { num: &a + &b, den: l }
    }
}

/// `Σ ±1/P` over factored denominators.
pub fn sum_reciprocals(terms: &[(bool, Factored)]) -> Result<RationalFn, SeriesError> {
    let total = terms
        .par_iter()
        .map(|(neg, p)| Frac {
            num: MultiPoly::int(if *neg { -1 } else { 1 }),
            den: p.clone(),
        })
        .reduce(Frac::zero, Frac::add);
    RationalFn::new(total.num, total.den.product())
}

/// `1 / R(x^{-1})` with every variable in `vars` inverted.
fn invert_reciprocal(r: &RationalFn, vars: &[String]) -> Result<RationalFn, GrowthError> {
    if r.num().is_zero() {
        return Err(GrowthError::SerreZero);
    }
    let mut w = r.recip()?;
    for v in vars {
        w = w.invert_var(v);
    }
    Ok(w)
}

/// Multi-variable growth series of an infinite `W_a` via Serre's formula.
pub fn growth_infinite(d: &CoxeterDiagram, a: Subset, phi: &Partition) -> Result<RationalFn, GrowthError> {
    if component_types(d, a).is_some() {
        return Err(GrowthError::Finite(d.subset_names(a).into_iter().map(String::from).collect()));
    }
    let r = sum_reciprocals(&serre_terms(d, a, phi)?)?;
    invert_reciprocal(&r, phi.vars())
}

/// Growth series of `W_a`, by whichever route applies.
pub fn growth(d: &CoxeterDiagram, a: Subset, phi: &Partition) -> Result<GrowthResult, GrowthError> {
    let (series, route) = if component_types(d, a).is_some() {
        (RationalFn::from_poly(growth_finite_multi(d, a, phi)?), Route::ProductFormula)
    } else {
        (growth_infinite(d, a, phi)?, Route::Serre)
    };
    Ok(GrowthResult {
        series,
        route,
        fingerprint: d.fingerprint(),
    })
}

fn complement_and_vars(d: &CoxeterDiagram) -> Result<(Subset, Partition, String, Option<String>), GrowthError> {
    let t = d.t_set().ok_or(GrowthError::NoT)?;
    check_hypothesis(d, t)?;
    let rest = d.all().difference(t);
    if component_types(d, rest).is_none() {
        return Err(GrowthError::InfiniteComplement);
    }
    let phi = d.partition();
    let t_vars: Vec<&str> = {
        let mut v: Vec<&str> = t.iter().map(|s| phi.var_of(s)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let rest_vars: Vec<&str> = {
        let mut v: Vec<&str> = rest.iter().map(|s| phi.var_of(s)).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    if t_vars.len() > 1 || rest_vars.len() > 1 || t_vars.iter().any(|v| rest_vars.contains(v)) {
        return Err(GrowthError::BadPartition);
    }
    let x = t_vars.first().map(|s| s.to_string()).unwrap_or_else(|| "x".into());
    let x0 = rest_vars.first().map(|s| s.to_string());
    Ok((rest, phi, x, x0))
}

/// Growth series of the normal closure of `W_T`, from the ambient
/// two-variable series: `W̄(x) = W_φ(1, x) / |W_{S-T}|`, `W_T(x) = W_φ(0, x)`.
pub fn closure_growth_by_specialization(d: &CoxeterDiagram) -> Result<ClosureGrowth, GrowthError> {
    let (rest, phi, _x, x0) = complement_and_vars(d)?;
    let order = crate::classify::finite_order(d, rest).expect("checked finite");
    let ambient = growth(d, d.all(), &phi)?.series;
    let (at_one, at_zero) = match &x0 {
        Some(x0) => (
            ambient.specialize_limit(x0, &rat(1))?,
            ambient.specialize_limit(x0, &rat(0))?,
        ),
        None => (ambient.clone(), ambient.clone()),
    };
    let closure = at_one.scale(&(num_rational::BigRational::one() / rat_big(&order)));
    Ok(ClosureGrowth {
        closure: GrowthResult {
            series: closure,
            route: Route::Specialization,
            fingerprint: d.fingerprint(),
        },
        ambient,
        parabolic: at_zero,
        complement_order: order,
    })
}

fn rat_big(n: &BigUint) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(num_bigint::BigInt::from(n.clone()))
}

/// `W_φ` from the f-polynomial of a right-angled system's nerve:
/// `f(-1/(1+x)) = 1/W(x^{-1})`.
pub fn growth_from_f(f: &MultiPoly) -> Result<GrowthResult, GrowthError> {
    let vars = f.used_vars();
    let mut g = RationalFn::from_poly(f.clone());
    for v in &vars {
        let sub = RationalFn::new(MultiPoly::int(-1), &MultiPoly::int(1) + &MultiPoly::var(v))?;
        g = g.substitute(v, &sub)?;
    }
    if g.num().is_zero() {
        return Err(GrowthError::SerreZero);
    }
    Ok(GrowthResult {
        series: invert_reciprocal(&g, &vars)?,
        route: Route::FSubstitution,
        fingerprint: String::new(),
    })
}

/// Truncated growth series by breadth-first search over reduced words:
/// counts of elements of `W_a` with length at most `max_len`, by monomial.
pub fn growth_bfs(d: &CoxeterDiagram, a: Subset, phi: &Partition, max_len: usize) -> Result<MultiPoly, GrowthError> {
    let engine = WordEngine::new(d);
    let mut counts: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
    let mut level = vec![crate::words::Element::identity()];
    let mut total = 0usize;
    let cap = oracle_cap();
    for _ in 0..=max_len {
        let mut next = std::collections::HashSet::new();
        for w in &level {
            let rl = engine.refined_length(w, phi)?;
            *counts.entry(rl.counts.iter().map(|(_, c)| *c).collect()).or_default() += 1;
            for s in a.iter() {
                if !engine.is_right_descent(w, s) {
                    next.insert(engine.right_mul(w, s));
                }
            }
        }
        total += level.len();
        if total > cap {
            return Err(WordsError::CapExceeded {
                cap,
                order: "unbounded".into(),
            }
            .into());
        }
        level = next.into_iter().collect();
        level.sort();
    }
    Ok(MultiPoly::from_terms(phi.vars(), counts.into_iter().map(|(e, c)| (e, rat(c)))).unwrap())
}

/// Coefficients of a single-variable series, checked integral.
pub fn integer_taylor(r: &RationalFn, var: &str, n: usize) -> Result<Vec<num_bigint::BigInt>, GrowthError> {
    let t = if r.vars().is_empty() {
        let c = r.as_poly().map(|p| p.constant_term()).unwrap_or_else(num_rational::BigRational::zero);
        let mut v = vec![c];
        v.resize(n + 1, num_rational::BigRational::zero());
        v
    } else {
        r.taylor(var, n)?
    };
    t.into_iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(GrowthError::Series(SeriesError::NotIntegral(c.to_string())))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn uni(coeffs: &[i64]) -> MultiPoly {
        MultiPoly::univariate_int("x", coeffs)
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic("x", 1), uni(&[-1, 1]));
        assert_eq!(cyclotomic("x", 2), uni(&[1, 1]));
        assert_eq!(cyclotomic("x", 6), uni(&[1, -1, 1]));
        assert_eq!(cyclotomic("x", 12), uni(&[1, 0, -1, 0, 1]));
        assert_eq!(q_integer_factored("x", 6).product(), uni(&[1; 6]));
    }

    #[test]
    fn b2_two_variables() {
        let d = parse_diagram("node a\nnode b\nedge a b 4\nclass x : a\nclass x0 : b").unwrap();
        let p = growth_finite_multi(&d, d.all(), &d.partition()).unwrap();
        let x = MultiPoly::var("x");
        let x0 = MultiPoly::var("x0");
        let one = MultiPoly::int(1);
        let expect = &(&(&one + &x) * &(&one + &x0)) * &(&one + &(&x * &x0));
        assert_eq!(p, expect);
    }

    #[test]
    fn single_variable_is_poincare() {
        let d = parse_diagram("node a\nnode b\nedge a b 3").unwrap();
        let p = growth_finite_multi(&d, d.all(), &d.partition()).unwrap();
        assert_eq!(p, uni(&[1, 2, 2, 1]));
        let a1 = parse_diagram("node a").unwrap();
        assert_eq!(growth_finite_multi(&a1, a1.all(), &a1.partition()).unwrap(), uni(&[1, 1]));
    }

    #[test]
    fn infinite_dihedral() {
        let d = parse_diagram("node s\nnode t\nedge s t inf\nT t").unwrap();
        let w = growth_infinite(&d, d.all(), &d.partition()).unwrap();
        let x = MultiPoly::var("x");
        let x0 = MultiPoly::var("x0");
        let one = MultiPoly::int(1);
        let expect = RationalFn::new(&(&one + &x) * &(&one + &x0), &one - &(&x * &x0)).unwrap();
        assert_eq!(w, expect);

        let c = closure_growth_by_specialization(&d).unwrap();
        let dinf = RationalFn::new(uni(&[1, 1]), uni(&[1, -1])).unwrap();
        assert_eq!(c.closure.series, dinf);
        assert_eq!(c.parabolic, RationalFn::from_poly(uni(&[1, 1])));

        let plain = parse_diagram("node s\nnode t\nedge s t inf").unwrap();
        let w = growth(&plain, plain.all(), &plain.partition()).unwrap();
        assert_eq!(w.route, Route::Serre);
        assert_eq!(w.series, dinf);
        let taylor = integer_taylor(&w.series, "x", 5).unwrap();
        assert_eq!(taylor, [1, 2, 2, 2, 2, 2].map(num_bigint::BigInt::from));
    }

    #[test]
    fn b2_closure() {
        let d = parse_diagram("node s1\nnode s2\nedge s1 s2 4\nT s1").unwrap();
        let c = closure_growth_by_specialization(&d).unwrap();
        assert_eq!(c.closure.series, RationalFn::from_poly(uni(&[1, 2, 1])));
        assert_eq!(c.complement_order, BigUint::from(2u32));
    }

    #[test]
    fn hypothesis_is_enforced() {
        let d = parse_diagram("node a\nnode b\nedge a b 3\nT a").unwrap();
        assert!(matches!(closure_growth_by_specialization(&d), Err(GrowthError::Hypothesis(_))));
        let d = parse_diagram("node a\nnode b\nnode c\nedge a b inf\nedge b c 4\nT c").unwrap();
        assert!(matches!(closure_growth_by_specialization(&d), Err(GrowthError::InfiniteComplement)));
    }

    #[test]
    fn f_substitution() {
        let f = MultiPoly::univariate_int("t", &[1, 2, 1]);
        let w = growth_from_f(&f).unwrap();
        assert_eq!(w.series, RationalFn::from_poly(MultiPoly::univariate_int("t", &[1, 2, 1])));
        let w = growth_from_f(&MultiPoly::int(1)).unwrap();
        assert_eq!(w.series, RationalFn::constant(rat(1)));
    }

    #[test]
    fn finiteness_gates() {
        let d = parse_diagram("node a\nnode b\nedge a b 4").unwrap();
        assert!(matches!(growth_infinite(&d, d.all(), &d.partition()), Err(GrowthError::Finite(_))));
        let d = parse_diagram("node a\nnode b\nedge a b inf").unwrap();
        assert!(matches!(growth_finite_multi(&d, d.all(), &d.partition()), Err(GrowthError::NotFinite(_))));
    }

    #[test]
    fn bfs_matches_serre_for_affine() {
        let d = parse_diagram("node a\nnode b\nnode c\nedge a b 3\nedge b c 3\nedge a c 3").unwrap();
        let w = growth(&d, d.all(), &d.partition()).unwrap().series;
        let bfs = growth_bfs(&d, d.all(), &d.partition(), 8).unwrap();
        let t = integer_taylor(&w, "x", 8).unwrap();
        for (k, c) in t.iter().enumerate() {
            assert_eq!(bfs.coefficient(&[k as u32]), num_rational::BigRational::from_integer(c.clone()));
        }
    }
}

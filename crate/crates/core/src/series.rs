//! Exact multivariate polynomials and rational functions over `Q`.
//!
//! Coefficients are big rationals. Single-variable rational functions are
//! kept fully reduced; multivariable ones are only content-normalized (no
//! multivariate GCD), so their denominators stay as whatever product the
//! caller built.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("substitution makes the denominator vanish identically")]
    ZeroDenominator,
    #[error("pole at {var} = {value}")]
    Pole { var: String, value: String },
    #[error("denominator has zero constant term in {0}")]
    ConstantTermZero(String),
    #[error("expected a polynomial in at most the single variable {0}")]
    NotUnivariate(String),
    #[error("non-integral coefficient {0}")]
    NotIntegral(String),
    #[error("malformed coefficient `{0}`")]
    BadCoefficient(String),
    #[error("exponent vector of length {got}, expected {expected}")]
    Arity { got: usize, expected: usize },
}

pub type Exponent = Vec<u32>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn add_exponents(a: &[u32], b: &[u32]) -> Exponent {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

/// Sparse polynomial with named variables.
#[derive(Clone, Debug)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, BigRational>,
}

impl MultiPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> MultiPoly {
        MultiPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: BigRational) -> MultiPoly {
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> MultiPoly {
        MultiPoly::constant(vars, BigRational::one())
    }

    pub fn int(c: i64) -> MultiPoly {
        MultiPoly::constant::<&str>(&[], rat(c))
    }

    /// The polynomial `var`.
    pub fn var(name: &str) -> MultiPoly {
        MultiPoly::monomial(&[name], &[1], BigRational::one())
    }

    pub fn monomial<S: AsRef<str>>(vars: &[S], exps: &[u32], c: BigRational) -> MultiPoly {
        assert_eq!(vars.len(), exps.len());
        let mut p = MultiPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    /// Builds from `(exponent, coefficient)` pairs, summing duplicates.
    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Exponent, BigRational)>,
    ) -> Result<MultiPoly, SeriesError> {
        let mut p = MultiPoly::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(SeriesError::Arity {
                    got: e.len(),
                    expected: p.vars.len(),
                });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(var: &str, coeffs: &[BigRational]) -> MultiPoly {
        let mut p = MultiPoly::zero(&[var]);
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(vec![k as u32], c.clone());
        }
        p
    }

    pub fn univariate_int(var: &str, coeffs: &[i64]) -> MultiPoly {
        let cs: Vec<BigRational> = coeffs.iter().map(|&c| rat(c)).collect();
        MultiPoly::univariate(var, &cs)
    }

    fn add_term(&mut self, e: Exponent, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Variables that occur with a positive exponent.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&vec![0; self.vars.len()])
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Re-expresses over `vars`, which must contain every used variable.
    pub fn aligned<S: AsRef<str>>(&self, vars: &[S]) -> MultiPoly {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if vars == self.vars {
            return self.clone();
        }
        let map: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|w| w == v))
            .collect();
        let mut out = MultiPoly::zero(&vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                match map[i] {
                    Some(j) => ne[j] = x,
                    None => assert_eq!(x, 0, "variable {} dropped while used", self.vars[i]),
                }
            }
            out.terms.insert(ne, c.clone());
        }
        out
    }

    /// Removes variables that never occur.
    pub fn trimmed(&self) -> MultiPoly {
        self.aligned(&self.used_vars())
    }

    pub fn rename(&self, from: &str, to: &str) -> MultiPoly {
        let mut p = self.clone();
        if let Some(i) = p.var_index(from) {
            if let Some(j) = p.var_index(to) {
                assert!(i == j || p.terms.keys().all(|e| e[j] == 0), "rename target in use");
                let mut q = MultiPoly::zero(&p.vars);
                for (e, c) in &p.terms {
                    let mut ne = e.clone();
                    ne[j] += ne[i];
                    if i != j {
                        ne[i] = 0;
                    }
                    q.add_term(ne, c.clone());
                }
                return q.trimmed_keep_other(from, to);
            }
            p.vars[i] = to.to_string();
        }
        p
    }

    fn trimmed_keep_other(&self, dropped: &str, _kept: &str) -> MultiPoly {
        let vars: Vec<String> = self.vars.iter().filter(|v| *v != dropped).cloned().collect();
        self.aligned(&vars)
    }

    fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
        let mut out = a.to_vec();
        for v in b {
            if !out.contains(v) {
                out.push(v.clone());
            }
        }
        out
    }

    /// Both operands over the union of their variable lists.
    pub fn align_pair(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
        let vars = MultiPoly::union_vars(&a.vars, &b.vars);
        (a.aligned(&vars), b.aligned(&vars))
    }

    pub fn scale(&self, c: &BigRational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.vars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes a constant for `var` and drops that variable.
    pub fn eval_var(&self, var: &str, value: &BigRational) -> MultiPoly {
        let Some(i) = self.var_index(var) else {
            return self.clone();
        };
        let vars: Vec<String> = self.vars.iter().filter(|v| *v != var).cloned().collect();
        let mut out = MultiPoly::zero(&vars);
        let mut powers: Vec<BigRational> = vec![BigRational::one()];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut ne = e.clone();
            ne.remove(i);
            out.add_term(ne, c * &powers[k]);
        }
        out
    }

    /// Evaluates at a full assignment (missing variables are an error).
    pub fn eval(&self, values: &[(&str, BigRational)]) -> BigRational {
        let mut p = self.clone();
        for (v, x) in values {
            p = p.eval_var(v, x);
        }
        assert!(p.is_constant(), "unassigned variables {:?}", p.used_vars());
        p.constant_term()
    }

    /// Groups by powers of `var`: entry `k` is the coefficient of `var^k`,
    /// with `var` kept in the variable list at exponent zero.
    pub fn collect_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(var) else {
            return if self.is_zero() { vec![] } else { vec![self.clone()] };
        };
        let mut out: Vec<MultiPoly> = Vec::new();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while out.len() <= k {
                out.push(MultiPoly::zero(&self.vars));
            }
            let mut ne = e.clone();
            ne[i] = 0;
            out[k].terms.insert(ne, c.clone());
        }
        out
    }

    /// Exact division by `(var - value)`; `None` if not divisible.
    pub fn div_linear(&self, var: &str, value: &BigRational) -> Option<MultiPoly> {
        let i = self.var_index(var)?;
        let coeffs = self.collect_in(var);
        let n = coeffs.len();
        if n == 0 {
            return Some(self.clone());
        }
        let mut quot: Vec<MultiPoly> = vec![MultiPoly::zero(&self.vars); n.saturating_sub(1)];
        let mut carry = MultiPoly::zero(&self.vars);
        for k in (1..n).rev() {
            carry = &coeffs[k] + &carry.scale(value);
            quot[k - 1] = carry.clone();
        }
        let rem = &coeffs[0] + &carry.scale(value);
        if !rem.is_zero() {
            return None;
        }
        let mut out = MultiPoly::zero(&self.vars);
        for (k, q) in quot.into_iter().enumerate() {
            for (e, c) in q.terms {
                let mut ne = e;
                ne[i] = k as u32;
                out.add_term(ne, c);
            }
        }
        Some(out)
    }

    /// Multiplies by the monomial with the given exponents.
    pub fn shift(&self, exps: &[u32]) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exponents(e, exps), c.clone()))
                .collect(),
        }
    }

    /// Divides by the monomial with the given exponents (must divide).
    pub fn unshift(&self, exps: &[u32]) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(exps).map(|(a, b)| a - b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent over all terms.
    pub fn min_exponents(&self) -> Exponent {
        let mut m: Option<Exponent> = None;
        for e in self.terms.keys() {
            m = Some(match m {
                None => e.clone(),
                Some(cur) => cur.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        m.unwrap_or_else(|| vec![0; self.vars.len()])
    }

    /// `(lcm of coefficient denominators, gcd of numerators)` as a single
    /// positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> BigRational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return BigRational::one();
        }
        BigRational::new(num, den)
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.terms
            .iter()
            .next_back()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Univariate dense coefficients; every other variable must be absent.
    pub fn to_uni(&self, var: &str) -> Result<UniPoly, SeriesError> {
        let used = self.used_vars();
        if used.iter().any(|v| v != var) {
            return Err(SeriesError::NotUnivariate(var.to_string()));
        }
        let i = self.var_index(var);
        let mut coeffs = vec![BigRational::zero(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let k = i.map_or(0, |i| e[i] as usize);
            coeffs[k] = c.clone();
        }
        Ok(UniPoly::new(coeffs))
    }

    /// Ascending coefficient list of a polynomial in at most one variable;
    /// empty for zero.
    pub fn coefficients(&self) -> Result<Vec<BigRational>, SeriesError> {
        let used = self.used_vars();
        if used.len() > 1 {
            return Err(SeriesError::NotUnivariate(used.join(",")));
        }
        let var = used.first().cloned().unwrap_or_default();
        Ok(self.to_uni(&var)?.0)
    }

    /// Integer coefficients of [`MultiPoly::coefficients`].
    pub fn int_coefficients(&self) -> Result<Vec<BigInt>, SeriesError> {
        self.coefficients()?
            .into_iter()
            .map(|c| {
                if c.is_integer() {
                    Ok(c.to_integer())
                } else {
                    Err(SeriesError::NotIntegral(c.to_string()))
                }
            })
            .collect()
    }

    /// Sets every variable to `var` (diagonal specialization).
    pub fn diagonal(&self, var: &str) -> MultiPoly {
        let mut out = MultiPoly::zero(&[var]);
        for (e, c) in &self.terms {
            out.add_term(vec![e.iter().sum()], c.clone());
        }
        out
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &MultiPoly) -> bool {
        let (a, b) = MultiPoly::align_pair(self, other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::align_pair(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        a
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = MultiPoly::align_pair(self, rhs);
        for (e, c) in b.terms {
            a.add_term(e, -c);
        }
        a
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&rat(-1))
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = MultiPoly::align_pair(self, rhs);
        let mut out = MultiPoly::zero(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                out.add_term(add_exponents(ea, eb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn fmt_monomial(vars: &[String], e: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Terms by ascending total degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&Exponent, &BigRational)> = self.terms.iter().collect();
        terms.sort_by_key(|(e, _)| (e.iter().sum::<u32>(), (*e).clone()));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono = fmt_monomial(&self.vars, e);
            let neg = c.is_negative();
            let abs = c.abs();
            let sign = match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            f.write_str(sign)?;
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else if abs.is_integer() {
                write!(f, "{abs}*{mono}")?;
            } else {
                write!(f, "({abs})*{mono}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    e: Vec<u32>,
    c: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    vars: Vec<String>,
    terms: Vec<TermJson>,
}

pub fn parse_rational(s: &str) -> Result<BigRational, SeriesError> {
    let bad = || SeriesError::BadCoefficient(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

impl Serialize for MultiPoly {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        PolyJson {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    e: e.clone(),
                    c: c.to_string(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<MultiPoly, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let terms = raw
            .terms
            .into_iter()
            .map(|t| parse_rational(&t.c).map(|c| (t.e, c)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        MultiPoly::from_terms(&raw.vars, terms).map_err(serde::de::Error::custom)
    }
}

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<BigRational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.0.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.0
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rat(k as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.0.len().max(o.0.len());
        UniPoly::new(
            (0..n)
                .map(|k| {
                    let a = self.0.get(k).cloned().unwrap_or_else(BigRational::zero);
                    let b = o.0.get(k).cloned().unwrap_or_else(BigRational::zero);
                    a - b
                })
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), SeriesError> {
        if d.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let mut rem = self.0.clone();
        let dl = d.lead();
        let dd = d.degree();
        if self.is_zero() || self.degree() < dd {
            return Ok((UniPoly(vec![]), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((UniPoly::new(quot), UniPoly::new(rem)))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        self.scale(&(BigRational::one() / l))
    }

    /// Integer coprime coefficients with positive leading coefficient.
    pub fn primitive(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.0 {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        let mut scale = BigRational::new(den, num);
        if self.lead().is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.primitive(), o.primitive());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.primitive();
        }
        a.monic()
    }

    pub fn to_multi(&self, var: &str) -> MultiPoly {
        MultiPoly::univariate(var, &self.0)
    }
}

/// Quotient of two polynomials, kept normalized.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RationalFn, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        Ok(RationalFn::normalized(num, den))
    }

    pub fn from_poly(p: MultiPoly) -> RationalFn {
        let one = MultiPoly::one(p.vars());
        RationalFn::normalized(p, one)
    }

    pub fn constant(c: BigRational) -> RationalFn {
        RationalFn::from_poly(MultiPoly::constant::<&str>(&[], c))
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn vars(&self) -> Vec<String> {
        self.num.vars().to_vec()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this equals, if the denominator is constant.
    pub fn as_poly(&self) -> Option<MultiPoly> {
        self.is_polynomial()
            .then(|| self.num.scale(&(BigRational::one() / self.den.constant_term())))
    }

    fn normalized(num: MultiPoly, den: MultiPoly) -> RationalFn {
        let (num, den) = MultiPoly::align_pair(&num, &den);
        if num.is_zero() {
            let vars: Vec<String> = Vec::new();
            return RationalFn {
                num: MultiPoly::zero(&vars),
                den: MultiPoly::one(&vars),
            };
        }
        let mut used = num.used_vars();
        for v in den.used_vars() {
            if !used.contains(&v) {
                used.push(v);
            }
        }
        let ordered: Vec<String> = num.vars().iter().filter(|v| used.contains(v)).cloned().collect();
        let (mut num, mut den) = (num.aligned(&ordered), den.aligned(&ordered));

        let common: Exponent = num
            .min_exponents()
            .iter()
            .zip(den.min_exponents())
            .map(|(a, b)| (*a).min(b))
            .collect();
        if common.iter().any(|&k| k > 0) {
            num = num.unshift(&common);
            den = den.unshift(&common);
        }

        if ordered.len() == 1 {
            let v = &ordered[0];
            let (n, d) = (num.to_uni(v).unwrap(), den.to_uni(v).unwrap());
            let g = n.gcd(&d);
            if g.degree() > 0 {
                num = n.div_rem(&g).unwrap().0.to_multi(v);
                den = d.div_rem(&g).unwrap().0.to_multi(v);
            }
        }

        // num = cn·p, den = cd·q with p, q primitive; keep cn/cd in lowest terms.
        let (cn, cd) = (num.content(), den.content());
        let ratio = &cn / &cd;
        num = num.scale(&(BigRational::from_integer(ratio.numer().clone()) / &cn));
        den = den.scale(&(BigRational::from_integer(ratio.denom().clone()) / &cd));
        // Sign: the lowest term of the denominator (its constant term for
        // growth series) is positive.
        if den.terms().next().is_some_and(|(_, c)| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        RationalFn { num, den }
    }

    pub fn add(&self, o: &RationalFn) -> RationalFn {
        RationalFn::normalized(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn sub(&self, o: &RationalFn) -> RationalFn {
        RationalFn::normalized(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn mul(&self, o: &RationalFn) -> RationalFn {
        RationalFn::normalized(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &RationalFn) -> Result<RationalFn, SeriesError> {
        if o.num.is_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        Ok(RationalFn::normalized(&self.num * &o.den, &self.den * &o.num))
    }

    pub fn recip(&self) -> Result<RationalFn, SeriesError> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &BigRational) -> RationalFn {
        RationalFn::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn neg(&self) -> RationalFn {
        self.scale(&rat(-1))
    }

    /// Composition `var := value`.
    pub fn substitute(&self, var: &str, value: &RationalFn) -> Result<RationalFn, SeriesError> {
        let (n, d) = (homogenize(&self.num, var, value), homogenize(&self.den, var, value));
        let (nn, dn) = (self.num.degree_in(var), self.den.degree_in(var));
        let q = &value.den;
        let (num, den) = if nn <= dn {
            (&n * &q.pow(dn - nn), d)
        } else {
            (n, &d * &q.pow(nn - dn))
        };
        if den.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        Ok(RationalFn::normalized(num, den))
    }

    /// `var := 1/var`.
    pub fn invert_var(&self, var: &str) -> RationalFn {
        let inv = RationalFn::normalized(MultiPoly::int(1), MultiPoly::var(var));
        self.substitute(var, &inv).expect("1/x is never degenerate")
    }

    /// `var := value`, cancelling common factors `(var - value)` first.
    pub fn specialize_limit(&self, var: &str, value: &BigRational) -> Result<RationalFn, SeriesError> {
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        loop {
            let nv = num.eval_var(var, value);
            let dv = den.eval_var(var, value);
            if !dv.is_zero() {
                return Ok(RationalFn::normalized(nv, dv));
            }
            if !nv.is_zero() {
                return Err(SeriesError::Pole {
                    var: var.to_string(),
                    value: value.to_string(),
                });
            }
            num = num.div_linear(var, value).expect("vanishing polynomial is divisible");
            den = den.div_linear(var, value).expect("vanishing polynomial is divisible");
        }
    }

    pub fn rename(&self, from: &str, to: &str) -> RationalFn {
        RationalFn::normalized(self.num.rename(from, to), self.den.rename(from, to))
    }

    /// First `n + 1` coefficients of the power series in `var`; the
    /// function must not involve any other variable.
    pub fn taylor(&self, var: &str, n: usize) -> Result<Vec<BigRational>, SeriesError> {
        let num = self.num.to_uni(var)?;
        let den = self.den.to_uni(var)?;
        let d0 = den.0.first().cloned().unwrap_or_else(BigRational::zero);
        if d0.is_zero() {
            return Err(SeriesError::ConstantTermZero(var.to_string()));
        }
        let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = num.0.get(k).cloned().unwrap_or_else(BigRational::zero);
            for j in 1..=k.min(den.degree()) {
                acc -= &den.0[j] * &out[k - j];
            }
            out.push(acc / &d0);
        }
        Ok(out)
    }

    /// Exact equality as functions.
    pub fn equals(&self, o: &RationalFn) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    /// Sets every variable to `var`.
    pub fn diagonal(&self, var: &str) -> RationalFn {
        RationalFn::normalized(self.num.diagonal(var), self.den.diagonal(var))
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, o: &RationalFn) -> bool {
        self.equals(o)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            return write!(f, "{}", self.as_poly().unwrap());
        }
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// `q^deg · p(value)` where `value = v_num / q` and `deg = deg_var p`.
fn homogenize(p: &MultiPoly, var: &str, value: &RationalFn) -> MultiPoly {
    let coeffs = p.collect_in(var);
    let n = coeffs.len();
    if n == 0 {
        return MultiPoly::zero(p.vars());
    }
    let (vn, vd) = (&value.num, &value.den);
    let mut pn = vec![MultiPoly::int(1)];
    let mut pd = vec![MultiPoly::int(1)];
    for k in 1..n {
        pn.push(&pn[k - 1] * vn);
        pd.push(&pd[k - 1] * vd);
    }
    let mut out = MultiPoly::zero(p.vars());
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let c = c.eval_var(var, &BigRational::zero());
        out = &out + &(&c * &(&pn[k] * &pd[n - 1 - k]));
    }
    out
}

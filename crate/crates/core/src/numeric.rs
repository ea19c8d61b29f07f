//! Real-root counting by exact Sturm sequences, and floating-point root
//! approximation (Aberth–Ehrlich) checked against the exact count.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::series::{RationalFn, SeriesError, UniPoly};

const MAX_ITERATIONS: usize = 2000;
/// A float root counts as real when `|Im z| < REAL_TOL · (1 + |z|)`.
pub const REAL_TOL: f64 = 1e-6;
/// Acceptance bound on the relative residual of reported roots.
pub const RESIDUAL_BOUND: f64 = 1e-8;

#[derive(Debug, Error, PartialEq)]
pub enum NumericError {
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("constant polynomial has no roots")]
    Constant,
    #[error("exact real count {exact} disagrees with {float} near-real float roots")]
    RealCountMismatch { exact: usize, float: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Root {
    pub re: f64,
    pub im: f64,
}

impl Root {
    pub fn is_real(&self) -> bool {
        self.im == 0.0
    }

    fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootReport {
    /// Distinct real roots, by an exact Sturm chain.
    pub real_count: usize,
    /// All roots with multiplicity, real ones first in increasing order,
    /// then conjugate pairs by increasing modulus.
    pub roots: Vec<Root>,
    /// Largest `|p(z)| / Σ|a_i||z|^i` over the roots, evaluated exactly at
    /// the reported floating values.
    pub residual: f64,
    pub converged: bool,
}

impl RootReport {
    fn empty() -> RootReport {
        RootReport {
            real_count: 0,
            roots: Vec::new(),
            residual: 0.0,
            converged: true,
        }
    }

    pub fn nonreal_count(&self) -> usize {
        self.roots.iter().filter(|r| !r.is_real()).count()
    }
}

/// `p / gcd(p, p')`.
pub fn square_free_part(p: &UniPoly) -> UniPoly {
    let g = p.gcd(&p.derivative());
    if g.degree() == 0 {
        return p.primitive();
    }
    p.div_rem(&g).unwrap().0.primitive()
}

/// Yun's decomposition: `(q, i)` with `p = c · ∏ q^i`, each `q` square-free.
pub fn square_free_decomposition(p: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if p.degree() == 0 {
        return out;
    }
    let dp = p.derivative();
    let b = p.gcd(&dp);
    let mut c = p.div_rem(&b).unwrap().0;
    let mut d = dp.div_rem(&b).unwrap().0.sub(&c.derivative());
    let mut i = 1;
    while c.degree() > 0 {
        let a = c.gcd(&d);
        c = c.div_rem(&a).unwrap().0;
        d = d.div_rem(&a).unwrap().0.sub(&c.derivative());
        if a.degree() > 0 {
            out.push((a.primitive(), i));
        }
        i += 1;
    }
    out
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let p0 = square_free_part(p);
    let mut chain = vec![p0.clone(), p0.derivative().primitive()];
    while chain.last().unwrap().degree() > 0 {
        let n = chain.len();
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]).unwrap();
        if r.is_zero() {
            break;
        }
        // Dividing by the positive content keeps the sign pattern.
        chain.push(r.scale(&-BigRational::one()).primitive_positive());
    }
    chain
}

trait PositivePrimitive {
    fn primitive_positive(&self) -> UniPoly;
}

impl PositivePrimitive for UniPoly {
    fn primitive_positive(&self) -> UniPoly {
        let q = self.primitive();
        if sign(&q.lead()) == sign(&self.lead()) {
            q
        } else {
            q.scale(&-BigRational::one())
        }
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let nz: Vec<i8> = signs.filter(|&s| s != 0).collect();
    nz.windows(2).filter(|w| w[0] != w[1]).count()
}

fn sign_at_infinity(p: &UniPoly, positive: bool) -> i8 {
    let s = sign(&p.lead());
    if positive || p.degree() % 2 == 0 {
        s
    } else {
        -s
    }
}

/// Distinct real roots of `p`, in `(a, b]` when an interval is given.
pub fn sturm_real_count(p: &UniPoly, interval: Option<(&BigRational, &BigRational)>) -> Result<usize, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(p);
    let (va, vb) = match interval {
        None => (
            variations(chain.iter().map(|q| sign_at_infinity(q, false))),
            variations(chain.iter().map(|q| sign_at_infinity(q, true))),
        ),
        Some((a, b)) => (
            variations(chain.iter().map(|q| sign(&q.eval(a)))),
            variations(chain.iter().map(|q| sign(&q.eval(b)))),
        ),
    };
    Ok(va.saturating_sub(vb))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Aberth–Ehrlich iteration on a polynomial with simple roots.
fn aberth(coeffs: &[f64]) -> (Vec<Complex64>, bool) {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|a| Complex64::new(a / lead, 0.0)).collect();
    if n == 1 {
        return (vec![-c[0]], true);
    }
    // Start on a circle whose radius is the geometric mean of |roots|, or
    // half the Fujiwara bound when 0 is a root.
    let radius = if c[0].norm() > 0.0 {
        c[0].norm().powf(1.0 / n as f64)
    } else {
        (1..=n).map(|k| c[n - k].norm().powf(1.0 / k as f64)).fold(0.0, f64::max).max(1.0)
    };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut done = true;
        for i in 0..n {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&j| j != i).map(|j| (z[i] - z[j]).inv()).sum();
            let step = ratio / (Complex64::one() - ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() > 1e-13 * z[i].norm().max(1e-300) {
                done = false;
            }
        }
        if done {
            converged = true;
            break;
        }
    }
    // A few Newton steps to polish.
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *zi);
            if dp.norm() > 0.0 {
                let s = p / dp;
                if s.is_finite() {
                    *zi -= s;
                }
            }
        }
    }
    (z, converged)
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

/// `|p(z)| / Σ|a_i||z|^i` with `p(z)` evaluated in exact rationals.
pub fn relative_residual(p: &UniPoly, r: &Root) -> f64 {
    let (x, y) = (exact(r.re), exact(r.im));
    let (mut re, mut im) = (BigRational::zero(), BigRational::zero());
    for a in p.0.iter().rev() {
        let nre = &re * &x - &im * &y + a;
        let nim = &re * &y + &im * &x;
        re = nre;
        im = nim;
    }
    let value = to_f64(&re).hypot(to_f64(&im));
    let m = r.z().norm();
    let scale: f64 = p
        .0
        .iter()
        .enumerate()
        .map(|(i, a)| to_f64(a).abs() * m.powi(i as i32))
        .sum();
    if scale == 0.0 {
        0.0
    } else {
        value / scale
    }
}

/// Roots of one square-free factor, with exactly `real` of them real.
fn roots_of_square_free(q: &UniPoly, real: usize) -> Result<(Vec<Root>, bool), NumericError> {
    let coeffs: Vec<f64> = q.0.iter().map(to_f64).collect();
    let (mut z, converged) = aberth(&coeffs);
    z.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    let float_real = z.iter().filter(|w| w.im.abs() < REAL_TOL * (1.0 + w.norm())).count();
    if float_real != real {
        return Err(NumericError::RealCountMismatch {
            exact: real,
            float: float_real,
        });
    }
    let mut out: Vec<Root> = z[..real].iter().map(|w| Root { re: w.re, im: 0.0 }).collect();
    // Pair each upper root with its nearest lower mirror and symmetrize.
    let mut upper: Vec<Complex64> = z[real..].iter().filter(|w| w.im > 0.0).copied().collect();
    let mut lower: Vec<Complex64> = z[real..].iter().filter(|w| w.im <= 0.0).copied().collect();
    if upper.len() != lower.len() {
        return Err(NumericError::RealCountMismatch {
            exact: real,
            float: float_real,
        });
    }
    upper.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    for u in upper {
        let (k, _) = lower
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (a.conj() - u).norm().total_cmp(&(b.conj() - u).norm()))
            .unwrap();
        let l = lower.swap_remove(k);
        let re = (u.re + l.re) / 2.0;
        let im = (u.im - l.im) / 2.0;
        out.push(Root { re, im });
        out.push(Root { re, im: -im });
    }
    Ok((out, converged))
}

/// All complex roots of `p` with multiplicity.
pub fn approx_roots(p: &UniPoly) -> Result<RootReport, NumericError> {
    if p.is_zero() {
        return Err(NumericError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(NumericError::Constant);
    }
    let mut roots = Vec::new();
    let mut converged = true;
    for (q, mult) in square_free_decomposition(p) {
        let real = sturm_real_count(&q, None)?;
        let (rs, ok) = roots_of_square_free(&q, real)?;
        converged &= ok;
        for r in rs {
            roots.extend(std::iter::repeat_n(r, mult));
        }
    }
    roots.sort_by(|a, b| {
        (!a.is_real())
            .cmp(&!b.is_real())
            .then(if a.is_real() {
                a.re.total_cmp(&b.re)
            } else {
                a.z().norm().total_cmp(&b.z().norm()).then(b.im.total_cmp(&a.im))
            })
    });
    let residual = roots.iter().map(|r| relative_residual(p, r)).fold(0.0, f64::max);
    Ok(RootReport {
        real_count: sturm_real_count(p, None)?,
        roots,
        residual,
        converged,
    })
}

/// Poles of a single-variable rational function (roots of its reduced
/// denominator).
pub fn poles_of_growth(r: &RationalFn) -> Result<RootReport, NumericError> {
    let vars = r.vars();
    if r.is_polynomial() {
        return Ok(RootReport::empty());
    }
    let den = r.den().to_uni(&vars[0])?;
    approx_roots(&den)
}

/// Whether `actual` rounds to `expected` at two significant digits.
pub fn two_digits(actual: f64, expected: f64) -> bool {
    if expected == 0.0 {
        return actual.abs() < 5e-3;
    }
    let round = |x: f64| format!("{:.1e}", x);
    round(actual) == round(expected)
}

/// Matches every expected `(re, im)` to a distinct root at two significant
/// digits (`im = 0` meaning real).
pub fn matches_two_digits(report: &RootReport, expected: &[(f64, f64)]) -> bool {
    if report.roots.len() != expected.len() {
        return false;
    }
    let mut used = vec![false; report.roots.len()];
    expected.iter().all(|&(re, im)| {
        let hit = report.roots.iter().enumerate().position(|(k, r)| {
            !used[k]
                && two_digits(r.re, re)
                && if im == 0.0 {
                    r.is_real()
                } else {
                    two_digits(r.im, im)
                }
        });
        match hit {
            Some(k) => {
                used[k] = true;
                true
            }
            None => false,
        }
    })
}

/// Parses comma-separated integer or `p/q` coefficients, constant first.
pub fn parse_coefficients(text: &str) -> Result<UniPoly, SeriesError> {
    let coeffs = text
        .split(',')
        .map(|s| crate::series::parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UniPoly::new(coeffs))
}

/// Integer coefficients, constant first.
pub fn from_ints(coeffs: &[i64]) -> UniPoly {
    UniPoly::new(coeffs.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
}

//! Element arithmetic in Coxeter groups.
//!
//! Every element is stored by its ShortLex normal form: the
//! lexicographically least reduced word over generator ordinals. Two
//! backends compute normal forms:
//!
//! * **Tits moves** (always available): a word is extended letter by letter
//!   while tracking the full set of reduced words of the current element,
//!   closed under braid moves. Appending `s` cancels iff some reduced word
//!   ends in `s`. Exponential in element length, so only for small groups.
//! * **Root lattice** (labels in `{2, 3, 4, 5, 6, 10, ∞}`): the group acts
//!   on the `Z[φ]`-span of the simple roots of a generalized Cartan matrix;
//!   `s` is a left descent of `w` iff `w⁻¹(α_s)` is a negative root. Normal
//!   forms are read off by peeling the smallest left descent.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::rc::Rc;

use thiserror::Error;

use crate::classify::{finite_order, is_finite};
use crate::diagram::{CoxeterDiagram, DiagramError, Label, Partition, Subset};
use crate::series::{rat, MultiPoly};

/// Default cap on enumerated elements; `COXKIT_ORACLE_CAP` overrides it.
pub const DEFAULT_ORACLE_CAP: usize = 100_000;

pub fn oracle_cap() -> usize {
    std::env::var("COXKIT_ORACLE_CAP")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordsError {
    #[error("parabolic subgroup on {0:?} is infinite")]
    NotFinite(Vec<String>),
    #[error("enumeration cap of {cap} elements exceeded (order {order})")]
    CapExceeded { cap: usize, order: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error(transparent)]
    Partition(#[from] DiagramError),
}

/// A group element, held as its ShortLex normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<u8>);

impl Element {
    pub fn identity() -> Element {
        Element(Vec::new())
    }

    pub fn word(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Generators appearing in the normal form.
    pub fn support(&self) -> Subset {
        Subset::of(self.0.iter().map(|&s| s as usize))
    }

    /// Generator names separated by spaces; `e` for the identity.
    pub fn display<'a>(&'a self, d: &'a CoxeterDiagram) -> ElementDisplay<'a> {
        ElementDisplay { e: self, d }
    }

    pub fn names(&self, d: &CoxeterDiagram) -> Vec<String> {
        self.0.iter().map(|&s| d.name(s as usize).to_string()).collect()
    }

    /// ShortLex comparison (length first).
    pub fn shortlex_key(&self) -> (usize, &[u8]) {
        (self.0.len(), &self.0)
    }
}

pub struct ElementDisplay<'a> {
    e: &'a Element,
    d: &'a CoxeterDiagram,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.e.is_identity() {
            return f.write_str("e");
        }
        f.write_str(&self.e.names(self.d).join(" "))
    }
}

pub fn support(a: &Element) -> Subset {
    a.support()
}

/// Parses space-separated generator names (`e` or empty is the identity).
pub fn parse_word(d: &CoxeterDiagram, text: &str) -> Result<Vec<u8>, WordsError> {
    text.split_whitespace()
        .filter(|t| *t != "e")
        .map(|t| {
            d.index_of(t)
                .map(|i| i as u8)
                .ok_or_else(|| WordsError::UnknownGenerator(t.to_string()))
        })
        .collect()
}

/// Letter counts per partition variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefinedLength {
    pub counts: Vec<(String, u32)>,
}

impl RefinedLength {
    pub fn total(&self) -> u32 {
        self.counts.iter().map(|(_, c)| c).sum()
    }

    pub fn get(&self, var: &str) -> u32 {
        self.counts
            .iter()
            .find(|(v, _)| v == var)
            .map_or(0, |(_, c)| *c)
    }

    /// The monomial `∏ x^{count}` over the partition variables.
    pub fn monomial(&self) -> MultiPoly {
        let vars: Vec<&str> = self.counts.iter().map(|(v, _)| v.as_str()).collect();
        let exps: Vec<u32> = self.counts.iter().map(|(_, c)| *c).collect();
        MultiPoly::monomial(&vars, &exps, rat(1))
    }
}

/// `a + bφ` with `φ² = φ + 1`, the golden ratio `2cos(π/5)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Zphi {
    a: i64,
    b: i64,
}

impl Zphi {
    const ZERO: Zphi = Zphi { a: 0, b: 0 };

    const fn int(a: i64) -> Zphi {
        Zphi { a, b: 0 }
    }

    fn checked_mul(self, o: Zphi) -> Option<Zphi> {
        // (a + bφ)(c + dφ) = ac + bd + (ad + bc + bd)φ
        let ac = self.a.checked_mul(o.a)?;
        let bd = self.b.checked_mul(o.b)?;
        let ad = self.a.checked_mul(o.b)?;
        let bc = self.b.checked_mul(o.a)?;
        Some(Zphi {
            a: ac.checked_add(bd)?,
            b: ad.checked_add(bc)?.checked_add(bd)?,
        })
    }

    fn checked_add(self, o: Zphi) -> Option<Zphi> {
        Some(Zphi {
            a: self.a.checked_add(o.a)?,
            b: self.b.checked_add(o.b)?,
        })
    }

    fn checked_sub(self, o: Zphi) -> Option<Zphi> {
        Some(Zphi {
            a: self.a.checked_sub(o.a)?,
            b: self.b.checked_sub(o.b)?,
        })
    }

    /// Exact sign test: `2(a + bφ) = (2a + b) + b√5`.
    fn is_negative(self) -> bool {
        let p = 2 * self.a as i128 + self.b as i128;
        let q = self.b as i128;
        match (p.signum(), q.signum()) {
            (-1, -1) | (-1, 0) | (0, -1) => true,
            (1, -1) => p * p < 5 * q * q,
            (-1, 1) => p * p > 5 * q * q,
            _ => false,
        }
    }

    fn is_zero(self) -> bool {
        self == Zphi::ZERO
    }
}

/// Generalized Cartan matrix realisation over `Z[φ]`: exact for every
/// label in {2, 3, 4, 5, 6, 10, ∞}.
#[derive(Clone, Debug)]
struct Lattice {
    n: usize,
    /// `cartan[i * n + j] = <α_i^∨, α_j>`.
    cartan: Vec<Zphi>,
}

const PHI: Zphi = Zphi { a: 0, b: 1 };

fn overflow() -> ! {
    panic!("root coordinate overflow")
}

impl Lattice {
    fn new(d: &CoxeterDiagram) -> Option<Lattice> {
        let n = d.rank();
        let mut cartan = vec![Zphi::ZERO; n * n];
        let neg = |z: Zphi| Zphi { a: -z.a, b: -z.b };
        for i in 0..n {
            cartan[i * n + i] = Zphi::int(2);
            for j in i + 1..n {
                // a_ij · a_ji = 4cos²(π/m)
                let (a, b) = match d.label(i, j) {
                    Label::Finite(2) => (Zphi::ZERO, Zphi::ZERO),
                    Label::Finite(3) => (Zphi::int(-1), Zphi::int(-1)),
                    Label::Finite(4) => (Zphi::int(-1), Zphi::int(-2)),
                    Label::Finite(5) => (neg(PHI), neg(PHI)),
                    Label::Finite(6) => (Zphi::int(-1), Zphi::int(-3)),
                    Label::Finite(10) => (Zphi::int(-1), Zphi { a: -2, b: -1 }),
                    Label::Infinite => (Zphi::int(-2), Zphi::int(-2)),
                    _ => return None,
                };
                cartan[i * n + j] = a;
                cartan[j * n + i] = b;
            }
        }
        Some(Lattice { n, cartan })
    }

    fn reflect(&self, s: usize, v: &mut [Zphi]) {
        let row = &self.cartan[s * self.n..(s + 1) * self.n];
        let c = row
            .iter()
            .zip(v.iter())
            .try_fold(Zphi::ZERO, |acc, (a, x)| acc.checked_add(a.checked_mul(*x)?))
            .unwrap_or_else(|| overflow());
        v[s] = v[s].checked_sub(c).unwrap_or_else(|| overflow());
    }

    fn is_negative(v: &[Zphi]) -> bool {
        v.iter().any(|x| x.is_negative())
    }

    fn unit(&self, s: usize) -> Vec<Zphi> {
        let mut v = vec![Zphi::ZERO; self.n];
        v[s] = Zphi::int(1);
        v
    }

    /// `w(α_s)` for `w` given by a word.
    fn image(&self, word: &[u8], s: usize) -> Vec<Zphi> {
        let mut v = self.unit(s);
        for &l in word.iter().rev() {
            self.reflect(l as usize, &mut v);
        }
        v
    }

    /// `w⁻¹(α_s)`.
    fn inverse_image(&self, word: &[u8], s: usize) -> Vec<Zphi> {
        let mut v = self.unit(s);
        for &l in word {
            self.reflect(l as usize, &mut v);
        }
        v
    }

    fn normal_form(&self, word: &[u8]) -> Vec<u8> {
        let n = self.n;
        // cols[j] = w⁻¹(α_j)
        let mut cols: Vec<Vec<Zphi>> = (0..n).map(|j| self.unit(j)).collect();
        for &l in word {
            for c in cols.iter_mut() {
                self.reflect(l as usize, c);
            }
        }
        let mut out = Vec::new();
        while let Some(s) = (0..n).find(|&s| Lattice::is_negative(&cols[s])) {
            out.push(s as u8);
            // w⁻¹ ← w⁻¹ s
            let cs = cols[s].clone();
            for j in 0..n {
                let a = self.cartan[s * n + j];
                if !a.is_zero() {
                    for (x, y) in cols[j].iter_mut().zip(&cs) {
                        *x = a
                            .checked_mul(*y)
                            .and_then(|p| x.checked_sub(p))
                            .unwrap_or_else(|| overflow());
                    }
                }
            }
        }
        out
    }
}

type WordClass = Rc<Vec<Vec<u8>>>;

/// Reduced-word classes under braid moves, memoized per engine.
#[derive(Default)]
struct TitsMemo {
    class_of: HashMap<Vec<u8>, WordClass>,
}

/// Element arithmetic for one diagram.
pub struct WordEngine<'d> {
    d: &'d CoxeterDiagram,
    lattice: Option<Lattice>,
    memo: RefCell<TitsMemo>,
}

impl<'d> WordEngine<'d> {
    /// Uses the root lattice when every label allows it.
    pub fn new(d: &'d CoxeterDiagram) -> WordEngine<'d> {
        WordEngine {
            d,
            lattice: Lattice::new(d),
            memo: RefCell::default(),
        }
    }

    /// Forces the Tits-move backend.
    pub fn tits(d: &'d CoxeterDiagram) -> WordEngine<'d> {
        WordEngine {
            d,
            lattice: None,
            memo: RefCell::default(),
        }
    }

    pub fn diagram(&self) -> &'d CoxeterDiagram {
        self.d
    }

    pub fn uses_lattice(&self) -> bool {
        self.lattice.is_some()
    }

    fn braid_neighbours(&self, w: &[u8], out: &mut Vec<Vec<u8>>) {
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            if a == b {
                continue;
            }
            let Label::Finite(m) = self.d.label(a as usize, b as usize) else {
                continue;
            };
            let m = m as usize;
            if i + m > w.len() {
                continue;
            }
            let alternating = (0..m).all(|k| w[i + k] == if k % 2 == 0 { a } else { b });
            if alternating {
                let mut v = w.to_vec();
                for k in 0..m {
                    v[i + k] = if k % 2 == 0 { b } else { a };
                }
                out.push(v);
            }
        }
    }

    /// All reduced words of the element with reduced word `w`, sorted.
    fn class(&self, w: &[u8]) -> WordClass {
        if let Some(c) = self.memo.borrow().class_of.get(w) {
            return c.clone();
        }
        let mut seen: HashSet<Vec<u8>> = HashSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        let mut buf = Vec::new();
        while let Some(u) = queue.pop_front() {
            buf.clear();
            self.braid_neighbours(&u, &mut buf);
            for v in buf.drain(..) {
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        let mut members: Vec<Vec<u8>> = seen.into_iter().collect();
        members.sort();
        let class = Rc::new(members);
        let mut memo = self.memo.borrow_mut();
        for m in class.iter() {
            memo.class_of.insert(m.clone(), class.clone());
        }
        class
    }

    fn tits_reduce(&self, word: &[u8]) -> Vec<u8> {
        let mut class = self.class(&[]);
        for &s in word {
            let cancel = class.iter().find(|v| v.last() == Some(&s)).cloned();
            class = match cancel {
                Some(mut v) => {
                    v.pop();
                    self.class(&v)
                }
                None => {
                    let mut v = class[0].clone();
                    v.push(s);
                    self.class(&v)
                }
            };
        }
        class[0].clone()
    }

    /// ShortLex normal form of a word.
    pub fn reduce(&self, word: &[u8]) -> Element {
        Element(match &self.lattice {
            Some(l) => l.normal_form(word),
            None => self.tits_reduce(word),
        })
    }

    pub fn generator(&self, s: usize) -> Element {
        Element(vec![s as u8])
    }

    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        if b.is_identity() {
            return a.clone();
        }
        if a.is_identity() {
            return b.clone();
        }
        let mut w = a.0.clone();
        w.extend_from_slice(&b.0);
        self.reduce(&w)
    }

    pub fn inverse(&self, a: &Element) -> Element {
        let w: Vec<u8> = a.0.iter().rev().copied().collect();
        self.reduce(&w)
    }

    /// `s · a`.
    pub fn left_mul(&self, s: usize, a: &Element) -> Element {
        let mut w = Vec::with_capacity(a.len() + 1);
        w.push(s as u8);
        w.extend_from_slice(&a.0);
        self.reduce(&w)
    }

    /// `a · s`.
    pub fn right_mul(&self, a: &Element, s: usize) -> Element {
        let mut w = a.0.clone();
        w.push(s as u8);
        self.reduce(&w)
    }

    /// `ℓ(a s) < ℓ(a)`.
    pub fn is_right_descent(&self, a: &Element, s: usize) -> bool {
        match &self.lattice {
            Some(l) => Lattice::is_negative(&l.image(&a.0, s)),
            None => self.right_mul(a, s).len() < a.len(),
        }
    }

    /// `ℓ(s a) < ℓ(a)`.
    pub fn is_left_descent(&self, a: &Element, s: usize) -> bool {
        match &self.lattice {
            Some(l) => Lattice::is_negative(&l.inverse_image(&a.0, s)),
            None => self.left_mul(s, a).len() < a.len(),
        }
    }

    /// `w t w⁻¹`.
    pub fn conjugate(&self, w: &Element, t: usize) -> Element {
        let mut word = w.0.clone();
        word.push(t as u8);
        word.extend(w.0.iter().rev());
        self.reduce(&word)
    }

    pub fn refined_length(&self, a: &Element, phi: &Partition) -> Result<RefinedLength, WordsError> {
        self.d.check_allowable(phi)?;
        let mut counts: Vec<(String, u32)> = phi.vars().iter().map(|v| (v.clone(), 0)).collect();
        for &s in &a.0 {
            counts[phi.class_of(s as usize)].1 += 1;
        }
        Ok(RefinedLength { counts })
    }

    fn check_finite(&self, a: Subset) -> Result<num_bigint::BigUint, WordsError> {
        finite_order(self.d, a)
            .map_err(|_| WordsError::NotFinite(self.d.subset_names(a).into_iter().map(String::from).collect()))
    }

    /// All elements of the finite parabolic `W_a`, by length then
    /// lexicographically.
    pub fn enumerate(&self, a: Subset, cap: usize) -> Result<Vec<Element>, WordsError> {
        let order = self.check_finite(a)?;
        if order > num_bigint::BigUint::from(cap) {
            return Err(WordsError::CapExceeded {
                cap,
                order: order.to_string(),
            });
        }
        let mut out = vec![Element::identity()];
        let mut level = vec![Element::identity()];
        while !level.is_empty() {
            let mut next: HashSet<Element> = HashSet::new();
            for u in &level {
                for s in a.iter() {
                    if !self.is_right_descent(u, s) {
                        next.insert(self.right_mul(u, s));
                    }
                }
            }
            let mut next: Vec<Element> = next.into_iter().collect();
            next.sort();
            out.extend(next.iter().cloned());
            if out.len() > cap {
                return Err(WordsError::CapExceeded {
                    cap,
                    order: order.to_string(),
                });
            }
            level = next;
        }
        Ok(out)
    }

    /// Minimal-length representatives of the left cosets `w W_sub` in `W_a`.
    pub fn min_coset_reps(&self, a: Subset, sub: Subset) -> Result<Vec<Element>, WordsError> {
        self.check_finite(a)?;
        let sub = sub.intersection(a);
        let mut seen: HashSet<Element> = HashSet::from([Element::identity()]);
        let mut out = vec![Element::identity()];
        let mut level = vec![Element::identity()];
        while !level.is_empty() {
            let mut next = Vec::new();
            for w in &level {
                for s in a.iter() {
                    if self.is_left_descent(w, s) {
                        continue;
                    }
                    let u = self.left_mul(s, w);
                    if u.len() <= w.len() || sub.iter().any(|r| self.is_right_descent(&u, r)) {
                        continue;
                    }
                    if seen.insert(u.clone()) {
                        next.push(u);
                    }
                }
            }
            next.sort();
            out.extend(next.iter().cloned());
            level = next;
        }
        Ok(out)
    }

    /// Shortest element of `w W_sub`.
    pub fn min_left_coset_rep(&self, w: &Element, sub: Subset) -> Element {
        let mut w = w.clone();
        while let Some(s) = sub.iter().find(|&s| self.is_right_descent(&w, s)) {
            w = self.right_mul(&w, s);
        }
        w
    }

    /// Shortest element of `W_left · w · W_right`.
    pub fn min_double_coset(&self, left: Subset, w: &Element, right: Subset) -> Element {
        let mut w = w.clone();
        loop {
            if let Some(s) = left.iter().find(|&s| self.is_left_descent(&w, s)) {
                w = self.left_mul(s, &w);
                continue;
            }
            if let Some(s) = right.iter().find(|&s| self.is_right_descent(&w, s)) {
                w = self.right_mul(&w, s);
                continue;
            }
            break;
        }
        assert!(
            left.iter().all(|s| !self.is_left_descent(&w, s))
                && right.iter().all(|s| !self.is_right_descent(&w, s)),
            "double coset minimization left a descent"
        );
        w
    }

    /// Growth monomials summed over a finite parabolic, by enumeration.
    pub fn growth_by_enumeration(&self, a: Subset, phi: &Partition, cap: usize) -> Result<MultiPoly, WordsError> {
        let mut counts: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for w in self.enumerate(a, cap)? {
            let rl = self.refined_length(&w, phi)?;
            *counts.entry(rl.counts.iter().map(|(_, c)| *c).collect()).or_default() += 1;
        }
        Ok(MultiPoly::from_terms(phi.vars(), counts.into_iter().map(|(e, c)| (e, rat(c)))).unwrap())
    }
}

pub fn reduce(d: &CoxeterDiagram, word: &[u8]) -> Element {
    WordEngine::new(d).reduce(word)
}

pub fn multiply(d: &CoxeterDiagram, a: &Element, b: &Element) -> Element {
    WordEngine::new(d).multiply(a, b)
}

pub fn refined_length(d: &CoxeterDiagram, a: &Element, phi: &Partition) -> Result<RefinedLength, WordsError> {
    WordEngine::new(d).refined_length(a, phi)
}

pub fn enumerate(d: &CoxeterDiagram, a: Subset, cap: usize) -> Result<Vec<Element>, WordsError> {
    WordEngine::new(d).enumerate(a, cap)
}

pub fn min_double_coset(d: &CoxeterDiagram, left: Subset, w: &Element, right: Subset) -> Element {
    WordEngine::new(d).min_double_coset(left, w, right)
}

pub fn min_coset_reps(d: &CoxeterDiagram, a: Subset, sub: Subset) -> Result<Vec<Element>, WordsError> {
    WordEngine::new(d).min_coset_reps(a, sub)
}

/// Whether `W_a` is finite (re-exported for callers of this module).
pub fn parabolic_is_finite(d: &CoxeterDiagram, a: Subset) -> bool {
    is_finite(d, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_diagram;

    fn b2() -> CoxeterDiagram {
        parse_diagram("node a\nnode b\nedge a b 4").unwrap()
    }

    fn a2() -> CoxeterDiagram {
        parse_diagram("node a\nnode b\nedge a b 3").unwrap()
    }

    fn both<'a>(d: &'a CoxeterDiagram) -> [WordEngine<'a>; 2] {
        [WordEngine::new(d), WordEngine::tits(d)]
    }

    #[test]
    fn cancellation_and_braids() {
        let d = a2();
        for e in both(&d) {
            assert!(e.reduce(&[0, 0]).is_identity());
            assert_eq!(e.reduce(&[0, 1, 0]), e.reduce(&[1, 0, 1]));
            assert_eq!(e.reduce(&[1, 0, 1]).word(), &[0, 1, 0]);
        }
    }

    #[test]
    fn b2_longest_element() {
        let d = b2();
        for e in both(&d) {
            let w0 = e.reduce(&[0, 1, 0, 1]);
            assert_eq!(w0.len(), 4);
            assert_eq!(w0, e.reduce(&[1, 0, 1, 0]));
            let w = e.reduce(&[0, 1, 0, 1, 0]);
            assert_eq!(w.word(), &[1, 0, 1]);
            let ab = e.reduce(&[0, 1]);
            assert_eq!(e.multiply(&ab, &ab), w0);
            assert_eq!(e.multiply(&ab, &Element::identity()), ab);
            assert!(e.multiply(&e.generator(0), &e.generator(0)).is_identity());
        }
    }

    #[test]
    fn supports() {
        assert_eq!(Element::identity().support(), Subset::EMPTY);
        let d = a2();
        assert_eq!(reduce(&d, &[0, 1, 0]).support(), Subset::full(2));
        let d = b2();
        assert_eq!(reduce(&d, &[1, 0, 1]).support(), Subset::full(2));
    }

    #[test]
    fn refined_lengths() {
        let d = b2();
        let phi = Partition::from_assignment(&["x", "x0"]);
        let rl = refined_length(&d, &reduce(&d, &[0, 1, 0, 1]), &phi).unwrap();
        assert_eq!(rl.get("x"), 2);
        assert_eq!(rl.get("x0"), 2);
        let zero = refined_length(&d, &Element::identity(), &phi).unwrap();
        assert_eq!(zero.total(), 0);
        let d = a2();
        let bad = Partition::from_assignment(&["x", "y"]);
        assert!(refined_length(&d, &Element::identity(), &bad).is_err());
        let phi = Partition::constant(2, "x");
        let w = reduce(&d, &[0, 1, 0]);
        assert_eq!(refined_length(&d, &w, &phi).unwrap().get("x"), 3);
    }

    #[test]
    fn enumeration_counts() {
        let a1 = parse_diagram("node a").unwrap();
        let all = enumerate(&a1, a1.all(), 10).unwrap();
        assert_eq!(all, vec![Element::identity(), Element(vec![0])]);

        let d = b2();
        for e in both(&d) {
            let all = e.enumerate(d.all(), 100).unwrap();
            assert_eq!(all.len(), 8);
            let mut hist = [0; 5];
            for w in &all {
                hist[w.len()] += 1;
            }
            assert_eq!(hist, [1, 2, 2, 2, 1]);
        }
        let b3 = CoxeterDiagram::chain(&[Label::Finite(4), Label::Finite(3)]);
        assert_eq!(enumerate(&b3, b3.all(), 1000).unwrap().len(), 48);
        assert!(matches!(enumerate(&b3, b3.all(), 10), Err(WordsError::CapExceeded { .. })));
        let dinf = parse_diagram("node a\nnode b\nedge a b inf").unwrap();
        assert!(matches!(enumerate(&dinf, dinf.all(), 10), Err(WordsError::NotFinite(_))));
    }

    #[test]
    fn double_cosets() {
        let d = b2();
        let s2 = Subset::singleton(1);
        assert!(min_double_coset(&d, s2, &Element::identity(), s2).is_identity());
        assert!(min_double_coset(&d, s2, &reduce(&d, &[1]), s2).is_identity());
        let bab = reduce(&d, &[1, 0, 1]);
        assert_eq!(min_double_coset(&d, Subset::EMPTY, &bab, Subset::EMPTY), bab);
        // W_{s2} (s2 s1 s2) W_{s2} contains s1.
        assert_eq!(min_double_coset(&d, s2, &bab, s2).word(), &[0]);
    }

    #[test]
    fn coset_representatives() {
        let d = b2();
        assert_eq!(min_coset_reps(&d, d.all(), d.all()).unwrap(), vec![Element::identity()]);
        let reps = min_coset_reps(&d, d.all(), Subset::singleton(1)).unwrap();
        assert_eq!(reps.iter().map(Element::len).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        let d = a2();
        assert_eq!(min_coset_reps(&d, d.all(), Subset::singleton(0)).unwrap().len(), 3);
        let dinf = parse_diagram("node a\nnode b\nedge a b inf").unwrap();
        assert!(min_coset_reps(&dinf, dinf.all(), Subset::EMPTY).is_err());
    }

    #[test]
    fn infinite_dihedral_words() {
        let d = parse_diagram("node a\nnode b\nedge a b inf").unwrap();
        for e in both(&d) {
            let w = e.reduce(&[0, 1, 0, 1, 0, 1, 0]);
            assert_eq!(w.len(), 7);
            let v = e.reduce(&[0, 1, 1, 0, 1]);
            assert_eq!(v.word(), &[1]);
        }
    }
}

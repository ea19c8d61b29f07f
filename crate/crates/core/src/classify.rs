//! Recognition of finite irreducible Coxeter types by diagram shape, with
//! orders, fundamental degrees and Poincaré polynomials.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::diagram::{CoxeterDiagram, Label, Subset};
use crate::series::{rat, MultiPoly};

/// A finite irreducible Coxeter type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteType {
    A(u32),
    B(u32),
    D(u32),
    E6,
    E7,
    E8,
    F4,
    H3,
    H4,
    /// Dihedral of order `2m`, `m >= 5`.
    I2(u32),
}

impl FiniteType {
    pub fn rank(self) -> u32 {
        match self {
            FiniteType::A(n) | FiniteType::B(n) | FiniteType::D(n) => n,
            FiniteType::E6 => 6,
            FiniteType::E7 => 7,
            FiniteType::E8 => 8,
            FiniteType::F4 | FiniteType::H4 => 4,
            FiniteType::H3 => 3,
            FiniteType::I2(_) => 2,
        }
    }

    /// Fundamental degrees.
    pub fn degrees(self) -> Vec<u32> {
        match self {
            FiniteType::A(n) => (2..=n + 1).collect(),
            FiniteType::B(n) => (1..=n).map(|i| 2 * i).collect(),
            FiniteType::D(n) => {
                let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d
            }
            FiniteType::E6 => vec![2, 5, 6, 8, 9, 12],
            FiniteType::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            FiniteType::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
            FiniteType::F4 => vec![2, 6, 8, 12],
            FiniteType::H3 => vec![2, 6, 10],
            FiniteType::H4 => vec![2, 12, 20, 30],
            FiniteType::I2(m) => vec![2, m],
        }
    }

    pub fn order(self) -> BigUint {
        self.degrees().into_iter().map(BigUint::from).product()
    }

    /// Number of reflections, i.e. the length of the longest element.
    pub fn reflections(self) -> u32 {
        self.degrees().iter().map(|d| d - 1).sum()
    }

    /// `∏ (1 + x + ... + x^{d-1})` over the degrees.
    pub fn poincare(self, var: &str) -> MultiPoly {
        self.degrees()
            .into_iter()
            .map(|d| q_integer(var, d))
            .fold(MultiPoly::one(&[var]), |acc, p| &acc * &p)
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E6 => f.write_str("E6"),
            FiniteType::E7 => f.write_str("E7"),
            FiniteType::E8 => f.write_str("E8"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::H3 => f.write_str("H3"),
            FiniteType::H4 => f.write_str("H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl Serialize for FiniteType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `1 + x + ... + x^{d-1}`.
pub fn q_integer(var: &str, d: u32) -> MultiPoly {
    let coeffs: Vec<i64> = vec![1; d as usize];
    MultiPoly::univariate_int(var, &coeffs)
}

/// Result of classifying one connected component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Finite(FiniteType),
    NotFinite,
}

impl Classification {
    pub fn finite(self) -> Option<FiniteType> {
        match self {
            Classification::Finite(t) => Some(t),
            Classification::NotFinite => None,
        }
    }
}

/// Order of a parabolic subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupOrder {
    Finite(BigUint),
    Infinite,
}

impl GroupOrder {
    pub fn finite(&self) -> Option<&BigUint> {
        match self {
            GroupOrder::Finite(n) => Some(n),
            GroupOrder::Infinite => None,
        }
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupOrder::Finite(n) => write!(f, "{n}"),
            GroupOrder::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub generators: Vec<String>,
    #[serde(rename = "type")]
    pub kind: Option<FiniteType>,
    pub order: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FinitenessReport {
    pub is_finite: bool,
    pub components: Vec<ComponentReport>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("parabolic subgroup on {0:?} is infinite")]
    NotFinite(Vec<String>),
}

/// Classifies a connected subset of the diagram.
pub fn classify_component(d: &CoxeterDiagram, comp: Subset) -> Classification {
    let verts: Vec<usize> = comp.iter().collect();
    let k = verts.len();
    if k == 0 {
        return Classification::NotFinite;
    }
    if k == 1 {
        return Classification::Finite(FiniteType::A(1));
    }
    let mut edges: Vec<(usize, usize, u32)> = Vec::new();
    for (x, &i) in verts.iter().enumerate() {
        for &j in &verts[x + 1..] {
            match d.label(i, j) {
                Label::Infinite => return Classification::NotFinite,
                Label::Finite(2) => {}
                Label::Finite(m) => edges.push((i, j, m)),
            }
        }
    }
    if edges.len() != k - 1 || d.connected_components(comp).len() != 1 {
        return Classification::NotFinite;
    }
    if k == 2 {
        return Classification::Finite(match edges[0].2 {
            3 => FiniteType::A(2),
            4 => FiniteType::B(2),
            m => FiniteType::I2(m),
        });
    }
    let degree = |v: usize| edges.iter().filter(|e| e.0 == v || e.1 == v).count();
    if verts.iter().any(|&v| degree(v) > 3) {
        return Classification::NotFinite;
    }
    let branches: Vec<usize> = verts.iter().copied().filter(|&v| degree(v) == 3).collect();
    let heavy: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 > 3).collect();
    let k32 = k as u32;
    match branches.len() {
        0 => {
            // A path; find it in order to locate the heavy edge.
            let Some(&end) = verts.iter().find(|&&v| degree(v) == 1) else {
                return Classification::NotFinite;
            };
            let mut path = vec![end];
            while path.len() < k {
                let cur = *path.last().unwrap();
                let prev = path.len().checked_sub(2).map(|i| path[i]);
                let next = edges
                    .iter()
                    .filter_map(|e| match (e.0 == cur, e.1 == cur) {
                        (true, _) => Some(e.1),
                        (_, true) => Some(e.0),
                        _ => None,
                    })
                    .find(|&n| Some(n) != prev)
                    .expect("connected path");
                path.push(next);
            }
            match heavy.as_slice() {
                [] => Classification::Finite(FiniteType::A(k32)),
                [e] => {
                    let pos = path
                        .windows(2)
                        .position(|w| (w[0] == e.0 && w[1] == e.1) || (w[0] == e.1 && w[1] == e.0))
                        .unwrap();
                    let at_end = pos == 0 || pos == k - 2;
                    match (e.2, at_end, k) {
                        (4, true, _) => Classification::Finite(FiniteType::B(k32)),
                        (4, false, 4) => Classification::Finite(FiniteType::F4),
                        (5, true, 3) => Classification::Finite(FiniteType::H3),
                        (5, true, 4) => Classification::Finite(FiniteType::H4),
                        _ => Classification::NotFinite,
                    }
                }
                _ => Classification::NotFinite,
            }
        }
        1 => {
            if !heavy.is_empty() {
                return Classification::NotFinite;
            }
            let centre = branches[0];
            let mut arms: Vec<usize> = Vec::new();
            for e in edges.iter().filter(|e| e.0 == centre || e.1 == centre) {
                let mut prev = centre;
                let mut cur = if e.0 == centre { e.1 } else { e.0 };
                let mut len = 1;
                loop {
                    let next = edges.iter().find_map(|f| {
                        let other = if f.0 == cur {
                            f.1
                        } else if f.1 == cur {
                            f.0
                        } else {
                            return None;
                        };
                        (other != prev).then_some(other)
                    });
                    match next {
                        Some(n) => {
                            prev = cur;
                            cur = n;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Classification::Finite(FiniteType::D(k32)),
                [1, 2, 2] => Classification::Finite(FiniteType::E6),
                [1, 2, 3] => Classification::Finite(FiniteType::E7),
                [1, 2, 4] => Classification::Finite(FiniteType::E8),
                _ => Classification::NotFinite,
            }
        }
        _ => Classification::NotFinite,
    }
}

/// Classifies every component of `a`.
pub fn finiteness_report(d: &CoxeterDiagram, a: Subset) -> FinitenessReport {
    let components: Vec<ComponentReport> = d
        .connected_components(a)
        .into_iter()
        .map(|c| {
            let kind = classify_component(d, c).finite();
            ComponentReport {
                generators: d.subset_names(c).into_iter().map(String::from).collect(),
                kind,
                order: kind.map(|k| k.order().to_string()),
            }
        })
        .collect();
    FinitenessReport {
        is_finite: components.iter().all(|c| c.kind.is_some()),
        components,
    }
}

/// Finite types of the components of `a`, or `None` if `W_a` is infinite.
pub fn component_types(d: &CoxeterDiagram, a: Subset) -> Option<Vec<(Subset, FiniteType)>> {
    d.connected_components(a)
        .into_iter()
        .map(|c| classify_component(d, c).finite().map(|t| (c, t)))
        .collect()
}

pub fn is_finite(d: &CoxeterDiagram, a: Subset) -> bool {
    component_types(d, a).is_some()
}

pub fn group_order(d: &CoxeterDiagram, a: Subset) -> GroupOrder {
    match component_types(d, a) {
        Some(types) => GroupOrder::Finite(
            types
                .into_iter()
                .map(|(_, t)| t.order())
                .fold(BigUint::one(), |acc, o| acc * o),
        ),
        None => GroupOrder::Infinite,
    }
}

/// Order of a subgroup known to be finite.
pub fn finite_order(d: &CoxeterDiagram, a: Subset) -> Result<BigUint, ClassifyError> {
    match group_order(d, a) {
        GroupOrder::Finite(n) => Ok(n),
        GroupOrder::Infinite => Err(ClassifyError::NotFinite(
            d.subset_names(a).into_iter().map(String::from).collect(),
        )),
    }
}

/// Single-variable Poincaré polynomial of a finite parabolic.
pub fn poincare_single(d: &CoxeterDiagram, a: Subset, var: &str) -> Result<MultiPoly, ClassifyError> {
    let types = component_types(d, a).ok_or_else(|| {
        ClassifyError::NotFinite(d.subset_names(a).into_iter().map(String::from).collect())
    })?;
    Ok(types
        .into_iter()
        .fold(MultiPoly::constant(&[var], rat(1)), |acc, (_, t)| {
            &acc * &t.poincare(var)
        }))
}

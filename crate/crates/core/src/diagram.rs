//! Decorated Dynkin diagrams: the Coxeter matrix of a system `(W, S)`
//! together with an optional distinguished subset `T` and an optional
//! allowable partition of the generators into growth-series variables.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! node a
//! node b
//! edge a b 4        # label >= 2 or "inf"; unlisted pairs commute (label 2)
//! T a
//! class x : a
//! class y : b
//! ```

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use sha2::{Digest, Sha256};
use thiserror::Error;

/// Subsets are single machine words.
pub const MAX_RANK: usize = 64;

/// Entry `m_{st}` of a Coxeter matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Finite(u32),
    Infinite,
}

impl Label {
    pub const COMMUTE: Label = Label::Finite(2);

    pub fn is_infinite(self) -> bool {
        matches!(self, Label::Infinite)
    }

    pub fn is_odd(self) -> bool {
        matches!(self, Label::Finite(m) if m % 2 == 1)
    }

    /// Even or infinite.
    pub fn is_even_or_infinite(self) -> bool {
        !self.is_odd()
    }

    /// `m / 2` with `inf / 2 = inf`. Only meaningful for even labels.
    pub fn half(self) -> Label {
        match self {
            Label::Finite(m) => Label::Finite(m / 2),
            Label::Infinite => Label::Infinite,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Finite(m) => Some(m),
            Label::Infinite => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Finite(m) => write!(f, "{m}"),
            Label::Infinite => f.write_str("inf"),
        }
    }
}

/// A set of generators, as a bitmask over declaration ordinals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(i: usize) -> Subset {
        debug_assert!(i < MAX_RANK);
        Subset(1 << i)
    }

    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn of<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        it.into_iter().fold(Subset::EMPTY, |acc, i| acc.with(i))
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_RANK && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending ordinal order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, starting with the empty set.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut cur = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = Subset(cur);
            cur = cur.wrapping_sub(full) & full;
            if cur == 0 {
                done = true;
            }
            Some(out)
        })
    }
}

/// An allowable partition `φ: S → variables`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    vars: Vec<String>,
    class_of: Vec<usize>,
}

impl Partition {
    /// Builds a partition from per-generator variable names; variables are
    /// ordered by first appearance.
    pub fn from_assignment<S: AsRef<str>>(assignment: &[S]) -> Partition {
        let mut vars: Vec<String> = Vec::new();
        let class_of = assignment
            .iter()
            .map(|v| {
                let v = v.as_ref();
                match vars.iter().position(|x| x == v) {
                    Some(i) => i,
                    None => {
                        vars.push(v.to_string());
                        vars.len() - 1
                    }
                }
            })
            .collect();
        Partition { vars, class_of }
    }

    /// Every generator in one variable.
    pub fn constant(rank: usize, var: &str) -> Partition {
        Partition::from_assignment(&vec![var; rank])
    }

    /// `x0` on `S - T` and `x` on `T`, in that variable order.
    pub fn closure_default(rank: usize, t: Subset) -> Partition {
        let mut p = Partition {
            vars: vec!["x0".into(), "x".into()],
            class_of: (0..rank).map(|i| usize::from(t.contains(i))).collect(),
        };
        p.drop_unused();
        p
    }

    fn drop_unused(&mut self) {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|c| self.class_of.contains(c))
            .collect();
        let vars = used.iter().map(|&c| self.vars[c].clone()).collect();
        for c in &mut self.class_of {
            *c = used.iter().position(|u| u == c).unwrap();
        }
        self.vars = vars;
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn class_of(&self, generator: usize) -> usize {
        self.class_of[generator]
    }

    pub fn var_of(&self, generator: usize) -> &str {
        &self.vars[self.class_of[generator]]
    }

    pub fn rank(&self) -> usize {
        self.class_of.len()
    }

    /// Generators assigned to variable index `class`.
    pub fn members(&self, class: usize) -> Subset {
        Subset::of((0..self.class_of.len()).filter(|&i| self.class_of[i] == class))
    }

    /// Restriction to the generators of `a`, re-indexed densely; unused
    /// variables are dropped.
    pub fn restrict(&self, a: Subset) -> Partition {
        let mut p = Partition {
            vars: self.vars.clone(),
            class_of: a.iter().map(|i| self.class_of[i]).collect(),
        };
        p.drop_unused();
        p
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: duplicate node `{name}`")]
    DuplicateNode { line: usize, name: String },
    #[error("line {line}: duplicate edge `{a}`-`{b}`")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("line {line}: unknown node `{name}`")]
    UnknownNode { line: usize, name: String },
    #[error("line {line}: bad label `{label}` (expected an integer >= 2 or `inf`)")]
    BadLabel { line: usize, label: String },
    #[error("line {line}: edge from `{name}` to itself")]
    SelfEdge { line: usize, name: String },
    #[error("more than {MAX_RANK} generators")]
    TooManyGenerators,
    #[error("generator `{0}` is not assigned to any class")]
    Unclassified(String),
    #[error("generator `{0}` is assigned to two classes")]
    DoubleClass(String),
    #[error("partition is not allowable: `{from}` and `{to}` are conjugate via the odd path {path:?} but lie in different classes")]
    NotAllowable {
        from: String,
        to: String,
        path: Vec<String>,
    },
}

/// A Coxeter matrix over named generators, with optional `T` and partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterDiagram {
    names: Vec<String>,
    labels: Vec<Label>,
    t_set: Option<Subset>,
    partition: Option<Partition>,
}

impl CoxeterDiagram {
    /// A diagram with all pairs commuting.
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> CoxeterDiagram {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(names.len() <= MAX_RANK, "rank above {MAX_RANK}");
        let n = names.len();
        let mut labels = vec![Label::COMMUTE; n * n];
        for i in 0..n {
            labels[i * n + i] = Label::Finite(1);
        }
        CoxeterDiagram {
            names,
            labels,
            t_set: None,
            partition: None,
        }
    }

    /// Linear diagram `g0 - g1 - ... ` with the given consecutive labels.
    pub fn chain(labels: &[Label]) -> CoxeterDiagram {
        let n = labels.len() + 1;
        let mut d = CoxeterDiagram::new((0..n).map(|i| format!("s{}", i + 1)));
        for (i, &m) in labels.iter().enumerate() {
            d.set_label(i, i + 1, m);
        }
        d
    }

    pub fn set_label(&mut self, i: usize, j: usize, m: Label) {
        assert_ne!(i, j);
        let n = self.rank();
        self.labels[i * n + j] = m;
        self.labels[j * n + i] = m;
    }

    pub fn with_t(mut self, t: Subset) -> CoxeterDiagram {
        assert!(t.is_subset(self.all()));
        self.t_set = Some(t);
        self
    }

    /// Attaches a partition; fails if it is not allowable.
    pub fn with_partition(mut self, p: Partition) -> Result<CoxeterDiagram, DiagramError> {
        assert_eq!(p.rank(), self.rank());
        self.check_allowable(&p)?;
        self.partition = Some(p);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn all(&self) -> Subset {
        Subset::full(self.rank())
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn label(&self, i: usize, j: usize) -> Label {
        self.labels[i * self.rank() + j]
    }

    pub fn t_set(&self) -> Option<Subset> {
        self.t_set
    }

    /// The declared partition if any; otherwise the default one
    /// (`x0`/`x` split when `T` is declared, a single `x` otherwise).
    pub fn partition(&self) -> Partition {
        match (&self.partition, self.t_set) {
            (Some(p), _) => p.clone(),
            (None, Some(t)) => Partition::closure_default(self.rank(), t),
            (None, None) => Partition::constant(self.rank(), "x"),
        }
    }

    pub fn declared_partition(&self) -> Option<&Partition> {
        self.partition.as_ref()
    }

    /// Whether every label is in `{1, 2, inf}`.
    pub fn is_right_angled(&self) -> bool {
        self.labels
            .iter()
            .all(|&m| matches!(m, Label::Finite(1 | 2) | Label::Infinite))
    }

    /// Smallest superset of `t0` closed under joining by odd-labeled edges.
    pub fn odd_closure(&self, t0: Subset) -> Subset {
        let mut closed = t0;
        let mut queue: VecDeque<usize> = t0.iter().collect();
        while let Some(i) = queue.pop_front() {
            for j in 0..self.rank() {
                if j != i && !closed.contains(j) && self.label(i, j).is_odd() {
                    closed = closed.with(j);
                    queue.push_back(j);
                }
            }
        }
        closed
    }

    /// `{s : m_{st} = 2 for every t in a}`.
    pub fn perp(&self, a: Subset) -> Subset {
        Subset::of(
            (0..self.rank()).filter(|&s| a.iter().all(|t| self.label(s, t) == Label::COMMUTE)),
        )
    }

    /// Neighbours of `i` (label other than 2) inside `within`.
    pub fn neighbours(&self, i: usize, within: Subset) -> Subset {
        Subset::of(
            within
                .iter()
                .filter(|&j| j != i && self.label(i, j) != Label::COMMUTE),
        )
    }

    /// Sub-diagram on `a`, with `T` and partition restricted.
    pub fn induced(&self, a: Subset) -> CoxeterDiagram {
        let idx: Vec<usize> = a.iter().collect();
        let mut d = CoxeterDiagram::new(idx.iter().map(|&i| self.names[i].clone()));
        for (x, &i) in idx.iter().enumerate() {
            for (y, &j) in idx.iter().enumerate().skip(x + 1) {
                d.set_label(x, y, self.label(i, j));
            }
        }
        let reindex = |s: Subset| {
            Subset::of(idx.iter().enumerate().filter(|(_, &i)| s.contains(i)).map(|(x, _)| x))
        };
        d.t_set = self.t_set.map(reindex);
        d.partition = self.partition.as_ref().map(|p| p.restrict(a));
        d
    }

    /// Connected components of `a` in the graph of non-commuting pairs,
    /// each listed once, ordered by smallest member.
    pub fn connected_components(&self, a: Subset) -> Vec<Subset> {
        let mut rest = a;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut comp = Subset::singleton(start);
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in self.neighbours(i, a).difference(comp).iter() {
                    comp = comp.with(j);
                    stack.push(j);
                }
            }
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    fn odd_path(&self, from: usize, to: usize) -> Vec<usize> {
        let n = self.rank();
        let mut prev = vec![usize::MAX; n];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(i) = queue.pop_front() {
            if i == to {
                break;
            }
            for j in 0..n {
                if prev[j] == usize::MAX && j != i && self.label(i, j).is_odd() {
                    prev[j] = i;
                    queue.push_back(j);
                }
            }
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Checks that `p` is constant on odd-conjugacy classes.
    pub fn check_allowable(&self, p: &Partition) -> Result<(), DiagramError> {
        for i in 0..self.rank() {
            let class = self.odd_closure(Subset::singleton(i));
            if let Some(j) = class.iter().find(|&j| p.class_of(j) != p.class_of(i)) {
                let path = self.odd_path(i, j);
                return Err(DiagramError::NotAllowable {
                    from: self.names[i].clone(),
                    to: self.names[j].clone(),
                    path: path.into_iter().map(|k| self.names[k].clone()).collect(),
                });
            }
        }
        Ok(())
    }

    pub fn subset_names(&self, a: Subset) -> Vec<&str> {
        a.iter().map(|i| self.name(i)).collect()
    }

    /// Resolves generator names to a subset.
    pub fn subset_of(&self, names: &[&str]) -> Option<Subset> {
        names
            .iter()
            .map(|n| self.index_of(n))
            .try_fold(Subset::EMPTY, |acc, i| i.map(|i| acc.with(i)))
    }

    /// Canonical text form: nodes in ordinal order, non-commuting edges in
    /// lexicographic order of names, then `T` and classes.
    pub fn to_dsl(&self) -> String {
        let mut out = String::new();
        for n in &self.names {
            out.push_str(&format!("node {n}\n"));
        }
        let mut edges: Vec<(&str, &str, Label)> = Vec::new();
        for i in 0..self.rank() {
            for j in i + 1..self.rank() {
                let m = self.label(i, j);
                if m != Label::COMMUTE {
                    let (a, b) = (self.name(i), self.name(j));
                    edges.push(if a <= b { (a, b, m) } else { (b, a, m) });
                }
            }
        }
        edges.sort();
        for (a, b, m) in edges {
            out.push_str(&format!("edge {a} {b} {m}\n"));
        }
        if let Some(t) = self.t_set {
            if !t.is_empty() {
                out.push_str(&format!("T {}\n", self.subset_names(t).join(" ")));
            }
        }
        if let Some(p) = &self.partition {
            for (c, var) in p.vars().iter().enumerate() {
                out.push_str(&format!("class {var} : {}\n", self.subset_names(p.members(c)).join(" ")));
            }
        }
        out
    }

    /// Short stable identifier of the canonical text form.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_dsl().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// A chain of generators starting at a `T` generator, as written in a
/// `face` line.
pub type FacePath = Vec<String>;

/// A parsed diagram file: the diagram plus any `face` lines naming a
/// simplex of the closure nerve (used for link computations).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFile {
    pub diagram: CoxeterDiagram,
    pub faces: Vec<FacePath>,
}

fn is_name(tok: &str) -> bool {
    !tok.is_empty()
        && tok
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '@' | '.'))
}

fn parse_label(tok: &str, line: usize) -> Result<Label, DiagramError> {
    if tok == "inf" {
        return Ok(Label::Infinite);
    }
    match tok.parse::<u32>() {
        Ok(m) if m >= 2 => Ok(Label::Finite(m)),
        _ => Err(DiagramError::BadLabel {
            line,
            label: tok.to_string(),
        }),
    }
}

/// Parses the diagram text format, including optional `face` lines.
pub fn parse_file(text: &str) -> Result<DiagramFile, DiagramError> {
    let mut names: Vec<String> = Vec::new();
    let mut edges: Vec<(usize, String, String, Label)> = Vec::new();
    let mut t_names: Option<(usize, Vec<String>)> = None;
    let mut classes: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut faces: Vec<(usize, Vec<String>)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else {
            continue;
        };
        let syntax = |msg: &str| DiagramError::Syntax {
            line,
            msg: msg.to_string(),
        };
        let check_names = |ts: &[&str]| -> Result<(), DiagramError> {
            match ts.iter().find(|t| !is_name(t)) {
                Some(bad) => Err(syntax(&format!("invalid name `{bad}`"))),
                None => Ok(()),
            }
        };
        match head {
            "node" => {
                let [name] = rest else {
                    return Err(syntax("expected `node NAME`"));
                };
                check_names(rest)?;
                if names.iter().any(|n| n == name) {
                    return Err(DiagramError::DuplicateNode {
                        line,
                        name: name.to_string(),
                    });
                }
                names.push(name.to_string());
            }
            "edge" => {
                let [a, b, m] = rest else {
                    return Err(syntax("expected `edge NAME NAME LABEL`"));
                };
                check_names(&rest[..2])?;
                let label = parse_label(m, line)?;
                edges.push((line, a.to_string(), b.to_string(), label));
            }
            "T" => {
                if rest.is_empty() {
                    return Err(syntax("expected `T NAME+`"));
                }
                check_names(rest)?;
                if t_names.is_some() {
                    return Err(syntax("`T` declared twice"));
                }
                t_names = Some((line, rest.iter().map(|s| s.to_string()).collect()));
            }
            "class" => {
                if rest.len() < 3 || rest[1] != ":" {
                    return Err(syntax("expected `class VAR : NAME+`"));
                }
                check_names(&rest[..1])?;
                check_names(&rest[2..])?;
                classes.push((
                    line,
                    rest[0].to_string(),
                    rest[2..].iter().map(|s| s.to_string()).collect(),
                ));
            }
            "face" => {
                if rest.is_empty() {
                    return Err(syntax("expected `face NAME+`"));
                }
                check_names(rest)?;
                faces.push((line, rest.iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(syntax(&format!("unknown directive `{other}`"))),
        }
    }

    if names.len() > MAX_RANK {
        return Err(DiagramError::TooManyGenerators);
    }
    let mut d = CoxeterDiagram::new(names.clone());
    let lookup = |name: &str, line: usize| {
        d.index_of(name).ok_or_else(|| DiagramError::UnknownNode {
            line,
            name: name.to_string(),
        })
    };
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut resolved = Vec::new();
    for (line, a, b, m) in &edges {
        let (i, j) = (lookup(a, *line)?, lookup(b, *line)?);
        if i == j {
            return Err(DiagramError::SelfEdge {
                line: *line,
                name: a.clone(),
            });
        }
        if seen.insert((i.min(j), i.max(j)), *line).is_some() {
            return Err(DiagramError::DuplicateEdge {
                line: *line,
                a: a.clone(),
                b: b.clone(),
            });
        }
        resolved.push((i, j, *m));
    }
    let t = match &t_names {
        Some((line, ts)) => Some(
            ts.iter()
                .map(|n| lookup(n, *line))
                .collect::<Result<Subset, _>>()?,
        ),
        None => None,
    };
    let mut assignment: Vec<Option<String>> = vec![None; names.len()];
    for (line, var, members) in &classes {
        for m in members {
            let i = lookup(m, *line)?;
            if assignment[i].replace(var.clone()).is_some() {
                return Err(DiagramError::DoubleClass(m.clone()));
            }
        }
    }
    for (line, path) in &faces {
        for n in path {
            lookup(n, *line)?;
        }
    }
    for (i, j, m) in resolved {
        d.set_label(i, j, m);
    }
    d.t_set = t;
    if !classes.is_empty() {
        let vars = assignment
            .iter()
            .enumerate()
            .map(|(i, v)| v.clone().ok_or_else(|| DiagramError::Unclassified(names[i].clone())))
            .collect::<Result<Vec<_>, _>>()?;
        d = d.with_partition(Partition::from_assignment(&vars))?;
    }
    Ok(DiagramFile {
        diagram: d,
        faces: faces.into_iter().map(|(_, p)| p).collect(),
    })
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        Subset::of(it)
    }
}

/// Parses a diagram; `face` lines are accepted and ignored.
pub fn parse_diagram(text: &str) -> Result<CoxeterDiagram, DiagramError> {
    parse_file(text).map(|f| f.diagram)
}

#[cfg(test)]
mod tests {
    use super::*;

    const B2: &str = "node a\nnode b\nedge a b 4\n";

    #[test]
    fn parses_small_diagram() {
        let d = parse_diagram(B2).unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.label(0, 1), Label::Finite(4));
        assert_eq!(d.label(1, 0), Label::Finite(4));
        assert_eq!(d.label(0, 0), Label::Finite(1));
    }

    #[test]
    fn unlisted_pairs_commute() {
        let d = parse_diagram("node a\nnode b").unwrap();
        assert_eq!(d.label(0, 1), Label::COMMUTE);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            parse_diagram("node a\nnode a"),
            Err(DiagramError::DuplicateNode { line: 2, .. })
        ));
        assert!(matches!(
            parse_diagram("node a\nnode b\nedge a b 3\nedge b a 4"),
            Err(DiagramError::DuplicateEdge { line: 4, .. })
        ));
        assert!(matches!(
            parse_diagram("node a\nnode b\nedge a b 1"),
            Err(DiagramError::BadLabel { .. })
        ));
        assert!(matches!(
            parse_diagram("node a\nnode b\nedge a b x"),
            Err(DiagramError::BadLabel { .. })
        ));
        assert!(matches!(
            parse_diagram("node a\nedge a c 3"),
            Err(DiagramError::UnknownNode { .. })
        ));
        assert!(matches!(
            parse_diagram("node a\nfoo a"),
            Err(DiagramError::Syntax { .. })
        ));
        assert!(matches!(
            parse_diagram("node a\nnode b\nedge a b 3\nclass x : a\nclass y : b"),
            Err(DiagramError::NotAllowable { .. })
        ));
    }

    #[test]
    fn allowability_reports_odd_path() {
        let text = "node a\nnode b\nnode c\nedge a b 3\nedge b c 5\nclass x : a b\nclass y : c";
        match parse_diagram(text) {
            Err(DiagramError::NotAllowable { path, .. }) => {
                assert_eq!(path, vec!["a", "b", "c"]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let ok = "node a\nnode b\nnode c\nedge a b 3\nedge b c 4\nclass x : a b\nclass y : c";
        assert!(parse_diagram(ok).is_ok());
    }

    #[test]
    fn odd_closure_examples() {
        let a2 = parse_diagram("node a\nnode b\nedge a b 3").unwrap();
        assert_eq!(a2.odd_closure(Subset::singleton(0)), Subset::full(2));
        let b2 = parse_diagram(B2).unwrap();
        assert_eq!(b2.odd_closure(Subset::singleton(0)), Subset::singleton(0));
    }

    #[test]
    fn perp_examples() {
        let b2 = parse_diagram(B2).unwrap();
        assert_eq!(b2.perp(Subset::singleton(0)), Subset::EMPTY);
        assert_eq!(b2.perp(Subset::EMPTY), b2.all());
    }

    #[test]
    fn induced_and_components() {
        let d = parse_diagram("node a\nnode b\nnode c\nedge a b 4").unwrap();
        let comps = d.connected_components(d.all());
        assert_eq!(comps, vec![Subset(0b011), Subset(0b100)]);
        assert!(d.connected_components(Subset::EMPTY).is_empty());
        let a1 = d.induced(Subset::singleton(0));
        assert_eq!(a1.rank(), 1);
        assert_eq!(d.induced(Subset::EMPTY).rank(), 0);
    }

    #[test]
    fn default_partitions() {
        let d = parse_diagram("node a\nnode b\nedge a b 4\nT a").unwrap();
        let p = d.partition();
        assert_eq!(p.vars(), ["x0", "x"]);
        assert_eq!(p.var_of(0), "x");
        assert_eq!(p.var_of(1), "x0");
        let plain = parse_diagram(B2).unwrap().partition();
        assert_eq!(plain.vars(), ["x"]);
    }

    #[test]
    fn serialization_is_canonical() {
        let text = "node b\nnode a\nnode c\nedge c a 3\nedge b a inf\nT b\n";
        let d = parse_diagram(text).unwrap();
        let canon = d.to_dsl();
        assert_eq!(canon, "node b\nnode a\nnode c\nedge a b inf\nedge a c 3\nT b\n");
        assert_eq!(parse_diagram(&canon).unwrap(), d);
        assert_eq!(parse_diagram(&canon).unwrap().to_dsl(), canon);
    }

    #[test]
    fn subset_enumeration() {
        let s = Subset(0b101);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all, vec![Subset(0), Subset(1), Subset(4), Subset(5)]);
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn label_half() {
        assert_eq!(Label::Finite(4).half(), Label::Finite(2));
        assert_eq!(Label::Infinite.half(), Label::Infinite);
    }
}

//! Finite posets: construction from cover lists, validation, order queries,
//! and the standard example posets used throughout the crate.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("cycle detected through element `{0}`")]
    CycleDetected(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("bad parameter for standard poset `{name}`: {reason}")]
    BadParam { name: String, reason: String },
    #[error("malformed poset input: {0}")]
    Malformed(String),
}

/// A pair `src <= tgt` of element indices. Proper iff `src != tgt`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalRef {
    pub src: usize,
    pub tgt: usize,
}

impl IntervalRef {
    pub fn new(src: usize, tgt: usize) -> Self {
        IntervalRef { src, tgt }
    }

    pub fn is_proper(&self) -> bool {
        self.src != self.tgt
    }
}

/// A finite poset over densely indexed elements.
///
/// `leq` is the full reflexive-transitive relation as an n x n boolean
/// matrix; `covers` is its transitive reduction. Values are immutable after
/// construction and all queries are pure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    pub name: String,
    names: Vec<String>,
    n: usize,
    leq: Vec<bool>,
    covers: Vec<(usize, usize)>,
}

impl Poset {
    /// Builds a poset from distinct labels and a list of cover pairs.
    ///
    /// The input digraph is closed reflexively and transitively; a directed
    /// cycle (which would break antisymmetry) is reported as an error. The
    /// stored cover list is renormalized to the transitive reduction, so
    /// redundant input edges are accepted and dropped.
    pub fn build(
        name: impl Into<String>,
        names: &[&str],
        covers: &[(&str, &str)],
    ) -> Result<Poset, PosetError> {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let n = names.len();
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(PosetError::DuplicateLabel(a.clone()));
            }
        }
        let idx = |label: &str| -> Result<usize, PosetError> {
            names
                .iter()
                .position(|s| s == label)
                .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
        };
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (a, b) in covers {
            let (i, j) = (idx(a)?, idx(b)?);
            leq[i * n + j] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if leq[i * n + k] {
                    for j in 0..n {
                        if leq[k * n + j] {
                            leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(PosetError::CycleDetected(names[i].clone()));
                }
            }
        }
        let covers = transitive_reduction(&leq, n);
        Ok(Poset {
            name: name.into(),
            names,
            n,
            leq,
            covers,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn label(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, label: &str) -> Result<usize, PosetError> {
        self.names
            .iter()
            .position(|s| s == label)
            .ok_or_else(|| PosetError::UnknownLabel(label.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Hasse covers, sorted by index pair.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        self.covers.binary_search(&(i, j)).is_ok()
    }

    pub fn up_set(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.leq(i, j)).collect()
    }

    pub fn down_set(&self, i: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| self.leq(j, i)).collect()
    }

    pub fn interval(&self, src: usize, tgt: usize) -> Option<IntervalRef> {
        if self.leq(src, tgt) {
            Some(IntervalRef::new(src, tgt))
        } else {
            None
        }
    }

    /// Greatest lower bound of `{y, z}` inside the up-set of `x`, if it exists.
    pub fn glb_in_up_set(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        debug_assert!(self.leq(x, y) && self.leq(x, z));
        let lower: Vec<usize> = (0..self.n)
            .filter(|&w| self.leq(x, w) && self.leq(w, y) && self.leq(w, z))
            .collect();
        greatest(self, &lower)
    }

    pub fn lub_in_down_set(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        debug_assert!(self.leq(y, x) && self.leq(z, x));
        let upper: Vec<usize> = (0..self.n)
            .filter(|&w| self.leq(w, x) && self.leq(y, w) && self.leq(z, w))
            .collect();
        least(self, &upper)
    }

    /// Least upper bound of `{y, z}` among all common upper bounds, if any
    /// common upper bound exists. In a local lattice the least one exists
    /// whenever the set of upper bounds is nonempty, because the relevant
    /// up-set is a meet-semilattice.
    pub fn lub(&self, y: usize, z: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.n)
            .filter(|&w| self.leq(y, w) && self.leq(z, w))
            .collect();
        least(self, &upper)
    }

    pub fn glb(&self, y: usize, z: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.n)
            .filter(|&w| self.leq(w, y) && self.leq(w, z))
            .collect();
        greatest(self, &lower)
    }

    pub fn has_common_upper_bound(&self, y: usize, z: usize) -> bool {
        (0..self.n).any(|w| self.leq(y, w) && self.leq(z, w))
    }

    pub fn has_common_lower_bound(&self, y: usize, z: usize) -> bool {
        (0..self.n).any(|w| self.leq(w, y) && self.leq(w, z))
    }

    /// Checks the local-lattice property: every up-set is a meet-semilattice
    /// and every down-set is a join-semilattice. On failure returns a witness
    /// `(base, {y, z})` naming the base point and the pair without a bound.
    pub fn local_lattice_witness(&self) -> Option<LocalLatticeFailure> {
        for x in 0..self.n {
            let up = self.up_set(x);
            for (a, &y) in up.iter().enumerate() {
                for &z in &up[a + 1..] {
                    if self.glb_in_up_set(x, y, z).is_none() {
                        return Some(LocalLatticeFailure {
                            base: x,
                            pair: (y, z),
                            in_up_set: true,
                        });
                    }
                }
            }
            let down = self.down_set(x);
            for (a, &y) in down.iter().enumerate() {
                for &z in &down[a + 1..] {
                    if self.lub_in_down_set(x, y, z).is_none() {
                        return Some(LocalLatticeFailure {
                            base: x,
                            pair: (y, z),
                            in_up_set: false,
                        });
                    }
                }
            }
        }
        None
    }

    pub fn is_local_lattice(&self) -> bool {
        self.local_lattice_witness().is_none()
    }

    /// Condition: any two elements with a common upper bound have a common
    /// lower bound.
    pub fn check_suffnc1(&self) -> bool {
        for y in 0..self.n {
            for z in y + 1..self.n {
                if self.has_common_upper_bound(y, z) && !self.has_common_lower_bound(y, z) {
                    return false;
                }
            }
        }
        true
    }

    /// Connected components of the comparability graph.
    #[allow(clippy::needless_range_loop)]
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in 0..self.n {
                    if !seen[w] && v != w && self.comparable(v, w) {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// For each component, an element comparable to every element of that
    /// component, if one exists. Such a component is a cone, so its order
    /// complex is contractible.
    pub fn cone_points(&self) -> Vec<(Vec<usize>, Option<usize>)> {
        self.components()
            .into_iter()
            .map(|comp| {
                let cone = comp
                    .iter()
                    .copied()
                    .find(|&c| comp.iter().all(|&v| self.comparable(c, v)));
                (comp, cone)
            })
            .collect()
    }

    /// Cone point of the component containing `v`, if any.
    pub fn cone_point_of(&self, v: usize) -> Option<usize> {
        self.cone_points()
            .into_iter()
            .find(|(comp, _)| comp.contains(&v))
            .and_then(|(_, c)| c)
    }

    /// Height of each element: length of the longest chain below it.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = vec![0usize; self.n];
        // covers are acyclic; iterate until fixpoint (n is tiny)
        let mut changed = true;
        while changed {
            changed = false;
            for &(a, b) in &self.covers {
                if h[b] < h[a] + 1 {
                    h[b] = h[a] + 1;
                    changed = true;
                }
            }
        }
        h
    }

    pub fn to_json(&self) -> String {
        let mut elements = self.names.clone();
        elements.sort();
        let mut covers: Vec<(String, String)> = self
            .covers
            .iter()
            .map(|&(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect();
        covers.sort();
        let doc = PosetJson {
            name: self.name.clone(),
            elements,
            covers,
        };
        serde_json::to_string_pretty(&doc).expect("poset serializes")
    }

    pub fn from_json(text: &str) -> Result<Poset, PosetError> {
        let doc: PosetJson =
            serde_json::from_str(text).map_err(|e| PosetError::Malformed(e.to_string()))?;
        let names: Vec<&str> = doc.elements.iter().map(|s| s.as_str()).collect();
        let covers: Vec<(&str, &str)> = doc
            .covers
            .iter()
            .map(|(a, b)| (a.as_str(), b.as_str()))
            .collect();
        Poset::build(doc.name, &names, &covers)
    }

    /// DOT export: one node per element, one edge per cover, elements of
    /// equal height grouped on the same rank.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("digraph \"{}\" {{\n", self.name));
        out.push_str("  rankdir=BT;\n");
        let h = self.heights();
        let max_h = h.iter().copied().max().unwrap_or(0);
        for level in 0..=max_h {
            let group: Vec<usize> = (0..self.n).filter(|&i| h[i] == level).collect();
            if group.is_empty() {
                continue;
            }
            out.push_str("  { rank=same;");
            for i in group {
                out.push_str(&format!(" \"{}\";", self.names[i]));
            }
            out.push_str(" }\n");
        }
        for &(a, b) in &self.covers {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.names[a], self.names[b]
            ));
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalLatticeFailure {
    pub base: usize,
    pub pair: (usize, usize),
    /// true: missing meet in an up-set; false: missing join in a down-set
    pub in_up_set: bool,
}

impl fmt::Display for LocalLatticeFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "base {} pair {{{}, {}}} ({})",
            self.base,
            self.pair.0,
            self.pair.1,
            if self.in_up_set {
                "no meet in up-set"
            } else {
                "no join in down-set"
            }
        )
    }
}

#[derive(Serialize, Deserialize)]
struct PosetJson {
    name: String,
    elements: Vec<String>,
    covers: Vec<(String, String)>,
}

fn greatest(p: &Poset, set: &[usize]) -> Option<usize> {
    set.iter()
        .copied()
        .find(|&w| set.iter().all(|&v| p.leq(v, w)))
}

fn least(p: &Poset, set: &[usize]) -> Option<usize> {
    set.iter()
        .copied()
        .find(|&w| set.iter().all(|&v| p.leq(w, v)))
}

#[allow(clippy::needless_range_loop)]
fn transitive_reduction(leq: &[bool], n: usize) -> Vec<(usize, usize)> {
    // A strict pair is a cover unless some element sits strictly between.
    let mut covers = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq[i * n + j] {
                continue;
            }
            let implied = (0..n).any(|k| k != i && k != j && leq[i * n + k] && leq[k * n + j]);
            if !implied {
                covers.push((i, j));
            }
        }
    }
    covers.sort_unstable();
    covers
}

/// Names of the built-in posets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StdPoset {
    PA,
    PB,
    PAn,
    PCn,
    Bowtie,
    TruncatedPowerset,
    Chain,
}

impl StdPoset {
    pub fn parse(name: &str) -> Option<StdPoset> {
        match name {
            "PA" => Some(StdPoset::PA),
            "PB" => Some(StdPoset::PB),
            "PAn" => Some(StdPoset::PAn),
            "PCn" => Some(StdPoset::PCn),
            "bowtie" => Some(StdPoset::Bowtie),
            "truncated_powerset" => Some(StdPoset::TruncatedPowerset),
            "chain" => Some(StdPoset::Chain),
            _ => None,
        }
    }
}

/// Builds one of the named example posets. `PCn` requires an even parameter
/// >= 4; `PAn` is only constructed for 1 <= n <= 3 (the gluing schedule for
/// > larger n is not specified); `chain` and `truncated_powerset` take a size.
pub fn make_standard(which: StdPoset, param: Option<usize>) -> Result<Poset, PosetError> {
    match which {
        StdPoset::PA => Poset::build(
            "PA",
            &["0", "1", "2", "3", "4", "5", "6"],
            &[
                ("0", "1"),
                ("0", "3"),
                ("0", "5"),
                ("1", "2"),
                ("3", "2"),
                ("3", "4"),
                ("5", "4"),
                ("5", "6"),
                ("1", "6"),
            ],
        ),
        StdPoset::PB => make_truncated_powerset(4).map(|mut p| {
            p.name = "PB".to_string();
            p
        }),
        StdPoset::TruncatedPowerset => {
            let m = param.ok_or_else(|| PosetError::BadParam {
                name: "truncated_powerset".into(),
                reason: "ground-set size required".into(),
            })?;
            if m < 3 {
                return Err(PosetError::BadParam {
                    name: "truncated_powerset".into(),
                    reason: "ground-set size must be >= 3".into(),
                });
            }
            make_truncated_powerset(m)
        }
        StdPoset::Chain => {
            let k = param.ok_or_else(|| PosetError::BadParam {
                name: "chain".into(),
                reason: "length required".into(),
            })?;
            if k == 0 {
                return Err(PosetError::BadParam {
                    name: "chain".into(),
                    reason: "length must be >= 1".into(),
                });
            }
            let names: Vec<String> = (0..k).map(|i| i.to_string()).collect();
            let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let covers: Vec<(String, String)> = (1..k)
                .map(|i| ((i - 1).to_string(), i.to_string()))
                .collect();
            let cover_refs: Vec<(&str, &str)> = covers
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            Poset::build(format!("chain{k}"), &name_refs, &cover_refs)
        }
        StdPoset::Bowtie => Poset::build(
            "bowtie",
            &["x1", "x2", "x3", "x4"],
            &[("x1", "x2"), ("x1", "x4"), ("x3", "x2"), ("x3", "x4")],
        ),
        StdPoset::PAn => {
            let n = param.ok_or_else(|| PosetError::BadParam {
                name: "PAn".into(),
                reason: "parameter required".into(),
            })?;
            if !(1..=3).contains(&n) {
                return Err(PosetError::BadParam {
                    name: "PAn".into(),
                    reason: format!(
                        "unsupported parameter {n}: the gluing schedule is specified only for n <= 3"
                    ),
                });
            }
            make_pan(n)
        }
        StdPoset::PCn => {
            let n = param.ok_or_else(|| PosetError::BadParam {
                name: "PCn".into(),
                reason: "parameter required".into(),
            })?;
            if n < 4 || n % 2 != 0 {
                return Err(PosetError::BadParam {
                    name: "PCn".into(),
                    reason: format!("parameter must be even and >= 4, got {n}"),
                });
            }
            make_pcn(n)
        }
    }
}

fn make_truncated_powerset(m: usize) -> Result<Poset, PosetError> {
    // Nonempty proper subsets of {1..m} under inclusion; label = digit string.
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1 << m) - 1 {
        let s: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
        subsets.push(s);
    }
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    let label = |s: &[usize]| -> String { s.iter().map(|i| (i + 1).to_string()).collect() };
    let names: Vec<String> = subsets.iter().map(|s| label(s)).collect();
    let mut covers: Vec<(String, String)> = Vec::new();
    for a in &subsets {
        for b in &subsets {
            if b.len() == a.len() + 1 && a.iter().all(|x| b.contains(x)) {
                covers.push((label(a), label(b)));
            }
        }
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let cover_refs: Vec<(&str, &str)> = covers
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    Poset::build(format!("truncated_powerset{m}"), &name_refs, &cover_refs)
}

fn make_pan(n: usize) -> Result<Poset, PosetError> {
    // P_{A,1} is PA itself (relabeled); each later stage glues 3 vertices and
    // 5 edges, forming an alternating chain of copies of PA and its mirror.
    let mut names: Vec<&str> = vec!["x1", "y0", "y1", "y2", "z1", "z2", "z3"];
    let mut covers: Vec<(&str, &str)> = vec![
        ("x1", "y0"),
        ("x1", "y1"),
        ("x1", "y2"),
        ("y0", "z1"),
        ("y0", "z2"),
        ("y1", "z1"),
        ("y1", "z3"),
        ("y2", "z2"),
        ("y2", "z3"),
    ];
    if n >= 2 {
        names.extend(["x2", "x3", "y3"]);
        covers.extend([
            ("x2", "y1"),
            ("x2", "y3"),
            ("x3", "y2"),
            ("x3", "y3"),
            ("y3", "z3"),
        ]);
    }
    if n >= 3 {
        names.extend(["y4", "z4", "z5"]);
        covers.extend([
            ("x3", "y4"),
            ("y2", "z4"),
            ("y4", "z4"),
            ("y3", "z5"),
            ("y4", "z5"),
        ]);
    }
    Poset::build(format!("PA{n}"), &names, &covers)
}

fn make_pcn(n: usize) -> Result<Poset, PosetError> {
    // Domain {y} + {x_i, y_i, z_i}; x_i <= y_i <= z_i, x_i <= y_{i-1} <= z_i
    // (indices mod n), and a central cross x_i <= y for i even, y <= z_j for
    // j odd. The cross parity follows the Hasse diagram and the worked
    // witnesses: the exterior multifraction over x-odd/z-even must avoid the
    // center, otherwise it would be reducible through it.
    let mut names: Vec<String> = vec!["y".to_string()];
    for i in 1..=n {
        names.push(format!("x{i}"));
        names.push(format!("y{i}"));
        names.push(format!("z{i}"));
    }
    let mut covers: Vec<(String, String)> = Vec::new();
    let y_of = |i: usize| format!("y{}", if i == 0 { n } else { i });
    for i in 1..=n {
        covers.push((format!("x{i}"), y_of(i)));
        covers.push((format!("x{i}"), y_of(i - 1)));
        covers.push((y_of(i), format!("z{i}")));
        covers.push((y_of(i - 1), format!("z{i}")));
        if i % 2 == 0 {
            covers.push((format!("x{i}"), "y".to_string()));
        } else {
            covers.push(("y".to_string(), format!("z{i}")));
        }
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let cover_refs: Vec<(&str, &str)> = covers
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    Poset::build(format!("PC{n}"), &name_refs, &cover_refs)
}

/// All maximal elements of `set` under the poset order (used by callers that
/// need deterministic witness picks).
pub fn maximal_elements(p: &Poset, set: &BTreeSet<usize>) -> Vec<usize> {
    set.iter()
        .copied()
        .filter(|&w| set.iter().all(|&v| v == w || !p.lt(w, v)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pa_closure_and_covers() {
        let p = make_standard(StdPoset::PA, None).unwrap();
        assert_eq!(p.len(), 7);
        assert_eq!(p.covers().len(), 9);
        let zero = p.index_of("0").unwrap();
        let two = p.index_of("2").unwrap();
        assert!(p.leq(zero, two), "0 <= 2 holds by closure");
        assert!(!p.is_cover(zero, two));
    }

    #[test]
    fn cycle_is_rejected() {
        let err = Poset::build("bad", &["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, PosetError::CycleDetected(_)));
    }

    #[test]
    fn antichain_is_identity_relation() {
        let p = Poset::build("antichain", &["a", "b", "c"], &[]).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.leq(i, j), i == j);
            }
        }
        assert!(p.covers().is_empty());
    }

    #[test]
    fn reclosing_covers_reproduces_leq() {
        for p in [
            make_standard(StdPoset::PA, None).unwrap(),
            make_standard(StdPoset::PB, None).unwrap(),
            make_standard(StdPoset::PCn, Some(4)).unwrap(),
            make_standard(StdPoset::PAn, Some(3)).unwrap(),
            make_standard(StdPoset::Bowtie, None).unwrap(),
        ] {
            let names: Vec<&str> = p.labels().iter().map(|s| s.as_str()).collect();
            let covers: Vec<(String, String)> = p
                .covers()
                .iter()
                .map(|&(a, b)| (p.label(a).to_string(), p.label(b).to_string()))
                .collect();
            let cover_refs: Vec<(&str, &str)> = covers
                .iter()
                .map(|(a, b)| (a.as_str(), b.as_str()))
                .collect();
            let q = Poset::build(p.name.clone(), &names, &cover_refs).unwrap();
            assert_eq!(p, q);
        }
    }

    #[test]
    fn local_lattice_verdicts() {
        assert!(make_standard(StdPoset::PA, None)
            .unwrap()
            .is_local_lattice());
        assert!(make_standard(StdPoset::PB, None)
            .unwrap()
            .is_local_lattice());
        // x < y,z ; y,z < w1,w2: up-set of x has no meet for {w1, w2}
        let p = Poset::build(
            "nolocal",
            &["x", "y", "z", "w1", "w2"],
            &[
                ("x", "y"),
                ("x", "z"),
                ("y", "w1"),
                ("y", "w2"),
                ("z", "w1"),
                ("z", "w2"),
            ],
        )
        .unwrap();
        let w = p.local_lattice_witness().unwrap();
        assert_eq!(w.base, p.index_of("x").unwrap());
        let pair = (p.index_of("w1").unwrap(), p.index_of("w2").unwrap());
        assert!(w.pair == pair || w.pair == (pair.1, pair.0));
    }

    #[test]
    fn suffnc1_verdicts() {
        assert!(make_standard(StdPoset::PA, None).unwrap().check_suffnc1());
        // PB fails the literal condition: two disjoint singletons have the
        // union as an upper bound but no nonempty common subset
        assert!(!make_standard(StdPoset::PB, None).unwrap().check_suffnc1());
        assert!(!make_standard(StdPoset::Bowtie, None)
            .unwrap()
            .check_suffnc1());
    }

    #[test]
    fn cone_points() {
        let pa = make_standard(StdPoset::PA, None).unwrap();
        assert_eq!(pa.cone_point_of(0), Some(pa.index_of("0").unwrap()));
        let bow = make_standard(StdPoset::Bowtie, None).unwrap();
        assert_eq!(bow.cone_point_of(0), None);
        let chain = make_standard(StdPoset::Chain, Some(3)).unwrap();
        assert_eq!(chain.cone_point_of(1), Some(chain.index_of("0").unwrap()));
    }

    #[test]
    fn standard_sizes() {
        let pc4 = make_standard(StdPoset::PCn, Some(4)).unwrap();
        assert_eq!((pc4.len(), pc4.covers().len()), (13, 20));
        let pc6 = make_standard(StdPoset::PCn, Some(6)).unwrap();
        assert_eq!((pc6.len(), pc6.covers().len()), (19, 30));
        let pb = make_standard(StdPoset::PB, None).unwrap();
        assert_eq!(pb.len(), 14);
        let pa3 = make_standard(StdPoset::PAn, Some(3)).unwrap();
        assert_eq!((pa3.len(), pa3.covers().len()), (13, 19));
        assert!(make_standard(StdPoset::PAn, Some(4)).is_err());
        assert!(make_standard(StdPoset::PCn, Some(5)).is_err());
    }

    #[test]
    fn pan1_isomorphic_to_pa() {
        // Same shape up to the relabeling x1->0, y0..y2->1,3,5, z1..z3->2,6,4.
        let pa = make_standard(StdPoset::PA, None).unwrap();
        let pa1 = make_standard(StdPoset::PAn, Some(1)).unwrap();
        assert_eq!(pa1.len(), pa.len());
        assert_eq!(pa1.covers().len(), pa.covers().len());
        let map = [
            ("x1", "0"),
            ("y0", "1"),
            ("y1", "3"),
            ("y2", "5"),
            ("z1", "2"),
            ("z2", "6"),
            ("z3", "4"),
        ];
        for (a, b) in map {
            for (c, d) in map {
                let i = pa1.index_of(a).unwrap();
                let j = pa1.index_of(c).unwrap();
                let u = pa.index_of(b).unwrap();
                let v = pa.index_of(d).unwrap();
                assert_eq!(pa1.leq(i, j), pa.leq(u, v));
            }
        }
    }

    #[test]
    fn json_round_trip_is_byte_stable() {
        let p = make_standard(StdPoset::PA, None).unwrap();
        let j1 = p.to_json();
        let q = Poset::from_json(&j1).unwrap();
        let j2 = q.to_json();
        assert_eq!(j1, j2);
    }

    #[test]
    fn dot_export_counts() {
        let p = make_standard(StdPoset::PCn, Some(4)).unwrap();
        let dot = p.to_dot();
        assert_eq!(dot.matches("->").count(), 20);
    }
}

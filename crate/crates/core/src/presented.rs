//! Monoids given by finite homogeneous presentations: exact word problem via
//! congruence-class closure, bounded divisibility and common-multiple
//! searches, and group-level derivation certificates.
//!
//! Homogeneity (both sides of every relation have the same length) keeps
//! every congruence class finite, so equality, divisor enumeration, and
//! suffix/prefix scans are exact. Common-multiple and group-triviality
//! questions are answered by bounded searches only; a negative answer is a
//! bounded certificate, never a proof.

use crate::budget::Budgets;
use crate::monoid::{budget_exceeded, MonoidError, MonoidHandle};
use crate::poset::{make_standard, Poset, StdPoset};
use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::sync::Mutex;
use thiserror::Error;

pub type Letter = u8;
pub type Word = Vec<Letter>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("relation `{lhs}` = `{rhs}` is not homogeneous (lengths differ)")]
    NonHomogeneous { lhs: String, rhs: String },
    #[error("relation side is empty")]
    EmptySide,
    #[error("unknown atom in `{0}`")]
    UnknownAtom(String),
    #[error("duplicate atom `{0}`")]
    DuplicateAtom(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

/// A finite homogeneous presentation: an atom alphabet and equal-length
/// relation pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    atoms: Vec<String>,
    relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        atoms: &[&str],
        relations: &[(&str, &str)],
    ) -> Result<Presentation, PresentationError> {
        let atoms: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
        for (i, a) in atoms.iter().enumerate() {
            if atoms[..i].contains(a) {
                return Err(PresentationError::DuplicateAtom(a.clone()));
            }
        }
        let mut pres = Presentation {
            name: name.into(),
            atoms,
            relations: Vec::new(),
        };
        for (l, r) in relations {
            let lw = pres.parse_word(l)?;
            let rw = pres.parse_word(r)?;
            if lw.is_empty() || rw.is_empty() {
                return Err(PresentationError::EmptySide);
            }
            if lw.len() != rw.len() {
                return Err(PresentationError::NonHomogeneous {
                    lhs: l.to_string(),
                    rhs: r.to_string(),
                });
            }
            pres.relations.push((lw, rw));
        }
        Ok(pres)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    pub fn atom_index(&self, name: &str) -> Option<Letter> {
        self.atoms
            .iter()
            .position(|a| a == name)
            .map(|i| i as Letter)
    }

    /// Tokenizes a word by greedy longest match against the atom alphabet.
    /// `*` and whitespace act as optional separators. Atom names in the
    /// built-in presentations are prefix-unambiguous under this rule.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let mut out = Word::new();
        let mut rest = text.trim();
        'outer: while !rest.is_empty() {
            if let Some(stripped) = rest.strip_prefix(['*', ' ']) {
                rest = stripped.trim_start();
                continue;
            }
            let mut best: Option<(usize, Letter)> = None;
            for (i, atom) in self.atoms.iter().enumerate() {
                if rest.starts_with(atom.as_str()) && best.is_none_or(|(len, _)| atom.len() > len) {
                    best = Some((atom.len(), i as Letter));
                }
            }
            if let Some((len, letter)) = best {
                out.push(letter);
                rest = &rest[len..];
                continue 'outer;
            }
            return Err(PresentationError::UnknownAtom(rest.to_string()));
        }
        Ok(out)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&l| self.atoms[l as usize].as_str()).collect()
    }

    /// Text form: `atoms: a b c; rel: ab = ba; ...`
    pub fn to_text(&self) -> String {
        let mut out = format!("atoms: {}", self.atoms.join(" "));
        for (l, r) in &self.relations {
            out.push_str(&format!(
                "; rel: {} = {}",
                self.format_word(l),
                self.format_word(r)
            ));
        }
        out
    }

    pub fn from_text(name: &str, text: &str) -> Result<Presentation, PresentationError> {
        let mut atoms: Vec<String> = Vec::new();
        let mut rels: Vec<(String, String)> = Vec::new();
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            if let Some(list) = part.strip_prefix("atoms:") {
                atoms = list.split_whitespace().map(|s| s.to_string()).collect();
            } else if let Some(rel) = part.strip_prefix("rel:") {
                let (l, r) = rel
                    .split_once('=')
                    .ok_or_else(|| PresentationError::Malformed(format!("no `=` in `{rel}`")))?;
                rels.push((l.trim().to_string(), r.trim().to_string()));
            } else {
                return Err(PresentationError::Malformed(format!(
                    "unrecognized section `{part}`"
                )));
            }
        }
        let atom_refs: Vec<&str> = atoms.iter().map(|s| s.as_str()).collect();
        let rel_refs: Vec<(&str, &str)> =
            rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
        Presentation::new(name, &atom_refs, &rel_refs)
    }

    pub fn to_json(&self) -> String {
        let rels: Vec<(String, String)> = self
            .relations
            .iter()
            .map(|(l, r)| (self.format_word(l), self.format_word(r)))
            .collect();
        serde_json::json!({
            "name": self.name,
            "atoms": self.atoms,
            "relations": rels,
        })
        .to_string()
    }

    pub fn from_json(text: &str) -> Result<Presentation, PresentationError> {
        let doc: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PresentationError::Malformed(e.to_string()))?;
        let name = doc["name"].as_str().unwrap_or("presentation").to_string();
        let atoms: Vec<String> = doc["atoms"]
            .as_array()
            .ok_or_else(|| PresentationError::Malformed("missing atoms".into()))?
            .iter()
            .filter_map(|v| v.as_str().map(str::to_string))
            .collect();
        let rels: Vec<(String, String)> = doc["relations"]
            .as_array()
            .ok_or_else(|| PresentationError::Malformed("missing relations".into()))?
            .iter()
            .filter_map(|pair| {
                let arr = pair.as_array()?;
                Some((
                    arr.first()?.as_str()?.to_string(),
                    arr.get(1)?.as_str()?.to_string(),
                ))
            })
            .collect();
        let atom_refs: Vec<&str> = atoms.iter().map(|s| s.as_str()).collect();
        let rel_refs: Vec<(&str, &str)> =
            rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
        Presentation::new(name, &atom_refs, &rel_refs)
    }
}

/// Element of the presented monoid: the lexicographically least word of its
/// congruence class, under atom declaration order.
pub type PMElement = Word;

/// Handle over a presented monoid. Class computations are cached behind a
/// mutex; the cache is replay-transparent (results are identical to
/// recomputation).
#[derive(Debug)]
pub struct PresentedMonoid {
    pres: Presentation,
    budgets: Budgets,
    class_cache: Mutex<HashMap<Word, std::sync::Arc<Vec<Word>>>>,
}

impl PresentedMonoid {
    pub fn new(pres: Presentation, budgets: Budgets) -> PresentedMonoid {
        PresentedMonoid {
            pres,
            budgets,
            class_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn budgets(&self) -> &Budgets {
        &self.budgets
    }

    /// The full congruence class of `w`: breadth-first closure under
    /// one-relation rewrites at every position, both directions. Exact and
    /// finite by homogeneity; errors out at the class cap.
    pub fn congruence_class(&self, w: &[Letter]) -> Result<std::sync::Arc<Vec<Word>>, MonoidError> {
        if let Some(hit) = self.class_cache.lock().unwrap().get(w) {
            return Ok(hit.clone());
        }
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue: VecDeque<Word> = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(cur) = queue.pop_front() {
            for (l, r) in &self.pres.relations {
                for (from, to) in [(l, r), (r, l)] {
                    if from.len() > cur.len() {
                        continue;
                    }
                    for pos in 0..=cur.len() - from.len() {
                        if &cur[pos..pos + from.len()] == from.as_slice() {
                            let mut next = cur.clone();
                            next.splice(pos..pos + from.len(), to.iter().copied());
                            if seen.insert(next.clone()) {
                                if seen.len() > self.budgets.class_cap {
                                    return Err(budget_exceeded("congruence class cap"));
                                }
                                queue.push_back(next);
                            }
                        }
                    }
                }
            }
        }
        let mut words: Vec<Word> = seen.into_iter().collect();
        words.sort();
        let arc = std::sync::Arc::new(words);
        let mut cache = self.class_cache.lock().unwrap();
        for member in arc.iter() {
            cache.insert(member.clone(), arc.clone());
        }
        Ok(arc)
    }

    pub fn canon(&self, w: &[Letter]) -> Result<PMElement, MonoidError> {
        Ok(self.congruence_class(w)?[0].clone())
    }

    pub fn equal(&self, u: &[Letter], v: &[Letter]) -> Result<bool, MonoidError> {
        if u.len() != v.len() {
            return Ok(false);
        }
        Ok(self.canon(u)? == self.canon(v)?)
    }

    /// All right multiples of `base`, grouped by length, up to `max_len`.
    /// Level k+1 is exactly the one-atom right extensions of level k, which
    /// is complete because congruence preserves prefixes being multiples.
    fn multiples_by_length(
        &self,
        base: &[Letter],
        max_len: usize,
        left_side: bool,
    ) -> Result<Vec<Vec<PMElement>>, MonoidError> {
        let start = self.canon(base)?;
        let mut levels: Vec<Vec<PMElement>> = vec![vec![start]];
        let mut states: usize = 1;
        while levels.len() <= max_len.saturating_sub(base.len()) {
            let mut next: BTreeSet<PMElement> = BTreeSet::new();
            for w in levels.last().unwrap() {
                for g in 0..self.pres.atoms.len() as Letter {
                    let mut ext = Vec::with_capacity(w.len() + 1);
                    if left_side {
                        ext.push(g);
                        ext.extend_from_slice(w);
                    } else {
                        ext.extend_from_slice(w);
                        ext.push(g);
                    }
                    next.insert(self.canon(&ext)?);
                }
            }
            states += next.len();
            if states > self.budgets.search_states {
                return Err(budget_exceeded("common-multiple search states"));
            }
            if next.is_empty() {
                break;
            }
            levels.push(next.into_iter().collect());
        }
        Ok(levels)
    }

    /// Bounded search for a common right multiple of all `targets`: scans
    /// every element of length <= `max_len` that is a right multiple of the
    /// first target. `NoneWithin` is a bounded certificate only.
    pub fn common_right_multiple_bounded(
        &self,
        targets: &[&[Letter]],
        max_len: usize,
    ) -> Result<CommonMultiple, MonoidError> {
        assert!(!targets.is_empty());
        let base = targets
            .iter()
            .min_by_key(|t| t.len())
            .copied()
            .unwrap()
            .to_vec();
        let levels = self.multiples_by_length(&base, max_len, false)?;
        for level in &levels {
            for w in level {
                let mut all = true;
                for t in targets {
                    if !self.left_divides_words(t, w)? {
                        all = false;
                        break;
                    }
                }
                if all {
                    return Ok(CommonMultiple::Found(w.clone()));
                }
            }
        }
        Ok(CommonMultiple::NoneWithin(max_len))
    }

    fn left_divides_words(&self, u: &[Letter], w: &[Letter]) -> Result<bool, MonoidError> {
        if u.len() > w.len() {
            return Ok(false);
        }
        let uc = self.congruence_class(u)?;
        let wc = self.congruence_class(w)?;
        for word in wc.iter() {
            if uc.binary_search(&word[..u.len()].to_vec()).is_ok() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn right_divides_words(&self, u: &[Letter], w: &[Letter]) -> Result<bool, MonoidError> {
        if u.len() > w.len() {
            return Ok(false);
        }
        let uc = self.congruence_class(u)?;
        let wc = self.congruence_class(w)?;
        for word in wc.iter() {
            if uc
                .binary_search(&word[word.len() - u.len()..].to_vec())
                .is_ok()
            {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Divisibility-maximal elements among the common right divisors of `u`
    /// and `v` (suffix scan over both classes). Exact.
    pub fn maximal_common_right_divisors(
        &self,
        u: &[Letter],
        v: &[Letter],
    ) -> Result<Vec<PMElement>, MonoidError> {
        let du: BTreeSet<PMElement> = self.right_divisors_set(u)?;
        let dv: BTreeSet<PMElement> = self.right_divisors_set(v)?;
        let common: Vec<PMElement> = du.intersection(&dv).cloned().collect();
        let mut maximal = Vec::new();
        for d in &common {
            let strictly_below_some = common
                .iter()
                .any(|e| e != d && self.right_divides_words(d, e).unwrap_or(false));
            if !strictly_below_some {
                maximal.push(d.clone());
            }
        }
        Ok(maximal)
    }

    fn left_divisors_set(&self, a: &[Letter]) -> Result<BTreeSet<PMElement>, MonoidError> {
        let class = self.congruence_class(a)?;
        let mut out = BTreeSet::new();
        for w in class.iter() {
            for k in 0..=w.len() {
                out.insert(self.canon(&w[..k])?);
            }
        }
        Ok(out)
    }

    fn right_divisors_set(&self, a: &[Letter]) -> Result<BTreeSet<PMElement>, MonoidError> {
        let class = self.congruence_class(a)?;
        let mut out = BTreeSet::new();
        for w in class.iter() {
            for k in 0..=w.len() {
                out.insert(self.canon(&w[k..])?);
            }
        }
        Ok(out)
    }

    fn bounded_lcm(
        &self,
        a: &[Letter],
        b: &[Letter],
        left_side: bool,
    ) -> Result<Option<PMElement>, MonoidError> {
        if a.is_empty() {
            return Ok(Some(b.to_vec()));
        }
        if b.is_empty() {
            return Ok(Some(a.to_vec()));
        }
        // Tight bound |a|+|b|: with quadratic relations, a first-letter
        // rewrite exhibits a common multiple no longer than that whenever
        // any exists. Longer-relation presentations would need the slack
        // that common_right_multiple_bounded offers explicitly.
        let max_len = a.len() + b.len();
        let (base, other) = if a.len() <= b.len() { (a, b) } else { (b, a) };
        let levels = self.multiples_by_length(base, max_len, left_side)?;
        for level in &levels {
            let mut found: Vec<PMElement> = Vec::new();
            for w in level {
                let divides = if left_side {
                    self.right_divides_words(other, w)?
                } else {
                    self.left_divides_words(other, w)?
                };
                if divides {
                    found.push(w.clone());
                }
            }
            match found.len() {
                0 => continue,
                1 => return Ok(Some(found.pop().unwrap())),
                // In a monoid with conditional lcms, the lcm divides every
                // common multiple, so it is the unique one of minimal length.
                _ => {
                    return Err(MonoidError::NotGcd(format!(
                        "{} minimal common multiples of `{}` and `{}`",
                        found.len(),
                        self.pres.format_word(a),
                        self.pres.format_word(b)
                    )))
                }
            }
        }
        Ok(None)
    }

    fn gcd_of(&self, common: &BTreeSet<PMElement>, right: bool) -> Result<PMElement, MonoidError> {
        let mut maximal: Vec<&PMElement> = Vec::new();
        for d in common {
            let below = common.iter().any(|e| {
                e != d
                    && if right {
                        self.right_divides_words(d, e).unwrap_or(false)
                    } else {
                        self.left_divides_words(d, e).unwrap_or(false)
                    }
            });
            if !below {
                maximal.push(d);
            }
        }
        if maximal.len() == 1 {
            Ok(maximal[0].clone())
        } else {
            Err(MonoidError::NotGcd(format!(
                "{} maximal common divisors",
                maximal.len()
            )))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CommonMultiple {
    Found(PMElement),
    NoneWithin(usize),
}

impl MonoidHandle for PresentedMonoid {
    type Elem = PMElement;

    fn one(&self) -> PMElement {
        Vec::new()
    }

    fn mul(&self, a: &PMElement, b: &PMElement) -> PMElement {
        let mut w = a.clone();
        w.extend_from_slice(b);
        self.canon(&w)
            .expect("class cap exceeded during multiplication")
    }

    fn size(&self, a: &PMElement) -> usize {
        a.len()
    }

    fn quot_of_left_div(&self, a: &PMElement, b: &PMElement) -> Option<PMElement> {
        if a.len() > b.len() {
            return None;
        }
        let ac = self.congruence_class(a).ok()?;
        let bc = self.congruence_class(b).ok()?;
        for w in bc.iter() {
            if ac.binary_search(&w[..a.len()].to_vec()).is_ok() {
                return self.canon(&w[a.len()..]).ok();
            }
        }
        None
    }

    fn quot_of_right_div(&self, a: &PMElement, b: &PMElement) -> Option<PMElement> {
        if a.len() > b.len() {
            return None;
        }
        let ac = self.congruence_class(a).ok()?;
        let bc = self.congruence_class(b).ok()?;
        for w in bc.iter() {
            if ac.binary_search(&w[w.len() - a.len()..].to_vec()).is_ok() {
                return self.canon(&w[..w.len() - a.len()]).ok();
            }
        }
        None
    }

    fn left_divisors(&self, a: &PMElement) -> Result<Vec<PMElement>, MonoidError> {
        let mut v: Vec<PMElement> = self.left_divisors_set(a)?.into_iter().collect();
        v.sort_by_key(|x| (x.len(), x.clone()));
        Ok(v)
    }

    fn right_divisors(&self, a: &PMElement) -> Result<Vec<PMElement>, MonoidError> {
        let mut v: Vec<PMElement> = self.right_divisors_set(a)?.into_iter().collect();
        v.sort_by_key(|x| (x.len(), x.clone()));
        Ok(v)
    }

    fn right_lcm(&self, a: &PMElement, b: &PMElement) -> Result<Option<PMElement>, MonoidError> {
        self.bounded_lcm(a, b, false)
    }

    fn left_lcm(&self, a: &PMElement, b: &PMElement) -> Result<Option<PMElement>, MonoidError> {
        self.bounded_lcm(a, b, true)
    }

    fn left_gcd(&self, a: &PMElement, b: &PMElement) -> Result<PMElement, MonoidError> {
        let da = self.left_divisors_set(a)?;
        let db = self.left_divisors_set(b)?;
        let common: BTreeSet<PMElement> = da.intersection(&db).cloned().collect();
        self.gcd_of(&common, false)
    }

    fn right_gcd(&self, a: &PMElement, b: &PMElement) -> Result<PMElement, MonoidError> {
        let da = self.right_divisors_set(a)?;
        let db = self.right_divisors_set(b)?;
        let common: BTreeSet<PMElement> = da.intersection(&db).cloned().collect();
        self.gcd_of(&common, true)
    }

    fn enumerate(&self, size_bound: usize) -> Result<Vec<PMElement>, MonoidError> {
        let mut out: Vec<PMElement> = vec![Vec::new()];
        let mut layer: BTreeSet<PMElement> = BTreeSet::new();
        layer.insert(Vec::new());
        let mut total = 1usize;
        for _ in 0..size_bound {
            let mut next: BTreeSet<PMElement> = BTreeSet::new();
            for w in &layer {
                for g in 0..self.pres.atoms.len() as Letter {
                    let mut ext = w.clone();
                    ext.push(g);
                    next.insert(self.canon(&ext)?);
                }
            }
            total += next.len();
            if total > self.budgets.search_states {
                return Err(budget_exceeded("element enumeration states"));
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out.sort_by_key(|x| (x.len(), x.clone()));
        Ok(out)
    }

    fn parse_elem(&self, text: &str) -> Result<PMElement, MonoidError> {
        let text = text.trim();
        if text == "1" {
            return Ok(Vec::new());
        }
        let w = self.pres.parse_word(text).map_err(|e| MonoidError::Parse {
            text: text.to_string(),
            reason: e.to_string(),
        })?;
        self.canon(&w)
    }

    fn format_elem(&self, a: &PMElement) -> String {
        self.pres.format_word(a)
    }

    fn name(&self) -> &str {
        &self.pres.name
    }
}

// ---------------------------------------------------------------------------
// Builders for the presentations used by the example scenarios.

pub fn free_commutative(k: usize) -> Presentation {
    let names: Vec<String> = (0..k)
        .map(|i| {
            char::from(b'a' + (i % 26) as u8).to_string()
                + &(if i >= 26 {
                    (i / 26).to_string()
                } else {
                    String::new()
                })
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut rels: Vec<(String, String)> = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            rels.push((
                format!("{}{}", names[i], names[j]),
                format!("{}{}", names[j], names[i]),
            ));
        }
    }
    let rel_refs: Vec<(&str, &str)> = rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
    Presentation::new(format!("FC{k}"), &refs, &rel_refs).expect("free commutative is homogeneous")
}

pub fn make_md() -> Presentation {
    Presentation::new(
        "MD",
        &["a", "b", "c", "a'", "b'", "c'"],
        &[("ab'", "ba'"), ("bc'", "cb'"), ("ac'", "ca'")],
    )
    .expect("MD is homogeneous")
}

pub fn make_q11() -> Presentation {
    Presentation::new(
        "Q11",
        &["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k"],
        &[
            ("ab", "ba"),
            ("bc", "cb"),
            ("cd", "dc"),
            ("de", "ed"),
            ("eb", "ih"),
            ("fc", "cg"),
            ("fa", "dh"),
            ("hd", "ij"),
            ("hg", "kb"),
            ("dj", "ic"),
            ("ie", "kf"),
        ],
    )
    .expect("Q11 is homogeneous")
}

pub fn make_qc4() -> Presentation {
    Presentation::new(
        "QC4",
        &["a", "b", "c", "d", "e", "f", "x", "y"],
        &[
            ("ab", "ba"),
            ("cd", "dc"),
            ("ef", "fe"),
            ("db", "xx"),
            ("eb", "yy"),
            ("ca", "xy"),
            ("fa", "yx"),
        ],
    )
    .expect("QC4 is homogeneous")
}

pub fn make_qc6() -> Presentation {
    Presentation::new(
        "QC6",
        &["a", "b", "c", "d", "e", "f", "x", "y", "z"],
        &[
            ("ab", "ba"),
            ("cd", "dc"),
            ("ef", "fe"),
            ("ea", "xy"),
            ("ae", "yx"),
            ("db", "zy"),
            ("bd", "yz"),
            ("fc", "xz"),
            ("cf", "zx"),
        ],
    )
    .expect("QC6 is homogeneous")
}

/// Atom name for the Hasse cover `u -> v` in an atom-level presentation.
pub fn cover_atom_name(p: &Poset, u: usize, v: usize) -> String {
    format!("e_{{{},{}}}", p.label(u), p.label(v))
}

/// Atom-level presentation of the interval monoid of `p`: one atom per
/// Hasse cover, one square relation per pair of covering paths through a
/// height-2 interval, except the squares listed in `deleted` (as
/// `(bottom, top)` label pairs).
pub fn interval_atom_presentation(
    name: &str,
    p: &Poset,
    deleted: &[(&str, &str)],
) -> Result<Presentation, PresentationError> {
    let atoms: Vec<String> = p
        .covers()
        .iter()
        .map(|&(u, v)| cover_atom_name(p, u, v))
        .collect();
    let deleted_idx: Vec<(usize, usize)> = deleted
        .iter()
        .map(|(a, b)| {
            Ok((
                p.index_of(a)
                    .map_err(|e| PresentationError::Malformed(e.to_string()))?,
                p.index_of(b)
                    .map_err(|e| PresentationError::Malformed(e.to_string()))?,
            ))
        })
        .collect::<Result<_, PresentationError>>()?;
    let mut rels: Vec<(String, String)> = Vec::new();
    for s in 0..p.len() {
        for t in 0..p.len() {
            if s == t || !p.leq(s, t) || p.is_cover(s, t) {
                continue;
            }
            let mids: Vec<usize> = (0..p.len())
                .filter(|&m| p.is_cover(s, m) && p.is_cover(m, t))
                .collect();
            if mids.len() < 2 {
                continue;
            }
            if deleted_idx.contains(&(s, t)) {
                continue;
            }
            for w in &mids[1..] {
                rels.push((
                    format!(
                        "{}{}",
                        cover_atom_name(p, s, mids[0]),
                        cover_atom_name(p, mids[0], t)
                    ),
                    format!("{}{}", cover_atom_name(p, s, *w), cover_atom_name(p, *w, t)),
                ));
            }
        }
    }
    let atom_refs: Vec<&str> = atoms.iter().map(|s| s.as_str()).collect();
    let rel_refs: Vec<(&str, &str)> = rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
    Presentation::new(name, &atom_refs, &rel_refs)
}

/// The monoid obtained from the atom presentation of Int(P_B) by deleting
/// the square through 1, 12, 13, 123.
pub fn make_mb() -> Presentation {
    let pb = make_standard(StdPoset::PB, None).expect("PB builds");
    interval_atom_presentation("MB", &pb, &[("1", "123")]).expect("MB is homogeneous")
}

// ---------------------------------------------------------------------------
// Group derivations.

/// A letter of a signed word: an atom with exponent +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedLetter {
    pub atom: Letter,
    pub inverse: bool,
}

pub type SignedWord = Vec<SignedLetter>;

pub fn pos(atom: Letter) -> SignedLetter {
    SignedLetter {
        atom,
        inverse: false,
    }
}

pub fn neg(atom: Letter) -> SignedLetter {
    SignedLetter {
        atom,
        inverse: true,
    }
}

pub fn invert_signed(w: &[SignedLetter]) -> SignedWord {
    w.iter()
        .rev()
        .map(|l| SignedLetter {
            atom: l.atom,
            inverse: !l.inverse,
        })
        .collect()
}

pub fn free_reduce_signed(w: &[SignedLetter]) -> SignedWord {
    let mut out: SignedWord = Vec::with_capacity(w.len());
    for &l in w {
        match out.last() {
            Some(&top) if top.atom == l.atom && top.inverse != l.inverse => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

fn cyclically_reduce(mut w: SignedWord) -> SignedWord {
    w = free_reduce_signed(&w);
    while w.len() >= 2 {
        let (first, last) = (w[0], w[w.len() - 1]);
        if first.atom == last.atom && first.inverse != last.inverse {
            w.pop();
            w.remove(0);
            w = free_reduce_signed(&w);
        } else {
            break;
        }
    }
    w
}

fn cyclic_eq(a: &[SignedLetter], b: &[SignedLetter]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| a.iter().cycle().skip(k).take(a.len()).eq(b.iter()))
}

/// A sequence of signed words in which consecutive words differ by one free
/// insertion/deletion or one relation application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDerivation {
    pub words: Vec<SignedWord>,
}

/// Outcome of `verify_group_derivation`: `Ok` or the index of the first
/// illegal step.
pub fn verify_group_derivation(
    pres: &Presentation,
    derivation: &GroupDerivation,
) -> Result<(), usize> {
    if derivation.words.is_empty() {
        return Err(0);
    }
    let relators: Vec<SignedWord> = pres
        .relations
        .iter()
        .map(|(l, r)| {
            let mut w: SignedWord = l.iter().map(|&a| pos(a)).collect();
            w.extend(r.iter().rev().map(|&a| neg(a)));
            cyclically_reduce(w)
        })
        .collect();
    for step in 0..derivation.words.len() - 1 {
        if !legal_step(
            &relators,
            &derivation.words[step],
            &derivation.words[step + 1],
        ) {
            return Err(step);
        }
    }
    Ok(())
}

/// A step replaces one contiguous subword `s` by `t`. It is legal when
/// `s t^-1` freely reduces to nothing (free insertion/deletion and free
/// equality) or cyclically reduces to a rotation of a defining relator or
/// its inverse (one relation applied, possibly across existing inverses).
fn legal_step(relators: &[SignedWord], w: &[SignedLetter], w2: &[SignedLetter]) -> bool {
    for a_len in 0..=w.len().min(w2.len()) {
        if w[..a_len] != w2[..a_len] {
            break;
        }
        for b_len in 0..=(w.len() - a_len).min(w2.len() - a_len) {
            if w[w.len() - b_len..] != w2[w2.len() - b_len..] {
                break;
            }
            let s = &w[a_len..w.len() - b_len];
            let t = &w2[a_len..w2.len() - b_len];
            let mut prod: SignedWord = s.to_vec();
            prod.extend(invert_signed(t));
            let reduced = free_reduce_signed(&prod);
            if reduced.is_empty() {
                return true;
            }
            let cyc = cyclically_reduce(reduced);
            let inv_cyc = invert_signed(&cyc);
            for rho in relators {
                if cyclic_eq(&cyc, rho) || cyclic_eq(&inv_cyc, rho) {
                    return true;
                }
            }
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupTriviality {
    Yes(GroupDerivation),
    Unknown { exhausted: String },
}

/// Bidirectional search for a derivation from `w` to the empty word over
/// free-reduced signed words, using relation replacements (all rotation
/// fragments of each relator, which subsumes free insertions) at most
/// `radius` steps deep on each side. Each side expands in best-first order
/// by word length, since derivations of trivial words rarely need to grow.
/// A YES answer carries a derivation checkable by `verify_group_derivation`.
pub fn group_trivial_bounded(
    pres: &Presentation,
    w: &[SignedLetter],
    radius: usize,
    budgets: &Budgets,
) -> Result<GroupTriviality, MonoidError> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;

    let start = free_reduce_signed(w);
    if start.is_empty() {
        return Ok(GroupTriviality::Yes(GroupDerivation {
            words: vec![w.to_vec(), start],
        }));
    }
    // All (s, t) rewrite fragments: for every rotation rho' of every relator
    // and inverse, and every split rho' = s . q, the pair (s, q^-1).
    let mut fragments: Vec<(SignedWord, SignedWord)> = Vec::new();
    for (l, r) in &pres.relations {
        let mut rho: SignedWord = l.iter().map(|&a| pos(a)).collect();
        rho.extend(r.iter().rev().map(|&a| neg(a)));
        let rho = cyclically_reduce(rho);
        for base in [rho.clone(), invert_signed(&rho)] {
            for k in 0..base.len() {
                let rot: SignedWord = base
                    .iter()
                    .cycle()
                    .skip(k)
                    .take(base.len())
                    .copied()
                    .collect();
                for split in 0..=rot.len() {
                    let s = rot[..split].to_vec();
                    let t = invert_signed(&rot[split..]);
                    fragments.push((s, t));
                }
            }
        }
    }
    fragments.sort();
    fragments.dedup();

    let max_len = start.len()
        + 2 * pres
            .relations
            .iter()
            .map(|(l, _)| l.len())
            .max()
            .unwrap_or(1)
        + 4;
    let neighbors = |word: &SignedWord| -> Vec<(SignedWord, usize, usize)> {
        // (next, position, fragment index); next is freely reduced
        let mut out = Vec::new();
        for (fi, (s, t)) in fragments.iter().enumerate() {
            if s.len() > word.len() {
                continue;
            }
            for pos in 0..=word.len() - s.len() {
                if &word[pos..pos + s.len()] == s.as_slice() {
                    let mut next: SignedWord = word[..pos].to_vec();
                    next.extend_from_slice(t);
                    next.extend_from_slice(&word[pos + s.len()..]);
                    let next = free_reduce_signed(&next);
                    if next.len() <= max_len {
                        out.push((next, pos, fi));
                    }
                }
            }
        }
        out
    };

    // parents: word -> (previous word, raw intermediate before reduction)
    type Parents = HashMap<SignedWord, (usize, Option<(SignedWord, SignedWord)>)>;
    let mut fwd: Parents = HashMap::new();
    let mut bwd: Parents = HashMap::new();
    fwd.insert(start.clone(), (0, None));
    bwd.insert(SignedWord::new(), (0, None));
    type Queue = BinaryHeap<Reverse<(usize, usize, SignedWord)>>;
    let mut fwd_queue: Queue = BinaryHeap::new();
    let mut bwd_queue: Queue = BinaryHeap::new();
    fwd_queue.push(Reverse((start.len(), 0, start.clone())));
    bwd_queue.push(Reverse((0, 0, SignedWord::new())));
    let mut states = 2usize;

    let build_raw = |word: &SignedWord, pos: usize, fi: usize| -> SignedWord {
        let (s, t) = &fragments[fi];
        let mut raw: SignedWord = word[..pos].to_vec();
        raw.extend_from_slice(t);
        raw.extend_from_slice(&word[pos + s.len()..]);
        raw
    };

    let meet = |m: &SignedWord, fwd: &Parents, bwd: &Parents| -> GroupDerivation {
        let mut front: Vec<SignedWord> = Vec::new();
        let mut cur = m.clone();
        front.push(cur.clone());
        while let Some((_, Some((prev, raw)))) = fwd.get(&cur) {
            front.push(raw.clone());
            front.push(prev.clone());
            cur = prev.clone();
        }
        front.reverse();
        let mut back: Vec<SignedWord> = Vec::new();
        cur = m.clone();
        while let Some((_, Some((prev, raw)))) = bwd.get(&cur) {
            back.push(raw.clone());
            back.push(prev.clone());
            cur = prev.clone();
        }
        let mut words = front;
        words.extend(back);
        GroupDerivation { words }
    };

    let mut popped_fwd = 0usize;
    let mut popped_bwd = 0usize;
    loop {
        // balance the two sides by popped count: the backward side's words
        // are always shorter, so a pure priority comparison would starve
        // the forward side
        let expand_fwd = match (fwd_queue.peek(), bwd_queue.peek()) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(_), Some(_)) => popped_fwd <= popped_bwd,
        };
        if expand_fwd {
            popped_fwd += 1;
        } else {
            popped_bwd += 1;
        }
        let (queue, this, other) = if expand_fwd {
            (&mut fwd_queue, &mut fwd, &mut bwd)
        } else {
            (&mut bwd_queue, &mut bwd, &mut fwd)
        };
        let Reverse((_, depth, word)) = queue.pop().unwrap();
        if depth >= radius {
            continue;
        }
        for (next, p, fi) in neighbors(&word) {
            if this.contains_key(&next) {
                continue;
            }
            states += 1;
            if states > budgets.group_states {
                return Ok(GroupTriviality::Unknown {
                    exhausted: "group search states".to_string(),
                });
            }
            let raw = build_raw(&word, p, fi);
            this.insert(next.clone(), (depth + 1, Some((word.clone(), raw))));
            if other.contains_key(&next) {
                let (f, b) = if expand_fwd {
                    (&*this, &*other)
                } else {
                    (&*other, &*this)
                };
                let mut derivation = meet(&next, f, b);
                if derivation.words.first() != Some(&w.to_vec()) {
                    derivation.words.insert(0, w.to_vec());
                }
                return Ok(GroupTriviality::Yes(derivation));
            }
            queue.push(Reverse((next.len(), depth + 1, next)));
        }
    }
    Ok(GroupTriviality::Unknown {
        exhausted: "group search radius".to_string(),
    })
}

/// Parses a signed word: whitespace-separated atoms, `^-1` suffix for an
/// inverse letter.
pub fn parse_signed_word(pres: &Presentation, text: &str) -> Result<SignedWord, PresentationError> {
    let mut out = SignedWord::new();
    for token in text.split_whitespace() {
        let (name, inv) = match token.strip_suffix("^-1") {
            Some(base) => (base, true),
            None => (token, false),
        };
        let letters = pres.parse_word(name)?;
        if inv {
            for &a in letters.iter().rev() {
                out.push(neg(a));
            }
        } else {
            for &a in &letters {
                out.push(pos(a));
            }
        }
    }
    Ok(out)
}

pub fn format_signed_word(pres: &Presentation, w: &[SignedLetter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|l| {
            let name = &pres.atoms[l.atom as usize];
            if l.inverse {
                format!("{name}^-1")
            } else {
                name.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Reads a derivation file: one signed word per line, blank lines and
/// `#` comments skipped.
pub fn parse_derivation(
    pres: &Presentation,
    text: &str,
) -> Result<GroupDerivation, PresentationError> {
    let mut words = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "1" {
            words.push(SignedWord::new());
        } else {
            words.push(parse_signed_word(pres, line)?);
        }
    }
    Ok(GroupDerivation { words })
}

#[derive(Debug, Clone)]
pub struct StdMonoids;

/// Builds a presented monoid by its short name.
pub fn make_std_presented(name: &str, budgets: &Budgets) -> Option<PresentedMonoid> {
    let pres = match name {
        "MB" => make_mb(),
        "MD" => make_md(),
        "Q11" => make_q11(),
        "QC4" => make_qc4(),
        "QC6" => make_qc6(),
        _ => {
            let k = name.strip_prefix("FC")?;
            free_commutative(k.parse().ok()?)
        }
    };
    Some(PresentedMonoid::new(pres, budgets.clone()))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("illegal step at index {0}")]
    IllegalStep(usize),
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md() -> PresentedMonoid {
        PresentedMonoid::new(make_md(), Budgets::default())
    }

    #[test]
    fn builders_have_expected_shapes() {
        let md = make_md();
        assert_eq!(md.atoms().len(), 6);
        assert_eq!(md.relations().len(), 3);
        let q11 = make_q11();
        assert_eq!(q11.atoms().len(), 11);
        assert_eq!(q11.relations().len(), 11);
        let mb = make_mb();
        assert_eq!(mb.atoms().len(), 24);
        assert_eq!(mb.relations().len(), 11);
        let fc3 = free_commutative(3);
        assert_eq!(fc3.atoms().len(), 3);
        assert_eq!(fc3.relations().len(), 3);
    }

    #[test]
    fn non_homogeneous_is_rejected() {
        let err = Presentation::new("bad", &["a", "b"], &[("ab", "a")]).unwrap_err();
        assert!(matches!(err, PresentationError::NonHomogeneous { .. }));
    }

    #[test]
    fn congruence_classes() {
        let m = md();
        let w = m.presentation().parse_word("ab'").unwrap();
        let class = m.congruence_class(&w).unwrap();
        let words: Vec<String> = class
            .iter()
            .map(|w| m.presentation().format_word(w))
            .collect();
        assert_eq!(words.len(), 2);
        assert!(words.contains(&"ab'".to_string()));
        assert!(words.contains(&"ba'".to_string()));

        let fc2 = PresentedMonoid::new(free_commutative(2), Budgets::default());
        let ab = fc2.presentation().parse_word("ab").unwrap();
        assert_eq!(fc2.congruence_class(&ab).unwrap().len(), 2);
    }

    #[test]
    fn equality() {
        let m = md();
        let u = m.parse_elem("ab'").unwrap();
        let v = m.parse_elem("ba'").unwrap();
        assert_eq!(u, v);
        let mb = PresentedMonoid::new(make_mb(), Budgets::default());
        let u = mb.parse_elem("e_{1,12}e_{12,123}").unwrap();
        let v = mb.parse_elem("e_{1,13}e_{13,123}").unwrap();
        assert_ne!(u, v);
        // and the class of the deleted square's side is a singleton
        assert_eq!(mb.congruence_class(&u).unwrap().len(), 1);
    }

    #[test]
    fn common_multiples() {
        let m = md();
        let a = m.presentation().parse_word("a").unwrap();
        let b = m.presentation().parse_word("b").unwrap();
        match m.common_right_multiple_bounded(&[&a, &b], 4).unwrap() {
            CommonMultiple::Found(w) => {
                assert!(m
                    .equal(&w, &m.presentation().parse_word("ab'").unwrap())
                    .unwrap())
            }
            other => panic!("expected a common multiple, got {other:?}"),
        }
        let fc2 = PresentedMonoid::new(free_commutative(2), Budgets::default());
        let a = fc2.presentation().parse_word("a").unwrap();
        let b = fc2.presentation().parse_word("b").unwrap();
        match fc2.common_right_multiple_bounded(&[&a, &b], 4).unwrap() {
            CommonMultiple::Found(w) => assert_eq!(fc2.format_elem(&w), "ab"),
            other => panic!("expected ab, got {other:?}"),
        }
    }

    #[test]
    fn md_triple_has_no_bounded_global_multiple() {
        let m = md();
        let a = m.presentation().parse_word("a").unwrap();
        let b = m.presentation().parse_word("b").unwrap();
        let c = m.presentation().parse_word("c").unwrap();
        match m.common_right_multiple_bounded(&[&a, &b, &c], 8).unwrap() {
            CommonMultiple::NoneWithin(8) => {}
            other => panic!("expected NoneWithin(8), got {other:?}"),
        }
    }

    #[test]
    fn lcm_and_gcd() {
        let m = md();
        let a = m.parse_elem("a").unwrap();
        let b = m.parse_elem("b").unwrap();
        let lcm = m.right_lcm(&a, &b).unwrap().unwrap();
        assert_eq!(m.format_elem(&lcm), "ab'");
        let mb = PresentedMonoid::new(make_mb(), Budgets::default());
        let u = mb.parse_elem("e_{1,12}e_{12,123}").unwrap();
        let v = mb.parse_elem("e_{1,13}e_{13,123}").unwrap();
        let maxd = mb.maximal_common_right_divisors(&u, &v).unwrap();
        assert_eq!(maxd, vec![Vec::<u8>::new()]);
        let fc2 = PresentedMonoid::new(free_commutative(2), Budgets::default());
        let ab = fc2.parse_elem("ab").unwrap();
        let b2 = fc2.parse_elem("b").unwrap();
        assert_eq!(
            fc2.maximal_common_right_divisors(&ab, &b2).unwrap(),
            vec![b2.clone()]
        );
        assert_eq!(fc2.right_gcd(&ab, &b2).unwrap(), b2);
    }

    #[test]
    fn derivation_checker_accepts_single_word_and_rejects_garbage() {
        let m = make_md();
        let w = parse_signed_word(&m, "a b'").unwrap();
        assert!(verify_group_derivation(&m, &GroupDerivation { words: vec![w] }).is_ok());
        // swapping a side of a non-relation must fail
        let bad = GroupDerivation {
            words: vec![
                parse_signed_word(&m, "a b'").unwrap(),
                parse_signed_word(&m, "c a'").unwrap(),
            ],
        };
        assert_eq!(verify_group_derivation(&m, &bad), Err(0));
        let good = GroupDerivation {
            words: vec![
                parse_signed_word(&m, "a b'").unwrap(),
                parse_signed_word(&m, "b a'").unwrap(),
            ],
        };
        assert!(verify_group_derivation(&m, &good).is_ok());
    }

    #[test]
    fn trivial_pair_is_found_in_one_step() {
        let m = make_md();
        let w = parse_signed_word(&m, "a a^-1").unwrap();
        match group_trivial_bounded(&m, &w, 2, &Budgets::default()).unwrap() {
            GroupTriviality::Yes(d) => {
                assert!(verify_group_derivation(&m, &d).is_ok());
            }
            other => panic!("expected YES, got {other:?}"),
        }
    }

    #[test]
    fn presentation_text_round_trip() {
        let m = make_md();
        let text = m.to_text();
        let back = Presentation::from_text("MD", &text).unwrap();
        assert_eq!(m, back);
    }
}

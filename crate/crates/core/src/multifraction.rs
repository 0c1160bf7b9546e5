//! Multifractions over any monoid handle: the signed product, the reduction
//! rules R_{i,x}, reduction search, the piece ordering, and inversion.
//!
//! A multifraction is an alternating signed sequence of monoid elements.
//! Rule R_{i,x} extracts a divisor x from entry i+1, pushes it through entry
//! i by an lcm, and deposits the complement in entry i-1; depth never
//! changes. Reduction levels run over 1 <= i <= depth-1 only: the rule
//! consumes entry i+1, and a virtual identity entry beyond the last would
//! force x = 1, which is excluded.

use crate::budget::Budgets;
use crate::monoid::{budget_exceeded, MonoidError, MonoidHandle};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Positive => write!(f, "positive"),
            Sign::Negative => write!(f, "negative"),
        }
    }
}

/// An alternating signed sequence of monoid elements. The empty sequence is
/// the unit of the multifraction monoid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multifraction<E> {
    first_sign: Sign,
    entries: Vec<E>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("rule not applicable: {0}")]
    NotApplicable(String),
    #[error("x must not be the identity")]
    IdentityX,
    #[error("level {level} out of range 1..{max}")]
    BadLevel { level: usize, max: usize },
    #[error(transparent)]
    Monoid(#[from] MonoidError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MfParseError {
    #[error("empty multifraction literal")]
    Empty,
    #[error("entry {index}: {source}")]
    Entry { index: usize, source: MonoidError },
}

/// One applicable reduction: the level, the extracted divisor, and the
/// complement pushed into entry i-1 (absent for boundary level 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionStep<E> {
    pub level: usize,
    pub x: E,
    pub complement: Option<E>,
}

impl<E: Clone + Eq + Ord + std::hash::Hash + fmt::Debug> Multifraction<E> {
    pub fn empty() -> Self {
        Multifraction {
            first_sign: Sign::Positive,
            entries: Vec::new(),
        }
    }

    pub fn new(first_sign: Sign, entries: Vec<E>) -> Self {
        if entries.is_empty() {
            Multifraction::empty()
        } else {
            Multifraction {
                first_sign,
                entries,
            }
        }
    }

    pub fn positive(entries: Vec<E>) -> Self {
        Multifraction::new(Sign::Positive, entries)
    }

    pub fn negative(entries: Vec<E>) -> Self {
        Multifraction::new(Sign::Negative, entries)
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn first_sign(&self) -> Sign {
        self.first_sign
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    /// 1-based entry access.
    pub fn entry(&self, i: usize) -> &E {
        &self.entries[i - 1]
    }

    /// Sign of 1-based index i: the first sign flipped i-1 times.
    pub fn sign_at(&self, i: usize) -> Sign {
        if i % 2 == 1 {
            self.first_sign
        } else {
            self.first_sign.flip()
        }
    }

    pub fn is_trivial<M: MonoidHandle<Elem = E>>(&self, m: &M) -> bool {
        self.entries.iter().all(|e| m.is_one(e))
    }

    /// The three-case signed product: merge when the junction entries carry
    /// the same sign (composing underlying values in denominator order when
    /// both are negative), concatenate otherwise.
    pub fn product<M: MonoidHandle<Elem = E>>(m: &M, a: &Self, b: &Self) -> Self {
        if a.is_empty() {
            return b.clone();
        }
        if b.is_empty() {
            return a.clone();
        }
        let last_sign = a.sign_at(a.depth());
        if last_sign == b.first_sign {
            let merged = match last_sign {
                Sign::Positive => m.mul(&a.entries[a.depth() - 1], &b.entries[0]),
                // denominators compose in reverse written order, fixed by
                // requiring the evaluation map to be a homomorphism
                Sign::Negative => m.mul(&b.entries[0], &a.entries[a.depth() - 1]),
            };
            let mut entries = a.entries[..a.depth() - 1].to_vec();
            entries.push(merged);
            entries.extend_from_slice(&b.entries[1..]);
            Multifraction::new(a.first_sign, entries)
        } else {
            let mut entries = a.entries.clone();
            entries.extend_from_slice(&b.entries);
            Multifraction::new(a.first_sign, entries)
        }
    }

    /// Inverse: reverse the entries and flip all signs.
    pub fn inverse(&self) -> Self {
        if self.is_empty() {
            return self.clone();
        }
        let last_sign = self.sign_at(self.depth());
        let mut entries = self.entries.clone();
        entries.reverse();
        Multifraction::new(last_sign.flip(), entries)
    }

    /// Drops trailing identity entries; used when comparing reduction
    /// results up to right padding by trivial entries.
    pub fn strip_trailing_ones<M: MonoidHandle<Elem = E>>(&self, m: &M) -> Self {
        let mut entries = self.entries.clone();
        while entries.last().is_some_and(|e| m.is_one(e)) {
            entries.pop();
        }
        Multifraction::new(self.first_sign, entries)
    }

    pub fn eq_up_to_padding<M: MonoidHandle<Elem = E>>(m: &M, a: &Self, b: &Self) -> bool {
        a.strip_trailing_ones(m) == b.strip_trailing_ones(m)
    }

    /// Right-pads with identity entries to the given depth.
    pub fn pad_to_depth<M: MonoidHandle<Elem = E>>(&self, m: &M, depth: usize) -> Self {
        let mut entries = self.entries.clone();
        while entries.len() < depth {
            entries.push(m.one());
        }
        Multifraction::new(self.first_sign, entries)
    }

    pub fn parse<M: MonoidHandle<Elem = E>>(m: &M, text: &str) -> Result<Self, MfParseError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(MfParseError::Empty);
        }
        if text == "ε" || text == "eps" {
            return Ok(Multifraction::empty());
        }
        let (first_sign, body) = match text.strip_prefix('/') {
            Some(rest) => (Sign::Negative, rest),
            None => (Sign::Positive, text),
        };
        let mut entries = Vec::new();
        for (index, part) in body.split('/').enumerate() {
            let e = m
                .parse_elem(part.trim())
                .map_err(|source| MfParseError::Entry {
                    index: index + 1,
                    source,
                })?;
            entries.push(e);
        }
        Ok(Multifraction::new(first_sign, entries))
    }

    pub fn format<M: MonoidHandle<Elem = E>>(&self, m: &M) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        let body = self
            .entries
            .iter()
            .map(|e| m.format_elem(e))
            .collect::<Vec<_>>()
            .join("/");
        match self.first_sign {
            Sign::Positive => body,
            Sign::Negative => format!("/{body}"),
        }
    }

    /// Applies R_{i,x}. Preconditions follow the four-case table; the error
    /// reports which clause failed.
    pub fn apply_reduction<M: MonoidHandle<Elem = E>>(
        &self,
        m: &M,
        level: usize,
        x: &E,
    ) -> Result<Self, ReduceError> {
        if m.is_one(x) {
            return Err(ReduceError::IdentityX);
        }
        if level < 1 || level >= self.depth() {
            return Err(ReduceError::BadLevel {
                level,
                max: self.depth().saturating_sub(1),
            });
        }
        let mut entries = self.entries.clone();
        let positive = self.sign_at(level) == Sign::Positive;
        if positive {
            let next = m.quot_of_right_div(x, &entries[level]).ok_or_else(|| {
                ReduceError::NotApplicable(format!("x does not right-divide entry {}", level + 1))
            })?;
            if level >= 2 {
                let lcm = m.left_lcm(x, &entries[level - 1])?.ok_or_else(|| {
                    ReduceError::NotApplicable(format!(
                        "required left lcm of x and entry {level} missing"
                    ))
                })?;
                let b_i = m.quot_of_right_div(x, &lcm).ok_or_else(|| {
                    ReduceError::NotApplicable("left lcm does not lift over x".to_string())
                })?;
                let complement =
                    m.quot_of_right_div(&entries[level - 1], &lcm)
                        .ok_or_else(|| {
                            ReduceError::NotApplicable(
                                "left lcm does not lift over entry i".to_string(),
                            )
                        })?;
                entries[level - 2] = m.mul(&complement, &entries[level - 2]);
                entries[level - 1] = b_i;
                entries[level] = next;
            } else {
                let b_1 = m.quot_of_right_div(x, &entries[0]).ok_or_else(|| {
                    ReduceError::NotApplicable("x does not right-divide entry 1".to_string())
                })?;
                entries[0] = b_1;
                entries[1] = next;
            }
        } else {
            let next = m.quot_of_left_div(x, &entries[level]).ok_or_else(|| {
                ReduceError::NotApplicable(format!("x does not left-divide entry {}", level + 1))
            })?;
            if level >= 2 {
                let lcm = m.right_lcm(x, &entries[level - 1])?.ok_or_else(|| {
                    ReduceError::NotApplicable(format!(
                        "required right lcm of x and entry {level} missing"
                    ))
                })?;
                let b_i = m.quot_of_left_div(x, &lcm).ok_or_else(|| {
                    ReduceError::NotApplicable("right lcm does not lift over x".to_string())
                })?;
                let complement =
                    m.quot_of_left_div(&entries[level - 1], &lcm)
                        .ok_or_else(|| {
                            ReduceError::NotApplicable(
                                "right lcm does not lift over entry i".to_string(),
                            )
                        })?;
                entries[level - 2] = m.mul(&entries[level - 2], &complement);
                entries[level - 1] = b_i;
                entries[level] = next;
            } else {
                let b_1 = m.quot_of_left_div(x, &entries[0]).ok_or_else(|| {
                    ReduceError::NotApplicable("x does not left-divide entry 1".to_string())
                })?;
                entries[0] = b_1;
                entries[1] = next;
            }
        }
        Ok(Multifraction::new(self.first_sign, entries))
    }

    /// All applicable rules: every level, every nontrivial divisor of the
    /// consumed entry on the matching side.
    pub fn applicable_reductions<M: MonoidHandle<Elem = E>>(
        &self,
        m: &M,
    ) -> Result<Vec<ReductionStep<E>>, MonoidError> {
        let mut steps = Vec::new();
        for level in 1..self.depth() {
            let positive = self.sign_at(level) == Sign::Positive;
            let divisors = if positive {
                m.right_divisors(&self.entries[level])?
            } else {
                m.left_divisors(&self.entries[level])?
            };
            for x in divisors {
                if m.is_one(&x) {
                    continue;
                }
                match self.apply_reduction(m, level, &x) {
                    Ok(reduced) => {
                        let complement = if level >= 2 {
                            let lcm = if positive {
                                m.left_lcm(&x, &self.entries[level - 1])?
                            } else {
                                m.right_lcm(&x, &self.entries[level - 1])?
                            };
                            lcm.and_then(|l| {
                                if positive {
                                    m.quot_of_right_div(&self.entries[level - 1], &l)
                                } else {
                                    m.quot_of_left_div(&self.entries[level - 1], &l)
                                }
                            })
                        } else {
                            None
                        };
                        let _ = reduced;
                        steps.push(ReductionStep {
                            level,
                            x,
                            complement,
                        });
                    }
                    Err(ReduceError::Monoid(e)) => return Err(e),
                    Err(_) => {}
                }
            }
        }
        Ok(steps)
    }

    pub fn is_irreducible<M: MonoidHandle<Elem = E>>(&self, m: &M) -> Result<bool, MonoidError> {
        Ok(self.applicable_reductions(m)?.is_empty())
    }

    /// Applies the rule at `level` with a divisibility-maximal applicable
    /// divisor (ties broken by canonical element order). This approximates
    /// the maximal tame reduction recipe of the companion literature; its
    /// outputs are advisory.
    pub fn max_reduction_at<M: MonoidHandle<Elem = E>>(
        &self,
        m: &M,
        level: usize,
    ) -> Result<Self, ReduceError> {
        let all = self.applicable_reductions(m)?;
        let positive = self.sign_at(level) == Sign::Positive;
        let at_level: Vec<&ReductionStep<E>> = all.iter().filter(|s| s.level == level).collect();
        if at_level.is_empty() {
            return Err(ReduceError::NotApplicable(format!(
                "no divisor applies at level {level}"
            )));
        }
        let mut maximal: Vec<&&ReductionStep<E>> = Vec::new();
        for s in &at_level {
            let below = at_level.iter().any(|t| {
                t.x != s.x
                    && if positive {
                        m.right_divides(&s.x, &t.x)
                    } else {
                        m.left_divides(&s.x, &t.x)
                    }
            });
            if !below {
                maximal.push(s);
            }
        }
        maximal.sort_by(|a, b| a.x.cmp(&b.x));
        self.apply_reduction(m, level, &maximal[0].x)
    }
}

/// Everything reachable from `a` by reduction: the set of irreducible
/// multifractions, canonically sorted. States are deduplicated by entries
/// and first sign; depth never changes along the way.
pub fn reduce_exhaustive<M: MonoidHandle>(
    m: &M,
    a: &Multifraction<M::Elem>,
    budgets: &Budgets,
) -> Result<Vec<Multifraction<M::Elem>>, MonoidError> {
    let mut seen: HashMap<Multifraction<M::Elem>, ()> = HashMap::new();
    let mut queue: VecDeque<Multifraction<M::Elem>> = VecDeque::new();
    let mut irreducible = Vec::new();
    seen.insert(a.clone(), ());
    queue.push_back(a.clone());
    while let Some(cur) = queue.pop_front() {
        let steps = cur.applicable_reductions(m)?;
        if steps.is_empty() {
            irreducible.push(cur.clone());
            continue;
        }
        for step in steps {
            let next = cur
                .apply_reduction(m, step.level, &step.x)
                .expect("applicable step applies");
            if !seen.contains_key(&next) {
                if seen.len() >= budgets.search_states {
                    return Err(budget_exceeded("reduction search states"));
                }
                seen.insert(next.clone(), ());
                queue.push_back(next);
            }
        }
    }
    irreducible.sort();
    irreducible.dedup();
    Ok(irreducible)
}

/// Breadth-first search for a reduction sequence from `a` to a multifraction
/// satisfying `target` (compared up to trailing identity padding by the
/// caller if needed). Returns the step trace paired with the intermediate
/// multifractions.
#[allow(clippy::type_complexity)]
pub fn reduce_to<M: MonoidHandle>(
    m: &M,
    a: &Multifraction<M::Elem>,
    target: impl Fn(&Multifraction<M::Elem>) -> bool,
    budgets: &Budgets,
) -> Result<Option<Vec<(ReductionStep<M::Elem>, Multifraction<M::Elem>)>>, MonoidError> {
    type Trace<E> = Option<(Multifraction<E>, ReductionStep<E>)>;
    if target(a) {
        return Ok(Some(Vec::new()));
    }
    let mut parent: HashMap<Multifraction<M::Elem>, Trace<M::Elem>> = HashMap::new();
    let mut depth: HashMap<Multifraction<M::Elem>, usize> = HashMap::new();
    let mut queue: VecDeque<Multifraction<M::Elem>> = VecDeque::new();
    parent.insert(a.clone(), None);
    depth.insert(a.clone(), 0);
    queue.push_back(a.clone());
    while let Some(cur) = queue.pop_front() {
        let d = depth[&cur];
        if d >= budgets.trace_cap {
            continue;
        }
        for step in cur.applicable_reductions(m)? {
            let next = cur
                .apply_reduction(m, step.level, &step.x)
                .expect("applicable step applies");
            if parent.contains_key(&next) {
                continue;
            }
            if parent.len() >= budgets.search_states {
                return Err(budget_exceeded("reduction search states"));
            }
            parent.insert(next.clone(), Some((cur.clone(), step.clone())));
            depth.insert(next.clone(), d + 1);
            if target(&next) {
                let mut trace = Vec::new();
                let mut walk = next.clone();
                while let Some(Some((prev, step))) = parent.get(&walk) {
                    trace.push((step.clone(), walk.clone()));
                    walk = prev.clone();
                }
                trace.reverse();
                return Ok(Some(trace));
            }
            queue.push_back(next);
        }
    }
    Ok(None)
}

#[allow(clippy::type_complexity)]
pub fn reduce_to_trivial<M: MonoidHandle>(
    m: &M,
    a: &Multifraction<M::Elem>,
    budgets: &Budgets,
) -> Result<Option<Vec<(ReductionStep<M::Elem>, Multifraction<M::Elem>)>>, MonoidError> {
    reduce_to(m, a, |mf| mf.is_trivial(m), budgets)
}

/// Does `b = c * a * d` hold for some pieces c, d that are not both trivial?
/// Candidates are generated from entry ranges of `b` with boundary entries
/// split through divisor enumeration, then checked by direct product.
pub fn is_proper_piece<M: MonoidHandle>(
    m: &M,
    a: &Multifraction<M::Elem>,
    b: &Multifraction<M::Elem>,
) -> Result<bool, MonoidError> {
    if a.depth() > b.depth() {
        return Ok(false);
    }
    let left_candidates = prefix_candidates(m, b)?;
    let right_candidates = suffix_candidates(m, b)?;
    for c in &left_candidates {
        let ca = Multifraction::product(m, c, a);
        if ca.depth() > b.depth() {
            continue;
        }
        for d in &right_candidates {
            if c.is_trivial(m) && d.is_trivial(m) {
                continue;
            }
            if Multifraction::product(m, &ca, d) == *b {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// ε plus every prefix of `b`'s entry list with the final entry replaced by
/// one of its side divisors (left divisors at positive positions, right
/// divisors at negative ones — the side a product junction merges on).
fn prefix_candidates<M: MonoidHandle>(
    m: &M,
    b: &Multifraction<M::Elem>,
) -> Result<Vec<Multifraction<M::Elem>>, MonoidError> {
    let mut out = vec![Multifraction::empty()];
    for j in 1..=b.depth() {
        let divisors = if b.sign_at(j) == Sign::Positive {
            m.left_divisors(b.entry(j))?
        } else {
            m.right_divisors(b.entry(j))?
        };
        for p in divisors {
            let mut entries = b.entries()[..j - 1].to_vec();
            entries.push(p);
            out.push(Multifraction::new(b.first_sign(), entries));
        }
    }
    Ok(out)
}

fn suffix_candidates<M: MonoidHandle>(
    m: &M,
    b: &Multifraction<M::Elem>,
) -> Result<Vec<Multifraction<M::Elem>>, MonoidError> {
    let mut out = vec![Multifraction::empty()];
    for j in 1..=b.depth() {
        let divisors = if b.sign_at(j) == Sign::Positive {
            m.right_divisors(b.entry(j))?
        } else {
            m.left_divisors(b.entry(j))?
        };
        for q in divisors {
            let mut entries = vec![q];
            entries.extend_from_slice(&b.entries()[j..]);
            out.push(Multifraction::new(b.sign_at(j), entries));
        }
    }
    Ok(out)
}

/// All proper pieces of `b`, deduplicated. Complete because any piece
/// occupies a contiguous entry range of `b` with divisor-split boundaries.
pub fn proper_pieces<M: MonoidHandle>(
    m: &M,
    b: &Multifraction<M::Elem>,
) -> Result<Vec<Multifraction<M::Elem>>, MonoidError> {
    use std::collections::BTreeSet;
    let mut candidates: BTreeSet<Multifraction<M::Elem>> = BTreeSet::new();
    candidates.insert(Multifraction::empty());
    for i in 1..=b.depth() {
        // pieces starting inside entry i
        let start_parts = if b.sign_at(i) == Sign::Positive {
            m.right_divisors(b.entry(i))?
        } else {
            m.left_divisors(b.entry(i))?
        };
        for j in i..=b.depth() {
            if i == j {
                // middle factors of a single entry: entry = prefix * v * suffix
                // regardless of sign, so enumerate plain two-sided splits
                for p in m.left_divisors(b.entry(i))? {
                    for q in m.right_divisors(b.entry(i))? {
                        if let Some(v) = middle_factor(m, b.entry(i), &p, &q) {
                            candidates.insert(Multifraction::new(b.sign_at(i), vec![v]));
                        }
                    }
                }
            } else {
                let end_parts = if b.sign_at(j) == Sign::Positive {
                    m.left_divisors(b.entry(j))?
                } else {
                    m.right_divisors(b.entry(j))?
                };
                for s in &start_parts {
                    for t in &end_parts {
                        let mut entries = vec![s.clone()];
                        entries.extend_from_slice(&b.entries()[i..j - 1]);
                        entries.push(t.clone());
                        candidates.insert(Multifraction::new(b.sign_at(i), entries));
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for cand in candidates {
        if is_proper_piece(m, &cand, b)? {
            out.push(cand);
        }
    }
    Ok(out)
}

/// v with entry = p * v * q for the given side divisors, when consistent.
fn middle_factor<M: MonoidHandle>(
    m: &M,
    entry: &M::Elem,
    prefix: &M::Elem,
    suffix: &M::Elem,
) -> Option<M::Elem> {
    let after_prefix = m.quot_of_left_div(prefix, entry)?;
    m.quot_of_right_div(suffix, &after_prefix)
}

/// Searches `generators` for a triple admitting pairwise common right
/// multiples but no global one. Exact over interval monoids; a bounded
/// certificate over presented monoids, whose lcms are bounded searches.
#[allow(clippy::type_complexity)]
pub fn three_ore_witness<M: MonoidHandle>(
    m: &M,
    generators: &[M::Elem],
) -> Result<Option<(M::Elem, M::Elem, M::Elem)>, MonoidError> {
    for i in 0..generators.len() {
        for j in i + 1..generators.len() {
            let ab = match m.right_lcm(&generators[i], &generators[j])? {
                Some(l) => l,
                None => continue,
            };
            for k in j + 1..generators.len() {
                if m.right_lcm(&generators[i], &generators[k])?.is_none() {
                    continue;
                }
                if m.right_lcm(&generators[j], &generators[k])?.is_none() {
                    continue;
                }
                if m.right_lcm(&ab, &generators[k])?.is_none() {
                    return Ok(Some((
                        generators[i].clone(),
                        generators[j].clone(),
                        generators[k].clone(),
                    )));
                }
            }
        }
    }
    Ok(None)
}

//! The shared monoid interface behind the multifraction engine, plus the
//! generic Malcev-instance scan.

use crate::budget::Budgets;
use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("budget exceeded: {budget}")]
    BudgetExceeded { budget: String },
    #[error("gcd/lcm structure violated: {0}")]
    NotGcd(String),
    #[error("cannot parse element `{text}`: {reason}")]
    Parse { text: String, reason: String },
}

pub fn budget_exceeded(which: &str) -> MonoidError {
    MonoidError::BudgetExceeded {
        budget: which.to_string(),
    }
}

/// A cancellative monoid with trivial units, divisor enumeration, gcds, and
/// conditional lcms. Interval monoids implement every operation exactly;
/// presented monoids answer lcm and enumeration questions through bounded
/// searches and report exhausted budgets via `MonoidError`.
///
/// Cancellativity is assumed, not enforced; the test suites spot-check it.
pub trait MonoidHandle {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn one(&self) -> Self::Elem;
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Degree / word length; used for enumeration order and budget sizing.
    fn size(&self, a: &Self::Elem) -> usize;

    /// The unique `c` with `a * c = b`, if `a` left-divides `b`.
    fn quot_of_left_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// The unique `c` with `c * a = b`, if `a` right-divides `b`.
    fn quot_of_right_div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn left_divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.quot_of_left_div(a, b).is_some()
    }
    fn right_divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.quot_of_right_div(a, b).is_some()
    }

    /// Complete, duplicate-free, sorted by (size, element order); contains
    /// the identity and `a` itself.
    fn left_divisors(&self, a: &Self::Elem) -> Result<Vec<Self::Elem>, MonoidError>;
    fn right_divisors(&self, a: &Self::Elem) -> Result<Vec<Self::Elem>, MonoidError>;

    /// Least common right multiple, when a common right multiple exists.
    fn right_lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<Self::Elem>, MonoidError>;
    fn left_lcm(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Option<Self::Elem>, MonoidError>;

    fn left_gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, MonoidError>;
    fn right_gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, MonoidError>;

    /// All elements of size <= bound, sorted by (size, element order).
    fn enumerate(&self, size_bound: usize) -> Result<Vec<Self::Elem>, MonoidError>;

    fn parse_elem(&self, text: &str) -> Result<Self::Elem, MonoidError>;
    fn format_elem(&self, a: &Self::Elem) -> String;

    fn name(&self) -> &str;
}

/// A counterexample to the first Malcev quasi-identity:
/// `da = AC, db = AD, cb = BD` all hold but `ca != BC`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalcevViolation<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
    pub upper_a: E,
    pub upper_b: E,
    pub upper_c: E,
    pub upper_d: E,
}

/// Exhaustively scans elements of size <= `size_bound` for a violation of
/// the quasi-identity `(da = AC and db = AD and cb = BD) => ca = BC`.
///
/// Tuples where the conclusion already follows from cancellativity are
/// skipped, which keeps the scan complete for violations:
///   - if e != 1 divides both d and A on the left, cancelling e yields the
///     same instance with smaller (d, A) and the identical conclusion, so a
///     violating tuple with d, A not left-coprime yields one where they are;
///   - d = 1 forces B = cA (right-cancel D in cb = cAD = BD), whence
///     BC = cAC = ca; A = 1 forces c = Bd (right-cancel b), whence ca = BC.
pub fn check_malcev_instance<M: MonoidHandle>(
    monoid: &M,
    size_bound: usize,
    budgets: &Budgets,
) -> Result<Option<MalcevViolation<M::Elem>>, MonoidError> {
    let elems = monoid.enumerate(size_bound)?;
    let mut work: usize = 0;
    let cap = budgets.search_states;
    let mut tick = |units: usize| -> Result<(), MonoidError> {
        work += units;
        if work > cap {
            Err(budget_exceeded("malcev scan states"))
        } else {
            Ok(())
        }
    };

    let mut prod_cache: HashMap<(usize, usize), M::Elem> = HashMap::new();
    let mulc = |i: usize, j: usize, cache: &mut HashMap<(usize, usize), M::Elem>| {
        cache
            .entry((i, j))
            .or_insert_with(|| monoid.mul(&elems[i], &elems[j]))
            .clone()
    };

    for (di, d) in elems.iter().enumerate() {
        if monoid.is_one(d) {
            continue; // conclusion follows from cancellativity
        }
        for upper_a in elems.iter() {
            if monoid.is_one(upper_a) {
                continue; // same
            }
            if !monoid.is_one(&monoid.left_gcd(d, upper_a)?) {
                continue; // strip the common divisor: covered by a smaller tuple
            }
            if monoid.right_lcm(d, upper_a)?.is_none() {
                continue; // da = AC makes da a common right multiple of d and A
            }
            // Group by b first: both D and the (c, B) list depend only on
            // (d, A, b).
            for (bi, b) in elems.iter().enumerate() {
                tick(1)?;
                let db = mulc(di, bi, &mut prod_cache);
                let upper_d = match monoid.quot_of_left_div(upper_a, &db) {
                    Some(q) => q,
                    None => continue,
                };
                let mut cb_pairs: Vec<(usize, M::Elem)> = Vec::new();
                for (ci, _c) in elems.iter().enumerate() {
                    tick(1)?;
                    let cb = mulc(ci, bi, &mut prod_cache);
                    if let Some(upper_b) = monoid.quot_of_right_div(&upper_d, &cb) {
                        cb_pairs.push((ci, upper_b));
                    }
                }
                if cb_pairs.is_empty() {
                    continue;
                }
                for (aidx, a) in elems.iter().enumerate() {
                    let da = mulc(di, aidx, &mut prod_cache);
                    let upper_c = match monoid.quot_of_left_div(upper_a, &da) {
                        Some(q) => q,
                        None => continue,
                    };
                    for (ci, upper_b) in &cb_pairs {
                        tick(1)?;
                        let ca = mulc(*ci, aidx, &mut prod_cache);
                        let bc = monoid.mul(upper_b, &upper_c);
                        if ca != bc {
                            return Ok(Some(MalcevViolation {
                                a: a.clone(),
                                b: b.clone(),
                                c: elems[*ci].clone(),
                                d: d.clone(),
                                upper_a: upper_a.clone(),
                                upper_b: upper_b.clone(),
                                upper_c,
                                upper_d,
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

//! The interval monoid Int(P) of a finite poset: normal forms, divisibility,
//! gcds, conditional lcms, and divisor enumeration, all exact when P is a
//! local lattice.
//!
//! Every element has a unique normal form: a sequence of proper intervals in
//! which no interval's target equals the next interval's source. Left and
//! right divisibility reduce to prefix and suffix matching of normal forms,
//! with the boundary interval compared by endpoint order.

use crate::monoid::{MonoidError, MonoidHandle};
use crate::poset::{IntervalRef, LocalLatticeFailure, Poset, PosetError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntervalError {
    #[error("not an interval: `{src}` is not below `{tgt}`")]
    NotAnInterval { src: String, tgt: String },
    #[error("poset is not a local lattice: {0}")]
    NotLocalLattice(LocalLatticeFailure),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// An element of Int(P) as its normal sequence of proper intervals.
/// The empty sequence is the identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IMElement(Vec<IntervalRef>);

impl IMElement {
    pub fn one() -> IMElement {
        IMElement(Vec::new())
    }

    pub fn intervals(&self) -> &[IntervalRef] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Source of a nontrivial element: source of its first interval.
    pub fn src(&self) -> Option<usize> {
        self.0.first().map(|i| i.src)
    }

    pub fn tgt(&self) -> Option<usize> {
        self.0.last().map(|i| i.tgt)
    }
}

/// Handle over Int(P). Construction validates once that P is a local
/// lattice; afterwards every gcd/lcm reduces to joins and meets of poset
/// elements and all operations are exact and total.
#[derive(Debug, Clone)]
pub struct IntervalMonoid {
    poset: Poset,
    display_name: String,
}

impl IntervalMonoid {
    pub fn new(poset: Poset) -> Result<IntervalMonoid, IntervalError> {
        if let Some(w) = poset.local_lattice_witness() {
            return Err(IntervalError::NotLocalLattice(w));
        }
        let display_name = format!("Int({})", poset.name);
        Ok(IntervalMonoid {
            poset,
            display_name,
        })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    /// Normal form of a product of intervals: identity intervals are
    /// dropped, adjacent intervals with matching endpoint are merged. The
    /// result is independent of merge order.
    pub fn element(&self, intervals: &[IntervalRef]) -> Result<IMElement, IntervalError> {
        let mut out: Vec<IntervalRef> = Vec::with_capacity(intervals.len());
        for iv in intervals {
            if !self.poset.leq(iv.src, iv.tgt) {
                return Err(IntervalError::NotAnInterval {
                    src: self.poset.label(iv.src).to_string(),
                    tgt: self.poset.label(iv.tgt).to_string(),
                });
            }
            if !iv.is_proper() {
                continue;
            }
            match out.last().copied() {
                Some(last) if last.tgt == iv.src => {
                    // [x,y][y,z] = [x,z]; the merge cannot cascade because
                    // the element below `last` was already normal against it.
                    *out.last_mut().unwrap() = IntervalRef::new(last.src, iv.tgt);
                }
                _ => out.push(*iv),
            }
        }
        Ok(IMElement(out))
    }

    pub fn element_from_labels(&self, pairs: &[(&str, &str)]) -> Result<IMElement, IntervalError> {
        let mut ivs = Vec::new();
        for (a, b) in pairs {
            ivs.push(IntervalRef::new(
                self.poset.index_of(a)?,
                self.poset.index_of(b)?,
            ));
        }
        self.element(&ivs)
    }

    /// One atom per Hasse cover.
    pub fn atoms(&self) -> Vec<IMElement> {
        self.poset
            .covers()
            .iter()
            .map(|&(a, b)| IMElement(vec![IntervalRef::new(a, b)]))
            .collect()
    }

    fn right_lcm_nf(&self, a: &[IntervalRef], b: &[IntervalRef]) -> Option<Vec<IntervalRef>> {
        if a.is_empty() {
            return Some(b.to_vec());
        }
        if b.is_empty() {
            return Some(a.to_vec());
        }
        let (i, j) = (a[0], b[0]);
        if i.src != j.src {
            // a common right multiple would need two different first intervals
            return None;
        }
        if i == j {
            let rest = self.right_lcm_nf(&a[1..], &b[1..])?;
            let mut out = Vec::with_capacity(rest.len() + 1);
            out.push(i);
            out.extend(rest);
            return Some(out);
        }
        // First targets differ. Case table:
        //   both degree 1      -> join of the targets inside the up-set
        //   one degree 1       -> absorb if its target is below the other's
        //   both degree >= 2   -> first intervals would both be forced exactly
        match (a.len() == 1, b.len() == 1) {
            (true, true) => {
                let w = self.poset.lub(i.tgt, j.tgt)?;
                Some(vec![IntervalRef::new(i.src, w)])
            }
            (true, false) => {
                if self.poset.leq(i.tgt, j.tgt) {
                    Some(b.to_vec())
                } else {
                    None
                }
            }
            (false, true) => {
                if self.poset.leq(j.tgt, i.tgt) {
                    Some(a.to_vec())
                } else {
                    None
                }
            }
            (false, false) => None,
        }
    }

    fn left_lcm_nf(&self, a: &[IntervalRef], b: &[IntervalRef]) -> Option<Vec<IntervalRef>> {
        if a.is_empty() {
            return Some(b.to_vec());
        }
        if b.is_empty() {
            return Some(a.to_vec());
        }
        let (i, j) = (a[a.len() - 1], b[b.len() - 1]);
        if i.tgt != j.tgt {
            return None;
        }
        if i == j {
            let rest = self.left_lcm_nf(&a[..a.len() - 1], &b[..b.len() - 1])?;
            let mut out = rest;
            out.push(i);
            return Some(out);
        }
        match (a.len() == 1, b.len() == 1) {
            (true, true) => {
                let w = self.poset.glb(i.src, j.src)?;
                Some(vec![IntervalRef::new(w, i.tgt)])
            }
            (true, false) => {
                if self.poset.leq(j.src, i.src) {
                    Some(b.to_vec())
                } else {
                    None
                }
            }
            (false, true) => {
                if self.poset.leq(i.src, j.src) {
                    Some(a.to_vec())
                } else {
                    None
                }
            }
            (false, false) => None,
        }
    }
}

impl MonoidHandle for IntervalMonoid {
    type Elem = IMElement;

    fn one(&self) -> IMElement {
        IMElement::one()
    }

    fn mul(&self, a: &IMElement, b: &IMElement) -> IMElement {
        let (x, y) = (&a.0, &b.0);
        if x.is_empty() {
            return b.clone();
        }
        if y.is_empty() {
            return a.clone();
        }
        let mut out = x.clone();
        if x[x.len() - 1].tgt == y[0].src {
            let last = out.pop().unwrap();
            out.push(IntervalRef::new(last.src, y[0].tgt));
            out.extend_from_slice(&y[1..]);
        } else {
            out.extend_from_slice(y);
        }
        IMElement(out)
    }

    fn size(&self, a: &IMElement) -> usize {
        a.degree()
    }

    fn quot_of_left_div(&self, a: &IMElement, b: &IMElement) -> Option<IMElement> {
        let (x, y) = (&a.0, &b.0);
        let p = x.len();
        if p == 0 {
            return Some(b.clone());
        }
        if p > y.len() {
            return None;
        }
        if x[..p - 1] != y[..p - 1] {
            return None;
        }
        let (last, against) = (x[p - 1], y[p - 1]);
        if last.src != against.src || !self.poset.leq(last.tgt, against.tgt) {
            return None;
        }
        let mut out = Vec::new();
        if last.tgt != against.tgt {
            out.push(IntervalRef::new(last.tgt, against.tgt));
        } else if p == y.len() {
            return Some(IMElement::one());
        }
        out.extend_from_slice(&y[p..]);
        Some(IMElement(out))
    }

    fn quot_of_right_div(&self, a: &IMElement, b: &IMElement) -> Option<IMElement> {
        let (x, y) = (&a.0, &b.0);
        let p = x.len();
        let q = y.len();
        if p == 0 {
            return Some(b.clone());
        }
        if p > q {
            return None;
        }
        if x[1..] != y[q - p + 1..] {
            return None;
        }
        let (first, against) = (x[0], y[q - p]);
        if first.tgt != against.tgt || !self.poset.leq(against.src, first.src) {
            return None;
        }
        let mut out = y[..q - p].to_vec();
        if first.src != against.src {
            out.push(IntervalRef::new(against.src, first.src));
        }
        Some(IMElement(out))
    }

    fn left_divisors(&self, a: &IMElement) -> Result<Vec<IMElement>, MonoidError> {
        let mut out = vec![IMElement::one()];
        for (k, iv) in a.0.iter().enumerate() {
            for w in 0..self.poset.len() {
                if w != iv.src && self.poset.leq(iv.src, w) && self.poset.leq(w, iv.tgt) {
                    let mut d = a.0[..k].to_vec();
                    d.push(IntervalRef::new(iv.src, w));
                    out.push(IMElement(d));
                }
            }
        }
        out.sort_by(|x, y| (x.degree(), &x.0).cmp(&(y.degree(), &y.0)));
        Ok(out)
    }

    fn right_divisors(&self, a: &IMElement) -> Result<Vec<IMElement>, MonoidError> {
        let mut out = vec![IMElement::one()];
        for (k, iv) in a.0.iter().enumerate() {
            for w in 0..self.poset.len() {
                if w != iv.tgt && self.poset.leq(iv.src, w) && self.poset.leq(w, iv.tgt) {
                    let mut d = vec![IntervalRef::new(w, iv.tgt)];
                    d.extend_from_slice(&a.0[k + 1..]);
                    out.push(IMElement(d));
                }
            }
        }
        out.sort_by(|x, y| (x.degree(), &x.0).cmp(&(y.degree(), &y.0)));
        Ok(out)
    }

    fn right_lcm(&self, a: &IMElement, b: &IMElement) -> Result<Option<IMElement>, MonoidError> {
        Ok(self.right_lcm_nf(&a.0, &b.0).map(IMElement))
    }

    fn left_lcm(&self, a: &IMElement, b: &IMElement) -> Result<Option<IMElement>, MonoidError> {
        Ok(self.left_lcm_nf(&a.0, &b.0).map(IMElement))
    }

    fn left_gcd(&self, a: &IMElement, b: &IMElement) -> Result<IMElement, MonoidError> {
        let (x, y) = (&a.0, &b.0);
        let mut out = Vec::new();
        let mut r = 0;
        while r < x.len() && r < y.len() && x[r] == y[r] {
            out.push(x[r]);
            r += 1;
        }
        if r < x.len() && r < y.len() && x[r].src == y[r].src {
            let base = x[r].src;
            let t = self
                .poset
                .glb_in_up_set(base, x[r].tgt, y[r].tgt)
                .ok_or_else(|| MonoidError::NotGcd("up-set has no meet".into()))?;
            if t != base {
                out.push(IntervalRef::new(base, t));
            }
        }
        Ok(IMElement(out))
    }

    fn right_gcd(&self, a: &IMElement, b: &IMElement) -> Result<IMElement, MonoidError> {
        let (x, y) = (&a.0, &b.0);
        let mut tail = Vec::new();
        let mut r = 0;
        while r < x.len() && r < y.len() && x[x.len() - 1 - r] == y[y.len() - 1 - r] {
            tail.push(x[x.len() - 1 - r]);
            r += 1;
        }
        tail.reverse();
        let mut out = Vec::new();
        if r < x.len() && r < y.len() {
            let (i, j) = (x[x.len() - 1 - r], y[y.len() - 1 - r]);
            if i.tgt == j.tgt {
                let t = self
                    .poset
                    .lub_in_down_set(i.tgt, i.src, j.src)
                    .ok_or_else(|| MonoidError::NotGcd("down-set has no join".into()))?;
                if t != i.tgt {
                    out.push(IntervalRef::new(t, i.tgt));
                }
            }
        }
        out.extend(tail);
        Ok(IMElement(out))
    }

    fn enumerate(&self, size_bound: usize) -> Result<Vec<IMElement>, MonoidError> {
        let mut proper: Vec<IntervalRef> = Vec::new();
        for s in 0..self.poset.len() {
            for t in 0..self.poset.len() {
                if s != t && self.poset.leq(s, t) {
                    proper.push(IntervalRef::new(s, t));
                }
            }
        }
        proper.sort_unstable();
        let mut out = vec![IMElement::one()];
        let mut layer: Vec<Vec<IntervalRef>> = vec![Vec::new()];
        for _ in 0..size_bound {
            let mut next = Vec::new();
            for seq in &layer {
                for iv in &proper {
                    if seq.last().is_none_or(|l| l.tgt != iv.src) {
                        let mut ext = seq.clone();
                        ext.push(*iv);
                        next.push(ext);
                    }
                }
            }
            out.extend(next.iter().cloned().map(IMElement));
            layer = next;
            if layer.is_empty() {
                break;
            }
        }
        out.sort_by(|x, y| (x.degree(), &x.0).cmp(&(y.degree(), &y.0)));
        Ok(out)
    }

    fn parse_elem(&self, text: &str) -> Result<IMElement, MonoidError> {
        let text = text.trim();
        if text == "1" {
            return Ok(IMElement::one());
        }
        let mut ivs = Vec::new();
        for token in text.split('*') {
            let token = token.trim();
            let inner = token
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| MonoidError::Parse {
                    text: token.to_string(),
                    reason: "expected `[src,tgt]`".to_string(),
                })?;
            let (a, b) = inner.split_once(',').ok_or_else(|| MonoidError::Parse {
                text: token.to_string(),
                reason: "expected `src,tgt`".to_string(),
            })?;
            let src = self
                .poset
                .index_of(a.trim())
                .map_err(|e| MonoidError::Parse {
                    text: token.to_string(),
                    reason: e.to_string(),
                })?;
            let tgt = self
                .poset
                .index_of(b.trim())
                .map_err(|e| MonoidError::Parse {
                    text: token.to_string(),
                    reason: e.to_string(),
                })?;
            ivs.push(IntervalRef::new(src, tgt));
        }
        self.element(&ivs).map_err(|e| MonoidError::Parse {
            text: text.to_string(),
            reason: e.to_string(),
        })
    }

    fn format_elem(&self, a: &IMElement) -> String {
        if a.is_one() {
            return "1".to_string();
        }
        a.0.iter()
            .map(|iv| {
                format!(
                    "[{},{}]",
                    self.poset.label(iv.src),
                    self.poset.label(iv.tgt)
                )
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    fn name(&self) -> &str {
        &self.display_name
    }
}

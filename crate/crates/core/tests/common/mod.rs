//! Shared generators and independent oracles for the integration suites.
//! Oracles use only multiplication, enumeration, and poset scans, never the
//! normal-form shortcuts they are checking.

#![allow(dead_code)]

use gcdmf_core::interval::{IMElement, IntervalMonoid};
use gcdmf_core::monoid::MonoidHandle;
use gcdmf_core::multifraction::{Multifraction, Sign};
use gcdmf_core::poset::{IntervalRef, Poset};
use gcdmf_core::presented::PresentedMonoid;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random poset on 2..=max_n elements: random edges on an index-ordered
/// vertex set (always acyclic), then closure.
pub fn random_poset(rng: &mut ChaCha8Rng, max_n: usize) -> Poset {
    let n = rng.gen_range(2..=max_n);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut covers: Vec<(String, String)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.3) {
                covers.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    let cover_refs: Vec<(&str, &str)> = covers
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    Poset::build("random", &name_refs, &cover_refs).expect("index-ordered edges are acyclic")
}

pub fn random_local_lattice(rng: &mut ChaCha8Rng, max_n: usize) -> Poset {
    loop {
        let p = random_poset(rng, max_n);
        if p.is_local_lattice() {
            return p;
        }
    }
}

/// Random proper-interval list over p (not necessarily normal).
pub fn random_interval_list(rng: &mut ChaCha8Rng, p: &Poset, max_len: usize) -> Vec<IntervalRef> {
    let mut pairs: Vec<IntervalRef> = Vec::new();
    for s in 0..p.len() {
        for t in 0..p.len() {
            if p.leq(s, t) {
                pairs.push(IntervalRef::new(s, t));
            }
        }
    }
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| pairs[rng.gen_range(0..pairs.len())])
        .collect()
}

pub fn random_im_element(rng: &mut ChaCha8Rng, im: &IntervalMonoid, max_len: usize) -> IMElement {
    let list = random_interval_list(rng, im.poset(), max_len);
    im.element(&list).expect("intervals are valid")
}

pub fn random_mf<M: MonoidHandle>(
    rng: &mut ChaCha8Rng,
    m: &M,
    mut pick: impl FnMut(&mut ChaCha8Rng) -> M::Elem,
    max_depth: usize,
) -> Multifraction<M::Elem> {
    let depth = rng.gen_range(1..=max_depth);
    let sign = if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    };
    let entries: Vec<M::Elem> = (0..depth).map(|_| pick(rng)).collect();
    let _ = m;
    Multifraction::new(sign, entries)
}

/// All results of fully simplifying an interval list one rewrite at a time,
/// trying every applicable position at every step: dropping an identity
/// interval or merging an adjacent matching pair. Independent oracle for
/// normal-form uniqueness.
pub fn all_merge_orders(list: &[IntervalRef]) -> BTreeSet<Vec<IntervalRef>> {
    let mut out = BTreeSet::new();
    let mut moves: Vec<Vec<IntervalRef>> = Vec::new();
    for (i, iv) in list.iter().enumerate() {
        if !iv.is_proper() {
            let mut next = list.to_vec();
            next.remove(i);
            moves.push(next);
        }
    }
    for i in 1..list.len() {
        if list[i - 1].is_proper() && list[i].is_proper() && list[i - 1].tgt == list[i].src {
            let mut next = list.to_vec();
            next[i - 1] = IntervalRef::new(list[i - 1].src, list[i].tgt);
            next.remove(i);
            moves.push(next);
        }
    }
    if moves.is_empty() {
        out.insert(list.to_vec());
    } else {
        for next in moves {
            out.extend(all_merge_orders(&next));
        }
    }
    out
}

/// Exponent vector of a free-commutative word (abelianization oracle).
pub fn fc_exponents(pm: &PresentedMonoid, mf: &Multifraction<Vec<u8>>) -> Vec<i64> {
    let k = pm.presentation().atoms().len();
    let mut e = vec![0i64; k];
    for i in 1..=mf.depth() {
        let sign = if mf.sign_at(i) == Sign::Positive {
            1
        } else {
            -1
        };
        for &a in mf.entry(i) {
            e[a as usize] += sign;
        }
    }
    e
}

/// Brute-force left-divisibility: scan candidate quotients from the
/// enumeration and multiply.
pub fn oracle_left_divides<M: MonoidHandle>(
    m: &M,
    universe: &[M::Elem],
    d: &M::Elem,
    a: &M::Elem,
) -> bool {
    universe.iter().any(|c| m.mul(d, c) == *a)
}

pub fn oracle_right_divides<M: MonoidHandle>(
    m: &M,
    universe: &[M::Elem],
    d: &M::Elem,
    a: &M::Elem,
) -> bool {
    universe.iter().any(|c| m.mul(c, d) == *a)
}

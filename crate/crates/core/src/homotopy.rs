//! Unitality oracle for multifractions over interval monoids: free-group
//! evaluation, the order-complex 2-skeleton with an integer-homology
//! obstruction, bounded loop contraction, and the free-product reduction of
//! general multifractions into simple pieces.
//!
//! The oracle's semantics for a simple multifraction: unital iff its zigzag
//! is closed and the loop is null-homotopic under the two elementary move
//! families (adding/removing a backtrack pattern, exchanging a chain with
//! its endpoints edge). The homology obstruction runs before any search: it
//! is cheap and certifies NO exactly; bounded search alone never could.

use crate::budget::Budgets;
use crate::interval::{IMElement, IntervalMonoid};
use crate::multifraction::{Multifraction, Sign};
use crate::poset::{IntervalRef, Poset};
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};

/// Three-valued oracle answer; Unknown names the exhausted budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown(String),
}

// ---------------------------------------------------------------------------
// Free-group evaluation.

/// A freely reduced word over vertex letters with signs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeWord(Vec<(usize, bool)>);

impl FreeWord {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[(usize, bool)] {
        &self.0
    }

    fn push(&mut self, vertex: usize, inverse: bool) {
        match self.0.last() {
            Some(&(v, inv)) if v == vertex && inv != inverse => {
                self.0.pop();
            }
            _ => self.0.push((vertex, inverse)),
        }
    }

    pub fn format(&self, p: &Poset) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(v, inv)| {
                if inv {
                    format!("{}^-1", p.label(v))
                } else {
                    p.label(v).to_string()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The freely reduced signed-vertex word of the evaluation of `mf`: each
/// interval [x,y] contributes x^-1 y, inverted entries contribute the
/// reverse. An empty word is necessary (not sufficient) for unitality.
pub fn phi_word(mf: &Multifraction<IMElement>) -> FreeWord {
    let mut w = FreeWord::default();
    for i in 1..=mf.depth() {
        let e = mf.entry(i);
        match mf.sign_at(i) {
            Sign::Positive => {
                for iv in e.intervals() {
                    w.push(iv.src, true);
                    w.push(iv.tgt, false);
                }
            }
            Sign::Negative => {
                for iv in e.intervals().iter().rev() {
                    w.push(iv.tgt, true);
                    w.push(iv.src, false);
                }
            }
        }
    }
    w
}

// ---------------------------------------------------------------------------
// The order-complex 2-skeleton.

/// Vertices = poset elements, edges = strictly comparable pairs, triangles
/// = 3-chains x < y < z.
#[derive(Debug, Clone)]
pub struct Complex2 {
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
    edge_index: BTreeMap<(usize, usize), usize>,
}

impl Complex2 {
    pub fn new(p: &Poset) -> Complex2 {
        let mut edges = Vec::new();
        for a in 0..p.len() {
            for b in 0..p.len() {
                if p.lt(a, b) {
                    edges.push((a, b));
                }
            }
        }
        edges.sort_unstable();
        let edge_index: BTreeMap<(usize, usize), usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut triangles = Vec::new();
        for &(a, b) in &edges {
            for c in 0..p.len() {
                if p.lt(b, c) {
                    triangles.push((a, b, c));
                }
            }
        }
        Complex2 {
            edges,
            triangles,
            edge_index,
        }
    }

    /// Oriented edge coefficient vector of a closed vertex path.
    pub fn cycle_vector(&self, path: &[usize]) -> Option<Vec<i64>> {
        let mut v = vec![0i64; self.edges.len()];
        for k in 1..path.len() {
            let (a, b) = (path[k - 1], path[k]);
            if let Some(&i) = self.edge_index.get(&(a, b)) {
                v[i] += 1;
            } else if let Some(&i) = self.edge_index.get(&(b, a)) {
                v[i] -= 1;
            } else {
                return None;
            }
        }
        Some(v)
    }

    /// Boundary matrix of triangles over edges: (y,z) - (x,z) + (x,y).
    pub fn boundary_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.triangles.len()]; self.edges.len()];
        for (j, &(x, y, z)) in self.triangles.iter().enumerate() {
            m[self.edge_index[&(y, z)]][j] += 1;
            m[self.edge_index[&(x, z)]][j] -= 1;
            m[self.edge_index[&(x, y)]][j] += 1;
        }
        m
    }
}

/// Whether the integer system A t = b has a solution (Smith reduction with
/// row operations mirrored on b).
#[allow(clippy::needless_range_loop)]
pub fn solvable_over_z(mut a: Vec<Vec<i64>>, mut b: Vec<i64>) -> bool {
    let rows = a.len();
    if rows == 0 {
        return true;
    }
    let cols = a[0].len();
    let mut k = 0;
    while k < rows && k < cols {
        // locate a minimal nonzero pivot in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if a[i][j] != 0 && pivot.is_none_or(|(pi, pj)| a[i][j].abs() < a[pi][pj].abs()) {
                    pivot = Some((i, j));
                }
            }
        }
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        a.swap(k, pi);
        b.swap(k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        let mut clean = true;
        for i in 0..rows {
            if i != k && a[i][k] != 0 {
                let q = a[i][k] / a[k][k];
                for j in 0..cols {
                    a[i][j] -= q * a[k][j];
                }
                b[i] -= q * b[k];
                if a[i][k] != 0 {
                    clean = false;
                }
            }
        }
        for j in 0..cols {
            if j != k && a[k][j] != 0 {
                let q = a[k][j] / a[k][k];
                for i in 0..rows {
                    a[i][j] -= q * a[i][k];
                }
                if a[k][j] != 0 {
                    clean = false;
                }
            }
        }
        if clean {
            k += 1;
        }
        // otherwise repeat with a smaller pivot now present
    }
    for i in 0..rows {
        if i < k && i < cols {
            if a[i][i] == 0 {
                if b[i] != 0 {
                    return false;
                }
            } else if b[i] % a[i][i] != 0 {
                return false;
            }
        } else if b[i] != 0 {
            return false;
        }
    }
    true
}

/// Integer-homology obstruction: true when the loop's class in H1 of the
/// 2-skeleton is nonzero, certifying it is not null-homotopic.
pub fn h1_obstruction_nonzero(c: &Complex2, path: &[usize]) -> bool {
    let cycle = match c.cycle_vector(path) {
        Some(v) => v,
        None => return true,
    };
    if cycle.iter().all(|&x| x == 0) {
        return false;
    }
    !solvable_over_z(c.boundary_matrix(), cycle)
}

// ---------------------------------------------------------------------------
// Loop contraction.

/// A basepointed loop: a closed vertex path with consecutive vertices
/// strictly comparable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Loop {
    path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoopError {
    NotClosed,
    NotComparable(usize),
    Empty,
}

impl Loop {
    pub fn new(p: &Poset, path: Vec<usize>) -> Result<Loop, LoopError> {
        if path.is_empty() {
            return Err(LoopError::Empty);
        }
        if path[0] != path[path.len() - 1] {
            return Err(LoopError::NotClosed);
        }
        for k in 1..path.len() {
            if path[k - 1] == path[k] || !p.comparable(path[k - 1], path[k]) {
                return Err(LoopError::NotComparable(k));
            }
        }
        Ok(Loop { path })
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn basepoint(&self) -> usize {
        self.path[0]
    }

    pub fn is_constant(&self) -> bool {
        self.path.len() == 1
    }
}

/// One elementary homotopy move on a vertex path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// insert (y, path[pos]) after index pos, creating pattern (x, y, x)
    InsertBacktrack { pos: usize, y: usize },
    /// remove indices pos, pos+1 where path[pos-1] == path[pos+1]
    RemoveBacktrack { pos: usize },
    /// insert y between pos and pos+1 along a strict chain
    ExpandChain { pos: usize, y: usize },
    /// remove index pos where path[pos-1], path[pos], path[pos+1] is a chain
    ContractChain { pos: usize },
}

/// Replays a move list; returns None if any move is illegal. Used by the
/// test suites to validate YES traces against the two move families.
pub fn replay_moves(p: &Poset, start: &[usize], moves: &[Move]) -> Option<Vec<usize>> {
    let mut path = start.to_vec();
    for &mv in moves {
        match mv {
            Move::InsertBacktrack { pos, y } => {
                if pos >= path.len() || !p.comparable(path[pos], y) || path[pos] == y {
                    return None;
                }
                path.insert(pos + 1, path[pos]);
                path.insert(pos + 1, y);
            }
            Move::RemoveBacktrack { pos } => {
                if pos == 0 || pos + 1 >= path.len() || path[pos - 1] != path[pos + 1] {
                    return None;
                }
                path.drain(pos..=pos + 1);
            }
            Move::ExpandChain { pos, y } => {
                if pos + 1 >= path.len() {
                    return None;
                }
                let (a, b) = (path[pos], path[pos + 1]);
                let chain = (p.lt(a, y) && p.lt(y, b)) || (p.lt(b, y) && p.lt(y, a));
                if !chain {
                    return None;
                }
                path.insert(pos + 1, y);
            }
            Move::ContractChain { pos } => {
                if pos == 0 || pos + 1 >= path.len() {
                    return None;
                }
                let (a, b, c) = (path[pos - 1], path[pos], path[pos + 1]);
                let chain = (p.lt(a, b) && p.lt(b, c)) || (p.lt(c, b) && p.lt(b, a));
                if !chain {
                    return None;
                }
                path.remove(pos);
            }
        }
    }
    Some(path)
}

/// Applies backtrack removals and chain contractions until none applies,
/// scanning left to right. Deterministic; records the moves taken.
fn greedy_reduce(p: &Poset, path: &mut Vec<usize>, moves: &mut Vec<Move>) {
    loop {
        let mut acted = false;
        let mut j = 1;
        while j + 1 < path.len() {
            if path[j - 1] == path[j + 1] {
                path.drain(j..=j + 1);
                moves.push(Move::RemoveBacktrack { pos: j });
                acted = true;
                continue;
            }
            let (a, b, c) = (path[j - 1], path[j], path[j + 1]);
            if (p.lt(a, b) && p.lt(b, c)) || (p.lt(c, b) && p.lt(b, a)) {
                path.remove(j);
                moves.push(Move::ContractChain { pos: j });
                acted = true;
                continue;
            }
            j += 1;
        }
        if !acted {
            break;
        }
    }
}

/// Constructive contraction of a closed loop in a component with a cone
/// point: rewrite every edge into a detour through the cone, then peel the
/// resulting spikes. Linear in the loop length; primitive moves only.
fn cone_contraction(p: &Poset, lp: &Loop, cone: usize) -> Vec<Move> {
    let mut moves: Vec<Move> = Vec::new();
    let mut path = lp.path().to_vec();
    // phase 1: turn each edge (u, w) with u, w != cone into (u, cone, w)
    // by a cone spike at the endpoint on the far side of the cone
    let mut i = 0;
    while i + 1 < path.len() {
        let (u, w) = (path[i], path[i + 1]);
        if u == cone || w == cone {
            i += 1;
            continue;
        }
        let asc = p.lt(u, w);
        let (lo, hi) = if asc { (u, w) } else { (w, u) };
        let spike_at_first = |moves: &mut Vec<Move>, path: &mut Vec<usize>| {
            // (u, w) -> (u, cone, u, w) -> (u, cone, w)
            moves.push(Move::InsertBacktrack { pos: i, y: cone });
            path.insert(i + 1, u);
            path.insert(i + 1, cone);
            moves.push(Move::ContractChain { pos: i + 2 });
            path.remove(i + 2);
        };
        let spike_at_second = |moves: &mut Vec<Move>, path: &mut Vec<usize>| {
            // (u, w) -> (u, w, cone, w) -> (u, cone, w)
            moves.push(Move::InsertBacktrack {
                pos: i + 1,
                y: cone,
            });
            path.insert(i + 2, w);
            path.insert(i + 2, cone);
            moves.push(Move::ContractChain { pos: i + 1 });
            path.remove(i + 1);
        };
        if p.lt(lo, cone) && p.lt(cone, hi) {
            moves.push(Move::ExpandChain { pos: i, y: cone });
            path.insert(i + 1, cone);
        } else if p.lt(cone, lo) {
            // spike at the lower endpoint: the triple through it is a chain
            if asc {
                spike_at_first(&mut moves, &mut path);
            } else {
                spike_at_second(&mut moves, &mut path);
            }
        } else {
            debug_assert!(p.lt(hi, cone));
            if asc {
                spike_at_second(&mut moves, &mut path);
            } else {
                spike_at_first(&mut moves, &mut path);
            }
        }
        // the loop re-examines (u, cone) and (cone, w) and skips them
    }
    // phase 2: peel the (cone, v, cone) spikes, then the final backtrack
    while path.len() > 1 {
        let j = (1..path.len() - 1)
            .find(|&j| path[j - 1] == path[j + 1])
            .expect("spiked path always has a backtrack");
        path.drain(j..=j + 1);
        moves.push(Move::RemoveBacktrack { pos: j });
    }
    moves
}

/// Neighbour states of a path under the primitive moves plus composite
/// "diamond flips" (peak/valley substitutions across a tiled square), each
/// carrying the primitive move list realizing it.
fn path_neighbors(p: &Poset, cur: &[usize], max_len: usize) -> Vec<(Vec<usize>, Vec<Move>)> {
    let mut out: Vec<(Vec<usize>, Vec<Move>)> = Vec::new();
    let mut emit = |path: Vec<usize>, moves: Vec<Move>| {
        if path.len() <= max_len {
            debug_assert_eq!(
                replay_moves(p, cur, &moves).as_deref(),
                Some(path.as_slice())
            );
            out.push((path, moves));
        }
    };
    // removals and contractions
    for j in 1..cur.len().saturating_sub(1) {
        if cur[j - 1] == cur[j + 1] {
            let mut next = cur.to_vec();
            next.drain(j..=j + 1);
            emit(next, vec![Move::RemoveBacktrack { pos: j }]);
        }
        let (a, b, c) = (cur[j - 1], cur[j], cur[j + 1]);
        if (p.lt(a, b) && p.lt(b, c)) || (p.lt(c, b) && p.lt(b, a)) {
            let mut next = cur.to_vec();
            next.remove(j);
            emit(next, vec![Move::ContractChain { pos: j }]);
        }
    }
    // flips at interior peaks and valleys
    for j in 1..cur.len().saturating_sub(1) {
        let (u, v, w) = (cur[j - 1], cur[j], cur[j + 1]);
        if u == w {
            continue;
        }
        let peak = p.lt(u, v) && p.lt(w, v);
        let valley = p.lt(v, u) && p.lt(v, w);
        if !peak && !valley {
            continue;
        }
        let lt = |a: usize, b: usize| if peak { p.lt(a, b) } else { p.lt(b, a) };
        for alt in 0..p.len() {
            if alt == v {
                continue;
            }
            // drop through the square to the other side: alt below both
            // shoulders (above, for a valley)
            if lt(alt, u) && lt(alt, w) {
                let mut next = cur.to_vec();
                next[j] = alt;
                emit(
                    next,
                    vec![
                        Move::InsertBacktrack { pos: j - 1, y: alt },
                        Move::ContractChain { pos: j + 1 },
                        Move::ExpandChain { pos: j, y: w },
                        Move::RemoveBacktrack { pos: j + 2 },
                    ],
                );
            }
            // slide to a same-side vertex; needs a middle t strictly inside
            // all four triangles
            if lt(u, alt) && lt(w, alt) {
                for t in 0..p.len() {
                    if t == u || t == w || t == v {
                        continue;
                    }
                    if lt(u, t) && lt(w, t) && lt(t, v) && (t == alt || lt(t, alt)) {
                        let mut moves = vec![
                            Move::ExpandChain { pos: j - 1, y: t },
                            Move::ExpandChain { pos: j + 1, y: t },
                            Move::RemoveBacktrack { pos: j + 1 },
                        ];
                        if t != alt {
                            moves.push(Move::InsertBacktrack { pos: j, y: alt });
                            moves.push(Move::ContractChain { pos: j });
                            moves.push(Move::ContractChain { pos: j + 1 });
                        }
                        let mut next = cur.to_vec();
                        next[j] = alt;
                        emit(next, moves);
                        break;
                    }
                }
            }
        }
    }
    // insertions
    for pos in 0..cur.len() {
        for y in 0..p.len() {
            if y != cur[pos] && p.comparable(cur[pos], y) {
                let mut next = cur.to_vec();
                next.insert(pos + 1, next[pos]);
                next.insert(pos + 1, y);
                emit(next, vec![Move::InsertBacktrack { pos, y }]);
            }
        }
    }
    for pos in 0..cur.len().saturating_sub(1) {
        let (a, b) = (cur[pos], cur[pos + 1]);
        for y in 0..p.len() {
            if (p.lt(a, y) && p.lt(y, b)) || (p.lt(b, y) && p.lt(y, a)) {
                let mut next = cur.to_vec();
                next.insert(pos + 1, y);
                emit(next, vec![Move::ExpandChain { pos, y }]);
            }
        }
    }
    out
}

/// Decides null-homotopy of a closed loop. YES carries a move trace that
/// replays to the constant loop; NO is certified by the homology
/// obstruction; bounded best-first search in between.
pub fn null_homotopic(p: &Poset, lp: &Loop, budgets: &Budgets) -> (Tri, Option<Vec<Move>>) {
    let mut initial_moves = Vec::new();
    let mut path = lp.path().to_vec();
    greedy_reduce(p, &mut path, &mut initial_moves);
    if path.len() == 1 {
        return (Tri::Yes, Some(initial_moves));
    }
    if let Some(cone) = p.cone_point_of(lp.basepoint()) {
        let moves = cone_contraction(p, lp, cone);
        return (Tri::Yes, Some(moves));
    }
    let complex = Complex2::new(p);
    if h1_obstruction_nonzero(&complex, lp.path()) {
        return (Tri::No, None);
    }
    let max_len = 2 * lp.path().len() + 8;
    let mut parent: HashMap<Vec<usize>, (Vec<usize>, Vec<Move>)> = HashMap::new();
    let mut visited: HashSet<Vec<usize>> = HashSet::new();
    let mut heap: BinaryHeap<std::cmp::Reverse<(usize, usize, Vec<usize>)>> = BinaryHeap::new();
    visited.insert(path.clone());
    heap.push(std::cmp::Reverse((path.len(), 0, path.clone())));
    let mut states = 1usize;
    while let Some(std::cmp::Reverse((_, depth, cur))) = heap.pop() {
        for (next, edge_moves) in path_neighbors(p, &cur, max_len) {
            if visited.contains(&next) {
                continue;
            }
            states += 1;
            if states > budgets.homotopy_states {
                return (Tri::Unknown("loop contraction states".to_string()), None);
            }
            visited.insert(next.clone());
            parent.insert(next.clone(), (cur.clone(), edge_moves));
            if next.len() == 1 {
                let mut chain: Vec<Vec<Move>> = Vec::new();
                let mut walk = next.clone();
                while let Some((prev, mvs)) = parent.get(&walk) {
                    chain.push(mvs.clone());
                    walk = prev.clone();
                }
                chain.push(initial_moves.clone());
                chain.reverse();
                let moves: Vec<Move> = chain.into_iter().flatten().collect();
                return (Tri::Yes, Some(moves));
            }
            heap.push(std::cmp::Reverse((next.len(), depth + 1, next)));
        }
    }
    (
        Tri::Unknown("loop contraction search exhausted".to_string()),
        None,
    )
}

/// Fast sufficient condition: every component has a cone point, so
/// closedness alone decides unitality of simple multifractions.
pub fn simply_connected_via_cone(p: &Poset) -> bool {
    p.cone_points().iter().all(|(_, c)| c.is_some())
}

// ---------------------------------------------------------------------------
// The unitality oracle.

#[derive(Debug, Clone, PartialEq, Eq)]
struct Piece {
    letters: Vec<(IntervalRef, Sign)>,
}

impl Piece {
    fn src(&self) -> usize {
        let (iv, s) = self.letters[0];
        match s {
            Sign::Positive => iv.src,
            Sign::Negative => iv.tgt,
        }
    }

    fn tgt(&self) -> usize {
        let (iv, s) = self.letters[self.letters.len() - 1];
        match s {
            Sign::Positive => iv.tgt,
            Sign::Negative => iv.src,
        }
    }

    fn closed(&self) -> bool {
        self.src() == self.tgt()
    }

    fn loop_path(&self) -> Vec<usize> {
        let mut path = vec![self.src()];
        for &(iv, s) in &self.letters {
            let to = match s {
                Sign::Positive => iv.tgt,
                Sign::Negative => iv.src,
            };
            path.push(to);
        }
        path
    }
}

/// Can two adjacent signed letters live in one simple piece?
fn letters_match(a: (IntervalRef, Sign), b: (IntervalRef, Sign)) -> bool {
    match (a.1, b.1) {
        (Sign::Positive, Sign::Negative) => a.0.tgt == b.0.tgt,
        (Sign::Negative, Sign::Positive) => a.0.src == b.0.src,
        _ => false,
    }
}

/// The signed-interval expansion of a multifraction: entries in order, each
/// unfolded into its normal-form intervals, inverted entries reversed.
/// Identity entries vanish.
fn expansion(mf: &Multifraction<IMElement>) -> Vec<(IntervalRef, Sign)> {
    let mut letters = Vec::new();
    for i in 1..=mf.depth() {
        let sign = mf.sign_at(i);
        let ivs = mf.entry(i).intervals();
        match sign {
            Sign::Positive => letters.extend(ivs.iter().map(|&iv| (iv, sign))),
            Sign::Negative => letters.extend(ivs.iter().rev().map(|&iv| (iv, sign))),
        }
    }
    letters
}

/// Cuts the expansion into maximal alternating matched runs: the normal
/// decomposition into simple pieces. Junction markers never cancel between
/// adjacent pieces by maximality.
fn normal_decomposition(letters: &[(IntervalRef, Sign)]) -> Vec<Piece> {
    let mut pieces: Vec<Piece> = Vec::new();
    for &l in letters {
        match pieces.last_mut() {
            Some(piece) if letters_match(*piece.letters.last().unwrap(), l) => {
                piece.letters.push(l);
            }
            _ => pieces.push(Piece { letters: vec![l] }),
        }
    }
    pieces
}

fn piece_status(im: &IntervalMonoid, piece: &Piece, budgets: &Budgets) -> Tri {
    if !piece.closed() {
        return Tri::No;
    }
    let lp = Loop::new(im.poset(), piece.loop_path()).expect("piece paths are loops");
    null_homotopic(im.poset(), &lp, budgets).0
}

/// Merges two adjacent pieces whose junction markers cancel; same-sign
/// boundary letters compose into a single interval.
fn merge_pieces(left: &Piece, right: &Piece) -> Piece {
    let mut letters = left.letters.clone();
    let l = *letters.last().unwrap();
    let r = right.letters[0];
    if l.1 == r.1 {
        let merged = match l.1 {
            Sign::Positive => IntervalRef::new(l.0.src, r.0.tgt),
            Sign::Negative => IntervalRef::new(r.0.src, l.0.tgt),
        };
        *letters.last_mut().unwrap() = (merged, l.1);
        letters.extend_from_slice(&right.letters[1..]);
    } else {
        letters.extend_from_slice(&right.letters);
    }
    Piece { letters }
}

/// Unitality for an arbitrary multifraction over an interval monoid:
/// decompose into simple pieces, delete pieces certified unital and cancel
/// their source/target markers, merge neighbours whose markers meet, and
/// answer YES exactly when everything vanishes. A nonempty residue with all
/// pieces answered NO is a nonempty free-product normal form, hence NO.
pub fn unital(im: &IntervalMonoid, mf: &Multifraction<IMElement>, budgets: &Budgets) -> Tri {
    let letters = expansion(mf);
    if letters.is_empty() {
        return Tri::Yes;
    }
    let mut pieces = normal_decomposition(&letters);
    let mut statuses: Vec<Tri> = pieces
        .iter()
        .map(|pc| piece_status(im, pc, budgets))
        .collect();
    loop {
        let yes_at = statuses.iter().position(|s| *s == Tri::Yes);
        let i = match yes_at {
            Some(i) => i,
            None => break,
        };
        pieces.remove(i);
        statuses.remove(i);
        // after the deletion the two neighbours become adjacent; merge if
        // their markers cancel (the deleted piece was closed, so its own
        // markers already cancelled)
        if i > 0 && i < pieces.len() && pieces[i - 1].tgt() == pieces[i].src() {
            let merged = merge_pieces(&pieces[i - 1], &pieces[i]);
            let status = piece_status(im, &merged, budgets);
            pieces.splice(i - 1..=i, [merged]);
            statuses.splice(i - 1..=i, [status]);
        }
    }
    if pieces.is_empty() {
        return Tri::Yes;
    }
    if let Some(Tri::Unknown(d)) = statuses.iter().find(|s| matches!(s, Tri::Unknown(_))) {
        return Tri::Unknown(d.clone());
    }
    Tri::No
}

/// Equivalence of two multifractions: a == b in the enveloping group iff
/// a * inverse(b) is unital.
pub fn equivalent(
    im: &IntervalMonoid,
    a: &Multifraction<IMElement>,
    b: &Multifraction<IMElement>,
    budgets: &Budgets,
) -> Tri {
    let prod = Multifraction::product(im, a, &b.inverse());
    unital(im, &prod, budgets)
}

//! Zigzags in posets, the dictionary to simple multifractions, reducibility
//! testing, enumeration of simple closed zigzags, and the semi-convergence
//! certificate.
//!
//! Orientation convention: positive zigzags ascend first (x0 < x1), so the
//! first entry of the associated multifraction is a genuine interval at a
//! positive position. This matches the worked witnesses; the alternative
//! parity reading is flagged where the certificate is assembled.

use crate::budget::Budgets;
use crate::homotopy::{self, Tri};
use crate::interval::{IMElement, IntervalMonoid};
use crate::monoid::{budget_exceeded, MonoidError};
use crate::multifraction::{Multifraction, Sign};
use crate::poset::{IntervalRef, Poset};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZigzagError {
    #[error("vertices {0} and {1} are incomparable")]
    Incomparable(String, String),
    #[error("expected strict alternation at index {0}")]
    NotAlternating(usize),
    #[error("a zigzag needs at least two vertices")]
    TooShort,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// An alternating vertex path. Step k ascends iff (k odd) == (orientation
/// positive); length = number of steps = depth of the associated
/// multifraction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Zigzag {
    vertices: Vec<usize>,
    orientation: Sign,
}

impl Zigzag {
    pub fn new(p: &Poset, vertices: Vec<usize>, orientation: Sign) -> Result<Zigzag, ZigzagError> {
        if vertices.len() < 2 {
            return Err(ZigzagError::TooShort);
        }
        for k in 1..vertices.len() {
            let (a, b) = (vertices[k - 1], vertices[k]);
            if a == b || !p.comparable(a, b) {
                return Err(ZigzagError::Incomparable(
                    p.label(a).to_string(),
                    p.label(b).to_string(),
                ));
            }
            let ascending = (k % 2 == 1) == (orientation == Sign::Positive);
            if ascending != p.lt(a, b) {
                return Err(ZigzagError::NotAlternating(k));
            }
        }
        Ok(Zigzag {
            vertices,
            orientation,
        })
    }

    pub fn from_labels(
        p: &Poset,
        labels: &[&str],
        orientation: Sign,
    ) -> Result<Zigzag, ZigzagError> {
        let vertices = labels
            .iter()
            .map(|l| {
                p.index_of(l)
                    .map_err(|_| ZigzagError::UnknownVertex(l.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Zigzag::new(p, vertices, orientation)
    }

    /// Literal: comma-separated labels, optional leading `-` for negative
    /// orientation.
    pub fn parse(p: &Poset, text: &str) -> Result<Zigzag, ZigzagError> {
        let (orientation, body) = match text.trim().strip_prefix('-') {
            Some(rest) => (Sign::Negative, rest),
            None => (Sign::Positive, text.trim()),
        };
        let labels: Vec<&str> = body.split(',').map(|s| s.trim()).collect();
        Zigzag::from_labels(p, &labels, orientation)
    }

    pub fn format(&self, p: &Poset) -> String {
        let body = self
            .vertices
            .iter()
            .map(|&v| p.label(v).to_string())
            .collect::<Vec<_>>()
            .join(",");
        match self.orientation {
            Sign::Positive => body,
            Sign::Negative => format!("-{body}"),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn orientation(&self) -> Sign {
        self.orientation
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_closed(&self) -> bool {
        self.vertices[0] == self.vertices[self.vertices.len() - 1]
    }

    /// Simple: x1..xn pairwise distinct.
    pub fn is_simple(&self) -> bool {
        let interior = &self.vertices[1..];
        for (i, v) in interior.iter().enumerate() {
            if interior[..i].contains(v) {
                return false;
            }
        }
        true
    }
}

/// The dictionary F: entry k of the multifraction is the interval spanning
/// the k-th step, signed by orientation and parity.
pub fn zigzag_to_mf(im: &IntervalMonoid, zz: &Zigzag) -> Multifraction<IMElement> {
    let p = im.poset();
    let mut entries = Vec::with_capacity(zz.len());
    for k in 1..zz.vertices.len() {
        let (a, b) = (zz.vertices[k - 1], zz.vertices[k]);
        let iv = if p.lt(a, b) {
            IntervalRef::new(a, b)
        } else {
            IntervalRef::new(b, a)
        };
        entries.push(im.element(&[iv]).expect("validated step"));
    }
    Multifraction::new(zz.orientation, entries)
}

/// Inverse of the dictionary, defined exactly on simple multifractions.
pub fn mf_to_zigzag(im: &IntervalMonoid, mf: &Multifraction<IMElement>) -> Option<Zigzag> {
    if mf.depth() == 0 {
        return None;
    }
    let mut vertices = Vec::with_capacity(mf.depth() + 1);
    for i in 1..=mf.depth() {
        let e = mf.entry(i);
        if e.degree() != 1 {
            return None;
        }
        let iv = e.intervals()[0];
        // at positive positions the step ascends, at negative ones it descends
        let (from, to) = if mf.sign_at(i) == Sign::Positive {
            (iv.src, iv.tgt)
        } else {
            (iv.tgt, iv.src)
        };
        if i == 1 {
            vertices.push(from);
        } else if *vertices.last().unwrap() != from {
            return None;
        }
        vertices.push(to);
    }
    Zigzag::new(im.poset(), vertices, mf.first_sign()).ok()
}

/// Is the multifraction simple: every entry a proper interval with matching
/// endpoints between neighbours?
pub fn is_simple_mf(im: &IntervalMonoid, mf: &Multifraction<IMElement>) -> bool {
    mf.depth() > 0 && mf_to_zigzag(im, mf).is_some()
}

/// Least reducible level with its canonical witness vertex, or None.
pub fn zigzag_reducible(p: &Poset, zz: &Zigzag) -> Option<(usize, usize)> {
    let v = &zz.vertices;
    let n = zz.len();
    for i in 1..n {
        let ascending = p.lt(v[i], v[i + 1]);
        for y in 0..p.len() {
            let ok = if i == 1 {
                if p.lt(v[0], v[1]) {
                    // y strictly below x1, above both x0 and x2
                    p.leq(v[0], y) && p.lt(y, v[1]) && p.leq(v[2], y)
                } else {
                    p.lt(v[1], y) && p.leq(y, v[0]) && p.leq(y, v[2])
                }
            } else if ascending {
                p.lt(v[i], y) && p.leq(y, v[i + 1]) && p.has_common_upper_bound(v[i - 1], y)
            } else {
                p.leq(v[i + 1], y) && p.lt(y, v[i]) && p.has_common_lower_bound(v[i - 1], y)
            };
            if ok {
                return Some((i, y));
            }
        }
    }
    None
}

/// All based, oriented simple closed zigzags of length <= max_len (default
/// |P|+1, beyond which none are simple). Based rotations and reflections
/// are emitted separately: reducibility is level-dependent.
pub fn enumerate_simple_closed(
    p: &Poset,
    max_len: Option<usize>,
    budgets: &Budgets,
) -> Result<Vec<Zigzag>, MonoidError> {
    let max_len = max_len.unwrap_or(p.len() + 1);
    let mut out = Vec::new();
    let mut nodes: usize = 0;
    for base in 0..p.len() {
        for orientation in [Sign::Positive, Sign::Negative] {
            let mut path = vec![base];
            dfs_closed(
                p,
                base,
                orientation,
                &mut path,
                max_len,
                &mut nodes,
                budgets.zigzag_nodes,
                &mut out,
            )?;
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn dfs_closed(
    p: &Poset,
    base: usize,
    orientation: Sign,
    path: &mut Vec<usize>,
    max_len: usize,
    nodes: &mut usize,
    node_cap: usize,
    out: &mut Vec<Zigzag>,
) -> Result<(), MonoidError> {
    let k = path.len(); // index of the vertex being chosen (step k)
    if k > max_len {
        return Ok(());
    }
    let ascending = (k % 2 == 1) == (orientation == Sign::Positive);
    let cur = *path.last().unwrap();
    for next in 0..p.len() {
        let step_ok = if ascending {
            p.lt(cur, next)
        } else {
            p.lt(next, cur)
        };
        if !step_ok {
            continue;
        }
        *nodes += 1;
        if *nodes > node_cap {
            return Err(budget_exceeded("zigzag enumeration nodes"));
        }
        if next == base {
            if k >= 2 {
                let mut vertices = path.clone();
                vertices.push(next);
                out.push(Zigzag {
                    vertices,
                    orientation,
                });
            }
            continue;
        }
        if path[1..].contains(&next) {
            continue;
        }
        path.push(next);
        dfs_closed(p, base, orientation, path, max_len, nodes, node_cap, out)?;
        path.pop();
    }
    Ok(())
}

/// Interpolation-center condition: every enumerated simple closed zigzag
/// has a vertex y with x_i <= y <= x_j for all comparable pairs of its
/// vertices.
pub fn check_suffnc2(
    p: &Poset,
    max_len: Option<usize>,
    budgets: &Budgets,
) -> Result<bool, MonoidError> {
    let zigzags = enumerate_simple_closed(p, max_len, budgets)?;
    'outer: for zz in &zigzags {
        for y in 0..p.len() {
            let mut center = true;
            'pairs: for &a in zz.vertices() {
                for &b in zz.vertices() {
                    if p.lt(a, b) && !(p.leq(a, y) && p.leq(y, b)) {
                        center = false;
                        break 'pairs;
                    }
                }
            }
            if center {
                continue 'outer;
            }
        }
        return Ok(false);
    }
    Ok(true)
}

/// Outcome of the semi-convergence certificate.
#[derive(Debug, Clone)]
pub enum SemiConv {
    SemiConvergent {
        depth_limit: Option<usize>,
        zigzags_checked: usize,
        irreducible_nonunital: usize,
    },
    NotSemiConvergent {
        witness: Multifraction<IMElement>,
        zigzag: Zigzag,
        depth: usize,
    },
    Inconclusive {
        details: String,
    },
}

/// Certifies or refutes semi-convergence of reduction for Int(P):
/// if every enumerated simple closed zigzag (of length <= depth_limit when
/// given) is reducible, reduction is semi-convergent to that depth; an
/// irreducible one whose multifraction is unital refutes it; irreducible
/// but non-unital zigzags are harmless because minimal unital
/// multifractions are simple. Unknown unitality answers are surfaced as
/// Inconclusive.
pub fn semiconv_certificate(
    im: &IntervalMonoid,
    depth_limit: Option<usize>,
    budgets: &Budgets,
) -> Result<SemiConv, MonoidError> {
    let p = im.poset();
    let zigzags = enumerate_simple_closed(p, depth_limit, budgets)?;
    let mut irreducible: Vec<&Zigzag> = Vec::new();
    for zz in &zigzags {
        if zigzag_reducible(p, zz).is_none() {
            irreducible.push(zz);
        }
    }
    let mut nonunital = 0usize;
    let mut unknowns: Vec<String> = Vec::new();
    for zz in &irreducible {
        let mf = zigzag_to_mf(im, zz);
        match homotopy::unital(im, &mf, budgets) {
            Tri::Yes => {
                return Ok(SemiConv::NotSemiConvergent {
                    depth: mf.depth(),
                    witness: mf,
                    zigzag: (*zz).clone(),
                })
            }
            Tri::No => nonunital += 1,
            Tri::Unknown(d) => unknowns.push(d),
        }
    }
    if unknowns.is_empty() {
        Ok(SemiConv::SemiConvergent {
            depth_limit,
            zigzags_checked: zigzags.len(),
            irreducible_nonunital: nonunital,
        })
    } else {
        Ok(SemiConv::Inconclusive {
            details: format!(
                "{} irreducible zigzag(s) with unknown unitality: {}",
                unknowns.len(),
                unknowns.join("; ")
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{make_standard, StdPoset};

    fn pc4() -> IntervalMonoid {
        IntervalMonoid::new(make_standard(StdPoset::PCn, Some(4)).unwrap()).unwrap()
    }

    #[test]
    fn construction_and_validation() {
        let m = pc4();
        let p = m.poset();
        let zz = Zigzag::from_labels(p, &["x1", "z2", "x3", "z4", "x1"], Sign::Positive).unwrap();
        assert!(zz.is_closed());
        assert!(zz.is_simple());

        let chain = make_standard(StdPoset::Chain, Some(3)).unwrap();
        let ok = Zigzag::from_labels(&chain, &["0", "1"], Sign::Positive).unwrap();
        assert!(!ok.is_closed());
        assert!(matches!(
            Zigzag::from_labels(&chain, &["0", "1", "2"], Sign::Positive),
            Err(ZigzagError::NotAlternating(_))
        ));
    }

    #[test]
    fn dictionary_matches_the_witness() {
        let m = pc4();
        let zz = Zigzag::from_labels(m.poset(), &["x1", "z2", "x3", "z4", "x1"], Sign::Positive)
            .unwrap();
        let mf = zigzag_to_mf(&m, &zz);
        assert_eq!(mf.format(&m), "[x1,z2]/[x3,z2]/[x3,z4]/[x1,z4]");
        let back = mf_to_zigzag(&m, &mf).unwrap();
        assert_eq!(back, zz);
    }

    #[test]
    fn backtrack_zigzag_and_negatives() {
        let m = pc4();
        let p = m.poset();
        let zz = Zigzag::from_labels(p, &["x1", "y1", "x1"], Sign::Positive).unwrap();
        let mf = zigzag_to_mf(&m, &zz);
        assert_eq!(mf.format(&m), "[x1,y1]/[x1,y1]");
        let neg = Zigzag::from_labels(p, &["y1", "x1", "y1"], Sign::Negative).unwrap();
        let mfn = zigzag_to_mf(&m, &neg);
        assert_eq!(mfn.format(&m), "/[x1,y1]/[x1,y1]");
        // backtracks are reducible at level 1 with the basepoint as witness
        let (level, witness) = zigzag_reducible(p, &zz).unwrap();
        assert_eq!(level, 1);
        assert_eq!(witness, p.index_of("x1").unwrap());
    }

    #[test]
    fn exterior_zigzag_is_irreducible() {
        let m = pc4();
        let zz = Zigzag::from_labels(m.poset(), &["x1", "z2", "x3", "z4", "x1"], Sign::Positive)
            .unwrap();
        assert_eq!(zigzag_reducible(m.poset(), &zz), None);
    }

    #[test]
    fn bowtie_enumeration_counts_based_presentations() {
        let p = make_standard(StdPoset::Bowtie, None).unwrap();
        let zigzags = enumerate_simple_closed(&p, None, &Budgets::default()).unwrap();
        // the 4-cycle in all based rotations/reflections/orientations,
        // plus one backtrack 2-zigzag per directed edge
        assert_eq!(zigzags.iter().filter(|z| z.len() == 4).count(), 8);
        assert_eq!(zigzags.iter().filter(|z| z.len() == 2).count(), 8);
        assert_eq!(zigzags.len(), 16);
    }

    #[test]
    fn chain_has_only_backtracks() {
        let p = make_standard(StdPoset::Chain, Some(2)).unwrap();
        let zigzags = enumerate_simple_closed(&p, None, &Budgets::default()).unwrap();
        assert!(!zigzags.is_empty());
        assert!(zigzags
            .iter()
            .all(|z| z.len() == 2 && z.vertices()[0] == z.vertices()[2]));
        // a longer chain admits closed 3-zigzags like (1, 2, 0, 1); short
        // closed zigzags are always reducible
        let p3 = make_standard(StdPoset::Chain, Some(3)).unwrap();
        let zz3 = enumerate_simple_closed(&p3, None, &Budgets::default()).unwrap();
        assert!(zz3.iter().any(|z| z.len() == 3));
        assert!(zz3.iter().all(|z| zigzag_reducible(&p3, z).is_some()));
    }

    #[test]
    fn bowtie_is_semiconvergent_because_cycles_are_not_unital() {
        let bow = IntervalMonoid::new(make_standard(StdPoset::Bowtie, None).unwrap()).unwrap();
        match semiconv_certificate(&bow, None, &Budgets::default()).unwrap() {
            SemiConv::SemiConvergent {
                irreducible_nonunital,
                ..
            } => assert_eq!(irreducible_nonunital, 8),
            other => panic!("expected SemiConvergent, got {other:?}"),
        }
    }

    #[test]
    fn pc6_is_semiconvergent_up_to_depth_4() {
        let m = IntervalMonoid::new(make_standard(StdPoset::PCn, Some(6)).unwrap()).unwrap();
        match semiconv_certificate(&m, Some(4), &Budgets::default()).unwrap() {
            SemiConv::SemiConvergent { depth_limit, .. } => assert_eq!(depth_limit, Some(4)),
            other => panic!("expected SemiConvergent up to 4, got {other:?}"),
        }
    }

    #[test]
    fn suffnc2_verdicts() {
        let budgets = Budgets::default();
        // the hexagon zigzag (1,2,3,4,5,6,1) of PA has no interpolation
        // center: it would have to lie above 1, 3, 5 at once
        let pa = make_standard(StdPoset::PA, None).unwrap();
        assert!(!check_suffnc2(&pa, None, &budgets).unwrap());
        assert!(check_suffnc2(&pa, Some(4), &budgets).unwrap());
        let bow = make_standard(StdPoset::Bowtie, None).unwrap();
        assert!(!check_suffnc2(&bow, None, &budgets).unwrap());
        let pc6 = make_standard(StdPoset::PCn, Some(6)).unwrap();
        assert!(check_suffnc2(&pc6, Some(4), &budgets).unwrap());
    }
}

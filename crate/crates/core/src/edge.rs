//! Surface patterns inside edge manifolds (torus x I and annulus x I).
//!
//! Curves at an end are indexed in the order they appear on the end: cyclic
//! for torus ends, linear for annulus ends. Slots are the complementary
//! pieces of the end: on a torus end slot `s` lies between curves `s` and
//! `s + 1` (mod `k`); on an annulus end slot `s` lies between curves `s - 1`
//! and `s`, with slots `0` and `k` at the two sides.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{EdgeKind, EdgeManifold};
use crate::slope::{intersection_number, transport_slope, Slope};
use crate::surfaces::BoundaryCurves;

/// Ends with more curves than this only get spanning arrangements.
pub const MAX_PARALLEL_CURVES: u64 = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternKind {
    Annuli,
    AnnuliWithTube,
    Cross,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndShape {
    Cyclic,
    Linear,
}

/// How the curves at one end are used: which ones span, and which are paired
/// by boundary-parallel annuli. A pair `(i, j)` encloses, on a cyclic end,
/// slots `i, i+1, .., j-1` (mod `k`); on a linear end, slots `i+1 ..= j`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EndArrangement {
    pub curves: u64,
    pub spanning: Vec<u64>,
    pub pairs: Vec<(u64, u64)>,
}

/// One-tube surgery along an arc near `end`, inside slot `slot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Tube {
    pub end: usize,
    pub slot: u64,
}

/// Collar of `(c x 0) ∪ (p x I) ∪ (c' x 1)`; `inner[e]` is the slot at end
/// `e` lying inside the collar.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CrossData {
    pub slopes: (Slope, Slope),
    pub inner: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgePattern {
    pub kind: PatternKind,
    pub spanning_count: u64,
    pub parallel_count: (u64, u64),
    pub ends: [EndArrangement; 2],
    /// Spanning curve `a` at end 0 meets spanning curve `(a + shift) mod sp`
    /// at end 1 (ranks among spanning curves). Linear ends use `flip` instead.
    pub shift: u64,
    pub flip: bool,
    pub tube: Option<Tube>,
    pub cross: Option<CrossData>,
    pub chi: i64,
}

impl EdgePattern {
    pub fn tubes(&self) -> usize {
        usize::from(self.tube.is_some())
    }

    /// Number of surface curves at end `e`.
    pub fn curves(&self, e: usize) -> u64 {
        self.ends[e].curves
    }
}

pub fn end_shape(kind: EdgeKind) -> EndShape {
    match kind {
        EdgeKind::Torus => EndShape::Cyclic,
        EdgeKind::Annulus => EndShape::Linear,
    }
}

/// Slots enclosed by pair `(i, j)` at an end with `k` curves.
pub fn enclosed_slots(shape: EndShape, k: u64, (i, j): (u64, u64)) -> Vec<u64> {
    match shape {
        EndShape::Cyclic => {
            let len = (j + k - i) % k;
            (0..len).map(|d| (i + d) % k).collect()
        }
        EndShape::Linear => (i + 1..=j).collect(),
    }
}

/// Number of slots at an end with `k` curves.
pub fn slot_count(shape: EndShape, k: u64) -> u64 {
    match shape {
        EndShape::Cyclic => k.max(1),
        EndShape::Linear => k + 1,
    }
}

/// The curves bounding slot `s`, in increasing position. One curve for
/// side slots of linear ends and for cyclic ends with a single curve.
pub fn slot_curves(shape: EndShape, k: u64, s: u64) -> Vec<u64> {
    match shape {
        EndShape::Cyclic if k == 0 => vec![],
        EndShape::Cyclic if k == 1 => vec![0],
        EndShape::Cyclic => vec![s, (s + 1) % k],
        EndShape::Linear => {
            let mut v = Vec::new();
            if s >= 1 {
                v.push(s - 1);
            }
            if s < k {
                v.push(s);
            }
            v
        }
    }
}

/// Balanced bracket matchings of `0..len` (as pairs), all nested or disjoint.
fn linear_matchings(lo: u64, len: u64) -> Vec<Vec<(u64, u64)>> {
    if len == 0 {
        return vec![vec![]];
    }
    if len % 2 == 1 {
        return vec![];
    }
    let mut out = Vec::new();
    // lo pairs with lo + 2t + 1
    for t in 0..len / 2 {
        let close = lo + 2 * t + 1;
        for inner in linear_matchings(lo + 1, 2 * t) {
            for rest in linear_matchings(close + 1, len - 2 * t - 2) {
                let mut m = vec![(lo, close)];
                m.extend(inner.iter().copied());
                m.extend(rest.iter().copied());
                out.push(m);
            }
        }
    }
    out
}

fn subsets(k: u64, size: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << k) {
        if mask.count_ones() as u64 == size {
            out.push((0..k).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

/// All arrangements of `k` curves with exactly `sp` spanning ones in which no
/// parallel pair encloses a spanning curve.
pub fn arrangements(shape: EndShape, k: u64, sp: u64) -> Vec<EndArrangement> {
    if sp > k || (k - sp) % 2 == 1 {
        return vec![];
    }
    if k - sp > 0 && k > MAX_PARALLEL_CURVES {
        return vec![];
    }
    let mut out = Vec::new();
    for spanning in subsets(k, sp) {
        match shape {
            EndShape::Linear => {
                // gaps between consecutive spanning curves are matched linearly
                let mut bounds = vec![0];
                bounds.extend(spanning.iter().flat_map(|&s| [s, s + 1]));
                bounds.push(k);
                let mut acc: Vec<Vec<(u64, u64)>> = vec![vec![]];
                for w in bounds.chunks(2) {
                    let (a, b) = (w[0], w[1]);
                    let ms = linear_matchings(a, b - a);
                    acc = acc
                        .iter()
                        .flat_map(|p| {
                            ms.iter().map(move |m| {
                                let mut q = p.clone();
                                q.extend(m.iter().copied());
                                q
                            })
                        })
                        .collect();
                }
                for mut pairs in acc {
                    pairs.sort();
                    out.push(EndArrangement {
                        curves: k,
                        spanning: spanning.clone(),
                        pairs,
                    });
                }
            }
            EndShape::Cyclic if sp > 0 => {
                // rotate so the first spanning curve is at 0, then match gaps
                let first = spanning[0];
                let rel: Vec<u64> = spanning.iter().map(|s| s - first).collect();
                let mut bounds = vec![];
                for (t, &s) in rel.iter().enumerate() {
                    let next = rel.get(t + 1).copied().unwrap_or(k);
                    bounds.push((s + 1, next));
                }
                let mut acc: Vec<Vec<(u64, u64)>> = vec![vec![]];
                for (a, b) in bounds {
                    let ms = linear_matchings(a, b - a);
                    acc = acc
                        .iter()
                        .flat_map(|p| {
                            ms.iter().map(move |m| {
                                let mut q = p.clone();
                                q.extend(m.iter().copied());
                                q
                            })
                        })
                        .collect();
                }
                for pairs in acc {
                    let mut pairs: Vec<(u64, u64)> = pairs
                        .iter()
                        .map(|&(i, j)| ((i + first) % k, (j + first) % k))
                        .collect();
                    pairs.sort();
                    out.push(EndArrangement {
                        curves: k,
                        spanning: spanning.clone(),
                        pairs,
                    });
                }
            }
            EndShape::Cyclic => {
                // no spanning curves: every rotation of every linear matching
                let mut seen = std::collections::BTreeSet::new();
                for rot in 0..k.max(1) {
                    for m in linear_matchings(0, k) {
                        let mut pairs: Vec<(u64, u64)> = m
                            .iter()
                            .map(|&(i, j)| ((i + rot) % k, (j + rot) % k))
                            .collect();
                        pairs.sort();
                        if seen.insert(pairs.clone()) {
                            out.push(EndArrangement {
                                curves: k,
                                spanning: vec![],
                                pairs,
                            });
                        }
                    }
                }
            }
        }
    }
    out
}

fn count(d: Option<BoundaryCurves>) -> u64 {
    d.map_or(0, |b| b.count)
}

/// Every pattern in `e` meeting the demands `left` (end 0, in the first
/// vertex's coordinates) and `right` (end 1). `None` means no curves.
pub fn edge_patterns(
    e: &EdgeManifold,
    left: Option<BoundaryCurves>,
    right: Option<BoundaryCurves>,
    allow_tube: bool,
) -> Result<Vec<EdgePattern>> {
    let t = e.transport()?;
    let shape = end_shape(e.kind);
    let (k0, k1) = (count(left), count(right));
    let slopes_match = match (left, right) {
        (Some(l), Some(r)) => transport_slope(&t, l.slope) == r.slope,
        _ => false,
    };
    let mut out = Vec::new();
    for sp in 0..=k0.min(k1) {
        if sp > 0 && !slopes_match {
            break;
        }
        let a0 = arrangements(shape, k0, sp);
        let a1 = arrangements(shape, k1, sp);
        let aligns: Vec<(u64, bool)> = match shape {
            EndShape::Cyclic => (0..sp.max(1)).map(|s| (s, false)).collect(),
            EndShape::Linear if sp >= 2 => vec![(0, false), (0, true)],
            EndShape::Linear => vec![(0, false)],
        };
        for x in &a0 {
            for y in &a1 {
                for &(shift, flip) in &aligns {
                    let base = EdgePattern {
                        kind: PatternKind::Annuli,
                        spanning_count: sp,
                        parallel_count: ((k0 - sp) / 2, (k1 - sp) / 2),
                        ends: [x.clone(), y.clone()],
                        shift,
                        flip,
                        tube: None,
                        cross: None,
                        chi: 0,
                    };
                    if allow_tube {
                        for (end, k) in [(0, k0), (1, k1)] {
                            if k == 0 {
                                continue;
                            }
                            for slot in 0..slot_count(shape, k) {
                                out.push(EdgePattern {
                                    kind: PatternKind::AnnuliWithTube,
                                    tube: Some(Tube { end, slot }),
                                    chi: -2,
                                    ..base.clone()
                                });
                            }
                        }
                    }
                    out.push(base);
                }
            }
        }
    }
    if e.kind == EdgeKind::Torus && k0 == 2 && k1 == 2 {
        let (l, r) = (left.unwrap().slope, right.unwrap().slope);
        if intersection_number(transport_slope(&t, l), r) == 1 {
            for i0 in 0..2 {
                for i1 in 0..2 {
                    out.push(EdgePattern {
                        kind: PatternKind::Cross,
                        spanning_count: 0,
                        parallel_count: (0, 0),
                        ends: [
                            EndArrangement {
                                curves: 2,
                                ..Default::default()
                            },
                            EndArrangement {
                                curves: 2,
                                ..Default::default()
                            },
                        ],
                        shift: 0,
                        flip: false,
                        tube: None,
                        cross: Some(CrossData {
                            slopes: (l, r),
                            inner: (i0, i1),
                        }),
                        chi: -2,
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slope::GluingMap;

    fn fibers(count: u64) -> Option<BoundaryCurves> {
        Some(BoundaryCurves {
            slope: Slope::FIBER,
            count,
        })
    }

    fn kinds(ps: &[EdgePattern]) -> Vec<PatternKind> {
        let mut k: Vec<_> = ps.iter().map(|p| p.kind).collect();
        k.dedup();
        k
    }

    #[test]
    fn identity_two_fibers() {
        let e = EdgeManifold::torus(("a", 1), ("b", 1), GluingMap::IDENTITY);
        let ps = edge_patterns(&e, fibers(2), fibers(2), true).unwrap();
        let plain: Vec<_> = ps
            .iter()
            .filter(|p| p.kind == PatternKind::Annuli)
            .collect();
        // two spanning with two alignments, plus parallel pairs on each end
        assert!(plain.iter().any(|p| p.spanning_count == 2));
        assert!(plain
            .iter()
            .any(|p| p.spanning_count == 0 && p.parallel_count == (1, 1)));
        assert_eq!(plain.iter().filter(|p| p.spanning_count == 2).count(), 2);
        // (0,1) and (1,0) pairings on each end
        assert_eq!(plain.iter().filter(|p| p.spanning_count == 0).count(), 4);
        assert!(ps.iter().any(|p| p.kind == PatternKind::AnnuliWithTube));
        assert!(!ps.iter().any(|p| p.kind == PatternKind::Cross));
        for p in &ps {
            assert_eq!((p.curves(0), p.curves(1)), (2, 2));
        }
    }

    #[test]
    fn swap_gluing_offers_cross_only() {
        let e = EdgeManifold::torus(("a", 1), ("b", 1), GluingMap::SWAP);
        let ps = edge_patterns(&e, fibers(2), fibers(2), false).unwrap();
        assert!(ps.iter().any(|p| p.kind == PatternKind::Cross));
        assert!(ps.iter().all(|p| p.spanning_count == 0));
        // a single curve per side cannot bound a collar
        let ps = edge_patterns(&e, fibers(1), fibers(1), true).unwrap();
        assert!(ps.is_empty());
    }

    #[test]
    fn annulus_edge_single_curve() {
        let e = EdgeManifold::annulus(("a", 1), ("b", 1));
        let ps = edge_patterns(&e, fibers(1), fibers(1), true).unwrap();
        assert_eq!(
            kinds(&ps),
            vec![PatternKind::Annuli, PatternKind::AnnuliWithTube]
        );
        assert_eq!(
            ps.iter().filter(|p| p.kind == PatternKind::Annuli).count(),
            1
        );
        assert_eq!(ps[0].spanning_count, 1);
        let ps = edge_patterns(&e, fibers(1), fibers(1), false).unwrap();
        assert_eq!(ps.len(), 1);
    }

    #[test]
    fn chi_by_kind() {
        let e = EdgeManifold::torus(("a", 1), ("b", 1), GluingMap::IDENTITY);
        for p in edge_patterns(&e, fibers(4), fibers(2), true).unwrap() {
            let want = match p.kind {
                PatternKind::Annuli => 0,
                _ => -2,
            };
            assert_eq!(p.chi, want);
        }
    }

    #[test]
    fn cyclic_arrangements_never_enclose_spanning() {
        for k in 0..=6 {
            for sp in 0..=k {
                for a in arrangements(EndShape::Cyclic, k, sp) {
                    assert_eq!(a.spanning.len() as u64 + 2 * a.pairs.len() as u64, k);
                    for &p in &a.pairs {
                        let inside = enclosed_slots(EndShape::Cyclic, k, p);
                        for s in &a.spanning {
                            // slot s-1 and s both inside would put curve s inside
                            let before = (s + k - 1) % k;
                            assert!(!(inside.contains(&before) && inside.contains(s)));
                        }
                    }
                }
            }
        }
        // four curves, none spanning: 2 non-crossing matchings x 2 sides each,
        // counted once per distinct pair set
        assert_eq!(arrangements(EndShape::Cyclic, 4, 0).len(), 6);
    }

    #[test]
    fn mismatched_slopes_leave_only_parallel() {
        let e = EdgeManifold::torus(("a", 1), ("b", 1), GluingMap::IDENTITY);
        let s = Some(BoundaryCurves {
            slope: Slope::SECTION,
            count: 2,
        });
        let ps = edge_patterns(&e, fibers(2), s, false).unwrap();
        assert!(ps.iter().all(|p| p.spanning_count == 0));
        assert!(!ps.is_empty());
    }
}

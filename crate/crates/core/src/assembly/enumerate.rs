//! Exhaustive enumeration of standard candidates within bounds.

use std::collections::{BTreeMap, BTreeSet};

use crate::edge::{edge_patterns, EdgePattern, EndShape};
use crate::error::{Error, Result};
use crate::model::{validate, EdgeKind, GraphManifoldSpec, VertexKind, VertexManifold};
use crate::splitting::all_vertical_splittings;
use crate::surfaces::{
    drilled, horizontal_admissible_degrees, horizontal_sheets, BoundaryCurves, FiberChoice,
};

use super::glue::{
    assemble_checked, attached_boundaries, demand, fibered_block_ok, Complex, FaceKind,
};
use super::local::build_vertex;
use super::{BandLayout, Bounds, CandidateSplitting, Cut, Side, Unit, VertexChoice};

/// A vertex option with the demand it makes at each edge-attached boundary.
struct Option_ {
    choice: VertexChoice,
    demands: BTreeMap<u32, (EndShape, Option<BoundaryCurves>)>,
}

fn subsets<T: Clone + Ord>(items: &[T]) -> Vec<BTreeSet<T>> {
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

fn permutations(items: &[u32]) -> Vec<Vec<u32>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Cyclic orders of `set`, starting from its smallest element.
fn cyclic_orders(set: &BTreeSet<u32>) -> Vec<Vec<u32>> {
    let items: Vec<u32> = set.iter().copied().collect();
    match items.split_first() {
        None => vec![vec![]],
        Some((first, rest)) => permutations(rest)
            .into_iter()
            .map(|mut p| {
                p.insert(0, *first);
                p
            })
            .collect(),
    }
}

fn band_layouts(v: &VertexManifold, attached: &BTreeSet<u32>) -> Vec<BandLayout> {
    let cones: Vec<u32> = (1..=v.exceptional.len() as u32).collect();
    let ports: Vec<u32> = attached.iter().copied().collect();
    let mut out = vec![BandLayout::default()];
    let mut frames: Vec<(Vec<u32>, bool)> = vec![(vec![], true)];
    for s in subsets(&ports).into_iter().filter(|s| !s.is_empty()) {
        for order in cyclic_orders(&s) {
            frames.push((order, false));
        }
    }
    for (visits, torus) in frames {
        let unvisited: Vec<u32> = v.boundaries().filter(|b| !visits.contains(b)).collect();
        for x_circles in subsets(&unvisited) {
            for x_cones in subsets(&cones) {
                for genus_in_x in 0..=v.base_genus {
                    let base = BandLayout {
                        visits: visits.clone(),
                        torus,
                        x_cones: x_cones.clone(),
                        x_circles: x_circles.clone(),
                        genus_in_x,
                        cut: None,
                    };
                    let y_cones: Vec<u32> = cones
                        .iter()
                        .filter(|c| !x_cones.contains(c))
                        .copied()
                        .collect();
                    let y_circles: Vec<u32> = unvisited
                        .iter()
                        .filter(|b| !x_circles.contains(b))
                        .copied()
                        .collect();
                    for (face, cs, bs) in [
                        (
                            Side::X,
                            x_cones.iter().copied().collect::<Vec<_>>(),
                            x_circles.iter().copied().collect::<Vec<_>>(),
                        ),
                        (Side::Y, y_cones, y_circles),
                    ] {
                        let mut outers = vec![None];
                        outers.extend(cs.iter().map(|&c| Some(Unit::Cone(c))));
                        outers.extend(bs.iter().map(|&b| Some(Unit::Circle(b))));
                        for outer in outers {
                            out.push(BandLayout {
                                cut: Some(Cut { face, outer }),
                                ..base.clone()
                            });
                        }
                    }
                    out.push(base);
                }
            }
        }
    }
    out
}

/// Framing vectors of length `len` in the box `|c| <= bound` summing to `sum`.
fn framings(len: usize, sum: i64, bound: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return if sum == 0 { vec![vec![]] } else { vec![] };
    }
    if len == 1 {
        return if sum.abs() <= bound {
            vec![vec![sum]]
        } else {
            vec![]
        };
    }
    let mut out = Vec::new();
    for c in -bound..=bound {
        for mut rest in framings(len - 1, sum - c, bound) {
            rest.insert(0, c);
            out.push(rest);
        }
    }
    out
}

fn integral_sum(v: &VertexManifold, n: u64) -> Option<i64> {
    let need = crate::surfaces::required_framing_sum(v, n);
    need.is_integer().then(|| need.to_integer())
}

fn horizontal_choices(v: &VertexManifold, b: &Bounds) -> Vec<VertexChoice> {
    let mut out = Vec::new();
    if !v.exterior.is_empty() || v.boundary_count == 0 || v.kind != VertexKind::Seifert {
        return out;
    }
    for n in horizontal_admissible_degrees(v, b.n_max).unwrap_or_default() {
        let Some(sum) = integral_sum(v, n) else {
            continue;
        };
        for coeffs in framings(v.boundary_count as usize, sum, b.coeff_max) {
            let d = horizontal_sheets(v, n, &coeffs);
            if d.is_multiple_of(2) {
                out.push(VertexChoice::Horizontal { degree: n, coeffs });
            }
        }
    }
    let mut fibers: Vec<FiberChoice> = (1..=v.exceptional.len() as u32)
        .map(FiberChoice::Exceptional)
        .collect();
    fibers.push(FiberChoice::Regular);
    for fiber in fibers {
        let Ok(dv) = drilled(v, fiber) else { continue };
        for n in horizontal_admissible_degrees(&dv, b.n_max).unwrap_or_default() {
            let Some(sum) = integral_sum(&dv, n) else {
                continue;
            };
            for coeffs in framings(dv.boundary_count as usize, sum, b.coeff_max) {
                if horizontal_sheets(&dv, n, &coeffs) == 2 {
                    out.push(VertexChoice::Pseudohorizontal {
                        fiber,
                        degree: n,
                        coeffs,
                    });
                }
            }
        }
    }
    out
}

/// Options for one vertex that survive local checks: they build, present an
/// even number of curves on every torus boundary, and every face that no
/// edge reaches is already a valid block.
fn vertex_options(v: &VertexManifold, attached: &BTreeSet<u32>, b: &Bounds) -> Vec<Option_> {
    let mut choices: Vec<VertexChoice> = match v.kind {
        VertexKind::Seifert => band_layouts(v, attached)
            .into_iter()
            .map(VertexChoice::Band)
            .collect(),
        VertexKind::Product => vec![
            VertexChoice::ProductHorizontal { copies: 1 },
            VertexChoice::ProductHorizontal { copies: 2 },
        ],
    };
    choices.extend(horizontal_choices(v, b));
    let mut out = Vec::new();
    for choice in choices {
        let mut cx = Complex::new();
        let Ok(local) = build_vertex(&mut cx, "v", v, attached, &choice) else {
            continue;
        };
        if let VertexChoice::Band(BandLayout { cut: Some(_), .. }) = &choice {
            if (-local.piece.chi / 2) as u64 > b.max_arcs {
                continue;
            }
        }
        if local
            .ports
            .values()
            .any(|p| p.shape == EndShape::Cyclic && p.curves.len() % 2 == 1)
        {
            continue;
        }
        let reached: BTreeSet<usize> = local
            .ports
            .values()
            .flat_map(|p| p.slots.iter().copied())
            .collect();
        let lone_bad = cx.faces.iter().enumerate().any(|(i, f)| {
            !reached.contains(&i)
                && f.kind == FaceKind::Fibered
                && !fibered_block_ok(f.chi, f.cones, f.exterior, 0)
        });
        if lone_bad {
            continue;
        }
        let demands = local
            .ports
            .iter()
            .map(|(&b, p)| (b, (p.shape, demand(p))))
            .collect();
        out.push(Option_ { choice, demands });
    }
    out
}

type PatternKey = (String, Option<BoundaryCurves>, Option<BoundaryCurves>);

struct Search<'a> {
    spec: &'a GraphManifoldSpec,
    bounds: &'a Bounds,
    ids: Vec<&'a String>,
    options: Vec<Vec<Option_>>,
    cache: BTreeMap<PatternKey, Vec<EdgePattern>>,
    picked: Vec<usize>,
    out: Vec<CandidateSplitting>,
}

impl<'a> Search<'a> {
    fn demand(&self, vid: &str, b: u32) -> Option<(EndShape, Option<BoundaryCurves>)> {
        let i = self.ids.iter().position(|id| id.as_str() == vid)?;
        let o = self.picked.get(i)?;
        self.options[i][*o].demands.get(&b).copied()
    }

    /// Patterns of edge `eid` under the current partial assignment, or
    /// `None` if an endpoint is still open.
    fn patterns(&mut self, eid: &str) -> Option<Vec<EdgePattern>> {
        let e = &self.spec.edges[eid];
        let (s0, l) = self.demand(&e.endpoints[0].0, e.endpoints[0].1)?;
        let (s1, r) = self.demand(&e.endpoints[1].0, e.endpoints[1].1)?;
        let want = match e.kind {
            EdgeKind::Torus => EndShape::Cyclic,
            EdgeKind::Annulus => EndShape::Linear,
        };
        if s0 != want || s1 != want {
            return Some(vec![]);
        }
        let key = (eid.to_string(), l, r);
        if let Some(p) = self.cache.get(&key) {
            return Some(p.clone());
        }
        let p = edge_patterns(e, l, r, self.bounds.allow_tubes).unwrap_or_default();
        self.cache.insert(key, p.clone());
        Some(p)
    }

    fn run(&mut self) {
        if self.picked.len() == self.ids.len() {
            self.combine();
            return;
        }
        let i = self.picked.len();
        let vid = self.ids[i].clone();
        let touching: Vec<String> = self
            .spec
            .edges
            .iter()
            .filter(|(_, e)| e.endpoints.iter().any(|p| p.0 == vid))
            .map(|(id, _)| id.clone())
            .collect();
        for o in 0..self.options[i].len() {
            self.picked.push(o);
            let feasible = touching
                .iter()
                .all(|eid| self.patterns(eid).is_none_or(|p| !p.is_empty()));
            if feasible {
                self.run();
            }
            self.picked.pop();
        }
    }

    fn combine(&mut self) {
        let vertices: BTreeMap<String, VertexChoice> = self
            .ids
            .iter()
            .enumerate()
            .map(|(i, id)| {
                (
                    (*id).clone(),
                    self.options[i][self.picked[i]].choice.clone(),
                )
            })
            .collect();
        let eids: Vec<String> = self.spec.edges.keys().cloned().collect();
        let lists: Vec<Vec<EdgePattern>> = eids
            .iter()
            .map(|eid| self.patterns(eid).expect("all vertices picked"))
            .collect();
        let mut idx = vec![0usize; lists.len()];
        loop {
            let edges: BTreeMap<String, EdgePattern> = eids
                .iter()
                .zip(&idx)
                .zip(&lists)
                .map(|((id, &j), l)| (id.clone(), l[j].clone()))
                .collect();
            if let Ok(c) =
                assemble_checked(self.spec, &vertices, &edges, self.bounds.cross_in_w, false)
            {
                self.out.push(c);
            }
            // odometer over edge patterns
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return;
                }
                idx[k] += 1;
                if idx[k] < lists[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

fn lone_candidates(spec: &GraphManifoldSpec, bounds: &Bounds) -> Vec<CandidateSplitting> {
    let (id, v) = spec.vertices.iter().next().expect("one vertex");
    let mut choices = Vec::new();
    match v.kind {
        VertexKind::Seifert if v.boundary_count > 0 => {
            for s in all_vertical_splittings(v).unwrap_or_default() {
                if s.spec.spine_arcs <= bounds.max_arcs {
                    choices.push(VertexChoice::VerticalSplitting {
                        fibers_in_v: s.spec.fibers_in_v,
                        boundaries_in_v: s.spec.boundaries_in_v,
                    });
                }
            }
        }
        VertexKind::Seifert => {
            if v.base_genus >= 1
                && v.exceptional.is_empty()
                && 2 * v.base_genus as u64 <= bounds.max_arcs
            {
                choices.push(VertexChoice::ProductTimesCircle);
            }
        }
        VertexKind::Product => {
            choices.push(VertexChoice::ProductHorizontal { copies: 1 });
            choices.push(VertexChoice::ProductHorizontal { copies: 2 });
        }
    }
    let edges = BTreeMap::new();
    choices
        .into_iter()
        .filter_map(|c| {
            let vertices = [(id.clone(), c)].into();
            assemble_checked(spec, &vertices, &edges, bounds.cross_in_w, false).ok()
        })
        .collect()
}

/// Every candidate assembling within `bounds`, sorted by genus, then fewer
/// tubes, then choice encoding.
pub fn enumerate_standard(
    spec: &GraphManifoldSpec,
    bounds: &Bounds,
) -> Result<Vec<CandidateSplitting>> {
    let report = validate(spec);
    if !report.is_valid() {
        let codes: Vec<&str> = report.violations.iter().map(|v| v.code.as_str()).collect();
        return Err(Error::InvalidSpec(codes.join(", ")));
    }
    let mut out = if spec.edges.is_empty() && spec.vertices.len() == 1 {
        lone_candidates(spec, bounds)
    } else {
        let attached = attached_boundaries(spec);
        let ids: Vec<&String> = spec.vertices.keys().collect();
        let options = ids
            .iter()
            .map(|id| vertex_options(&spec.vertices[*id], &attached[*id], bounds))
            .collect();
        let mut search = Search {
            spec,
            bounds,
            ids,
            options,
            cache: BTreeMap::new(),
            picked: Vec::new(),
            out: Vec::new(),
        };
        search.run();
        search.out
    };
    out.sort_by(|a, b| a.rank_key().cmp(&b.rank_key()));
    out.dedup_by(|a, b| a.encoding == b.encoding);
    Ok(out)
}

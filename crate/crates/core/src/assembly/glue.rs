//! The abstract complex of a candidate: surface components, faces, glues,
//! walls and 1-handles, and the global checks run on it.

use std::collections::{BTreeMap, BTreeSet};

use crate::edge::{
    edge_patterns, enclosed_slots, end_shape, slot_count, slot_curves, EdgePattern, EndShape,
    PatternKind,
};
use crate::error::{Error, Result};
use crate::model::{validate, EdgeKind, EdgeManifold, GraphManifoldSpec, VertexKind};
use crate::slope::{transport_slope, Slope};
use crate::splitting::{
    product_times_circle_splitting, product_times_circle_surface, vertical_splitting,
};
use crate::surfaces::BoundaryCurves;
use crate::unionfind::UnionFind;

use super::local::{build_vertex, LocalVertex, Port};
use super::{encode_choices, CandidateSplitting, Color, PortSlots, VertexChoice, VertexReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum FaceKind {
    /// Seifert fibered region of a vertex, described by its base.
    Fibered,
    /// `F x I` region bounded by horizontal sheets.
    Product,
    /// Region of an edge manifold; takes the kind of its block.
    Edge,
}

#[derive(Clone, Debug)]
pub(crate) struct Face {
    pub label: String,
    pub kind: FaceKind,
    /// Euler characteristic of the base (fibered and edge faces).
    pub chi: i64,
    pub cones: u32,
    pub exterior: u32,
    pub drilled: u32,
    /// Edge faces: which ends they are glued at.
    pub ends: [bool; 2],
    /// Edge faces: whether the edge carries the fiber at one end to the
    /// fiber at the other.
    pub fiber_preserving: bool,
    /// Cross pattern faces: `Some(true)` for the collar side.
    pub cross_inner: Option<bool>,
}

#[derive(Clone, Copy, Debug)]
struct Glue {
    a: usize,
    b: usize,
    /// Glued along an annulus (an arc of the base) rather than a whole torus.
    arc: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Complex {
    pub faces: Vec<Face>,
    comp_chi: Vec<i64>,
    comps: UnionFind,
    glues: Vec<Glue>,
    walls: Vec<(usize, usize)>,
    handles: Vec<(usize, usize)>,
    pub active: usize,
    pub tubes: usize,
}

pub(crate) struct Outcome {
    pub chi: i64,
    pub colors: Vec<Color>,
}

impl Complex {
    pub fn new() -> Self {
        Self {
            faces: Vec::new(),
            comp_chi: Vec::new(),
            comps: UnionFind::new(0),
            glues: Vec::new(),
            walls: Vec::new(),
            handles: Vec::new(),
            active: 0,
            tubes: 0,
        }
    }

    pub fn face(&mut self, label: String, kind: FaceKind, chi: i64) -> usize {
        self.faces.push(Face {
            label,
            kind,
            chi,
            cones: 0,
            exterior: 0,
            drilled: 0,
            ends: [false; 2],
            fiber_preserving: true,
            cross_inner: None,
        });
        self.faces.len() - 1
    }

    pub fn comp(&mut self, chi: i64) -> usize {
        self.comp_chi.push(chi);
        self.comps.add()
    }

    fn merge(&mut self, a: usize, b: usize) {
        self.comps.union(a, b);
    }

    fn glue(&mut self, a: usize, b: usize, arc: bool) {
        self.glues.push(Glue { a, b, arc });
    }

    pub fn wall(&mut self, a: usize, b: usize) {
        self.walls.push((a, b));
    }

    pub fn handle(&mut self, a: usize, b: usize) {
        self.handles.push((a, b));
    }

    /// Number of surface components.
    pub fn surface_components(&mut self) -> usize {
        self.comps.classes()
    }

    pub fn chi(&self) -> i64 {
        self.comp_chi.iter().sum()
    }

    /// Run every global check and 2-colour the faces.
    pub fn finish(&mut self, cross_in_w: bool) -> Result<Outcome> {
        let n = self.surface_components();
        if n != 1 {
            return Err(Error::DisconnectedSurface(n));
        }
        let chi = self.chi();
        if chi % 2 != 0 {
            return Err(Error::OddChi(chi));
        }
        if self.active > 1 {
            return Err(Error::ActiveCount(self.active));
        }
        let colors = self.two_color(cross_in_w)?;
        self.check_blocks()?;
        Ok(Outcome { chi, colors })
    }

    fn two_color(&self, cross_in_w: bool) -> Result<Vec<Color>> {
        let n = self.faces.len();
        // node 2f is "f has colour 0", 2f+1 "f has colour 1"
        let mut par = UnionFind::new(2 * n);
        let same = |uf: &mut UnionFind, a: usize, b: usize| {
            uf.union(2 * a, 2 * b);
            uf.union(2 * a + 1, 2 * b + 1);
        };
        for g in &self.glues {
            same(&mut par, g.a, g.b);
        }
        for &(a, b) in &self.handles {
            same(&mut par, a, b);
        }
        for &(a, b) in &self.walls {
            par.union(2 * a, 2 * b + 1);
            par.union(2 * a + 1, 2 * b);
        }
        for f in 0..n {
            if par.find(2 * f) == par.find(2 * f + 1) {
                return Err(Error::NotSeparating(format!(
                    "region {} lies on both sides of the surface",
                    self.faces[f].label
                )));
            }
        }
        let root = par.find(0);
        let mut bit = Vec::with_capacity(n);
        for f in 0..n {
            if par.find(2 * f) == root {
                bit.push(false);
            } else if par.find(2 * f + 1) == root {
                bit.push(true);
            } else {
                return Err(Error::NotSeparating(
                    "complementary regions are not all related".into(),
                ));
            }
        }

        // each side must be connected through glues and handles
        let mut side = UnionFind::new(n);
        for g in &self.glues {
            side.union(g.a, g.b);
        }
        for &(a, b) in &self.handles {
            side.union(a, b);
        }
        for b in [false, true] {
            let roots: BTreeSet<usize> = (0..n)
                .filter(|&f| bit[f] == b)
                .map(|f| side.find(f))
                .collect();
            if roots.len() != 1 {
                return Err(Error::NotSeparating(format!(
                    "one side has {} pieces",
                    roots.len()
                )));
            }
        }

        let ext: BTreeSet<bool> = (0..n)
            .filter(|&f| self.faces[f].exterior > 0)
            .map(|f| bit[f])
            .collect();
        if ext.len() > 1 {
            return Err(Error::NotSeparating(
                "exterior boundary lies on both sides".into(),
            ));
        }
        let v_bit = if let Some(&b) = ext.iter().next() {
            b
        } else if let Some(f) = (0..n).find(|&f| self.faces[f].cross_inner == Some(true)) {
            bit[f] ^ cross_in_w
        } else {
            bit[0]
        };
        Ok(bit
            .iter()
            .map(|&b| if b == v_bit { Color::V } else { Color::W })
            .collect())
    }

    /// Every block (faces joined by glues, before 1-handles) must be a
    /// solid torus, a collar of exterior boundary, a drilled collar, or a
    /// product region with edge collars attached.
    fn check_blocks(&self) -> Result<()> {
        let n = self.faces.len();
        let mut uf = UnionFind::new(n);
        let mut glue_count = vec![0u32; n];
        for g in &self.glues {
            uf.union(g.a, g.b);
            glue_count[g.a] += 1;
            glue_count[g.b] += 1;
        }
        let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for f in 0..n {
            blocks.entry(uf.find(f)).or_default().push(f);
        }
        let mut arcs: BTreeMap<usize, i64> = BTreeMap::new();
        for g in self.glues.iter().filter(|g| g.arc) {
            *arcs.entry(uf.find(g.a)).or_default() += 1;
        }
        for (root, faces) in &blocks {
            let label = &self.faces[faces[0]].label;
            let fibered = faces
                .iter()
                .any(|&f| self.faces[f].kind == FaceKind::Fibered);
            let product = faces
                .iter()
                .any(|&f| self.faces[f].kind == FaceKind::Product);
            if fibered && product {
                return Err(Error::InvalidRegion(format!(
                    "region at {label} mixes fibered and product pieces"
                )));
            }
            if product {
                if let Some(&f) = faces
                    .iter()
                    .find(|&&f| self.faces[f].kind == FaceKind::Edge && glue_count[f] > 1)
                {
                    return Err(Error::InvalidRegion(format!(
                        "product region at {label} continues through {}",
                        self.faces[f].label
                    )));
                }
                continue;
            }
            if let Some(&f) = faces
                .iter()
                .find(|&&f| self.faces[f].ends == [true, true] && !self.faces[f].fiber_preserving)
            {
                return Err(Error::InvalidRegion(format!(
                    "fibered region at {label} crosses {} with mismatched fibers",
                    self.faces[f].label
                )));
            }
            let chi: i64 = faces.iter().map(|&f| self.faces[f].chi).sum::<i64>()
                - arcs.get(root).copied().unwrap_or(0);
            let cones: u32 = faces.iter().map(|&f| self.faces[f].cones).sum();
            let ext: u32 = faces.iter().map(|&f| self.faces[f].exterior).sum();
            let drilled: u32 = faces.iter().map(|&f| self.faces[f].drilled).sum();
            if !fibered_block_ok(chi, cones, ext, drilled) {
                return Err(Error::InvalidRegion(format!(
                    "region at {label} (base chi {chi}, {cones} cone points, {ext} exterior) is not a compression body"
                )));
            }
        }
        Ok(())
    }
}

/// Fibered blocks that are compression bodies: a solid torus (disk base,
/// at most one cone point), a collar of one exterior torus, or a collar
/// between two surface tori drilled by a tube.
pub(crate) fn fibered_block_ok(chi: i64, cones: u32, ext: u32, drilled: u32) -> bool {
    match chi {
        1 => ext == 0 && cones <= 1,
        0 => cones == 0 && (ext == 1 || (ext == 0 && drilled > 0)),
        _ => false,
    }
}

/// The demand a port makes on its edge end.
pub(crate) fn demand(p: &Port) -> Option<BoundaryCurves> {
    (!p.curves.is_empty()).then_some(BoundaryCurves {
        slope: p.slope,
        count: p.curves.len() as u64,
    })
}

/// Face at slot `s` of end `e`, given the edge's main faces.
struct EdgeFaces {
    shape: EndShape,
    main: Vec<usize>,
    bigons: [Vec<((u64, u64), usize)>; 2],
}

impl EdgeFaces {
    fn slot_face(&self, p: &EdgePattern, e: usize, s: u64) -> usize {
        let end = &p.ends[e];
        let k = end.curves;
        let inner = self.bigons[e]
            .iter()
            .map(|&(pair, f)| (enclosed_slots(self.shape, k, pair), f))
            .filter(|(slots, _)| slots.contains(&s))
            .min_by_key(|(slots, _)| slots.len());
        if let Some((_, f)) = inner {
            return f;
        }
        let sp = p.spanning_count;
        match self.shape {
            EndShape::Cyclic if sp == 0 => self.main[0],
            EndShape::Cyclic => {
                let rank = end
                    .spanning
                    .iter()
                    .rposition(|&q| q <= s)
                    .unwrap_or(sp as usize - 1) as u64;
                let shift = if e == 1 { p.shift } else { 0 };
                self.main[((rank + sp - shift % sp) % sp) as usize]
            }
            EndShape::Linear => {
                let before = end.spanning.iter().filter(|&&q| q < s).count() as u64;
                let idx = if e == 1 && p.flip {
                    sp - before
                } else {
                    before
                };
                self.main[idx as usize]
            }
        }
    }
}

fn build_edge(
    cx: &mut Complex,
    eid: &str,
    e: &EdgeManifold,
    p: &EdgePattern,
    ports: [&Port; 2],
    verify: bool,
) -> Result<()> {
    let shape = end_shape(e.kind);
    for port in ports {
        if port.shape != shape {
            return Err(Error::InvalidChoice(format!(
                "edge {eid}: {} edges cannot attach to this boundary",
                match e.kind {
                    EdgeKind::Torus => "torus",
                    EdgeKind::Annulus => "annulus",
                }
            )));
        }
    }
    if verify && !edge_patterns(e, demand(ports[0]), demand(ports[1]), true)?.contains(p) {
        return Err(Error::SlopeMismatch(format!(
            "edge {eid}: pattern does not fit the boundary curves"
        )));
    }
    let t = e.transport()?;
    let fiber_preserving = transport_slope(&t, Slope::FIBER) == Slope::FIBER;

    if p.kind == PatternKind::Cross {
        let cross = p.cross.expect("cross data");
        let comp = cx.comp(p.chi);
        let mut inner = [0; 2];
        let mut outer = [0; 2];
        for (end, port) in ports.iter().enumerate() {
            let i = if end == 0 {
                cross.inner.0
            } else {
                cross.inner.1
            } as usize;
            inner[end] = cx.face(format!("{eid}/in{end}"), FaceKind::Edge, 1);
            outer[end] = cx.face(format!("{eid}/out{end}"), FaceKind::Edge, 1);
            cx.faces[inner[end]].cross_inner = Some(true);
            cx.faces[outer[end]].cross_inner = Some(false);
            cx.faces[inner[end]].ends[end] = true;
            cx.faces[outer[end]].ends[end] = true;
            cx.glue(inner[end], port.slots[i], true);
            cx.glue(outer[end], port.slots[1 - i], true);
            cx.wall(inner[end], outer[end]);
            for &c in &port.curves {
                cx.merge(comp, c);
            }
        }
        cx.handle(inner[0], inner[1]);
        cx.handle(outer[0], outer[1]);
        cx.active += 1;
        return Ok(());
    }

    let sp = p.spanning_count;
    let main: Vec<usize> = match shape {
        EndShape::Cyclic if sp == 0 => vec![cx.face(format!("{eid}/A"), FaceKind::Edge, 0)],
        EndShape::Cyclic => (0..sp)
            .map(|i| cx.face(format!("{eid}/S{i}"), FaceKind::Edge, 1))
            .collect(),
        EndShape::Linear => (0..=sp)
            .map(|i| cx.face(format!("{eid}/S{i}"), FaceKind::Edge, 1))
            .collect(),
    };
    for &f in &main {
        cx.faces[f].fiber_preserving = fiber_preserving;
    }
    let mut faces = EdgeFaces {
        shape,
        main,
        bigons: [vec![], vec![]],
    };
    for e_ in 0..2 {
        for &(o, c) in &p.ends[e_].pairs {
            let f = cx.face(format!("{eid}/B{e_}.{o}"), FaceKind::Edge, 1);
            faces.bigons[e_].push(((o, c), f));
        }
    }

    for (end, port) in ports.iter().enumerate() {
        let k = p.ends[end].curves;
        for s in 0..slot_count(shape, k) {
            let f = faces.slot_face(p, end, s);
            cx.faces[f].ends[end] = true;
            let arc = !(shape == EndShape::Cyclic && k == 0);
            cx.glue(f, port.slots[s as usize], arc);
        }
        for &(o, c) in &p.ends[end].pairs {
            let comp = cx.comp(0);
            cx.merge(comp, port.curves[o as usize]);
            cx.merge(comp, port.curves[c as usize]);
            let bigon = faces.bigons[end]
                .iter()
                .find(|(pair, _)| *pair == (o, c))
                .expect("bigon")
                .1;
            let outside = match shape {
                EndShape::Cyclic => (o + k - 1) % k,
                EndShape::Linear => o,
            };
            let out = faces.slot_face(p, end, outside);
            cx.wall(bigon, out);
        }
    }

    for a in 0..sp {
        let comp = cx.comp(0);
        let q0 = p.ends[0].spanning[a as usize];
        let b = match shape {
            EndShape::Cyclic => (a + p.shift) % sp,
            EndShape::Linear if p.flip => sp - 1 - a,
            EndShape::Linear => a,
        };
        let q1 = p.ends[1].spanning[b as usize];
        cx.merge(comp, ports[0].curves[q0 as usize]);
        cx.merge(comp, ports[1].curves[q1 as usize]);
        match shape {
            EndShape::Cyclic => cx.wall(
                faces.main[((a + sp - 1) % sp) as usize],
                faces.main[a as usize],
            ),
            EndShape::Linear => cx.wall(faces.main[a as usize], faces.main[a as usize + 1]),
        }
    }

    if let Some(tube) = p.tube {
        let k = p.ends[tube.end].curves;
        let bounding = slot_curves(shape, k, tube.slot);
        let comp = cx.comp(-2);
        let mut far = Vec::new();
        for &c in &bounding {
            cx.merge(comp, ports[tube.end].curves[c as usize]);
            let other = match shape {
                EndShape::Cyclic if tube.slot == c => (c + k - 1) % k,
                EndShape::Cyclic => c,
                EndShape::Linear if tube.slot == c => c + 1,
                EndShape::Linear => c,
            };
            far.push(faces.slot_face(p, tube.end, other));
        }
        let drilled = faces.slot_face(p, tube.end, tube.slot);
        cx.faces[drilled].drilled += 1;
        cx.handle(far[0], *far.last().expect("slot has a curve"));
        cx.active += 1;
        cx.tubes += 1;
    }
    Ok(())
}

/// Boundaries of each vertex that carry edges.
pub(crate) fn attached_boundaries(spec: &GraphManifoldSpec) -> BTreeMap<String, BTreeSet<u32>> {
    let mut out: BTreeMap<String, BTreeSet<u32>> = spec
        .vertices
        .keys()
        .map(|k| (k.clone(), BTreeSet::new()))
        .collect();
    for e in spec.edges.values() {
        for ep in &e.endpoints {
            out.entry(ep.0.clone()).or_default().insert(ep.1);
        }
    }
    out
}

/// Assemble a candidate from one choice per vertex and one pattern per edge.
pub fn assemble(
    spec: &GraphManifoldSpec,
    vertices: &BTreeMap<String, VertexChoice>,
    edges: &BTreeMap<String, EdgePattern>,
) -> Result<CandidateSplitting> {
    assemble_checked(spec, vertices, edges, false, true)
}

/// As [`assemble`]; `verify` off skips spec validation and pattern
/// membership, for callers that produced both themselves.
pub(crate) fn assemble_checked(
    spec: &GraphManifoldSpec,
    vertices: &BTreeMap<String, VertexChoice>,
    edges: &BTreeMap<String, EdgePattern>,
    cross_in_w: bool,
    verify: bool,
) -> Result<CandidateSplitting> {
    let report = if verify {
        validate(spec)
    } else {
        Default::default()
    };
    if !report.is_valid() {
        let codes: Vec<&str> = report.violations.iter().map(|v| v.code.as_str()).collect();
        return Err(Error::InvalidSpec(codes.join(", ")));
    }
    if !vertices.keys().eq(spec.vertices.keys()) {
        return Err(Error::InvalidChoice(
            "vertex choices must cover exactly the spec's vertices".into(),
        ));
    }
    if !edges.keys().eq(spec.edges.keys()) {
        return Err(Error::InvalidChoice(
            "edge patterns must cover exactly the spec's edges".into(),
        ));
    }
    if let Some(c) = lone_vertex(spec, vertices)? {
        return Ok(c);
    }

    let attached = attached_boundaries(spec);
    let mut cx = Complex::new();
    let mut local: BTreeMap<&str, LocalVertex> = BTreeMap::new();
    for (id, v) in &spec.vertices {
        local.insert(
            id,
            build_vertex(&mut cx, id, v, &attached[id], &vertices[id])?,
        );
    }
    for (eid, e) in &spec.edges {
        let port = |k: usize| &local[e.endpoints[k].0.as_str()].ports[&e.endpoints[k].1];
        build_edge(&mut cx, eid, e, &edges[eid], [port(0), port(1)], verify)?;
    }
    cx.active += local.values().filter(|l| l.active).count();
    let out = cx.finish(cross_in_w)?;

    let bicoloring = cx
        .faces
        .iter()
        .zip(&out.colors)
        .map(|(f, &c)| (f.label.clone(), c))
        .collect();
    let mut slots = BTreeMap::new();
    for (id, l) in &local {
        for (b, p) in &l.ports {
            slots.insert(
                format!("{id}:b{b}"),
                PortSlots {
                    cyclic: p.shape == EndShape::Cyclic,
                    regions: p.slots.iter().map(|&f| cx.faces[f].label.clone()).collect(),
                },
            );
        }
    }
    Ok(CandidateSplitting {
        genus: (1 - out.chi / 2) as u64,
        chi: out.chi,
        tubes: cx.tubes,
        encoding: encode_choices(vertices, edges),
        vertices: local
            .into_iter()
            .map(|(id, l)| {
                (
                    id.to_string(),
                    VertexReport {
                        choice: vertices[id].clone(),
                        piece: l.piece,
                    },
                )
            })
            .collect(),
        edges: edges.clone(),
        bicoloring,
        slots,
    })
}

/// Splittings of a lone vertex that are not assembled from local pieces.
fn lone_vertex(
    spec: &GraphManifoldSpec,
    vertices: &BTreeMap<String, VertexChoice>,
) -> Result<Option<CandidateSplitting>> {
    let (id, choice) = match vertices.iter().next() {
        Some((id, c)) if vertices.len() == 1 => (id, c),
        _ => return Ok(None),
    };
    let v = &spec.vertices[id];
    let (genus, chi, piece) = match choice {
        VertexChoice::VerticalSplitting {
            fibers_in_v,
            boundaries_in_v,
        } => {
            let s = vertical_splitting(v, fibers_in_v, boundaries_in_v)?;
            (s.genus, s.chi, s.surface)
        }
        VertexChoice::ProductTimesCircle => {
            if v.kind != VertexKind::Seifert || v.boundary_count > 0 || !v.exceptional.is_empty() {
                return Err(Error::InvalidChoice(
                    "needs a closed vertex without exceptional fibers".into(),
                ));
            }
            let (genus, chi) = product_times_circle_splitting(v.base_genus)?;
            (genus, chi, product_times_circle_surface(v.base_genus)?)
        }
        _ => return Ok(None),
    };
    let edges = BTreeMap::new();
    Ok(Some(CandidateSplitting {
        genus,
        chi,
        tubes: 0,
        encoding: encode_choices(vertices, &edges),
        vertices: [(
            id.clone(),
            VertexReport {
                choice: choice.clone(),
                piece,
            },
        )]
        .into(),
        edges,
        bicoloring: [(format!("{id}/V"), Color::V), (format!("{id}/W"), Color::W)].into(),
        slots: BTreeMap::new(),
    }))
}

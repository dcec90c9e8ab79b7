//! Combinatorial description of totally orientable (generalized) graph
//! manifolds and the `gm-spec/1` document format.
//!
//! Boundary components and exceptional fibers are numbered from 1, matching
//! `b_1 .. b_m` and `f_1 .. f_n`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::slope::GluingMap;

pub const FORMAT: &str = "gm-spec/1";

/// Seifert invariant `(alpha, beta)` of an exceptional fiber.
///
/// Parsing accepts any pair; [`validate`] rejects pairs outside
/// `alpha >= 2, 0 < beta < alpha, gcd = 1`. Nothing is normalized silently.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct SeifertInvariant {
    pub alpha: i64,
    pub beta: i64,
}

impl SeifertInvariant {
    pub fn new(alpha: i64, beta: i64) -> Self {
        Self { alpha, beta }
    }

    pub fn is_normalized(&self) -> bool {
        self.alpha >= 2
            && 0 < self.beta
            && self.beta < self.alpha
            && self.alpha.gcd(&self.beta) == 1
    }
}

impl From<[i64; 2]> for SeifertInvariant {
    fn from(v: [i64; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<SeifertInvariant> for [i64; 2] {
    fn from(s: SeifertInvariant) -> Self {
        [s.alpha, s.beta]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexKind {
    /// Seifert fibered over an orientable base orbifold.
    Seifert,
    /// (compact orientable surface) x [0, 1].
    Product,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexManifold {
    pub kind: VertexKind,
    pub base_genus: u32,
    pub boundary_count: u32,
    #[serde(default)]
    pub exceptional: Vec<SeifertInvariant>,
    /// Boundary indices lying on the boundary of the whole manifold.
    #[serde(default)]
    pub exterior: BTreeSet<u32>,
}

impl VertexManifold {
    pub fn seifert(base_genus: u32, boundary_count: u32, exceptional: &[(i64, i64)]) -> Self {
        Self {
            kind: VertexKind::Seifert,
            base_genus,
            boundary_count,
            exceptional: exceptional
                .iter()
                .map(|&(a, b)| SeifertInvariant::new(a, b))
                .collect(),
            exterior: BTreeSet::new(),
        }
    }

    pub fn product(base_genus: u32, boundary_count: u32) -> Self {
        Self {
            kind: VertexKind::Product,
            base_genus,
            boundary_count,
            exceptional: Vec::new(),
            exterior: BTreeSet::new(),
        }
    }

    pub fn with_exterior(mut self, boundaries: &[u32]) -> Self {
        self.exterior.extend(boundaries.iter().copied());
        self
    }

    pub fn is_seifert(&self) -> bool {
        self.kind == VertexKind::Seifert
    }

    pub fn boundaries(&self) -> impl Iterator<Item = u32> {
        1..=self.boundary_count
    }

    /// Sum of `beta_i / alpha_i` over the exceptional fibers.
    pub fn beta_sum(&self) -> Rational64 {
        self.exceptional
            .iter()
            .map(|s| Rational64::new(s.beta, s.alpha))
            .sum()
    }

    /// lcm of the exceptional multiplicities (1 when there are none).
    pub fn multiplicity_lcm(&self) -> u64 {
        self.exceptional
            .iter()
            .fold(1u64, |acc, s| acc.lcm(&(s.alpha.unsigned_abs())))
    }
}

/// Euler characteristic of the underlying surface of the base.
pub fn euler_char_base(v: &VertexManifold) -> i64 {
    2 - 2 * v.base_genus as i64 - v.boundary_count as i64
}

/// Orbifold Euler characteristic `chi(O) - sum(1 - 1/alpha_i)`.
pub fn orbifold_euler_char(v: &VertexManifold) -> Result<Rational64> {
    if !v.is_seifert() {
        return Err(Error::NotSeifert);
    }
    let cone: Rational64 = v
        .exceptional
        .iter()
        .map(|s| Rational64::from_integer(1) - Rational64::new(1, s.alpha))
        .sum();
    Ok(Rational64::from_integer(euler_char_base(v)) - cone)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    /// torus x I
    Torus,
    /// annulus x I
    Annulus,
}

/// `(vertex id, boundary index)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Endpoint(pub String, pub u32);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeManifold {
    pub kind: EdgeKind,
    pub endpoints: [Endpoint; 2],
    /// `gluings[k]` carries `(fiber, section)` coordinates of the boundary
    /// of endpoint `k` into the coordinates of the edge's own torus.
    pub gluings: [GluingMap; 2],
}

impl EdgeManifold {
    pub fn torus(from: (&str, u32), to: (&str, u32), gluing: GluingMap) -> Self {
        Self {
            kind: EdgeKind::Torus,
            endpoints: [Endpoint(from.0.into(), from.1), Endpoint(to.0.into(), to.1)],
            gluings: [GluingMap::IDENTITY, gluing],
        }
    }

    pub fn annulus(from: (&str, u32), to: (&str, u32)) -> Self {
        Self {
            kind: EdgeKind::Annulus,
            endpoints: [Endpoint(from.0.into(), from.1), Endpoint(to.0.into(), to.1)],
            gluings: [GluingMap::IDENTITY, GluingMap::IDENTITY],
        }
    }

    /// Map from end-0 boundary coordinates to end-1 boundary coordinates.
    pub fn transport(&self) -> Result<GluingMap> {
        Ok(self.gluings[1].inverse()?.compose(&self.gluings[0]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphManifoldSpec {
    pub format: String,
    pub name: String,
    pub vertices: BTreeMap<String, VertexManifold>,
    #[serde(default)]
    pub edges: BTreeMap<String, EdgeManifold>,
}

impl GraphManifoldSpec {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            format: FORMAT.to_string(),
            name: name.into(),
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
        }
    }

    pub fn vertex(mut self, id: &str, v: VertexManifold) -> Self {
        self.vertices.insert(id.to_string(), v);
        self
    }

    pub fn edge(mut self, id: &str, e: EdgeManifold) -> Self {
        self.edges.insert(id.to_string(), e);
        self
    }

    /// Parse a `gm-spec/1` JSON document. Structural JSON errors and unknown
    /// format versions fail here; topological problems are left to [`validate`].
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        match value.get("format").and_then(|f| f.as_str()) {
            Some(FORMAT) => {}
            Some(other) => return Err(Error::UnknownFormat(other.to_string())),
            None => return Err(Error::Parse("missing field `format`".into())),
        }
        serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Canonical form: keys sorted, no insignificant whitespace.
    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self).expect("spec is always serializable");
        serde_json::to_string(&value).expect("value is always serializable")
    }

    /// Edges touching `(vertex, boundary)`, with which end touches it.
    pub fn edge_at(&self, vertex: &str, boundary: u32) -> Option<(&str, usize)> {
        self.edges.iter().find_map(|(id, e)| {
            e.endpoints
                .iter()
                .position(|p| p.0 == vertex && p.1 == boundary)
                .map(|k| (id.as_str(), k))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub code: String,
    pub path: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, code: &str) -> bool {
        self.violations.iter().any(|v| v.code == code)
    }

    fn push(&mut self, code: &str, path: String, message: String) {
        self.violations.push(Violation {
            code: code.into(),
            path,
            message,
        });
    }
}

/// Report every violated invariant of `spec`. Never fails.
pub fn validate(spec: &GraphManifoldSpec) -> ValidationReport {
    let mut r = ValidationReport::default();
    if spec.format != FORMAT {
        r.push(
            "unknown-format",
            "format".into(),
            format!("expected {FORMAT}, got {}", spec.format),
        );
    }
    if spec.vertices.is_empty() {
        r.push(
            "empty-spec",
            "vertices".into(),
            "a spec needs at least one vertex".into(),
        );
        return r;
    }

    for (id, v) in &spec.vertices {
        let path = format!("vertices.{id}");
        match v.kind {
            VertexKind::Seifert => {
                for (i, s) in v.exceptional.iter().enumerate() {
                    if !s.is_normalized() {
                        r.push(
                            "invalid-seifert-invariant",
                            format!("{path}.exceptional[{i}]"),
                            format!(
                                "({},{}) must satisfy alpha >= 2, 0 < beta < alpha, gcd = 1",
                                s.alpha, s.beta
                            ),
                        );
                    }
                }
            }
            VertexKind::Product => {
                if !v.exceptional.is_empty() {
                    r.push(
                        "product-with-exceptional",
                        format!("{path}.exceptional"),
                        "a (surface) x I vertex has no exceptional fibers".into(),
                    );
                }
                if !v.exterior.is_empty() {
                    r.push(
                        "product-exterior",
                        format!("{path}.exterior"),
                        "every (boundary) x I annulus of a product vertex is attached to an edge"
                            .into(),
                    );
                }
            }
        }
        for &b in &v.exterior {
            if b == 0 || b > v.boundary_count {
                r.push(
                    "boundary-out-of-range",
                    format!("{path}.exterior"),
                    format!("boundary {b} not in 1..={}", v.boundary_count),
                );
            }
        }
    }

    let mut used: BTreeMap<(String, u32), String> = BTreeMap::new();
    for (eid, e) in &spec.edges {
        let path = format!("edges.{eid}");
        for (k, g) in e.gluings.iter().enumerate() {
            if !g.is_unimodular() {
                r.push(
                    "gluing-not-unimodular",
                    format!("{path}.gluings[{k}]"),
                    format!("determinant {} is not +1 or -1", g.det()),
                );
            }
        }
        for (k, Endpoint(vid, b)) in e.endpoints.iter().enumerate() {
            let ep = format!("{path}.endpoints[{k}]");
            let Some(v) = spec.vertices.get(vid) else {
                r.push("unknown-vertex", ep, format!("no vertex {vid:?}"));
                continue;
            };
            if *b == 0 || *b > v.boundary_count {
                r.push(
                    "boundary-out-of-range",
                    ep,
                    format!("boundary {b} not in 1..={}", v.boundary_count),
                );
                continue;
            }
            if v.exterior.contains(b) {
                r.push(
                    "boundary-exterior-conflict",
                    ep.clone(),
                    format!("boundary {b} of {vid} is marked exterior"),
                );
            }
            if e.kind == EdgeKind::Torus && v.kind == VertexKind::Product {
                r.push(
                    "torus-edge-on-product",
                    ep.clone(),
                    "torus edges attach only to Seifert fibered vertices".into(),
                );
            }
            if let Some(prev) = used.insert((vid.clone(), *b), eid.clone()) {
                r.push(
                    "boundary-reused",
                    ep,
                    format!("boundary {b} of {vid} already used by edge {prev}"),
                );
            }
        }
    }

    for (id, v) in &spec.vertices {
        for b in v.boundaries() {
            if !v.exterior.contains(&b) && !used.contains_key(&(id.clone(), b)) {
                r.push(
                    "unmatched-boundary",
                    format!("vertices.{id}"),
                    format!("boundary {b} is neither exterior nor attached to an edge"),
                );
            }
        }
    }

    let components = connected_components(spec);
    if components.len() > 1 {
        r.push(
            "disconnected",
            "edges".into(),
            format!("model graph has {} components", components.len()),
        );
    }
    r
}

/// Vertex sets of the connected components of the model graph, in order of
/// their smallest vertex id. Edges to unknown vertices are ignored.
pub fn connected_components(spec: &GraphManifoldSpec) -> Vec<BTreeSet<String>> {
    let ids: Vec<&String> = spec.vertices.keys().collect();
    let index: BTreeMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), i))
        .collect();
    let mut uf = crate::unionfind::UnionFind::new(ids.len());
    for e in spec.edges.values() {
        if let (Some(&a), Some(&b)) = (
            index.get(e.endpoints[0].0.as_str()),
            index.get(e.endpoints[1].0.as_str()),
        ) {
            uf.union(a, b);
        }
    }
    let mut groups: BTreeMap<usize, BTreeSet<String>> = BTreeMap::new();
    for (i, id) in ids.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().insert((*id).clone());
    }
    let mut out: Vec<_> = groups.into_values().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex53_vertex() -> GraphManifoldSpec {
        GraphManifoldSpec::new("ex53").vertex(
            "v",
            VertexManifold::seifert(0, 1, &[(2, 1), (2, 1)]).with_exterior(&[1]),
        )
    }

    #[test]
    fn single_exterior_vertex_is_valid() {
        let report = validate(&ex53_vertex());
        assert!(report.is_valid(), "{report:?}");
    }

    #[test]
    fn det_two_gluing_is_reported() {
        let spec = GraphManifoldSpec::new("bad")
            .vertex("a", VertexManifold::seifert(0, 1, &[(2, 1), (3, 1)]))
            .vertex("b", VertexManifold::seifert(0, 1, &[(2, 1), (3, 1)]))
            .edge(
                "e",
                EdgeManifold::torus(("a", 1), ("b", 1), GluingMap([[2, 0], [0, 1]])),
            );
        let report = validate(&spec);
        assert!(report.has("gluing-not-unimodular"));
        assert_eq!(report.violations.len(), 1, "{report:?}");
    }

    #[test]
    fn two_components_reported() {
        let spec = GraphManifoldSpec::new("split")
            .vertex("a", VertexManifold::seifert(0, 1, &[]).with_exterior(&[1]))
            .vertex("b", VertexManifold::seifert(0, 1, &[]).with_exterior(&[1]));
        assert!(validate(&spec).has("disconnected"));
    }

    #[test]
    fn bad_invariants_and_references() {
        let spec = GraphManifoldSpec::new("bad")
            .vertex(
                "a",
                VertexManifold::seifert(0, 2, &[(4, 2), (1, 0)]).with_exterior(&[2]),
            )
            .vertex("p", VertexManifold::product(0, 2))
            .edge(
                "e",
                EdgeManifold::torus(("a", 1), ("p", 1), GluingMap::IDENTITY),
            )
            .edge(
                "f",
                EdgeManifold::torus(("a", 2), ("zz", 1), GluingMap::IDENTITY),
            );
        let report = validate(&spec);
        for code in [
            "invalid-seifert-invariant",
            "torus-edge-on-product",
            "unknown-vertex",
            "boundary-exterior-conflict",
            "unmatched-boundary",
        ] {
            assert!(report.has(code), "missing {code}: {report:?}");
        }
        assert_eq!(
            report
                .violations
                .iter()
                .filter(|v| v.code == "invalid-seifert-invariant")
                .count(),
            2
        );
    }

    #[test]
    fn validate_is_idempotent() {
        let spec = GraphManifoldSpec::new("x").vertex(
            "a",
            VertexManifold::seifert(0, 3, &[(5, 7)]).with_exterior(&[9]),
        );
        assert_eq!(validate(&spec), validate(&spec));
    }

    #[test]
    fn base_euler_characteristics() {
        assert_eq!(euler_char_base(&VertexManifold::seifert(0, 1, &[])), 1);
        assert_eq!(euler_char_base(&VertexManifold::seifert(0, 3, &[])), -1);
        assert_eq!(euler_char_base(&VertexManifold::seifert(1, 1, &[])), -1);
    }

    #[test]
    fn orbifold_euler_characteristics() {
        let r = |a, b| Rational64::new(a, b);
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (2, 1)]);
        // 1 - 1/2 - 1/2
        assert_eq!(orbifold_euler_char(&v).unwrap(), r(0, 1));
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (2, 1), (2, 1)]);
        assert_eq!(orbifold_euler_char(&v).unwrap(), r(-1, 2));
        let v = VertexManifold::seifert(1, 1, &[]);
        assert_eq!(orbifold_euler_char(&v).unwrap(), r(-1, 1));
        assert_eq!(
            orbifold_euler_char(&VertexManifold::product(1, 1)),
            Err(Error::NotSeifert)
        );
    }

    #[test]
    fn format_gate() {
        let doc = r#"{"format":"gm-spec/2","name":"x","vertices":{}}"#;
        assert!(matches!(
            GraphManifoldSpec::from_json(doc),
            Err(Error::UnknownFormat(_))
        ));
        let doc = r#"{"name":"x","vertices":{}}"#;
        assert!(matches!(
            GraphManifoldSpec::from_json(doc),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn canonical_form_is_sorted_and_compact() {
        let doc = r#"{
            "vertices": {"v": {"kind": "seifert", "exterior": [1], "boundary_count": 1,
                               "base_genus": 0, "exceptional": [[2,1],[2,1]]}},
            "name": "ex53", "format": "gm-spec/1"
        }"#;
        let spec = GraphManifoldSpec::from_json(doc).unwrap();
        assert_eq!(
            spec.to_canonical_json(),
            r#"{"edges":{},"format":"gm-spec/1","name":"ex53","vertices":{"v":{"base_genus":0,"boundary_count":1,"exceptional":[[2,1],[2,1]],"exterior":[1],"kind":"seifert"}}}"#
        );
        assert_eq!(spec, ex53_vertex());
    }
}

//! Generalized splittings: cutting along thin tori and amalgamating.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{validate, EdgeKind, GraphManifoldSpec};
use crate::unionfind::UnionFind;

use super::enumerate::enumerate_standard;
use super::{Bounds, CandidateSplitting};

/// Thick levels `chi(S_i)` interleaved with thin levels `chi(F_i)`; there is
/// one fewer thin level than thick levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedSplitting {
    pub thick: Vec<i64>,
    pub thin: Vec<i64>,
    #[serde(default)]
    pub labels: Vec<String>,
}

impl GeneralizedSplitting {
    pub fn new(thick: Vec<i64>, thin: Vec<i64>) -> Result<Self> {
        if thick.is_empty() {
            return Err(Error::MalformedSplitting("no thick levels".into()));
        }
        if thin.len() + 1 != thick.len() {
            return Err(Error::MalformedSplitting(format!(
                "{} thick levels need {} thin levels, got {}",
                thick.len(),
                thick.len() - 1,
                thin.len()
            )));
        }
        if let Some(f) = thin.iter().find(|&&f| f > 0) {
            return Err(Error::MalformedSplitting(format!(
                "thin level with chi {f} > 0"
            )));
        }
        Ok(Self {
            thick,
            thin,
            labels: vec![],
        })
    }

    /// Parse `[[chiS, chiF], ..., [chiS]]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let n = rows.len();
        let mut thick = Vec::new();
        let mut thin = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            match (row.as_slice(), i + 1 == n) {
                ([s], true) => thick.push(*s),
                ([s, f], false) => {
                    thick.push(*s);
                    thin.push(*f);
                }
                _ => {
                    return Err(Error::MalformedSplitting(format!(
                        "entry {i} must be [chiS, chiF], the last one [chiS]"
                    )))
                }
            }
        }
        Self::new(thick, thin)
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Vec<i64>> = self
            .thick
            .iter()
            .enumerate()
            .map(|(i, &s)| match self.thin.get(i) {
                Some(&f) => vec![s, f],
                None => vec![s],
            })
            .collect();
        serde_json::to_string(&rows).expect("rows serialize")
    }

    pub fn reversed(&self) -> Self {
        let mut thick = self.thick.clone();
        let mut thin = self.thin.clone();
        let mut labels = self.labels.clone();
        thick.reverse();
        thin.reverse();
        labels.reverse();
        Self {
            thick,
            thin,
            labels,
        }
    }
}

/// Euler characteristic and genus of the amalgamated splitting.
pub fn amalgamate(gs: &GeneralizedSplitting) -> Result<(i64, u64)> {
    if gs.thick.is_empty() || gs.thin.len() + 1 != gs.thick.len() {
        return Err(Error::MalformedSplitting(
            "thick and thin levels must alternate".into(),
        ));
    }
    let chi: i64 = gs.thick.iter().sum::<i64>() - gs.thin.iter().sum::<i64>();
    if chi % 2 != 0 {
        return Err(Error::MalformedSplitting(format!("chi {chi} is odd")));
    }
    if chi > 2 {
        return Err(Error::MalformedSplitting(format!("chi {chi} exceeds 2")));
    }
    Ok((chi, (1 - chi / 2) as u64))
}

/// Cut `spec` along the torus of edge `id`. The edge disappears and both of
/// its boundaries become exterior; the result has one spec per component,
/// named `{name}.{smallest vertex id}`.
pub fn cut_edge(spec: &GraphManifoldSpec, id: &str) -> Result<Vec<GraphManifoldSpec>> {
    let e = spec
        .edges
        .get(id)
        .ok_or_else(|| Error::UnknownEdge(id.to_string()))?;
    if e.kind == EdgeKind::Annulus {
        return Err(Error::CutAnnulus(id.to_string()));
    }
    let mut cut = spec.clone();
    let e = cut.edges.remove(id).expect("present");
    for p in &e.endpoints {
        if let Some(v) = cut.vertices.get_mut(&p.0) {
            v.exterior.insert(p.1);
        }
    }
    Ok(components(&cut))
}

/// Split a spec into its connected components.
fn components(spec: &GraphManifoldSpec) -> Vec<GraphManifoldSpec> {
    let ids: Vec<&String> = spec.vertices.keys().collect();
    let index: BTreeMap<&str, usize> = ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let mut uf = UnionFind::new(ids.len());
    for e in spec.edges.values() {
        if let (Some(&a), Some(&b)) = (
            index.get(e.endpoints[0].0.as_str()),
            index.get(e.endpoints[1].0.as_str()),
        ) {
            uf.union(a, b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..ids.len() {
        groups.entry(uf.find(i)).or_default().push(i);
    }
    let mut out: Vec<GraphManifoldSpec> = groups
        .values()
        .map(|members| {
            let first = ids[members[0]];
            let mut piece = GraphManifoldSpec::new(format!("{}.{first}", spec.name));
            for &i in members {
                piece
                    .vertices
                    .insert(ids[i].clone(), spec.vertices[ids[i]].clone());
            }
            for (eid, e) in &spec.edges {
                if piece.vertices.contains_key(&e.endpoints[0].0) {
                    piece.edges.insert(eid.clone(), e.clone());
                }
            }
            piece
        })
        .collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeakReduction {
    pub splitting: GeneralizedSplitting,
    pub chi: i64,
    pub genus: u64,
    /// Minimal candidate of each piece, in the order of `splitting.thick`.
    pub pieces: Vec<(GraphManifoldSpec, CandidateSplitting)>,
}

/// Cut along the torus edges in `thin`, take a minimal standard candidate of
/// every piece and amalgamate them. Each thin torus must separate, so the
/// pieces and thin levels form a tree.
pub fn weak_reduction_pipeline(
    spec: &GraphManifoldSpec,
    thin: &BTreeSet<String>,
    bounds: &Bounds,
) -> Result<WeakReduction> {
    if thin.is_empty() {
        return Err(Error::NoThinLevels);
    }
    let report = validate(spec);
    if !report.is_valid() {
        let codes: Vec<&str> = report.violations.iter().map(|v| v.code.as_str()).collect();
        return Err(Error::InvalidSpec(codes.join(", ")));
    }
    let mut cut = spec.clone();
    for id in thin {
        let e = cut
            .edges
            .get(id)
            .ok_or_else(|| Error::UnknownEdge(id.clone()))?;
        if e.kind == EdgeKind::Annulus {
            return Err(Error::CutAnnulus(id.clone()));
        }
        let e = cut.edges.remove(id).expect("present");
        for p in &e.endpoints {
            cut.vertices
                .get_mut(&p.0)
                .expect("validated endpoint")
                .exterior
                .insert(p.1);
        }
    }
    let parts = components(&cut);
    if parts.len() != thin.len() + 1 {
        return Err(Error::ThinNotSeparating);
    }
    let mut pieces = Vec::new();
    for part in parts {
        let best = enumerate_standard(&part, bounds)?
            .into_iter()
            .next()
            .ok_or_else(|| Error::EmptyPiece(part.name.clone()))?;
        pieces.push((part, best));
    }
    let mut splitting = GeneralizedSplitting::new(
        pieces.iter().map(|(_, c)| c.chi).collect(),
        vec![0; thin.len()],
    )?;
    splitting.labels = pieces.iter().map(|(p, _)| p.name.clone()).collect();
    let (chi, genus) = amalgamate(&splitting)?;
    Ok(WeakReduction {
        splitting,
        chi,
        genus,
        pieces,
    })
}

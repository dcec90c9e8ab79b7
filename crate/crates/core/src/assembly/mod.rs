//! Assembling vertex pieces and edge patterns into closed splitting
//! surfaces, enumerating the standard constructions, and amalgamation
//! bookkeeping for generalized splittings.
//!
//! A candidate is checked on an abstract complex: surface components joined
//! along their boundary curves, and the complementary regions ("faces") of
//! every vertex and edge manifold glued across the slots between curves.
//! Faces are fibered (unions of vertical solid tori and collars) or product
//! (sheet-bounded `F x I` layers). Compression-body validity is checked
//! structurally on the glued blocks.

mod enumerate;
mod glue;
mod local;
mod weak;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::edge::EdgePattern;
use crate::surfaces::{FiberChoice, SurfacePiece};

pub use enumerate::enumerate_standard;
pub use glue::assemble;
pub use weak::{
    amalgamate, cut_edge, weak_reduction_pipeline, GeneralizedSplitting, WeakReduction,
};

/// Side of a band layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

/// A cone point or boundary circle of the base, as a unit of a cut face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Unit {
    Cone(u32),
    Circle(u32),
}

/// Ambient 1-surgery inside one face of a band layout. The surgery arcs cut
/// the face's base into a regular neighbourhood of its units, plus (when
/// `outer` is `None`) a disk touching the frontier. When `outer` names a
/// unit, that unit's neighbourhood touches the frontier.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cut {
    pub face: Side,
    pub outer: Option<Unit>,
}

/// Vertical annuli over a cycle of arcs through the boundary circles
/// `visits` (in cyclic order), or a vertical torus when `visits` is empty and
/// `torus` is set. The cycle separates the base into `X` (holding the listed
/// cone points, boundary circles and genus) and `Y` (the rest). With
/// `visits` empty and no torus the vertex misses the surface.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BandLayout {
    pub visits: Vec<u32>,
    #[serde(default)]
    pub torus: bool,
    #[serde(default)]
    pub x_cones: BTreeSet<u32>,
    #[serde(default)]
    pub x_circles: BTreeSet<u32>,
    #[serde(default)]
    pub genus_in_x: u32,
    #[serde(default)]
    pub cut: Option<Cut>,
}

impl BandLayout {
    pub fn is_empty(&self) -> bool {
        self.visits.is_empty() && !self.torus
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum VertexChoice {
    Band(BandLayout),
    Horizontal {
        degree: u64,
        coeffs: Vec<i64>,
    },
    Pseudohorizontal {
        fiber: FiberChoice,
        degree: u64,
        coeffs: Vec<i64>,
    },
    ProductHorizontal {
        copies: u32,
    },
    /// Vertical splitting of a lone vertex with boundary.
    VerticalSplitting {
        fibers_in_v: BTreeSet<u32>,
        boundaries_in_v: BTreeSet<u32>,
    },
    /// Standard splitting of a closed `Q x S^1`.
    ProductTimesCircle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    V,
    W,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub n_max: u64,
    pub max_arcs: u64,
    pub allow_tubes: bool,
    /// Bound on `|c_j|` for framing coefficients of horizontal pieces.
    pub coeff_max: i64,
    /// Put the collar of a cross pattern in `W` instead of `V`.
    pub cross_in_w: bool,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            n_max: 12,
            max_arcs: 8,
            allow_tubes: true,
            coeff_max: 6,
            cross_in_w: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexReport {
    pub choice: VertexChoice,
    pub piece: SurfacePiece,
}

/// Slots of one edge-attached boundary, in order, by the vertex-side
/// region each one faces. Neighbouring slots are separated by one curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PortSlots {
    pub cyclic: bool,
    pub regions: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSplitting {
    pub genus: u64,
    pub chi: i64,
    pub tubes: usize,
    pub encoding: String,
    pub vertices: BTreeMap<String, VertexReport>,
    pub edges: BTreeMap<String, EdgePattern>,
    pub bicoloring: BTreeMap<String, Color>,
    pub slots: BTreeMap<String, PortSlots>,
}

impl CandidateSplitting {
    /// Ranking key: genus, then tubes, then the choice encoding.
    pub fn rank_key(&self) -> (u64, usize, &str) {
        (self.genus, self.tubes, &self.encoding)
    }
}

/// Compact per-id encoding of a full choice, used for tie-breaking.
pub fn encode_choices(
    vertices: &BTreeMap<String, VertexChoice>,
    edges: &BTreeMap<String, EdgePattern>,
) -> String {
    let value = serde_json::json!({ "edges": edges, "vertices": vertices });
    serde_json::to_string(&value).expect("choices serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::edge::PatternKind;
    use crate::error::Error;
    use crate::model::{EdgeManifold, GraphManifoldSpec, VertexManifold};
    use crate::slope::GluingMap;
    use crate::surfaces::PieceTag;

    fn m2() -> GraphManifoldSpec {
        GraphManifoldSpec::new("m2")
            .vertex("v", VertexManifold::seifert(0, 3, &[]).with_exterior(&[1]))
            .edge(
                "e",
                EdgeManifold::torus(("v", 2), ("v", 3), GluingMap::SWAP),
            )
    }

    fn two_punctured_tori() -> GraphManifoldSpec {
        GraphManifoldSpec::new("t")
            .vertex("a", VertexManifold::seifert(1, 1, &[]))
            .vertex("b", VertexManifold::seifert(1, 1, &[]))
            .edge(
                "e",
                EdgeManifold::torus(("a", 1), ("b", 1), GluingMap::SWAP),
            )
    }

    #[test]
    fn solid_torus_has_genus_one() {
        let spec = GraphManifoldSpec::new("s")
            .vertex("v", VertexManifold::seifert(0, 1, &[]).with_exterior(&[1]));
        let best = &enumerate_standard(&spec, &Bounds::default()).unwrap()[0];
        assert_eq!((best.genus, best.chi), (1, 0));
    }

    #[test]
    fn two_cone_points_give_one_surgery_arc() {
        let spec = GraphManifoldSpec::new("s").vertex(
            "v",
            VertexManifold::seifert(0, 1, &[(2, 1), (2, 1)]).with_exterior(&[1]),
        );
        let best = &enumerate_standard(&spec, &Bounds::default()).unwrap()[0];
        assert_eq!(best.genus, 2);
        assert_eq!(best.vertices["v"].piece.tag, PieceTag::Pseudovertical);
    }

    #[test]
    fn loop_edge_uses_a_cross() {
        let all = enumerate_standard(&m2(), &Bounds::default()).unwrap();
        let best = &all[0];
        assert_eq!(best.genus, 2);
        assert_eq!(best.edges["e"].kind, PatternKind::Cross);
        // reassembling the witness reproduces it
        let choices = best
            .vertices
            .iter()
            .map(|(k, r)| (k.clone(), r.choice.clone()))
            .collect();
        assert_eq!(&assemble(&m2(), &choices, &best.edges).unwrap(), best);
    }

    #[test]
    fn horizontal_pieces_meet_in_a_cross() {
        let all = enumerate_standard(&two_punctured_tori(), &Bounds::default()).unwrap();
        let best = &all[0];
        assert_eq!(best.genus, 4);
        assert!(matches!(
            best.vertices["a"].choice,
            VertexChoice::Horizontal { degree: 2, .. }
        ));
        assert_eq!(best.edges["e"].kind, PatternKind::Cross);
    }

    #[test]
    fn foreign_pattern_is_a_slope_mismatch() {
        let other = enumerate_standard(&two_punctured_tori(), &Bounds::default()).unwrap();
        let mine = enumerate_standard(&m2(), &Bounds::default()).unwrap();
        let choices = mine[0]
            .vertices
            .iter()
            .map(|(k, r)| (k.clone(), r.choice.clone()))
            .collect();
        let err = assemble(&m2(), &choices, &other[0].edges).unwrap_err();
        assert!(matches!(err, Error::SlopeMismatch(_)), "{err}");
    }

    #[test]
    fn choices_must_cover_the_spec() {
        let err = assemble(&m2(), &BTreeMap::new(), &BTreeMap::new()).unwrap_err();
        assert!(matches!(err, Error::InvalidChoice(_)));
    }

    #[test]
    fn enumeration_is_sorted_and_duplicate_free() {
        let all = enumerate_standard(&m2(), &Bounds::default()).unwrap();
        for w in all.windows(2) {
            assert!(w[0].rank_key() < w[1].rank_key());
        }
    }
}

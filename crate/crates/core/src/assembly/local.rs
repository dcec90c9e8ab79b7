//! Local structure of a vertex piece: surface components, faces, and the
//! curves and slots it presents at each edge-attached boundary.

use std::collections::{BTreeMap, BTreeSet};

use crate::edge::EndShape;
use crate::error::{Error, Result};
use crate::model::{euler_char_base, VertexKind, VertexManifold};
use crate::slope::Slope;
use crate::surfaces::{
    drilled, horizontal_piece, horizontal_sheets, product_horizontal, pseudohorizontal_piece,
    vertical_piece, BaseCurve, BaseSide, ComponentSummary, PieceDetail, PieceTag, SurfacePiece,
};

use super::glue::{Complex, FaceKind};
use super::{BandLayout, Cut, Side, Unit, VertexChoice};

/// What a vertex presents at one edge-attached boundary.
#[derive(Clone, Debug)]
pub(crate) struct Port {
    pub shape: EndShape,
    pub slope: Slope,
    /// Surface component of each curve, in order.
    pub curves: Vec<usize>,
    /// Face behind each slot, in order.
    pub slots: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct LocalVertex {
    pub piece: SurfacePiece,
    pub ports: BTreeMap<u32, Port>,
    pub active: bool,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidChoice(msg.into())
}

/// Build the local structure of `choice` in `v`, adding its faces and
/// components to `cx`. `attached` lists the boundaries carrying edges.
pub(crate) fn build_vertex(
    cx: &mut Complex,
    vid: &str,
    v: &VertexManifold,
    attached: &BTreeSet<u32>,
    choice: &VertexChoice,
) -> Result<LocalVertex> {
    match choice {
        VertexChoice::Band(layout) => build_band(cx, vid, v, attached, layout),
        VertexChoice::Horizontal { degree, coeffs } => {
            no_exterior(v)?;
            let piece = horizontal_piece(v, *degree, coeffs)?;
            let d = horizontal_sheets(v, *degree, coeffs);
            Ok(sheets(cx, vid, v, attached, piece, d, false))
        }
        VertexChoice::Pseudohorizontal {
            fiber,
            degree,
            coeffs,
        } => {
            no_exterior(v)?;
            let piece = pseudohorizontal_piece(v, *fiber, *degree, coeffs)?;
            let d = horizontal_sheets(&drilled(v, *fiber)?, *degree, coeffs);
            if d != 2 {
                return Err(invalid(format!(
                    "pseudohorizontal piece has {d} sheets, need 2"
                )));
            }
            Ok(sheets(cx, vid, v, attached, piece, 2, true))
        }
        VertexChoice::ProductHorizontal { copies } => {
            let piece = product_horizontal(v, *copies)?;
            Ok(layers(cx, vid, v, piece, *copies))
        }
        VertexChoice::VerticalSplitting { .. } | VertexChoice::ProductTimesCircle => {
            Err(invalid("lone-vertex splittings cannot be glued to edges"))
        }
    }
}

fn no_exterior(v: &VertexManifold) -> Result<()> {
    if v.exterior.is_empty() {
        Ok(())
    } else {
        Err(invalid("horizontal pieces cannot meet exterior boundary"))
    }
}

/// Horizontal sheets cut the vertex into `d` product regions; sheet `s` lies
/// between regions `R_s` and `R_{s+1}`. A pseudohorizontal piece is one
/// component (its collar joins the two sheets).
fn sheets(
    cx: &mut Complex,
    vid: &str,
    v: &VertexManifold,
    attached: &BTreeSet<u32>,
    piece: SurfacePiece,
    d: u64,
    joined: bool,
) -> LocalVertex {
    let d = d as usize;
    let region_chi = piece.chi / d as i64;
    let regions: Vec<usize> = (0..d)
        .map(|s| cx.face(format!("{vid}/R{s}"), FaceKind::Product, region_chi))
        .collect();
    let comps: Vec<usize> = if joined {
        vec![cx.comp(piece.chi); d]
    } else {
        (0..d).map(|_| cx.comp(region_chi)).collect()
    };
    for s in 0..d {
        cx.wall(regions[s], regions[(s + 1) % d]);
    }
    let mut ports = BTreeMap::new();
    for b in v.boundaries().filter(|b| attached.contains(b)) {
        let bc = piece.boundary[&b];
        let k = bc.count as usize;
        ports.insert(
            b,
            Port {
                shape: EndShape::Cyclic,
                slope: bc.slope,
                curves: (0..k).map(|t| comps[t % d]).collect(),
                slots: (0..k).map(|t| regions[(t + 1) % d]).collect(),
            },
        );
    }
    LocalVertex {
        piece,
        ports,
        active: joined,
    }
}

/// `q` copies of the base surface cut a product vertex into layers
/// `L_0 .. L_q`; the outer two contain the horizontal boundary.
fn layers(
    cx: &mut Complex,
    vid: &str,
    v: &VertexManifold,
    piece: SurfacePiece,
    q: u32,
) -> LocalVertex {
    let q = q as usize;
    let base = euler_char_base(v);
    let layer: Vec<usize> = (0..=q)
        .map(|s| {
            let f = cx.face(format!("{vid}/L{s}"), FaceKind::Product, base);
            if s == 0 || s == q {
                cx.faces[f].exterior += 1;
            }
            f
        })
        .collect();
    let comps: Vec<usize> = (0..q).map(|_| cx.comp(base)).collect();
    for i in 0..q {
        cx.wall(layer[i], layer[i + 1]);
    }
    let ports = v
        .boundaries()
        .map(|b| {
            (
                b,
                Port {
                    shape: EndShape::Linear,
                    slope: Slope::SECTION,
                    curves: comps.clone(),
                    slots: layer.clone(),
                },
            )
        })
        .collect();
    LocalVertex {
        piece,
        ports,
        active: false,
    }
}

/// Content of one side of a band layout.
#[derive(Clone, Debug, Default)]
struct Content {
    cones: BTreeSet<u32>,
    circles: BTreeSet<u32>,
    genus: u32,
}

impl Content {
    fn chi(&self) -> i64 {
        1 - self.circles.len() as i64 - 2 * self.genus as i64
    }

    fn units(&self) -> Vec<Unit> {
        let mut u: Vec<Unit> = self.cones.iter().map(|&c| Unit::Cone(c)).collect();
        u.extend(self.circles.iter().map(|&b| Unit::Circle(b)));
        u
    }
}

/// Faces a side of the layout turned into: the face every visited port
/// sees, and the face each unvisited boundary lies in.
struct SideFaces {
    outer: usize,
    circle: BTreeMap<u32, usize>,
}

fn plain_side(cx: &mut Complex, label: String, c: &Content, v: &VertexManifold) -> SideFaces {
    let f = cx.face(label, FaceKind::Fibered, c.chi());
    cx.faces[f].cones = c.cones.len() as u32;
    cx.faces[f].exterior = c.circles.iter().filter(|b| v.exterior.contains(b)).count() as u32;
    SideFaces {
        outer: f,
        circle: c.circles.iter().map(|&b| (b, f)).collect(),
    }
}

/// Cut a side along surgery arcs into unit neighbourhoods (and an outer
/// disk), joined by the arcs' 1-handles. Returns the faces and arc count.
fn cut_side(
    cx: &mut Complex,
    label: &str,
    c: &Content,
    v: &VertexManifold,
    outer: Option<Unit>,
) -> Result<(SideFaces, u64)> {
    let units = c.units();
    if let Some(u) = outer {
        if !units.contains(&u) {
            return Err(invalid(format!("outer unit {u:?} is not in the cut face")));
        }
    }
    let mut subfaces = Vec::new();
    let mut outer_face = None;
    if outer.is_none() {
        outer_face = Some(cx.face(format!("{label}.o"), FaceKind::Fibered, 1));
        subfaces.push(outer_face.unwrap());
    }
    let mut circle = BTreeMap::new();
    for u in units {
        let f = match u {
            Unit::Cone(i) => {
                let f = cx.face(format!("{label}.c{i}"), FaceKind::Fibered, 1);
                cx.faces[f].cones = 1;
                f
            }
            Unit::Circle(b) => {
                let f = cx.face(format!("{label}.b{b}"), FaceKind::Fibered, 0);
                if v.exterior.contains(&b) {
                    cx.faces[f].exterior = 1;
                }
                circle.insert(b, f);
                f
            }
        };
        if Some(u) == outer {
            outer_face = Some(f);
        }
        subfaces.push(f);
    }
    let outer_face = outer_face.expect("outer subface exists");
    let sub_chi: i64 = subfaces.iter().map(|&f| cx.faces[f].chi).sum();
    let arcs = sub_chi - c.chi();
    debug_assert_eq!(arcs, subfaces.len() as i64 - 1 + 2 * c.genus as i64);
    for &f in &subfaces {
        if f != outer_face {
            cx.handle(outer_face, f);
        }
    }
    for _ in 0..2 * c.genus {
        cx.handle(outer_face, outer_face);
    }
    Ok((
        SideFaces {
            outer: outer_face,
            circle,
        },
        arcs as u64,
    ))
}

fn build_band(
    cx: &mut Complex,
    vid: &str,
    v: &VertexManifold,
    attached: &BTreeSet<u32>,
    layout: &BandLayout,
) -> Result<LocalVertex> {
    if v.kind != VertexKind::Seifert {
        return Err(Error::NotSeifert);
    }
    let n = v.exceptional.len() as u32;
    let all_cones: BTreeSet<u32> = (1..=n).collect();
    let all_bounds: BTreeSet<u32> = v.boundaries().collect();
    let visits: BTreeSet<u32> = layout.visits.iter().copied().collect();
    if visits.len() != layout.visits.len() {
        return Err(invalid("a band visits each boundary at most once"));
    }
    if !visits.is_subset(attached) {
        return Err(invalid("bands only visit edge-attached boundaries"));
    }
    if layout.torus && !layout.visits.is_empty() {
        return Err(invalid("a layout is either a band cycle or a torus"));
    }
    if !layout.x_cones.is_subset(&all_cones) {
        return Err(Error::InvalidReference("x_cones".into()));
    }
    let unvisited: BTreeSet<u32> = all_bounds.difference(&visits).copied().collect();
    if !layout.x_circles.is_subset(&unvisited) {
        return Err(invalid("x_circles must be unvisited boundaries"));
    }
    if layout.genus_in_x > v.base_genus {
        return Err(invalid("genus_in_x exceeds the base genus"));
    }

    if layout.is_empty() {
        if layout.cut.is_some()
            || !layout.x_cones.is_empty()
            || !layout.x_circles.is_empty()
            || layout.genus_in_x > 0
        {
            return Err(invalid("an empty layout has a single face and no cut"));
        }
        let whole = Content {
            cones: all_cones,
            circles: all_bounds,
            genus: v.base_genus,
        };
        let mut f = plain_side(cx, format!("{vid}/O"), &whole, v);
        cx.faces[f.outer].chi = euler_char_base(v);
        let ports = attached
            .iter()
            .map(|&b| {
                let face = f.circle.remove(&b).expect("boundary in O");
                (
                    b,
                    Port {
                        shape: EndShape::Cyclic,
                        slope: Slope::FIBER,
                        curves: vec![],
                        slots: vec![face],
                    },
                )
            })
            .collect();
        let piece = SurfacePiece {
            tag: PieceTag::Vertical,
            chi: 0,
            boundary: Default::default(),
            components: vec![],
            detail: PieceDetail::Vertical { curves: vec![] },
        };
        return Ok(LocalVertex {
            piece,
            ports,
            active: false,
        });
    }

    let x = Content {
        cones: layout.x_cones.clone(),
        circles: layout.x_circles.clone(),
        genus: layout.genus_in_x,
    };
    let y = Content {
        cones: all_cones.difference(&x.cones).copied().collect(),
        circles: unvisited.difference(&x.circles).copied().collect(),
        genus: v.base_genus - x.genus,
    };

    // the vertical collection, checked for essentiality
    let r = layout.visits.len();
    let x_side = BaseSide {
        exceptional: x.cones.clone(),
        boundaries: x.circles.clone(),
    };
    let curves: Vec<BaseCurve> = if layout.torus {
        if x.genus > 0 && x.cones.is_empty() && x.circles.is_empty() {
            return Err(invalid("torus enclosing only genus is not modelled"));
        }
        vec![BaseCurve::Loop { encloses: x_side }]
    } else if r == 1 {
        let p = layout.visits[0];
        vec![BaseCurve::Arc {
            from: p,
            to: p,
            cuts_off: x_side,
        }]
    } else {
        (0..r)
            .map(|t| BaseCurve::Arc {
                from: layout.visits[t],
                to: layout.visits[(t + 1) % r],
                cuts_off: BaseSide::default(),
            })
            .collect()
    };
    if (r == 1 || layout.torus) && (y.cones.is_empty() && y.circles.is_empty() && y.genus == 0) {
        return Err(Error::Inessential("the Y side is a disk".into()));
    }
    if r == 1 && x.genus > 0 && x.cones.is_empty() && x.circles.is_empty() {
        return Err(invalid("arc cutting off only genus is not modelled"));
    }
    let mut piece = vertical_piece(v, &curves)?;

    let (xf, yf, arcs) = match &layout.cut {
        None => {
            let xf = plain_side(cx, format!("{vid}/X"), &x, v);
            let yf = plain_side(cx, format!("{vid}/Y"), &y, v);
            (xf, yf, 0)
        }
        Some(Cut { face, outer }) => {
            let (cut, other) = match face {
                Side::X => (&x, &y),
                Side::Y => (&y, &x),
            };
            let name = |s: Side| format!("{vid}/{s:?}");
            let (cf, arcs) = cut_side(cx, &name(*face), cut, v, *outer)?;
            let other_side = if *face == Side::X { Side::Y } else { Side::X };
            let of = plain_side(cx, name(other_side), other, v);
            if arcs == 0 {
                return Err(invalid("cut without surgery arcs"));
            }
            // tubes along the arcs are 1-handles of the other side
            for _ in 0..arcs {
                cx.handle(of.outer, of.outer);
            }
            match face {
                Side::X => (cf, of, arcs),
                Side::Y => (of, cf, arcs),
            }
        }
    };

    // surface components: one per vertical annulus or torus, merged by surgery
    let comps: Vec<usize> = if arcs > 0 {
        vec![cx.comp(-2 * arcs as i64); r.max(1)]
    } else {
        (0..r.max(1)).map(|_| cx.comp(0)).collect()
    };
    for _ in 0..r.max(1) {
        cx.wall(xf.outer, yf.outer);
    }

    let mut ports = BTreeMap::new();
    for &b in attached {
        let port = if let Some(t) = layout.visits.iter().position(|&p| p == b) {
            Port {
                shape: EndShape::Cyclic,
                slope: Slope::FIBER,
                curves: vec![comps[(t + r - 1) % r], comps[t]],
                slots: vec![xf.outer, yf.outer],
            }
        } else {
            let face = xf
                .circle
                .get(&b)
                .or_else(|| yf.circle.get(&b))
                .copied()
                .expect("boundary placed");
            Port {
                shape: EndShape::Cyclic,
                slope: Slope::FIBER,
                curves: vec![],
                slots: vec![face],
            }
        };
        ports.insert(b, port);
    }

    if arcs > 0 {
        let circles: u64 = piece.components.iter().map(|c| c.circles).sum();
        piece.tag = PieceTag::Pseudovertical;
        piece.chi = -2 * arcs as i64;
        piece.components = vec![ComponentSummary {
            chi: piece.chi,
            circles,
        }];
        piece.detail = PieceDetail::Pseudovertical {
            base: curves,
            arcs: arcs as usize,
        };
    }
    Ok(LocalVertex {
        piece,
        ports,
        active: arcs > 0,
    })
}

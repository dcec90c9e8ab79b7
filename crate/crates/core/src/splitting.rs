//! Vertical Heegaard splittings of a single Seifert fibered vertex with
//! boundary, and the standard splitting of (closed surface) x S^1.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{euler_char_base, VertexKind, VertexManifold};
use crate::surfaces::{BaseCurve, BaseSide, ComponentSummary, PieceDetail, PieceTag, SurfacePiece};

/// Partition data of a vertical splitting. `spine_arcs` is derived.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VerticalSplittingSpec {
    pub vertex: VertexManifold,
    pub fibers_in_v: BTreeSet<u32>,
    pub boundaries_in_v: BTreeSet<u32>,
    pub spine_arcs: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VerticalSplitting {
    pub genus: u64,
    pub chi: i64,
    pub spec: VerticalSplittingSpec,
    /// The splitting surface: one boundary-parallel vertical torus per
    /// V-side fiber or boundary, tubed together along the spine arcs.
    pub surface: SurfacePiece,
}

/// Number of arcs `|Γ|` in the base whose complement is a regular
/// neighbourhood of the W-side cone points and boundaries.
///
/// Removing the `i` V-side cone points' disks drops `χ` by `i`; each arc then
/// raises it by one until it reaches the target (a disk per W-side cone point
/// and an annulus per W-side boundary, or a single disk).
pub fn spine_arc_count(v: &VertexManifold, i: u32, j: u32) -> Result<u64> {
    if v.kind != VertexKind::Seifert {
        return Err(Error::NotSeifert);
    }
    let n = v.exceptional.len() as u32;
    let m = v.boundary_count;
    if i > n {
        return Err(Error::InvalidPartition(format!(
            "{i} fibers in V but only {n} exist"
        )));
    }
    if j == 0 || j > m {
        return Err(Error::InvalidPartition(format!(
            "boundaries in V must be 1..={m}, got {j}"
        )));
    }
    let w_cones = (n - i) as i64;
    let w_bounds = (m - j) as i64;
    let target = if w_cones + w_bounds > 0 { w_cones } else { 1 };
    let arcs = target - euler_char_base(v) + i as i64;
    if arcs < 0 {
        return Err(Error::NoSpine);
    }
    Ok(arcs as u64)
}

fn check_subset(what: &str, set: &BTreeSet<u32>, max: u32) -> Result<()> {
    match set.iter().find(|&&x| x == 0 || x > max) {
        Some(x) => Err(Error::InvalidPartition(format!(
            "{what} index {x} not in 1..={max}"
        ))),
        None => Ok(()),
    }
}

/// The vertical splitting with the given fibers and boundaries in `V`.
pub fn vertical_splitting(
    v: &VertexManifold,
    fibers_in_v: &BTreeSet<u32>,
    boundaries_in_v: &BTreeSet<u32>,
) -> Result<VerticalSplitting> {
    if v.kind != VertexKind::Seifert {
        return Err(Error::NotSeifert);
    }
    check_subset("fiber", fibers_in_v, v.exceptional.len() as u32)?;
    check_subset("boundary", boundaries_in_v, v.boundary_count)?;
    let i = fibers_in_v.len() as u32;
    let j = boundaries_in_v.len() as u32;
    let arcs = spine_arc_count(v, i, j)?;
    // V is a union of i + j solid tori / collars joined by the arcs
    if arcs + 1 < (i + j) as u64 {
        return Err(Error::DisconnectedSplitting);
    }
    let tori: Vec<BaseCurve> = boundaries_in_v
        .iter()
        .map(|&b| BaseSide {
            exceptional: BTreeSet::new(),
            boundaries: [b].into(),
        })
        .chain(fibers_in_v.iter().map(|&f| BaseSide::cone_points(&[f])))
        .map(|encloses| BaseCurve::Loop { encloses })
        .collect();
    let chi = -2 * arcs as i64;
    let surface = SurfacePiece {
        tag: if arcs == 0 {
            PieceTag::Vertical
        } else {
            PieceTag::Pseudovertical
        },
        chi,
        boundary: Default::default(),
        components: vec![ComponentSummary { chi, circles: 0 }],
        detail: PieceDetail::Pseudovertical {
            base: tori,
            arcs: arcs as usize,
        },
    };
    Ok(VerticalSplitting {
        genus: 1 + arcs,
        chi,
        spec: VerticalSplittingSpec {
            vertex: v.clone(),
            fibers_in_v: fibers_in_v.clone(),
            boundaries_in_v: boundaries_in_v.clone(),
            spine_arcs: arcs,
        },
        surface,
    })
}

/// Every vertical splitting of `v`, one per partition with at least one
/// boundary in `V`, in lexicographic partition order.
pub fn all_vertical_splittings(v: &VertexManifold) -> Result<Vec<VerticalSplitting>> {
    if v.kind != VertexKind::Seifert {
        return Err(Error::NotSeifert);
    }
    let n = v.exceptional.len() as u32;
    let m = v.boundary_count;
    let mut out = Vec::new();
    for bmask in 1u64..(1 << m) {
        let bs: BTreeSet<u32> = (0..m)
            .filter(|k| bmask >> k & 1 == 1)
            .map(|k| k + 1)
            .collect();
        for fmask in 0u64..(1 << n) {
            let fs: BTreeSet<u32> = (0..n)
                .filter(|k| fmask >> k & 1 == 1)
                .map(|k| k + 1)
                .collect();
            match vertical_splitting(v, &fs, &bs) {
                Ok(s) => out.push(s),
                Err(Error::DisconnectedSplitting | Error::NoSpine) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

/// Standard splitting of `Q x S^1` for closed `Q` of genus `g`: a vertical
/// torus over a small disk, tubed along `2g` arcs that cut `Q \ D` into a
/// disk. Returns `(genus, chi)`.
pub fn product_times_circle_splitting(g: u32) -> Result<(u64, i64)> {
    if g == 0 {
        return Err(Error::SphereBaseUnsupported);
    }
    let arcs = 2 * g as u64;
    Ok((1 + arcs, -2 * arcs as i64))
}

/// Witness surface for [`product_times_circle_splitting`].
pub fn product_times_circle_surface(g: u32) -> Result<SurfacePiece> {
    let (_, chi) = product_times_circle_splitting(g)?;
    Ok(SurfacePiece {
        tag: PieceTag::Pseudovertical,
        chi,
        boundary: Default::default(),
        components: vec![ComponentSummary { chi, circles: 0 }],
        detail: PieceDetail::Pseudovertical {
            base: vec![BaseCurve::Loop {
                encloses: BaseSide::default(),
            }],
            arcs: 2 * g as usize,
        },
    })
}

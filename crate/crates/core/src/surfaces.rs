//! Surfaces inside a single vertex manifold: vertical, pseudovertical,
//! horizontal and pseudohorizontal pieces, with exact Euler characteristic
//! and boundary data.
//!
//! Curves and arcs in the base orbifold are described combinatorially: an
//! arc names its endpoint boundaries and, when both ends lie on the same
//! boundary, the cone points and boundaries it cuts off. Geometry is never
//! materialized; only `chi` and boundary multislopes are derived.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{orbifold_euler_char, VertexKind, VertexManifold};
use crate::slope::Slope;
use crate::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceTag {
    Vertical,
    Pseudovertical,
    Horizontal,
    Pseudohorizontal,
    AnnuliPattern,
    CrossPattern,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundaryCurves {
    pub slope: Slope,
    pub count: u64,
}

/// Intersection of a piece with each boundary component; missing keys are
/// boundaries the piece does not meet.
pub type MultiSlope = BTreeMap<u32, BoundaryCurves>;

/// One side of a curve or arc in the base: the cone points (exceptional
/// indices) and boundary components it contains.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BaseSide {
    #[serde(default)]
    pub exceptional: BTreeSet<u32>,
    #[serde(default)]
    pub boundaries: BTreeSet<u32>,
}

impl BaseSide {
    pub fn cone_points(points: &[u32]) -> Self {
        Self {
            exceptional: points.iter().copied().collect(),
            boundaries: BTreeSet::new(),
        }
    }

    fn is_empty(&self) -> bool {
        self.exceptional.is_empty() && self.boundaries.is_empty()
    }
}

/// Combinatorial description of a curve in the base orbifold, whose preimage
/// is a vertical annulus (arcs) or vertical torus (loops).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseCurve {
    /// Properly embedded arc from `b_from` to `b_to`. For `from == to`,
    /// `cuts_off` is the side not containing the rest of that boundary.
    Arc {
        from: u32,
        to: u32,
        #[serde(default)]
        cuts_off: BaseSide,
    },
    /// Simple closed curve bounding `encloses` on one side.
    Loop { encloses: BaseSide },
}

/// Surgery arc for pseudovertical pieces. `ends` index into the base list;
/// `separates` is the set of cone points on one side of its projection.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurgeryArc {
    pub ends: (usize, usize),
    #[serde(default)]
    pub separates: BTreeSet<u32>,
}

/// Fiber drilled out for a pseudohorizontal piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberChoice {
    /// Exceptional fiber `f_i` (1-based).
    Exceptional(u32),
    Regular,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PieceDetail {
    Vertical {
        curves: Vec<BaseCurve>,
    },
    Pseudovertical {
        base: Vec<BaseCurve>,
        arcs: usize,
    },
    Horizontal {
        degree: u64,
        coeffs: Vec<i64>,
        sheets: u64,
    },
    ProductHorizontal {
        copies: u32,
    },
    Pseudohorizontal {
        fiber: FiberChoice,
        degree: u64,
        coeffs: Vec<i64>,
        collar: BoundaryCurves,
    },
}

/// Connected component summary: Euler characteristic and number of
/// boundary circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub chi: i64,
    pub circles: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfacePiece {
    pub tag: PieceTag,
    pub chi: i64,
    pub boundary: MultiSlope,
    pub components: Vec<ComponentSummary>,
    pub detail: PieceDetail,
}

fn require_seifert(v: &VertexManifold) -> Result<()> {
    if v.kind != VertexKind::Seifert {
        return Err(Error::NotSeifert);
    }
    Ok(())
}

fn check_side(v: &VertexManifold, side: &BaseSide, what: &str) -> Result<()> {
    let n = v.exceptional.len() as u32;
    if let Some(e) = side.exceptional.iter().find(|&&e| e == 0 || e > n) {
        return Err(Error::InvalidReference(format!(
            "{what}: exceptional point {e} not in 1..={n}"
        )));
    }
    if let Some(b) = side
        .boundaries
        .iter()
        .find(|&&b| b == 0 || b > v.boundary_count)
    {
        return Err(Error::InvalidReference(format!(
            "{what}: boundary {b} not in 1..={}",
            v.boundary_count
        )));
    }
    Ok(())
}

/// Everything in the base not on `side`, ignoring `skip` (the boundary an arc
/// lives on). Reports whether that complement is a bare disk.
fn complement_is_trivial(v: &VertexManifold, side: &BaseSide, skip: Option<u32>) -> bool {
    let n = v.exceptional.len();
    let others = v
        .boundaries()
        .filter(|b| Some(*b) != skip && !side.boundaries.contains(b))
        .count();
    v.base_genus == 0 && side.exceptional.len() == n && others == 0
}

fn check_curve(v: &VertexManifold, c: &BaseCurve, i: usize) -> Result<()> {
    let what = format!("curve {i}");
    match c {
        BaseCurve::Arc { from, to, cuts_off } => {
            for b in [from, to] {
                if *b == 0 || *b > v.boundary_count {
                    return Err(Error::InvalidReference(format!(
                        "{what}: boundary {b} not in 1..={}",
                        v.boundary_count
                    )));
                }
            }
            if from == to {
                check_side(v, cuts_off, &what)?;
                if cuts_off.boundaries.contains(from) {
                    return Err(Error::InvalidReference(format!(
                        "{what}: an arc cannot cut off its own boundary"
                    )));
                }
                if cuts_off.is_empty() || complement_is_trivial(v, cuts_off, Some(*from)) {
                    return Err(Error::Inessential(format!("{what}: arc cuts off a disk")));
                }
            }
        }
        BaseCurve::Loop { encloses } => {
            check_side(v, encloses, &what)?;
            if encloses.is_empty() || complement_is_trivial(v, encloses, None) {
                return Err(Error::Inessential(format!("{what}: loop bounds a disk")));
            }
        }
    }
    Ok(())
}

/// Fiber-slope boundary data and component list for a vertical collection.
fn vertical_data(curves: &[BaseCurve]) -> (MultiSlope, Vec<ComponentSummary>) {
    let mut ends: BTreeMap<u32, u64> = BTreeMap::new();
    let mut comps = Vec::new();
    for c in curves {
        match c {
            BaseCurve::Arc { from, to, .. } => {
                *ends.entry(*from).or_default() += 1;
                *ends.entry(*to).or_default() += 1;
                comps.push(ComponentSummary { chi: 0, circles: 2 });
            }
            BaseCurve::Loop { .. } => comps.push(ComponentSummary { chi: 0, circles: 0 }),
        }
    }
    let boundary = ends
        .into_iter()
        .map(|(b, count)| {
            (
                b,
                BoundaryCurves {
                    slope: Slope::FIBER,
                    count,
                },
            )
        })
        .collect();
    (boundary, comps)
}

/// Vertical annuli and tori over a collection of disjoint essential arcs and
/// curves in the base.
pub fn vertical_piece(v: &VertexManifold, curves: &[BaseCurve]) -> Result<SurfacePiece> {
    require_seifert(v)?;
    if curves.is_empty() {
        return Err(Error::EmptySurface);
    }
    for (i, c) in curves.iter().enumerate() {
        check_curve(v, c, i)?;
    }
    let (boundary, components) = vertical_data(curves);
    Ok(SurfacePiece {
        tag: PieceTag::Vertical,
        chi: 0,
        boundary,
        components,
        detail: PieceDetail::Vertical {
            curves: curves.to_vec(),
        },
    })
}

/// Degrees `n <= n_max` of horizontal surfaces: multiples of the lcm of the
/// exceptional multiplicities.
pub fn horizontal_admissible_degrees(v: &VertexManifold, n_max: u64) -> Result<Vec<u64>> {
    require_seifert(v)?;
    if v.boundary_count == 0 {
        return Err(Error::ClosedVertex);
    }
    let l = v.multiplicity_lcm();
    Ok((1..=n_max).filter(|n| n % l == 0).collect())
}

/// The framing sum a degree-`n` horizontal surface must have.
pub fn required_framing_sum(v: &VertexManifold, n: u64) -> Rational64 {
    -Rational64::from_integer(n as i64) * v.beta_sum()
}

/// Number of parallel sheets of a degree-`n` horizontal surface with the
/// given framing: the largest common divisor of `n` and all coefficients
/// that leaves an admissible degree per sheet. Sheets are parallel fibers of
/// one fibration over the circle.
pub fn horizontal_sheets(v: &VertexManifold, n: u64, coeffs: &[i64]) -> u64 {
    let l = v.multiplicity_lcm();
    let g = coeffs.iter().fold(n, |acc, c| acc.gcd(&c.unsigned_abs()));
    (1..=g)
        .rev()
        .find(|d| g % d == 0 && (n / d).is_multiple_of(l))
        .unwrap_or(1)
}

struct HorizontalData {
    chi: i64,
    sheets: u64,
    boundary: Vec<BoundaryCurves>,
}

fn horizontal_data(v: &VertexManifold, n: u64, coeffs: &[i64]) -> Result<HorizontalData> {
    require_seifert(v)?;
    if v.boundary_count == 0 {
        return Err(Error::ClosedVertex);
    }
    let lcm = v.multiplicity_lcm();
    if n == 0 || !n.is_multiple_of(lcm) {
        return Err(Error::InadmissibleDegree { degree: n, lcm });
    }
    if coeffs.len() != v.boundary_count as usize {
        return Err(Error::FramingArity {
            expected: v.boundary_count as usize,
            got: coeffs.len(),
        });
    }
    let need = required_framing_sum(v, n);
    let got: i64 = coeffs.iter().sum();
    if Rational64::from_integer(got) != need {
        return Err(Error::EulerNumberObstruction {
            got: got.to_string(),
            need: need.to_string(),
        });
    }
    let chi = Rational64::from_integer(n as i64) * orbifold_euler_char(v)?;
    assert!(chi.is_integer(), "admissible degree gives integral chi");
    let boundary = coeffs
        .iter()
        .map(|&c| {
            let (slope, count) = Slope::with_content(c, n as i64)?;
            Ok(BoundaryCurves { slope, count })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HorizontalData {
        chi: chi.to_integer(),
        sheets: horizontal_sheets(v, n, coeffs),
        boundary,
    })
}

fn horizontal_components(
    chi: i64,
    sheets: u64,
    boundary: &[BoundaryCurves],
) -> Vec<ComponentSummary> {
    let circles: u64 = boundary.iter().map(|b| b.count).sum();
    (0..sheets)
        .map(|_| ComponentSummary {
            chi: chi / sheets as i64,
            circles: circles / sheets,
        })
        .collect()
}

/// Horizontal surface of degree `n` with framing coefficient `coeffs[j-1]`
/// at boundary `j`. Boundary `j` carries `gcd(c_j, n)` copies of the
/// primitive part of `(c_j, n)`.
pub fn horizontal_piece(v: &VertexManifold, n: u64, coeffs: &[i64]) -> Result<SurfacePiece> {
    let h = horizontal_data(v, n, coeffs)?;
    let components = horizontal_components(h.chi, h.sheets, &h.boundary);
    Ok(SurfacePiece {
        tag: PieceTag::Horizontal,
        chi: h.chi,
        boundary: (1..).zip(h.boundary).collect(),
        components,
        detail: PieceDetail::Horizontal {
            degree: n,
            coeffs: coeffs.to_vec(),
            sheets: h.sheets,
        },
    })
}

/// `copies` parallel copies of (surface) x {point} in a product vertex.
pub fn product_horizontal(v: &VertexManifold, copies: u32) -> Result<SurfacePiece> {
    if v.kind != VertexKind::Product {
        return Err(Error::NotProduct);
    }
    if !(1..=2).contains(&copies) {
        return Err(Error::InvalidCopies(copies));
    }
    let base = crate::model::euler_char_base(v);
    if base > 0 {
        return Err(Error::SphereOrDisk(base * copies as i64));
    }
    let boundary = v
        .boundaries()
        .map(|b| {
            (
                b,
                BoundaryCurves {
                    slope: Slope::SECTION,
                    count: copies as u64,
                },
            )
        })
        .collect();
    Ok(SurfacePiece {
        tag: PieceTag::Horizontal,
        chi: base * copies as i64,
        boundary,
        components: (0..copies)
            .map(|_| ComponentSummary {
                chi: base,
                circles: v.boundary_count as u64,
            })
            .collect(),
        detail: PieceDetail::ProductHorizontal { copies },
    })
}

/// Two cone-point splits are realizable by disjoint arcs iff one of the four
/// quadrants they cut the cone points into is empty.
fn compatible_splits(a: &BTreeSet<u32>, b: &BTreeSet<u32>, universe: &BTreeSet<u32>) -> bool {
    let ac: BTreeSet<u32> = universe.difference(a).copied().collect();
    let bc: BTreeSet<u32> = universe.difference(b).copied().collect();
    a.is_disjoint(b) || a.is_disjoint(&bc) || ac.is_disjoint(b) || ac.is_disjoint(&bc)
}

/// Ambient 1-surgery on a vertical collection along `arcs`.
pub fn pseudovertical_piece(
    v: &VertexManifold,
    base: &[BaseCurve],
    arcs: &[SurgeryArc],
) -> Result<SurfacePiece> {
    require_seifert(v)?;
    if base.is_empty() {
        return Err(Error::EmptySurface);
    }
    for (i, c) in base.iter().enumerate() {
        check_curve(v, c, i)?;
    }
    let universe: BTreeSet<u32> = (1..=v.exceptional.len() as u32).collect();
    for (i, a) in arcs.iter().enumerate() {
        for e in [a.ends.0, a.ends.1] {
            if e >= base.len() {
                return Err(Error::InvalidReference(format!(
                    "arc {i}: endpoint component {e} not in 0..{}",
                    base.len()
                )));
            }
        }
        if let Some(p) = a.separates.difference(&universe).next() {
            return Err(Error::InvalidReference(format!(
                "arc {i}: exceptional point {p}"
            )));
        }
    }
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if !compatible_splits(&arcs[i].separates, &arcs[j].separates, &universe) {
                return Err(Error::ArcsCrossing(i, j));
            }
        }
    }

    let (boundary, base_comps) = vertical_data(base);
    let mut uf = UnionFind::new(base.len());
    for a in arcs {
        uf.union(a.ends.0, a.ends.1);
    }
    let mut merged: BTreeMap<usize, ComponentSummary> = BTreeMap::new();
    for (i, c) in base_comps.iter().enumerate() {
        let e = merged
            .entry(uf.find(i))
            .or_insert(ComponentSummary { chi: 0, circles: 0 });
        e.circles += c.circles;
    }
    for a in arcs {
        merged
            .get_mut(&uf.find(a.ends.0))
            .expect("root present")
            .chi -= 2;
    }
    let tag = if arcs.is_empty() {
        PieceTag::Vertical
    } else {
        PieceTag::Pseudovertical
    };
    Ok(SurfacePiece {
        tag,
        chi: -2 * arcs.len() as i64,
        boundary,
        components: merged.into_values().collect(),
        detail: PieceDetail::Pseudovertical {
            base: base.to_vec(),
            arcs: arcs.len(),
        },
    })
}

/// The vertex with `fiber` drilled out: one fewer exceptional fiber (for
/// exceptional choices) and a new last boundary component.
pub fn drilled(v: &VertexManifold, fiber: FiberChoice) -> Result<VertexManifold> {
    require_seifert(v)?;
    let mut out = v.clone();
    match fiber {
        FiberChoice::Exceptional(i) => {
            if i == 0 || i as usize > v.exceptional.len() {
                return Err(Error::InvalidReference(format!(
                    "exceptional fiber {i} not in 1..={}",
                    v.exceptional.len()
                )));
            }
            out.exceptional.remove(i as usize - 1);
        }
        FiberChoice::Regular => {
            if v.boundary_count == 0 {
                return Err(Error::ClosedVertexUnsupported);
            }
        }
    }
    out.boundary_count += 1;
    Ok(out)
}

/// Meridian slope of the drilled fiber on the new boundary torus.
pub fn drilled_meridian(v: &VertexManifold, fiber: FiberChoice) -> Slope {
    match fiber {
        FiberChoice::Exceptional(i) => {
            let s = v.exceptional[i as usize - 1];
            Slope::new(s.beta, s.alpha).expect("alpha >= 2")
        }
        FiberChoice::Regular => Slope::SECTION,
    }
}

/// Horizontal away from `fiber`, a collar of `fiber` near it.
///
/// `coeffs` holds one framing coefficient per original boundary followed by
/// the coefficient on the drilled torus. When the vertex has boundary the
/// framing is fixed and the meridian of the drilled fiber must cross each
/// collar curve once; for closed vertices only the curve count is checked.
pub fn pseudohorizontal_piece(
    v: &VertexManifold,
    fiber: FiberChoice,
    n: u64,
    coeffs: &[i64],
) -> Result<SurfacePiece> {
    let dv = drilled(v, fiber)?;
    let h = horizontal_data(&dv, n, coeffs)?;
    let collar = *h.boundary.last().expect("drilled vertex has boundary");
    if collar.count != 2 {
        return Err(Error::CollarMismatch(collar.count));
    }
    if v.boundary_count > 0 {
        let meets = crate::slope::intersection_number(drilled_meridian(v, fiber), collar.slope);
        if meets != 1 {
            return Err(Error::CollarMeridian(meets));
        }
    }
    let mut components = horizontal_components(h.chi, h.sheets, &h.boundary);
    // the collar annulus joins the sheets carrying the two collar curves
    if components.len() >= 2 {
        let b = components.remove(1);
        components[0].chi += b.chi;
        components[0].circles += b.circles;
    }
    for c in components.iter_mut().take(1) {
        c.circles -= 2;
    }
    let boundary = (1..)
        .zip(h.boundary.iter().copied())
        .take(v.boundary_count as usize)
        .collect();
    Ok(SurfacePiece {
        tag: PieceTag::Pseudohorizontal,
        chi: h.chi,
        boundary,
        components,
        detail: PieceDetail::Pseudohorizontal {
            fiber,
            degree: n,
            coeffs: coeffs.to_vec(),
            collar,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(a: i64, b: i64, count: u64) -> BoundaryCurves {
        BoundaryCurves {
            slope: Slope::new(a, b).unwrap(),
            count,
        }
    }

    #[test]
    fn vertical_annulus_over_spanning_arc() {
        let v = VertexManifold::seifert(0, 2, &[]);
        let p = vertical_piece(
            &v,
            &[BaseCurve::Arc {
                from: 1,
                to: 2,
                cuts_off: BaseSide::default(),
            }],
        )
        .unwrap();
        assert_eq!(p.tag, PieceTag::Vertical);
        assert_eq!(p.chi, 0);
        assert_eq!(
            p.boundary,
            MultiSlope::from([(1, bc(1, 0, 1)), (2, bc(1, 0, 1))])
        );
    }

    #[test]
    fn vertical_torus_around_one_cone_point() {
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (3, 1)]);
        let p = vertical_piece(
            &v,
            &[BaseCurve::Loop {
                encloses: BaseSide::cone_points(&[1]),
            }],
        )
        .unwrap();
        assert_eq!(p.chi, 0);
        assert!(p.boundary.is_empty());
        assert_eq!(p.components, vec![ComponentSummary { chi: 0, circles: 0 }]);
    }

    #[test]
    fn vertical_errors() {
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (3, 1)]);
        assert_eq!(vertical_piece(&v, &[]), Err(Error::EmptySurface));
        let bad = BaseCurve::Loop {
            encloses: BaseSide::default(),
        };
        assert!(matches!(
            vertical_piece(&v, &[bad]),
            Err(Error::Inessential(_))
        ));
        let bad = BaseCurve::Loop {
            encloses: BaseSide::cone_points(&[3]),
        };
        assert!(matches!(
            vertical_piece(&v, &[bad]),
            Err(Error::InvalidReference(_))
        ));
        let bad = BaseCurve::Arc {
            from: 1,
            to: 1,
            cuts_off: BaseSide::cone_points(&[1, 2]),
        };
        assert!(matches!(
            vertical_piece(&v, &[bad]),
            Err(Error::Inessential(_))
        ));
    }

    #[test]
    fn admissible_degrees() {
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (2, 1), (2, 1)]);
        assert_eq!(horizontal_admissible_degrees(&v, 6).unwrap(), vec![2, 4, 6]);
        let v = VertexManifold::seifert(0, 2, &[]);
        assert_eq!(horizontal_admissible_degrees(&v, 3).unwrap(), vec![1, 2, 3]);
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (3, 1)]);
        assert!(horizontal_admissible_degrees(&v, 5).unwrap().is_empty());
        let v = VertexManifold::seifert(1, 0, &[]);
        assert_eq!(
            horizontal_admissible_degrees(&v, 5),
            Err(Error::ClosedVertex)
        );
    }

    #[test]
    fn horizontal_once_punctured_torus() {
        let v = VertexManifold::seifert(1, 1, &[]);
        let p = horizontal_piece(&v, 1, &[0]).unwrap();
        assert_eq!(p.chi, -1);
        assert_eq!(p.boundary, MultiSlope::from([(1, bc(0, 1, 1))]));
    }

    #[test]
    fn horizontal_four_fold_cover_of_three_cone_disk() {
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (2, 1), (2, 1)]);
        let p = horizontal_piece(&v, 4, &[-6]).unwrap();
        assert_eq!(p.chi, -2);
        assert_eq!(p.boundary, MultiSlope::from([(1, bc(-3, 2, 2))]));
        // two once-punctured tori
        assert_eq!(
            p.components,
            vec![
                ComponentSummary {
                    chi: -1,
                    circles: 1
                };
                2
            ]
        );
    }

    #[test]
    fn horizontal_obstruction() {
        let v = VertexManifold::seifert(0, 2, &[]);
        assert!(matches!(
            horizontal_piece(&v, 2, &[1, 0]),
            Err(Error::EulerNumberObstruction { .. })
        ));
        let v = VertexManifold::seifert(0, 1, &[(2, 1)]);
        assert!(matches!(
            horizontal_piece(&v, 3, &[0]),
            Err(Error::InadmissibleDegree { .. })
        ));
    }

    #[test]
    fn product_horizontals() {
        let p = product_horizontal(&VertexManifold::product(1, 1), 2).unwrap();
        assert_eq!(p.chi, -2);
        assert_eq!(p.boundary[&1], bc(0, 1, 2));
        assert_eq!(
            product_horizontal(&VertexManifold::product(0, 3), 1)
                .unwrap()
                .chi,
            -1
        );
        assert_eq!(
            product_horizontal(&VertexManifold::product(0, 1), 2),
            Err(Error::SphereOrDisk(2))
        );
        assert_eq!(
            product_horizontal(&VertexManifold::product(0, 3), 3),
            Err(Error::InvalidCopies(3))
        );
    }

    #[test]
    fn pseudovertical_examples() {
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (2, 1)]);
        let torus = BaseCurve::Loop {
            encloses: BaseSide::cone_points(&[1, 2]),
        };
        let alpha = SurgeryArc {
            ends: (0, 0),
            separates: [1].into(),
        };
        let p = pseudovertical_piece(&v, std::slice::from_ref(&torus), &[alpha]).unwrap();
        assert_eq!(p.chi, -2);
        assert_eq!(p.tag, PieceTag::Pseudovertical);
        assert_eq!(
            p.components,
            vec![ComponentSummary {
                chi: -2,
                circles: 0
            }]
        );

        let t1 = BaseCurve::Loop {
            encloses: BaseSide::cone_points(&[1]),
        };
        let t2 = BaseCurve::Loop {
            encloses: BaseSide::cone_points(&[2]),
        };
        let arcs = [
            SurgeryArc {
                ends: (0, 1),
                separates: [1].into(),
            },
            SurgeryArc {
                ends: (0, 1),
                separates: [2].into(),
            },
        ];
        let p = pseudovertical_piece(&v, &[t1, t2], &arcs).unwrap();
        assert_eq!(p.chi, -4);
        assert_eq!(p.components.len(), 1);
    }

    #[test]
    fn pseudovertical_without_arcs_is_vertical() {
        let v = VertexManifold::seifert(0, 3, &[]);
        let a = BaseCurve::Arc {
            from: 1,
            to: 2,
            cuts_off: BaseSide::default(),
        };
        let pv = pseudovertical_piece(&v, std::slice::from_ref(&a), &[]).unwrap();
        let vv = vertical_piece(&v, &[a]).unwrap();
        assert_eq!(
            (pv.chi, &pv.boundary, &pv.components),
            (vv.chi, &vv.boundary, &vv.components)
        );
    }

    #[test]
    fn pseudovertical_errors() {
        let v = VertexManifold::seifert(0, 1, &[(2, 1), (2, 1), (3, 1), (5, 2)]);
        let t = BaseCurve::Loop {
            encloses: BaseSide::cone_points(&[1, 2, 3, 4]),
        };
        let bad_end = SurgeryArc {
            ends: (0, 3),
            separates: BTreeSet::new(),
        };
        assert!(matches!(
            pseudovertical_piece(&v, std::slice::from_ref(&t), &[bad_end]),
            Err(Error::InvalidReference(_))
        ));
        let crossing = [
            SurgeryArc {
                ends: (0, 0),
                separates: [1, 2].into(),
            },
            SurgeryArc {
                ends: (0, 0),
                separates: [2, 3].into(),
            },
        ];
        assert_eq!(
            pseudovertical_piece(&v, &[t], &crossing),
            Err(Error::ArcsCrossing(0, 1))
        );
    }

    #[test]
    fn pseudohorizontal_drill_fourth_fiber() {
        // base sphere, fibers 1/2, 1/2, 1/2, 1/3
        let v = VertexManifold::seifert(0, 0, &[(2, 1), (2, 1), (2, 1), (3, 1)]);
        let p = pseudohorizontal_piece(&v, FiberChoice::Exceptional(4), 4, &[-6]).unwrap();
        assert_eq!(p.chi, -2);
        assert!(p.boundary.is_empty());
        assert_eq!(
            p.components,
            vec![ComponentSummary {
                chi: -2,
                circles: 0
            }]
        );
    }

    #[test]
    fn pseudohorizontal_gates() {
        let closed = VertexManifold::seifert(1, 0, &[]);
        assert_eq!(
            pseudohorizontal_piece(&closed, FiberChoice::Regular, 1, &[0]),
            Err(Error::ClosedVertexUnsupported)
        );
        // degree 4 with zero framing on the drilled torus of (once-punctured torus) x S^1
        let v = VertexManifold::seifert(1, 1, &[]);
        assert_eq!(
            pseudohorizontal_piece(&v, FiberChoice::Regular, 4, &[0, 0]),
            Err(Error::CollarMismatch(4))
        );
        assert!(pseudohorizontal_piece(&v, FiberChoice::Regular, 2, &[-2, 2]).is_ok());
        assert_eq!(
            pseudohorizontal_piece(&v, FiberChoice::Regular, 6, &[-6, 6]),
            Err(Error::CollarMismatch(6))
        );
    }
}

//! Randomized invariants, 10^4 cases each.

use std::sync::OnceLock;

use heegaard_core::assembly::{
    amalgamate, enumerate_standard, Bounds, CandidateSplitting, Color, GeneralizedSplitting,
};
use heegaard_core::edge::PatternKind;
use heegaard_core::model::{EdgeManifold, GraphManifoldSpec, VertexManifold};
use heegaard_core::slope::{intersection_number, transport_slope, GluingMap, Slope};
use heegaard_core::splitting::spine_arc_count;
use heegaard_core::surfaces::{drilled, PieceDetail};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: u32 = 10_000;

fn unimodular() -> impl Strategy<Value = GluingMap> {
    // products of elementary matrices reach all of GL(2, Z)
    let step = (0u8..4, -4i64..=4).prop_map(|(kind, k)| match kind {
        0 => GluingMap([[1, k], [0, 1]]),
        1 => GluingMap([[1, 0], [k, 1]]),
        2 => GluingMap::SWAP,
        _ => GluingMap([[-1, 0], [0, 1]]),
    });
    prop::collection::vec(step, 1..6)
        .prop_map(|ms| ms.iter().fold(GluingMap::IDENTITY, |acc, m| acc.compose(m)))
}

fn slope() -> impl Strategy<Value = Slope> {
    (-50i64..=50, -50i64..=50).prop_filter_map("nonzero", |(a, b)| Slope::new(a, b).ok())
}

/// Independent Euler characteristic of one vertex piece by counting cells of
/// the branched cover, tubes and punctures.
fn piece_chi_oracle(v: &VertexManifold, detail: &PieceDetail) -> i64 {
    let branched = |v: &VertexManifold, n: u64| {
        let punctured =
            2 - 2 * v.base_genus as i64 - v.boundary_count as i64 - v.exceptional.len() as i64;
        let over_cones: i64 = v.exceptional.iter().map(|s| n as i64 / s.alpha).sum();
        n as i64 * punctured + over_cones
    };
    match detail {
        PieceDetail::Vertical { .. } => 0,
        PieceDetail::Pseudovertical { arcs, .. } => -2 * *arcs as i64,
        PieceDetail::Horizontal { degree, .. } => branched(v, *degree),
        PieceDetail::ProductHorizontal { copies } => {
            *copies as i64 * (2 - 2 * v.base_genus as i64 - v.boundary_count as i64)
        }
        PieceDetail::Pseudohorizontal { fiber, degree, .. } => {
            // the collar annulus adds nothing
            branched(&drilled(v, *fiber).unwrap(), *degree)
        }
    }
}

fn pattern_chi_oracle(kind: PatternKind) -> i64 {
    match kind {
        PatternKind::Annuli => 0,
        PatternKind::AnnuliWithTube | PatternKind::Cross => -2,
    }
}

const INVARIANTS: [(i64, i64); 5] = [(2, 1), (3, 1), (3, 2), (5, 2), (4, 1)];
const GLUINGS: [GluingMap; 6] = [
    GluingMap::SWAP,
    GluingMap([[1, 1], [0, 1]]),
    GluingMap([[1, 2], [0, 1]]),
    GluingMap([[0, 1], [1, 1]]),
    GluingMap([[1, 1], [1, 0]]),
    GluingMap([[2, 1], [1, 1]]),
];

fn random_vertex(rng: &mut ChaCha8Rng, boundaries: u32, max_genus: u32) -> VertexManifold {
    let cones: Vec<(i64, i64)> = (0..rng.gen_range(0..=2))
        .map(|_| INVARIANTS[rng.gen_range(0..INVARIANTS.len())])
        .collect();
    VertexManifold::seifert(rng.gen_range(0..=max_genus), boundaries, &cones)
}

/// Seeded pool of small specs (at most 3 vertices and edges together) and all
/// their candidates.
fn pool() -> &'static Vec<(GraphManifoldSpec, CandidateSplitting)> {
    static POOL: OnceLock<Vec<(GraphManifoldSpec, CandidateSplitting)>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let bounds = Bounds {
            n_max: 6,
            max_arcs: 4,
            coeff_max: 2,
            ..Bounds::default()
        };
        let mut out = Vec::new();
        for k in 0..36 {
            let spec = match k % 3 {
                0 => {
                    let m = rng.gen_range(1..=2);
                    let ext: Vec<u32> = (1..=m).collect();
                    GraphManifoldSpec::new(format!("s{k}"))
                        .vertex("v", random_vertex(&mut rng, m, 1).with_exterior(&ext))
                }
                1 => {
                    let a = random_vertex(&mut rng, 1, 1);
                    let b = random_vertex(&mut rng, 1, 1);
                    let g = GLUINGS[rng.gen_range(0..GLUINGS.len())];
                    GraphManifoldSpec::new(format!("s{k}"))
                        .vertex("a", a)
                        .vertex("b", b)
                        .edge("e", EdgeManifold::torus(("a", 1), ("b", 1), g))
                }
                _ => {
                    let v = random_vertex(&mut rng, 3, 0).with_exterior(&[1]);
                    let g = GLUINGS[rng.gen_range(0..GLUINGS.len())];
                    GraphManifoldSpec::new(format!("s{k}"))
                        .vertex("v", v)
                        .edge("e", EdgeManifold::torus(("v", 2), ("v", 3), g))
                }
            };
            for c in enumerate_standard(&spec, &bounds).unwrap() {
                out.push((spec.clone(), c));
            }
        }
        assert!(out.len() > 50, "pool too small: {}", out.len());
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn transport_preserves_intersections(m in unimodular(), s in slope(), t in slope()) {
        prop_assert_eq!(
            intersection_number(transport_slope(&m, s), transport_slope(&m, t)),
            intersection_number(s, t)
        );
    }

    #[test]
    fn amalgamate_identity(k in -20i64..=1) {
        let x = 2 * k;
        let gs = GeneralizedSplitting::new(vec![x], vec![]).unwrap();
        prop_assert_eq!(amalgamate(&gs).unwrap(), (x, (1 - k) as u64));
    }

    #[test]
    fn amalgamate_reversal(levels in prop::collection::vec((-10i64..=0, -3i64..=0), 1..6)) {
        let thick: Vec<i64> = levels.iter().map(|l| 2 * l.0).collect();
        let thin: Vec<i64> = levels.iter().skip(1).map(|l| 2 * l.1).collect();
        let gs = GeneralizedSplitting::new(thick, thin).unwrap();
        prop_assert_eq!(amalgamate(&gs), amalgamate(&gs.reversed()));
    }

    #[test]
    fn spine_grows_with_w_fibers(
        g in 0u32..4, m in 1u32..5, n in 0usize..5, i_frac in 0u32..=100, j_frac in 0u32..=100,
    ) {
        let cones = vec![(3, 1); n];
        let v = VertexManifold::seifert(g, m, &cones);
        let i = i_frac * n as u32 / 100;
        let j = 1 + j_frac * (m - 1) / 100;
        let more = VertexManifold::seifert(g, m, &vec![(3, 1); n + 1]);
        if let (Ok(a), Ok(b)) = (spine_arc_count(&v, i, j), spine_arc_count(&more, i, j)) {
            // with W already nonempty the extra W-side fiber costs one arc
            if (n as u32 - i) + (m - j) > 0 {
                prop_assert_eq!(b, a + 1);
            } else {
                prop_assert_eq!(b, a);
            }
        }
    }

    #[test]
    fn chi_is_additive(idx in any::<prop::sample::Index>()) {
        let (spec, c) = &pool()[idx.index(pool().len())];
        let mut total = 0;
        for (id, r) in &c.vertices {
            let want = piece_chi_oracle(&spec.vertices[id], &r.piece.detail);
            prop_assert_eq!(r.piece.chi, want, "vertex {} of {}", id, spec.name);
            total += want;
        }
        for p in c.edges.values() {
            prop_assert_eq!(p.chi, pattern_chi_oracle(p.kind));
            total += p.chi;
        }
        prop_assert_eq!(c.chi, total);
        prop_assert_eq!(c.chi, 2 - 2 * c.genus as i64);
    }

    #[test]
    fn candidates_are_bicolored(idx in any::<prop::sample::Index>()) {
        let (_, c) = &pool()[idx.index(pool().len())];
        let colors: std::collections::BTreeSet<Color> = c.bicoloring.values().copied().collect();
        prop_assert_eq!(colors.len(), 2);
        for (port, s) in &c.slots {
            let n = s.regions.len();
            let steps = if s.cyclic { if n > 1 { n } else { 0 } } else { n.saturating_sub(1) };
            for k in 0..steps {
                let (a, b) = (&s.regions[k], &s.regions[(k + 1) % n]);
                prop_assert_ne!(c.bicoloring[a], c.bicoloring[b], "{} slots {} and {}", port, k, (k + 1) % n);
            }
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    let spec = &pool()[0].0;
    let bounds = Bounds::default();
    assert_eq!(
        enumerate_standard(spec, &bounds).unwrap(),
        enumerate_standard(spec, &bounds).unwrap()
    );
}

#[test]
fn larger_bounds_never_raise_the_minimum() {
    let specs: std::collections::BTreeMap<&str, &GraphManifoldSpec> =
        pool().iter().map(|(s, _)| (s.name.as_str(), s)).collect();
    for spec in specs.values() {
        let small = Bounds {
            n_max: 4,
            max_arcs: 2,
            coeff_max: 1,
            ..Bounds::default()
        };
        let large = Bounds {
            n_max: 6,
            max_arcs: 4,
            coeff_max: 2,
            ..Bounds::default()
        };
        let min = |b| {
            enumerate_standard(spec, &b)
                .unwrap()
                .first()
                .map(|c| c.genus)
        };
        if let Some(g) = min(small) {
            assert!(min(large).unwrap() <= g, "{}", spec.name);
        }
    }
}

#[test]
fn pool_covers_the_piece_classes() {
    let mut seen = std::collections::BTreeSet::new();
    for (_, c) in pool() {
        seen.extend(c.vertices.values().map(|r| format!("{:?}", r.piece.tag)));
        seen.extend(c.edges.values().map(|p| format!("{:?}", p.kind)));
    }
    for want in [
        "Vertical",
        "Pseudovertical",
        "Horizontal",
        "Annuli",
        "Cross",
    ] {
        assert!(seen.contains(want), "{want} missing from {seen:?}");
    }
}

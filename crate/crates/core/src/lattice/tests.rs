use super::*;
use proptest::prelude::*;

fn slab(l: u32, t0: i64, t1: i64) -> LatticeSpacetime {
    LatticeSpacetime::slab(l, t0, t1).unwrap()
}

fn set(sites: &[(i64, i64)]) -> SiteSet {
    sites.iter().map(|&(t, x)| Site::new(t, x)).collect()
}

/// Enumerates every inextensible chain by depth-first search.
fn inextensible_chains(m: &LatticeSpacetime) -> Vec<Vec<Site>> {
    fn extend(m: &LatticeSpacetime, path: &mut Vec<Site>, out: &mut Vec<Vec<Site>>) {
        let last = *path.last().unwrap();
        let next: Vec<Site> =
            successors(last, m.circumference()).filter(|s| m.contains(*s)).collect();
        if next.is_empty() {
            out.push(path.clone());
        }
        for s in next {
            path.push(s);
            extend(m, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for &s in m.sites() {
        if predecessors(s, m.circumference()).all(|p| !m.contains(p)) {
            extend(m, &mut vec![s], &mut out);
        }
    }
    out
}

fn cauchy_by_chains(m: &LatticeSpacetime, t0: i64) -> bool {
    !m.row(t0).is_empty()
        && inextensible_chains(m).iter().all(|c| c.iter().filter(|s| s.t == t0).count() == 1)
}

#[test]
fn empty_seed_has_empty_future() {
    let m = slab(6, 0, 3);
    assert!(causal_future(&m, &SiteSet::new()).unwrap().is_empty());
}

#[test]
fn full_row_future_is_everything_above() {
    let m = slab(5, 0, 6);
    let row: SiteSet = (0..5).map(|x| Site::new(2, x)).collect();
    let fut = causal_future(&m, &row).unwrap();
    let expected: SiteSet = m.sites().iter().filter(|s| s.t >= 2).copied().collect();
    assert_eq!(fut, expected);
}

#[test]
fn single_site_future_matches_clipped_light_cone() {
    // 5 rows, circumference 8: row dt holds min(2 dt + 1, 8) sites.
    let m = slab(8, 0, 4);
    let fut = causal_future(&m, &set(&[(0, 0)])).unwrap();
    let cone: usize = (0..5).map(|dt| (2 * dt + 1).min(8)).sum();
    assert_eq!(fut.len(), cone);
    assert_eq!(cone, 24);
    for s in &fut {
        let d = s.x.min(8 - s.x);
        assert!(d <= s.t, "{s} outside the cone");
    }
}

#[test]
fn site_outside_spacetime_is_rejected() {
    let m = slab(4, 0, 2);
    assert_eq!(
        causal_future(&m, &set(&[(5, 0)])),
        Err(LatticeError::SiteNotInSpacetime(Site::new(5, 0)))
    );
}

#[test]
fn row_pair_is_convex_and_gap_is_not() {
    let m = slab(6, 0, 4);
    let pair = set(&[(1, 0), (1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (2, 0), (2, 1), (2, 2), (2, 3), (2, 4), (2, 5)]);
    assert!(is_causally_convex(&m, &pair).unwrap());
    let gap = set(&[(0, 2), (2, 2)]);
    assert!(!is_causally_convex(&m, &gap).unwrap());
    assert_eq!(convexity_witness(&m, &gap).unwrap(), Some(Site::new(1, 1)));
}

#[test]
fn constructor_rejects_bad_regions() {
    assert_eq!(LatticeSpacetime::new(4, []), Err(LatticeError::Empty));
    assert_eq!(LatticeSpacetime::new(4, [Site::new(0, 0), Site::new(0, 1)]), Err(LatticeError::TooThin));
    assert_eq!(
        LatticeSpacetime::new(8, [Site::new(0, 0), Site::new(1, 0), Site::new(0, 4), Site::new(1, 4)]),
        Err(LatticeError::Disconnected)
    );
    // (0,0) -> (1,7) -> (2,0) leaves the set.
    let skew = set(&[(0, 0), (1, 0), (1, 1), (2, 0), (2, 1), (3, 0)]);
    assert_eq!(LatticeSpacetime::new(8, skew), Err(LatticeError::NotCausallyConvex(Site::new(1, 7))));
    let notch = set(&[(0, 1), (1, 0), (1, 2), (2, 1), (2, 0), (2, 2), (0, 0), (0, 2)]);
    assert!(matches!(LatticeSpacetime::new(8, notch), Err(LatticeError::NotCausallyConvex(_))));
}

#[test]
fn diamond_shape() {
    let d = LatticeSpacetime::diamond(12, Site::new(0, 5), 2).unwrap();
    assert_eq!(d.len(), 1 + 3 + 5 + 3 + 1);
    assert_eq!(d.cauchy_rows(), vec![0, 1, 2, 3, 4]);
    assert_eq!(d.stencil_interior().len(), 5);
}

#[test]
fn cauchy_rows_agree_with_chain_enumeration() {
    let regions = vec![
        slab(4, 0, 3),
        LatticeSpacetime::diamond(10, Site::new(0, 3), 2).unwrap(),
        LatticeSpacetime::new(6, set(&[(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)])).unwrap(),
        LatticeSpacetime::new(
            5,
            (0..5).flat_map(|x| [Site::new(0, x), Site::new(1, x)]).chain([Site::new(2, 0)]),
        )
        .unwrap(),
    ];
    for m in regions {
        for t in m.t_min() - 1..=m.t_max() + 1 {
            assert_eq!(m.is_cauchy_row(t), cauchy_by_chains(&m, t), "row {t} of\n{m}");
        }
    }
}

#[test]
fn cauchy_morphism_examples() {
    let m = slab(6, 0, 3);
    assert!(is_cauchy_morphism(&LocMorphism::identity(&m)));
    let tall = slab(6, -2, 6);
    assert!(is_cauchy_morphism(&LocMorphism::inclusion(&m, &tall).unwrap()));
    let d = LatticeSpacetime::diamond(6, Site::new(0, 1), 1).unwrap();
    assert!(!is_cauchy_morphism(&LocMorphism::inclusion(&d, &tall).unwrap()));
}

#[test]
fn morphism_validation() {
    let m = slab(6, 0, 3);
    let tall = slab(6, 0, 5);
    assert!(matches!(
        LocMorphism::new(m.clone(), tall.clone(), Shift::new(3, 0)),
        Err(LatticeError::NotContained(_))
    ));
    assert!(matches!(
        LocMorphism::new(m.clone(), slab(5, 0, 3), Shift::IDENTITY),
        Err(LatticeError::CircumferenceMismatch(6, 5))
    ));
    let f = LocMorphism::new(m.clone(), tall.clone(), Shift::new(2, 7)).unwrap();
    assert_eq!(f.shift(), Shift::new(2, 1));
}

#[test]
fn disjoint_diamonds() {
    let m = slab(12, 0, 4);
    let d1 = LatticeSpacetime::diamond(12, Site::new(0, 0), 1).unwrap();
    let d2 = LatticeSpacetime::diamond(12, Site::new(0, 6), 1).unwrap();
    let f1 = LocMorphism::inclusion(&d1, &m).unwrap();
    let f2 = LocMorphism::inclusion(&d2, &m).unwrap();
    assert!(causally_disjoint(&f1, &f2).unwrap());
    assert!(!causally_disjoint(&f1, &f1).unwrap());
    // Overlapping cones once the second diamond sits higher and closer.
    let d3 = LatticeSpacetime::diamond(12, Site::new(2, 3), 1).unwrap();
    let f3 = LocMorphism::inclusion(&d3, &m).unwrap();
    assert!(!causally_disjoint(&f1, &f3).unwrap());
    let other = LocMorphism::identity(&slab(12, 0, 5));
    assert_eq!(causally_disjoint(&f1, &other), Err(LatticeError::TargetMismatch));
}

#[test]
fn literal_round_trip() {
    let text = "L=6\nt=0: 0-5\nt=1: 0-2,4-5\n";
    assert_eq!(parse_spacetime(text).unwrap().len(), 11);
    let m = parse_spacetime("L=6\nt=0: 0-5\nt=1: 0-5\nt=2: 1-3").unwrap();
    assert_eq!(parse_spacetime(&m.to_string()).unwrap(), m);
    let json = serde_json::to_string(&m).unwrap();
    assert_eq!(json, r#"{"L":6,"rows":{"0":"0-5","1":"0-5","2":"1-3"}}"#);
    assert_eq!(parse_spacetime(&json).unwrap(), m);
    assert!(matches!(parse_spacetime("L=x"), Err(LatticeError::Parse(_))));
}

#[test]
fn one_dimensional_model() {
    let m = slab(0, 0, 4);
    assert_eq!(m.len(), 5);
    assert_eq!(m.cauchy_rows(), vec![0, 1, 2, 3, 4]);
    assert_eq!(m.stencil_interior(), set(&[(1, 0), (2, 0), (3, 0)]));
}

fn arb_region(l: u32) -> impl Strategy<Value = LatticeSpacetime> {
    prop_oneof![
        (0i64..3, 1i64..4).prop_map(move |(t0, h)| LatticeSpacetime::slab(l, t0, t0 + h).unwrap()),
        (0i64..3, 0..i64::from(l), 1i64..3)
            .prop_map(move |(t, x, k)| LatticeSpacetime::diamond(l, Site::new(t, x), k).unwrap()),
    ]
}

proptest! {
    #[test]
    fn future_is_monotone_idempotent_extensive(
        seeds in prop::collection::btree_set((0i64..6, 0i64..7), 0..6),
        extra in prop::collection::btree_set((0i64..6, 0i64..7), 0..4),
    ) {
        let m = slab(7, 0, 5);
        let s: SiteSet = seeds.iter().map(|&(t, x)| Site::new(t, x)).collect();
        let mut bigger = s.clone();
        bigger.extend(extra.iter().map(|&(t, x)| Site::new(t, x)));
        let js = causal_future(&m, &s).unwrap();
        prop_assert!(s.is_subset(&js));
        prop_assert_eq!(causal_future(&m, &js).unwrap(), js.clone());
        prop_assert!(js.is_subset(&causal_future(&m, &bigger).unwrap()));
    }

    #[test]
    fn intersection_of_convex_sets_is_convex(a in arb_region(9), b in arb_region(9)) {
        let m = slab(9, -1, 8);
        let sa = a.sites().clone();
        let sb = b.sites().clone();
        prop_assert!(is_causally_convex(&m, &sa).unwrap());
        prop_assert!(is_causally_convex(&m, &sb).unwrap());
        let meet: SiteSet = sa.intersection(&sb).copied().collect();
        prop_assert!(is_causally_convex(&m, &meet).unwrap());
    }

    #[test]
    fn disjointness_is_symmetric(
        (t1, x1, t2, x2) in (0i64..3, 0i64..12, 0i64..3, 0i64..12),
    ) {
        let m = slab(12, 0, 5);
        let f1 = LocMorphism::inclusion(&LatticeSpacetime::diamond(12, Site::new(t1, x1), 1).unwrap(), &m).unwrap();
        let f2 = LocMorphism::inclusion(&LatticeSpacetime::diamond(12, Site::new(t2, x2), 1).unwrap(), &m).unwrap();
        prop_assert_eq!(causally_disjoint(&f1, &f2).unwrap(), causally_disjoint(&f2, &f1).unwrap());
    }

    #[test]
    fn morphisms_factor_into_valid_pieces(region in arb_region(8), dt in 0i64..3, dx in 0i64..8) {
        let target = slab(8, -1, 10);
        let f = LocMorphism::new(region, target, Shift::new(dt, dx)).unwrap();
        let (iso, inc) = f.factor();
        let iso = LocMorphism::new(iso.source().clone(), iso.target().clone(), iso.shift()).unwrap();
        let inc = LocMorphism::new(inc.source().clone(), inc.target().clone(), inc.shift()).unwrap();
        prop_assert_eq!(inc.after(&iso).unwrap(), f);
    }

    #[test]
    fn every_morphism_is_cauchy_in_one_dimension(
        (a0, a1) in (0i64..4, 1i64..4),
        (b0, b1) in (-3i64..0, 4i64..9),
        shift in 0i64..6,
    ) {
        let src = slab(0, a0, a0 + a1);
        let tgt = slab(0, b0, b1);
        if let Ok(f) = LocMorphism::new(src, tgt, Shift::new(shift - 3, 0)) {
            prop_assert!(is_cauchy_morphism(&f));
        }
    }
}

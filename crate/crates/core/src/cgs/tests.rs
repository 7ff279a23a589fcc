use super::*;
use crate::exactpoly::parse_poly;
use crate::ideals::ideal_member;
use rand::{Rng, SeedableRng};

const TRIANGLE_GENERIC: &[&str] = &[
    "-x1 - x2 + 1",
    "2*x1 + 2*x2 - 2*x3 - 2*x4",
    "-2*x3 + 2*x4 - 2",
    "x1 + 3*x2 - x5 - 3*x6",
    "-3*x5 + x6 + 3",
    "-(x4 - y)*(x3 - x5) + (x4 - x6)*(x3 - x)",
    "-(y - 3)*(x1 - 2) + (x - 2)*(x2 - 3)",
];

const TRIANGLE_RIGHT: &[&str] = &[
    "-x1 - x2 + 1",
    "x3",
    "-x2 + x4",
    "-x1 + x5",
    "-x6",
    "-x1*y + x2*x",
    "-(x4 - y)*(x3 - x5) + (x4 - x6)*(x3 - x)",
];

const VARS: &[&str] = &["x1", "x2", "x3", "x4", "x5", "x6"];

fn b() -> Budget {
    Budget::default()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn cover_of(system: &[&str]) -> CoverResult {
    let ring = VarTable::parametric(VARS, &["x", "y"]).unwrap();
    let polys: Vec<MultiPoly> = system
        .iter()
        .map(|s| parse_poly(s, &ring).unwrap())
        .collect();
    groebner_cover(&polys, &["x", "y"], VARS, &b()).unwrap()
}

fn containing(cover: &CoverResult, pt: &[Rational]) -> Vec<usize> {
    (0..cover.segments.len())
        .filter(|&i| segment_contains(&cover.segments[i], pt).unwrap())
        .collect()
}

/// Mutual membership of generators, both as ideals of the full ring.
fn same_ideal(a: &[MultiPoly], b_: &[MultiPoly], ring: &Ring) -> bool {
    let ia = Ideal::new(ring, a.to_vec()).unwrap();
    let ib = Ideal::new(ring, b_.to_vec()).unwrap();
    a.iter().all(|g| ideal_member(g, &ib, &b()).unwrap())
        && b_.iter().all(|g| ideal_member(g, &ia, &b()).unwrap())
}

fn check_specialization(cover: &CoverResult, seg: &Segment, pt: &[Rational]) {
    let direct = specialize(&cover.system, pt).unwrap();
    let direct_gb = groebner_basis(
        &Ideal::new(&cover.ring, direct).unwrap(),
        &cover.order(),
        &b(),
    )
    .unwrap();
    let spec = specialize(&seg.basis, pt).unwrap();
    assert!(same_ideal(&direct_gb, &spec, &cover.ring), "at {pt:?}");
}

#[test]
fn linear_equation_three_cases() {
    let ring = VarTable::parametric(&["x"], &["a", "b"]).unwrap();
    let f = parse_poly("a*x - b", &ring).unwrap();
    let cover = groebner_cover(&[f], &["a", "b"], &["x"], &b()).unwrap();
    assert_eq!(cover.segments.len(), 3);
    let show: Vec<(Vec<String>, String, Vec<String>)> = cover
        .segments
        .iter()
        .map(|s| {
            (
                s.null.generators().iter().map(|g| g.to_string()).collect(),
                s.nonnull.to_string(),
                s.basis.iter().map(|g| g.to_string()).collect(),
            )
        })
        .collect();
    assert!(
        show.contains(&(vec![], "a".into(), vec!["x*a - b".into()])),
        "{show:?}"
    );
    assert!(
        show.contains(&(vec!["a".into()], "b".into(), vec!["1".into()])),
        "{show:?}"
    );
    assert!(
        show.contains(&(vec!["b".into(), "a".into()], "1".into(), vec![]))
            || show.contains(&(vec!["a".into(), "b".into()], "1".into(), vec![])),
        "{show:?}"
    );
}

#[test]
fn no_parameters_gives_one_segment() {
    let ring = VarTable::new(&["x", "y"]).unwrap();
    let polys = vec![
        parse_poly("x^2 - y", &ring).unwrap(),
        parse_poly("x*y - 1", &ring).unwrap(),
    ];
    let cover = groebner_cover(&polys, &[] as &[&str], &["x", "y"], &b()).unwrap();
    assert_eq!(cover.segments.len(), 1);
    let gb = groebner_basis(
        &Ideal::new(&cover.ring, cover.system.clone()).unwrap(),
        &cover.order(),
        &b(),
    )
    .unwrap();
    assert_eq!(cover.segments[0].basis, gb);
    assert!(segment_contains(&cover.segments[0], &[]).unwrap());
}

#[test]
fn segment_membership() {
    let pring = VarTable::new(&["x", "y"]).unwrap();
    let p = |s: &str| parse_poly(s, &pring).unwrap();
    let seg = Segment {
        null: Ideal::new(&pring, vec![p("y - 4"), p("x - 1")]).unwrap(),
        nonnull: p("1"),
        basis: vec![],
    };
    assert!(segment_contains(&seg, &[q(1, 1), q(4, 1)]).unwrap());
    let seg = Segment {
        null: Ideal::zero(&pring),
        nonnull: p("x*y*(x + 1)"),
        basis: vec![],
    };
    assert!(!segment_contains(&seg, &[q(0, 1), q(0, 1)]).unwrap());
    let seg = Segment {
        null: Ideal::unit(&pring),
        nonnull: p("1"),
        basis: vec![],
    };
    assert!(!segment_contains(&seg, &[q(3, 1), q(0, 1)]).unwrap());
    assert!(segment_contains(&seg, &[q(3, 1)]).is_err());
}

#[test]
fn specialization_examples() {
    let ring = VarTable::parametric(&["x"], &["a", "b"]).unwrap();
    let f = parse_poly("a*x - b", &ring).unwrap();
    let out = specialize(std::slice::from_ref(&f), &[q(1, 1), q(2, 1)]).unwrap();
    assert_eq!(out, vec![parse_poly("x - 2", &ring).unwrap()]);
    assert!(specialize(std::slice::from_ref(&f), &[q(0, 1), q(0, 1)])
        .unwrap()
        .is_empty());
    assert!(specialize(&[f], &[q(0, 1)]).is_err());

    let ring = VarTable::parametric(VARS, &["x", "y"]).unwrap();
    let sys: Vec<MultiPoly> = TRIANGLE_GENERIC
        .iter()
        .map(|s| parse_poly(s, &ring).unwrap())
        .collect();
    let spec = specialize(&sys, &[q(1, 1), q(4, 1)]).unwrap();
    let gb = groebner_basis(
        &Ideal::new(&ring, spec).unwrap(),
        &MonomialOrder::Grevlex,
        &b(),
    )
    .unwrap();
    assert_eq!(gb, vec![MultiPoly::one(&ring)]);
}

fn random_points(seed: u64, n: usize) -> Vec<Vec<Rational>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let mut coord = || q(rng.gen_range(-100i64..=100), rng.gen_range(1i64..=10));
            vec![coord(), coord()]
        })
        .map(|mut v| {
            // clamp into [-10, 10]
            for c in v.iter_mut() {
                if *c > q(10, 1) || *c < q(-10, 1) {
                    *c = c.clone() / q(10, 1);
                }
            }
            v
        })
        .collect()
}

/// Points on the curves where the covers change behaviour, plus a random batch.
fn probe_points(seed: u64) -> Vec<Vec<Rational>> {
    let mut pts = random_points(seed, 200);
    for k in -6i64..=6 {
        let t = q(k, 3);
        pts.push(vec![q(0, 1), t.clone()]);
        pts.push(vec![t.clone(), q(0, 1)]);
        pts.push(vec![t.clone(), q(1, 2) - t.clone()]);
    }
    pts.push(vec![q(1, 1), q(4, 1)]);
    pts.push(vec![q(1, 1), q(0, 1)]);
    pts.push(vec![q(2, 1), q(3, 1)]);
    pts
}

fn disjoint_and_faithful(system: &[&str], seed: u64) {
    let cover = cover_of(system);
    for seg in &cover.segments {
        assert!(!seg.nonnull.is_zero());
    }
    let pts = probe_points(seed);
    let mut checked = 0;
    for pt in &pts {
        let hits = containing(&cover, pt);
        assert_eq!(hits.len(), 1, "{pt:?} lies in segments {hits:?}");
        let seg = &cover.segments[hits[0]];
        if seg.is_inconsistent() {
            let direct = specialize(&cover.system, pt).unwrap();
            assert!(
                Ideal::new(&cover.ring, direct)
                    .unwrap()
                    .is_unit(&b())
                    .unwrap(),
                "{pt:?}"
            );
        } else if checked < 60 {
            check_specialization(&cover, seg, pt);
            checked += 1;
        }
    }
    for (pt, seg) in pts
        .iter()
        .flat_map(|p| containing(&cover, p).into_iter().map(move |i| (p, i)))
    {
        if !cover.segments[seg].is_inconsistent() && checked < 60 {
            check_specialization(&cover, &cover.segments[seg], pt);
            checked += 1;
        }
    }
}

#[test]
fn generic_triangle_cover_is_disjoint_and_faithful() {
    disjoint_and_faithful(TRIANGLE_GENERIC, 1);
}

#[test]
fn right_triangle_cover_is_disjoint_and_faithful() {
    disjoint_and_faithful(TRIANGLE_RIGHT, 2);
}

#[test]
fn right_triangle_solvable_segments_cover_three_lines() {
    let cover = cover_of(TRIANGLE_RIGHT);
    for pt in probe_points(7) {
        let (x, y) = (pt[0].clone(), pt[1].clone());
        let on_lines =
            x.is_zero() || y.is_zero() || (q(2, 1) * &x + q(2, 1) * &y - q(1, 1)).is_zero();
        let hit = containing(&cover, &pt);
        let solvable = !cover.segments[hit[0]].is_inconsistent();
        assert_eq!(on_lines, solvable, "{pt:?}");
    }
}

#[test]
fn recursion_guards() {
    let mut tight = b();
    tight.cover_max_segments = 1;
    let ring = VarTable::parametric(&["x"], &["a", "b"]).unwrap();
    let f = parse_poly("a*x - b", &ring).unwrap();
    assert!(groebner_cover(&[f], &["a", "b"], &["x"], &tight)
        .unwrap_err()
        .is_budget());
    assert!(groebner_cover(&[], &["a"], &["x"], &b()).is_err());
}

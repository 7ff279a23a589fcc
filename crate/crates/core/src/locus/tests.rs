use super::*;
use crate::cgs::specialize;
use crate::construction::{
    build_envelope_system, compile_to_system, follow, parse_construction, Query,
};
use crate::exactpoly::{parse_poly, MonomialOrder, Rational};
use crate::ideals::{groebner_basis, radical_member};
use num_traits::Zero;

const TRIANGLE_GENERIC: &str = include_str!("../../fixtures/triangle_generic.json");
const TRIANGLE_RIGHT: &str = include_str!("../../fixtures/triangle_right.json");
const SLIDING: &str = include_str!("../../fixtures/sliding_segment.json");
const IDENTITY: &str = include_str!("../../fixtures/circle_identity.json");
const MIDPOINT: &str = include_str!("../../fixtures/midpoint_circle.json");

fn b() -> Budget {
    Budget::default()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn system(text: &str) -> ParametricSystem {
    compile_to_system(&parse_construction(text).unwrap()).unwrap()
}

fn plane() -> Ring {
    VarTable::new(&["x", "y"]).unwrap()
}

fn curves(r: &LocusResult, tag: Tag) -> Vec<String> {
    r.tagged(tag)
        .filter_map(|c| c.curve())
        .map(|f| f.to_string())
        .collect()
}

#[test]
fn generic_triangle_conic_with_one_hole() {
    let r = compute_locus_cover(&system(TRIANGLE_GENERIC), &b()).unwrap();
    assert_eq!(
        curves(&r, Tag::Normal),
        vec!["x^2 - 4*x*y - y^2 + 6*x + 8*y - 7"]
    );
    let normal: Vec<_> = r.normal().collect();
    assert_eq!(normal.len(), 1);
    assert_eq!(normal[0].holes.len(), 1);
    let hole = &normal[0].holes[0];
    let expected = Ideal::new(
        hole.ring(),
        vec![
            parse_poly("x - 1", hole.ring()).unwrap(),
            parse_poly("y - 4", hole.ring()).unwrap(),
        ],
    )
    .unwrap();
    assert!(hole.equals(&expected, &b()).unwrap());
    assert_eq!(
        r.assembled,
        "V(x^2 - 4*x*y - y^2 + 6*x + 8*y - 7) \\ V(y - 4, x - 1)"
    );
}

#[test]
fn right_triangle_special_lines_and_isolated_origin() {
    let r = compute_locus_cover(&system(TRIANGLE_RIGHT), &b()).unwrap();
    assert_eq!(r.assembled, "V(2*x + 2*y - 1)");
    assert_eq!(curves(&r, Tag::Normal), vec!["2*x + 2*y - 1"]);
    assert_eq!(curves(&r, Tag::Special), vec!["x", "y"]);
    let isolated: Vec<_> = r.tagged(Tag::Isolated).collect();
    assert_eq!(isolated.len(), 1);
    let Closure::Points(p) = &isolated[0].closure else {
        panic!("points expected")
    };
    let origin = Ideal::new(
        p.ring(),
        vec![
            MultiPoly::var(p.ring(), "x").unwrap(),
            MultiPoly::var(p.ring(), "y").unwrap(),
        ],
    )
    .unwrap();
    assert!(p.equals(&origin, &b()).unwrap());
    for c in r.tagged(Tag::Special) {
        assert_eq!(c.mover_fiber_dim, 0);
    }
}

#[test]
fn plane_decompositions() {
    let r = plane();
    let p = |s: &str| parse_poly(s, &r).unwrap();
    let one = p("1");
    let d = decompose_plane_set(
        &Ideal::new(&r, vec![p("x*y*(2*x + 2*y - 1)")]).unwrap(),
        &one,
        &b(),
    )
    .unwrap();
    let mut names: Vec<String> = d.curves.iter().map(|f| f.to_string()).collect();
    names.sort();
    assert_eq!(names, vec!["2*x + 2*y - 1", "x", "y"]);
    assert!(d.residue.is_unit(&b()).unwrap());
    assert!(!d.is_plane);

    let d =
        decompose_plane_set(&Ideal::new(&r, vec![p("x"), p("y")]).unwrap(), &one, &b()).unwrap();
    assert!(d.curves.is_empty());
    assert_eq!(d.residue.display_generators(&b()).unwrap(), vec!["y", "x"]);

    assert!(
        decompose_plane_set(&Ideal::zero(&r), &one, &b())
            .unwrap()
            .is_plane
    );

    // a line plus a point off it, with part of the line removed
    let e = Ideal::new(&r, vec![p("x*(x - 1)"), p("x*y")]).unwrap();
    let d = decompose_plane_set(&e, &p("y - 5"), &b()).unwrap();
    assert_eq!(
        d.curves.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        vec!["x"]
    );
    assert_eq!(
        d.residue.display_generators(&b()).unwrap(),
        vec!["y", "x - 1"]
    );
}

#[test]
fn classification_of_triangle_curves() {
    for (text, expect) in [
        (
            TRIANGLE_RIGHT,
            vec![
                ("2*x + 2*y - 1", Tag::Normal),
                ("x", Tag::Special),
                ("y", Tag::Special),
            ],
        ),
        (
            TRIANGLE_GENERIC,
            vec![("x^2 - 4*x*y - y^2 + 6*x + 8*y - 7", Tag::Normal)],
        ),
    ] {
        let sys = system(text);
        let cover = groebner_cover(&sys.polys, sys.params(), sys.vars(), &b()).unwrap();
        for (name, tag) in expect {
            let mut seen = false;
            for seg in cover.segments.iter().filter(|s| !s.is_inconsistent()) {
                let d = decompose_plane_set(&seg.null, &seg.nonnull, &b()).unwrap();
                for f in d.curves.iter().filter(|f| f.to_string() == name) {
                    let (t, dim) = classify_component(f, seg, &sys, &b()).unwrap();
                    assert_eq!(t, tag, "{name}");
                    assert_eq!(dim >= 1, tag == Tag::Normal);
                    seen = true;
                }
            }
            assert!(seen, "{name} not found");
        }
    }
}

#[test]
fn elimination_keeps_special_lines() {
    let sys = system(TRIANGLE_RIGHT);
    let e = compute_locus_elimination(&sys, &b()).unwrap();
    let r = e.ring().clone();
    let p = |s: &str| parse_poly(s, &r).unwrap();
    let target = Ideal::new(&r, vec![p("x*y*(2*x + 2*y - 1)")]).unwrap();
    assert!(e.same_variety(&target, &b()).unwrap());
    for f in ["x", "y", "2*x + 2*y - 1"] {
        assert!(!radical_member(&p(f), &e, &b()).unwrap());
    }
}

#[test]
fn elimination_vanishes_on_traced_points() {
    let c = parse_construction(TRIANGLE_GENERIC).unwrap();
    let sys = compile_to_system(&c).unwrap();
    let e = compute_locus_elimination(&sys, &b()).unwrap();
    assert!(!e.is_zero_ideal());
    let mut used = 0;
    for k in 0..20 {
        let Some(place) = follow(&c, &q(2 * k - 13, 5)).unwrap() else {
            continue;
        };
        let xy = place.point("X").unwrap();
        for g in e.generators() {
            assert!(g.eval(xy).is_zero());
        }
        used += 1;
    }
    assert!(used >= 10);
}

#[test]
fn inconsistent_system_has_empty_locus() {
    let mut sys = system(TRIANGLE_RIGHT);
    sys.polys.push(MultiPoly::one(&sys.ring));
    assert!(compute_locus_elimination(&sys, &b())
        .unwrap()
        .is_unit(&b())
        .unwrap());
    let r = compute_locus_cover(&sys, &b()).unwrap();
    assert!(r.components.is_empty());
    assert_eq!(r.assembled, "V(1)");
}

#[test]
fn identity_locus_is_the_path() {
    let r = compute_locus_cover(&system(IDENTITY), &b()).unwrap();
    assert_eq!(curves(&r, Tag::Normal), vec!["x^2 + y^2 - 2*x + 2*y - 23"]);
    assert!(r.normal().all(|c| c.holes.is_empty()));
    assert_eq!(r.assembled, "V(x^2 + y^2 - 2*x + 2*y - 23)");
}

#[test]
fn midpoint_traces_half_size_circle() {
    let r = compute_locus_cover(&system(MIDPOINT), &b()).unwrap();
    assert_eq!(curves(&r, Tag::Normal), vec!["x^2 + y^2 - 4*x - 2*y + 4"]);
}

/// Every normal curve lies inside the variety of the elimination ideal.
#[test]
fn cover_is_conservative() {
    for text in [TRIANGLE_GENERIC, TRIANGLE_RIGHT, IDENTITY, MIDPOINT] {
        let sys = system(text);
        let e = compute_locus_elimination(&sys, &b()).unwrap();
        let r = compute_locus_cover(&sys, &b()).unwrap();
        for c in r.normal() {
            let f = c.curve().unwrap().embed(e.ring()).unwrap();
            let curve = Ideal::new(e.ring(), vec![f.clone()]).unwrap();
            for g in e.generators() {
                assert!(radical_member(g, &curve, &b()).unwrap(), "{f} vs {g}");
            }
        }
    }
}

fn solvable_at(sys: &ParametricSystem, pt: &[Rational]) -> bool {
    let spec = specialize(&sys.polys, pt).unwrap();
    !Ideal::new(&sys.ring, spec).unwrap().is_unit(&b()).unwrap()
}

#[test]
fn fiber_witnesses() {
    for text in [TRIANGLE_GENERIC, TRIANGLE_RIGHT] {
        let c = parse_construction(text).unwrap();
        let sys = compile_to_system(&c).unwrap();
        let r = compute_locus_cover(&sys, &b()).unwrap();
        let Query::Locus { tracer, .. } = &c.query else {
            unreachable!()
        };
        let normal: Vec<&MultiPoly> = r.normal().filter_map(|c| c.curve()).collect();
        let mut witnessed = 0;
        for k in 0..30 {
            let Some(place) = follow(&c, &q(3 * k - 41, 7)).unwrap() else {
                continue;
            };
            let xy = place.point(tracer).unwrap().clone();
            let on: Vec<_> = normal.iter().filter(|f| f.eval(&xy).is_zero()).collect();
            if on.is_empty() {
                continue;
            }
            assert!(solvable_at(&sys, &xy), "{xy:?}");
            witnessed += 1;
        }
        assert!(witnessed >= 5, "{witnessed}");
        for comp in r.normal() {
            for hole in &comp.holes {
                // the generic triangle's only hole is the point (1, 4)
                assert!(hole
                    .generators()
                    .iter()
                    .all(|g| g.eval(&[q(1, 1), q(4, 1)]).is_zero()));
                assert!(!solvable_at(&sys, &[q(1, 1), q(4, 1)]));
            }
        }
    }
}

#[test]
fn special_components_pin_the_mover() {
    let sys = system(TRIANGLE_RIGHT);
    let cover = groebner_cover(&sys.polys, sys.params(), sys.vars(), &b()).unwrap();
    let r = compute_locus_cover(&sys, &b()).unwrap();
    let mover = VarTable::new(&sys.mover_vars).unwrap();
    for comp in r.tagged(Tag::Special) {
        let seg = &cover.segments[comp.source_segment.unwrap()];
        let mut gens: Vec<MultiPoly> = seg.basis.clone();
        for g in seg
            .null
            .generators()
            .iter()
            .chain(std::iter::once(comp.curve().unwrap()))
        {
            gens.push(g.embed(&sys.ring).unwrap());
        }
        let j = saturate(
            &Ideal::new(&sys.ring, gens).unwrap(),
            &seg.nonnull.embed(&sys.ring).unwrap(),
            &b(),
        )
        .unwrap();
        let projected = Ideal::new(
            &mover,
            eliminate_into(j.generators(), &mover, &b()).unwrap(),
        )
        .unwrap();
        assert_eq!(dimension(&projected, &b()).unwrap(), 0);
        // a lex basis holds a univariate polynomial in each mover coordinate
        for v in 0..2 {
            let names = if v == 0 {
                [&sys.mover_vars[1], &sys.mover_vars[0]]
            } else {
                [&sys.mover_vars[0], &sys.mover_vars[1]]
            };
            let lexring = VarTable::new(&names).unwrap();
            let ideal = Ideal::embedded(&lexring, projected.generators()).unwrap();
            let gb = groebner_basis(&ideal, &MonomialOrder::Lex, &b()).unwrap();
            assert!(gb.iter().any(|g| g.support() == vec![1]), "{gb:?}");
        }
    }
}

#[test]
fn results_are_deterministic() {
    for text in [TRIANGLE_GENERIC, TRIANGLE_RIGHT] {
        let mut outs = Vec::new();
        for method in [
            Method::GrobnerCover,
            Method::GrobnerCover,
            Method::Elimination,
            Method::Elimination,
        ] {
            let r = compute_locus(&system(text), method, &b()).unwrap();
            let mut j = result_json(&r, &b()).unwrap();
            j.diagnostics.ms = 0;
            outs.push(serde_json::to_string(&j).unwrap());
        }
        assert_eq!(outs[0], outs[1]);
        assert_eq!(outs[2], outs[3]);
    }
}

#[test]
fn sliding_segment_discriminant_is_the_astroid() {
    let sys = build_envelope_system(&parse_construction(SLIDING).unwrap()).unwrap();
    for method in [Method::Elimination, Method::GrobnerCover] {
        let r = compute_locus(&sys, method, &b()).unwrap();
        assert_eq!(r.kind, SystemKind::Envelope);
        let normal = curves(&r, Tag::Normal);
        let astroid = parse_poly("(x^2 + y^2 - 1)^3 + 27*x^2*y^2", &plane())
            .unwrap()
            .normalized();
        assert_eq!(normal, vec![astroid.to_string()]);
        assert_eq!(result_json(&r, &b()).unwrap().kind, "discriminant");
    }
}

#[test]
fn budget_overruns_surface() {
    let mut tight = b();
    tight.max_basis = 2;
    let err = compute_locus_cover(&system(TRIANGLE_GENERIC), &tight).unwrap_err();
    assert!(err.is_budget(), "{err}");
    let late = b().with_time_limit(std::time::Duration::ZERO);
    assert!(compute_locus_cover(&system(TRIANGLE_GENERIC), &late)
        .unwrap_err()
        .is_budget());
}

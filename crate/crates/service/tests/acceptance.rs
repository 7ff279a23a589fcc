//! One PASS/FAIL line per acceptance criterion. Runs without the test
//! harness so the lines always reach the console.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use locuscover::cgs::{groebner_cover, segment_contains, specialize, CoverResult};
use locuscover::construction::{build_envelope_system, compile_to_system, parse_construction};
use locuscover::exactpoly::{
    divide, parse_poly, s_polynomial, MonomialOrder, MultiPoly, Rational, Ring, VarTable,
};
use locuscover::fixtures;
use locuscover::ideals::{
    dimension, eliminate, groebner_basis, ideal_member, radical_member, Ideal,
};
use locuscover::locus::{compute_locus_cover, compute_locus_elimination, Closure, Tag};
use locuscover::Budget;

const COVER_LIMIT: Duration = Duration::from_secs(60);
const ELIMINATION_LIMIT: Duration = Duration::from_secs(30);
const ENVELOPE_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_POINTS: usize = 200;
const SPECIALIZATION_CHECKS: usize = 50;
const SHUFFLE_IDEALS: usize = 25;
const SHUFFLES: usize = 20;
const ENVELOPE_POINTS: i64 = 10;

const CONIC: &str = "x^2 - 4*x*y - y^2 + 6*x + 8*y - 7";

const GENERIC_SYSTEM: &[&str] = &[
    "-x1 - x2 + 1",
    "2*x1 + 2*x2 - 2*x3 - 2*x4",
    "-2*x3 + 2*x4 - 2",
    "x1 + 3*x2 - x5 - 3*x6",
    "-3*x5 + x6 + 3",
    "-(x4 - y)*(x3 - x5) + (x4 - x6)*(x3 - x)",
    "-(y - 3)*(x1 - 2) + (x - 2)*(x2 - 3)",
];

const RIGHT_SYSTEM: &[&str] = &[
    "-x1 - x2 + 1",
    "x3",
    "-x2 + x4",
    "-x1 + x5",
    "-x6",
    "-x1*y + x2*x",
    "-(x4 - y)*(x3 - x5) + (x4 - x6)*(x3 - x)",
];

const VARS: &[&str] = &["x1", "x2", "x3", "x4", "x5", "x6"];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn b() -> Budget {
    Budget::default()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn zero() -> Rational {
    q(0, 1)
}

fn plane() -> Ring {
    VarTable::new(&["x", "y"]).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(what: &str, start: Instant, limit: Duration) -> Result<(), String> {
    let took = start.elapsed();
    ensure(took <= limit, || {
        format!("{what} took {took:?}, limit {limit:?}")
    })
}

fn system(doc: &str) -> locuscover::construction::ParametricSystem {
    compile_to_system(&parse_construction(doc).unwrap()).unwrap()
}

fn golden_generic_triangle() -> Outcome {
    let start = Instant::now();
    let r = compute_locus_cover(&system(fixtures::TRIANGLE_GENERIC), &b())
        .map_err(|e| e.to_string())?;
    within("cover", start, COVER_LIMIT)?;
    let normal: Vec<_> = r.normal().collect();
    ensure(normal.len() == 1, || {
        format!("{} normal components", normal.len())
    })?;
    let f = normal[0].curve().ok_or("normal component is not a curve")?;
    let want = parse_poly(CONIC, f.ring()).unwrap().normalized();
    ensure(f.normalized() == want, || format!("closure {f}"))?;
    ensure(normal[0].holes.len() == 1, || {
        format!("{} hole ideals", normal[0].holes.len())
    })?;
    let hole = &normal[0].holes[0];
    let point = Ideal::new(
        hole.ring(),
        vec![
            parse_poly("x - 1", hole.ring()).unwrap(),
            parse_poly("y - 4", hole.ring()).unwrap(),
        ],
    )
    .unwrap();
    ensure(hole.same_variety(&point, &b()).unwrap(), || {
        "hole is not {(1, 4)}".into()
    })?;
    Ok(format!("{} with hole (1, 4) in {:?}", f, start.elapsed()))
}

fn golden_right_triangle() -> Outcome {
    let start = Instant::now();
    let r =
        compute_locus_cover(&system(fixtures::TRIANGLE_RIGHT), &b()).map_err(|e| e.to_string())?;
    within("cover", start, COVER_LIMIT)?;
    ensure(r.assembled == "V(2*x + 2*y - 1)", || {
        format!("assembled {}", r.assembled)
    })?;
    let mut special: Vec<String> = r
        .tagged(Tag::Special)
        .filter_map(|c| c.curve())
        .map(|f| f.to_string())
        .collect();
    special.sort();
    ensure(special == ["x", "y"], || format!("special {special:?}"))?;
    ensure(
        r.tagged(Tag::Special)
            .all(|c| matches!(c.closure, Closure::Curve(_))),
        || "special points".into(),
    )?;
    let origin = Ideal::new(
        &plane(),
        vec![
            parse_poly("x", &plane()).unwrap(),
            parse_poly("y", &plane()).unwrap(),
        ],
    )
    .unwrap();
    let isolated: Vec<_> = r
        .tagged(Tag::Isolated)
        .filter(
            |c| matches!(&c.closure, Closure::Points(p) if p.same_variety(&origin, &b()).unwrap()),
        )
        .collect();
    ensure(isolated.len() == 1, || {
        "origin not reported as isolated".into()
    })?;
    Ok(format!(
        "{}; special x, y; isolated (0, 0) in {:?}",
        r.assembled,
        start.elapsed()
    ))
}

fn elimination_right_triangle() -> Outcome {
    let start = Instant::now();
    let e = compute_locus_elimination(&system(fixtures::TRIANGLE_RIGHT), &b())
        .map_err(|e| e.to_string())?;
    within("elimination", start, ELIMINATION_LIMIT)?;
    let r = e.ring().clone();
    let p = |s: &str| parse_poly(s, &r).unwrap();
    let product = p("x*y*(2*x + 2*y - 1)");
    ensure(radical_member(&product, &e, &b()).unwrap(), || {
        "product not in the radical".into()
    })?;
    let product_ideal = Ideal::new(&r, vec![product]).unwrap();
    for g in e.generators() {
        ensure(radical_member(g, &product_ideal, &b()).unwrap(), || {
            format!("{g} does not vanish on the lines")
        })?;
    }
    for f in ["x", "y", "2*x + 2*y - 1"] {
        let line = Ideal::new(&r, vec![p(f)]).unwrap();
        for g in e.generators() {
            ensure(radical_member(g, &line, &b()).unwrap(), || {
                format!("{g} does not vanish on V({f})")
            })?;
        }
        ensure(!radical_member(&p(f), &e, &b()).unwrap(), || {
            format!("V(E) lies inside V({f})")
        })?;
    }
    Ok(format!(
        "V(x) ∪ V(y) ∪ V(2*x + 2*y - 1) in {:?}",
        start.elapsed()
    ))
}

fn same_ideal(a: &[MultiPoly], c: &[MultiPoly], ring: &Ring) -> bool {
    let ia = Ideal::new(ring, a.to_vec()).unwrap();
    let ic = Ideal::new(ring, c.to_vec()).unwrap();
    a.iter().all(|g| ideal_member(g, &ic, &b()).unwrap())
        && c.iter().all(|g| ideal_member(g, &ia, &b()).unwrap())
}

fn compilation_golden() -> Outcome {
    for (doc, rows) in [
        (fixtures::TRIANGLE_GENERIC, GENERIC_SYSTEM),
        (fixtures::TRIANGLE_RIGHT, RIGHT_SYSTEM),
    ] {
        let sys = system(doc);
        let expected: Vec<MultiPoly> = rows
            .iter()
            .map(|s| parse_poly(s, &sys.ring).unwrap())
            .collect();
        ensure(same_ideal(&sys.polys, &expected, &sys.ring), || {
            format!(
                "compiled {:?}",
                sys.polys.iter().map(|p| p.to_string()).collect::<Vec<_>>()
            )
        })?;
    }
    Ok("both systems equal by mutual membership".into())
}

fn cover_of(rows: &[&str]) -> CoverResult {
    let ring = VarTable::parametric(VARS, &["x", "y"]).unwrap();
    let polys: Vec<MultiPoly> = rows.iter().map(|s| parse_poly(s, &ring).unwrap()).collect();
    groebner_cover(&polys, &["x", "y"], VARS, &b()).unwrap()
}

/// Rational points of the conic through `(1, 4)` by slope.
fn conic_points() -> Vec<Vec<Rational>> {
    let f = parse_poly(CONIC, &plane()).unwrap();
    let mut out = Vec::new();
    for k in -12i64..=12 {
        let s = q(k, 4);
        let g = |u: Rational| f.eval(&[q(1, 1) + &u, q(4, 1) + &s * &u]);
        let (g1, gm) = (g(q(1, 1)), g(q(-1, 1)));
        let a = (&g1 + &gm) / q(2, 1);
        let bb = (&g1 - &gm) / q(2, 1);
        if a != zero() {
            let u = -bb / a;
            out.push(vec![q(1, 1) + &u, q(4, 1) + &s * &u]);
        }
    }
    out
}

fn cgs_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut summary = Vec::new();
    for (name, rows) in [
        ("triangle_generic", GENERIC_SYSTEM),
        ("triangle_right", RIGHT_SYSTEM),
    ] {
        let cover = cover_of(rows);
        let mut points: Vec<Vec<Rational>> = (0..RANDOM_POINTS)
            .map(|_| {
                vec![
                    q(rng.gen_range(-60..=60), rng.gen_range(1..=6)),
                    q(rng.gen_range(-60..=60), rng.gen_range(1..=6)),
                ]
            })
            .collect();
        // points on the special curves, where the interesting segments live
        points.extend(conic_points());
        for k in -8i64..=8 {
            let t = q(k, 3);
            points.push(vec![zero(), t.clone()]);
            points.push(vec![t.clone(), zero()]);
            points.push(vec![t.clone(), q(1, 2) - &t]);
        }
        let mut specialized = 0;
        for pt in &points {
            let hits: Vec<usize> = (0..cover.segments.len())
                .filter(|&i| segment_contains(&cover.segments[i], pt).unwrap())
                .collect();
            ensure(hits.len() == 1, || {
                format!("{name}: {pt:?} lies in segments {hits:?}")
            })?;
            let seg = &cover.segments[hits[0]];
            let direct = specialize(&cover.system, pt).unwrap();
            let direct_gb = groebner_basis(
                &Ideal::new(&cover.ring, direct).unwrap(),
                &cover.order(),
                &b(),
            )
            .unwrap();
            let spec = specialize(&seg.basis, pt).unwrap();
            ensure(same_ideal(&direct_gb, &spec, &cover.ring), || {
                format!("{name}: basis differs at {pt:?}")
            })?;
            specialized += 1;
        }
        ensure(specialized >= SPECIALIZATION_CHECKS, || {
            format!("{name}: only {specialized} checks")
        })?;
        summary.push(format!(
            "{name} {} points in {} segments",
            points.len(),
            cover.segments.len()
        ));
    }
    Ok(summary.join(", "))
}

fn random_poly(rng: &mut ChaCha8Rng, names: &[String], min_degree: usize) -> String {
    let terms: Vec<String> = (0..rng.gen_range(1..=3))
        .map(|_| {
            let mut t = format!("({})", rng.gen_range(-4i64..=4));
            for _ in 0..rng.gen_range(min_degree..=2) {
                t.push('*');
                t.push_str(&names[rng.gen_range(0..names.len())]);
            }
            t
        })
        .collect();
    terms.join(" + ")
}

fn brute_dimension(i: &Ideal) -> i64 {
    if i.is_unit(&b()).unwrap() {
        return -1;
    }
    let names = i.ring().names().to_vec();
    let n = names.len();
    (0u32..(1 << n))
        .filter(|set| {
            let drop: Vec<&str> = (0..n)
                .filter(|k| set & (1 << k) == 0)
                .map(|k| names[k].as_str())
                .collect();
            eliminate(i, &drop, &b()).unwrap().generators().is_empty()
        })
        .map(|set| set.count_ones() as i64)
        .max()
        .unwrap_or(0)
}

fn kernel_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let r = VarTable::new(&names).unwrap();
    let orders = [
        MonomialOrder::Grevlex,
        MonomialOrder::Lex,
        MonomialOrder::Block { high: 1 },
    ];
    let mut spairs = 0;
    for case in 0..SHUFFLE_IDEALS {
        let ord = orders[case % orders.len()];
        let mut gens: Vec<MultiPoly> = (0..rng.gen_range(2..=3))
            .map(|_| parse_poly(&random_poly(&mut rng, &names, 1), &r).unwrap())
            .collect();
        let reference = groebner_basis(&Ideal::new(&r, gens.clone()).unwrap(), &ord, &b()).unwrap();
        for (i, f) in reference.iter().enumerate() {
            for g in &reference[i + 1..] {
                let (_, rem) =
                    divide(&s_polynomial(f, g, &ord).unwrap(), &reference, &ord).unwrap();
                ensure(rem.is_zero(), || format!("S({f}, {g}) leaves {rem}"))?;
                spairs += 1;
            }
        }
        for _ in 0..SHUFFLES {
            gens.shuffle(&mut rng);
            let again = groebner_basis(&Ideal::new(&r, gens.clone()).unwrap(), &ord, &b()).unwrap();
            ensure(again == reference, || {
                format!("basis of {gens:?} depends on generator order")
            })?;
        }
    }
    let mut dims = 0;
    for nvars in 2..=4usize {
        let names: Vec<String> = (0..nvars).map(|k| format!("v{k}")).collect();
        let r = VarTable::new(&names).unwrap();
        for _ in 0..6 {
            let gens: Vec<MultiPoly> = (0..rng.gen_range(1..=3))
                .map(|_| parse_poly(&random_poly(&mut rng, &names, 0), &r).unwrap())
                .collect();
            let i = Ideal::new(&r, gens).unwrap();
            let (got, want) = (dimension(&i, &b()).unwrap(), brute_dimension(&i));
            ensure(got == want, || {
                format!("dimension {got} vs brute force {want} for {i:?}")
            })?;
            dims += 1;
        }
    }
    Ok(format!(
        "{SHUFFLE_IDEALS} ideals x {SHUFFLES} shuffles, {spairs} S-pairs, {dims} dimensions"
    ))
}

fn envelope_oracle() -> Outcome {
    let start = Instant::now();
    let sys =
        build_envelope_system(&parse_construction(fixtures::SLIDING_SEGMENT).unwrap()).unwrap();
    let e = compute_locus_elimination(&sys, &b()).map_err(|e| e.to_string())?;
    within("discriminant", start, ENVELOPE_LIMIT)?;
    ensure(!e.is_zero_ideal() && !e.is_unit(&b()).unwrap(), || {
        "trivial discriminant".into()
    })?;
    for k in 2..2 + ENVELOPE_POINTS {
        let t = q(1, k);
        let den = q(1, 1) + &t * &t;
        let a = (q(1, 1) - &t * &t) / &den;
        let c = (&t + &t) / &den;
        let pt = [&a * &a * &a, &c * &c * &c];
        for g in e.generators() {
            ensure(g.eval(&pt) == zero(), || format!("{g} at t = {t}"))?;
        }
    }
    Ok(format!(
        "vanishes at {ENVELOPE_POINTS} points (a^3, b^3) in {:?}",
        start.elapsed()
    ))
}

fn selftest_determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_locuscover"))
            .arg("selftest")
            .output()
            .unwrap()
    };
    let (a, c) = (run(), run());
    ensure(a.status.success() && c.status.success(), || {
        format!("exit {:?} / {:?}", a.status, c.status)
    })?;
    ensure(a.stdout == c.stdout, || "outputs differ".into())?;
    Ok(format!("{} identical bytes", a.stdout.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("golden generic triangle cover", golden_generic_triangle),
        ("golden right triangle cover", golden_right_triangle),
        (
            "elimination fallback on right triangle",
            elimination_right_triangle,
        ),
        ("compilation golden", compilation_golden),
        ("cover property suite", cgs_properties),
        ("kernel property suite", kernel_properties),
        ("envelope discriminant oracle", envelope_oracle),
        ("selftest determinism", selftest_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or(p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {}/{} passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Acceptance suite: one line per criterion, `ACCEPT <id> PASS|FAIL <detail>`.
//!
//! Run with `cargo test -p schober-cli --test acceptance -- --nocapture` to
//! see the lines.

use std::time::{Duration, Instant};

use schober_core::homalg::{random_points, skyscraper};
use schober_core::moduli::{
    categorical_wallcross, compare_suite, sample_points, tally, wallcross_point, BirationalMap, InertiaPoint,
    RationalFunction,
};
use schober_core::schober::{HypersurfaceSchober, TwistedComplex};
use schober_core::sections::{skyscraper_inertia, CylinderSchober, InertiaObject};
use schober_core::{LaurentPoly, Rational, TorusPoint};

/// Wall-clock budgets.
const MAP_BUDGET: Duration = Duration::from_secs(1);
const COMPARE_BUDGET: Duration = Duration::from_secs(60);
/// Scalars are compared exactly; no tolerance anywhere.
const EXACT: bool = true;

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn line(o: &Outcome) -> String {
    format!("ACCEPT {} {} {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.detail)
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["schober"];
    argv.extend_from_slice(args);
    let code = schober_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap())
}

/// The displayed formula, built independently of `wallcross_map`.
fn displayed_formula(n: usize) -> (String, Vec<RationalFunction>) {
    let mut text = String::new();
    let mut comps = Vec::new();
    for i in 1..n {
        text.push_str(&format!("y{} -> y{}\n", i, i));
        comps.push(RationalFunction::var(n, i - 1));
    }
    let sum: Vec<String> = std::iter::once("1".to_string())
        .chain((1..n).map(|i| format!("y{}", i)))
        .collect();
    text.push_str(&format!("y{} -> ({})/y{}\n", n, sum.join(" + "), n));
    let mut sigma = LaurentPoly::one(n);
    for i in 0..n - 1 {
        sigma = &sigma + &LaurentPoly::var(n, i);
    }
    comps.push(RationalFunction::new(sigma, LaurentPoly::var(n, n - 1)).unwrap());
    (text, comps)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in 2..=4 {
        let (code, out) = run_cli(&["map", "--n", &n.to_string(), "--k", &n.to_string()]);
        let (want_text, want) = displayed_formula(n);
        let parsed = BirationalMap::parse(&out).unwrap();
        let symbolic = parsed
            .components()
            .iter()
            .zip(&want)
            .all(|(a, b)| a.equivalent(b) && a == b);
        let this = code == 0 && out == want_text && symbolic;
        ok &= this;
        notes.push(format!("n={}:{}", n, if this { "exact" } else { "mismatch" }));
    }
    let t = start.elapsed();
    Outcome {
        id: 1,
        pass: ok && t < MAP_BUDGET,
        detail: format!("map formula {} in {:?}", notes.join(","), t),
    }
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [2, 3] {
        let r = compare_suite(n, n, 50, 7).unwrap();
        let (p, t) = tally(&r);
        ok &= p == 50 && t == 50;
        notes.push(format!("n={}:{}/{}", n, p, t));
    }
    let t = start.elapsed();
    Outcome {
        id: 2,
        pass: ok && t < COMPARE_BUDGET,
        detail: format!("oracle {} exact={} in {:?}", notes.join(","), EXACT, t),
    }
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, k) in [(2, 1), (3, 1), (3, 2)] {
        let r = compare_suite(n, k, 25, 11).unwrap();
        let (p, t) = tally(&r);
        ok &= p == 25 && t == 25;
        notes.push(format!("(n={},k={}):{}/{}", n, k, p, t));
    }
    Outcome {
        id: 3,
        pass: ok,
        detail: format!("derived framings {}", notes.join(",")),
    }
}

/// Points with the last coordinate solving `σ = 0`.
fn pants_points(count: usize, seed: u64) -> Vec<TorusPoint> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        for p in random_points(2, 16, s) {
            let y1 = p.coords()[0].clone();
            let y2 = -(Rational::from_integer(1.into()) + &y1);
            if let Ok(q) = TorusPoint::new(vec![y1, y2]) {
                if out.len() < count {
                    out.push(q);
                }
            }
        }
        s += 1;
    }
    out
}

fn criterion_4() -> Outcome {
    let s = HypersurfaceSchober::new(3, 3).unwrap();
    let on = pants_points(50, 40);
    let off: Vec<TorusPoint> = sample_points(3, 50, 41).into_iter().map(|ip| ip.point).collect();
    let mut agree = 0;
    for p in on.iter().chain(&off) {
        let support = !LaurentPoly::pants_section(2)
            .evaluate(p)
            .eq(&Rational::from_integer(0.into()));
        let probes = s.clean_probes(&TwistedComplex::untwisted(skyscraper(p)));
        if probes.agree() && probes.i_star_exact == support {
            agree += 1;
        }
    }
    Outcome {
        id: 4,
        pass: agree == 100,
        detail: format!("clean probes agree with σ(p)≠0 on {}/100 (50 on, 50 off)", agree),
    }
}

fn criterion_5() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for n in [2, 3] {
        let s = HypersurfaceSchober::new(n, n).unwrap();
        let samples = s.default_samples();
        let r = s.check_sf_axioms(&samples);
        let sf3 = r.lines.iter().filter(|l| l.name.starts_with("SF3") && l.pass).count();
        ok &= samples.len() >= 10 && r.passed() && sf3 == samples.len();
        notes.push(format!(
            "n={}:{} samples,{}/{} checks",
            n,
            samples.len(),
            r.lines.len() - r.failures().count(),
            r.lines.len()
        ));
    }
    Outcome {
        id: 5,
        pass: ok,
        detail: format!("SF1-SF4 {}", notes.join(",")),
    }
}

fn class_inertia() -> Vec<(usize, usize, InertiaObject)> {
    let mut out = Vec::new();
    for (n, k, seed) in [(2, 2, 1), (2, 1, 2), (3, 3, 3), (3, 1, 4)] {
        for ip in sample_points(n, 3, seed) {
            out.push((n, k, skyscraper_inertia(&ip.point, &ip.lambda)));
        }
    }
    out
}

fn cyl(n: usize, k: usize) -> CylinderSchober {
    CylinderSchober::trivial(HypersurfaceSchober::new(n, k).unwrap())
}

fn criterion_6() -> Outcome {
    let mut total = 0;
    let mut passed = 0;
    for (n, k, obj) in class_inertia() {
        let c = cyl(n, k);
        let q = c.chekanov(&obj).unwrap();
        let back = c.unmutate(&c.mutate(&q).unwrap()).unwrap();
        total += 1;
        passed += c.iso_quintuple(&q, &back).found() as usize;
        let counit = c.counit_quintuple(&obj.y).unwrap();
        let back = c.unmutate(&c.mutate(&counit).unwrap()).unwrap();
        total += 1;
        passed += c.iso_quintuple(&counit, &back).found() as usize;
        let mq = c.clifford(&obj).unwrap();
        let again = c.mutate(&c.unmutate(&mq).unwrap()).unwrap();
        total += 1;
        passed += c.iso_mutated(&mq, &again).found() as usize;
    }
    Outcome {
        id: 6,
        pass: total >= 10 && passed == total,
        detail: format!("round trips {}/{}", passed, total),
    }
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    let mut passed = 0;
    for (n, k, obj) in class_inertia() {
        let c = cyl(n, k);
        let q = c.chekanov(&obj).unwrap();
        if !CylinderSchober::is_split(&q) {
            continue;
        }
        total += 1;
        let conn = c.mutated_connecting_on_y1(&q).unwrap();
        if conn.as_scalar() == Some(c.schober().sigma()) {
            passed += 1;
        }
    }
    Outcome {
        id: 7,
        pass: total >= 10 && passed == total,
        detail: format!("split inputs with ∂♯φ = σ exactly {}/{}", passed, total),
    }
}

fn criterion_8() -> Outcome {
    let mut inv = 0;
    let mut pts: Vec<(usize, InertiaPoint)> = Vec::new();
    for (i, n) in [2usize, 3, 4, 5].into_iter().enumerate() {
        for ip in sample_points(n, 50, 100 + i as u64) {
            pts.push(((i % n) + 1, ip));
        }
    }
    for (k, ip) in &pts {
        let twice = wallcross_point(&wallcross_point(ip, *k).unwrap(), *k).unwrap();
        inv += (twice == *ip) as usize;
    }
    let mut cat = 0;
    let mut tried = 0;
    let small = pts.iter().filter(|(_, ip)| ip.n() == 2).take(10);
    let mid = pts.iter().filter(|(_, ip)| ip.n() == 3).take(10);
    for (k, ip) in small.chain(mid) {
        tried += 1;
        let once = categorical_wallcross(ip, *k).unwrap();
        let twice = categorical_wallcross(&once, *k).unwrap();
        cat += (twice == *ip) as usize;
    }
    Outcome {
        id: 8,
        pass: pts.len() == 200 && inv == 200 && tried == 20 && cat == 20,
        detail: format!(
            "involution {}/{}; categorical K² = id {}/{}",
            inv,
            pts.len(),
            cat,
            tried
        ),
    }
}

#[test]
fn acceptance() {
    let criteria: [fn() -> Outcome; 8] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
    ];
    let outcomes: Vec<Outcome> = criteria.iter().map(|c| c()).collect();
    for o in &outcomes {
        println!("{}", line(o));
    }
    let failed: Vec<u32> = outcomes.iter().filter(|o| !o.pass).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed criteria: {:?}", failed);
}

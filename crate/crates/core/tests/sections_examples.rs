use schober_core::homalg::{skyscraper, ChainMap, FreeComplex};
use schober_core::laurent::{int, rat};
use schober_core::schober::{HypersurfaceSchober, PantsObject, TwistedComplex};
use schober_core::sections::{skyscraper_inertia, CylinderSchober, InertiaObject, Iso};
use schober_core::{LaurentPoly, TorusPoint};

fn cyl(n: usize, k: usize) -> CylinderSchober {
    CylinderSchober::trivial(HypersurfaceSchober::new(n, k).unwrap())
}

fn pt(c: &[i64]) -> TorusPoint {
    TorusPoint::from_ints(c).unwrap()
}

#[test]
fn zero_m_fails_validation() {
    let c = cyl(2, 2);
    let mut q = c.chekanov(&skyscraper_inertia(&pt(&[2]), &int(3))).unwrap();
    q.m = Iso {
        fwd: q.m.fwd.scale(&LaurentPoly::zero(1)),
        bwd: q.m.bwd.clone(),
    };
    let r = c.validate_quintuple(&q);
    let line = r.get("m-iso").unwrap();
    assert!(!line.pass);
    assert!(line.witness.starts_with("m not quasi-iso"), "{}", line);
}

#[test]
fn counit_quintuple_of_structure_sheaf() {
    let c = cyl(2, 2);
    let o = TwistedComplex::untwisted(FreeComplex::structure_sheaf(1));
    let q = c.counit_quintuple(&o).unwrap();
    assert!(c.validate_quintuple(&q).passed());
    let mq = c.mutate(&q).unwrap();
    assert!(c.probes().is_exact(mq.x.complex()));
    assert!(c.validate_mutated(&mq).passed());
}

#[test]
fn zero_quintuples() {
    let c = cyl(3, 3);
    let zero = InertiaObject {
        y: TwistedComplex::untwisted(FreeComplex::zero(2)),
        m: LaurentPoly::one(2),
    };
    let q = c.chekanov(&zero).unwrap();
    assert!(q.x.complex().is_zero_object() && q.y1().is_zero_object());
    let mq = c.mutate(&q).unwrap();
    assert!(mq.x.complex().is_zero_object() && mq.y2().is_zero_object());
    let back = c.unmutate(&mq).unwrap();
    assert!(back.x.complex().is_zero_object() && back.y2.complex.is_zero_object());
    assert!(c.clifford(&zero).unwrap().y2().is_zero_object());
}

#[test]
fn identity_iso() {
    let c = cyl(2, 1);
    let q = c.chekanov(&skyscraper_inertia(&pt(&[3]), &rat(2, 5))).unwrap();
    let out = c.iso_quintuple(&q, &q);
    assert!(out.found(), "{:?}", out.diagnostics);
    let mq = c.clifford(&skyscraper_inertia(&pt(&[3]), &rat(2, 5))).unwrap();
    assert!(c.iso_mutated(&mq, &mq).found());
}

#[test]
fn different_support_is_not_isomorphic() {
    let c = cyl(2, 2);
    let a = c.chekanov(&skyscraper_inertia(&pt(&[2]), &int(1))).unwrap();
    let b = c.chekanov(&skyscraper_inertia(&pt(&[3]), &int(1))).unwrap();
    assert!(!c.iso_quintuple(&a, &b).found());
}

#[test]
fn essential_image_of_chekanov() {
    // A quintuple with exact X is a Chekanov image: the counit quintuple of a
    // clean Y matches F_Ch(Y, σ).
    for (n, p) in [(2, vec![2]), (3, vec![1, 1])] {
        let c = cyl(n, n);
        let y = TwistedComplex::untwisted(skyscraper(&pt(&p)));
        let q = c.counit_quintuple(&y).unwrap();
        assert!(c.probes().is_exact(q.x.complex()));
        let ch = c
            .chekanov(&InertiaObject {
                y: y.clone(),
                m: c.schober().sigma(),
            })
            .unwrap();
        let out = c.iso_quintuple(&q, &ch);
        assert!(out.found(), "{:?}", out.diagnostics);
    }
    // Non-exact X is not.
    let c = cyl(2, 2);
    let x = PantsObject::structure_object(1);
    let f = c.schober().pushforward(&x);
    let q = c.counit_quintuple(&f).unwrap();
    assert!(!c.probes().is_exact(q.x.complex()));
    let ch = c
        .chekanov(&InertiaObject {
            y: f,
            m: LaurentPoly::one(1),
        })
        .unwrap();
    assert!(!c.iso_quintuple(&q, &ch).found());
}

#[test]
fn corollary_examples() {
    let r = cyl(2, 2).verify_corollary(&skyscraper_inertia(&pt(&[2]), &int(3)));
    assert!(r.passed(), "{}", r);
    assert_eq!(r.get("scalar-left").unwrap().witness, "1");
    assert_eq!(r.get("scalar-right").unwrap().witness, "1");
    let r = cyl(3, 3).verify_corollary(&skyscraper_inertia(&pt(&[1, 1]), &int(1)));
    assert_eq!(r.get("scalar-right").unwrap().witness, "3");
    let r = cyl(2, 2).verify_corollary(&skyscraper_inertia(&pt(&[-1]), &int(1)));
    assert!(!r.passed());
    assert!(r.get("clean").unwrap().witness.contains("not clean"));
}

#[test]
fn corollary_in_four_variables() {
    for k in [1, 4] {
        let r = cyl(4, k).verify_corollary(&skyscraper_inertia(&pt(&[2, 1, -1]), &rat(3, 2)));
        assert!(r.passed(), "{}", r);
    }
}

#[test]
fn k_frakm_squares_to_identity() {
    for (n, k) in [(2, 2), (3, 1), (3, 2)] {
        let c = cyl(n, k);
        let p = TorusPoint::new((0..n - 1).map(|i| rat(i as i64 + 2, 3)).collect()).unwrap();
        let obj = skyscraper_inertia(&p, &rat(-5, 4));
        let twice = c.k_frakm(&c.k_frakm(&obj).unwrap()).unwrap();
        assert_eq!(twice, obj);
    }
}

#[test]
fn chekanov_of_identity_has_identity_data() {
    let c = cyl(2, 2);
    let y = skyscraper(&pt(&[2]));
    let q = c
        .chekanov(&InertiaObject {
            y: TwistedComplex::untwisted(y.clone()),
            m: LaurentPoly::one(1),
        })
        .unwrap();
    assert!(CylinderSchober::is_split(&q));
    assert_eq!(q.m.fwd, ChainMap::identity(&y).with_endpoints(&q.y1(), &y).unwrap());
}

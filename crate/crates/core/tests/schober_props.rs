use proptest::prelude::*;
use schober_core::homalg::{compose, cone, skyscraper, ChainMap};
use schober_core::laurent::rat;
use schober_core::schober::{HypersurfaceSchober, SampleObject, TwistedComplex};
use schober_core::{LaurentPoly, Rational, TorusPoint};

fn nonzero() -> impl Strategy<Value = Rational> {
    (1i64..=9, 1i64..=3, any::<bool>()).prop_map(|(a, b, s)| if s { rat(a, b) } else { rat(-a, b) })
}

fn point(nv: usize) -> impl Strategy<Value = TorusPoint> {
    prop::collection::vec(nonzero(), nv).prop_map(|c| TorusPoint::new(c).unwrap())
}

fn on_pants(nv: usize) -> impl Strategy<Value = TorusPoint> {
    // Solve σ = 0 for the last coordinate, keeping it nonzero.
    prop::collection::vec(nonzero(), nv - 1).prop_filter_map("last coordinate vanishes", move |c| {
        let mut c = c;
        let last = -(Rational::from_integer(1.into()) + c.iter().cloned().sum::<Rational>());
        if last == Rational::from_integer(0.into()) {
            return None;
        }
        c.push(last);
        TorusPoint::new(c).ok()
    })
}

fn sigma_zero(p: &TorusPoint) -> bool {
    LaurentPoly::pants_section(p.num_vars()).evaluate(p) == Rational::from_integer(0.into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cleanness_probes_agree_with_sigma(p in (1usize..=2).prop_flat_map(|nv| prop_oneof![point(nv), on_pants(nv)])) {
        let n = p.num_vars() + 1;
        let s = HypersurfaceSchober::new(n, n).unwrap();
        let f = TwistedComplex::untwisted(skyscraper(&p));
        let probes = s.clean_probes(&f);
        prop_assert!(probes.agree());
        prop_assert_eq!(probes.i_star_exact, !sigma_zero(&p));
    }

    #[test]
    fn frakm_is_natural(n in 2usize..=3, k in 1usize..=3, p in point(2), g in nonzero()) {
        prop_assume!(k <= n);
        let s = HypersurfaceSchober::new(n, k).unwrap();
        let p = TorusPoint::new(p.coords()[..n - 1].to_vec()).unwrap();
        let c = skyscraper(&p);
        let gpoly = &LaurentPoly::var(n - 1, 0) + &LaurentPoly::constant(n - 1, g);
        let f = ChainMap::scalar(&c, &gpoly);
        let cf = cone(&f);
        let m_src = s.frakm(&TwistedComplex::untwisted(c.clone()));
        let m_cone = s.frakm(&TwistedComplex::untwisted(cf.complex.clone()));
        prop_assert_eq!(compose(&m_cone, &cf.inclusion).unwrap(), compose(&cf.inclusion, &m_src).unwrap());
        prop_assert_eq!(
            compose(&m_src.shift(1), &cf.projection).unwrap(),
            compose(&cf.projection, &m_cone).unwrap()
        );
        let tf = TwistedComplex::untwisted(c.clone());
        let q = s.t_identification(&tf);
        let m_t = s.frakm(&TwistedComplex::untwisted(q.source().clone()));
        prop_assert_eq!(compose(&q, &m_t).unwrap(), compose(&m_src, &q).unwrap());
    }

    #[test]
    fn spherical_axioms_on_random_skyscrapers(n in 2usize..=3, p in point(2)) {
        let s = HypersurfaceSchober::new(n, n).unwrap();
        let p = TorusPoint::new(p.coords()[..n - 1].to_vec()).unwrap();
        let r = s.check_sf_axioms(&[SampleObject::Skyscraper(p)]);
        prop_assert!(r.passed(), "{}", r);
    }
}

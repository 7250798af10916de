//! Rank-one moduli: points `(p, λ)`, the closed-form wall-crossing map and
//! the comparison against the categorical route.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::homalg::{skyscraper, ProbeSet};
use crate::laurent::{LaurentError, LaurentPoly, Monomial, Rational, TorusPoint};
use crate::report::Report;
use crate::schober::{HypersurfaceSchober, SchoberError, TwistedComplex};
use crate::sections::{CylinderSchober, InertiaObject};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuliError {
    OnPants(TorusPoint),
    ZeroLambda,
    VarCount { expected: usize, found: usize },
    Framing(SchoberError),
    Indeterminate { component: usize, reason: String },
    ZeroDenominator,
    Parse(String),
    Pipeline(String),
}

impl fmt::Display for ModuliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuliError::OnPants(p) => write!(f, "point {} lies on the pants divisor σ = 0", p),
            ModuliError::ZeroLambda => write!(f, "monodromy scalar must be nonzero"),
            ModuliError::VarCount { expected, found } => {
                write!(f, "expected {} coordinates, found {}", expected, found)
            }
            ModuliError::Framing(e) => write!(f, "{}", e),
            ModuliError::Indeterminate { component, reason } => write!(f, "component y{}: {}", component + 1, reason),
            ModuliError::ZeroDenominator => write!(f, "zero denominator"),
            ModuliError::Parse(m) => write!(f, "parse error: {}", m),
            ModuliError::Pipeline(m) => write!(f, "categorical pipeline failed: {}", m),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ModuliError {}

impl From<LaurentError> for ModuliError {
    fn from(e: LaurentError) -> Self {
        ModuliError::Parse(e.to_string())
    }
}

/// A rank-one local system: torus point `p` and monodromy scalar `λ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InertiaPoint {
    pub point: TorusPoint,
    pub lambda: Rational,
}

impl InertiaPoint {
    pub fn new(point: TorusPoint, lambda: Rational) -> Result<Self, ModuliError> {
        if lambda.is_zero() {
            return Err(ModuliError::ZeroLambda);
        }
        Ok(InertiaPoint { point, lambda })
    }

    pub fn n(&self) -> usize {
        self.point.num_vars() + 1
    }

    pub fn sigma(&self) -> Rational {
        LaurentPoly::pants_section(self.point.num_vars()).evaluate(&self.point)
    }

    /// All `n` coordinates `(p_1, ..., p_{n-1}, λ)`.
    pub fn coords(&self) -> Vec<Rational> {
        let mut c = self.point.coords().to_vec();
        c.push(self.lambda.clone());
        c
    }

    pub fn from_coords(coords: &[Rational]) -> Result<Self, ModuliError> {
        let (lambda, p) = coords
            .split_last()
            .ok_or(ModuliError::VarCount { expected: 2, found: 0 })?;
        let point = TorusPoint::new(p.to_vec())?;
        InertiaPoint::new(point, lambda.clone())
    }
}

impl fmt::Display for InertiaPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.point.coords().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "; {})", self.lambda)
    }
}

/// `num / den` in the Laurent ring, normalized so that `den` is a polynomial
/// with no monomial factor and leading coefficient 1, and `den = 1` whenever
/// the quotient is a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ModuliError> {
        if den.is_zero() {
            return Err(ModuliError::ZeroDenominator);
        }
        if let Some(q) = num.exact_div(&den) {
            let nv = num.num_vars();
            return Ok(RationalFunction {
                num: q,
                den: LaurentPoly::one(nv),
            });
        }
        let shift: Vec<i32> = den.min_exponents().expect("nonzero").iter().map(|e| -e).collect();
        let lc = den.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        let inv = lc.recip();
        let den = den.shift_exponents(&shift)?.scale(&inv);
        let num = num.shift_exponents(&shift)?.scale(&inv);
        Ok(RationalFunction { num, den })
    }

    pub fn poly(p: LaurentPoly) -> Self {
        let nv = p.num_vars();
        RationalFunction {
            num: p,
            den: LaurentPoly::one(nv),
        }
    }

    pub fn var(num_vars: usize, i: usize) -> Self {
        Self::poly(LaurentPoly::var(num_vars, i))
    }

    pub fn num_vars(&self) -> usize {
        self.num.num_vars()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Equality as elements of the fraction field.
    pub fn equivalent(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn add(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(num, &self.den * &o.den).expect("nonzero product")
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero product")
    }

    pub fn inv(&self) -> Result<Self, ModuliError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<Self, ModuliError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut out = Self::poly(LaurentPoly::one(self.num_vars()));
        for _ in 0..e.unsigned_abs() {
            out = out.mul(&base);
        }
        Ok(out)
    }

    /// Split into a polynomial numerator and denominator (both without
    /// negative exponents) for display and evaluation diagnostics.
    pub fn display_parts(&self) -> (LaurentPoly, LaurentPoly) {
        let nv = self.num_vars();
        let neg: Vec<i32> = match self.num.min_exponents() {
            Some(m) => m.iter().map(|&e| (-e).max(0)).collect(),
            None => alloc::vec![0; nv],
        };
        let num = self.num.shift_exponents(&neg).expect("bounded");
        let den = self.den.shift_exponents(&neg).expect("bounded");
        (num, den)
    }

    /// Exact value at `q`; the error names the vanishing factor.
    pub fn evaluate(&self, q: &[Rational]) -> Result<Rational, String> {
        let (num, den) = self.display_parts();
        let d = den
            .try_evaluate(q)
            .ok_or_else(|| "evaluation at a zero coordinate".to_string())?;
        if d.is_zero() {
            return Err(format!("denominator {} vanishes", den));
        }
        let n = num
            .try_evaluate(q)
            .ok_or_else(|| "evaluation at a zero coordinate".to_string())?;
        Ok(n / d)
    }

    /// Substitute `subs[i]` for `y_{i+1}`.
    pub fn substitute(&self, subs: &[RationalFunction]) -> Result<Self, ModuliError> {
        let sub_poly = |p: &LaurentPoly| -> Result<RationalFunction, ModuliError> {
            let nv = subs[0].num_vars();
            let mut acc = Self::poly(LaurentPoly::zero(nv));
            for (m, c) in p.terms() {
                let mut t = Self::poly(LaurentPoly::constant(nv, c.clone()));
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e != 0 {
                        t = t.mul(&subs[i].pow(e)?);
                    }
                }
                acc = acc.add(&t);
            }
            Ok(acc)
        };
        Ok(sub_poly(&self.num)?.mul(&sub_poly(&self.den)?.inv()?))
    }

    /// Parse `A`, `A/B`, `(A)/(B)` in the Laurent grammar.
    pub fn parse(s: &str, num_vars: usize) -> Result<Self, ModuliError> {
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(ModuliError::Parse(format!("more than one '/' in {:?}", s)));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let part = |t: &str| -> Result<LaurentPoly, ModuliError> {
            let t = t.trim();
            let t = t.strip_prefix('(').and_then(|u| u.strip_suffix(')')).unwrap_or(t);
            Ok(LaurentPoly::parse(t, num_vars)?)
        };
        match split {
            Some(i) => Self::new(part(&s[..i])?, part(&s[i + 1..])?),
            None => Ok(Self::poly(part(s)?)),
        }
    }
}

fn paren(p: &LaurentPoly) -> String {
    let single = p.num_terms() == 1
        && p.terms()
            .all(|(m, c)| c.is_one() && m.exponents().iter().filter(|&&e| e != 0).count() <= 1);
    if single {
        p.to_string()
    } else {
        format!("({})", p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.display_parts();
        if den.is_one() {
            write!(f, "{}", num)
        } else {
            write!(f, "{}/{}", paren(&num), paren(&den))
        }
    }
}

/// A rational map of `(ℚ*)^n` given by `n` components in `y_1, ..., y_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalMap {
    n: usize,
    components: Vec<RationalFunction>,
}

impl BirationalMap {
    pub fn new(components: Vec<RationalFunction>) -> Result<Self, ModuliError> {
        let n = components.len();
        if let Some(c) = components.iter().find(|c| c.num_vars() != n) {
            return Err(ModuliError::VarCount {
                expected: n,
                found: c.num_vars(),
            });
        }
        Ok(BirationalMap { n, components })
    }

    pub fn identity(n: usize) -> Self {
        BirationalMap {
            n,
            components: (0..n).map(|i| RationalFunction::var(n, i)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[RationalFunction] {
        &self.components
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BirationalMap) -> Result<BirationalMap, ModuliError> {
        if self.n != other.n {
            return Err(ModuliError::VarCount {
                expected: self.n,
                found: other.n,
            });
        }
        let components = self
            .components
            .iter()
            .map(|c| c.substitute(&other.components))
            .collect::<Result<_, _>>()?;
        Ok(BirationalMap { n: self.n, components })
    }

    pub fn equivalent(&self, other: &BirationalMap) -> bool {
        self.n == other.n
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|(a, b)| a.equivalent(b))
    }

    /// Exact image of `q`; fails when `q` or its image leaves the torus.
    pub fn apply(&self, q: &[Rational]) -> Result<Vec<Rational>, ModuliError> {
        if q.len() != self.n {
            return Err(ModuliError::VarCount {
                expected: self.n,
                found: q.len(),
            });
        }
        if let Some(i) = q.iter().position(Zero::is_zero) {
            return Err(ModuliError::Indeterminate {
                component: i,
                reason: "input coordinate is zero".into(),
            });
        }
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let v = c
                    .evaluate(q)
                    .map_err(|reason| ModuliError::Indeterminate { component: i, reason })?;
                if v.is_zero() {
                    let (num, _) = c.display_parts();
                    let reason = format!("numerator {} vanishes, image leaves the torus", num);
                    return Err(ModuliError::Indeterminate { component: i, reason });
                }
                Ok(v)
            })
            .collect()
    }

    /// Parse `y_i -> f` lines, one per component, in order.
    pub fn parse(text: &str) -> Result<Self, ModuliError> {
        let lines: Vec<&str> = text.lines().map(str::trim).filter(|l| !l.is_empty()).collect();
        let n = lines.len();
        let mut comps = Vec::with_capacity(n);
        for (i, line) in lines.iter().enumerate() {
            let (lhs, rhs) = line
                .split_once("->")
                .ok_or_else(|| ModuliError::Parse(format!("missing '->' in {:?}", line)))?;
            if lhs.trim() != format!("y{}", i + 1) {
                return Err(ModuliError::Parse(format!("expected y{} on line {}", i + 1, i + 1)));
            }
            comps.push(RationalFunction::parse(rhs, n)?);
        }
        BirationalMap::new(comps)
    }
}

impl fmt::Display for BirationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            writeln!(f, "y{} -> {}", i + 1, c)?;
        }
        Ok(())
    }
}

/// `𝔪_k(p)`: `σ(p)` for `k = n`, `σ(p)/p_k` otherwise.
pub fn frakm_value(p: &TorusPoint, k: usize) -> Rational {
    let nv = p.num_vars();
    let s = LaurentPoly::pants_section(nv).evaluate(p);
    if k == nv + 1 {
        s
    } else {
        s / &p.coords()[k - 1]
    }
}

fn check_framing(n: usize, k: usize) -> Result<HypersurfaceSchober, ModuliError> {
    HypersurfaceSchober::new(n, k).map_err(ModuliError::Framing)
}

fn check_clean(ip: &InertiaPoint) -> Result<(), ModuliError> {
    if ip.lambda.is_zero() {
        return Err(ModuliError::ZeroLambda);
    }
    if ip.sigma().is_zero() {
        return Err(ModuliError::OnPants(ip.point.clone()));
    }
    Ok(())
}

/// The Koszul complex of `p` with automorphism `λ`.
pub fn skyscraper_object(ip: &InertiaPoint) -> Result<InertiaObject, ModuliError> {
    check_clean(ip)?;
    let nv = ip.point.num_vars();
    Ok(InertiaObject {
        y: TwistedComplex::untwisted(skyscraper(&ip.point)),
        m: LaurentPoly::constant(nv, ip.lambda.clone()),
    })
}

/// `(p, λ) ↦ (p, λ⁻¹ 𝔪_k(p))`.
pub fn wallcross_point(ip: &InertiaPoint, k: usize) -> Result<InertiaPoint, ModuliError> {
    check_framing(ip.n(), k)?;
    check_clean(ip)?;
    let lambda = frakm_value(&ip.point, k) / &ip.lambda;
    Ok(InertiaPoint {
        point: ip.point.clone(),
        lambda,
    })
}

/// `y_i ↦ y_i` for `i < n`, `y_n ↦ y_n⁻¹ 𝔪_k`.
pub fn wallcross_map(n: usize, k: usize) -> Result<BirationalMap, ModuliError> {
    check_framing(n, k)?;
    let nv = n - 1;
    let mut comps: Vec<RationalFunction> = (0..nv).map(|i| RationalFunction::var(n, i)).collect();
    let sigma = LaurentPoly::pants_section(nv).extend_vars(n);
    let mut e = alloc::vec![0i32; n];
    e[n - 1] = -1;
    if k < n {
        e[k - 1] = -1;
    }
    let m = LaurentPoly::monomial(n, Rational::one(), Monomial::from_exponents(e));
    comps.push(RationalFunction::poly(&sigma * &m));
    BirationalMap::new(comps)
}

pub fn apply_map(m: &BirationalMap, q: &[Rational]) -> Result<Vec<Rational>, ModuliError> {
    m.apply(q)
}

/// The wall-crossing read off the categorical pipeline, with its report.
pub fn categorical_wallcross_with(
    ip: &InertiaPoint,
    k: usize,
    probes: &ProbeSet,
) -> Result<(InertiaPoint, Report), ModuliError> {
    let s = check_framing(ip.n(), k)?.with_probes(probes.clone());
    let obj = skyscraper_object(ip)?;
    let cyl = CylinderSchober::trivial(s);
    let (report, scalar) = cyl.corollary(&obj);
    match scalar {
        Some(lambda) if report.passed() => Ok((
            InertiaPoint {
                point: ip.point.clone(),
                lambda,
            },
            report,
        )),
        _ => Err(ModuliError::Pipeline(report.to_string())),
    }
}

pub fn categorical_wallcross(ip: &InertiaPoint, k: usize) -> Result<InertiaPoint, ModuliError> {
    categorical_wallcross_with(ip, k, &ProbeSet::default()).map(|(p, _)| p)
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    let a: i64 = rng.gen_range(1..=9);
    let b: i64 = rng.gen_range(1..=3);
    let r = Rational::new(a.into(), b.into());
    if rng.gen_bool(0.5) {
        -r
    } else {
        r
    }
}

/// `count` points with `σ(p) ≠ 0`, coordinates `±a/b` with `a ≤ 9`, `b ≤ 3`.
pub fn sample_points(n: usize, count: usize, seed: u64) -> Vec<InertiaPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let coords = (0..n - 1).map(|_| small_rational(&mut rng)).collect();
        let point = TorusPoint::new(coords).expect("nonzero coordinates");
        let ip = InertiaPoint {
            point,
            lambda: small_rational(&mut rng),
        };
        if !ip.sigma().is_zero() {
            out.push(ip);
        }
    }
    out
}

/// Compare the categorical route against the formula on `trials` sampled points.
pub fn compare_suite(n: usize, k: usize, trials: usize, seed: u64) -> Result<Report, ModuliError> {
    check_framing(n, k)?;
    let mut r = Report::new();
    for (t, ip) in sample_points(n, trials, seed).into_iter().enumerate() {
        let name = format!("trial-{}", t + 1);
        let formula = wallcross_point(&ip, k)?;
        match categorical_wallcross(&ip, k) {
            Ok(cat) => {
                let ok = cat == formula;
                r.check(&name, ok, format!("{} -> {} vs {}", ip, cat, formula));
            }
            Err(e) => r.check(&name, false, format!("{}: {}", ip, e)),
        }
    }
    Ok(r)
}

/// `passed/total` over a report.
pub fn tally(r: &Report) -> (usize, usize) {
    let total = r.lines.len();
    (total - r.failures().count(), total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{int, rat};

    fn ip(p: &[i64], l: Rational) -> InertiaPoint {
        InertiaPoint::new(TorusPoint::from_ints(p).unwrap(), l).unwrap()
    }

    #[test]
    fn point_formula() {
        assert_eq!(wallcross_point(&ip(&[2], int(3)), 2).unwrap(), ip(&[2], int(1)));
        let w = wallcross_point(&ip(&[2], int(3)), 1).unwrap();
        assert_eq!(w.lambda, rat(1, 2));
        assert_eq!(wallcross_point(&ip(&[2], int(3)), 2).unwrap().to_string(), "(2; 1)");
        assert!(matches!(
            wallcross_point(&ip(&[-1], int(3)), 2),
            Err(ModuliError::OnPants(_))
        ));
        assert!(wallcross_point(&ip(&[2], int(3)), 3).is_err());
    }

    #[test]
    fn map_display() {
        assert_eq!(
            wallcross_map(2, 2).unwrap().to_string(),
            "y1 -> y1\ny2 -> (1 + y1)/y2\n"
        );
        assert_eq!(
            wallcross_map(4, 4).unwrap().to_string(),
            "y1 -> y1\ny2 -> y2\ny3 -> y3\ny4 -> (1 + y1 + y2 + y3)/y4\n"
        );
        assert_eq!(
            wallcross_map(2, 1).unwrap().to_string(),
            "y1 -> y1\ny2 -> (1 + y1)/(y1*y2)\n"
        );
    }

    #[test]
    fn map_parse_round_trip() {
        for (n, k) in [(2, 2), (2, 1), (3, 3), (4, 2)] {
            let m = wallcross_map(n, k).unwrap();
            let back = BirationalMap::parse(&m.to_string()).unwrap();
            assert!(back.equivalent(&m));
            assert_eq!(back, m);
        }
    }

    #[test]
    fn map_application() {
        let m = wallcross_map(2, 2).unwrap();
        assert_eq!(m.apply(&[int(2), int(3)]).unwrap(), [int(2), int(1)]);
        let e = m.apply(&[int(-1), int(5)]).unwrap_err();
        assert_eq!(
            e.to_string(),
            "component y2: numerator 1 + y1 vanishes, image leaves the torus"
        );
        assert_eq!(
            BirationalMap::identity(3).apply(&[int(1), rat(2, 3), int(-4)]).unwrap(),
            [int(1), rat(2, 3), int(-4)]
        );
    }

    #[test]
    fn symbolic_involution() {
        for n in 2..=4 {
            for k in 1..=n {
                let m = wallcross_map(n, k).unwrap();
                let mm = m.compose(&m).unwrap();
                assert!(mm.equivalent(&BirationalMap::identity(n)), "{}", mm);
                assert_eq!(mm, BirationalMap::identity(n));
            }
        }
    }

    #[test]
    fn rational_function_normalizes() {
        let f = RationalFunction::parse("(2 + 2*y1)/(2*y2 + 2*y1*y2)", 2).unwrap();
        assert_eq!(f, RationalFunction::poly(LaurentPoly::parse("y2^-1", 2).unwrap()));
        let g = RationalFunction::parse("y1/(3 + 3*y2)", 2).unwrap();
        assert!(g.denominator().leading_term().unwrap().1.is_one());
        assert!(g.equivalent(&RationalFunction::parse("(2*y1)/(6 + 6*y2)", 2).unwrap()));
    }

    #[test]
    fn skyscraper_objects() {
        let o = skyscraper_object(&ip(&[2], int(3))).unwrap();
        assert_eq!((o.y.complex.min_deg(), o.y.complex.ranks()), (-1, &[1usize, 1][..]));
        let o = skyscraper_object(&ip(&[1, 1], int(1))).unwrap();
        assert_eq!(o.y.complex.total_rank(), 4);
        assert!(skyscraper_object(&ip(&[-1], int(1))).is_err());
    }

    #[test]
    fn categorical_examples() {
        assert_eq!(categorical_wallcross(&ip(&[2], int(3)), 2).unwrap(), ip(&[2], int(1)));
        assert_eq!(categorical_wallcross(&ip(&[1, 1], int(1)), 3).unwrap().lambda, int(3));
        assert!(categorical_wallcross(&ip(&[-1], int(1)), 2).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_points(3, 10, 7);
        assert_eq!(a, sample_points(3, 10, 7));
        assert!(a.iter().all(|p| !p.sigma().is_zero()));
        assert_ne!(a, sample_points(3, 10, 8));
    }
}

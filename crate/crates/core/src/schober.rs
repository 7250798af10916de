//! The hypersurface spherical functor `i_*: D(pants) -> D(torus)`, its
//! adjoints, twists, framings and the clean-object test.
//!
//! Pants objects are torus complexes carrying a strict homotopy `h` with
//! `dh + hd = σ` and `h² = 0`; this is a module structure over the quotient
//! by `σ`, so `i_*` just forgets `h`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::homalg::{
    compose, cone, homology_ranks_at, pants_panel, skyscraper, wedge_homotopy, ChainMap, FreeComplex, HomalgError,
    Homotopy, PolyMatrix, ProbeSet,
};
use crate::laurent::{rat, LaurentPoly, TorusPoint};
use crate::report::Report;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchoberError {
    InvalidRank { n: usize },
    InvalidFraming { k: usize, n: usize },
    HomotopyIdentity { degree: i64 },
    HomotopySquare { degree: i64 },
    HomotopyShape { degree: i64 },
    NotStrict { degree: i64 },
    NotOnPants(TorusPoint),
    VarCount { expected: usize, found: usize },
    Homalg(HomalgError),
}

impl fmt::Display for SchoberError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchoberError::InvalidRank { n } => write!(f, "n must be at least 2, got {}", n),
            SchoberError::InvalidFraming { k, n } => write!(f, "framing index {} outside 1..={}", k, n),
            SchoberError::HomotopyIdentity { degree } => write!(f, "dh + hd ≠ σ at degree {}", degree),
            SchoberError::HomotopySquare { degree } => write!(f, "h² ≠ 0 at degree {}", degree),
            SchoberError::HomotopyShape { degree } => write!(f, "homotopy has wrong shape at degree {}", degree),
            SchoberError::NotStrict { degree } => {
                write!(f, "map does not commute with the pants homotopies at degree {}", degree)
            }
            SchoberError::NotOnPants(p) => write!(f, "point {} is not on the pants divisor", p),
            SchoberError::VarCount { expected, found } => {
                write!(f, "expected {} variables, found {}", expected, found)
            }
            SchoberError::Homalg(e) => write!(f, "{}", e),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SchoberError {}

impl From<HomalgError> for SchoberError {
    fn from(e: HomalgError) -> Self {
        SchoberError::Homalg(e)
    }
}

/// A torus complex with a formal power of the line bundle `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedComplex {
    pub complex: FreeComplex,
    pub twist: i64,
}

impl TwistedComplex {
    pub fn new(complex: FreeComplex, twist: i64) -> Self {
        TwistedComplex { complex, twist }
    }

    pub fn untwisted(complex: FreeComplex) -> Self {
        TwistedComplex { complex, twist: 0 }
    }
}

/// A chain map between twisted complexes; the twists are bookkeeping only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedMap {
    pub map: ChainMap,
    pub source_twist: i64,
    pub target_twist: i64,
}

/// Object of the pants category: a torus complex with a strict σ-homotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PantsObject {
    complex: FreeComplex,
    homotopy: Homotopy,
    twist: i64,
}

fn zeros(nv: usize, r: usize, c: usize) -> PolyMatrix {
    PolyMatrix::zeros(nv, r, c)
}

fn ident(nv: usize, n: usize) -> PolyMatrix {
    PolyMatrix::identity(nv, n)
}

impl PantsObject {
    /// Validated constructor: checks `dh + hd = σ` and `h² = 0` in every degree.
    pub fn new(complex: FreeComplex, homotopy: Homotopy) -> Result<Self, SchoberError> {
        let x = PantsObject {
            complex,
            homotopy,
            twist: 0,
        };
        x.check()?;
        Ok(x)
    }

    pub fn zero(num_vars: usize) -> Self {
        PantsObject {
            complex: FreeComplex::zero(num_vars),
            homotopy: Homotopy::new(),
            twist: 0,
        }
    }

    /// `[O --σ--> O]` in degrees `-1, 0` with `h_0 = 1`.
    pub fn structure_object(num_vars: usize) -> Self {
        let sigma = LaurentPoly::pants_section(num_vars);
        let c = FreeComplex::new(
            num_vars,
            -1,
            alloc::vec![1, 1],
            alloc::vec![PolyMatrix::scalar(1, &sigma)],
            Vec::new(),
        )
        .expect("two-term complex");
        let mut h = Homotopy::new();
        h.insert(0, ident(num_vars, 1));
        PantsObject {
            complex: c,
            homotopy: h,
            twist: 0,
        }
    }

    /// Koszul resolution of a point `q` of the pants, with `h = Σ e_j ∧`.
    pub fn skyscraper(q: &TorusPoint) -> Result<Self, SchoberError> {
        let nv = q.num_vars();
        if !LaurentPoly::pants_section(nv).evaluate(q).is_zero() {
            return Err(SchoberError::NotOnPants(q.clone()));
        }
        let c = skyscraper(q);
        let h = wedge_homotopy(nv, &alloc::vec![LaurentPoly::one(nv); nv]);
        Ok(PantsObject {
            complex: c,
            homotopy: h,
            twist: 0,
        })
    }

    pub fn complex(&self) -> &FreeComplex {
        &self.complex
    }

    pub fn num_vars(&self) -> usize {
        self.complex.num_vars()
    }

    pub fn twist(&self) -> i64 {
        self.twist
    }

    pub fn with_twist(mut self, twist: i64) -> Self {
        self.twist = twist;
        self
    }

    /// `h_k`, from degree `k` to degree `k - 1`.
    pub fn homotopy_at(&self, k: i64) -> PolyMatrix {
        self.homotopy
            .get(&k)
            .cloned()
            .unwrap_or_else(|| zeros(self.num_vars(), self.complex.rank(k - 1), self.complex.rank(k)))
    }

    pub fn homotopy(&self) -> &Homotopy {
        &self.homotopy
    }

    pub fn check(&self) -> Result<(), SchoberError> {
        let c = &self.complex;
        let nv = c.num_vars();
        let sigma = LaurentPoly::pants_section(nv);
        for (&k, h) in &self.homotopy {
            if h.shape() != (c.rank(k - 1), c.rank(k)) || h.num_vars() != nv {
                return Err(SchoberError::HomotopyShape { degree: k });
            }
        }
        for k in c.degrees() {
            let lhs = c
                .diff(k - 1)
                .mul(&self.homotopy_at(k))
                .add(&self.homotopy_at(k + 1).mul(&c.diff(k)));
            if lhs != PolyMatrix::scalar(c.rank(k), &sigma) {
                return Err(SchoberError::HomotopyIdentity { degree: k });
            }
            if !self.homotopy_at(k - 1).mul(&self.homotopy_at(k)).is_zero() {
                return Err(SchoberError::HomotopySquare { degree: k });
            }
        }
        Ok(())
    }

    /// `X[k]`; the homotopy changes sign with the differential.
    pub fn shift(&self, k: i64) -> PantsObject {
        let odd = k.rem_euclid(2) == 1;
        let homotopy = self
            .homotopy
            .iter()
            .map(|(&j, h)| (j - k, if odd { h.neg() } else { h.clone() }))
            .collect();
        PantsObject {
            complex: self.complex.shift(k),
            homotopy,
            twist: self.twist,
        }
    }

    pub fn with_hints(mut self, hints: &[TorusPoint]) -> Self {
        self.complex = self.complex.with_hints(hints);
        self
    }
}

/// A chain map between pants objects must also commute with the homotopies.
pub fn check_pants_morphism(f: &ChainMap, x: &PantsObject, y: &PantsObject) -> Result<(), SchoberError> {
    if !f.source().same_underlying(&x.complex) || !f.target().same_underlying(&y.complex) {
        return Err(SchoberError::Homalg(HomalgError::EndpointMismatch));
    }
    for k in x.complex.degrees() {
        let left = y.homotopy_at(k).mul(&f.component(k));
        let right = f.component(k - 1).mul(&x.homotopy_at(k));
        if left != right {
            return Err(SchoberError::NotStrict { degree: k });
        }
    }
    Ok(())
}

/// Cone of a pants morphism, with homotopy `diag(-h_X, h_Y)`.
pub fn pants_cone(f: &ChainMap, x: &PantsObject, y: &PantsObject) -> Result<PantsObject, SchoberError> {
    check_pants_morphism(f, x, y)?;
    let k = cone(f);
    let nv = x.num_vars();
    let (xc, yc) = (&x.complex, &y.complex);
    let mut h = Homotopy::new();
    for j in k.complex.degrees() {
        if k.complex.rank(j - 1) == 0 {
            continue;
        }
        let m = PolyMatrix::from_blocks(
            nv,
            &[xc.rank(j), yc.rank(j - 1)],
            &[xc.rank(j + 1), yc.rank(j)],
            |r, c| match (r, c) {
                (0, 0) => Some(x.homotopy_at(j + 1).neg()),
                (1, 1) => Some(y.homotopy_at(j)),
                _ => None,
            },
        );
        h.insert(j, m);
    }
    Ok(PantsObject {
        complex: k.complex,
        homotopy: h,
        twist: y.twist,
    })
}

/// The four adjunction structure maps evaluated on a pair of objects.
#[derive(Clone, Debug)]
pub struct AdjunctionMaps {
    /// `X -> i^! i_* X`
    pub unit_r: ChainMap,
    /// `i_* i^! F -> F`
    pub counit_r: ChainMap,
    /// `F -> i_* i^* F`
    pub unit_l: ChainMap,
    /// `i^* i_* X -> X`
    pub counit_l: ChainMap,
}

/// Results of the three equivalent cleanness probes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CleanProbes {
    pub i_star_exact: bool,
    pub i_shriek_exact: bool,
    pub p_psi_quasi_iso: bool,
}

impl CleanProbes {
    pub fn agree(&self) -> bool {
        self.i_star_exact == self.i_shriek_exact && self.i_star_exact == self.p_psi_quasi_iso
    }
}

/// Named objects used to exercise the spherical-functor axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleObject {
    Zero,
    /// The free rank-one torus object `O`.
    Structure,
    /// Koszul skyscraper at a torus point.
    Skyscraper(TorusPoint),
    /// Skyscraper at a pants point, as a pants object.
    PantsSkyscraper(TorusPoint),
    /// The structure object of the pants.
    PantsStructure,
}

impl fmt::Display for SampleObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SampleObject::Zero => write!(f, "zero"),
            SampleObject::Structure => write!(f, "O"),
            SampleObject::Skyscraper(p) => write!(f, "sky{}", p),
            SampleObject::PantsSkyscraper(p) => write!(f, "pants-sky{}", p),
            SampleObject::PantsStructure => write!(f, "O_P"),
        }
    }
}

/// The hypersurface schober for `σ = 1 + y1 + ... + y_{n-1}` with framing index `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypersurfaceSchober {
    n: usize,
    framing_index: usize,
    probes: ProbeSet,
}

impl HypersurfaceSchober {
    pub fn new(n: usize, framing_index: usize) -> Result<Self, SchoberError> {
        if n < 2 {
            return Err(SchoberError::InvalidRank { n });
        }
        if framing_index < 1 || framing_index > n {
            return Err(SchoberError::InvalidFraming { k: framing_index, n });
        }
        Ok(HypersurfaceSchober {
            n,
            framing_index,
            probes: ProbeSet::default(),
        })
    }

    pub fn with_probes(mut self, probes: ProbeSet) -> Self {
        self.probes = probes;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        self.n - 1
    }

    pub fn framing_index(&self) -> usize {
        self.framing_index
    }

    pub fn probes(&self) -> &ProbeSet {
        &self.probes
    }

    pub fn sigma(&self) -> LaurentPoly {
        LaurentPoly::pants_section(self.num_vars())
    }

    /// `u_k = y_k` for `k < n`, and `1` for `k = n`.
    pub fn framing_unit(&self) -> LaurentPoly {
        let nv = self.num_vars();
        if self.framing_index == self.n {
            LaurentPoly::one(nv)
        } else {
            LaurentPoly::var(nv, self.framing_index - 1)
        }
    }

    /// The central function `σ · u_k⁻¹`.
    pub fn frakm_function(&self) -> LaurentPoly {
        let inv = self.framing_unit().unit_inverse().expect("framing unit is a monomial");
        &self.sigma() * &inv
    }

    pub fn pushforward(&self, x: &PantsObject) -> TwistedComplex {
        TwistedComplex::new(x.complex.clone(), x.twist)
    }

    /// `i^* F = Cone(σ · id_F)` with homotopy `(a, b) ↦ (b, 0)`.
    pub fn i_star(&self, f: &TwistedComplex) -> PantsObject {
        let c = &f.complex;
        let nv = c.num_vars();
        let k = cone(&ChainMap::scalar(c, &LaurentPoly::pants_section(nv)));
        let mut h = Homotopy::new();
        for j in k.complex.degrees() {
            if k.complex.rank(j - 1) == 0 {
                continue;
            }
            h.insert(
                j,
                PolyMatrix::block(
                    &zeros(nv, c.rank(j), c.rank(j + 1)),
                    &ident(nv, c.rank(j)),
                    &zeros(nv, c.rank(j - 1), c.rank(j + 1)),
                    &zeros(nv, c.rank(j - 1), c.rank(j)),
                ),
            );
        }
        PantsObject {
            complex: k.complex,
            homotopy: h,
            twist: f.twist,
        }
    }

    /// `i^! F = i^* F [-1]`, one twist up.
    pub fn i_shriek(&self, f: &TwistedComplex) -> PantsObject {
        let x = self.i_star(f).shift(-1);
        let t = x.twist + 1;
        x.with_twist(t)
    }

    /// `i^*` on morphisms: `diag(g_{k+1}, g_k)`.
    pub fn i_star_map(&self, g: &ChainMap) -> ChainMap {
        let src = self.i_star(&TwistedComplex::untwisted(g.source().clone()));
        let tgt = self.i_star(&TwistedComplex::untwisted(g.target().clone()));
        ChainMap::from_fn(&src.complex, &tgt.complex, |k| {
            PolyMatrix::diag(&g.component(k + 1), &g.component(k))
        })
        .expect("i^* of a chain map")
    }

    /// `i^!` on morphisms: `diag(g_k, g_{k-1})`.
    pub fn i_shriek_map(&self, g: &ChainMap) -> ChainMap {
        let src = self.i_shriek(&TwistedComplex::untwisted(g.source().clone()));
        let tgt = self.i_shriek(&TwistedComplex::untwisted(g.target().clone()));
        ChainMap::from_fn(&src.complex, &tgt.complex, |k| {
            PolyMatrix::diag(&g.component(k), &g.component(k - 1))
        })
        .expect("i^! of a chain map")
    }

    /// `T^{±1}`: tensoring with `L^{±1}`, tracked as a twist.
    pub fn monodromy_t(&self, f: &TwistedComplex, direction: i64) -> TwistedComplex {
        assert!(direction == 1 || direction == -1, "direction must be ±1");
        TwistedComplex::new(f.complex.clone(), f.twist + direction)
    }

    /// Multiplication by `u_k^{-t}`, identifying `F ⊗ L^t` with `F` through the framing.
    pub fn untwist(&self, f: &TwistedComplex) -> TwistedMap {
        let u = self.framing_unit().unit_inverse().expect("unit");
        let mut s = LaurentPoly::one(self.num_vars());
        let base = if f.twist >= 0 { u } else { self.framing_unit() };
        for _ in 0..f.twist.unsigned_abs() {
            s = &s * &base;
        }
        TwistedMap {
            map: ChainMap::scalar(&f.complex, &s),
            source_twist: f.twist,
            target_twist: 0,
        }
    }

    /// `𝔭_Ψ: F -> T(F)`, which is multiplication by `σ` into twist + 1.
    pub fn canonical_p_psi(&self, f: &TwistedComplex) -> TwistedMap {
        TwistedMap {
            map: ChainMap::scalar(&f.complex, &self.sigma()),
            source_twist: f.twist,
            target_twist: f.twist + 1,
        }
    }

    /// `𝔪 = τ⁻¹ ∘ 𝔭_Ψ`, multiplication by `σ u_k⁻¹`.
    pub fn frakm(&self, f: &TwistedComplex) -> ChainMap {
        ChainMap::scalar(&f.complex, &self.frakm_function())
    }

    pub fn clean_probes(&self, f: &TwistedComplex) -> CleanProbes {
        CleanProbes {
            i_star_exact: self.probes.is_exact(&self.i_star(f).complex),
            i_shriek_exact: self.probes.is_exact(&self.i_shriek(f).complex),
            p_psi_quasi_iso: self.probes.is_quasi_iso(&self.canonical_p_psi(f).map),
        }
    }

    /// Clean means `i^* F ≃ 0`.
    pub fn is_clean(&self, f: &TwistedComplex) -> bool {
        self.probes.is_exact(&self.i_star(f).complex)
    }

    /// `u_r(X): X -> i^! i_* X`, `a ↦ (a, -h a)`.
    pub fn unit_r(&self, x: &PantsObject) -> ChainMap {
        let c = &x.complex;
        let nv = c.num_vars();
        let tgt = self.i_shriek(&self.pushforward(x));
        ChainMap::from_fn(c, &tgt.complex, |k| {
            PolyMatrix::vstack(&ident(nv, c.rank(k)), &x.homotopy_at(k).neg())
        })
        .expect("right unit")
    }

    /// `c_r(F): i_* i^! F -> F`, `(a, b) ↦ a`.
    pub fn counit_r(&self, f: &TwistedComplex) -> ChainMap {
        let c = &f.complex;
        let nv = c.num_vars();
        let src = self.i_shriek(f);
        ChainMap::from_fn(&src.complex, c, |k| {
            PolyMatrix::hstack(&ident(nv, c.rank(k)), &zeros(nv, c.rank(k), c.rank(k - 1)))
        })
        .expect("right counit")
    }

    /// `u_ℓ(F): F -> i_* i^* F`, `b ↦ (0, b)`.
    pub fn unit_l(&self, f: &TwistedComplex) -> ChainMap {
        let c = &f.complex;
        let nv = c.num_vars();
        let tgt = self.i_star(f);
        ChainMap::from_fn(c, &tgt.complex, |k| {
            PolyMatrix::vstack(&zeros(nv, c.rank(k + 1), c.rank(k)), &ident(nv, c.rank(k)))
        })
        .expect("left unit")
    }

    /// `c_ℓ(X): i^* i_* X -> X`, `(a, b) ↦ h a + b`.
    pub fn counit_l(&self, x: &PantsObject) -> ChainMap {
        let c = &x.complex;
        let nv = c.num_vars();
        let src = self.i_star(&self.pushforward(x));
        ChainMap::from_fn(&src.complex, c, |k| {
            PolyMatrix::hstack(&x.homotopy_at(k + 1), &ident(nv, c.rank(k)))
        })
        .expect("left counit")
    }

    pub fn adjunction_maps(&self, x: &PantsObject, f: &TwistedComplex) -> AdjunctionMaps {
        AdjunctionMaps {
            unit_r: self.unit_r(x),
            counit_r: self.counit_r(f),
            unit_l: self.unit_l(f),
            counit_l: self.counit_l(x),
        }
    }

    /// `p ↦ p̃ = i^!(p) ∘ u_r`, i.e. `a ↦ (p a, -p h a)`.
    pub fn adjoint_transpose(&self, x: &PantsObject, p: &ChainMap) -> Result<ChainMap, SchoberError> {
        if !p.source().same_underlying(&x.complex) {
            return Err(SchoberError::Homalg(HomalgError::EndpointMismatch));
        }
        Ok(compose(&self.i_shriek_map(p), &self.unit_r(x))?)
    }

    /// Inverse transpose `q ↦ c_r ∘ i_*(q)`.
    pub fn transpose_back(&self, y: &TwistedComplex, q: &ChainMap) -> Result<ChainMap, SchoberError> {
        Ok(compose(&self.counit_r(y), q)?)
    }

    /// The monodromy as a cone: `Cone(c_r(F))`, degreewise `F_{k+1} ⊕ F_k ⊕ F_k`.
    pub fn t_cone(&self, f: &TwistedComplex) -> crate::homalg::Cone {
        cone(&self.counit_r(f))
    }

    /// `q: Cone(c_r) -> F(1)`, `(a, b, c) ↦ σ c - b`.
    pub fn t_identification(&self, f: &TwistedComplex) -> ChainMap {
        let c = &f.complex;
        let nv = c.num_vars();
        let k = self.t_cone(f);
        let sigma = self.sigma();
        ChainMap::from_fn(&k.complex, c, |j| {
            PolyMatrix::hstack(
                &PolyMatrix::hstack(&zeros(nv, c.rank(j), c.rank(j + 1)), &ident(nv, c.rank(j)).neg()),
                &PolyMatrix::scalar(c.rank(j), &sigma),
            )
        })
        .expect("twist identification")
    }

    /// Section of `q`: `b ↦ (0, -b, 0)`.
    pub fn t_section(&self, f: &TwistedComplex) -> ChainMap {
        let c = &f.complex;
        let nv = c.num_vars();
        let k = self.t_cone(f);
        ChainMap::from_fn(c, &k.complex, |j| {
            PolyMatrix::vstack(
                &PolyMatrix::vstack(&zeros(nv, c.rank(j + 1), c.rank(j)), &ident(nv, c.rank(j)).neg()),
                &zeros(nv, c.rank(j), c.rank(j)),
            )
        })
        .expect("twist section")
    }

    /// Torus and pants objects attached to a sample.
    pub fn realize(&self, s: &SampleObject) -> Result<(TwistedComplex, PantsObject), SchoberError> {
        let nv = self.num_vars();
        let check = |p: &TorusPoint| {
            if p.num_vars() == nv {
                Ok(())
            } else {
                Err(SchoberError::VarCount {
                    expected: nv,
                    found: p.num_vars(),
                })
            }
        };
        Ok(match s {
            SampleObject::Zero => (TwistedComplex::untwisted(FreeComplex::zero(nv)), PantsObject::zero(nv)),
            SampleObject::Structure => {
                let f = TwistedComplex::untwisted(FreeComplex::structure_sheaf(nv));
                let x = self.i_star(&f);
                (f, x)
            }
            SampleObject::Skyscraper(p) => {
                check(p)?;
                let f = TwistedComplex::untwisted(skyscraper(p));
                let x = self.i_star(&f);
                (f, x)
            }
            SampleObject::PantsSkyscraper(q) => {
                check(q)?;
                let x = PantsObject::skyscraper(q)?;
                (self.pushforward(&x), x)
            }
            SampleObject::PantsStructure => {
                let x = PantsObject::structure_object(nv);
                (self.pushforward(&x), x)
            }
        })
    }

    /// At least ten samples covering every kind, deterministic in `n`.
    pub fn default_samples(&self) -> Vec<SampleObject> {
        let nv = self.num_vars();
        let mut out = alloc::vec![
            SampleObject::Zero,
            SampleObject::Structure,
            SampleObject::PantsStructure
        ];
        for q in pants_panel(nv) {
            out.push(SampleObject::PantsSkyscraper(q));
        }
        let clean: [(i64, i64); 6] = [(2, 1), (-2, 1), (1, 2), (3, 1), (-3, 1), (5, 2)];
        for offset in 0..clean.len() {
            let coords = (0..nv)
                .map(|i| {
                    let (a, b) = clean[(offset + i) % clean.len()];
                    rat(a, b)
                })
                .collect();
            let p = TorusPoint::new(coords).expect("nonzero");
            if !self.sigma().evaluate(&p).is_zero() {
                out.push(SampleObject::Skyscraper(p));
            }
        }
        out
    }

    /// Check the four spherical-functor axioms on each sample.
    pub fn check_sf_axioms(&self, samples: &[SampleObject]) -> Report {
        let mut report = Report::new();
        for s in samples {
            match self.realize(s) {
                Ok((f, x)) => {
                    let tag = s.to_string();
                    let (ok, w) = self.sf1(&f);
                    report.check(format!("SF1:{}", tag), ok, w);
                    let (ok, w) = self.sf2(&f);
                    report.check(format!("SF2:{}", tag), ok, w);
                    let (ok, w) = self.sf3(&x);
                    report.check(format!("SF3:{}", tag), ok, w);
                    let (ok, w) = self.sf4(&f);
                    report.check(format!("SF4:{}", tag), ok, w);
                }
                Err(e) => report.check(format!("SF:{}", s), false, e),
            }
        }
        report
    }

    fn sf1(&self, f: &TwistedComplex) -> (bool, String) {
        let q = self.t_identification(f);
        let incl = self.t_cone(f).inclusion;
        let s = self.t_section(f);
        let sigma = ChainMap::scalar(&f.complex, &self.sigma());
        if compose(&q, &incl).ok() != Some(sigma) {
            return (false, "q∘incl ≠ σ".into());
        }
        if compose(&q, &s).ok() != Some(ChainMap::identity(&f.complex)) {
            return (false, "q∘s ≠ id".into());
        }
        if let Err(w) = self.probes.quasi_iso(&q) {
            return (false, format!("T(F) ≄ F(1) {}", w));
        }
        if self.monodromy_t(&self.monodromy_t(f, 1), -1) != *f {
            return (false, "T⁻¹T ≠ id".into());
        }
        (true, "T ≃ L⊗-, invertible".into())
    }

    /// `i^! F -> i^! i_* i^* F -> Cone(u_r(i^* F))` is a quasi-isomorphism.
    fn sf2(&self, f: &TwistedComplex) -> (bool, String) {
        let lf = self.i_star(f);
        let a = self.i_shriek_map(&self.unit_l(f));
        let b = cone(&self.unit_r(&lf)).inclusion;
        match compose(&b, &a) {
            Ok(g) => match self.probes.quasi_iso(&g) {
                Ok(()) => (true, "S^r ≃ T_Φ S^ℓ[1]".into()),
                Err(w) => (false, w.to_string()),
            },
            Err(e) => (false, e.to_string()),
        }
    }

    /// `Cone(u_r X)[-1]` has the pointwise homology of `X[-2]`.
    fn sf3(&self, x: &PantsObject) -> (bool, String) {
        let t = cone(&self.unit_r(x)).complex.shift(-1);
        let expect = x.complex.shift(-2);
        for p in self.probes.points(&x.complex) {
            let a = homology_ranks_at(&t, &p);
            let b = homology_ranks_at(&expect, &p);
            if a.nonzero() != b.nonzero() {
                return (false, format!("at {}: T_Φ gives {}, X[-2] gives {}", p, a, b));
            }
        }
        (true, "T_Φ ≃ L_Y[-2]⊗-".into())
    }

    /// `i^*(Cone(c_r)[-1]) -> i^* i_* i^! F -> i^! F` is a quasi-isomorphism.
    fn sf4(&self, f: &TwistedComplex) -> (bool, String) {
        let proj = self.t_cone(f).projection.shift(-1);
        let a = self.i_star_map(&proj);
        let b = self.counit_l(&self.i_shriek(f));
        match compose(&b, &a) {
            Ok(g) => match self.probes.quasi_iso(&g) {
                Ok(()) => (true, "S^ℓ T_Ψ[-1] ≃ S^r".into()),
                Err(w) => (false, w.to_string()),
            },
            Err(e) => (false, e.to_string()),
        }
    }
}

/// `σ(p)` as a convenience for callers deciding cleanness of a skyscraper.
pub fn sigma_at(p: &TorusPoint) -> crate::laurent::Rational {
    LaurentPoly::pants_section(p.num_vars()).evaluate(p)
}

//! Global sections of the schober on the cylinder.
//!
//! An ordinary quintuple stores `(X, Y2, p, m)` and derives `Y1 := Cone(p)`,
//! so its triangle `S(X) -> Y2 -> Y1 -> S(X)[1]` is exact by construction. A
//! mutated quintuple stores `(X♯, Y1♯, i♯, m♯)` with `i♯: T(Y1♯)[-1] -> S(X♯)`
//! and derives `Y2♯ := Cone(i♯)`.
//!
//! Isomorphisms of objects are pairs of chain maps that are mutually inverse
//! on homology at every probe point.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::homalg::{compose, cone, ChainMap, Cone, FreeComplex, HomalgError, PolyMatrix, ProbeSet};
use crate::laurent::{LaurentPoly, Rational, TorusPoint};
use crate::report::Report;
use crate::schober::{
    check_pants_morphism, pants_cone, HypersurfaceSchober, PantsObject, SchoberError, TwistedComplex,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SectionsError {
    Schober(SchoberError),
    NotAUnit(LaurentPoly),
    NotInvertible(String),
    NotClean(String),
    Invalid(String),
}

impl fmt::Display for SectionsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionsError::Schober(e) => write!(f, "{}", e),
            SectionsError::NotAUnit(u) => write!(f, "{} is not a unit", u),
            SectionsError::NotInvertible(m) => write!(f, "not invertible: {}", m),
            SectionsError::NotClean(w) => write!(f, "object is not clean: {}", w),
            SectionsError::Invalid(m) => write!(f, "invalid quintuple: {}", m),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SectionsError {}

impl From<SchoberError> for SectionsError {
    fn from(e: SchoberError) -> Self {
        SectionsError::Schober(e)
    }
}

impl From<HomalgError> for SectionsError {
    fn from(e: HomalgError) -> Self {
        SectionsError::Schober(SchoberError::Homalg(e))
    }
}

/// A chain map with a chosen inverse up to homotopy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iso {
    pub fwd: ChainMap,
    pub bwd: ChainMap,
}

impl Iso {
    pub fn identity(c: &FreeComplex) -> Self {
        Iso {
            fwd: ChainMap::identity(c),
            bwd: ChainMap::identity(c),
        }
    }

    /// `fwd ∘ bwd ≃ id` and `bwd ∘ fwd ≃ id` on homology at every probe.
    pub fn check(&self, probes: &ProbeSet) -> Result<(), String> {
        let fb = compose(&self.fwd, &self.bwd).map_err(|e| e.to_string())?;
        let bf = compose(&self.bwd, &self.fwd).map_err(|e| e.to_string())?;
        probes
            .quasi_iso(&self.fwd)
            .map_err(|w| format!("m not quasi-iso {}", w))?;
        probes
            .agree_on_homology(&fb, &ChainMap::identity(fb.source()))
            .map_err(|p| format!("fwd∘bwd ≠ id at {}", p))?;
        probes
            .agree_on_homology(&bf, &ChainMap::identity(bf.source()))
            .map_err(|p| format!("bwd∘fwd ≠ id at {}", p))?;
        Ok(())
    }
}

/// A rank-one object of the inertia category: a clean complex with an
/// automorphism given by multiplication by `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InertiaObject {
    pub y: TwistedComplex,
    pub m: LaurentPoly,
}

/// Ordinary quintuple `(X, Y2, p, m)` with `Y1 := Cone(p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quintuple {
    pub x: PantsObject,
    pub y2: TwistedComplex,
    /// `S(X) -> Y2`
    pub p: ChainMap,
    /// `Y1 -> M(Y2)`
    pub m: Iso,
}

impl Quintuple {
    pub fn y1_cone(&self) -> Cone {
        cone(&self.p)
    }

    pub fn y1(&self) -> FreeComplex {
        self.y1_cone().complex
    }

    /// `∂: Y2 -> Y1`.
    pub fn partial(&self) -> ChainMap {
        self.y1_cone().inclusion
    }

    /// `i: Y1 -> S(X)[1]`.
    pub fn i_map(&self) -> ChainMap {
        self.y1_cone().projection
    }
}

/// Mutated quintuple `(X♯, Y1♯, i♯, m♯)` with `Y2♯ := Cone(i♯)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutatedQuintuple {
    pub x: PantsObject,
    pub y1: TwistedComplex,
    /// `T(Y1♯)[-1] -> S(X♯)`
    pub i: ChainMap,
    /// `M(Y1♯) -> Y2♯`
    pub m: Iso,
}

impl MutatedQuintuple {
    pub fn y2_cone(&self) -> Cone {
        cone(&self.i)
    }

    pub fn y2(&self) -> FreeComplex {
        self.y2_cone().complex
    }

    /// `p♯: S(X♯) -> Y2♯`.
    pub fn p_map(&self) -> ChainMap {
        self.y2_cone().inclusion
    }

    /// `∂♯: Y2♯ -> T(Y1♯)`.
    pub fn partial(&self) -> ChainMap {
        self.y2_cone().projection
    }
}

/// Morphism of quintuples: `f` on the pants part, `g1`, `g2` on the torus parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuintupleMorphism {
    pub f: ChainMap,
    pub g1: ChainMap,
    pub g2: ChainMap,
}

/// Result of an isomorphism search.
#[derive(Clone, Debug)]
pub struct IsoOutcome {
    pub witness: Option<(String, QuintupleMorphism)>,
    pub diagnostics: Vec<String>,
}

impl IsoOutcome {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn ansatz(&self) -> Option<&str> {
        self.witness.as_ref().map(|(n, _)| n.as_str())
    }
}

fn ident(nv: usize, n: usize) -> PolyMatrix {
    PolyMatrix::identity(nv, n)
}

/// The schober on the cylinder: a hypersurface schober plus an extra unit
/// monodromy `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderSchober {
    schober: HypersurfaceSchober,
    monodromy: LaurentPoly,
}

impl CylinderSchober {
    pub fn new(schober: HypersurfaceSchober, monodromy: LaurentPoly) -> Result<Self, SectionsError> {
        if !monodromy.is_unit() || monodromy.num_vars() != schober.num_vars() {
            return Err(SectionsError::NotAUnit(monodromy));
        }
        Ok(CylinderSchober { schober, monodromy })
    }

    /// `M = id`.
    pub fn trivial(schober: HypersurfaceSchober) -> Self {
        let nv = schober.num_vars();
        CylinderSchober {
            schober,
            monodromy: LaurentPoly::one(nv),
        }
    }

    pub fn schober(&self) -> &HypersurfaceSchober {
        &self.schober
    }

    pub fn monodromy(&self) -> &LaurentPoly {
        &self.monodromy
    }

    pub fn probes(&self) -> &ProbeSet {
        self.schober.probes()
    }

    fn nv(&self) -> usize {
        self.schober.num_vars()
    }

    /// Inverse of multiplication by `f` on `y`: exact for units, and the
    /// scalar `f(p)⁻¹` when `y` is supported at the single point `p`.
    pub fn invert_on(&self, y: &FreeComplex, f: &LaurentPoly) -> Result<LaurentPoly, SectionsError> {
        if f.is_unit() {
            return Ok(f.unit_inverse().expect("unit"));
        }
        if y.is_zero_object() {
            return Ok(LaurentPoly::one(self.nv()));
        }
        match y.support_hints() {
            [p] => {
                let v = f.evaluate(p);
                if v.is_zero() {
                    return Err(SectionsError::NotInvertible(format!("{} vanishes at {}", f, p)));
                }
                Ok(LaurentPoly::constant(self.nv(), v.recip()))
            }
            _ => Err(SectionsError::NotInvertible(format!(
                "{} is not a unit and the support is not a point",
                f
            ))),
        }
    }

    /// Reduce multiplication by `f` to the scalar `f(p)` on an object supported at `p`.
    fn reduce_at_support(&self, y: &FreeComplex, f: &LaurentPoly) -> LaurentPoly {
        match y.support_hints() {
            [p] if !f.is_unit() || f.as_constant().is_none() => LaurentPoly::constant(self.nv(), f.evaluate(p)),
            _ => f.clone(),
        }
    }

    pub fn check_inertia(&self, obj: &InertiaObject) -> Result<(), SectionsError> {
        if let Err(w) = self.probes().exactness(self.schober.i_star(&obj.y).complex()) {
            return Err(SectionsError::NotClean(w.to_string()));
        }
        if let Err(w) = self.probes().quasi_iso(&ChainMap::scalar(&obj.y.complex, &obj.m)) {
            return Err(SectionsError::NotInvertible(format!("m not quasi-iso {}", w)));
        }
        Ok(())
    }

    fn scalar_iso(&self, y: &FreeComplex, f: &LaurentPoly) -> Result<Iso, SectionsError> {
        let inv = self.invert_on(y, f)?;
        Ok(Iso {
            fwd: ChainMap::scalar(y, f),
            bwd: ChainMap::scalar(y, &inv),
        })
    }

    /// `F_Ch(Y, m) = (0, Y, Y, split, m)`; `Cone(0 -> Y)` is `Y` itself.
    pub fn chekanov(&self, obj: &InertiaObject) -> Result<Quintuple, SectionsError> {
        let y = &obj.y.complex;
        let x = PantsObject::zero(self.nv());
        let p = ChainMap::zero(x.complex(), y);
        let y1 = cone(&p).complex;
        let iso = self.scalar_iso(y, &obj.m)?;
        let m = Iso {
            fwd: iso.fwd.with_endpoints(&y1, y)?,
            bwd: iso.bwd.with_endpoints(y, &y1)?,
        };
        Ok(Quintuple {
            x,
            y2: obj.y.clone(),
            p,
            m,
        })
    }

    /// `F_Cl(Y, m) = (0, T⁻¹Y, Y, split, m♯)`, where `m♯: T⁻¹Y -> Y` is `m`
    /// composed with the framing identification `u_k`.
    pub fn clifford(&self, obj: &InertiaObject) -> Result<MutatedQuintuple, SectionsError> {
        let y = &obj.y.complex;
        let x = PantsObject::zero(self.nv());
        let g = y.shift(-1);
        let i = ChainMap::zero(&g, x.complex());
        let y2 = cone(&i).complex;
        let framed = &obj.m * &self.schober.framing_unit();
        let iso = self.scalar_iso(y, &framed)?;
        let m = Iso {
            fwd: iso.fwd.with_endpoints(y, &y2)?,
            bwd: iso.bwd.with_endpoints(&y2, y)?,
        };
        Ok(MutatedQuintuple {
            x,
            y1: TwistedComplex::new(y.clone(), obj.y.twist - 1),
            i,
            m,
        })
    }

    /// `F_Ch⁻¹`: `(Y2, m ∘ ∂)`.
    pub fn extract_chekanov(&self, q: &Quintuple) -> Result<(TwistedComplex, ChainMap), SectionsError> {
        let a = compose(&q.m.fwd, &q.partial())?;
        Ok((q.y2.clone(), a))
    }

    /// `F_Cl⁻¹`: `(Y1♯, τ⁻¹ ∘ ∂♯ ∘ m♯)`, as an endomorphism of `Y1♯`.
    pub fn extract_clifford(&self, q: &MutatedQuintuple) -> Result<(TwistedComplex, ChainMap), SectionsError> {
        let y = &q.y1.complex;
        let d = compose(&q.partial(), &q.m.fwd)?;
        let tau_inv = self.schober.framing_unit().unit_inverse().expect("unit");
        let a = d.scale(&tau_inv).with_endpoints(y, y)?;
        Ok((TwistedComplex::new(y.clone(), q.y1.twist + 1), a))
    }

    /// The automorphism scalar carried by a rank-one endomorphism, read on homology.
    pub fn scalar_of(&self, a: &ChainMap) -> Option<Rational> {
        self.probes()
            .induced_scalar(a, &ChainMap::identity(a.source()))
            .map(|(_, c)| c)
    }

    /// `K_𝔪(Y, m) = (Y, m⁻¹ ∘ 𝔪)`, reduced to a scalar on point-supported objects.
    pub fn k_frakm(&self, obj: &InertiaObject) -> Result<InertiaObject, SectionsError> {
        self.check_inertia(obj)?;
        let y = &obj.y.complex;
        let inv = self.invert_on(y, &obj.m)?;
        let m = &inv * &self.schober.frakm_function();
        Ok(InertiaObject {
            y: obj.y.clone(),
            m: self.reduce_at_support(y, &m),
        })
    }

    /// `(X, Y2, p, m) ↦ (Cone(p̃), Y2, i♯, m♯)`, together with the comparison
    /// `φ: Y1 -> Y2♯`, `φ(a, c) = (σc + pha, a, c, 0)`.
    pub fn mutate_with_comparison(&self, q: &Quintuple) -> Result<(MutatedQuintuple, ChainMap), SectionsError> {
        let s = &self.schober;
        let nv = self.nv();
        let x = &q.x;
        let xc = x.complex();
        let y = &q.y2.complex;
        let sigma = s.sigma();
        let pt = s.adjoint_transpose(x, &q.p)?;
        let xs = pants_cone(&pt, x, &s.i_shriek(&q.y2))?;
        let g = y.shift(-1);
        // S(X♯)_k = X_{k+1} ⊕ Y_k ⊕ Y_{k-1}; i♯ hits the last summand.
        let i = ChainMap::from_fn(&g, xs.complex(), |k| {
            PolyMatrix::from_blocks(
                nv,
                &[xc.rank(k + 1), y.rank(k), y.rank(k - 1)],
                &[y.rank(k - 1)],
                |r, _| (r == 2).then(|| ident(nv, y.rank(k - 1))),
            )
        })?;
        let y1 = q.y1();
        let y2s = cone(&i).complex;
        // Cone(i♯)_k = Y_k ⊕ X_{k+1} ⊕ Y_k ⊕ Y_{k-1}.
        let rows = |k: i64| [y.rank(k), xc.rank(k + 1), y.rank(k), y.rank(k - 1)];
        let phi = ChainMap::from_fn(&y1, &y2s, |k| {
            PolyMatrix::from_blocks(nv, &rows(k), &[xc.rank(k + 1), y.rank(k)], |r, c| match (r, c) {
                (0, 0) => Some(q.p.component(k).mul(&x.homotopy_at(k + 1))),
                (0, 1) => Some(PolyMatrix::scalar(y.rank(k), &sigma)),
                (1, 0) => Some(ident(nv, xc.rank(k + 1))),
                (2, 1) => Some(ident(nv, y.rank(k))),
                _ => None,
            })
        })?;
        let psi = ChainMap::from_fn(&y2s, &y1, |k| {
            PolyMatrix::from_blocks(nv, &[xc.rank(k + 1), y.rank(k)], &rows(k), |r, c| match (r, c) {
                (0, 1) => Some(ident(nv, xc.rank(k + 1))),
                (1, 2) => Some(ident(nv, y.rank(k))),
                _ => None,
            })
        })?;
        let m = Iso {
            fwd: compose(&phi, &q.m.bwd)?,
            bwd: compose(&q.m.fwd, &psi)?,
        };
        let y1 = TwistedComplex::new(y.clone(), q.y2.twist - 1);
        Ok((MutatedQuintuple { x: xs, y1, i, m }, phi))
    }

    pub fn mutate(&self, q: &Quintuple) -> Result<MutatedQuintuple, SectionsError> {
        Ok(self.mutate_with_comparison(q)?.0)
    }

    /// Inverse construction: `X := Cone(ĩ)[-1]` for `ĩ = c_ℓ ∘ i^*(i♯)`,
    /// `Y2 := Y1♯`, `p(u, v, x) = u`.
    pub fn unmutate(&self, q: &MutatedQuintuple) -> Result<Quintuple, SectionsError> {
        let s = &self.schober;
        let nv = self.nv();
        let a = &q.y1.complex;
        let b = &q.x;
        let bc = b.complex();
        let sigma = s.sigma();
        let g = TwistedComplex::untwisted(q.i.source().clone());
        let lg = s.i_star(&g);
        let it = compose(&s.counit_l(b), &s.i_star_map(&q.i))?;
        let x = pants_cone(&it, &lg, b)?.shift(-1);
        let xc = x.complex().clone();
        // X_k = A_k ⊕ A_{k-1} ⊕ B_{k-1}.
        let xr = |k: i64| [a.rank(k), a.rank(k - 1), bc.rank(k - 1)];
        let p = ChainMap::from_fn(&xc, a, |k| {
            PolyMatrix::from_blocks(nv, &[a.rank(k)], &xr(k), |_, c| (c == 0).then(|| ident(nv, a.rank(k))))
        })?;
        let y1 = cone(&p).complex;
        let y2s = q.y2();
        // Cone(p)_k = A_{k+1} ⊕ A_k ⊕ B_k ⊕ A_k; Cone(i♯)_k = A_k ⊕ B_k.
        let cr = |k: i64| [a.rank(k + 1), a.rank(k), bc.rank(k), a.rank(k)];
        let chi = ChainMap::from_fn(&y1, &y2s, |k| {
            PolyMatrix::from_blocks(nv, &[a.rank(k), bc.rank(k)], &cr(k), |r, c| match (r, c) {
                (0, 1) => Some(ident(nv, a.rank(k))),
                (0, 3) => Some(PolyMatrix::scalar(a.rank(k), &sigma)),
                (1, 2) => Some(ident(nv, bc.rank(k))),
                (1, 3) => Some(b.homotopy_at(k + 1).mul(&q.i.component(k + 1)).neg()),
                _ => None,
            })
        })?;
        let chi_back = ChainMap::from_fn(&y2s, &y1, |k| {
            PolyMatrix::from_blocks(nv, &cr(k), &[a.rank(k), bc.rank(k)], |r, c| match (r, c) {
                (1, 0) => Some(ident(nv, a.rank(k))),
                (2, 1) => Some(ident(nv, bc.rank(k))),
                _ => None,
            })
        })?;
        let m = Iso {
            fwd: compose(&q.m.bwd, &chi)?,
            bwd: compose(&chi_back, &q.m.fwd)?,
        };
        let y2 = TwistedComplex::new(a.clone(), q.y1.twist + 1);
        Ok(Quintuple { x, y2, p, m })
    }

    /// `(i^! F, F, c_r, q)`: the counit quintuple, with `m` the twist identification.
    pub fn counit_quintuple(&self, f: &TwistedComplex) -> Result<Quintuple, SectionsError> {
        let s = &self.schober;
        let x = s.i_shriek(f);
        let p = s.counit_r(f);
        let m = Iso {
            fwd: s.t_identification(f),
            bwd: s.t_section(f),
        };
        Ok(Quintuple { x, y2: f.clone(), p, m })
    }

    pub fn validate_quintuple(&self, q: &Quintuple) -> Report {
        let mut r = Report::new();
        let probes = self.probes();
        let c = q.y1_cone();
        let complexes = [q.x.complex(), &q.y2.complex, &c.complex];
        let d2 = complexes.iter().find_map(|c| c.check_d_squared().err());
        r.check("d2", d2.is_none(), d2.map_or("d²=0".to_string(), |e| e.to_string()));
        r.check(
            "pants",
            q.x.check().is_ok(),
            q.x.check().err().map_or("dh+hd=σ, h²=0".into(), |e| e.to_string()),
        );
        let p_ok = q.p.check_commutes().and_then(|_| {
            if q.p.source().same_underlying(q.x.complex()) && q.p.target().same_underlying(&q.y2.complex) {
                Ok(())
            } else {
                Err(HomalgError::EndpointMismatch)
            }
        });
        r.check(
            "p",
            p_ok.is_ok(),
            p_ok.err().map_or("S(X)->Y2".into(), |e| e.to_string()),
        );
        let tri = compose(&c.projection, &c.inclusion)
            .map(|z| z.is_zero())
            .unwrap_or(false);
        r.check("triangle", tri, "Y2->Y1->S(X)[1] composes to 0");
        let ends = q.m.fwd.source().same_underlying(&c.complex)
            && q.m.fwd.target().same_underlying(&q.y2.complex)
            && q.m.bwd.source().same_underlying(&q.y2.complex)
            && q.m.bwd.target().same_underlying(&c.complex);
        let chain = q.m.fwd.check_commutes().and(q.m.bwd.check_commutes());
        r.check(
            "m-chain",
            ends && chain.is_ok(),
            if ends { "Y1->M(Y2)" } else { "endpoint mismatch" },
        );
        let iso = if ends {
            q.m.check(probes)
        } else {
            Err("endpoint mismatch".into())
        };
        r.check(
            "m-iso",
            iso.is_ok(),
            iso.err().unwrap_or_else(|| "quasi-inverse pair".into()),
        );
        r
    }

    pub fn validate_mutated(&self, q: &MutatedQuintuple) -> Report {
        let mut r = Report::new();
        let probes = self.probes();
        let c = q.y2_cone();
        let complexes = [q.x.complex(), &q.y1.complex, &c.complex];
        let d2 = complexes.iter().find_map(|c| c.check_d_squared().err());
        r.check("d2", d2.is_none(), d2.map_or("d²=0".to_string(), |e| e.to_string()));
        r.check(
            "pants",
            q.x.check().is_ok(),
            q.x.check().err().map_or("dh+hd=σ, h²=0".into(), |e| e.to_string()),
        );
        let ends_i =
            q.i.source().same_underlying(&q.y1.complex.shift(-1)) && q.i.target().same_underlying(q.x.complex());
        r.check("i", ends_i && q.i.check_commutes().is_ok(), "T(Y1♯)[-1]->S(X♯)");
        let tri = compose(&c.projection, &c.inclusion)
            .map(|z| z.is_zero())
            .unwrap_or(false);
        r.check("triangle", tri, "S(X♯)->Y2♯->T(Y1♯) composes to 0");
        let ends = q.m.fwd.source().same_underlying(&q.y1.complex)
            && q.m.fwd.target().same_underlying(&c.complex)
            && q.m.bwd.source().same_underlying(&c.complex)
            && q.m.bwd.target().same_underlying(&q.y1.complex);
        let chain = q.m.fwd.check_commutes().and(q.m.bwd.check_commutes());
        r.check(
            "m-chain",
            ends && chain.is_ok(),
            if ends { "M(Y1♯)->Y2♯" } else { "endpoint mismatch" },
        );
        let iso = if ends {
            q.m.check(probes)
        } else {
            Err("endpoint mismatch".into())
        };
        r.check(
            "m-iso",
            iso.is_ok(),
            iso.err().unwrap_or_else(|| "quasi-inverse pair".into()),
        );
        r
    }

    /// Check that `w` is an isomorphism `a -> b` of ordinary quintuples.
    pub fn check_morphism(&self, a: &Quintuple, b: &Quintuple, w: &QuintupleMorphism) -> Result<(), String> {
        let probes = self.probes();
        check_pants_morphism(&w.f, &a.x, &b.x).map_err(|e| format!("f: {}", e))?;
        ends(&w.g1, &a.y1(), &b.y1(), "g1")?;
        ends(&w.g2, &a.y2.complex, &b.y2.complex, "g2")?;
        if a.y2.twist != b.y2.twist {
            return Err(format!("twist mismatch {} vs {}", a.y2.twist, b.y2.twist));
        }
        w.g1.check_commutes().map_err(|e| format!("g1: {}", e))?;
        w.g2.check_commutes().map_err(|e| format!("g2: {}", e))?;
        homotopic(probes, &compose_s(&w.g2, &a.p)?, &compose_s(&b.p, &w.f)?, "g2∘p ≄ p'∘f")?;
        homotopic(
            probes,
            &compose_s(&w.g1, &a.partial())?,
            &compose_s(&b.partial(), &w.g2)?,
            "g1∘∂ ≄ ∂'∘g2",
        )?;
        homotopic(
            probes,
            &compose_s(&w.f.shift(1), &a.i_map())?,
            &compose_s(&b.i_map(), &w.g1)?,
            "f∘i ≄ i'∘g1",
        )?;
        homotopic(
            probes,
            &compose_s(&b.m.fwd, &w.g1)?,
            &compose_s(&w.g2, &a.m.fwd)?,
            "m'∘g1 ≄ g2∘m",
        )?;
        for (name, g) in [("f", &w.f), ("g1", &w.g1), ("g2", &w.g2)] {
            probes
                .quasi_iso(g)
                .map_err(|e| format!("{} not quasi-iso {}", name, e))?;
        }
        Ok(())
    }

    /// Check that `w` is an isomorphism `a -> b` of mutated quintuples.
    pub fn check_mutated_morphism(
        &self,
        a: &MutatedQuintuple,
        b: &MutatedQuintuple,
        w: &QuintupleMorphism,
    ) -> Result<(), String> {
        let probes = self.probes();
        check_pants_morphism(&w.f, &a.x, &b.x).map_err(|e| format!("f: {}", e))?;
        ends(&w.g1, &a.y1.complex, &b.y1.complex, "g1")?;
        ends(&w.g2, &a.y2(), &b.y2(), "g2")?;
        if a.y1.twist != b.y1.twist {
            return Err(format!("twist mismatch {} vs {}", a.y1.twist, b.y1.twist));
        }
        w.g1.check_commutes().map_err(|e| format!("g1: {}", e))?;
        w.g2.check_commutes().map_err(|e| format!("g2: {}", e))?;
        let tg1 = w.g1.shift(-1);
        homotopic(
            probes,
            &compose_s(&w.f, &a.i)?,
            &compose_s(&b.i, &tg1)?,
            "f∘i♯ ≄ i♯'∘T(g1)[-1]",
        )?;
        homotopic(
            probes,
            &compose_s(&w.g2, &a.p_map())?,
            &compose_s(&b.p_map(), &w.f)?,
            "g2∘p♯ ≄ p♯'∘f",
        )?;
        homotopic(
            probes,
            &compose_s(&tg1.shift(1), &a.partial())?,
            &compose_s(&b.partial(), &w.g2)?,
            "T(g1)∘∂♯ ≄ ∂♯'∘g2",
        )?;
        homotopic(
            probes,
            &compose_s(&b.m.fwd, &w.g1)?,
            &compose_s(&w.g2, &a.m.fwd)?,
            "m♯'∘g1 ≄ g2∘m♯",
        )?;
        for (name, g) in [("f", &w.f), ("g1", &w.g1), ("g2", &w.g2)] {
            probes
                .quasi_iso(g)
                .map_err(|e| format!("{} not quasi-iso {}", name, e))?;
        }
        Ok(())
    }

    fn f_candidates(&self, a: &PantsObject, b: &PantsObject) -> Vec<(&'static str, ChainMap)> {
        let mut out = Vec::new();
        if a.complex().same_underlying(b.complex()) && a.homotopy() == b.homotopy() {
            if let Ok(f) = ChainMap::identity(a.complex()).with_endpoints(a.complex(), b.complex()) {
                out.push(("f=id", f));
            }
        }
        if self.probes().is_exact(a.complex()) && self.probes().is_exact(b.complex()) {
            out.push(("f=0", ChainMap::zero(a.complex(), b.complex())));
        }
        out
    }

    /// Search the finite ansatz for an isomorphism `a -> b` of ordinary quintuples.
    ///
    /// Candidates: the canonical comparison when `b` is the round trip of `a`;
    /// otherwise `f ∈ {id, 0}`, `g2 = id`, and `g1` transported through `m`.
    pub fn iso_quintuple(&self, a: &Quintuple, b: &Quintuple) -> IsoOutcome {
        let mut diagnostics = Vec::new();
        if let Ok((rt, w)) = self.roundtrip_witness(a) {
            if rt == *b {
                match self.check_morphism(a, b, &w) {
                    Ok(()) => {
                        return IsoOutcome {
                            witness: Some(("round-trip comparison".into(), w)),
                            diagnostics,
                        }
                    }
                    Err(e) => diagnostics.push(format!("round-trip comparison: {}", e)),
                }
            }
        }
        if !a.y2.complex.same_underlying(&b.y2.complex) {
            diagnostics.push("Y2 complexes differ".into());
            return IsoOutcome {
                witness: None,
                diagnostics,
            };
        }
        let g2 = match ChainMap::identity(&a.y2.complex).with_endpoints(&a.y2.complex, &b.y2.complex) {
            Ok(g) => g,
            Err(e) => {
                diagnostics.push(e.to_string());
                return IsoOutcome {
                    witness: None,
                    diagnostics,
                };
            }
        };
        for (name, f) in self.f_candidates(&a.x, &b.x) {
            let g1 = match compose(&b.m.bwd, &g2).and_then(|t| compose(&t, &a.m.fwd)) {
                Ok(g) => g,
                Err(e) => {
                    diagnostics.push(format!("{}: {}", name, e));
                    continue;
                }
            };
            let w = QuintupleMorphism { f, g1, g2: g2.clone() };
            match self.check_morphism(a, b, &w) {
                Ok(()) => {
                    return IsoOutcome {
                        witness: Some((format!("{}, g2=id, g1=m'⁻¹∘m", name), w)),
                        diagnostics,
                    }
                }
                Err(e) => diagnostics.push(format!("{}: {}", name, e)),
            }
        }
        if diagnostics.is_empty() {
            diagnostics.push("no ansatz candidate for f".into());
        }
        IsoOutcome {
            witness: None,
            diagnostics,
        }
    }

    /// Search the finite ansatz for an isomorphism `a -> b` of mutated quintuples.
    ///
    /// Candidates: the canonical comparison when `b` is the round trip of `a`;
    /// otherwise `f ∈ {id, 0}`, `g1 = id`, and `g2` transported through `m♯`.
    pub fn iso_mutated(&self, a: &MutatedQuintuple, b: &MutatedQuintuple) -> IsoOutcome {
        let mut diagnostics = Vec::new();
        if let Ok((rt, w)) = self.mutated_roundtrip_witness(a) {
            if rt == *b {
                match self.check_mutated_morphism(a, b, &w) {
                    Ok(()) => {
                        return IsoOutcome {
                            witness: Some(("round-trip comparison".into(), w)),
                            diagnostics,
                        }
                    }
                    Err(e) => diagnostics.push(format!("round-trip comparison: {}", e)),
                }
            }
        }
        if !a.y1.complex.same_underlying(&b.y1.complex) {
            diagnostics.push("Y1♯ complexes differ".into());
            return IsoOutcome {
                witness: None,
                diagnostics,
            };
        }
        let g1 = match ChainMap::identity(&a.y1.complex).with_endpoints(&a.y1.complex, &b.y1.complex) {
            Ok(g) => g,
            Err(e) => {
                diagnostics.push(e.to_string());
                return IsoOutcome {
                    witness: None,
                    diagnostics,
                };
            }
        };
        for (name, f) in self.f_candidates(&a.x, &b.x) {
            let g2 = match compose(&b.m.fwd, &g1).and_then(|t| compose(&t, &a.m.bwd)) {
                Ok(g) => g,
                Err(e) => {
                    diagnostics.push(format!("{}: {}", name, e));
                    continue;
                }
            };
            let w = QuintupleMorphism { f, g1: g1.clone(), g2 };
            match self.check_mutated_morphism(a, b, &w) {
                Ok(()) => {
                    return IsoOutcome {
                        witness: Some((format!("{}, g1=id, g2=m♯'∘m♯⁻¹", name), w)),
                        diagnostics,
                    }
                }
                Err(e) => diagnostics.push(format!("{}: {}", name, e)),
            }
        }
        if diagnostics.is_empty() {
            diagnostics.push("no ansatz candidate for f".into());
        }
        IsoOutcome {
            witness: None,
            diagnostics,
        }
    }

    /// `unmutate(mutate(q))` with the comparison `q -> unmutate(mutate(q))`:
    /// `f(a) = (pa, pha, (a, 0, 0))`, `g2 = id`, `g1 = diag(f, id)`.
    pub fn roundtrip_witness(&self, q: &Quintuple) -> Result<(Quintuple, QuintupleMorphism), SectionsError> {
        let nv = self.nv();
        let rt = self.unmutate(&self.mutate(q)?)?;
        let x = &q.x;
        let xc = x.complex();
        let y = &q.y2.complex;
        // X_rt,k = Y_k ⊕ Y_{k-1} ⊕ (X_k ⊕ Y_{k-1} ⊕ Y_{k-2}).
        let f = ChainMap::from_fn(xc, rt.x.complex(), |k| {
            PolyMatrix::from_blocks(
                nv,
                &[y.rank(k), y.rank(k - 1), xc.rank(k), y.rank(k - 1), y.rank(k - 2)],
                &[xc.rank(k)],
                |r, _| match r {
                    0 => Some(q.p.component(k)),
                    1 => Some(q.p.component(k - 1).mul(&x.homotopy_at(k))),
                    2 => Some(ident(nv, xc.rank(k))),
                    _ => None,
                },
            )
        })?;
        let g2 = ChainMap::identity(y).with_endpoints(y, &rt.y2.complex)?;
        let g1 = ChainMap::from_fn(&q.y1(), &rt.y1(), |k| {
            PolyMatrix::diag(&f.component(k + 1), &ident(nv, y.rank(k)))
        })?;
        Ok((rt, QuintupleMorphism { f, g1, g2 }))
    }

    /// `mutate(unmutate(q♯))` with the comparison `q♯ -> mutate(unmutate(q♯))`:
    /// `f(x) = ((0, 0, x), 0, 0)`, `g1 = id`, `g2(v, x) = (v, ((0, v, x), 0, 0))`.
    pub fn mutated_roundtrip_witness(
        &self,
        q: &MutatedQuintuple,
    ) -> Result<(MutatedQuintuple, QuintupleMorphism), SectionsError> {
        let nv = self.nv();
        let rt = self.mutate(&self.unmutate(q)?)?;
        let a = &q.y1.complex;
        let bc = q.x.complex();
        // X♯'_k = (A_{k+1} ⊕ A_k ⊕ B_k) ⊕ A_k ⊕ A_{k-1}.
        let xr = |k: i64| [a.rank(k + 1), a.rank(k), bc.rank(k), a.rank(k), a.rank(k - 1)];
        let f = ChainMap::from_fn(bc, rt.x.complex(), |k| {
            PolyMatrix::from_blocks(nv, &xr(k), &[bc.rank(k)], |r, _| {
                (r == 2).then(|| ident(nv, bc.rank(k)))
            })
        })?;
        let g1 = ChainMap::identity(a).with_endpoints(a, &rt.y1.complex)?;
        let g2 = ChainMap::from_fn(&q.y2(), &rt.y2(), |k| {
            let mut rows = alloc::vec![a.rank(k)];
            rows.extend_from_slice(&xr(k));
            PolyMatrix::from_blocks(nv, &rows, &[a.rank(k), bc.rank(k)], |r, c| match (r, c) {
                (0, 0) | (2, 0) => Some(ident(nv, a.rank(k))),
                (3, 1) => Some(ident(nv, bc.rank(k))),
                _ => None,
            })
        })?;
        Ok((rt, QuintupleMorphism { f, g1, g2 }))
    }

    /// The connecting map of `mutate(q)` restricted along the comparison `φ`;
    /// for split input this is multiplication by `σ` on the nose.
    pub fn mutated_connecting_on_y1(&self, q: &Quintuple) -> Result<ChainMap, SectionsError> {
        let (mq, phi) = self.mutate_with_comparison(q)?;
        Ok(compose(&mq.partial(), &phi)?)
    }

    /// Whether `q` is split: `X = 0` and `∂ = id`.
    pub fn is_split(q: &Quintuple) -> bool {
        q.x.complex().is_zero_object()
            && q.partial()
                == ChainMap::identity(&q.y2.complex)
                    .with_endpoints(&q.y2.complex, &q.y1())
                    .expect("same complex")
    }

    /// Both sides of `K_𝔪 ≃ F_Cl⁻¹ ∘ F♯ ∘ F_Ch` on one inertia object.
    pub fn verify_corollary(&self, obj: &InertiaObject) -> Report {
        self.corollary(obj).0
    }

    /// The corollary report together with the scalar extracted from `F♯ ∘ F_Ch`.
    pub fn corollary(&self, obj: &InertiaObject) -> (Report, Option<Rational>) {
        let mut r = Report::new();
        if let Err(e) = self.check_inertia(obj) {
            r.check("clean", false, e);
            return (r, None);
        }
        r.check("clean", true, "i^*Y ≃ 0");
        let left = self.k_frakm(obj).and_then(|k| Ok((self.clifford(&k)?, k)));
        let right = self.chekanov(obj).and_then(|c| self.mutate(&c));
        let ((left, k), right) = match (left, right) {
            (Ok(l), Ok(rt)) => (l, rt),
            (Err(e), _) | (_, Err(e)) => {
                r.check("pipeline", false, e);
                return (r, None);
            }
        };
        r.check("K_frakm", true, format!("m' = {}", k.m));
        let vl = self.validate_mutated(&left);
        r.check(
            "valid-left",
            vl.passed(),
            vl.failures().next().map_or("F_Cl∘K_𝔪".into(), |l| l.to_string()),
        );
        let vr = self.validate_mutated(&right);
        r.check(
            "valid-right",
            vr.passed(),
            vr.failures().next().map_or("F♯∘F_Ch".into(), |l| l.to_string()),
        );
        let sl = self.extract_clifford(&left).ok().and_then(|(_, a)| self.scalar_of(&a));
        let sr = self.extract_clifford(&right).ok().and_then(|(_, a)| self.scalar_of(&a));
        let fmt_s = |s: &Option<Rational>| s.as_ref().map_or("?".to_string(), |v| v.to_string());
        r.check("scalar-left", sl.is_some(), fmt_s(&sl));
        r.check("scalar-right", sr.is_some(), fmt_s(&sr));
        r.check(
            "scalars-agree",
            sl.is_some() && sl == sr,
            format!("{} = {}", fmt_s(&sl), fmt_s(&sr)),
        );
        let key = self.chekanov(obj).and_then(|c| self.mutated_connecting_on_y1(&c));
        let sigma = ChainMap::scalar(&obj.y.complex, &self.schober.sigma());
        let key_ok = matches!(&key, Ok(c) if c.with_endpoints(&obj.y.complex, &obj.y.complex).as_ref() == Ok(&sigma));
        r.check("key-remark", key_ok, "∂♯∘φ = σ·id");
        let iso = self.iso_mutated(&left, &right);
        let frakm_p = obj
            .y
            .complex
            .support_hints()
            .first()
            .map(|p| self.schober.frakm_function().evaluate(p));
        match &iso.witness {
            Some((name, _)) => r.check(
                "iso",
                true,
                format!(
                    "{}; τ⁻¹∂♯φ = 𝔪(p) = {}",
                    name,
                    frakm_p.map_or("?".into(), |v| v.to_string())
                ),
            ),
            None => r.check("iso", false, iso.diagnostics.join("; ")),
        }
        (r, sr)
    }
}

fn ends(g: &ChainMap, s: &FreeComplex, t: &FreeComplex, name: &str) -> Result<(), String> {
    if g.source().same_underlying(s) && g.target().same_underlying(t) {
        Ok(())
    } else {
        Err(format!("{}: endpoint mismatch", name))
    }
}

fn compose_s(g: &ChainMap, f: &ChainMap) -> Result<ChainMap, String> {
    compose(g, f).map_err(|e| e.to_string())
}

fn homotopic(probes: &ProbeSet, f: &ChainMap, g: &ChainMap, what: &str) -> Result<(), String> {
    if !f.source().same_underlying(g.source()) || !f.target().same_underlying(g.target()) {
        return Err(format!("{}: endpoint mismatch", what));
    }
    probes.agree_on_homology(f, g).map_err(|p| format!("{} at {}", what, p))
}

/// Convenience: the inertia object `(Koszul(p), λ)`.
pub fn skyscraper_inertia(p: &TorusPoint, lambda: &Rational) -> InertiaObject {
    let nv = p.num_vars();
    InertiaObject {
        y: TwistedComplex::untwisted(crate::homalg::skyscraper(p)),
        m: LaurentPoly::constant(nv, lambda.clone()),
    }
}

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use super::{HomalgError, PolyMatrix};
use crate::laurent::{LaurentPoly, TorusPoint};

/// Bounded cochain complex of finite-rank free modules over the Laurent ring.
///
/// Cohomological grading: `d_k` maps degree `k` to degree `k + 1`. Zero-rank
/// degrees at either end are trimmed, so two complexes with the same nonzero
/// terms and differentials compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeComplex {
    num_vars: usize,
    min_deg: i64,
    ranks: Vec<usize>,
    diffs: Vec<PolyMatrix>,
    hints: Vec<TorusPoint>,
}

pub(crate) fn merge_hints(a: &[TorusPoint], b: &[TorusPoint]) -> Vec<TorusPoint> {
    let mut v: Vec<TorusPoint> = a.iter().chain(b).cloned().collect();
    v.sort();
    v.dedup();
    v
}

impl FreeComplex {
    /// Validated constructor: `ranks[i]` is the rank in degree `min_deg + i`
    /// and `diffs[i]` is the differential out of that degree.
    pub fn new(
        num_vars: usize,
        min_deg: i64,
        ranks: Vec<usize>,
        diffs: Vec<PolyMatrix>,
        hints: Vec<TorusPoint>,
    ) -> Result<Self, HomalgError> {
        if diffs.len() != ranks.len().saturating_sub(1) {
            return Err(HomalgError::Shape(alloc::format!(
                "{} ranks need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[i + 1], ranks[i]) {
                return Err(HomalgError::Shape(alloc::format!(
                    "differential out of degree {} has shape {:?}, expected {:?}",
                    min_deg + i as i64,
                    d.shape(),
                    (ranks[i + 1], ranks[i])
                )));
            }
            if d.num_vars() != num_vars {
                return Err(HomalgError::VarCount);
            }
        }
        if hints.iter().any(|h| h.num_vars() != num_vars) {
            return Err(HomalgError::VarCount);
        }
        let c = Self::assemble(num_vars, min_deg, ranks, diffs, hints);
        c.check_d_squared()?;
        Ok(c)
    }

    fn assemble(
        num_vars: usize,
        min_deg: i64,
        mut ranks: Vec<usize>,
        mut diffs: Vec<PolyMatrix>,
        hints: Vec<TorusPoint>,
    ) -> Self {
        let mut min_deg = min_deg;
        while ranks.first() == Some(&0) {
            ranks.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            min_deg += 1;
        }
        while ranks.last() == Some(&0) {
            ranks.pop();
            diffs.pop();
        }
        if ranks.is_empty() {
            min_deg = 0;
        }
        let hints = merge_hints(&hints, &[]);
        FreeComplex {
            num_vars,
            min_deg,
            ranks,
            diffs,
            hints,
        }
    }

    /// Build from rank and differential functions over degrees `lo..=hi`.
    /// The caller guarantees `d^2 = 0`.
    pub(crate) fn from_fn(
        num_vars: usize,
        lo: i64,
        hi: i64,
        rank: impl Fn(i64) -> usize,
        diff: impl Fn(i64) -> PolyMatrix,
        hints: Vec<TorusPoint>,
    ) -> Self {
        if hi < lo {
            return Self::zero(num_vars).with_hints(&hints);
        }
        let ranks: Vec<usize> = (lo..=hi).map(&rank).collect();
        let diffs: Vec<PolyMatrix> = (lo..hi).map(&diff).collect();
        debug_assert!(diffs.iter().zip(lo..).all(|(d, k)| d.shape() == (rank(k + 1), rank(k))));
        Self::assemble(num_vars, lo, ranks, diffs, hints)
    }

    pub fn zero(num_vars: usize) -> Self {
        FreeComplex {
            num_vars,
            min_deg: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
            hints: Vec::new(),
        }
    }

    /// The structure sheaf `O`: rank one in degree zero.
    pub fn structure_sheaf(num_vars: usize) -> Self {
        FreeComplex {
            num_vars,
            min_deg: 0,
            ranks: alloc::vec![1],
            diffs: Vec::new(),
            hints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> i64 {
        self.min_deg + self.ranks.len() as i64 - 1
    }

    /// Degrees carrying a nonzero term (empty for the zero complex).
    pub fn degrees(&self) -> core::ops::RangeInclusive<i64> {
        if self.ranks.is_empty() {
            #[allow(clippy::reversed_empty_ranges)]
            return 1..=0;
        }
        self.min_deg..=self.max_deg()
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < self.min_deg {
            return 0;
        }
        self.ranks.get((k - self.min_deg) as usize).copied().unwrap_or(0)
    }

    /// Differential out of degree `k`, as a `rank(k+1) x rank(k)` matrix.
    pub fn diff(&self, k: i64) -> PolyMatrix {
        if k >= self.min_deg {
            if let Some(d) = self.diffs.get((k - self.min_deg) as usize) {
                return d.clone();
            }
        }
        PolyMatrix::zeros(self.num_vars, self.rank(k + 1), self.rank(k))
    }

    pub fn support_hints(&self) -> &[TorusPoint] {
        &self.hints
    }

    pub fn with_hints(mut self, extra: &[TorusPoint]) -> Self {
        self.hints = merge_hints(&self.hints, extra);
        self
    }

    pub fn is_zero_object(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// Same terms and differentials, ignoring support hints.
    pub fn same_underlying(&self, other: &FreeComplex) -> bool {
        self.num_vars == other.num_vars
            && self.min_deg == other.min_deg
            && self.ranks == other.ranks
            && self.diffs == other.diffs
    }

    /// Verify `d_{k+1} d_k = 0` exactly, reporting the first failing degree.
    pub fn check_d_squared(&self) -> Result<(), HomalgError> {
        for k in self.degrees() {
            let dd = self.diff(k + 1).mul(&self.diff(k));
            if !dd.is_zero() {
                return Err(HomalgError::NotAComplex { degree: k });
            }
        }
        Ok(())
    }

    /// `C[k]`: degree `j` holds `C_{j+k}`; differentials are negated for odd `k`.
    pub fn shift(&self, k: i64) -> FreeComplex {
        let negate = k.rem_euclid(2) == 1;
        FreeComplex {
            num_vars: self.num_vars,
            min_deg: if self.ranks.is_empty() { 0 } else { self.min_deg - k },
            ranks: self.ranks.clone(),
            diffs: if negate {
                self.diffs.iter().map(PolyMatrix::neg).collect()
            } else {
                self.diffs.clone()
            },
            hints: self.hints.clone(),
        }
    }

    pub fn direct_sum(&self, other: &FreeComplex) -> FreeComplex {
        assert_eq!(self.num_vars, other.num_vars);
        let (lo, hi) = span(&[self, other]);
        let nv = self.num_vars;
        FreeComplex::from_fn(
            nv,
            lo,
            hi,
            |k| self.rank(k) + other.rank(k),
            |k| {
                PolyMatrix::block(
                    &self.diff(k),
                    &PolyMatrix::zeros(nv, self.rank(k + 1), other.rank(k)),
                    &PolyMatrix::zeros(nv, other.rank(k + 1), self.rank(k)),
                    &other.diff(k),
                )
            },
            merge_hints(&self.hints, &other.hints),
        )
    }
}

/// Smallest degree window containing all the given complexes.
pub(crate) fn span(cs: &[&FreeComplex]) -> (i64, i64) {
    let nonzero: Vec<&&FreeComplex> = cs.iter().filter(|c| !c.is_zero_object()).collect();
    if nonzero.is_empty() {
        return (0, -1);
    }
    let lo = nonzero.iter().map(|c| c.min_deg()).min().expect("nonempty");
    let hi = nonzero.iter().map(|c| c.max_deg()).max().expect("nonempty");
    (lo, hi)
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ranks.is_empty() {
            return write!(f, "0");
        }
        for k in self.degrees() {
            write!(f, "R^{}[{}]", self.rank(k), k)?;
            if k < self.max_deg() {
                write!(f, " --{}--> ", self.diff(k))?;
            }
        }
        Ok(())
    }
}

/// Degree-zero map of complexes commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    comps: BTreeMap<i64, PolyMatrix>,
}

impl ChainMap {
    /// Validated constructor; `comp(k)` must have shape `target.rank(k) x source.rank(k)`.
    pub fn from_fn(
        source: &FreeComplex,
        target: &FreeComplex,
        comp: impl Fn(i64) -> PolyMatrix,
    ) -> Result<Self, HomalgError> {
        let f = Self::from_fn_unchecked(source, target, comp)?;
        f.check_commutes()?;
        Ok(f)
    }

    pub(crate) fn from_fn_unchecked(
        source: &FreeComplex,
        target: &FreeComplex,
        comp: impl Fn(i64) -> PolyMatrix,
    ) -> Result<Self, HomalgError> {
        if source.num_vars() != target.num_vars() {
            return Err(HomalgError::VarCount);
        }
        let mut comps = BTreeMap::new();
        for k in source.degrees() {
            if target.rank(k) == 0 {
                continue;
            }
            let m = comp(k);
            if m.shape() != (target.rank(k), source.rank(k)) {
                return Err(HomalgError::Shape(alloc::format!(
                    "chain map component in degree {} has shape {:?}, expected {:?}",
                    k,
                    m.shape(),
                    (target.rank(k), source.rank(k))
                )));
            }
            comps.insert(k, m);
        }
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        })
    }

    pub fn new(
        source: &FreeComplex,
        target: &FreeComplex,
        comps: BTreeMap<i64, PolyMatrix>,
    ) -> Result<Self, HomalgError> {
        let nv = source.num_vars();
        Self::from_fn(source, target, |k| {
            comps
                .get(&k)
                .cloned()
                .unwrap_or_else(|| PolyMatrix::zeros(nv, target.rank(k), source.rank(k)))
        })
    }

    pub fn identity(c: &FreeComplex) -> Self {
        Self::scalar(c, &LaurentPoly::one(c.num_vars()))
    }

    /// Multiplication by a fixed function; always a chain map.
    pub fn scalar(c: &FreeComplex, f: &LaurentPoly) -> Self {
        Self::from_fn_unchecked(c, c, |k| PolyMatrix::scalar(c.rank(k), f)).expect("shapes agree")
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Self {
        let nv = source.num_vars();
        Self::from_fn_unchecked(source, target, |k| {
            PolyMatrix::zeros(nv, target.rank(k), source.rank(k))
        })
        .expect("shapes agree")
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn component(&self, k: i64) -> PolyMatrix {
        self.comps
            .get(&k)
            .cloned()
            .unwrap_or_else(|| PolyMatrix::zeros(self.source.num_vars(), self.target.rank(k), self.source.rank(k)))
    }

    pub fn check_commutes(&self) -> Result<(), HomalgError> {
        let (lo, hi) = span(&[&self.source, &self.target]);
        for k in lo..=hi {
            let left = self.target.diff(k).mul(&self.component(k));
            let right = self.component(k + 1).mul(&self.source.diff(k));
            if left != right {
                return Err(HomalgError::NotAChainMap { degree: k });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(PolyMatrix::is_zero)
    }

    /// If every component is `f` times an identity, return `f`.
    pub fn as_scalar(&self) -> Option<LaurentPoly> {
        if !self.source.same_underlying(&self.target) {
            return None;
        }
        let mut found: Option<LaurentPoly> = None;
        for m in self.comps.values() {
            let f = m.as_scalar()?;
            match &found {
                None => found = Some(f),
                Some(g) if *g == f => {}
                Some(_) => return None,
            }
        }
        Some(found.unwrap_or_else(|| LaurentPoly::zero(self.source.num_vars())))
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> Result<ChainMap, HomalgError> {
        compose(self, first)
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap, HomalgError> {
        self.same_endpoints(other)?;
        Self::from_fn_unchecked(&self.source, &self.target, |k| {
            self.component(k).add(&other.component(k))
        })
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap, HomalgError> {
        self.same_endpoints(other)?;
        Self::from_fn_unchecked(&self.source, &self.target, |k| {
            self.component(k).sub(&other.component(k))
        })
    }

    pub fn neg(&self) -> ChainMap {
        Self::from_fn_unchecked(&self.source, &self.target, |k| self.component(k).neg()).expect("shapes agree")
    }

    pub fn scale(&self, f: &LaurentPoly) -> ChainMap {
        Self::from_fn_unchecked(&self.source, &self.target, |k| self.component(k).scale(f)).expect("shapes agree")
    }

    fn same_endpoints(&self, other: &ChainMap) -> Result<(), HomalgError> {
        if !self.source.same_underlying(&other.source) || !self.target.same_underlying(&other.target) {
            return Err(HomalgError::EndpointMismatch);
        }
        Ok(())
    }

    /// `f[k]`: same components, reindexed; commutes with the shifted differentials.
    pub fn shift(&self, k: i64) -> ChainMap {
        let source = self.source.shift(k);
        let target = self.target.shift(k);
        Self::from_fn_unchecked(&source, &target, |j| self.component(j + k)).expect("shapes agree")
    }

    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let source = self.source.direct_sum(&other.source);
        let target = self.target.direct_sum(&other.target);
        let nv = source.num_vars();
        Self::from_fn_unchecked(&source, &target, |k| {
            PolyMatrix::block(
                &self.component(k),
                &PolyMatrix::zeros(nv, self.target.rank(k), other.source.rank(k)),
                &PolyMatrix::zeros(nv, other.target.rank(k), self.source.rank(k)),
                &other.component(k),
            )
        })
        .expect("shapes agree")
    }

    /// Replace the endpoints by complexes with the same underlying data but
    /// possibly different support hints.
    pub fn with_endpoints(&self, source: &FreeComplex, target: &FreeComplex) -> Result<ChainMap, HomalgError> {
        if !self.source.same_underlying(source) || !self.target.same_underlying(target) {
            return Err(HomalgError::EndpointMismatch);
        }
        Ok(ChainMap {
            source: source.clone(),
            target: target.clone(),
            comps: self.comps.clone(),
        })
    }
}

/// `g ∘ f`; requires `f.target == g.source` as complexes.
pub fn compose(g: &ChainMap, f: &ChainMap) -> Result<ChainMap, HomalgError> {
    if !f.target.same_underlying(&g.source) {
        return Err(HomalgError::EndpointMismatch);
    }
    ChainMap::from_fn_unchecked(&f.source, &g.target, |k| g.component(k).mul(&f.component(k)))
}

/// The mapping cone of a chain map with its canonical triangle maps.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: FreeComplex,
    /// `target -> cone`, inclusion of the second summand.
    pub inclusion: ChainMap,
    /// `cone -> source[1]`, projection to the first summand.
    pub projection: ChainMap,
}

/// `cone(f)_k = source_{k+1} ⊕ target_k` with differential
/// `[[-d_source, 0], [f, d_target]]`.
pub fn cone(f: &ChainMap) -> Cone {
    let src = &f.source;
    let tgt = &f.target;
    let nv = src.num_vars();
    let shifted = src.shift(1);
    let (lo, hi) = span(&[&shifted, tgt]);
    let complex = FreeComplex::from_fn(
        nv,
        lo,
        hi,
        |k| src.rank(k + 1) + tgt.rank(k),
        |k| {
            PolyMatrix::block(
                &src.diff(k + 1).neg(),
                &PolyMatrix::zeros(nv, src.rank(k + 2), tgt.rank(k)),
                &f.component(k + 1),
                &tgt.diff(k),
            )
        },
        merge_hints(src.support_hints(), tgt.support_hints()),
    );
    let inclusion = ChainMap::from_fn_unchecked(tgt, &complex, |k| {
        PolyMatrix::block(
            &PolyMatrix::zeros(nv, src.rank(k + 1), tgt.rank(k)),
            &PolyMatrix::zeros(nv, src.rank(k + 1), 0),
            &PolyMatrix::identity(nv, tgt.rank(k)),
            &PolyMatrix::zeros(nv, tgt.rank(k), 0),
        )
    })
    .expect("cone inclusion shapes");
    let projection = ChainMap::from_fn_unchecked(&complex, &shifted, |k| {
        PolyMatrix::block(
            &PolyMatrix::identity(nv, src.rank(k + 1)),
            &PolyMatrix::zeros(nv, src.rank(k + 1), tgt.rank(k)),
            &PolyMatrix::zeros(nv, 0, src.rank(k + 1)),
            &PolyMatrix::zeros(nv, 0, tgt.rank(k)),
        )
    })
    .expect("cone projection shapes");
    Cone {
        complex,
        inclusion,
        projection,
    }
}

/// Map of cones induced by a square `b ∘ f ≃ f2 ∘ a`, where `homotopy`
/// (degree `-1`, `source(f)_{k+1} -> target(f2)_k`, indexed by `k+1`) satisfies
/// `b f - f2 a = d h + h d`. Sends `(x, y)` to `(a x, b y + h x)`.
pub fn cone_map(
    f: &ChainMap,
    f2: &ChainMap,
    a: &ChainMap,
    b: &ChainMap,
    homotopy: Option<&BTreeMap<i64, PolyMatrix>>,
) -> Result<ChainMap, HomalgError> {
    let c1 = cone(f).complex;
    let c2 = cone(f2).complex;
    let nv = c1.num_vars();
    ChainMap::from_fn(&c1, &c2, |k| {
        let h = homotopy
            .and_then(|h| h.get(&(k + 1)).cloned())
            .unwrap_or_else(|| PolyMatrix::zeros(nv, f2.target.rank(k), f.source.rank(k + 1)));
        PolyMatrix::block(
            &a.component(k + 1),
            &PolyMatrix::zeros(nv, f2.source.rank(k + 1), f.target.rank(k)),
            &h,
            &b.component(k),
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::koszul;
    use crate::laurent::LaurentPoly;

    fn kos() -> FreeComplex {
        koszul(&[LaurentPoly::parse("y1 - 2", 1).unwrap()], alloc::vec![])
    }

    #[test]
    fn rejects_bad_shapes_and_nonzero_square() {
        let nv = 1;
        let y = LaurentPoly::var(nv, 0);
        let bad = FreeComplex::new(
            nv,
            0,
            alloc::vec![1, 2, 1],
            alloc::vec![
                PolyMatrix::from_rows(nv, alloc::vec![alloc::vec![y.clone()], alloc::vec![y.clone()]]).unwrap(),
                PolyMatrix::from_rows(nv, alloc::vec![alloc::vec![y.clone(), y.clone()]]).unwrap(),
            ],
            alloc::vec![],
        );
        assert_eq!(bad, Err(HomalgError::NotAComplex { degree: 0 }));
        let shape = FreeComplex::new(
            nv,
            0,
            alloc::vec![1, 1],
            alloc::vec![PolyMatrix::zeros(nv, 2, 1)],
            alloc::vec![],
        );
        assert!(matches!(shape, Err(HomalgError::Shape(_))));
    }

    #[test]
    fn shift_examples() {
        let c = kos();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(1).shift(-1), c);
        let s = c.shift(1);
        assert_eq!(s.degrees(), -2..=-1);
        assert_eq!(s.diff(-2), c.diff(-1).neg());
    }

    #[test]
    fn cone_of_zero_source_is_target() {
        let c = kos();
        let z = ChainMap::zero(&FreeComplex::zero(1), &c);
        let k = cone(&z);
        assert_eq!(k.complex, c);
        assert_eq!(k.inclusion, ChainMap::identity(&c));
    }

    #[test]
    fn canonical_cone_maps_compose_to_zero() {
        let c = kos();
        let f = ChainMap::scalar(&c, &LaurentPoly::parse("1 + y1", 1).unwrap());
        let k = cone(&f);
        k.complex.check_d_squared().unwrap();
        k.inclusion.check_commutes().unwrap();
        k.projection.check_commutes().unwrap();
        assert!(compose(&k.projection, &k.inclusion).unwrap().is_zero());
    }

    #[test]
    fn compose_and_scalar_identities() {
        let c = kos();
        let f = ChainMap::scalar(&c, &LaurentPoly::parse("3*y1", 1).unwrap());
        assert_eq!(compose(&f, &ChainMap::identity(&c)).unwrap(), f);
        assert_eq!(ChainMap::scalar(&c, &LaurentPoly::one(1)), ChainMap::identity(&c));
        let s = c.direct_sum(&FreeComplex::structure_sheaf(1));
        assert_eq!(s.rank(0), 2);
        assert_eq!(s.rank(-1), 1);
    }

    #[test]
    fn endpoint_mismatch() {
        let c = kos();
        let o = FreeComplex::structure_sheaf(1);
        assert_eq!(
            compose(&ChainMap::identity(&o), &ChainMap::identity(&c)),
            Err(HomalgError::EndpointMismatch)
        );
    }
}

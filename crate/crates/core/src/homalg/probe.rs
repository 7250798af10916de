use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cone, merge_hints, ChainMap, FreeComplex};
use crate::laurent::{int, rat, Rational, TorusPoint};
use crate::qmat::{in_span, scalar_modulo, QMatrix};

/// A complex of finite-dimensional rational vector spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarComplex {
    pub min_deg: i64,
    pub ranks: Vec<usize>,
    pub diffs: Vec<QMatrix>,
}

impl ScalarComplex {
    fn rank(&self, k: i64) -> usize {
        if k < self.min_deg {
            return 0;
        }
        self.ranks.get((k - self.min_deg) as usize).copied().unwrap_or(0)
    }

    fn diff_rank(&self, k: i64) -> usize {
        if k < self.min_deg {
            return 0;
        }
        self.diffs.get((k - self.min_deg) as usize).map_or(0, QMatrix::rank)
    }
}

pub fn specialize(c: &FreeComplex, p: &TorusPoint) -> ScalarComplex {
    assert_eq!(c.num_vars(), p.num_vars(), "point has wrong dimension");
    ScalarComplex {
        min_deg: c.min_deg(),
        ranks: c.ranks().to_vec(),
        diffs: c
            .degrees()
            .filter(|&k| k < c.max_deg())
            .map(|k| c.diff(k).evaluate(p))
            .collect(),
    }
}

/// Homology dimensions of a specialized complex, indexed from `min_deg`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRanks {
    pub min_deg: i64,
    pub ranks: Vec<usize>,
}

impl HomologyRanks {
    pub fn at(&self, k: i64) -> usize {
        if k < self.min_deg {
            return 0;
        }
        self.ranks.get((k - self.min_deg) as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.iter().all(|&r| r == 0)
    }

    /// `(degree, rank)` pairs with nonzero rank.
    pub fn nonzero(&self) -> Vec<(i64, usize)> {
        self.ranks
            .iter()
            .enumerate()
            .filter(|(_, &r)| r > 0)
            .map(|(i, &r)| (self.min_deg + i as i64, r))
            .collect()
    }
}

impl fmt::Display for HomologyRanks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.nonzero();
        if nz.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, r)) in nz.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "H^{}={}", k, r)?;
        }
        Ok(())
    }
}

pub fn homology_ranks_at(c: &FreeComplex, p: &TorusPoint) -> HomologyRanks {
    let s = specialize(c, p);
    let ranks = c
        .degrees()
        .map(|k| s.rank(k) - s.diff_rank(k) - s.diff_rank(k - 1))
        .collect();
    HomologyRanks {
        min_deg: c.min_deg(),
        ranks,
    }
}

/// Where and how a complex failed to be exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub point: TorusPoint,
    pub homology: HomologyRanks,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.point, self.homology)
    }
}

/// The finite set of points at which complexes are specialized.
///
/// A complex is probed at its support hints, at a fixed panel of points on
/// the pants divisor, and at `random` seeded points of the torus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeSet {
    pub random: usize,
    pub seed: u64,
}

impl Default for ProbeSet {
    fn default() -> Self {
        ProbeSet {
            random: 8,
            seed: 0x5eed,
        }
    }
}

const PANEL: [(i64, i64); 6] = [(1, 1), (-2, 1), (1, 2), (3, 1), (-1, 3), (2, 1)];

/// Fixed points with `1 + y1 + ... + yN = 0`.
pub fn pants_panel(num_vars: usize) -> Vec<TorusPoint> {
    if num_vars == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for offset in 0..4 {
        let mut coords: Vec<Rational> = (0..num_vars - 1)
            .map(|i| {
                let (a, b) = PANEL[(i + offset) % PANEL.len()];
                rat(a, b)
            })
            .collect();
        let sum: Rational = coords.iter().fold(int(1), |acc, c| acc + c);
        let last = -sum;
        if last.is_zero() {
            continue;
        }
        coords.push(last);
        out.push(TorusPoint::new(coords).expect("nonzero coordinates"));
    }
    out.sort();
    out.dedup();
    out
}

/// `count` seeded torus points with coordinates `±a/b`, `1 ≤ a ≤ 9`, `1 ≤ b ≤ 3`.
pub fn random_points(num_vars: usize, count: usize, seed: u64) -> Vec<TorusPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (num_vars as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    (0..count)
        .map(|_| {
            let coords = (0..num_vars)
                .map(|_| {
                    let a: i64 = rng.gen_range(1..=9);
                    let b: i64 = rng.gen_range(1..=3);
                    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
                    Rational::new(BigInt::from(s * a), BigInt::from(b))
                })
                .collect();
            TorusPoint::new(coords).expect("nonzero coordinates")
        })
        .collect()
}

impl ProbeSet {
    pub fn new(random: usize, seed: u64) -> Self {
        ProbeSet { random, seed }
    }

    pub fn points_for(&self, num_vars: usize, hints: &[TorusPoint]) -> Vec<TorusPoint> {
        let mut pts = hints.to_vec();
        for p in pants_panel(num_vars)
            .into_iter()
            .chain(random_points(num_vars, self.random, self.seed))
        {
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        pts
    }

    pub fn points(&self, c: &FreeComplex) -> Vec<TorusPoint> {
        self.points_for(c.num_vars(), c.support_hints())
    }

    pub fn exactness(&self, c: &FreeComplex) -> Result<(), Witness> {
        if c.is_zero_object() {
            return Ok(());
        }
        for p in self.points(c) {
            let h = homology_ranks_at(c, &p);
            if !h.is_zero() {
                return Err(Witness { point: p, homology: h });
            }
        }
        Ok(())
    }

    pub fn is_exact(&self, c: &FreeComplex) -> bool {
        self.exactness(c).is_ok()
    }

    /// Quasi-isomorphism test: the cone must be exact at every probe.
    pub fn quasi_iso(&self, f: &ChainMap) -> Result<(), Witness> {
        self.exactness(&cone(f).complex)
    }

    pub fn is_quasi_iso(&self, f: &ChainMap) -> bool {
        self.quasi_iso(f).is_ok()
    }

    fn map_points(&self, maps: &[&ChainMap]) -> Vec<TorusPoint> {
        let mut hints = Vec::new();
        for f in maps {
            hints = merge_hints(&hints, f.source().support_hints());
            hints = merge_hints(&hints, f.target().support_hints());
        }
        let nv = maps.first().map_or(0, |f| f.source().num_vars());
        self.points_for(nv, &hints)
    }

    /// Whether `f` and `g` induce the same map on homology at every probe.
    pub fn agree_on_homology(&self, f: &ChainMap, g: &ChainMap) -> Result<(), TorusPoint> {
        assert!(f.source().same_underlying(g.source()) && f.target().same_underlying(g.target()));
        let src = f.source();
        let tgt = f.target();
        for p in self.map_points(&[f, g]) {
            for k in src.degrees() {
                if tgt.rank(k) == 0 {
                    continue;
                }
                let cycles = src.diff(k).evaluate(&p).kernel();
                if cycles.is_empty() {
                    continue;
                }
                let bounds = tgt.diff(k - 1).evaluate(&p).column_basis();
                let d = f.component(k).sub(&g.component(k)).evaluate(&p);
                let images: Vec<Vec<Rational>> = cycles.iter().map(|z| d.apply(z)).collect();
                if !in_span(tgt.rank(k), &bounds, &images) {
                    return Err(p);
                }
            }
        }
        Ok(())
    }

    /// The scalar `c` with `f ≃ c·g` on homology at the first probe where `g`
    /// is nonzero on homology. `None` if `g` vanishes on homology everywhere or
    /// no such scalar exists there.
    pub fn induced_scalar(&self, f: &ChainMap, g: &ChainMap) -> Option<(TorusPoint, Rational)> {
        assert!(f.source().same_underlying(g.source()) && f.target().same_underlying(g.target()));
        let src = f.source();
        let tgt = f.target();
        let degs: Vec<i64> = src.degrees().filter(|&k| tgt.rank(k) > 0).collect();
        let offsets: Vec<usize> = degs
            .iter()
            .scan(0usize, |acc, &k| {
                let o = *acc;
                *acc += tgt.rank(k);
                Some(o)
            })
            .collect();
        let dim: usize = degs.iter().map(|&k| tgt.rank(k)).sum();
        let embed = |slot: usize, v: Vec<Rational>| {
            let mut out = alloc::vec![Rational::zero(); dim];
            for (i, x) in v.into_iter().enumerate() {
                out[offsets[slot] + i] = x;
            }
            out
        };
        for p in self.map_points(&[f, g]) {
            let mut basis = Vec::new();
            let mut ws = Vec::new();
            let mut vs = Vec::new();
            for (slot, &k) in degs.iter().enumerate() {
                for b in tgt.diff(k - 1).evaluate(&p).column_basis() {
                    basis.push(embed(slot, b));
                }
                let fk = f.component(k).evaluate(&p);
                let gk = g.component(k).evaluate(&p);
                for z in src.diff(k).evaluate(&p).kernel() {
                    ws.push(embed(slot, gk.apply(&z)));
                    vs.push(embed(slot, fk.apply(&z)));
                }
            }
            if in_span(dim, &basis, &ws) {
                continue;
            }
            return scalar_modulo(dim, &basis, &ws, &vs).map(|c| (p, c));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::skyscraper;
    use crate::laurent::LaurentPoly;

    #[test]
    fn koszul_homology_at_points() {
        let p = TorusPoint::from_ints(&[2]).unwrap();
        let k = skyscraper(&p);
        // The derived fiber of a point at itself: Tor_1 survives in degree -1.
        let h = homology_ranks_at(&k, &p);
        assert_eq!(h.nonzero(), alloc::vec![(-1, 1), (0, 1)]);
        assert!(homology_ranks_at(&k, &TorusPoint::from_ints(&[5]).unwrap()).is_zero());
        let o = FreeComplex::structure_sheaf(1);
        assert_eq!(homology_ranks_at(&o, &p).nonzero(), alloc::vec![(0, 1)]);
    }

    #[test]
    fn quasi_iso_of_sigma() {
        let probes = ProbeSet::default();
        let k = skyscraper(&TorusPoint::from_ints(&[2]).unwrap());
        let sigma = LaurentPoly::pants_section(1);
        assert!(probes.is_quasi_iso(&ChainMap::scalar(&k, &sigma)));
        let q = skyscraper(&TorusPoint::new(alloc::vec![rat(-1, 1)]).unwrap());
        let w = probes.quasi_iso(&ChainMap::scalar(&q, &sigma)).unwrap_err();
        assert_eq!(w.point, TorusPoint::from_ints(&[-1]).unwrap());
    }

    #[test]
    fn pants_panel_lies_on_divisor() {
        for nv in 1..4 {
            let s = LaurentPoly::pants_section(nv);
            let pts = pants_panel(nv);
            assert!(!pts.is_empty());
            assert!(pts.iter().all(|p| s.evaluate(p).is_zero()));
        }
    }

    #[test]
    fn scalar_on_homology() {
        let probes = ProbeSet::default();
        let p = TorusPoint::from_ints(&[2, 3]).unwrap();
        let k = skyscraper(&p);
        let f = ChainMap::scalar(&k, &LaurentPoly::parse("y1*y2", 2).unwrap());
        let (at, c) = probes.induced_scalar(&f, &ChainMap::identity(&k)).unwrap();
        assert_eq!(at, p);
        assert_eq!(c, int(6));
        assert!(probes
            .agree_on_homology(&f, &ChainMap::scalar(&k, &LaurentPoly::constant(2, int(6))))
            .is_ok());
        assert!(probes.agree_on_homology(&f, &ChainMap::identity(&k)).is_err());
    }
}

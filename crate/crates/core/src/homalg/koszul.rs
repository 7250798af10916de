use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::{FreeComplex, PolyMatrix};
use crate::laurent::{LaurentPoly, TorusPoint};

/// Degree-lowering map, keyed by source degree: `h_k` goes from degree `k` to `k - 1`.
pub type Homotopy = BTreeMap<i64, PolyMatrix>;

/// Size-`p` subsets of `0..m` in lexicographic order.
fn subsets(m: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, p, &mut Vec::new(), &mut out);
    out
}

/// Koszul complex on `xs`, in degrees `-m..=0` with `K_{-p} = Λ^p`.
///
/// The differential is contraction: `e_S ↦ Σ_j (-1)^j x_{s_j} e_{S∖s_j}`.
pub fn koszul(xs: &[LaurentPoly], hints: Vec<TorusPoint>) -> FreeComplex {
    let m = xs.len();
    let nv = xs.first().map_or(0, LaurentPoly::num_vars);
    let basis: Vec<Vec<Vec<usize>>> = (0..=m).map(|p| subsets(m, p)).collect();
    let rank = |k: i64| {
        if (-(m as i64)..=0).contains(&k) {
            basis[(-k) as usize].len()
        } else {
            0
        }
    };
    let diff = |k: i64| {
        let p = (-k) as usize;
        let src = &basis[p];
        let tgt = &basis[p - 1];
        let mut d = PolyMatrix::zeros(nv, tgt.len(), src.len());
        for (c, s) in src.iter().enumerate() {
            for (j, &i) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&t| t != i).collect();
                let r = tgt.iter().position(|t| *t == rest).expect("face present");
                let x = if j % 2 == 0 { xs[i].clone() } else { -&xs[i] };
                d.set(r, c, x);
            }
        }
        d
    };
    FreeComplex::from_fn(nv, -(m as i64), 0, rank, diff, hints)
}

/// Wedge with `Σ c_j e_j` on the Koszul complex of length `m`; satisfies
/// `d h + h d = Σ c_j x_j`.
pub fn wedge_homotopy(m: usize, cs: &[LaurentPoly]) -> Homotopy {
    assert_eq!(cs.len(), m);
    let nv = cs.first().map_or(0, LaurentPoly::num_vars);
    let mut h = Homotopy::new();
    for p in 0..m {
        let src = subsets(m, p);
        let tgt = subsets(m, p + 1);
        let mut mat = PolyMatrix::zeros(nv, tgt.len(), src.len());
        for (c, t) in src.iter().enumerate() {
            for (j, cj) in cs.iter().enumerate() {
                if t.contains(&j) || cj.is_zero() {
                    continue;
                }
                let before = t.iter().filter(|&&x| x < j).count();
                let mut s = t.clone();
                s.push(j);
                s.sort_unstable();
                let r = tgt.iter().position(|x| *x == s).expect("face present");
                mat.set(r, c, if before % 2 == 0 { cj.clone() } else { -cj });
            }
        }
        h.insert(-(p as i64), mat);
    }
    h
}

/// Koszul resolution of the skyscraper at `p`, on `y_i - p_i`, with hint `{p}`.
pub fn skyscraper(p: &TorusPoint) -> FreeComplex {
    let nv = p.num_vars();
    let xs: Vec<LaurentPoly> = (0..nv)
        .map(|i| &LaurentPoly::var(nv, i) - &LaurentPoly::constant(nv, p.coords()[i].clone()))
        .collect();
    koszul(&xs, vec![p.clone()])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_shapes_and_square() {
        let p = TorusPoint::from_ints(&[1, 2, -3]).unwrap();
        let k = skyscraper(&p);
        assert_eq!(k.degrees(), -3..=0);
        assert_eq!(k.ranks(), &[1, 3, 3, 1]);
        k.check_d_squared().unwrap();
    }

    #[test]
    fn wedge_homotopy_identity() {
        let nv = 2;
        let p = TorusPoint::from_ints(&[1, -2]).unwrap();
        let k = skyscraper(&p);
        let ones = vec![LaurentPoly::one(nv); 2];
        let h = wedge_homotopy(2, &ones);
        let sigma_shift = LaurentPoly::pants_section(nv);
        // Σ (y_i - p_i) = σ - σ(p) = σ when σ(p) = 0.
        for k_deg in k.degrees() {
            let hk = h
                .get(&k_deg)
                .cloned()
                .unwrap_or_else(|| PolyMatrix::zeros(nv, k.rank(k_deg - 1), k.rank(k_deg)));
            let hk1 = h
                .get(&(k_deg + 1))
                .cloned()
                .unwrap_or_else(|| PolyMatrix::zeros(nv, k.rank(k_deg), k.rank(k_deg + 1)));
            let lhs = k.diff(k_deg - 1).mul(&hk).add(&hk1.mul(&k.diff(k_deg)));
            assert_eq!(lhs, PolyMatrix::scalar(k.rank(k_deg), &sigma_shift));
        }
    }
}

//! Symbolic expansion of `D` in `(λ, μ)` at a fixed point, for small `n`.
//!
//! The constant columns `x, x_1 … x_n` are cleared first: with `K` an
//! invertible completion of them, `D = det K · det B` where `B` is the
//! lower-right `(2n+2)`-block of `K⁻¹ M`. `det B` is expanded column by
//! column over subsets of rows.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use super::gamma15::require_gamma_ambient;
use crate::chart::{Chart, DerivativePolys, DerivativeTable};
use crate::error::{Error, Result};
use crate::exactlin::{
    determinant, inverse, qserde, rank_exact, rat, Matrix, MultiPoly, Rational, Vector,
};

/// Largest `n` accepted by the symbolic expansion.
pub const CLAIM_LIMIT: usize = 3;

fn sym_contract(t: &DerivativeTable, dirs: &[&[MultiPoly]], nv: usize) -> Vec<MultiPoly> {
    fn rec(
        t: &DerivativeTable,
        dirs: &[&[MultiPoly]],
        idx: &mut Vec<usize>,
        weight: MultiPoly,
        acc: &mut [MultiPoly],
    ) {
        if idx.len() == dirs.len() {
            for (a, x) in acc.iter_mut().zip(t.x(idx)) {
                if !x.is_zero() {
                    *a = &*a + &weight.scale(x);
                }
            }
            return;
        }
        for i in 0..t.n() {
            let d = &dirs[idx.len()][i];
            if d.is_zero() {
                continue;
            }
            idx.push(i);
            rec(t, dirs, idx, &weight * d, acc);
            idx.pop();
        }
    }
    let mut acc = vec![MultiPoly::zero(nv); t.ambient_len()];
    rec(t, dirs, &mut Vec::new(), MultiPoly::one(nv), &mut acc);
    acc
}

fn add_scaled(acc: &mut [MultiPoly], c: i64, v: &[MultiPoly]) {
    for (a, p) in acc.iter_mut().zip(v) {
        *a = &*a + &p.scale(&rat(c));
    }
}

/// `D` as a polynomial in `λ_1 … λ_n, μ_1 … μ_n` (variables `0..n` and
/// `n..2n`) at `pt`.
pub fn gamma15_symbolic(c: &Chart, pt: &[Rational]) -> Result<MultiPoly> {
    let n = c.n();
    if n > CLAIM_LIMIT {
        return Err(Error::TooLarge { n, limit: CLAIM_LIMIT });
    }
    require_gamma_ambient(c)?;
    let t = DerivativePolys::new(c, 5).at(pt)?;
    let nv = 2 * n;
    let lam: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(nv, i)).collect();
    let mu: Vec<MultiPoly> = (0..n).map(|i| MultiPoly::var(nv, n + i)).collect();
    let unit = |k: usize| -> Vec<MultiPoly> {
        (0..n)
            .map(|i| if i == k { MultiPoly::one(nv) } else { MultiPoly::zero(nv) })
            .collect()
    };
    let (l, m) = (&lam[..], &mu[..]);

    let mut cols: Vec<Vec<MultiPoly>> = Vec::new();
    for j in 0..n {
        cols.push(sym_contract(&t, &[&unit(j), l], nv));
    }
    let mut q = sym_contract(&t, &[l, l, l, l], nv);
    add_scaled(&mut q, 12, &sym_contract(&t, &[l, l, m], nv));
    add_scaled(&mut q, 12, &sym_contract(&t, &[m, m], nv));
    cols.push(q);
    for k in 0..n {
        let e = unit(k);
        let mut g = sym_contract(&t, &[&e, l, l], nv);
        add_scaled(&mut g, 2, &sym_contract(&t, &[&e, m], nv));
        cols.push(g);
    }
    let mut p = sym_contract(&t, &[l, l, l, l, l], nv);
    add_scaled(&mut p, 20, &sym_contract(&t, &[l, l, l, m], nv));
    add_scaled(&mut p, 60, &sym_contract(&t, &[l, m, m], nv));
    cols.push(p);

    // complete x, x_1 … x_n to a basis with standard vectors
    let size = 3 * n + 3;
    let mut basis: Vec<Vector> = vec![t.x(&[]).clone()];
    basis.extend((0..n).map(|i| t.x(&[i]).clone()));
    if rank_exact(&Matrix::from_columns(&basis)?) < n + 1 {
        return Ok(MultiPoly::zero(nv));
    }
    for i in 0..size {
        if basis.len() == size {
            break;
        }
        let mut e = vec![rat(0); size];
        e[i] = rat(1);
        basis.push(e);
        if rank_exact(&Matrix::from_columns(&basis)?) < basis.len() {
            basis.pop();
        }
    }
    let k = Matrix::from_columns(&basis)?;
    let kinv = inverse(&k)?.expect("completed basis is invertible");
    let det_k = determinant(&k)?;

    let m_size = 2 * n + 2;
    let block: Vec<Vec<MultiPoly>> = (0..m_size)
        .map(|a| {
            let row = kinv.row(n + 1 + a);
            cols.iter()
                .map(|col| {
                    let mut acc = MultiPoly::zero(nv);
                    for (w, p) in row.iter().zip(col) {
                        if !w.is_zero() && !p.is_zero() {
                            acc = &acc + &p.scale(w);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(poly_det(&block, nv).scale(&det_k))
}

/// Determinant of a square matrix of polynomials by expansion over row
/// subsets, one column at a time.
fn poly_det(b: &[Vec<MultiPoly>], nv: usize) -> MultiPoly {
    let size = b.len();
    let mut dp: BTreeMap<u32, MultiPoly> = BTreeMap::new();
    dp.insert(0, MultiPoly::one(nv));
    for j in 0..size {
        let mut next: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (&mask, val) in &dp {
            for (row, brow) in b.iter().enumerate() {
                if mask & (1 << row) != 0 || brow[j].is_zero() {
                    continue;
                }
                let above = (mask >> (row + 1)).count_ones();
                let mut term = val * &brow[j];
                if above % 2 == 1 {
                    term = -&term;
                }
                let slot = next.entry(mask | (1 << row)).or_insert_with(|| MultiPoly::zero(nv));
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        dp = next;
    }
    dp.remove(&((1u32 << size) - 1)).unwrap_or_else(|| MultiPoly::zero(nv))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimAudit {
    pub n: usize,
    #[serde(with = "qserde::vector")]
    pub point: Vector,
    pub num_terms: usize,
    pub total_degree: Option<u32>,
    /// `3n + 9`.
    pub degree_bound: u32,
    /// Every monomial has weight `3n + 9` with `λ` of weight 1 and `μ` of
    /// weight 2.
    pub weighted_homogeneous: bool,
    pub vanishes_at_point: bool,
    /// Coefficient of `λ_1^{3n+7} μ_2` (needs `n >= 2`).
    #[serde(with = "qserde::option_rational")]
    pub coeff_mu2: Option<Rational>,
    /// `20 |S x_1111 x_111 … x_11n x_1112| + 2 Σ_{h≥2} |S x_1111 x_111 … x_2h … x_11n x_11111|`.
    #[serde(with = "qserde::option_rational")]
    pub predicted_mu2: Option<Rational>,
    /// The same sum with coefficient 1 on the first determinant.
    #[serde(with = "qserde::option_rational")]
    pub unit_weight_mu2: Option<Rational>,
    /// Coefficient of `λ_1^{3n+6} λ_2 μ_1`.
    #[serde(with = "qserde::option_rational")]
    pub coeff_lambda2_mu1: Option<Rational>,
    /// `|S x_1111 x_111 … x_11n x_1112|`.
    #[serde(with = "qserde::option_rational")]
    pub derived_det: Option<Rational>,
}

impl ClaimAudit {
    /// Both cited coefficients vanish (trivially true for `n = 1`).
    pub fn cited_coefficients_vanish(&self) -> bool {
        self.coeff_mu2.as_ref().is_none_or(Zero::is_zero)
            && self.coeff_lambda2_mu1.as_ref().is_none_or(Zero::is_zero)
    }

    pub fn prediction_matches(&self) -> Option<bool> {
        Some(self.coeff_mu2.as_ref()? == self.predicted_mu2.as_ref()?)
    }
}

fn slot_det(t: &DerivativeTable, q: &[usize], g3: &[Vec<usize>], p: &[usize]) -> Result<Rational> {
    let n = t.n();
    let mut cols: Vec<Vector> = vec![t.x(&[]).clone()];
    cols.extend((0..n).map(|i| t.x(&[i]).clone()));
    cols.extend((0..n).map(|i| t.x(&[0, i]).clone()));
    cols.push(t.x(q).clone());
    cols.extend(g3.iter().map(|idx| t.x(idx).clone()));
    cols.push(t.x(p).clone());
    determinant(&Matrix::from_columns(&cols)?)
}

pub fn claim_coefficient_audit(c: &Chart, pt: &[Rational]) -> Result<ClaimAudit> {
    let n = c.n();
    let d = gamma15_symbolic(c, pt)?;
    let nv = 2 * n;
    let weight = 3 * n as u32 + 9;
    let weighted_homogeneous = d.terms().all(|(e, _)| {
        let w: u32 = e[..n].iter().sum::<u32>() + 2 * e[n..].iter().sum::<u32>();
        w == weight
    });
    let exp = |pairs: &[(usize, u32)]| -> Vec<u32> {
        let mut e = vec![0u32; nv];
        for &(i, k) in pairs {
            e[i] = k;
        }
        e
    };
    let big = 3 * n as u32;
    let (coeff_mu2, coeff_lambda2_mu1, predicted_mu2, unit_weight_mu2, derived_det) = if n >= 2 {
        let t = DerivativePolys::new(c, 5).at(pt)?;
        let g3: Vec<Vec<usize>> = (0..n).map(|k| vec![0, 0, k]).collect();
        let a = slot_det(&t, &[0, 0, 0, 0], &g3, &[0, 0, 0, 1])?;
        let mut sum = rat(0);
        for h in 1..n {
            let mut g = g3.clone();
            g[h] = vec![1, h];
            sum += slot_det(&t, &[0, 0, 0, 0], &g, &[0, 0, 0, 0, 0])?;
        }
        (
            Some(d.coefficient(&exp(&[(0, big + 7), (n + 1, 1)]))),
            Some(d.coefficient(&exp(&[(0, big + 6), (1, 1), (n, 1)]))),
            Some(&a * rat(20) + &sum * rat(2)),
            Some(&a + &sum * rat(2)),
            Some(a),
        )
    } else {
        (None, None, None, None, None)
    };
    Ok(ClaimAudit {
        n,
        point: pt.to_vec(),
        num_terms: d.num_terms(),
        total_degree: d.total_degree(),
        degree_bound: weight,
        weighted_homogeneous,
        vanishes_at_point: d.is_zero(),
        coeff_mu2,
        predicted_mu2,
        unit_weight_mu2,
        coeff_lambda2_mu1,
        derived_det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_random_variety, make_veronese, pad_chart};
    use crate::chart::project_generic;
    use crate::quasiasymptotic::gamma15_det;
    use crate::sample::Sampler;

    #[test]
    fn symbolic_matches_numeric_for_curves() {
        let c = make_veronese(1, 5).unwrap();
        let pt = vec![rat(2)];
        let d = gamma15_symbolic(&c, &pt).unwrap();
        let mut s = Sampler::new(1);
        for _ in 0..10 {
            let (l, m) = (s.nonzero_small(), s.small());
            let v = d.eval(&[l.clone(), m.clone()]);
            assert_eq!(v, gamma15_det(&c, &pt, &[l], &[m]).unwrap());
        }
        let a = claim_coefficient_audit(&c, &pt).unwrap();
        assert!(a.weighted_homogeneous);
        assert!(a.total_degree.unwrap() <= a.degree_bound);
        assert_eq!(a.coeff_mu2, None);
    }

    #[test]
    fn symbolic_matches_numeric_for_surfaces() {
        let c = make_random_variety(2, 4, 8, 3).unwrap();
        let pt = vec![rat(1), rat(-1)];
        let d = gamma15_symbolic(&c, &pt).unwrap();
        let mut s = Sampler::new(2);
        for _ in 0..10 {
            let (l, m) = (s.nonzero_vector(2), s.point(2));
            let mut v = l.clone();
            v.extend(m.iter().cloned());
            assert_eq!(d.eval(&v), gamma15_det(&c, &pt, &l, &m).unwrap());
        }
    }

    #[test]
    fn cited_coefficient_has_factor_twenty() {
        let c = make_random_variety(2, 5, 8, 7).unwrap();
        let a = claim_coefficient_audit(&c, &[rat(0), rat(1)]).unwrap();
        assert!(a.weighted_homogeneous);
        assert!(!a.vanishes_at_point);
        assert_eq!(a.prediction_matches(), Some(true));
        assert_ne!(a.derived_det, Some(rat(0)));
        assert_ne!(a.coeff_mu2, a.unit_weight_mu2);
    }

    #[test]
    fn degenerate_surface_sanity_mode() {
        let c = pad_chart(&make_veronese(2, 2).unwrap(), 3).unwrap();
        let a = claim_coefficient_audit(&c, &[rat(1), rat(2)]).unwrap();
        assert!(a.vanishes_at_point);
        assert!(a.cited_coefficients_vanish());
        assert_eq!(a.num_terms, 0);
    }

    #[test]
    fn projected_cubic_surface() {
        let c = project_generic(&make_veronese(2, 3).unwrap(), 8, 4).unwrap();
        let a = claim_coefficient_audit(&c, &[rat(1), rat(1)]).unwrap();
        assert!(a.weighted_homogeneous);
        assert_eq!(a.prediction_matches(), Some(true));
    }

    #[test]
    fn threefold_expansion() {
        let c = make_random_variety(3, 2, 11, 1).unwrap();
        let pt = vec![rat(1), rat(0), rat(-1)];
        let a = claim_coefficient_audit(&c, &pt).unwrap();
        assert!(a.weighted_homogeneous);
        assert_eq!(a.prediction_matches(), Some(true));
        let d = gamma15_symbolic(&c, &pt).unwrap();
        let mut s = Sampler::new(3);
        let (l, m) = (s.nonzero_vector(3), s.point(3));
        let mut v = l.clone();
        v.extend(m.iter().cloned());
        assert_eq!(d.eval(&v), gamma15_det(&c, &pt, &l, &m).unwrap());
    }

    #[test]
    fn too_large() {
        let c = make_veronese(4, 2).unwrap();
        assert!(matches!(
            claim_coefficient_audit(&c, &vec![rat(0); 4]),
            Err(Error::TooLarge { n: 4, limit: 3 })
        ));
    }

    #[test]
    fn zero_determinant_polynomial() {
        let z = MultiPoly::zero(4);
        let b = vec![vec![z.clone(), z.clone()], vec![z.clone(), z]];
        assert!(poly_det(&b, 4).is_zero());
        let one = MultiPoly::one(1);
        let x = MultiPoly::var(1, 0);
        // det [[x, 1], [1, x]] = x^2 - 1
        let b = vec![vec![x.clone(), one.clone()], vec![one.clone(), x.clone()]];
        let want = &(&x * &x) - &one;
        assert_eq!(poly_det(&b, 1), want);
    }
}

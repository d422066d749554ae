use serde::Serialize;

use crate::chart::{curve_derivatives_at, Chart, DerivativePolys, DerivativeTable, FiveJet};
use crate::error::{Error, Result};
use crate::exactlin::{
    axpy, determinant, is_zero_vector, qserde, rat, sz_zero_test, Matrix, Rational, SzOutcome,
    Vector,
};
use crate::terracini::span_rank;

fn unit(n: usize, k: usize) -> Vector {
    let mut e = vec![rat(0); n];
    e[k] = rat(1);
    e
}

/// The `3n + 3` columns, in this fixed order:
///
/// 1. `x`, `x_1 … x_n`
/// 2. `G1_j = Σ_i x_ij λ_i` for `j = 1..n`
/// 3. the quartic `Σ x_ijkl λλλλ + 12 Σ x_ijk λλμ + 12 Σ x_ij μμ`
/// 4. `G3_k = 2 Σ_i x_ik μ_i + Σ_ij x_ijk λ_i λ_j` for `k = 1..n`
/// 5. the quintic `Σ x_ijklm λ⁵ + 20 Σ x_ijkl λλλμ + 60 Σ x_ijk λμμ`
pub fn gamma15_columns(t: &DerivativeTable, l: &[Rational], m: &[Rational]) -> Vec<Vector> {
    let n = t.n();
    let mut cols = vec![t.x(&[]).clone()];
    cols.extend((0..n).map(|i| t.x(&[i]).clone()));
    for j in 0..n {
        cols.push(t.contract(&[&unit(n, j), l]));
    }
    let mut quartic = t.contract(&[l, l, l, l]);
    axpy(&mut quartic, &rat(12), &t.contract(&[l, l, m]));
    axpy(&mut quartic, &rat(12), &t.contract(&[m, m]));
    cols.push(quartic);
    for k in 0..n {
        let e = unit(n, k);
        let mut v = t.contract(&[&e, l, l]);
        axpy(&mut v, &rat(2), &t.contract(&[&e, m]));
        cols.push(v);
    }
    let mut quintic = t.contract(&[l, l, l, l, l]);
    axpy(&mut quintic, &rat(20), &t.contract(&[l, l, l, m]));
    axpy(&mut quintic, &rat(60), &t.contract(&[l, m, m]));
    cols.push(quintic);
    cols
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gamma15Matrix {
    #[serde(with = "qserde::vector")]
    pub base: Vector,
    #[serde(with = "qserde::vector")]
    pub lambda: Vector,
    #[serde(with = "qserde::vector")]
    pub mu: Vector,
    #[serde(with = "qserde::matrix")]
    pub matrix: Matrix,
}

pub(crate) fn require_gamma_ambient(c: &Chart) -> Result<()> {
    let need = 3 * c.n() + 2;
    if c.r() != need {
        return Err(Error::AmbientMismatch { r: c.r(), need });
    }
    Ok(())
}

fn check_jet(c: &Chart, pt: &[Rational], l: &[Rational], m: &[Rational]) -> Result<()> {
    require_gamma_ambient(c)?;
    if pt.len() != c.n() || l.len() != c.n() || m.len() != c.n() {
        return Err(Error::DimensionMismatch("point, lambda and mu must have length n".into()));
    }
    if is_zero_vector(l) {
        return Err(Error::DegenerateJet);
    }
    Ok(())
}

/// The square matrix whose columns are [`gamma15_columns`]; needs
/// `r = 3n + 2`.
pub fn gamma15_matrix(
    c: &Chart,
    pt: &[Rational],
    lambda: &[Rational],
    mu: &[Rational],
) -> Result<Gamma15Matrix> {
    check_jet(c, pt, lambda, mu)?;
    let t = DerivativePolys::new(c, 5).at(pt)?;
    let matrix = Matrix::from_columns(&gamma15_columns(&t, lambda, mu))?;
    Ok(Gamma15Matrix {
        base: pt.to_vec(),
        lambda: lambda.to_vec(),
        mu: mu.to_vec(),
        matrix,
    })
}

/// `D(pt, λ, μ)`.
pub fn gamma15_det(c: &Chart, pt: &[Rational], lambda: &[Rational], mu: &[Rational]) -> Result<Rational> {
    determinant(&gamma15_matrix(c, pt, lambda, mu)?.matrix)
}

/// Total degree bound of `D` in `(pt, λ, μ)`: `3n + 9` in `(λ, μ)` plus
/// `(3n + 3) · deg(chart)` in the point.
pub fn gamma15_degree_bound(c: &Chart) -> usize {
    let n = c.n();
    3 * n + 9 + (3 * n + 3) * c.degree() as usize
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Gamma15Verdict {
    pub identically_zero: bool,
    pub degree_bound: usize,
    pub outcome: SzOutcome,
    pub seed: u64,
}

/// Schwartz–Zippel test of `D ≡ 0` jointly in `(pt, λ, μ)`.
pub fn gamma15_identically_zero(c: &Chart, trials: usize, seed: u64) -> Result<Gamma15Verdict> {
    require_gamma_ambient(c)?;
    let n = c.n();
    let polys = DerivativePolys::new(c, 5);
    let degree_bound = gamma15_degree_bound(c);
    let outcome = sz_zero_test(3 * n, degree_bound, trials, seed, |v| {
        let (pt, rest) = v.split_at(n);
        let (l, m) = rest.split_at(n);
        let t = polys.at(pt).expect("point of length n");
        let cols = gamma15_columns(&t, l, m);
        determinant(&Matrix::from_columns(&cols).expect("equal lengths")).expect("square")
    });
    Ok(Gamma15Verdict {
        identically_zero: outcome.is_identically_zero(),
        degree_bound,
        outcome,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiveJetRank {
    /// Rank of `x, x_1 … x_n, x', x'', x''', x'''', x'''''`.
    pub rank: usize,
    pub vectors: usize,
    /// `x'` always lies in the span of the `x_i`, so the rank never exceeds
    /// `n + 5`; the curve is a `γ₁,₅` at the point when it is `<= n + 4`.
    pub threshold: usize,
    pub holds: bool,
}

pub(crate) fn five_jet_rank_at(t: &DerivativeTable, j: &FiveJet) -> Result<FiveJetRank> {
    let n = t.n();
    let mut gens = vec![t.x(&[]).clone()];
    gens.extend((0..n).map(|i| t.x(&[i]).clone()));
    gens.extend(curve_derivatives_at(t, j)?);
    let rank = span_rank(t.ambient_len(), &gens);
    Ok(FiveJetRank {
        rank,
        vectors: n + 6,
        threshold: n + 4,
        holds: rank <= n + 4,
    })
}

pub fn five_jet_rank_check(c: &Chart, j: &FiveJet) -> Result<FiveJetRank> {
    require_gamma_ambient(c)?;
    if j.base.len() != c.n() {
        return Err(Error::DimensionMismatch("five-jet dimension".into()));
    }
    five_jet_rank_at(&DerivativePolys::new(c, 5).at(&j.base)?, j)
}

/// Whether `Σ x_ijk λ_i λ_j λ_k` lies in the span of the `x_i`, the `G1_j`
/// and the `G3_k` (it equals `Σ λ_k G3_k - 2 Σ μ_i G1_i`).
pub fn suppressed_vector_in_span(
    c: &Chart,
    pt: &[Rational],
    lambda: &[Rational],
    mu: &[Rational],
) -> Result<bool> {
    let n = c.n();
    let t = DerivativePolys::new(c, 3).at(pt)?;
    let mut span: Vec<Vector> = (0..n).map(|i| t.x(&[i]).clone()).collect();
    for j in 0..n {
        span.push(t.contract(&[&unit(n, j), lambda]));
    }
    for k in 0..n {
        let e = unit(n, k);
        let mut v = t.contract(&[&e, lambda, lambda]);
        axpy(&mut v, &rat(2), &t.contract(&[&e, mu]));
        span.push(v);
    }
    let before = span_rank(t.ambient_len(), &span);
    span.push(t.contract(&[lambda, lambda, lambda]));
    Ok(span_rank(t.ambient_len(), &span) == before)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_random_variety, make_veronese, pad_chart};
    use crate::chart::project_generic;
    use crate::sample::Sampler;

    #[test]
    fn curve_matrix_is_six_by_six() {
        let c = make_veronese(1, 5).unwrap();
        let g = gamma15_matrix(&c, &[rat(2)], &[rat(3)], &[rat(1)]).unwrap();
        assert_eq!((g.matrix.rows(), g.matrix.cols()), (6, 6));
        // third column is G1 = λ x_11
        let t = DerivativePolys::new(&c, 5).at(&[rat(2)]).unwrap();
        let mut g1 = t.x(&[0, 0]).clone();
        g1.iter_mut().for_each(|v| *v *= rat(3));
        assert_eq!(g.matrix.column(2), g1);
    }

    #[test]
    fn unit_direction_reduces_to_coordinate_vectors() {
        let c = make_random_variety(2, 5, 8, 2).unwrap();
        let pt = vec![rat(1), rat(-1)];
        let g = gamma15_matrix(&c, &pt, &[rat(1), rat(0)], &[rat(0), rat(0)]).unwrap();
        let t = DerivativePolys::new(&c, 5).at(&pt).unwrap();
        let expect: Vec<&Vector> = vec![
            t.x(&[]),
            t.x(&[0]),
            t.x(&[1]),
            t.x(&[0, 0]),
            t.x(&[0, 1]),
            t.x(&[0, 0, 0, 0]),
            t.x(&[0, 0, 0]),
            t.x(&[0, 0, 1]),
            t.x(&[0, 0, 0, 0, 0]),
        ];
        for (j, v) in expect.into_iter().enumerate() {
            assert_eq!(&g.matrix.column(j), v, "column {j}");
        }
    }

    #[test]
    fn errors() {
        let c = make_veronese(2, 2).unwrap();
        let z = vec![rat(0), rat(0)];
        assert!(matches!(
            gamma15_matrix(&c, &z, &z, &z),
            Err(Error::AmbientMismatch { r: 5, need: 8 })
        ));
        let c = make_random_variety(2, 3, 8, 1).unwrap();
        assert!(matches!(gamma15_matrix(&c, &z, &z, &z), Err(Error::DegenerateJet)));
    }

    #[test]
    fn quadratic_veronese_determinant_vanishes() {
        let c = make_veronese(4, 2).unwrap();
        let mut s = Sampler::new(4);
        for _ in 0..50 {
            let (pt, l, m) = (s.point(4), s.nonzero_vector(4), s.point(4));
            assert_eq!(gamma15_det(&c, &pt, &l, &m).unwrap(), rat(0));
        }
        let v = gamma15_identically_zero(&c, 20, 1).unwrap();
        assert!(v.identically_zero);
        assert_eq!(v.degree_bound, 21 + 15 * 2);
    }

    #[test]
    fn nondegenerate_controls_have_witnesses() {
        let rnc = make_veronese(1, 5).unwrap();
        assert_ne!(gamma15_det(&rnc, &[rat(1)], &[rat(2)], &[rat(0)]).unwrap(), rat(0));
        let v = gamma15_identically_zero(&rnc, 20, 1).unwrap();
        assert!(!v.identically_zero);
        assert!(matches!(v.outcome, SzOutcome::NonzeroWitness { trial: 0, .. }));
        let surf = make_random_variety(2, 5, 8, 5).unwrap();
        assert!(!gamma15_identically_zero(&surf, 20, 1).unwrap().identically_zero);
    }

    #[test]
    fn five_jet_ranks() {
        let mut s = Sampler::new(11);
        let rnc = make_veronese(1, 5).unwrap();
        let j = FiveJet::new(s.point(1), vec![rat(2)], s.point(1), s.point(1), s.point(1), s.point(1))
            .unwrap();
        let r = five_jet_rank_check(&rnc, &j).unwrap();
        assert_eq!((r.rank, r.holds), (6, false));

        // on v_2(P^4) the condition holds when ν = ρ = 0
        let v = make_veronese(4, 2).unwrap();
        let zero = vec![rat(0); 4];
        for _ in 0..5 {
            let j = FiveJet::new(
                s.point(4),
                s.nonzero_vector(4),
                s.point(4),
                zero.clone(),
                zero.clone(),
                s.point(4),
            )
            .unwrap();
            assert!(five_jet_rank_check(&v, &j).unwrap().holds);
        }
        // but not for arbitrary ν, ρ although D vanishes identically there
        let j = FiveJet::new(
            s.point(4),
            s.nonzero_vector(4),
            s.point(4),
            s.nonzero_vector(4),
            s.nonzero_vector(4),
            s.point(4),
        )
        .unwrap();
        assert_eq!(five_jet_rank_check(&v, &j).unwrap().rank, 4 + 5);
    }

    #[test]
    fn sigma_does_not_change_the_rank() {
        let c = make_random_variety(2, 5, 8, 9).unwrap();
        let mut s = Sampler::new(3);
        for _ in 0..5 {
            let mut j = FiveJet::new(
                s.point(2),
                s.nonzero_vector(2),
                s.point(2),
                s.point(2),
                s.point(2),
                s.point(2),
            )
            .unwrap();
            let a = five_jet_rank_check(&c, &j).unwrap().rank;
            j.sigma = s.point(2);
            assert_eq!(five_jet_rank_check(&c, &j).unwrap().rank, a);
        }
    }

    #[test]
    fn suppressed_vector_is_dependent() {
        let mut s = Sampler::new(6);
        for c in [
            make_veronese(2, 2).unwrap(),
            make_random_variety(2, 5, 8, 1).unwrap(),
            project_generic(&make_veronese(2, 3).unwrap(), 8, 2).unwrap(),
            pad_chart(&make_veronese(1, 4).unwrap(), 1).unwrap(),
        ] {
            for _ in 0..10 {
                let n = c.n();
                let (pt, l, m) = (s.point(n), s.nonzero_vector(n), s.point(n));
                assert!(suppressed_vector_in_span(&c, &pt, &l, &m).unwrap());
            }
        }
    }
}

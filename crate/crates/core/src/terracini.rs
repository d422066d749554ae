//! Tangent and osculating spaces, secant defects via Terracini's lemma, and
//! 2-osculating regularity.
//!
//! "General point" statements are decided by the maximum rank over seeded
//! draws: the generic rank of a polynomial family is its maximum, and any
//! single draw gives a lower bound.

use serde::Serialize;

use crate::catalog::expected_secant_dim;
use crate::chart::{Chart, DerivativePolys, DerivativeTable};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vector, qserde, rank_screened, rat, zero_vector, Matrix, Rational, Vector};
use crate::sample::Sampler;

/// Linear span of vectors in `Q^{r+1}`, i.e. a projective linear subspace
/// of `P^r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearSpan {
    #[serde(with = "qserde::vectors")]
    generators: Vec<Vector>,
    rank: usize,
    ambient: usize,
}

impl LinearSpan {
    /// Span of `generators` in `Q^ambient`.
    pub fn new(ambient: usize, generators: Vec<Vector>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.len() != ambient) {
            return Err(Error::DimensionMismatch(format!(
                "generator of length {} in Q^{ambient}",
                g.len()
            )));
        }
        let rank = span_rank(ambient, &generators);
        Ok(LinearSpan {
            generators,
            rank,
            ambient,
        })
    }

    pub fn generators(&self) -> &[Vector] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Length of the vectors, `r + 1`.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// `rank - 1`; the empty span has dimension `-1`.
    pub fn projective_dim(&self) -> i64 {
        self.rank as i64 - 1
    }

    /// Indices of generators that are the zero vector.
    pub fn zero_generators(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| is_zero_vector(&self.generators[i]))
            .collect()
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        let mut gens = self.generators.clone();
        gens.push(v.to_vec());
        span_rank(self.ambient, &gens) == self.rank
    }

    pub fn contains(&self, other: &LinearSpan) -> bool {
        self.join(other).rank == self.rank
    }

    pub fn join(&self, other: &LinearSpan) -> LinearSpan {
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().cloned());
        let rank = span_rank(self.ambient, &generators);
        LinearSpan {
            generators,
            rank,
            ambient: self.ambient,
        }
    }

    /// Generators as the rows of a matrix.
    pub fn matrix(&self) -> Matrix {
        if self.generators.is_empty() {
            return Matrix::zeros(0, self.ambient);
        }
        Matrix::from_rows(self.generators.clone()).expect("equal lengths")
    }
}

pub(crate) fn span_rank(ambient: usize, generators: &[Vector]) -> usize {
    let rows: Vec<Vector> = generators
        .iter()
        .filter(|g| !is_zero_vector(g))
        .cloned()
        .collect();
    if rows.is_empty() || ambient == 0 {
        return 0;
    }
    rank_screened(&Matrix::from_rows(rows).expect("equal lengths"))
}

fn tangent_generators(table: &DerivativeTable) -> Vec<Vector> {
    let n = table.n();
    std::iter::once(table.x(&[]).clone())
        .chain((0..n).map(|i| table.x(&[i]).clone()))
        .collect()
}

/// `T_{X,p} = <x, x_1, ..., x_n>` at `pt`.
pub fn tangent_space(c: &Chart, pt: &[Rational]) -> Result<LinearSpan> {
    let table = DerivativePolys::new(c, 1).at(pt)?;
    let span = LinearSpan::new(c.r() + 1, tangent_generators(&table))?;
    if span.rank() < c.n() + 1 {
        return Err(Error::SingularPoint {
            rank: span.rank(),
            need: c.n() + 1,
        });
    }
    Ok(span)
}

/// The `h`-osculating space: span of all derivative vectors of order `<= h`.
pub fn osculating_space(c: &Chart, pt: &[Rational], h: usize) -> Result<LinearSpan> {
    if h == 0 {
        return Err(Error::InvalidArgument("osculating order must be >= 1".into()));
    }
    let table = DerivativePolys::new(c, h).at(pt)?;
    let gens = table.block(h).into_iter().map(|(_, v)| v.clone()).collect();
    LinearSpan::new(c.r() + 1, gens)
}

/// Draws allowed per point before giving up on finding a smooth one.
pub const MAX_RESAMPLE: usize = 32;

/// `dim Sec_k(X)` estimated by Terracini's lemma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectRecord {
    pub k: usize,
    /// `min{r, kn + n + k}`.
    pub expected: usize,
    /// Projective dimension of the span of `k + 1` general tangent spaces.
    pub observed: usize,
    pub defect: usize,
    /// The `k + 1` points attaining `observed`.
    #[serde(with = "qserde::vectors")]
    pub witness: Vec<Vector>,
    pub seed: u64,
    /// Draws made; stops early once `expected` is reached.
    pub samples_used: usize,
    /// Points redrawn because the chart was singular there.
    pub resampled: usize,
}

fn smooth_point(
    polys: &DerivativePolys,
    n: usize,
    s: &mut Sampler,
    resampled: &mut usize,
) -> Result<(Vector, Vec<Vector>)> {
    for attempt in 0..MAX_RESAMPLE {
        let pt = s.point(n);
        let table = polys.at(&pt)?;
        let gens = tangent_generators(&table);
        if span_rank(table.ambient_len(), &gens) == n + 1 {
            return Ok((pt, gens));
        }
        if attempt + 1 < MAX_RESAMPLE {
            *resampled += 1;
        }
    }
    Err(Error::SingularSample {
        attempts: MAX_RESAMPLE,
    })
}

pub fn secant_defect(c: &Chart, k: usize, samples: usize, seed: u64) -> Result<DefectRecord> {
    if k == 0 || samples == 0 {
        return Err(Error::InvalidArgument("secant_defect needs k >= 1 and samples >= 1".into()));
    }
    let (n, r) = (c.n(), c.r());
    let expected = expected_secant_dim(n, r, k);
    let polys = DerivativePolys::new(c, 1);
    let mut s = Sampler::derived(seed, 0x5345_4341);
    let mut resampled = 0;
    let mut best: Option<(usize, Vec<Vector>)> = None;
    let mut used = 0;
    for _ in 0..samples {
        used += 1;
        let mut points = Vec::with_capacity(k + 1);
        let mut gens = Vec::with_capacity((k + 1) * (n + 1));
        for _ in 0..=k {
            let (pt, g) = smooth_point(&polys, n, &mut s, &mut resampled)?;
            points.push(pt);
            gens.extend(g);
        }
        let rank = span_rank(r + 1, &gens);
        if best.as_ref().is_none_or(|(b, _)| rank > *b) {
            best = Some((rank, points));
        }
        if rank == expected + 1 {
            break;
        }
    }
    let (rank, witness) = best.expect("at least one sample");
    let observed = rank - 1;
    Ok(DefectRecord {
        k,
        expected,
        observed,
        defect: expected - observed,
        witness,
        seed,
        samples_used: used,
        resampled,
    })
}

/// A point and second-order jet `(λ, μ)` with `λ_1 = 1`, `μ_1 = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JetWitness {
    #[serde(with = "qserde::vector")]
    pub point: Vector,
    #[serde(with = "qserde::vector")]
    pub lambda: Vector,
    #[serde(with = "qserde::vector")]
    pub mu: Vector,
}

impl JetWitness {
    pub(crate) fn draw(n: usize, s: &mut Sampler) -> Self {
        let point = s.point(n);
        let mut lambda = s.point(n);
        let mut mu = s.point(n);
        lambda[0] = rat(1);
        mu[0] = rat(0);
        JetWitness { point, lambda, mu }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Osc2Verdict {
    pub regular: bool,
    /// `3n + 1`.
    pub needed_rank: usize,
    pub best_rank: usize,
    pub trial_ranks: Vec<usize>,
    pub witness: JetWitness,
    pub seed: u64,
}

/// The `3n + 1` vectors `x`, `x_i`, `Σ_i x_ij λ_i` and
/// `Σ_ij x_kij λ_i λ_j + 2 Σ_j x_kj μ_j`.
pub fn osc2_vectors(table: &DerivativeTable, lambda: &[Rational], mu: &[Rational]) -> Vec<Vector> {
    let n = table.n();
    let mut out = tangent_generators(table);
    for j in 0..n {
        let mut v = zero_vector(table.ambient_len());
        for i in 0..n {
            axpy(&mut v, &lambda[i], table.x(&[i, j]));
        }
        out.push(v);
    }
    let ek = |k: usize| -> Vector {
        let mut e = vec![rat(0); n];
        e[k] = rat(1);
        e
    };
    for k in 0..n {
        let e = ek(k);
        let mut v = table.contract(&[&e, lambda, lambda]);
        axpy(&mut v, &rat(2), &table.contract(&[&e, mu]));
        out.push(v);
    }
    out
}

/// 2-osculating regularity: some `(pt, λ, μ)` makes the `3n + 1` vectors of
/// [`osc2_vectors`] independent.
pub fn osc2_regular(c: &Chart, trials: usize, seed: u64) -> Result<Osc2Verdict> {
    let n = c.n();
    if c.r() < 3 * n {
        return Err(Error::AmbientTooSmall {
            r: c.r(),
            need: 3 * n,
        });
    }
    let polys = DerivativePolys::new(c, 3);
    let mut s = Sampler::derived(seed, 0x4f53_4332);
    let needed = 3 * n + 1;
    let mut ranks = Vec::new();
    let mut best: Option<(usize, JetWitness)> = None;
    for _ in 0..trials.max(1) {
        let w = JetWitness::draw(n, &mut s);
        let table = polys.at(&w.point)?;
        let rank = span_rank(c.r() + 1, &osc2_vectors(&table, &w.lambda, &w.mu));
        ranks.push(rank);
        if best.as_ref().is_none_or(|(b, _)| rank > *b) {
            best = Some((rank, w));
        }
        if rank == needed {
            break;
        }
    }
    let (best_rank, witness) = best.expect("one trial");
    Ok(Osc2Verdict {
        regular: best_rank == needed,
        needed_rank: needed,
        best_rank,
        trial_ranks: ranks,
        witness,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordinateVerdict {
    /// Independence of `x, x_i, x_1i, x_11i`; implies 2-osculating
    /// regularity.
    pub independent: bool,
    pub rank: usize,
    /// Set when `independent` is false: nothing follows.
    pub inconclusive: bool,
}

/// Sufficient test for 2-osculating regularity along the first coordinate
/// direction.
pub fn osc2_regular_coordinate(c: &Chart, pt: &[Rational]) -> Result<CoordinateVerdict> {
    let n = c.n();
    let table = DerivativePolys::new(c, 3).at(pt)?;
    let mut gens = tangent_generators(&table);
    gens.extend((0..n).map(|i| table.x(&[0, i]).clone()));
    gens.extend((0..n).map(|i| table.x(&[0, 0, i]).clone()));
    let rank = span_rank(c.r() + 1, &gens);
    let independent = rank == 3 * n + 1;
    Ok(CoordinateVerdict {
        independent,
        rank,
        inconclusive: !independent,
    })
}

/// Columns spanning the affine tangent space of the parametrization
/// `y(u, λ, α) = x + α x'` (m = 1) or `y(u, λ, μ, α, β) = x + α x' + β x''`
/// (m = 2) of `Osc_m(X)`, with `λ_1 = 1`, `μ_1 = 0`.
fn osc_jacobian(
    table: &DerivativeTable,
    m: usize,
    w: &JetWitness,
    alpha: &Rational,
    beta: &Rational,
) -> Vec<Vector> {
    let n = table.n();
    let (l, mu) = (&w.lambda[..], &w.mu[..]);
    let e = |k: usize| -> Vector {
        let mut e = vec![rat(0); n];
        e[k] = rat(1);
        e
    };
    let x1 = table.contract(&[l]);
    let mut x2 = table.contract(&[l, l]);
    axpy(&mut x2, &rat(2), &table.contract(&[mu]));

    let mut y = table.x(&[]).clone();
    axpy(&mut y, alpha, &x1);
    if m == 2 {
        axpy(&mut y, beta, &x2);
    }
    let mut cols = vec![y];
    for k in 0..n {
        let ek = e(k);
        let mut v = table.x(&[k]).clone();
        axpy(&mut v, alpha, &table.contract(&[&ek, l]));
        if m == 2 {
            let mut w2 = table.contract(&[&ek, l, l]);
            axpy(&mut w2, &rat(2), &table.contract(&[&ek, mu]));
            axpy(&mut v, beta, &w2);
        }
        cols.push(v);
    }
    for k in 1..n {
        let ek = e(k);
        let mut v = zero_vector(table.ambient_len());
        axpy(&mut v, alpha, table.x(&[k]));
        if m == 2 {
            axpy(&mut v, &(beta * rat(2)), &table.contract(&[&ek, l]));
        }
        cols.push(v);
    }
    if m == 2 {
        for k in 1..n {
            let mut v = zero_vector(table.ambient_len());
            axpy(&mut v, &(beta * rat(2)), table.x(&[k]));
            cols.push(v);
        }
    }
    cols.push(x1);
    if m == 2 {
        cols.push(x2);
    }
    cols
}

/// Generic dimension of `Osc_m(X)`, `m ∈ {1, 2}`: the maximum rank of the
/// Jacobian of its parametrization over seeded samples, minus one.
pub fn osc_variety_dim(c: &Chart, m: usize, samples: usize, seed: u64) -> Result<usize> {
    if m != 1 && m != 2 {
        return Err(Error::InvalidArgument(format!("osculating order m = {m} not in {{1, 2}}")));
    }
    let n = c.n();
    let polys = DerivativePolys::new(c, m + 1);
    let mut s = Sampler::derived(seed, 0x4f53_4356 + m as u64);
    let bound = ((m + 1) * n).min(c.r()) + 1;
    let mut best = 0;
    for _ in 0..samples.max(1) {
        let w = JetWitness::draw(n, &mut s);
        let alpha = s.nonzero_small();
        let beta = s.nonzero_small();
        let table = polys.at(&w.point)?;
        best = best.max(span_rank(c.r() + 1, &osc_jacobian(&table, m, &w, &alpha, &beta)));
        if best == bound {
            break;
        }
    }
    Ok(best.saturating_sub(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_random_variety, make_segre, make_veronese, pad_chart};
    use crate::chart::project_generic;

    fn origin(n: usize) -> Vector {
        vec![rat(0); n]
    }

    #[test]
    fn tangent_of_veronese_surface_at_origin() {
        let c = make_veronese(2, 2).unwrap();
        let t = tangent_space(&c, &origin(2)).unwrap();
        assert_eq!(t.projective_dim(), 2);
        assert_eq!(t.generators()[0], vec![rat(1), rat(0), rat(0), rat(0), rat(0), rat(0)]);
        assert_eq!(t.generators()[1], vec![rat(0), rat(1), rat(0), rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn tangent_dimension_is_n_at_smooth_points() {
        let c = make_veronese(4, 2).unwrap();
        let mut s = Sampler::new(3);
        for _ in 0..5 {
            assert_eq!(tangent_space(&c, &s.point(4)).unwrap().projective_dim(), 4);
        }
    }

    #[test]
    fn singular_point_is_reported() {
        // the cusp t -> (1, t^2, t^3) is singular at 0
        use crate::exactlin::MultiPoly;
        let coords = vec![
            MultiPoly::one(1),
            MultiPoly::monomial(vec![2], rat(1)),
            MultiPoly::monomial(vec![3], rat(1)),
        ];
        let c = Chart::new("cusp", 1, coords).unwrap();
        assert!(matches!(
            tangent_space(&c, &origin(1)),
            Err(Error::SingularPoint { rank: 1, need: 2 })
        ));
    }

    #[test]
    fn osculating_dimensions() {
        let v = make_veronese(4, 2).unwrap();
        let pt = Sampler::new(1).point(4);
        assert_eq!(osculating_space(&v, &pt, 2).unwrap().projective_dim(), 14);
        assert_eq!(
            osculating_space(&v, &pt, 1).unwrap(),
            tangent_space(&v, &pt).unwrap()
        );
        let rnc = make_veronese(1, 5).unwrap();
        assert_eq!(osculating_space(&rnc, &[rat(2)], 5).unwrap().projective_dim(), 5);
        assert!(osculating_space(&rnc, &[rat(2)], 0).is_err());
    }

    #[test]
    fn span_operations() {
        let e = |i: usize| {
            let mut v = vec![rat(0); 4];
            v[i] = rat(1);
            v
        };
        let a = LinearSpan::new(4, vec![e(0), e(1), vec![rat(0); 4]]).unwrap();
        let b = LinearSpan::new(4, vec![e(1)]).unwrap();
        assert_eq!(a.rank(), 2);
        assert_eq!(a.zero_generators(), vec![2]);
        assert!(a.contains(&b));
        assert!(!b.contains(&a));
        assert!(a.contains_vector(&[rat(3), rat(-1), rat(0), rat(0)]));
        assert_eq!(a.join(&LinearSpan::new(4, vec![e(3)]).unwrap()).projective_dim(), 2);
        assert!(LinearSpan::new(3, vec![e(0)]).is_err());
    }

    #[test]
    fn classical_defects() {
        let v = make_veronese(2, 2).unwrap();
        for seed in 0..5 {
            let d = secant_defect(&v, 1, 5, seed).unwrap();
            assert_eq!((d.expected, d.observed, d.defect), (5, 4, 1));
        }
        let s = make_segre(2, 2).unwrap();
        assert_eq!(secant_defect(&s, 1, 5, 1).unwrap().defect, 1);
        let rnc = make_veronese(1, 5).unwrap();
        let d = secant_defect(&rnc, 2, 5, 1).unwrap();
        assert_eq!((d.observed, d.defect), (5, 0));
        let v4 = make_veronese(4, 2).unwrap();
        let d = secant_defect(&v4, 2, 5, 1).unwrap();
        assert_eq!((d.expected, d.observed, d.defect), (14, 11, 3));
    }

    #[test]
    fn observed_dimension_is_monotone_in_k() {
        let c = make_random_variety(2, 3, 9, 4).unwrap();
        let dims: Vec<usize> = (1..=3)
            .map(|k| secant_defect(&c, k, 3, 8).unwrap().observed)
            .collect();
        assert!(dims.windows(2).all(|w| w[0] <= w[1]), "{dims:?}");
    }

    #[test]
    fn osc2_examples() {
        let rnc = make_veronese(1, 5).unwrap();
        let v = osc2_regular(&rnc, 5, 1).unwrap();
        assert!(v.regular);
        assert_eq!(v.best_rank, 4);
        assert!(osc2_regular_coordinate(&rnc, &[rat(1)]).unwrap().independent);

        // Osc_2 lies in Sec_2, which has dimension 11 < 3n on v_2(P^4)
        let v4 = make_veronese(4, 2).unwrap();
        let v = osc2_regular(&v4, 5, 1).unwrap();
        assert!(!v.regular);
        assert_eq!(v.best_rank, 12);
        assert_eq!(osc_variety_dim(&v4, 2, 5, 1).unwrap(), 11);

        // a surface spanning only a P^5 cannot reach rank 7
        let pad = pad_chart(&make_veronese(2, 2).unwrap(), 3).unwrap();
        let v = osc2_regular(&pad, 5, 1).unwrap();
        assert!(!v.regular);
        let cv = osc2_regular_coordinate(&pad, &origin(2)).unwrap();
        assert!(cv.inconclusive);

        assert!(matches!(
            osc2_regular(&make_veronese(2, 2).unwrap(), 1, 1),
            Err(Error::AmbientTooSmall { r: 5, need: 6 })
        ));
    }

    #[test]
    fn coordinate_test_implies_generic_regularity() {
        for c in [
            make_veronese(1, 5).unwrap(),
            make_veronese(4, 2).unwrap(),
            make_random_variety(2, 5, 8, 3).unwrap(),
            project_generic(&make_veronese(2, 3).unwrap(), 8, 1).unwrap(),
        ] {
            let pt = Sampler::new(7).point(c.n());
            if osc2_regular_coordinate(&c, &pt).unwrap().independent {
                assert!(osc2_regular(&c, 5, 2).unwrap().regular, "{}", c.label());
            }
        }
    }

    #[test]
    fn osculating_variety_dimensions() {
        let surf = make_random_variety(2, 5, 8, 3).unwrap();
        assert_eq!(osc_variety_dim(&surf, 1, 5, 1).unwrap(), 4);
        assert_eq!(osc_variety_dim(&surf, 2, 5, 1).unwrap(), 6);

        let v4 = make_veronese(4, 2).unwrap();
        let regular = osc2_regular(&v4, 5, 1).unwrap().regular;
        assert_eq!(osc_variety_dim(&v4, 2, 5, 1).unwrap() == 12, regular);

        let pad = pad_chart(&make_veronese(2, 2).unwrap(), 3).unwrap();
        let d = osc_variety_dim(&pad, 2, 5, 1).unwrap();
        assert!(d < 6);
        assert!(!osc2_regular(&pad, 5, 1).unwrap().regular);
        assert!(osc_variety_dim(&pad, 3, 1, 1).is_err());
    }
}

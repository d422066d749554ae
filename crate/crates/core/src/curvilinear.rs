//! Tangent spaces along curvilinear schemes of length 2 and 3, the dual
//! systems of hyperplanes singular along them, and speciality verdicts.
//!
//! The generator formulas hold for a jet in normal form (`λ = e_1`,
//! `μ_1 = 0` at the origin), so every jet is normalized first.

use serde::Serialize;

use crate::chart::{jet_normalize, Chart, CurvilinearJet, DerivativePolys, JetLength};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, nullspace, qserde, rat, Rational, Vector};
use crate::sample::Sampler;
use crate::terracini::LinearSpan;

/// `τ_{n,k} = min{r, k(n+1) - 1}`.
pub fn expected_tangent_dim(n: usize, r: usize, length: JetLength) -> usize {
    r.min(length.value() * (n + 1) - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangentAlongScheme {
    pub jet: CurvilinearJet,
    /// The jet after normalization, in the new chart coordinates.
    pub normalized: CurvilinearJet,
    #[serde(with = "qserde::rational")]
    pub t_shift: Rational,
    pub span: LinearSpan,
    pub dim: i64,
    pub expected: usize,
    pub special: bool,
    /// Generators that vanish identically at this jet (kept in `span`).
    pub zero_generators: Vec<usize>,
}

/// Generators of `T_{X,γ}` for a normalized jet, read off the chart's
/// derivatives at the origin.
///
/// Length 2: `x, x_i, x_1i, x_111`. Length 3 adds, in place of `x_111`
/// alone, `x_111`, `2 Σ x_ih μ_i + x_11h` for `h ≥ 2`, the quartic
/// `12 Σ x_ij μ_i μ_j + 12 Σ x_11i μ_i + x_1111` and the quintic
/// `60 Σ x_1ij μ_i μ_j + 20 Σ x_111i μ_i + x_11111`.
fn generators(chart: &Chart, mu: &[Rational], length: JetLength) -> Result<Vec<Vector>> {
    let n = chart.n();
    let order = match length {
        JetLength::Two => 3,
        JetLength::Three => 5,
    };
    let t = DerivativePolys::new(chart, order).at(&vec![rat(0); n])?;
    let mut e1 = vec![rat(0); n];
    e1[0] = rat(1);
    let mut out = vec![t.x(&[]).clone()];
    out.extend((0..n).map(|i| t.x(&[i]).clone()));
    out.extend((0..n).map(|i| t.x(&[0, i]).clone()));
    out.push(t.x(&[0, 0, 0]).clone());
    if length == JetLength::Two {
        return Ok(out);
    }
    for h in 1..n {
        let mut eh = vec![rat(0); n];
        eh[h] = rat(1);
        let mut v = t.x(&[0, 0, h]).clone();
        axpy(&mut v, &rat(2), &t.contract(&[&eh, mu]));
        out.push(v);
    }
    let mut quartic = t.x(&[0, 0, 0, 0]).clone();
    axpy(&mut quartic, &rat(12), &t.contract(&[mu, mu]));
    axpy(&mut quartic, &rat(12), &t.contract(&[&e1, &e1, mu]));
    out.push(quartic);
    let mut quintic = t.x(&[0, 0, 0, 0, 0]).clone();
    axpy(&mut quintic, &rat(60), &t.contract(&[&e1, mu, mu]));
    axpy(&mut quintic, &rat(20), &t.contract(&[&e1, &e1, &e1, mu]));
    out.push(quintic);
    Ok(out)
}

/// `T_{X,γ}` for the scheme defined by `j`.
pub fn tangent_along(c: &Chart, j: &CurvilinearJet) -> Result<TangentAlongScheme> {
    let (n, r) = (c.n(), c.r());
    if j.length == JetLength::Three && r < 3 * n + 2 {
        return Err(Error::AmbientTooSmall {
            r,
            need: 3 * n + 2,
        });
    }
    let norm = jet_normalize(c, j)?;
    let gens = generators(&norm.chart, &norm.jet.mu, j.length)?;
    let span = LinearSpan::new(r + 1, gens)?;
    let expected = expected_tangent_dim(n, r, j.length);
    let dim = span.projective_dim();
    Ok(TangentAlongScheme {
        jet: j.clone(),
        normalized: norm.jet,
        t_shift: norm.t_shift,
        zero_generators: span.zero_generators(),
        special: dim < expected as i64,
        dim,
        expected,
        span,
    })
}

/// Hyperplanes `a · x = 0` whose section is singular along the scheme.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperplaneSystem {
    #[serde(with = "qserde::vectors")]
    pub covectors: Vec<Vector>,
    /// `r - 1 - dim T_{X,γ}`.
    pub projective_dim: i64,
    /// `r - k(n+1)`; speciality means the system is larger than this.
    pub threshold: i64,
    pub exceeds_threshold: bool,
}

pub fn hyperplane_system(c: &Chart, j: &CurvilinearJet) -> Result<HyperplaneSystem> {
    let t = tangent_along(c, j)?;
    Ok(system_of(c, &t))
}

pub(crate) fn system_of(c: &Chart, t: &TangentAlongScheme) -> HyperplaneSystem {
    let covectors = nullspace(&t.span.matrix());
    let projective_dim = covectors.len() as i64 - 1;
    let threshold = c.r() as i64 - (t.jet.length.value() * (c.n() + 1)) as i64;
    HyperplaneSystem {
        covectors,
        projective_dim,
        threshold,
        exceeds_threshold: projective_dim > threshold,
    }
}

/// Seeded general jet at a general point.
pub fn random_jet(n: usize, length: JetLength, s: &mut Sampler) -> CurvilinearJet {
    let base = s.point(n);
    let lambda = s.nonzero_vector(n);
    let mu = s.point(n);
    CurvilinearJet::new(base, lambda, mu, length).expect("λ nonzero")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialityVerdict {
    pub length: JetLength,
    pub expected: usize,
    pub special: bool,
    pub best_dim: i64,
    pub trial_dims: Vec<i64>,
    /// Jet attaining `best_dim`.
    pub witness: CurvilinearJet,
    pub zero_generators: Vec<usize>,
    /// Dual criterion at the witness: the hyperplane system exceeds
    /// `r - k(n+1)`.
    pub system_exceeds_threshold: bool,
    pub seed: u64,
}

/// Speciality along a general scheme of the given length: regular iff some
/// seeded jet attains `τ_{n,k}`.
pub fn generic_speciality(
    c: &Chart,
    length: JetLength,
    trials: usize,
    seed: u64,
) -> Result<SpecialityVerdict> {
    let mut s = Sampler::derived(seed, 0x4355_5256 + length.value() as u64);
    let mut dims = Vec::new();
    let mut best: Option<TangentAlongScheme> = None;
    for _ in 0..trials.max(1) {
        let t = tangent_along(c, &random_jet(c.n(), length, &mut s))?;
        dims.push(t.dim);
        let done = !t.special;
        if best.as_ref().is_none_or(|b| t.dim > b.dim) {
            best = Some(t);
        }
        if done {
            break;
        }
    }
    let best = best.expect("one trial");
    let system = system_of(c, &best);
    Ok(SpecialityVerdict {
        length,
        expected: best.expected,
        special: best.special,
        best_dim: best.dim,
        trial_dims: dims,
        zero_generators: best.zero_generators.clone(),
        system_exceeds_threshold: system.exceeds_threshold,
        witness: best.jet,
        seed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpotCheck {
    pub jet: CurvilinearJet,
    pub dim: i64,
    pub special: bool,
}

/// Jets in special position: `μ = 0` and `λ` along each of the first
/// `count` coordinate axes, at a seeded base point.
pub fn special_position_checks(
    c: &Chart,
    length: JetLength,
    count: usize,
    seed: u64,
) -> Result<Vec<SpotCheck>> {
    let n = c.n();
    let mut s = Sampler::derived(seed, 0x5350_4f54);
    let base = s.point(n);
    (0..count.min(n))
        .map(|axis| {
            let mut lambda = vec![rat(0); n];
            lambda[axis] = rat(1);
            let jet = CurvilinearJet::new(base.clone(), lambda, vec![rat(0); n], length)?;
            let t = tangent_along(c, &jet)?;
            Ok(SpotCheck {
                jet,
                dim: t.dim,
                special: t.special,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_random_variety, make_veronese, pad_chart};
    use crate::chart::project_generic;
    use crate::exactlin::{dot, is_zero_vector, Matrix};
    use proptest::prelude::*;

    #[test]
    fn quadratic_veronese_is_special_along_length_three() {
        let c = make_veronese(4, 2).unwrap();
        let mut s = Sampler::new(2);
        for _ in 0..3 {
            let t = tangent_along(&c, &random_jet(4, JetLength::Three, &mut s)).unwrap();
            assert!(t.dim <= 13);
            assert!(t.special);
            // the quintic generator is the last one and vanishes on a quadratic chart
            let last = t.span.generators().len() - 1;
            assert!(t.zero_generators.contains(&last));
            assert!(is_zero_vector(&t.span.generators()[last]));
        }
        let v = generic_speciality(&c, JetLength::Three, 5, 1).unwrap();
        assert!(v.special);
        assert!(v.system_exceeds_threshold);
        assert_eq!(v.trial_dims.len(), 5);
    }

    #[test]
    fn rational_normal_quintic_is_regular() {
        let c = make_veronese(1, 5).unwrap();
        let v = generic_speciality(&c, JetLength::Three, 5, 1).unwrap();
        assert!(!v.special);
        assert_eq!((v.best_dim, v.expected), (5, 5));
        assert!(!v.system_exceeds_threshold);
    }

    #[test]
    fn generic_surface_is_regular() {
        let c = make_random_variety(2, 5, 8, 3).unwrap();
        let v2 = generic_speciality(&c, JetLength::Two, 5, 1).unwrap();
        assert_eq!((v2.best_dim, v2.special), (5, false));
        let v3 = generic_speciality(&c, JetLength::Three, 5, 1).unwrap();
        assert_eq!((v3.best_dim, v3.special), (8, false));
    }

    #[test]
    fn hyperplane_system_duality() {
        let c = make_veronese(4, 2).unwrap();
        let mut s = Sampler::new(5);
        let j = random_jet(4, JetLength::Three, &mut s);
        let t = tangent_along(&c, &j).unwrap();
        let h = hyperplane_system(&c, &j).unwrap();
        assert_eq!(h.projective_dim + t.dim, c.r() as i64 - 1);
        assert!(h.projective_dim >= 0);
        assert_eq!(h.threshold, -1);
        for a in &h.covectors {
            for g in t.span.generators() {
                assert_eq!(dot(a, g), rat(0));
            }
        }
    }

    #[test]
    fn small_ambient_is_rejected_for_length_three() {
        let c = make_veronese(2, 2).unwrap();
        let j = random_jet(2, JetLength::Three, &mut Sampler::new(1));
        assert!(matches!(
            tangent_along(&c, &j),
            Err(Error::AmbientTooSmall { r: 5, need: 8 })
        ));
        // length 2 is fine: τ = min(5, 5)
        let j = random_jet(2, JetLength::Two, &mut Sampler::new(1));
        let t = tangent_along(&c, &j).unwrap();
        assert_eq!(t.expected, 5);
    }

    #[test]
    fn spot_checks_on_special_positions() {
        let c = make_veronese(4, 2).unwrap();
        let checks = special_position_checks(&c, JetLength::Three, 4, 1).unwrap();
        assert_eq!(checks.len(), 4);
        assert!(checks.iter().all(|k| k.special));
        let c = make_veronese(1, 5).unwrap();
        let checks = special_position_checks(&c, JetLength::Three, 3, 1).unwrap();
        assert_eq!(checks.len(), 1);
        assert!(!checks[0].special);
    }

    #[test]
    fn degenerate_curve_is_special() {
        let c = pad_chart(&make_veronese(1, 4).unwrap(), 1).unwrap();
        assert!(generic_speciality(&c, JetLength::Three, 3, 1).unwrap().special);
    }

    fn invertible(n: usize, s: &mut Sampler) -> Matrix {
        loop {
            let rows = (0..n).map(|_| s.point(n)).collect();
            let m = Matrix::from_rows(rows).unwrap();
            if crate::exactlin::rank_exact(&m) == n {
                return m;
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn tangent_dim_is_bounded_and_dual(seed in any::<u64>(), which in 0usize..3, len3 in any::<bool>()) {
            let c = match which {
                0 => make_veronese(1, 5).unwrap(),
                1 => make_random_variety(2, 3, 8, seed % 7).unwrap(),
                _ => project_generic(&make_veronese(2, 3).unwrap(), 8, seed).unwrap(),
            };
            let len = if len3 { JetLength::Three } else { JetLength::Two };
            let j = random_jet(c.n(), len, &mut Sampler::new(seed));
            let t = tangent_along(&c, &j).unwrap();
            let h = system_of(&c, &t);
            prop_assert!(t.dim <= t.expected as i64);
            prop_assert_eq!(t.dim + h.projective_dim, c.r() as i64 - 1);
            if len3 {
                prop_assert_eq!(t.special, h.exceeds_threshold);
            }
        }

        #[test]
        fn dimension_is_invariant_under_domain_changes(seed in any::<u64>()) {
            let c = make_random_variety(2, 3, 8, 1).unwrap();
            let mut s = Sampler::new(seed);
            let j = random_jet(2, JetLength::Three, &mut s);
            let t = tangent_along(&c, &j).unwrap();
            // normalizing first changes nothing
            let norm = jet_normalize(&c, &j).unwrap();
            let t2 = tangent_along(&norm.chart, &norm.jet).unwrap();
            prop_assert_eq!(&t.span, &t2.span);
            // linear change u = A v maps the jet to (A⁻¹ base, A⁻¹ λ, A⁻¹ μ)
            let a = invertible(2, &mut s);
            let moved = c.reparametrize(&[rat(0), rat(0)], &a).unwrap();
            let solve = |v: &[Rational]| -> Vector {
                let (p, q, r_, w) = (a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1));
                let det = p * w - q * r_;
                vec![(w * &v[0] - q * &v[1]) / &det, (p * &v[1] - r_ * &v[0]) / &det]
            };
            let j2 = CurvilinearJet::new(solve(&j.base), solve(&j.lambda), solve(&j.mu), j.length).unwrap();
            let t3 = tangent_along(&moved, &j2).unwrap();
            prop_assert!(t3.span.contains(&t.span) && t.span.contains(&t3.span));
            // μ and μ + cλ define the same scheme
            let mut mu = j.mu.clone();
            axpy(&mut mu, &rat(3), &j.lambda);
            let j4 = CurvilinearJet::new(j.base.clone(), j.lambda.clone(), mu, j.length).unwrap();
            let t4 = tangent_along(&c, &j4).unwrap();
            prop_assert!(t4.span.contains(&t.span) && t.span.contains(&t4.span));
        }
    }
}

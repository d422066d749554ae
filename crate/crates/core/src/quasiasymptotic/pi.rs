use serde::Serialize;

use super::gamma15::{five_jet_rank_at, require_gamma_ambient, FiveJetRank};
use crate::chart::{Chart, DerivativePolys, FiveJet};
use crate::error::{Error, Result};
use crate::exactlin::{qserde, rat, Rational, Vector};
use crate::terracini::{tangent_space, LinearSpan};

/// Span of `x, x_i, x_1i, x_11i, x_1111` at `(u_1, 0, …, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiSpace {
    #[serde(with = "qserde::rational")]
    pub u1: Rational,
    pub span: LinearSpan,
    pub dim: i64,
}

fn curve_point(n: usize, u1: &Rational) -> Vector {
    let mut pt = vec![rat(0); n];
    pt[0] = u1.clone();
    pt
}

pub fn pi_space(c: &Chart, u1: &Rational) -> Result<PiSpace> {
    pi_from(&DerivativePolys::new(c, 4), c, u1)
}

fn pi_from(polys: &DerivativePolys, c: &Chart, u1: &Rational) -> Result<PiSpace> {
    let n = c.n();
    let t = polys.at(&curve_point(n, u1))?;
    let mut gens = vec![t.x(&[]).clone()];
    gens.extend((0..n).map(|i| t.x(&[i]).clone()));
    gens.extend((0..n).map(|i| t.x(&[0, i]).clone()));
    gens.extend((0..n).map(|i| t.x(&[0, 0, i]).clone()));
    gens.push(t.x(&[0, 0, 0, 0]).clone());
    let span = LinearSpan::new(c.r() + 1, gens)?;
    Ok(PiSpace {
        u1: u1.clone(),
        dim: span.projective_dim(),
        span,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PiConstancy {
    /// Five-jet rank of the `u_1`-curve at each sample.
    pub curve_ranks: Vec<FiveJetRank>,
    pub spaces: Vec<PiSpace>,
    /// All spans equal (mutual containment).
    pub constant: bool,
    /// `T_{X,p}` at each sampled curve point lies in the first span.
    pub tangent_contained: Vec<bool>,
    /// `3n <= dim Π <= 3n + 1` at every sample.
    pub within_bounds: bool,
}

impl PiConstancy {
    pub fn passed(&self) -> bool {
        self.constant && self.tangent_contained.iter().all(|&b| b) && self.within_bounds
    }
}

/// Checks that `Π` does not move along the `u_1`-coordinate curve
/// `(u_1, 0, …, 0)`, which must be a `γ₁,₅` at every sample.
pub fn pi_constancy_check(c: &Chart, samples: &[Rational]) -> Result<PiConstancy> {
    require_gamma_ambient(c)?;
    if samples.is_empty() {
        return Err(Error::InvalidArgument("pi_constancy_check needs samples".into()));
    }
    let n = c.n();
    let polys = DerivativePolys::new(c, 5);
    let mut curve_ranks = Vec::new();
    for u1 in samples {
        let pt = curve_point(n, u1);
        let rank = five_jet_rank_at(&polys.at(&pt)?, &FiveJet::coordinate_curve(pt, 0)?)?;
        if !rank.holds {
            return Err(Error::PreconditionFailed(format!(
                "u_1-curve is not a γ₁,₅ at u_1 = {u1}: five-jet rank {} > {}",
                rank.rank, rank.threshold
            )));
        }
        curve_ranks.push(rank);
    }
    let spaces: Vec<PiSpace> = samples
        .iter()
        .map(|u1| pi_from(&polys, c, u1))
        .collect::<Result<_>>()?;
    let first = &spaces[0].span;
    let constant = spaces
        .iter()
        .all(|p| p.span.contains(first) && first.contains(&p.span));
    let tangent_contained = samples
        .iter()
        .map(|u1| Ok(first.contains(&tangent_space(c, &curve_point(n, u1))?)))
        .collect::<Result<_>>()?;
    let (lo, hi) = (3 * n as i64, 3 * n as i64 + 1);
    let within_bounds = spaces.iter().all(|p| p.dim >= lo && p.dim <= hi);
    Ok(PiConstancy {
        curve_ranks,
        spaces,
        constant,
        tangent_contained,
        within_bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_random_variety, make_veronese};
    use crate::exactlin::ratio;

    fn samples() -> Vec<Rational> {
        vec![rat(0), rat(1), rat(2), ratio(1, 2), rat(-1)]
    }

    #[test]
    fn quadratic_veronese_pi_is_constant() {
        let c = make_veronese(4, 2).unwrap();
        let p = pi_constancy_check(&c, &samples()).unwrap();
        assert!(p.constant);
        assert!(p.tangent_contained.iter().all(|&b| b));
        // x_11i and x_1111 vanish in the standard chart, leaving 9 vectors
        assert!(p.spaces.iter().all(|s| s.dim == 8));
        assert!(!p.within_bounds);
    }

    #[test]
    fn non_gamma_curve_is_rejected() {
        let c = make_random_variety(2, 5, 8, 1).unwrap();
        assert!(matches!(
            pi_constancy_check(&c, &samples()),
            Err(Error::PreconditionFailed(_))
        ));
    }

    #[test]
    fn pi_space_generator_count() {
        let c = make_random_variety(2, 5, 8, 1).unwrap();
        let p = pi_space(&c, &rat(1)).unwrap();
        assert_eq!(p.span.generators().len(), 3 * 2 + 2);
    }
}

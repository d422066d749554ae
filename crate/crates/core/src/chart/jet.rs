use num_traits::Zero;
use serde::Serialize;

use super::{Chart, DerivativePolys, DerivativeTable};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vector, qserde, rat, Matrix, Rational, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum JetLength {
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
}

impl JetLength {
    pub fn value(self) -> usize {
        match self {
            JetLength::Two => 2,
            JetLength::Three => 3,
        }
    }

    pub fn from_value(k: usize) -> Result<Self> {
        match k {
            2 => Ok(JetLength::Two),
            3 => Ok(JetLength::Three),
            _ => Err(Error::InvalidArgument(format!(
                "curvilinear schemes of length {k} are not supported (2 or 3)"
            ))),
        }
    }
}

/// Second-order jet `u_i = base_i + λ_i t + μ_i t²` defining a curvilinear
/// scheme of length 2 or 3 supported at `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurvilinearJet {
    #[serde(with = "qserde::vector")]
    pub base: Vector,
    #[serde(with = "qserde::vector")]
    pub lambda: Vector,
    #[serde(with = "qserde::vector")]
    pub mu: Vector,
    pub length: JetLength,
}

impl CurvilinearJet {
    pub fn new(base: Vector, lambda: Vector, mu: Vector, length: JetLength) -> Result<Self> {
        if lambda.len() != base.len() || mu.len() != base.len() {
            return Err(Error::DimensionMismatch(
                "jet base, lambda and mu must have equal length".into(),
            ));
        }
        if is_zero_vector(&lambda) {
            return Err(Error::DegenerateJet);
        }
        Ok(CurvilinearJet {
            base,
            lambda,
            mu,
            length,
        })
    }

    pub fn n(&self) -> usize {
        self.base.len()
    }

    /// `λ = e_1`, `μ_1 = 0` and base at the origin.
    pub fn is_normalized(&self) -> bool {
        self.base.iter().all(Zero::is_zero)
            && self.lambda[0] == rat(1)
            && self.lambda[1..].iter().all(Zero::is_zero)
            && self.mu[0].is_zero()
    }
}

/// Five-jet `u_i = base_i + λ_i t + μ_i t² + ν_i t³ + ρ_i t⁴ + σ_i t⁵` of a
/// curve through `base`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiveJet {
    #[serde(with = "qserde::vector")]
    pub base: Vector,
    #[serde(with = "qserde::vector")]
    pub lambda: Vector,
    #[serde(with = "qserde::vector")]
    pub mu: Vector,
    #[serde(with = "qserde::vector")]
    pub nu: Vector,
    #[serde(with = "qserde::vector")]
    pub rho: Vector,
    #[serde(with = "qserde::vector")]
    pub sigma: Vector,
}

impl FiveJet {
    pub fn new(
        base: Vector,
        lambda: Vector,
        mu: Vector,
        nu: Vector,
        rho: Vector,
        sigma: Vector,
    ) -> Result<Self> {
        let n = base.len();
        if [&lambda, &mu, &nu, &rho, &sigma].iter().any(|v| v.len() != n) {
            return Err(Error::DimensionMismatch(
                "five-jet coefficient vectors must have length n".into(),
            ));
        }
        if is_zero_vector(&lambda) {
            return Err(Error::DegenerateJet);
        }
        Ok(FiveJet {
            base,
            lambda,
            mu,
            nu,
            rho,
            sigma,
        })
    }

    /// The `u_axis` coordinate curve `u = base + t e_axis`.
    pub fn coordinate_curve(base: Vector, axis: usize) -> Result<Self> {
        let n = base.len();
        if axis >= n {
            return Err(Error::BadIndex {
                index: axis,
                bound: n,
            });
        }
        let zero = vec![Rational::zero(); n];
        let mut lambda = zero.clone();
        lambda[axis] = rat(1);
        Self::new(base, lambda, zero.clone(), zero.clone(), zero.clone(), zero)
    }

    /// Coefficient vectors `[λ, μ, ν, ρ, σ]`.
    pub fn coefficients(&self) -> [&Vector; 5] {
        [&self.lambda, &self.mu, &self.nu, &self.rho, &self.sigma]
    }
}

/// The derivatives `x', …, x'''''` of `x(u(t))` at `t = 0`, assembled from
/// the chart's derivative vectors:
///
/// ```text
/// x'     = Σ x_i λ_i
/// x''    = Σ x_ij λ_i λ_j + 2 Σ x_i μ_i
/// x'''   = Σ x_ijk λλλ + 6 Σ x_ij λ_i μ_j + 6 Σ x_i ν_i
/// x''''  = Σ x_ijkl λ⁴ + 12 Σ x_ijk λλμ + 12 Σ x_ij μμ + 24 Σ x_ij λ ν + 24 Σ x_i ρ_i
/// x''''' = Σ x_ijklm λ⁵ + 20 Σ x_ijkl λλλμ + 60 Σ x_ijk λμμ + 120 Σ x_ij μ ν
///          + 120 Σ x_ij λ ρ + 60 Σ x_ijk λλν + 120 Σ x_i σ_i
/// ```
///
/// The leading term of `x'''''` carries five indices.
pub fn curve_derivatives_at(table: &DerivativeTable, jet: &FiveJet) -> Result<[Vector; 5]> {
    if table.order() < 5 {
        return Err(Error::InvalidArgument(
            "curve derivatives need a derivative table of order 5".into(),
        ));
    }
    let (l, m, v, r, s) = (
        &jet.lambda[..],
        &jet.mu[..],
        &jet.nu[..],
        &jet.rho[..],
        &jet.sigma[..],
    );
    let terms = |parts: &[(i64, &[&[Rational]])]| -> Vector {
        let mut acc = vec![Rational::zero(); table.ambient_len()];
        for (coeff, dirs) in parts {
            axpy(&mut acc, &rat(*coeff), &table.contract(dirs));
        }
        acc
    };
    let d1 = terms(&[(1, &[l])]);
    let d2 = terms(&[(1, &[l, l]), (2, &[m])]);
    let d3 = terms(&[(1, &[l, l, l]), (6, &[l, m]), (6, &[v])]);
    let d4 = terms(&[
        (1, &[l, l, l, l]),
        (12, &[l, l, m]),
        (12, &[m, m]),
        (24, &[l, v]),
        (24, &[r]),
    ]);
    let d5 = terms(&[
        (1, &[l, l, l, l, l]),
        (20, &[l, l, l, m]),
        (60, &[l, m, m]),
        (120, &[m, v]),
        (120, &[l, r]),
        (60, &[l, l, v]),
        (120, &[s]),
    ]);
    Ok([d1, d2, d3, d4, d5])
}

/// [`curve_derivatives_at`] for a chart, evaluating its derivatives at the
/// jet's base point.
pub fn curve_derivatives(chart: &Chart, jet: &FiveJet) -> Result<[Vector; 5]> {
    if jet.base.len() != chart.n() {
        return Err(Error::DimensionMismatch("five-jet dimension".into()));
    }
    let table = DerivativePolys::new(chart, 5).at(&jet.base)?;
    curve_derivatives_at(&table, jet)
}

/// A jet brought to the normal form `λ = e_1`, `μ_1 = 0` at the origin,
/// together with the chart it is normal for.
#[derive(Clone, Debug)]
pub struct NormalizedJet {
    /// `x'(u') = x(shift + basis · u')`.
    pub chart: Chart,
    pub jet: CurvilinearJet,
    pub basis: Matrix,
    pub shift: Vector,
    /// The curve parameter is changed by `t = s - t_shift · s²`.
    pub t_shift: Rational,
}

/// Brings a jet to normal form by an invertible affine change of the chart
/// parameters followed by the reparametrization `t = s - μ'_1 s²`.
///
/// With `k` the first index where `λ_k ≠ 0`, the new parameter basis is `λ`
/// followed by the standard vectors `e_j`, `j ≠ k`; in it the jet reads
/// `λ' = e_1`, `μ' = A⁻¹ μ`, and the reparametrization removes `μ'_1`
/// modulo `t³`. The image scheme in `P^r` is unchanged.
pub fn jet_normalize(chart: &Chart, jet: &CurvilinearJet) -> Result<NormalizedJet> {
    let n = chart.n();
    if jet.n() != n {
        return Err(Error::DimensionMismatch("jet dimension".into()));
    }
    let k = jet
        .lambda
        .iter()
        .position(|x| !x.is_zero())
        .ok_or(Error::DegenerateJet)?;
    let others: Vec<usize> = (0..n).filter(|&j| j != k).collect();
    let mut basis = Matrix::zeros(n, n);
    for i in 0..n {
        basis.set(i, 0, jet.lambda[i].clone());
    }
    for (col, &j) in others.iter().enumerate() {
        basis.set(j, col + 1, rat(1));
    }
    let mu0 = &jet.mu[k] / &jet.lambda[k];
    let mut mu_new = vec![Rational::zero(); n];
    for (col, &j) in others.iter().enumerate() {
        mu_new[col + 1] = &jet.mu[j] - &mu0 * &jet.lambda[j];
    }
    let mut lambda_new = vec![Rational::zero(); n];
    lambda_new[0] = rat(1);

    let is_identity = k == 0 && jet.lambda[1..].iter().all(Zero::is_zero) && jet.lambda[0] == rat(1);
    let at_origin = jet.base.iter().all(Zero::is_zero);
    let new_chart = if is_identity && at_origin {
        chart.clone()
    } else {
        chart.reparametrize(&jet.base, &basis)?
    };
    Ok(NormalizedJet {
        chart: new_chart,
        jet: CurvilinearJet::new(vec![Rational::zero(); n], lambda_new, mu_new, jet.length)?,
        basis,
        shift: jet.base.clone(),
        t_shift: mu0,
    })
}

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use super::{MultiPoly, Rational};
use crate::error::{Error, Result};

/// Power series in `t` truncated after `t^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Rational>,
}

impl TruncSeries {
    /// Coefficients `c_0 .. c_order`.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series needs at least c_0");
        TruncSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut c: Vec<Rational> = self.coeffs.iter().take(order + 1).cloned().collect();
        c.resize(order + 1, Rational::zero());
        TruncSeries { coeffs: c }
    }

    /// Composition `self(inner(s))`; `inner` must have no constant term.
    pub fn compose(&self, inner: &TruncSeries) -> Result<TruncSeries> {
        if !inner.coeff(0).is_zero() {
            return Err(Error::InvalidArgument(
                "inner series of a composition must vanish at 0".into(),
            ));
        }
        let order = self.order().min(inner.order());
        let mut out = TruncSeries::zero(order);
        let mut power = TruncSeries::constant(Rational::one(), order);
        for k in 0..=order {
            let c = self.coeff(k);
            if !c.is_zero() {
                for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                    *o += &c * p;
                }
            }
            power = &power * inner;
        }
        Ok(out)
    }
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        TruncSeries {
            coeffs: (0..=order).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        }
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncSeries::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// Composes a polynomial with a curve `u_i = curve[i](t)`, truncated at
/// `t^order`.
pub fn poly_compose_curve(
    p: &MultiPoly,
    curve: &[TruncSeries],
    order: usize,
) -> Result<TruncSeries> {
    if curve.len() != p.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "curve has {} components, polynomial has {} variables",
            curve.len(),
            p.num_vars()
        )));
    }
    if let Some(short) = curve.iter().find(|s| s.order() < order) {
        return Err(Error::OrderMismatch {
            have: short.order(),
            need: order,
        });
    }
    let curve: Vec<TruncSeries> = curve.iter().map(|s| s.truncate(order)).collect();
    let mut powers: Vec<Vec<TruncSeries>> = curve
        .iter()
        .map(|_| vec![TruncSeries::constant(Rational::one(), order)])
        .collect();
    let mut out = TruncSeries::zero(order);
    for (e, c) in p.terms() {
        let mut term = TruncSeries::constant(c.clone(), order);
        for (v, &k) in e.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let cache = &mut powers[v];
            while cache.len() <= k as usize {
                let next = cache.last().unwrap() * &curve[v];
                cache.push(next);
            }
            term = &term * &cache[k as usize];
        }
        out = &out + &term;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn series(c: &[i64]) -> TruncSeries {
        TruncSeries::new(c.iter().map(|&x| rat(x)).collect())
    }

    #[test]
    fn identity_curve() {
        let p = MultiPoly::var(1, 0);
        let s = poly_compose_curve(&p, &[series(&[0, 1, 0])], 2).unwrap();
        assert_eq!(s, series(&[0, 1, 0]));
    }

    #[test]
    fn square_of_t_plus_t2() {
        // (t + t^2)^2 = t^2 + 2 t^3 + O(t^4)
        let p = MultiPoly::monomial(vec![2], rat(1));
        let s = poly_compose_curve(&p, &[series(&[0, 1, 1, 0])], 3).unwrap();
        assert_eq!(s, series(&[0, 0, 1, 2]));
    }

    #[test]
    fn order_mismatch() {
        let p = MultiPoly::var(2, 0);
        let err = poly_compose_curve(&p, &[series(&[0, 1]), series(&[0, 1, 0, 0])], 3);
        assert_eq!(err, Err(Error::OrderMismatch { have: 1, need: 3 }));
    }

    #[test]
    fn series_composition() {
        // exp-like truncated: (1 + x + x^2) o (s + s^2) = 1 + s + 2 s^2 + O(s^3)
        let outer = series(&[1, 1, 1]);
        let inner = series(&[0, 1, 1]);
        assert_eq!(outer.compose(&inner).unwrap(), series(&[1, 1, 2]));
        assert!(outer.compose(&series(&[1, 1, 0])).is_err());
    }
}

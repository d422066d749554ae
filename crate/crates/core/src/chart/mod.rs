//! Polynomial charts `x(u_1, …, u_n)` of projective varieties and the
//! derivative vectors `x_{i_1…i_h}` every span formula is assembled from.
//!
//! Multi-indices are 0-based in the API (`[0, 0]` is `x_{11}`) and always
//! looked up in sorted order, since mixed partials commute.

mod jet;
mod json;

pub use jet::{
    curve_derivatives, curve_derivatives_at, jet_normalize, CurvilinearJet, FiveJet, JetLength,
    NormalizedJet,
};

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{axpy, is_zero_vector, rank_screened, Matrix, MultiPoly, Rational, Vector};
use crate::sample::Sampler;

/// Affine polynomial chart of an `n`-fold in `P^r`: `r + 1` coordinate
/// polynomials in `u_1..u_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    label: String,
    n: usize,
    coords: Vec<MultiPoly>,
}

impl Chart {
    pub fn new(label: impl Into<String>, n: usize, coords: Vec<MultiPoly>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("chart needs n >= 1".into()));
        }
        if coords.len() < 2 {
            return Err(Error::InvalidArgument(
                "chart needs at least two homogeneous coordinates".into(),
            ));
        }
        if let Some(p) = coords.iter().find(|p| p.num_vars() != n) {
            return Err(Error::DimensionMismatch(format!(
                "coordinate polynomial in {} variables, chart has n = {n}",
                p.num_vars()
            )));
        }
        Ok(Chart {
            label: label.into(),
            n,
            coords,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Domain dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Ambient projective dimension.
    pub fn r(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[MultiPoly] {
        &self.coords
    }

    /// Largest total degree among the coordinates.
    pub fn degree(&self) -> u32 {
        self.coords
            .iter()
            .filter_map(MultiPoly::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, pt: &[Rational]) -> Result<Vector> {
        self.check_point(pt)?;
        Ok(self.coords.iter().map(|p| p.eval(pt)).collect())
    }

    fn check_point(&self, pt: &[Rational]) -> Result<()> {
        if pt.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point of dimension {} for a chart with n = {}",
                pt.len(),
                self.n
            )));
        }
        Ok(())
    }

    /// Smoothness of the chart at `pt`: `x, x_1, …, x_n` independent.
    pub fn is_smooth_at(&self, pt: &[Rational]) -> Result<bool> {
        let table = DerivativePolys::new(self, 1).at(pt)?;
        let rows: Vec<Vector> = table.block(1).into_iter().map(|(_, v)| v.clone()).collect();
        Ok(rank_screened(&Matrix::from_rows(rows)?) == self.n + 1)
    }

    /// Composition with the affine change of parameters `u = shift + A u'`.
    pub fn reparametrize(&self, shift: &[Rational], basis: &Matrix) -> Result<Chart> {
        self.check_point(shift)?;
        if basis.rows() != self.n || basis.cols() != self.n {
            return Err(Error::DimensionMismatch(
                "reparametrization matrix must be n x n".into(),
            ));
        }
        let subs: Vec<MultiPoly> = (0..self.n)
            .map(|i| {
                let mut p = MultiPoly::constant(self.n, shift[i].clone());
                for j in 0..self.n {
                    p = &p + &MultiPoly::var(self.n, j).scale(basis.get(i, j));
                }
                p
            })
            .collect();
        let coords = self
            .coords
            .iter()
            .map(|p| p.compose(&subs))
            .collect::<Result<Vec<_>>>()?;
        Chart::new(self.label.clone(), self.n, coords)
    }

    /// Applies a linear map `P^r -> P^{r'}` given as an `(r'+1) x (r+1)`
    /// matrix to the coordinates.
    pub fn project(&self, proj: &Matrix) -> Result<Chart> {
        if proj.cols() != self.coords.len() {
            return Err(Error::DimensionMismatch(format!(
                "projection with {} columns for {} coordinates",
                proj.cols(),
                self.coords.len()
            )));
        }
        let coords = (0..proj.rows())
            .map(|i| {
                self.coords
                    .iter()
                    .enumerate()
                    .fold(MultiPoly::zero(self.n), |acc, (j, p)| {
                        &acc + &p.scale(proj.get(i, j))
                    })
            })
            .collect();
        Chart::new(self.label.clone(), self.n, coords)
    }

    pub fn to_json(&self) -> String {
        json::to_json(self)
    }

    pub fn from_json(text: &str) -> Result<Chart> {
        json::from_json(text)
    }
}

/// All multi-indices `i_1 <= … <= i_h` over `0..n` with `h = order`, in
/// lexicographic order.
pub fn sorted_indices(n: usize, order: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..order {
        let mut next = Vec::new();
        for idx in &out {
            let start = idx.last().copied().unwrap_or(0);
            for j in start..n {
                let mut e = idx.clone();
                e.push(j);
                next.push(e);
            }
        }
        out = next;
    }
    out
}

/// Symbolic partial derivatives of a chart's coordinates up to a fixed
/// order, keyed by sorted multi-index. Built once per chart and evaluated at
/// as many points as needed.
#[derive(Clone, Debug)]
pub struct DerivativePolys {
    n: usize,
    order: usize,
    polys: BTreeMap<Vec<usize>, Vec<MultiPoly>>,
}

impl DerivativePolys {
    pub fn new(chart: &Chart, order: usize) -> Self {
        let mut polys = BTreeMap::new();
        polys.insert(Vec::new(), chart.coords.clone());
        for h in 1..=order {
            for idx in sorted_indices(chart.n, h) {
                let parent = &polys[&idx[..h - 1]];
                let last = idx[h - 1];
                let d: Vec<MultiPoly> = parent
                    .iter()
                    .map(|p: &MultiPoly| p.partial(last).expect("index below n"))
                    .collect();
                polys.insert(idx, d);
            }
        }
        DerivativePolys {
            n: chart.n,
            order,
            polys,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn at(&self, pt: &[Rational]) -> Result<DerivativeTable> {
        if pt.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "point of dimension {} for n = {}",
                pt.len(),
                self.n
            )));
        }
        let vectors = self
            .polys
            .iter()
            .map(|(idx, ps)| (idx.clone(), ps.iter().map(|p| p.eval(pt)).collect()))
            .collect();
        Ok(DerivativeTable {
            n: self.n,
            order: self.order,
            point: pt.to_vec(),
            vectors,
        })
    }
}

/// Values of all derivative vectors of order `<= order` at one point.
#[derive(Clone, Debug)]
pub struct DerivativeTable {
    n: usize,
    order: usize,
    point: Vector,
    vectors: BTreeMap<Vec<usize>, Vector>,
}

impl DerivativeTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn point(&self) -> &[Rational] {
        &self.point
    }

    pub fn ambient_len(&self) -> usize {
        self.vectors[&Vec::new()].len()
    }

    /// `x_{idx}` for a 0-based multi-index in any order.
    pub fn get(&self, idx: &[usize]) -> Result<&Vector> {
        if let Some(&bad) = idx.iter().find(|&&i| i >= self.n) {
            return Err(Error::BadIndex {
                index: bad,
                bound: self.n,
            });
        }
        if idx.len() > self.order {
            return Err(Error::InvalidArgument(format!(
                "derivative of order {} requested from a table of order {}",
                idx.len(),
                self.order
            )));
        }
        let mut key = idx.to_vec();
        key.sort_unstable();
        Ok(&self.vectors[&key])
    }

    /// Shorthand for [`get`](Self::get) on indices known to be valid.
    pub fn x(&self, idx: &[usize]) -> &Vector {
        self.get(idx).expect("valid multi-index")
    }

    /// All derivative vectors of order `<= h`, in order of degree then
    /// lexicographic multi-index.
    pub fn block(&self, h: usize) -> Vec<(Vec<usize>, &Vector)> {
        (0..=h.min(self.order))
            .flat_map(|k| sorted_indices(self.n, k))
            .map(|idx| {
                let v = &self.vectors[&idx];
                (idx, v)
            })
            .collect()
    }

    /// Full contraction `Σ_{i_1..i_h} x_{i_1…i_h} d1_{i_1} ⋯ dh_{i_h}` over
    /// ordered index tuples, one direction vector per slot.
    pub fn contract(&self, dirs: &[&[Rational]]) -> Vector {
        let mut acc = vec![Rational::zero(); self.ambient_len()];
        let mut idx = Vec::with_capacity(dirs.len());
        self.contract_rec(dirs, &mut idx, Rational::one(), &mut acc);
        acc
    }

    fn contract_rec(
        &self,
        dirs: &[&[Rational]],
        idx: &mut Vec<usize>,
        weight: Rational,
        acc: &mut Vector,
    ) {
        let depth = idx.len();
        if depth == dirs.len() {
            let v = self.x(idx);
            if !is_zero_vector(v) {
                axpy(acc, &weight, v);
            }
            return;
        }
        for i in 0..self.n {
            let w = &dirs[depth][i];
            if w.is_zero() {
                continue;
            }
            idx.push(i);
            self.contract_rec(dirs, idx, &weight * w, acc);
            idx.pop();
        }
    }
}

/// `x_{idx}(pt)`; the multi-index is 0-based and may be given in any order.
pub fn derivative_vector(chart: &Chart, pt: &[Rational], idx: &[usize]) -> Result<Vector> {
    if let Some(&bad) = idx.iter().find(|&&i| i >= chart.n) {
        return Err(Error::BadIndex {
            index: bad,
            bound: chart.n,
        });
    }
    chart.check_point(pt)?;
    let mut key = idx.to_vec();
    key.sort_unstable();
    let mut polys = chart.coords.clone();
    for &i in &key {
        polys = polys.iter().map(|p| p.partial(i)).collect::<Result<_>>()?;
    }
    Ok(polys.iter().map(|p| p.eval(pt)).collect())
}

/// All derivative vectors of order `<= h` at `pt`, keyed by sorted
/// multi-index; `C(n+h, h)` entries.
pub fn taylor_block(chart: &Chart, pt: &[Rational], h: usize) -> Result<Vec<(Vec<usize>, Vector)>> {
    let table = DerivativePolys::new(chart, h).at(pt)?;
    Ok(table
        .block(h)
        .into_iter()
        .map(|(i, v)| (i, v.clone()))
        .collect())
}

/// Seeded `(r_target + 1) x (r_source + 1)` integer matrix with entries in
/// `[-9, 9]`.
pub fn generic_projection_matrix(r_source: usize, r_target: usize, seed: u64) -> Matrix {
    let mut s = Sampler::derived(seed, 0x5052_4f4a);
    let rows = (0..=r_target)
        .map(|_| (0..=r_source).map(|_| crate::exactlin::rat(s.int(-9, 9))).collect())
        .collect();
    Matrix::from_rows(rows).expect("rectangular")
}

/// Generic linear projection of the chart to `P^{r_target}`; identity when
/// `r_target = r`.
pub fn project_generic(chart: &Chart, r_target: usize, seed: u64) -> Result<Chart> {
    let r = chart.r();
    if r_target > r || r_target < 2 * chart.n {
        return Err(Error::BadTarget {
            target: r_target,
            n: chart.n,
            r,
        });
    }
    if r_target == r {
        return Ok(chart.clone());
    }
    let proj = generic_projection_matrix(r, r_target, seed);
    Ok(chart
        .project(&proj)?
        .with_label(format!("{}|proj{}:{}", chart.label, r_target, seed)))
}

/// Projects to `P^{3n+2}` when the ambient space is larger, so that the
/// `γ₁,₅` matrix is square. Returns the chart unchanged when `r = 3n+2`.
pub fn project_to_gamma_ambient(chart: &Chart, seed: u64) -> Result<Chart> {
    let target = 3 * chart.n + 2;
    if chart.r() < target {
        return Err(Error::AmbientTooSmall {
            r: chart.r(),
            need: target,
        });
    }
    project_generic(chart, target, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{make_random_variety, make_veronese};
    use crate::exactlin::{rank_exact, rat};

    fn v2p2() -> Chart {
        make_veronese(2, 2).unwrap()
    }

    #[test]
    fn empty_index_is_the_point() {
        let c = v2p2();
        let pt = vec![rat(2), rat(-1)];
        assert_eq!(derivative_vector(&c, &pt, &[]).unwrap(), c.eval(&pt).unwrap());
    }

    #[test]
    fn veronese_second_derivative_at_origin() {
        // coords ordered 1, u1, u2, u1^2, u1u2, u2^2
        let c = v2p2();
        let v = derivative_vector(&c, &[rat(0), rat(0)], &[0, 0]).unwrap();
        let expected: Vector = [0, 0, 0, 2, 0, 0].iter().map(|&x| rat(x)).collect();
        assert_eq!(v, expected);
    }

    #[test]
    fn derivative_symmetric_in_index_order() {
        let c = make_random_variety(3, 4, 8, 11).unwrap();
        let pt = vec![rat(1), rat(-2), rat(3)];
        let a = derivative_vector(&c, &pt, &[2, 0, 1, 0]).unwrap();
        let b = derivative_vector(&c, &pt, &[0, 0, 1, 2]).unwrap();
        assert_eq!(a, b);
        let table = DerivativePolys::new(&c, 4).at(&pt).unwrap();
        assert_eq!(table.x(&[1, 0, 2, 0]), &a);
    }

    #[test]
    fn bad_index() {
        let c = v2p2();
        assert!(matches!(
            derivative_vector(&c, &[rat(0), rat(0)], &[2]),
            Err(Error::BadIndex { index: 2, bound: 2 })
        ));
    }

    #[test]
    fn taylor_block_counts_and_ranks() {
        let c = v2p2();
        let pt = vec![rat(1), rat(1)];
        let b0 = taylor_block(&c, &pt, 0).unwrap();
        assert_eq!(b0.len(), 1);
        assert_eq!(b0[0].1, c.eval(&pt).unwrap());
        let b1 = taylor_block(&c, &pt, 1).unwrap();
        assert_eq!(b1.len(), 3);
        let m = Matrix::from_rows(b1.into_iter().map(|(_, v)| v).collect()).unwrap();
        assert_eq!(rank_exact(&m), 3);

        let v2p4 = make_veronese(4, 2).unwrap();
        let pt = vec![rat(2), rat(-3), rat(1), rat(5)];
        let b2 = taylor_block(&v2p4, &pt, 2).unwrap();
        assert_eq!(b2.len(), 15);
        let m = Matrix::from_rows(b2.into_iter().map(|(_, v)| v).collect()).unwrap();
        assert_eq!(rank_exact(&m), 15);
    }

    #[test]
    fn contraction_matches_explicit_sum() {
        let c = make_random_variety(2, 3, 6, 4).unwrap();
        let t = DerivativePolys::new(&c, 2).at(&[rat(1), rat(2)]).unwrap();
        let a = vec![rat(3), rat(-1)];
        let b = vec![rat(2), rat(5)];
        let mut expected = vec![Rational::zero(); c.r() + 1];
        for i in 0..2 {
            for j in 0..2 {
                axpy(&mut expected, &(&a[i] * &b[j]), t.x(&[i, j]));
            }
        }
        assert_eq!(t.contract(&[&a, &b]), expected);
    }

    #[test]
    fn projection_identity_and_bad_target() {
        let c = make_veronese(2, 3).unwrap();
        assert_eq!(project_generic(&c, 9, 1).unwrap(), c);
        assert!(matches!(project_generic(&c, 10, 1), Err(Error::BadTarget { .. })));
        assert!(matches!(project_generic(&c, 3, 1), Err(Error::BadTarget { .. })));
    }

    #[test]
    fn projection_keeps_chart_smooth() {
        let c = make_veronese(2, 3).unwrap();
        let p = project_generic(&c, 8, 7).unwrap();
        assert_eq!(p.r(), 8);
        let mut s = Sampler::new(3);
        for _ in 0..5 {
            let pt = s.point(2);
            assert!(p.is_smooth_at(&pt).unwrap());
        }
    }

    #[test]
    fn projection_commutes_with_differentiation() {
        let c = make_veronese(2, 3).unwrap();
        let proj = generic_projection_matrix(9, 8, 5);
        let p = c.project(&proj).unwrap();
        let pt = vec![rat(2), rat(-1)];
        for idx in [vec![], vec![0], vec![0, 1], vec![1, 1, 1]] {
            let lhs = derivative_vector(&p, &pt, &idx).unwrap();
            let rhs = proj.mul_vec(&derivative_vector(&c, &pt, &idx).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projection_preserves_small_span_ranks() {
        let c = make_veronese(2, 3).unwrap();
        let proj = generic_projection_matrix(9, 8, 21);
        let mut s = Sampler::new(8);
        for _ in 0..5 {
            let pt = s.point(2);
            let block: Vec<Vector> = taylor_block(&c, &pt, 2)
                .unwrap()
                .into_iter()
                .map(|(_, v)| v)
                .collect();
            let before = rank_exact(&Matrix::from_rows(block.clone()).unwrap());
            let after_rows: Vec<Vector> =
                block.iter().map(|v| proj.mul_vec(v).unwrap()).collect();
            let after = rank_exact(&Matrix::from_rows(after_rows).unwrap());
            assert_eq!(before, 6);
            assert_eq!(after, before);
        }
    }

    #[test]
    fn sorted_index_counts() {
        // C(n + h - 1, h) indices of exact order h
        assert_eq!(sorted_indices(4, 2).len(), 10);
        assert_eq!(sorted_indices(2, 5).len(), 6);
        assert_eq!(sorted_indices(3, 0), vec![Vec::<usize>::new()]);
    }
}

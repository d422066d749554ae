//! Classical varieties with independently known invariants, used as ground
//! truth across the analyses.
//!
//! Known secant defects are stored with the oracle that derives them, never
//! as bare numbers. For Veronese and Segre varieties the secant varieties are
//! determinantal: `Sec_k(v_2(P^{m-1}))` is the locus of symmetric `m x m`
//! matrices of rank `<= k+1`, and `Sec_k(P^{a} x P^{b})` the locus of
//! `(a+1) x (b+1)` matrices of rank `<= k+1`.

use serde::Serialize;

use crate::chart::{sorted_indices, Chart};
use crate::error::{Error, Result};
use crate::exactlin::{rat, MultiPoly};
use crate::sample::Sampler;

/// All monomials of degree `<= d` in `u_1..u_n`, ordered by degree and then
/// lexicographically by sorted variable index: the affine chart of
/// `v_d(P^n)` with `r = C(n+d, d) - 1`.
pub fn make_veronese(n: usize, d: usize) -> Result<Chart> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidArgument("veronese needs n, d >= 1".into()));
    }
    let coords = (0..=d)
        .flat_map(|k| sorted_indices(n, k))
        .map(|idx| {
            let mut e = vec![0u32; n];
            for i in idx {
                e[i] += 1;
            }
            MultiPoly::monomial(e, rat(1))
        })
        .collect();
    Chart::new(format!("veronese:{n}:{d}"), n, coords)
}

/// Products of `(1, u_1..u_a)` with `(1, v_1..v_b)`: the affine chart of
/// `P^a x P^b` in `P^{(a+1)(b+1)-1}`, with `n = a + b` (the `u` variables
/// first).
pub fn make_segre(a: usize, b: usize) -> Result<Chart> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("segre needs a, b >= 1".into()));
    }
    let n = a + b;
    let factor = |offset: usize, count: usize| -> Vec<MultiPoly> {
        std::iter::once(MultiPoly::one(n))
            .chain((0..count).map(|i| MultiPoly::var(n, offset + i)))
            .collect()
    };
    let left = factor(0, a);
    let right = factor(a, b);
    let coords = left
        .iter()
        .flat_map(|f| right.iter().map(move |g| f * g))
        .collect();
    Chart::new(format!("segre:{a}:{b}"), n, coords)
}

const RANDOM_RETRIES: usize = 16;

/// `r + 1` seeded random dense polynomials of total degree `<= degree` with
/// integer coefficients in `[-9, 9]`; the first coordinate has constant term
/// 1. Redrawn until the chart is smooth at the origin.
pub fn make_random_variety(n: usize, degree: usize, r: usize, seed: u64) -> Result<Chart> {
    if n == 0 || degree == 0 || r < 2 * n {
        return Err(Error::InvalidArgument(format!(
            "random variety needs n, degree >= 1 and r >= 2n (n = {n}, degree = {degree}, r = {r})"
        )));
    }
    let mut s = Sampler::derived(seed, 0x5241_4e44);
    let exps: Vec<Vec<u32>> = (0..=degree)
        .flat_map(|k| sorted_indices(n, k))
        .map(|idx| {
            let mut e = vec![0u32; n];
            for i in idx {
                e[i] += 1;
            }
            e
        })
        .collect();
    for _ in 0..RANDOM_RETRIES {
        let coords: Vec<MultiPoly> = (0..=r)
            .map(|i| {
                let mut p = MultiPoly::zero(n);
                for e in &exps {
                    let c = if i == 0 && e.iter().all(|&k| k == 0) {
                        1
                    } else {
                        s.int(-9, 9)
                    };
                    p.add_term(e.clone(), rat(c));
                }
                p
            })
            .collect();
        let chart = Chart::new(format!("random:{n}:{degree}:{r}:seed={seed}"), n, coords)?;
        if chart.is_smooth_at(&vec![rat(0); n])? {
            return Ok(chart);
        }
    }
    Err(Error::SmoothnessFailure {
        attempts: RANDOM_RETRIES,
    })
}

/// Appends `extra` identically zero coordinates, placing the variety inside
/// a linear subspace of a larger projective space.
pub fn pad_chart(chart: &Chart, extra: usize) -> Result<Chart> {
    let mut coords = chart.coords().to_vec();
    coords.extend((0..extra).map(|_| MultiPoly::zero(chart.n())));
    Chart::new(format!("{}+pad{}", chart.label(), extra), chart.n(), coords)
}

/// How a catalog chart is built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Constructor {
    Veronese { n: usize, d: usize },
    Segre { a: usize, b: usize },
    Random { n: usize, degree: usize, r: usize, seed: u64 },
    Padded { inner: Box<Constructor>, extra: usize },
}

impl Constructor {
    pub fn build(&self) -> Result<Chart> {
        match self {
            Constructor::Veronese { n, d } => make_veronese(*n, *d),
            Constructor::Segre { a, b } => make_segre(*a, *b),
            Constructor::Random { n, degree, r, seed } => {
                make_random_variety(*n, *degree, *r, *seed)
            }
            Constructor::Padded { inner, extra } => pad_chart(&inner.build()?, *extra),
        }
    }
}

/// Independent derivation of `dim Sec_k(X)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DefectOracle {
    /// Symmetric `size x size` matrices of rank `<= rank`; affine dimension
    /// `rank * size - rank (rank - 1) / 2`.
    SymmetricRank { size: usize, rank: usize },
    /// `rows x cols` matrices of rank `<= rank`; affine dimension
    /// `rank (rows + cols - rank)`.
    MatrixRank { rows: usize, cols: usize, rank: usize },
    /// A curve spanning a `P^span`: `dim Sec_k = min(span, 2k + 1)`.
    CurveInSpan { span: usize, k: usize },
    /// Known non-defective; the secant variety has the expected dimension.
    NonDefective { reason: String },
}

impl DefectOracle {
    /// Projective dimension of `Sec_k(X)` for a variety with the given
    /// `n`, `r`.
    pub fn secant_dim(&self, n: usize, r: usize, k: usize) -> i64 {
        match self {
            DefectOracle::SymmetricRank { size, rank } => {
                (rank * size - rank * (rank - 1) / 2) as i64 - 1
            }
            DefectOracle::MatrixRank { rows, cols, rank } => {
                (rank * (rows + cols - rank)) as i64 - 1
            }
            DefectOracle::CurveInSpan { span, k } => (*span).min(2 * k + 1) as i64,
            DefectOracle::NonDefective { .. } => expected_secant_dim(n, r, k) as i64,
        }
    }
}

/// `min{r, kn + n + k}`.
pub fn expected_secant_dim(n: usize, r: usize, k: usize) -> usize {
    r.min(k * n + n + k)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KnownDefect {
    pub k: usize,
    pub oracle: DefectOracle,
    pub observed_dim: i64,
    pub defect: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub constructor: Constructor,
    pub n: usize,
    pub r: usize,
    pub known_defects: Vec<KnownDefect>,
    /// Length-3 speciality at a general scheme; `None` when `r < 3n + 2`.
    pub special_length3: Option<bool>,
    /// Identical vanishing of the `γ₁,₅` determinant (after projection to
    /// `P^{3n+2}`); `None` when `r < 3n + 2`.
    pub gamma15_identically_zero: Option<bool>,
    pub osc2_regular: Option<bool>,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Chart> {
        let c = self.constructor.build()?;
        Ok(c.with_label(self.id.clone()))
    }

    pub fn supports_length3(&self) -> bool {
        self.r >= 3 * self.n + 2
    }
}

fn known(n: usize, r: usize, k: usize, oracle: DefectOracle) -> KnownDefect {
    let observed_dim = oracle.secant_dim(n, r, k);
    KnownDefect {
        k,
        defect: expected_secant_dim(n, r, k) as i64 - observed_dim,
        oracle,
        observed_dim,
    }
}

/// Seed of the random catalog members.
pub const CATALOG_SEED: u64 = 5;

/// The fixture catalog.
pub fn catalog() -> Vec<CatalogEntry> {
    use Constructor::*;
    use DefectOracle::*;
    let entry = |id: &str,
                 description: &str,
                 constructor: Constructor,
                 n: usize,
                 r: usize,
                 known_defects: Vec<KnownDefect>,
                 verdicts: (Option<bool>, Option<bool>, Option<bool>)| CatalogEntry {
        id: id.into(),
        description: description.into(),
        constructor,
        n,
        r,
        known_defects,
        special_length3: verdicts.0,
        gamma15_identically_zero: verdicts.1,
        osc2_regular: verdicts.2,
    };
    vec![
        entry(
            "v2p2",
            "Veronese surface v_2(P^2) in P^5",
            Veronese { n: 2, d: 2 },
            2,
            5,
            vec![known(2, 5, 1, SymmetricRank { size: 3, rank: 2 })],
            (None, None, None),
        ),
        entry(
            "segre22",
            "Segre fourfold P^2 x P^2 in P^8",
            Segre { a: 2, b: 2 },
            4,
            8,
            vec![known(4, 8, 1, MatrixRank { rows: 3, cols: 3, rank: 2 })],
            (None, None, None),
        ),
        entry(
            "rnc5",
            "quintic rational normal curve in P^5",
            Veronese { n: 1, d: 5 },
            1,
            5,
            vec![
                known(1, 5, 1, CurveInSpan { span: 5, k: 1 }),
                known(1, 5, 2, CurveInSpan { span: 5, k: 2 }),
            ],
            (Some(false), Some(false), Some(true)),
        ),
        entry(
            "v2p4",
            "quadratic Veronese fourfold v_2(P^4) in P^14",
            Veronese { n: 4, d: 2 },
            4,
            14,
            vec![
                known(4, 14, 1, SymmetricRank { size: 5, rank: 2 }),
                known(4, 14, 2, SymmetricRank { size: 5, rank: 3 }),
            ],
            (Some(true), Some(true), Some(false)),
        ),
        entry(
            "v2p5",
            "quadratic Veronese fivefold v_2(P^5) in P^20",
            Veronese { n: 5, d: 2 },
            5,
            20,
            vec![
                known(5, 20, 1, SymmetricRank { size: 6, rank: 2 }),
                known(5, 20, 2, SymmetricRank { size: 6, rank: 3 }),
            ],
            (Some(true), Some(true), Some(false)),
        ),
        entry(
            "v3p2",
            "cubic Veronese surface v_3(P^2) in P^9",
            Veronese { n: 2, d: 3 },
            2,
            9,
            vec![known(
                2,
                9,
                2,
                NonDefective {
                    reason: "three general double points impose independent conditions on plane cubics"
                        .into(),
                },
            )],
            (Some(false), Some(false), Some(true)),
        ),
        entry(
            "surf5",
            "seeded generic degree-5 surface in P^8",
            Random { n: 2, degree: 5, r: 8, seed: CATALOG_SEED },
            2,
            8,
            vec![known(
                2,
                8,
                2,
                NonDefective {
                    reason: "generic parametrized surface".into(),
                },
            )],
            (Some(false), Some(false), Some(true)),
        ),
        entry(
            "curve5",
            "seeded generic degree-5 curve in P^5",
            Random { n: 1, degree: 5, r: 5, seed: CATALOG_SEED },
            1,
            5,
            vec![known(1, 5, 2, CurveInSpan { span: 5, k: 2 })],
            (Some(false), Some(false), Some(true)),
        ),
        entry(
            "rnc4pad",
            "rational normal quartic spanning a hyperplane of P^5",
            Padded { inner: Box::new(Veronese { n: 1, d: 4 }), extra: 1 },
            1,
            5,
            vec![known(1, 5, 2, CurveInSpan { span: 4, k: 2 })],
            (Some(true), Some(true), Some(true)),
        ),
        entry(
            "v2p2pad",
            "Veronese surface spanning a P^5 inside P^8",
            Padded { inner: Box::new(Veronese { n: 2, d: 2 }), extra: 3 },
            2,
            8,
            vec![known(2, 8, 2, SymmetricRank { size: 3, rank: 3 })],
            (Some(true), Some(true), Some(false)),
        ),
    ]
}

pub fn find_entry(id: &str) -> Result<CatalogEntry> {
    catalog()
        .into_iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown catalog id {id:?}")))
}

/// Fixture file name of a catalog chart under `data/v1/`.
pub fn fixture_name(id: &str) -> String {
    format!("{id}.json")
}

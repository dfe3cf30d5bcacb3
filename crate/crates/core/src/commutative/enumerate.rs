use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hopf::HopfPresentation;
use crate::linalg::{Field, Scalar, SparseTensor};
use crate::twist::{check_twist, gauge_transform, GaugeElement};

/// `2^16`: every tensor square of a dimension-2 algebra over `F_2`.
pub const DEFAULT_BUDGET: u128 = 1 << 16;

/// All twists of a small Hopf algebra, partitioned into gauge orbits.
#[derive(Clone, Debug)]
pub struct TwistEnumeration {
    pub candidates: u128,
    pub twists: Vec<SparseTensor>,
    /// Orbit id of each twist, numbered by first appearance.
    pub orbit: Vec<usize>,
    pub orbit_count: usize,
    pub gauge_count: usize,
}

impl TwistEnumeration {
    pub fn orbit_of(&self, j: &SparseTensor) -> Option<usize> {
        self.twists.iter().position(|t| t == j).map(|i| self.orbit[i])
    }
}

fn prime(h: &HopfPresentation) -> Result<u64> {
    match h.field() {
        Field::Fp(p) => Ok(p as u64),
        Field::Q => Err(Error::Precondition("exhaustive enumeration needs a prime field".into())),
    }
}

fn candidate_count(p: u64, n: usize) -> u128 {
    let mut c: u128 = 1;
    for _ in 0..n {
        c = c.saturating_mul(p as u128);
    }
    c
}

fn digits(field: Field, p: u64, mut k: u128, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| {
            let d = (k % p as u128) as i64;
            k /= p as u128;
            field.from_i64(d)
        })
        .collect()
}

/// Every `u` with `ε(u) = 1` that is invertible.
pub fn gauge_elements(h: &HopfPresentation) -> Result<Vec<GaugeElement>> {
    let p = prime(h)?;
    let d = h.dim();
    let field = h.field();
    let total = candidate_count(p, d);
    let out = (0..total)
        .into_par_iter()
        .filter_map(|k| {
            let v = digits(field, p, k, d);
            if !h.coalgebra().counit_of(&v).is_one() {
                return None;
            }
            GaugeElement::new(h, SparseTensor::from_vector(field, &v)).ok()
        })
        .collect();
    Ok(out)
}

fn counit_normalized(h: &HopfPresentation, j: &[Scalar]) -> bool {
    let d = h.dim();
    let eps = h.coalgebra().counit();
    let unit = h.algebra().unit();
    let zero = h.field().zero();
    (0..d).all(|b| {
        let left = (0..d).fold(zero, |acc, a| acc + eps[a] * j[a * d + b]);
        let right = (0..d).fold(zero, |acc, a| acc + eps[a] * j[b * d + a]);
        left == unit[b] && right == unit[b]
    })
}

/// Scans all `p^(dim²)` elements of `H⊗H`, keeps the twists and groups
/// them into orbits under `J ↦ (u⊗u)·J·Δ(u)⁻¹`.
pub fn enumerate_twists(h: &HopfPresentation, budget: u128) -> Result<TwistEnumeration> {
    let p = prime(h)?;
    let d = h.dim();
    let n = d * d;
    let field = h.field();
    let candidates = candidate_count(p, n);
    if candidates > budget {
        return Err(Error::BudgetExceeded { required: candidates, budget });
    }
    let twists: Vec<SparseTensor> = (0..candidates)
        .into_par_iter()
        .filter_map(|k| {
            let v = digits(field, p, k, n);
            if !counit_normalized(h, &v) {
                return None;
            }
            let j = SparseTensor::from_dense(field, 2, d, &v);
            check_twist(h, &j).passed().then_some(j)
        })
        .collect();

    let gauges = gauge_elements(h)?;
    let index: HashMap<Vec<Scalar>, usize> = twists.iter().enumerate().map(|(i, t)| (t.to_dense(), i)).collect();
    let edges: Vec<Vec<usize>> = twists
        .par_iter()
        .map(|j| {
            gauges
                .iter()
                .map(|u| {
                    let moved = gauge_transform(h, j, u)?;
                    index.get(&moved.to_dense()).copied().ok_or_else(|| {
                        Error::Consistency("a gauge transform of a twist is missing from the enumeration".into())
                    })
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;

    let mut uf = UnionFind::new(twists.len());
    for (i, targets) in edges.iter().enumerate() {
        for &t in targets {
            uf.union(i, t);
        }
    }
    let mut ids: HashMap<usize, usize> = HashMap::new();
    let orbit: Vec<usize> = (0..twists.len())
        .map(|i| {
            let root = uf.find(i);
            let next = ids.len();
            *ids.entry(root).or_insert(next)
        })
        .collect();
    Ok(TwistEnumeration { candidates, orbit_count: ids.len(), twists, orbit, gauge_count: gauges.len() })
}

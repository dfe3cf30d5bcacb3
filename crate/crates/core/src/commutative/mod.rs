//! Finite commutative group schemes as Hopf presentations.
//!
//! Constant groups give `Fun(G)` and `k[G]`; `O(μ_n)` is `k[Z/n]` and
//! `O(α_p) = k[x]/(x^p)` with `x` primitive. Twists for `k[A]` are
//! 2-cocycles on `A^D` under `k[A] = O(A^D)`, which here is simply the
//! equality of presentations, so there is no separate cocycle type.

mod enumerate;
mod group;

pub use enumerate::{enumerate_twists, gauge_elements, TwistEnumeration, DEFAULT_BUDGET};
pub(crate) use group::generators;
pub use group::{find_isomorphism, identify_order8, order8_groups, GroupTable, GroupTableJson};

use crate::error::{Error, Result};
use crate::hopf::{dual, tensor_hopf, AlgebraPresentation, CoalgebraPresentation, HopfPresentation};
use crate::linalg::{Field, Matrix, SparseTensor};

/// `Fun(G)` on the delta basis `δ_g`.
pub fn functions(g: &GroupTable, field: Field) -> HopfPresentation {
    let n = g.order();
    let basis: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    let one = field.one();
    let algebra =
        AlgebraPresentation::from_fn(
            field,
            basis.clone(),
            vec![one; n],
            |i, j| {
                if i == j {
                    vec![(i, one)]
                } else {
                    vec![]
                }
            },
        )
        .expect("pointwise product");
    let mut comult = SparseTensor::zero(field, 3, n);
    for a in 0..n {
        for b in 0..n {
            comult.add_at(&[g.mul(a, b), a, b], one);
        }
    }
    let mut counit = vec![field.zero(); n];
    counit[g.identity()] = one;
    let coalgebra = CoalgebraPresentation::new(field, basis, comult, counit).expect("shape");
    HopfPresentation::new(algebra, coalgebra, inversion(g, field)).expect("shape")
}

/// `k[G]` on the group basis `g0, g1, …`; equal to `dual(functions(g))` up
/// to labels.
pub fn group_algebra(g: &GroupTable, field: Field) -> HopfPresentation {
    let labels = (0..g.order()).map(|i| format!("g{i}")).collect();
    dual(&functions(g, field)).with_basis(labels).expect("relabel")
}

/// `(Fun(G), k[G])`.
pub fn constant_hopf(g: &GroupTable, field: Field) -> (HopfPresentation, HopfPresentation) {
    (functions(g, field), group_algebra(g, field))
}

fn inversion(g: &GroupTable, field: Field) -> Matrix {
    let n = g.order();
    let mut s = Matrix::zeros(field, n, n);
    for a in 0..n {
        s[(g.inv(a), a)] = field.one();
    }
    s
}

/// `O(μ_n) = k[Z/n]`, basis `g^i`.
pub fn mu_n(n: usize, field: Field) -> HopfPresentation {
    let labels = (0..n).map(|i| format!("g^{i}")).collect();
    group_algebra(&GroupTable::cyclic(n), field).with_basis(labels).expect("relabel")
}

/// `k[μ_n] = O(μ_n)^* = Fun(Z/n)`.
pub fn mu_n_group_algebra(n: usize, field: Field) -> HopfPresentation {
    functions(&GroupTable::cyclic(n), field)
}

/// `O(α_p) = k[x]/(x^p)` with `Δx = x⊗1 + 1⊗x`, basis `x^i`.
pub fn alpha_p(field: Field) -> Result<HopfPresentation> {
    let p = match field {
        Field::Fp(p) => p as usize,
        Field::Q => return Err(Error::Precondition("alpha_p needs positive characteristic".into())),
    };
    let basis: Vec<String> = (0..p).map(|i| format!("x^{i}")).collect();
    let mut unit = vec![field.zero(); p];
    unit[0] = field.one();
    let algebra = AlgebraPresentation::from_fn(field, basis.clone(), unit.clone(), |i, j| {
        if i + j < p {
            vec![(i + j, field.one())]
        } else {
            vec![]
        }
    })?;
    let mut comult = SparseTensor::zero(field, 3, p);
    for i in 0..p {
        let mut binom = field.one();
        for c in 0..=i {
            comult.add_at(&[i, c, i - c], binom);
            if c == i {
                break;
            }
            binom = binom * field.from_i64((i - c) as i64) * field.from_i64(c as i64 + 1).inv().expect("c < p");
        }
    }
    let coalgebra = CoalgebraPresentation::new(field, basis, comult, unit)?;
    let mut s = Matrix::zeros(field, p, p);
    for i in 0..p {
        s[(i, i)] = field.from_i64(if i % 2 == 0 { 1 } else { -1 });
    }
    HopfPresentation::new(algebra, coalgebra, s)
}

/// The isomorphism `α_p → dual(α_p)`, `x^i ↦ i!·(x^i)*`.
pub fn alpha_p_self_duality(field: Field) -> Result<Matrix> {
    let h = alpha_p(field)?;
    let p = h.dim();
    let mut f = Matrix::zeros(field, p, p);
    let mut fact = field.one();
    for i in 0..p {
        if i > 0 {
            fact *= field.from_i64(i as i64);
        }
        f[(i, i)] = fact;
    }
    Ok(f)
}

/// A commutative and cocommutative Hopf algebra `O(A)`; its Cartier dual
/// `O(A^D) = k[A]` is [`CommutativePair::cartier_dual`].
#[derive(Clone, Debug)]
pub struct CommutativePair {
    h: HopfPresentation,
    tag: String,
}

impl CommutativePair {
    pub fn new(h: HopfPresentation, tag: impl Into<String>) -> Result<Self> {
        if !h.is_commutative() {
            return Err(Error::Precondition("O(A) must be commutative".into()));
        }
        if !h.is_cocommutative() {
            return Err(Error::Precondition("A must be commutative, so O(A) cocommutative".into()));
        }
        Ok(CommutativePair { h, tag: tag.into() })
    }

    /// `O(A)` for a constant abelian group `A`.
    pub fn constant(g: &GroupTable, field: Field) -> Result<Self> {
        let tag = g.name().unwrap_or("A").to_string();
        Self::new(functions(g, field), tag)
    }

    pub fn hopf(&self) -> &HopfPresentation {
        &self.h
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn cartier_dual(&self) -> CommutativePair {
        let tag = match self.tag.strip_suffix("^D") {
            Some(t) => t.to_string(),
            None => format!("{}^D", self.tag),
        };
        CommutativePair { h: dual(&self.h), tag }
    }
}

/// `O(A×A^D) = O(A)⊗k[A]` with `ψ = Σ (f_i⊗1)⊗(1⊗a_i)` for dual bases
/// `f_i` of `O(A)` and `a_i` of `k[A]`.
pub fn heisenberg_twist(a: &CommutativePair) -> Result<(HopfPresentation, SparseTensor)> {
    let h = a.hopf();
    let hd = dual(h);
    let parent = tensor_hopf(h, &hd)?;
    let field = h.field();
    let d = h.dim();
    let one_h = h.algebra().unit();
    let one_hd = hd.algebra().unit();
    let mut psi = SparseTensor::zero(field, 2, d * d);
    for i in 0..d {
        for b in 0..d {
            if one_hd[b].is_zero() {
                continue;
            }
            for a_ in 0..d {
                if one_h[a_].is_zero() {
                    continue;
                }
                psi.add_at(&[i * d + b, a_ * d + i], one_hd[b] * one_h[a_]);
            }
        }
    }
    Ok((parent, psi))
}

/// Whether `dual(dual(h))` reproduces `h` table for table.
pub fn is_biduality_exact(h: &HopfPresentation) -> bool {
    dual(&dual(h)) == *h
}

#[cfg(test)]
mod tests;

//! Named worked examples: the twisted enveloping algebras, the Witt
//! embeddings, the Frobenius parabolic and the Hopf catalog.

use crate::commutative::{alpha_p, functions, group_algebra, mu_n, GroupTable};
use crate::error::{Error, Result};
use crate::hopf::{AlgebraPresentation, HopfPresentation};
use crate::linalg::{Field, Matrix, SparseTensor};
use crate::plie::{
    catalog, enveloping, gl3_frobenius_functional, pbw_inclusion, reduced_enveloping, LinearFunctional,
    PLiePresentation,
};
use crate::twist::{exp_twist, falling_factorial_twist, map_tensor};

/// The basis vector with the given label, as an arity-1 tensor.
pub fn basis_element(h: &HopfPresentation, label: &str) -> Result<SparseTensor> {
    let i = h.index_of(label).ok_or_else(|| Error::Input(format!("no basis element {label:?}")))?;
    Ok(SparseTensor::basis(h.field(), h.dim(), &[i], h.field().one()))
}

/// A Hopf algebra with a twist on it.
#[derive(Clone, Debug)]
pub struct TwistedExample {
    pub parent: HopfPresentation,
    pub twist: SparseTensor,
}

/// `exp(h⊗x)` on `u(𝔞)`, `𝔞` abelian with `h^[p] = x^[p] = 0`.
pub fn abelianres(p: u32) -> Result<TwistedExample> {
    let parent = enveloping(&catalog("abelian2", p)?)?;
    let twist = exp_twist(&parent, &basis_element(&parent, "h^1")?, &basis_element(&parent, "x^1")?)?;
    Ok(TwistedExample { parent, twist })
}

/// The falling-factorial twist on `u(𝔤)`, `[x, y] = y`.
pub fn two_dim(p: u32) -> Result<TwistedExample> {
    let parent = enveloping(&catalog("nonabelian2", p)?)?;
    let twist = falling_factorial_twist(&parent, &basis_element(&parent, "x^1")?, &basis_element(&parent, "y^1")?)?;
    Ok(TwistedExample { parent, twist })
}

#[derive(Clone, Debug)]
pub struct WittExample {
    /// `J(i)` on `u(⟨i⁻¹x₀, i·x_i⟩)`.
    pub sub: TwistedExample,
    /// The same twist pushed into `u(𝔴)`.
    pub full: TwistedExample,
    pub inclusion: Matrix,
}

/// `J(i)` for `x = i⁻¹x₀`, `y = i·x_i` in the Witt algebra.
pub fn witt(p: u32, i: u32) -> Result<WittExample> {
    if i == 0 || i >= p {
        return Err(Error::Input(format!("witt twist index must lie in 1..{p}")));
    }
    let w = catalog("witt", p)?;
    let sub_l = catalog("nonabelian2", p)?;
    let f = w.field();
    let fi = f.from_i64(i as i64);
    let mut x = vec![f.zero(); w.dim()];
    x[0] = fi.inv().ok_or(Error::NotInvertible)?;
    let mut y = vec![f.zero(); w.dim()];
    y[i as usize] = fi;
    let inclusion = pbw_inclusion(&sub_l, &w, &[x, y])?;
    let sub = two_dim(p)?;
    let parent = enveloping(&w)?;
    let twist = map_tensor(&inclusion, &sub.twist)?;
    Ok(WittExample { sub, full: TwistedExample { parent, twist }, inclusion })
}

#[derive(Clone, Debug)]
pub struct FrobeniusExample {
    pub lie: PLiePresentation,
    pub xi: LinearFunctional,
    pub reduced: AlgebraPresentation,
}

/// `u_ξ` of the parabolic in `gl₃` with `ξ(E12) = ξ(E23) = 1`.
pub fn frobenius_gl3(p: u32) -> Result<FrobeniusExample> {
    let lie = catalog("gl3_parabolic", p)?;
    let xi = gl3_frobenius_functional(p)?;
    let reduced = reduced_enveloping(&lie, &xi)?;
    Ok(FrobeniusExample { lie, xi, reduced })
}

/// Every catalog Hopf algebra with a short name: `Fun(Z/n)` and `k[Z/n]`
/// for `n ≤ 6` over `F_2`, `F_3`, `Q`; `O(μ_p)` and `α_p` for
/// `p ∈ {2, 3, 5}`; the enveloping algebras of `abelian2`, `nonabelian2`
/// and `torus(2)` for the same primes; `u(𝔴)` at 3 and the parabolic at 2.
pub fn hopf_catalog() -> Result<Vec<(String, HopfPresentation)>> {
    let mut out = Vec::new();
    for field in [Field::Fp(2), Field::Fp(3), Field::Q] {
        for n in 1..=6 {
            let g = GroupTable::cyclic(n);
            out.push((format!("Fun(Z/{n}) over {field}"), functions(&g, field)));
            out.push((format!("k[Z/{n}] over {field}"), group_algebra(&g, field)));
        }
    }
    for p in [2u32, 3, 5] {
        let f = Field::Fp(p);
        out.push((format!("O(mu_{p}) over {f}"), mu_n(p as usize, f)));
        out.push((format!("alpha_{p}"), alpha_p(f)?));
        for name in ["abelian2", "nonabelian2", "torus(2)"] {
            out.push((format!("u({name}) at p = {p}"), enveloping(&catalog(name, p)?)?));
        }
    }
    out.push(("u(witt) at p = 3".into(), enveloping(&catalog("witt", 3)?)?));
    out.push(("u(gl3_parabolic) at p = 2".into(), enveloping(&catalog("gl3_parabolic", 2)?)?));
    Ok(out)
}

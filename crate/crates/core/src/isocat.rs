//! Isocategorical deformations of a finite group.
//!
//! Input: a finite group `G`, a normal abelian subgroup `A` and a
//! `G`-invariant nondegenerate alternating bicharacter `R` on the character
//! group `Â`. A bicharacter `J` on `Â` with `J/J₂₁ = R` is a twist for
//! `k[A] ⊂ k[G]`. For each coset representative `g` of `K = G/A` the
//! symmetric cocycle `J^g·J⁻¹` is a coboundary `dz(g) = (z⊗z)·Δ(z)⁻¹`, and
//! `b̃(g,h) = z(gh)·z(g)⁻¹·(g·z(h)·g⁻¹)⁻¹` is an `A`-valued 2-cocycle on `K`.
//! The law `γ₁ * γ₂ = b̃(γ̄₁, γ̄₂)·γ₁γ₂` defines `G_b`, and
//! `γ ↦ z(γ̄)⁻¹·γ` is a Hopf isomorphism `k[G_b] → k[G]^J`.
//!
//! Characters take values in `F_p^×`, so the pipeline needs `p ∤ |A|` and
//! `exp(A) | p − 1`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::commutative::{find_isomorphism, generators, group_algebra, identify_order8, GroupTable, GroupTableJson};
use crate::error::{Error, Result};
use crate::hopf::{check_isomorphism, field_from_json, field_to_json, tensor_to_json, HopfPresentation, TensorJson};
use crate::linalg::{solve_mod, Field, Matrix, Scalar, SparseTensor};
use crate::report::{CheckReport, Witness};
use crate::twist::{apply_twist, check_twist};

/// `A ⊴ G` with left cosets `γA` and a section `K → G`.
#[derive(Clone, Debug)]
pub struct NormalAbelianEmbedding {
    field: Field,
    g: GroupTable,
    a: Vec<usize>,
    in_a: Vec<bool>,
    coset: Vec<usize>,
    section: Vec<usize>,
}

impl NormalAbelianEmbedding {
    /// Cosets are numbered by their smallest element, the identity coset
    /// first; the section picks that smallest element.
    pub fn new(field: Field, g: GroupTable, subgroup: &[usize]) -> Result<Self> {
        let n = g.order();
        if subgroup.is_empty() {
            return Err(Error::Input("the subgroup list is empty".into()));
        }
        if let Some(&bad) = subgroup.iter().find(|&&x| x >= n) {
            return Err(Error::Input(format!("subgroup element {bad} is not in a group of order {n}")));
        }
        let mut a = subgroup.to_vec();
        a.sort_unstable();
        a.dedup();
        let mut in_a = vec![false; n];
        for &x in &a {
            in_a[x] = true;
        }
        let mut coset = vec![usize::MAX; n];
        let mut section = Vec::new();
        let order = std::iter::once(g.identity()).chain((0..n).filter(|&x| x != g.identity()));
        for x in order {
            if coset[x] != usize::MAX {
                continue;
            }
            let c = section.len();
            section.push(x);
            for &y in &a {
                let xy = g.mul(x, y);
                if coset[xy] == usize::MAX {
                    coset[xy] = c;
                }
            }
        }
        Ok(NormalAbelianEmbedding { field, g, a, in_a, coset, section })
    }

    /// Replaces the section; each entry must lie in its coset.
    pub fn with_section(mut self, section: Vec<usize>) -> Result<Self> {
        if section.len() != self.section.len() {
            return Err(Error::Input(format!("a section needs {} representatives", self.section.len())));
        }
        for (c, &x) in section.iter().enumerate() {
            if x >= self.g.order() || self.coset[x] != c {
                return Err(Error::Input(format!("representative {x} is not in coset {c}")));
            }
        }
        if section[0] != self.g.identity() {
            return Err(Error::Input("the identity coset must be represented by the identity".into()));
        }
        self.section = section;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn group(&self) -> &GroupTable {
        &self.g
    }

    /// Sorted elements of `A`.
    pub fn subgroup(&self) -> &[usize] {
        &self.a
    }

    pub fn contains(&self, x: usize) -> bool {
        self.in_a[x]
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.coset[x]
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn coset_count(&self) -> usize {
        self.section.len()
    }

    /// Coset index of the product of two cosets.
    pub fn coset_mul(&self, c1: usize, c2: usize) -> usize {
        self.coset[self.g.mul(self.section[c1], self.section[c2])]
    }

    /// `K = G/A` on coset indices.
    pub fn quotient(&self) -> Result<GroupTable> {
        GroupTable::from_fn(self.coset_count(), |i, j| self.coset_mul(i, j))
    }

    fn position(&self, x: usize) -> usize {
        self.a.binary_search(&x).expect("element of A")
    }

    /// `A` as a group on `0..|A|`, in the order of [`Self::subgroup`].
    fn subgroup_table(&self) -> Result<GroupTable> {
        GroupTable::from_fn(self.a.len(), |i, j| self.position(self.g.mul(self.a[i], self.a[j])))
    }
}

pub fn check_embedding(e: &NormalAbelianEmbedding) -> CheckReport {
    let mut report = CheckReport::new("embedding");
    let g = &e.g;
    let a = &e.a;
    let labels = |xs: &[usize]| xs.iter().map(|x| format!("e{x}")).collect::<Vec<_>>();
    let w =
        |identity: &str, xs: &[usize]| Witness { identity: identity.into(), indices: xs.to_vec(), labels: labels(xs) };

    let closed = a.iter().flat_map(|&x| a.iter().map(move |&y| (x, y))).find(|&(x, y)| !e.in_a[g.mul(x, y)]);
    let outcome = if !e.in_a[g.identity()] {
        Some(w("1 ∈ A", &[g.identity()]))
    } else {
        closed.map(|(x, y)| w("A·A ⊆ A", &[x, y]))
    };
    let subgroup_ok = outcome.is_none();
    report.record("subgroup", outcome);
    if !subgroup_ok {
        return report;
    }
    let noncommuting =
        a.iter().flat_map(|&x| a.iter().map(move |&y| (x, y))).find(|&(x, y)| g.mul(x, y) != g.mul(y, x));
    report.record("abelian", noncommuting.map(|(x, y)| w("xy = yx", &[x, y])));
    let abnormal =
        (0..g.order()).flat_map(|x| a.iter().map(move |&y| (x, y))).find(|&(x, y)| !e.in_a[g.conjugate(x, y)]);
    report.record("normal", abnormal.map(|(x, y)| w("g a g⁻¹ ∈ A", &[x, y])));

    let k = e.coset_count();
    let mut sizes = vec![0usize; k];
    for &c in &e.coset {
        sizes[c] += 1;
    }
    let bad_size = sizes.iter().position(|&s| s != a.len());
    let bad_product = (0..g.order())
        .flat_map(|x| (0..g.order()).map(move |y| (x, y)))
        .find(|&(x, y)| e.coset[g.mul(x, y)] != e.coset_mul(e.coset[x], e.coset[y]));
    let outcome = match (bad_size, bad_product) {
        (Some(c), _) => Some(w("|γA| = |A|", &[e.section[c]])),
        (None, Some((x, y))) => Some(w("γ₁A·γ₂A = γ₁γ₂A", &[x, y])),
        (None, None) => None,
    };
    report.record("coset table", outcome);
    let section_ok = e.section[0] == g.identity() && e.section.iter().enumerate().all(|(c, &x)| e.coset[x] == c);
    report.record("section", (!section_ok).then(|| w("s(γA) ∈ γA, s(A) = 1", &e.section)));
    report
}

/// Characters `A → F_p^×`, sorted by their value vectors on
/// [`NormalAbelianEmbedding::subgroup`]; the trivial character is first.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterGroup {
    values: Vec<Vec<Scalar>>,
    table: GroupTable,
    index: HashMap<Vec<Scalar>, usize>,
}

impl CharacterGroup {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `χ(a)` for the `k`-th element of `A`.
    pub fn value(&self, chi: usize, k: usize) -> Scalar {
        self.values[chi][k]
    }

    pub fn values(&self) -> &[Vec<Scalar>] {
        &self.values
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table.mul(x, y)
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    /// `(g·χ)(a) = χ(g⁻¹ a g)`.
    pub fn act(&self, e: &NormalAbelianEmbedding, g: usize, chi: usize) -> usize {
        let gi = e.g.inv(g);
        let v: Vec<Scalar> = e.a.iter().map(|&a| self.values[chi][e.position(e.g.conjugate(gi, a))]).collect();
        self.index[&v]
    }
}

fn roots_of_unity(field: Field, m: usize) -> Vec<Scalar> {
    field.elements().unwrap_or_default().into_iter().filter(|x| !x.is_zero() && x.pow(m as u64).is_one()).collect()
}

pub fn characters(e: &NormalAbelianEmbedding) -> Result<CharacterGroup> {
    let Field::Fp(p) = e.field else {
        return Err(Error::Unsupported("characters are computed over F_p only".into()));
    };
    let at = e.subgroup_table()?;
    let n = at.order();
    let exp = at.exponent();
    if n % p as usize == 0 || !(p as usize - 1).is_multiple_of(exp) {
        return Err(Error::Unsupported(format!(
            "F_{p} lacks the roots of unity of order {exp} needed for the characters of A"
        )));
    }
    let gens = generators(&at);
    let choices: Vec<Vec<Scalar>> = gens.iter().map(|&s| roots_of_unity(e.field, at.element_order(s))).collect();
    let mut values = Vec::new();
    let mut pick = vec![0usize; gens.len()];
    loop {
        let images: Vec<Scalar> = pick.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        if let Some(v) = extend_character(&at, &gens, &images, e.field) {
            values.push(v);
        }
        let mut k = 0;
        while k < pick.len() {
            pick[k] += 1;
            if pick[k] < choices[k].len() {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
        if k == pick.len() {
            break;
        }
    }
    values.sort_by_key(|v| v.iter().map(|s| s.residue().unwrap_or(0)).collect::<Vec<_>>());
    values.dedup();
    if values.len() != n {
        return Err(Error::Consistency(format!("found {} characters for a group of order {n}", values.len())));
    }
    let index: HashMap<Vec<Scalar>, usize> = values.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    let table = GroupTable::from_fn(n, |x, y| {
        let v: Vec<Scalar> = values[x].iter().zip(&values[y]).map(|(a, b)| *a * *b).collect();
        index[&v]
    })?;
    Ok(CharacterGroup { values, table, index })
}

fn extend_character(at: &GroupTable, gens: &[usize], images: &[Scalar], field: Field) -> Option<Vec<Scalar>> {
    let n = at.order();
    let mut f: Vec<Option<Scalar>> = vec![None; n];
    f[at.identity()] = Some(field.one());
    let mut queue = vec![at.identity()];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (&s, &t) in gens.iter().zip(images) {
            let y = at.mul(x, s);
            let fy = f[x].expect("visited") * t;
            match f[y] {
                None => {
                    f[y] = Some(fy);
                    queue.push(y);
                }
                Some(old) if old != fy => return None,
                Some(_) => {}
            }
        }
        i += 1;
    }
    let f: Vec<Scalar> = f.into_iter().collect::<Option<_>>()?;
    let hom = (0..n).all(|a| (0..n).all(|b| f[at.mul(a, b)] == f[a] * f[b]));
    hom.then_some(f)
}

/// A table `R(χ, ψ)` on character indices.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewForm {
    pub values: Vec<Vec<Scalar>>,
}

impl SkewForm {
    pub fn from_i64(field: Field, table: &[Vec<i64>]) -> Self {
        SkewForm { values: table.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect() }
    }

    pub fn to_i64(&self) -> Vec<Vec<i64>> {
        self.values.iter().map(|r| r.iter().map(|x| x.to_fraction().0).collect()).collect()
    }

    pub fn trivial(field: Field, n: usize) -> Self {
        SkewForm { values: vec![vec![field.one(); n]; n] }
    }
}

/// A basis `(χ_i, n_i)` of an abelian group: every element is uniquely
/// `Π χ_i^{e_i}` with `0 ≤ e_i < n_i`. Found by exhaustive backtracking.
fn abelian_basis(t: &GroupTable) -> Vec<(usize, usize)> {
    fn span(t: &GroupTable, basis: &[(usize, usize)]) -> Vec<usize> {
        let mut out = vec![t.identity()];
        for &(x, n) in basis {
            let mut next = Vec::with_capacity(out.len() * n);
            for k in 0..n {
                let xk = t.pow(x, k);
                next.extend(out.iter().map(|&y| t.mul(y, xk)));
            }
            out = next;
        }
        out
    }
    fn go(t: &GroupTable, basis: &mut Vec<(usize, usize)>, cands: &[usize]) -> bool {
        let s = span(t, basis);
        let mut uniq = s.clone();
        uniq.sort_unstable();
        uniq.dedup();
        if uniq.len() != s.len() {
            return false;
        }
        if s.len() == t.order() {
            return true;
        }
        for &x in cands {
            if uniq.binary_search(&x).is_ok() {
                continue;
            }
            basis.push((x, t.element_order(x)));
            if go(t, basis, cands) {
                return true;
            }
            basis.pop();
        }
        false
    }
    let mut cands: Vec<usize> = (0..t.order()).filter(|&x| x != t.identity()).collect();
    cands.sort_by_key(|&x| (std::cmp::Reverse(t.element_order(x)), x));
    let mut basis = Vec::new();
    let found = go(t, &mut basis, &cands);
    debug_assert!(found);
    basis
}

fn coordinates(t: &GroupTable, basis: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut coords = vec![Vec::new(); t.order()];
    let total: usize = basis.iter().map(|b| b.1).product();
    for mut k in 0..total {
        let mut x = t.identity();
        let mut e = Vec::with_capacity(basis.len());
        for &(g, n) in basis {
            let ei = k % n;
            k /= n;
            x = t.mul(x, t.pow(g, ei));
            e.push(ei);
        }
        coords[x] = e;
    }
    coords
}

/// The standard symplectic form when `Â ≅ (Z/n)²`:
/// `R(χ, ψ) = ζ^{a₁b₂ − a₂b₁}` in basis coordinates, `ζ` a primitive
/// `n`-th root of unity.
pub fn standard_form(e: &NormalAbelianEmbedding) -> Result<SkewForm> {
    let chars = characters(e)?;
    let basis = abelian_basis(chars.table());
    if basis.len() != 2 || basis[0].1 != basis[1].1 {
        return Err(Error::Unsupported("the standard form needs a character group (Z/n)^2".into()));
    }
    let n = basis[0].1;
    let Field::Fp(p) = e.field else { unreachable!("characters need F_p") };
    let zeta = e.field.primitive_root().expect("prime field").pow(((p - 1) as usize / n) as u64);
    let c = coordinates(chars.table(), &basis);
    let m = chars.len();
    let values = (0..m)
        .map(|x| {
            (0..m)
                .map(|y| {
                    let k = (c[x][0] * c[y][1] + n * n - c[x][1] * c[y][0] % n) % n;
                    zeta.pow(k as u64)
                })
                .collect()
        })
        .collect();
    Ok(SkewForm { values })
}

pub fn check_skew_form(e: &NormalAbelianEmbedding, r: &SkewForm) -> CheckReport {
    let mut report = CheckReport::new("skew form");
    let chars = match characters(e) {
        Ok(c) => c,
        Err(err) => {
            report.fail_with("characters", err.to_string());
            return report;
        }
    };
    let n = chars.len();
    let shape_ok = r.values.len() == n && r.values.iter().all(|row| row.len() == n);
    if !shape_ok {
        report.fail_with("shape", format!("the form must be a {n}×{n} table on the characters of A"));
        return report;
    }
    if r.values.iter().flatten().any(|v| v.is_zero() || v.field() != e.field) {
        report.fail_with("shape", "form values must be nonzero elements of the field");
        return report;
    }
    let cw = |identity: &str, xs: &[usize]| Witness {
        identity: identity.into(),
        indices: xs.to_vec(),
        labels: xs.iter().map(|x| format!("chi{x}")).collect(),
    };
    let rv = |x: usize, y: usize| r.values[x][y];
    let triples = || (0..n).flat_map(move |x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))));
    let bad = triples().find(|&(x, y, z)| {
        rv(chars.mul(x, y), z) != rv(x, z) * rv(y, z) || rv(x, chars.mul(y, z)) != rv(x, y) * rv(x, z)
    });
    report.record("bimultiplicative", bad.map(|(x, y, z)| cw("R(χψ,φ) = R(χ,φ)R(ψ,φ)", &[x, y, z])));
    let bad = (0..n).find(|&x| !rv(x, x).is_one());
    report.record("alternating", bad.map(|x| cw("R(χ,χ) = 1", &[x])));
    let bad = (1..n).find(|&x| (0..n).all(|y| rv(x, y).is_one()));
    report.record("nondegenerate", bad.map(|x| cw("R(χ,·) ≠ 1 for χ ≠ 1", &[x])));
    let bad = e
        .section
        .iter()
        .flat_map(|&g| (0..n).flat_map(move |x| (0..n).map(move |y| (g, x, y))))
        .find(|&(g, x, y)| rv(chars.act(e, g, x), chars.act(e, g, y)) != rv(x, y));
    report.record("equivariant", bad.map(|(g, x, y)| cw("R(g·χ, g·ψ) = R(χ,ψ)", &[g, x, y])));
    report
}

/// The idempotent `e_χ = |A|⁻¹ Σ_a χ(a)⁻¹ a` in `k[G]`.
fn idempotent(e: &NormalAbelianEmbedding, chars: &CharacterGroup, chi: usize) -> Vec<Scalar> {
    let f = e.field;
    let scale = f.from_i64(e.a.len() as i64).inv().expect("p ∤ |A|");
    let mut v = vec![f.zero(); e.g.order()];
    for (k, &a) in e.a.iter().enumerate() {
        v[a] = scale * chars.value(chi, k).inv().expect("root of unity");
    }
    v
}

fn function_to_element(e: &NormalAbelianEmbedding, chars: &CharacterGroup, f: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![e.field.zero(); e.g.order()];
    for (chi, c) in f.iter().enumerate() {
        for (k, v) in idempotent(e, chars, chi).into_iter().enumerate() {
            out[k] += *c * v;
        }
    }
    out
}

fn function_to_tensor(e: &NormalAbelianEmbedding, chars: &CharacterGroup, f: &[Vec<Scalar>]) -> SparseTensor {
    let field = e.field;
    let d = e.g.order();
    let idem: Vec<SparseTensor> =
        (0..chars.len()).map(|x| SparseTensor::from_vector(field, &idempotent(e, chars, x))).collect();
    let mut out = SparseTensor::zero(field, 2, d);
    for (x, row) in f.iter().enumerate() {
        for (y, c) in row.iter().enumerate() {
            let t = idem[x].outer(&idem[y]).expect("same space").scale(*c);
            out = out.add(&t).expect("same space");
        }
    }
    out
}

/// `χ(v)` for every character, `v` supported on `A`.
fn element_to_function(e: &NormalAbelianEmbedding, chars: &CharacterGroup, v: &[Scalar]) -> Result<Vec<Scalar>> {
    let mut out = vec![e.field.zero(); chars.len()];
    for (x, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !e.in_a[x] {
            return Err(Error::Consistency("element is not supported on A".into()));
        }
        let k = e.position(x);
        for (chi, o) in out.iter_mut().enumerate() {
            *o += *c * chars.value(chi, k);
        }
    }
    Ok(out)
}

/// `(χ⊗ψ)(t)` for `t` supported on `A⊗A`.
fn tensor_to_function(
    e: &NormalAbelianEmbedding,
    chars: &CharacterGroup,
    t: &SparseTensor,
) -> Result<Vec<Vec<Scalar>>> {
    let n = chars.len();
    let mut out = vec![vec![e.field.zero(); n]; n];
    for (idx, c) in t.iter() {
        if !e.in_a[idx[0]] || !e.in_a[idx[1]] {
            return Err(Error::Consistency("element is not supported on A⊗A".into()));
        }
        let (ka, kb) = (e.position(idx[0]), e.position(idx[1]));
        for (x, row) in out.iter_mut().enumerate() {
            for (y, v) in row.iter_mut().enumerate() {
                *v += c * chars.value(x, ka) * chars.value(y, kb);
            }
        }
    }
    Ok(out)
}

/// `J = Σ J(χ,ψ) e_χ⊗e_ψ` with `J(χ,ψ) = β(χ,ψ)·Π_{i<j} R(χ_i,χ_j)^{a_i b_j}`
/// in a basis `χ_i` of `Â`, so that `J·J₂₁⁻¹ = R`. The symmetric
/// bicharacter `β` is the first one (trivial first) for which every
/// `J^g·J⁻¹` is a coboundary over the active field; over `F_p` the
/// triangular choice alone can leave a class that only splits after
/// adjoining roots of unity. The result lies in `k[A]⊗k[A] ⊂ k[G]⊗k[G]`.
pub fn twist_from_form(e: &NormalAbelianEmbedding, r: &SkewForm) -> Result<SparseTensor> {
    let chars = characters(e)?;
    let n = chars.len();
    let basis = abelian_basis(chars.table());
    let coords = coordinates(chars.table(), &basis);
    let triangular: Vec<Vec<Scalar>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let mut v = e.field.one();
                    for i in 0..basis.len() {
                        for k in i + 1..basis.len() {
                            let exp = (coords[x][i] * coords[y][k]) as u64;
                            v *= r.values[basis[i].0][basis[k].0].pow(exp);
                        }
                    }
                    v
                })
                .collect()
        })
        .collect();
    let kg = group_algebra(&e.g, e.field);
    let a = kg.algebra();
    let jt = function_to_tensor(e, &chars, &triangular);
    let ratio = a.tensor_mul(&jt, &a.tensor_inverse(&jt.swap21())?)?;
    if ratio != function_to_tensor(e, &chars, &r.values) {
        return Err(Error::Consistency("J·J₂₁⁻¹ differs from R; the form is not an alternating bicharacter".into()));
    }
    for beta in symmetric_bicharacters(e.field, &basis, &coords) {
        let j: Vec<Vec<Scalar>> = triangular
            .iter()
            .zip(&beta)
            .map(|(row, brow)| row.iter().zip(brow).map(|(u, v)| *u * *v).collect())
            .collect();
        let jt = function_to_tensor(e, &chars, &j);
        let j_inv = a.tensor_inverse(&jt)?;
        let solvable = e.section.iter().skip(1).all(|&g| solve_cochain(e, &chars, &kg, &jt, &j_inv, g).is_ok());
        if solvable {
            return Ok(jt);
        }
    }
    Ok(jt)
}

/// Every symmetric bicharacter on `Â`, as tables, the trivial one first.
fn symmetric_bicharacters(field: Field, basis: &[(usize, usize)], coords: &[Vec<usize>]) -> Vec<Vec<Vec<Scalar>>> {
    let r = basis.len();
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (i..r).map(move |k| (i, k))).collect();
    let choices: Vec<Vec<Scalar>> = pairs
        .iter()
        .map(|&(i, k)| {
            let mut roots = roots_of_unity(field, num_integer::gcd(basis[i].1, basis[k].1));
            roots.sort_by_key(|s| (!s.is_one(), s.residue()));
            roots
        })
        .collect();
    let total: usize = choices.iter().map(Vec::len).product();
    let n = coords.len();
    (0..total)
        .map(|mut code| {
            let mut m = vec![vec![field.one(); r]; r];
            for (&(i, k), c) in pairs.iter().zip(&choices) {
                m[i][k] = c[code % c.len()];
                m[k][i] = m[i][k];
                code /= c.len();
            }
            (0..n)
                .map(|x| {
                    (0..n)
                        .map(|y| {
                            let mut v = field.one();
                            for i in 0..r {
                                for k in 0..r {
                                    v *= m[i][k].pow((coords[x][i] * coords[y][k]) as u64);
                                }
                            }
                            v
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// The cochain `z` (one invertible element of `k[A]` per coset, as vectors
/// in `k[G]`) and the cocycle `b̃` (an element of `A` per pair of cosets).
#[derive(Clone, Debug, PartialEq)]
pub struct Tau {
    pub z: Vec<Vec<Scalar>>,
    pub b: Vec<Vec<usize>>,
}

fn conjugate_tensor(kg: &HopfPresentation, g: &GroupTable, x: usize, t: &SparseTensor) -> Result<SparseTensor> {
    let f = kg.field();
    let d = g.order();
    let gg = SparseTensor::basis(f, d, &[x, x], f.one());
    let gi = SparseTensor::basis(f, d, &[g.inv(x), g.inv(x)], f.one());
    let a = kg.algebra();
    a.tensor_mul(&a.tensor_mul(&gg, t)?, &gi)
}

fn discrete_log(field: Field) -> HashMap<Scalar, i64> {
    let w = field.primitive_root().expect("prime field");
    let Field::Fp(p) = field else { unreachable!() };
    (0..p as i64 - 1).map(|k| (w.pow(k as u64), k)).collect()
}

/// `z` with `(z⊗z)·Δ(z)⁻¹ = J^g·J⁻¹`, found as a linear system on discrete
/// logarithms in the idempotent basis of `k[A]`.
fn solve_cochain(
    e: &NormalAbelianEmbedding,
    chars: &CharacterGroup,
    kg: &HopfPresentation,
    j: &SparseTensor,
    j_inv: &SparseTensor,
    g: usize,
) -> Result<Vec<Scalar>> {
    let n = chars.len();
    let field = e.field;
    let Field::Fp(p) = field else { unreachable!("characters need F_p") };
    let alg = kg.algebra();
    let c = e.coset[g];
    let d = alg.tensor_mul(&conjugate_tensor(kg, &e.g, g, j)?, j_inv)?;
    let df = tensor_to_function(e, chars, &d)?;
    if (0..n).any(|x| (0..x).any(|y| df[x][y] != df[y][x])) {
        return Err(Error::Consistency(format!("J^g·J⁻¹ is not symmetric for coset {c}")));
    }
    let dlog = discrete_log(field);
    let w = field.primitive_root().expect("prime field");
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let log = *dlog
                .get(&df[x][y])
                .ok_or_else(|| Error::Consistency(format!("J^g·J⁻¹ vanishes somewhere for coset {c}")))?;
            let mut row = vec![0i64; n];
            row[x] += 1;
            row[y] += 1;
            row[chars.mul(x, y)] -= 1;
            rows.push(row);
            rhs.push(log);
        }
    }
    let sol = solve_mod(&rows, &rhs, p as i64 - 1)
        .ok_or_else(|| Error::Consistency(format!("dz(g) = J^g·J⁻¹ has no solution over the field for coset {c}")))?;
    let zf: Vec<Scalar> = sol.iter().map(|&k| w.pow(k.rem_euclid(p as i64 - 1) as u64)).collect();
    let zc = function_to_element(e, chars, &zf);
    let zt = SparseTensor::from_vector(field, &zc);
    let dz = alg.tensor_mul(&zt.outer(&zt)?, &kg.coalgebra().coproduct_at(&alg.tensor_inverse(&zt)?, 0)?)?;
    if dz != d {
        return Err(Error::Consistency(format!("the solved cochain does not reproduce J^g·J⁻¹ for coset {c}")));
    }
    Ok(zc)
}

/// Solves `dz(g) = J^g·J⁻¹` for every coset representative and assembles `b̃`.
pub fn tau(e: &NormalAbelianEmbedding, j: &SparseTensor) -> Result<Tau> {
    let chars = characters(e)?;
    let kg = group_algebra(&e.g, e.field);
    let alg = kg.algebra();
    let j_inv = alg.tensor_inverse(j)?;
    let mut z = Vec::with_capacity(e.coset_count());
    for (c, &g) in e.section.iter().enumerate() {
        if c == 0 {
            z.push(alg.unit().to_vec());
        } else {
            z.push(solve_cochain(e, &chars, &kg, j, &j_inv, g)?);
        }
    }
    let b = cocycle_from_cochain(e, &kg, &z)?;
    Ok(Tau { z, b })
}

impl Tau {
    /// `z'(c) = z(c)·s(c)` for `s(c) ∈ A`, which moves `b̃` by a coboundary.
    pub fn shifted(&self, e: &NormalAbelianEmbedding, shift: &[usize]) -> Result<Tau> {
        if shift.len() != e.coset_count() || shift.iter().any(|&x| x >= e.g.order() || !e.in_a[x]) {
            return Err(Error::Input("a shift assigns an element of A to every coset".into()));
        }
        if shift[0] != e.g.identity() {
            return Err(Error::Input("the shift must be trivial on the identity coset".into()));
        }
        let kg = group_algebra(&e.g, e.field);
        let alg = kg.algebra();
        let z: Vec<Vec<Scalar>> = self.z.iter().zip(shift).map(|(zc, &s)| alg.mul(zc, &alg.basis_vec(s))).collect();
        let b = cocycle_from_cochain(e, &kg, &z)?;
        Ok(Tau { z, b })
    }
}

fn cocycle_from_cochain(
    e: &NormalAbelianEmbedding,
    kg: &HopfPresentation,
    z: &[Vec<Scalar>],
) -> Result<Vec<Vec<usize>>> {
    let alg = kg.algebra();
    let g = &e.g;
    let k = e.coset_count();
    let inv = |x: &[Scalar]| alg.inverse(x).ok_or(Error::NotInvertible);
    let mut b = vec![vec![0usize; k]; k];
    for c1 in 0..k {
        for c2 in 0..k {
            let g1 = e.section[c1];
            let c12 = e.coset_mul(c1, c2);
            let zh_g = alg.mul(&alg.mul(&alg.basis_vec(g1), &z[c2]), &alg.basis_vec(g.inv(g1)));
            let v = alg.mul(&alg.mul(&z[c12], &inv(&z[c1])?), &inv(&zh_g)?);
            let support: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            match support.as_slice() {
                [a] if v[*a].is_one() && e.in_a[*a] => b[c1][c2] = *a,
                _ => {
                    return Err(Error::Consistency(format!("b̃({c1},{c2}) is not a group element of A")));
                }
            }
        }
    }
    for c1 in 0..k {
        for c2 in 0..k {
            for c3 in 0..k {
                let lhs = g.mul(b[e.coset_mul(c1, c2)][c3], b[c1][c2]);
                let rhs = g.mul(b[c1][e.coset_mul(c2, c3)], g.conjugate(e.section[c1], b[c2][c3]));
                if lhs != rhs {
                    return Err(Error::Consistency(format!("b̃ fails the cocycle identity at ({c1},{c2},{c3})")));
                }
            }
        }
    }
    Ok(b)
}

/// `γ₁ * γ₂ = b̃(γ̄₁, γ̄₂)·γ₁γ₂`.
pub fn build_g_b(e: &NormalAbelianEmbedding, b: &[Vec<usize>]) -> Result<GroupTable> {
    let g = &e.g;
    GroupTable::from_fn(g.order(), |x, y| g.mul(b[e.coset[x]][e.coset[y]], g.mul(x, y)))
        .map(|t| t.named("G_b"))
        .map_err(|err| Error::Consistency(format!("G_b is not a group: {err}")))
}

/// Column `γ` is `z(γ̄)⁻¹·γ` in `k[G]`.
pub fn phi_matrix(e: &NormalAbelianEmbedding, t: &Tau) -> Result<Matrix> {
    let kg = group_algebra(&e.g, e.field);
    let alg = kg.algebra();
    let d = e.g.order();
    let mut m = Matrix::zeros(e.field, d, d);
    for x in 0..d {
        let zi = alg.inverse(&t.z[e.coset[x]]).ok_or(Error::NotInvertible)?;
        let col = alg.mul(&zi, &alg.basis_vec(x));
        for (i, v) in col.into_iter().enumerate() {
            m[(i, x)] = v;
        }
    }
    Ok(m)
}

fn prefixed(prefix: &str, r: CheckReport) -> CheckReport {
    let mut out = CheckReport::new(r.subject.clone());
    out.checks = r
        .checks
        .into_iter()
        .map(|mut c| {
            c.name = format!("{prefix} {}", c.name);
            c
        })
        .collect();
    out
}

/// Checks that `phi: k[G_b] → k[G]^J` (columns indexed by group elements)
/// satisfies `φ(γ₁)φ(γ₂) = b̃(γ̄₁,γ̄₂)·φ(γ₁γ₂)` and is a Hopf isomorphism,
/// and that its inverse is a Hopf isomorphism `k[G]^J → k[G_b]`.
pub fn verify_phi(
    e: &NormalAbelianEmbedding,
    j: &SparseTensor,
    b: &[Vec<usize>],
    phi: &Matrix,
    g_b: &GroupTable,
) -> CheckReport {
    let mut report = CheckReport::new("isocategorical");
    let g = &e.g;
    if g_b.order() != g.order() {
        report.fail_with("carrier", format!("|G_b| = {} but |G| = {}", g_b.order(), g.order()));
        return report;
    }
    report.pass_with("carrier", format!("order {}", g.order()));
    let kg = group_algebra(g, e.field);
    let alg = kg.algebra();
    let d = g.order();
    let col = |x: usize| phi.column(x);
    let bad = (0..d).flat_map(|x| (0..d).map(move |y| (x, y))).find(|&(x, y)| {
        let lhs = alg.mul(&col(x), &col(y));
        let rhs = alg.mul(&alg.basis_vec(b[e.coset[x]][e.coset[y]]), &col(g.mul(x, y)));
        lhs != rhs
    });
    report.record(
        "phi law",
        bad.map(|(x, y)| Witness {
            identity: "φ(γ₁)φ(γ₂) = b̃(γ̄₁,γ̄₂)φ(γ₁γ₂)".into(),
            indices: vec![x, y],
            labels: vec![format!("g{x}"), format!("g{y}")],
        }),
    );
    let hj = match apply_twist(&kg, j) {
        Ok(h) => h,
        Err(err) => {
            report.fail_with("k[G]^J", err.to_string());
            return report;
        }
    };
    let kgb = group_algebra(g_b, e.field);
    report.extend(prefixed("phi", check_isomorphism(phi, &kgb, &hj)));
    match phi.inverse() {
        Some(inv) => report.extend(prefixed("phi⁻¹", check_isomorphism(&inv, &hj, &kgb))),
        None => report.fail_with("phi⁻¹ bijective", "phi is singular"),
    }
    report
}

pub fn verify_isocategorical(e: &NormalAbelianEmbedding, j: &SparseTensor, t: &Tau, g_b: &GroupTable) -> CheckReport {
    match phi_matrix(e, t) {
        Ok(phi) => verify_phi(e, j, &t.b, &phi, g_b),
        Err(err) => {
            let mut r = CheckReport::new("isocategorical");
            r.fail_with("phi", err.to_string());
            r
        }
    }
}

/// A form given as a table of residues on character indices, or
/// `"standard"` for [`standard_form`].
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FormSpec {
    Table(Vec<Vec<i64>>),
    Named(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineJson {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub group: GroupTableJson,
    pub subgroup: Vec<usize>,
    pub form: FormSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Vec<usize>>,
    /// An element of `A` per coset; reruns the construction with `z·shift`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<usize>>,
}

pub const STAGES: [&str; 6] = ["embedding", "skew form", "twist", "tau", "G_b", "isocategorical"];

#[derive(Clone, Debug, Serialize)]
pub struct StageReport {
    pub stage: String,
    pub report: CheckReport,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PipelineReport {
    pub stages: Vec<StageReport>,
    /// Index into [`STAGES`] of the first failing stage.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_stage: Option<usize>,
    pub characters: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twist: Option<TensorJson>,
    pub z: Vec<Vec<i64>>,
    pub b: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_b: Option<GroupTableJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g_b_type: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shifted_isomorphic: Option<bool>,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.failed_stage.is_none()
    }

    fn stage(&mut self, index: usize, report: CheckReport) -> bool {
        let ok = report.passed();
        self.stages.push(StageReport { stage: STAGES[index].into(), report });
        if !ok {
            self.failed_stage = Some(index);
        }
        ok
    }

    fn fail(&mut self, index: usize, err: Error) {
        let mut r = CheckReport::new(STAGES[index]);
        r.fail_with(STAGES[index], err.to_string());
        self.stage(index, r);
    }
}

fn ints(v: &[Scalar]) -> Vec<i64> {
    v.iter().map(|s| s.to_fraction().0).collect()
}

impl PipelineJson {
    pub fn embedding(&self) -> Result<NormalAbelianEmbedding> {
        let field = field_from_json(&self.field, self.p)?;
        let g = GroupTable::from_json(&self.group)?;
        let e = NormalAbelianEmbedding::new(field, g, &self.subgroup)?;
        match &self.section {
            Some(s) => e.with_section(s.clone()),
            None => Ok(e),
        }
    }

    pub fn form(&self, e: &NormalAbelianEmbedding) -> Result<SkewForm> {
        match &self.form {
            FormSpec::Table(t) => Ok(SkewForm::from_i64(e.field(), t)),
            FormSpec::Named(n) if n == "standard" => standard_form(e),
            FormSpec::Named(n) => Err(Error::Input(format!("unknown form {n:?}; use a table or \"standard\""))),
        }
    }

    pub fn new(e: &NormalAbelianEmbedding, form: FormSpec) -> Self {
        let (field, p) = field_to_json(e.field());
        PipelineJson {
            field,
            p,
            group: e.group().to_json(),
            subgroup: e.subgroup().to_vec(),
            form,
            section: None,
            shift: None,
        }
    }
}

/// Runs every stage in order and stops at the first failure. Malformed
/// input is an `Err`; stage failures are recorded in the report.
pub fn run_pipeline(input: &PipelineJson) -> Result<PipelineReport> {
    let e = input.embedding()?;
    let mut out = PipelineReport::default();
    if !out.stage(0, check_embedding(&e)) {
        return Ok(out);
    }
    let form = match input.form(&e) {
        Ok(f) => f,
        Err(Error::Input(m)) => return Err(Error::Input(m)),
        Err(err) => {
            out.fail(1, err);
            return Ok(out);
        }
    };
    if let Ok(chars) = characters(&e) {
        out.characters = chars.values().iter().map(|v| ints(v)).collect();
    }
    if !out.stage(1, check_skew_form(&e, &form)) {
        return Ok(out);
    }
    let kg = group_algebra(e.group(), e.field());
    let j = match twist_from_form(&e, &form) {
        Ok(j) => j,
        Err(err) => {
            out.fail(2, err);
            return Ok(out);
        }
    };
    out.twist = Some(tensor_to_json(&kg, &j));
    let mut tr = check_twist(&kg, &j);
    tr.pass("J·J₂₁⁻¹ = R");
    if !out.stage(2, tr) {
        return Ok(out);
    }
    let t = match tau(&e, &j) {
        Ok(t) => t,
        Err(err) => {
            out.fail(3, err);
            return Ok(out);
        }
    };
    let chars = characters(&e)?;
    out.z = t.z.iter().map(|zc| element_to_function(&e, &chars, zc).map(|f| ints(&f))).collect::<Result<_>>()?;
    out.b = t.b.clone();
    let mut tr = CheckReport::new("tau");
    tr.pass_with("dz(g) = J^g·J⁻¹", format!("{} cosets", e.coset_count()));
    tr.pass("b̃ takes values in A");
    tr.pass("cocycle identity");
    out.stage(3, tr);

    let g_b = match build_g_b(&e, &t.b) {
        Ok(g) => g,
        Err(err) => {
            out.fail(4, err);
            return Ok(out);
        }
    };
    out.g_b = Some(g_b.to_json());
    out.g_b_type = if g_b.order() == 8 { identify_order8(&g_b) } else { None };
    let mut gr = CheckReport::new("G_b");
    gr.pass("group axioms");
    match identify_order8(e.group()).zip(out.g_b_type.clone()) {
        Some((a, b)) => gr.pass_with("isomorphism types", format!("G ≅ {a}, G_b ≅ {b}")),
        None => gr.pass_with("isomorphism", format!("G ≅ G_b: {}", find_isomorphism(e.group(), &g_b).is_some())),
    }
    if let Some(shift) = &input.shift {
        let shifted = t.shifted(&e, shift).and_then(|s| build_g_b(&e, &s.b));
        match shifted {
            Ok(g2) => {
                let iso = find_isomorphism(&g_b, &g2).is_some();
                out.shifted_isomorphic = Some(iso);
                gr.record(
                    "coboundary shift gives an isomorphic G_b",
                    (!iso).then(|| Witness { identity: "G_b ≅ G_b'".into(), indices: shift.clone(), labels: vec![] }),
                );
            }
            Err(Error::Input(m)) => return Err(Error::Input(m)),
            Err(err) => gr.fail_with("coboundary shift gives an isomorphic G_b", err.to_string()),
        }
    }
    if !out.stage(4, gr) {
        return Ok(out);
    }
    let phi = phi_matrix(&e, &t)?;
    out.phi = Some((0..phi.rows()).map(|i| ints(phi.row(i))).collect());
    out.stage(5, verify_phi(&e, &j, &t.b, &phi, &g_b));
    Ok(out)
}

#[cfg(test)]
mod tests;

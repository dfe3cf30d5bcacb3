//! Drinfeld twists, twisted Hopf algebras and coalgebras, R-matrices,
//! triangularity, minimality and gauge transformations.
//!
//! A twist `J ∈ H ⊗ H` satisfies
//! `(J⊗1)·(Δ⊗id)(J) = (1⊗J)·(id⊗Δ)(J)` and `(ε⊗id)(J) = 1 = (id⊗ε)(J)`.
//! The twisted coproduct is `Δ^J(b) = J·Δ(b)·J⁻¹`, the antipode is
//! `S^J(b) = U·S(b)·U⁻¹` with `U = m(id⊗S)(J)`, and the R-matrix of `H^J`
//! is `R = J₂₁·J⁻¹`. On commutative parents both factor orders agree.

use crate::error::{Error, Result};
use crate::hopf::{check_hopf, dense_to_row, witness, CoalgebraPresentation, HopfPresentation};
use crate::linalg::{Field, Matrix, Scalar, SparseTensor};
use crate::report::{CheckReport, Witness};

/// A verified twist together with its inverse.
#[derive(Clone, Debug)]
pub struct Twist {
    parent: HopfPresentation,
    j: SparseTensor,
    inverse: SparseTensor,
}

impl Twist {
    /// Runs [`check_twist`] and keeps the inverse.
    pub fn new(parent: &HopfPresentation, j: SparseTensor) -> Result<Self> {
        let report = check_twist(parent, &j);
        if let Some(f) = report.first_failure() {
            return Err(Error::Precondition(format!("not a twist: {} fails", f.name)));
        }
        let inverse = parent.algebra().tensor_inverse(&j)?;
        Ok(Twist { parent: parent.clone(), j, inverse })
    }

    pub fn parent(&self) -> &HopfPresentation {
        &self.parent
    }

    pub fn element(&self) -> &SparseTensor {
        &self.j
    }

    pub fn inverse(&self) -> &SparseTensor {
        &self.inverse
    }
}

/// An R-matrix in the tensor square of `parent`.
#[derive(Clone, Debug)]
pub struct RMatrix {
    parent: HopfPresentation,
    r: SparseTensor,
}

impl RMatrix {
    /// Wraps an element without verifying anything; see [`check_triangular`].
    pub fn new(parent: &HopfPresentation, r: SparseTensor) -> Result<Self> {
        check_square(parent, &r)?;
        Ok(RMatrix { parent: parent.clone(), r })
    }

    pub fn parent(&self) -> &HopfPresentation {
        &self.parent
    }

    pub fn element(&self) -> &SparseTensor {
        &self.r
    }
}

/// An invertible `u` with `ε(u) = 1`.
#[derive(Clone, Debug)]
pub struct GaugeElement {
    u: SparseTensor,
    inverse: SparseTensor,
}

impl GaugeElement {
    pub fn new(parent: &HopfPresentation, u: SparseTensor) -> Result<Self> {
        if u.arity() != 1 || u.dim() != parent.dim() || u.field() != parent.field() {
            return Err(Error::Shape("gauge element must lie in H".into()));
        }
        if !parent.coalgebra().counit_of(&u.to_dense()).is_one() {
            return Err(Error::Precondition("gauge element must have counit 1".into()));
        }
        let inverse = parent.algebra().tensor_inverse(&u)?;
        Ok(GaugeElement { u, inverse })
    }

    pub fn element(&self) -> &SparseTensor {
        &self.u
    }

    pub fn inverse(&self) -> &SparseTensor {
        &self.inverse
    }
}

fn check_square(h: &HopfPresentation, j: &SparseTensor) -> Result<()> {
    if j.arity() != 2 || j.dim() != h.dim() || j.field() != h.field() {
        return Err(Error::Shape(format!("expected an element of H⊗H for dim {}", h.dim())));
    }
    Ok(())
}

fn first_difference(a: &SparseTensor, b: &SparseTensor) -> Option<Vec<usize>> {
    let diff = a.sub(b).ok()?;
    let first = diff.iter().next().map(|(idx, _)| idx);
    first
}

fn tensor_witness(identity: &str, idx: Option<Vec<usize>>, basis: &[String]) -> Option<Witness> {
    idx.map(|i| witness(identity, &i, basis))
}

/// Invertibility, both counit normalizations and the twist equation in `H^{⊗3}`.
pub fn check_twist(h: &HopfPresentation, j: &SparseTensor) -> CheckReport {
    let mut report = CheckReport::new("twist");
    if let Err(e) = check_square(h, j) {
        report.fail_with("shape", e.to_string());
        return report;
    }
    let a = h.algebra();
    let invertible = a.tensor_inverse(j).is_ok();
    report.record(
        "invertible",
        (!invertible).then(|| Witness { identity: "J·J⁻¹ = 1⊗1".into(), indices: vec![], labels: vec![] }),
    );
    let unit = SparseTensor::from_vector(h.field(), a.unit());
    let c = h.coalgebra();
    let left = c.counit_at(j, 0).expect("arity 2");
    let right = c.counit_at(j, 1).expect("arity 2");
    let bad = if left != unit {
        first_difference(&left, &unit)
    } else if right != unit {
        first_difference(&right, &unit)
    } else {
        None
    };
    report.record("counit normalization", tensor_witness("(ε⊗id)(J) = 1 = (id⊗ε)(J)", bad, h.basis()));

    let (lhs, rhs) = twist_sides(h, j).expect("shapes checked");
    report.record(
        "twist equation",
        tensor_witness("(J⊗1)(Δ⊗id)(J) = (1⊗J)(id⊗Δ)(J)", first_difference(&lhs, &rhs), h.basis()),
    );
    report
}

/// Both sides of the twist equation.
pub fn twist_sides(h: &HopfPresentation, j: &SparseTensor) -> Result<(SparseTensor, SparseTensor)> {
    let a = h.algebra();
    let c = h.coalgebra();
    let (dj1, dj2) = rayon::join(|| c.coproduct_at(j, 0), || c.coproduct_at(j, 1));
    let (j12, j23) = (h.embed(j, &[0, 1], 3)?, h.embed(j, &[1, 2], 3)?);
    let (lhs, rhs) = rayon::join(|| a.tensor_mul(&j12, &dj1?), || a.tensor_mul(&j23, &dj2?));
    Ok((lhs?, rhs?))
}

/// `m(S⊗id)(J)` (`left = true`) or `m(id⊗S)(J)`.
fn drinfeld_element(h: &HopfPresentation, j: &SparseTensor, left: bool) -> Vec<Scalar> {
    let a = h.algebra();
    let d = h.dim();
    let mut q = a.zero_vec();
    for (idx, c) in j.iter() {
        let prod = if left {
            a.mul(&h.antipode().column(idx[0]), &a.basis_vec(idx[1]))
        } else {
            a.mul(&a.basis_vec(idx[0]), &h.antipode().column(idx[1]))
        };
        for k in 0..d {
            q[k] += c * prod[k];
        }
    }
    q
}

/// `H^J`: same algebra, `Δ^J(b) = JΔ(b)J⁻¹`, `S^J(b) = U·S(b)·U⁻¹` with
/// `U = m(id⊗S)(J)`.
pub fn apply_twist(h: &HopfPresentation, j: &SparseTensor) -> Result<HopfPresentation> {
    check_square(h, j)?;
    let a = h.algebra();
    let jinv = a.tensor_inverse(j)?;
    let images = (0..h.dim())
        .map(|b| a.tensor_mul(&a.tensor_mul(j, h.coalgebra().coproduct(b))?, &jinv))
        .collect::<Result<Vec<_>>>()?;
    let coalgebra =
        CoalgebraPresentation::from_images(h.field(), h.basis().to_vec(), images, h.coalgebra().counit().to_vec())?;
    let u = drinfeld_element(h, j, false);
    let uinv = a.inverse(&u).ok_or_else(|| Error::Consistency("m(id⊗S)(J) is not invertible".into()))?;
    let antipode = conjugated_antipode(h, &u, &uinv);
    h.with_coalgebra(coalgebra, antipode)
}

/// The map `b ↦ left·S(b)·right` as a matrix.
fn conjugated_antipode(h: &HopfPresentation, left: &[Scalar], right: &[Scalar]) -> Matrix {
    let a = h.algebra();
    let d = h.dim();
    let cols: Vec<_> = (0..d).map(|b| dense_to_row(&a.mul(&a.mul(left, &h.antipode().column(b)), right))).collect();
    Matrix::from_sparse_columns(h.field(), d, &cols)
}

/// `H^J` with the antipode `Q·S(b)·Q⁻¹`, `Q = m(S⊗id)(J)`, instead. Kept
/// for comparison: it is not an antipode of `H^J` once `H` is noncommutative.
pub fn apply_twist_conjugate_antipode(h: &HopfPresentation, j: &SparseTensor) -> Result<HopfPresentation> {
    let twisted = apply_twist(h, j)?;
    let q = drinfeld_element(h, j, true);
    let qinv = h.algebra().inverse(&q).ok_or_else(|| Error::Consistency("Q is not invertible".into()))?;
    twisted.with_coalgebra(twisted.coalgebra().clone(), conjugated_antipode(h, &q, &qinv))
}

/// `O(H)_ψ`: the coalgebra with `Δ_ψ(b) = Δ(b)·ψ`.
pub fn twisted_coalgebra(h: &HopfPresentation, psi: &SparseTensor) -> Result<CoalgebraPresentation> {
    check_square(h, psi)?;
    if !h.is_commutative() {
        return Err(Error::Precondition("twisted coalgebras need a commutative parent".into()));
    }
    let a = h.algebra();
    let images = (0..h.dim()).map(|b| a.tensor_mul(h.coalgebra().coproduct(b), psi)).collect::<Result<Vec<_>>>()?;
    CoalgebraPresentation::from_images(h.field(), h.basis().to_vec(), images, h.coalgebra().counit().to_vec())
}

/// `R = J₂₁·J⁻¹` in `H^J ⊗ H^J`, with `R₂₁·R = 1⊗1` verified.
pub fn r_matrix(twist: &Twist) -> Result<RMatrix> {
    let h = twist.parent();
    let a = h.algebra();
    let r = a.tensor_mul(&twist.element().swap21(), twist.inverse())?;
    if a.tensor_mul(&r.swap21(), &r)? != a.unit_tensor(2) {
        return Err(Error::Consistency("R₂₁R ≠ 1⊗1".into()));
    }
    RMatrix::new(&apply_twist(h, twist.element())?, r)
}

/// The triangular structure axioms for `(H, R)`.
pub fn check_triangular(h: &HopfPresentation, r: &RMatrix) -> CheckReport {
    let mut report = CheckReport::new("triangular");
    let r = r.element();
    if let Err(e) = check_square(h, r) {
        report.fail_with("shape", e.to_string());
        return report;
    }
    let a = h.algebra();
    let c = h.coalgebra();
    let basis = h.basis();
    let bad = (0..h.dim()).find(|&b| {
        let delta = c.coproduct(b);
        a.tensor_mul(r, delta).ok() != a.tensor_mul(&delta.swap21(), r).ok()
    });
    report.record("quasi-cocommutative", bad.map(|b| witness("RΔ(b) = Δ^op(b)R", &[b], basis)));

    let r13 = h.embed(r, &[0, 2], 3).expect("arity 2");
    let r23 = h.embed(r, &[1, 2], 3).expect("arity 2");
    let r12 = h.embed(r, &[0, 1], 3).expect("arity 2");
    let lhs = c.coproduct_at(r, 0).expect("arity 2");
    let rhs = a.tensor_mul(&r13, &r23).expect("arity 3");
    report.record("(Δ⊗id)(R) = R13 R23", tensor_witness("(Δ⊗id)(R) = R13R23", first_difference(&lhs, &rhs), basis));
    let lhs = c.coproduct_at(r, 1).expect("arity 2");
    let rhs = a.tensor_mul(&r13, &r12).expect("arity 3");
    report.record("(id⊗Δ)(R) = R13 R12", tensor_witness("(id⊗Δ)(R) = R13R12", first_difference(&lhs, &rhs), basis));
    let prod = a.tensor_mul(&r.swap21(), r).expect("arity 2");
    let one = a.unit_tensor(2);
    report.record("R21 R = 1", tensor_witness("R21R = 1⊗1", first_difference(&prod, &one), basis));
    report
}

/// `R` flattened to a `dim × dim` matrix; its rank is the dimension of the
/// span of the left (equivalently right) tensorands.
pub fn minimality_rank(h: &HopfPresentation, r: &SparseTensor) -> Result<usize> {
    check_square(h, r)?;
    let d = h.dim();
    let mut m = Matrix::zeros(h.field(), d, d);
    for (idx, c) in r.iter() {
        m[(idx[0], idx[1])] = c;
    }
    Ok(m.rank())
}

pub fn is_minimal(h: &HopfPresentation, r: &SparseTensor) -> Result<bool> {
    Ok(minimality_rank(h, r)? == h.dim())
}

/// `(u⊗u)·J·Δ(u)⁻¹`.
pub fn gauge_transform(h: &HopfPresentation, j: &SparseTensor, u: &GaugeElement) -> Result<SparseTensor> {
    check_square(h, j)?;
    let a = h.algebra();
    let uu = u.element().outer(u.element())?;
    let du_inv = h.coalgebra().coproduct_at(u.inverse(), 0)?;
    a.tensor_mul(&a.tensor_mul(&uu, j)?, &du_inv)
}

fn arity_one(h: &HopfPresentation, x: &SparseTensor) -> Result<Vec<Scalar>> {
    if x.arity() != 1 || x.dim() != h.dim() || x.field() != h.field() {
        return Err(Error::Shape("expected an element of H".into()));
    }
    Ok(x.to_dense())
}

fn prime_of(h: &HopfPresentation) -> Result<u32> {
    match h.field() {
        Field::Fp(p) => Ok(p),
        Field::Q => Err(Error::Precondition("truncated exponentials need a prime field".into())),
    }
}

fn is_primitive(h: &HopfPresentation, x: &[Scalar]) -> bool {
    let u = SparseTensor::from_vector(h.field(), h.algebra().unit());
    let v = SparseTensor::from_vector(h.field(), x);
    let expected = v.outer(&u).and_then(|l| l.add(&u.outer(&v)?));
    expected.ok() == Some(h.coalgebra().coproduct_of(x))
}

fn factorial_inverses(field: Field, p: u32) -> Vec<Scalar> {
    let mut out = vec![field.one()];
    for i in 1..p {
        let prev = out[i as usize - 1];
        out.push(prev * field.from_i64(i as i64).inv().expect("i < p"));
    }
    out
}

fn outer_vec(h: &HopfPresentation, x: &[Scalar], y: &[Scalar]) -> SparseTensor {
    let f = h.field();
    SparseTensor::from_vector(f, x).outer(&SparseTensor::from_vector(f, y)).expect("same space")
}

/// `exp(a⊗b) = Σ_{i<p} aⁱ⊗bⁱ/i!` for commuting primitive `a, b` with
/// `a^p = b^p = 0`.
pub fn exp_twist(h: &HopfPresentation, a: &SparseTensor, b: &SparseTensor) -> Result<SparseTensor> {
    let p = prime_of(h)?;
    let (av, bv) = (arity_one(h, a)?, arity_one(h, b)?);
    let alg = h.algebra();
    let zero = alg.zero_vec();
    if alg.pow(&av, p as u64) != zero || alg.pow(&bv, p as u64) != zero {
        return Err(Error::Precondition("exp twist needs a^p = b^p = 0".into()));
    }
    if alg.mul(&av, &bv) != alg.mul(&bv, &av) {
        return Err(Error::Precondition("exp twist needs commuting a and b".into()));
    }
    if !is_primitive(h, &av) || !is_primitive(h, &bv) {
        return Err(Error::Precondition("exp twist needs primitive a and b".into()));
    }
    let inv = factorial_inverses(h.field(), p);
    let mut j = SparseTensor::zero(h.field(), 2, h.dim());
    let (mut ai, mut bi) = (alg.unit().to_vec(), alg.unit().to_vec());
    for fi in inv {
        j = j.add(&outer_vec(h, &ai, &bi).scale(fi))?;
        ai = alg.mul(&ai, &av);
        bi = alg.mul(&bi, &bv);
    }
    Ok(j)
}

/// `Σ_{i<p} x(x-1)...(x-i+1)/i! ⊗ yⁱ` for primitive `x, y` with
/// `xy - yx = y`, `x^p = x` and `y^p = 0`.
pub fn falling_factorial_twist(h: &HopfPresentation, x: &SparseTensor, y: &SparseTensor) -> Result<SparseTensor> {
    let p = prime_of(h)?;
    let (xv, yv) = (arity_one(h, x)?, arity_one(h, y)?);
    let alg = h.algebra();
    let comm: Vec<Scalar> = alg.mul(&xv, &yv).iter().zip(alg.mul(&yv, &xv)).map(|(a, b)| *a - b).collect();
    if comm != yv {
        return Err(Error::Precondition("falling-factorial twist needs [x, y] = y".into()));
    }
    if alg.pow(&xv, p as u64) != xv || alg.pow(&yv, p as u64) != alg.zero_vec() {
        return Err(Error::Precondition("falling-factorial twist needs x^p = x and y^p = 0".into()));
    }
    if !is_primitive(h, &xv) || !is_primitive(h, &yv) {
        return Err(Error::Precondition("falling-factorial twist needs primitive x and y".into()));
    }
    let inv = factorial_inverses(h.field(), p);
    let unit = alg.unit().to_vec();
    let mut j = SparseTensor::zero(h.field(), 2, h.dim());
    let (mut fall, mut yi) = (unit.clone(), unit.clone());
    for (i, fi) in inv.into_iter().enumerate() {
        j = j.add(&outer_vec(h, &fall, &yi).scale(fi))?;
        let shift: Vec<Scalar> = xv.iter().zip(&unit).map(|(a, u)| *a - *u * h.field().from_i64(i as i64)).collect();
        fall = alg.mul(&fall, &shift);
        yi = alg.mul(&yi, &yv);
    }
    Ok(j)
}

/// Applies a linear map `f` (columns are images of basis vectors) to every
/// slot of `x`.
pub fn map_tensor(f: &Matrix, x: &SparseTensor) -> Result<SparseTensor> {
    if f.cols() != x.dim() {
        return Err(Error::Shape("map does not match the tensor space".into()));
    }
    let cols: Vec<_> = (0..f.cols()).map(|j| dense_to_row(&f.column(j))).collect();
    let k = x.arity();
    let mut out = SparseTensor::zero(x.field(), k, f.rows());
    for (idx, c) in x.iter() {
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::with_capacity(k), c)];
        for &i in &idx {
            partial = partial
                .into_iter()
                .flat_map(|(pre, v)| {
                    cols[i].iter().map(move |&(t, w)| {
                        let mut n = pre.clone();
                        n.push(t);
                        (n, v * w)
                    })
                })
                .collect();
        }
        for (i, v) in partial {
            out.add_at(&i, v);
        }
    }
    Ok(out)
}

/// Full verification bundle for a twist: twist equation, the twisted Hopf
/// algebra, its R-matrix triangularity and minimality.
pub fn verify_twist_suite(h: &HopfPresentation, j: &SparseTensor) -> Result<(CheckReport, usize)> {
    let mut report = check_twist(h, j);
    if !report.passed() {
        return Ok((report, 0));
    }
    let twist = Twist::new(h, j.clone())?;
    let r = r_matrix(&twist)?;
    let hj = r.parent().clone();
    report.extend(check_hopf(&hj));
    report.extend(check_triangular(&hj, &r));
    let rank = minimality_rank(&hj, r.element())?;
    Ok((report, rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::check_coalgebra;
    use crate::plie::{catalog, enveloping};

    fn gen(h: &HopfPresentation, label: &str) -> SparseTensor {
        let i = h.index_of(label).unwrap();
        SparseTensor::basis(h.field(), h.dim(), &[i], h.field().one())
    }

    #[test]
    fn trivial_twist() {
        let h = enveloping(&catalog("nonabelian2", 3).unwrap()).unwrap();
        let one = h.algebra().unit_tensor(2);
        assert!(check_twist(&h, &one).passed());
        assert_eq!(apply_twist(&h, &one).unwrap(), h);
        let t = Twist::new(&h, one.clone()).unwrap();
        let r = r_matrix(&t).unwrap();
        assert_eq!(r.element(), &one);
        assert!(check_triangular(&h, &r).passed());
        assert_eq!(minimality_rank(&h, &one).unwrap(), 1);
    }

    #[test]
    fn exp_twist_on_abelian_enveloping_algebra() {
        for p in [2, 3, 5] {
            let h = enveloping(&catalog("abelian2", p).unwrap()).unwrap();
            let j = exp_twist(&h, &gen(&h, "h^1"), &gen(&h, "x^1")).unwrap();
            assert!(check_twist(&h, &j).passed(), "p = {p}");
            let t = Twist::new(&h, j.clone()).unwrap();
            let r = r_matrix(&t).unwrap();
            assert_eq!(minimality_rank(&h, r.element()).unwrap(), (p * p) as usize);
            assert_eq!(r.parent(), &h);
        }
        let h = enveloping(&catalog("abelian2", 2).unwrap()).unwrap();
        let j = exp_twist(&h, &gen(&h, "h^1"), &gen(&h, "x^1")).unwrap();
        let mut expected = h.algebra().unit_tensor(2);
        expected.add_at(&[1, 2], Field::Fp(2).one());
        assert_eq!(j, expected);
        let zero = SparseTensor::zero(h.field(), 1, h.dim());
        assert_eq!(exp_twist(&h, &zero, &gen(&h, "x^1")).unwrap(), h.algebra().unit_tensor(2));
        assert!(exp_twist(&h, &gen(&h, "h^1 x^1"), &gen(&h, "x^1")).is_err());
    }

    #[test]
    fn bare_product_is_not_a_twist() {
        let h = enveloping(&catalog("abelian2", 3).unwrap()).unwrap();
        let j = gen(&h, "h^1").outer(&gen(&h, "x^1")).unwrap();
        let r = check_twist(&h, &j);
        assert!(!r.get("twist equation").unwrap().passed);
        assert!(!r.get("invertible").unwrap().passed);
    }

    #[test]
    fn r_matrix_of_exp_twist_matches_expansion() {
        let h = enveloping(&catalog("abelian2", 3).unwrap()).unwrap();
        let (a, b) = (gen(&h, "h^1"), gen(&h, "x^1"));
        let j = exp_twist(&h, &a, &b).unwrap();
        let r = r_matrix(&Twist::new(&h, j.clone()).unwrap()).unwrap();
        // exp(x⊗h)·exp(-h⊗x)
        let e = exp_twist(&h, &a.scale(-h.field().one()), &b).unwrap();
        let expected = h.algebra().tensor_mul(&j.swap21(), &e).unwrap();
        assert_eq!(r.element(), &expected);
        assert_ne!(r.element(), &h.algebra().unit_tensor(2));
    }

    #[test]
    fn falling_factorial_twist_is_minimal_triangular() {
        for p in [2, 3, 5] {
            let h = enveloping(&catalog("nonabelian2", p).unwrap()).unwrap();
            let j = falling_factorial_twist(&h, &gen(&h, "x^1"), &gen(&h, "y^1")).unwrap();
            let (report, rank) = verify_twist_suite(&h, &j).unwrap();
            assert!(report.passed(), "p = {p}: {report}");
            assert_eq!(rank, (p * p) as usize);
            let hj = apply_twist(&h, &j).unwrap();
            assert!(!hj.is_commutative() && !hj.is_cocommutative());
        }
        let h = enveloping(&catalog("nonabelian2", 2).unwrap()).unwrap();
        let j = falling_factorial_twist(&h, &gen(&h, "x^1"), &gen(&h, "y^1")).unwrap();
        let mut expected = h.algebra().unit_tensor(2);
        expected.add_at(&[h.index_of("x^1").unwrap(), h.index_of("y^1").unwrap()], Field::Fp(2).one());
        assert_eq!(j, expected);
    }

    #[test]
    fn conjugating_the_other_way_breaks_the_antipode() {
        let h = enveloping(&catalog("nonabelian2", 3).unwrap()).unwrap();
        let j = falling_factorial_twist(&h, &gen(&h, "x^1"), &gen(&h, "y^1")).unwrap();
        let other = apply_twist_conjugate_antipode(&h, &j).unwrap();
        assert!(!check_hopf(&other).get("antipode").unwrap().passed);
        let wrong = apply_twist(&h, &j)
            .unwrap()
            .with_coalgebra(apply_twist(&h, &j).unwrap().coalgebra().clone(), h.antipode().clone());
        assert!(!check_hopf(&wrong.unwrap()).get("antipode").unwrap().passed);
    }

    #[test]
    fn twist_itself_is_not_triangular() {
        let h = enveloping(&catalog("abelian2", 2).unwrap()).unwrap();
        let j = exp_twist(&h, &gen(&h, "h^1"), &gen(&h, "x^1")).unwrap();
        let hj = apply_twist(&h, &j).unwrap();
        let r = RMatrix::new(&hj, j).unwrap();
        assert!(!check_triangular(&hj, &r).get("R21 R = 1").unwrap().passed);
    }

    #[test]
    fn twisted_coalgebra_of_abelian_algebra() {
        let h = enveloping(&catalog("abelian2", 2).unwrap()).unwrap();
        let j = exp_twist(&h, &gen(&h, "h^1"), &gen(&h, "x^1")).unwrap();
        let c = twisted_coalgebra(&h, &j).unwrap();
        assert!(check_coalgebra(&c).passed());
        assert_eq!(c.dim(), 4);
        assert!(!c.is_cocommutative());
        let same = twisted_coalgebra(&h, &h.algebra().unit_tensor(2)).unwrap();
        assert_eq!(&same, h.coalgebra());
    }

    #[test]
    fn gauge_transformations_preserve_twists() {
        let h = enveloping(&catalog("nonabelian2", 3).unwrap()).unwrap();
        let j = falling_factorial_twist(&h, &gen(&h, "x^1"), &gen(&h, "y^1")).unwrap();
        let f = h.field();
        let one = SparseTensor::from_vector(f, h.algebra().unit());
        let u = one.add(&gen(&h, "x^1 y^1").scale(f.from_i64(2))).unwrap().add(&gen(&h, "y^2")).unwrap();
        let u = GaugeElement::new(&h, u).unwrap();
        let g = gauge_transform(&h, &j, &u).unwrap();
        assert!(check_twist(&h, &g).passed());
        let r = r_matrix(&Twist::new(&h, j.clone()).unwrap()).unwrap();
        let rg = r_matrix(&Twist::new(&h, g.clone()).unwrap()).unwrap();
        let a = h.algebra();
        let uu = u.element().outer(u.element()).unwrap();
        let uu_inv = u.inverse().outer(u.inverse()).unwrap();
        let conj = a.tensor_mul(&a.tensor_mul(&uu, r.element()).unwrap(), &uu_inv).unwrap();
        assert_eq!(rg.element(), &conj);
        assert_eq!(minimality_rank(&h, rg.element()).unwrap(), 9);
        let trivial = GaugeElement::new(&h, one).unwrap();
        assert_eq!(gauge_transform(&h, &j, &trivial).unwrap(), j);
    }

    #[test]
    fn map_tensor_is_slotwise() {
        let f = Field::Fp(3);
        let m = Matrix::from_i64(f, &[&[1, 1], &[0, 1]]);
        let x = SparseTensor::basis(f, 2, &[1, 1], f.one());
        let y = map_tensor(&m, &x).unwrap();
        assert_eq!(y.nnz(), 4);
    }
}

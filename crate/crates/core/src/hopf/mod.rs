//! Algebras, coalgebras and Hopf algebras given by structure constants.

mod json;
mod presentation;

use rayon::prelude::*;

pub(crate) use json::{field_from_json, field_to_json};
pub use json::{tensor_from_json, tensor_to_json, HopfJson, TensorJson};
pub(crate) use presentation::dense_to_row;
pub use presentation::{apply_map_at, AlgebraPresentation, CoalgebraPresentation, HopfPresentation};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar, SparseRow, SparseTensor};
use crate::report::{CheckReport, Witness};

pub(crate) fn witness(identity: &str, indices: &[usize], basis: &[String]) -> Witness {
    Witness {
        identity: identity.to_string(),
        indices: indices.to_vec(),
        labels: indices.iter().map(|&i| basis[i].clone()).collect(),
    }
}

fn add_row(acc: &mut [Scalar], row: &SparseRow, c: Scalar) {
    for &(k, v) in row {
        acc[k] += c * v;
    }
}

/// Associativity on all basis triples and the two unit laws on all basis elements.
pub fn check_algebra(a: &AlgebraPresentation) -> CheckReport {
    let mut report = CheckReport::new("algebra");
    let d = a.dim();
    let zero = a.field().zero();
    let failure = (0..d).into_par_iter().find_map_first(|i| {
        for j in 0..d {
            let ij = a.product(i, j);
            for k in 0..d {
                let mut left = vec![zero; d];
                for &(m, c) in ij {
                    add_row(&mut left, a.product(m, k), c);
                }
                let mut right = vec![zero; d];
                for &(m, c) in a.product(j, k) {
                    add_row(&mut right, a.product(i, m), c);
                }
                if left != right {
                    return Some([i, j, k]);
                }
            }
        }
        None
    });
    report.record("associativity", failure.map(|t| witness("(ab)c = a(bc)", &t, a.basis())));

    let unit = a.unit();
    let bad_unit = (0..d).find(|&i| {
        let e = a.basis_vec(i);
        a.mul(unit, &e) != e || a.mul(&e, unit) != e
    });
    report.record("unit", bad_unit.map(|i| witness("1a = a = a1", &[i], a.basis())));
    report
}

/// Coassociativity and the counit laws on every basis element.
pub fn check_coalgebra(c: &CoalgebraPresentation) -> CheckReport {
    let mut report = CheckReport::new("coalgebra");
    let d = c.dim();
    let bad = (0..d).into_par_iter().find_first(|&k| {
        let delta = c.coproduct(k);
        let left = c.coproduct_at(delta, 0).expect("arity 2");
        let right = c.coproduct_at(delta, 1).expect("arity 2");
        left != right
    });
    report.record("coassociativity", bad.map(|k| witness("(Δ⊗id)Δ = (id⊗Δ)Δ", &[k], c.basis())));

    let bad = (0..d).find(|&k| {
        let delta = c.coproduct(k);
        let e = SparseTensor::basis(c.field(), d, &[k], c.field().one());
        let l = c.counit_at(delta, 0).expect("arity 2");
        let r = c.counit_at(delta, 1).expect("arity 2");
        l != e || r != e
    });
    report.record("counit", bad.map(|k| witness("(ε⊗id)Δ = id = (id⊗ε)Δ", &[k], c.basis())));
    report
}

/// Full Hopf verification: the algebra and coalgebra reports, bialgebra
/// compatibility on all basis pairs, and both antipode identities.
pub fn check_hopf(h: &HopfPresentation) -> CheckReport {
    let mut report = CheckReport::new("hopf");
    report.extend(check_algebra(h.algebra()));
    report.extend(check_coalgebra(h.coalgebra()));
    let a = h.algebra();
    let c = h.coalgebra();
    let d = h.dim();
    let field = h.field();
    let basis = h.basis();

    let bad = (0..d).into_par_iter().find_map_first(|j| {
        let cols = a.right_mult_columns(c.coproduct(j)).expect("square");
        for i in 0..d {
            let mut prod = SparseTensor::zero(field, 2, d);
            for (flat, x) in c.coproduct(i).iter_flat() {
                for &(t, y) in &cols[flat] {
                    prod.add_flat(t, x * y);
                }
            }
            let mut lhs = SparseTensor::zero(field, 2, d);
            for &(k, v) in a.product(i, j) {
                for (t, y) in c.coproduct(k).iter_flat() {
                    lhs.add_flat(t, v * y);
                }
            }
            if lhs != prod {
                return Some([i, j]);
            }
        }
        None
    });
    report.record("comultiplication multiplicative", bad.map(|t| witness("Δ(ab) = Δ(a)Δ(b)", &t, basis)));

    let unit_ok = c.coproduct_of(a.unit()) == a.unit_tensor(2);
    report.record(
        "comultiplication unital",
        (!unit_ok).then(|| Witness { identity: "Δ(1) = 1⊗1".into(), indices: vec![], labels: vec![] }),
    );

    let eps = c.counit();
    let bad = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).find(|&(i, j)| {
        let mut v = field.zero();
        for &(k, x) in a.product(i, j) {
            v += x * eps[k];
        }
        v != eps[i] * eps[j]
    });
    report.record("counit multiplicative", bad.map(|(i, j)| witness("ε(ab) = ε(a)ε(b)", &[i, j], basis)));
    let unital = c.counit_of(a.unit()).is_one();
    report.record(
        "counit unital",
        (!unital).then(|| Witness { identity: "ε(1) = 1".into(), indices: vec![], labels: vec![] }),
    );

    let s_cols: Vec<SparseRow> = (0..d).map(|j| dense_to_row(&h.antipode().column(j))).collect();
    let bad = (0..d).find(|&k| {
        let mut left = a.zero_vec();
        let mut right = a.zero_vec();
        for (flat, x) in c.coproduct(k).iter_flat() {
            let (i, j) = (flat / d, flat % d);
            for &(s, y) in &s_cols[i] {
                add_row(&mut left, a.product(s, j), x * y);
            }
            for &(s, y) in &s_cols[j] {
                add_row(&mut right, a.product(i, s), x * y);
            }
        }
        let expect: Vec<Scalar> = a.unit().iter().map(|&u| u * eps[k]).collect();
        left != expect || right != expect
    });
    report.record("antipode", bad.map(|k| witness("m(S⊗id)Δ = ηε = m(id⊗S)Δ", &[k], basis)));
    report
}

/// Verifies that `f` (columns are images of the basis of `src`) is a Hopf
/// algebra map `src → dst`.
pub fn check_morphism(f: &Matrix, src: &HopfPresentation, dst: &HopfPresentation) -> CheckReport {
    let mut report = CheckReport::new("morphism");
    if f.cols() != src.dim() || f.rows() != dst.dim() {
        report
            .fail_with("shape", format!("{}x{} map between dims {} and {}", f.rows(), f.cols(), src.dim(), dst.dim()));
        return report;
    }
    let d = src.dim();
    let img: Vec<Vec<Scalar>> = (0..d).map(|j| f.column(j)).collect();
    let apply = |x: &[Scalar]| f.mul_vec(x).expect("shape");
    let sa = src.algebra();
    let da = dst.algebra();
    let bad = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).find(|&(i, j)| {
        let mut lhs = sa.zero_vec();
        add_row(&mut lhs, sa.product(i, j), src.field().one());
        apply(&lhs) != da.mul(&img[i], &img[j])
    });
    report.record("multiplicative", bad.map(|(i, j)| witness("f(ab) = f(a)f(b)", &[i, j], src.basis())));
    let unital = apply(sa.unit()) == da.unit();
    report
        .record("unital", (!unital).then(|| Witness { identity: "f(1) = 1".into(), indices: vec![], labels: vec![] }));

    let bad = (0..d).find(|&k| {
        let mut lhs = SparseTensor::zero(dst.field(), 2, dst.dim());
        for (flat, x) in src.coalgebra().coproduct(k).iter_flat() {
            let (i, j) = (flat / d, flat % d);
            for (p, u) in img[i].iter().enumerate().filter(|e| !e.1.is_zero()) {
                for (q, v) in img[j].iter().enumerate().filter(|e| !e.1.is_zero()) {
                    lhs.add_at(&[p, q], x * *u * *v);
                }
            }
        }
        lhs != dst.coalgebra().coproduct_of(&img[k])
    });
    report.record("comultiplicative", bad.map(|k| witness("Δf = (f⊗f)Δ", &[k], src.basis())));
    let bad = (0..d).find(|&k| dst.coalgebra().counit_of(&img[k]) != src.coalgebra().counit()[k]);
    report.record("counital", bad.map(|k| witness("εf = ε", &[k], src.basis())));
    let bad = (0..d).find(|&k| apply(&src.antipode().column(k)) != dst.antipode_of(&img[k]));
    report.record("antipode", bad.map(|k| witness("fS = Sf", &[k], src.basis())));
    report
}

/// Checks that `f` is a Hopf isomorphism: a bijective Hopf map.
pub fn check_isomorphism(f: &Matrix, src: &HopfPresentation, dst: &HopfPresentation) -> CheckReport {
    let mut report = check_morphism(f, src, dst);
    let bijective = f.rows() == f.cols() && f.rank() == f.cols();
    report.record(
        "bijective",
        (!bijective).then(|| Witness { identity: "rank f = dim".into(), indices: vec![], labels: vec![] }),
    );
    report
}

fn toggle_star(label: &str) -> String {
    match label.strip_suffix('*') {
        Some(base) => base.to_string(),
        None => format!("{label}*"),
    }
}

/// The dual Hopf algebra on the dual basis. Labels gain (or lose) a trailing
/// `*`, so `dual(dual(h)) == h`.
pub fn dual(h: &HopfPresentation) -> HopfPresentation {
    let field = h.field();
    let d = h.dim();
    let basis: Vec<String> = h.basis().iter().map(|b| toggle_star(b)).collect();
    let mut mult = SparseTensor::zero(field, 3, d);
    for (idx, v) in h.coalgebra().comult().iter() {
        mult.add_at(&[idx[1], idx[2], idx[0]], v);
    }
    let mut comult = SparseTensor::zero(field, 3, d);
    for (idx, v) in h.algebra().mult().iter() {
        comult.add_at(&[idx[2], idx[0], idx[1]], v);
    }
    let algebra = AlgebraPresentation::new(field, basis.clone(), mult, h.coalgebra().counit().to_vec()).expect("shape");
    let coalgebra = CoalgebraPresentation::new(field, basis, comult, h.algebra().unit().to_vec()).expect("shape");
    HopfPresentation::new(algebra, coalgebra, h.antipode().transpose()).expect("shape")
}

/// `h1 ⊗ h2` with basis `b_a ⊗ b_b` at index `a·dim(h2) + b`.
pub fn tensor_hopf(h1: &HopfPresentation, h2: &HopfPresentation) -> Result<HopfPresentation> {
    if h1.field() != h2.field() {
        return Err(Error::FieldMismatch(h1.field(), h2.field()));
    }
    let field = h1.field();
    let (d1, d2) = (h1.dim(), h2.dim());
    let d = d1 * d2;
    let pair = |a: usize, b: usize| a * d2 + b;
    let basis: Vec<String> = (0..d).map(|i| format!("{}⊗{}", h1.label(i / d2), h2.label(i % d2))).collect();

    let mut mult = SparseTensor::zero(field, 3, d);
    for (x, u) in h1.algebra().mult().iter() {
        for (y, v) in h2.algebra().mult().iter() {
            mult.add_at(&[pair(x[0], y[0]), pair(x[1], y[1]), pair(x[2], y[2])], u * v);
        }
    }
    let mut comult = SparseTensor::zero(field, 3, d);
    for (x, u) in h1.coalgebra().comult().iter() {
        for (y, v) in h2.coalgebra().comult().iter() {
            comult.add_at(&[pair(x[0], y[0]), pair(x[1], y[1]), pair(x[2], y[2])], u * v);
        }
    }
    let outer = |a: &[Scalar], b: &[Scalar]| -> Vec<Scalar> { (0..d).map(|i| a[i / d2] * b[i % d2]).collect() };
    let unit = outer(h1.algebra().unit(), h2.algebra().unit());
    let counit = outer(h1.coalgebra().counit(), h2.coalgebra().counit());
    let mut antipode = Matrix::zeros(field, d, d);
    for i in 0..d {
        for j in 0..d {
            antipode[(i, j)] = h1.antipode()[(i / d2, j / d2)] * h2.antipode()[(i % d2, j % d2)];
        }
    }
    HopfPresentation::new(
        AlgebraPresentation::new(field, basis.clone(), mult, unit)?,
        CoalgebraPresentation::new(field, basis, comult, counit)?,
        antipode,
    )
}

/// Product in `H^{⊗k}`.
pub fn multiply(h: &HopfPresentation, x: &SparseTensor, y: &SparseTensor) -> Result<SparseTensor> {
    h.algebra().tensor_mul(x, y)
}

/// Inverse in `H^{⊗k}`, or [`Error::NotInvertible`].
pub fn invert(h: &HopfPresentation, x: &SparseTensor) -> Result<SparseTensor> {
    h.algebra().tensor_inverse(x)
}

/// A structure map applied to one tensor slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlotMap {
    Coproduct,
    Counit,
    Antipode,
}

/// Applies `Δ`, `ε` or `S` at `slot`. `ε` removes the slot (an arity-1
/// input yields a one-dimensional tensor holding the scalar).
pub fn apply_map(h: &HopfPresentation, x: &SparseTensor, map: SlotMap, slot: usize) -> Result<SparseTensor> {
    match map {
        SlotMap::Coproduct => h.coalgebra().coproduct_at(x, slot),
        SlotMap::Counit => h.coalgebra().counit_at(x, slot),
        SlotMap::Antipode => h.antipode_at(x, slot),
    }
}

#[cfg(test)]
mod tests;

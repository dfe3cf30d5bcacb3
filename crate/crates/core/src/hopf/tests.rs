use super::*;
use crate::linalg::Field;

fn cyclic_group_algebra(field: Field, n: usize) -> HopfPresentation {
    let basis: Vec<String> = (0..n).map(|i| format!("g^{i}")).collect();
    let one = field.one();
    let mut unit = vec![field.zero(); n];
    unit[0] = one;
    let mut counit = vec![one; n];
    counit[0] = one;
    let algebra = AlgebraPresentation::from_fn(field, basis.clone(), unit, |i, j| vec![((i + j) % n, one)]).unwrap();
    let images = (0..n).map(|k| SparseTensor::basis(field, n, &[k, k], one)).collect();
    let coalgebra = CoalgebraPresentation::from_images(field, basis, images, counit).unwrap();
    let mut s = Matrix::zeros(field, n, n);
    for j in 0..n {
        s[((n - j) % n, j)] = one;
    }
    HopfPresentation::new(algebra, coalgebra, s).unwrap()
}

#[test]
fn group_algebra_is_hopf_and_dual_is_commutative() {
    for (field, n) in [(Field::Fp(2), 2), (Field::Fp(3), 5), (Field::Q, 4)] {
        let h = cyclic_group_algebra(field, n);
        let r = check_hopf(&h);
        assert!(r.passed(), "{r}");
        let f = dual(&h);
        assert!(check_hopf(&f).passed());
        assert!(f.is_commutative() && f.is_cocommutative());
        assert_eq!(dual(&f), h);
    }
}

#[test]
fn nonunital_table_names_the_claimed_unit() {
    let f = Field::Fp(5);
    let basis = vec!["e1".to_string(), "e2".to_string()];
    let a = AlgebraPresentation::from_fn(f, basis, vec![f.one(), f.zero()], |i, j| {
        if i == 0 && j == 0 {
            vec![(1, f.one())]
        } else {
            vec![]
        }
    })
    .unwrap();
    let r = check_algebra(&a);
    let e = r.get("unit").unwrap();
    assert!(!e.passed);
    assert_eq!(e.witness.as_ref().unwrap().labels, vec!["e1".to_string()]);
    assert!(r.get("associativity").unwrap().passed);
}

#[test]
fn broken_antipode_is_caught() {
    let h = cyclic_group_algebra(Field::Fp(3), 3);
    let bad = h.with_coalgebra(h.coalgebra().clone(), Matrix::identity(Field::Fp(3), 3)).unwrap();
    let r = check_hopf(&bad);
    let e = r.get("antipode").unwrap();
    assert!(!e.passed);
    assert_eq!(e.witness.as_ref().unwrap().labels, vec!["g^1".to_string()]);
}

#[test]
fn broken_coproduct_is_caught() {
    let f = Field::Fp(2);
    let h = cyclic_group_algebra(f, 2);
    // Δ(g) = g⊗1 + 1⊗g is not multiplicative on a group algebra.
    let mut images = vec![SparseTensor::basis(f, 2, &[0, 0], f.one())];
    let mut dg = SparseTensor::basis(f, 2, &[1, 0], f.one());
    dg.add_at(&[0, 1], f.one());
    images.push(dg);
    let c = CoalgebraPresentation::from_images(f, h.basis().to_vec(), images, vec![f.one(), f.zero()]).unwrap();
    let bad = h.with_coalgebra(c, h.antipode().clone()).unwrap();
    let r = check_hopf(&bad);
    assert!(!r.get("comultiplication multiplicative").unwrap().passed);
}

#[test]
fn tensor_with_trivial_is_identity() {
    let h = cyclic_group_algebra(Field::Fp(3), 3);
    let t = tensor_hopf(&h, &HopfPresentation::trivial(Field::Fp(3))).unwrap();
    assert_eq!(t.dim(), 3);
    assert!(t.same_tables(&h));
    let hh = tensor_hopf(&h, &dual(&h)).unwrap();
    assert_eq!(hh.dim(), 9);
    assert!(check_hopf(&hh).passed());
}

#[test]
fn element_arithmetic() {
    let f = Field::Fp(5);
    let h = cyclic_group_algebra(f, 5);
    let one = h.algebra().unit_tensor(2);
    assert_eq!(invert(&h, &one).unwrap(), one);
    let g = SparseTensor::basis(f, 5, &[1, 1], f.one());
    let k = SparseTensor::basis(f, 5, &[3, 3], f.one());
    assert_eq!(multiply(&h, &g, &k).unwrap(), SparseTensor::basis(f, 5, &[4, 4], f.one()));
    let gi = invert(&h, &g).unwrap();
    assert_eq!(gi, SparseTensor::basis(f, 5, &[4, 4], f.one()));
    let z = one.sub(&SparseTensor::basis(f, 5, &[0, 0], f.one())).unwrap();
    assert!(matches!(invert(&h, &z), Err(Error::NotInvertible)));
    let d = apply_map(&h, &g, SlotMap::Coproduct, 0).unwrap();
    assert_eq!(d, SparseTensor::basis(f, 5, &[1, 1, 1], f.one()));
    let e = apply_map(&h, &g, SlotMap::Counit, 1).unwrap();
    assert_eq!(e, SparseTensor::basis(f, 5, &[1], f.one()));
    let s = apply_map(&h, &g, SlotMap::Antipode, 0).unwrap();
    assert_eq!(s, SparseTensor::basis(f, 5, &[4, 1], f.one()));
    let j13 = h.embed(&g, &[0, 2], 3).unwrap();
    assert_eq!(j13, SparseTensor::basis(f, 5, &[1, 0, 1], f.one()));
}

#[test]
fn json_round_trip_is_bit_exact() {
    for h in [cyclic_group_algebra(Field::Fp(7), 4), cyclic_group_algebra(Field::Q, 3)] {
        let s = h.to_json();
        let back = HopfPresentation::from_json(&s).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.to_json(), s);
    }
}

#[test]
fn json_rejects_bad_input() {
    let h = cyclic_group_algebra(Field::Fp(3), 2);
    let mut j = HopfJson::from_hopf(&h);
    j.mult.push(vec![0, 5, 0, 1]);
    assert!(j.to_hopf().is_err());
    let mut j = HopfJson::from_hopf(&h);
    j.p = Some(4);
    assert!(matches!(j.to_hopf(), Err(Error::NotPrime(4))));
}

#[test]
fn tensor_json_round_trip() {
    let f = Field::Q;
    let h = cyclic_group_algebra(f, 3);
    let mut x = SparseTensor::basis(f, 3, &[1, 2], f.from_fraction(-2, 3).unwrap());
    x.add_at(&[0, 0], f.one());
    let j = tensor_to_json(&h, &x);
    assert_eq!(tensor_from_json(&h, &j).unwrap(), x);
}

mod common;

use std::collections::HashSet;

use hopfkit_core::commutative::{enumerate_twists, gauge_elements, mu_n_group_algebra, DEFAULT_BUDGET};
use hopfkit_core::fixtures::{two_dim, witt};
use hopfkit_core::hopf::check_morphism;
use hopfkit_core::linalg::Scalar;
use hopfkit_core::plie::{catalog, enveloping, pbw_index, PLiePresentation};
use hopfkit_core::twist::{check_triangular, check_twist, gauge_transform, r_matrix, twist_sides, Twist};
use hopfkit_core::Field;

#[test]
fn radical_matches_the_largest_nilpotent_ideal() {
    for (name, a) in common::f2_corpus() {
        let (oracle, lib, same) = common::radical_matches(&a);
        assert!(same, "{name}: brute force {oracle}, library {lib}");
    }
}

#[test]
fn brute_force_oracle_sanity() {
    let f = Field::Fp(2);
    let bit = common::BitAlgebra::new(&common::truncated_polynomials(f, 5));
    assert_eq!(bit.brute_force_radical().rows.len(), 4);
    let bit = common::BitAlgebra::new(&common::upper_triangular(f, 3));
    assert_eq!(bit.brute_force_radical().rows.len(), 3);
    let bit = common::BitAlgebra::new(&common::matrix_algebra(f, 2));
    assert!(bit.brute_force_radical().rows.is_empty());
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

fn scale(c: Scalar, a: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|x| c * *x).collect()
}

/// `x^[p]` from the basis values by Jacobson's formula:
/// `(x+y)^[p] = x^[p] + y^[p] + Σ s_i(x,y)`, where `i·s_i` is the
/// coefficient of `t^{i-1}` in `ad(tx+y)^{p-1}(x)`, and `(cx)^[p] = c^p x^[p]`.
fn jacobson_pmap(l: &PLiePresentation, v: &[Scalar]) -> Vec<Scalar> {
    let p = l.p() as usize;
    let f = l.field();
    let mut acc_x = vec![f.zero(); l.dim()];
    let mut acc_p = vec![f.zero(); l.dim()];
    for (i, &c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let y = scale(c, &l.basis_vec(i));
        let y_p = scale(c.pow(p as u64), &l.pmap()[i]);
        let x = acc_x.clone();
        // poly[k] is the coefficient of t^k.
        let mut poly = vec![x.clone()];
        for _ in 0..p - 1 {
            let mut next = vec![vec![f.zero(); l.dim()]; poly.len() + 1];
            for (k, coeff) in poly.iter().enumerate() {
                next[k + 1] = add(&next[k + 1], &l.bracket_vec(&x, coeff));
                next[k] = add(&next[k], &l.bracket_vec(&y, coeff));
            }
            poly = next;
        }
        let mut sum = add(&acc_p, &y_p);
        for i in 1..p {
            let s = scale(f.from_i64(i as i64).inv().unwrap(), &poly[i - 1]);
            sum = add(&sum, &s);
        }
        acc_p = sum;
        acc_x = add(&acc_x, &y);
    }
    acc_p
}

#[test]
fn p_power_in_the_enveloping_algebra_follows_jacobson() {
    let mut cases = Vec::new();
    for p in [2u32, 3, 5] {
        for name in ["abelian2", "nonabelian2", "torus(2)", "torus(3)"] {
            cases.push(catalog(name, p).unwrap());
        }
    }
    cases.push(catalog("witt", 3).unwrap());
    for l in cases {
        let u = enveloping(&l).unwrap();
        let a = u.algebra();
        let n = l.dim();
        let p = l.p();
        let embed = |v: &[Scalar]| {
            let mut out = a.zero_vec();
            for (i, &c) in v.iter().enumerate() {
                let mut e = vec![0u32; n];
                e[i] = 1;
                out[pbw_index(&e, p)] += c;
            }
            out
        };
        let elements = l.field().elements().unwrap();
        for code in 0..(p as usize).pow(n as u32) {
            let v: Vec<Scalar> = (0..n).map(|k| elements[code / (p as usize).pow(k as u32) % p as usize]).collect();
            let power = a.pow(&embed(&v), p as u64);
            assert_eq!(power, embed(&jacobson_pmap(&l, &v)), "{:?} at p = {p}, x = {v:?}", l.names());
        }
    }
}

#[test]
fn witt_inclusion_is_a_hopf_map_and_carries_the_twist() {
    for i in [1, 2] {
        let ex = witt(3, i).unwrap();
        let r = check_morphism(&ex.inclusion, &ex.sub.parent, &ex.full.parent);
        assert!(r.passed(), "i = {i}: {r}");
        assert!(check_twist(&ex.full.parent, &ex.full.twist).passed());
        let rm = r_matrix(&Twist::new(&ex.full.parent, ex.full.twist.clone()).unwrap()).unwrap();
        assert!(check_triangular(rm.parent(), &rm).passed());
    }
}

#[test]
fn twist_equation_expansion_decides_the_convention() {
    // At p = 2 the falling-factorial twist solves both orderings.
    let ex = two_dim(2).unwrap();
    let naive = common::Naive::new(&ex.parent);
    let (l, r) = naive.adopted_sides(&ex.twist);
    assert_eq!(l, r);
    let (pl, pr) = naive.printed_sides(&ex.twist);
    assert_eq!(pl, pr);
    let (ll, lr) = twist_sides(&ex.parent, &ex.twist).unwrap();
    assert_eq!((ll.to_dense(), lr.to_dense()), (l, r));
    // At p = 3 only (J⊗1)(Δ⊗id)(J) = (1⊗J)(id⊗Δ)(J) holds.
    let ex = two_dim(3).unwrap();
    let naive = common::Naive::new(&ex.parent);
    let (l, r) = naive.adopted_sides(&ex.twist);
    assert_eq!(l, r);
    let (pl, pr) = naive.printed_sides(&ex.twist);
    assert_ne!(pl, pr);
}

#[test]
fn orbit_of_the_unit_is_the_set_of_symmetric_twists() {
    let h = mu_n_group_algebra(2, Field::Fp(2));
    let one = h.algebra().unit_tensor(2);
    let orbit: HashSet<Vec<Scalar>> =
        gauge_elements(&h).unwrap().iter().map(|u| gauge_transform(&h, &one, u).unwrap().to_dense()).collect();
    let e = enumerate_twists(&h, DEFAULT_BUDGET).unwrap();
    let symmetric: HashSet<Vec<Scalar>> = e.twists.iter().filter(|j| j.swap21() == **j).map(|j| j.to_dense()).collect();
    assert_eq!(orbit, symmetric);
}

use super::*;
use crate::degeneracy::{is_nondegenerate, is_simple_matrix, radical, twisted_dual_verdict, Verdict};
use crate::hopf::{check_hopf, check_isomorphism};
use crate::twist::{check_twist, gauge_transform};

#[test]
fn group_constructors_satisfy_the_axioms() {
    for g in [GroupTable::dihedral(3), GroupTable::quaternion(), GroupTable::symmetric(3), GroupTable::klein4()] {
        assert_eq!(
            g.order(),
            if g.name() == Some("Z/2xZ/2") {
                4
            } else if g.order() == 6 {
                6
            } else {
                8
            }
        );
    }
    assert!(!GroupTable::dihedral(4).is_abelian());
    assert_eq!(GroupTable::klein4().exponent(), 2);
    assert!(GroupTable::new(2, vec![0, 0, 0, 1]).is_err());
    let json = GroupTable::dihedral(4).to_json();
    assert_eq!(GroupTable::from_json(&json).unwrap(), GroupTable::dihedral(4));
}

#[test]
fn order8_groups_are_pairwise_distinct() {
    let gs = order8_groups();
    for (i, a) in gs.iter().enumerate() {
        for (j, b) in gs.iter().enumerate() {
            assert_eq!(find_isomorphism(a, b).is_some(), i == j, "{:?} vs {:?}", a.name(), b.name());
        }
    }
    // Relabel D4 by a permutation and find it again.
    let d4 = GroupTable::dihedral(4);
    let perm = [3usize, 0, 7, 5, 1, 2, 6, 4];
    let mut inv = [0usize; 8];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let shuffled = GroupTable::from_fn(8, |a, b| perm[d4.mul(inv[a], inv[b])]).unwrap();
    assert_eq!(identify_order8(&shuffled).as_deref(), Some("D4"));
}

#[test]
fn constant_schemes() {
    let f3 = Field::Fp(3);
    let (fun, alg) = constant_hopf(&GroupTable::trivial(), f3);
    assert_eq!((fun.dim(), alg.dim()), (1, 1));
    for n in 1..=4 {
        let (fun, alg) = constant_hopf(&GroupTable::cyclic(n), Field::Fp(2));
        assert!(check_hopf(&fun).passed());
        assert!(check_hopf(&alg).passed());
        assert!(dual(&fun).same_tables(&alg));
        assert!(fun.is_commutative() && alg.is_cocommutative());
    }
    let (fun, _) = constant_hopf(&GroupTable::cyclic(2), f3);
    assert!(radical(fun.algebra()).is_empty());
    let (_, alg) = constant_hopf(&GroupTable::cyclic(2), Field::Fp(2));
    assert_eq!(radical(alg.algebra()).len(), 1);
}

#[test]
fn mu_and_alpha() {
    let f2 = Field::Fp(2);
    let mu2 = mu_n(2, f2);
    assert!(check_hopf(&mu2).passed());
    assert!(mu2.is_commutative() && mu2.is_cocommutative());
    let mu3 = mu_n(3, Field::Fp(3));
    assert!(dual(&mu3).same_tables(&functions(&GroupTable::cyclic(3), Field::Fp(3))));
    for p in [2, 3, 5] {
        let f = Field::Fp(p);
        let a = alpha_p(f).unwrap();
        assert!(check_hopf(&a).passed(), "alpha_{p}");
        let iso = alpha_p_self_duality(f).unwrap();
        assert!(check_isomorphism(&iso, &a, &dual(&a)).passed(), "alpha_{p} self-duality");
    }
    assert!(alpha_p(Field::Q).is_err());
}

#[test]
fn cartier_biduality() {
    let pair = CommutativePair::constant(&GroupTable::cyclic(3), Field::Fp(7)).unwrap();
    let back = pair.cartier_dual().cartier_dual();
    assert_eq!(back.hopf(), pair.hopf());
    assert_eq!(back.tag(), pair.tag());
    assert!(is_biduality_exact(&alpha_p(Field::Fp(3)).unwrap()));
    assert!(CommutativePair::new(
        crate::plie::enveloping(&crate::plie::catalog("nonabelian2", 3).unwrap()).unwrap(),
        "g"
    )
    .is_err());
}

fn heisenberg_verdict(pair: &CommutativePair) -> Verdict {
    let (parent, psi) = heisenberg_twist(pair).unwrap();
    assert!(check_twist(&parent, &psi).passed(), "{}", pair.tag());
    twisted_dual_verdict(&parent, &psi).unwrap().1
}

#[test]
fn heisenberg_twists_are_nondegenerate() {
    let z2 = CommutativePair::constant(&GroupTable::cyclic(2), Field::Fp(3)).unwrap();
    assert_eq!(heisenberg_verdict(&z2), Verdict::SimpleMatrix(2));
    assert_eq!(heisenberg_verdict(&z2.cartier_dual()), Verdict::SimpleMatrix(2));
    let a2 = CommutativePair::new(alpha_p(Field::Fp(2)).unwrap(), "alpha_2").unwrap();
    assert_eq!(heisenberg_verdict(&a2), Verdict::SimpleMatrix(2));
    assert_eq!(heisenberg_verdict(&a2.cartier_dual()), Verdict::SimpleMatrix(2));

    let triv = CommutativePair::constant(&GroupTable::trivial(), Field::Fp(3)).unwrap();
    let (parent, psi) = heisenberg_twist(&triv).unwrap();
    assert_eq!(parent.dim(), 1);
    assert_eq!(psi, SparseTensor::basis(Field::Fp(3), 1, &[0, 0], Field::Fp(3).one()));
    assert!(is_nondegenerate(&parent, &psi).unwrap());
}

#[test]
fn untwisted_function_algebra_is_degenerate() {
    let f = Field::Fp(2);
    let h = functions(&GroupTable::cyclic(2), f);
    let one = SparseTensor::from_vector(f, h.algebra().unit());
    let psi = one.outer(&one).unwrap();
    assert!(!is_nondegenerate(&h, &psi).unwrap());
    let c = crate::twist::twisted_coalgebra(&h, &psi).unwrap();
    assert_eq!(is_simple_matrix(&crate::degeneracy::dual_algebra(&c)).unwrap(), Verdict::Nonsemisimple);
}

#[test]
fn enumeration_on_the_field_finds_only_the_unit() {
    let h = HopfPresentation::trivial(Field::Fp(3));
    let e = enumerate_twists(&h, DEFAULT_BUDGET).unwrap();
    assert_eq!(e.twists.len(), 1);
    assert_eq!(e.orbit_count, 1);
}

#[test]
fn enumeration_for_k_mu2_is_one_orbit() {
    let f = Field::Fp(2);
    let h = mu_n_group_algebra(2, f);
    let e = enumerate_twists(&h, DEFAULT_BUDGET).unwrap();
    assert_eq!(e.candidates, 16);
    assert_eq!(e.orbit_count, 1);
    let one = SparseTensor::from_vector(f, h.algebra().unit());
    assert_eq!(e.orbit_of(&one.outer(&one).unwrap()), Some(0));
}

#[test]
fn enumeration_over_f2_sees_a_rational_class_on_o_mu2() {
    // J = 1 + t⊗t with t = 1 + g is (u⊗u)Δ(u)⁻¹ for u = 1 + ωt over F_4
    // but not over F_2, whose only gauge elements are group-likes.
    let h = mu_n(2, Field::Fp(2));
    let e = enumerate_twists(&h, DEFAULT_BUDGET).unwrap();
    assert_eq!(e.orbit_count, 2);
    assert_eq!(e.gauge_count, 2);
}

#[test]
fn enumeration_is_closed_under_gauge() {
    let h = mu_n_group_algebra(3, Field::Fp(2));
    let e = enumerate_twists(&h, 1 << 9).unwrap();
    for j in &e.twists {
        for u in gauge_elements(&h).unwrap() {
            let moved = gauge_transform(&h, j, &u).unwrap();
            assert_eq!(e.orbit_of(&moved), e.orbit_of(j));
        }
    }
}

#[test]
fn enumeration_respects_the_budget() {
    let h = mu_n(4, Field::Fp(3));
    match enumerate_twists(&h, DEFAULT_BUDGET) {
        Err(Error::BudgetExceeded { required, .. }) => assert_eq!(required, 43_046_721),
        other => panic!("{other:?}"),
    }
}

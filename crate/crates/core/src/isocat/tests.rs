use super::*;
use crate::commutative::group_algebra;

fn f3() -> Field {
    Field::Fp(3)
}

/// D4 as `r^k s^e ↦ k + 4e`: `r² = 2`, `s = 4`, `r²s = 6`.
fn d4_klein() -> NormalAbelianEmbedding {
    NormalAbelianEmbedding::new(f3(), GroupTable::dihedral(4), &[0, 2, 4, 6]).unwrap()
}

#[test]
fn embeddings() {
    let center = NormalAbelianEmbedding::new(f3(), GroupTable::dihedral(4), &[0, 2]).unwrap();
    assert!(check_embedding(&center).passed());
    assert_eq!(center.quotient().unwrap().order(), 4);
    assert!(check_embedding(&d4_klein()).passed());
    // {1, (0 1)} in S3 is not normal.
    let s3 = GroupTable::symmetric(3);
    let t = (0..6).find(|&x| x != s3.identity() && s3.element_order(x) == 2).unwrap();
    let bad = NormalAbelianEmbedding::new(f3(), s3, &[0, t]).unwrap();
    let r = check_embedding(&bad);
    assert!(!r.get("normal").unwrap().passed);
    let not_closed = NormalAbelianEmbedding::new(f3(), GroupTable::cyclic(4), &[0, 1]).unwrap();
    assert!(!check_embedding(&not_closed).get("subgroup").unwrap().passed);
}

#[test]
fn characters_of_klein_four() {
    let e = d4_klein();
    let chars = characters(&e).unwrap();
    assert_eq!(chars.len(), 4);
    assert!(chars.values()[0].iter().all(|v| v.is_one()));
    let over_f2 = NormalAbelianEmbedding::new(Field::Fp(2), GroupTable::klein4(), &[0, 1, 2, 3]).unwrap();
    assert!(matches!(characters(&over_f2), Err(Error::Unsupported(_))));
    let z3_f5 = NormalAbelianEmbedding::new(Field::Fp(5), GroupTable::cyclic(3), &[0, 1, 2]).unwrap();
    assert!(matches!(characters(&z3_f5), Err(Error::Unsupported(_))));
}

#[test]
fn skew_forms() {
    let e = d4_klein();
    let std = standard_form(&e).unwrap();
    assert!(check_skew_form(&e, &std).passed());
    let trivial = SkewForm::trivial(f3(), 4);
    let r = check_skew_form(&e, &trivial);
    assert!(!r.get("nondegenerate").unwrap().passed);
    // The diagonal pairing χ_i(a_j) style: symmetric, nondegenerate, not alternating.
    let chars = characters(&e).unwrap();
    let basis = abelian_basis(chars.table());
    let c = coordinates(chars.table(), &basis);
    let diag = SkewForm {
        values: (0..4)
            .map(|x| {
                (0..4)
                    .map(|y| f3().from_i64(if (c[x][0] * c[y][0] + c[x][1] * c[y][1]) % 2 == 1 { -1 } else { 1 }))
                    .collect()
            })
            .collect(),
    };
    let r = check_skew_form(&e, &diag);
    assert!(r.get("bimultiplicative").unwrap().passed);
    assert!(r.get("nondegenerate").unwrap().passed);
    assert!(!r.get("alternating").unwrap().passed);
}

#[test]
fn cyclic_of_order_two_has_no_symplectic_form() {
    let e = NormalAbelianEmbedding::new(f3(), GroupTable::cyclic(2), &[0, 1]).unwrap();
    assert!(matches!(standard_form(&e), Err(Error::Unsupported(_))));
    // Alternating and bimultiplicative on Z/2 forces R ≡ 1.
    let r = check_skew_form(&e, &SkewForm::trivial(f3(), 2));
    assert!(!r.passed());
}

#[test]
fn trivial_subgroup_gives_the_unit_twist() {
    let e = NormalAbelianEmbedding::new(f3(), GroupTable::cyclic(3), &[0]).unwrap();
    assert!(check_embedding(&e).passed());
    let r = SkewForm::trivial(f3(), 1);
    assert!(check_skew_form(&e, &r).passed());
    let j = twist_from_form(&e, &r).unwrap();
    assert_eq!(j, SparseTensor::basis(f3(), 3, &[0, 0], f3().one()));
    let t = tau(&e, &j).unwrap();
    let g_b = build_g_b(&e, &t.b).unwrap();
    assert_eq!(g_b.table(), e.group().table());
    assert!(verify_isocategorical(&e, &j, &t, &g_b).passed());
}

#[test]
fn abelian_group_with_a_equal_to_g() {
    let e = NormalAbelianEmbedding::new(f3(), GroupTable::klein4(), &[0, 1, 2, 3]).unwrap();
    let r = standard_form(&e).unwrap();
    let j = twist_from_form(&e, &r).unwrap();
    let kg = group_algebra(e.group(), f3());
    assert!(check_twist(&kg, &j).passed());
    let t = tau(&e, &j).unwrap();
    assert_eq!(t.z.len(), 1);
    assert!(t.b.iter().flatten().all(|&x| x == 0));
    let g_b = build_g_b(&e, &t.b).unwrap();
    assert_eq!(g_b.table(), e.group().table());
    let r = verify_isocategorical(&e, &j, &t, &g_b);
    assert!(r.passed(), "{r}");
}

#[test]
fn dihedral_pipeline_end_to_end() {
    let e = d4_klein();
    let r = standard_form(&e).unwrap();
    let j = twist_from_form(&e, &r).unwrap();
    let kg = group_algebra(e.group(), f3());
    assert!(check_twist(&kg, &j).passed());
    let t = tau(&e, &j).unwrap();
    let g_b = build_g_b(&e, &t.b).unwrap();
    assert_eq!(g_b.order(), 8);
    assert!(identify_order8(&g_b).is_some());
    let report = verify_isocategorical(&e, &j, &t, &g_b);
    assert!(report.passed(), "{report}");

    // Coboundary shift: move z on coset 1 by s.
    let shift: Vec<usize> = (0..e.coset_count()).map(|c| if c == 0 { 0 } else { 4 }).collect();
    let t2 = t.shifted(&e, &shift).unwrap();
    let g_b2 = build_g_b(&e, &t2.b).unwrap();
    assert!(find_isomorphism(&g_b, &g_b2).is_some());
    assert!(verify_isocategorical(&e, &j, &t2, &g_b2).passed());
}

#[test]
fn section_choice_does_not_change_the_isomorphism_type() {
    let e = d4_klein();
    let other: Vec<usize> = (0..e.coset_count())
        .map(|c| (0..8).rev().find(|&x| e.coset_of(x) == c).unwrap())
        .map(|x| if e.coset_of(x) == 0 { 0 } else { x })
        .collect();
    let e2 = d4_klein().with_section(other).unwrap();
    let r = standard_form(&e).unwrap();
    let run = |e: &NormalAbelianEmbedding| {
        let j = twist_from_form(e, &r).unwrap();
        let t = tau(e, &j).unwrap();
        let g_b = build_g_b(e, &t.b).unwrap();
        assert!(verify_isocategorical(e, &j, &t, &g_b).passed());
        g_b
    };
    assert!(find_isomorphism(&run(&e), &run(&e2)).is_some());
}

#[test]
fn corrupted_twist_has_no_cochain() {
    let e = d4_klein();
    let r = standard_form(&e).unwrap();
    let j = twist_from_form(&e, &r).unwrap();
    let chars = characters(&e).unwrap();
    let mut f = tensor_to_function(&e, &chars, &j).unwrap();
    f[1][2] = -f[1][2];
    let bad = function_to_tensor(&e, &chars, &f);
    assert!(matches!(tau(&e, &bad), Err(Error::Consistency(_))));
}

#[test]
fn omitting_z_breaks_the_phi_law() {
    let e = d4_klein();
    let r = standard_form(&e).unwrap();
    let j = twist_from_form(&e, &r).unwrap();
    let t = tau(&e, &j).unwrap();
    let unit = group_algebra(e.group(), f3()).algebra().unit().to_vec();
    assert!(t.z.iter().skip(1).any(|z| z != &unit));
    let id = Matrix::identity(f3(), 8);
    let g_b = build_g_b(&e, &t.b).unwrap();
    let report = verify_phi(&e, &j, &t.b, &id, &g_b);
    assert!(!report.get("phi comultiplicative").unwrap().passed);

    // r·s·r⁻¹ = r²s, so shifting z by s on the r-coset makes b̃ nontrivial.
    let t = t.shifted(&e, &[0, 4]).unwrap();
    assert!(t.b.iter().flatten().any(|&x| x != 0));
    let g_b = build_g_b(&e, &t.b).unwrap();
    let report = verify_phi(&e, &j, &t.b, &id, &g_b);
    assert!(!report.get("phi law").unwrap().passed);
    assert!(verify_isocategorical(&e, &j, &t, &g_b).passed());
}

#[test]
fn pipeline_stages_and_json() {
    let e = d4_klein();
    let mut input = PipelineJson::new(&e, FormSpec::Named("standard".into()));
    input.shift = Some(vec![0, 4]);
    let text = serde_json::to_string(&input).unwrap();
    let back: PipelineJson = serde_json::from_str(&text).unwrap();
    let out = run_pipeline(&back).unwrap();
    assert!(out.passed(), "{:?}", out.failed_stage);
    assert_eq!(out.stages.len(), 6);
    assert_eq!(out.shifted_isomorphic, Some(true));
    assert!(out.g_b_type.is_some());

    let s3 = GroupTable::symmetric(3);
    let nn = NormalAbelianEmbedding::new(f3(), s3, &[0, 1]).unwrap();
    let out = run_pipeline(&PipelineJson::new(&nn, FormSpec::Named("standard".into()))).unwrap();
    assert_eq!(out.failed_stage, Some(0));

    let out = run_pipeline(&PipelineJson::new(&e, FormSpec::Table(vec![vec![1; 4]; 4]))).unwrap();
    assert_eq!(out.failed_stage, Some(1));

    let bad = PipelineJson::new(&e, FormSpec::Named("nope".into()));
    assert!(matches!(run_pipeline(&bad), Err(Error::Input(_))));
}

use std::collections::BTreeSet;

use proptest::prelude::*;
use realdp::dp4::*;
use realdp::linalg::Matrix;
use realdp::Rational;

fn sv(b: [u8; 5]) -> SignVector {
    SignVector::of(b)
}

fn tau() -> [usize; 5] {
    perm_from_cycles(&[&[2, 3], &[4, 5]])
}

/// Dimension of the subspace fixed by every element and by σ.
fn fixed_dim(group: &BTreeSet<DP4Element>, form: &DP4RealForm) -> usize {
    let id = Matrix::<Rational>::identity(6);
    let mut rows = Vec::new();
    for g in group {
        rows.extend(dp4_matrix(g, form, false).sub(&id).rows_vec());
    }
    rows.extend(dp4_matrix(&DP4Element::identity(), form, true).sub(&id).rows_vec());
    Matrix::from_rows(rows).kernel().len()
}

#[test]
fn trace_rank_matches_fixed_space_on_every_ambient_subgroup() {
    for label in DP4RealForm::LABELS {
        let form = DP4RealForm::named(label).unwrap();
        for h in all_subgroups(&default_ambient(&form)) {
            assert_eq!(dp4_invariant_rank(&h, &form).unwrap(), fixed_dim(&h, &form), "{label}");
        }
    }
}

#[test]
fn sphere_case_contains_every_listed_group() {
    let form = DP4RealForm::named("q31_02").unwrap();
    let found = enumerate_strongly_minimal(&form, &default_ambient(&form)).unwrap();
    let types: BTreeSet<&str> = found.iter().map(|r| r.iso_type.as_str()).collect();
    for t in ["Z/2", "(Z/2)^2", "(Z/2)^3", "Z/4", "(Z/2)^2⋊Z/2", "(Z/2)^3⋊Z/2"] {
        assert!(types.contains(t), "{t}");
    }
    let alpha1 = DP4Element::sign_only(sv([1, 0, 1, 1, 1]));
    let alpha2 = DP4Element::sign_only(sv([1, 1, 0, 1, 1]));
    let z2: Vec<_> = found.iter().filter(|r| r.order == 2).collect();
    assert_eq!(z2.len(), 1);
    assert!(z2[0].members.contains(&alpha1) || z2[0].members.contains(&alpha2));
    let z4 = found.iter().find(|r| r.iso_type == "Z/4").unwrap();
    assert_eq!(z4.members, closure(&[DP4Element::new(sv([1, 0, 1, 1, 1]), tau())]));
}

// Two rank-one subgroups avoid both α_1 and α_2 without being cyclic; the
// case analysis for non-cyclic G assumes (0, τ) ∈ G.
#[test]
fn sphere_case_groups_without_alpha() {
    let form = DP4RealForm::named("q31_02").unwrap();
    let alpha = [DP4Element::sign_only(sv([1, 0, 1, 1, 1])), DP4Element::sign_only(sv([1, 1, 0, 1, 1]))];
    let found = enumerate_strongly_minimal(&form, &default_ambient(&form)).unwrap();
    let odd: Vec<&str> = found
        .iter()
        .filter(|r| r.iso_type != "Z/4" && !alpha.iter().any(|a| r.members.contains(a)))
        .map(|r| r.iso_type.as_str())
        .collect();
    assert_eq!(odd, vec!["Z/2×Z/4", "(Z/2)^2⋊Z/2"]);

    let g = closure(&[DP4Element::sign_only(sv([0, 0, 0, 1, 1])), DP4Element::new(sv([1, 0, 1, 0, 0]), tau())]);
    assert_eq!(g.len(), 8);
    assert!(!g.contains(&DP4Element::perm_only(tau())));
    assert!(g.iter().all(|x| form.commutes(x)));
    assert_eq!(g.iter().filter(|x| x.order() == 4).count(), 4);
    assert_eq!(fixed_dim(&g, &form), 1);
}

#[test]
fn no_minimal_groups_on_p2_12() {
    let form = DP4RealForm::named("p2_12").unwrap();
    assert!(enumerate_strongly_minimal(&form, &default_ambient(&form)).unwrap().is_empty());
}

#[test]
fn order_four_groups_on_p2_31() {
    let form = DP4RealForm::named("p2_31").unwrap();
    let g = |vs: [[u8; 5]; 4]| -> BTreeSet<DP4Element> { vs.iter().map(|&b| DP4Element::sign_only(sv(b))).collect() };
    let expected: BTreeSet<BTreeSet<DP4Element>> = [
        g([[0, 0, 0, 0, 0], [0, 1, 1, 0, 0], [1, 0, 1, 1, 1], [1, 1, 0, 1, 1]]),
        g([[0, 0, 0, 0, 0], [1, 1, 0, 0, 0], [0, 1, 1, 1, 1], [1, 0, 1, 1, 1]]),
        g([[0, 0, 0, 0, 0], [1, 0, 1, 0, 0], [0, 1, 1, 1, 1], [1, 1, 0, 1, 1]]),
    ]
    .into_iter()
    .collect();
    let found: BTreeSet<BTreeSet<DP4Element>> = enumerate_strongly_minimal(&form, &default_ambient(&form))
        .unwrap()
        .into_iter()
        .filter(|r| r.order == 4)
        .map(|r| r.members)
        .collect();
    assert_eq!(found, expected);
    for h in &expected {
        let signs: BTreeSet<SignVector> = h.iter().map(|e| e.sign).collect();
        assert!(delta_criterion(&signs, &form).unwrap());
    }
}

#[test]
fn shortcuts_agree_with_rank() {
    let p231 = DP4RealForm::named("p2_31").unwrap();
    let q22 = DP4RealForm::named("q22_02").unwrap();
    let q31 = DP4RealForm::named("q31_02").unwrap();
    for h in subgroups_of_a() {
        let els = sign_group(&h.iter().copied().collect::<Vec<_>>());
        assert_eq!(delta_criterion(&h, &q22).unwrap(), dp4_invariant_rank(&els, &q22).unwrap() == 1);
        if els.iter().all(|e| p231.commutes(e)) {
            assert_eq!(delta_criterion(&h, &p231).unwrap(), dp4_invariant_rank(&els, &p231).unwrap() == 1);
        }
        if els.iter().all(|e| q31.commutes(e)) && star_condition(&h) {
            assert!(dp4_invariant_rank(&els, &q31).unwrap() > 1);
        }
    }
}

#[test]
fn shortcut_examples() {
    let q22 = DP4RealForm::named("q22_02").unwrap();
    let h: BTreeSet<SignVector> = [sv([0; 5]), sv([1, 1, 0, 0, 0])].into_iter().collect();
    assert!(!delta_criterion(&h, &q22).unwrap());
    let trivial: BTreeSet<SignVector> = [sv([0; 5])].into_iter().collect();
    assert!(!delta_criterion(&trivial, &q22).unwrap());
    assert!(matches!(delta_criterion(&trivial, &DP4RealForm::named("split").unwrap()), Err(Dp4Error::UnsupportedForm(_))));
    assert!(star_condition(&[sv([0; 5]), sv([0, 1, 1, 1, 1])].into_iter().collect()));
    assert!(!star_condition(&[sv([0; 5]), sv([1, 0, 1, 1, 1])].into_iter().collect()));
    let split = DP4RealForm::named("split").unwrap();
    assert_eq!(dp4_invariant_rank(&closure(&[]), &split).unwrap(), 6);
}

fn element() -> impl Strategy<Value = DP4Element> {
    (0usize..16, Just(vec![0usize, 1, 2, 3, 4]).prop_shuffle())
        .prop_map(|(a, p)| DP4Element::new(SignVector::all()[a], [p[0], p[1], p[2], p[3], p[4]]))
}

proptest! {
    #[test]
    fn matrices_respect_the_group_law(x in element(), y in element()) {
        prop_assert_eq!(x.mul(&y).matrix(), x.matrix().mul(&y.matrix()));
    }

    #[test]
    fn twice_minus_k_is_fixed(x in element()) {
        let v = x.matrix().apply(&[2, 0, 0, 0, 0, 0]);
        prop_assert_eq!(v, vec![2, 0, 0, 0, 0, 0]);
    }
}

//! Randomised invariants: algebra/term/relation laws that must hold for every
//! input, checked over random operation tables, terms, seeds, and split
//! pullbacks.

use proptest::prelude::*;

use finalg::algebra::{induced_subalgebra, product, product_projection, product_tuple};
use finalg::builtin;
use finalg::format::{parse_algebra_file, render_algebra};
use finalg::maltsev::{joint_epicity_check, JointEpicityOutcome};
use finalg::relation::classify_relation;
use finalg::term::{build_wm_quasi_identity, check_identity, check_quasi_identity, Identity};
use finalg::{
    compatible_closure, compose, enumerate_homomorphisms, split_pullback, subalgebra_generated,
    FiniteAlgebra, Homomorphism, Signature, Term,
};

fn mul_algebra(size: usize, table: Vec<usize>) -> FiniteAlgebra {
    FiniteAlgebra::new(
        format!("rand{size}"),
        Signature::of(&[("mul", 2)]),
        size,
        None,
        vec![table],
    )
    .unwrap()
}

/// A random algebra with one binary operation on 2 or 3 elements.
fn algebra() -> impl Strategy<Value = FiniteAlgebra> {
    (2usize..=3).prop_flat_map(|n| {
        proptest::collection::vec(0..n, n * n).prop_map(move |table| mul_algebra(n, table))
    })
}

/// A random term over `mul` in variables x, y, z.
fn term() -> impl Strategy<Value = Term> {
    let leaf = (0usize..3).prop_map(Term::var);
    leaf.prop_recursive(3, 16, 2, |inner| {
        (inner.clone(), inner).prop_map(|(l, r)| Term::app("mul", vec![l, r]))
    })
}

/// Random seed pairs for a relation on an n-element carrier.
fn seeds(n: usize) -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::collection::vec((0..n, 0..n), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn evaluation_commutes_with_endomorphisms(
        (alg, t, env) in algebra().prop_flat_map(|alg| {
            let n = alg.size();
            (Just(alg), term(), proptest::collection::vec(0..n, 3))
        })
    ) {
        for h in enumerate_homomorphisms(&alg, &alg, &[]).unwrap() {
            let mapped: Vec<usize> = env.iter().map(|&v| h.apply(v)).collect();
            prop_assert_eq!(
                h.apply(t.eval(&alg, &env).unwrap()),
                t.eval(&alg, &mapped).unwrap(),
                "endomorphism {} does not commute with {}", h, t
            );
        }
    }

    #[test]
    fn evaluation_commutes_with_projections(
        (x, y, t, env) in (algebra(), algebra()).prop_flat_map(|(x, y)| {
            let bound = x.size() * y.size();
            (Just(x), Just(y), term(), proptest::collection::vec(0..bound, 3))
        })
    ) {
        let prod = product(&[&x, &y]).unwrap();
        let sizes = [x.size(), y.size()];
        for (j, factor) in [&x, &y].into_iter().enumerate() {
            let proj = product_projection(&prod, &[&x, &y], j);
            let projected: Vec<usize> = env.iter().map(|&v| product_tuple(&sizes, v)[j]).collect();
            prop_assert_eq!(proj.apply(t.eval(&prod, &env).unwrap()), t.eval(factor, &projected).unwrap());
        }
    }

    #[test]
    fn identities_hold_on_a_product_iff_on_both_factors(
        x in algebra(), y in algebra(), lhs in term(), rhs in term()
    ) {
        let id = Identity::new(lhs, rhs);
        let on_x = check_identity(&x, &id).unwrap().is_none();
        let on_y = check_identity(&y, &id).unwrap().is_none();
        let prod = product(&[&x, &y]).unwrap();
        let on_prod = check_identity(&prod, &id).unwrap().is_none();
        prop_assert_eq!(on_prod, on_x && on_y);
    }

    #[test]
    fn quasi_identities_pass_to_subalgebras(
        (alg, w1, w2, seed) in algebra().prop_flat_map(|alg| {
            let n = alg.size();
            (Just(alg), term(), term(), proptest::collection::vec(0..n, 1..3))
        })
    ) {
        let qi = build_wm_quasi_identity(&w1, &w2).unwrap();
        if check_quasi_identity(&alg, &qi).unwrap().is_none() {
            let elements = subalgebra_generated(&alg, &seed).unwrap();
            let (sub, _) = induced_subalgebra(&alg, &elements, "sub").unwrap();
            prop_assert!(
                check_quasi_identity(&sub, &qi).unwrap().is_none(),
                "quasi-identity {} holds on {} but fails on a subalgebra", qi, alg
            );
        }
    }

    #[test]
    fn difunctionality_matches_the_zigzag_characterisation(
        (alg, seed) in algebra().prop_flat_map(|alg| {
            let n = alg.size();
            (Just(alg), seeds(n))
        })
    ) {
        let r = compatible_closure(&alg, &alg, &seed).unwrap();
        let verdict = classify_relation(&r).difunctional.is_ok();
        let zigzag = compose(&compose(&r, &r.inverse()).unwrap(), &r).unwrap();
        let contained = zigzag.pairs().into_iter().all(|(x, y)| r.contains(x, y));
        prop_assert_eq!(verdict, contained, "difunctional ⇔ R;R⁻¹;R ⊆ R fails for {:?}", r.pairs());
    }

    #[test]
    fn relation_composition_is_associative(
        (alg, s1, s2, s3) in algebra().prop_flat_map(|alg| {
            let n = alg.size();
            (Just(alg), seeds(n), seeds(n), seeds(n))
        })
    ) {
        let r = compatible_closure(&alg, &alg, &s1).unwrap();
        let s = compatible_closure(&alg, &alg, &s2).unwrap();
        let t = compatible_closure(&alg, &alg, &s3).unwrap();
        let left = compose(&compose(&r, &s).unwrap(), &t).unwrap();
        let right = compose(&r, &compose(&s, &t).unwrap()).unwrap();
        prop_assert!(left.same_pairs(&right));
    }

    #[test]
    fn inversion_is_an_involution_and_antihomomorphism(
        (alg, s1, s2) in algebra().prop_flat_map(|alg| {
            let n = alg.size();
            (Just(alg), seeds(n), seeds(n))
        })
    ) {
        let r = compatible_closure(&alg, &alg, &s1).unwrap();
        let s = compatible_closure(&alg, &alg, &s2).unwrap();
        prop_assert!(r.inverse().inverse().same_pairs(&r));
        let lhs = compose(&r, &s).unwrap().inverse();
        let rhs = compose(&s.inverse(), &r.inverse()).unwrap();
        prop_assert!(lhs.same_pairs(&rhs));
    }

    #[test]
    fn algebra_files_round_trip(
        (alg, label) in algebra().prop_flat_map(|alg| {
            let n = alg.size();
            (Just(alg), proptest::option::of(proptest::collection::vec("[a-z]{1,3}", n..=n)))
        })
    ) {
        // Attach optional labels (they must be distinct to stay resolvable).
        let alg = match label {
            Some(ls) if ls.iter().collect::<std::collections::HashSet<_>>().len() == ls.len() => {
                FiniteAlgebra::new(
                    alg.name(),
                    alg.signature().clone(),
                    alg.size(),
                    Some(ls),
                    vec![alg.table(0).to_vec()],
                )
                .unwrap()
            }
            _ => alg,
        };
        let parsed = parse_algebra_file(&render_algebra(&alg)).unwrap();
        prop_assert!(parsed.same_structure(&alg));
        prop_assert_eq!(parsed.name(), alg.name());
        prop_assert_eq!(parsed.labels(), alg.labels());
    }

    #[test]
    fn generated_sections_are_jointly_epic(
        (b_size, a_tail, c_tail) in (1usize..=2).prop_flat_map(|b| {
            (
                Just(b),
                proptest::collection::vec(0..b, 0..=2),
                proptest::collection::vec(0..b, 0..=2),
            )
        })
    ) {
        let a_size = b_size + a_tail.len();
        let c_size = b_size + c_tail.len();
        let mut fmap: Vec<usize> = (0..b_size).collect();
        fmap.extend(&a_tail);
        let mut gmap: Vec<usize> = (0..b_size).collect();
        gmap.extend(&c_tail);
        let a = builtin::set(a_size);
        let b = builtin::set(b_size);
        let c = builtin::set(c_size);
        let section: Vec<usize> = (0..b_size).collect();
        let f = Homomorphism::new(a.clone(), b.clone(), fmap).unwrap();
        let r = Homomorphism::new(b.clone(), a, section.clone()).unwrap();
        let g = Homomorphism::new(c.clone(), b.clone(), gmap).unwrap();
        let s = Homomorphism::new(b, c, section).unwrap();
        let spd = split_pullback(&f, &r, &g, &s).unwrap();
        prop_assume!(spd.e.size() <= 9);
        let image: Vec<usize> = spd.e1.map().iter().chain(spd.e2.map()).copied().collect();
        let generated = subalgebra_generated(&spd.e, &image).unwrap().len() == spd.e.size();
        for d in [builtin::set(2), builtin::set(3)] {
            let outcome = joint_epicity_check(&spd, &d).unwrap();
            if generated {
                prop_assert_eq!(outcome, JointEpicityOutcome::JointlyEpic);
            } else {
                let collided = matches!(outcome, JointEpicityOutcome::Collision { .. });
                prop_assert!(collided, "non-generated sections should admit a collision");
            }
        }
    }
}

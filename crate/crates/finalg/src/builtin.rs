//! Built-in algebras: the two implication algebras A and B with their
//! comparison homomorphisms, small groups, the two-chain semilattice, and
//! bare sets, so that every worked example runs without external data.

use crate::algebra::{FiniteAlgebra, Homomorphism, Signature};
use crate::term::Identity;

fn labeled(name: &str, table: Vec<usize>, labels: &[&str]) -> FiniteAlgebra {
    FiniteAlgebra::new(
        name,
        Signature::of(&[("mul", 2)]),
        labels.len(),
        Some(labels.iter().map(|s| s.to_string()).collect()),
        vec![table],
    )
    .expect("built-in algebra is valid")
}

/// The two-element implication algebra: 1·1 = 1, 1·2 = 2, 2·1 = 1, 2·2 = 1.
/// Labels "1", "2" name indices 0, 1.
pub fn mitschke_a() -> FiniteAlgebra {
    labeled("A", vec![0, 1, 0, 0], &["1", "2"])
}

/// The three-element implication algebra extending A; labels "1", "2", "3"
/// name indices 0, 1, 2 and the multiplication rows are 1 2 3 / 1 1 3 / 1 2 1.
pub fn mitschke_b() -> FiniteAlgebra {
    labeled("B", vec![0, 1, 2, 0, 0, 2, 0, 1, 0], &["1", "2", "3"])
}

/// The homomorphism f: B → A with kernel classes {1, 2} and {3}.
pub fn mitschke_f() -> Homomorphism {
    Homomorphism::new(mitschke_b(), mitschke_a(), vec![0, 0, 1]).expect("f is a homomorphism")
}

/// The homomorphism g: B → A with kernel classes {1, 3} and {2}.
pub fn mitschke_g() -> Homomorphism {
    Homomorphism::new(mitschke_b(), mitschke_a(), vec![0, 1, 0]).expect("g is a homomorphism")
}

/// The three defining identities of implication algebras:
/// (xy)x = x, (xy)y = (yx)x, x(yz) = y(xz).
pub fn implication_identities() -> Vec<Identity> {
    [
        ("(mul (mul x y) x)", "x"),
        ("(mul (mul x y) y)", "(mul (mul y x) x)"),
        ("(mul x (mul y z))", "(mul y (mul x z))"),
    ]
    .iter()
    .map(|(lhs, rhs)| Identity::parse(lhs, rhs).expect("built-in identity parses"))
    .collect()
}

fn cyclic_group(name: &str, n: usize) -> FiniteAlgebra {
    let signature = Signature::of(&[("add", 2), ("neg", 1), ("zero", 0)]);
    let mut add = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push((a + b) % n);
        }
    }
    let neg = (0..n).map(|a| (n - a) % n).collect();
    FiniteAlgebra::new(name, signature, n, None, vec![add, neg, vec![0]])
        .expect("cyclic group tables are valid")
}

/// The group Z₂ in the signature (add, neg, zero).
pub fn z2() -> FiniteAlgebra {
    cyclic_group("Z2", 2)
}

/// The group Z₃ in the signature (add, neg, zero).
pub fn z3() -> FiniteAlgebra {
    cyclic_group("Z3", 3)
}

/// The two-chain meet-semilattice 0 < 1 with the single operation `meet`.
pub fn semilattice2() -> FiniteAlgebra {
    FiniteAlgebra::new(
        "semilattice2",
        Signature::of(&[("meet", 2)]),
        2,
        None,
        vec![vec![0, 0, 0, 1]],
    )
    .expect("semilattice table is valid")
}

/// An n-element set: the empty signature.
pub fn set(n: usize) -> FiniteAlgebra {
    FiniteAlgebra::new(format!("set{n}"), Signature::empty(), n, None, vec![])
        .expect("a bare set is a valid algebra")
}

/// Independently tabulated solution sets of the simultaneous system behind
/// [`crate::maltsev::wm_solution_table`] on [`mitschke_a`], flat over the
/// tabulation's own index triple (first index most significant). The
/// tabulation's variable convention differs from `wm_solution_table`'s by
/// exchanging the roles of the second and third index: entry `(a, b, c)`
/// here answers the table's query `(a, c, b)`. `None` marks an unsolvable
/// triple.
pub fn wm_reference_a() -> Vec<Option<usize>> {
    vec![
        Some(0),
        Some(0),
        Some(1),
        Some(0),
        Some(1),
        Some(0),
        None,
        Some(1),
    ]
}

/// The counterpart of [`wm_reference_a`] for [`mitschke_b`], same layout and
/// index convention.
pub fn wm_reference_b() -> Vec<Option<usize>> {
    vec![
        Some(0),
        Some(0),
        Some(0),
        Some(1),
        Some(0),
        Some(1),
        Some(2),
        Some(2),
        Some(0),
        Some(1),
        Some(0),
        Some(1),
        None,
        Some(1),
        None,
        None,
        Some(2),
        Some(1),
        Some(2),
        Some(2),
        Some(0),
        None,
        Some(2),
        Some(1),
        None,
        None,
        Some(2),
    ]
}

/// Look up a built-in algebra by its command-line name.
pub fn by_name(name: &str) -> Option<FiniteAlgebra> {
    match name {
        "A" | "a" => Some(mitschke_a()),
        "B" | "b" => Some(mitschke_b()),
        "z2" | "Z2" => Some(z2()),
        "z3" | "Z3" => Some(z3()),
        "semilattice2" => Some(semilattice2()),
        _ => name
            .strip_prefix("set")
            .and_then(|digits| digits.parse::<usize>().ok())
            .filter(|&n| n > 0)
            .map(set),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::check_identity;

    #[test]
    fn b_restricts_to_a_on_the_first_two_elements() {
        let a = mitschke_a();
        let b = mitschke_b();
        for x in 0..2 {
            for y in 0..2 {
                assert_eq!(a.apply(0, &[x, y]), b.apply(0, &[x, y]));
            }
        }
    }

    #[test]
    fn implication_identities_hold_on_a_and_b() {
        for alg in [mitschke_a(), mitschke_b()] {
            for identity in implication_identities() {
                assert_eq!(check_identity(&alg, &identity).unwrap(), None, "{identity}");
            }
        }
    }

    #[test]
    fn homomorphism_labels_read_back() {
        let b = mitschke_b();
        assert_eq!(b.label(2), "3");
        assert_eq!(b.element_by_label("3"), Some(2));
        let f = mitschke_f();
        assert_eq!(f.apply(2), 1);
    }

    #[test]
    fn registry_resolves_names() {
        assert_eq!(by_name("B").unwrap().size(), 3);
        assert_eq!(by_name("set4").unwrap().size(), 4);
        assert!(by_name("set0").is_none());
        assert!(by_name("nope").is_none());
    }
}

//! A tour of the relation calculus: kernel pairs, relational composition,
//! alternating chains, closures, and classification.
//!
//! Relations here are always compatible (subalgebras of a product), stored as
//! bit matrices. Composition is left-to-right: x R;S z iff x R y and y S z
//! for some y.

use finalg::relation::{classify_relation, congruence_closure, partition_classes};
use finalg::{alternating_chain, builtin, compose, kernel_pair, CompatibleRelation, Error};

fn show(rel: &CompatibleRelation) -> String {
    let left = rel.left();
    let right = rel.right();
    rel.pairs()
        .iter()
        .map(|&(x, y)| format!("({},{})", left.label(x), right.label(y)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn show_classes(rel: &CompatibleRelation) -> String {
    partition_classes(rel)
        .iter()
        .map(|class| {
            let inner: Vec<String> = class.iter().map(|&x| rel.left().label(x)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn main() -> Result<(), Error> {
    // Two retractions of the three-element implication algebra onto the
    // two-element one...
    let b = builtin::mitschke_b();
    let f = builtin::mitschke_f();
    let g = builtin::mitschke_g();
    println!("f = {f}");
    println!("g = {g}");

    // ...whose kernels are congruences on the three-element algebra.
    let r = kernel_pair(&f);
    let s = kernel_pair(&g);
    println!("R = ker f, classes {}", show_classes(&r));
    println!("S = ker g, classes {}", show_classes(&s));

    // The two composites differ, so R and S do not 2-permute.
    let rs = compose(&r, &s)?;
    let sr = compose(&s, &r)?;
    println!("R;S = {}", show(&rs));
    println!("S;R = {}", show(&sr));
    for (x, y) in rs.pairs() {
        if !sr.contains(x, y) {
            println!("  ({},{}) lies in R;S but not in S;R", b.label(x), b.label(y));
        }
    }

    // One step further the alternating chains agree: R;S;R = S;R;S, which is
    // 3-permutability of this pair.
    for n in 2..=3 {
        let rsr = alternating_chain(&r, &s, n)?;
        let srs = alternating_chain(&s, &r, n)?;
        println!(
            "alternating chains of length {n} {}",
            if rsr.same_pairs(&srs) { "agree" } else { "differ" }
        );
    }

    // Congruence closure of a single pair.
    let theta = congruence_closure(&b, &[(0, 2)])?;
    println!(
        "congruence generated by ({},{}): classes {}",
        b.label(0),
        b.label(2),
        show_classes(&theta)
    );

    // Classification of a few relations on the same carrier.
    println!();
    for (name, rel) in [
        ("diagonal", CompatibleRelation::diagonal(&b)),
        ("full", CompatibleRelation::full(&b, &b)?),
        ("ker f", r),
        ("R;S", rs),
    ] {
        let cls = classify_relation(&rel);
        println!(
            "{name:<10} reflexive={:?} symmetric={:?} transitive={:?} difunctional={} equivalence={:?}",
            cls.reflexive.map(|v| v.is_ok()),
            cls.symmetric.map(|v| v.is_ok()),
            cls.transitive.map(|v| v.is_ok()),
            cls.difunctional.is_ok(),
            cls.equivalence,
        );
    }
    Ok(())
}

//! Categories versus groupoids on finite carriers.
//!
//! An internal category here is a reflexive graph (d, c: C1 → C0 with common
//! section e) plus a multiplication m on the object of composable pairs
//! satisfying the unit, domain and codomain laws. The dossier below asks, for
//! each structure: how many multiplications exist at all, is the one at hand
//! associative, is it cancellable, and does an inverse exist — the latter via
//! two independent routes that must agree.

use finalg::internal::{
    cancellability_check, check_category, find_multiplications, groupoid_inverse,
    one_object_category, pair_groupoid, relation_groupoid, AssociativityOutcome, InternalCategory,
    InverseMode,
};
use finalg::{builtin, CompatibleRelation, Error};

fn dossier(title: &str, ic: &InternalCategory) -> Result<(), Error> {
    println!("== {title} ==");
    println!(
        "arrows: {}, objects: {}, composable pairs: {}",
        ic.graph.c1.size(),
        ic.graph.c0.size(),
        ic.pairs.e.size()
    );

    let search = find_multiplications(&ic.graph)?;
    println!(
        "multiplications on this graph: {}{}",
        search.multiplications.len(),
        if search.exhaustive { " (exhaustive search)" } else { " (search truncated)" }
    );

    match check_category(ic) {
        AssociativityOutcome::Associative { triples } => {
            println!("associative over all {triples} composable triples");
        }
        AssociativityOutcome::Violation { triple, left, right } => {
            println!("NOT associative at {triple:?}: {left} ≠ {right}");
            println!();
            return Ok(());
        }
    }

    let canc = cancellability_check(ic);
    for (side, verdict) in [("left", &canc.left), ("right", &canc.right)] {
        match verdict {
            Ok(()) => println!("{side}-cancellable"),
            Err((p, q)) => println!("not {side}-cancellable: pairs {p:?} and {q:?} collide"),
        }
    }

    let direct = groupoid_inverse(ic, InverseMode::Direct)?;
    let theorem = groupoid_inverse(ic, InverseMode::ThmRoute)?;
    match (&direct, &theorem) {
        (Some(d), Some(t)) => {
            println!("inverse found by direct search:    t = {:?}", d.t.map());
            println!("inverse found by the theorem path: t = {:?}", t.t.map());
            println!(
                "groupoid: YES (routes {})",
                if d.t.equal_map(&t.t) { "agree" } else { "DISAGREE" }
            );
        }
        (None, None) => println!("no inverse exists (both routes agree): a category, not a groupoid"),
        _ => println!("ROUTES DISAGREE: direct={:?} theorem={:?}", direct.is_some(), theorem.is_some()),
    }
    println!();
    Ok(())
}

fn main() -> Result<(), Error> {
    // The pair groupoid of a three-element set: arrows are ordered pairs,
    // (u, v)·(v, w) = (u, w). The unique multiplication, and a groupoid.
    dossier("pair groupoid of a 3-element set", &pair_groupoid(&builtin::set(3))?)?;

    // A one-object category from the meet monoid on {0, 1} with unit 1:
    // associative but idempotent, so cancellation fails and no inverse exists.
    dossier(
        "meet monoid as a one-object category",
        &one_object_category(builtin::semilattice2().table(0), 1)?,
    )?;

    // The groupoid of an equivalence relation: arrows are related pairs.
    // Taking the full relation on Z3 makes every hom compatible, so the
    // structure is an internal groupoid in the variety of groups.
    let z3 = builtin::z3();
    let full = CompatibleRelation::full(&z3, &z3)?;
    dossier("full equivalence relation on Z3", &relation_groupoid(&full)?)?;
    Ok(())
}

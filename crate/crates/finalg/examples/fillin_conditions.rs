//! Fill-in uniqueness for split pullbacks.
//!
//! Start from a double split epimorphism: f: A → B with section r, g: C → B
//! with section s, pulled back to E with projections p1, p2 and induced
//! sections e1: A → E, e2: C → E. Two questions about maps out of E:
//!
//!  * given a span (d, c) on an apex X and maps α, β, γ into its legs
//!    agreeing appropriately, how many φ: E → X fill the diagram in?
//!  * are e1, e2 jointly a pushout of r and s — i.e. does every compatible
//!    pair (α, γ) into every test algebra admit exactly one fill-in?

use finalg::algebra::product_projection;
use finalg::internal::{
    condition_v_check, pushout_of_sections_check, trivial_span, FillInClassification,
    FillInFlavor, PushoutOutcome, Span,
};
use finalg::{builtin, product, split_pullback, Error, Homomorphism, SplitPullbackDiagram};

/// The square of Z3 pulled back along its first-coordinate projection, with
/// the first-coordinate insertion as section on both sides.
fn affine_square() -> Result<SplitPullbackDiagram, Error> {
    let z3 = builtin::z3();
    let zz = product(&[&z3, &z3])?;
    let proj = product_projection(&zz, &[&z3, &z3], 0);
    let insert = Homomorphism::new(z3.clone(), zz.clone(), (0..3).map(|u| u * 3).collect())?;
    split_pullback(&proj, &insert, &proj, &insert)
}

/// The 2×2 square of bare sets: both epimorphisms collapse a two-element set
/// to a point.
fn set_square() -> Result<SplitPullbackDiagram, Error> {
    let two = builtin::set(2);
    let one = builtin::set(1);
    let bang = Homomorphism::new(two.clone(), one.clone(), vec![0, 0])?;
    let pick = Homomorphism::new(one, two, vec![0])?;
    split_pullback(&bang, &pick, &bang, &pick)
}

fn main() -> Result<(), Error> {
    // In the affine world the fill-in is unique. The span is the product
    // span of Z3×Z3; α is the identity, γ a compatible collapse.
    let spd = affine_square()?;
    let z3 = builtin::z3();
    let zz = product(&[&z3, &z3])?;
    let span = Span::new(
        product_projection(&zz, &[&z3, &z3], 0),
        product_projection(&zz, &[&z3, &z3], 1),
    )?;
    let alpha = Homomorphism::identity(&zz);
    let beta = Homomorphism::new(z3.clone(), zz.clone(), (0..3).map(|u| u * 3).collect())?;
    let gamma = Homomorphism::new(
        zz.clone(),
        zz.clone(),
        (0..9).map(|i| ((i / 3 + i % 3) % 3) * 3).collect(),
    )?;
    println!("== affine square, relation flavor ==");
    match condition_v_check(&spd, &span, &alpha, &beta, &gamma, FillInFlavor::Relation)? {
        FillInClassification::Unique(phi) => println!("exactly one fill-in: {:?}", phi.map()),
        FillInClassification::NoFillIn => println!("no fill-in"),
        FillInClassification::Multiple(p, q) => {
            println!("multiple fill-ins: {:?} and {:?}", p.map(), q.map())
        }
    }
    println!();

    // Over bare sets the element of E off both section images is pinned by
    // nothing, so fill-ins multiply.
    let spd = set_square()?;
    let two = builtin::set(2);
    let span = trivial_span(&two)?;
    let alpha = Homomorphism::new(spd.a.clone(), two.clone(), vec![0, 0])?;
    let beta = Homomorphism::new(spd.b.clone(), two.clone(), vec![0])?;
    let gamma = Homomorphism::new(spd.c.clone(), two, vec![0, 0])?;
    println!("== 2×2 set square, span flavor ==");
    match condition_v_check(&spd, &span, &alpha, &beta, &gamma, FillInFlavor::Span)? {
        FillInClassification::Unique(phi) => println!("exactly one fill-in: {:?}", phi.map()),
        FillInClassification::NoFillIn => println!("no fill-in"),
        FillInClassification::Multiple(p, q) => {
            println!("multiple fill-ins: {:?} and {:?}", p.map(), q.map())
        }
    }
    println!();

    // The pushout question, batch-tested against a battery of codomains.
    println!("== are (e1, e2) a pushout of (r, s)? ==");
    let affine = affine_square()?;
    match pushout_of_sections_check(&affine, &[z3, zz])? {
        PushoutOutcome::ConsistentWithPushout { pairs_checked } => println!(
            "affine square: consistent with the pushout property \
             ({pairs_checked} compatible (α, γ) pairs, one fill-in each)"
        ),
        PushoutOutcome::NotPushout(failure) => {
            println!("affine square: NOT a pushout on {}", failure.algebra)
        }
    }
    let sets = set_square()?;
    match pushout_of_sections_check(&sets, &[builtin::set(2)])? {
        PushoutOutcome::ConsistentWithPushout { pairs_checked } => {
            println!("set square: consistent ({pairs_checked} pairs)")
        }
        PushoutOutcome::NotPushout(failure) => {
            println!(
                "set square: NOT a pushout — on {} the pair α = {:?}, γ = {:?} admits {} fill-ins",
                failure.algebra,
                failure.alpha.map(),
                failure.gamma.map(),
                failure.fill_ins.len()
            );
        }
    }
    Ok(())
}

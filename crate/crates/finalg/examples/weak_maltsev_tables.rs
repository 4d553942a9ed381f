//! Solution tables for weak Mal'tsev membership.
//!
//! Fix two ternary terms w1, w2. For each triple (a, b, c) the table records
//! every x solving the simultaneous system
//!
//!   w1(x, a, b) = w2(a, b, c)   and   w2(b, c, x) = w1(a, b, c).
//!
//! When w1, w2 come from a 3-permutable chain, an algebra of the variety lies
//! in the weakly Mal'tsev quasivariety exactly when every solution set has at
//! most one element — equivalently, when the matching quasi-identity holds.

use finalg::maltsev::wm_solution_table;
use finalg::term::{build_wm_quasi_identity, check_quasi_identity};
use finalg::{builtin, product, Error, FiniteAlgebra, Term};

fn print_table(alg: &FiniteAlgebra, w1: &Term, w2: &Term) -> Result<(), Error> {
    let table = wm_solution_table(alg, w1, w2)?;
    println!("== {} ==", alg.name());
    for ([a, b, c], xs) in &table.triples {
        let sols: Vec<String> = xs.iter().map(|&x| alg.label(x)).collect();
        println!(
            "  (a,b,c) = ({},{},{})   x ∈ {{{}}}",
            alg.label(*a),
            alg.label(*b),
            alg.label(*c),
            sols.join(",")
        );
    }
    println!(
        "  every solution set has at most one element: {}",
        if table.member { "yes — weakly Mal'tsev" } else { "NO" }
    );
    println!();
    Ok(())
}

fn main() -> Result<(), Error> {
    // The 3-permutability chain of implication algebras: w1 = (zy)x,
    // w2 = (xy)z, written with explicit application.
    let w1 = Term::parse("(mul (mul z y) x)")?;
    let w2 = Term::parse("(mul (mul x y) z)")?;
    println!("w1 = {w1}");
    println!("w2 = {w2}");
    println!();

    let a = builtin::mitschke_a();
    let b = builtin::mitschke_b();
    print_table(&a, &w1, &w2)?;
    print_table(&b, &w1, &w2)?;

    // The same test as a quasi-identity: uniqueness of x is an implication
    // between equations, so it survives subalgebras and products.
    let qi = build_wm_quasi_identity(&w1, &w2)?;
    println!("as a quasi-identity:");
    println!("  {qi}");
    let ab = product(&[&a, &b])?;
    for alg in [&a, &b, &ab] {
        let verdict = match check_quasi_identity(alg, &qi)? {
            None => "holds".to_string(),
            Some(env) => format!("FAILS at {env:?}"),
        };
        let count = alg.size().pow(qi.num_vars() as u32);
        println!("  on {:<10} {verdict} ({count} assignments)", alg.name());
    }
    Ok(())
}

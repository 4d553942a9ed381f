//! Detectors for congruence-permutability conditions: least-n n-permutability
//! with witness term chains, permutability counterexamples, compatible
//! preorder scans, and uniqueness tables for the weak-Mal'tsev system.

use std::collections::HashMap;
use std::ops::ControlFlow;

use itertools::Itertools;

use crate::algebra::{
    all_tuples, enumerate_homomorphisms, FiniteAlgebra, HomSearch, SearchEnd, SplitPullbackDiagram,
};
use crate::free::{free_algebra_with_limits, VarietySpec};
use crate::relation::{
    alternating_chain, classify_relation, congruence_closure, compatible_closure, compose,
    kernel_pair, BitMat, CompatibleRelation,
};
use crate::term::{Identity, Term};
use crate::{Error, Limits};

/// Outcome of the n-permutability decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermutabilityOutcome {
    /// Least n with a full witness chain w₁..w_{n−1}.
    NPermutable { n: usize, terms: Vec<Term> },
    /// The powers of the generating relation stabilised without ever
    /// containing (z, x); no n can work.
    NotPermutableForAnyN { fixpoint_exponent: usize },
    /// The search bound was reached first; never a wrong verdict.
    Unknown { reason: String },
}

/// Decision plus diagnostics: the free-algebra size and the sizes of the
/// computed relation powers |R|, |R²|, ….
#[derive(Clone, Debug)]
pub struct PermutabilityVerdict {
    pub outcome: PermutabilityOutcome,
    pub free_size: usize,
    pub relation_sizes: Vec<usize>,
}

/// Subalgebra closure in F×F that remembers, for every pair, the ternary
/// term (over the seed slots) that produced it.
fn tracked_closure(
    f: &FiniteAlgebra,
    seeds: &[((usize, usize), Term)],
) -> Result<(CompatibleRelation, HashMap<(usize, usize), Term>), Error> {
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut depth: Vec<usize> = Vec::new();
    let mut terms: HashMap<(usize, usize), Term> = HashMap::new();
    for (pair, term) in seeds {
        if !terms.contains_key(pair) {
            terms.insert(*pair, term.clone());
            pairs.push(*pair);
            depth.push(0);
        }
    }
    let mut round = 0;
    loop {
        let mut added = false;
        let current = pairs.len();
        for (op, sym) in f.signature().ops().iter().enumerate() {
            for tuple in all_tuples(current, sym.arity) {
                let max_d = tuple.iter().map(|&i| depth[i]).max().unwrap_or(0);
                if sym.arity > 0 && max_d != round || sym.arity == 0 && round > 0 {
                    continue;
                }
                let lefts: Vec<usize> = tuple.iter().map(|&i| pairs[i].0).collect();
                let rights: Vec<usize> = tuple.iter().map(|&i| pairs[i].1).collect();
                let pair = (f.apply(op, &lefts), f.apply(op, &rights));
                if !terms.contains_key(&pair) {
                    let term = Term::App {
                        op: sym.name.clone(),
                        args: tuple.iter().map(|&i| terms[&pairs[i]].clone()).collect(),
                    };
                    terms.insert(pair, term);
                    pairs.push(pair);
                    depth.push(round + 1);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
        round += 1;
    }
    let mut bits = BitMat::new(f.size(), f.size());
    for &(x, y) in &pairs {
        bits.set(x, y);
    }
    Ok((
        CompatibleRelation::new(f.clone(), f.clone(), bits)?,
        terms,
    ))
}

/// Shortest R-path from `from` to `to` (deterministic: neighbours in
/// ascending element order).
fn shortest_path(r: &CompatibleRelation, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = r.left().size();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut cur = to;
            while let Some(p) = parent[cur] {
                path.push(p);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for v in 0..n {
            if r.contains(u, v) && !seen[v] {
                seen[v] = true;
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    None
}

/// The chain equations of a term chain w₁..w_{n−1}:
/// w₁(x,z,z) = x, wᵢ(x,x,z) = wᵢ₊₁(x,z,z), w_{n−1}(x,x,z) = z.
pub fn hm_chain_equations(terms: &[Term]) -> Result<Vec<(Term, Term)>, Error> {
    if terms.is_empty() {
        return Err(Error::Precondition("empty term chain".into()));
    }
    let (x, z) = (Term::Var(0), Term::Var(2));
    let xzz = [x.clone(), z.clone(), z.clone()];
    let xxz = [x.clone(), x.clone(), z.clone()];
    let mut eqs = Vec::with_capacity(terms.len() + 1);
    eqs.push((terms[0].substitute(&xzz)?, x.clone()));
    for i in 1..terms.len() {
        eqs.push((terms[i - 1].substitute(&xxz)?, terms[i].substitute(&xzz)?));
    }
    eqs.push((terms[terms.len() - 1].substitute(&xxz)?, z.clone()));
    Ok(eqs)
}

/// Transcript of an exhaustive chain verification: the equations and, per
/// algebra, the number of (x,y,z) assignments checked for each of them.
#[derive(Clone, Debug)]
pub struct HmVerification {
    pub equations: Vec<(Term, Term)>,
    pub assignments: Vec<(String, usize)>,
}

/// Verify the chain equations of `terms` exhaustively on every algebra;
/// an equation failure is an error carrying the witness assignment.
pub fn verify_hm_chain(
    algebras: &[FiniteAlgebra],
    terms: &[Term],
) -> Result<HmVerification, Error> {
    let equations = hm_chain_equations(terms)?;
    let mut assignments = Vec::with_capacity(algebras.len());
    for alg in algebras {
        let per_equation = alg.size().pow(3);
        for (lhs, rhs) in &equations {
            for env in all_tuples(alg.size(), 3) {
                if lhs.eval(alg, &env)? != rhs.eval(alg, &env)? {
                    return Err(Error::Verification(format!(
                        "chain equation {} fails on {} at (x,y,z) = ({},{},{})",
                        Identity::new(lhs.clone(), rhs.clone()),
                        alg.name(),
                        alg.label(env[0]),
                        alg.label(env[1]),
                        alg.label(env[2]),
                    )));
                }
            }
        }
        assignments.push((alg.name().to_string(), per_equation));
    }
    Ok(HmVerification {
        equations,
        assignments,
    })
}

pub fn find_hm_terms(spec: &VarietySpec, max_n: usize) -> Result<PermutabilityVerdict, Error> {
    find_hm_terms_with_limits(spec, max_n, &Limits::default())
}

pub fn find_hm_terms_with_limits(
    spec: &VarietySpec,
    max_n: usize,
    limits: &Limits,
) -> Result<PermutabilityVerdict, Error> {
    let Some(gens) = spec.generator_algebras() else {
        return Ok(PermutabilityVerdict {
            outcome: PermutabilityOutcome::Unknown {
                reason: "equationally presented class: exact free algebras unavailable".into(),
            },
            free_size: 0,
            relation_sizes: vec![],
        });
    };
    if max_n < 2 {
        return Err(Error::Precondition("max_n must be at least 2".into()));
    }
    let free = free_algebra_with_limits(spec, 2, limits)?;
    let (gx, gz) = (free.generators[0], free.generators[1]);
    let f = &free.algebra;
    let seeds = [
        ((gx, gx), Term::Var(0)),
        ((gx, gz), Term::Var(1)),
        ((gz, gz), Term::Var(2)),
    ];
    let (relation, terms) = tracked_closure(f, &seeds)?;
    if let Some(i) = (0..f.size()).find(|&i| !relation.contains(i, i)) {
        return Err(Error::Verification(format!(
            "generating relation not reflexive at element {}",
            f.label(i)
        )));
    }

    let mut relation_sizes = vec![relation.len()];
    let mut power = relation.clone();
    let mut n = 2;
    loop {
        if power.contains(gz, gx) {
            // (z, x) ∈ R^{n−1}: read off the chain from a shortest R-path.
            let path = shortest_path(&relation, gz, gx)
                .ok_or_else(|| Error::Verification("path vanished from power".into()))?;
            let hops = path.len() - 1;
            let real_n = hops.max(1) + 1; // degenerate x = z still yields n = 2
            let mut chain = Vec::with_capacity(hops.max(1));
            if hops == 0 {
                chain.push(terms[&(gz, gx)].clone());
            } else {
                // wᵢ is the term of the link ending at u_{n−i}.
                for i in 1..=hops {
                    let link = (path[hops - i], path[hops - i + 1]);
                    chain.push(terms[&link].clone());
                }
            }
            verify_hm_chain(gens, &chain)?;
            return Ok(PermutabilityVerdict {
                outcome: PermutabilityOutcome::NPermutable {
                    n: real_n,
                    terms: chain,
                },
                free_size: f.size(),
                relation_sizes,
            });
        }
        let next = compose(&power, &relation)?;
        if next.same_pairs(&power) {
            return Ok(PermutabilityVerdict {
                outcome: PermutabilityOutcome::NotPermutableForAnyN {
                    fixpoint_exponent: n - 1,
                },
                free_size: f.size(),
                relation_sizes,
            });
        }
        n += 1;
        if n > max_n {
            return Ok(PermutabilityVerdict {
                outcome: PermutabilityOutcome::Unknown {
                    reason: format!("no decision up to n = {max_n}"),
                },
                free_size: f.size(),
                relation_sizes,
            });
        }
        relation_sizes.push(next.len());
        power = next;
    }
}

/// A pair of congruences whose alternating chains of length n differ.
#[derive(Clone, Debug)]
pub struct PermutabilityCounterexample {
    pub r: CompatibleRelation,
    pub s: CompatibleRelation,
    pub n: usize,
    /// Pairs in (R,S)ₙ but not (S,R)ₙ.
    pub only_in_rs: Vec<(usize, usize)>,
    /// Pairs in (S,R)ₙ but not (R,S)ₙ.
    pub only_in_sr: Vec<(usize, usize)>,
}

/// Deduplicated congruence candidates: Δ, the full relation, kernels of all
/// endomorphisms, and all principal congruences; sorted by size then pair
/// order for a deterministic scan.
pub fn congruence_candidates(alg: &FiniteAlgebra) -> Result<Vec<CompatibleRelation>, Error> {
    let mut out = vec![
        CompatibleRelation::diagonal(alg),
        CompatibleRelation::full(alg, alg)?,
    ];
    for h in enumerate_homomorphisms(alg, alg, &[])? {
        out.push(kernel_pair(&h));
    }
    for a in 0..alg.size() {
        for b in a + 1..alg.size() {
            out.push(congruence_closure(alg, &[(a, b)])?);
        }
    }
    out.sort_by_key(|r| (r.len(), r.pairs()));
    out.dedup_by(|a, b| a.same_pairs(b));
    Ok(out)
}

/// Search candidate congruence pairs for (R,S)ₙ ≠ (S,R)ₙ; first witness in
/// the deterministic candidate order, or none.
pub fn permutability_counterexample(
    alg: &FiniteAlgebra,
    n: usize,
) -> Result<Option<PermutabilityCounterexample>, Error> {
    let candidates = congruence_candidates(alg)?;
    for (i, r) in candidates.iter().enumerate() {
        for (j, s) in candidates.iter().enumerate() {
            if i == j {
                continue;
            }
            let rs = alternating_chain(r, s, n)?;
            let sr = alternating_chain(s, r, n)?;
            if !rs.same_pairs(&sr) {
                let only_in_rs = rs
                    .pairs()
                    .into_iter()
                    .filter(|&(x, y)| !sr.contains(x, y))
                    .collect();
                let only_in_sr = sr
                    .pairs()
                    .into_iter()
                    .filter(|&(x, y)| !rs.contains(x, y))
                    .collect();
                return Ok(Some(PermutabilityCounterexample {
                    r: r.clone(),
                    s: s.clone(),
                    n,
                    only_in_rs,
                    only_in_sr,
                }));
            }
        }
    }
    Ok(None)
}

/// A compatible preorder that is not symmetric.
#[derive(Clone, Debug)]
pub struct PreorderCounterexample {
    pub relation: CompatibleRelation,
    pub asymmetric_pair: (usize, usize),
}

pub fn preorder_symmetry_scan(
    alg: &FiniteAlgebra,
) -> Result<Option<PreorderCounterexample>, Error> {
    preorder_symmetry_scan_with_limits(alg, &Limits::default())
}

/// Enumerate compatible reflexive relations as closures of Δ ∪ seed over all
/// off-diagonal seed sets in increasing size, deduplicate, and return the
/// first transitive non-symmetric one.
pub fn preorder_symmetry_scan_with_limits(
    alg: &FiniteAlgebra,
    limits: &Limits,
) -> Result<Option<PreorderCounterexample>, Error> {
    let n = alg.size();
    let off_diag: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y)
        .collect();
    let diagonal: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    let mut seen: std::collections::HashSet<BitMat> = std::collections::HashSet::new();
    let mut processed = 0usize;
    for size in 0..=off_diag.len() {
        for seed in off_diag.iter().combinations(size) {
            if processed >= limits.max_seeds {
                return Err(Error::ResourceBound {
                    what: "preorder seed sets".into(),
                    budget: limits.max_seeds,
                    reached: processed,
                });
            }
            processed += 1;
            let mut pairs = diagonal.clone();
            pairs.extend(seed.iter().copied());
            let rel = compatible_closure(alg, alg, &pairs)?;
            if !seen.insert(rel.bits().clone()) {
                continue;
            }
            let c = classify_relation(&rel);
            if c.preorder == Some(true) {
                if let Some(Err(pair)) = c.symmetric {
                    return Ok(Some(PreorderCounterexample {
                        relation: rel,
                        asymmetric_pair: pair,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Exhaustive solution table of the simultaneous system
/// `w1(x,a,b) = w2(a,b,c)` and `w2(b,c,x) = w1(a,b,c)` over all triples.
#[derive(Clone, Debug)]
pub struct WmTable {
    pub size: usize,
    /// `(a,b,c)` in lexicographic order with the sorted solution set for x.
    pub triples: Vec<([usize; 3], Vec<usize>)>,
    /// True iff every solution set has at most one element.
    pub member: bool,
}

impl WmTable {
    pub fn solution(&self, a: usize, b: usize, c: usize) -> &[usize] {
        &self.triples[(a * self.size + b) * self.size + c].1
    }
}

pub fn wm_solution_table(
    alg: &FiniteAlgebra,
    w1: &Term,
    w2: &Term,
) -> Result<WmTable, Error> {
    for (name, w) in [("w1", w1), ("w2", w2)] {
        if w.vars().into_iter().any(|v| v > 2) {
            return Err(Error::Precondition(format!(
                "{name} must be ternary (variables x, y, z)"
            )));
        }
    }
    let n = alg.size();
    let mut triples = Vec::with_capacity(n * n * n);
    let mut member = true;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut solutions = Vec::new();
                for x in 0..n {
                    let eq1 = w1.eval(alg, &[x, a, b])? == w2.eval(alg, &[a, b, c])?;
                    let eq2 = w2.eval(alg, &[b, c, x])? == w1.eval(alg, &[a, b, c])?;
                    if eq1 && eq2 {
                        solutions.push(x);
                    }
                }
                if solutions.len() > 1 {
                    member = false;
                }
                triples.push(([a, b, c], solutions));
            }
        }
    }
    Ok(WmTable {
        size: n,
        triples,
        member,
    })
}

/// Whether the pullback sections of a double split epimorphism are jointly
/// epimorphic with respect to one codomain algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JointEpicityOutcome {
    JointlyEpic,
    /// Two distinct homomorphisms E → D agreeing on Im e₁ ∪ Im e₂.
    Collision { phi1: Vec<usize>, phi2: Vec<usize> },
}

pub fn joint_epicity_check(
    spd: &SplitPullbackDiagram,
    d: &FiniteAlgebra,
) -> Result<JointEpicityOutcome, Error> {
    joint_epicity_check_with_limits(spd, d, &Limits::default())
}

pub fn joint_epicity_check_with_limits(
    spd: &SplitPullbackDiagram,
    d: &FiniteAlgebra,
    limits: &Limits,
) -> Result<JointEpicityOutcome, Error> {
    let mut image: Vec<usize> = spd.e1.map().iter().chain(spd.e2.map()).copied().collect();
    image.sort_unstable();
    image.dedup();
    let mut search = HomSearch::new(&spd.e, d);
    search.max_nodes = limits.max_nodes;
    let mut groups: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut collision: Option<(Vec<usize>, Vec<usize>)> = None;
    let end = search.visit(&mut |map| {
        let key: Vec<usize> = image.iter().map(|&i| map[i]).collect();
        match groups.get(&key) {
            Some(prev) if prev != map => {
                collision = Some((prev.clone(), map.to_vec()));
                ControlFlow::Break(())
            }
            Some(_) => ControlFlow::Continue(()),
            None => {
                groups.insert(key, map.to_vec());
                ControlFlow::Continue(())
            }
        }
    })?;
    match end {
        SearchEnd::Budget => Err(Error::ResourceBound {
            what: "fill-in enumeration nodes".into(),
            budget: limits.max_nodes,
            reached: limits.max_nodes,
        }),
        SearchEnd::Stopped => {
            let (phi1, phi2) = collision.expect("collision recorded before stop");
            Ok(JointEpicityOutcome::Collision { phi1, phi2 })
        }
        SearchEnd::Exhausted => Ok(JointEpicityOutcome::JointlyEpic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{product, product_index, product_projection, Homomorphism};
    use crate::builtin;
    use crate::term::{build_wm_quasi_identity, check_quasi_identity};

    #[test]
    fn z3_is_two_permutable_with_maltsev_term() {
        let spec = VarietySpec::generated(vec![builtin::z3()]);
        let verdict = find_hm_terms(&spec, 10).unwrap();
        assert_eq!(verdict.free_size, 9);
        assert_eq!(verdict.relation_sizes[0], 27);
        match verdict.outcome {
            PermutabilityOutcome::NPermutable { n, ref terms } => {
                assert_eq!(n, 2);
                assert_eq!(terms.len(), 1);
                verify_hm_chain(&[builtin::z3()], terms).unwrap();
            }
            other => panic!("expected 2-permutable, got {other:?}"),
        }
    }

    #[test]
    fn implication_algebras_are_three_permutable() {
        let gens = vec![builtin::mitschke_a(), builtin::mitschke_b()];
        let spec = VarietySpec::generated(gens.clone());
        let verdict = find_hm_terms(&spec, 10).unwrap();
        assert_eq!(verdict.free_size, 6);
        match verdict.outcome {
            PermutabilityOutcome::NPermutable { n, ref terms } => {
                assert_eq!(n, 3);
                assert_eq!(terms.len(), 2);
                verify_hm_chain(&gens, terms).unwrap();
            }
            other => panic!("expected 3-permutable, got {other:?}"),
        }
    }

    #[test]
    fn papers_goursat_pair_passes_the_chain_verifier() {
        let w1 = Term::parse("(mul (mul z y) x)").unwrap();
        let w2 = Term::parse("(mul (mul x y) z)").unwrap();
        let gens = [builtin::mitschke_a(), builtin::mitschke_b()];
        let report = verify_hm_chain(&gens, &[w1, w2]).unwrap();
        assert_eq!(report.equations.len(), 3);
        assert_eq!(
            report.assignments,
            vec![("A".to_string(), 8), ("B".to_string(), 27)]
        );
    }

    #[test]
    fn maltsev_term_fails_chain_on_implication_algebras() {
        // No single term can do it: the variety is not 2-permutable.
        let w1 = Term::parse("(mul (mul z y) x)").unwrap();
        let gens = [builtin::mitschke_a(), builtin::mitschke_b()];
        assert!(verify_hm_chain(&gens, &[w1]).is_err());
    }

    #[test]
    fn semilattice_is_not_permutable_for_any_n() {
        let spec = VarietySpec::generated(vec![builtin::semilattice2()]);
        let verdict = find_hm_terms(&spec, 10).unwrap();
        assert_eq!(verdict.free_size, 3);
        assert_eq!(verdict.relation_sizes, vec![6]);
        assert_eq!(
            verdict.outcome,
            PermutabilityOutcome::NotPermutableForAnyN {
                fixpoint_exponent: 1
            }
        );
    }

    #[test]
    fn one_element_generator_degenerates_to_maltsev() {
        let pt = FiniteAlgebra::terminal("pt", builtin::semilattice2().signature().clone());
        let spec = VarietySpec::generated(vec![pt.clone()]);
        let verdict = find_hm_terms(&spec, 5).unwrap();
        match verdict.outcome {
            PermutabilityOutcome::NPermutable { n, ref terms } => {
                assert_eq!(n, 2);
                verify_hm_chain(&[pt], terms).unwrap();
            }
            other => panic!("expected degenerate 2-permutability, got {other:?}"),
        }
    }

    #[test]
    fn small_bound_gives_unknown() {
        let spec = VarietySpec::generated(vec![builtin::mitschke_a(), builtin::mitschke_b()]);
        let verdict = find_hm_terms(&spec, 2).unwrap();
        assert!(matches!(
            verdict.outcome,
            PermutabilityOutcome::Unknown { .. }
        ));
    }

    #[test]
    fn counterexample_on_b_splits_the_documented_pairs() {
        let b = builtin::mitschke_b();
        let found = permutability_counterexample(&b, 2).unwrap().unwrap();
        // ker f and ker g in one order or the other.
        let rf = kernel_pair(&builtin::mitschke_f());
        let rg = kernel_pair(&builtin::mitschke_g());
        assert!(
            (found.r.same_pairs(&rf) && found.s.same_pairs(&rg))
                || (found.r.same_pairs(&rg) && found.s.same_pairs(&rf))
        );
        let mut split = found.only_in_rs.clone();
        split.extend(&found.only_in_sr);
        split.sort_unstable();
        assert_eq!(split, vec![(1, 2), (2, 1)]);
        assert_eq!(found.only_in_rs.len(), 1);
        assert_eq!(found.only_in_sr.len(), 1);
    }

    #[test]
    fn no_counterexample_on_z3() {
        assert!(permutability_counterexample(&builtin::z3(), 2)
            .unwrap()
            .is_none());
    }

    #[test]
    fn chains_agree_at_the_join() {
        // Large n: both chains reach the common fixpoint.
        let b = builtin::mitschke_b();
        assert!(permutability_counterexample(&b, 6).unwrap().is_none());
    }

    #[test]
    fn preorder_scan_finds_the_two_chain_order() {
        let sl = builtin::semilattice2();
        let found = preorder_symmetry_scan(&sl).unwrap().unwrap();
        assert_eq!(found.asymmetric_pair, (0, 1));
        assert_eq!(found.relation.pairs(), vec![(0, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn preorder_scan_clean_on_z3_and_point() {
        assert!(preorder_symmetry_scan(&builtin::z3()).unwrap().is_none());
        let pt = FiniteAlgebra::terminal("pt", builtin::z3().signature().clone());
        assert!(preorder_symmetry_scan(&pt).unwrap().is_none());
    }

    #[test]
    fn preorder_scan_budget_is_a_distinct_outcome() {
        let sl = builtin::semilattice2();
        let limits = Limits {
            max_seeds: 1,
            ..Limits::default()
        };
        assert!(matches!(
            preorder_symmetry_scan_with_limits(&sl, &limits),
            Err(Error::ResourceBound { .. })
        ));
    }

    fn goursat_terms() -> (Term, Term) {
        (
            Term::parse("(mul (mul z y) x)").unwrap(),
            Term::parse("(mul (mul x y) z)").unwrap(),
        )
    }

    #[test]
    fn wm_table_on_a_matches_the_hand_oracle() {
        let a = builtin::mitschke_a();
        let (w1, w2) = goursat_terms();
        let table = wm_solution_table(&a, &w1, &w2).unwrap();
        assert!(table.member);
        // Hand-computed solution sets, 0-based, keyed (a,b,c).
        let expect: Vec<([usize; 3], Vec<usize>)> = vec![
            ([0, 0, 0], vec![0]),
            ([0, 0, 1], vec![1]),
            ([0, 1, 0], vec![0]),
            ([0, 1, 1], vec![0]),
            ([1, 0, 0], vec![1]),
            ([1, 0, 1], vec![]),
            ([1, 1, 0], vec![0]),
            ([1, 1, 1], vec![1]),
        ];
        assert_eq!(table.triples, expect);
    }

    #[test]
    fn wm_table_on_b_has_unique_solutions() {
        let b = builtin::mitschke_b();
        let (w1, w2) = goursat_terms();
        let table = wm_solution_table(&b, &w1, &w2).unwrap();
        assert!(table.member);
        assert_eq!(table.triples.len(), 27);
        // Spot checks from the hand oracle (0-based).
        assert_eq!(table.solution(0, 0, 1), &[1]);
        assert_eq!(table.solution(1, 0, 1), &[] as &[usize]);
        assert_eq!(table.solution(2, 2, 0), &[0]);
        assert_eq!(table.solution(2, 0, 2), &[] as &[usize]);
    }

    #[test]
    fn wm_verdict_equals_quasi_identity_check() {
        let (w1, w2) = goursat_terms();
        let qi = build_wm_quasi_identity(&w1, &w2).unwrap();
        let proj = FiniteAlgebra::new(
            "proj2",
            crate::algebra::Signature::of(&[("mul", 2)]),
            2,
            None,
            vec![vec![0, 0, 1, 1]],
        )
        .unwrap();
        for alg in [builtin::mitschke_a(), builtin::mitschke_b(), proj] {
            let table = wm_solution_table(&alg, &w1, &w2).unwrap();
            let qi_holds = check_quasi_identity(&alg, &qi).unwrap().is_none();
            assert_eq!(table.member, qi_holds, "{}", alg.name());
        }
    }

    #[test]
    fn joint_epicity_trivial_and_generated_cases() {
        let b = builtin::mitschke_b();
        let id = Homomorphism::identity(&b);
        let spd = crate::algebra::split_pullback(&id, &id, &id, &id).unwrap();
        let pt = FiniteAlgebra::terminal("pt", b.signature().clone());
        assert_eq!(
            joint_epicity_check(&spd, &pt).unwrap(),
            JointEpicityOutcome::JointlyEpic
        );
        assert_eq!(
            joint_epicity_check(&spd, &b).unwrap(),
            JointEpicityOutcome::JointlyEpic
        );
    }

    #[test]
    fn joint_epicity_fails_on_free_sets_instance() {
        let two = builtin::set(2);
        let one = builtin::set(1);
        let bang = Homomorphism::new(two.clone(), one.clone(), vec![0, 0]).unwrap();
        let pick = Homomorphism::new(one.clone(), two.clone(), vec![0]).unwrap();
        let spd = crate::algebra::split_pullback(&bang, &pick, &bang, &pick).unwrap();
        assert_eq!(spd.e.size(), 4);
        match joint_epicity_check(&spd, &two).unwrap() {
            JointEpicityOutcome::Collision { phi1, phi2 } => assert_ne!(phi1, phi2),
            other => panic!("expected collision, got {other:?}"),
        }
    }

    #[test]
    fn z3_squared_pullback_is_jointly_epic() {
        let z3 = builtin::z3();
        let zz = product(&[&z3, &z3]).unwrap();
        let proj = product_projection(&zz, &[&z3, &z3], 0);
        let sizes = [3, 3];
        let insert = Homomorphism::new(
            z3.clone(),
            zz.clone(),
            (0..3).map(|u| product_index(&sizes, &[u, 0])).collect(),
        )
        .unwrap();
        let spd = crate::algebra::split_pullback(&proj, &insert, &proj, &insert).unwrap();
        for d in [&z3, &zz] {
            assert_eq!(
                joint_epicity_check(&spd, d).unwrap(),
                JointEpicityOutcome::JointlyEpic
            );
        }
    }
}

//! Internal reflexive graphs, multiplicative graphs, categories, groupoids,
//! and pregroupoids realised as finite algebras plus homomorphisms, with law
//! checkers, multiplication search, inverse construction, and fill-in
//! classification for split pullbacks against a span.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::algebra::{
    enumerate_homomorphisms, induced_subalgebra, product, product_index, split_pullback,
    FiniteAlgebra, HomSearch, Homomorphism, SearchEnd, Signature, SplitPullbackDiagram,
};
use crate::relation::{classify_relation, CompatibleRelation};
use crate::{Error, Limits};

/// A reflexive graph: arrows C1, vertices C0, domain `d`, codomain `c`, and
/// identities `e` with `de = 1 = ce` (verified at construction).
#[derive(Clone, Debug)]
pub struct ReflexiveGraph {
    pub c1: FiniteAlgebra,
    pub c0: FiniteAlgebra,
    pub d: Homomorphism,
    pub c: Homomorphism,
    pub e: Homomorphism,
}

impl ReflexiveGraph {
    pub fn new(d: Homomorphism, c: Homomorphism, e: Homomorphism) -> Result<Self, Error> {
        let c1 = d.dom().clone();
        let c0 = d.cod().clone();
        if !c.dom().same_structure(&c1) || !c.cod().same_structure(&c0) {
            return Err(Error::Precondition(
                "d and c must both map C1 to C0".into(),
            ));
        }
        if !e.dom().same_structure(&c0) || !e.cod().same_structure(&c1) {
            return Err(Error::Precondition("e must map C0 into C1".into()));
        }
        if !e.then(&d)?.is_identity() {
            return Err(Error::Precondition("de = 1 fails".into()));
        }
        if !e.then(&c)?.is_identity() {
            return Err(Error::Precondition("ce = 1 fails".into()));
        }
        Ok(ReflexiveGraph { c1, c0, d, c, e })
    }
}

/// The graph with C1 = C0 = X and d = c = e = 1.
pub fn discrete_graph(x: &FiniteAlgebra) -> ReflexiveGraph {
    let id = Homomorphism::identity(x);
    ReflexiveGraph {
        c1: x.clone(),
        c0: x.clone(),
        d: id.clone(),
        c: id.clone(),
        e: id,
    }
}

/// The pair graph on X: C1 = X², d = second projection, c = first
/// projection, e = diagonal.
pub fn pair_graph(x: &FiniteAlgebra) -> Result<ReflexiveGraph, Error> {
    let n = x.size();
    let sq = product(&[x, x])?;
    let second = Homomorphism::new(sq.clone(), x.clone(), (0..n * n).map(|i| i % n).collect())?;
    let first = Homomorphism::new(sq.clone(), x.clone(), (0..n * n).map(|i| i / n).collect())?;
    let diag = Homomorphism::new(x.clone(), sq, (0..n).map(|u| u * n + u).collect())?;
    ReflexiveGraph::new(second, first, diag)
}

/// The composable-pairs object C2 = {(u, v) : d(u) = c(v)} of a reflexive
/// graph, as the split pullback of d along c with section e on both sides.
/// In the returned diagram `p1`, `p2` are the projections and
/// `e1(u) = (u, ed(u))`, `e2(v) = (ec(v), v)` the induced sections.
pub fn composable_pairs(graph: &ReflexiveGraph) -> Result<SplitPullbackDiagram, Error> {
    split_pullback(&graph.d, &graph.e, &graph.c, &graph.e)
}

/// A multiplicative graph: pairs object plus a multiplication `m: C2 → C1`.
/// Construction verifies the unit laws `m e₁ = 1 = m e₂` and the domain and
/// codomain laws `dm = dπ₂`, `cm = cπ₁`; associativity is the business of
/// [`check_category`]. The pair (u, v) composes to "u after v".
#[derive(Clone, Debug)]
pub struct InternalCategory {
    pub graph: ReflexiveGraph,
    pub pairs: SplitPullbackDiagram,
    pub m: Homomorphism,
}

impl InternalCategory {
    pub fn new(graph: ReflexiveGraph, m: Homomorphism) -> Result<Self, Error> {
        let pairs = composable_pairs(&graph)?;
        if !m.dom().same_structure(&pairs.e) || !m.cod().same_structure(&graph.c1) {
            return Err(Error::Precondition("m must map C2 to C1".into()));
        }
        if !pairs.e1.then(&m)?.is_identity() {
            return Err(Error::Precondition("m e1 = 1 fails".into()));
        }
        if !pairs.e2.then(&m)?.is_identity() {
            return Err(Error::Precondition("m e2 = 1 fails".into()));
        }
        if !m.then(&graph.d)?.equal_map(&pairs.p2.then(&graph.d)?) {
            return Err(Error::Precondition("dm = d pi2 fails".into()));
        }
        if !m.then(&graph.c)?.equal_map(&pairs.p1.then(&graph.c)?) {
            return Err(Error::Precondition("cm = c pi1 fails".into()));
        }
        Ok(InternalCategory { graph, pairs, m })
    }

    /// m(u, v) when (u, v) is composable.
    pub fn compose(&self, u: usize, v: usize) -> Option<usize> {
        self.pairs.pair_index(u, v).map(|i| self.m.apply(i))
    }
}

/// All multiplications on a reflexive graph, with a flag telling whether the
/// search ran to completion or stopped at the node budget (partial list).
#[derive(Clone, Debug)]
pub struct MultiplicationSearch {
    pub multiplications: Vec<Homomorphism>,
    pub exhaustive: bool,
}

pub fn find_multiplications(graph: &ReflexiveGraph) -> Result<MultiplicationSearch, Error> {
    find_multiplications_with_limits(graph, &Limits::default())
}

/// Backtracking over homomorphisms C2 → C1 pinned to the unit laws and
/// restricted by dm = dπ₂, cm = cπ₁.
pub fn find_multiplications_with_limits(
    graph: &ReflexiveGraph,
    limits: &Limits,
) -> Result<MultiplicationSearch, Error> {
    let pairs = composable_pairs(graph)?;
    let mut search = HomSearch::new(&pairs.e, &graph.c1);
    search.max_nodes = limits.max_nodes;
    for u in 0..graph.c1.size() {
        if search.pin(pairs.e1.apply(u), u).is_err() || search.pin(pairs.e2.apply(u), u).is_err()
        {
            // e1 and e2 overlap with conflicting unit requirements:
            // no multiplication can exist.
            return Ok(MultiplicationSearch {
                multiplications: vec![],
                exhaustive: true,
            });
        }
    }
    for (w, &(u, v)) in pairs.pairs.iter().enumerate() {
        let dv = graph.d.apply(v);
        let cu = graph.c.apply(u);
        search.restrict(w, |y| graph.d.apply(y) == dv && graph.c.apply(y) == cu);
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let end = search.visit(&mut |map| {
        found.push(map.to_vec());
        ControlFlow::Continue(())
    })?;
    let multiplications = found
        .into_iter()
        .map(|map| Homomorphism::new(pairs.e.clone(), graph.c1.clone(), map))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MultiplicationSearch {
        multiplications,
        exhaustive: end == SearchEnd::Exhausted,
    })
}

/// Result of the exhaustive associativity check over composable triples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AssociativityOutcome {
    Associative { triples: usize },
    Violation { triple: (usize, usize, usize), left: usize, right: usize },
}

/// Check m(m(u,v), w) = m(u, m(v,w)) over every composable triple; the first
/// violation (in lexicographic order) is returned with both composite values.
pub fn check_category(ic: &InternalCategory) -> AssociativityOutcome {
    let d = &ic.graph.d;
    let c = &ic.graph.c;
    let mut triples = 0;
    for &(u, v) in &ic.pairs.pairs {
        let uv = ic.compose(u, v).expect("listed pair is composable");
        for w in 0..ic.graph.c1.size() {
            if d.apply(v) != c.apply(w) {
                continue;
            }
            triples += 1;
            let vw = ic.compose(v, w).expect("d(v) = c(w)");
            let left = ic.compose(uv, w).expect("d(uv) = d(v) = c(w)");
            let right = ic.compose(u, vw).expect("c(vw) = c(v) = d(u)");
            if left != right {
                return AssociativityOutcome::Violation {
                    triple: (u, v, w),
                    left,
                    right,
                };
            }
        }
    }
    AssociativityOutcome::Associative { triples }
}

/// Injectivity of ⟨π₁, m⟩ (left) and ⟨m, π₂⟩ (right); a failure carries two
/// composable pairs with the same image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cancellability {
    pub left: Result<(), ((usize, usize), (usize, usize))>,
    pub right: Result<(), ((usize, usize), (usize, usize))>,
}

impl Cancellability {
    pub fn both(&self) -> bool {
        self.left.is_ok() && self.right.is_ok()
    }
}

pub fn cancellability_check(ic: &InternalCategory) -> Cancellability {
    let collide = |key: &dyn Fn(usize, (usize, usize)) -> (usize, usize)| {
        let mut seen: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
        for (i, &pair) in ic.pairs.pairs.iter().enumerate() {
            let k = key(ic.m.apply(i), pair);
            if let Some(&first) = seen.get(&k) {
                return Err((first, pair));
            }
            seen.insert(k, pair);
        }
        Ok(())
    };
    Cancellability {
        left: collide(&|m, (u, _)| (u, m)),
        right: collide(&|m, (_, v)| (m, v)),
    }
}

/// A two-sided inverse morphism for an internal category, making it a
/// groupoid: `ct = d`, `dt = c`, `m⟨1, t⟩ = ec`, `m⟨t, 1⟩ = ed`.
#[derive(Clone, Debug)]
pub struct GroupoidWitness {
    pub t: Homomorphism,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseMode {
    /// Search homomorphisms t: C1 → C1 against all four laws directly.
    Direct,
    /// Check cancellability, then symmetry of the relation with legs
    /// (π₁, m), then solve m(u, t(u)) = ec(u) pointwise.
    ThmRoute,
}

fn inverse_laws_hold(ic: &InternalCategory, t: &Homomorphism) -> Result<bool, Error> {
    let g = &ic.graph;
    if !t.then(&g.c)?.equal_map(&g.d) || !t.then(&g.d)?.equal_map(&g.c) {
        return Ok(false);
    }
    for u in 0..g.c1.size() {
        let tu = t.apply(u);
        let one_after = ic.compose(u, tu);
        let one_before = ic.compose(tu, u);
        if one_after != Some(g.e.apply(g.c.apply(u)))
            || one_before != Some(g.e.apply(g.d.apply(u)))
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Find the inverse morphism if the category is a groupoid. Precondition:
/// the category laws hold (associativity included); both modes then agree.
pub fn groupoid_inverse(
    ic: &InternalCategory,
    mode: InverseMode,
) -> Result<Option<GroupoidWitness>, Error> {
    let g = &ic.graph;
    let n = g.c1.size();
    match mode {
        InverseMode::Direct => {
            let mut search = HomSearch::new(&g.c1, &g.c1);
            for u in 0..n {
                let (du, cu) = (g.d.apply(u), g.c.apply(u));
                let (ecu, edu) = (g.e.apply(cu), g.e.apply(du));
                search.restrict(u, |y| {
                    g.c.apply(y) == du
                        && g.d.apply(y) == cu
                        && ic.compose(u, y) == Some(ecu)
                        && ic.compose(y, u) == Some(edu)
                });
            }
            let mut first: Option<Vec<usize>> = None;
            search.visit(&mut |map| {
                first = Some(map.to_vec());
                ControlFlow::Break(())
            })?;
            match first {
                None => Ok(None),
                Some(map) => {
                    let t = Homomorphism::new(g.c1.clone(), g.c1.clone(), map)?;
                    debug_assert!(inverse_laws_hold(ic, &t)?);
                    Ok(Some(GroupoidWitness { t }))
                }
            }
        }
        InverseMode::ThmRoute => {
            // A groupoid cancels; a failed cancellability check already
            // refutes the existence of t.
            if !cancellability_check(ic).both() {
                return Ok(None);
            }
            // Symmetry of the reflexive relation {(π₁ w, m w) : w ∈ C2}.
            for (i, &(u, _)) in ic.pairs.pairs.iter().enumerate() {
                let q = ic.m.apply(i);
                let symmetric_partner = (0..n).any(|v| ic.compose(q, v) == Some(u));
                if !symmetric_partner {
                    return Ok(None);
                }
            }
            // Solve m(u, t(u)) = ec(u) pointwise; left cancellability makes
            // the solution unique where it exists.
            let mut map = Vec::with_capacity(n);
            for u in 0..n {
                let target = g.e.apply(g.c.apply(u));
                match (0..n).find(|&y| ic.compose(u, y) == Some(target)) {
                    Some(y) => map.push(y),
                    None => return Ok(None),
                }
            }
            let Ok(t) = Homomorphism::new(g.c1.clone(), g.c1.clone(), map) else {
                return Ok(None);
            };
            if !inverse_laws_hold(ic, &t)? {
                return Ok(None);
            }
            Ok(Some(GroupoidWitness { t }))
        }
    }
}

/// The pair groupoid on X: pair graph plus m((a,b),(b,c)) = (a,c).
pub fn pair_groupoid(x: &FiniteAlgebra) -> Result<InternalCategory, Error> {
    let n = x.size();
    let graph = pair_graph(x)?;
    let pairs = composable_pairs(&graph)?;
    let map = pairs
        .pairs
        .iter()
        .map(|&(u, v)| (u / n) * n + (v % n))
        .collect();
    let m = Homomorphism::new(pairs.e.clone(), graph.c1.clone(), map)?;
    InternalCategory::new(graph, m)
}

/// A one-object category over the empty signature from a unital composition
/// table (`table[u*n + v]` = "u after v", unit element `unit`).
pub fn one_object_category(table: &[usize], unit: usize) -> Result<InternalCategory, Error> {
    let n = (0..).find(|k| k * k >= table.len()).expect("finite");
    if n * n != table.len() {
        return Err(Error::Precondition(
            "composition table must be square".into(),
        ));
    }
    let c1 = FiniteAlgebra::new(format!("M{n}"), Signature::empty(), n, None, vec![])?;
    let c0 = FiniteAlgebra::terminal("pt", Signature::empty());
    let bang = Homomorphism::new(c1.clone(), c0.clone(), vec![0; n])?;
    let e = Homomorphism::new(c0, c1.clone(), vec![unit])?;
    let graph = ReflexiveGraph::new(bang.clone(), bang, e)?;
    let pairs = composable_pairs(&graph)?;
    // Every pair is composable here and the pair list is lexicographic, so
    // the table aligns index-for-index.
    let m = Homomorphism::new(pairs.e.clone(), c1, table.to_vec())?;
    InternalCategory::new(graph, m)
}

/// The pair graph restricted to an equivalence relation: C1 is the relation
/// as a subalgebra of X², composition joins overlapping pairs.
pub fn relation_groupoid(rel: &CompatibleRelation) -> Result<InternalCategory, Error> {
    let cls = classify_relation(rel);
    if cls.equivalence != Some(true) {
        return Err(Error::Precondition(
            "relation groupoid needs a compatible equivalence relation".into(),
        ));
    }
    let x = rel.left();
    let n = x.size();
    let sq = product(&[x, x])?;
    let rel_pairs = rel.pairs();
    let indices: Vec<usize> = rel_pairs.iter().map(|&(a, b)| a * n + b).collect();
    let (c1, _) = induced_subalgebra(&sq, &indices, format!("{}_rel", x.name()))?;
    let at = |a: usize, b: usize| rel_pairs.binary_search(&(a, b)).expect("pair in relation");
    let d = Homomorphism::new(c1.clone(), x.clone(), rel_pairs.iter().map(|p| p.1).collect())?;
    let c = Homomorphism::new(c1.clone(), x.clone(), rel_pairs.iter().map(|p| p.0).collect())?;
    let e = Homomorphism::new(x.clone(), c1.clone(), (0..n).map(|u| at(u, u)).collect())?;
    let graph = ReflexiveGraph::new(d, c, e)?;
    let pairs = composable_pairs(&graph)?;
    let map = pairs
        .pairs
        .iter()
        .map(|&(i, j)| at(rel_pairs[i].0, rel_pairs[j].1))
        .collect();
    let m = Homomorphism::new(pairs.e.clone(), c1, map)?;
    InternalCategory::new(graph, m)
}

// ---------------------------------------------------------------------------
// Pregroupoids and the interchange law.

/// A span: two homomorphisms out of a common apex.
#[derive(Clone, Debug)]
pub struct Span {
    pub d: Homomorphism,
    pub c: Homomorphism,
}

impl Span {
    pub fn new(d: Homomorphism, c: Homomorphism) -> Result<Self, Error> {
        if !d.dom().same_structure(c.dom()) {
            return Err(Error::Precondition(
                "span legs must share their domain".into(),
            ));
        }
        Ok(Span { d, c })
    }

    pub fn apex(&self) -> &FiniteAlgebra {
        self.d.dom()
    }

    /// Are the legs jointly injective, i.e. is ⟨d, c⟩ monic?
    pub fn jointly_injective(&self) -> Result<(), (usize, usize)> {
        let mut seen = HashMap::new();
        for x in 0..self.apex().size() {
            let key = (self.d.apply(x), self.c.apply(x));
            if let Some(&y) = seen.get(&key) {
                return Err((y, x));
            }
            seen.insert(key, x);
        }
        Ok(())
    }
}

/// The span X ← X² → X with d = second projection, c = first projection.
pub fn pair_span(x: &FiniteAlgebra) -> Result<Span, Error> {
    let n = x.size();
    let sq = product(&[x, x])?;
    let second = Homomorphism::new(sq.clone(), x.clone(), (0..n * n).map(|i| i % n).collect())?;
    let first = Homomorphism::new(sq, x.clone(), (0..n * n).map(|i| i / n).collect())?;
    Span::new(second, first)
}

/// The span with both legs the unique map to a one-element algebra; every
/// triple is composable.
pub fn trivial_span(x: &FiniteAlgebra) -> Result<Span, Error> {
    let pt = FiniteAlgebra::terminal("pt", x.signature().clone());
    let bang = Homomorphism::new(x.clone(), pt, vec![0; x.size()])?;
    Span::new(bang.clone(), bang)
}

/// Composable triples of a span: {(x,y,z) : d(x) = d(y), c(y) = c(z)} as a
/// subalgebra of D³, with the sorted triple list.
pub fn composable_triples(span: &Span) -> Result<(FiniteAlgebra, Vec<[usize; 3]>), Error> {
    let apex = span.apex();
    let n = apex.size();
    let cube = product(&[apex, apex, apex])?;
    let sizes = [n, n, n];
    let mut triples = Vec::new();
    let mut indices = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if span.d.apply(x) != span.d.apply(y) {
                continue;
            }
            for z in 0..n {
                if span.c.apply(y) != span.c.apply(z) {
                    continue;
                }
                triples.push([x, y, z]);
                indices.push(product_index(&sizes, &[x, y, z]));
            }
        }
    }
    let (alg, _) = induced_subalgebra(&cube, &indices, format!("{}_triples", apex.name()))?;
    Ok((alg, triples))
}

/// A span with a partial Mal'tsev operation p on its composable triples.
/// Construction checks that p is a homomorphism of the expected shape; the
/// pregroupoid laws themselves are the business of [`check_pregroupoid`].
#[derive(Clone, Debug)]
pub struct Pregroupoid {
    pub span: Span,
    pub triples_algebra: FiniteAlgebra,
    pub triples: Vec<[usize; 3]>,
    pub p: Homomorphism,
}

impl Pregroupoid {
    pub fn new(span: Span, table: Vec<usize>) -> Result<Self, Error> {
        let (triples_algebra, triples) = composable_triples(&span)?;
        if table.len() != triples.len() {
            return Err(Error::Precondition(format!(
                "p table must have one entry per composable triple: expected {}, got {}",
                triples.len(),
                table.len()
            )));
        }
        let p = Homomorphism::new(triples_algebra.clone(), span.apex().clone(), table)?;
        Ok(Pregroupoid {
            span,
            triples_algebra,
            triples,
            p,
        })
    }

    /// Build a pregroupoid by evaluating `p` on every composable triple.
    pub fn from_fn(
        span: Span,
        p: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self, Error> {
        let (_, triples) = composable_triples(&span)?;
        let table = triples.iter().map(|&[x, y, z]| p(x, y, z)).collect();
        Pregroupoid::new(span, table)
    }

    pub fn p_at(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        self.triples
            .binary_search(&[x, y, z])
            .ok()
            .map(|i| self.p.apply(i))
    }
}

/// The pair-span pregroupoid on X²: p((a,b), (a',b), (a',b')) = (a, b').
pub fn pair_span_pregroupoid(x: &FiniteAlgebra) -> Result<Pregroupoid, Error> {
    let n = x.size();
    let span = pair_span(x)?;
    Pregroupoid::from_fn(span, |x1, _, z| (x1 / n) * n + (z % n))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PregroupoidOutcome {
    Valid { triples: usize },
    Violation { law: &'static str, triple: [usize; 3] },
}

/// Exhaustively verify p(x,y,y) = x, p(x,x,y) = y, dp(x,y,z) = d(z) and
/// cp(x,y,z) = c(x) over all composable triples.
pub fn check_pregroupoid(pg: &Pregroupoid) -> PregroupoidOutcome {
    for (i, &[x, y, z]) in pg.triples.iter().enumerate() {
        let v = pg.p.apply(i);
        if y == z && v != x {
            return PregroupoidOutcome::Violation {
                law: "p(x,y,y) = x",
                triple: [x, y, z],
            };
        }
        if x == y && v != z {
            return PregroupoidOutcome::Violation {
                law: "p(x,x,y) = y",
                triple: [x, y, z],
            };
        }
        if pg.span.d.apply(v) != pg.span.d.apply(z) {
            return PregroupoidOutcome::Violation {
                law: "dp(x,y,z) = d(z)",
                triple: [x, y, z],
            };
        }
        if pg.span.c.apply(v) != pg.span.c.apply(x) {
            return PregroupoidOutcome::Violation {
                law: "cp(x,y,z) = c(x)",
                triple: [x, y, z],
            };
        }
    }
    PregroupoidOutcome::Valid {
        triples: pg.triples.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InterchangeOutcome {
    Holds { configurations: usize },
    Violation {
        /// Rows of the 3×3 configuration.
        config: [[usize; 3]; 3],
        row_first: usize,
        column_first: usize,
    },
}

/// Brute-force the interchange law over every admissible 3×3 configuration:
/// p applied to the three row-composites must agree with p applied to the
/// three column-composites. Requires a valid pregroupoid.
pub fn interchange_check(pg: &Pregroupoid) -> Result<InterchangeOutcome, Error> {
    if let PregroupoidOutcome::Violation { law, triple } = check_pregroupoid(pg) {
        return Err(Error::Precondition(format!(
            "pregroupoid law {law} fails at {triple:?}"
        )));
    }
    let d = |x: usize| pg.span.d.apply(x);
    let c = |x: usize| pg.span.c.apply(x);
    let p = |i: usize| pg.p.apply(i);
    let t = &pg.triples;
    let mut configurations = 0usize;
    for (ix, rx) in t.iter().enumerate() {
        for (iy, ry) in t.iter().enumerate() {
            if (0..3).any(|k| d(rx[k]) != d(ry[k])) {
                continue;
            }
            for (iz, rz) in t.iter().enumerate() {
                if (0..3).any(|k| c(ry[k]) != c(rz[k])) {
                    continue;
                }
                configurations += 1;
                let rows = [p(ix), p(iy), p(iz)];
                let cols = [
                    pg.p_at(rx[0], ry[0], rz[0]).expect("columns composable"),
                    pg.p_at(rx[1], ry[1], rz[1]).expect("columns composable"),
                    pg.p_at(rx[2], ry[2], rz[2]).expect("columns composable"),
                ];
                let row_first = pg
                    .p_at(rows[0], rows[1], rows[2])
                    .expect("row composite composable");
                let column_first = pg
                    .p_at(cols[0], cols[1], cols[2])
                    .expect("column composite composable");
                if row_first != column_first {
                    return Ok(InterchangeOutcome::Violation {
                        config: [*rx, *ry, *rz],
                        row_first,
                        column_first,
                    });
                }
            }
        }
    }
    Ok(InterchangeOutcome::Holds { configurations })
}

/// Perturb one free p-table entry of a valid pregroupoid so that the
/// pregroupoid laws still pass but the interchange law breaks; used as a
/// negative control for [`interchange_check`]. Returns the perturbed
/// pregroupoid and its violating configuration, or `None` when no such
/// perturbation exists at this size (the control is then skipped).
pub fn find_interchange_control(
    pg: &Pregroupoid,
) -> Result<Option<(Pregroupoid, [[usize; 3]; 3])>, Error> {
    for entry in 0..pg.triples.len() {
        for value in 0..pg.span.apex().size() {
            if value == pg.p.apply(entry) {
                continue;
            }
            let mut table = pg.p.map().to_vec();
            table[entry] = value;
            let Ok(candidate) = Pregroupoid::new(pg.span.clone(), table) else {
                continue; // not a homomorphism any more
            };
            if !matches!(check_pregroupoid(&candidate), PregroupoidOutcome::Valid { .. }) {
                continue;
            }
            if let InterchangeOutcome::Violation { config, .. } = interchange_check(&candidate)?
            {
                return Ok(Some((candidate, config)));
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Fill-in conditions against a span.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FillInFlavor {
    Span,
    /// Span legs must be jointly injective.
    Relation,
    /// Same injectivity requirement; strong relations coincide with
    /// relations over these ambients (subalgebras of products).
    StrongRelation,
}

#[derive(Clone, Debug)]
pub enum FillInClassification {
    Unique(Homomorphism),
    NoFillIn,
    Multiple(Homomorphism, Homomorphism),
}

pub fn condition_v_check(
    spd: &SplitPullbackDiagram,
    span: &Span,
    alpha: &Homomorphism,
    beta: &Homomorphism,
    gamma: &Homomorphism,
    flavor: FillInFlavor,
) -> Result<FillInClassification, Error> {
    condition_v_check_with_limits(spd, span, alpha, beta, gamma, flavor, &Limits::default())
}

/// Classify the homomorphisms φ: E → D with φe₁ = α, φe₂ = γ, dφ = dγπ₂ and
/// cφ = cαπ₁ as zero, one, or at least two. Preconditions are verified in
/// order and the first violated one is reported.
pub fn condition_v_check_with_limits(
    spd: &SplitPullbackDiagram,
    span: &Span,
    alpha: &Homomorphism,
    beta: &Homomorphism,
    gamma: &Homomorphism,
    flavor: FillInFlavor,
    limits: &Limits,
) -> Result<FillInClassification, Error> {
    let apex = span.apex();
    for (name, h, dom) in [
        ("α", alpha, &spd.a),
        ("β", beta, &spd.b),
        ("γ", gamma, &spd.c),
    ] {
        if !h.dom().same_structure(dom) || !h.cod().same_structure(apex) {
            return Err(Error::Precondition(format!(
                "{name} must map its corner into the span apex"
            )));
        }
    }
    if !spd.r.then(alpha)?.equal_map(beta) {
        return Err(Error::Precondition("αr = β fails".into()));
    }
    if !spd.s.then(gamma)?.equal_map(beta) {
        return Err(Error::Precondition("γs = β fails".into()));
    }
    if !alpha.then(&span.d)?.equal_map(&spd.f.then(beta)?.then(&span.d)?) {
        return Err(Error::Precondition("dα = dβf fails".into()));
    }
    if !gamma.then(&span.c)?.equal_map(&spd.g.then(beta)?.then(&span.c)?) {
        return Err(Error::Precondition("cγ = cβg fails".into()));
    }
    if matches!(flavor, FillInFlavor::Relation | FillInFlavor::StrongRelation) {
        if let Err((x, y)) = span.jointly_injective() {
            return Err(Error::Precondition(format!(
                "span legs are not jointly injective: elements {x} and {y} collide"
            )));
        }
    }

    let mut search = HomSearch::new(&spd.e, apex);
    search.max_nodes = limits.max_nodes;
    for a in 0..spd.a.size() {
        search.pin(spd.e1.apply(a), alpha.apply(a))?;
    }
    for ci in 0..spd.c.size() {
        search.pin(spd.e2.apply(ci), gamma.apply(ci))?;
    }
    for w in 0..spd.e.size() {
        let dw = span.d.apply(gamma.apply(spd.p2.apply(w)));
        let cw = span.c.apply(alpha.apply(spd.p1.apply(w)));
        search.restrict(w, |y| span.d.apply(y) == dw && span.c.apply(y) == cw);
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let end = search.visit(&mut |map| {
        found.push(map.to_vec());
        if found.len() >= 2 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    if end == SearchEnd::Budget {
        return Err(Error::ResourceBound {
            what: "fill-in enumeration nodes".into(),
            budget: limits.max_nodes,
            reached: limits.max_nodes,
        });
    }
    let mut homs = found
        .into_iter()
        .map(|map| Homomorphism::new(spd.e.clone(), apex.clone(), map))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(match homs.len() {
        0 => FillInClassification::NoFillIn,
        1 => FillInClassification::Unique(homs.pop().unwrap()),
        _ => {
            let second = homs.pop().unwrap();
            let first = homs.pop().unwrap();
            FillInClassification::Multiple(first, second)
        }
    })
}

/// A battery member and section pair witnessing that e₁r = e₂s is not a
/// pushout: the number of fill-ins differs from one.
#[derive(Clone, Debug)]
pub struct PushoutFailure {
    pub algebra: String,
    pub alpha: Homomorphism,
    pub gamma: Homomorphism,
    /// Zero or the first two fill-ins found.
    pub fill_ins: Vec<Homomorphism>,
}

#[derive(Clone, Debug)]
pub enum PushoutOutcome {
    /// Every (α, γ) with αr = γs over every battery member had exactly one
    /// fill-in — consistent with the pushout property on this battery.
    ConsistentWithPushout { pairs_checked: usize },
    NotPushout(Box<PushoutFailure>),
}

pub fn pushout_of_sections_check(
    spd: &SplitPullbackDiagram,
    battery: &[FiniteAlgebra],
) -> Result<PushoutOutcome, Error> {
    pushout_of_sections_check_with_limits(spd, battery, &Limits::default())
}

/// For every battery algebra D and every pair α: A → D, γ: C → D with
/// αr = γs, check that exactly one φ: E → D has φe₁ = α and φe₂ = γ.
pub fn pushout_of_sections_check_with_limits(
    spd: &SplitPullbackDiagram,
    battery: &[FiniteAlgebra],
    limits: &Limits,
) -> Result<PushoutOutcome, Error> {
    let mut pairs_checked = 0usize;
    for d in battery {
        if d.signature() != spd.a.signature() {
            return Err(Error::SignatureMismatch(format!(
                "battery algebra {} is in a different signature",
                d.name()
            )));
        }
        for alpha in enumerate_homomorphisms(&spd.a, d, &[])? {
            let pins: Vec<(usize, usize)> = (0..spd.b.size())
                .map(|b| (spd.s.apply(b), alpha.apply(spd.r.apply(b))))
                .collect();
            for gamma in enumerate_homomorphisms(&spd.c, d, &pins)? {
                pairs_checked += 1;
                let mut search = HomSearch::new(&spd.e, d);
                search.max_nodes = limits.max_nodes;
                for a in 0..spd.a.size() {
                    search.pin(spd.e1.apply(a), alpha.apply(a))?;
                }
                for ci in 0..spd.c.size() {
                    search.pin(spd.e2.apply(ci), gamma.apply(ci))?;
                }
                let mut found: Vec<Vec<usize>> = Vec::new();
                let end = search.visit(&mut |map| {
                    found.push(map.to_vec());
                    if found.len() >= 2 {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                })?;
                if end == SearchEnd::Budget {
                    return Err(Error::ResourceBound {
                        what: "pushout fill-in enumeration nodes".into(),
                        budget: limits.max_nodes,
                        reached: limits.max_nodes,
                    });
                }
                if found.len() != 1 {
                    let fill_ins = found
                        .into_iter()
                        .map(|map| Homomorphism::new(spd.e.clone(), d.clone(), map))
                        .collect::<Result<Vec<_>, _>>()?;
                    return Ok(PushoutOutcome::NotPushout(Box::new(PushoutFailure {
                        algebra: d.name().to_string(),
                        alpha,
                        gamma,
                        fill_ins,
                    })));
                }
            }
        }
    }
    Ok(PushoutOutcome::ConsistentWithPushout { pairs_checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::maltsev::{joint_epicity_check, JointEpicityOutcome};
    use crate::relation::kernel_pair;

    fn z3_affine_pregroupoid() -> Pregroupoid {
        let z3 = builtin::z3();
        let span = trivial_span(&z3).unwrap();
        Pregroupoid::from_fn(span, |x, y, z| (x + 3 - y + z) % 3).unwrap()
    }

    #[test]
    fn discrete_graph_pairs_collapse_to_vertices() {
        let b = builtin::mitschke_b();
        let g = discrete_graph(&b);
        let pairs = composable_pairs(&g).unwrap();
        assert_eq!(pairs.e.size(), 3);
        assert!(pairs.pairs.iter().all(|&(u, v)| u == v));
        let found = find_multiplications(&g).unwrap();
        assert!(found.exhaustive);
        assert_eq!(found.multiplications.len(), 1);
    }

    #[test]
    fn pair_graph_pairs_are_triples() {
        let b = builtin::mitschke_b();
        let g = pair_graph(&b).unwrap();
        let pairs = composable_pairs(&g).unwrap();
        assert_eq!(pairs.e.size(), 27);
    }

    #[test]
    fn graph_law_violations_are_rejected() {
        let z3 = builtin::z3();
        let sq = product(&[&z3, &z3]).unwrap();
        let second = Homomorphism::new(sq.clone(), z3.clone(), (0..9).map(|i| i % 3).collect())
            .unwrap();
        let first =
            Homomorphism::new(sq.clone(), z3.clone(), (0..9).map(|i| i / 3).collect()).unwrap();
        // "Identities" that pick (u, 2u) are a section of neither leg.
        let skew = Homomorphism::new(z3.clone(), sq, (0..3).map(|u| u * 3 + (2 * u) % 3).collect())
            .unwrap();
        assert!(matches!(
            ReflexiveGraph::new(second, first, skew),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn pair_graph_multiplication_is_unique_composition() {
        let two = builtin::set(2);
        let g = pair_graph(&two).unwrap();
        let found = find_multiplications(&g).unwrap();
        assert!(found.exhaustive);
        assert_eq!(found.multiplications.len(), 1);
        let canonical = pair_groupoid(&two).unwrap();
        assert!(found.multiplications[0].equal_map(&canonical.m));
    }

    #[test]
    fn one_object_graph_admits_two_monoids_and_is_not_jointly_epic() {
        // Over a 2-element one-object graph the unit laws leave one free
        // cell; both completions are associative monoids.
        let and = one_object_category(&[0, 0, 0, 1], 1).unwrap();
        let found = find_multiplications(&and.graph).unwrap();
        assert!(found.exhaustive);
        assert_eq!(found.multiplications.len(), 2);
        let epic = joint_epicity_check(&and.pairs, &and.graph.c1).unwrap();
        assert!(matches!(epic, JointEpicityOutcome::Collision { .. }));
    }

    #[test]
    fn associativity_holds_for_pair_and_discrete_categories() {
        let b = builtin::mitschke_b();
        let pg = pair_groupoid(&b).unwrap();
        assert!(matches!(
            check_category(&pg),
            AssociativityOutcome::Associative { .. }
        ));
        let g = discrete_graph(&b);
        let found = find_multiplications(&g).unwrap();
        let ic = InternalCategory::new(g, found.multiplications[0].clone()).unwrap();
        assert!(matches!(
            check_category(&ic),
            AssociativityOutcome::Associative { .. }
        ));
    }

    #[test]
    fn associativity_checker_rejects_a_unital_magma() {
        // Unit 0; the {1,2} block is chosen non-associative.
        let magma = one_object_category(&[0, 1, 2, 1, 2, 1, 2, 1, 1], 0).unwrap();
        match check_category(&magma) {
            AssociativityOutcome::Violation { triple, left, right } => {
                assert_eq!(triple, (1, 1, 2));
                assert_ne!(left, right);
            }
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn cancellability_splits_groupoids_from_the_meet_monoid() {
        let b = builtin::mitschke_b();
        assert!(cancellability_check(&pair_groupoid(&b).unwrap()).both());

        let z2_cat = one_object_category(&[0, 1, 1, 0], 0).unwrap();
        assert!(cancellability_check(&z2_cat).both());

        let and = one_object_category(&[0, 0, 0, 1], 1).unwrap();
        let canc = cancellability_check(&and);
        assert_eq!(canc.left, Err(((0, 0), (0, 1))));
        assert_eq!(canc.right, Err(((0, 0), (1, 0))));
    }

    #[test]
    fn pair_groupoid_inverse_is_the_swap_in_both_modes() {
        let b = builtin::mitschke_b();
        let ic = pair_groupoid(&b).unwrap();
        let swap: Vec<usize> = (0..9).map(|i| (i % 3) * 3 + i / 3).collect();
        for mode in [InverseMode::Direct, InverseMode::ThmRoute] {
            let t = groupoid_inverse(&ic, mode).unwrap().unwrap().t;
            assert_eq!(t.map(), &swap[..], "{mode:?}");
        }
    }

    #[test]
    fn one_object_inverses_by_mode() {
        let z2_cat = one_object_category(&[0, 1, 1, 0], 0).unwrap();
        for mode in [InverseMode::Direct, InverseMode::ThmRoute] {
            let t = groupoid_inverse(&z2_cat, mode).unwrap().unwrap().t;
            assert!(t.is_identity(), "{mode:?}");
        }
        let and = one_object_category(&[0, 0, 0, 1], 1).unwrap();
        for mode in [InverseMode::Direct, InverseMode::ThmRoute] {
            assert!(groupoid_inverse(&and, mode).unwrap().is_none(), "{mode:?}");
        }
    }

    #[test]
    fn congruence_relation_groupoid_inverts_by_swap() {
        let rel = kernel_pair(&builtin::mitschke_f());
        let ic = relation_groupoid(&rel).unwrap();
        assert!(matches!(
            check_category(&ic),
            AssociativityOutcome::Associative { .. }
        ));
        let pairs = rel.pairs();
        for mode in [InverseMode::Direct, InverseMode::ThmRoute] {
            let t = groupoid_inverse(&ic, mode).unwrap().unwrap().t;
            for (i, &(a, b)) in pairs.iter().enumerate() {
                assert_eq!(pairs[t.apply(i)], (b, a));
            }
        }
    }

    #[test]
    fn affine_pregroupoid_is_valid_and_projection_is_not() {
        let pg = z3_affine_pregroupoid();
        assert_eq!(check_pregroupoid(&pg), PregroupoidOutcome::Valid { triples: 27 });

        let z3 = builtin::z3();
        let span = trivial_span(&z3).unwrap();
        let proj = Pregroupoid::from_fn(span, |x, _, _| x).unwrap();
        assert_eq!(
            check_pregroupoid(&proj),
            PregroupoidOutcome::Violation {
                law: "p(x,x,y) = y",
                triple: [0, 0, 1]
            }
        );
    }

    #[test]
    fn pair_span_pregroupoid_is_valid_on_builtins() {
        for alg in [builtin::mitschke_b(), builtin::z3(), builtin::semilattice2()] {
            let q = pair_span_pregroupoid(&alg).unwrap();
            assert!(matches!(check_pregroupoid(&q), PregroupoidOutcome::Valid { .. }));
        }
    }

    #[test]
    fn interchange_holds_for_affine_operations() {
        let z2 = builtin::z2();
        let span = trivial_span(&z2).unwrap();
        let pg = Pregroupoid::from_fn(span, |x, y, z| (x + 2 - y + z) % 2).unwrap();
        assert_eq!(
            interchange_check(&pg).unwrap(),
            InterchangeOutcome::Holds { configurations: 512 }
        );
        assert_eq!(
            interchange_check(&z3_affine_pregroupoid()).unwrap(),
            InterchangeOutcome::Holds {
                configurations: 19683
            }
        );
    }

    #[test]
    fn interchange_holds_for_pair_span_pregroupoids() {
        let q2 = pair_span_pregroupoid(&builtin::set(2)).unwrap();
        assert_eq!(
            interchange_check(&q2).unwrap(),
            InterchangeOutcome::Holds { configurations: 256 }
        );
        let q3 = pair_span_pregroupoid(&builtin::mitschke_b()).unwrap();
        assert_eq!(
            interchange_check(&q3).unwrap(),
            InterchangeOutcome::Holds {
                configurations: 6561
            }
        );
    }

    #[test]
    fn interchange_negative_control_exists_on_the_free_two_element_span() {
        let two = builtin::set(2);
        let span = trivial_span(&two).unwrap();
        let xor = Pregroupoid::from_fn(span, |x, y, z| (x + 2 - y + z) % 2).unwrap();
        let (perturbed, config) = find_interchange_control(&xor).unwrap().unwrap();
        assert!(matches!(
            check_pregroupoid(&perturbed),
            PregroupoidOutcome::Valid { .. }
        ));
        match interchange_check(&perturbed).unwrap() {
            InterchangeOutcome::Violation { config: found, .. } => assert_eq!(found, config),
            other => panic!("control must violate interchange, got {other:?}"),
        }
    }

    #[test]
    fn interchange_negative_control_is_skipped_when_laws_pin_everything() {
        // On a pair span the d/c laws force every p entry, so no perturbation
        // survives check_pregroupoid.
        let q = pair_span_pregroupoid(&builtin::set(2)).unwrap();
        assert!(find_interchange_control(&q).unwrap().is_none());
    }

    fn z3_square_spd() -> SplitPullbackDiagram {
        let z3 = builtin::z3();
        let zz = product(&[&z3, &z3]).unwrap();
        let proj = crate::algebra::product_projection(&zz, &[&z3, &z3], 0);
        let insert = Homomorphism::new(z3.clone(), zz, (0..3).map(|u| u * 3).collect()).unwrap();
        split_pullback(&proj, &insert, &proj, &insert).unwrap()
    }

    #[test]
    fn condition_v_unique_on_the_affine_instance() {
        let spd = z3_square_spd();
        let z3 = builtin::z3();
        let zz = product(&[&z3, &z3]).unwrap();
        let span = Span::new(
            crate::algebra::product_projection(&zz, &[&z3, &z3], 0),
            crate::algebra::product_projection(&zz, &[&z3, &z3], 1),
        )
        .unwrap();
        let alpha = Homomorphism::identity(&zz);
        let beta = Homomorphism::new(z3.clone(), zz.clone(), (0..3).map(|u| u * 3).collect())
            .unwrap();
        // γ(a, c) = (a + c, 0): agrees with β on Im s and pushes the second
        // coordinate into the first leg.
        let gamma = Homomorphism::new(
            zz.clone(),
            zz.clone(),
            (0..9).map(|i| ((i / 3 + i % 3) % 3) * 3).collect(),
        )
        .unwrap();
        let got = condition_v_check(&spd, &span, &alpha, &beta, &gamma, FillInFlavor::Relation)
            .unwrap();
        match got {
            FillInClassification::Unique(phi) => {
                // φ((a,b),(a,c)) = (a + c, b).
                for (w, &(u, v)) in spd.pairs.iter().enumerate() {
                    let (a, b) = (u / 3, u % 3);
                    let c = v % 3;
                    assert_eq!(phi.apply(w), ((a + c) % 3) * 3 + b);
                }
            }
            other => panic!("expected unique fill-in, got {other:?}"),
        }
    }

    #[test]
    fn condition_v_reports_the_first_violated_precondition() {
        let spd = z3_square_spd();
        let z3 = builtin::z3();
        let zz = product(&[&z3, &z3]).unwrap();
        let span = Span::new(
            crate::algebra::product_projection(&zz, &[&z3, &z3], 0),
            crate::algebra::product_projection(&zz, &[&z3, &z3], 1),
        )
        .unwrap();
        let alpha = Homomorphism::identity(&zz);
        // β = 0 disagrees with αr.
        let beta = Homomorphism::new(z3, zz.clone(), vec![0; 3]).unwrap();
        let gamma = Homomorphism::identity(&zz);
        match condition_v_check(&spd, &span, &alpha, &beta, &gamma, FillInFlavor::Span) {
            Err(Error::Precondition(msg)) => assert_eq!(msg, "αr = β fails"),
            other => panic!("expected precondition error, got {other:?}"),
        }
    }

    fn sets_spd() -> SplitPullbackDiagram {
        let two = builtin::set(2);
        let one = builtin::set(1);
        let bang = Homomorphism::new(two.clone(), one.clone(), vec![0, 0]).unwrap();
        let pick = Homomorphism::new(one, two, vec![0]).unwrap();
        split_pullback(&bang, &pick, &bang, &pick).unwrap()
    }

    #[test]
    fn condition_v_multiple_on_sets() {
        let spd = sets_spd();
        let two = builtin::set(2);
        let span = trivial_span(&two).unwrap();
        let alpha = Homomorphism::new(spd.a.clone(), two.clone(), vec![0, 0]).unwrap();
        let beta = Homomorphism::new(spd.b.clone(), two.clone(), vec![0]).unwrap();
        let gamma = Homomorphism::new(spd.c.clone(), two.clone(), vec![0, 0]).unwrap();
        match condition_v_check(&spd, &span, &alpha, &beta, &gamma, FillInFlavor::Span).unwrap() {
            FillInClassification::Multiple(phi1, phi2) => assert!(!phi1.equal_map(&phi2)),
            other => panic!("expected multiple fill-ins, got {other:?}"),
        }
    }

    #[test]
    fn degenerate_split_pullback_forces_the_fill_in() {
        // C = B with g = s = 1: E ≅ A and φ is determined by α.
        let z3 = builtin::z3();
        let zz = product(&[&z3, &z3]).unwrap();
        let f = crate::algebra::product_projection(&zz, &[&z3, &z3], 0);
        let r = Homomorphism::new(z3.clone(), zz.clone(), (0..3).map(|u| u * 3).collect())
            .unwrap();
        let id = Homomorphism::identity(&z3);
        let spd = split_pullback(&f, &r, &id, &id).unwrap();
        assert_eq!(spd.e.size(), 9);
        let span = trivial_span(&zz).unwrap();
        let alpha = Homomorphism::identity(&zz);
        let beta = r.clone();
        let gamma = r.clone();
        match condition_v_check(&spd, &span, &alpha, &beta, &gamma, FillInFlavor::Span).unwrap() {
            FillInClassification::Unique(phi) => {
                for (w, &(u, _)) in spd.pairs.iter().enumerate() {
                    assert_eq!(phi.apply(w), alpha.apply(u));
                }
            }
            other => panic!("expected forced unique fill-in, got {other:?}"),
        }
    }

    #[test]
    fn pushout_of_sections_on_trivial_and_affine_diagrams() {
        let b = builtin::mitschke_b();
        let id = Homomorphism::identity(&b);
        let trivial = split_pullback(&id, &id, &id, &id).unwrap();
        match pushout_of_sections_check(&trivial, &[builtin::mitschke_a(), b.clone()]).unwrap() {
            PushoutOutcome::ConsistentWithPushout { pairs_checked } => {
                assert!(pairs_checked > 0)
            }
            PushoutOutcome::NotPushout(f) => panic!("unexpected failure: {f:?}"),
        }

        let spd = z3_square_spd();
        let z3 = builtin::z3();
        let zz = product(&[&z3, &z3]).unwrap();
        match pushout_of_sections_check(&spd, &[z3, zz]).unwrap() {
            PushoutOutcome::ConsistentWithPushout { pairs_checked } => {
                assert!(pairs_checked > 0)
            }
            PushoutOutcome::NotPushout(f) => panic!("unexpected failure: {f:?}"),
        }
    }

    #[test]
    fn pushout_of_sections_fails_on_sets() {
        let spd = sets_spd();
        match pushout_of_sections_check(&spd, &[builtin::set(2)]).unwrap() {
            PushoutOutcome::NotPushout(failure) => {
                assert_eq!(failure.algebra, "set2");
                assert_eq!(failure.fill_ins.len(), 2);
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }
}

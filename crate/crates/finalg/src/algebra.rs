//! Finite algebras, homomorphisms, and the limit-style constructions
//! (products, generated subalgebras, split pullbacks) the rest of the crate
//! consumes.

use std::collections::HashMap;
use std::fmt;
use std::ops::ControlFlow;

use crate::{Error, Limits};

/// An operation symbol: a name and a finite arity (0 is allowed — constants).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OpSym {
    pub name: String,
    pub arity: usize,
}

/// An ordered list of operation symbols with pairwise distinct names.
/// The empty signature is permitted: its algebras are plain finite sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    ops: Vec<OpSym>,
}

impl Signature {
    pub fn new(ops: Vec<OpSym>) -> Result<Self, Error> {
        for (i, op) in ops.iter().enumerate() {
            if ops[..i].iter().any(|o| o.name == op.name) {
                return Err(Error::SignatureMismatch(format!(
                    "duplicate operation name {:?}",
                    op.name
                )));
            }
        }
        Ok(Signature { ops })
    }

    /// Build from `(name, arity)` literals; panics on duplicate names, so only
    /// suitable for static data.
    pub fn of(pairs: &[(&str, usize)]) -> Self {
        Signature::new(
            pairs
                .iter()
                .map(|&(name, arity)| OpSym {
                    name: name.to_string(),
                    arity,
                })
                .collect(),
        )
        .expect("static signature")
    }

    pub fn empty() -> Self {
        Signature::default()
    }

    pub fn ops(&self) -> &[OpSym] {
        &self.ops
    }

    pub fn op(&self, index: usize) -> &OpSym {
        &self.ops[index]
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ops.iter().position(|o| o.name == name)
    }
}

/// A finite algebra: carrier `0..size` plus one flat operation table per
/// symbol. Tables are row-major with the FIRST argument most significant, so
/// the entry for `(a1, .., ak)` sits at `((a1*n + a2)*n + ..) + ak`.
///
/// The optional labels are display names only (a carrier written "1", "2",
/// "3" maps to indices 0, 1, 2); all computation is on indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    name: String,
    signature: Signature,
    size: usize,
    labels: Option<Vec<String>>,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(
        name: impl Into<String>,
        signature: Signature,
        size: usize,
        labels: Option<Vec<String>>,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self, Error> {
        let name = name.into();
        if size == 0 {
            return Err(Error::InvalidAlgebra(format!(
                "algebra {name:?}: carrier must be non-empty"
            )));
        }
        if tables.len() != signature.len() {
            return Err(Error::InvalidAlgebra(format!(
                "algebra {name:?}: {} tables for {} operations",
                tables.len(),
                signature.len()
            )));
        }
        for (op, table) in signature.ops().iter().zip(&tables) {
            let expect = size.pow(op.arity as u32);
            if table.len() != expect {
                return Err(Error::InvalidAlgebra(format!(
                    "algebra {name:?}, op {:?}: table length {}, expected {expect} (size {size}, arity {})",
                    op.name,
                    table.len(),
                    op.arity
                )));
            }
            for (pos, &v) in table.iter().enumerate() {
                if v >= size {
                    return Err(Error::InvalidAlgebra(format!(
                        "algebra {name:?}, op {:?}, entry {pos} (args {:?}): value {v} out of range [0, {size})",
                        op.name,
                        unflatten(size, op.arity, pos)
                    )));
                }
            }
        }
        if let Some(ls) = &labels {
            if ls.len() != size {
                return Err(Error::InvalidAlgebra(format!(
                    "algebra {name:?}: {} labels for {size} elements",
                    ls.len()
                )));
            }
            for (i, l) in ls.iter().enumerate() {
                if ls[..i].contains(l) {
                    return Err(Error::InvalidAlgebra(format!(
                        "algebra {name:?}: duplicate label {l:?}"
                    )));
                }
            }
        }
        Ok(FiniteAlgebra {
            name,
            signature,
            size,
            labels,
            tables,
        })
    }

    /// The one-element algebra of a signature (every operation returns 0).
    pub fn terminal(name: impl Into<String>, signature: Signature) -> Self {
        let tables = signature.ops().iter().map(|_| vec![0]).collect();
        FiniteAlgebra::new(name, signature, 1, None, tables).expect("terminal algebra")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn table(&self, op: usize) -> &[usize] {
        &self.tables[op]
    }

    /// Apply operation `op` to an argument tuple.
    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        debug_assert_eq!(args.len(), self.signature.op(op).arity);
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.tables[op][idx]
    }

    /// Display label of an element (its index when the algebra is unlabelled).
    pub fn label(&self, element: usize) -> String {
        match &self.labels {
            Some(ls) => ls[element].clone(),
            None => element.to_string(),
        }
    }

    /// Resolve a display label (or a bare index) back to an element.
    pub fn element_by_label(&self, text: &str) -> Option<usize> {
        if let Some(ls) = &self.labels {
            if let Some(i) = ls.iter().position(|l| l == text) {
                return Some(i);
            }
        }
        text.parse::<usize>().ok().filter(|&i| i < self.size)
    }

    /// Structural sameness: signature, size, and tables agree (names and
    /// labels are display data and do not count).
    pub fn same_structure(&self, other: &FiniteAlgebra) -> bool {
        self.signature == other.signature && self.size == other.size && self.tables == other.tables
    }
}

impl fmt::Display for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.name, self.size)
    }
}

fn unflatten(size: usize, arity: usize, mut index: usize) -> Vec<usize> {
    let mut args = vec![0; arity];
    for slot in (0..arity).rev() {
        args[slot] = index % size;
        index /= size;
    }
    args
}

/// All argument tuples of the given arity over `0..size`, in lexicographic
/// order (first coordinate most significant). Arity 0 yields one empty tuple.
pub(crate) fn all_tuples(size: usize, arity: usize) -> Vec<Vec<usize>> {
    let total = size.pow(arity as u32);
    (0..total).map(|i| unflatten(size, arity, i)).collect()
}

/// A homomorphism between finite algebras of the same signature, validated at
/// construction: `map(θ_dom(args)) = θ_cod(map(args))` for every operation θ
/// and argument tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    dom: FiniteAlgebra,
    cod: FiniteAlgebra,
    map: Vec<usize>,
}

/// The first (operation-then-lexicographic) point where a map fails to be a
/// homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationFailure {
    pub op: usize,
    pub args: Vec<usize>,
    /// `map(θ_dom(args))`
    pub mapped_result: usize,
    /// `θ_cod(map(args))`
    pub result_of_mapped: usize,
}

/// Check the preservation invariant; `Ok(None)` means the map is a
/// homomorphism, `Ok(Some(..))` carries the first violation.
pub fn check_homomorphism(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    map: &[usize],
) -> Result<Option<PreservationFailure>, Error> {
    if dom.signature() != cod.signature() {
        return Err(Error::SignatureMismatch(format!(
            "{} vs {}",
            dom.name(),
            cod.name()
        )));
    }
    if map.len() != dom.size() {
        return Err(Error::InvalidHomomorphism(format!(
            "map length {} for domain of size {}",
            map.len(),
            dom.size()
        )));
    }
    if let Some(&v) = map.iter().find(|&&v| v >= cod.size()) {
        return Err(Error::OutOfRange {
            element: v,
            size: cod.size(),
        });
    }
    for (op, sym) in dom.signature().ops().iter().enumerate() {
        for args in all_tuples(dom.size(), sym.arity) {
            let mapped_result = map[dom.apply(op, &args)];
            let images: Vec<usize> = args.iter().map(|&a| map[a]).collect();
            let result_of_mapped = cod.apply(op, &images);
            if mapped_result != result_of_mapped {
                return Ok(Some(PreservationFailure {
                    op,
                    args,
                    mapped_result,
                    result_of_mapped,
                }));
            }
        }
    }
    Ok(None)
}

impl Homomorphism {
    pub fn new(dom: FiniteAlgebra, cod: FiniteAlgebra, map: Vec<usize>) -> Result<Self, Error> {
        match check_homomorphism(&dom, &cod, &map)? {
            None => Ok(Homomorphism { dom, cod, map }),
            Some(fail) => Err(Error::InvalidHomomorphism(format!(
                "{} -> {}: op {:?} at args {:?}: image of result is {} but result of images is {}",
                dom.name(),
                cod.name(),
                dom.signature().op(fail.op).name,
                fail.args,
                fail.mapped_result,
                fail.result_of_mapped
            ))),
        }
    }

    pub fn identity(alg: &FiniteAlgebra) -> Self {
        Homomorphism {
            dom: alg.clone(),
            cod: alg.clone(),
            map: (0..alg.size()).collect(),
        }
    }

    pub fn dom(&self) -> &FiniteAlgebra {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteAlgebra {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, element: usize) -> usize {
        self.map[element]
    }

    /// Diagrammatic composite `g ∘ self` (this map first, then `g`).
    pub fn then(&self, g: &Homomorphism) -> Result<Homomorphism, Error> {
        if !self.cod.same_structure(&g.dom) {
            return Err(Error::CarrierMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.dom.name(),
                self.cod.name(),
                g.dom.name(),
                g.cod.name()
            )));
        }
        Ok(Homomorphism {
            dom: self.dom.clone(),
            cod: g.cod.clone(),
            map: self.map.iter().map(|&v| g.map[v]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.dom.same_structure(&self.cod) && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Same underlying map (ignores algebra names).
    pub fn equal_map(&self, other: &Homomorphism) -> bool {
        self.map == other.map
    }
}

impl fmt::Display for Homomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .map
            .iter()
            .enumerate()
            .map(|(i, &v)| format!("{}↦{}", self.dom.label(i), self.cod.label(v)))
            .collect();
        write!(f, "{}: {} -> {}", entries.join(" "), self.dom.name(), self.cod.name())
    }
}

// ---------------------------------------------------------------------------
// Backtracking homomorphism enumeration with constraint propagation.

/// How a backtracking enumeration ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SearchEnd {
    /// The whole space was explored.
    Exhausted,
    /// The visitor stopped the search.
    Stopped,
    /// The node budget ran out first.
    Budget,
}

pub(crate) struct HomSearch<'a> {
    pub dom: &'a FiniteAlgebra,
    pub cod: &'a FiniteAlgebra,
    /// Pre-assigned values (must be consistent).
    pub pinned: Vec<Option<usize>>,
    /// Per-element allowed codomain values; `None` means unrestricted.
    pub candidates: Option<Vec<Vec<bool>>>,
    pub max_nodes: usize,
}

impl<'a> HomSearch<'a> {
    pub fn new(dom: &'a FiniteAlgebra, cod: &'a FiniteAlgebra) -> Self {
        HomSearch {
            dom,
            cod,
            pinned: vec![None; dom.size()],
            candidates: None,
            max_nodes: Limits::default().max_nodes,
        }
    }

    pub fn pin(&mut self, element: usize, value: usize) -> Result<(), Error> {
        if value >= self.cod.size() {
            return Err(Error::OutOfRange {
                element: value,
                size: self.cod.size(),
            });
        }
        match self.pinned[element] {
            Some(v) if v != value => Err(Error::Precondition(format!(
                "element {element} pinned to both {v} and {value}"
            ))),
            _ => {
                self.pinned[element] = Some(value);
                Ok(())
            }
        }
    }

    pub fn restrict(&mut self, element: usize, allowed: impl Fn(usize) -> bool) {
        let cands = self
            .candidates
            .get_or_insert_with(|| vec![vec![true; self.cod.size()]; self.dom.size()]);
        for v in 0..self.cod.size() {
            cands[element][v] = cands[element][v] && allowed(v);
        }
    }

    /// Run the search, invoking `visit` on every homomorphism found.
    pub fn visit(
        &self,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<SearchEnd, Error> {
        if self.dom.signature() != self.cod.signature() {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                self.dom.name(),
                self.cod.name()
            )));
        }
        // Pre-expand every operation's argument tuples once.
        let op_tuples: Vec<Vec<Vec<usize>>> = self
            .dom
            .signature()
            .ops()
            .iter()
            .map(|op| all_tuples(self.dom.size(), op.arity))
            .collect();
        let mut assign = self.pinned.clone();
        for (el, slot) in assign.iter().enumerate() {
            if let Some(v) = slot {
                if let Some(c) = &self.candidates {
                    if !c[el][*v] {
                        return Ok(SearchEnd::Exhausted); // pinned value excluded: no solutions
                    }
                }
            }
        }
        let mut nodes = 0usize;
        if !propagate(self.dom, self.cod, &op_tuples, &mut assign) {
            return Ok(SearchEnd::Exhausted);
        }
        self.dfs(&op_tuples, assign, &mut nodes, visit)
    }

    fn dfs(
        &self,
        op_tuples: &[Vec<Vec<usize>>],
        assign: Vec<Option<usize>>,
        nodes: &mut usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<SearchEnd, Error> {
        // Pick the unassigned element with the fewest allowed values.
        let mut chosen: Option<(usize, usize)> = None;
        for el in 0..self.dom.size() {
            if assign[el].is_none() {
                let width = match &self.candidates {
                    Some(c) => c[el].iter().filter(|&&b| b).count(),
                    None => self.cod.size(),
                };
                if chosen.map_or(true, |(_, w)| width < w) {
                    chosen = Some((el, width));
                }
            }
        }
        let Some((el, _)) = chosen else {
            let map: Vec<usize> = assign.iter().map(|v| v.unwrap()).collect();
            return Ok(match visit(&map) {
                ControlFlow::Continue(()) => SearchEnd::Exhausted,
                ControlFlow::Break(()) => SearchEnd::Stopped,
            });
        };
        for v in 0..self.cod.size() {
            if let Some(c) = &self.candidates {
                if !c[el][v] {
                    continue;
                }
            }
            *nodes += 1;
            if *nodes > self.max_nodes {
                return Ok(SearchEnd::Budget);
            }
            let mut next = assign.clone();
            next[el] = Some(v);
            if !propagate(self.dom, self.cod, op_tuples, &mut next) {
                continue;
            }
            if let Some(c) = &self.candidates {
                // Propagation may have forced values the caller disallowed.
                if next
                    .iter()
                    .enumerate()
                    .any(|(e, s)| matches!(s, Some(v) if !c[e][*v]))
                {
                    continue;
                }
            }
            match self.dfs(op_tuples, next, nodes, visit)? {
                SearchEnd::Exhausted => {}
                end => return Ok(end),
            }
        }
        Ok(SearchEnd::Exhausted)
    }
}

/// Force values implied by fully-assigned argument tuples until a fixpoint;
/// returns false on contradiction. At a full assignment this sweep has
/// checked every tuple, so surviving leaves are exactly the homomorphisms.
fn propagate(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    op_tuples: &[Vec<Vec<usize>>],
    assign: &mut [Option<usize>],
) -> bool {
    loop {
        let mut changed = false;
        for (op, tuples) in op_tuples.iter().enumerate() {
            'tuple: for args in tuples {
                let mut images = Vec::with_capacity(args.len());
                for &a in args {
                    match assign[a] {
                        Some(v) => images.push(v),
                        None => continue 'tuple,
                    }
                }
                let result = dom.apply(op, args);
                let forced = cod.apply(op, &images);
                match assign[result] {
                    Some(v) if v != forced => return false,
                    Some(_) => {}
                    None => {
                        assign[result] = Some(forced);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

/// Every homomorphism `dom -> cod` extending the pinned entries, found by
/// backtracking with constraint propagation; exhaustive and duplicate-free,
/// in a deterministic order.
pub fn enumerate_homomorphisms(
    dom: &FiniteAlgebra,
    cod: &FiniteAlgebra,
    pinned: &[(usize, usize)],
) -> Result<Vec<Homomorphism>, Error> {
    let mut search = HomSearch::new(dom, cod);
    for &(el, v) in pinned {
        if el >= dom.size() {
            return Err(Error::OutOfRange {
                element: el,
                size: dom.size(),
            });
        }
        search.pin(el, v)?;
    }
    let mut found = Vec::new();
    let end = search.visit(&mut |map| {
        found.push(Homomorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            map: map.to_vec(),
        });
        ControlFlow::Continue(())
    })?;
    match end {
        SearchEnd::Budget => Err(Error::ResourceBound {
            what: "homomorphism enumeration nodes".into(),
            budget: search.max_nodes,
            reached: search.max_nodes,
        }),
        _ => Ok(found),
    }
}

// ---------------------------------------------------------------------------
// Products, generated subalgebras, induced subalgebras.

/// Mixed-radix index of a tuple (first coordinate most significant).
pub fn product_index(sizes: &[usize], tuple: &[usize]) -> usize {
    tuple
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&t, &s)| acc * s + t)
}

/// Inverse of [`product_index`].
pub fn product_tuple(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut tuple = vec![0; sizes.len()];
    for (slot, &s) in sizes.iter().enumerate().rev() {
        tuple[slot] = index % s;
        index /= s;
    }
    tuple
}

/// Direct product: carrier is the mixed-radix-encoded cartesian product,
/// operations act coordinatewise.
pub fn product(factors: &[&FiniteAlgebra]) -> Result<FiniteAlgebra, Error> {
    let first = factors
        .first()
        .ok_or_else(|| Error::Precondition("product of zero algebras".into()))?;
    for f in factors {
        if f.signature() != first.signature() {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                first.name(),
                f.name()
            )));
        }
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let size: usize = sizes.iter().product();
    let mut tables = Vec::with_capacity(first.signature().len());
    for (op, sym) in first.signature().ops().iter().enumerate() {
        let mut table = Vec::with_capacity(size.pow(sym.arity as u32));
        for args in all_tuples(size, sym.arity) {
            let arg_tuples: Vec<Vec<usize>> =
                args.iter().map(|&a| product_tuple(&sizes, a)).collect();
            let result: Vec<usize> = factors
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let coord_args: Vec<usize> = arg_tuples.iter().map(|t| t[i]).collect();
                    f.apply(op, &coord_args)
                })
                .collect();
            table.push(product_index(&sizes, &result));
        }
        tables.push(table);
    }
    let labels = (0..size)
        .map(|i| {
            let tuple = product_tuple(&sizes, i);
            let parts: Vec<String> = tuple
                .iter()
                .zip(factors)
                .map(|(&t, f)| f.label(t))
                .collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let name = factors
        .iter()
        .map(|f| f.name().to_string())
        .collect::<Vec<_>>()
        .join("x");
    FiniteAlgebra::new(name, first.signature().clone(), size, Some(labels), tables)
}

/// The j-th coordinate projection of a product built by [`product`].
pub fn product_projection(
    prod: &FiniteAlgebra,
    factors: &[&FiniteAlgebra],
    j: usize,
) -> Homomorphism {
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let map = (0..prod.size())
        .map(|i| product_tuple(&sizes, i)[j])
        .collect();
    Homomorphism {
        dom: prod.clone(),
        cod: factors[j].clone(),
        map,
    }
}

/// Least operation-closed superset of `seed`, as a sorted element list.
/// With a constant-free signature the empty seed yields the empty list;
/// constants are always included otherwise.
pub fn subalgebra_generated(alg: &FiniteAlgebra, seed: &[usize]) -> Result<Vec<usize>, Error> {
    for &s in seed {
        if s >= alg.size() {
            return Err(Error::OutOfRange {
                element: s,
                size: alg.size(),
            });
        }
    }
    let mut member = vec![false; alg.size()];
    let mut elements: Vec<usize> = Vec::new();
    for &s in seed {
        if !member[s] {
            member[s] = true;
            elements.push(s);
        }
    }
    loop {
        let mut added = false;
        for (op, sym) in alg.signature().ops().iter().enumerate() {
            let tuples = all_tuples(elements.len(), sym.arity);
            for t in tuples {
                let args: Vec<usize> = t.iter().map(|&i| elements[i]).collect();
                let r = alg.apply(op, &args);
                if !member[r] {
                    member[r] = true;
                    elements.push(r);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    elements.sort_unstable();
    Ok(elements)
}

/// The algebra induced on an operation-closed subset, with the embedding
/// (new index -> old element). Elements must be sorted and closed under all
/// operations.
pub fn induced_subalgebra(
    alg: &FiniteAlgebra,
    elements: &[usize],
    name: impl Into<String>,
) -> Result<(FiniteAlgebra, Vec<usize>), Error> {
    let mut back = HashMap::new();
    for (i, &e) in elements.iter().enumerate() {
        if e >= alg.size() {
            return Err(Error::OutOfRange {
                element: e,
                size: alg.size(),
            });
        }
        back.insert(e, i);
    }
    let size = elements.len();
    if size == 0 {
        return Err(Error::Precondition("empty subalgebra carrier".into()));
    }
    let mut tables = Vec::new();
    for (op, sym) in alg.signature().ops().iter().enumerate() {
        let mut table = Vec::with_capacity(size.pow(sym.arity as u32));
        for t in all_tuples(size, sym.arity) {
            let args: Vec<usize> = t.iter().map(|&i| elements[i]).collect();
            let r = alg.apply(op, &args);
            let Some(&ri) = back.get(&r) else {
                return Err(Error::Precondition(format!(
                    "subset not closed: op {:?} at {:?} escapes to {r}",
                    sym.name, args
                )));
            };
            table.push(ri);
        }
        tables.push(table);
    }
    let labels = elements.iter().map(|&e| alg.label(e)).collect();
    let sub = FiniteAlgebra::new(name, alg.signature().clone(), size, Some(labels), tables)?;
    Ok((sub, elements.to_vec()))
}

// ---------------------------------------------------------------------------
// Split pullbacks.

/// A double split epimorphism: split epis `f: A -> B` (section `r`) and
/// `g: C -> B` (section `s`), completed with their pullback
/// `E = {(a, c) : f(a) = g(c)}`, the projections `p1`, `p2`, and the induced
/// sections `e1(a) = (a, sf(a))`, `e2(c) = (rg(c), c)`.
///
/// All eight identities are verified at construction:
/// `fr = 1 = gs`, `p1 e1 = 1`, `p2 e2 = 1`, `g p2 = f p1`, `p1 e2 = rg`,
/// `e1 r = e2 s`, `p2 e1 = sf`.
#[derive(Clone, Debug)]
pub struct SplitPullbackDiagram {
    pub a: FiniteAlgebra,
    pub b: FiniteAlgebra,
    pub c: FiniteAlgebra,
    pub e: FiniteAlgebra,
    /// Element i of `e` is the pair `pairs[i] = (a-element, c-element)`.
    pub pairs: Vec<(usize, usize)>,
    pub f: Homomorphism,
    pub r: Homomorphism,
    pub g: Homomorphism,
    pub s: Homomorphism,
    pub p1: Homomorphism,
    pub p2: Homomorphism,
    pub e1: Homomorphism,
    pub e2: Homomorphism,
}

impl SplitPullbackDiagram {
    pub fn pair_index(&self, a: usize, c: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, c)).ok()
    }
}

/// Build the split pullback of two split epimorphisms over a common base.
pub fn split_pullback(
    f: &Homomorphism,
    r: &Homomorphism,
    g: &Homomorphism,
    s: &Homomorphism,
) -> Result<SplitPullbackDiagram, Error> {
    let a = f.dom().clone();
    let b = f.cod().clone();
    let c = g.dom().clone();
    if !r.dom().same_structure(&b) || !r.cod().same_structure(&a) {
        return Err(Error::Precondition("r must map B back into A".into()));
    }
    if !g.cod().same_structure(&b) {
        return Err(Error::Precondition("g must share f's codomain".into()));
    }
    if !s.dom().same_structure(&b) || !s.cod().same_structure(&c) {
        return Err(Error::Precondition("s must map B back into C".into()));
    }
    if !r.then(f)?.is_identity() {
        return Err(Error::Precondition("fr = 1 fails".into()));
    }
    if !s.then(g)?.is_identity() {
        return Err(Error::Precondition("gs = 1 fails".into()));
    }

    let prod = product(&[&a, &c])?;
    let sizes = [a.size(), c.size()];
    let mut pairs = Vec::new();
    let mut indices = Vec::new();
    for ai in 0..a.size() {
        for ci in 0..c.size() {
            if f.apply(ai) == g.apply(ci) {
                pairs.push((ai, ci));
                indices.push(product_index(&sizes, &[ai, ci]));
            }
        }
    }
    let (e, _) = induced_subalgebra(&prod, &indices, format!("{}*{}", a.name(), c.name()))?;
    let index_of = |ai: usize, ci: usize| -> usize {
        pairs
            .binary_search(&(ai, ci))
            .expect("pair in pullback carrier")
    };

    let p1 = Homomorphism::new(e.clone(), a.clone(), pairs.iter().map(|&(x, _)| x).collect())?;
    let p2 = Homomorphism::new(e.clone(), c.clone(), pairs.iter().map(|&(_, y)| y).collect())?;
    let e1 = Homomorphism::new(
        a.clone(),
        e.clone(),
        (0..a.size())
            .map(|ai| index_of(ai, s.apply(f.apply(ai))))
            .collect(),
    )?;
    let e2 = Homomorphism::new(
        c.clone(),
        e.clone(),
        (0..c.size())
            .map(|ci| index_of(r.apply(g.apply(ci)), ci))
            .collect(),
    )?;

    let diagram = SplitPullbackDiagram {
        a,
        b,
        c,
        e,
        pairs,
        f: f.clone(),
        r: r.clone(),
        g: g.clone(),
        s: s.clone(),
        p1,
        p2,
        e1,
        e2,
    };
    verify_split_pullback(&diagram)?;
    Ok(diagram)
}

fn verify_split_pullback(d: &SplitPullbackDiagram) -> Result<(), Error> {
    let checks: [(&str, bool); 7] = [
        ("fr = 1", d.r.then(&d.f)?.is_identity()),
        ("gs = 1", d.s.then(&d.g)?.is_identity()),
        ("p1 e1 = 1", d.e1.then(&d.p1)?.is_identity()),
        ("p2 e2 = 1", d.e2.then(&d.p2)?.is_identity()),
        (
            "f p1 = g p2",
            d.p1.then(&d.f)?.equal_map(&d.p2.then(&d.g)?),
        ),
        ("p1 e2 = rg", d.e2.then(&d.p1)?.equal_map(&d.g.then(&d.r)?)),
        ("p2 e1 = sf", d.e1.then(&d.p2)?.equal_map(&d.f.then(&d.s)?)),
    ];
    for (law, ok) in checks {
        if !ok {
            return Err(Error::Verification(format!(
                "split pullback identity {law} fails"
            )));
        }
    }
    // e1 r = e2 s, the eighth identity.
    if !d.r.then(&d.e1)?.equal_map(&d.s.then(&d.e2)?) {
        return Err(Error::Verification("split pullback identity e1 r = e2 s fails".into()));
    }
    Ok(())
}

//! Compatible binary relations as dense bit matrices: closure, composition,
//! transitive closure, alternating chains, and structural classification.

use std::fmt;

use crate::algebra::{all_tuples, product, product_index, subalgebra_generated, FiniteAlgebra, Homomorphism};
use crate::Error;

/// A dense boolean matrix over 64-bit words, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMat {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMat {
    pub fn new(rows: usize, cols: usize) -> BitMat {
        let stride = cols.div_ceil(64);
        BitMat {
            rows,
            cols,
            stride,
            words: vec![0; rows * stride],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.words[r * self.stride + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.words[r * self.stride + c / 64] |= 1 << (c % 64);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset_of(&self, other: &BitMat) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn transpose(&self) -> BitMat {
        let mut out = BitMat::new(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r);
                }
            }
        }
        out
    }

    /// Boolean matrix product (`self.cols` must equal `other.rows`).
    pub fn compose(&self, other: &BitMat) -> BitMat {
        let mut out = BitMat::new(self.rows, other.cols);
        for r in 0..self.rows {
            for mid in 0..self.cols {
                if self.get(r, mid) {
                    let (dst, src) = (r * out.stride, mid * other.stride);
                    for w in 0..other.stride {
                        out.words[dst + w] |= other.words[src + w];
                    }
                }
            }
        }
        out
    }

    pub fn union(&self, other: &BitMat) -> BitMat {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        out
    }
}

impl fmt::Debug for BitMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMat({}x{}, {} set)", self.rows, self.cols, self.count())
    }
}

/// A binary relation between two algebras of the same signature whose pair
/// set is a subalgebra of their product — verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibleRelation {
    left: FiniteAlgebra,
    right: FiniteAlgebra,
    bits: BitMat,
}

impl CompatibleRelation {
    pub fn new(
        left: FiniteAlgebra,
        right: FiniteAlgebra,
        bits: BitMat,
    ) -> Result<CompatibleRelation, Error> {
        if left.signature() != right.signature() {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                left.name(),
                right.name()
            )));
        }
        if bits.rows() != left.size() || bits.cols() != right.size() {
            return Err(Error::CarrierMismatch(format!(
                "bit matrix {}x{} for carriers {}x{}",
                bits.rows(),
                bits.cols(),
                left.size(),
                right.size()
            )));
        }
        let rel = CompatibleRelation { left, right, bits };
        rel.verify_compatible()?;
        Ok(rel)
    }

    pub fn from_pairs(
        left: FiniteAlgebra,
        right: FiniteAlgebra,
        pairs: &[(usize, usize)],
    ) -> Result<CompatibleRelation, Error> {
        let mut bits = BitMat::new(left.size(), right.size());
        for &(x, y) in pairs {
            if x >= left.size() {
                return Err(Error::OutOfRange {
                    element: x,
                    size: left.size(),
                });
            }
            if y >= right.size() {
                return Err(Error::OutOfRange {
                    element: y,
                    size: right.size(),
                });
            }
            bits.set(x, y);
        }
        CompatibleRelation::new(left, right, bits)
    }

    fn verify_compatible(&self) -> Result<(), Error> {
        let pairs = self.pairs();
        for (op, sym) in self.left.signature().ops().iter().enumerate() {
            for tuple in all_tuples(pairs.len(), sym.arity) {
                let lefts: Vec<usize> = tuple.iter().map(|&i| pairs[i].0).collect();
                let rights: Vec<usize> = tuple.iter().map(|&i| pairs[i].1).collect();
                let l = self.left.apply(op, &lefts);
                let r = self.right.apply(op, &rights);
                if !self.bits.get(l, r) {
                    return Err(Error::Precondition(format!(
                        "pair set not closed under {:?}: escapes to ({}, {})",
                        sym.name,
                        self.left.label(l),
                        self.right.label(r)
                    )));
                }
            }
        }
        Ok(())
    }

    /// The diagonal relation on an algebra.
    pub fn diagonal(alg: &FiniteAlgebra) -> CompatibleRelation {
        let mut bits = BitMat::new(alg.size(), alg.size());
        for i in 0..alg.size() {
            bits.set(i, i);
        }
        CompatibleRelation {
            left: alg.clone(),
            right: alg.clone(),
            bits,
        }
    }

    /// The full relation between two algebras of the same signature.
    pub fn full(left: &FiniteAlgebra, right: &FiniteAlgebra) -> Result<CompatibleRelation, Error> {
        if left.signature() != right.signature() {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                left.name(),
                right.name()
            )));
        }
        let mut bits = BitMat::new(left.size(), right.size());
        for x in 0..left.size() {
            for y in 0..right.size() {
                bits.set(x, y);
            }
        }
        Ok(CompatibleRelation {
            left: left.clone(),
            right: right.clone(),
            bits,
        })
    }

    pub fn left(&self) -> &FiniteAlgebra {
        &self.left
    }

    pub fn right(&self) -> &FiniteAlgebra {
        &self.right
    }

    pub fn bits(&self) -> &BitMat {
        &self.bits
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.bits.get(x, y)
    }

    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_square(&self) -> bool {
        self.left.same_structure(&self.right)
    }

    /// All pairs, sorted lexicographically.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.len());
        for x in 0..self.left.size() {
            for y in 0..self.right.size() {
                if self.bits.get(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Same pair set (carriers assumed compatible).
    pub fn same_pairs(&self, other: &CompatibleRelation) -> bool {
        self.bits == other.bits
    }

    /// The opposite relation (matrix transpose).
    pub fn inverse(&self) -> CompatibleRelation {
        CompatibleRelation {
            left: self.right.clone(),
            right: self.left.clone(),
            bits: self.bits.transpose(),
        }
    }
}

impl fmt::Display for CompatibleRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self
            .pairs()
            .iter()
            .map(|&(x, y)| format!("({},{})", self.left.label(x), self.right.label(y)))
            .collect();
        write!(f, "{{{}}}", body.join(" "))
    }
}

/// Least compatible relation containing the seed pairs (the subalgebra of
/// `left × right` they generate).
pub fn compatible_closure(
    left: &FiniteAlgebra,
    right: &FiniteAlgebra,
    seed: &[(usize, usize)],
) -> Result<CompatibleRelation, Error> {
    if left.signature() != right.signature() {
        return Err(Error::SignatureMismatch(format!(
            "{} vs {}",
            left.name(),
            right.name()
        )));
    }
    let prod = product(&[left, right])?;
    let sizes = [left.size(), right.size()];
    let mut indices = Vec::with_capacity(seed.len());
    for &(x, y) in seed {
        if x >= left.size() {
            return Err(Error::OutOfRange {
                element: x,
                size: left.size(),
            });
        }
        if y >= right.size() {
            return Err(Error::OutOfRange {
                element: y,
                size: right.size(),
            });
        }
        indices.push(product_index(&sizes, &[x, y]));
    }
    let closed = subalgebra_generated(&prod, &indices)?;
    let mut bits = BitMat::new(left.size(), right.size());
    for i in closed {
        bits.set(i / right.size(), i % right.size());
    }
    CompatibleRelation::new(left.clone(), right.clone(), bits)
}

/// Left-to-right relational composition: `x (R;S) z` iff there is a `y` with
/// `x R y` and `y S z`.
pub fn compose(r: &CompatibleRelation, s: &CompatibleRelation) -> Result<CompatibleRelation, Error> {
    if !r.right.same_structure(&s.left) {
        return Err(Error::CarrierMismatch(format!(
            "middle algebras differ: {} vs {}",
            r.right.name(),
            s.left.name()
        )));
    }
    CompatibleRelation::new(r.left.clone(), s.right.clone(), r.bits.compose(&s.bits))
}

/// The congruence `{(x, y) : h(x) = h(y)}` on the domain of `h`.
pub fn kernel_pair(h: &Homomorphism) -> CompatibleRelation {
    let n = h.dom().size();
    let mut bits = BitMat::new(n, n);
    for x in 0..n {
        for y in 0..n {
            if h.apply(x) == h.apply(y) {
                bits.set(x, y);
            }
        }
    }
    CompatibleRelation {
        left: h.dom().clone(),
        right: h.dom().clone(),
        bits,
    }
}

/// Union of the power chain `R ⊆ R² ⊆ …` of a reflexive relation, iterated to
/// its fixpoint. Returns the closure and the stabilisation exponent: the
/// least k with `R^k = R^{k+1}`.
pub fn transitive_closure(r: &CompatibleRelation) -> Result<(CompatibleRelation, usize), Error> {
    if !r.is_square() {
        return Err(Error::CarrierMismatch(
            "transitive closure needs a square relation".into(),
        ));
    }
    if let Some(missing) = (0..r.left.size()).find(|&i| !r.contains(i, i)) {
        return Err(Error::NotReflexive(missing));
    }
    let mut power = r.bits.clone();
    let mut exponent = 1;
    loop {
        let next = power.compose(&r.bits);
        if next == power {
            return Ok((
                CompatibleRelation {
                    left: r.left.clone(),
                    right: r.right.clone(),
                    bits: power,
                },
                exponent,
            ));
        }
        power = next;
        exponent += 1;
    }
}

/// The n-th term of the alternating chain Δ, R, RS, RSR, … (n factors,
/// starting with R). Both relations must be reflexive on the same carrier.
pub fn alternating_chain(
    r: &CompatibleRelation,
    s: &CompatibleRelation,
    n: usize,
) -> Result<CompatibleRelation, Error> {
    if !r.is_square() || !s.is_square() || !r.left.same_structure(&s.left) {
        return Err(Error::CarrierMismatch(
            "alternating chain needs two square relations on one carrier".into(),
        ));
    }
    for rel in [r, s] {
        if let Some(i) = (0..rel.left.size()).find(|&i| !rel.contains(i, i)) {
            return Err(Error::NotReflexive(i));
        }
    }
    let mut out = CompatibleRelation::diagonal(&r.left);
    for k in 0..n {
        let factor = if k % 2 == 0 { r } else { s };
        out = compose(&out, factor)?;
    }
    Ok(out)
}

/// Structural classification of a relation. Square-only flags are `None` for
/// rectangular relations; each failing flag carries its lexicographically
/// least witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationClassification {
    /// `Err(i)`: element i is not related to itself.
    pub reflexive: Option<Result<(), usize>>,
    /// `Err((x, y))`: `x R y` but not `y R x`.
    pub symmetric: Option<Result<(), (usize, usize)>>,
    /// `Err((x, y, z))`: `x R y R z` but not `x R z`.
    pub transitive: Option<Result<(), (usize, usize, usize)>>,
    /// `Err((x, y, z, u))`: `x R y`, `z R y`, `z R u` but not `x R u`.
    pub difunctional: Result<(), (usize, usize, usize, usize)>,
    pub preorder: Option<bool>,
    pub equivalence: Option<bool>,
}

pub fn classify_relation(r: &CompatibleRelation) -> RelationClassification {
    let (nl, nr) = (r.left.size(), r.right.size());
    let square = r.is_square();

    let reflexive = square.then(|| match (0..nl).find(|&i| !r.contains(i, i)) {
        Some(i) => Err(i),
        None => Ok(()),
    });
    let symmetric = square.then(|| {
        for x in 0..nl {
            for y in 0..nr {
                if r.contains(x, y) && !r.contains(y, x) {
                    return Err((x, y));
                }
            }
        }
        Ok(())
    });
    let transitive = square.then(|| {
        for x in 0..nl {
            for y in 0..nr {
                if !r.contains(x, y) {
                    continue;
                }
                for z in 0..nr {
                    if r.contains(y, z) && !r.contains(x, z) {
                        return Err((x, y, z));
                    }
                }
            }
        }
        Ok(())
    });
    let difunctional = (|| {
        for x in 0..nl {
            for y in 0..nr {
                if !r.contains(x, y) {
                    continue;
                }
                for z in 0..nl {
                    if !r.contains(z, y) {
                        continue;
                    }
                    for u in 0..nr {
                        if r.contains(z, u) && !r.contains(x, u) {
                            return Err((x, y, z, u));
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    let preorder = match (&reflexive, &transitive) {
        (Some(a), Some(b)) => Some(a.is_ok() && b.is_ok()),
        _ => None,
    };
    let equivalence = match (&preorder, &symmetric) {
        (Some(p), Some(s)) => Some(*p && s.is_ok()),
        _ => None,
    };
    RelationClassification {
        reflexive,
        symmetric,
        transitive,
        difunctional,
        preorder,
        equivalence,
    }
}

/// Least congruence containing the seed pairs: alternate compatible closure
/// and reflexive-symmetric-transitive closure to a joint fixpoint.
pub fn congruence_closure(
    alg: &FiniteAlgebra,
    seed: &[(usize, usize)],
) -> Result<CompatibleRelation, Error> {
    let n = alg.size();
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    pairs.extend_from_slice(seed);
    let mut current = {
        let mut bits = BitMat::new(n, n);
        for &(x, y) in &pairs {
            if x >= n || y >= n {
                return Err(Error::OutOfRange {
                    element: x.max(y),
                    size: n,
                });
            }
            bits.set(x, y);
            bits.set(y, x);
        }
        bits
    };
    loop {
        let before = current.clone();
        // Transitive (and already reflexive-symmetric) closure.
        loop {
            let next = current.compose(&current).union(&current);
            if next == current {
                break;
            }
            current = next;
        }
        // One sweep of operation closure, symmetrised.
        let listed: Vec<(usize, usize)> = {
            let mut out = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if current.get(x, y) {
                        out.push((x, y));
                    }
                }
            }
            out
        };
        for (op, sym) in alg.signature().ops().iter().enumerate() {
            for tuple in all_tuples(listed.len(), sym.arity) {
                let lefts: Vec<usize> = tuple.iter().map(|&i| listed[i].0).collect();
                let rights: Vec<usize> = tuple.iter().map(|&i| listed[i].1).collect();
                let l = alg.apply(op, &lefts);
                let r = alg.apply(op, &rights);
                current.set(l, r);
                current.set(r, l);
            }
        }
        if current == before {
            break;
        }
    }
    CompatibleRelation::new(alg.clone(), alg.clone(), current)
}

/// Equivalence classes of an equivalence relation, each sorted, ordered by
/// least element.
pub fn partition_classes(r: &CompatibleRelation) -> Vec<Vec<usize>> {
    let n = r.left.size();
    let mut seen = vec![false; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        let class: Vec<usize> = (0..n).filter(|&y| r.contains(x, y)).collect();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class);
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::Homomorphism;

    fn b_kernels() -> (CompatibleRelation, CompatibleRelation) {
        (
            kernel_pair(&builtin::mitschke_f()),
            kernel_pair(&builtin::mitschke_g()),
        )
    }

    #[test]
    fn kernel_partitions() {
        let b = builtin::mitschke_b();
        let id = Homomorphism::identity(&b);
        assert!(kernel_pair(&id).same_pairs(&CompatibleRelation::diagonal(&b)));

        let (r, s) = b_kernels();
        assert_eq!(partition_classes(&r), vec![vec![0, 1], vec![2]]);
        assert_eq!(partition_classes(&s), vec![vec![0, 2], vec![1]]);
    }

    #[test]
    fn kernels_are_congruences() {
        let (r, s) = b_kernels();
        for rel in [r, s] {
            let c = classify_relation(&rel);
            assert_eq!(c.equivalence, Some(true));
            assert_eq!(c.difunctional, Ok(()));
        }
    }

    #[test]
    fn composites_differ_on_the_documented_pair() {
        let (r, s) = b_kernels();
        let rs = compose(&r, &s).unwrap();
        let sr = compose(&s, &r).unwrap();
        // (2,3) in paper labels is (1,2) here; (3,2) is (2,1).
        assert!(rs.contains(1, 2));
        assert!(!rs.contains(2, 1));
        assert!(sr.contains(2, 1));
        assert!(!sr.contains(1, 2));
        // Exact composites: everything except the one missing pair each.
        let all: Vec<(usize, usize)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let expect_rs: Vec<_> = all.iter().copied().filter(|&p| p != (2, 1)).collect();
        let expect_sr: Vec<_> = all.iter().copied().filter(|&p| p != (1, 2)).collect();
        assert_eq!(rs.pairs(), expect_rs);
        assert_eq!(sr.pairs(), expect_sr);
    }

    #[test]
    fn compose_with_diagonal_is_identity() {
        let (r, _) = b_kernels();
        let delta = CompatibleRelation::diagonal(r.left());
        assert!(compose(&r, &delta).unwrap().same_pairs(&r));
        assert!(compose(&delta, &delta).unwrap().same_pairs(&delta));
    }

    #[test]
    fn transitive_closure_examples() {
        let b = builtin::mitschke_b();
        let delta = CompatibleRelation::diagonal(&b);
        let (closure, exponent) = transitive_closure(&delta).unwrap();
        assert!(closure.same_pairs(&delta));
        assert_eq!(exponent, 1);

        let (r, _) = b_kernels();
        let (closure, exponent) = transitive_closure(&r).unwrap();
        assert!(closure.same_pairs(&r)); // congruences are transitive
        assert_eq!(exponent, 1);
    }

    #[test]
    fn transitive_closure_requires_reflexive() {
        let b = builtin::mitschke_b();
        let rel = CompatibleRelation::from_pairs(b.clone(), b.clone(), &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(transitive_closure(&rel), Err(Error::NotReflexive(1)));
    }

    #[test]
    fn alternating_chain_terms() {
        let (r, s) = b_kernels();
        let delta = CompatibleRelation::diagonal(r.left());
        assert!(alternating_chain(&r, &s, 0).unwrap().same_pairs(&delta));
        assert!(alternating_chain(&r, &s, 1).unwrap().same_pairs(&r));
        let rs = compose(&r, &s).unwrap();
        assert!(alternating_chain(&r, &s, 2).unwrap().same_pairs(&rs));
        // At n = 3 both chains reach the full relation: 3-permutability.
        let rsr = alternating_chain(&r, &s, 3).unwrap();
        let srs = alternating_chain(&s, &r, 3).unwrap();
        assert_eq!(rsr.len(), 9);
        assert!(rsr.same_pairs(&srs));
    }

    #[test]
    fn classify_the_two_chain_order() {
        let sl = builtin::semilattice2();
        let order =
            CompatibleRelation::from_pairs(sl.clone(), sl.clone(), &[(0, 0), (0, 1), (1, 1)])
                .unwrap();
        let c = classify_relation(&order);
        assert_eq!(c.reflexive, Some(Ok(())));
        assert_eq!(c.transitive, Some(Ok(())));
        assert_eq!(c.symmetric, Some(Err((0, 1))));
        assert_eq!(c.preorder, Some(true));
        assert_eq!(c.equivalence, Some(false));
        assert_eq!(c.difunctional, Err((1, 1, 0, 0)));
    }

    #[test]
    fn difunctionality_matches_matrix_characterisation() {
        // R difunctional iff R;R⁻¹;R ⊆ R.
        let sl = builtin::semilattice2();
        let b = builtin::mitschke_b();
        let mut rels = vec![
            CompatibleRelation::diagonal(&b),
            CompatibleRelation::full(&b, &b).unwrap(),
            CompatibleRelation::from_pairs(sl.clone(), sl.clone(), &[(0, 0), (0, 1), (1, 1)])
                .unwrap(),
        ];
        let (r, s) = b_kernels();
        rels.push(compose(&r, &s).unwrap());
        rels.push(r);
        rels.push(s);
        for rel in rels {
            let pointwise = classify_relation(&rel).difunctional.is_ok();
            let zigzag = compose(&compose(&rel, &rel.inverse()).unwrap(), &rel).unwrap();
            assert_eq!(pointwise, zigzag.bits().is_subset_of(rel.bits()));
        }
    }

    #[test]
    fn closure_from_single_pair_on_b() {
        let b = builtin::mitschke_b();
        let rel = compatible_closure(&b, &b, &[(0, 1)]).unwrap();
        assert_eq!(rel.pairs(), vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn closure_of_empty_seed_is_empty_without_constants() {
        let b = builtin::mitschke_b();
        let rel = compatible_closure(&b, &b, &[]).unwrap();
        assert!(rel.is_empty());
    }

    #[test]
    fn principal_congruences_of_b() {
        let b = builtin::mitschke_b();
        let (r, s) = b_kernels();
        assert!(congruence_closure(&b, &[(0, 1)]).unwrap().same_pairs(&r));
        assert!(congruence_closure(&b, &[(0, 2)]).unwrap().same_pairs(&s));
        let full = CompatibleRelation::full(&b, &b).unwrap();
        assert!(congruence_closure(&b, &[(1, 2)]).unwrap().same_pairs(&full));
    }

    #[test]
    fn inverse_laws() {
        let (r, s) = b_kernels();
        let rs = compose(&r, &s).unwrap();
        let lhs = rs.inverse();
        let rhs = compose(&s.inverse(), &r.inverse()).unwrap();
        assert!(lhs.same_pairs(&rhs));
        assert!(r.inverse().inverse().same_pairs(&r));
    }
}

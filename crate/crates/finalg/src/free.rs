//! Free algebras of quasivarieties generated by finite algebras, built as
//! subalgebras of evaluation-vector products with a witness term per element.

use std::collections::HashMap;

use crate::algebra::{all_tuples, FiniteAlgebra, Signature};
use crate::term::Term;
use crate::{Error, Limits};

/// A class of algebras: either the quasivariety generated by finitely many
/// finite algebras, or an equationally presented class carried as data.
/// Exact free-algebra construction exists only for the generated form.
#[derive(Clone, Debug)]
pub enum VarietySpec {
    Generated { generators: Vec<FiniteAlgebra> },
    Presented {
        signature: Signature,
        identities: Vec<crate::term::Identity>,
        quasi_identities: Vec<crate::term::QuasiIdentity>,
        depth_bound: usize,
    },
}

impl VarietySpec {
    pub fn generated(generators: Vec<FiniteAlgebra>) -> VarietySpec {
        VarietySpec::Generated { generators }
    }

    pub fn generator_algebras(&self) -> Option<&[FiniteAlgebra]> {
        match self {
            VarietySpec::Generated { generators } => Some(generators),
            VarietySpec::Presented { .. } => None,
        }
    }
}

/// The free algebra on k generators of a generated quasivariety. Elements
/// are concatenated evaluation vectors (one block of coordinates per
/// generating algebra and assignment); each element carries the first
/// minimal-depth term that produced it.
#[derive(Clone, Debug)]
pub struct FreeAlgebra {
    pub algebra: FiniteAlgebra,
    /// Evaluation vector of each element.
    pub vectors: Vec<Vec<usize>>,
    /// Minimal-depth witness term of each element (deterministic tie-break:
    /// generation order by operation index, then argument element indices).
    pub witnesses: Vec<Term>,
    /// Element index of each of the k generators (projections).
    pub generators: Vec<usize>,
    /// Variable index used for each generator in witness terms.
    pub generator_vars: Vec<usize>,
}

impl FreeAlgebra {
    pub fn size(&self) -> usize {
        self.algebra.size()
    }
}

/// Variable indices used to display k generators: two generators are shown
/// as x and z (matching the permutability constructions), three as x, y, z.
fn generator_var_indices(k: usize) -> Vec<usize> {
    match k {
        1 => vec![0],
        2 => vec![0, 2],
        3 => vec![0, 1, 2],
        _ => (0..k).collect(),
    }
}

pub fn free_algebra(spec: &VarietySpec, k: usize) -> Result<FreeAlgebra, Error> {
    free_algebra_with_limits(spec, k, &Limits::default())
}

pub fn free_algebra_with_limits(
    spec: &VarietySpec,
    k: usize,
    limits: &Limits,
) -> Result<FreeAlgebra, Error> {
    let Some(gens) = spec.generator_algebras() else {
        return Err(Error::Precondition(
            "free algebras exist only for generated quasivarieties; \
             presented classes support bounded term enumeration only"
                .into(),
        ));
    };
    if k == 0 {
        return Err(Error::Precondition("at least one generator required".into()));
    }
    let first = gens
        .first()
        .ok_or_else(|| Error::Precondition("at least one generating algebra required".into()))?;
    for g in gens {
        if g.signature() != first.signature() {
            return Err(Error::SignatureMismatch(format!(
                "{} vs {}",
                first.name(),
                g.name()
            )));
        }
    }
    let signature = first.signature().clone();

    // One vector coordinate per (generating algebra, assignment of the k
    // generators); the assignments are enumerated lexicographically.
    let assignments: Vec<Vec<Vec<usize>>> = gens
        .iter()
        .map(|g| all_tuples(g.size(), k))
        .collect();
    let coord_algebra: Vec<usize> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, g)| std::iter::repeat(i).take(g.size().pow(k as u32)))
        .collect();

    let gen_vars = generator_var_indices(k);
    let mut vectors: Vec<Vec<usize>> = Vec::new();
    let mut witnesses: Vec<Term> = Vec::new();
    let mut depth: Vec<usize> = Vec::new();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut generators = Vec::with_capacity(k);

    for j in 0..k {
        let mut vec = Vec::with_capacity(coord_algebra.len());
        for (i, _) in gens.iter().enumerate() {
            for asg in &assignments[i] {
                vec.push(asg[j]);
            }
        }
        let id = *index.entry(vec.clone()).or_insert_with(|| {
            vectors.push(vec);
            witnesses.push(Term::Var(gen_vars[j]));
            depth.push(0);
            vectors.len() - 1
        });
        generators.push(id);
    }

    let mut round = 0;
    loop {
        let mut added = false;
        let current = vectors.len();
        for (op, sym) in signature.ops().iter().enumerate() {
            for tuple in all_tuples(current, sym.arity) {
                // Minimal depth: only tuples whose deepest argument comes
                // from the previous round produce depth round+1.
                let max_d = tuple.iter().map(|&i| depth[i]).max().unwrap_or(0);
                if sym.arity > 0 && max_d != round {
                    continue;
                }
                if sym.arity == 0 && round > 0 {
                    continue;
                }
                let mut vec = Vec::with_capacity(coord_algebra.len());
                for coord in 0..coord_algebra.len() {
                    let g = &gens[coord_algebra[coord]];
                    let args: Vec<usize> = tuple.iter().map(|&i| vectors[i][coord]).collect();
                    vec.push(g.apply(op, &args));
                }
                if !index.contains_key(&vec) {
                    if vectors.len() >= limits.max_elements {
                        return Err(Error::ResourceBound {
                            what: "free algebra elements".into(),
                            budget: limits.max_elements,
                            reached: vectors.len(),
                        });
                    }
                    let witness = Term::App {
                        op: sym.name.clone(),
                        args: tuple.iter().map(|&i| witnesses[i].clone()).collect(),
                    };
                    index.insert(vec.clone(), vectors.len());
                    vectors.push(vec);
                    witnesses.push(witness);
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

    let size = vectors.len();
    let mut tables = Vec::with_capacity(signature.len());
    for (op, sym) in signature.ops().iter().enumerate() {
        let mut table = Vec::with_capacity(size.pow(sym.arity as u32));
        for tuple in all_tuples(size, sym.arity) {
            let mut vec = Vec::with_capacity(coord_algebra.len());
            for coord in 0..coord_algebra.len() {
                let g = &gens[coord_algebra[coord]];
                let args: Vec<usize> = tuple.iter().map(|&i| vectors[i][coord]).collect();
                vec.push(g.apply(op, &args));
            }
            table.push(index[&vec]);
        }
        tables.push(table);
    }
    let labels: Vec<String> = witnesses.iter().map(|w| w.to_string()).collect();
    let gen_names: Vec<&str> = gens.iter().map(|g| g.name()).collect();
    let algebra = FiniteAlgebra::new(
        format!("F{k}({})", gen_names.join(",")),
        signature,
        size,
        Some(labels),
        tables,
    )?;
    Ok(FreeAlgebra {
        algebra,
        vectors,
        witnesses,
        generators,
        generator_vars: gen_vars,
    })
}

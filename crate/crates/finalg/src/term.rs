//! S-expression terms, evaluation over finite algebras, and identity /
//! quasi-identity checking by exhaustive assignment.
//!
//! Terms are written `(mul (mul z y) x)`. A bare symbol is a variable; the
//! names x, y, z, a, b, c, x' map to the fixed indices 0..6 (`x2` is accepted
//! as input for x'), and every other variable is `v0`, `v1`, … from index 7.

use std::fmt;

use crate::algebra::{all_tuples, FiniteAlgebra};
use crate::Error;

/// Display name of a variable index.
pub fn var_name(index: usize) -> String {
    match index {
        0 => "x".into(),
        1 => "y".into(),
        2 => "z".into(),
        3 => "a".into(),
        4 => "b".into(),
        5 => "c".into(),
        6 => "x'".into(),
        n => format!("v{}", n - 7),
    }
}

/// Variable index of a display name (accepts `x2` for `x'`).
pub fn var_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "a" => Some(3),
        "b" => Some(4),
        "c" => Some(5),
        "x'" | "x2" => Some(6),
        _ => name
            .strip_prefix('v')
            .and_then(|t| t.parse::<usize>().ok())
            .map(|n| n + 7),
    }
}

/// A term over named operation symbols and indexed variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(usize),
    App { op: String, args: Vec<Term> },
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(index)
    }

    pub fn app(op: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App {
            op: op.into(),
            args,
        }
    }

    /// Sorted, deduplicated list of variable indices occurring in the term.
    pub fn vars(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::App { args, .. } => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    /// Replace variable `i` by `subs[i]` everywhere.
    pub fn substitute(&self, subs: &[Term]) -> Result<Term, Error> {
        match self {
            Term::Var(i) => subs.get(*i).cloned().ok_or_else(|| {
                Error::Precondition(format!(
                    "substitution has no entry for variable {}",
                    var_name(*i)
                ))
            }),
            Term::App { op, args } => Ok(Term::App {
                op: op.clone(),
                args: args
                    .iter()
                    .map(|a| a.substitute(subs))
                    .collect::<Result<_, _>>()?,
            }),
        }
    }

    /// Evaluate under an environment assigning `env[i]` to variable `i`.
    pub fn eval(&self, alg: &FiniteAlgebra, env: &[usize]) -> Result<usize, Error> {
        match self {
            Term::Var(i) => env.get(*i).copied().ok_or_else(|| {
                Error::Precondition(format!(
                    "environment has no value for variable {}",
                    var_name(*i)
                ))
            }),
            Term::App { op, args } => {
                let op_index = alg.signature().index_of(op).ok_or_else(|| {
                    Error::SignatureMismatch(format!(
                        "operation {op:?} not in signature of {}",
                        alg.name()
                    ))
                })?;
                let arity = alg.signature().op(op_index).arity;
                if args.len() != arity {
                    return Err(Error::SignatureMismatch(format!(
                        "operation {op:?} has arity {arity}, applied to {} arguments",
                        args.len()
                    )));
                }
                let vals = args
                    .iter()
                    .map(|a| a.eval(alg, env))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(alg.apply(op_index, &vals))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Term, Error> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let term = parse_term(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Parse(format!(
                "trailing input after term: {:?}",
                tokens[pos]
            )));
        }
        Ok(term)
    }

    /// Render with a custom variable-name table (used after compaction).
    pub fn render(&self, names: &dyn Fn(usize) -> String) -> String {
        match self {
            Term::Var(i) => names(*i),
            Term::App { op, args } => {
                let mut out = format!("({op}");
                for a in args {
                    out.push(' ');
                    out.push_str(&a.render(names));
                }
                out.push(')');
                out
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&var_name))
    }
}

fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut sym = String::new();
    for ch in text.chars() {
        match ch {
            '(' | ')' => {
                if !sym.is_empty() {
                    tokens.push(std::mem::take(&mut sym));
                }
                tokens.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !sym.is_empty() {
                    tokens.push(std::mem::take(&mut sym));
                }
            }
            c => sym.push(c),
        }
    }
    if !sym.is_empty() {
        tokens.push(sym);
    }
    tokens
}

fn parse_term(tokens: &[String], pos: &mut usize) -> Result<Term, Error> {
    let Some(tok) = tokens.get(*pos) else {
        return Err(Error::Parse("unexpected end of term".into()));
    };
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let Some(head) = tokens.get(*pos) else {
                return Err(Error::Parse("missing operation name after '('".into()));
            };
            if head == "(" || head == ")" {
                return Err(Error::Parse(format!(
                    "expected operation name after '(', found {head:?}"
                )));
            }
            let op = head.clone();
            *pos += 1;
            let mut args = Vec::new();
            loop {
                match tokens.get(*pos) {
                    Some(t) if t == ")" => {
                        *pos += 1;
                        return Ok(Term::App { op, args });
                    }
                    Some(_) => args.push(parse_term(tokens, pos)?),
                    None => return Err(Error::Parse(format!("unclosed '(' for operation {op:?}"))),
                }
            }
        }
        ")" => Err(Error::Parse("unexpected ')'".into())),
        sym => var_index(sym)
            .map(Term::Var)
            .ok_or_else(|| Error::Parse(format!("unknown variable {sym:?}"))),
    }
}

/// Compact the variables occurring in `terms` to contiguous indices 0..k,
/// preserving their canonical order; returns rewritten terms and the display
/// names of the compacted slots.
fn compact(terms: &[&Term]) -> (Vec<Term>, Vec<String>) {
    let mut used: Vec<usize> = terms.iter().flat_map(|t| t.vars()).collect();
    used.sort_unstable();
    used.dedup();
    let renumber = |t: &Term| -> Term {
        fn go(t: &Term, used: &[usize]) -> Term {
            match t {
                Term::Var(i) => Term::Var(used.binary_search(i).expect("var collected")),
                Term::App { op, args } => Term::App {
                    op: op.clone(),
                    args: args.iter().map(|a| go(a, used)).collect(),
                },
            }
        }
        go(t, &used)
    };
    let rewritten = terms.iter().map(|t| renumber(t)).collect();
    let names = used.iter().map(|&i| var_name(i)).collect();
    (rewritten, names)
}

/// An equation `lhs = rhs`, with variables compacted to 0..k and the
/// original display names retained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
    pub var_names: Vec<String>,
}

impl Identity {
    pub fn new(lhs: Term, rhs: Term) -> Identity {
        let (mut ts, var_names) = compact(&[&lhs, &rhs]);
        let rhs = ts.pop().unwrap();
        let lhs = ts.pop().unwrap();
        Identity {
            lhs,
            rhs,
            var_names,
        }
    }

    pub fn parse(lhs: &str, rhs: &str) -> Result<Identity, Error> {
        Ok(Identity::new(Term::parse(lhs)?, Term::parse(rhs)?))
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    fn name(&self, i: usize) -> String {
        self.var_names
            .get(i)
            .cloned()
            .unwrap_or_else(|| var_name(i))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |i: usize| self.name(i);
        write!(f, "{} = {}", self.lhs.render(&names), self.rhs.render(&names))
    }
}

/// `premises ⊢ conclusion`, variables compacted as for [`Identity`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiIdentity {
    pub premises: Vec<(Term, Term)>,
    pub conclusion: (Term, Term),
    pub var_names: Vec<String>,
}

impl QuasiIdentity {
    pub fn new(premises: Vec<(Term, Term)>, conclusion: (Term, Term)) -> QuasiIdentity {
        let mut refs: Vec<&Term> = Vec::new();
        for (l, r) in &premises {
            refs.push(l);
            refs.push(r);
        }
        refs.push(&conclusion.0);
        refs.push(&conclusion.1);
        let (mut ts, var_names) = compact(&refs);
        let c1 = ts.pop().unwrap();
        let c0 = ts.pop().unwrap();
        let mut new_premises = Vec::with_capacity(premises.len());
        let mut it = ts.into_iter();
        while let (Some(l), Some(r)) = (it.next(), it.next()) {
            new_premises.push((l, r));
        }
        QuasiIdentity {
            premises: new_premises,
            conclusion: (c0, c1),
            var_names,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    fn name(&self, i: usize) -> String {
        self.var_names
            .get(i)
            .cloned()
            .unwrap_or_else(|| var_name(i))
    }
}

impl fmt::Display for QuasiIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |i: usize| self.name(i);
        let ps: Vec<String> = self
            .premises
            .iter()
            .map(|(l, r)| format!("{} = {}", l.render(&names), r.render(&names)))
            .collect();
        write!(
            f,
            "{} ==> {} = {}",
            ps.join("  &  "),
            self.conclusion.0.render(&names),
            self.conclusion.1.render(&names)
        )
    }
}

/// Exhaustively check an identity; `Ok(None)` means it holds, otherwise the
/// lexicographically first failing assignment (variable 0 most significant).
pub fn check_identity(alg: &FiniteAlgebra, id: &Identity) -> Result<Option<Vec<usize>>, Error> {
    for env in all_tuples(alg.size(), id.num_vars()) {
        if id.lhs.eval(alg, &env)? != id.rhs.eval(alg, &env)? {
            return Ok(Some(env));
        }
    }
    Ok(None)
}

/// Exhaustively check a quasi-identity; a counterexample is an assignment
/// satisfying every premise but not the conclusion.
pub fn check_quasi_identity(
    alg: &FiniteAlgebra,
    qi: &QuasiIdentity,
) -> Result<Option<Vec<usize>>, Error> {
    'env: for env in all_tuples(alg.size(), qi.num_vars()) {
        for (l, r) in &qi.premises {
            if l.eval(alg, &env)? != r.eval(alg, &env)? {
                continue 'env;
            }
        }
        if qi.conclusion.0.eval(alg, &env)? != qi.conclusion.1.eval(alg, &env)? {
            return Ok(Some(env));
        }
    }
    Ok(None)
}

/// Render an assignment as `x=1 z=0` using an identity-style name table.
pub fn render_assignment(names: &[String], alg: &FiniteAlgebra, env: &[usize]) -> String {
    env.iter()
        .enumerate()
        .map(|(i, &v)| {
            let n = names.get(i).cloned().unwrap_or_else(|| var_name(i));
            format!("{n}={}", alg.label(v))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// The uniqueness quasi-identity of the simultaneous system
/// `w1(x,a,b) = w2(a,b,c)` and `w2(b,c,x) = w1(a,b,c)`:
/// two solutions x, x' of the same system must coincide.
pub fn build_wm_quasi_identity(w1: &Term, w2: &Term) -> Result<QuasiIdentity, Error> {
    for (name, w) in [("w1", w1), ("w2", w2)] {
        if w.vars().into_iter().any(|v| v > 2) {
            return Err(Error::Precondition(format!(
                "{name} must be a term in x, y, z only, got {w}"
            )));
        }
    }
    let (x, a, b, c, x2) = (
        Term::Var(0),
        Term::Var(3),
        Term::Var(4),
        Term::Var(5),
        Term::Var(6),
    );
    let w1_at = |t1: &Term, t2: &Term, t3: &Term| {
        w1.substitute(&[t1.clone(), t2.clone(), t3.clone()])
    };
    let w2_at = |t1: &Term, t2: &Term, t3: &Term| {
        w2.substitute(&[t1.clone(), t2.clone(), t3.clone()])
    };
    let premises = vec![
        (w1_at(&x, &a, &b)?, w2_at(&a, &b, &c)?),
        (w1_at(&x2, &a, &b)?, w2_at(&a, &b, &c)?),
        (w2_at(&b, &c, &x)?, w1_at(&a, &b, &c)?),
        (w2_at(&b, &c, &x2)?, w1_at(&a, &b, &c)?),
    ];
    Ok(QuasiIdentity::new(premises, (x, x2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    #[test]
    fn parse_render_round_trip() {
        for text in ["(mul (mul z y) x)", "x'", "(add x (neg v0))", "(zero)"] {
            let t = Term::parse(text).unwrap();
            assert_eq!(t.to_string(), text);
        }
        assert_eq!(Term::parse("x2").unwrap(), Term::Var(6));
        assert_eq!(Term::parse("x2").unwrap().to_string(), "x'");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Term::parse("(mul x"), Err(Error::Parse(_))));
        assert!(matches!(Term::parse(")"), Err(Error::Parse(_))));
        assert!(matches!(Term::parse("q"), Err(Error::Parse(_))));
        assert!(matches!(Term::parse("x y"), Err(Error::Parse(_))));
        assert!(matches!(Term::parse("()"), Err(Error::Parse(_))));
    }

    #[test]
    fn eval_against_tables() {
        let b = builtin::mitschke_b();
        let t = Term::parse("(mul x y)").unwrap();
        assert_eq!(t.eval(&b, &[1, 2]).unwrap(), 2);
        assert_eq!(t.eval(&b, &[1, 1]).unwrap(), 0);
        let nested = Term::parse("(mul (mul z y) x)").unwrap();
        // ((3·2)·1): 3·2 = 2, 2·1 = 1 (paper labels) = index 0.
        assert_eq!(nested.eval(&b, &[0, 1, 2]).unwrap(), 0);
    }

    #[test]
    fn eval_unknown_op_and_bad_arity() {
        let b = builtin::mitschke_b();
        let t = Term::app("meet", vec![Term::var(0), Term::var(1)]);
        assert!(matches!(t.eval(&b, &[0, 0]), Err(Error::SignatureMismatch(_))));
        let t = Term::app("mul", vec![Term::var(0)]);
        assert!(matches!(t.eval(&b, &[0]), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn implication_identities_hold_on_a_and_b() {
        for alg in [builtin::mitschke_a(), builtin::mitschke_b()] {
            for id in builtin::implication_identities() {
                assert_eq!(check_identity(&alg, &id).unwrap(), None, "{id} on {alg}");
            }
        }
    }

    #[test]
    fn first_identity_fails_on_z3_lex_first() {
        let z3 = builtin::z3();
        // (x+y)+x = x fails; the lex-first counterexample is x=0, y=1.
        let id = Identity::parse("(add (add x y) x)", "x").unwrap();
        assert_eq!(check_identity(&z3, &id).unwrap(), Some(vec![0, 1]));
    }

    #[test]
    fn identity_compaction_keeps_display_names() {
        let id = Identity::parse("(meet x z)", "x").unwrap();
        assert_eq!(id.num_vars(), 2);
        assert_eq!(id.var_names, vec!["x", "z"]);
        assert_eq!(id.to_string(), "(meet x z) = x");
        let sl = builtin::semilattice2();
        assert_eq!(check_identity(&sl, &id).unwrap(), Some(vec![1, 0]));
    }

    #[test]
    fn premise_free_quasi_identity_is_identity_check() {
        let sl = builtin::semilattice2();
        let l = Term::parse("(meet x z)").unwrap();
        let r = Term::parse("x").unwrap();
        let qi = QuasiIdentity::new(vec![], (l.clone(), r.clone()));
        let id = Identity::new(l, r);
        assert_eq!(
            check_quasi_identity(&sl, &qi).unwrap(),
            check_identity(&sl, &id).unwrap()
        );
    }

    #[test]
    fn wm_quasi_identity_shape() {
        let w1 = Term::parse("(mul (mul z y) x)").unwrap();
        let w2 = Term::parse("(mul (mul x y) z)").unwrap();
        let qi = build_wm_quasi_identity(&w1, &w2).unwrap();
        assert_eq!(qi.premises.len(), 4);
        assert_eq!(qi.var_names, vec!["x", "a", "b", "c", "x'"]);
        assert_eq!(qi.conclusion, (Term::Var(0), Term::Var(4)));
    }

    #[test]
    fn wm_quasi_identity_holds_on_a_and_b() {
        let w1 = Term::parse("(mul (mul z y) x)").unwrap();
        let w2 = Term::parse("(mul (mul x y) z)").unwrap();
        let qi = build_wm_quasi_identity(&w1, &w2).unwrap();
        for alg in [builtin::mitschke_a(), builtin::mitschke_b()] {
            assert_eq!(check_quasi_identity(&alg, &qi).unwrap(), None, "{alg}");
        }
    }

    #[test]
    fn wm_quasi_identity_fails_on_left_projection() {
        // mul(x, y) = x: the system degenerates and admits every x.
        let proj = crate::FiniteAlgebra::new(
            "proj2",
            crate::algebra::Signature::of(&[("mul", 2)]),
            2,
            None,
            vec![vec![0, 0, 1, 1]],
        )
        .unwrap();
        let w1 = Term::parse("(mul (mul z y) x)").unwrap();
        let w2 = Term::parse("(mul (mul x y) z)").unwrap();
        let qi = build_wm_quasi_identity(&w1, &w2).unwrap();
        assert_eq!(
            check_quasi_identity(&proj, &qi).unwrap(),
            Some(vec![0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn wm_builder_rejects_extra_variables() {
        let w1 = Term::parse("(mul a x)").unwrap();
        let w2 = Term::parse("x").unwrap();
        assert!(build_wm_quasi_identity(&w1, &w2).is_err());
    }
}

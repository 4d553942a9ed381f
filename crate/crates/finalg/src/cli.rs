//! Command-line surface. Every subcommand reads algebras either from JSON
//! files or by built-in name, writes a [`Report`] to the given writer, and
//! returns the report's exit code, so the whole tool is testable in-process.

use std::io::Write;

use clap::{Parser, Subcommand};

use crate::algebra::{
    product, product_projection, split_pullback, FiniteAlgebra, Homomorphism,
    SplitPullbackDiagram,
};
use crate::builtin;
use crate::format;
use crate::free::VarietySpec;
use crate::internal::{
    cancellability_check, check_category, condition_v_check, find_multiplications,
    groupoid_inverse, one_object_category, pair_groupoid, pushout_of_sections_check,
    relation_groupoid, trivial_span, AssociativityOutcome, FillInClassification, FillInFlavor,
    InternalCategory, InverseMode, PushoutOutcome, Span,
};
use crate::maltsev::{
    find_hm_terms, preorder_symmetry_scan, wm_solution_table, PermutabilityOutcome, WmTable,
};
use crate::relation::{
    classify_relation, compatible_closure, compose, congruence_closure, kernel_pair,
    partition_classes, CompatibleRelation,
};
use crate::report::{Report, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_RESOURCE, EXIT_USAGE};
use crate::term::{
    build_wm_quasi_identity, check_identity, check_quasi_identity, render_assignment, Identity,
    Term,
};
use crate::{alternating_chain, Error};

#[derive(Parser)]
#[command(
    name = "finalg",
    about = "Exact workbench for finite universal algebra",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide least-n congruence permutability of the quasivariety generated
    /// by the listed algebras; print witness terms and their verification.
    Classify {
        /// Algebra files or built-in names (A, B, z2, z3, semilattice2, setN).
        #[arg(required = true)]
        algebras: Vec<String>,
        /// Give up (exit 3) beyond this n.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Built-in end-to-end demonstrations.
    Demo {
        #[command(subcommand)]
        which: DemoCmd,
    },
    /// Check identities on algebras (default: the implication-algebra axioms).
    CheckIdentities {
        #[arg(required = true)]
        algebras: Vec<String>,
        /// An identity "LHS = RHS" in s-expression term syntax; repeatable.
        #[arg(long = "identity")]
        identities: Vec<String>,
    },
    /// Check the solution-uniqueness quasi-identity built from w1 and w2.
    QuasiCheck {
        #[arg(required = true)]
        algebras: Vec<String>,
        #[arg(long, default_value = "(mul (mul z y) x)")]
        w1: String,
        #[arg(long, default_value = "(mul (mul x y) z)")]
        w2: String,
    },
    /// Binary-relation calculus on a single algebra.
    Rel {
        #[command(subcommand)]
        op: RelCmd,
    },
    /// Search for a compatible preorder that is not symmetric.
    ScanPreorders { algebra: String },
    /// Solution table of w1(x,a,b) = w2(a,b,c), w2(b,c,x) = w1(a,b,c).
    WmTable {
        algebra: String,
        #[arg(long, default_value = "(mul (mul z y) x)")]
        w1: String,
        #[arg(long, default_value = "(mul (mul x y) z)")]
        w2: String,
    },
    /// Internal categorical structure on finite carriers.
    Internal {
        #[command(subcommand)]
        op: InternalCmd,
    },
    /// Classify fill-ins against a span for a named split-pullback instance
    /// (`affine` has a unique fill-in, `sets` has several).
    ConditionV {
        instance: String,
        /// span | relation | strong-relation
        #[arg(long, default_value = "span")]
        flavor: String,
    },
    /// Test whether the pullback sections behave like a pushout against a
    /// battery of finite algebras (`affine` or `sets`).
    PushoutSections { instance: String },
}

#[derive(Subcommand)]
enum DemoCmd {
    /// The implication-algebra worked example: identities, solution tables,
    /// non-permuting kernel congruences, and the resulting classification.
    Mitschke,
}

#[derive(Subcommand)]
enum RelCmd {
    /// Left-to-right composite R;S of two relations.
    Compose {
        algebra: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Compatible closure of Δ ∪ seed pairs (or the congruence closure).
    Closure {
        algebra: String,
        /// Seed pairs like "1,2;2,3" (element labels or indices).
        #[arg(long)]
        pairs: String,
        /// Close under symmetry and transitivity as well.
        #[arg(long)]
        congruence: bool,
    },
    /// Reflexivity, symmetry, transitivity, difunctionality of one relation.
    Classify {
        algebra: String,
        #[arg(long)]
        rel: String,
    },
    /// Compare the alternating chains (R,S)_n and (S,R)_n.
    Chain {
        algebra: String,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum InternalCmd {
    /// Full dossier: composable pairs, multiplication search, associativity,
    /// cancellability, and the inverse by both routes.
    Analyze {
        #[command(subcommand)]
        graph: GraphArg,
    },
}

#[derive(Subcommand)]
enum GraphArg {
    /// The pair groupoid (one arrow per ordered pair of elements).
    Pair { algebra: String },
    /// A one-object category from a binary operation table with a unit.
    OneObject {
        algebra: String,
        /// Operation whose table supplies the composition.
        #[arg(long, default_value = "mul")]
        op: String,
        /// Unit element (label or index).
        #[arg(long)]
        unit: String,
    },
    /// The groupoid of an equivalence relation (one arrow per related pair).
    Relation {
        algebra: String,
        #[arg(long)]
        rel: String,
    },
}

/// Run the tool on `args` (without the binary name), writing the report to
/// `out`; returns the exit code.
pub fn run(args: &[&str], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(std::iter::once("finalg").chain(args.iter().copied())) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut report = Report::new(&args.join(" "));
    if let Err(err) = dispatch(cli.cmd, &mut report) {
        report.line(format!("error: {err}"));
        report.set_exit(exit_for(&err));
    }
    let _ = out.write_all(report.render().as_bytes());
    report.exit_code()
}

fn exit_for(err: &Error) -> i32 {
    match err {
        Error::ResourceBound { .. } => EXIT_RESOURCE,
        Error::Verification(_) => EXIT_COUNTEREXAMPLE,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cmd: Cmd, report: &mut Report) -> Result<(), Error> {
    match cmd {
        Cmd::Classify { algebras, max_n } => cmd_classify(report, &algebras, max_n),
        Cmd::Demo {
            which: DemoCmd::Mitschke,
        } => cmd_demo_mitschke(report),
        Cmd::CheckIdentities {
            algebras,
            identities,
        } => cmd_check_identities(report, &algebras, &identities),
        Cmd::QuasiCheck { algebras, w1, w2 } => cmd_quasi_check(report, &algebras, &w1, &w2),
        Cmd::Rel { op } => cmd_rel(report, op),
        Cmd::ScanPreorders { algebra } => cmd_scan_preorders(report, &algebra),
        Cmd::WmTable { algebra, w1, w2 } => cmd_wm_table(report, &algebra, &w1, &w2),
        Cmd::Internal {
            op: InternalCmd::Analyze { graph },
        } => cmd_internal_analyze(report, graph),
        Cmd::ConditionV { instance, flavor } => cmd_condition_v(report, &instance, &flavor),
        Cmd::PushoutSections { instance } => cmd_pushout_sections(report, &instance),
    }
}

// ---------------------------------------------------------------------------
// Argument resolution.

/// An algebra argument: a JSON file if the path exists, else a built-in name.
fn resolve_algebra(spec: &str) -> Result<FiniteAlgebra, Error> {
    let path = std::path::Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        return format::parse_algebra_file(&text);
    }
    builtin::by_name(spec).ok_or_else(|| {
        Error::Parse(format!(
            "unknown algebra {spec:?}: neither a readable file nor a built-in name"
        ))
    })
}

fn resolve_algebras(specs: &[String]) -> Result<Vec<FiniteAlgebra>, Error> {
    specs.iter().map(|s| resolve_algebra(s)).collect()
}

/// A homomorphism argument: the built-in names `f` and `g`, or a JSON file
/// whose `from`/`to` names are resolved like algebra arguments.
fn resolve_hom(spec: &str) -> Result<Homomorphism, Error> {
    match spec {
        "f" => Ok(builtin::mitschke_f()),
        "g" => Ok(builtin::mitschke_g()),
        path => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{path}: {e}")))?;
            let file = format::parse_hom_file(&text)?;
            let dom = resolve_algebra(&file.from)?;
            let cod = resolve_algebra(&file.to)?;
            format::hom_from_file(&file, dom, cod)
        }
    }
}

/// Element pairs like "1,2;2,3", written with labels or bare indices.
fn parse_pairs(alg: &FiniteAlgebra, text: &str) -> Result<Vec<(usize, usize)>, Error> {
    let mut out = Vec::new();
    for chunk in text.split(';').filter(|c| !c.trim().is_empty()) {
        let (l, r) = chunk
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("pair {chunk:?}: expected LABEL,LABEL")))?;
        let resolve = |t: &str| {
            alg.element_by_label(t.trim()).ok_or_else(|| {
                Error::Parse(format!("no element {:?} in {}", t.trim(), alg.name()))
            })
        };
        out.push((resolve(l)?, resolve(r)?));
    }
    Ok(out)
}

/// A relation argument on `alg`: `diagonal`, `full`, `ker:HOM`,
/// `pairs:1,2;…` (the listed pairs, which must already be compatible),
/// `closure:1,2;…` (compatible closure of Δ ∪ pairs), or
/// `congruence:1,2;…` (congruence closure of the pairs).
fn resolve_relation(alg: &FiniteAlgebra, spec: &str) -> Result<CompatibleRelation, Error> {
    if spec == "diagonal" {
        return Ok(CompatibleRelation::diagonal(alg));
    }
    if spec == "full" {
        return CompatibleRelation::full(alg, alg);
    }
    if let Some(rest) = spec.strip_prefix("ker:") {
        let h = resolve_hom(rest)?;
        if !h.dom().same_structure(alg) {
            return Err(Error::CarrierMismatch(format!(
                "kernel of {rest} lives on {}, not on {}",
                h.dom().name(),
                alg.name()
            )));
        }
        return Ok(kernel_pair(&h));
    }
    if let Some(rest) = spec.strip_prefix("pairs:") {
        return CompatibleRelation::from_pairs(alg.clone(), alg.clone(), &parse_pairs(alg, rest)?);
    }
    if let Some(rest) = spec.strip_prefix("closure:") {
        let mut pairs: Vec<(usize, usize)> = (0..alg.size()).map(|i| (i, i)).collect();
        pairs.extend(parse_pairs(alg, rest)?);
        return compatible_closure(alg, alg, &pairs);
    }
    if let Some(rest) = spec.strip_prefix("congruence:") {
        return congruence_closure(alg, &parse_pairs(alg, rest)?);
    }
    Err(Error::Parse(format!(
        "relation {spec:?}: expected diagonal, full, ker:…, pairs:…, closure:… or congruence:…"
    )))
}

// ---------------------------------------------------------------------------
// Shared formatting.

fn fmt_pair(alg: &FiniteAlgebra, (x, y): (usize, usize)) -> String {
    format!("({},{})", alg.label(x), alg.label(y))
}

fn fmt_pairs(alg: &FiniteAlgebra, pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|&p| fmt_pair(alg, p))
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_classes(alg: &FiniteAlgebra, rel: &CompatibleRelation) -> String {
    partition_classes(rel)
        .iter()
        .map(|class| {
            let inner: Vec<String> = class.iter().map(|&x| alg.label(x)).collect();
            format!("{{{}}}", inner.join(","))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn fmt_solutions(alg: &FiniteAlgebra, xs: &[usize]) -> String {
    if xs.is_empty() {
        "-".to_string()
    } else {
        xs.iter()
            .map(|&x| alg.label(x))
            .collect::<Vec<_>>()
            .join(",")
    }
}

fn permutability_label(n: usize) -> String {
    match n {
        2 => "2-permutable (Mal'tsev)".to_string(),
        3 => "3-permutable (Goursat)".to_string(),
        n => format!("{n}-permutable"),
    }
}

fn parse_ternary(name: &str, text: &str) -> Result<Term, Error> {
    let t = Term::parse(text)?;
    if t.vars().into_iter().any(|v| v > 2) {
        return Err(Error::Precondition(format!(
            "{name} must use only the variables x, y, z"
        )));
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// classify

fn cmd_classify(report: &mut Report, specs: &[String], max_n: usize) -> Result<(), Error> {
    let algebras = resolve_algebras(specs)?;
    let names: Vec<&str> = algebras.iter().map(|a| a.name()).collect();
    report.row("generators", &names);
    report.line(format!(
        "quasivariety generated by: {}",
        algebras
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ));
    let spec = VarietySpec::generated(algebras.clone());
    let verdict = find_hm_terms(&spec, max_n)?;
    report.line(format!(
        "free algebra on {{x, z}}: {} elements",
        verdict.free_size
    ));
    report.row("free-size", &[&verdict.free_size.to_string()]);
    for (k, len) in verdict.relation_sizes.iter().enumerate() {
        report.row("power-size", &[&(k + 1).to_string(), &len.to_string()]);
    }
    report.line(format!(
        "relation power sizes: {}",
        verdict
            .relation_sizes
            .iter()
            .enumerate()
            .map(|(k, len)| format!("|R^{}| = {len}", k + 1))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    match verdict.outcome {
        PermutabilityOutcome::NPermutable { n, terms } => {
            let label = permutability_label(n);
            report.line(format!("verdict: {label}, least n = {n}"));
            report.row("verdict", &[&label]);
            report.row("least-n", &[&n.to_string()]);
            for (i, t) in terms.iter().enumerate() {
                report.line(format!("  w{} = {t}", i + 1));
                report.row("term", &[&format!("w{}", i + 1), &t.to_string()]);
            }
            let verification = crate::maltsev::verify_hm_chain(&algebras, &terms)?;
            for (i, (lhs, rhs)) in verification.equations.iter().enumerate() {
                let eq = format!("{lhs} = {rhs}");
                report.line(format!("  chain identity {}: {eq}", i + 1));
                report.row("equation", &[&(i + 1).to_string(), &eq]);
            }
            for (name, count) in &verification.assignments {
                report.line(format!(
                    "  chain identities verified on {name} ({count} assignments each)"
                ));
                report.row("verified", &[name, &count.to_string()]);
            }
        }
        PermutabilityOutcome::NotPermutableForAnyN { fixpoint_exponent } => {
            report.line(format!(
                "verdict: not n-permutable for any n (relation powers stabilise at exponent {fixpoint_exponent} without ever relating z to x)"
            ));
            report.row("verdict", &["not-n-permutable-for-any-n"]);
            report.row("fixpoint-exponent", &[&fixpoint_exponent.to_string()]);
            report.set_exit(EXIT_COUNTEREXAMPLE);
        }
        PermutabilityOutcome::Unknown { reason } => {
            report.line(format!("verdict: unknown — {reason}"));
            report.row("verdict", &["unknown", &reason]);
            report.set_exit(EXIT_RESOURCE);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// check-identities / quasi-check

fn cmd_check_identities(
    report: &mut Report,
    specs: &[String],
    identity_texts: &[String],
) -> Result<(), Error> {
    let algebras = resolve_algebras(specs)?;
    let identities = if identity_texts.is_empty() {
        builtin::implication_identities()
    } else {
        identity_texts
            .iter()
            .map(|text| {
                let (lhs, rhs) = text.split_once('=').ok_or_else(|| {
                    Error::Parse(format!("identity {text:?}: expected LHS = RHS"))
                })?;
                Identity::parse(lhs.trim(), rhs.trim())
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let mut all_hold = true;
    for alg in &algebras {
        report.line(format!("{alg}:"));
        for id in &identities {
            match check_identity(alg, id)? {
                None => {
                    let count = alg.size().pow(id.num_vars() as u32);
                    report.line(format!("  {id}: holds ({count} assignments)"));
                    report.row(
                        "identity",
                        &[&id.to_string(), alg.name(), "holds", &count.to_string()],
                    );
                }
                Some(env) => {
                    all_hold = false;
                    let at = render_assignment(&id.var_names, alg, &env);
                    report.line(format!("  {id}: FAILS at {at}"));
                    report.row("identity", &[&id.to_string(), alg.name(), "fails", &at]);
                }
            }
        }
    }
    if !all_hold {
        report.set_exit(EXIT_COUNTEREXAMPLE);
    }
    Ok(())
}

fn cmd_quasi_check(
    report: &mut Report,
    specs: &[String],
    w1_text: &str,
    w2_text: &str,
) -> Result<(), Error> {
    let algebras = resolve_algebras(specs)?;
    let w1 = parse_ternary("w1", w1_text)?;
    let w2 = parse_ternary("w2", w2_text)?;
    let qi = build_wm_quasi_identity(&w1, &w2)?;
    report.line(format!("quasi-identity: {qi}"));
    let mut all_hold = true;
    for alg in &algebras {
        match check_quasi_identity(alg, &qi)? {
            None => {
                let count = alg.size().pow(qi.num_vars() as u32);
                report.line(format!("  holds on {} ({count} assignments)", alg.name()));
                report.row("quasi", &[alg.name(), "holds", &count.to_string()]);
            }
            Some(env) => {
                all_hold = false;
                let at = render_assignment(&qi.var_names, alg, &env);
                report.line(format!("  COUNTEREXAMPLE on {} at {at}", alg.name()));
                report.row("quasi", &[alg.name(), "counterexample", &at]);
            }
        }
    }
    if !all_hold {
        report.set_exit(EXIT_COUNTEREXAMPLE);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// rel

fn report_relation(report: &mut Report, name: &str, rel: &CompatibleRelation) {
    let alg = rel.left().clone();
    report.line(format!(
        "{name}: {} pairs: {}",
        rel.len(),
        fmt_pairs(&alg, &rel.pairs())
    ));
    report.row("pairs", &[name, &fmt_pairs(&alg, &rel.pairs())]);
}

fn cmd_rel(report: &mut Report, op: RelCmd) -> Result<(), Error> {
    match op {
        RelCmd::Compose {
            algebra,
            left,
            right,
        } => {
            let alg = resolve_algebra(&algebra)?;
            let r = resolve_relation(&alg, &left)?;
            let s = resolve_relation(&alg, &right)?;
            report_relation(report, "R", &r);
            report_relation(report, "S", &s);
            let rs = compose(&r, &s)?;
            report_relation(report, "R;S", &rs);
            report.line("composition is left-to-right: x (R;S) z iff ∃y: x R y and y S z");
        }
        RelCmd::Closure {
            algebra,
            pairs,
            congruence,
        } => {
            let alg = resolve_algebra(&algebra)?;
            let seed = parse_pairs(&alg, &pairs)?;
            let rel = if congruence {
                congruence_closure(&alg, &seed)?
            } else {
                let mut with_diag: Vec<(usize, usize)> =
                    (0..alg.size()).map(|i| (i, i)).collect();
                with_diag.extend(seed);
                compatible_closure(&alg, &alg, &with_diag)?
            };
            let kind = if congruence {
                "congruence closure"
            } else {
                "compatible closure of Δ ∪ seed"
            };
            report.line(format!("{kind} on {}", alg.name()));
            report_relation(report, "closure", &rel);
            report_classification(report, &alg, &rel);
        }
        RelCmd::Classify { algebra, rel } => {
            let alg = resolve_algebra(&algebra)?;
            let r = resolve_relation(&alg, &rel)?;
            report_relation(report, "R", &r);
            report_classification(report, &alg, &r);
        }
        RelCmd::Chain {
            algebra,
            left,
            right,
            n,
        } => {
            let alg = resolve_algebra(&algebra)?;
            let r = resolve_relation(&alg, &left)?;
            let s = resolve_relation(&alg, &right)?;
            let rs = alternating_chain(&r, &s, n)?;
            let sr = alternating_chain(&s, &r, n)?;
            report_relation(report, &format!("(R,S)_{n}"), &rs);
            report_relation(report, &format!("(S,R)_{n}"), &sr);
            if rs.same_pairs(&sr) {
                report.line(format!("(R,S)_{n} = (S,R)_{n}: the chains agree"));
                report.row("chains", &["equal"]);
            } else {
                let only_rs: Vec<(usize, usize)> = rs
                    .pairs()
                    .into_iter()
                    .filter(|&(x, y)| !sr.contains(x, y))
                    .collect();
                let only_sr: Vec<(usize, usize)> = sr
                    .pairs()
                    .into_iter()
                    .filter(|&(x, y)| !rs.contains(x, y))
                    .collect();
                report.line(format!(
                    "(R,S)_{n} ≠ (S,R)_{n}: only in (R,S)_{n}: {}; only in (S,R)_{n}: {}",
                    fmt_pairs(&alg, &only_rs),
                    fmt_pairs(&alg, &only_sr)
                ));
                report.row("chains", &["differ"]);
                report.row("only-in-RS", &[&fmt_pairs(&alg, &only_rs)]);
                report.row("only-in-SR", &[&fmt_pairs(&alg, &only_sr)]);
                report.set_exit(EXIT_COUNTEREXAMPLE);
            }
        }
    }
    Ok(())
}

fn flag(report: &mut Report, name: &str, verdict: &str) {
    report.line(format!("  {name}: {verdict}"));
    report.row("flag", &[name, verdict]);
}

fn report_classification(report: &mut Report, alg: &FiniteAlgebra, rel: &CompatibleRelation) {
    let c = classify_relation(rel);
    match c.reflexive {
        Some(Ok(())) => flag(report, "reflexive", "yes"),
        Some(Err(i)) => flag(
            report,
            "reflexive",
            &format!("no, missing ({0},{0})", alg.label(i)),
        ),
        None => flag(report, "reflexive", "n/a (not square)"),
    }
    match c.symmetric {
        Some(Ok(())) => flag(report, "symmetric", "yes"),
        Some(Err(p)) => flag(
            report,
            "symmetric",
            &format!("no, {} without its reverse", fmt_pair(alg, p)),
        ),
        None => flag(report, "symmetric", "n/a (not square)"),
    }
    match c.transitive {
        Some(Ok(())) => flag(report, "transitive", "yes"),
        Some(Err((x, y, z))) => flag(
            report,
            "transitive",
            &format!(
                "no, {} {} without {}",
                fmt_pair(alg, (x, y)),
                fmt_pair(alg, (y, z)),
                fmt_pair(alg, (x, z))
            ),
        ),
        None => flag(report, "transitive", "n/a (not square)"),
    }
    match c.difunctional {
        Ok(()) => flag(report, "difunctional", "yes"),
        Err((x, y, z, u)) => flag(
            report,
            "difunctional",
            &format!(
                "no, witness x={} y={} z={} u={}",
                alg.label(x),
                alg.label(y),
                alg.label(z),
                alg.label(u)
            ),
        ),
    }
    if let Some(p) = c.preorder {
        flag(report, "preorder", if p { "yes" } else { "no" });
    }
    if let Some(e) = c.equivalence {
        flag(report, "equivalence", if e { "yes" } else { "no" });
        if e {
            report.line(format!("  classes: {}", fmt_classes(alg, rel)));
        }
    }
}

// ---------------------------------------------------------------------------
// scan-preorders

fn cmd_scan_preorders(report: &mut Report, spec: &str) -> Result<(), Error> {
    let alg = resolve_algebra(spec)?;
    match preorder_symmetry_scan(&alg)? {
        None => {
            report.line(format!(
                "every compatible preorder on {} is symmetric",
                alg.name()
            ));
            report.row("preorders", &["all-symmetric"]);
        }
        Some(counter) => {
            report.line(format!(
                "non-symmetric compatible preorder on {}: {}",
                alg.name(),
                fmt_pairs(&alg, &counter.relation.pairs())
            ));
            report.line(format!(
                "  {} holds but {} does not",
                fmt_pair(&alg, counter.asymmetric_pair),
                fmt_pair(
                    &alg,
                    (counter.asymmetric_pair.1, counter.asymmetric_pair.0)
                )
            ));
            report.row("preorder", &[&fmt_pairs(&alg, &counter.relation.pairs())]);
            report.row("asymmetric", &[&fmt_pair(&alg, counter.asymmetric_pair)]);
            report.set_exit(EXIT_COUNTEREXAMPLE);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// wm-table

fn report_wm_table(
    report: &mut Report,
    alg: &FiniteAlgebra,
    table: &WmTable,
    order: &str,
) {
    let mut rows: Vec<Vec<String>> = Vec::with_capacity(table.triples.len());
    let mut triples: Vec<&([usize; 3], Vec<usize>)> = table.triples.iter().collect();
    if order == "(c,b,a)" {
        triples.sort_by_key(|([a, b, c], _)| [*c, *b, *a]);
    }
    for ([a, b, c], sols) in triples {
        rows.push(vec![
            alg.label(*a),
            alg.label(*b),
            alg.label(*c),
            fmt_solutions(alg, sols),
        ]);
    }
    report.line(format!(
        "solution table on {}, rows ordered by {order}:",
        alg.name()
    ));
    report.table(&["a", "b", "c", "x"], &rows);
}

fn cmd_wm_table(
    report: &mut Report,
    spec: &str,
    w1_text: &str,
    w2_text: &str,
) -> Result<(), Error> {
    let alg = resolve_algebra(spec)?;
    let w1 = parse_ternary("w1", w1_text)?;
    let w2 = parse_ternary("w2", w2_text)?;
    report.line(format!(
        "system: w1(x,a,b) = w2(a,b,c) and w2(b,c,x) = w1(a,b,c), with w1 = {w1}, w2 = {w2}"
    ));
    let table = wm_solution_table(&alg, &w1, &w2)?;
    report_wm_table(report, &alg, &table, "(a,b,c)");
    for ([a, b, c], sols) in &table.triples {
        report.row(
            "wm",
            &[
                &alg.label(*a),
                &alg.label(*b),
                &alg.label(*c),
                &fmt_solutions(&alg, sols),
            ],
        );
    }
    report.line(format!(
        "every solution set has at most one element: {}",
        if table.member { "yes" } else { "no" }
    ));
    report.row("unique-solutions", &[if table.member { "yes" } else { "no" }]);
    if !table.member {
        report.set_exit(EXIT_COUNTEREXAMPLE);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// internal analyze

fn cmd_internal_analyze(report: &mut Report, graph: GraphArg) -> Result<(), Error> {
    let ic = match graph {
        GraphArg::Pair { algebra } => {
            let alg = resolve_algebra(&algebra)?;
            report.line(format!("pair groupoid construction on {alg}"));
            pair_groupoid(&alg)?
        }
        GraphArg::OneObject { algebra, op, unit } => {
            let alg = resolve_algebra(&algebra)?;
            let op_index = alg
                .signature()
                .ops()
                .iter()
                .position(|o| o.name == op)
                .ok_or_else(|| {
                    Error::Parse(format!("no operation {op:?} in {}", alg.name()))
                })?;
            if alg.signature().ops()[op_index].arity != 2 {
                return Err(Error::Precondition(format!(
                    "operation {op:?} must be binary"
                )));
            }
            let unit_el = alg
                .element_by_label(&unit)
                .ok_or_else(|| Error::Parse(format!("no element {unit:?} in {}", alg.name())))?;
            report.line(format!(
                "one-object category from {} of {}, unit {}",
                op,
                alg.name(),
                alg.label(unit_el)
            ));
            one_object_category(alg.table(op_index), unit_el)?
        }
        GraphArg::Relation { algebra, rel } => {
            let alg = resolve_algebra(&algebra)?;
            let r = resolve_relation(&alg, &rel)?;
            report.line(format!(
                "relation groupoid of {} on {}: classes {}",
                rel,
                alg.name(),
                fmt_classes(&alg, &r)
            ));
            relation_groupoid(&r)?
        }
    };
    let code = dossier(report, &ic)?;
    report.set_exit(code);
    Ok(())
}

/// The dossier pipeline: composable pairs, multiplication search on the
/// underlying graph, associativity, cancellability, and the inverse by both
/// routes, with an agreement check. Exit 0 iff the category is a groupoid.
fn dossier(report: &mut Report, ic: &InternalCategory) -> Result<i32, Error> {
    let g = &ic.graph;
    report.line(format!(
        "arrows: {}, objects: {}, composable pairs: {}",
        g.c1.size(),
        g.c0.size(),
        ic.pairs.pairs.len()
    ));
    report.row("arrows", &[&g.c1.size().to_string()]);
    report.row("objects", &[&g.c0.size().to_string()]);
    report.row("composable-pairs", &[&ic.pairs.pairs.len().to_string()]);

    let found = find_multiplications(g)?;
    let among = found.multiplications.iter().any(|m| m.equal_map(&ic.m));
    report.line(format!(
        "unit-law multiplications on this graph: {}{}; the analysed one {} among them",
        found.multiplications.len(),
        if found.exhaustive {
            " (exhaustive search)"
        } else {
            " (search truncated)"
        },
        if among { "is" } else { "is NOT" }
    ));
    report.row(
        "multiplications",
        &[
            &found.multiplications.len().to_string(),
            if found.exhaustive { "exhaustive" } else { "truncated" },
        ],
    );

    match check_category(ic) {
        AssociativityOutcome::Associative { triples } => {
            report.line(format!(
                "associativity: holds over all {triples} composable triples"
            ));
            report.row("associative", &["yes", &triples.to_string()]);
        }
        AssociativityOutcome::Violation {
            triple,
            left,
            right,
        } => {
            report.line(format!(
                "associativity FAILS at (u,v,w) = {triple:?}: m(m(u,v),w) = {left} but m(u,m(v,w)) = {right}"
            ));
            report.row("associative", &["no", &format!("{triple:?}")]);
            report.line("not a category: skipping cancellability and inverse search".to_string());
            report.row("groupoid", &["no"]);
            return Ok(EXIT_COUNTEREXAMPLE);
        }
    }

    let canc = cancellability_check(ic);
    match canc.left {
        Ok(()) => {
            report.line("left cancellability: holds".to_string());
            report.row("cancellable", &["left", "yes"]);
        }
        Err((p, q)) => {
            report.line(format!(
                "left cancellability FAILS: pairs {p:?} and {q:?} have equal first factor and composite"
            ));
            report.row("cancellable", &["left", "no"]);
        }
    }
    match canc.right {
        Ok(()) => {
            report.line("right cancellability: holds".to_string());
            report.row("cancellable", &["right", "yes"]);
        }
        Err((p, q)) => {
            report.line(format!(
                "right cancellability FAILS: pairs {p:?} and {q:?} have equal composite and second factor"
            ));
            report.row("cancellable", &["right", "no"]);
        }
    }

    let direct = groupoid_inverse(ic, InverseMode::Direct)?;
    let thm = groupoid_inverse(ic, InverseMode::ThmRoute)?;
    for (mode, result) in [("direct", &direct), ("cancellability-route", &thm)] {
        match result {
            Some(w) => {
                report.line(format!("inverse ({mode}): t = {}", w.t));
                report.row("inverse", &[mode, "found", &format!("{:?}", w.t.map())]);
            }
            None => {
                report.line(format!("inverse ({mode}): none exists"));
                report.row("inverse", &[mode, "none"]);
            }
        }
    }
    let agree = match (&direct, &thm) {
        (Some(a), Some(b)) => a.t.equal_map(&b.t),
        (None, None) => true,
        _ => false,
    };
    report.line(format!(
        "the two inverse routes agree: {}",
        if agree { "yes" } else { "NO" }
    ));
    report.row("modes-agree", &[if agree { "yes" } else { "no" }]);

    let is_groupoid = agree && direct.is_some();
    report.line(format!(
        "internal groupoid: {}",
        if is_groupoid { "yes" } else { "no" }
    ));
    report.row("groupoid", &[if is_groupoid { "yes" } else { "no" }]);
    Ok(if is_groupoid {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

// ---------------------------------------------------------------------------
// condition-v / pushout-sections

type FillInInstance = (
    SplitPullbackDiagram,
    Span,
    Homomorphism,
    Homomorphism,
    Homomorphism,
);

/// A split pullback of Z₃² along the first projection, a product span on
/// Z₃², and corner maps that force the unique fill-in φ((a,b),(a,c)) =
/// (a+c, b).
fn affine_fillin_instance() -> Result<FillInInstance, Error> {
    let z3 = builtin::z3();
    let zz = product(&[&z3, &z3])?;
    let proj = product_projection(&zz, &[&z3, &z3], 0);
    let insert = Homomorphism::new(z3.clone(), zz.clone(), (0..3).map(|u| u * 3).collect())?;
    let spd = split_pullback(&proj, &insert, &proj, &insert)?;
    let span = Span::new(
        product_projection(&zz, &[&z3, &z3], 0),
        product_projection(&zz, &[&z3, &z3], 1),
    )?;
    let alpha = Homomorphism::identity(&zz);
    let beta = insert;
    let gamma = Homomorphism::new(
        zz.clone(),
        zz,
        (0..9).map(|i| ((i / 3 + i % 3) % 3) * 3).collect(),
    )?;
    Ok((spd, span, alpha, beta, gamma))
}

fn sets_spd() -> Result<SplitPullbackDiagram, Error> {
    let two = builtin::set(2);
    let one = builtin::set(1);
    let bang = Homomorphism::new(two.clone(), one.clone(), vec![0, 0])?;
    let pick = Homomorphism::new(one, two, vec![0])?;
    split_pullback(&bang, &pick, &bang, &pick)
}

/// The 2×2 set square: constants into a 2-element trivial span leave the
/// off-image pullback element unconstrained, so fill-ins multiply.
fn sets_fillin_instance() -> Result<FillInInstance, Error> {
    let spd = sets_spd()?;
    let two = builtin::set(2);
    let span = trivial_span(&two)?;
    let alpha = Homomorphism::new(spd.a.clone(), two.clone(), vec![0, 0])?;
    let beta = Homomorphism::new(spd.b.clone(), two.clone(), vec![0])?;
    let gamma = Homomorphism::new(spd.c.clone(), two, vec![0, 0])?;
    Ok((spd, span, alpha, beta, gamma))
}

fn cmd_condition_v(report: &mut Report, instance: &str, flavor_text: &str) -> Result<(), Error> {
    let flavor = match flavor_text {
        "span" => FillInFlavor::Span,
        "relation" => FillInFlavor::Relation,
        "strong-relation" => FillInFlavor::StrongRelation,
        other => {
            return Err(Error::Parse(format!(
                "flavor {other:?}: expected span, relation or strong-relation"
            )))
        }
    };
    let (spd, span, alpha, beta, gamma) = match instance {
        "affine" => affine_fillin_instance()?,
        "sets" => sets_fillin_instance()?,
        other => {
            return Err(Error::Parse(format!(
                "instance {other:?}: expected affine or sets"
            )))
        }
    };
    report.line(format!(
        "split pullback E = {} ({} elements) against the span on {} ({:?} flavor)",
        spd.e.name(),
        spd.e.size(),
        span.apex().name(),
        flavor
    ));
    match condition_v_check(&spd, &span, &alpha, &beta, &gamma, flavor)? {
        FillInClassification::Unique(phi) => {
            report.line(format!("exactly one fill-in: φ = {phi}"));
            report.row("fill-in", &["unique", &format!("{:?}", phi.map())]);
        }
        FillInClassification::NoFillIn => {
            report.line("no fill-in exists".to_string());
            report.row("fill-in", &["none"]);
            report.set_exit(EXIT_COUNTEREXAMPLE);
        }
        FillInClassification::Multiple(phi1, phi2) => {
            report.line(format!(
                "at least two fill-ins: φ₁ = {phi1} and φ₂ = {phi2}"
            ));
            report.row(
                "fill-in",
                &[
                    "multiple",
                    &format!("{:?}", phi1.map()),
                    &format!("{:?}", phi2.map()),
                ],
            );
            report.set_exit(EXIT_COUNTEREXAMPLE);
        }
    }
    Ok(())
}

fn cmd_pushout_sections(report: &mut Report, instance: &str) -> Result<(), Error> {
    let (spd, battery) = match instance {
        "affine" => {
            let z3 = builtin::z3();
            let zz = product(&[&z3, &z3])?;
            let proj = product_projection(&zz, &[&z3, &z3], 0);
            let insert =
                Homomorphism::new(z3.clone(), zz.clone(), (0..3).map(|u| u * 3).collect())?;
            let spd = split_pullback(&proj, &insert, &proj, &insert)?;
            (spd, vec![z3, zz])
        }
        "sets" => (sets_spd()?, vec![builtin::set(2)]),
        other => {
            return Err(Error::Parse(format!(
                "instance {other:?}: expected affine or sets"
            )))
        }
    };
    let battery_names: Vec<&str> = battery.iter().map(|d| d.name()).collect();
    report.line(format!(
        "testing e₁r = e₂s for the pushout property against: {}",
        battery_names.join(", ")
    ));
    report.row("battery", &battery_names);
    match pushout_of_sections_check(&spd, &battery)? {
        PushoutOutcome::ConsistentWithPushout { pairs_checked } => {
            report.line(format!(
                "every compatible (α, γ) pair has exactly one fill-in ({pairs_checked} pairs checked)"
            ));
            report.row("pushout", &["consistent", &pairs_checked.to_string()]);
        }
        PushoutOutcome::NotPushout(failure) => {
            report.line(format!(
                "NOT a pushout: on {} the pair α = {}, γ = {} admits {} fill-ins",
                failure.algebra,
                failure.alpha,
                failure.gamma,
                failure.fill_ins.len()
            ));
            report.row(
                "pushout",
                &[
                    "failed",
                    &failure.algebra,
                    &failure.fill_ins.len().to_string(),
                ],
            );
            report.set_exit(EXIT_COUNTEREXAMPLE);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// demo mitschke

fn expect(report: &mut Report, failures: &mut usize, ok: bool, good: String, bad: String) {
    if ok {
        report.line(good);
    } else {
        report.line(format!("DIFF: {bad}"));
        *failures += 1;
    }
}

fn cmd_demo_mitschke(report: &mut Report) -> Result<(), Error> {
    let a = builtin::mitschke_a();
    let b = builtin::mitschke_b();
    let mut failures = 0usize;

    report.line(
        "Implication algebras: A (2 elements) and B (3 elements), one binary operation mul,"
            .to_string(),
    );
    report.line("elements labelled 1..n. Exhaustive checks; '-' marks an empty solution set.".to_string());
    report.blank();

    // (a) the defining identities.
    report.line("== (a) defining identities ==".to_string());
    for alg in [&a, &b] {
        for id in builtin::implication_identities() {
            let witness = check_identity(alg, &id)?;
            let count = alg.size().pow(id.num_vars() as u32);
            report.row(
                "identity",
                &[
                    &id.to_string(),
                    alg.name(),
                    if witness.is_none() { "holds" } else { "fails" },
                    &count.to_string(),
                ],
            );
            expect(
                report,
                &mut failures,
                witness.is_none(),
                format!("  {id}: holds on {} ({count} assignments)", alg.name()),
                format!("  {id}: fails on {}", alg.name()),
            );
        }
    }
    report.blank();

    // (b) solution tables in both row orders, with reference agreement.
    let w1 = Term::parse("(mul (mul z y) x)")?;
    let w2 = Term::parse("(mul (mul x y) z)")?;
    report.line(format!(
        "== (b) solution tables for w1 = {w1}, w2 = {w2} =="
    ));
    report.line(
        "The system w1(x,a,b) = w2(a,b,c), w2(b,c,x) = w1(a,b,c) is solved for x at every index triple.".to_string(),
    );
    for (alg, reference) in [
        (&a, builtin::wm_reference_a()),
        (&b, builtin::wm_reference_b()),
    ] {
        let table = wm_solution_table(alg, &w1, &w2)?;
        report_wm_table(report, alg, &table, "(a,b,c)");
        report_wm_table(report, alg, &table, "(c,b,a)");
        expect(
            report,
            &mut failures,
            table.member,
            format!(
                "every solution set on {} has at most one element",
                alg.name()
            ),
            format!("a solution set on {} has more than one element", alg.name()),
        );

        // Compare against the bundled reference tabulation under the three
        // candidate index readings.
        let n = alg.size();
        let ref_at = |a_: usize, b_: usize, c_: usize| reference[(a_ * n + b_) * n + c_];
        let readings: [(&str, fn(usize, usize, usize) -> (usize, usize, usize)); 3] = [
            ("(a,b,c) — as printed", |x, y, z| (x, y, z)),
            ("(c,b,a) — exchanging a and c", |x, y, z| (z, y, x)),
            ("(a,c,b) — exchanging b and c", |x, y, z| (x, z, y)),
        ];
        let mut matching: Vec<&str> = Vec::new();
        for (label, perm) in readings {
            let mut mismatches = 0usize;
            for ([ta, tb, tc], sols) in &table.triples {
                let ours = match sols.as_slice() {
                    [] => None,
                    [x] => Some(*x),
                    _ => Some(usize::MAX),
                };
                let (ra, rb, rc) = perm(*ta, *tb, *tc);
                if ours != ref_at(ra, rb, rc) {
                    mismatches += 1;
                }
            }
            report.line(format!(
                "  reference read at {label}: {mismatches} mismatching cells"
            ));
            report.row(
                "agreement",
                &[alg.name(), label, &mismatches.to_string()],
            );
            if mismatches == 0 {
                matching.push(label);
            }
        }
        expect(
            report,
            &mut failures,
            matching == vec!["(a,c,b) — exchanging b and c"],
            format!(
                "the bundled reference table for {} matches exactly when read at (a,c,b): the reference lists its second and third indices in the other order",
                alg.name()
            ),
            format!("unexpected reference agreement pattern for {}: {matching:?}", alg.name()),
        );
        if !matching.contains(&"(a,c,b) — exchanging b and c") {
            for ([ta, tb, tc], sols) in &table.triples {
                let ours = match sols.as_slice() {
                    [] => None,
                    [x] => Some(*x),
                    _ => Some(usize::MAX),
                };
                if ours != ref_at(*ta, *tc, *tb) {
                    report.line(format!(
                        "  DIFF cell ({},{},{}): computed {} vs reference {}",
                        alg.label(*ta),
                        alg.label(*tb),
                        alg.label(*tc),
                        fmt_solutions(alg, sols),
                        match ref_at(*ta, *tc, *tb) {
                            Some(v) => alg.label(v),
                            None => "-".to_string(),
                        }
                    ));
                }
            }
        }
    }
    report.blank();

    // (c) kernel congruences that do not permute.
    report.line("== (c) kernel congruences of f and g do not permute ==".to_string());
    let f = builtin::mitschke_f();
    let g = builtin::mitschke_g();
    report.line(format!("f = {f}"));
    report.line(format!("g = {g}"));
    let r = kernel_pair(&f);
    let s = kernel_pair(&g);
    report.line(format!("R = ker f: classes {}", fmt_classes(&b, &r)));
    report.line(format!("S = ker g: classes {}", fmt_classes(&b, &s)));
    let rs = compose(&r, &s)?;
    let sr = compose(&s, &r)?;
    report_relation(report, "R;S", &rs);
    report_relation(report, "S;R", &sr);
    let only_rs: Vec<(usize, usize)> = rs
        .pairs()
        .into_iter()
        .filter(|&(x, y)| !sr.contains(x, y))
        .collect();
    let only_sr: Vec<(usize, usize)> = sr
        .pairs()
        .into_iter()
        .filter(|&(x, y)| !rs.contains(x, y))
        .collect();
    report.row("witness", &["only-in-R;S", &fmt_pairs(&b, &only_rs)]);
    report.row("witness", &["only-in-S;R", &fmt_pairs(&b, &only_sr)]);
    expect(
        report,
        &mut failures,
        only_rs == vec![(1, 2)] && only_sr == vec![(2, 1)],
        "composites differ in exactly one pair each: (2,3) only in R;S, (3,2) only in S;R"
            .to_string(),
        format!(
            "unexpected composite difference: only in R;S {}, only in S;R {}",
            fmt_pairs(&b, &only_rs),
            fmt_pairs(&b, &only_sr)
        ),
    );
    report.line(
        "composition here is left-to-right (x (R;S) z iff ∃y: x R y, y S z); under the".to_string(),
    );
    report.line(
        "right-to-left convention R∘S = S;R, so the same witness (3,2) lands in R∘S \\ S∘R.".to_string(),
    );
    report.line("R;S ≠ S;R: the kernel congruences do not 2-permute.".to_string());
    report.blank();

    // (d) classification of the generated quasivariety.
    report.line("== (d) classification of the quasivariety generated by {A, B} ==".to_string());
    let qi = build_wm_quasi_identity(&w1, &w2)?;
    report.line(format!("uniqueness quasi-identity: {qi}"));
    for alg in [&a, &b] {
        let witness = check_quasi_identity(alg, &qi)?;
        let count = alg.size().pow(qi.num_vars() as u32);
        report.row(
            "quasi",
            &[
                alg.name(),
                if witness.is_none() { "holds" } else { "counterexample" },
                &count.to_string(),
            ],
        );
        expect(
            report,
            &mut failures,
            witness.is_none(),
            format!("  holds on {} ({count} assignments)", alg.name()),
            format!("  fails on {}", alg.name()),
        );
    }
    let verdict = find_hm_terms(&VarietySpec::generated(vec![a.clone(), b.clone()]), 12)?;
    match &verdict.outcome {
        PermutabilityOutcome::NPermutable { n, terms } => {
            report.row("least-n", &[&n.to_string()]);
            expect(
                report,
                &mut failures,
                *n == 3,
                format!(
                    "least n with a permutability chain: {n} — {}",
                    permutability_label(*n)
                ),
                format!("expected least n = 3, found {n}"),
            );
            for (i, t) in terms.iter().enumerate() {
                report.line(format!("  w{} = {t}", i + 1));
            }
            let verification = crate::maltsev::verify_hm_chain(&[a.clone(), b.clone()], terms)?;
            for (name, count) in &verification.assignments {
                report.line(format!(
                    "  chain identities verified on {name} ({count} assignments each)"
                ));
            }
        }
        other => {
            expect(
                report,
                &mut failures,
                false,
                String::new(),
                format!("expected a 3-permutability verdict, got {other:?}"),
            );
        }
    }
    report.line(
        "conclusion: weakly Mal'tsev (unique solutions), 3-permutable (Goursat), and not"
            .to_string(),
    );
    report.line("2-permutable (not Mal'tsev): the kernel congruences above do not permute.".to_string());
    report.row(
        "conclusion",
        &["weakly-maltsev", "goursat", "not-maltsev"],
    );

    if failures > 0 {
        report.line(format!("{failures} internal expectation(s) failed"));
        report.set_exit(EXIT_COUNTEREXAMPLE);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_to_string(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let code = run(args, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn check_identities_pass_on_the_implication_algebras() {
        let (code, out) = run_to_string(&["check-identities", "A", "B"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert_eq!(out.matches("\tholds\t").count(), 6, "{out}");
        assert!(out.contains("identity\t(mul (mul x y) x) = x\tA\tholds\t4"), "{out}");
        assert!(out.contains("(mul x (mul y z)) = (mul y (mul x z))\tB\tholds\t27"), "{out}");
    }

    #[test]
    fn check_identities_reports_failures() {
        let (code, out) = run_to_string(&[
            "check-identities",
            "semilattice2",
            "--identity",
            "(meet x y) = x",
        ]);
        assert_eq!(code, EXIT_COUNTEREXAMPLE, "{out}");
        assert!(out.contains("FAILS at x=1 y=0"), "{out}");
    }

    #[test]
    fn unknown_algebra_is_a_usage_error() {
        let (code, out) = run_to_string(&["check-identities", "nope"]);
        assert_eq!(code, EXIT_USAGE, "{out}");
        assert!(out.contains("unknown algebra"), "{out}");
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        let (code, _) = run_to_string(&["classify"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _) = run_to_string(&["no-such-command"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out) = run_to_string(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("classify"), "{out}");
    }

    #[test]
    fn classify_z3_is_maltsev() {
        let (code, out) = run_to_string(&["classify", "z3"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("2-permutable (Mal'tsev)"), "{out}");
        assert!(out.contains("least-n\t2"), "{out}");
        assert!(out.contains("free-size\t9"), "{out}");
    }

    #[test]
    fn classify_the_implication_pair_is_goursat() {
        let (code, out) = run_to_string(&["classify", "A", "B"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("3-permutable (Goursat)"), "{out}");
        assert!(out.contains("free-size\t6"), "{out}");
        assert!(out.contains("verified\tA\t8"), "{out}");
        assert!(out.contains("verified\tB\t27"), "{out}");
    }

    #[test]
    fn classify_semilattice_has_no_n() {
        let (code, out) = run_to_string(&["classify", "semilattice2"]);
        assert_eq!(code, EXIT_COUNTEREXAMPLE, "{out}");
        assert!(out.contains("not n-permutable for any n"), "{out}");
    }

    #[test]
    fn classify_respects_max_n() {
        let (code, out) = run_to_string(&["classify", "A", "B", "--max-n", "2"]);
        assert_eq!(code, EXIT_RESOURCE, "{out}");
        assert!(out.contains("unknown"), "{out}");
    }

    #[test]
    fn quasi_check_holds_on_a_and_b() {
        let (code, out) = run_to_string(&["quasi-check", "A", "B"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("quasi\tA\tholds\t32"), "{out}");
        assert!(out.contains("quasi\tB\tholds\t243"), "{out}");
    }

    #[test]
    fn rel_chain_exhibits_the_non_permuting_kernels() {
        let (code, out) = run_to_string(&[
            "rel", "chain", "B", "--left", "ker:f", "--right", "ker:g", "--n", "2",
        ]);
        assert_eq!(code, EXIT_COUNTEREXAMPLE, "{out}");
        assert!(out.contains("only-in-RS\t(2,3)"), "{out}");
        assert!(out.contains("only-in-SR\t(3,2)"), "{out}");
    }

    #[test]
    fn rel_chain_agrees_at_n_three() {
        let (code, out) = run_to_string(&[
            "rel", "chain", "B", "--left", "ker:f", "--right", "ker:g", "--n", "3",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("chains\tequal"), "{out}");
    }

    #[test]
    fn rel_compose_uses_left_to_right_composition() {
        let (code, out) = run_to_string(&[
            "rel", "compose", "B", "--left", "ker:f", "--right", "ker:g",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        // R;S omits exactly (3,2).
        assert!(!out.split("pairs\tR;S\t").nth(1).unwrap().lines().next().unwrap().contains("(3,2)"), "{out}");
        assert!(out.contains("(2,3)"), "{out}");
    }

    #[test]
    fn rel_closure_and_classify_roundtrip() {
        let (code, out) = run_to_string(&[
            "rel", "closure", "semilattice2", "--pairs", "0,1", "--congruence",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("flag\tequivalence\tyes"), "{out}");

        let (code, out) = run_to_string(&["rel", "classify", "B", "--rel", "ker:f"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("flag\tequivalence\tyes"), "{out}");
        assert!(out.contains("classes: {1,2} {3}"), "{out}");
    }

    #[test]
    fn scan_preorders_splits_the_battery() {
        let (code, out) = run_to_string(&["scan-preorders", "semilattice2"]);
        assert_eq!(code, EXIT_COUNTEREXAMPLE, "{out}");
        assert!(out.contains("preorder\t(0,0) (0,1) (1,1)"), "{out}");
        assert!(out.contains("asymmetric\t(0,1)"), "{out}");

        let (code, out) = run_to_string(&["scan-preorders", "z3"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("every compatible preorder on Z3 is symmetric"), "{out}");
    }

    #[test]
    fn wm_table_on_a_has_unique_solutions() {
        let (code, out) = run_to_string(&["wm-table", "A"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("wm\t2\t1\t2\t-"), "{out}");
        assert!(out.contains("unique-solutions\tyes"), "{out}");
    }

    #[test]
    fn internal_analyze_pair_groupoid() {
        let (code, out) = run_to_string(&["internal", "analyze", "pair", "B"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("composable-pairs\t27"), "{out}");
        assert!(out.contains("multiplications\t1\texhaustive"), "{out}");
        assert!(out.contains("groupoid\tyes"), "{out}");
        assert!(out.contains("modes-agree\tyes"), "{out}");
    }

    #[test]
    fn internal_analyze_meet_monoid_is_not_a_groupoid() {
        let (code, out) = run_to_string(&[
            "internal", "analyze", "one-object", "semilattice2", "--op", "meet", "--unit", "1",
        ]);
        assert_eq!(code, EXIT_COUNTEREXAMPLE, "{out}");
        assert!(out.contains("cancellable\tleft\tno"), "{out}");
        assert!(out.contains("inverse\tdirect\tnone"), "{out}");
        assert!(out.contains("groupoid\tno"), "{out}");
    }

    #[test]
    fn internal_analyze_relation_groupoid() {
        let (code, out) = run_to_string(&[
            "internal", "analyze", "relation", "B", "--rel", "ker:f",
        ]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("groupoid\tyes"), "{out}");
    }

    #[test]
    fn condition_v_instances() {
        let (code, out) = run_to_string(&["condition-v", "affine", "--flavor", "relation"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("fill-in\tunique"), "{out}");

        let (code, out) = run_to_string(&["condition-v", "sets"]);
        assert_eq!(code, EXIT_COUNTEREXAMPLE, "{out}");
        assert!(out.contains("fill-in\tmultiple"), "{out}");
    }

    #[test]
    fn pushout_sections_instances() {
        let (code, out) = run_to_string(&["pushout-sections", "affine"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("pushout\tconsistent"), "{out}");

        let (code, out) = run_to_string(&["pushout-sections", "sets"]);
        assert_eq!(code, EXIT_COUNTEREXAMPLE, "{out}");
        assert!(out.contains("pushout\tfailed\tset2\t2"), "{out}");
    }

    #[test]
    fn demo_mitschke_is_deterministic_and_clean() {
        let (code1, out1) = run_to_string(&["demo", "mitschke"]);
        let (code2, out2) = run_to_string(&["demo", "mitschke"]);
        assert_eq!(code1, EXIT_OK, "{out1}");
        assert_eq!(code2, EXIT_OK);
        assert_eq!(out1, out2, "demo output must be byte-for-byte deterministic");
        assert!(!out1.contains("DIFF"), "{out1}");
        assert!(out1.contains("witness\tonly-in-S;R\t(3,2)"), "{out1}");
        assert!(out1.contains("witness\tonly-in-R;S\t(2,3)"), "{out1}");
        assert!(out1.contains("agreement\tA\t(a,c,b) — exchanging b and c\t0"), "{out1}");
        assert!(out1.contains("agreement\tB\t(a,c,b) — exchanging b and c\t0"), "{out1}");
        assert!(out1.contains("conclusion\tweakly-maltsev\tgoursat\tnot-maltsev"), "{out1}");
        assert!(out1.contains("least-n\t3"), "{out1}");
    }

    #[test]
    fn files_round_trip_through_the_registry() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("b.json");
        std::fs::write(&path, format::render_algebra(&builtin::mitschke_b())).unwrap();
        let (code, out) = run_to_string(&["classify", path.to_str().unwrap(), "A"]);
        assert_eq!(code, EXIT_OK, "{out}");
        assert!(out.contains("3-permutable (Goursat)"), "{out}");
    }
}

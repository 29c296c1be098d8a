//! Variable instantiation.
//!
//! Object variables range over the Herbrand universe of the program;
//! annotation variables range over the grade vocabulary of the predicates
//! they annotate (intersected when one variable annotates several
//! predicates). Grounding is deterministic: instances appear in parent
//! rule order, substitutions in lexicographic order, and instance ids
//! extend the parent id (`g0` begets `g0.1`, `g0.2`, …). A rule that is
//! already ground passes through untouched, so grounding a ground program
//! is the identity.
//!
//! Instances whose positive body demands a grade that no generator head
//! can supply are dropped: such a rule can never fire in any answer set,
//! because answer-set grades only ever arise from head annotations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::kernel::{
    AnnotatedLiteral, Annotation, Atom, Combination, GeneratorRule, Grade, Literal,
    PreferenceRule, Program, Sign, Term,
};

/// Resource failure while grounding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroundError {
    /// The substitution space, estimated from the variable domain sizes
    /// before enumeration, is larger than the configured cap.
    #[error("grounding would produce about {estimated} rule instances, more than the cap of {limit}")]
    GroundingExplosion { estimated: u128, limit: usize },
}

/// Knobs for [`ground_program`].
#[derive(Debug, Clone)]
pub struct GroundOptions {
    /// Upper bound on the number of rule instances (default 100000).
    pub max_instances: usize,
    /// Maximum nesting depth of compound terms in the Herbrand universe;
    /// depth 0 is constants only (default 1).
    pub compound_depth: u32,
    /// Whether unachievable instances are dropped (default true); turned
    /// off only to compare pruned and unpruned groundings.
    pub prune: bool,
}

impl Default for GroundOptions {
    fn default() -> Self {
        GroundOptions { max_instances: 100_000, compound_depth: 1, prune: true }
    }
}

/// All ground terms buildable from the program's constants and functors,
/// nesting compounds up to `depth`. A program without constants gets the
/// reserved constant `u0`, so the universe is never empty.
pub fn herbrand_universe(program: &Program, depth: u32) -> BTreeSet<Term> {
    let mut constants = BTreeSet::new();
    let mut functors: BTreeSet<(String, usize)> = BTreeSet::new();
    for al in program.annotated_literals() {
        for arg in &al.literal.atom.args {
            collect_signature(arg, &mut constants, &mut functors);
        }
    }
    if constants.is_empty() {
        constants.insert("u0".to_string());
    }

    let mut universe: BTreeSet<Term> = constants.into_iter().map(Term::Const).collect();
    for _ in 0..depth {
        let base: Vec<Term> = universe.iter().cloned().collect();
        for (functor, arity) in &functors {
            for args in tuples(&base, *arity) {
                universe.insert(Term::Compound(functor.clone(), args));
            }
        }
    }
    universe
}

fn collect_signature(
    term: &Term,
    constants: &mut BTreeSet<String>,
    functors: &mut BTreeSet<(String, usize)>,
) {
    match term {
        Term::Const(name) => {
            constants.insert(name.clone());
        }
        Term::Var(_) => {}
        Term::Compound(functor, args) => {
            functors.insert((functor.clone(), args.len()));
            args.iter().for_each(|t| collect_signature(t, constants, functors));
        }
    }
}

/// Every tuple of `arity` elements drawn from `base`, in lexicographic
/// index order.
fn tuples<T: Clone>(base: &[T], arity: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if base.is_empty() {
        return out;
    }
    let mut counter = vec![0usize; arity];
    loop {
        out.push(counter.iter().map(|&i| base[i].clone()).collect());
        let mut pos = counter.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < base.len() {
                break;
            }
            counter[pos] = 0;
        }
    }
}

/// Per-predicate grade vocabulary: every grade occurring syntactically in
/// an annotation of the predicate, plus 1.
pub fn grade_vocabulary(program: &Program) -> BTreeMap<String, BTreeSet<Grade>> {
    let mut vocab: BTreeMap<String, BTreeSet<Grade>> = BTreeMap::new();
    for al in program.annotated_literals() {
        let entry = vocab.entry(al.literal.atom.predicate.clone()).or_default();
        collect_const_grades(&al.annotation, entry);
        entry.insert(Grade::one());
    }
    vocab
}

fn collect_const_grades(annotation: &Annotation, out: &mut BTreeSet<Grade>) {
    match annotation {
        Annotation::Const(grade) => {
            out.insert(grade.clone());
        }
        Annotation::Var(_) => {}
        Annotation::Func(_, args) => args.iter().for_each(|a| collect_const_grades(a, out)),
    }
}

/// Replaces every variable of every rule, yielding a ground program.
///
/// Annotation functions whose arguments become fully known are folded to
/// constants, so downstream consumers see constant annotations on every
/// instantiated rule (rules that arrived ground keep their spelling).
pub fn ground_program(program: &Program, options: &GroundOptions) -> Result<Program, GroundError> {
    let universe: Vec<Term> =
        herbrand_universe(program, options.compound_depth).into_iter().collect();
    let vocab = grade_vocabulary(program);

    let gen_plans: Vec<Plan> = program
        .generators
        .iter()
        .map(|r| plan_rule(r.head.iter().chain(&r.pos_body).chain(&r.neg_body), &vocab))
        .collect();
    let pref_plans: Vec<Plan> = program
        .preferences
        .iter()
        .map(|r| {
            let combo_literals = r.combinations.iter().flat_map(|c| c.literals());
            plan_rule(combo_literals.chain(&r.pos_body).chain(&r.neg_body), &vocab)
        })
        .collect();

    let estimated: u128 = gen_plans
        .iter()
        .chain(&pref_plans)
        .map(|p| plan_size(p, universe.len()))
        .fold(0u128, u128::saturating_add);
    if estimated > options.max_instances as u128 {
        return Err(GroundError::GroundingExplosion {
            estimated,
            limit: options.max_instances,
        });
    }

    // Instantiate the generators in full before pruning anything: the
    // achievability map is read off the complete instance set.
    let mut gen_instances: Vec<(usize, bool, GeneratorRule)> = Vec::new();
    for (idx, rule) in program.generators.iter().enumerate() {
        if rule.is_ground() {
            gen_instances.push((idx, false, rule.clone()));
            continue;
        }
        for (terms, grades) in substitutions(&gen_plans[idx], &universe) {
            let instance = GeneratorRule {
                id: rule.id.clone(),
                head: instantiate_all(&rule.head, &terms, &grades),
                pos_body: instantiate_all(&rule.pos_body, &terms, &grades),
                neg_body: instantiate_all(&rule.neg_body, &terms, &grades),
            };
            gen_instances.push((idx, true, instance));
        }
    }

    let mut achievable: HashMap<(Sign, String), Grade> = HashMap::new();
    for (_, _, rule) in &gen_instances {
        for al in &rule.head {
            let grade = annotation_grade(&al.annotation);
            let key = (al.literal.sign, al.literal.atom.predicate.clone());
            let best = achievable.entry(key).or_insert_with(Grade::zero);
            if grade > *best {
                *best = grade;
            }
        }
    }

    let mut out = Program::default();
    let mut survivors: HashMap<usize, usize> = HashMap::new();
    for (idx, instantiated, rule) in gen_instances {
        if instantiated && options.prune && !body_is_achievable(&rule.pos_body, &achievable) {
            continue;
        }
        let parent = &program.generators[idx];
        let id = if instantiated {
            let k = survivors.entry(idx).or_insert(0);
            *k += 1;
            parent.id.instance(*k)
        } else {
            rule.id.clone()
        };
        if let Some(span) = program.spans.get(&parent.id) {
            out.spans.insert(id.clone(), *span);
        }
        out.generators.push(GeneratorRule { id, ..rule });
    }

    for (idx, rule) in program.preferences.iter().enumerate() {
        if rule.is_ground() {
            if let Some(span) = program.spans.get(&rule.id) {
                out.spans.insert(rule.id.clone(), *span);
            }
            out.preferences.push(rule.clone());
            continue;
        }
        let mut emitted = 0usize;
        for (terms, grades) in substitutions(&pref_plans[idx], &universe) {
            let pos_body = instantiate_all(&rule.pos_body, &terms, &grades);
            if options.prune && !body_is_achievable(&pos_body, &achievable) {
                continue;
            }
            emitted += 1;
            let id = rule.id.instance(emitted);
            if let Some(span) = program.spans.get(&rule.id) {
                out.spans.insert(id.clone(), *span);
            }
            out.preferences.push(PreferenceRule {
                id,
                combinations: rule
                    .combinations
                    .iter()
                    .map(|c| instantiate_combination(c, &terms, &grades))
                    .collect(),
                pos_body,
                neg_body: instantiate_all(&rule.neg_body, &terms, &grades),
            });
        }
    }

    Ok(out)
}

/// The variables of one rule, with the domain of each annotation variable.
struct Plan {
    object_vars: Vec<String>,
    annotation_vars: Vec<(String, Vec<Grade>)>,
}

fn plan_rule<'a>(
    literals: impl Iterator<Item = &'a AnnotatedLiteral>,
    vocab: &BTreeMap<String, BTreeSet<Grade>>,
) -> Plan {
    let mut object_vars = BTreeSet::new();
    let mut mentions: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for al in literals {
        for arg in &al.literal.atom.args {
            arg.collect_vars(&mut object_vars);
        }
        let mut vars = BTreeSet::new();
        al.annotation.collect_vars(&mut vars);
        for var in vars {
            mentions.entry(var).or_default().insert(al.literal.atom.predicate.clone());
        }
    }
    let annotation_vars = mentions
        .into_iter()
        .map(|(var, preds)| {
            // Never empty: every predicate's vocabulary contains 1.
            let mut domain: Option<BTreeSet<Grade>> = None;
            for pred in &preds {
                domain = Some(match domain {
                    None => vocab[pred].clone(),
                    Some(d) => d.intersection(&vocab[pred]).cloned().collect(),
                });
            }
            (var, domain.unwrap_or_default().into_iter().collect())
        })
        .collect();
    Plan { object_vars: object_vars.into_iter().collect(), annotation_vars }
}

fn plan_size(plan: &Plan, universe_len: usize) -> u128 {
    let mut size: u128 = 1;
    for _ in &plan.object_vars {
        size = size.saturating_mul(universe_len as u128);
    }
    for (_, domain) in &plan.annotation_vars {
        size = size.saturating_mul(domain.len() as u128);
    }
    size
}

/// All assignments for the plan's variables, lexicographic in variable
/// name order with domains ascending.
fn substitutions(
    plan: &Plan,
    universe: &[Term],
) -> Vec<(HashMap<String, Term>, HashMap<String, Grade>)> {
    let object_n = plan.object_vars.len();
    let mut radices: Vec<usize> = vec![universe.len(); object_n];
    radices.extend(plan.annotation_vars.iter().map(|(_, d)| d.len()));
    if radices.iter().any(|&r| r == 0) {
        return Vec::new();
    }

    let mut out = Vec::new();
    let mut counter = vec![0usize; radices.len()];
    loop {
        let terms = plan
            .object_vars
            .iter()
            .enumerate()
            .map(|(i, var)| (var.clone(), universe[counter[i]].clone()))
            .collect();
        let grades = plan
            .annotation_vars
            .iter()
            .enumerate()
            .map(|(j, (var, domain))| (var.clone(), domain[counter[object_n + j]].clone()))
            .collect();
        out.push((terms, grades));

        let mut pos = counter.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < radices[pos] {
                break;
            }
            counter[pos] = 0;
        }
    }
}

fn instantiate_all(
    literals: &[AnnotatedLiteral],
    terms: &HashMap<String, Term>,
    grades: &HashMap<String, Grade>,
) -> Vec<AnnotatedLiteral> {
    literals.iter().map(|al| instantiate_annotated(al, terms, grades)).collect()
}

fn instantiate_annotated(
    al: &AnnotatedLiteral,
    terms: &HashMap<String, Term>,
    grades: &HashMap<String, Grade>,
) -> AnnotatedLiteral {
    let atom = Atom::new(
        al.literal.atom.predicate.clone(),
        al.literal.atom.args.iter().map(|t| t.substitute(terms)).collect(),
    );
    let literal = Literal { sign: al.literal.sign, atom };
    AnnotatedLiteral::new(literal, fold_constants(al.annotation.substitute(grades)))
}

fn instantiate_combination(
    combination: &Combination,
    terms: &HashMap<String, Term>,
    grades: &HashMap<String, Grade>,
) -> Combination {
    match combination {
        Combination::Lit(al) => Combination::Lit(instantiate_annotated(al, terms, grades)),
        Combination::Naf(al) => Combination::Naf(instantiate_annotated(al, terms, grades)),
        Combination::And(l, r) => Combination::and(
            instantiate_combination(l, terms, grades),
            instantiate_combination(r, terms, grades),
        ),
        Combination::Or(l, r) => Combination::or(
            instantiate_combination(l, terms, grades),
            instantiate_combination(r, terms, grades),
        ),
    }
}

fn fold_constants(annotation: Annotation) -> Annotation {
    match &annotation {
        Annotation::Func(..) if annotation.is_ground() => {
            Annotation::Const(annotation.eval_ground().expect("ground annotation"))
        }
        _ => annotation,
    }
}

fn annotation_grade(annotation: &Annotation) -> Grade {
    annotation.eval_ground().expect("ground annotation")
}

fn body_is_achievable(
    pos_body: &[AnnotatedLiteral],
    achievable: &HashMap<(Sign, String), Grade>,
) -> bool {
    pos_body.iter().all(|al| {
        let needed = annotation_grade(&al.annotation);
        if needed.is_zero() {
            return true;
        }
        let key = (al.literal.sign, al.literal.atom.predicate.clone());
        achievable.get(&key).is_some_and(|best| needed <= *best)
    })
}

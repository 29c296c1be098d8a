//! A from-scratch boolean answer-set and preference oracle, used to
//! cross-check the graded pipeline on programs whose annotations are
//! all 1. Everything here works on plain sets of atom names; nothing
//! is shared with the library under test.

use std::collections::BTreeSet;

pub type AtomSet = BTreeSet<String>;

#[derive(Debug, Clone)]
pub struct Rule {
    /// Disjunctive head; never empty.
    pub head: Vec<String>,
    pub pos: Vec<String>,
    pub neg: Vec<String>,
}

#[derive(Debug, Clone)]
pub enum Combo {
    Atom(String),
    Not(String),
    And(Box<Combo>, Box<Combo>),
    Or(Box<Combo>, Box<Combo>),
}

#[derive(Debug, Clone)]
pub struct PrefRule {
    /// Most preferred first.
    pub combos: Vec<Combo>,
    pub pos: Vec<String>,
    pub neg: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degree {
    /// 1-based index of the first option the set satisfies.
    Sat(usize),
    Irr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Better,
    Worse,
    Even,
    Mixed,
}

fn holds(set: &AtomSet, combo: &Combo) -> bool {
    match combo {
        Combo::Atom(a) => set.contains(a),
        Combo::Not(a) => !set.contains(a),
        Combo::And(l, r) => holds(set, l) && holds(set, r),
        Combo::Or(l, r) => holds(set, l) || holds(set, r),
    }
}

fn set_of(bits: u32, atoms: &[String]) -> AtomSet {
    atoms
        .iter()
        .enumerate()
        .filter(|(i, _)| bits & (1 << i) != 0)
        .map(|(_, a)| a.clone())
        .collect()
}

fn models(set: &AtomSet, reduct: &[&Rule]) -> bool {
    reduct.iter().all(|rule| {
        !rule.pos.iter().all(|a| set.contains(a)) || rule.head.iter().any(|h| set.contains(h))
    })
}

/// Stable models by exhaustive subset search: a candidate models its
/// reduct and no proper subset of it does.
pub fn answer_sets(rules: &[Rule], atoms: &[String]) -> Vec<AtomSet> {
    assert!(atoms.len() <= 16, "exhaustive search only");
    let mut result = Vec::new();
    for bits in 0..(1u32 << atoms.len()) {
        let candidate = set_of(bits, atoms);
        let reduct: Vec<&Rule> =
            rules.iter().filter(|r| r.neg.iter().all(|a| !candidate.contains(a))).collect();
        if !models(&candidate, &reduct) {
            continue;
        }
        let minimal = (0..(1u32 << atoms.len())).all(|sub| {
            sub == bits || sub & bits != sub || !models(&set_of(sub, atoms), &reduct)
        });
        if minimal {
            result.push(candidate);
        }
    }
    result
}

pub fn degree(set: &AtomSet, rule: &PrefRule) -> Degree {
    let body = rule.pos.iter().all(|a| set.contains(a))
        && rule.neg.iter().all(|a| !set.contains(a));
    if !body {
        return Degree::Irr;
    }
    match rule.combos.iter().position(|c| holds(set, c)) {
        Some(i) => Degree::Sat(i + 1),
        None => Degree::Irr,
    }
}

/// Ranking of two sets by one boolean combination: satisfying it beats
/// not satisfying it; when both satisfy, conjunctions need unanimity
/// among the parts and disjunctions fall back to counting which side
/// ranks at-least-as-good on more parts.
fn combo_order(first: &AtomSet, second: &AtomSet, combo: &Combo) -> Order {
    match (holds(first, combo), holds(second, combo)) {
        (true, false) => Order::Better,
        (false, true) => Order::Worse,
        (false, false) => Order::Even,
        (true, true) => match combo {
            Combo::Atom(_) | Combo::Not(_) => Order::Even,
            Combo::And(l, r) | Combo::Or(l, r) => {
                let parts = [combo_order(first, second, l), combo_order(first, second, r)];
                let better = parts.contains(&Order::Better);
                let worse = parts.contains(&Order::Worse);
                let mixed = parts.contains(&Order::Mixed);
                if better && !worse && !mixed {
                    Order::Better
                } else if worse && !better && !mixed {
                    Order::Worse
                } else if matches!(combo, Combo::And(..)) {
                    if parts.iter().all(|&o| o == Order::Even) {
                        Order::Even
                    } else {
                        Order::Mixed
                    }
                } else {
                    let first_geq =
                        parts.iter().filter(|o| matches!(o, Order::Better | Order::Even)).count();
                    let second_geq =
                        parts.iter().filter(|o| matches!(o, Order::Worse | Order::Even)).count();
                    if first_geq == second_geq {
                        Order::Even
                    } else {
                        Order::Mixed
                    }
                }
            }
        },
    }
}

/// Ranking by one preference rule: lower satisfaction index wins,
/// irrelevance ranks below any satisfaction, ties go to the
/// combination ranking at the shared index.
pub fn rule_order(first: &AtomSet, second: &AtomSet, rule: &PrefRule) -> Order {
    match (degree(first, rule), degree(second, rule)) {
        (Degree::Sat(i), Degree::Sat(j)) if i < j => Order::Better,
        (Degree::Sat(i), Degree::Sat(j)) if i > j => Order::Worse,
        (Degree::Sat(i), Degree::Sat(_)) => combo_order(first, second, &rule.combos[i - 1]),
        (Degree::Sat(_), Degree::Irr) => Order::Better,
        (Degree::Irr, Degree::Sat(_)) => Order::Worse,
        (Degree::Irr, Degree::Irr) => Order::Even,
    }
}

/// Pareto: strictly better on some rule and at least as good on all.
pub fn pareto_order(first: &AtomSet, second: &AtomSet, rules: &[PrefRule]) -> Order {
    let orders: Vec<Order> = rules.iter().map(|r| rule_order(first, second, r)).collect();
    let better = orders.contains(&Order::Better);
    let worse = orders.contains(&Order::Worse);
    if orders.contains(&Order::Mixed) || (better && worse) {
        Order::Mixed
    } else if better {
        Order::Better
    } else if worse {
        Order::Worse
    } else {
        Order::Even
    }
}

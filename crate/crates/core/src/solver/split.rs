//! Stratified lazy enumeration engine.
//!
//! Literals are grouped into strongly connected components of the
//! dependency graph: each head disjunct depends on every body literal
//! and on its sibling disjuncts. Components are finished
//! dependencies-first, so by the time a component starts, everything
//! below it is final. Inside a component a monotone sweep raises chosen
//! head disjuncts to fixpoint, branching on head choices and — for
//! negative literals of the same component — on whether the literal ends
//! up below the tested grade. Those assumptions are intervals
//! `(at least, strictly below)` on the literal's final grade, verified
//! once its component is finished. Completed states then pass exactly
//! the answer-set check the brute engine applies.

use std::collections::BTreeSet;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use super::{
    has_smaller_model, reduct_state, satisfies_state, state_consistent, Counters, Interned,
    SolveError, SolveOptions,
};

pub(super) fn solve(
    interned: &Interned,
    options: &SolveOptions,
) -> Result<(BTreeSet<Vec<u32>>, Counters), SolveError> {
    let n = interned.literals.len();
    let mut graph = DiGraph::<(), ()>::with_capacity(n, 0);
    for _ in 0..n {
        graph.add_node(());
    }
    for rule in &interned.rules {
        for &(h, _) in &rule.head {
            for &(l, _) in rule.pos.iter().chain(&rule.neg) {
                graph.add_edge(NodeIndex::new(h), NodeIndex::new(l), ());
            }
            for &(h2, _) in &rule.head {
                if h != h2 {
                    graph.add_edge(NodeIndex::new(h), NodeIndex::new(h2), ());
                }
            }
        }
    }

    // tarjan_scc lists a component only after everything it depends on.
    let components = tarjan_scc(&graph);
    let mut stratum_of = vec![0usize; n];
    for (s, component) in components.iter().enumerate() {
        for node in component {
            stratum_of[node.index()] = s;
        }
    }

    let mut strata: Vec<Vec<usize>> = vec![Vec::new(); components.len()];
    for (ri, rule) in interned.rules.iter().enumerate() {
        strata[stratum_of[rule.head[0].0]].push(ri);
    }
    for stratum in &mut strata {
        // Facts first: they never wait on a sweep.
        stratum.sort_by_key(|&ri| {
            let rule = &interned.rules[ri];
            !rule.pos.is_empty() || !rule.neg.is_empty()
        });
    }

    let search = Search {
        interned,
        options,
        strata,
        stratum_of,
        max_head: interned.max_head_ranks(),
    };
    let mut found = BTreeSet::new();
    let mut counters = Counters::default();
    search.stratum(0, vec![0; n], vec![(0, u32::MAX); n], &mut found, &mut counters)?;
    Ok((found, counters))
}

/// Per-literal interval assumption on the final grade rank:
/// `at_least ≤ final < below`.
type Assumptions = Vec<(u32, u32)>;

struct Search<'a> {
    interned: &'a Interned,
    options: &'a SolveOptions,
    strata: Vec<Vec<usize>>,
    stratum_of: Vec<usize>,
    max_head: Vec<u32>,
}

impl Search<'_> {
    fn stratum(
        &self,
        s: usize,
        mut state: Vec<u32>,
        assume: Assumptions,
        found: &mut BTreeSet<Vec<u32>>,
        counters: &mut Counters,
    ) -> Result<(), SolveError> {
        if s == self.strata.len() {
            return self.emit(state, found, counters);
        }
        let mut sweeps = 0u64;
        loop {
            sweeps += 1;
            counters.iterations += 1;
            if sweeps > self.options.iteration_cap {
                return Err(SolveError::IterationCapExceeded {
                    limit: self.options.iteration_cap,
                });
            }
            let mut changed = false;
            for k in 0..self.strata[s].len() {
                let rule = &self.interned.rules[self.strata[s][k]];
                if rule.head.iter().any(|&(l, r)| state[l] >= r) {
                    continue; // some disjunct already holds; nothing to add
                }
                if rule.pos.iter().any(|&(l, r)| state[l] < r) {
                    continue; // not fired, or not yet
                }
                let mut blocked = false;
                for &(l, r) in &rule.neg {
                    if state[l] >= r {
                        blocked = true;
                        break;
                    }
                    if self.stratum_of[l] < s {
                        continue; // finished literal, stays below r
                    }
                    let (at_least, below) = assume[l];
                    if at_least >= r {
                        blocked = true; // assumed to reach r eventually
                        break;
                    }
                    if below <= r {
                        continue; // assumed to stay under r
                    }
                    // Undecided: try both fates for this literal.
                    let mut free = assume.clone();
                    free[l].1 = r;
                    self.stratum(s, state.clone(), free, found, counters)?;
                    if self.max_head[l] >= r {
                        let mut held = assume.clone();
                        held[l].0 = r;
                        self.stratum(s, state.clone(), held, found, counters)?;
                    }
                    return Ok(());
                }
                if blocked {
                    continue;
                }
                // Fired with no satisfied disjunct: commit or branch.
                if let [(l, r)] = rule.head[..] {
                    if r >= assume[l].1 {
                        return Ok(()); // would break a freeness assumption
                    }
                    state[l] = r;
                    changed = true;
                } else {
                    for &(l, r) in &rule.head {
                        if r >= assume[l].1 {
                            continue;
                        }
                        let mut raised = state.clone();
                        raised[l] = r;
                        self.stratum(s, raised, assume.clone(), found, counters)?;
                    }
                    return Ok(());
                }
            }
            if !changed {
                break;
            }
        }
        for (l, &(at_least, below)) in assume.iter().enumerate() {
            if state[l] < at_least || state[l] >= below {
                return Ok(()); // an assumption did not come true
            }
        }
        self.stratum(s + 1, state, assume, found, counters)
    }

    fn emit(
        &self,
        state: Vec<u32>,
        found: &mut BTreeSet<Vec<u32>>,
        counters: &mut Counters,
    ) -> Result<(), SolveError> {
        counters.candidates += 1;
        if !state_consistent(&state, &self.interned.complement) {
            return Ok(());
        }
        let reduct = reduct_state(&self.interned.rules, &state);
        if satisfies_state(&state, &reduct) && !has_smaller_model(&state, &reduct, self.interned) {
            found.insert(state);
        }
        Ok(())
    }
}

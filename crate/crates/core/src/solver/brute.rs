//! Exhaustive reference engine.
//!
//! Every point of the vocabulary lattice — each program literal ranging
//! over `{0} ∪ vocabulary(predicate)` — is a candidate. A candidate is an
//! answer set when it is consistent, satisfies its own reduct, and no
//! strictly smaller lattice point models that reduct. Slow and obviously
//! correct; the split engine is held to its output.

use std::collections::BTreeSet;

use super::{
    has_smaller_model, reduct_state, satisfies_own_reduct, state_consistent, Counters, Interned,
    SolveError, SolveOptions,
};

pub(super) fn solve(
    interned: &Interned,
    options: &SolveOptions,
) -> Result<(BTreeSet<Vec<u32>>, Counters), SolveError> {
    let domains = &interned.vocab;
    let estimated: u128 =
        domains.iter().fold(1u128, |space, d| space.saturating_mul(d.len() as u128));
    if estimated > u128::from(options.candidate_cap) {
        return Err(SolveError::CandidateSpaceExceeded {
            estimated,
            limit: options.candidate_cap,
        });
    }

    let mut found = BTreeSet::new();
    let mut counters = Counters::default();
    let mut counter = vec![0usize; domains.len()];
    let mut state = vec![0u32; domains.len()];
    loop {
        counters.candidates += 1;
        if state_consistent(&state, &interned.complement)
            && satisfies_own_reduct(&state, &interned.rules)
        {
            let reduct = reduct_state(&interned.rules, &state);
            if !has_smaller_model(&state, &reduct, interned) {
                found.insert(state.clone());
            }
        }
        let mut pos = counter.len();
        loop {
            if pos == 0 {
                return Ok((found, counters));
            }
            pos -= 1;
            counter[pos] += 1;
            if counter[pos] < domains[pos].len() {
                state[pos] = domains[pos][counter[pos]];
                break;
            }
            counter[pos] = 0;
            state[pos] = domains[pos][0];
        }
    }
}

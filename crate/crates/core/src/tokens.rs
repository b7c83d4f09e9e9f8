//! Completion-order constraints between objectives.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::instance::TokenConstraint;

/// Every `(earlier, later)` pair implied by the tokens: `earlier` must be
/// completed no later than `later`.
pub fn precedence_edges(tokens: &[TokenConstraint]) -> impl Iterator<Item = (usize, usize)> + '_ {
    tokens.iter().flat_map(|t| {
        let o = t.objective;
        t.before.iter().map(move |&b| (b, o)).chain(t.after.iter().map(move |&a| (o, a)))
    })
}

/// Checks a completion record against the tokens.
///
/// `completed[i]` is the trick index at which objective `i` was completed, or
/// `None` if it is still open. Returns `false` as soon as some constraint can
/// no longer be met by any continuation: a completed objective whose
/// predecessor is open or was completed later, or objectives completed in the
/// same trick whose mutual constraints form a cycle. Constraints whose later
/// objective is still open are not yet decided and do not fail the check, so
/// a record with every objective completed passes iff the final order is
/// consistent.
pub fn check_tokens(completed: &[Option<usize>], tokens: &[TokenConstraint]) -> bool {
    let mut same_trick: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut indegree: BTreeMap<usize, usize> = BTreeMap::new();
    for (earlier, later) in precedence_edges(tokens) {
        let Some(t_later) = completed.get(later).copied().flatten() else {
            continue;
        };
        match completed.get(earlier).copied().flatten() {
            None => return false,
            Some(t_earlier) if t_earlier > t_later => return false,
            Some(t_earlier) if t_earlier == t_later => {
                same_trick.entry(earlier).or_default().push(later);
                indegree.entry(earlier).or_insert(0);
                *indegree.entry(later).or_insert(0) += 1;
            }
            Some(_) => {}
        }
    }
    is_acyclic(&same_trick, indegree)
}

fn is_acyclic(edges: &BTreeMap<usize, Vec<usize>>, mut indegree: BTreeMap<usize, usize>) -> bool {
    let total = indegree.len();
    let mut ready: Vec<usize> = indegree.iter().filter(|&(_, &d)| d == 0).map(|(&n, _)| n).collect();
    let mut seen = 0;
    while let Some(n) = ready.pop() {
        seen += 1;
        for &m in edges.get(&n).into_iter().flatten() {
            let d = indegree.get_mut(&m).expect("edge target registered");
            *d -= 1;
            if *d == 0 {
                ready.push(m);
            }
        }
    }
    seen == total
}

use alloc::vec::Vec;

use thiserror::Error;

use crate::card::Card;
use crate::reduce::Graph;
use crate::rules::{Play, Trick};
use crate::verify::PlaySequence;

pub const DEFAULT_HP_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum HpError {
    #[error("graph has {vertices} vertices, brute force is limited to {limit}")]
    LimitExceeded { vertices: usize, limit: usize },
    #[error("not a Hamiltonian path: {0}")]
    InvalidPath(&'static str),
}

/// Backtracking search for a Hamiltonian path; returns one as 1-based vertices.
pub fn hp_bruteforce(graph: &Graph, limit: usize) -> Result<Option<Vec<usize>>, HpError> {
    let n = graph.vertices();
    if n > limit {
        return Err(HpError::LimitExceeded { vertices: n, limit });
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let mut path = Vec::with_capacity(n);
    let mut used = alloc::vec![false; n + 1];
    for start in 1..=n {
        path.push(start);
        used[start] = true;
        if extend(graph, &mut path, &mut used) {
            return Ok(Some(path));
        }
        used[start] = false;
        path.pop();
    }
    Ok(None)
}

fn extend(graph: &Graph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if path.len() == graph.vertices() {
        return true;
    }
    let tail = *path.last().expect("path is non-empty");
    for &next in graph.neighbors(tail) {
        if used[next] {
            continue;
        }
        used[next] = true;
        path.push(next);
        if extend(graph, path, used) {
            return true;
        }
        path.pop();
        used[next] = false;
    }
    false
}

/// The winning line on the base reduction of `graph` that follows `path`.
///
/// The first vertex leads its objective card. Afterwards the previous
/// winner leads its card in the next vertex's suit, the next vertex takes
/// it with its objective card, the other neighbors follow suit, and
/// everyone else sheds junk from the bottom.
pub fn path_to_witness(graph: &Graph, path: &[usize]) -> Result<PlaySequence, HpError> {
    let n = graph.vertices();
    if path.len() != n {
        return Err(HpError::InvalidPath("wrong length"));
    }
    let mut seen = alloc::vec![false; n + 1];
    for &v in path {
        if v == 0 || v > n {
            return Err(HpError::InvalidPath("vertex out of range"));
        }
        if core::mem::replace(&mut seen[v], true) {
            return Err(HpError::InvalidPath("repeated vertex"));
        }
    }
    if path.windows(2).any(|w| !graph.has_edge(w[0], w[1])) {
        return Err(HpError::InvalidPath("consecutive vertices are not adjacent"));
    }
    let Some(&first) = path.first() else {
        return Ok(PlaySequence::new(0, Vec::new()));
    };

    let mut junk_played = alloc::vec![0u32; n];
    let mut tricks = Vec::with_capacity(n);
    let mut lead = first - 1;
    for &v in path {
        let suit = v as u32;
        let plays = (1..=n).map(|seat_vertex| {
            let card = if seat_vertex == v {
                Card::new(graph.degree(v) as u32 + 1, suit)
            } else if let Some(k) = graph.neighbors(v).iter().position(|&u| u == seat_vertex) {
                Card::new(k as u32 + 1, suit)
            } else {
                junk_played[seat_vertex - 1] += 1;
                Card::new(junk_played[seat_vertex - 1], (n + seat_vertex) as u32)
            };
            Play { player: seat_vertex - 1, card }
        });
        tricks.push(Trick::arranged(lead, n, plays));
        lead = v - 1;
    }
    Ok(PlaySequence::new(first - 1, tricks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduce::reduce_hp;
    use crate::verify::{verify_sequence, Verdict};
    use alloc::vec;

    #[test]
    fn figure_graph_has_no_path() {
        let g = Graph::new(6, [(1, 2), (2, 3), (3, 4), (3, 5), (5, 6)]).unwrap();
        assert_eq!(hp_bruteforce(&g, DEFAULT_HP_LIMIT), Ok(None));
    }

    #[test]
    fn small_families() {
        assert_eq!(hp_bruteforce(&Graph::path(3), DEFAULT_HP_LIMIT), Ok(Some(vec![1, 2, 3])));
        assert!(hp_bruteforce(&Graph::complete(4), DEFAULT_HP_LIMIT).unwrap().is_some());
        assert_eq!(hp_bruteforce(&Graph::path(11), DEFAULT_HP_LIMIT), Err(HpError::LimitExceeded { vertices: 11, limit: 10 }));
    }

    #[test]
    fn witness_for_path_both_directions() {
        let g = Graph::path(3);
        let inst = reduce_hp(&g).unwrap();
        for path in [[1, 2, 3], [3, 2, 1]] {
            let w = path_to_witness(&g, &path).unwrap();
            assert_eq!(w.len(), 3);
            assert_eq!(verify_sequence(&inst, &w), Verdict::Accepted);
        }
    }

    #[test]
    fn witness_on_complete_graph() {
        let g = Graph::complete(5);
        let inst = reduce_hp(&g).unwrap();
        let w = path_to_witness(&g, &[4, 2, 5, 1, 3]).unwrap();
        assert_eq!(verify_sequence(&inst, &w), Verdict::Accepted);
    }

    #[test]
    fn rejects_non_paths() {
        let g = Graph::path(3);
        assert!(path_to_witness(&g, &[1, 3, 2]).is_err());
        assert!(path_to_witness(&g, &[1, 2]).is_err());
        assert!(path_to_witness(&g, &[1, 2, 2]).is_err());
        assert!(path_to_witness(&g, &[1, 2, 4]).is_err());
    }
}

//! b-degeneracy of `G[I]`.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::vertex_set::VertexSet;

/// True iff every nonempty `J ⊆ I` has a vertex of degree at most `b` in
/// `G[J]`, decided by repeatedly deleting a vertex of minimum degree.
pub fn degeneracy_check(g: &Hypergraph, i: &VertexSet, b: u64) -> bool {
    let inside: Vec<&Vec<usize>> = g
        .edges()
        .iter()
        .filter(|e| e.iter().all(|&v| i.contains(v)))
        .collect();
    if inside.is_empty() {
        return true;
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.n() + 1];
    let mut degree = vec![0u64; g.n() + 1];
    for (k, e) in inside.iter().enumerate() {
        for &v in e.iter() {
            incident[v].push(k);
            degree[v] += 1;
        }
    }
    let mut alive_edge = vec![true; inside.len()];
    let mut alive = i.clone();
    // Any vertex of degree <= b can be peeled; the order does not matter.
    let mut stack: Vec<usize> = alive.iter().filter(|&v| degree[v] <= b).collect();
    let mut removed = 0;
    while let Some(v) = stack.pop() {
        if !alive.contains(v) {
            continue;
        }
        alive.remove(v);
        removed += 1;
        for &k in &incident[v] {
            if !alive_edge[k] {
                continue;
            }
            alive_edge[k] = false;
            for &u in inside[k].iter() {
                if u != v && alive.contains(u) {
                    degree[u] -= 1;
                    if degree[u] == b {
                        stack.push(u);
                    }
                }
            }
        }
    }
    removed == i.len()
}

/// The definition checked directly over every nonempty `J ⊆ I`; `|I| <= 20`.
pub fn degeneracy_bruteforce(g: &Hypergraph, i: &VertexSet, b: u64) -> Result<bool> {
    let members = i.to_vec();
    if members.len() > 20 {
        return Err(Error::ResourceLimit(format!(
            "all-subsets degeneracy check needs |I| <= 20, got {}",
            members.len()
        )));
    }
    let edges: Vec<u32> = g
        .edges()
        .iter()
        .filter_map(|e| {
            let mut mask = 0u32;
            for v in e {
                let pos = members.binary_search(v).ok()?;
                mask |= 1 << pos;
            }
            Some(mask)
        })
        .collect();
    for j in 1u32..(1 << members.len()) {
        let mut low = false;
        for pos in 0..members.len() {
            if j >> pos & 1 == 0 {
                continue;
            }
            let d = edges
                .iter()
                .filter(|&&e| e & j == e && e >> pos & 1 == 1)
                .count() as u64;
            if d <= b {
                low = true;
                break;
            }
        }
        if !low {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::k3;

    #[test]
    fn small_cases() {
        let g = k3();
        let all = VertexSet::full(3);
        assert!(!degeneracy_check(&g, &all, 1));
        assert!(degeneracy_check(&g, &all, 2));
        assert!(degeneracy_check(&g, &VertexSet::from_vertices(3, [1]), 0));
        let e = Hypergraph::new(4, 3, [[1, 2, 3]]).unwrap();
        assert!(degeneracy_check(&e, &VertexSet::full(4), 1));
        assert!(!degeneracy_check(&e, &VertexSet::full(4), 0));
        assert_eq!(degeneracy_bruteforce(&g, &all, 1), Ok(false));
        assert_eq!(degeneracy_bruteforce(&g, &all, 2), Ok(true));
    }
}

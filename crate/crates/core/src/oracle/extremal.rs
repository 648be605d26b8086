//! Brute-force extremal numbers, densities and Sidon counts.

use num_bigint::BigInt;
use serde::Serialize;

use super::independent::{enumerate_independent_sets, max_independent_size};
use crate::apps::gnh::build_gnh;
use crate::apps::induced::{build_induced_g, hp_counts, TwoColouredMultigraph};
use crate::apps::pattern::GraphPattern;
use crate::apps::sidon::{build_sidon_graph, three_ap_count};
use crate::error::{invalid, Error, Result};
use crate::rational::Rational;
use crate::vertex_set::VertexSet;

/// Largest universe scanned exhaustively by [`ex_bruteforce`].
pub const EX_EXHAUSTIVE_MAX: usize = 24;

/// `ex(N, H)`: the most edges in an H-free ℓ-graph on `[N]`, as the largest
/// independent set of `G(N, H)`. Exhaustive for `C(N, ℓ) <= 24`, branch and
/// bound up to 64.
pub fn ex_bruteforce(n_ground: usize, h: &GraphPattern) -> Result<u64> {
    let g = build_gnh(n_ground, h)?;
    if g.n() <= EX_EXHAUSTIVE_MAX {
        let best = enumerate_independent_sets(&g, usize::MAX)?.map(|s| s.len()).max().unwrap_or(0);
        return Ok(best as u64);
    }
    if g.n() > 64 {
        return Err(Error::ResourceLimit(format!(
            "ex(N, H) supports C(N, ell) <= 64, got {}",
            g.n()
        )));
    }
    Ok(max_independent_size(&g)? as u64)
}

/// `m(H)` computed over vertex subsets: the maximum of `(e(H[W])-1)/(|W|-ℓ)`
/// over `W` spanning at least two edges. Agrees with the edge-subset form
/// because adding the induced edges of `V(H')` only raises the ratio.
pub fn m_h_by_vertex_subsets(h: &GraphPattern) -> Result<Rational> {
    let v = h.v();
    if h.edge_count() < 2 {
        return invalid("m(H) needs at least two edges");
    }
    if v > 24 {
        return Err(Error::ResourceLimit("vertex-subset scan supports v(H) <= 24".into()));
    }
    let masks: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |m, &x| m | 1 << (x - 1)))
        .collect();
    let mut best: Option<Rational> = None;
    for w in 0u32..1 << v {
        let inside = masks.iter().filter(|&&m| m & w == m).count() as i64;
        if inside < 2 {
            continue;
        }
        let value = Rational::new((inside - 1).into(), (w.count_ones() as i64 - h.ell() as i64).into());
        if best.as_ref().is_none_or(|b| value > *b) {
            best = Some(value);
        }
    }
    Ok(best.expect("H itself spans two edges"))
}

/// `hex(H, N)` by the second route: minimise `H_p` over independent sets of
/// the induced hypergraph that give every ℓ-set at least one colour.
pub fn hex_via_independent_sets(n_ground: usize, h: &GraphPattern, p: &Rational) -> Result<f64> {
    let g = build_induced_g(n_ground, h)?;
    let n0 = g.n() / 2;
    let mut best: Option<f64> = None;
    for set in enumerate_independent_sets(&g, usize::MAX)? {
        if (1..=n0).any(|i| !set.contains(i) && !set.contains(n0 + i)) {
            continue;
        }
        let j = TwoColouredMultigraph::from_vertex_set(n_ground, h.ell(), &set);
        let (x, y) = j.single_coloured();
        let value = hp_counts(x, y, p)?;
        if best.is_none_or(|b| value < b) {
            best = Some(value);
        }
    }
    best.ok_or_else(|| Error::Internal("no colouring avoids H".into()))
}

/// Largest `n` accepted by [`sidon_count_bruteforce`].
pub const SIDON_MAX_N: usize = 28;

/// Number of Sidon subsets of `[n]`: sets with no `w + x = y + z` for
/// `{w, x} != {y, z}`, repeated elements allowed. Such sets avoid 3-term
/// progressions as well (`x + z = y + y`).
pub fn sidon_count_bruteforce(n: usize) -> Result<BigInt> {
    if n > SIDON_MAX_N {
        return Err(Error::ResourceLimit(format!("Sidon counting supports n <= {SIDON_MAX_N}")));
    }
    // sums as a bitmask over 2..=2n; members in increasing order
    fn go(next: usize, n: usize, members: &mut Vec<usize>, sums: u64, count: &mut u64) {
        *count += 1;
        for x in next..=n {
            let mut added = 0u64;
            let ok = members.iter().chain(std::iter::once(&x)).all(|&a| {
                let bit = 1u64 << (a + x);
                let fresh = (sums | added) & bit == 0;
                added |= bit;
                fresh
            });
            if ok {
                members.push(x);
                go(x + 1, n, members, sums | added, count);
                members.pop();
            }
        }
    }
    let mut count = 0u64;
    go(1, n, &mut Vec::new(), 0, &mut count);
    Ok(BigInt::from(count))
}

/// Direct Sidon test on a set.
pub fn is_sidon(set: &VertexSet) -> bool {
    let members = set.to_vec();
    let mut seen = std::collections::HashSet::new();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i..] {
            if !seen.insert(a + b) {
                return false;
            }
        }
    }
    true
}

/// How the independent sets of the Sidon 4-graph relate to Sidon sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SidonGapReport {
    pub n: usize,
    pub sidon: u64,
    pub independent: u64,
    /// Independent sets containing a 3-term progression.
    pub gap: u64,
    /// Every independent set is Sidon exactly when it has no progression.
    pub characterization_holds: bool,
    /// `sidon = independent - gap`, with `sidon` from [`sidon_count_bruteforce`].
    pub identity_holds: bool,
}

/// Verifies that the Sidon sets are exactly the independent sets of the
/// Sidon 4-graph containing no 3-term progression.
pub fn sidon_gap_check(n: usize) -> Result<SidonGapReport> {
    if n < 4 {
        return invalid("the Sidon graph needs n >= 4");
    }
    let g = build_sidon_graph(n)?;
    let mut independent = 0u64;
    let mut gap = 0u64;
    let mut characterization_holds = true;
    for set in enumerate_independent_sets(&g, usize::MAX)? {
        independent += 1;
        let has_ap = three_ap_count(&set) > 0;
        gap += has_ap as u64;
        characterization_holds &= is_sidon(&set) != has_ap;
    }
    let sidon = sidon_count_bruteforce(n)?;
    let sidon_u64 = u64::try_from(&sidon).map_err(|_| Error::Internal("count overflow".into()))?;
    Ok(SidonGapReport {
        n,
        sidon: sidon_u64,
        independent,
        gap,
        characterization_holds,
        identity_holds: sidon_u64 + gap == independent,
    })
}

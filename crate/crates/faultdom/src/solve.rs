//! Exact and heuristic minimization of (fault-tolerant) locating-dominating
//! sets.
//!
//! The exact search is a branch and bound over include/exclude decisions per
//! vertex with three sound prunes:
//!
//! * domination propagation — if `N[v]` has exactly as many still-available
//!   vertices as the variant's domination requirement, all of them are forced
//!   into the set; if fewer, the branch is infeasible;
//! * a lower bound from disjoint closed neighborhoods with unmet demand;
//! * for ERR:LD, pair-separation: a pair whose only possible separating
//!   detectors are all excluded can never be distinguished.
//!
//! Every candidate leaf is re-checked with [`verify`], so prunes only ever
//! discard infeasible or non-improving branches.

use crate::bitset::BitSet;
use crate::graph::Graph;
use crate::verify::{
    verify, verify_with, DetectorSet, PairScan, Variant, Verdict, VerifyOptions,
};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("no {} set exists for this graph", .0.name())]
    NoValidSet(Variant),
    #[error("invalid packing: {0}")]
    InvalidPacking(String),
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Abort (with `proved = false`) after this many search nodes.
    pub node_budget: u64,
    /// Abort (with `proved = false`) after this much wall time.
    pub time_budget: Option<Duration>,
    /// Only look for sets of at most this size; with the cap in place the
    /// search is a decision procedure for "does a set of size <= cap exist".
    pub max_size: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 50_000_000,
            time_budget: None,
            max_size: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    /// Best set found, if any was found within the budgets and size cap.
    pub best: Option<DetectorSet>,
    pub nodes: u64,
    /// True when the search space was exhausted, making the result exact:
    /// `best` is a true minimum, or `None` proves no set fits the cap.
    pub proved: bool,
}

impl SolveResult {
    pub fn optimum(&self) -> Option<usize> {
        self.best.as_ref().map(|s| s.len())
    }
}

struct Search<'a> {
    g: &'a Graph,
    variant: Variant,
    req: usize,
    /// Upper bound on an *improving* solution size (exclusive bound = best so far).
    bound: usize,
    best: Option<DetectorSet>,
    nodes: u64,
    node_budget: u64,
    deadline: Option<Instant>,
    proved: bool,
    /// Pairs with few possible separating detectors: (u, v, candidates).
    fragile: Vec<(usize, usize, Vec<usize>)>,
    closed: Vec<Vec<usize>>,
}

/// Decision for a vertex during search.
#[derive(Clone, Copy, PartialEq)]
enum State {
    Undecided,
    In,
    Out,
}

impl<'a> Search<'a> {
    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.node_budget {
            self.proved = false;
            return true;
        }
        if let Some(d) = self.deadline {
            // Instant::now is not free; check every 1024 nodes.
            if self.nodes % 1024 == 0 && Instant::now() >= d {
                self.proved = false;
                return true;
            }
        }
        false
    }

    fn recurse(&mut self, state: &mut Vec<State>, mut in_count: usize) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }

        // Domination propagation to a fixed point.
        let mut forced: Vec<usize> = Vec::new();
        loop {
            let mut changed = false;
            for v in 0..self.g.n() {
                let mut got = 0usize;
                let mut avail = 0usize;
                for &w in &self.closed[v] {
                    match state[w] {
                        State::In => {
                            got += 1;
                            avail += 1;
                        }
                        State::Undecided => avail += 1,
                        State::Out => {}
                    }
                }
                if avail < self.req {
                    // Cannot ever dominate v on this branch.
                    for &f in &forced {
                        state[f] = State::Undecided;
                    }
                    return;
                }
                if got < self.req && avail == self.req {
                    for &w in &self.closed[v] {
                        if state[w] == State::Undecided {
                            state[w] = State::In;
                            forced.push(w);
                            in_count += 1;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let undo = |state: &mut Vec<State>, forced: &[usize]| {
            for &f in forced {
                state[f] = State::Undecided;
            }
        };

        if in_count >= self.bound {
            undo(state, &forced);
            return;
        }

        // Pair-separation prune (ERR:LD): some pair can never be distinguished.
        for (u, v, cands) in &self.fragile {
            let _ = (u, v);
            if cands.iter().all(|&t| state[t] == State::Out) {
                undo(state, &forced);
                return;
            }
        }

        // Lower bound: disjoint closed neighborhoods with unmet demand.
        let lb = self.lower_bound(state);
        if in_count + lb >= self.bound {
            undo(state, &forced);
            return;
        }

        // Branch vertex: an undecided vertex inside the closed neighborhood
        // with the tightest slack; ties broken by lowest index.
        let mut branch: Option<usize> = None;
        let mut best_slack = usize::MAX;
        for v in 0..self.g.n() {
            let mut got = 0usize;
            let mut avail = 0usize;
            let mut first_und = None;
            for &w in &self.closed[v] {
                match state[w] {
                    State::In => {
                        got += 1;
                        avail += 1;
                    }
                    State::Undecided => {
                        avail += 1;
                        if first_und.is_none() {
                            first_und = Some(w);
                        }
                    }
                    State::Out => {}
                }
            }
            if got < self.req {
                let slack = avail - self.req;
                if slack < best_slack {
                    if let Some(w) = first_und {
                        best_slack = slack;
                        branch = Some(w);
                    }
                }
            }
        }
        if branch.is_none() {
            // Domination is settled; branch on the lowest undecided vertex
            // (distinguishing may still need more detectors).
            branch = state.iter().position(|&s| s == State::Undecided);
        }

        match branch {
            None => {
                // Full assignment: candidate solution.
                let mut s = DetectorSet::empty(self.g.n());
                for (v, &st) in state.iter().enumerate() {
                    if st == State::In {
                        s.insert(v);
                    }
                }
                if verify(self.g, &s, self.variant).ok {
                    debug_assert!(in_count < self.bound);
                    self.bound = in_count;
                    self.best = Some(s);
                }
            }
            Some(b) => {
                state[b] = State::In;
                self.recurse(state, in_count + 1);
                state[b] = State::Out;
                self.recurse(state, in_count);
                state[b] = State::Undecided;
            }
        }
        undo(state, &forced);
    }

    fn lower_bound(&self, state: &[State]) -> usize {
        let n = self.g.n();
        let mut demands: Vec<(usize, usize)> = Vec::new(); // (residual, v)
        for v in 0..n {
            let got = self.closed[v]
                .iter()
                .filter(|&&w| state[w] == State::In)
                .count();
            if got < self.req {
                demands.push((self.req - got, v));
            }
        }
        demands.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut used = BitSet::new(n);
        let mut lb = 0usize;
        'next: for (residual, v) in demands {
            for &w in &self.closed[v] {
                if used.contains(w) {
                    continue 'next;
                }
            }
            for &w in &self.closed[v] {
                used.insert(w);
            }
            lb += residual;
        }
        lb
    }
}

/// Exact minimum detector set for the variant, by branch and bound.
pub fn exact_min(
    g: &Graph,
    variant: Variant,
    config: &SearchConfig,
) -> Result<SolveResult, SolveError> {
    if !verify(g, &DetectorSet::full(g.n()), variant).ok {
        return Err(SolveError::NoValidSet(variant));
    }

    // Incumbent from the greedy heuristic (always valid because the full set is).
    let greedy = greedy_upper(g, variant);
    let cap_bound = config.max_size.map(|c| c + 1).unwrap_or(usize::MAX);
    let (bound, best) = if greedy.len() < cap_bound {
        (greedy.len(), Some(greedy))
    } else {
        (cap_bound, None)
    };

    let closed = (0..g.n()).map(|v| g.closed_neighborhood(v)).collect();
    let fragile = if variant == Variant::ErrLd {
        fragile_pairs(g)
    } else {
        Vec::new()
    };
    let mut search = Search {
        g,
        variant,
        req: variant.domination_requirement(),
        bound,
        best,
        nodes: 0,
        node_budget: config.node_budget,
        deadline: config.time_budget.map(|t| Instant::now() + t),
        proved: true,
        fragile,
        closed,
    };
    let mut state = vec![State::Undecided; g.n()];
    search.recurse(&mut state, 0);

    Ok(SolveResult {
        best: search.best,
        nodes: search.nodes,
        proved: search.proved,
    })
}

/// Pairs at distance <= 2 whose set of possible separating detectors
/// `(N(u) △ N(v)) - {u, v}` is small.  Any ERR:LD set must keep at least one
/// of those candidates.
fn fragile_pairs(g: &Graph) -> Vec<(usize, usize, Vec<usize>)> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        let mut cands: Vec<usize> = g.neighbors(u).to_vec();
        for &w in g.neighbors(u) {
            cands.extend_from_slice(g.neighbors(w));
        }
        cands.sort_unstable();
        cands.dedup();
        for v in cands {
            if v <= u {
                continue;
            }
            let mut t: Vec<usize> = g
                .neighbors(u)
                .iter()
                .filter(|&&w| !g.has_edge(w, v))
                .chain(g.neighbors(v).iter().filter(|&&w| !g.has_edge(w, u)))
                .copied()
                .filter(|&w| w != u && w != v)
                .collect();
            t.sort_unstable();
            t.dedup();
            if t.len() <= 4 {
                out.push((u, v, t));
            }
        }
    }
    out
}

/// Greedy upper bound: repeatedly add the vertex that fixes the most
/// outstanding violations (ties to the lowest index) until the set verifies.
/// Terminates because the full vertex set verifies whenever any set does.
pub fn greedy_upper(g: &Graph, variant: Variant) -> DetectorSet {
    let opts = VerifyOptions {
        pair_scan: PairScan::Local,
        max_violations: usize::MAX,
    };
    let count = |s: &DetectorSet| -> usize { verify_with(g, s, variant, &opts).violations.len() };
    let mut s = DetectorSet::empty(g.n());
    let mut current = count(&s);
    while current > 0 {
        let mut best_v = None;
        let mut best_after = usize::MAX;
        for v in 0..g.n() {
            if s.contains(v) {
                continue;
            }
            let mut t = s.clone();
            t.insert(v);
            let after = count(&t);
            if after < best_after {
                best_after = after;
                best_v = Some(v);
            }
        }
        let v = best_v.expect("a non-detector always exists while violations remain");
        s.insert(v);
        current = best_after;
    }
    debug_assert!(verify(g, &s, variant).ok);
    s
}

/// Brute-force minimum by subset enumeration; oracle for small graphs.
pub fn brute_force_min(g: &Graph, variant: Variant) -> Option<DetectorSet> {
    assert!(g.n() <= 24, "brute force is for small graphs");
    let n = g.n();
    let mut best: Option<DetectorSet> = None;
    for mask in 0u32..1 << n {
        if let Some(b) = &best {
            if mask.count_ones() as usize >= b.len() {
                continue;
            }
        }
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let s = DetectorSet::from_indices(n, &idx).unwrap();
        if verify(g, &s, variant).ok {
            best = Some(s);
        }
    }
    best
}

/// Greedy maximal set of vertices pairwise at distance >= 5, scanning in
/// ascending index order.
pub fn greedy_distance5_packing(g: &Graph) -> Vec<usize> {
    let mut blocked = vec![false; g.n()];
    let mut packing = Vec::new();
    for v in 0..g.n() {
        if blocked[v] {
            continue;
        }
        packing.push(v);
        for (w, d) in g.bfs_distances(v).iter().enumerate() {
            if let Some(d) = d {
                if *d <= 4 {
                    blocked[w] = true;
                }
            }
        }
    }
    packing
}

/// For a twin-free cubic graph and a distance-5 packing `p`, the complement
/// `V - p` is an ERR:LD set.  Validates the preconditions and the verdict.
pub fn packing_complement(g: &Graph, p: &[usize]) -> Result<(DetectorSet, Verdict), SolveError> {
    if (0..g.n()).any(|v| g.degree(v) != 3) {
        return Err(SolveError::InvalidPacking("graph is not cubic".into()));
    }
    if !g.is_twin_free() {
        return Err(SolveError::InvalidPacking("graph has twins".into()));
    }
    for (i, &u) in p.iter().enumerate() {
        let dist = g.bfs_distances(u);
        for &v in &p[i + 1..] {
            match dist[v] {
                Some(d) if d >= 5 => {}
                d => {
                    return Err(SolveError::InvalidPacking(format!(
                        "vertices {u} and {v} are at distance {d:?} < 5"
                    )))
                }
            }
        }
    }
    let mut s = DetectorSet::full(g.n());
    for &v in p {
        s.remove(v);
    }
    let verdict = verify(g, &s, Variant::ErrLd);
    Ok((s, verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, lcf, petersen};

    #[test]
    fn petersen_ld() {
        let r = exact_min(&petersen(), Variant::Ld, &SearchConfig::default()).unwrap();
        assert!(r.proved);
        assert_eq!(r.optimum(), Some(4));
    }

    #[test]
    fn petersen_err() {
        let r = exact_min(&petersen(), Variant::ErrLd, &SearchConfig::default()).unwrap();
        assert!(r.proved);
        assert_eq!(r.optimum(), Some(9));
        assert!(verify(&petersen(), r.best.as_ref().unwrap(), Variant::ErrLd).ok);
    }

    #[test]
    fn cycles_need_everything() {
        // 2-regular twin-free graphs admit only the full vertex set.
        for n in [5, 6, 7, 8] {
            let g = cycle(n).unwrap();
            let r = exact_min(&g, Variant::ErrLd, &SearchConfig::default()).unwrap();
            assert_eq!(r.optimum(), Some(n), "C{n}");
        }
    }

    #[test]
    fn no_errld_on_c4() {
        let g = cycle(4).unwrap();
        assert_eq!(
            exact_min(&g, Variant::ErrLd, &SearchConfig::default()).unwrap_err(),
            SolveError::NoValidSet(Variant::ErrLd)
        );
    }

    #[test]
    fn size_cap_is_a_decision_procedure() {
        let g = petersen();
        let cfg = SearchConfig {
            max_size: Some(8),
            ..Default::default()
        };
        let r = exact_min(&g, Variant::ErrLd, &cfg).unwrap();
        assert!(r.proved);
        assert!(r.best.is_none(), "no ERR:LD set of size <= 8 exists");
    }

    #[test]
    fn greedy_is_valid() {
        for variant in Variant::ALL {
            let s = greedy_upper(&petersen(), variant);
            assert!(verify(&petersen(), &s, variant).ok, "{variant:?}");
        }
    }

    #[test]
    fn matches_brute_force_on_samples() {
        let graphs = [petersen(), cycle(7).unwrap(), lcf(8, &[4]).unwrap()];
        for g in &graphs {
            for variant in Variant::ALL {
                let bf = brute_force_min(g, variant).map(|s| s.len());
                let bb = exact_min(g, variant, &SearchConfig::default())
                    .ok()
                    .and_then(|r| r.optimum());
                assert_eq!(bf, bb);
            }
        }
    }

    #[test]
    fn packing_on_cycle_like_cubic() {
        // Moebius ladder on 48 vertices: cubic, twin-free, diameter > 5.
        let g = lcf(48, &[24]).unwrap();
        let p = greedy_distance5_packing(&g);
        assert!(!p.is_empty());
        let (s, verdict) = packing_complement(&g, &p).unwrap();
        assert!(verdict.ok);
        assert_eq!(s.len(), 48 - p.len());
    }

    #[test]
    fn c12_packing_by_scan_order() {
        let g = cycle(12).unwrap();
        assert_eq!(greedy_distance5_packing(&g), vec![0, 5]);
    }
}

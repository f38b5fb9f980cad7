//! Intruder localization from a possibly-faulty alert vector.
//!
//! With a valid error-correcting locating set, the expected alert vectors of
//! the n+1 scenarios (intruder at each vertex, or absent) are pairwise at
//! Hamming distance >= 3, so any observation with at most one transmission
//! fault determines the scenario.  Two decoders are provided:
//!
//! * [`decode_consistency`]: the brute-force nearest-codeword rule (accept a
//!   hypothesis iff it explains the observation up to one fault).  Simple,
//!   obviously correct, O(n * |S|).  Used as the oracle.
//! * [`decode_elimination`]: a pairwise elimination procedure that inspects
//!   only a constant number of separating detectors per candidate pair,
//!   following the constructive argument that a distance-3 alert code admits
//!   single-fault correction.

use crate::graph::Graph;
use crate::verify::{
    expected_transmissions, DetectorSet, TransmissionVector, Violation,
};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LocalizeError {
    #[error("vertex {0} out of range for {1} vertices")]
    OutOfRange(usize, usize),
    #[error("fault location {0} is not a detector")]
    FaultNotDetector(usize),
    #[error("invalid symbol {0} (must be 0, 1, or 2)")]
    BadSymbol(u8),
    #[error("fault symbol equals the correct transmission; no fault occurs")]
    NullFault,
    #[error("observation does not match the detector set")]
    BadObservation,
}

/// A ground-truth situation: an optional intruder plus at most one faulty
/// detector reporting a wrong symbol.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Scenario {
    pub intruder: Option<usize>,
    /// `(detector, transmitted_symbol)`; the symbol must differ from the
    /// fault-free transmission.
    pub fault: Option<(usize, u8)>,
}

/// Alert vector produced by a scenario.
pub fn simulate(
    g: &Graph,
    s: &DetectorSet,
    sc: &Scenario,
) -> Result<TransmissionVector, LocalizeError> {
    if let Some(p) = sc.intruder {
        if p >= g.n() {
            return Err(LocalizeError::OutOfRange(p, g.n()));
        }
    }
    let mut tv = expected_transmissions(g, s, sc.intruder);
    if let Some((d, sym)) = sc.fault {
        if sym > 2 {
            return Err(LocalizeError::BadSymbol(sym));
        }
        let i = tv
            .detectors
            .binary_search(&d)
            .map_err(|_| LocalizeError::FaultNotDetector(d))?;
        if tv.symbols[i] == sym {
            return Err(LocalizeError::NullFault);
        }
        tv.symbols[i] = sym;
    }
    Ok(tv)
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Decode {
    NoIntruder,
    Located(usize),
    /// More than one hypothesis survives; `None` means "no intruder".
    Ambiguous(Vec<Option<usize>>),
    /// No hypothesis explains the observation with at most one fault.
    Inconsistent,
}

impl fmt::Display for Decode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decode::NoIntruder => write!(f, "NO_INTRUDER"),
            Decode::Located(v) => write!(f, "LOCATED {v}"),
            Decode::Ambiguous(c) => {
                write!(f, "AMBIGUOUS")?;
                for h in c {
                    match h {
                        Some(v) => write!(f, " {v}")?,
                        None => write!(f, " -")?,
                    }
                }
                Ok(())
            }
            Decode::Inconsistent => write!(f, "INCONSISTENT"),
        }
    }
}

fn hypothesis_decode(mut consistent: Vec<Option<usize>>) -> Decode {
    match consistent.len() {
        0 => Decode::Inconsistent,
        1 => match consistent.pop().unwrap() {
            None => Decode::NoIntruder,
            Some(v) => Decode::Located(v),
        },
        _ => Decode::Ambiguous(consistent),
    }
}

/// Nearest-codeword decoding: keep every hypothesis within Hamming distance 1
/// of the observation.
pub fn decode_consistency(
    g: &Graph,
    s: &DetectorSet,
    obs: &TransmissionVector,
) -> Result<Decode, LocalizeError> {
    check_observation(s, obs)?;
    let mut consistent = Vec::new();
    let mut hyps: Vec<Option<usize>> = vec![None];
    hyps.extend((0..g.n()).map(Some));
    for hyp in hyps {
        let exp = expected_transmissions(g, s, hyp);
        if exp.hamming(obs) <= 1 {
            consistent.push(hyp);
        }
    }
    Ok(hypothesis_decode(consistent))
}

fn check_observation(s: &DetectorSet, obs: &TransmissionVector) -> Result<(), LocalizeError> {
    let dets: Vec<usize> = s.iter().collect();
    if obs.detectors != dets || obs.symbols.len() != dets.len() {
        return Err(LocalizeError::BadObservation);
    }
    if let Some(&sym) = obs.symbols.iter().find(|&&x| x > 2) {
        return Err(LocalizeError::BadSymbol(sym));
    }
    Ok(())
}

/// Elimination decoding.  The candidate list is narrowed by cheap local
/// tests, then surviving pairs are decided by inspecting up to three
/// detectors separating the two candidates.  On a valid ERR:LD set with a
/// legal scenario this locates the intruder exactly; on arbitrary input it
/// may return `Ambiguous` or `Inconsistent`.
pub fn decode_elimination(
    g: &Graph,
    s: &DetectorSet,
    obs: &TransmissionVector,
) -> Result<Decode, LocalizeError> {
    check_observation(s, obs)?;
    let sym = |w: usize| obs.symbol_of(w).unwrap();
    let in_alert = |w: usize| sym(w) == 1;
    let twos: Vec<usize> = obs
        .detectors
        .iter()
        .copied()
        .filter(|&w| sym(w) == 2)
        .collect();
    let alerts = obs.symbols.iter().filter(|&&x| x == 1).count();

    // Detectors in N(v) ∩ S, ascending.
    let det_nbrs = |v: usize| -> Vec<usize> {
        g.neighbors(v).iter().copied().filter(|&w| s.contains(w)).collect()
    };
    // Separating detectors of a candidate pair, with the candidates removed.
    let witnesses = |p: usize, q: usize| -> Vec<usize> {
        let a = det_nbrs(p);
        let b = det_nbrs(q);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let w = match (a.get(i), b.get(j)) {
                (Some(&x), Some(&y)) if x == y => {
                    i += 1;
                    j += 1;
                    continue;
                }
                (Some(&x), Some(&y)) if x < y => {
                    i += 1;
                    x
                }
                (Some(_), Some(&y)) => {
                    j += 1;
                    y
                }
                (Some(&x), None) => {
                    i += 1;
                    x
                }
                (None, Some(&y)) => {
                    j += 1;
                    y
                }
                (None, None) => unreachable!(),
            };
            if w != p && w != q {
                out.push(w);
            }
        }
        out
    };

    match twos.len() {
        len if len > 2 => Ok(Decode::Inconsistent),
        2 => {
            // Two detectors claim the intruder: one of them is faulty, the
            // intruder is at the other.  A single separating detector
            // decides; its transmission is trustworthy (the fault is spent).
            let (u, v) = (twos[0], twos[1]);
            let w = witnesses(u, v).into_iter().next();
            match w {
                None => Ok(Decode::Ambiguous(vec![Some(u), Some(v)])),
                Some(w) => {
                    // w ∈ N(v) and alerting, or w ∈ N(u) and silent => v.
                    let at_u = g.has_edge(w, v) != in_alert(w);
                    Ok(Decode::Located(if at_u { u } else { v }))
                }
            }
        }
        1 => {
            let v = twos[0];
            if alerts == 0 {
                // A lone 2 with no support is the single fault.
                return Ok(Decode::NoIntruder);
            }
            if alerts == 1 {
                let a = obs.detectors[obs.symbols.iter().position(|&x| x == 1).unwrap()];
                if g.has_edge(a, v) {
                    // Fault-free explanation.
                    return Ok(Decode::Located(v));
                }
            }
            // Any detector other than v would have to transmit 2 to host the
            // intruder, so the candidates are v and the non-detectors.
            let mut cands: Vec<usize> = vec![v];
            cands.extend((0..g.n()).filter(|&p| !s.contains(p)));
            cands.sort_unstable();
            let alive = run_tournament(&cands, |p, q| {
                eliminate_one_two(g, s, obs, v, p, q, &witnesses)
            });
            Ok(decode_from_alive(alive))
        }
        _ => {
            if alerts <= 1 {
                // Nothing, or a single spurious alert.
                return Ok(Decode::NoIntruder);
            }
            // With no 2s, a candidate can afford at most one silent detector
            // in its closed neighborhood (a detector hosting the intruder
            // would be that one silent/alerting fault itself).
            let cands: Vec<usize> = (0..g.n())
                .filter(|&p| {
                    let mut silent = det_nbrs(p).iter().filter(|&&w| !in_alert(w)).count();
                    if s.contains(p) && !in_alert(p) {
                        silent += 1;
                    }
                    silent <= 1
                })
                .collect();
            let alive = run_tournament(&cands, |p, q| {
                eliminate_zero_two(g, s, obs, p, q, &witnesses)
            });
            Ok(decode_from_alive(alive))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Elim {
    First,
    Second,
    Both,
    Neither,
}

fn run_tournament(cands: &[usize], mut rule: impl FnMut(usize, usize) -> Elim) -> Vec<usize> {
    let mut alive = vec![true; cands.len()];
    for i in 0..cands.len() {
        if !alive[i] {
            continue;
        }
        for j in i + 1..cands.len() {
            if !alive[j] {
                continue;
            }
            match rule(cands[i], cands[j]) {
                Elim::First => {
                    alive[i] = false;
                    break;
                }
                Elim::Second => alive[j] = false,
                Elim::Both => {
                    alive[i] = false;
                    alive[j] = false;
                    break;
                }
                Elim::Neither => {}
            }
        }
    }
    cands
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(&c, _)| c)
        .collect()
}

fn decode_from_alive(alive: Vec<usize>) -> Decode {
    match alive.len() {
        0 => Decode::Inconsistent,
        1 => Decode::Located(alive[0]),
        _ => Decode::Ambiguous(alive.into_iter().map(Some).collect()),
    }
}

/// Pair rule when no detector transmits 2.  Both candidates here are outside
/// S only in the pre-filtered call, but detector candidates are handled too
/// for robustness.
fn eliminate_zero_two(
    g: &Graph,
    s: &DetectorSet,
    obs: &TransmissionVector,
    p: usize,
    q: usize,
    witnesses: &dyn Fn(usize, usize) -> Vec<usize>,
) -> Elim {
    let sym = |w: usize| obs.symbol_of(w).unwrap();
    match (s.contains(p), s.contains(q)) {
        (true, true) => {
            // Either candidate, if hosting the intruder, is already faulty
            // (it failed to transmit 2); one separating detector decides.
            match witnesses(p, q).into_iter().next() {
                None => Elim::Neither,
                Some(w) => {
                    let near_p = g.has_edge(w, p);
                    if (sym(w) == 0) == near_p {
                        Elim::First
                    } else {
                        Elim::Second
                    }
                }
            }
        }
        (true, false) => eliminate_zero_two_mixed(g, obs, p, q, witnesses),
        (false, true) => eliminate_zero_two_mixed(g, obs, q, p, witnesses).flip(),
        (false, false) => {
            let w = witnesses(p, q);
            if w.len() < 3 {
                return Elim::Neither;
            }
            let (x, y, z) = (w[0], w[1], w[2]);
            // Orient so that the majority side of the three separating
            // detectors belongs to p.
            let cnt_p = [x, y, z].iter().filter(|&&w| g.has_edge(w, p)).count();
            if cnt_p < 2 {
                return eliminate_zero_two_both_out(g, obs, q, x, y, z).flip();
            }
            eliminate_zero_two_both_out(g, obs, p, x, y, z)
        }
    }
}

impl Elim {
    fn flip(self) -> Elim {
        match self {
            Elim::First => Elim::Second,
            Elim::Second => Elim::First,
            other => other,
        }
    }
}

/// Zero-2 pair rule, p in S, q outside S.
fn eliminate_zero_two_mixed(
    g: &Graph,
    obs: &TransmissionVector,
    p: usize,
    q: usize,
    witnesses: &dyn Fn(usize, usize) -> Vec<usize>,
) -> Elim {
    let sym = |w: usize| obs.symbol_of(w).unwrap();
    // Puncture only by p (q is not a detector).
    let w: Vec<usize> = witnesses(p, q);
    if w.len() < 2 {
        return Elim::Neither;
    }
    let (x, y) = (w[0], w[1]);
    // If the intruder sat at p, p itself would be one fault; any silent
    // detector of N(p) or alerting detector of N(q) among the separating
    // pair is a second.
    if [x, y]
        .iter()
        .any(|&w| g.has_edge(w, p) && sym(w) == 0 || g.has_edge(w, q) && sym(w) == 1)
    {
        return Elim::First;
    }
    // Otherwise both separators are consistent with p; with the fault budget
    // of the q-hypothesis spent on at least one of them, q is out.
    Elim::Second
}

/// Zero-2 pair rule, both candidates outside S, majority of the separating
/// triple adjacent to p.
fn eliminate_zero_two_both_out(
    g: &Graph,
    obs: &TransmissionVector,
    p: usize,
    x: usize,
    y: usize,
    z: usize,
) -> Elim {
    let sym = |w: usize| obs.symbol_of(w).unwrap();
    let near_p: Vec<usize> = [x, y, z].into_iter().filter(|&w| g.has_edge(w, p)).collect();
    let near_q: Vec<usize> = [x, y, z].into_iter().filter(|&w| !g.has_edge(w, p)).collect();
    // Two alerting p-side separators exceed q's fault budget.
    if near_p.iter().filter(|&&w| sym(w) == 1).count() >= 2 {
        return Elim::Second;
    }
    if near_q.is_empty() {
        // All three separators adjacent to p, at most one alerting: at least
        // two silent p-side detectors exceed p's budget.
        return Elim::First;
    }
    // Exactly two p-side (at most one alerting) and one q-side separator.
    let silent_p = near_p.iter().filter(|&&w| sym(w) == 0).count();
    if silent_p >= 2 {
        return Elim::First;
    }
    // One p-side silent, one alerting: p needs the fault on the silent one,
    // so the q-side separator must be silent for p to survive.
    if sym(near_q[0]) == 1 {
        Elim::First
    } else {
        Elim::Second
    }
}

/// Pair rule when exactly one detector `v` transmits 2 (candidates are `v`
/// itself and non-detectors).
fn eliminate_one_two(
    g: &Graph,
    s: &DetectorSet,
    obs: &TransmissionVector,
    v: usize,
    p: usize,
    q: usize,
    witnesses: &dyn Fn(usize, usize) -> Vec<usize>,
) -> Elim {
    let sym = |w: usize| obs.symbol_of(w).unwrap();
    match (s.contains(p), s.contains(q)) {
        // A detector candidate other than v would need two faults (itself
        // and v).
        (true, true) => match (p == v, q == v) {
            (true, _) => Elim::Second,
            (_, true) => Elim::First,
            _ => Elim::Both,
        },
        (true, false) if p != v => Elim::First,
        (false, true) if q != v => Elim::Second,
        (true, false) => eliminate_one_two_sentinel(g, obs, v, q, witnesses),
        (false, true) => eliminate_one_two_sentinel(g, obs, v, p, witnesses).flip(),
        (false, false) => {
            // Under either hypothesis, v's 2 is the single allowed fault, so
            // any separating detector contradicting a hypothesis kills it.
            let w = witnesses(p, q);
            if w.is_empty() {
                return Elim::Neither;
            }
            let bad_p = w.iter().any(|&w| {
                let near_p = g.has_edge(w, p);
                near_p && sym(w) == 0 || !near_p && sym(w) >= 1
            });
            let bad_q = w.iter().any(|&w| {
                let near_p = g.has_edge(w, p);
                near_p && sym(w) >= 1 || !near_p && sym(w) == 0
            });
            match (bad_p, bad_q) {
                (true, true) => Elim::Both,
                (true, false) => Elim::First,
                (false, true) => Elim::Second,
                (false, false) => Elim::Neither,
            }
        }
    }
}

/// One-2 pair rule between `v` (the detector transmitting 2) and a candidate
/// `q` outside S.  Under the q-hypothesis the 2 at v is the single fault, so
/// any contradicting separator kills q; under the v-hypothesis one fault may
/// sit anywhere, so two contradictions are needed.
fn eliminate_one_two_sentinel(
    g: &Graph,
    obs: &TransmissionVector,
    v: usize,
    q: usize,
    witnesses: &dyn Fn(usize, usize) -> Vec<usize>,
) -> Elim {
    let sym = |w: usize| obs.symbol_of(w).unwrap();
    let w = witnesses(v, q);
    if w.len() < 2 {
        return Elim::Neither;
    }
    let (x, y) = (w[0], w[1]);
    // An alerting v-side separator contradicts q.
    if [x, y].iter().any(|&w| g.has_edge(w, v) && sym(w) == 1) {
        return Elim::Second;
    }
    let near_v: Vec<usize> = [x, y].into_iter().filter(|&w| g.has_edge(w, v)).collect();
    match near_v.len() {
        2 => Elim::First, // both v-side silent: two faults under v
        1 => {
            // One silent v-side (a fault under v) plus the q-side separator:
            // alerting contradicts v, silent contradicts q.
            let other = if near_v[0] == x { y } else { x };
            if sym(other) == 1 {
                Elim::First
            } else {
                Elim::Second
            }
        }
        _ => {
            // Both q-side: alerting separators contradict v, silent ones
            // contradict q.
            let alerting = [x, y].iter().filter(|&&w| sym(w) == 1).count();
            match alerting {
                2 => Elim::First,
                0 => Elim::Second,
                _ => Elim::Second,
            }
        }
    }
}

/// Outcome of replaying every legal scenario through both decoders.
#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub scenarios: usize,
    pub correct: usize,
    /// Scenarios where the two decoders differ.
    pub disagreements: usize,
    /// Human-readable descriptions of incorrect or disagreeing scenarios.
    pub failures: Vec<String>,
}

impl SweepReport {
    pub fn all_correct(&self) -> bool {
        self.correct == self.scenarios && self.disagreements == 0
    }
}

/// Replays all (intruder, fault) scenarios: (n + 1) * (2|S| + 1) in total.
pub fn exhaustive_sweep(g: &Graph, s: &DetectorSet) -> SweepReport {
    let mut report = SweepReport::default();
    let mut hyps: Vec<Option<usize>> = vec![None];
    hyps.extend((0..g.n()).map(Some));
    for intruder in hyps {
        let clean = expected_transmissions(g, s, intruder);
        let mut faults: Vec<Option<(usize, u8)>> = vec![None];
        for (i, &d) in clean.detectors.iter().enumerate() {
            for sym in 0..3u8 {
                if sym != clean.symbols[i] {
                    faults.push(Some((d, sym)));
                }
            }
        }
        for fault in faults {
            let sc = Scenario { intruder, fault };
            let obs = simulate(g, s, &sc).unwrap();
            let want = match intruder {
                None => Decode::NoIntruder,
                Some(p) => Decode::Located(p),
            };
            let a = decode_consistency(g, s, &obs).unwrap();
            let b = decode_elimination(g, s, &obs).unwrap();
            report.scenarios += 1;
            if a == want {
                report.correct += 1;
            } else {
                report
                    .failures
                    .push(format!("consistency: {sc:?} -> {a} (expected {want})"));
            }
            if a != b {
                report.disagreements += 1;
                report
                    .failures
                    .push(format!("disagreement: {sc:?} -> {a} vs {b}"));
            }
        }
    }
    report
}

/// For a violated pair condition, produce two scenarios with different
/// intruder locations (or one without an intruder) whose observable alert
/// vectors coincide.  Returns `None` when the violation does not yield a
/// confusion within the single-fault model (e.g. a pure domination deficit
/// of 2 or more).
pub fn confusion_witness(
    g: &Graph,
    s: &DetectorSet,
    violation: &Violation,
) -> Option<(Scenario, Scenario, TransmissionVector)> {
    let (u, v) = violation.witnesses;
    let mut hyps: Vec<Option<usize>> = vec![None, Some(u)];
    if let Some(v) = v {
        hyps.push(Some(v));
    }
    // All observations reachable from a hypothesis with at most one fault.
    let reachable = |hyp: Option<usize>| -> Vec<(Scenario, TransmissionVector)> {
        let clean = expected_transmissions(g, s, hyp);
        let mut out = vec![(Scenario { intruder: hyp, fault: None }, clean.clone())];
        for (i, &d) in clean.detectors.iter().enumerate() {
            for sym in 0..3u8 {
                if sym != clean.symbols[i] {
                    let mut tv = clean.clone();
                    tv.symbols[i] = sym;
                    out.push((Scenario { intruder: hyp, fault: Some((d, sym)) }, tv));
                }
            }
        }
        out
    };
    for i in 0..hyps.len() {
        for j in i + 1..hyps.len() {
            for (sa, ta) in reachable(hyps[i]) {
                for (sb, tb) in reachable(hyps[j]) {
                    if ta == tb {
                        return Some((sa, sb, ta));
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, petersen};
    use crate::verify::{verify, Variant};

    #[test]
    fn simulate_validates() {
        let g = cycle(5).unwrap();
        let s = DetectorSet::full(5);
        let sc = Scenario { intruder: Some(0), fault: None };
        let tv = simulate(&g, &s, &sc).unwrap();
        assert_eq!(tv.symbols, vec![2, 1, 0, 0, 1]);
        // fault must differ from the correct symbol
        assert!(simulate(&g, &s, &Scenario { intruder: Some(0), fault: Some((0, 2)) }).is_err());
        assert!(simulate(&g, &s, &Scenario { intruder: None, fault: Some((0, 3)) }).is_err());
        assert!(simulate(&g, &s, &Scenario { intruder: Some(7), fault: None }).is_err());
    }

    #[test]
    fn sweep_c5_full_set() {
        let g = cycle(5).unwrap();
        let s = DetectorSet::full(5);
        assert!(verify(&g, &s, Variant::ErrLd).ok);
        let report = exhaustive_sweep(&g, &s);
        assert_eq!(report.scenarios, 6 * 11); // (5+1) * (2*5+1)
        assert!(report.all_correct(), "{:?}", report.failures);
    }

    #[test]
    fn sweep_petersen_nine_detectors() {
        let g = petersen();
        let s = DetectorSet::from_indices(10, &(1..10).collect::<Vec<_>>()).unwrap();
        assert!(verify(&g, &s, Variant::ErrLd).ok);
        let report = exhaustive_sweep(&g, &s);
        assert_eq!(report.scenarios, 11 * 19);
        assert!(report.all_correct(), "{:?}", report.failures);
    }

    #[test]
    fn decoder_flags_garbage() {
        let g = cycle(5).unwrap();
        let s = DetectorSet::full(5);
        // three 2s can never happen with one fault
        let obs = TransmissionVector {
            detectors: (0..5).collect(),
            symbols: vec![2, 2, 2, 0, 0],
        };
        assert_eq!(decode_elimination(&g, &s, &obs).unwrap(), Decode::Inconsistent);
        assert_eq!(decode_consistency(&g, &s, &obs).unwrap(), Decode::Inconsistent);
    }

    #[test]
    fn confusion_on_weak_set() {
        // On C5 with S = {0,1,2,3}, vertex 4 is only 2-dominated; a single
        // fault can hide or fake an intruder there.
        let g = cycle(5).unwrap();
        let s = DetectorSet::from_indices(5, &[0, 1, 2, 3]).unwrap();
        let verdict = verify(&g, &s, Variant::ErrLd);
        assert!(!verdict.ok);
        let vio = &verdict.violations[0];
        let (a, b, tv) = confusion_witness(&g, &s, vio).expect("confusable");
        assert_ne!(a.intruder, b.intruder);
        assert_eq!(simulate(&g, &s, &a).unwrap(), tv);
        assert_eq!(simulate(&g, &s, &b).unwrap(), tv);
    }
}

//! Reduction from 3-SAT to minimum error-correcting locating set, witnessing
//! NP-hardness of the optimization problem.
//!
//! For a formula with N variables and M clauses (each clause exactly three
//! literals) the constructed graph has 11N + 8M vertices and 15N + 12M
//! edges.  Per variable i, a gadget on 11 vertices {x, xb, y, z, a, b, p, q,
//! r, s, t} exposes the two literal vertices x ("true") and xb ("false");
//! per clause j, a gadget on 8 vertices {c, d, e1..e6} attaches c to its
//! three literal vertices.  All vertices except the 2N literal vertices are
//! *mandatory*: each sits in a closed neighborhood of size 3 (its own, or a
//! degree-2 neighbor's), which any valid set must fully contain.  With the
//! 9N + 8M mandatory vertices alone, exactly three kinds of deficiencies
//! remain, each fixable only by literal vertices:
//!
//! * t_i is 2-dominated and its only non-detector neighbors are x_i, xb_i,
//!   so at least one literal per variable joins the set;
//! * the pair (y_i, z_i) is separated only by {x_i, xb_i};
//! * the pair (c_j, d_j) is separated only by the three literals of clause
//!   j, so some literal of every clause joins the set.
//!
//! Hence the minimum valid set has size 10N + 8M exactly when the formula is
//! satisfiable (one literal per variable suffices iff a satisfying
//! assignment picks a true literal in every clause), and at least 10N + 8M +
//! 1 otherwise.

use crate::graph::{Graph, GraphError};
use crate::solve::{exact_min, SearchConfig, SolveError};
use crate::verify::{verify, DetectorSet, Variant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CnfError {
    #[error("parse error on line {0}: {1}")]
    Parse(usize, String),
    #[error("clause has {0} literals; exactly 3 required")]
    NotThreeSat(usize),
    #[error("literal references variable {0} but only {1} are declared")]
    VarOutOfRange(usize, usize),
    #[error("clause {0} repeats a literal")]
    RepeatedLiteral(usize),
    #[error("formula has no clauses")]
    Empty,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub negated: bool,
}

#[derive(Clone, Debug)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl CnfFormula {
    /// DIMACS CNF: `p cnf <vars> <clauses>` header, `c` comment lines,
    /// clauses as signed 1-based integers terminated by 0.
    pub fn parse_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
        let mut num_vars = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('p') {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 4 || toks[1] != "cnf" {
                    return Err(CnfError::Parse(ln, "expected 'p cnf V C'".into()));
                }
                let v = toks[2]
                    .parse()
                    .map_err(|e| CnfError::Parse(ln, format!("bad var count: {e}")))?;
                num_vars = Some(v);
                continue;
            }
            let nv =
                num_vars.ok_or_else(|| CnfError::Parse(ln, "clause before header".into()))?;
            for tok in line.split_whitespace() {
                let x: i64 = tok
                    .parse()
                    .map_err(|e| CnfError::Parse(ln, format!("bad literal {tok:?}: {e}")))?;
                if x == 0 {
                    if current.len() != 3 {
                        return Err(CnfError::NotThreeSat(current.len()));
                    }
                    clauses.push([current[0], current[1], current[2]]);
                    current.clear();
                } else {
                    let var = (x.unsigned_abs() as usize) - 1;
                    if var >= nv {
                        return Err(CnfError::VarOutOfRange(var, nv));
                    }
                    current.push(Literal { var, negated: x < 0 });
                }
            }
        }
        if !current.is_empty() {
            return Err(CnfError::NotThreeSat(current.len()));
        }
        Ok(CnfFormula {
            num_vars: num_vars.unwrap_or(0),
            clauses,
        })
    }

    pub fn eval(&self, assignment: &[bool]) -> bool {
        self.clauses.iter().all(|cl| {
            cl.iter()
                .any(|l| assignment[l.var] != l.negated)
        })
    }

    /// Exhaustive satisfiability oracle (num_vars <= 24).
    pub fn brute_force_sat(&self) -> Option<Vec<bool>> {
        assert!(self.num_vars <= 24, "brute force capped at 24 variables");
        for mask in 0u64..1 << self.num_vars {
            let assignment: Vec<bool> = (0..self.num_vars).map(|i| mask >> i & 1 == 1).collect();
            if self.eval(&assignment) {
                return Some(assignment);
            }
        }
        None
    }
}

// Offsets inside a variable gadget.
const VAR_X: usize = 0; // positive literal
const VAR_XB: usize = 1; // negative literal
const VAR_NAMES: [&str; 11] = ["x", "xb", "y", "z", "a", "b", "p", "q", "r", "s", "t"];
const VAR_EDGES: [(usize, usize); 15] = [
    (2, 4), // y-a
    (2, 5), // y-b
    (2, 0), // y-x
    (3, 4), // z-a
    (3, 5), // z-b
    (3, 1), // z-xb
    (5, 6), // b-p
    (5, 0), // b-x
    (6, 7), // p-q
    (7, 8), // q-r
    (7, 1), // q-xb
    (8, 9), // r-s
    (9, 10), // s-t
    (10, 0), // t-x
    (10, 1), // t-xb
];

// Offsets inside a clause gadget.
const CLAUSE_C: usize = 0;
const CLAUSE_NAMES: [&str; 8] = ["c", "d", "e1", "e2", "e3", "e4", "e5", "e6"];
const CLAUSE_EDGES: [(usize, usize); 9] = [
    (0, 1), // c-d
    (0, 2), // c-e1
    (1, 2), // d-e1
    (2, 3), // e1-e2
    (3, 4), // e2-e3
    (4, 5), // e3-e4
    (5, 6), // e4-e5
    (6, 7), // e5-e6
    (7, 3), // e6-e2
];

#[derive(Clone, Debug)]
pub struct Reduction {
    pub graph: Graph,
    /// The 9N + 8M vertices forced into every valid set.
    pub mandatory: DetectorSet,
    pub num_vars: usize,
    pub num_clauses: usize,
}

impl Reduction {
    pub fn var_base(&self, i: usize) -> usize {
        11 * i
    }

    pub fn clause_base(&self, j: usize) -> usize {
        11 * self.num_vars + 8 * j
    }

    pub fn literal_vertex(&self, l: Literal) -> usize {
        self.var_base(l.var) + if l.negated { VAR_XB } else { VAR_X }
    }

    /// Size every valid set must reach when the formula is satisfiable.
    pub fn target(&self) -> usize {
        10 * self.num_vars + 8 * self.num_clauses
    }

    /// Detector set for an assignment: all mandatory vertices plus the
    /// chosen literal of every variable.
    pub fn assignment_to_set(&self, assignment: &[bool]) -> DetectorSet {
        assert_eq!(assignment.len(), self.num_vars);
        let mut s = self.mandatory.clone();
        for (i, &val) in assignment.iter().enumerate() {
            s.insert(self.var_base(i) + if val { VAR_X } else { VAR_XB });
        }
        s
    }
}

pub fn build_reduction(f: &CnfFormula) -> Result<Reduction, CnfError> {
    if f.clauses.is_empty() {
        return Err(CnfError::Empty);
    }
    let nn = f.num_vars;
    let mm = f.clauses.len();
    let n = 11 * nn + 8 * mm;
    let mut edges = Vec::with_capacity(15 * nn + 12 * mm);
    let mut labels = vec![String::new(); n];
    for i in 0..nn {
        let base = 11 * i;
        for &(u, v) in &VAR_EDGES {
            edges.push((base + u, base + v));
        }
        for (off, name) in VAR_NAMES.iter().enumerate() {
            labels[base + off] = format!("{name}{}", i + 1);
        }
    }
    for (j, clause) in f.clauses.iter().enumerate() {
        let base = 11 * nn + 8 * j;
        for &(u, v) in &CLAUSE_EDGES {
            edges.push((base + u, base + v));
        }
        for (off, name) in CLAUSE_NAMES.iter().enumerate() {
            labels[base + off] = format!("{name}_{}", j + 1);
        }
        if clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2] {
            return Err(CnfError::RepeatedLiteral(j + 1));
        }
        for &l in clause {
            if l.var >= nn {
                return Err(CnfError::VarOutOfRange(l.var, nn));
            }
            let lit = 11 * l.var + if l.negated { VAR_XB } else { VAR_X };
            edges.push((base + CLAUSE_C, lit));
        }
    }
    let graph = Graph::new(n, &edges)?.with_labels(labels)?;
    let mut mandatory = DetectorSet::empty(n);
    for v in 0..n {
        let off = if v < 11 * nn { v % 11 } else { (v - 11 * nn) % 8 };
        let is_literal = v < 11 * nn && (off == VAR_X || off == VAR_XB);
        if !is_literal {
            mandatory.insert(v);
        }
    }
    Ok(Reduction {
        graph,
        mandatory,
        num_vars: nn,
        num_clauses: mm,
    })
}

/// A satisfiable 5-variable, 4-clause example:
/// (x1 v x2 v x3)(x1 v x2 v -x3)(x2 v -x4 v x5)(x2 v -x4 v -x5).
pub fn sample_formula() -> CnfFormula {
    let lit = |x: i64| Literal {
        var: (x.unsigned_abs() as usize) - 1,
        negated: x < 0,
    };
    CnfFormula {
        num_vars: 5,
        clauses: vec![
            [lit(1), lit(2), lit(3)],
            [lit(1), lit(2), lit(-3)],
            [lit(2), lit(-4), lit(5)],
            [lit(2), lit(-4), lit(-5)],
        ],
    }
}

/// Brute-force-verified unsatisfiable instance: all eight sign patterns over
/// three variables (declared over four, so one gadget stays clause-free).
pub fn unsat_formula() -> CnfFormula {
    let mut clauses = Vec::new();
    for mask in 0..8u32 {
        let l = |i: usize| Literal {
            var: i,
            negated: mask >> i & 1 == 1,
        };
        clauses.push([l(0), l(1), l(2)]);
    }
    CnfFormula {
        num_vars: 4,
        clauses,
    }
}

#[derive(Clone, Debug)]
pub struct RoundtripReport {
    pub satisfiable: bool,
    pub target: usize,
    /// Minimum size found by the solver, if within the cap `target`.
    pub optimum_within_target: Option<usize>,
    /// True when the solver outcome matches satisfiability exactly.
    pub consistent: bool,
    pub nodes: u64,
}

/// Decides the formula both by exhaustive assignment search and by running
/// the exact solver on the reduction capped at the target size, and checks
/// the two agree.
pub fn roundtrip_check(f: &CnfFormula, cfg: &SearchConfig) -> Result<RoundtripReport, SolveError> {
    let red = build_reduction(f).expect("valid formula");
    let target = red.target();
    let assignment = f.brute_force_sat();
    let mut cfg = cfg.clone();
    cfg.max_size = Some(target);
    let res = exact_min(&red.graph, Variant::ErrLd, &cfg)?;
    let optimum_within_target = res.best.as_ref().map(|s| s.len());
    let mut consistent = res.proved;
    match (&assignment, optimum_within_target) {
        (Some(a), Some(sz)) => {
            consistent &= sz == target;
            // The assignment itself must yield a valid set of target size.
            let s = red.assignment_to_set(a);
            consistent &= s.len() == target;
            consistent &= verify(&red.graph, &s, Variant::ErrLd).ok;
        }
        (None, None) => {}
        _ => consistent = false,
    }
    Ok(RoundtripReport {
        satisfiable: assignment.is_some(),
        target,
        optimum_within_target,
        consistent,
        nodes: res.nodes,
    })
}

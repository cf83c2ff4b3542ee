//! Necessary conditions for a (graph, profile) pair to be realizable by
//! point classes in R^d, used to prune profiles before LP solving. The
//! conditions are necessary only: passing profiles may still be
//! geometrically unrealizable, so downstream maxima are upper bounds taken
//! over a superset.

use serde::{Deserialize, Serialize};

use crate::graphs::{graph_stats, induced_cycles, GraphError, Profile, SmallGraph};

/// Witness of a violated condition.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum Witness {
    /// Clique whose profile sum exceeds d - |clique|.
    Clique { vertices: Vec<usize>, sum: u32, limit: i64 },
    /// Odd cycle of length 2l+1 whose profile sum exceeds l*d - (2l+1).
    OddCycle { vertices: Vec<usize>, sum: u32, limit: i64 },
    /// Induced subgraph of independence number at most 2 whose profile sum
    /// exceeds 2d - |subgraph| + 1.
    Independence2 { vertices: Vec<usize>, sum: u32, limit: i64 },
    /// Vertex of degree strictly larger than d - lambda; any compatible
    /// family counts zero simplices.
    Degree { vertex: usize, degree: usize, limit: i64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionOutcome {
    pub passed: bool,
    pub witness: Option<Witness>,
}

/// Per-condition results; `admissible` is the conjunction of all four.
/// A degree failure means the count is zero outright, which is flagged
/// separately from the other (dimension-counting) conditions.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConditionReport {
    pub clique: ConditionOutcome,
    pub odd_cycle: ConditionOutcome,
    pub independence2: ConditionOutcome,
    pub degree: ConditionOutcome,
    pub count_zero: bool,
    pub admissible: bool,
}

impl ConditionReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn mask_vertices(mask: u16, k: usize) -> Vec<usize> {
    (0..k).filter(|&v| mask >> v & 1 == 1).collect()
}

fn mask_sum(mask: u16, lam: &[u32], k: usize) -> u32 {
    (0..k).filter(|&v| mask >> v & 1 == 1).map(|v| lam[v]).sum()
}

/// Structures of a graph that the profile conditions range over. Computing
/// them once makes profile sweeps cheap.
#[derive(Clone, Debug)]
pub struct GraphStructures {
    pub k: usize,
    /// Maximal cliques of size >= 2 (checking these covers all cliques).
    pub cliques: Vec<u16>,
    /// Induced odd cycles with their half-length l (length 2l+1).
    pub odd_cycles: Vec<(u16, usize)>,
    /// Induced subgraphs of independence number <= 2 on >= 3 vertices.
    pub alpha2_subsets: Vec<(u16, usize)>,
    pub degrees: Vec<usize>,
}

pub fn graph_structures(g: &SmallGraph) -> GraphStructures {
    let k = g.k();
    let stats = graph_stats(g);
    let cliques: Vec<u16> = stats
        .maximal_cliques
        .iter()
        .copied()
        .filter(|m| m.count_ones() >= 2)
        .collect();
    let odd_cycles: Vec<(u16, usize)> = induced_cycles(g)
        .into_iter()
        .filter(|&(_, len)| len % 2 == 1)
        .map(|(m, len)| (m, (len - 1) / 2))
        .collect();
    let mut alpha2_subsets = Vec::new();
    for mask in 1u32..(1 << k) {
        let size = mask.count_ones() as usize;
        if size < 3 {
            continue; // pairs never bind: lambda <= d-1 entries sum below 2d-1
        }
        let m = mask as u16;
        // independence number of the induced subgraph at most 2: no
        // independent triple inside
        let vs = mask_vertices(m, k);
        let mut alpha_le_2 = true;
        'triples: for (ai, &a) in vs.iter().enumerate() {
            for (bi, &b) in vs.iter().enumerate().skip(ai + 1) {
                for &c in vs.iter().skip(bi + 1) {
                    if !g.has_edge(a, b) && !g.has_edge(a, c) && !g.has_edge(b, c) {
                        alpha_le_2 = false;
                        break 'triples;
                    }
                }
            }
        }
        if alpha_le_2 {
            alpha2_subsets.push((m, size));
        }
    }
    GraphStructures {
        k,
        cliques,
        odd_cycles,
        alpha2_subsets,
        degrees: (0..k).map(|v| g.degree(v)).collect(),
    }
}

/// Fast admissibility used inside profile sweeps: true iff all four
/// conditions hold for (structures, lambda, d).
pub(crate) fn passes(st: &GraphStructures, lam: &[u32], d: u32) -> bool {
    let k = st.k;
    for &m in &st.cliques {
        let ell = m.count_ones() as i64;
        if i64::from(mask_sum(m, lam, k)) > i64::from(d) - ell {
            return false;
        }
    }
    for &(m, ell) in &st.odd_cycles {
        let limit = ell as i64 * i64::from(d) - (2 * ell as i64 + 1);
        if i64::from(mask_sum(m, lam, k)) > limit {
            return false;
        }
    }
    for &(m, size) in &st.alpha2_subsets {
        // the almost-orthogonality count only applies when every class in
        // the subgraph actually lies on a sphere (lambda < d): classes with
        // lambda = d carry no sphere and are already forced to be isolated
        // by the clique condition on their edges
        let vs = mask_vertices(m, k);
        if vs.iter().any(|&v| lam[v] >= d) {
            continue;
        }
        let limit = 2 * i64::from(d) - size as i64 + 1;
        if i64::from(mask_sum(m, lam, k)) > limit {
            return false;
        }
    }
    for v in 0..k {
        if st.degrees[v] as i64 > i64::from(d) - i64::from(lam[v]) {
            return false;
        }
    }
    true
}

/// Full report with witnesses for a single (graph, profile) pair.
pub fn necessary_conditions(g: &SmallGraph, lam: &Profile) -> Result<ConditionReport, GraphError> {
    let k = g.k();
    if lam.k() != k {
        return Err(GraphError::ProfileLength(lam.k(), k));
    }
    let d = lam.d;
    let st = graph_structures(g);
    let l = &lam.lambda;

    let mut clique = ConditionOutcome { passed: true, witness: None };
    for &m in &st.cliques {
        let ell = m.count_ones() as i64;
        let sum = mask_sum(m, l, k);
        let limit = i64::from(d) - ell;
        if i64::from(sum) > limit {
            clique = ConditionOutcome {
                passed: false,
                witness: Some(Witness::Clique {
                    vertices: mask_vertices(m, k),
                    sum,
                    limit,
                }),
            };
            break;
        }
    }

    let mut odd_cycle = ConditionOutcome { passed: true, witness: None };
    for &(m, ell) in &st.odd_cycles {
        let sum = mask_sum(m, l, k);
        let limit = ell as i64 * i64::from(d) - (2 * ell as i64 + 1);
        if i64::from(sum) > limit {
            odd_cycle = ConditionOutcome {
                passed: false,
                witness: Some(Witness::OddCycle {
                    vertices: mask_vertices(m, k),
                    sum,
                    limit,
                }),
            };
            break;
        }
    }

    let mut independence2 = ConditionOutcome { passed: true, witness: None };
    for &(m, size) in &st.alpha2_subsets {
        let vs = mask_vertices(m, k);
        if vs.iter().any(|&v| l[v] >= d) {
            continue;
        }
        let sum = mask_sum(m, l, k);
        let limit = 2 * i64::from(d) - size as i64 + 1;
        if i64::from(sum) > limit {
            independence2 = ConditionOutcome {
                passed: false,
                witness: Some(Witness::Independence2 { vertices: vs, sum, limit }),
            };
            break;
        }
    }

    let mut degree = ConditionOutcome { passed: true, witness: None };
    for v in 0..k {
        let limit = i64::from(d) - i64::from(l[v]);
        if st.degrees[v] as i64 > limit {
            degree = ConditionOutcome {
                passed: false,
                witness: Some(Witness::Degree {
                    vertex: v,
                    degree: st.degrees[v],
                    limit,
                }),
            };
            break;
        }
    }

    let count_zero = !degree.passed;
    let admissible =
        clique.passed && odd_cycle.passed && independence2.passed && degree.passed;
    Ok(ConditionReport {
        clique,
        odd_cycle,
        independence2,
        degree,
        count_zero,
        admissible,
    })
}

/// Clique condition alone (used as a strategy hypothesis).
pub(crate) fn clique_condition_ok(g: &SmallGraph, lam: &[u32], d: u32) -> bool {
    let st = graph_structures(g);
    st.cliques.iter().all(|&m| {
        i64::from(mask_sum(m, lam, g.k())) <= i64::from(d) - m.count_ones() as i64
    })
}

/// All componentwise-maximal admissible profiles with entries in
/// [floor, d]. A profile is kept when it passes all conditions and no unit
/// increment of any coordinate does.
pub fn maximal_profiles_with_floor(
    g: &SmallGraph,
    d: u32,
    floor: u32,
) -> Vec<Profile> {
    let k = g.k();
    if floor > d {
        return Vec::new();
    }
    let st = graph_structures(g);
    let mut admissible: Vec<Vec<u32>> = Vec::new();
    let mut lam = vec![floor; k];
    'sweep: loop {
        if passes(&st, &lam, d) {
            admissible.push(lam.clone());
        }
        // odometer over [floor, d]^k
        let mut i = k;
        while i > 0 {
            i -= 1;
            if lam[i] < d {
                lam[i] += 1;
                for v in lam.iter_mut().skip(i + 1) {
                    *v = floor;
                }
                continue 'sweep;
            }
        }
        break;
    }
    let mut out = Vec::new();
    'cand: for lam in &admissible {
        for i in 0..k {
            if lam[i] < d {
                let mut up = lam.clone();
                up[i] += 1;
                if passes(&st, &up, d) {
                    continue 'cand;
                }
            }
        }
        out.push(Profile::new(lam.clone(), d).expect("entries bounded by d"));
    }
    out.sort_by(|a, b| a.lambda.cmp(&b.lambda));
    out
}

/// Componentwise-maximal admissible profiles with every entry at least 2.
pub fn maximal_profiles(g: &SmallGraph, d: u32) -> Vec<Profile> {
    maximal_profiles_with_floor(g, d, 2)
}

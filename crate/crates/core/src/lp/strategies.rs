//! Explicit feasible points for the covering LPs, one constructor per
//! structural situation. Every certificate is verified feasible by exact
//! substitution and its objective value is checked against the strategy's
//! stated bound before it is returned.

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{build_lp, rat, LpError, LpFamily, LpSolution};
use crate::graphs::{graph_stats, induced_cycles, is_bipartite, Profile, SmallGraph};
use crate::realizability::clique_condition_ok;
use crate::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    /// Half weights on a maximum clique of maximal profile sum, balanced
    /// weights on the classes attached to it.
    MainWeight,
    /// Unit weights on a maximum clique, diameter family.
    DiamClique,
    /// Two balanced weights across one ambient-only edge, pattern family.
    PatternEdge,
    /// 1/(2l-1) on a shortest odd cycle of length 2l+1, l >= 2.
    OddCycle,
    /// 1/(2l) resp. 1/(2l-1) on a shortest cycle, depending on parity.
    Girth,
    /// The two-case construction for triangle-free graphs.
    TriangleFree,
    /// 1/(k+m-1) weights on an empty graph with maximum entry m.
    Independent,
    /// 1/(d+2) weights when k = floor(d/2)+1 and all degrees are small.
    SmallK,
}

/// A verified feasible point together with its objective value and the
/// bound the strategy promises.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub strategy: Strategy,
    pub family: LpFamily,
    pub x: Vec<Rat>,
    pub value: Rat,
    pub bound: Rat,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "strategy": serde_json::to_value(self.strategy).unwrap(),
            "family": serde_json::to_value(self.family).unwrap(),
            "x": self.x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "value": self.value.to_string(),
            "bound": self.bound.to_string(),
        })
    }
}

fn rat_u32(v: u32) -> Rat {
    Rat::from_integer(v.into())
}

fn verify(
    strategy: Strategy,
    family: LpFamily,
    g: &SmallGraph,
    lam: &Profile,
    pattern_edges: Option<&SmallGraph>,
    x: Vec<Rat>,
    bound: Rat,
    strict: bool,
) -> Result<Certificate, LpError> {
    let lp = build_lp(family, g, lam, pattern_edges)?;
    if let Err(i) = lp.check_feasible(&x) {
        return Err(LpError::InfeasibleCertificate(i));
    }
    let value = lp.objective_value(&x);
    let ok = if strict { value < bound } else { value <= bound };
    if !ok {
        return Err(LpError::BoundExceeded {
            value: value.to_string(),
            bound: bound.to_string(),
        });
    }
    Ok(Certificate {
        strategy,
        family,
        x,
        value,
        bound,
    })
}

fn require(cond: bool, msg: &str) -> Result<(), LpError> {
    if cond {
        Ok(())
    } else {
        Err(LpError::Hypothesis(msg.to_string()))
    }
}

fn mask_vertices(mask: u16, k: usize) -> Vec<usize> {
    (0..k).filter(|&v| mask >> v & 1 == 1).collect()
}

/// Maximum clique, ties broken by maximal profile sum, then by
/// lexicographically smallest vertex set.
fn leading_clique(g: &SmallGraph, lam: &[u32]) -> Vec<usize> {
    let stats = graph_stats(g);
    let k = g.k();
    let mut best: Option<(usize, u32, u16)> = None;
    // scan all cliques (subsets of maximal cliques) so singletons appear
    // for the empty graph as well
    for mask in 1u32..(1 << k) {
        let m = mask as u16;
        if !g.is_clique(m) {
            continue;
        }
        let size = m.count_ones() as usize;
        if size < stats.clique_number {
            continue;
        }
        let sum: u32 = mask_vertices(m, k).iter().map(|&v| lam[v]).sum();
        let better = match best {
            None => true,
            Some((bs, bsum, bm)) => {
                size > bs || (size == bs && (sum > bsum || (sum == bsum && m < bm)))
            }
        };
        if better {
            best = Some((size, sum, m));
        }
    }
    mask_vertices(best.expect("nonempty graph has a clique").2, k)
}

fn main_weight(g: &SmallGraph, lam: &Profile) -> Result<Certificate, LpError> {
    let k = g.k();
    let d = lam.d;
    let l = &lam.lambda;
    require(l.iter().all(|&v| v >= 2), "main-weight needs lambda >= 2")?;
    require(
        clique_condition_ok(g, l, d),
        "main-weight needs the clique condition",
    )?;
    let clique = leading_clique(g, l);
    let in_clique = |v: usize| clique.contains(&v);
    let mut x = vec![Rat::zero(); k];
    for &v in &clique {
        x[v] = rat(1, 2);
    }
    for &i in &clique {
        // classes attached to the whole clique except i
        let attached: Vec<usize> = (0..k)
            .filter(|&v| v != i && !in_clique(v))
            .filter(|&v| clique.iter().all(|&j| j == i || g.has_edge(v, j)))
            .collect();
        let ell = attached.len() as u32;
        if ell == 0 {
            continue;
        }
        for &s in &attached {
            require(
                l[s] <= l[i],
                "attached class outweighs its clique anchor; the clique choice is off",
            )?;
            require(x[s].is_zero(), "attached classes must not overlap")?;
            // lambda_i / (2 lambda_s (lambda_i + ell - 1))
            x[s] = rat_u32(l[i]) / (rat(2, 1) * rat_u32(l[s]) * (rat_u32(l[i]) + rat_u32(ell) - Rat::one()));
        }
    }
    let bound = rat(5, 8) * rat_u32(d) + rat(1, 8) * rat(k as i64, 1);
    verify(Strategy::MainWeight, LpFamily::Unit, g, lam, None, x, bound, false)
}

fn diam_clique(g: &SmallGraph, lam: &Profile) -> Result<Certificate, LpError> {
    let k = g.k();
    let d = lam.d;
    let l = &lam.lambda;
    require(l.iter().all(|&v| v >= 2), "diam-clique needs lambda >= 2")?;
    require(
        clique_condition_ok(g, l, d),
        "diam-clique needs the clique condition",
    )?;
    let clique = leading_clique(g, l);
    let mut x = vec![Rat::zero(); k];
    for &v in &clique {
        x[v] = Rat::one();
    }
    let bound = rat_u32(d) / rat(2, 1);
    verify(Strategy::DiamClique, LpFamily::Diameter, g, lam, None, x, bound, false)
}

fn pattern_edge(
    g: &SmallGraph,
    lam: &Profile,
    pattern_edges: &SmallGraph,
) -> Result<Certificate, LpError> {
    let k = g.k();
    let d = lam.d;
    let l = &lam.lambda;
    require(l.iter().all(|&v| v >= 1), "pattern-edge needs lambda >= 1")?;
    // candidate edges: ambient but not fixed, realizable as an orthogonal
    // pair (lambda_i + lambda_j <= d - 2)
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    for (i, j) in pattern_edges.edges() {
        if g.has_edge(i, j) || l[i] + l[j] > d.saturating_sub(2) {
            continue;
        }
        let mut x: Vec<Rat> = (0..k).map(|v| Rat::one() / rat_u32(l[v])).collect();
        if l[i] == 1 && l[j] == 1 {
            x[i] = rat(1, 2);
            x[j] = rat(1, 2);
        } else {
            let den = rat_u32(l[i]) * rat_u32(l[j]) - Rat::one();
            x[i] = (rat_u32(l[j]) - Rat::one()) / den.clone();
            x[j] = (rat_u32(l[i]) - Rat::one()) / den;
        }
        let lp = build_lp(LpFamily::Pattern, g, lam, Some(pattern_edges))?;
        if lp.check_feasible(&x).is_err() {
            continue;
        }
        let val = lp.objective_value(&x);
        if best.as_ref().is_none_or(|(bv, _)| val < *bv) {
            best = Some((val, x));
        }
    }
    let (_, x) = best.ok_or_else(|| {
        LpError::Hypothesis(
            "pattern-edge needs an ambient-only edge with lambda_i + lambda_j <= d - 2".into(),
        )
    })?;
    let min_term = if d >= 4 {
        rat(4, 1) / rat_u32(d)
    } else {
        Rat::one()
    };
    let bound = rat(k as i64, 1) - Rat::one().min(min_term);
    verify(
        Strategy::PatternEdge,
        LpFamily::Pattern,
        g,
        lam,
        Some(pattern_edges),
        x,
        bound,
        false,
    )
}

/// Shortest odd cycle as an ordered statement is not needed; the weight is
/// uniform, so the lexicographically smallest vertex mask is used.
fn shortest_odd_cycle(g: &SmallGraph) -> Option<(u16, usize)> {
    induced_cycles(g)
        .into_iter()
        .filter(|&(_, len)| len % 2 == 1)
        .min_by_key(|&(m, len)| (len, m))
}

fn shortest_cycle(g: &SmallGraph) -> Option<(u16, usize)> {
    induced_cycles(g).into_iter().min_by_key(|&(m, len)| (len, m))
}

fn odd_cycle_point(
    g: &SmallGraph,
    lam: &Profile,
    bound: Rat,
) -> Result<Certificate, LpError> {
    let k = g.k();
    let d = lam.d;
    let l = &lam.lambda;
    let (mask, len) =
        shortest_odd_cycle(g).ok_or_else(|| LpError::Hypothesis("graph is bipartite".into()))?;
    let ell = (len - 1) / 2;
    require(ell >= 2, "shortest odd cycle must have length at least 5")?;
    let verts = mask_vertices(mask, k);
    require(
        verts.iter().all(|&v| l[v] >= 1),
        "odd-cycle needs lambda >= 1 on the cycle",
    )?;
    let sum: u32 = verts.iter().map(|&v| l[v]).sum();
    require(
        i64::from(sum) <= ell as i64 * i64::from(d) - (2 * ell as i64 + 1),
        "odd-cycle profile-sum condition fails",
    )?;
    let mut x = vec![Rat::zero(); k];
    for &v in &verts {
        x[v] = Rat::one() / rat(2 * ell as i64 - 1, 1);
    }
    verify(Strategy::OddCycle, LpFamily::Unit, g, lam, None, x, bound, false)
}

fn odd_cycle(g: &SmallGraph, lam: &Profile) -> Result<Certificate, LpError> {
    let (_, len) =
        shortest_odd_cycle(g).ok_or_else(|| LpError::Hypothesis("graph is bipartite".into()))?;
    let ell = ((len - 1) / 2) as i64;
    let bound = rat(ell, 1) * rat_u32(lam.d) / rat(2 * ell - 1, 1);
    odd_cycle_point(g, lam, bound)
}

fn girth_point(g: &SmallGraph, lam: &Profile) -> Result<Certificate, LpError> {
    let k = g.k();
    let d = lam.d;
    let l = &lam.lambda;
    require(l.iter().all(|&v| v >= 2), "girth strategy needs lambda >= 2")?;
    let (mask, len) =
        shortest_cycle(g).ok_or_else(|| LpError::Hypothesis("graph is acyclic".into()))?;
    let verts = mask_vertices(mask, k);
    if len % 2 == 1 {
        let ell = (len - 1) / 2;
        require(ell > 1, "odd girth must be at least 5")?;
        let sum: u32 = verts.iter().map(|&v| l[v]).sum();
        require(
            i64::from(sum) <= ell as i64 * i64::from(d) - (2 * ell as i64 + 1),
            "odd-cycle profile-sum condition fails",
        )?;
        let mut x = vec![Rat::zero(); k];
        for &v in &verts {
            x[v] = Rat::one() / rat(2 * ell as i64, 1);
        }
        let bound = rat_u32(d) / rat(2, 1);
        verify(Strategy::Girth, LpFamily::Unit, g, lam, None, x, bound, false)
    } else {
        let ell = len / 2;
        require(ell > 2, "even girth must be at least 6")?;
        // pairing the cycle into l disjoint edges bounds the profile sum by
        // l(d-2) via the edge clique condition
        for &v in &verts {
            for &u in &verts {
                if u < v && g.has_edge(u, v) {
                    require(
                        l[u] + l[v] <= d.saturating_sub(2),
                        "edge clique condition fails on the cycle",
                    )?;
                }
            }
        }
        let mut x = vec![Rat::zero(); k];
        for &v in &verts {
            x[v] = Rat::one() / rat(2 * ell as i64 - 1, 1);
        }
        let bound = rat(ell as i64, 1) * rat_u32(d) / rat(2 * ell as i64 - 1, 1);
        verify(Strategy::Girth, LpFamily::Unit, g, lam, None, x, bound, false)
    }
}

fn independent(g: &SmallGraph, lam: &Profile) -> Result<Certificate, LpError> {
    let k = g.k();
    let l = &lam.lambda;
    require(g.edge_count() == 0, "independent strategy needs the empty graph")?;
    require(l.iter().all(|&v| v >= 1), "independent needs lambda >= 1")?;
    let m = *l.iter().max().unwrap();
    let den = rat(k as i64, 1) + rat_u32(m) - Rat::one();
    let x: Vec<Rat> = (0..k)
        .map(|i| rat_u32(m) / (rat_u32(l[i]) * den.clone()))
        .collect();
    let bound = rat(k as i64, 1) * rat_u32(m) / den;
    verify(Strategy::Independent, LpFamily::Unit, g, lam, None, x, bound, false)
}

fn triangle_free(g: &SmallGraph, lam: &Profile) -> Result<Certificate, LpError> {
    let k = g.k();
    let d = lam.d;
    let l = &lam.lambda;
    let stats = graph_stats(g);
    require(stats.triangle_free, "graph has a triangle")?;
    require(l.iter().all(|&v| v >= 1), "triangle-free needs lambda >= 1")?;
    require(
        (0..k).all(|v| g.degree(v) as i64 <= i64::from(d) - i64::from(l[v])),
        "triangle-free needs the degree condition",
    )?;
    require(
        clique_condition_ok(g, l, d),
        "triangle-free needs the edge clique condition",
    )?;
    let bound = rat(2, 1) * rat_u32(d) / rat(3, 1);
    let Some(color) = is_bipartite(g) else {
        // non-bipartite: the shortest odd cycle has length >= 5 and its
        // uniform point already meets 2d/3
        let mut cert = odd_cycle_point(g, lam, bound)?;
        cert.strategy = Strategy::TriangleFree;
        return Ok(cert);
    };
    let third = rat_u32(d) / rat(3, 1);
    let two_thirds = rat(2, 1) * rat_u32(d) / rat(3, 1);
    let small = (0..k).min_by_key(|&v| (l[v], v)).unwrap();
    if rat_u32(l[small]) <= third {
        // case 1: anchor the smallest class and balance its neighborhood
        let nbrs: Vec<usize> = (0..k).filter(|&v| g.has_edge(v, small)).collect();
        let mut x = vec![Rat::zero(); k];
        x[small] = Rat::one();
        if !nbrs.is_empty() {
            let t = d - l[small] - 2; // >= lambda_j on every edge by the clique condition
            let den = rat(nbrs.len() as i64, 1) + rat_u32(t) - Rat::one();
            for &j in &nbrs {
                require(l[j] <= t, "edge clique condition fails")?;
                x[j] = rat_u32(t) / (rat_u32(l[j]) * den.clone());
            }
        }
        return verify(Strategy::TriangleFree, LpFamily::Unit, g, lam, None, x, bound, false);
    }
    // case 2: every class is large; balance within the two color classes
    let big: Vec<usize> = (0..k).filter(|&v| rat_u32(l[v]) >= two_thirds).collect();
    for &v in &big {
        require(g.degree(v) == 0, "a class of dimension >= 2d/3 must be isolated")?;
    }
    let class: Vec<Vec<usize>> = (0..2)
        .map(|c| {
            (0..k)
                .filter(|&v| color[v] == c as u8 && rat_u32(l[v]) < two_thirds)
                .collect()
        })
        .collect();
    if class[0].is_empty() && class[1].is_empty() {
        let mut cert = independent(g, lam)?;
        require(
            cert.value <= bound,
            "independent value exceeds 2d/3 on an all-large profile",
        )?;
        cert.strategy = Strategy::TriangleFree;
        cert.bound = bound;
        return Ok(cert);
    }
    let mut x = vec![Rat::zero(); k];
    for c in 0..2 {
        let ell = class[c].len() as i64;
        if ell == 0 {
            continue;
        }
        let den = rat(ell, 1) + two_thirds.clone() - Rat::one();
        for &v in &class[c] {
            x[v] = two_thirds.clone() / (rat_u32(l[v]) * den.clone());
        }
    }
    let current: Rat = (0..k).map(|v| rat_u32(l[v]) * x[v].clone()).sum();
    if !big.is_empty() {
        // isolated large classes need total weight at least 1; scale the
        // point so the weighted sum hits 2d/3 exactly, which guarantees it
        require(
            current <= two_thirds,
            "balanced point already exceeds 2d/3; cannot scale up for isolated classes",
        )?;
        let scale = two_thirds.clone() / current;
        for v in x.iter_mut() {
            *v = v.clone() * scale.clone();
        }
    }
    verify(Strategy::TriangleFree, LpFamily::Unit, g, lam, None, x, bound, false)
}

fn small_k(g: &SmallGraph, lam: &Profile) -> Result<Certificate, LpError> {
    let k = g.k();
    let d = lam.d;
    let l = &lam.lambda;
    require(
        k as u32 == d / 2 + 1,
        "small-k needs k = floor(d/2) + 1",
    )?;
    require(l.iter().all(|&v| v >= 1), "small-k needs lambda >= 1")?;
    let cap = (d / 2).saturating_sub(1) as usize;
    require(
        g.max_degree() < cap.max(1) && (cap > 0 || g.max_degree() == 0),
        "small-k needs every degree strictly below floor(d/2) - 1",
    )?;
    let x: Vec<Rat> = (0..k)
        .map(|i| rat_u32(d) / (rat_u32(l[i]) * rat(i64::from(d) + 2, 1)))
        .collect();
    let (bound, strict) = if d % 2 == 0 {
        (rat_u32(d) / rat(2, 1), false)
    } else {
        (rat_u32(d) / rat(2, 1) - rat(1, 6), true)
    };
    verify(Strategy::SmallK, LpFamily::Unit, g, lam, None, x, bound, strict)
}

/// Build the strategy's feasible point, verify it by substitution, and
/// check its objective against the stated bound.
pub fn construct_feasible(
    strategy: Strategy,
    g: &SmallGraph,
    lam: &Profile,
    pattern_edges: Option<&SmallGraph>,
) -> Result<Certificate, LpError> {
    if lam.k() != g.k() {
        return Err(LpError::SizeMismatch(lam.k(), g.k()));
    }
    match strategy {
        Strategy::MainWeight => main_weight(g, lam),
        Strategy::DiamClique => diam_clique(g, lam),
        Strategy::PatternEdge => {
            let amb = pattern_edges.ok_or(LpError::PatternEdgesArity)?;
            pattern_edge(g, lam, amb)
        }
        Strategy::OddCycle => odd_cycle(g, lam),
        Strategy::Girth => girth_point(g, lam),
        Strategy::TriangleFree => triangle_free(g, lam),
        Strategy::Independent => independent(g, lam),
        Strategy::SmallK => small_k(g, lam),
    }
}

/// Outcome of the all-tight check for an optimal solution of the unit LP.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EqualityCaseReport {
    pub all_tight: bool,
    /// When all constraints are tight, k = d + 1, and every degree obeys
    /// deg_i <= d - lambda_i: whether value <= d/2 + 1/2 held.
    pub bound_holds: Option<bool>,
}

pub fn check_equality_case(
    g: &SmallGraph,
    lam: &Profile,
    sol: &LpSolution,
) -> Result<EqualityCaseReport, LpError> {
    let lp = build_lp(LpFamily::Unit, g, lam, None)?;
    let tight = lp.tight_set(&sol.x);
    let all_tight = tight.len() == g.k();
    let degree_ok = (0..g.k())
        .all(|v| g.degree(v) as i64 <= i64::from(lam.d) - i64::from(lam.lambda[v]));
    let bound_holds = if all_tight && g.k() as u32 == lam.d + 1 && degree_ok {
        let bound = rat_u32(lam.d) / rat(2, 1) + rat(1, 2);
        Some(lp.objective_value(&sol.x) <= bound)
    } else {
        None
    };
    Ok(EqualityCaseReport {
        all_tight,
        bound_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::solve_exact;

    fn profile(lams: &[u32], d: u32) -> Profile {
        Profile::new(lams.to_vec(), d).unwrap()
    }

    #[test]
    fn independent_three_fives() {
        let g = SmallGraph::empty(3).unwrap();
        let cert =
            construct_feasible(Strategy::Independent, &g, &profile(&[5, 5, 5], 5), None).unwrap();
        assert_eq!(cert.x, vec![rat(1, 7), rat(1, 7), rat(1, 7)]);
        assert_eq!(cert.value, rat(15, 7));
    }

    #[test]
    fn small_k_quadruple_sevens() {
        let g = SmallGraph::new(4, &[(0, 1)]).unwrap(); // max degree 1 < 2
        let cert =
            construct_feasible(Strategy::SmallK, &g, &profile(&[7, 7, 7, 7], 7), None).unwrap();
        assert_eq!(cert.x, vec![rat(1, 9); 4]);
        assert_eq!(cert.value, rat(28, 9));
        assert!(cert.value < rat(10, 3));
    }

    #[test]
    fn main_weight_single_edge_k3() {
        let g = SmallGraph::new(3, &[(0, 1)]).unwrap();
        let cert =
            construct_feasible(Strategy::MainWeight, &g, &profile(&[2, 2, 2], 6), None).unwrap();
        assert_eq!(cert.x, vec![rat(1, 2), rat(1, 2), rat(0, 1)]);
        assert_eq!(cert.value, rat(2, 1));
        assert!(cert.value <= rat(5, 8) * rat(6, 1) + rat(3, 8));
    }

    #[test]
    fn diam_clique_feasible() {
        let g = SmallGraph::new(4, &[(0, 1)]).unwrap();
        let cert =
            construct_feasible(Strategy::DiamClique, &g, &profile(&[2, 2, 4, 4], 8), None)
                .unwrap();
        assert_eq!(cert.value, rat(2, 1) + rat(0, 1)); // two clique entries at floor(3/2)=1
        assert!(cert.value <= rat(4, 1));
    }

    #[test]
    fn odd_cycle_on_pentagon() {
        let c5 = SmallGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let cert =
            construct_feasible(Strategy::OddCycle, &c5, &profile(&[2, 2, 2, 2, 2], 8), None)
                .unwrap();
        assert_eq!(cert.x, vec![rat(1, 3); 5]);
        assert_eq!(cert.value, rat(10, 3));
        assert_eq!(cert.bound, rat(16, 3));
        // rejected when the profile-sum condition fails
        assert!(construct_feasible(
            Strategy::OddCycle,
            &c5,
            &profile(&[2, 2, 2, 2, 2], 7),
            None
        )
        .is_err());
        // rejected on bipartite input
        let p4 = SmallGraph::new(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(
            construct_feasible(Strategy::OddCycle, &p4, &profile(&[2, 2, 2, 2], 8), None).is_err()
        );
    }

    #[test]
    fn pattern_edge_certificate() {
        // ambient path 1-2-3, fixed empty graph
        let amb = SmallGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let fixed = SmallGraph::empty(3).unwrap();
        let cert = construct_feasible(
            Strategy::PatternEdge,
            &fixed,
            &profile(&[3, 3, 3], 8),
            Some(&amb),
        )
        .unwrap();
        // value k - (l_i + l_j - 2)/(l_i l_j - 1) = 3 - 4/8 = 5/2
        assert_eq!(cert.value, rat(5, 2));
        assert!(cert.value <= rat(3, 1) - rat(1, 2));
    }

    #[test]
    fn triangle_free_cases() {
        // bipartite, small class present (case 1)
        let star = SmallGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let cert =
            construct_feasible(Strategy::TriangleFree, &star, &profile(&[2, 2, 2, 2], 8), None)
                .unwrap();
        assert!(cert.value <= rat(16, 3));
        // all classes large (case 2): matching with lambda = 3, d = 8
        let pm = SmallGraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let cert2 =
            construct_feasible(Strategy::TriangleFree, &pm, &profile(&[3, 3, 3, 3], 8), None)
                .unwrap();
        assert!(cert2.value <= rat(16, 3));
        // non-bipartite triangle-free goes through the odd-cycle point
        let c5 = SmallGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let cert3 =
            construct_feasible(Strategy::TriangleFree, &c5, &profile(&[2, 2, 2, 2, 2], 8), None)
                .unwrap();
        assert_eq!(cert3.strategy, Strategy::TriangleFree);
        assert!(cert3.value <= rat(16, 3));
        // triangles are rejected
        let k3 = SmallGraph::complete(3).unwrap();
        assert!(construct_feasible(
            Strategy::TriangleFree,
            &k3,
            &profile(&[2, 2, 2], 9),
            None
        )
        .is_err());
    }

    #[test]
    fn girth_even_and_odd() {
        let c5 = SmallGraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let cert =
            construct_feasible(Strategy::Girth, &c5, &profile(&[2, 2, 2, 2, 2], 8), None).unwrap();
        assert_eq!(cert.x, vec![rat(1, 4); 5]);
        assert_eq!(cert.bound, rat(4, 1));
        let c6 = SmallGraph::new(
            6,
            &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)],
        )
        .unwrap();
        let cert6 =
            construct_feasible(Strategy::Girth, &c6, &profile(&[2, 2, 2, 2, 2, 2], 8), None)
                .unwrap();
        assert_eq!(cert6.x, vec![rat(1, 5); 6]);
        assert_eq!(cert6.bound, rat(24, 5));
    }

    #[test]
    fn certificates_dominate_the_optimum() {
        // weak duality: any feasible value is >= the exact optimum
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let k = rng.gen_range(2..=5);
            let npairs = k * (k - 1) / 2;
            let g = SmallGraph::from_mask(k, rng.gen_range(0..(1u64 << npairs))).unwrap();
            let d = rng.gen_range(6..=9u32);
            let lam: Vec<u32> = (0..k).map(|_| rng.gen_range(2..=3)).collect();
            let pr = profile(&lam, d);
            for strategy in [
                Strategy::MainWeight,
                Strategy::DiamClique,
                Strategy::OddCycle,
                Strategy::Girth,
                Strategy::TriangleFree,
                Strategy::Independent,
                Strategy::SmallK,
            ] {
                if let Ok(cert) = construct_feasible(strategy, &g, &pr, None) {
                    let lp = build_lp(cert.family, &g, &pr, None).unwrap();
                    let opt = solve_exact(&lp).unwrap();
                    assert!(
                        cert.value >= opt.value,
                        "strategy {strategy:?} beat the optimum"
                    );
                }
            }
        }
    }

    #[test]
    fn equality_case_examples() {
        // K_2 with lambda = (2,2): x = (1/2, 1/2) is all-tight
        let g = SmallGraph::complete(2).unwrap();
        let pr = profile(&[2, 2], 6);
        let lp = build_lp(LpFamily::Unit, &g, &pr, None).unwrap();
        let sol = solve_exact(&lp).unwrap();
        let rep = check_equality_case(&g, &pr, &sol).unwrap();
        assert!(rep.all_tight);
        // empty k=4 lambda=(7,...): all tight at x = 1/10
        let e4 = SmallGraph::empty(4).unwrap();
        let pr4 = profile(&[7, 7, 7, 7], 7);
        let lp4 = build_lp(LpFamily::Unit, &e4, &pr4, None).unwrap();
        let sol4 = solve_exact(&lp4).unwrap();
        let rep4 = check_equality_case(&e4, &pr4, &sol4).unwrap();
        assert!(rep4.all_tight);
        // empty k=2, lambda=(3,5): report whatever the solver found
        let e2 = SmallGraph::empty(2).unwrap();
        let pr2 = profile(&[3, 5], 7);
        let lp2 = build_lp(LpFamily::Unit, &e2, &pr2, None).unwrap();
        let sol2 = solve_exact(&lp2).unwrap();
        let rep2 = check_equality_case(&e2, &pr2, &sol2).unwrap();
        let recomputed = lp2.tight_set(&sol2.x);
        assert_eq!(rep2.all_tight, recomputed.len() == 2);
    }
}

//! Exact-rational covering linear programs indexed by a small graph and a
//! profile, in three flavours: the unit-distance family, the diameter
//! family (coefficients floor((lambda_i+1)/2)), and the pattern family over
//! a fixed ambient edge set. Solved by a dense two-phase simplex with
//! Bland's rule over `BigRational`, cross-checked by vertex enumeration.

mod simplex;
mod strategies;

pub use simplex::{solve_exact, vertex_enumeration_opt};
pub use strategies::{
    check_equality_case, construct_feasible, Certificate, EqualityCaseReport, Strategy,
};

use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graphs::{Profile, SmallGraph};
use crate::Rat;

#[derive(Debug, Error)]
pub enum LpError {
    #[error("profile has {0} entries but the graph has {1} vertices")]
    SizeMismatch(usize, usize),
    #[error("pattern family needs an ambient edge set containing the graph's edges")]
    BadPatternEdges,
    #[error("pattern family requires pattern edges; other families take none")]
    PatternEdgesArity,
    #[error("covering LP with positive diagonal was reported {0}; this cannot happen")]
    CoveringAssert(String),
    #[error("vertex enumeration supports at most 6 variables, got {0}")]
    TooManyVars(usize),
    #[error("strategy hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("constructed point is infeasible at constraint {0}; this is a bug")]
    InfeasibleCertificate(usize),
    #[error("certificate value {value} exceeds the strategy bound {bound}")]
    BoundExceeded { value: String, bound: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpFamily {
    Unit,
    Diameter,
    Pattern,
}

/// min <objective, x> subject to a x >= b, x >= 0, all entries rational.
#[derive(Clone, Debug)]
pub struct LpInstance {
    pub objective: Vec<Rat>,
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
    pub family: LpFamily,
    pub graph: SmallGraph,
    pub lambda: Profile,
    pub pattern_edges: Option<SmallGraph>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solver certificate: optimal value, one optimal basic point, and the set
/// of covering constraints met with equality there (0-indexed).
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: LpStatus,
    pub value: Rat,
    pub x: Vec<Rat>,
    pub tight: Vec<usize>,
}

impl LpSolution {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "status": match self.status {
                LpStatus::Optimal => "optimal",
                LpStatus::Infeasible => "infeasible",
                LpStatus::Unbounded => "unbounded",
            },
            "value": self.value.to_string(),
            "x": self.x.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "tight": self.tight.iter().map(|i| i + 1).collect::<Vec<_>>(),
        })
    }
}

fn diam_coeff(lam: u32) -> Rat {
    Rat::from_integer(((lam + 1) / 2).into())
}

/// Assemble one LP of the requested family: k variables, k covering
/// constraints with right-hand side 1.
pub fn build_lp(
    family: LpFamily,
    g: &SmallGraph,
    lam: &Profile,
    pattern_edges: Option<&SmallGraph>,
) -> Result<LpInstance, LpError> {
    let k = g.k();
    if lam.k() != k {
        return Err(LpError::SizeMismatch(lam.k(), k));
    }
    match family {
        LpFamily::Pattern => {
            let amb = pattern_edges.ok_or(LpError::PatternEdgesArity)?;
            if amb.k() != k || (g.edge_mask() & !amb.edge_mask()) != 0 {
                return Err(LpError::BadPatternEdges);
            }
        }
        _ => {
            if pattern_edges.is_some() {
                return Err(LpError::PatternEdgesArity);
            }
        }
    }
    let lam_rat =
        |i: usize| -> Rat { Rat::from_integer(lam.lambda[i].into()) };
    let mut a = vec![vec![Rat::zero(); k]; k];
    let mut objective = Vec::with_capacity(k);
    for i in 0..k {
        match family {
            LpFamily::Unit => {
                objective.push(lam_rat(i));
                a[i][i] = lam_rat(i);
                for j in 0..k {
                    if j != i && !g.has_edge(i, j) {
                        a[i][j] = Rat::one();
                    }
                }
            }
            LpFamily::Diameter => {
                objective.push(diam_coeff(lam.lambda[i]));
                a[i][i] = diam_coeff(lam.lambda[i]);
                for j in 0..k {
                    if j != i && !g.has_edge(i, j) {
                        a[i][j] = Rat::one();
                    }
                }
            }
            LpFamily::Pattern => {
                let amb = pattern_edges.unwrap();
                objective.push(lam_rat(i));
                a[i][i] = lam_rat(i);
                for j in 0..k {
                    if j != i && amb.has_edge(i, j) && !g.has_edge(i, j) {
                        a[i][j] = Rat::one();
                    }
                }
            }
        }
    }
    Ok(LpInstance {
        objective,
        a,
        b: vec![Rat::one(); k],
        family,
        graph: *g,
        lambda: lam.clone(),
        pattern_edges: pattern_edges.copied(),
    })
}

impl LpInstance {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn num_constraints(&self) -> usize {
        self.b.len()
    }

    /// Exact feasibility check for a candidate point.
    pub fn check_feasible(&self, x: &[Rat]) -> Result<(), usize> {
        if x.iter().any(|v| v.is_negative()) {
            return Err(usize::MAX);
        }
        for (i, row) in self.a.iter().enumerate() {
            let lhs: Rat = row.iter().zip(x).map(|(c, v)| c * v).sum();
            if lhs < self.b[i] {
                return Err(i);
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[Rat]) -> Rat {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Constraint indices met with equality at x.
    pub fn tight_set(&self, x: &[Rat]) -> Vec<usize> {
        self.a
            .iter()
            .enumerate()
            .filter(|(i, row)| {
                let lhs: Rat = row.iter().zip(x).map(|(c, v)| c * v).sum();
                lhs == self.b[*i]
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// Plain-text export: one objective row, then one row per constraint as
    /// "coeffs >= rhs", rationals printed "p/q".
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        out.push_str("min ");
        out.push_str(
            &self
                .objective
                .iter()
                .map(BigRational::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push('\n');
        for (row, rhs) in self.a.iter().zip(&self.b) {
            out.push_str(
                &row.iter()
                    .map(BigRational::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push_str(" >= ");
            out.push_str(&rhs.to_string());
            out.push('\n');
        }
        out
    }
}

pub(crate) fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

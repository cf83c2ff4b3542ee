//! Dense two-phase simplex over exact rationals with Bland's rule, plus a
//! brute-force vertex-enumeration optimizer used as an independent oracle.

use num::{One, Signed, Zero};

use super::{LpError, LpFamily, LpInstance, LpSolution, LpStatus};
use crate::Rat;

/// Tableau for min c.x, A x >= b, x >= 0 brought to equality form
/// A x - s + a = b with surplus s and phase-one artificials a.
struct Tableau {
    // rows: m constraints; cols: n structural + m surplus + m artificial + rhs
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    n: usize,
    m: usize,
}

impl Tableau {
    fn new(lp: &LpInstance) -> Self {
        let n = lp.num_vars();
        let m = lp.num_constraints();
        let width = n + 2 * m + 1;
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = vec![Rat::zero(); width];
            row[..n].clone_from_slice(&lp.a[i]);
            row[n + i] = -Rat::one();
            row[n + m + i] = Rat::one();
            row[width - 1] = lp.b[i].clone();
            // rhs is nonnegative for covering LPs; flip rows otherwise
            if row[width - 1].is_negative() {
                for v in row.iter_mut() {
                    *v = -v.clone();
                }
                row[n + m + i] = Rat::one(); // re-own the artificial column
            }
            rows.push(row);
        }
        let basis = (0..m).map(|i| n + m + i).collect();
        Tableau { rows, basis, n, m }
    }

    fn width(&self) -> usize {
        self.n + 2 * self.m + 1
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let w = self.width();
        let pivot = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v = &*v / &pivot;
        }
        for r in 0..self.m {
            if r != row && !self.rows[r][col].is_zero() {
                let factor = self.rows[r][col].clone();
                for c in 0..w {
                    let delta = &factor * &self.rows[row][c];
                    self.rows[r][c] = &self.rows[r][c] - delta;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Minimize sum of cost over the allowed columns with Bland's rule.
    /// Returns false when the problem is unbounded below.
    fn run(&mut self, cost: &[Rat], allowed: usize) -> bool {
        loop {
            // reduced costs: c_j - c_B B^-1 A_j, computed from the tableau
            let mut entering = None;
            for j in 0..allowed {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut red = cost[j].clone();
                for (r, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() {
                        red -= &cost[b] * &self.rows[r][j];
                    }
                }
                if red.is_negative() {
                    entering = Some(j);
                    break; // Bland: smallest index
                }
            }
            let Some(col) = entering else {
                return true;
            };
            let w = self.width();
            let mut leave: Option<(usize, Rat)> = None;
            for r in 0..self.m {
                if self.rows[r][col].is_positive() {
                    let ratio = &self.rows[r][w - 1] / &self.rows[r][col];
                    let better = match &leave {
                        None => true,
                        Some((lr, lv)) => {
                            ratio < *lv || (ratio == *lv && self.basis[r] < self.basis[*lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((row, _)) = leave else {
                return false;
            };
            self.pivot(row, col);
        }
    }

    fn solution(&self, lp: &LpInstance) -> Vec<Rat> {
        let w = self.width();
        let mut x = vec![Rat::zero(); self.n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < self.n {
                x[b] = self.rows[r][w - 1].clone();
            }
        }
        debug_assert!(x.len() == lp.num_vars());
        x
    }
}

/// Exact optimum of the instance. Unit and diameter families with a
/// strictly positive diagonal are always feasible and bounded, and this is
/// asserted on exit.
pub fn solve_exact(lp: &LpInstance) -> Result<LpSolution, LpError> {
    let n = lp.num_vars();
    let m = lp.num_constraints();
    let mut t = Tableau::new(lp);
    // phase 1: minimize artificials
    let mut phase1 = vec![Rat::zero(); t.width() - 1];
    for j in n + m..n + 2 * m {
        phase1[j] = Rat::one();
    }
    let ok = t.run(&phase1, n + 2 * m);
    debug_assert!(ok, "phase one is bounded by construction");
    let infeas: Rat = t
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &b)| b >= n + m)
        .map(|(r, _)| t.rows[r][t.width() - 1].clone())
        .sum();
    let covering_diag = matches!(lp.family, LpFamily::Unit | LpFamily::Diameter)
        && (0..n).all(|i| lp.a[i][i].is_positive());
    if !infeas.is_zero() {
        if covering_diag {
            return Err(LpError::CoveringAssert("infeasible".into()));
        }
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            value: Rat::zero(),
            x: vec![],
            tight: vec![],
        });
    }
    // drive any residual zero-value artificials out of the basis
    for r in 0..m {
        if t.basis[r] >= n + m {
            if let Some(col) = (0..n + m).find(|&c| !t.rows[r][c].is_zero()) {
                t.pivot(r, col);
            }
        }
    }
    // phase 2: minimize the real objective over structural + surplus cols
    let mut phase2 = vec![Rat::zero(); t.width() - 1];
    phase2[..n].clone_from_slice(&lp.objective);
    if !t.run(&phase2, n + m) {
        if covering_diag {
            return Err(LpError::CoveringAssert("unbounded".into()));
        }
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            value: Rat::zero(),
            x: vec![],
            tight: vec![],
        });
    }
    let x = t.solution(lp);
    debug_assert!(lp.check_feasible(&x).is_ok());
    let value = lp.objective_value(&x);
    let tight = lp.tight_set(&x);
    Ok(LpSolution {
        status: LpStatus::Optimal,
        value,
        x,
        tight,
    })
}

/// Independent oracle: enumerate every basic point (choice of k tight rows
/// among the k covering rows and k sign constraints), keep the feasible
/// ones, and take the best objective. Supports k <= 6.
pub fn vertex_enumeration_opt(lp: &LpInstance) -> Result<LpSolution, LpError> {
    let k = lp.num_vars();
    if k > 6 {
        return Err(LpError::TooManyVars(k));
    }
    // rows: k covering constraints (A, b), then k sign constraints (e_i, 0)
    let total = 2 * k;
    let mut best: Option<(Rat, Vec<Rat>)> = None;
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        if let Some(x) = solve_square(lp, &combo) {
            if lp.check_feasible(&x).is_ok() {
                let val = lp.objective_value(&x);
                let better = match &best {
                    None => true,
                    Some((bv, bx)) => val < *bv || (val == *bv && x < *bx),
                };
                if better {
                    best = Some((val, x));
                }
            }
        }
        if !next_combination(&mut combo, total) {
            break;
        }
    }
    match best {
        Some((value, x)) => {
            let tight = lp.tight_set(&x);
            Ok(LpSolution {
                status: LpStatus::Optimal,
                value,
                x,
                tight,
            })
        }
        None => Ok(LpSolution {
            status: LpStatus::Infeasible,
            value: Rat::zero(),
            x: vec![],
            tight: vec![],
        }),
    }
}

fn solve_square(lp: &LpInstance, rows: &[usize]) -> Option<Vec<Rat>> {
    let k = lp.num_vars();
    let mut m = Vec::with_capacity(rows.len());
    let mut rhs = Vec::with_capacity(rows.len());
    for &r in rows {
        if r < k {
            m.push(lp.a[r].clone());
            rhs.push(lp.b[r].clone());
        } else {
            let mut e = vec![Rat::zero(); k];
            e[r - k] = Rat::one();
            m.push(e);
            rhs.push(Rat::zero());
        }
    }
    gaussian_solve(&mut m, &mut rhs)
}

fn gaussian_solve(m: &mut [Vec<Rat>], rhs: &mut [Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let p = m[col][col].clone();
        for c in col..n {
            m[col][c] = &m[col][c] / &p;
        }
        rhs[col] = &rhs[col] / &p;
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..n {
                    let d = &f * &m[col][c];
                    m[r][c] = &m[r][c] - d;
                }
                let d = &f * &rhs[col];
                rhs[r] = &rhs[r] - d;
            }
        }
    }
    Some(rhs.to_vec())
}

fn next_combination(combo: &mut [usize], total: usize) -> bool {
    let k = combo.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < total - (k - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{Profile, SmallGraph};
    use crate::lp::{build_lp, rat};

    fn profile(lams: &[u32], d: u32) -> Profile {
        Profile::new(lams.to_vec(), d).unwrap()
    }

    #[test]
    fn empty_four_sevens() {
        // frozen from the vertex-enumeration oracle below
        let g = SmallGraph::empty(4).unwrap();
        let lp = build_lp(crate::lp::LpFamily::Unit, &g, &profile(&[7, 7, 7, 7], 7), None)
            .unwrap();
        let oracle = vertex_enumeration_opt(&lp).unwrap();
        assert_eq!(oracle.value, rat(14, 5));
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Optimal);
        assert_eq!(sol.value, rat(14, 5));
        assert_eq!(sol.x, vec![rat(1, 10), rat(1, 10), rat(1, 10), rat(1, 10)]);
        assert_eq!(sol.tight, vec![0, 1, 2, 3]);
    }

    #[test]
    fn k2_decoupled() {
        let g = SmallGraph::complete(2).unwrap();
        let lp =
            build_lp(crate::lp::LpFamily::Unit, &g, &profile(&[2, 2], 6), None).unwrap();
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(sol.value, rat(2, 1));
        assert_eq!(sol.x, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn diameter_empty_three_fives() {
        let g = SmallGraph::empty(3).unwrap();
        let lp = build_lp(
            crate::lp::LpFamily::Diameter,
            &g,
            &profile(&[5, 5, 5], 5),
            None,
        )
        .unwrap();
        let sol = solve_exact(&lp).unwrap();
        // x = (1/5, 1/5, 1/5) is feasible with value 9/5; solver can only
        // improve on it
        assert!(sol.value <= rat(9, 5));
        assert!(lp.check_feasible(&[rat(1, 5), rat(1, 5), rat(1, 5)]).is_ok());
        assert_eq!(
            lp.objective_value(&[rat(1, 5), rat(1, 5), rat(1, 5)]),
            rat(9, 5)
        );
    }

    #[test]
    fn complete_graph_value_is_k() {
        for k in 2..=5 {
            let g = SmallGraph::complete(k).unwrap();
            let lam: Vec<u32> = (0..k as u32).map(|i| 2 + i % 3).collect();
            let lp = build_lp(crate::lp::LpFamily::Unit, &g, &profile(&lam, 9), None).unwrap();
            let sol = solve_exact(&lp).unwrap();
            assert_eq!(sol.value, Rat::from_integer((k as i64).into()));
        }
    }

    #[test]
    fn infeasible_pattern_reported() {
        // pattern family, lambda_1 = 0 with no ambient-minus-fixed neighbor:
        // row 1 reads 0 >= 1
        let fixed = SmallGraph::new(2, &[(0, 1)]).unwrap();
        let amb = fixed;
        let lp = build_lp(
            crate::lp::LpFamily::Pattern,
            &fixed,
            &profile(&[0, 2], 6),
            Some(&amb),
        )
        .unwrap();
        let sol = solve_exact(&lp).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        let oracle = vertex_enumeration_opt(&lp).unwrap();
        assert_eq!(oracle.status, LpStatus::Infeasible);
    }

    #[test]
    fn simplex_matches_oracle_on_random_instances() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..200 {
            let k = rng.gen_range(2..=5);
            let npairs = k * (k - 1) / 2;
            let mask: u64 = rng.gen_range(0..(1u64 << npairs));
            let g = SmallGraph::from_mask(k, mask).unwrap();
            let lam: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=8)).collect();
            let family = if rng.gen_bool(0.5) {
                crate::lp::LpFamily::Unit
            } else {
                crate::lp::LpFamily::Diameter
            };
            let lp = build_lp(family, &g, &profile(&lam, 8), None).unwrap();
            let sol = solve_exact(&lp).unwrap();
            let oracle = vertex_enumeration_opt(&lp).unwrap();
            assert_eq!(sol.status, LpStatus::Optimal);
            assert_eq!(sol.value, oracle.value, "k={k} mask={mask} lam={lam:?}");
        }
    }

    #[test]
    fn unit_value_at_most_k_and_monotone_in_lambda() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let k = rng.gen_range(2..=4);
            let npairs = k * (k - 1) / 2;
            let g = SmallGraph::from_mask(k, rng.gen_range(0..(1u64 << npairs))).unwrap();
            let lam: Vec<u32> = (0..k).map(|_| rng.gen_range(1..=6)).collect();
            let lp = build_lp(crate::lp::LpFamily::Unit, &g, &profile(&lam, 6), None).unwrap();
            let sol = solve_exact(&lp).unwrap();
            assert!(sol.value <= Rat::from_integer((k as i64).into()));
            // bump one coordinate: value must not decrease
            let i = rng.gen_range(0..k);
            if lam[i] < 6 {
                let mut lam2 = lam.clone();
                lam2[i] += 1;
                let lp2 =
                    build_lp(crate::lp::LpFamily::Unit, &g, &profile(&lam2, 6), None).unwrap();
                let sol2 = solve_exact(&lp2).unwrap();
                assert!(sol.value <= sol2.value);
                // rescaling witness: x_i := (lam2_i/lam_i) x2_i is feasible
                // for the smaller profile with equal objective
                let x: Vec<Rat> = sol2
                    .x
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        v * Rat::new(lam2[j].into(), lam[j].into())
                    })
                    .collect();
                assert!(lp.check_feasible(&x).is_ok());
                assert_eq!(lp.objective_value(&x), sol2.value);
            }
        }
    }
}

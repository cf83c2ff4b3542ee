//! Brute-force ground-truth counting oracles: unit tuples across point
//! classes, congruent pattern copies against a prescribed distance matrix,
//! and rich points. These are deliberately exhaustive; they exist to check
//! everything else, not to be fast. The outer loop over first choices is
//! data-parallel.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{squared_distance, GeomError, PointSet, Scalar};
use crate::par;

#[derive(Debug, Error)]
pub enum CountError {
    #[error("point sets mix dimensions: {0} vs {1}")]
    MixedDimensions(usize, usize),
    #[error("no point sets given")]
    Empty,
    #[error("pattern matrix must be symmetric with a free diagonal")]
    BadPattern,
    #[error("pattern size {0} does not fit desk scale (k <= 6)")]
    PatternTooLarge(usize),
    #[error("tuple size {0} exceeds desk scale (k <= 8)")]
    TupleTooLarge(usize),
    #[error("geometry error: {0}")]
    Geom(#[from] GeomError),
}

/// Entry of a pattern's required-distance matrix: a fixed squared distance
/// or no constraint.
#[derive(Clone, Debug, PartialEq)]
pub enum DistanceSpec {
    Fixed(Scalar),
    Free,
}

/// Pattern over k labeled vertices: symmetric matrix of squared-distance
/// requirements, diagonal free.
#[derive(Clone, Debug)]
pub struct PatternSpec {
    pub k: usize,
    entries: Vec<Vec<DistanceSpec>>,
}

impl PatternSpec {
    pub fn new(k: usize, fixed: &[(usize, usize, Scalar)]) -> Result<Self, CountError> {
        if k > 6 {
            return Err(CountError::PatternTooLarge(k));
        }
        let mut entries = vec![vec![DistanceSpec::Free; k]; k];
        for (a, b, v) in fixed {
            if a == b || *a >= k || *b >= k {
                return Err(CountError::BadPattern);
            }
            entries[*a][*b] = DistanceSpec::Fixed(v.clone());
            entries[*b][*a] = DistanceSpec::Fixed(v.clone());
        }
        Ok(PatternSpec { k, entries })
    }

    /// All-pairs-at-unit pattern (the unit k-simplex).
    pub fn all_unit(k: usize) -> Result<Self, CountError> {
        let mut fixed = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                fixed.push((i, j, Scalar::from_int(1)));
            }
        }
        Self::new(k, &fixed)
    }

    pub fn entry(&self, i: usize, j: usize) -> &DistanceSpec {
        &self.entries[i][j]
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, CountError> {
        let k = v["k"].as_u64().ok_or(CountError::BadPattern)? as usize;
        let raw = v["fixed"].as_array().ok_or(CountError::BadPattern)?;
        let mut fixed = Vec::new();
        for item in raw {
            let triple = item.as_array().ok_or(CountError::BadPattern)?;
            if triple.len() != 3 {
                return Err(CountError::BadPattern);
            }
            let a = triple[0].as_u64().ok_or(CountError::BadPattern)? as usize;
            let b = triple[1].as_u64().ok_or(CountError::BadPattern)? as usize;
            if a == 0 || b == 0 {
                return Err(CountError::BadPattern);
            }
            let s = match &triple[2] {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                _ => return Err(CountError::BadPattern),
            };
            let val = Scalar::decode(&s).map_err(CountError::Geom)?;
            fixed.push((a - 1, b - 1, val));
        }
        Self::new(k, &fixed)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut fixed = Vec::new();
        for i in 0..self.k {
            for j in i + 1..self.k {
                if let DistanceSpec::Fixed(v) = &self.entries[i][j] {
                    fixed.push(serde_json::json!([i + 1, j + 1, v.encode()]));
                }
            }
        }
        serde_json::json!({ "k": self.k, "fixed": fixed })
    }
}

/// Counting result; `unordered` is populated only when all classes
/// coincide, in which case ordered = k! * unordered.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct UnitCount {
    pub ordered: u128,
    pub unordered: Option<u128>,
    pub tol: f64,
}

impl UnitCount {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "ordered": self.ordered,
            "unordered": self.unordered,
            "tol": self.tol,
        })
    }
}

fn check_dims(sets: &[&PointSet]) -> Result<usize, CountError> {
    let first = sets.first().ok_or(CountError::Empty)?;
    for s in sets {
        if s.dim != first.dim {
            return Err(CountError::MixedDimensions(first.dim, s.dim));
        }
    }
    Ok(first.dim)
}

fn unit_within(a: &PointSet, i: usize, b: &PointSet, j: usize, tol: f64) -> bool {
    let one = Scalar::from_int(1);
    squared_distance(&a.points[i], &b.points[j])
        .map(|d2| d2.within(&one, tol))
        .unwrap_or(false)
}

/// Ordered tuples (p_1, ..., p_k), p_i from the i-th set, with all pairwise
/// squared distances equal to 1 within `tol`. Exhaustive backtracking, the
/// first coordinate split across workers.
pub fn count_unit_tuples(sets: &[&PointSet], tol: f64) -> Result<UnitCount, CountError> {
    let k = sets.len();
    if k > 8 {
        return Err(CountError::TupleTooLarge(k));
    }
    check_dims(sets)?;
    let ordered = count_unit_tuples_inner(sets, tol, true);
    let same = sets
        .windows(2)
        .all(|w| std::ptr::eq(w[0], w[1]) || same_points(w[0], w[1]));
    let unordered = if same && k >= 1 {
        let fact: u128 = (1..=k as u128).product();
        debug_assert_eq!(ordered % fact, 0);
        Some(ordered / fact)
    } else {
        None
    };
    Ok(UnitCount {
        ordered,
        unordered,
        tol,
    })
}

/// Sequential twin of [`count_unit_tuples`] for benchmarking.
pub fn count_unit_tuples_seq(sets: &[&PointSet], tol: f64) -> Result<UnitCount, CountError> {
    let k = sets.len();
    if k > 8 {
        return Err(CountError::TupleTooLarge(k));
    }
    check_dims(sets)?;
    let ordered = count_unit_tuples_inner(sets, tol, false);
    Ok(UnitCount {
        ordered,
        unordered: None,
        tol,
    })
}

fn count_unit_tuples_inner(sets: &[&PointSet], tol: f64, parallel: bool) -> u128 {
    let k = sets.len();
    if k == 0 {
        return 0;
    }
    if k == 1 {
        return sets[0].len() as u128;
    }
    let count_from = |first: usize| -> u128 {
        let mut chosen = vec![0usize; k];
        chosen[0] = first;
        fn rec(sets: &[&PointSet], tol: f64, chosen: &mut [usize], depth: usize) -> u128 {
            let k = sets.len();
            if depth == k {
                return 1;
            }
            let mut total = 0u128;
            'next: for cand in 0..sets[depth].len() {
                for prev in 0..depth {
                    if !unit_within(sets[prev], chosen[prev], sets[depth], cand, tol) {
                        continue 'next;
                    }
                }
                chosen[depth] = cand;
                total += rec(sets, tol, chosen, depth + 1);
            }
            total
        }
        rec(sets, tol, &mut chosen, 1)
    };
    sum_driver_adapter(sets[0].len(), count_from, parallel)
}

fn same_points(a: &PointSet, b: &PointSet) -> bool {
    a.len() == b.len()
        && a.points
            .iter()
            .zip(&b.points)
            .all(|(p, q)| p == q)
}

fn sum_driver_adapter<F>(n: usize, f: F, parallel: bool) -> u128
where
    F: Fn(usize) -> u128 + Sync + Send,
{
    if parallel {
        par::sum_over(n, f)
    } else {
        par::sum_over_seq(n, f)
    }
}

/// Ordered injective embeddings of the pattern into `p` realizing every
/// fixed squared-distance entry within `tol`. Backtracking prunes on each
/// partial assignment.
pub fn count_pattern(p: &PointSet, spec: &PatternSpec, tol: f64) -> u128 {
    count_pattern_impl(p, spec, tol, true)
}

/// Sequential twin of [`count_pattern`].
pub fn count_pattern_seq(p: &PointSet, spec: &PatternSpec, tol: f64) -> u128 {
    count_pattern_impl(p, spec, tol, false)
}

fn count_pattern_impl(p: &PointSet, spec: &PatternSpec, tol: f64, parallel: bool) -> u128 {
    let k = spec.k;
    if k == 0 {
        return 0;
    }
    if k == 1 {
        return p.len() as u128;
    }
    let count_from = move |first: usize| -> u128 {
        let mut chosen = vec![0usize; k];
        chosen[0] = first;
        fn matches(
            p: &PointSet,
            spec: &PatternSpec,
            chosen: &[usize],
            depth: usize,
            cand: usize,
            tol: f64,
        ) -> bool {
            for prev in 0..depth {
                if chosen[prev] == cand {
                    return false; // injective embeddings only
                }
                if let DistanceSpec::Fixed(want) = spec.entry(prev, depth) {
                    let d2 = squared_distance(&p.points[chosen[prev]], &p.points[cand])
                        .expect("same dim");
                    if !d2.within(want, tol) {
                        return false;
                    }
                }
            }
            true
        }
        fn rec(
            p: &PointSet,
            spec: &PatternSpec,
            chosen: &mut [usize],
            depth: usize,
            tol: f64,
        ) -> u128 {
            if depth == spec.k {
                return 1;
            }
            let mut total = 0u128;
            for cand in 0..p.len() {
                if matches(p, spec, chosen, depth, cand, tol) {
                    chosen[depth] = cand;
                    total += rec(p, spec, chosen, depth + 1, tol);
                }
            }
            total
        }
        rec(p, spec, &mut chosen, 1, tol)
    };
    sum_driver_adapter(p.len(), count_from, parallel)
}

/// Indices of the candidates at unit distance from at least `r` points of
/// `p` (within `tol`).
pub fn rich_points(p: &PointSet, candidates: &PointSet, r: usize, tol: f64) -> Vec<usize> {
    let one = Scalar::from_int(1);
    (0..candidates.len())
        .filter(|&j| {
            let deg = p
                .points
                .iter()
                .filter(|q| {
                    squared_distance(q, &candidates.points[j])
                        .map(|d2| d2.within(&one, tol))
                        .unwrap_or(false)
                })
                .count();
            deg >= r
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{lenz, regular_simplex, LenzMode, LenzSpec};
    use crate::geom::Point;

    #[test]
    fn tetrahedron_counts() {
        let ps = regular_simplex(3, 1.0).unwrap();
        let sets = [&ps, &ps, &ps, &ps];
        let c = count_unit_tuples(&sets, 1e-9).unwrap();
        assert_eq!(c.unordered, Some(1));
        assert_eq!(c.ordered, 24);
    }

    #[test]
    fn five_cell_has_five_unit_quadruples() {
        let ps = regular_simplex(4, 1.0).unwrap();
        let sets = [&ps, &ps, &ps, &ps];
        let c = count_unit_tuples(&sets, 1e-9).unwrap();
        assert_eq!(c.unordered, Some(5)); // choose(5,4), all regular
    }

    #[test]
    fn lenz_4_12_pair_and_triangle_counts() {
        let (ps, _) = lenz(&LenzSpec {
            d: 4,
            n: 12,
            mode: LenzMode::Rich,
            angle_seed: 0,
        })
        .unwrap();
        let pairs = count_unit_tuples(&[&ps, &ps], 1e-9).unwrap();
        assert_eq!(pairs.unordered, Some(42)); // 36 cross + 3 quarter-turn pairs per circle
        let triples = count_unit_tuples(&[&ps, &ps, &ps], 1e-9).unwrap();
        assert_eq!(triples.unordered, Some(36));
        // stability of the counts across the tolerance range
        for tol in [1e-12, 1e-10, 1e-7] {
            let c = count_unit_tuples(&[&ps, &ps], tol).unwrap();
            assert_eq!(c.unordered, Some(42), "tol={tol}");
        }
    }

    #[test]
    fn pattern_square_has_eight_ordered_copies() {
        let pts = vec![
            Point::from_f64(&[0.0, 0.0]),
            Point::from_f64(&[1.0, 0.0]),
            Point::from_f64(&[1.0, 1.0]),
            Point::from_f64(&[0.0, 1.0]),
        ];
        let ps = PointSet::new(pts, "square", 1e-9).unwrap();
        // 4 fixed unit sides in a cycle, free diagonals
        let one = Scalar::from_int(1);
        let spec = PatternSpec::new(
            4,
            &[
                (0, 1, one.clone()),
                (1, 2, one.clone()),
                (2, 3, one.clone()),
                (3, 0, one),
            ],
        )
        .unwrap();
        assert_eq!(count_pattern(&ps, &spec, 1e-9), 8); // dihedral symmetry
    }

    #[test]
    fn pattern_full_matrix_matches_unit_tuples() {
        let ps = regular_simplex(3, 1.0).unwrap();
        let spec = PatternSpec::all_unit(4).unwrap();
        let via_pattern = count_pattern(&ps, &spec, 1e-9);
        let via_tuples = count_unit_tuples(&[&ps, &ps, &ps, &ps], 1e-9).unwrap().ordered;
        assert_eq!(via_pattern, 24);
        assert_eq!(via_pattern, via_tuples);
    }

    #[test]
    fn two_edge_path_count_matches_degree_formula() {
        let (ps, _) = lenz(&LenzSpec {
            d: 4,
            n: 12,
            mode: LenzMode::Rich,
            angle_seed: 0,
        })
        .unwrap();
        let one = Scalar::from_int(1);
        // path: distances (1,2) and (2,3) fixed at 1, (1,3) free
        let spec =
            PatternSpec::new(3, &[(0, 1, one.clone()), (1, 2, one)]).unwrap();
        let direct = count_pattern(&ps, &spec, 1e-9);
        // independent formula: sum over middle vertices of deg*(deg-1)
        let formula: u128 = (0..ps.len())
            .map(|m| {
                let d = (0..ps.len())
                    .filter(|&o| o != m && unit_within(&ps, m, &ps, o, 1e-9))
                    .count() as u128;
                d * d.saturating_sub(1)
            })
            .sum();
        assert_eq!(direct, formula);
    }

    #[test]
    fn rich_points_circle_center() {
        // 5 points on a unit circle around the origin plus the center
        let mut pts: Vec<Point> = (0..5)
            .map(|i| {
                let t = 2.0 * std::f64::consts::PI * (i as f64) / 5.0;
                Point::from_f64(&[t.cos(), t.sin()])
            })
            .collect();
        let circle = PointSet::new(pts.clone(), "circle", 1e-9).unwrap();
        pts.clear();
        pts.push(Point::from_f64(&[0.0, 0.0]));
        let center = PointSet::new(pts, "center", 1e-9).unwrap();
        assert_eq!(rich_points(&circle, &center, 5, 1e-9), vec![0]);
        assert!(rich_points(&circle, &center, 6, 1e-9).is_empty());
    }

    #[test]
    fn lenz_points_are_six_rich() {
        let (ps, _) = lenz(&LenzSpec {
            d: 4,
            n: 12,
            mode: LenzMode::Rich,
            angle_seed: 0,
        })
        .unwrap();
        // every point sees the 6 points of the other circle
        let rich = rich_points(&ps, &ps, 6, 1e-9);
        assert_eq!(rich.len(), 12);
    }

    #[test]
    fn counts_invariant_under_isometry() {
        use rand::{Rng, SeedableRng};
        let (ps, _) = lenz(&LenzSpec {
            d: 4,
            n: 8,
            mode: LenzMode::Rich,
            angle_seed: 0,
        })
        .unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let rot = random_rotation(4, &mut rng);
        let shift: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let moved: Vec<Point> = ps
            .points
            .iter()
            .map(|p| {
                let v = p.to_f64_vec();
                let w: Vec<f64> = (0..4)
                    .map(|r| (0..4).map(|c| rot[r][c] * v[c]).sum::<f64>() + shift[r])
                    .collect();
                Point::from_f64(&w)
            })
            .collect();
        let qs = PointSet::new(moved, "moved", 1e-12).unwrap();
        let a = count_unit_tuples(&[&ps, &ps], 1e-9).unwrap();
        let b = count_unit_tuples(&[&qs, &qs], 1e-9).unwrap();
        assert_eq!(a.ordered, b.ordered);
        let tri_a = count_unit_tuples(&[&ps, &ps, &ps], 1e-9).unwrap();
        let tri_b = count_unit_tuples(&[&qs, &qs, &qs], 1e-9).unwrap();
        assert_eq!(tri_a.ordered, tri_b.ordered);
    }

    fn random_rotation(d: usize, rng: &mut impl rand::Rng) -> Vec<Vec<f64>> {
        // Gram-Schmidt on a random matrix
        let mut m: Vec<Vec<f64>> = (0..d)
            .map(|_| (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect())
            .collect();
        for i in 0..d {
            for j in 0..i {
                let dot: f64 = (0..d).map(|c| m[i][c] * m[j][c]).sum();
                for c in 0..d {
                    m[i][c] -= dot * m[j][c];
                }
            }
            let norm: f64 = (0..d).map(|c| m[i][c] * m[i][c]).sum::<f64>().sqrt();
            for c in 0..d {
                m[i][c] /= norm;
            }
        }
        m
    }

    #[test]
    fn class_permutation_symmetry() {
        let (ps, _) = lenz(&LenzSpec {
            d: 4,
            n: 8,
            mode: LenzMode::Rich,
            angle_seed: 1,
        })
        .unwrap();
        let half1 = PointSet::new(ps.points[..4].to_vec(), "a", 1e-12).unwrap();
        let half2 = PointSet::new(ps.points[4..].to_vec(), "b", 1e-12).unwrap();
        let ab = count_unit_tuples(&[&half1, &half2], 1e-9).unwrap();
        let ba = count_unit_tuples(&[&half2, &half1], 1e-9).unwrap();
        assert_eq!(ab.ordered, ba.ordered);
    }

    #[test]
    fn adding_a_point_never_decreases_counts() {
        let (ps, _) = lenz(&LenzSpec {
            d: 4,
            n: 10,
            mode: LenzMode::Rich,
            angle_seed: 0,
        })
        .unwrap();
        let smaller = PointSet::new(ps.points[..9].to_vec(), "s", 1e-12).unwrap();
        let small_count = count_unit_tuples(&[&smaller, &smaller], 1e-9).unwrap();
        let big_count = count_unit_tuples(&[&ps, &ps], 1e-9).unwrap();
        assert!(big_count.ordered >= small_count.ordered);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let (ps, _) = lenz(&LenzSpec {
            d: 4,
            n: 16,
            mode: LenzMode::Rich,
            angle_seed: 0,
        })
        .unwrap();
        let a = count_unit_tuples(&[&ps, &ps, &ps], 1e-9).unwrap().ordered;
        let b = count_unit_tuples_seq(&[&ps, &ps, &ps], 1e-9).unwrap().ordered;
        assert_eq!(a, b);
        let spec = PatternSpec::all_unit(3).unwrap();
        assert_eq!(
            count_pattern(&ps, &spec, 1e-9),
            count_pattern_seq(&ps, &spec, 1e-9)
        );
    }
}
